//! Fixtures shared by unit tests.

use crate::frame::{Frame, WorldMode};
use crate::fuzzy::{ModelTable, TriangularFuzzyNumber};

/// Reference triangles for the four iris attributes, classes a, b, c, as
/// fitted from a 40-per-class training split.
pub(crate) fn iris_reference_models() -> ModelTable<f64> {
    let frame = Frame::new(["a", "b", "c"], WorldMode::Open).unwrap();
    let tfn = |l, m, u| TriangularFuzzyNumber::new(l, m, u).unwrap();
    ModelTable::from_cells(
        frame,
        vec!["SL".into(), "SW".into(), "PL".into(), "PW".into()],
        vec![
            vec![
                tfn(4.3, 4.9975, 5.8),
                tfn(2.3, 3.4125, 4.2),
                tfn(1.0, 1.465, 1.9),
                tfn(0.1, 0.2525, 0.6),
            ],
            vec![
                tfn(4.9, 5.9775, 7.0),
                tfn(2.0, 2.775, 3.4),
                tfn(3.0, 4.2425, 5.0),
                tfn(1.0, 1.3275, 1.8),
            ],
            vec![
                tfn(4.9, 6.505, 7.7),
                tfn(2.2, 2.96, 3.8),
                tfn(4.5, 5.485, 6.9),
                tfn(1.5, 2.015, 2.5),
            ],
        ],
    )
    .unwrap()
}
