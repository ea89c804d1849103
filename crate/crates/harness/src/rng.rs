//! The one pseudo-random generator behind every sampling decision.
//!
//! SplitMix64 (Steele, Lea & Flood's 64-bit mixer, public domain): a single
//! 64-bit state advanced by the golden-gamma increment and scrambled by two
//! multiply-xorshift rounds. Given the same seed it produces the same stream
//! on every platform, which is what makes the split and experiment engines
//! bit-reproducible. Independent substreams for (repeat, fold, …) indices
//! come from re-mixing the seed with the index tags, see [`substream`].

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix(self.state)
    }

    /// Uniform draw from `0..bound` by rejection, so small bounds carry no
    /// modulo bias.
    pub fn next_below(&mut self, bound: usize) -> usize {
        assert!(bound > 0, "bound must be positive");
        let bound = bound as u64;
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let draw = self.next_u64();
            if draw < zone {
                return (draw % bound) as usize;
            }
        }
    }

    /// Fisher-Yates.
    pub fn shuffle<T>(&mut self, slice: &mut [T]) {
        for i in (1..slice.len()).rev() {
            let j = self.next_below(i + 1);
            slice.swap(i, j);
        }
    }
}

/// Derives a generator for one indexed sub-task (repeat r of fraction f, fold
/// j of repeat i, …). Each tag is absorbed through the mixer, so any change
/// in any tag decorrelates the whole stream.
pub fn substream(seed: u64, tags: &[u64]) -> SplitMix64 {
    let mut state = mix(seed ^ GOLDEN_GAMMA);
    for &tag in tags {
        state = mix(state ^ tag.wrapping_mul(GOLDEN_GAMMA));
    }
    SplitMix64::new(state)
}
