#![allow(dead_code)]

use entrosep_core::criteria::SeparabilityTest;
use entrosep_core::{DensityMatrix, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Plain bisection on the violation flag, written separately from the CLI
/// scanner so the two can be compared.
pub fn threshold(test: &dyn SeparabilityTest, family: fn(f64) -> Result<DensityMatrix>) -> Option<f64> {
    let violated = |c: f64| test.evaluate(&family(c).unwrap()).unwrap().violated;
    if !violated(1.0) {
        return None;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    assert!(!violated(lo));
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if violated(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
