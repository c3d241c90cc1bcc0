//! Probability vectors and the entropic functionals built on them.
//!
//! All logarithms are natural. `0^α = 0` for `α > 0` and `0·ln 0 = 0`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::{tol, Error, Result};

/// Nonnegative vector summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    /// Entries in `[-1e-9, 0)` are clamped to zero and the vector is
    /// renormalized; larger negatives or a sum off by more than `1e-9` fail.
    pub fn new(mut probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Probability("empty vector".into()));
        }
        for (i, p) in probs.iter_mut().enumerate() {
            if !p.is_finite() {
                return Err(Error::Probability(format!("entry {i} is not finite")));
            }
            if *p < -tol::PROB {
                return Err(Error::Probability(format!("entry {i} is negative ({p:e})")));
            }
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tol::PROB {
            return Err(Error::Probability(format!("entries sum to {sum}")));
        }
        probs.iter_mut().for_each(|p| *p /= sum);
        Ok(Self(probs))
    }

    pub fn uniform(len: usize) -> Self {
        Self(alloc::vec![1.0 / len as f64; len])
    }

    /// The point mass on `index`.
    pub fn delta(len: usize, index: usize) -> Self {
        let mut v = alloc::vec![0.0; len];
        v[index] = 1.0;
        Self(v)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }
}

/// Order of a Rényi or Tsallis entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntropyOrder {
    Finite(f64),
    Infinity,
}

impl EntropyOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha == f64::INFINITY {
            return Ok(Self::Infinity);
        }
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::Domain(format!("entropy order must be positive, got {alpha}")));
        }
        Ok(Self::Finite(alpha))
    }

    /// `f64::INFINITY` for the infinite order.
    pub fn value(self) -> f64 {
        match self {
            Self::Finite(a) => a,
            Self::Infinity => f64::INFINITY,
        }
    }

    /// True when the Shannon formula is used in place of the α-formula.
    pub fn is_shannon(self) -> bool {
        matches!(self, Self::Finite(a) if (a - 1.0).abs() < tol::SHANNON_WINDOW)
    }

    /// The order `β` with `1/α + 1/β = 2`; requires `α ≥ 1/2`.
    pub fn conjugate(self) -> Result<Self> {
        match self {
            Self::Infinity => Ok(Self::Finite(0.5)),
            Self::Finite(0.5) => Ok(Self::Infinity),
            Self::Finite(a) if a > 0.5 => {
                let b = a / (2.0 * a - 1.0);
                if b.is_finite() {
                    Ok(Self::Finite(b))
                } else {
                    Ok(Self::Infinity)
                }
            }
            Self::Finite(a) => Err(Error::Domain(format!("order {a} has no conjugate (needs α > 1/2)"))),
        }
    }
}

impl fmt::Display for EntropyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(a) => write!(f, "{a}"),
            Self::Infinity => f.write_str("inf"),
        }
    }
}

impl From<f64> for EntropyOrder {
    /// Panics on non-positive input; use [`EntropyOrder::new`] for fallible conversion.
    fn from(alpha: f64) -> Self {
        Self::new(alpha).expect("entropy order must be positive")
    }
}

/// Cyclic convolution `(g*h)_k = Σ_i g_i h_{k⊖i}` on arbitrary real vectors.
pub fn cyclic_convolution(g: &[f64], h: &[f64]) -> Result<Vec<f64>> {
    if g.len() != h.len() {
        return Err(Error::DimensionMismatch { expected: g.len(), found: h.len() });
    }
    let n = g.len();
    Ok((0..n).map(|k| (0..n).map(|i| g[i] * h[(k + n - i) % n]).sum()).collect())
}

pub fn convolve(g: &ProbabilityVector, h: &ProbabilityVector) -> Result<ProbabilityVector> {
    ProbabilityVector::new(cyclic_convolution(&g.0, &h.0)?)
}

fn power_sum(values: &[f64], alpha: f64) -> f64 {
    values.iter().filter(|&&v| v > 0.0).map(|v| v.powf(alpha)).sum()
}

/// `(Σ v_i^α)^{1/α}` for nonnegative entries, `max_i v_i` at infinite order.
pub fn power_norm(values: &[f64], alpha: EntropyOrder) -> f64 {
    match alpha {
        EntropyOrder::Infinity => values.iter().copied().fold(0.0, f64::max),
        EntropyOrder::Finite(a) => power_sum(values, a).powf(1.0 / a),
    }
}

pub fn norm_alpha(p: &ProbabilityVector, alpha: EntropyOrder) -> f64 {
    power_norm(&p.0, alpha)
}

pub fn shannon(p: &ProbabilityVector) -> f64 {
    -p.0.iter().filter(|&&x| x > 0.0).map(|x| x * x.ln()).sum::<f64>()
}

pub fn renyi(p: &ProbabilityVector, alpha: EntropyOrder) -> f64 {
    let h = match alpha {
        EntropyOrder::Infinity => -p.max().ln(),
        _ if alpha.is_shannon() => shannon(p),
        EntropyOrder::Finite(a) => power_sum(&p.0, a).ln() / (1.0 - a),
    };
    h.max(0.0)
}

pub fn tsallis(p: &ProbabilityVector, alpha: EntropyOrder) -> Result<f64> {
    let h = match alpha {
        EntropyOrder::Infinity => {
            return Err(Error::Usage("Tsallis entropy of infinite order is not supported".into()))
        }
        _ if alpha.is_shannon() => shannon(p),
        EntropyOrder::Finite(a) => (power_sum(&p.0, a) - 1.0) / (1.0 - a),
    };
    Ok(h.max(0.0))
}

/// `ln_α(ξ) = (ξ^{1-α} - 1)/(1 - α)`, the natural logarithm at `α = 1`.
pub fn alpha_log(xi: f64, alpha: EntropyOrder) -> Result<f64> {
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(Error::Domain(format!("α-logarithm needs a positive argument, got {xi}")));
    }
    match alpha {
        EntropyOrder::Infinity => Err(Error::Usage("α-logarithm of infinite order is not supported".into())),
        _ if alpha.is_shannon() => Ok(xi.ln()),
        EntropyOrder::Finite(a) => Ok((xi.powf(1.0 - a) - 1.0) / (1.0 - a)),
    }
}

/// `Σ p_i²`.
pub fn index_of_coincidence(p: &ProbabilityVector) -> f64 {
    p.0.iter().map(|x| x * x).sum()
}

/// Whether `a ≺ b`: every descending partial sum of `a` is bounded by the
/// matching partial sum of `b`, with equal totals. Shorter inputs are padded
/// with zeros; ties within `1e-9` count as satisfied.
pub fn majorizes(a: &[f64], b: &[f64]) -> Result<bool> {
    let n = a.len().max(b.len());
    let sorted = |v: &[f64]| {
        let mut s = v.to_vec();
        s.resize(n, 0.0);
        s.sort_by(|x, y| y.total_cmp(x));
        s
    };
    let (sa, sb) = (sorted(a), sorted(b));
    let (ta, tb): (f64, f64) = (sa.iter().sum(), sb.iter().sum());
    if (ta - tb).abs() > tol::PROB {
        return Err(Error::Usage(format!("majorization needs equal totals, got {ta} and {tb}")));
    }
    let mut pa = 0.0;
    let mut pb = 0.0;
    for (x, y) in sa.iter().zip(&sb) {
        pa += x;
        pb += y;
        if pa > pb + tol::PROB {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `a ⊕ b`: concatenation.
pub fn direct_sum(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().chain(b).copied().collect()
}

/// `a ⊗ b`: all pairwise products.
pub fn tensor(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_abs_diff_eq;

    fn pv(v: &[f64]) -> ProbabilityVector {
        ProbabilityVector::new(v.to_vec()).unwrap()
    }

    fn binary(c: f64) -> ProbabilityVector {
        pv(&[(1.0 + c) / 2.0, (1.0 - c) / 2.0])
    }

    #[test]
    fn rejects_bad_vectors() {
        assert!(ProbabilityVector::new(vec![0.6, 0.5]).is_err());
        assert!(ProbabilityVector::new(vec![1.1, -0.1]).is_err());
        let clamped = ProbabilityVector::new(vec![1.0 + 5e-10, -5e-10]).unwrap();
        assert_eq!(clamped.as_slice()[1], 0.0);
        assert_abs_diff_eq!(clamped.as_slice()[0], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn convolve_examples() {
        let a = 0.37;
        let out = convolve(&pv(&[1.0, 0.0]), &pv(&[a, 1.0 - a])).unwrap();
        assert_abs_diff_eq!(out.as_slice()[0], a, epsilon = 1e-15);
        assert_abs_diff_eq!(out.as_slice()[1], 1.0 - a, epsilon = 1e-15);

        let out = convolve(&ProbabilityVector::uniform(3), &pv(&[0.2, 0.7, 0.1])).unwrap();
        for x in out.as_slice() {
            assert_abs_diff_eq!(*x, 1.0 / 3.0, epsilon = 1e-15);
        }

        // 0.7·0.6 + 0.3·0.4 and 0.7·0.4 + 0.3·0.6
        let out = convolve(&pv(&[0.7, 0.3]), &pv(&[0.6, 0.4])).unwrap();
        assert_abs_diff_eq!(out.as_slice()[0], 0.54, epsilon = 1e-15);
        assert_abs_diff_eq!(out.as_slice()[1], 0.46, epsilon = 1e-15);

        assert!(convolve(&pv(&[1.0, 0.0]), &pv(&[1.0, 0.0, 0.0])).is_err());
    }

    #[test]
    fn norm_alpha_examples() {
        let u = ProbabilityVector::uniform(5);
        assert_abs_diff_eq!(norm_alpha(&u, 2.0.into()), 5f64.powf(-0.5), epsilon = 1e-15);
        assert_abs_diff_eq!(norm_alpha(&pv(&[0.2, 0.3, 0.5]), 1.0.into()), 1.0, epsilon = 1e-15);
        let c = core::f64::consts::FRAC_1_SQRT_2;
        let half = norm_alpha(&binary(c), 0.5.into());
        assert_abs_diff_eq!(half, 1.0 + (1.0 - c * c).sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(half, 1.7071, epsilon = 1e-4);
        assert_eq!(norm_alpha(&pv(&[0.2, 0.8]), EntropyOrder::Infinity), 0.8);
    }

    #[test]
    fn renyi_examples() {
        let u = ProbabilityVector::uniform(4);
        for a in [0.3, 1.0, 2.0, 7.5] {
            assert_abs_diff_eq!(renyi(&u, a.into()), 4f64.ln(), epsilon = 1e-14);
        }
        assert_abs_diff_eq!(renyi(&u, EntropyOrder::Infinity), 4f64.ln(), epsilon = 1e-14);
        let point = ProbabilityVector::delta(3, 1);
        for a in [0.5, 1.0, 3.0] {
            assert_eq!(renyi(&point, a.into()), 0.0);
        }
        let c = core::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(renyi(&binary(c), EntropyOrder::Infinity), -(0.5 + c / 2.0).ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(renyi(&binary(c), EntropyOrder::Infinity), 0.158347, epsilon = 1e-6);
    }

    #[test]
    fn tsallis_examples() {
        for d in [2usize, 3, 5] {
            let u = ProbabilityVector::uniform(d);
            assert_abs_diff_eq!(tsallis(&u, 2.0.into()).unwrap(), 1.0 - 1.0 / d as f64, epsilon = 1e-15);
        }
        assert_eq!(tsallis(&pv(&[1.0, 0.0]), 0.7.into()).unwrap(), 0.0);
        let c = 1.0 / 3f64.sqrt();
        let h2 = tsallis(&binary(c), 2.0.into()).unwrap();
        assert_abs_diff_eq!(h2, (1.0 - c * c) / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(h2, 1.0 / 3.0, epsilon = 1e-15);
        assert!(matches!(tsallis(&binary(0.1), EntropyOrder::Infinity), Err(Error::Usage(_))));
    }

    #[test]
    fn alpha_log_examples() {
        for a in [0.5, 1.0, 2.0, 3.0] {
            assert_eq!(alpha_log(1.0, a.into()).unwrap(), 0.0);
        }
        assert_abs_diff_eq!(alpha_log(core::f64::consts::E, 1.0.into()).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(alpha_log(1.5, 2.0.into()).unwrap(), 1.0 / 3.0, epsilon = 1e-15);
        assert!(matches!(alpha_log(0.0, 2.0.into()), Err(Error::Domain(_))));
        assert!(matches!(alpha_log(-1.0, 2.0.into()), Err(Error::Domain(_))));
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&[0.5, 0.5], &[1.0, 0.0]).unwrap());
        assert!(majorizes(&[0.54, 0.46], &[0.7, 0.3]).unwrap());
        assert!(!majorizes(&[0.7, 0.3], &[0.6, 0.4]).unwrap());
        // Padding: (1/3,1/3,1/3) ≺ (1/2,1/2).
        assert!(majorizes(&[1.0 / 3.0; 3], &[0.5, 0.5]).unwrap());
        assert!(majorizes(&[0.5, 0.5], &[0.5, 0.6]).is_err());
    }

    #[test]
    fn conjugate_orders() {
        assert_eq!(EntropyOrder::Infinity.conjugate().unwrap(), EntropyOrder::Finite(0.5));
        assert_eq!(EntropyOrder::Finite(1.0).conjugate().unwrap(), EntropyOrder::Finite(1.0));
        match EntropyOrder::Finite(2.0).conjugate().unwrap() {
            EntropyOrder::Finite(b) => assert_abs_diff_eq!(b, 2.0 / 3.0, epsilon = 1e-15),
            other => panic!("{other:?}"),
        }
        assert_eq!(EntropyOrder::Finite(0.5).conjugate().unwrap(), EntropyOrder::Infinity);
        assert!(EntropyOrder::Finite(0.4).conjugate().is_err());
        assert!(EntropyOrder::new(0.0).is_err());
        assert!(EntropyOrder::new(f64::NAN).is_err());
    }
}
