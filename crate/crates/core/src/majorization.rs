//! The `s_k` profile of an overlap matrix and the majorizing vectors it
//! induces.
//!
//! For a `D×D` overlap matrix `V_ij = ⟨f_i|g_j⟩`, `s_k` is the largest
//! spectral norm over all `r×r'` submatrices with `r + r' = k + 1`. Sums of
//! probabilities over `r` outcomes of one POVM and `r'` of the other are
//! bounded by `1 + s_k`, which yields `p ⊕ q ≺ (1) ⊕ w` and `p ⊗ q ≺ w'`.

use alloc::format;
use alloc::vec::Vec;

use crate::entropy::ProbabilityVector;
use crate::linalg::{inner, spectral_norm, vector_norm, ComplexMatrix, DensityMatrix, C64};
use crate::measurements::{overlap_matrix, RankOnePovm};
use crate::{tol, Error, Result};

/// Enumeration is exhaustive, so the outcome count is capped.
pub const MAX_OUTCOMES: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct SValueProfile {
    s: Vec<f64>,
    d_star: usize,
    w: Vec<f64>,
    w_prime: Vec<f64>,
}

impl SValueProfile {
    /// `s_1, …, s_{2D-1}`.
    pub fn s(&self) -> &[f64] {
        &self.s
    }

    /// `s_k` with `k` starting at one.
    pub fn s_k(&self, k: usize) -> f64 {
        self.s[k - 1]
    }

    /// First `k` with `s_k = 1`.
    pub fn d_star(&self) -> usize {
        self.d_star
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    pub fn w_prime(&self) -> &[f64] {
        &self.w_prime
    }

    /// `s_1 = 1`: the two POVMs share an outcome and there is no uncertainty.
    pub fn is_degenerate(&self) -> bool {
        self.d_star == 1
    }
}

fn indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

fn submatrix_norm(v: &ComplexMatrix, rows: &[usize], cols: &[usize]) -> Result<f64> {
    if rows.len() == 1 || cols.len() == 1 {
        let entries: Vec<C64> = rows.iter().flat_map(|&i| cols.iter().map(move |&j| v.get(i, j))).collect();
        return Ok(vector_norm(&entries));
    }
    spectral_norm(&v.select(rows, cols))
}

pub fn s_values(v: &ComplexMatrix) -> Result<SValueProfile> {
    if !v.is_square() {
        return Err(Error::NotSquare { rows: v.rows(), cols: v.cols() });
    }
    let d = v.rows();
    if d == 0 {
        return Err(Error::Usage("empty overlap matrix".into()));
    }
    if d > MAX_OUTCOMES {
        return Err(Error::Unsupported(format!("submatrix enumeration is limited to {MAX_OUTCOMES} outcomes, got {d}")));
    }
    let full = spectral_norm(v)?;
    if full > 1.0 + tol::POVM {
        return Err(Error::Usage(format!("overlap matrix has spectral norm {full} > 1")));
    }

    let masks: Vec<Vec<usize>> = (1u32..1 << d).map(indices).collect();
    let mut s = alloc::vec![0.0f64; 2 * d - 1];
    for rows in &masks {
        for cols in &masks {
            let k = rows.len() + cols.len() - 1;
            let n = submatrix_norm(v, rows, cols)?;
            if n > s[k - 1] {
                s[k - 1] = n;
            }
        }
    }
    for k in 1..s.len() {
        if s[k] < s[k - 1] + tol::S_TIE {
            s[k] = s[k - 1];
        }
    }
    for x in &mut s {
        if *x >= 1.0 - tol::S_TIE {
            *x = 1.0;
        }
    }
    let Some(pos) = s.iter().position(|&x| x == 1.0) else {
        return Err(Error::Usage(format!("overlap matrix is not complete: s_{} = {}", s.len(), s[s.len() - 1])));
    };
    let d_star = pos + 1;
    let diffs = |t: &[f64]| -> Vec<f64> {
        (0..d_star).map(|k| if k == 0 { t[0] } else { t[k] - t[k - 1] }).collect()
    };
    let t: Vec<f64> = s.iter().map(|x| (1.0 + x) * (1.0 + x) / 4.0).collect();
    Ok(SValueProfile { w: diffs(&s), w_prime: diffs(&t), s, d_star })
}

/// `(s_1, s_2 - s_1, …, s_{D★} - s_{D★-1})`.
pub fn majorizing_w(profile: &SValueProfile) -> Vec<f64> {
    profile.w.clone()
}

/// Differences of `t_k = (1 + s_k)²/4` up to `D★`.
pub fn majorizing_w_prime(profile: &SValueProfile) -> Vec<f64> {
    profile.w_prime.clone()
}

/// Profile of the overlap matrix of two rank-one POVMs.
pub fn profile_of(f: &RankOnePovm, g: &RankOnePovm) -> Result<SValueProfile> {
    s_values(&overlap_matrix(f, g)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubsetBound {
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

fn check_subset(set: &[usize], outcomes: usize) -> Result<()> {
    for (n, &i) in set.iter().enumerate() {
        if i >= outcomes {
            return Err(Error::Usage(format!("outcome index {i} out of range 0..{outcomes}")));
        }
        if set[..n].contains(&i) {
            return Err(Error::Usage(format!("outcome index {i} repeated")));
        }
    }
    Ok(())
}

/// `Σ_{i∈I} p_i(F) + Σ_{j∈J} p_j(G) ≤ 1 + ‖C_I C_J†‖` where `C_I` stacks the
/// rows `⟨f_i|`.
pub fn subset_bound(f: &RankOnePovm, g: &RankOnePovm, i_set: &[usize], j_set: &[usize], rho: &DensityMatrix) -> Result<SubsetBound> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim() });
    }
    check_subset(i_set, f.outcomes())?;
    check_subset(j_set, g.outcomes())?;
    let p = f.probabilities(rho)?;
    let q = g.probabilities(rho)?;
    let lhs = i_set.iter().map(|&i| p.as_slice()[i]).sum::<f64>() + j_set.iter().map(|&j| q.as_slice()[j]).sum::<f64>();
    let norm = if i_set.is_empty() || j_set.is_empty() {
        0.0
    } else {
        let block = ComplexMatrix::from_fn(i_set.len(), j_set.len(), |a, b| inner(f.vector(i_set[a]), g.vector(j_set[b])));
        spectral_norm(&block)?
    };
    let rhs = 1.0 + norm;
    Ok(SubsetBound { lhs, rhs, satisfied: lhs <= rhs + tol::CRITERION })
}

/// `w` as a probability vector, for entropy evaluation.
pub(crate) fn as_distribution(w: &[f64]) -> Result<ProbabilityVector> {
    ProbabilityVector::new(w.to_vec())
}
