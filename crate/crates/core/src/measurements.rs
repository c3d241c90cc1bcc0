//! Local measurements: orthonormal bases, rank-one POVMs built from
//! subnormalized vectors, and general POVMs.
//!
//! Besides the data model this module constructs the structured
//! measurements used by the criteria (Pauli-type MUBs in prime dimension,
//! SIC-POVMs for `d = 2, 3`, mutually unbiased measurements and general
//! SIC-POVMs by depolarized mixing) and validates externally supplied ones.
//! Validators never fail on a mathematical violation; they return a
//! [`ValidationReport`] with the worst deviation per condition.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::entropy::ProbabilityVector;
use crate::linalg::{self, inner, vector_norm, ComplexMatrix, DensityMatrix, C64};
use crate::{tol, Error, Result};

pub use crate::entropy::index_of_coincidence;

/// Set of `D` subnormalized vectors with `Σ_i |f_i⟩⟨f_i| = I_d`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOnePovm {
    dim: usize,
    vectors: Vec<Vec<C64>>,
}

/// Positive operators summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralPovm {
    dim: usize,
    elements: Vec<ComplexMatrix>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Measurement {
    RankOne(RankOnePovm),
    General(GeneralPovm),
}

fn cplx(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn root_of_unity(d: usize, power: usize) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * (power % d) as f64 / d as f64)
}

fn check_vector_lengths(dim: usize, vectors: &[Vec<C64>]) -> Result<()> {
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != dim {
            return Err(Error::Measurement(format!("vector {i} has length {} instead of {dim}", v.len())));
        }
        if v.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Measurement(format!("vector {i} has a non-finite entry")));
        }
    }
    Ok(())
}

fn failure_summary(report: &ValidationReport) -> String {
    let mut out = String::new();
    for c in report.checks.iter().filter(|c| !c.passed) {
        if !out.is_empty() {
            out.push_str("; ");
        }
        out.push_str(&format!("{} off by {:e}", c.name, c.deviation));
    }
    out
}

impl RankOnePovm {
    pub fn new(dim: usize, vectors: Vec<Vec<C64>>) -> Result<Self> {
        check_vector_lengths(dim, &vectors)?;
        let report = validate_rank_one(dim, &vectors);
        if !report.passed() {
            return Err(Error::Measurement(failure_summary(&report)));
        }
        Ok(Self { dim, vectors })
    }

    pub fn computational_basis(d: usize) -> Self {
        let vectors = (0..d)
            .map(|i| (0..d).map(|j| cplx(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
            .collect();
        Self { dim: d, vectors }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcomes(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[C64] {
        &self.vectors[i]
    }

    /// The operators `|f_i⟩⟨f_i|`.
    pub fn elements(&self) -> Vec<ComplexMatrix> {
        self.vectors.iter().map(|v| ComplexMatrix::projector(v)).collect()
    }

    /// True for `D = d` unit vectors, i.e. an orthonormal basis.
    pub fn is_orthonormal_basis(&self) -> bool {
        self.outcomes() == self.dim && self.vectors.iter().all(|v| (vector_norm(v) - 1.0).abs() < tol::POVM)
    }

    pub fn probabilities(&self, rho: &DensityMatrix) -> Result<ProbabilityVector> {
        require_dim(self.dim, rho)?;
        let probs = self.vectors.iter().map(|v| rho.expectation_vector(v)).collect::<Result<Vec<_>>>()?;
        ProbabilityVector::new(probs)
    }

    /// The POVM `{U|f_i⟩}` for a unitary `U`.
    pub fn transformed(&self, unitary: &ComplexMatrix) -> Result<Self> {
        let vectors = self.vectors.iter().map(|v| unitary.apply(v)).collect::<Result<Vec<_>>>()?;
        Self::new(self.dim, vectors)
    }
}

impl GeneralPovm {
    pub fn new(dim: usize, elements: Vec<ComplexMatrix>) -> Result<Self> {
        for (i, e) in elements.iter().enumerate() {
            if e.rows() != dim || e.cols() != dim {
                return Err(Error::Measurement(format!("element {i} is {}x{}, expected {dim}x{dim}", e.rows(), e.cols())));
            }
        }
        let report = validate_general(dim, &elements);
        if !report.passed() {
            return Err(Error::Measurement(failure_summary(&report)));
        }
        Ok(Self { dim, elements })
    }

    pub fn from_rank_one(povm: &RankOnePovm) -> Self {
        Self { dim: povm.dim, elements: povm.elements() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcomes(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn probabilities(&self, rho: &DensityMatrix) -> Result<ProbabilityVector> {
        require_dim(self.dim, rho)?;
        let probs = self.elements.iter().map(|e| rho.expectation(e)).collect::<Result<Vec<_>>>()?;
        ProbabilityVector::new(probs)
    }
}

impl Measurement {
    pub fn dim(&self) -> usize {
        match self {
            Self::RankOne(m) => m.dim,
            Self::General(m) => m.dim,
        }
    }

    pub fn outcomes(&self) -> usize {
        match self {
            Self::RankOne(m) => m.outcomes(),
            Self::General(m) => m.outcomes(),
        }
    }

    pub fn elements(&self) -> Vec<ComplexMatrix> {
        match self {
            Self::RankOne(m) => m.elements(),
            Self::General(m) => m.elements.clone(),
        }
    }

    pub fn as_rank_one(&self) -> Option<&RankOnePovm> {
        match self {
            Self::RankOne(m) => Some(m),
            Self::General(_) => None,
        }
    }

    pub fn probabilities(&self, rho: &DensityMatrix) -> Result<ProbabilityVector> {
        match self {
            Self::RankOne(m) => m.probabilities(rho),
            Self::General(m) => m.probabilities(rho),
        }
    }
}

impl From<RankOnePovm> for Measurement {
    fn from(m: RankOnePovm) -> Self {
        Self::RankOne(m)
    }
}

impl From<GeneralPovm> for Measurement {
    fn from(m: GeneralPovm) -> Self {
        Self::General(m)
    }
}

fn require_dim(dim: usize, rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: rho.dim() });
    }
    Ok(())
}

/// `p_i = Tr(N_i ρ)`.
pub fn probabilities(m: &Measurement, rho: &DensityMatrix) -> Result<ProbabilityVector> {
    m.probabilities(rho)
}

// ---------------------------------------------------------------------------
// Validation reports

/// One validated condition.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    /// Parameters measured along the way (efficiency `kappa`, purity `a`, ...).
    pub measured: Vec<(&'static str, f64)>,
}

impl ValidationReport {
    fn check(&mut self, name: &'static str, deviation: f64, tolerance: f64) {
        let passed = deviation.is_finite() && deviation <= tolerance;
        self.checks.push(Check { name, deviation, tolerance, passed });
    }

    /// A structural condition that is either met or not.
    fn require(&mut self, name: &'static str, ok: bool, deviation: f64) {
        self.checks.push(Check { name, deviation: if ok { 0.0 } else { deviation.abs().max(1.0) }, tolerance: 0.0, passed: ok });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The failing (or, if none fail, largest-deviation) check.
    pub fn worst(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed).or_else(|| {
            self.checks.iter().max_by(|a, b| a.deviation.total_cmp(&b.deviation))
        })
    }

    pub fn measured(&self, name: &str) -> Option<f64> {
        self.measured.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }
}

fn identity_deviation(dim: usize, elements: impl Iterator<Item = ComplexMatrix>) -> f64 {
    let mut sum = ComplexMatrix::zeros(dim, dim);
    for e in elements {
        sum = sum.add(&e).unwrap_or_else(|_| ComplexMatrix::zeros(dim, dim));
    }
    sum.max_abs_diff(&ComplexMatrix::identity(dim)).unwrap_or(f64::INFINITY)
}

/// Resolution of identity for a list of vectors.
pub fn validate_rank_one(dim: usize, vectors: &[Vec<C64>]) -> ValidationReport {
    let mut r = ValidationReport::default();
    let shapes_ok = vectors.iter().all(|v| v.len() == dim);
    r.require("vector_length", shapes_ok, 1.0);
    r.require("outcome_count", vectors.len() >= dim && dim > 0, dim as f64 - vectors.len() as f64);
    if shapes_ok {
        let dev = identity_deviation(dim, vectors.iter().map(|v| ComplexMatrix::projector(v)));
        r.check("resolution_of_identity", dev, tol::POVM);
    }
    r
}

/// Positivity of each element and resolution of identity.
pub fn validate_general(dim: usize, elements: &[ComplexMatrix]) -> ValidationReport {
    let mut r = ValidationReport::default();
    let shapes_ok = elements.iter().all(|e| e.rows() == dim && e.cols() == dim);
    r.require("element_shape", shapes_ok, 1.0);
    r.require("outcome_count", !elements.is_empty(), 1.0);
    if !shapes_ok {
        return r;
    }
    let herm = elements.iter().map(|e| e.hermiticity_deviation()).fold(0.0, f64::max);
    r.check("hermitian", herm, tol::HERMITIAN);
    let mut most_negative = 0.0f64;
    for e in elements {
        match linalg::hermitian_eigenvalues(e) {
            Ok(eig) => most_negative = most_negative.min(eig[0]),
            Err(_) => most_negative = f64::NEG_INFINITY,
        }
    }
    r.check("positive_semidefinite", -most_negative, tol::PSD);
    r.check("resolution_of_identity", identity_deviation(dim, elements.iter().cloned()), tol::POVM);
    r
}

pub fn validate_povm(m: &Measurement) -> ValidationReport {
    match m {
        Measurement::RankOne(p) => validate_rank_one(p.dim, &p.vectors),
        Measurement::General(p) => validate_general(p.dim, &p.elements),
    }
}

/// Both inputs are orthonormal bases and `|⟨e_i|e'_j⟩|² = 1/d` for all pairs.
pub fn validate_mub_pair(a: &RankOnePovm, b: &RankOnePovm) -> ValidationReport {
    let mut r = ValidationReport::default();
    r.require("same_dimension", a.dim == b.dim, 1.0);
    r.require("basis_a", a.is_orthonormal_basis(), 1.0);
    r.require("basis_b", b.is_orthonormal_basis(), 1.0);
    if a.dim != b.dim {
        return r;
    }
    let target = 1.0 / a.dim as f64;
    let worst = a
        .vectors
        .iter()
        .flat_map(|u| b.vectors.iter().map(move |v| (inner(u, v).norm_sqr() - target).abs()))
        .fold(0.0, f64::max);
    r.check("unbiased", worst, tol::POVM);
    r
}

/// `d²` vectors with `‖f_i‖² = 1/d` and `|⟨φ_i|φ_j⟩|² = 1/(d+1)` for the
/// normalized `φ_i = √d f_i`.
pub fn validate_sic(f: &RankOnePovm) -> ValidationReport {
    let mut r = validate_rank_one(f.dim, &f.vectors);
    let d = f.dim as f64;
    r.require("sic_outcome_count", f.outcomes() == f.dim * f.dim, f.outcomes() as f64);
    let trace_dev = f.vectors.iter().map(|v| (vector_norm(v).powi(2) - 1.0 / d).abs()).fold(0.0, f64::max);
    r.check("element_trace", trace_dev, tol::POVM);
    let target = 1.0 / (d + 1.0);
    let mut worst = 0.0f64;
    for i in 0..f.outcomes() {
        for j in i + 1..f.outcomes() {
            worst = worst.max((d * d * inner(&f.vectors[i], &f.vectors[j]).norm_sqr() - target).abs());
        }
    }
    r.check("symmetric_overlap", worst, tol::POVM);
    r
}

fn overlap(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.trace_product(b).map_or(f64::NAN, |z| z.re)
}

/// Mutually unbiased measurements: `d` trace-one elements per POVM,
/// `Tr(N_i N'_j) = 1/d` across POVMs and `Tr(N_i N_j) = δ_ij κ +
/// (1-δ_ij)(1-κ)/(d-1)` within each, with one common `κ ∈ (1/d, 1]`.
/// The measured `κ` is reported as `kappa`.
pub fn validate_mum(povms: &[GeneralPovm]) -> ValidationReport {
    let mut r = ValidationReport::default();
    let Some(first) = povms.first() else {
        r.require("nonempty", false, 1.0);
        return r;
    };
    let d = first.dim;
    let df = d as f64;
    let shape_ok = d >= 2 && povms.iter().all(|p| p.dim == d && p.outcomes() == d);
    r.require("outcome_count", shape_ok, 1.0);
    if !shape_ok {
        return r;
    }
    let kappa = povms.iter().flat_map(|p| p.elements.iter().map(|e| overlap(e, e))).sum::<f64>() / (povms.len() * d) as f64;
    r.measured.push(("kappa", kappa));

    let trace_dev = povms.iter().flat_map(|p| p.elements.iter().map(|e| (e.trace().re - 1.0).abs())).fold(0.0, f64::max);
    r.check("unit_trace", trace_dev, tol::POVM);

    let mut self_dev = 0.0f64;
    let mut intra_dev = 0.0f64;
    let off_target = (1.0 - kappa) / (df - 1.0);
    for p in povms {
        for (i, a) in p.elements.iter().enumerate() {
            for (j, b) in p.elements.iter().enumerate() {
                let v = overlap(a, b);
                if i == j {
                    self_dev = self_dev.max((v - kappa).abs());
                } else {
                    intra_dev = intra_dev.max((v - off_target).abs());
                }
            }
        }
    }
    r.check("self_overlap", self_dev, tol::POVM);
    r.check("intra_overlap", intra_dev, tol::POVM);

    let mut cross_dev = 0.0f64;
    for (s, p) in povms.iter().enumerate() {
        for q in &povms[s + 1..] {
            for a in &p.elements {
                for b in &q.elements {
                    cross_dev = cross_dev.max((overlap(a, b) - 1.0 / df).abs());
                }
            }
        }
    }
    r.check("cross_overlap", cross_dev, tol::POVM);
    let range_dev = if kappa > 1.0 / df + tol::POVM { (kappa - 1.0).max(0.0) } else { 1.0 / df - kappa + tol::POVM };
    r.check("efficiency_range", range_dev, tol::POVM);
    r
}

/// General SIC-POVM: `d²` elements, `Tr N_i = 1/d`, `Tr(N_i²) = a` and
/// `Tr(N_i N_j) = (1 - a d)/(d(d²-1))` for `i ≠ j`, with `a ∈ (1/d³, 1/d²]`.
/// The measured `a` is reported as `a`.
pub fn validate_gsic(povm: &GeneralPovm) -> ValidationReport {
    let mut r = validate_general(povm.dim, &povm.elements);
    let d = povm.dim;
    let df = d as f64;
    let count_ok = d >= 2 && povm.outcomes() == d * d;
    r.require("gsic_outcome_count", count_ok, povm.outcomes() as f64);
    if !count_ok {
        return r;
    }
    let a = povm.elements.iter().map(|e| overlap(e, e)).sum::<f64>() / (d * d) as f64;
    let b = (1.0 - a * df) / (df * (df * df - 1.0));
    r.measured.push(("a", a));
    r.measured.push(("b", b));
    let trace_dev = povm.elements.iter().map(|e| (e.trace().re - 1.0 / df).abs()).fold(0.0, f64::max);
    r.check("element_trace", trace_dev, tol::POVM);
    let mut self_dev = 0.0f64;
    let mut cross_dev = 0.0f64;
    for (i, x) in povm.elements.iter().enumerate() {
        for (j, y) in povm.elements.iter().enumerate() {
            let v = overlap(x, y);
            if i == j {
                self_dev = self_dev.max((v - a).abs());
            } else {
                cross_dev = cross_dev.max((v - b).abs());
            }
        }
    }
    r.check("self_overlap", self_dev, tol::POVM);
    r.check("cross_overlap", cross_dev, tol::POVM);
    let lo = 1.0 / (df * df * df);
    let hi = 1.0 / (df * df);
    let range_dev = if a > lo + tol::POVM { (a - hi).max(0.0) } else { lo - a + tol::POVM };
    r.check("purity_range", range_dev, tol::POVM);
    r
}

// ---------------------------------------------------------------------------
// Structured measurements

/// Mutually unbiased measurements sharing the efficiency `kappa`.
#[derive(Debug, Clone, PartialEq)]
pub struct MumSet {
    povms: Vec<GeneralPovm>,
    kappa: f64,
}

impl MumSet {
    pub fn new(povms: Vec<GeneralPovm>) -> Result<Self> {
        let report = validate_mum(&povms);
        if !report.passed() {
            return Err(Error::Measurement(format!("not a set of MUMs: {}", failure_summary(&report))));
        }
        let kappa = report.measured("kappa").unwrap_or(f64::NAN);
        Ok(Self { povms, kappa })
    }

    pub fn povms(&self) -> &[GeneralPovm] {
        &self.povms
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn dim(&self) -> usize {
        self.povms[0].dim
    }

    pub fn len(&self) -> usize {
        self.povms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.povms.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralSic {
    povm: GeneralPovm,
    a: f64,
}

impl GeneralSic {
    pub fn new(povm: GeneralPovm) -> Result<Self> {
        let report = validate_gsic(&povm);
        if !report.passed() {
            return Err(Error::Measurement(format!("not a general SIC-POVM: {}", failure_summary(&report))));
        }
        let a = report.measured("a").unwrap_or(f64::NAN);
        Ok(Self { povm, a })
    }

    pub fn povm(&self) -> &GeneralPovm {
        &self.povm
    }

    pub fn dim(&self) -> usize {
        self.povm.dim
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// The common off-diagonal overlap `(1 - a d)/(d(d²-1))`.
    pub fn b(&self) -> f64 {
        let d = self.dim() as f64;
        (1.0 - self.a * d) / (d * (d * d - 1.0))
    }
}

/// `{cos θ|0⟩ + sin θ|1⟩, sin θ|0⟩ - cos θ|1⟩}`.
pub fn rotated_qubit_basis(theta: f64) -> RankOnePovm {
    let (s, c) = theta.sin_cos();
    RankOnePovm { dim: 2, vectors: vec![vec![cplx(c, 0.0), cplx(s, 0.0)], vec![cplx(s, 0.0), cplx(-c, 0.0)]] }
}

/// Eigenbases of `σ_z`, `σ_x`, `σ_y`, each ordered with the `+1`
/// eigenvector first.
pub fn qubit_pauli_mubs() -> Vec<RankOnePovm> {
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let z = RankOnePovm::computational_basis(2);
    let x = RankOnePovm { dim: 2, vectors: vec![vec![cplx(h, 0.0), cplx(h, 0.0)], vec![cplx(h, 0.0), cplx(-h, 0.0)]] };
    let y = RankOnePovm { dim: 2, vectors: vec![vec![cplx(h, 0.0), cplx(0.0, h)], vec![cplx(h, 0.0), cplx(0.0, -h)]] };
    vec![z, x, y]
}

/// Clock operator `Z = diag(1, ω, ω², …)` with `ω = e^{2πi/d}`.
pub fn clock(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |i, j| if i == j { root_of_unity(d, i) } else { cplx(0.0, 0.0) })
}

/// Shift operator `X|j⟩ = |j+1 mod d⟩`.
pub fn shift(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |i, j| if i == (j + 1) % d { cplx(1.0, 0.0) } else { cplx(0.0, 0.0) })
}

/// Eigenbasis of `Z^m X`.
///
/// The eigenvalues are `λ_k = λ_0 ω^k` with `λ_0 = 1` when `m(d-1)` is even
/// and `e^{iπ/d}` otherwise; vector `k` has components
/// `λ_k^{-j} ω^{m j(j+1)/2} / √d`. For `m = 0` this gives `X|x_k⟩ = ω^k|x_k⟩`.
pub fn weyl_eigenbasis(d: usize, m: usize) -> RankOnePovm {
    let base = if (m * (d - 1)) % 2 == 0 { 0.0 } else { PI / d as f64 };
    let norm = 1.0 / (d as f64).sqrt();
    let vectors = (0..d)
        .map(|k| {
            let lambda_arg = base + 2.0 * PI * k as f64 / d as f64;
            (0..d)
                .map(|j| {
                    let tri = (m * (j * (j + 1) / 2)) % d;
                    let arg = -lambda_arg * j as f64 + 2.0 * PI * tri as f64 / d as f64;
                    C64::from_polar(norm, arg)
                })
                .collect()
        })
        .collect();
    RankOnePovm { dim: d, vectors }
}

fn is_prime(d: usize) -> bool {
    d >= 2 && (2..d).take_while(|k| k * k <= d).all(|k| d % k != 0)
}

/// The `d + 1` eigenbases of `Z, X, ZX, Z²X, …, Z^{d-1}X` for prime `d`.
pub fn prime_pauli_mubs(d: usize) -> Result<Vec<RankOnePovm>> {
    if !is_prime(d) {
        return Err(Error::Unsupported(format!("MUB construction needs a prime dimension, got {d}")));
    }
    let mut bases = vec![RankOnePovm::computational_basis(d)];
    bases.extend((0..d).map(|m| weyl_eigenbasis(d, m)));
    Ok(bases)
}

/// Orbit `{X^p Z^q |φ⟩ / √d}` of a fiducial vector under the Weyl operators.
fn weyl_orbit(d: usize, fiducial: &[C64]) -> Result<Vec<Vec<C64>>> {
    let x = shift(d);
    let z = clock(d);
    let scale = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut out = Vec::with_capacity(d * d);
    for p in 0..d {
        for q in 0..d {
            let mut v = fiducial.to_vec();
            for _ in 0..q {
                v = z.apply(&v)?;
            }
            for _ in 0..p {
                v = x.apply(&v)?;
            }
            out.push(v.into_iter().map(|c| c * scale).collect());
        }
    }
    Ok(out)
}

/// SIC-POVM for `d ∈ {2, 3}` as the Weyl orbit of a standard fiducial: the
/// qubit tetrahedron (Bloch vector `(1,1,1)/√3`) or `(0, 1, -1)/√2` for the
/// qutrit. The result is accepted only if [`validate_sic`] passes.
pub fn sic_povm(d: usize) -> Result<RankOnePovm> {
    let fiducial = match d {
        2 => {
            let theta = (1.0 / 3f64.sqrt()).acos();
            vec![cplx((theta / 2.0).cos(), 0.0), C64::from_polar((theta / 2.0).sin(), PI / 4.0)]
        }
        3 => {
            let h = core::f64::consts::FRAC_1_SQRT_2;
            vec![cplx(0.0, 0.0), cplx(h, 0.0), cplx(-h, 0.0)]
        }
        _ => return Err(Error::Unsupported(format!("SIC-POVM construction only for d = 2, 3, got {d}"))),
    };
    let povm = RankOnePovm::new(d, weyl_orbit(d, &fiducial)?)?;
    let report = validate_sic(&povm);
    if !report.passed() {
        return Err(Error::Measurement(format!("SIC fiducial failed validation: {}", failure_summary(&report))));
    }
    Ok(povm)
}

fn require_mixing(t: f64) -> Result<()> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::Domain(format!("mixing parameter must lie in (0, 1], got {t}")));
    }
    Ok(())
}

/// `κ = t² + (1 - t²)/d` for the depolarized projectors `t|e_i⟩⟨e_i| + (1-t) I/d`.
pub fn mum_efficiency(d: usize, t: f64) -> f64 {
    t * t + (1.0 - t * t) / d as f64
}

/// Depolarizes each basis projector: `N_i = t|e_i⟩⟨e_i| + (1-t) I/d`.
pub fn mum_from_mubs(bases: &[RankOnePovm], t: f64) -> Result<MumSet> {
    require_mixing(t)?;
    let Some(first) = bases.first() else {
        return Err(Error::Usage("no bases given".into()));
    };
    for (i, a) in bases.iter().enumerate() {
        for b in &bases[i + 1..] {
            let r = validate_mub_pair(a, b);
            if !r.passed() {
                return Err(Error::Usage(format!("bases are not mutually unbiased: {}", failure_summary(&r))));
            }
        }
    }
    if bases.len() == 1 && !first.is_orthonormal_basis() {
        return Err(Error::Usage("input is not an orthonormal basis".into()));
    }
    let d = first.dim;
    let noise = ComplexMatrix::identity(d).scale_real((1.0 - t) / d as f64);
    let povms = bases
        .iter()
        .map(|b| {
            let elements = b.elements().iter().map(|p| p.scale_real(t).add(&noise)).collect::<Result<Vec<_>>>()?;
            GeneralPovm::new(d, elements)
        })
        .collect::<Result<Vec<_>>>()?;
    MumSet::new(povms)
}

/// `a = t²/d² + 2t(1-t)/d³ + (1-t)²/d³` for `t|f_i⟩⟨f_i| + (1-t) I/d²`.
pub fn gsic_purity(d: usize, t: f64) -> f64 {
    let d = d as f64;
    t * t / (d * d) + (2.0 * t * (1.0 - t) + (1.0 - t) * (1.0 - t)) / (d * d * d)
}

/// Depolarizes each SIC element: `N_i = t|f_i⟩⟨f_i| + (1-t) I/d²`.
pub fn gsic_from_sic(sic: &RankOnePovm, t: f64) -> Result<GeneralSic> {
    require_mixing(t)?;
    let report = validate_sic(sic);
    if !report.passed() {
        return Err(Error::Usage(format!("input is not a SIC-POVM: {}", failure_summary(&report))));
    }
    let d = sic.dim;
    let noise = ComplexMatrix::identity(d).scale_real((1.0 - t) / (d * d) as f64);
    let elements = sic.elements().iter().map(|p| p.scale_real(t).add(&noise)).collect::<Result<Vec<_>>>()?;
    GeneralSic::new(GeneralPovm::new(d, elements)?)
}

/// Maximal overlap `η = max_{i,j} |⟨f_i|g_j⟩|`.
pub fn eta(f: &RankOnePovm, g: &RankOnePovm) -> Result<f64> {
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch { expected: f.dim, found: g.dim });
    }
    Ok(f.vectors.iter().flat_map(|u| g.vectors.iter().map(move |v| inner(u, v).norm())).fold(0.0, f64::max))
}

/// The `D×D` matrix `V_ij = ⟨f_i|g_j⟩`.
pub fn overlap_matrix(f: &RankOnePovm, g: &RankOnePovm) -> Result<ComplexMatrix> {
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch { expected: f.dim, found: g.dim });
    }
    if f.outcomes() != g.outcomes() {
        return Err(Error::DimensionMismatch { expected: f.outcomes(), found: g.outcomes() });
    }
    Ok(ComplexMatrix::from_fn(f.outcomes(), g.outcomes(), |i, j| inner(&f.vectors[i], &g.vectors[j])))
}
