//! Separability conditions for joint measurements built by the convolution
//! scheme.
//!
//! Each criterion is prepared once from its measurements (which fixes the
//! state-independent bound) and then evaluated on any number of states via
//! [`SeparabilityTest::evaluate`]. The free functions at the bottom are
//! one-shot wrappers.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::entropy::{alpha_log, power_norm, renyi, tsallis, EntropyOrder, ProbabilityVector};
use crate::linalg::{kron, kron_vec, ComplexMatrix, DensityMatrix, Subsystem};
use crate::majorization::{as_distribution, profile_of, SValueProfile};
use crate::measurements::{
    eta, validate_mub_pair, validate_sic, GeneralPovm, GeneralSic, Measurement, MumSet, RankOnePovm,
};
use crate::{tol, Error, Result};

/// Joint POVM `Π_k = Σ_i N_{A,i} ⊗ N_{B,k⊖i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvolutionPovm {
    elements: Vec<ComplexMatrix>,
    local_a: Measurement,
    local_b: Measurement,
}

pub fn build_convolution_povm(na: &Measurement, nb: &Measurement) -> Result<ConvolutionPovm> {
    if na.outcomes() != nb.outcomes() {
        return Err(Error::Usage(format!(
            "local measurements have {} and {} outcomes; the convolution scheme needs equal counts",
            na.outcomes(),
            nb.outcomes()
        )));
    }
    if na.dim() != nb.dim() {
        return Err(Error::Usage(format!("local dimensions differ: {} and {}", na.dim(), nb.dim())));
    }
    let n = na.outcomes();
    let d = na.dim();
    let elements = match (na, nb) {
        (Measurement::RankOne(f), Measurement::RankOne(g)) => (0..n)
            .map(|k| {
                let mut acc = ComplexMatrix::zeros(d * d, d * d);
                for i in 0..n {
                    acc = acc.add(&ComplexMatrix::projector(&kron_vec(f.vector(i), g.vector((k + n - i) % n))?))?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?,
        _ => {
            let ea = na.elements();
            let eb = nb.elements();
            (0..n)
                .map(|k| {
                    let mut acc = ComplexMatrix::zeros(d * d, d * d);
                    for i in 0..n {
                        acc = acc.add(&kron(&ea[i], &eb[(k + n - i) % n])?)?;
                    }
                    Ok(acc)
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(ConvolutionPovm { elements, local_a: na.clone(), local_b: nb.clone() })
}

impl ConvolutionPovm {
    pub fn new(na: impl Into<Measurement>, nb: impl Into<Measurement>) -> Result<Self> {
        build_convolution_povm(&na.into(), &nb.into())
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn outcomes(&self) -> usize {
        self.elements.len()
    }

    /// Local dimension `d`; the joint space has dimension `d²`.
    pub fn local_dim(&self) -> usize {
        self.local_a.dim()
    }

    pub fn local(&self, side: Subsystem) -> &Measurement {
        match side {
            Subsystem::A => &self.local_a,
            Subsystem::B => &self.local_b,
        }
    }

    fn rank_one(&self, side: Subsystem) -> Option<&RankOnePovm> {
        self.local(side).as_rank_one()
    }

    pub fn probabilities(&self, rho: &DensityMatrix) -> Result<ProbabilityVector> {
        let d = self.local_dim();
        if rho.dim() != d * d {
            return Err(Error::DimensionMismatch { expected: d * d, found: rho.dim() });
        }
        if let Some(dims) = rho.subsystem_dims() {
            if dims != (d, d) {
                return Err(Error::Usage(format!("state is split as {dims:?}, measurements act on ({d}, {d})")));
            }
        }
        let probs = self.elements.iter().map(|e| rho.expectation(e)).collect::<Result<Vec<_>>>()?;
        ProbabilityVector::new(probs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntropyKind {
    Renyi,
    Tsallis,
}

impl EntropyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Renyi => "renyi",
            Self::Tsallis => "tsallis",
        }
    }
}

impl fmt::Display for EntropyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn entropy(kind: EntropyKind, p: &ProbabilityVector, alpha: EntropyOrder) -> Result<f64> {
    match kind {
        EntropyKind::Renyi => Ok(renyi(p, alpha)),
        EntropyKind::Tsallis => tsallis(p, alpha),
    }
}

/// Outcome of one criterion on one state.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub criterion_id: String,
    /// Named parameters: `alpha`, `beta`, `k`, `kappa`, `a`, `d`, `theta`.
    pub params: Vec<(&'static str, f64)>,
    pub observed: f64,
    pub bound: f64,
    /// `observed - bound`; for the correlation measure `bound - J`, so that
    /// a negative margin always signals a violation.
    pub margin: f64,
    pub violated: bool,
    pub side: Option<Subsystem>,
}

impl CriterionReport {
    fn new(criterion_id: String, params: Vec<(&'static str, f64)>, observed: f64, bound: f64, side: Option<Subsystem>) -> Self {
        let margin = observed - bound;
        Self { criterion_id, params, observed, bound, margin, violated: margin < -tol::CRITERION, side }
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }
}

pub trait SeparabilityTest {
    fn evaluate(&self, rho: &DensityMatrix) -> Result<CriterionReport>;
}

/// Larger of the two side bounds; ties go to A.
fn pick_side(a: f64, b: f64) -> (f64, Subsystem) {
    if b > a {
        (b, Subsystem::B)
    } else {
        (a, Subsystem::A)
    }
}

fn require_rank_one<'a>(m: &'a ConvolutionPovm, side: Subsystem, what: &str) -> Result<&'a RankOnePovm> {
    m.rank_one(side).ok_or_else(|| Error::Usage(format!("{what} needs rank-one local measurements")))
}

fn require_same_local_dim(ms: &[&ConvolutionPovm]) -> Result<usize> {
    let d = ms[0].local_dim();
    if let Some(m) = ms.iter().find(|m| m.local_dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: m.local_dim() });
    }
    Ok(d)
}

fn require_order_at_most(alpha: EntropyOrder, max: f64, what: &str) -> Result<()> {
    match alpha {
        EntropyOrder::Finite(a) if a <= max => Ok(()),
        _ => Err(Error::Usage(format!("{what} requires 0 < α ≤ {max}, got {alpha}"))),
    }
}

fn order_param(alpha: EntropyOrder) -> f64 {
    alpha.value()
}

// ---------------------------------------------------------------------------
// Maassen–Uffink type

/// `E_α(M⁽¹⁾|ρ) + E_β(M⁽²⁾|ρ) ≥ -2 ln η` (Rényi) or `≥ ln_μ(η^{-2})`
/// with `μ = max(α, β)` (Tsallis), for conjugate `1/α + 1/β = 2`.
#[derive(Debug, Clone)]
pub struct MuCriterion {
    m1: ConvolutionPovm,
    m2: ConvolutionPovm,
    alpha: EntropyOrder,
    beta: EntropyOrder,
    kind: EntropyKind,
    bound: f64,
    side: Subsystem,
}

fn reciprocal(o: EntropyOrder) -> f64 {
    match o {
        EntropyOrder::Infinity => 0.0,
        EntropyOrder::Finite(a) => 1.0 / a,
    }
}

impl MuCriterion {
    pub fn new(m1: ConvolutionPovm, m2: ConvolutionPovm, alpha: EntropyOrder, beta: EntropyOrder, kind: EntropyKind) -> Result<Self> {
        let sum = reciprocal(alpha) + reciprocal(beta);
        if (sum - 2.0).abs() > 1e-9 {
            return Err(Error::Usage(format!("orders {alpha} and {beta} are not conjugate (1/α + 1/β = {sum})")));
        }
        if kind == EntropyKind::Tsallis && (alpha == EntropyOrder::Infinity || beta == EntropyOrder::Infinity) {
            return Err(Error::Usage("the Tsallis form needs finite orders".into()));
        }
        require_same_local_dim(&[&m1, &m2])?;
        let mut bounds = [0.0; 2];
        for (slot, side) in bounds.iter_mut().zip([Subsystem::A, Subsystem::B]) {
            let f = require_rank_one(&m1, side, "the Maassen–Uffink criterion")?;
            let g = require_rank_one(&m2, side, "the Maassen–Uffink criterion")?;
            let e = eta(f, g)?;
            *slot = match kind {
                EntropyKind::Renyi => -2.0 * e.ln(),
                EntropyKind::Tsallis => {
                    let mu = EntropyOrder::Finite(alpha.value().max(beta.value()));
                    alpha_log(e.powi(-2), mu)?
                }
            };
        }
        let (bound, side) = pick_side(bounds[0], bounds[1]);
        Ok(Self { m1, m2, alpha, beta, kind, bound, side })
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }
}

impl SeparabilityTest for MuCriterion {
    fn evaluate(&self, rho: &DensityMatrix) -> Result<CriterionReport> {
        let p = self.m1.probabilities(rho)?;
        let q = self.m2.probabilities(rho)?;
        let observed = entropy(self.kind, &p, self.alpha)? + entropy(self.kind, &q, self.beta)?;
        let params = alloc::vec![("alpha", order_param(self.alpha)), ("beta", order_param(self.beta))];
        Ok(CriterionReport::new(format!("mu-{}", self.kind), params, observed, self.bound, Some(self.side)))
    }
}

// ---------------------------------------------------------------------------
// Majorization type

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitVariant {
    /// `(2/(1-α)) ln((1 + ‖w‖_α^α)/2)`.
    A,
    /// `R_α(w')`.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MajorizationForm {
    General(EntropyKind),
    Qubit(QubitVariant),
}

/// Bounds from the `s_k` profile of the local overlap matrices.
#[derive(Debug, Clone)]
pub struct MajCriterion {
    m1: ConvolutionPovm,
    m2: ConvolutionPovm,
    alpha: EntropyOrder,
    form: MajorizationForm,
    profiles: [SValueProfile; 2],
    bound: f64,
    side: Subsystem,
}

impl MajCriterion {
    /// General form; the Rényi kind needs `α ≤ 1`.
    pub fn new(m1: ConvolutionPovm, m2: ConvolutionPovm, alpha: EntropyOrder, kind: EntropyKind) -> Result<Self> {
        match (kind, alpha) {
            (EntropyKind::Renyi, EntropyOrder::Finite(a)) if a <= 1.0 + tol::SHANNON_WINDOW => {}
            (EntropyKind::Renyi, _) => {
                return Err(Error::Usage(format!(
                    "Rényi majorization bound holds for α ≤ 1 only (got {alpha}); use the qubit variants for 1 < α ≤ 2"
                )))
            }
            (EntropyKind::Tsallis, EntropyOrder::Infinity) => {
                return Err(Error::Usage("the Tsallis form needs a finite order".into()))
            }
            _ => {}
        }
        Self::build(m1, m2, alpha, MajorizationForm::General(kind))
    }

    /// Two-qubit orthonormal-basis variants for `1 < α ≤ 2`.
    pub fn qubit(m1: ConvolutionPovm, m2: ConvolutionPovm, alpha: EntropyOrder, variant: QubitVariant) -> Result<Self> {
        if m1.local_dim() != 2 || m2.local_dim() != 2 {
            return Err(Error::Unsupported(format!("qubit variants need d = 2, got d = {}", m1.local_dim())));
        }
        match alpha {
            EntropyOrder::Finite(a) if a > 1.0 && a <= 2.0 => {}
            _ => return Err(Error::Usage(format!("qubit variants need 1 < α ≤ 2, got {alpha}"))),
        }
        for m in [&m1, &m2] {
            for side in [Subsystem::A, Subsystem::B] {
                if !require_rank_one(m, side, "qubit variants")?.is_orthonormal_basis() {
                    return Err(Error::Usage("qubit variants need orthonormal local bases".into()));
                }
            }
        }
        Self::build(m1, m2, alpha, MajorizationForm::Qubit(variant))
    }

    fn build(m1: ConvolutionPovm, m2: ConvolutionPovm, alpha: EntropyOrder, form: MajorizationForm) -> Result<Self> {
        require_same_local_dim(&[&m1, &m2])?;
        if m1.outcomes() != m2.outcomes() {
            return Err(Error::Usage("both joint measurements need the same number of outcomes".into()));
        }
        let profile = |side| -> Result<SValueProfile> {
            profile_of(require_rank_one(&m1, side, "the majorization criterion")?, require_rank_one(&m2, side, "the majorization criterion")?)
        };
        let profiles = [profile(Subsystem::A)?, profile(Subsystem::B)?];
        let mut bounds = [0.0; 2];
        for (slot, p) in bounds.iter_mut().zip(&profiles) {
            *slot = match form {
                MajorizationForm::General(kind) => entropy(kind, &as_distribution(p.w())?, alpha)?,
                MajorizationForm::Qubit(QubitVariant::A) => {
                    let a = alpha.value();
                    let s = power_norm(p.w(), alpha).powf(a);
                    2.0 / (1.0 - a) * ((1.0 + s) / 2.0).ln()
                }
                MajorizationForm::Qubit(QubitVariant::B) => renyi(&as_distribution(p.w_prime())?, alpha),
            };
        }
        let (bound, side) = pick_side(bounds[0], bounds[1]);
        Ok(Self { m1, m2, alpha, form, profiles, bound, side })
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn profile(&self, side: Subsystem) -> &SValueProfile {
        match side {
            Subsystem::A => &self.profiles[0],
            Subsystem::B => &self.profiles[1],
        }
    }

    fn id(&self) -> String {
        match self.form {
            MajorizationForm::General(kind) => format!("maj-{kind}"),
            MajorizationForm::Qubit(QubitVariant::A) => "maj-qubit-a".into(),
            MajorizationForm::Qubit(QubitVariant::B) => "maj-qubit-b".into(),
        }
    }
}

impl SeparabilityTest for MajCriterion {
    fn evaluate(&self, rho: &DensityMatrix) -> Result<CriterionReport> {
        let kind = match self.form {
            MajorizationForm::General(kind) => kind,
            MajorizationForm::Qubit(_) => EntropyKind::Renyi,
        };
        let p = self.m1.probabilities(rho)?;
        let q = self.m2.probabilities(rho)?;
        let observed = entropy(kind, &p, self.alpha)? + entropy(kind, &q, self.alpha)?;
        let params = alloc::vec![("alpha", order_param(self.alpha))];
        Ok(CriterionReport::new(self.id(), params, observed, self.bound, Some(self.side)))
    }
}

// ---------------------------------------------------------------------------
// Index-of-coincidence type

fn mean_entropy(ms: &[ConvolutionPovm], rho: &DensityMatrix, kind: EntropyKind, alpha: EntropyOrder) -> Result<f64> {
    let mut total = 0.0;
    for m in ms {
        total += entropy(kind, &m.probabilities(rho)?, alpha)?;
    }
    Ok(total / ms.len() as f64)
}

fn require_mubs(bases: &[&RankOnePovm]) -> Result<()> {
    for (i, a) in bases.iter().enumerate() {
        if !a.is_orthonormal_basis() {
            return Err(Error::Usage(format!("local measurement {i} is not an orthonormal basis")));
        }
        for b in &bases[i + 1..] {
            let r = validate_mub_pair(a, b);
            if !r.passed() {
                let dev = r.worst().map_or(f64::NAN, |c| c.deviation);
                return Err(Error::Usage(format!("local bases are not mutually unbiased (deviation {dev:e})")));
            }
        }
    }
    Ok(())
}

fn locals<'a>(ms: &'a [ConvolutionPovm], side: Subsystem, what: &str) -> Result<Vec<&'a RankOnePovm>> {
    ms.iter().map(|m| require_rank_one(m, side, what)).collect()
}

/// `(1/K) Σ_t E_α(M⁽ᵗ⁾|ρ) ≥ ln_α(Kd/(d+K-1))` for `K` joint measurements
/// built from MUB pairs. Tsallis: `0 < α ≤ 2`; Rényi (bound `ln(Kd/(d+K-1))`):
/// `α ≤ 1`, or `α ≤ 2` when `d = 2`.
#[derive(Debug, Clone)]
pub struct MubCriterion {
    ms: Vec<ConvolutionPovm>,
    alpha: EntropyOrder,
    kind: EntropyKind,
    bound: f64,
}

impl MubCriterion {
    pub fn new(ms: Vec<ConvolutionPovm>, alpha: EntropyOrder, kind: EntropyKind) -> Result<Self> {
        if ms.is_empty() {
            return Err(Error::Usage("need at least one joint measurement".into()));
        }
        let refs: Vec<&ConvolutionPovm> = ms.iter().collect();
        let d = require_same_local_dim(&refs)?;
        for side in [Subsystem::A, Subsystem::B] {
            require_mubs(&locals(&ms, side, "the MUB criterion")?)?;
        }
        let k = ms.len() as f64;
        let df = d as f64;
        let ratio = k * df / (df + k - 1.0);
        let bound = match kind {
            EntropyKind::Tsallis => {
                require_order_at_most(alpha, 2.0, "the Tsallis MUB criterion")?;
                alpha_log(ratio, alpha)?
            }
            EntropyKind::Renyi => {
                let max = if d == 2 { 2.0 } else { 1.0 + tol::SHANNON_WINDOW };
                require_order_at_most(alpha, max, "the Rényi MUB criterion")?;
                ratio.ln()
            }
        };
        Ok(Self { ms, alpha, kind, bound })
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }
}

impl SeparabilityTest for MubCriterion {
    fn evaluate(&self, rho: &DensityMatrix) -> Result<CriterionReport> {
        let observed = mean_entropy(&self.ms, rho, self.kind, self.alpha)?;
        let params = alloc::vec![("alpha", order_param(self.alpha)), ("k", self.ms.len() as f64), ("d", self.ms[0].local_dim() as f64)];
        Ok(CriterionReport::new(format!("mub-{}", self.kind), params, observed, self.bound, None))
    }
}

/// `(1/K) Σ_t H_α(M⁽ᵗ⁾|ρ) ≥ ln_α(Kd/(κd+K-1))` for MUM pairs, `0 < α ≤ 2`.
#[derive(Debug, Clone)]
pub struct MumCriterion {
    ms: Vec<ConvolutionPovm>,
    alpha: EntropyOrder,
    kappa: f64,
    bound: f64,
    side: Subsystem,
}

fn check_kappa(kappa: f64, d: usize) -> Result<()> {
    let lo = 1.0 / d as f64;
    if !(kappa > lo && kappa <= 1.0 + tol::POVM) {
        return Err(Error::Usage(format!("efficiency {kappa} outside ({lo}, 1]")));
    }
    Ok(())
}

impl MumCriterion {
    pub fn new(a: &MumSet, b: &MumSet, alpha: EntropyOrder) -> Result<Self> {
        require_order_at_most(alpha, 2.0, "the MUM criterion")?;
        if a.len() != b.len() {
            return Err(Error::Usage(format!("MUM sets have {} and {} members", a.len(), b.len())));
        }
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
        }
        let d = a.dim();
        check_kappa(a.kappa(), d)?;
        check_kappa(b.kappa(), d)?;
        let ms = a
            .povms()
            .iter()
            .zip(b.povms())
            .map(|(x, y)| build_convolution_povm(&Measurement::General(x.clone()), &Measurement::General(y.clone())))
            .collect::<Result<Vec<_>>>()?;
        let k = a.len() as f64;
        let df = d as f64;
        let side_bound = |kappa: f64| alpha_log(k * df / (kappa * df + k - 1.0), alpha);
        let (bound, side) = pick_side(side_bound(a.kappa())?, side_bound(b.kappa())?);
        let kappa = match side {
            Subsystem::A => a.kappa(),
            Subsystem::B => b.kappa(),
        };
        Ok(Self { ms, alpha, kappa, bound, side })
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }
}

impl SeparabilityTest for MumCriterion {
    fn evaluate(&self, rho: &DensityMatrix) -> Result<CriterionReport> {
        let observed = mean_entropy(&self.ms, rho, EntropyKind::Tsallis, self.alpha)?;
        let params = alloc::vec![
            ("alpha", order_param(self.alpha)),
            ("k", self.ms.len() as f64),
            ("kappa", self.kappa),
            ("d", self.ms[0].local_dim() as f64),
        ];
        Ok(CriterionReport::new("mum-tsallis".into(), params, observed, self.bound, Some(self.side)))
    }
}

/// `H_α(M|ρ) ≥ ln_α(d(d+1)/2)` for a joint measurement built from two
/// SIC-POVMs, `0 < α ≤ 2`.
#[derive(Debug, Clone)]
pub struct SicCriterion {
    m: ConvolutionPovm,
    alpha: EntropyOrder,
    bound: f64,
}

impl SicCriterion {
    pub fn new(m: ConvolutionPovm, alpha: EntropyOrder) -> Result<Self> {
        require_order_at_most(alpha, 2.0, "the SIC criterion")?;
        for side in [Subsystem::A, Subsystem::B] {
            let f = require_rank_one(&m, side, "the SIC criterion")?;
            let r = validate_sic(f);
            if !r.passed() {
                let worst = r.worst().map_or("", |c| c.name);
                return Err(Error::Usage(format!("local measurement on {side} is not a SIC-POVM ({worst})")));
            }
        }
        let d = m.local_dim() as f64;
        let bound = alpha_log(d * (d + 1.0) / 2.0, alpha)?;
        Ok(Self { m, alpha, bound })
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }
}

impl SeparabilityTest for SicCriterion {
    fn evaluate(&self, rho: &DensityMatrix) -> Result<CriterionReport> {
        let observed = tsallis(&self.m.probabilities(rho)?, self.alpha)?;
        let params = alloc::vec![("alpha", order_param(self.alpha)), ("d", self.m.local_dim() as f64)];
        Ok(CriterionReport::new("sic-tsallis".into(), params, observed, self.bound, None))
    }
}

/// `H_α(M|ρ) ≥ ln_α(d(d+1)/(a d² + 1))` for two general SIC-POVMs,
/// `0 < α ≤ 2`.
#[derive(Debug, Clone)]
pub struct GsicCriterion {
    m: ConvolutionPovm,
    alpha: EntropyOrder,
    a: f64,
    bound: f64,
    side: Subsystem,
}

fn check_purity(a: f64, d: usize) -> Result<()> {
    let df = d as f64;
    let (lo, hi) = (1.0 / (df * df * df), 1.0 / (df * df));
    if !(a > lo && a <= hi + tol::POVM) {
        return Err(Error::Usage(format!("purity parameter {a} outside ({lo}, {hi}]")));
    }
    Ok(())
}

impl GsicCriterion {
    pub fn new(na: &GeneralSic, nb: &GeneralSic, alpha: EntropyOrder) -> Result<Self> {
        require_order_at_most(alpha, 2.0, "the general SIC criterion")?;
        if na.dim() != nb.dim() {
            return Err(Error::DimensionMismatch { expected: na.dim(), found: nb.dim() });
        }
        let d = na.dim();
        check_purity(na.a(), d)?;
        check_purity(nb.a(), d)?;
        let general = |p: &GeneralPovm| Measurement::General(p.clone());
        let m = build_convolution_povm(&general(na.povm()), &general(nb.povm()))?;
        let df = d as f64;
        let side_bound = |a: f64| alpha_log(df * (df + 1.0) / (a * df * df + 1.0), alpha);
        let (bound, side) = pick_side(side_bound(na.a())?, side_bound(nb.a())?);
        let a = match side {
            Subsystem::A => na.a(),
            Subsystem::B => nb.a(),
        };
        Ok(Self { m, alpha, a, bound, side })
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }
}

impl SeparabilityTest for GsicCriterion {
    fn evaluate(&self, rho: &DensityMatrix) -> Result<CriterionReport> {
        let observed = tsallis(&self.m.probabilities(rho)?, self.alpha)?;
        let params = alloc::vec![("alpha", order_param(self.alpha)), ("a", self.a), ("d", self.m.local_dim() as f64)];
        Ok(CriterionReport::new("gsic-tsallis".into(), params, observed, self.bound, Some(self.side)))
    }
}

// ---------------------------------------------------------------------------
// Correlation measure

/// `J = Σ_t Σ_i ⟨e_i f_{π_t(i)}|ρ|e_i f_{π_t(i)}⟩ ≤ 1 + (K-1)/d` for `K`
/// pairs of bases drawn from MUBs on each side.
#[derive(Debug, Clone)]
pub struct CorrelationMeasure {
    pairs: Vec<(RankOnePovm, RankOnePovm)>,
    pairing: Vec<Vec<usize>>,
    bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationOutcome {
    pub j: f64,
    pub bound: f64,
    pub violated: bool,
}

impl CorrelationMeasure {
    /// Diagonal pairing `i ↔ i`.
    pub fn new(pairs: Vec<(RankOnePovm, RankOnePovm)>) -> Result<Self> {
        let pairing = pairs.iter().map(|(e, _)| (0..e.outcomes()).collect()).collect();
        Self::with_pairing(pairs, pairing)
    }

    /// `pairing[t][i]` is the outcome of the B basis paired with outcome `i`
    /// of the A basis in pair `t`.
    pub fn with_pairing(pairs: Vec<(RankOnePovm, RankOnePovm)>, pairing: Vec<Vec<usize>>) -> Result<Self> {
        let Some((first, _)) = pairs.first() else {
            return Err(Error::Usage("need at least one pair of bases".into()));
        };
        let d = first.dim();
        if pairing.len() != pairs.len() {
            return Err(Error::Usage("one outcome pairing per basis pair is required".into()));
        }
        for ((e, f), map) in pairs.iter().zip(&pairing) {
            if e.dim() != d || f.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: if e.dim() != d { e.dim() } else { f.dim() } });
            }
            let mut seen = alloc::vec![false; d];
            if map.len() != d || !map.iter().all(|&j| j < d && !core::mem::replace(&mut seen[j], true)) {
                return Err(Error::Usage("outcome pairing must be a permutation".into()));
            }
        }
        require_mubs(&pairs.iter().map(|(e, _)| e).collect::<Vec<_>>())?;
        require_mubs(&pairs.iter().map(|(_, f)| f).collect::<Vec<_>>())?;
        let bound = 1.0 + (pairs.len() as f64 - 1.0) / d as f64;
        Ok(Self { pairs, pairing, bound })
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn measure(&self, rho: &DensityMatrix) -> Result<CorrelationOutcome> {
        let d = self.pairs[0].0.dim();
        if rho.dim() != d * d {
            return Err(Error::DimensionMismatch { expected: d * d, found: rho.dim() });
        }
        let mut j = 0.0;
        for ((e, f), map) in self.pairs.iter().zip(&self.pairing) {
            for (i, &m) in map.iter().enumerate() {
                j += rho.expectation_vector(&kron_vec(e.vector(i), f.vector(m))?)?;
            }
        }
        Ok(CorrelationOutcome { j, bound: self.bound, violated: j > self.bound + tol::CRITERION })
    }
}

impl SeparabilityTest for CorrelationMeasure {
    fn evaluate(&self, rho: &DensityMatrix) -> Result<CriterionReport> {
        let out = self.measure(rho)?;
        let params = alloc::vec![("k", self.pairs.len() as f64), ("d", self.pairs[0].0.dim() as f64)];
        let margin = out.bound - out.j;
        Ok(CriterionReport {
            criterion_id: "correlation".into(),
            params,
            observed: out.j,
            bound: out.bound,
            margin,
            violated: margin < -tol::CRITERION,
            side: None,
        })
    }
}

// ---------------------------------------------------------------------------
// One-shot wrappers

pub fn mu_criterion(
    m1: &ConvolutionPovm,
    m2: &ConvolutionPovm,
    rho: &DensityMatrix,
    alpha: EntropyOrder,
    beta: EntropyOrder,
    kind: EntropyKind,
) -> Result<CriterionReport> {
    MuCriterion::new(m1.clone(), m2.clone(), alpha, beta, kind)?.evaluate(rho)
}

pub fn maj_criterion(m1: &ConvolutionPovm, m2: &ConvolutionPovm, rho: &DensityMatrix, alpha: EntropyOrder, kind: EntropyKind) -> Result<CriterionReport> {
    MajCriterion::new(m1.clone(), m2.clone(), alpha, kind)?.evaluate(rho)
}

pub fn maj_criterion_qubit(
    m1: &ConvolutionPovm,
    m2: &ConvolutionPovm,
    rho: &DensityMatrix,
    alpha: EntropyOrder,
    variant: QubitVariant,
) -> Result<CriterionReport> {
    MajCriterion::qubit(m1.clone(), m2.clone(), alpha, variant)?.evaluate(rho)
}

pub fn mub_criterion(ms: &[ConvolutionPovm], rho: &DensityMatrix, alpha: EntropyOrder, kind: EntropyKind) -> Result<CriterionReport> {
    MubCriterion::new(ms.to_vec(), alpha, kind)?.evaluate(rho)
}

pub fn mum_criterion(a: &MumSet, b: &MumSet, rho: &DensityMatrix, alpha: EntropyOrder) -> Result<CriterionReport> {
    MumCriterion::new(a, b, alpha)?.evaluate(rho)
}

pub fn sic_criterion(m: &ConvolutionPovm, rho: &DensityMatrix, alpha: EntropyOrder) -> Result<CriterionReport> {
    SicCriterion::new(m.clone(), alpha)?.evaluate(rho)
}

pub fn gsic_criterion(a: &GeneralSic, b: &GeneralSic, rho: &DensityMatrix, alpha: EntropyOrder) -> Result<CriterionReport> {
    GsicCriterion::new(a, b, alpha)?.evaluate(rho)
}

pub fn correlation_measure(pairs: &[(RankOnePovm, RankOnePovm)], rho: &DensityMatrix) -> Result<CorrelationOutcome> {
    CorrelationMeasure::new(pairs.to_vec())?.measure(rho)
}

/// Joint measurements `(B_t, B_t)` for each basis `B_t`, the same bases on
/// both sides.
pub fn diagonal_pairs(bases: &[RankOnePovm]) -> Result<Vec<ConvolutionPovm>> {
    bases.iter().map(|b| ConvolutionPovm::new(b.clone(), b.clone())).collect()
}
