//! Turning command-line choices into local measurements and criteria.

use std::f64::consts::PI;
use std::path::Path;

use entrosep_core::criteria::{
    ConvolutionPovm, CorrelationMeasure, EntropyKind, GsicCriterion, MajCriterion, MubCriterion, MuCriterion,
    MumCriterion, QubitVariant, SeparabilityTest, SicCriterion,
};
use entrosep_core::entropy::EntropyOrder;
use entrosep_core::measurements::{
    gsic_from_sic, mum_from_mubs, prime_pauli_mubs, rotated_qubit_basis, sic_povm, Measurement, RankOnePovm,
};

use crate::error::CliError;
use crate::formats::{read_setup, PairEntry, PovmFile, SetupFile};
use crate::report::Params;

/// Orders used when `--alpha grid` is given.
pub const DEFAULT_ALPHA_GRID: [f64; 8] = [1.0, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0, f64::INFINITY];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum CriterionId {
    MuRenyi,
    MuTsallis,
    MajRenyi,
    MajTsallis,
    MajQubitA,
    MajQubitB,
    MubRenyi,
    MubTsallis,
    MumTsallis,
    SicTsallis,
    GsicTsallis,
    Correlation,
    /// Every criterion that accepts the given parameters.
    All,
}

impl CriterionId {
    pub const EVERY: [CriterionId; 12] = [
        Self::MuRenyi,
        Self::MuTsallis,
        Self::MajRenyi,
        Self::MajTsallis,
        Self::MajQubitA,
        Self::MajQubitB,
        Self::MubRenyi,
        Self::MubTsallis,
        Self::MumTsallis,
        Self::SicTsallis,
        Self::GsicTsallis,
        Self::Correlation,
    ];

    /// Expands `all` and removes duplicates, keeping a fixed order.
    pub fn expand(ids: &[CriterionId]) -> Vec<CriterionId> {
        let mut out: Vec<CriterionId> =
            if ids.contains(&Self::All) { Self::EVERY.to_vec() } else { ids.to_vec() };
        out.sort();
        out.dedup();
        out
    }
}

/// How the local bases are matched into joint measurements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Pairing {
    /// The same basis on both sides.
    Diagonal,
    /// The first two bases swapped on B: `(B0, B1), (B1, B0), (B2, B2), ...`.
    Cross,
}

/// Parses an order: a positive number or `inf`.
pub fn parse_order(s: &str) -> Result<EntropyOrder, CliError> {
    let t = s.trim().to_ascii_lowercase();
    if matches!(t.as_str(), "inf" | "infinity" | "∞") {
        return Ok(EntropyOrder::Infinity);
    }
    let a: f64 = t.parse().map_err(|_| CliError::usage(format!("cannot parse order {s:?}")))?;
    EntropyOrder::new(a).map_err(CliError::from)
}

/// Parses a comma-separated list of orders; `grid` expands to
/// [`DEFAULT_ALPHA_GRID`].
pub fn parse_orders(s: &str) -> Result<Vec<EntropyOrder>, CliError> {
    if s.trim().eq_ignore_ascii_case("grid") {
        return Ok(DEFAULT_ALPHA_GRID
            .iter()
            .map(|&a| if a.is_infinite() { EntropyOrder::Infinity } else { EntropyOrder::Finite(a) })
            .collect());
    }
    s.split(',').map(parse_order).collect()
}

/// Parses an angle in radians: `0.5`, `pi/6`, `2pi/3`, `pi`.
pub fn parse_angle(s: &str) -> Result<f64, CliError> {
    let t = s.trim().to_ascii_lowercase().replace(' ', "");
    let bad = || CliError::usage(format!("cannot parse angle {s:?}"));
    let Some(at) = t.find("pi") else {
        return t.parse().map_err(|_| bad());
    };
    let (coef, rest) = t.split_at(at);
    let rest = &rest[2..];
    let coef: f64 = match coef.trim_end_matches('*') {
        "" => 1.0,
        "-" => -1.0,
        c => c.parse().map_err(|_| bad())?,
    };
    let div: f64 = match rest.strip_prefix('/') {
        Some(d) => d.parse().map_err(|_| bad())?,
        None if rest.is_empty() => 1.0,
        None => return Err(bad()),
    };
    Ok(coef * PI / div)
}

/// Criterion parameters shared by `check`, `scan` and `validate`.
#[derive(Debug, Clone)]
pub struct CriterionOptions {
    pub beta: Option<EntropyOrder>,
    pub kappa_t: f64,
    pub gsic_t: f64,
}

impl Default for CriterionOptions {
    fn default() -> Self {
        Self { beta: None, kappa_t: 1.0, gsic_t: 1.0 }
    }
}

/// Local measurements on both subsystems.
#[derive(Debug, Clone)]
pub struct Setup {
    pub dim: usize,
    pub pairs: Vec<(Measurement, Measurement)>,
    pub pairings: Vec<Option<Vec<usize>>>,
    pub theta: Option<f64>,
}

impl Setup {
    /// `(Z, Z)` and `(R_θ, R_θ)` on two qubits.
    pub fn rotated(theta: f64) -> Self {
        let z = RankOnePovm::computational_basis(2);
        let r = rotated_qubit_basis(theta);
        Self {
            dim: 2,
            pairs: vec![(z.clone().into(), z.into()), (r.clone().into(), r.into())],
            pairings: vec![None, None],
            theta: Some(theta),
        }
    }

    /// The first `k` of the `d + 1` Weyl MUBs, matched by `pairing`.
    pub fn mubs(d: usize, k: Option<usize>, pairing: Pairing) -> Result<Self, CliError> {
        let bases = prime_pauli_mubs(d)?;
        let k = k.unwrap_or(d + 1);
        if k == 0 || k > bases.len() {
            return Err(CliError::usage(format!("--k must lie in 1..={} for d = {d}", bases.len())));
        }
        let partner = |t: usize| match (pairing, t) {
            (Pairing::Cross, 0) if k > 1 => 1,
            (Pairing::Cross, 1) => 0,
            _ => t,
        };
        let pairs = (0..k).map(|t| (bases[t].clone().into(), bases[partner(t)].clone().into())).collect();
        Ok(Self { dim: d, pairs, pairings: vec![None; k], theta: None })
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        Self::from_setup_file(&read_setup(path)?)
    }

    pub fn from_setup_file(file: &SetupFile) -> Result<Self, CliError> {
        if file.pairs.is_empty() {
            return Err(CliError::input("setup has no measurement pairs"));
        }
        let mut pairs = Vec::new();
        let mut pairings = Vec::new();
        for p in &file.pairs {
            pairs.push((p.a.to_measurement()?, p.b.to_measurement()?));
            pairings.push(p.pairing.clone());
        }
        let dim = pairs[0].0.dim();
        if let Some((a, b)) = pairs.iter().find(|(a, b)| a.dim() != dim || b.dim() != dim) {
            return Err(CliError::input(format!("setup mixes local dimensions {dim}, {} and {}", a.dim(), b.dim())));
        }
        Ok(Self { dim, pairs, pairings, theta: None })
    }

    pub fn to_setup_file(&self) -> SetupFile {
        SetupFile {
            pairs: self
                .pairs
                .iter()
                .zip(&self.pairings)
                .map(|((a, b), p)| PairEntry {
                    a: PovmFile::from_measurement(a),
                    b: PovmFile::from_measurement(b),
                    pairing: p.clone(),
                })
                .collect(),
        }
    }

    pub fn extra_params(&self) -> Params {
        let mut p = Params::default();
        if let Some(t) = self.theta {
            p.set("theta", t);
        }
        p
    }

    fn joint(&self, t: usize) -> Result<ConvolutionPovm, CliError> {
        let (a, b) = &self.pairs[t];
        Ok(ConvolutionPovm::new(a.clone(), b.clone())?)
    }

    fn joints(&self) -> Result<Vec<ConvolutionPovm>, CliError> {
        (0..self.pairs.len()).map(|t| self.joint(t)).collect()
    }

    fn first_two(&self, what: &str) -> Result<(ConvolutionPovm, ConvolutionPovm), CliError> {
        if self.pairs.len() < 2 {
            return Err(CliError::usage(format!("{what} needs two joint measurements, the setup has {}", self.pairs.len())));
        }
        Ok((self.joint(0)?, self.joint(1)?))
    }

    fn rank_one_sides(&self, what: &str) -> Result<(Vec<RankOnePovm>, Vec<RankOnePovm>), CliError> {
        let pick = |m: &Measurement| {
            m.as_rank_one().cloned().ok_or_else(|| CliError::usage(format!("{what} needs rank-one local bases")))
        };
        let a = self.pairs.iter().map(|(a, _)| pick(a)).collect::<Result<Vec<_>, _>>()?;
        let b = self.pairs.iter().map(|(_, b)| pick(b)).collect::<Result<Vec<_>, _>>()?;
        Ok((a, b))
    }
}

/// Builds one criterion. `alpha` is ignored by the correlation measure.
pub fn build_criterion(
    id: CriterionId,
    setup: &Setup,
    alpha: EntropyOrder,
    opts: &CriterionOptions,
) -> Result<Box<dyn SeparabilityTest + Send + Sync>, CliError> {
    let kind = |id| match id {
        CriterionId::MuRenyi | CriterionId::MajRenyi | CriterionId::MubRenyi => EntropyKind::Renyi,
        _ => EntropyKind::Tsallis,
    };
    Ok(match id {
        CriterionId::MuRenyi | CriterionId::MuTsallis => {
            let (m1, m2) = setup.first_two("the Maassen–Uffink criterion")?;
            let beta = match opts.beta {
                Some(b) => b,
                None => alpha.conjugate()?,
            };
            Box::new(MuCriterion::new(m1, m2, alpha, beta, kind(id))?)
        }
        CriterionId::MajRenyi | CriterionId::MajTsallis => {
            let (m1, m2) = setup.first_two("the majorization criterion")?;
            Box::new(MajCriterion::new(m1, m2, alpha, kind(id))?)
        }
        CriterionId::MajQubitA | CriterionId::MajQubitB => {
            let (m1, m2) = setup.first_two("the majorization criterion")?;
            let v = if id == CriterionId::MajQubitA { QubitVariant::A } else { QubitVariant::B };
            Box::new(MajCriterion::qubit(m1, m2, alpha, v)?)
        }
        CriterionId::MubRenyi | CriterionId::MubTsallis => Box::new(MubCriterion::new(setup.joints()?, alpha, kind(id))?),
        CriterionId::MumTsallis => {
            let (a, b) = setup.rank_one_sides("the MUM criterion")?;
            let sa = mum_from_mubs(&a, opts.kappa_t)?;
            let sb = mum_from_mubs(&b, opts.kappa_t)?;
            Box::new(MumCriterion::new(&sa, &sb, alpha)?)
        }
        CriterionId::SicTsallis => {
            let sic = sic_povm(setup.dim)?;
            Box::new(SicCriterion::new(ConvolutionPovm::new(sic.clone(), sic)?, alpha)?)
        }
        CriterionId::GsicTsallis => {
            let g = gsic_from_sic(&sic_povm(setup.dim)?, opts.gsic_t)?;
            Box::new(GsicCriterion::new(&g, &g, alpha)?)
        }
        CriterionId::Correlation => {
            let (a, b) = setup.rank_one_sides("the correlation measure")?;
            let pairing: Vec<Vec<usize>> = setup
                .pairings
                .iter()
                .map(|p| p.clone().unwrap_or_else(|| (0..setup.dim).collect()))
                .collect();
            Box::new(CorrelationMeasure::with_pairing(a.into_iter().zip(b).collect(), pairing)?)
        }
        CriterionId::All => return Err(CliError::usage("`all` must be expanded before building")),
    })
}
