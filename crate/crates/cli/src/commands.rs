//! Subcommand implementations. Each returns the process exit code.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use entrosep_core::entropy::EntropyOrder;
use entrosep_core::linalg::set_kron_cap;
use entrosep_core::majorization::profile_of;
use entrosep_core::measurements::{
    eta, gsic_from_sic, mum_from_mubs, prime_pauli_mubs, rotated_qubit_basis, sic_povm, validate_gsic, validate_mub_pair,
    validate_mum, validate_povm, validate_sic, GeneralPovm, Measurement, RankOnePovm, ValidationReport,
};
use entrosep_core::sampling::{haar_unitary, random_separable};
use entrosep_core::states::{qutrit_family, werner_qubit, StateFamily};
use entrosep_core::DensityMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cli::{CheckArgs, Cli, Command, ConstructArgs, ConstructKind, CriterionArgs, ProfileArgs, ReproduceArgs, ScanArgs, ValidateArgs};
use crate::error::{CliError, EXIT_ENTANGLED, EXIT_INPUT, EXIT_OK};
use crate::formats::{read_document, read_rank_one, read_state, Document, PovmFile, PovmSetFile, StateFile};
use crate::report::{format_number, write_reports, write_thresholds, Format, Number, ReportRow};
use crate::reproduce::{run_case, write_table, CASES};
use crate::scan::{curve, scan_threshold, ScanOptions};
use crate::setup::{
    build_criterion, parse_angle, parse_order, parse_orders, CriterionId, CriterionOptions, Setup,
};

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    if let Some(cap) = cli.max_dim {
        set_kron_cap(cap);
    }
    match &cli.command {
        Command::Check(a) => check(a, cli.format, out),
        Command::Scan(a) => scan(a, cli.format, out),
        Command::Profile(a) => profile(a, cli.format, out),
        Command::Construct(a) => construct(a, out),
        Command::Validate(a) => validate(a, cli.format, cli.seed, out),
        Command::Reproduce(a) => reproduce(a, cli.format, out),
    }
}

struct Selection {
    ids: Vec<CriterionId>,
    explicit: bool,
    alphas: Vec<EntropyOrder>,
    options: CriterionOptions,
}

fn selection(args: &CriterionArgs) -> Result<Selection, CliError> {
    let beta = args.beta.as_deref().map(parse_order).transpose()?;
    Ok(Selection {
        ids: CriterionId::expand(&args.criterion),
        explicit: !args.criterion.contains(&CriterionId::All),
        alphas: parse_orders(&args.alpha)?,
        options: CriterionOptions { beta, kappa_t: args.kappa_t, gsic_t: args.gsic_t },
    })
}

fn resolve_setup(args: &CriterionArgs, dims: (usize, usize)) -> Result<Setup, CliError> {
    if dims.0 != dims.1 {
        return Err(CliError::usage(format!("local dimensions must agree, got {}x{}", dims.0, dims.1)));
    }
    let setup = if let Some(path) = &args.setup {
        Setup::from_file(path)?
    } else if let Some(theta) = &args.theta {
        if dims.0 != 2 {
            return Err(CliError::usage("--theta applies to qubits only"));
        }
        Setup::rotated(parse_angle(theta)?)
    } else {
        Setup::mubs(dims.0, args.k, args.pairing)?
    };
    if setup.dim != dims.0 {
        return Err(CliError::input(format!("setup acts on dimension {}, state on {}", setup.dim, dims.0)));
    }
    Ok(setup)
}

/// Every (criterion, order) combination that builds. With `all`, criteria
/// that reject the parameters are skipped.
fn build_all(
    sel: &Selection,
    setup: &Setup,
) -> Result<Vec<Box<dyn entrosep_core::criteria::SeparabilityTest + Send + Sync>>, CliError> {
    let mut tests = Vec::new();
    for &id in &sel.ids {
        let alphas: &[EntropyOrder] = if id == CriterionId::Correlation { &sel.alphas[..1] } else { &sel.alphas };
        for &alpha in alphas {
            match build_criterion(id, setup, alpha, &sel.options) {
                Ok(t) => tests.push(t),
                Err(e) if !sel.explicit => eprintln!("skipping {id:?} at alpha = {alpha}: {e}"),
                Err(e) => return Err(e),
            }
        }
    }
    if tests.is_empty() {
        return Err(CliError::usage("no criterion accepts the given parameters"));
    }
    Ok(tests)
}

fn check(args: &CheckArgs, format: Format, out: &mut dyn Write) -> Result<u8, CliError> {
    let rho = read_state(&args.state)?;
    let dims = rho.subsystem_dims().unwrap_or((rho.dim(), 1));
    let setup = resolve_setup(&args.criteria, dims)?;
    let sel = selection(&args.criteria)?;
    let extra = setup.extra_params();
    let rows = build_all(&sel, &setup)?
        .iter()
        .map(|t| Ok(ReportRow::new(&t.evaluate(&rho)?, &extra)))
        .collect::<Result<Vec<_>, CliError>>()?;
    write_reports(out, &rows, format)?;
    Ok(if rows.iter().any(|r| r.violated) { EXIT_ENTANGLED } else { EXIT_OK })
}

fn scan(args: &ScanArgs, format: Format, out: &mut dyn Write) -> Result<u8, CliError> {
    let family = StateFamily::by_name(&args.family).ok_or_else(|| {
        let names: Vec<_> = StateFamily::all().iter().map(|f| f.name).collect();
        CliError::usage(format!("unknown family {:?}; known families: {}", args.family, names.join(", ")))
    })?;
    let setup = resolve_setup(&args.criteria, family.dims)?;
    let sel = selection(&args.criteria)?;
    let bracket = match args.bracket.as_deref() {
        None => None,
        Some(&[lo, hi]) => Some((lo, hi)),
        Some(_) => return Err(CliError::usage("--bracket takes exactly two values, lo,hi")),
    };
    let opts = ScanOptions { bracket };
    let tests = build_all(&sel, &setup)?;
    let extra = setup.extra_params();
    let mut results = Vec::new();
    for t in &tests {
        let mut r = scan_threshold(t.as_ref(), &family, &opts)?;
        for (k, v) in &extra.0 {
            r.params.set(k, *v);
        }
        results.push(r);
    }
    write_thresholds(out, &results, format)?;
    if let Some(path) = &args.emit_curve {
        write_curves(path, &tests, &family, args.curve_points)?;
    }
    Ok(EXIT_OK)
}

fn write_curves(
    path: &Path,
    tests: &[Box<dyn entrosep_core::criteria::SeparabilityTest + Send + Sync>],
    family: &StateFamily,
    points: usize,
) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path)?));
    w.write_record(["family", "criterion_id", "alpha", "c", "margin", "violated"])?;
    for t in tests {
        let head = t.evaluate(&family.at(0.0)?)?;
        let alpha = head.param("alpha").map(format_number).unwrap_or_default();
        for p in curve(t.as_ref(), family, points)? {
            w.write_record([
                family.name.to_string(),
                head.criterion_id.clone(),
                alpha.clone(),
                format!("{:.6}", p.c),
                format_number(p.margin),
                p.violated.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct ProfileOut {
    eta: Number,
    s: Vec<Number>,
    d_star: usize,
    degenerate: bool,
    w: Vec<Number>,
    w_prime: Vec<Number>,
}

fn numbers(v: &[f64]) -> Vec<Number> {
    v.iter().copied().map(Number).collect()
}

fn profile(args: &ProfileArgs, format: Format, out: &mut dyn Write) -> Result<u8, CliError> {
    let (f, g) = match (&args.first, &args.second, &args.theta) {
        (Some(a), Some(b), _) => (read_rank_one(a)?, read_rank_one(b)?),
        (_, _, Some(t)) => (RankOnePovm::computational_basis(2), rotated_qubit_basis(parse_angle(t)?)),
        _ => return Err(CliError::usage("give either --first and --second, or --theta")),
    };
    let p = profile_of(&f, &g)?;
    let body = ProfileOut {
        eta: Number(eta(&f, &g)?),
        s: numbers(p.s()),
        d_star: p.d_star(),
        degenerate: p.is_degenerate(),
        w: numbers(p.w()),
        w_prime: numbers(p.w_prime()),
    };
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &body)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["k", "s_k", "w_k", "w_prime_k"])?;
            let cell = |v: &[f64], k: usize| v.get(k).map(|x| format_number(*x)).unwrap_or_default();
            for k in 0..p.s().len() {
                w.write_record([(k + 1).to_string(), cell(p.s(), k), cell(p.w(), k), cell(p.w_prime(), k)])?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn povm_set(povms: impl IntoIterator<Item = PovmFile>) -> PovmSetFile {
    PovmSetFile { povms: povms.into_iter().collect() }
}

fn construct(args: &ConstructArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let d = args.dim;
    match args.kind {
        ConstructKind::Basis => emit_json(out, &PovmFile::rank_one(&RankOnePovm::computational_basis(d)))?,
        ConstructKind::Rotated => {
            let theta = args.theta.as_deref().ok_or_else(|| CliError::usage("rotated needs --theta"))?;
            emit_json(out, &PovmFile::rank_one(&rotated_qubit_basis(parse_angle(theta)?)))?
        }
        ConstructKind::Mubs => emit_json(out, &povm_set(prime_pauli_mubs(d)?.iter().map(PovmFile::rank_one)))?,
        ConstructKind::Sic => emit_json(out, &PovmFile::rank_one(&sic_povm(d)?))?,
        ConstructKind::Mum => {
            let bases = prime_pauli_mubs(d)?;
            let k = args.k.unwrap_or(bases.len()).clamp(1, bases.len());
            let set = mum_from_mubs(&bases[..k], args.kappa_t)?;
            emit_json(out, &povm_set(set.povms().iter().map(PovmFile::general)))?
        }
        ConstructKind::Gsic => emit_json(out, &PovmFile::general(gsic_from_sic(&sic_povm(d)?, args.gsic_t)?.povm()))?,
        ConstructKind::Setup => {
            let setup = match &args.theta {
                Some(t) => Setup::rotated(parse_angle(t)?),
                None => Setup::mubs(d, args.k, args.pairing)?,
            };
            emit_json(out, &setup.to_setup_file())?
        }
        ConstructKind::Werner => emit_json(out, &StateFile::from_density(&werner_qubit(args.c)?))?,
        ConstructKind::Qutrit => emit_json(out, &StateFile::from_density(&qutrit_family(args.c)?))?,
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct CheckRow {
    source: String,
    item: String,
    check: String,
    deviation: Number,
    tolerance: Number,
    passed: bool,
}

fn push_report(rows: &mut Vec<CheckRow>, source: &str, item: &str, report: &ValidationReport) {
    for c in &report.checks {
        rows.push(CheckRow {
            source: source.into(),
            item: item.into(),
            check: c.name.into(),
            deviation: Number(c.deviation),
            tolerance: Number(c.tolerance),
            passed: c.passed,
        });
    }
    for (name, v) in &report.measured {
        rows.push(CheckRow {
            source: source.into(),
            item: item.into(),
            check: format!("measured_{name}"),
            deviation: Number(*v),
            tolerance: Number(0.0),
            passed: true,
        });
    }
}

fn single(rows: &mut Vec<CheckRow>, source: &str, item: &str, check: &str, passed: bool, deviation: f64) {
    rows.push(CheckRow {
        source: source.into(),
        item: item.into(),
        check: check.into(),
        deviation: Number(deviation),
        tolerance: Number(0.0),
        passed,
    });
}

fn validate_state(rows: &mut Vec<CheckRow>, source: &str, file: &StateFile) {
    match file.to_density() {
        Ok(rho) => {
            single(rows, source, "state", "density_matrix", true, 0.0);
            let min_pt = rho
                .partial_transpose()
                .ok()
                .and_then(|pt| entrosep_core::linalg::hermitian_eigenvalues(&pt).ok())
                .map_or(f64::NAN, |e| e[0]);
            // A negative partial transpose is information, not a failure.
            single(rows, source, "state", "partial_transpose_min_eigenvalue", true, min_pt);
            single(rows, source, "state", "purity", true, rho.purity());
        }
        Err(e) => single(rows, source, "state", &e.message, false, f64::NAN),
    }
}

fn validate_measurements(rows: &mut Vec<CheckRow>, source: &str, povms: &[PovmFile]) {
    let mut parsed: Vec<Measurement> = Vec::new();
    for (i, p) in povms.iter().enumerate() {
        let item = format!("povm{i}");
        match p.to_measurement() {
            Ok(m) => {
                push_report(rows, source, &item, &validate_povm(&m));
                if let Some(r) = m.as_rank_one() {
                    if r.outcomes() == r.dim() * r.dim() && r.dim() > 1 {
                        push_report(rows, source, &item, &validate_sic(r));
                    }
                }
                if let Measurement::General(g) = &m {
                    if g.outcomes() == g.dim() * g.dim() && g.dim() > 1 {
                        push_report(rows, source, &item, &validate_gsic(g));
                    }
                }
                parsed.push(m);
            }
            Err(e) => single(rows, source, &item, &e.message, false, f64::NAN),
        }
    }
    if parsed.len() < 2 || parsed.len() != povms.len() {
        return;
    }
    let rank_one: Vec<&RankOnePovm> = parsed.iter().filter_map(|m| m.as_rank_one()).collect();
    if rank_one.len() == parsed.len() && rank_one.iter().all(|r| r.is_orthonormal_basis()) {
        for i in 0..rank_one.len() {
            for j in i + 1..rank_one.len() {
                push_report(rows, source, &format!("mub{i}-{j}"), &validate_mub_pair(rank_one[i], rank_one[j]));
            }
        }
    } else if parsed.iter().all(|m| m.outcomes() == m.dim()) {
        let general: Vec<GeneralPovm> = parsed
            .iter()
            .map(|m| match m {
                Measurement::General(g) => g.clone(),
                Measurement::RankOne(r) => GeneralPovm::from_rank_one(r),
            })
            .collect();
        push_report(rows, source, "mum", &validate_mum(&general));
    }
}

#[derive(Debug, Serialize)]
struct SweepRow {
    dim: usize,
    criterion_id: String,
    evaluations: usize,
    violations: usize,
    worst_margin: Number,
}

/// Every criterion over random local bases and separable states.
fn sweep(states: usize, seed: u64) -> Result<Vec<SweepRow>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<SweepRow> = Vec::new();
    for d in [2usize, 3] {
        let bases = prime_pauli_mubs(d)?;
        let u = haar_unitary(d, &mut rng);
        let rotated: Vec<RankOnePovm> = bases.iter().map(|b| b.transformed(&u)).collect::<Result<_, _>>()?;
        let mut rotated_b = rotated.clone();
        rotated_b.rotate_left(1);
        let setup = Setup {
            dim: d,
            pairs: rotated.iter().zip(&rotated_b).map(|(a, b)| (a.clone().into(), b.clone().into())).collect(),
            pairings: vec![None; d + 1],
            theta: None,
        };
        let opts = CriterionOptions { beta: None, kappa_t: 0.7, gsic_t: 0.8 };
        let mut tests = Vec::new();
        for id in CriterionId::EVERY {
            for a in [0.5, 1.0, 2.0] {
                if let Ok(t) = build_criterion(id, &setup, EntropyOrder::Finite(a), &opts) {
                    tests.push(t);
                }
                if id == CriterionId::Correlation {
                    break;
                }
            }
        }
        let start = rows.len();
        let rhos: Vec<DensityMatrix> =
            (0..states).map(|_| random_separable(d, d, 2 * d * d, &mut rng)).collect::<Result<_, _>>()?;
        for t in &tests {
            let mut row = SweepRow { dim: d, criterion_id: String::new(), evaluations: 0, violations: 0, worst_margin: Number(f64::INFINITY) };
            for rho in &rhos {
                let r = t.evaluate(rho)?;
                row.criterion_id = r.criterion_id.clone();
                if let Some(a) = r.param("alpha") {
                    row.criterion_id = format!("{}@{}", r.criterion_id, format_number(a));
                }
                row.evaluations += 1;
                row.violations += usize::from(r.violated);
                row.worst_margin = Number(row.worst_margin.0.min(r.margin));
            }
            rows.push(row);
        }
        rows[start..].sort_by(|a, b| a.criterion_id.cmp(&b.criterion_id));
    }
    Ok(rows)
}

fn validate(args: &ValidateArgs, format: Format, seed: u64, out: &mut dyn Write) -> Result<u8, CliError> {
    if args.files.is_empty() && args.random_separable.is_none() {
        return Err(CliError::usage("give files to validate or --random-separable N"));
    }
    let mut rows = Vec::new();
    for path in &args.files {
        let source = path.display().to_string();
        match read_document(path) {
            Ok(Document::State(s)) => validate_state(&mut rows, &source, &s),
            Ok(Document::Povm(p)) => validate_measurements(&mut rows, &source, &[p]),
            Ok(Document::PovmSet(s)) => validate_measurements(&mut rows, &source, &s.povms),
            Ok(Document::Setup(s)) => {
                let a: Vec<PovmFile> = s.pairs.iter().map(|p| p.a.clone()).collect();
                let b: Vec<PovmFile> = s.pairs.iter().map(|p| p.b.clone()).collect();
                validate_measurements(&mut rows, &format!("{source}:A"), &a);
                validate_measurements(&mut rows, &format!("{source}:B"), &b);
            }
            Err(e) => single(&mut rows, &source, "file", &e.message, false, f64::NAN),
        }
    }
    let sweep_rows = match args.random_separable {
        Some(n) => sweep(n, seed)?,
        None => Vec::new(),
    };
    let failed = rows.iter().any(|r| !r.passed) || sweep_rows.iter().any(|r| r.violations > 0);
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                checks: &'a [CheckRow],
                #[serde(skip_serializing_if = "<[SweepRow]>::is_empty")]
                random_separable: &'a [SweepRow],
                seed: u64,
            }
            emit_json(out, &Body { checks: &rows, random_separable: &sweep_rows, seed })?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["source", "item", "check", "value", "tolerance", "passed"])?;
            for r in &rows {
                w.write_record([
                    r.source.clone(),
                    r.item.clone(),
                    r.check.clone(),
                    format_number(r.deviation.0),
                    format_number(r.tolerance.0),
                    r.passed.to_string(),
                ])?;
            }
            for r in &sweep_rows {
                w.write_record([
                    format!("random-separable(seed={seed},d={})", r.dim),
                    r.criterion_id.clone(),
                    "violations".into(),
                    r.violations.to_string(),
                    format!("worst margin {}", format_number(r.worst_margin.0)),
                    (r.violations == 0).to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(if failed { EXIT_INPUT } else { EXIT_OK })
}

fn reproduce(args: &ReproduceArgs, format: Format, out: &mut dyn Write) -> Result<u8, CliError> {
    let cases: Vec<&str> = match &args.case {
        Some(c) => vec![c.as_str()],
        None => CASES.to_vec(),
    };
    let rows = cases.iter().map(|c| run_case(c)).collect::<Result<Vec<_>, _>>()?;
    write_table(out, &rows, format)?;
    Ok(if rows.iter().all(|r| r.pass) { EXIT_OK } else { EXIT_INPUT })
}
