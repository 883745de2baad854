mod manifest;

use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use planar2::curve::{self, CurveError, CurveFields, SingularReportJson};
use planar2::gf2::{FieldCtx, FieldElement, FieldError};
use planar2::planar::{
    classify_exponent, is_planar, search_planar_monomials, ExponentClass, FuncTable, PlanarError, SearchMode,
    SearchOptions,
};
use planar2::rds::{build_diffset, char_profile_check, verify_rds, RdsError, RdsJsonReport};
use planar2::z4code::{dual_lee_distribution, expected_dual_table, min_lee_distance_cf, parity_check_cf, CodeError};
use planar2::{RingCtx, RingError};

use manifest::RunManifest;

const EXIT_GUARD: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "planar2", version, about = "Planar monomials over binary fields, Z4 codes and curves")]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find all (t, c) with c·x^t planar on F_2^n.
    PlanarSearch {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Test only this many random shifts per candidate (necessary condition only).
        #[arg(long)]
        sampled: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lee weight distribution of the dual code of C_f.
    LeeTable {
        #[arg(long)]
        n: u32,
        /// Monomial "t,0x<c>" or a function table file.
        #[arg(long)]
        f: String,
        /// Exit with status 3 unless the distribution equals the planar closed form.
        #[arg(long)]
        check_table: bool,
    },
    /// Relative difference set and character-sum checks for f.
    RdsVerify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        f: String,
    },
    /// Minimum Lee distance of C_f.
    MinLee {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        f: String,
    },
    /// Singular points of the curves H_{t,a}.
    CurveReport {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        n: u32,
        /// Monomial coefficient; the report covers every a in A_n.
        #[arg(long, default_value = "0x1")]
        c: String,
        /// Analyze a single curve parameter instead of all of A_n.
        #[arg(long)]
        a: Option<String>,
        /// Degree M of the search field F_2^M.
        #[arg(long)]
        ext: Option<u32>,
    },
    /// The coefficient set B_n.
    Bset {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "0x1")]
        c: String,
        #[arg(long)]
        ext: Option<u32>,
    },
    /// Field and Galois ring parameters with a digest of the Teichmuller table.
    CtxDump {
        #[arg(long)]
        n: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::PlanarSearch { .. } => "planar-search",
            Command::LeeTable { .. } => "lee-table",
            Command::RdsVerify { .. } => "rds-verify",
            Command::MinLee { .. } => "min-lee",
            Command::CurveReport { .. } => "curve-report",
            Command::Bset { .. } => "bset",
            Command::CtxDump { .. } => "ctx-dump",
        }
    }

    fn n(&self) -> u32 {
        match *self {
            Command::PlanarSearch { n, .. }
            | Command::LeeTable { n, .. }
            | Command::RdsVerify { n, .. }
            | Command::MinLee { n, .. }
            | Command::CurveReport { n, .. }
            | Command::Bset { n, .. }
            | Command::CtxDump { n } => n,
        }
    }

    fn params(&self) -> serde_json::Value {
        match self {
            Command::PlanarSearch {
                n,
                t,
                format,
                sampled,
                seed,
            } => json!({"n": n, "t": t, "format": format, "sampled": sampled, "seed": seed}),
            Command::LeeTable { n, f, check_table } => json!({"n": n, "f": f, "check_table": check_table}),
            Command::RdsVerify { n, f } | Command::MinLee { n, f } => json!({"n": n, "f": f}),
            Command::CurveReport { t, n, c, a, ext } => json!({"t": t, "n": n, "c": c, "a": a, "ext": ext}),
            Command::Bset { t, n, c, ext } => json!({"t": t, "n": n, "c": c, "ext": ext}),
            Command::CtxDump { n } => json!({"n": n}),
        }
    }
}

/// A failed run: exit status and message.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn guard(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_GUARD,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        Failure::guard(e.to_string())
    }
}

impl From<PlanarError> for Failure {
    fn from(e: PlanarError) -> Self {
        Failure::guard(e.to_string())
    }
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Self {
        Failure::internal(e.to_string())
    }
}

impl From<RdsError> for Failure {
    fn from(e: RdsError) -> Self {
        match e {
            RdsError::TooLarge(_) => Failure::guard(e.to_string()),
            RdsError::Ring(_) | RdsError::NotJacobiNorm { .. } | RdsError::UnexpectedShape { .. } => {
                Failure::internal(e.to_string())
            }
        }
    }
}

impl From<CodeError> for Failure {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::Rds(inner) => inner.into(),
            CodeError::TooLarge { .. } | CodeError::NonzeroAtZero | CodeError::BadPosition { .. } => {
                Failure::guard(e.to_string())
            }
            _ => Failure::internal(e.to_string()),
        }
    }
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::Field(inner) => inner.into(),
            CurveError::Planar(inner) => inner.into(),
            CurveError::DivisionByZero | CurveError::NotExact | CurveError::NotHomogeneous => {
                Failure::internal(e.to_string())
            }
            _ => Failure::guard(e.to_string()),
        }
    }
}

/// Output text, plus a property-mismatch message when the run found one.
struct Report {
    output: String,
    mismatch: Option<String>,
}

impl Report {
    fn ok(output: String) -> Self {
        Report { output, mismatch: None }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn field(n: u32) -> Result<Arc<FieldCtx>, Failure> {
    Ok(Arc::new(FieldCtx::new(n)?))
}

fn parse_elem(k: &FieldCtx, s: &str) -> Result<FieldElement, Failure> {
    let raw: FieldElement = s.parse()?;
    Ok(k.elem(raw.bits())?)
}

/// `"t,0x<c>"` for a monomial, otherwise a path to a function table file.
fn parse_function(k: &Arc<FieldCtx>, f_arg: &str) -> Result<FuncTable, Failure> {
    if let Some((t, c)) = f_arg.split_once(',') {
        if let Ok(t) = t.trim().parse::<u64>() {
            let c = parse_elem(k, c)?;
            if c.is_zero() {
                return Err(PlanarError::ZeroCoefficient.into());
            }
            return Ok(FuncTable::monomial(k.clone(), t, c));
        }
    }
    let text = std::fs::read_to_string(Path::new(f_arg))
        .map_err(|e| Failure::guard(format!("cannot read function table {f_arg}: {e}")))?;
    let f = FuncTable::parse(&text)?;
    k.check_same(f.ctx())?;
    Ok(f)
}

fn ring_for(f: &FuncTable) -> Result<Arc<RingCtx>, Failure> {
    Ok(Arc::new(RingCtx::new(f.ctx().clone())?))
}

#[derive(Serialize)]
struct SearchRecord {
    t: u64,
    class: ExponentClass,
    cs: Vec<FieldElement>,
    c_log: Vec<u32>,
}

fn planar_search(n: u32, t: Option<u64>, format: Format, sampled: Option<usize>, seed: u64) -> Result<Report, Failure> {
    let k = field(n)?;
    let mode = match sampled {
        Some(epsilons) => SearchMode::Sampled { epsilons, seed },
        None => SearchMode::Exhaustive,
    };
    let result = search_planar_monomials(&k, &SearchOptions { mode, t })?;
    let mut records: Vec<SearchRecord> = result
        .hits
        .iter()
        .map(|h| SearchRecord {
            t: h.t,
            class: classify_exponent(n, h.t),
            cs: h.cs.clone(),
            c_log: h.c_log.clone(),
        })
        .collect();
    if let (Some(t), true) = (t, records.is_empty()) {
        records.push(SearchRecord {
            t,
            class: classify_exponent(n, t),
            cs: Vec::new(),
            c_log: Vec::new(),
        });
    }
    let output = match format {
        Format::Json => to_json(&json!({
            "n": n,
            "exhaustive": result.exhaustive,
            "results": records,
        })),
        Format::Csv => {
            let mut s = String::from("t,class,count,cs\n");
            for r in &records {
                let class = serde_json::to_value(r.class).expect("class serializes");
                let cs: Vec<String> = r.cs.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(s, "{},{},{},{}", r.t, class.as_str().unwrap_or(""), r.cs.len(), cs.join(";"));
            }
            s
        }
    };
    Ok(Report::ok(output))
}

fn lee_table(n: u32, f_arg: &str, check: bool) -> Result<Report, Failure> {
    let k = field(n)?;
    let f = parse_function(&k, f_arg)?;
    let ring = ring_for(&f)?;
    let dist = dual_lee_distribution(&parity_check_cf(&f, &ring)?)?;
    let mismatch = (check && dist != expected_dual_table(n))
        .then(|| format!("distribution of {} differs from the planar closed form", f.describe()));
    Ok(Report {
        output: dist.to_csv(),
        mismatch,
    })
}

fn rds_verify(n: u32, f_arg: &str) -> Result<Report, Failure> {
    let k = field(n)?;
    let f = parse_function(&k, f_arg)?;
    let ring = ring_for(&f)?;
    let d = build_diffset(&f, &ring)?;
    let rds = verify_rds(&d)?;
    let profile = char_profile_check(&d);
    let planar = is_planar(&f).planar;
    let agree = rds.is_rds == profile.ok && profile.ok == planar;
    let summary = RdsJsonReport::from_profile(&profile, n);
    let output = to_json(&json!({
        "n": n,
        "f": f.describe(),
        "planar_equiv": summary.planar_equiv,
        "is_rds": rds.is_rds,
        "planar": planar,
        "routes_agree": agree,
        "forbidden_hits": rds.forbidden_hits,
        "failing_a": summary.failing_a,
        "profile_histogram": summary.profile_histogram,
    }));
    let mismatch = (!agree).then(|| {
        format!(
            "difference set {} / character profile {} / planarity {} disagree",
            rds.is_rds, profile.ok, planar
        )
    });
    Ok(Report { output, mismatch })
}

fn min_lee(n: u32, f_arg: &str) -> Result<Report, Failure> {
    let k = field(n)?;
    let f = parse_function(&k, f_arg)?;
    let ring = ring_for(&f)?;
    let m = min_lee_distance_cf(&parity_check_cf(&f, &ring)?)?;
    let planar = is_planar(&f).planar;
    // For odd n ≥ 3 the distance is 6 exactly for planar f and 4 otherwise.
    let expected = (n >= 3 && n % 2 == 1).then_some(if planar { 6 } else { 4 });
    let output = to_json(&json!({
        "n": n,
        "f": f.describe(),
        "min_lee": m.distance,
        "planar": planar,
        "expected": expected,
        "witness": m.witness.map(|w| w.0),
    }));
    let mismatch = expected
        .filter(|&e| e != m.distance)
        .map(|e| format!("minimum Lee distance {} but expected {e}", m.distance));
    Ok(Report { output, mismatch })
}

fn curve_report(t: u64, n: u32, c: &str, a: Option<&str>, ext: Option<u32>) -> Result<Report, Failure> {
    let k = field(n)?;
    let c = parse_elem(&k, c)?;
    let fields = CurveFields::new(k.clone(), t, ext)?;
    let params: Vec<FieldElement> = match a {
        Some(a) => vec![parse_elem(&k, a)?],
        None => planar2::planar::a_set(&k, t, c)?,
    };
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for a in params {
        match curve::singular_points(&fields, a) {
            Ok(r) => reports.push(r),
            Err(CurveError::Degenerate) => skipped.push(a),
            Err(e) => return Err(e.into()),
        }
    }
    let failing: Vec<FieldElement> = reports.iter().filter(|r| !r.all_checks_ok()).map(|r| r.a).collect();
    let max_inf = reports.iter().map(|r| r.infinity.len()).max().unwrap_or(0);
    let max_off = reports.iter().map(|r| r.offdiag_count()).max().unwrap_or(0);
    let json_reports: Vec<SingularReportJson> = reports.iter().map(SingularReportJson::from).collect();
    let shape = curve::decompose_exponent(t)?;
    let output = to_json(&json!({
        "t": t,
        "k": shape.k,
        "l": shape.l,
        "c": c,
        "field": {"n": n, "M": fields.big.degree()},
        "reports": json_reports,
        "degenerate": skipped,
        "summary": {
            "curves": reports.len(),
            "max_infinity": max_inf,
            "max_offdiag": max_off,
            "bounds": {"infinity_max": shape.l, "affine_max": (shape.l - 1) * shape.l.saturating_sub(2) / 2},
            "search_complete": reports.iter().all(|r| r.search_complete()),
            "failing": failing,
        },
    }));
    let mismatch = (!failing.is_empty()).then(|| format!("checks failed for a in {failing:?}"));
    Ok(Report { output, mismatch })
}

fn bset(t: u64, n: u32, c: &str, ext: Option<u32>) -> Result<Report, Failure> {
    let k = field(n)?;
    let c = parse_elem(&k, c)?;
    let r = curve::b_set(&k, t, c, ext)?;
    Ok(Report::ok(to_json(&r)))
}

fn ctx_dump(n: u32) -> Result<Report, Failure> {
    let ring = RingCtx::new(field(n)?)?;
    Ok(Report::ok(to_json(&ring.dump())))
}

fn run(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::PlanarSearch {
            n,
            t,
            format,
            sampled,
            seed,
        } => planar_search(*n, *t, *format, *sampled, *seed),
        Command::LeeTable { n, f, check_table } => lee_table(*n, f, *check_table),
        Command::RdsVerify { n, f } => rds_verify(*n, f),
        Command::MinLee { n, f } => min_lee(*n, f),
        Command::CurveReport { t, n, c, a, ext } => curve_report(*t, *n, c, a.as_deref(), *ext),
        Command::Bset { t, n, c, ext } => bset(*t, *n, c, *ext),
        Command::CtxDump { n } => ctx_dump(*n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot configure {jobs} workers: {e}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    }
    let n = cli.command.n();
    let mut manifest = RunManifest::new(cli.command.name(), cli.command.params(), Some(n));
    let started = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| run(&cli.command)))
        .unwrap_or_else(|_| Err(Failure::internal("internal assertion failed")));
    let elapsed = started.elapsed();
    match outcome {
        Ok(report) => {
            let (status, code) = match report.mismatch {
                None => ("ok", 0),
                Some(_) => ("mismatch", EXIT_MISMATCH),
            };
            manifest.finish(elapsed, &report.output, status, code as i32);
            manifest.emit();
            print!("{}", report.output);
            if let Some(m) = report.mismatch {
                eprintln!("mismatch: {m}");
            }
            ExitCode::from(code)
        }
        Err(f) => {
            let status = if f.code == EXIT_GUARD { "guard" } else { "internal" };
            manifest.finish(elapsed, "", status, f.code as i32);
            manifest.emit();
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
