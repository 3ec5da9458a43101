//! `tduality`: batch front end. Every command reads JSON (inline, from a file
//! or `-` for stdin) and writes one JSON report to stdout, and to a report
//! file when `--out` or `TDUALITY_OUT_DIR` is given.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand};
use serde_json::{json, Value};

use tduality_core::acceptance;
use tduality_core::complexes::{rhom, TwoTerm};
use tduality_core::fgab::{ext1, hom, invariant_factors, smith_normal_form, tensor, tor, FgAb, Int, IntMatrix};
use tduality_core::groupcohomology::{
    kcomplex_cohomology, units_mod, verify_23_on, verify_weight_on, CochainModel, CohomologyGroup,
};
use tduality_core::json::{IntRepr, SCHEMA_VERSION};
use tduality_core::lca::{dual, FtLca};
use tduality_core::picard::{dual_pic, is_dualizable, ExtBackend, PicClass};
use tduality_core::simplicial::{ring_of, CohRing, SimplicialComplex};
use tduality_core::tduality::{exists_tdual, ChernClass, Classifier, HClass};
use tduality_core::Error;

#[derive(Parser, Debug)]
#[command(name = "tduality", version, about = "Exact Pontrjagin duality, group cohomology and T-duality data")]
struct Cli {
    /// Seed for the randomized sweeps of `check-all`.
    #[arg(long, global = true, default_value_t = acceptance::DEFAULT_SEED)]
    seed: u64,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory for report files named after the command.
    #[arg(long, global = true, env = "TDUALITY_OUT_DIR")]
    out_dir: Option<PathBuf>,
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    /// Log progress to stderr; repeat for more detail.
    #[arg(short, long, global = true, action = ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smith normal form of an integer matrix given as a list of rows.
    Snf { matrix: String },
    /// Hom, tensor, Ext¹ and Tor of two groups `{free_rank, factors}`;
    /// with `--complexes`, RHom of two two-term complexes instead.
    Ext {
        first: String,
        second: String,
        #[arg(long)]
        complexes: bool,
    },
    /// Pontrjagin dual of `{z, t, r, finite}`.
    LcaDual { group: String },
    /// Cohomology of Z/p and (Z/p)² with weights.
    GroupCohomologyTables {
        #[arg(long)]
        p: i64,
        #[arg(long, default_value_t = 6)]
        max: usize,
    },
    /// Cohomology of the K-complex in degrees 1..=qmax.
    Kcomplex {
        #[arg(long, default_value_t = 8)]
        qmax: usize,
    },
    /// Dual of a Picard stack class over a base.
    PicardDual {
        #[arg(long)]
        base: String,
        class: String,
    },
    /// Classify T-duals of a pair (E, h).
    #[command(alias = "classify")]
    TdualityClassify {
        #[arg(long)]
        base: String,
        #[arg(long)]
        chern: String,
        /// Graded class of h; missing entries default to zero.
        #[arg(long)]
        h: Option<String>,
        /// Coefficient bound for walking the dual Chern classes.
        #[arg(long, default_value_t = 2)]
        radius: i64,
    },
    /// Exactness of the Q-group sequence for a base and Chern class.
    CheckExactness {
        #[arg(long)]
        base: String,
        #[arg(long)]
        chern: String,
    },
    /// Run the acceptance suite.
    CheckAll,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Snf { .. } => "snf",
            Command::Ext { .. } => "ext",
            Command::LcaDual { .. } => "lca-dual",
            Command::GroupCohomologyTables { .. } => "group-cohomology-tables",
            Command::Kcomplex { .. } => "kcomplex",
            Command::PicardDual { .. } => "picard-dual",
            Command::TdualityClassify { .. } => "tduality-classify",
            Command::CheckExactness { .. } => "check-exactness",
            Command::CheckAll => "check-all",
        }
    }
}

/// A report plus whether it records a failure.
struct Outcome {
    report: Value,
    ok: bool,
}

impl From<Value> for Outcome {
    fn from(report: Value) -> Self {
        Outcome { report, ok: true }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) | Error::Unsupported(_) | Error::UnsupportedDuality(_) => Failure::Invariant(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn input(msg: impl std::fmt::Display) -> Failure {
    Failure::Input(msg.to_string())
}

/// Inline JSON, `-` for stdin, or a path.
fn read_json(arg: &str) -> Result<Value, Failure> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(arg).map_err(|e| input(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| input(format!("{arg}: {e}")))
}

fn parse<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_value(read_json(arg)?).map_err(|e| input(format!("{what}: {e}")))
}

/// A built-in base (`point`, `torus`, `S2`, `RP2`, `CP2`, `T3`), a ring
/// document or a simplicial complex document.
fn load_base(arg: &str) -> Result<CohRing, Failure> {
    let builtin = match arg {
        "point" => Some(CohRing::point()),
        "torus" => Some(ring_of(&SimplicialComplex::torus7(), "torus")?),
        "S2" => Some(ring_of(&SimplicialComplex::sphere2(), "S2")?),
        "RP2" => Some(ring_of(&SimplicialComplex::rp2_6(), "RP2")?),
        "CP2" => Some(CohRing::cp2()),
        "T3" => Some(CohRing::torus(3)),
        _ => None,
    };
    if let Some(r) = builtin {
        return Ok(r);
    }
    let v = read_json(arg)?;
    if v.get("simplices").is_some() {
        let x = SimplicialComplex::from_json(&v)?;
        let name = Path::new(arg).file_stem().and_then(|s| s.to_str()).unwrap_or("complex");
        return Ok(ring_of(&x, name)?);
    }
    Ok(CohRing::from_json(&v)?)
}

fn ints(v: &[Int]) -> Vec<IntRepr> {
    v.iter().map(IntRepr::from).collect()
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data")
}

fn snf(matrix: &str) -> Result<Outcome, Failure> {
    let rows: Vec<Vec<IntRepr>> = parse(matrix, "matrix")?;
    let (nrows, cols) = (rows.len(), rows.first().map_or(0, Vec::len));
    if rows.iter().any(|r| r.len() != cols) {
        return Err(input("matrix rows have different lengths"));
    }
    let data = rows.into_iter().flatten().map(Int::try_from).collect::<Result<Vec<_>, _>>().map_err(input)?;
    let m = IntMatrix::from_big_rows(nrows, cols, data);
    let s = smith_normal_form(&m);
    let diag: Vec<Int> = (0..s.d.rows().min(s.d.cols())).map(|i| s.d[(i, i)].clone()).collect();
    // cokernel Zʳ / im m
    let mut orders = invariant_factors(&m);
    orders.extend(std::iter::repeat_n(Int::from(0), m.rows() - orders.len()));
    Ok(json!({
        "version": SCHEMA_VERSION,
        "rows": m.rows(),
        "cols": m.cols(),
        "rank": s.rank,
        "diagonal": ints(&diag),
        "cokernel": FgAb::from_cyclic_orders(&orders),
    })
    .into())
}

fn ext(first: &str, second: &str, complexes: bool) -> Result<Outcome, Failure> {
    if complexes {
        let k: TwoTerm = parse(first, "first complex")?;
        let l: TwoTerm = parse(second, "second complex")?;
        let mut r = to_value(&rhom(&k, &l));
        r["version"] = json!(SCHEMA_VERSION);
        return Ok(r.into());
    }
    let g: FgAb = parse(first, "first group")?;
    let h: FgAb = parse(second, "second group")?;
    Ok(json!({
        "version": SCHEMA_VERSION,
        "hom": hom(&g, &h),
        "tensor": tensor(&g, &h),
        "ext1": ext1(&g, &h),
        "tor": tor(&g, &h),
    })
    .into())
}

fn group_cohomology_tables(p: i64, max: usize) -> Result<Outcome, Failure> {
    if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
        return Err(input(format!("p = {p} is not a prime")));
    }
    // unit multipliers only fix a weight modulo p − 1, so every
    // consistent k ≤ i is listed
    let ms = units_mod(p);
    let table = |g: &FgAb, top: usize| -> Result<Vec<Value>, Failure> {
        (0..=top)
            .map(|i| {
                log::info!("H^{i}({g})");
                let h = CohomologyGroup::new(g, i, CochainModel::choose(g, i))?;
                if h.group().is_zero() {
                    return Ok(json!({"degree": i, "group": h.group(), "weights": [], "mixed_2_3": false}));
                }
                let mut ks = Vec::new();
                for k in 0..=i as u32 {
                    if verify_weight_on(&h, k, &ms)? {
                        ks.push(k);
                    }
                }
                let mixed = ks.is_empty() && verify_23_on(&h, &ms, 1)?;
                Ok(json!({"degree": i, "group": h.group(), "weights": ks, "mixed_2_3": mixed}))
            })
            .collect()
    };
    let zp = FgAb::cyclic(p);
    let square = FgAb::from_cyclic_orders(&[Int::from(p), Int::from(p)]);
    Ok(json!({
        "version": SCHEMA_VERSION,
        "p": p,
        "weight_modulus": p - 1,
        "cyclic": table(&zp, max)?,
        "square": table(&square, max.min(4))?,
    })
    .into())
}

fn kcomplex(qmax: usize) -> Result<Outcome, Failure> {
    let groups = kcomplex_cohomology(qmax)?;
    let rows: Vec<Value> = groups.iter().enumerate().map(|(i, g)| json!({"degree": i + 1, "group": g})).collect();
    Ok(json!({"version": SCHEMA_VERSION, "q_max": qmax, "cohomology": rows}).into())
}

fn picard_dual(base: &str, class: &str) -> Result<Outcome, Failure> {
    let backend = ExtBackend::over(load_base(base)?);
    let p = PicClass::from_json(&backend, &read_json(class)?)?;
    let certificate = is_dualizable(&backend, &p);
    let d = dual_pic(&backend, &p)?;
    Ok(json!({
        "version": SCHEMA_VERSION,
        "certificate": certificate,
        "dual": d.to_json(&backend),
    })
    .into())
}

fn chern(ring: &CohRing, arg: &str) -> Result<ChernClass, Failure> {
    Ok(ChernClass::from_json(ring, &read_json(arg)?)?)
}

fn q_group_summary(cl: &Classifier) -> Value {
    let q = cl.q();
    json!({
        "ker_beta": q.ker_beta(),
        "coker_alpha": q.coker_alpha(),
        "ker_beta_generators": q.ker_beta_generators().iter().map(|g| g.iter().map(|b| ints(b)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn classify(base: &str, chern_arg: &str, h: Option<&str>, radius: i64) -> Result<Outcome, Failure> {
    if radius < 0 {
        return Err(input("radius must be nonnegative"));
    }
    let ring = load_base(base)?;
    let c = chern(&ring, chern_arg)?;
    let cl = Classifier::new(&ring, &c)?;
    // defaults for omitted entries of h
    let mut doc = to_value(&HClass::graded(cl.q(), cl.q().h2n().zero()));
    if let Some(h) = h {
        match read_json(h)? {
            Value::Object(m) => {
                for (k, v) in m {
                    if k != "version" {
                        doc[k.as_str()] = v;
                    }
                }
            }
            _ => return Err(input("h must be a JSON object")),
        }
    }
    let h: HClass = serde_json::from_value(doc).map_err(|e| input(format!("h: {e}")))?;
    let dualizable = exists_tdual(cl.q(), &h)?;
    let mut report = json!({
        "version": SCHEMA_VERSION,
        "base": ring.name(),
        "n": c.n(),
        "dualizable": dualizable,
        "q_group": q_group_summary(&cl),
        "filtration": to_value(cl.filtration()),
        "duals": [],
        "gamma_order": Value::Null,
    });
    if dualizable {
        let e = cl.enumerate_duals(&h, radius)?;
        report["duals"] = to_value(&e.duals);
        report["gamma"] = to_value(&e.gamma);
        report["gamma_order"] = to_value(&e.gamma_order.as_ref().map(IntRepr::from));
    }
    Ok(report.into())
}

fn check_exactness(base: &str, chern_arg: &str) -> Result<Outcome, Failure> {
    let ring = load_base(base)?;
    let c = chern(&ring, chern_arg)?;
    let cl = Classifier::new(&ring, &c)?;
    let exact = cl.q().sequence_is_exact()?;
    let mut report = json!({"version": SCHEMA_VERSION, "base": ring.name(), "exact": exact});
    report["q_group"] = q_group_summary(&cl);
    Ok(Outcome { report, ok: exact })
}

fn check_all(seed: u64) -> Outcome {
    let results = acceptance::run_all(seed);
    for r in &results {
        eprintln!("{r}");
    }
    let ok = results.iter().all(|r| r.passed);
    Outcome { report: json!({"version": SCHEMA_VERSION, "seed": seed, "passed": ok, "criteria": results}), ok }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Snf { matrix } => snf(matrix),
        Command::Ext { first, second, complexes } => ext(first, second, *complexes),
        Command::LcaDual { group } => {
            let g: FtLca = parse(group, "group")?;
            Ok(to_value(&dual(&g)).into())
        }
        Command::GroupCohomologyTables { p, max } => group_cohomology_tables(*p, *max),
        Command::Kcomplex { qmax } => kcomplex(*qmax),
        Command::PicardDual { base, class } => picard_dual(base, class),
        Command::TdualityClassify { base, chern, h, radius } => classify(base, chern, h.as_deref(), *radius),
        Command::CheckExactness { base, chern } => check_exactness(base, chern),
        Command::CheckAll => Ok(check_all(cli.seed)),
    }
}

fn write_report(cli: &Cli, text: &str) -> std::io::Result<()> {
    let path = match (&cli.out, &cli.out_dir) {
        (Some(p), _) => p.clone(),
        (None, Some(dir)) => {
            std::fs::create_dir_all(dir)?;
            dir.join(format!("{}.json", cli.command.name()))
        }
        (None, None) => return Ok(()),
    };
    std::fs::write(path, format!("{text}\n"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).init();
    match dispatch(&cli) {
        Ok(out) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&out.report)
            } else {
                serde_json::to_string(&out.report)
            }
            .expect("plain data");
            println!("{text}");
            if let Err(e) = write_report(&cli, &text) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
