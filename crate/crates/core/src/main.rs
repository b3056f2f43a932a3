use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use daha_lab::coeffs::BigRational;
use daha_lab::report::{Check, Mode};
use daha_lab::roots::{RootSystem, RootType};
use daha_lab::{emit, rank1, suites, Error};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "daha-lab", version, about = "Exact checks for the polynomial representation of the double affine Hecke algebra and its degenerations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and report every check.
    Verify(VerifyArgs),
    /// Rank-one transform residuals at given (k, lambda, s).
    Rank1(Rank1Args),
    /// Print a computed artifact as JSON.
    Emit(EmitArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ModeArg {
    Symbolic,
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Suite {
    All,
    Roots,
    DahaRelations,
    YOperators,
    Macdonald,
    #[value(alias = "pairing-unitarity")]
    Pairing,
    Dunkl,
    Ratdiff,
    Limits,
    Rank1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Artifact {
    Nsmac,
    MacdonaldOp,
    Mu0,
    LambdaOp,
}

#[derive(Args, Clone, Debug, Serialize)]
struct SystemArgs {
    /// Root system type (A..G).
    #[arg(long = "type", default_value = "A")]
    #[serde(rename = "type")]
    kind: String,
    #[arg(long, default_value_t = 1)]
    rank: usize,
}

#[derive(Args, Clone, Debug, Serialize)]
struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    system: SystemArgs,
    #[arg(long = "suite", value_enum, default_value = "all")]
    suites: Vec<Suite>,
    #[arg(long, value_enum, default_value = "generic")]
    mode: ModeArg,
    /// Number of generic evaluation points.
    #[arg(long, default_value_t = 3)]
    points: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Truncation order in q for the pairing suite.
    #[arg(long, default_value_t = 8)]
    qorder: i64,
    /// Order in h for the degeneration limits.
    #[arg(long, default_value_t = 3)]
    horder: i64,
    /// Coordinate box of the monomial basis.
    #[arg(long = "box", default_value_t = 3)]
    box_size: i64,
    /// Degree bound of symmetric and lambda-polynomial bases.
    #[arg(long, default_value_t = 2)]
    degree: i64,
    /// Random (f, g) pairs in the pairing suite.
    #[arg(long, default_value_t = 5)]
    pairs: usize,
    /// Rank-one tolerance for the rank1 suite.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Clone, Debug, Serialize)]
struct Rank1Args {
    #[arg(long = "k", value_delimiter = ',', default_values_t = vec![1.0])]
    k: Vec<f64>,
    /// Spectral parameters, e.g. `0.3` or `0.3+0.2i`.
    #[arg(long = "lambda", value_delimiter = ',', default_values = ["0.3"])]
    lambda: Vec<String>,
    #[arg(long = "s", value_delimiter = ',', default_values_t = vec![1.0])]
    s: Vec<f64>,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Clone, Debug, Serialize)]
struct EmitArgs {
    #[arg(value_enum)]
    artifact: Artifact,
    #[command(flatten)]
    #[serde(flatten)]
    system: SystemArgs,
    /// Weight of the nonsymmetric polynomial, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    weight: Vec<i64>,
    /// Special node of the operator.
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 2)]
    degree: i64,
    #[arg(long, default_value_t = 8)]
    qorder: i64,
    #[arg(long, default_value_t = 4)]
    height: i64,
    /// Rational multiplicity for lambda-op.
    #[arg(long = "k", default_value = "1")]
    k: String,
}

type Outcome = (Value, bool);

fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn parse_complex(s: &str) -> Result<Complex64, Error> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || config(format!("cannot parse {s:?} as a complex number"));
    if let Some(body) = t.strip_suffix('i') {
        let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').last().map(|(i, _)| i);
        let (re, im) = match split {
            Some(i) if !matches!(body.as_bytes()[i - 1], b'e' | b'E') => (&body[..i], &body[i..]),
            _ => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            x => x,
        };
        Ok(Complex64::new(f64::from_str(re).map_err(|_| bad())?, f64::from_str(im).map_err(|_| bad())?))
    } else {
        Ok(Complex64::new(f64::from_str(&t).map_err(|_| bad())?, 0.0))
    }
}

fn root_system(a: &SystemArgs) -> Result<RootSystem, Error> {
    RootSystem::new(RootType::parse(&a.kind)?, a.rank).map_err(|e| match e {
        Error::Config(_) => e,
        other => config(other.to_string()),
    })
}

fn check_tol(tol: f64) -> Result<(), Error> {
    if !(tol > 0.0 && tol <= 1e-2) {
        return Err(config(format!("tol = {tol} must lie in (0, 1e-2]")));
    }
    Ok(())
}

fn sorted(mut checks: Vec<Check>) -> Vec<Check> {
    checks.sort_by_cached_key(|c| (c.name.clone(), c.params.to_string(), c.seed));
    checks
}

fn verify(a: &VerifyArgs) -> Result<Outcome, Error> {
    let rs = root_system(&a.system)?;
    if a.points == 0 {
        return Err(config("--points must be at least 1"));
    }
    if a.qorder < 1 || a.horder < 1 || a.box_size < 0 || a.degree < 0 {
        return Err(config("--qorder and --horder must be >= 1, --box and --degree >= 0"));
    }
    check_tol(a.tol)?;
    let mode = match a.mode {
        ModeArg::Symbolic => Mode::Symbolic,
        ModeArg::Generic => Mode::Generic { points: a.points, seed: a.seed },
    };
    let mut selected = a.suites.clone();
    if selected.contains(&Suite::All) {
        selected = vec![
            Suite::Roots,
            Suite::DahaRelations,
            Suite::YOperators,
            Suite::Macdonald,
            Suite::Pairing,
            Suite::Dunkl,
            Suite::Ratdiff,
            Suite::Limits,
        ];
        if rs.kind == RootType::G {
            selected.retain(|s| !matches!(s, Suite::YOperators | Suite::Pairing));
        }
        if rs.label() == "A1" {
            selected.push(Suite::Rank1);
        }
    }
    selected.sort();
    selected.dedup();
    let is_g = rs.kind == RootType::G;
    let mut checks = Vec::new();
    for s in &selected {
        match s {
            Suite::All => {}
            Suite::Roots => checks.extend(suites::roots(&rs, a.seed)),
            Suite::DahaRelations => checks.extend(suites::daha_relations(&rs, mode, a.box_size, is_g)),
            Suite::YOperators => checks.extend(suites::y_operators(&rs, mode, a.box_size)),
            Suite::Macdonald => checks.extend(suites::macdonald(&rs, mode, a.degree, 1)),
            Suite::Pairing => checks.extend(suites::pairing_unitarity(&rs, a.qorder, a.seed, a.pairs)),
            Suite::Dunkl => checks.extend(suites::dunkl(&rs, mode, a.box_size, 2)),
            Suite::Ratdiff => {
                checks.extend(suites::ratdiff(&rs, mode, a.degree, 20));
                checks.extend(suites::sigma_unitarity(&rs, &[1, 2], a.degree));
            }
            Suite::Limits => {
                checks.extend(suites::differential_limit(&rs, mode, a.degree, a.horder));
                checks.extend(suites::difference_limit(&rs, mode, a.degree, a.horder as usize));
            }
            Suite::Rank1 => {
                if rs.label() != "A1" {
                    return Err(config("the rank1 suite needs --type A --rank 1"));
                }
                let grid = suites::Rank1Grid { tol: a.tol, seed: a.seed, ..Default::default() };
                checks.extend(suites::rank1(&grid));
            }
        }
    }
    let checks = sorted(checks);
    let ok = checks.iter().all(Check::passed);
    Ok((json!({"version": VERSION, "config": a, "checks": checks}), ok))
}

fn rank1_cmd(a: &Rank1Args) -> Result<Outcome, Error> {
    check_tol(a.tol)?;
    let lambdas = a.lambda.iter().map(|s| parse_complex(s)).collect::<Result<Vec<_>, _>>()?;
    if a.k.iter().any(|&k| !(0.0..=10.0).contains(&k)) || a.s.iter().any(|&s| !(s > 0.0 && s <= 20.0)) {
        return Err(config("need 0 <= k <= 10 and 0 < s <= 20"));
    }
    let tol = a.tol;
    let mut worst = [0.0f64; 3];
    let mut eigen = (0.0f64, 0.0f64, f64::INFINITY);
    let s_max = a.s.iter().copied().fold(1.0, f64::max);
    let mut errors = Vec::new();
    for &k in &a.k {
        for &l in &lambdas {
            match rank1::symmetric_eigen(l, k, 0.25, s_max, 0.005, tol.min(1e-11)) {
                Ok(e) if e.residual / e.threshold > eigen.0 / eigen.2 || eigen.2.is_infinite() => {
                    eigen = (e.residual, e.threshold, e.threshold)
                }
                Ok(_) => {}
                Err(e) => errors.push(json!({"k": k, "lambda": [l.re, l.im], "error": e.to_string()})),
            }
            for &s in &a.s {
                let rs = [
                    rank1::intertwiner_s1_residual(l, k, s, tol),
                    rank1::intertwiner_s0_residual(l, k, s, tol),
                    rank1::main_theorem_residual(l, k, s, tol),
                ];
                for (w, r) in worst.iter_mut().zip(rs) {
                    match r {
                        Ok(v) => *w = w.max(v),
                        Err(e) => errors.push(json!({"k": k, "lambda": [l.re, l.im], "s": s, "error": e.to_string()})),
                    }
                }
            }
        }
    }
    let tols = [50.0 * tol, 50.0 * tol, 100.0 * tol, eigen.1];
    let vals = [worst[0], worst[1], worst[2], eigen.0];
    let ok = errors.is_empty() && vals.iter().zip(tols).all(|(v, t)| v.is_finite() && *v <= t);
    let doc = json!({
        "version": VERSION,
        "params": {"k": a.k, "lambda": lambdas.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(), "s": a.s, "tol": tol},
        "residuals": {
            "intertwiner_s1": vals[0],
            "intertwiner_s0": vals[1],
            "main_theorem": vals[2],
            "symmetric_eigen": vals[3],
        },
        "tolerances": {
            "intertwiner_s1": tols[0],
            "intertwiner_s0": tols[1],
            "main_theorem": tols[2],
            "symmetric_eigen": tols[3],
        },
        "errors": errors,
        "status": if ok { "pass" } else { "fail" },
    });
    Ok((doc, ok))
}

fn emit_cmd(a: &EmitArgs) -> Result<Outcome, Error> {
    let rs = root_system(&a.system)?;
    let doc = match a.artifact {
        Artifact::Nsmac => {
            if a.weight.is_empty() {
                return Err(config("emit nsmac needs --weight"));
            }
            emit::nsmac(&rs, &a.weight)?
        }
        Artifact::MacdonaldOp => emit::macdonald_op(&rs, a.r, a.degree)?,
        Artifact::Mu0 => emit::mu0(&rs, a.qorder, a.height)?,
        Artifact::LambdaOp => {
            let k = BigRational::from_str(a.k.trim()).map_err(|_| config(format!("--k {:?} is not a rational", a.k)))?;
            emit::lambda_op(&rs, a.r, a.degree, &k)?
        }
    };
    Ok((json!({"version": VERSION, "config": a, "document": doc}), true))
}

fn text_report(doc: &Value) -> String {
    let mut out = String::new();
    if let Some(checks) = doc["checks"].as_array() {
        for c in checks {
            let status = c["status"].as_str().unwrap_or("?").to_uppercase();
            let point = match &c["seed"] {
                Value::Null => String::new(),
                s => format!(" seed={s}"),
            };
            out.push_str(&format!("{status:5} {}{point} residual={}\n", c["name"].as_str().unwrap_or(""), c["residual"]));
        }
        let failed = checks.iter().filter(|c| c["status"] != "pass").count();
        out.push_str(&format!("{} checks, {} not passing\n", checks.len(), failed));
    } else if let Some(r) = doc["residuals"].as_object() {
        for (name, v) in r {
            out.push_str(&format!("{name:16} {v}  (tolerance {})\n", doc["tolerances"][name]));
        }
        for e in doc["errors"].as_array().into_iter().flatten() {
            out.push_str(&format!("error: {e}\n"));
        }
        out.push_str(&format!("status: {}\n", doc["status"].as_str().unwrap_or("?")));
    } else {
        out.push_str(&serde_json::to_string_pretty(doc).unwrap_or_default());
        out.push('\n');
    }
    out
}

fn set_threads() -> Result<(), Error> {
    if let Ok(v) = std::env::var("DAHA_LAB_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| config(format!("DAHA_LAB_THREADS={v:?} is not a count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Internal(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match &cli.command {
        Command::Verify(a) => a.format,
        Command::Rank1(a) => a.format,
        Command::Emit(_) => Format::Json,
    };
    let result = set_threads().and_then(|_| match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Rank1(a) => rank1_cmd(a),
        Command::Emit(a) => emit_cmd(a),
    });
    match result {
        Ok((doc, ok)) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&doc).expect("serializable report")),
                Format::Text => print!("{}", text_report(&doc)),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = match e {
                Error::Config(_) => 2,
                _ => 1,
            };
            let kind = if code == 2 { "config" } else { "runtime" };
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({"version": VERSION, "error": {"kind": kind, "message": e.to_string()}}))
                        .expect("serializable error")
                ),
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(code)
        }
    }
}
