//! Acceptance run: one pass/fail line per criterion.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use daha_lab::report::{Check, Mode};
use daha_lab::roots::{RootSystem, RootType};
use daha_lab::suites;
use serde_json::Value;

const GENERIC: Mode = Mode::Generic { points: 3, seed: 7 };

fn system(kind: RootType, rank: usize) -> RootSystem {
    RootSystem::new(kind, rank).unwrap()
}

fn core_types() -> Vec<RootSystem> {
    vec![system(RootType::A, 1), system(RootType::A, 2), system(RootType::B, 2)]
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_checks(checks: &[Check], slowest: Duration, budget: Duration) -> Outcome {
    let bad: Vec<&Check> = checks.iter().filter(|c| !c.passed()).collect();
    for c in &bad {
        println!("    not passing: {} {} {}", c.name, c.params, serde_json::to_string(&c.residual).unwrap());
    }
    let on_time = slowest <= budget;
    Outcome {
        ok: bad.is_empty() && !checks.is_empty() && on_time,
        detail: format!(
            "{} checks, {} not passing, slowest unit {:.1}s of {}s",
            checks.len(),
            bad.len(),
            slowest.as_secs_f64(),
            budget.as_secs()
        ),
    }
}

/// Runs `f` once per root system and keeps the slowest wall time.
fn per_type<F>(types: &[RootSystem], budget_s: u64, f: F) -> Outcome
where
    F: Fn(&RootSystem) -> Vec<Check>,
{
    let mut all = Vec::new();
    let mut slowest = Duration::ZERO;
    for rs in types {
        let t = Instant::now();
        all.extend(f(rs));
        slowest = slowest.max(t.elapsed());
    }
    from_checks(&all, slowest, Duration::from_secs(budget_s))
}

fn residual_of(checks: &[Check], name: &str) -> String {
    checks
        .iter()
        .filter(|c| c.name == name)
        .map(|c| format!("{name}={}", c.residual.as_ref().map(Value::to_string).unwrap_or_default()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_daha-lab"));
    cmd.args(args);
    match threads {
        Some(n) => cmd.env("DAHA_LAB_THREADS", n),
        None => cmd.env_remove("DAHA_LAB_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn cli_contract() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut expect = |what: &str, cond: bool| {
        if !cond {
            println!("    not passing: {what}");
            ok = false;
        }
        notes.push(what.to_string());
    };
    let verify = ["verify", "--type", "A", "--rank", "1", "--suite", "daha-relations", "--mode", "generic", "--points", "3", "--seed", "7"];
    let a = run(&verify, Some("1"));
    let b = run(&verify, Some("4"));
    let c = run(&verify, None);
    expect("verify exits 0", a.status.code() == Some(0));
    expect("verify is byte-identical across thread counts", a.stdout == b.stdout && b.stdout == c.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap_or(Value::Null);
    let names: Vec<&str> = doc["checks"].as_array().map(|v| v.iter().filter_map(|c| c["name"].as_str()).collect()).unwrap_or_default();
    expect("report has version, config and sorted checks", doc["version"].is_string() && doc["config"].is_object() && !names.is_empty() && names.windows(2).all(|w| w[0] <= w[1]));
    expect("every check records its seed", doc["checks"].as_array().is_some_and(|v| v.iter().all(|c| c["seed"].is_u64())));

    let p = run(&["verify", "--type", "A", "--rank", "1", "--suite", "pairing", "--qorder", "8"], None);
    let pd: Value = serde_json::from_slice(&p.stdout).unwrap_or(Value::Null);
    let zero = pd["checks"].as_array().is_some_and(|v| v.iter().all(|c| c["status"] == "pass" && c["residual"] == "0"));
    expect("pairing residuals are all zero, exit 0", p.status.code() == Some(0) && zero);

    let r = run(&["rank1", "--k", "1", "--lambda", "0.3", "--s", "1.0", "--tol", "1e-8"], None);
    let rd: Value = serde_json::from_slice(&r.stdout).unwrap_or(Value::Null);
    let mt = rd["residuals"]["main_theorem"].as_f64().unwrap_or(f64::INFINITY);
    expect("rank1 main_theorem <= 1e-6, exit 0", r.status.code() == Some(0) && mt <= 1e-6);
    expect(
        "rank1 reports all four residuals",
        ["intertwiner_s1", "intertwiner_s0", "main_theorem", "symmetric_eigen"].iter().all(|k| rd["residuals"][k].is_f64() && rd["tolerances"][k].is_f64()),
    );

    let fail = run(&["rank1", "--k", "1", "--lambda", "0", "--s", "1.0"], None);
    expect("a resonant rank1 point exits 1", fail.status.code() == Some(1));

    for bad in [
        vec!["verify", "--points", "0"],
        vec!["verify", "--type", "Q"],
        vec!["verify", "--type", "B", "--rank", "1"],
        vec!["rank1", "--tol", "0.5"],
        vec!["emit", "nsmac", "--type", "A", "--rank", "2", "--weight", "1"],
        vec!["emit", "lambda-op", "--type", "A", "--rank", "2", "--degree", "-1"],
        vec!["verify", "--no-such-flag"],
    ] {
        let o = run(&bad, None);
        expect(&format!("{} exits 2", bad.join(" ")), o.status.code() == Some(2));
    }
    let e = run(&["verify", "--points", "0"], None);
    let ed: Value = serde_json::from_slice(&e.stdout).unwrap_or(Value::Null);
    expect("configuration errors are JSON objects", ed["error"]["kind"] == "config");

    let n1 = run(&["emit", "nsmac", "--type", "A", "--rank", "1", "--weight", "1"], None);
    let n2 = run(&["emit", "nsmac", "--type", "A", "--rank", "1", "--weight", "1"], Some("2"));
    let nd: Value = serde_json::from_slice(&n1.stdout).unwrap_or(Value::Null);
    let terms = &nd["document"]["polynomial"]["terms"];
    expect("emit nsmac gives E = X_1, byte-identical", n1.stdout == n2.stdout && terms.as_array().is_some_and(|t| t.len() == 1) && terms[0]["coeff"] == "1" && terms[0]["exps"] == serde_json::json!([1]));
    let mu = run(&["emit", "mu0", "--type", "A", "--rank", "1", "--qorder", "3", "--height", "4"], None);
    let md: Value = serde_json::from_slice(&mu.stdout).unwrap_or(Value::Null);
    let row0 = md["document"]["entries"].as_array().and_then(|v| v.iter().find(|e| e["exps"] == serde_json::json!([0])).cloned());
    expect("emit mu0 has constant row 1", row0.is_some_and(|r| r["series"] == serde_json::json!([{"pow": "0", "coeff": "1"}])));
    let lo = run(&["emit", "lambda-op", "--type", "A", "--rank", "2", "--r", "1", "--degree", "2"], None);
    let ld: Value = serde_json::from_slice(&lo.stdout).unwrap_or(Value::Null);
    expect("emit lambda-op sends 1 to 3", ld["document"]["image_of_one"] == serde_json::json!([{"exps": [0, 0], "coeff": "3"}]));
    Outcome { ok, detail: format!("{} assertions", notes.len()) }
}

#[test]
fn acceptance() {
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut report = |n: usize, what: &'static str, o: Outcome| {
        println!("criterion {n:2} {} {what}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        results.push((n, what, o));
    };

    let mut types = core_types();
    let relations = per_type(&types, 60, |rs| suites::daha_relations(rs, GENERIC, 3, false));
    let g2 = per_type(&[system(RootType::G, 2)], 60, |rs| suites::daha_relations(rs, GENERIC, 3, true));
    report(
        1,
        "DAHA relations on the box 3 basis, 3 generic points, A1 A2 B2 plus G2 braid (exact, 60s per type)",
        Outcome { ok: relations.ok && g2.ok, detail: format!("{}; G2 {}", relations.detail, g2.detail) },
    );
    report(2, "Y commutativity and Y_b Y_c = Y_(b+c) (exact, 30s per type)", per_type(&types, 30, |rs| suites::y_operators(rs, GENERIC, 3)));
    report(3, "Macdonald operators equal m_r(Y) on symmetric degree <= 2 (exact)", per_type(&types, 60, |rs| suites::macdonald(rs, GENERIC, 2, 1)));

    let pairing = per_type(&types, 300, |rs| {
        let order = if rs.kind == RootType::B { 5 } else { 8 };
        suites::pairing_unitarity(rs, order, 7, 5)
    });
    report(4, "pairing unitarity to q-order 8 (A1 A2) and 5 (B2), mu0 star symmetry and stability (exact, 300s)", pairing);

    types.push(system(RootType::G, 2));
    report(5, "Dunkl commutativity, relations and intertwiner moves at 3 generic kappa (exact, 60s)", per_type(&types, 60, |rs| suites::dunkl(rs, GENERIC, 3, 2)));
    let a_types = [system(RootType::A, 1), system(RootType::A, 2)];
    report(
        6,
        "differential and difference limits at h-order 3 on degree <= 2 (exact, 120s)",
        per_type(&a_types, 120, |rs| {
            let mut c = suites::differential_limit(rs, GENERIC, 2, 3);
            c.extend(suites::difference_limit(rs, GENERIC, 2, 3));
            c
        }),
    );
    report(
        7,
        "rational difference operators: S_j^2, braid, homomorphism on 20 pairs, relations, Delta and Lambda_r (exact, 60s)",
        per_type(&types, 60, |rs| {
            let mut c = suites::ratdiff(rs, GENERIC, 3, 20);
            c.extend(suites::sigma_unitarity(rs, &[1, 2], 2));
            c
        }),
    );

    let t = Instant::now();
    let sigma = suites::sigma_checks(11, 100);
    let d = t.elapsed();
    let mut o = from_checks(&sigma, d, Duration::from_secs(60));
    o.detail = format!("{}; {}; {}", o.detail, residual_of(&sigma, "rank1.sigma"), residual_of(&sigma, "rank1.sigma-symmetric"));
    report(8, "sigma against the Gamma recurrence at k = 1, 2 on 100 random lambda (relative 1e-12)", o);

    let t = Instant::now();
    let rank1 = suites::rank1(&suites::Rank1Grid::default());
    let d = t.elapsed();
    let (main, rest): (Vec<Check>, Vec<Check>) = rank1.into_iter().partition(|c| c.name.starts_with("rank1.main-theorem"));
    let mut o = from_checks(&main, d, Duration::from_secs(60));
    o.detail = format!("{}; {} {}", o.detail, residual_of(&main, "rank1.main-theorem"), residual_of(&main, "rank1.main-theorem.k0"));
    report(9, "rank-one main theorem on the 3x3x3 grid at tol 1e-8 (1e-6; k = 0 at 1e-10; 60s)", o);
    let rest: Vec<Check> = rest.into_iter().filter(|c| !c.name.starts_with("rank1.sigma")).collect();
    let mut o = from_checks(&rest, d, Duration::from_secs(60));
    o.detail = format!(
        "{}; {} {} {}",
        o.detail,
        residual_of(&rest, "rank1.intertwiner-s1"),
        residual_of(&rest, "rank1.symmetric-eigen"),
        residual_of(&rest, "rank1.closed-form-k1")
    );
    report(10, "rank-one intertwiners (50 tol), symmetric eigen ODE, k = 1 sinh closed form (1e-6)", o);

    let t = Instant::now();
    let mut o = cli_contract();
    o.detail = format!("{}, {:.1}s", o.detail, t.elapsed().as_secs_f64());
    report(11, "CLI determinism and exit codes end to end", o);

    let failed: Vec<usize> = results.iter().filter(|r| !r.2.ok).map(|r| r.0).collect();
    assert!(failed.is_empty(), "criteria not met: {failed:?}");
}
