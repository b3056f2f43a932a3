//! Check records shared by the verification suites and the CLI.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coeffs::{BigRational, ParamScalar, Params};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub params: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<Value>,
    pub seed: Option<u64>,
}

/// Mismatches found by an exact extensional check.
#[derive(Clone, Debug, Default)]
pub struct Failures {
    pub cases: usize,
    pub count: usize,
    pub first: Vec<String>,
}

impl Failures {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.count += 1;
            if self.first.len() < 3 {
                self.first.push(what());
            }
        }
    }

    pub fn merge(&mut self, o: Failures) {
        self.cases += o.cases;
        self.count += o.count;
        for s in o.first {
            if self.first.len() < 3 {
                self.first.push(s);
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.count == 0
    }
}

impl Check {
    /// Exact check: residual `0` unless some case failed.
    pub fn exact(name: impl Into<String>, params: Value, seed: Option<u64>, r: Result<Failures>) -> Check {
        let name = name.into();
        match r {
            Ok(f) => {
                let mut params = params;
                if let Value::Object(m) = &mut params {
                    m.insert("cases".into(), json!(f.cases));
                }
                let (status, residual) = if f.ok() {
                    (Status::Pass, json!("0"))
                } else {
                    (Status::Fail, json!({"failures": f.count, "examples": f.first}))
                };
                Check { name, params, status, residual: Some(residual), series: None, seed }
            }
            Err(e) => Check::error(name, params, seed, &e),
        }
    }

    /// Floating-point check against a threshold.
    pub fn numeric(name: impl Into<String>, params: Value, seed: Option<u64>, residual: f64, threshold: f64) -> Check {
        let mut params = params;
        if let Value::Object(m) = &mut params {
            m.insert("threshold".into(), json!(threshold));
        }
        let status = if residual.is_finite() && residual <= threshold { Status::Pass } else { Status::Fail };
        Check { name: name.into(), params, status, residual: Some(json!(residual)), series: None, seed }
    }

    pub fn error(name: impl Into<String>, params: Value, seed: Option<u64>, e: &crate::Error) -> Check {
        Check {
            name: name.into(),
            params,
            status: Status::Error,
            residual: Some(json!({"error": e.to_string()})),
            series: None,
            seed,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Where exact identities are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Mode {
    Symbolic,
    Generic { points: usize, seed: u64 },
}

impl Mode {
    /// Seeds of the generic points (a single `None` in symbolic mode).
    pub fn seeds(&self) -> Vec<Option<u64>> {
        match *self {
            Mode::Symbolic => vec![None],
            Mode::Generic { points, seed } => (0..points as u64).map(|i| Some(seed.wrapping_add(i))).collect(),
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Parameters at one evaluation point.
pub enum PointParams {
    Symbolic(Params<ParamScalar>),
    Rational(Params<BigRational>),
}

pub fn point_params(two_m: i64, seed: Option<u64>) -> Result<PointParams> {
    Ok(match seed {
        None => PointParams::Symbolic(Params::symbolic(two_m)?),
        Some(s) => PointParams::Rational(Params::generic(two_m, &mut rng(s))?),
    })
}
