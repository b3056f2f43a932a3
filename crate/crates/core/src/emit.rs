//! JSON documents for the `emit` subcommand.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::coeffs::{BigRational, ParamScalar, Params, Poly};
use crate::error::{Error, Result};
use crate::pairing;
use crate::polyrep::{relations, to_json, PolyRep};
use crate::ratdiff::{self, LambdaPoly, RatDiff};
use crate::roots::RootSystem;
use crate::trigdunkl::KappaParams;

type Dense = BTreeMap<Vec<i64>, BigRational>;

fn dense(n: usize, f: &LambdaPoly) -> Dense {
    f.terms().map(|(m, c)| (m.to_vec(n), c.clone())).filter(|(_, c)| !c.is_zero()).collect()
}

/// Incremental row echelon form remembering each row as a combination of the inputs.
struct Echelon {
    inputs: usize,
    rows: Vec<(Vec<i64>, Dense, Vec<BigRational>)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { inputs: 0, rows: Vec::new() }
    }

    fn reduce(&self, mut v: Dense, mut comb: Vec<BigRational>) -> (Dense, Vec<BigRational>) {
        comb.resize(self.inputs.max(comb.len()), BigRational::zero());
        for (p, row, rc) in &self.rows {
            let Some(c) = v.get(p).cloned() else { continue };
            let c = c / &row[p];
            for (k, x) in row {
                let e = v.entry(k.clone()).or_insert_with(BigRational::zero);
                *e -= &c * x;
                if e.is_zero() {
                    v.remove(k);
                }
            }
            for (i, x) in rc.iter().enumerate() {
                comb[i] -= &c * x;
            }
        }
        (v, comb)
    }

    /// Adds `v` if it is independent of the rows so far.
    fn push(&mut self, v: Dense) -> bool {
        let mut comb = vec![BigRational::zero(); self.inputs + 1];
        comb[self.inputs] = BigRational::from_integer(1.into());
        let (r, comb) = self.reduce(v, comb);
        let Some(p) = r.keys().next().cloned() else { return false };
        self.inputs += 1;
        for row in &mut self.rows {
            row.2.push(BigRational::zero());
        }
        self.rows.push((p, r, comb));
        true
    }

    /// Coordinates of `v` in the accepted inputs, `None` outside their span.
    fn coordinates(&self, v: Dense) -> Option<Vec<BigRational>> {
        let (r, comb) = self.reduce(v, vec![BigRational::zero(); self.inputs]);
        if !r.is_empty() {
            return None;
        }
        Some(comb.into_iter().map(|c| -c).collect())
    }
}

fn lambda_json(n: usize, f: &LambdaPoly) -> Value {
    let terms: Vec<Value> = dense(n, f)
        .into_iter()
        .rev()
        .map(|(e, c)| json!({"exps": e, "coeff": c.to_string()}))
        .collect();
    json!(terms)
}

fn check_special(rs: &RootSystem, r: usize) -> Result<()> {
    if r == 0 || !rs.special_nodes().contains(&r) {
        return Err(Error::Config(format!("{r} is not a nonzero special node of {}", rs.label())));
    }
    Ok(())
}

fn check_degree(degree: i64) -> Result<()> {
    if !(0..=6).contains(&degree) {
        return Err(Error::Config(format!("degree {degree} outside 0..=6")));
    }
    Ok(())
}

/// `E_c` with its `Y`-spectrum `(Y_{b_i})`, symbolic in `q` and `t`.
pub fn nsmac(rs: &RootSystem, weight: &[i64]) -> Result<Value> {
    if weight.len() != rs.rank {
        return Err(Error::Config(format!("weight {weight:?} must have {} coordinates", rs.rank)));
    }
    if weight.iter().any(|x| x.abs() > 4) {
        return Err(Error::Config(format!("weight {weight:?} exceeds the supported box 4")));
    }
    let rep = PolyRep::new(rs, Params::<ParamScalar>::symbolic(rs.two_m())?)?;
    let (e, spec) = rep.nonsymmetric(weight)?;
    let spectrum: Vec<Value> = spec
        .iter()
        .enumerate()
        .map(|(i, c)| json!({"b": i + 1, "eigenvalue": c.to_string()}))
        .collect();
    Ok(json!({
        "artifact": "nsmac",
        "type": rs.label(),
        "weight": weight,
        "polynomial": to_json(rs, &e),
        "spectrum": spectrum,
    }))
}

/// Matrix of `L_r` on orbit sums `m_l` of dominant `l` with `sum(l) <= degree`.
pub fn macdonald_op(rs: &RootSystem, r: usize, degree: i64) -> Result<Value> {
    check_special(rs, r)?;
    check_degree(degree)?;
    let rep = PolyRep::new(rs, Params::<ParamScalar>::symbolic(rs.two_m())?)?;
    let basis = relations::symmetric_basis::<ParamScalar>(rs, degree);
    let mut columns = Vec::new();
    let mut rows: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
    for (_, m) in &basis {
        let img = rep.macdonald_l(r, m)?;
        let col: BTreeMap<Vec<i64>, ParamScalar> = img
            .terms()
            .map(|(mono, c)| (mono.to_vec(rs.rank), c.clone()))
            .filter(|(e, _)| rs.is_dominant(e))
            .collect();
        for e in col.keys() {
            rows.insert(e.clone(), ());
        }
        columns.push(col);
    }
    let rows: Vec<Vec<i64>> = rows.into_keys().rev().collect();
    let matrix: Vec<Vec<String>> = rows
        .iter()
        .map(|e| columns.iter().map(|c| c.get(e).cloned().unwrap_or_else(ParamScalar::zero).to_string()).collect())
        .collect();
    Ok(json!({
        "artifact": "macdonald-op",
        "type": rs.label(),
        "r": r,
        "degree": degree,
        "columns": basis.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>(),
        "rows": rows,
        "matrix": matrix,
    }))
}

/// Truncated `mu_0` coefficients.
pub fn mu0(rs: &RootSystem, order: i64, height: i64) -> Result<Value> {
    if order < 1 || height < 0 {
        return Err(Error::Config(format!("need qorder >= 1 and height >= 0, got {order} and {height}")));
    }
    let mu = pairing::mu0_series(rs, order, height)?;
    let mut doc = mu.to_json();
    if let Value::Object(m) = &mut doc {
        m.insert("artifact".into(), json!("mu0"));
        m.insert("type".into(), json!(rs.label()));
    }
    Ok(doc)
}

/// Matrix of `Lambda_r` in a basis of W-invariant polynomials in the `lambda_{b_i}`.
pub fn lambda_op(rs: &RootSystem, r: usize, degree: i64, k: &BigRational) -> Result<Value> {
    check_special(rs, r)?;
    check_degree(degree)?;
    let rd = RatDiff::new(rs, KappaParams::uniform(k.clone()));
    let n = rs.rank;
    let mut ech = Echelon::new();
    let mut basis = Vec::new();
    for f in ratdiff::symmetric_basis(&rd, degree)? {
        if ech.push(dense(n, &f)) {
            basis.push(f);
        }
    }
    let mut matrix = vec![Vec::new(); basis.len()];
    for f in &basis {
        let img = rd.lambda_r(r, f)?;
        let coords = ech
            .coordinates(dense(n, &img))
            .ok_or_else(|| Error::Internal("Lambda_r left the invariant space".into()))?;
        for (i, c) in coords.into_iter().enumerate() {
            matrix[i].push(c.to_string());
        }
    }
    let one = rd.lambda_r(r, &Poly::constant(BigRational::from_integer(1.into())))?;
    Ok(json!({
        "artifact": "lambda-op",
        "type": rs.label(),
        "r": r,
        "degree": degree,
        "k": k.to_string(),
        "basis": basis.iter().map(|f| lambda_json(n, f)).collect::<Vec<_>>(),
        "matrix": matrix,
        "image_of_one": lambda_json(n, &one),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootType;

    #[test]
    fn echelon_coordinates() {
        let q = |a: i64| BigRational::from_integer(a.into());
        let v1: Dense = [(vec![1], q(1)), (vec![0], q(1))].into_iter().collect();
        let v2: Dense = [(vec![0], q(2))].into_iter().collect();
        let mut e = Echelon::new();
        assert!(e.push(v1.clone()));
        assert!(e.push(v2));
        assert!(!e.push(v1));
        let t: Dense = [(vec![1], q(3)), (vec![0], q(7))].into_iter().collect();
        assert_eq!(e.coordinates(t), Some(vec![q(3), q(2)]));
    }

    #[test]
    fn a2_lambda_op_on_one() {
        let rs = RootSystem::new(RootType::A, 2).unwrap();
        let doc = lambda_op(&rs, 1, 2, &BigRational::new(1.into(), 3.into())).unwrap();
        assert_eq!(doc["image_of_one"], json!([{"exps": [0, 0], "coeff": "3"}]));
    }
}
