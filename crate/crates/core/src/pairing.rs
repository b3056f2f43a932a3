//! The constant-term measure `mu`, its normalization `mu0 = mu / <mu>`, and
//! the pairing `{f, g} = <f g^* mu0>`.
//!
//! `mu` is an infinite product, so it is expanded as a `q`-series (in units of
//! `u = q^(1/5040)`) to order `q^N`, keeping only coroot monomials whose height
//! can still come back below the cap `H`. The `t`-parameters stay symbolic.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::coeffs::{
    BigRational, Coeff, LengthClass, Mono, ParamScalar, Params, Poly, QSeries, Series, Star, SymPoly, Q,
    Q_ROOT_DENOM,
};
use crate::error::{Error, Result};
use crate::polyrep::{star_poly, LaurentPoly, PolyOp, PolyRep};
use crate::roots::RootSystem;

/// Heights in the coroot lattice, `ht(sum c_i a_i) = sum c_i`.
#[derive(Clone, Debug)]
pub struct Heights {
    /// `ht(b) = sum_j weight[j] b_j` for `b` in b-coordinates.
    weight: Vec<Q>,
    /// Rows of the inverse Cartan transpose, to test lattice membership.
    inv: Vec<Vec<Q>>,
}

impl Heights {
    pub fn new(rs: &RootSystem) -> Self {
        let n = rs.rank;
        let mut inv = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            // Column i of the inverse: the coroot coordinates of b = e_i.
            let coords = solve_coroot(rs, &e);
            for (k, c) in coords.into_iter().enumerate() {
                inv[k][i] = c;
            }
        }
        let weight = (0..n).map(|j| (0..n).fold(Q::zero(), |acc, i| acc + inv[i][j])).collect();
        Heights { weight, inv }
    }

    pub fn in_lattice(&self, b: &[i64]) -> bool {
        self.inv.iter().all(|row| row.iter().zip(b).fold(Q::zero(), |acc, (r, x)| acc + *r * *x).is_integer())
    }

    pub fn height(&self, b: &[i64]) -> Q {
        self.weight.iter().zip(b).fold(Q::zero(), |acc, (w, x)| acc + *w * *x)
    }
}

fn solve_coroot(rs: &RootSystem, b: &[i64]) -> Vec<Q> {
    // b_j = sum_i c_i cartan[j][i]; Gauss-Jordan on the transpose.
    let n = rs.rank;
    let ct = rs.cartan();
    let mut a: Vec<Vec<Q>> =
        (0..n).map(|j| (0..n).map(|i| Q::from_integer(ct[j][i])).chain([Q::from_integer(b[j])]).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("Cartan matrix is invertible");
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(row) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n]).collect()
}

/// `q_a = q^{2/nu}` as an integer power of `q`.
fn q_alpha(class: LengthClass) -> i64 {
    (Q::from_integer(2) / class.nu()).to_integer()
}

/// Truncated expansion of `mu` or `mu0`.
#[derive(Clone, Debug)]
pub struct MuSeries {
    pub order: i64,
    pub height: i64,
    pub normalized: bool,
    coeffs: BTreeMap<Vec<i64>, QSeries>,
    heights: Heights,
}

type Key = (Vec<i64>, i64);

struct Expander {
    order: i64,
    cap: Q,
    rate: Q,
}

impl Expander {
    fn keep(&self, ht: Q, d: i64) -> bool {
        d <= self.order && ht - self.rate * (self.order - d) <= self.cap
    }

    /// Multiply by `sum_k coeff(k) (X^step q^dstep)^k`, `coeff(k) = None` ending the sum.
    fn times<F: Fn(usize) -> Option<SymPoly>>(
        &self,
        acc: HashMap<Key, (Q, SymPoly)>,
        step: &[i64],
        step_ht: Q,
        dstep: i64,
        coeff: F,
    ) -> HashMap<Key, (Q, SymPoly)> {
        let mut out: HashMap<Key, (Q, SymPoly)> = HashMap::with_capacity(acc.len() * 2);
        for ((c, d), (ht, p)) in acc {
            let mut k = 0usize;
            loop {
                let Some(ck) = coeff(k) else { break };
                let kk = k as i64;
                let (nd, nht) = (d + kk * dstep, ht + step_ht * kk);
                if !self.keep(nht, nd) {
                    break;
                }
                let nc: Vec<i64> = c.iter().zip(step).map(|(x, s)| x + kk * s).collect();
                let term = p.clone() * ck;
                match out.entry((nc, nd)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let v = std::mem::take(&mut e.get_mut().1) + term;
                        if v.is_zero() {
                            e.remove();
                        } else {
                            e.get_mut().1 = v;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert((nht, term));
                    }
                }
                k += 1;
            }
        }
        out
    }
}

/// `mu` to `q`-order `order`, exact for every coroot monomial of height `<= height`.
pub fn mu_series(rs: &RootSystem, order: i64, height: i64, normalized: bool) -> Result<MuSeries> {
    if order < 1 {
        return Err(Error::Config("q-order must be at least 1".into()));
    }
    let heights = Heights::new(rs);
    let mut rate = Q::zero();
    for (_, r) in rs.positive_roots() {
        let h = heights.height(&r.coroot) / q_alpha(r.class);
        if h > rate {
            rate = h;
        }
    }
    let ex = Expander { order, cap: Q::from_integer(height), rate };
    let mut acc: HashMap<Key, (Q, SymPoly)> = HashMap::new();
    acc.insert((vec![0; rs.rank], 0), (Q::zero(), SymPoly::one()));
    let binom = |k: usize| match k {
        0 => Some(SymPoly::one()),
        1 => Some(-SymPoly::one()),
        _ => None,
    };
    // Factors carrying q first; the q-free series last, when the cap bites hardest.
    let mut factors: Vec<(Vec<i64>, Q, i64, Option<usize>)> = Vec::new();
    for (_, r) in rs.positive_roots() {
        let qa = q_alpha(r.class);
        let a = r.coroot.clone();
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        let ha = heights.height(&a);
        let tvar = 1 + r.class.index();
        for i in 0..=order / qa {
            // (1 - X_a q_a^i) / (1 - X_a t_a q_a^i)
            factors.push((a.clone(), ha, qa * i, None));
            factors.push((a.clone(), ha, qa * i, Some(tvar)));
            // (1 - X_a^{-1} q_a^{i+1}) / (1 - X_a^{-1} t_a q_a^{i+1})
            if qa * (i + 1) <= order {
                factors.push((neg.clone(), -ha, qa * (i + 1), None));
                factors.push((neg.clone(), -ha, qa * (i + 1), Some(tvar)));
            }
        }
    }
    factors.sort_by_key(|f| std::cmp::Reverse(f.2));
    for (step, ht, d, geom) in factors {
        acc = match geom {
            None => ex.times(acc, &step, ht, d, binom),
            Some(v) => ex.times(acc, &step, ht, d, |k| {
                Some(SymPoly::monomial(Mono::var(v, 2 * k as i32), BigRational::one()))
            }),
        };
    }
    let prec = (order + 1) * Q_ROOT_DENOM;
    let mut grouped: BTreeMap<Vec<i64>, Vec<(i64, ParamScalar)>> = BTreeMap::new();
    for ((c, d), (ht, p)) in acc {
        if ht <= Q::from_integer(height) {
            grouped.entry(c).or_default().push((d * Q_ROOT_DENOM, ParamScalar::from_poly(p)));
        }
    }
    let mut coeffs: BTreeMap<Vec<i64>, QSeries> =
        grouped.into_iter().map(|(c, t)| (c, Series::with_prec(t, Some(prec)))).collect();
    if normalized {
        let zero = vec![0; rs.rank];
        let ct = coeffs.get(&zero).cloned().unwrap_or_else(|| Series::big_o(prec));
        let inv = ct.invert()?;
        for v in coeffs.values_mut() {
            *v = (v.clone() * inv.clone()).truncate(prec);
        }
    }
    coeffs.retain(|_, v| v.terms().next().is_some());
    Ok(MuSeries { order, height, normalized, coeffs, heights })
}

/// `mu0 = mu / <mu>`.
pub fn mu0_series(rs: &RootSystem, order: i64, height: i64) -> Result<MuSeries> {
    mu_series(rs, order, height, true)
}

impl MuSeries {
    pub fn precision(&self) -> i64 {
        (self.order + 1) * Q_ROOT_DENOM
    }

    /// Coefficient of `X_c`.
    pub fn coeff(&self, c: &[i64]) -> Result<QSeries> {
        if !self.heights.in_lattice(c) {
            return Ok(Series::exact([]));
        }
        if self.heights.height(c) > Q::from_integer(self.height) {
            return Err(Error::CapTooSmall(format!(
                "coefficient of X^{c:?} has height {} above the cap {}",
                self.heights.height(c),
                self.height
            )));
        }
        Ok(self.coeffs.get(c).cloned().unwrap_or_else(|| Series::big_o(self.precision())))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<i64>, &QSeries)> {
        self.coeffs.iter()
    }

    pub fn heights(&self) -> &Heights {
        &self.heights
    }

    /// `{order_N, height_H, entries: [{exps, series: [{pow, coeff}]}]}`, powers in units of `q`.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(c, s)| {
                let series: Vec<Value> = s
                    .terms()
                    .map(|(k, v)| json!({"pow": Q::new(*k, Q_ROOT_DENOM).to_string(), "coeff": v.to_string()}))
                    .collect();
                json!({"exps": c, "series": series})
            })
            .collect();
        json!({"order_N": self.order, "height_H": self.height, "normalized": self.normalized, "entries": entries})
    }
}

/// `(u-exponent, q-free coefficient)` pieces of a polynomial's coefficients.
fn split_poly(f: &LaurentPoly<ParamScalar>) -> Result<Vec<(Vec<i64>, i64, ParamScalar)>> {
    let mut out = Vec::new();
    for (m, c) in f.terms() {
        for (e, s) in c.split_q()? {
            out.push((m.to_vec(m.support_len()), e, s));
        }
    }
    Ok(out)
}

/// Lowest `u`-exponent among the coefficients.
pub fn min_q_exponent(f: &LaurentPoly<ParamScalar>) -> Result<i64> {
    Ok(split_poly(f)?.iter().map(|t| t.1).min().unwrap_or(0))
}

/// Largest height of `-c` over the monomials `X_c` of `f`.
pub fn max_dual_height(h: &Heights, f: &LaurentPoly<ParamScalar>, n: usize) -> i64 {
    f.terms()
        .map(|(m, _)| {
            let c: Vec<i64> = m.to_vec(n).iter().map(|x| -x).collect();
            if h.in_lattice(&c) {
                h.height(&c).ceil().to_integer()
            } else {
                0
            }
        })
        .max()
        .unwrap_or(0)
        .max(0)
}

/// `<f mu0>` to precision `q^(order+1)`.
pub fn constant_term(mu: &MuSeries, f: &LaurentPoly<ParamScalar>, order: i64) -> Result<QSeries> {
    let n = mu.heights.weight.len();
    let target = (order + 1) * Q_ROOT_DENOM;
    let mut acc = Series::big_o(target);
    for (m, c) in f.terms() {
        let neg: Vec<i64> = m.to_vec(n).iter().map(|x| -x).collect();
        let coef = mu.coeff(&neg)?;
        for (e, s) in c.split_q()? {
            acc = acc + coef.shift(e).map_coeffs(|v| v.clone() * s.clone());
        }
    }
    match acc.prec() {
        Some(p) if p < target => Err(Error::CapTooSmall(format!(
            "pairing known to u^{p}, below the requested q^{order}; raise the q-order of mu0"
        ))),
        _ => Ok(acc.truncate(target)),
    }
}

/// `{f, g} = <f g^* mu0>` to `q`-order `order`.
pub fn pairing_mu(mu: &MuSeries, f: &LaurentPoly<ParamScalar>, g: &LaurentPoly<ParamScalar>, order: i64) -> Result<QSeries> {
    constant_term(mu, &(f.clone() * star_poly(g)), order)
}

/// `{op f, g} - {f, op^* g}`.
pub fn unitarity_residual(
    rep: &PolyRep<'_, ParamScalar>,
    mu: &MuSeries,
    op: &PolyOp<ParamScalar>,
    f: &LaurentPoly<ParamScalar>,
    g: &LaurentPoly<ParamScalar>,
    order: i64,
) -> Result<QSeries> {
    let lhs = pairing_mu(mu, &op.apply(rep, f)?, g, order)?;
    let rhs = pairing_mu(mu, f, &op.star()?.apply(rep, g)?, order)?;
    Ok(lhs - rhs)
}

/// Exact `mu` and `mu0` in the regime `t_a = q_a^k`, where the product terminates:
/// `mu = prod_{a>0} prod_{0<=i<k} (1 - X_a q_a^i)(1 - X_a^{-1} q_a^{i+1})`.
pub fn mu0_exact_regime(rs: &RootSystem, k: i64) -> Result<LaurentPoly<ParamScalar>> {
    if k < 0 {
        return Err(Error::Unsupported("the terminating regime needs k >= 0".into()));
    }
    let mut mu: LaurentPoly<ParamScalar> = Poly::one();
    for (_, r) in rs.positive_roots() {
        let qa = q_alpha(r.class);
        let a = Mono::from_i64(&r.coroot);
        for i in 0..k {
            let up = ParamScalar::q_pow(Q::from_integer(qa * i))?;
            let down = ParamScalar::q_pow(Q::from_integer(qa * (i + 1)))?;
            mu = mu * (Poly::one() - Poly::monomial(a.clone(), up));
            mu = mu * (Poly::one() - Poly::monomial(a.neg(), down));
        }
    }
    let ct = mu.constant_term();
    let inv = ct.try_inv()?;
    Ok(mu.scale(&inv))
}

/// Exact `{f, g}` against an exact `mu0`.
pub fn pairing_exact(mu0: &LaurentPoly<ParamScalar>, f: &LaurentPoly<ParamScalar>, g: &LaurentPoly<ParamScalar>) -> ParamScalar {
    (f.clone() * star_poly(g) * mu0.clone()).constant_term()
}

/// Parameters matching the terminating regime.
pub fn regime_params(rs: &RootSystem, k: i64) -> Result<Params<ParamScalar>> {
    Params::t_as_q_power(rs.two_m(), k)
}

/// Expansion of a `q`-only scalar as a series in `u` modulo `u^prec`.
pub fn scalar_to_u_series(s: &ParamScalar, prec: i64) -> Result<Series<BigRational>> {
    let to_series = |p: &SymPoly| -> Result<Series<BigRational>> {
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            if m.support_len() > 1 {
                return Err(Error::Unsupported("scalar still depends on t".into()));
            }
            terms.push((m.get(0) as i64, c.clone()));
        }
        Ok(Series::with_prec(terms, Some(prec)))
    };
    let num = to_series(s.numer())?;
    let den = to_series(s.denom())?;
    let out = num * den.invert()?;
    Ok(out.truncate(prec))
}

/// A truncated `t`-symbolic series at `t(nu)^(1/2) = q^(k/nu)`.
pub fn specialize_series(s: &QSeries, k: i64, prec: i64) -> Result<Series<BigRational>> {
    let mut acc = Series::big_o(s.prec().unwrap_or(prec).min(prec));
    for (e, c) in s.terms() {
        if !c.is_polynomial() {
            return Err(Error::Unsupported("non-polynomial t-coefficient".into()));
        }
        let mut terms = Vec::new();
        for (m, v) in c.numer().terms() {
            let mut ue = *e + m.get(0) as i64;
            for cls in LengthClass::ALL {
                let te = m.get(1 + cls.index()) as i64;
                let step = Q::from_integer(k * Q_ROOT_DENOM) / cls.nu();
                ue += (step * te).to_integer();
            }
            terms.push((ue, v.clone()));
        }
        acc = acc + Series::exact(terms);
    }
    Ok(acc)
}

/// The star-symmetry of an exact `mu0`: `X_c -> X_{-c}` with conjugated coefficients.
pub fn is_star_symmetric<C: Star>(mu0: &LaurentPoly<C>) -> bool {
    star_poly(mu0) == *mu0
}

/// `H`-stability: every coefficient of height `<= H` agrees with the expansion at `H + 1`.
pub fn stability_failures(rs: &RootSystem, order: i64, height: i64) -> Result<crate::report::Failures> {
    let a = mu0_series(rs, order, height)?;
    let b = mu0_series(rs, order, height + 1)?;
    let mut out = crate::report::Failures::new();
    for (c, s) in b.entries() {
        if b.heights.height(c) <= Q::from_integer(height) {
            let ok = a.coeff(c)? == *s;
            out.record(ok, || format!("coefficient of X^{c:?} moved"));
        }
    }
    for (c, s) in a.entries() {
        out.record(b.coeff(c)? == *s, || format!("coefficient of X^{c:?} moved"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrep::x;
    use crate::roots::RootType;

    fn a1() -> RootSystem {
        RootSystem::new(RootType::A, 1).unwrap()
    }

    #[test]
    fn mu0_is_normalized() {
        let rs = a1();
        let mu = mu0_series(&rs, 3, 4).unwrap();
        let c0 = mu.coeff(&[0]).unwrap();
        assert_eq!(c0, Series::with_prec([(0, ParamScalar::one())], Some(4 * Q_ROOT_DENOM)));
    }

    #[test]
    fn a1_first_coefficient() {
        // (1 - X)(1 + tX + ...) at q^0 gives t - 1 on X_{alpha^v} = X^2.
        let rs = a1();
        let mu = mu0_series(&rs, 2, 4).unwrap();
        let s = mu.coeff(&[2]).unwrap();
        let t = ParamScalar::t_half_pow(0, 2);
        assert_eq!(s.coeff(0).unwrap(), t - ParamScalar::one());
        assert!(mu.coeff(&[1]).unwrap().terms().next().is_none());
        assert!(mu.coeff(&[12]).is_err());
    }

    #[test]
    fn a1_pairing_examples() {
        let rs = a1();
        let mu = mu0_series(&rs, 4, 4).unwrap();
        let one = LaurentPoly::<ParamScalar>::one();
        let x1 = x::<ParamScalar>(&[1]);
        let unit = Series::with_prec([(0, ParamScalar::one())], Some(5 * Q_ROOT_DENOM));
        assert_eq!(pairing_mu(&mu, &one, &one, 4).unwrap(), unit);
        assert_eq!(pairing_mu(&mu, &x1, &x1, 4).unwrap(), unit);
        assert!(pairing_mu(&mu, &one, &x1, 4).unwrap().terms().next().is_none());
    }

    #[test]
    fn regime_agrees_with_truncation() {
        let rs = a1();
        for k in 1..=2 {
            let exact = mu0_exact_regime(&rs, k).unwrap();
            assert!(is_star_symmetric(&exact));
            let mu = mu0_series(&rs, 4, 6).unwrap();
            let prec = 5 * Q_ROOT_DENOM;
            for c in [[0], [2], [-2], [4], [-4]] {
                let lhs = specialize_series(&mu.coeff(&c).unwrap(), k, prec).unwrap();
                let rhs = scalar_to_u_series(&exact.coeff(&Mono::from_i64(&c)), prec).unwrap();
                assert_eq!(lhs, rhs, "k={k} c={c:?}");
            }
        }
    }
}
