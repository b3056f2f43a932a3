//! The polynomial representation of the double affine Hecke algebra.
//!
//! A Laurent polynomial in `X_1, ..., X_n` is a [`Poly`] whose monomial
//! exponents are the b-coordinates of the coweight, so `X_b` has exponent
//! vector `b`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::coeffs::{Coeff, Mono, Params, Poly, Star, Q};
use crate::error::{Error, Result};
use crate::roots::{ExtAffWeyl, RootSystem};

pub mod relations;

pub type LaurentPoly<C> = Poly<C>;

pub fn x_mono(b: &[i64]) -> Mono {
    Mono::from_i64(b)
}

/// `X_b` with unit coefficient.
pub fn x<C: Coeff>(b: &[i64]) -> LaurentPoly<C> {
    Poly::monomial(x_mono(b), C::one())
}

/// Polynomial representation over a fixed parameter point.
#[derive(Clone, Debug)]
pub struct PolyRep<'a, C> {
    pub rs: &'a RootSystem,
    pub params: Params<C>,
    q: C,
    q_inv: C,
}

/// Simultaneous eigenvalues of `Y_{b_1}, ..., Y_{b_n}`.
pub type Spectrum<C> = Vec<C>;

impl<'a, C: Coeff> PolyRep<'a, C> {
    pub fn new(rs: &'a RootSystem, params: Params<C>) -> Result<Self> {
        if rs.two_m() % params.two_m != 0 && params.two_m % rs.two_m() != 0 {
            return Err(Error::Config(format!(
                "parameters built for 2m={} do not fit {}",
                params.two_m,
                rs.label()
            )));
        }
        let q = params.q();
        let q_inv = q.try_inv()?;
        Ok(PolyRep { rs, params, q, q_inv })
    }

    pub fn n(&self) -> usize {
        self.rs.rank
    }

    fn q_int(&self, k: i64) -> C {
        if k >= 0 {
            self.q.pow(k as u64)
        } else {
            self.q_inv.pow(k.unsigned_abs())
        }
    }

    pub fn t_half(&self, j: usize) -> &C {
        self.params.t_half(self.rs.class_of(j))
    }

    pub fn t_half_inv(&self, j: usize) -> &C {
        self.params.t_half_inv(self.rs.class_of(j))
    }

    /// `t_j^(1/2) - t_j^(-1/2)`.
    pub fn gap(&self, j: usize) -> C {
        self.params.hecke_gap(self.rs.class_of(j))
    }

    pub fn mult_x(&self, b: &[i64], f: &LaurentPoly<C>) -> LaurentPoly<C> {
        f.shift(&x_mono(b), &C::one())
    }

    /// `w(X_b) = X_{w(b)} q^{-(b, b')}` for `w = (finite part) b'`.
    pub fn weyl(&self, w: &ExtAffWeyl, f: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
        let n = self.n();
        let bt = w.translation_part();
        let mut out = Poly::zero();
        for (m, c) in f.terms() {
            let b = m.to_vec(n);
            let e = -self.rs.ip(&b, bt);
            let coeff = if e.is_zero() { c.clone() } else { c.clone() * self.params.q_pow(e)? };
            out.add_term(x_mono(&w.apply_w(&b)), coeff);
        }
        Ok(out)
    }

    /// `(n, Z)` data of `s_j` on `X_b`: `s_j(X_b) = X_b Z^{-n}` with
    /// `Z = X_{a_j}` (`j > 0`) or `Z = q X_{-theta}` (`j = 0`).
    fn z_data(&self, j: usize) -> (Vec<i64>, bool) {
        if j == 0 {
            (self.rs.theta_vec().iter().map(|x| -x).collect(), true)
        } else {
            (self.rs.root(self.rs.simple_root(j)).coroot.clone(), false)
        }
    }

    fn pair_alpha_j(&self, j: usize, b: &[i64]) -> i64 {
        if j == 0 {
            -self.rs.pair_root(b, self.rs.theta())
        } else {
            b[j - 1]
        }
    }

    /// `Z^i` as a monomial term.
    fn z_pow(&self, z: &[i64], has_q: bool, i: i64) -> (Mono, C) {
        let v: Vec<i64> = z.iter().map(|x| x * i).collect();
        let c = if has_q { self.q_int(i) } else { C::one() };
        (x_mono(&v), c)
    }

    /// Simple affine reflection `s_j` acting on polynomials.
    pub fn s(&self, j: usize, f: &LaurentPoly<C>) -> LaurentPoly<C> {
        let (z, has_q) = self.z_data(j);
        let n = self.n();
        let mut out = Poly::zero();
        for (m, c) in f.terms() {
            let b = m.to_vec(n);
            let k = self.pair_alpha_j(j, &b);
            let (zm, zc) = self.z_pow(&z, has_q, -k);
            out.add_term(m.add(&zm), c.clone() * zc);
        }
        out
    }

    /// Demazure-Lusztig operator `T_j`.
    pub fn t(&self, j: usize, f: &LaurentPoly<C>) -> LaurentPoly<C> {
        let (z, has_q) = self.z_data(j);
        let th = self.t_half(j).clone();
        let gap = self.gap(j);
        let n = self.n();
        let mut out = Poly::zero();
        for (m, c) in f.terms() {
            let b = m.to_vec(n);
            let k = self.pair_alpha_j(j, &b);
            let (zm, zc) = self.z_pow(&z, has_q, -k);
            out.add_term(m.add(&zm), c.clone() * th.clone() * zc);
            // (Z^{-k} - 1)/(Z - 1) as a finite geometric sum.
            let (range, sign): (Vec<i64>, C) = if k > 0 {
                ((1..=k).map(|i| -i).collect(), -C::one())
            } else {
                ((0..-k).collect(), C::one())
            };
            let cg = c.clone() * gap.clone() * sign;
            for i in range {
                let (zm, zc) = self.z_pow(&z, has_q, i);
                out.add_term(m.add(&zm), cg.clone() * zc);
            }
        }
        out
    }

    /// `T_j` through the defining divided difference with exact division.
    pub fn t_by_division(&self, j: usize, f: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
        let (z, has_q) = self.z_data(j);
        let (zm, zc) = self.z_pow(&z, has_q, 1);
        let divisor = Poly::monomial(zm, zc) - Poly::one();
        let sf = self.s(j, f);
        let dd = (sf.clone() - f.clone()).exact_div(&divisor)?;
        Ok(sf.scale(self.t_half(j)) + dd.scale(&self.gap(j)))
    }

    /// `T_j^{-1} = T_j - t_j^(1/2) + t_j^(-1/2)`.
    pub fn t_inv(&self, j: usize, f: &LaurentPoly<C>) -> LaurentPoly<C> {
        self.t(j, f) - f.scale(&self.gap(j))
    }

    pub fn pi(&self, r: usize, f: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
        self.weyl(&self.rs.pi(r), f)
    }

    pub fn pi_inv(&self, r: usize, f: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
        self.weyl(&self.rs.pi(r).inverse(), f)
    }

    /// `T_w = pi_r T_{j_1} ... T_{j_l}` along a reduced word.
    pub fn t_elem(&self, w: &ExtAffWeyl, f: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
        let rw = self.rs.reduced_word(w)?;
        let mut g = f.clone();
        for &j in rw.word.iter().rev() {
            g = self.t(j, &g);
        }
        self.pi(rw.r, &g)
    }

    pub fn t_elem_inv(&self, w: &ExtAffWeyl, f: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
        let rw = self.rs.reduced_word(w)?;
        let mut g = self.pi_inv(rw.r, f)?;
        for &j in &rw.word {
            g = self.t_inv(j, &g);
        }
        Ok(g)
    }

    /// `Y_b = T_{b_+} T_{b_-}^{-1}`.
    pub fn y(&self, b: &[i64], f: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
        let (bp, bm) = self.rs.dominant_split(b);
        let mut g = f.clone();
        if bm.iter().any(|&x| x != 0) {
            g = self.t_elem_inv(&self.rs.translation(&bm), &g)?;
        }
        if bp.iter().any(|&x| x != 0) {
            g = self.t_elem(&self.rs.translation(&bp), &g)?;
        }
        Ok(g)
    }

    /// Certified simultaneous `Y`-eigenvalues of `f`.
    pub fn spectrum(&self, f: &LaurentPoly<C>) -> Result<Spectrum<C>> {
        let (lead_m, lead_c) = f
            .leading()
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or_else(|| Error::EigenCertification("zero vector".into()))?;
        let inv = lead_c.try_inv()?;
        let mut out = Vec::with_capacity(self.n());
        for i in 1..=self.n() {
            let g = self.y(&self.rs.b(i), f)?;
            let c = g.coeff(&lead_m) * inv.clone();
            if g != f.scale(&c) {
                return Err(Error::EigenCertification(format!("Y_{i} does not act by a scalar")));
            }
            out.push(c);
        }
        Ok(out)
    }

    /// Eigenvalue of `Y_b` from the spectrum on the `Y_{b_i}`.
    pub fn eigenvalue(&self, spec: &[C], b: &[i64]) -> Result<C> {
        let mut acc = C::one();
        for (c, &k) in spec.iter().zip(b) {
            if k != 0 {
                acc = acc * c.try_powi(k)?;
            }
        }
        Ok(acc)
    }

    /// Intertwiner `Phi_j` on a certified eigenvector.
    pub fn phi(&self, j: usize, e: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
        let spec = self.spectrum(e)?;
        self.phi_with(j, e, &spec)
    }

    fn phi_with(&self, j: usize, e: &LaurentPoly<C>, spec: &[C]) -> Result<LaurentPoly<C>> {
        if j == 0 {
            let th = self.rs.theta_vec().to_vec();
            let c = self.eigenvalue(spec, &th)?;
            let denom = (self.q_inv.clone() * c.try_inv()?) - C::one();
            let scal = self.gap(0) * denom.try_inv().map_err(|_| resonant(0))?;
            let s_theta = self.rs.reflection(self.rs.theta());
            let main = self.mult_x(&th, &self.t_elem(&s_theta, e)?);
            Ok(main - e.scale(&scal))
        } else {
            let a = self.rs.root(self.rs.simple_root(j)).coroot.clone();
            let c = self.eigenvalue(spec, &a)?;
            let denom = c.try_inv()? - C::one();
            let scal = self.gap(j) * denom.try_inv().map_err(|_| resonant(j))?;
            Ok(self.t(j, e) + e.scale(&scal))
        }
    }

    /// `P_r = X_r T_{omega_r^{-1}}`.
    pub fn p_r(&self, r: usize, e: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
        let m = self.rs.minuscule_data(r);
        let g = self.t_elem(&m.omega.inverse(), e)?;
        Ok(self.mult_x(&m.b_r, &g))
    }

    /// `Phi_w E` along a reduced word of `w` (rightmost factor first).
    pub fn phi_elem(&self, w: &ExtAffWeyl, e: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
        let rw = self.rs.reduced_word(w)?;
        let mut g = e.clone();
        for &j in rw.word.iter().rev() {
            g = self.phi(j, &g)?;
            if g.is_zero() {
                return Err(Error::DegenerateStep(format!("Phi_{j} annihilated the vector")));
            }
        }
        if rw.r != 0 {
            g = self.p_r(rw.r, &g)?;
        }
        Ok(g)
    }

    /// Predicted spectrum of `Phi_w E`: `Y_{w(b)}` acts on it by the eigenvalue of `Y_b` on `E`,
    /// with `Y_{[b,k]} = Y_b q^{-k}`.
    pub fn moved_spectrum(&self, w: &ExtAffWeyl, spec: &[C]) -> Result<Spectrum<C>> {
        let n = self.n();
        let winv = w.inverse();
        let mut out = Vec::with_capacity(n);
        for i in 1..=n {
            // w(b) = b_i means b = w^{-1}(b_i) up to the level; solve through w^{-1}.
            let bi = self.rs.b(i);
            let b = winv.apply_w(&bi);
            // w([b,0]) = [b_i, -(b, w_b)], so Y_{b_i} q^{(b, w_b)} acts by lambda_b.
            let k = self.rs.ip(&b, w.translation_part());
            let lam = self.eigenvalue(spec, &b)?;
            out.push(lam * self.params.q_pow(-k)?);
        }
        Ok(out)
    }

    /// Nonsymmetric eigenvector `E_c`, monic at `X_c`, with its spectrum.
    pub fn nonsymmetric(&self, c: &[i64]) -> Result<(LaurentPoly<C>, Spectrum<C>)> {
        let w = self.rs.min_coset_rep(&self.rs.translation(c));
        let e = self.phi_elem(&w, &Poly::one())?;
        let lead = e.coeff(&x_mono(c));
        if lead.is_zero() {
            return Err(Error::DegenerateStep(format!("X_{c:?} is missing from the eigenvector")));
        }
        let e = e.scale(&lead.try_inv()?);
        let spec = self.spectrum(&e)?;
        Ok((e, spec))
    }

    pub fn is_symmetric(&self, f: &LaurentPoly<C>) -> bool {
        (1..=self.n()).all(|i| self.s(i, f) == *f)
    }

    /// Macdonald operator `L_r` through its explicit difference form.
    pub fn macdonald_l(&self, r: usize, f: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
        if !self.is_symmetric(f) {
            return Err(Error::NotSymmetric("input of L_r".into()));
        }
        let m = self.rs.minuscule_data(r);
        let ell: Vec<usize> =
            self.rs.positive_roots().filter(|(i, _)| self.rs.pair_root(&m.b_r, *i) > 0).map(|(i, _)| i).collect();
        let mut denom = LaurentPoly::<C>::one();
        for (i, _) in self.rs.positive_roots() {
            denom = denom * (x(&self.rs.root(i).coroot) - Poly::one());
        }
        let mut total = Poly::zero();
        for (_, w) in self.rs.orbit(&m.b_r) {
            let mut num = LaurentPoly::<C>::one();
            let mut den_w = LaurentPoly::<C>::one();
            for &a in &ell {
                let wa = self.rs.apply_root(&w, a);
                let xa = x::<C>(&self.rs.root(wa).coroot);
                let cls = self.rs.root(wa).class;
                num = num
                    * (xa.scale(self.params.t_half(cls)) - Poly::constant(self.params.t_half_inv(cls).clone()));
                den_w = den_w * (xa - Poly::one());
            }
            let shift: Vec<i64> = w.apply_w(&m.b_r).iter().map(|x| -x).collect();
            let moved = self.weyl(&self.rs.translation(&shift), f)?;
            let cofactor = denom.exact_div(&den_w)?;
            total = total + num * moved * cofactor;
        }
        total.exact_div(&denom)
    }

    /// `m_r(Y) = sum over the orbit of -b_r of Y_c`.
    pub fn m_r_of_y(&self, r: usize, f: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
        let m = self.rs.minuscule_data(r);
        let neg: Vec<i64> = m.b_r.iter().map(|x| -x).collect();
        let mut total = Poly::zero();
        for (c, _) in self.rs.orbit(&neg) {
            total = total + self.y(&c, f)?;
        }
        Ok(total)
    }
}

fn resonant(j: usize) -> Error {
    Error::Resonant(format!("intertwiner Phi_{j} at a resonant eigenvalue"))
}

impl<'a, C: Star> PolyRep<'a, C> {
    /// `Phi_j^* E = T_j^{-1} E + (t_j^(1/2) - t_j^(-1/2))^* (c - 1)^{-1} E`.
    pub fn phi_star(&self, j: usize, e: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
        if j == 0 {
            return Err(Error::Unsupported("star of Phi_0 on eigenvectors".into()));
        }
        let spec = self.spectrum(e)?;
        let a = self.rs.root(self.rs.simple_root(j)).coroot.clone();
        let c = self.eigenvalue(&spec, &a)?;
        let scal = self.gap(j).star() * (c - C::one()).try_inv().map_err(|_| resonant(j))?;
        Ok(self.t_inv(j, e) + e.scale(&scal))
    }
}

/// Atomic generators of operator words.
#[derive(Clone, Debug, PartialEq)]
pub enum Gen<C> {
    X(Vec<i64>),
    Weyl(ExtAffWeyl),
    T(usize),
    TInv(usize),
    Pi(usize),
    PiInv(usize),
    Y(Vec<i64>),
    Scalar(C),
}

/// Composable operator word; `gens[0]` is the leftmost factor.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyOp<C> {
    pub gens: Vec<Gen<C>>,
}

impl<C: Coeff> PolyOp<C> {
    pub fn gen(g: Gen<C>) -> Self {
        PolyOp { gens: vec![g] }
    }

    pub fn identity() -> Self {
        PolyOp { gens: Vec::new() }
    }

    /// `self * other`.
    pub fn compose(&self, other: &PolyOp<C>) -> Self {
        PolyOp { gens: self.gens.iter().chain(&other.gens).cloned().collect() }
    }

    pub fn apply(&self, rep: &PolyRep<'_, C>, f: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
        let mut g = f.clone();
        for gen in self.gens.iter().rev() {
            g = match gen {
                Gen::X(b) => rep.mult_x(b, &g),
                Gen::Weyl(w) => rep.weyl(w, &g)?,
                Gen::T(j) => rep.t(*j, &g),
                Gen::TInv(j) => rep.t_inv(*j, &g),
                Gen::Pi(r) => rep.pi(*r, &g)?,
                Gen::PiInv(r) => rep.pi_inv(*r, &g)?,
                Gen::Y(b) => rep.y(b, &g)?,
                Gen::Scalar(c) => g.scale(c),
            };
        }
        Ok(g)
    }
}

impl<C: Star> PolyOp<C> {
    /// The anti-involution `*` on words.
    pub fn star(&self) -> Result<Self> {
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in self.gens.iter().rev() {
            gens.push(match g {
                Gen::X(b) => Gen::X(b.iter().map(|x| -x).collect()),
                Gen::T(j) => Gen::TInv(*j),
                Gen::TInv(j) => Gen::T(*j),
                Gen::Pi(r) => Gen::PiInv(*r),
                Gen::PiInv(r) => Gen::Pi(*r),
                Gen::Y(b) => Gen::Y(b.iter().map(|x| -x).collect()),
                Gen::Scalar(c) => Gen::Scalar(c.star()),
                Gen::Weyl(_) => {
                    return Err(Error::Unsupported("the * anti-involution on Weyl-group actions".into()))
                }
            });
        }
        Ok(PolyOp { gens })
    }
}

/// `*` on polynomials: `X_b -> X_{-b}` and coefficients conjugated.
pub fn star_poly<C: Star>(f: &LaurentPoly<C>) -> LaurentPoly<C> {
    Poly::from_terms(f.terms().map(|(m, c)| (m.neg(), c.star())))
}

/// Monomial basis `X_b` with all `|b_i| <= box_size`.
pub fn monomial_box(n: usize, box_size: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            for k in -box_size..=box_size {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

#[derive(Serialize)]
pub struct TermJson {
    pub exps: Vec<i64>,
    pub coeff: String,
}

#[derive(Serialize)]
pub struct LaurentJson {
    pub system: String,
    pub terms: Vec<TermJson>,
}

pub fn to_json<C: Coeff>(rs: &RootSystem, f: &LaurentPoly<C>) -> LaurentJson {
    LaurentJson {
        system: rs.label(),
        terms: f
            .terms()
            .rev()
            .map(|(m, c)| TermJson { exps: m.to_vec(rs.rank), coeff: c.to_string() })
            .collect(),
    }
}

/// `q^e` is representable for the exponents produced by the representation.
pub fn check_q_exponent(rs: &RootSystem, e: Q) -> bool {
    (e * rs.two_m()).is_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::ParamScalar;
    use crate::roots::RootType;

    fn a1() -> RootSystem {
        RootSystem::new(RootType::A, 1).unwrap()
    }

    fn sym(rs: &RootSystem) -> PolyRep<'_, ParamScalar> {
        PolyRep::new(rs, Params::symbolic(rs.two_m()).unwrap()).unwrap()
    }

    fn th(k: i32) -> ParamScalar {
        ParamScalar::t_half_pow(0, k)
    }

    fn qp(n: i64, d: i64) -> ParamScalar {
        ParamScalar::q_pow(Q::new(n, d)).unwrap()
    }

    #[test]
    fn a1_demazure_lusztig() {
        let rs = a1();
        let p = sym(&rs);
        let one = LaurentPoly::<ParamScalar>::one();
        assert_eq!(p.t(1, &one), one.scale(&th(1)));
        assert_eq!(p.t(1, &x(&[1])), x(&[-1]).scale(&th(-1)));
        let want = x::<ParamScalar>(&[-1]).scale(&(th(1) * qp(1, 1))) + x(&[1]).scale(&(th(1) - th(-1)));
        assert_eq!(p.t(0, &x(&[1])), want);
    }

    #[test]
    fn a1_weyl_action() {
        let rs = a1();
        let p = sym(&rs);
        assert_eq!(p.s(0, &x(&[1])), x::<ParamScalar>(&[-1]).scale(&qp(1, 1)));
        assert_eq!(p.pi(1, &x(&[1])).unwrap(), x::<ParamScalar>(&[-1]).scale(&qp(1, 2)));
    }

    #[test]
    fn a1_y_operator() {
        let rs = a1();
        let p = sym(&rs);
        let one = LaurentPoly::<ParamScalar>::one();
        assert_eq!(p.y(&[1], &one).unwrap(), one.scale(&th(1)));
        assert_eq!(p.y(&[1], &x(&[1])).unwrap(), x::<ParamScalar>(&[1]).scale(&(th(-1) * qp(-1, 2))));
    }

    #[test]
    fn a1_intertwiners() {
        let rs = a1();
        let p = sym(&rs);
        let one = LaurentPoly::<ParamScalar>::one();
        assert!(p.phi(1, &one).unwrap().is_zero());
        assert_eq!(p.p_r(1, &one).unwrap(), x::<ParamScalar>(&[1]).scale(&th(1)));
    }

    #[test]
    fn a1_macdonald_operator() {
        let rs = a1();
        let p = sym(&rs);
        let one = LaurentPoly::<ParamScalar>::one();
        assert_eq!(p.macdonald_l(1, &one).unwrap(), one.scale(&(th(1) + th(-1))));
    }

    #[test]
    fn division_route_agrees() {
        let rs = RootSystem::new(RootType::B, 2).unwrap();
        let p = sym(&rs);
        for b in monomial_box(2, 2) {
            for j in 0..=2 {
                let f = x::<ParamScalar>(&b);
                assert_eq!(p.t(j, &f), p.t_by_division(j, &f).unwrap());
            }
        }
    }
}
