//! Trigonometric Dunkl operators and the degenerate double affine Hecke algebra.
//!
//! `D_b = d_b + sum_{alpha > 0} kappa_alpha (b, alpha) (1 - X_{alpha^v}^{-1})^{-1} (1 - s_alpha) - (rho_kappa, b)`
//! acting on Laurent polynomials with rational coefficients, `kappa` specialized.

use num_traits::{One, Zero};

use crate::coeffs::{q_to_big, BigRational, HSeries, LengthClass, Params, Poly, Q};
use crate::error::{Error, Result};
use crate::polyrep::{monomial_box, x, x_mono, LaurentPoly, PolyRep};
use crate::report::Failures;
use crate::roots::{ExtAffWeyl, RootSystem};

pub type RPoly = LaurentPoly<BigRational>;

/// `kappa` per length class and the derived `rho_kappa`.
#[derive(Clone, Debug)]
pub struct KappaParams {
    pub kappa: [BigRational; 3],
}

impl KappaParams {
    pub fn new(kappa: [BigRational; 3]) -> Self {
        KappaParams { kappa }
    }

    pub fn uniform(k: BigRational) -> Self {
        KappaParams { kappa: [k.clone(), k.clone(), k] }
    }

    pub fn kappa(&self, c: LengthClass) -> &BigRational {
        &self.kappa[c.index()]
    }

    /// `k_alpha = (alpha, alpha) kappa_alpha / 2`.
    pub fn k(&self, c: LengthClass) -> BigRational {
        self.kappa(c).clone() * q_to_big(c.nu() / 2)
    }
}

fn qb(x: Q) -> BigRational {
    q_to_big(x)
}

/// The Dunkl operators of one root system at one `kappa`.
#[derive(Clone, Debug)]
pub struct Dunkl<'a> {
    pub rs: &'a RootSystem,
    pub kp: KappaParams,
}

/// Eigenvalues of `D_{b_1}, ..., D_{b_n}`.
pub type DSpectrum = Vec<BigRational>;

impl<'a> Dunkl<'a> {
    pub fn new(rs: &'a RootSystem, kp: KappaParams) -> Self {
        Dunkl { rs, kp }
    }

    fn n(&self) -> usize {
        self.rs.rank
    }

    /// `(rho_kappa, b) = (1/2) sum_{alpha > 0} kappa_alpha (alpha, b)`.
    pub fn rho_pair(&self, b: &[i64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, r) in self.rs.positive_roots() {
            let p = self.rs.pair_root(b, i);
            if p != 0 {
                acc += self.kp.kappa(r.class).clone() * BigRational::from_integer(p.into());
            }
        }
        acc / BigRational::from_integer(2.into())
    }

    /// `d_b X_c = (b, c) X_c`.
    pub fn partial(&self, b: &[i64], f: &RPoly) -> RPoly {
        let n = self.n();
        Poly::from_terms(f.terms().map(|(m, c)| (m.clone(), c.clone() * qb(self.rs.ip(b, &m.to_vec(n))))))
    }

    /// `(f - s_alpha f) / (1 - X_{alpha^v}^{-1})` as a finite geometric sum per monomial.
    pub fn divided_difference(&self, root: usize, f: &RPoly) -> RPoly {
        let n = self.n();
        let z = &self.rs.root(root).coroot;
        let mut out = Poly::zero();
        for (m, c) in f.terms() {
            let cv = m.to_vec(n);
            let k = self.rs.pair_root(&cv, root);
            let (range, sign): (Vec<i64>, BigRational) =
                if k > 0 { ((0..k).map(|i| -i).collect(), BigRational::one()) } else { ((1..=-k).collect(), -BigRational::one()) };
            for i in range {
                let e: Vec<i64> = cv.iter().zip(z).map(|(a, b)| a + i * b).collect();
                out.add_term(x_mono(&e), c.clone() * sign.clone());
            }
        }
        out
    }

    /// `D_b f` for an integral coweight `b`.
    pub fn apply(&self, b: &[i64], f: &RPoly) -> RPoly {
        let mut out = self.partial(b, f) - f.scale(&self.rho_pair(b));
        for (i, r) in self.rs.positive_roots() {
            let p = self.rs.pair_root(b, i);
            if p != 0 {
                let coef = self.kp.kappa(r.class).clone() * BigRational::from_integer(p.into());
                out = out + self.divided_difference(i, f).scale(&coef);
            }
        }
        out
    }

    /// `D_z` for rational `z` in b-coordinates, by linearity in the `D_{b_i}`.
    pub fn apply_q(&self, z: &[Q], f: &RPoly) -> RPoly {
        let mut out = Poly::zero();
        for i in 1..=self.n() {
            if !z[i - 1].is_zero() {
                out = out + self.apply(&self.rs.b(i), f).scale(&qb(z[i - 1]));
            }
        }
        out
    }

    /// `w^x` of the degenerate algebra: `(w b')^x f = w(X_{b'} f)`.
    pub fn twisted(&self, w: &ExtAffWeyl, f: &RPoly) -> RPoly {
        let n = self.n();
        let bt = w.translation_part();
        Poly::from_terms(f.terms().map(|(m, c)| {
            let v: Vec<i64> = m.to_vec(n).iter().zip(bt).map(|(a, b)| a + b).collect();
            (x_mono(&w.apply_w(&v)), c.clone())
        }))
    }

    /// `(w^x D_b - y_{w([b,0])} w^x)(f)`, where `y_{[z,u]} = D_z + u`.
    fn commutator(&self, w: &ExtAffWeyl, b: &[i64], f: &RPoly) -> RPoly {
        let lhs = self.twisted(w, &self.apply(b, f));
        let wf = self.twisted(w, f);
        let level = -self.rs.ip(b, w.translation_part());
        let rhs = self.apply(&w.apply_w(b), &wf) + wf.scale(&qb(level));
        lhs - rhs
    }

    /// Residual of `s_j y_b - y_{s_j(b)} s_j + kappa_j (b, alpha_j)` on `f`.
    pub fn relation_residual_s(&self, j: usize, b: &[i64], f: &RPoly) -> RPoly {
        let pair = if j == 0 { -self.rs.pair_root(b, self.rs.theta()) } else { b[j - 1] };
        let kj = self.kp.kappa(self.rs.class_of(j)).clone() * BigRational::from_integer(pair.into());
        self.commutator(&self.rs.s(j), b, f) + f.scale(&kj)
    }

    /// Residual of `pi_r y_b - y_{pi_r(b)} pi_r` on `f`.
    pub fn relation_residual_pi(&self, r: usize, b: &[i64], f: &RPoly) -> RPoly {
        self.commutator(&self.rs.pi(r), b, f)
    }

    /// Certified simultaneous eigenvalues of `D_{b_i}`.
    pub fn spectrum(&self, f: &RPoly) -> Result<DSpectrum> {
        let (m, c) = f.leading().ok_or_else(|| Error::EigenCertification("zero vector".into()))?;
        let inv = c.recip();
        let mut out = Vec::new();
        for i in 1..=self.n() {
            let g = self.apply(&self.rs.b(i), f);
            let ev = g.coeff(m) * inv.clone();
            if g != f.scale(&ev) {
                return Err(Error::EigenCertification(format!("D_{i} does not act by a scalar")));
            }
            out.push(ev);
        }
        Ok(out)
    }

    /// Eigenvalue of `y_z` for rational `z`.
    pub fn eigenvalue(spec: &[BigRational], z: &[Q]) -> BigRational {
        spec.iter().zip(z).fold(BigRational::zero(), |acc, (s, c)| acc + s.clone() * qb(*c))
    }

    /// `Phi'_i`, `Phi'_0` on a certified eigenvector.
    pub fn phi(&self, j: usize, e: &RPoly) -> Result<RPoly> {
        let spec = self.spectrum(e)?;
        let resonant = || Error::Resonant(format!("Phi'_{j} at a resonant eigenvalue"));
        if j == 0 {
            let th = self.rs.theta();
            let c = Self::eigenvalue(&spec, &self.rs.root_vec(th));
            let den = BigRational::one() - c;
            if den.is_zero() {
                return Err(resonant());
            }
            let k0 = self.kp.k(LengthClass::Long) / den;
            Ok(self.twisted(&self.rs.s(0), e) + e.scale(&k0))
        } else {
            let a = self.rs.simple_root(j);
            let c = Self::eigenvalue(&spec, &self.rs.root_vec(a));
            if c.is_zero() {
                return Err(resonant());
            }
            let ki = self.kp.k(self.rs.class_of(j)) / c;
            Ok(self.twisted(&self.rs.s(j), e) + e.scale(&ki))
        }
    }

    /// `P'_r = X_r omega_r^{-1}`.
    pub fn p_r(&self, r: usize, e: &RPoly) -> RPoly {
        self.twisted(&self.rs.pi(r), e)
    }

    /// Predicted spectrum after `w`: `D_{w(b)}` acts by `lambda(b) + (b, b')`.
    pub fn moved_spectrum(&self, w: &ExtAffWeyl, spec: &[BigRational]) -> DSpectrum {
        let winv = w.inverse();
        (1..=self.n())
            .map(|i| {
                let b = winv.apply_w(&self.rs.b(i));
                let bq: Vec<Q> = b.iter().map(|&v| Q::from_integer(v)).collect();
                Self::eigenvalue(spec, &bq) + qb(self.rs.ip(&b, w.translation_part()))
            })
            .collect()
    }

    /// Eigenvector with leading monomial `X_c`, built from `1` by degenerate intertwiners.
    pub fn eigenvector(&self, c: &[i64]) -> Result<(RPoly, DSpectrum)> {
        let w = self.rs.min_coset_rep(&self.rs.translation(c));
        let rw = self.rs.reduced_word(&w)?;
        let mut g = RPoly::one();
        for &j in rw.word.iter().rev() {
            g = self.phi(j, &g)?;
            if g.is_zero() {
                return Err(Error::DegenerateStep(format!("Phi'_{j} annihilated the vector on the way to {c:?}")));
            }
        }
        if rw.r != 0 {
            g = self.p_r(rw.r, &g);
        }
        let lead = g.coeff(&x_mono(c));
        if lead.is_zero() {
            return Err(Error::DegenerateStep(format!("X^{c:?} is missing from the eigenvector")));
        }
        let g = g.scale(&lead.recip());
        let spec = self.spectrum(&g)?;
        Ok((g, spec))
    }

    /// `tau = prod_{alpha > 0} (X_{alpha^v} - 2 + X_{alpha^v}^{-1})^{k_alpha}` for integral `k_alpha`.
    pub fn tau(&self) -> Result<RPoly> {
        let mut tau = RPoly::one();
        for (_, r) in self.rs.positive_roots() {
            let k = self.kp.k(r.class);
            if !k.is_integer() || k < BigRational::zero() {
                return Err(Error::Unsupported("tau is a Laurent polynomial only for integral k >= 0".into()));
            }
            let neg: Vec<i64> = r.coroot.iter().map(|v| -v).collect();
            let base = x::<BigRational>(&r.coroot) + x(&neg) - Poly::constant(BigRational::from_integer(2.into()));
            for _ in 0..k.to_integer().try_into().unwrap_or(0u32) {
                tau = tau * base.clone();
            }
        }
        Ok(tau)
    }
}

/// `{f, g}_tau = <f(X) g(X^{-1}) tau>`.
pub fn tau_pairing(tau: &RPoly, f: &RPoly, g: &RPoly) -> BigRational {
    let gs = Poly::from_terms(g.terms().map(|(m, c)| (m.neg(), c.clone())));
    (f.clone() * gs * tau.clone()).constant_term()
}

fn basis(n: usize, box_size: i64) -> Vec<(Vec<i64>, RPoly)> {
    monomial_box(n, box_size).into_iter().map(|b| (b.clone(), x(&b))).collect()
}

/// `[D_{b_i}, D_{b_j}] = 0` on the monomial box.
pub fn commutators(d: &Dunkl<'_>, box_size: i64) -> Failures {
    let n = d.rs.rank;
    let mut out = Failures::new();
    for (c, f) in basis(n, box_size) {
        let images: Vec<RPoly> = (1..=n).map(|i| d.apply(&d.rs.b(i), &f)).collect();
        for i in 1..=n {
            for j in i + 1..=n {
                let ok = d.apply(&d.rs.b(i), &images[j - 1]) == d.apply(&d.rs.b(j), &images[i - 1]);
                out.record(ok, || format!("[D_{i}, D_{j}] on X^{c:?}"));
            }
        }
    }
    out
}

/// The relations between `s_j`, `pi_r` and `y_b` on the monomial box.
pub fn degenerate_relations(d: &Dunkl<'_>, box_size: i64) -> Failures {
    let n = d.rs.rank;
    let mut out = Failures::new();
    let bs: Vec<Vec<i64>> = (1..=n).map(|i| d.rs.b(i)).collect();
    for (c, f) in basis(n, box_size) {
        for b in &bs {
            for j in 0..=n {
                let ok = d.relation_residual_s(j, b, &f).is_zero();
                out.record(ok, || format!("s_{j} y_{b:?} on X^{c:?}"));
            }
            for r in d.rs.special_nodes() {
                let ok = d.relation_residual_pi(r, b, &f).is_zero();
                out.record(ok, || format!("pi_{r} y_{b:?} on X^{c:?}"));
            }
        }
    }
    out
}

/// Degenerate intertwiners move certified spectra as predicted.
pub fn intertwiner_moves(d: &Dunkl<'_>, box_size: i64) -> Result<Failures> {
    let rs = d.rs;
    let n = rs.rank;
    let mut out = Failures::new();
    for c in monomial_box(n, box_size) {
        let (e, spec) = d.eigenvector(&c)?;
        for j in 0..=n {
            let g = d.phi(j, &e)?;
            if g.is_zero() {
                continue;
            }
            let ok = d.spectrum(&g)? == d.moved_spectrum(&rs.s(j), &spec);
            out.record(ok, || format!("Phi'_{j} on E'_{c:?}"));
        }
        for m in rs.minuscule() {
            let g = d.p_r(m.r, &e);
            let ok = d.spectrum(&g)? == d.moved_spectrum(&m.pi, &spec);
            out.record(ok, || format!("P'_{} on E'_{c:?}", m.r));
        }
    }
    Ok(out)
}

/// `h^0` coefficient of `(f - Y_b f)/h` minus `D_b f`, with `q = e^h`, `t^(1/2) = e^(h kappa/2)`.
pub fn differential_limit_residual(d: &Dunkl<'_>, b: &[i64], f: &RPoly, order: i64) -> Result<RPoly> {
    if order < 2 {
        return Err(Error::Config("h-order must be at least 2".into()));
    }
    let params = Params::<HSeries>::exponential(d.rs.two_m(), &d.kp.kappa, order)?;
    let rep = PolyRep::new(d.rs, params)?;
    let fh: LaurentPoly<HSeries> = f.map_coeffs(|c| HSeries::exact([(0, c.clone())]));
    let yf = rep.y(b, &fh)?;
    let mut limit = Poly::zero();
    let mut zeroth = Poly::zero();
    for (m, s) in yf.terms() {
        limit.add_term(m.clone(), -s.coeff(1)?);
        zeroth.add_term(m.clone(), s.coeff(0)?);
    }
    if zeroth != *f {
        return Err(Error::Internal("Y_b does not reduce to the identity at h = 0".into()));
    }
    Ok(limit - d.apply(b, f))
}

/// Formal self-adjointness `{D_b f, g}_tau = {f, D_b g}_tau` at integral `k`.
pub fn self_adjointness(d: &Dunkl<'_>, box_size: i64) -> Result<Failures> {
    let tau = d.tau()?;
    let n = d.rs.rank;
    let mut out = Failures::new();
    let fs = basis(n, box_size);
    for (a, f) in &fs {
        for (c, g) in &fs {
            for i in 1..=n {
                let b = d.rs.b(i);
                let ok = tau_pairing(&tau, &d.apply(&b, f), g) == tau_pairing(&tau, f, &d.apply(&b, g));
                out.record(ok, || format!("D_{i} on X^{a:?}, X^{c:?}"));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootType;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn a1_dunkl_examples() {
        let rs = RootSystem::new(RootType::A, 1).unwrap();
        let k = r(3, 7);
        let d = Dunkl::new(&rs, KappaParams::uniform(k.clone()));
        let one = RPoly::one();
        assert_eq!(d.apply(&[1], &one), one.scale(&(-k.clone() / r(2, 1))));
        assert_eq!(d.apply(&[1], &x(&[1])), x::<BigRational>(&[1]).scale(&((r(1, 1) + k.clone()) / r(2, 1))));
        let want = x::<BigRational>(&[-1]).scale(&(-(r(1, 1) + k.clone()) / r(2, 1))) + x(&[1]).scale(&-k.clone());
        assert_eq!(d.apply(&[1], &x(&[-1])), want);
    }

    #[test]
    fn a1_relations_and_intertwiners() {
        let rs = RootSystem::new(RootType::A, 1).unwrap();
        let d = Dunkl::new(&rs, KappaParams::uniform(r(2, 5)));
        assert!(d.relation_residual_s(1, &[1], &x(&[1])).is_zero());
        assert!(d.relation_residual_s(0, &[1], &RPoly::one()).is_zero());
        assert!(d.phi(1, &RPoly::one()).unwrap().is_zero());
        assert_eq!(d.p_r(1, &RPoly::one()), x(&[1]));
    }

    #[test]
    fn a1_differential_limit() {
        let rs = RootSystem::new(RootType::A, 1).unwrap();
        let d = Dunkl::new(&rs, KappaParams::uniform(r(5, 3)));
        for f in [RPoly::one(), x(&[1]), x(&[-2])] {
            assert!(differential_limit_residual(&d, &[1], &f, 2).unwrap().is_zero());
        }
    }

    #[test]
    fn rho_kappa_pairs_to_kappa_on_simple_coroots() {
        for (t, n) in [(RootType::A, 2), (RootType::B, 3), (RootType::C, 2), (RootType::G, 2)] {
            let rs = RootSystem::new(t, n).unwrap();
            let kp = KappaParams::new([r(3, 7), r(2, 5), r(5, 11)]);
            let d = Dunkl::new(&rs, kp.clone());
            for j in 1..=n {
                let a = &rs.root(rs.simple_root(j)).coroot;
                assert_eq!(d.rho_pair(a), *kp.kappa(rs.class_of(j)), "{t:?}{n} j={j}");
            }
        }
    }

    #[test]
    fn correction_by_twisted_image_is_wrong() {
        // s_1 y_b - y_{s_1 b} s_1 is the scalar -kappa (b, alpha_1), not -kappa (b, alpha_1) s_1
        let rs = RootSystem::new(RootType::A, 1).unwrap();
        let k = r(2, 5);
        let d = Dunkl::new(&rs, KappaParams::uniform(k.clone()));
        let f = x::<BigRational>(&[1]);
        let s1f = d.twisted(&rs.s(1), &f);
        assert!((d.commutator(&rs.s(1), &[1], &f) + f.scale(&k)).is_zero());
        assert!(!(d.commutator(&rs.s(1), &[1], &f) + s1f.scale(&k)).is_zero());
    }
}
