//! Rational Demazure-Lusztig operators on polynomials in `lambda`.
//!
//! `S_j = s_j + k_j / lambda_{alpha_j} (s_j - 1)` with `lambda_{alpha_0} = 1 - lambda_theta`,
//! where `w(lambda_b) = lambda_{w(b)}` and `lambda_{[b,u]} = lambda_b + u`.
//! Variables are `lambda_{b_1}, ..., lambda_{b_n}`; `kappa` is specialized.

use num_traits::{One, Zero};

use crate::coeffs::{q_to_big, BigRational, Mono, Poly, Q};
use crate::error::{Error, Result};
use crate::report::Failures;
use crate::roots::{ExtAffWeyl, RootSystem};
use crate::trigdunkl::KappaParams;

/// Polynomial in `lambda_{b_1}, ..., lambda_{b_n}`.
pub type LambdaPoly = Poly<BigRational>;

/// `lambda_z` for `z` in b-coordinates.
pub fn lambda(z: &[Q]) -> LambdaPoly {
    Poly::from_terms(z.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (Mono::var(i, 1), q_to_big(*c))))
}

pub fn lambda_int(z: &[i64]) -> LambdaPoly {
    lambda(&z.iter().map(|&v| Q::from_integer(v)).collect::<Vec<_>>())
}

fn rat(q: Q) -> LambdaPoly {
    Poly::constant(q_to_big(q))
}

/// A linear combination `sum_i (num_i / den_i) w_i^lambda` of substitutions.
#[derive(Clone, Debug)]
pub struct LambdaOp {
    pub terms: Vec<(LambdaPoly, LambdaPoly, ExtAffWeyl)>,
}

/// The rational difference representation at one `kappa`.
#[derive(Clone, Debug)]
pub struct RatDiff<'a> {
    pub rs: &'a RootSystem,
    pub kp: KappaParams,
}

impl<'a> RatDiff<'a> {
    pub fn new(rs: &'a RootSystem, kp: KappaParams) -> Self {
        RatDiff { rs, kp }
    }

    fn n(&self) -> usize {
        self.rs.rank
    }

    /// Images of `lambda_{b_i}` under `w`: `lambda_{w(b_i)} - (b_i, b')`.
    pub fn affine_images(&self, w: &ExtAffWeyl) -> Vec<LambdaPoly> {
        let bt = w.translation_part();
        (1..=self.n())
            .map(|i| {
                let b = self.rs.b(i);
                lambda_int(&w.apply_w(&b)) - rat(self.rs.ip(&b, bt))
            })
            .collect()
    }

    /// `w^lambda f`.
    pub fn act(&self, w: &ExtAffWeyl, f: &LambdaPoly) -> LambdaPoly {
        f.substitute(&self.affine_images(w)).expect("affine substitution of a polynomial")
    }

    /// `lambda_{alpha_j}`, affine for `j = 0`.
    pub fn lambda_alpha(&self, j: usize) -> LambdaPoly {
        if j == 0 {
            LambdaPoly::one() - lambda(&self.rs.root_vec(self.rs.theta()))
        } else {
            lambda(&self.rs.root_vec(self.rs.simple_root(j)))
        }
    }

    pub fn k_j(&self, j: usize) -> BigRational {
        self.kp.k(self.rs.class_of(j))
    }

    /// `S_j f` with the divided difference computed by exact division.
    pub fn s(&self, j: usize, f: &LambdaPoly) -> Result<LambdaPoly> {
        let sf = self.act(&self.rs.s(j), f);
        let dd = (sf.clone() - f.clone()).exact_div_opts(&self.lambda_alpha(j), true)?;
        Ok(sf + dd.scale(&self.k_j(j)))
    }

    /// `S_w = pi_r S_{i_1} ... S_{i_l}`, applied right to left.
    pub fn s_elem(&self, w: &ExtAffWeyl, f: &LambdaPoly) -> Result<LambdaPoly> {
        let rw = self.rs.reduced_word(w)?;
        self.s_word(rw.r, &rw.word, f)
    }

    /// `pi_r S_{word[0]} ... S_{word[l-1]} f` for an arbitrary word.
    pub fn s_word(&self, r: usize, word: &[usize], f: &LambdaPoly) -> Result<LambdaPoly> {
        let mut g = f.clone();
        for &j in word.iter().rev() {
            g = self.s(j, &g)?;
        }
        Ok(if r == 0 { g } else { self.act(&self.rs.pi(r), &g) })
    }

    /// `Delta_b = S_b`.
    pub fn delta(&self, b: &[i64], f: &LambdaPoly) -> Result<LambdaPoly> {
        self.s_elem(&self.rs.translation(b), f)
    }

    pub fn is_symmetric(&self, f: &LambdaPoly) -> bool {
        (1..=self.n()).all(|j| self.act(&self.rs.s(j), f) == *f)
    }

    /// `m_r(Delta) = sum over the orbit of -b_r of Delta_c`.
    pub fn m_r_of_delta(&self, r: usize, f: &LambdaPoly) -> Result<LambdaPoly> {
        let m = self.rs.minuscule_data(r);
        let neg: Vec<i64> = m.b_r.iter().map(|x| -x).collect();
        let mut total = Poly::zero();
        for (c, _) in self.rs.orbit(&neg) {
            total = total + self.delta(&c, f)?;
        }
        Ok(total)
    }

    /// `Lambda_r` on symmetric `f` by the coset-sum formula over a common denominator.
    pub fn lambda_r(&self, r: usize, f: &LambdaPoly) -> Result<LambdaPoly> {
        if !self.is_symmetric(f) {
            return Err(Error::NotSymmetric("input of Lambda_r".into()));
        }
        let rs = self.rs;
        let m = rs.minuscule_data(r);
        let ell: Vec<usize> = rs.positive_roots().filter(|(i, _)| rs.pair_root(&m.b_r, *i) > 0).map(|(i, _)| i).collect();
        let mut denom = LambdaPoly::one();
        for (i, _) in rs.positive_roots() {
            denom = denom * lambda(&rs.root_vec(i));
        }
        let mut total = Poly::zero();
        for (_, w) in rs.orbit(&m.b_r) {
            let mut num = LambdaPoly::one();
            let mut den_w = LambdaPoly::one();
            for &a in &ell {
                let wa = rs.apply_root(&w, a);
                let la = lambda(&rs.root_vec(wa));
                num = num * (la.clone() + Poly::constant(self.kp.k(rs.root(a).class)));
                den_w = den_w * la;
            }
            let shift: Vec<i64> = w.apply_w(&m.b_r).iter().map(|x| -x).collect();
            let moved = self.act(&rs.translation(&shift), f);
            total = total + num * moved * denom.exact_div_opts(&den_w, true)?;
        }
        total.exact_div_opts(&denom, true)
    }

    /// `S_j (lambda_b f) - lambda_{s_j(b)} S_j f + kappa_j (b, alpha_j) f`.
    pub fn relation_residual_s(&self, j: usize, b: &[i64], f: &LambdaPoly) -> Result<LambdaPoly> {
        let lb = lambda_int(b);
        let moved = self.act(&self.rs.s(j), &lb);
        let pair = if j == 0 { -self.rs.pair_root(b, self.rs.theta()) } else { b[j - 1] };
        let kj = self.kp.kappa(self.rs.class_of(j)).clone() * BigRational::from_integer(pair.into());
        Ok(self.s(j, &(lb * f.clone()))? - moved * self.s(j, f)? + f.scale(&kj))
    }

    /// `pi_r (lambda_b f) - lambda_{pi_r(b)} pi_r f`.
    pub fn relation_residual_pi(&self, r: usize, b: &[i64], f: &LambdaPoly) -> LambdaPoly {
        let pi = self.rs.pi(r);
        let lb = lambda_int(b);
        self.act(&pi, &(lb.clone() * f.clone())) - self.act(&pi, &lb) * self.act(&pi, f)
    }

    /// `S_j` as a combination of substitutions.
    pub fn s_op(&self, j: usize) -> LambdaOp {
        let l = self.lambda_alpha(j);
        let k = Poly::constant(self.k_j(j));
        LambdaOp {
            terms: vec![(l.clone() + k.clone(), l.clone(), self.rs.s(j)), (-k, l, self.rs.identity())],
        }
    }

    pub fn pi_op(&self, w: ExtAffWeyl) -> LambdaOp {
        LambdaOp { terms: vec![(LambdaPoly::one(), LambdaPoly::one(), w)] }
    }

    /// `S_w^{-1}` as a combination of substitutions, using `S_j^{-1} = S_j`.
    pub fn s_elem_inverse_op(&self, w: &ExtAffWeyl) -> Result<LambdaOp> {
        let rw = self.rs.reduced_word(w)?;
        let mut op = LambdaOp::identity(self.rs);
        for &j in &rw.word {
            op = op.compose(self, &self.s_op(j));
        }
        if rw.r != 0 {
            op = op.compose(self, &self.pi_op(self.rs.pi(rw.r).inverse()));
        }
        Ok(op)
    }

    /// `h^0` coefficient of `T_j` under `X_b = e^{h lambda_b}`, `t_nu = e^{h kappa_nu}`, minus `S_j f`.
    ///
    /// `T_j f = t^(1/2) s f + (t^(1/2) - t^(-1/2))/h * (s f - f)/L * B(h L)`, `B(x) = x/(e^x - 1)`,
    /// where `L = lambda_{alpha_j^v}` (`1 - lambda_theta` for `j = 0`).
    pub fn difference_limit_residual(&self, j: usize, f: &LambdaPoly, order: usize) -> Result<LambdaPoly> {
        if order < 2 {
            return Err(Error::Config("h-order must be at least 2".into()));
        }
        let kappa = self.kp.kappa(self.rs.class_of(j)).clone();
        // T_j divides by X_{a_j} - 1 with X_{a_j} = e^{h L}
        let l = if j == 0 {
            LambdaPoly::one() - lambda_int(self.rs.theta_vec())
        } else {
            lambda_int(&self.rs.root(self.rs.simple_root(j)).coroot)
        };
        let sf = self.act(&self.rs.s(j), f);
        let dd = (sf.clone() - f.clone()).exact_div_opts(&l, true)?;
        let half = kappa.clone() / BigRational::from_integer(2.into());
        let fact = factorials(order + 1);
        // t^(1/2) = sum (kappa/2)^n / n! h^n
        let t_half: Vec<BigRational> = (0..order).map(|n| pow(&half, n) / fact[n].clone()).collect();
        // (t^(1/2) - t^(-1/2))/h = sum_{n odd} 2 (kappa/2)^n / n! h^(n-1)
        let gap: Vec<BigRational> = (0..order)
            .map(|m| {
                let n = m + 1;
                if n % 2 == 1 {
                    BigRational::from_integer(2.into()) * pow(&half, n) / fact[n].clone()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        let bern = bernoulli_generating(order);
        let mut lpow = vec![LambdaPoly::one()];
        for i in 1..order {
            lpow.push(lpow[i - 1].clone() * l.clone());
        }
        let mut series: Vec<LambdaPoly> = vec![Poly::zero(); order];
        for (n, item) in series.iter_mut().enumerate() {
            *item = sf.scale(&t_half[n]);
            for a in 0..=n {
                let c = gap[a].clone() * bern[n - a].clone();
                if !c.is_zero() {
                    *item = item.clone() + (dd.clone() * lpow[n - a].clone()).scale(&c);
                }
            }
        }
        Ok(series[0].clone() - self.s(j, f)?)
    }

    /// `sigma` at integral `k_alpha >= 0`:
    /// `prod_{alpha > 0} prod_{i < k_alpha} (lambda_alpha + i)(i + 1 - lambda_alpha)`.
    pub fn sigma_polynomial(&self) -> Result<LambdaPoly> {
        let mut sigma = LambdaPoly::one();
        for (i, r) in self.rs.positive_roots() {
            let k = self.kp.k(r.class);
            if !k.is_integer() || k < BigRational::zero() {
                return Err(Error::Unsupported("symbolic sigma needs integral k >= 0".into()));
            }
            let la = lambda(&self.rs.root_vec(i));
            let k: i64 = k.to_integer().try_into().map_err(|_| Error::Unsupported("k too large".into()))?;
            for m in 0..k {
                let c = Poly::constant(BigRational::from_integer(m.into()));
                let c1 = Poly::constant(BigRational::from_integer((m + 1).into()));
                sigma = sigma * (la.clone() + c) * (c1 - la.clone());
            }
        }
        Ok(sigma)
    }

    /// Cleared-denominator residual of `sigma^{-1} S_j^+ sigma = S_j^{-1}` on `f`.
    ///
    /// With `S_j^+ g = s g + k s(g/L) - k g/L` and `s L = -L`, both sides times `sigma L` are
    /// `s(sigma f)(L - k) - k sigma f` and `sigma (L s f + k (s f - f))`.
    pub fn sigma_unitarity_residual(&self, j: usize, f: &LambdaPoly) -> Result<LambdaPoly> {
        let sigma = self.sigma_polynomial()?;
        let l = self.lambda_alpha(j);
        let sj = self.rs.s(j);
        if self.act(&sj, &l) != -l.clone() {
            return Err(Error::Internal(format!("s_{j} does not negate lambda_alpha_{j}")));
        }
        let k = Poly::constant(self.k_j(j));
        let sigf = sigma.clone() * f.clone();
        let lhs = self.act(&sj, &sigf) * (l.clone() - k.clone()) - k.clone() * sigf;
        let sf = self.act(&sj, f);
        let rhs = sigma * (l * sf.clone() + k * (sf - f.clone()));
        Ok(lhs - rhs)
    }
}

fn pow(x: &BigRational, n: usize) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, _| acc * x.clone())
}

fn factorials(n: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::one()];
    for i in 1..=n {
        v.push(v[i - 1].clone() * BigRational::from_integer((i as i64).into()));
    }
    v
}

/// Coefficients of `x/(e^x - 1)` up to `x^(order-1)`.
pub fn bernoulli_generating(order: usize) -> Vec<BigRational> {
    let fact = factorials(order + 1);
    let mut c: Vec<BigRational> = vec![BigRational::one()];
    for n in 1..order {
        let mut s = BigRational::zero();
        for (i, ci) in c.iter().enumerate() {
            s += ci.clone() / fact[n - i + 1].clone();
        }
        c.push(-s);
    }
    c
}

impl LambdaOp {
    pub fn identity(rs: &RootSystem) -> Self {
        LambdaOp { terms: vec![(LambdaPoly::one(), LambdaPoly::one(), rs.identity())] }
    }

    /// `self o other`: `(a u)(b v) = a u(b) uv`, merging equal substitutions.
    pub fn compose(&self, rd: &RatDiff<'_>, other: &LambdaOp) -> LambdaOp {
        let mut out: Vec<(LambdaPoly, LambdaPoly, ExtAffWeyl)> = Vec::new();
        for (a_num, a_den, u) in &self.terms {
            for (b_num, b_den, v) in &other.terms {
                let num = a_num.clone() * rd.act(u, b_num);
                let den = a_den.clone() * rd.act(u, b_den);
                let w = u.mul(v);
                match out.iter_mut().find(|t| t.2 == w) {
                    Some(t) => {
                        t.0 = t.0.clone() * den.clone() + num * t.1.clone();
                        t.1 = t.1.clone() * den;
                    }
                    None => out.push((num, den, w)),
                }
            }
        }
        LambdaOp { terms: out }
    }

    /// Exact action on a polynomial; the result must be polynomial.
    pub fn apply(&self, rd: &RatDiff<'_>, f: &LambdaPoly) -> Result<LambdaPoly> {
        let mut den = LambdaPoly::one();
        for (_, d, _) in &self.terms {
            den = den * d.clone();
        }
        let mut total = Poly::zero();
        for (num, d, w) in &self.terms {
            total = total + num.clone() * rd.act(w, f) * den.exact_div(d)?;
        }
        total.exact_div_opts(&den, true)
    }
}

/// Monomials `lambda^e` of total degree `<= d`.
pub fn monomials(n: usize, d: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                let used: i64 = v.iter().sum();
                (0..=d - used).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn lambda_mono(e: &[i64]) -> LambdaPoly {
    Poly::monomial(Mono::from_i64(e), BigRational::one())
}

/// `W`-orbit sums of `lambda^e`, deduplicated, for total degree `<= d`.
pub fn symmetric_basis(rd: &RatDiff<'_>, d: i64) -> Result<Vec<LambdaPoly>> {
    let w = rd.rs.weyl_group()?;
    let mut out: Vec<LambdaPoly> = Vec::new();
    for e in monomials(rd.rs.rank, d) {
        let m = lambda_mono(&e);
        let sym = w.iter().fold(Poly::zero(), |acc, g| acc + rd.act(g, &m));
        if !sym.is_zero() && !out.contains(&sym) {
            out.push(sym);
        }
    }
    Ok(out)
}

fn basis(n: usize, d: i64) -> Vec<(Vec<i64>, LambdaPoly)> {
    monomials(n, d).into_iter().map(|e| (e.clone(), lambda_mono(&e))).collect()
}

/// `S_j^2 = 1` and braid relations on monomials of degree `<= d`.
pub fn hecke_relations(rd: &RatDiff<'_>, d: i64) -> Result<(Failures, Failures)> {
    let rs = rd.rs;
    let n = rs.rank;
    let mut sq = Failures::new();
    let mut br = Failures::new();
    let pairs: Vec<(usize, usize, usize)> = (0..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .filter_map(|(i, j)| crate::polyrep::relations::braid_order(rs, i, j).map(|m| (i, j, m)))
        .collect();
    for (e, f) in basis(n, d) {
        for j in 0..=n {
            let ok = rd.s(j, &rd.s(j, &f)?)? == f;
            sq.record(ok, || format!("S_{j}^2 on lambda^{e:?}"));
        }
        for &(i, j, m) in &pairs {
            let wi: Vec<usize> = (0..m).map(|t| if t % 2 == 0 { i } else { j }).collect();
            let wj: Vec<usize> = (0..m).map(|t| if t % 2 == 0 { j } else { i }).collect();
            let ok = rd.s_word(0, &wi, &f)? == rd.s_word(0, &wj, &f)?;
            br.record(ok, || format!("S_{i}, S_{j} (m={m}) on lambda^{e:?}"));
        }
    }
    Ok((sq, br))
}

/// `pi_r S_i pi_r^{-1} = S_{pi_r(i)}`.
pub fn pi_conjugation(rd: &RatDiff<'_>, d: i64) -> Result<Failures> {
    let rs = rd.rs;
    let mut out = Failures::new();
    for (e, f) in basis(rs.rank, d) {
        for m in rs.minuscule() {
            for i in 0..=rs.rank {
                let lhs = rd.act(&m.pi, &rd.s(i, &rd.act(&m.pi.inverse(), &f))?);
                out.record(lhs == rd.s(m.perm[i], &f)?, || format!("pi_{} S_{i} on lambda^{e:?}", m.r));
            }
        }
    }
    Ok(out)
}

/// `S_u S_v = S_{uv}` for random `u, v` with translation parts in a small box.
pub fn homomorphism<R: rand::Rng>(rd: &RatDiff<'_>, pairs: usize, d: i64, rng: &mut R) -> Result<Failures> {
    let rs = rd.rs;
    let n = rs.rank;
    let w = rs.weyl_group()?;
    let random_elem = |rng: &mut R| {
        let b: Vec<i64> = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
        rs.translation(&b).mul(&w[rng.gen_range(0..w.len())])
    };
    let fs = basis(n, d);
    let mut out = Failures::new();
    for p in 0..pairs {
        let u = random_elem(rng);
        let v = random_elem(rng);
        let uv = u.mul(&v);
        for (e, f) in &fs {
            let ok = rd.s_elem(&u, &rd.s_elem(&v, f)?)? == rd.s_elem(&uv, f)?;
            out.record(ok, || format!("pair {p} on lambda^{e:?}"));
        }
    }
    Ok(out)
}

/// `lambda_b` commutation with `S_j` and `pi_r` on monomials of degree `<= d`.
pub fn lambda_relations(rd: &RatDiff<'_>, d: i64) -> Result<Failures> {
    let rs = rd.rs;
    let n = rs.rank;
    let mut out = Failures::new();
    for (e, f) in basis(n, d) {
        for i in 1..=n {
            let b = rs.b(i);
            for j in 0..=n {
                let ok = rd.relation_residual_s(j, &b, &f)?.is_zero();
                out.record(ok, || format!("S_{j} lambda_b{i} on lambda^{e:?}"));
            }
            for r in rs.special_nodes() {
                let ok = rd.relation_residual_pi(r, &b, &f).is_zero();
                out.record(ok, || format!("pi_{r} lambda_b{i} on lambda^{e:?}"));
            }
        }
    }
    Ok(out)
}

/// `[Delta_b, Delta_c] = 0` for fundamental `b, c`.
pub fn delta_commute(rd: &RatDiff<'_>, d: i64) -> Result<Failures> {
    let rs = rd.rs;
    let n = rs.rank;
    let mut out = Failures::new();
    for (e, f) in basis(n, d) {
        let images: Vec<LambdaPoly> = (1..=n).map(|i| rd.delta(&rs.b(i), &f)).collect::<Result<_>>()?;
        for i in 1..=n {
            for j in i + 1..=n {
                let ok = rd.delta(&rs.b(i), &images[j - 1])? == rd.delta(&rs.b(j), &images[i - 1])?;
                out.record(ok, || format!("[Delta_{i}, Delta_{j}] on lambda^{e:?}"));
            }
        }
    }
    Ok(out)
}

/// `Lambda_r` by the coset formula equals `m_r(Delta)` and is `W`-invariant.
pub fn lambda_consistency(rd: &RatDiff<'_>, d: i64) -> Result<Failures> {
    let mut out = Failures::new();
    for (idx, f) in symmetric_basis(rd, d)?.into_iter().enumerate() {
        for r in rd.rs.special_nodes() {
            let a = rd.lambda_r(r, &f)?;
            out.record(a == rd.m_r_of_delta(r, &f)?, || format!("Lambda_{r} on symmetric basis element {idx}"));
            out.record(rd.is_symmetric(&a), || format!("Lambda_{r} output {idx} is not W-invariant"));
        }
    }
    Ok(out)
}

/// Difference-rational limit on monomials of degree `<= d`.
pub fn difference_limit(rd: &RatDiff<'_>, d: i64, order: usize) -> Result<Failures> {
    let mut out = Failures::new();
    for (e, f) in basis(rd.rs.rank, d) {
        for j in 0..=rd.rs.rank {
            let ok = rd.difference_limit_residual(j, &f, order)?.is_zero();
            out.record(ok, || format!("T_{j} limit on lambda^{e:?}"));
        }
    }
    Ok(out)
}

/// `sigma`-unitarity of every `S_j` at integral `k` on monomials of degree `<= d`.
pub fn sigma_unitarity(rd: &RatDiff<'_>, d: i64) -> Result<Failures> {
    let mut out = Failures::new();
    for (e, f) in basis(rd.rs.rank, d) {
        for j in 0..=rd.rs.rank {
            let ok = rd.sigma_unitarity_residual(j, &f)?.is_zero();
            out.record(ok, || format!("S_{j} on lambda^{e:?}"));
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

    fn c(v: BigRational) -> LambdaPoly {
        Poly::constant(v)
    }

    #[test]
    fn a1_examples() {
        let rs = RootSystem::new(RootType::A, 1).unwrap();
        let k = r(2, 7);
        let rd = RatDiff::new(&rs, KappaParams::uniform(k.clone()));
        let l = lambda_mono(&[1]);
        assert_eq!(rd.s(1, &LambdaPoly::one()).unwrap(), LambdaPoly::one());
        assert_eq!(rd.s(1, &l).unwrap(), -l.clone() - c(k.clone()));
        assert_eq!(rd.s(0, &l).unwrap(), LambdaPoly::one() - l.clone() + c(k.clone()));
        assert_eq!(rd.act(&rs.pi(1), &l), c(r(1, 2)) - l.clone());
        assert!(rd.relation_residual_s(1, &[1], &LambdaPoly::one()).unwrap().is_zero());
        assert!(rd.relation_residual_s(1, &[1], &l).unwrap().is_zero());
        let l3 = lambda_mono(&[3]);
        assert_eq!(rd.s(1, &rd.s(1, &l3).unwrap()).unwrap(), l3);
        assert_eq!(rd.lambda_r(1, &LambdaPoly::one()).unwrap(), c(r(2, 1)));
        let l2 = lambda_mono(&[2]);
        assert_eq!(rd.lambda_r(1, &l2).unwrap(), rd.m_r_of_delta(1, &l2).unwrap());
    }

    #[test]
    fn a1_delta_is_shift_at_k_zero() {
        let rs = RootSystem::new(RootType::A, 1).unwrap();
        let rd = RatDiff::new(&rs, KappaParams::uniform(BigRational::zero()));
        let l2 = lambda_mono(&[2]);
        // lambda_{b_1} -> lambda_{b_1} - (b_1, b_1) = lambda - 1/2
        let shifted = (lambda_mono(&[1]) - c(r(1, 2))) * (lambda_mono(&[1]) - c(r(1, 2)));
        assert_eq!(rd.delta(&[1], &l2).unwrap(), shifted);
    }

    #[test]
    fn a1_delta_factors_through_pi() {
        let rs = RootSystem::new(RootType::A, 1).unwrap();
        let rd = RatDiff::new(&rs, KappaParams::uniform(r(3, 5)));
        for e in 0..4 {
            let f = lambda_mono(&[e]);
            let want = rd.act(&rs.pi(1), &rd.s(1, &f).unwrap());
            assert_eq!(rd.delta(&[1], &f).unwrap(), want);
        }
    }

    #[test]
    fn a1_difference_limit() {
        let rs = RootSystem::new(RootType::A, 1).unwrap();
        let rd = RatDiff::new(&rs, KappaParams::uniform(r(4, 3)));
        for f in [LambdaPoly::one(), lambda_mono(&[1]), lambda_mono(&[2])] {
            for j in 0..2 {
                assert!(rd.difference_limit_residual(j, &f, 3).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli_generating(5);
        assert_eq!(b, vec![r(1, 1), r(-1, 2), r(1, 12), r(0, 1), r(-1, 720)]);
    }

    #[test]
    fn a1_sigma_unitarity() {
        let rs = RootSystem::new(RootType::A, 1).unwrap();
        for k in 0..=2 {
            let rd = RatDiff::new(&rs, KappaParams::uniform(BigRational::from_integer(k.into())));
            for e in 0..4 {
                for j in 0..2 {
                    assert!(rd.sigma_unitarity_residual(j, &lambda_mono(&[e])).unwrap().is_zero(), "k={k} j={j} e={e}");
                }
            }
        }
        let rd = RatDiff::new(&rs, KappaParams::uniform(BigRational::one()));
        let la = lambda_mono(&[1]).scale(&r(2, 1));
        assert_eq!(rd.sigma_polynomial().unwrap(), la.clone() * (LambdaPoly::one() - la));
    }

    #[test]
    fn inverse_op_undoes_delta() {
        let rs = RootSystem::new(RootType::A, 1).unwrap();
        let rd = RatDiff::new(&rs, KappaParams::uniform(r(1, 3)));
        let op = rd.s_elem_inverse_op(&rs.translation(&[1])).unwrap();
        for e in 0..4 {
            let f = lambda_mono(&[e]);
            assert_eq!(op.apply(&rd, &rd.delta(&[1], &f).unwrap()).unwrap(), f);
        }
    }
}
