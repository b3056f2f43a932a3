//! Extensional checks of the defining relations on a monomial basis.

use num_traits::Zero;

use super::{monomial_box, x, x_mono, LaurentPoly, PolyRep};
use crate::coeffs::{Coeff, Poly};
use crate::error::Result;
use crate::report::Failures;
use crate::roots::RootSystem;

/// Order of `s_i s_j` in the affine Weyl group, `None` when infinite.
pub fn braid_order(rs: &RootSystem, i: usize, j: usize) -> Option<usize> {
    let g = rs.s(i).mul(&rs.s(j));
    let id = rs.identity();
    let mut p = g.clone();
    for k in 1..=6 {
        if p == id {
            return Some(k);
        }
        p = p.mul(&g);
    }
    None
}

/// `T_{j_1} T_{j_2} ... f` with `m` alternating factors starting with `i`.
fn alternating<C: Coeff>(rep: &PolyRep<'_, C>, i: usize, j: usize, m: usize, f: &LaurentPoly<C>) -> LaurentPoly<C> {
    let word: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect();
    let mut g = f.clone();
    for &k in word.iter().rev() {
        g = rep.t(k, &g);
    }
    g
}

fn basis<C: Coeff>(n: usize, box_size: i64) -> Vec<(Vec<i64>, LaurentPoly<C>)> {
    monomial_box(n, box_size).into_iter().map(|b| (b.clone(), x(&b))).collect()
}

pub fn quadratic<C: Coeff>(rep: &PolyRep<'_, C>, box_size: i64) -> Failures {
    let mut out = Failures::new();
    for (b, f) in basis::<C>(rep.n(), box_size) {
        for j in 0..=rep.n() {
            let tf = rep.t(j, &f);
            let r = rep.t(j, &tf) - tf.scale(&rep.gap(j)) - f.clone();
            out.record(r.is_zero(), || format!("T_{j} on X^{b:?}"));
        }
    }
    out
}

/// Braid relations for every pair of affine nodes with finite `m_ij`.
pub fn braid<C: Coeff>(rep: &PolyRep<'_, C>, box_size: i64) -> Failures {
    let mut out = Failures::new();
    let n = rep.n();
    let pairs: Vec<(usize, usize, usize)> = (0..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .filter_map(|(i, j)| braid_order(rep.rs, i, j).map(|m| (i, j, m)))
        .collect();
    for (b, f) in basis::<C>(n, box_size) {
        for &(i, j, m) in &pairs {
            let ok = alternating(rep, i, j, m, &f) == alternating(rep, j, i, m, &f);
            out.record(ok, || format!("T_{i}, T_{j} (m={m}) on X^{b:?}"));
        }
    }
    out
}

/// `pi_r T_i pi_r^{-1} = T_{pi_r(i)}`.
pub fn pi_conjugation<C: Coeff>(rep: &PolyRep<'_, C>, box_size: i64) -> Result<Failures> {
    let mut out = Failures::new();
    for (b, f) in basis::<C>(rep.n(), box_size) {
        for m in rep.rs.minuscule() {
            for i in 0..=rep.n() {
                let lhs = rep.pi(m.r, &rep.t(i, &rep.pi_inv(m.r, &f)?))?;
                let ok = lhs == rep.t(m.perm[i], &f);
                out.record(ok, || format!("pi_{} T_{i} on X^{b:?}", m.r));
            }
        }
    }
    Ok(out)
}

/// Relations (iii), (iv), (v) between `T_j` and `X_b`, with `b` in the unit box.
pub fn cross_t_x<C: Coeff>(rep: &PolyRep<'_, C>, box_size: i64) -> Failures {
    let rs = rep.rs;
    let n = rep.n();
    let mut out = Failures::new();
    let theta = rs.theta_vec().to_vec();
    let q_inv = rep.params.q().try_inv().expect("q is a unit");
    let shifts = monomial_box(n, 1);
    for (c, f) in basis::<C>(n, box_size) {
        for b in &shifts {
            for i in 0..=n {
                let pair = if i == 0 { -rs.pair_root(b, rs.theta()) } else { b[i - 1] };
                if pair == 0 {
                    let ok = rep.t(i, &rep.mult_x(b, &f)) == rep.mult_x(b, &rep.t(i, &f));
                    out.record(ok, || format!("(v) T_{i} X^{b:?} on X^{c:?}"));
                } else if pair == 1 && i > 0 {
                    let a = &rs.root(rs.simple_root(i)).coroot;
                    let lhs = rep.t(i, &rep.mult_x(b, &rep.t(i, &f)));
                    let shift: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
                    out.record(lhs == rep.mult_x(&shift, &f), || format!("(iii) T_{i} X^{b:?} on X^{c:?}"));
                } else if pair == 1 && i == 0 {
                    // (b, theta) = -1
                    let lhs = rep.t(0, &rep.mult_x(b, &rep.t(0, &f)));
                    let shift: Vec<i64> = b.iter().zip(&theta).map(|(x, y)| x + y).collect();
                    let rhs = rep.mult_x(&shift, &f).scale(&q_inv);
                    out.record(lhs == rhs, || format!("(iv) T_0 X^{b:?} on X^{c:?}"));
                }
            }
        }
    }
    out
}

/// (vi): `pi_r X_b pi_r^{-1} = X_{omega_r^{-1}(b)} q^{(b_{r*}, b)}`.
pub fn pi_x<C: Coeff>(rep: &PolyRep<'_, C>, box_size: i64) -> Result<Failures> {
    let rs = rep.rs;
    let n = rep.n();
    let mut out = Failures::new();
    for (c, f) in basis::<C>(n, box_size) {
        for m in rs.minuscule() {
            let omega_inv = m.omega.inverse();
            for b in monomial_box(n, 1) {
                let lhs = rep.pi(m.r, &rep.mult_x(&b, &rep.pi_inv(m.r, &f)?))?;
                let e = rs.ip(&rs.b(m.r_star), &b);
                let rhs = rep.mult_x(&omega_inv.apply_w(&b), &f).scale(&rep.params.q_pow(e)?);
                out.record(lhs == rhs, || format!("(vi) pi_{} X^{b:?} on X^{c:?}", m.r));
            }
        }
    }
    Ok(out)
}

fn signed_fundamentals(n: usize) -> Vec<Vec<i64>> {
    let mut v = Vec::new();
    for i in 0..n {
        for s in [1, -1] {
            let mut b = vec![0; n];
            b[i] = s;
            v.push(b);
        }
    }
    v
}

/// `[Y_b, Y_c] = 0` and `Y_b Y_c = Y_{b+c}` for `b, c` in `{+-b_i}`.
pub fn y_commutation<C: Coeff>(rep: &PolyRep<'_, C>, box_size: i64) -> Result<(Failures, Failures)> {
    let n = rep.n();
    let gens = signed_fundamentals(n);
    let mut comm = Failures::new();
    let mut group = Failures::new();
    for (a, f) in basis::<C>(n, box_size) {
        let ys: Vec<LaurentPoly<C>> = gens.iter().map(|b| rep.y(b, &f)).collect::<Result<_>>()?;
        for (ib, b) in gens.iter().enumerate() {
            for (ic, c) in gens.iter().enumerate() {
                let bc = rep.y(b, &ys[ic])?;
                if ib < ic {
                    let cb = rep.y(c, &ys[ib])?;
                    comm.record(bc == cb, || format!("[Y{b:?}, Y{c:?}] on X^{a:?}"));
                }
                let sum: Vec<i64> = b.iter().zip(c).map(|(x, y)| x + y).collect();
                group.record(bc == rep.y(&sum, &f)?, || format!("Y{b:?} Y{c:?} on X^{a:?}"));
            }
        }
    }
    Ok((comm, group))
}

/// Orbit sums `m_lambda` for dominant `lambda` with coordinate sum `<= degree`.
pub fn symmetric_basis<C: Coeff>(rs: &RootSystem, degree: i64) -> Vec<(Vec<i64>, LaurentPoly<C>)> {
    let n = rs.rank;
    monomial_box(n, degree)
        .into_iter()
        .filter(|l| l.iter().all(|&x| x >= 0) && l.iter().sum::<i64>() <= degree)
        .map(|l| {
            let f = rs.orbit(&l).into_iter().fold(Poly::zero(), |acc, (b, _)| acc + x::<C>(&b));
            (l, f)
        })
        .collect()
}

/// `L_r = m_r(Y)` on symmetric polynomials, W-invariance of the output and `[L_r, L_s] = 0`.
pub fn macdonald_consistency<C: Coeff>(rep: &PolyRep<'_, C>, degree: i64) -> Result<Failures> {
    let mut out = Failures::new();
    let rs = rep.rs;
    let nodes = rs.special_nodes();
    for (l, f) in symmetric_basis::<C>(rs, degree) {
        let mut images = Vec::new();
        for &r in &nodes {
            let lf = rep.macdonald_l(r, &f)?;
            out.record(lf == rep.m_r_of_y(r, &f)?, || format!("L_{r} vs m_{r}(Y) on m_{l:?}"));
            out.record(rep.is_symmetric(&lf), || format!("L_{r} m_{l:?} is not W-invariant"));
            images.push(lf);
        }
        for (a, &r) in nodes.iter().enumerate() {
            for (b, &s) in nodes.iter().enumerate().skip(a + 1) {
                let ok = rep.macdonald_l(r, &images[b])? == rep.macdonald_l(s, &images[a])?;
                out.record(ok, || format!("[L_{r}, L_{s}] on m_{l:?}"));
            }
        }
    }
    Ok(out)
}

/// `Phi_w` moves spectra as `Y_b -> Y_{w(b)}` on eigenvectors `E_c` with `c` in a box.
pub fn intertwining<C: Coeff>(rep: &PolyRep<'_, C>, box_size: i64) -> Result<Failures> {
    let rs = rep.rs;
    let n = rep.n();
    let mut out = Failures::new();
    for c in monomial_box(n, box_size) {
        let (e, spec) = rep.nonsymmetric(&c)?;
        out.record(e.coeff(&x_mono(&c)).is_one(), || format!("E_{c:?} is not monic"));
        for j in 0..=n {
            let g = rep.phi(j, &e)?;
            if g.is_zero() {
                continue;
            }
            let ok = rep.spectrum(&g)? == rep.moved_spectrum(&rs.s(j), &spec)?;
            out.record(ok, || format!("Phi_{j} on E_{c:?}"));
        }
        for m in rs.minuscule() {
            let g = rep.p_r(m.r, &e)?;
            let ok = rep.spectrum(&g)? == rep.moved_spectrum(&m.pi, &spec)?;
            out.record(ok, || format!("P_{} on E_{c:?}", m.r));
        }
    }
    Ok(out)
}
