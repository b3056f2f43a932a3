//! Rank-one (`A_1`) numerics for the nonsymmetric eigenfunction `G(s, lambda)`.
//!
//! Coordinate `s = x_{alpha^v}`, so `X_{b_1} = e^{s/2}` and `lambda_alpha = 2 lambda`.
//! `u(s) = G(s)`, `v(s) = G(-s)` solve
//! `u' = (lambda + k/2) u - k (u - v)/(1 - e^{-s})`,
//! `v' = -(lambda + k/2) v + k (v - u)/(1 - e^{s})`, `u(0) = v(0) = 1`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratdiff::{LambdaPoly, RatDiff};
use crate::roots::{RootSystem, RootType};
use crate::trigdunkl::KappaParams;

pub type C64 = Complex64;

/// Radius of the Taylor launch.
pub const LAUNCH: f64 = 1e-4;

/// Samples of `G` at `s_i` and `-s_i`.
#[derive(Clone, Debug, Serialize)]
pub struct GSolution {
    pub lambda: [f64; 2],
    pub k: f64,
    pub tol: f64,
    pub s: Vec<f64>,
    #[serde(skip)]
    pub u: Vec<C64>,
    #[serde(skip)]
    pub v: Vec<C64>,
    pub steps: usize,
}

impl GSolution {
    /// `F = (u + v)/2`.
    pub fn symmetric(&self) -> Vec<C64> {
        self.u.iter().zip(&self.v).map(|(a, b)| (a + b) * 0.5).collect()
    }
}

/// Taylor coefficients `g_0, g_1, g_2, g_3` of `G(s) = sum g_n s^n` at the origin.
pub fn taylor(lambda: C64, k: f64) -> [C64; 4] {
    let mu = lambda + k / 2.0;
    let g1 = mu / (1.0 + 2.0 * k);
    let g2 = g1 * (lambda - k / 2.0) / 2.0;
    let g3 = (mu * g2 - g1 * (k / 6.0)) / (3.0 + 2.0 * k);
    [C64::new(1.0, 0.0), g1, g2, g3]
}

/// Right-hand side in the variables `p = u e^{-mu s}`, `q = v e^{mu s}`, `mu = lambda + k/2`,
/// which are constant when `k = 0`.
fn rhs(lambda: C64, k: f64, s: f64, y: [C64; 2]) -> [C64; 2] {
    if k == 0.0 {
        return [C64::zero(); 2];
    }
    let mu = lambda + k / 2.0;
    let e = (mu * (2.0 * s)).exp();
    let dm = -(-s).exp_m1(); // 1 - e^{-s}
    let dp = s.exp_m1(); // e^s - 1
    let p = y[0];
    let q = y[1];
    [-(p - q / e) * (k / dm), -(q - p * e) * (k / dp)]
}

/// Raw system for `(u, v)`.
fn rhs_raw(lambda: C64, k: f64, s: f64, y: [C64; 2]) -> [C64; 2] {
    let mu = lambda + k / 2.0;
    let (u, v) = (y[0], y[1]);
    let dm = -(-s).exp_m1();
    let dp = s.exp_m1();
    [mu * u - (u - v) * (k / dm), -mu * v - (v - u) * (k / dp)]
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

type Rhs<'a> = &'a dyn Fn(f64, [C64; 2]) -> [C64; 2];

/// One Dormand-Prince 5(4) step: the fifth-order value and the error estimate.
fn dp_step(f: Rhs<'_>, s: f64, y: [C64; 2], h: f64) -> ([C64; 2], [C64; 2]) {
    let mut k = [[C64::zero(); 2]; 7];
    k[0] = f(s, y);
    for i in 1..7 {
        let mut yi = y;
        for (j, kj) in k.iter().enumerate().take(i) {
            for c in 0..2 {
                yi[c] += kj[c] * (h * A[i][j]);
            }
        }
        k[i] = f(s + C[i] * h, yi);
    }
    // the last stage is evaluated at the fifth-order solution
    let mut y5 = y;
    for (j, kj) in k.iter().enumerate().take(6) {
        for c in 0..2 {
            y5[c] += kj[c] * (h * A[6][j]);
        }
    }
    let mut err = [C64::zero(); 2];
    for (j, kj) in k.iter().enumerate() {
        for c in 0..2 {
            err[c] += kj[c] * (h * E[j]);
        }
    }
    (y5, err)
}

/// Adaptive integration from `s0` through every point of `targets` (increasing).
fn integrate(f: Rhs<'_>, s0: f64, y0: [C64; 2], targets: &[f64], tol: f64) -> Result<(Vec<[C64; 2]>, usize)> {
    let mut s = s0;
    let mut y = y0;
    let mut h = 1e-3_f64.min(targets.first().map_or(1.0, |t| (t - s0).max(1e-6)));
    let mut out = Vec::with_capacity(targets.len());
    let mut steps = 0usize;
    for &t in targets {
        while s < t {
            let last = s + h >= t;
            let step = if last { t - s } else { h };
            if step < 1e-14 * s.abs().max(1.0) && !last {
                return Err(Error::Solver(format!("step size underflow at s = {s}")));
            }
            let (yn, e) = dp_step(f, s, y, step);
            let mut norm = 0.0;
            for c in 0..2 {
                let sc = tol * (1.0 + y[c].norm().max(yn[c].norm()));
                norm += (e[c].norm() / sc).powi(2);
            }
            let norm = (norm / 2.0).sqrt();
            if !norm.is_finite() || !yn.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::Solver(format!("non-finite state at s = {s}")));
            }
            steps += 1;
            let factor = if norm == 0.0 { 5.0 } else { (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0) };
            if norm <= 1.0 {
                s = if last { t } else { s + step };
                y = yn;
                if !last {
                    h = step * factor;
                }
            } else {
                h = step * factor;
                if h < 1e-14 {
                    return Err(Error::Solver(format!("step size underflow at s = {s}")));
                }
            }
        }
        out.push(y);
    }
    Ok((out, steps))
}

fn check_lambda(lambda: C64, k: f64, tol: f64) -> Result<()> {
    if !(lambda.re.is_finite() && lambda.im.is_finite()) || !k.is_finite() || k < 0.0 {
        return Err(Error::Config("lambda must be finite and k >= 0".into()));
    }
    if !(tol > 0.0 && tol <= 1e-2) {
        return Err(Error::Config("tol must lie in (0, 1e-2]".into()));
    }
    Ok(())
}

/// `G(s_i, lambda)` and `G(-s_i, lambda)` on an increasing grid of `s_i >= 0`.
pub fn solve_g(lambda: C64, k: f64, grid: &[f64], tol: f64) -> Result<GSolution> {
    check_lambda(lambda, k, tol)?;
    if grid.windows(2).any(|w| w[1] < w[0]) || grid.first().is_some_and(|&s| s < 0.0) {
        return Err(Error::Config("grid must be increasing and nonnegative".into()));
    }
    let g = taylor(lambda, k);
    let mu = lambda + k / 2.0;
    let eval = |s: f64| -> (C64, C64) {
        let u = g[0] + g[1] * s + g[2] * (s * s);
        let v = g[0] - g[1] * s + g[2] * (s * s);
        (u, v)
    };
    // inside the launch radius use the expansion directly
    let (inner, outer): (Vec<f64>, Vec<f64>) = grid.iter().partition(|&&s| s <= LAUNCH);
    let mut u = Vec::with_capacity(grid.len());
    let mut v = Vec::with_capacity(grid.len());
    for &s in &inner {
        let (a, b) = eval(s);
        u.push(a);
        v.push(b);
    }
    let (u0, v0) = eval(LAUNCH);
    let y0 = [u0 * (-mu * LAUNCH).exp(), v0 * (mu * LAUNCH).exp()];
    let f = |s: f64, y: [C64; 2]| rhs(lambda, k, s, y);
    let (ys, steps) = integrate(&f, LAUNCH, y0, &outer, tol)?;
    for (s, y) in outer.iter().zip(ys) {
        u.push(y[0] * (mu * *s).exp());
        v.push(y[1] * (-mu * *s).exp());
    }
    Ok(GSolution { lambda: [lambda.re, lambda.im], k, tol, s: grid.to_vec(), u, v, steps })
}

/// `G(s, lambda)` and `G(-s, lambda)` at one `s`.
pub fn g_at(lambda: C64, k: f64, s: f64, tol: f64) -> Result<(C64, C64)> {
    let sol = solve_g(lambda, k, &[s], tol)?;
    Ok((sol.u[0], sol.v[0]))
}

/// Fixed-step integration of the raw `(u, v)` system from the Taylor launch; used for
/// the convergence-order study.
pub fn fixed_step_raw(lambda: C64, k: f64, s_max: f64, steps: usize) -> [C64; 2] {
    let g = taylor(lambda, k);
    let s0 = LAUNCH;
    let mut y = [g[0] + g[1] * s0 + g[2] * (s0 * s0), g[0] - g[1] * s0 + g[2] * (s0 * s0)];
    let f = |s: f64, y: [C64; 2]| rhs_raw(lambda, k, s, y);
    let h = (s_max - s0) / steps as f64;
    for i in 0..steps {
        y = dp_step(&f, s0 + i as f64 * h, y, h).0;
    }
    y
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Gamma(z)` by the Lanczos approximation with reflection; the branch is arbitrary.
pub fn ln_gamma(z: C64) -> Result<C64> {
    if z.re <= 0.5 {
        let n = z.re.round();
        if n <= 0.0 && (z - n).norm() < 1e-9 {
            return Err(Error::PoleProximity(format!("Gamma argument {z} is near {n}")));
        }
    }
    Ok(ln_gamma_unchecked(z))
}

fn ln_gamma_unchecked(z: C64) -> C64 {
    use std::f64::consts::PI;
    if z.re < 0.5 {
        // sin(pi z) with the integer part removed for accuracy near poles
        let n = z.re.round();
        let sign = if (n as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let sin = (C64::new(PI, 0.0) * (z - n)).sin() * sign;
        return C64::new(PI.ln(), 0.0) - sin.ln() - ln_gamma_unchecked(1.0 - z);
    }
    let z = z - 1.0;
    let mut x = C64::new(LANCZOS[0], 0.0);
    for (i, p) in LANCZOS.iter().enumerate().skip(1) {
        x += *p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    C64::new(0.5 * (2.0 * PI).ln(), 0.0) + (z + 0.5) * t.ln() - t + x.ln()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SigmaVariant {
    /// `Gamma(l+k) Gamma(-l+k+1) / (Gamma(l) Gamma(-l+1))`.
    Asymmetric,
    /// `Gamma(l+k) Gamma(-l+k) / (Gamma(l) Gamma(-l))`.
    Symmetric,
}

/// `sigma` or `sigma'` in rank one at `lambda_alpha = la`.
pub fn eval_sigma(la: C64, k: f64, variant: SigmaVariant) -> Result<C64> {
    if k == 0.0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let shift = match variant {
        SigmaVariant::Asymmetric => 1.0,
        SigmaVariant::Symmetric => 0.0,
    };
    let s = ln_gamma(la + k)? + ln_gamma(-la + k + shift)? - ln_gamma(la)? - ln_gamma(-la + shift)?;
    Ok(s.exp())
}

/// `sigma` at integral `k` by the Gamma recurrence: `prod_{i<k} (l+i)(i+1-l)`.
pub fn sigma_recurrence(la: C64, k: u32) -> C64 {
    (0..k).fold(C64::new(1.0, 0.0), |acc, i| acc * (la + i as f64) * (1.0 + i as f64 - la))
}

/// `sinh(lambda s) / (2 lambda sinh(s/2))`, the symmetric eigenfunction at `k = 1`.
pub fn closed_form_k1(lambda: C64, s: f64) -> C64 {
    if lambda.norm() < 1e-12 {
        return C64::new(s / (2.0 * (s / 2.0).sinh()), 0.0);
    }
    (lambda * s).sinh() / (lambda * 2.0 * (s / 2.0).sinh())
}

/// `(1 + k/lambda_alpha)^{-1} (G(-s) + (k/lambda_alpha) G(s)) - G(s, -lambda)`.
pub fn intertwiner_s1_residual(lambda: C64, k: f64, s: f64, tol: f64) -> Result<f64> {
    let la = lambda * 2.0;
    if la.norm() < 1e-12 {
        return Err(Error::Resonant("lambda_alpha = 0".into()));
    }
    let (u, v) = g_at(lambda, k, s, tol)?;
    let (u_ref, _) = g_at(-lambda, k, s, tol)?;
    let c = k / la;
    Ok(((v + c * u) / (1.0 + c) - u_ref).norm())
}

/// `(1 + k/(1 - lambda_theta))^{-1} (X_theta s_theta G + k/(1 - lambda_theta) G) - G(s, 1 - lambda)`.
pub fn intertwiner_s0_residual(lambda: C64, k: f64, s: f64, tol: f64) -> Result<f64> {
    let d = 1.0 - lambda * 2.0;
    if d.norm() < 1e-12 {
        return Err(Error::Resonant("1 - lambda_theta = 0".into()));
    }
    let (u, v) = g_at(lambda, k, s, tol)?;
    let (u_ref, _) = g_at(1.0 - lambda, k, s, tol)?;
    let c = k / d;
    Ok(((v * s.exp() + c * u) / (1.0 + c) - u_ref).norm())
}

fn poly_eval(p: &LambdaPoly, lambda: C64) -> Result<C64> {
    let mut acc = C64::zero();
    for (m, c) in p.terms() {
        let c = c.to_f64().ok_or_else(|| Error::Arithmetic("coefficient out of range".into()))?;
        acc += lambda.powi(m.get(0)) * c;
    }
    Ok(acc)
}

/// `e^{s/2} G(s, lambda) - (Delta_{b_1}^{-1} G)(s, lambda)`, with `Delta_{b_1}^{-1}` composed
/// from `S_1` and `(pi_1^lambda)^{-1}` as substitutions with rational coefficients.
pub fn main_theorem_residual(lambda: C64, k: f64, s: f64, tol: f64) -> Result<f64> {
    let rs = RootSystem::new(RootType::A, 1)?;
    let kr = BigRational::from_f64(k).ok_or_else(|| Error::Config(format!("k = {k} is not representable")))?;
    let rd = RatDiff::new(&rs, KappaParams::uniform(kr));
    let op = rd.s_elem_inverse_op(&rs.translation(&[1]))?;
    let mut total = C64::zero();
    for (num, den, w) in &op.terms {
        let d = poly_eval(den, lambda)?;
        if d.norm() < 1e-12 {
            return Err(Error::Resonant(format!("coefficient pole of Delta^-1 at lambda = {lambda}")));
        }
        let arg = poly_eval(&rd.affine_images(w)[0], lambda)?;
        let (g, _) = g_at(arg, k, s, tol)?;
        total += poly_eval(num, lambda)? / d * g;
    }
    let (g, _) = g_at(lambda, k, s, tol)?;
    Ok((g * (s / 2.0).exp() - total).norm())
}

/// Second-order finite-difference residual of `F'' + k coth(s/2) F' - (lambda^2 - k^2/4) F`
/// on `s_i = s_min + i h`, with the truncation constant `C` estimated from fourth differences.
pub struct SymmetricEigen {
    pub residual: f64,
    pub h: f64,
    pub constant: f64,
    pub threshold: f64,
}

pub fn symmetric_eigen(lambda: C64, k: f64, s_min: f64, s_max: f64, h: f64, tol: f64) -> Result<SymmetricEigen> {
    if s_min - 2.0 * h <= 0.0 || s_max <= s_min {
        return Err(Error::Config("grid must stay inside (0, s_max]".into()));
    }
    let n = ((s_max - s_min) / h).round() as usize;
    let grid: Vec<f64> = (0..=n + 4).map(|i| s_min - 2.0 * h + i as f64 * h).collect();
    let f = solve_g(lambda, k, &grid, tol)?.symmetric();
    let e = lambda * lambda - k * k / 4.0;
    let (mut res, mut cst) = (0.0f64, 0.0f64);
    for i in 2..grid.len() - 2 {
        let s = grid[i];
        let d2 = (f[i + 1] - f[i] * 2.0 + f[i - 1]) / (h * h);
        let d1 = (f[i + 1] - f[i - 1]) / (2.0 * h);
        let coth = 1.0 / (s / 2.0).tanh();
        res = res.max((d2 + d1 * (k * coth) - f[i] * e).norm());
        let d4 = (f[i + 2] - f[i + 1] * 4.0 + f[i] * 6.0 - f[i - 1] * 4.0 + f[i - 2]) / h.powi(4);
        let d3 = (f[i + 2] - f[i + 1] * 2.0 + f[i - 1] * 2.0 - f[i - 2]) / (2.0 * h.powi(3));
        cst = cst.max(d4.norm() / 12.0 + k * coth * d3.norm() / 6.0);
    }
    let threshold = 1e-5f64.max(h * h * cst);
    Ok(SymmetricEigen { residual: res, h, constant: cst, threshold })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn k0_is_exponential() {
        let (u, v) = g_at(c(0.7, 0.0), 0.0, 1.0, 1e-10).unwrap();
        assert!((u - 0.7f64.exp()).norm() < 1e-8);
        assert!((v - (-0.7f64).exp()).norm() < 1e-8);
    }

    #[test]
    fn k1_matches_closed_form() {
        let l = c(0.3, 0.0);
        let sol = solve_g(l, 1.0, &[0.5, 1.0, 2.0], 1e-8).unwrap();
        for (s, f) in sol.s.iter().zip(sol.symmetric()) {
            assert!((f - closed_form_k1(l, *s)).norm() < 1e-6, "s = {s}");
        }
    }

    #[test]
    fn closed_form_solves_symmetric_equation() {
        // F = sinh(l s)/(2 l sinh(s/2)): with F = phi/S, S = sinh(s/2),
        // F'' + coth(s/2) F' = (phi'' - phi/4)/S and phi'' = l^2 phi.
        let l = c(0.45, 0.2);
        for s in [0.3f64, 1.0, 2.5] {
            let sh = (s / 2.0).sinh();
            let ch = (s / 2.0).cosh();
            let phi = (l * s).sinh() / (l * 2.0);
            let dphi = (l * s).cosh() / 2.0;
            let ddphi = l * (l * s).sinh() / 2.0;
            let f = phi / sh;
            let df = dphi / sh - phi * (ch / 2.0) / (sh * sh);
            let ddf = ddphi / sh - dphi * ch / (sh * sh) - phi * (sh / 4.0) / (sh * sh)
                + phi * (ch * ch / 2.0) / (sh * sh * sh);
            let r = ddf + df * (ch / sh) - f * (l * l - 0.25);
            assert!(r.norm() < 1e-12, "s = {s}: {r}");
        }
    }

    #[test]
    fn taylor_slope() {
        let l = c(0.3, 0.1);
        let k = 0.8;
        let g = taylor(l, k);
        let want = (l * 2.0 + k) / (1.0 + 2.0 * k);
        assert!((g[1] * 2.0 - want).norm() < 1e-15);
        // one-sided difference of the solution near the origin
        let h = 1e-3;
        let (u, v) = g_at(l, k, h, 1e-12).unwrap();
        assert!(((u - v) / h - want).norm() < 1e-5);
    }

    #[test]
    fn sigma_special_values() {
        for la in [c(0.3, 0.0), c(-1.7, 0.4), c(2.2, -1.1)] {
            assert_eq!(eval_sigma(la, 0.0, SigmaVariant::Asymmetric).unwrap(), c(1.0, 0.0));
            for k in 1..=2 {
                let a = eval_sigma(la, k as f64, SigmaVariant::Asymmetric).unwrap();
                let b = sigma_recurrence(la, k);
                assert!((a - b).norm() <= 1e-12 * b.norm(), "{la} {k}: {a} vs {b}");
            }
        }
        assert!(matches!(eval_sigma(c(-2.0 + 1e-11, 0.0), 1.0, SigmaVariant::Asymmetric), Err(Error::PoleProximity(_))));
    }

    #[test]
    fn gamma_values() {
        let g = ln_gamma(c(5.0, 0.0)).unwrap().exp();
        assert!((g - 24.0).norm() < 1e-12);
        let g = ln_gamma(c(0.5, 0.0)).unwrap().exp();
        assert!((g - std::f64::consts::PI.sqrt()).norm() < 1e-14);
        let g = ln_gamma(c(-0.5, 0.0)).unwrap().exp();
        assert!((g + 2.0 * std::f64::consts::PI.sqrt()).norm() < 1e-13);
    }

    #[test]
    fn intertwiners_and_main_theorem() {
        assert!(intertwiner_s1_residual(c(0.3, 0.0), 1.0, 0.8, 1e-8).unwrap() <= 5e-7);
        assert!(intertwiner_s0_residual(c(0.0, 0.2), 1.0, 0.5, 1e-8).unwrap() <= 5e-7);
        assert!(main_theorem_residual(c(0.4, 0.0), 1.0, 1.0, 1e-8).unwrap() <= 1e-6);
        assert!(main_theorem_residual(c(0.3, 0.2), 0.5, 0.7, 1e-8).unwrap() <= 1e-6);
        assert!(main_theorem_residual(c(0.3, 0.0), 0.0, 2.0, 1e-8).unwrap() <= 1e-10);
        assert!(intertwiner_s1_residual(c(0.3, 0.0), 0.0, 0.8, 1e-8).unwrap() <= 1e-12);
    }
}
