//! Verification suites: each returns a list of [`Check`] records.

use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::coeffs::{BigRational, Coeff, LengthClass, ParamScalar, Params, Poly, Ring, Q, Q_ROOT_DENOM};
use crate::error::Result;
use crate::pairing;
use crate::polyrep::{monomial_box, relations, x, x_mono, Gen, LaurentPoly, PolyOp, PolyRep};
use crate::report::{point_params, rng, Check, Failures, Mode, PointParams};
use crate::rank1::{self, C64};
use crate::ratdiff::{self, RatDiff};
use crate::roots::RootSystem;
use crate::trigdunkl::{self, Dunkl, KappaParams};

fn point_label(seed: Option<u64>) -> Value {
    match seed {
        None => json!("symbolic"),
        Some(s) => json!(s),
    }
}

fn base_params(rs: &RootSystem, seed: Option<u64>, extra: Value) -> Value {
    let mut v = json!({"type": rs.label(), "point": point_label(seed)});
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

/// Runs `f` at every evaluation point of `mode`, symbolic or rational.
macro_rules! at_points {
    ($rs:expr, $mode:expr, $f:ident $(, $arg:expr)*) => {{
        let rs: &RootSystem = $rs;
        $mode
            .seeds()
            .into_par_iter()
            .flat_map(|seed| match point_params(rs.two_m(), seed) {
                Ok(PointParams::Symbolic(p)) => $f(rs, p, seed $(, $arg)*),
                Ok(PointParams::Rational(p)) => $f(rs, p, seed $(, $arg)*),
                Err(e) => vec![Check::error("setup", base_params(rs, seed, json!({})), seed, &e)],
            })
            .collect::<Vec<Check>>()
    }};
}

fn relations_at<C: Coeff>(rs: &RootSystem, p: Params<C>, seed: Option<u64>, box_size: i64, braid_only: bool) -> Vec<Check> {
    let prm = |extra: Value| base_params(rs, seed, extra);
    let rep = match PolyRep::new(rs, p) {
        Ok(r) => r,
        Err(e) => return vec![Check::error("daha.setup", prm(json!({})), seed, &e)],
    };
    let b = json!({"box": box_size});
    let mut out = vec![
        Check::exact("daha.quadratic", prm(b.clone()), seed, Ok(relations::quadratic(&rep, box_size))),
        Check::exact("daha.braid", prm(b.clone()), seed, Ok(relations::braid(&rep, box_size))),
    ];
    if braid_only {
        return out;
    }
    out.push(Check::exact("daha.pi-conjugation", prm(b.clone()), seed, relations::pi_conjugation(&rep, box_size)));
    out.push(Check::exact("daha.t-x-cross", prm(b.clone()), seed, Ok(relations::cross_t_x(&rep, box_size))));
    out.push(Check::exact("daha.pi-x", prm(b.clone()), seed, relations::pi_x(&rep, box_size)));
    out
}

/// Relations (o)-(vi) on the monomial box; only (o) and (i) when `braid_only`.
pub fn daha_relations(rs: &RootSystem, mode: Mode, box_size: i64, braid_only: bool) -> Vec<Check> {
    at_points!(rs, mode, relations_at, box_size, braid_only)
}

fn y_at<C: Coeff>(rs: &RootSystem, p: Params<C>, seed: Option<u64>, box_size: i64) -> Vec<Check> {
    let prm = base_params(rs, seed, json!({"box": box_size}));
    let rep = match PolyRep::new(rs, p) {
        Ok(r) => r,
        Err(e) => return vec![Check::error("y.setup", prm, seed, &e)],
    };
    match relations::y_commutation(&rep, box_size) {
        Ok((c, g)) => vec![
            Check::exact("y.commute", prm.clone(), seed, Ok(c)),
            Check::exact("y.group-law", prm, seed, Ok(g)),
        ],
        Err(e) => vec![Check::error("y.commute", prm, seed, &e)],
    }
}

/// `[Y_b, Y_c] = 0` and `Y_b Y_c = Y_{b+c}`.
pub fn y_operators(rs: &RootSystem, mode: Mode, box_size: i64) -> Vec<Check> {
    at_points!(rs, mode, y_at, box_size)
}

fn macdonald_at<C: Coeff>(rs: &RootSystem, p: Params<C>, seed: Option<u64>, degree: i64, ebox: i64) -> Vec<Check> {
    let rep = match PolyRep::new(rs, p) {
        Ok(r) => r,
        Err(e) => return vec![Check::error("macdonald.setup", base_params(rs, seed, json!({})), seed, &e)],
    };
    vec![
        Check::exact(
            "macdonald.l-vs-y",
            base_params(rs, seed, json!({"degree": degree})),
            seed,
            relations::macdonald_consistency(&rep, degree),
        ),
        Check::exact(
            "intertwiner.spectra",
            base_params(rs, seed, json!({"box": ebox})),
            seed,
            relations::intertwining(&rep, ebox),
        ),
    ]
}

/// `L_r = m_r(Y)` on symmetric polynomials and intertwiner spectral moves.
pub fn macdonald(rs: &RootSystem, mode: Mode, degree: i64, ebox: i64) -> Vec<Check> {
    at_points!(rs, mode, macdonald_at, degree, ebox)
}

/// A random test polynomial of degree `<= 2` whose coefficients are signed
/// Laurent monomials in the parameters.
pub fn random_test_poly<R: Rng>(rs: &RootSystem, rng: &mut R) -> Result<LaurentPoly<ParamScalar>> {
    let n = rs.rank;
    let classes = rs.classes();
    let terms = rng.gen_range(1..=3);
    let mut f = Poly::default();
    for _ in 0..terms {
        let mut b = vec![0i64; n];
        let deg = rng.gen_range(0..=2);
        for _ in 0..deg {
            let i = rng.gen_range(0..n);
            b[i] += if rng.gen_bool(0.5) { 1 } else { -1 };
        }
        let k: i64 = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut c = ParamScalar::from_int(k);
        c = c * ParamScalar::q_pow(Q::new(rng.gen_range(-2..=2), rs.two_m()))?;
        let cls: LengthClass = classes[rng.gen_range(0..classes.len())];
        c = c * ParamScalar::t_half_pow(cls.index(), rng.gen_range(-2..=2));
        f.add_term(x_mono(&b), c);
    }
    Ok(f)
}

/// The generators `X_{+-b_i}`, `T_j^{+-1}`, `pi_r^{+-1}`, `Y_{+-b_i}` with labels.
pub fn generators(rs: &RootSystem) -> Vec<(String, PolyOp<ParamScalar>)> {
    let n = rs.rank;
    let mut out = Vec::new();
    for i in 1..=n {
        for s in [1i64, -1] {
            let b: Vec<i64> = rs.b(i).iter().map(|x| x * s).collect();
            let sign = if s > 0 { "" } else { "-" };
            out.push((format!("X[{sign}b{i}]"), PolyOp::gen(Gen::X(b.clone()))));
            out.push((format!("Y[{sign}b{i}]"), PolyOp::gen(Gen::Y(b))));
        }
    }
    for j in 0..=n {
        out.push((format!("T{j}"), PolyOp::gen(Gen::T(j))));
        out.push((format!("T{j}^-1"), PolyOp::gen(Gen::TInv(j))));
    }
    for r in rs.special_nodes() {
        out.push((format!("pi{r}"), PolyOp::gen(Gen::Pi(r))));
        out.push((format!("pi{r}^-1"), PolyOp::gen(Gen::PiInv(r))));
    }
    out
}

struct PairCase {
    gen: String,
    lhs: LaurentPoly<ParamScalar>,
    rhs: LaurentPoly<ParamScalar>,
}

/// Unitarity of every generator against `mu0` truncated at `q^order`, plus the
/// exact checks in the terminating regimes `t_a = q_a^k`.
pub fn pairing_unitarity(rs: &RootSystem, order: i64, seed: u64, pairs: usize) -> Vec<Check> {
    let prm = |extra: Value| {
        let mut v = json!({"type": rs.label(), "qorder": order});
        if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
            m.extend(e);
        }
        v
    };
    let mut out = Vec::new();
    let built = (|| -> Result<(Vec<PairCase>, i64, i64)> {
        let rep = PolyRep::new(rs, Params::symbolic(rs.two_m())?)?;
        let mut r = rng(seed);
        let fg: Vec<_> = (0..pairs)
            .map(|_| Ok((random_test_poly(rs, &mut r)?, random_test_poly(rs, &mut r)?)))
            .collect::<Result<_>>()?;
        let heights = pairing::Heights::new(rs);
        let mut cases = Vec::new();
        let (mut min_e, mut max_h) = (0i64, 0i64);
        for (name, op) in generators(rs) {
            let star = op.star()?;
            for (f, g) in &fg {
                let lhs = op.apply(&rep, f)? * crate::polyrep::star_poly(g);
                let rhs = f.clone() * crate::polyrep::star_poly(&star.apply(&rep, g)?);
                for p in [&lhs, &rhs] {
                    min_e = min_e.min(pairing::min_q_exponent(p)?);
                    max_h = max_h.max(pairing::max_dual_height(&heights, p, rs.rank));
                }
                cases.push(PairCase { gen: name.clone(), lhs, rhs });
            }
        }
        let extra = (-min_e + Q_ROOT_DENOM - 1) / Q_ROOT_DENOM;
        Ok((cases, extra, max_h))
    })();
    let (cases, extra, height) = match built {
        Ok(v) => v,
        Err(e) => return vec![Check::error("pairing.setup", prm(json!({})), Some(seed), &e)],
    };
    let mu = match pairing::mu0_series(rs, order + extra, height) {
        Ok(m) => m,
        Err(e) => return vec![Check::error("pairing.mu0", prm(json!({})), Some(seed), &e)],
    };
    let mut by_gen: Vec<(String, Result<Failures>)> = Vec::new();
    for chunk in cases.chunk_by(|a, b| a.gen == b.gen) {
        let res = chunk
            .par_iter()
            .map(|c| -> Result<bool> {
                let a = pairing::constant_term(&mu, &c.lhs, order)?;
                let b = pairing::constant_term(&mu, &c.rhs, order)?;
                Ok(a == b)
            })
            .collect::<Result<Vec<bool>>>()
            .map(|v| {
                let mut f = Failures::new();
                for (i, ok) in v.into_iter().enumerate() {
                    f.record(ok, || format!("pair {i}"));
                }
                f
            });
        by_gen.push((chunk[0].gen.clone(), res));
    }
    for (g, res) in by_gen {
        out.push(Check::exact(
            format!("pairing.unitarity.{g}"),
            prm(json!({"generator": g, "pairs": pairs, "mu0_order": order + extra, "height": height})),
            Some(seed),
            res,
        ));
    }
    out.push(Check::exact(
        "pairing.mu0-stability",
        prm(json!({"height": height})),
        Some(seed),
        pairing::stability_failures(rs, order.min(4) + 1, height.max(2)),
    ));
    for k in 1..=2 {
        out.extend(regime_checks(rs, order, seed, k, height.max(2)));
    }
    out
}

/// Exact checks where `mu` terminates: star-symmetry of `mu0`, agreement with
/// the truncated symbolic expansion, hermitian symmetry and unitarity.
fn regime_checks(rs: &RootSystem, order: i64, seed: u64, k: i64, height: i64) -> Vec<Check> {
    let prm = json!({"type": rs.label(), "k": k, "qorder": order});
    let exact = match pairing::mu0_exact_regime(rs, k) {
        Ok(m) => m,
        Err(e) => return vec![Check::error("pairing.regime", prm, Some(seed), &e)],
    };
    let mut out = Vec::new();
    let mut f = Failures::new();
    f.record(pairing::is_star_symmetric(&exact), || "mu0 is not star-symmetric".into());
    out.push(Check::exact("pairing.mu0-star-symmetry", prm.clone(), Some(seed), Ok(f)));

    let agree = (|| -> Result<Failures> {
        let ord = order.min(4);
        let mu = pairing::mu0_series(rs, ord, height)?;
        let prec = (ord + 1) * Q_ROOT_DENOM;
        let mut f = Failures::new();
        for (m, c) in exact.terms() {
            let cv = m.to_vec(rs.rank);
            if mu.heights().height(&cv) > Q::from_integer(height) {
                continue;
            }
            let lhs = pairing::specialize_series(&mu.coeff(&cv)?, k, prec)?;
            let rhs = pairing::scalar_to_u_series(c, prec)?;
            f.record(lhs == rhs, || format!("X^{cv:?}"));
        }
        Ok(f)
    })();
    out.push(Check::exact("pairing.mu0-regime-agreement", prm.clone(), Some(seed), agree));

    let herm = (|| -> Result<(Failures, Failures)> {
        let rep = PolyRep::new(rs, pairing::regime_params(rs, k)?)?;
        let mut r = rng(seed ^ 0x5eed);
        let regime = |f: &LaurentPoly<ParamScalar>| -> Result<LaurentPoly<ParamScalar>> {
            let p = pairing::regime_params(rs, k)?;
            let u = ParamScalar::u_pow(1);
            let th = [0, 1, 2].map(|i| p.t_half(LengthClass::ALL[i]).clone());
            f.try_map_coeffs(|c| c.eval(&u, &th))
        };
        let mut h = Failures::new();
        for i in 0..10 {
            let f = regime(&random_test_poly(rs, &mut r)?)?;
            let g = regime(&random_test_poly(rs, &mut r)?)?;
            let a = pairing::pairing_exact(&exact, &f, &g);
            let b = crate::coeffs::Star::star(&pairing::pairing_exact(&exact, &g, &f));
            h.record(a == b, || format!("pair {i}"));
        }
        let mut u = Failures::new();
        let f = regime(&random_test_poly(rs, &mut r)?)?;
        let g = regime(&random_test_poly(rs, &mut r)?)?;
        for (name, op) in generators(rs) {
            let a = pairing::pairing_exact(&exact, &op.apply(&rep, &f)?, &g);
            let b = pairing::pairing_exact(&exact, &f, &op.star()?.apply(&rep, &g)?);
            u.record(a == b, || name.clone());
        }
        Ok((h, u))
    })();
    match herm {
        Ok((h, u)) => {
            out.push(Check::exact("pairing.hermitian", prm.clone(), Some(seed), Ok(h)));
            out.push(Check::exact("pairing.unitarity-exact", prm, Some(seed), Ok(u)));
        }
        Err(e) => out.push(Check::error("pairing.hermitian", prm, Some(seed), &e)),
    }
    out
}

/// Random positive `kappa` per length class.
pub fn random_kappa(seed: u64) -> KappaParams {
    let mut r = rng(seed);
    KappaParams::new([0; 3].map(|_| BigRational::new(r.gen_range(1..=9).into(), r.gen_range(1..=7).into())))
}

/// `kappa` at each point of `mode`; symbolic mode uses three fixed generic values.
fn kappa_points(mode: Mode) -> Vec<(u64, KappaParams)> {
    let seeds: Vec<u64> = match mode {
        Mode::Symbolic => vec![1, 2, 3],
        Mode::Generic { .. } => mode.seeds().into_iter().flatten().collect(),
    };
    seeds.into_iter().map(|s| (s, random_kappa(s))).collect()
}

fn kappa_json(kp: &KappaParams) -> Value {
    json!(kp.kappa.iter().map(|k| k.to_string()).collect::<Vec<_>>())
}

/// `[D_b, D_c] = 0`, the degenerate relations and intertwiner moves at generic `kappa`.
pub fn dunkl(rs: &RootSystem, mode: Mode, box_size: i64, ebox: i64) -> Vec<Check> {
    let mut out: Vec<Check> = kappa_points(mode)
        .into_par_iter()
        .flat_map(|(seed, kp)| {
            let prm = |b: i64| json!({"type": rs.label(), "kappa": kappa_json(&kp), "box": b});
            let d = Dunkl::new(rs, kp.clone());
            vec![
                Check::exact("dunkl.commute", prm(box_size), Some(seed), Ok(trigdunkl::commutators(&d, box_size))),
                Check::exact("dunkl.relations", prm(box_size), Some(seed), Ok(trigdunkl::degenerate_relations(&d, box_size))),
                Check::exact("dunkl.intertwiners", prm(ebox), Some(seed), trigdunkl::intertwiner_moves(&d, ebox)),
            ]
        })
        .collect();
    // integral k_alpha = 1 for every class, so tau is a Laurent polynomial
    let kp = KappaParams::new(LengthClass::ALL.map(|c| BigRational::from_integer(2.into()) / crate::coeffs::q_to_big(c.nu())));
    let d = Dunkl::new(rs, kp.clone());
    let prm = json!({"type": rs.label(), "kappa": kappa_json(&kp), "box": 1});
    out.push(Check::exact("dunkl.tau-self-adjoint", prm, None, trigdunkl::self_adjointness(&d, 1)));
    out
}

/// The differential degeneration `Y_b = 1 - h D_b + O(h^2)` on the monomial box.
pub fn differential_limit(rs: &RootSystem, mode: Mode, box_size: i64, order: i64) -> Vec<Check> {
    kappa_points(mode)
        .into_par_iter()
        .map(|(seed, kp)| {
            let prm = json!({"type": rs.label(), "kappa": kappa_json(&kp), "box": box_size, "horder": order});
            let d = Dunkl::new(rs, kp);
            let res = (|| -> Result<Failures> {
                let mut f = Failures::new();
                for c in monomial_box(rs.rank, box_size) {
                    for i in 1..=rs.rank {
                        let r = trigdunkl::differential_limit_residual(&d, &rs.b(i), &x(&c), order)?;
                        f.record(r.is_zero(), || format!("Y_b{i} on X^{c:?}"));
                    }
                }
                Ok(f)
            })();
            Check::exact("limits.differential", prm, Some(seed), res)
        })
        .collect()
}

/// `S_j^2 = 1`, braid and `pi`-conjugation, the group law, `lambda` relations,
/// `[Delta_b, Delta_c] = 0` and the two forms of `Lambda_r`, at generic `kappa`.
pub fn ratdiff(rs: &RootSystem, mode: Mode, degree: i64, pairs: usize) -> Vec<Check> {
    kappa_points(mode)
        .into_par_iter()
        .flat_map(|(seed, kp)| {
            let prm = |d: i64| json!({"type": rs.label(), "kappa": kappa_json(&kp), "degree": d});
            let rd = RatDiff::new(rs, kp.clone());
            let mut out = match ratdiff::hecke_relations(&rd, degree) {
                Ok((sq, br)) => vec![
                    Check::exact("ratdiff.quadratic", prm(degree), Some(seed), Ok(sq)),
                    Check::exact("ratdiff.braid", prm(degree), Some(seed), Ok(br)),
                ],
                Err(e) => vec![Check::error("ratdiff.quadratic", prm(degree), Some(seed), &e)],
            };
            out.push(Check::exact("ratdiff.pi-conjugation", prm(degree), Some(seed), ratdiff::pi_conjugation(&rd, degree)));
            let mut hp = prm(2);
            hp["pairs"] = json!(pairs);
            out.push(Check::exact("ratdiff.homomorphism", hp, Some(seed), ratdiff::homomorphism(&rd, pairs, 2, &mut rng(seed))));
            out.push(Check::exact("ratdiff.lambda-relations", prm(degree), Some(seed), ratdiff::lambda_relations(&rd, degree)));
            out.push(Check::exact("ratdiff.delta-commute", prm(degree), Some(seed), ratdiff::delta_commute(&rd, degree)));
            out.push(Check::exact("ratdiff.lambda-r", prm(2), Some(seed), ratdiff::lambda_consistency(&rd, 2)));
            out
        })
        .collect()
}

/// The difference-rational degeneration of `T_j` on `lambda`-monomials.
pub fn difference_limit(rs: &RootSystem, mode: Mode, degree: i64, order: usize) -> Vec<Check> {
    kappa_points(mode)
        .into_par_iter()
        .map(|(seed, kp)| {
            let prm = json!({"type": rs.label(), "kappa": kappa_json(&kp), "degree": degree, "horder": order});
            let rd = RatDiff::new(rs, kp);
            Check::exact("limits.difference", prm, Some(seed), ratdiff::difference_limit(&rd, degree, order))
        })
        .collect()
}

/// `sigma^{-1} S_j^+ sigma = S_j^{-1}` at `k_alpha = k` for `k` in `ks`.
pub fn sigma_unitarity(rs: &RootSystem, ks: &[i64], degree: i64) -> Vec<Check> {
    ks.iter()
        .map(|&k| {
            let kp = KappaParams::new(LengthClass::ALL.map(|c| BigRational::from_integer((2 * k).into()) / crate::coeffs::q_to_big(c.nu())));
            let prm = json!({"type": rs.label(), "k": k, "degree": degree});
            let rd = RatDiff::new(rs, kp);
            Check::exact(format!("ratdiff.sigma-unitarity.k{k}"), prm, None, ratdiff::sigma_unitarity(&rd, degree))
        })
        .collect()
}

/// Rank-one numerical checks over a grid of `(k, lambda, s)`.
pub struct Rank1Grid {
    pub ks: Vec<f64>,
    pub lambdas: Vec<C64>,
    pub ss: Vec<f64>,
    pub tol: f64,
    pub seed: u64,
}

impl Default for Rank1Grid {
    fn default() -> Self {
        Rank1Grid {
            ks: vec![0.5, 1.0, 2.0],
            lambdas: vec![C64::new(0.3, 0.0), C64::new(0.4, 0.0), C64::new(0.3, 0.2)],
            ss: vec![0.5, 1.0, 2.0],
            tol: 1e-8,
            seed: 0,
        }
    }
}

fn c_json(z: C64) -> Value {
    json!([z.re, z.im])
}

/// Maximum of `f` over the grid, or the first error.
fn grid_max<F>(g: &Rank1Grid, ks: &[f64], f: F) -> Result<f64>
where
    F: Fn(f64, C64, f64) -> Result<f64> + Sync,
{
    let pts: Vec<(f64, C64, f64)> =
        ks.iter().flat_map(|&k| g.lambdas.iter().flat_map(move |&l| g.ss.iter().map(move |&s| (k, l, s)))).collect();
    let vals = pts.par_iter().map(|&(k, l, s)| f(k, l, s)).collect::<Result<Vec<f64>>>()?;
    Ok(vals.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

fn numeric(name: &str, prm: Value, seed: Option<u64>, r: Result<f64>, threshold: f64) -> Check {
    match r {
        Ok(v) => Check::numeric(name, prm, seed, v, threshold),
        Err(e) => Check::error(name, prm, seed, &e),
    }
}

pub fn rank1(g: &Rank1Grid) -> Vec<Check> {
    let tol = g.tol;
    let prm = |extra: Value| {
        let mut v = json!({
            "type": "A1",
            "k": g.ks,
            "lambda": g.lambdas.iter().map(|z| c_json(*z)).collect::<Vec<_>>(),
            "s": g.ss,
            "tol": tol,
        });
        if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
            m.extend(e);
        }
        v
    };
    let positive: Vec<f64> = g.ks.iter().copied().filter(|&k| k > 0.0).collect();
    let mut out = vec![
        numeric("rank1.main-theorem", prm(json!({})), None, grid_max(g, &g.ks, |k, l, s| rank1::main_theorem_residual(l, k, s, tol)), 100.0 * tol),
        numeric("rank1.main-theorem.k0", prm(json!({"k": [0.0]})), None, grid_max(g, &[0.0], |k, l, s| rank1::main_theorem_residual(l, k, s, tol)), 1e-10),
        numeric("rank1.intertwiner-s1", prm(json!({})), None, grid_max(g, &g.ks, |k, l, s| rank1::intertwiner_s1_residual(l, k, s, tol)), 50.0 * tol),
        numeric("rank1.intertwiner-s0", prm(json!({})), None, grid_max(g, &g.ks, |k, l, s| rank1::intertwiner_s0_residual(l, k, s, tol)), 50.0 * tol),
    ];
    // symmetric eigen-ODE: worst ratio of residual to its contract max(1e-5, h^2 C),
    // with the observed order of the residual under grid halving
    let (h, s_max) = (0.005, g.ss.iter().copied().fold(1.0, f64::max));
    let eig = (|| -> Result<(f64, f64, f64)> {
        let pts: Vec<(f64, C64)> = g.ks.iter().flat_map(|&k| g.lambdas.iter().map(move |&l| (k, l))).collect();
        let r = pts
            .par_iter()
            .map(|&(k, l)| {
                let fine = rank1::symmetric_eigen(l, k, 0.25, s_max, h, tol.min(1e-11))?;
                let coarse = rank1::symmetric_eigen(l, k, 0.25, s_max, 2.0 * h, tol.min(1e-11))?;
                Ok((fine.residual / fine.threshold, fine.constant, (coarse.residual / fine.residual).log2()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(r.iter().fold((0.0f64, 0.0f64, f64::INFINITY), |(a, c, o), e| (a.max(e.0), c.max(e.1), o.min(e.2))))
    })();
    out.push(match eig {
        Ok((ratio, c, order)) => Check::numeric(
            "rank1.symmetric-eigen",
            prm(json!({"h": h, "constant": c, "observed_order": order, "measure": "residual / max(1e-5, h^2 C)"})),
            None,
            ratio,
            1.0,
        ),
        Err(e) => Check::error("rank1.symmetric-eigen", prm(json!({})), None, &e),
    });
    let closed = (|| -> Result<f64> {
        let mut worst = 0.0f64;
        for &l in &g.lambdas {
            let sol = rank1::solve_g(l, 1.0, &g.ss, tol)?;
            for (s, f) in sol.s.iter().zip(sol.symmetric()) {
                worst = worst.max((f - rank1::closed_form_k1(l, *s)).norm());
            }
        }
        Ok(worst)
    })();
    out.push(numeric("rank1.closed-form-k1", prm(json!({"k": [1.0]})), None, closed, 1e-6));
    let sym = grid_max(g, &g.ks, |k, l, s| {
        let (u, v) = rank1::g_at(l, k, s, tol)?;
        let (um, vm) = rank1::g_at(-l, k, s, tol)?;
        Ok(((u + v) - (um + vm)).norm() / 2.0)
    });
    out.push(numeric("rank1.w-symmetry", prm(json!({})), None, sym, 1e-7));
    let imag = Rank1Grid {
        ks: g.ks.clone(),
        lambdas: vec![C64::new(0.0, 0.7), C64::new(0.0, 1.3), C64::new(0.0, 3.0)],
        ss: g.ss.clone(),
        tol,
        seed: g.seed,
    };
    let bound = grid_max(&imag, &positive, |k, l, s| {
        let (u, v) = rank1::g_at(l, k, s, tol)?;
        Ok(u.norm().max(v.norm()) / 2f64.sqrt() - 1.0)
    });
    out.push(numeric("rank1.boundedness", prm(json!({"lambda": [[0.0, 0.7], [0.0, 1.3], [0.0, 3.0]], "bound": "sqrt(|W|)"})), None, bound, 1e-6));
    let (lam, smax) = (C64::new(2.5, 0.0), 2.0);
    let steps = [16usize, 32, 64];
    let errs: Vec<f64> = steps
        .iter()
        .map(|&n| {
            let y = rank1::fixed_step_raw(lam, 0.0, smax, n);
            (y[0] - (lam * smax).exp()).norm()
        })
        .collect();
    let order = (errs[1] / errs[2]).log2().min((errs[0] / errs[1]).log2());
    out.push(Check::numeric(
        "rank1.convergence-order",
        json!({"type": "A1", "k": 0.0, "lambda": c_json(lam), "s_max": smax, "steps": steps, "errors": errs, "measure": "4 - observed order"}),
        None,
        4.0 - order,
        0.0,
    ));
    out.extend(sigma_checks(g.seed, 100));
    out
}

/// `sigma` and `sigma'` against the Gamma recurrence at `k = 1, 2` on random `lambda`.
pub fn sigma_checks(seed: u64, points: usize) -> Vec<Check> {
    let mut r = rng(seed);
    let pts: Vec<C64> = (0..points).map(|_| C64::new(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0))).collect();
    let mut out = Vec::new();
    for variant in [rank1::SigmaVariant::Asymmetric, rank1::SigmaVariant::Symmetric] {
        let res = (|| -> Result<f64> {
            let mut worst = 0.0f64;
            for &l in &pts {
                let la = l * 2.0;
                for k in 1..=2u32 {
                    let want = match variant {
                        rank1::SigmaVariant::Asymmetric => rank1::sigma_recurrence(la, k),
                        rank1::SigmaVariant::Symmetric => {
                            (0..k).fold(C64::new(1.0, 0.0), |acc, i| acc * (la + i as f64) * (i as f64 - la))
                        }
                    };
                    let got = rank1::eval_sigma(la, k as f64, variant)?;
                    worst = worst.max((got - want).norm() / want.norm());
                }
            }
            Ok(worst)
        })();
        let name = match variant {
            rank1::SigmaVariant::Asymmetric => "rank1.sigma",
            rank1::SigmaVariant::Symmetric => "rank1.sigma-symmetric",
        };
        out.push(numeric(name, json!({"type": "A1", "k": [1, 2], "points": points, "measure": "max relative error"}), Some(seed), res, 1e-12));
    }
    out
}

/// Order of `s_i s_j` read off the affine diagram, `None` for an infinite bond.
pub fn diagram_order(rs: &RootSystem, i: usize, j: usize) -> Option<usize> {
    if i == j {
        return Some(1);
    }
    let v = |k: usize| -> Vec<Q> {
        if k == 0 {
            rs.root_vec(rs.theta()).iter().map(|x| -*x).collect()
        } else {
            rs.root_vec(rs.simple_root(k))
        }
    };
    let (a, b) = (v(i), v(j));
    let ab = rs.ip_q(&a, &b);
    let prod = ab * ab * 4 / (rs.ip_q(&a, &a) * rs.ip_q(&b, &b));
    match prod.to_integer() {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

fn random_affine_element<R: Rng>(rs: &RootSystem, rng: &mut R) -> crate::roots::ExtAffWeyl {
    let len = rng.gen_range(0..8);
    let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=rs.rank)).collect();
    let specials = rs.special_nodes();
    let r = if specials.is_empty() { 0 } else { specials[rng.gen_range(0..specials.len())] };
    rs.pi(r).mul(&rs.word(&word))
}

fn coxeter_checks<R: Rng>(rs: &RootSystem, rng: &mut R) -> Failures {
    let mut f = Failures::new();
    let n = rs.rank;
    for _ in 0..10 {
        let z: Vec<Q> = (0..n).map(|_| Q::new(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
        let zeta = Q::new(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        for i in 0..=n {
            for j in i..=n {
                let Some(m) = diagram_order(rs, i, j) else { continue };
                let g = rs.s(i).mul(&rs.s(j)).pow(m);
                let got = rs.apply_affine_vector(&g, &z, zeta);
                f.record(got == (z.clone(), zeta), || format!("(s_{i} s_{j})^{m} moves {z:?}"));
            }
        }
    }
    f
}

fn length_checks<R: Rng>(rs: &RootSystem, rng: &mut R) -> Result<Failures> {
    let mut f = Failures::new();
    for _ in 0..20 {
        let (w, u) = (random_affine_element(rs, rng), random_affine_element(rs, rng));
        let wu = w.mul(&u);
        let l = rs.length(&wu);
        f.record(l <= rs.length(&w) + rs.length(&u), || "length is not subadditive".into());
        let rw = rs.reduced_word(&wu)?;
        f.record(rw.word.len() == l && rs.from_word(&rw) == wu, || format!("reduced word {rw:?} does not rebuild"));
    }
    Ok(f)
}

fn dominant_length_checks(rs: &RootSystem) -> Failures {
    let mut f = Failures::new();
    let rho = rs.rho();
    for b in monomial_box(rs.rank, 3) {
        if !rs.is_dominant(&b) || b.iter().sum::<i64>() > 3 {
            continue;
        }
        let bq: Vec<Q> = b.iter().map(|&x| Q::from_integer(x)).collect();
        let expect = rs.ip_q(&bq, &rho) * 2;
        let got = Q::from_integer(rs.length(&rs.translation(&b)) as i64);
        f.record(got == expect, || format!("length of b = {b:?} is {got}, expected {expect}"));
    }
    f
}

fn pi_permutes_simples(rs: &RootSystem) -> Result<Failures> {
    let mut f = Failures::new();
    for m in rs.minuscule() {
        let pi_inv = m.pi.inverse();
        for i in 0..=rs.rank {
            let image = rs.apply_affine_root(&m.pi, rs.affine_simple(i));
            let Some(j) = (0..=rs.rank).find(|&j| rs.affine_simple(j) == image) else {
                f.record(false, || format!("pi_{} sends alpha_{i} outside the simple roots", m.r));
                continue;
            };
            let conj = m.pi.mul(&rs.s(i)).mul(&pi_inv);
            f.record(conj == rs.s(j), || format!("pi_{} s_{i} pi_{}^-1 != s_{j}", m.r, m.r));
        }
    }
    Ok(f)
}

/// Coxeter relations, lengths, reduced words and the action of `Pi`.
pub fn roots(rs: &RootSystem, seed: u64) -> Vec<Check> {
    let prm = |extra: Value| base_params(rs, None, extra);
    let mut r = rng(seed);
    vec![
        Check::exact("roots.coxeter", prm(json!({"vectors": 10})), Some(seed), Ok(coxeter_checks(rs, &mut r))),
        Check::exact("roots.lengths", prm(json!({"pairs": 20})), Some(seed), length_checks(rs, &mut r)),
        Check::exact("roots.dominant-length", prm(json!({"degree": 3})), None, Ok(dominant_length_checks(rs))),
        Check::exact("roots.pi-conjugation", prm(json!({})), None, pi_permutes_simples(rs)),
    ]
}
