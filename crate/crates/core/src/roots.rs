//! Root systems, affine roots and the extended affine Weyl group.
//!
//! Vectors of the Euclidean space are stored in *b-coordinates*:
//! `z -> ((z, alpha_1), ..., (z, alpha_n))`, so that a coweight
//! `b = sum n_i b_i` is the integer vector `n`. The finite Weyl group acts on
//! these coordinates by integer matrices.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::coeffs::{LengthClass, Q};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl RootType {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(RootType::A),
            "B" => Ok(RootType::B),
            "C" => Ok(RootType::C),
            "D" => Ok(RootType::D),
            "E" => Ok(RootType::E),
            "F" => Ok(RootType::F),
            "G" => Ok(RootType::G),
            other => Err(Error::Config(format!("unknown root type {other:?}"))),
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One root of `R`, positive or negative.
#[derive(Clone, Debug)]
pub struct Root {
    /// Coefficients in the simple roots.
    pub alpha: Vec<i64>,
    /// b-coordinates of the coroot, `((alpha^v, alpha_j))_j`.
    pub coroot: Vec<i64>,
    pub nu: Q,
    pub class: LengthClass,
    pub positive: bool,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.alpha.iter().sum()
    }
}

/// Affine root `[alpha, k]` with `alpha` given by its index in [`RootSystem::roots`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub root: usize,
    pub k: i64,
}

/// Element `w b` of the extended affine Weyl group `W x| B`, acting by
/// `[z, zeta] -> [w(z), zeta - (z, b)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtAffWeyl {
    n: usize,
    w: Vec<i64>,
    w_inv: Vec<i64>,
    b: Vec<i64>,
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += x * b[k * n + j];
            }
        }
    }
    c
}

fn mat_vec(n: usize, a: &[i64], v: &[i64]) -> Vec<i64> {
    (0..n).map(|i| (0..n).map(|k| a[i * n + k] * v[k]).sum()).collect()
}

fn mat_vec_q(n: usize, a: &[i64], v: &[Q]) -> Vec<Q> {
    (0..n)
        .map(|i| (0..n).fold(Q::zero(), |acc, k| acc + v[k] * a[i * n + k]))
        .collect()
}

fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

impl ExtAffWeyl {
    pub fn identity(n: usize) -> Self {
        ExtAffWeyl { n, w: identity(n), w_inv: identity(n), b: vec![0; n] }
    }

    /// Pure translation by the coweight `b`.
    pub fn translation(b: &[i64]) -> Self {
        let n = b.len();
        ExtAffWeyl { n, w: identity(n), w_inv: identity(n), b: b.to_vec() }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Translation part `b` of `w b`.
    pub fn translation_part(&self) -> &[i64] {
        &self.b
    }

    /// Finite part `w` as an element with zero translation.
    pub fn finite_part(&self) -> ExtAffWeyl {
        ExtAffWeyl { n: self.n, w: self.w.clone(), w_inv: self.w_inv.clone(), b: vec![0; self.n] }
    }

    pub fn is_finite(&self) -> bool {
        self.b.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, o: &ExtAffWeyl) -> ExtAffWeyl {
        let n = self.n;
        let w = mat_mul(n, &self.w, &o.w);
        let w_inv = mat_mul(n, &o.w_inv, &self.w_inv);
        let shifted = mat_vec(n, &o.w_inv, &self.b);
        let b = shifted.iter().zip(&o.b).map(|(x, y)| x + y).collect();
        ExtAffWeyl { n, w, w_inv, b }
    }

    pub fn inverse(&self) -> ExtAffWeyl {
        let n = self.n;
        let b = mat_vec(n, &self.w, &self.b).into_iter().map(|x| -x).collect();
        ExtAffWeyl { n, w: self.w_inv.clone(), w_inv: self.w.clone(), b }
    }

    /// Finite part applied to an integer vector in b-coordinates.
    pub fn apply_w(&self, v: &[i64]) -> Vec<i64> {
        mat_vec(self.n, &self.w, v)
    }

    pub fn apply_w_inv(&self, v: &[i64]) -> Vec<i64> {
        mat_vec(self.n, &self.w_inv, v)
    }

    pub fn apply_w_q(&self, v: &[Q]) -> Vec<Q> {
        mat_vec_q(self.n, &self.w, v)
    }

    pub fn pow(&self, k: usize) -> ExtAffWeyl {
        let mut acc = ExtAffWeyl::identity(self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// `(r, word)` with `w = pi_r s_{word[0]} s_{word[1]} ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedWord {
    pub r: usize,
    pub word: Vec<usize>,
}

/// Data attached to a special node `r` of the affine diagram.
#[derive(Clone, Debug)]
pub struct Minuscule {
    pub r: usize,
    pub r_star: usize,
    pub b_r: Vec<i64>,
    pub pi: ExtAffWeyl,
    pub omega: ExtAffWeyl,
    /// `pi_r(alpha_j) = alpha_{perm[j]}` for `0 <= j <= n`.
    pub perm: Vec<usize>,
}

/// Immutable tables for one irreducible reduced root system.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub kind: RootType,
    pub rank: usize,
    /// `(alpha_i, alpha_j)`.
    gram: Vec<Vec<Q>>,
    /// `(b_i, b_j)`.
    gram_inv: Vec<Vec<Q>>,
    /// `cartan[i][j] = (alpha_i, alpha_j^v)`.
    cartan: Vec<Vec<i64>>,
    roots: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    simple: Vec<usize>,
    theta: usize,
    two_m: i64,
    minuscule: Vec<Minuscule>,
}

fn dynkin(kind: RootType, n: usize) -> Result<(Vec<Q>, Vec<(usize, usize)>)> {
    let bad = || Err(Error::Config(format!("unsupported root system {kind}{n}")));
    if n == 0 || n > 8 {
        return bad();
    }
    let chain: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    let two = Q::from_integer(2);
    let one = Q::one();
    Ok(match kind {
        RootType::A => (vec![two; n], chain),
        RootType::B => {
            if n < 2 {
                return bad();
            }
            let mut nu = vec![two; n];
            nu[n - 1] = one;
            (nu, chain)
        }
        RootType::C => {
            if n < 2 {
                return bad();
            }
            let mut nu = vec![one; n];
            nu[n - 1] = two;
            (nu, chain)
        }
        RootType::D => {
            if n < 4 {
                return bad();
            }
            let mut edges: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
            edges.push((n - 3, n - 1));
            (vec![two; n], edges)
        }
        RootType::E => {
            if !(6..=8).contains(&n) {
                return bad();
            }
            let mut edges = vec![(0, 2), (1, 3), (2, 3)];
            for i in 3..n - 1 {
                edges.push((i, i + 1));
            }
            (vec![two; n], edges)
        }
        RootType::F => {
            if n != 4 {
                return bad();
            }
            (vec![two, two, one, one], chain)
        }
        RootType::G => {
            if n != 2 {
                return bad();
            }
            (vec![Q::new(2, 3), two], chain)
        }
    })
}

fn invert_q(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular Gram matrix");
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

impl RootSystem {
    pub fn new(kind: RootType, rank: usize) -> Result<Self> {
        let (nu, edges) = dynkin(kind, rank)?;
        let n = rank;
        let mut gram = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            gram[i][i] = nu[i];
        }
        for &(i, j) in &edges {
            let v = -std::cmp::max(nu[i], nu[j]) / 2;
            gram[i][j] = v;
            gram[j][i] = v;
        }
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = gram[i][j] * 2 / nu[j];
                        assert!(c.is_integer());
                        c.to_integer()
                    })
                    .collect()
            })
            .collect();
        let gram_inv = invert_q(&gram);

        // Closure of the simple roots under simple reflections, in alpha-coordinates.
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(a) = queue.pop_front() {
            for i in 0..n {
                let c: i64 = (0..n).map(|k| a[k] * cartan[k][i]).sum();
                let mut b = a.clone();
                b[i] -= c;
                if seen.insert(b.clone()) {
                    queue.push_back(b);
                }
            }
        }
        let mut alphas: Vec<Vec<i64>> = seen.into_iter().collect();
        alphas.sort_by(|x, y| {
            let hx: i64 = x.iter().sum();
            let hy: i64 = y.iter().sum();
            (hx < 0).cmp(&(hy < 0)).then(hx.abs().cmp(&hy.abs())).then(y.cmp(x))
        });
        let mut roots = Vec::with_capacity(alphas.len());
        for a in alphas {
            let bq: Vec<Q> =
                (0..n).map(|j| (0..n).fold(Q::zero(), |acc, i| acc + gram[i][j] * a[i])).collect();
            let nu_a = (0..n).fold(Q::zero(), |acc, j| acc + bq[j] * a[j]);
            let coroot: Vec<i64> = bq
                .iter()
                .map(|x| {
                    let c = *x * 2 / nu_a;
                    assert!(c.is_integer());
                    c.to_integer()
                })
                .collect();
            let positive = a.iter().all(|&x| x >= 0);
            roots.push(Root { alpha: a, coroot, nu: nu_a, class: LengthClass::from_nu(nu_a)?, positive });
        }
        let index: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.coroot.clone(), i)).collect();
        let simple: Vec<usize> = (0..n)
            .map(|i| roots.iter().position(|r| r.alpha.iter().enumerate().all(|(k, &x)| x == (k == i) as i64)).unwrap())
            .collect();
        let theta = (0..roots.len())
            .filter(|&i| roots[i].positive)
            .max_by_key(|&i| roots[i].height())
            .unwrap();

        let two_m = 2 * match (kind, n % 2 == 0) {
            (RootType::D, true) => 2,
            (RootType::C, false) => 2,
            (RootType::C, true) | (RootType::B, _) => 1,
            _ => 1 + roots[theta].alpha.iter().filter(|&&c| c == 1).count() as i64,
        };

        let mut rs = RootSystem {
            kind,
            rank: n,
            gram,
            gram_inv,
            cartan,
            roots,
            index,
            simple,
            theta,
            two_m,
            minuscule: Vec::new(),
        };
        rs.minuscule = rs.build_minuscule()?;
        Ok(rs)
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = (usize, &Root)> {
        self.roots.iter().enumerate().filter(|(_, r)| r.positive)
    }

    pub fn simple_root(&self, i: usize) -> usize {
        self.simple[i - 1]
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    /// b-coordinates of `theta` (which equals its coroot).
    pub fn theta_vec(&self) -> &[i64] {
        &self.roots[self.theta].coroot
    }

    /// `2m`, the denominator of admissible `q`-exponents.
    pub fn two_m(&self) -> i64 {
        self.two_m
    }

    pub fn gram(&self) -> &[Vec<Q>] {
        &self.gram
    }

    pub fn coweight_gram(&self) -> &[Vec<Q>] {
        &self.gram_inv
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn nu_simple(&self, i: usize) -> Q {
        self.gram[i - 1][i - 1]
    }

    /// Length class of `alpha_j`, `0 <= j <= n` (`alpha_0` is long).
    pub fn class_of(&self, j: usize) -> LengthClass {
        if j == 0 {
            LengthClass::Long
        } else {
            self.roots[self.simple[j - 1]].class
        }
    }

    pub fn classes(&self) -> Vec<LengthClass> {
        let mut v: Vec<LengthClass> = self.roots.iter().map(|r| r.class).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn root_index(&self, coroot: &[i64]) -> Option<usize> {
        self.index.get(coroot).copied()
    }

    pub fn neg_root(&self, i: usize) -> usize {
        let v: Vec<i64> = self.roots[i].coroot.iter().map(|x| -x).collect();
        self.index[&v]
    }

    /// `(z, z')` for integer b-coordinates.
    pub fn ip(&self, z: &[i64], z2: &[i64]) -> Q {
        let n = self.rank;
        let mut acc = Q::zero();
        for i in 0..n {
            if z[i] == 0 {
                continue;
            }
            for j in 0..n {
                if z2[j] != 0 {
                    acc += self.gram_inv[i][j] * (z[i] * z2[j]);
                }
            }
        }
        acc
    }

    pub fn ip_q(&self, z: &[Q], z2: &[Q]) -> Q {
        let n = self.rank;
        let mut acc = Q::zero();
        for i in 0..n {
            for j in 0..n {
                acc += self.gram_inv[i][j] * z[i] * z2[j];
            }
        }
        acc
    }

    /// `(b, alpha)` for a coweight `b` and a root index.
    pub fn pair_root(&self, b: &[i64], root: usize) -> i64 {
        self.roots[root].alpha.iter().zip(b).map(|(a, x)| a * x).sum()
    }

    pub fn pair_root_q(&self, z: &[Q], root: usize) -> Q {
        self.roots[root].alpha.iter().zip(z).fold(Q::zero(), |acc, (a, x)| acc + *x * *a)
    }

    /// b-coordinates of the root itself, `((alpha, alpha_j))_j`.
    pub fn root_vec(&self, root: usize) -> Vec<Q> {
        let r = &self.roots[root];
        r.coroot.iter().map(|&c| r.nu / 2 * c).collect()
    }

    /// b-coordinates of `rho`: `(rho, alpha_j) = nu_j / 2`.
    pub fn rho(&self) -> Vec<Q> {
        (1..=self.rank).map(|i| self.nu_simple(i) / 2).collect()
    }

    /// Fundamental coweight `b_i`, `1 <= i <= n`.
    pub fn b(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        v[i - 1] = 1;
        v
    }

    pub fn is_dominant(&self, b: &[i64]) -> bool {
        b.iter().all(|&x| x >= 0)
    }

    /// `b = b_+ - b_-` with both parts dominant.
    pub fn dominant_split(&self, b: &[i64]) -> (Vec<i64>, Vec<i64>) {
        (b.iter().map(|&x| x.max(0)).collect(), b.iter().map(|&x| (-x).max(0)).collect())
    }

    /// Simple reflection `s_j`, `0 <= j <= n`.
    pub fn s(&self, j: usize) -> ExtAffWeyl {
        if j == 0 {
            let th = self.theta;
            let refl = self.reflection(th);
            let b: Vec<i64> = self.roots[th].coroot.iter().map(|x| -x).collect();
            return ExtAffWeyl { n: self.rank, w: refl.w, w_inv: refl.w_inv, b };
        }
        self.reflection(self.simple[j - 1])
    }

    /// Finite reflection `s_alpha`.
    pub fn reflection(&self, root: usize) -> ExtAffWeyl {
        let n = self.rank;
        let r = &self.roots[root];
        // (s z)_j = z_j - (z, alpha^v) (alpha, alpha_j) with (z, alpha^v) = (2/nu) sum_i a_i z_i.
        let rv = self.root_vec(root);
        let mut w = identity(n);
        for j in 0..n {
            for i in 0..n {
                let c = rv[j] * r.alpha[i] * 2 / r.nu;
                assert!(c.is_integer());
                w[j * n + i] -= c.to_integer();
            }
        }
        ExtAffWeyl { n, w_inv: w.clone(), w, b: vec![0; n] }
    }

    pub fn identity(&self) -> ExtAffWeyl {
        ExtAffWeyl::identity(self.rank)
    }

    pub fn translation(&self, b: &[i64]) -> ExtAffWeyl {
        ExtAffWeyl::translation(b)
    }

    /// Product of simple reflections `s_{j_1} s_{j_2} ...`.
    pub fn word(&self, word: &[usize]) -> ExtAffWeyl {
        word.iter().fold(self.identity(), |acc, &j| acc.mul(&self.s(j)))
    }

    /// `pi_r`, with `pi_0 = id`.
    pub fn pi(&self, r: usize) -> ExtAffWeyl {
        if r == 0 {
            return self.identity();
        }
        self.minuscule_data(r).pi.clone()
    }

    pub fn minuscule(&self) -> &[Minuscule] {
        &self.minuscule
    }

    pub fn minuscule_data(&self, r: usize) -> &Minuscule {
        self.minuscule.iter().find(|m| m.r == r).expect("not a special node")
    }

    /// Special nodes `O*`.
    pub fn special_nodes(&self) -> Vec<usize> {
        self.minuscule.iter().map(|m| m.r).collect()
    }

    /// Finite root index of `w(alpha)`.
    pub fn apply_root(&self, w: &ExtAffWeyl, root: usize) -> usize {
        self.index[&w.apply_w(&self.roots[root].coroot)]
    }

    /// `w([alpha, k]) = [w(alpha), k - (alpha, b)]`.
    pub fn apply_affine_root(&self, w: &ExtAffWeyl, a: AffineRoot) -> AffineRoot {
        AffineRoot { root: self.apply_root(w, a.root), k: a.k - self.pair_root(&w.b, a.root) }
    }

    /// Action on an affine vector `[z, zeta]` in b-coordinates.
    pub fn apply_affine_vector(&self, w: &ExtAffWeyl, z: &[Q], zeta: Q) -> (Vec<Q>, Q) {
        let bq: Vec<Q> = w.b.iter().map(|&x| Q::from_integer(x)).collect();
        (w.apply_w_q(z), zeta - self.ip_q(z, &bq))
    }

    /// Affine simple root `alpha_j`.
    pub fn affine_simple(&self, j: usize) -> AffineRoot {
        if j == 0 {
            AffineRoot { root: self.neg_root(self.theta), k: 1 }
        } else {
            AffineRoot { root: self.simple[j - 1], k: 0 }
        }
    }

    pub fn is_positive_affine(&self, a: AffineRoot) -> bool {
        a.k > 0 || (a.k == 0 && self.roots[a.root].positive)
    }

    /// Positive affine roots sent to negative ones.
    pub fn ell(&self, w: &ExtAffWeyl) -> Vec<AffineRoot> {
        let mut out = Vec::new();
        for (i, r) in self.roots.iter().enumerate() {
            let (kmin, kmax) = self.ell_range(w, i, r);
            for k in kmin..=kmax {
                out.push(AffineRoot { root: i, k });
            }
        }
        out.sort();
        out
    }

    fn ell_range(&self, w: &ExtAffWeyl, i: usize, r: &Root) -> (i64, i64) {
        let kmin = if r.positive { 0 } else { 1 };
        let image_neg = !self.roots[self.apply_root(w, i)].positive;
        let kmax = self.pair_root(&w.b, i) - if image_neg { 0 } else { 1 };
        (kmin, kmax)
    }

    pub fn length(&self, w: &ExtAffWeyl) -> usize {
        self.roots
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let (a, b) = self.ell_range(w, i, r);
                (b - a + 1).max(0) as usize
            })
            .sum()
    }

    /// `w = pi_r s_{j_1} ... s_{j_l}` with `l = length(w)`.
    pub fn reduced_word(&self, w: &ExtAffWeyl) -> Result<ReducedWord> {
        let mut cur = w.clone();
        let mut peeled = Vec::new();
        let mut len = self.length(&cur);
        while len > 0 {
            let j = (0..=self.rank)
                .find(|&j| !self.is_positive_affine(self.apply_affine_root(&cur, self.affine_simple(j))))
                .ok_or_else(|| Error::Internal("no descent found for a nontrivial element".into()))?;
            cur = cur.mul(&self.s(j));
            let next = self.length(&cur);
            if next + 1 != len {
                return Err(Error::Internal(format!("peeling s_{j} did not reduce the length")));
            }
            len = next;
            peeled.push(j);
        }
        peeled.reverse();
        let r = if cur == self.identity() {
            0
        } else {
            self.minuscule
                .iter()
                .find(|m| m.pi == cur)
                .map(|m| m.r)
                .ok_or_else(|| Error::Internal("length-zero element outside Pi".into()))?
        };
        Ok(ReducedWord { r, word: peeled })
    }

    /// Reassemble `pi_r s_{j_1} ... s_{j_l}`.
    pub fn from_word(&self, rw: &ReducedWord) -> ExtAffWeyl {
        self.pi(rw.r).mul(&self.word(&rw.word))
    }

    /// Longest element of the parabolic subgroup generated by `s_i`, `i` in `gens`.
    pub fn longest(&self, gens: &[usize]) -> ExtAffWeyl {
        let mut w = self.identity();
        loop {
            let next = gens.iter().find(|&&i| self.roots[self.apply_root(&w, self.simple[i - 1])].positive);
            match next {
                Some(&i) => w = w.mul(&self.s(i)),
                None => return w,
            }
        }
    }

    fn build_minuscule(&self) -> Result<Vec<Minuscule>> {
        let n = self.rank;
        let theta = &self.roots[self.theta].alpha;
        let all: Vec<usize> = (1..=n).collect();
        let w0 = self.longest(&all);
        let mut out = Vec::new();
        for r in 1..=n {
            if theta[r - 1] != 1 {
                continue;
            }
            let b_r = self.b(r);
            let stab: Vec<usize> = (1..=n).filter(|&i| i != r).collect();
            let omega = w0.mul(&self.longest(&stab));
            let pi = self.translation(&b_r).mul(&omega.inverse());
            out.push(Minuscule { r, r_star: 0, b_r, pi, omega, perm: Vec::new() });
        }
        for k in 0..out.len() {
            let mut perm = Vec::with_capacity(n + 1);
            for j in 0..=n {
                let img = self.apply_affine_root(&out[k].pi, self.affine_simple(j));
                let target = (0..=n)
                    .find(|&i| self.affine_simple(i) == img)
                    .ok_or_else(|| Error::Internal("pi_r does not permute simple roots".into()))?;
                perm.push(target);
            }
            let r_star = perm.iter().position(|&x| x == 0).unwrap();
            out[k].perm = perm;
            out[k].r_star = r_star;
        }
        Ok(out)
    }

    /// Orbit of an integer vector under `W` with a representative for each point.
    pub fn orbit(&self, v: &[i64]) -> Vec<(Vec<i64>, ExtAffWeyl)> {
        let mut seen: HashMap<Vec<i64>, ExtAffWeyl> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(v.to_vec(), self.identity());
        queue.push_back(v.to_vec());
        while let Some(x) = queue.pop_front() {
            let wx = seen[&x].clone();
            for i in 1..=self.rank {
                let s = self.s(i);
                let y = s.apply_w(&x);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), s.mul(&wx));
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<(Vec<i64>, ExtAffWeyl)> = seen.into_iter().collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// All elements of the finite Weyl group (small ranks only).
    pub fn weyl_group(&self) -> Result<Vec<ExtAffWeyl>> {
        // The orbit of rho is regular, so it is in bijection with W.
        let rho2: Vec<i64> = self.rho().iter().map(|x| (*x * 6).to_integer()).collect();
        if self.positive_roots().count() > 36 {
            return Err(Error::Unsupported(format!("enumerating W({}) is too large", self.label())));
        }
        Ok(self.orbit(&rho2).into_iter().map(|(_, w)| w).collect())
    }

    /// Minimal length representative of the coset `w W` (right multiplication by `s_i`, `i >= 1`).
    pub fn min_coset_rep(&self, w: &ExtAffWeyl) -> ExtAffWeyl {
        let mut cur = w.clone();
        let mut len = self.length(&cur);
        loop {
            let mut improved = false;
            for i in 1..=self.rank {
                let c = cur.mul(&self.s(i));
                let l = self.length(&c);
                if l < len {
                    cur = c;
                    len = l;
                    improved = true;
                    break;
                }
            }
            if !improved {
                return cur;
            }
        }
    }

    /// Height of a coroot-lattice vector: sum of its coefficients in the `a_i`.
    pub fn coroot_height(&self, b: &[i64]) -> Option<i64> {
        // b = sum c_i a_i, b_j = sum_i c_i (a_i, alpha_j) = sum_i c_i cartan[j][i].
        let n = self.rank;
        let ct: Vec<Vec<Q>> = (0..n)
            .map(|j| (0..n).map(|i| Q::from_integer(self.cartan[j][i])).collect())
            .collect();
        let inv = invert_q(&ct);
        let mut h = Q::zero();
        for i in 0..n {
            let ci = (0..n).fold(Q::zero(), |acc, j| acc + inv[i][j] * b[j]);
            if !ci.is_integer() {
                return None;
            }
            h += ci;
        }
        Some(h.to_integer())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_tables() {
        let rs = RootSystem::new(RootType::A, 1).unwrap();
        assert_eq!(rs.positive_roots().count(), 1);
        assert_eq!(rs.theta(), rs.simple_root(1));
        assert_eq!(rs.ip(&[1], &[1]), Q::new(1, 2));
        assert_eq!(rs.rho(), vec![Q::one()]);
        assert_eq!(rs.two_m(), 4);
    }

    #[test]
    fn b2_lengths() {
        let rs = RootSystem::new(RootType::B, 2).unwrap();
        let mut nus: Vec<Q> = rs.positive_roots().map(|(_, r)| r.nu).collect();
        nus.sort();
        assert_eq!(nus, vec![Q::one(), Q::one(), Q::from_integer(2), Q::from_integer(2)]);
    }

    #[test]
    fn g2_has_no_special_nodes() {
        let rs = RootSystem::new(RootType::G, 2).unwrap();
        assert!(rs.special_nodes().is_empty());
        assert_eq!(rs.positive_roots().count(), 6);
    }

    #[test]
    fn root_counts() {
        for (t, n, np) in [
            (RootType::A, 3, 6),
            (RootType::C, 3, 9),
            (RootType::D, 4, 12),
            (RootType::E, 6, 36),
            (RootType::E, 8, 120),
            (RootType::F, 4, 24),
        ] {
            let rs = RootSystem::new(t, n).unwrap();
            assert_eq!(rs.positive_roots().count(), np, "{t}{n}");
        }
    }

    #[test]
    fn translation_lengths() {
        let a1 = RootSystem::new(RootType::A, 1).unwrap();
        let b1 = a1.translation(&[1]);
        assert_eq!(a1.length(&b1), 1);
        assert_eq!(a1.ell(&b1), vec![AffineRoot { root: a1.simple_root(1), k: 0 }]);
        let rw = a1.reduced_word(&b1).unwrap();
        assert_eq!(rw, ReducedWord { r: 1, word: vec![1] });
        let a2 = RootSystem::new(RootType::A, 2).unwrap();
        assert_eq!(a2.length(&a2.translation(&[1, 1])), 4);
    }

    #[test]
    fn s0_on_vector() {
        let a1 = RootSystem::new(RootType::A, 1).unwrap();
        let (z, zeta) = a1.apply_affine_vector(&a1.translation(&[1]), &[Q::one()], Q::zero());
        assert_eq!(z, vec![Q::one()]);
        assert_eq!(zeta, Q::new(-1, 2));
    }

    #[test]
    fn unsupported_types() {
        assert!(RootSystem::new(RootType::B, 1).is_err());
        assert!(RootSystem::new(RootType::A, 9).is_err());
        assert!(RootSystem::new(RootType::G, 3).is_err());
    }
}
