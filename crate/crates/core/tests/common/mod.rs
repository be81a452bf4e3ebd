//! Reference computations written directly from definitions, by dense linear
//! algebra over F_p in each degree. They use no Gröbner bases, only the
//! coefficients of the library's polynomials.
#![allow(dead_code)]

pub mod suites;

use std::collections::BTreeMap;

use rand::Rng;
use selfdual::algebra::{Polynomial, QuotientRing};
use selfdual::resolution::GradedMatrix;

pub fn ring(vars: &[&str], ideal: &[&str]) -> QuotientRing {
    QuotientRing::new(101, vars, &vec![1; vars.len()], ideal).unwrap()
}

pub fn poly(r: &QuotientRing, t: &str) -> Polynomial {
    r.parse(t).unwrap()
}

type Key = (usize, Vec<u32>);
/// A vector of a free `S`-module: (position, exponents) -> coefficient.
pub type Dense = BTreeMap<Key, u64>;

pub struct Oracle {
    p: u64,
    nvars: usize,
    weights: Vec<u32>,
    ideal: Vec<(u32, Dense)>,
}

fn modinv(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Row-echelon span, keyed by each vector's largest key.
#[derive(Default)]
pub struct Span {
    rows: BTreeMap<Key, Dense>,
}

impl Span {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Dense, p: u64) -> Dense {
        // Walk keys downward; a pivot row only touches keys at or below its pivot.
        let mut below: Option<Key> = None;
        loop {
            let next = match &below {
                None => v.iter().next_back(),
                Some(b) => v.range(..b.clone()).next_back(),
            };
            let Some((k, &c)) = next else { return v };
            let k = k.clone();
            if let Some(row) = self.rows.get(&k) {
                for (rk, &rc) in row {
                    let e = v.entry(rk.clone()).or_insert(0);
                    *e = (*e + p - rc * c % p) % p;
                    if *e == 0 {
                        v.remove(rk);
                    }
                }
            }
            below = Some(k);
        }
    }

    /// Add `v`; returns whether the span grew.
    pub fn insert(&mut self, v: Dense, p: u64) -> bool {
        let v = self.reduce(v, p);
        let Some((k, &c)) = v.iter().next_back() else {
            return false;
        };
        let inv = modinv(c, p);
        let k = k.clone();
        let v: Dense = v.into_iter().map(|(a, b)| (a, b * inv % p)).collect();
        self.rows.insert(k, v);
        true
    }

    pub fn contains(&self, v: Dense, p: u64) -> bool {
        self.reduce(v, p).is_empty()
    }
}

impl Oracle {
    pub fn new(r: &QuotientRing) -> Self {
        let nvars = r.nvars();
        let weights = r.weights().to_vec();
        let mut o = Oracle {
            p: r.characteristic() as u64,
            nvars,
            weights,
            ideal: vec![],
        };
        o.ideal = r
            .ideal_generators()
            .iter()
            .map(|g| (o.weighted(g), o.dense(g, 0)))
            .collect();
        o
    }

    fn weighted(&self, g: &Polynomial) -> u32 {
        g.lead().unwrap().0.degree()
    }

    pub fn dense(&self, f: &Polynomial, pos: usize) -> Dense {
        f.terms()
            .iter()
            .map(|(m, c)| ((pos, m.exponents(self.nvars)), *c as u64))
            .collect()
    }

    /// Exponent vectors of weighted degree `d`.
    pub fn monomials(&self, d: i32) -> Vec<Vec<u32>> {
        fn go(i: usize, left: u32, w: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == w.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let mut e = 0;
            while e * w[i] <= left {
                cur.push(e);
                go(i + 1, left - e * w[i], w, cur, out);
                cur.pop();
                e += 1;
            }
        }
        let mut out = Vec::new();
        if d >= 0 {
            go(0, d as u32, &self.weights, &mut Vec::new(), &mut out);
        }
        out
    }

    fn shift(&self, v: &Dense, m: &[u32]) -> Dense {
        v.iter()
            .map(|((pos, e), c)| ((*pos, e.iter().zip(m).map(|(a, b)| a + b).collect()), *c))
            .collect()
    }

    /// Span of `(I·F)_d` for `F = ⊕ S(-h_i)`.
    pub fn ideal_part(&self, degs: &[i32], d: i32) -> Span {
        let mut s = Span::default();
        for (i, &h) in degs.iter().enumerate() {
            for (gd, g) in &self.ideal {
                let g = g.iter().map(|((_, e), c)| ((i, e.clone()), *c)).collect();
                for m in self.monomials(d - h - *gd as i32) {
                    s.insert(self.shift(&g, &m), self.p);
                }
            }
        }
        s
    }

    /// Span of `(im A + I·F)_d`.
    pub fn image_part(&self, a: &GradedMatrix, d: i32) -> Span {
        let mut s = self.ideal_part(a.target(), d);
        for (j, &sd) in a.source().iter().enumerate() {
            let col = self.column(a, j);
            for m in self.monomials(d - sd) {
                s.insert(self.shift(&col, &m), self.p);
            }
        }
        s
    }

    pub fn column(&self, a: &GradedMatrix, j: usize) -> Dense {
        let mut out = Dense::new();
        for i in 0..a.nrows() {
            out.extend(self.dense(&a.entry(i, j), i));
        }
        out
    }

    /// `dim_k F_d` for `F = ⊕ S(-h_i)`.
    pub fn free_dim(&self, degs: &[i32], d: i32) -> usize {
        degs.iter().map(|&h| self.monomials(d - h).len()).sum()
    }

    /// `dim_k (coker A)_d` over `R = S/I`.
    pub fn hilbert(&self, a: &GradedMatrix, d: i32) -> usize {
        self.free_dim(a.target(), d) - self.image_part(a, d).dim()
    }

    /// `dim_k (R/J)_d` for an ideal `J` given by generators.
    pub fn cyclic_hilbert(&self, gens: &[Polynomial], d: i32) -> usize {
        let mut s = self.ideal_part(&[0], d);
        for g in gens {
            let gd = self.weighted(g) as i32;
            let g = self.dense(g, 0);
            for m in self.monomials(d - gd) {
                s.insert(self.shift(&g, &m), self.p);
            }
        }
        self.free_dim(&[0], d) - s.dim()
    }

    /// Image of `v ∈ (F_src)_d` under `A`, on `S`-representatives.
    fn apply(&self, a: &GradedMatrix, v: &Dense) -> Dense {
        let mut out = Dense::new();
        for ((j, e), c) in v {
            for ((i, e2), c2) in self.column(a, *j) {
                let k = (i, e.iter().zip(&e2).map(|(x, y)| x + y).collect());
                let x = out.entry(k.clone()).or_insert(0);
                *x = (*x + c * c2) % self.p;
                if *x == 0 {
                    out.remove(&k);
                }
            }
        }
        out
    }

    /// Rank over `k` of `A : (F_src)_d / (I F_src)_d → (F_tgt)_d / (I F_tgt)_d`.
    fn rank_mod_ideal(&self, a: &GradedMatrix, d: i32) -> usize {
        self.image_part(a, d).dim() - self.ideal_part(a.target(), d).dim()
    }

    /// `A·B ≡ 0` modulo `I` in degree `d` (checked on the images of a basis).
    pub fn product_vanishes(&self, a: &GradedMatrix, b: &GradedMatrix, d: i32) -> bool {
        let ideal = self.ideal_part(a.target(), d);
        for (j, &sd) in b.source().iter().enumerate() {
            let col = self.column(b, j);
            for m in self.monomials(d - sd) {
                if !ideal.contains(self.apply(a, &self.shift(&col, &m)), self.p) {
                    return false;
                }
            }
        }
        true
    }

    /// Exactness of `F_2 --B--> F_1 --A--> F_0` at `F_1` over `R`, in degree `d`.
    pub fn exact_at(&self, a: &GradedMatrix, b: &GradedMatrix, d: i32) -> bool {
        let dim_q = self.free_dim(a.source(), d) - self.ideal_part(a.source(), d).dim();
        let ker = dim_q - self.rank_mod_ideal(a, d);
        let im = self.rank_mod_ideal(b, d);
        ker == im
    }

    /// Injectivity of `A` over `R` in degree `d`.
    pub fn injective_at(&self, a: &GradedMatrix, d: i32) -> bool {
        let dim_q = self.free_dim(a.source(), d) - self.ideal_part(a.source(), d).dim();
        dim_q == self.rank_mod_ideal(a, d)
    }

    /// Dimension of the socle `{f ∈ (R/J)_d : x_i f ∈ J + I for all i}`.
    pub fn socle_dim(&self, gens: &[Polynomial], d: i32) -> usize {
        let jspan = |d: i32| {
            let mut s = self.ideal_part(&[0], d);
            for g in gens {
                let gd = self.weighted(g) as i32;
                let g = self.dense(g, 0);
                for m in self.monomials(d - gd) {
                    s.insert(self.shift(&g, &m), self.p);
                }
            }
            s
        };
        // Standard representatives of (R/J)_d: monomials that extend the span.
        let mut basis = Vec::new();
        let mut probe = jspan(d);
        for m in self.monomials(d) {
            let v: Dense = [((0, m.clone()), 1)].into_iter().collect();
            if probe.insert(v, self.p) {
                basis.push(m);
            }
        }
        // Solve for combinations of `basis` killed by every variable, by linear algebra on coefficients.
        let n = basis.len();
        let mut constraints: Vec<Vec<u64>> = Vec::new();
        for i in 0..self.nvars {
            let mut unit = vec![0; self.nvars];
            unit[i] = 1;
            let d1 = d + self.weights[i] as i32;
            let target = jspan(d1);
            // Images x_i·b reduced modulo J_{d+w}; collect their coordinates.
            let imgs: Vec<Dense> = basis
                .iter()
                .map(|b| {
                    let v: Dense = [((0, b.iter().zip(&unit).map(|(a, c)| a + c).collect()), 1)]
                        .into_iter()
                        .collect();
                    target.reduce(v, self.p)
                })
                .collect();
            let keys: std::collections::BTreeSet<Key> =
                imgs.iter().flat_map(|v| v.keys().cloned()).collect();
            for k in keys {
                constraints.push(imgs.iter().map(|v| *v.get(&k).unwrap_or(&0)).collect());
            }
        }
        n - matrix_rank(constraints, n, self.p)
    }
}

/// Rank of a dense matrix over F_p.
pub fn matrix_rank(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = modinv(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..ncols {
                    rows[r][k] = (rows[r][k] + p - f * rows[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A random homogeneous polynomial of degree `d` with about `terms` terms.
pub fn random_poly(r: &QuotientRing, d: i32, terms: usize, rng: &mut impl Rng) -> Polynomial {
    let o = Oracle::new(r);
    let mons = o.monomials(d);
    if mons.is_empty() {
        return Polynomial::zero();
    }
    let names = r.var_names();
    let mut text = String::from("0");
    for _ in 0..terms {
        let m = &mons[rng.gen_range(0..mons.len())];
        let c: u32 = rng.gen_range(1..101);
        text.push_str(&format!(" + {c}"));
        for (v, e) in names.iter().zip(m) {
            if *e > 0 {
                text.push_str(&format!("*{v}^{e}"));
            }
        }
    }
    r.parse(&text).unwrap()
}

/// A random homogeneous matrix with the given target degrees; each column
/// gets a random source degree above the target degrees.
pub fn random_matrix(
    r: &QuotientRing,
    target: &[i32],
    ncols: usize,
    rng: &mut impl Rng,
) -> GradedMatrix {
    let top = *target.iter().max().unwrap();
    let mut rows = vec![Vec::new(); target.len()];
    let mut source = Vec::new();
    for _ in 0..ncols {
        let s = top + rng.gen_range(1..=2);
        for (i, &t) in target.iter().enumerate() {
            let e = if rng.gen_bool(0.8) {
                random_poly(r, s - t, 2, rng)
            } else {
                Polynomial::zero()
            };
            rows[i].push(e);
        }
        source.push(s);
    }
    GradedMatrix::new(r, target.to_vec(), source, rows).unwrap()
}

impl Oracle {
    /// Injectivity of multiplication by `f` on `(coker A)_d → (coker A)_{d + deg f}`.
    pub fn multiplication_injective(&self, a: &GradedMatrix, f: &Polynomial, d: i32) -> bool {
        let e = self.weighted(f) as i32;
        let here = self.image_part(a, d);
        let dim_q = self.free_dim(a.target(), d) - here.dim();
        let mut there = self.image_part(a, d + e);
        let base = there.dim();
        let fd = self.dense(f, 0);
        for (i, &h) in a.target().iter().enumerate() {
            for m in self.monomials(d - h) {
                let v: Dense = fd
                    .iter()
                    .map(|((_, x), c)| ((i, x.iter().zip(&m).map(|(p, q)| p + q).collect()), *c))
                    .collect();
                there.insert(v, self.p);
            }
        }
        there.dim() - base == dim_q
    }
}

/// The factorization `φ = [[x^2, -y], [0, x]]`, `ψ = [[x, y], [0, x^2]]` of `x^3` over `F_101[x,y]`.
pub fn remark_factorization(s: &QuotientRing) -> selfdual::theorems::MatrixFactorization {
    let p = |t: &str| s.parse(t).unwrap();
    let phi = GradedMatrix::new(
        s,
        vec![1, 1],
        vec![3, 2],
        vec![vec![p("x^2"), p("-y")], vec![p("0"), p("x")]],
    )
    .unwrap();
    let psi = GradedMatrix::new(
        s,
        vec![3, 2],
        vec![4, 4],
        vec![vec![p("x"), p("y")], vec![p("0"), p("x^2")]],
    )
    .unwrap();
    selfdual::theorems::make_matrix_factorization(s, &phi, &psi, &p("x^3")).unwrap()
}

/// The ideal `(gens)` of `S`, taken modulo `x^3`, as an `S`-module.
pub fn ideal_mod_x3(s: &QuotientRing, gens: &[&str]) -> selfdual::resolution::ModulePresentation {
    let p = |t: &str| s.parse(t).unwrap();
    let z =
        GradedMatrix::with_inferred_source(s, vec![0], vec![gens.iter().map(|g| p(g)).collect()])
            .unwrap();
    let b = GradedMatrix::with_inferred_source(s, vec![0], vec![vec![p("x^3")]]).unwrap();
    selfdual::resolution::subquotient(s, &z, &b).unwrap()
}
