//! Graded Hom spaces, isomorphism testing up to shift, free-summand
//! stripping and stable equivalence.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Monomial, PrimeField, QuotientRing};
use crate::error::{Error, Result};
use crate::groebner::{Term, Vector};
use crate::linalg;
use crate::resolution::{GradedMatrix, HilbertSeries, MatrixJson, ModulePresentation};

/// Largest Hom block dimension that is enumerated exhaustively.
pub const EXHAUSTIVE_DIM_CAP: usize = 4;

/// Degree-0 homomorphisms `M → N(shift)`, as matrices `F_0(M) → F_0(N)(shift)`,
/// modulo maps landing in the relations of `N`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub shift: i32,
    pub basis: Vec<GradedMatrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Basis of `Hom_R(M, N(shift))_0`.
pub fn hom_space(m: &ModulePresentation, n: &ModulePresentation, shift: i32) -> Result<HomSpace> {
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = m.ring();
    let f = ring.field();
    let gb = n.relation_gb();
    let h = m.generator_degrees();
    // unknowns: coefficient of a standard term of N in the image of generator i
    let mut unknowns: Vec<(usize, usize, Monomial)> = Vec::new();
    for (i, &hi) in h.iter().enumerate() {
        for (pos, mon) in gb.standard_terms(hi + shift) {
            unknowns.push((i, pos, mon));
        }
    }
    let mut rows: HashMap<(usize, u32, Monomial), usize> = HashMap::new();
    let mut eqs: Vec<Vec<u32>> = Vec::new();
    for (l, col) in m.matrix().columns().iter().enumerate() {
        for (u, &(i, pos, mon)) in unknowns.iter().enumerate() {
            let a = col.component(i);
            if a.is_zero() {
                continue;
            }
            let img = Vector::unit(pos, &a).mul_poly(&crate::algebra::Polynomial::term(mon, 1), &f);
            let nf = gb.normal_form(&img)?;
            for t in nf.terms() {
                let key = (l, t.pos, t.mon);
                let r = *rows.entry(key).or_insert_with(|| {
                    eqs.push(vec![0; unknowns.len()]);
                    eqs.len() - 1
                });
                eqs[r][u] = f.add(eqs[r][u], t.coeff);
            }
        }
    }
    let null = linalg::nullspace(&f, &eqs, unknowns.len());
    let target: Vec<i32> = n.generator_degrees().iter().map(|g| g - shift).collect();
    let basis = null
        .into_iter()
        .map(|v| {
            let mut cols: Vec<Vec<Term>> = vec![Vec::new(); h.len()];
            for (u, &c) in v.iter().enumerate() {
                if c != 0 {
                    let (i, pos, mon) = unknowns[u];
                    cols[i].push(Term {
                        pos: pos as u32,
                        mon,
                        coeff: c,
                    });
                }
            }
            let cols = cols
                .into_iter()
                .map(|t| Vector::from_terms(t, &f))
                .collect();
            GradedMatrix::from_columns(target.clone(), h.to_vec(), cols)
        })
        .collect();
    Ok(HomSpace { shift, basis })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    Inconclusive,
}

/// Result of [`is_isomorphic`]. `shift` is `s` in `M ≅ N(s)`.
#[derive(Clone, Debug)]
pub struct IsoReport {
    pub verdict: IsoVerdict,
    pub shift: Option<i32>,
    pub witness: Option<GradedMatrix>,
    pub obstruction: Option<String>,
    pub seed: u64,
    pub trials: usize,
    pub trials_used: usize,
    ring: QuotientRing,
}

#[derive(Serialize)]
struct IsoJson {
    verdict: IsoVerdict,
    shift: Option<i32>,
    seed: u64,
    trials: usize,
    trials_used: usize,
    witness: Option<MatrixJson>,
    obstruction: Option<String>,
}

impl IsoReport {
    pub fn is_isomorphic(&self) -> bool {
        self.verdict == IsoVerdict::Isomorphic
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(IsoJson {
            verdict: self.verdict,
            shift: self.shift,
            seed: self.seed,
            trials: self.trials,
            trials_used: self.trials_used,
            witness: self.witness.as_ref().map(|w| w.to_json(&self.ring)),
            obstruction: self.obstruction.clone(),
        })
        .unwrap()
    }

    fn new(ring: &QuotientRing, verdict: IsoVerdict, seed: u64, trials: usize) -> Self {
        IsoReport {
            verdict,
            shift: None,
            witness: None,
            obstruction: None,
            seed,
            trials,
            trials_used: 0,
            ring: ring.clone(),
        }
    }

    fn not_iso(ring: &QuotientRing, seed: u64, trials: usize, why: String) -> Self {
        let mut r = Self::new(ring, IsoVerdict::NotIsomorphic, seed, trials);
        r.obstruction = Some(why);
        r
    }
}

fn sorted(v: &[i32]) -> Vec<i32> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// Decide `M ≅ N(s)` for some shift `s`.
///
/// Invariants (μ, generator and relation degrees, the exact Hilbert series)
/// fix the only possible shift. A homomorphism is an isomorphism exactly when
/// its scalar part is invertible, so random points of the degree-0 Hom space
/// are tried; small Hom blocks are enumerated for an exact negative answer.
pub fn is_isomorphic(
    m: &ModulePresentation,
    n: &ModulePresentation,
    trials: usize,
    seed: u64,
) -> IsoReport {
    let ring = m.ring();
    if m.ring() != n.ring() {
        return IsoReport::not_iso(
            ring,
            seed,
            trials,
            "modules live over different rings".into(),
        );
    }
    let (m, n) = (m.pruned(), n.pruned());
    let (h, g) = (m.generator_degrees(), n.generator_degrees());
    if h.len() != g.len() {
        return IsoReport::not_iso(
            ring,
            seed,
            trials,
            format!(
                "minimal numbers of generators differ: {} vs {}",
                h.len(),
                g.len()
            ),
        );
    }
    if h.is_empty() {
        let mut r = IsoReport::new(ring, IsoVerdict::Isomorphic, seed, trials);
        r.shift = Some(0);
        r.witness = Some(GradedMatrix::zero(vec![], vec![]));
        return r;
    }
    let (hs, gs) = (sorted(h), sorted(g));
    let s = gs[0] - hs[0];
    if hs.iter().zip(&gs).any(|(a, b)| a + s != *b) {
        return IsoReport::not_iso(
            ring,
            seed,
            trials,
            format!("generator degrees {hs:?} and {gs:?} differ under every shift"),
        );
    }
    let (rm, rn) = (sorted(m.matrix().source()), sorted(n.matrix().source()));
    if rm.len() != rn.len() || rm.iter().zip(&rn).any(|(a, b)| a + s != *b) {
        return IsoReport::not_iso(
            ring,
            seed,
            trials,
            format!("relation degrees {rm:?} and {rn:?} differ under shift {s}"),
        );
    }
    let (sm, sn) = (HilbertSeries::of(&m), HilbertSeries::of(&n).twist(s));
    if let Some(d) = sm.first_difference(&sn) {
        return IsoReport::not_iso(
            ring,
            seed,
            trials,
            format!("Hilbert functions differ at degree {d} under shift {s}"),
        );
    }
    let hom = match hom_space(&m, &n, s) {
        Ok(h) => h,
        Err(e) => return IsoReport::not_iso(ring, seed, trials, e.to_string()),
    };
    let f = ring.field();
    let consts: Vec<Vec<Vec<u32>>> = hom.basis.iter().map(|b| b.constant_part()).collect();
    let mut report = IsoReport::new(ring, IsoVerdict::Inconclusive, seed, trials);
    report.shift = Some(s);
    if hom.dim() == 0 {
        report.verdict = IsoVerdict::NotIsomorphic;
        report.obstruction = Some(format!("no nonzero degree-0 homomorphisms M → N({s})"));
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mu = h.len();
    for t in 0..trials {
        let coeffs: Vec<u32> = (0..hom.dim())
            .map(|_| rng.gen_range(0..f.characteristic()))
            .collect();
        let c = combine(&f, &consts, &coeffs, mu);
        if linalg::is_invertible(&f, &c) {
            report.verdict = IsoVerdict::Isomorphic;
            report.trials_used = t + 1;
            report.witness = Some(combine_maps(ring, &hom.basis, &coeffs));
            return report;
        }
    }
    report.trials_used = trials;
    // exact negative: some degree block admits no invertible point
    let target: Vec<i32> = g.iter().map(|x| x - s).collect();
    let mut degrees = h.to_vec();
    degrees.sort_unstable();
    degrees.dedup();
    for d in degrees {
        let cols: Vec<usize> = (0..mu).filter(|&i| h[i] == d).collect();
        let rows: Vec<usize> = (0..mu).filter(|&j| target[j] == d).collect();
        let blocks: Vec<Vec<u32>> = consts
            .iter()
            .map(|c| {
                rows.iter()
                    .flat_map(|&j| cols.iter().map(move |&i| c[j][i]))
                    .collect()
            })
            .collect();
        let mut span = blocks.clone();
        let piv = linalg::rref(&f, &mut span);
        span.truncate(piv.len());
        match block_has_invertible(&f, &span, rows.len()) {
            Some(false) => {
                report.verdict = IsoVerdict::NotIsomorphic;
                report.obstruction = Some(format!(
                    "no degree-0 homomorphism is invertible on the degree-{d} generators (block span of dimension {} exhausted)",
                    span.len()
                ));
                return report;
            }
            Some(true) => {}
            None => {
                report.obstruction = Some(format!(
                    "Hom block at degree {d} has dimension {} beyond the exhaustive cap",
                    span.len()
                ));
            }
        }
    }
    report
}

/// `Some(found)` when the span is small enough to enumerate projectively.
fn block_has_invertible(f: &PrimeField, span: &[Vec<u32>], size: usize) -> Option<bool> {
    if span.is_empty() {
        return Some(false);
    }
    if span.len() > EXHAUSTIVE_DIM_CAP {
        return None;
    }
    let p = f.characteristic();
    let k = span.len();
    let mut coeffs = vec![0u32; k];
    let mut buf = vec![0u32; size * size];
    for lead in 0..k {
        coeffs.iter_mut().for_each(|c| *c = 0);
        coeffs[lead] = 1;
        let free = k - lead - 1;
        let total = (p as u64).pow(free as u32);
        for idx in 0..total {
            let mut x = idx;
            for c in coeffs[lead + 1..].iter_mut() {
                *c = (x % p as u64) as u32;
                x /= p as u64;
            }
            for (e, b) in buf.iter_mut().enumerate() {
                *b = span
                    .iter()
                    .zip(&coeffs)
                    .fold(0, |acc, (v, &c)| f.add(acc, f.mul(c, v[e])));
            }
            if det_nonzero(f, &mut buf, size) {
                return Some(true);
            }
        }
    }
    Some(false)
}

fn det_nonzero(f: &PrimeField, a: &mut [u32], n: usize) -> bool {
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return false;
        };
        if p != col {
            for c in 0..n {
                a.swap(p * n + c, col * n + c);
            }
        }
        let inv = f.inv(a[col * n + col]);
        for r in col + 1..n {
            let factor = f.mul(a[r * n + col], inv);
            if factor != 0 {
                for c in col..n {
                    a[r * n + c] = f.sub(a[r * n + c], f.mul(factor, a[col * n + c]));
                }
            }
        }
    }
    true
}

fn combine(f: &PrimeField, consts: &[Vec<Vec<u32>>], coeffs: &[u32], mu: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; mu]; mu];
    for (c, &k) in consts.iter().zip(coeffs) {
        if k == 0 {
            continue;
        }
        for j in 0..mu {
            for i in 0..mu {
                out[j][i] = f.add(out[j][i], f.mul(k, c[j][i]));
            }
        }
    }
    out
}

fn combine_maps(ring: &QuotientRing, basis: &[GradedMatrix], coeffs: &[u32]) -> GradedMatrix {
    let f = ring.field();
    let first = &basis[0];
    let cols = (0..first.ncols())
        .map(|i| {
            basis
                .iter()
                .zip(coeffs)
                .fold(Vector::zero(), |acc, (b, &c)| {
                    acc.add(&b.column(i).scale(c, &f), &f)
                })
        })
        .collect();
    GradedMatrix::from_columns(first.target().to_vec(), first.source().to_vec(), cols)
}

/// Independent check of an `Isomorphic` report: the witness is a homomorphism
/// `M → N(shift)`, it is surjective, and the Hilbert series agree.
pub fn verify_isomorphism(
    m: &ModulePresentation,
    n: &ModulePresentation,
    report: &IsoReport,
) -> bool {
    let (Some(w), Some(s)) = (&report.witness, report.shift) else {
        return false;
    };
    let ring = m.ring();
    let (m, n) = (m.pruned(), n.pruned());
    if w.ncols() != m.num_generators() || w.nrows() != n.num_generators() {
        return false;
    }
    let ns = n.twist(s);
    if HilbertSeries::of(&m) != HilbertSeries::of(&ns) {
        return false;
    }
    let Ok(image) = w.compose(ring, m.matrix()) else {
        return false;
    };
    let Ok(lifter) = crate::groebner::Lifter::new(
        ring,
        ns.matrix().target(),
        ns.matrix().source(),
        ns.matrix().columns(),
    ) else {
        return false;
    };
    if !image.columns().iter().all(|c| lifter.in_image(c)) {
        return false;
    }
    let Ok(both) = w.hstack(ns.matrix()) else {
        return false;
    };
    let Ok(gb) = crate::groebner::buchberger(ring, both.target(), both.columns()) else {
        return false;
    };
    (0..ns.num_generators()).all(|j| {
        gb.contains(&Vector::unit(j, &crate::algebra::Polynomial::constant(1)))
            .unwrap_or(false)
    })
}

/// `M ≅ reduced ⊕ ⊕ R(-d)` for `d` in `free_degrees`, with `reduced` free of free summands.
#[derive(Clone, Debug)]
pub struct StripResult {
    pub reduced: ModulePresentation,
    pub free_degrees: Vec<i32>,
}

/// Split off graded free summands one at a time.
///
/// A summand `R(-d)` splits off exactly when some degree-0 map `M → R(-d)`
/// sends a generator to a unit, which is a linear condition on the Hom basis.
pub fn strip_free_summands(m: &ModulePresentation) -> StripResult {
    let ring = m.ring().clone();
    let r = ModulePresentation::free(&ring, &[0]);
    let mut cur = m.pruned();
    let mut free = Vec::new();
    'outer: loop {
        let h = cur.generator_degrees().to_vec();
        let mut degs = h.clone();
        degs.sort_unstable();
        degs.dedup();
        for d in degs {
            let hom = hom_space(&cur, &r, -d).expect("same ring");
            for b in &hom.basis {
                let c = b.constant_part();
                if let Some(i) = (0..h.len()).find(|&i| h[i] == d && c[0][i] != 0) {
                    let unit = GradedMatrix::from_columns(
                        h.clone(),
                        vec![d],
                        vec![Vector::unit(i, &crate::algebra::Polynomial::constant(1))],
                    );
                    let whole = cur.matrix().hstack(&unit).expect("same target");
                    cur = ModulePresentation::coker(&ring, &whole).expect("homogeneous");
                    free.push(d);
                    continue 'outer;
                }
            }
        }
        break;
    }
    StripResult {
        reduced: cur,
        free_degrees: free,
    }
}

/// `M ≈ N`: isomorphic up to shift after removing free summands.
pub fn stable_equal(
    m: &ModulePresentation,
    n: &ModulePresentation,
    trials: usize,
    seed: u64,
) -> IsoReport {
    let a = strip_free_summands(m);
    let b = strip_free_summands(n);
    is_isomorphic(&a.reduced, &b.reduced, trials, seed)
}
