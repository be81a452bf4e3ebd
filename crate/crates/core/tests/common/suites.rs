//! Randomized suites shared by the property tests and the acceptance target.
//! Each returns `Err(description)` on the first failing case.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use selfdual::algebra::{Polynomial, QuotientRing};
use selfdual::duality::{grade, is_totally_self_dual};
use selfdual::resolution::{
    direct_sum, kernel_of_scalar, quotient_module, HilbertSeries, ModulePresentation, Resolution,
};

use super::{matrix_rank, random_matrix, random_poly, Oracle};

pub type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

pub fn random_ring(rng: &mut ChaCha8Rng) -> QuotientRing {
    let names = ["x", "y", "z"];
    let n = rng.gen_range(2..=3);
    let s = QuotientRing::polynomial_ring(101, &names[..n], None).unwrap();
    let k = rng.gen_range(0..=2);
    let gens: Vec<_> = (0..k)
        .map(|_| random_poly(&s, rng.gen_range(2..=3), 2, rng))
        .filter(|g| !g.is_zero())
        .collect();
    s.quotient(&gens).unwrap()
}

/// Cokernel of a random homogeneous matrix with one or two rows, unpruned.
pub fn random_module(rng: &mut ChaCha8Rng) -> ModulePresentation {
    let r = random_ring(rng);
    let rank = rng.gen_range(1..=2);
    let target: Vec<i32> = (0..rank).map(|_| rng.gen_range(0..=1)).collect();
    let ncols = rng.gen_range(1..=3);
    let a = random_matrix(&r, &target, ncols, rng);
    ModulePresentation::coker_unpruned(&r, &a).unwrap()
}

/// Hilbert functions up to degree `top` against the linear-algebra oracle.
pub fn hilbert_suite(cases: usize, top: i32) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for case in 0..cases {
        let m = random_module(&mut rng);
        let o = Oracle::new(m.ring());
        let expected: Vec<usize> = (0..=top).map(|d| o.hilbert(m.matrix(), d)).collect();
        ensure!(
            m.hilbert_function(top) == expected,
            "case {case}: {} standard monomials disagree",
            m.format()
        );
        let series = HilbertSeries::of(&m).coefficients(0, top);
        ensure!(
            series.iter().zip(&expected).all(|(a, &b)| *a == b as i64),
            "case {case}: series disagrees"
        );
        ensure!(
            m.pruned().hilbert_function(top) == expected,
            "case {case}: pruning changed the module"
        );
    }
    Ok(())
}

/// `d∘d = 0`, minimality and exactness (by the oracle) of the first `len` steps.
pub fn resolution_suite(cases: usize, len: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for case in 0..cases {
        let m = random_module(&mut rng);
        let c = Resolution::new(&m).complex(len);
        ensure!(c.is_complex(), "case {case}: not a complex");
        ensure!(c.is_minimal(), "case {case}: not minimal");
        let o = Oracle::new(m.ring());
        let diffs = c.differentials();
        for (i, w) in diffs.windows(2).enumerate() {
            let top = w[1].source().iter().copied().max().unwrap_or(0);
            for d in 0..=top + 1 {
                ensure!(
                    o.product_vanishes(&w[0], &w[1], d),
                    "case {case}: d{}∘d{} ≠ 0 in degree {d}",
                    i + 1,
                    i + 2
                );
                ensure!(
                    o.exact_at(&w[0], &w[1], d),
                    "case {case}: homology at F{} in degree {d}",
                    i + 1
                );
            }
        }
        if let Some(d1) = diffs.first() {
            for d in 0..=6 {
                ensure!(
                    o.hilbert(d1, d) == o.hilbert(m.matrix(), d),
                    "case {case}: coker d1 ≠ M in degree {d}"
                );
            }
        }
    }
    Ok(())
}

const CAP: usize = 8;
const TRIALS: usize = 32;

fn space() -> QuotientRing {
    QuotientRing::polynomial_ring(101, &["x", "y", "z"], None).unwrap()
}

/// Three independent linear forms, i.e. a random linear change of coordinates.
fn random_coordinates(rng: &mut ChaCha8Rng) -> Vec<String> {
    loop {
        let m: Vec<Vec<u64>> = (0..3)
            .map(|_| (0..3).map(|_| rng.gen_range(0..101)).collect())
            .collect();
        if matrix_rank(m.clone(), 3, 101) == 3 {
            return m
                .iter()
                .map(|r| format!("({}*x + {}*y + {}*z)", r[0], r[1], r[2]))
                .collect();
        }
    }
}

/// `l_1^{a_1}, ..., l_k^{a_k}` in fresh random coordinates: a regular sequence.
fn regular_sequence(s: &QuotientRing, degs: &[u32], rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let l = random_coordinates(rng);
    degs.iter()
        .zip(&l)
        .map(|(a, l)| s.parse(&format!("{l}^{a}")).unwrap())
        .collect()
}

fn tsd(m: &ModulePresentation) -> bool {
    is_totally_self_dual(m, CAP, TRIALS, 0).unwrap().verdict
}

/// Sums of totally self-dual complete intersections of equal grade.
pub fn direct_sum_suite(cases: usize) -> Outcome {
    let s = space();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for case in 0..cases {
        let g = rng.gen_range(1..=2);
        let da: Vec<u32> = (0..g).map(|_| rng.gen_range(1..=3)).collect();
        let mut db: Vec<u32> = (0..g).map(|_| rng.gen_range(1..=3)).collect();
        // Ext^g(S/(f)) = S/(f)(sum deg f); a uniform shift for the sum needs equal parity.
        let sa: u32 = da.iter().sum();
        if (sa + db.iter().sum::<u32>()) % 2 == 1 {
            db[0] += 1;
        }
        let sb: u32 = db.iter().sum();
        let twist = (sb as i32 - sa as i32) / 2;
        let m = ModulePresentation::cyclic(&s, &regular_sequence(&s, &da, &mut rng)).unwrap();
        let n = ModulePresentation::cyclic(&s, &regular_sequence(&s, &db, &mut rng))
            .unwrap()
            .twist(twist);
        ensure!(
            tsd(&m) && tsd(&n),
            "case {case}: summands are not totally self-dual"
        );
        ensure!(
            grade(&m).unwrap() == g && grade(&n).unwrap() == g,
            "case {case}: grades"
        );
        let rep = is_totally_self_dual(&direct_sum(&m, &n).unwrap(), CAP, TRIALS, 0).unwrap();
        ensure!(
            rep.verdict && rep.grade == g,
            "case {case}: sum of degrees {da:?} and {db:?} is not totally self-dual"
        );
    }
    Ok(())
}

/// Totally self-dual over `S` iff over `S/(f)` when `f` is regular and kills `M`.
/// Odd cases use `(f1) + (f2, f3)^2`, which is not Gorenstein.
pub fn base_change_suite(cases: usize) -> Outcome {
    let s = space();
    let fld = s.field();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for case in 0..cases {
        let degs: Vec<u32> = (0..3).map(|_| rng.gen_range(1..=2)).collect();
        let f = regular_sequence(&s, &degs, &mut rng);
        let gens: Vec<Polynomial> = if case % 2 == 0 {
            f[..2].to_vec()
        } else {
            vec![
                f[0].clone(),
                f[1].mul(&f[1], &fld),
                f[1].mul(&f[2], &fld),
                f[2].mul(&f[2], &fld),
            ]
        };
        let m = ModulePresentation::cyclic(&s, &gens).unwrap();
        let quotient = s.quotient(&f[..1]).unwrap();
        let mq = m.change_ring(&quotient).unwrap();
        let (over_s, over_q) = (tsd(&m), tsd(&mq));
        ensure!(
            over_s == over_q,
            "case {case}: {over_s} over S but {over_q} over S/(f)"
        );
        ensure!(
            over_s == (case % 2 == 0),
            "case {case}: expected {}",
            case % 2 == 0
        );
        ensure!(
            grade(&mq).unwrap() + 1 == grade(&m).unwrap(),
            "case {case}: grade did not drop by one"
        );
    }
    Ok(())
}

/// `M/xM` is totally self-dual of grade `g + 1` for `M`-regular `x`.
pub fn regular_element_suite(cases: usize) -> Outcome {
    let s = space();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for case in 0..cases {
        let k = rng.gen_range(1..=2);
        let degs: Vec<u32> = (0..=k).map(|_| rng.gen_range(1..=3)).collect();
        let f = regular_sequence(&s, &degs, &mut rng);
        let m = ModulePresentation::cyclic(&s, &f[..k]).unwrap();
        let x = &f[k];
        ensure!(tsd(&m), "case {case}: M is not totally self-dual");
        ensure!(
            kernel_of_scalar(x, &m).unwrap().is_zero(),
            "case {case}: x is not M-regular"
        );
        let mx = quotient_module(&m, std::slice::from_ref(x)).unwrap();
        ensure!(!mx.is_zero(), "case {case}: M = xM");
        let rep = is_totally_self_dual(&mx, CAP, TRIALS, 0).unwrap();
        ensure!(rep.verdict, "case {case}: M/xM is not totally self-dual");
        ensure!(
            rep.grade == grade(&m).unwrap() + 1,
            "case {case}: grade of M/xM is {}",
            rep.grade
        );
    }
    Ok(())
}
