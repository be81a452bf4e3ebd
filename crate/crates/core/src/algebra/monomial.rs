use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

/// Largest number of ring variables supported by the packed monomial layout.
pub const MAX_VARS: usize = 8;

/// A monomial `x^a` with its weighted degree cached.
///
/// The cached degree is only meaningful relative to the ring that built the
/// monomial; products and quotients keep it consistent.
#[derive(Clone, Copy, Debug)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.exps == other.exps
    }
}
impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            deg: 0,
        }
    }

    pub fn from_exponents(exps: &[u32], weights: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Monomial::one();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] =
                u16::try_from(e).expect("exponent overflow: exponents are limited to 65535");
        }
        m.deg = m.weighted_degree(weights);
        m
    }

    pub fn var(i: usize, weights: &[u32]) -> Self {
        let mut m = Monomial::one();
        m.exps[i] = 1;
        m.deg = weights[i];
        m
    }

    fn weighted_degree(&self, weights: &[u32]) -> u32 {
        let d: u64 = weights
            .iter()
            .zip(self.exps.iter())
            .map(|(&w, &e)| w as u64 * e as u64)
            .sum();
        u32::try_from(d)
            .ok()
            .filter(|&d| d < (1 << 31))
            .expect("degree overflow: degrees are limited to 2^31")
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Highest variable index with a nonzero exponent, if any.
    pub fn support_len(&self) -> usize {
        self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow: exponents are limited to 65535");
        }
        let deg = self
            .deg
            .checked_add(other.deg)
            .filter(|&d| d < (1 << 31))
            .expect("degree overflow");
        Monomial { exps, deg }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = other.exps[i] - self.exps[i];
        }
        Monomial {
            exps,
            deg: other.deg - self.deg,
        }
    }

    pub fn divide(&self, by: &Monomial) -> Option<Monomial> {
        by.divides(self).then(|| by.quotient_of(self))
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let mut m = Monomial::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
        }
        m.deg = m.weighted_degree(weights);
        m
    }

    pub fn gcd(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let mut m = Monomial::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
        }
        m.deg = m.weighted_degree(weights);
        m
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Weighted graded reverse lexicographic comparison.
    #[inline]
    pub fn grevlex(&self, other: &Monomial) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            if self.exps[i] != other.exps[i] {
                // smaller exponent in the last differing variable wins
                return other.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }

    /// All monomials of weighted degree `d` in `nvars` variables, descending in grevlex.
    pub fn all_of_degree(d: u32, weights: &[u32]) -> Vec<Monomial> {
        let n = weights.len();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, w: &[u32], out: &mut Vec<Monomial>) {
            if i == w.len() {
                if left == 0 {
                    out.push(Monomial::from_exponents(cur, w));
                }
                return;
            }
            let mut e = 0;
            while e * w[i] <= left {
                cur[i] = e;
                rec(i + 1, left - e * w[i], cur, w, out);
                e += 1;
            }
            cur[i] = 0;
        }
        if n == 0 {
            if d == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        rec(0, d, &mut cur, weights, &mut out);
        out.sort_by(|a, b| b.grevlex(a));
        out
    }
}
