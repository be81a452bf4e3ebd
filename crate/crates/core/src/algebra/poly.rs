use std::cmp::Ordering;

use super::field::PrimeField;
use super::monomial::Monomial;

/// A polynomial with terms sorted strictly descending in grevlex.
///
/// Coefficients are raw residues; every arithmetic method takes the field
/// explicitly, so a `Polynomial` is plain data that can be moved between
/// rings sharing the same variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: u32) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: u32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Polynomial {
                terms: vec![(m, c)],
            }
        }
    }

    /// Build from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(mut terms: Vec<(Monomial, u32)>, f: &PrimeField) -> Self {
        terms.sort_by(|a, b| b.0.grevlex(&a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial { terms: out }
    }

    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, u32)>) -> Self {
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    /// Coefficient of the constant monomial.
    pub fn constant_coeff(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Common weighted degree, or `None` if the terms have different degrees.
    /// The zero polynomial reports `None` too; callers check `is_zero` first.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn add(&self, other: &Polynomial, f: &PrimeField) -> Polynomial {
        self.add_scaled(other, 1, &Monomial::one(), f)
    }

    pub fn sub(&self, other: &Polynomial, f: &PrimeField) -> Polynomial {
        self.add_scaled(other, f.neg(1), &Monomial::one(), f)
    }

    pub fn neg(&self, f: &PrimeField) -> Polynomial {
        self.scale(f.neg(1), f)
    }

    pub fn scale(&self, c: u32, f: &PrimeField) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    /// `self + c * m * other`, merging in one pass.
    pub fn add_scaled(
        &self,
        other: &Polynomial,
        c: u32,
        m: &Monomial,
        f: &PrimeField,
    ) -> Polynomial {
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.push(a[i]);
                i += 1;
                continue;
            }
            let bm = b[j].0.mul(m);
            if i == a.len() {
                out.push((bm, f.mul(b[j].1, c)));
                j += 1;
                continue;
            }
            match a[i].0.grevlex(&bm) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, f.mul(b[j].1, c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(a[i].1, f.mul(b[j].1, c));
                    if s != 0 {
                        out.push((bm, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { terms: out }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32, f: &PrimeField) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|&(a, k)| (a.mul(m), f.mul(k, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial, f: &PrimeField) -> Polynomial {
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero();
        for (m, c) in &small.terms {
            acc = acc.add_scaled(big, *c, m, f);
        }
        acc
    }

    pub fn pow(&self, e: u32, f: &PrimeField) -> Polynomial {
        let mut r = Polynomial::constant(1);
        for _ in 0..e {
            r = r.mul(self, f);
        }
        r
    }
}
