use std::cmp::Ordering;

use crate::algebra::{Monomial, Polynomial, PrimeField};

/// One term `c * x^a * e_pos` of a free-module element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub pos: u32,
    pub mon: Monomial,
    pub coeff: u32,
}

/// Position-over-term comparison: a smaller position index is larger, then grevlex.
#[inline]
pub fn term_cmp(a_pos: u32, a: &Monomial, b_pos: u32, b: &Monomial) -> Ordering {
    b_pos.cmp(&a_pos).then_with(|| a.grevlex(b))
}

/// An element of a graded free module `S^r`, terms sorted descending
/// in the position-over-term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    terms: Vec<Term>,
}

/// Elements of graded free modules; `components` gives the per-basis polynomials.
pub type ModuleElement = Vector;

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn from_terms(mut terms: Vec<Term>, f: &PrimeField) -> Self {
        terms.sort_by(|a, b| term_cmp(b.pos, &b.mon, a.pos, &a.mon));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.pos == t.pos && last.mon == t.mon => {
                    last.coeff = f.add(last.coeff, t.coeff)
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff != 0);
        Vector { terms: out }
    }

    pub(crate) fn from_sorted(terms: Vec<Term>) -> Self {
        Vector { terms }
    }

    /// Builds the vector whose component `i` is `comps[i]`.
    pub fn from_components(comps: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (i, p) in comps.iter().enumerate() {
            for &(m, c) in p.terms() {
                terms.push(Term {
                    pos: i as u32,
                    mon: m,
                    coeff: c,
                });
            }
        }
        // components are already grevlex-sorted and positions ascend
        Vector { terms }
    }

    /// Single component `p * e_pos`.
    pub fn unit(pos: usize, p: &Polynomial) -> Self {
        Vector {
            terms: p
                .terms()
                .iter()
                .map(|&(m, c)| Term {
                    pos: pos as u32,
                    mon: m,
                    coeff: c,
                })
                .collect(),
        }
    }

    pub fn components(&self, rank: usize) -> Vec<Polynomial> {
        let mut comps: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            comps[t.pos as usize].push((t.mon, t.coeff));
        }
        comps
            .into_iter()
            .map(Polynomial::from_sorted_unchecked)
            .collect()
    }

    pub fn component(&self, pos: usize) -> Polynomial {
        Polynomial::from_sorted_unchecked(
            self.terms
                .iter()
                .filter(|t| t.pos as usize == pos)
                .map(|t| (t.mon, t.coeff))
                .collect(),
        )
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of the element given generator degrees, if homogeneous.
    pub fn degree(&self, gen_degs: &[i32]) -> Option<i32> {
        let t = self.terms.first()?;
        let d = t.mon.degree() as i32 + gen_degs[t.pos as usize];
        self.terms
            .iter()
            .all(|t| t.mon.degree() as i32 + gen_degs[t.pos as usize] == d)
            .then_some(d)
    }

    pub fn is_homogeneous(&self, gen_degs: &[i32]) -> bool {
        self.is_zero() || self.degree(gen_degs).is_some()
    }

    /// Whether every term sits in one position.
    pub fn single_position(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|s| s.pos == t.pos),
        }
    }

    pub fn max_position(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.pos as usize).max()
    }

    pub fn min_position(&self) -> Option<usize> {
        self.terms.first().map(|t| t.pos as usize)
    }

    pub fn scale(&self, c: u32, f: &PrimeField) -> Vector {
        if c == 0 {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: f.mul(t.coeff, c),
                    ..*t
                })
                .collect(),
        }
    }

    pub fn make_monic(&mut self, f: &PrimeField) {
        if let Some(t) = self.terms.first() {
            if t.coeff != 1 {
                let inv = f.inv(t.coeff);
                for t in &mut self.terms {
                    t.coeff = f.mul(t.coeff, inv);
                }
            }
        }
    }

    pub fn mul_poly(&self, p: &Polynomial, f: &PrimeField) -> Vector {
        let mut acc = Vector::zero();
        for &(m, c) in p.terms() {
            acc = acc.add_scaled(self, c, &m, f);
        }
        acc
    }

    pub fn add(&self, other: &Vector, f: &PrimeField) -> Vector {
        self.add_scaled(other, 1, &Monomial::one(), f)
    }

    pub fn sub(&self, other: &Vector, f: &PrimeField) -> Vector {
        self.add_scaled(other, f.neg(1), &Monomial::one(), f)
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, other: &Vector, c: u32, m: &Monomial, f: &PrimeField) -> Vector {
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        Vector {
            terms: merge_scaled(&self.terms, &other.terms, c, m, f),
        }
    }

    /// Move every position `i` to `map(i)`; the map must preserve order.
    pub fn remap_positions(&self, map: impl Fn(usize) -> usize) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    pos: map(t.pos as usize) as u32,
                    ..*t
                })
                .collect(),
        }
    }

    /// Keep only terms with position in `range`, renumbered from zero.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| range.contains(&(t.pos as usize)))
                .map(|t| Term {
                    pos: t.pos - range.start as u32,
                    ..*t
                })
                .collect(),
        }
    }

    /// Concatenate `self` (positions `< offset`) with `other` shifted by `offset`.
    pub fn concat(&self, other: &Vector, offset: usize) -> Vector {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|t| Term {
            pos: t.pos + offset as u32,
            ..*t
        }));
        Vector { terms }
    }
}

pub(crate) fn merge_scaled(
    a: &[Term],
    b: &[Term],
    c: u32,
    m: &Monomial,
    f: &PrimeField,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let bm = b[j].mon.mul(m);
        match term_cmp(a[i].pos, &a[i].mon, b[j].pos, &bm) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(Term {
                    pos: b[j].pos,
                    mon: bm,
                    coeff: f.mul(b[j].coeff, c),
                });
                j += 1;
            }
            Ordering::Equal => {
                let s = f.add(a[i].coeff, f.mul(b[j].coeff, c));
                if s != 0 {
                    out.push(Term {
                        pos: a[i].pos,
                        mon: bm,
                        coeff: s,
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        out.push(Term {
            pos: t.pos,
            mon: t.mon.mul(m),
            coeff: f.mul(t.coeff, c),
        });
    }
    out
}
