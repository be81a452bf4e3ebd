use super::buchberger::{graded_gb, interreduce, reduce, Ctx, LeadIndex};
use super::vector::{Term, Vector};
use crate::algebra::{Monomial, QuotientRing};
use crate::error::{Error, Result};

/// Reduced Gröbner basis of a submodule `U + I·F` of a graded free module
/// `F = ⊕ S(-d_i)` over the ambient polynomial ring `S`.
#[derive(Clone)]
pub struct ModuleGB {
    ring: QuotientRing,
    degrees: Vec<i32>,
    gens: Vec<Vector>,
    index: LeadIndex,
    reduced: bool,
}

/// `g·e_i` for every ideal Gröbner basis element `g` and every position `i`.
pub(crate) fn ideal_multiples(
    ring: &QuotientRing,
    positions: std::ops::Range<usize>,
) -> Vec<Vector> {
    let mut out = Vec::new();
    for i in positions {
        for g in ring.ideal_gb_vectors() {
            out.push(g.remap_positions(|_| i));
        }
    }
    out
}

pub(crate) fn check_homogeneous(degrees: &[i32], gens: &[Vector]) -> Result<()> {
    for g in gens {
        if g.max_position().is_some_and(|p| p >= degrees.len()) {
            return Err(Error::ModuleMismatch(format!(
                "generator has a component beyond rank {}",
                degrees.len()
            )));
        }
        if !g.is_homogeneous(degrees) {
            return Err(Error::InhomogeneousGenerator);
        }
    }
    Ok(())
}

/// Gröbner basis of the submodule generated by `gens` together with the
/// defining ideal times the free module of the given generator degrees.
pub fn buchberger(ring: &QuotientRing, degrees: &[i32], gens: &[Vector]) -> Result<ModuleGB> {
    check_homogeneous(degrees, gens)?;
    let f = ring.field();
    let ctx = Ctx {
        f,
        weights: ring.weights(),
        gen_degs: degrees,
    };
    let base = ideal_multiples(ring, 0..degrees.len());
    let res = graded_gb(ctx, &base, gens);
    let mut gb = interreduce(&f, res.gb, degrees.len());
    gb.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        super::vector::term_cmp(y.pos, &y.mon, x.pos, &x.mon)
    });
    let index = LeadIndex::build(degrees.len(), &gb);
    Ok(ModuleGB {
        ring: ring.clone(),
        degrees: degrees.to_vec(),
        gens: gb,
        index,
        reduced: true,
    })
}

/// Indices of a minimal generating set of `gens` modulo `I·F`, chosen
/// greedily in order of degree and then input order.
pub fn minimal_generators(
    ring: &QuotientRing,
    degrees: &[i32],
    gens: &[Vector],
) -> Result<Vec<usize>> {
    check_homogeneous(degrees, gens)?;
    let ctx = Ctx {
        f: ring.field(),
        weights: ring.weights(),
        gen_degs: degrees,
    };
    let base = ideal_multiples(ring, 0..degrees.len());
    Ok(graded_gb(ctx, &base, gens).minimal_inputs)
}

impl ModuleGB {
    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Vector] {
        &self.gens
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Remainder with no term divisible by a leading term.
    pub fn normal_form(&self, v: &Vector) -> Result<Vector> {
        if v.max_position().is_some_and(|p| p >= self.rank()) {
            return Err(Error::ModuleMismatch(format!(
                "element has a component beyond rank {}",
                self.rank()
            )));
        }
        Ok(reduce(&self.ring.field(), v, &self.gens, &self.index))
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// Is `(pos, mon)` outside the leading-term module?
    pub fn is_standard(&self, pos: usize, mon: &Monomial) -> bool {
        !self.gens.iter().any(|g| {
            let t = g.lead().unwrap();
            t.pos as usize == pos && t.mon.divides(mon)
        })
    }

    /// Standard terms `(pos, monomial)` of degree `d`; a basis of `(F / U)_d`.
    pub fn standard_terms(&self, d: i32) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (i, &gd) in self.degrees.iter().enumerate() {
            if d < gd {
                continue;
            }
            for m in Monomial::all_of_degree((d - gd) as u32, self.ring.weights()) {
                if self.is_standard(i, &m) {
                    out.push((i, m));
                }
            }
        }
        out
    }

    /// `dim_k (F / (U + I·F))_d`.
    pub fn quotient_dimension(&self, d: i32) -> usize {
        self.standard_terms(d).len()
    }

    /// Buchberger criterion: every S-pair reduces to zero.
    pub fn is_groebner(&self) -> bool {
        let f = self.ring.field();
        let w = self.ring.weights();
        for i in 0..self.gens.len() {
            for j in i + 1..self.gens.len() {
                let (a, b) = (self.gens[i].lead().unwrap(), self.gens[j].lead().unwrap());
                if a.pos != b.pos {
                    continue;
                }
                let l = a.mon.lcm(&b.mon, w);
                let s = Vector::zero()
                    .add_scaled(&self.gens[i], b.coeff, &a.mon.quotient_of(&l), &f)
                    .add_scaled(&self.gens[j], f.neg(a.coeff), &b.mon.quotient_of(&l), &f);
                if !reduce(&f, &s, &self.gens, &self.index).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Lifts along a homogeneous map `A: ⊕ R(-source_j) → ⊕ R(-target_i)` and
/// computes its kernel, both from one Gröbner basis of the graph of `A`
/// inside `F_0 ⊕ F_1` with `F_0` eliminated first.
#[derive(Clone)]
pub struct Lifter {
    ring: QuotientRing,
    target: Vec<i32>,
    source: Vec<i32>,
    gb: Vec<Vector>,
    index: LeadIndex,
}

impl Lifter {
    /// `columns[j]` is the image of the `j`-th source generator.
    pub fn new(
        ring: &QuotientRing,
        target: &[i32],
        source: &[i32],
        columns: &[Vector],
    ) -> Result<Self> {
        check_homogeneous(target, columns)?;
        let r = target.len();
        let mut degs = target.to_vec();
        degs.extend_from_slice(source);
        let inputs: Vec<Vector> = columns
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let mut terms = c.terms().to_vec();
                terms.push(Term {
                    pos: (r + j) as u32,
                    mon: Monomial::one(),
                    coeff: 1,
                });
                Vector::from_sorted(terms)
            })
            .collect();
        for (j, (v, c)) in inputs.iter().zip(columns).enumerate() {
            if !c.is_zero() && c.degree(target) != Some(source[j]) {
                return Err(Error::InhomogeneousMatrix(format!(
                    "column {j} does not have degree {}",
                    source[j]
                )));
            }
            debug_assert!(v.is_homogeneous(&degs) || !c.is_zero());
        }
        let ctx = Ctx {
            f: ring.field(),
            weights: ring.weights(),
            gen_degs: &degs,
        };
        let base = ideal_multiples(ring, 0..degs.len());
        let res = graded_gb(ctx, &base, &inputs);
        let index = LeadIndex::build(degs.len(), &res.gb);
        Ok(Lifter {
            ring: ring.clone(),
            target: target.to_vec(),
            source: source.to_vec(),
            gb: res.gb,
            index,
        })
    }

    /// Coefficients `h` with `A·h ≡ y` modulo the ideal, or `None` if `y ∉ im A + I·F_0`.
    pub fn lift(&self, y: &Vector) -> Option<Vector> {
        let r = self.target.len();
        if y.max_position().is_some_and(|p| p >= r) {
            return None;
        }
        let f = self.ring.field();
        let nf = reduce(&f, y, &self.gb, &self.index);
        if nf.min_position().is_some_and(|p| p < r) {
            return None;
        }
        let w = nf.remap_positions(|p| p - r).scale(f.neg(1), &f);
        Some(self.ring.reduce_vector(&w))
    }

    /// Is `y` in the image of `A` modulo the ideal?
    pub fn in_image(&self, y: &Vector) -> bool {
        let f = self.ring.field();
        let nf = reduce(&f, y, &self.gb, &self.index);
        !nf.min_position().is_some_and(|p| p < self.target.len())
    }

    /// Minimal homogeneous generators of `ker A` over `R`, reduced modulo the ideal.
    pub fn syzygies(&self) -> Vec<Vector> {
        let r = self.target.len();
        let m = self.source.len();
        let mut syz: Vec<Vector> = self
            .gb
            .iter()
            .filter(|g| g.lead().unwrap().pos as usize >= r)
            .map(|g| self.ring.reduce_vector(&g.remap_positions(|p| p - r)))
            .filter(|v| !v.is_zero())
            .collect();
        let ctx = Ctx {
            f: self.ring.field(),
            weights: self.ring.weights(),
            gen_degs: &self.source,
        };
        syz.sort_by_key(|v| ctx.degree(v));
        let base = ideal_multiples(&self.ring, 0..m);
        let keep = graded_gb(ctx, &base, &syz).minimal_inputs;
        keep.into_iter()
            .map(|i| {
                let mut v = syz[i].clone();
                v.make_monic(&self.ring.field());
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Polynomial;

    fn col(ring: &QuotientRing, entries: &[&str]) -> Vector {
        let comps: Vec<Polynomial> = entries.iter().map(|e| ring.parse(e).unwrap()).collect();
        Vector::from_components(&comps)
    }

    #[test]
    fn principal_gb() {
        let s = QuotientRing::new(101, &["x", "y"], &[1, 1], &[]).unwrap();
        let gb = buchberger(&s, &[0], &[col(&s, &["x"])]).unwrap();
        assert_eq!(gb.generators(), &[col(&s, &["x"])]);
        assert!(gb.contains(&col(&s, &["x^3"])).unwrap());
        assert_eq!(gb.normal_form(&col(&s, &["y"])).unwrap(), col(&s, &["y"]));
        assert!(gb.normal_form(&col(&s, &["0", "y"])).is_err());
    }

    #[test]
    fn ideal_multiples_reduce_away() {
        let r = QuotientRing::new(101, &["x", "y"], &[1, 1], &["x^3"]).unwrap();
        let gb = buchberger(&r, &[0], &[col(&r, &["x"]), col(&r, &["y"])]).unwrap();
        assert_eq!(gb.generators().len(), 2);
        assert!(gb.is_groebner());
    }

    #[test]
    fn inhomogeneous_generator_rejected() {
        let s = QuotientRing::new(101, &["x", "y"], &[1, 1], &[]).unwrap();
        assert_eq!(
            buchberger(&s, &[0], &[col(&s, &["x + y^2"])]).err(),
            Some(Error::InhomogeneousGenerator)
        );
    }

    #[test]
    fn regular_element_has_no_syzygies() {
        let s = QuotientRing::new(101, &["x", "y"], &[1, 1], &[]).unwrap();
        let l = Lifter::new(&s, &[0], &[1], &[col(&s, &["x"])]).unwrap();
        assert!(l.syzygies().is_empty());
    }

    #[test]
    fn annihilator_of_x_mod_x2() {
        let r = QuotientRing::new(101, &["x"], &[1], &["x^2"]).unwrap();
        let l = Lifter::new(&r, &[0], &[1], &[col(&r, &["x"])]).unwrap();
        assert_eq!(l.syzygies(), vec![col(&r, &["x"])]);
    }

    #[test]
    fn lift_recovers_coefficients() {
        let s = QuotientRing::new(101, &["x", "y"], &[1, 1], &[]).unwrap();
        let cols = [col(&s, &["x", "0"]), col(&s, &["y", "x"])];
        let l = Lifter::new(&s, &[0, 0], &[1, 1], &cols).unwrap();
        let h = l.lift(&col(&s, &["x*y + y^2", "x*y"])).unwrap();
        assert_eq!(h, col(&s, &["y", "y"]));
        assert!(l.lift(&col(&s, &["0", "y"])).is_none());
    }
}
