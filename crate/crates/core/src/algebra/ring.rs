use std::fmt;
use std::sync::Arc;

use super::field::PrimeField;
use super::monomial::{Monomial, MAX_VARS};
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::groebner::buchberger::{graded_gb, interreduce, reduce, Ctx, LeadIndex};
use crate::groebner::Vector;

struct RingData {
    field: PrimeField,
    vars: Vec<String>,
    weights: Vec<u32>,
    ideal: Vec<Polynomial>,
    gb: Vec<Polynomial>,
    gb_vectors: Vec<Vector>,
    gb_index: LeadIndex,
}

/// `F_p[x_1..x_n] / I` with `I` homogeneous, graded by positive variable weights.
///
/// The reduced Gröbner basis of `I` (grevlex) is computed once at
/// construction; clones share it.
#[derive(Clone)]
pub struct QuotientRing(Arc<RingData>);

/// Arithmetic operations accepted by [`QuotientRing::poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    ScalarMul(i64),
}

impl QuotientRing {
    /// The graded polynomial ring `F_p[vars]`. `weights` defaults to all ones.
    pub fn polynomial_ring(p: u64, vars: &[&str], weights: Option<&[u32]>) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                got: vars.len(),
                max: MAX_VARS,
            });
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.to_string()));
            }
        }
        let weights = match weights {
            Some(w) => {
                if w.len() != vars.len() {
                    return Err(Error::BadRing(format!(
                        "{} weights for {} variables",
                        w.len(),
                        vars.len()
                    )));
                }
                if w.contains(&0) {
                    return Err(Error::BadRing("variable weights must be positive".into()));
                }
                w.to_vec()
            }
            None => vec![1; vars.len()],
        };
        Ok(QuotientRing(Arc::new(RingData {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            weights,
            ideal: Vec::new(),
            gb: Vec::new(),
            gb_vectors: Vec::new(),
            gb_index: LeadIndex::new(1),
        })))
    }

    /// `make_ring`: polynomial ring modulo the ideal generated by the parsed `ideal_gens`.
    pub fn new(p: u64, vars: &[&str], weights: &[u32], ideal_gens: &[&str]) -> Result<Self> {
        let s = Self::polynomial_ring(p, vars, Some(weights))?;
        let gens = ideal_gens
            .iter()
            .map(|g| s.parse(g))
            .collect::<Result<Vec<_>>>()?;
        s.quotient(&gens)
    }

    /// The ring `self / (gens)`, i.e. the ambient ring modulo the old ideal plus `gens`.
    pub fn quotient(&self, gens: &[Polynomial]) -> Result<Self> {
        for g in gens {
            self.check_poly(g)?;
            if !g.is_homogeneous() {
                return Err(Error::NonHomogeneousIdeal(self.format(g)));
            }
        }
        let mut ideal = self.0.ideal.clone();
        ideal.extend(gens.iter().filter(|g| !g.is_zero()).cloned());
        let f = self.0.field;
        let w = &self.0.weights;
        let inputs: Vec<Vector> = ideal.iter().map(|g| Vector::unit(0, g)).collect();
        let ctx = Ctx {
            f,
            weights: w,
            gen_degs: &[0],
        };
        let res = graded_gb(ctx, &[], &inputs);
        let mut gbv = interreduce(&f, res.gb, 1);
        gbv.sort_by(|a, b| {
            let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
            y.mon.grevlex(&x.mon)
        });
        let gb = gbv.iter().map(|v| v.component(0)).collect();
        let gb_index = LeadIndex::build(1, &gbv);
        Ok(QuotientRing(Arc::new(RingData {
            field: f,
            vars: self.0.vars.clone(),
            weights: w.clone(),
            ideal,
            gb,
            gb_vectors: gbv,
            gb_index,
        })))
    }

    /// The ambient polynomial ring with the same variables and weights.
    pub fn ambient(&self) -> QuotientRing {
        let vars: Vec<&str> = self.0.vars.iter().map(|s| s.as_str()).collect();
        Self::polynomial_ring(
            self.0.field.characteristic() as u64,
            &vars,
            Some(&self.0.weights),
        )
        .unwrap()
    }

    pub fn field(&self) -> PrimeField {
        self.0.field
    }

    pub fn characteristic(&self) -> u32 {
        self.0.field.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.0.weights
    }

    pub fn ideal_generators(&self) -> &[Polynomial] {
        &self.0.ideal
    }

    /// Reduced Gröbner basis of the defining ideal, sorted by descending lead.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        &self.0.gb
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.0.gb.is_empty()
    }

    /// Same variables, weights and characteristic (the ideals may differ).
    pub fn same_ambient(&self, other: &QuotientRing) -> bool {
        self.0.field == other.0.field
            && self.0.vars == other.0.vars
            && self.0.weights == other.0.weights
    }

    /// Whether the defining ideal of `other` is contained in ours.
    pub fn ideal_contains(&self, other: &QuotientRing) -> bool {
        self.same_ambient(other) && other.0.gb.iter().all(|g| self.reduce(g).is_zero())
    }

    pub fn var(&self, name: &str) -> Option<Polynomial> {
        let i = self.0.vars.iter().position(|v| v == name)?;
        Some(Polynomial::term(Monomial::var(i, &self.0.weights), 1))
    }

    pub fn monomial(&self, exps: &[u32]) -> Monomial {
        Monomial::from_exponents(exps, &self.0.weights)
    }

    /// Parse a polynomial expression such as `x^2 - 3*x*y + 1`.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        crate::script::parser::parse_expression(text)?.eval(self)
    }

    /// Normal form modulo the defining ideal.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        if self.0.gb.is_empty() || p.is_zero() {
            return p.clone();
        }
        reduce(
            &self.0.field,
            &Vector::unit(0, p),
            &self.0.gb_vectors,
            &self.0.gb_index,
        )
        .component(0)
    }

    /// Componentwise normal form modulo the defining ideal.
    pub fn reduce_vector(&self, v: &Vector) -> Vector {
        if self.0.gb.is_empty() || v.is_zero() {
            return v.clone();
        }
        let mut out: Vec<crate::groebner::Term> = Vec::with_capacity(v.len());
        let terms = v.terms();
        let mut start = 0;
        while start < terms.len() {
            let pos = terms[start].pos;
            let mut end = start;
            while end < terms.len() && terms[end].pos == pos {
                end += 1;
            }
            let comp = Vector::from_sorted(
                terms[start..end]
                    .iter()
                    .map(|t| crate::groebner::Term { pos: 0, ..*t })
                    .collect(),
            );
            let r = reduce(&self.0.field, &comp, &self.0.gb_vectors, &self.0.gb_index);
            out.extend(
                r.terms()
                    .iter()
                    .map(|t| crate::groebner::Term { pos, ..*t }),
            );
            start = end;
        }
        Vector::from_sorted(out)
    }

    pub(crate) fn ideal_gb_vectors(&self) -> &[Vector] {
        &self.0.gb_vectors
    }

    fn check_poly(&self, p: &Polynomial) -> Result<()> {
        let n = self.nvars();
        for (m, _) in p.terms() {
            let exps = m.exponents(MAX_VARS);
            if exps[n..].iter().any(|&e| e != 0)
                || Monomial::from_exponents(&exps[..n], &self.0.weights).degree() != m.degree()
            {
                return Err(Error::RingMismatch);
            }
        }
        Ok(())
    }

    /// Exact arithmetic in the ambient polynomial ring.
    pub fn poly_arith(&self, f: &Polynomial, g: &Polynomial, op: PolyOp) -> Result<Polynomial> {
        self.check_poly(f)?;
        self.check_poly(g)?;
        let fld = self.0.field;
        Ok(match op {
            PolyOp::Add => f.add(g, &fld),
            PolyOp::Sub => f.sub(g, &fld),
            PolyOp::Mul => f.mul(g, &fld),
            PolyOp::ScalarMul(c) => f.scale(fld.reduce(c), &fld),
        })
    }

    /// Weighted degree of a nonzero polynomial; `None` when it is not homogeneous.
    pub fn weighted_degree(&self, f: &Polynomial) -> Result<Option<u32>> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        self.check_poly(f)?;
        Ok(f.homogeneous_degree())
    }

    pub fn format(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let fld = self.0.field;
        let mut s = String::new();
        for (k, (m, c)) in p.terms().iter().enumerate() {
            let c = fld.signed(*c);
            let mut mono = String::new();
            for i in 0..self.nvars() {
                let e = m.exponent(i);
                if e == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(&self.0.vars[i]);
                if e > 1 {
                    mono.push_str(&format!("^{e}"));
                }
            }
            let mag = c.unsigned_abs();
            let body = match (mono.is_empty(), mag) {
                (true, _) => mag.to_string(),
                (false, 1) => mono,
                (false, _) => format!("{mag}*{mono}"),
            };
            if k == 0 {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }

    /// Human-readable ring description, e.g. `F(101)[x,y]/(x^3)`.
    pub fn describe(&self) -> String {
        let mut s = format!("F({})[", self.characteristic());
        for (i, v) in self.0.vars.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(v);
            if self.0.weights[i] != 1 {
                s.push_str(&format!(":{}", self.0.weights[i]));
            }
        }
        s.push(']');
        if !self.0.gb.is_empty() {
            let gens: Vec<String> = self.0.gb.iter().map(|g| self.format(g)).collect();
            s.push_str(&format!("/({})", gens.join(", ")));
        }
        s
    }
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.same_ambient(other) && self.0.gb == other.0.gb)
    }
}
impl Eq for QuotientRing {}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_ring_examples() {
        let r = QuotientRing::new(101, &["x", "y"], &[1, 1], &["x^3"]).unwrap();
        assert_eq!(r.groebner_basis().len(), 1);
        let pid = QuotientRing::new(101, &["x"], &[1], &[]).unwrap();
        assert!(pid.is_polynomial_ring());
        assert!(QuotientRing::new(101, &["x", "y"], &[1, 1], &["x^2 + x*y"]).is_ok());
        assert!(matches!(
            QuotientRing::new(101, &["x", "y"], &[1, 1], &["x^2 + y"]),
            Err(Error::NonHomogeneousIdeal(_))
        ));
        assert_eq!(
            QuotientRing::new(4, &["x"], &[1], &[]).unwrap_err(),
            Error::NotPrime(4)
        );
        assert_eq!(
            QuotientRing::new(101, &["x", "x"], &[1, 1], &[]).unwrap_err(),
            Error::DuplicateVariable("x".into())
        );
    }

    #[test]
    fn weighted_degree_examples() {
        let r = QuotientRing::new(101, &["x"], &[1], &[]).unwrap();
        assert_eq!(
            r.weighted_degree(&r.parse("x^3").unwrap()).unwrap(),
            Some(3)
        );
        let s = QuotientRing::new(101, &["x", "y"], &[1, 1], &[]).unwrap();
        assert_eq!(
            s.weighted_degree(&s.parse("x^2 + y").unwrap()).unwrap(),
            None
        );
        let w = QuotientRing::new(101, &["x", "y"], &[2, 3], &[]).unwrap();
        assert_eq!(
            w.weighted_degree(&w.parse("x*y").unwrap()).unwrap(),
            Some(5)
        );
        assert_eq!(
            w.weighted_degree(&Polynomial::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn poly_arith_examples() {
        let s = QuotientRing::new(101, &["x", "y"], &[1, 1], &[]).unwrap();
        let x = s.parse("x").unwrap();
        let y = s.parse("y").unwrap();
        let xy = s.poly_arith(&x, &y, PolyOp::Mul).unwrap();
        assert_eq!(
            s.poly_arith(&xy, &xy, PolyOp::Add).unwrap(),
            s.parse("2*x*y").unwrap()
        );
        assert!(s
            .poly_arith(&x, &x, PolyOp::ScalarMul(101))
            .unwrap()
            .is_zero());
        let three = QuotientRing::new(101, &["x", "y", "z"], &[1, 1, 1], &[]).unwrap();
        let z = three.parse("z").unwrap();
        assert_eq!(s.poly_arith(&x, &z, PolyOp::Add), Err(Error::RingMismatch));
    }

    #[test]
    fn gb_of_gb_is_idempotent() {
        let r = QuotientRing::new(
            101,
            &["x", "y", "z"],
            &[1, 1, 1],
            &["x*y - z^2", "y^2 - x*z", "x^2*y - z^3"],
        )
        .unwrap();
        let again = r.ambient().quotient(r.groebner_basis()).unwrap();
        assert_eq!(r.groebner_basis(), again.groebner_basis());
    }

    #[test]
    fn reduces_modulo_ideal() {
        let r = QuotientRing::new(101, &["x", "y"], &[1, 1], &["x^3"]).unwrap();
        assert!(r.reduce(&r.parse("x^4 + x^3*y").unwrap()).is_zero());
        assert_eq!(
            r.reduce(&r.parse("x^2*y").unwrap()),
            r.parse("x^2*y").unwrap()
        );
    }
}
