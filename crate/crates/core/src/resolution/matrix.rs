use serde::Serialize;

use crate::algebra::{Polynomial, QuotientRing};
use crate::error::{Error, Result};
use crate::groebner::Vector;

/// A homogeneous map `⊕ R(-source_j) → ⊕ R(-target_i)`, stored by columns.
///
/// Entry `(i, j)` is zero or homogeneous of degree `source[j] - target[i]`,
/// and reduced modulo the defining ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    target: Vec<i32>,
    source: Vec<i32>,
    cols: Vec<Vector>,
}

/// JSON shape of a matrix: degrees plus row-major entries as strings.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct MatrixJson {
    pub target_degrees: Vec<i32>,
    pub source_degrees: Vec<i32>,
    pub entries: Vec<Vec<String>>,
}

impl GradedMatrix {
    /// Build from row-major entries, checking homogeneity and reducing modulo the ideal.
    pub fn new(
        ring: &QuotientRing,
        target: Vec<i32>,
        source: Vec<i32>,
        rows: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if rows.len() != target.len() || rows.iter().any(|r| r.len() != source.len()) {
            return Err(Error::InhomogeneousMatrix(format!(
                "shape does not match {} target and {} source degrees",
                target.len(),
                source.len()
            )));
        }
        let mut cols = Vec::with_capacity(source.len());
        for j in 0..source.len() {
            let mut comps = Vec::with_capacity(target.len());
            for i in 0..target.len() {
                let e = ring.reduce(&rows[i][j]);
                if !e.is_zero() {
                    match e.homogeneous_degree() {
                        Some(d) if d as i32 == source[j] - target[i] => {}
                        _ => {
                            return Err(Error::InhomogeneousMatrix(format!(
                                "entry ({i},{j}) = {} should have degree {}",
                                ring.format(&e),
                                source[j] - target[i]
                            )))
                        }
                    }
                }
                comps.push(e);
            }
            cols.push(Vector::from_components(&comps));
        }
        Ok(GradedMatrix {
            target,
            source,
            cols,
        })
    }

    /// Infer source degrees column by column from the entries.
    pub fn with_inferred_source(
        ring: &QuotientRing,
        target: Vec<i32>,
        rows: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut source = Vec::with_capacity(ncols);
        for j in 0..ncols {
            let mut deg = None;
            for (i, row) in rows.iter().enumerate() {
                let e = ring.reduce(
                    row.get(j)
                        .ok_or_else(|| Error::InhomogeneousMatrix("ragged rows".into()))?,
                );
                if e.is_zero() {
                    continue;
                }
                let d = e.homogeneous_degree().ok_or_else(|| {
                    Error::InhomogeneousMatrix(format!("entry ({i},{j}) is not homogeneous"))
                })? as i32
                    + target[i];
                match deg {
                    None => deg = Some(d),
                    Some(old) if old != d => {
                        return Err(Error::InhomogeneousMatrix(format!(
                            "column {j} mixes source degrees {old} and {d}"
                        )))
                    }
                    _ => {}
                }
            }
            source.push(deg.ok_or_else(|| {
                Error::InhomogeneousMatrix(format!(
                    "column {j} is zero; its degree cannot be inferred"
                ))
            })?);
        }
        Self::new(ring, target, source, rows)
    }

    pub(crate) fn from_columns(target: Vec<i32>, source: Vec<i32>, cols: Vec<Vector>) -> Self {
        debug_assert_eq!(source.len(), cols.len());
        GradedMatrix {
            target,
            source,
            cols,
        }
    }

    pub fn zero(target: Vec<i32>, source: Vec<i32>) -> Self {
        let cols = vec![Vector::zero(); source.len()];
        GradedMatrix {
            target,
            source,
            cols,
        }
    }

    pub fn identity(degs: Vec<i32>) -> Self {
        let cols = (0..degs.len())
            .map(|i| Vector::unit(i, &Polynomial::constant(1)))
            .collect();
        GradedMatrix {
            target: degs.clone(),
            source: degs,
            cols,
        }
    }

    /// `f * identity` on `⊕ R(-degs_i)`, landing in degrees shifted by `deg f`.
    pub fn scalar(ring: &QuotientRing, f: &Polynomial, degs: &[i32]) -> Result<Self> {
        let d = f.homogeneous_degree().ok_or(Error::InhomogeneousElement)? as i32;
        let f = ring.reduce(f);
        let cols = (0..degs.len()).map(|i| Vector::unit(i, &f)).collect();
        Ok(GradedMatrix {
            target: degs.to_vec(),
            source: degs.iter().map(|x| x + d).collect(),
            cols,
        })
    }

    pub fn nrows(&self) -> usize {
        self.target.len()
    }

    pub fn ncols(&self) -> usize {
        self.source.len()
    }

    pub fn target(&self) -> &[i32] {
        &self.target
    }

    pub fn source(&self) -> &[i32] {
        &self.source
    }

    pub fn columns(&self) -> &[Vector] {
        &self.cols
    }

    pub fn column(&self, j: usize) -> &Vector {
        &self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        self.cols[j].component(i)
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        let mut rows = vec![vec![Polynomial::zero(); self.ncols()]; self.nrows()];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, p) in c.components(self.nrows()).into_iter().enumerate() {
                rows[i][j] = p;
            }
        }
        rows
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// Dual map `Hom(-, R)`: transpose with degrees negated.
    pub fn transpose(&self) -> GradedMatrix {
        let rows = self.rows();
        let cols = rows.iter().map(|r| Vector::from_components(r)).collect();
        GradedMatrix {
            target: self.source.iter().map(|d| -d).collect(),
            source: self.target.iter().map(|d| -d).collect(),
            cols,
        }
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, ring: &QuotientRing, other: &GradedMatrix) -> Result<GradedMatrix> {
        if other.target != self.source {
            return Err(Error::ModuleMismatch(format!(
                "cannot compose: source degrees {:?} vs target degrees {:?}",
                self.source, other.target
            )));
        }
        let f = ring.field();
        let cols = other
            .cols
            .iter()
            .map(|c| {
                let mut acc = Vector::zero();
                for (k, p) in c.components(self.ncols()).iter().enumerate() {
                    if !p.is_zero() {
                        acc = acc.add(&self.cols[k].mul_poly(p, &f), &f);
                    }
                }
                ring.reduce_vector(&acc)
            })
            .collect();
        Ok(GradedMatrix {
            target: self.target.clone(),
            source: other.source.clone(),
            cols,
        })
    }

    /// Twist both sides: `M(s)` has generators in degrees `d - s`.
    pub fn twist(&self, s: i32) -> GradedMatrix {
        GradedMatrix {
            target: self.target.iter().map(|d| d - s).collect(),
            source: self.source.iter().map(|d| d - s).collect(),
            cols: self.cols.clone(),
        }
    }

    /// Columns of `self` followed by columns of `other` (same target).
    pub fn hstack(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if self.target != other.target {
            return Err(Error::ModuleMismatch(
                "hstack with different targets".into(),
            ));
        }
        let mut m = self.clone();
        m.source.extend_from_slice(&other.source);
        m.cols.extend(other.cols.iter().cloned());
        Ok(m)
    }

    pub fn block_diag(&self, other: &GradedMatrix) -> GradedMatrix {
        let r = self.nrows();
        let mut target = self.target.clone();
        target.extend_from_slice(&other.target);
        let mut source = self.source.clone();
        source.extend_from_slice(&other.source);
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().map(|c| c.remap_positions(|p| p + r)));
        GradedMatrix {
            target,
            source,
            cols,
        }
    }

    /// Keep the listed columns, in order.
    pub fn select_columns(&self, keep: &[usize]) -> GradedMatrix {
        GradedMatrix {
            target: self.target.clone(),
            source: keep.iter().map(|&j| self.source[j]).collect(),
            cols: keep.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }

    /// Drop row `i` (and renumber).
    pub(crate) fn without_row(&self, i: usize) -> GradedMatrix {
        let mut target = self.target.clone();
        target.remove(i);
        let cols = self
            .cols
            .iter()
            .map(|c| {
                Vector::from_sorted(
                    c.terms()
                        .iter()
                        .filter(|t| t.pos as usize != i)
                        .map(|t| {
                            let mut t = *t;
                            if t.pos as usize > i {
                                t.pos -= 1;
                            }
                            t
                        })
                        .collect(),
                )
            })
            .collect();
        GradedMatrix {
            target,
            source: self.source.clone(),
            cols,
        }
    }

    pub(crate) fn without_column(&self, j: usize) -> GradedMatrix {
        let mut m = self.clone();
        m.source.remove(j);
        m.cols.remove(j);
        m
    }

    pub(crate) fn set_column(&mut self, j: usize, v: Vector) {
        self.cols[j] = v;
    }

    /// First entry that is a nonzero scalar, as `(row, col, value)`.
    pub fn unit_entry(&self) -> Option<(usize, usize, u32)> {
        for (j, c) in self.cols.iter().enumerate() {
            for t in c.terms() {
                if t.mon.is_one() {
                    return Some((t.pos as usize, j, t.coeff));
                }
            }
        }
        None
    }

    /// No entry is a nonzero scalar (graded Nakayama minimality).
    pub fn is_minimal(&self) -> bool {
        self.unit_entry().is_none()
    }

    /// Scalar part: `c[i][j]` is the constant coefficient of entry `(i, j)`.
    pub fn constant_part(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0u32; self.ncols()]; self.nrows()];
        for (j, c) in self.cols.iter().enumerate() {
            for t in c.terms() {
                if t.mon.is_one() {
                    out[t.pos as usize][j] = t.coeff;
                }
            }
        }
        out
    }

    pub fn to_json(&self, ring: &QuotientRing) -> MatrixJson {
        MatrixJson {
            target_degrees: self.target.clone(),
            source_degrees: self.source.clone(),
            entries: self
                .rows()
                .iter()
                .map(|r| r.iter().map(|p| ring.format(p)).collect())
                .collect(),
        }
    }

    /// `[[a, b], [c, d]]` in script syntax.
    pub fn format(&self, ring: &QuotientRing) -> String {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter()
                        .map(|p| ring.format(p))
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi(ring: &QuotientRing) -> GradedMatrix {
        let p = |s: &str| ring.parse(s).unwrap();
        GradedMatrix::with_inferred_source(
            ring,
            vec![1, 1],
            vec![vec![p("x^2"), p("-y")], vec![p("0"), p("x")]],
        )
        .unwrap()
    }

    #[test]
    fn infers_source_degrees() {
        let s = QuotientRing::new(101, &["x", "y"], &[1, 1], &[]).unwrap();
        let m = phi(&s);
        assert_eq!(m.source(), &[3, 2]);
        let bad = GradedMatrix::with_inferred_source(
            &s,
            vec![0],
            vec![vec![s.parse("x + y^2").unwrap()]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn transpose_is_an_involution() {
        let s = QuotientRing::new(101, &["x", "y"], &[1, 1], &[]).unwrap();
        let m = phi(&s);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().target(), &[-3, -2]);
    }

    #[test]
    fn factorization_product() {
        let s = QuotientRing::new(101, &["x", "y"], &[1, 1], &[]).unwrap();
        let p = |t: &str| s.parse(t).unwrap();
        let phi = phi(&s);
        let psi = GradedMatrix::new(
            &s,
            vec![3, 2],
            vec![4, 4],
            vec![vec![p("x"), p("y")], vec![p("0"), p("x^2")]],
        )
        .unwrap();
        let prod = phi.compose(&s, &psi).unwrap();
        assert_eq!(prod.entry(0, 0), p("x^3"));
        assert!(prod.entry(0, 1).is_zero());
        assert_eq!(prod.entry(1, 1), p("x^3"));
    }
}
