use crate::algebra::{Polynomial, QuotientRing};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, minimal_generators, Lifter, ModuleGB, Vector};

use super::GradedMatrix;

/// A graded module `M = coker(A)` where `A: F_1 → F_0` is homogeneous.
///
/// The generator degrees of `M` are the target degrees of `A`.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    ring: QuotientRing,
    matrix: GradedMatrix,
    minimal: bool,
}

/// How a list of generators in a free module defines a module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationMode {
    /// `F / <gens>`
    Quotient,
    /// `<gens> ⊂ F/IF`
    Submodule,
}

impl PartialEq for ModulePresentation {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.matrix == other.matrix
    }
}

impl ModulePresentation {
    /// `coker(matrix)`, pruned to a minimal presentation.
    pub fn coker(ring: &QuotientRing, matrix: &GradedMatrix) -> Result<Self> {
        let m = Self::coker_unpruned(ring, matrix)?;
        Ok(m.pruned())
    }

    /// `coker(matrix)` kept exactly as given (after reduction modulo the ideal).
    pub fn coker_unpruned(ring: &QuotientRing, matrix: &GradedMatrix) -> Result<Self> {
        crate::groebner::check_homogeneous(matrix.target(), matrix.columns())?;
        for (j, c) in matrix.columns().iter().enumerate() {
            if !c.is_zero() && c.degree(matrix.target()) != Some(matrix.source()[j]) {
                return Err(Error::InhomogeneousMatrix(format!(
                    "column {j} does not have its declared degree"
                )));
            }
        }
        let cols = matrix
            .columns()
            .iter()
            .map(|c| ring.reduce_vector(c))
            .collect();
        let matrix =
            GradedMatrix::from_columns(matrix.target().to_vec(), matrix.source().to_vec(), cols);
        Ok(ModulePresentation {
            ring: ring.clone(),
            matrix,
            minimal: false,
        })
    }

    /// The free module `⊕ R(-d)`.
    pub fn free(ring: &QuotientRing, degrees: &[i32]) -> Self {
        ModulePresentation {
            ring: ring.clone(),
            matrix: GradedMatrix::zero(degrees.to_vec(), vec![]),
            minimal: true,
        }
    }

    pub fn zero(ring: &QuotientRing) -> Self {
        Self::free(ring, &[])
    }

    /// The cyclic module `R / (gens)`.
    pub fn cyclic(ring: &QuotientRing, gens: &[Polynomial]) -> Result<Self> {
        let vs: Vec<Vector> = gens.iter().map(|g| Vector::unit(0, g)).collect();
        minimal_presentation(ring, &[0], &vs, PresentationMode::Quotient)
    }

    pub(crate) fn from_minimal(ring: &QuotientRing, matrix: GradedMatrix) -> Self {
        ModulePresentation {
            ring: ring.clone(),
            matrix,
            minimal: true,
        }
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn matrix(&self) -> &GradedMatrix {
        &self.matrix
    }

    pub fn generator_degrees(&self) -> &[i32] {
        self.matrix.target()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// Number of generators of this presentation (equal to `μ` when minimal).
    pub fn num_generators(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.pruned_ref().matrix.nrows() == 0
    }

    fn pruned_ref(&self) -> std::borrow::Cow<'_, ModulePresentation> {
        if self.minimal {
            std::borrow::Cow::Borrowed(self)
        } else {
            std::borrow::Cow::Owned(self.pruned())
        }
    }

    /// Is the module free (no relations once minimal)?
    pub fn is_free(&self) -> bool {
        self.pruned_ref().matrix.ncols() == 0
    }

    /// Minimal presentation: eliminate generators against scalar relations,
    /// then drop redundant relations.
    pub fn pruned(&self) -> ModulePresentation {
        if self.minimal {
            return self.clone();
        }
        let matrix = prune(&self.ring, &self.matrix);
        ModulePresentation {
            ring: self.ring.clone(),
            matrix,
            minimal: true,
        }
    }

    /// `M(s)`: generators move to degrees `d - s`.
    pub fn twist(&self, s: i32) -> ModulePresentation {
        ModulePresentation {
            ring: self.ring.clone(),
            matrix: self.matrix.twist(s),
            minimal: self.minimal,
        }
    }

    /// Gröbner basis of the relation module `im A + I·F_0`.
    pub fn relation_gb(&self) -> ModuleGB {
        buchberger(&self.ring, self.matrix.target(), self.matrix.columns())
            .expect("presentation is homogeneous")
    }

    /// `dim_k M_d` for `d = 0..=upto`.
    pub fn hilbert_function(&self, upto: i32) -> Vec<usize> {
        self.hilbert_range(0, upto)
    }

    /// `dim_k M_d` for `d = lo..=hi`.
    pub fn hilbert_range(&self, lo: i32, hi: i32) -> Vec<usize> {
        let gb = self.relation_gb();
        (lo..=hi).map(|d| gb.quotient_dimension(d)).collect()
    }

    /// Present the same generators and relations over a quotient ring `target` of the same ambient ring.
    pub fn change_ring(&self, target: &QuotientRing) -> Result<ModulePresentation> {
        if !target.same_ambient(&self.ring) || !target.ideal_contains(&self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(Self::coker_unpruned(target, &self.matrix)?.pruned())
    }

    /// Script-style rendering `coker [[..]] degrees (..)`.
    pub fn format(&self) -> String {
        let degs: Vec<String> = self
            .generator_degrees()
            .iter()
            .map(|d| d.to_string())
            .collect();
        format!(
            "coker {} degrees ({})",
            self.matrix.format(&self.ring),
            degs.join(", ")
        )
    }
}

/// Minimal presentation of the module defined by `gens` inside `⊕ R(-degrees_i)`.
pub fn minimal_presentation(
    ring: &QuotientRing,
    degrees: &[i32],
    gens: &[Vector],
    mode: PresentationMode,
) -> Result<ModulePresentation> {
    let gens: Vec<Vector> = gens.iter().map(|g| ring.reduce_vector(g)).collect();
    crate::groebner::check_homogeneous(degrees, &gens)?;
    match mode {
        PresentationMode::Quotient => {
            let source: Vec<i32> = gens
                .iter()
                .map(|g| g.degree(degrees).unwrap_or(0))
                .collect();
            let m = GradedMatrix::from_columns(degrees.to_vec(), source, gens);
            Ok(ModulePresentation::coker_unpruned(ring, &m)?.pruned())
        }
        PresentationMode::Submodule => {
            let keep = minimal_generators(ring, degrees, &gens)?;
            let chosen: Vec<Vector> = keep.iter().map(|&i| gens[i].clone()).collect();
            let gdeg: Vec<i32> = chosen.iter().map(|g| g.degree(degrees).unwrap()).collect();
            let lifter = Lifter::new(ring, degrees, &gdeg, &chosen)?;
            let syz = lifter.syzygies();
            let sdeg: Vec<i32> = syz.iter().map(|v| v.degree(&gdeg).unwrap()).collect();
            Ok(ModulePresentation::from_minimal(
                ring,
                GradedMatrix::from_columns(gdeg, sdeg, syz),
            ))
        }
    }
}

pub(crate) fn prune(ring: &QuotientRing, m: &GradedMatrix) -> GradedMatrix {
    let f = ring.field();
    let mut m = m.clone();
    while let Some((i, j, c)) = m.unit_entry() {
        let cinv = f.inv(c);
        let pivot = m.column(j).clone();
        for l in 0..m.ncols() {
            if l == j {
                continue;
            }
            let a = m.entry(i, l);
            if a.is_zero() {
                continue;
            }
            let factor = a.scale(cinv, &f);
            let new = m.column(l).sub(&pivot.mul_poly(&factor, &f), &f);
            m.set_column(l, ring.reduce_vector(&new));
        }
        m = m.without_column(j).without_row(i);
    }
    let keep = minimal_generators(ring, m.target(), m.columns()).expect("homogeneous");
    let mut out = m.select_columns(&keep);
    for j in 0..out.ncols() {
        let mut c = out.column(j).clone();
        c.make_monic(&f);
        out.set_column(j, c);
    }
    out
}

/// `ker(Z)`-style subquotient: the submodule of `F` generated by the columns
/// of `z`, modulo its intersection with the image of `b` (plus `I·F`).
pub fn subquotient(
    ring: &QuotientRing,
    z: &GradedMatrix,
    b: &GradedMatrix,
) -> Result<ModulePresentation> {
    if z.target() != b.target() {
        return Err(Error::ModuleMismatch(
            "subquotient pieces live in different free modules".into(),
        ));
    }
    let both = z.hstack(b)?;
    let lifter = Lifter::new(ring, both.target(), both.source(), both.columns())?;
    let k = z.ncols();
    let rel: Vec<Vector> = lifter
        .syzygies()
        .iter()
        .map(|v| v.restrict(0..k))
        .filter(|v| !v.is_zero())
        .collect();
    let rdeg: Vec<i32> = rel.iter().map(|v| v.degree(z.source()).unwrap()).collect();
    let m = GradedMatrix::from_columns(z.source().to_vec(), rdeg, rel);
    Ok(ModulePresentation::coker_unpruned(ring, &m)?.pruned())
}

/// Minimal generators of `ker(A)` as the columns of a matrix into the source of `A`.
pub fn syzygy_matrix(ring: &QuotientRing, a: &GradedMatrix) -> Result<GradedMatrix> {
    let lifter = Lifter::new(ring, a.target(), a.source(), a.columns())?;
    let syz = lifter.syzygies();
    let degs = syz.iter().map(|v| v.degree(a.source()).unwrap()).collect();
    Ok(GradedMatrix::from_columns(a.source().to_vec(), degs, syz))
}

/// `M / JM`, presented by `[A | J·E]`.
pub fn quotient_module(m: &ModulePresentation, j: &[Polynomial]) -> Result<ModulePresentation> {
    let ring = m.ring();
    let mut extra = Vec::new();
    let mut degs = Vec::new();
    for g in j {
        let g = ring.reduce(g);
        if g.is_zero() {
            continue;
        }
        let d = g.homogeneous_degree().ok_or(Error::InhomogeneousElement)? as i32;
        for (i, &h) in m.generator_degrees().iter().enumerate() {
            extra.push(Vector::unit(i, &g));
            degs.push(h + d);
        }
    }
    let add = GradedMatrix::from_columns(m.generator_degrees().to_vec(), degs, extra);
    let whole = m.matrix().hstack(&add)?;
    Ok(ModulePresentation::coker_unpruned(ring, &whole)?.pruned())
}

pub fn direct_sum(m: &ModulePresentation, n: &ModulePresentation) -> Result<ModulePresentation> {
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch);
    }
    let mat = m.matrix().block_diag(n.matrix());
    Ok(ModulePresentation {
        ring: m.ring.clone(),
        matrix: mat,
        minimal: m.minimal && n.minimal,
    })
}

/// `μ(M)`, the minimal number of generators.
pub fn min_generators(m: &ModulePresentation) -> usize {
    m.pruned().num_generators()
}

/// `(0 :_M x)`, the elements of `M` killed by `x`.
pub fn kernel_of_scalar(x: &Polynomial, m: &ModulePresentation) -> Result<ModulePresentation> {
    let ring = m.ring();
    let x = ring.reduce(x);
    let m = m.pruned();
    let r = m.num_generators();
    if x.is_zero() {
        return Ok(m);
    }
    let d = x.homogeneous_degree().ok_or(Error::InhomogeneousElement)? as i32;
    // [x·E | A] : F_0(-d) ⊕ F_1 → F_0
    let shifted: Vec<i32> = m.generator_degrees().iter().map(|h| h + d).collect();
    let cols: Vec<Vector> = (0..r).map(|i| Vector::unit(i, &x)).collect();
    let xe = GradedMatrix::from_columns(m.generator_degrees().to_vec(), shifted, cols);
    let both = xe.hstack(m.matrix())?;
    let syz = syzygy_matrix(ring, &both)?;
    let zcols: Vec<Vector> = syz.columns().iter().map(|v| v.restrict(0..r)).collect();
    let zdeg: Vec<i32> = syz.source().iter().map(|e| e - d).collect();
    let z = GradedMatrix::from_columns(m.generator_degrees().to_vec(), zdeg, zcols);
    subquotient(ring, &z, m.matrix())
}
