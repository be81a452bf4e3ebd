//! Dual complexes, `Ext^i_R(M, R)`, grade and depth, and the two duality
//! predicates: self-dual minimal free resolutions and totally self-dual modules.

use serde::Serialize;

use crate::algebra::QuotientRing;
use crate::error::{Error, Result};
use crate::groebner::Lifter;
use crate::iso::{is_isomorphic, IsoReport, IsoVerdict};
use crate::linalg;
use crate::resolution::{
    subquotient, syzygy_matrix, FreeComplex, GradedMatrix, ModulePresentation, PdReport, Resolution,
};
use crate::theorems::{detect_periodicity_in, Periodicity};

/// `Hom(C, R)`: transposed differentials in reverse order, degrees negated.
pub fn dual_complex(c: &FreeComplex) -> FreeComplex {
    c.dual()
}

/// The residue field `R / (x_1, .., x_n)`.
pub fn residue_field(ring: &QuotientRing) -> ModulePresentation {
    let vars: Vec<_> = ring
        .var_names()
        .iter()
        .map(|v| ring.var(v).unwrap())
        .collect();
    ModulePresentation::cyclic(ring, &vars).expect("variables are homogeneous")
}

#[derive(Clone, Debug)]
pub struct ExtResult {
    pub index: usize,
    pub module: ModulePresentation,
}

fn ext_pieces(res: &mut Resolution, i: usize) -> Option<(GradedMatrix, GradedMatrix)> {
    let fi = res.degrees(i);
    if fi.is_empty() {
        return None;
    }
    let ring = res.ring().clone();
    let next = res.differential(i + 1).transpose();
    let z = syzygy_matrix(&ring, &next).expect("homogeneous");
    let dual_fi: Vec<i32> = fi.iter().map(|d| -d).collect();
    let b = if i == 0 {
        GradedMatrix::zero(dual_fi, vec![])
    } else {
        res.differential(i).transpose()
    };
    Some((z, b))
}

/// `Ext^i(M, R)` from a resolution that is extended as needed.
pub fn ext_from(res: &mut Resolution, i: usize) -> ModulePresentation {
    let ring = res.ring().clone();
    match ext_pieces(res, i) {
        None => ModulePresentation::zero(&ring),
        Some((z, b)) => subquotient(&ring, &z, &b).expect("homogeneous"),
    }
}

/// `Ext^i(M, R) ≠ 0` without presenting it: some cycle is not a boundary.
pub fn ext_nonzero_from(res: &mut Resolution, i: usize) -> bool {
    let ring = res.ring().clone();
    match ext_pieces(res, i) {
        None => false,
        Some((z, b)) => {
            let lifter =
                Lifter::new(&ring, b.target(), b.source(), b.columns()).expect("homogeneous");
            z.columns().iter().any(|c| !lifter.in_image(c))
        }
    }
}

/// `Ext^i_R(M, R)`; needs the resolution to reach step `i + 1` within `cap`
/// unless it stops earlier.
pub fn ext(m: &ModulePresentation, i: usize, cap: usize) -> Result<ExtResult> {
    let mut res = Resolution::new(m);
    if i + 1 > cap {
        res.extend_to(cap + 1);
        if res.known_pd().is_none_or(|p| p > cap) {
            return Err(Error::CapExceeded { needed: i + 1, cap });
        }
    }
    Ok(ExtResult {
        index: i,
        module: ext_from(&mut res, i),
    })
}

/// `M* = Hom_R(M, R)`.
pub fn module_dual(m: &ModulePresentation) -> ModulePresentation {
    ext_from(&mut Resolution::new(m), 0)
}

/// Least `i` with `Ext^i(M, R) ≠ 0`, searched up to the number of variables.
pub fn grade(m: &ModulePresentation) -> Result<usize> {
    grade_from(&mut Resolution::new(m))
}

pub fn grade_from(res: &mut Resolution) -> Result<usize> {
    if res.degrees(0).is_empty() {
        return Err(Error::ZeroModule);
    }
    let n = res.ring().nvars();
    (0..=n)
        .find(|&i| ext_nonzero_from(res, i))
        .ok_or(Error::GradeSearchExhausted)
}

/// `depth R = grade k`.
pub fn depth_ring(ring: &QuotientRing) -> Result<usize> {
    grade(&residue_field(ring))
}

/// How much of the `Ext` vanishing range was covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowKind {
    /// Finite projective dimension: every index up to `pd` checked.
    ProjectiveDimension,
    /// Periodic resolution: one full period beyond the onset checked.
    Periodicity,
    /// Neither resolved within the cap; verdict holds for the window only.
    UpToWindow,
}

#[derive(Clone, Debug)]
pub struct TotallySelfDualReport {
    pub verdict: bool,
    pub grade: usize,
    pub window: (usize, usize),
    pub window_kind: WindowKind,
    /// Indices `i ≠ grade` in the window with `Ext^i ≠ 0`.
    pub nonvanishing: Vec<usize>,
    /// `Ext^g(M, R) ≅ M(shift)`.
    pub iso: Option<IsoReport>,
}

impl TotallySelfDualReport {
    pub fn shift(&self) -> Option<i32> {
        self.iso
            .as_ref()
            .filter(|r| r.is_isomorphic())
            .and_then(|r| r.shift)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "verdict": self.verdict,
            "grade": self.grade,
            "vanishing_window_checked": [self.window.0, self.window.1],
            "window_kind": self.window_kind,
            "nonvanishing": self.nonvanishing,
            "shift": self.shift(),
            "iso_witness": self.iso.as_ref().map(|r| r.to_json()),
        })
    }
}

/// `Ext^i(M, R) = 0` for `i ≠ g` and `Ext^g(M, R) ≅ M` up to shift.
pub fn is_totally_self_dual(
    m: &ModulePresentation,
    cap: usize,
    trials: usize,
    seed: u64,
) -> Result<TotallySelfDualReport> {
    let mut res = Resolution::new(m);
    is_totally_self_dual_from(&mut res, m, cap, trials, seed)
}

pub(crate) fn is_totally_self_dual_from(
    res: &mut Resolution,
    m: &ModulePresentation,
    cap: usize,
    trials: usize,
    seed: u64,
) -> Result<TotallySelfDualReport> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let g = grade_from(res)?;
    let (hi, kind) = match res.pd_report(cap) {
        PdReport::Finite(p) => (p.max(g), WindowKind::ProjectiveDimension),
        PdReport::ExceedsCap(_) => {
            let per = detect_periodicity_in(res, cap, 4, trials, seed);
            match per.verdict {
                Periodicity::Periodic { onset, period, .. } => {
                    (onset + period, WindowKind::Periodicity)
                }
                Periodicity::NotDetected => (cap, WindowKind::UpToWindow),
            }
        }
    };
    let nonvanishing: Vec<usize> = (0..=hi)
        .filter(|&i| i != g && ext_nonzero_from(res, i))
        .collect();
    let ext_g = ext_from(res, g);
    let iso = is_isomorphic(&ext_g, m, trials, seed);
    let verdict = nonvanishing.is_empty() && iso.is_isomorphic();
    Ok(TotallySelfDualReport {
        verdict,
        grade: g,
        window: (0, hi),
        window_kind: kind,
        nonvanishing,
        iso: Some(iso),
    })
}

#[derive(Clone, Debug)]
pub struct SelfDualReport {
    pub verdict: bool,
    pub pd: PdReport,
    pub grade: usize,
    /// `F ≅ F*(shift)` when the verdict holds.
    pub shift: Option<i32>,
    pub betti_symmetric: bool,
    /// Chain isomorphism `α_j : F*_j → F_j(shift)`, `j = 0..pd`.
    pub witness: Vec<GradedMatrix>,
    pub reason: Option<String>,
    /// Finite pd and totally self-dual.
    pub theorem_route: bool,
    /// The two routes disagree.
    pub defect: bool,
    ring: QuotientRing,
}

impl SelfDualReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "verdict": self.verdict,
            "pd": self.pd,
            "grade": self.grade,
            "shift": self.shift,
            "betti_symmetric": self.betti_symmetric,
            "theorem_route": self.theorem_route,
            "direct_route": self.verdict,
            "defect": self.defect,
            "reason": self.reason,
            "witness": self.witness.iter().map(|w| w.to_json(&self.ring)).collect::<Vec<_>>(),
        })
    }
}

/// Decide whether the minimal free resolution `F` of `M` is self-dual,
/// `F ≅ F*` up to a uniform shift, by building a chain isomorphism.
///
/// The theorem route (finite pd and totally self-dual) is computed
/// alongside and any disagreement is flagged as a defect.
pub fn is_self_dual_resolution(
    m: &ModulePresentation,
    trials: usize,
    seed: u64,
) -> Result<SelfDualReport> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let ring = m.ring().clone();
    let mut res = Resolution::new(m);
    let nv = ring.nvars();
    let pd = res.pd_report(nv);
    let g = grade_from(&mut res)?;
    let mut report = SelfDualReport {
        verdict: false,
        pd,
        grade: g,
        shift: None,
        betti_symmetric: false,
        witness: vec![],
        reason: None,
        theorem_route: false,
        defect: false,
        ring: ring.clone(),
    };
    let r = match pd {
        PdReport::Finite(r) => r,
        PdReport::ExceedsCap(_) => {
            report.reason = Some("projective dimension is infinite".into());
            return Ok(report);
        }
    };
    let tsd = is_totally_self_dual_from(&mut res, m, nv, trials, seed)?;
    report.theorem_route = tsd.verdict;
    let f = res.complex(r);
    report.betti_symmetric = (0..=r).all(|i| f.rank(i) == f.rank(r - i));
    match chain_isomorphism(&f, trials, seed) {
        Ok((s, alphas)) => {
            report.verdict = report.betti_symmetric;
            report.shift = Some(s);
            report.witness = alphas;
        }
        Err(why) => report.reason = Some(why),
    }
    report.defect = report.verdict != report.theorem_route;
    Ok(report)
}

/// Lift an isomorphism `coker(d_r^T) ≅ M(s)` to a chain map `F* → F(s)`
/// and check that every component is invertible.
fn chain_isomorphism(
    f: &FreeComplex,
    trials: usize,
    seed: u64,
) -> std::result::Result<(i32, Vec<GradedMatrix>), String> {
    let ring = f.ring();
    let r = f.length();
    let dual = f.dual();
    let top = match dual.differential(1) {
        Some(d) => ModulePresentation::coker_unpruned(ring, d).map_err(|e| e.to_string())?,
        None => ModulePresentation::free(ring, dual.degrees(0)),
    };
    let m0 = ModulePresentation::from_minimal(
        ring,
        f.differential(1)
            .cloned()
            .unwrap_or_else(|| GradedMatrix::zero(f.degrees(0).to_vec(), vec![])),
    );
    let iso = is_isomorphic(&top, &m0, trials, seed);
    if iso.verdict != IsoVerdict::Isomorphic {
        return Err(format!(
            "coker of the last dual differential is not isomorphic to M ({:?})",
            iso.verdict
        ));
    }
    let s = iso.shift.unwrap();
    let fr = ring.field();
    let mut alphas = vec![iso.witness.unwrap()];
    for j in 1..=r {
        let d = f.differential(j).unwrap().twist(s);
        let rhs = alphas[j - 1]
            .compose(ring, dual.differential(j).unwrap())
            .map_err(|e| e.to_string())?;
        let lifter =
            Lifter::new(ring, d.target(), d.source(), d.columns()).map_err(|e| e.to_string())?;
        let mut cols = Vec::new();
        for c in rhs.columns() {
            cols.push(
                lifter
                    .lift(c)
                    .ok_or_else(|| format!("chain map does not lift at step {j}"))?,
            );
        }
        let a = GradedMatrix::from_columns(d.source().to_vec(), rhs.source().to_vec(), cols);
        if d.compose(ring, &a).map_err(|e| e.to_string())? != rhs {
            return Err(format!("square {j} does not commute"));
        }
        alphas.push(a);
    }
    for (j, a) in alphas.iter().enumerate() {
        if a.nrows() != a.ncols() || !linalg::is_invertible(&fr, &a.constant_part()) {
            return Err(format!("chain map component {j} is not invertible"));
        }
    }
    Ok((s, alphas))
}

/// Outcome of testing `(Ω^m M)* ≅ Ω^n M` and the conclusions it forces.
#[derive(Clone, Debug, Serialize)]
pub struct SyzygyDualProbe {
    pub m: usize,
    pub n: usize,
    pub grade: usize,
    pub applicable: bool,
    pub hypothesis: Option<bool>,
    pub shift: Option<i32>,
    pub m_n_at_least_2: Option<bool>,
    pub pd: Option<PdReport>,
    pub grade_equals_pd_equals_m_plus_n_minus_1: Option<bool>,
    pub self_dual: Option<bool>,
}

impl SyzygyDualProbe {
    /// Every conclusion that was due holds.
    pub fn consistent(&self) -> bool {
        self.hypothesis != Some(true)
            || (self.m_n_at_least_2 == Some(true)
                && self.grade_equals_pd_equals_m_plus_n_minus_1 == Some(true)
                && self.self_dual == Some(true))
    }
}

pub fn syzygy_dual_probe(
    m: &ModulePresentation,
    mm: usize,
    nn: usize,
    trials: usize,
    seed: u64,
) -> Result<SyzygyDualProbe> {
    let mut res = Resolution::new(m);
    let g = grade_from(&mut res)?;
    let mut out = SyzygyDualProbe {
        m: mm,
        n: nn,
        grade: g,
        applicable: mm < g && nn < g,
        hypothesis: None,
        shift: None,
        m_n_at_least_2: None,
        pd: None,
        grade_equals_pd_equals_m_plus_n_minus_1: None,
        self_dual: None,
    };
    if !out.applicable {
        return Ok(out);
    }
    let lhs = module_dual(&res.syzygy(mm));
    let rhs = res.syzygy(nn);
    let iso = is_isomorphic(&lhs, &rhs, trials, seed);
    out.hypothesis = Some(iso.is_isomorphic());
    out.shift = iso.shift.filter(|_| iso.is_isomorphic());
    if iso.is_isomorphic() {
        out.m_n_at_least_2 = Some(mm >= 2 && nn >= 2);
        let pd = res.pd_report(m.ring().nvars());
        out.pd = Some(pd);
        out.grade_equals_pd_equals_m_plus_n_minus_1 =
            Some(pd == PdReport::Finite(g) && (g + 1) as i64 == (mm + nn) as i64);
        out.self_dual = Some(is_self_dual_resolution(m, trials, seed)?.verdict);
    }
    Ok(out)
}
