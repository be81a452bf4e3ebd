//! Eventual periodicity, matrix factorizations, ring classification and
//! executable checks of the self-duality and periodicity theorems.

use serde::Serialize;

use crate::algebra::{Polynomial, QuotientRing};
use crate::duality::{depth_ring, ext_from, grade_from, module_dual, residue_field};
use crate::error::{Error, Result};
use crate::iso::{is_isomorphic, stable_equal, verify_isomorphism, IsoReport};
use crate::resolution::{GradedMatrix, ModulePresentation, PdReport, Resolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Periodicity {
    /// `Ω^onset M ≅ Ω^{onset+period} M (shift)`.
    Periodic {
        onset: usize,
        period: usize,
        shift: i32,
    },
    NotDetected,
}

#[derive(Clone, Debug)]
pub struct PeriodicityReport {
    pub verdict: Periodicity,
    pub witness: Option<IsoReport>,
    /// Ranks `F_0, F_1, ..` that were computed.
    pub betti: Vec<usize>,
    pub pd: Option<usize>,
    /// Ranks strictly increased over four steps past the number of variables; the resolution was not extended further.
    pub growth: bool,
    pub max_n: usize,
    pub max_a: usize,
}

impl PeriodicityReport {
    pub fn is_periodic(&self) -> bool {
        matches!(self.verdict, Periodicity::Periodic { .. })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "verdict": self.verdict,
            "betti": self.betti,
            "pd": self.pd,
            "growth": self.growth,
            "max_n": self.max_n,
            "max_a": self.max_a,
            "witness": self.witness.as_ref().map(|w| w.to_json()),
        })
    }
}

/// Smallest period `a ≤ max_a`, then smallest onset `n ≤ max_n`, with `Ω^n M ≅ Ω^{n+a} M` up to shift.
pub fn detect_periodicity(
    m: &ModulePresentation,
    max_n: usize,
    max_a: usize,
    trials: usize,
    seed: u64,
) -> Result<PeriodicityReport> {
    if max_a == 0 {
        return Err(Error::InvalidArgument("max_a must be at least 1".into()));
    }
    Ok(detect_periodicity_in(
        &mut Resolution::new(m),
        max_n,
        max_a,
        trials,
        seed,
    ))
}

pub(crate) fn strictly_growing(ranks: &[usize], nvars: usize) -> bool {
    let t = ranks.len();
    t >= nvars + 5 && ranks[t - 4..].windows(2).all(|w| w[0] < w[1])
}

pub(crate) fn detect_periodicity_in(
    res: &mut Resolution,
    max_n: usize,
    max_a: usize,
    trials: usize,
    seed: u64,
) -> PeriodicityReport {
    let nv = res.ring().nvars();
    let mut ranks = vec![res.rank(0)];
    let mut growth = false;
    for t in 1..=max_n + max_a + 1 {
        ranks.push(res.rank(t));
        if res.known_pd().is_some_and(|p| t > p) {
            break;
        }
        if strictly_growing(&ranks, nv) {
            growth = true;
            break;
        }
    }
    let mut report = PeriodicityReport {
        verdict: Periodicity::NotDetected,
        witness: None,
        betti: ranks.clone(),
        pd: res.known_pd(),
        growth,
        max_n,
        max_a,
    };
    if report.pd.is_some() {
        while report.betti.last() == Some(&0) {
            report.betti.pop();
        }
        return report;
    }
    let have = ranks.len() - 1;
    for a in 1..=max_a {
        for n in 0..=max_n {
            if n + a + 1 > have {
                break;
            }
            if ranks[n] != ranks[n + a] || ranks[n + 1] != ranks[n + a + 1] {
                continue;
            }
            let (x, y) = (res.syzygy(n), res.syzygy(n + a));
            let iso = is_isomorphic(&x, &y, trials, seed);
            if iso.is_isomorphic() && verify_isomorphism(&x, &y, &iso) {
                report.verdict = Periodicity::Periodic {
                    onset: n,
                    period: a,
                    shift: iso.shift.unwrap(),
                };
                report.witness = Some(iso);
                return report;
            }
        }
    }
    report
}

/// `(φ, ψ)` with `φψ = ψφ = f·E` over `S`.
#[derive(Clone, Debug)]
pub struct MatrixFactorization {
    ring: QuotientRing,
    phi: GradedMatrix,
    psi: GradedMatrix,
    f: Polynomial,
}

/// Validate a matrix factorization: square, degree-compatible, `φψ = ψφ = f·E`, `f` regular of positive degree.
pub fn make_matrix_factorization(
    ring: &QuotientRing,
    phi: &GradedMatrix,
    psi: &GradedMatrix,
    f: &Polynomial,
) -> Result<MatrixFactorization> {
    let f = ring.reduce(f);
    if f.is_zero() {
        return Err(Error::NotAFactorization("f is zero".into()));
    }
    let d = f.homogeneous_degree().ok_or(Error::InhomogeneousElement)? as i32;
    if d <= 0 {
        return Err(Error::NotAFactorization("f is a unit".into()));
    }
    let n = phi.nrows();
    if phi.ncols() != n || psi.nrows() != n || psi.ncols() != n {
        return Err(Error::NotAFactorization(
            "φ and ψ must be square of the same size".into(),
        ));
    }
    let shifted: Vec<i32> = phi.target().iter().map(|t| t + d).collect();
    if psi.target() != phi.source() || psi.source() != shifted.as_slice() {
        return Err(Error::InhomogeneousMatrix(
            "degrees of ψ do not match φ and deg f".into(),
        ));
    }
    let fe = GradedMatrix::scalar(ring, &f, phi.target())?;
    if phi.compose(ring, psi)? != fe {
        return Err(Error::NotAFactorization("φψ ≠ f·E".into()));
    }
    let fe2 = GradedMatrix::scalar(ring, &f, psi.target())?;
    if psi.compose(ring, &phi.twist(-d))? != fe2 {
        return Err(Error::NotAFactorization("ψφ ≠ f·E".into()));
    }
    let reg = crate::resolution::kernel_of_scalar(&f, &ModulePresentation::free(ring, &[0]))?;
    if !reg.is_zero() {
        return Err(Error::NotAFactorization("f is a zero divisor".into()));
    }
    Ok(MatrixFactorization {
        ring: ring.clone(),
        phi: phi.clone(),
        psi: psi.clone(),
        f,
    })
}

impl MatrixFactorization {
    pub fn phi(&self) -> &GradedMatrix {
        &self.phi
    }

    pub fn psi(&self) -> &GradedMatrix {
        &self.psi
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn ambient(&self) -> &QuotientRing {
        &self.ring
    }

    /// `S / (f)`.
    pub fn hypersurface(&self) -> QuotientRing {
        self.ring
            .quotient(std::slice::from_ref(&self.f))
            .expect("f is homogeneous")
    }
}

/// `coker(φ ⊗ S/(f))`, minimally presented over `S/(f)`.
pub fn mf_module(mf: &MatrixFactorization) -> Result<ModulePresentation> {
    ModulePresentation::coker(&mf.hypersurface(), &mf.phi)
}

/// `(φ^T, ψ^T)` with degrees arranged so it is again a factorization of `f`.
pub fn mf_transpose(mf: &MatrixFactorization) -> Result<MatrixFactorization> {
    let d = mf.f.homogeneous_degree().unwrap() as i32;
    make_matrix_factorization(
        &mf.ring,
        &mf.phi.transpose(),
        &mf.psi.transpose().twist(-d),
        &mf.f,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct RingClassification {
    pub regular: bool,
    pub hypersurface: bool,
    pub depth: usize,
    /// Betti numbers of the residue field that were computed.
    pub betti: Vec<usize>,
    pub periodicity: Periodicity,
    /// Strong evidence of unbounded Betti numbers.
    pub growth: bool,
    pub cap: usize,
}

/// Regular iff `k` has finite projective dimension (checked at step `#vars + 1`);
/// hypersurface iff not regular and the resolution of `k` becomes periodic
/// with period at most 2 within the cap.
pub fn classify_ring(
    ring: &QuotientRing,
    cap: usize,
    trials: usize,
    seed: u64,
) -> Result<RingClassification> {
    let nv = ring.nvars();
    if cap < nv + 2 {
        return Err(Error::InvalidArgument(format!(
            "cap must be at least {}",
            nv + 2
        )));
    }
    let k = residue_field(ring);
    let mut res = Resolution::new(&k);
    let regular = matches!(res.pd_report(nv), PdReport::Finite(_));
    let depth = grade_from(&mut res)?;
    let per = detect_periodicity_in(&mut res, cap, 2, trials, seed);
    Ok(RingClassification {
        regular,
        hypersurface: !regular && per.is_periodic(),
        depth,
        betti: per.betti.clone(),
        periodicity: per.verdict,
        growth: per.growth,
        cap,
    })
}

/// Check of: `(Ω^i k)* ≅ Ω^i k` for some `2 ≤ i < depth R` forces `R` regular and `depth R = 2i - 1`.
#[derive(Clone, Debug, Serialize)]
pub struct DeySdReport {
    pub i: usize,
    pub depth: usize,
    /// `2 ≤ i < depth` and `depth ≥ 3`.
    pub applicable: bool,
    pub hypothesis: bool,
    pub hypothesis_verdict: crate::iso::IsoVerdict,
    pub shift: Option<i32>,
    pub regular: Option<bool>,
    pub depth_is_2i_minus_1: Option<bool>,
    pub consistent: bool,
}

pub fn dey_sd_check(
    ring: &QuotientRing,
    i: usize,
    trials: usize,
    seed: u64,
) -> Result<DeySdReport> {
    let t = depth_ring(ring)?;
    let k = residue_field(ring);
    let om = Resolution::new(&k).syzygy(i);
    let iso = is_isomorphic(&module_dual(&om), &om, trials, seed);
    let hyp = iso.is_isomorphic();
    let applicable = t >= 3 && 2 <= i && i < t;
    let mut rep = DeySdReport {
        i,
        depth: t,
        applicable,
        hypothesis: hyp,
        hypothesis_verdict: iso.verdict,
        shift: iso.shift.filter(|_| hyp),
        regular: None,
        depth_is_2i_minus_1: None,
        consistent: true,
    };
    if applicable && hyp {
        let regular = matches!(
            Resolution::new(&k).pd_report(ring.nvars()),
            PdReport::Finite(_)
        );
        rep.regular = Some(regular);
        rep.depth_is_2i_minus_1 = Some(t == 2 * i - 1);
        rep.consistent = regular && t == 2 * i - 1;
    }
    Ok(rep)
}

/// Both directions of: for `i ≥ depth R`, `(Ω^i k)* ≅ Ω^i k` holds on hypersurfaces of even depth, and forces a hypersurface.
#[derive(Clone, Debug, Serialize)]
pub struct DeyEpReport {
    pub i: usize,
    pub depth: usize,
    pub hypersurface: bool,
    pub iso: bool,
    pub iso_verdict: crate::iso::IsoVerdict,
    pub shift: Option<i32>,
    /// Hypersurface, even depth and `i ≥ depth`.
    pub direction1_applicable: bool,
    pub direction1_verified: Option<bool>,
    /// The isomorphism holds and `i ≥ depth`.
    pub direction2_applicable: bool,
    pub direction2_verified: Option<bool>,
    pub consistent: bool,
    pub classification: RingClassification,
}

pub fn dey_ep_check(
    ring: &QuotientRing,
    i: usize,
    cap: usize,
    trials: usize,
    seed: u64,
) -> Result<DeyEpReport> {
    let class = classify_ring(ring, cap.max(ring.nvars() + 2), trials, seed)?;
    let t = class.depth;
    let k = residue_field(ring);
    let om = Resolution::new(&k).syzygy(i);
    let iso = is_isomorphic(&module_dual(&om), &om, trials, seed);
    let holds = iso.is_isomorphic();
    let d1 = class.hypersurface && t % 2 == 0 && i >= t;
    let d2 = holds && i >= t;
    let v1 = d1.then_some(holds);
    let v2 = d2.then_some(class.hypersurface);
    Ok(DeyEpReport {
        i,
        depth: t,
        hypersurface: class.hypersurface,
        iso: holds,
        iso_verdict: iso.verdict,
        shift: iso.shift.filter(|_| holds),
        direction1_applicable: d1,
        direction1_verified: v1,
        direction2_applicable: d2,
        direction2_verified: v2,
        consistent: v1 != Some(false) && v2 != Some(false),
        classification: class,
    })
}

/// Accepted evidence that `M` is G-perfect.
#[derive(Clone, Copy, Debug)]
pub enum Certificate<'a> {
    /// `pd M = grade M`, both computed.
    Perfect,
    /// `M ≅ coker φ` over `S/(f)` for the given factorization.
    MatrixFactorization(&'a MatrixFactorization),
}

#[derive(Clone, Copy, Debug)]
pub struct EpParams {
    pub i_max: usize,
    pub m_max: usize,
    pub max_n: usize,
    pub max_a: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for EpParams {
    fn default() -> Self {
        EpParams {
            i_max: 4,
            m_max: 3,
            max_n: 8,
            max_a: 4,
            trials: 32,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ForwardCheck {
    pub i: usize,
    pub m: usize,
    /// `(Ω^i N)* ≈ Ω^{g+ma-i} M`
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConverseCheck {
    pub i: usize,
    pub j: usize,
    /// `(Ω^i N)* ≈ Ω^j M`
    pub premise: bool,
    /// `Ω^{g+1} M ≅ Ω^{g+1+(i+j-g)} M`, checked when the premise holds.
    pub periodic: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub i: usize,
    /// `Ω^g N ≈ Ω^i((Ω^i M)*)`
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EpReport {
    pub grade: usize,
    pub certificate: String,
    pub periodicity: Periodicity,
    /// Period used on the forward grid (1 for finite projective dimension, where high syzygies vanish).
    pub period: Option<usize>,
    pub forward: Vec<ForwardCheck>,
    pub converse: Vec<ConverseCheck>,
    pub lemma: Vec<LemmaCheck>,
}

impl EpReport {
    pub fn all_verified(&self) -> bool {
        self.forward.iter().all(|c| c.holds)
            && self.converse.iter().all(|c| c.periodic != Some(false))
            && self.lemma.iter().all(|c| c.holds)
    }
}

/// Check the syzygy-duality statements for a G-perfect module `M` of grade `g`
/// with `N = Ext^g(M, R)` on a finite grid of parameters.
pub fn verify_ep_theorems(
    m: &ModulePresentation,
    cert: Certificate<'_>,
    params: EpParams,
) -> Result<EpReport> {
    let (trials, seed) = (params.trials, params.seed);
    let mut res = Resolution::new(m);
    let g = grade_from(&mut res)?;
    let cert_name = match cert {
        Certificate::Perfect => {
            match res.pd_report(m.ring().nvars()) {
                PdReport::Finite(p) if p == g => {}
                other => {
                    return Err(Error::NotCertified(format!(
                        "grade {g} but projective dimension {other:?}"
                    )))
                }
            }
            "perfect"
        }
        Certificate::MatrixFactorization(mf) => {
            let cm = mf_module(mf)?;
            if cm.ring() != m.ring() || !is_isomorphic(&cm, m, trials, seed).is_isomorphic() {
                return Err(Error::NotCertified(
                    "module is not the cokernel of the factorization".into(),
                ));
            }
            if g != 0 {
                return Err(Error::NotCertified(format!(
                    "grade {g} ≠ 0 for a factorization cokernel"
                )));
            }
            "matrix_factorization"
        }
    };
    let n = ext_from(&mut res, g);
    let mut nres = Resolution::new(&n);
    let per = detect_periodicity_in(&mut res, params.max_n, params.max_a, trials, seed);
    let period = match per.verdict {
        Periodicity::Periodic { period, .. } => Some(period),
        Periodicity::NotDetected if per.pd.is_some() => Some(1),
        Periodicity::NotDetected => None,
    };
    let approx = |a: &ModulePresentation, b: &ModulePresentation| {
        stable_equal(a, b, trials, seed).is_isomorphic()
    };
    let mut forward = Vec::new();
    let dual_syz_n: Vec<ModulePresentation> = (0..=params.i_max)
        .map(|i| module_dual(&nres.syzygy(i)))
        .collect();
    if let Some(a) = period {
        for i in g..=params.i_max {
            for mm in i.div_ceil(a)..=params.m_max {
                let rhs = res.syzygy(g + mm * a - i);
                forward.push(ForwardCheck {
                    i,
                    m: mm,
                    holds: approx(&dual_syz_n[i], &rhs),
                });
            }
        }
    }
    let mut converse = Vec::new();
    for i in g..=params.i_max {
        for j in 0..=params.i_max {
            if i + j <= g {
                continue;
            }
            let premise = approx(&dual_syz_n[i], &res.syzygy(j));
            let periodic = premise.then(|| {
                let p = i + j - g;
                let (x, y) = (res.syzygy(g + 1), res.syzygy(g + 1 + p));
                is_isomorphic(&x, &y, trials, seed).is_isomorphic()
            });
            converse.push(ConverseCheck {
                i,
                j,
                premise,
                periodic,
            });
        }
    }
    let omega_g_n = nres.syzygy(g);
    let mut lemma = Vec::new();
    for i in g..=params.i_max {
        let inner = module_dual(&res.syzygy(i));
        let lhs = Resolution::new(&inner).syzygy(i);
        lemma.push(LemmaCheck {
            i,
            holds: approx(&omega_g_n, &lhs),
        });
    }
    Ok(EpReport {
        grade: g,
        certificate: cert_name.into(),
        periodicity: per.verdict,
        period,
        forward,
        converse,
        lemma,
    })
}
