use std::collections::HashMap;

use serde_json::{json, Value};

use super::ast::{
    Command, CommandName, MatrixLit, MatrixRef, ModuleDef, Script, Statement, StmtKind,
};
use crate::algebra::{Polynomial, QuotientRing};
use crate::duality::{
    ext, grade, is_self_dual_resolution, is_totally_self_dual, module_dual, residue_field,
    syzygy_dual_probe,
};
use crate::error::{Error, Result};
use crate::groebner::Vector;
use crate::iso::{is_isomorphic, stable_equal, strip_free_summands, IsoReport};
use crate::resolution::{
    min_generators, minimal_presentation, quotient_module, resolve, subquotient, syzygy_module,
    GradedMatrix, HilbertSeries, ModulePresentation, PresentationMode,
};
use crate::theorems::{
    classify_ring, detect_periodicity, dey_ep_check, dey_sd_check, make_matrix_factorization,
    mf_module, mf_transpose, verify_ep_theorems, Certificate, EpParams, MatrixFactorization,
};

/// Command-line knobs shared by every command; per-command options override them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunFlags {
    pub json: bool,
    pub seed: u64,
    pub cap: usize,
    pub trials: usize,
    pub upto: i32,
}

impl Default for RunFlags {
    fn default() -> Self {
        RunFlags {
            json: false,
            seed: 0,
            cap: 10,
            trials: 32,
            upto: 8,
        }
    }
}

/// Output of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub index: usize,
    pub line: usize,
    pub col: usize,
    pub statement: String,
    /// Set for `check` commands.
    pub verdict: Option<bool>,
    /// What the check was expected to return.
    pub expected: bool,
    pub text: String,
    pub json: Value,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub reports: Vec<Report>,
    pub error: Option<Error>,
    pub exit_code: i32,
}

impl Report {
    /// A check passes when its verdict matches the expectation; other commands always pass.
    pub fn passed(&self) -> bool {
        self.verdict.is_none_or(|v| v == self.expected)
    }
}

impl Outcome {
    pub fn to_json(&self, flags: &RunFlags) -> Value {
        json!({
            "seed": flags.seed,
            "cap": flags.cap,
            "trials": flags.trials,
            "upto": flags.upto,
            "exit_code": self.exit_code,
            "error": self.error.as_ref().map(|e| e.to_string()),
            "reports": self.reports.iter().map(|r| json!({
                "statement_index": r.index,
                "line": r.line,
                "col": r.col,
                "statement": r.statement,
                "verdict": r.verdict,
                "expected": r.verdict.map(|_| r.expected),
                "passed": r.passed(),
                "result": r.json,
            })).collect::<Vec<_>>(),
        })
    }

    /// Plain-text rendering: one block per command.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&format!("-- {}:{} {}\n", r.line, r.col, r.statement));
            out.push_str(&r.text);
            if !r.text.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }

    pub fn verdict(&self, index: usize) -> Option<bool> {
        self.reports
            .iter()
            .find(|r| r.index == index)
            .and_then(|r| r.verdict)
    }
}

struct ModEntry {
    module: ModulePresentation,
    mf: Option<MatrixFactorization>,
}

#[derive(Default)]
struct Env {
    rings: HashMap<String, QuotientRing>,
    matrices: HashMap<String, (QuotientRing, GradedMatrix)>,
    modules: HashMap<String, ModEntry>,
    current: Option<QuotientRing>,
}

impl Env {
    fn ring(&self) -> Result<&QuotientRing> {
        self.current
            .as_ref()
            .ok_or_else(|| Error::UnknownName("ring".into()))
    }

    fn module(&self, n: &str) -> Result<&ModulePresentation> {
        self.modules
            .get(n)
            .map(|e| &e.module)
            .ok_or_else(|| Error::UnknownName(n.into()))
    }

    fn matrix(&self, n: &str) -> Result<&(QuotientRing, GradedMatrix)> {
        self.matrices
            .get(n)
            .ok_or_else(|| Error::UnknownName(n.into()))
    }
}

fn eval_all(ring: &QuotientRing, es: &[super::Expr]) -> Result<Vec<Polynomial>> {
    es.iter()
        .map(|e| e.eval(ring).map(|p| ring.reduce(&p)))
        .collect()
}

fn build_ring(d: &super::ast::RingDecl) -> Result<QuotientRing> {
    let vars: Vec<&str> = d.vars.iter().map(|s| s.as_str()).collect();
    let w: Option<Vec<u32>> = d
        .weights
        .as_ref()
        .map(|w| {
            w.iter()
                .map(|&x| u32::try_from(x).map_err(|_| Error::BadRing("weight too large".into())))
                .collect()
        })
        .transpose()?;
    let s = QuotientRing::polynomial_ring(d.p, &vars, w.as_deref())?;
    let gens = eval_all(&s, &d.ideal)?;
    s.quotient(&gens)
}

fn build_matrix(ring: &QuotientRing, lit: &MatrixLit) -> Result<GradedMatrix> {
    let rows = lit
        .rows
        .iter()
        .map(|r| eval_all(ring, r))
        .collect::<Result<Vec<_>>>()?;
    let target: Vec<i32> = match &lit.degrees {
        Some(d) => d.iter().map(|&x| x as i32).collect(),
        None => vec![0; rows.len()],
    };
    GradedMatrix::with_inferred_source(ring, target, rows)
}

fn degree_of(p: &Polynomial) -> Result<i32> {
    p.homogeneous_degree()
        .map(|d| d as i32)
        .ok_or(Error::InhomogeneousElement)
}

/// Column vectors `g·e_0` in `R` for the nonzero `g`, with their degrees.
fn ideal_columns(gens: &[Polynomial]) -> Result<(Vec<i32>, Vec<Vector>)> {
    let mut degs = Vec::new();
    let mut cols = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        degs.push(degree_of(g)?);
        cols.push(Vector::unit(0, g));
    }
    Ok((degs, cols))
}

fn usize_opt(c: &Command, key: &str, default: usize) -> Result<usize> {
    match c.int_opt(key) {
        None => Ok(default),
        Some(v) => usize::try_from(v)
            .map_err(|_| Error::InvalidArgument(format!("{key} must be nonnegative"))),
    }
}

fn nonneg(v: i64, what: &str) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::InvalidArgument(format!("{what} must be nonnegative")))
}

fn describe(m: &ModulePresentation) -> Value {
    json!({
        "presentation": m.matrix().to_json(m.ring()),
        "generator_degrees": m.generator_degrees(),
        "mu": m.num_generators(),
        "hilbert_series": HilbertSeries::of(m).to_string(),
    })
}

fn iso_text(r: &IsoReport) -> String {
    let mut s = format!("verdict: {:?}", r.verdict);
    if let Some(sh) = r.shift {
        s.push_str(&format!(", shift {sh}"));
    }
    if let Some(o) = &r.obstruction {
        s.push_str(&format!(" ({o})"));
    }
    s
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn define_module(env: &Env, def: &ModuleDef) -> Result<ModEntry> {
    let plain = |module| Ok(ModEntry { module, mf: None });
    match def {
        ModuleDef::Coker(MatrixRef::Named(n)) => {
            let (ring, a) = env.matrix(n)?;
            plain(ModulePresentation::coker(ring, a)?)
        }
        ModuleDef::Coker(MatrixRef::Literal(lit)) => {
            let ring = env.ring()?;
            plain(ModulePresentation::coker(ring, &build_matrix(ring, lit)?)?)
        }
        ModuleDef::Submodule { gens, modulo } => {
            let ring = env.ring()?;
            let (gd, gc) = ideal_columns(&eval_all(ring, gens)?)?;
            if modulo.is_empty() {
                return plain(minimal_presentation(
                    ring,
                    &[0],
                    &gc,
                    PresentationMode::Submodule,
                )?);
            }
            let (md, mc) = ideal_columns(&eval_all(ring, modulo)?)?;
            let z = GradedMatrix::from_columns(vec![0], gd, gc);
            let b = GradedMatrix::from_columns(vec![0], md, mc);
            plain(subquotient(ring, &z, &b)?)
        }
        ModuleDef::Quotient(gens) => {
            let ring = env.ring()?;
            let (_, cols) = ideal_columns(&eval_all(ring, gens)?)?;
            plain(minimal_presentation(
                ring,
                &[0],
                &cols,
                PresentationMode::Quotient,
            )?)
        }
        ModuleDef::Residue => plain(residue_field(env.ring()?)),
        ModuleDef::Free(d) => {
            let d: Vec<i32> = d.iter().map(|&x| x as i32).collect();
            plain(ModulePresentation::free(env.ring()?, &d))
        }
        ModuleDef::Dual(m) => plain(module_dual(env.module(m)?)),
        ModuleDef::Ext { module, i } => {
            let m = env.module(module)?;
            let i = nonneg(*i, "i")?;
            plain(ext(m, i, usize::MAX - 1)?.module)
        }
        ModuleDef::Syzygy { module, n } => {
            plain(syzygy_module(env.module(module)?, nonneg(*n, "n")?))
        }
        ModuleDef::Twist { module, s } => plain(env.module(module)?.twist(*s as i32)),
        ModuleDef::Reduce { module, ideal } => {
            let m = env.module(module)?;
            plain(quotient_module(m, &eval_all(m.ring(), ideal)?)?)
        }
        ModuleDef::Over { module, ring } => {
            let r = env
                .rings
                .get(ring)
                .ok_or_else(|| Error::UnknownName(ring.clone()))?;
            let e = env
                .modules
                .get(module)
                .ok_or_else(|| Error::UnknownName(module.clone()))?;
            // Same ring: keep the factorization certificate.
            let mf = e.mf.clone().filter(|_| e.module.ring() == r);
            Ok(ModEntry {
                module: e.module.change_ring(r)?,
                mf,
            })
        }
        ModuleDef::Sum(a, b) => {
            plain(crate::resolution::direct_sum(env.module(a)?, env.module(b)?)?.pruned())
        }
        ModuleDef::Strip(m) => plain(strip_free_summands(env.module(m)?).reduced),
        ModuleDef::Mf { phi, psi, f } => {
            let (ring, a) = env.matrix(phi)?;
            let (_, b) = env.matrix(psi)?;
            let f = ring.reduce(&f.eval(ring)?);
            let mf = make_matrix_factorization(ring, a, b, &f)?;
            let module = mf_module(&mf)?;
            Ok(ModEntry {
                module,
                mf: Some(mf),
            })
        }
    }
}

fn run_command(env: &Env, c: &Command, flags: &RunFlags) -> Result<(Option<bool>, String, Value)> {
    let (trials, seed) = (flags.trials, flags.seed);
    let arg = |k: usize| env.module(&c.args[k]);
    let cap = usize_opt(c, "cap", flags.cap)?;
    Ok(match c.name {
        CommandName::Resolve | CommandName::Betti => {
            if cap == 0 {
                return Err(Error::InvalidArgument("cap must be at least 1".into()));
            }
            let m = arg(0)?;
            let (cx, pd) = resolve(m, cap)?;
            let betti = cx.betti();
            let mut text = format!("{betti}pd: {pd:?}\n");
            let mut js = json!({"betti": betti.to_json(), "ranks": betti.ranks(), "pd": pd});
            if c.name == CommandName::Resolve {
                for (i, d) in cx.differentials().iter().enumerate() {
                    text.push_str(&format!("d{}: {}\n", i + 1, d.format(m.ring())));
                }
                js["complex"] = cx.to_json();
            }
            (None, text, js)
        }
        CommandName::Hilbert => {
            let m = arg(0)?;
            let upto = match c.int_opt("upto") {
                Some(v) => v as i32,
                None => flags.upto,
            };
            let lo = m
                .generator_degrees()
                .iter()
                .copied()
                .min()
                .unwrap_or(0)
                .min(0);
            let hf = m.hilbert_range(lo, upto.max(lo));
            let hs = HilbertSeries::of(m);
            (
                None,
                format!("degrees {lo}..{upto}: {hf:?}\nseries: {hs}\n"),
                json!({"from": lo, "values": hf, "series": hs.to_string()}),
            )
        }
        CommandName::Ext => {
            let m = arg(0)?;
            let i = usize_opt(c, "i", 0)?;
            let e = ext(m, i, cap)?.module;
            let zero = e.is_zero();
            (
                None,
                format!("Ext^{i}: {}\nzero: {}\n", e.format(), yes(zero)),
                json!({"i": i, "zero": zero, "module": describe(&e)}),
            )
        }
        CommandName::Grade => {
            let g = grade(arg(0)?)?;
            (None, format!("grade: {g}\n"), json!({"grade": g}))
        }
        CommandName::Dual => {
            let d = module_dual(arg(0)?);
            (None, format!("{}\n", d.format()), describe(&d))
        }
        CommandName::Syzygy => {
            let n = usize_opt(c, "n", 0)?;
            let s = syzygy_module(arg(0)?, n);
            (None, format!("{}\n", s.format()), describe(&s))
        }
        CommandName::Show => {
            let m = arg(0)?;
            let mu = min_generators(m);
            let hs = HilbertSeries::of(m);
            (
                None,
                format!("{}\nmu: {mu}\nseries: {hs}\n", m.format()),
                describe(m),
            )
        }
        CommandName::Strip => {
            let s = strip_free_summands(arg(0)?);
            (
                None,
                format!(
                    "free summands in degrees {:?}\nremaining: {}\n",
                    s.free_degrees,
                    s.reduced.format()
                ),
                json!({"free_degrees": s.free_degrees, "reduced": describe(&s.reduced)}),
            )
        }
        CommandName::CheckSelfDual => {
            let r = is_self_dual_resolution(arg(0)?, trials, seed)?;
            let mut text = format!("self-dual resolution: {}\npd: {:?}\n", yes(r.verdict), r.pd);
            if let Some(s) = r.shift {
                text.push_str(&format!("shift: {s}\n"));
            }
            if let Some(why) = &r.reason {
                text.push_str(&format!("reason: {why}\n"));
            }
            (Some(r.verdict), text, r.to_json())
        }
        CommandName::CheckTsd => {
            let r = is_totally_self_dual(arg(0)?, cap, trials, seed)?;
            let text = format!(
                "totally self-dual: {}\ngrade: {}\nwindow: {:?} ({:?})\nnonvanishing Ext: {:?}\n",
                yes(r.verdict),
                r.grade,
                r.window,
                r.window_kind,
                r.nonvanishing
            );
            (Some(r.verdict), text, r.to_json())
        }
        CommandName::CheckPeriodic => {
            let r = detect_periodicity(
                arg(0)?,
                usize_opt(c, "max_n", 8)?,
                usize_opt(c, "max_a", 4)?,
                trials,
                seed,
            )?;
            (
                Some(r.is_periodic()),
                format!("{:?}\nranks: {:?}\n", r.verdict, r.betti),
                r.to_json(),
            )
        }
        CommandName::CheckDeySd => {
            let r = dey_sd_check(env.ring()?, usize_opt(c, "i", 0)?, trials, seed)?;
            let text = format!(
                "(Ω^{i} k)* ≅ Ω^{i} k: {:?}\ndepth: {}\napplicable: {}\nconsistent: {}\n",
                r.hypothesis_verdict,
                r.depth,
                yes(r.applicable),
                yes(r.consistent),
                i = r.i
            );
            (Some(r.consistent), text, serde_json::to_value(&r).unwrap())
        }
        CommandName::CheckDeyEp => {
            let r = dey_ep_check(env.ring()?, usize_opt(c, "i", 0)?, cap, trials, seed)?;
            let text = format!(
                "(Ω^{i} k)* ≅ Ω^{i} k: {:?}\ndepth: {}\nhypersurface: {}\nconsistent: {}\n",
                r.iso_verdict,
                r.depth,
                yes(r.hypersurface),
                yes(r.consistent),
                i = r.i
            );
            (Some(r.consistent), text, serde_json::to_value(&r).unwrap())
        }
        CommandName::CheckEpTheorems => {
            let e = env
                .modules
                .get(&c.args[0])
                .ok_or_else(|| Error::UnknownName(c.args[0].clone()))?;
            let cert = match &e.mf {
                Some(mf) => Certificate::MatrixFactorization(mf),
                None => Certificate::Perfect,
            };
            let d = EpParams::default();
            let params = EpParams {
                i_max: usize_opt(c, "i_max", d.i_max)?,
                m_max: usize_opt(c, "m_max", d.m_max)?,
                max_n: usize_opt(c, "max_n", d.max_n)?,
                max_a: usize_opt(c, "max_a", d.max_a)?,
                trials,
                seed,
            };
            let r = verify_ep_theorems(&e.module, cert, params)?;
            let ok = r.all_verified();
            let text = format!(
                "certificate: {}\ngrade: {}\nperiod: {:?}\nforward checks: {}\nconverse checks: {}\nlemma checks: {}\nall verified: {}\n",
                r.certificate,
                r.grade,
                r.period,
                r.forward.len(),
                r.converse.len(),
                r.lemma.len(),
                yes(ok)
            );
            (Some(ok), text, serde_json::to_value(&r).unwrap())
        }
        CommandName::CheckSyzygyDual => {
            let r = syzygy_dual_probe(
                arg(0)?,
                usize_opt(c, "m", 0)?,
                usize_opt(c, "n", 0)?,
                trials,
                seed,
            )?;
            let ok = r.consistent();
            let text = format!(
                "grade: {}\napplicable: {}\nhypothesis: {:?}\nconsistent: {}\n",
                r.grade,
                yes(r.applicable),
                r.hypothesis,
                yes(ok)
            );
            (Some(ok), text, serde_json::to_value(&r).unwrap())
        }
        CommandName::Iso | CommandName::Stable => {
            let (m, n) = (arg(0)?, arg(1)?);
            let r = if c.name == CommandName::Iso {
                is_isomorphic(m, n, trials, seed)
            } else {
                stable_equal(m, n, trials, seed)
            };
            (None, format!("{}\n", iso_text(&r)), r.to_json())
        }
        CommandName::Mf => {
            let (ring, phi) = env.matrix(&c.args[0])?;
            let (_, psi) = env.matrix(&c.args[1])?;
            let f = c
                .expr_opt("f")
                .ok_or_else(|| Error::InvalidArgument("f".into()))?;
            let f = ring.reduce(&f.eval(ring)?);
            let mf = make_matrix_factorization(ring, phi, psi, &f)?;
            let m = mf_module(&mf)?;
            let t = mf_module(&mf_transpose(&mf)?)?;
            let text = format!(
                "matrix factorization of {}\ncoker phi: {}\ncoker phi^T: {}\n",
                ring.format(&f),
                m.format(),
                t.format()
            );
            (
                None,
                text,
                json!({"valid": true, "f": ring.format(&f), "module": describe(&m), "transpose_module": describe(&t)}),
            )
        }
        CommandName::Classify => {
            let ring = env.ring()?;
            let r = classify_ring(ring, cap.max(ring.nvars() + 2), trials, seed)?;
            let text = format!(
                "regular: {}\nhypersurface: {}\ndepth: {}\nBetti numbers of k: {:?}\ngrowth: {}\n",
                yes(r.regular),
                yes(r.hypersurface),
                r.depth,
                r.betti,
                yes(r.growth)
            );
            (None, text, serde_json::to_value(&r).unwrap())
        }
    })
}

/// Build every ring and literal matrix, so malformed rings and inhomogeneous
/// matrices are reported before any computation starts.
fn elaborate(script: &Script) -> Result<Env> {
    let mut env = Env::default();
    for st in &script.statements {
        let loc = |e: Error| e.at(st.line, st.col);
        match &st.kind {
            StmtKind::Ring(d) => {
                let r = build_ring(d).map_err(loc)?;
                env.rings.insert(d.name.clone(), r.clone());
                env.current = Some(r);
            }
            StmtKind::Matrix { name, matrix } => {
                let ring = env.ring().map_err(loc)?.clone();
                let a = build_matrix(&ring, matrix).map_err(loc)?;
                env.matrices.insert(name.clone(), (ring, a));
            }
            StmtKind::Module {
                def: ModuleDef::Coker(MatrixRef::Literal(lit)),
                ..
            } => {
                build_matrix(env.ring().map_err(loc)?, lit).map_err(loc)?;
            }
            _ => {}
        }
    }
    Ok(env)
}

/// Check that rings and matrices in a parsed script are well formed.
pub(crate) fn validate(script: &Script) -> Result<()> {
    elaborate(script).map(|_| ())
}

fn step(env: &mut Env, st: &Statement, index: usize, flags: &RunFlags) -> Result<Option<Report>> {
    match &st.kind {
        StmtKind::Ring(d) => {
            env.current = Some(env.rings[&d.name].clone());
            Ok(None)
        }
        StmtKind::Matrix { .. } => Ok(None),
        StmtKind::Module { name, def } => {
            let e = define_module(env, def)?;
            env.modules.insert(name.clone(), e);
            Ok(None)
        }
        StmtKind::Command(c) => {
            let (verdict, text, json) = run_command(env, c, flags)?;
            Ok(Some(Report {
                index,
                line: st.line,
                col: st.col,
                statement: c.to_string(),
                verdict,
                expected: c.expected(),
                text,
                json,
            }))
        }
    }
}

/// Execute the statements in order. Stops at the first error (exit code 2);
/// otherwise the exit code is 1 if some `check` missed its expected verdict and 0 if not.
pub fn run(script: &Script, flags: &RunFlags) -> Outcome {
    let mut env = match elaborate(script) {
        Ok(e) => e,
        Err(e) => {
            return Outcome {
                reports: vec![],
                error: Some(e),
                exit_code: 2,
            }
        }
    };
    env.current = None;
    let mut reports = Vec::new();
    for (index, st) in script.statements.iter().enumerate() {
        match step(&mut env, st, index, flags) {
            Ok(Some(r)) => reports.push(r),
            Ok(None) => {}
            Err(e) => {
                return Outcome {
                    reports,
                    error: Some(e.at(st.line, st.col)),
                    exit_code: 2,
                }
            }
        }
    }
    let failed = reports.iter().any(|r| !r.passed());
    Outcome {
        reports,
        error: None,
        exit_code: i32::from(failed),
    }
}
