use std::fmt;

use super::expr::Expr;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

/// A statement and where it starts. Equality ignores the position.
#[derive(Clone, Debug)]
pub struct Statement {
    pub kind: StmtKind,
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Statement {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Statement {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Ring(RingDecl),
    Matrix { name: String, matrix: MatrixLit },
    Module { name: String, def: ModuleDef },
    Command(Command),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub p: u64,
    pub vars: Vec<String>,
    pub weights: Option<Vec<u64>>,
    pub ideal: Vec<Expr>,
}

/// Row-major matrix literal; `degrees` are the row (target) degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixLit {
    pub rows: Vec<Vec<Expr>>,
    pub degrees: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixRef {
    Named(String),
    Literal(MatrixLit),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleDef {
    Coker(MatrixRef),
    /// Submodule of `R` generated by `gens`, taken modulo the ideal `modulo`.
    Submodule {
        gens: Vec<Expr>,
        modulo: Vec<Expr>,
    },
    /// `R / (gens)`.
    Quotient(Vec<Expr>),
    Residue,
    Free(Vec<i64>),
    Dual(String),
    Ext {
        module: String,
        i: i64,
    },
    Syzygy {
        module: String,
        n: i64,
    },
    Twist {
        module: String,
        s: i64,
    },
    /// `M / (ideal) M`.
    Reduce {
        module: String,
        ideal: Vec<Expr>,
    },
    /// Base change to another declared ring.
    Over {
        module: String,
        ring: String,
    },
    Sum(String, String),
    Strip(String),
    Mf {
        phi: String,
        psi: String,
        f: Expr,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CommandName {
    Resolve,
    Betti,
    Hilbert,
    Ext,
    Grade,
    Dual,
    Syzygy,
    Show,
    Strip,
    CheckSelfDual,
    CheckTsd,
    CheckPeriodic,
    CheckDeySd,
    CheckDeyEp,
    CheckEpTheorems,
    CheckSyzygyDual,
    Iso,
    Stable,
    Mf,
    Classify,
}

/// What a command takes: number of name arguments, and which `key=value`
/// options are allowed or required.
pub(crate) struct Signature {
    pub args: usize,
    pub matrix_args: bool,
    pub allowed: &'static [&'static str],
    pub required: &'static [&'static str],
}

impl CommandName {
    pub const ALL: [CommandName; 20] = [
        CommandName::Resolve,
        CommandName::Betti,
        CommandName::Hilbert,
        CommandName::Ext,
        CommandName::Grade,
        CommandName::Dual,
        CommandName::Syzygy,
        CommandName::Show,
        CommandName::Strip,
        CommandName::CheckSelfDual,
        CommandName::CheckTsd,
        CommandName::CheckPeriodic,
        CommandName::CheckDeySd,
        CommandName::CheckDeyEp,
        CommandName::CheckEpTheorems,
        CommandName::CheckSyzygyDual,
        CommandName::Iso,
        CommandName::Stable,
        CommandName::Mf,
        CommandName::Classify,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            CommandName::Resolve => "resolve",
            CommandName::Betti => "betti",
            CommandName::Hilbert => "hilbert",
            CommandName::Ext => "ext",
            CommandName::Grade => "grade",
            CommandName::Dual => "dual",
            CommandName::Syzygy => "syzygy",
            CommandName::Show => "show",
            CommandName::Strip => "strip",
            CommandName::CheckSelfDual => "check selfdual",
            CommandName::CheckTsd => "check tsd",
            CommandName::CheckPeriodic => "check periodic",
            CommandName::CheckDeySd => "check dey-sd",
            CommandName::CheckDeyEp => "check dey-ep",
            CommandName::CheckEpTheorems => "check ep-theorems",
            CommandName::CheckSyzygyDual => "check syzygy-dual",
            CommandName::Iso => "iso",
            CommandName::Stable => "stable",
            CommandName::Mf => "mf",
            CommandName::Classify => "classify",
        }
    }

    pub fn is_check(self) -> bool {
        self.keyword().starts_with("check ")
    }

    pub(crate) fn signature(self) -> Signature {
        let s = |args, allowed, required| Signature {
            args,
            matrix_args: false,
            allowed,
            required,
        };
        match self {
            CommandName::Resolve | CommandName::Betti => s(1, &["cap"], &[]),
            CommandName::Hilbert => s(1, &["upto"], &[]),
            CommandName::Ext => s(1, &["i", "cap"], &["i"]),
            CommandName::Grade | CommandName::Dual | CommandName::Show | CommandName::Strip => {
                s(1, &[], &[])
            }
            CommandName::Syzygy => s(1, &["n"], &["n"]),
            CommandName::CheckSelfDual => s(1, &[], &[]),
            CommandName::CheckTsd => s(1, &["cap"], &[]),
            CommandName::CheckPeriodic => s(1, &["max_n", "max_a"], &[]),
            CommandName::CheckDeySd => s(0, &["i"], &["i"]),
            CommandName::CheckDeyEp => s(0, &["i", "cap"], &["i"]),
            CommandName::CheckEpTheorems => s(1, &["i_max", "m_max", "max_n", "max_a"], &[]),
            CommandName::CheckSyzygyDual => s(1, &["m", "n"], &["m", "n"]),
            CommandName::Iso | CommandName::Stable => s(2, &[], &[]),
            CommandName::Mf => Signature {
                args: 2,
                matrix_args: true,
                allowed: &["f"],
                required: &["f"],
            },
            CommandName::Classify => s(0, &["cap"], &[]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OptValue {
    Int(i64),
    Bool(bool),
    Expr(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub name: CommandName,
    pub args: Vec<String>,
    pub opts: Vec<(String, OptValue)>,
}

impl Command {
    pub fn int_opt(&self, key: &str) -> Option<i64> {
        self.opts.iter().find_map(|(k, v)| match v {
            OptValue::Int(x) if k == key => Some(*x),
            _ => None,
        })
    }

    /// The verdict a `check` must produce to pass; `true` unless `expect=false` is given.
    pub fn expected(&self) -> bool {
        !self
            .opts
            .iter()
            .any(|(k, v)| k == "expect" && *v == OptValue::Bool(false))
    }

    pub fn expr_opt(&self, key: &str) -> Option<&Expr> {
        self.opts.iter().find_map(|(k, v)| match v {
            OptValue::Expr(e) if k == key => Some(e),
            _ => None,
        })
    }
}

fn list<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for MatrixLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| format!("[{}]", list(r))).collect();
        write!(f, "[{}]", rows.join(", "))?;
        if let Some(d) = &self.degrees {
            write!(f, " degrees ({})", list(d))?;
        }
        Ok(())
    }
}

impl fmt::Display for OptValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OptValue::Int(v) => write!(f, "{v}"),
            OptValue::Bool(b) => write!(f, "{b}"),
            OptValue::Expr(e) => write!(f, "{e}"),
        }
    }
}

impl fmt::Display for ModuleDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleDef::Coker(MatrixRef::Named(n)) => write!(f, "coker {n}"),
            ModuleDef::Coker(MatrixRef::Literal(m)) => write!(f, "coker {m}"),
            ModuleDef::Submodule { gens, modulo } => {
                write!(f, "submodule ({})", list(gens))?;
                if !modulo.is_empty() {
                    write!(f, " mod ({})", list(modulo))?;
                }
                Ok(())
            }
            ModuleDef::Quotient(g) => write!(f, "quotient ({})", list(g)),
            ModuleDef::Residue => write!(f, "residue"),
            ModuleDef::Free(d) => write!(f, "free ({})", list(d)),
            ModuleDef::Dual(m) => write!(f, "dual {m}"),
            ModuleDef::Ext { module, i } => write!(f, "ext {module} i={i}"),
            ModuleDef::Syzygy { module, n } => write!(f, "syzygy {module} n={n}"),
            ModuleDef::Twist { module, s } => write!(f, "twist {module} s={s}"),
            ModuleDef::Reduce { module, ideal } => write!(f, "reduce {module} ({})", list(ideal)),
            ModuleDef::Over { module, ring } => write!(f, "{module} over {ring}"),
            ModuleDef::Sum(a, b) => write!(f, "sum {a} {b}"),
            ModuleDef::Strip(m) => write!(f, "strip {m}"),
            ModuleDef::Mf { phi, psi, f: e } => write!(f, "mf {phi} {psi} f={e}"),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name.keyword())?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        for (k, v) in &self.opts {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

impl fmt::Display for StmtKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StmtKind::Ring(r) => {
                write!(f, "ring {} = F({})[{}]", r.name, r.p, r.vars.join(", "))?;
                if let Some(w) = &r.weights {
                    write!(f, " weights ({})", list(w))?;
                }
                if !r.ideal.is_empty() {
                    write!(f, " / ({})", list(&r.ideal))?;
                }
            }
            StmtKind::Matrix { name, matrix } => write!(f, "matrix {name} = {matrix}")?,
            StmtKind::Module { name, def } => write!(f, "module {name} = {def}")?,
            StmtKind::Command(c) => write!(f, "{c}")?,
        }
        write!(f, ";")
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

/// One statement per line, in canonical spelling.
impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
