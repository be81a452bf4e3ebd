use std::collections::HashMap;

use super::ast::{
    Command, CommandName, MatrixLit, MatrixRef, ModuleDef, OptValue, RingDecl, Script, Statement,
    StmtKind,
};
use super::expr::Expr;
use super::lexer::{tokenize, Tok, Token};
use crate::algebra::PrimeField;
use crate::error::{Error, Result};

pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub fn new(src: &str) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    pub fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn err<T>(&self, expected: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Syntax {
            line,
            col,
            expected: expected.into(),
        })
    }

    pub fn at_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    pub fn at_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    pub fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.at_sym(c) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("`{c}`"))
        }
    }

    pub fn expect_word(&mut self, w: &str) -> Result<()> {
        if self.at_word(w) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("`{w}`"))
        }
    }

    pub fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.err("identifier"),
        }
    }

    pub fn int(&mut self) -> Result<u64> {
        match *self.peek() {
            Tok::Int(v) => {
                self.bump();
                Ok(v)
            }
            _ => self.err("integer"),
        }
    }

    /// Signed integer literal.
    pub fn signed_int(&mut self) -> Result<i64> {
        let neg = if self.at_sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let v = self.int()? as i64;
        Ok(if neg { -v } else { v })
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.at_sym('+') {
                self.bump();
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.at_sym('-') {
                self.bump();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.at_sym('*') {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.at_sym('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.at_sym('^') {
            self.bump();
            let e = self.int()?;
            let e = u32::try_from(e).or_else(|_| self.err("exponent below 2^32"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Expr::Int(v))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr::Var(s))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            _ => self.err("polynomial expression"),
        }
    }
}

impl Parser {
    fn statement(&mut self) -> Result<Statement> {
        let (line, col) = self.here();
        let kind = if self.at_word("ring") {
            self.ring_decl()?
        } else if self.at_word("matrix") {
            self.bump();
            let name = self.ident()?;
            self.expect_sym('=')?;
            StmtKind::Matrix {
                name,
                matrix: self.matrix_lit()?,
            }
        } else if self.at_word("module") {
            self.bump();
            let name = self.ident()?;
            self.expect_sym('=')?;
            StmtKind::Module {
                name,
                def: self.module_def()?,
            }
        } else {
            StmtKind::Command(self.command()?)
        };
        self.expect_sym(';')?;
        Ok(Statement { kind, line, col })
    }

    fn ring_decl(&mut self) -> Result<StmtKind> {
        self.expect_word("ring")?;
        let name = self.ident()?;
        self.expect_sym('=')?;
        self.expect_word("F")?;
        self.expect_sym('(')?;
        let (l, c) = self.here();
        let p = self.int()?;
        PrimeField::new(p).map_err(|e| e.at(l, c))?;
        self.expect_sym(')')?;
        self.expect_sym('[')?;
        let mut vars = vec![self.ident()?];
        while self.at_sym(',') {
            self.bump();
            vars.push(self.ident()?);
        }
        self.expect_sym(']')?;
        let weights = if self.at_word("weights") {
            self.bump();
            self.expect_sym('(')?;
            let mut w = vec![self.int()?];
            while self.at_sym(',') {
                self.bump();
                w.push(self.int()?);
            }
            self.expect_sym(')')?;
            Some(w)
        } else {
            None
        };
        let ideal = if self.at_sym('/') {
            self.bump();
            self.expr_list()?
        } else {
            Vec::new()
        };
        Ok(StmtKind::Ring(RingDecl {
            name,
            p,
            vars,
            weights,
            ideal,
        }))
    }

    /// `( e, e, .. )`
    fn expr_list(&mut self) -> Result<Vec<Expr>> {
        self.expect_sym('(')?;
        let mut out = vec![self.expr()?];
        while self.at_sym(',') {
            self.bump();
            out.push(self.expr()?);
        }
        self.expect_sym(')')?;
        Ok(out)
    }

    fn int_list(&mut self) -> Result<Vec<i64>> {
        self.expect_sym('(')?;
        let mut out = vec![self.signed_int()?];
        while self.at_sym(',') {
            self.bump();
            out.push(self.signed_int()?);
        }
        self.expect_sym(')')?;
        Ok(out)
    }

    fn matrix_lit(&mut self) -> Result<MatrixLit> {
        self.expect_sym('[')?;
        let mut rows: Vec<Vec<Expr>> = Vec::new();
        loop {
            self.expect_sym('[')?;
            let mut row = vec![self.expr()?];
            while self.at_sym(',') {
                self.bump();
                row.push(self.expr()?);
            }
            if !rows.is_empty() && row.len() != rows[0].len() {
                return self.err(format!("a row of length {}", rows[0].len()));
            }
            self.expect_sym(']')?;
            rows.push(row);
            if self.at_sym(',') {
                self.bump();
            } else {
                break;
            }
        }
        self.expect_sym(']')?;
        let degrees = if self.at_word("degrees") {
            self.bump();
            let (l, c) = self.here();
            let d = self.int_list()?;
            if d.len() != rows.len() {
                return Err(Error::Syntax {
                    line: l,
                    col: c,
                    expected: format!("{} row degrees", rows.len()),
                });
            }
            Some(d)
        } else {
            None
        };
        Ok(MatrixLit { rows, degrees })
    }

    fn opt(&mut self, key: &str) -> Result<i64> {
        self.expect_word(key)?;
        self.expect_sym('=')?;
        self.signed_int()
    }

    fn module_def(&mut self) -> Result<ModuleDef> {
        let word = match self.peek().clone() {
            Tok::Ident(w) => w,
            _ => return self.err("module expression"),
        };
        if matches!(self.peek_at(1), Tok::Ident(w) if w == "over") {
            self.bump();
            self.bump();
            return Ok(ModuleDef::Over {
                module: word,
                ring: self.ident()?,
            });
        }
        self.bump();
        Ok(match word.as_str() {
            "coker" => {
                if self.at_sym('[') {
                    ModuleDef::Coker(MatrixRef::Literal(self.matrix_lit()?))
                } else {
                    ModuleDef::Coker(MatrixRef::Named(self.ident()?))
                }
            }
            "submodule" => {
                let gens = self.expr_list()?;
                let modulo = if self.at_word("mod") {
                    self.bump();
                    self.expr_list()?
                } else {
                    Vec::new()
                };
                ModuleDef::Submodule { gens, modulo }
            }
            "quotient" => ModuleDef::Quotient(self.expr_list()?),
            "residue" => ModuleDef::Residue,
            "free" => ModuleDef::Free(self.int_list()?),
            "dual" => ModuleDef::Dual(self.ident()?),
            "ext" => {
                let module = self.ident()?;
                ModuleDef::Ext {
                    module,
                    i: self.opt("i")?,
                }
            }
            "syzygy" => {
                let module = self.ident()?;
                ModuleDef::Syzygy {
                    module,
                    n: self.opt("n")?,
                }
            }
            "twist" => {
                let module = self.ident()?;
                ModuleDef::Twist {
                    module,
                    s: self.opt("s")?,
                }
            }
            "reduce" => {
                let module = self.ident()?;
                ModuleDef::Reduce {
                    module,
                    ideal: self.expr_list()?,
                }
            }
            "sum" => {
                let a = self.ident()?;
                ModuleDef::Sum(a, self.ident()?)
            }
            "strip" => ModuleDef::Strip(self.ident()?),
            "mf" => {
                let phi = self.ident()?;
                let psi = self.ident()?;
                self.expect_word("f")?;
                self.expect_sym('=')?;
                ModuleDef::Mf {
                    phi,
                    psi,
                    f: self.expr()?,
                }
            }
            _ => {
                self.pos -= 1;
                return self.err("module expression (coker, submodule, quotient, residue, free, dual, ext, syzygy, twist, reduce, sum, strip, mf, or `M over R`)");
            }
        })
    }

    fn command(&mut self) -> Result<Command> {
        let first = match self.peek().clone() {
            Tok::Ident(w) => w,
            _ => return self.err("statement"),
        };
        let keyword = if first == "check" {
            match self.peek_at(1).clone() {
                Tok::Ident(w) => format!("check {w}"),
                _ => {
                    self.bump();
                    return self.err("check name");
                }
            }
        } else {
            first
        };
        let Some(name) = CommandName::ALL
            .into_iter()
            .find(|c| c.keyword() == keyword)
        else {
            return self.err("`ring`, `matrix`, `module` or a command");
        };
        self.bump();
        if name.is_check() {
            self.bump();
        }
        let sig = name.signature();
        let mut args = Vec::new();
        for _ in 0..sig.args {
            args.push(self.ident()?);
        }
        let mut opts: Vec<(String, OptValue)> = Vec::new();
        while let Tok::Ident(k) = self.peek().clone() {
            let expect = name.is_check() && k == "expect";
            if !expect && !sig.allowed.contains(&k.as_str()) {
                return self.err(format!(
                    "an option of `{}` ({})",
                    name.keyword(),
                    sig.allowed.join(", ")
                ));
            }
            if opts.iter().any(|(o, _)| *o == k) {
                return self.err(format!("`{k}` only once"));
            }
            self.bump();
            self.expect_sym('=')?;
            let v = if k == "f" {
                OptValue::Expr(self.expr()?)
            } else if expect {
                match self.ident()?.as_str() {
                    "true" => OptValue::Bool(true),
                    "false" => OptValue::Bool(false),
                    _ => {
                        self.pos -= 1;
                        return self.err("`true` or `false`");
                    }
                }
            } else {
                OptValue::Int(self.signed_int()?)
            };
            opts.push((k, v));
        }
        for r in sig.required {
            if !opts.iter().any(|(o, _)| o == r) {
                return self.err(format!("option `{r}=`"));
            }
        }
        Ok(Command { name, args, opts })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Ring,
    Matrix,
    Module,
}

/// Names are unique and refer to earlier declarations. Every matrix and module
/// is tagged with a ring scope; objects that meet in one operation must share it.
fn check_names(script: &Script) -> Result<()> {
    let mut names: HashMap<&str, (Kind, String)> = HashMap::new();
    let mut current: Option<String> = None;
    let want = |names: &HashMap<&str, (Kind, String)>, n: &str, k: Kind| -> Result<String> {
        match names.get(n) {
            Some((kind, scope)) if *kind == k => Ok(scope.clone()),
            _ => Err(Error::UnknownName(n.to_string())),
        }
    };
    let ring_of = |c: &Option<String>| {
        c.clone()
            .ok_or_else(|| Error::UnknownName("ring (no ring declared yet)".into()))
    };
    for st in &script.statements {
        let loc = |e: Error| e.at(st.line, st.col);
        let (new, entry) = match &st.kind {
            StmtKind::Ring(r) => {
                current = Some(r.name.clone());
                (Some(r.name.as_str()), (Kind::Ring, r.name.clone()))
            }
            StmtKind::Matrix { name, .. } => (
                Some(name.as_str()),
                (Kind::Matrix, ring_of(&current).map_err(loc)?),
            ),
            StmtKind::Module { name, def } => {
                let scope = match def {
                    ModuleDef::Coker(MatrixRef::Named(m)) => {
                        let s = want(&names, m, Kind::Matrix).map_err(loc)?;
                        if Some(&s) != current.as_ref() {
                            return Err(loc(Error::RingMismatch));
                        }
                        s
                    }
                    ModuleDef::Coker(MatrixRef::Literal(_))
                    | ModuleDef::Submodule { .. }
                    | ModuleDef::Quotient(_)
                    | ModuleDef::Residue
                    | ModuleDef::Free(_) => ring_of(&current).map_err(loc)?,
                    ModuleDef::Dual(m)
                    | ModuleDef::Ext { module: m, .. }
                    | ModuleDef::Syzygy { module: m, .. }
                    | ModuleDef::Twist { module: m, .. }
                    | ModuleDef::Reduce { module: m, .. }
                    | ModuleDef::Strip(m) => want(&names, m, Kind::Module).map_err(loc)?,
                    ModuleDef::Over { module, ring } => {
                        want(&names, module, Kind::Module).map_err(loc)?;
                        want(&names, ring, Kind::Ring).map_err(loc)?
                    }
                    ModuleDef::Sum(a, b) => {
                        let (x, y) = (
                            want(&names, a, Kind::Module).map_err(loc)?,
                            want(&names, b, Kind::Module).map_err(loc)?,
                        );
                        if x != y {
                            return Err(loc(Error::RingMismatch));
                        }
                        x
                    }
                    ModuleDef::Mf { phi, psi, .. } => {
                        let (x, y) = (
                            want(&names, phi, Kind::Matrix).map_err(loc)?,
                            want(&names, psi, Kind::Matrix).map_err(loc)?,
                        );
                        if x != y {
                            return Err(loc(Error::RingMismatch));
                        }
                        format!("{x}/mf:{name}")
                    }
                };
                (Some(name.as_str()), (Kind::Module, scope))
            }
            StmtKind::Command(c) => {
                let sig = c.name.signature();
                let kind = if sig.matrix_args {
                    Kind::Matrix
                } else {
                    Kind::Module
                };
                let scopes = c
                    .args
                    .iter()
                    .map(|a| want(&names, a, kind))
                    .collect::<Result<Vec<_>>>()
                    .map_err(loc)?;
                if scopes.windows(2).any(|w| w[0] != w[1]) {
                    return Err(loc(Error::RingMismatch));
                }
                if sig.args == 0 {
                    ring_of(&current).map_err(loc)?;
                }
                (None, (Kind::Module, String::new()))
            }
        };
        if let Some(n) = new {
            if names.insert(n, entry).is_some() {
                return Err(loc(Error::InvalidArgument(format!(
                    "`{n}` is declared twice"
                ))));
            }
        }
    }
    Ok(())
}

/// Parse a script and check that every name resolves to an earlier declaration.
pub fn parse_script(text: &str) -> Result<Script> {
    let mut p = Parser::new(text)?;
    let mut statements = Vec::new();
    while !p.at_eof() {
        statements.push(p.statement()?);
    }
    let script = Script { statements };
    check_names(&script)?;
    super::run::validate(&script)?;
    Ok(script)
}

/// Parse a standalone polynomial expression.
pub fn parse_expression(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if !p.at_eof() {
        return p.err("end of expression");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    const REMARK: &str = "ring R = F(101)[x,y] / (x^3); module M = coker [[x^2, -y],[0, x]] degrees (1,1); check selfdual M;";

    #[test]
    fn remark_script_has_three_statements() {
        let s = parse_script(REMARK).unwrap();
        assert_eq!(s.statements.len(), 3);
        assert!(matches!(
            &s.statements[1].kind,
            StmtKind::Module {
                def: ModuleDef::Coker(MatrixRef::Literal(_)),
                ..
            }
        ));
        assert_eq!(s.statements[2].col, 82);
    }

    #[test]
    fn submodule_declaration() {
        let s = parse_script("ring R = F(101)[x,y]; module M = submodule (x, y);").unwrap();
        let StmtKind::Module {
            def: ModuleDef::Submodule { gens, modulo },
            ..
        } = &s.statements[1].kind
        else {
            panic!("not a submodule declaration");
        };
        assert_eq!(gens.len(), 2);
        assert!(modulo.is_empty());
    }

    #[test]
    fn composite_field_is_rejected() {
        let e = parse_script("ring R = F(4)[x];").unwrap_err();
        assert_eq!(*e.root(), Error::NotPrime(4));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_script("ring R = F(101)[x];\nmodule M = coker [[x, ]];").unwrap_err();
        let Error::Syntax { line, col, .. } = e else {
            panic!("{e:?}")
        };
        assert_eq!((line, col), (2, 23));
    }

    #[test]
    fn unknown_names_and_ring_mismatch() {
        let e = parse_script("ring R = F(101)[x]; grade M;").unwrap_err();
        assert!(matches!(e.root(), Error::UnknownName(n) if n == "M"));
        let e = parse_script("ring R = F(101)[x]; module A = residue; ring T = F(101)[y]; module B = residue; iso A B;").unwrap_err();
        assert_eq!(*e.root(), Error::RingMismatch);
        let e = parse_script("check dey-sd i=2;").unwrap_err();
        assert!(matches!(e.root(), Error::UnknownName(_)));
    }

    #[test]
    fn duplicate_names_are_rejected() {
        assert!(parse_script("ring R = F(101)[x]; module R = residue;").is_err());
    }

    #[test]
    fn inhomogeneous_matrix_fails_before_running() {
        let e = parse_script("ring R = F(101)[x,y]; matrix A = [[x, y], [y^2, x]];").unwrap_err();
        assert!(matches!(e.root(), Error::InhomogeneousMatrix(_)), "{e:?}");
    }

    #[test]
    fn options_are_validated() {
        assert!(parse_script("ring R = F(101)[x]; module K = residue; ext K;").is_err());
        assert!(parse_script("ring R = F(101)[x]; module K = residue; grade K cap=3;").is_err());
        assert!(
            parse_script("ring R = F(101)[x]; module K = residue; check tsd K expect=false;")
                .is_ok()
        );
        assert!(
            parse_script("ring R = F(101)[x]; module K = residue; check tsd K expect=3;").is_err()
        );
    }

    #[test]
    fn printing_round_trips() {
        let text = "ring S = F(7)[a, b] weights (1, 2) / (a^2*b - b^2, -(a + 1)^2*0);\n\
                    matrix A = [[a, -b], [b^2, a*b]] degrees (0, -1);\n\
                    module M = coker A; module N = twist M s=-2; module P = reduce N (a^2);\n\
                    check dey-ep i=3 cap=6 expect=false; mf A A f=a - -b;";
        let s = parse_script(text);
        // Printing must be stable even where evaluation fails later.
        let s = match s {
            Ok(s) => s,
            Err(_) => {
                let mut p = Parser::new(text).unwrap();
                let mut st = Vec::new();
                while !p.at_eof() {
                    st.push(p.statement().unwrap());
                }
                Script { statements: st }
            }
        };
        let printed = s.to_string();
        let mut p = Parser::new(&printed).unwrap();
        let mut again = Vec::new();
        while !p.at_eof() {
            again.push(p.statement().unwrap());
        }
        assert_eq!(s, Script { statements: again });
    }
}
