//! Script front end: a small declarative language for rings, modules and checks.
//!
//! ```text
//! ring R = F(101)[x, y] / (x^3);
//! matrix PHI = [[x^2, -y], [0, x]] degrees (1, 1);
//! module M = coker PHI;
//! check tsd M;
//! ```

pub mod ast;
pub mod expr;
pub mod lexer;
pub mod parser;
pub mod run;

pub use ast::{
    Command, CommandName, MatrixLit, MatrixRef, ModuleDef, OptValue, RingDecl, Script, Statement,
    StmtKind,
};
pub use expr::Expr;
pub use parser::{parse_expression, parse_script};
pub use run::{run, Outcome, Report, RunFlags};
