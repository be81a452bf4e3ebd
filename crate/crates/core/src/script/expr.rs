use std::fmt;

use crate::algebra::{Polynomial, QuotientRing};
use crate::error::{Error, Result};

/// Unevaluated polynomial expression as written in a script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Var(_) => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.write_at(f, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(
                    f,
                    " {} ",
                    if matches!(self, Expr::Add(..)) {
                        '+'
                    } else {
                        '-'
                    }
                )?;
                b.write_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "*")?;
                b.write_at(f, 3)
            }
            Expr::Pow(a, e) => {
                a.write_at(f, 5)?;
                write!(f, "^{e}")
            }
        }
    }

    /// Evaluate in the ambient polynomial ring of `ring` (no reduction modulo the ideal).
    pub fn eval(&self, ring: &QuotientRing) -> Result<Polynomial> {
        let fld = ring.field();
        Ok(match self {
            Expr::Int(v) => {
                Polynomial::constant(fld.reduce((*v % fld.characteristic() as u64) as i64))
            }
            Expr::Var(name) => ring
                .var(name)
                .ok_or_else(|| Error::UnknownName(name.clone()))?,
            Expr::Neg(e) => e.eval(ring)?.neg(&fld),
            Expr::Add(a, b) => a.eval(ring)?.add(&b.eval(ring)?, &fld),
            Expr::Sub(a, b) => a.eval(ring)?.sub(&b.eval(ring)?, &fld),
            Expr::Mul(a, b) => a.eval(ring)?.mul(&b.eval(ring)?, &fld),
            Expr::Pow(a, e) => a.eval(ring)?.pow(*e, &fld),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
