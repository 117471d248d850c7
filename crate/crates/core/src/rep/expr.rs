//! Module expressions: `std`, `dual(E)`, `wedge(k,E)`, `sym(k,E)`,
//! `tensor(E,E)`, `sym2(E)`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::{derived_rep, standard_rep, Derived, Rep, RepError};
use crate::lie::LieAlg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepExprError {
    #[error("syntax error in module expression at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown module constructor {0:?}")]
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepExpr {
    Std,
    Dual(Box<RepExpr>),
    Wedge(usize, Box<RepExpr>),
    Sym(usize, Box<RepExpr>),
    Tensor(Box<RepExpr>, Box<RepExpr>),
    Sym2(Box<RepExpr>),
}

impl RepExpr {
    pub fn build(&self, g: &Arc<LieAlg>) -> Result<Rep, RepError> {
        match self {
            RepExpr::Std => Ok(standard_rep(g)),
            RepExpr::Dual(e) => derived_rep(&e.build(g)?, Derived::Dual),
            RepExpr::Wedge(k, e) => derived_rep(&e.build(g)?, Derived::Wedge(*k)),
            RepExpr::Sym(k, e) => derived_rep(&e.build(g)?, Derived::Sym(*k)),
            RepExpr::Tensor(a, b) => {
                let b = b.build(g)?;
                derived_rep(&a.build(g)?, Derived::Tensor(&b))
            }
            RepExpr::Sym2(e) => derived_rep(&e.build(g)?, Derived::Sym2),
        }
    }
}

impl fmt::Display for RepExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepExpr::Std => write!(f, "std"),
            RepExpr::Dual(e) => write!(f, "dual({e})"),
            RepExpr::Wedge(k, e) => write!(f, "wedge({k},{e})"),
            RepExpr::Sym(k, e) => write!(f, "sym({k},{e})"),
            RepExpr::Tensor(a, b) => write!(f, "tensor({a},{b})"),
            RepExpr::Sym2(e) => write!(f, "sym2({e})"),
        }
    }
}

pub fn parse_rep_expr(text: &str) -> Result<RepExpr, RepExprError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> RepExprError {
        RepExprError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), RepExprError> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String, RepExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a constructor name"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<usize, RepExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("expected a degree"))
    }

    fn expr(&mut self) -> Result<RepExpr, RepExprError> {
        let name = self.ident()?;
        let e = match name.as_str() {
            "std" => RepExpr::Std,
            "dual" => {
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                RepExpr::Dual(Box::new(e))
            }
            "sym2" => {
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                RepExpr::Sym2(Box::new(e))
            }
            "wedge" | "sym" => {
                self.expect(b'(')?;
                let k = self.number()?;
                self.expect(b',')?;
                let e = Box::new(self.expr()?);
                self.expect(b')')?;
                if name == "wedge" {
                    RepExpr::Wedge(k, e)
                } else {
                    RepExpr::Sym(k, e)
                }
            }
            "tensor" => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                RepExpr::Tensor(Box::new(a), Box::new(b))
            }
            other => return Err(RepExprError::Unknown(other.to_string())),
        };
        Ok(e)
    }
}
