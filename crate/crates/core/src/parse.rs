//! Parser for Lie expressions.
//!
//! Grammar (whitespace allowed between tokens):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := [scalar '*'] atom
//! atom   := 'a' digits | '[' expr (',' expr)+ ']'
//! scalar := ['-'] digits ['/' digits]
//! ```
//!
//! A comma list `[x,y,z]` is sugar for the left-normed `[[x,y],z]`. Brackets
//! distribute over the sums inside them, so parsing always yields a flat
//! [`LieExpr`]. Scalars are read in the field chosen by the caller.

use thiserror::Error;

use crate::graph::Gen;
use crate::scalar::{FieldTag, Scalar};
use crate::term::{LieExpr, LieTerm};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

const MAX_DEPTH: usize = 1000;

pub fn parse_expr(text: &str, n: Gen, field: FieldTag) -> Result<LieExpr, ParseError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        n,
        field,
    };
    p.skip_ws();
    let expr = p.expr(0)?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    n: Gen,
    field: FieldTag,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self, depth: usize) -> Result<LieExpr, ParseError> {
        if depth > MAX_DEPTH {
            return Err(self.err("expression nesting too deep"));
        }
        self.skip_ws();
        let negate = self.eat(b'-');
        let mut acc = self.signed_term(negate, depth)?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.signed_term(false, depth)?;
                    acc.terms.extend(t.terms);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.signed_term(true, depth)?;
                    acc.terms.extend(t.terms);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn signed_term(&mut self, negate: bool, depth: usize) -> Result<LieExpr, ParseError> {
        let mut t = self.term(depth)?;
        if negate {
            let minus_one = self.field.from_i64(-1);
            for (c, _) in &mut t.terms {
                *c = &minus_one * &*c;
            }
        }
        Ok(t)
    }

    fn term(&mut self, depth: usize) -> Result<LieExpr, ParseError> {
        self.skip_ws();
        let starts_scalar = match self.peek() {
            Some(b) if b.is_ascii_digit() => true,
            Some(b'-') => matches!(self.bytes.get(self.pos + 1), Some(b) if b.is_ascii_digit()),
            _ => false,
        };
        let coef = if starts_scalar {
            let s = self.scalar_literal()?;
            self.skip_ws();
            if !self.eat(b'*') {
                return Err(self.err("expected '*' after scalar coefficient"));
            }
            Some(s)
        } else {
            None
        };
        let atom = self.atom(depth)?;
        match coef {
            None => Ok(atom),
            Some(s) => {
                let mut out = LieExpr::zero();
                for (c, t) in atom.terms {
                    out.terms.push((&s * &c, t));
                }
                Ok(out)
            }
        }
    }

    fn scalar_literal(&mut self) -> Result<Scalar, ParseError> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.peek() == Some(b'/') {
            self.pos += 1;
            while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii slice");
        self.field.parse_scalar(text).map_err(|e| ParseError {
            pos: start,
            msg: e.to_string(),
        })
    }

    fn atom(&mut self, depth: usize) -> Result<LieExpr, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'a') => {
                self.pos += 1;
                let v = self.generator_index()?;
                Ok(LieExpr::single(self.field.one(), LieTerm::gen(v)))
            }
            Some(b'[') => {
                self.pos += 1;
                let mut items = vec![self.expr(depth + 1)?];
                self.skip_ws();
                if !self.eat(b',') {
                    return Err(self.err("expected ',' (a bracket needs at least two entries)"));
                }
                loop {
                    items.push(self.expr(depth + 1)?);
                    self.skip_ws();
                    if !self.eat(b',') {
                        break;
                    }
                }
                if !self.eat(b']') {
                    return Err(self.err("expected ']'"));
                }
                let mut iter = items.into_iter();
                let mut acc = iter.next().expect("at least two entries");
                for next in iter {
                    acc = self.bracket_exprs(acc, next);
                }
                Ok(acc)
            }
            Some(_) => Err(self.err("expected a generator 'a<i>' or '['")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn generator_index(&mut self) -> Result<Gen, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a generator index after 'a'"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii slice");
        let v: u32 = digits.parse().map_err(|_| ParseError {
            pos: start,
            msg: "generator index too large".into(),
        })?;
        if v < 1 || v > u32::from(self.n) {
            return Err(ParseError {
                pos: start,
                msg: format!("generator a{v} is out of range for {} generators", self.n),
            });
        }
        Ok(v as Gen)
    }

    fn bracket_exprs(&self, a: LieExpr, b: LieExpr) -> LieExpr {
        let mut out = LieExpr::zero();
        for (ca, ta) in &a.terms {
            for (cb, tb) in &b.terms {
                out.terms
                    .push((ca * cb, LieTerm::bracket(ta.clone(), tb.clone())));
            }
        }
        out
    }
}
