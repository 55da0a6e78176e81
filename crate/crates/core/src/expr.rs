//! Parser for value expressions over Q(ζ₈).
//!
//! Grammar (juxtaposition multiplies, so `2a^3` and `3i` are accepted):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/')? unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' ['-'] INTEGER)?
//! primary := NUMBER | 'i' | 'a' | 'alpha' | 'sqrt2' | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::Cyc8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("value outside Q(ζ8): {0}")]
    OutsideRing(String),
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, ExprError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Num(parse_decimal(&lit)?));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(ch) {
            out.push(Tok::Op(ch));
            i += 1;
        } else if ch == '−' {
            out.push(Tok::Op('-'));
            i += 1;
        } else {
            return Err(ExprError::Syntax(format!("unexpected character {ch:?}")));
        }
    }
    Ok(out)
}

fn parse_decimal(lit: &str) -> Result<BigRational, ExprError> {
    let bad = || ExprError::Syntax(format!("bad number {lit:?}"));
    let (int, frac) = match lit.split_once('.') {
        Some((a, b)) => (a, b),
        None => (lit, ""),
    };
    if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    Ok(BigRational::new(numer, denom))
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Cyc8, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Cyc8, ExprError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| ExprError::DivisionByZero)?;
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))) {
                acc = acc * self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Cyc8, ExprError> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Cyc8, ExprError> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        let e = match self.next() {
            Some(Tok::Num(n)) if n.is_integer() => n.to_integer(),
            other => return Err(ExprError::Syntax(format!("expected integer exponent, got {other:?}"))),
        };
        if paren && !self.eat(')') {
            return Err(ExprError::Syntax("unclosed exponent".into()));
        }
        let e: u32 = e
            .try_into()
            .map_err(|_| ExprError::Syntax("exponent too large".into()))?;
        let base = if neg {
            base.inv().map_err(|_| ExprError::DivisionByZero)?
        } else {
            base
        };
        Ok(base.pow(e))
    }

    fn primary(&mut self) -> Result<Cyc8, ExprError> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(Cyc8::from_scalar(n)),
            Some(Tok::Op('(')) => {
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(ExprError::Syntax("missing ')'".into()));
                }
                Ok(v)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "i" | "I" => Ok(Cyc8::i()),
                "a" | "alpha" | "α" => Ok(Cyc8::alpha()),
                "sqrt2" => Ok(Cyc8::sqrt2()),
                "sqrt" => {
                    if !self.eat('(') {
                        return Err(ExprError::Syntax("sqrt needs '('".into()));
                    }
                    let v = self.expr()?;
                    if !self.eat(')') {
                        return Err(ExprError::Syntax("missing ')'".into()));
                    }
                    v.sqrt()
                        .ok_or_else(|| ExprError::OutsideRing(format!("sqrt({v})")))
                }
                other => Err(ExprError::OutsideRing(format!("unknown constant {other:?}"))),
            },
            other => Err(ExprError::Syntax(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a value expression into an exact element of Q(ζ₈).
pub fn parse_value(s: &str) -> Result<Cyc8, ExprError> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(ExprError::Syntax("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ExprError::Syntax(format!("trailing input in {s:?}")));
    }
    Ok(v)
}

/// Parses `[v0, v1, ..., vn]`, the symmetric-signature shorthand.
pub fn parse_symmetric(s: &str) -> Result<Vec<Cyc8>, ExprError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| ExprError::Syntax(format!("expected [v0,...,vn], got {s:?}")))?;
    inner.split(',').map(parse_value).collect()
}
