//! Text grammar for exact scalars: integers, fractions `p/q`, `i`, `z<n>` for
//! the primitive n-th root of unity, `^` powers, `*`, `+`, `-`, parentheses.

use super::{ArithOp, CycNum, Rat};
use num_bigint::BigInt;
use num_traits::One;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "scalar syntax error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub fn parse_scalar(text: &str) -> Result<CycNum, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { position: self.pos, message: msg.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<CycNum, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CycNum, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let f = self.factor()?;
                    acc = super::arith(&acc, &f, ArithOp::Div).map_err(|_| ParseError {
                        position: at,
                        message: "division by zero".into(),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<CycNum, ParseError> {
        self.skip_ws();
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let mut neg = false;
            if self.peek() == Some(b'-') {
                neg = true;
                self.pos += 1;
            }
            let e = self.integer()? * if neg { -1 } else { 1 };
            return base
                .pow(e)
                .map_err(|_| self.err("zero cannot be raised to a negative power"));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CycNum, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(CycNum::i())
            }
            Some(b'z') => {
                self.pos += 1;
                let n = self.integer()?;
                if n < 1 {
                    return Err(self.err("root-of-unity index must be positive"));
                }
                Ok(CycNum::root_of_unity(n as u32, 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(CycNum::from_rat(Rat::from_integer(BigInt::from(n))))
            }
            _ => Err(self.err("expected a scalar atom")),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        i64::from_str(s).map_err(|_| self.err("integer literal out of range"))
    }
}

/// Canonical textual form, parseable back to the same value.
pub fn render_scalar(v: &CycNum) -> String {
    if let Some(q) = v.as_rational() {
        return render_rat(q);
    }
    let n = v.conductor();
    let mut out = String::new();
    for (j, c) in v.coeffs().iter().enumerate() {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        let mag = if c < &Rat::from_integer(BigInt::from(0)) { -c.clone() } else { c.clone() };
        let neg = c < &Rat::from_integer(BigInt::from(0));
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let base = if n == 4 { "i".to_string() } else { format!("z{}", n) };
        if j == 0 {
            out.push_str(&render_rat(&mag));
        } else {
            if !mag.is_one() {
                out.push_str(&render_rat(&mag));
                out.push('*');
            }
            out.push_str(&base);
            if j > 1 {
                out.push_str(&format!("^{}", j));
            }
        }
    }
    out
}

fn render_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
