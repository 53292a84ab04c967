//! Canonical text form of series: graded-lex order, explicit integer
//! coefficients, `*` between factors and `^` for exponents, e.g.
//! `x + y - 2*m1*x*y`.

use std::fmt::Write;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Sym};
use super::ring::{Ring, Terms};
use super::series::{accumulate, Series};
use crate::error::{Error, Result};

pub fn render_terms(terms: &Terms) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if m.is_one() {
            write!(out, "{a}").unwrap();
        } else if a.is_one() {
            write!(out, "{m}").unwrap();
        } else {
            write!(out, "{a}*{m}").unwrap();
        }
    }
    out
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: 1, column: self.pos + 1, message: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn name(&mut self) -> Option<Sym> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
            while self.pos < self.src.len() {
                let b = self.src[self.pos];
                if b.is_ascii_alphanumeric() || b == b'_' || b == b'[' || b == b']' {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            Some(Sym::from(std::str::from_utf8(&self.src[start..self.pos]).ok()?))
        } else {
            None
        }
    }

    fn signed_exponent(&mut self) -> Result<i32> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = self.integer().ok_or_else(|| self.err("expected exponent"))?;
        let e: i32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
        Ok(if neg { -e } else { e })
    }

    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        let mut coeff = BigInt::one();
        let mut pairs: Vec<(Sym, i32)> = Vec::new();
        let mut first = true;
        loop {
            if !first {
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            first = false;
            if let Some(n) = self.integer() {
                coeff *= n;
            } else if let Some(v) = self.name() {
                let e = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.signed_exponent()?
                } else {
                    1
                };
                pairs.push((v, e));
            } else {
                return Err(self.err("expected integer or variable"));
            }
        }
        Ok((Monomial::from_pairs(pairs), coeff))
    }
}

/// Parses the canonical text form (and any reordering of it) into `ring`.
pub fn parse_series(text: &str, ring: &Arc<Ring>) -> Result<Series> {
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let mut terms = Terms::new();
    let mut sign = match cur.peek() {
        Some(b'-') => {
            cur.pos += 1;
            -1
        }
        Some(b'+') => {
            cur.pos += 1;
            1
        }
        None => return Err(cur.err("empty series")),
        _ => 1,
    };
    loop {
        let (m, c) = cur.term()?;
        accumulate(&mut terms, m, c * sign);
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                sign = 1;
            }
            Some(b'-') => {
                cur.pos += 1;
                sign = -1;
            }
            Some(_) => return Err(cur.err("expected `+`, `-` or end of input")),
        }
    }
    terms.retain(|_, c| !c.is_zero());
    Series::from_terms(ring, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::GradedGenerator;

    fn ring() -> Arc<Ring> {
        let r = Ring::new(
            "t",
            vec![
                GradedGenerator::polynomial("m1", 2),
                GradedGenerator::series("x", -2),
                GradedGenerator::series("u[1]", -2),
            ],
            6,
            4,
        )
        .unwrap();
        Arc::new(r.localize("u[1]").unwrap())
    }

    #[test]
    fn render_and_parse() {
        let r = ring();
        let s = parse_series("x - 2*m1*x*u[1] + 3*u[1]^-1*x^2 - 0", &r).unwrap();
        let text = s.to_string();
        let back = parse_series(&text, &r).unwrap();
        assert_eq!(s, back);
        assert_eq!(parse_series("0", &r).unwrap().to_string(), "0");
        assert_eq!(parse_series("-x + x", &r).unwrap().to_string(), "0");
    }

    #[test]
    fn parse_errors_carry_position() {
        let r = ring();
        match parse_series("x + * y", &r) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_series("q", &r), Err(Error::UnknownGenerator(..))));
    }
}
