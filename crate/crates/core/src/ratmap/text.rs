//! Literal syntax for rational maps: `(c_k z^k + ... + c_0) / (d_j z^j + ... + d_0)`.
//!
//! The parser accepts any arithmetic expression in `z` and `i` built from
//! integers, `+ - * / ^`, juxtaposition and parentheses; `*`, `/` and
//! juxtaposition share one left-associative level, so `3/4i` is `(3/4)·i`.
//! The printer emits the normalized form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::map::{RatMapError, RationalMap};
use super::poly::Poly;
use crate::scalar::{format_scalar, ExactScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapSyntaxError {
    #[error("unexpected {found} at column {column}")]
    Unexpected { found: String, column: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("exponent {0} is not a small non-negative integer")]
    Exponent(String),
    #[error("the scalar field has no imaginary unit")]
    NoImaginaryUnit,
    #[error(transparent)]
    Map(#[from] RatMapError),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Z,
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<(Token, usize)>, MapSyntaxError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let ch = chars[k];
        let column = k + 1;
        let token = match ch {
            c if c.is_whitespace() => {
                k += 1;
                continue;
            }
            c if c.is_ascii_digit() => {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let digits: String = chars[start..k].iter().collect();
                out.push((Token::Int(digits.parse().expect("ascii digits")), column));
                continue;
            }
            'z' => Token::Z,
            'i' => Token::I,
            '+' => Token::Plus,
            '-' | '−' => Token::Minus,
            '*' | '·' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::Open,
            ')' => Token::Close,
            other => {
                return Err(MapSyntaxError::Unexpected {
                    found: format!("'{other}'"),
                    column,
                })
            }
        };
        out.push((token, column));
        k += 1;
    }
    Ok(out)
}

/// An unreduced fraction of polynomials, the working value of the parser.
#[derive(Clone)]
struct Frac<K> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: ExactScalar> Frac<K> {
    fn poly(p: Poly<K>) -> Self {
        Frac {
            num: p,
            den: Poly::one(),
        }
    }

    fn add(&self, o: &Self, negate: bool) -> Self {
        let right = &o.num * &self.den;
        let left = &self.num * &o.den;
        Frac {
            num: if negate {
                &left - &right
            } else {
                &left + &right
            },
            den: &self.den * &o.den,
        }
    }

    fn mul(&self, o: &Self) -> Self {
        Frac {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
    }

    fn div(&self, o: &Self) -> Self {
        Frac {
            num: &self.num * &o.den,
            den: &self.den * &o.num,
        }
    }

    fn pow(&self, n: usize) -> Self {
        Frac {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }

    fn neg(&self) -> Self {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

struct Parser<'a, K> {
    tokens: &'a [(Token, usize)],
    pos: usize,
    _field: std::marker::PhantomData<K>,
}

impl<K: ExactScalar> Parser<'_, K> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn unexpected(&self) -> MapSyntaxError {
        match self.tokens.get(self.pos) {
            None => MapSyntaxError::UnexpectedEnd,
            Some((t, column)) => MapSyntaxError::Unexpected {
                found: format!("{t:?}"),
                column: *column,
            },
        }
    }

    fn expr(&mut self) -> Result<Frac<K>, MapSyntaxError> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?, false);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?, true);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Frac<K>, MapSyntaxError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    acc = acc.div(&self.power()?);
                }
                Some(Token::Int(_) | Token::Z | Token::I | Token::Open) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Frac<K>, MapSyntaxError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some(Token::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                let e = usize::try_from(&n)
                    .ok()
                    .filter(|&e| e <= 4096)
                    .ok_or_else(|| MapSyntaxError::Exponent(n.to_string()))?;
                Ok(base.pow(e))
            }
            _ => Err(self.unexpected()),
        }
    }

    fn atom(&mut self) -> Result<Frac<K>, MapSyntaxError> {
        let value = match self.peek() {
            Some(Token::Int(n)) => {
                let q = BigRational::from_integer(n.clone());
                Frac::poly(Poly::constant(
                    K::from_parts(q, BigRational::zero()).expect("real scalars embed"),
                ))
            }
            Some(Token::Z) => Frac::poly(Poly::z()),
            Some(Token::I) => Frac::poly(Poly::constant(
                K::from_parts(BigRational::zero(), BigRational::one())
                    .ok_or(MapSyntaxError::NoImaginaryUnit)?,
            )),
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.unexpected());
                }
                inner
            }
            _ => return Err(self.unexpected()),
        };
        self.pos += 1;
        Ok(value)
    }
}

pub fn parse_map<K: ExactScalar>(s: &str) -> Result<RationalMap<K>, MapSyntaxError> {
    let tokens = tokenize(s)?;
    let mut parser = Parser::<K> {
        tokens: &tokens,
        pos: 0,
        _field: std::marker::PhantomData,
    };
    let value = parser.expr()?;
    if parser.pos != tokens.len() {
        return Err(parser.unexpected());
    }
    Ok(RationalMap::new(value.num, value.den)?)
}

/// `3z^2 - 1/2 z + (1+i)`, highest degree first; the zero polynomial is `0`.
pub fn format_poly<K: ExactScalar>(p: &Poly<K>) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (re, im) = c.parts();
        // pull a leading minus out of real and pure imaginary coefficients
        let negative = (im.is_zero() && re.is_negative()) || (re.is_zero() && im.is_negative());
        let shown = if negative { -c.clone() } else { c.clone() };
        let text = format_scalar(&shown);
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        let monomial = match k {
            0 => String::new(),
            1 => "z".to_string(),
            _ => format!("z^{k}"),
        };
        if k == 0 {
            out.push_str(&text);
        } else if shown.is_one() {
            out.push_str(&monomial);
        } else if text.chars().all(|ch| ch.is_ascii_digit()) {
            out.push_str(&text);
            out.push_str(&monomial);
        } else {
            out.push_str(&text);
            out.push(' ');
            out.push_str(&monomial);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn format_map<K: ExactScalar>(r: &RationalMap<K>) -> String {
    format!("({}) / ({})", format_poly(r.num()), format_poly(r.den()))
}

impl<K: ExactScalar> fmt::Display for RationalMap<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_map(self))
    }
}

impl<K: ExactScalar> FromStr for RationalMap<K> {
    type Err = MapSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_map(s)
    }
}

impl<K: ExactScalar> fmt::Display for super::map::Mobius<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_map(&self.to_map()))
    }
}
