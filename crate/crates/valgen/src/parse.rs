//! Text grammar for polynomials and series.
//!
//! Polynomials use `+ - * / ^`, parentheses, integers and the variables `x`
//! and `y`; division is only by nonzero constants. Series are sums of
//! `c*t^(e)` terms with an optional `O(t^(p))`, or one of the generators
//! `squares(N)` and `squares_below(B)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use valgen_core::{BivarPoly, Coeff, FieldSpec, GenSeries, Poly, SeriesSource, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

type Result<T> = std::result::Result<T, ParseError>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(input[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(input[start..i].to_string())));
                continue;
            }
            other => return Err(ParseError { offset: i, message: format!("unexpected character {:?}", other) }),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    field: FieldSpec,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, field: FieldSpec) -> Result<Self> {
        Ok(Parser { toks: lex(src)?, pos: 0, end: src.len(), field, src })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(ParseError { offset: self.offset(), message: message.into() })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            self.error(format!("expected {}", what))
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            self.error(format!("trailing input {:?}", &self.src[self.offset()..]))
        }
    }

    fn coeff(&self, c: Coeff) -> Result<Coeff> {
        self.field.reduce(&c).map_err(|e| ParseError { offset: self.offset(), message: e.to_string() })
    }

    fn expr(&mut self) -> Result<BivarPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<BivarPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = &acc * &self.unary()?;
            } else if self.eat(&Tok::Slash) {
                let at = self.offset();
                let d = self.unary()?;
                let c = match d.to_univariate() {
                    Some(p) if p.is_constant() && !p.is_zero() => p.coeff(0),
                    _ => return Err(ParseError { offset: at, message: "division only by nonzero constants".into() }),
                };
                let inv = self.field.inv(&c).map_err(|e| ParseError { offset: at, message: e.to_string() })?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<BivarPoly> {
        if self.eat(&Tok::Minus) {
            let inner = self.unary()?;
            return Ok(&BivarPoly::zero(self.field) - &inner);
        }
        self.power()
    }

    fn power(&mut self) -> Result<BivarPoly> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| ParseError { offset: self.offset(), message: "exponent too large".into() })?;
                    return Ok(base.pow(e));
                }
                _ => return self.error("expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BivarPoly> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let c = self.coeff(Coeff::from_integer(n))?;
                Ok(BivarPoly::monomial(self.field, c, 0, 0))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "x" => Ok(BivarPoly::x(self.field)),
                    "y" => Ok(BivarPoly::y(self.field)),
                    _ => {
                        self.pos -= 1;
                        self.error(format!("unknown variable {:?}", name))
                    }
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(e)
            }
            _ => self.error("expected a number, variable or '('"),
        }
    }

    /// `n` or `n/d`, optionally negative.
    fn rational(&mut self) -> Result<Coeff> {
        let negative = self.eat(&Tok::Minus);
        let num = match self.peek().cloned() {
            Some(Tok::Int(n)) => n,
            _ => return self.error("expected a number"),
        };
        self.pos += 1;
        let mut r = Coeff::from_integer(num);
        if self.eat(&Tok::Slash) {
            match self.peek().cloned() {
                Some(Tok::Int(d)) if !d.is_zero() => {
                    self.pos += 1;
                    r /= Coeff::from_integer(d);
                }
                _ => return self.error("expected a nonzero denominator"),
            }
        }
        Ok(if negative { -r } else { r })
    }

    /// `t`, `t^n` or `t^(e)`.
    fn t_power(&mut self) -> Result<Coeff> {
        match self.peek() {
            Some(Tok::Ident(n)) if n == "t" => self.pos += 1,
            _ => return self.error("expected 't'"),
        }
        if !self.eat(&Tok::Caret) {
            return Ok(Coeff::one());
        }
        if self.eat(&Tok::LParen) {
            let e = self.rational()?;
            self.expect(&Tok::RParen, "')'")?;
            Ok(e)
        } else {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    Ok(Coeff::from_integer(n))
                }
                _ => self.error("expected an exponent"),
            }
        }
    }

    fn series(&mut self) -> Result<SeriesSource> {
        if let Some(Tok::Ident(name)) = self.peek().cloned() {
            if name == "squares" || name == "squares_below" {
                self.pos += 1;
                self.expect(&Tok::LParen, "'('")?;
                let n = match self.peek().cloned() {
                    Some(Tok::Int(n)) => n,
                    _ => return self.error("expected a count"),
                };
                self.pos += 1;
                self.expect(&Tok::RParen, "')'")?;
                let n: u64 = n.try_into().map_err(|_| ParseError { offset: self.offset(), message: "bound too large".into() })?;
                return Ok(if name == "squares" {
                    SeriesSource::squares(self.field, n)
                } else {
                    SeriesSource::Squares { field: self.field, bound: n }
                });
            }
        }
        let mut terms = Vec::new();
        let mut precision = Value::Infinity;
        let mut first = true;
        loop {
            let sign = if self.eat(&Tok::Minus) {
                -Coeff::one()
            } else if first || self.eat(&Tok::Plus) {
                Coeff::one()
            } else {
                break;
            };
            if !first && self.peek().is_none() {
                return self.error("expected a term");
            }
            first = false;
            if matches!(self.peek(), Some(Tok::Ident(n)) if n == "O") {
                self.pos += 1;
                self.expect(&Tok::LParen, "'('")?;
                precision = Value::Finite(self.t_power()?);
                self.expect(&Tok::RParen, "')'")?;
                break;
            }
            let (c, e) = match self.peek() {
                Some(Tok::Ident(n)) if n == "t" => (Coeff::one(), self.t_power()?),
                Some(Tok::Int(_)) => {
                    let c = self.rational()?;
                    if self.eat(&Tok::Star) {
                        (c, self.t_power()?)
                    } else {
                        (c, Coeff::zero())
                    }
                }
                _ => return self.error("expected a series term"),
            };
            terms.push((e, self.coeff(c * sign)?));
        }
        let s = GenSeries::new(self.field, terms, precision)
            .map_err(|e| ParseError { offset: self.offset(), message: e.to_string() })?;
        Ok(SeriesSource::Fixed(s))
    }
}

/// Parses a polynomial in `x` and `y` over `field`.
pub fn parse_bivariate(src: &str, field: FieldSpec) -> Result<BivarPoly> {
    let mut p = Parser::new(src, field)?;
    let f = p.expr()?;
    p.finish()?;
    Ok(f)
}

/// Parses a polynomial in `x` only.
pub fn parse_poly(src: &str, field: FieldSpec) -> Result<Poly> {
    parse_bivariate(src, field)?
        .to_univariate()
        .ok_or_else(|| ParseError { offset: 0, message: format!("{:?} involves y", src) })
}

/// Parses a series literal or generator.
pub fn parse_series(src: &str, field: FieldSpec) -> Result<SeriesSource> {
    let mut p = Parser::new(src, field)?;
    let s = p.series()?;
    p.finish()?;
    Ok(s)
}

/// A value: `inf`, `-inf`, an integer or a fraction.
pub fn parse_value(src: &str) -> Result<Value> {
    src.trim()
        .parse()
        .map_err(|_| ParseError { offset: 0, message: format!("{:?} is not a value", src) })
}

/// A rational number such as `3`, `-1/2`.
pub fn parse_rational(src: &str) -> Result<Coeff> {
    let mut p = Parser::new(src, FieldSpec::RATIONALS)?;
    let r = p.rational()?;
    p.finish()?;
    Ok(r)
}

/// A field: `Q` or `Fp:p`.
pub fn parse_field(src: &str) -> Result<FieldSpec> {
    src.trim().parse().map_err(|e: valgen_core::Error| ParseError { offset: 0, message: e.to_string() })
}
