//! Expression parser for map input.
//!
//! Grammar, tightest first: `^` (nonnegative integer exponents), unary
//! minus, `*` `/`, binary `+` `-`; parentheses; variables `x` and `y`;
//! integer literals (rationals are spelled with `/`). A map literal is a
//! pair `(expr1, expr2)`. Expressions are folded into exact rational
//! functions with gcd reduction, so printing a parsed map and reparsing
//! it is the identity on canonical prints.

use std::fmt;

use num_bigint::BigInt;

use biratio_core::exact::bipoly::{BiPoly, Var};
use biratio_core::exact::gcd::poly_gcd;
use biratio_core::exact::rational::Rational;
use biratio_core::SurfaceMap;

pub const MAX_INPUT_BYTES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, message: message.into() })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    return err(i, "decimal literals are not supported; use p/q rationals");
                }
                let lit: BigInt = text[start..i].parse().expect("digit run");
                out.push((start, Tok::Int(lit)));
            }
            'x' => {
                out.push((i, Tok::X));
                i += 1;
            }
            'y' => {
                out.push((i, Tok::Y));
                i += 1;
            }
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            ',' => {
                out.push((i, Tok::Comma));
                i += 1;
            }
            other => return err(i, format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

/// An exact rational function in reduced form.
#[derive(Debug, Clone)]
struct Frac {
    num: BiPoly<Rational>,
    den: BiPoly<Rational>,
}

impl Frac {
    fn constant(c: BigInt) -> Self {
        Frac { num: BiPoly::constant(Rational::from_integer(c)), den: BiPoly::one() }
    }

    fn var(v: Var) -> Self {
        Frac { num: BiPoly::var(v), den: BiPoly::one() }
    }

    fn reduce(num: BiPoly<Rational>, den: BiPoly<Rational>) -> Self {
        let g = poly_gcd(&num, &den);
        if g.is_constant() {
            Frac { num, den }
        } else {
            Frac {
                num: num.exact_div(&g).expect("gcd divides"),
                den: den.exact_div(&g).expect("gcd divides"),
            }
        }
    }

    fn add(&self, other: &Frac) -> Frac {
        Frac::reduce(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    fn sub(&self, other: &Frac) -> Frac {
        Frac::reduce(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    fn mul(&self, other: &Frac) -> Frac {
        Frac::reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    fn div(&self, other: &Frac, pos: usize) -> Result<Frac, ParseError> {
        if other.num.is_zero() {
            return err(pos, "division by the zero function");
        }
        Ok(Frac::reduce(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    fn neg(&self) -> Frac {
        Frac { num: self.num.neg(), den: self.den.clone() }
    }

    fn pow(&self, e: u32) -> Frac {
        let mut num = BiPoly::one();
        let mut den = BiPoly::one();
        for _ in 0..e {
            num = num.mul(&self.num);
            den = den.mul(&self.den);
        }
        Frac { num, den }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == tok => Ok(()),
            _ => err(pos, format!("expected {what}")),
        }
    }

    fn expr(&mut self) -> Result<Frac, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Frac, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    let pos = self.pos();
                    self.bump();
                    acc = acc.div(&self.factor()?, pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Frac, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Frac, ParseError> {
        let mut base = self.primary()?;
        while matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Tok::Int(e)) => {
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| ParseError { pos, message: "exponent too large".into() })?;
                    base = base.pow(e);
                }
                _ => return err(pos, "expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Frac, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Frac::constant(n)),
            Some(Tok::X) => Ok(Frac::var(Var::X)),
            Some(Tok::Y) => Ok(Frac::var(Var::Y)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => err(pos, "expected a number, variable, or `(`"),
        }
    }
}

/// Parses a map literal `(expr1, expr2)` into a surface map with cleared
/// canonical coordinate pairs.
pub fn parse_map(text: &str) -> Result<SurfaceMap, ParseError> {
    if text.len() > MAX_INPUT_BYTES {
        return err(MAX_INPUT_BYTES, "input exceeds the 1 MB limit");
    }
    let toks = lex(text)?;
    let mut parser = Parser { toks, at: 0, end: text.len() };
    parser.expect(Tok::LParen, "`(` opening the map literal")?;
    let first = parser.expr()?;
    parser.expect(Tok::Comma, "`,` between the two coordinates")?;
    let second = parser.expr()?;
    parser.expect(Tok::RParen, "`)` closing the map literal")?;
    if parser.at != parser.toks.len() {
        return err(parser.pos(), "trailing input after the map literal");
    }
    let zero_den = |pos: usize| ParseError { pos, message: "coordinate denominator is zero".into() };
    let coord_x = biratio_core::exact::bihom::BiHomPair::new(first.num, first.den)
        .map_err(|_| zero_den(0))?;
    let coord_y = biratio_core::exact::bihom::BiHomPair::new(second.num, second.den)
        .map_err(|_| zero_den(0))?;
    Ok(SurfaceMap::new(coord_x, coord_y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use biratio_core::maps::BidegreeMatrix;

    #[test]
    fn swap_literal() {
        let f = parse_map("(y, x)").unwrap();
        assert_eq!(f, SurfaceMap::swap().without_inverse());
        assert_eq!(BidegreeMatrix::from_map(&f), BidegreeMatrix::new(0, 1, 1, 0));
    }

    #[test]
    fn twist_expression_matches_builder() {
        let f = parse_map("((x^2+x+1)*y/(x^2+1), x)").unwrap();
        let g = biratio_core::family::builders::build_twist(2, 1).unwrap();
        assert_eq!(f, g.without_inverse());
    }

    #[test]
    fn division_by_zero_function() {
        let e = parse_map("(x/0, y)").unwrap_err();
        assert!(e.message.contains("zero"));
        let e = parse_map("(x/(y - y), y)").unwrap_err();
        assert!(e.message.contains("zero"));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_map("(x, ").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_map("(x + * y, x)").unwrap_err();
        assert_eq!(e.pos, 5);
        let e = parse_map("(x ^ -2, y)").unwrap_err();
        assert!(e.message.contains("exponent"));
        assert!(parse_map("(1.5, y)").is_err());
    }

    #[test]
    fn precedence_and_unary_minus() {
        // -x^2 parses as -(x^2)
        let f = parse_map("(-x^2, y)").unwrap();
        let g = parse_map("(0 - x^2, y)").unwrap();
        assert_eq!(f, g);
        // rational arithmetic folds exactly
        let f = parse_map("((2/3)*x + x/3, y)").unwrap();
        let g = parse_map("(x, y)").unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn print_parse_round_trip() {
        for (n, d) in [(2u64, 1u64), (3, 1), (2, 2), (4, 3)] {
            let g = biratio_core::family::builders::build_twist(n, d).unwrap();
            for m in [g.clone(), g.inverse().unwrap().clone()] {
                let printed = m.to_expression_string();
                let reparsed = parse_map(&printed).unwrap();
                assert_eq!(reparsed, m.without_inverse(), "round trip failed for {printed}");
            }
        }
        let r = biratio_core::family::builders::build_rotation(
            &biratio_core::exact::rational::rat(1, 3),
            &biratio_core::exact::rational::rat(-2, 5),
        );
        let reparsed = parse_map(&r.to_expression_string()).unwrap();
        assert_eq!(reparsed, r.without_inverse());
    }
}
