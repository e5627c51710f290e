//! Text grammar for polynomials:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*'|'/') power)*
//! power  := atom ['^' integer]
//! atom   := integer | variable | '(' expr ')' | '-' atom
//! ```
//!
//! Multiplication must be explicit; `2b` or `b c` is rejected. Division is
//! only allowed by nonzero constants.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::polynomial::{Polynomial, Ring};
use super::{PolyError, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, PolyError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        let start = i;
        match ch {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Token::Plus)),
            '-' | '\u{2212}' => out.push((start, Token::Minus)),
            '*' => out.push((start, Token::Star)),
            '/' => out.push((start, Token::Slash)),
            '^' => out.push((start, Token::Caret)),
            '(' => out.push((start, Token::LParen)),
            ')' => out.push((start, Token::RParen)),
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                out.push((start, Token::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(src[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(PolyError::Parse {
                    pos: start,
                    msg: format!("unexpected character {ch:?}"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = match self.peek() {
            Some(Token::Plus) => {
                self.pos += 1;
                self.term()?
            }
            Some(Token::Minus) => {
                self.pos += 1;
                -self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let d = self.power()?;
                    match d.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        _ => return self.err("division only by nonzero constants"),
                    }
                }
                Some(Token::Int(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => {
                    return self.err("implicit multiplication is not allowed; use '*'");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| PolyError::Parse { pos: self.offset(), msg: "exponent too large".into() })?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.ring, Rational::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Polynomial::var_named(self.ring, &name)
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses polynomial text in the given ring.
pub fn parse(ring: &Arc<Ring>, src: &str) -> Result<Polynomial, PolyError> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(PolyError::Parse { pos: 0, msg: "empty input".into() });
    }
    let mut parser = Parser { ring, tokens, pos: 0, len: src.len() };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return parser.err("trailing input");
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_and_rational() {
        let r = Ring::letters(6);
        let p = parse(&r, "-(b - 1/2)^2 * 4").unwrap();
        assert_eq!(p, parse(&r, "-4*b^2 + 4*b - 1").unwrap());
    }

    #[test]
    fn rejects_juxtaposition_and_unknowns() {
        let r = Ring::letters(3);
        assert!(parse(&r, "2b").is_err());
        assert!(parse(&r, "a b").is_err());
        assert!(parse(&r, "a*(b)c").is_err());
        assert!(matches!(parse(&r, "z"), Err(PolyError::UnknownVariable(_))));
        assert!(parse(&r, "a/b").is_err());
        assert!(parse(&r, "").is_err());
        assert!(parse(&r, "(a").is_err());
    }
}
