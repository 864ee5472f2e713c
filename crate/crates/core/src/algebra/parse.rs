//! Expression parser for potentials.
//!
//! Accepts `+`, `-`, `*`, `^` with non-negative integer exponents, integer
//! and fraction literals `a/b`, and variable names `[a-zA-Z][a-zA-Z0-9_]*`.
//! `x` is the spatial variable; `lambda` and the ansatz names `p0`, `p1`, …
//! are reserved and rejected inside a potential.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use super::multipoly::MultiPoly;
use super::rational::Rational;
use super::registry::{VarRegistry, LAMBDA_NAME, SPATIAL_NAME};
use super::xpoly::XPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Token)>> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        while lx.pos < lx.src.len() {
            let start = lx.pos;
            let b = lx.src[lx.pos];
            match b {
                b' ' | b'\t' => {
                    lx.pos += 1;
                    continue;
                }
                b'+' => out.push((start, Token::Plus)),
                b'-' => out.push((start, Token::Minus)),
                b'*' => out.push((start, Token::Star)),
                b'^' => out.push((start, Token::Caret)),
                b'/' => out.push((start, Token::Slash)),
                b'(' => out.push((start, Token::LParen)),
                b')' => out.push((start, Token::RParen)),
                b'0'..=b'9' => {
                    let mut end = lx.pos;
                    while end < lx.src.len() && lx.src[end].is_ascii_digit() {
                        end += 1;
                    }
                    let text = core::str::from_utf8(&lx.src[lx.pos..end]).unwrap();
                    let n = text.parse::<BigInt>().map_err(|_| Error::Parse {
                        pos: start,
                        msg: "invalid integer literal".to_string(),
                    })?;
                    out.push((start, Token::Int(n)));
                    lx.pos = end;
                    continue;
                }
                b'a'..=b'z' | b'A'..=b'Z' => {
                    let mut end = lx.pos;
                    while end < lx.src.len()
                        && (lx.src[end].is_ascii_alphanumeric() || lx.src[end] == b'_')
                    {
                        end += 1;
                    }
                    let text = core::str::from_utf8(&lx.src[lx.pos..end]).unwrap();
                    out.push((start, Token::Ident(text.to_string())));
                    lx.pos = end;
                    continue;
                }
                _ => {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("unexpected character `{}`", b as char),
                    })
                }
            }
            lx.pos += 1;
        }
        Ok(out)
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    registry: Arc<VarRegistry>,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|(p, _)| *p)
            .unwrap_or(usize::MAX)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(_, t)| t.clone());
        self.cursor += 1;
        t
    }

    fn expect(&mut self, tok: Token, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.cursor += 1;
            Ok(())
        } else {
            Err(Error::Parse {
                pos: self.pos(),
                msg: format!("expected {what}"),
            })
        }
    }

    fn expr(&mut self) -> Result<XPoly> {
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            self.cursor += 1;
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.cursor += 1;
                    acc = acc.checked_add(&self.term()?)?;
                }
                Some(Token::Minus) => {
                    self.cursor += 1;
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<XPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.cursor += 1;
            acc = acc.checked_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<XPoly> {
        let base = self.primary()?;
        if self.peek() == Some(&Token::Caret) {
            self.cursor += 1;
            let pos = self.pos();
            match self.bump() {
                Some(Token::Int(n)) => {
                    let e = u32::try_from(n).map_err(|_| Error::Parse {
                        pos,
                        msg: "exponent out of range".to_string(),
                    })?;
                    let mut acc = XPoly::constant(MultiPoly::one(self.registry.clone()));
                    for _ in 0..e {
                        acc = acc.checked_mul(&base)?;
                    }
                    return Ok(acc);
                }
                _ => {
                    return Err(Error::Parse {
                        pos,
                        msg: "expected a non-negative integer exponent".to_string(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<XPoly> {
        let pos = self.pos();
        match self.bump() {
            Some(Token::Int(n)) => {
                // optional fraction literal a/b
                let mut value = Rational::from(n);
                if self.peek() == Some(&Token::Slash) {
                    self.cursor += 1;
                    let dpos = self.pos();
                    match self.bump() {
                        Some(Token::Int(d)) if !num_traits::Zero::is_zero(&d) => {
                            value /= Rational::from(d);
                        }
                        Some(Token::Int(_)) => {
                            return Err(Error::Parse {
                                pos: dpos,
                                msg: "zero denominator".to_string(),
                            })
                        }
                        _ => {
                            return Err(Error::Parse {
                                pos: dpos,
                                msg: "`/` is only valid between integer literals".to_string(),
                            })
                        }
                    }
                }
                Ok(XPoly::constant(MultiPoly::constant(
                    self.registry.clone(),
                    value,
                )))
            }
            Some(Token::Ident(name)) => {
                if name == SPATIAL_NAME {
                    Ok(XPoly::x_pow(self.registry.clone(), 1))
                } else {
                    let v = MultiPoly::var_named(&self.registry, &name)?;
                    Ok(XPoly::constant(v))
                }
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Token::Minus) => {
                // unary minus on a primary, e.g. `3*-2` is rejected but
                // `-(x+1)` inside parentheses is fine via expr()
                Err(Error::Parse {
                    pos,
                    msg: "unexpected `-` (use parentheses)".to_string(),
                })
            }
            _ => Err(Error::Parse {
                pos,
                msg: "expected a number, variable or `(`".to_string(),
            }),
        }
    }
}

fn is_reserved_param(name: &str) -> bool {
    if name == LAMBDA_NAME || name == SPATIAL_NAME {
        return true;
    }
    let mut chars = name.chars();
    chars.next() == Some('p')
        && !name[1..].is_empty()
        && name[1..].chars().all(|c| c.is_ascii_digit())
}

/// Parse a potential expression. Returns the polynomial over a fresh base
/// registry `[lambda] + parameters`, parameters in first-occurrence order.
pub fn parse_potential(src: &str) -> Result<(XPoly, Arc<VarRegistry>)> {
    let tokens = Lexer::tokens(src)?;
    // first pass: collect parameter names in first-occurrence order
    let mut params: Vec<String> = Vec::new();
    for (pos, t) in &tokens {
        if let Token::Ident(name) = t {
            if name == SPATIAL_NAME {
                continue;
            }
            if is_reserved_param(name) {
                return Err(Error::Parse {
                    pos: *pos,
                    msg: format!("`{name}` is reserved and cannot appear in a potential"),
                });
            }
            if !params.iter().any(|p| p == name) {
                params.push(name.clone());
            }
        }
    }
    let param_refs: Vec<&str> = params.iter().map(|s| s.as_str()).collect();
    let registry = VarRegistry::base(&param_refs)?;
    let mut parser = Parser {
        tokens,
        cursor: 0,
        registry: registry.clone(),
    };
    let poly = parser.expr()?;
    if parser.cursor != parser.tokens.len() {
        return Err(Error::Parse {
            pos: parser.pos(),
            msg: "trailing input".to_string(),
        });
    }
    Ok((poly, registry))
}

/// Monicity check shared by callers: leading coefficient must be the
/// constant one after parameter binding.
pub(crate) fn _leading_is_one(p: &XPoly) -> bool {
    p.leading()
        .map(|c| c.constant_value().map(|v| v.is_one()).unwrap_or(false))
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_family_parses() {
        let (v, reg) = parse_potential("x^4+4*x^3+2*x^2-mu*x").unwrap();
        assert_eq!(v.degree(), Some(4));
        assert_eq!(reg.len(), 2);
        assert_eq!(reg.name(1), "mu");
        assert_eq!(v.render(), "x^4 + 4*x^3 + 2*x^2 - mu*x");
    }

    #[test]
    fn fraction_literals_and_parens() {
        let (v, _) = parse_potential("x^2 - 3/4*(x - 1)").unwrap();
        assert_eq!(v.render(), "x^2 - 3/4*x + 3/4");
    }

    #[test]
    fn reserved_names_rejected() {
        assert!(parse_potential("lambda*x").is_err());
        assert!(parse_potential("p0 + x").is_err());
        assert!(parse_potential("x + p12^2").is_err());
    }

    #[test]
    fn division_by_non_literal_rejected() {
        assert!(parse_potential("x/2").is_err());
        assert!(parse_potential("1/0").is_err());
    }

    #[test]
    fn error_positions_reported() {
        match parse_potential("x^4 + $") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
