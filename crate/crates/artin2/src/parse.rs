//! Recursive-descent parser for the series and element input grammar.
//!
//! ```text
//! series  := term ("+" term)*
//! term    := coeff | coeff "*" power | power | "(" coeff ")" "*" power
//! power   := "x" "^" integer | "x"
//! coeff   := catom ("+" catom)*        (sums only inside parentheses)
//! catom   := "g" ("^" digits)? | "a0" | "0" | "1"
//! integer := "-"? digits
//! ```
//!
//! `+` at the top level always separates terms; like terms combine, so a sum
//! of constant atoms such as `g^2+g+1` still denotes the expected field
//! element. A multi-monomial coefficient in front of a power needs the
//! parenthesized form, e.g. `(g+1)*x^-3`; plain `g+1*x^-3` means g + x⁻³.
//! Rendering only ever emits single-monomial coefficients, which keeps
//! output inside the unparenthesized grammar.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf2f::{FieldCtx, FqElem};
use crate::laurent::LaurentSeries;

const MAX_X_EXPONENT: i64 = 1 << 20;
const MAX_G_EXPONENT: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    X,
    G,
    A0,
    Num(u64),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let pos = i;
        match bytes[i] {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                toks.push((Tok::Plus, pos));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, pos));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, pos));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, pos));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, pos));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, pos));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let lit = &text[start..i];
                let n: u64 = lit.parse().map_err(|_| Error::ParseError {
                    pos,
                    msg: format!("integer literal '{lit}' out of range"),
                })?;
                toks.push((Tok::Num(n), pos));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                i += 1;
                // "a0" is the one identifier that includes a digit.
                if c == b'a' && i < bytes.len() && bytes[i] == b'0' {
                    i += 1;
                }
                let word = &text[start..i];
                match word {
                    "x" => toks.push((Tok::X, pos)),
                    "g" => toks.push((Tok::G, pos)),
                    "a0" => toks.push((Tok::A0, pos)),
                    _ => {
                        return Err(Error::UnknownSymbol {
                            pos,
                            symbol: word.to_string(),
                        })
                    }
                }
            }
            c => {
                return Err(Error::ParseError {
                    pos,
                    msg: format!("unexpected character '{}'", c as char),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    ctx: &'a FieldCtx,
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.at).map(|t| t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.1).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.peek();
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(tok) {
            self.at += 1;
            Ok(())
        } else {
            Err(Error::ParseError {
                pos: self.pos(),
                msg: format!("expected {what}"),
            })
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::ParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    /// One coefficient atom: `g`, `g^k`, `a0`, `0` or `1`.
    fn catom(&mut self) -> Result<FqElem> {
        match self.bump() {
            Some(Tok::G) => {
                if self.peek() == Some(Tok::Caret) {
                    self.at += 1;
                    match self.bump() {
                        Some(Tok::Num(k)) if k <= MAX_G_EXPONENT => {
                            Ok(self.ctx.pow(self.ctx.gen(), k))
                        }
                        Some(Tok::Num(_)) => {
                            self.at -= 1;
                            self.err("exponent of g too large")
                        }
                        _ => self.err("expected a nonnegative exponent after 'g^'"),
                    }
                } else {
                    Ok(self.ctx.gen())
                }
            }
            Some(Tok::A0) => Ok(self.ctx.a0()),
            Some(Tok::Num(0)) => Ok(self.ctx.zero()),
            Some(Tok::Num(1)) => Ok(self.ctx.one()),
            Some(Tok::Num(_)) => {
                self.at -= 1;
                self.err("field constants are written 0 or 1")
            }
            _ => self.err("expected a coefficient"),
        }
    }

    /// `x`, `x^n` with signed n.
    fn power(&mut self) -> Result<i64> {
        self.expect(Tok::X, "'x'")?;
        if self.peek() != Some(Tok::Caret) {
            return Ok(1);
        }
        self.at += 1;
        let neg = if self.peek() == Some(Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        match self.bump() {
            Some(Tok::Num(n)) if (n as i64) <= MAX_X_EXPONENT => {
                Ok(if neg { -(n as i64) } else { n as i64 })
            }
            Some(Tok::Num(_)) => {
                self.at -= 1;
                self.err("exponent of x too large")
            }
            _ => self.err("expected an integer exponent after 'x^'"),
        }
    }

    /// One term: returns (exponent, coefficient).
    fn term(&mut self) -> Result<(i64, FqElem)> {
        match self.peek() {
            Some(Tok::X) => Ok((self.power()?, self.ctx.one())),
            Some(Tok::LParen) => {
                self.at += 1;
                let mut c = self.catom()?;
                while self.peek() == Some(Tok::Plus) {
                    self.at += 1;
                    c = self.ctx.add(c, self.catom()?);
                }
                self.expect(Tok::RParen, "')'")?;
                self.expect(Tok::Star, "'*' after parenthesized coefficient")?;
                Ok((self.power()?, c))
            }
            _ => {
                let c = self.catom()?;
                if self.peek() == Some(Tok::Star) {
                    self.at += 1;
                    Ok((self.power()?, c))
                } else {
                    Ok((0, c))
                }
            }
        }
    }

    fn series_terms(&mut self) -> Result<BTreeMap<i64, FqElem>> {
        let mut acc: BTreeMap<i64, FqElem> = BTreeMap::new();
        loop {
            let (exp, c) = self.term()?;
            let entry = acc.entry(exp).or_insert_with(|| self.ctx.zero());
            *entry = self.ctx.add(*entry, c);
            if entry.is_zero() {
                acc.remove(&exp);
            }
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                }
                None => break,
                _ => return self.err("expected '+' or end of input"),
            }
        }
        Ok(acc)
    }
}

/// Parses a series in the input grammar; the result's precision is
/// `default_prec`, widened to cover any higher exponent explicitly written.
pub fn parse_series(ctx: &FieldCtx, text: &str, default_prec: i64) -> Result<LaurentSeries> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::ParseError {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut p = Parser {
        ctx,
        toks,
        at: 0,
        end: text.len(),
    };
    let map = p.series_terms()?;
    let prec = map
        .keys()
        .next_back()
        .map(|&hi| default_prec.max(hi + 1))
        .unwrap_or(default_prec);
    let terms: Vec<(i64, FqElem)> = map.into_iter().collect();
    Ok(LaurentSeries::from_terms(*ctx, &terms, prec))
}

/// Parses a residue-field element literal, e.g. `g^2+g+1`.
pub fn parse_element(ctx: &FieldCtx, text: &str) -> Result<FqElem> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::ParseError {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut p = Parser {
        ctx,
        toks,
        at: 0,
        end: text.len(),
    };
    let mut acc = p.catom()?;
    while p.peek() == Some(Tok::Plus) {
        p.at += 1;
        acc = p.ctx.add(acc, p.catom()?);
    }
    if p.peek().is_some() {
        return p.err("expected '+' or end of element literal");
    }
    Ok(acc)
}

/// Parses a modulus polynomial over F₂ (no reduction), e.g. `g^3+g+1`,
/// returning its coefficient bits.
pub fn parse_modulus(text: &str) -> Result<u32> {
    let toks = lex(text)?;
    let mut bits = 0u32;
    let mut at = 0;
    loop {
        match toks.get(at).map(|t| t.0) {
            Some(Tok::G) => {
                at += 1;
                let mut k = 1u64;
                if toks.get(at).map(|t| t.0) == Some(Tok::Caret) {
                    at += 1;
                    match toks.get(at) {
                        Some(&(Tok::Num(n), _)) if n <= 31 => {
                            k = n;
                            at += 1;
                        }
                        Some(&(_, pos)) => {
                            return Err(Error::ParseError {
                                pos,
                                msg: "expected an exponent 0..=31 after 'g^'".into(),
                            })
                        }
                        None => {
                            return Err(Error::ParseError {
                                pos: text.len(),
                                msg: "expected an exponent after 'g^'".into(),
                            })
                        }
                    }
                }
                bits ^= 1 << k;
            }
            Some(Tok::Num(n)) if n <= 1 => {
                bits ^= n as u32;
                at += 1;
            }
            Some(_) | None => {
                let pos = toks.get(at).map(|t| t.1).unwrap_or(text.len());
                return Err(Error::ParseError {
                    pos,
                    msg: "expected a modulus monomial (g^k, g, 1 or 0)".into(),
                });
            }
        }
        match toks.get(at).map(|t| t.0) {
            Some(Tok::Plus) => at += 1,
            None => break,
            Some(_) => {
                return Err(Error::ParseError {
                    pos: toks[at].1,
                    msg: "expected '+' or end of modulus".into(),
                })
            }
        }
    }
    Ok(bits)
}
