//! Text grammar shared by polynomials and differential forms.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | var ('^' uint)? | dx ('^' dx)* | '(' expr ')' ('^' uint)?
//! var    := 'x' '_'? uint        dx := 'dx' '_'? uint
//! rational := int ('/' uint)?
//! ```
//! Whitespace is insignificant. Between two `dx` symbols `^` is the wedge product.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::poly::{Polynomial, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Decimal,
    Var(usize),
    Dx(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str, nvars: usize) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let read_index = |start: usize, mut j: usize| -> Result<(usize, usize)> {
        if j < bytes.len() && bytes[j] == b'_' {
            j += 1;
        }
        let d0 = j;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        if d0 == j {
            let end = (j..bytes.len()).find(|&k| !bytes[k].is_ascii_alphanumeric() && bytes[k] != b'_');
            let name = &text[start..end.unwrap_or(bytes.len())];
            return Err(Error::UnknownVariable { name: name.to_string(), pos: start });
        }
        let idx: usize =
            text[d0..j].parse().map_err(|_| Error::UnknownVariable { name: text[start..j].to_string(), pos: start })?;
        if idx >= nvars {
            return Err(Error::UnknownVariable { name: text[start..j].to_string(), pos: start });
        }
        Ok((idx, j))
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    out.push((Tok::Decimal, start));
                } else {
                    out.push((Tok::Int(text[start..i].parse().expect("digits")), start));
                }
                continue;
            }
            b'x' => {
                let (idx, j) = read_index(start, i + 1)?;
                out.push((Tok::Var(idx), start));
                i = j;
                continue;
            }
            b'd' if bytes.get(i + 1) == Some(&b'x') => {
                let (idx, j) = read_index(start, i + 2)?;
                out.push((Tok::Dx(idx), start));
                i = j;
                continue;
            }
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'/' => out.push((Tok::Slash, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            _ if c.is_ascii_alphabetic() => {
                let end = (i..bytes.len()).find(|&k| !bytes[k].is_ascii_alphanumeric() && bytes[k] != b'_');
                let name = &text[start..end.unwrap_or(bytes.len())];
                return Err(Error::UnknownVariable { name: name.to_string(), pos: start });
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax { pos: start, message: format!("unexpected character `{ch}`") });
            }
        }
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// Parsed expression tree; evaluated either into a polynomial or a form.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Expr {
    Num(Rational),
    Var(usize),
    Dx(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, message: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), message: message.to_string() })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = match self.peek() {
            Tok::Minus => {
                self.bump();
                Expr::Neg(Box::new(self.term()?))
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn exponent(&mut self) -> Result<u32> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => u32::try_from(&n).map_err(|_| Error::NonIntegerExponent { pos }),
            _ => Err(Error::NonIntegerExponent { pos }),
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let pos = self.pos();
                    match self.bump() {
                        Tok::Int(d) if !d.is_zero() => Ok(Expr::Num(Rational::new(n, d))),
                        _ => Err(Error::Syntax { pos, message: "expected a nonzero integer denominator".into() }),
                    }
                } else {
                    Ok(Expr::Num(Rational::from_integer(n)))
                }
            }
            Tok::Decimal => self.syntax("decimal literals are not exact; use a fraction"),
            Tok::Var(i) => {
                self.bump();
                if *self.peek() == Tok::Caret {
                    self.bump();
                    let e = self.exponent()?;
                    Ok(Expr::Pow(Box::new(Expr::Var(i)), e))
                } else {
                    Ok(Expr::Var(i))
                }
            }
            Tok::Dx(i) => {
                self.bump();
                let mut lhs = Expr::Dx(i);
                while *self.peek() == Tok::Caret {
                    self.bump();
                    match self.bump() {
                        Tok::Dx(j) => lhs = Expr::Mul(Box::new(lhs), Box::new(Expr::Dx(j))),
                        _ => {
                            self.at -= 1;
                            return self.syntax("expected `dx_j` after `^` in a wedge product");
                        }
                    }
                }
                Ok(lhs)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.syntax("expected `)`");
                }
                self.bump();
                if *self.peek() == Tok::Caret {
                    self.bump();
                    let e = self.exponent()?;
                    Ok(Expr::Pow(Box::new(inner), e))
                } else {
                    Ok(inner)
                }
            }
            Tok::End => self.syntax("unexpected end of input"),
            _ => self.syntax("expected a number, variable or `(`"),
        }
    }
}

pub(crate) fn parse_expr(text: &str, nvars: usize) -> Result<Expr> {
    let toks = tokenize(text, nvars)?;
    let mut p = Parser { toks, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax("unexpected trailing input");
    }
    Ok(e)
}

fn eval_poly(e: &Expr, nvars: usize) -> Result<Polynomial> {
    Ok(match e {
        Expr::Num(c) => Polynomial::constant(nvars, c.clone()),
        Expr::Var(i) => Polynomial::var(nvars, *i),
        Expr::Dx(_) => return Err(Error::InvalidInput("differentials are not allowed in a polynomial".into())),
        Expr::Add(a, b) => &eval_poly(a, nvars)? + &eval_poly(b, nvars)?,
        Expr::Sub(a, b) => &eval_poly(a, nvars)? - &eval_poly(b, nvars)?,
        Expr::Neg(a) => -&eval_poly(a, nvars)?,
        Expr::Mul(a, b) => &eval_poly(a, nvars)? * &eval_poly(b, nvars)?,
        Expr::Pow(a, k) => eval_poly(a, nvars)?.pow(*k),
    })
}

pub fn parse_polynomial(text: &str, nvars: usize) -> Result<Polynomial> {
    if nvars > crate::monomial::MAX_VARS {
        return Err(Error::TooManyVariables(nvars));
    }
    eval_poly(&parse_expr(text, nvars)?, nvars)
}
