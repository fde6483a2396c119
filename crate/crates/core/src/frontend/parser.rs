//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr     = term { ("+" | "-") term } ;
//! term     = unary { ("*" | "/") unary } ;
//! unary    = "-" unary | power ;
//! power    = atom { "^" exponent } ;
//! exponent = [ "-" ] int | "(" [ "-" ] int [ "/" int ] ")" ;
//! atom     = int | "w" | "exp" "(" expr ")" | "log" [ "^" int ] "(" expr ")"
//!          | "(" expr ")" ;
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigRational),
    /// The variable `w`.
    Omega,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, BigRational),
    Exp(Box<Expr>),
    /// `log^k(x)`, with `k = 1` for a plain `log`.
    Log(u32, Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Expr::Num(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Expr::Omega => write!(f, "w"),
            Expr::Neg(a) => write!(f, "neg({a})"),
            Expr::Add(a, b) => write!(f, "add({a}, {b})"),
            Expr::Sub(a, b) => write!(f, "sub({a}, {b})"),
            Expr::Mul(a, b) => write!(f, "mul({a}, {b})"),
            Expr::Div(a, b) => write!(f, "div({a}, {b})"),
            Expr::Pow(a, q) if q.is_integer() => write!(f, "pow({a}, {})", q.numer()),
            Expr::Pow(a, q) => write!(f, "pow({a}, {}/{})", q.numer(), q.denom()),
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Log(1, a) => write!(f, "log({a})"),
            Expr::Log(k, a) => write!(f, "log^{k}({a})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
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
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].parse().expect("ascii digits")), start));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().expect("in bounds");
                return Err(Error::SyntaxError { pos: start, msg: format!("unexpected character '{ch}'") });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
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
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::SyntaxError { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
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
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            base = Expr::Pow(Box::new(base), self.exponent()?);
        }
        Ok(base)
    }

    fn signed_int(&mut self, start: usize) -> Result<BigInt> {
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        match self.bump() {
            Tok::Int(n) => Ok(if neg { -n } else { n }),
            _ => Err(Error::UnsupportedExponent { pos: start }),
        }
    }

    fn exponent(&mut self) -> Result<BigRational> {
        let start = self.pos();
        if *self.peek() != Tok::LParen {
            let n = self.signed_int(start)?;
            return Ok(BigRational::from_integer(n));
        }
        self.bump();
        let n = self.signed_int(start)?;
        let d = if *self.peek() == Tok::Slash {
            self.bump();
            match self.bump() {
                Tok::Int(d) if !d.is_zero() => d,
                _ => return Err(Error::UnsupportedExponent { pos: start }),
            }
        } else {
            BigInt::one()
        };
        if *self.peek() != Tok::RParen {
            return Err(Error::UnsupportedExponent { pos: start });
        }
        self.bump();
        Ok(BigRational::new(n, d))
    }

    fn call_arg(&mut self) -> Result<Expr> {
        self.expect(Tok::LParen, "'('")?;
        let e = self.expr()?;
        self.expect(Tok::RParen, "')'")?;
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(Expr::Num(BigRational::from_integer(n))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "w" => Ok(Expr::Omega),
                "exp" => Ok(Expr::Exp(Box::new(self.call_arg()?))),
                "log" => {
                    let mut k = 1;
                    if *self.peek() == Tok::Caret {
                        self.bump();
                        let kpos = self.pos();
                        k = match self.bump() {
                            Tok::Int(n) => match u32::try_from(n) {
                                Ok(k) if k >= 1 => k,
                                _ => return Err(Error::SyntaxError { pos: kpos, msg: "bad log iteration count".into() }),
                            },
                            _ => return Err(Error::SyntaxError { pos: kpos, msg: "expected an iteration count".into() }),
                        };
                    }
                    Ok(Expr::Log(k, Box::new(self.call_arg()?)))
                }
                _ => Err(Error::SyntaxError { pos, msg: format!("unknown name '{name}'") }),
            },
            Tok::End => Err(Error::SyntaxError { pos, msg: "unexpected end of input".into() }),
            _ => Err(Error::SyntaxError { pos, msg: "expected a number, 'w', a function or '('".into() }),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("unexpected trailing input");
    }
    Ok(e)
}
