//! Recursive-descent parser for polynomial and rational-function expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | power
//! power  := atom ('^' INT)?
//! atom   := INT | VAR | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant and juxtaposition is not multiplication.

use std::fmt;

use num_bigint::BigInt;
use saito_core::algebra::{Poly, Rat, RatFn, Vars};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

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
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                bump(&mut chars);
            }
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                bump(&mut chars);
            }
            Tok::Ident(s)
        } else {
            bump(&mut chars);
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => return Err(ParseError { line: l0, column: c0, message: format!("unexpected character `{c}`") }),
            }
        };
        out.push(Token { tok, line: l0, column: c0 });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

/// Whether `/` may divide by a non-constant expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Polynomial,
    Rational,
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    vars: &'a Vars,
    mode: Mode,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Token, message: String) -> ParseError {
        ParseError { line: t.line, column: t.column, message }
    }

    fn expr(&mut self) -> Result<RatFn, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFn, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.next();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    let op = self.next();
                    let d = self.factor()?;
                    if d.is_zero() {
                        return Err(Self::error_at(&op, "division by zero".into()));
                    }
                    if self.mode == Mode::Polynomial && !d.is_constant() {
                        return Err(Self::error_at(&op, "a polynomial may only be divided by a constant".into()));
                    }
                    acc = acc.checked_div(&d).map_err(|e| Self::error_at(&op, e.to_string()))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFn, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.next();
            return Ok(-self.factor()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFn, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => {
                let e: i32 = n
                    .try_into()
                    .ok()
                    .filter(|&e: &i32| e <= 1 << 16)
                    .ok_or_else(|| Self::error_at(&t, format!("exponent {n} is too large")))?;
                Ok(base.pow(e))
            }
            other => Err(Self::error_at(&t, format!("exponent must be a non-negative integer literal, found {other}"))),
        }
    }

    fn atom(&mut self) -> Result<RatFn, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Int(ref n) => Ok(RatFn::constant(self.vars, Rat::from_bigint(n.clone()))),
            Tok::Ident(ref name) => match self.vars.index_of(name) {
                Some(i) => Ok(RatFn::from_poly(Poly::var(self.vars, i))),
                None => Err(Self::error_at(&t, format!("unknown variable `{name}`"))),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.next();
                if close.tok != Tok::RParen {
                    return Err(Self::error_at(&close, format!("expected `)`, found {}", close.tok)));
                }
                Ok(inner)
            }
            ref other => Err(Self::error_at(&t, format!("expected a number, variable or `(`, found {other}"))),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::End => Ok(()),
            Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                Err(Self::error_at(&t, format!("expected an operator before {}", t.tok)))
            }
            ref other => Err(Self::error_at(&t, format!("unexpected {other}"))),
        }
    }
}

fn parse(src: &str, vars: &Vars, mode: Mode) -> Result<RatFn, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, vars, mode };
    let value = p.expr()?;
    p.finish()?;
    Ok(value)
}

/// Parses a polynomial; `/` is only allowed with a constant divisor.
pub fn parse_poly(src: &str, vars: &Vars) -> Result<Poly, ParseError> {
    let r = parse(src, vars, Mode::Polynomial)?;
    Ok(r.as_poly().expect("constant divisors keep the value polynomial"))
}

/// Parses a rational function; `/` may divide by any nonzero expression.
pub fn parse_ratfn(src: &str, vars: &Vars) -> Result<RatFn, ParseError> {
    parse(src, vars, Mode::Rational)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uv() -> Vars {
        Vars::indexed("u", 2).unwrap()
    }

    #[test]
    fn precedence_and_rationals() {
        let v = uv();
        assert_eq!(parse_poly("u1^3 + u2^3", &v).unwrap().to_string(), "u1^3 + u2^3");
        assert_eq!(parse_poly("u1^3*u2^3", &v).unwrap().to_string(), "u1^3*u2^3");
        assert_eq!(parse_poly("1/2*u1^2 - u2", &v).unwrap().to_string(), "1/2*u1^2 - u2");
        assert_eq!(parse_poly("-u1^2", &v).unwrap().to_string(), "-u1^2");
        assert_eq!(parse_poly("2 - 3 - 4", &v).unwrap().to_string(), "-5");
        assert_eq!(parse_poly("12/2/3", &v).unwrap().to_string(), "2");
    }

    #[test]
    fn errors_carry_positions() {
        let v = uv();
        let e = parse_poly("u1 u2", &v).unwrap_err();
        assert_eq!((e.line, e.column), (1, 4));
        let e = parse_poly("u1 +\n  u3", &v).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("unknown variable"));
        assert!(parse_poly("u1^-1", &v).unwrap_err().message.contains("non-negative"));
        assert!(parse_poly("u1^u2", &v).is_err());
        assert!(parse_poly("u1/u2", &v).unwrap_err().message.contains("constant"));
        assert!(parse_poly("(u1 + 1", &v).is_err());
        assert!(parse_poly("u1 $ 2", &v).is_err());
        assert!(parse_poly("u1/0", &v).is_err());
    }

    #[test]
    fn rational_functions() {
        let v = uv();
        let r = parse_ratfn("5/u1", &v).unwrap();
        assert_eq!(r.to_string(), "5/u1");
        let r = parse_ratfn("-1/(3*u1^5 - 3*u1^2*u2^3)", &v).unwrap();
        assert_eq!(r.to_string(), "-1/(3*u1^5 - 3*u1^2*u2^3)");
    }
}
