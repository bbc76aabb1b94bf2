//! Tokenizer and expression parser shared by polynomial text and scripts.
//!
//! Polynomial grammar:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' INT)?
//! atom  := INT ('/' INT)? | IDENT | '(' expr ')'
//! ```
//!
//! Juxtaposition is not multiplication: `2x` and `x y` are rejected.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Polynomial, Rational, RingSignature};
use crate::error::{ParseError, Position, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Colon,
    Assign,
    EqEq,
    NotEq,
    Arrow,
    Eof,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Token::Num(n) => return write!(f, "number `{n}`"),
            Token::Ident(s) => return write!(f, "`{s}`"),
            Token::Plus => "`+`",
            Token::Minus => "`-`",
            Token::Star => "`*`",
            Token::Slash => "`/`",
            Token::Caret => "`^`",
            Token::LParen => "`(`",
            Token::RParen => "`)`",
            Token::LBracket => "`[`",
            Token::RBracket => "`]`",
            Token::LBrace => "`{`",
            Token::RBrace => "`}`",
            Token::Comma => "`,`",
            Token::Semi => "`;`",
            Token::Colon => "`:`",
            Token::Assign => "`=`",
            Token::EqEq => "`==`",
            Token::NotEq => "`!=`",
            Token::Arrow => "`->`",
            Token::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub token: Token,
    pub pos: Position,
}

/// Split `text` into tokens. `#` starts a comment running to end of line.
pub fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Position::new(line, col);
        let advance = |n: usize, col: &mut usize| *col += n;
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut col);
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            advance(i - start, &mut col);
            let n: BigInt = digits.parse().expect("digit string");
            out.push(Spanned {
                token: Token::Num(n),
                pos,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            advance(i - start, &mut col);
            out.push(Spanned {
                token: Token::Ident(name),
                pos,
            });
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (token, width) = match (c, next) {
            ('=', Some('=')) => (Token::EqEq, 2),
            ('!', Some('=')) => (Token::NotEq, 2),
            ('-', Some('>')) => (Token::Arrow, 2),
            ('+', _) => (Token::Plus, 1),
            ('-', _) => (Token::Minus, 1),
            ('*', _) => (Token::Star, 1),
            ('/', _) => (Token::Slash, 1),
            ('^', _) => (Token::Caret, 1),
            ('(', _) => (Token::LParen, 1),
            (')', _) => (Token::RParen, 1),
            ('[', _) => (Token::LBracket, 1),
            (']', _) => (Token::RBracket, 1),
            ('{', _) => (Token::LBrace, 1),
            ('}', _) => (Token::RBrace, 1),
            (',', _) => (Token::Comma, 1),
            (';', _) => (Token::Semi, 1),
            (':', _) => (Token::Colon, 1),
            ('=', _) => (Token::Assign, 1),
            _ => return Err(ParseError::new(pos, format!("unexpected character `{c}`"))),
        };
        out.push(Spanned { token, pos });
        i += width;
        col += width;
    }
    out.push(Spanned {
        token: Token::Eof,
        pos: Position::new(line, col),
    });
    Ok(out)
}

/// Cursor over a token list; the last token is always `Eof`.
pub struct TokenStream {
    tokens: Vec<Spanned>,
    index: usize,
}

impl TokenStream {
    pub fn new(tokens: Vec<Spanned>) -> Self {
        debug_assert!(matches!(tokens.last().map(|t| &t.token), Some(Token::Eof)));
        Self { tokens, index: 0 }
    }

    pub fn peek(&self) -> &Spanned {
        &self.tokens[self.index]
    }

    pub fn peek_at(&self, offset: usize) -> &Spanned {
        let i = (self.index + offset).min(self.tokens.len() - 1);
        &self.tokens[i]
    }

    pub fn advance(&mut self) -> Spanned {
        let t = self.tokens[self.index].clone();
        if self.index + 1 < self.tokens.len() {
            self.index += 1;
        }
        t
    }

    pub fn eat(&mut self, token: &Token) -> bool {
        if &self.peek().token == token {
            self.advance();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, token: &Token) -> Result<Position, ParseError> {
        let t = self.peek().clone();
        if &t.token == token {
            self.advance();
            Ok(t.pos)
        } else {
            Err(ParseError::new(t.pos, format!("expected {token}, found {}", t.token)))
        }
    }

    pub fn at_eof(&self) -> bool {
        self.peek().token == Token::Eof
    }

    pub fn unexpected<T>(&self) -> Result<T, ParseError> {
        let t = self.peek();
        Err(ParseError::new(t.pos, format!("unexpected {}", t.token)))
    }
}

/// Unevaluated polynomial expression, independent of any ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Num(Rational),
    Var(String, Position),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    pub fn parse(ts: &mut TokenStream) -> Result<Self, ParseError> {
        let mut lhs = Self::parse_term(ts)?;
        loop {
            if ts.eat(&Token::Plus) {
                let rhs = Self::parse_term(ts)?;
                lhs = PolyExpr::Add(Box::new(lhs), Box::new(rhs));
            } else if ts.eat(&Token::Minus) {
                let rhs = Self::parse_term(ts)?;
                lhs = PolyExpr::Sub(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn parse_term(ts: &mut TokenStream) -> Result<Self, ParseError> {
        let mut lhs = Self::parse_unary(ts)?;
        while ts.eat(&Token::Star) {
            let rhs = Self::parse_unary(ts)?;
            lhs = PolyExpr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_unary(ts: &mut TokenStream) -> Result<Self, ParseError> {
        if ts.eat(&Token::Minus) {
            return Ok(PolyExpr::Neg(Box::new(Self::parse_unary(ts)?)));
        }
        if ts.eat(&Token::Plus) {
            return Self::parse_unary(ts);
        }
        Self::parse_power(ts)
    }

    fn parse_power(ts: &mut TokenStream) -> Result<Self, ParseError> {
        let base = Self::parse_atom(ts)?;
        if ts.eat(&Token::Caret) {
            let t = ts.advance();
            let k = match &t.token {
                Token::Num(n) => n.to_u32().ok_or_else(|| {
                    ParseError::new(t.pos, format!("exponent {n} is too large"))
                })?,
                other => {
                    return Err(ParseError::new(
                        t.pos,
                        format!("malformed exponent: expected a nonnegative integer, found {other}"),
                    ))
                }
            };
            return Ok(PolyExpr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn parse_atom(ts: &mut TokenStream) -> Result<Self, ParseError> {
        let t = ts.peek().clone();
        match t.token {
            Token::Num(n) => {
                ts.advance();
                if ts.peek().token == Token::Slash {
                    if let Token::Num(d) = &ts.peek_at(1).token {
                        let d = d.clone();
                        let dpos = ts.peek_at(1).pos;
                        ts.advance();
                        ts.advance();
                        if d.is_zero() {
                            return Err(ParseError::new(dpos, "zero denominator"));
                        }
                        return Ok(PolyExpr::Num(Rational::new(n, d)));
                    }
                }
                Ok(PolyExpr::Num(Rational::from_integer(n)))
            }
            Token::Ident(name) => {
                ts.advance();
                Ok(PolyExpr::Var(name, t.pos))
            }
            Token::LParen => {
                ts.advance();
                let e = Self::parse(ts)?;
                ts.expect(&Token::RParen)?;
                Ok(e)
            }
            _ => ts.unexpected(),
        }
    }

    /// Evaluate in a ring; unknown variables are reported at their position.
    pub fn evaluate(&self, sig: &Arc<RingSignature>) -> Result<Polynomial> {
        Ok(match self {
            PolyExpr::Num(c) => Polynomial::constant(sig, c.clone()),
            PolyExpr::Var(name, pos) => match sig.index_of(name) {
                Some(i) => Polynomial::variable(sig, i),
                None => {
                    return Err(ParseError::new(*pos, format!("unknown variable `{name}`")).into())
                }
            },
            PolyExpr::Neg(e) => -&e.evaluate(sig)?,
            PolyExpr::Add(a, b) => a.evaluate(sig)?.try_add(&b.evaluate(sig)?)?,
            PolyExpr::Sub(a, b) => a.evaluate(sig)?.try_sub(&b.evaluate(sig)?)?,
            PolyExpr::Mul(a, b) => a.evaluate(sig)?.try_mul(&b.evaluate(sig)?)?,
            PolyExpr::Pow(a, k) => a.evaluate(sig)?.pow(*k)?,
        })
    }

    fn level(&self) -> u8 {
        match self {
            PolyExpr::Add(..) | PolyExpr::Sub(..) => 1,
            PolyExpr::Mul(..) => 2,
            PolyExpr::Neg(..) => 3,
            PolyExpr::Pow(..) => 4,
            PolyExpr::Num(_) | PolyExpr::Var(..) => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            PolyExpr::Num(c) => write!(f, "{c}"),
            PolyExpr::Var(name, _) => write!(f, "{name}"),
            PolyExpr::Neg(e) => {
                write!(f, "-")?;
                e.write_at(f, 3)
            }
            PolyExpr::Add(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " + ")?;
                b.write_at(f, 2)
            }
            PolyExpr::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " - ")?;
                b.write_at(f, 2)
            }
            PolyExpr::Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "*")?;
                b.write_at(f, 3)
            }
            PolyExpr::Pow(a, k) => {
                a.write_at(f, 5)?;
                write!(f, "^{k}")
            }
        }
    }

    /// Structural equality ignoring source positions.
    pub fn same_shape(&self, other: &Self) -> bool {
        match (self, other) {
            (PolyExpr::Num(a), PolyExpr::Num(b)) => a == b,
            (PolyExpr::Var(a, _), PolyExpr::Var(b, _)) => a == b,
            (PolyExpr::Neg(a), PolyExpr::Neg(b)) => a.same_shape(b),
            (PolyExpr::Add(a, b), PolyExpr::Add(c, d))
            | (PolyExpr::Sub(a, b), PolyExpr::Sub(c, d))
            | (PolyExpr::Mul(a, b), PolyExpr::Mul(c, d)) => a.same_shape(c) && b.same_shape(d),
            (PolyExpr::Pow(a, j), PolyExpr::Pow(b, k)) => j == k && a.same_shape(b),
            _ => false,
        }
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// Parse polynomial text in the given ring.
pub fn parse_polynomial(text: &str, sig: &Arc<RingSignature>) -> Result<Polynomial> {
    let mut ts = TokenStream::new(tokenize(text)?);
    let expr = PolyExpr::parse(&mut ts)?;
    if !ts.at_eof() {
        return Err(ts.unexpected::<()>().unwrap_err().into());
    }
    expr.evaluate(sig)
}
