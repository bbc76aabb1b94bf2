//! Script grammar:
//!
//! ```text
//! script    := statement*
//! statement := 'ring' NAME '=' ring ';'
//!            | 'ideal' NAME '=' ideal ';'
//!            | 'module' NAME '=' module ';'
//!            | 'map' NAME ':' NAME '->' NAME '=' '{' polys '}' ';'
//!            | 'assert' 'not'? check ';'
//!            | 'print' printable ';'
//! ring      := ring_atom ('**' ring_atom)*
//! ring_atom := 'QQ' '[' names ']' ('/' '(' polys ')')?
//!            | 'image' NAME | 'ring' '(' NAME ')' | NAME | '(' ring ')'
//! ideal     := '(' polys ')' 'in' NAME | 'graph' '(' NAME ')'
//!            | 'fibered' '(' NAME ',' NAME ')' | 'kernel' '(' NAME ')'
//! module    := NAME '^' INT ('/' '(' relation (',' relation)* ')')? | NAME
//! relation  := poly | '[' polys ']'
//! check     := 'tor' '(' INT ',' modarg ',' modarg ')' ('==' | '!=') '0'
//!            | 'flat' '(' modarg 'at' '(' polys ')' ('via' NAME)? ')'
//!            | 'contains' '(' NAME ',' poly ')'
//! printable := 'gb' '(' NAME ')' | 'kernel' '(' NAME ')'
//!            | 'tor' '(' INT ',' modarg ',' modarg ')' | NAME
//! modarg    := 'free' '(' NAME ',' INT ')' | NAME
//! ```

use num_traits::{ToPrimitive, Zero};

use super::ast::*;
use crate::error::ParseError;
use crate::poly::parse::{tokenize, Token, TokenStream};
use crate::poly::PolyExpr;

const KEYWORDS: &[&str] = &[
    "ring", "ideal", "module", "map", "assert", "print", "not", "QQ", "image", "in", "at", "via",
    "free", "tor", "flat", "contains", "gb", "kernel", "graph", "fibered",
];

type PResult<T> = Result<T, ParseError>;

struct Parser {
    ts: TokenStream,
}

fn is_ident(t: &Token, word: &str) -> bool {
    matches!(t, Token::Ident(s) if s == word)
}

impl Parser {
    fn peek_word(&self, word: &str) -> bool {
        is_ident(&self.ts.peek().token, word)
    }

    fn eat_word(&mut self, word: &str) -> bool {
        if self.peek_word(word) {
            self.ts.advance();
            true
        } else {
            false
        }
    }

    fn expect_word(&mut self, word: &str) -> PResult<()> {
        if self.eat_word(word) {
            Ok(())
        } else {
            let t = self.ts.peek();
            Err(ParseError::new(t.pos, format!("expected `{word}`, found {}", t.token)))
        }
    }

    fn expect_one_of(&mut self, a: &Token, b: &Token) -> PResult<Token> {
        let t = self.ts.advance();
        if &t.token == a || &t.token == b {
            Ok(t.token)
        } else {
            Err(ParseError::new(t.pos, format!("expected {a} or {b}, found {}", t.token)))
        }
    }

    /// Any identifier, keyword or not (used for variable names).
    fn ident(&mut self) -> PResult<Name> {
        let t = self.ts.advance();
        match t.token {
            Token::Ident(text) => Ok(Name { text, pos: t.pos }),
            other => Err(ParseError::new(t.pos, format!("expected a name, found {other}"))),
        }
    }

    /// A user-chosen name; keywords are rejected.
    fn name(&mut self) -> PResult<Name> {
        let n = self.ident()?;
        if KEYWORDS.contains(&n.text.as_str()) {
            return Err(ParseError::new(n.pos, format!("`{}` is a reserved word", n.text)));
        }
        Ok(n)
    }

    fn int(&mut self) -> PResult<usize> {
        let t = self.ts.advance();
        match &t.token {
            Token::Num(n) => n
                .to_usize()
                .ok_or_else(|| ParseError::new(t.pos, "integer out of range")),
            other => Err(ParseError::new(t.pos, format!("expected an integer, found {other}"))),
        }
    }

    fn poly(&mut self) -> PResult<PolyExpr> {
        PolyExpr::parse(&mut self.ts)
    }

    /// Items separated by commas up to (and consuming) `close`.
    fn until<T>(&mut self, close: Token, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        let mut out = Vec::new();
        if self.ts.eat(&close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.expect_one_of(&Token::Comma, &close)? == close {
                return Ok(out);
            }
        }
    }

    fn polys_until(&mut self, close: Token) -> PResult<Vec<PolyExpr>> {
        self.until(close, |p| p.poly())
    }

    fn script(&mut self) -> PResult<Script> {
        let mut statements = Vec::new();
        while !self.ts.at_eof() {
            statements.push(self.statement()?);
        }
        Ok(Script { statements })
    }

    fn statement(&mut self) -> PResult<Statement> {
        let start = self.ts.peek().clone();
        let Token::Ident(word) = &start.token else {
            return Err(ParseError::new(start.pos, format!("expected a statement, found {}", start.token)));
        };
        let word = word.clone();
        self.ts.advance();
        let kind = match word.as_str() {
            "ring" => {
                let n = self.name()?;
                self.ts.expect(&Token::Assign)?;
                StatementKind::Ring(n, self.ring_expr()?)
            }
            "ideal" => {
                let n = self.name()?;
                self.ts.expect(&Token::Assign)?;
                StatementKind::Ideal(n, self.ideal_expr()?)
            }
            "module" => {
                let n = self.name()?;
                self.ts.expect(&Token::Assign)?;
                StatementKind::Module(n, self.module_expr()?)
            }
            "map" => {
                let name = self.name()?;
                self.ts.expect(&Token::Colon)?;
                let source = self.name()?;
                self.ts.expect(&Token::Arrow)?;
                let target = self.name()?;
                self.ts.expect(&Token::Assign)?;
                self.ts.expect(&Token::LBrace)?;
                let images = self.polys_until(Token::RBrace)?;
                StatementKind::Map {
                    name,
                    source,
                    target,
                    images,
                }
            }
            "assert" => {
                let negated = self.eat_word("not");
                StatementKind::Assert {
                    negated,
                    check: self.check()?,
                }
            }
            "print" => StatementKind::Print(self.printable()?),
            _ => {
                return Err(ParseError::new(
                    start.pos,
                    format!("expected a statement, found {}", start.token),
                ))
            }
        };
        self.ts.expect(&Token::Semi)?;
        Ok(Statement { pos: start.pos, kind })
    }

    fn ring_expr(&mut self) -> PResult<RingExpr> {
        let mut lhs = self.ring_atom()?;
        while self.ts.peek().token == Token::Star && self.ts.peek_at(1).token == Token::Star {
            self.ts.advance();
            self.ts.advance();
            let rhs = self.ring_atom()?;
            lhs = RingExpr::Tensor(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn ring_atom(&mut self) -> PResult<RingExpr> {
        if self.ts.eat(&Token::LParen) {
            let e = self.ring_expr()?;
            self.ts.expect(&Token::RParen)?;
            return Ok(e);
        }
        if self.eat_word("QQ") {
            self.ts.expect(&Token::LBracket)?;
            let vars = self.until(Token::RBracket, |p| p.ident())?;
            let mut relations = Vec::new();
            if self.ts.eat(&Token::Slash) {
                self.ts.expect(&Token::LParen)?;
                relations = self.polys_until(Token::RParen)?;
            }
            return Ok(RingExpr::Poly { vars, relations });
        }
        if self.eat_word("image") {
            return Ok(RingExpr::Image(self.name()?));
        }
        if self.peek_word("ring") && self.ts.peek_at(1).token == Token::LParen {
            self.ts.advance();
            self.ts.advance();
            let n = self.name()?;
            self.ts.expect(&Token::RParen)?;
            return Ok(RingExpr::RingOf(n));
        }
        Ok(RingExpr::Ref(self.name()?))
    }

    fn call1(&mut self) -> PResult<Name> {
        self.ts.expect(&Token::LParen)?;
        let n = self.name()?;
        self.ts.expect(&Token::RParen)?;
        Ok(n)
    }

    fn ideal_expr(&mut self) -> PResult<IdealExpr> {
        if self.ts.eat(&Token::LParen) {
            let gens = self.polys_until(Token::RParen)?;
            self.expect_word("in")?;
            return Ok(IdealExpr::Gens {
                gens,
                ring: self.name()?,
            });
        }
        if self.eat_word("graph") {
            return Ok(IdealExpr::Graph(self.call1()?));
        }
        if self.eat_word("kernel") {
            return Ok(IdealExpr::Kernel(self.call1()?));
        }
        if self.eat_word("fibered") {
            self.ts.expect(&Token::LParen)?;
            let a = self.name()?;
            self.ts.expect(&Token::Comma)?;
            let b = self.name()?;
            self.ts.expect(&Token::RParen)?;
            return Ok(IdealExpr::Fibered(a, b));
        }
        let t = self.ts.peek();
        Err(ParseError::new(
            t.pos,
            format!("expected `(`, `graph`, `fibered` or `kernel`, found {}", t.token),
        ))
    }

    fn module_expr(&mut self) -> PResult<ModuleExpr> {
        let ring = self.name()?;
        if !self.ts.eat(&Token::Caret) {
            return Ok(ModuleExpr::Ref(ring));
        }
        let rank = self.int()?;
        let mut relations = Vec::new();
        if self.ts.eat(&Token::Slash) {
            self.ts.expect(&Token::LParen)?;
            relations = self.until(Token::RParen, |p| {
                if p.ts.eat(&Token::LBracket) {
                    Ok(Relation::Vector(p.polys_until(Token::RBracket)?))
                } else {
                    Ok(Relation::Scalar(p.poly()?))
                }
            })?;
        }
        Ok(ModuleExpr::Free {
            ring,
            rank,
            relations,
        })
    }

    fn mod_arg(&mut self) -> PResult<ModArg> {
        if self.peek_word("free") && self.ts.peek_at(1).token == Token::LParen {
            self.ts.advance();
            self.ts.advance();
            let r = self.name()?;
            self.ts.expect(&Token::Comma)?;
            let n = self.int()?;
            self.ts.expect(&Token::RParen)?;
            return Ok(ModArg::Free(r, n));
        }
        Ok(ModArg::Name(self.name()?))
    }

    fn tor_args(&mut self) -> PResult<(usize, ModArg, ModArg)> {
        self.ts.expect(&Token::LParen)?;
        let index = self.int()?;
        self.ts.expect(&Token::Comma)?;
        let left = self.mod_arg()?;
        self.ts.expect(&Token::Comma)?;
        let right = self.mod_arg()?;
        self.ts.expect(&Token::RParen)?;
        Ok((index, left, right))
    }

    fn check(&mut self) -> PResult<Check> {
        if self.eat_word("tor") {
            let (index, left, right) = self.tor_args()?;
            let zero = self.expect_one_of(&Token::EqEq, &Token::NotEq)? == Token::EqEq;
            let t = self.ts.advance();
            match &t.token {
                Token::Num(n) if n.is_zero() => {}
                other => return Err(ParseError::new(t.pos, format!("expected `0`, found {other}"))),
            }
            return Ok(Check::Tor {
                index,
                left,
                right,
                zero,
            });
        }
        if self.eat_word("flat") {
            self.ts.expect(&Token::LParen)?;
            let subject = self.mod_arg()?;
            self.expect_word("at")?;
            self.ts.expect(&Token::LParen)?;
            let point = self.polys_until(Token::RParen)?;
            let via = if self.eat_word("via") {
                Some(self.name()?)
            } else {
                None
            };
            self.ts.expect(&Token::RParen)?;
            return Ok(Check::Flat { subject, point, via });
        }
        if self.eat_word("contains") {
            self.ts.expect(&Token::LParen)?;
            let ideal = self.name()?;
            self.ts.expect(&Token::Comma)?;
            let poly = self.poly()?;
            self.ts.expect(&Token::RParen)?;
            return Ok(Check::Contains { ideal, poly });
        }
        let t = self.ts.peek();
        Err(ParseError::new(
            t.pos,
            format!("expected `tor`, `flat` or `contains`, found {}", t.token),
        ))
    }

    fn printable(&mut self) -> PResult<PrintExpr> {
        let next_is_call = self.ts.peek_at(1).token == Token::LParen;
        if next_is_call && self.eat_word("gb") {
            return Ok(PrintExpr::Gb(self.call1()?));
        }
        if next_is_call && self.eat_word("kernel") {
            return Ok(PrintExpr::Kernel(self.call1()?));
        }
        if next_is_call && self.eat_word("tor") {
            let (index, left, right) = self.tor_args()?;
            return Ok(PrintExpr::Tor { index, left, right });
        }
        Ok(PrintExpr::Name(self.name()?))
    }
}

pub fn parse_script(text: &str) -> Result<Script, ParseError> {
    let mut p = Parser {
        ts: TokenStream::new(tokenize(text)?),
    };
    p.script()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Position;

    fn err(text: &str) -> (usize, usize, String) {
        let e = parse_script(text).unwrap_err();
        (e.position.line, e.position.column, e.message)
    }

    #[test]
    fn paper_style_listing() {
        let s = parse_script(
            "ring R = QQ[x,y,z,u,v]/(x*y-z^2);\n\
             ideal J = (x-u, z-u*v, y-u*v^2) in R;\n\
             module K = R^1/(x,y,z);\n\
             assert tor(1, J, K) != 0;\n",
        )
        .unwrap();
        assert_eq!(s.statements.len(), 4);
        assert_eq!(s.statements[3].pos, Position::new(4, 1));
        assert_eq!(
            s.statements[3].to_string(),
            "assert tor(1, J, K) != 0;"
        );
    }

    #[test]
    fn tensor_and_image() {
        let s = parse_script("ring T = QQ[a,b,c] ** image F;").unwrap();
        assert_eq!(s.to_string(), "ring T = QQ[a, b, c] ** image F;\n");
        let s = parse_script("ring T = A ** (B ** C);").unwrap();
        assert_eq!(s.to_string(), "ring T = A ** (B ** C);\n");
    }

    #[test]
    fn repeated_variable_without_comma() {
        let (l, c, m) = err("ring R = QQ[x x];");
        assert_eq!((l, c), (1, 15));
        assert!(m.contains("expected `,` or `]`"), "{m}");
    }

    #[test]
    fn missing_semicolon_points_at_next_statement() {
        let (l, c, _) = err("ring R = QQ[x]\nprint R;");
        assert_eq!((l, c), (2, 1));
    }

    #[test]
    fn reserved_names() {
        let (_, c, m) = err("ring tor = QQ[x];");
        assert_eq!(c, 6);
        assert!(m.contains("reserved"));
    }

    #[test]
    fn relation_vectors() {
        let s = parse_script("module M = R^2 / ([x, 0], [y, -x]);").unwrap();
        assert_eq!(s.to_string(), "module M = R^2 / ([x, 0], [y, -x]);\n");
    }

    #[test]
    fn assertions_round_trip() {
        let src = "assert not flat(J at (x, y) via F);\nassert contains(I, x^2 - 1/2*y);\nprint tor(2, free(R, 3), K);\nprint gb(I);\n";
        let s = parse_script(src).unwrap();
        assert_eq!(s.to_string(), src);
        let again = parse_script(&s.to_string()).unwrap();
        assert_eq!(again.without_positions(), s.without_positions());
    }

    #[test]
    fn tor_must_compare_with_zero() {
        let (_, c, m) = err("assert tor(1, A, B) == 1;");
        assert_eq!(c, 24);
        assert!(m.contains("expected `0`"));
    }
}
