//! Recursive-descent parser.
//!
//! ```text
//! scenario  := stmt*
//! stmt      := fielddecl | letdecl | objdecl | assert | print
//! fielddecl := "field" IDENT "=" "Q" "(" [IDENT ":" expr ("," IDENT ":" expr)*] ")"
//! letdecl   := "let" IDENT "=" expr
//! objdecl   := ("curve"|"line"|"conic"|"point"|"lines"|"points"|"conics") IDENT "=" expr
//! assert    := "assert" expr ("==" | "!=") expr | "assert" call
//! print     := "print" expr
//! expr      := term (("+" | "-") term)*
//! term      := unary (("*" | "/") unary)*
//! unary     := "-" unary | power
//! power     := atom ["^" unary]
//! atom      := INT | STRING | IDENT | call | "[" [expr ("," expr)*] "]"
//!            | "(" expr ")" | "(" expr ":" expr ":" expr ")"
//! ```

use num_bigint::BigUint;

use crate::ast::{BinOp, Expr, ExprKind, ObjKind, RelOp, ScenarioAst, Stmt, StmtKind};
use crate::error::{DslError, DslResult, Span};
use crate::lexer::{tokenize, Token, TokenKind};

pub struct Parser<'a> {
    tokens: &'a [Token],
    source: Option<&'a str>,
    pos: usize,
}

pub fn parse(tokens: &[Token]) -> DslResult<ScenarioAst> {
    Parser { tokens, source: None, pos: 0 }.scenario()
}

/// Tokenizes and parses, keeping each statement's source text.
pub fn parse_source(text: &str) -> DslResult<ScenarioAst> {
    let tokens = tokenize(text)?;
    Parser { tokens: &tokens, source: Some(text), pos: 0 }.scenario()
}

/// Parses a single expression.
pub fn parse_expr(text: &str) -> DslResult<Expr> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens: &tokens, source: Some(text), pos: 0 };
    let e = p.expr()?;
    if p.pos < tokens.len() {
        return Err(p.unexpected(&["end of input"]));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> Span {
        match self.peek() {
            Some(t) => t.span,
            None => self.tokens.last().map_or(Span::new(1, 1), |t| Span::new(t.span.line, t.span.column + t.lexeme.len())),
        }
    }

    fn unexpected(&self, expected: &[&str]) -> DslError {
        DslError::Parse {
            span: self.here(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().map_or("end of input".into(), |t| format!("`{}`", t.lexeme)),
        }
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.peek().is_some_and(|t| t.is_punct(p)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, p: &str) -> DslResult<()> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            Err(self.unexpected(&[&format!("`{p}`")]))
        }
    }

    fn ident(&mut self) -> DslResult<String> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Ident => {
                self.pos += 1;
                Ok(t.lexeme.clone())
            }
            _ => Err(self.unexpected(&["identifier"])),
        }
    }

    fn scenario(&mut self) -> DslResult<ScenarioAst> {
        let mut statements = Vec::new();
        while self.peek().is_some() {
            statements.push(self.stmt()?);
        }
        Ok(ScenarioAst { statements })
    }

    fn stmt(&mut self) -> DslResult<Stmt> {
        let start = self.pos;
        let head = self.peek().filter(|t| t.kind == TokenKind::Keyword).ok_or_else(|| {
            self.unexpected(&["field", "let", "curve", "line", "conic", "point", "lines", "points", "conics", "assert", "print"])
        })?;
        self.pos += 1;
        let kind = match head.lexeme.as_str() {
            "field" => {
                let name = self.ident()?;
                self.expect_punct("=")?;
                if !self.peek().is_some_and(|t| t.is(TokenKind::Ident, "Q")) {
                    return Err(self.unexpected(&["`Q`"]));
                }
                self.pos += 1;
                self.expect_punct("(")?;
                let mut gens = Vec::new();
                if !self.eat_punct(")") {
                    loop {
                        let g = self.ident()?;
                        self.expect_punct(":")?;
                        gens.push((g, self.expr()?));
                        if self.eat_punct(")") {
                            break;
                        }
                        if !self.eat_punct(",") {
                            return Err(self.unexpected(&["`,`", "`)`"]));
                        }
                    }
                }
                StmtKind::Field { name, gens }
            }
            "let" => {
                let name = self.ident()?;
                self.expect_punct("=")?;
                StmtKind::Let { name, value: self.expr()? }
            }
            "assert" => {
                let lhs = self.expr()?;
                let op = if self.eat_punct("==") {
                    Some(RelOp::Eq)
                } else if self.eat_punct("!=") {
                    Some(RelOp::Ne)
                } else {
                    None
                };
                match op {
                    Some(op) => StmtKind::Assert { lhs, op, rhs: self.expr()? },
                    None if matches!(lhs.kind, ExprKind::Call(..)) => StmtKind::AssertCall(lhs),
                    None => return Err(self.unexpected(&["`==`", "`!=`"])),
                }
            }
            "print" => StmtKind::Print(self.expr()?),
            k => {
                let kind = ObjKind::from_keyword(k).expect("keyword table covers object kinds");
                let name = self.ident()?;
                self.expect_punct("=")?;
                StmtKind::Object { kind, name, value: self.expr()? }
            }
        };
        let text = match self.source {
            Some(src) => src[self.tokens[start].range.0..self.tokens[self.pos - 1].range.1].to_string(),
            None => self.tokens[start..self.pos].iter().map(|t| t.lexeme.as_str()).collect::<Vec<_>>().join(" "),
        };
        Ok(Stmt { kind, span: head.span, text })
    }

    pub fn expr(&mut self) -> DslResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat_punct("+") {
                BinOp::Add
            } else if self.eat_punct("-") {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            let span = lhs.span;
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
    }

    fn term(&mut self) -> DslResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat_punct("*") {
                BinOp::Mul
            } else if self.eat_punct("/") {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            let span = lhs.span;
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
    }

    fn unary(&mut self) -> DslResult<Expr> {
        let span = self.here();
        if self.eat_punct("-") {
            let inner = self.unary()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), span));
        }
        self.power()
    }

    fn power(&mut self) -> DslResult<Expr> {
        let base = self.atom()?;
        if self.eat_punct("^") {
            let exp = self.unary()?;
            let span = base.span;
            return Ok(Expr::new(ExprKind::Binary(BinOp::Pow, Box::new(base), Box::new(exp)), span));
        }
        Ok(base)
    }

    fn list_until(&mut self, close: &str) -> DslResult<Vec<Expr>> {
        let mut items = Vec::new();
        if self.eat_punct(close) {
            return Ok(items);
        }
        loop {
            items.push(self.expr()?);
            if self.eat_punct(close) {
                return Ok(items);
            }
            if !self.eat_punct(",") {
                return Err(self.unexpected(&["`,`", &format!("`{close}`")]));
            }
        }
    }

    fn atom(&mut self) -> DslResult<Expr> {
        const EXPECTED: [&str; 5] = ["integer", "string", "identifier", "`(`", "`[`"];
        let t = self.peek().ok_or_else(|| self.unexpected(&EXPECTED))?;
        let span = t.span;
        match t.kind {
            TokenKind::Integer => {
                self.pos += 1;
                let n: BigUint = t.lexeme.parse().expect("lexer yields digits");
                Ok(Expr::new(ExprKind::Int(n), span))
            }
            TokenKind::String => {
                self.pos += 1;
                Ok(Expr::new(ExprKind::Str(t.lexeme.clone()), span))
            }
            TokenKind::Ident => {
                self.pos += 1;
                if self.eat_punct("(") {
                    let args = self.list_until(")")?;
                    return Ok(Expr::new(ExprKind::Call(t.lexeme.clone(), args), span));
                }
                Ok(Expr::new(ExprKind::Ident(t.lexeme.clone()), span))
            }
            TokenKind::Punct if t.lexeme == "[" => {
                self.pos += 1;
                Ok(Expr::new(ExprKind::List(self.list_until("]")?), span))
            }
            TokenKind::Punct if t.lexeme == "(" => {
                self.pos += 1;
                let first = self.expr()?;
                if self.eat_punct(")") {
                    return Ok(first);
                }
                if !self.eat_punct(":") {
                    return Err(self.unexpected(&["`)`", "`:`"]));
                }
                let second = self.expr()?;
                self.expect_punct(":")?;
                let third = self.expr()?;
                self.expect_punct(")")?;
                Ok(Expr::new(ExprKind::Point(Box::new([first, second, third])), span))
            }
            _ => Err(self.unexpected(&EXPECTED)),
        }
    }
}
