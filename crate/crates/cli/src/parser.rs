//! Precedence-climbing parser.
//!
//! From loosest to tightest: comparisons, `+ -`, `* /`, unary minus, `^`.
//! `^` is right-associative and its exponent is itself a unary expression,
//! so `-x^2 = -(x^2)` and `x^-1` parses.
//!
//! Inside `[...]` elements may be separated by whitespace alone, as in
//! `[2 3 -1/3]`: a sign with space before it and none after starts a new
//! element.

use std::fmt;

use fermat_core::{format_rational, Rational};
use num_traits::{One, Signed};

use crate::lexer::{tokenize, Token, TokenKind};
use crate::SyntaxError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
            BinOp::Eq => "==",
            BinOp::Ne => "~=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Eq | BinOp::Ne | BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => 1,
            BinOp::Add | BinOp::Sub => 2,
            BinOp::Mul | BinOp::Div => 3,
            BinOp::Pow => 5,
        }
    }
}

/// Unary minus sits between `* /` and `^`.
const NEG_PRECEDENCE: u8 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Dt(Rational),
    Str(String),
    Var(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
    Vector(Vec<Expr>),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(op, ..) => op.precedence(),
            Expr::Neg(_) => NEG_PRECEDENCE,
            Expr::Num(r) if r.is_negative() || !r.is_integer() => NEG_PRECEDENCE,
            _ => u8::MAX,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Source-like rendering, parenthesized only where precedence needs it.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => write!(f, "{}", format_rational(r)),
            Expr::Dt(a) if a.is_one() => write!(f, "dt"),
            Expr::Dt(a) => write!(f, "dt_{}", format_rational(a)),
            Expr::Str(s) => write!(f, "'{s}'"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.fmt_child(f, NEG_PRECEDENCE + 1)
            }
            Expr::Binary(op, l, r) => {
                let p = op.precedence();
                // Left-associative operators need the right child tighter;
                // `^` needs it on the left.
                let (lmin, rmin) = if *op == BinOp::Pow { (p + 1, NEG_PRECEDENCE) } else { (p, p + 1) };
                l.fmt_child(f, lmin)?;
                match op {
                    BinOp::Mul | BinOp::Div | BinOp::Pow => write!(f, "{}", op.symbol())?,
                    _ => write!(f, " {} ", op.symbol())?,
                }
                r.fmt_child(f, rmin)
            }
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Expr::Vector(items) => {
                write!(f, "[")?;
                for (i, a) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, "]")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Assign(String, Expr),
    Expr(Expr),
}

pub fn parse_program(input: &str) -> Result<Vec<Statement>, SyntaxError> {
    let tokens = tokenize(input)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        juxtapose: Vec::new(),
    };
    let mut out = Vec::new();
    loop {
        while p.peek().kind == TokenKind::Sep {
            p.pos += 1;
        }
        if p.peek().kind == TokenKind::Eof {
            return Ok(out);
        }
        out.push(p.statement()?);
        match p.peek().kind {
            TokenKind::Sep | TokenKind::Eof => {}
            _ => return Err(p.unexpected()),
        }
    }
}

/// Parses exactly one expression.
pub fn parse_expr(input: &str) -> Result<Expr, SyntaxError> {
    let program = parse_program(input)?;
    match <[Statement; 1]>::try_from(program) {
        Ok([Statement::Expr(e)]) => Ok(e),
        _ => Err(SyntaxError::new(1, 1, "expected a single expression")),
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    /// One entry per open bracket: whether whitespace separates elements.
    juxtapose: Vec<bool>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Token {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.kind != TokenKind::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self) -> SyntaxError {
        let t = self.peek();
        SyntaxError::new(t.line, t.col, format!("unexpected {}", t.kind))
    }

    fn expect(&mut self, kind: TokenKind) -> Result<Token, SyntaxError> {
        if self.peek().kind == kind {
            Ok(self.next())
        } else {
            let t = self.peek();
            Err(SyntaxError::new(t.line, t.col, format!("expected {kind}, found {}", t.kind)))
        }
    }

    fn statement(&mut self) -> Result<Statement, SyntaxError> {
        if let TokenKind::Ident(name) = &self.peek().kind {
            if self.peek_at(1).kind == TokenKind::Assign {
                let name = name.clone();
                self.pos += 2;
                return Ok(Statement::Assign(name, self.expr(0)?));
            }
        }
        Ok(Statement::Expr(self.expr(0)?))
    }

    /// Whether the current sign token starts a new vector element.
    fn splits_element(&self) -> bool {
        let t = self.peek();
        self.juxtapose.last() == Some(&true)
            && matches!(t.kind, TokenKind::Plus | TokenKind::Minus)
            && t.space_before
            && !t.space_after
    }

    fn binop(&self) -> Option<BinOp> {
        Some(match self.peek().kind {
            TokenKind::Plus => BinOp::Add,
            TokenKind::Minus => BinOp::Sub,
            TokenKind::Star => BinOp::Mul,
            TokenKind::Slash => BinOp::Div,
            TokenKind::Eq => BinOp::Eq,
            TokenKind::Ne => BinOp::Ne,
            TokenKind::Lt => BinOp::Lt,
            TokenKind::Le => BinOp::Le,
            TokenKind::Gt => BinOp::Gt,
            TokenKind::Ge => BinOp::Ge,
            _ => return None,
        })
    }

    /// Binary operators of precedence at least `min` (all left-associative).
    fn expr(&mut self, min: u8) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.binop() {
            if op.precedence() < min.max(1) || self.splits_element() {
                break;
            }
            self.next();
            let rhs = self.expr(op.precedence() + 1)?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().kind {
            TokenKind::Minus => {
                self.next();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            TokenKind::Plus => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.primary()?;
        if self.peek().kind == TokenKind::Caret {
            self.next();
            let exponent = self.unary()?;
            return Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        let t = self.peek().clone();
        match t.kind {
            TokenKind::Num(r) => {
                self.next();
                Ok(Expr::Num(r))
            }
            TokenKind::Dt(a) => {
                self.next();
                Ok(Expr::Dt(a))
            }
            TokenKind::Str(s) => {
                self.next();
                Ok(Expr::Str(s))
            }
            TokenKind::Ident(name) => {
                self.next();
                if self.peek().kind == TokenKind::LParen {
                    self.next();
                    self.juxtapose.push(false);
                    let args = self.list(TokenKind::RParen)?;
                    self.juxtapose.pop();
                    Ok(Expr::Call(name, args))
                } else if name == "dt" {
                    Ok(Expr::Dt(Rational::one()))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            TokenKind::LParen => {
                self.next();
                self.juxtapose.push(false);
                let e = self.expr(0)?;
                self.juxtapose.pop();
                self.expect(TokenKind::RParen)?;
                Ok(e)
            }
            TokenKind::LBracket => {
                self.next();
                self.juxtapose.push(true);
                let items = self.list(TokenKind::RBracket)?;
                self.juxtapose.pop();
                Ok(Expr::Vector(items))
            }
            _ => Err(self.unexpected()),
        }
    }

    /// Comma-separated items up to `close`; inside brackets whitespace also
    /// separates.
    fn list(&mut self, close: TokenKind) -> Result<Vec<Expr>, SyntaxError> {
        let mut items = Vec::new();
        if self.peek().kind == close {
            self.next();
            return Ok(items);
        }
        loop {
            items.push(self.expr(0)?);
            let t = self.peek();
            if t.kind == close {
                self.next();
                return Ok(items);
            }
            if t.kind == TokenKind::Comma {
                self.next();
                continue;
            }
            let whitespace_split = self.juxtapose.last() == Some(&true) && t.space_before && t.kind != TokenKind::Eof;
            if !whitespace_split {
                return Err(self.unexpected());
            }
        }
    }
}
