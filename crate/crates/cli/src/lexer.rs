//! Tokens of the expression language.
//!
//! `dt_<p>` and `dt_<p>/<q>` are single tokens so that formatted output
//! (`1/2*dt_3/2`) reads back as the same number. A bare `dt` is left as an
//! identifier; the parser turns it into `dt_1` unless a call follows.

use std::fmt;

use fermat_core::{format_rational, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    /// Integer or decimal literal, read exactly.
    Num(Rational),
    Ident(String),
    /// `dt_<p>` or `dt_<p>/<q>`.
    Dt(Rational),
    Str(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Assign,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    /// Newline or `;`.
    Sep,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Num(r) => write!(f, "{}", format_rational(r)),
            TokenKind::Ident(s) => write!(f, "{s}"),
            TokenKind::Dt(a) if a.is_one() => write!(f, "dt"),
            TokenKind::Dt(a) => write!(f, "dt_{}", format_rational(a)),
            TokenKind::Str(s) => write!(f, "'{s}'"),
            TokenKind::Plus => write!(f, "+"),
            TokenKind::Minus => write!(f, "-"),
            TokenKind::Star => write!(f, "*"),
            TokenKind::Slash => write!(f, "/"),
            TokenKind::Caret => write!(f, "^"),
            TokenKind::LParen => write!(f, "("),
            TokenKind::RParen => write!(f, ")"),
            TokenKind::LBracket => write!(f, "["),
            TokenKind::RBracket => write!(f, "]"),
            TokenKind::Comma => write!(f, ","),
            TokenKind::Assign => write!(f, "="),
            TokenKind::Eq => write!(f, "=="),
            TokenKind::Ne => write!(f, "~="),
            TokenKind::Lt => write!(f, "<"),
            TokenKind::Le => write!(f, "<="),
            TokenKind::Gt => write!(f, ">"),
            TokenKind::Ge => write!(f, ">="),
            TokenKind::Sep => write!(f, "end of statement"),
            TokenKind::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub col: usize,
    /// Whitespace (not a newline) directly precedes the token.
    pub space_before: bool,
    /// Whitespace directly follows the token.
    pub space_after: bool,
}

/// Parses `123`, `0.25` or `1.5e-3` exactly.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

pub fn tokenize(input: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = input.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let mut space_before = false;

    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            push(&mut tokens, TokenKind::Sep, line, col, space_before);
            i += 1;
            line += 1;
            col = 1;
            space_before = false;
            continue;
        }
        if c.is_whitespace() {
            mark_space_after(&mut tokens);
            i += 1;
            col += 1;
            space_before = true;
            continue;
        }
        if c == '%' || c == '#' {
            // Comment to end of line.
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                col += 1;
            }
            continue;
        }
        let start_col = col;
        let (kind, len) = if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
            lex_number(&chars[i..], line, start_col)?
        } else if c.is_alphabetic() || c == '_' {
            lex_word(&chars[i..])
        } else if c == '\'' || c == '"' {
            let close = chars[i + 1..].iter().position(|&d| d == c || d == '\n');
            match close {
                Some(n) if chars[i + 1 + n] == c => (TokenKind::Str(chars[i + 1..i + 1 + n].iter().collect()), n + 2),
                _ => return Err(SyntaxError::new(line, start_col, "unterminated string")),
            }
        } else {
            let next = chars.get(i + 1).copied();
            match (c, next) {
                ('=', Some('=')) => (TokenKind::Eq, 2),
                ('~', Some('=')) | ('!', Some('=')) => (TokenKind::Ne, 2),
                ('<', Some('=')) => (TokenKind::Le, 2),
                ('>', Some('=')) => (TokenKind::Ge, 2),
                ('+', _) => (TokenKind::Plus, 1),
                ('-', _) => (TokenKind::Minus, 1),
                ('*', _) => (TokenKind::Star, 1),
                ('/', _) => (TokenKind::Slash, 1),
                ('^', _) => (TokenKind::Caret, 1),
                ('(', _) => (TokenKind::LParen, 1),
                (')', _) => (TokenKind::RParen, 1),
                ('[', _) => (TokenKind::LBracket, 1),
                (']', _) => (TokenKind::RBracket, 1),
                (',', _) => (TokenKind::Comma, 1),
                ('=', _) => (TokenKind::Assign, 1),
                ('<', _) => (TokenKind::Lt, 1),
                ('>', _) => (TokenKind::Gt, 1),
                (';', _) => (TokenKind::Sep, 1),
                _ => return Err(SyntaxError::new(line, start_col, format!("unexpected character '{c}'"))),
            }
        };
        push(&mut tokens, kind, line, start_col, space_before);
        space_before = false;
        i += len;
        col += len;
    }
    push(&mut tokens, TokenKind::Eof, line, col, space_before);
    Ok(tokens)
}

fn push(tokens: &mut Vec<Token>, kind: TokenKind, line: usize, col: usize, space_before: bool) {
    tokens.push(Token {
        kind,
        line,
        col,
        space_before,
        space_after: false,
    });
}

fn mark_space_after(tokens: &mut [Token]) {
    if let Some(last) = tokens.last_mut() {
        last.space_after = true;
    }
}

fn lex_number(chars: &[char], line: usize, col: usize) -> Result<(TokenKind, usize), SyntaxError> {
    let mut n = chars.iter().take_while(|c| c.is_ascii_digit()).count();
    if chars.get(n) == Some(&'.') {
        n += 1;
        n += chars[n..].iter().take_while(|c| c.is_ascii_digit()).count();
    }
    if matches!(chars.get(n), Some('e' | 'E')) {
        let mut m = n + 1;
        if matches!(chars.get(m), Some('+' | '-')) {
            m += 1;
        }
        let digits = chars[m.min(chars.len())..].iter().take_while(|c| c.is_ascii_digit()).count();
        if digits > 0 {
            n = m + digits;
        }
    }
    let text: String = chars[..n].iter().collect();
    parse_decimal(&text)
        .map(|r| (TokenKind::Num(r), n))
        .ok_or_else(|| SyntaxError::new(line, col, format!("malformed number '{text}'")))
}

fn lex_word(chars: &[char]) -> (TokenKind, usize) {
    let n = chars.iter().take_while(|c| c.is_alphanumeric() || **c == '_').count();
    let word: String = chars[..n].iter().collect();
    if let Some(digits) = word.strip_prefix("dt_") {
        if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
            let p: BigInt = digits.parse().expect("digits");
            // A directly attached `/<q>` belongs to the order.
            if chars.get(n) == Some(&'/') {
                let q_len = chars[n + 1..].iter().take_while(|c| c.is_ascii_digit()).count();
                let followed_by_word = chars.get(n + 1 + q_len).is_some_and(|c| c.is_alphanumeric() || *c == '_' || *c == '.');
                if q_len > 0 && !followed_by_word {
                    let q: BigInt = chars[n + 1..n + 1 + q_len].iter().collect::<String>().parse().expect("digits");
                    if !q.is_zero() {
                        return (TokenKind::Dt(Rational::new(p, q)), n + 1 + q_len);
                    }
                }
            }
            return (TokenKind::Dt(Rational::from_integer(p)), n);
        }
    }
    (TokenKind::Ident(word), n)
}
