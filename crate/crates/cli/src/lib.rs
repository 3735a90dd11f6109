//! Expression language, REPL and law-suite runner for Fermat reals.
//!
//! ```
//! use fermat_cli::Session;
//!
//! let mut s = Session::default();
//! let out = s.run_line("x=2+3*dt(2)-1/3*dt(1)").unwrap();
//! assert_eq!(out, vec!["x = 2 + 3*dt_2 - 1/3*dt".to_string()]);
//! ```

pub mod display;
pub mod eval;
pub mod json;
pub mod lexer;
pub mod parser;
pub mod repl;
pub mod suites;

use thiserror::Error;

pub use display::{format_decimal, format_decomposition, rats, DisplayOptions};
pub use eval::{Function, Session, Value};
pub use json::{from_json, to_json, JsonError};
pub use parser::{parse_expr, parse_program, BinOp, Expr, Statement};
pub use suites::{run_suite, LawReport, SuiteConfig, SuiteReport, SUITES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {col}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl SyntaxError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        SyntaxError {
            line,
            col,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("undefined name `{0}`")]
    Name(String),
    /// A library error, with the subexpression that raised it.
    #[error("in `{expr}`: {source}")]
    Eval {
        expr: String,
        source: fermat_core::FermatError,
    },
    #[error("in `{expr}`: {message}")]
    Type { expr: String, message: String },
    #[error(transparent)]
    Json(#[from] JsonError),
    #[error("unknown suite `{0}`; expected one of core, metrics, powers, ideals, fractional, all")]
    UnknownSuite(String),
}

impl CliError {
    /// Process exit status: 2 for syntax errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
