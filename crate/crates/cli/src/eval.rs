//! Evaluation of parsed statements against a session.
//!
//! `/` is `divide`, `^` is `pow_nat` for natural exponents and `power`
//! otherwise. Every library error carries the subexpression that raised it.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use fermat_core::{
    builtin, classify_generated, d_f, d_omega, eq_up_to, ext_with, power_with, taylor_fractional_check_with, FermatReal,
    FracPoly, GammaRational, IdealKind, Precision, Rational, Scalar, TaylorOutcome,
};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::display::{format_decomposition, DisplayOptions};
use crate::json::to_json_value;
use crate::parser::{parse_expr, parse_program, BinOp, Expr, Statement};
use crate::{CliError, Result};

/// Smooth functions usable by name.
const SMOOTH: [&str; 5] = ["sin", "cos", "exp", "log", "log1p"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Function {
    /// One of `sin`, `cos`, `exp`, `log`, `log1p`.
    Builtin(String),
    /// `inline('body')`: applied by substituting the argument for `param`.
    Inline { param: String, body: Expr },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Real(FermatReal),
    Bool(bool),
    Ideal(IdealKind),
    Vector(Vec<Value>),
    Outcome(TaylorOutcome),
    Function(Function),
    Str(String),
}

impl Value {
    pub fn as_real(&self) -> Option<&FermatReal> {
        match self {
            Value::Real(x) => Some(x),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Session {
    vars: HashMap<String, Value>,
    pub precision: Precision,
    pub display: DisplayOptions,
    pub json: bool,
}

impl Default for Session {
    fn default() -> Self {
        Session {
            vars: HashMap::new(),
            precision: Precision::default(),
            display: DisplayOptions::default(),
            json: false,
        }
    }
}

type Locals<'a> = &'a [(String, Value)];

fn type_error(e: &Expr, message: impl Into<String>) -> CliError {
    CliError::Type {
        expr: e.to_string(),
        message: message.into(),
    }
}

fn lib<T>(e: &Expr, r: fermat_core::Result<T>) -> Result<T> {
    r.map_err(|source| CliError::Eval {
        expr: e.to_string(),
        source,
    })
}

impl Session {
    pub fn new(precision: Precision, display: DisplayOptions, json: bool) -> Self {
        Session {
            vars: HashMap::new(),
            precision,
            display,
            json,
        }
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.vars.get(name)
    }

    /// Binds `name`, replacing any previous value.
    pub fn set(&mut self, name: impl Into<String>, value: Value) {
        self.vars.insert(name.into(), value);
    }

    /// Runs every statement; returns the bound name and value of each.
    /// Bare expressions are bound to `ans`.
    pub fn execute(&mut self, input: &str) -> Result<Vec<(String, Value)>> {
        let program = parse_program(input)?;
        let mut out = Vec::with_capacity(program.len());
        for stmt in program {
            let (name, expr) = match stmt {
                Statement::Assign(name, expr) => (name, expr),
                Statement::Expr(expr) => ("ans".to_string(), expr),
            };
            let value = self.eval(&expr)?;
            self.vars.insert(name.clone(), value.clone());
            out.push((name, value));
        }
        Ok(out)
    }

    /// `name = value` for each statement, as the REPL prints them.
    pub fn run_line(&mut self, input: &str) -> Result<Vec<String>> {
        let results = self.execute(input)?;
        Ok(results.iter().map(|(name, v)| format!("{name} = {}", self.format_named(name, v))).collect())
    }

    /// Value of the last statement.
    pub fn eval_str(&mut self, input: &str) -> Result<Value> {
        let mut results = self.execute(input)?;
        results
            .pop()
            .map(|(_, v)| v)
            .ok_or_else(|| CliError::Type {
                expr: input.to_string(),
                message: "nothing to evaluate".into(),
            })
    }

    pub fn format_value(&self, v: &Value) -> String {
        self.format_named("ans", v)
    }

    fn format_named(&self, name: &str, v: &Value) -> String {
        if self.json {
            return self.json_value(v).to_string();
        }
        match v {
            Value::Real(x) => format_decomposition(x, &self.display),
            Value::Bool(b) => b.to_string(),
            Value::Ideal(k) => k.to_string(),
            Value::Str(s) => s.clone(),
            Value::Outcome(o) => format_outcome(o),
            Value::Function(Function::Builtin(f)) => format!("Builtin function: {f}"),
            Value::Function(Function::Inline { param, body }) => {
                format!("Inline function: {name}({param}) = {body}")
            }
            Value::Vector(items) => {
                let mut s = String::from("[");
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        s.push_str(", ");
                    }
                    let _ = write!(s, "{}", self.format_named(name, item));
                }
                s.push(']');
                s
            }
        }
    }

    fn json_value(&self, v: &Value) -> serde_json::Value {
        match v {
            Value::Real(x) => to_json_value(x),
            Value::Bool(b) => json!(b),
            Value::Ideal(k) => json!(k.to_string()),
            Value::Str(s) => json!(s),
            Value::Outcome(o) => json!(format_outcome(o)),
            Value::Function(Function::Builtin(f)) => json!(f),
            Value::Function(Function::Inline { body, .. }) => json!(body.to_string()),
            Value::Vector(items) => serde_json::Value::Array(items.iter().map(|i| self.json_value(i)).collect()),
        }
    }

    pub fn eval(&self, e: &Expr) -> Result<Value> {
        self.eval_in(e, &[])
    }

    fn eval_in(&self, e: &Expr, locals: Locals<'_>) -> Result<Value> {
        match e {
            Expr::Num(r) => Ok(Value::Real(FermatReal::from_rational(r.clone()))),
            Expr::Dt(a) => Ok(Value::Real(lib(e, FermatReal::dt(a))?)),
            Expr::Str(s) => Ok(Value::Str(s.clone())),
            Expr::Var(name) => {
                if let Some((_, v)) = locals.iter().rev().find(|(n, _)| n == name) {
                    return Ok(v.clone());
                }
                if let Some(v) = self.vars.get(name) {
                    return Ok(v.clone());
                }
                if SMOOTH.contains(&name.as_str()) {
                    return Ok(Value::Function(Function::Builtin(name.clone())));
                }
                Err(CliError::Name(name.clone()))
            }
            Expr::Neg(inner) => {
                let x = self.real(inner, locals)?;
                Ok(Value::Real(-x))
            }
            Expr::Vector(items) => Ok(Value::Vector(
                items.iter().map(|i| self.eval_in(i, locals)).collect::<Result<_>>()?,
            )),
            Expr::Binary(op, l, r) => self.binary(e, *op, l, r, locals),
            Expr::Call(name, args) => self.call(e, name, args, locals),
        }
    }

    fn real(&self, e: &Expr, locals: Locals<'_>) -> Result<FermatReal> {
        match self.eval_in(e, locals)? {
            Value::Real(x) => Ok(x),
            _ => Err(type_error(e, "expected a Fermat real")),
        }
    }

    /// An exact standard real.
    fn rational(&self, e: &Expr, locals: Locals<'_>) -> Result<Rational> {
        let x = self.real(e, locals)?;
        if !x.is_standard() || !x.std_part().is_exact() {
            return Err(type_error(e, "expected an exact standard real"));
        }
        Ok(x.std_part().value().clone())
    }

    fn natural(&self, e: &Expr, locals: Locals<'_>) -> Result<u32> {
        let r = self.rational(e, locals)?;
        if !r.is_integer() || r.is_negative() {
            return Err(type_error(e, "expected a natural number"));
        }
        r.to_integer().to_u32().ok_or_else(|| type_error(e, "exponent too large"))
    }

    fn rationals(&self, e: &Expr, locals: Locals<'_>) -> Result<Vec<Rational>> {
        match e {
            Expr::Vector(items) => items.iter().map(|i| self.rational(i, locals)).collect(),
            _ => Err(type_error(e, "expected a vector of exact reals")),
        }
    }

    fn binary(&self, e: &Expr, op: BinOp, l: &Expr, r: &Expr, locals: Locals<'_>) -> Result<Value> {
        if op == BinOp::Pow {
            let x = self.real(l, locals)?;
            let p = self.rational(r, locals)?;
            if p.is_integer() && !p.is_negative() {
                let k = p.to_integer().to_u32().ok_or_else(|| type_error(r, "exponent too large"))?;
                return Ok(Value::Real(x.pow_nat(k)));
            }
            return Ok(Value::Real(lib(e, power_with(&x, &p, self.precision))?));
        }
        let x = self.real(l, locals)?;
        let y = self.real(r, locals)?;
        let cmp = |want: fn(Ordering) -> bool| -> Result<Value> {
            Ok(Value::Bool(want(lib(e, x.compare_with(&y, self.precision))?)))
        };
        match op {
            BinOp::Add => Ok(Value::Real(&x + &y)),
            BinOp::Sub => Ok(Value::Real(&x - &y)),
            BinOp::Mul => Ok(Value::Real(&x * &y)),
            BinOp::Div => Ok(Value::Real(lib(e, x.divide(&y))?)),
            BinOp::Eq => cmp(|o| o == Ordering::Equal),
            BinOp::Ne => cmp(|o| o != Ordering::Equal),
            BinOp::Lt => cmp(|o| o == Ordering::Less),
            BinOp::Le => cmp(|o| o != Ordering::Greater),
            BinOp::Gt => cmp(|o| o == Ordering::Greater),
            BinOp::Ge => cmp(|o| o != Ordering::Less),
            BinOp::Pow => unreachable!("handled above"),
        }
    }

    fn arity(e: &Expr, args: &[Expr], min: usize, max: usize) -> Result<()> {
        if args.len() < min || args.len() > max {
            let want = if min == max { min.to_string() } else { format!("{min} to {max}") };
            return Err(type_error(e, format!("expected {want} arguments, got {}", args.len())));
        }
        Ok(())
    }

    fn call(&self, e: &Expr, name: &str, args: &[Expr], locals: Locals<'_>) -> Result<Value> {
        let bound = locals.iter().rev().find(|(n, _)| n == name).map(|(_, v)| v).or_else(|| self.vars.get(name));
        if let Some(Value::Function(f)) = bound {
            Self::arity(e, args, 1, 1)?;
            let x = self.real(&args[0], locals)?;
            return self.apply(e, f, x);
        }
        let real = |i: usize| self.real(&args[i], locals);
        let prec = self.precision;
        let value = match name {
            "dt" => {
                Self::arity(e, args, 1, 1)?;
                let a = self.rational(&args[0], locals)?;
                Value::Real(lib(e, FermatReal::dt(&a))?)
            }
            "FermatReal" => {
                Self::arity(e, args, 2, 3)?;
                Value::Real(self.construct(e, &args[0], &args[1], locals)?)
            }
            "sqrt" => {
                Self::arity(e, args, 1, 1)?;
                Value::Real(lib(e, power_with(&real(0)?, &Rational::new(1.into(), 2.into()), prec))?)
            }
            "nthroot" => {
                Self::arity(e, args, 2, 2)?;
                let n = self.natural(&args[1], locals)?;
                if n == 0 {
                    return Err(type_error(e, "the 0-th root is undefined"));
                }
                Value::Real(lib(e, power_with(&real(0)?, &Rational::new(1.into(), n.into()), prec))?)
            }
            "abs" => {
                Self::arity(e, args, 1, 1)?;
                let x = real(0)?;
                let negative = lib(e, x.signum_with(prec))? == Ordering::Less;
                Value::Real(if negative { -x } else { x })
            }
            _ if SMOOTH.contains(&name) => {
                Self::arity(e, args, 1, 1)?;
                let x = real(0)?;
                return self.apply(e, &Function::Builtin(name.to_string()), x);
            }
            "st" => {
                Self::arity(e, args, 1, 1)?;
                Value::Real(FermatReal::from_scalar(real(0)?.std_part().clone()))
            }
            "omega" => {
                Self::arity(e, args, 1, 2)?;
                let x = real(0)?;
                let w = if args.len() == 2 {
                    // 0 past the last term, like the standard part.
                    x.order_i(self.natural(&args[1], locals)? as usize)
                } else {
                    x.order()
                };
                Value::Real(FermatReal::from_rational(w))
            }
            "decomposition" => {
                Self::arity(e, args, 1, 1)?;
                Value::Real(real(0)?)
            }
            "eqUpTo" => {
                Self::arity(e, args, 3, 3)?;
                let k = self.rational(&args[0], locals)?;
                Value::Bool(eq_up_to(&k, &real(1)?, &real(2)?))
            }
            "dF" => {
                Self::arity(e, args, 2, 2)?;
                Value::Real(FermatReal::from_rational(d_f(&real(0)?, &real(1)?)))
            }
            "dOmega" => {
                Self::arity(e, args, 2, 2)?;
                Value::Real(FermatReal::from_rational(d_omega(&real(0)?, &real(1)?)))
            }
            "isreal" => {
                Self::arity(e, args, 1, 1)?;
                Value::Bool(real(0)?.is_standard())
            }
            "isinfinitesimal" => {
                Self::arity(e, args, 1, 1)?;
                Value::Bool(real(0)?.is_infinitesimal())
            }
            "isinvertible" => {
                Self::arity(e, args, 1, 1)?;
                Value::Bool(real(0)?.is_invertible())
            }
            "classifyIdeal" => {
                let mut gens = Vec::new();
                for a in args {
                    match self.eval_in(a, locals)? {
                        Value::Real(x) => gens.push(x),
                        Value::Vector(items) => {
                            for item in items {
                                match item {
                                    Value::Real(x) => gens.push(x),
                                    _ => return Err(type_error(a, "generators must be Fermat reals")),
                                }
                            }
                        }
                        _ => return Err(type_error(a, "generators must be Fermat reals")),
                    }
                }
                Value::Ideal(lib(e, classify_generated(&gens))?)
            }
            "caputoCheck" => {
                Self::arity(e, args, 4, 6)?;
                let alpha = self.rational(&args[0], locals)?;
                let n = self.natural(&args[1], locals)?;
                let h = real(2)?;
                let coeffs = self.rationals(&args[3], locals)?;
                let exponents = match args.get(4) {
                    Some(a) => self.rationals(a, locals)?,
                    None => (0..coeffs.len()).map(|i| &alpha * Rational::from_integer(i.into())).collect(),
                };
                if exponents.len() != coeffs.len() {
                    return Err(type_error(e, "coefficients and exponents differ in length"));
                }
                let base = match args.get(5) {
                    Some(a) => self.rational(a, locals)?,
                    None => Rational::zero(),
                };
                let terms = coeffs.into_iter().map(GammaRational::from_rational).zip(exponents).collect();
                let f = lib(e, FracPoly::new(base, terms))?;
                Value::Outcome(lib(e, taylor_fractional_check_with(&f, &alpha, n, &h, prec))?)
            }
            "ext" => {
                Self::arity(e, args, 2, 2)?;
                let f = match self.eval_in(&args[0], locals)? {
                    Value::Function(f) => f,
                    Value::Str(s) if SMOOTH.contains(&s.as_str()) => Function::Builtin(s),
                    _ => return Err(type_error(&args[0], "expected a function")),
                };
                return self.apply(e, &f, real(1)?);
            }
            "inline" => {
                Self::arity(e, args, 1, 2)?;
                let text = match self.eval_in(&args[0], locals)? {
                    Value::Str(s) => s,
                    _ => return Err(type_error(&args[0], "expected a quoted expression")),
                };
                let body = parse_expr(&text)?;
                let param = match args.get(1) {
                    Some(a) => match self.eval_in(a, locals)? {
                        Value::Str(s) => s,
                        _ => return Err(type_error(a, "expected a quoted variable name")),
                    },
                    None => infer_param(e, &body)?,
                };
                Value::Function(Function::Inline { param, body })
            }
            _ => return Err(CliError::Name(name.to_string())),
        };
        Ok(value)
    }

    /// `FermatReal([s0 s1 ... sn], [w1 ... wn])`.
    fn construct(&self, e: &Expr, s: &Expr, w: &Expr, locals: Locals<'_>) -> Result<FermatReal> {
        let parts = match self.eval_in(s, locals)? {
            Value::Vector(items) if !items.is_empty() => items,
            _ => return Err(type_error(s, "expected a nonempty vector of standard parts")),
        };
        let orders = self.rationals(w, locals)?;
        if orders.len() + 1 != parts.len() {
            return Err(type_error(e, "expected one more standard part than orders"));
        }
        let scalars = parts
            .into_iter()
            .map(|v| match v {
                Value::Real(x) if x.is_standard() => Ok(x.std_part().clone()),
                _ => Err(type_error(s, "standard parts must be standard reals")),
            })
            .collect::<Result<Vec<Scalar>>>()?;
        for a in &orders {
            if *a < Rational::one() {
                return Err(type_error(w, "orders must be at least 1"));
            }
        }
        let mut it = scalars.into_iter();
        let std = it.next().expect("nonempty");
        Ok(FermatReal::normalize(std, it.zip(orders)))
    }

    fn apply(&self, e: &Expr, f: &Function, x: FermatReal) -> Result<Value> {
        match f {
            Function::Builtin(name) => {
                let g = lib(e, builtin(name))?;
                Ok(Value::Real(lib(e, ext_with(&g, &x, self.precision))?))
            }
            Function::Inline { param, body } => {
                let locals = [(param.clone(), Value::Real(x))];
                self.eval_in(body, &locals)
            }
        }
    }
}

/// The single free variable of an inline body; `x` when there is none.
fn infer_param(e: &Expr, body: &Expr) -> Result<String> {
    fn collect(e: &Expr, out: &mut BTreeSet<String>) {
        match e {
            Expr::Var(v) if !SMOOTH.contains(&v.as_str()) => {
                out.insert(v.clone());
            }
            Expr::Neg(a) => collect(a, out),
            Expr::Binary(_, a, b) => {
                collect(a, out);
                collect(b, out);
            }
            Expr::Call(_, args) | Expr::Vector(args) => args.iter().for_each(|a| collect(a, out)),
            _ => {}
        }
    }
    let mut free = BTreeSet::new();
    collect(body, &mut free);
    match free.len() {
        0 => Ok("x".into()),
        1 => Ok(free.into_iter().next().expect("one element")),
        _ => Err(type_error(e, "several free variables; name the argument with inline('body', 'var')")),
    }
}

fn format_outcome(o: &TaylorOutcome) -> String {
    match o {
        TaylorOutcome::Exact => "exact".into(),
        TaylorOutcome::Holds(tol) => format!("holds within {}", fermat_core::format_rational(tol)),
        TaylorOutcome::Fails(d) => format!("fails by {}", fermat_core::format_rational(d)),
    }
}
