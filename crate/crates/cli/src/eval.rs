//! Evaluation of parsed expressions into library values.

use std::fmt;

use krv_core::derivation::Derivation;
use krv_core::free_assoc::{NcPoly, TensorPoly};
use krv_core::krv::{delta, divergence};
use krv_core::lie::{partial_lie, LiePoly};
use krv_core::linalg::Rational;
use krv_core::trace::TracePoly;
use num_traits::One;

use crate::error::CliError;
use crate::parse::{Expr, ExprKind, Flavor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Nc(NcPoly),
    Lie(LiePoly),
    Trace(TracePoly),
    Der(Derivation),
    Tensor(TensorPoly),
}

impl Value {
    pub fn sort(&self) -> &'static str {
        match self {
            Value::Nc(_) => "NcPoly",
            Value::Lie(_) => "LiePoly",
            Value::Trace(_) => "TracePoly",
            Value::Der(_) => "Derivation",
            Value::Tensor(_) => "TensorPoly",
        }
    }

    /// The associative view of `Nc` and `Lie` values.
    pub fn as_nc(&self) -> Option<NcPoly> {
        match self {
            Value::Nc(a) => Some(a.clone()),
            Value::Lie(l) => Some(l.embedding().clone()),
            _ => None,
        }
    }

    /// `Lie` values, and `Nc` values that happen to lie in `L`.
    pub fn as_lie(&self) -> Option<LiePoly> {
        match self {
            Value::Lie(l) => Some(l.clone()),
            Value::Nc(a) => LiePoly::decompose(a).ok(),
            _ => None,
        }
    }

    fn as_scalar(&self) -> Option<Rational> {
        match self {
            Value::Nc(a) if a.total_degree() == Some(0) => Some(a.epsilon()),
            _ => None,
        }
    }

    fn scale(&self, c: &Rational) -> Value {
        match self {
            Value::Nc(a) => Value::Nc(a.scale(c)),
            Value::Lie(l) => Value::Lie(l.scale(c)),
            Value::Trace(f) => Value::Trace(f.scale(c)),
            Value::Der(u) => Value::Der(u.scale(c)),
            Value::Tensor(t) => Value::Tensor(t.scale(c)),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Nc(a) => write!(f, "{a}"),
            Value::Lie(l) => write!(f, "{l}"),
            Value::Trace(t) => write!(f, "{t}"),
            Value::Der(u) => write!(f, "{u}"),
            Value::Tensor(t) => write!(f, "{t}"),
        }
    }
}

fn type_error(pos: usize, context: &str, expected: &str, actual: &Value) -> CliError {
    CliError::Type { pos, context: context.to_string(), expected: expected.to_string(), actual: actual.sort() }
}

fn nc(e: &Expr, context: &str) -> Result<NcPoly, CliError> {
    let v = eval(e)?;
    v.as_nc().ok_or_else(|| type_error(e.pos, context, "NcPoly", &v))
}

fn lie(e: &Expr, context: &str) -> Result<LiePoly, CliError> {
    let v = eval(e)?;
    v.as_lie().ok_or_else(|| type_error(e.pos, context, "LiePoly", &v))
}

fn trace(e: &Expr, context: &str) -> Result<TracePoly, CliError> {
    match eval(e)? {
        Value::Trace(f) => Ok(f),
        v => Err(type_error(e.pos, context, "TracePoly", &v)),
    }
}

fn add(a: Value, b: Value, pos: usize, context: &str) -> Result<Value, CliError> {
    Ok(match (a, b) {
        (Value::Lie(l), Value::Lie(m)) => Value::Lie(l.add(&m)),
        (Value::Trace(f), Value::Trace(g)) => Value::Trace(&f + &g),
        (Value::Der(u), Value::Der(v)) => Value::Der(u.add(&v)),
        (Value::Tensor(s), Value::Tensor(t)) => Value::Tensor(&s + &t),
        (a, b) => match (a.as_nc(), b.as_nc()) {
            (Some(p), Some(q)) => Value::Nc(&p + &q),
            (Some(_), None) => return Err(type_error(pos, context, "NcPoly", &b)),
            _ => return Err(type_error(pos, context, a.sort(), &b)),
        },
    })
}

fn negate(v: Value) -> Value {
    v.scale(&-Rational::one())
}

pub fn eval(e: &Expr) -> Result<Value, CliError> {
    Ok(match &e.kind {
        ExprKind::Scalar(c) => Value::Nc(NcPoly::scalar(c.clone())),
        ExprKind::Word(w) => {
            if w.len() == 1 {
                Value::Lie(LiePoly::gen(w.letter(0)))
            } else {
                Value::Nc(NcPoly::word(*w))
            }
        }
        ExprKind::Sum(a, b) => add(eval(a)?, eval(b)?, b.pos, "'+'")?,
        ExprKind::Difference(a, b) => add(eval(a)?, negate(eval(b)?), b.pos, "'-'")?,
        ExprKind::Neg(a) => negate(eval(a)?),
        ExprKind::Product(a, b) => {
            let (va, vb) = (eval(a)?, eval(b)?);
            if let Some(c) = va.as_scalar() {
                vb.scale(&c)
            } else if let Some(c) = vb.as_scalar() {
                va.scale(&c)
            } else {
                let p = va.as_nc().ok_or_else(|| type_error(a.pos, "'*'", "NcPoly", &va))?;
                let q = vb.as_nc().ok_or_else(|| type_error(b.pos, "'*'", "NcPoly", &vb))?;
                Value::Nc(&p * &q)
            }
        }
        ExprKind::Bracket(a, b) => match (eval(a)?, eval(b)?) {
            (Value::Lie(l), Value::Lie(m)) => Value::Lie(l.bracket(&m)),
            (Value::Der(u), Value::Der(v)) => Value::Der(u.bracket(&v)),
            (va, vb) => {
                let p = va.as_nc().ok_or_else(|| type_error(a.pos, "bracket", "NcPoly", &va))?;
                let q = vb.as_nc().ok_or_else(|| type_error(b.pos, "bracket", "NcPoly", &vb))?;
                Value::Nc(p.commutator(&q))
            }
        },
        ExprKind::AdPower { a, k, b } => {
            let x = nc(a, "ad")?;
            match eval(b)? {
                Value::Lie(l) => Value::Lie(LiePoly::ad_power(&x, *k, &l)),
                Value::Nc(p) => Value::Nc(NcPoly::ad_power(&x, *k, &p)),
                v => return Err(type_error(b.pos, "ad", "NcPoly", &v)),
            }
        }
        ExprKind::Tr(a) => Value::Trace(TracePoly::tr(&nc(a, "tr")?)),
        ExprKind::Theta(a, b) => {
            let (l, m) = (lie(a, "theta")?, lie(b, "theta")?);
            Value::Trace(TracePoly::from_pair(l.embedding(), m.embedding()))
        }
        ExprKind::Delta(n) => Value::Trace(delta(*n)?.into_value()),
        ExprKind::Partial { flavor, gen, arg } => match flavor {
            Flavor::Assoc => Value::Tensor(nc(arg, "dA")?.partial(*gen)),
            Flavor::Trace => Value::Nc(trace(arg, "dF")?.partial(*gen)),
            Flavor::Lie => Value::Nc(partial_lie(&nc(arg, "dL")?, *gen)),
        },
        ExprKind::Div(a) => match eval(a)? {
            Value::Trace(f) => Value::Trace(divergence(&Derivation::from_trace(&f))?),
            Value::Der(u) => Value::Trace(divergence(&u)?),
            v => return Err(type_error(a.pos, "div", "TracePoly", &v)),
        },
        ExprKind::Phi(a) => Value::Der(Derivation::from_trace(&trace(a, "phi")?)),
        ExprKind::Der(a, b) => Value::Der(Derivation::new(nc(a, "der")?, nc(b, "der")?)),
        ExprKind::Tensor(a, b) => Value::Tensor(TensorPoly::simple(&nc(a, "tensor")?, &nc(b, "tensor")?)),
    })
}

/// Parses and evaluates `src`.
pub fn eval_str(src: &str) -> Result<Value, CliError> {
    eval(&crate::parse::parse(src)?)
}
