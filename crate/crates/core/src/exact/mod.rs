//! Exact arithmetic: rationals, polynomials in the weight variable `m`, and
//! reduced rational functions of `m`.

mod poly;
mod ratfunc;
mod rational;

use std::fmt;

use serde::{Serialize, Serializer};

pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::{factorial, Rational};

/// A value that is either a concrete rational or a rational function of `m`.
///
/// Growth probabilities are concrete for every family except ordered trees
/// with a symbolic `m`. Equality compares values, so a number equals the
/// constant function with the same value.
#[derive(Clone, Debug)]
pub enum ExactValue {
    Number(Rational),
    Function(RationalFunction),
}

impl ExactValue {
    pub fn one() -> Self {
        ExactValue::Number(Rational::one())
    }

    pub fn zero() -> Self {
        ExactValue::Number(Rational::zero())
    }

    pub fn is_one(&self) -> bool {
        match self {
            ExactValue::Number(r) => r.is_one(),
            ExactValue::Function(f) => f.is_one(),
        }
    }

    pub fn to_function(&self) -> RationalFunction {
        match self {
            ExactValue::Number(r) => RationalFunction::constant(r.clone()),
            ExactValue::Function(f) => f.clone(),
        }
    }

    pub fn as_number(&self) -> Option<&Rational> {
        match self {
            ExactValue::Number(r) => Some(r),
            ExactValue::Function(_) => None,
        }
    }

    pub fn add(&self, rhs: &ExactValue) -> ExactValue {
        match (self, rhs) {
            (ExactValue::Number(a), ExactValue::Number(b)) => ExactValue::Number(a + b),
            _ => ExactValue::Function(&self.to_function() + &rhs.to_function()),
        }
    }

    pub fn mul(&self, rhs: &ExactValue) -> ExactValue {
        match (self, rhs) {
            (ExactValue::Number(a), ExactValue::Number(b)) => ExactValue::Number(a * b),
            _ => ExactValue::Function(&self.to_function() * &rhs.to_function()),
        }
    }
}

impl PartialEq for ExactValue {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ExactValue::Number(a), ExactValue::Number(b)) => a == b,
            (ExactValue::Function(f), ExactValue::Function(g)) => f == g,
            (ExactValue::Number(a), ExactValue::Function(f))
            | (ExactValue::Function(f), ExactValue::Number(a)) => f.as_constant().as_ref() == Some(a),
        }
    }
}

impl Eq for ExactValue {}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Number(r) => r.fmt(f),
            ExactValue::Function(g) => g.fmt(f),
        }
    }
}

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<Rational> for ExactValue {
    fn from(r: Rational) -> Self {
        ExactValue::Number(r)
    }
}

impl From<RationalFunction> for ExactValue {
    fn from(f: RationalFunction) -> Self {
        ExactValue::Function(f)
    }
}
