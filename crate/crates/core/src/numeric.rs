//! Exact rational scalars and the tagged [`Value`] used by every evaluator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rat_add(a: &Rational, b: &Rational) -> Rational {
    a + b
}

pub fn rat_sub(a: &Rational, b: &Rational) -> Rational {
    a - b
}

pub fn rat_mul(a: &Rational, b: &Rational) -> Rational {
    a * b
}

pub fn rat_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

/// Either an exact rational or a double. Mixing the two yields `Real`.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rational),
    Real(f64),
}

impl Value {
    pub fn zero() -> Self {
        Value::Exact(Rational::zero())
    }

    pub fn one() -> Self {
        Value::Exact(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Value::Exact(int(n))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(r) => r.is_zero(),
            Value::Real(x) => *x == 0.0,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Real(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => ratio_to_f64(r),
            Value::Real(x) => *x,
        }
    }

    /// Explicit Exact -> Real promotion.
    pub fn to_real(&self) -> Value {
        Value::Real(self.to_f64())
    }

    pub fn checked_div(&self, rhs: &Value) -> Result<Value> {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => rat_div(a, b).map(Value::Exact),
            _ => {
                let d = rhs.to_f64();
                if d == 0.0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Value::Real(self.to_f64() / d))
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> Value {
        match self {
            Value::Exact(r) => Value::Exact(num_traits::pow(r.clone(), e as usize)),
            Value::Real(x) => Value::Real(x.powi(e as i32)),
        }
    }

    pub fn abs(&self) -> Value {
        match self {
            Value::Exact(r) => Value::Exact(r.abs()),
            Value::Real(x) => Value::Real(x.abs()),
        }
    }
}

fn ratio_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // huge numerator or denominator: scale both down before dividing
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 1000).max(0) as usize;
    let shift_d = (db - 1000).max(0) as usize;
    let n = (r.numer() >> shift_n).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift_n as i64 - shift_d as i64) as i32)
}

macro_rules! value_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&Value> for &Value {
            type Output = Value;
            fn $method(self, rhs: &Value) -> Value {
                match (self, rhs) {
                    (Value::Exact(a), Value::Exact(b)) => Value::Exact(a $op b),
                    _ => Value::Real(self.to_f64() $op rhs.to_f64()),
                }
            }
        }
        impl $tr<Value> for Value {
            type Output = Value;
            fn $method(self, rhs: Value) -> Value {
                match (self, rhs) {
                    (Value::Exact(a), Value::Exact(b)) => Value::Exact(a $op b),
                    (a, b) => Value::Real(a.to_f64() $op b.to_f64()),
                }
            }
        }
    };
}

value_binop!(Add, add, +);
value_binop!(Sub, sub, -);
value_binop!(Mul, mul, *);

impl Neg for Value {
    type Output = Value;
    fn neg(self) -> Value {
        match self {
            Value::Exact(r) => Value::Exact(-r),
            Value::Real(x) => Value::Real(-x),
        }
    }
}

impl std::iter::Sum for Value {
    fn sum<I: Iterator<Item = Value>>(iter: I) -> Value {
        iter.fold(Value::zero(), |acc, v| acc + v)
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Exact(r)
    }
}

/// How two values compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    NotEqual,
}

/// Exact values compare bit-exactly; Real values within the absolute `tol`.
///
/// Mixed tags are rejected unless `promote` is set, in which case the exact
/// side is converted to a double and compared with `tol`.
pub fn value_cmp(a: &Value, b: &Value, tol: f64, promote: bool) -> Result<Comparison> {
    let equal = match (a, b) {
        (Value::Exact(x), Value::Exact(y)) => x == y,
        (Value::Real(x), Value::Real(y)) => (x - y).abs() <= tol,
        _ if promote => (a.to_f64() - b.to_f64()).abs() <= tol,
        _ => return Err(Error::MixedComparison),
    };
    Ok(if equal {
        Comparison::Equal
    } else {
        Comparison::NotEqual
    })
}

/// Renders `x` with 12 significant digits, like C's `%.12g`.
pub fn format_real(x: f64) -> String {
    format_sig(x, 12)
}

pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Rounds to 12 significant digits; serializing the result prints at most 12 digits.
pub fn round_sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.11e}", x).parse().unwrap_or(x)
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Value::Real(x) => f.write_str(&format_real(*x)),
        }
    }
}
