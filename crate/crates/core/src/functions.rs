//! Arithmetic functions: the L-additive framework and the built-in catalog.
//!
//! An L-additive function is fixed by its values on primes together with a
//! completely multiplicative companion `h` (also given on primes):
//!
//! ```text
//! f(n) = h(n) * sum_{p^a || n} a * f(p) / h(p),     h(n) = prod_{p^a || n} h(p)^a
//! ```
//!
//! Everything else in this module is a [`FunctionHandle`]: a named, pure
//! evaluator over factorizations, plus pointwise combinators.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expr::PrimeExpr;
use crate::factor::Factorization;
use crate::numeric::{int, Rational, Value};

/// Names accepted by [`builtin`].
pub const BUILTIN_CATALOG: &[&str] = &[
    "Ld", "Omega", "Omega_k", "A", "e", "one", "log", "beta_k", "omega", "beta", "mu", "tau",
    "delta",
];

/// Names accepted by [`LAdditiveFunction::builtin`].
pub const L_ADDITIVE_CATALOG: &[&str] = &["Omega", "Ld", "A", "delta", "log"];

/// Allowed range for the shift `k` of `beta_k`.
pub const BETA_K_RANGE: std::ops::RangeInclusive<i32> = -2..=4;

/// Allowed range for the power `k` of `Omega_k`.
pub const OMEGA_K_RANGE: std::ops::RangeInclusive<i32> = 0..=16;

/// Rule giving a value at each prime.
#[derive(Debug, Clone, PartialEq)]
pub enum PrimeRule {
    Constant(i64),
    /// `p`
    Prime,
    /// `1/p`
    Reciprocal,
    /// natural logarithm (real valued)
    Log,
    Expr(PrimeExpr),
}

impl PrimeRule {
    pub fn eval(&self, p: u64) -> std::result::Result<Value, String> {
        Ok(match self {
            PrimeRule::Constant(c) => Value::from_int(*c),
            PrimeRule::Prime => Value::Exact(int(p)),
            PrimeRule::Reciprocal => Value::Exact(Rational::new(BigInt::one(), BigInt::from(p))),
            PrimeRule::Log => Value::Real((p as f64).ln()),
            PrimeRule::Expr(e) => Value::Exact(e.eval(p).map_err(|e| e.to_string())?),
        })
    }

    /// True when the rule is the constant one.
    pub fn is_unit(&self) -> bool {
        match self {
            PrimeRule::Constant(c) => *c == 1,
            PrimeRule::Expr(e) => e.constant_value().is_some_and(|v| v.is_one()),
            _ => false,
        }
    }

    /// Exponent `g` such that the rule grows like `p^g`.
    pub fn degree(&self) -> f64 {
        match self {
            PrimeRule::Constant(_) => 0.0,
            PrimeRule::Prime => 1.0,
            PrimeRule::Reciprocal => -1.0,
            PrimeRule::Log => 0.0,
            PrimeRule::Expr(e) => e.degree() as f64,
        }
    }
}

impl fmt::Display for PrimeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeRule::Constant(c) => write!(f, "{c}"),
            PrimeRule::Prime => f.write_str("p"),
            PrimeRule::Reciprocal => f.write_str("1/p"),
            PrimeRule::Log => f.write_str("log(p)"),
            PrimeRule::Expr(e) => write!(f, "{e}"),
        }
    }
}

/// Bound `|f(p)/h(p)| <= constant * p^exponent` over all primes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Growth {
    pub constant: f64,
    pub exponent: f64,
    /// The constant was measured over a finite range rather than proven.
    pub empirical: bool,
}

/// An L-additive function given by `f` and `h_f` on primes.
#[derive(Debug, Clone, PartialEq)]
pub struct LAdditiveFunction {
    name: String,
    f_on_prime: PrimeRule,
    h_on_prime: PrimeRule,
    completely_additive: bool,
    growth: Option<Growth>,
}

impl LAdditiveFunction {
    pub fn new(name: impl Into<String>, f_on_prime: PrimeRule, h_on_prime: PrimeRule) -> Self {
        let completely_additive = h_on_prime.is_unit();
        LAdditiveFunction {
            name: name.into(),
            f_on_prime,
            h_on_prime,
            completely_additive,
            growth: None,
        }
    }

    /// One of `Omega`, `Ld`, `A`, `delta`, `log`.
    pub fn builtin(name: &str) -> Result<Self> {
        let (f, h, growth) = match name {
            "Omega" => (PrimeRule::Constant(1), PrimeRule::Constant(1), (1.0, 0.0)),
            "Ld" => (PrimeRule::Reciprocal, PrimeRule::Constant(1), (1.0, -1.0)),
            "A" => (PrimeRule::Prime, PrimeRule::Constant(1), (1.0, 1.0)),
            "delta" => (PrimeRule::Constant(1), PrimeRule::Prime, (1.0, -1.0)),
            // log x / sqrt x peaks at x = e^2 with value 2/e
            "log" => (PrimeRule::Log, PrimeRule::Constant(1), (2.0 / std::f64::consts::E, 0.5)),
            _ => {
                return Err(Error::UnknownFunction {
                    name: name.to_string(),
                    catalog: L_ADDITIVE_CATALOG.join(", "),
                })
            }
        };
        let mut spec = LAdditiveFunction::new(name, f, h);
        spec.growth = Some(Growth {
            constant: growth.0,
            exponent: growth.1,
            empirical: false,
        });
        Ok(spec)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn f_rule(&self) -> &PrimeRule {
        &self.f_on_prime
    }

    pub fn h_rule(&self) -> &PrimeRule {
        &self.h_on_prime
    }

    pub fn is_completely_additive(&self) -> bool {
        self.completely_additive
    }

    /// Whether every value is an exact rational (false only for `log`-style rules).
    pub fn is_exact(&self) -> bool {
        !matches!(self.f_on_prime, PrimeRule::Log) && !matches!(self.h_on_prime, PrimeRule::Log)
    }

    /// Declared growth of `f(p)/h(p)`, if known without measurement.
    pub fn growth(&self) -> Option<Growth> {
        self.growth
    }

    pub fn f_at_prime(&self, p: u64) -> Result<Value> {
        self.f_on_prime.eval(p).map_err(|reason| Error::PrimeEval {
            function: self.name.clone(),
            prime: p,
            reason,
        })
    }

    /// `h(p)`, rejecting zero.
    pub fn h_at_prime(&self, p: u64) -> Result<Value> {
        let h = self.h_on_prime.eval(p).map_err(|reason| Error::PrimeEval {
            function: format!("h_{}", self.name),
            prime: p,
            reason,
        })?;
        if h.is_zero() {
            return Err(Error::ZeroH {
                function: self.name.clone(),
                prime: p,
            });
        }
        Ok(h)
    }

    /// `f(p) / h(p)`: the value of the generalized von Mangoldt function on powers of `p`.
    pub fn ratio_at_prime(&self, p: u64) -> Result<Value> {
        let h = self.h_at_prime(p)?;
        self.f_at_prime(p)?.checked_div(&h)
    }

    pub fn handle(&self) -> FunctionHandle {
        let spec = self.clone();
        let kind = if self.completely_additive {
            FunctionKind::CompletelyAdditive
        } else {
            FunctionKind::LAdditive
        };
        FunctionHandle::new(self.name.clone(), kind, move |n| eval_l_additive(&spec, n))
    }

    /// `h_f` as a handle (completely multiplicative).
    pub fn h_handle(&self) -> FunctionHandle {
        let spec = self.clone();
        FunctionHandle::new(format!("h_{}", self.name), FunctionKind::Multiplicative, move |n| {
            eval_h(&spec, n)
        })
    }
}

impl fmt::Display for LAdditiveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [f(p)={}, h(p)={}]", self.name, self.f_on_prime, self.h_on_prime)
    }
}

/// `h_f(n) = prod h_f(p)^a`; one at `n = 1`.
pub fn eval_h(spec: &LAdditiveFunction, fact: &Factorization) -> Result<Value> {
    let mut acc = Value::one();
    for &(p, a) in fact.factors() {
        acc = acc * spec.h_at_prime(p)?.pow(a);
    }
    Ok(acc)
}

/// `f(n) = h_f(n) * sum a f(p)/h_f(p)`; zero at `n = 1`.
pub fn eval_l_additive(spec: &LAdditiveFunction, fact: &Factorization) -> Result<Value> {
    if fact.is_one() {
        return Ok(Value::zero());
    }
    let sum = quotient_value(spec, fact)?;
    if spec.completely_additive {
        return Ok(sum);
    }
    Ok(eval_h(spec, fact)? * sum)
}

/// `sum_{p^a || n} a f(p)/h_f(p)`, which equals `f(n)/h_f(n)`.
fn quotient_value(spec: &LAdditiveFunction, fact: &Factorization) -> Result<Value> {
    let mut sum = Value::zero();
    for &(p, a) in fact.factors() {
        sum = sum + Value::from_int(a as i64) * spec.ratio_at_prime(p)?;
    }
    Ok(sum)
}

/// `f / h_f`, which is completely additive whenever `h_f` never vanishes.
pub fn quotient_completely_additive(spec: &LAdditiveFunction) -> FunctionHandle {
    let s = spec.clone();
    FunctionHandle::new(
        format!("{}/h_{}", spec.name, spec.name),
        FunctionKind::CompletelyAdditive,
        move |n| {
            let f = eval_l_additive(&s, n)?;
            f.checked_div(&eval_h(&s, n)?)
        },
    )
}

/// `f(n/m) = f(n) - f(m)` for completely additive `f`.
pub fn eval_rational_extension(
    spec: &LAdditiveFunction,
    n: &Factorization,
    m: &Factorization,
) -> Result<Value> {
    if !spec.completely_additive {
        return Err(Error::NotCompletelyAdditive(spec.name.clone()));
    }
    Ok(eval_l_additive(spec, n)? - eval_l_additive(spec, m)?)
}

/// Structural class of an arithmetic function, used for slot constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionKind {
    CompletelyAdditive,
    LAdditive,
    Additive,
    Multiplicative,
    Plumbing,
}

impl FunctionKind {
    pub fn is_l_additive(self) -> bool {
        matches!(self, FunctionKind::CompletelyAdditive | FunctionKind::LAdditive)
    }
}

type Evaluator = dyn Fn(&Factorization) -> Result<Value> + Send + Sync;

/// A named arithmetic function `n -> Value`, evaluated on factorizations.
#[derive(Clone)]
pub struct FunctionHandle {
    name: String,
    kind: FunctionKind,
    eval: Arc<Evaluator>,
}

impl fmt::Debug for FunctionHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionHandle")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .finish()
    }
}

impl FunctionHandle {
    pub fn new<F>(name: impl Into<String>, kind: FunctionKind, eval: F) -> Self
    where
        F: Fn(&Factorization) -> Result<Value> + Send + Sync + 'static,
    {
        FunctionHandle {
            name: name.into(),
            kind,
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> FunctionKind {
        self.kind
    }

    pub fn eval(&self, n: &Factorization) -> Result<Value> {
        (self.eval)(n)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Pointwise product `F(n) G(n)`.
    pub fn times(&self, other: &FunctionHandle) -> FunctionHandle {
        let (a, b) = (self.clone(), other.clone());
        FunctionHandle::new(
            format!("{}.{}", self.name, other.name),
            FunctionKind::Plumbing,
            move |n| Ok(a.eval(n)? * b.eval(n)?),
        )
    }

    /// Pointwise quotient `F(n) / G(n)`.
    pub fn over(&self, other: &FunctionHandle) -> FunctionHandle {
        let (a, b) = (self.clone(), other.clone());
        FunctionHandle::new(
            format!("{}/{}", self.name, other.name),
            FunctionKind::Plumbing,
            move |n| a.eval(n)?.checked_div(&b.eval(n)?),
        )
    }

    pub fn plus(&self, other: &FunctionHandle) -> FunctionHandle {
        let (a, b) = (self.clone(), other.clone());
        FunctionHandle::new(
            format!("({} + {})", self.name, other.name),
            FunctionKind::Plumbing,
            move |n| Ok(a.eval(n)? + b.eval(n)?),
        )
    }

    pub fn minus(&self, other: &FunctionHandle) -> FunctionHandle {
        let (a, b) = (self.clone(), other.clone());
        FunctionHandle::new(
            format!("({} - {})", self.name, other.name),
            FunctionKind::Plumbing,
            move |n| Ok(a.eval(n)? - b.eval(n)?),
        )
    }

    /// `c * F(n)` for a constant `c`.
    pub fn scaled(&self, c: Value) -> FunctionHandle {
        let a = self.clone();
        let name = format!("{c}*{}", self.name);
        FunctionHandle::new(name, FunctionKind::Plumbing, move |n| Ok(c.clone() * a.eval(n)?))
    }

    pub fn negated(&self) -> FunctionHandle {
        self.scaled(Value::from_int(-1)).renamed(format!("-{}", self.name))
    }

    pub fn squared(&self) -> FunctionHandle {
        let a = self.clone();
        FunctionHandle::new(format!("{}^2", self.name), FunctionKind::Plumbing, move |n| {
            Ok(a.eval(n)?.pow(2))
        })
    }
}

/// Sum over `p^a || n` of a weight depending on `(p, a)`.
pub fn prime_power_sum<F>(name: impl Into<String>, kind: FunctionKind, weight: F) -> FunctionHandle
where
    F: Fn(u64, u32) -> Result<Value> + Send + Sync + 'static,
{
    FunctionHandle::new(name, kind, move |n| {
        let mut acc = Value::zero();
        for &(p, a) in n.factors() {
            acc = acc + weight(p, a)?;
        }
        Ok(acc)
    })
}

/// `beta_k(n) = sum_{p | n} p^k`.
pub fn beta_value(n: &Factorization, k: i32) -> Value {
    let mut acc = Rational::zero();
    for &(p, _) in n.factors() {
        let pk = num_traits::pow(BigInt::from(p), k.unsigned_abs() as usize);
        acc += if k >= 0 {
            Rational::from_integer(pk)
        } else {
            Rational::new(BigInt::one(), pk)
        };
    }
    Value::Exact(acc)
}

pub fn mobius_value(n: &Factorization) -> i64 {
    if !n.is_squarefree() {
        0
    } else if n.omega() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_k(name: &str, k: i32, range: std::ops::RangeInclusive<i32>) -> Result<i32> {
    if range.contains(&k) {
        Ok(k)
    } else {
        Err(Error::InvalidInput(format!(
            "{name}: k = {k} outside [{}, {}]",
            range.start(),
            range.end()
        )))
    }
}

pub fn beta_k(k: i32) -> Result<FunctionHandle> {
    let k = check_k("beta_k", k, BETA_K_RANGE)?;
    Ok(FunctionHandle::new(format!("beta_{k}"), FunctionKind::Additive, move |n| {
        Ok(beta_value(n, k))
    }))
}

pub fn omega_k(k: i32) -> Result<FunctionHandle> {
    let k = check_k("Omega_k", k, OMEGA_K_RANGE)? as u32;
    Ok(prime_power_sum(format!("Omega_{k}"), FunctionKind::Additive, move |_, a| {
        Ok(Value::Exact(int((a as u64).pow(k))))
    }))
}

/// Splits `beta_3` / `Omega_-1` style names into base and shift.
fn split_indexed(name: &str) -> Option<(&str, i32)> {
    let (base, idx) = name.rsplit_once('_')?;
    if base != "beta" && base != "Omega" {
        return None;
    }
    idx.parse().ok().map(|k| (base, k))
}

/// Built-in arithmetic function by name.
///
/// `beta_k` and `Omega_k` take their index from `k` or inline (`beta_2`).
pub fn builtin(name: &str, k: Option<i32>) -> Result<FunctionHandle> {
    let unknown = || Error::UnknownFunction {
        name: name.to_string(),
        catalog: BUILTIN_CATALOG.join(", "),
    };
    let need_k = |k: Option<i32>| {
        k.ok_or_else(|| Error::InvalidInput(format!("{name} requires an index k")))
    };
    match name {
        "Ld" | "Omega" | "A" | "delta" | "log" => Ok(LAdditiveFunction::builtin(name)?.handle()),
        "Omega_k" => omega_k(need_k(k)?),
        "beta_k" => beta_k(need_k(k)?),
        "omega" => Ok(FunctionHandle::new("omega", FunctionKind::Additive, |n| {
            Ok(Value::from_int(n.omega() as i64))
        })),
        "beta" => Ok(beta_k(1)?.renamed("beta")),
        "e" => Ok(FunctionHandle::new("e", FunctionKind::Multiplicative, |n| {
            Ok(Value::from_int(n.is_one() as i64))
        })),
        "one" => Ok(FunctionHandle::new("one", FunctionKind::Multiplicative, |_| {
            Ok(Value::one())
        })),
        "mu" => Ok(FunctionHandle::new("mu", FunctionKind::Multiplicative, |n| {
            Ok(Value::from_int(mobius_value(n)))
        })),
        "tau" => Ok(FunctionHandle::new("tau", FunctionKind::Multiplicative, |n| {
            Ok(Value::Exact(int(n.tau())))
        })),
        _ => match split_indexed(name) {
            Some(("beta", k)) => beta_k(k),
            Some(("Omega", k)) => omega_k(k),
            _ => Err(unknown()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::Sieve;
    use crate::numeric::rat;

    fn sieve() -> Sieve {
        Sieve::new(200).unwrap()
    }

    fn ev(h: &FunctionHandle, n: u64) -> Value {
        h.eval(&sieve().factorize(n).unwrap()).unwrap()
    }

    fn spec(name: &str) -> LAdditiveFunction {
        LAdditiveFunction::builtin(name).unwrap()
    }

    #[test]
    fn eval_h_examples() {
        let s = sieve();
        assert_eq!(eval_h(&spec("delta"), &s.factorize(12).unwrap()).unwrap(), Value::from_int(12));
        for n in 1..100 {
            assert_eq!(eval_h(&spec("Omega"), &s.factorize(n).unwrap()).unwrap(), Value::one());
        }
        assert_eq!(eval_h(&spec("A"), &Factorization::one()).unwrap(), Value::one());
    }

    #[test]
    fn zero_h_names_the_prime() {
        let bad = LAdditiveFunction::new(
            "bad",
            PrimeRule::Constant(1),
            PrimeRule::Expr(PrimeExpr::parse("p - 3").unwrap()),
        );
        let f = sieve().factorize(12).unwrap();
        assert_eq!(
            eval_h(&bad, &f),
            Err(Error::ZeroH {
                function: "bad".into(),
                prime: 3
            })
        );
        assert!(eval_l_additive(&bad, &f).is_err());
        assert!(eval_l_additive(&bad, &sieve().factorize(8).unwrap()).is_ok());
    }

    #[test]
    fn l_additive_examples() {
        let s = sieve();
        let twelve = s.factorize(12).unwrap();
        assert_eq!(eval_l_additive(&spec("Ld"), &twelve).unwrap(), Value::Exact(rat(4, 3)));
        assert_eq!(eval_l_additive(&spec("A"), &twelve).unwrap(), Value::from_int(7));
        assert_eq!(eval_l_additive(&spec("delta"), &twelve).unwrap(), Value::from_int(16));
        assert_eq!(eval_l_additive(&spec("Omega"), &Factorization::one()).unwrap(), Value::zero());
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_completely_additive(&spec("delta"));
        assert_eq!(ev(&q, 12), Value::Exact(rat(4, 3)));
        assert_eq!(ev(&q, 1), Value::zero());
        let om = quotient_completely_additive(&spec("Omega"));
        for n in 1..100 {
            assert_eq!(ev(&om, n), ev(&spec("Omega").handle(), n));
        }
    }

    #[test]
    fn rational_extension() {
        let s = sieve();
        let f = |n| s.factorize(n).unwrap();
        let ld = spec("Ld");
        assert_eq!(eval_rational_extension(&ld, &f(12), &f(4)).unwrap(), Value::Exact(rat(1, 3)));
        assert_eq!(eval_rational_extension(&ld, &f(30), &f(30)).unwrap(), Value::zero());
        assert_eq!(eval_rational_extension(&spec("Omega"), &f(8), &f(2)).unwrap(), Value::from_int(2));
        assert_eq!(
            eval_rational_extension(&spec("delta"), &f(8), &f(2)),
            Err(Error::NotCompletelyAdditive("delta".into()))
        );
    }

    #[test]
    fn builtin_examples() {
        let b = |name: &str, k: Option<i32>| builtin(name, k).unwrap();
        assert_eq!(ev(&b("mu", None), 30), Value::from_int(-1));
        assert_eq!(ev(&b("mu", None), 12), Value::zero());
        assert_eq!(ev(&b("mu", None), 1), Value::one());
        assert_eq!(ev(&b("tau", None), 12), Value::from_int(6));
        assert_eq!(ev(&b("beta_k", Some(1)), 12), Value::from_int(5));
        assert_eq!(ev(&b("beta_1", None), 12), Value::from_int(5));
        assert_eq!(ev(&b("beta_-1", None), 12), Value::Exact(rat(5, 6)));
        assert_eq!(ev(&b("Omega_k", Some(2)), 12), Value::from_int(5));
        assert_eq!(ev(&b("Omega_2", None), 12), Value::from_int(5));
        assert_eq!(ev(&b("e", None), 1), Value::one());
        assert_eq!(ev(&b("e", None), 7), Value::zero());
        assert_eq!(ev(&b("one", None), 7), Value::one());
        assert_eq!(ev(&b("omega", None), 360), Value::from_int(3));
        assert!(!ev(&b("log", None), 10).is_exact());
        assert!((ev(&b("log", None), 360).to_f64() - 360f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn builtin_errors() {
        match builtin("nope", None) {
            Err(Error::UnknownFunction { catalog, .. }) => assert!(catalog.contains("beta_k")),
            other => panic!("{other:?}"),
        }
        assert!(builtin("beta_k", None).is_err());
        assert!(builtin("beta_k", Some(5)).is_err());
        assert!(builtin("beta_-3", None).is_err());
        assert!(builtin("Omega_-1", None).is_err());
        assert!(LAdditiveFunction::builtin("tau").is_err());
    }

    #[test]
    fn beta_and_omega_relations() {
        let s = Sieve::new(100).unwrap();
        let (b0, om) = (builtin("beta_0", None).unwrap(), builtin("omega", None).unwrap());
        let (b1, b) = (builtin("beta_1", None).unwrap(), builtin("beta", None).unwrap());
        for n in 1..=10_000 {
            let f = s.factorize(n).unwrap();
            assert_eq!(b0.eval(&f).unwrap(), om.eval(&f).unwrap());
            assert_eq!(b1.eval(&f).unwrap(), b.eval(&f).unwrap());
        }
    }

    #[test]
    fn delta_is_n_times_ld() {
        let s = Sieve::new(100).unwrap();
        let (d, ld) = (spec("delta").handle(), spec("Ld").handle());
        for n in 1..=10_000u64 {
            let f = s.factorize(n).unwrap();
            assert_eq!(d.eval(&f).unwrap(), Value::from_int(n as i64) * ld.eval(&f).unwrap());
        }
    }

    #[test]
    fn completely_additive_flag() {
        assert!(spec("Omega").is_completely_additive());
        assert!(!spec("delta").is_completely_additive());
        let user = LAdditiveFunction::new(
            "u",
            PrimeRule::Expr(PrimeExpr::parse("p^2").unwrap()),
            PrimeRule::Expr(PrimeExpr::parse("3 - 2").unwrap()),
        );
        assert!(user.is_completely_additive());
        assert!(!spec("log").is_exact());
    }

    #[test]
    fn combinators() {
        let tau = builtin("tau", None).unwrap();
        let om = spec("Omega").handle();
        assert_eq!(ev(&tau.times(&om), 12), Value::from_int(18));
        assert_eq!(ev(&tau.plus(&om), 12), Value::from_int(9));
        assert_eq!(ev(&tau.minus(&om), 12), Value::from_int(3));
        assert_eq!(ev(&om.over(&tau), 12), Value::Exact(rat(1, 2)));
        assert_eq!(ev(&om.squared(), 12), Value::from_int(9));
        assert_eq!(ev(&om.negated(), 12), Value::from_int(-3));
        assert!(om.over(&builtin("mu", None).unwrap()).eval(&sieve().factorize(4).unwrap()).is_err());
    }
}
