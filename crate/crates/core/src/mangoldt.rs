//! The generalized von Mangoldt function `Lambda_f` and the derivative
//! operator `g'(n) = g(n) f(n) / h_f(n)`.
//!
//! `Lambda_f(p^k) = f(p)/h_f(p)` for `k >= 1` and zero elsewhere. Two more
//! routes compute the same values through Möbius inversion; they share no
//! code with the definition and serve as cross-checks.

use crate::error::Result;
use crate::factor::Factorization;
use crate::functions::{
    eval_h, eval_l_additive, mobius_value, FunctionHandle, FunctionKind, LAdditiveFunction,
};
use crate::numeric::Value;

/// `Lambda_f(n)` straight from the definition.
pub fn lambda_f(spec: &LAdditiveFunction, fact: &Factorization) -> Result<Value> {
    match fact.as_prime_power() {
        Some((p, _)) => spec.ratio_at_prime(p),
        None => Ok(zero_like(spec)),
    }
}

fn zero_like(spec: &LAdditiveFunction) -> Value {
    if spec.is_exact() {
        Value::zero()
    } else {
        Value::Real(0.0)
    }
}

/// `f(d) / h_f(d)` computed from the two full evaluations.
fn f_over_h(spec: &LAdditiveFunction, d: &Factorization) -> Result<Value> {
    eval_l_additive(spec, d)?.checked_div(&eval_h(spec, d)?)
}

/// `sum_{d | n} mu(n/d) f(d) / h_f(d)`.
pub fn lambda_via_mobius(spec: &LAdditiveFunction, fact: &Factorization) -> Result<Value> {
    let mut acc = zero_like(spec);
    for (d, rest) in fact.divisor_pairs() {
        let mu = mobius_value(&rest);
        if mu != 0 {
            acc = acc + Value::from_int(mu) * f_over_h(spec, &d)?;
        }
    }
    Ok(acc)
}

/// `-sum_{d | n} mu(d) f(d) / h_f(d)`.
pub fn lambda_via_negated(spec: &LAdditiveFunction, fact: &Factorization) -> Result<Value> {
    let mut acc = zero_like(spec);
    for (d, _) in fact.divisor_pairs() {
        let mu = mobius_value(&d);
        if mu != 0 {
            acc = acc + Value::from_int(mu) * f_over_h(spec, &d)?;
        }
    }
    Ok(-acc)
}

/// Which of the three computations to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaMethod {
    Definition,
    Mobius,
    Negated,
}

impl LambdaMethod {
    pub const ALL: [LambdaMethod; 3] =
        [LambdaMethod::Definition, LambdaMethod::Mobius, LambdaMethod::Negated];

    pub fn name(self) -> &'static str {
        match self {
            LambdaMethod::Definition => "definition",
            LambdaMethod::Mobius => "mobius",
            LambdaMethod::Negated => "negated",
        }
    }
}

/// `Lambda_f` bound to its source function.
#[derive(Debug, Clone)]
pub struct MangoldtHandle {
    source: LAdditiveFunction,
    method: LambdaMethod,
}

impl MangoldtHandle {
    pub fn new(source: LAdditiveFunction) -> Self {
        MangoldtHandle {
            source,
            method: LambdaMethod::Definition,
        }
    }

    pub fn with_method(mut self, method: LambdaMethod) -> Self {
        self.method = method;
        self
    }

    pub fn source(&self) -> &LAdditiveFunction {
        &self.source
    }

    pub fn eval(&self, fact: &Factorization) -> Result<Value> {
        match self.method {
            LambdaMethod::Definition => lambda_f(&self.source, fact),
            LambdaMethod::Mobius => lambda_via_mobius(&self.source, fact),
            LambdaMethod::Negated => lambda_via_negated(&self.source, fact),
        }
    }

    pub fn handle(&self) -> FunctionHandle {
        let me = self.clone();
        FunctionHandle::new(
            format!("Lambda_{}", self.source.name()),
            FunctionKind::Plumbing,
            move |n| me.eval(n),
        )
    }
}

/// `Lambda_f` as a function handle (definition route).
pub fn lambda_handle(spec: &LAdditiveFunction) -> FunctionHandle {
    MangoldtHandle::new(spec.clone()).handle()
}

/// `g'(n) = g(n) f(n) / h_f(n)`.
pub fn f_derivative(g: &FunctionHandle, spec: &LAdditiveFunction) -> FunctionHandle {
    let (g, s) = (g.clone(), spec.clone());
    FunctionHandle::new(
        format!("{}'[{}]", g.name(), spec.name()),
        FunctionKind::Plumbing,
        move |n| Ok(g.eval(n)? * f_over_h(&s, n)?),
    )
}
