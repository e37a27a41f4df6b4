//! Registry of convolution identities and exact range sweeps.
//!
//! Each [`IdentityDescriptor`] states an identity as a left-hand side and one
//! or more right-hand forms, all built from [`FunctionHandle`] combinators so
//! the code reads like the formula. Slots `f`, `g` (L-additive functions) and
//! `k` (shift of `beta_k`) are bound per sweep.

use rayon::prelude::*;
use serde::Serialize;

use crate::dirichlet::convolution;
use crate::error::{Error, Result};
use crate::factor::{Factorization, Sieve};
use crate::functions::{
    beta_k, builtin, omega_k, prime_power_sum, FunctionHandle, FunctionKind, LAdditiveFunction,
};
use crate::mangoldt::lambda_handle;
use crate::numeric::{rat, value_cmp, Comparison, Value};

/// Counterexamples kept per report.
pub const MAX_COUNTEREXAMPLES: usize = 20;

/// Functions bound to `f` and `g` by the default matrix.
pub const DEFAULT_FUNCTIONS: [&str; 4] = ["Omega", "Ld", "A", "delta"];

/// Shifts bound to `k` by the default matrix.
pub const DEFAULT_KS: [i32; 4] = [-1, 0, 1, 2];

/// What a function slot accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SlotConstraint {
    LAdditive,
    CompletelyAdditive,
}

impl SlotConstraint {
    fn admits(self, spec: &LAdditiveFunction) -> bool {
        match self {
            SlotConstraint::LAdditive => true,
            SlotConstraint::CompletelyAdditive => spec.is_completely_additive(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expected {
    Holds,
    PaperErratum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Failed,
}

/// Slot assignments for one sweep.
#[derive(Debug, Clone, Default)]
pub struct Bindings {
    pub f: Option<LAdditiveFunction>,
    pub g: Option<LAdditiveFunction>,
    pub k: Option<i32>,
}

impl Bindings {
    pub fn labels(&self) -> BindingLabels {
        BindingLabels {
            f: self.f.as_ref().map(|s| s.name().to_string()),
            g: self.g.as_ref().map(|s| s.name().to_string()),
            k: self.k,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BindingLabels {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i32>,
}

/// The evaluators of one bound identity.
#[derive(Debug, Clone)]
pub struct Sides {
    pub lhs: FunctionHandle,
    /// Right-hand forms; every one must equal `lhs`.
    pub rhs: Vec<(String, FunctionHandle)>,
    /// Corrected right-hand side, for entries recorded as errata.
    pub corrected: Option<FunctionHandle>,
}

impl Sides {
    fn new(lhs: FunctionHandle, rhs: Vec<(&str, FunctionHandle)>) -> Self {
        Sides {
            lhs,
            rhs: rhs.into_iter().map(|(l, h)| (l.to_string(), h)).collect(),
            corrected: None,
        }
    }
}

pub struct IdentityDescriptor {
    pub id: &'static str,
    /// The identity in formula form.
    pub anchor: &'static str,
    pub f_slot: Option<SlotConstraint>,
    pub g_slot: Option<SlotConstraint>,
    pub uses_k: bool,
    pub expected: Expected,
    pub note: Option<&'static str>,
    build: fn(&Bindings) -> Result<Sides>,
}

impl std::fmt::Debug for IdentityDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityDescriptor").field("id", &self.id).finish()
    }
}

impl IdentityDescriptor {
    /// Checks slot constraints and builds the evaluators.
    pub fn instantiate(&'static self, bindings: &Bindings) -> Result<IdentityInstance> {
        let violation = |reason: String| Error::Constraint {
            id: self.id.to_string(),
            reason,
        };
        for (slot, constraint, bound) in [
            ("f", self.f_slot, &bindings.f),
            ("g", self.g_slot, &bindings.g),
        ] {
            match (constraint, bound) {
                (Some(_), None) => return Err(violation(format!("slot {slot} must be bound"))),
                (Some(c), Some(spec)) if !c.admits(spec) => {
                    return Err(violation(format!(
                        "{slot} = {} must be completely additive",
                        spec.name()
                    )))
                }
                (None, Some(spec)) => {
                    return Err(violation(format!(
                        "identity has no {slot} slot (got {})",
                        spec.name()
                    )))
                }
                _ => {}
            }
        }
        match (self.uses_k, bindings.k) {
            (true, None) => return Err(violation("slot k must be bound".into())),
            (false, Some(k)) => return Err(violation(format!("identity has no k slot (got {k})"))),
            _ => {}
        }
        let sides = (self.build)(bindings).map_err(|e| match e {
            Error::InvalidInput(m) => violation(m),
            other => other,
        })?;
        Ok(IdentityInstance {
            desc: self,
            labels: bindings.labels(),
            sides,
        })
    }

    /// The default binding matrix restricted to combinations this identity admits.
    pub fn default_bindings(&self) -> Vec<Bindings> {
        let specs: Vec<LAdditiveFunction> = DEFAULT_FUNCTIONS
            .iter()
            .map(|n| LAdditiveFunction::builtin(n).expect("built-in"))
            .collect();
        let choices = |slot: Option<SlotConstraint>| -> Vec<Option<LAdditiveFunction>> {
            match slot {
                None => vec![None],
                Some(c) => specs.iter().filter(|s| c.admits(s)).cloned().map(Some).collect(),
            }
        };
        let ks: Vec<Option<i32>> = if self.uses_k {
            DEFAULT_KS.iter().copied().map(Some).collect()
        } else {
            vec![None]
        };
        let mut out = Vec::new();
        for f in choices(self.f_slot) {
            for g in choices(self.g_slot) {
                for &k in &ks {
                    out.push(Bindings {
                        f: f.clone(),
                        g: g.clone(),
                        k,
                    });
                }
            }
        }
        out
    }
}

/// Outcome at a single `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub n: u64,
    pub lhs: Value,
    pub rhs: Vec<Value>,
    pub equal: bool,
    pub corrected: Option<Value>,
    pub corrected_equal: Option<bool>,
}

pub struct IdentityInstance {
    desc: &'static IdentityDescriptor,
    labels: BindingLabels,
    sides: Sides,
}

fn same(a: &Value, b: &Value, tol: f64) -> Result<bool> {
    let promote = !(a.is_exact() && b.is_exact());
    Ok(value_cmp(a, b, tol, promote)? == Comparison::Equal)
}

impl IdentityInstance {
    pub fn descriptor(&self) -> &'static IdentityDescriptor {
        self.desc
    }

    pub fn sides(&self) -> &Sides {
        &self.sides
    }

    /// Evaluates every side at `n`. `tol` only matters for real-valued bindings.
    pub fn check(&self, fact: &Factorization, tol: f64) -> Result<Check> {
        let lhs = self.sides.lhs.eval(fact)?;
        let mut rhs = Vec::with_capacity(self.sides.rhs.len());
        let mut equal = true;
        for (_, h) in &self.sides.rhs {
            let v = h.eval(fact)?;
            equal &= same(&lhs, &v, tol)?;
            rhs.push(v);
        }
        let (corrected, corrected_equal) = match &self.sides.corrected {
            Some(h) => {
                let v = h.eval(fact)?;
                let eq = same(&lhs, &v, tol)?;
                (Some(v), Some(eq))
            }
            None => (None, None),
        };
        Ok(Check {
            n: fact.n(),
            lhs,
            rhs,
            equal,
            corrected,
            corrected_equal,
        })
    }

    /// Checks every `1 <= n <= n_max`. The report does not depend on `jobs`.
    pub fn sweep(&self, sieve: &Sieve, n_max: u64, tol: f64, jobs: usize) -> Result<IdentityReport> {
        if n_max > sieve.factor_bound() {
            return Err(Error::OutOfRange {
                n: n_max,
                bound: sieve.factor_bound(),
            });
        }
        let probe = |n: u64| -> Result<Option<Check>> {
            let c = self.check(&sieve.factorize(n)?, tol)?;
            Ok((!c.equal || c.corrected_equal == Some(false)).then_some(c))
        };
        let results: Vec<Result<Option<Check>>> = if jobs > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
            pool.install(|| {
                (1..=n_max)
                    .into_par_iter()
                    .map(probe)
                    .filter(|r| !matches!(r, Ok(None)))
                    .collect()
            })
        } else {
            (1..=n_max).map(probe).filter(|r| !matches!(r, Ok(None))).collect()
        };
        let mut failures = Vec::new();
        for r in results {
            if let Some(c) = r? {
                failures.push(c);
            }
        }
        failures.sort_by_key(|c| c.n);
        Ok(self.report(n_max, &failures))
    }

    fn report(&self, n_max: u64, failures: &[Check]) -> IdentityReport {
        let stated_failures: Vec<&Check> = failures.iter().filter(|c| !c.equal).collect();
        let corrected_failures = failures
            .iter()
            .filter(|c| c.corrected_equal == Some(false))
            .count() as u64;
        let counterexamples = stated_failures
            .iter()
            .take(MAX_COUNTEREXAMPLES)
            .map(|c| {
                let idx = c
                    .rhs
                    .iter()
                    .position(|v| !same(&c.lhs, v, 0.0).unwrap_or(false))
                    .unwrap_or(0);
                Counterexample {
                    n: c.n,
                    lhs: c.lhs.to_string(),
                    rhs: c.rhs[idx].to_string(),
                    form: self.sides.rhs[idx].0.clone(),
                    corrected_rhs: c.corrected.as_ref().map(|v| v.to_string()),
                }
            })
            .collect();
        let status = if stated_failures.is_empty() {
            Status::Verified
        } else {
            Status::Failed
        };
        IdentityReport {
            id: self.desc.id.to_string(),
            anchor: self.desc.anchor.to_string(),
            bindings: self.labels.clone(),
            n_max,
            expected: self.desc.expected,
            status,
            failures: stated_failures.len() as u64,
            counterexamples,
            corrected_status: self.sides.corrected.as_ref().map(|_| {
                if corrected_failures == 0 {
                    Status::Verified
                } else {
                    Status::Failed
                }
            }),
            corrected_failures: self.sides.corrected.as_ref().map(|_| corrected_failures),
            note: self.desc.note.map(str::to_string),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: u64,
    pub lhs: String,
    pub rhs: String,
    /// Which right-hand form disagreed.
    pub form: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corrected_rhs: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub anchor: String,
    pub bindings: BindingLabels,
    pub n_max: u64,
    pub expected: Expected,
    pub status: Status,
    /// Total number of failing `n` (counterexamples are capped).
    pub failures: u64,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corrected_status: Option<Status>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corrected_failures: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IdentityReport {
    /// False only when an identity expected to hold has a counterexample.
    pub fn acceptable(&self) -> bool {
        self.expected == Expected::PaperErratum || self.status == Status::Verified
    }
}

/// Evaluates one identity at one `n`.
pub fn check_identity(
    desc: &'static IdentityDescriptor,
    bindings: &Bindings,
    fact: &Factorization,
    tol: f64,
) -> Result<Check> {
    desc.instantiate(bindings)?.check(fact, tol)
}

/// Sweeps `1..=n_max` exactly; `jobs > 1` splits the range over a thread pool.
pub fn sweep_identity(
    desc: &'static IdentityDescriptor,
    bindings: &Bindings,
    sieve: &Sieve,
    n_max: u64,
    jobs: usize,
) -> Result<IdentityReport> {
    desc.instantiate(bindings)?.sweep(sieve, n_max, 1e-9, jobs)
}

pub fn registry() -> &'static [IdentityDescriptor] {
    &REGISTRY
}

pub fn find(id: &str) -> Result<&'static IdentityDescriptor> {
    REGISTRY.iter().find(|d| d.id == id).ok_or_else(|| Error::UnknownIdentity {
        name: id.to_string(),
        catalog: REGISTRY.iter().map(|d| d.id).collect::<Vec<_>>().join(", "),
    })
}

// ---- building blocks ------------------------------------------------------

fn slot<'a>(s: &'a Option<LAdditiveFunction>, name: &str) -> Result<&'a LAdditiveFunction> {
    s.as_ref()
        .ok_or_else(|| Error::InvalidInput(format!("slot {name} must be bound")))
}

fn k_of(b: &Bindings) -> Result<i32> {
    b.k.ok_or_else(|| Error::InvalidInput("slot k must be bound".into()))
}

fn named(name: &str) -> FunctionHandle {
    builtin(name, None).expect("built-in function")
}

fn spec(name: &str) -> LAdditiveFunction {
    LAdditiveFunction::builtin(name).expect("built-in L-additive function")
}

fn half() -> Value {
    Value::Exact(rat(1, 2))
}

fn conv(a: &FunctionHandle, b: &FunctionHandle) -> FunctionHandle {
    convolution(a, b)
}

/// `1/2 sum_{p^a || n} a(a+1) w(p)`.
fn triangular_sum<W>(name: &str, weight: W) -> FunctionHandle
where
    W: Fn(u64) -> Result<Value> + Send + Sync + 'static,
{
    prime_power_sum(name, FunctionKind::Plumbing, move |p, a| {
        let t = (a as i64) * (a as i64 + 1) / 2;
        Ok(Value::from_int(t) * weight(p)?)
    })
}

/// `(Lambda_f * Lambda_g)(n)` by cases on the shape of `n`, with the
/// per-prime weights `wf`, `wg`.
fn two_prime_cases<A, B>(name: &str, wf: A, wg: B) -> FunctionHandle
where
    A: Fn(u64) -> Result<Value> + Send + Sync + 'static,
    B: Fn(u64) -> Result<Value> + Send + Sync + 'static,
{
    FunctionHandle::new(name, FunctionKind::Plumbing, move |n| match n.factors() {
        [(p, a)] => Ok(Value::from_int(*a as i64 - 1) * wf(*p)? * wg(*p)?),
        [(p, _), (q, _)] => Ok(wf(*p)? * wg(*q)? + wf(*q)? * wg(*p)?),
        _ => Ok(Value::zero()),
    })
}

fn half_omega2_plus_omega() -> FunctionHandle {
    omega_k(2)
        .expect("Omega_2")
        .plus(&named("Omega"))
        .scaled(half())
        .renamed("(Omega_2 + Omega)/2")
}

// ---- registry ---------------------------------------------------------------

fn build_thm_2_1(b: &Bindings) -> Result<Sides> {
    let f = slot(&b.f, "f")?;
    let (lam, h) = (lambda_handle(f), f.h_handle());
    Ok(Sides::new(
        f.handle(),
        vec![
            ("h_f(n) sum_{d|n} Lambda_f(d)", h.times(&conv(&named("one"), &lam))),
            ("(h_f * h_f Lambda_f)(n)", conv(&h, &h.times(&lam))),
        ],
    ))
}

fn build_thm_2_2(b: &Bindings) -> Result<Sides> {
    let f = slot(&b.f, "f")?;
    let quotient = f.handle().over(&f.h_handle());
    Ok(Sides::new(
        lambda_handle(f),
        vec![
            ("(mu * f/h_f)(n)", conv(&named("mu"), &quotient)),
            ("-(1 * mu f/h_f)(n)", conv(&named("one"), &named("mu").times(&quotient)).negated()),
        ],
    ))
}

fn build_cor_1_1(b: &Bindings) -> Result<Sides> {
    let f = slot(&b.f, "f")?;
    Ok(Sides::new(
        conv(&f.handle(), &f.h_handle()),
        vec![("f(n) tau(n) / 2", f.handle().times(&named("tau")).scaled(half()))],
    ))
}

fn build_cor_2_1(b: &Bindings) -> Result<Sides> {
    let f = slot(&b.f, "f")?;
    let two_h = f.h_handle().scaled(Value::from_int(2));
    Ok(Sides::new(
        conv(&named("tau"), &lambda_handle(f)),
        vec![("f(n) tau(n) / (2 h_f(n))", f.handle().times(&named("tau")).over(&two_h))],
    ))
}

fn build_thm_2_3(b: &Bindings) -> Result<Sides> {
    let (f, g) = (slot(&b.f, "f")?.clone(), slot(&b.g, "g")?.clone());
    let lhs = conv(&named("one"), &g.handle().times(&lambda_handle(&f)));
    let rhs = triangular_sum("sum a(a+1) f(p) g(p) / (2 h_f(p))", move |p| {
        Ok(f.ratio_at_prime(p)? * g.f_at_prime(p)?)
    });
    Ok(Sides::new(lhs, vec![("closed form", rhs)]))
}

fn build_thm_2_4(b: &Bindings) -> Result<Sides> {
    let (f, g) = (slot(&b.f, "f")?, slot(&b.g, "g")?);
    let lam = lambda_handle(f);
    let rhs = f
        .handle()
        .times(&g.handle())
        .over(&f.h_handle())
        .minus(&conv(&named("one"), &g.handle().times(&lam)));
    Ok(Sides::new(
        conv(&lam, &g.handle()),
        vec![("f g / h_f - (1 * g Lambda_f)", rhs)],
    ))
}

fn build_thm_2_5(b: &Bindings) -> Result<Sides> {
    let (f, g) = (slot(&b.f, "f")?.clone(), slot(&b.g, "g")?.clone());
    let lhs = conv(&lambda_handle(&f), &lambda_handle(&g));
    let rhs = two_prime_cases(
        "cases on p^a, p^a q^b",
        move |p| f.ratio_at_prime(p),
        move |p| g.ratio_at_prime(p),
    );
    Ok(Sides::new(lhs, vec![("cases", rhs)]))
}

fn build_thm_2_8(b: &Bindings) -> Result<Sides> {
    let f = slot(&b.f, "f")?;
    let (lam, h) = (lambda_handle(f), f.h_handle());
    let lhs = f.handle().times(&lam).over(&h).plus(&conv(&lam, &lam));
    let rhs = conv(&named("mu"), &f.handle().over(&h).squared());
    Ok(Sides::new(lhs, vec![("(mu * (f/h_f)^2)(n)", rhs)]))
}

fn build_cor_2_2(b: &Bindings) -> Result<Sides> {
    let f = slot(&b.f, "f")?;
    Ok(Sides::new(
        f.handle(),
        vec![("(1 * Lambda_f)(n)", conv(&named("one"), &lambda_handle(f)))],
    ))
}

fn build_cor_2_3(b: &Bindings) -> Result<Sides> {
    let f = slot(&b.f, "f")?;
    Ok(Sides::new(
        lambda_handle(f),
        vec![
            ("(mu * f)(n)", conv(&named("mu"), &f.handle())),
            ("-(1 * mu f)(n)", conv(&named("one"), &named("mu").times(&f.handle())).negated()),
        ],
    ))
}

fn build_cor_2_4(b: &Bindings) -> Result<Sides> {
    let (f, g) = (slot(&b.f, "f")?.clone(), slot(&b.g, "g")?.clone());
    let lhs = conv(&named("one"), &g.handle().times(&lambda_handle(&f)));
    let rhs = triangular_sum("sum a(a+1) f(p) g(p) / 2", move |p| {
        Ok(f.f_at_prime(p)? * g.f_at_prime(p)?)
    });
    Ok(Sides::new(lhs, vec![("closed form", rhs)]))
}

fn build_cor_2_5(b: &Bindings) -> Result<Sides> {
    let (f, g) = (slot(&b.f, "f")?, slot(&b.g, "g")?);
    let lam = lambda_handle(f);
    let rhs = f
        .handle()
        .times(&g.handle())
        .minus(&conv(&named("one"), &g.handle().times(&lam)));
    Ok(Sides::new(conv(&lam, &g.handle()), vec![("f g - (1 * g Lambda_f)", rhs)]))
}

fn build_cor_2_6(b: &Bindings) -> Result<Sides> {
    let (f, g) = (slot(&b.f, "f")?.clone(), slot(&b.g, "g")?.clone());
    let lhs = conv(&lambda_handle(&f), &lambda_handle(&g));
    let rhs = two_prime_cases(
        "cases on p^a, p^a q^b",
        move |p| f.f_at_prime(p),
        move |p| g.f_at_prime(p),
    );
    Ok(Sides::new(lhs, vec![("cases", rhs)]))
}

fn build_cor_2_7(b: &Bindings) -> Result<Sides> {
    let f = slot(&b.f, "f")?;
    let lam = lambda_handle(f);
    let lhs = f.handle().times(&lam).plus(&conv(&lam, &lam));
    Ok(Sides::new(lhs, vec![("(mu * f^2)(n)", conv(&named("mu"), &f.handle().squared()))]))
}

fn build_cor_2_8(b: &Bindings) -> Result<Sides> {
    let f = slot(&b.f, "f")?;
    Ok(Sides::new(
        conv(&named("tau"), &lambda_handle(f)),
        vec![("f(n) tau(n) / 2", f.handle().times(&named("tau")).scaled(half()))],
    ))
}

fn build_shifted_beta(source: &str, b: &Bindings, shift: i32) -> Result<Sides> {
    let k = k_of(b)?;
    let s = spec(source);
    let bk = beta_k(k)?;
    let rhs = s.handle().times(&bk).minus(&beta_k(k + shift)?);
    Ok(Sides::new(
        conv(&lambda_handle(&s), &bk),
        vec![("closed form", rhs)],
    ))
}

fn build_thm_3_1(b: &Bindings) -> Result<Sides> {
    build_shifted_beta("Omega", b, 0)
}

fn build_thm_3_3(b: &Bindings) -> Result<Sides> {
    build_shifted_beta("Ld", b, -1)
}

fn build_thm_3_4(b: &Bindings) -> Result<Sides> {
    build_shifted_beta("A", b, 1)
}

fn build_thm_3_2(b: &Bindings) -> Result<Sides> {
    let g = slot(&b.g, "g")?.clone();
    let ld = spec("Ld");
    let lhs = conv(&lambda_handle(&ld), &g.handle());
    let gh = g.handle();
    let sum = triangular_sum("sum a(a+1) g(p) / (2p)", move |p| {
        g.f_at_prime(p)?.checked_div(&Value::from_int(p as i64))
    });
    Ok(Sides::new(lhs, vec![("g Ld - closed sum", gh.times(&ld.handle()).minus(&sum))]))
}

fn build_equ_a_ld(_: &Bindings) -> Result<Sides> {
    let (ld, a) = (spec("Ld"), spec("A"));
    let rhs = a.handle().times(&ld.handle()).minus(&half_omega2_plus_omega());
    Ok(Sides::new(
        conv(&lambda_handle(&ld), &a.handle()),
        vec![("A Ld - (Omega_2 + Omega)/2", rhs)],
    ))
}

fn build_eq_1_a_lambda_ld(_: &Bindings) -> Result<Sides> {
    let (ld, a) = (spec("Ld"), spec("A"));
    let one = named("one");
    Ok(Sides::new(
        conv(&one, &a.handle().times(&lambda_handle(&ld))),
        vec![
            ("(1 * Ld Lambda_A)(n)", conv(&one, &ld.handle().times(&lambda_handle(&a)))),
            ("(Omega_2 + Omega)/2", half_omega2_plus_omega()),
        ],
    ))
}

fn build_cor_ld_omega(_: &Bindings) -> Result<Sides> {
    let (ld, om) = (spec("Ld"), spec("Omega"));
    let sq_over_p = prime_power_sum("sum a^2/p", FunctionKind::Plumbing, |p, a| {
        Ok(Value::Exact(rat((a as i64).pow(2), p as i64)))
    });
    let stated = om
        .handle()
        .times(&ld.handle())
        .minus(&ld.handle())
        .minus(&sq_over_p);
    let corrected = om
        .handle()
        .times(&ld.handle())
        .minus(&triangular_sum("sum a(a+1)/(2p)", |p| Ok(Value::Exact(rat(1, p as i64)))));
    let mut sides = Sides::new(
        conv(&lambda_handle(&ld), &om.handle()),
        vec![("Omega Ld - Ld - sum a^2/p", stated)],
    );
    sides.corrected = Some(corrected);
    Ok(sides)
}

const LA: Option<SlotConstraint> = Some(SlotConstraint::LAdditive);
const CA: Option<SlotConstraint> = Some(SlotConstraint::CompletelyAdditive);

macro_rules! entry {
    ($id:literal, $anchor:literal, $f:expr, $g:expr, $k:expr, $build:ident) => {
        IdentityDescriptor {
            id: $id,
            anchor: $anchor,
            f_slot: $f,
            g_slot: $g,
            uses_k: $k,
            expected: Expected::Holds,
            note: None,
            build: $build,
        }
    };
}

static REGISTRY: [IdentityDescriptor; 22] = [
    entry!("thm-2-1", "f = h_f * h_f Lambda_f, i.e. f(n) = h_f(n) sum_{d|n} Lambda_f(d)", LA, None, false, build_thm_2_1),
    entry!("thm-2-2", "Lambda_f = mu * f/h_f = -1 * mu f/h_f", LA, None, false, build_thm_2_2),
    entry!("cor-1-1", "(f * h_f)(n) = f(n) tau(n) / 2", LA, None, false, build_cor_1_1),
    entry!("cor-2-1", "(tau * Lambda_f)(n) = f(n) tau(n) / (2 h_f(n))", LA, None, false, build_cor_2_1),
    entry!("thm-2-3", "(1 * g Lambda_f)(n) = 1/2 sum_{p^a||n} a(a+1) f(p) g(p) / h_f(p), g completely additive", LA, CA, false, build_thm_2_3),
    entry!("thm-2-4", "(Lambda_f * g)(n) = f(n) g(n) / h_f(n) - (1 * g Lambda_f)(n), g completely additive", LA, CA, false, build_thm_2_4),
    entry!("thm-2-5", "(Lambda_f * Lambda_g)(p^a) = (a-1) f(p)g(p)/(h_f(p)h_g(p)); (p^a q^b) = f(p)g(q)/(h_f(p)h_g(q)) + f(q)g(p)/(h_f(q)h_g(p)); 0 otherwise", LA, LA, false, build_thm_2_5),
    entry!("thm-2-8", "f Lambda_f / h_f + Lambda_f * Lambda_f = mu * (f/h_f)^2", LA, None, false, build_thm_2_8),
    entry!("cor-2-2", "f = 1 * Lambda_f, f completely additive", CA, None, false, build_cor_2_2),
    entry!("cor-2-3", "Lambda_f = mu * f = -1 * mu f, f completely additive", CA, None, false, build_cor_2_3),
    entry!("cor-2-4", "(1 * g Lambda_f)(n) = 1/2 sum_{p^a||n} a(a+1) f(p) g(p), f, g completely additive", CA, CA, false, build_cor_2_4),
    entry!("cor-2-5", "(Lambda_f * g)(n) = f(n) g(n) - (1 * g Lambda_f)(n), f, g completely additive", CA, CA, false, build_cor_2_5),
    entry!("cor-2-6", "(Lambda_f * Lambda_g)(p^a) = (a-1) f(p) g(p); (p^a q^b) = f(p)g(q) + f(q)g(p); 0 otherwise, f, g completely additive", CA, CA, false, build_cor_2_6),
    entry!("cor-2-7", "f Lambda_f + Lambda_f * Lambda_f = mu * f^2, f completely additive", CA, None, false, build_cor_2_7),
    entry!("cor-2-8", "(tau * Lambda_f)(n) = f(n) tau(n) / 2, f completely additive", CA, None, false, build_cor_2_8),
    entry!("thm-3-1", "(Lambda_Omega * beta_k)(n) = Omega(n) beta_k(n) - beta_k(n)", None, None, true, build_thm_3_1),
    entry!("thm-3-2", "(Lambda_Ld * g)(n) = g(n) Ld(n) - 1/2 sum_{p^a||n} a(a+1) g(p)/p, g completely additive", None, CA, false, build_thm_3_2),
    entry!("thm-3-3", "(Lambda_Ld * beta_k)(n) = Ld(n) beta_k(n) - beta_{k-1}(n)", None, None, true, build_thm_3_3),
    entry!("thm-3-4", "(Lambda_A * beta_k)(n) = A(n) beta_k(n) - beta_{k+1}(n)", None, None, true, build_thm_3_4),
    entry!("equ-a-ld", "(Lambda_Ld * A)(n) = A(n) Ld(n) - (Omega_2(n) + Omega(n))/2", None, None, false, build_equ_a_ld),
    entry!("eq-1-A-LambdaLd", "(1 * A Lambda_Ld)(n) = (1 * Ld Lambda_A)(n) = (Omega_2(n) + Omega(n))/2", None, None, false, build_eq_1_a_lambda_ld),
    IdentityDescriptor {
        id: "cor-LdOmega",
        anchor: "(Lambda_Ld * Omega)(n) = Omega(n) Ld(n) - Ld(n) - sum_{p^a||n} a^2/p",
        f_slot: None,
        g_slot: None,
        uses_k: false,
        expected: Expected::PaperErratum,
        note: Some(
            "published form fails (first at n = 2); the corrected right-hand side \
             Omega(n) Ld(n) - 1/2 sum a(a+1)/p is thm-3-2 with g = Omega",
        ),
        build: build_cor_ld_omega,
    },
];
