//! Truncated Dirichlet series, the Riemann and prime zeta functions, and
//! numerical checks of the closed forms for `sum Lambda_f(n)/n^s` and for
//! `sum F(n)/n^s` with `F` in `tau Omega`, `Omega beta_k`, `Ld beta_k`,
//! `A beta_k`.
//!
//! Every partial sum comes with an explicit tail bound. Growth constants for
//! products are measured over the summation range (recorded in the result),
//! so those bounds are empirical.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::dirichlet::convolution;
use crate::error::{Error, Result};
use crate::factor::Sieve;
use crate::functions::{beta_k, builtin, FunctionHandle, Growth, LAdditiveFunction, PrimeRule};
use crate::mangoldt::lambda_f;
use crate::numeric::{round_sig12, Rational, Value};

/// Terms per chunk in chunked summation; fixed so results are reproducible bit for bit.
pub const CHUNK_SIZE: u64 = 4096;

/// Largest summation length [`zeta`] will use.
pub const MAX_ZETA_TERMS: u64 = 50_000_000;

/// A value together with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Approx {
    pub value: f64,
    pub bound: f64,
}

impl Approx {
    pub fn exact(value: f64) -> Self {
        Approx { value, bound: 0.0 }
    }

    pub fn add(self, o: Approx) -> Approx {
        Approx {
            value: self.value + o.value,
            bound: self.bound + o.bound,
        }
    }

    pub fn mul(self, o: Approx) -> Approx {
        Approx {
            value: self.value * o.value,
            bound: self.value.abs() * o.bound + o.value.abs() * self.bound + self.bound * o.bound,
        }
    }

    pub fn scale(self, c: f64) -> Approx {
        Approx {
            value: c * self.value,
            bound: c.abs() * self.bound,
        }
    }
}

fn require_above(what: &str, s: f64, abscissa: f64) -> Result<()> {
    if s.is_finite() && s > abscissa {
        Ok(())
    } else {
        Err(Error::Abscissa {
            what: what.to_string(),
            abscissa,
            s,
        })
    }
}

/// Sums `term(n)` for `n` in `lo..=hi`: sequential inside fixed-size chunks,
/// then a pairwise merge of the chunk sums. Independent of thread count.
pub fn chunked_sum<F>(lo: u64, hi: u64, term: F) -> Result<f64>
where
    F: Fn(u64) -> Result<f64> + Sync,
{
    if hi < lo {
        return Ok(0.0);
    }
    let chunks = (hi - lo) / CHUNK_SIZE + 1;
    let partials: Vec<Result<f64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = lo + c * CHUNK_SIZE;
            let end = (start + CHUNK_SIZE - 1).min(hi);
            let mut acc = 0.0;
            for n in start..=end {
                acc += term(n)?;
            }
            Ok(acc)
        })
        .collect();
    let mut sums = partials.into_iter().collect::<Result<Vec<f64>>>()?;
    while sums.len() > 1 {
        sums = sums.chunks(2).map(|w| w.iter().sum()).collect();
    }
    Ok(sums.first().copied().unwrap_or(0.0))
}

/// Riemann zeta for real `s > 1`, accurate to `tol`.
///
/// Direct sum to `M`, then the tail `M^(1-s)/(s-1) - M^(-s)/2`, whose error
/// is at most `s M^(-s-1) / 12`.
pub fn zeta(s: f64, tol: f64) -> Result<Approx> {
    require_above("zeta", s, 1.0)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("zeta tolerance must be positive".into()));
    }
    // smallest M with s M^(-s-1)/12 <= tol/2
    let m = ((s / (6.0 * tol)).powf(1.0 / (s + 1.0))).ceil().max(16.0);
    if m > MAX_ZETA_TERMS as f64 {
        return Err(Error::Unattainable(format!(
            "zeta({s}) to {tol} needs more than {MAX_ZETA_TERMS} terms"
        )));
    }
    let m = m as u64;
    let mut direct = 0.0;
    for n in (1..=m).rev() {
        direct += (n as f64).powf(-s);
    }
    let mf = m as f64;
    let tail = mf.powf(1.0 - s) / (s - 1.0) - 0.5 * mf.powf(-s);
    let rounding = (m as f64) * f64::EPSILON * (direct + tail);
    Ok(Approx {
        value: direct + tail,
        bound: s * mf.powf(-s - 1.0) / 12.0 + rounding,
    })
}

fn check_cutoff(sieve: &Sieve, cutoff: u64, what: &str) -> Result<()> {
    if cutoff < 2 {
        return Err(Error::InvalidInput(format!("{what} must be at least 2")));
    }
    if cutoff > sieve.limit() {
        return Err(Error::OutOfRange {
            n: cutoff,
            bound: sieve.limit(),
        });
    }
    Ok(())
}

/// Prime zeta `P(s) = sum_p p^-s` over `p <= cutoff`, with bound `cutoff^(1-s)/(s-1)`.
pub fn prime_zeta(s: f64, sieve: &Sieve, cutoff: u64) -> Result<Approx> {
    require_above("prime zeta", s, 1.0)?;
    check_cutoff(sieve, cutoff, "prime cutoff")?;
    let primes = sieve.primes_up_to(cutoff);
    let value: f64 = primes.iter().rev().map(|&p| (p as f64).powf(-s)).sum();
    let c = cutoff as f64;
    Ok(Approx {
        value,
        bound: c.powf(1.0 - s) / (s - 1.0),
    })
}

/// Growth of `f(p)/h_f(p)`: declared for built-ins, measured over the
/// sieved primes otherwise.
pub fn ratio_growth(spec: &LAdditiveFunction, sieve: &Sieve, cutoff: u64) -> Result<Growth> {
    if let Some(g) = spec.growth() {
        return Ok(g);
    }
    let exponent = match (spec.f_rule(), spec.h_rule()) {
        (PrimeRule::Log, h) => 0.5 - h.degree(),
        (f, h) => f.degree() - h.degree(),
    };
    let mut constant: f64 = 0.0;
    for &p in sieve.primes_up_to(cutoff) {
        let r = spec.ratio_at_prime(p)?.to_f64().abs();
        constant = constant.max(r / (p as f64).powf(exponent));
    }
    Ok(Growth {
        constant,
        exponent,
        empirical: true,
    })
}

/// Real `s` above which `sum Lambda_f(n) n^-s` converges for this function.
pub fn abscissa(growth: &Growth) -> f64 {
    1.0f64.max(1.0 + growth.exponent)
}

/// `P_f(s) = sum_{p <= cutoff} (f(p)/h_f(p)) / (p^s - 1)`.
pub fn p_f(spec: &LAdditiveFunction, s: f64, sieve: &Sieve, cutoff: u64) -> Result<Approx> {
    check_cutoff(sieve, cutoff, "prime cutoff")?;
    let growth = ratio_growth(spec, sieve, cutoff)?;
    require_above(&format!("P_{}", spec.name()), s, abscissa(&growth))?;
    let mut value = 0.0;
    for &p in sieve.primes_up_to(cutoff).iter().rev() {
        let r = spec.ratio_at_prime(p)?.to_f64();
        value += r / ((p as f64).powf(s) - 1.0);
    }
    // p^s - 1 >= p^s / 2, then compare the prime sum with an integral over n
    let g = growth.exponent;
    let c = cutoff as f64;
    Ok(Approx {
        value,
        bound: 2.0 * growth.constant * c.powf(1.0 + g - s) / (s - 1.0 - g),
    })
}

/// `sum_{n <= n_cutoff} Lambda_f(n) n^-s`, iterating prime powers only.
pub fn truncated_lambda_series(
    spec: &LAdditiveFunction,
    s: f64,
    sieve: &Sieve,
    n_cutoff: u64,
) -> Result<Approx> {
    let growth = ratio_growth(spec, sieve, n_cutoff.min(sieve.limit()))?;
    require_above(&format!("sum Lambda_{}(n)/n^s", spec.name()), s, abscissa(&growth))?;
    if n_cutoff > sieve.limit() {
        return Err(Error::OutOfRange {
            n: n_cutoff,
            bound: sieve.limit(),
        });
    }
    let mut terms: Vec<(u64, f64)> = Vec::new();
    for &p in sieve.primes_up_to(n_cutoff) {
        let fact = crate::factor::Factorization::prime_power(p, 1);
        let lam = lambda_f(spec, &fact)?.to_f64();
        let mut q = p;
        loop {
            terms.push((q, lam));
            match q.checked_mul(p) {
                Some(next) if next <= n_cutoff => q = next,
                _ => break,
            }
        }
    }
    terms.sort_unstable_by_key(|&(q, _)| q);
    let value: f64 = terms.iter().rev().map(|&(q, lam)| lam * (q as f64).powf(-s)).sum();
    // |Lambda_f(n)| <= C p^g <= C n^max(g,0) for n = p^k
    let g = growth.exponent.max(0.0);
    let big_n = n_cutoff.max(1) as f64;
    Ok(Approx {
        value,
        bound: growth.constant * big_n.powf(1.0 + g - s) / (s - 1.0 - g),
    })
}

/// `sum_{n <= n_cutoff} F(n) n^-s` in floating point.
pub fn truncated_product_series(
    f: &FunctionHandle,
    s: f64,
    sieve: &Sieve,
    n_cutoff: u64,
) -> Result<f64> {
    if n_cutoff > sieve.factor_bound() {
        return Err(Error::OutOfRange {
            n: n_cutoff,
            bound: sieve.factor_bound(),
        });
    }
    chunked_sum(1, n_cutoff, |n| {
        Ok(f.eval(&sieve.factorize(n)?)?.to_f64() * (n as f64).powf(-s))
    })
}

/// Partial sum plus a tail bound from `|F(n)| <= C n^exponent`, with `C`
/// measured over `2..=n_cutoff`.
pub fn product_series_with_tail(
    f: &FunctionHandle,
    s: f64,
    exponent: f64,
    sieve: &Sieve,
    n_cutoff: u64,
) -> Result<(Approx, Growth)> {
    require_above(&format!("sum {}(n)/n^s", f.name()), s, 1.0 + exponent)?;
    if n_cutoff > sieve.factor_bound() {
        return Err(Error::OutOfRange {
            n: n_cutoff,
            bound: sieve.factor_bound(),
        });
    }
    let values: Vec<Result<(f64, f64)>> = (0..=(n_cutoff.saturating_sub(1) / CHUNK_SIZE))
        .into_par_iter()
        .map(|c| {
            let start = 1 + c * CHUNK_SIZE;
            let end = (start + CHUNK_SIZE - 1).min(n_cutoff);
            let (mut sum, mut cmax) = (0.0f64, 0.0f64);
            for n in start..=end {
                let v = f.eval(&sieve.factorize(n)?)?.to_f64();
                let nf = n as f64;
                sum += v * nf.powf(-s);
                if n >= 2 {
                    cmax = cmax.max(v.abs() / nf.powf(exponent));
                }
            }
            Ok((sum, cmax))
        })
        .collect();
    let values = values.into_iter().collect::<Result<Vec<_>>>()?;
    let constant = values.iter().fold(0.0f64, |m, &(_, c)| m.max(c));
    let mut sums: Vec<f64> = values.iter().map(|&(s, _)| s).collect();
    while sums.len() > 1 {
        sums = sums.chunks(2).map(|w| w.iter().sum()).collect();
    }
    let partial = sums.first().copied().unwrap_or(0.0);
    let nf = n_cutoff.max(1) as f64;
    Ok((
        Approx {
            value: partial,
            bound: constant * nf.powf(1.0 + exponent - s) / (s - 1.0 - exponent),
        },
        Growth {
            constant,
            exponent,
            empirical: true,
        },
    ))
}

/// Exact `sum_{n <= n_cutoff} F(n) / n^s` for integer `s`.
pub fn exact_partial_sum(
    f: &FunctionHandle,
    s: u32,
    sieve: &Sieve,
    n_cutoff: u64,
) -> Result<Rational> {
    let mut acc = Rational::zero();
    for n in 1..=n_cutoff {
        let v = f.eval(&sieve.factorize(n)?)?;
        let Value::Exact(r) = v else {
            return Err(Error::InvalidInput(format!("{} is not exact", f.name())));
        };
        if !r.is_zero() {
            acc += r / Rational::from_integer(num_traits::pow(BigInt::from(n), s as usize));
        }
    }
    Ok(acc)
}

/// Identifiers accepted by [`verify_series_identity`].
pub const SERIES_IDENTITIES: [&str; 5] = ["thm-2-6", "thm-4-1", "thm-4-2", "thm-4-3", "thm-4-4"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesParams {
    pub s: f64,
    pub n_cutoff: u64,
    pub prime_cutoff: u64,
    pub k: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthRecord {
    pub constant: f64,
    pub exponent: f64,
    pub empirical: bool,
}

impl From<Growth> for GrowthRecord {
    fn from(g: Growth) -> Self {
        GrowthRecord {
            constant: round_sig12(g.constant),
            exponent: round_sig12(g.exponent),
            empirical: g.empirical,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesResult {
    pub id: String,
    pub formula: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    pub params: SeriesParams,
    pub lhs_partial: f64,
    pub lhs_tail_bound: f64,
    pub rhs_value: f64,
    pub rhs_tail_bound: f64,
    pub abs_difference: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub lhs_growth: GrowthRecord,
    pub chunk_size: u64,
}

impl SeriesResult {
    /// Copy with every float rounded to 12 significant digits, for output.
    pub fn rounded(&self) -> SeriesResult {
        let mut r = self.clone();
        for x in [
            &mut r.lhs_partial,
            &mut r.lhs_tail_bound,
            &mut r.rhs_value,
            &mut r.rhs_tail_bound,
            &mut r.abs_difference,
            &mut r.tolerance,
            &mut r.params.s,
        ] {
            *x = round_sig12(*x);
        }
        r
    }
}

const ZETA_TOL: f64 = 1e-12;

/// Slack added to polynomial growth exponents so logarithmic factors are
/// absorbed by the measured constant.
fn slack(s: f64, base: f64) -> f64 {
    ((s - 1.0 - base) / 2.0).min(0.5)
}

/// Checks one closed form numerically.
///
/// `function` is the `f` of `thm-2-6` and must be `None` for the others.
pub fn verify_series_identity(
    id: &str,
    params: SeriesParams,
    function: Option<&LAdditiveFunction>,
    sieve: &Sieve,
    tolerance: f64,
) -> Result<SeriesResult> {
    let SeriesParams {
        s,
        n_cutoff,
        prime_cutoff,
        k,
    } = params;
    if n_cutoff < 2 || prime_cutoff < 2 {
        return Err(Error::InvalidInput("cutoffs must be at least 2".into()));
    }
    if !(tolerance > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    if id != "thm-2-6" && function.is_some() {
        return Err(Error::InvalidInput(format!("{id} takes no function binding")));
    }
    let kp = k.max(0) as f64;
    let kf = k as f64;
    let handle = |name: &str| builtin(name, None).expect("built-in");
    let zeta_s = || zeta(s, ZETA_TOL);

    let (formula, lhs, growth, rhs) = match id {
        "thm-2-6" => {
            let spec = function
                .ok_or_else(|| Error::InvalidInput("thm-2-6 needs a function f".into()))?;
            if !spec.is_exact() && spec.growth().is_none() {
                return Err(Error::InvalidInput("real-valued user functions unsupported".into()));
            }
            let lhs = truncated_lambda_series(spec, s, sieve, n_cutoff)?;
            let rhs = p_f(spec, s, sieve, prime_cutoff)?;
            let growth = ratio_growth(spec, sieve, prime_cutoff)?;
            (
                "sum Lambda_f(n)/n^s = sum_p f(p)/(h_f(p) p^s - h_f(p))",
                lhs,
                growth,
                rhs,
            )
        }
        "thm-4-1" => {
            require_above(id, s, 1.0)?;
            let f = handle("tau").times(&handle("Omega"));
            let (lhs, growth) =
                product_series_with_tail(&f, s, slack(s, 0.0), sieve, n_cutoff)?;
            let z = zeta_s()?;
            let p_omega = p_f(&LAdditiveFunction::builtin("Omega")?, s, sieve, prime_cutoff)?;
            let rhs = z.mul(z).mul(p_omega).scale(2.0);
            ("sum tau(n) Omega(n)/n^s = 2 zeta(s)^2 P_Omega(s)", lhs, growth, rhs)
        }
        "thm-4-2" => {
            require_above(id, s, 1f64.max(kf + 1.0))?;
            let bk = beta_k(k)?;
            let f = handle("Omega").times(&bk);
            let (lhs, growth) =
                product_series_with_tail(&f, s, kp + slack(s, kp), sieve, n_cutoff)?;
            let p_shift = prime_zeta(s - kf, sieve, prime_cutoff)?;
            let p_omega = p_f(&LAdditiveFunction::builtin("Omega")?, s, sieve, prime_cutoff)?;
            let rhs = zeta_s()?.mul(p_shift).mul(p_omega.add(Approx::exact(1.0)));
            (
                "sum Omega(n) beta_k(n)/n^s = zeta(s) P(s-k) (P_Omega(s) + 1)",
                lhs,
                growth,
                rhs,
            )
        }
        "thm-4-3" => {
            require_above(id, s, 1f64.max(kf + 1.0))?;
            let bk = beta_k(k)?;
            let f = handle("Ld").times(&bk);
            let (lhs, growth) =
                product_series_with_tail(&f, s, kp + slack(s, kp), sieve, n_cutoff)?;
            let p_ld = p_f(&LAdditiveFunction::builtin("Ld")?, s, sieve, prime_cutoff)?;
            let inner = prime_zeta(s - kf, sieve, prime_cutoff)?
                .mul(p_ld)
                .add(prime_zeta(s - kf + 1.0, sieve, prime_cutoff)?);
            let rhs = zeta_s()?.mul(inner);
            (
                "sum Ld(n) beta_k(n)/n^s = zeta(s) (P(s-k) P_Ld(s) + P(s-k+1))",
                lhs,
                growth,
                rhs,
            )
        }
        "thm-4-4" => {
            require_above(id, s, 1f64.max(kf + 2.0))?;
            let bk = beta_k(k)?;
            let f = handle("A").times(&bk);
            let base = 1.0 + kp;
            let (lhs, growth) =
                product_series_with_tail(&f, s, base + slack(s, base), sieve, n_cutoff)?;
            let p_a = p_f(&LAdditiveFunction::builtin("A")?, s, sieve, prime_cutoff)?;
            let inner = prime_zeta(s - kf, sieve, prime_cutoff)?
                .mul(p_a)
                .add(prime_zeta(s - kf - 1.0, sieve, prime_cutoff)?);
            let rhs = zeta_s()?.mul(inner);
            (
                "sum A(n) beta_k(n)/n^s = zeta(s) (P(s-k) P_A(s) + P(s-k-1))",
                lhs,
                growth,
                rhs,
            )
        }
        other => {
            return Err(Error::UnknownIdentity {
                name: other.to_string(),
                catalog: SERIES_IDENTITIES.join(", "),
            })
        }
    };
    let abs_difference = (lhs.value - rhs.value).abs();
    Ok(SeriesResult {
        id: id.to_string(),
        formula: formula.to_string(),
        function: function.map(|f| f.name().to_string()),
        params,
        lhs_partial: lhs.value,
        lhs_tail_bound: lhs.bound,
        rhs_value: rhs.value,
        rhs_tail_bound: rhs.bound,
        abs_difference,
        tolerance,
        passed: abs_difference <= tolerance + lhs.bound + rhs.bound,
        lhs_growth: growth.into(),
        chunk_size: CHUNK_SIZE,
    })
}

/// `sum_{n <= N} (1 * Lambda_f)(n)/n^s` and `sum_{n <= N} f(n)/n^s`, exactly.
pub fn exact_lambda_product_check(
    spec: &LAdditiveFunction,
    s: u32,
    sieve: &Sieve,
    n_cutoff: u64,
) -> Result<(Rational, Rational)> {
    let one = builtin("one", None)?;
    let lhs = convolution(&one, &crate::mangoldt::lambda_handle(spec));
    Ok((
        exact_partial_sum(&lhs, s, sieve, n_cutoff)?,
        exact_partial_sum(&spec.handle(), s, sieve, n_cutoff)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec(name: &str) -> LAdditiveFunction {
        LAdditiveFunction::builtin(name).unwrap()
    }

    #[test]
    fn zeta_values() {
        let z2 = zeta(2.0, 1e-9).unwrap();
        assert!((z2.value - PI * PI / 6.0).abs() <= 1e-9);
        assert!(z2.bound <= 1e-9);
        assert!((z2.value - 1.644934067).abs() < 1e-9);
        let z4 = zeta(4.0, 1e-9).unwrap();
        assert!((z4.value - PI.powi(4) / 90.0).abs() <= 1e-9);
        assert!(matches!(zeta(1.0, 1e-9), Err(Error::Abscissa { .. })));
        assert!(zeta(0.5, 1e-9).is_err());
        assert!(matches!(zeta(1.5, 1e-25), Err(Error::Unattainable(_))));
        assert!((zeta(1.0 + 1e-3, 1e-9).unwrap().value - 1000.577).abs() < 1e-3);
    }

    #[test]
    fn prime_zeta_values() {
        let sieve = Sieve::new(1_000_000).unwrap();
        let oracle: f64 = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
            .iter()
            .map(|&p| (p as f64).powi(-10))
            .sum();
        let p10 = prime_zeta(10.0, &sieve, 100).unwrap();
        assert!((p10.value - oracle).abs() < 1e-15);
        assert!((p10.value - 0.000993604).abs() < 1e-9);
        let p2 = prime_zeta(2.0, &sieve, 1_000_000).unwrap();
        assert!((p2.value - 0.452247).abs() < 1e-6 + p2.bound);
        assert_eq!(prime_zeta(3.0, &sieve, 2).unwrap().value, 0.125);
        assert!(prime_zeta(1.0, &sieve, 100).is_err());
        assert!(prime_zeta(2.0, &sieve, 1).is_err());
    }

    #[test]
    fn p_f_values() {
        let sieve = Sieve::new(100_000).unwrap();
        let single = p_f(&spec("Omega"), 2.0, &sieve, 2).unwrap();
        assert!((single.value - 1.0 / 3.0).abs() < 1e-15);
        let ld = p_f(&spec("Ld"), 2.0, &sieve, 100_000).unwrap();
        let oracle: f64 = sieve.primes().iter().map(|&p| 1.0 / (p as f64 * ((p * p) as f64 - 1.0))).sum();
        assert!((ld.value - oracle).abs() < 1e-12);
        assert!((ld.value - 0.221463).abs() < 1e-5 + ld.bound);
        match p_f(&spec("A"), 2.0, &sieve, 100) {
            Err(Error::Abscissa { abscissa, .. }) => assert_eq!(abscissa, 2.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lambda_series_values() {
        let sieve = Sieve::new(1000).unwrap();
        let v = truncated_lambda_series(&spec("Omega"), 2.0, &sieve, 3).unwrap().value;
        assert!((v - (0.25 + 1.0 / 9.0)).abs() < 1e-15);
        let v = truncated_lambda_series(&spec("Ld"), 2.0, &sieve, 4).unwrap().value;
        assert!((v - 0.193287).abs() < 1e-6);
        assert_eq!(truncated_lambda_series(&spec("Ld"), 2.0, &sieve, 1).unwrap().value, 0.0);
    }

    #[test]
    fn product_series_values() {
        let sieve = Sieve::new(1000).unwrap();
        let tau_omega = builtin("tau", None).unwrap().times(&builtin("Omega", None).unwrap());
        assert_eq!(truncated_product_series(&tau_omega, 3.0, &sieve, 2).unwrap(), 0.25);
        let om_beta = builtin("Omega", None).unwrap().times(&builtin("beta_1", None).unwrap());
        let v = truncated_product_series(&om_beta, 3.0, &sieve, 4).unwrap();
        assert!((v - 0.423611).abs() < 1e-6);
        assert_eq!(truncated_product_series(&om_beta, 3.0, &sieve, 1).unwrap(), 0.0);
    }

    #[test]
    fn chunked_sum_is_deterministic() {
        let a = chunked_sum(1, 100_000, |n| Ok(1.0 / (n as f64))).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let b = pool.install(|| chunked_sum(1, 100_000, |n| Ok(1.0 / (n as f64))).unwrap());
        assert_eq!(a.to_bits(), b.to_bits());
        assert_eq!(chunked_sum(5, 4, |_| Ok(1.0)).unwrap(), 0.0);
    }

    #[test]
    fn thm_2_6_two_paths() {
        let sieve = Sieve::new(100_000).unwrap();
        for name in ["Omega", "Ld", "A"] {
            for s in [2.0, 3.0] {
                if name == "A" && s <= 2.0 {
                    continue;
                }
                let params = SeriesParams { s, n_cutoff: 100_000, prime_cutoff: 100_000, k: 0 };
                let r = verify_series_identity("thm-2-6", params, Some(&spec(name)), &sieve, 1e-6).unwrap();
                assert!(r.passed, "{name} s={s}: {r:?}");
            }
        }
    }

    #[test]
    fn abscissa_rejections() {
        let sieve = Sieve::new(1000).unwrap();
        let p = |s, k| SeriesParams { s, n_cutoff: 100, prime_cutoff: 100, k };
        assert!(matches!(verify_series_identity("thm-4-4", p(3.0, 1), None, &sieve, 1e-3), Err(Error::Abscissa { .. })));
        assert!(matches!(verify_series_identity("thm-4-2", p(2.0, 1), None, &sieve, 1e-3), Err(Error::Abscissa { .. })));
        assert!(matches!(verify_series_identity("thm-4-1", p(1.0, 0), None, &sieve, 1e-3), Err(Error::Abscissa { .. })));
        assert!(matches!(verify_series_identity("thm-4-3", p(2.0, 1), None, &sieve, 1e-3), Err(Error::Abscissa { .. })));
        assert!(verify_series_identity("thm-2-6", p(2.0, 0), Some(&spec("A")), &sieve, 1e-3).is_err());
        assert!(verify_series_identity("thm-2-6", p(2.0, 0), None, &sieve, 1e-3).is_err());
        assert!(matches!(verify_series_identity("thm-9-9", p(2.0, 0), None, &sieve, 1e-3), Err(Error::UnknownIdentity { .. })));
    }

    #[test]
    fn exact_termwise_product() {
        let sieve = Sieve::new(2000).unwrap();
        let (lhs, rhs) = exact_lambda_product_check(&spec("Omega"), 2, &sieve, 2000).unwrap();
        assert_eq!(lhs, rhs);
    }
}
