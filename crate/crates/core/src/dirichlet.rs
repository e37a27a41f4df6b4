//! Dirichlet convolution `(F * G)(n) = sum_{d | n} F(d) G(n/d)`.

use crate::error::Result;
use crate::factor::Factorization;
use crate::functions::{FunctionHandle, FunctionKind};
use crate::numeric::Value;

pub fn convolve(f: &FunctionHandle, g: &FunctionHandle, fact: &Factorization) -> Result<Value> {
    let mut terms = fact.divisor_pairs().into_iter();
    let (d, rest) = terms.next().expect("1 divides n");
    let mut acc = f.eval(&d)? * g.eval(&rest)?;
    for (d, rest) in terms {
        acc = acc + f.eval(&d)? * g.eval(&rest)?;
    }
    Ok(acc)
}

/// `(F * G)(p^m) = sum_{j=0}^{m} F(p^j) G(p^{m-j})` without a divisor list.
pub fn convolve_prime_power(
    f: &FunctionHandle,
    g: &FunctionHandle,
    p: u64,
    m: u32,
) -> Result<Value> {
    let mut acc = f.eval(&Factorization::one())? * g.eval(&Factorization::prime_power(p, m))?;
    for j in 1..=m {
        let left = Factorization::prime_power(p, j);
        let right = Factorization::prime_power(p, m - j);
        acc = acc + f.eval(&left)? * g.eval(&right)?;
    }
    Ok(acc)
}

/// `F * G` as a handle.
pub fn convolution(f: &FunctionHandle, g: &FunctionHandle) -> FunctionHandle {
    let (a, b) = (f.clone(), g.clone());
    FunctionHandle::new(
        format!("({} * {})", f.name(), g.name()),
        FunctionKind::Plumbing,
        move |n| convolve(&a, &b, n),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::Sieve;
    use crate::functions::{builtin, LAdditiveFunction};
    use crate::mangoldt::lambda_handle;
    use crate::numeric::rat;

    fn lam(name: &str) -> FunctionHandle {
        lambda_handle(&LAdditiveFunction::builtin(name).unwrap())
    }

    fn b(name: &str) -> FunctionHandle {
        builtin(name, None).unwrap()
    }

    #[test]
    fn convolve_examples() {
        let s = Sieve::new(100).unwrap();
        let twelve = s.factorize(12).unwrap();
        assert_eq!(convolve(&b("one"), &lam("Omega"), &twelve).unwrap(), Value::from_int(3));
        for n in 1..300 {
            let f = s.factorize(n).unwrap();
            assert_eq!(convolve(&b("tau"), &b("e"), &f).unwrap(), b("tau").eval(&f).unwrap());
            assert_eq!(convolve(&b("e"), &b("A"), &f).unwrap(), b("A").eval(&f).unwrap());
        }
        // (F*G)(p) = F(1)G(p) + F(p)G(1)
        let (f, g) = (b("tau"), b("beta_2"));
        let p = s.factorize(7).unwrap();
        let one = Factorization::one();
        let expected = f.eval(&one).unwrap() * g.eval(&p).unwrap() + f.eval(&p).unwrap() * g.eval(&one).unwrap();
        assert_eq!(convolve(&f, &g, &p).unwrap(), expected);
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(convolve_prime_power(&lam("Omega"), &lam("Omega"), 2, 3).unwrap(), Value::from_int(2));
        let (t, m) = (b("tau"), b("mu"));
        assert_eq!(convolve_prime_power(&t, &t, 5, 0).unwrap(), Value::one());
        assert_eq!(convolve_prime_power(&lam("Ld"), &lam("A"), 3, 4).unwrap(), Value::from_int(3));
        let s = Sieve::new(1000).unwrap();
        for p in [2u64, 3, 5, 7] {
            for k in 0..6u32 {
                let f = s.factorize(p.pow(k)).unwrap();
                assert_eq!(convolve_prime_power(&t, &m, p, k).unwrap(), convolve(&t, &m, &f).unwrap());
            }
        }
    }

    #[test]
    fn convolution_handle_matches() {
        let s = Sieve::new(100).unwrap();
        let h = convolution(&lam("Ld"), &b("A"));
        assert_eq!(h.eval(&s.factorize(12).unwrap()).unwrap(), Value::Exact(rat(16, 3)));
    }
}
