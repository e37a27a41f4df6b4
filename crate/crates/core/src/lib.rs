//! Generalized von Mangoldt functions attached to L-additive arithmetic
//! functions, with exact identity sweeps and Dirichlet-series checks.
//!
//! A function `f` is L-additive when `f(mn) = f(m) h(n) + f(n) h(m)` for a
//! completely multiplicative, nonvanishing `h`. Its von Mangoldt function is
//! `Lambda_f(p^k) = f(p)/h(p)` on prime powers and zero elsewhere.

pub mod dirichlet;
pub mod error;
pub mod expr;
pub mod factor;
pub mod functions;
pub mod identities;
pub mod mangoldt;
pub mod numeric;
pub mod series;
pub mod specfile;

pub use error::{Error, Result};
pub use factor::{Factorization, Sieve};
pub use functions::{builtin, FunctionHandle, FunctionKind, LAdditiveFunction, PrimeRule};
pub use numeric::{Rational, Value};
