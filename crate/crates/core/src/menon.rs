//! Menon's identity, `sum over units a mod n of gcd(a - 1, n) = phi(n) tau(n)`,
//! checked directly and through its per-prime factorization.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{euler_phi, factorize, gcd_u64, tau, Factorization};
use crate::counting::local_sum_naive;
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MenonCheck {
    pub n: BigUint,
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub holds: bool,
}

/// `sum_{1 <= a <= n, gcd(a, n) = 1} gcd(a - 1, n)` by direct summation.
pub fn menon_lhs(n: &BigUint, budget: u64) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let n = match n.to_u64() {
        Some(n) if n <= budget => n,
        _ => {
            return Err(Error::BudgetExceeded {
                what: "direct Menon sum",
                needed: n.to_string(),
                budget,
            })
        }
    };
    Ok((1..=n).filter(|&a| gcd_u64(a, n) == 1).map(|a| BigUint::from(gcd_u64(a - 1, n))).sum())
}

/// The left side as a product of one-exponent local sums over the primes of `n`.
pub fn menon_factored_lhs(n: &Factorization, budget: u64) -> Result<BigUint> {
    n.factors()
        .iter()
        .map(|(p, e)| local_sum_naive(p, &[*e], budget).map(|s| s.sum))
        .product()
}

pub fn menon_check(n: &BigUint, limits: &Limits) -> Result<MenonCheck> {
    let lhs = menon_lhs(n, limits.iteration_budget)?;
    let f = factorize(n, &limits.factor)?;
    let rhs = euler_phi(&f) * tau(&f);
    Ok(MenonCheck { n: n.clone(), holds: lhs == rhs, lhs, rhs })
}
