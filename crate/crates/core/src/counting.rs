//! Closed-form count of the cyclic subgroups of a finite abelian group.
//!
//! For each prime `p` with exponents `a_1 <= ... <= a_r` the local sum is
//!
//! ```text
//! S_p = sum over 1 <= m <= p^a_r, p does not divide m, of prod_j gcd(m - 1, p^a_j)
//! ```
//!
//! and `|L1(G)| * phi(exp G) = prod_p S_p`. The naive path walks every `m`;
//! the fast path groups the `m` by the p-adic valuation of `m - 1`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{euler_phi, factorize, gcd_u64, lcm_nat, tau, Factorization};
use crate::error::{Error, Result};
use crate::groupspec::{exponent_of, PrimaryDecomposition};
use crate::limits::Limits;

/// How a count was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    FormulaNaive,
    FormulaFast,
    BurnsideOracle,
    EnumerationOracle,
    Rank2Formula,
    HomocyclicFormula,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::FormulaNaive => "formula-naive",
            Method::FormulaFast => "formula-fast",
            Method::BurnsideOracle => "burnside-oracle",
            Method::EnumerationOracle => "enumeration-oracle",
            Method::Rank2Formula => "rank2-formula",
            Method::HomocyclicFormula => "homocyclic-formula",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which evaluation of the local sums to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumPath {
    Naive,
    Fast,
}

/// One prime's factor of the product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSumReport {
    pub prime: BigUint,
    pub exponents: Vec<u32>,
    pub sum: BigUint,
    /// `(m, term)` for every admissible `m`; only filled by the naive path.
    pub terms: Option<Vec<(u64, BigUint)>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub count: BigUint,
    pub exponent: BigUint,
    pub phi_exponent: BigUint,
    pub local_sums: Vec<LocalSumReport>,
    pub method: Method,
}

fn check_exponents(exponents: &[u32]) -> Result<()> {
    if exponents.is_empty() || exponents[0] == 0 || exponents.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidExponents(exponents.to_vec()));
    }
    Ok(())
}

/// `p^a_r` as a loop bound, or a budget error.
fn loop_bound(what: &'static str, p: &BigUint, top: u32, budget: u64) -> Result<u64> {
    let bound = p.pow(top);
    match bound.to_u64() {
        Some(b) if b <= budget => Ok(b),
        _ => Err(Error::BudgetExceeded { what, needed: bound.to_string(), budget }),
    }
}

/// Divides exactly or reports the broken invariant.
pub(crate) fn exact_div(numerator: &BigUint, denominator: &BigUint) -> Result<BigUint> {
    let (q, r) = numerator.div_rem(denominator);
    if !r.is_zero() {
        return Err(Error::InexactDivision {
            numerator: numerator.to_string(),
            denominator: denominator.to_string(),
        });
    }
    Ok(q)
}

/// Terms are listed in the report only for ranges up to this length.
pub const MAX_RECORDED_TERMS: u64 = 1 << 16;

/// Evaluates the local sum term by term. Fails when `p^a_r` exceeds `budget`.
pub fn local_sum_naive(p: &BigUint, exponents: &[u32], budget: u64) -> Result<LocalSumReport> {
    check_exponents(exponents)?;
    let top = *exponents.last().expect("checked");
    let bound = loop_bound("naive local sum", p, top, budget)?;
    // bound fits u64, so does p and every p^a_j.
    let p64 = p.to_u64().expect("p <= p^a_r");
    let moduli: Vec<u64> = exponents.iter().map(|&a| p64.pow(a)).collect();

    let top_modulus = *moduli.last().expect("checked");
    let record = bound <= MAX_RECORDED_TERMS;
    let mut terms = Vec::new();
    let total: u32 = exponents.iter().sum();
    let sum = if p.pow(total).bits() <= 128 {
        let mut sum = BigUint::zero();
        let mut acc = 0u128;
        for m in (1..=bound).filter(|m| m % p64 != 0) {
            // every p^a_j divides p^a_r
            let g = gcd_u64(m - 1, top_modulus);
            let term: u128 = if g == 1 { 1 } else { moduli.iter().map(|&q| u128::from(gcd_u64(g, q))).product() };
            acc = match acc.checked_add(term) {
                Some(next) => next,
                None => {
                    sum += acc;
                    term
                }
            };
            if record {
                terms.push((m, BigUint::from(term)));
            }
        }
        sum + acc
    } else {
        let mut sum = BigUint::zero();
        for m in (1..=bound).filter(|m| m % p64 != 0) {
            let term: BigUint = moduli.iter().map(|&q| BigUint::from(gcd_u64(m - 1, q))).product();
            sum += &term;
            if record {
                terms.push((m, term));
            }
        }
        sum
    };
    Ok(LocalSumReport { prime: p.clone(), exponents: exponents.to_vec(), sum, terms: record.then_some(terms) })
}

/// Evaluates the local sum in `O(a_r * r)` big-integer operations.
///
/// An `m` with `v = v_p(m - 1)` contributes `p^(sum_j min(v, a_j))`. In the
/// range `1..=p^a_r` there is one `m` with `v >= a_r` (namely `m = 1`),
/// `p^(a_r - v) - p^(a_r - v - 1)` with `1 <= v < a_r`, and
/// `p^a_r - 2 p^(a_r - 1)` units with `v = 0`.
pub fn local_sum_fast(p: &BigUint, exponents: &[u32]) -> Result<LocalSumReport> {
    check_exponents(exponents)?;
    let top = *exponents.last().expect("checked");
    let contribution = |v: u32| -> BigUint {
        let e: u64 = exponents.iter().map(|&a| u64::from(a.min(v))).sum();
        p.pow(u32::try_from(e).expect("exponent sum fits u32"))
    };

    // m = 1
    let mut sum = contribution(top);
    for v in 1..top {
        let multiplicity = p.pow(top - v) - p.pow(top - v - 1);
        sum += multiplicity * contribution(v);
    }
    // valuation 0 contributes p^0 = 1 per element
    sum += p.pow(top) - p.pow(top - 1) * 2u32;
    Ok(LocalSumReport { prime: p.clone(), exponents: exponents.to_vec(), sum, terms: None })
}

fn local_sum(p: &BigUint, exponents: &[u32], path: SumPath, limits: &Limits) -> Result<LocalSumReport> {
    match path {
        SumPath::Naive => local_sum_naive(p, exponents, limits.iteration_budget),
        SumPath::Fast => local_sum_fast(p, exponents),
    }
}

/// `|L1(G)|` from the product of local sums divided by `phi(exp G)`.
///
/// The trivial group gives 1. An inexact division is reported as
/// [`Error::InexactDivision`] rather than truncated.
pub fn count_cyclic_subgroups(
    d: &PrimaryDecomposition,
    path: SumPath,
    limits: &Limits,
) -> Result<CountReport> {
    let local_sums = d
        .components()
        .iter()
        .map(|(p, exps)| local_sum(p, exps, path, limits))
        .collect::<Result<Vec<_>>>()?;
    let exponent = exponent_of(d);
    let phi_exponent = euler_phi(&exponent);
    let product: BigUint = local_sums.iter().map(|s| &s.sum).product();
    Ok(CountReport {
        count: exact_div(&product, &phi_exponent)?,
        exponent: exponent.value(),
        phi_exponent,
        local_sums,
        method: match path {
            SumPath::Naive => Method::FormulaNaive,
            SumPath::Fast => Method::FormulaFast,
        },
    })
}

/// Cyclic groups: `|L1(Z_n)| = tau(n)`, one subgroup per divisor.
pub fn count_cyclic_subgroups_cyclic(n: &Factorization) -> BigUint {
    tau(n)
}

fn corollary_sum<F>(p: &BigUint, top: u32, budget: u64, term: F) -> Result<BigUint>
where
    F: Fn(u64) -> BigUint,
{
    let bound = loop_bound("corollary local sum", p, top, budget)?;
    let p64 = p.to_u64().expect("p <= p^top");
    Ok((1..=bound).filter(|m| m % p64 != 0).map(|m| term(m - 1)).sum())
}

/// `|L1(Z_m x Z_n)|` summed directly over the primes of `lcm(m, n)`.
///
/// A prime missing from one of `m`, `n` has exponent 0 there and its gcd
/// factor is `gcd(., 1) = 1`.
pub fn count_rank2(m: &BigUint, n: &BigUint, limits: &Limits) -> Result<CountReport> {
    let fm = factorize(m, &limits.factor)?;
    let fn_ = factorize(n, &limits.factor)?;
    let l = lcm_nat(m, n);
    let fl = factorize(&l, &limits.factor)?;

    let mut local_sums = Vec::new();
    for (p, _) in fl.factors() {
        let (a, b) = (fm.exponent_of(p), fn_.exponent_of(p));
        let top = a.max(b);
        let p64 = p.to_u64();
        let sum = corollary_sum(p, top, limits.iteration_budget, |k| {
            let p64 = p64.expect("bounded by loop_bound");
            BigUint::from(gcd_u64(k, p64.pow(a))) * gcd_u64(k, p64.pow(b))
        })?;
        let exponents = [a.min(b), top].into_iter().filter(|&e| e > 0).collect();
        local_sums.push(LocalSumReport { prime: p.clone(), exponents, sum, terms: None });
    }
    let phi_l = euler_phi(&fl);
    let product: BigUint = local_sums.iter().map(|s| &s.sum).product();
    Ok(CountReport {
        count: exact_div(&product, &phi_l)?,
        exponent: l,
        phi_exponent: phi_l,
        local_sums,
        method: Method::Rank2Formula,
    })
}

/// `|L1(Z_n^r)|` with each local sum `sum gcd(m - 1, p^a)^r`.
pub fn count_homocyclic(n: &Factorization, r: u32, limits: &Limits) -> Result<CountReport> {
    if r == 0 {
        return Err(Error::InvalidExponents(vec![0]));
    }
    let mut local_sums = Vec::new();
    for (p, a) in n.factors() {
        let q = p.to_u64().map(|p| p.pow(*a));
        let sum = corollary_sum(p, *a, limits.iteration_budget, |k| {
            BigUint::from(gcd_u64(k, q.expect("bounded by loop_bound"))).pow(r)
        })?;
        local_sums.push(LocalSumReport {
            prime: p.clone(),
            exponents: vec![*a; r as usize],
            sum,
            terms: None,
        });
    }
    let phi_n = euler_phi(n);
    let product: BigUint = local_sums.iter().map(|s| &s.sum).product();
    Ok(CountReport {
        count: exact_div(&product, &phi_n)?,
        exponent: n.value(),
        phi_exponent: phi_n,
        local_sums,
        method: Method::HomocyclicFormula,
    })
}

/// Convenience: factorize `n` and call [`count_homocyclic`].
pub fn count_homocyclic_of(n: &BigUint, r: u32, limits: &Limits) -> Result<CountReport> {
    count_homocyclic(&factorize(n, &limits.factor)?, r, limits)
}
