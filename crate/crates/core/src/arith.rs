//! Exact arithmetic over unbounded naturals: gcd, lcm, Euler's totient,
//! divisor count, p-adic valuation and prime factorization.
//!
//! Factorization uses trial division by small primes, then Pollard's rho
//! (Brent's variant) with Miller-Rabin as the primality test. Below 2^64 the
//! Miller-Rabin witness set is deterministic.

use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::limits::FactorLimits;

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

// Deterministic for every n < 3.3 * 10^24, which covers u64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const TRIAL_DIVISION_BOUND: u64 = 1 << 12;

/// Greatest common divisor with `gcd(0, b) = b`, `gcd(a, 0) = a`, `gcd(0, 0) = 0`.
///
/// The zero convention matters: the `m = 1` term of every local sum is
/// `gcd(0, p^a) = p^a`.
pub fn gcd_nat(a: &BigUint, b: &BigUint) -> BigUint {
    a.gcd(b)
}

pub fn lcm_nat(a: &BigUint, b: &BigUint) -> BigUint {
    if a.is_zero() || b.is_zero() {
        return BigUint::zero();
    }
    a.lcm(b)
}

/// Binary gcd on machine words, same zero convention as [`gcd_nat`].
pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// Prime factorization of a positive integer, primes strictly ascending.
///
/// The factorization of 1 is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization::default()
    }

    /// Builds a factorization from `(prime, exponent)` pairs in any order.
    /// Repeated primes are merged; every base must be prime and every
    /// exponent positive.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigUint, u32)>,
    {
        let mut factors: Vec<(BigUint, u32)> = Vec::new();
        for (p, e) in pairs {
            if e == 0 {
                return Err(Error::InvalidFactorization(format!("prime {p} has exponent 0")));
            }
            if !is_prime(&p) {
                return Err(Error::InvalidFactorization(format!("{p} is not prime")));
            }
            factors.push((p, e));
        }
        Ok(Self::from_prime_pairs(factors))
    }

    // Callers guarantee every base is prime and every exponent positive.
    pub(crate) fn from_prime_pairs(mut factors: Vec<(BigUint, u32)>) -> Self {
        factors.sort();
        let mut merged: Vec<(BigUint, u32)> = Vec::with_capacity(factors.len());
        for (p, e) in factors {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        Factorization { factors: merged }
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// The integer this factorization represents.
    pub fn value(&self) -> BigUint {
        self.factors.iter().map(|(p, e)| p.pow(*e)).product()
    }
}

/// Euler's totient, `prod (p - 1) p^(e - 1)`.
pub fn euler_phi(f: &Factorization) -> BigUint {
    f.factors().iter().map(|(p, e)| (p - 1u32) * p.pow(e - 1)).product()
}

/// Number of divisors, `prod (e + 1)`.
pub fn tau(f: &Factorization) -> BigUint {
    f.factors().iter().map(|(_, e)| BigUint::from(*e) + 1u32).product()
}

/// Largest `v` with `p^v | n`. Returns 0 for `n = 0` or `p < 2`.
pub fn p_valuation(n: &BigUint, p: &BigUint) -> u64 {
    if n.is_zero() || *p < BigUint::from(2u32) {
        return 0;
    }
    let mut v = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        rest = q;
        v += 1;
    }
}

pub fn p_valuation_u64(mut n: u64, p: u64) -> u32 {
    if n == 0 || p < 2 {
        return 0;
    }
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    if n < 97 * 97 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality test. Exact below 2^64; above, a strong probable-prime test to
/// the first twelve prime bases plus a few larger ones.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let extra = [41u64, 43, 47, 53, 59, 61, 67, 71];
    'witness: for &a in MR_WITNESSES.iter().chain(extra.iter()) {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's cycle finding with batched gcds. Returns a nontrivial factor of an
// odd composite n.
fn rho_u64(n: u64) -> u64 {
    for c in 1..n {
        let step = |y: u64| ((y as u128 * y as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(r - k).min(128) {
                    y = step(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = step(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho failed on {n}, which must then be prime")
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = rho_u64(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// Complete factorization of a machine word. Panics on 0.
pub fn factorize_u64(n: u64) -> Factorization {
    assert!(n > 0, "factorize_u64(0)");
    let mut rest = n;
    let mut primes = Vec::new();
    for &p in &SMALL_PRIMES {
        while rest.is_multiple_of(p) {
            rest /= p;
            primes.push(p);
        }
    }
    let mut d = 101;
    while d <= TRIAL_DIVISION_BOUND && d * d <= rest {
        while rest.is_multiple_of(d) {
            rest /= d;
            primes.push(d);
        }
        d += 2;
    }
    if rest > 1 && d * d > rest {
        primes.push(rest);
    } else {
        factor_u64_into(rest, &mut primes);
    }
    Factorization::from_prime_pairs(primes.into_iter().map(|p| (BigUint::from(p), 1)).collect())
}

fn rho_big(n: &BigUint, deadline: Instant) -> Option<BigUint> {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let step = |y: &BigUint| (y * y + &c) % n;
        let mut x;
        let mut y = BigUint::from(2u32);
        let mut ys = y.clone();
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut r = 1u64;
        while g == one {
            if Instant::now() > deadline {
                return None;
            }
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..(r - k).min(128) {
                    y = step(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
            if g == *n {
                loop {
                    ys = step(&ys);
                    let diff = if x > ys { &x - &ys } else { &ys - &x };
                    g = diff.gcd(n);
                    if g > one {
                        break;
                    }
                }
            }
        }
        if g != *n {
            return Some(g);
        }
        c += 1u32;
    }
}

fn factor_big_into(n: BigUint, deadline: Instant, out: &mut Vec<BigUint>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if let Some(small) = n.to_u64() {
        out.extend(factorize_u64(small).factors().iter().flat_map(|(p, e)| {
            std::iter::repeat_n(p.clone(), *e as usize)
        }));
        return Ok(());
    }
    if is_prime(&n) {
        out.push(n);
        return Ok(());
    }
    // rho needs about sqrt(p) steps on p^k, so peel perfect powers first.
    for k in 2..=n.bits() as u32 {
        let root = n.nth_root(k);
        if root.pow(k) == n {
            let mut root_primes = Vec::new();
            factor_big_into(root, deadline, &mut root_primes)?;
            for p in root_primes {
                out.extend(std::iter::repeat_n(p, k as usize));
            }
            return Ok(());
        }
    }
    let d = rho_big(&n, deadline)
        .ok_or_else(|| Error::FactorBudgetExhausted { value: n.to_string() })?;
    let cofactor = &n / &d;
    factor_big_into(d, deadline, out)?;
    factor_big_into(cofactor, deadline, out)
}

/// Prime factorization of `n >= 1`.
///
/// Inputs that fit in 64 bits always succeed. Larger inputs are rejected
/// above `limits.max_bits` and otherwise fail with
/// [`Error::FactorBudgetExhausted`] if `limits.time_budget` runs out.
pub fn factorize(n: &BigUint, limits: &FactorLimits) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    if let Some(small) = n.to_u64() {
        return Ok(factorize_u64(small));
    }
    if n.bits() > limits.max_bits {
        return Err(Error::TooLarge { bits: n.bits(), max_bits: limits.max_bits });
    }
    let deadline = Instant::now() + limits.time_budget;
    let mut rest = n.clone();
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_BOUND {
        while (&rest % d).is_zero() {
            rest /= d;
            primes.push(BigUint::from(d));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    factor_big_into(rest, deadline, &mut primes)?;
    Ok(Factorization::from_prime_pairs(primes.into_iter().map(|p| (p, 1)).collect()))
}
