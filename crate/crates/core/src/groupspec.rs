//! Group descriptions and their canonical primary decomposition.
//!
//! Accepted input grammar (whitespace between tokens is ignored):
//!
//! ```text
//! spec     := factor (sep factor)*
//! sep      := 'x' | 'X' | '*' | '×'
//! factor   := base ('^' repeat)?
//! base     := ('Z' | 'z') '_'? number | ('C' | 'c') number | number
//! number   := decimal digits, value >= 1
//! repeat   := decimal digits, 1 <= value <= 1000000
//! ```
//!
//! `Z6^2 * 5` therefore means `Z6 x Z6 x Z5`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::arith::{factorize, factorize_u64, is_prime, Factorization};
use crate::error::{Error, Result};
use crate::limits::FactorLimits;

pub const MAX_REPEAT: u32 = 1_000_000;

/// A finite abelian group as entered: a list of cyclic factor orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupSpec {
    factor_orders: Vec<BigUint>,
}

impl GroupSpec {
    pub fn new(factor_orders: Vec<BigUint>) -> Result<Self> {
        if factor_orders.iter().any(Zero::is_zero) {
            return Err(Error::ZeroFactorOrder { position: 0 });
        }
        Ok(GroupSpec { factor_orders })
    }

    pub fn from_u64s(orders: &[u64]) -> Result<Self> {
        Self::new(orders.iter().copied().map(BigUint::from).collect())
    }

    pub fn factor_orders(&self) -> &[BigUint] {
        &self.factor_orders
    }

    pub fn order(&self) -> BigUint {
        self.factor_orders.iter().product()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factor_orders.is_empty() {
            return f.write_str("1");
        }
        for (i, n) in self.factor_orders.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "Z{n}")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    // 1-based character column of the current token.
    fn column(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.chars().count() + 1, |&(c, _)| c + 1)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.column(), message: message.into() })
    }

    fn number(&mut self, what: &str) -> Result<(usize, BigUint)> {
        self.skip_ws();
        let column = self.column();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.peek() {
                Some(c) => self.error(format!("expected {what}, found '{c}'")),
                None => self.error(format!("expected {what}, found end of input")),
            };
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        let value = BigUint::parse_bytes(digits.as_bytes(), 10).expect("ascii digits");
        Ok((column, value))
    }

    fn factor(&mut self, out: &mut Vec<BigUint>) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some('Z' | 'z') => {
                self.pos += 1;
                self.skip_ws();
                if self.peek() == Some('_') {
                    self.pos += 1;
                }
            }
            Some('C' | 'c') => self.pos += 1,
            _ => {}
        }
        let (column, order) = self.number("a factor order")?;
        if order.is_zero() {
            return Err(Error::ZeroFactorOrder { position: column });
        }
        self.skip_ws();
        let mut repeat = 1u32;
        if self.peek() == Some('^') {
            self.pos += 1;
            let (column, r) = self.number("a repeat count")?;
            repeat = match u32::try_from(&r) {
                Ok(r) if (1..=MAX_REPEAT).contains(&r) => r,
                _ => {
                    return Err(Error::Syntax {
                        position: column,
                        message: format!("repeat count must be between 1 and {MAX_REPEAT}"),
                    })
                }
            };
        }
        out.extend(std::iter::repeat_n(order, repeat as usize));
        Ok(())
    }
}

/// Parses a group description such as `"Z2 x Z12 x Z72"` or `"Z6^2 * 5"`.
///
/// Syntax errors carry the 1-based character column of the offending token.
pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut parser = Parser { chars: text.char_indices().collect(), pos: 0, text };
    // char_indices gives byte offsets; columns are counted in characters.
    for (i, entry) in parser.chars.iter_mut().enumerate() {
        entry.0 = i;
    }
    parser.skip_ws();
    if parser.peek().is_none() {
        return parser.error("empty group specification");
    }
    let mut orders = Vec::new();
    loop {
        parser.factor(&mut orders)?;
        parser.skip_ws();
        match parser.peek() {
            None => break,
            Some('x' | 'X' | '*' | '×') => parser.pos += 1,
            Some(c) => return parser.error(format!("expected 'x', '*' or end of input, found '{c}'")),
        }
    }
    Ok(GroupSpec { factor_orders: orders })
}

/// Canonical form of a finite abelian group: for every prime `p`, the
/// ascending exponents `a_1 <= ... <= a_r` of its cyclic factors `Z_{p^a_j}`.
///
/// Displays as its prime-power factors, e.g. `Z2 x Z4 x Z3`, which parses
/// back to the same decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct PrimaryDecomposition {
    components: BTreeMap<BigUint, Vec<u32>>,
}

impl PrimaryDecomposition {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Builds a decomposition from `(prime, exponents)` pairs. Exponents are
    /// sorted; repeated primes are merged; empty lists are dropped.
    pub fn from_components<I>(components: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigUint, Vec<u32>)>,
    {
        let mut map: BTreeMap<BigUint, Vec<u32>> = BTreeMap::new();
        for (p, exps) in components {
            if exps.contains(&0) {
                return Err(Error::InvalidExponents(exps));
            }
            if !is_prime(&p) {
                return Err(Error::InvalidFactorization(format!("{p} is not prime")));
            }
            if !exps.is_empty() {
                map.entry(p).or_default().extend(exps);
            }
        }
        for exps in map.values_mut() {
            exps.sort_unstable();
        }
        Ok(PrimaryDecomposition { components: map })
    }

    pub fn from_u64_components(components: &[(u64, &[u32])]) -> Result<Self> {
        Self::from_components(components.iter().map(|(p, e)| (BigUint::from(*p), e.to_vec())))
    }

    pub fn components(&self) -> &BTreeMap<BigUint, Vec<u32>> {
        &self.components
    }

    pub fn is_trivial(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.components.values().all(|e| e.len() == 1)
    }

    /// Every cyclic prime-power factor `(p, a)`, primes ascending and
    /// exponents ascending within a prime.
    pub fn prime_power_factors(&self) -> impl Iterator<Item = (&BigUint, u32)> {
        self.components.iter().flat_map(|(p, exps)| exps.iter().map(move |&a| (p, a)))
    }

    pub fn rank(&self) -> usize {
        self.components.values().map(Vec::len).max().unwrap_or(0)
    }

    pub fn exponent(&self) -> Factorization {
        exponent_of(self)
    }

    pub fn order(&self) -> BigUint {
        order_of(self)
    }

    /// The spec listing each prime-power factor once.
    pub fn to_spec(&self) -> GroupSpec {
        GroupSpec { factor_orders: self.prime_power_factors().map(|(p, a)| p.pow(a)).collect() }
    }

    /// Direct product with another group.
    pub fn product(&self, other: &PrimaryDecomposition) -> PrimaryDecomposition {
        let mut components = self.components.clone();
        for (p, exps) in &other.components {
            let slot = components.entry(p.clone()).or_default();
            slot.extend(exps);
            slot.sort_unstable();
        }
        PrimaryDecomposition { components }
    }
}

impl fmt::Display for PrimaryDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("1");
        }
        for (i, (p, a)) in self.prime_power_factors().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "Z{}", p.pow(a))?;
        }
        Ok(())
    }
}

/// Splits every cyclic factor into its prime-power parts.
pub fn normalize(spec: &GroupSpec, limits: &FactorLimits) -> Result<PrimaryDecomposition> {
    let mut components: BTreeMap<BigUint, Vec<u32>> = BTreeMap::new();
    for n in &spec.factor_orders {
        for (p, e) in factorize(n, limits)?.factors() {
            components.entry(p.clone()).or_default().push(*e);
        }
    }
    for exps in components.values_mut() {
        exps.sort_unstable();
    }
    Ok(PrimaryDecomposition { components })
}

/// `exp(G)`: each prime with its largest exponent.
pub fn exponent_of(d: &PrimaryDecomposition) -> Factorization {
    Factorization::from_prime_pairs(
        d.components.iter().map(|(p, exps)| (p.clone(), *exps.last().expect("nonempty"))).collect(),
    )
}

/// `|G|`, the product of all prime-power factor orders.
pub fn order_of(d: &PrimaryDecomposition) -> BigUint {
    d.prime_power_factors().map(|(p, a)| p.pow(a)).product()
}

/// Partitions of `n` as ascending part lists, in lexicographic order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, min: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in min..=rest {
            if rest - part != 0 && rest - part < part {
                continue;
            }
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

/// Every abelian group of order `n` up to isomorphism, one per choice of a
/// partition of each prime exponent of `n`.
pub fn abelian_groups_of_order(n: u64) -> Vec<PrimaryDecomposition> {
    let mut groups = vec![BTreeMap::<BigUint, Vec<u32>>::new()];
    for (p, e) in factorize_u64(n).factors() {
        let parts = partitions(*e);
        groups = groups
            .iter()
            .flat_map(|g| {
                parts.iter().map(move |part| {
                    let mut g = g.clone();
                    g.insert(p.clone(), part.clone());
                    g
                })
            })
            .collect();
    }
    groups.into_iter().map(|components| PrimaryDecomposition { components }).collect()
}

/// Every abelian group of order at most `bound`, by increasing order.
pub fn abelian_groups_up_to(bound: u64) -> impl Iterator<Item = PrimaryDecomposition> {
    (1..=bound).flat_map(abelian_groups_of_order)
}

impl PrimaryDecomposition {
    /// The decomposition of the cyclic group `Z_n`.
    pub fn cyclic(n: &Factorization) -> Self {
        PrimaryDecomposition {
            components: n.factors().iter().map(|(p, e)| (p.clone(), vec![*e])).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn orders(spec: &GroupSpec) -> Vec<u64> {
        spec.factor_orders().iter().map(|n| u64::try_from(n).unwrap()).collect()
    }

    fn decomposition(spec: &[u64]) -> PrimaryDecomposition {
        normalize(&GroupSpec::from_u64s(spec).unwrap(), &FactorLimits::default()).unwrap()
    }

    fn comps(d: &PrimaryDecomposition) -> Vec<(u64, Vec<u32>)> {
        d.components().iter().map(|(p, e)| (u64::try_from(p).unwrap(), e.clone())).collect()
    }

    #[test]
    fn parses_examples() {
        assert_eq!(orders(&parse_spec("Z2 x Z12 x Z72").unwrap()), vec![2, 12, 72]);
        assert_eq!(orders(&parse_spec("1").unwrap()), vec![1]);
        assert_eq!(orders(&parse_spec("Z6^2 * 5").unwrap()), vec![6, 6, 5]);
    }

    #[test]
    fn parses_every_factor_form() {
        let spec = parse_spec("  z_4 × C9X c 3*Z 7 ^ 2 x 10").unwrap();
        assert_eq!(orders(&spec), vec![4, 9, 3, 7, 7, 10]);
        assert_eq!(orders(&parse_spec("Z1").unwrap()), vec![1]);
        let huge = parse_spec("Z340282366920938463463374607431768211457").unwrap();
        assert_eq!(huge.factor_orders()[0].bits(), 129);
    }

    #[test]
    fn syntax_errors_carry_columns() {
        let err = |s: &str| match parse_spec(s) {
            Err(Error::Syntax { position, .. }) => position,
            other => panic!("{s:?}: expected syntax error, got {other:?}"),
        };
        assert_eq!(err(""), 1);
        assert_eq!(err("   "), 4);
        assert_eq!(err("Z"), 2);
        assert_eq!(err("Z2 x"), 5);
        assert_eq!(err("Z2 + Z3"), 4);
        assert_eq!(err("Z2 Z3"), 4);
        assert_eq!(err("Q5"), 1);
        assert_eq!(err("Z2^0"), 4);
        assert_eq!(err("Z2^"), 4);
        assert_eq!(err("× Z2"), 1);
        assert_eq!(err("Z×Z2"), 2);
    }

    #[test]
    fn zero_order_is_rejected() {
        assert_eq!(parse_spec("Z2 x Z0"), Err(Error::ZeroFactorOrder { position: 7 }));
        assert!(GroupSpec::from_u64s(&[3, 0]).is_err());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(comps(&decomposition(&[2, 12, 72])), vec![(2, vec![1, 2, 3]), (3, vec![1, 2])]);
        assert!(decomposition(&[1]).is_trivial());
        assert!(decomposition(&[]).is_trivial());
        assert!(decomposition(&[1, 1, 1]).is_trivial());
        assert_eq!(comps(&decomposition(&[4, 6])), vec![(2, vec![1, 2]), (3, vec![1])]);
    }

    #[test]
    fn exponent_and_order_examples() {
        let d = decomposition(&[2, 12, 72]);
        assert_eq!(exponent_of(&d).value(), BigUint::from(72u32));
        assert_eq!(order_of(&d), BigUint::from(1728u32));
        assert!(exponent_of(&PrimaryDecomposition::trivial()).is_one());
        assert_eq!(order_of(&PrimaryDecomposition::trivial()), BigUint::one());
        let d = PrimaryDecomposition::from_u64_components(&[(5, &[2, 2])]).unwrap();
        assert_eq!(exponent_of(&d).value(), BigUint::from(25u32));
        let d = PrimaryDecomposition::from_u64_components(&[(2, &[1, 1])]).unwrap();
        assert_eq!(order_of(&d), BigUint::from(4u32));
    }

    #[test]
    fn from_components_validates() {
        assert!(PrimaryDecomposition::from_u64_components(&[(4, &[1])]).is_err());
        assert!(PrimaryDecomposition::from_u64_components(&[(2, &[0, 1])]).is_err());
        let d = PrimaryDecomposition::from_u64_components(&[(3, &[2, 1]), (2, &[]), (3, &[1])])
            .unwrap();
        assert_eq!(comps(&d), vec![(3, vec![1, 1, 2])]);
    }

    #[test]
    fn normalization_round_trips() {
        for n in 1..300u64 {
            for d in abelian_groups_of_order(n) {
                assert_eq!(normalize(&d.to_spec(), &FactorLimits::default()).unwrap(), d);
                assert_eq!(order_of(&d), BigUint::from(n));
                let exp = exponent_of(&d).value();
                assert!((order_of(&d) % exp).is_zero());
            }
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(partitions(4), vec![vec![1, 1, 1, 1], vec![1, 1, 2], vec![1, 3], vec![2, 2], vec![4]]);
    }

    #[test]
    fn groups_of_order_72() {
        // 72 = 2^3 3^2: p(3) * p(2) = 6 groups.
        assert_eq!(abelian_groups_of_order(72).len(), 6);
        assert_eq!(abelian_groups_of_order(1), vec![PrimaryDecomposition::trivial()]);
    }

    #[test]
    fn display() {
        assert_eq!(decomposition(&[2, 12]).to_string(), "Z2 x Z4 x Z3");
        assert_eq!(PrimaryDecomposition::trivial().to_string(), "1");
        assert_eq!(parse_spec("Z6^2").unwrap().to_string(), "Z6 x Z6");
    }
}
