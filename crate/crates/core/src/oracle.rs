//! Two independent checks on the closed form.
//!
//! * Enumeration: generate `<g>` for every element and count distinct
//!   subgroups, each keyed by its full sorted element set.
//! * Burnside: average the fixed-point counts of the power maps
//!   `x -> m x` (one unit multiplier per prime) over all such maps.
//!
//! Elements are stored as coordinate vectors over the prime-power factors of
//! the decomposition, primes ascending and exponents ascending within a
//! prime. Internally an element is also addressed by its mixed-radix index,
//! first coordinate most significant, so index order is lexicographic order.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{euler_phi, gcd_u64};
use crate::counting::{exact_div, CountReport, Method};
use crate::error::{Error, Result};
use crate::groupspec::{exponent_of, order_of, PrimaryDecomposition};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub coordinates: Vec<u64>,
}

impl GroupElement {
    pub fn new(coordinates: Vec<u64>) -> Self {
        GroupElement { coordinates }
    }
}

/// A cyclic subgroup, identified by its members in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupKey(pub Vec<GroupElement>);

impl SubgroupKey {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The universal automorphism acting as `x -> m_p x` on the `p`-component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PowerMap {
    // (prime, multiplier), primes ascending, aligned with the decomposition.
    multipliers: Vec<(u64, u64)>,
}

impl PowerMap {
    /// Validates `1 <= m_p <= p^a_r` and `p` not dividing `m_p`, one
    /// multiplier per prime of `d`.
    pub fn new(d: &PrimaryDecomposition, multipliers: &[(u64, u64)]) -> Result<Self> {
        let bounds = unit_moduli(d)?;
        if bounds.len() != multipliers.len() {
            return Err(Error::InvalidPowerMap(format!(
                "expected {} multipliers, got {}",
                bounds.len(),
                multipliers.len()
            )));
        }
        for (&(p, q), &(mp, m)) in bounds.iter().zip(multipliers) {
            if p != mp || m == 0 || m > q || m % p == 0 {
                return Err(Error::InvalidPowerMap(format!("multiplier {m} for prime {mp}")));
            }
        }
        Ok(PowerMap { multipliers: multipliers.to_vec() })
    }

    pub fn identity(d: &PrimaryDecomposition) -> Result<Self> {
        Ok(PowerMap { multipliers: unit_moduli(d)?.into_iter().map(|(p, _)| (p, 1)).collect() })
    }

    pub fn multipliers(&self) -> &[(u64, u64)] {
        &self.multipliers
    }

    pub fn multiplier_for(&self, p: u64) -> Option<u64> {
        self.multipliers.iter().find(|(q, _)| *q == p).map(|(_, m)| *m)
    }

    /// `f(g)`, multiplying every coordinate by its prime's multiplier.
    pub fn apply(&self, d: &PrimaryDecomposition, g: &GroupElement) -> Result<GroupElement> {
        let layout = Layout::new(d, u64::MAX)?;
        layout.check(g)?;
        let coordinates = g
            .coordinates
            .iter()
            .enumerate()
            .map(|(i, &x)| mul_mod(self.multipliers[layout.component[i]].1, x, layout.moduli[i]))
            .collect();
        Ok(GroupElement { coordinates })
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `(p, p^a_r)` per prime, when both fit in a machine word.
fn unit_moduli(d: &PrimaryDecomposition) -> Result<Vec<(u64, u64)>> {
    d.components()
        .iter()
        .map(|(p, exps)| {
            let q = p.pow(*exps.last().expect("nonempty"));
            match (p.to_u64(), q.to_u64()) {
                (Some(p), Some(q)) => Ok((p, q)),
                _ => Err(Error::CapExceeded {
                    what: "cyclic factor order",
                    size: q.to_string(),
                    cap: u64::MAX,
                }),
            }
        })
        .collect()
}

/// Flattened coordinate system of a decomposition.
struct Layout {
    moduli: Vec<u64>,
    // index of the prime component owning each coordinate
    component: Vec<usize>,
    strides: Vec<u64>,
    order: u64,
}

impl Layout {
    fn new(d: &PrimaryDecomposition, cap: u64) -> Result<Self> {
        let order = order_of(d);
        let too_big = || Error::CapExceeded { what: "group order", size: order.to_string(), cap };
        match order.to_u64() {
            Some(n) if n <= cap => {}
            _ => return Err(too_big()),
        }
        let mut moduli = Vec::new();
        let mut component = Vec::new();
        for (i, (p, exps)) in d.components().iter().enumerate() {
            for &a in exps {
                moduli.push(p.pow(a).to_u64().expect("divides the order"));
                component.push(i);
            }
        }
        let mut strides = vec![1u64; moduli.len()];
        for i in (0..moduli.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1];
        }
        Ok(Layout { moduli, component, strides, order: order.to_u64().expect("checked") })
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.coordinates.len() != self.moduli.len()
            || g.coordinates.iter().zip(&self.moduli).any(|(x, q)| x >= q)
        {
            return Err(Error::InvalidElement(g.coordinates.clone()));
        }
        Ok(())
    }

    fn index(&self, coords: &[u64]) -> u64 {
        coords.iter().zip(&self.strides).map(|(x, s)| x * s).sum()
    }

    fn decode(&self, mut index: u64) -> Vec<u64> {
        self.strides
            .iter()
            .map(|s| {
                let x = index / s;
                index %= s;
                x
            })
            .collect()
    }

    /// Sorted indices of `<g>` for `g` given by coordinates.
    fn generated(&self, g: &[u64]) -> Vec<u64> {
        let mut members = vec![0u64];
        let mut current = g.to_vec();
        while current.iter().any(|&x| x != 0) {
            members.push(self.index(&current));
            for ((x, y), q) in current.iter_mut().zip(g).zip(&self.moduli) {
                *x = (*x + y) % q;
            }
        }
        members.sort_unstable();
        members
    }
}

/// Every element of `G` in lexicographic order.
pub struct Elements {
    moduli: Vec<u64>,
    next: Option<Vec<u64>>,
}

impl Iterator for Elements {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carry = true;
        for (x, q) in succ.iter_mut().zip(&self.moduli).rev() {
            *x += 1;
            if *x < *q {
                carry = false;
                break;
            }
            *x = 0;
        }
        if !carry {
            self.next = Some(succ);
        }
        Some(GroupElement { coordinates: current })
    }
}

/// Streams the elements of `G`. Fails when `|G|` exceeds `limits.element_cap`.
pub fn enumerate_elements(d: &PrimaryDecomposition, limits: &Limits) -> Result<Elements> {
    let layout = Layout::new(d, limits.element_cap)?;
    Ok(Elements { next: Some(vec![0; layout.moduli.len()]), moduli: layout.moduli })
}

/// The members of `<g>`, sorted lexicographically.
pub fn cyclic_subgroup_of(d: &PrimaryDecomposition, g: &GroupElement) -> Result<SubgroupKey> {
    let layout = Layout::new(d, u64::MAX)?;
    layout.check(g)?;
    let mut members = Vec::new();
    let mut current = vec![0u64; g.coordinates.len()];
    loop {
        members.push(GroupElement { coordinates: current.clone() });
        for ((x, y), q) in current.iter_mut().zip(&g.coordinates).zip(&layout.moduli) {
            *x = (*x + y) % q;
        }
        if current.iter().all(|&x| x == 0) {
            break;
        }
    }
    members.sort_unstable();
    Ok(SubgroupKey(members))
}

// Distinct cyclic subgroups as sorted index lists. Once <g> is known, every
// k g with gcd(k, |<g>|) = 1 lies in <g> and has the same order, so it
// generates the same subgroup and needs no separate pass.
fn cyclic_subgroup_keys(layout: &Layout) -> Vec<Vec<u64>> {
    let n = layout.order as usize;
    let mut covered = vec![false; n];
    let mut keys = HashSet::new();
    for index in 0..n {
        if covered[index] {
            continue;
        }
        let g = layout.decode(index as u64);
        let members = layout.generated(&g);
        let size = members.len() as u64;
        let mut current = g.clone();
        for k in 1..=size {
            if gcd_u64(k, size) == 1 {
                covered[layout.index(&current) as usize] = true;
            }
            for ((x, y), q) in current.iter_mut().zip(&g).zip(&layout.moduli) {
                *x = (*x + y) % q;
            }
        }
        keys.insert(members);
    }
    keys.into_iter().collect()
}

/// Counts distinct cyclic subgroups by generating them from elements.
pub fn count_by_enumeration(d: &PrimaryDecomposition, limits: &Limits) -> Result<CountReport> {
    let layout = Layout::new(d, limits.element_cap)?;
    let count = cyclic_subgroup_keys(&layout).len();
    let exponent = exponent_of(d);
    Ok(CountReport {
        count: BigUint::from(count),
        phi_exponent: euler_phi(&exponent),
        exponent: exponent.value(),
        local_sums: Vec::new(),
        method: Method::EnumerationOracle,
    })
}

/// Number of cyclic subgroups of each order.
pub fn cyclic_subgroup_orders(d: &PrimaryDecomposition, limits: &Limits) -> Result<BTreeMap<u64, u64>> {
    let layout = Layout::new(d, limits.element_cap)?;
    let mut orders = BTreeMap::new();
    for key in cyclic_subgroup_keys(&layout) {
        *orders.entry(key.len() as u64).or_insert(0) += 1;
    }
    Ok(orders)
}

/// Every power map of `G` (the multiplier tuples), lexicographic in the
/// multipliers. Fails when `phi(exp G)` exceeds `limits.power_map_cap`.
pub fn enumerate_power_maps(
    d: &PrimaryDecomposition,
    limits: &Limits,
) -> Result<impl Iterator<Item = PowerMap>> {
    let size = euler_phi(&exponent_of(d));
    if size > BigUint::from(limits.power_map_cap) {
        return Err(Error::CapExceeded {
            what: "power automorphism group",
            size: size.to_string(),
            cap: limits.power_map_cap,
        });
    }
    let units: Vec<(u64, Vec<u64>)> = unit_moduli(d)?
        .into_iter()
        .map(|(p, q)| (p, (1..=q).filter(|m| m % p != 0).collect()))
        .collect();
    let total = size.to_u64().expect("below cap");
    Ok((0..total).map(move |mut index| {
        let mut multipliers = vec![(0, 0); units.len()];
        for (slot, (p, list)) in multipliers.iter_mut().zip(&units).rev() {
            let len = list.len() as u64;
            *slot = (*p, list[(index % len) as usize]);
            index /= len;
        }
        PowerMap { multipliers }
    }))
}

/// `|Fix(f)| = prod_p prod_j gcd(m_p - 1, p^a_pj)`.
pub fn fixed_point_count(d: &PrimaryDecomposition, f: &PowerMap) -> BigUint {
    d.components()
        .iter()
        .zip(&f.multipliers)
        .flat_map(|((p, exps), &(_, m))| {
            let p = p.to_u64().expect("power maps exist only for word-sized primes");
            exps.iter().map(move |&a| BigUint::from(gcd_u64(m - 1, p.pow(a))))
        })
        .product()
}

/// `|Fix(f)|` by testing `(m_p - 1) x = 0` on every coordinate of every element.
pub fn fixed_point_count_by_scan(
    d: &PrimaryDecomposition,
    f: &PowerMap,
    limits: &Limits,
) -> Result<BigUint> {
    let layout = Layout::new(d, limits.element_cap)?;
    let shifts: Vec<u64> = layout.component.iter().map(|&c| f.multipliers[c].1 - 1).collect();
    let fixed = enumerate_elements(d, limits)?
        .filter(|g| {
            g.coordinates
                .iter()
                .zip(&shifts)
                .zip(&layout.moduli)
                .all(|((&x, &s), &q)| mul_mod(s, x, q) == 0)
        })
        .count();
    Ok(BigUint::from(fixed))
}

/// Orbit count of the power-map action: `sum_f |Fix(f)| / phi(exp G)`.
pub fn count_by_burnside(d: &PrimaryDecomposition, limits: &Limits) -> Result<CountReport> {
    let mut total = BigUint::zero();
    for f in enumerate_power_maps(d, limits)? {
        total += fixed_point_count(d, &f);
    }
    let exponent = exponent_of(d);
    let phi_exponent = euler_phi(&exponent);
    Ok(CountReport {
        count: exact_div(&total, &phi_exponent)?,
        exponent: exponent.value(),
        phi_exponent,
        local_sums: Vec::new(),
        method: Method::BurnsideOracle,
    })
}

/// For each element (by lexicographic index) the smallest index in its
/// power-map orbit.
pub fn power_map_orbit_labels(d: &PrimaryDecomposition, limits: &Limits) -> Result<Vec<u64>> {
    let layout = Layout::new(d, limits.element_cap)?;
    let maps: Vec<PowerMap> = enumerate_power_maps(d, limits)?.collect();
    Ok((0..layout.order)
        .map(|index| {
            let g = layout.decode(index);
            maps.iter()
                .map(|f| {
                    let image: Vec<u64> = g
                        .iter()
                        .enumerate()
                        .map(|(i, &x)| {
                            mul_mod(f.multipliers[layout.component[i]].1, x, layout.moduli[i])
                        })
                        .collect();
                    layout.index(&image)
                })
                .min()
                .expect("identity map present")
        })
        .collect())
}

/// For each element the smallest index of an element generating the same
/// cyclic subgroup. Computes `<g>` for every element separately.
pub fn cyclic_subgroup_labels(d: &PrimaryDecomposition, limits: &Limits) -> Result<Vec<u64>> {
    let layout = Layout::new(d, limits.element_cap)?;
    let mut first_generator: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    Ok((0..layout.order)
        .map(|index| *first_generator.entry(layout.generated(&layout.decode(index))).or_insert(index))
        .collect())
}

/// Lexicographic index of `g`.
pub fn element_index(d: &PrimaryDecomposition, g: &GroupElement) -> Result<u64> {
    let layout = Layout::new(d, u64::MAX)?;
    layout.check(g)?;
    Ok(layout.index(&g.coordinates))
}
