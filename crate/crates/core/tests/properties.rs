use num_bigint::BigUint;
use num_integer::Integer;
use proptest::prelude::*;

use cyclicount_core::arith::{factorize_u64, gcd_u64, is_prime};
use cyclicount_core::oracle::fixed_point_count_by_scan;
use cyclicount_core::{
    count_by_burnside, count_by_enumeration, count_cyclic_subgroups, enumerate_power_maps, euler_phi,
    factorize, fixed_point_count, gcd_nat, local_sum_fast, local_sum_naive, menon_lhs, normalize,
    parse_spec, tau, FactorLimits, GroupSpec, Limits, PrimaryDecomposition, SumPath,
};

const PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn spec(orders: &[u64]) -> GroupSpec {
    GroupSpec::from_u64s(orders).unwrap()
}

fn group(orders: &[u64]) -> PrimaryDecomposition {
    normalize(&spec(orders), &FactorLimits::default()).unwrap()
}

fn count(d: &PrimaryDecomposition) -> BigUint {
    count_cyclic_subgroups(d, SumPath::Fast, &Limits::default()).unwrap().count
}

fn ascending(mut exps: Vec<u32>) -> Vec<u32> {
    exps.sort_unstable();
    exps
}

/// Factor orders of a group small enough to enumerate.
fn small_orders() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..=24, 0..=3)
}

/// A p-group component: prime and ascending exponents.
fn p_component(max_exp: u32, max_rank: usize) -> impl Strategy<Value = (u64, Vec<u32>)> {
    (prop::sample::select(PRIMES.to_vec()), prop::collection::vec(1..=max_exp, 1..=max_rank))
        .prop_map(|(p, exps)| (p, ascending(exps)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gcd_laws(a in 0u64..1 << 40, b in 0u64..1 << 40, c in 0u64..1 << 40) {
        let (a, b, c) = (big(a), big(b), big(c));
        prop_assert_eq!(gcd_nat(&a, &b), gcd_nat(&b, &a));
        prop_assert_eq!(gcd_nat(&gcd_nat(&a, &b), &c), gcd_nat(&a, &gcd_nat(&b, &c)));
        prop_assert_eq!(gcd_nat(&a, &a), a.clone());
        prop_assert_eq!(gcd_nat(&a, &big(0)), a.clone());
        let g = gcd_nat(&a, &b);
        if g != big(0) {
            prop_assert!(a.is_multiple_of(&g) && b.is_multiple_of(&g));
        }
    }

    #[test]
    fn word_gcd_matches_bignum(a in any::<u64>(), b in any::<u64>()) {
        prop_assert_eq!(big(gcd_u64(a, b)), gcd_nat(&big(a), &big(b)));
    }

    #[test]
    fn factorization_round_trips(n in 1u64..) {
        let f = factorize_u64(n);
        prop_assert_eq!(f.value(), big(n));
        prop_assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        for (p, e) in f.factors() {
            prop_assert!(is_prime(p) && *e > 0);
        }
        prop_assert_eq!(factorize(&big(n), &FactorLimits::default()).unwrap(), f);
    }

    #[test]
    fn phi_and_tau_are_multiplicative(a in 1u64..1 << 20, b in 1u64..1 << 20) {
        prop_assume!(gcd_u64(a, b) == 1);
        let (fa, fb, fab) = (factorize_u64(a), factorize_u64(b), factorize_u64(a * b));
        prop_assert_eq!(euler_phi(&fab), euler_phi(&fa) * euler_phi(&fb));
        prop_assert_eq!(tau(&fab), tau(&fa) * tau(&fb));
    }

    #[test]
    fn normalization_preserves_order_and_exponent(orders in prop::collection::vec(1u64..=10_000, 0..=5)) {
        let s = spec(&orders);
        let d = normalize(&s, &FactorLimits::default()).unwrap();
        prop_assert_eq!(d.order(), s.order());
        let lcm = orders.iter().fold(big(1), |acc, &n| acc.lcm(&big(n)));
        prop_assert_eq!(d.exponent().value(), lcm.clone());
        prop_assert!(d.order().is_multiple_of(&lcm));
        for exps in d.components().values() {
            prop_assert!(exps.windows(2).all(|w| w[0] <= w[1]) && exps.iter().all(|&a| a > 0));
        }
        prop_assert_eq!(normalize(&d.to_spec(), &FactorLimits::default()).unwrap(), d.clone());
        let reparsed = parse_spec(&d.to_string()).unwrap();
        prop_assert_eq!(normalize(&reparsed, &FactorLimits::default()).unwrap(), d);
    }

    #[test]
    fn spec_display_round_trips(orders in prop::collection::vec(1u64..=1_000_000, 1..=6)) {
        let s = spec(&orders);
        prop_assert_eq!(parse_spec(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn parser_never_panics(text in "\\PC{0,24}") {
        let _ = parse_spec(&text);
    }

    #[test]
    fn parser_accepts_generated_specs(
        factors in prop::collection::vec((1u64..=500, prop::sample::select(vec!["Z", "z", "Z_", "C", "c", ""]), 1u32..=3), 1..=4),
        sep in prop::sample::select(vec![" x ", "x", " * ", " × ", "X"]),
    ) {
        let text = factors
            .iter()
            .map(|(n, prefix, k)| if *k == 1 { format!("{prefix}{n}") } else { format!("{prefix}{n}^{k}") })
            .collect::<Vec<_>>()
            .join(sep);
        let expected: Vec<BigUint> =
            factors.iter().flat_map(|&(n, _, k)| std::iter::repeat_n(big(n), k as usize)).collect();
        let parsed = parse_spec(&text).unwrap();
        prop_assert_eq!(parsed.factor_orders(), &expected[..]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn fast_local_sum_matches_naive((p, exps) in p_component(5, 4)) {
        prop_assume!(p.pow(*exps.last().unwrap()) <= 200_000);
        let naive = local_sum_naive(&big(p), &exps, u64::MAX).unwrap();
        let fast = local_sum_fast(&big(p), &exps).unwrap();
        prop_assert_eq!(naive.sum, fast.sum);
    }

    #[test]
    fn local_sum_is_divisible_by_phi_of_top((p, exps) in p_component(12, 6)) {
        let sum = local_sum_fast(&big(p), &exps).unwrap().sum;
        let top = *exps.last().unwrap();
        let phi_top = big(p - 1) * big(p).pow(top - 1);
        prop_assert!(sum.is_multiple_of(&phi_top));
        let single = PrimaryDecomposition::from_u64_components(&[(p, &exps)]).unwrap();
        prop_assert_eq!(count(&single), sum / phi_top);
    }

    #[test]
    fn count_times_phi_is_product_of_local_sums(orders in prop::collection::vec(1u64..=100_000, 0..=4)) {
        let report = count_cyclic_subgroups(&group(&orders), SumPath::Fast, &Limits::default()).unwrap();
        let product: BigUint = report.local_sums.iter().map(|s| &s.sum).product();
        prop_assert_eq!(report.count.clone() * &report.phi_exponent, product);
        prop_assert!(report.count >= big(1));
    }

    #[test]
    fn count_is_multiplicative_over_coprime_orders(a in small_orders(), b in small_orders()) {
        let (ga, gb) = (group(&a), group(&b));
        prop_assume!(gcd_nat(&ga.order(), &gb.order()) == big(1));
        prop_assert_eq!(count(&ga.product(&gb)), count(&ga) * count(&gb));
    }

    #[test]
    fn cyclic_groups_have_tau_cyclic_subgroups(n in 1u64..1 << 40) {
        let f = factorize_u64(n);
        prop_assert_eq!(count(&PrimaryDecomposition::cyclic(&f)), tau(&f));
    }

    #[test]
    fn every_method_agrees(orders in small_orders()) {
        let d = group(&orders);
        let limits = Limits::default();
        let fast = count(&d);
        prop_assert!(fast <= d.order());
        prop_assert_eq!(count_cyclic_subgroups(&d, SumPath::Naive, &limits).unwrap().count, fast.clone());
        prop_assert_eq!(count_by_burnside(&d, &limits).unwrap().count, fast.clone());
        prop_assert_eq!(count_by_enumeration(&d, &limits).unwrap().count, fast);
    }

    #[test]
    fn fixed_points_match_scan(orders in prop::collection::vec(1u64..=36, 1..=3), pick in any::<prop::sample::Index>()) {
        let d = group(&orders);
        let limits = Limits::default();
        let maps: Vec<_> = enumerate_power_maps(&d, &limits).unwrap().collect();
        let f = &maps[pick.index(maps.len())];
        prop_assert_eq!(fixed_point_count(&d, f), fixed_point_count_by_scan(&d, f, &limits).unwrap());
    }

    #[test]
    fn menon_lhs_is_multiplicative(a in 1u64..=300, b in 1u64..=300) {
        prop_assume!(gcd_u64(a, b) == 1);
        let budget = 1 << 20;
        let ab = menon_lhs(&big(a * b), budget).unwrap();
        prop_assert_eq!(ab.clone(), menon_lhs(&big(a), budget).unwrap() * menon_lhs(&big(b), budget).unwrap());
        let f = factorize_u64(a * b);
        prop_assert_eq!(ab, euler_phi(&f) * tau(&f));
    }
}
