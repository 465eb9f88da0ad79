//! Counting the cyclic subgroups of finite abelian groups.
//!
//! The closed form in [`counting`] sums products of gcds over one unit
//! multiplier per prime and divides by `phi(exp G)`. The [`oracle`] module
//! checks it two independent ways: by generating every cyclic subgroup
//! explicitly, and by Burnside orbit counting over the power automorphisms.
//! [`menon`] checks the cyclic special case, Menon's gcd-sum identity.
//!
//! ```
//! use cyclicount_core::{count_cyclic_subgroups, normalize, parse_spec, Limits, SumPath};
//!
//! let limits = Limits::default();
//! let group = normalize(&parse_spec("Z2 x Z12 x Z72").unwrap(), &limits.factor).unwrap();
//! let report = count_cyclic_subgroups(&group, SumPath::Fast, &limits).unwrap();
//! assert_eq!(report.count, 224u32.into());
//! ```

pub mod arith;
pub mod counting;
pub mod error;
pub mod groupspec;
pub mod limits;
pub mod menon;
pub mod oracle;

pub use arith::{euler_phi, factorize, gcd_nat, p_valuation, tau, Factorization};
pub use counting::{
    count_cyclic_subgroups, count_cyclic_subgroups_cyclic, count_homocyclic, count_rank2,
    local_sum_fast, local_sum_naive, CountReport, LocalSumReport, Method, SumPath,
};
pub use error::{Error, Result};
pub use groupspec::{exponent_of, normalize, order_of, parse_spec, GroupSpec, PrimaryDecomposition};
pub use limits::{FactorLimits, Limits};
pub use menon::{menon_check, menon_factored_lhs, menon_lhs, MenonCheck};
pub use oracle::{
    count_by_burnside, count_by_enumeration, cyclic_subgroup_of, enumerate_elements,
    enumerate_power_maps, fixed_point_count, GroupElement, PowerMap, SubgroupKey,
};
