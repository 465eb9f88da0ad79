use std::time::Duration;

pub const ELEMENT_CAP_VAR: &str = "CYCLICOUNT_ELEMENT_CAP";
pub const POWER_MAP_CAP_VAR: &str = "CYCLICOUNT_POWER_MAP_CAP";
pub const ITERATION_BUDGET_VAR: &str = "CYCLICOUNT_ITERATION_BUDGET";

/// Computational limits shared by the counting paths and the oracles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order the enumeration oracle will walk.
    pub element_cap: u64,
    /// Largest `|Pot(G)|` the Burnside oracle will walk.
    pub power_map_cap: u64,
    /// Largest loop length for the naive local sum and the direct Menon sum.
    pub iteration_budget: u64,
    pub factor: FactorLimits,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: 1_000_000,
            power_map_cap: 100_000,
            iteration_budget: 10_000_000,
            factor: FactorLimits::default(),
        }
    }
}

impl Limits {
    /// Defaults overridden by the `CYCLICOUNT_*` environment variables.
    ///
    /// Returns the offending variable name and value when one does not parse
    /// as a decimal integer.
    pub fn from_env() -> Result<Self, (String, String)> {
        let mut limits = Limits::default();
        for (var, slot) in [
            (ELEMENT_CAP_VAR, &mut limits.element_cap),
            (POWER_MAP_CAP_VAR, &mut limits.power_map_cap),
            (ITERATION_BUDGET_VAR, &mut limits.iteration_budget),
        ] {
            if let Ok(raw) = std::env::var(var) {
                *slot = raw.trim().parse().map_err(|_| (var.to_string(), raw.clone()))?;
            }
        }
        Ok(limits)
    }
}

/// Limits applied by `factorize`.
///
/// Inputs of at most 64 bits are always factored completely. Larger inputs up
/// to `max_bits` are attempted within `time_budget`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorLimits {
    pub max_bits: u64,
    pub time_budget: Duration,
}

impl Default for FactorLimits {
    fn default() -> Self {
        FactorLimits { max_bits: 256, time_budget: Duration::from_secs(5) }
    }
}
