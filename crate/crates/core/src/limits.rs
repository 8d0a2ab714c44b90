use std::env;

/// Environment variable overriding [`Limits::max_prefix_len`].
pub const MAX_PREFIX_ENV: &str = "PARRY_AC_MAX_PREFIX";
/// Environment variable overriding [`Limits::max_states`].
pub const MAX_STATES_ENV: &str = "PARRY_AC_MAX_STATES";
/// Environment variable overriding [`Limits::max_triples`].
pub const MAX_TRIPLES_ENV: &str = "PARRY_AC_MAX_TRIPLES";

/// Resource caps shared by word generation, the oracle and the builder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Longest word (fixed-point prefix or iterated image) ever materialized.
    pub max_prefix_len: usize,
    /// Largest number of automaton states the fixpoint may register.
    pub max_states: usize,
    /// Largest number of triples the fixpoint may hold across all distinct sets.
    pub max_triples: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_prefix_len: 1 << 22,
            max_states: 1 << 18,
            max_triples: 1 << 24,
        }
    }
}

impl Limits {
    /// Defaults, overridden by the `PARRY_AC_MAX_*` variables when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = read_env(MAX_PREFIX_ENV) {
            limits.max_prefix_len = v;
        }
        if let Some(v) = read_env(MAX_STATES_ENV) {
            limits.max_states = v;
        }
        if let Some(v) = read_env(MAX_TRIPLES_ENV) {
            limits.max_triples = v;
        }
        limits
    }
}

fn read_env(key: &str) -> Option<usize> {
    env::var(key).ok()?.trim().parse().ok()
}
