/// Environment variable that overrides the default size caps.
pub const BUDGET_ENV: &str = "HIERARCHY_ONE_BUDGET";

/// Resource caps shared by every construction in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of states of any DFA built by subset or product construction.
    pub max_states: usize,
    /// Maximum size of a transition monoid.
    pub max_elements: usize,
    /// Maximum number of `(group element, monoid element)` configurations
    /// explored when computing a pair relation.
    pub max_group_states: usize,
    /// Maximum number of base words in a cover.
    pub max_cover_bases: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_states: 1 << 16,
            max_elements: 20_000,
            max_group_states: 1 << 22,
            max_cover_bases: 256,
        }
    }
}

impl Budget {
    /// Default budget, with the state and element caps replaced by
    /// `HIERARCHY_ONE_BUDGET` when it holds a positive integer.
    pub fn from_env() -> Self {
        match std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            Some(limit) if limit > 0 => Budget::default().with_limit(limit),
            _ => Budget::default(),
        }
    }

    /// Sets the state and monoid-element caps to `limit`.
    pub fn with_limit(mut self, limit: usize) -> Self {
        self.max_states = limit;
        self.max_elements = limit;
        self
    }
}
