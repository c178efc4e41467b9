//! Resource caps for enumeration-heavy operations.

/// Largest supported nilpotency class. Class 4 covers quotients modulo
/// gamma_5, i.e. n <= 5 experiments on F/R'gamma_n(F).
pub const CLASS_CAP: usize = 4;

/// Enumeration caps, overridable via the `BLIMWB_CAP` environment variable
/// or the `--cap` CLI flag.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Maximum number of elements enumerated in a finite group.
    pub enumeration: u64,
    /// Maximum number of candidate tuples scanned when enumerating 1-cocycles.
    pub cocycle_tuples: u64,
    /// Below this many cocycles the orbit computation additionally runs the
    /// full product action as a cross-check.
    pub full_action_orbits: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: 4096,
            cocycle_tuples: 10_000_000,
            full_action_orbits: 100_000,
        }
    }
}

impl Caps {
    /// Default caps with the `BLIMWB_CAP` override applied, if set.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Ok(value) = std::env::var("BLIMWB_CAP") {
            if let Ok(cap) = value.trim().parse::<u64>() {
                caps.apply_override(cap);
            }
        }
        caps
    }

    /// Apply a single cap value to both enumeration limits.
    pub fn apply_override(&mut self, cap: u64) {
        self.enumeration = cap;
        self.cocycle_tuples = cap;
    }
}
