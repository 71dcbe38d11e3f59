use serde::{Deserialize, Serialize};

/// Size limits applied by every construction that can blow up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Largest carrier a power algebra or power space may have.
    pub max_power_carrier: u64,
    /// Largest number of search nodes a homomorphism enumeration may visit.
    pub max_hom_search: u64,
    /// Largest number of opens a generated topology may have.
    pub max_topology: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_power_carrier: 4096,
            max_hom_search: 10_000_000,
            max_topology: 4096,
        }
    }
}
