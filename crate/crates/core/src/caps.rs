/// Resource limits shared by every algorithm in the crate.
///
/// Exceeding a cap is always reported as an error, never as a silent fallback.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest order for which a dense Cayley table is materialized.
    pub dense_table: usize,
    /// Tables up to this order get an exhaustive associativity check.
    pub full_validation: usize,
    /// Sampled triples used for associativity checks above `full_validation`.
    pub associativity_samples: usize,
    /// Element cap for permutation closures.
    pub closure: usize,
    /// Order cap for direct-product composites.
    pub composite: usize,
    /// Largest group order for which the full subgroup lattice is computed.
    pub lattice_order: usize,
    pub subgroup_count: usize,
    pub normal_count: usize,
    /// Node budget of the isomorphism backtracking.
    pub iso_nodes: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            dense_table: 8192,
            full_validation: 512,
            associativity_samples: 1_000_000,
            closure: 50_000,
            composite: 10_000_000,
            lattice_order: 2500,
            subgroup_count: 100_000,
            normal_count: 100_000,
            iso_nodes: 10_000_000,
        }
    }
}

impl Caps {
    /// Dense tables store two-byte entries.
    pub(crate) fn dense_limit(&self) -> usize {
        self.dense_table.min(u16::MAX as usize + 1)
    }
}
