//! Shared inputs for the criterion benches.

use tribsum_core::{catalog, SequenceDef};

/// Index sizes used across the benches.
pub const SIZES: [u64; 3] = [1_000, 10_000, 100_000];

/// The catalog sequences that are benchmarked.
pub fn sequences() -> Vec<(&'static str, SequenceDef)> {
    ["tribonacci", "padovan"]
        .into_iter()
        .map(|key| (key, catalog::lookup(key).expect("catalog key").def.clone()))
        .collect()
}
