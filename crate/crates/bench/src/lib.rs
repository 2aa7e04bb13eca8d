//! Shared fixtures for the benchmark suite.

use fano_designs::design::{build_type, CliqueType, Design};

/// The five canonical designs in declaration order.
pub fn canonical_designs() -> Vec<(CliqueType, Design)> {
    CliqueType::ALL
        .into_iter()
        .map(|t| (t, build_type(t)))
        .collect()
}
