//! Benchmark fixtures shared by the criterion targets.

use std::sync::Arc;

use artin_core::permgroup::{named_group, DEFAULT_MAX_ORDER};
use artin_core::{CharacterTable, FiniteGroup};

pub fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(named_group(name, DEFAULT_MAX_ORDER).expect("benchmark group"))
}

pub fn table(name: &str) -> Arc<CharacterTable> {
    Arc::new(CharacterTable::compute(&group(name)).expect("benchmark table"))
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixtures_build() {
        assert_eq!(super::table("S4").len(), 5);
    }
}
