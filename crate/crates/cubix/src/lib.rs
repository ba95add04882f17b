//! Exact arithmetic for cubic group-ring cocycles over finite abelian
//! groups: sparse group rings with unit inversion, the n-cubic conditions
//! and their character oracle, the symmetric-power calculus behind the flat
//! operator and Taylor chains, finite presentations of the symmetric powers
//! of augmentation ideals, and the Bernoulli/annihilator arithmetic that
//! governs the vanishing verdicts.
//!
//! All computation is exact: coefficients live in Z, Z/m or Q, polynomial
//! identities are checked symbolically, and group-structure invariants come
//! from integer Smith normal forms.

pub mod arith;
pub mod cn;
pub mod cubic;
pub mod error;
pub mod group;
pub mod json;
pub mod ring;
pub mod snf;
pub mod sym;

pub use error::{Error, Result};
pub use group::{FiniteAbelianGroup, GroupElement, GroupHom, SlotTarget};
pub use ring::{Coeff, CoeffRing, GroupRingElement};

/// Work cap for exhaustive enumerations (character tables, presentations),
/// overridable through the CUBIX_CAP environment variable.
pub fn enumeration_cap() -> u128 {
    std::env::var("CUBIX_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(100_000_000)
}

#[cfg(test)]
mod tests {
    // all values are immutable after construction and safe to share across
    // tasks; sweeps may parallelize with plain parallel maps
    #[test]
    fn values_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<crate::FiniteAbelianGroup>();
        assert_send_sync::<crate::GroupElement>();
        assert_send_sync::<crate::GroupHom>();
        assert_send_sync::<crate::GroupRingElement>();
        assert_send_sync::<crate::cubic::CubicElement>();
        assert_send_sync::<crate::sym::SymElement>();
        assert_send_sync::<crate::sym::LaurentPoly>();
        assert_send_sync::<crate::cn::CnPresentation>();
    }
}
