//! Finite loops as multiplication tables, with the machinery around the
//! Chein double construction: building the doubled loops M_2n(G, 2) of
//! small two-generated groups, verifying their compact Moufang-loop
//! presentations by an executable goodness derivation, and rebuilding
//! the triangle-based visual model of the smallest non-associative
//! Moufang loop, the order-12 double of S3.
//!
//! The crate is organized around immutable Cayley tables: every
//! structure is a table plus verified invariants, and every claim is
//! checked by scanning tables rather than trusted.

pub mod chein;
pub mod group;
pub mod iso;
pub mod json;
pub mod latin;
pub mod presentation;
pub mod table;
pub mod visual;
pub mod word;

pub use chein::{chein_construct, chein_mul, CheinElement};
pub use group::{catalog, catalog_selector, FiniteGroup, GroupName};
pub use iso::{find_isomorphism, IsoWitness};
pub use presentation::{
    goodness_closure, plan_derivation, validate_plan, DerivationCertificate, PlanNode,
    PresentationSpec,
};
pub use table::{FiniteLoop, LoopError, MagmaTable, MoufangVariant};
pub use word::{Complexity, GroupWord, Letter};

/// Non-associative Chein doubles of order at most `max_order`, one
/// representative per isomorphism class, in catalog enumeration order.
pub fn sigma_census(max_order: usize) -> Vec<(GroupName, FiniteLoop)> {
    let mut kept: Vec<(GroupName, FiniteLoop)> = Vec::new();
    for (name, group) in group::catalog_groups_up_to(max_order / 2) {
        if group.is_commutative() {
            continue;
        }
        let doubled = chein_construct(&group);
        if doubled.order() > max_order {
            continue;
        }
        if kept
            .iter()
            .all(|(_, existing)| find_isomorphism(existing, &doubled).is_none())
        {
            kept.push((name, doubled));
        }
    }
    kept
}
