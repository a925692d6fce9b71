//! Automorphism groups and their induced actions on cohomology.

pub mod action;
pub mod group;
pub mod search;

pub use action::{
    action_summary, classify_b1_one, induced_action, induced_action_of, kernel_characterization_h0,
    kernel_characterization_h1, ActionContext, ActionSummary, B1OneClassification, B1OneCondition, B1OneGroup,
    InducedActionGroup, KernelEntry, KernelReport,
};
pub use group::{GroupProfile, Permutation, PermutationGroup};
pub use search::{automorphism_group, automorphisms_preserving, canonical_form};
