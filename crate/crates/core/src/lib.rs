//! Two-dimensional nine-neighborhood linear cellular automata: rule-matrix
//! construction under null and periodic boundaries, the Boolean-product
//! algebra those matrices generate, multiple-attractor analysis with
//! pseudo-exhaustive fields, and an encompression (compress-then-encrypt)
//! codec for binary images built on top.
//!
//! Modules:
//!
//! - [`bitmatrix`]: dense binary matrices with GF(2) and Boolean-semiring
//!   products, rank and affine solving.
//! - [`rules`]: the nine fundamental neighborhood matrices and general
//!   linear rule matrices, built two independent ways.
//! - [`algebra`]: closure of the basic matrices under the Boolean product
//!   and machine verification of the claimed group/monoid axioms.
//! - [`maca`]: state evolution, exhaustive transition diagrams, depth /
//!   rank / attractor profiles and pseudo-exhaustive fields.
//! - [`codec`]: the block-based encompression pipeline and its wire format.

pub mod algebra;
pub mod bitmatrix;
pub mod codec;
pub mod error;
pub mod maca;
pub mod rules;

pub use algebra::{basic_generators, close_generators, translation_matrix, AxiomReport, ClosureSet};
pub use bitmatrix::{AffineSolutionSet, BitMatrix, BitVector, ProductKind};
pub use codec::{
    compression_ratio, dencompress, distortion, encompress, plan_layout, Distortion,
    EncompressedContainer, Key, Layout, Ratio,
};
pub use error::{Error, Result};
pub use maca::{
    attractor_from_pef, build_std, classify, collapse_to_depth_one, evolve, find_maca,
    maca_profile, pef_positions, predecessors, CaState, MacaProfile, PefStrategy,
    TransitionDiagram,
};
pub use rules::{
    decompose_rule, fundamental_matrix, mask_sequence, neighbor_offset, rule_matrix, Boundary,
    MaskKind, NeighborOffset, RuleSpec,
};
