//! Bounded chain complexes, protomorphisms and the internal hom.

mod adjunction;
mod complex;
mod functors;
mod hom;
mod homology;
mod presentation;
mod proto;

pub use adjunction::{
    adjunction_iso_lu, adjunction_iso_ur, transpose_lu, transpose_ur, untranspose_lu, untranspose_ur,
    AdjunctionCheck,
};
pub use complex::Complex;
pub use functors::{forget_u, forget_u_map, functor_l, functor_l_map, functor_r, l_z, r_z};
pub use hom::{
    as_columns, chain_map_basis, cycle_basis, hom_complex, hom_differential_matrix, hom_layout, hom_rank,
    hom_support, HomBlock,
};
pub use homology::{boundariesquot_zprime, cycles_z, homology_at, homology_h, GradedGroups};
pub use presentation::{canonical_presentation, counit_lu, presentation_probes, CanonicalPresentation};
pub use proto::Proto;
