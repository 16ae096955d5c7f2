//! Tensor products, symmetry and the suspension identifications.

mod symmetry;
mod tensor;
mod witnesses;

pub use symmetry::{
    associator, hom_sten_iso_source, hom_sten_iso_target, left_unitor, permutation_inverse, right_unitor,
    sten_iso, symmetry, ChainIso,
};
pub use tensor::{tensor, tensor_differential, tensor_layout, tensor_proto, tensor_rank, TensorBlock};
pub use witnesses::{decompose_lz_tensor, search_box, verify_duality_lr, Duality};
