//! Mapping cones, split idempotents and cokernels of protosplit maps.

mod cone;
mod direct_sum;
mod probe;
mod protosplit;

pub use cone::{
    cone_homotopy_iso, cylinder_factorization, mapping_cone, mc1, mc1_iso_lu, mc1_iso_lu_is_natural, mc1_map,
    ConeHomotopyIso, ConeRecognitionData, CylinderFactorization, MappingCone, RecognizedCone, recognize_cone,
};
pub use direct_sum::{direct_sum, DirectSumWitness};
pub use probe::{probe_family, DEFAULT_PROBE_DEPTH};
pub use protosplit::{
    cokernel_protosplit, coequalizer_protosplit_pair, cone_as_cokernel, idempotent_of, is_protosplitting,
    reverse_reduction, split_idempotent, split_matrix_idempotent, ConeAsCokernel, ProtosplitCokernel, Protosplitting,
    ReversePair, SplitIdempotent,
};
