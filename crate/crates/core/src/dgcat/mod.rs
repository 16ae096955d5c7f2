//! Small DG-categories, modules over them, coends and Cauchy data.

mod bilinear;
mod category;
mod cauchy;
mod coend;
mod module;
mod presentation;
mod quotient;

pub use bilinear::{apply_bilinear, bilinear_map, tensor_vector};
pub(crate) use bilinear::unit;
pub use category::{
    dgab_fixture, doubling_category, ell_category, fixture_categories, full_subcategory, graded_fixture,
    unit_category, validate_dg_category, FiniteDGCategory, ValidationReport, Violation,
};
pub use cauchy::{
    cauchy_mutations, drop_unit_term, free_cauchy, g_retraction_from_cauchy, negate_counit, representable_cauchy,
    scale_unit, verify_cauchy_data, CauchyData, CauchyReport, EtaTerm, GRetraction, SnakeWitness,
};
pub use coend::{coend_sum_rank, coend_tensor, weighted_colimit, Coend, WeightedColimit};
pub use module::{transformation_basis, DGModule, ProtonatTransform, Variance};
pub use presentation::{module_presentation, Cell, ModulePresentation};
pub use quotient::{
    find_section, image_of_idempotent, torsion_quotient, verify_protosplit_quotient, QuotientCheck, QuotientWitness,
};
