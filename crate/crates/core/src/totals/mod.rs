//! Double complexes, their hom complexes and the total complex.

mod dghom;
mod double;
mod weight;

pub use dghom::{
    dg_compose, dg_hom_differential, dg_hom_layout, dg_hom_rank, embed_i_map, tot_adjunction_check,
    tot_adjunction_natural, tot_transpose, DGHomElement,
};
pub use double::{embed_i, total_complex, DoubleComplex};
pub use weight::{default_window, double_as_module, tot_via_weighted_colimit, weight_j, TotColimit};
