//! Canonical-class restrictions: engines, certification and structure constants.

mod brute;
mod certify;
mod classes;
mod gz;
mod ordered;
mod structure;
mod table;

pub use brute::{brute_row, brute_solve_canonical, brute_solve_canonical_with};
pub use certify::{certify_table, CertFailure, Certificate};
pub use classes::WeightClasses;
pub use gz::{
    adjacent_restriction, restriction_single_form, restriction_single_form_paths, single_form_column,
    single_form_table, PathTerm,
};
pub use ordered::{monotone_paths, ordered_table, restriction_ordered, tech_violations, verify_tech, OrderedResult};
pub(crate) use ordered::{check_separated, filtered_sum, filtered_table};
pub use structure::structure_constants;
pub use table::RestrictionTable;
