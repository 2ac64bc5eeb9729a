//! Independent engines: the reduced-subword formula and agreement reports.

mod billey;
mod report;

pub use billey::{
    billey_column, billey_in_simple_roots, billey_ledger, billey_ledger_with_word, billey_restriction, billey_table,
    prefix_roots, SubwordLedger, MAX_WORD_LENGTH,
};
pub use report::{compare_tables, cross_validate, cross_validate_graph, CrossReport, Mismatch};
