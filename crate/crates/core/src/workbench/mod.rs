//! Component catalog and the reports built on it.

mod catalog;
mod report;

pub use catalog::{
    catalog_load, component_dimension, family_moduli, CandidateList, Catalog, ComponentDescriptor, Family, Params,
    VerificationLevel,
};
pub use report::{
    check_slope_examples, component_report, rao_pairs, realizability_gap, recompute, slope_examples_markdown,
    verification_range, ComponentReport, GapReport, RaoPair, ReportRow, RowStatus, SlopeExample,
};
