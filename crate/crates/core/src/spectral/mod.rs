//! Characteristic polynomials, the induced linear recurrence, closed forms
//! and growth classification.

mod charpoly;
mod closed_form;
mod recurrence;
pub mod roots;
mod scan;

pub use charpoly::{char_poly, char_poly_of, CharPoly};
pub use closed_form::{
    classify_closed_form, classify_growth, closed_form, closed_form_for, ClosedForm,
    ClosedFormTerm, CountTarget, GrowthClass, GrowthKind, COEFF_TOL, MAX_CONDITION,
};
pub use recurrence::{verify_recurrence, RecurrenceFailure, RecurrenceReport};
pub use roots::{nonzero_roots, Root, CLUSTER_TOL};
pub use scan::{conjecture_scan, ScanFailure, ScanReport, ScanRow, ScanStratum, MAX_SCAN_K};
