//! Drawing configurations: the catalog of abstract templates, their
//! detection on boards, and whole-position draw certificates.

mod catalog;
mod detect;
mod prove;

pub use catalog::{
    catalog, cycle_formula, format_ratio, ConfigTemplate, Metadata, ReferenceRow, TemplateName,
    UnknownTemplate, REFERENCE_ROWS,
};
pub use detect::{detect, detect_for, Embedding};
pub use prove::{
    check_certificate, find_cover, no_win_proof, prove_draw, prove_draw_with, CertificateError,
    CertifiedSet, Cover, DrawCertificate, ProveOptions,
};
