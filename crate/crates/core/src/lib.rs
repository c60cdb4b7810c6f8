//! Certificates and exact arithmetic for fillable positive contact surgery
//! on knots in the 3-sphere.
//!
//! The crate verifies band/node/full-twist factorizations of braids, does
//! the sum-of-squares bookkeeping of disk classes in blowups of the 4-ball,
//! computes minimal fillable coefficients of torus knots, applies the
//! existence rules for positive braids, lens space surgeries, satellites
//! and cables, and checks a shipped catalog of knots up to ten crossings.

pub mod braid;
pub mod catalog;
pub mod certificate;
pub mod construct;
pub mod disk;
pub mod invariants;
pub mod laurent;
pub mod torus;

pub use braid::{embedded_band, parse_braid, BraidError, BraidWord, Permutation};
pub use catalog::{
    load_catalog, obstruct, shipped_catalog, verify_table, KnotRecord, Obstruction, TableReport,
};
pub use certificate::{
    twist_band_product, twist_knot_certificate, Certificate, CertificateError, CertificateReport, Factor, FactorKind,
    TargetCheck,
};
pub use construct::{
    cable_rule, lens_rule, positive_braid_rule, satellite_rule, ConstructionVerdict, Fillable, Rule,
};
pub use disk::{
    consistent_classes, gap_set, min_consistent_coefficient, mu_bounds, strong_fill_predicate,
    DiskClass, DiskError, MuBounds, CITED_GAP_LIST,
};
pub use invariants::{alexander, burau_reduced, positive_braid_genus, self_linking, InvariantError};
pub use laurent::{LaurentMatrix, LaurentPoly};
pub use torus::{
    blowup_schedule, continued_fraction, m_torus, mu_torus, reversed_cf_c, ContinuedFraction,
    TorusError, TorusKnot, TorusReport,
};
