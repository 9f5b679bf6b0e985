//! Spectral radius, characteristic polynomials and exact certification.

mod charpoly;
mod closed_form;
mod exact;
mod lemmas;
mod power;

pub use charpoly::{char_poly, CharPoly, MAX_CHARPOLY_VERTICES};
pub use closed_form::{
    hts_cubic, family_rho_closed_form, largest_real_root, snk_cubic, Poly,
};
pub use exact::{
    certify_quadratic_eigenfactor, certify_rho_equals_sqrt, compare_to_threshold, sign_at_surd,
    Comparison, EqualityCertificate, QuadraticRemainder, QuadraticThreshold, SqrtCertificate,
};
pub use lemmas::{deletion_bound_check, perron_coordinate_bound_check, DeletionCheck, PerronCheck};
pub use power::{
    spectral_radius, spectral_radius_default, spectral_radius_from, SpectralCertificate, DEFAULT_TOL,
    MAX_ITERATIONS,
};

/// Slack used when deciding theorem predicates on floating values.
pub const DECISION_SLACK: f64 = 1e-9;

/// Distance from a threshold below which floating evidence is not trusted
/// and exact certification is attempted.
pub const ESCALATION_WINDOW: f64 = 1e-6;
