//! Weighted coefficient sums, threshold estimation and verification reports.
//!
//! [`weighted_sum`] and [`radius_estimate`] work on any coefficient list; the
//! norm identities, the planar Gram matrix and the membership report tie
//! them to concrete weights and domains.

mod identities;
mod membership;
mod report;
mod series;

pub use identities::{
    hermite_norm_identity, laguerre_norm_identity, orthogonality_matrix, NormIdentityReport,
    OrthogonalityTolerance, HERMITE_ORTHO_MAX, LAGUERRE_ORTHO_MAX, NORM_IDENTITY_TOL,
};
pub use membership::{
    jacobi_membership_report, jacobi_theta_sweep, MembershipReport, HOLOMORPHY_DEFECT_TOL,
};
pub use report::{ReportFlag, ToleranceMode, VerificationReport};
pub use series::{
    radius_estimate, summability_report, verdict, weighted_sum, CoefficientSeries, RadiusEstimate,
    RadiusStatus, SummabilityReport, Verdict, WeightedSum, FIT_FLOOR, NOISE_FLOOR,
    THRESHOLD_MARGIN, VERDICT_WINDOW,
};
