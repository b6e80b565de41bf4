//! Numerical engine for the extrinsic geometry of surfaces immersed in the
//! product spaces H²×R and S²×R.
//!
//! The crate constructs the two classical families of positive-constant-
//! extrinsic-curvature surfaces in these ambients — rotational spheres and
//! helicoidal "simple end" surfaces swept by a parabolic isometry group —
//! evaluates first and second fundamental forms together with every derived
//! curvature quantity, and verifies at desk scale the structural identities
//! the families satisfy: curvature products along profiles, vertical height
//! bounds, conformality of the auxiliary quadratic form `A = I + g(ν) dh²`
//! with the second fundamental form, and strict convexity of plane sections.
//!
//! Module map:
//! - [`ambient`]: the two ambient models, disk charts, geodesics, isometries,
//!   vertical-plane foliations.
//! - [`surface`]: charts with derivative providers, fundamental forms, normal
//!   and angle function, Gauss-equation cross-check.
//! - [`rotational`]: rotational spheres of constant extrinsic curvature K,
//!   generating curves by quadrature, closed-form principal curvatures.
//! - [`helicoidal`]: helicoidal surfaces built from a convex profile, their
//!   curvature formula, and the simple-end diagnostics.
//! - [`estimates`]: the height-estimate machinery (auxiliary functions g, χ,
//!   f′, the constant c_K, radial Laplacian checks).
//! - [`formq`]: the quadratic form A, its conformality defect against II, and
//!   the pair curvature.
//! - [`mesh`] / [`sections`]: triangulated samplings, OBJ export, and
//!   plane-section extraction with discrete convexity tests.
//! - [`verify`]: the twelve-point verification suite used by the CLI and the
//!   acceptance tests.

pub mod ambient;
mod error;
pub mod estimates;
pub mod formq;
pub mod helicoidal;
pub mod mesh;
pub mod quad;
pub mod rotational;
pub mod sections;
pub mod surface;
pub mod verify;

pub use error::GeomError;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, GeomError>;
