use thiserror::Error;

/// Errors produced by the geometry engine.
///
/// Construction routines validate their inputs eagerly and return a specific
/// variant rather than propagating NaNs; numerical routines that can fail to
/// meet a tolerance report both the requested and the achieved accuracy.
#[derive(Debug, Error)]
pub enum GeomError {
    /// A parameter lies outside the domain a routine is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two objects built for different ambient spaces were combined.
    #[error("model mismatch: {0}")]
    ModelMismatch(String),

    /// The first fundamental form is degenerate at a sample point.
    #[error("singular immersion at (u, v) = ({u}, {v}): det I = {det_i:e}")]
    SingularImmersion { u: f64, v: f64, det_i: f64 },

    /// A quantity involving 1/sinh(k) or 1/sin(k) was requested too close to
    /// a pole of the generating curve.
    #[error("generating-curve pole: k = {k:e} is too small for this quantity")]
    Pole { k: f64 },

    /// Adaptive quadrature hit its subdivision cap before reaching the
    /// requested tolerance.
    #[error("quadrature did not converge: achieved {achieved:e}, requested {requested:e}")]
    QuadratureDidNotConverge { achieved: f64, requested: f64 },

    /// An operation's mathematical precondition failed.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A surface whose extrinsic curvature does not match the requested
    /// constant was passed to a K-surface-only routine.
    #[error("not a K-surface: requested K = {requested}, found K_ext = {found}")]
    NotAKSurface { requested: f64, found: f64 },

    /// A section plane is tangent to the surface along whole faces, so no
    /// transversal polyline exists there.
    #[error("plane is tangential to the mesh on {} face(s)", faces.len())]
    Tangential { faces: Vec<usize> },

    /// A mesh or section is too coarse for the requested diagnostic.
    #[error("insufficient resolution: {0}")]
    InsufficientResolution(String),

    /// Internal cross-checks disagreed beyond tolerance.
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
}
