//! Ambient product spaces and their elementary geometry.
//!
//! H²×R is modelled on the hyperboloid sheet {−x₁²+x₂²+x₃² = −1, x₁ > 0} in
//! Lorentz 4-space with the form −dx₁²+dx₂²+dx₃²+dx₄², and S²×R on the unit
//! sphere in R⁴ with the Euclidean form; the fourth coordinate is the height
//! in both cases. The Poincaré disk appears as an I/O chart for the
//! hyperbolic factor, the Klein projective model as the arena where
//! hyperbolic lines become Euclidean chords, and ideal points are stored as
//! angles on the circle at infinity.

use crate::{GeomError, Result};

/// Which product space a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceTag {
    /// H²×R: hyperbolic factor, Lorentzian ambient form.
    H2R,
    /// S²×R: spherical factor, Euclidean ambient form.
    S2R,
}

impl SpaceTag {
    /// Sign ε of the factor curvature: −1 for H²×R, +1 for S²×R.
    pub fn epsilon(self) -> f64 {
        match self {
            SpaceTag::H2R => -1.0,
            SpaceTag::S2R => 1.0,
        }
    }

    /// Short lowercase name used by the CLI and report files.
    pub fn name(self) -> &'static str {
        match self {
            SpaceTag::H2R => "h2r",
            SpaceTag::S2R => "s2r",
        }
    }
}

/// Inner product of the ambient 4-space: ε·a₁b₁ + a₂b₂ + a₃b₃ + a₄b₄.
pub fn ambient_dot(tag: SpaceTag, a: [f64; 4], b: [f64; 4]) -> f64 {
    tag.epsilon() * a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

/// Lorentz inner product on the 3-space of the hyperbolic factor.
pub fn lorentz3(a: [f64; 3], b: [f64; 3]) -> f64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Signed residual of the quadric constraint: ε·x₁² + x₂² + x₃² − ε.
pub fn quadric_residual(tag: SpaceTag, x: [f64; 4]) -> f64 {
    let e = tag.epsilon();
    e * x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - e
}

/// Validate that `x` lies on the model quadric of `tag`.
///
/// The tolerance scales with the squared size of the factor coordinates so
/// that points far out on the hyperboloid (where x₁² is enormous and the
/// constraint is evaluated with catastrophic cancellation) are judged
/// relative to the magnitude of the terms being cancelled.
pub fn check_quadric(tag: SpaceTag, x: [f64; 4]) -> Result<()> {
    let scale = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).max(1.0);
    let res = quadric_residual(tag, x);
    if !res.is_finite() || res.abs() > 1e-12 * scale {
        return Err(GeomError::Domain(format!(
            "point ({}, {}, {}, {}) is off the {} quadric: residual {res:e}",
            x[0],
            x[1],
            x[2],
            x[3],
            tag.name()
        )));
    }
    if tag == SpaceTag::H2R && x[0] <= 0.0 {
        return Err(GeomError::Domain(format!(
            "x1 = {} is not on the positive hyperboloid sheet",
            x[0]
        )));
    }
    Ok(())
}

/// A validated point of H²×R or S²×R in ambient 4-coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmbientPoint {
    /// Coordinates (x₁, x₂, x₃, x₄); x₄ is the height.
    pub x: [f64; 4],
    /// Which quadric the factor coordinates satisfy.
    pub tag: SpaceTag,
}

impl AmbientPoint {
    /// Build a point, checking the quadric constraint of `tag`.
    pub fn new(tag: SpaceTag, x: [f64; 4]) -> Result<Self> {
        check_quadric(tag, x)?;
        Ok(AmbientPoint { x, tag })
    }

    /// Height coordinate x₄.
    pub fn height(&self) -> f64 {
        self.x[3]
    }
}

/// Intrinsic distance in M²(ε)×R between two points of the same space:
/// √(d_factor² + Δt²), with the factor distance measured inside H² or S².
pub fn ambient_distance(a: &AmbientPoint, b: &AmbientPoint) -> Result<f64> {
    if a.tag != b.tag {
        return Err(GeomError::ModelMismatch(
            "distance between points of different ambient spaces".into(),
        ));
    }
    let p = [a.x[0], a.x[1], a.x[2]];
    let q = [b.x[0], b.x[1], b.x[2]];
    let d_factor = match a.tag {
        SpaceTag::H2R => {
            // cosh d = −⟨p,q⟩ in the Lorentz form; clamp guards roundoff at p = q.
            let c = (-lorentz3(p, q)).max(1.0);
            c.acosh()
        }
        SpaceTag::S2R => {
            let c = (p[0] * q[0] + p[1] * q[1] + p[2] * q[2]).clamp(-1.0, 1.0);
            c.acos()
        }
    };
    let dt = a.x[3] - b.x[3];
    Ok((d_factor * d_factor + dt * dt).sqrt())
}

/// A point of the Poincaré disk chart of H²×R: disk coordinates plus height.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint {
    /// Position in the open unit disk, |z| < 1.
    pub z: [f64; 2],
    /// Height coordinate.
    pub t: f64,
}

impl DiskPoint {
    /// Convenience constructor; the |z| < 1 invariant is enforced by the
    /// chart maps that consume the point.
    pub fn new(z1: f64, z2: f64, t: f64) -> Self {
        DiskPoint { z: [z1, z2], t }
    }
}

/// Map a Poincaré-disk point to hyperboloid coordinates.
///
/// (z, t) ↦ ((1+|z|²)/(1−|z|²), 2z₁/(1−|z|²), 2z₂/(1−|z|²), t).
pub fn lift_disk(p: DiskPoint) -> Result<AmbientPoint> {
    let r2 = p.z[0] * p.z[0] + p.z[1] * p.z[1];
    if !(r2 < 1.0) {
        return Err(GeomError::Domain(format!(
            "disk point with |z|^2 = {r2} is not inside the unit disk"
        )));
    }
    let q = 1.0 - r2;
    AmbientPoint::new(
        SpaceTag::H2R,
        [(1.0 + r2) / q, 2.0 * p.z[0] / q, 2.0 * p.z[1] / q, p.t],
    )
}

/// Inverse of [`lift_disk`]: hyperboloid coordinates back to the disk chart.
pub fn project_disk(p: &AmbientPoint) -> Result<DiskPoint> {
    if p.tag != SpaceTag::H2R {
        return Err(GeomError::ModelMismatch(
            "the Poincaré disk chart only covers H²×R".into(),
        ));
    }
    let d = 1.0 + p.x[0];
    Ok(DiskPoint {
        z: [p.x[1] / d, p.x[2] / d],
        t: p.x[3],
    })
}

/// Klein-model image of a hyperboloid factor point: (x₂/x₁, x₃/x₁).
pub fn klein_of_hyperboloid(x: [f64; 3]) -> [f64; 2] {
    [x[1] / x[0], x[2] / x[0]]
}

/// Klein-model image of a Poincaré-disk point: 2z/(1+|z|²).
pub fn klein_of_disk(z: [f64; 2]) -> [f64; 2] {
    let r2 = z[0] * z[0] + z[1] * z[1];
    [2.0 * z[0] / (1.0 + r2), 2.0 * z[1] / (1.0 + r2)]
}

/// Hyperbolic inner product of two directions `u`, `v` at the Klein-model
/// point `p`: u·v/(1−|p|²) + (p·u)(p·v)/(1−|p|²)².
pub fn klein_dot(p: [f64; 2], u: [f64; 2], v: [f64; 2]) -> f64 {
    let s = 1.0 - (p[0] * p[0] + p[1] * p[1]);
    let uv = u[0] * v[0] + u[1] * v[1];
    let pu = p[0] * u[0] + p[1] * u[1];
    let pv = p[0] * v[0] + p[1] * v[1];
    uv / s + pu * pv / (s * s)
}

/// Reduce an angle to [0, 2π).
fn normalize_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut a = theta % two_pi;
    if a < 0.0 {
        a += two_pi;
    }
    // The remainder can land exactly on 2π after the correction above.
    if a >= two_pi {
        a = 0.0;
    }
    a
}

/// Null vector of the light cone over the ideal point at angle θ.
fn null_vector(theta: f64) -> [f64; 3] {
    [1.0, theta.cos(), theta.sin()]
}

/// Euclidean cross product in the factor 3-space.
fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Apply the Lorentz metric matrix G₃ = diag(−1, 1, 1).
fn apply_g3(a: [f64; 3]) -> [f64; 3] {
    [-a[0], a[1], a[2]]
}

/// An oriented complete geodesic of H², stored by its ordered ideal
/// endpoints on the circle at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geodesic {
    /// Angle of the backward ideal endpoint, in [0, 2π).
    pub theta_minus: f64,
    /// Angle of the forward ideal endpoint, in [0, 2π).
    pub theta_plus: f64,
}

impl Geodesic {
    /// Build a geodesic from two distinct ideal endpoint angles.
    pub fn new(theta_minus: f64, theta_plus: f64) -> Result<Self> {
        let tm = normalize_angle(theta_minus);
        let tp = normalize_angle(theta_plus);
        if (0.5 * (tp - tm)).sin().abs() < 1e-12 {
            return Err(GeomError::Domain(format!(
                "ideal endpoints {theta_minus} and {theta_plus} coincide"
            )));
        }
        Ok(Geodesic {
            theta_minus: tm,
            theta_plus: tp,
        })
    }

    /// Null vectors over the two ideal endpoints, (backward, forward).
    pub fn null_endpoints(&self) -> ([f64; 3], [f64; 3]) {
        (null_vector(self.theta_minus), null_vector(self.theta_plus))
    }

    /// Scale factor λ = 1/(2|sin(Δθ/2)|) making the parametrization below
    /// unit speed.
    fn lambda(&self) -> f64 {
        1.0 / (2.0 * (0.5 * (self.theta_plus - self.theta_minus)).sin().abs())
    }

    /// Point of the geodesic at signed arc length `s` in hyperboloid factor
    /// coordinates; s = 0 is the point closest to the disk origin.
    pub fn hyperboloid_point(&self, s: f64) -> [f64; 3] {
        let (nm, np) = self.null_endpoints();
        let l = self.lambda();
        let (ep, em) = (s.exp(), (-s).exp());
        [
            l * (ep * np[0] + em * nm[0]),
            l * (ep * np[1] + em * nm[1]),
            l * (ep * np[2] + em * nm[2]),
        ]
    }

    /// Unit tangent of the arc-length parametrization at `s`.
    pub fn hyperboloid_tangent(&self, s: f64) -> [f64; 3] {
        let (nm, np) = self.null_endpoints();
        let l = self.lambda();
        let (ep, em) = (s.exp(), (-s).exp());
        [
            l * (ep * np[0] - em * nm[0]),
            l * (ep * np[1] - em * nm[1]),
            l * (ep * np[2] - em * nm[2]),
        ]
    }

    /// Signed arc-length coordinate of a factor point `q` lying on the
    /// geodesic: s = ½·ln(⟨q, n⁻⟩ / ⟨q, n⁺⟩) in the Lorentz form.
    pub fn arclen_of(&self, q: [f64; 3]) -> f64 {
        let (nm, np) = self.null_endpoints();
        0.5 * (lorentz3(q, nm) / lorentz3(q, np)).ln()
    }

    /// Endpoints of the Euclidean chord this geodesic becomes in the Klein
    /// model, (backward, forward).
    pub fn klein_chord(&self) -> ([f64; 2], [f64; 2]) {
        (
            [self.theta_minus.cos(), self.theta_minus.sin()],
            [self.theta_plus.cos(), self.theta_plus.sin()],
        )
    }
}

/// Point at signed arc length `s` along `g`, in the Poincaré disk chart
/// (height 0). Arc length is measured from the point of `g` closest to the
/// disk origin.
pub fn geodesic_point(g: &Geodesic, s: f64) -> DiskPoint {
    let q = g.hyperboloid_point(s);
    let d = 1.0 + q[0];
    DiskPoint {
        z: [q[1] / d, q[2] / d],
        t: 0.0,
    }
}

/// The parabolic translation F_t of the Poincaré disk fixing the ideal
/// point (1, 0), extended to H²×R by acting trivially on the height.
pub fn parabolic_isometry(t: f64, p: DiskPoint) -> DiskPoint {
    let (x, y) = (p.z[0], p.z[1]);
    let s = (x - 1.0) * (x - 1.0) + y * y;
    let d = 4.0 + 4.0 * t * y + t * t * s;
    DiskPoint {
        z: [
            1.0 + 4.0 * (x - 1.0) / d,
            (4.0 * y + 2.0 * t * s) / d,
        ],
        t: p.t,
    }
}

/// Rotation of the ambient space about the vertical axis {(1,0,0)}×R:
/// rotates the (x₂, x₃) coordinates by angle `v` in either model.
pub fn rotation_isometry(v: f64, p: &AmbientPoint) -> AmbientPoint {
    let (c, s) = (v.cos(), v.sin());
    AmbientPoint {
        x: [
            p.x[0],
            c * p.x[1] - s * p.x[2],
            s * p.x[1] + c * p.x[2],
            p.x[3],
        ],
        tag: p.tag,
    }
}

/// A vertical plane γ×R of H²×R, determined by the geodesic γ it stands on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerticalPlane {
    /// The footprint geodesic in H².
    pub geodesic: Geodesic,
}

impl VerticalPlane {
    /// Wrap a geodesic as the vertical plane above it.
    pub fn new(geodesic: Geodesic) -> Self {
        VerticalPlane { geodesic }
    }

    /// Unit spacelike Lorentz normal of the plane inside the factor 3-space.
    ///
    /// Every factor point of the plane's geodesic is a combination of the
    /// two null endpoint vectors, so G₃·(n⁻ ×ₑ n⁺), which is Lorentz-
    /// orthogonal to both, vanishes against the whole plane.
    pub fn lorentz_normal(&self) -> [f64; 3] {
        let (nm, np) = self.geodesic.null_endpoints();
        let m = apply_g3(cross3(nm, np));
        let n = lorentz3(m, m).sqrt();
        [m[0] / n, m[1] / n, m[2] / n]
    }

    /// Signed level function whose zero set is the plane: the Lorentz inner
    /// product of the factor coordinates with the plane normal. The height
    /// coordinate does not enter — the plane is vertical.
    pub fn level(&self, x: [f64; 4]) -> f64 {
        let m = self.lorentz_normal();
        lorentz3([x[0], x[1], x[2]], m)
    }

    /// Arc-length coordinate along the footprint geodesic of a point lying
    /// on the plane.
    pub fn arclen_of(&self, x: [f64; 4]) -> f64 {
        self.geodesic.arclen_of([x[0], x[1], x[2]])
    }
}

/// The vertical-plane foliation along the geodesic γ orthogonal to `base`:
/// P_γ(t) is the vertical plane over the geodesic orthogonal to γ at γ(t),
/// where γ passes through the closest-to-origin point of `base`'s geodesic.
/// P_γ(0) reproduces `base`.
pub fn foliation_plane(base: &VerticalPlane, t: f64) -> VerticalPlane {
    let g = &base.geodesic;
    let p0 = g.hyperboloid_point(0.0);
    let u = g.hyperboloid_tangent(0.0);
    // Rotate u by 90° inside the tangent plane at p0 to get the direction of
    // the orthogonal geodesic γ.
    let ju = apply_g3(cross3(p0, u));
    // γ(t) and its unit tangent there.
    let (ch, sh) = (t.cosh(), t.sinh());
    let q = [
        ch * p0[0] + sh * ju[0],
        ch * p0[1] + sh * ju[1],
        ch * p0[2] + sh * ju[2],
    ];
    let w = [
        sh * p0[0] + ch * ju[0],
        sh * p0[1] + ch * ju[1],
        sh * p0[2] + ch * ju[2],
    ];
    // Direction of the new footprint geodesic: w rotated by −90° at q, so
    // that t = 0 recovers the base orientation exactly.
    let g3qw = apply_g3(cross3(q, w));
    let d = [-g3qw[0], -g3qw[1], -g3qw[2]];
    // Ideal endpoints of s ↦ cosh(s)·q + sinh(s)·d are the null directions
    // q ± d; a null vector (a, b, c) sits over the angle atan2(c, b).
    let fwd = [q[0] + d[0], q[1] + d[1], q[2] + d[2]];
    let bwd = [q[0] - d[0], q[1] - d[1], q[2] - d[2]];
    let theta_plus = normalize_angle(fwd[2].atan2(fwd[1]));
    let theta_minus = normalize_angle(bwd[2].atan2(bwd[1]));
    VerticalPlane {
        geodesic: Geodesic {
            theta_minus,
            theta_plus,
        },
    }
}
