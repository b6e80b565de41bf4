//! Rotational spheres of constant positive extrinsic curvature.
//!
//! For every K > 0 both H²×R and S²×R carry a one-parameter rotational
//! sphere: its generating curve (k(u), h(u)), u ∈ [−1, 1], has closed-form
//! radius
//!
//! - H²×R: k(u) = arccosh(exp((1−u²)/2K)),
//! - S²×R: k(u) = arccos(exp(−(1−u²)/2K)),
//!
//! and height given by a quadrature of an explicit integrand with removable
//! endpoint singularities. The parameter u is at the same time the angle
//! function of the sphere and the arc-length derivative k′(t), which makes
//! every curvature quantity of the surface available in closed form; this
//! module exploits that to cross-validate the generic machinery of
//! [`crate::surface`] at tight tolerances.
//!
//! All evaluation is routed through expm1/ln1p-stable expressions so that
//! small-K and near-pole regimes lose no precision.

use crate::ambient::{ambient_distance, AmbientPoint, SpaceTag};
use crate::quad::integrate;
use crate::surface::ParamSurface;
use crate::{GeomError, Result};
use serde::Serialize;

/// Chart clip in u around the poles: the chart is evaluated on
/// [−1+δ, 1−δ] because sinh k (resp. sin k) vanishes at u = ±1 even though
/// the surface itself is smooth there.
pub const POLE_CLIP: f64 = 1e-3;

/// Absolute quadrature tolerance for height integrals.
const H_QUAD_TOL: f64 = 1e-10;

/// Absolute quadrature tolerance for arc-length integrals.
const ARC_QUAD_TOL: f64 = 1e-12;

/// One sampled point of a generating curve.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ProfileSample {
    /// Profile parameter in [−1, 1].
    pub u: f64,
    /// Geodesic radius from the rotation axis.
    pub k: f64,
    /// Height.
    pub h: f64,
}

/// The generating curve of a rotational K-sphere, with enough structure to
/// answer closed-form curvature queries along itself.
#[derive(Clone, Debug)]
#[allow(non_snake_case)]
pub struct GeneratingCurve {
    /// The constant extrinsic curvature.
    pub K: f64,
    /// Ambient space.
    pub tag: SpaceTag,
    /// Integration constant: h(1) = C is the lowest height.
    pub C: f64,
    /// Profile samples ordered by increasing u.
    pub samples: Vec<ProfileSample>,
}

/// Summary data of a rotational sphere.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RotSphereReport {
    /// Maximal radius, attained at the equator u = 0.
    pub k_max: f64,
    /// Minimal height h(1).
    pub h_min: f64,
    /// Maximal height h(−1).
    pub h_max: f64,
    /// Equator height h(0).
    pub h0: f64,
    /// Total vertical extent h_max − h_min.
    pub height: f64,
    /// Maximal ambient distance between profile points and their rotational
    /// antipodes (our reading of the sphere diameter).
    pub diameter: f64,
}

fn check_params(u: f64, big_k: f64) -> Result<()> {
    if !(u.is_finite() && u.abs() <= 1.0) {
        return Err(GeomError::Domain(format!("u = {u} is outside [-1, 1]")));
    }
    if !(big_k.is_finite() && big_k > 0.0) {
        return Err(GeomError::Domain(format!("K = {big_k} must be positive")));
    }
    Ok(())
}

/// 1 − u², organized to stay nonnegative and fully accurate at u = ±1.
fn s_of_u(u: f64) -> f64 {
    (1.0 - u) * (1.0 + u)
}

fn k_raw(u: f64, big_k: f64, tag: SpaceTag) -> f64 {
    let a = s_of_u(u) / (2.0 * big_k);
    match tag {
        // arccosh(eᵃ) = a + ln(1 + √(1 − e^{−2a})), exact at a = 0 and
        // overflow-free for small K.
        SpaceTag::H2R => a + (-f64::exp_m1(-2.0 * a)).sqrt().ln_1p(),
        // arccos(e^{−a}) = atan2(√(1 − e^{−2a}), e^{−a}) < π/2 always.
        SpaceTag::S2R => (-f64::exp_m1(-2.0 * a)).sqrt().atan2((-a).exp()),
    }
}

/// Radius of the generating curve at parameter u.
#[allow(non_snake_case)]
pub fn k_of_u(u: f64, K: f64, tag: SpaceTag) -> Result<f64> {
    check_params(u, K)?;
    Ok(k_raw(u, K, tag))
}

/// dk/du, valid away from the poles u = ±1.
fn k_u_raw(u: f64, big_k: f64, tag: SpaceTag) -> f64 {
    let s = s_of_u(u);
    let m = (-f64::exp_m1(-s / big_k)).sqrt();
    match tag {
        // −(u/K)·coth k with coth k = 1/√(1 − e^{−s/K}).
        SpaceTag::H2R => -u / (big_k * m),
        // −(u/K)·cot k with cot k = e^{−s/2K}/√(1 − e^{−s/K}).
        SpaceTag::S2R => -u * (-s / (2.0 * big_k)).exp() / (big_k * m),
    }
}

/// d²k/du², valid away from the poles.
fn k_uu_raw(u: f64, big_k: f64, tag: SpaceTag) -> f64 {
    let s = s_of_u(u);
    let k2 = big_k * big_k;
    match tag {
        SpaceTag::H2R => {
            // cosh k = E = e^{s/2K}; differentiate E twice and convert.
            let e = (s / (2.0 * big_k)).exp();
            let e_u = -(u / big_k) * e;
            let e_uu = e * (u * u - big_k) / k2;
            let sh = f64::exp_m1(s / big_k).sqrt();
            e_uu / sh - e * e_u * e_u / (sh * sh * sh)
        }
        SpaceTag::S2R => {
            // cos k = Ẽ = e^{−s/2K}.
            let e = (-s / (2.0 * big_k)).exp();
            let e_u = (u / big_k) * e;
            let e_uu = e * (u * u + big_k) / k2;
            let sn = (-f64::exp_m1(-s / big_k)).sqrt();
            -e_uu / sn - e * e_u * e_u / (sn * sn * sn)
        }
    }
}

fn h_integrand_raw(u: f64, big_k: f64, tag: SpaceTag) -> f64 {
    let s = s_of_u(u);
    let w = s / big_k;
    // The integrand is (1/√K)·q^{−1/2}(x) with q(x) = (1 − e^{−x})/x and
    // x = ±w by ambient sign; expand q^{−1/2} when the argument underflows.
    let x = match tag {
        SpaceTag::H2R => w,
        SpaceTag::S2R => -w,
    };
    if s < 1e-6 && x.abs() < 1e-3 {
        let f = 1.0 + x / 4.0 + x * x / 96.0 - x * x * x / 384.0;
        return f / big_k.sqrt();
    }
    match tag {
        SpaceTag::H2R => s.sqrt() / (big_k * (-f64::exp_m1(-w)).sqrt()),
        SpaceTag::S2R => s.sqrt() / (big_k * f64::exp_m1(w).sqrt()),
    }
}

/// Integrand of the height quadrature, with its removable singularity at
/// u = ±1 filled in by a series value (1/√K at the poles exactly).
#[allow(non_snake_case)]
pub fn h_integrand(u: f64, K: f64, tag: SpaceTag) -> Result<f64> {
    check_params(u, K)?;
    Ok(h_integrand_raw(u, K, tag))
}

/// Height of the generating curve: h(u) = C + ∫_u^1 h_integrand, by
/// adaptive quadrature to absolute tolerance 1e−10; h(1) = C exactly.
#[allow(non_snake_case)]
pub fn h_of_u(u: f64, K: f64, C: f64, tag: SpaceTag) -> Result<f64> {
    check_params(u, K)?;
    let val = integrate(|w| h_integrand_raw(w, K, tag), u, 1.0, H_QUAD_TOL)?;
    Ok(C + val)
}

/// Stable ln(cosh x) that never overflows: |x| + ln(1 + e^{−2|x|}) − ln 2.
fn ln_cosh(x: f64) -> f64 {
    x.abs() + (-2.0 * x.abs()).exp().ln_1p() - std::f64::consts::LN_2
}

/// r(w) = 1/w − 1/(eʷ − 1), the logarithmic derivative entering d²h/du²;
/// r(0) = 1/2, expanded in series near 0 where the direct form cancels.
fn r_log(w: f64) -> f64 {
    if w.abs() < 1e-4 {
        0.5 - w / 12.0 + w * w * w / 720.0
    } else {
        1.0 / w - 1.0 / f64::exp_m1(w)
    }
}

/// d²h/du² in closed form.
fn h_uu_raw(u: f64, big_k: f64, tag: SpaceTag) -> f64 {
    let w = s_of_u(u) / big_k;
    let integ = h_integrand_raw(u, big_k, tag);
    match tag {
        SpaceTag::H2R => (u / big_k) * integ * r_log(w),
        SpaceTag::S2R => (u / big_k) * integ * (r_log(w) - 1.0),
    }
}

impl GeneratingCurve {
    /// Sample the generating curve on n+1 equispaced parameters u ∈ [−1, 1]
    /// and validate its structural invariants.
    #[allow(non_snake_case)]
    pub fn build(K: f64, C: f64, tag: SpaceTag, n: usize) -> Result<Self> {
        check_params(0.0, K)?;
        if n < 2 {
            return Err(GeomError::Domain(format!(
                "need at least 2 profile segments, got {n}"
            )));
        }
        let mut samples = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let u = -1.0 + 2.0 * j as f64 / n as f64;
            let k = k_raw(u, K, tag);
            let h = h_of_u(u, K, C, tag)?;
            samples.push(ProfileSample { u, k, h });
        }
        let curve = GeneratingCurve { K, tag, C, samples };
        curve.check_invariants()?;
        Ok(curve)
    }

    fn check_invariants(&self) -> Result<()> {
        let first = self.samples.first().unwrap();
        let last = self.samples.last().unwrap();
        if first.k.abs() > 1e-10 || last.k.abs() > 1e-10 {
            return Err(GeomError::Inconsistent(format!(
                "radius does not close at the poles: k(−1) = {}, k(1) = {}",
                first.k, last.k
            )));
        }
        for w in self.samples.windows(2) {
            if w[0].k < 0.0 || w[1].k < 0.0 {
                return Err(GeomError::Inconsistent("negative radius sample".into()));
            }
            if w[1].h >= w[0].h {
                return Err(GeomError::Inconsistent(format!(
                    "height is not strictly decreasing in u near u = {}",
                    w[1].u
                )));
            }
            if self.tag == SpaceTag::S2R && w[1].k >= std::f64::consts::FRAC_PI_2 {
                return Err(GeomError::Inconsistent(format!(
                    "spherical radius leaves the open hemisphere at u = {}",
                    w[1].u
                )));
            }
        }
        Ok(())
    }

    /// Radius at parameter u.
    pub fn k_of(&self, u: f64) -> Result<f64> {
        k_of_u(u, self.K, self.tag)
    }

    /// Height at parameter u.
    pub fn h_of(&self, u: f64) -> Result<f64> {
        h_of_u(u, self.K, self.C, self.tag)
    }

    fn require_hyperbolic(&self) -> Result<()> {
        if self.tag != SpaceTag::H2R {
            return Err(GeomError::Precondition(
                "arc-length reparametrization is implemented for the H²×R family".into(),
            ));
        }
        Ok(())
    }

    /// Arc length along the curve from the pole u = 1 down to parameter u.
    ///
    /// Uses dt/du = −1/(K·tanh k) with the square-root pole at u = 1
    /// absorbed by the substitution u = 1 − ξ², and the symmetry
    /// t(−u) = T − t(u) to avoid the mirror pole at u = −1.
    pub fn arclen_of_u(&self, u: f64) -> Result<f64> {
        self.require_hyperbolic()?;
        check_params(u, self.K)?;
        if u < 0.0 {
            return Ok(self.total_arclen()? - self.positive_arclen(-u)?);
        }
        self.positive_arclen(u)
    }

    /// t(u) for u ≥ 0 through the desingularized integral.
    fn positive_arclen(&self, u: f64) -> Result<f64> {
        let big_k = self.K;
        let f = move |xi: f64| {
            let sv = xi * xi * (2.0 - xi * xi);
            let x = sv / big_k;
            // ratio = s/(1 − e^{−s/K}) → K as s → 0.
            let ratio = if x < 1e-6 {
                big_k * (1.0 + x / 2.0 + x * x / 12.0)
            } else {
                sv / (-f64::exp_m1(-x))
            };
            2.0 * ratio.sqrt() / (big_k * (2.0 - xi * xi).sqrt())
        };
        integrate(f, 0.0, (1.0 - u).sqrt(), ARC_QUAD_TOL)
    }

    /// Total arc length of the generating curve.
    pub fn total_arclen(&self) -> Result<f64> {
        Ok(2.0 * self.positive_arclen(0.0)?)
    }

    /// Invert the arc-length map: the u with t(u) = t, by bisection on the
    /// strictly decreasing t(·).
    pub fn u_of_arclen(&self, t: f64) -> Result<f64> {
        self.require_hyperbolic()?;
        let total = self.total_arclen()?;
        if !(t.is_finite() && (-1e-9..=total + 1e-9).contains(&t)) {
            return Err(GeomError::Domain(format!(
                "arc length {t} is outside [0, {total}]"
            )));
        }
        let (mut lo, mut hi) = (-1.0f64, 1.0f64); // t(lo) = total, t(hi) = 0
        for _ in 0..64 {
            let mid = 0.5 * (lo + hi);
            if self.arclen_of_u(mid)? > t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Bare ambient chart of the rotational K-sphere, valid on all of
/// [−1, 1] × R including the poles (unlike the [`build_sphere`] surface,
/// whose domain is clipped where the derivative providers degenerate).
#[allow(non_snake_case)]
pub fn sphere_chart(
    K: f64,
    C: f64,
    tag: SpaceTag,
) -> impl Fn(f64, f64) -> Result<[f64; 4]> {
    move |u, v| {
        Ok(sphere_point(
            k_of_u(u, K, tag)?,
            v,
            h_of_u(u, K, C, tag)?,
            tag,
        ))
    }
}

/// Build the rotational K-sphere chart and its summary report.
///
/// The chart covers [−1+δ, 1−δ]×[0, 2π] (δ = [`POLE_CLIP`]) with exact first
/// and second derivatives; n_u and n_v (each ≥ 8) set the preferred sampling
/// resolution carried by the surface.
#[allow(non_snake_case)]
pub fn build_sphere(
    K: f64,
    C: f64,
    tag: SpaceTag,
    n_u: usize,
    n_v: usize,
) -> Result<(ParamSurface, RotSphereReport)> {
    check_params(0.0, K)?;
    if n_u < 8 || n_v < 8 {
        return Err(GeomError::Domain(format!(
            "mesh resolution ({n_u}, {n_v}) is below the minimum of 8"
        )));
    }

    let k_max = k_raw(0.0, K, tag);
    let h_min = C;
    let h_max = h_of_u(-1.0, K, C, tag)?;
    let h0 = h_of_u(0.0, K, C, tag)?;

    // Independent evaluation of the equator height: C plus the quadrature
    // over [−1, 0], which must agree with C + ∫_0^1 by evenness.
    let h0_alt = C + integrate(|w| h_integrand_raw(w, K, tag), -1.0, 0.0, H_QUAD_TOL)?;
    if (h0 - h0_alt).abs() > 1e-9 {
        return Err(GeomError::Inconsistent(format!(
            "equator height disagrees between formulas: {h0} vs {h0_alt}"
        )));
    }
    if ((h0 - h_min) - (h_max - h0)).abs() > 1e-9 {
        return Err(GeomError::Inconsistent(format!(
            "upper and lower sphere halves are not symmetric: {} vs {}",
            h0 - h_min,
            h_max - h0
        )));
    }
    if tag == SpaceTag::H2R && 1.0 / (2.0 * K) < 300.0 {
        let direct = (1.0 / (2.0 * K)).exp().acosh();
        if (k_max - direct).abs() > 1e-9 {
            return Err(GeomError::Inconsistent(format!(
                "stable and direct k_max disagree: {k_max} vs {direct}"
            )));
        }
    }

    // Diameter: maximal ambient distance between a profile point and its
    // half-turn image, scanned over the profile (the equator pair wins).
    let curve = GeneratingCurve::build(K, C, tag, n_u.max(32))?;
    let mut diameter = 0.0f64;
    for sample in curve
        .samples
        .iter()
        .copied()
        .chain(std::iter::once(ProfileSample {
            u: 0.0,
            k: k_max,
            h: h0,
        }))
    {
        let p = sphere_point(sample.k, 0.0, sample.h, tag);
        let q = sphere_point(sample.k, std::f64::consts::PI, sample.h, tag);
        let d = ambient_distance(
            &AmbientPoint::new(tag, p)?,
            &AmbientPoint::new(tag, q)?,
        )?;
        diameter = diameter.max(d);
    }

    let report = RotSphereReport {
        k_max,
        h_min,
        h_max,
        h0,
        height: h_max - h_min,
        diameter,
    };

    let chart = move |u: f64, v: f64| {
        let k = k_raw(u, K, tag);
        let h = h_of_u(u, K, C, tag)
            .expect("height quadrature converges on the sphere profile");
        sphere_point(k, v, h, tag)
    };
    let first = move |u: f64, v: f64| {
        let k = k_raw(u, K, tag);
        let ku = k_u_raw(u, K, tag);
        let hu = -h_integrand_raw(u, K, tag);
        let (fp, g, gp) = match tag {
            SpaceTag::H2R => (k.sinh(), k.sinh(), k.cosh()),
            SpaceTag::S2R => (-k.sin(), k.sin(), k.cos()),
        };
        (
            [fp * ku, gp * ku * v.cos(), gp * ku * v.sin(), hu],
            [0.0, -g * v.sin(), g * v.cos(), 0.0],
        )
    };
    let second = move |u: f64, v: f64| {
        let k = k_raw(u, K, tag);
        let ku = k_u_raw(u, K, tag);
        let kuu = k_uu_raw(u, K, tag);
        let huu = h_uu_raw(u, K, tag);
        let (f, fp, g, gp) = match tag {
            SpaceTag::H2R => (k.cosh(), k.sinh(), k.sinh(), k.cosh()),
            SpaceTag::S2R => (k.cos(), -k.sin(), k.sin(), k.cos()),
        };
        // f″ = ε-appropriate second derivative: cosh″ = cosh, cos″ = −cos;
        // likewise g″ = g or −g.
        let (fpp, gpp) = match tag {
            SpaceTag::H2R => (f, g),
            SpaceTag::S2R => (-f, -g),
        };
        let radial = gpp * ku * ku + gp * kuu;
        (
            [
                fpp * ku * ku + fp * kuu,
                radial * v.cos(),
                radial * v.sin(),
                huu,
            ],
            [0.0, -gp * ku * v.sin(), gp * ku * v.cos(), 0.0],
            [0.0, -g * v.cos(), -g * v.sin(), 0.0],
        )
    };

    let surface = ParamSurface::new(
        tag,
        [-1.0 + POLE_CLIP, 1.0 - POLE_CLIP, 0.0, 2.0 * std::f64::consts::PI],
        chart,
    )
    .with_exact_first(first)
    .with_exact_second(second)
    .with_v_periodic(true)
    .with_preferred_res(n_u, n_v);
    surface.validate()?;

    Ok((surface, report))
}

/// Ambient position of the rotational chart at radius k, angle v, height h.
pub(crate) fn sphere_point(k: f64, v: f64, h: f64, tag: SpaceTag) -> [f64; 4] {
    match tag {
        SpaceTag::H2R => [k.cosh(), k.sinh() * v.cos(), k.sinh() * v.sin(), h],
        SpaceTag::S2R => [k.cos(), k.sin() * v.cos(), k.sin() * v.sin(), h],
    }
}

/// Principal curvatures of the H²×R generating curve at arc length `t_arc`,
/// evaluated from the closed-form arc-length derivatives
/// λ₁ = k′h″ − k″h′ and λ₂ = h′·coth k, and cross-checked against the
/// profile identities (k′)² = 1 − 2K·ln cosh k and K = −k″·coth k.
pub fn closed_form_principal_curvatures(
    t_arc: f64,
    curve: &GeneratingCurve,
) -> Result<(f64, f64)> {
    curve.require_hyperbolic()?;
    let u = curve.u_of_arclen(t_arc)?;
    let k = k_raw(u, curve.K, curve.tag);
    if k <= 1e-8 {
        return Err(GeomError::Pole { k });
    }
    let big_k = curve.K;
    let s = s_of_u(u);
    // Arc-length derivatives: u is k′(t) itself, h′ closes the unit-speed
    // relation, and k″ = −K·tanh k.
    let th = (-f64::exp_m1(-s / big_k)).sqrt();
    let kp = u;
    let hp = s.sqrt();
    let kpp = -big_k * th;
    let hpp = u * big_k * th / hp;

    let lambda1 = kp * hpp - kpp * hp;
    let lambda2 = hp / k.tanh();

    let first_integral = kp * kp - (1.0 - 2.0 * big_k * ln_cosh(k));
    if first_integral.abs() > 1e-8 {
        return Err(GeomError::Inconsistent(format!(
            "profile first integral violated at t = {t_arc}: residual {first_integral:e}"
        )));
    }
    let curvature_ode = big_k + kpp / k.tanh();
    if curvature_ode.abs() > 1e-6 {
        return Err(GeomError::Inconsistent(format!(
            "profile curvature relation violated at t = {t_arc}: residual {curvature_ode:e}"
        )));
    }
    if (lambda1 * lambda2 - big_k).abs() > 1e-8 {
        return Err(GeomError::Inconsistent(format!(
            "principal curvature product deviates from K at t = {t_arc}: {}",
            lambda1 * lambda2
        )));
    }
    Ok((lambda1, lambda2))
}
