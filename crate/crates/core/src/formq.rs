//! The quadratic form A = I + g(ν) dh² and its conformality with II.
//!
//! On a surface of constant extrinsic curvature K > 0 in H²×R or S²×R the
//! form A built from the first fundamental form, the angle function ν and
//! the differential of the height is conformal to the second fundamental
//! form — the (2,0)-part of A in a conformal chart for II vanishes
//! identically. Conformality of two quadratic forms is chart-invariant, so
//! this module verifies the vanishing through the real defect
//!
//!   defect = (|A₁₁·II₁₂ − A₁₂·II₁₁| + |A₁₁·II₂₂ − A₂₂·II₁₁|) / (‖A‖·‖II‖)
//!
//! (max-abs coefficient norms, making the threshold scale-invariant), which
//! is zero exactly when A and II are proportional at the point. The
//! extrinsic curvature of the pair (II, A) is the closed form
//! K_pair = (1 + g(ν)‖T‖²)/K = χ(ν)/K, cross-checked against the
//! determinant ratio det A / det II.
//!
//! Everything here is pure and safe for concurrent use.

use crate::estimates::g_of_nu;
use crate::surface::ParamSurface;
use crate::{GeomError, Result};
use serde::Serialize;

/// Allowed deviation of the measured extrinsic curvature from the requested
/// K before a point is rejected as not lying on a K-surface.
const K_MATCH_TOL: f64 = 1e-3;

/// Pointwise evaluation of A and its conformality defect against II.
#[derive(Clone, Copy, Debug, Serialize)]
#[allow(non_snake_case)]
pub struct FormQReport {
    /// Coefficient of A on du².
    pub A11: f64,
    /// Coefficient of A on du dv.
    pub A12: f64,
    /// Coefficient of A on dv².
    pub A22: f64,
    /// Scale-invariant conformality defect of A against II; zero iff the
    /// two forms are proportional at the point.
    pub defect: f64,
    /// Extrinsic curvature of the pair (II, A): (1 + g(ν)‖T‖²)/K.
    pub K_pair: f64,
}

/// Grid summary of the conformality defect.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SweepSummary {
    /// Largest pointwise defect.
    pub max_defect: f64,
    /// Mean pointwise defect.
    pub mean_defect: f64,
    /// Grid resolution per axis.
    pub grid: usize,
    /// max_defect < 1e−6.
    pub pass: bool,
}

#[allow(non_snake_case)]
fn form_a_impl(s: &ParamSurface, K: f64, u: f64, v: f64, check_k: bool) -> Result<FormQReport> {
    let r = s.fundamental_forms(u, v)?;
    if check_k && (r.K_ext - K).abs() > K_MATCH_TOL {
        return Err(GeomError::NotAKSurface {
            requested: K,
            found: r.K_ext,
        });
    }
    let det_ii = r.II11 * r.II22 - r.II12 * r.II12;
    if !(det_ii.is_finite() && det_ii > 0.0) {
        return Err(GeomError::Precondition(format!(
            "second fundamental form is not definite at ({u}, {v}): det II = {det_ii}"
        )));
    }
    let (psi_u, psi_v) = s.first_derivatives(u, v)?;
    let (h_u, h_v) = (psi_u[3], psi_v[3]);
    let nu = r.nu.clamp(-1.0, 1.0);
    let g = g_of_nu(nu, K, s.tag().epsilon() as i32)?;

    let a11 = r.I11 + g * h_u * h_u;
    let a12 = r.I12 + g * h_u * h_v;
    let a22 = r.I22 + g * h_v * h_v;

    let norm_a = a11.abs().max(a12.abs()).max(a22.abs());
    let norm_ii = r.II11.abs().max(r.II12.abs()).max(r.II22.abs());
    let defect = ((a11 * r.II12 - a12 * r.II11).abs() + (a11 * r.II22 - a22 * r.II11).abs())
        / (norm_a * norm_ii);

    Ok(FormQReport {
        A11: a11,
        A12: a12,
        A22: a22,
        defect,
        K_pair: (1.0 + g * r.T_norm_sq) / K,
    })
}

/// Evaluate A = I + g(ν) dh² at (u, v) on a surface of constant extrinsic
/// curvature K, with the conformality defect against II and the pair
/// curvature.
///
/// The point must actually lie on a K-surface: the measured extrinsic
/// curvature has to match the requested K within 1e−3.
#[allow(non_snake_case)]
pub fn form_A(s: &ParamSurface, K: f64, u: f64, v: f64) -> Result<FormQReport> {
    if !(K.is_finite() && K > 0.0) {
        return Err(GeomError::Domain(format!(
            "curvature K must be positive and finite, got {K}"
        )));
    }
    form_a_impl(s, K, u, v, true)
}

/// Evaluate A at (u, v) using the surface's own extrinsic curvature at the
/// point instead of a prescribed constant.
///
/// This is the control-case entry point: on a surface whose K varies, A is
/// still well defined pointwise but is no longer conformal to II, and the
/// defect measures the failure.
#[allow(non_snake_case)]
pub fn form_A_local(s: &ParamSurface, u: f64, v: f64) -> Result<FormQReport> {
    let k_local = s.fundamental_forms(u, v)?.K_ext;
    if !(k_local.is_finite() && k_local > 0.0) {
        return Err(GeomError::Precondition(format!(
            "local extrinsic curvature must be positive, got {k_local} at ({u}, {v})"
        )));
    }
    form_a_impl(s, k_local, u, v, false)
}

/// |det A / det II − (1 + g(ν)‖T‖²)/K_ext| at (u, v): the determinant
/// identity det A = det I · χ(ν) against the closed pair-curvature form,
/// both sides taken from the same evaluation.
#[allow(non_snake_case)]
pub fn pair_curvature_residual(s: &ParamSurface, K: f64, u: f64, v: f64) -> Result<f64> {
    let rep = form_A(s, K, u, v)?;
    let r = s.fundamental_forms(u, v)?;
    let det_a = rep.A11 * rep.A22 - rep.A12 * rep.A12;
    let det_ii = r.II11 * r.II22 - r.II12 * r.II12;
    let g = g_of_nu(r.nu.clamp(-1.0, 1.0), K, s.tag().epsilon() as i32)?;
    Ok((det_a / det_ii - (1.0 + g * r.T_norm_sq) / r.K_ext).abs())
}

fn sweep_impl(
    s: &ParamSurface,
    grid: usize,
    eval: &dyn Fn(f64, f64) -> Result<FormQReport>,
) -> Result<SweepSummary> {
    if grid < 2 {
        return Err(GeomError::Domain(format!(
            "sweep grid must be at least 2, got {grid}"
        )));
    }
    let [u0, u1, v0, v1] = s.domain();
    let mut max_defect = 0.0f64;
    let mut sum = 0.0f64;
    for i in 0..grid {
        let u = u0 + (u1 - u0) * (0.05 + 0.9 * i as f64 / (grid - 1) as f64);
        for j in 0..grid {
            let v = v0 + (v1 - v0) * (0.05 + 0.9 * j as f64 / (grid - 1) as f64);
            let d = eval(u, v)?.defect;
            max_defect = max_defect.max(d);
            sum += d;
        }
    }
    Ok(SweepSummary {
        max_defect,
        mean_defect: sum / (grid * grid) as f64,
        grid,
        pass: max_defect < 1e-6,
    })
}

/// Conformality defect of A against II over an interior grid of the
/// surface's domain, for a prescribed constant K.
#[allow(non_snake_case)]
pub fn conformality_sweep(s: &ParamSurface, K: f64, grid: usize) -> Result<SweepSummary> {
    sweep_impl(s, grid, &|u, v| form_A(s, K, u, v))
}

/// Conformality sweep using the local extrinsic curvature at every grid
/// point; the control-case companion of [`conformality_sweep`].
pub fn conformality_sweep_local(s: &ParamSurface, grid: usize) -> Result<SweepSummary> {
    sweep_impl(s, grid, &|u, v| form_A_local(s, u, v))
}
