//! Vertical height estimates for K-surfaces and the auxiliary functions
//! behind them.
//!
//! For a compact vertical graph of constant extrinsic curvature K > 0 over
//! a base of constant curvature ε ∈ {−1, +1}, the height above the boundary
//! plane is controlled by the constant
//!
//!   c_K = ∫_{−1}^{0} f′(t) dt,   f′(ν) = √(ε(1 − e^{−ε(1−ν²)/K})/(1−ν²)),
//!
//! while a flat base (k = 0) gives the closed bound 1/√K. This module
//! evaluates f′ together with the companion functions g(ν) and χ(ν) through
//! cancellation-free expm1 forms (with Taylor series across the removable
//! singularity at ν = ±1), computes c_K by adaptive quadrature, checks the
//! bound against the actual rotational-sphere heights, and verifies the
//! radial Laplace–Beltrami identities
//!
//!   Δ^{II} h = (2K − κ(1−ν²)) ν / K,   Δ^{II} ν = −2Hν   (κ = −1)
//!
//! on the H²×R sphere, where the second-fundamental-form metric is diagonal
//! in principal arc-length coordinates and the Laplacian reduces to one
//! dimension.
//!
//! Everything here is pure and safe for concurrent use.

use crate::ambient::SpaceTag;
use crate::quad::integrate;
use crate::rotational::{h_of_u, k_of_u, GeneratingCurve};
use crate::{GeomError, Result};
use serde::Serialize;

/// Below this value of s = 1 − ν² the auxiliary functions switch from the
/// direct expm1 forms to 8-term Taylor series in s, keeping relative error
/// under 1e−12 without dividing cancelling differences by s².
const SERIES_SWITCH: f64 = 1e-4;

/// Absolute quadrature tolerance for c_K.
const C_QUAD_TOL: f64 = 1e-10;

/// Finite-difference step (in arc length) for the radial Laplacians.
const LAPLACIAN_STEP: f64 = 1e-3;

/// Geodesic radii at or below this are treated as pole contact and excluded
/// from Laplacian sampling.
const POLE_RADIUS: f64 = 1e-3;

/// Which of the two height bounds applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// Flat base (k = 0): closed bound 1/√K.
    Flat,
    /// Curved base (k = ε): quadrature bound c_K.
    Curved,
}

/// Normalized parameters of a height-estimate problem.
#[derive(Clone, Copy, Debug, Serialize)]
#[allow(non_snake_case)]
pub struct EstimateParams {
    /// Extrinsic curvature of the surface, K > 0.
    pub K: f64,
    /// Normalized base curvature sign (±1); ignored on the flat branch.
    pub epsilon: i32,
    /// Flat or curved base.
    pub branch: Branch,
}

impl EstimateParams {
    /// Validated constructor.
    #[allow(non_snake_case)]
    pub fn new(K: f64, epsilon: i32, branch: Branch) -> Result<Self> {
        if !(K.is_finite() && K > 0.0) {
            return Err(GeomError::Domain(format!(
                "curvature K must be positive and finite, got {K}"
            )));
        }
        if epsilon != 1 && epsilon != -1 {
            return Err(GeomError::Domain(format!(
                "epsilon must be ±1, got {epsilon}"
            )));
        }
        Ok(EstimateParams {
            K,
            epsilon,
            branch,
        })
    }

    /// The vertical height bound for these parameters: 1/√K on the flat
    /// branch, c_K by quadrature on the curved branch.
    pub fn height_bound(&self) -> Result<f64> {
        match self.branch {
            Branch::Flat => Ok(1.0 / self.K.sqrt()),
            Branch::Curved => c_k(self.K, self.epsilon),
        }
    }
}

/// Reduce a height-estimate problem with arbitrary base curvature k to the
/// normalized one handled by this module.
///
/// Scaling the base metric by |k| turns a K-surface over a base of constant
/// curvature k ≠ 0 into a (K/|k|)-surface over a base of curvature sign(k),
/// while vertical lengths scale by 1/√|k|. The returned pair is the
/// normalized parameter set together with that height scale: a bound b for
/// the normalized problem is the bound scale·b for the original one. k = 0
/// needs no rescaling and maps to the flat branch with unit scale.
#[allow(non_snake_case)]
pub fn rescale(K: f64, k: f64) -> Result<(EstimateParams, f64)> {
    if !(K.is_finite() && K > 0.0) {
        return Err(GeomError::Domain(format!(
            "curvature K must be positive and finite, got {K}"
        )));
    }
    if !k.is_finite() {
        return Err(GeomError::Domain(format!(
            "base curvature must be finite, got {k}"
        )));
    }
    if k == 0.0 {
        return Ok((EstimateParams::new(K, -1, Branch::Flat)?, 1.0));
    }
    let eps = if k > 0.0 { 1 } else { -1 };
    Ok((
        EstimateParams::new(K / k.abs(), eps, Branch::Curved)?,
        1.0 / k.abs().sqrt(),
    ))
}

/// Validate (ν, K, ε) and return (s, εf) with s = 1 − ν² in product form.
fn check_nu(nu: f64, big_k: f64, epsilon: i32) -> Result<(f64, f64)> {
    if !(big_k.is_finite() && big_k > 0.0) {
        return Err(GeomError::Domain(format!(
            "curvature K must be positive and finite, got {big_k}"
        )));
    }
    if epsilon != 1 && epsilon != -1 {
        return Err(GeomError::Domain(format!(
            "epsilon must be ±1, got {epsilon}"
        )));
    }
    if !(nu.is_finite() && nu.abs() <= 1.0) {
        return Err(GeomError::Domain(format!(
            "angle function value {nu} is outside [−1, 1]"
        )));
    }
    Ok(((1.0 - nu) * (1.0 + nu), f64::from(epsilon)))
}

/// g(ν) = (ν² − 1 + εK(e^{ε(1−ν²)/K} − 1)) / (1 − ν²)².
///
/// The numerator cancels to second order at ν = ±1; the expm1 form keeps
/// the direct evaluation exact to roundoff down to s = 1e−4, below which an
/// 8-term series in s takes over. g(±1) = ε/(2K) exactly.
#[allow(non_snake_case)]
pub fn g_of_nu(nu: f64, K: f64, epsilon: i32) -> Result<f64> {
    let (s, eps) = check_nu(nu, K, epsilon)?;
    Ok(if s < SERIES_SWITCH {
        g_series(s, K, eps)
    } else {
        g_direct(s, K, eps)
    })
}

fn g_direct(s: f64, big_k: f64, eps: f64) -> f64 {
    (eps * big_k * f64::exp_m1(eps * s / big_k) - s) / (s * s)
}

/// Σ_{m=0}^{7} ε^{m+1} s^m / (K^{m+1} (m+2)!).
fn g_series(s: f64, big_k: f64, eps: f64) -> f64 {
    let mut term = eps / (2.0 * big_k);
    let mut acc = term;
    for m in 1..8 {
        term *= eps * s / (big_k * (m as f64 + 2.0));
        acc += term;
    }
    acc
}

/// χ(ν) = εK(e^{ε(1−ν²)/K} − 1)/(1 − ν²) = 1 + g(ν)(1 − ν²), with
/// χ(±1) = 1 exactly and χ > 0 throughout.
#[allow(non_snake_case)]
pub fn chi_of_nu(nu: f64, K: f64, epsilon: i32) -> Result<f64> {
    let (s, eps) = check_nu(nu, K, epsilon)?;
    Ok(if s < SERIES_SWITCH {
        chi_series(s, K, eps)
    } else {
        chi_direct(s, K, eps)
    })
}

fn chi_direct(s: f64, big_k: f64, eps: f64) -> f64 {
    eps * big_k * f64::exp_m1(eps * s / big_k) / s
}

/// Σ_{m=0}^{7} (εs/K)^m / (m+1)!.
fn chi_series(s: f64, big_k: f64, eps: f64) -> f64 {
    let mut term = 1.0;
    let mut acc = term;
    for m in 1..8 {
        term *= eps * s / (big_k * (m as f64 + 1.0));
        acc += term;
    }
    acc
}

/// f′(ν) = √(ε(1 − e^{−ε(1−ν²)/K})/(1 − ν²)), the nonnegative integrand of
/// c_K, with removable-singularity value 1/√K at ν = ±1.
#[allow(non_snake_case)]
pub fn f_prime(nu: f64, K: f64, epsilon: i32) -> Result<f64> {
    let (s, eps) = check_nu(nu, K, epsilon)?;
    Ok(f_prime_from_s(s, K, eps))
}

fn f_prime_from_s(s: f64, big_k: f64, eps: f64) -> f64 {
    let squared = if s < SERIES_SWITCH {
        // (1/K) Σ_{m=0}^{7} (−εs/K)^m / (m+1)!.
        let mut term = 1.0 / big_k;
        let mut acc = term;
        for m in 1..8 {
            term *= -eps * s / (big_k * (m as f64 + 1.0));
            acc += term;
        }
        acc
    } else {
        -eps * f64::exp_m1(-eps * s / big_k) / s
    };
    squared.sqrt()
}

/// c_K = ∫_{−1}^{0} f′(t) dt by adaptive quadrature to absolute tolerance
/// 1e−10.
#[allow(non_snake_case)]
pub fn c_k(K: f64, epsilon: i32) -> Result<f64> {
    let (_, eps) = check_nu(0.0, K, epsilon)?;
    integrate(
        move |t: f64| f_prime_from_s((1.0 - t) * (1.0 + t), K, eps),
        -1.0,
        0.0,
        C_QUAD_TOL,
    )
}

/// CSV table of c_K over a curvature grid: header `K,epsilon,c_K`, one row
/// per K, and a trailing comment recording whether the column is monotone
/// decreasing in K.
pub fn ck_table_csv(ks: &[f64], epsilon: i32) -> Result<String> {
    let mut out = String::from("K,epsilon,c_K\n");
    let mut prev: Option<f64> = None;
    let mut monotone = true;
    for &big_k in ks {
        let c = c_k(big_k, epsilon)?;
        if let Some(p) = prev {
            monotone &= c < p;
        }
        prev = Some(c);
        out.push_str(&format!("{big_k:.16e},{epsilon},{c:.16e}\n"));
    }
    out.push_str(&format!("# monotone_decreasing: {monotone}\n"));
    Ok(out)
}

/// Outcome of checking the height bound against an actual H²×R rotational
/// K-sphere.
#[derive(Clone, Copy, Debug, Serialize)]
#[allow(non_snake_case)]
pub struct HeightReport {
    /// Extrinsic curvature of the sphere.
    pub K: f64,
    /// The bound c_K for ε = −1.
    pub c_K: f64,
    /// Height of the upper half of the sphere (top pole above the equator).
    pub half_height: f64,
    /// Total pole-to-pole height.
    pub full_height: f64,
    /// c_K − half_height; the estimate is strict, so this must be > 0.
    pub slack_half: f64,
    /// 2c_K − full_height.
    pub slack_full: f64,
    /// Both slacks strictly positive.
    pub pass: bool,
}

/// Check the vertical height estimate on the H²×R rotational K-sphere: the
/// half-height h(−1) − h(0) must stay strictly below c_K and the full
/// height strictly below 2c_K, both sides evaluated by quadrature.
#[allow(non_snake_case)]
pub fn verify_sphere_height(K: f64) -> Result<HeightReport> {
    let c = c_k(K, -1)?;
    let tag = SpaceTag::H2R;
    let h_top = h_of_u(-1.0, K, 0.0, tag)?;
    let h_mid = h_of_u(0.0, K, 0.0, tag)?;
    let h_bot = h_of_u(1.0, K, 0.0, tag)?;
    let half_height = h_top - h_mid;
    let full_height = h_top - h_bot;
    let slack_half = c - half_height;
    let slack_full = 2.0 * c - full_height;
    Ok(HeightReport {
        K,
        c_K: c,
        half_height,
        full_height,
        slack_half,
        slack_full,
        pass: slack_half > 0.0 && slack_full > 0.0,
    })
}

/// Outcome of the radial Laplacian checks on the H²×R rotational K-sphere.
#[derive(Clone, Copy, Debug, Serialize)]
#[allow(non_snake_case)]
pub struct RadialLaplacianReport {
    /// Extrinsic curvature of the sphere.
    pub K: f64,
    /// Interior samples evaluated.
    pub samples: usize,
    /// Samples skipped for pole contact (radius ≤ 1e−3).
    pub excluded: usize,
    /// max |Δ^{II}h − (2K + (1−ν²))ν/K| over the samples.
    pub max_residual_h: f64,
    /// max |Δ^{II}ν + 2Hν| over the samples.
    pub max_residual_nu: f64,
    /// |Δ^{II}ν| at the equator, where the right-hand side vanishes.
    pub equator_residual: f64,
    /// Arc-length finite-difference step used.
    pub step: f64,
    /// Residuals below 1e−3 (equator below 1e−6).
    pub pass: bool,
}

/// Arc-length profile data at parameter u: radius k and the exact
/// derivatives k′ = u, h′ = √(1−u²), k″ = −K tanh k of the unit-speed
/// generating curve, from which λ₁ = k′h″ − k″h′ and λ₂ = h′ coth k.
#[allow(non_snake_case)]
fn profile_at(u: f64, K: f64) -> Result<(f64, f64, f64)> {
    let k = k_of_u(u, K, SpaceTag::H2R)?;
    let s = (1.0 - u) * (1.0 + u);
    let hp = s.sqrt();
    let th = k.tanh();
    let lambda1 = u * (u * K * th / hp) + K * th * hp;
    let lambda2 = hp / th;
    Ok((k, lambda1, lambda2))
}

/// One fourth-order Runge–Kutta step of du/dt = −K tanh k(u) along the
/// arc-length parameter.
#[allow(non_snake_case)]
fn rk4_step(u: f64, dt: f64, K: f64) -> Result<f64> {
    let f = |x: f64| -> Result<f64> { Ok(-K * k_of_u(x, K, SpaceTag::H2R)?.tanh()) };
    let k1 = f(u)?;
    let k2 = f(u + 0.5 * dt * k1)?;
    let k3 = f(u + 0.5 * dt * k2)?;
    let k4 = f(u + dt * k3)?;
    Ok(u + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
}

/// Verify the radial Laplace–Beltrami identities on the H²×R rotational
/// K-sphere at `samples` arc-length stations spanning the middle 80% of the
/// generating curve.
///
/// In principal arc-length coordinates (t, v) the second fundamental form
/// is the diagonal metric λ₁ dt² + λ₂ sinh²k dv², so for a radial function
/// f the Laplacian collapses to Δ^{II}f = (sinh k · f′/λ₁)′ / sinh k (the
/// constant √(λ₁λ₂/K) = 1 cancels). The outer derivative is a central
/// difference at step `LAPLACIAN_STEP`; the inner data (f′, λ₁, sinh k) are
/// closed forms of u, transported to the stencil stations by single RK4
/// steps of du/dt = −K tanh k.
#[allow(non_snake_case)]
pub fn radial_laplacians(K: f64, samples: usize) -> Result<RadialLaplacianReport> {
    if samples < 2 {
        return Err(GeomError::Domain(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    let curve = GeneratingCurve::build(K, 0.0, SpaceTag::H2R, 32)?;
    let total = curve.total_arclen()?;
    let h = LAPLACIAN_STEP;

    // Δ^{II}f at the station with profile parameter u, for f described by
    // its exact arc-length derivative f′(u).
    let laplacian = |u0: f64, fp: &dyn Fn(f64, f64) -> f64| -> Result<f64> {
        let g_of = |u: f64| -> Result<f64> {
            let (k, lambda1, _) = profile_at(u, K)?;
            Ok(k.sinh() * fp(u, k) / lambda1)
        };
        let u_plus = rk4_step(u0, h, K)?;
        let u_minus = rk4_step(u0, -h, K)?;
        let k0 = k_of_u(u0, K, SpaceTag::H2R)?;
        Ok((g_of(u_plus)? - g_of(u_minus)?) / (2.0 * h * k0.sinh()))
    };
    let hp = |u: f64, _k: f64| ((1.0 - u) * (1.0 + u)).sqrt();
    let nup = |_u: f64, k: f64| -K * k.tanh();

    let mut max_residual_h = 0.0f64;
    let mut max_residual_nu = 0.0f64;
    let mut excluded = 0usize;
    let mut evaluated = 0usize;
    for i in 0..samples {
        let t = total * (0.1 + 0.8 * i as f64 / (samples - 1) as f64);
        let u = curve.u_of_arclen(t)?;
        let (k, lambda1, lambda2) = profile_at(u, K)?;
        if k <= POLE_RADIUS {
            excluded += 1;
            continue;
        }
        evaluated += 1;
        let s = (1.0 - u) * (1.0 + u);
        let rhs_h = (2.0 * K + s) * u / K;
        let rhs_nu = -(lambda1 + lambda2) * u;
        max_residual_h = max_residual_h.max((laplacian(u, &hp)? - rhs_h).abs());
        max_residual_nu = max_residual_nu.max((laplacian(u, &nup)? - rhs_nu).abs());
    }

    // At the equator u = 0 the right-hand side −2Hν vanishes.
    let equator_residual = laplacian(0.0, &nup)?.abs();

    Ok(RadialLaplacianReport {
        K,
        samples: evaluated,
        excluded,
        max_residual_h,
        max_residual_nu,
        equator_residual,
        step: h,
        pass: max_residual_h < 1e-3 && max_residual_nu < 1e-3 && equator_residual < 1e-6,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const G_NU0_K1_HYP: f64 = -0.36787944117144232;
    const G_NU0_K1_SPH: f64 = 0.71828182845904524;
    const G_NUHALF_K1_HYP: f64 = -0.39531831598402615;
    const CHI_NU0_K1_HYP: f64 = 0.63212055882855768;
    const CHI_NU0_K1_SPH: f64 = 1.7182818284590452;
    const CHI_NUHALF_K1_HYP: f64 = 0.70351126301198039;
    const FPRIME_NU0_K1_HYP: f64 = 1.3108324944320862;
    const FPRIME_NU0_K1_SPH: f64 = 0.79506009762065011;
    const FPRIME_NUHALF_K1_HYP: f64 = 1.2203824627892545;
    const C_BOUND_HYP_K01: f64 = 62.677889751389016;
    const C_BOUND_HYP_K05: f64 = 2.0924711469394414;
    const C_BOUND_HYP_K1: f64 = 1.1983933613115832;
    const C_BOUND_HYP_K2: f64 = 0.77127449691180172;
    const C_BOUND_HYP_K10: f64 = 0.32158721031595015;
    const C_BOUND_SPH_K1: f64 = 0.85786276789572459;
    const HALF_HEIGHT_H2R_K1: f64 = 1.1710111858681906;
    const HALF_HEIGHT_H2R_K01: f64 = 7.9811201964604853;
    const HALF_HEIGHT_H2R_K10: f64 = 0.32151541933684496;

    #[test]
    fn g_matches_reference_values() {
        assert_eq!(g_of_nu(1.0, 1.0, -1).unwrap(), -0.5);
        assert_eq!(g_of_nu(-1.0, 1.0, -1).unwrap(), -0.5);
        assert_eq!(g_of_nu(1.0, 2.0, 1).unwrap(), 0.25);
        assert_abs_diff_eq!(g_of_nu(0.0, 1.0, -1).unwrap(), G_NU0_K1_HYP, epsilon = 1e-15);
        assert_abs_diff_eq!(g_of_nu(0.0, 1.0, 1).unwrap(), G_NU0_K1_SPH, epsilon = 1e-15);
        assert_abs_diff_eq!(
            g_of_nu(0.5, 1.0, -1).unwrap(),
            G_NUHALF_K1_HYP,
            epsilon = 1e-15
        );
    }

    #[test]
    fn g_is_pinched_between_its_endpoint_and_center_values() {
        for &big_k in &[0.5, 1.0, 2.0] {
            let lo = 1.0 / (2.0 * big_k);
            let hi = g_of_nu(0.0, big_k, 1).unwrap();
            for i in 0..=100 {
                let nu = -1.0 + 2.0 * i as f64 / 100.0;
                let g = g_of_nu(nu, big_k, 1).unwrap();
                assert!(
                    (lo - 1e-14..=hi + 1e-14).contains(&g),
                    "g({nu}) = {g} escapes [{lo}, {hi}] at K = {big_k}"
                );
            }
        }
    }

    #[test]
    fn chi_matches_reference_values_and_stays_positive() {
        assert_eq!(chi_of_nu(1.0, 1.0, -1).unwrap(), 1.0);
        assert_eq!(chi_of_nu(-1.0, 1.0, 1).unwrap(), 1.0);
        assert_abs_diff_eq!(
            chi_of_nu(0.0, 1.0, -1).unwrap(),
            CHI_NU0_K1_HYP,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            chi_of_nu(0.0, 1.0, 1).unwrap(),
            CHI_NU0_K1_SPH,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            chi_of_nu(0.5, 1.0, -1).unwrap(),
            CHI_NUHALF_K1_HYP,
            epsilon = 1e-15
        );
        for &eps in &[-1, 1] {
            for &big_k in &[0.1, 1.0, 10.0] {
                for i in 0..=100 {
                    let nu = -1.0 + 2.0 * i as f64 / 100.0;
                    assert!(chi_of_nu(nu, big_k, eps).unwrap() > 0.0);
                }
            }
        }
    }

    #[test]
    fn chi_equals_one_plus_g_times_t_norm_squared() {
        for &eps in &[-1, 1] {
            for i in 0..=199 {
                let nu = -1.0 + 2.0 * i as f64 / 199.0;
                let s = (1.0 - nu) * (1.0 + nu);
                let lhs = chi_of_nu(nu, 0.7, eps).unwrap();
                let rhs = 1.0 + g_of_nu(nu, 0.7, eps).unwrap() * s;
                assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn f_prime_matches_reference_values_and_pole_limit() {
        assert_eq!(f_prime(1.0, 1.0, -1).unwrap(), 1.0);
        assert_eq!(f_prime(-1.0, 4.0, 1).unwrap(), 0.5);
        assert_abs_diff_eq!(
            f_prime(0.0, 1.0, -1).unwrap(),
            FPRIME_NU0_K1_HYP,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            f_prime(0.0, 1.0, 1).unwrap(),
            FPRIME_NU0_K1_SPH,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            f_prime(0.5, 1.0, -1).unwrap(),
            FPRIME_NUHALF_K1_HYP,
            epsilon = 1e-15
        );
        for i in 0..=50 {
            let nu = -1.0 + 2.0 * i as f64 / 50.0;
            assert!(f_prime(nu, 0.3, -1).unwrap() >= 0.0);
            assert!(f_prime(nu, 0.3, 1).unwrap() >= 0.0);
        }
    }

    #[test]
    fn auxiliary_functions_are_even_in_nu() {
        for i in 0..=40 {
            let nu = i as f64 / 40.0;
            for &eps in &[-1, 1] {
                assert_abs_diff_eq!(
                    g_of_nu(nu, 1.3, eps).unwrap(),
                    g_of_nu(-nu, 1.3, eps).unwrap(),
                    epsilon = 1e-12
                );
                assert_abs_diff_eq!(
                    chi_of_nu(nu, 1.3, eps).unwrap(),
                    chi_of_nu(-nu, 1.3, eps).unwrap(),
                    epsilon = 1e-12
                );
                assert_abs_diff_eq!(
                    f_prime(nu, 1.3, eps).unwrap(),
                    f_prime(-nu, 1.3, eps).unwrap(),
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn series_and_direct_evaluations_agree_on_the_overlap_window() {
        // Log-spaced s across 1e−6 < s < 1e−2, straddling the switchover.
        for i in 0..=40 {
            let s = 1e-6 * 10f64.powf(4.0 * i as f64 / 40.0);
            for &eps in &[-1.0, 1.0] {
                for &big_k in &[0.5, 1.0, 3.0] {
                    assert_abs_diff_eq!(
                        g_series(s, big_k, eps),
                        g_direct(s, big_k, eps),
                        epsilon = 1e-9
                    );
                    assert_abs_diff_eq!(
                        chi_series(s, big_k, eps),
                        chi_direct(s, big_k, eps),
                        epsilon = 1e-9
                    );
                }
            }
        }
    }

    #[test]
    fn g_satisfies_its_defining_ode() {
        // (ν/K)((2K + ε(ν²−1))g − ε) = ((1−ν²)/2) g′(ν), g′ by central
        // differences.
        let h = 1e-5;
        for &eps in &[-1, 1] {
            for &big_k in &[0.5, 1.0, 2.0] {
                for i in 0..=38 {
                    let nu = -0.95 + 1.9 * i as f64 / 38.0;
                    let g = g_of_nu(nu, big_k, eps).unwrap();
                    let gp = (g_of_nu(nu + h, big_k, eps).unwrap()
                        - g_of_nu(nu - h, big_k, eps).unwrap())
                        / (2.0 * h);
                    let lhs = (nu / big_k)
                        * ((2.0 * big_k + f64::from(eps) * (nu * nu - 1.0)) * g - f64::from(eps));
                    let rhs = ((1.0 - nu) * (1.0 + nu) / 2.0) * gp;
                    assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-6);
                }
            }
        }
    }

    #[test]
    fn c_k_matches_reference_values() {
        assert_abs_diff_eq!(c_k(0.1, -1).unwrap(), C_BOUND_HYP_K01, epsilon = 1e-8);
        assert_abs_diff_eq!(c_k(0.5, -1).unwrap(), C_BOUND_HYP_K05, epsilon = 1e-9);
        assert_abs_diff_eq!(c_k(1.0, -1).unwrap(), C_BOUND_HYP_K1, epsilon = 1e-9);
        assert_abs_diff_eq!(c_k(2.0, -1).unwrap(), C_BOUND_HYP_K2, epsilon = 1e-9);
        assert_abs_diff_eq!(c_k(10.0, -1).unwrap(), C_BOUND_HYP_K10, epsilon = 1e-9);
        assert_abs_diff_eq!(c_k(1.0, 1).unwrap(), C_BOUND_SPH_K1, epsilon = 1e-9);
        // f′ ranges over [1, √(e−1)] for K = 1, ε = −1, so c_K sits between
        // the endpoint values of the unit-length integration interval.
        let c = c_k(1.0, -1).unwrap();
        assert!(c >= 1.0 && c <= FPRIME_NU0_K1_HYP);
    }

    #[test]
    fn c_k_is_monotone_decreasing_in_curvature() {
        let ks = [0.1, 0.5, 1.0, 2.0, 10.0];
        let cs: Vec<f64> = ks.iter().map(|&k| c_k(k, -1).unwrap()).collect();
        for w in cs.windows(2) {
            assert!(w[1] < w[0], "c_K not decreasing: {cs:?}");
        }
    }

    #[test]
    fn ck_table_csv_has_header_rows_and_monotone_comment() {
        let csv = ck_table_csv(&[0.5, 1.0, 2.0], -1).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "K,epsilon,c_K");
        assert!(lines[1].starts_with("5.0000000000000000e-1,-1,"));
        assert_eq!(lines[4], "# monotone_decreasing: true");
    }

    #[test]
    fn flat_branch_gives_the_closed_bound() {
        let p = EstimateParams::new(4.0, -1, Branch::Flat).unwrap();
        assert_eq!(p.height_bound().unwrap(), 0.5);
        let c = EstimateParams::new(1.0, -1, Branch::Curved).unwrap();
        assert_abs_diff_eq!(c.height_bound().unwrap(), C_BOUND_HYP_K1, epsilon = 1e-9);
        assert!(EstimateParams::new(0.0, -1, Branch::Flat).is_err());
        assert!(EstimateParams::new(1.0, 0, Branch::Flat).is_err());
        assert!(matches!(
            g_of_nu(1.5, 1.0, -1),
            Err(GeomError::Domain(_))
        ));
    }

    #[test]
    fn rescaling_normalizes_the_base_curvature() {
        let (p, scale) = rescale(2.0, -4.0).unwrap();
        assert_eq!((p.K, p.epsilon, p.branch), (0.5, -1, Branch::Curved));
        assert_eq!(scale, 0.5);
        let (p, scale) = rescale(3.0, 2.0).unwrap();
        assert_eq!((p.K, p.epsilon, p.branch), (1.5, 1, Branch::Curved));
        assert_abs_diff_eq!(scale, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        let (p, scale) = rescale(3.0, 0.0).unwrap();
        assert_eq!((p.branch, scale), (Branch::Flat, 1.0));
        // The composed bound is scale-consistent: the k = −1 problem at
        // curvature K is the k = −4 problem at curvature 4K, halved.
        let direct = c_k(0.5, -1).unwrap();
        let (pp, sc) = rescale(2.0, -4.0).unwrap();
        assert_abs_diff_eq!(sc * pp.height_bound().unwrap(), 0.5 * direct, epsilon = 1e-12);
    }

    #[test]
    fn sphere_heights_stay_strictly_below_the_bound() {
        for &(big_k, half, c_ref) in &[
            (0.1, HALF_HEIGHT_H2R_K01, C_BOUND_HYP_K01),
            (1.0, HALF_HEIGHT_H2R_K1, C_BOUND_HYP_K1),
            (10.0, HALF_HEIGHT_H2R_K10, C_BOUND_HYP_K10),
        ] {
            let r = verify_sphere_height(big_k).unwrap();
            assert!(r.pass, "height estimate violated at K = {big_k}: {r:?}");
            assert!(r.slack_half > 0.0 && r.slack_full > 0.0);
            assert_abs_diff_eq!(r.half_height, half, epsilon = 1e-9);
            assert_abs_diff_eq!(r.c_K, c_ref, epsilon = 1e-8);
            assert_abs_diff_eq!(r.slack_half, c_ref - half, epsilon = 1e-8);
            assert_abs_diff_eq!(r.full_height, 2.0 * half, epsilon = 1e-9);
        }
    }

    #[test]
    fn radial_laplacians_match_their_closed_forms() {
        for &big_k in &[0.5, 1.0] {
            let r = radial_laplacians(big_k, 20).unwrap();
            assert!(r.pass, "Laplacian identities failed at K = {big_k}: {r:?}");
            assert_eq!((r.samples, r.excluded), (20, 0));
            assert!(r.max_residual_h < 1e-3);
            assert!(r.max_residual_nu < 1e-3);
            assert!(r.equator_residual < 1e-6);
        }
    }
}
