//! Parametrized surfaces in M²(ε)×R and their curvature data.
//!
//! A [`ParamSurface`] couples a chart (u,v) ↦ ambient coordinates with an
//! optional exact derivative provider; everything the engine derives — first
//! and second fundamental forms, the unit normal, the angle function ν, mean,
//! extrinsic and intrinsic curvature, principal curvatures — is packaged per
//! point into a [`CurvatureReport`].
//!
//! The intrinsic curvature is always computed from the metric alone by the
//! Brioschi formula on a local finite-difference stencil, so the Gauss
//! equation K_int = K_ext + ε·ν² acts as a genuine cross-validation between
//! two independent pipelines rather than an identity of one formula with
//! itself.

use crate::ambient::{ambient_dot, check_quadric, SpaceTag};
use crate::{GeomError, Result};
use serde::Serialize;
use std::sync::OnceLock;

type ChartFn = dyn Fn(f64, f64) -> [f64; 4] + Send + Sync;
type FirstFn = dyn Fn(f64, f64) -> ([f64; 4], [f64; 4]) + Send + Sync;
type SecondFn = dyn Fn(f64, f64) -> ([f64; 4], [f64; 4], [f64; 4]) + Send + Sync;

/// Default central-difference step for first derivatives of the chart.
pub const DEFAULT_STEP_FIRST: f64 = 1e-4;
/// Default step for second derivatives and for the Brioschi metric stencil.
pub const DEFAULT_STEP_SECOND: f64 = 1e-3;

/// A parametrized surface patch in H²×R or S²×R.
///
/// The chart maps a rectangle [u₀,u₁]×[v₀,v₁] into ambient 4-coordinates.
/// Derivatives come from the exact providers when attached, from central
/// differences of the chart otherwise; the steps are caller-overridable.
pub struct ParamSurface {
    tag: SpaceTag,
    domain: [f64; 4],
    chart: Box<ChartFn>,
    exact_first: Option<Box<FirstFn>>,
    exact_second: Option<Box<SecondFn>>,
    step_first: f64,
    step_second: f64,
    step_gauss: f64,
    v_periodic: bool,
    preferred_res: (usize, usize),
    orientation: OnceLock<f64>,
}

/// Per-point curvature data of a surface.
///
/// Serializes to a flat JSON object whose keys are exactly the field names.
#[derive(Clone, Copy, Debug, Serialize)]
#[allow(non_snake_case)]
pub struct CurvatureReport {
    /// First fundamental form coefficient ⟨ψ_u, ψ_u⟩.
    pub I11: f64,
    /// First fundamental form coefficient ⟨ψ_u, ψ_v⟩.
    pub I12: f64,
    /// First fundamental form coefficient ⟨ψ_v, ψ_v⟩.
    pub I22: f64,
    /// Second fundamental form coefficient ⟨ψ_uu, N⟩.
    pub II11: f64,
    /// Second fundamental form coefficient ⟨ψ_uv, N⟩.
    pub II12: f64,
    /// Second fundamental form coefficient ⟨ψ_vv, N⟩.
    pub II22: f64,
    /// Unit normal in ambient coordinates.
    pub N: [f64; 4],
    /// Angle function ν = ⟨N, ∂t⟩.
    pub nu: f64,
    /// Squared norm of the tangential part of ∂t, computed through I.
    pub T_norm_sq: f64,
    /// Mean curvature.
    pub H: f64,
    /// Extrinsic curvature det II / det I.
    pub K_ext: f64,
    /// Intrinsic (sectional) curvature from the Brioschi formula.
    pub K_int: f64,
    /// Larger principal curvature.
    pub lambda1: f64,
    /// Smaller principal curvature.
    pub lambda2: f64,
}

/// Unoriented per-point data shared by the public evaluators.
struct RawForms {
    psi_u: [f64; 4],
    psi_v: [f64; 4],
    i11: f64,
    i12: f64,
    i22: f64,
    det_i: f64,
    /// Unit normal before the orientation sign is applied.
    n: [f64; 4],
    ii11: f64,
    ii12: f64,
    ii22: f64,
}

impl ParamSurface {
    /// Create a surface from a chart alone; derivatives will be numeric.
    pub fn new(
        tag: SpaceTag,
        domain: [f64; 4],
        chart: impl Fn(f64, f64) -> [f64; 4] + Send + Sync + 'static,
    ) -> Self {
        ParamSurface {
            tag,
            domain,
            chart: Box::new(chart),
            exact_first: None,
            exact_second: None,
            step_first: DEFAULT_STEP_FIRST,
            step_second: DEFAULT_STEP_SECOND,
            step_gauss: DEFAULT_STEP_SECOND,
            v_periodic: false,
            preferred_res: (48, 48),
            orientation: OnceLock::new(),
        }
    }

    /// Attach an exact first-derivative provider (ψ_u, ψ_v).
    pub fn with_exact_first(
        mut self,
        f: impl Fn(f64, f64) -> ([f64; 4], [f64; 4]) + Send + Sync + 'static,
    ) -> Self {
        self.exact_first = Some(Box::new(f));
        self
    }

    /// Attach an exact second-derivative provider (ψ_uu, ψ_uv, ψ_vv).
    pub fn with_exact_second(
        mut self,
        f: impl Fn(f64, f64) -> ([f64; 4], [f64; 4], [f64; 4]) + Send + Sync + 'static,
    ) -> Self {
        self.exact_second = Some(Box::new(f));
        self
    }

    /// Override the finite-difference steps for first and second
    /// derivatives. The Brioschi stencil keeps its own step
    /// ([`Self::with_gauss_step`]): its noise grows like 1/h², so charts
    /// that want tiny second-derivative steps must not drag it along.
    pub fn with_steps(mut self, step_first: f64, step_second: f64) -> Self {
        self.step_first = step_first;
        self.step_second = step_second;
        self
    }

    /// Override the Brioschi (intrinsic-curvature) stencil step.
    pub fn with_gauss_step(mut self, step: f64) -> Self {
        self.step_gauss = step;
        self
    }

    /// Declare the v coordinate periodic, exempting it from stencil-margin
    /// domain checks (the chart must accept any real v).
    pub fn with_v_periodic(mut self, periodic: bool) -> Self {
        self.v_periodic = periodic;
        self
    }

    /// Suggest a sampling resolution for mesh export and sweeps.
    pub fn with_preferred_res(mut self, nu: usize, nv: usize) -> Self {
        self.preferred_res = (nu, nv);
        self
    }

    /// Ambient space of the surface.
    pub fn tag(&self) -> SpaceTag {
        self.tag
    }

    /// Parameter rectangle [u₀, u₁, v₀, v₁].
    pub fn domain(&self) -> [f64; 4] {
        self.domain
    }

    /// Suggested (n_u, n_v) sampling resolution.
    pub fn preferred_res(&self) -> (usize, usize) {
        self.preferred_res
    }

    /// Finite-difference step used for first derivatives.
    pub fn step_first(&self) -> f64 {
        self.step_first
    }

    /// Finite-difference step used for second derivatives.
    pub fn step_second(&self) -> f64 {
        self.step_second
    }

    /// Finite-difference step used by the Brioschi stencil.
    pub fn step_gauss(&self) -> f64 {
        self.step_gauss
    }

    /// Whether the chart is periodic in v.
    pub fn v_periodic(&self) -> bool {
        self.v_periodic
    }

    fn check_in_domain(&self, u: f64, v: f64, margin_u: f64, margin_v: f64) -> Result<()> {
        let [u0, u1, v0, v1] = self.domain;
        let su = 1e-12 * (u1 - u0).abs().max(1.0);
        let sv = 1e-12 * (v1 - v0).abs().max(1.0);
        let ok_u = u.is_finite() && u - margin_u >= u0 - su && u + margin_u <= u1 + su;
        let ok_v = self.v_periodic
            || (v.is_finite() && v - margin_v >= v0 - sv && v + margin_v <= v1 + sv);
        if ok_u && ok_v {
            Ok(())
        } else {
            Err(GeomError::Domain(format!(
                "(u, v) = ({u}, {v}) with stencil margin ({margin_u}, {margin_v}) \
                 leaves the domain [{u0}, {u1}]x[{v0}, {v1}]"
            )))
        }
    }

    /// Margin a first-derivative evaluation needs around (u, v).
    fn margin_first(&self) -> f64 {
        if self.exact_first.is_some() {
            0.0
        } else {
            self.step_first
        }
    }

    /// Margin a second-derivative evaluation needs around (u, v).
    fn margin_second(&self, step_override: Option<f64>) -> f64 {
        if self.exact_second.is_some() && step_override.is_none() {
            0.0
        } else {
            step_override.unwrap_or(self.step_second)
        }
    }

    /// Chart position at (u, v).
    pub fn position(&self, u: f64, v: f64) -> Result<[f64; 4]> {
        self.check_in_domain(u, v, 0.0, 0.0)?;
        Ok((self.chart)(u, v))
    }

    /// First derivatives (ψ_u, ψ_v), exact when a provider is attached.
    pub fn first_derivatives(&self, u: f64, v: f64) -> Result<([f64; 4], [f64; 4])> {
        let m = self.margin_first();
        self.check_in_domain(u, v, m, m)?;
        Ok(self.first_unchecked(u, v))
    }

    fn first_unchecked(&self, u: f64, v: f64) -> ([f64; 4], [f64; 4]) {
        if let Some(f) = &self.exact_first {
            return f(u, v);
        }
        let h = self.step_first;
        let up = (self.chart)(u + h, v);
        let um = (self.chart)(u - h, v);
        let vp = (self.chart)(u, v + h);
        let vm = (self.chart)(u, v - h);
        let mut du = [0.0; 4];
        let mut dv = [0.0; 4];
        for i in 0..4 {
            du[i] = (up[i] - um[i]) / (2.0 * h);
            dv[i] = (vp[i] - vm[i]) / (2.0 * h);
        }
        (du, dv)
    }

    /// Second derivatives (ψ_uu, ψ_uv, ψ_vv).
    ///
    /// Priority: exact provider; central differences of exact first
    /// derivatives; second differences of the chart. `step_override` forces
    /// the numeric path with the given step even when exact seconds exist,
    /// which is how independent cross-checks are produced.
    pub fn second_derivatives(
        &self,
        u: f64,
        v: f64,
        step_override: Option<f64>,
    ) -> Result<([f64; 4], [f64; 4], [f64; 4])> {
        let m = self.margin_second(step_override);
        self.check_in_domain(u, v, m, m)?;
        Ok(self.second_unchecked(u, v, step_override))
    }

    fn second_unchecked(
        &self,
        u: f64,
        v: f64,
        step_override: Option<f64>,
    ) -> ([f64; 4], [f64; 4], [f64; 4]) {
        if step_override.is_none() {
            if let Some(f) = &self.exact_second {
                return f(u, v);
            }
        }
        let h = step_override.unwrap_or(self.step_second);
        if step_override.is_none() && self.exact_first.is_some() {
            // Differentiate the exact first derivatives.
            let (fu_p, _) = self.first_unchecked(u + h, v);
            let (fu_m, _) = self.first_unchecked(u - h, v);
            let (fu_vp, fv_p) = self.first_unchecked(u, v + h);
            let (fu_vm, fv_m) = self.first_unchecked(u, v - h);
            let mut uu = [0.0; 4];
            let mut uv = [0.0; 4];
            let mut vv = [0.0; 4];
            for i in 0..4 {
                uu[i] = (fu_p[i] - fu_m[i]) / (2.0 * h);
                uv[i] = (fu_vp[i] - fu_vm[i]) / (2.0 * h);
                vv[i] = (fv_p[i] - fv_m[i]) / (2.0 * h);
            }
            return (uu, uv, vv);
        }
        // Pure chart stencil.
        let c = (self.chart)(u, v);
        let up = (self.chart)(u + h, v);
        let um = (self.chart)(u - h, v);
        let vp = (self.chart)(u, v + h);
        let vm = (self.chart)(u, v - h);
        let pp = (self.chart)(u + h, v + h);
        let pm = (self.chart)(u + h, v - h);
        let mp = (self.chart)(u - h, v + h);
        let mm = (self.chart)(u - h, v - h);
        let mut uu = [0.0; 4];
        let mut uv = [0.0; 4];
        let mut vv = [0.0; 4];
        for i in 0..4 {
            uu[i] = (up[i] - 2.0 * c[i] + um[i]) / (h * h);
            vv[i] = (vp[i] - 2.0 * c[i] + vm[i]) / (h * h);
            uv[i] = (pp[i] - pm[i] - mp[i] + mm[i]) / (4.0 * h * h);
        }
        (uu, uv, vv)
    }

    /// Unoriented forms and normal at (u, v); no domain checks here.
    fn raw_forms(&self, u: f64, v: f64, step_override: Option<f64>) -> Result<RawForms> {
        let pos = (self.chart)(u, v);
        let (psi_u, psi_v) = self.first_unchecked(u, v);
        let i11 = ambient_dot(self.tag, psi_u, psi_u);
        let i12 = ambient_dot(self.tag, psi_u, psi_v);
        let i22 = ambient_dot(self.tag, psi_v, psi_v);
        let det_i = i11 * i22 - i12 * i12;
        if !(det_i > 1e-12) {
            return Err(GeomError::SingularImmersion { u, v, det_i });
        }
        // Normal: Euclidean generalized cross product of the quadric normal
        // and the tangents, pushed through the ambient metric so that it is
        // ambient-orthogonal to all three, then normalized.
        let nq = [pos[0], pos[1], pos[2], 0.0];
        let d = cross4(nq, psi_u, psi_v);
        let e = self.tag.epsilon();
        let n_raw = [e * d[0], d[1], d[2], d[3]];
        let nn = ambient_dot(self.tag, n_raw, n_raw);
        if !(nn > 0.0) {
            return Err(GeomError::SingularImmersion { u, v, det_i });
        }
        let s = nn.sqrt();
        let n = [n_raw[0] / s, n_raw[1] / s, n_raw[2] / s, n_raw[3] / s];
        let (uu, uv, vv) = self.second_unchecked(u, v, step_override);
        Ok(RawForms {
            psi_u,
            psi_v,
            i11,
            i12,
            i22,
            det_i,
            n,
            ii11: ambient_dot(self.tag, uu, n),
            ii12: ambient_dot(self.tag, uv, n),
            ii22: ambient_dot(self.tag, vv, n),
        })
    }

    /// Global normal orientation sign, fixed once per surface.
    ///
    /// Rule: if the raw angle function at the domain center is nonzero,
    /// choose the sign making ν ≤ 0 there; otherwise make II11 > 0 at the
    /// first nondegenerate sample of a 9×9 interior grid; otherwise +1.
    fn orientation_sign(&self) -> f64 {
        *self.orientation.get_or_init(|| {
            let [u0, u1, v0, v1] = self.domain;
            let uc = 0.5 * (u0 + u1);
            let vc = 0.5 * (v0 + v1);
            if let Ok(raw) = self.raw_forms(uc, vc, None) {
                let nu_raw = raw.n[3];
                if nu_raw.abs() > 1e-9 {
                    return if nu_raw > 0.0 { -1.0 } else { 1.0 };
                }
            }
            for i in 0..9 {
                for j in 0..9 {
                    let u = u0 + (u1 - u0) * (0.1 + 0.8 * i as f64 / 8.0);
                    let v = v0 + (v1 - v0) * (0.1 + 0.8 * j as f64 / 8.0);
                    if let Ok(raw) = self.raw_forms(u, v, None) {
                        if raw.det_i > 1e-12 && raw.ii11.abs() > 1e-9 {
                            return raw.ii11.signum();
                        }
                    }
                }
            }
            1.0
        })
    }

    /// Metric coefficients (E, F, G) at (u, v); no domain checks.
    fn metric_unchecked(&self, u: f64, v: f64) -> (f64, f64, f64) {
        let (pu, pv) = self.first_unchecked(u, v);
        (
            ambient_dot(self.tag, pu, pu),
            ambient_dot(self.tag, pu, pv),
            ambient_dot(self.tag, pv, pv),
        )
    }

    /// Intrinsic curvature by the Brioschi formula on a 5×5 metric stencil
    /// of spacing `h`, entirely independent of the second fundamental form.
    fn brioschi_k_int(&self, u: f64, v: f64, h: f64) -> f64 {
        // Sample E, F, G on offsets {−2,−1,0,1,2}·h in both directions.
        let mut e = [[0.0; 5]; 5];
        let mut f = [[0.0; 5]; 5];
        let mut g = [[0.0; 5]; 5];
        for (i, di) in (-2..=2).enumerate() {
            for (j, dj) in (-2..=2).enumerate() {
                let (ee, ff, gg) = self.metric_unchecked(u + di as f64 * h, v + dj as f64 * h);
                e[i][j] = ee;
                f[i][j] = ff;
                g[i][j] = gg;
            }
        }
        // 4th-order stencils: first derivative (1, −8, 8, −1)/(12h) on
        // offsets (−2, −1, 1, 2); second derivative (−1, 16, −30, 16, −1)/(12h²).
        let d1 = |s: &[[f64; 5]; 5], along_u: bool| {
            let pick = |o: usize| if along_u { s[o][2] } else { s[2][o] };
            (pick(0) - 8.0 * pick(1) + 8.0 * pick(3) - pick(4)) / (12.0 * h)
        };
        let d2 = |s: &[[f64; 5]; 5], along_u: bool| {
            let pick = |o: usize| if along_u { s[o][2] } else { s[2][o] };
            (-pick(0) + 16.0 * pick(1) - 30.0 * pick(2) + 16.0 * pick(3) - pick(4))
                / (12.0 * h * h)
        };
        // Cross derivative: tensor product of two first-derivative stencils.
        let c = [1.0, -8.0, 0.0, 8.0, -1.0];
        let mut f_uv = 0.0;
        for (i, ci) in c.iter().enumerate() {
            if *ci == 0.0 {
                continue;
            }
            for (j, cj) in c.iter().enumerate() {
                if *cj == 0.0 {
                    continue;
                }
                f_uv += ci * cj * f[i][j];
            }
        }
        f_uv /= 144.0 * h * h;

        let (ee, ff, gg) = (e[2][2], f[2][2], g[2][2]);
        let e_u = d1(&e, true);
        let e_v = d1(&e, false);
        let g_u = d1(&g, true);
        let g_v = d1(&g, false);
        let f_u = d1(&f, true);
        let f_v = d1(&f, false);
        let e_vv = d2(&e, false);
        let g_uu = d2(&g, true);

        let m1 = [
            [
                -0.5 * e_vv + f_uv - 0.5 * g_uu,
                0.5 * e_u,
                f_u - 0.5 * e_v,
            ],
            [f_v - 0.5 * g_u, ee, ff],
            [0.5 * g_v, ff, gg],
        ];
        let m2 = [
            [0.0, 0.5 * e_v, 0.5 * g_u],
            [0.5 * e_v, ee, ff],
            [0.5 * g_u, ff, gg],
        ];
        let det = ee * gg - ff * ff;
        (det3(&m1) - det3(&m2)) / (det * det)
    }

    /// Full curvature data at an interior point.
    pub fn fundamental_forms(&self, u: f64, v: f64) -> Result<CurvatureReport> {
        self.forms_impl(u, v, None)
    }

    /// Same as [`fundamental_forms`](Self::fundamental_forms) but with the
    /// second fundamental form forced through chart finite differences of
    /// step `step`, bypassing exact providers — an independent cross-check.
    pub fn fundamental_forms_numeric_second(
        &self,
        u: f64,
        v: f64,
        step: f64,
    ) -> Result<CurvatureReport> {
        self.forms_impl(u, v, Some(step))
    }

    fn forms_impl(&self, u: f64, v: f64, step_override: Option<f64>) -> Result<CurvatureReport> {
        // The Brioschi stencil reaches ±2·step_gauss and evaluates first
        // derivatives at each stencil point, so it dominates the margin.
        let mu = (2.0 * self.step_gauss + self.margin_first())
            .max(self.margin_second(step_override));
        self.check_in_domain(u, v, mu, mu)?;

        let raw = self.raw_forms(u, v, step_override)?;
        let sigma = self.orientation_sign();
        let n = [
            sigma * raw.n[0],
            sigma * raw.n[1],
            sigma * raw.n[2],
            sigma * raw.n[3],
        ];
        let (ii11, ii12, ii22) = (sigma * raw.ii11, sigma * raw.ii12, sigma * raw.ii22);
        let nu = n[3];

        // Tangential part of ∂t through the metric: solve I·(α,β) = (r₁,r₂)
        // with r_i = ⟨∂t, ψ_i⟩, then ‖T‖² = (α,β)·(r₁,r₂).
        let r1 = raw.psi_u[3];
        let r2 = raw.psi_v[3];
        let t_norm_sq =
            (raw.i22 * r1 * r1 - 2.0 * raw.i12 * r1 * r2 + raw.i11 * r2 * r2) / raw.det_i;

        let det_ii = ii11 * ii22 - ii12 * ii12;
        let k_ext = det_ii / raw.det_i;
        let h = (raw.i22 * ii11 - 2.0 * raw.i12 * ii12 + raw.i11 * ii22) / (2.0 * raw.det_i);
        let disc = (h * h - k_ext).max(0.0).sqrt();
        let k_int = self.brioschi_k_int(u, v, self.step_gauss);

        Ok(CurvatureReport {
            I11: raw.i11,
            I12: raw.i12,
            I22: raw.i22,
            II11: ii11,
            II12: ii12,
            II22: ii22,
            N: n,
            nu,
            T_norm_sq: t_norm_sq,
            H: h,
            K_ext: k_ext,
            K_int: k_int,
            lambda1: h + disc,
            lambda2: h - disc,
        })
    }

    /// Residual of the Gauss equation |K_int − K_ext − ε·ν²| at (u, v),
    /// with K_int from the Brioschi pipeline.
    pub fn gauss_equation_check(&self, u: f64, v: f64) -> Result<f64> {
        let r = self.fundamental_forms(u, v)?;
        Ok((r.K_int - r.K_ext - self.tag.epsilon() * r.nu * r.nu).abs())
    }

    /// Angle function and squared tangential norm (ν, ‖T‖²) at (u, v),
    /// cross-checking the metric computation of ‖T‖² against 1 − ν².
    pub fn angle_decomposition(&self, u: f64, v: f64) -> Result<(f64, f64)> {
        let r = self.fundamental_forms(u, v)?;
        let gap = (r.T_norm_sq - (1.0 - r.nu * r.nu)).abs();
        if gap > 1e-9 {
            return Err(GeomError::Inconsistent(format!(
                "angle decomposition at ({u}, {v}): ||T||^2 = {} vs 1 - nu^2 = {} (gap {gap:e})",
                r.T_norm_sq,
                1.0 - r.nu * r.nu
            )));
        }
        Ok((r.nu, r.T_norm_sq))
    }

    /// Structural validation of the chart and derivative providers:
    /// quadric residuals on a 32×32 grid, and agreement of exact first
    /// derivatives with central differences on a 16×16 grid when provided.
    pub fn validate(&self) -> Result<()> {
        let [u0, u1, v0, v1] = self.domain;
        for i in 0..32 {
            for j in 0..32 {
                let u = u0 + (u1 - u0) * (i as f64 + 0.5) / 32.0;
                let v = v0 + (v1 - v0) * (j as f64 + 0.5) / 32.0;
                check_quadric(self.tag, (self.chart)(u, v))?;
            }
        }
        if self.exact_first.is_some() {
            let h = self.step_first;
            for i in 0..16 {
                for j in 0..16 {
                    let u = u0 + (u1 - u0) * (i as f64 + 0.5) / 16.0;
                    let v = v0 + (v1 - v0) * (j as f64 + 0.5) / 16.0;
                    let (eu, ev) = self.exact_first.as_ref().unwrap()(u, v);
                    // Numeric reference straight from the chart.
                    let up = (self.chart)(u + h, v);
                    let um = (self.chart)(u - h, v);
                    let vp = (self.chart)(u, v + h);
                    let vm = (self.chart)(u, v - h);
                    for c in 0..4 {
                        let nu_ = (up[c] - um[c]) / (2.0 * h);
                        let nv_ = (vp[c] - vm[c]) / (2.0 * h);
                        let scale = eu[c].abs().max(ev[c].abs()).max(1.0);
                        if (eu[c] - nu_).abs() > 1e-6 * scale
                            || (ev[c] - nv_).abs() > 1e-6 * scale
                        {
                            return Err(GeomError::Inconsistent(format!(
                                "exact and numeric first derivatives disagree at \
                                 ({u}, {v}), component {c}: exact ({}, {}), numeric ({nu_}, {nv_})",
                                eu[c], ev[c]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Euclidean generalized cross product of three 4-vectors: the unique vector
/// whose Euclidean dot with x equals det[x; a; b; c] for every x.
fn cross4(a: [f64; 4], b: [f64; 4], c: [f64; 4]) -> [f64; 4] {
    let minor = |c0: usize, c1: usize, c2: usize| {
        a[c0] * (b[c1] * c[c2] - b[c2] * c[c1]) - a[c1] * (b[c0] * c[c2] - b[c2] * c[c0])
            + a[c2] * (b[c0] * c[c1] - b[c1] * c[c0])
    };
    [
        minor(1, 2, 3),
        -minor(0, 2, 3),
        minor(0, 1, 3),
        -minor(0, 1, 2),
    ]
}

/// Determinant of a 3×3 matrix.
fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}
