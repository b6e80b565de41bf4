//! The cross-module verification suite.
//!
//! [`verify`] runs twelve numbered checks spanning every module of the
//! crate — curvature identities, height estimates, conformality of the
//! quadratic form A with II, isometry-group algebra, section convexity,
//! and byte-level reproducibility of the suite itself — and assembles the
//! outcomes into a single serializable [`VerifyReport`]. Each criterion
//! carries a measured value, the bound it must respect, and a pass flag;
//! a criterion that fails to evaluate is reported with a NaN value, a
//! `false` flag, and the error message, never by aborting the suite.
//!
//! All sampling is deterministic: randomized spot checks draw from a
//! ChaCha stream seeded by [`VerifyOptions::seed`] (default
//! [`DEFAULT_SEED`]), and the seed is recorded in the report.

use crate::ambient::{lift_disk, lorentz3, parabolic_isometry, DiskPoint, Geodesic, SpaceTag};
use crate::estimates::{chi_of_nu, g_of_nu, radial_laplacians, verify_sphere_height};
use crate::formq::{conformality_sweep, conformality_sweep_local, form_A, form_A_local};
use crate::helicoidal::{build_helicoidal, curvature_formula, ProfileFn};
use crate::mesh::sphere_mesh;
use crate::rotational::{
    build_sphere, closed_form_principal_curvatures, h_of_u, sphere_chart, GeneratingCurve,
    POLE_CLIP,
};
use crate::sections::{convexity_check, intersect_on_chart, PlaneKind};
use crate::surface::ParamSurface;
use crate::{GeomError, Result};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

/// Default seed of the randomized spot checks, recorded in every report.
pub const DEFAULT_SEED: u64 = 20260816;

/// Configuration of a verification run.
#[derive(Clone, Copy, Debug)]
#[allow(non_snake_case)]
pub struct VerifyOptions {
    /// Extrinsic curvature of the featured surface.
    pub K: f64,
    /// Model space of the featured surface.
    pub space: SpaceTag,
    /// Seed for the randomized spot checks.
    pub seed: u64,
}

impl VerifyOptions {
    /// Validated constructor with the default seed.
    #[allow(non_snake_case)]
    pub fn new(K: f64, space: SpaceTag) -> Result<Self> {
        if !(K.is_finite() && K > 0.0) {
            return Err(GeomError::Domain(format!(
                "curvature K must be positive and finite, got {K}"
            )));
        }
        Ok(VerifyOptions {
            K,
            space,
            seed: DEFAULT_SEED,
        })
    }

    /// Replace the spot-check seed.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Outcome of one criterion.
#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    /// Stable machine-readable name.
    pub name: &'static str,
    /// Measured value (NaN when the evaluation errored).
    pub value: f64,
    /// Bound the value is tested against.
    pub bound: f64,
    /// Whether the criterion holds.
    pub pass: bool,
    /// Evaluation error, if the criterion could not be computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Full outcome of a verification run.
#[derive(Clone, Debug, Serialize)]
#[allow(non_snake_case)]
pub struct VerifyReport {
    /// Always "verify".
    pub command: String,
    /// Featured curvature.
    pub K: f64,
    /// Featured model space ("h2r" or "s2r").
    pub space: &'static str,
    /// Seed used by the randomized spot checks.
    pub seed: u64,
    /// Crate version that produced the report.
    pub version: &'static str,
    /// One entry per criterion, in suite order.
    pub criteria: Vec<Criterion>,
    /// Conjunction of all pass flags.
    pub all_pass: bool,
}

impl VerifyReport {
    /// Pretty-printed JSON encoding of the report.
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map_err(|e| GeomError::Inconsistent(format!("report serialization failed: {e}")))
    }

    /// True when any criterion failed to evaluate (as opposed to
    /// evaluating out of bounds).
    pub fn has_errors(&self) -> bool {
        self.criteria.iter().any(|c| c.error.is_some())
    }
}

/// Uniform draw from [a, b) off the top 53 bits of the stream.
fn unif(rng: &mut ChaCha8Rng, a: f64, b: f64) -> f64 {
    a + (b - a) * ((rng.next_u64() >> 11) as f64) * 2f64.powi(-53)
}

fn push(list: &mut Vec<Criterion>, name: &'static str, bound: f64, res: Result<(f64, bool)>) {
    match res {
        Ok((value, pass)) => list.push(Criterion {
            name,
            value,
            bound,
            pass,
            error: None,
        }),
        Err(e) => list.push(Criterion {
            name,
            value: f64::NAN,
            bound,
            pass: false,
            error: Some(e.to_string()),
        }),
    }
}

/// The featured sphere plus the two fixed unit-curvature spheres, deduped.
fn sphere_set(opts: &VerifyOptions) -> Vec<(f64, SpaceTag)> {
    let mut set = vec![(1.0, SpaceTag::H2R), (1.0, SpaceTag::S2R)];
    if !set.contains(&(opts.K, opts.space)) {
        set.push((opts.K, opts.space));
    }
    set
}

/// Interior sampling fractions 0.05 … 0.95.
fn interior(n: usize, i: usize) -> f64 {
    0.05 + 0.9 * i as f64 / (n - 1) as f64
}

fn criterion_principal_product() -> Result<(f64, bool)> {
    let mut worst = 0.0f64;
    for &big_k in &[0.1, 1.0, 10.0] {
        let curve = GeneratingCurve::build(big_k, 0.0, SpaceTag::H2R, 32)?;
        let total = curve.total_arclen()?;
        for i in 0..20 {
            let t = total * (0.1 + 0.8 * i as f64 / 19.0);
            let (l1, l2) = closed_form_principal_curvatures(t, &curve)?;
            worst = worst.max((l1 * l2 - big_k).abs());
        }
    }
    Ok((worst, worst < 1e-8))
}

/// Shared sweep over the sphere set: feed every interior grid report to
/// `accum` along with the sphere's nominal curvature.
fn sweep_spheres(
    opts: &VerifyOptions,
    grid: usize,
    accum: &mut dyn FnMut(&ParamSurface, f64, f64, f64) -> Result<()>,
) -> Result<()> {
    for (big_k, tag) in sphere_set(opts) {
        let s = build_sphere(big_k, 0.0, tag, 32, 32)?.0;
        let [u0, u1, v0, v1] = s.domain();
        for i in 0..grid {
            let u = u0 + (u1 - u0) * interior(grid, i);
            for j in 0..grid {
                let v = v0 + (v1 - v0) * interior(grid, j);
                accum(&s, big_k, u, v)?;
            }
        }
    }
    Ok(())
}

/// The two helicoidal profiles with the window |y| ≤ w on which the
/// numeric curvature pipeline is budgeted to 1e−4.
fn helicoid_set() -> Result<Vec<(ProfileFn, f64, ParamSurface)>> {
    let mut out = Vec::new();
    for (p, window) in [
        (ProfileFn::quadratic(), 3.0),
        (ProfileFn::cosh_profile(), 2.5),
    ] {
        let s = build_helicoidal(&p, 16, 16, [-10.0, 10.0])?;
        out.push((p, window, s));
    }
    Ok(out)
}

fn criterion_curvature_match(opts: &VerifyOptions) -> Result<(f64, bool)> {
    let mut worst = 0.0f64;
    sweep_spheres(opts, 32, &mut |s, big_k, u, v| {
        worst = worst.max((s.fundamental_forms(u, v)?.K_ext - big_k).abs());
        Ok(())
    })?;
    for (p, window, s) in helicoid_set()? {
        for i in 0..7 {
            let y = -window + 2.0 * window * i as f64 / 6.0;
            let expected = curvature_formula(&p, y)?;
            for t in [-3.0, 0.0, 2.0] {
                worst = worst.max((s.fundamental_forms(y, t)?.K_ext - expected).abs());
            }
        }
    }
    Ok((worst, worst < 1e-4))
}

fn criterion_gauss_equation(opts: &VerifyOptions) -> Result<(f64, bool)> {
    let mut worst = 0.0f64;
    sweep_spheres(opts, 16, &mut |s, _, u, v| {
        worst = worst.max(s.gauss_equation_check(u, v)?);
        Ok(())
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for (_, window, s) in helicoid_set()? {
        for _ in 0..10 {
            let y = unif(&mut rng, -window.min(2.5), window.min(2.5));
            let t = unif(&mut rng, -3.0, 3.0);
            worst = worst.max(s.gauss_equation_check(y, t)?);
        }
    }
    Ok((worst, worst < 1e-3))
}

fn criterion_nu2_identity(opts: &VerifyOptions) -> Result<(f64, bool)> {
    let mut worst = 0.0f64;
    let probe = |s: &ParamSurface, u: f64, v: f64| -> Result<f64> {
        let r = s.fundamental_forms(u, v)?;
        Ok((r.T_norm_sq + r.nu * r.nu - 1.0).abs())
    };
    sweep_spheres(opts, 16, &mut |s, _, u, v| {
        worst = worst.max(probe(s, u, v)?);
        Ok(())
    })?;
    for (_, window, s) in helicoid_set()? {
        for i in 0..7 {
            let y = -window + 2.0 * window * i as f64 / 6.0;
            for t in [-2.0, 0.5, 1.5] {
                worst = worst.max(probe(&s, y, t)?);
            }
        }
    }
    Ok((worst, worst < 1e-9))
}

fn criterion_height_estimates() -> Result<(f64, bool)> {
    let mut min_slack = f64::INFINITY;
    let mut all = true;
    for &big_k in &[0.1, 1.0, 10.0] {
        let r = verify_sphere_height(big_k)?;
        min_slack = min_slack.min(r.slack_half).min(r.slack_full);
        all &= r.pass;
    }
    Ok((min_slack, all && min_slack > 0.0))
}

fn criterion_special_values(opts: &VerifyOptions) -> Result<(f64, bool)> {
    let big_k = opts.K;
    let mut worst = 0.0f64;
    for &eps in &[-1, 1] {
        let target = f64::from(eps) / (2.0 * big_k);
        worst = worst.max((g_of_nu(1.0, big_k, eps)? - target).abs());
        worst = worst.max((g_of_nu(-1.0, big_k, eps)? - target).abs());
        worst = worst.max((chi_of_nu(1.0, big_k, eps)? - 1.0).abs());
        worst = worst.max((chi_of_nu(-1.0, big_k, eps)? - 1.0).abs());
    }
    let chi0_ref = big_k * (-f64::exp_m1(-1.0 / big_k));
    worst = worst.max((chi_of_nu(0.0, big_k, -1)? - chi0_ref).abs());
    Ok((worst, worst < 1e-12))
}

fn criterion_q_vanishing() -> Result<(f64, bool)> {
    let mut worst_sphere = 0.0f64;
    for tag in [SpaceTag::H2R, SpaceTag::S2R] {
        let s = build_sphere(1.0, 0.0, tag, 32, 32)?.0;
        worst_sphere = worst_sphere.max(conformality_sweep(&s, 1.0, 32)?.max_defect);
    }
    // Control 1: height stretched by 5%, no longer a K-surface.
    let chart = sphere_chart(1.0, 0.0, SpaceTag::H2R);
    let perturbed = ParamSurface::new(
        SpaceTag::H2R,
        [-1.0 + POLE_CLIP, 1.0 - POLE_CLIP, 0.0, 2.0 * PI],
        move |u, v| {
            let p = chart(u, v).unwrap();
            [p[0], p[1], p[2], 1.05 * p[3]]
        },
    );
    let control_a = conformality_sweep_local(&perturbed, 16)?.max_defect;
    // Control 2: variable-curvature helicoid.
    let hel = build_helicoidal(&ProfileFn::cosh_profile(), 16, 16, [-1.0, 1.0])?;
    let mut control_b = 0.0f64;
    for &(y, t) in &[(0.5, 0.3), (1.0, -0.2), (1.5, 0.5)] {
        control_b = control_b.max(form_A_local(&hel, y, t)?.defect);
    }
    let pass = worst_sphere < 1e-6 && control_a > 1e-4 && control_b > 1e-4;
    Ok((worst_sphere, pass))
}

fn criterion_pair_curvature(opts: &VerifyOptions) -> Result<(f64, bool)> {
    let mut worst = 0.0f64;
    for (big_k, tag) in sphere_set(opts) {
        let s = build_sphere(big_k, 0.0, tag, 32, 32)?.0;
        let [u0, u1, v0, v1] = s.domain();
        for i in 0..20 {
            let u = u0 + (u1 - u0) * interior(20, i);
            let v = v0 + (v1 - v0) * ((0.37 + 2.31 * i as f64 / 20.0).fract());
            let rep = form_A(&s, big_k, u, v)?;
            let nu = s.fundamental_forms(u, v)?.nu.clamp(-1.0, 1.0);
            let chi = chi_of_nu(nu, big_k, tag.epsilon() as i32)?;
            worst = worst.max((rep.K_pair - chi / big_k).abs());
        }
    }
    Ok((worst, worst < 1e-8))
}

fn criterion_radial_laplacians(opts: &VerifyOptions) -> Result<(f64, bool)> {
    let r = radial_laplacians(opts.K, 20)?;
    Ok((r.max_residual_h.max(r.max_residual_nu), r.pass))
}

fn criterion_isometry_group(opts: &VerifyOptions) -> Result<(f64, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut law = 0.0f64;
    let mut metric = 0.0f64;
    let mut orbit = 0.0f64;
    for _ in 0..100 {
        let draw_point = |rng: &mut ChaCha8Rng| {
            let r = unif(rng, 0.0, 0.9);
            let phi = unif(rng, 0.0, 2.0 * PI);
            DiskPoint::new(r * phi.cos(), r * phi.sin(), unif(rng, -2.0, 2.0))
        };
        let p = draw_point(&mut rng);
        let q = draw_point(&mut rng);
        let s = unif(&mut rng, -2.0, 2.0);
        let t = unif(&mut rng, -2.0, 2.0);

        let a = parabolic_isometry(s, parabolic_isometry(t, p));
        let b = parabolic_isometry(s + t, p);
        law = law
            .max((a.z[0] - b.z[0]).abs())
            .max((a.z[1] - b.z[1]).abs())
            .max((a.t - b.t).abs());

        let before = {
            let (lp, lq) = (lift_disk(p)?, lift_disk(q)?);
            lorentz3(
                [lp.x[0], lp.x[1], lp.x[2]],
                [lq.x[0], lq.x[1], lq.x[2]],
            )
        };
        let after = {
            let (fp, fq) = (
                lift_disk(parabolic_isometry(t, p))?,
                lift_disk(parabolic_isometry(t, q))?,
            );
            lorentz3(
                [fp.x[0], fp.x[1], fp.x[2]],
                [fq.x[0], fq.x[1], fq.x[2]],
            )
        };
        metric = metric.max((after - before).abs());

        orbit = orbit.max((parabolic_isometry(t, p).t - p.t).abs());
    }
    let value = (law / 1e-10).max(metric / 1e-8).max(orbit / 1e-12);
    Ok((value, value <= 1.0))
}

fn criterion_section_convexity(opts: &VerifyOptions) -> Result<(f64, bool)> {
    // Sections are implemented in the hyperbolic model; the featured K is
    // used there regardless of the featured space.
    let big_k = opts.K;
    let tag = SpaceTag::H2R;
    let chart = sphere_chart(big_k, 0.0, tag);
    let h0 = h_of_u(0.0, big_k, 0.0, tag)?;
    let h_top = h_of_u(-1.0, big_k, 0.0, tag)?;
    let k_max = crate::rotational::k_of_u(0.0, big_k, tag)?;
    // Off-axis vertical plane at half the maximal radius: transverse and
    // nonempty for every K.
    let alpha = (0.5 * k_max).tanh().asin();
    let planes = [
        PlaneKind::Horizontal(h0),
        PlaneKind::Horizontal(h0 + 0.33 * (h_top - h0)),
        PlaneKind::Vertical(Geodesic::new(0.0, PI)?),
        PlaneKind::Vertical(Geodesic::new(alpha, PI - alpha)?),
    ];
    let mut violations = 0usize;
    let mut flags: Vec<Vec<bool>> = Vec::new();
    for n in [64usize, 128] {
        let mesh = sphere_mesh(big_k, 0.0, tag, n, n)?;
        let mut run_flags = Vec::new();
        for plane in &planes {
            let sections = intersect_on_chart(&chart, Some(2.0 * PI), &mesh, plane)?;
            if sections.is_empty() {
                violations += 1;
            }
            for sec in &sections {
                let rep = convexity_check(sec)?;
                if !rep.pass {
                    violations += 1;
                }
                run_flags.push(rep.pass);
            }
        }
        flags.push(run_flags);
    }
    if flags[0] != flags[1] {
        violations += 1;
    }
    Ok((violations as f64, violations == 0))
}

/// Criteria 1–11 in suite order.
fn run_criteria(opts: &VerifyOptions) -> Vec<Criterion> {
    let mut list = Vec::with_capacity(12);
    push(
        &mut list,
        "principal_product",
        1e-8,
        criterion_principal_product(),
    );
    push(
        &mut list,
        "curvature_match",
        1e-4,
        criterion_curvature_match(opts),
    );
    push(
        &mut list,
        "gauss_equation",
        1e-3,
        criterion_gauss_equation(opts),
    );
    push(
        &mut list,
        "nu2_identity",
        1e-9,
        criterion_nu2_identity(opts),
    );
    push(
        &mut list,
        "height_estimates",
        0.0,
        criterion_height_estimates(),
    );
    push(
        &mut list,
        "special_values",
        1e-12,
        criterion_special_values(opts),
    );
    push(&mut list, "q_vanishing", 1e-6, criterion_q_vanishing());
    push(
        &mut list,
        "pair_curvature",
        1e-8,
        criterion_pair_curvature(opts),
    );
    push(
        &mut list,
        "radial_laplacians",
        1e-3,
        criterion_radial_laplacians(opts),
    );
    push(
        &mut list,
        "isometry_group",
        1.0,
        criterion_isometry_group(opts),
    );
    push(
        &mut list,
        "section_convexity",
        0.0,
        criterion_section_convexity(opts),
    );
    list
}

/// Run the full verification suite.
///
/// Never fails as a whole: criteria that cannot be evaluated are recorded
/// with their error message and count as failed. The final criterion reruns
/// the first eleven and byte-compares the serialized outcomes, certifying
/// that the suite is deterministic for this configuration.
pub fn verify(opts: &VerifyOptions) -> VerifyReport {
    let mut criteria = run_criteria(opts);
    let repro = {
        let first = serde_json::to_string(&criteria);
        let second = serde_json::to_string(&run_criteria(opts));
        match (first, second) {
            (Ok(a), Ok(b)) => Ok(((a != b) as u8 as f64, a == b)),
            (Err(e), _) | (_, Err(e)) => {
                Err(GeomError::Inconsistent(format!("serialization failed: {e}")))
            }
        }
    };
    push(&mut criteria, "reproducibility", 0.0, repro);
    let all_pass = criteria.iter().all(|c| c.pass);
    VerifyReport {
        command: "verify".into(),
        K: opts.K,
        space: opts.space.name(),
        seed: opts.seed,
        version: env!("CARGO_PKG_VERSION"),
        criteria,
        all_pass,
    }
}
