//! Command-line front end for the product-space surface toolkit.
//!
//! Four subcommands: `sphere` builds a rotational K-sphere and writes its
//! profile curve, meshes and a JSON summary; `helicoid` builds a helicoidal
//! simple-end surface with its diagnostic reports; `verify` runs the
//! twelve-criterion verification suite; `ck-table` tabulates the
//! height-bound constant c_K over a curvature grid.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage error,
//! 3 numeric failure, 4 violated precondition. Identical invocations write
//! byte-identical files: every numeric path is deterministic, randomized
//! spot checks derive from the `--seed` value recorded in each report, and
//! floats in CSV output are printed with 17 significant digits.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use prodsurf::ambient::SpaceTag;
use prodsurf::estimates::ck_table_csv;
use prodsurf::helicoidal::{
    build_helicoidal, curvature_formula, simple_end_check, ProfileFn, SimpleEndReport,
};
use prodsurf::mesh::{mesh_surface, obj_disk_string, obj_string, sphere_mesh};
use prodsurf::rotational::{build_sphere, GeneratingCurve};
use prodsurf::verify::{verify, VerifyOptions, DEFAULT_SEED};
use prodsurf::GeomError;

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Tolerance the helicoidal curvature match is judged against.
const CURVATURE_MATCH_TOL: f64 = 1e-4;

#[derive(Parser)]
#[command(
    name = "prodsurf",
    version,
    about = "Constant-curvature surfaces in H2xR and S2xR: build, mesh, verify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a rotational K-sphere: profile CSV, OBJ mesh(es), JSON report.
    Sphere(SphereArgs),
    /// Build a helicoidal surface: OBJ mesh, simple-end and curvature reports.
    Helicoid(HelicoidArgs),
    /// Run the verification suite and print its JSON report.
    Verify(VerifyArgs),
    /// Tabulate the height-bound constant c_K over a K grid as CSV.
    CkTable(CkTableArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Space {
    /// Hyperbolic plane times the real line.
    H2r,
    /// Round sphere times the real line.
    S2r,
}

impl Space {
    fn tag(self) -> SpaceTag {
        match self {
            Space::H2r => SpaceTag::H2R,
            Space::S2r => SpaceTag::S2R,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileName {
    /// rho(y) = y^2 / 2.
    Quadratic,
    /// rho(y) = cosh y.
    Cosh,
}

#[derive(Args)]
struct CommonArgs {
    /// Directory the output files are written into (created if missing).
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Seed recorded in reports; drives any randomized spot check.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct SphereArgs {
    /// Ambient space.
    #[arg(long, value_enum, default_value_t = Space::H2r)]
    space: Space,
    /// Extrinsic curvature K > 0.
    #[arg(long = "K", default_value_t = 1.0, allow_negative_numbers = true)]
    k: f64,
    /// Height of the bottom pole (integration constant of the profile).
    #[arg(long = "C", default_value_t = 0.0, allow_negative_numbers = true)]
    c: f64,
    /// Profile-direction resolution.
    #[arg(long, default_value_t = 64)]
    n_u: usize,
    /// Angular resolution.
    #[arg(long, default_value_t = 64)]
    n_v: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct HelicoidArgs {
    /// Named convex profile.
    #[arg(long, value_enum, default_value_t = ProfileName::Quadratic)]
    profile: ProfileName,
    /// Polynomial profile coefficients c0,c1,... (lowest degree first);
    /// overrides --profile.
    #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    coeffs: Option<Vec<f64>>,
    /// Half-width override: the profile domain becomes (-window, window).
    #[arg(long)]
    window: Option<f64>,
    /// Profile-direction resolution.
    #[arg(long, default_value_t = 48)]
    n_y: usize,
    /// Sweep-direction resolution.
    #[arg(long, default_value_t = 48)]
    n_t: usize,
    /// Lower end of the sweep-parameter range.
    #[arg(long, default_value_t = -10.0, allow_negative_numbers = true)]
    t_min: f64,
    /// Upper end of the sweep-parameter range.
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    t_max: f64,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Extrinsic curvature K > 0 of the configured sphere.
    #[arg(long = "K", default_value_t = 1.0, allow_negative_numbers = true)]
    k: f64,
    /// Ambient space of the configured sphere.
    #[arg(long, value_enum, default_value_t = Space::H2r)]
    space: Space,
    /// Seed for the randomized spot checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Also write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CkTableArgs {
    /// Comma-separated grid of curvatures K > 0.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    ks: Vec<f64>,
    /// Sign of the base curvature: -1 for H2xR, +1 for S2xR.
    #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
    epsilon: i32,
    /// Output CSV path.
    #[arg(long, default_value = "ck_table.csv")]
    out: PathBuf,
}

/// A failure carrying the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

type CliResult<T> = Result<T, Failure>;

/// Exit-code classification of engine errors: configuration and resolution
/// problems are usage errors (2), convergence and consistency problems are
/// numeric failures (3), violated mathematical preconditions are 4.
fn geom_code(err: &GeomError) -> u8 {
    match err {
        GeomError::Domain(_)
        | GeomError::ModelMismatch(_)
        | GeomError::InsufficientResolution(_) => 2,
        GeomError::QuadratureDidNotConverge { .. }
        | GeomError::SingularImmersion { .. }
        | GeomError::Inconsistent(_) => 3,
        GeomError::Precondition(_)
        | GeomError::NotAKSurface { .. }
        | GeomError::Pole { .. }
        | GeomError::Tangential { .. } => 4,
    }
}

fn fail(err: GeomError) -> Failure {
    Failure {
        code: geom_code(&err),
        message: err.to_string(),
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|e| Failure {
                code: 1,
                message: format!("cannot create {}: {e}", dir.display()),
            })?;
        }
    }
    fs::write(path, contents).map_err(|e| Failure {
        code: 1,
        message: format!("cannot write {}: {e}", path.display()),
    })?;
    println!("wrote {}", path.display());
    Ok(())
}

fn to_pretty_json<T: Serialize>(value: &T) -> CliResult<String> {
    let body = serde_json::to_string_pretty(value).map_err(|e| Failure {
        code: 3,
        message: format!("cannot serialize report: {e}"),
    })?;
    Ok(body + "\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Sphere(a) => cmd_sphere(a),
        Command::Helicoid(a) => cmd_helicoid(a),
        Command::Verify(a) => cmd_verify(a),
        Command::CkTable(a) => cmd_ck_table(a),
    }
}

// ---------------------------------------------------------------- sphere --

#[derive(Serialize)]
#[allow(non_snake_case)]
struct SphereReportJson<'a> {
    command: &'a str,
    space: &'static str,
    K: f64,
    C: f64,
    n_u: usize,
    n_v: usize,
    seed: u64,
    version: &'static str,
    k_max: f64,
    h_min: f64,
    h_max: f64,
    h0: f64,
    height: f64,
    diameter: f64,
    /// Largest deviation of the profile from mirror symmetry about the
    /// equator height: max over u of |h(u) + h(-u) - 2 h(0)|.
    symmetry_residual: f64,
}

fn cmd_sphere(a: SphereArgs) -> CliResult<()> {
    if !(a.k.is_finite() && a.k > 0.0) {
        return Err(usage(format!("K must be positive and finite, got {}", a.k)));
    }
    if !a.c.is_finite() {
        return Err(usage(format!("C must be finite, got {}", a.c)));
    }
    if a.n_u < 8 || a.n_v < 8 {
        return Err(usage(format!(
            "resolution ({}, {}) is below the minimum of 8 per direction",
            a.n_u, a.n_v
        )));
    }
    let tag = a.space.tag();
    let (_, report) = build_sphere(a.k, a.c, tag, a.n_u, a.n_v).map_err(fail)?;

    // An even segment count gives an odd sample count, so u = 0 is a grid
    // point and every u has its exact mirror -u; both the CSV and the
    // symmetry residual use this grid.
    let curve = GeneratingCurve::build(a.k, a.c, tag, 2 * a.n_u).map_err(fail)?;
    let mut csv = String::from("u,k,h\n");
    for s in &curve.samples {
        csv.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", s.u, s.k, s.h));
    }
    let m = curve.samples.len();
    let mut symmetry_residual = 0.0f64;
    for i in 0..m {
        let paired = curve.samples[i].h + curve.samples[m - 1 - i].h - 2.0 * report.h0;
        symmetry_residual = symmetry_residual.max(paired.abs());
    }

    let command = format!(
        "prodsurf sphere --space {} --K {} --C {} --n-u {} --n-v {}",
        tag.name(),
        a.k,
        a.c,
        a.n_u,
        a.n_v
    );
    let command_line = format!("command: {command}");
    let params_line = format!(
        "parameters: space={} K={} C={} n_u={} n_v={}",
        tag.name(),
        a.k,
        a.c,
        a.n_u,
        a.n_v
    );
    let seed_line = format!("seed: {}", a.common.seed);
    let version_line = format!("version: {VERSION}");
    let comments = [
        command_line.as_str(),
        params_line.as_str(),
        seed_line.as_str(),
        version_line.as_str(),
    ];

    let mesh = sphere_mesh(a.k, a.c, tag, a.n_u, a.n_v).map_err(fail)?;
    let dir = &a.common.out_dir;
    write_file(&dir.join("profile.csv"), &csv)?;
    write_file(&dir.join("sphere.obj"), &obj_string(&mesh, &comments))?;
    if tag == SpaceTag::H2R {
        let disk = obj_disk_string(&mesh, &comments).map_err(fail)?;
        write_file(&dir.join("sphere_disk.obj"), &disk)?;
    }

    let json = SphereReportJson {
        command: &command,
        space: tag.name(),
        K: a.k,
        C: a.c,
        n_u: a.n_u,
        n_v: a.n_v,
        seed: a.common.seed,
        version: VERSION,
        k_max: report.k_max,
        h_min: report.h_min,
        h_max: report.h_max,
        h0: report.h0,
        height: report.height,
        diameter: report.diameter,
        symmetry_residual,
    };
    write_file(&dir.join("sphere_report.json"), &to_pretty_json(&json)?)?;
    println!(
        "sphere: space={} K={} k_max={:.6} height={:.6} symmetry_residual={:.3e}",
        tag.name(),
        a.k,
        report.k_max,
        report.height,
        symmetry_residual
    );
    Ok(())
}

// -------------------------------------------------------------- helicoid --

#[derive(Serialize)]
struct SimpleEndJson<'a> {
    command: &'a str,
    profile: &'a str,
    domain: [f64; 2],
    n_y: usize,
    n_t: usize,
    t_range: [f64; 2],
    seed: u64,
    version: &'static str,
    report: &'a SimpleEndReport,
}

#[derive(Serialize)]
struct CurvatureMatchJson<'a> {
    command: &'a str,
    profile: &'a str,
    y_range: [f64; 2],
    t_values: [f64; 3],
    samples: usize,
    tol: f64,
    max_error: f64,
    mean_error: f64,
    pass: bool,
    seed: u64,
    version: &'static str,
}

/// Construct the requested profile, apply the window override and run the
/// convexity/derivative audit. Any failure here is a violated precondition.
fn make_profile(a: &HelicoidArgs) -> prodsurf::Result<ProfileFn> {
    let mut p = match &a.coeffs {
        Some(c) => ProfileFn::polynomial(c, a.window.unwrap_or(8.0))?,
        None => match a.profile {
            ProfileName::Quadratic => ProfileFn::quadratic(),
            ProfileName::Cosh => ProfileFn::cosh_profile(),
        },
    };
    if let Some(w) = a.window {
        if !(w.is_finite() && w > 0.0) {
            return Err(GeomError::Domain(format!("bad profile window {w}")));
        }
        p.domain = [-w, w];
    }
    p.validate()?;
    Ok(p)
}

fn cmd_helicoid(a: HelicoidArgs) -> CliResult<()> {
    if a.n_y < 8 || a.n_t < 8 {
        return Err(usage(format!(
            "resolution ({}, {}) is below the minimum of 8 per direction",
            a.n_y, a.n_t
        )));
    }
    if !(a.t_min.is_finite() && a.t_max.is_finite() && a.t_min < a.t_max) {
        return Err(usage(format!(
            "bad sweep range [{}, {}]",
            a.t_min, a.t_max
        )));
    }
    let profile = make_profile(&a).map_err(|e| Failure {
        code: 4,
        message: e.to_string(),
    })?;

    let t_range = [a.t_min, a.t_max];
    let surface = build_helicoidal(&profile, a.n_y, a.n_t, t_range).map_err(fail)?;
    let simple_end = simple_end_check(&profile, &surface).map_err(fail)?;

    // Curvature spot check against the closed-form profile curvature. The
    // y window is clipped: far out the chart gradients grow and finite
    // differences of the second derivatives lose the 1e-4 comparison floor.
    let half = (0.98 * profile.domain[1]).min(2.5);
    let t_span = a.t_max - a.t_min;
    let t_values = [
        a.t_min + 0.35 * t_span,
        a.t_min + 0.5 * t_span,
        a.t_min + 0.6 * t_span,
    ];
    let n_samples = 21;
    let mut max_error = 0.0f64;
    let mut sum_error = 0.0f64;
    let mut samples = 0usize;
    for i in 0..n_samples {
        let y = -half + 2.0 * half * i as f64 / (n_samples - 1) as f64;
        let target = curvature_formula(&profile, y).map_err(fail)?;
        for &t in &t_values {
            let report = surface.fundamental_forms(y, t).map_err(fail)?;
            let err = (report.K_ext - target).abs();
            max_error = max_error.max(err);
            sum_error += err;
            samples += 1;
        }
    }
    let mean_error = sum_error / samples as f64;

    let command = match &a.coeffs {
        Some(c) => {
            let list = c
                .iter()
                .map(f64::to_string)
                .collect::<Vec<_>>()
                .join(",");
            format!(
                "prodsurf helicoid --coeffs {list} --window {} --n-y {} --n-t {} --t-min {} --t-max {}",
                profile.domain[1], a.n_y, a.n_t, a.t_min, a.t_max
            )
        }
        None => format!(
            "prodsurf helicoid --profile {} --window {} --n-y {} --n-t {} --t-min {} --t-max {}",
            profile.name, profile.domain[1], a.n_y, a.n_t, a.t_min, a.t_max
        ),
    };
    let command_line = format!("command: {command}");
    let params_line = format!(
        "parameters: profile={} domain=[{}, {}] n_y={} n_t={} t_range=[{}, {}]",
        profile.name, profile.domain[0], profile.domain[1], a.n_y, a.n_t, a.t_min, a.t_max
    );
    let seed_line = format!("seed: {}", a.common.seed);
    let version_line = format!("version: {VERSION}");
    let comments = [
        command_line.as_str(),
        params_line.as_str(),
        seed_line.as_str(),
        version_line.as_str(),
    ];

    let mesh = mesh_surface(&surface, a.n_y, a.n_t).map_err(fail)?;
    let dir = &a.common.out_dir;
    write_file(&dir.join("helicoid.obj"), &obj_string(&mesh, &comments))?;

    let se_json = SimpleEndJson {
        command: &command,
        profile: &profile.name,
        domain: profile.domain,
        n_y: a.n_y,
        n_t: a.n_t,
        t_range,
        seed: a.common.seed,
        version: VERSION,
        report: &simple_end,
    };
    write_file(&dir.join("simple_end.json"), &to_pretty_json(&se_json)?)?;

    let cm_json = CurvatureMatchJson {
        command: &command,
        profile: &profile.name,
        y_range: [-half, half],
        t_values,
        samples,
        tol: CURVATURE_MATCH_TOL,
        max_error,
        mean_error,
        pass: max_error < CURVATURE_MATCH_TOL,
        seed: a.common.seed,
        version: VERSION,
    };
    write_file(&dir.join("curvature_match.json"), &to_pretty_json(&cm_json)?)?;
    println!(
        "helicoid: profile={} simple_end_pass={} curvature_max_error={:.3e}",
        profile.name, simple_end.pass, max_error
    );
    Ok(())
}

// ---------------------------------------------------------------- verify --

fn cmd_verify(a: VerifyArgs) -> CliResult<()> {
    let opts = VerifyOptions::new(a.k, a.space.tag())
        .map_err(fail)?
        .with_seed(a.seed);
    let report = verify(&opts);
    let json = report.to_json().map_err(fail)?;
    println!("{json}");
    if let Some(path) = &a.out {
        write_file(path, &(json + "\n"))?;
    }
    if report.has_errors() {
        return Err(Failure {
            code: 3,
            message: "one or more criteria failed to evaluate".into(),
        });
    }
    if !report.all_pass {
        let failed: Vec<&str> = report
            .criteria
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name)
            .collect();
        return Err(Failure {
            code: 1,
            message: format!("verification failed: {}", failed.join(", ")),
        });
    }
    Ok(())
}

// -------------------------------------------------------------- ck-table --

fn cmd_ck_table(a: CkTableArgs) -> CliResult<()> {
    if a.ks.is_empty() {
        return Err(usage("the K grid is empty"));
    }
    for &k in &a.ks {
        if !(k.is_finite() && k > 0.0) {
            return Err(usage(format!(
                "K grid entries must be positive and finite, got {k}"
            )));
        }
    }
    if a.epsilon != -1 && a.epsilon != 1 {
        return Err(usage(format!("epsilon must be -1 or 1, got {}", a.epsilon)));
    }
    let csv = ck_table_csv(&a.ks, a.epsilon).map_err(fail)?;
    write_file(&a.out, &csv)?;
    Ok(())
}
