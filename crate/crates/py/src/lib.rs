//! Python bindings for the product-space surface engine.
//!
//! Exposes the scalar profile and estimate functions, the two surface
//! families as classes, and the verification suite. Spaces are selected by
//! the strings `"h2r"` and `"s2r"`; reports cross the boundary as JSON
//! strings so Python sees exactly what the CLI writes.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use prodsurf::ambient::SpaceTag;
use prodsurf::estimates;
use prodsurf::helicoidal::{
    build_helicoidal, curvature_formula, simple_end_check, ProfileFn,
};
use prodsurf::mesh::{mesh_surface, obj_string, sphere_mesh};
use prodsurf::rotational::{
    build_sphere, closed_form_principal_curvatures, GeneratingCurve, RotSphereReport,
};
use prodsurf::surface::{CurvatureReport, ParamSurface};
use prodsurf::verify::{verify, VerifyOptions, DEFAULT_SEED};
use prodsurf::GeomError;

/// Configuration-shaped engine errors become ValueError; numeric and
/// precondition failures become RuntimeError.
fn to_py_err(e: GeomError) -> PyErr {
    match &e {
        GeomError::Domain(_)
        | GeomError::ModelMismatch(_)
        | GeomError::InsufficientResolution(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn parse_space(space: &str) -> PyResult<SpaceTag> {
    match space {
        "h2r" => Ok(SpaceTag::H2R),
        "s2r" => Ok(SpaceTag::S2R),
        other => Err(PyValueError::new_err(format!(
            "unknown space '{other}' (expected 'h2r' or 's2r')"
        ))),
    }
}

fn curvature_dict<'py>(py: Python<'py>, r: &CurvatureReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("I", (r.I11, r.I12, r.I22))?;
    d.set_item("II", (r.II11, r.II12, r.II22))?;
    d.set_item("N", r.N)?;
    d.set_item("nu", r.nu)?;
    d.set_item("T_norm_sq", r.T_norm_sq)?;
    d.set_item("H", r.H)?;
    d.set_item("K_ext", r.K_ext)?;
    d.set_item("K_int", r.K_int)?;
    d.set_item("lambda1", r.lambda1)?;
    d.set_item("lambda2", r.lambda2)?;
    Ok(d)
}

// ------------------------------------------------------- scalar functions --

/// Geodesic radius k(u) of the rotational K-sphere profile.
#[pyfunction]
#[pyo3(signature = (u, K, space = "h2r"))]
#[allow(non_snake_case)]
fn k_of_u(u: f64, K: f64, space: &str) -> PyResult<f64> {
    prodsurf::rotational::k_of_u(u, K, parse_space(space)?).map_err(to_py_err)
}

/// Height h(u) of the rotational K-sphere profile, with h(1) = C.
#[pyfunction]
#[pyo3(signature = (u, K, C = 0.0, space = "h2r"))]
#[allow(non_snake_case)]
fn h_of_u(u: f64, K: f64, C: f64, space: &str) -> PyResult<f64> {
    prodsurf::rotational::h_of_u(u, K, C, parse_space(space)?).map_err(to_py_err)
}

/// The auxiliary weight g(nu) of the quadratic form A = I + g dh^2.
#[pyfunction]
#[pyo3(signature = (nu, K, epsilon = -1))]
#[allow(non_snake_case)]
fn g_of_nu(nu: f64, K: f64, epsilon: i32) -> PyResult<f64> {
    estimates::g_of_nu(nu, K, epsilon).map_err(to_py_err)
}

/// chi(nu) = 1 + g(nu)(1 - nu^2), the pair-curvature profile.
#[pyfunction]
#[pyo3(signature = (nu, K, epsilon = -1))]
#[allow(non_snake_case)]
fn chi_of_nu(nu: f64, K: f64, epsilon: i32) -> PyResult<f64> {
    estimates::chi_of_nu(nu, K, epsilon).map_err(to_py_err)
}

/// f'(nu), the integrand of the height bound c_K.
#[pyfunction]
#[pyo3(signature = (nu, K, epsilon = -1))]
#[allow(non_snake_case)]
fn f_prime(nu: f64, K: f64, epsilon: i32) -> PyResult<f64> {
    estimates::f_prime(nu, K, epsilon).map_err(to_py_err)
}

/// The height-bound constant c_K = integral of f' over [-1, 0].
#[pyfunction]
#[pyo3(signature = (K, epsilon = -1))]
#[allow(non_snake_case)]
fn c_k(K: f64, epsilon: i32) -> PyResult<f64> {
    estimates::c_k(K, epsilon).map_err(to_py_err)
}

/// CSV table of c_K over a curvature grid (same format as the CLI).
#[pyfunction]
#[pyo3(signature = (ks, epsilon = -1))]
fn ck_table_csv(ks: Vec<f64>, epsilon: i32) -> PyResult<String> {
    estimates::ck_table_csv(&ks, epsilon).map_err(to_py_err)
}

/// Run the twelve-criterion verification suite; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (K = 1.0, space = "h2r", seed = None))]
#[allow(non_snake_case)]
fn verify_json(K: f64, space: &str, seed: Option<u64>) -> PyResult<String> {
    let mut opts = VerifyOptions::new(K, parse_space(space)?).map_err(to_py_err)?;
    if let Some(s) = seed {
        opts = opts.with_seed(s);
    }
    verify(&opts).to_json().map_err(to_py_err)
}

// ------------------------------------------------------------------ Sphere --

/// A rotational sphere of constant extrinsic curvature K in H2xR or S2xR.
#[pyclass]
struct Sphere {
    surface: ParamSurface,
    curve: GeneratingCurve,
    report: RotSphereReport,
    tag: SpaceTag,
    big_k: f64,
    c: f64,
    n_u: usize,
    n_v: usize,
}

#[pymethods]
impl Sphere {
    #[new]
    #[pyo3(signature = (K = 1.0, C = 0.0, space = "h2r", n_u = 64, n_v = 64))]
    #[allow(non_snake_case)]
    fn new(K: f64, C: f64, space: &str, n_u: usize, n_v: usize) -> PyResult<Self> {
        let tag = parse_space(space)?;
        let (surface, report) = build_sphere(K, C, tag, n_u, n_v).map_err(to_py_err)?;
        let curve = GeneratingCurve::build(K, C, tag, 2 * n_u.max(8)).map_err(to_py_err)?;
        Ok(Self {
            surface,
            curve,
            report,
            tag,
            big_k: K,
            c: C,
            n_u,
            n_v,
        })
    }

    #[getter]
    fn space(&self) -> &'static str {
        self.tag.name()
    }

    #[getter]
    #[allow(non_snake_case)]
    fn K(&self) -> f64 {
        self.big_k
    }

    #[getter]
    fn k_max(&self) -> f64 {
        self.report.k_max
    }

    #[getter]
    fn h_min(&self) -> f64 {
        self.report.h_min
    }

    #[getter]
    fn h_max(&self) -> f64 {
        self.report.h_max
    }

    #[getter]
    fn h0(&self) -> f64 {
        self.report.h0
    }

    #[getter]
    fn height(&self) -> f64 {
        self.report.height
    }

    #[getter]
    fn diameter(&self) -> f64 {
        self.report.diameter
    }

    /// Ambient position of the chart at (u, v).
    fn position(&self, u: f64, v: f64) -> PyResult<(f64, f64, f64, f64)> {
        let p = self.surface.position(u, v).map_err(to_py_err)?;
        Ok((p[0], p[1], p[2], p[3]))
    }

    /// Fundamental forms and curvatures at (u, v) as a dict.
    fn curvature<'py>(&self, py: Python<'py>, u: f64, v: f64) -> PyResult<Bound<'py, PyDict>> {
        let r = self.surface.fundamental_forms(u, v).map_err(to_py_err)?;
        curvature_dict(py, &r)
    }

    /// Closed-form principal curvatures at arc length t from the top pole
    /// (hyperbolic ambient only).
    fn principal_curvatures(&self, t: f64) -> PyResult<(f64, f64)> {
        closed_form_principal_curvatures(t, &self.curve).map_err(to_py_err)
    }

    /// Total arc length of the generating curve (hyperbolic ambient only).
    fn arclength(&self) -> PyResult<f64> {
        self.curve.total_arclen().map_err(to_py_err)
    }

    /// Profile samples as a list of (u, k, h) triples.
    fn profile(&self) -> Vec<(f64, f64, f64)> {
        self.curve
            .samples
            .iter()
            .map(|s| (s.u, s.k, s.h))
            .collect()
    }

    /// Triangulated OBJ mesh in ambient coordinates.
    fn obj(&self) -> PyResult<String> {
        let mesh = sphere_mesh(self.big_k, self.c, self.tag, self.n_u, self.n_v)
            .map_err(to_py_err)?;
        let params = format!(
            "parameters: space={} K={} C={} n_u={} n_v={}",
            self.tag.name(),
            self.big_k,
            self.c,
            self.n_u,
            self.n_v
        );
        Ok(obj_string(&mesh, &["python bindings", &params]))
    }

    fn __repr__(&self) -> String {
        format!(
            "Sphere(K={}, space='{}', k_max={:.6}, height={:.6})",
            self.big_k,
            self.tag.name(),
            self.report.k_max,
            self.report.height
        )
    }
}

// ---------------------------------------------------------------- Helicoid --

/// A helicoidal simple-end surface in H2xR swept from a convex profile.
#[pyclass]
struct Helicoid {
    profile: ProfileFn,
    surface: ParamSurface,
    n_y: usize,
    n_t: usize,
    t_range: [f64; 2],
}

#[pymethods]
impl Helicoid {
    #[new]
    #[pyo3(signature = (profile = "quadratic", coeffs = None, window = None, n_y = 48, n_t = 48, t_range = (-10.0, 10.0)))]
    fn new(
        profile: &str,
        coeffs: Option<Vec<f64>>,
        window: Option<f64>,
        n_y: usize,
        n_t: usize,
        t_range: (f64, f64),
    ) -> PyResult<Self> {
        let mut p = match &coeffs {
            Some(c) => ProfileFn::polynomial(c, window.unwrap_or(8.0)).map_err(to_py_err)?,
            None => match profile {
                "quadratic" => ProfileFn::quadratic(),
                "cosh" => ProfileFn::cosh_profile(),
                other => {
                    return Err(PyValueError::new_err(format!(
                        "unknown profile '{other}' (expected 'quadratic' or 'cosh', \
                         or pass coeffs=...)"
                    )))
                }
            },
        };
        if let Some(w) = window {
            if !(w.is_finite() && w > 0.0) {
                return Err(PyValueError::new_err(format!("bad profile window {w}")));
            }
            p.domain = [-w, w];
        }
        p.validate().map_err(to_py_err)?;
        let t_range = [t_range.0, t_range.1];
        let surface = build_helicoidal(&p, n_y, n_t, t_range).map_err(to_py_err)?;
        Ok(Self {
            profile: p,
            surface,
            n_y,
            n_t,
            t_range,
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.profile.name.clone()
    }

    #[getter]
    fn domain(&self) -> (f64, f64) {
        (self.profile.domain[0], self.profile.domain[1])
    }

    /// Ambient position of the chart at (y, t).
    fn position(&self, y: f64, t: f64) -> PyResult<(f64, f64, f64, f64)> {
        let p = self.surface.position(y, t).map_err(to_py_err)?;
        Ok((p[0], p[1], p[2], p[3]))
    }

    /// Fundamental forms and curvatures at (y, t) as a dict.
    fn curvature<'py>(&self, py: Python<'py>, y: f64, t: f64) -> PyResult<Bound<'py, PyDict>> {
        let r = self.surface.fundamental_forms(y, t).map_err(to_py_err)?;
        curvature_dict(py, &r)
    }

    /// Closed-form extrinsic curvature rho''/(1 + rho'^2)^2 at y.
    fn curvature_target(&self, y: f64) -> PyResult<f64> {
        curvature_formula(&self.profile, y).map_err(to_py_err)
    }

    /// Simple-end diagnostics (funnel + bounded plane sections) as JSON.
    fn simple_end_json(&self) -> PyResult<String> {
        let report = simple_end_check(&self.profile, &self.surface).map_err(to_py_err)?;
        serde_json::to_string_pretty(&report)
            .map_err(|e| PyRuntimeError::new_err(format!("cannot serialize report: {e}")))
    }

    /// Triangulated OBJ mesh in ambient coordinates.
    fn obj(&self) -> PyResult<String> {
        let mesh = mesh_surface(&self.surface, self.n_y, self.n_t).map_err(to_py_err)?;
        let params = format!(
            "parameters: profile={} domain=[{}, {}] n_y={} n_t={} t_range=[{}, {}]",
            self.profile.name,
            self.profile.domain[0],
            self.profile.domain[1],
            self.n_y,
            self.n_t,
            self.t_range[0],
            self.t_range[1]
        );
        Ok(obj_string(&mesh, &["python bindings", &params]))
    }

    fn __repr__(&self) -> String {
        format!(
            "Helicoid(profile='{}', domain=[{}, {}])",
            self.profile.name, self.profile.domain[0], self.profile.domain[1]
        )
    }
}

// ------------------------------------------------------------------ module --

#[pymodule]
fn prodsurf_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("DEFAULT_SEED", DEFAULT_SEED)?;
    m.add_function(wrap_pyfunction!(k_of_u, m)?)?;
    m.add_function(wrap_pyfunction!(h_of_u, m)?)?;
    m.add_function(wrap_pyfunction!(g_of_nu, m)?)?;
    m.add_function(wrap_pyfunction!(chi_of_nu, m)?)?;
    m.add_function(wrap_pyfunction!(f_prime, m)?)?;
    m.add_function(wrap_pyfunction!(c_k, m)?)?;
    m.add_function(wrap_pyfunction!(ck_table_csv, m)?)?;
    m.add_function(wrap_pyfunction!(verify_json, m)?)?;
    m.add_class::<Sphere>()?;
    m.add_class::<Helicoid>()?;
    Ok(())
}
