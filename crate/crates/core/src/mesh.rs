//! Triangulated meshes of parametric surfaces and their OBJ serialization.
//!
//! Two builders are provided: a generic grid mesh over any chart, and a
//! closed rotational-sphere mesh whose pole rows collapse to single vertices
//! (the chart itself is clipped away from the poles, but the closed-form
//! profile is perfectly regular there, so the mesh can close up).
//!
//! OBJ output keeps all four ambient coordinates: each `v x1 x2 x3` line is
//! followed by a `# t <x4>` attribute line. Hyperbolic meshes can also be
//! written in Poincaré-disk × R coordinates, which are directly viewable.

use crate::ambient::{project_disk, AmbientPoint, SpaceTag};
use crate::rotational::{h_of_u, k_of_u, sphere_point};
use crate::surface::ParamSurface;
use crate::{GeomError, Result};
use std::fmt::Write as _;

/// A triangulated surface sample in ambient coordinates.
#[derive(Clone, Debug)]
pub struct SurfaceMesh {
    /// Ambient space of the vertices.
    pub tag: SpaceTag,
    /// Vertex positions.
    pub vertices: Vec<[f64; 4]>,
    /// Chart parameters (u, v) each vertex was sampled at, letting
    /// consumers re-evaluate the generating chart between vertices.
    pub params: Vec<[f64; 2]>,
    /// Counterclockwise vertex-index triples.
    pub faces: Vec<[usize; 3]>,
}

impl SurfaceMesh {
    /// Largest absolute coordinate over all vertices, used for scale-aware
    /// tolerances by consumers.
    pub fn coordinate_scale(&self) -> f64 {
        self.vertices
            .iter()
            .flatten()
            .fold(1.0f64, |acc, c| acc.max(c.abs()))
    }
}

/// Sample a chart on an (n_u+1)×(n_v+1) grid (n_u+1 × n_v when the chart is
/// v-periodic, in which case the seam is sewn) and triangulate the quads.
pub fn mesh_surface(surface: &ParamSurface, n_u: usize, n_v: usize) -> Result<SurfaceMesh> {
    if n_u < 2 || n_v < 3 {
        return Err(GeomError::Domain(format!(
            "mesh resolution ({n_u}, {n_v}) is too coarse to triangulate"
        )));
    }
    let [u0, u1, v0, v1] = surface.domain();
    let periodic = surface.v_periodic();
    let cols = if periodic { n_v } else { n_v + 1 };
    let mut vertices = Vec::with_capacity((n_u + 1) * cols);
    let mut params = Vec::with_capacity((n_u + 1) * cols);
    for i in 0..=n_u {
        let u = u0 + (u1 - u0) * i as f64 / n_u as f64;
        for j in 0..cols {
            let v = v0 + (v1 - v0) * j as f64 / n_v as f64;
            vertices.push(surface.position(u, v)?);
            params.push([u, v]);
        }
    }
    let mut faces = Vec::with_capacity(2 * n_u * n_v);
    for i in 0..n_u {
        for j in 0..n_v {
            let jn = if periodic { (j + 1) % n_v } else { j + 1 };
            let a = i * cols + j;
            let b = (i + 1) * cols + j;
            let c = (i + 1) * cols + jn;
            let d = i * cols + jn;
            faces.push([a, b, c]);
            faces.push([a, c, d]);
        }
    }
    Ok(SurfaceMesh {
        tag: surface.tag(),
        vertices,
        params,
        faces,
    })
}

/// Closed mesh of the rotational K-sphere: n_u−1 interior latitude rows of
/// n_v vertices plus two pole vertices, fanned together at the poles.
#[allow(non_snake_case)]
pub fn sphere_mesh(
    K: f64,
    C: f64,
    tag: SpaceTag,
    n_u: usize,
    n_v: usize,
) -> Result<SurfaceMesh> {
    if n_u < 2 || n_v < 3 {
        return Err(GeomError::Domain(format!(
            "sphere mesh resolution ({n_u}, {n_v}) is too coarse"
        )));
    }
    let mut vertices = Vec::with_capacity(2 + (n_u - 1) * n_v);
    let mut params = Vec::with_capacity(2 + (n_u - 1) * n_v);
    // Top vertex at u = 1 (height C), bottom vertex at u = −1.
    vertices.push(sphere_point(0.0, 0.0, h_of_u(1.0, K, C, tag)?, tag));
    params.push([1.0, 0.0]);
    for i in 1..n_u {
        let u = 1.0 - 2.0 * i as f64 / n_u as f64;
        let k = k_of_u(u, K, tag)?;
        let h = h_of_u(u, K, C, tag)?;
        for j in 0..n_v {
            let v = 2.0 * std::f64::consts::PI * j as f64 / n_v as f64;
            vertices.push(sphere_point(k, v, h, tag));
            params.push([u, v]);
        }
    }
    vertices.push(sphere_point(0.0, 0.0, h_of_u(-1.0, K, C, tag)?, tag));
    params.push([-1.0, 0.0]);
    let bottom = vertices.len() - 1;

    let ring = |i: usize, j: usize| 1 + (i - 1) * n_v + (j % n_v);
    let mut faces = Vec::with_capacity(2 * n_v * (n_u - 1));
    for j in 0..n_v {
        faces.push([0, ring(1, j), ring(1, j + 1)]);
    }
    for i in 1..n_u - 1 {
        for j in 0..n_v {
            let a = ring(i, j);
            let b = ring(i + 1, j);
            let c = ring(i + 1, j + 1);
            let d = ring(i, j + 1);
            faces.push([a, b, c]);
            faces.push([a, c, d]);
        }
    }
    for j in 0..n_v {
        faces.push([bottom, ring(n_u - 1, j + 1), ring(n_u - 1, j)]);
    }
    Ok(SurfaceMesh {
        tag,
        vertices,
        params,
        faces,
    })
}

/// Serialize a mesh as Wavefront OBJ in ambient coordinates; every vertex
/// line is followed by a `# t <x4>` attribute comment carrying the fourth
/// coordinate. Output is deterministic.
pub fn obj_string(mesh: &SurfaceMesh, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "# space: {}", mesh.tag.name());
    let _ = writeln!(out, "# vertices: {}", mesh.vertices.len());
    for v in &mesh.vertices {
        let _ = writeln!(out, "v {} {} {}", v[0], v[1], v[2]);
        let _ = writeln!(out, "# t {}", v[3]);
    }
    for f in &mesh.faces {
        let _ = writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
    }
    out
}

/// Serialize a hyperbolic mesh as OBJ in Poincaré-disk × R coordinates
/// (z1, z2, t) — a directly viewable embedding of H²×R as the unit
/// cylinder. Spherical meshes are rejected.
pub fn obj_disk_string(mesh: &SurfaceMesh, comments: &[&str]) -> Result<String> {
    if mesh.tag != SpaceTag::H2R {
        return Err(GeomError::ModelMismatch(
            "disk coordinates exist only for the hyperbolic factor".into(),
        ));
    }
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "# coordinates: poincare disk x R");
    let _ = writeln!(out, "# vertices: {}", mesh.vertices.len());
    for v in &mesh.vertices {
        let p = project_disk(&AmbientPoint::new(mesh.tag, *v)?)?;
        let _ = writeln!(out, "v {} {} {}", p.z[0], p.z[1], p.t);
    }
    for f in &mesh.faces {
        let _ = writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
    }
    Ok(out)
}
