//! Plane sections of sampled surfaces and their discrete convexity.
//!
//! A triangulated surface sample is intersected with a totally geodesic
//! plane — a vertical plane `γ × R` over a disk geodesic, or a horizontal
//! slice at fixed height — by marching the faces: a face contributes a
//! segment where its vertex levels straddle zero or lie on the plane. The
//! segments chain into connected, ordered polylines expressed in the
//! plane's own flat coordinates:
//!
//! * vertical plane: (signed arc length along the footprint geodesic,
//!   height) — the plane is intrinsically flat, so these are Cartesian;
//! * horizontal plane: Klein-model disk coordinates, where hyperbolic
//!   geodesics are straight chords and hyperbolic convexity is exactly
//!   Euclidean convexity of the image.
//!
//! Convexity of a section is then the ordinary discrete statement: all
//! turning angles strictly share one sign. Everything here is pure;
//! sections over distinct planes may be computed concurrently.
//!
//! The module works in the hyperbolic model only — the Klein reduction and
//! the vertical-plane machinery have no spherical counterpart here.

use crate::ambient::{klein_of_hyperboloid, lorentz3, Geodesic, SpaceTag, VerticalPlane};
use crate::mesh::SurfaceMesh;
use crate::{GeomError, Result};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

/// A face whose vertices all sit within this (scale-relative) distance of
/// the plane is tangential contact, not a transverse crossing.
pub const TRANSVERSALITY_TOL: f64 = 1e-10;

/// Ambient tolerance within which every emitted section vertex lies on the
/// plane (on-vertices are caught by the tighter transversality tolerance;
/// edge crossings sit on the plane by linear interpolation).
pub const ON_PLANE_TOL: f64 = 1e-8;

/// Minimum spacing between consecutive polyline points; nearer duplicates
/// are merged.
pub const MIN_SPACING: f64 = 1e-9;

/// Turning angles must strictly exceed this for a convexity pass.
pub const MIN_TURNING: f64 = 1e-7;

/// Which totally geodesic plane a section lives in.
#[derive(Clone, Copy, Debug)]
pub enum PlaneKind {
    /// The vertical plane over a disk geodesic.
    Vertical(Geodesic),
    /// The horizontal slice at the given height.
    Horizontal(f64),
}

/// One connected component of a surface–plane intersection.
#[derive(Clone, Debug)]
pub struct PlaneSection {
    /// The plane the section lies in.
    pub plane_kind: PlaneKind,
    /// Ordered 2D points in the plane's intrinsic coordinates: (arc length,
    /// height) for a vertical plane, Klein disk coordinates for a
    /// horizontal one. Consecutive points are distinct (spacing above
    /// `MIN_SPACING`).
    pub polyline: Vec<[f64; 2]>,
    /// Whether the component closes into a loop.
    pub closed: bool,
}

/// Outcome of the discrete convexity test on one section.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConvexityReport {
    /// Number of polyline vertices examined.
    pub vertices: usize,
    /// Whether the section is a closed loop.
    pub closed: bool,
    /// +1 when every turning angle is strictly positive, −1 when strictly
    /// negative, 0 when the test fails.
    pub turn_sign: f64,
    /// Smallest |turning angle| over the examined vertices.
    pub min_abs_angle: f64,
    /// True when all turning angles strictly share one sign.
    pub pass: bool,
}

/// Endpoint identity of a marching segment: an on-plane mesh vertex, or a
/// crossing on the (sorted) mesh edge between two vertices. Keying segments
/// by identity rather than position makes chaining exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    V(usize),
    E(usize, usize),
}

/// Intersect a triangulated surface with a plane, returning the connected
/// components as ordered polylines in the plane's intrinsic coordinates.
///
/// A face lying entirely in the plane (all three vertex levels within
/// `TRANSVERSALITY_TOL`, relative to the mesh coordinate scale) is
/// tangential contact; all such faces are collected into one error. A face
/// touching the plane in a single vertex contributes nothing. A plane
/// missing the mesh yields an empty list.
pub fn intersect(mesh: &SurfaceMesh, plane: &PlaneKind) -> Result<Vec<PlaneSection>> {
    let level = level_fn(plane);
    let levels: Vec<f64> = mesh.vertices.iter().map(|&x| level(x)).collect();
    // Crossings interpolate linearly along the mesh edge; the level is
    // linear in the ambient coordinates, so they land on the plane exactly.
    let edge_point = |lo: usize, hi: usize| -> Result<[f64; 4]> {
        let tau = levels[lo] / (levels[lo] - levels[hi]);
        let (p, q) = (mesh.vertices[lo], mesh.vertices[hi]);
        Ok([
            p[0] + tau * (q[0] - p[0]),
            p[1] + tau * (q[1] - p[1]),
            p[2] + tau * (q[2] - p[2]),
            p[3] + tau * (q[3] - p[3]),
        ])
    };
    march(mesh, plane, &level, &levels, &edge_point)
}

/// Like [`intersect`], but each edge crossing is solved on the chart that
/// generated the mesh instead of interpolated along the mesh chord: the
/// crossing parameters are found by bisecting `level ∘ chart` between the
/// edge's endpoint parameters. Every polyline vertex then lies on the exact
/// surface *and* on the plane, so the section of a smooth strictly convex
/// curve is an inscribed polygon — discretely convex with honest margins —
/// where chord interpolation would carry placement noise of the order of
/// the mesh sag.
///
/// `chart` must be the map the mesh was sampled from (checked by
/// re-evaluating it at every vertex's stored parameters), and must accept
/// all parameters in the convex hull of each edge's endpoint parameters.
/// For a chart periodic in its second parameter, pass the period so seam
/// edges are routed the short way around; the chart is then evaluated at
/// near-seam values up to half a period outside its sampled range.
pub fn intersect_on_chart(
    chart: &dyn Fn(f64, f64) -> Result<[f64; 4]>,
    v_period: Option<f64>,
    mesh: &SurfaceMesh,
    plane: &PlaneKind,
) -> Result<Vec<PlaneSection>> {
    if mesh.params.len() != mesh.vertices.len() {
        return Err(GeomError::Inconsistent(
            "mesh carries no chart parameters for its vertices".into(),
        ));
    }
    let scale = mesh.coordinate_scale();
    for (i, (&[u, v], &x)) in mesh.params.iter().zip(&mesh.vertices).enumerate() {
        let p = chart(u, v)?;
        let err = (0..4).map(|c| (p[c] - x[c]).abs()).fold(0.0, f64::max);
        if err > 1e-12 * scale {
            return Err(GeomError::Inconsistent(format!(
                "mesh vertex {i} does not match the chart at its stored \
                 parameters (deviation {err:.3e})"
            )));
        }
    }

    let level = level_fn(plane);
    let levels: Vec<f64> = mesh.vertices.iter().map(|&x| level(x)).collect();
    let edge_point = |lo: usize, hi: usize| -> Result<[f64; 4]> {
        let [ua, va] = mesh.params[lo];
        let [ub, mut vb] = mesh.params[hi];
        // A periodic seam edge stores far-apart v parameters; route the
        // bisection the short way around.
        if let Some(period) = v_period {
            if (vb - va).abs() > 0.5 * period {
                vb -= period * (vb - va).signum();
            }
        }
        let at = |tau: f64| chart(ua + tau * (ub - ua), va + tau * (vb - va));
        // Bisect level ∘ chart between the endpoints, which straddle zero.
        let (mut a, mut b) = (0.0f64, 1.0f64);
        let sign_a = levels[lo] > 0.0;
        for _ in 0..60 {
            let mid = 0.5 * (a + b);
            if (level(at(mid)?) > 0.0) == sign_a {
                a = mid;
            } else {
                b = mid;
            }
        }
        at(0.5 * (a + b))
    };
    march(mesh, plane, &level, &levels, &edge_point)
}

/// Signed level function vanishing on the plane, linear in the ambient
/// coordinates.
fn level_fn(plane: &PlaneKind) -> Box<dyn Fn([f64; 4]) -> f64> {
    match plane {
        PlaneKind::Vertical(g) => {
            let m = VerticalPlane::new(*g).lorentz_normal();
            Box::new(move |x: [f64; 4]| lorentz3([x[0], x[1], x[2]], m))
        }
        PlaneKind::Horizontal(t0) => {
            let t0 = *t0;
            Box::new(move |x: [f64; 4]| x[3] - t0)
        }
    }
}

/// The marching core shared by the two entry points: classify faces against
/// the vertex levels, realize edge crossings through `edge_point`, chain
/// the segments, and express the polylines intrinsically.
fn march(
    mesh: &SurfaceMesh,
    plane: &PlaneKind,
    level: &dyn Fn([f64; 4]) -> f64,
    levels: &[f64],
    edge_point: &dyn Fn(usize, usize) -> Result<[f64; 4]>,
) -> Result<Vec<PlaneSection>> {
    if mesh.tag != SpaceTag::H2R {
        return Err(GeomError::ModelMismatch(
            "plane sections are defined in the hyperbolic model only".into(),
        ));
    }
    let on_tol = TRANSVERSALITY_TOL * mesh.coordinate_scale();
    let on: Vec<bool> = levels.iter().map(|l| l.abs() <= on_tol).collect();

    let mut tangential: Vec<usize> = Vec::new();
    let mut segments: Vec<(Key, Key)> = Vec::new();
    let mut seen: BTreeSet<(Key, Key)> = BTreeSet::new();
    let mut points: BTreeMap<Key, [f64; 4]> = BTreeMap::new();

    for (fi, face) in mesh.faces.iter().enumerate() {
        let [a, b, c] = *face;
        if on[a] && on[b] && on[c] {
            tangential.push(fi);
            continue;
        }
        let mut ends: Vec<Key> = Vec::with_capacity(2);
        for &i in face {
            if on[i] {
                ends.push(Key::V(i));
                points.entry(Key::V(i)).or_insert(mesh.vertices[i]);
            }
        }
        for (i, j) in [(a, b), (b, c), (c, a)] {
            if on[i] || on[j] || levels[i] * levels[j] >= 0.0 {
                continue;
            }
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            let key = Key::E(lo, hi);
            ends.push(key);
            if let std::collections::btree_map::Entry::Vacant(e) = points.entry(key) {
                e.insert(edge_point(lo, hi)?);
            }
        }
        // 0 ends: face misses the plane; 1 end: isolated vertex touch.
        if ends.len() == 2 && ends[0] != ends[1] {
            let pair = (ends[0].min(ends[1]), ends[0].max(ends[1]));
            if seen.insert(pair) {
                segments.push(pair);
            }
        }
    }

    if !tangential.is_empty() {
        return Err(GeomError::Tangential { faces: tangential });
    }

    // Chain segments into polylines. Keys give exact incidence, so this is
    // pure bookkeeping: walk from degree-1 keys first (open arcs), then
    // start loops at their smallest key. BTreeMap order keeps the result
    // deterministic.
    let mut adjacency: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
    for (si, &(k1, k2)) in segments.iter().enumerate() {
        adjacency.entry(k1).or_default().push(si);
        adjacency.entry(k2).or_default().push(si);
    }
    let mut used = vec![false; segments.len()];

    let to_intrinsic: Box<dyn Fn([f64; 4]) -> [f64; 2]> = match plane {
        PlaneKind::Vertical(g) => {
            let vp = VerticalPlane::new(*g);
            Box::new(move |p: [f64; 4]| [vp.arclen_of(p), p[3]])
        }
        PlaneKind::Horizontal(_) => {
            Box::new(|p: [f64; 4]| klein_of_hyperboloid([p[0], p[1], p[2]]))
        }
    };

    let mut sections = Vec::new();
    loop {
        let unused_degree = |k: &Key| {
            adjacency[k].iter().filter(|&&s| !used[s]).count()
        };
        let start = adjacency
            .keys()
            .find(|k| unused_degree(k) == 1)
            .or_else(|| adjacency.keys().find(|k| unused_degree(k) >= 1))
            .copied();
        let Some(start) = start else { break };

        let mut path = vec![start];
        let mut cursor = start;
        while let Some(&si) = adjacency[&cursor].iter().find(|&&s| !used[s]) {
            used[si] = true;
            let (k1, k2) = segments[si];
            cursor = if k1 == cursor { k2 } else { k1 };
            path.push(cursor);
        }
        let closed = path.len() > 3 && path.first() == path.last();
        if closed {
            path.pop();
        }

        let mut polyline: Vec<[f64; 2]> = Vec::with_capacity(path.len());
        for key in &path {
            let ambient = points[key];
            debug_assert!(level(ambient).abs() <= ON_PLANE_TOL * mesh.coordinate_scale());
            let q = to_intrinsic(ambient);
            let distinct = polyline
                .last()
                .is_none_or(|p: &[f64; 2]| dist2(*p, q) > MIN_SPACING);
            if distinct {
                polyline.push(q);
            }
        }
        if closed && polyline.len() > 1 {
            let (first, last) = (polyline[0], polyline[polyline.len() - 1]);
            if dist2(first, last) <= MIN_SPACING {
                polyline.pop();
            }
        }
        let polyline = weld_short_chords(polyline, closed);
        if polyline.len() >= 2 {
            sections.push(PlaneSection {
                plane_kind: *plane,
                polyline,
                closed,
            });
        }
    }
    Ok(sections)
}

/// Discrete convexity test: all turning angles of the polyline must
/// strictly share one sign (each exceeding `MIN_TURNING` in magnitude).
/// Closed sections turn at every vertex; open ones at interior vertices.
/// Sections of horizontal planes are already in Klein coordinates, where
/// this Euclidean test is exactly hyperbolic convexity.
pub fn convexity_check(sec: &PlaneSection) -> Result<ConvexityReport> {
    let n = sec.polyline.len();
    if n < 8 {
        return Err(GeomError::InsufficientResolution(format!(
            "section has {n} vertices; the convexity test needs at least 8"
        )));
    }
    let angles = turning_angles(&sec.polyline, sec.closed);
    let mut min_abs = f64::INFINITY;
    let (mut pos, mut neg) = (0usize, 0usize);
    for &a in &angles {
        min_abs = min_abs.min(a.abs());
        if a > MIN_TURNING {
            pos += 1;
        } else if a < -MIN_TURNING {
            neg += 1;
        }
    }
    let turn_sign = if pos == angles.len() {
        1.0
    } else if neg == angles.len() {
        -1.0
    } else {
        0.0
    };
    Ok(ConvexityReport {
        vertices: n,
        closed: sec.closed,
        turn_sign,
        min_abs_angle: min_abs,
        pass: turn_sign != 0.0,
    })
}

/// Whether the convex region bounded by a vertical-plane section contains a
/// vertical ray. Closed sections bound a compact region, so the answer is
/// false; an open convex arc bounds an unbounded region whose recession
/// cone is spanned by its two outgoing end directions, and the test asks
/// whether (0, ±1) lies in that cone. The section must be strictly convex,
/// and the plane vertical (a horizontal plane has no vertical direction).
pub fn contains_vertical_ray(sec: &PlaneSection) -> Result<bool> {
    if matches!(sec.plane_kind, PlaneKind::Horizontal(_)) {
        return Err(GeomError::Precondition(
            "the vertical-ray test applies to sections of vertical planes".into(),
        ));
    }
    let report = convexity_check(sec)?;
    if !report.pass {
        return Err(GeomError::Precondition(
            "the vertical-ray test needs a strictly convex section".into(),
        ));
    }
    if sec.closed {
        return Ok(false);
    }

    // Normalize to a left-turning arc so the bounded-side bookkeeping below
    // has one orientation; reflecting the first coordinate preserves the
    // vertical directions.
    let mut poly = sec.polyline.clone();
    if report.turn_sign < 0.0 {
        for p in &mut poly {
            p[0] = -p[0];
        }
    }
    // An arc turning through π or more has end rays that cross, so the
    // idealized region is bounded.
    let total: f64 = turning_angles(&poly, false).iter().sum();
    if total >= std::f64::consts::PI - 1e-9 {
        return Ok(false);
    }
    let n = poly.len();
    let r_end = sub2(poly[n - 1], poly[n - 2]);
    let r_start = sub2(poly[0], poly[1]);
    let in_cone =
        |v: [f64; 2]| cross2(r_end, v) >= 0.0 && cross2(v, r_start) >= 0.0;
    Ok(in_cone([0.0, 1.0]) || in_cone([0.0, -1.0]))
}

/// CSV rendering of a section: header `s,x1,x2`, with `s` the cumulative
/// polyline length in the intrinsic plane coordinates.
pub fn section_csv(sec: &PlaneSection) -> String {
    let mut out = String::from("s,x1,x2\n");
    let mut s = 0.0;
    for (i, p) in sec.polyline.iter().enumerate() {
        if i > 0 {
            s += dist2(sec.polyline[i - 1], *p);
        }
        let _ = writeln!(out, "{s:.16e},{:.16e},{:.16e}", p[0], p[1]);
    }
    out
}

/// Drop points forming chords far shorter than the section's typical
/// spacing. Edge crossings are interpolated along mesh chords, so they sit
/// slightly off the true section; where one lands almost on a mesh vertex,
/// the sub-resolution chord direction is placement noise and can flip the
/// sign of a tiny turning angle. Welding keeps every survivor on the plane
/// and restores spacing comparable to the mesh resolution.
fn weld_short_chords(poly: Vec<[f64; 2]>, closed: bool) -> Vec<[f64; 2]> {
    let n = poly.len();
    if n < 3 {
        return poly;
    }
    let mut gaps: Vec<f64> = poly.windows(2).map(|w| dist2(w[0], w[1])).collect();
    if closed {
        gaps.push(dist2(poly[n - 1], poly[0]));
    }
    gaps.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let threshold = 0.5 * gaps[gaps.len() / 2];
    if threshold <= MIN_SPACING {
        return poly;
    }
    let mut out: Vec<[f64; 2]> = Vec::with_capacity(n);
    for p in poly {
        if out.last().is_none_or(|q| dist2(*q, p) >= threshold) {
            out.push(p);
        }
    }
    if closed {
        while out.len() > 2 && dist2(out[0], out[out.len() - 1]) < threshold {
            out.pop();
        }
    }
    out
}

/// Signed turning angles of the polyline: at every vertex (cyclically) when
/// closed, at interior vertices when open.
fn turning_angles(poly: &[[f64; 2]], closed: bool) -> Vec<f64> {
    let n = poly.len();
    let mut angles = Vec::new();
    let range: Box<dyn Iterator<Item = usize>> = if closed {
        Box::new(0..n)
    } else {
        Box::new(1..n - 1)
    };
    for i in range {
        let prev = poly[(i + n - 1) % n];
        let here = poly[i];
        let next = poly[(i + 1) % n];
        let d1 = sub2(here, prev);
        let d2 = sub2(next, here);
        angles.push(cross2(d1, d2).atan2(dot2(d1, d2)));
    }
    angles
}

fn sub2(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn dot2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn cross2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    sub2(a, b)[0].hypot(sub2(a, b)[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::SpaceTag;
    use crate::mesh::{mesh_surface, sphere_mesh};
    use crate::rotational::{h_of_u, k_of_u, sphere_chart};
    use crate::surface::ParamSurface;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn unit_sphere_mesh(n: usize) -> SurfaceMesh {
        sphere_mesh(1.0, 0.0, SpaceTag::H2R, n, n).unwrap()
    }

    /// The flat control surface: a vertical plane swept over a geodesic.
    fn flat_plane_surface(g: Geodesic) -> ParamSurface {
        ParamSurface::new(SpaceTag::H2R, [-1.5, 1.5, -1.0, 1.0], move |s, t| {
            let q = g.hyperboloid_point(s);
            [q[0], q[1], q[2], t]
        })
    }

    fn assert_spacing(sec: &PlaneSection) {
        for w in sec.polyline.windows(2) {
            assert!(dist2(w[0], w[1]) > MIN_SPACING);
        }
        if sec.closed {
            let (a, b) = (sec.polyline[0], sec.polyline[sec.polyline.len() - 1]);
            assert!(dist2(a, b) > MIN_SPACING);
        }
    }

    #[test]
    fn equator_section_is_a_klein_circle() {
        let mesh = unit_sphere_mesh(64);
        let h0 = h_of_u(0.0, 1.0, 0.0, SpaceTag::H2R).unwrap();
        let sections = intersect(&mesh, &PlaneKind::Horizontal(h0)).unwrap();
        assert_eq!(sections.len(), 1);
        let sec = &sections[0];
        assert!(sec.closed);
        assert_eq!(sec.polyline.len(), 64);
        assert_spacing(sec);

        // The equator ring sits at the maximal radius, a Klein circle of
        // Euclidean radius tanh(k_max).
        let radius = k_of_u(0.0, 1.0, SpaceTag::H2R).unwrap().tanh();
        for p in &sec.polyline {
            assert_abs_diff_eq!(p[0].hypot(p[1]), radius, epsilon = 1e-12);
        }

        let report = convexity_check(sec).unwrap();
        assert!(report.pass);
        assert!(report.turn_sign.abs() == 1.0);
        // A regular 64-gon turns by 2π/64 at each vertex.
        assert_abs_diff_eq!(report.min_abs_angle, 2.0 * PI / 64.0, epsilon = 1e-9);
        let total: f64 = turning_angles(&sec.polyline, true).iter().sum();
        assert_abs_diff_eq!(total.abs(), 2.0 * PI, epsilon = 1e-9);
    }

    #[test]
    fn axis_plane_section_matches_the_profile() {
        let n = 64;
        let mesh = unit_sphere_mesh(n);
        let axis = Geodesic::new(0.0, PI).unwrap();
        let sections = intersect(&mesh, &PlaneKind::Vertical(axis)).unwrap();
        assert_eq!(sections.len(), 1);
        let sec = &sections[0];
        assert!(sec.closed);
        // Two meridians (profile and mirror) plus the two poles.
        assert_eq!(sec.polyline.len(), 2 * (n - 1) + 2);
        assert_spacing(sec);

        // Every section vertex matches a profile sample (±k(u), h(u)).
        let grid: Vec<(f64, f64)> = (0..=n)
            .map(|i| {
                let u = 1.0 - 2.0 * i as f64 / n as f64;
                (
                    k_of_u(u, 1.0, SpaceTag::H2R).unwrap(),
                    h_of_u(u, 1.0, 0.0, SpaceTag::H2R).unwrap(),
                )
            })
            .collect();
        for p in &sec.polyline {
            let (k, h) = grid
                .iter()
                .copied()
                .min_by(|a, b| {
                    (a.1 - p[1]).abs().partial_cmp(&(b.1 - p[1]).abs()).unwrap()
                })
                .unwrap();
            assert_abs_diff_eq!(p[1], h, epsilon = 1e-9);
            assert_abs_diff_eq!(p[0].abs(), k, epsilon = 1e-6);
        }

        let report = convexity_check(sec).unwrap();
        assert!(report.pass, "axis section not convex: {report:?}");
        // A closed convex section bounds a compact region: no vertical ray.
        assert!(!contains_vertical_ray(sec).unwrap());
    }

    #[test]
    fn planes_missing_the_surface_give_empty_lists() {
        let mesh = unit_sphere_mesh(32);
        let h_top = h_of_u(1.0, 1.0, 0.0, SpaceTag::H2R).unwrap();
        let h_bot = h_of_u(-1.0, 1.0, 0.0, SpaceTag::H2R).unwrap();
        let above = h_top.max(h_bot) + 0.5;
        assert!(intersect(&mesh, &PlaneKind::Horizontal(above))
            .unwrap()
            .is_empty());

        // A geodesic hugging the ideal boundary stays far from the sphere.
        let far = Geodesic::new(0.3, 0.5).unwrap();
        assert!(intersect(&mesh, &PlaneKind::Vertical(far))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn off_axis_and_midheight_sections_are_convex() {
        let mesh = unit_sphere_mesh(64);
        let chart = sphere_chart(1.0, 0.0, SpaceTag::H2R);
        let g = Geodesic::new(0.2, PI - 0.2).unwrap();
        let sections =
            intersect_on_chart(&chart, Some(2.0 * PI), &mesh, &PlaneKind::Vertical(g)).unwrap();
        assert_eq!(sections.len(), 1);
        assert!(sections[0].closed);
        assert_spacing(&sections[0]);
        let report = convexity_check(&sections[0]).unwrap();
        assert!(report.pass, "off-axis section not convex: {report:?}");

        let h0 = h_of_u(0.0, 1.0, 0.0, SpaceTag::H2R).unwrap();
        let h_top = h_of_u(1.0, 1.0, 0.0, SpaceTag::H2R).unwrap();
        let t_mid = h0 + 0.33 * (h_top - h0);
        let sections =
            intersect_on_chart(&chart, Some(2.0 * PI), &mesh, &PlaneKind::Horizontal(t_mid))
                .unwrap();
        assert_eq!(sections.len(), 1);
        assert!(sections[0].closed);
        assert_spacing(&sections[0]);
        assert!(convexity_check(&sections[0]).unwrap().pass);
    }

    #[test]
    fn polished_crossings_lie_on_the_exact_surface() {
        // Reconstruct ambient points of a polished vertical section from
        // the intrinsic coordinates and check quadric membership, which
        // chord-interpolated crossings fail by the mesh sag.
        let mesh = unit_sphere_mesh(32);
        let chart = sphere_chart(1.0, 0.0, SpaceTag::H2R);
        let g = Geodesic::new(0.2, PI - 0.2).unwrap();
        let plane = PlaneKind::Vertical(g);
        let polished = intersect_on_chart(&chart, Some(2.0 * PI), &mesh, &plane).unwrap();
        let raw = intersect(&mesh, &plane).unwrap();
        let reconstruct = |sec: &PlaneSection| -> Vec<[f64; 4]> {
            sec.polyline
                .iter()
                .map(|&[s, t]| {
                    let q = g.hyperboloid_point(s);
                    [q[0], q[1], q[2], t]
                })
                .collect()
        };
        // The reconstruction places points on the plane and hyperboloid by
        // construction; membership in the sphere shows in the radius: the
        // height determines the profile parameter u (the height is strictly
        // monotone with derivative bounded away from zero, so this inversion
        // is well conditioned), and cosh k(u) must match x1.
        let h_at = |u: f64| h_of_u(u, 1.0, 0.0, SpaceTag::H2R).unwrap();
        let on_sphere_radius_err = |p: &[f64; 4]| -> f64 {
            let t = p[3].clamp(h_at(1.0), h_at(-1.0));
            let (mut lo, mut hi) = (-1.0f64, 1.0f64);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if h_at(mid) >= t {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let u = 0.5 * (lo + hi);
            let x1 = (0.5 * (1.0 - u) * (1.0 + u)).exp();
            (p[0] - x1).abs()
        };
        let worst = |secs: &[PlaneSection]| -> f64 {
            secs.iter()
                .flat_map(|s| reconstruct(s))
                .map(|p| on_sphere_radius_err(&p))
                .fold(0.0, f64::max)
        };
        let polished_err = worst(&polished);
        let raw_err = worst(&raw);
        assert!(
            polished_err < 1e-9,
            "polished section strays off the sphere by {polished_err:.3e}"
        );
        assert!(
            raw_err > 100.0 * polished_err.max(1e-12),
            "chord sag unexpectedly small: raw {raw_err:.3e} vs polished {polished_err:.3e}"
        );
    }

    #[test]
    fn flat_control_fails_convexity_with_zero_turning() {
        let g = Geodesic::new(0.5 * PI, 1.5 * PI).unwrap();
        let surface = flat_plane_surface(g);
        let mesh = mesh_surface(&surface, 64, 64).unwrap();
        let sections = intersect(&mesh, &PlaneKind::Horizontal(0.25)).unwrap();
        assert!(!sections.is_empty());
        let sec = sections.iter().max_by_key(|s| s.polyline.len()).unwrap();
        assert!(sec.polyline.len() >= 8);
        let report = convexity_check(sec).unwrap();
        assert!(!report.pass);
        assert!(report.min_abs_angle < MIN_TURNING);
    }

    #[test]
    fn tangential_contact_lists_the_offending_faces() {
        let g = Geodesic::new(0.5 * PI, 1.5 * PI).unwrap();
        let surface = flat_plane_surface(g);
        let mesh = mesh_surface(&surface, 16, 16).unwrap();
        // The surface lies inside its own vertical plane.
        let err = intersect(&mesh, &PlaneKind::Vertical(g)).unwrap_err();
        match err {
            GeomError::Tangential { faces } => assert_eq!(faces.len(), mesh.faces.len()),
            other => panic!("expected tangential contact, got {other}"),
        }
    }

    #[test]
    fn refinement_does_not_change_pass_flags() {
        let h0 = h_of_u(0.0, 1.0, 0.0, SpaceTag::H2R).unwrap();
        let chart = sphere_chart(1.0, 0.0, SpaceTag::H2R);
        let axis = Geodesic::new(0.0, PI).unwrap();
        let off = Geodesic::new(0.2, PI - 0.2).unwrap();
        let planes = [
            PlaneKind::Horizontal(h0),
            PlaneKind::Vertical(axis),
            PlaneKind::Vertical(off),
        ];
        let mut flags: Vec<Vec<bool>> = Vec::new();
        for n in [64, 128] {
            let mesh = unit_sphere_mesh(n);
            let mut row = Vec::new();
            for plane in &planes {
                let sections =
                    intersect_on_chart(&chart, Some(2.0 * PI), &mesh, plane).unwrap();
                for sec in sections {
                    row.push(convexity_check(&sec).unwrap().pass);
                }
            }
            assert!(row.iter().all(|&p| p), "failure at resolution {n}");
            flags.push(row);
        }
        assert_eq!(flags[0], flags[1]);
    }

    #[test]
    fn vertical_ray_detection_on_synthetic_arcs() {
        let axis = Geodesic::new(0.0, PI).unwrap();
        let arc = |pts: Vec<[f64; 2]>| PlaneSection {
            plane_kind: PlaneKind::Vertical(axis),
            polyline: pts,
            closed: false,
        };
        let sample = |f: fn(f64) -> [f64; 2]| -> Vec<[f64; 2]> {
            (0..17).map(|i| f(-2.0 + 0.25 * i as f64)).collect()
        };

        // An upward-opening profile contains the upward ray.
        let up = arc(sample(|s| [s, 0.5 * s * s]));
        assert!(contains_vertical_ray(&up).unwrap());
        let mut reversed = up.clone();
        reversed.polyline.reverse();
        assert!(contains_vertical_ray(&reversed).unwrap());

        // Downward-opening: the downward ray.
        let down = arc(sample(|s| [s, -0.5 * s * s]));
        assert!(contains_vertical_ray(&down).unwrap());

        // Sideways-opening: neither vertical ray fits in the cone.
        let side = arc(sample(|s| [0.5 * s * s, s]));
        assert!(!contains_vertical_ray(&side).unwrap());

        // Closed convex loops bound compact regions.
        let octagon = PlaneSection {
            plane_kind: PlaneKind::Vertical(axis),
            polyline: (0..8)
                .map(|i| {
                    let a = 2.0 * PI * i as f64 / 8.0;
                    [a.cos(), a.sin()]
                })
                .collect(),
            closed: true,
        };
        assert!(!contains_vertical_ray(&octagon).unwrap());

        // Horizontal sections have no vertical direction to test.
        let horizontal = PlaneSection {
            plane_kind: PlaneKind::Horizontal(0.0),
            ..octagon.clone()
        };
        assert!(matches!(
            contains_vertical_ray(&horizontal),
            Err(GeomError::Precondition(_))
        ));

        // A zig-zag is not convex.
        let zigzag = arc((0..10).map(|i| [i as f64, (i % 2) as f64]).collect());
        assert!(matches!(
            contains_vertical_ray(&zigzag),
            Err(GeomError::Precondition(_))
        ));
    }

    #[test]
    fn csv_export_and_resolution_guard() {
        let mesh = unit_sphere_mesh(64);
        let h0 = h_of_u(0.0, 1.0, 0.0, SpaceTag::H2R).unwrap();
        let sec = &intersect(&mesh, &PlaneKind::Horizontal(h0)).unwrap()[0];
        let csv = section_csv(sec);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("s,x1,x2"));
        assert_eq!(csv.lines().count(), sec.polyline.len() + 1);
        let first = lines.next().unwrap();
        assert!(first.starts_with("0.0000000000000000e0,"));
        // Cumulative arc length is strictly increasing.
        let s_col: Vec<f64> = csv
            .lines()
            .skip(1)
            .map(|l| l.split(',').next().unwrap().parse().unwrap())
            .collect();
        assert!(s_col.windows(2).all(|w| w[1] > w[0]));

        let short = PlaneSection {
            plane_kind: PlaneKind::Horizontal(0.0),
            polyline: vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
            closed: true,
        };
        assert!(matches!(
            convexity_check(&short),
            Err(GeomError::InsufficientResolution(_))
        ));
    }
}
