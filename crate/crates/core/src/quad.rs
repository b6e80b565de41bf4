//! Adaptive Gauss–Kronrod quadrature.
//!
//! A single 7-point Gauss / 15-point Kronrod pair is applied on a depth-first
//! stack of subintervals; an interval is accepted when the difference between
//! the two rules falls under its share of the tolerance, and split in half
//! otherwise. This is ample for the integrands in this crate, which are
//! smooth away from at most square-root endpoint behaviour.

use crate::{GeomError, Result};

/// Kronrod abscissae on [0, 1] (positive half; the rule is symmetric).
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

/// Kronrod weights paired with `XGK`.
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Gauss weights for the embedded 7-point rule (nodes are XGK[1], XGK[3], ...).
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Maximum number of accepted subintervals before giving up.
const MAX_SEGS: usize = 20_000;

/// Narrowest interval the subdivision is allowed to produce.
const MIN_WIDTH: f64 = 1e-14;

/// Evaluate the G7/K15 pair on [a, b]; returns (kronrod, |kronrod - gauss|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);

    let fc = f(mid);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;

    for j in 0..7 {
        let dx = half * XGK[j];
        let fsum = f(mid - dx) + f(mid + dx);
        kronrod += WGK[j] * fsum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }
    kronrod *= half;
    gauss *= half;
    (kronrod, (kronrod - gauss).abs())
}

/// Integrate `f` over [a, b] (either orientation) to absolute tolerance `tol`.
///
/// Returns [`GeomError::QuadratureDidNotConverge`] with the worst per-interval
/// error actually achieved if the subdivision cap is reached first.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(GeomError::Domain(format!(
            "quadrature endpoints must be finite, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return integrate(f, b, a, tol).map(|v| -v);
    }

    // Stack of (lo, hi, tol-share) intervals still to be examined.
    let mut stack: Vec<(f64, f64, f64)> = vec![(a, b, tol.max(f64::MIN_POSITIVE))];
    let mut total = 0.0;
    let mut segs = 0usize;
    let mut worst_pending = 0.0f64;

    while let Some((lo, hi, share)) = stack.pop() {
        let (value, err) = gk15(&f, lo, hi);
        if err <= share || (hi - lo) < MIN_WIDTH {
            total += value;
            segs += 1;
            worst_pending = worst_pending.max(if err <= share { 0.0 } else { err });
            if segs > MAX_SEGS {
                return Err(GeomError::QuadratureDidNotConverge {
                    achieved: err.max(worst_pending),
                    requested: tol,
                });
            }
        } else {
            if stack.len() + segs > MAX_SEGS {
                return Err(GeomError::QuadratureDidNotConverge {
                    achieved: err,
                    requested: tol,
                });
            }
            let mid = 0.5 * (lo + hi);
            let half_share = 0.5 * share;
            stack.push((lo, mid, half_share));
            stack.push((mid, hi, half_share));
        }
    }

    Ok(total)
}
