#!/usr/bin/env python3
"""Regenerate the high-precision reference constants used by the Rust tests.

Everything below is evaluated with mpmath at 50 decimal digits and printed
as Rust `const` items (f64 literals carry 17 significant digits, which is
enough to round-trip). The Rust test suite freezes these values; if a
formula changes, rerun this script and update the affected constants
deliberately rather than re-deriving them from the code under test.

Conventions (matching the core crate):
  * eps = -1 selects the hyperbolic product model, eps = +1 the spherical one
  * profile parameter u in [-1, 1], s = 1 - u^2
  * K > 0 is the target extrinsic curvature of the rotational sphere
"""

from mpmath import mp, mpf, exp, expm1, sqrt, acosh, acos, log, cosh, tanh, coth, sech, quad

mp.dps = 50


# ---------------------------------------------------------------- profiles

def k_radius(u, K, eps):
    """Hyperbolic (eps=-1) or spherical (eps=+1) radius of the u-circle."""
    s = 1 - mpf(u) ** 2
    if eps == -1:
        return acosh(exp(s / (2 * K)))
    return acos(exp(-s / (2 * K)))


def height_integrand(u, K, eps):
    """dh/du (up to sign) of the rotational-sphere generating curve."""
    s = 1 - mpf(u) ** 2
    if s == 0:
        return 1 / sqrt(K)
    if eps == -1:
        return sqrt(s) / (K * sqrt(-expm1(-s / K)))
    return sqrt(s) / (K * sqrt(expm1(s / K)))


def height_diff(u0, u1, K, eps):
    """h(u0) - h(u1) = integral of the height integrand over [u0, u1]."""
    return quad(lambda u: height_integrand(u, K, eps), [u0, u1])


def arc_length_to(u_stop, K):
    """Arc length along the eps=-1 generating curve from u=1 down to u_stop.

    dt/du = -1/(K tanh k); the sqrt singularity at u=1 is removed by the
    substitution u = 1 - xi^2.
    """
    def f(xi):
        s = xi ** 2 * (2 - xi ** 2)  # = 1 - (1 - xi^2)^2
        if s == 0:
            return sqrt(2 / K)
        ratio = s / (-expm1(-s / K))  # -> K as s -> 0
        return 2 * sqrt(ratio) / (K * sqrt(2 - xi ** 2))
    return quad(f, [0, sqrt(1 - mpf(u_stop))])


# ------------------------------------------------------- height machinery

def g_nu(nu, K, eps):
    s = 1 - mpf(nu) ** 2
    if s == 0:
        return mpf(eps) / (2 * K)
    return (nu ** 2 - 1 + eps * K * expm1(eps * s / K)) / s ** 2


def chi_nu(nu, K, eps):
    s = 1 - mpf(nu) ** 2
    if s == 0:
        return mpf(1)
    return eps * K * expm1(eps * s / K) / s


def f_prime(nu, K, eps):
    s = 1 - mpf(nu) ** 2
    if s == 0:
        return 1 / sqrt(K)
    return sqrt(eps * (-expm1(-eps * s / K)) / s)


def c_bound(K, eps):
    return quad(lambda t: f_prime(t, K, eps), [-1, 0])


# ----------------------------------------------------------------- output

def emit(name, value):
    print(f"pub const {name}: f64 = {mp.nstr(mpf(value), 17, strip_zeros=False)};")


print("// Generated by python/gen_reference_values.py -- do not edit by hand.")
print()
print("// rotational: radii and heights")
emit("K_MAX_H2R_K1", k_radius(0, 1, -1))
emit("K_MAX_S2R_K1", k_radius(0, 1, +1))
emit("K_MAX_H2R_K01", k_radius(0, mpf(1) / 10, -1))
emit("K_MAX_H2R_K10", k_radius(0, 10, -1))
emit("K_AT_HALF_H2R_K1", k_radius(mpf(1) / 2, 1, -1))
emit("K_AT_HALF_S2R_K1", k_radius(mpf(1) / 2, 1, +1))
emit("INTEGRAND_U0_H2R_K1", height_integrand(0, 1, -1))
emit("INTEGRAND_U0_S2R_K1", height_integrand(0, 1, +1))
emit("INTEGRAND_UHALF_H2R_K1", height_integrand(mpf(1) / 2, 1, -1))
emit("INTEGRAND_UHALF_S2R_K1", height_integrand(mpf(1) / 2, 1, +1))
emit("HALF_HEIGHT_H2R_K1", height_diff(-1, 0, 1, -1))
emit("HALF_HEIGHT_S2R_K1", height_diff(-1, 0, 1, +1))
emit("HALF_HEIGHT_H2R_K01", height_diff(-1, 0, mpf(1) / 10, -1))
emit("HALF_HEIGHT_H2R_K10", height_diff(-1, 0, 10, -1))
emit("H_AT_0_MINUS_H_AT_1_H2R_K1", height_diff(0, 1, 1, -1))
emit("H_AT_HALF_MINUS_H_AT_1_H2R_K1", height_diff(mpf(1) / 2, 1, 1, -1))
emit("H_AT_HALF_MINUS_H_AT_1_S2R_K1", height_diff(mpf(1) / 2, 1, 1, +1))
print()
print("// rotational: arc length and equator principal curvatures (eps=-1, K=1)")
emit("ARC_POLE_TO_EQUATOR_H2R_K1", arc_length_to(0, 1))
emit("ARC_TOTAL_H2R_K1", arc_length_to(-1, 1))
emit("LAMBDA1_EQUATOR_H2R_K1", tanh(k_radius(0, 1, -1)))
emit("LAMBDA2_EQUATOR_H2R_K1", coth(k_radius(0, 1, -1)))
print()
print("// estimates: g, chi, f' special values")
emit("G_NU0_K1_HYP", g_nu(0, 1, -1))
emit("G_NU0_K1_SPH", g_nu(0, 1, +1))
emit("G_NUHALF_K1_HYP", g_nu(mpf(1) / 2, 1, -1))
emit("CHI_NU0_K1_HYP", chi_nu(0, 1, -1))
emit("CHI_NU0_K1_SPH", chi_nu(0, 1, +1))
emit("CHI_NUHALF_K1_HYP", chi_nu(mpf(1) / 2, 1, -1))
emit("FPRIME_NU0_K1_HYP", f_prime(0, 1, -1))
emit("FPRIME_NU0_K1_SPH", f_prime(0, 1, +1))
emit("FPRIME_NUHALF_K1_HYP", f_prime(mpf(1) / 2, 1, -1))
print()
print("// estimates: height bounds c_K")
for K, name in [(mpf(1) / 10, "K01"), (mpf(1) / 2, "K05"), (1, "K1"),
                (2, "K2"), (10, "K10")]:
    emit(f"C_BOUND_HYP_{name}", c_bound(K, -1))
emit("C_BOUND_SPH_K1", c_bound(1, +1))
print()
print("// helicoidal")
emit("SECH_CUBED_1", sech(1) ** 3)
emit("TANH_HALF", tanh(mpf(1) / 2))
print()
print("// sanity echoes (not frozen): slack of the sphere height bound")
for K, name in [(mpf(1) / 10, "0.1"), (1, "1"), (10, "10")]:
    slack = c_bound(K, -1) - height_diff(-1, 0, K, -1)
    print(f"// c_bound - half_height @ K={name}, eps=-1: {mp.nstr(mpf(slack), 6)}")
