"""Very-well-poised series on a cubed or squared nome, expanded over the
base nome.

VJ12: W(a; x, qx, q^2 x, y, qy, q^2 y, z, qz, q^2 z) taken with nome q^3
and argument q^3 a^4/(xyz)^3, a twelve-parameter very-well-poised sum
whose tail consists of three geometric triples.

VJ10: W(a^2; b^2, x, qx, y, qy, z, qz) taken with nome q^2 and argument
q^3 a^6/(bxyz)^2, a ten-parameter very-well-poised sum with two
geometric pairs.

* VJ12_INT / VJ10_INT: the base-q theta-completed unit-circle contour
  integral representations, free scale h.
* VJ12_SIX: a theta-weighted combination of six 6phi5(q, q) series,
  three anchored at x, y, z and three anchored at the cube roots of a,
  free scale h.
* VJ10_FIVE: a theta-weighted combination of five 5phi4(q, q) series,
  three anchored at x, y, z and a pair anchored at the square roots of
  qa^2/b^2, free scale h.

Radicals come from principal roots resolved once per point: u = a^(1/6)
(so the cube roots of a are rho u^2 over the cube roots of unity rho and
the square roots of a are +-u^3), s = sqrt(qa/(xyz)), m = sqrt(xyz/q),
w = sqrt q.  Every root enters through sign pairs, cube-root triples, or
even powers, so the values are branch independent.
"""

from __future__ import annotations

import cmath
import math

from ..contour import SymmetricProblem, default_sigma, symmetric_integral
from ..hyperseries import phi as series_phi, spec as series_spec
from ..qcore import ParamSet, QBase, qpoch_multi, theta_multi
from .base import (Bound, Constraint, IdentityDescriptor, annulus,
                   direct_vwp, modulus_lt, nome, off_omega, off_upsilon,
                   ratios_off_upsilon, register)

_TWO_PI = 2.0 * math.pi
_OMEGA = cmath.exp(2j * cmath.pi / 3.0)


def _poch(q: QBase, *args) -> complex:
    return qpoch_multi(list(args), q)


def _phi(numer, denom, q: QBase, counters) -> complex:
    return series_phi(series_spec(numer, denom, q, q.q), counters)


def _derive_12(bnd: Bound, q: QBase) -> Bound:
    a = bnd["a"]
    u = a ** (1.0 / 6.0)
    bnd["u"] = u
    bnd["u2"] = u * u
    bnd["u3"] = u ** 3
    bnd["s"] = cmath.sqrt(q.q * a / (bnd["x"] * bnd["y"] * bnd["z"]))
    bnd["w"] = cmath.sqrt(q.q)
    return bnd


def _derive_10(bnd: Bound, q: QBase) -> Bound:
    bnd["m"] = cmath.sqrt(bnd["x"] * bnd["y"] * bnd["z"] / q.q)
    bnd["w"] = cmath.sqrt(q.q)
    return bnd


# --- series sides (cubed / squared nome) -------------------------------------

def _lhs_12(bnd: Bound, q: QBase, counters, eps) -> complex:
    a, x, y, z = bnd["a"], bnd["x"], bnd["y"], bnd["z"]
    qq = q.q
    tail = [x, qq * x, qq ** 2 * x, y, qq * y, qq ** 2 * y,
            z, qq * z, qq ** 2 * z]
    arg = qq ** 3 * a ** 4 / (x * y * z) ** 3
    return direct_vwp(a, tail, QBase(qq ** 3), arg, counters=counters)


def _lhs_10(bnd: Bound, q: QBase, counters, eps) -> complex:
    a, b, x, y, z = bnd["a"], bnd["b"], bnd["x"], bnd["y"], bnd["z"]
    qq = q.q
    tail = [b ** 2, x, qq * x, y, qq * y, z, qq * z]
    arg = qq ** 3 * a ** 6 / (b * x * y * z) ** 2
    return direct_vwp(a ** 2, tail, QBase(qq ** 2), arg, counters=counters)


# --- contour sides -----------------------------------------------------------

def _problem_12(bnd: Bound, q: QBase) -> SymmetricProblem:
    x, y, z = bnd["x"], bnd["y"], bnd["z"]
    s, u2, u3, w = bnd["s"], bnd["u2"], bnd["u3"], bnd["w"]
    om = _OMEGA
    aset = ParamSet.of(u3 * s, -u3 * s, w * u3 * s, -w * u3 * s, prefix="a")
    cset = ParamSet.of(x * s, y * s, z * s, u2 * s, om * u2 * s,
                       om * om * u2 * s, prefix="c")
    d1, d2 = 1.0 / s, s
    sigma = default_sigma(list(cset.values()), [d1, d2])
    return SymmetricProblem(aset, cset, d1, d2, bnd["h"], sigma, q)


def _problem_10(bnd: Bound, q: QBase) -> SymmetricProblem:
    a, b, x, y, z = bnd["a"], bnd["b"], bnd["x"], bnd["y"], bnd["z"]
    qq = q.q
    m, w = bnd["m"], bnd["w"]
    aset = ParamSet.of(w * a ** 2 / m, -w * a ** 2 / m,
                       qq * a ** 3 / (b ** 2 * m), prefix="a")
    cset = ParamSet.of(a * x / m, a * y / m, a * z / m,
                       w * a ** 2 / (b * m), -w * a ** 2 / (b * m),
                       prefix="c")
    d1, d2 = m / a, a / m
    sigma = default_sigma(list(cset.values()), [d1, d2])
    return SymmetricProblem(aset, cset, d1, d2, bnd["h"], sigma, q)


def _int_rhs_12(bnd: Bound, q: QBase, counters, eps) -> complex:
    a, x, y, z, h = bnd["a"], bnd["x"], bnd["y"], bnd["z"], bnd["h"]
    qq = q.q
    u2 = bnd["u2"]
    om = _OMEGA
    integral = symmetric_integral(_problem_12(bnd, q), eps, counters)
    pref = _poch(q, qq, qq * a, qq * a / (x * y), qq * a / (x * z),
                 qq * a / (y * z), x, y, z, u2, om * u2, om * om * u2) / (
        _TWO_PI * theta_multi([h, h * x * y * z / (qq * a)], q)
        * _poch(q, qq * a / x, qq * a / y, qq * a / z, a))
    return pref * integral


def _int_rhs_10(bnd: Bound, q: QBase, counters, eps) -> complex:
    a, b, x, y, z = bnd["a"], bnd["b"], bnd["x"], bnd["y"], bnd["z"]
    qq = q.q
    h = bnd["h"]
    a2 = a ** 2
    integral = symmetric_integral(_problem_10(bnd, q), eps, counters)
    pref = _poch(q, qq, qq * a, -qq * a, x, y, z, qq * a2 / (x * y),
                 qq * a2 / (x * z), qq * a2 / (y * z)) / (
        _TWO_PI * theta_multi([h, h * x * y * z / (qq * a2)], q)
        * _poch(q, qq * a / b, -qq * a / b, qq * a2 / x, qq * a2 / y,
                qq * a2 / z))
    return pref * integral


# --- six-term expansion of the cubed-nome series ------------------------------

def _t12_anchor(bnd: Bound, q: QBase, counters, h: complex, t: complex,
                o1: complex, o2: complex) -> complex:
    """Term anchored at a tail triple base t, the other two being o1, o2."""
    a = bnd["a"]
    qq = q.q
    u2, u3, w = bnd["u2"], bnd["u3"], bnd["w"]
    om = _OMEGA
    coef = theta_multi([h * t, h * o1 * o2 / (qq * a)], q) \
        * _poch(q, a / t ** 2) \
        / _poch(q, t, o1 / t, o2 / t, qq * a / (o1 * o2), u2 / t,
                om * u2 / t, om * om * u2 / t)
    return coef * _phi([t, qq * a / (o1 * o2), w * t / u3, -w * t / u3,
                        qq * t / u3, -qq * t / u3],
                       [qq * t / o1, qq * t / o2, qq * t / u2,
                        om * qq * t / u2, om * om * qq * t / u2],
                       q, counters)


def _t12_root(bnd: Bound, q: QBase, counters, h: complex,
              rho: complex) -> complex:
    """Term anchored at the cube root rho*u2 of a (rho a cube root of 1)."""
    a, x, y, z = bnd["a"], bnd["x"], bnd["y"], bnd["z"]
    qq = q.q
    u, u2, w = bnd["u"], bnd["u2"], bnd["w"]
    om = _OMEGA
    rb = rho * rho
    xyz = x * y * z
    coef = theta_multi([h * rho * u2, h * rb * xyz / (qq * a * u2)], q) \
        / _poch(q, qq * rho * a * u2 / xyz, rb * x / u2, rb * y / u2,
                rb * z / u2)
    return coef * _phi([rho * u2, qq * rho * a * u2 / xyz, w * rho / u,
                        -w * rho / u, qq * rho / u, -qq * rho / u],
                       [qq * om, qq * om * om, qq * rho * u2 / x,
                        qq * rho * u2 / y, qq * rho * u2 / z], q, counters)


def _six_rhs_12(bnd: Bound, q: QBase, counters, eps) -> complex:
    a, x, y, z, h = bnd["a"], bnd["x"], bnd["y"], bnd["z"], bnd["h"]
    qq = q.q
    u2 = bnd["u2"]
    om = _OMEGA
    overall = _poch(q, qq * a, x, y, z, qq * a / (x * y), qq * a / (x * z),
                    qq * a / (y * z), u2, om * u2, om * om * u2) / (
        theta_multi([h, h * x * y * z / (qq * a)], q)
        * _poch(q, qq * a / x, qq * a / y, qq * a / z, a))
    total = 0j
    for t, o1, o2 in ((x, y, z), (y, x, z), (z, x, y)):
        total += _t12_anchor(bnd, q, counters, h, t, o1, o2)
    roots = 0j
    for rho in (1.0 + 0j, om, om * om):
        roots += _t12_root(bnd, q, counters, h, rho)
    total += roots / _poch(q, om, om * om)
    return overall * total


# --- five-term expansion of the squared-nome series ---------------------------

def _t10_anchor(bnd: Bound, q: QBase, counters, h: complex, t: complex,
                o1: complex, o2: complex) -> complex:
    a, b = bnd["a"], bnd["b"]
    qq = q.q
    w = bnd["w"]
    a2 = a ** 2
    coef = theta_multi([h * t, h * o1 * o2 / (qq * a2)], q) \
        * _poch(q, w * a / t, -w * a / t, qq * a2 / (b ** 2 * t)) \
        / _poch(q, t, o1 / t, o2 / t, qq * a2 / (o1 * o2), w * a / (b * t),
                -w * a / (b * t))
    return coef * _phi([t, qq * a2 / (o1 * o2), w * t / a, -w * t / a,
                        b ** 2 * t / a2],
                       [qq * t / o1, qq * t / o2, w * b * t / a,
                        -w * b * t / a], q, counters)


def _t10_root(bnd: Bound, q: QBase, counters, h: complex,
              e: float) -> complex:
    """Term anchored at the square root e*w*a/b (times a/1) of q a^2/b^2;
    e is +-1."""
    a, b, x, y, z = bnd["a"], bnd["b"], bnd["x"], bnd["y"], bnd["z"]
    qq = q.q
    w = bnd["w"]
    xyz = x * y * z
    c2 = qq * w * a ** 3 / (b * xyz)
    coef = theta_multi([e * h * w * a / b,
                        e * h * b * xyz / (qq * w * a ** 3)], q) \
        / _poch(q, e * c2, e * b * x / (w * a), e * b * y / (w * a),
                e * b * z / (w * a))
    return coef * _phi([qq / b, -qq / b, e * w * a / b, e * w * b / a,
                        e * c2],
                       [-qq, e * qq * w * a / (b * x),
                        e * qq * w * a / (b * y),
                        e * qq * w * a / (b * z)], q, counters)


def _five_rhs_10(bnd: Bound, q: QBase, counters, eps) -> complex:
    a, b, x, y, z = bnd["a"], bnd["b"], bnd["x"], bnd["y"], bnd["z"]
    qq = q.q
    h = bnd["h"]
    a2 = a ** 2
    overall = _poch(q, qq * a, -qq * a, x, y, z, qq * a2 / (x * y),
                    qq * a2 / (x * z), qq * a2 / (y * z)) / (
        theta_multi([h, h * x * y * z / (qq * a2)], q)
        * _poch(q, qq * a / b, -qq * a / b, qq * a2 / x, qq * a2 / y,
                qq * a2 / z))
    total = 0j
    for t, o1, o2 in ((x, y, z), (y, x, z), (z, x, y)):
        total += _t10_anchor(bnd, q, counters, h, t, o1, o2)
    pair = _t10_root(bnd, q, counters, h, 1.0) \
        + _t10_root(bnd, q, counters, h, -1.0)
    total += pair * _poch(q, b, -b) / (2.0 * _poch(q, -qq))
    return overall * total


# --- constraints -------------------------------------------------------------

def _both_signs_off_omega(expr, label):
    return (off_omega(lambda b, e=expr: e(b), label),
            off_omega(lambda b, e=expr: -e(b), f"-({label})"))


def _common_12():
    om = _OMEGA
    return (
        modulus_lt(lambda b: b["q"] ** 3 * b["a"] ** 4,
                   lambda b: (b["x"] * b["y"] * b["z"]) ** 3,
                   "|q^3 a^4| < |(xyz)^3|", margin=1.05),
        ratios_off_upsilon(
            lambda b: (b["x"], b["y"], b["z"], b["u2"], om * b["u2"],
                       om * om * b["u2"]),
            "tail bases and cube roots of a"),
        off_omega(lambda b: b["a"] / b["x"] ** 2, "a/x^2"),
        off_omega(lambda b: b["a"] / b["y"] ** 2, "a/y^2"),
        off_omega(lambda b: b["a"] / b["z"] ** 2, "a/z^2"),
    )


def _h_12():
    return (
        off_upsilon(lambda b: b["h"], "h"),
        off_upsilon(lambda b: b["h"] * b["x"] * b["y"] * b["z"]
                    / (b["q"] * b["a"]), "h xyz/(qa)"),
    )


def _common_10():
    cons = [
        modulus_lt(lambda b: b["q"] ** 3 * b["a"] ** 6,
                   lambda b: (b["b"] * b["x"] * b["y"] * b["z"]) ** 2,
                   "|q^3 a^6| < |(bxyz)^2|", margin=1.05),
        ratios_off_upsilon(lambda b: (b["x"], b["y"], b["z"]),
                           "tail bases"),
    ]
    for t in ("x", "y", "z"):
        cons.extend(_both_signs_off_omega(
            lambda b, t=t: b["w"] * b["a"] / (b["b"] * b[t]), f"wa/(b{t})"))
        cons.extend(_both_signs_off_omega(
            lambda b, t=t: b["b"] * b[t] / (b["w"] * b["a"]), f"b{t}/(wa)"))
    return tuple(cons)


def _h_10():
    return (
        off_upsilon(lambda b: b["h"], "h"),
        off_upsilon(lambda b: b["h"] * b["x"] * b["y"] * b["z"]
                    / (b["q"] * b["a"] ** 2), "h xyz/(qa^2)"),
    )


def _sigma_exists_12(bnd, q, g):
    s = abs(bnd["s"])
    cmax = max(abs(bnd["x"]), abs(bnd["y"]), abs(bnd["z"]),
               abs(bnd["u2"])) * s
    dmax = max(s, 1.0 / s)
    return cmax * dmax < 0.97


def _sigma_exists_10(bnd, q, g):
    a, b, m, w = (abs(bnd["a"]), abs(bnd["b"]), abs(bnd["m"]),
                  abs(bnd["w"]))
    cmax = max(a * abs(bnd["x"]), a * abs(bnd["y"]), a * abs(bnd["z"]),
               w * a ** 2 / b) / m
    dmax = max(m / a, a / m)
    return cmax * dmax < 0.97


# --- registrations -----------------------------------------------------------

_BANDS_12 = (("q", nome(0.15, 0.3)),
             ("a", annulus(0.25, 0.45)),
             ("x", annulus(0.6, 0.85)),
             ("y", annulus(0.6, 0.85)),
             ("z", annulus(0.6, 0.85)),
             ("h", annulus(0.7, 1.4)))

_BANDS_10 = (("q", nome(0.15, 0.35)),
             ("a", annulus(0.3, 0.45)),
             ("b", annulus(0.45, 0.7)),
             ("x", annulus(0.45, 0.7)),
             ("y", annulus(0.45, 0.7)),
             ("z", annulus(0.45, 0.7)),
             ("h", annulus(0.7, 1.4)))


def register_all() -> None:
    register(IdentityDescriptor(
        id="VJ12_INT",
        summary=("very-well-poised series on the cubed nome with three "
                 "geometric tail triples equals a base-nome prefactor "
                 "times a theta-completed contour integral, free scale h"),
        family="verma_jain", kind="integral",
        free_params=_BANDS_12,
        lhs=_lhs_12, rhs=_int_rhs_12,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "quad"}),
        constraints=_common_12() + _h_12() + (
            off_upsilon(lambda b: b["h"] / b["s"], "h/s"),
            Constraint("no valid quadrature radius", _sigma_exists_12),
        ),
        derive=_derive_12,
        rhs_only_params=frozenset({"h"}),
    ))
    register(IdentityDescriptor(
        id="VJ12_SIX",
        summary=("very-well-poised series on the cubed nome equals a "
                 "theta-weighted combination of six 6phi5(q, q) series, "
                 "anchored at the tail bases and at the cube roots of the "
                 "special parameter, free scale h"),
        family="verma_jain", kind="sum",
        free_params=_BANDS_12,
        lhs=_lhs_12, rhs=_six_rhs_12,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=_common_12() + _h_12(),
        derive=_derive_12,
        rhs_only_params=frozenset({"h"}),
    ))
    register(IdentityDescriptor(
        id="VJ10_INT",
        summary=("very-well-poised series on the squared nome with two "
                 "geometric tail pairs equals a base-nome prefactor times "
                 "a theta-completed contour integral, free scale h"),
        family="verma_jain", kind="integral",
        free_params=_BANDS_10,
        lhs=_lhs_10, rhs=_int_rhs_10,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "quad"}),
        constraints=_common_10() + _h_10() + (
            off_upsilon(lambda b: b["h"] * b["m"] / b["a"], "h m/a"),
            Constraint("no valid quadrature radius", _sigma_exists_10),
        ),
        derive=_derive_10,
        rhs_only_params=frozenset({"h"}),
    ))
    register(IdentityDescriptor(
        id="VJ10_FIVE",
        summary=("very-well-poised series on the squared nome equals a "
                 "theta-weighted combination of five 5phi4(q, q) series, "
                 "anchored at the tail bases and at a plus-minus pair of "
                 "square roots, free scale h"),
        family="verma_jain", kind="sum",
        free_params=_BANDS_10,
        lhs=_lhs_10, rhs=_five_rhs_10,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=_common_10() + _h_10(),
        derive=_derive_10,
        rhs_only_params=frozenset({"h"}),
    ))
