"""Expansions of products and squares of nonterminating 2phi1 series.

Write P = 2phi1(a, b; c; q, z) * 2phi1(a, qa/c; qa/b; q, z) for the
product of two 2phi1 series sharing a and z, and S = (2phi1(a, b;
qa/b; q, z))^2 for the square (the c = qa/b case of P).

* GR_PROD_EXPANSION / GR_SQ_EXPANSION: P and S as sums of two
  6phi5(q, q) respectively two 5phi4(q, q) series.
* PROD21_INT / SQ21_INT: P and S as theta-completed unit-circle
  contour integrals divided by closed q-factorial prefactors, with a
  free scale h.
* PROD21_SIX / SQ21_FIVE: P and S as theta-weighted combinations of
  six 6phi5(q, q) respectively five 5phi4(q, q) series, free scale h.
* BD_SQ_A / BD_SQ_B: at z = -q/b the square S collapses to a closed
  product (needs |q| < |b|); the ids check the two-term and the
  theta-weighted four-term expansions of that closed value.

Square-root composites come from principal roots resolved once per
point: u = sqrt(cz/b), s = sqrt(az), w = sqrt q, and v := cz/u (the
square root of bcz tied to u so that u*v = cz exactly; an independent
principal root of bcz would detach the term pairs that mix u and v).
"""

from __future__ import annotations

import cmath
import math

from ..contour import SymmetricProblem, default_sigma, symmetric_integral
from ..hyperseries import phi as series_phi, spec as series_spec
from ..qcore import ParamSet, QBase, qpoch_multi, theta_multi
from .base import (Bound, Constraint, IdentityDescriptor, annulus,
                   direct_phi, modulus_lt, nome, off_omega, off_upsilon,
                   register)

_TWO_PI = 2.0 * math.pi


def _poch(q: QBase, *args) -> complex:
    return qpoch_multi(list(args), q)


def _phi(numer, denom, q: QBase, counters) -> complex:
    return series_phi(series_spec(numer, denom, q, q.q), counters)


def _derive_prod(bnd: Bound, q: QBase) -> Bound:
    b, c, z = bnd["b"], bnd["c"], bnd["z"]
    u = cmath.sqrt(c * z / b)
    bnd["u"] = u
    bnd["v"] = c * z / u
    bnd["s"] = cmath.sqrt(bnd["a"] * z)
    bnd["w"] = cmath.sqrt(q.q)
    return bnd


def _derive_sq(bnd: Bound, q: QBase) -> Bound:
    bnd["s"] = cmath.sqrt(bnd["a"] * bnd["z"])
    bnd["w"] = cmath.sqrt(q.q)
    return bnd


def _derive_bd(bnd: Bound, q: QBase) -> Bound:
    bnd["w"] = cmath.sqrt(q.q)
    return bnd


# --- series sides ------------------------------------------------------------

def _prod_lhs(bnd: Bound, q: QBase, counters, eps) -> complex:
    a, b, c, z = bnd["a"], bnd["b"], bnd["c"], bnd["z"]
    qq = q.q
    p1 = direct_phi([a, b], [c], q, z, counters=counters)
    p2 = direct_phi([a, qq * a / c], [qq * a / b], q, z, counters=counters)
    return p1 * p2


def _sq_lhs(bnd: Bound, q: QBase, counters, eps) -> complex:
    a, b, z = bnd["a"], bnd["b"], bnd["z"]
    p = direct_phi([a, b], [q.q * a / b], q, z, counters=counters)
    return p * p


def _bd_closed(bnd: Bound, q: QBase, counters, eps) -> complex:
    """Closed value of S at z = -q/b: the square of a product formula
    whose even-indexed factors live on the squared nome."""
    a, b = bnd["a"], bnd["b"]
    qq = q.q
    q2 = QBase(qq * qq)
    num = _poch(q, -qq, -qq) * qpoch_multi(
        [qq * a, qq * a, qq ** 2 * a / b ** 2, qq ** 2 * a / b ** 2], q2)
    return num / _poch(q, -qq / b, -qq / b, qq * a / b, qq * a / b)


# --- two-term expansions -----------------------------------------------------

def _gr_prod_rhs(bnd: Bound, q: QBase, counters, eps) -> complex:
    a, b, c, z = bnd["a"], bnd["b"], bnd["c"], bnd["z"]
    qq = q.q
    s, u, w = bnd["s"], bnd["u"], bnd["w"]
    e1 = s * u / z
    e2 = s / u
    t1 = _poch(q, a * z, a * b * z / c) / _poch(q, z, b * z / c) \
        * _phi([a, c / b, e1, -e1, w * e1, -w * e1],
               [c, a * z, qq * a / b, a * c / b, qq * c / (b * z)],
               q, counters)
    t2 = _poch(q, a, a * z, b * z, c / b, qq * a * z / c) \
        / _poch(q, z, z, c, qq * a / b, c / (b * z)) \
        * _phi([z, a * b * z / c, z * e2, -z * e2, w * z * e2, -w * z * e2],
               [a * z, b * z, qq * a * z / c, a * b * z ** 2 / c,
                qq * b * z / c], q, counters)
    return t1 + t2


def _gr_sq_rhs(bnd: Bound, q: QBase, counters, eps) -> complex:
    a, b, z = bnd["a"], bnd["b"], bnd["z"]
    qq = q.q
    w = bnd["w"]
    t1 = _poch(q, a * z, b ** 2 * z / qq) / _poch(q, z, b ** 2 * z / (qq * a)) \
        * _phi([a, qq * a / b ** 2, w * a / b, -w * a / b, -qq * a / b],
               [a * z, qq * a / b, qq * a ** 2 / b ** 2,
                qq ** 2 * a / (b ** 2 * z)], q, counters)
    t2 = _poch(q, a, a * z, b * z, b * z, qq * a / b ** 2) \
        / _poch(q, z, z, qq * a / b, qq * a / b, qq * a / (b ** 2 * z)) \
        * _phi([z, -b * z, b * z / w, -b * z / w, b ** 2 * z / qq],
               [a * z, b * z, b ** 2 * z ** 2 / qq, b ** 2 * z / a],
               q, counters)
    return t1 + t2


# --- contour sides -----------------------------------------------------------

def _prod_problem(bnd: Bound, q: QBase) -> SymmetricProblem:
    a, z = bnd["a"], bnd["z"]
    qq = q.q
    s, u, v, w = bnd["s"], bnd["u"], bnd["v"], bnd["w"]
    aset = ParamSet.of(v, a * z ** 2 / u, qq * a * z / v, a * u, prefix="a")
    cset = ParamSet.of(a * z / u, u, s, -s, w * s, -w * s, prefix="c")
    d1, d2 = u / z, z / u
    sigma = default_sigma(list(cset.values()), [d1, d2])
    return SymmetricProblem(aset, cset, d1, d2, bnd["h"], sigma, q)


def _sq_problem(bnd: Bound, q: QBase) -> SymmetricProblem:
    a, b, z = bnd["a"], bnd["b"], bnd["z"]
    s, w = bnd["s"], bnd["w"]
    aset = ParamSet.of(w * s, b * z * s / w, w * s * a / b, prefix="a")
    cset = ParamSet.of(b * s / w, w * s / b, s, -s, -w * s, prefix="c")
    d1, d2 = w * s / (b * z), b * z / (w * s)
    sigma = default_sigma(list(cset.values()), [d1, d2])
    return SymmetricProblem(aset, cset, d1, d2, bnd["h"], sigma, q)


def _prod21_int_rhs(bnd: Bound, q: QBase, counters, eps) -> complex:
    a, b, c, z, h = bnd["a"], bnd["b"], bnd["c"], bnd["z"], bnd["h"]
    qq = q.q
    integral = symmetric_integral(_prod_problem(bnd, q), eps, counters)
    pref = _poch(q, qq, a, c / b, a * b * z / c) / (
        _TWO_PI * theta_multi([h, h * c / (b * z)], q)
        * _poch(q, z, c, qq * a / b))
    return pref * integral


def _sq21_int_rhs(bnd: Bound, q: QBase, counters, eps) -> complex:
    a, b, z, h = bnd["a"], bnd["b"], bnd["z"], bnd["h"]
    qq = q.q
    integral = symmetric_integral(_sq_problem(bnd, q), eps, counters)
    pref = _poch(q, qq, a, qq * a / b ** 2, b ** 2 * z / qq) / (
        _TWO_PI * theta_multi([h, h * qq * a / (b ** 2 * z)], q)
        * _poch(q, z, qq * a / b, qq * a / b))
    return pref * integral


# --- six-term product expansion ----------------------------------------------

def _p6_t1(bnd: Bound, q: QBase, counters, h: complex) -> complex:
    a, b, c, z = bnd["a"], bnd["b"], bnd["c"], bnd["z"]
    qq = q.q
    s, u, w = bnd["s"], bnd["u"], bnd["w"]
    coef = theta_multi([h * a, h * c / (a * b * z)], q) \
        * _poch(q, qq / b, c / a, c / b, c / b) \
        / _poch(q, c, c / (a * b), c / (a * b), qq * a / b)
    return coef * _phi([a, b, qq * a / c, qq * b / c, a * b * z / c, qq / z],
                       [qq * a * b / c, w * s / u, -w * s / u,
                        qq * s / u, -qq * s / u], q, counters)


def _p6_t2(bnd: Bound, q: QBase, counters, h: complex) -> complex:
    a, b, c, z = bnd["a"], bnd["b"], bnd["c"], bnd["z"]
    qq = q.q
    s, u, w = bnd["s"], bnd["u"], bnd["w"]
    coef = theta_multi([h * c / b, h / z], q) \
        * _poch(q, a, a, b, qq * a / c, a * b * z / c, a * b * z / c) \
        / _poch(q, z, z, c, qq * a / b, a * b / c, a * b / c)
    return coef * _phi([qq / a, qq / b, c / a, c / b, z,
                        qq * c / (a * b * z)],
                       [qq * c / (a * b), w * u / s, -w * u / s,
                        qq * u / s, -qq * u / s], q, counters)


def _p6_mid(bnd: Bound, q: QBase, counters, h: complex,
            s2: complex) -> complex:
    """Term attached to a square root s2 of az (either sign)."""
    a, b, c, z = bnd["a"], bnd["b"], bnd["c"], bnd["z"]
    qq = q.q
    u, v, w = bnd["u"], bnd["v"], bnd["w"]
    coef = theta_multi([h * s2 * u / z, h * u / (z * s2), v / s2], q) \
        * _poch(q, a, c / b, a * b * z / c) \
        / _poch(q, -1.0, w, -w, z, c, qq * a / b, u / s2, s2 / u)
    return coef * _phi([s2 * u / z, v / s2, qq * s2 / v, qq * z / (u * s2),
                        z * s2 / u, qq * u / (z * s2)],
                       [-qq, w, -w, qq * s2 / u, qq * u / s2], q, counters)


def _p6_outer(bnd: Bound, q: QBase, counters, h: complex,
              s3: complex) -> complex:
    """Term attached to a square root s3 of qaz (either sign)."""
    a, b, c, z = bnd["a"], bnd["b"], bnd["c"], bnd["z"]
    qq = q.q
    u, v, w = bnd["u"], bnd["v"], bnd["w"]
    coef = theta_multi([h * s3 * u / z, h * u / (z * s3)], q) \
        * _poch(q, a, c / b, a * b * z / c, s3 * u / (qq * z), v / s3,
                s3 / v, z * s3 / (qq * u)) \
        / _poch(q, -1.0, 1.0 / w, -1.0 / w, z, c, qq * a / b, s3 * u / z,
                u / s3, s3 / (qq * u), z * s3 / u)
    return coef * _phi([s3 * u / z, qq * v / s3, qq * s3 / v,
                        qq ** 2 * z / (u * s3), z * s3 / u,
                        qq ** 2 * u / (z * s3)],
                       [-qq, qq * w, -qq * w, qq * s3 / u,
                        qq ** 2 * u / s3], q, counters)


def _prod21_six_rhs(bnd: Bound, q: QBase, counters, eps) -> complex:
    b, c, z, h = bnd["b"], bnd["c"], bnd["z"], bnd["h"]
    s, w = bnd["s"], bnd["w"]
    total = _p6_t1(bnd, q, counters, h) + _p6_t2(bnd, q, counters, h)
    for s2 in (s, -s):
        total += _p6_mid(bnd, q, counters, h, s2)
    for s3 in (w * s, -w * s):
        total += _p6_outer(bnd, q, counters, h, s3)
    return total / theta_multi([h, h * c / (b * z)], q)


# --- five-term square expansion ----------------------------------------------

def _s5_t1(bnd: Bound, q: QBase, counters, h: complex) -> complex:
    a, b, z = bnd["a"], bnd["b"], bnd["z"]
    qq = q.q
    w = bnd["w"]
    coef = theta_multi([h * a, h * qq / (b ** 2 * z)], q) \
        * _poch(q, qq / b, qq / b, qq * a / b ** 2, qq * a / b ** 2) \
        / _poch(q, qq * a / b, qq * a / b, qq / b ** 2, qq / b ** 2)
    return coef * _phi([a, b, b ** 2 / a, b ** 2 * z / qq, qq / z],
                       [b ** 2, b * w, -b * w, -b], q, counters)


def _s5_t2(bnd: Bound, q: QBase, counters, h: complex) -> complex:
    a, b, z = bnd["a"], bnd["b"], bnd["z"]
    qq = q.q
    w = bnd["w"]
    coef = theta_multi([h * qq * a / b ** 2, h / z], q) \
        * _poch(q, a, a, b, b, b ** 2 * z / qq, b ** 2 * z / qq) \
        / _poch(q, z, z, b ** 2 / qq, b ** 2 / qq, qq * a / b, qq * a / b)
    return coef * _phi([qq / a, qq / b, qq * a / b ** 2, z,
                        qq ** 2 / (b ** 2 * z)],
                       [qq ** 2 / b ** 2, qq * w / b, -qq * w / b, -qq / b],
                       q, counters)


def _s5_mid(bnd: Bound, q: QBase, counters, h: complex,
            w2: complex) -> complex:
    """Term attached to a square root w2 of q (either sign)."""
    a, b, z = bnd["a"], bnd["b"], bnd["z"]
    qq = q.q
    coef = theta_multi([h * a * w2 / b, h * w2 / (b * z)], q) \
        * _poch(q, w2, a, qq * a / b ** 2, b ** 2 * z / qq) \
        / _poch(q, -1.0, -w2, z, qq * a / b, qq * a / b, b / w2, w2 / b)
    return coef * _phi([w2, a * w2 / b, b * w2 / a, b * z / w2,
                        qq * w2 / (b * z)],
                       [-qq, -w2, b * w2, qq * w2 / b], q, counters)


def _s5_t5(bnd: Bound, q: QBase, counters, h: complex) -> complex:
    a, b, z = bnd["a"], bnd["b"], bnd["z"]
    qq = q.q
    w = bnd["w"]
    coef = theta_multi([-h * qq * a / b, -h / (b * z)], q) \
        * _poch(q, -1.0, a, -a / b, qq * a / b ** 2, -b * z / qq,
                b ** 2 * z / qq) \
        / _poch(q, z, -b * z, 1.0 / w, -1.0 / w, qq * a / b, qq * a / b,
                -qq * a / b, -1.0 / b, -b / qq)
    return coef * _phi([-qq, -b * z, -qq * a / b, -qq * b / a,
                        -qq ** 2 / (b * z)],
                       [-qq * b, qq * w, -qq * w, -qq ** 2 / b], q, counters)


def _sq21_five_rhs(bnd: Bound, q: QBase, counters, eps) -> complex:
    a, b, z, h = bnd["a"], bnd["b"], bnd["z"], bnd["h"]
    qq = q.q
    w = bnd["w"]
    total = _s5_t1(bnd, q, counters, h) + _s5_t2(bnd, q, counters, h)
    for w2 in (w, -w):
        total += _s5_mid(bnd, q, counters, h, w2)
    total += _s5_t5(bnd, q, counters, h)
    return total / theta_multi([h, h * qq * a / (b ** 2 * z)], q)


# --- closed square at z = -q/b -----------------------------------------------

def _bd_two_rhs(bnd: Bound, q: QBase, counters, eps) -> complex:
    a, b = bnd["a"], bnd["b"]
    qq = q.q
    w = bnd["w"]
    t1 = _poch(q, -b, -qq * a / b) / _poch(q, -qq / b, -b / a) \
        * _phi([a * w / b, -a * w / b, qq * a / b ** 2, a],
               [qq * a / b, -qq * a / b, qq * a ** 2 / b ** 2], q, counters)
    t2 = _poch(q, -qq, -qq, a, -qq * a / b, qq * a / b ** 2) \
        / _poch(q, qq * a / b, qq * a / b, -qq / b, -qq / b, -a / b) \
        * _phi([w, -w, -b, -qq / b], [-qq, -qq * a / b, -qq * b / a],
               q, counters)
    return t1 + t2


def _bd4_t1(bnd: Bound, q: QBase, counters, h: complex) -> complex:
    a, b = bnd["a"], bnd["b"]
    qq = q.q
    w = bnd["w"]
    coef = theta_multi([h * a, -h / b], q) \
        * _poch(q, qq / b, qq / b, qq * a / b ** 2, qq * a / b ** 2) \
        / _poch(q, qq * a / b, qq * a / b, qq / b ** 2, qq / b ** 2)
    return coef * _phi([a, b, -b, b ** 2 / a], [b ** 2, b * w, -b * w],
                       q, counters)


def _bd4_t2(bnd: Bound, q: QBase, counters, h: complex) -> complex:
    a, b = bnd["a"], bnd["b"]
    qq = q.q
    w = bnd["w"]
    coef = theta_multi([h * qq * a / b ** 2, -h * b / qq], q) \
        * _poch(q, a, a, b, -b, b, -b) \
        / _poch(q, -qq / b, -qq / b, b ** 2 / qq, b ** 2 / qq,
                qq * a / b, qq * a / b)
    return coef * _phi([qq * a / b ** 2, qq / b, -qq / b, qq / a],
                       [qq ** 2 / b ** 2, qq * w / b, -qq * w / b],
                       q, counters)


def _bd4_mid(bnd: Bound, q: QBase, counters, h: complex,
             w2: complex) -> complex:
    a, b = bnd["a"], bnd["b"]
    qq = q.q
    w = bnd["w"]
    coef = theta_multi([h * a * w2 / b, -h / w2], q) \
        * _poch(q, w2, a, -b, qq * a / b ** 2) \
        / _poch(q, -1.0, -w2, -qq / b, qq * a / b, qq * a / b,
                b / w2, w2 / b)
    return coef * _phi([a * w2 / b, b * w2 / a, w, -w],
                       [-qq, b * w2, qq * w2 / b], q, counters)


def _bd_four_rhs(bnd: Bound, q: QBase, counters, eps) -> complex:
    a, b, h = bnd["a"], bnd["b"], bnd["h"]
    w = bnd["w"]
    total = _bd4_t1(bnd, q, counters, h) + _bd4_t2(bnd, q, counters, h)
    for w2 in (w, -w):
        total += _bd4_mid(bnd, q, counters, h, w2)
    return total / theta_multi([h, -h * a / b], q)


# --- constraints -------------------------------------------------------------

def _z_lt_one():
    return modulus_lt(lambda b: b["z"], lambda b: 1.0, "|z| < 1",
                      margin=1.05)


def _both_signs_off_omega(expr, label):
    return (off_omega(lambda b, e=expr: e(b), label),
            off_omega(lambda b, e=expr: -e(b), f"-({label})"))


def _gr_prod_constraints():
    return (
        _z_lt_one(),
        off_omega(lambda b: b["q"] * b["a"] / b["b"], "qa/b"),
        off_omega(lambda b: b["a"] * b["c"] / b["b"], "ac/b"),
        off_omega(lambda b: b["c"] / (b["b"] * b["z"]), "c/(bz)"),
        off_omega(lambda b: b["q"] * b["c"] / (b["b"] * b["z"]), "qc/(bz)"),
        off_omega(lambda b: b["b"] * b["z"] / b["c"], "bz/c"),
    )


def _gr_sq_constraints():
    return (
        _z_lt_one(),
        off_omega(lambda b: b["q"] * b["a"] / b["b"], "qa/b"),
        off_omega(lambda b: b["q"] * b["a"] / b["b"] ** 2, "qa/b^2"),
        off_omega(lambda b: b["b"] ** 2 * b["z"] / (b["q"] * b["a"]),
                  "b^2 z/(qa)"),
        off_omega(lambda b: b["q"] * b["a"] / (b["b"] ** 2 * b["z"]),
                  "qa/(b^2 z)"),
        off_omega(lambda b: b["q"] ** 2 * b["a"] / (b["b"] ** 2 * b["z"]),
                  "q^2 a/(b^2 z)"),
        off_omega(lambda b: b["b"] ** 2 * b["z"] / b["a"], "b^2 z/a"),
    )


def _prod_h_constraints():
    return (
        off_upsilon(lambda b: b["h"], "h"),
        off_upsilon(lambda b: b["h"] * b["c"] / (b["b"] * b["z"]),
                    "h c/(bz)"),
    )


def _sq_h_constraints():
    return (
        off_upsilon(lambda b: b["h"], "h"),
        off_upsilon(lambda b: b["h"] * b["q"] * b["a"]
                    / (b["b"] ** 2 * b["z"]), "h qa/(b^2 z)"),
    )


def _prod_six_constraints():
    cons = [
        _z_lt_one(),
        off_omega(lambda b: b["c"] / (b["a"] * b["b"]), "c/(ab)"),
        off_omega(lambda b: b["a"] * b["b"] / b["c"], "ab/c"),
        off_omega(lambda b: b["q"] * b["a"] / b["b"], "qa/b"),
    ]
    for expr, label in (
            (lambda b: b["w"] * b["s"] / b["u"], "sqrt(qac/b)/... ws/u"),
            (lambda b: b["w"] * b["u"] / b["s"], "wu/s"),
            (lambda b: b["q"] * b["u"] / b["s"], "qu/s"),
            (lambda b: b["u"] / b["s"], "u/s"),
            (lambda b: b["s"] / b["u"], "s/u"),
            (lambda b: b["w"] * b["s"] * b["u"] / b["z"], "wsu/z"),
            (lambda b: b["u"] / (b["w"] * b["s"]), "u/(ws)"),
            (lambda b: b["w"] * b["s"] / (b["q"] * b["u"]), "ws/(qu)"),
    ):
        cons.extend(_both_signs_off_omega(expr, label))
    return tuple(cons)


def _sq_five_constraints():
    cons = [
        _z_lt_one(),
        off_omega(lambda b: b["q"] * b["a"] / b["b"], "qa/b"),
        off_omega(lambda b: b["q"] * b["a"] / b["b"] ** 2, "qa/b^2"),
        off_omega(lambda b: b["q"] / b["b"] ** 2, "q/b^2"),
        off_omega(lambda b: b["b"] ** 2 / b["q"], "b^2/q"),
        off_omega(lambda b: -1.0 / b["b"], "-1/b"),
        off_omega(lambda b: -b["b"] / b["q"], "-b/q"),
    ]
    for expr, label in (
            (lambda b: b["b"] / b["w"], "b/w"),
            (lambda b: b["w"] / b["b"], "w/b"),
    ):
        cons.extend(_both_signs_off_omega(expr, label))
    return tuple(cons)


def _bd_constraints():
    return (
        modulus_lt(lambda b: b["q"], lambda b: b["b"], "|q| < |b|",
                   margin=1.05),
        off_omega(lambda b: -b["b"] / b["a"], "-b/a"),
        off_omega(lambda b: -b["a"] / b["b"], "-a/b"),
        off_omega(lambda b: -b["q"] * b["b"] / b["a"], "-qb/a"),
    )


def _bd_four_constraints():
    cons = [
        modulus_lt(lambda b: b["q"], lambda b: b["b"], "|q| < |b|",
                   margin=1.05),
        off_upsilon(lambda b: b["h"], "h"),
        off_upsilon(lambda b: -b["h"] * b["a"] / b["b"], "-h a/b"),
        off_omega(lambda b: b["q"] / b["b"] ** 2, "q/b^2"),
        off_omega(lambda b: b["b"] ** 2 / b["q"], "b^2/q"),
        off_omega(lambda b: b["q"] * b["a"] / b["b"] ** 2, "qa/b^2"),
    ]
    for expr, label in (
            (lambda b: b["b"] / b["w"], "b/w"),
            (lambda b: b["w"] / b["b"], "w/b"),
    ):
        cons.extend(_both_signs_off_omega(expr, label))
    return tuple(cons)


def _prod_sigma_exists(bnd, q, g):
    s, u, w = abs(bnd["s"]), abs(bnd["u"]), abs(bnd["w"])
    a, z = abs(bnd["a"]), abs(bnd["z"])
    cmax = max(a * z / u, u, s, w * s)
    dmax = max(u / z, z / u)
    return cmax * dmax < 0.97


def _sq_sigma_exists(bnd, q, g):
    s, w = abs(bnd["s"]), abs(bnd["w"])
    a, b, z = abs(bnd["a"]), abs(bnd["b"]), abs(bnd["z"])
    cmax = max(b * s / w, w * s / b, s, w * s)
    dmax = max(w * s / (b * z), b * z / (w * s))
    return cmax * dmax < 0.97


# --- registrations -----------------------------------------------------------

def _register_gr() -> None:
    register(IdentityDescriptor(
        id="GR_PROD_EXPANSION",
        summary=("product of two nonterminating 2phi1 series sharing a and "
                 "z equals a sum of two 6phi5(q, q) series"),
        family="prod_sq", kind="sum",
        free_params=(("q", nome(0.15, 0.45)),
                     ("a", annulus(0.2, 0.6)),
                     ("b", annulus(0.3, 0.7)),
                     ("c", annulus(0.3, 0.7)),
                     ("z", annulus(0.15, 0.5))),
        lhs=_prod_lhs, rhs=_gr_prod_rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=_gr_prod_constraints(),
        derive=_derive_prod,
    ))
    register(IdentityDescriptor(
        id="GR_SQ_EXPANSION",
        summary=("square of a nonterminating 2phi1 with denominator "
                 "parameter qa/b equals a sum of two 5phi4(q, q) series"),
        family="prod_sq", kind="sum",
        free_params=(("q", nome(0.15, 0.4)),
                     ("a", annulus(0.2, 0.6)),
                     ("b", annulus(0.45, 0.75)),
                     ("z", annulus(0.15, 0.4))),
        lhs=_sq_lhs, rhs=_gr_sq_rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=_gr_sq_constraints(),
        derive=_derive_sq,
    ))


def _register_int() -> None:
    register(IdentityDescriptor(
        id="PROD21_INT",
        summary=("product of two nonterminating 2phi1 series equals a "
                 "theta-completed unit-circle contour integral divided by "
                 "a closed q-factorial prefactor, free scale h"),
        family="prod_sq", kind="integral",
        free_params=(("q", nome(0.15, 0.4)),
                     ("a", annulus(0.2, 0.5)),
                     ("b", annulus(0.5, 0.7)),
                     ("c", annulus(0.25, 0.4)),
                     ("z", annulus(0.15, 0.35)),
                     ("h", annulus(0.7, 1.4))),
        lhs=_prod_lhs, rhs=_prod21_int_rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "quad"}),
        constraints=(_z_lt_one(),) + _prod_h_constraints() + (
            off_upsilon(lambda b: b["h"] * b["u"] / b["z"], "h u/z"),
            off_omega(lambda b: b["a"], "a"),
            Constraint("no valid quadrature radius", _prod_sigma_exists),
        ),
        derive=_derive_prod,
        rhs_only_params=frozenset({"h"}),
    ))
    register(IdentityDescriptor(
        id="SQ21_INT",
        summary=("square of a nonterminating 2phi1 equals a theta-completed "
                 "unit-circle contour integral divided by a closed "
                 "q-factorial prefactor, free scale h"),
        family="prod_sq", kind="integral",
        free_params=(("q", nome(0.15, 0.4)),
                     ("a", annulus(0.2, 0.5)),
                     ("b", annulus(0.45, 0.75)),
                     ("z", annulus(0.15, 0.4)),
                     ("h", annulus(0.7, 1.4))),
        lhs=_sq_lhs, rhs=_sq21_int_rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "quad"}),
        constraints=(_z_lt_one(),) + _sq_h_constraints() + (
            off_upsilon(lambda b: b["h"] * b["w"] * b["s"]
                        / (b["b"] * b["z"]), "h ws/(bz)"),
            off_omega(lambda b: b["a"], "a"),
            off_omega(lambda b: b["q"] * b["a"] / b["b"] ** 2, "qa/b^2"),
            off_omega(lambda b: b["b"] ** 2 * b["z"] / b["q"], "b^2 z/q"),
            Constraint("no valid quadrature radius", _sq_sigma_exists),
        ),
        derive=_derive_sq,
        rhs_only_params=frozenset({"h"}),
    ))


def _register_multi() -> None:
    register(IdentityDescriptor(
        id="PROD21_SIX",
        summary=("product of two nonterminating 2phi1 series equals a "
                 "theta-weighted combination of six 6phi5(q, q) series "
                 "with a free scale h"),
        family="prod_sq", kind="sum",
        free_params=(("q", nome(0.15, 0.4)),
                     ("a", annulus(0.2, 0.5)),
                     ("b", annulus(0.5, 0.7)),
                     ("c", annulus(0.25, 0.4)),
                     ("z", annulus(0.15, 0.35)),
                     ("h", annulus(0.7, 1.4))),
        lhs=_prod_lhs, rhs=_prod21_six_rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=_prod_six_constraints() + _prod_h_constraints(),
        derive=_derive_prod,
        rhs_only_params=frozenset({"h"}),
    ))
    register(IdentityDescriptor(
        id="SQ21_FIVE",
        summary=("square of a nonterminating 2phi1 equals a theta-weighted "
                 "combination of five 5phi4(q, q) series with a free "
                 "scale h"),
        family="prod_sq", kind="sum",
        free_params=(("q", nome(0.15, 0.4)),
                     ("a", annulus(0.2, 0.5)),
                     ("b", annulus(0.45, 0.75)),
                     ("z", annulus(0.15, 0.4)),
                     ("h", annulus(0.7, 1.4))),
        lhs=_sq_lhs, rhs=_sq21_five_rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=_sq_five_constraints() + _sq_h_constraints(),
        derive=_derive_sq,
        rhs_only_params=frozenset({"h"}),
    ))


def _register_bd() -> None:
    register(IdentityDescriptor(
        id="BD_SQ_A",
        summary=("closed product value of the squared 2phi1 at argument "
                 "-q/b equals a sum of two 4phi3(q, q) series"),
        family="prod_sq", kind="sum",
        free_params=(("q", nome(0.15, 0.35)),
                     ("a", annulus(0.2, 0.6)),
                     ("b", annulus(0.5, 0.8))),
        lhs=_bd_closed, rhs=_bd_two_rhs,
        lhs_tags=frozenset({"qcore"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=_bd_constraints(),
        derive=_derive_bd,
    ))
    register(IdentityDescriptor(
        id="BD_SQ_B",
        summary=("closed product value of the squared 2phi1 at argument "
                 "-q/b equals a theta-weighted combination of four "
                 "4phi3(q, q) series with a free scale h"),
        family="prod_sq", kind="sum",
        free_params=(("q", nome(0.15, 0.35)),
                     ("a", annulus(0.2, 0.6)),
                     ("b", annulus(0.5, 0.8)),
                     ("h", annulus(0.7, 1.4))),
        lhs=_bd_closed, rhs=_bd_four_rhs,
        lhs_tags=frozenset({"qcore"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=_bd_four_constraints(),
        derive=_derive_bd,
        rhs_only_params=frozenset({"h"}),
    ))


def register_all() -> None:
    _register_gr()
    _register_int()
    _register_multi()
    _register_bd()
