"""Transformations of a nonterminating very-well-poised 5W4.

The series W(a; b, c; q, z) (very-well-poised with special parameter a and
tail b, c) is re-expressed as

* VWP54_INT: a prefactor times a theta-completed unit-circle contour
  integral with a free scale h.
* VWP54_FIVE: a theta-weighted sum of five 5phi4(q, q) series (all
  lattice factors explicit) with free scale h.
* VWP54_FOUR_A / VWP54_FOUR_B: four-term reductions at h = q^n z and
  h = q^(n-1) bc/a where the theta weight of the argument-z series
  vanishes; the integer n stays free and the value is n-independent.

Square-root composites come from three principal roots resolved once per
point: u = sqrt a, v = sqrt(bcz), w = sqrt q.
"""

from __future__ import annotations

import cmath
import math

from ..contour import SymmetricProblem, default_sigma, symmetric_integral
from ..hyperseries import phi as series_phi, spec as series_spec
from ..qcore import ParamSet, QBase, qpoch_multi, theta_multi
from .base import (Bound, Constraint, IdentityDescriptor, annulus,
                   direct_vwp, int_range, modulus_lt, nome, off_omega,
                   off_upsilon, register)


def _poch(q: QBase, *args) -> complex:
    return qpoch_multi(list(args), q)


def _phi54(numer, denom, q: QBase, counters) -> complex:
    return series_phi(series_spec(numer, denom, q, q.q), counters)


def _derive(bnd: Bound, q: QBase) -> Bound:
    a, b, c, z = bnd["a"], bnd["b"], bnd["c"], bnd["z"]
    bnd["u"] = cmath.sqrt(a)
    bnd["v"] = cmath.sqrt(b * c * z)
    bnd["w"] = cmath.sqrt(q.q)
    return bnd


def _lhs(bnd: Bound, q: QBase, counters, eps) -> complex:
    return direct_vwp(bnd["a"], [bnd["b"], bnd["c"]], q, bnd["z"],
                      counters=counters)


# --- term machinery shared by the five- and four-term forms -----------------

def _phi_a(bnd: Bound, q: QBase, counters, u2: complex) -> complex:
    """5phi4 attached to a square root u2 of qa (either sign)."""
    b, c = bnd["b"], bnd["c"]
    qq = q.q
    bcz = b * c * bnd["z"]
    w = bnd["w"]
    return _phi54([u2, qq * b / u2, qq * c / u2, bcz / u2, u2 / bcz],
                  [-qq, w, -w, qq * b * c / u2], q, counters)


def _phi_b(bnd: Bound, q: QBase, counters, u3: complex) -> complex:
    """5phi4 attached to u3 = (either sign of) q sqrt a."""
    b, c = bnd["b"], bnd["c"]
    qq = q.q
    bcz = b * c * bnd["z"]
    w = bnd["w"]
    return _phi54([u3, qq ** 2 * b / u3, qq ** 2 * c / u3, qq * bcz / u3,
                   u3 / bcz],
                  [-qq, qq * w, -qq * w, qq ** 2 * b * c / u3], q, counters)


def _phi_t5(bnd: Bound, q: QBase, counters) -> complex:
    a, b, c, z = bnd["a"], bnd["b"], bnd["c"], bnd["z"]
    qq = q.q
    u, w = bnd["u"], bnd["w"]
    return _phi54([qq / b, qq / c, qq * a / (b * c), z,
                   qq * a / ((b * c) ** 2 * z)],
                  [qq * u / (b * c), -qq * u / (b * c),
                   qq * w * u / (b * c), -qq * w * u / (b * c)], q, counters)


def _coef_a(bnd: Bound, q: QBase, u2: complex, th1: complex,
            th2: complex, with_minus_one: bool) -> complex:
    """Coefficient of the sqrt(qa)-type term; th1, th2 are the two theta
    arguments (already specialized)."""
    b, c = bnd["b"], bnd["c"]
    qq = q.q
    v, w = bnd["v"], bnd["w"]
    den = [w, -w, u2, u2 / (b * c), v ** 2 / u2]
    if with_minus_one:
        den.insert(0, -1.0)
    return theta_multi([th1, th2], q) \
        * _poch(q, u2 / b, u2 / c, qq * v ** 2 / u2) / _poch(q, *den)


def _coef_b(bnd: Bound, q: QBase, u3: complex, th1: complex,
            th2: complex, with_minus_one: bool) -> complex:
    b, c = bnd["b"], bnd["c"]
    qq = q.q
    v, w = bnd["v"], bnd["w"]
    den = [1.0 / w, -1.0 / w, u3, u3 / (qq * b * c), qq * v ** 2 / u3]
    if with_minus_one:
        den.insert(0, -1.0)
    return theta_multi([th1, th2], q) \
        * _poch(q, u3 / (qq * b), u3 / (qq * c), qq * v ** 2 / u3) \
        / _poch(q, *den)


def _t5_term(bnd: Bound, q: QBase, counters, h: complex) -> complex:
    a, b, c, z = bnd["a"], bnd["b"], bnd["c"], bnd["z"]
    qq = q.q
    coef = theta_multi([h / z, h * qq * a / (b * c)], q) \
        * _poch(q, b, c, (b * c) ** 2 * z / a) \
        / _poch(q, z, qq * a / (b * c), (b * c) ** 2 / (qq * a))
    return coef * _phi_t5(bnd, q, counters)


def _overall(bnd: Bound, q: QBase, theta_den: complex,
             factor_two: bool) -> complex:
    a, b, c, z = bnd["a"], bnd["b"], bnd["c"], bnd["z"]
    qq = q.q
    bcz = b * c * z
    den = _poch(q, bcz ** 2 / a, qq * a / b, qq * a / c)
    if factor_two:
        den *= 2.0 * _poch(q, -qq)
    return _poch(q, qq * a, bcz ** 2 / (qq * a), qq * a / (b * c)) \
        / (theta_den * den)


# --- constraints -------------------------------------------------------------

def _both_signs_off_omega(expr, label):
    return (off_omega(lambda b, e=expr: e(b), label),
            off_omega(lambda b, e=expr: -e(b), f"-({label})"))


def _common_constraints():
    cons = [
        modulus_lt(lambda b: b["z"], lambda b: 1.0, "|z| < 1", margin=1.05),
        off_omega(lambda b: b["q"] * b["a"] / b["b"], "qa/b"),
        off_omega(lambda b: b["q"] * b["a"] / b["c"], "qa/c"),
        off_omega(lambda b: b["z"], "z"),
        off_omega(lambda b: b["v"] ** 4 / b["a"], "(bcz)^2/a"),
        off_omega(lambda b: b["q"] * b["a"] / (b["b"] * b["c"]), "qa/(bc)"),
        off_omega(lambda b: (b["b"] * b["c"]) ** 2 / (b["q"] * b["a"]),
                  "(bc)^2/(qa)"),
    ]
    for expr, label in (
            (lambda b: b["u"], "sqrt a"),
            (lambda b: b["w"] * b["u"], "sqrt(qa)"),
            (lambda b: b["q"] * b["u"], "q sqrt a"),
            (lambda b: b["v"] ** 2 / (b["w"] * b["u"]), "bcz/sqrt(qa)"),
            (lambda b: b["v"] ** 2 / b["u"], "bcz/sqrt(a)"),
    ):
        cons.extend(_both_signs_off_omega(expr, label))
    for expr, label in (
            (lambda b: b["w"] * b["u"] / (b["b"] * b["c"]), "sqrt(qa)/(bc)"),
            (lambda b: b["u"] / (b["b"] * b["c"]), "sqrt(a)/(bc)"),
    ):
        cons.append(off_upsilon(lambda b, e=expr: e(b), label))
        cons.append(off_upsilon(lambda b, e=expr: -e(b), f"-({label})"))
    return tuple(cons)


def _h_constraints():
    return (
        off_upsilon(lambda b: b["h"], "h"),
        off_upsilon(lambda b: b["h"] * b["q"] * b["a"]
                    / (b["b"] * b["c"] * b["z"]), "h qa/(bcz)"),
    )


def _theta_weight_constraints():
    return (
        off_upsilon(lambda b: b["z"], "z (theta weight)"),
        off_upsilon(lambda b: b["q"] * b["a"] / (b["b"] * b["c"]),
                    "qa/(bc) (theta weight)"),
    )


# --- registrations -----------------------------------------------------------

def _register_int() -> None:

    def rhs(bnd, q, counters, eps):
        a, b, c, z, h = bnd["a"], bnd["b"], bnd["c"], bnd["z"], bnd["h"]
        u, v, w = bnd["u"], bnd["v"], bnd["w"]
        qq = q.q
        bcz = b * c * z
        aset = ParamSet.of(w * u * v / b, w * u * v / c, w * v ** 3 / u,
                           prefix="a")
        cset = ParamSet.of(v, -v, w * v, -w * v, w * u * z / v, prefix="c")
        d1, d2 = w * u / v, v / (w * u)
        f = v ** 2 / (u ** 2 * h)
        sigma = default_sigma(list(cset.values()), [d1, d2])
        p = SymmetricProblem(aset, cset, d1, d2, f, sigma, q)
        integral = symmetric_integral(p, eps, counters)
        pref = _poch(q, qq, qq * a, qq * a / (b * c), bcz ** 2 / (qq * a)) / (
            2.0 * math.pi * theta_multi([h, h * qq * a / bcz], q)
            * _poch(q, qq * a / b, qq * a / c, bcz ** 2 / a))
        return pref * integral

    def sigma_exists(bnd, q, g):
        u, v, w = abs(bnd["u"]), abs(bnd["v"]), abs(bnd["w"])
        z = abs(bnd["z"])
        cmax = max(v, w * v, w * u * z / v)
        dmax = max(w * u / v, v / (w * u))
        return cmax * dmax < 0.97

    register(IdentityDescriptor(
        id="VWP54_INT",
        summary=("very-well-poised 5W4 equals a q-factorial-ratio prefactor "
                 "times a theta-completed unit-circle contour integral"),
        family="vwp54", kind="integral",
        free_params=(("q", nome(0.25, 0.5)),
                     ("a", annulus(0.2, 0.5)),
                     ("b", annulus(0.35, 0.6)),
                     ("c", annulus(0.35, 0.6)),
                     ("z", annulus(0.15, 0.4)),
                     ("h", annulus(0.7, 1.4))),
        lhs=_lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "quad"}),
        constraints=_common_constraints() + _h_constraints() + (
            Constraint("no valid quadrature radius", sigma_exists),),
        derive=_derive,
        rhs_only_params=frozenset({"h"}),
    ))


def _register_five() -> None:

    def rhs(bnd, q, counters, eps):
        a, b, c, z, h = bnd["a"], bnd["b"], bnd["c"], bnd["z"], bnd["h"]
        qq = q.q
        u, v, w = bnd["u"], bnd["v"], bnd["w"]
        bcz = b * c * z
        pref = _overall(bnd, q, theta_multi([h, h * qq * a / bcz], q),
                        factor_two=False)
        total = 0j
        for u2 in (w * u, -w * u):
            coef = _coef_a(bnd, q, u2, h * u2, h * u2 / bcz,
                           with_minus_one=True)
            total += coef * _phi_a(bnd, q, counters, u2)
        for u3 in (qq * u, -qq * u):
            coef = _coef_b(bnd, q, u3, h * u3, h * u3 / (qq * bcz),
                           with_minus_one=True)
            total += coef * _phi_b(bnd, q, counters, u3)
        total += _t5_term(bnd, q, counters, h)
        return pref * total

    register(IdentityDescriptor(
        id="VWP54_FIVE",
        summary=("very-well-poised 5W4 equals a theta-weighted combination "
                 "of five 5phi4(q, q) series with a free scale h"),
        family="vwp54", kind="sum",
        free_params=(("q", nome(0.15, 0.5)),
                     ("a", annulus(0.2, 0.6)),
                     ("b", annulus(0.35, 0.75)),
                     ("c", annulus(0.35, 0.75)),
                     ("z", annulus(0.15, 0.6)),
                     ("h", annulus(0.7, 1.4))),
        lhs=_lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=_common_constraints() + _h_constraints(),
        derive=_derive,
        rhs_only_params=frozenset({"h"}),
    ))


def _four_rhs(bnd: Bound, q: QBase, counters, theta_kind: str) -> complex:
    """Shared four-term evaluator; theta_kind selects the h-specialization
    ("z" for h = q^n z, "bc" for h = q^(n-1) bc/a)."""
    a, b, c, z = bnd["a"], bnd["b"], bnd["c"], bnd["z"]
    qq = q.q
    u, v, w = bnd["u"], bnd["v"], bnd["w"]
    qn = qq ** int(bnd["n"].real)
    if theta_kind == "z":
        theta_den = theta_multi([qn * z, qn * qq * a / (b * c)], q)
    else:
        theta_den = theta_multi([qn * b * c / (qq * a), qn / z], q)
    pref = _overall(bnd, q, theta_den, factor_two=True)
    total = 0j
    for u2 in (w * u, -w * u):
        if theta_kind == "z":
            th = (qn * z * u2, qn * u2 / (b * c))
        else:
            th = (qn * b * c / u2, qn / (u2 * z))
        coef = _coef_a(bnd, q, u2, th[0], th[1], with_minus_one=False)
        total += coef * _phi_a(bnd, q, counters, u2)
    for u3 in (qq * u, -qq * u):
        if theta_kind == "z":
            th = (qn * z * u3, qn * u3 / (qq * b * c))
        else:
            th = (qn * qq * b * c / u3, qn / (u3 * z))
        coef = _coef_b(bnd, q, u3, th[0], th[1], with_minus_one=False)
        total += coef * _phi_b(bnd, q, counters, u3)
    return pref * total


def _register_four(suffix: str, theta_kind: str, what: str) -> None:

    def rhs(bnd, q, counters, eps):
        return _four_rhs(bnd, q, counters, theta_kind)

    register(IdentityDescriptor(
        id=f"VWP54_FOUR_{suffix}",
        summary=("four-term reduction of the five-term very-well-poised 5W4 "
                 f"transformation with the theta weight killed at {what}; "
                 "the integer n is free"),
        family="vwp54", kind="sum",
        free_params=(("q", nome(0.15, 0.5)),
                     ("a", annulus(0.2, 0.6)),
                     ("b", annulus(0.35, 0.75)),
                     ("c", annulus(0.35, 0.75)),
                     ("z", annulus(0.15, 0.6)),
                     ("n", int_range(-1, 2))),
        lhs=_lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=_common_constraints() + _theta_weight_constraints(),
        derive=_derive,
        rhs_only_params=frozenset({"n"}),
    ))


def register_all() -> None:
    _register_int()
    _register_five()
    _register_four("A", "z", "h = q^n z")
    _register_four("B", "bc", "h = q^(n-1) bc/a")
