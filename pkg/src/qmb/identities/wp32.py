"""Transformations of a nonterminating well-poised 3phi2.

The series phi(a, b, c; qa/b, qa/c; q, z) (well-poised: each column pair
multiplies to qa) is re-expressed as

* WP32_INT: a prefactor times a unit-circle contour integral whose
  integrand is a ratio of infinite q-shifted factorials; the free scale h
  enters the prefactor and the integrand but not the value.
* WP32_SUM2: the classical sum of two 5phi4(q, q) series.
* WP32_FIVE: a theta-weighted sum of five 5phi4(q, q) series with a free
  theta parameter h.
* WP32_FOUR_A / WP32_FOUR_B: four-term reductions of the five-term form
  at h = z and h = bc/(qa), where one theta weight vanishes.

All square-root composites are built from three principal roots resolved
once per point (u = sqrt a, v = sqrt(bcz), w = sqrt q); evaluating each
radical independently flips residue pairings and breaks the identities.
"""

from __future__ import annotations

import cmath
import math

from ..contour import SymmetricProblem, default_sigma, symmetric_integral
from ..hyperseries import phi as series_phi, spec as series_spec
from ..qcore import ParamSet, QBase, qpoch_multi, theta_multi
from .base import (Bound, Constraint, IdentityDescriptor, annulus,
                   bounded_cancellation, direct_phi, modulus_lt, nome,
                   off_omega, off_upsilon, register)


def _poch(q: QBase, *args) -> complex:
    return qpoch_multi(list(args), q)


def _derive(bnd: Bound, q: QBase) -> Bound:
    a, b, c, z = bnd["a"], bnd["b"], bnd["c"], bnd["z"]
    bnd["u"] = cmath.sqrt(a)
    bnd["v"] = cmath.sqrt(b * c * z)
    bnd["w"] = cmath.sqrt(q.q)
    return bnd


def _lhs(bnd: Bound, q: QBase, counters, eps) -> complex:
    a, b, c, z = bnd["a"], bnd["b"], bnd["c"], bnd["z"]
    qq = q.q
    return direct_phi([a, b, c], [qq * a / b, qq * a / c], q, z,
                      counters=counters)


def _phi54(numer, denom, q: QBase, counters) -> complex:
    return series_phi(series_spec(numer, denom, q, q.q), counters)


def _e_term(bnd: Bound, q: QBase, counters, v: complex, h: complex) -> complex:
    """5phi4 term attached to a square root v of a (either sign)."""
    b, c, z = bnd["b"], bnd["c"], bnd["z"]
    qq = q.q
    bcz = b * c * z
    w = bnd["w"]
    coef = theta_multi([h * v, h * qq * v / bcz], q) \
        * _poch(q, qq * v / b, qq * v / c, bcz / (qq * v)) \
        / _poch(q, v, qq * v / (b * c), bcz / (qq * v))
    return coef * _phi54([v, b / v, c / v, bcz / (qq * v), qq ** 2 * v / bcz],
                         [-qq, w, -w, b * c / v], q, counters)


def _f_term(bnd: Bound, q: QBase, counters, u2: complex, h: complex) -> complex:
    """5phi4 term attached to a square root u2 of qa (either sign).

    The coefficient carries the lattice factor q/(1-q) coming from
    (+-q^(-1/2), -1; q)_inf = -2(1-q)/q in the residue grouping.
    """
    b, c, z = bnd["b"], bnd["c"], bnd["z"]
    qq = q.q
    bcz = b * c * z
    w = bnd["w"]
    coef = theta_multi([h * u2, h * u2 / bcz], q) \
        * _poch(q, u2 / b, u2 / c, bcz / (qq * u2)) \
        / _poch(q, u2, u2 / (b * c), bcz / u2)
    coef *= qq / (1.0 - qq)
    return coef * _phi54([u2, qq * b / u2, qq * c / u2, bcz / u2,
                          qq ** 2 * u2 / bcz],
                         [-qq, qq * w, -qq * w, qq * b * c / u2], q, counters)


def _t1_term(bnd: Bound, q: QBase, counters, h: complex) -> complex:
    """The 5phi4 term with series parameter z (dies when h hits q^n z)."""
    a, b, c, z = bnd["a"], bnd["b"], bnd["c"], bnd["z"]
    qq = q.q
    bcz = b * c * z
    u, w = bnd["u"], bnd["w"]
    coef = theta_multi([h / z, h * qq * a / (b * c)], q) \
        * _poch(q, a, b, c, (b * c) ** 2 * z / (qq ** 2 * a)) \
        / (theta_multi([h, h * qq * a / bcz], q)
           * _poch(q, qq * a / b, qq * a / c, (b * c) ** 2 / (qq ** 2 * a), z))
    return coef * _phi54(
        [qq / b, qq / c, qq * a / (b * c), z, qq ** 3 * a / ((b * c) ** 2 * z)],
        [w ** 3 * u / (b * c), -w ** 3 * u / (b * c),
         qq ** 2 * u / (b * c), -qq ** 2 * u / (b * c)], q, counters)


def _half_prefactor(bnd: Bound, q: QBase, h: complex) -> complex:
    a, b, c, z = bnd["a"], bnd["b"], bnd["c"], bnd["z"]
    qq = q.q
    return _poch(q, a, qq * a / (b * c)) / (
        2.0 * theta_multi([h, h * qq * a / (b * c * z)], q)
        * _poch(q, qq * a / b, qq * a / c))


def _five_parts(bnd: Bound, q: QBase, counters, h: complex):
    """Top-level addends of the five-term side at weight h."""
    u, w = bnd["u"], bnd["w"]
    u2 = w * u
    half = _half_prefactor(bnd, q, h)
    return (_t1_term(bnd, q, counters, h),
            half * _e_term(bnd, q, counters, u, h),
            half * _e_term(bnd, q, counters, -u, h),
            -half * _f_term(bnd, q, counters, u2, h),
            -half * _f_term(bnd, q, counters, -u2, h))


def _common_constraints():
    """Admissibility shared by every entry: argument inside the unit disk,
    well-poised denominators off the pole lattice, key composite
    denominators clear of lattice points."""
    return (
        modulus_lt(lambda b: b["z"], lambda b: 1.0, "|z| < 1", margin=1.05),
        off_omega(lambda b: b["q"] * b["a"] / b["b"], "qa/b"),
        off_omega(lambda b: b["q"] * b["a"] / b["c"], "qa/c"),
        off_omega(lambda b: b["z"], "z"),
        off_omega(lambda b: b["b"] * b["z"], "bz"),
        off_omega(lambda b: b["c"] * b["z"], "cz"),
        off_omega(lambda b: b["b"] * b["c"] * b["z"] / b["q"], "bcz/q"),
        off_omega(lambda b: (b["b"] * b["c"] * b["z"]) ** 2
                  / (b["q"] ** 2 * b["a"]), "(bcz)^2/(q^2 a)"),
        off_upsilon(lambda b: b["b"] * b["c"] * b["z"] / b["a"], "bcz/a"),
        off_omega(lambda b: b["u"], "sqrt a"),
        off_omega(lambda b: -b["u"], "-sqrt a"),
        off_omega(lambda b: b["w"] * b["u"], "sqrt(qa)"),
        off_omega(lambda b: -b["w"] * b["u"], "-sqrt(qa)"),
        off_omega(lambda b: b["v"] ** 2 / (b["q"] * b["u"]), "bcz/(q sqrt a)"),
        off_omega(lambda b: -b["v"] ** 2 / (b["q"] * b["u"]),
                  "-bcz/(q sqrt a)"),
        off_omega(lambda b: b["v"] ** 2 / (b["w"] * b["u"]),
                  "bcz/sqrt(qa)"),
        off_omega(lambda b: -b["v"] ** 2 / (b["w"] * b["u"]),
                  "-bcz/sqrt(qa)"),
        off_omega(lambda b: (b["b"] * b["c"]) ** 2 / (b["q"] ** 2 * b["a"]),
                  "(bc)^2/(q^2 a)"),
        off_omega(lambda b: b["q"] * b["u"] / (b["b"] * b["c"]),
                  "q sqrt(a)/(bc)"),
        off_omega(lambda b: -b["q"] * b["u"] / (b["b"] * b["c"]),
                  "-q sqrt(a)/(bc)"),
        off_omega(lambda b: b["w"] * b["u"] / (b["b"] * b["c"]),
                  "sqrt(qa)/(bc)"),
        off_omega(lambda b: -b["w"] * b["u"] / (b["b"] * b["c"]),
                  "-sqrt(qa)/(bc)"),
    )


def _h_constraints():
    return (
        off_upsilon(lambda b: b["h"], "h"),
        off_upsilon(lambda b: b["h"] * b["q"] * b["a"]
                    / (b["b"] * b["c"] * b["z"]), "h qa/(bcz)"),
    )


def _register_int() -> None:

    def rhs(bnd, q, counters, eps):
        a, b, c, z, h = bnd["a"], bnd["b"], bnd["c"], bnd["z"], bnd["h"]
        u, v, w = bnd["u"], bnd["v"], bnd["w"]
        qq = q.q
        aset = ParamSet.of(qq * u * v / c, qq * u * v / b, v ** 3 / (qq * u),
                           prefix="a")
        cset = ParamSet.of(v, -v, w * v, -w * v, qq * u * z / v, prefix="c")
        d1, d2 = u / v, v / (qq * u)
        f = v ** 2 / (u ** 2 * h)
        sigma = default_sigma(list(cset.values()), [d1, d2])
        p = SymmetricProblem(aset, cset, d1, d2, f, sigma, q)
        integral = symmetric_integral(p, eps, counters)
        pref = _poch(q, qq, a, qq * a / (b * c)) / (
            2.0 * math.pi * theta_multi([h, h * qq * a / (b * c * z)], q)
            * _poch(q, qq * a / b, qq * a / c))
        return pref * integral

    def sigma_exists(bnd, q, g):
        u, v, w = abs(bnd["u"]), abs(bnd["v"]), abs(bnd["w"])
        z, qq = abs(bnd["z"]), abs(bnd["q"])
        cmax = max(v, w * v, qq * u * z / v)
        dmax = max(u / v, v / (qq * u))
        return cmax * dmax < 0.97

    register(IdentityDescriptor(
        id="WP32_INT",
        summary=("well-poised 3phi2 equals a q-factorial-ratio prefactor "
                 "times a theta-completed unit-circle contour integral"),
        family="wp32", kind="integral",
        free_params=(("q", nome(0.25, 0.55)),
                     ("a", annulus(0.25, 0.7)),
                     ("b", annulus(0.25, 0.5)),
                     ("c", annulus(0.25, 0.5)),
                     ("z", annulus(0.15, 0.45)),
                     ("h", annulus(0.7, 1.4))),
        lhs=_lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "quad"}),
        constraints=_common_constraints() + _h_constraints() + (
            Constraint("no valid quadrature radius", sigma_exists),),
        derive=_derive,
        rhs_only_params=frozenset({"h"}),
    ))


def _register_sum2() -> None:

    def rhs(bnd, q, counters, eps):
        a, b, c, z = bnd["a"], bnd["b"], bnd["c"], bnd["z"]
        u, w = bnd["u"], bnd["w"]
        qq = q.q
        bcz = b * c * z
        u2 = w * u
        t1 = _poch(q, bcz / qq) / _poch(q, bcz / (qq * a)) * _phi54(
            [u, -u, u2, -u2, qq * a / (b * c)],
            [qq * a / b, qq * a / c, bcz / qq, qq ** 2 * a / bcz], q, counters)
        t2 = _poch(q, a, b * z, c * z, qq * a / (b * c)) \
            / _poch(q, qq * a / b, qq * a / c, z, qq * a / bcz) * _phi54(
            [bcz / (qq * u), -bcz / (qq * u), bcz / u2, -bcz / u2, z],
            [b * z, c * z, bcz / a, bcz ** 2 / (qq ** 2 * a)], q, counters)
        return t1 + t2

    register(IdentityDescriptor(
        id="WP32_SUM2",
        summary=("well-poised 3phi2 with arbitrary argument equals a sum of "
                 "two 5phi4(q, q) series"),
        family="wp32", kind="sum",
        free_params=(("q", nome(0.15, 0.55)),
                     ("a", annulus(0.15, 0.75)),
                     ("b", annulus(0.3, 0.85)),
                     ("c", annulus(0.3, 0.85)),
                     ("z", annulus(0.15, 0.8))),
        lhs=_lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=_common_constraints(),
        derive=_derive,
    ))


def _register_five() -> None:

    def rhs(bnd, q, counters, eps):
        h = bnd["h"]
        u, w = bnd["u"], bnd["w"]
        u2 = w * u
        half = _half_prefactor(bnd, q, h)
        return _t1_term(bnd, q, counters, h) + half * (
            _e_term(bnd, q, counters, u, h)
            + _e_term(bnd, q, counters, -u, h)
            - _f_term(bnd, q, counters, u2, h)
            - _f_term(bnd, q, counters, -u2, h))

    register(IdentityDescriptor(
        id="WP32_FIVE",
        summary=("well-poised 3phi2 equals a theta-weighted combination of "
                 "five 5phi4(q, q) series with a free scale h"),
        family="wp32", kind="sum",
        free_params=(("q", nome(0.15, 0.55)),
                     ("a", annulus(0.15, 0.75)),
                     ("b", annulus(0.3, 0.85)),
                     ("c", annulus(0.3, 0.85)),
                     ("z", annulus(0.15, 0.8)),
                     ("h", annulus(0.7, 1.4))),
        lhs=_lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=_common_constraints() + _h_constraints(),
        derive=_derive,
        rhs_only_params=frozenset({"h"}),
    ))


def _register_four_a() -> None:

    def rhs(bnd, q, counters, eps):
        b, c, z = bnd["b"], bnd["c"], bnd["z"]
        a = bnd["a"]
        qq = q.q
        u, w = bnd["u"], bnd["w"]
        u2 = w * u
        half = _poch(q, a) / (
            2.0 * theta_multi([z], q)
            * _poch(q, qq * a / b, qq * a / c, b * c / a))

        def e_a(v):
            coef = theta_multi([v * z], q) \
                * _poch(q, qq * v / b, qq * v / c, b * c / v) / _poch(q, v)
            bcz = b * c * z
            return coef * _phi54(
                [v, b / v, c / v, bcz / (qq * v), qq ** 2 * v / bcz],
                [-qq, w, -w, b * c / v], q, counters)

        def f_a(uu):
            bcz = b * c * z
            coef = theta_multi([uu * z], q) \
                * _poch(q, uu / b, uu / c, qq * b * c / uu, bcz / (qq * uu)) \
                / _poch(q, uu, bcz / uu)
            coef *= qq / (1.0 - qq)
            return coef * _phi54(
                [uu, qq * b / uu, qq * c / uu, bcz / uu, qq ** 2 * uu / bcz],
                [-qq, qq * w, -qq * w, qq * b * c / uu], q, counters)

        return half * (e_a(u) + e_a(-u) - f_a(u2) - f_a(-u2))

    register(IdentityDescriptor(
        id="WP32_FOUR_A",
        summary=("four-term reduction of the five-term well-poised 3phi2 "
                 "transformation where the theta weight at h = z kills the "
                 "argument-z series"),
        family="wp32", kind="sum",
        free_params=(("q", nome(0.15, 0.55)),
                     ("a", annulus(0.15, 0.75)),
                     ("b", annulus(0.3, 0.85)),
                     ("c", annulus(0.3, 0.85)),
                     ("z", annulus(0.15, 0.8))),
        lhs=_lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=_common_constraints() + (
            off_upsilon(lambda b: b["z"], "z (theta weight)"),
            off_omega(lambda b: b["b"] * b["c"] / b["a"], "bc/a"),
        ),
        derive=_derive,
    ))


def _register_four_b() -> None:

    def rhs(bnd, q, counters, eps):
        a, b, c, z = bnd["a"], bnd["b"], bnd["c"], bnd["z"]
        qq = q.q
        u, w = bnd["u"], bnd["w"]
        u2 = w * u
        bcz = b * c * z
        half = _poch(q, a, qq * a / (b * c)) / (
            2.0 * theta_multi([1.0 / z, b * c / (qq * a)], q)
            * _poch(q, qq * a / b, qq * a / c))

        def e_b(v):
            coef = theta_multi([b * c / (qq * v), 1.0 / (v * z)], q) \
                * _poch(q, qq * v / b, qq * v / c) \
                / _poch(q, v, qq * v / (b * c))
            return coef * _phi54(
                [v, b / v, c / v, bcz / (qq * v), qq ** 2 * v / bcz],
                [-qq, w, -w, b * c / v], q, counters)

        def f_b(uu):
            coef = theta_multi([b * c / uu, 1.0 / (uu * z)], q) \
                * _poch(q, uu / b, uu / c, bcz / (qq * uu)) \
                / _poch(q, uu, uu / (b * c), bcz / uu)
            coef *= qq / (1.0 - qq)
            return coef * _phi54(
                [uu, qq * b / uu, qq * c / uu, bcz / uu, qq ** 2 * uu / bcz],
                [-qq, qq * w, -qq * w, qq * b * c / uu], q, counters)

        return half * (e_b(u) + e_b(-u) - f_b(u2) - f_b(-u2))

    register(IdentityDescriptor(
        id="WP32_FOUR_B",
        summary=("four-term reduction of the five-term well-poised 3phi2 "
                 "transformation where the theta weight at h = bc/(qa) kills "
                 "the argument-z series"),
        family="wp32", kind="sum",
        free_params=(("q", nome(0.15, 0.55)),
                     ("a", annulus(0.15, 0.75)),
                     ("b", annulus(0.3, 0.85)),
                     ("c", annulus(0.3, 0.85)),
                     ("z", annulus(0.15, 0.8))),
        lhs=_lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=_common_constraints() + (
            off_upsilon(lambda b: 1.0 / b["z"], "1/z (theta weight)"),
            off_upsilon(lambda b: b["b"] * b["c"] / (b["q"] * b["a"]),
                        "bc/(qa) (theta weight)"),
        ),
        derive=_derive,
    ))


def register_all() -> None:
    _register_int()
    _register_sum2()
    _register_five()
    _register_four_a()
    _register_four_b()
