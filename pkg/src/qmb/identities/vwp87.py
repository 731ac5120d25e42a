"""Transformations of the nonterminating very-well-poised 8W7.

The series W(a; b, c, d, e, f; q, q^2 a^2/(bcdef)) is re-expressed as

* VWP87_INT: a prefactor times a theta-completed unit-circle contour
  integral with a free scale h.
* VWP87_FOUR: a theta-weighted sum of four balanced 4phi3(q, q) series
  (one distinguished term plus three terms symmetric in d, e, f) with a
  free scale h.
* VWP87_THREE_A / VWP87_THREE_B: three-term reductions at h = q^(n-1)bc/a
  and h = q^(n+2)a^2/(bcdef) where the distinguished term's theta weight
  vanishes; the integer n stays free and the value is n-independent.
* WATSON_LIMIT: the terminating case f = q^(-n), where three of the four
  terms carry a vanishing (q^(-n); q)_inf factor and the survivor is the
  classical terminating balanced 4phi3 evaluation of the series.

All parameters of the four- and three-term displays are rational in
a..f, so no branch bookkeeping is needed; the integral's radicals are
rational in the single principal root g = sqrt(qa/(def)).
"""

from __future__ import annotations

import cmath
import math

from ..contour import SymmetricProblem, default_sigma, symmetric_integral
from ..hyperseries import phi as series_phi, spec as series_spec
from ..qcore import ParamSet, QBase, qpoch, qpoch_multi, theta_multi
from .base import (Bound, Constraint, IdentityDescriptor, annulus,
                   direct_vwp, int_range, modulus_lt, nome, off_omega,
                   off_upsilon, ratios_off_upsilon, register)


def _poch(q: QBase, *args) -> complex:
    return qpoch_multi(list(args), q)


def _phi43(numer, denom, q: QBase, counters) -> complex:
    return series_phi(series_spec(numer, denom, q, q.q), counters)


def _derive(bnd: Bound, q: QBase) -> Bound:
    bnd["u"] = cmath.sqrt(bnd["a"])
    return bnd


def _lhs(bnd: Bound, q: QBase, counters, eps) -> complex:
    a, b, c, d, e, f = (bnd[k] for k in "abcdef")
    z = q.q ** 2 * a ** 2 / (b * c * d * e * f)
    return direct_vwp(a, [b, c, d, e, f], q, z, counters=counters)


def _sym_term(bnd: Bound, q: QBase, counters, x: complex, y1: complex,
              y2: complex, th1: complex, th2: complex,
              with_qa_bc: bool) -> complex:
    """One of the three terms symmetric in d, e, f; x is the distinguished
    parameter, y1, y2 the other two, th1, th2 the theta weight arguments."""
    a, b, c = bnd["a"], bnd["b"], bnd["c"]
    qq = q.q
    numer = [qq * a / (b * x), qq * a / (c * x), qq * a / (x * y1),
             qq * a / (x * y2), y1, y2]
    if with_qa_bc:
        numer.append(qq * a / (b * c))
    coef = theta_multi([th1, th2], q) * _poch(q, *numer) \
        / _poch(q, qq * a / (b * c * x), y1 / x, y2 / x)
    phi = _phi43([qq * a / (y1 * y2), b * x / a, c * x / a, x],
                 [b * c * x / a, qq * x / y1, qq * x / y2], q, counters)
    return coef * phi


def _idem_triples(bnd: Bound):
    d, e, f = bnd["d"], bnd["e"], bnd["f"]
    return ((d, e, f), (e, d, f), (f, d, e))


def _common_constraints():
    cons = [
        modulus_lt(lambda b: b["q"] ** 2 * b["a"] ** 2,
                   lambda b: b["b"] * b["c"] * b["d"] * b["e"] * b["f"],
                   "|q^2 a^2| < |bcdef|", margin=1.1),
        off_omega(lambda b: b["u"], "sqrt a"),
        off_omega(lambda b: -b["u"], "-sqrt a"),
        ratios_off_upsilon(lambda b: (b["d"], b["e"], b["f"]), "d, e, f"),
    ]
    for x in "bcdef":
        cons.append(off_omega(lambda b, x=x: b["q"] * b["a"] / b[x],
                              f"qa/{x}"))
    for x in "def":
        cons.append(off_upsilon(
            lambda b, x=x: b["b"] * b["c"] * b[x] / (b["q"] * b["a"]),
            f"bc{x}/(qa)"))
    return tuple(cons)


def _h_constraints():
    return (
        off_upsilon(lambda b: b["h"], "h"),
        off_upsilon(lambda b: b["h"] * b["d"] * b["e"] * b["f"]
                    / (b["q"] * b["a"]), "h def/(qa)"),
    )


def _three_constraints():
    return (
        off_upsilon(lambda b: b["b"] * b["c"] / (b["q"] * b["a"]),
                    "bc/(qa)"),
        off_upsilon(lambda b: b["b"] * b["c"] * b["d"] * b["e"] * b["f"]
                    / b["a"] ** 2, "bcdef/a^2"),
    )


_BANDS = (("q", nome(0.15, 0.5)),
          ("a", annulus(0.15, 0.3)),
          ("b", annulus(0.4, 0.75)),
          ("c", annulus(0.4, 0.75)),
          ("d", annulus(0.5, 0.75)),
          ("e", annulus(0.5, 0.75)),
          ("f", annulus(0.5, 0.75)))


def _register_int() -> None:

    def derive(bnd, q):
        bnd = _derive(bnd, q)
        a, d, e, f = bnd["a"], bnd["d"], bnd["e"], bnd["f"]
        bnd["g"] = cmath.sqrt(q.q * a / (d * e * f))
        return bnd

    def rhs(bnd, q, counters, eps):
        a, b, c, d, e, f, h = (bnd[k] for k in "abcdefh")
        g = bnd["g"]
        qq = q.q
        qa = qq * a
        aset = ParamSet.of(qa * g / b, qa * g / c, prefix="a")
        cset = ParamSet.of(d * g, e * g, f * g, qa * g / (b * c), prefix="c")
        sigma = default_sigma(list(cset.values()), [1.0 / g, g])
        p = SymmetricProblem(aset, cset, 1.0 / g, g, h, sigma, q)
        integral = symmetric_integral(p, eps, counters)
        pref = _poch(q, qq, qa, qa / (b * c), qa / (d * e), qa / (d * f),
                     qa / (e * f), d, e, f) / (
            2.0 * math.pi * theta_multi([h, h * d * e * f / qa], q)
            * _poch(q, qa / b, qa / c, qa / d, qa / e, qa / f))
        return pref * integral

    def sigma_exists(bnd, q, g):
        gr = abs(bnd["g"])
        qa = abs(bnd["q"] * bnd["a"])
        cmax = max(abs(bnd["d"]) * gr, abs(bnd["e"]) * gr,
                   abs(bnd["f"]) * gr,
                   qa * gr / abs(bnd["b"] * bnd["c"]))
        dmax = max(gr, 1.0 / gr)
        return cmax * dmax < 0.97

    register(IdentityDescriptor(
        id="VWP87_INT",
        summary=("very-well-poised 8W7 equals a q-factorial-ratio prefactor "
                 "times a theta-completed unit-circle contour integral"),
        family="vwp87", kind="integral",
        free_params=(("q", nome(0.25, 0.45)),
                     ("a", annulus(0.15, 0.3)),
                     ("b", annulus(0.4, 0.6)),
                     ("c", annulus(0.4, 0.6)),
                     ("d", annulus(0.5, 0.7)),
                     ("e", annulus(0.5, 0.7)),
                     ("f", annulus(0.5, 0.7)),
                     ("h", annulus(0.7, 1.4))),
        lhs=_lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "quad"}),
        constraints=_common_constraints() + _h_constraints() + (
            Constraint("no valid quadrature radius", sigma_exists),),
        derive=derive,
        rhs_only_params=frozenset({"h"}),
    ))


def _four_terms(bnd: Bound, q: QBase, counters, h: complex) -> complex:
    """The three d, e, f symmetric terms of the four-term form at scale h."""
    a = bnd["a"]
    qq = q.q
    total = 0j
    for x, y1, y2 in _idem_triples(bnd):
        total += _sym_term(bnd, q, counters, x, y1, y2,
                           h * x, h * y1 * y2 / (qq * a), with_qa_bc=True)
    return total


def _bc_term(bnd: Bound, q: QBase, counters, h: complex) -> complex:
    a, b, c, d, e, f = (bnd[k] for k in "abcdef")
    qq = q.q
    qa = qq * a
    bcdef = b * c * d * e * f
    coef = theta_multi([h * qa / (b * c), h * bcdef / (qa * qq * a)], q) \
        * _poch(q, qa / (d * e), qa / (d * f), qa / (e * f), b, c, d, e, f) \
        / _poch(q, qq * qa * a / bcdef, b * c * d / qa, b * c * e / qa,
                b * c * f / qa)
    phi = _phi43([qq * qa * a / bcdef, qa / (b * c), qq / b, qq / c],
                 [qq * qa / (b * c * d), qq * qa / (b * c * e),
                  qq * qa / (b * c * f)], q, counters)
    return coef * phi


def _register_four() -> None:

    def rhs(bnd, q, counters, eps):
        a, h = bnd["a"], bnd["h"]
        qq = q.q
        qa = qq * a
        pref = _poch(q, qa) / (
            theta_multi([h, h * bnd["d"] * bnd["e"] * bnd["f"] / qa], q)
            * _poch(q, *[qa / bnd[x] for x in "bcdef"]))
        return pref * (_bc_term(bnd, q, counters, h)
                       + _four_terms(bnd, q, counters, h))

    register(IdentityDescriptor(
        id="VWP87_FOUR",
        summary=("very-well-poised 8W7 equals a theta-weighted combination "
                 "of four balanced 4phi3(q, q) series with a free scale h"),
        family="vwp87", kind="sum",
        free_params=_BANDS + (("h", annulus(0.7, 1.4)),),
        lhs=_lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=_common_constraints() + _h_constraints(),
        derive=_derive,
        rhs_only_params=frozenset({"h"}),
    ))


def _register_three(suffix: str, what: str) -> None:

    def rhs(bnd, q, counters, eps):
        a, b, c = bnd["a"], bnd["b"], bnd["c"]
        qq = q.q
        qa = qq * a
        qn = qq ** int(bnd["n"].real)
        total = 0j
        if suffix == "A":
            theta_den = theta_multi(
                [qn * b * c / qa,
                 qn * b * c * bnd["d"] * bnd["e"] * bnd["f"] / (qq * a) ** 2],
                q)
            for x, y1, y2 in _idem_triples(bnd):
                total += _sym_term(
                    bnd, q, counters, x, y1, y2,
                    qn * b * c * x / qa,
                    qn * b * c * y1 * y2 / (qq * a) ** 2,
                    with_qa_bc=False)
        else:
            theta_den = theta_multi(
                [qn * qq * qa * a
                 / (b * c * bnd["d"] * bnd["e"] * bnd["f"]),
                 qn * qa / (b * c)], q)
            for x, y1, y2 in _idem_triples(bnd):
                total += _sym_term(
                    bnd, q, counters, x, y1, y2,
                    qn * qq * qa * a / (b * c * y1 * y2),
                    qn * qa / (b * c * x),
                    with_qa_bc=False)
        pref = _poch(q, qa, qa / (b * c)) / (
            theta_den * _poch(q, *[qa / bnd[x] for x in "bcdef"]))
        return pref * total

    register(IdentityDescriptor(
        id=f"VWP87_THREE_{suffix}",
        summary=("three-term reduction of the four-term very-well-poised "
                 f"8W7 transformation with the distinguished theta weight "
                 f"killed at {what}; the integer n is free"),
        family="vwp87", kind="sum",
        free_params=_BANDS + (("n", int_range(-1, 2)),),
        lhs=_lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=_common_constraints() + _three_constraints(),
        derive=_derive,
        rhs_only_params=frozenset({"n"}),
    ))


def _register_watson() -> None:

    def derive(bnd, q):
        bnd = _derive(bnd, q)
        bnd["f"] = q.q ** (-int(bnd["n"].real))
        return bnd

    def lhs(bnd, q, counters, eps):
        a, b, c, d, e, f = (bnd[k] for k in "abcdef")
        n = int(bnd["n"].real)
        z = q.q ** 2 * a ** 2 / (b * c * d * e * f)
        return direct_vwp(a, [b, c, d, e, f], q, z, counters=counters,
                          terminate=n)

    def rhs(bnd, q, counters, eps):
        a, b, c, d, e = (bnd[k] for k in "abcde")
        n = int(bnd["n"].real)
        qq = q.q
        qa = qq * a
        pref = qpoch(qa, q, n) * qpoch(qa / (d * e), q, n) \
            / (qpoch(qa / d, q, n) * qpoch(qa / e, q, n))
        phi = _phi43([qa / (b * c), d, e, qq ** (-n)],
                     [qa / b, qa / c, d * e * qq ** (-n) / a], q, counters)
        return pref * phi

    def qad_nonzero(bnd, q, g):
        # (qa/d; q)_n and (qa/e; q)_n in the denominator
        n = int(bnd["n"].real)
        for x in "de":
            v = bnd["q"] * bnd["a"] / bnd[x]
            for k in range(n):
                if abs(v - bnd["q"] ** (-k)) < g:
                    return False
        return True

    register(IdentityDescriptor(
        id="WATSON_LIMIT",
        summary=("terminating very-well-poised 8W7 with one parameter on "
                 "the inverse q-lattice equals a finite q-factorial ratio "
                 "times a terminating balanced 4phi3(q, q)"),
        family="vwp87", kind="sum",
        free_params=(("q", nome(0.15, 0.5)),
                     ("a", annulus(0.15, 0.5)),
                     ("b", annulus(0.3, 0.7)),
                     ("c", annulus(0.3, 0.7)),
                     ("d", annulus(0.3, 0.7)),
                     ("e", annulus(0.3, 0.7)),
                     ("n", int_range(1, 4))),
        lhs=lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=(
            off_omega(lambda b: b["q"] * b["a"] / b["b"], "qa/b"),
            off_omega(lambda b: b["q"] * b["a"] / b["c"], "qa/c"),
            off_omega(lambda b: b["u"], "sqrt a"),
            off_omega(lambda b: -b["u"], "-sqrt a"),
            off_omega(lambda b: b["d"] * b["e"]
                      * b["q"] ** (-int(b["n"].real)) / b["a"],
                      "de q^(-n)/a"),
            Constraint("(qa/d;q)_n (qa/e;q)_n vanishes", qad_nonzero),
        ),
        derive=derive,
    ))


def register_all() -> None:
    _register_int()
    _register_four()
    _register_three("A", "h = q^(n-1) bc/a")
    _register_three("B", "h = q^(n+2) a^2/(bcdef)")
    _register_watson()
