"""Summation formulas for balanced very-well-poised 8W7 series at
argument q.

A generalized q-beta contour integral (BAL87_INT) evaluates in closed
form.  Expanding the same integral over residue families instead gives a
six-term summation (BAL87_SIX): six theta-weighted balanced
very-well-poised 8W7(q) series summing to a closed form with a free
scale h.  Specializing h onto the q-lattice of one theta weight kills
single terms:

* BAL87_NULL_A / BAL87_NULL_B (h = q^n, q^n b/a): the closed form
  vanishes and six terms sum to zero.
* BAL87_FIVE_A..D (h = q^n/a, q^n b, q^(n-1)bcde/a^2, q^(n+1)a/(cde)):
  one series' weight vanishes and five terms sum to a closed form.

Where a scale substitution overlaps the letters permuted by the
symmetrization, the sum is read with the substitution applied before
symmetrizing (the order the derivation uses).

Coefficient radicals enter as +- pairs, so they are branch-independent;
the two principal roots r = sqrt a, s = sqrt b are resolved once per
point.
"""

from __future__ import annotations

import cmath
import math

from ..contour import SymmetricProblem, default_sigma, symmetric_integral
from ..hyperseries import VWPSpec, vwp
from ..qcore import ParamSet, QBase, qpoch_multi, theta_multi
from .base import (Bound, Constraint, IdentityDescriptor, annulus,
                   direct_vwp, int_range, nome, off_omega, off_upsilon,
                   ratios_off_upsilon, register)


def _poch(q: QBase, *args) -> complex:
    return qpoch_multi(list(args), q)


def _derive(bnd: Bound, q: QBase) -> Bound:
    bnd["r"] = cmath.sqrt(bnd["a"])
    bnd["s"] = cmath.sqrt(bnd["b"])
    bnd["B"] = bnd["b"] * bnd["c"] * bnd["d"] * bnd["e"]
    return bnd


def _w_direct(alpha, tail, q: QBase, counters) -> complex:
    return direct_vwp(alpha, tail, q, q.q, counters=counters)


def _w_hyper(alpha, tail, q: QBase, counters) -> complex:
    return vwp(VWPSpec(alpha, ParamSet.of(*tail, prefix="b"), q, q.q),
               counters)


# --- the six series and their coefficients ----------------------------------

def _t_w(bnd: Bound, q: QBase, counters, th1, th2, w_eval) -> complex:
    """Term carrying 8W7(a; b, c, d, e, qa^2/(bcde); q, q)."""
    a, b, c, d, e = (bnd[k] for k in "abcde")
    r, B = bnd["r"], bnd["B"]
    qq = q.q
    coef = theta_multi([th1, th2], q) \
        * _poch(q, 1 / r, -1 / r, qq / c, qq / d, qq / e, B / a ** 2) \
        / _poch(q, qq / r, -qq / r, a, b, b / a, c / a, d / a, e / a,
                qq * a / B)
    return coef * w_eval(a, [b, c, d, e, qq * a ** 2 / B], q, counters)


def _t_two(bnd: Bound, q: QBase, counters, th1, th2, w_eval) -> complex:
    """Term carrying 8W7(q^2 a^3/(bcde)^2; ...; q, q)."""
    a, b, c, d, e = (bnd[k] for k in "abcde")
    r, B = bnd["r"], bnd["B"]
    qq = q.q
    coef = theta_multi([th1, th2], q) \
        * _poch(q, B / (qq * r ** 3), -B / (qq * r ** 3), b * c * d / a,
                b * c * e / a, b * d * e / a, B ** 2 / (qq * a ** 3)) \
        / _poch(q, B / r ** 3, -B / r ** 3, qq * a ** 2 / B,
                qq * a / (c * d * e), B / (qq * a), b * B / (qq * a ** 2),
                c * B / (qq * a ** 2), d * B / (qq * a ** 2),
                e * B / (qq * a ** 2))
    alpha = qq ** 2 * a ** 3 / B ** 2
    tail = [qq * a ** 2 / B, qq * a / (b * c * d), qq * a / (b * c * e),
            qq * a / (b * d * e), qq * a / (c * d * e)]
    return coef * w_eval(alpha, tail, q, counters)


def _t_x(bnd: Bound, q: QBase, counters, x, y1, y2, y3, h,
         w_eval) -> complex:
    """One of the four terms symmetric in b, c, d, e, carrying
    8W7(x^2/a; x, x y/a .., qa/(product of others); q, q).  The letter b
    stays anchored in the weight and two coefficient factors: the weight
    is theta(hx, ha/(bx)), the paired numerator factors run over the
    fixed letters c, d, e, and the denominator carries bx/a."""
    a, b, c, d, e = (bnd[k] for k in "abcde")
    r, B = bnd["r"], bnd["B"]
    qq = q.q
    coef = theta_multi([h * x, h * a / (b * x)], q) \
        * _poch(q, r / x, -r / x, qq * a / (x * c), qq * a / (x * d),
                qq * a / (x * e), B / (a * x)) \
        / _poch(q, qq * r / x, -qq * r / x, x, b * x / a, a / x,
                y1 / x, y2 / x, y3 / x, qq * a ** 2 / (x * B))
    tail = [x, x * y1 / a, x * y2 / a, x * y3 / a, qq * a / (y1 * y2 * y3)]
    return coef * w_eval(x ** 2 / a, tail, q, counters)


def _idem4(bnd: Bound):
    b, c, d, e = (bnd[k] for k in "bcde")
    return ((b, c, d, e), (c, b, d, e), (d, b, c, e), (e, b, c, d))


def _six_sum(bnd: Bound, q: QBase, counters, h, w_eval) -> complex:
    a, b = bnd["a"], bnd["b"]
    qq = q.q
    B = bnd["B"]
    total = _t_w(bnd, q, counters, h * a, h / b, w_eval)
    total += _t_two(bnd, q, counters, h * qq * a ** 2 / B,
                    h * bnd["c"] * bnd["d"] * bnd["e"] / (qq * a), w_eval)
    for x, y1, y2, y3 in _idem4(bnd):
        total += _t_x(bnd, q, counters, x, y1, y2, y3, h, w_eval)
    return total


def _rhs_ratio(bnd: Bound, q: QBase) -> complex:
    a, b, c, d, e = (bnd[k] for k in "abcde")
    qq = q.q
    return _poch(q, qq * a / (c * d), qq * a / (c * e), qq * a / (d * e),
                 b * c * d / a, b * c * e / a, b * d * e / a) \
        / _poch(q, b, c, d, e, b * c / a, b * d / a, b * e / a,
                qq * a / (c * d * e), qq * a ** 2 / bnd["B"])


# --- constraints -------------------------------------------------------------

def _common_constraints():
    cons = [
        off_upsilon(lambda b: b["a"], "a"),
        off_upsilon(lambda b: b["a"] ** 3 / b["B"] ** 2, "a^3/(bcde)^2"),
        off_upsilon(lambda b: b["q"] * b["a"] / b["B"], "qa/(bcde)"),
        off_upsilon(lambda b: b["B"] / b["a"] ** 2, "bcde/a^2"),
        ratios_off_upsilon(lambda b: (b["b"], b["c"], b["d"], b["e"]),
                           "b, c, d, e"),
    ]
    for x in "bcde":
        cons.extend((
            off_upsilon(lambda b, x=x: b[x] ** 2 / b["a"], f"{x}^2/a"),
            off_upsilon(lambda b, x=x: b["a"] / b[x], f"a/{x}"),
            off_upsilon(lambda b, x=x: b[x] * b["B"]
                        / (b["q"] * b["a"] ** 2), f"{x} bcde/(qa^2)"),
            off_upsilon(lambda b, x=x: b["q"] * b["a"] * b[x] / b["B"],
                        f"qa{x}/(bcde)"),
        ))
    return tuple(cons)


def _h_constraints():
    return (
        off_upsilon(lambda b: b["h"], "h"),
        off_upsilon(lambda b: b["h"] * b["a"] / b["b"], "h a/b"),
    )


_BANDS = (("q", nome(0.15, 0.45)),
          ("a", annulus(0.25, 0.6)),
          ("b", annulus(0.35, 0.7)),
          ("c", annulus(0.35, 0.7)),
          ("d", annulus(0.35, 0.7)),
          ("e", annulus(0.35, 0.7)))


def _register_int() -> None:

    def lhs(bnd, q, counters, eps):
        c, d, e, h = bnd["c"], bnd["d"], bnd["e"], bnd["h"]
        r, s = bnd["r"], bnd["s"]
        qq = q.q
        aset = ParamSet.of(s, -s, qq * r * s / c, qq * r * s / d,
                           qq * r * s / e, (s / r) ** 3 * c * d * e,
                           prefix="a")
        cset = ParamSet.of(r * s, qq * s, -qq * s, s ** 3 / r, c * s / r,
                           d * s / r, e * s / r,
                           qq * r ** 3 / (c * d * e * s), prefix="c")
        sigma = default_sigma(list(cset.values()), [r / s, s / r])
        p = SymmetricProblem(aset, cset, r / s, s / r, h, sigma, q)
        return symmetric_integral(p, eps, counters)

    def rhs(bnd, q, counters, eps):
        a, b, c, d, e, h = (bnd[k] for k in "abcdeh")
        qq = q.q
        qa = qq * a
        return 2.0 * math.pi * theta_multi([h, h * a / b], q) \
            * _poch(q, qa / c, qa / (c * d), qa / (c * e), qa / (d * e),
                    b * c * d / a, b * c * e / a, b * d * e / a) \
            / _poch(q, qq, qa / c, b * c / a, b * d / a, b * e / a,
                    b, c, d, e, qa / (c * d * e), qa * a / bnd["B"])

    def sigma_exists(bnd, q, g):
        r, s = abs(bnd["r"]), abs(bnd["s"])
        c, d, e = abs(bnd["c"]), abs(bnd["d"]), abs(bnd["e"])
        qv = bnd["q"].real
        cmax = max(r * s, qv * s, s ** 3 / r, c * s / r, d * s / r,
                   e * s / r, qv * r ** 3 / (c * d * e * s))
        dmax = max(r / s, s / r)
        return cmax * dmax < 0.97

    register(IdentityDescriptor(
        id="BAL87_INT",
        summary=("generalized q-beta contour integral with ten-factor "
                 "integrand evaluating to a closed q-factorial ratio"),
        family="bal87", kind="integral",
        free_params=(("q", nome(0.15, 0.3)),
                     ("a", annulus(0.45, 0.55)),
                     ("b", annulus(0.45, 0.55)),
                     ("c", annulus(0.6, 0.75)),
                     ("d", annulus(0.6, 0.75)),
                     ("e", annulus(0.6, 0.75)),
                     ("h", annulus(0.7, 1.4))),
        lhs=lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "quad"}),
        rhs_tags=frozenset({"qcore"}),
        constraints=_common_constraints() + _h_constraints() + (
            off_omega(lambda b: b["q"] * b["a"] / b["c"], "qa/c"),
            Constraint("no valid quadrature radius", sigma_exists),),
        derive=_derive,
    ))


def _register_six() -> None:

    def lhs(bnd, q, counters, eps):
        return _six_sum(bnd, q, counters, bnd["h"], _w_direct)

    def rhs(bnd, q, counters, eps):
        h = bnd["h"]
        return theta_multi([h, h * bnd["a"] / bnd["b"]], q) \
            * _rhs_ratio(bnd, q)

    register(IdentityDescriptor(
        id="BAL87_SIX",
        summary=("six theta-weighted balanced very-well-poised 8W7(q) "
                 "series sum to a closed q-factorial ratio with a free "
                 "scale h"),
        family="bal87", kind="sum",
        free_params=_BANDS + (("h", annulus(0.7, 1.4)),),
        lhs=lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore"}),
        constraints=_common_constraints() + _h_constraints(),
        derive=_derive,
    ))


def _register_null(suffix: str, what: str) -> None:

    def h_of(bnd, q):
        qn = q.q ** int(bnd["n"].real)
        if suffix == "A":
            return qn
        return qn * bnd["b"] / bnd["a"]

    def lhs(bnd, q, counters, eps):
        h = h_of(bnd, q)
        return -_t_w(bnd, q, counters, h * bnd["a"], h / bnd["b"], _w_direct)

    def rhs(bnd, q, counters, eps):
        h = h_of(bnd, q)
        a = bnd["a"]
        qq = q.q
        total = _t_two(bnd, q, counters, h * qq * a ** 2 / bnd["B"],
                       h * bnd["c"] * bnd["d"] * bnd["e"] / (qq * a),
                       _w_hyper)
        for x, y1, y2, y3 in _idem4(bnd):
            total += _t_x(bnd, q, counters, x, y1, y2, y3, h, _w_hyper)
        return total

    register(IdentityDescriptor(
        id=f"BAL87_NULL_{suffix}",
        summary=("six-term vanishing sum of theta-weighted balanced "
                 f"very-well-poised 8W7(q) series at scale {what}, stated "
                 "as one series against the other five"),
        family="bal87", kind="sum",
        free_params=_BANDS + (("n", int_range(-1, 2)),),
        lhs=lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=_common_constraints(),
        derive=_derive,
    ))


def _register_five(suffix: str, what: str) -> None:

    def h_of(bnd, q):
        qn = q.q ** int(bnd["n"].real)
        a = bnd["a"]
        if suffix == "A":
            return qn / a
        if suffix == "B":
            return qn * bnd["b"]
        if suffix == "C":
            return qn * bnd["B"] / (q.q * a ** 2)
        return qn * q.q * a / (bnd["c"] * bnd["d"] * bnd["e"])

    def lhs(bnd, q, counters, eps):
        h = h_of(bnd, q)
        a = bnd["a"]
        qq = q.q
        total = 0j
        if suffix in ("A", "B"):
            # the first series' weight vanishes
            total += _t_two(bnd, q, counters, h * qq * a ** 2 / bnd["B"],
                            h * bnd["c"] * bnd["d"] * bnd["e"] / (qq * a),
                            _w_direct)
        else:
            total += _t_w(bnd, q, counters, h * a, h / bnd["b"], _w_direct)
        for x, y1, y2, y3 in _idem4(bnd):
            total += _t_x(bnd, q, counters, x, y1, y2, y3, h, _w_direct)
        return total

    def rhs(bnd, q, counters, eps):
        h = h_of(bnd, q)
        return theta_multi([h, h * bnd["a"] / bnd["b"]], q) \
            * _rhs_ratio(bnd, q)

    register(IdentityDescriptor(
        id=f"BAL87_FIVE_{suffix}",
        summary=("five theta-weighted balanced very-well-poised 8W7(q) "
                 f"series sum to a closed q-factorial ratio at scale "
                 f"{what}"),
        family="bal87", kind="sum",
        free_params=_BANDS + (("n", int_range(-1, 2)),),
        lhs=lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "direct"}),
        rhs_tags=frozenset({"qcore"}),
        constraints=_common_constraints(),
        derive=_derive,
    ))


def register_all() -> None:
    _register_int()
    _register_six()
    _register_null("A", "h = q^n")
    _register_null("B", "h = q^n b/a")
    _register_five("A", "h = q^n/a")
    _register_five("B", "h = q^n b")
    _register_five("C", "h = q^(n-1) bcde/a^2")
    _register_five("D", "h = q^(n+1) a/(cde)")
