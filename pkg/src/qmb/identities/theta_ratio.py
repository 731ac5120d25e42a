"""Unit-circle integrals of theta-function ratios.

Three catalog entries share the integrand

    theta(b sigma/z; q) / theta(d sigma/z; q) * e^(i m psi),   z = e^(i psi),

with b a set of B numerator parameters and d a set of D >= B denominator
parameters satisfying |q|/sigma < |d_k| < 1/sigma (keeps every theta zero
off the contour) and pairwise d_l/d_k off the lattice q^Z.

* THETA_RATIO_INT: the integral equals 2 pi sigma^m/(q;q)_inf times the
  G_m value of the parameter sets (q/b, b, q/d, d), here evaluated by the
  residue-type sum over d.
* THETA_RATIO_SUM (D = B): G_m collapses to a theta-weighted sum of
  geometric-series values, requiring |b_1...b_B| < |d_1...d_D|.
* THETA_RATIO_PARTIAL (D > B): G_m collapses to a theta-weighted sum of
  partial theta function values in the base q^(D-B).
"""

from __future__ import annotations

import math

import numpy as np

from ..contour import GmProblem, g_m_integral, g_m_sum_d, qpoch_inf_array, \
    quad_unit_circle
from ..qcore import ParamSet, QBase, partial_theta, qpoch_inf, theta_multi
from .base import (IdentityDescriptor, Rule, annulus, int_range, modulus_lt,
                   off_upsilon, ratios_off_upsilon, real_band, register)

_M_RULE = int_range(-2, 2)


def _theta_ratio_quad(bs, ds, m, sigma, q: QBase, counters, eps):
    """Direct quadrature of the theta-ratio integrand (vectorized)."""
    qq = complex(q.q)

    def f_vec(psi):
        z = np.exp(1j * psi)
        w = sigma / z
        num = np.ones_like(z)
        for b in bs:
            x = complex(b) * w
            num = num * qpoch_inf_array(x, q) * qpoch_inf_array(qq / x, q)
        den = np.ones_like(z)
        for d in ds:
            x = complex(d) * w
            den = den * qpoch_inf_array(x, q) * qpoch_inf_array(qq / x, q)
        return num / den * np.exp(1j * m * psi)

    def f(psi):
        import cmath
        z = cmath.exp(1j * psi)
        w = sigma / z
        num = 1.0 + 0j
        for b in bs:
            x = b * w
            num *= qpoch_inf(x, q) * qpoch_inf(q.q / x, q)
        den = 1.0 + 0j
        for d in ds:
            x = d * w
            den *= qpoch_inf(x, q) * qpoch_inf(q.q / x, q)
        return num / den * cmath.exp(1j * m * psi)

    return quad_unit_circle(f, eps, f_vec, counters)


def _gm_problem(bs, ds, m, sigma, q: QBase) -> GmProblem:
    qq = q.q
    return GmProblem(
        ParamSet.of(*[qq / b for b in bs], prefix="a"),
        ParamSet.of(*bs, prefix="b"),
        ParamSet.of(*[qq / d for d in ds], prefix="c"),
        ParamSet.of(*ds, prefix="d"),
        sigma, m, q)


def _common_constraints(b_names, d_names):
    cons = [
        ratios_off_upsilon(
            lambda b, ns=tuple(d_names): [b[n] for n in ns], "d"),
    ]
    for n in d_names:
        cons.append(modulus_lt(lambda b: abs(b["q"]) / b["sigma"],
                               lambda b, n=n: b[n],
                               f"|q|/sigma < |{n}|", margin=1.02))
        cons.append(modulus_lt(lambda b, n=n: b[n],
                               lambda b: 1.0 / b["sigma"],
                               f"|{n}| < 1/sigma", margin=1.02))
        # the residue sums also need b/d clear of the lattice
        for bn in b_names:
            cons.append(off_upsilon(
                lambda b, n=n, bn=bn: b[bn] / b[n], f"{bn}/{n}"))
    return cons


def _register_int() -> None:
    b_names = ("b1",)
    d_names = ("d1", "d2")

    def lhs(b, q, counters, eps):
        return _theta_ratio_quad((b["b1"],), (b["d1"], b["d2"]),
                                 int(b["m"].real), b["sigma"].real, q,
                                 counters, eps)

    def rhs(b, q, counters, eps):
        m = int(b["m"].real)
        sigma = b["sigma"].real
        p = _gm_problem((b["b1"],), (b["d1"], b["d2"]), m, sigma, q)
        gm = g_m_sum_d(p, counters)
        return 2.0 * math.pi * sigma ** m / qpoch_inf(q.q, q) * gm

    register(IdentityDescriptor(
        id="THETA_RATIO_INT",
        summary=("unit-circle integral of a theta-function ratio equals "
                 "2 pi sigma^m/(q;q)_inf times the residue-type sum over "
                 "the denominator parameters"),
        family="theta_ratio", kind="integral",
        free_params=(("q", Rule("nome", 0.15, 0.55)),
                     ("b1", annulus(0.3, 1.4)),
                     ("d1", annulus(0.45, 0.9)),
                     ("d2", annulus(0.45, 0.9)),
                     ("m", _M_RULE),
                     ("sigma", real_band(0.9, 1.1))),
        lhs=lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "quad"}),
        rhs_tags=frozenset({"qcore", "hyperseries"}),
        constraints=tuple(_common_constraints(b_names, d_names)),
        rhs_only_params=frozenset({"sigma"}),
    ))


def _register_sum() -> None:
    b_names = ("b1", "b2")
    d_names = ("d1", "d2")

    def lhs(b, q, counters, eps):
        p = _gm_problem((b["b1"], b["b2"]), (b["d1"], b["d2"]),
                        int(b["m"].real), b["sigma"].real, q)
        return g_m_integral(p, eps, counters)

    def rhs(b, q, counters, eps):
        m = int(b["m"].real)
        bs = (b["b1"], b["b2"])
        ds = (b["d1"], b["d2"])
        ratio = (bs[0] * bs[1]) / (ds[0] * ds[1])
        total = 0j
        for k, dk in enumerate(ds):
            other = ds[1 - k]
            w = theta_multi([v / dk for v in bs], q) * dk ** m / \
                theta_multi((other / dk,), q)
            total += w / (1.0 - q.q ** m * ratio)
        return total / qpoch_inf(q.q, q)

    cons = list(_common_constraints(b_names, d_names))
    cons.append(modulus_lt(lambda b: b["b1"] * b["b2"],
                           lambda b: b["d1"] * b["d2"],
                           "|b1 b2| < |d1 d2|", margin=1.05))
    cons.append(modulus_lt(
        lambda b: b["q"] ** int(b["m"].real) * b["b1"] * b["b2"],
        lambda b: b["d1"] * b["d2"],
        "|q^m b1 b2| < |d1 d2|", margin=1.05))

    register(IdentityDescriptor(
        id="THETA_RATIO_SUM",
        summary=("with equally many numerator and denominator theta "
                 "parameters, the integral value reduces to a theta-weighted "
                 "sum of geometric-series values"),
        family="theta_ratio", kind="integral",
        free_params=(("q", Rule("nome", 0.15, 0.55)),
                     ("b1", annulus(0.1, 0.5)),
                     ("b2", annulus(0.1, 0.5)),
                     ("d1", annulus(0.45, 0.9)),
                     ("d2", annulus(0.45, 0.9)),
                     ("m", _M_RULE),
                     ("sigma", real_band(0.9, 1.1))),
        lhs=lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "quad"}),
        rhs_tags=frozenset({"qcore"}),
        constraints=tuple(cons),
        rhs_only_params=frozenset({"sigma"}),
    ))


def _register_partial() -> None:
    b_names = ("b1",)
    d_names = ("d1", "d2", "d3")

    def lhs(b, q, counters, eps):
        p = _gm_problem((b["b1"],), (b["d1"], b["d2"], b["d3"]),
                        int(b["m"].real), b["sigma"].real, q)
        return g_m_integral(p, eps, counters)

    def rhs(b, q, counters, eps):
        m = int(b["m"].real)
        bs = (b["b1"],)
        ds = (b["d1"], b["d2"], b["d3"])
        p_gap = len(ds) - len(bs)            # D - B = 2
        qp = q.rebase(p_gap)
        prod_b = bs[0]
        prod_d = ds[0] * ds[1] * ds[2]
        total = 0j
        for k, dk in enumerate(ds):
            rest = ds[:k] + ds[k + 1:]
            w = theta_multi([v / dk for v in bs], q) * dk ** m / \
                theta_multi([v / dk for v in rest], q)
            arg = -(q.q ** m) * (-q.q * dk) ** p_gap * prod_b / prod_d
            total += w * partial_theta(arg, qp)
        return qpoch_inf(qp.q, qp) / qpoch_inf(q.q, q) * total

    register(IdentityDescriptor(
        id="THETA_RATIO_PARTIAL",
        summary=("with more denominator than numerator theta parameters, the "
                 "integral value reduces to a theta-weighted sum of partial "
                 "theta function values in a power base"),
        family="theta_ratio", kind="integral",
        free_params=(("q", Rule("nome", 0.15, 0.55)),
                     ("b1", annulus(0.3, 1.4)),
                     ("d1", annulus(0.45, 0.9)),
                     ("d2", annulus(0.45, 0.9)),
                     ("d3", annulus(0.45, 0.9)),
                     ("m", _M_RULE),
                     ("sigma", real_band(0.9, 1.1))),
        lhs=lhs, rhs=rhs,
        lhs_tags=frozenset({"qcore", "quad"}),
        rhs_tags=frozenset({"qcore"}),
        constraints=tuple(_common_constraints(b_names, d_names)),
        rhs_only_params=frozenset({"sigma"}),
    ))


def register_all() -> None:
    _register_int()
    _register_sum()
    _register_partial()
