"""Tests for the unit-circle contour integration machinery.

The three evaluation routes (quadrature, sum over the d-set, sum over the
c-set) act as oracles for one another; the symmetric two-pole machinery is
checked the same way (quadrature vs H-form vs J-form).
"""

import cmath
import math
import random

import numpy as np
import pytest

from qmb import (ConstraintViolation, DivergentSeries, EvalCounters,
                 GmProblem, ParamSet, QBase, SymmetricProblem, default_sigma,
                 g_m_integral, g_m_sum_c, g_m_sum_d, h_sum, h_terms, j_sum,
                 j_terms, qpoch_inf, quad_unit_circle, symmetric_integral,
                 to_gm)


def rel(x, y) -> float:
    return abs(x - y) / max(abs(x), abs(y), 1.0e-300)


def unit(rng: random.Random, lo: float, hi: float) -> complex:
    return rng.uniform(lo, hi) * cmath.exp(2j * math.pi * rng.random())


class TestQuad:
    def test_constant(self):
        got = quad_unit_circle(lambda psi: 1.0 + 0j)
        assert rel(got, 2.0 * math.pi) < 1e-14

    def test_oscillatory_orthogonality(self):
        got = quad_unit_circle(lambda psi: cmath.exp(1j * psi))
        assert abs(got) < 1e-12

    def test_vector_path_matches_scalar(self):
        def f(psi):
            return cmath.exp(cmath.cos(psi) + 0.3j * math.sin(2 * psi))

        def f_vec(psi):
            return np.exp(np.cos(psi) + 0.3j * np.sin(2 * psi))

        a = quad_unit_circle(f)
        b = quad_unit_circle(f, integrand_vec=f_vec)
        assert rel(a, b) < 1e-13

    def test_counters(self):
        c = EvalCounters()
        quad_unit_circle(lambda psi: cmath.exp(cmath.cos(psi)), counters=c)
        assert c.n_nodes >= 2 ** 8


FIXED_1111 = dict(
    a=ParamSet.of(0.05 + 0.02j, prefix="a"),
    b=ParamSet.of(-0.03 + 0.02j, prefix="b"),
    c=ParamSet.of(0.45 - 0.1j, prefix="c"),
    d=ParamSet.of(0.4 + 0.15j, prefix="d"),
)


class TestGm:
    def test_triangle_1111(self):
        q = QBase(0.35)
        for m in range(-2, 3):
            p = GmProblem.auto(m=m, q=q, **FIXED_1111)
            gi, gd, gc = g_m_integral(p), g_m_sum_d(p), g_m_sum_c(p)
            assert rel(gi, gd) < 1e-9, m
            assert rel(gi, gc) < 1e-9, m

    def test_triangle_0022(self):
        q = QBase(0.35)
        e = ParamSet.empty()
        c = ParamSet.of(0.3, -0.25 + 0.2j, prefix="c")
        d = ParamSet.of(0.35 + 0.1j, -0.3, prefix="d")
        for m in range(-2, 3):
            p = GmProblem.auto(e, e, c, d, m, q)
            gi, gd, gc = g_m_integral(p), g_m_sum_d(p), g_m_sum_c(p)
            assert rel(gi, gd) < 1e-9, m
            assert rel(gi, gc) < 1e-9, m

    def test_triangle_2121(self):
        q = QBase(0.35)
        a = ParamSet.of(0.04 + 0.01j, 0.03 - 0.02j, prefix="a")
        b = ParamSet.of(-0.03 + 0.02j, prefix="b")
        c = ParamSet.of(0.45 - 0.1j, 0.38 + 0.2j, prefix="c")
        d = ParamSet.of(0.4 + 0.15j, prefix="d")
        for m in range(-2, 3):
            p = GmProblem.auto(a, b, c, d, m, q)
            gi, gd, gc = g_m_integral(p), g_m_sum_d(p), g_m_sum_c(p)
            assert rel(gi, gd) < 1e-9, m
            assert rel(gi, gc) < 1e-9, m

    def test_sigma_invariance_random(self):
        rng = random.Random(20260819)
        q = QBase(0.4)
        for _ in range(20):
            a = ParamSet.of(unit(rng, 0.02, 0.08), prefix="a")
            b = ParamSet.of(unit(rng, 0.02, 0.08), prefix="b")
            c = ParamSet.of(unit(rng, 0.35, 0.55), prefix="c")
            d = ParamSet.of(unit(rng, 0.35, 0.55), prefix="d")
            lo = max(abs(v) for v in c)
            hi = 1.0 / max(abs(v) for v in d)
            s1 = lo + 0.25 * (hi - lo)
            s2 = lo + 0.75 * (hi - lo)
            m = rng.randrange(-2, 3)
            g1 = g_m_integral(GmProblem(a, b, c, d, s1, m, q))
            g2 = g_m_integral(GmProblem(a, b, c, d, s2, m, q))
            assert rel(g1, g2) < 1e-10

    def test_role_swap_symmetry(self):
        q = QBase(0.35)
        p = GmProblem.auto(m=2, q=q, **FIXED_1111)
        assert rel(g_m_integral(p), g_m_integral(p.swap())) < 1e-10

    def test_spectral_convergence(self):
        # periodic trapezoid: doubling 2^10 -> 2^11 nodes moves the value
        # by less than 1e-12 on a smooth instance
        q = QBase(0.35)
        p = GmProblem.auto(m=1, q=q, **FIXED_1111)

        def value_at(n):
            psi = -math.pi + 2.0 * math.pi * np.arange(n) / n
            z = np.exp(1j * psi)
            from qmb.contour import qpoch_inf_array
            w, u = p.sigma / z, z / p.sigma
            f = (qpoch_inf_array(p.b[0] * w, q) * qpoch_inf_array(p.a[0] * u, q)
                 / (qpoch_inf_array(p.d[0] * w, q) * qpoch_inf_array(p.c[0] * u, q))
                 * np.exp(1j * p.m * psi))
            return complex(np.sum(f)) * 2.0 * math.pi / n

        v10, v11 = value_at(2 ** 10), value_at(2 ** 11)
        assert abs(v10 - v11) < 1e-12

    def test_modulus_condition_enforced(self):
        # D = B: the d-sum series diverges when |q^m b| >= |d|
        q = QBase(0.35)
        a = ParamSet.of(0.3 + 0.1j, prefix="a")
        b = ParamSet.of(-0.25 + 0.2j, prefix="b")
        c = ParamSet.of(0.15 - 0.1j, prefix="c")
        d = ParamSet.of(0.2 + 0.05j, prefix="d")
        with pytest.raises(DivergentSeries):
            g_m_sum_d(GmProblem.auto(a, b, c, d, -2, q))

    def test_shape_preconditions(self):
        q = QBase(0.35)
        e = ParamSet.empty()
        c = ParamSet.of(0.3, prefix="c")
        d = ParamSet.of(0.3, 0.2, prefix="d")
        p = GmProblem.auto(ParamSet.of(0.1, 0.2, 0.3, prefix="a"), e, c, d, 0, q)
        with pytest.raises(ConstraintViolation):
            g_m_sum_c(p)  # C < A
        p2 = GmProblem.auto(e, ParamSet.of(0.1, 0.2, 0.3, prefix="b"),
                            ParamSet.of(0.3, 0.2, prefix="c"), c, 0, q)
        with pytest.raises(ConstraintViolation):
            g_m_sum_d(p2)  # D < B

    def test_existence_regime_validated(self):
        q = QBase(0.35)
        with pytest.raises(ConstraintViolation):
            GmProblem(ParamSet.of(0.1), ParamSet.of(0.1),
                      ParamSet.of(0.8), ParamSet.of(0.1), 0.5, 0, q)
        with pytest.raises(ConstraintViolation):
            GmProblem(ParamSet.of(0.1), ParamSet.of(0.1),
                      ParamSet.of(0.1), ParamSet.of(0.9), 2.0, 0, q)

    def test_default_sigma(self):
        s = default_sigma((0.4,), (0.5,))
        assert 0.4 < s < 2.0
        with pytest.raises(ConstraintViolation):
            default_sigma((1.5,), (0.9,))


SYM_13 = dict(
    a=ParamSet.of(0.05 + 0.02j, prefix="a"),
    c=ParamSet.of(0.55, 0.5 + 0.15j, -0.52, prefix="c"),
    d1=0.5 + 0.1j, d2=-0.45 + 0.2j,
)


class TestSymmetric:
    def test_triangle_all_shapes(self):
        q = QBase(0.35)
        qq = qpoch_inf(q.q, q)
        shapes = [
            dict(a=ParamSet.empty(),
                 c=ParamSet.of(0.8, -0.78 + 0.1j, prefix="c"),
                 d1=0.8 + 0.05j, d2=-0.75 + 0j),
            SYM_13,
            dict(a=ParamSet.of(0.1 + 0.05j, -0.08, prefix="a"),
                 c=ParamSet.of(0.6, 0.55 + 0.1j, -0.58, 0.5 - 0.2j, prefix="c"),
                 d1=0.55 + 0.1j, d2=-0.5 + 0.15j),
        ]
        for i, sh in enumerate(shapes):
            p = SymmetricProblem.auto(f=cmath.exp(0.7j), q=q, **sh)
            H, J, I = h_sum(p), j_sum(p), symmetric_integral(p)
            th = p.theta_prefactor()
            assert rel(H * th, J) < 1e-9, i
            assert rel(I, 2.0 * math.pi * J / qq) < 1e-9, i
            assert rel(I, 2.0 * math.pi * th * H / qq) < 1e-9, i

    def test_d_swap_invariance(self):
        q = QBase(0.35)
        p = SymmetricProblem.auto(f=cmath.exp(0.7j), q=q, **SYM_13)
        p2 = SymmetricProblem(p.a, p.c, p.d2, p.d1, p.f, p.sigma, q)
        assert rel(h_sum(p), h_sum(p2)) < 1e-13

    def test_f_invariance_of_ratio(self):
        q = QBase(0.35)
        p = SymmetricProblem.auto(f=cmath.exp(0.7j), q=q, **SYM_13)
        p2 = SymmetricProblem(p.a, p.c, p.d1, p.d2, cmath.exp(2.1j), p.sigma, q)
        r1 = j_sum(p) / p.theta_prefactor()
        r2 = j_sum(p2) / p2.theta_prefactor()
        assert rel(r1, r2) < 1e-12

    def test_theta_parameter_kills_designated_term(self):
        # f = q^n / (c_k d1) zeroes the k-th theta weight
        q = QBase(0.35)
        base = SymmetricProblem.auto(f=cmath.exp(0.7j), q=q, **SYM_13)
        k = 1
        f = q.q ** 2 / (base.c[k] * base.d1)
        p = SymmetricProblem(base.a, base.c, base.d1, base.d2, f, base.sigma, q)
        terms = j_terms(p)
        scale = max(abs(t) for t in terms)
        assert abs(terms[k]) < 1e-12 * scale
        assert rel(sum(terms, 0j), p.theta_prefactor() * h_sum(p)) < 1e-10

    def test_matches_general_machinery(self):
        q = QBase(0.35)
        p = SymmetricProblem.auto(f=cmath.exp(0.7j), q=q, **SYM_13)
        qq = qpoch_inf(q.q, q)
        g0 = g_m_integral(to_gm(p))
        assert rel(symmetric_integral(p), 2.0 * math.pi * g0 / qq) < 1e-10

    def test_j_shape_precondition(self):
        q = QBase(0.35)
        p = SymmetricProblem.auto(ParamSet.of(0.05, 0.04, prefix="a"),
                                  ParamSet.of(0.5, -0.45, prefix="c"),
                                  0.4, -0.35, 1.0j, q)
        with pytest.raises(ConstraintViolation):
            j_sum(p)

    def test_h_rejects_lattice_pole_ratio(self):
        q = QBase(0.35)
        d1 = 0.4 + 0.0j
        p = SymmetricProblem(ParamSet.of(0.05, prefix="a"),
                             ParamSet.of(0.5, -0.45, 0.48, prefix="c"),
                             d1, d1 * q.q, 1.0j, 1.2, q)
        with pytest.raises(ConstraintViolation):
            h_terms(p)

    def test_counters_thread(self):
        q = QBase(0.35)
        p = SymmetricProblem.auto(f=cmath.exp(0.7j), q=q, **SYM_13)
        c1, c2 = EvalCounters(), EvalCounters()
        h_sum(p, counters=c1)
        symmetric_integral(p, counters=c2)
        assert c1.n_terms > 0 and c1.n_nodes == 0
        assert c2.n_nodes >= 2 ** 8
