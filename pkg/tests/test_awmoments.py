"""Tests for the weight-function moments and their three evaluation routes.

The quadrature route integrates the weight directly; the symmetric route
sums residue-type very-well-poised series; the triple-sum route is a finite
formula with an auxiliary free parameter t.  The three agree on a
well-conditioned parameter window, and each raises its own documented
failure outside its domain.
"""

import cmath
import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmb import (AWParams, BadIndex, ConstraintViolation, DivergentSeries, DomainError,
                 PoleAt, QBase, aw_weight, aw_weight_split, mu_kim_stanton,
                 mu_quadrature, mu_symmetric)

REL_TIGHT = 1e-12

# Fixed small-parameter point: fine for quadrature and the triple sum, but
# the residue-series route diverges here (see TestRoutesDisagreeByDesign).
SMALL = dict(a=0.1, b=0.2, c=0.3, d=0.4, q=0.5)


def rel(x, y) -> float:
    return abs(x - y) / max(abs(x), abs(y), 1.0e-300)


def small_params() -> AWParams:
    return AWParams(SMALL["a"], SMALL["b"], SMALL["c"], SMALL["d"],
                    QBase(SMALL["q"]))


def conditioned_params(rng: random.Random) -> AWParams:
    """Draw from the window where all three routes are well-conditioned:
    large separated real parameters so the residue series converge for
    n <= 6 and the triple sum cancels mildly."""
    while True:
        a = rng.uniform(0.72, 0.76)
        b = rng.uniform(0.80, 0.84)
        c = rng.uniform(0.88, 0.91)
        d = rng.uniform(0.94, 0.965)
        q = rng.uniform(0.35, 0.42)
        if q / (a * b * c * d) < 0.9:
            return AWParams(a, b, c, d, QBase(q))


class TestWeight:
    def test_split_form_agrees_at_fixed_point(self):
        p = small_params()
        for theta in (0.31, 1.07, 2.4, -0.8):
            assert rel(aw_weight(theta, p), aw_weight_split(theta, p)) < 1e-12

    def test_vanishes_at_endpoints(self):
        p = small_params()
        assert aw_weight(0.0, p) == 0.0
        assert abs(aw_weight(math.pi, p)) < 1e-14

    @settings(max_examples=30, deadline=None)
    @given(theta=st.floats(min_value=0.05, max_value=3.1))
    def test_even_in_theta(self, theta):
        p = small_params()
        assert rel(aw_weight(theta, p), aw_weight(-theta, p)) < 1e-12

    def test_positive_on_real_window(self):
        p = conditioned_params(random.Random(0))
        for theta in (0.4, 1.2, 2.0, 2.9):
            w = aw_weight(theta, p)
            assert abs(w.imag) < 1e-14 * abs(w)
            assert w.real > 0.0

    def test_parameter_validation(self):
        q = QBase(0.5)
        with pytest.raises(DomainError):
            AWParams(1.1, 0.2, 0.3, 0.4, q)
        with pytest.raises(DomainError):
            # Inside the unit disk but within guard distance of the pole
            # lattice point q^0 = 1.
            AWParams(1.0 - 1e-12, 0.2, 0.3, 0.4, q)


class TestNormalization:
    def test_all_routes_give_unit_mass(self):
        p = conditioned_params(random.Random(1))
        assert abs(mu_quadrature(0, p) - 1.0) < 1e-10
        assert abs(mu_symmetric(0, p) - 1.0) < 1e-10
        assert abs(mu_kim_stanton(0, 0.3, p) - 1.0) < 1e-10

    def test_triple_sum_unit_mass_is_exact(self):
        assert mu_kim_stanton(0, 0.7, small_params()) == 1.0 + 0j


class TestTripleAgreement:
    def test_three_routes_agree_on_conditioned_draws(self):
        rng = random.Random(2)
        for _ in range(3):
            p = conditioned_params(rng)
            for n in range(7):
                mq = mu_quadrature(n, p)
                ms = mu_symmetric(n, p)
                mk = mu_kim_stanton(n, 0.8, p)
                assert rel(mq, ms) < 1e-8, (n, rel(mq, ms))
                assert rel(mq, mk) < 1e-8, (n, rel(mq, mk))

    def test_triple_sum_t_independence(self):
        # The auxiliary shift t drops out exactly; numerically the sum is
        # best conditioned for moderate |t|, so the tight bound uses two
        # such values and a complex t gets a looser one.
        p = conditioned_params(random.Random(3))
        for n in range(7):
            v1 = mu_kim_stanton(n, 0.8, p)
            v2 = mu_kim_stanton(n, 0.6, p)
            v3 = mu_kim_stanton(n, 0.55 + 0.25j, p)
            assert rel(v1, v2) < 1e-10, (n, rel(v1, v2))
            assert rel(v1, v3) < 1e-8, (n, rel(v1, v3))

    def test_quadrature_matches_triple_sum_at_small_point(self):
        p = small_params()
        assert rel(mu_quadrature(2, p), mu_kim_stanton(2, 0.7, p)) < 1e-10


class TestSymmetry:
    def test_moments_symmetric_under_parameter_permutations(self):
        p = conditioned_params(random.Random(4))
        base = mu_symmetric(1, p)
        for perm in itertools.permutations((p.a, p.b, p.c, p.d)):
            v = mu_symmetric(1, AWParams(*perm, p.q))
            assert rel(v, base) < 1e-10

    def test_quadrature_symmetric_under_swap(self):
        p = conditioned_params(random.Random(5))
        swapped = AWParams(p.d, p.b, p.c, p.a, p.q)
        assert rel(mu_quadrature(1, p), mu_quadrature(1, swapped)) < 1e-10


class TestPowerBasisExpansion:
    def test_cosine_power_expands_into_exponentials(self):
        # The triple-sum route rests on expanding cos^n(theta) in the
        # exponential basis with binomial weights; verify that step alone.
        for n in range(7):
            for theta in (0.3, 1.1, 2.5):
                direct = math.cos(theta) ** n
                expanded = sum(
                    math.comb(n, k) * cmath.exp(1j * theta * (n - 2 * k))
                    for k in range(n + 1)) / 2.0 ** n
                assert abs(expanded.imag) < 1e-14
                assert abs(expanded.real - direct) < 1e-13


class TestRoutesDisagreeByDesign:
    def test_residue_route_rejects_small_parameters(self):
        # q/(abcd) > 1 here: every residue series diverges, unless the
        # ratio screen fires first on a/b = q exactly.
        with pytest.raises((ConstraintViolation, DivergentSeries)):
            mu_symmetric(2, small_params())

    def test_residue_route_rejects_ratio_on_power_lattice(self):
        q = QBase(0.4)
        with pytest.raises(ConstraintViolation):
            mu_symmetric(1, AWParams(0.9, 0.9 * 0.4, 0.7, 0.95, q))


class TestErrors:
    def test_order_cap(self):
        p = small_params()
        with pytest.raises(BadIndex):
            mu_quadrature(13, p)
        with pytest.raises(BadIndex):
            mu_quadrature(-1, p)
        with pytest.raises(BadIndex):
            mu_symmetric(-1, p)
        with pytest.raises(BadIndex):
            mu_kim_stanton(-1, 0.3, p)

    def test_triple_sum_pole_at_zero_shift(self):
        p = small_params()
        with pytest.raises(PoleAt):
            mu_kim_stanton(2, 0.0, p)

    def test_triple_sum_pole_on_lattice(self):
        p = small_params()
        with pytest.raises(PoleAt):
            mu_kim_stanton(2, 1.0 / math.sqrt(0.5), p)
