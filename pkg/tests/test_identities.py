"""Tests for the identity catalog and its check/sweep machinery.

Each descriptor binds an independent left and right evaluation of one
transformation or summation law; check() reports the relative residual at a
bound parameter point.  The sampler supplies admissible points.
"""

import pytest

from qmb import (ConstraintViolation, QBase, catalog, check, sample,
                 sweep_free)
from qmb.identities import base as ident_base
from qmb.identities import wp32

DESCRIPTORS = {d.id: d for d in catalog()}

EXPECTED_FAMILIES = {
    "theta_ratio": 3,
    "wp32": 5,
    "vwp54": 4,
    "vwp87": 5,
    "bal87": 8,
    "prod_sq": 8,
    "verma_jain": 4,
}


def rel(x, y) -> float:
    return abs(x - y) / max(abs(x), abs(y), 1.0e-300)


class TestCatalog:
    def test_size_and_uniqueness(self):
        ids = [d.id for d in catalog()]
        assert len(ids) == len(set(ids))
        assert len(ids) >= 28

    def test_family_counts(self):
        got = {}
        for d in catalog():
            got[d.family] = got.get(d.family, 0) + 1
        assert got == EXPECTED_FAMILIES

    def test_known_ids_present(self):
        for identity_id in ("VWP87_FOUR", "WP32_SUM2", "BAL87_SIX",
                            "WATSON_LIMIT", "BD_SQ_A", "VJ10_FIVE"):
            assert identity_id in DESCRIPTORS

    def test_kinds_and_tags(self):
        for d in catalog():
            assert d.kind in ("integral", "sum")
            # Independence of the two evaluation routes: no shared tag
            # beyond the common primitive layer.
            assert (d.lhs_tags & d.rhs_tags) <= {"qcore"}
            if d.kind == "integral":
                assert "quad" in (d.lhs_tags | d.rhs_tags)
            else:
                assert "quad" not in (d.lhs_tags | d.rhs_tags)

    def test_every_descriptor_declares_nome_rule(self):
        for d in catalog():
            rules = dict(d.free_params)
            assert rules["q"].kind == "nome"

    def test_get_unknown_id(self):
        with pytest.raises(KeyError):
            ident_base.get("NOSUCH")


class TestCheck:
    def test_two_term_transformation_at_fixed_point(self):
        rep = check("WP32_SUM2",
                    dict(a=0.2, b=0.3, c=0.4, z=0.35, q=0.45), tol=1e-9)
        assert rep.passed
        assert rep.rel_residual < 1e-9

    def test_report_residual_consistent(self):
        rep = check("WP32_SUM2",
                    dict(a=0.2, b=0.3, c=0.4, z=0.35, q=0.45))
        recomputed = abs(rep.lhs - rep.rhs) / max(
            abs(rep.lhs), abs(rep.rhs), 1.0e-300)
        assert rel(rep.rel_residual, recomputed) < 1e-12
        assert rep.abs_residual == abs(rep.lhs - rep.rhs)
        assert rep.n_terms > 0

    def test_missing_parameter_skips(self):
        rep = check("WP32_SUM2", dict(a=0.2, b=0.3, c=0.4, q=0.45))
        assert rep.skipped
        assert "z" in rep.reason

    def test_guarded_point_skips(self):
        # z on the pole lattice of the series denominators.
        bound = dict(a=0.2, b=0.3, c=0.4, z=1.0 / 0.45, q=0.45)
        rep = check("WP32_SUM2", bound)
        assert rep.skipped
        assert rep.reason

    def test_bad_nome_skips(self):
        rep = check("WP32_SUM2", dict(a=0.2, b=0.3, c=0.4, z=0.35, q=1.2))
        assert rep.skipped

    def test_sum_kind_entries_pass_on_sampled_points(self):
        for d in catalog():
            if d.kind != "sum":
                continue
            for bound in sample(d.id, count=2, seed=10):
                rep = check(d.id, bound, tol=1e-8)
                assert rep.passed, (d.id, rep.status, rep.reason,
                                    rep.rel_residual)

    def test_integral_kind_entries_pass_on_sampled_points(self):
        for d in catalog():
            if d.kind != "integral":
                continue
            bound = sample(d.id, count=1, seed=10)[0]
            rep = check(d.id, bound, tol=1e-8)
            assert rep.passed, (d.id, rep.status, rep.reason,
                                rep.rel_residual)


class TestSweep:
    def test_free_scale_leaves_lhs_constant(self):
        bound = sample("VWP87_FOUR", count=1, seed=3)[0]
        values = [0.8, 1.05 + 0.2j, 1.3 - 0.15j]
        reports = sweep_free("VWP87_FOUR", bound, "h", values)
        assert len(reports) == len(values)
        for rep in reports:
            assert rep.passed, (rep.status, rep.reason)
        lhs_values = [rep.lhs for rep in reports]
        for v in lhs_values[1:]:
            assert rel(v, lhs_values[0]) < 1e-10

    def test_quadrature_radius_invariance(self):
        bound = sample("THETA_RATIO_SUM", count=1, seed=4)[0]
        reports = sweep_free("THETA_RATIO_SUM", bound, "sigma",
                             [0.92, 1.0, 1.08])
        for rep in reports:
            assert rep.passed, (rep.status, rep.reason)

    def test_unknown_free_parameter(self):
        bound = sample("VWP87_FOUR", count=1, seed=3)[0]
        with pytest.raises(ConstraintViolation):
            sweep_free("VWP87_FOUR", bound, "nosuch", [1.0])


class TestReduction:
    def test_five_term_collapses_to_four_at_killing_scale(self):
        # At h = z the theta weight of the fifth series vanishes, so the
        # five-term evaluator must reproduce the four-term one.
        desc5 = DESCRIPTORS["WP32_FIVE"]
        desc4 = DESCRIPTORS["WP32_FOUR_A"]
        for bound in sample("WP32_FOUR_A", count=3, seed=8):
            q = QBase(bound["q"])
            b5 = desc5.derive(dict(bound, h=bound["z"]), q)
            b4 = desc4.derive(dict(bound), q)
            five = desc5.rhs(b5, q, None, None)
            four = desc4.rhs(b4, q, None, None)
            assert rel(five, four) < 1e-9

    def test_killed_term_vanishes(self):
        for bound in sample("WP32_FOUR_A", count=3, seed=9):
            q = QBase(bound["q"])
            derived = DESCRIPTORS["WP32_FIVE"].derive(
                dict(bound, h=bound["z"]), q)
            killed = wp32._t1_term(derived, q, None, derived["h"])
            scale = abs(wp32._lhs(derived, q, None, None))
            assert abs(killed) < 1e-12 * scale
