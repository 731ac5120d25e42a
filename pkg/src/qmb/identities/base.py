"""Identity-catalog infrastructure.

An IdentityDescriptor binds together: a stable id, sampling rules for its
free parameters, admissibility constraints, and two independent evaluators
(lhs, rhs).  Independence is structural: the single-series side is always
computed by the direct summation helpers in this module (term-by-term
q-shifted factorials, nothing shared with the production series engine),
while the other side goes through the hyperseries/contour machinery.  A
build-time tag check asserts the two sides share no route beyond qcore.

check() never raises for a bad parameter point: constraint violations and
convergence failures become Skipped reports; only a genuine numeric
disagreement is a Fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Sequence, Tuple

from ..errors import (CapExceeded, ConstraintViolation, DivergentSeries,
                      DomainError, NoConvergence, PoleAt, PoleInDenominator,
                      QuadNoConvergence)
from ..hyperseries import EvalCounters
from ..qcore import QBase, exclusion_check, in_omega, in_upsilon, qpoch

# Default check tolerance (binary64 evaluations).
DEFAULT_TOL = 1.0e-8
# Relative-residual floor: avoids 0/0 when both sides vanish.
RESIDUAL_FLOOR = 1.0e-300
# Guard radius used when validating constraints at evaluation time.
CHECK_GUARD = 1.0e-6
# A multi-term side summing to net N from terms of gross magnitude G
# carries binary64 rounding noise of order eps*G; points with
# G > CANCELLATION_LIMIT * max(N, 1) could push that noise past
# DEFAULT_TOL, where the harness cannot tell identity failure from
# evaluation noise, so they are inadmissible.
CANCELLATION_LIMIT = 2.0e5

_SKIPPABLE = (ConstraintViolation, DivergentSeries, QuadNoConvergence,
              NoConvergence, PoleAt, PoleInDenominator, CapExceeded,
              DomainError, OverflowError, ZeroDivisionError)

Bound = Dict[str, complex]
Evaluator = Callable[[Bound, QBase, EvalCounters, float], complex]


# ---------------------------------------------------------------------------
# sampling rules (interpreted by the sampler module)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Rule:
    """Sampling rule for one free parameter.

    kind:
      "annulus"   modulus uniform in [lo, hi], phase uniform
      "real"      value uniform in [lo, hi] on the positive axis
      "circle"    modulus exactly lo (default 1), phase uniform
      "qpow"      exact integer power q^n with n uniform in [int(lo), int(hi)]
      "nome"      the base q itself: real, uniform in [lo, hi]
      "int"       plain integer uniform in [int(lo), int(hi)]
    """
    kind: str
    lo: float = 0.0
    hi: float = 0.0


def annulus(lo: float = 0.1, hi: float = 0.95) -> Rule:
    return Rule("annulus", lo, hi)


def real_band(lo: float, hi: float) -> Rule:
    return Rule("real", lo, hi)


def circle(radius: float = 1.0) -> Rule:
    return Rule("circle", radius, radius)


def qpow(nlo: int = -1, nhi: int = 2) -> Rule:
    return Rule("qpow", float(nlo), float(nhi))


def nome(lo: float = 0.1, hi: float = 0.6) -> Rule:
    return Rule("nome", lo, hi)


def int_range(lo: int, hi: int) -> Rule:
    return Rule("int", float(lo), float(hi))


# ---------------------------------------------------------------------------
# constraints
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Constraint:
    """An admissibility predicate over the derived parameter map.

    check() returns None when satisfied, otherwise a human-readable reason
    used for Skipped reports and sampler rejection.
    """
    reason: str
    fn: Callable[[Bound, QBase, float], bool]

    def check(self, bound: Bound, q: QBase, guard: float) -> Optional[str]:
        try:
            ok = self.fn(bound, q, guard)
        except _SKIPPABLE as exc:
            return f"{self.reason}: {exc}"
        return None if ok else self.reason


def modulus_lt(num: Callable[[Bound], complex], den: Callable[[Bound], complex],
               label: str, margin: float = 1.0) -> Constraint:
    """|num(bound)| * margin < |den(bound)|."""
    return Constraint(
        f"modulus condition {label}",
        lambda b, q, g: abs(num(b)) * margin < abs(den(b)))


def off_omega(expr: Callable[[Bound], complex], label: str) -> Constraint:
    return Constraint(
        f"{label} too close to a pole lattice point q^-k",
        lambda b, q, g: not in_omega(expr(b), q, g))


def off_upsilon(expr: Callable[[Bound], complex], label: str) -> Constraint:
    return Constraint(
        f"{label} too close to the lattice q^k",
        lambda b, q, g: not in_upsilon(expr(b), q, g))


def ratios_off_upsilon(exprs: Callable[[Bound], Sequence[complex]],
                       label: str) -> Constraint:
    def ok(b: Bound, q: QBase, g: float) -> bool:
        vals = tuple(exprs(b))
        for i, x in enumerate(vals):
            for j, y in enumerate(vals):
                if i != j and in_upsilon(x / y, q, g):
                    return False
        return True
    return Constraint(f"pairwise ratio of {label} on the lattice q^k", ok)


def bounded_cancellation(parts: Callable[[Bound, QBase], Sequence[complex]],
                         label: str) -> Constraint:
    """Admissible only where the multi-term side is certifiable at binary64.

    parts must return that side's top-level addends at final scale; the
    draw is rejected when their gross magnitude exceeds CANCELLATION_LIMIT
    times the net sum.
    """
    def ok(b: Bound, q: QBase, g: float) -> bool:
        vals = tuple(parts(b, q))
        gross = sum(abs(v) for v in vals)
        net = abs(sum(vals))
        return gross <= CANCELLATION_LIMIT * max(net, 1.0)
    return Constraint(f"{label} cancellation beyond the binary64 "
                      "certification budget", ok)


# ---------------------------------------------------------------------------
# direct summation evaluators (the independent route)
# ---------------------------------------------------------------------------

_DIRECT_CAP = 5000


def direct_phi(numer: Sequence[complex], denom: Sequence[complex], q: QBase,
               z: complex, pad: int = 0,
               counters: Optional[EvalCounters] = None,
               terminate: Optional[int] = None) -> complex:
    """Reference basic hypergeometric sum: every term rebuilt from scratch
    with finite q-shifted factorials.  Intentionally naive; shares only
    qcore.qpoch with the production engine.

    `terminate` forces an exact (n+1)-term sum for terminating series whose
    terminating numerator parameter is known to the caller.
    """
    r = len(numer) - 1
    s = len(denom)
    e = s - r + pad
    total = 0j
    small = 0
    k = 0
    cap = terminate + 1 if terminate is not None else _DIRECT_CAP
    while k < cap:
        t = 1.0 + 0j
        for a in numer:
            t = t * qpoch(a, q, k)
        t = t / qpoch(q.q, q, k)
        for b in denom:
            t = t / qpoch(b, q, k)
        t = t * ((-1) ** k * q.q ** (k * (k - 1) // 2)) ** e * z ** k
        total += t
        if counters is not None:
            counters.n_terms += 1
        k += 1
        if terminate is None:
            if abs(t) < q.eps_tail * max(1.0, abs(total)):
                small += 1
                if small >= 3:
                    return total
            else:
                small = 0
            if not (abs(t) < math.inf):
                raise PoleInDenominator("direct summation hit a pole")
    if terminate is not None:
        return total
    raise NoConvergence(f"direct summation: no convergence in {cap} terms")


def direct_vwp(a: complex, tail: Sequence[complex], q: QBase, z: complex,
               counters: Optional[EvalCounters] = None,
               terminate: Optional[int] = None) -> complex:
    """Reference very-well-poised sum via its standard expansion, summed by
    direct_phi.  The square root of the special parameter is resolved once
    (principal branch); the +- pairs make the value branch-independent."""
    ra = a ** 0.5
    numer = [a, q.q * ra, -q.q * ra] + list(tail)
    denom = [ra, -ra] + [q.q * a / b for b in tail]
    return direct_phi(numer, denom, q, z, 0, counters, terminate)


# ---------------------------------------------------------------------------
# descriptor and report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityDescriptor:
    """One verifiable identity.

    Fields
    ------
    id : stable catalog identifier
    summary : one-line statement of what is being checked, in plain words
    family : grouping key for reporting
    kind : "integral" (rhs uses quadrature) or "sum" (series-to-series)
    free_params : (name, Rule) pairs the sampler must bind
    derive : closure completing the bound map with composite values
        (square/cube roots are resolved here exactly once per point)
    constraints : admissibility predicates over the derived map
    lhs, rhs : independent evaluators over the derived map
    lhs_tags, rhs_tags : evaluation-route tags; the build-time check
        asserts the two sides share nothing beyond qcore
    rhs_only_params : free params the lhs provably does not depend on
        (free theta parameters, quadrature radius); sweep_free asserts
        lhs constancy across them
    """
    id: str
    summary: str
    family: str
    kind: str
    free_params: Tuple[Tuple[str, Rule], ...]
    lhs: Evaluator
    rhs: Evaluator
    lhs_tags: frozenset
    rhs_tags: frozenset
    constraints: Tuple[Constraint, ...] = ()
    derive: Callable[[Bound, QBase], Bound] = lambda b, q: b
    rhs_only_params: frozenset = frozenset()

    def __post_init__(self) -> None:
        shared = (self.lhs_tags & self.rhs_tags) - {"qcore"}
        if shared:
            raise ConstraintViolation(
                f"{self.id}: lhs/rhs share evaluation routes {sorted(shared)}")
        if self.kind not in ("integral", "sum"):
            raise ConstraintViolation(f"{self.id}: bad kind {self.kind!r}")

    def param_names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.free_params)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one identity check at one parameter point."""
    id: str
    bound: Dict[str, complex]
    lhs: Optional[complex]
    rhs: Optional[complex]
    abs_residual: Optional[float]
    rel_residual: Optional[float]
    n_terms: int
    n_nodes: int
    status: str                      # "Pass" | "Fail" | "Skipped"
    reason: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == "Pass"

    @property
    def skipped(self) -> bool:
        return self.status == "Skipped"


_REGISTRY: Dict[str, IdentityDescriptor] = {}


def register(desc: IdentityDescriptor) -> IdentityDescriptor:
    if desc.id in _REGISTRY:
        raise ConstraintViolation(f"duplicate identity id {desc.id!r}")
    _REGISTRY[desc.id] = desc
    return desc


def catalog() -> Tuple[IdentityDescriptor, ...]:
    """All registered identities in registration order (duplicate-free by
    construction of the registry)."""
    from . import _load_all
    _load_all()
    return tuple(_REGISTRY.values())


def get(identity_id: str) -> IdentityDescriptor:
    from . import _load_all
    _load_all()
    try:
        return _REGISTRY[identity_id]
    except KeyError:
        raise KeyError(f"unknown identity id {identity_id!r}") from None


def _skip(desc: IdentityDescriptor, bound: Bound, reason: str,
          counters: EvalCounters) -> CheckReport:
    return CheckReport(desc.id, dict(bound), None, None, None, None,
                       counters.n_terms, counters.n_nodes, "Skipped", reason)


def check(identity_id: str, bound: Bound, tol: float = DEFAULT_TOL,
          eps_quad: Optional[float] = None) -> CheckReport:
    """Evaluate both sides of one identity at one bound parameter point.

    Constraint violations and convergence failures yield Skipped (with the
    reason); Pass iff the relative residual |lhs-rhs|/max(|lhs|,|rhs|,floor)
    is below tol.
    """
    desc = get(identity_id)
    counters = EvalCounters()
    try:
        q = QBase(bound["q"])
    except (KeyError, DomainError) as exc:
        return _skip(desc, bound, f"bad nome: {exc}", counters)
    missing = [n for n in desc.param_names() if n not in bound]
    if missing:
        return _skip(desc, bound, f"missing parameters {missing}", counters)
    try:
        derived = desc.derive(dict(bound), q)
    except _SKIPPABLE as exc:
        return _skip(desc, bound, f"derive failed: {exc}", counters)
    for con in desc.constraints:
        why = con.check(derived, q, CHECK_GUARD)
        if why is not None:
            return _skip(desc, bound, why, counters)
    eps = eps_quad if eps_quad is not None else _default_eps_quad()
    try:
        lhs = desc.lhs(derived, q, counters, eps)
    except _SKIPPABLE as exc:
        return _skip(desc, bound, f"lhs: {exc}", counters)
    try:
        rhs = desc.rhs(derived, q, counters, eps)
    except _SKIPPABLE as exc:
        return _skip(desc, bound, f"rhs: {exc}", counters)
    ar = abs(lhs - rhs)
    rr = ar / max(abs(lhs), abs(rhs), RESIDUAL_FLOOR)
    status = "Pass" if rr < tol else "Fail"
    return CheckReport(desc.id, dict(bound), lhs, rhs, ar, rr,
                       counters.n_terms, counters.n_nodes, status)


def _default_eps_quad() -> float:
    from ..contour import DEFAULT_EPS_QUAD
    return DEFAULT_EPS_QUAD


def sweep_free(identity_id: str, bound: Bound, free: str, values: Sequence,
               tol: float = DEFAULT_TOL,
               eps_quad: Optional[float] = None):
    """check() at each value of one free parameter.

    When the descriptor declares the lhs independent of `free`, the sweep
    additionally asserts the lhs values returned are pairwise constant to
    tol (relative), raising ConstraintViolation otherwise.
    """
    desc = get(identity_id)
    if free not in desc.param_names():
        raise ConstraintViolation(f"{identity_id}: {free!r} is not a free parameter")
    reports = []
    for v in values:
        b = dict(bound)
        b[free] = v
        reports.append(check(identity_id, b, tol, eps_quad))
    if free in desc.rhs_only_params:
        fixed = [r.lhs for r in reports if r.lhs is not None]
        for i, x in enumerate(fixed):
            for y in fixed[i + 1:]:
                dev = abs(x - y) / max(abs(x), abs(y), RESIDUAL_FLOOR)
                if dev >= tol:
                    raise ConstraintViolation(
                        f"{identity_id}: lhs varied with {free} (dev {dev:.3g})")
    return reports
