"""Basic hypergeometric series evaluation.

The series handled here is

    phi(a_1..a_{r+1}; b_1..b_s; q, z)
        = sum_k  (a_1,..,a_{r+1};q)_k / ((q,b_1,..,b_s;q)_k)
                 * ((-1)^k q^C(k,2))^(s-r) * z^k,

extended by the zero-padding index m: m = -p prepends p zero parameters to
the numerator list, m = +p appends p zeros to the denominator list.  Zero
parameters contribute unit Pochhammer factors but shift the compensation
exponent, so the effective exponent is E = s - r + m throughout.

Classification: a series is Terminating(n) when some numerator parameter
equals q^-n exactly (the smallest such n wins and the sum has n+1 terms);
otherwise it is Entire for E > 0, DiskConvergent (needs |z| < 1) for E = 0,
and Divergent for E < 0.

Very-well-poised series rW_{r-1}(a; b_1..b_{r-3}; q, z) expand to phi with
the inserted numerator pair (+-q sqrt(a)), denominator pair (+-sqrt(a)), and
denominators q a/b_j.  The +-sqrt(a) pairs enter only as products of
conjugate factors, so the expansion is insensitive to the branch of sqrt(a).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import (BadIndex, DivergentSeries, DomainError, NoConvergence,
                     PoleInDenominator)
from .qcore import (EVAL_GUARD, INF, ExclusionKind, ParamSet, QBase,
                    exclusion_check, qpoch, qpoch_multi)

# Pochhammer products are recomputed from scratch at this stride to re-anchor
# the multiplicative term recurrence against drift.
REANCHOR_STRIDE = 64
# Exponent scan limit for exact q^-n terminating detection.
_N_TERM_SCAN = 512


@dataclass
class EvalCounters:
    """Accumulates work counts across evaluations (series terms, quad nodes)."""
    n_terms: int = 0
    n_nodes: int = 0

    def add(self, other: "EvalCounters") -> None:
        self.n_terms += other.n_terms
        self.n_nodes += other.n_nodes


@dataclass(frozen=True)
class ConvergenceClass:
    """Convergence class of a series: kind in {"Terminating", "Entire",
    "DiskConvergent", "Divergent"}; n is set for Terminating."""
    kind: str
    n: Optional[int] = None

    @property
    def is_terminating(self) -> bool:
        return self.kind == "Terminating"


ENTIRE = ConvergenceClass("Entire")
DISK = ConvergenceClass("DiskConvergent")
DIVERGENT = ConvergenceClass("Divergent")


@dataclass(frozen=True)
class SeriesSpec:
    """A padded basic hypergeometric series instance.

    numer/denom hold the nonzero parameters (zeros are represented by the pad
    index, never stored); pad is the zero-padding index m; z is the argument.
    """
    numer: ParamSet
    denom: ParamSet
    q: QBase
    z: complex
    pad: int = 0

    @property
    def exponent(self) -> int:
        """Effective compensation exponent E = s - r + m."""
        r = len(self.numer) - 1
        s = len(self.denom)
        return s - r + self.pad


def spec(numer, denom, q: QBase, z, pad: int = 0) -> SeriesSpec:
    """Build a SeriesSpec from plain value iterables."""
    nps = numer if isinstance(numer, ParamSet) else ParamSet.of(*numer, prefix="a")
    dps = denom if isinstance(denom, ParamSet) else ParamSet.of(*denom, prefix="b")
    return SeriesSpec(nps, dps, q, z, pad)


def _terminating_order(a, q: QBase) -> Optional[int]:
    """The n >= 0 with a == q^-n exactly, if any.

    Exact equality is required; the sampler constructs such values as
    q.q ** (-n), so detection tests the same expression.
    """
    if a == 0:
        return None
    n_hat = math.log(float(abs(a))) / math.log(q.abs_q)
    for n in {math.floor(-n_hat) + d for d in (-1, 0, 1)}:
        if 0 <= n <= _N_TERM_SCAN and a == q.q ** (-n):
            return n
    return None


def classify(s: SeriesSpec) -> ConvergenceClass:
    """Convergence class; Terminating takes precedence over the E-based rule."""
    orders = [n for n in (_terminating_order(a, s.q) for a in s.numer)
              if n is not None]
    if orders:
        return ConvergenceClass("Terminating", min(orders))
    e = s.exponent
    if e > 0:
        return ENTIRE
    if e == 0:
        return DISK
    return DIVERGENT


def phi(s: SeriesSpec, counters: Optional[EvalCounters] = None,
        guard: float = EVAL_GUARD):
    """Evaluate the padded basic hypergeometric series.

    Terms are updated multiplicatively (ratio of successive terms) and the
    full Pochhammer product is recomputed every REANCHOR_STRIDE terms to stop
    drift.  Nonterminating sums stop once three consecutive terms fall below
    eps_tail relative to the partial sum and a geometric bound on the
    remaining tail closes below the same tolerance.

    Raises DivergentSeries for a divergent classification (or |z| >= 1 in the
    disk-convergent case), PoleInDenominator for denominator parameters
    within the guard radius of Omega_q (and for near-terminating divergent
    numerators), NoConvergence if n_max is hit.
    """
    q = s.q
    for b in s.denom:
        w = exclusion_check(b, q, guard)
        if w.kind is ExclusionKind.OMEGA:
            raise PoleInDenominator(
                f"denominator parameter within {guard:g} of q^-{w.nearest_k}")
    cls = classify(s)
    if not cls.is_terminating:
        if cls.kind == "Divergent":
            # a near-miss of q^-n in the numerator is a conditioning hazard,
            # not a licence to truncate
            for a in s.numer:
                if exclusion_check(a, q, guard).kind is ExclusionKind.OMEGA:
                    raise PoleInDenominator(
                        "near-terminating numerator in a divergent series")
            raise DivergentSeries(f"exponent E = {s.exponent} < 0")
        if cls.kind == "DiskConvergent" and abs(s.z) >= 1.0:
            raise DivergentSeries(f"|z| = {float(abs(s.z)):.6g} >= 1 with E = 0")

    e = s.exponent
    numer = s.numer.values()
    denom = s.denom.values()
    z = s.z
    one = 1 - q.q * 0

    def ratio(k):
        # T_{k+1}/T_k
        num = one
        for a in numer:
            num = num * (1 - a * q.pow(k))
        den = (1 - q.pow(k + 1))
        for b in denom:
            den = den * (1 - b * q.pow(k))
        r = num / den * z
        if e:
            r = r * (-q.pow(k)) ** e
        return r

    def anchor(k):
        # T_k recomputed from scratch; None when it under/overflows
        t = one
        for a in numer:
            t = t * qpoch(a, q, k)
        d = qpoch(q.q, q, k)
        for b in denom:
            d = d * qpoch(b, q, k)
        t = t / d * z ** k
        if e:
            t = t * ((-1) ** k * q.q ** (k * (k - 1) // 2)) ** e
        if t == 0 or not math.isfinite(float(abs(t))):
            return None
        return t

    total = one
    term = one
    n_used = 0

    if cls.is_terminating:
        n = cls.n or 0
        for k in range(n):
            term = term * ratio(k)
            total = total + term
        n_used = n + 1
        if counters is not None:
            counters.n_terms += n_used
        if not math.isfinite(float(abs(total))):
            raise PoleInDenominator("nonfinite terminating sum")
        return total

    abs_num = [float(abs(a)) for a in numer]
    abs_den = [float(abs(b)) for b in denom]
    az = float(abs(z))
    eps = q.eps_tail
    small = 0
    k = 0
    while True:
        if k and k % REANCHOR_STRIDE == 0:
            t2 = anchor(k)
            if t2 is not None:
                term = t2
        term = term * ratio(k)
        k += 1
        total = total + term
        if not math.isfinite(float(abs(total))):
            raise PoleInDenominator("nonfinite partial sum")
        tol = eps * max(1.0, float(abs(total)))
        if abs(term) < tol:
            small += 1
        else:
            small = 0
        if small >= 3 and _tail_closed(abs_num, abs_den, az, e, q, k,
                                       float(abs(term)), tol):
            break
        if k > q.n_max:
            raise NoConvergence(f"series did not converge in n_max={q.n_max} terms")
    n_used = k + 1
    if counters is not None:
        counters.n_terms += n_used
    return total


def _tail_closed(abs_num, abs_den, az, e, q: QBase, k: int,
                 last: float, tol: float) -> bool:
    """Geometric tail bound from the term ratio.

    For j >= k the ratio modulus is at most
        az * |q|^(jE) * prod(1+|a||q|^j) / ((1-|q|^(j+1)) prod(1-|b||q|^j)),
    monotone decreasing once |b||q|^k < 1/2 for every denominator parameter.
    The bound closes when rho < 1 and last*rho/(1-rho) < tol.
    """
    aq = q.abs_q
    qk = aq ** k
    if any(b * qk >= 0.5 for b in abs_den) or aq ** (k + 1) >= 0.5:
        return False
    num = 1.0
    for a in abs_num:
        num *= 1.0 + a * qk
    den = 1.0 - aq ** (k + 1)
    for b in abs_den:
        den *= 1.0 - b * qk
    rho = az * num / den
    if e:
        rho *= aq ** (k * e)
    if rho >= 1.0:
        return False
    return last * rho / (1.0 - rho) < tol


# ---------------------------------------------------------------------------
# very-well-poised series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VWPSpec:
    """Very-well-poised rW_{r-1}(a; b_1..b_{r-3}; q, z)."""
    a: complex
    tail: ParamSet
    q: QBase
    z: complex

    def expand(self) -> SeriesSpec:
        """The underlying rphi_{r-1}: numerator (a, +-q sqrt(a), b_j),
        denominator (+-sqrt(a), q a/b_j)."""
        if self.a == 0:
            raise DomainError("very-well-poised parameter a must be nonzero")
        ra = self.a ** 0.5  # principal branch; enters as +- pairs only
        qa = self.q.q * self.a
        numer = [self.a, self.q.q * ra, -self.q.q * ra] + list(self.tail)
        denom = [ra, -ra] + [qa / b for b in self.tail]
        return spec(numer, denom, self.q, self.z)


def vwp(w: VWPSpec, counters: Optional[EvalCounters] = None,
        guard: float = EVAL_GUARD):
    """Evaluate a very-well-poised series through its phi expansion."""
    return phi(w.expand(), counters, guard)


def w65_closed_form(a, b, c, d, q: QBase):
    """Closed product form of the summable 6W5 at argument z = qa/(bcd):

        6W5(a; b, c, d; q, qa/(bcd))
            = (qa, qa/bc, qa/bd, qa/cd; q)_inf
              / ((qa/b, qa/c, qa/d, qa/bcd; q)_inf).
    """
    qa = q.q * a
    num = (qa, qa / (b * c), qa / (b * d), qa / (c * d))
    den = (qa / b, qa / c, qa / d, qa / (b * c * d))
    return qpoch_multi(num, q) / qpoch_multi(den, q)
