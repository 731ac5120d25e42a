"""Askey-Wilson weight and moments by three independent routes.

The weight on the angle variable is the classical four-parameter product

    w(theta) = (e^{2i theta}, e^{-2i theta};q)_inf
               / prod_{v in {a,b,c,d}} (v e^{i theta}, v e^{-i theta};q)_inf,

with an equivalent eight-factor form obtained by splitting each numerator
factor through the quadratic base change.  The n-th power moment mu_n is
normalized so mu_0 = 1 and is computed three ways that share only qcore:

  mu_quadrature   periodic trapezoid quadrature of the weight display;
  mu_symmetric    a binomial sum of symmetric-group orbits of a
                  very-well-poised 6W5, convergent when |q^{1+|n-2k|}|
                  < |abcd| for every needed k (DivergentSeries otherwise);
  mu_kim_stanton  the Kim-Stanton finite triple sum with Gaussian binomial
                  weights and a terminating very-well-poised 8W7, whose
                  value is independent of its free parameter t.

Route conditioning: the symmetric route needs a large |abcd| relative to
|q|; the triple sum cancels q-powers growing like |q|^(-n(n-1)/2), so it
wants |q| away from 0.  Cross-route comparisons should draw parameters in
the window where both hold (moduli well above the default single-route
band, |q| around 0.4).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (BadIndex, ConstraintViolation, DivergentSeries,
                     DomainError, PoleAt)
from .contour import DEFAULT_EPS_QUAD, quad_unit_circle
from .hyperseries import EvalCounters, VWPSpec, vwp
from .identities.base import direct_vwp
from .qcore import (ParamSet, QBase, idem, in_omega, in_upsilon, qbinomial,
                    qpoch_inf, qpoch_multi)

# Largest moment order: Gaussian-binomial weights grow factorially and the
# triple sum cancels q-powers of size |q|^(-n(n-1)/2) in binary64.
MAX_MOMENT_ORDER = 12

# Default modulus band for real parameter draws in single-route checks;
# cross-route draws need larger moduli (see module docstring).
AW_REAL_BAND = (0.0, 0.6)


@dataclass(frozen=True)
class AWParams:
    """The four weight parameters and the base.

    Fields
    ------
    a, b, c, d : complex, moduli < 1 (this keeps every denominator factor
        of the weight and of the finite sums off the pole lattice q^-k)
    q : the base

    Pairwise parameter ratios additionally have to stay off the zero
    lattice q^ZZ for the symmetric route; that is checked where needed
    (mu_symmetric), not here, since the other two routes allow ratios on
    the lattice.
    """

    a: complex
    b: complex
    c: complex
    d: complex
    q: QBase

    def __post_init__(self) -> None:
        for name, v in self.named():
            if not abs(v) < 1.0:
                raise DomainError(f"need |{name}| < 1, got {abs(v)}")
            if in_omega(v, self.q):
                raise DomainError(f"{name} on the pole lattice q^-k")

    def named(self):
        return (("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d))

    def values(self):
        return (self.a, self.b, self.c, self.d)

    def pair_products(self):
        """The six products ab, ac, ad, bc, bd, cd."""
        a, b, c, d = self.values()
        return (a * b, a * c, a * d, b * c, b * d, c * d)

    def product(self) -> complex:
        return self.a * self.b * self.c * self.d


def _require_ratios_off_upsilon(p: AWParams) -> None:
    vals = p.named()
    for i in range(4):
        for j in range(i + 1, 4):
            ni, vi = vals[i]
            nj, vj = vals[j]
            if in_upsilon(vi / vj, p.q):
                raise ConstraintViolation(
                    f"ratio {ni}/{nj} on the zero lattice q^ZZ")


def aw_weight(theta: float, p: AWParams) -> complex:
    """Weight value at the angle theta, four-factor numerator form.

    Zero exactly when e^{2i theta} or e^{-2i theta} hits 1 (theta a
    multiple of pi); even in theta by the +- pairing of every factor.
    """
    z = cmath.exp(1j * theta)
    num = qpoch_multi((z * z, 1.0 / (z * z)), p.q)
    den = 1.0 + 0j
    for v in p.values():
        den = den * qpoch_multi((v * z, v / z), p.q)
    return num / den


def aw_weight_split(theta: float, p: AWParams) -> complex:
    """Weight value via the eight-factor numerator form.

    Each numerator factor (z^2;q)_inf is split as
    (z, -z, q^(1/2) z, -q^(1/2) z; q)_inf; agreement with aw_weight is the
    numerical witness for that split.
    """
    z = cmath.exp(1j * theta)
    w = cmath.sqrt(p.q.q)
    num = qpoch_multi((z, -z, 1 / z, -1 / z, w * z, -w * z, w / z, -w / z),
                      p.q)
    den = 1.0 + 0j
    for v in p.values():
        den = den * qpoch_multi((v * z, v / z), p.q)
    return num / den


def _weight_nodes(psi: np.ndarray, p: AWParams) -> np.ndarray:
    """Vectorized weight on an array of angles (fixed-count truncation)."""
    q = p.q
    # |factor argument| <= 1 throughout, so a uniform truncation depth works.
    count = min(q.n_max,
                int(math.log(q.eps_tail * 0.01) / math.log(q.abs_q)) + 1)
    z = np.exp(1j * psi)
    z2 = z * z
    num = np.ones_like(z)
    den = np.ones_like(z)
    qk = 1.0 + 0j
    vals = p.values()
    for _ in range(count):
        num = num * (1.0 - z2 * qk) * (1.0 - qk / z2)
        for v in vals:
            den = den * (1.0 - v * z * qk) * (1.0 - v * qk / z)
        qk = qk * q.q
    return num / den


def mu_quadrature(n: int, p: AWParams,
                  eps: Optional[float] = None,
                  counters: Optional[EvalCounters] = None) -> complex:
    """n-th moment by quadrature of the weight display.

    mu_n = (q, ab, ..., cd;q)_inf / (4 pi (abcd;q)_inf)
           * integral of w(theta) cos^n(theta) over [-pi, pi].

    Parameters
    ----------
    n : moment order, 0 <= n <= MAX_MOMENT_ORDER
    p : weight parameters
    eps : quadrature tolerance (engine default when omitted)

    Raises
    ------
    BadIndex : n outside the supported range
    QuadNoConvergence : node-doubling cap hit
    """
    if not (0 <= n <= MAX_MOMENT_ORDER):
        raise BadIndex(f"moment order must lie in 0..{MAX_MOMENT_ORDER}, "
                       f"got {n}")
    q = p.q
    e = DEFAULT_EPS_QUAD if eps is None else eps

    def f(psi: float) -> complex:
        return aw_weight(psi, p) * math.cos(psi) ** n

    def f_vec(psi: np.ndarray) -> np.ndarray:
        return _weight_nodes(psi, p) * np.cos(psi) ** n

    integral = quad_unit_circle(f, e, f_vec, counters)
    pref = qpoch_multi((q.q,) + p.pair_products(), q) \
        / (4.0 * math.pi * qpoch_inf(p.product(), q))
    return pref * integral


def mu_symmetric(n: int, p: AWParams,
                 counters: Optional[EvalCounters] = None) -> complex:
    """n-th moment by the symmetric very-well-poised representation.

    mu_n = (ab, ..., cd;q)_inf / (2^(n+1) (abcd;q)_inf) * sum over
    k = 0..n of binom(n,k) times the symmetric-orbit sum over
    x in {a,b,c,d} (rest y1,y2,y3) of

        (x^-2;q)_inf x^m / (x y1, x y2, x y3, y1/x, y2/x, y3/x;q)_inf
        * 6W5(x^2; x y1, x y2, x y3; q, q^(1+m)/(abcd)),   m = |n-2k|.

    Raises
    ------
    BadIndex : negative n
    ConstraintViolation : a pairwise parameter ratio on the zero lattice
    DivergentSeries : some series argument q^(1+m)/(abcd) has modulus >= 1
    """
    if n < 0:
        raise BadIndex(f"moment order must be nonnegative, got {n}")
    _require_ratios_off_upsilon(p)
    q = p.q
    abcd = p.product()

    def orbit_term(x, rest, m, zarg):
        y1, y2, y3 = rest
        num = qpoch_inf(1.0 / (x * x), q) * x ** m
        den = qpoch_multi((x * y1, x * y2, x * y3, y1 / x, y2 / x, y3 / x), q)
        w65 = vwp(VWPSpec(x * x, ParamSet.of(x * y1, x * y2, x * y3,
                                             prefix="b"), q, zarg), counters)
        return num / den * w65

    total = 0j
    for k in range(n + 1):
        m = abs(n - 2 * k)
        zarg = q.q ** (1 + m) / abcd
        if not abs(zarg) < 1.0:
            raise DivergentSeries(
                f"series argument modulus {abs(zarg)} >= 1 at k={k}")
        orbit = idem(p.values(), lambda x, rest: orbit_term(x, rest, m, zarg))
        total = total + math.comb(n, k) * sum(orbit)
    pref = qpoch_multi(p.pair_products(), q) \
        / (2.0 ** (n + 1) * qpoch_inf(abcd, q))
    return pref * total


def mu_kim_stanton(n: int, t: complex, p: AWParams,
                   counters: Optional[EvalCounters] = None) -> complex:
    """n-th moment by the Kim-Stanton finite triple sum.

    mu_n = 2^(-n) * sum over k = 0..n of
        (-q)^k (ta, tb, tc, td;q)_k / (t^2, abcd;q)_k
        * 8W7(t^2/q; q^-k, t/a, t/b, t/c, t/d; q, q^k abcd)
        * sum over s = 0..n+1, p' = 0..n-2s-k of
            (binom(n,s) - binom(n,s-1))
            * qbinom(k+p', k) qbinom(n-2s-p', k)
            * q^(k(2s+p'-n) + k(k-1)/2) t^(2p'+2s-n).

    The ballot coefficients binom(n,s) - binom(n,s-1) expand powers of
    2 cos(theta), so the bare triple sum carries moments of twice the
    cosine; the 2^(-n) converts to the cos(theta) normalization the other
    two routes use (mu_0 = 1 either way).  The value is independent of t;
    evaluating at two generic t values and comparing is the cheap
    self-test.

    Raises
    ------
    BadIndex : negative n
    PoleAt : t^2 on the pole lattice q^-k of (t^2;q)_k, or t = 0 with n > 0
    """
    if n < 0:
        raise BadIndex(f"moment order must be nonnegative, got {n}")
    q = p.q
    if t == 0 and n > 0:
        raise PoleAt("t must be nonzero for positive moment order")
    if in_omega(t * t, q):
        raise PoleAt("t^2 on the pole lattice q^-k")
    abcd = p.product()
    a, b, c, d = p.values()
    total = 0j
    for k in range(n + 1):
        w87 = _w87_terminating(k, t, p, counters)
        head = (-q.q) ** k * qpoch_multi((t * a, t * b, t * c, t * d), q, k) \
            / qpoch_multi((t * t, abcd), q, k)
        inner = 0j
        for s in range(n + 2):
            coeff = math.comb(n, s) - (math.comb(n, s - 1) if s >= 1 else 0)
            pmax = n - 2 * s - k
            if coeff == 0 or pmax < 0:
                continue
            for pp in range(pmax + 1):
                inner = inner + (
                    coeff
                    * qbinomial(k + pp, k, q)
                    * qbinomial(n - 2 * s - pp, k, q)
                    * q.q ** (k * (2 * s + pp - n) + k * (k - 1) // 2)
                    * t ** (2 * pp + 2 * s - n))
        total = total + head * w87 * inner
    return total * 2.0 ** (-n)


def _w87_terminating(k: int, t: complex, p: AWParams,
                     counters: Optional[EvalCounters]) -> complex:
    """8W7(t^2/q; q^-k, t/a, t/b, t/c, t/d; q, q^k abcd), an exact
    (k+1)-term sum by the q^-k numerator parameter."""
    q = p.q
    tail = [q.q ** (-k), t / p.a, t / p.b, t / p.c, t / p.d]
    return direct_vwp(t * t / q.q, tail, q, q.q ** k * p.product(),
                      counters, terminate=k)
