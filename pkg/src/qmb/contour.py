"""Unit-circle contour integration for q-Mellin-Barnes integrals.

Integrals here all have the shape

    integral_{-pi}^{pi} N(e^{i psi}) / D(e^{i psi}) e^{i m psi} d psi

with N, D products of infinite q-shifted factorials in sigma/z and z/sigma,
z = e^{i psi}.  Away from excluded parameters the integrand is smooth and
2 pi periodic, so the periodic trapezoid rule converges spectrally; the node
ladder doubles from 2^8 until two successive estimates agree.

Three evaluation routes are provided and cross-checked by the test suite:

* g_m_integral: direct quadrature of the G_m integrand;
* g_m_sum_d / g_m_sum_c: the residue-type sums over the d-set (D >= B) and
  the c-set (C >= A), each a finite sum of padded basic hypergeometric
  series;
* h_sum / j_sum / symmetric_integral: the symmetric two-pole case
  d = {d1, d2} with a free theta parameter f, where the integral equals
  2 pi theta(f, f d1/d2; q) H / (q;q)_inf and also 2 pi J / (q;q)_inf
  when C >= A + 2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (CapExceeded, ConstraintViolation, DomainError,
                     QuadNoConvergence)
from .hyperseries import EvalCounters, phi, spec
from .qcore import (EVAL_GUARD, ExclusionKind, ParamSet, QBase,
                    exclusion_check, qpoch_inf, qpoch_multi, theta,
                    theta_multi)

DEFAULT_EPS_QUAD = 1.0e-11
_K_MIN = 8    # quadrature ladder starts at 2^8 nodes
_K_MAX = 16   # and gives up past 2^16


def _is_mp(x) -> bool:
    return type(x).__module__.startswith("mpmath")


def quad_unit_circle(integrand: Callable, eps: float = DEFAULT_EPS_QUAD,
                     integrand_vec: Optional[Callable] = None,
                     counters: Optional[EvalCounters] = None):
    """Periodic trapezoid quadrature of `integrand` over psi in [-pi, pi).

    Nodes double from 2^_K_MIN, reusing previous evaluations (each doubling
    adds the midpoints), until two successive estimates differ by less than
    eps * max(1, |estimate|).  `integrand_vec`, if given, maps an ndarray of
    angles to an ndarray of values and is preferred; the scalar callable is
    the fallback (and the extended-precision path).

    Returns the converged estimate; raises QuadNoConvergence at the cap.
    """
    two_pi = 2.0 * math.pi
    n = 2 ** _K_MIN

    def eval_nodes(offsets_count, step_count):
        # nodes -pi + step*(j + off) for j in range(count)
        if integrand_vec is not None:
            psi = -math.pi + (two_pi / step_count) * (
                np.arange(offsets_count[1]) + offsets_count[0])
            return complex(np.sum(integrand_vec(psi)))
        s = 0j
        for j in range(offsets_count[1]):
            s = s + integrand(-math.pi + (two_pi / step_count) * (j + offsets_count[0]))
        return s

    total = eval_nodes((0.0, n), n)
    if counters is not None:
        counters.n_nodes += n
    prev = two_pi * total / n
    while n < 2 ** _K_MAX:
        # midpoints of the current grid
        total = total + eval_nodes((0.5, n), n)
        n *= 2
        if counters is not None:
            counters.n_nodes += n // 2
        est = two_pi * total / n
        if abs(est - prev) < eps * max(1.0, abs(est)):
            return est
        prev = est
    raise QuadNoConvergence(f"no convergence at 2^{_K_MAX} nodes (eps={eps:g})")


def qpoch_inf_array(vals: np.ndarray, q: QBase) -> np.ndarray:
    """(v;q)_inf elementwise over an ndarray, with the shared tail bound
    max|v| |q|^N / (1-|q|) < eps_tail."""
    amax = float(np.max(np.abs(vals))) if vals.size else 0.0
    out = np.ones_like(vals)
    if amax == 0.0:
        return out
    eps = q.eps_tail * (1.0 - q.abs_q)
    t = vals.astype(complex).copy()
    qq = complex(q.q)
    n = 0
    while amax >= eps:
        out = out * (1.0 - t)
        t *= qq
        amax *= q.abs_q
        n += 1
        if n > q.n_max:
            raise CapExceeded("array (v;q)_inf exceeded n_max factors")
    return out


def _ratio_integrand_factory(sigma_side, z_side, sigma: float, q: QBase):
    """Integrand builders for prod (u sigma/z, v z/sigma;q)_inf ratios.

    sigma_side/z_side are ((numer_vals, denom_vals)) pairs for the sigma/z and
    z/sigma directions.  Returns (scalar_fn, vector_fn) both mapping angle(s)
    to the integrand value without any e^{i m psi} factor.
    """
    (su_num, su_den) = sigma_side
    (zu_num, zu_den) = z_side
    su_num = tuple(su_num)
    su_den = tuple(su_den)
    zu_num = tuple(zu_num)
    zu_den = tuple(zu_den)

    def scalar(psi):
        z = cmath.exp(1j * psi)
        w = sigma / z
        u = z / sigma
        num = 1.0 + 0j
        for v in su_num:
            num *= qpoch_inf(v * w, q)
        for v in zu_num:
            num *= qpoch_inf(v * u, q)
        den = 1.0 + 0j
        for v in su_den:
            den *= qpoch_inf(v * w, q)
        for v in zu_den:
            den *= qpoch_inf(v * u, q)
        return num / den

    def vector(psi: np.ndarray) -> np.ndarray:
        z = np.exp(1j * psi)
        w = sigma / z
        u = z / sigma
        num = np.ones_like(z)
        for v in su_num:
            num = num * qpoch_inf_array(complex(v) * w, q)
        for v in zu_num:
            num = num * qpoch_inf_array(complex(v) * u, q)
        den = np.ones_like(z)
        for v in su_den:
            den = den * qpoch_inf_array(complex(v) * w, q)
        for v in zu_den:
            den = den * qpoch_inf_array(complex(v) * u, q)
        return num / den

    return scalar, vector


# ---------------------------------------------------------------------------
# G_m: the general q-Mellin-Barnes integral
# ---------------------------------------------------------------------------

def default_sigma(c_vals, d_vals) -> float:
    """Geometric midpoint of the admissible interval (max|c|, 1/max|d|),
    clipped inside it; ConstraintViolation when the interval is empty."""
    lo = max((float(abs(v)) for v in c_vals), default=0.0)
    hi_d = max((float(abs(v)) for v in d_vals), default=0.0)
    hi = 1.0 / hi_d if hi_d > 0.0 else math.inf
    if lo >= hi:
        raise ConstraintViolation(
            f"empty sigma interval: max|c|={lo:.6g} >= 1/max|d|={hi:.6g}")
    if lo == 0.0 and math.isinf(hi):
        return 1.0
    if lo == 0.0:
        return hi / 2.0
    if math.isinf(hi):
        return max(1.0, 2.0 * lo)
    sigma = math.sqrt(lo * hi)
    margin = 1.0 + 1.0e-3
    return min(max(sigma, lo * margin), hi / margin)


@dataclass(frozen=True)
class GmProblem:
    """Parameters of G_m(a, b, c, d; sigma, q).

    The existence regime |c_k| < sigma and |d_l| < 1/sigma is validated at
    construction; exclusion-set constraints needed by the residue sums are
    checked by those operations.
    """
    a: ParamSet
    b: ParamSet
    c: ParamSet
    d: ParamSet
    sigma: float
    m: int
    q: QBase

    def __post_init__(self) -> None:
        if self.sigma <= 0.0:
            raise ConstraintViolation("sigma must be positive")
        if len(self.a) + len(self.b) + len(self.c) + len(self.d) == 0:
            raise ConstraintViolation("at least one parameter set must be nonempty")
        for v in self.c:
            if abs(v) >= self.sigma:
                raise ConstraintViolation(
                    f"|c|={float(abs(v)):.6g} >= sigma={self.sigma:.6g}")
        for v in self.d:
            if abs(v) >= 1.0 / self.sigma:
                raise ConstraintViolation(
                    f"|d|={float(abs(v)):.6g} >= 1/sigma={1.0/self.sigma:.6g}")

    @staticmethod
    def auto(a, b, c, d, m: int, q: QBase) -> "GmProblem":
        """Problem with the default sigma for the given sets."""
        ps = [x if isinstance(x, ParamSet) else ParamSet.of(*x) for x in (a, b, c, d)]
        return GmProblem(ps[0], ps[1], ps[2], ps[3],
                         default_sigma(ps[2].values(), ps[3].values()), m, q)

    def swap(self) -> "GmProblem":
        """The role swap (a,b,c,d,m) -> (b,a,d,c,-m) of the symmetry relation,
        with sigma -> 1/sigma to keep the existence regime."""
        return GmProblem(self.b, self.a, self.d, self.c,
                         1.0 / self.sigma, -self.m, self.q)


def g_m_integral(p: GmProblem, eps: float = DEFAULT_EPS_QUAD,
                 counters: Optional[EvalCounters] = None):
    """G_m by quadrature:

        (q;q)_inf/(2 pi) sigma^-m  integral (b sigma/z, a z/sigma;q)_inf
            / (d sigma/z, c z/sigma;q)_inf  e^{i m psi} d psi.
    """
    scalar, vector = _ratio_integrand_factory(
        (p.b.values(), p.d.values()), (p.a.values(), p.c.values()), p.sigma, p.q)
    m = p.m
    use_vec = not (_is_mp(p.q.q) or any(_is_mp(v) for v in
                                        (*p.a, *p.b, *p.c, *p.d)))

    def f(psi):
        return scalar(psi) * cmath.exp(1j * m * psi)

    def f_vec(psi):
        return vector(psi) * np.exp(1j * m * psi)

    val = quad_unit_circle(f, eps, f_vec if use_vec else None, counters)
    return qpoch_inf(p.q.q, p.q) / (2.0 * math.pi) * p.sigma ** (-m) * val


def _check_ratios_off_omega(vals, q: QBase, guard: float, what: str) -> None:
    vals = tuple(vals)
    for i, x in enumerate(vals):
        for j, y in enumerate(vals):
            if i != j:
                w = exclusion_check(x / y, q, guard)
                if w.kind is ExclusionKind.OMEGA:
                    raise ConstraintViolation(
                        f"{what} ratio within {guard:g} of q^-{w.nearest_k}")


def _check_products_off_omega(xs, ys, q: QBase, guard: float, what: str) -> None:
    for x in xs:
        for y in ys:
            w = exclusion_check(x * y, q, guard)
            if w.kind is ExclusionKind.OMEGA:
                raise ConstraintViolation(
                    f"{what} product within {guard:g} of q^-{w.nearest_k}")


def g_m_sum_d(p: GmProblem, counters: Optional[EvalCounters] = None,
              guard: float = EVAL_GUARD):
    """G_m as the residue-type sum over the d-set (requires D >= B):

        sum_{k=1}^{D} (d_k a, b/d_k;q)_inf d_k^m / (d_k c, d_[k]/d_k;q)_inf
            * phi^{[C-A]}_{B+C, A+D-1}(d_k c, q d_k/b; d_k a, q d_k/d_[k];
                                        q, q^m (q d_k)^{D-B} prod b / prod d)
    """
    A, B, C, D = len(p.a), len(p.b), len(p.c), len(p.d)
    if D < B:
        raise ConstraintViolation(f"sum over d needs D >= B, got D={D}, B={B}")
    _check_ratios_off_omega(p.d.values(), p.q, guard, "d/d'")
    _check_products_off_omega(p.d.values(), p.c.values(), p.q, guard, "d*c")
    q = p.q
    prod_b = 1.0 + 0j
    for v in p.b:
        prod_b = prod_b * v
    prod_d = 1.0 + 0j
    for v in p.d:
        prod_d = prod_d * v
    total = 0j
    for k in range(D):
        dk = p.d[k]
        rest = p.d.delete_at(k)
        pref_num = qpoch_multi(p.a.scale(dk), q) * qpoch_multi(
            [v / dk for v in p.b], q) * dk ** p.m
        pref_den = qpoch_multi(p.c.scale(dk), q) * qpoch_multi(
            [v / dk for v in rest], q)
        numer = list(p.c.scale(dk)) + [q.q * dk / v for v in p.b]
        denom = list(p.a.scale(dk)) + [q.q * dk / v for v in rest]
        z = q.q ** p.m * (q.q * dk) ** (D - B) * prod_b / prod_d
        val = phi(spec(numer, denom, q, z, pad=C - A), counters, guard)
        total = total + pref_num / pref_den * val
    return total


def g_m_sum_c(p: GmProblem, counters: Optional[EvalCounters] = None,
              guard: float = EVAL_GUARD):
    """G_m as the residue-type sum over the c-set (requires C >= A):

        sum_{k=1}^{C} (c_k b, a/c_k;q)_inf c_k^-m / (c_k d, c_[k]/c_k;q)_inf
            * phi^{[D-B]}_{A+D, B+C-1}(c_k d, q c_k/a; c_k b, q c_k/c_[k];
                                        q, q^-m (q c_k)^{C-A} prod a / prod c)
    """
    A, B, C, D = len(p.a), len(p.b), len(p.c), len(p.d)
    if C < A:
        raise ConstraintViolation(f"sum over c needs C >= A, got C={C}, A={A}")
    _check_ratios_off_omega(p.c.values(), p.q, guard, "c/c'")
    _check_products_off_omega(p.d.values(), p.c.values(), p.q, guard, "d*c")
    q = p.q
    prod_a = 1.0 + 0j
    for v in p.a:
        prod_a = prod_a * v
    prod_c = 1.0 + 0j
    for v in p.c:
        prod_c = prod_c * v
    total = 0j
    for k in range(C):
        ck = p.c[k]
        rest = p.c.delete_at(k)
        pref_num = qpoch_multi(p.b.scale(ck), q) * qpoch_multi(
            [v / ck for v in p.a], q) * ck ** (-p.m)
        pref_den = qpoch_multi(p.d.scale(ck), q) * qpoch_multi(
            [v / ck for v in rest], q)
        numer = list(p.d.scale(ck)) + [q.q * ck / v for v in p.a]
        denom = list(p.b.scale(ck)) + [q.q * ck / v for v in rest]
        z = q.q ** (-p.m) * (q.q * ck) ** (C - A) * prod_a / prod_c
        val = phi(spec(numer, denom, q, z, pad=D - B), counters, guard)
        total = total + pref_num / pref_den * val
    return total


# ---------------------------------------------------------------------------
# the symmetric two-pole case d = {d1, d2} with free theta parameter f
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymmetricProblem:
    """Parameters of the symmetric two-pole integral

        integral (f d1, (q/f) d2) sigma/z, (f/d2, q/(f d1), a) z/sigma;q)_inf
                 / ((d1, d2) sigma/z, c z/sigma;q)_inf d psi

    and of its H and J evaluations.
    """
    a: ParamSet
    c: ParamSet
    d1: complex
    d2: complex
    f: complex
    sigma: float
    q: QBase

    def __post_init__(self) -> None:
        if self.sigma <= 0.0:
            raise ConstraintViolation("sigma must be positive")
        if self.d1 == 0 or self.d2 == 0 or self.f == 0:
            raise ConstraintViolation("d1, d2, f must be nonzero")
        for v in self.c:
            if abs(v) >= self.sigma:
                raise ConstraintViolation(
                    f"|c|={float(abs(v)):.6g} >= sigma={self.sigma:.6g}")
        for v in (self.d1, self.d2):
            if abs(v) >= 1.0 / self.sigma:
                raise ConstraintViolation(
                    f"|d|={float(abs(v)):.6g} >= 1/sigma={1.0/self.sigma:.6g}")

    @staticmethod
    def auto(a, c, d1, d2, f, q: QBase) -> "SymmetricProblem":
        aps = a if isinstance(a, ParamSet) else ParamSet.of(*a)
        cps = c if isinstance(c, ParamSet) else ParamSet.of(*c)
        return SymmetricProblem(
            aps, cps, d1, d2, f,
            default_sigma(cps.values(), (d1, d2)), q)

    def theta_prefactor(self):
        """theta(f, f d1/d2; q), the factor relating the integral to H."""
        return theta_multi((self.f, self.f * self.d1 / self.d2), self.q)


def h_terms(p: SymmetricProblem, counters: Optional[EvalCounters] = None,
            guard: float = EVAL_GUARD) -> list:
    """The two idem(d1; d2) terms of H(a, c, d; q)."""
    q = p.q
    w = exclusion_check(p.d2 / p.d1, q, guard)
    if w.kind is not ExclusionKind.NONE:
        raise ConstraintViolation("d2/d1 within guard of Upsilon_q")
    A, C = len(p.a), len(p.c)
    out = []
    for dk, other in ((p.d1, p.d2), (p.d2, p.d1)):
        pref = qpoch_multi(p.a.scale(dk), q) / (
            qpoch_inf(other / dk, q) * qpoch_multi(p.c.scale(dk), q))
        numer = list(p.c.scale(dk))
        denom = list(p.a.scale(dk)) + [q.q * dk / other]
        val = phi(spec(numer, denom, q, q.q, pad=C - A - 2), counters, guard)
        out.append(pref * val)
    return out


def h_sum(p: SymmetricProblem, counters: Optional[EvalCounters] = None,
          guard: float = EVAL_GUARD):
    """H(a, c, d; q): symmetric two-term idem sum of padded phi at argument q."""
    t1, t2 = h_terms(p, counters, guard)
    return t1 + t2


def j_terms(p: SymmetricProblem, counters: Optional[EvalCounters] = None,
            guard: float = EVAL_GUARD) -> list:
    """The C theta-weighted terms of J(a, c, d; f, q) (requires C >= A+2)."""
    q = p.q
    A, C = len(p.a), len(p.c)
    if C < A + 2:
        raise ConstraintViolation(f"J needs C >= A+2, got C={C}, A={A}")
    _check_ratios_off_omega(p.c.values(), q, guard, "c/c'")
    _check_products_off_omega(p.c.values(), (p.d1, p.d2), q, guard, "c*d")
    prod_a = 1.0 + 0j
    for v in p.a:
        prod_a = prod_a * v
    prod_c = 1.0 + 0j
    for v in p.c:
        prod_c = prod_c * v
    out = []
    for k in range(C):
        ck = p.c[k]
        rest = p.c.delete_at(k)
        th = theta_multi((p.f * ck * p.d1, p.f / (ck * p.d2)), q)
        pref = th * qpoch_multi([v / ck for v in p.a], q) / (
            qpoch_multi((ck * p.d1, ck * p.d2), q)
            * qpoch_multi([v / ck for v in rest], q))
        numer = [ck * p.d1, ck * p.d2] + [q.q * ck / v for v in p.a]
        denom = [q.q * ck / v for v in rest]
        z = q.q * (q.q * ck) ** (C - A - 2) * prod_a / (p.d1 * p.d2 * prod_c)
        val = phi(spec(numer, denom, q, z), counters, guard)
        out.append(pref * val)
    return out


def j_sum(p: SymmetricProblem, counters: Optional[EvalCounters] = None,
          guard: float = EVAL_GUARD):
    """J(a, c, d; f, q) = theta(f, f d1/d2;q) H(a, c, d;q) for admissible f."""
    return sum(j_terms(p, counters, guard), 0j)


def symmetric_integral(p: SymmetricProblem, eps: float = DEFAULT_EPS_QUAD,
                       counters: Optional[EvalCounters] = None):
    """The two-pole integral itself (value of the d psi integral, no
    prefactor):

        integral = 2 pi theta(f, f d1/d2;q) H / (q;q)_inf
                 = 2 pi J / (q;q)_inf   (C >= A+2).
    """
    q = p.q
    f = p.f
    snum = (f * p.d1, q.q * p.d2 / f)
    znum = tuple(p.a) + (f / p.d2, q.q / (f * p.d1))
    sden = (p.d1, p.d2)
    zden = tuple(p.c)
    scalar, vector = _ratio_integrand_factory(
        (snum, sden), (znum, zden), p.sigma, q)
    use_vec = not (_is_mp(q.q) or any(_is_mp(v) for v in snum + znum + sden + zden))
    return quad_unit_circle(scalar, eps, vector if use_vec else None, counters)


def to_gm(p: SymmetricProblem) -> GmProblem:
    """The GmProblem (m = 0) whose integrand matches the symmetric two-pole
    integrand; useful for cross-checks against the general machinery."""
    a = ParamSet.of(*(tuple(p.a) + (p.f / p.d2, p.q.q / (p.f * p.d1))), prefix="a")
    b = ParamSet.of(p.f * p.d1, p.q.q * p.d2 / p.f, prefix="b")
    c = ParamSet(tuple(p.c.items))
    d = ParamSet.of(p.d1, p.d2, prefix="d")
    return GmProblem(a, b, c, d, p.sigma, 0, p.q)
