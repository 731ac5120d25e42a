"""Elementary q-series objects.

Finite and infinite q-shifted factorials, product conventions, the q-gamma
function, the q-binomial coefficient, theta and partial theta functions, and
proximity tests for the exclusion sets

    Omega_q = {q^-k : k >= 0},    Upsilon_q = {q^k : k integer},

on which denominator factors and theta factors degenerate.

Conventions
-----------
* The nome q is carried by a `QBase`, which validates 0 < |q| < 1 and holds
  the truncation tolerance `eps_tail` and the factor cap `n_max`.
* All arithmetic is duck-typed over the scalar type: built-in `complex`
  (binary64, the default) and `mpmath.mpc` both work, so an extended-precision
  backend can be substituted for ill-conditioned theta-quotient work without
  touching the algorithms.
* Fractional powers always take the principal branch.  Composite parameters
  built from square/cube roots must be resolved once per identity instance
  and reused verbatim; helpers here never re-derive them.

References use standard notation: (a;q)_n, (a;q)_inf, Gamma_q, vartheta(z;q),
and the partial theta function Theta(z;q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence, Union

from .errors import BadIndex, CapExceeded, DomainError, PoleAt

# Default truncation tolerance: infinite products stop at N with
# |a||q|^N/(1-|q|) < eps_tail, giving ~eps_tail relative accuracy away from
# zeros of the product.
DEFAULT_EPS_TAIL = 1.0e-15
# Hard cap on the number of product factors / series terms.
DEFAULT_N_MAX = 10000
# Pole-proximity guard radius (relative distance) at evaluation time.  The
# sampler uses a stricter guard so sampled points clear this one with margin.
EVAL_GUARD = 1.0e-6

INF = math.inf

# Primitive cube root of unity, used by the omega-triple set convention.
OMEGA = complex(-0.5, math.sqrt(3.0) / 2.0)

Scalar = Union[complex, float]


@dataclass(frozen=True)
class QBase:
    """The nome q with truncation controls and a small cache of its powers.

    Fields
    ------
    q : complex, 0 < |q| < 1
    eps_tail : positive float, tail tolerance for infinite products/series
    n_max : positive int, cap on factor/term counts
    """

    q: complex
    eps_tail: float = DEFAULT_EPS_TAIL
    n_max: int = DEFAULT_N_MAX

    def __post_init__(self) -> None:
        aq = abs(self.q)
        if not 0.0 < aq < 1.0:
            raise DomainError(f"need 0 < |q| < 1, got |q| = {float(aq)}")
        if not self.eps_tail > 0.0:
            raise DomainError("eps_tail must be positive")
        if self.n_max < 1:
            raise DomainError("n_max must be >= 1")
        object.__setattr__(self, "_abs_q", float(aq))
        # Immutable power cache q^0..q^64; higher powers are recomputed.
        powers = [1 - self.q * 0]  # unity in the scalar type of q
        for _ in range(64):
            powers.append(powers[-1] * self.q)
        object.__setattr__(self, "_powers", tuple(powers))

    @property
    def abs_q(self) -> float:
        return self._abs_q  # type: ignore[attr-defined]

    def pow(self, n: int):
        """q^n for integer n (cached for 0 <= n <= 64)."""
        cache = self._powers  # type: ignore[attr-defined]
        if 0 <= n < len(cache):
            return cache[n]
        return self.q ** n

    def rebase(self, p: int) -> "QBase":
        """The base q^p with the same truncation controls (p >= 1)."""
        if p < 1:
            raise DomainError("rebase exponent must be >= 1")
        return QBase(self.pow(p), self.eps_tail, self.n_max)


@dataclass(frozen=True)
class ParamSet:
    """An ordered list of labeled nonzero complex parameters.

    Models the parameter sets of the integral machinery, with the deletion
    convention a_[k] (drop the k-th element, 0-based) and elementwise scaling
    b*a.  Values must be nonzero (elements of C*).
    """

    items: tuple

    def __post_init__(self) -> None:
        for label, value in self.items:
            if value == 0:
                raise DomainError(f"parameter {label!r} must be nonzero")

    @staticmethod
    def of(*values, prefix: str = "p") -> "ParamSet":
        return ParamSet(tuple((f"{prefix}{i+1}", v) for i, v in enumerate(values)))

    @staticmethod
    def empty() -> "ParamSet":
        return ParamSet(())

    def values(self) -> tuple:
        return tuple(v for _, v in self.items)

    def labels(self) -> tuple:
        return tuple(lab for lab, _ in self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.values())

    def __getitem__(self, k: int):
        return self.items[k][1]

    def delete_at(self, k: int) -> "ParamSet":
        """The set with its k-th element removed (the a_[k] convention)."""
        if not 0 <= k < len(self.items):
            raise BadIndex(f"delete_at index {k} out of range")
        return ParamSet(self.items[:k] + self.items[k + 1:])

    def scale(self, b) -> "ParamSet":
        """Elementwise multiplication by b (the b*a convention)."""
        return ParamSet(tuple((lab, b * v) for lab, v in self.items))

    def apply(self, fn: Callable) -> "ParamSet":
        """Elementwise map; labels are preserved."""
        return ParamSet(tuple((lab, fn(v)) for lab, v in self.items))

    def concat(self, other: "ParamSet") -> "ParamSet":
        return ParamSet(self.items + other.items)


def pm(x) -> tuple:
    """The +- expansion convention: one symbol standing for the pair (x, -x)."""
    return (x, -x)


def omega_triple(x, omega=OMEGA) -> tuple:
    """The omega-expansion convention: (x, omega*x, omega^2*x) with omega the
    primitive cube root of unity."""
    return (x, omega * x, omega * omega * x)


def idem(values: Sequence, term: Callable):
    """The symmetric-sum convention idem(v1; v2, ..., vn).

    Returns the list of expressions term(v_k, rest_k) for each k, where
    rest_k is the tuple of the other values in their original order.  Callers
    sum the list; keeping the terms separate lets the harness inspect
    individual (possibly annihilated) terms.
    """
    out = []
    vals = tuple(values)
    for k in range(len(vals)):
        rest = vals[:k] + vals[k + 1:]
        out.append(term(vals[k], rest))
    return out


# ---------------------------------------------------------------------------
# q-shifted factorials
# ---------------------------------------------------------------------------

def qpoch(a, q: QBase, n: int):
    """Finite q-shifted factorial (a;q)_n = (1-a)(1-aq)...(1-aq^(n-1)).

    The empty product (n = 0) is unity; a = 0 gives 1 for every n.
    """
    if n < 0 or n != int(n):
        raise BadIndex(f"qpoch order must be a nonnegative integer, got {n}")
    p = 1 - a * 0  # unity in the scalar type of a
    t = a
    for _ in range(int(n)):
        p = p * (1 - t)
        t = t * q.q
    return p


def qpoch_inf(a, q: QBase):
    """Infinite q-shifted factorial (a;q)_inf = prod_{n>=0} (1 - a q^n).

    Truncated at the first N with |a||q|^N/(1-|q|) < eps_tail, which bounds
    the relative tail error of the product away from its zeros.
    """
    if a == 0:
        return 1 - a * 0
    eps = q.eps_tail * (1.0 - q.abs_q)
    p = 1 - a * 0
    t = a
    n = 0
    while abs(t) >= eps:
        p = p * (1 - t)
        t = t * q.q
        n += 1
        if n > q.n_max:
            raise CapExceeded(
                f"(a;q)_inf needs more than n_max={q.n_max} factors "
                f"(|a|={float(abs(a)):.3g}, |q|={q.abs_q:.6g})")
    return p


def qpoch_multi(args, q: QBase, n=INF):
    """Product convention (a_1,...,a_k;q)_n = (a_1;q)_n ... (a_k;q)_n.

    `args` is a ParamSet or any iterable of values; `n` is a nonnegative
    integer or INF.  The empty product is unity.
    """
    vals = args.values() if isinstance(args, ParamSet) else tuple(args)
    p = 1 - q.q * 0
    if n is INF or (isinstance(n, float) and math.isinf(n)):
        for v in vals:
            p = p * qpoch_inf(v, q)
    else:
        for v in vals:
            p = p * qpoch(v, q, n)
    return p


def qgamma(x, q: QBase, guard: float = EVAL_GUARD):
    """q-gamma function Gamma_q(x) = (q;q)_inf / ((1-q)^(x-1) (q^x;q)_inf).

    Requires the nome to be real in (0,1) so the principal power (1-q)^(x-1)
    is well defined; q^x must stay clear of Omega_q (else PoleAt).
    """
    qc = complex(q.q)
    if qc.imag != 0.0 or not 0.0 < qc.real < 1.0:
        raise DomainError("qgamma needs a real nome in (0,1)")
    qr = qc.real
    qx = qr ** x  # principal power; x may be complex
    w = exclusion_check(qx, q, guard)
    if w.kind is ExclusionKind.OMEGA:
        raise PoleAt(
            f"q^x within guard {guard:g} of q^-{w.nearest_k} (distance {w.distance:.3g})")
    return qpoch_inf(qr, q) / ((1.0 - qr) ** (x - 1) * qpoch_inf(qx, q))


def qbinomial(n: int, k: int, q: QBase):
    """Gaussian binomial coefficient (q;q)_n / ((q;q)_k (q;q)_(n-k))."""
    if not (isinstance(n, int) and isinstance(k, int)):
        raise BadIndex("qbinomial indices must be integers")
    if k < 0 or n < 0 or k > n:
        raise BadIndex(f"need 0 <= k <= n, got n={n}, k={k}")
    return qpoch(q.q, q, n) / (qpoch(q.q, q, k) * qpoch(q.q, q, n - k))


# ---------------------------------------------------------------------------
# theta functions
# ---------------------------------------------------------------------------

def theta(z, q: QBase):
    """Modified theta function vartheta(z;q) = (z, q/z; q)_inf, z != 0.

    Vanishes exactly on Upsilon_q (z = q^n, n integer); zeros are legitimate
    return values.
    """
    if z == 0:
        raise DomainError("theta argument must be nonzero")
    return qpoch_inf(z, q) * qpoch_inf(q.q / z, q)


def theta_multi(args, q: QBase):
    """Product convention vartheta(a_1,...,a_k;q) = vartheta(a_1;q)...(a_k;q)."""
    vals = args.values() if isinstance(args, ParamSet) else tuple(args)
    p = 1 - q.q * 0
    for v in vals:
        p = p * theta(v, q)
    return p


def theta_bilateral(z, q: QBase):
    """Cross-check series for the theta function:

        vartheta(z;q) = (1/(q;q)_inf) sum_{n=-inf}^{inf} (-1)^n q^C(n,2) z^n.

    The symmetric window |n| <= N is chosen so the super-geometrically
    decaying tail is below eps_tail.  Reference implementation for tests; the
    product form `theta` is the production path.
    """
    if z == 0:
        raise DomainError("theta argument must be nonzero")
    big = max(abs(z), abs(q.q / z), 1.0)
    lq = math.log(q.abs_q)
    n = 4
    # tail bound |q|^(N(N-1)/2) * max(|z|,|q/z|)^N < eps_tail
    while 0.5 * n * (n - 1) * lq + n * math.log(float(big)) >= math.log(q.eps_tail):
        n += 1
        if n > q.n_max:
            raise CapExceeded("bilateral theta window exceeds n_max")
    s = 0 * z
    for j in range(-n, n + 1):
        s = s + (-1) ** j * q.q ** (j * (j - 1) // 2) * z ** j
    return s / qpoch_inf(q.q, q)


# ---------------------------------------------------------------------------
# partial theta function
# ---------------------------------------------------------------------------

class PartialThetaRep(Enum):
    """The five equivalent representations of the partial theta function."""
    SUM = "Sum"
    PAD_TOP = "PadTop"
    FACTORED01 = "Factored01"
    FACTORED01Q = "Factored01q"
    ANDREWS_WARNAAR = "AndrewsWarnaar"


def _stop_sum(first, ratio, q: QBase):
    """Sum t_0 + t_1 + ... with t_{k+1} = t_k * ratio(k); stops after three
    consecutive terms below eps_tail relative to the running sum."""
    s = first
    t = first
    small = 0
    k = 0
    while small < 3:
        t = t * ratio(k)
        k += 1
        s = s + t
        if abs(t) < q.eps_tail * max(1.0, abs(s)):
            small += 1
        else:
            small = 0
        if k > q.n_max:
            raise CapExceeded("partial theta series exceeded n_max terms")
    return s


def partial_theta(z, q: QBase, rep=PartialThetaRep.SUM, p: int = 2,
                  guard: float = EVAL_GUARD):
    """Partial theta function Theta(z;q): the n >= 0 half of the bilateral
    theta sum, with five equivalent representations.

    Sum (reference):
        (1/(q;q)_inf) sum_{n>=0} (-1)^n q^C(n,2) z^n
    PadTop:
        the same series generated in base q^(1/p) with p padding zeros in the
        denominator, argument (-1)^(p-1) z  (p >= 1, default 2)
    Factored01:
        (z;q)_inf sum_k q^k / ((q,z;q)_k)
    Factored01q:
        ((z;q)_inf/(q;q)_inf) sum_k q^(k^2) z^k / ((q,z;q)_k)
    AndrewsWarnaar:
        ((z;q)_inf/((q,-q;q)_inf)) * 4phi3 with numerator pairs
        (+-i sqrt(z), +-i sqrt(qz)) and denominator (-q, z, -z), argument q;
        the +- pairs combine so only integer powers of z appear.

    The factored representations require |z| < 1 and z (and -z for
    AndrewsWarnaar) clear of Omega_q; AndrewsWarnaar additionally needs
    z != 0.  Sum and PadTop are entire in z.
    """
    rep = PartialThetaRep(rep)
    if rep is PartialThetaRep.SUM:
        # t_{n+1}/t_n = -q^n z
        s = _stop_sum(1 - z * 0, lambda k: -q.pow(k) * z, q)
        return s / qpoch_inf(q.q, q)

    if rep is PartialThetaRep.PAD_TOP:
        if p < 1 or p != int(p):
            raise DomainError("PadTop order p must be a positive integer")
        qp = q.q ** (1.0 / p)  # principal root of the nome
        qpb = QBase(qp, q.eps_tail, q.n_max)
        qp_p = qp ** p
        # t_{k+1}/t_k = ((-1) qp^k)^p * (-1)^(p-1) z = -(qp^p)^k z
        w = [1 - z * 0]  # running (qp^p)^k

        def ratio(k):
            r = -w[0] * z
            w[0] = w[0] * qp_p
            return r

        s = _stop_sum(1 - z * 0, ratio, qpb)
        return s / qpoch_inf(q.q, q)

    # Factored representations: |z| < 1, z off Omega_q (z sits in the
    # denominator q-shifted factorials).
    if abs(z) >= 1.0:
        raise DomainError("factored partial-theta representations need |z| < 1")
    if z == 0:
        if rep is PartialThetaRep.ANDREWS_WARNAAR:
            raise DomainError("AndrewsWarnaar representation needs z != 0")
        return (1 - z * 0) / qpoch_inf(q.q, q)
    if exclusion_check(z, q, guard).kind is ExclusionKind.OMEGA:
        raise PoleAt("partial theta factored form: z within guard of Omega_q")

    if rep is PartialThetaRep.FACTORED01:
        # t_{k+1}/t_k = q / ((1-q^(k+1)) (1-z q^k))
        s = _stop_sum(
            1 - z * 0,
            lambda k: q.q / ((1 - q.pow(k + 1)) * (1 - z * q.pow(k))), q)
        return qpoch_inf(z, q) * s

    if rep is PartialThetaRep.FACTORED01Q:
        # t_{k+1}/t_k = q^(2k+1) z / ((1-q^(k+1)) (1-z q^k))
        s = _stop_sum(
            1 - z * 0,
            lambda k: q.pow(2 * k + 1) * z
            / ((1 - q.pow(k + 1)) * (1 - z * q.pow(k))), q)
        return qpoch_inf(z, q) / qpoch_inf(q.q, q) * s

    # AndrewsWarnaar
    if exclusion_check(-z, q, guard).kind is ExclusionKind.OMEGA:
        raise PoleAt("AndrewsWarnaar representation: -z within guard of Omega_q")

    def ratio(k):
        q2k = q.pow(k) * q.pow(k)
        num = (1 + z * q2k) * (1 + q.q * z * q2k) * q.q
        den = (1 - q.pow(k + 1) * q.pow(k + 1)) * (1 - z * z * q2k)
        return num / den

    s = _stop_sum(1 - z * 0, ratio, q)
    return qpoch_inf(z, q) / (qpoch_inf(q.q, q) * qpoch_inf(-q.q, q)) * s


# ---------------------------------------------------------------------------
# exclusion sets
# ---------------------------------------------------------------------------

class ExclusionKind(Enum):
    OMEGA = "OmegaQ"      # near q^-k, k >= 0
    UPSILON = "Upsilon"   # near q^k, k >= 1
    NONE = "None"


@dataclass(frozen=True)
class ExclusionWitness:
    """Proximity report for the exclusion sets.

    kind OMEGA means the nearest lattice point is q^-nearest_k (k >= 0),
    kind UPSILON means it is q^nearest_k (k >= 1); both imply
    distance < guard.  For kind NONE, nearest_k is the signed exponent j of
    the closest point q^j.  Distances are relative: |a - q^j| / |q^j|.
    """
    kind: ExclusionKind
    nearest_k: int
    distance: float


_J_SCAN_MAX = 2000  # clip for the lattice exponent scan


def exclusion_check(a, q: QBase, guard: float = EVAL_GUARD) -> ExclusionWitness:
    """Locate a relative to the lattice {q^j : j integer}.

    Reports an OMEGA hit (a near q^-k, k >= 0) or UPSILON hit (a near q^k,
    k >= 1) when the relative distance falls below `guard`.  Only exponents
    whose modulus ring can intersect the guard annulus are scanned.
    """
    if guard <= 0.0:
        raise DomainError("guard must be positive")
    if a == 0:
        # |0 - q^j|/|q^j| = 1 for every j: never a hit.
        return ExclusionWitness(ExclusionKind.NONE, 0, 1.0)
    la = math.log(float(abs(a)))
    lq = math.log(q.abs_q)
    jstar = la / lq
    lo = max(-_J_SCAN_MAX, math.floor(jstar) - 1)
    hi = min(_J_SCAN_MAX, math.ceil(jstar) + 1)
    best_j = lo
    best_d = math.inf
    for j in range(lo, hi + 1):
        t = q.q ** j
        d = float(abs(a - t) / abs(t))
        if d < best_d:
            best_d = d
            best_j = j
    if best_d < guard:
        if best_j <= 0:
            return ExclusionWitness(ExclusionKind.OMEGA, -best_j, best_d)
        return ExclusionWitness(ExclusionKind.UPSILON, best_j, best_d)
    return ExclusionWitness(ExclusionKind.NONE, best_j, best_d)


def in_omega(a, q: QBase, guard: float = EVAL_GUARD) -> bool:
    """True when a is within guard of Omega_q = {q^-k : k >= 0}."""
    return exclusion_check(a, q, guard).kind is ExclusionKind.OMEGA


def in_upsilon(a, q: QBase, guard: float = EVAL_GUARD) -> bool:
    """True when a is within guard of Upsilon_q = {q^k : k integer}
    (a superset of Omega_q)."""
    return exclusion_check(a, q, guard).kind is not ExclusionKind.NONE
