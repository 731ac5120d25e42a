"""Exception taxonomy shared by all qmb modules.

Numerical failure modes are split into three families: domain violations
(bad inputs that can be detected before any computation), convergence
failures (caps hit before the requested tolerance), and proximity hazards
(parameters inside a guard radius of a pole or exclusion set).  The
verification harness maps all of these to Skipped reports rather than
crashes; only genuine numeric disagreement is a failure.
"""


class QmbError(Exception):
    """Base class for all qmb exceptions."""


class DomainError(QmbError, ValueError):
    """Input outside the mathematical domain of the operation."""


class BadIndex(QmbError, ValueError):
    """Integer index outside its allowed range (e.g. k > n in a binomial)."""


class CapExceeded(QmbError, ArithmeticError):
    """A truncation bound requires more terms/factors than the configured cap."""


class PoleAt(QmbError, ArithmeticError):
    """Evaluation point is within the guard radius of a pole."""


class PoleInDenominator(QmbError, ArithmeticError):
    """A denominator q-shifted factorial passes within the guard radius of zero
    at some series index (near-miss of a terminating configuration)."""


class DivergentSeries(QmbError, ArithmeticError):
    """The series is classified divergent for the given argument."""


class NoConvergence(QmbError, ArithmeticError):
    """Series summation hit the term cap before the stop rule was satisfied."""


class QuadNoConvergence(QmbError, ArithmeticError):
    """Quadrature ladder hit the node cap before successive estimates agreed."""


class ConstraintViolation(QmbError, ValueError):
    """A structural constraint of a problem (modulus inequality, exclusion-set
    membership, empty admissible interval) is violated."""


class SamplingExhausted(QmbError, RuntimeError):
    """Rejection sampling hit the max_rejects cap for a constraint region."""
