"""qmb: q-series special functions, unit-circle q-Mellin-Barnes integrals,
and a numerical identity-verification harness.

Layers
------
qcore
    q-shifted factorials, q-gamma, theta and partial theta functions,
    exclusion-set diagnostics.
hyperseries
    padded basic hypergeometric series (r+1)phi(s) with convergence
    classification, and very-well-poised series rW(r-1).
contour
    periodic trapezoid quadrature on the unit circle, the G_m integral
    with its two residue-type sum evaluations, and the symmetric two-pole
    H / J machinery.
identities
    a catalog of transformation and summation identities with independent
    left/right evaluation routes and a check/sweep harness.
sampler
    deterministic rejection sampling of admissible parameter points.
awmoments
    Askey-Wilson moments by quadrature, by a symmetric very-well-poised
    sum, and by a finite triple sum with a free parameter.
cli
    JSON-lines command line front end (entry point: qmb).
"""

from .errors import (BadIndex, CapExceeded, ConstraintViolation,
                     DivergentSeries, DomainError, NoConvergence, PoleAt,
                     PoleInDenominator, QmbError, QuadNoConvergence,
                     SamplingExhausted)
from .qcore import (DEFAULT_EPS_TAIL, DEFAULT_N_MAX, EVAL_GUARD, OMEGA,
                    ExclusionKind, ExclusionWitness, ParamSet,
                    PartialThetaRep, QBase, exclusion_check, idem, in_omega,
                    in_upsilon, omega_triple, partial_theta, pm, qbinomial,
                    qgamma, qpoch, qpoch_inf, qpoch_multi, theta,
                    theta_bilateral, theta_multi)
from .hyperseries import (ConvergenceClass, EvalCounters, SeriesSpec,
                          VWPSpec, classify, phi, spec, vwp, w65_closed_form)
from .contour import (DEFAULT_EPS_QUAD, GmProblem, SymmetricProblem,
                      default_sigma, g_m_integral, g_m_sum_c, g_m_sum_d,
                      h_sum, h_terms, j_sum, j_terms, quad_unit_circle,
                      symmetric_integral, to_gm)
from .identities.base import (CheckReport, IdentityDescriptor, catalog,
                              check, sweep_free)
from .sampler import SampleConfig, admissibility_failure, sample
from .awmoments import (AWParams, aw_weight, aw_weight_split,
                        mu_kim_stanton, mu_quadrature, mu_symmetric)

__all__ = [
    "BadIndex", "CapExceeded", "ConstraintViolation", "DivergentSeries",
    "DomainError", "NoConvergence", "PoleAt", "PoleInDenominator",
    "QmbError", "QuadNoConvergence", "SamplingExhausted",
    "DEFAULT_EPS_TAIL", "DEFAULT_N_MAX", "EVAL_GUARD", "OMEGA",
    "ExclusionKind", "ExclusionWitness", "ParamSet", "PartialThetaRep",
    "QBase", "exclusion_check", "idem", "in_omega", "in_upsilon",
    "omega_triple", "partial_theta", "pm", "qbinomial", "qgamma", "qpoch",
    "qpoch_inf", "qpoch_multi", "theta", "theta_bilateral", "theta_multi",
    "ConvergenceClass", "EvalCounters", "SeriesSpec", "VWPSpec", "classify",
    "phi", "spec", "vwp", "w65_closed_form",
    "DEFAULT_EPS_QUAD", "GmProblem", "SymmetricProblem", "default_sigma",
    "g_m_integral", "g_m_sum_c", "g_m_sum_d", "h_sum", "h_terms", "j_sum",
    "j_terms", "quad_unit_circle", "symmetric_integral", "to_gm",
    "CheckReport", "IdentityDescriptor", "catalog", "check", "sweep_free",
    "SampleConfig", "admissibility_failure", "sample",
    "AWParams", "aw_weight", "aw_weight_split", "mu_kim_stanton",
    "mu_quadrature", "mu_symmetric",
]

__version__ = "0.1.0"
