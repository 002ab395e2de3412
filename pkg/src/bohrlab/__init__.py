"""Sharp generalized Bohr radii for K-quasiconformal harmonic mappings."""
from .convolution import ConvolvedMap, convolution_bohr_check, convolution_radius, convolve
from .errors import (
    ConvergenceError,
    DomainError,
    HypothesisViolation,
    NoRootError,
    TruncationError,
)
from .functions import (
    AnalyticSeries,
    HarmonicMap,
    MobiusAtom,
    VerificationReport,
    Witness,
    blaschke_product,
    majorant_lhs,
    majorant_rhs,
    mobius_coefficients,
    sharpness_probe,
    verify_grid,
)
from .lemmas import run_lemma_suite
from .psi import (
    Custom,
    Geometric,
    HarmonicWeight,
    Hypergeometric,
    PsiFamily,
    ZetaWeight,
    is_decreasing_at,
    parse_family,
    psi,
    sum_from,
    weighted_square_sum,
)
from .radius import (
    PolynomialG,
    RadiusProblem,
    RadiusResult,
    Theorem,
    closed_form_radius,
    phi,
    solve_radius,
)
from .special import HypergeometricParams, gauss_2f1, pochhammer, polylog

__version__ = "0.1.0"
