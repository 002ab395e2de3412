"""Radius functionals and their minimal positive roots in (0, 1).

Each theorem reduces to a scalar functional ``phi(r)`` that is negative at
r = 0; the sharp radius is its first zero.  ``solve_radius`` walks a uniform
grid from the origin until the first sign change and then bisects.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

from .errors import DomainError, HypothesisViolation, NoRootError
from .psi import (
    Geometric,
    Hypergeometric,
    PsiFamily,
    is_decreasing_at,
    psi,
    sum_from,
    weighted_square_sum,
)
from .special import HypergeometricParams

DEFAULT_TOL = 1e-13
GRID_STEP = 1e-3
R_MAX = 1.0 - 1e-6
DECREASING_CHECK_TERMS = 64
CONVOLUTION_CHECK_TERMS = 512


class Theorem(str, enum.Enum):
    T1 = "t1"
    C1 = "c1"
    T2 = "t2"
    C2 = "c2"
    T3 = "t3"
    T4 = "t4"
    CONVOLUTION = "conv"

    @classmethod
    def parse(cls, value: "str | Theorem") -> "Theorem":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        if key == "convolution":
            key = "conv"
        return cls(key)

    @property
    def has_polynomial(self) -> bool:
        return self in (Theorem.T1, Theorem.T2)

    @property
    def is_refined(self) -> bool:
        return self in (Theorem.T2, Theorem.C2, Theorem.T3, Theorem.T4)

    @property
    def is_pointwise(self) -> bool:
        """T3/T4 evaluate |h(z)| and |h'(z)| at a point of the circle |z| = r."""
        return self in (Theorem.T3, Theorem.T4)


@dataclass(frozen=True)
class PolynomialG:
    """G(x) = sum_{t=1}^N c_t x^t with non-negative coefficients; () means G = 0."""

    coefficients: Tuple[float, ...] = ()

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        if any(not math.isfinite(c) or c < 0 for c in coeffs):
            raise DomainError(f"G coefficients must be finite and >= 0, got {coeffs}")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def parse(cls, text: Optional[str]) -> "PolynomialG":
        if text is None or not text.strip():
            return cls()
        return cls(tuple(float(v) for v in text.split(",")))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def __call__(self, x: float) -> float:
        return sum(c * x ** (t + 1) for t, c in enumerate(self.coefficients))

    def derivative(self, x: float) -> float:
        return sum((t + 1) * c * x**t for t, c in enumerate(self.coefficients))


@dataclass(frozen=True)
class RadiusProblem:
    """Theorem selector with its parameters.

    ``family`` is ignored for the convolution theorem, whose weights are
    gamma_n r^n built from ``hyp``.
    """

    theorem: Theorem
    family: PsiFamily = field(default_factory=Geometric)
    K: float = 1.0
    p: float = 1.0
    G: PolynomialG = field(default_factory=PolynomialG)
    hyp: Optional[HypergeometricParams] = None

    def __post_init__(self):
        object.__setattr__(self, "theorem", Theorem.parse(self.theorem))
        if not (math.isfinite(self.K) and self.K >= 1.0):
            raise DomainError(f"K must be >= 1, got {self.K!r}")
        if not (0.0 < self.p <= 2.0):
            raise DomainError(f"p must lie in (0, 2], got {self.p!r}")
        if not self.theorem.has_polynomial and not self.G.is_zero:
            raise DomainError(f"G is only used by T1/T2, not {self.theorem.value}")
        if self.theorem is Theorem.CONVOLUTION and self.hyp is None:
            object.__setattr__(self, "hyp", HypergeometricParams(1.0, 1.0, 2.0))

    @property
    def k(self) -> float:
        """Dilatation bound (K-1)/(K+1)."""
        return (self.K - 1.0) / (self.K + 1.0)

    @property
    def weight(self) -> float:
        """2K/(K+1) = 1 + k."""
        return 2.0 * self.K / (self.K + 1.0)

    @property
    def psi_family(self) -> PsiFamily:
        if self.theorem is Theorem.CONVOLUTION:
            return Hypergeometric(self.hyp)
        return self.family


@dataclass
class RadiusResult:
    radius: float
    residual: float
    bracket: Tuple[float, float]
    iterations: int
    constraint_radius_R: Optional[float] = None


def _check_hypotheses(problem: RadiusProblem, r: float) -> None:
    family = problem.psi_family
    if not is_decreasing_at(family, r, DECREASING_CHECK_TERMS):
        raise HypothesisViolation(f"{family} is not decreasing in n at r={r}")


def check_convolution_hypothesis(params: HypergeometricParams,
                                 n_max: int = CONVOLUTION_CHECK_TERMS) -> None:
    """(a+n)(b+n) - (c+n)(1+n) <= 0 for 0 <= n < n_max, i.e. the condition at r = 1."""
    for n in range(n_max):
        if (params.a + n) * (params.b + n) - (params.c + n) * (1.0 + n) > 0:
            raise HypothesisViolation(
                f"(a+n)(b+n) > (c+n)(1+n) at n={n} for a={params.a}, b={params.b}, c={params.c}"
            )


def phi(problem: RadiusProblem, r: float) -> float:
    """Value of the theorem's radius functional at r."""
    r = float(r)
    if not (0.0 <= r < 1.0):
        raise DomainError(f"r must lie in [0, 1), got {r!r}")
    _check_hypotheses(problem, r)
    th = problem.theorem
    family = problem.psi_family
    psi0 = psi(family, 0, r)

    if th is Theorem.CONVOLUTION:
        return sum_from(family, 1, r) - problem.p * (problem.K + 1.0) / (4.0 * problem.K)

    if th in (Theorem.T1, Theorem.C1, Theorem.T2, Theorem.C2):
        value = problem.weight * sum_from(family, 1, r) - 0.5 * problem.p * psi0
        if th.has_polynomial and not problem.G.is_zero:
            value += problem.G(weighted_square_sum(family, r))
        return value

    if psi0 == 0.0:
        raise HypothesisViolation(f"psi_0({r}) = 0 is excluded for {th.value}")
    psi1 = psi(family, 1, r)
    inner = problem.weight * sum_from(family, 2, r) + problem.k * psi1
    if th is Theorem.T3:
        return 2.0 * psi1 + 2.0 * (1.0 + r) ** 2 * inner - (1.0 - r * r) * psi0
    return psi1 + (1.0 + r) ** 2 * inner - (1.0 - r * r) * psi0


def constraint_function(problem: RadiusProblem) -> Optional[Callable[[float], float]]:
    """Function whose minimal root is the T3/T4 side constraint R.

    T3 uses 2 psi_1 = (1 - r^2) psi_0; T4 uses psi_1 = (1 - r^2) psi_0, the
    condition its proof needs and the one giving (sqrt 5 - 1)/2 for r^n.
    """
    family = problem.psi_family
    if problem.theorem is Theorem.T3:
        return lambda r: 2.0 * psi(family, 1, r) - (1.0 - r * r) * psi(family, 0, r)
    if problem.theorem is Theorem.T4:
        return lambda r: psi(family, 1, r) - (1.0 - r * r) * psi(family, 0, r)
    return None


def minimal_root(fn: Callable[[float], float], tol: float = DEFAULT_TOL,
                 step: float = GRID_STEP, r_max: float = R_MAX):
    """First sign change of ``fn`` on [0, r_max], refined by bisection.

    Returns (root, (lo, hi), iterations).  Raises NoRootError when ``fn``
    stays negative on every grid point.
    """
    if not (1e-14 <= tol <= 1e-6):
        raise DomainError(f"tol must lie in [1e-14, 1e-6], got {tol!r}")
    lo = 0.0
    f_lo = fn(lo)
    if f_lo >= 0.0:
        raise DomainError(f"functional is not negative at r = 0 (value {f_lo})")

    n_steps = int(math.ceil(r_max / step))
    hi = None
    for i in range(1, n_steps + 1):
        r = min(i * step, r_max)
        value = fn(r)
        if value >= 0.0:
            hi = r
            break
        lo = r
    if hi is None:
        raise NoRootError(f"functional stays negative on [0, {r_max}]")

    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if fn(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        iterations += 1
    return 0.5 * (lo + hi), (lo, hi), iterations


def solve_radius(problem: RadiusProblem, tol: float = DEFAULT_TOL,
                 step: float = GRID_STEP) -> RadiusResult:
    """Minimal positive root of the problem's functional."""
    if problem.theorem is Theorem.CONVOLUTION:
        check_convolution_hypothesis(problem.hyp)
    root, bracket, iterations = minimal_root(lambda r: phi(problem, r), tol, step)
    result = RadiusResult(
        radius=root,
        residual=abs(phi(problem, root)),
        bracket=bracket,
        iterations=iterations,
    )
    constraint = constraint_function(problem)
    if constraint is not None:
        big_r, _, _ = minimal_root(constraint, tol, step)
        # both theorems prove R_K <= R; a violation means a broken functional
        if result.radius > big_r + tol:
            raise ArithmeticError(
                f"radius {result.radius} exceeds the constraint radius {big_r}"
            )
        result.constraint_radius_R = big_r
    return result


def closed_form_radius(problem: RadiusProblem) -> Optional[float]:
    """Known closed form for the geometric family without the G term.

    With psi_n = r^n the functional (2K/(K+1)) r/(1-r) - p/2 vanishes at
    p(K+1) / (4K + p(K+1)), i.e. (K+1)/(5K+1) for p = 1 and (K+1)/(3K+1)
    for p = 2.
    """
    th = problem.theorem
    if th not in (Theorem.T1, Theorem.C1, Theorem.T2, Theorem.C2):
        return None
    if not isinstance(problem.family, Geometric) or not problem.G.is_zero:
        return None
    K, p = problem.K, problem.p
    return p * (K + 1.0) / (4.0 * K + p * (K + 1.0))


def radius_table(theorem: "Theorem | str", family: PsiFamily, K_values: Sequence[float],
                 p: float = 1.0, G: Optional[PolynomialG] = None,
                 hyp: Optional[HypergeometricParams] = None, tol: float = DEFAULT_TOL):
    """One (problem, result, closed form) row per K."""
    rows = []
    for K in K_values:
        problem = RadiusProblem(Theorem.parse(theorem), family, float(K), p,
                                G or PolynomialG(), hyp)
        rows.append((problem, solve_radius(problem, tol), closed_form_radius(problem)))
    return rows
