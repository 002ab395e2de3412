"""Pochhammer symbols, real polylogarithms and the Gauss series on [0, 1).

Every series is summed in vectorised chunks and stopped only once a
geometric bound on the remaining tail is below the working precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError

MAX_TERMS = 1_000_000
CHUNK = 512
_REL = 1e-16


@dataclass(frozen=True)
class HypergeometricParams:
    """Positive real parameters ``a, b, c`` of 2F1(a, b; c; z)."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be a positive real, got {value!r}")

    def term_ratio(self, n):
        """gamma_{n+1} / gamma_n, vectorised over ``n``."""
        n = np.asarray(n, dtype=float)
        return (self.a + n) * (self.b + n) / ((self.c + n) * (1.0 + n))

    def ratio_sup(self, n: int) -> float:
        """Upper bound of ``term_ratio(m)`` over all m >= n (n >= 1)."""
        # ratio - 1 = (alpha m + beta) / ((c+m)(1+m)), and the denominator is >= m^2
        alpha = self.a + self.b - self.c - 1.0
        beta = self.a * self.b - self.c
        n = max(n, 1)
        return 1.0 + abs(alpha) / n + abs(beta) / n**2

    def coefficients(self, count: int) -> np.ndarray:
        """gamma_0 .. gamma_{count-1} by the term recurrence."""
        out = np.ones(count)
        if count > 1:
            out[1:] = np.cumprod(self.term_ratio(np.arange(count - 1)))
        return out


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    result = 1.0
    for j in range(int(n)):
        result *= a + j
        if not math.isfinite(result):
            raise OverflowError(f"({a})_{n} exceeds the floating range")
    return result


def _check_unit_interval(x: float, name: str = "x") -> float:
    x = float(x)
    if not (0.0 <= x < 1.0):
        raise DomainError(f"{name} must lie in [0, 1), got {x!r}")
    return x


def polylog(s: int, x: float) -> float:
    """Li_s(x) = sum_{n>=1} x^n / n^s for s in {1, 2, 3} and 0 <= x < 1."""
    if s not in (1, 2, 3):
        raise DomainError(f"only s in {{1, 2, 3}} is supported, got {s!r}")
    x = _check_unit_interval(x)
    if s == 1:
        return -math.log1p(-x)
    if x == 0.0:
        return 0.0

    total = 0.0
    start = 1
    while start <= MAX_TERMS:
        n = np.arange(start, start + CHUNK, dtype=float)
        terms = x**n / n**s
        total += terms.sum()
        last = n[-1]
        # terms after `last` are bounded by x^(N+1) / ((N+1)^s (1 - x))
        tail = x ** (last + 1) / ((last + 1) ** s * (1.0 - x))
        if terms[-1] <= _REL * total and tail <= _REL * total:
            return float(total)
        start += CHUNK
    raise ConvergenceError(f"Li_{s}({x}) did not converge within {MAX_TERMS} terms")


def gauss_2f1(params: HypergeometricParams, z: float) -> float:
    """2F1(a, b; c; z) for positive parameters and 0 <= z < 1."""
    z = _check_unit_interval(z, "z")
    if z == 0.0:
        return 1.0
    total = 0.0
    term = 1.0  # gamma_n z^n at the start of the current chunk
    start = 0
    while start <= MAX_TERMS:
        n = np.arange(start, start + CHUNK, dtype=float)
        ratios = params.term_ratio(n) * z
        with np.errstate(over="ignore"):
            terms = term * np.concatenate(([1.0], np.cumprod(ratios[:-1])))
        total += terms.sum()
        if not math.isfinite(total):
            break
        term = terms[-1] * ratios[-1]
        q = z * params.ratio_sup(start + CHUNK)
        if q < 1.0:
            tail = term / (1.0 - q)
            if tail <= _REL * total:
                return float(total)
        start += CHUNK
    raise ConvergenceError(
        f"2F1({params.a}, {params.b}; {params.c}; {z}) did not converge "
        f"within {MAX_TERMS} terms"
    )
