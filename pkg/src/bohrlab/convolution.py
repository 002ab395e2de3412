"""Hadamard product of a harmonic map with 2F1(a, b; c; z) and its Bohr check."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import DomainError
from .functions import AnalyticSeries, HarmonicMap
from .radius import RadiusProblem, RadiusResult, Theorem, check_convolution_hypothesis, solve_radius
from .special import HypergeometricParams


@dataclass
class ConvolvedMap:
    """Coefficients gamma_n a_n and gamma_n b_n of f convolved with 2F1."""

    base: HarmonicMap
    gamma: np.ndarray

    @property
    def h(self) -> AnalyticSeries:
        m = len(self.gamma)
        return AnalyticSeries(self.gamma * self.base.h.coefficients[:m])

    @property
    def g(self) -> AnalyticSeries:
        m = min(len(self.gamma), len(self.base.g.coefficients))
        return AnalyticSeries(self.gamma[:m] * self.base.g.coefficients[:m])


def convolve(f: HarmonicMap, params: HypergeometricParams, order: int) -> ConvolvedMap:
    if order > f.h.order:
        raise DomainError(f"order {order} exceeds the map's truncation order {f.h.order}")
    return ConvolvedMap(f, params.coefficients(order + 1))


def convolution_bohr_check(f: HarmonicMap, params: HypergeometricParams, K: float, p: float,
                           r: float) -> Tuple[float, float]:
    """(|a_0|^p + sum gamma_n |a_n| r^n + sum gamma_n |b_n| r^n, ||h||_inf).

    ``K`` is the quasiconformality constant the caller attributes to f; it
    does not enter either side but is validated.
    """
    if K < 1.0:
        raise DomainError(f"K must be >= 1, got {K!r}")
    if not (0.0 < p <= 2.0):
        raise DomainError(f"p must lie in (0, 2], got {p!r}")
    if not (0.0 <= r < 1.0):
        raise DomainError(f"r must lie in [0, 1), got {r!r}")
    if f.h.sup_norm is None:
        raise DomainError("the check needs the sup norm of h")
    check_convolution_hypothesis(params, f.h.order + 1)
    conv = convolve(f, params, f.h.order)
    ca, cb = np.abs(conv.h.coefficients), np.abs(conv.g.coefficients)
    rn = r ** np.arange(len(ca), dtype=float)
    lhs = abs(f.h.coefficients[0]) ** p + np.dot(ca[1:], rn[1:]) + np.dot(cb[1:], rn[1 : len(cb)])
    return float(lhs), float(f.h.sup_norm)


def convolution_radius(params: HypergeometricParams, K: float, p: float,
                       tol: float = 1e-13) -> RadiusResult:
    """Minimal root of 2F1(a, b; c; r) - 1 = p(K+1)/(4K)."""
    return solve_radius(RadiusProblem(Theorem.CONVOLUTION, K=K, p=p, hyp=params), tol)
