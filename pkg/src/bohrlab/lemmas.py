"""Coefficient and majorant inequalities for unit-norm bounded functions.

Every check returns the minimum slack (bound minus quantity) over the
tested indices or grid points, so a value >= 0 up to round-off means the
inequality holds.  Random inputs are finite Blaschke products times a
unimodular constant, whose sup norm is exactly one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Sequence

import numpy as np

from .errors import DomainError
from .functions import (
    AnalyticSeries,
    HarmonicMap,
    MobiusAtom,
    WeightTable,
    blaschke_product,
    harmonic_from_dilatation,
    mobius_coefficients,
)
from .psi import Geometric, HarmonicWeight, PsiFamily, ZetaWeight

LEMMA_NAMES = ("schwarz_pick", "coefficient_bound", "odd_coefficients", "even_coefficients",
               "dilatation_energy", "refined_majorant_from_1", "refined_majorant_from_2")
DEFAULT_RS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8)
MAX_ZERO_MODULUS = 0.9


def _require_unit_norm(h: AnalyticSeries) -> None:
    if h.sup_norm is None or abs(h.sup_norm - 1.0) > 1e-12:
        raise DomainError(f"lemma checks need a unit-norm function, got sup_norm={h.sup_norm}")


def schwarz_pick_slack(h: AnalyticSeries, radii: Sequence[float] = (0.2, 0.5, 0.8, 0.9),
                       n_angles: int = 24) -> float:
    """min over a polar grid of (|h(0)|+|z|)/(1+|h(0)||z|) - |h(z)|."""
    _require_unit_norm(h)
    theta = np.linspace(0.0, 2 * np.pi, n_angles, endpoint=False)
    z = np.outer(radii, np.exp(1j * theta)).ravel()
    a0 = abs(h.coefficients[0])
    bound = (a0 + np.abs(z)) / (1.0 + a0 * np.abs(z))
    return float(np.min(bound - np.abs(h(z))))


def coefficient_slack(h: AnalyticSeries) -> float:
    """min_{n>=1} (1 - |a_0|^2) - |a_n|."""
    _require_unit_norm(h)
    absa = np.abs(h.coefficients)
    return float(np.min(1.0 - absa[0] ** 2 - absa[1:]))


def odd_coefficient_slack(h: AnalyticSeries) -> float:
    """min_k 1 - sum_{j<=k} |a_j|^2 - |a_{2k+1}|."""
    _require_unit_norm(h)
    absa = np.abs(h.coefficients)
    m = h.order
    ks = np.arange((m - 1) // 2 + 1)
    energy = np.cumsum(absa**2)
    return float(np.min(1.0 - energy[ks] - absa[2 * ks + 1]))


def even_coefficient_slack(h: AnalyticSeries) -> float:
    """min_{k>=1} 1 - sum_{j<k} |a_j|^2 - |a_k|^2/(1+|a_0|) - |a_{2k}|."""
    _require_unit_norm(h)
    absa = np.abs(h.coefficients)
    ks = np.arange(1, h.order // 2 + 1)
    energy = np.cumsum(absa**2)
    bound = 1.0 - energy[ks - 1] - absa[ks] ** 2 / (1.0 + absa[0])
    return float(np.min(bound - absa[2 * ks]))


def dilatation_square_slack(f: HarmonicMap, table: WeightTable) -> float:
    """k^2 sum |a_n|^2 psi_n - sum |b_n|^2 psi_n for a decreasing family."""
    psi_n = table.terms
    a2 = np.abs(f.h.coefficients[1:]) ** 2
    b2 = np.abs(f.g.coefficients[1:]) ** 2
    return float(f.k**2 * np.dot(a2, psi_n[1 : len(a2) + 1])
                 - np.dot(b2, psi_n[1 : len(b2) + 1]))


def refined_majorant_slack(h: AnalyticSeries, table: WeightTable, start: int) -> float:
    """(1-|a_0|^2) Psi_start - [sum_{n>=start} |a_n| psi_n + refined sum], start in {1, 2}."""
    _require_unit_norm(h)
    t = table.sums(h.coefficients, np.zeros(1))
    linear = t.linear_a - (t.a1 * t.psi1 if start == 2 else 0.0)
    return float((1.0 - t.a0**2) * table.tails[start] - linear - t.refined)


def random_blaschke(rng: np.random.Generator, order: int, max_zeros: int = 4) -> AnalyticSeries:
    """Unimodular constant times a Blaschke product with 1..max_zeros zeros.

    Zero moduli stay below MAX_ZERO_MODULUS so the order-512 truncation is
    exact to double precision.
    """
    count = int(rng.integers(1, max_zeros + 1))
    moduli = MAX_ZERO_MODULUS * rng.random(count)
    zeros = moduli * np.exp(2j * np.pi * rng.random(count))
    return blaschke_product(zeros, order, np.exp(2j * np.pi * rng.random()))


@dataclass
class LemmaReport:
    count: int
    seed: int
    min_slack: Dict[str, float] = field(default_factory=dict)
    equality_gap: float = math.nan
    tolerance: float = 1e-10

    @property
    def passed(self) -> bool:
        return (all(v >= -self.tolerance for v in self.min_slack.values())
                and self.equality_gap <= 1e-14)


def run_lemma_suite(count: int = 1000, seed: int = 0, max_zeros: int = 4, order: int = 512,
                    families: Sequence[PsiFamily] = (Geometric(), HarmonicWeight(), ZetaWeight()),
                    rs: Sequence[float] = DEFAULT_RS) -> LemmaReport:
    """Run every lemma check on ``count`` seeded random Blaschke products.

    The dilatation check pairs each h with an independent random Blaschke
    product omega and a random k, building g from g' = k omega h'.
    """
    rng = np.random.default_rng(seed)
    tables = [WeightTable(fam, r, order) for fam in families for r in rs]
    worst = {name: math.inf for name in LEMMA_NAMES}

    def keep(name, value):
        worst[name] = min(worst[name], value)

    for _ in range(count):
        h = random_blaschke(rng, order, max_zeros)
        omega = random_blaschke(rng, order, max_zeros)
        f = harmonic_from_dilatation(h, omega, float(rng.random() * 0.99))
        keep("schwarz_pick", schwarz_pick_slack(h))
        keep("coefficient_bound", coefficient_slack(h))
        keep("odd_coefficients", odd_coefficient_slack(h))
        keep("even_coefficients", even_coefficient_slack(h))
        for table in tables:
            keep("dilatation_energy", dilatation_square_slack(f, table))
            keep("refined_majorant_from_1", refined_majorant_slack(h, table, 1))
            keep("refined_majorant_from_2", refined_majorant_slack(h, table, 2))

    atom = mobius_coefficients(MobiusAtom(0.5), 4).h
    a = np.abs(atom.coefficients)
    gap = abs(a[1] - (1.0 - a[0] ** 2))
    return LemmaReport(count, seed, {k: float(v) for k, v in worst.items()}, float(gap))
