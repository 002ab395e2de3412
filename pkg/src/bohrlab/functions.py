"""Concrete bounded analytic functions, harmonic test maps and majorant sums.

Maps are stored as truncated Taylor coefficient arrays.  ``majorant_lhs``
evaluates the left-hand side of each theorem and certifies the neglected
tail with the coefficient bound |a_n| <= 1 - |a_0|^2 for unit-norm h.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .errors import DomainError, TruncationError
from .psi import Hypergeometric, PsiFamily, psi, sum_from, tail_sums
from .radius import PolynomialG, RadiusProblem, Theorem, solve_radius

DEFAULT_ORDER = 512
TAIL_BUDGET = 1e-10


def series_mul(a: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    """Coefficients 0..order of the product of two power series."""
    return np.convolve(a[: order + 1], b[: order + 1])[: order + 1]


def series_div(num: np.ndarray, den: np.ndarray, order: int) -> np.ndarray:
    """Coefficients 0..order of num/den; requires den[0] != 0."""
    if den[0] == 0:
        raise ZeroDivisionError("constant term of the denominator is zero")
    num = np.concatenate((np.asarray(num, dtype=complex), np.zeros(order + 1)))[: order + 1]
    den = np.asarray(den, dtype=complex)[: order + 1]
    out = np.zeros(order + 1, dtype=complex)
    for n in range(order + 1):
        m = min(n, len(den) - 1)
        acc = num[n] - np.dot(den[1 : m + 1], out[n - m : n][::-1]) if m else num[n]
        out[n] = acc / den[0]
    return out


@dataclass
class AnalyticSeries:
    """Truncated h(z) = sum_{n<=M} a_n z^n with an optional known sup norm."""

    coefficients: np.ndarray
    sup_norm: Optional[float] = None

    def __post_init__(self):
        self.coefficients = np.asarray(self.coefficients, dtype=complex)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, z):
        return np.polyval(self.coefficients[::-1], z)

    def derivative(self, z):
        n = np.arange(1, len(self.coefficients))
        return np.polyval((n * self.coefficients[1:])[::-1], z)

    def scaled(self, factor: complex) -> "AnalyticSeries":
        norm = None if self.sup_norm is None else self.sup_norm * abs(factor)
        return AnalyticSeries(self.coefficients * factor, norm)


@dataclass
class HarmonicMap:
    """f = h + conj(g) with g(0) = 0 and dilatation bounded by k."""

    h: AnalyticSeries
    g: AnalyticSeries
    k: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.k < 1.0):
            raise DomainError(f"k must lie in [0, 1), got {self.k!r}")
        if len(self.g.coefficients) and abs(self.g.coefficients[0]) > 1e-15:
            raise DomainError("g must vanish at the origin")

    @property
    def K(self) -> float:
        return (1.0 + self.k) / (1.0 - self.k)

    def dilatation_ok(self, radii: Sequence[float] = (0.0, 0.3, 0.6, 0.9),
                      n_angles: int = 32, slack: float = 1e-12) -> bool:
        """|g'(z)| <= k |h'(z)| on a polar grid."""
        theta = np.linspace(0.0, 2 * np.pi, n_angles, endpoint=False)
        z = np.outer(radii, np.exp(1j * theta)).ravel()
        return bool(np.all(np.abs(self.g.derivative(z))
                           <= self.k * np.abs(self.h.derivative(z)) + slack))


@dataclass(frozen=True)
class MobiusAtom:
    """h(z) = (a - z)/(1 - a z) with g = lam k (h - a)."""

    a: float
    lam: complex = 1.0
    k: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.a < 1.0):
            raise DomainError(f"a must lie in [0, 1), got {self.a!r}")
        if abs(abs(self.lam) - 1.0) > 1e-12:
            raise DomainError("lambda must be unimodular")


def mobius_coefficients(atom: MobiusAtom, order: int) -> HarmonicMap:
    """Exact truncated coefficients A_0 = a, A_n = -(1 - a^2) a^(n-1)."""
    if order < 1:
        raise DomainError("order must be >= 1")
    a = atom.a
    coeffs = np.empty(order + 1, dtype=complex)
    coeffs[0] = a
    coeffs[1:] = -(1.0 - a * a) * a ** np.arange(order, dtype=float)
    g = atom.lam * atom.k * coeffs
    g[0] = 0.0
    return HarmonicMap(AnalyticSeries(coeffs, 1.0), AnalyticSeries(g, None), atom.k)


def blaschke_product(zeros: Sequence[complex], order: int,
                     unimodular: complex = 1.0) -> AnalyticSeries:
    """Taylor coefficients of unimodular * prod_j (w_j - z)/(1 - conj(w_j) z)."""
    zeros = [complex(w) for w in zeros]
    if any(abs(w) >= 1.0 for w in zeros):
        raise DomainError("Blaschke zeros must lie strictly inside the unit disk")
    if order < max(len(zeros), 1):
        raise DomainError("order must be at least the number of zeros")
    out = np.zeros(order + 1, dtype=complex)
    out[0] = unimodular
    for w in zeros:
        factor = series_div(np.array([w, -1.0]), np.array([1.0, -w.conjugate()]), order)
        out = series_mul(out, factor, order)
    return AnalyticSeries(out, 1.0)


def harmonic_from_dilatation(h: AnalyticSeries, omega: AnalyticSeries, k: float) -> HarmonicMap:
    """Map with g' = k * omega * h' and g(0) = 0, for |omega| <= 1."""
    order = h.order
    n = np.arange(1, order + 1)
    dh = n * h.coefficients[1:]
    dg = k * series_mul(omega.coefficients, dh, order - 1)
    g = np.zeros(order + 1, dtype=complex)
    g[1:] = dg / n
    return HarmonicMap(h, AnalyticSeries(g, None), k)


@dataclass
class MajorantTerms:
    """Sums shared by every theorem's left-hand side."""

    a0: float
    psi0: float
    linear_a: float      # sum_{n>=1} |a_n| psi_n
    linear_b: float      # sum_{n>=1} |b_n| psi_n
    area: float          # sum_{n>=1} n |a_n|^2 psi_n^2
    refined: float       # sum_{n>=1} |a_n|^2 (psi_{2n}/(1+|a_0|) + Psi_{2n+1})
    psi1: float
    a1: float


class WeightTable:
    """psi_n(r) and Psi_t(r) up to a fixed index, reusable across maps."""

    def __init__(self, family: PsiFamily, r: float, order: int):
        self.family, self.r, self.order = family, r, order
        self.tails = tail_sums(family, r, 2 * order + 3)
        self.terms = family.terms(r, 0, 2 * order + 3)

    def sums(self, a: np.ndarray, b: np.ndarray) -> MajorantTerms:
        m = len(a) - 1
        if m > self.order or len(b) - 1 > self.order:
            raise ValueError("weight table is shorter than the coefficient arrays")
        absa, absb = np.abs(a), np.abs(b)
        psi_n = self.terms
        n = np.arange(1, m + 1)
        sq = absa[1:] ** 2
        refined = np.dot(sq, psi_n[2 * n] / (1.0 + absa[0]) + self.tails[2 * n + 1])
        return MajorantTerms(
            a0=float(absa[0]),
            psi0=float(psi_n[0]),
            linear_a=float(np.dot(absa[1:], psi_n[1 : m + 1])),
            linear_b=float(np.dot(absb[1:], psi_n[1 : len(b)])),
            area=float(np.dot(n * sq, psi_n[1 : m + 1] ** 2)),
            refined=float(refined),
            psi1=float(psi_n[1]),
            a1=float(absa[1]) if m >= 1 else 0.0,
        )


def _tail_bound(f: HarmonicMap, table: WeightTable, theorem: Theorem, G: PolynomialG,
                area: float, z: Optional[complex]) -> float:
    """Upper bound on what truncating h and g at order M drops from the LHS.

    Assumes |b_n| <= k (1 - |a_0|^2), which holds for g = lam k (h - a_0).
    """
    s = f.h.sup_norm
    m = f.h.order
    coef = max(s - abs(f.h.coefficients[0]) ** 2 / s, 0.0)
    r = table.r
    family = table.family
    q = family.ratio_bound(m + 1, r)
    if q is None:
        near = table.terms[max(m - 7, 1) : m + 2]
        q = float(np.max(near[1:] / near[:-1])) if np.all(near[:-1] > 0) else math.inf
    if q >= 1.0:
        return math.inf
    big = table.tails[m + 1]
    bound = coef * (1.0 + f.k) * big
    if theorem.is_refined:
        bound += coef**2 * table.tails[2 * m + 2] / (1.0 - q)
    if theorem.has_polynomial and not G.is_zero:
        psi_next = table.terms[m + 1]
        q2 = q * q * (m + 2) / (m + 1)
        if q2 >= 1.0:
            return math.inf
        delta = coef**2 * (m + 1) * psi_next**2 / (1.0 - q2)
        bound += delta * G.derivative(area + delta)
    if theorem.is_pointwise and z is not None:
        rz = abs(z)
        dh = coef * rz ** (m + 1) / (1.0 - rz)
        ddh = coef * rz**m * ((m + 1) - m * rz) / (1.0 - rz) ** 2
        hz = 1.0 + dh
        point = (2 * hz * dh + dh * dh if theorem is Theorem.T4 else dh)
        bound += point * table.terms[0] + ddh * table.terms[1]
    return bound


def majorant_lhs(f: HarmonicMap, theorem: "Theorem | str", family: PsiFamily, r: float,
                 p: float = 1.0, G: Optional[PolynomialG] = None,
                 z: Optional[complex] = None, table: Optional[WeightTable] = None) -> float:
    """Left-hand side of the selected theorem's inequality at radius r.

    For T3/T4 the point z defaults to -r.  A precomputed ``table`` for the
    same (family, r) may be passed to avoid rebuilding the weights.
    """
    theorem = Theorem.parse(theorem)
    G = G or PolynomialG()
    r = float(r)
    if not (0.0 <= r < 1.0):
        raise DomainError(f"r must lie in [0, 1), got {r!r}")
    if f.h.sup_norm is None:
        raise DomainError("majorant evaluation needs the sup norm of h")
    if theorem is Theorem.CONVOLUTION and not isinstance(family, Hypergeometric):
        raise DomainError("the convolution majorant needs a hypergeometric family")
    if table is None or table.family != family or table.r != r or table.order < f.h.order:
        table = WeightTable(family, r, max(f.h.order, f.g.order))
    t = table.sums(f.h.coefficients, f.g.coefficients)

    if theorem.is_pointwise:
        z = -r if z is None else complex(z)
        if abs(abs(z) - r) > 1e-12:
            raise DomainError(f"|z| must equal r = {r}, got |z| = {abs(z)}")
        hz = abs(f.h(z))
        dhz = abs(f.h.derivative(z))
        head = hz if theorem is Theorem.T3 else hz * hz
        value = (head * t.psi0 + dhz * t.psi1 + (t.linear_a - t.a1 * t.psi1)
                 + t.linear_b + t.refined)
    else:
        value = t.a0**p * t.psi0 + t.linear_a + t.linear_b
        if theorem.has_polynomial:
            value += G(t.area)
        if theorem.is_refined:
            value += t.refined

    bound = _tail_bound(f, table, theorem, G, t.area, z)
    if bound > TAIL_BUDGET:
        raise TruncationError(
            f"truncation at order {f.h.order} leaves a tail bound {bound:.3g} at r={r}"
        )
    return float(value)


def majorant_rhs(f: HarmonicMap, family: PsiFamily, r: float) -> float:
    """psi_0(r) * ||h||_inf."""
    return psi(family, 0, r) * f.h.sup_norm


def order_for(r: float, floor: int = DEFAULT_ORDER) -> int:
    """Truncation order making r^order negligible next to the tail budget."""
    if r <= 0.0:
        return floor
    return max(floor, int(math.ceil(math.log(1e-20) / math.log(r))) + 1)


@dataclass
class Witness:
    a: float
    r: float
    lhs: float
    rhs: float


def mobius_lhs(problem: RadiusProblem, a: float, r: float,
               z: Optional[complex] = None) -> tuple:
    """(lhs, rhs) for the Möbius atom with k = (K-1)/(K+1) and lambda = 1."""
    f = mobius_coefficients(MobiusAtom(a, 1.0, problem.k), order_for(r))
    family = problem.psi_family
    lhs = majorant_lhs(f, problem.theorem, family, r, problem.p, problem.G, z)
    return lhs, majorant_rhs(f, family, r)


def sharpness_probe(problem: RadiusProblem, epsilon: float,
                    a_grid: Sequence[float] = (0.9, 0.99, 0.999, 0.9999),
                    radius: Optional[float] = None, tol: float = 1e-12) -> Optional[Witness]:
    """First Möbius atom violating the inequality at r = radius + epsilon, or None."""
    if radius is None:
        radius = solve_radius(problem).radius
    if not (epsilon > 0.0):
        raise DomainError(f"epsilon must be positive, got {epsilon!r}")
    r = radius + epsilon
    if r >= 1.0:
        raise DomainError(f"radius + epsilon = {r} leaves the unit interval")
    for a in a_grid:
        lhs, rhs = mobius_lhs(problem, a, r)
        if lhs > rhs + tol:
            return Witness(a, r, lhs, rhs)
    return None


@dataclass
class VerificationRow:
    a: float
    r: float
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs


@dataclass
class VerificationReport:
    radius: float
    rows: List[VerificationRow] = field(default_factory=list)
    tolerance: float = 1e-10

    @property
    def max_excess(self) -> float:
        return max((row.lhs - row.rhs for row in self.rows), default=-math.inf)

    @property
    def passed(self) -> bool:
        return all(row.margin >= -self.tolerance for row in self.rows)


DEFAULT_A_GRID = (0.0, 0.25, 0.5, 0.75, 0.9, 0.99)
DEFAULT_R_FRACTIONS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99)


def verify_grid(problem: RadiusProblem, a_grid: Sequence[float] = DEFAULT_A_GRID,
                r_values: Optional[Sequence[float]] = None,
                radius: Optional[float] = None) -> VerificationReport:
    """Evaluate the inequality for Möbius atoms on an (a, r) grid below the radius.

    ``r_values`` default to the fractions DEFAULT_R_FRACTIONS of the radius;
    values beyond the radius are rejected.
    """
    if radius is None:
        radius = solve_radius(problem).radius
    if r_values is None:
        r_values = [c * radius for c in DEFAULT_R_FRACTIONS]
    for r in r_values:
        if not (0.0 <= r <= radius):
            raise DomainError(f"r = {r} is outside [0, radius = {radius}]")
    report = VerificationReport(radius)
    for a in a_grid:
        for r in r_values:
            lhs, rhs = mobius_lhs(problem, a, r)
            report.rows.append(VerificationRow(float(a), float(r), lhs, rhs))
    return report
