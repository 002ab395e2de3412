"""Weight sequences {psi_n(r)} and the aggregate sums the radius functionals use.

A family exposes its terms as vectorised numpy arrays plus a bound on the
term ratio psi_{m+1}/psi_m for m >= n.  The ratio bound is what certifies
every truncated sum: once it drops below one the remaining tail is
dominated by a geometric series.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

import numpy as np

from .errors import ConvergenceError, DomainError
from .special import CHUNK, MAX_TERMS, HypergeometricParams, gauss_2f1, polylog

_REL = 1e-16
DECREASING_SLACK = 1e-15


def _check_r(r: float) -> float:
    r = float(r)
    if not (0.0 <= r < 1.0):
        raise DomainError(f"r must lie in [0, 1), got {r!r}")
    return r


class PsiFamily:
    """Base class; subclasses provide ``terms`` and ``ratio_bound``."""

    label = "custom"

    def terms(self, r: float, start: int, stop: int) -> np.ndarray:
        """psi_n(r) for start <= n < stop."""
        raise NotImplementedError

    def ratio_bound(self, n: int, r: float) -> Optional[float]:
        """Bound on psi_{m+1}(r)/psi_m(r) for every m >= n, or None if unknown."""
        return None

    def iter_chunks(self, r: float, start: int) -> Iterator[np.ndarray]:
        while True:
            yield self.terms(r, start, start + CHUNK)
            start += CHUNK

    # closed forms; None means "sum the series"
    def closed_sum_from(self, t: int, r: float) -> Optional[float]:
        return None

    def closed_weighted_square_sum(self, r: float) -> Optional[float]:
        return None

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class Geometric(PsiFamily):
    """psi_n(r) = r^n."""

    label = "geometric"

    def terms(self, r, start, stop):
        return r ** np.arange(start, stop, dtype=float)

    def ratio_bound(self, n, r):
        return r

    def closed_sum_from(self, t, r):
        return r**t / (1.0 - r)

    def closed_weighted_square_sum(self, r):
        return r * r / (1.0 - r * r) ** 2


@dataclass(frozen=True)
class HarmonicWeight(PsiFamily):
    """psi_0 = 1, psi_n(r) = r^n / n."""

    label = "harmonic"

    def terms(self, r, start, stop):
        n = np.arange(start, stop, dtype=float)
        out = r**n / np.where(n == 0, 1.0, n)
        return out

    def ratio_bound(self, n, r):
        return r

    def closed_sum_from(self, t, r):
        return -math.log1p(-r) if t == 1 else None

    def closed_weighted_square_sum(self, r):
        return -math.log1p(-r * r)


@dataclass(frozen=True)
class ZetaWeight(PsiFamily):
    """psi_0 = 1, psi_n(r) = r^n / n^2."""

    label = "zeta2"

    def terms(self, r, start, stop):
        n = np.arange(start, stop, dtype=float)
        return r**n / np.where(n == 0, 1.0, n * n)

    def ratio_bound(self, n, r):
        return r

    def closed_sum_from(self, t, r):
        return polylog(2, r) if t == 1 else None

    def closed_weighted_square_sum(self, r):
        return polylog(3, r * r)


@dataclass(frozen=True)
class Hypergeometric(PsiFamily):
    """psi_n(r) = gamma_n r^n with gamma_n the 2F1(a, b; c; .) coefficients."""

    params: HypergeometricParams = field(default_factory=lambda: HypergeometricParams(1, 1, 2))

    @property
    def label(self):
        p = self.params
        return f"hyp:{p.a:g},{p.b:g},{p.c:g}"

    def _chunk_from(self, r, start, head):
        n = np.arange(start, start + CHUNK, dtype=float)
        ratios = self.params.term_ratio(n) * r
        chunk = head * np.concatenate(([1.0], np.cumprod(ratios[:-1])))
        return chunk, chunk[-1] * ratios[-1]

    def iter_chunks(self, r, start):
        # the recurrence has to run from gamma_0 even when start is large
        head, pos = 1.0, 0
        while True:
            chunk, nxt = self._chunk_from(r, pos, head)
            if pos + CHUNK > start:
                yield chunk[max(start - pos, 0):]
            head, pos = nxt, pos + CHUNK

    def terms(self, r, start, stop):
        return self.params.coefficients(stop)[start:] * r ** np.arange(start, stop, dtype=float)

    def ratio_bound(self, n, r):
        return r * self.params.ratio_sup(n)

    def closed_sum_from(self, t, r):
        return gauss_2f1(self.params, r) - 1.0 if t == 1 else None


@dataclass(frozen=True)
class Custom(PsiFamily):
    """A user supplied family.

    ``term(n, r)`` gives psi_n(r).  Optional callables supply closed forms
    and a ratio bound; without a ratio bound the tail is estimated from the
    largest observed ratio over the last chunk, which is conservative only
    for eventually log-convex sequences.
    """

    term: Callable[[int, float], float] = None
    sum_from_fn: Optional[Callable[[int, float], float]] = None
    weighted_fn: Optional[Callable[[float], float]] = None
    ratio_fn: Optional[Callable[[int, float], float]] = None
    name: str = "custom"

    @property
    def label(self):
        return self.name

    def terms(self, r, start, stop):
        return np.array([self.term(n, r) for n in range(start, stop)], dtype=float)

    def ratio_bound(self, n, r):
        return self.ratio_fn(n, r) if self.ratio_fn else None

    def closed_sum_from(self, t, r):
        return self.sum_from_fn(t, r) if self.sum_from_fn else None

    def closed_weighted_square_sum(self, r):
        return self.weighted_fn(r) if self.weighted_fn else None


def parse_family(text: str) -> PsiFamily:
    """Family from its CLI id: geometric | harmonic | zeta2 | hyp:a,b,c."""
    key = text.strip().lower()
    if key == "geometric":
        return Geometric()
    if key == "harmonic":
        return HarmonicWeight()
    if key == "zeta2":
        return ZetaWeight()
    if key.startswith("hyp:"):
        parts = key[4:].split(",")
        if len(parts) != 3:
            raise ValueError(f"expected hyp:a,b,c, got {text!r}")
        return Hypergeometric(HypergeometricParams(*(float(v) for v in parts)))
    raise ValueError(f"unknown family {text!r}")


def _observed_ratio(chunk: np.ndarray) -> Optional[float]:
    tail = chunk[-8:]
    if np.all(tail == 0):
        return 0.0
    if np.any(tail[:-1] == 0):
        return None
    return float(np.max(tail[1:] / tail[:-1]))


def _certified_sum(family: PsiFamily, r: float, start: int, power: int = 1,
                   weighted: bool = False) -> float:
    """sum_{n>=start} w_n psi_n(r)^power with w_n = n if ``weighted`` else 1."""
    total = 0.0
    pos = start
    for chunk in family.iter_chunks(r, start):
        n = np.arange(pos, pos + len(chunk), dtype=float)
        vals = chunk**power * (n if weighted else 1.0)
        total += vals.sum()
        pos += len(chunk)
        q = family.ratio_bound(pos - 1, r)
        if q is None:
            q = _observed_ratio(chunk)
        if q is not None:
            q = q**power * (pos / (pos - 1) if weighted and pos > 1 else 1.0)
            if q < 1.0:
                tail = vals[-1] * q / (1.0 - q)
                if tail <= _REL * total:
                    return float(total)
        if pos - start > MAX_TERMS:
            break
    raise ConvergenceError(
        f"series for {family} at r={r} did not converge within {MAX_TERMS} terms"
    )


def psi(family: PsiFamily, n: int, r: float) -> float:
    """psi_n(r)."""
    r = _check_r(r)
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    return float(family.terms(r, n, n + 1)[0])


def sum_from(family: PsiFamily, t: int, r: float) -> float:
    """Psi_t(r) = sum_{k>=t} psi_k(r), for t >= 1."""
    r = _check_r(r)
    if t < 1:
        raise DomainError(f"t must be >= 1, got {t}")
    closed = family.closed_sum_from(t, r)
    if closed is not None:
        return float(closed)
    if r == 0.0:
        return 0.0
    return _certified_sum(family, r, t)


def weighted_square_sum(family: PsiFamily, r: float) -> float:
    """sum_{n>=1} n psi_n(r)^2."""
    r = _check_r(r)
    closed = family.closed_weighted_square_sum(r)
    if closed is not None:
        return float(closed)
    if r == 0.0:
        return 0.0
    return _certified_sum(family, r, 1, power=2, weighted=True)


def tail_sums(family: PsiFamily, r: float, count: int) -> np.ndarray:
    """Array of Psi_t(r) for t = 0 .. count-1 (Psi_0 includes psi_0).

    Built from the top down so large-t tails carry no cancellation.
    """
    r = _check_r(r)
    head = family.terms(r, 0, count)
    beyond = 0.0 if r == 0.0 else _certified_sum(family, r, count)
    return np.cumsum(head[::-1])[::-1] + beyond


def is_decreasing_at(family: PsiFamily, r: float, n_max: int) -> bool:
    """True iff psi_{n+1}(r) <= psi_n(r) for 1 <= n < n_max.

    Hypergeometric families must additionally satisfy the termwise
    condition (a+n)(b+n) r <= (c+n)(1+n) for 0 <= n < n_max.
    """
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    vals = family.terms(float(r), 1, n_max + 1)
    if np.any(vals[1:] > vals[:-1] + DECREASING_SLACK):
        return False
    if isinstance(family, Hypergeometric):
        p = family.params
        n = np.arange(n_max, dtype=float)
        if np.any((p.a + n) * (p.b + n) * r - (p.c + n) * (1.0 + n) > 0):
            return False
    return True
