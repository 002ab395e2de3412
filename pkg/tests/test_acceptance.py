"""One test per acceptance criterion; each prints a PASS/FAIL line."""
import math
import time

import numpy as np
import pytest

from bohrlab.functions import sharpness_probe, verify_grid
from bohrlab.lemmas import run_lemma_suite
from bohrlab.psi import Geometric, HarmonicWeight, Hypergeometric, ZetaWeight
from bohrlab.radius import PolynomialG, RadiusProblem, Theorem, solve_radius
from bohrlab.special import HypergeometricParams, gauss_2f1, polylog

from conftest import ACCEPTANCE_LINES

FAMILIES = (Geometric(), HarmonicWeight(), ZetaWeight())
# the convolution theorem fixes its weights; the family axis becomes the 2F1 parameters
HYPS = (HypergeometricParams(1, 1, 2), HypergeometricParams(0.5, 1, 1),
        HypergeometricParams(1, 2, 3))
MATRIX_K = (1.0, 2.0, 5.0)
MATRIX_P = (1.0, 2.0)


def report(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def matrix_problems():
    for theorem in Theorem:
        for i, family in enumerate(FAMILIES):
            for K in MATRIX_K:
                for p in MATRIX_P:
                    G = PolynomialG((1.0,)) if theorem.has_polynomial else PolynomialG()
                    hyp = HYPS[i] if theorem is Theorem.CONVOLUTION else None
                    yield RadiusProblem(theorem, family, K, p, G, hyp)


@pytest.fixture(scope="module")
def solved_matrix():
    return [(problem, solve_radius(problem).radius) for problem in matrix_problems()]


def label(problem):
    return f"{problem.theorem.value}/{problem.psi_family}/K={problem.K:g}/p={problem.p:g}"


def bisect(fn, lo, hi, tol=1e-15):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if fn(mid) < 0 else (lo, mid)
    return 0.5 * (lo + hi)


def test_criterion_1_closed_form_radii():
    start = time.perf_counter()
    worst = 0.0
    for K in (1, 1.5, 2, 5, 10, 100):
        for p, exact in ((1.0, (K + 1) / (5 * K + 1)), (2.0, (K + 1) / (3 * K + 1))):
            radius = solve_radius(RadiusProblem("c1", Geometric(), K, p)).radius
            worst = max(worst, abs(radius - exact))
    elapsed = time.perf_counter() - start
    report(1, worst <= 1e-10 and elapsed < 1.0,
           f"max |R - closed form| = {worst:.2e} (tol 1e-10), runtime {elapsed:.3f} s (< 1 s)")


def test_criterion_2_k1_pointwise_radii():
    t3 = solve_radius(RadiusProblem("t3")).radius
    t4 = solve_radius(RadiusProblem("t4")).radius
    e3 = abs(t3 - (math.sqrt(17) - 3) / 4)
    quartic = lambda r: 1 - 2 * r - r**2 - r**3 - r**4
    oracle = bisect(lambda r: -quartic(r), 0.0, 1.0)
    e4 = abs(t4 - oracle)
    e4b = abs(t4 - 0.385795)
    report(2, e3 <= 1e-9 and e4 <= 1e-9 and e4b <= 1e-6,
           f"T3 err {e3:.2e}, T4 err {e4:.2e} (tol 1e-9), |T4 - 0.385795| = {e4b:.2e} (tol 1e-6)")


def test_criterion_3_log_polylog_equations():
    worst = 0.0
    G = PolynomialG((1.0,))
    for K in (1.0, 2.0, 5.0):
        w = 4 * K / (K + 1)
        for theorem in ("t1", "t2"):
            R = solve_radius(RadiusProblem(theorem, HarmonicWeight(), K, 1.0, G)).radius
            worst = max(worst, abs(w * math.log1p(-R) + 2 * math.log1p(-R * R) + 1))
        R = solve_radius(RadiusProblem("t1", ZetaWeight(), K, 1.0, G)).radius
        worst = max(worst, abs(w * polylog(2, R) + 2 * polylog(3, R * R) - 1))
        R = solve_radius(RadiusProblem("t2", ZetaWeight(), K, 2.0, G)).radius
        worst = max(worst, abs(w / 2 * polylog(2, R) + polylog(3, R * R) - 1))
    report(3, worst <= 1e-10, f"max equation residual {worst:.2e} (tol 1e-10)")


def test_criterion_4_constraint_bounds():
    b3, b4 = math.sqrt(2) - 1, (math.sqrt(5) - 1) / 2
    over = 0.0
    for K in range(1, 11):
        over = max(over, solve_radius(RadiusProblem("t3", Geometric(), K)).radius - b3)
        over = max(over, solve_radius(RadiusProblem("t4", Geometric(), K)).radius - b4)
    report(4, over <= 1e-12, f"max radius - bound = {over:.3e} (must be <= 1e-12)")


def test_criterion_5_inequality_sweep(solved_matrix):
    start = time.perf_counter()
    failures, worst = [], -math.inf
    for problem, radius in solved_matrix:
        rep = verify_grid(problem, radius=radius)
        assert len(rep.rows) == 60
        worst = max(worst, rep.max_excess)
        if not rep.passed:
            failures.append(label(problem))
    elapsed = time.perf_counter() - start
    report(5, not failures and elapsed < 30.0,
           f"{len(solved_matrix) - len(failures)}/{len(solved_matrix)} cells pass, "
           f"max lhs - rhs = {worst:.2e} (tol 1e-10), runtime {elapsed:.1f} s (< 30 s)"
           + (f"; failing: {failures}" if failures else ""))


def test_criterion_6_sharpness(solved_matrix):
    missing = []
    for problem, radius in solved_matrix:
        witness = sharpness_probe(problem, 0.05 * (1.0 - radius), radius=radius)
        if witness is None or witness.a > 0.9999:
            missing.append(label(problem))
    report(6, not missing,
           f"witness found in {len(solved_matrix) - len(missing)}/{len(solved_matrix)} cells"
           + (f"; none for: {missing}" if missing else ""))


def test_criterion_7_lemma_suite():
    rep = run_lemma_suite(count=1000, seed=0, max_zeros=4, order=512)
    worst = min(rep.min_slack.values())
    report(7, rep.passed,
           f"min slack {worst:.2e} (>= -1e-10) over {rep.count} products, "
           f"Mobius equality gap {rep.equality_gap:.1e} (<= 1e-14)")


def test_criterion_8_special_functions():
    worst = 0.0
    params = HypergeometricParams(1, 1, 2)
    for z in np.arange(1, 10) / 10:
        exact = -math.log1p(-z) / z
        worst = max(worst, abs(gauss_2f1(params, z) - exact) / exact)
    poly_ok = True
    for s in (1, 2, 3):
        for x in (0.1, 0.5, 0.9):
            n = np.arange(1, 100_001, dtype=float)
            tail = x ** 100_001 / (100_001**s * (1 - x))
            poly_ok &= abs(polylog(s, x) - math.fsum(x**n / n**s)) <= tail + 1e-14
    report(8, worst <= 1e-12 and poly_ok,
           f"2F1(1,1;2;z) max rel err {worst:.2e} (tol 1e-12), polylog oracle agreement {poly_ok}")


def test_criterion_9_convolution():
    params = HypergeometricParams(1, 1, 2)
    conv = solve_radius(RadiusProblem("conv", K=1.0, p=1.0, hyp=params)).radius
    oracle = bisect(lambda r: -math.log1p(-r) / r - 1.5, 0.01, 0.99)
    c1 = solve_radius(RadiusProblem("c1", Hypergeometric(params), 1.0, 1.0)).radius
    report(9, abs(conv - oracle) <= 1e-10 and abs(conv - c1) <= 1e-10,
           f"|R - log-equation root| = {abs(conv - oracle):.2e}, |R - C1 radius| = {abs(conv - c1):.2e}"
           " (tol 1e-10)")
