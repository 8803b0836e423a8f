"""Acceptance criteria, one test per criterion, exact tolerances, timed.

Each test prints a single pass/fail line. Criterion 8's polynomial clause is
implemented exactly as stated and marked xfail: verified counterexamples show
the searched configuration exists at this window (see the test body).
"""

from __future__ import annotations

import time
from fractions import Fraction
from itertools import combinations, product

import pytest

from helpers import ledrappier_window_solutions
from mixlab.experiments import run_experiment
from mixlab.groups import BOXES, FolnerFamily, integers, int_vectors
from mixlab.largeness import (EVIDENCE_SIGMA, REFUTES_SIGMA, SeedMatrix,
                              admissible_check, enumerate_sigma,
                              folner_density, polynomial_image,
                              polynomial_sigma2_search, sigma_star_evidence,
                              sum_free_check)
from mixlab.ramsey import Coloring, SimplexArray, find_homogeneous, rlimit_estimate
from mixlab.systems import LedrappierSystem, fair_coin

Z = integers()
Z2 = int_vectors(2)


class _timer:
    def __init__(self, limit: float):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        return False


def _line(criterion: str, ok: bool, t: _timer):
    print(f"ACCEPTANCE {criterion}: {'pass' if ok else 'FAIL'} ({t.elapsed:.2f}s)")


def test_c1_ledrappier_non_3_mixing():
    with _timer(10.0) as t:
        led = LedrappierSystem()
        A = led.pattern({(0, 0): 0})
        zero = (0, 0)
        assert led.measure(A) == Fraction(1, 2)
        for n in range(1, 11):
            terms = [(zero, A), ((2 ** n, 0), A), ((0, 2 ** n), A)]
            assert led.correlation(terms) == Fraction(1, 4)
            assert led.mixing_gap(terms) == Fraction(1, 8)
        for a in range(-8, 9):
            for b in range(-8, 9):
                if (a, b) == (0, 0):
                    continue
                pair = led.correlation([(zero, A), ((a, b), A)])
                assert pair - Fraction(1, 4) == 0
    _line("1 ledrappier non-3-mixing", True, t)
    assert t.elapsed < 10.0


def test_c2_ledrappier_largeness_dichotomy():
    with _timer(30.0) as t:
        led = LedrappierSystem()
        A = led.pattern({(0, 0): 0})
        zero = (0, 0)
        eps = Fraction(1, 16)
        K = 8

        def pred(v):
            g1, g2 = v
            return led.mixing_gap([(zero, A), (g1, A), (g2, A)]) < eps

        refut_seed = SeedMatrix.build(
            Z2, [[[(2 ** k, 0) for k in range(1, K + 1)]],
                 [[(0, 2 ** k) for k in range(1, K + 1)]]], d=2, name="pow2-m1")
        refutation = sigma_star_evidence(pred, [refut_seed])
        assert refutation.kind == REFUTES_SIGMA
        for _, v in refutation.refuting_values:
            g1, g2 = v
            assert led.mixing_gap([(zero, A), (g1, A), (g2, A)]) == Fraction(1, 8) > eps

        def diag(base):
            col1 = [(base ** k, 0) for k in range(1, K + 1)]
            col2 = [(0, base ** k) for k in range(1, K + 1)]
            return SeedMatrix.build(Z2, [[col1] * 2, [col2] * 2], d=2, name=f"geo{base}")

        battery = [diag(b) for b in (2, 3, 5)]
        evidence = sigma_star_evidence(pred, battery)
        assert evidence.kind == EVIDENCE_SIGMA
        for seed in battery:
            for _, v in enumerate_sigma(seed):
                assert pred(v)
        s = 2 ** 1 + 2 ** 2
        assert led.correlation([(zero, A), ((s, 0), A), ((0, s), A)]) == Fraction(1, 8)
    _line("2 largeness dichotomy", True, t)
    assert t.elapsed < 30.0


def test_c3_bernoulli_rlimit():
    with _timer(5.0) as t:
        N, ell = 14, 2
        sys = fair_coin(Z)
        A = sys.pattern({0: 1})
        seed = SeedMatrix.build(
            Z, [[[j * 3 ** k for k in range(1, N + 1)]] * ell for j in (1, 2)], d=ell)
        values = {}
        for alpha, v in enumerate_sigma(seed):
            values[alpha] = sys.correlation([(0, A)] + [(g, A) for g in v])
        arr = SimplexArray.build(ell, N, values)
        assert all(x == Fraction(1, 8) for _, x in arr.values)
        est = rlimit_estimate(arr, Fraction(1, 100))
        assert est.value == Fraction(1, 8)
        assert est.subset == tuple(range(1, N + 1))
    _line("3 bernoulli rlimit", True, t)
    assert t.elapsed < 5.0


def test_c4_ledrappier_oracle_equivalence():
    with _timer(60.0) as t:
        led = LedrappierSystem()
        solutions = ledrappier_window_solutions(4, 4)
        cells = [(a, b) for a in range(4) for b in range(4)]
        checked = 0
        for size in range(0, 6):
            for support in combinations(cells, size):
                hist = {}
                for sol in solutions:
                    key = tuple(sol[c] for c in support)
                    hist[key] = hist.get(key, 0) + 1
                for bits in product((0, 1), repeat=size):
                    expected = Fraction(hist.get(bits, 0), len(solutions))
                    got = led.measure(led.pattern(dict(zip(support, bits))))
                    assert got == expected, (support, bits)
                    checked += 1
        assert checked == sum(2 ** j * len(list(combinations(cells, j))) for j in range(6))
    _line(f"4 oracle equivalence ({checked} patterns)", True, t)
    assert t.elapsed < 60.0


def test_c5_ramsey_selftest():
    with _timer(30.0) as t:
        pairs = list(combinations(range(1, 7), 2))
        count = 0
        for bits in product((0, 1), repeat=len(pairs)):
            coloring = Coloring(2, 6, tuple(zip(pairs, bits)), 2)
            res = find_homogeneous(coloring, target=3)
            assert res.cert.size >= 3
            count += 1
        assert count == 32768
        pairs5 = list(combinations(range(1, 6), 2))
        cycle = Coloring(2, 5, tuple((p, 0 if (p[1] - p[0]) % 5 in (1, 4) else 1)
                                     for p in pairs5), 2)
        res5 = find_homogeneous(cycle, target=3)
        assert res5.cert.size == 2
    _line("5 ramsey selftest", True, t)
    assert t.elapsed < 30.0


def test_c6_pullback_counterexamples():
    with _timer(10.0) as t:
        pull = run_experiment("pullback_nonmixing", {"k_max": 10, "K": 8})
        assert pull.passed
        assert all(row[1] == "1/4" for row in pull.tables[0].rows)
        assert all(row[2] == "0" for row in pull.tables[1].rows)
        prime = run_experiment("prime_select_nonsigma", {"ell": 2, "primes": [2, 3], "K": 8})
        assert prime.passed
        assert prime.certificates[0]["kind"] == "RefutesSigmaStar"
        assert all(row[2] == "1/2" for row in prime.tables[0].rows)
    _line("6 pullback counterexamples", True, t)
    assert t.elapsed < 10.0


def test_c7_density_one_battery():
    with _timer(20.0) as t:
        sys = fair_coin(Z)
        A = sys.pattern({0: 1})
        eps = Fraction(1, 100)
        fam = FolnerFamily(Z, BOXES, 200)
        report = folner_density(
            lambda g: sys.mixing_gap([(0, A), (g, A)]) < eps, fam, 200)
        complement = 1 - report.ratios[-1][1]
        assert complement <= Fraction(1, 401)
        window = fam.window(200)
        total = Fraction(0)
        for n in window:
            total += sys.mixing_gap([(0, A), (n, A), (2 * n, A)])
        assert total / len(window) <= eps
    _line("7 density-one battery", True, t)
    assert t.elapsed < 20.0


def test_c8_combinatorial_fixtures():
    with _timer(60.0) as t:
        values = sorted(3 ** a + 3 ** b for a, b in combinations(range(1, 13), 2))
        assert sum_free_check(values) == (True, None)
        assert admissible_check(Z, [(1, 2, 3)], 3).admissible
        bad = admissible_check(Z, [(1, 0, 0), (0, 1, 0)], 3)
        assert not bad.admissible and bad.failing == "pi_3"
    _line("8 combinatorial fixtures (sum-free, admissible)", True, t)
    assert t.elapsed < 60.0


@pytest.mark.xfail(
    reason="stated emptiness does not hold: similar-triangle families give image "
    "triples with common shifts, e.g. n in {1, 289, 961} with (a, b) = (195, 1155) "
    "(196=14^2, 484=22^2, 1156=34^2, 1444=38^2, 2116=46^2); the configuration only "
    "dies at repeats >= 7 on this window",
    strict=True,
)
def test_c8_polynomial_search_returns_none():
    with _timer(60.0) as t:
        found = polynomial_sigma2_search([0, 0, 1], 10 ** 6, 3)
        ok = found is None
        _line("8 polynomial search returns none", ok, t)
        assert ok
        assert polynomial_sigma2_search([0, 0, 2], 10 ** 6, 3) is None


def test_c8_polynomial_witness_is_genuine():
    # the xfail above is a true property of the window, not a search bug
    with _timer(60.0) as t:
        witness = polynomial_sigma2_search([0, 0, 1], 10 ** 6, 3)
        assert witness is not None
        a, b, ns = witness
        squares = set(polynomial_image([0, 0, 1], 10 ** 6))
        assert 0 < a < b and len(ns) >= 3
        for n in ns:
            assert n in squares and n + a in squares and n + b in squares
    _line("8 polynomial witness re-verified against the image", True, t)
    assert t.elapsed < 60.0
