"""Homogeneous-set extraction and finite-scale limit certificates."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from helpers import has_mono_triangle
from mixlab.ramsey import (Coloring, SimplexArray, SimplexError,
                           color_quantize, decompose_verify, find_homogeneous,
                           iterated_limit, rlimit_estimate)


def _cycle_coloring(n: int) -> Coloring:
    pairs = list(combinations(range(1, n + 1), 2))
    colors = tuple((p, 0 if (p[1] - p[0]) % n in (1, n - 1) else 1) for p in pairs)
    return Coloring(2, n, colors, 2)


def test_simplex_array_shape_and_json():
    arr = SimplexArray.build(2, 4, lambda a: Fraction(1, a[0] + a[1]))
    assert len(arr.values) == 6
    data = arr.to_json()
    assert data["values"][0] == {"alpha": [1, 2], "x": "1/3"}
    assert SimplexArray.from_json(data) == arr
    with pytest.raises(SimplexError):
        SimplexArray(2, 4, arr.values[:-1])


def test_simplex_restrict():
    arr = SimplexArray.build(2, 6, lambda a: Fraction(a[0] * 10 + a[1]))
    sub = arr.restrict([2, 4, 6])
    assert sub.N == 3 and sub.as_dict()[(1, 3)] == Fraction(26)


def test_color_quantize_examples():
    arr = SimplexArray.build(2, 3, {(1, 2): Fraction(0), (1, 3): Fraction(1, 4),
                                    (2, 3): Fraction(1, 2)})
    col = color_quantize(arr, Fraction(1, 4))
    assert col.r == 3 and sorted(col.as_dict().values()) == [0, 1, 2]
    arr2 = SimplexArray.build(2, 3, {(1, 2): Fraction(1, 8), (1, 3): Fraction(3, 8),
                                     (2, 3): Fraction(1, 8)})
    assert color_quantize(arr2, Fraction(1, 4)).r == 2
    const = SimplexArray.build(2, 5, lambda a: Fraction(1, 4))
    assert color_quantize(const, Fraction(1, 100)).r == 1
    with pytest.raises(SimplexError):
        color_quantize(const, Fraction(0))


def test_find_homogeneous_all_same_color():
    const = SimplexArray.build(2, 5, lambda a: Fraction(1, 4))
    res = find_homogeneous(color_quantize(const, Fraction(1)), target=5)
    assert res.cert.subset == (1, 2, 3, 4, 5)
    assert res.reached_target and res.exact
    assert res.cert.reverify(color_quantize(const, Fraction(1)))


def test_find_homogeneous_cycle_witness():
    res = find_homogeneous(_cycle_coloring(5), target=3)
    assert res.cert.size == 2 and not res.reached_target


def test_find_homogeneous_matches_triangle_scan():
    rng = random.Random(19)
    pairs = list(combinations(range(1, 7), 2))
    for _ in range(300):
        bits = [rng.randint(0, 1) for _ in pairs]
        coloring = Coloring(2, 6, tuple(zip(pairs, bits)), 2)
        res = find_homogeneous(coloring, target=3)
        assert (res.cert.size >= 3) == has_mono_triangle(dict(zip(pairs, bits)), 6)


def test_find_homogeneous_deterministic_and_lex_smallest():
    pairs = list(combinations(range(1, 5), 2))
    # two maximum sets {1,3} unusable; color so that {1,4} and {2,3} tie at size 2,
    # with a unique color-0 triangle-free structure: check lex tie-break on maxima
    colors = {p: 1 for p in pairs}
    colors[(1, 4)] = 0
    colors[(2, 3)] = 0
    coloring = Coloring(2, 4, tuple(sorted(colors.items())), 2)
    first = find_homogeneous(coloring, target=2)
    again = find_homogeneous(coloring, target=2)
    assert first == again
    # maxima of color 1 have size 3 ({1,2,3} has edge (2,3) color 0... enumerate):
    # verify against brute maximum
    best = 0
    best_sets = []
    cmap = coloring.as_dict()
    for size in range(2, 5):
        for s in combinations(range(1, 5), size):
            cs = {cmap[p] for p in combinations(s, 2)}
            if len(cs) == 1:
                if size > best:
                    best, best_sets = size, [s]
                elif size == best:
                    best_sets.append(s)
    assert first.cert.size == best
    assert first.cert.subset == min(best_sets)


def test_find_homogeneous_budget_monotone():
    coloring = _cycle_coloring(9)
    sizes = []
    for budget in (5, 50, 500, 5000):
        res = find_homogeneous(coloring, target=3, node_budget=budget)
        sizes.append(res.cert.size)
        assert res.cert.reverify(coloring)
    assert sizes == sorted(sizes)


def test_find_homogeneous_greedy_mode():
    # budget below C(N, m) forces the greedy path; certificate still verifies
    const = SimplexArray.build(2, 12, lambda a: Fraction(1, 3))
    coloring = color_quantize(const, Fraction(1))
    res = find_homogeneous(coloring, target=3, node_budget=10)
    assert not res.exact and res.cert.size == 12


def test_rlimit_constant_array():
    const = SimplexArray.build(2, 5, lambda a: Fraction(1, 4))
    est = rlimit_estimate(const, Fraction(1, 100))
    assert est.subset == (1, 2, 3, 4, 5)
    assert est.value == Fraction(1, 4) and est.max_deviation == 0
    assert est.reverify(const)


def test_rlimit_tail_extraction():
    arr = SimplexArray.build(2, 32, lambda a: Fraction(1, a[0]))
    est = rlimit_estimate(arr, Fraction(1, 8))
    assert est.min_index >= 8
    assert abs(est.value) <= Fraction(1, 8)
    assert est.max_deviation <= Fraction(1, 8)
    assert est.reverify(arr)
    assert rlimit_estimate(arr, Fraction(1, 8)) == est


def test_iterated_limit_constant():
    const = SimplexArray.build(2, 8, lambda a: Fraction(2, 7))
    rep = iterated_limit(const, range(1, 9), Fraction(1, 100))
    assert rep.value == Fraction(2, 7) and rep.agrees
    assert all(l.spread == 0 for l in rep.levels)


def test_iterated_limit_harmonic():
    arr = SimplexArray.build(2, 32, lambda a: Fraction(1, a[0]) + Fraction(1, a[1]))
    rep = iterated_limit(arr, range(1, 33), Fraction(1, 4))
    # recomputed from the definition: outer indices leave a full inner window,
    # so every inner mean runs over the deepest three indices
    inner_tail = sum(Fraction(1, k2) for k2 in (30, 31, 32)) / 3
    expected = sum(Fraction(1, k1) + inner_tail for k1 in (27, 28, 29)) / 3
    assert rep.value == expected
    assert rep.levels[-1].spread > 0
    assert rep.agrees


def test_iterated_limit_agrees_on_correlation_array():
    from mixlab.groups import integers
    from mixlab.systems import fair_coin

    sys = fair_coin(integers())
    A = sys.pattern({0: 1})
    arr = SimplexArray.build(
        2, 12, lambda a: sys.correlation([(0, A), (100 * a[0] + 10000 * a[1], A)]))
    rep = iterated_limit(arr, range(1, 13), Fraction(1, 100))
    assert rep.value == Fraction(1, 4) and rep.rlim_value == Fraction(1, 4)
    assert rep.agrees


def test_iterated_limit_needs_room():
    const = SimplexArray.build(2, 4, lambda a: Fraction(1))
    with pytest.raises(SimplexError):
        iterated_limit(const, range(1, 5), Fraction(1, 10))


def test_decompose_constant():
    const = SimplexArray.build(3, 10, lambda a: Fraction(1, 3))
    rep = decompose_verify(const, range(1, 11), Fraction(1, 100))
    assert rep.passed and rep.global_value == Fraction(1, 3)


def test_decompose_reciprocal_min():
    arr = SimplexArray.build(3, 16, lambda a: Fraction(1, a[0]))
    rep = decompose_verify(arr, range(1, 17), Fraction(1, 4))
    assert rep.passed
    assert [v for _, v in rep.slice_values] == [Fraction(1, k) for k in range(1, 9)]


def test_decompose_outlier_below_horizon():
    # one wild slice at k=1 is outside the trailing window and must not fail the check
    def value(a):
        if a[0] == 1:
            return Fraction(7)
        return Fraction(1, 10)
    arr = SimplexArray.build(3, 14, value)
    rep = decompose_verify(arr, range(1, 15), Fraction(1, 20))
    assert rep.passed
    assert rep.slice_values[0][1] == Fraction(7)


def test_decompose_rejects_order_one():
    arr = SimplexArray.build(1, 6, lambda a: Fraction(1))
    with pytest.raises(SimplexError):
        decompose_verify(arr, range(1, 7), Fraction(1, 10))
