"""Independent brute-force oracles the library tests check against."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple


def ledrappier_window_solutions(width: int, height: int) -> List[Dict[Tuple[int, int], int]]:
    """All GF(2) arrays on [0,width) x [0,height) obeying x(n,m)+x(n+1,m)+x(n,m+1)=0.

    Free cells are the bottom row plus the last column of every higher row;
    everything else is forced, and the relation is re-checked exhaustively.
    """
    out = []
    for bottom in product((0, 1), repeat=width):
        for lastcol in product((0, 1), repeat=height - 1):
            grid = {(n, 0): bottom[n] for n in range(width)}
            for m in range(1, height):
                grid[(width - 1, m)] = lastcol[m - 1]
                for n in range(width - 2, -1, -1):
                    grid[(n, m)] = grid[(n, m - 1)] ^ grid[(n + 1, m - 1)]
            assert all(grid[(n, m)] ^ grid[(n + 1, m)] ^ grid[(n, m + 1)] == 0
                       for n in range(width - 1) for m in range(height - 1))
            out.append(grid)
    return out


def ledrappier_brute_measure(constraints: Dict[Tuple[int, int], int],
                             solutions: List[Dict[Tuple[int, int], int]]) -> Fraction:
    hits = sum(1 for g in solutions if all(g[c] == v for c, v in constraints.items()))
    return Fraction(hits, len(solutions))


def bernoulli_brute_measure(constraints: Dict, probs: Sequence[Fraction]) -> Fraction:
    """Sum of product weights over all symbol assignments matching the constraints."""
    coords = sorted(constraints)
    total = Fraction(0)
    for assignment in product(range(len(probs)), repeat=len(coords)):
        if all(assignment[i] == constraints[c] for i, c in enumerate(coords)):
            w = Fraction(1)
            for s in assignment:
                w *= probs[s]
            total += w
    return total


def has_mono_triangle(coloring: Dict[Tuple[int, int], int], n: int) -> bool:
    for tri in combinations(range(1, n + 1), 3):
        colors = {coloring[p] for p in combinations(tri, 2)}
        if len(colors) == 1:
            return True
    return False


def brute_poly_witness(values: Sequence[int], repeats: int) -> Optional[Tuple[int, int, Tuple[int, ...]]]:
    """Exhaustive triple scan for shifts (a, b) shared by >= repeats base values."""
    vals = sorted(values)
    vset = set(vals)
    shared: Dict[Tuple[int, int], List[int]] = {}
    for x, y, z in combinations(vals, 3):
        key = (y - x, z - x)
        shared.setdefault(key, []).append(x)
    hits = [(a, b, tuple(ns)) for (a, b), ns in sorted(shared.items()) if len(ns) >= repeats]
    return hits[0] if hits else None
