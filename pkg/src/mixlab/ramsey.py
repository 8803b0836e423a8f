"""Finite Ramsey extraction and limit estimation over m-subset-indexed arrays."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Sequence, Tuple

Alpha = Tuple[int, ...]

DEFAULT_NODE_BUDGET = 10 ** 6
DEFAULT_WINDOW = 3


class SimplexError(ValueError):
    pass


@dataclass(frozen=True)
class SimplexArray:
    """Exact rational values indexed by the m-element subsets of {1..N}."""

    m: int
    N: int
    values: Tuple[Tuple[Alpha, Fraction], ...]

    def __post_init__(self):
        if len(self.values) != comb(self.N, self.m):
            raise SimplexError(f"need {comb(self.N, self.m)} entries, got {len(self.values)}")

    @staticmethod
    def build(m: int, N: int, value_at) -> "SimplexArray":
        """value_at: mapping or callable on sorted m-tuples."""
        get = value_at.__getitem__ if hasattr(value_at, "__getitem__") else value_at
        vals = tuple((a, Fraction(get(a))) for a in combinations(range(1, N + 1), m))
        return SimplexArray(m, N, vals)

    def as_dict(self) -> Dict[Alpha, Fraction]:
        return dict(self.values)

    def restrict(self, subset: Sequence[int]) -> "SimplexArray":
        """Sub-array on the given index set, relabelled to 1..|subset|."""
        sub = sorted(subset)
        data = self.as_dict()
        relab = {new: old for new, old in enumerate(sub, start=1)}
        return SimplexArray.build(self.m, len(sub),
                                  lambda a: data[tuple(relab[i] for i in a)])

    def to_json(self) -> dict:
        return {"m": self.m, "N": self.N,
                "values": [{"alpha": list(a), "x": str(x)} for a, x in self.values]}

    @staticmethod
    def from_json(data: dict) -> "SimplexArray":
        vals = {tuple(v["alpha"]): Fraction(v["x"]) for v in data["values"]}
        return SimplexArray.build(data["m"], data["N"], vals)


@dataclass(frozen=True)
class Coloring:
    m: int
    N: int
    color: Tuple[Tuple[Alpha, int], ...]
    r: int
    cell_values: Tuple[Fraction, ...] = ()  # quantization cell lower edges, by color id

    def as_dict(self) -> Dict[Alpha, int]:
        return dict(self.color)


def color_quantize(arr: SimplexArray, eps: Fraction) -> Coloring:
    """Half-open cells [c*eps, (c+1)*eps); exact boundary values go to the upper cell."""
    eps = Fraction(eps)
    if eps <= 0:
        raise SimplexError("eps must be positive")
    cells = {a: (x / eps).__floor__() for a, x in arr.values}
    distinct = sorted(set(cells.values()))
    ids = {c: i for i, c in enumerate(distinct)}
    return Coloring(arr.m, arr.N, tuple((a, ids[c]) for a, c in sorted(cells.items())),
                    len(distinct), tuple(c * eps for c in distinct))


@dataclass(frozen=True)
class HomogeneousCert:
    subset: Tuple[int, ...]
    color: int
    size: int

    def reverify(self, coloring: Coloring) -> bool:
        cmap = coloring.as_dict()
        return all(cmap[a] == self.color for a in combinations(self.subset, coloring.m))

    def to_json(self) -> dict:
        return {"subset": list(self.subset), "color": self.color, "size": self.size}


@dataclass(frozen=True)
class HomogeneousSearch:
    cert: HomogeneousCert
    reached_target: bool
    exact: bool
    nodes: int


def find_homogeneous(coloring: Coloring, target: int,
                     node_budget: int = DEFAULT_NODE_BUDGET) -> HomogeneousSearch:
    """Largest subset whose m-subsets are monochromatic, lex-smallest among maxima.

    Runs an exact depth-first branch and bound when C(N, m) fits the node
    budget, otherwise a deterministic greedy pass from every start vertex.
    A truncated exact run falls back to the better of its incumbent and the
    greedy result, so a larger budget never shrinks the answer. The returned
    certificate is exhaustively re-verified either way.
    """
    m, N = coloring.m, coloring.N
    if target < m:
        raise SimplexError("target below subset order m")
    if N < m:
        raise SimplexError("horizon below subset order m")
    cmap = coloring.as_dict()
    exact_mode = comb(N, m) <= node_budget
    nodes = [0]

    def compatible(s: List[int], v: int, col: int) -> bool:
        return all(cmap[a + (v,)] == col for a in combinations(s, m - 1))

    def improves(candidate: Tuple[int, ...], best: List) -> bool:
        return (best[0] is None or len(candidate) > len(best[0])
                or (len(candidate) == len(best[0]) and candidate < best[0]))

    def bb(col: int, s: List[int], start: int, best: List) -> None:
        nodes[0] += 1
        if len(s) >= m and improves(tuple(s), best):
            best[0], best[1] = tuple(s), col
        for v in range(start, N + 1):
            # even taking v and everything above cannot reach the incumbent size
            if best[0] is not None and len(s) + 1 + (N - v) < len(best[0]):
                break
            if nodes[0] >= node_budget:
                return
            if len(s) >= m - 1 and not compatible(s, v, col):
                continue
            s.append(v)
            bb(col, s, v + 1, best)
            s.pop()

    def greedy() -> List:
        best: List = [None, 0]
        for col in range(coloring.r):
            for start in range(1, N + 1):
                s = [start]
                for v in range(start + 1, N + 1):
                    if len(s) < m - 1 or compatible(s, v, col):
                        s.append(v)
                if len(s) >= m and improves(tuple(s), best):
                    best[0], best[1] = tuple(s), col
        return best

    chosen: List = [None, 0]
    truncated = False
    if exact_mode:
        for col in range(coloring.r):
            bb(col, [], 1, chosen)
        truncated = nodes[0] >= node_budget
        if truncated:
            alt = greedy()
            if alt[0] is not None and improves(alt[0], chosen):
                chosen = alt
    else:
        chosen = greedy()
    if chosen[0] is None:
        # any m vertices are homogeneous for the color of their single m-subset
        first = tuple(range(1, m + 1))
        chosen = [first, cmap[first]]
    cert = HomogeneousCert(tuple(chosen[0]), chosen[1], len(chosen[0]))
    if not cert.reverify(coloring):
        raise SimplexError("internal error: certificate failed re-verification")
    return HomogeneousSearch(cert, cert.size >= target, exact_mode and not truncated, nodes[0])


@dataclass(frozen=True)
class RLimitEstimate:
    subset: Tuple[int, ...]
    value: Fraction
    eps: Fraction
    max_deviation: Fraction

    @property
    def min_index(self) -> int:
        """Effective threshold of the finite-scale limit: smallest usable index."""
        return self.subset[0]

    def reverify(self, arr: SimplexArray) -> bool:
        data = arr.as_dict()
        dev = max((abs(data[a] - self.value) for a in combinations(self.subset, arr.m)),
                  default=Fraction(0))
        return dev == self.max_deviation and dev <= self.eps

    def to_json(self) -> dict:
        return {"subset": list(self.subset), "value": str(self.value),
                "eps": str(self.eps), "max_deviation": str(self.max_deviation)}


def rlimit_estimate(arr: SimplexArray, eps: Fraction,
                    node_budget: int = DEFAULT_NODE_BUDGET) -> RLimitEstimate:
    """Finite-scale limit along the largest value-homogeneous subset found.

    Quantizes at cell width eps/2, extracts a homogeneous subset, and reports
    the exact mean of the values on it; all deviations stay within eps by the
    cell-width argument, and the actual maximum deviation is reported.
    """
    eps = Fraction(eps)
    coloring = color_quantize(arr, eps / 2)
    search = find_homogeneous(coloring, target=arr.m, node_budget=node_budget)
    subset = search.cert.subset
    data = arr.as_dict()
    vals = [data[a] for a in combinations(subset, arr.m)]
    mean = sum(vals, Fraction(0)) / len(vals)
    dev = max(abs(v - mean) for v in vals)
    if dev > eps:
        raise SimplexError("internal error: deviation bound violated")
    return RLimitEstimate(subset, mean, eps, dev)


@dataclass(frozen=True)
class LevelReport:
    level: int
    spread: Fraction


@dataclass(frozen=True)
class IteratedLimitReport:
    levels: Tuple[LevelReport, ...]
    value: Fraction
    rlim_value: Fraction
    agrees: bool


def iterated_limit(arr: SimplexArray, subset: Sequence[int], tol: Fraction,
                   window: int = DEFAULT_WINDOW) -> IteratedLimitReport:
    """Innermost-to-outermost empirical limits along subset, last-``window`` values per level.

    Each level's estimate is the exact mean of the deepest ``window``
    admissible continuations; spreads are per-level maxima of max-min over
    the averaged values. Agreement compares against rlimit_estimate at tol.
    """
    tol = Fraction(tol)
    s = sorted(subset)
    m = arr.m
    if len(s) < m + window:
        raise SimplexError(f"need at least m + {window} indices, got {len(s)}")
    data = arr.as_dict()
    spreads: Dict[int, Fraction] = {}

    def estimate(prefix: Tuple[int, ...]) -> Fraction:
        depth = len(prefix)
        if depth == m:
            return data[prefix]
        remaining = m - depth - 1
        floor = prefix[-1] if prefix else 0
        # only indices with full window-nesting room below keep levels aligned
        candidates = [k for k in s
                      if k > floor and sum(1 for t in s if t > k) >= window * remaining]
        if not candidates:
            raise SimplexError("subset too small for nesting")
        tail = candidates[-window:]
        vals = [estimate(prefix + (k,)) for k in tail]
        level = depth + 1
        spread = max(vals) - min(vals)
        spreads[level] = max(spreads.get(level, Fraction(0)), spread)
        return sum(vals, Fraction(0)) / len(vals)

    value = estimate(())
    rlim = rlimit_estimate(arr.restrict(s), tol)
    levels = tuple(LevelReport(lv, spreads[lv]) for lv in sorted(spreads))
    return IteratedLimitReport(levels, value, rlim.value, abs(value - rlim.value) <= tol)


@dataclass(frozen=True)
class SliceTrendReport:
    slice_values: Tuple[Tuple[int, Fraction], ...]
    global_value: Fraction
    eps: Fraction
    passed: bool


def decompose_verify(arr: SimplexArray, subset: Sequence[int], eps: Fraction,
                     window: int = DEFAULT_WINDOW) -> SliceTrendReport:
    """Check that per-index slice limits trend into the global estimate's cell.

    For each k in the first half of subset, estimates the order-m slice
    alpha -> x_{ {k} u alpha } over indices above k, then requires the last
    ``window`` slice values to sit within 2*eps of the global estimate of the
    full order-(m+1) array over subset.
    """
    eps = Fraction(eps)
    s = sorted(subset)
    m = arr.m - 1
    if m < 1:
        raise SimplexError("array order must be at least 2")
    data = arr.as_dict()
    glob = rlimit_estimate(arr.restrict(s), eps)
    half = s[: max(1, len(s) // 2)]
    rows = []
    for k in half:
        above = [t for t in s if t > k]
        if len(above) < m:
            raise SimplexError(f"slice at k={k} too small")
        relab = {new: old for new, old in enumerate(above, start=1)}
        slice_arr = SimplexArray.build(m, len(above),
                                       lambda a: data[(k,) + tuple(relab[i] for i in a)])
        rows.append((k, rlimit_estimate(slice_arr, eps).value))
    tail = rows[-window:]
    passed = all(abs(v - glob.value) <= 2 * eps for _, v in tail)
    return SliceTrendReport(tuple(rows), glob.value, eps, passed)


__all__ = [
    "SimplexArray", "SimplexError", "Coloring", "HomogeneousCert", "HomogeneousSearch",
    "RLimitEstimate", "IteratedLimitReport", "SliceTrendReport", "LevelReport",
    "color_quantize", "find_homogeneous", "rlimit_estimate", "iterated_limit",
    "decompose_verify", "DEFAULT_NODE_BUDGET", "DEFAULT_WINDOW",
]
