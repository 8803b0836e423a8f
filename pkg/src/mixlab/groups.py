"""Effective countable abelian groups: Z, Z^d, and finitely supported integer sequences.

Elements are plain Python values: an ``int`` for Z, a length-d tuple for Z^d,
and a variable-length tuple with trailing zeros stripped for the direct sum
of countably many copies of Z. All arithmetic is arbitrary precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, List, Optional, Sequence, Tuple, Union

INT = "Int"
INT_VEC = "IntVec"
FIN_SUPPORT = "FinSupportIntSeq"

Element = Union[int, Tuple[int, ...]]


class GroupError(ValueError):
    """Structured error for element/context mismatches."""


def _strip(coords: Sequence[int]) -> Tuple[int, ...]:
    end = len(coords)
    while end > 0 and coords[end - 1] == 0:
        end -= 1
    return tuple(coords[:end])


@dataclass(frozen=True)
class GroupContext:
    kind: str
    d: Optional[int] = None
    label: str = ""

    def __post_init__(self):
        if self.kind not in (INT, INT_VEC, FIN_SUPPORT):
            raise GroupError(f"unknown group kind {self.kind!r}")
        if self.kind == INT_VEC and (self.d is None or self.d < 1):
            raise GroupError("IntVec requires d >= 1")
        if self.kind != INT_VEC and self.d is not None:
            raise GroupError(f"{self.kind} takes no dimension")

    def zero(self) -> Element:
        if self.kind == INT:
            return 0
        if self.kind == INT_VEC:
            return (0,) * self.d
        return ()

    def element(self, coords: Union[int, Iterable[int]]) -> Element:
        """Build a canonical element from an int or coordinate iterable."""
        if self.kind == INT:
            if isinstance(coords, int):
                return coords
            seq = tuple(coords)
            if len(seq) != 1:
                raise GroupError("Int element needs exactly one coordinate")
            coords = seq
        elif isinstance(coords, int):
            raise GroupError(f"{self.kind} element needs a coordinate sequence")
        seq = tuple(coords)
        if any(not isinstance(c, int) or isinstance(c, bool) for c in seq):
            raise GroupError(f"coordinates must be integers: {seq!r}")
        if self.kind == INT:
            return seq[0]
        if self.kind == INT_VEC:
            if len(seq) != self.d:
                raise GroupError(f"expected {self.d} coordinates, got {len(seq)}")
            return seq
        return _strip(seq)

    def check(self, g: Element) -> Element:
        if self.kind == INT:
            if not isinstance(g, int):
                raise GroupError(f"not an Int element: {g!r}")
            return g
        if not isinstance(g, tuple):
            raise GroupError(f"not a {self.kind} element: {g!r}")
        if self.kind == INT_VEC:
            if len(g) != self.d:
                raise GroupError(f"dimension mismatch: expected {self.d}, got {len(g)}")
        elif g and g[-1] == 0:
            raise GroupError(f"non-canonical element (trailing zero): {g!r}")
        return g

    def add(self, a: Element, b: Element) -> Element:
        self.check(a), self.check(b)
        if self.kind == INT:
            return a + b
        if self.kind == INT_VEC:
            return tuple(x + y for x, y in zip(a, b))
        n = max(len(a), len(b))
        return _strip([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def neg(self, g: Element) -> Element:
        self.check(g)
        if self.kind == INT:
            return -g
        return tuple(-x for x in g)

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def scale(self, n: int, g: Element) -> Element:
        self.check(g)
        if self.kind == INT:
            return n * g
        if self.kind == INT_VEC:
            return tuple(n * x for x in g)
        return _strip([n * x for x in g])

    def escape_norm(self, g: Element) -> int:
        """Least k with g inside the k-th canonical Folner window; 0 iff g = 0."""
        self.check(g)
        if self.kind == INT:
            return abs(g)
        if self.kind == INT_VEC:
            return max(abs(x) for x in g)
        if not g:
            return 0
        return max(len(g), max(abs(x) for x in g))

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == INT_VEC:
            out["d"] = self.d
        if self.label:
            out["label"] = self.label
        return out

    @staticmethod
    def from_json(data: dict) -> "GroupContext":
        return GroupContext(data["kind"], data.get("d"), data.get("label", ""))

    def element_to_json(self, g: Element) -> List[int]:
        self.check(g)
        return [g] if self.kind == INT else list(g)

    def element_from_json(self, data: Union[int, Sequence[int]]) -> Element:
        return self.element(data)


def integers(label: str = "") -> GroupContext:
    return GroupContext(INT, label=label)


def int_vectors(d: int, label: str = "") -> GroupContext:
    return GroupContext(INT_VEC, d, label=label)


def fin_support(label: str = "") -> GroupContext:
    return GroupContext(FIN_SUPPORT, label=label)


# ---------------------------------------------------------------------------
# homomorphisms

SCALE = "Scale"
MATRIX = "Matrix"
INTERLEAVE = "Interleave"
PRIME_SELECT = "PrimeSelect"
EVEN_SELECT = "EvenSelect"


@dataclass(frozen=True)
class Hom:
    """A homomorphism between group contexts.

    Scale(a) multiplies componentwise and works on every kind. Matrix acts on
    IntVec(d). Interleave maps (a1,a2,...) to (0,a1,0,a2,...); EvenSelect is
    its left inverse (a1,a2,...) -> (a2,a4,...); PrimeSelect(p) picks the
    coordinates at positions p, p^2, p^3, ...
    """

    kind: str
    source: GroupContext
    a: int = 0
    matrix: Tuple[Tuple[int, ...], ...] = ()
    p: int = 0

    def __post_init__(self):
        if self.kind == MATRIX:
            if self.source.kind != INT_VEC:
                raise GroupError("Matrix hom needs an IntVec source")
            d = self.source.d
            if len(self.matrix) != d or any(len(row) != d for row in self.matrix):
                raise GroupError(f"matrix must be {d}x{d}")
        if self.kind == PRIME_SELECT and self.p < 2:
            raise GroupError("PrimeSelect needs p >= 2")

    @property
    def target(self) -> GroupContext:
        return self.source

    def apply(self, g: Element) -> Element:
        src = self.source
        src.check(g)
        if self.kind == SCALE:
            return src.scale(self.a, g)
        if self.kind == MATRIX:
            return tuple(sum(row[j] * g[j] for j in range(src.d)) for row in self.matrix)
        if src.kind != FIN_SUPPORT:
            raise GroupError(f"{self.kind} hom needs a FinSupportIntSeq source")
        if self.kind == INTERLEAVE:
            out: List[int] = []
            for x in g:
                out.extend((0, x))
            return _strip(out)
        if self.kind == EVEN_SELECT:
            return _strip([g[i] for i in range(1, len(g), 2)])
        if self.kind == PRIME_SELECT:
            out, q = [], self.p
            while q <= len(g):
                out.append(g[q - 1])
                q *= self.p
            return _strip(out)
        raise GroupError(f"unknown hom kind {self.kind!r}")

    def kernel_finite(self) -> Tuple[bool, dict]:
        """Whether the kernel is finite, with a rank or kernel-vector certificate."""
        src = self.source
        if self.kind == SCALE:
            if self.a != 0:
                return True, {"reason": "injective", "scale": self.a}
            return False, {"kernel_vector": src.element_to_json(_unit(src))}
        if self.kind == MATRIX:
            rank, kernel = _rational_rank_kernel(self.matrix)
            if rank == src.d:
                return True, {"rank": rank}
            return False, {"rank": rank, "kernel_vector": list(kernel)}
        if self.kind == INTERLEAVE:
            return True, {"reason": "injective"}
        # EvenSelect and PrimeSelect kill the first coordinate axis.
        return False, {"kernel_vector": [1]}


def _unit(ctx: GroupContext) -> Element:
    if ctx.kind == INT:
        return 1
    if ctx.kind == INT_VEC:
        return (1,) + (0,) * (ctx.d - 1)
    return (1,)


def _rational_rank_kernel(matrix: Tuple[Tuple[int, ...], ...]) -> Tuple[int, Optional[Tuple[int, ...]]]:
    # Gaussian elimination on the columns of M (kernel of g -> M g).
    d = len(matrix)
    cols = [[Fraction(matrix[i][j]) for i in range(d)] for j in range(d)]
    pivot_rows: List[Optional[int]] = []
    combos = [[Fraction(int(i == j)) for i in range(d)] for j in range(d)]
    rank = 0
    kernel: Optional[Tuple[int, ...]] = None
    for j in range(d):
        col, combo = cols[j], combos[j]
        for pj, pr in zip(range(j), pivot_rows):
            if pr is None:
                continue
            f = col[pr]
            if f:
                col[:] = [x - f * y for x, y in zip(col, cols[pj])]
                combo[:] = [x - f * y for x, y in zip(combo, combos[pj])]
        row = next((i for i, x in enumerate(col) if x), None)
        if row is not None:
            inv = col[row]
            col[:] = [x / inv for x in col]
            combo[:] = [x / inv for x in combo]
            pivot_rows.append(row)
            rank += 1
        else:
            pivot_rows.append(None)
            if kernel is None:
                lcm = 1
                for q in (f.denominator for f in combo):
                    lcm = lcm * q // _gcd(lcm, q)
                kernel = tuple(int(f * lcm) for f in combo)
    return rank, kernel


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# Folner windows

BOXES = "Boxes"
SUPPORT_BOXES = "SupportBoxes"


@dataclass(frozen=True)
class FolnerFamily:
    """Nested finite windows F_1 <= F_2 <= ... used as the escape/density scale."""

    ctx: GroupContext
    kind: str
    K: int

    def __post_init__(self):
        if self.K < 1:
            raise GroupError("K must be positive")
        if self.kind == BOXES and self.ctx.kind == FIN_SUPPORT:
            raise GroupError("Boxes need Int or IntVec")
        if self.kind == SUPPORT_BOXES and self.ctx.kind != FIN_SUPPORT:
            raise GroupError("SupportBoxes need FinSupportIntSeq")

    def window(self, k: int) -> List[Element]:
        """Exact enumeration of F_k in lexicographic order."""
        if not 1 <= k <= self.K:
            raise GroupError(f"window index {k} out of range 1..{self.K}")
        if self.ctx.kind == INT:
            return list(range(-k, k + 1))
        if self.ctx.kind == INT_VEC:
            return [tuple(v) for v in product(range(-k, k + 1), repeat=self.ctx.d)]
        if (2 * k + 1) ** k > 10 ** 7:
            raise GroupError(f"support-box window k={k} has (2k+1)^k elements; enumeration guard")
        return sorted(_strip(v) for v in product(range(-k, k + 1), repeat=k))

    def ratio(self, g: Element, k: int) -> Fraction:
        """Empirical Folner ratio |(g+F_k) n F_k| / |F_k|."""
        win = self.window(k)
        members = set(win)
        hits = sum(1 for h in win if self.ctx.add(g, h) in members)
        return Fraction(hits, len(win))


def canonical_family(ctx: GroupContext, K: int) -> FolnerFamily:
    kind = SUPPORT_BOXES if ctx.kind == FIN_SUPPORT else BOXES
    return FolnerFamily(ctx, kind, K)


__all__ = [
    "GroupContext", "GroupError", "Hom", "FolnerFamily", "Element",
    "integers", "int_vectors", "fin_support", "canonical_family",
    "INT", "INT_VEC", "FIN_SUPPORT",
    "SCALE", "MATRIX", "INTERLEAVE", "PRIME_SELECT", "EVEN_SELECT",
    "BOXES", "SUPPORT_BOXES",
]
