"""Shift systems with exactly computable cylinder measures.

Three system kinds: Bernoulli products over any supported group, the
Ledrappier two-dimensional GF(2) system, and actions pulled back through a
homomorphism. The shift convention is (T_g x)(h) = x(h - g), so the pattern
of T_g A constrains coordinate s + g where A constrains s; this is the
direction pinned down by the exact values of the three-fold correlations
(measure invariance holds either way).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .gf2 import gf2_left_nullspace
from .groups import Element, GroupContext, GroupError, Hom, int_vectors

# Polynomials below are exponent sets of GF(2) polynomials in one variable t;
# a monomial u^a v^b evaluates to t^a (1+t)^b, whose exponents are a + j for
# every submask j of b (Lucas). Guard against patterns whose expansion is
# astronomically wide.
MAX_TERMS_PER_MONOMIAL = 1 << 20


class PatternError(ValueError):
    """Raised for ill-formed cylinder patterns."""


@dataclass(frozen=True)
class CylinderPattern:
    """Finitely many coordinate constraints; the empty pattern is the full space."""

    constraints: Tuple[Tuple[Element, int], ...]

    @staticmethod
    def of(ctx: GroupContext, items: Dict | Iterable[Tuple[Element, int]] | None = None) -> "CylinderPattern":
        pairs = list(items.items() if isinstance(items, dict) else (items or []))
        seen: Dict[Element, int] = {}
        for coord, sym in pairs:
            coord = ctx.element(coord)
            sym = int(sym)
            if coord in seen and seen[coord] != sym:
                raise PatternError(f"conflicting symbols at coordinate {coord!r}")
            seen[coord] = sym
        return CylinderPattern(tuple(sorted(seen.items())))

    def is_full_space(self) -> bool:
        return not self.constraints

    def as_dict(self) -> Dict[Element, int]:
        return dict(self.constraints)

    def to_json(self, ctx: GroupContext) -> dict:
        return {"constraints": [{"coord": ctx.element_to_json(c), "sym": s} for c, s in self.constraints]}

    @staticmethod
    def from_json(ctx: GroupContext, data: dict) -> "CylinderPattern":
        return CylinderPattern.of(ctx, [(ctx.element_from_json(c["coord"]), c["sym"]) for c in data["constraints"]])


def _merge(patterns: Iterable[CylinderPattern]) -> Optional[Dict[Element, int]]:
    # None signals a symbol clash, i.e. an empty intersection.
    merged: Dict[Element, int] = {}
    for p in patterns:
        for coord, sym in p.constraints:
            if merged.get(coord, sym) != sym:
                return None
            merged[coord] = sym
    return merged


class System:
    """Common correlation machinery; subclasses provide measure and shift."""

    group: GroupContext

    def measure(self, pattern: CylinderPattern) -> Fraction:
        raise NotImplementedError

    def _constraint_measure(self, constraints: Dict[Element, int]) -> Fraction:
        raise NotImplementedError

    def _shift_of(self, g: Element) -> Element:
        """Coordinate translation applied by T_g, in the underlying shift space."""
        raise NotImplementedError

    def pattern(self, items=None) -> CylinderPattern:
        return CylinderPattern.of(self._space_group(), items)

    def _space_group(self) -> GroupContext:
        return self.group

    def translate(self, g: Element, pattern: CylinderPattern) -> CylinderPattern:
        """Pattern of T_g A: each constrained coordinate s moves to s + shift(g)."""
        self.group.check(g)
        space = self._space_group()
        shift = self._shift_of(g)
        return CylinderPattern(tuple(sorted((space.add(c, shift), s) for c, s in pattern.constraints)))

    def correlation(self, terms: Sequence[Tuple[Element, CylinderPattern]]) -> Fraction:
        """Exact measure of the intersection of T_g A over the given terms."""
        if not terms:
            raise GroupError("correlation needs at least one term")
        merged = _merge([self.translate(g, a) for g, a in terms])
        if merged is None:
            return Fraction(0)
        return self._constraint_measure(merged)

    def mixing_gap(self, terms: Sequence[Tuple[Element, CylinderPattern]]) -> Fraction:
        prod = Fraction(1)
        for _, a in terms:
            prod *= self.measure(a)
        return abs(self.correlation(terms) - prod)

    def mixing_evidence(self, a0: CylinderPattern, a1: CylinderPattern,
                        gs: Sequence[Element], eps: Fraction) -> "MixingEvidence":
        if len(set(gs)) != len(gs):
            raise GroupError("mixing_evidence needs pairwise distinct g")
        zero = self.group.zero()
        rows = [(g, self.mixing_gap([(zero, a0), (g, a1)])) for g in gs]
        violators = [(g, gap) for g, gap in rows if gap >= eps]
        worst = max(violators, key=lambda r: (self.group.escape_norm(r[0]), repr(r[0])), default=None)
        return MixingEvidence(tuple(rows), eps, len(rows) - len(violators), worst)


@dataclass(frozen=True)
class MixingEvidence:
    rows: Tuple[Tuple[Element, Fraction], ...]
    eps: Fraction
    within: int
    worst_violator: Optional[Tuple[Element, Fraction]]

    @property
    def all_within(self) -> bool:
        return self.within == len(self.rows)


class BernoulliShift(System):
    """Product measure shift over ctx with exact rational symbol weights."""

    def __init__(self, ctx: GroupContext, probs: Sequence[Fraction]):
        probs = tuple(Fraction(p) for p in probs)
        if any(p < 0 for p in probs) or sum(probs) != 1:
            raise PatternError("symbol weights must be nonnegative rationals summing to 1")
        self.group = ctx
        self.probs = probs

    def _shift_of(self, g: Element) -> Element:
        return g

    def _constraint_measure(self, constraints: Dict[Element, int]) -> Fraction:
        out = Fraction(1)
        for sym in constraints.values():
            if not 0 <= sym < len(self.probs):
                raise PatternError(f"symbol {sym} outside alphabet of size {len(self.probs)}")
            out *= self.probs[sym]
        return out

    def measure(self, pattern: CylinderPattern) -> Fraction:
        return self._constraint_measure(pattern.as_dict())


def fair_coin(ctx: GroupContext) -> BernoulliShift:
    return BernoulliShift(ctx, (Fraction(1, 2), Fraction(1, 2)))


def _monomial_exponents(a: int, b: int) -> frozenset:
    """Exponent set of t^a (1+t)^b over GF(2)."""
    bits = [i for i in range(b.bit_length()) if (b >> i) & 1]
    if 1 << len(bits) > MAX_TERMS_PER_MONOMIAL:
        raise PatternError(f"coordinate ({a},{b}) expands to more than {MAX_TERMS_PER_MONOMIAL} terms")
    exps = set()
    for mask in range(1 << len(bits)):
        j = 0
        for i, bit in enumerate(bits):
            if (mask >> i) & 1:
                j += 1 << bit
        exps.add(a + j)
    return frozenset(exps)


def dependency_space(coords: Sequence[Tuple[int, int]]) -> Tuple[int, List[int]]:
    """Rank and forced-parity basis for a set of Ledrappier coordinates.

    Returns (rank, basis) where each basis entry is a bitmask over the
    coordinate list marking a GF(2) dependency forced by the defining
    relation x(n,m) + x(n+1,m) + x(n,m+1) = 0. Negative exponents are
    cleared by a common monomial unit, which does not change membership in
    the relation ideal.
    """
    amin = min(a for a, _ in coords)
    bmin = min(b for _, b in coords)
    polys = [_monomial_exponents(a - amin, b - bmin) for a, b in coords]
    index = {e: i for i, e in enumerate(sorted(set().union(*polys)))}
    rows = [sum(1 << index[e] for e in poly) for poly in polys]
    return gf2_left_nullspace(rows)


class LedrappierSystem(System):
    """Haar measure on the GF(2) subshift x(n,m) + x(n+1,m) + x(n,m+1) = 0 on Z^2."""

    def __init__(self):
        self.group = int_vectors(2, label="ledrappier")

    def _shift_of(self, g: Element) -> Element:
        return g

    def _constraint_measure(self, constraints: Dict[Element, int]) -> Fraction:
        if not constraints:
            return Fraction(1)
        coords = sorted(constraints)
        rank, null = dependency_space(coords)
        for comb in null:
            parity = 0
            for i, c in enumerate(coords):
                if (comb >> i) & 1:
                    parity ^= constraints[c] & 1
            if parity:
                return Fraction(0)
        return Fraction(1, 2 ** rank)

    def measure(self, pattern: CylinderPattern) -> Fraction:
        for _, sym in pattern.constraints:
            if sym not in (0, 1):
                raise PatternError("Ledrappier patterns are binary")
        return self._constraint_measure(pattern.as_dict())


class PulledBackAction(System):
    """Action T'_g = T_{phi(g)} of phi's source group on the base system."""

    def __init__(self, base: System, phi: Hom):
        self.base = base
        self.phi = phi
        self.group = phi.source

    def _space_group(self) -> GroupContext:
        return self.base._space_group()

    def _shift_of(self, g: Element) -> Element:
        return self.base._shift_of(self.phi.apply(g))

    def _constraint_measure(self, constraints: Dict[Element, int]) -> Fraction:
        return self.base._constraint_measure(constraints)

    def measure(self, pattern: CylinderPattern) -> Fraction:
        return self.base.measure(pattern)


__all__ = [
    "CylinderPattern", "PatternError", "System", "MixingEvidence",
    "BernoulliShift", "LedrappierSystem", "PulledBackAction",
    "fair_coin", "dependency_space",
]
