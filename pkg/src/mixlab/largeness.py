"""Generators and testers for the sum-set largeness hierarchy.

Covers seed matrices for m-fold sum sets in G^d, finite-sums families,
evidence/refutation certificates for star-largeness, Folner densities,
admissible subgroup checks, and two combinatorial fixtures (sum-freeness and
polynomial-image searches). Everything is exact; certificates carry the raw
data needed to re-verify them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .groups import Element, FolnerFamily, GroupContext, GroupError

MAX_FS_GENERATORS = 20
MAX_SUM_FREE_VALUES = 10 ** 5
MAX_POLY_WINDOW = 10 ** 6

Alpha = Tuple[int, ...]
Value = Union[Element, Tuple[Element, ...]]


class SeedError(ValueError):
    pass


def colex_subsets(n: int, m: int) -> List[Alpha]:
    """All m-subsets of {1..n} in colex order (sorted by largest element last)."""
    return sorted(combinations(range(1, n + 1), m), key=lambda a: tuple(reversed(a)))


@dataclass(frozen=True)
class SeedMatrix:
    """m columns of length K per ambient component; generates m-fold sum sets in G^d.

    columns[j][t][k-1] is the k-th entry of summand column t for component j.
    """

    ctx: GroupContext
    m: int
    d: int
    columns: Tuple[Tuple[Tuple[Element, ...], ...], ...]
    name: str = ""

    @property
    def K(self) -> int:
        return len(self.columns[0][0])

    @staticmethod
    def build(ctx: GroupContext, columns, d: int = 1, name: str = "") -> "SeedMatrix":
        """columns: [t][k] entries when d == 1, else [j][t][k]."""
        if d == 1:
            columns = [columns]
        comps = tuple(
            tuple(tuple(ctx.element(e) for e in col) for col in comp) for comp in columns
        )
        if len(comps) != d:
            raise SeedError(f"expected {d} components, got {len(comps)}")
        m = len(comps[0])
        lengths = {len(col) for comp in comps for col in comp}
        if len(lengths) != 1:
            raise SeedError("all columns must share the horizon K")
        if any(len(comp) != m for comp in comps):
            raise SeedError("all components must have m columns")
        if lengths.pop() < m:
            raise SeedError("horizon K must be at least m (no sums otherwise)")
        return SeedMatrix(ctx, m, d, comps, name)

    def entry(self, j: int, t: int, k: int) -> Element:
        """1-based component j, column t, index k."""
        return self.columns[j - 1][t - 1][k - 1]

    def to_json(self) -> dict:
        cols = [[[self.ctx.element_to_json(e) for e in col] for col in comp] for comp in self.columns]
        return {"group": self.ctx.to_json(), "m": self.m, "d": self.d, "K": self.K,
                "name": self.name, "columns": cols if self.d > 1 else cols[0]}

    @staticmethod
    def from_json(data: dict) -> "SeedMatrix":
        ctx = GroupContext.from_json(data["group"])
        return SeedMatrix.build(ctx, data["columns"], data.get("d", 1), data.get("name", ""))


@dataclass(frozen=True)
class SeedViolation:
    check: str  # "non-degenerate" | "essentially-distinct"
    j: int
    t: int
    other: Optional[int]
    k: int

    def describe(self) -> str:
        if self.check == "non-degenerate":
            return f"component {self.j} column {self.t}: escape norm not strictly increasing at k={self.k}"
        return (f"columns {self.t}: components {self.j} and {self.other} "
                f"not growing apart at k={self.k}")


def validate_seed(seed: SeedMatrix) -> Tuple[bool, Optional[SeedViolation]]:
    """Finite proxy for the escape conditions: strictly increasing escape norms.

    Checks every column escapes, and for d >= 2 that distinct components grow
    apart within each summand column.
    """
    ctx = seed.ctx
    for j in range(1, seed.d + 1):
        for t in range(1, seed.m + 1):
            norms = [ctx.escape_norm(seed.entry(j, t, k)) for k in range(1, seed.K + 1)]
            for k in range(1, seed.K):
                if norms[k] <= norms[k - 1]:
                    return False, SeedViolation("non-degenerate", j, t, None, k + 1)
    for t in range(1, seed.m + 1):
        for j, j2 in combinations(range(1, seed.d + 1), 2):
            norms = [ctx.escape_norm(ctx.sub(seed.entry(j, t, k), seed.entry(j2, t, k)))
                     for k in range(1, seed.K + 1)]
            for k in range(1, seed.K):
                if norms[k] <= norms[k - 1]:
                    return False, SeedViolation("essentially-distinct", j, t, j2, k + 1)
    return True, None


def seed_sum(seed: SeedMatrix, j: int, alpha: Sequence[int]) -> Element:
    """Sum over t of the (k_t, t) entries of component j, alpha sorted ascending."""
    ks = sorted(alpha)
    if len(ks) != seed.m or len(set(ks)) != seed.m:
        raise SeedError(f"alpha must have {seed.m} distinct indices")
    if ks[0] < 1 or ks[-1] > seed.K:
        raise SeedError("alpha outside horizon")
    total = seed.ctx.zero()
    for t, k in enumerate(ks, start=1):
        total = seed.ctx.add(total, seed.entry(j, t, k))
    return total


def _tuple_value(seed: SeedMatrix, alpha: Alpha) -> Value:
    vals = tuple(seed_sum(seed, j, alpha) for j in range(1, seed.d + 1))
    return vals[0] if seed.d == 1 else vals


def enumerate_sigma(seed: SeedMatrix) -> List[Tuple[Alpha, Value]]:
    """All C(K, m) sums in colex order of alpha; duplicates kept."""
    return [(alpha, _tuple_value(seed, alpha)) for alpha in colex_subsets(seed.K, seed.m)]


@dataclass(frozen=True)
class FiniteSumsFamily:
    """Generators of a finite-sums (IP) set, with one generator list per component."""

    ctx: GroupContext
    d: int
    generators: Tuple[Tuple[Element, ...], ...]
    name: str = ""

    @property
    def K(self) -> int:
        return len(self.generators[0])

    @staticmethod
    def build(ctx: GroupContext, generators, d: int = 1, name: str = "") -> "FiniteSumsFamily":
        if d == 1:
            generators = [generators]
        gens = tuple(tuple(ctx.element(e) for e in comp) for comp in generators)
        if len(gens) != d or len({len(c) for c in gens}) != 1:
            raise SeedError("need d generator lists of equal length")
        if not gens[0]:
            raise SeedError("need at least one generator")
        return FiniteSumsFamily(ctx, d, gens, name)


def enumerate_fs(fam: FiniteSumsFamily) -> List[Tuple[Alpha, Value]]:
    """All 2^K - 1 finite sums in colex order (bitmask order) of alpha."""
    if fam.K > MAX_FS_GENERATORS:
        raise SeedError(f"K={fam.K} exceeds the 2^K enumeration guard ({MAX_FS_GENERATORS})")
    out = []
    for mask in range(1, 1 << fam.K):
        alpha = tuple(k + 1 for k in range(fam.K) if (mask >> k) & 1)
        vals = []
        for comp in fam.generators:
            total = fam.ctx.zero()
            for k in alpha:
                total = fam.ctx.add(total, comp[k - 1])
            vals.append(total)
        out.append((alpha, vals[0] if fam.d == 1 else tuple(vals)))
    return out


def sigma_from_ip(fam: FiniteSumsFamily, m: int) -> SeedMatrix:
    """Seed whose m columns all equal the generator list, so its sums are FS values."""
    if fam.K < m:
        raise SeedError("family horizon shorter than m")
    seed = SeedMatrix(fam.ctx, m, fam.d,
                      tuple(tuple(comp for _ in range(m)) for comp in fam.generators),
                      name=fam.name or "from-fs")
    fs_at_m = {v for a, v in enumerate_fs(fam) if len(a) == m}
    for _, v in enumerate_sigma(seed):
        if v not in fs_at_m:
            raise SeedError("constructed sum escapes the finite-sums values")
    return seed


# ---------------------------------------------------------------------------
# star-largeness certificates

EVIDENCE_SIGMA = "EvidenceSigmaStar"
REFUTES_SIGMA = "RefutesSigmaStar"
EVIDENCE_IP = "EvidenceIPStar"
REFUTES_IP = "RefutesIPStar"


@dataclass(frozen=True)
class LargenessCert:
    """Self-contained evidence or refutation for a star-largeness question.

    Evidence holds one witness (alpha, value) per battery seed; a refutation
    holds the full enumeration of one generated set disjoint from the target.
    """

    kind: str
    m: int
    d: int
    battery_size: int
    witnesses: Tuple[Tuple[str, Alpha, Value], ...] = ()
    refuting_seed: Optional[str] = None
    refuting_values: Tuple[Tuple[Alpha, Value], ...] = ()

    def reverify(self, pred: Callable[[Value], bool]) -> bool:
        if self.kind in (EVIDENCE_SIGMA, EVIDENCE_IP):
            return all(pred(v) for _, _, v in self.witnesses)
        return all(not pred(v) for _, v in self.refuting_values)

    def to_json(self, ctx: GroupContext) -> dict:
        def enc(v: Value):
            if self.d == 1:
                return ctx.element_to_json(v)
            return [ctx.element_to_json(x) for x in v]
        out = {"kind": self.kind, "m": self.m, "d": self.d, "battery_size": self.battery_size}
        if self.kind in (EVIDENCE_SIGMA, EVIDENCE_IP):
            out["witnesses"] = [{"seed": s, "alpha": list(a), "value": enc(v)}
                                for s, a, v in self.witnesses]
        else:
            out["refuting_seed"] = self.refuting_seed
            out["refuting_values"] = [{"alpha": list(a), "value": enc(v)}
                                      for a, v in self.refuting_values]
        return out


def sigma_star_evidence(pred: Callable[[Value], bool],
                        battery: Sequence[SeedMatrix]) -> LargenessCert:
    """Evidence that pred's set meets every battery sum set, or a refutation.

    Witnesses are colex-minimal; the first witness-free seed downgrades the
    certificate to a refutation carrying its full enumeration.
    """
    if not battery:
        raise SeedError("empty battery")
    m, d = battery[0].m, battery[0].d
    witnesses = []
    for idx, seed in enumerate(battery):
        ok, violation = validate_seed(seed)
        if not ok:
            raise SeedError(f"battery seed {seed.name or idx}: {violation.describe()}")
        values = enumerate_sigma(seed)
        hit = next(((a, v) for a, v in values if pred(v)), None)
        if hit is None:
            return LargenessCert(REFUTES_SIGMA, m, d, len(battery),
                                 refuting_seed=seed.name or str(idx),
                                 refuting_values=tuple(values))
        witnesses.append((seed.name or str(idx), hit[0], hit[1]))
    return LargenessCert(EVIDENCE_SIGMA, m, d, len(battery), witnesses=tuple(witnesses))


def ip_star_evidence(pred: Callable[[Value], bool],
                     battery: Sequence[FiniteSumsFamily]) -> LargenessCert:
    """Finite-sums analogue of sigma_star_evidence."""
    if not battery:
        raise SeedError("empty battery")
    d = battery[0].d
    witnesses = []
    for idx, fam in enumerate(battery):
        values = enumerate_fs(fam)
        hit = next(((a, v) for a, v in values if pred(v)), None)
        if hit is None:
            return LargenessCert(REFUTES_IP, 0, d, len(battery),
                                 refuting_seed=fam.name or str(idx),
                                 refuting_values=tuple(values))
        witnesses.append((fam.name or str(idx), hit[0], hit[1]))
    return LargenessCert(EVIDENCE_IP, 0, d, len(battery), witnesses=tuple(witnesses))


# ---------------------------------------------------------------------------
# density

TENDS_TO_ONE = "TendsToOne"
TENDS_TO_ZERO = "TendsToZero"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class DensityReport:
    family: str
    ratios: Tuple[Tuple[int, Fraction], ...]
    verdict: str
    delta: Fraction

    def to_json(self) -> dict:
        return {"family": self.family, "delta": str(self.delta), "verdict": self.verdict,
                "ratios": [{"k": k, "ratio": str(r)} for k, r in self.ratios]}


def folner_density(pred: Callable[[Element], bool], fam: FolnerFamily,
                   k_max: int, delta: Fraction = Fraction(1, 20)) -> DensityReport:
    """Exact window densities of pred's set, with a declared threshold verdict.

    The verdict looks only at the last three ratios against 1 - delta (or
    delta for the zero verdict); a limsup is not computable from a prefix.
    """
    if k_max > fam.K:
        raise GroupError("k_max beyond family horizon")
    ratios = []
    for k in range(1, k_max + 1):
        win = fam.window(k)
        ratios.append((k, Fraction(sum(1 for g in win if pred(g)), len(win))))
    tail = [r for _, r in ratios[-3:]]
    if len(tail) == 3 and all(r > 1 - delta for r in tail):
        verdict = TENDS_TO_ONE
    elif len(tail) == 3 and all(r < delta for r in tail):
        verdict = TENDS_TO_ZERO
    else:
        verdict = INCONCLUSIVE
    return DensityReport(f"{fam.kind}(K={fam.K}) on {fam.ctx.kind}", tuple(ratios), verdict, delta)


# ---------------------------------------------------------------------------
# admissible subgroups of G^d (lattice case)

@dataclass(frozen=True)
class AdmissibleCert:
    admissible: bool
    witnesses: Tuple[Tuple[str, Optional[int]], ...]  # functional -> generator index
    failing: Optional[str] = None

    def to_json(self) -> dict:
        return {"admissible": self.admissible, "failing": self.failing,
                "witnesses": [{"functional": f, "generator": i} for f, i in self.witnesses]}


def admissible_check(ctx: GroupContext, generators: Sequence[Sequence[Element]],
                     d: int) -> AdmissibleCert:
    """Admissibility of the subgroup of G^d spanned by the given d-tuples.

    For lattices an image subgroup is infinite iff nonzero, so each projection
    and pairwise projection difference just needs one generator with nonzero
    image.
    """
    if not generators:
        raise GroupError("admissible_check needs at least one generator")
    gens = [tuple(ctx.element(x) for x in g) for g in generators]
    if any(len(g) != d for g in gens):
        raise GroupError("generators must be d-tuples")
    zero = ctx.zero()
    functionals: List[Tuple[str, Callable]] = [(f"pi_{j + 1}", lambda g, j=j: g[j]) for j in range(d)]
    for j in range(d):
        for i in range(d):
            if i != j:
                functionals.append((f"pi_{j + 1}-pi_{i + 1}",
                                    lambda g, j=j, i=i: ctx.sub(g[j], g[i])))
    witnesses = []
    for name, func in functionals:
        hit = next((idx for idx, g in enumerate(gens) if func(g) != zero), None)
        witnesses.append((name, hit))
        if hit is None:
            return AdmissibleCert(False, tuple(witnesses), failing=name)
    return AdmissibleCert(True, tuple(witnesses))


# ---------------------------------------------------------------------------
# combinatorial fixtures

def sum_free_check(values: Sequence[int]) -> Tuple[bool, Optional[Tuple[int, int, int]]]:
    """True iff no a + b = c inside the set (a = b allowed); witness otherwise."""
    vals = sorted(set(int(v) for v in values))
    if len(vals) > MAX_SUM_FREE_VALUES:
        raise SeedError(f"more than {MAX_SUM_FREE_VALUES} values")
    if not vals:
        return True, None
    lo = vals[0]
    universe = 0
    for v in vals:
        universe |= 1 << (v - lo)
    for a in vals:
        # bit (b - lo) shifted by a lands at (a + b) - lo, so intersecting with
        # the universe finds every c = a + b that is itself a member
        shifted = universe << a if a >= 0 else universe >> (-a)
        hits = shifted & universe
        if hits:
            c = ((hits & -hits).bit_length() - 1) + lo
            return False, (a, c - a, c)
    return True, None


def polynomial_image(coeffs: Sequence[int], window: int) -> List[int]:
    """Sorted distinct values p(i) with |p(i)| <= window, coefficients ascending."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    deg = len(coeffs) - 1
    if deg < 1:
        raise SeedError("polynomial must be non-constant")
    lead, slack = abs(coeffs[-1]), sum(abs(c) for c in coeffs[:-1])
    bound = 1
    while lead * bound ** deg - slack * bound ** (deg - 1) <= window:
        bound *= 2
    vals = set()
    for i in range(-bound, bound + 1):
        v = 0
        for c in reversed(coeffs):
            v = v * i + c
        if abs(v) <= window:
            vals.add(v)
    return sorted(vals)


def polynomial_sigma2_search(coeffs: Sequence[int], window: int,
                             repeats: int = 3) -> Optional[Tuple[int, int, Tuple[int, ...]]]:
    """Search the polynomial image for a two-fold sum-set shadow.

    Looks for 0 < a < b and at least ``repeats`` image values n with n + a and
    n + b also image values (the pattern an infinite two-fold sum set inside
    the image would force). Returns (a, b, witnesses) or None.
    """
    coeffs = list(coeffs)
    deg = max((i for i, c in enumerate(coeffs) if c), default=0)
    if deg < 2:
        raise SeedError("degree must be at least 2")
    if window > MAX_POLY_WINDOW:
        raise SeedError(f"window above guard {MAX_POLY_WINDOW}")
    if repeats < 1:
        raise SeedError("repeats must be positive")
    values = polynomial_image(coeffs, window)
    if repeats == 1:
        if len(values) >= 3:
            v, w1, w2 = values[0], values[1], values[2]
            return (w1 - v, w2 - v, (v,))
        return None
    bases: Dict[int, List[int]] = {}
    for i, v in enumerate(values):
        for w in values[i + 1:]:
            bases.setdefault(w - v, []).append(v)
    pair_diffs: Dict[Tuple[int, int], List[int]] = {}
    for c, bl in bases.items():
        if len(bl) < repeats:
            continue
        for v1, v2 in combinations(bl, 2):
            pair_diffs.setdefault((v1, v2), []).append(c)
    best: Optional[Tuple[int, int, Tuple[int, ...]]] = None
    for diffs in pair_diffs.values():
        if len(diffs) < 2:
            continue
        for a, b in combinations(sorted(diffs), 2):
            common = sorted(set(bases[a]) & set(bases[b]))
            if len(common) >= repeats:
                cand = (a, b, tuple(common[:repeats]))
                if best is None or cand < best:
                    best = cand
    return best


__all__ = [
    "SeedMatrix", "SeedError", "SeedViolation", "FiniteSumsFamily", "LargenessCert",
    "DensityReport", "AdmissibleCert", "colex_subsets",
    "validate_seed", "seed_sum", "enumerate_sigma", "enumerate_fs", "sigma_from_ip",
    "sigma_star_evidence", "ip_star_evidence", "folner_density", "admissible_check",
    "sum_free_check", "polynomial_image", "polynomial_sigma2_search",
    "EVIDENCE_SIGMA", "REFUTES_SIGMA", "EVIDENCE_IP", "REFUTES_IP",
    "TENDS_TO_ONE", "TENDS_TO_ZERO", "INCONCLUSIVE",
]
