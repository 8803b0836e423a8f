"""GF(2) linear algebra on int bitsets."""

from __future__ import annotations

from typing import List, Tuple


def gf2_rank(rows: List[int]) -> int:
    """Rank of a list of bitmask row vectors over GF(2)."""
    rank = 0
    pivots: List[int] = []
    for row in rows:
        v = row
        for p in pivots:
            if v & (p & -p):
                v ^= p
        if v:
            pivots.append(v)
            rank += 1
    return rank


def gf2_left_nullspace(rows: List[int]) -> Tuple[int, List[int]]:
    """Rank plus a basis of {c : xor of rows[i] over set bits of c == 0}.

    Basis vectors are bitmasks over row indices.
    """
    pivots: List[Tuple[int, int]] = []
    null: List[int] = []
    rank = 0
    for i, row in enumerate(rows):
        v, comb = row, 1 << i
        for pv, pc in pivots:
            if v & (pv & -pv):
                v ^= pv
                comb ^= pc
        if v:
            pivots.append((v, comb))
            rank += 1
        else:
            null.append(comb)
    return rank, null


def gf2_in_rowspan(vec: int, rows: List[int]) -> bool:
    return gf2_rank(rows + [vec]) == gf2_rank(rows)


__all__ = ["gf2_rank", "gf2_left_nullspace", "gf2_in_rowspan"]
