"""f-vectors, the Euler characteristic and its identities, tiling solver.

The f-vector of a space counts its k-cliques; the Euler characteristic is
the alternating sum F(G) = sum((-1)^(k+1) n_k).  The local formula
recovers F(G) from the f-vectors of vertex rims alone and must agree with
the direct count exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable, Sequence

from .cliques import DEFAULT_CLIQUE_BUDGET, clique_counts
from .core import MolecularSpace
from .errors import InternalInvariantViolation, InvalidArgument


class FVector(tuple):
    """Counts (n_1, n_2, ..., n_s) of k-cliques; n_0 = 1 by convention."""

    @property
    def n0(self) -> int:
        return 1

    def n(self, k: int) -> int:
        if k == 0:
            return 1
        return self[k - 1] if k <= len(self) else 0


def f_vector(space: MolecularSpace, budget: int = DEFAULT_CLIQUE_BUDGET) -> FVector:
    return FVector(clique_counts(space, budget=budget))


def euler(space: MolecularSpace, budget: int = DEFAULT_CLIQUE_BUDGET) -> int:
    return euler_of_fvector(f_vector(space, budget))


def euler_of_fvector(fv: Sequence[int]) -> int:
    return sum(n if k % 2 == 0 else -n for k, n in enumerate(fv))


def rim_log_term(rim_fv: Sequence[int]) -> Fraction:
    """L(O(v)) = sum((-1)^(k+1) m_k / (k+1)) over the rim f-vector."""
    total = Fraction(0)
    for k, m in enumerate(rim_fv, start=1):
        total += Fraction(m, k + 1) * (1 if k % 2 == 1 else -1)
    return total


def euler_local(space: MolecularSpace, budget: int = DEFAULT_CLIQUE_BUDGET) -> int:
    """Euler characteristic from rim f-vectors: F(G) = t - sum L(O(v_i))."""
    total = Fraction(space.volume)
    for v in space.vertices:
        rim_fv = clique_counts(space.rim(v).space, budget=budget)
        total -= rim_log_term(rim_fv)
    if total.denominator != 1:
        raise InternalInvariantViolation(
            f"local Euler formula produced non-integer {total}")
    return int(total)


def euler_join_identity(fg: int, fh: int) -> int:
    """F(G (+) H) = F(G) + F(H) - F(G) * F(H)."""
    return fg + fh - fg * fh


def euler_partite(sizes: Iterable[int]) -> int:
    """F of the complete multipartite space: 1 - prod(1 - n_k)."""
    sizes = tuple(sizes)
    if not sizes or any(n < 1 for n in sizes):
        raise InvalidArgument("part sizes must be positive")
    return 1 - prod(1 - n for n in sizes)


@dataclass(frozen=True)
class TileClass:
    sides: int
    count: int
    count_free: bool = False  # any count >= `count` solves the equation

    def __str__(self):
        if self.count_free:
            return f"(m={self.sides}, t>={self.count})"
        return f"(m={self.sides}, t={self.count})"


@dataclass(frozen=True)
class TilingSolution:
    tiles: tuple

    @property
    def total_tiles(self) -> int:
        return sum(t.count for t in self.tiles)

    def __str__(self):
        return " + ".join(str(t) for t in self.tiles)


def tiling_solutions(chi: int, min_volume: int, max_types: int = 1,
                     m_range: Iterable[int] = range(4, 13),
                     max_total: int = 64) -> tuple:
    """Integer solutions of t(1 - m/6) = chi (and the two-type variant).

    Homogeneous tilings of a closed surface by m-gons, treated purely
    combinatorially: each tile touches m tiles.  Solutions with fewer than
    ``min_volume`` tiles are rejected (too few points to build the surface).
    Families with a free tile count are reported once with ``count_free``.
    """
    if min_volume < 1:
        raise InvalidArgument("min_volume must be positive")
    if max_types not in (1, 2):
        raise InvalidArgument("max_types must be 1 or 2")
    ms = sorted(set(m_range))
    if any(m < 4 for m in ms):
        raise InvalidArgument("tile side counts start at 4")
    out = []
    for m in ms:
        if m == 6:
            if chi == 0:
                out.append(TilingSolution((TileClass(6, min_volume, True),)))
            continue
        num = 6 * chi
        den = 6 - m
        if num % den:
            continue
        t = num // den
        if t >= 1 and t >= min_volume and t <= max_total:
            out.append(TilingSolution((TileClass(m, t),)))
    if max_types == 2:
        for i, m1 in enumerate(ms):
            for m2 in ms[i + 1:]:
                out.extend(_two_type(chi, min_volume, m1, m2, max_total))
    return tuple(out)


def _two_type(chi, min_volume, m1, m2, max_total):
    # t1*(6-m1) + t2*(6-m2) = 6*chi with t1, t2 >= 1
    found = []
    for t1 in range(1, max_total):
        rhs = 6 * chi - t1 * (6 - m1)
        if m2 == 6:
            if rhs == 0:
                t2 = max(1, min_volume - t1)
                found.append(TilingSolution(
                    (TileClass(m1, t1), TileClass(6, t2, True))))
            continue
        if rhs % (6 - m2):
            continue
        t2 = rhs // (6 - m2)
        if t2 >= 1 and t1 + t2 >= min_volume and t1 + t2 <= max_total:
            found.append(TilingSolution((TileClass(m1, t1), TileClass(m2, t2))))
    return found
