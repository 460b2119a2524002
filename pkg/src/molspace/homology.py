"""Integer homology of a molecular space via oriented cliques.

Chains are integer combinations of oriented k-cliques; the boundary is the
alternating face sum, and H_d is ker/im of consecutive boundary maps,
computed through Smith normal form (exact integers, torsion included).
The dimension convention follows clique sizes: H_d is built from chains on
(d+1)-cliques.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .cliques import DEFAULT_CLIQUE_BUDGET, cliques_by_size
from .core import MolecularSpace
from .errors import InvalidChain
from .snf import smith_normal_form


def _sort_parity(seq):
    """Sorted tuple plus permutation sign; sign 0 on repeated vertices."""
    items = list(seq)
    if len(set(items)) != len(items):
        return tuple(sorted(items)), 0
    sign = 1
    for i in range(len(items)):
        low = min(range(i, len(items)), key=items.__getitem__)
        if low != i:
            items[i], items[low] = items[low], items[i]
            sign = -sign
    return tuple(items), sign


@dataclass(frozen=True)
class OrientedClique:
    """A clique with the ascending vertex order as positive representative."""

    vertices: tuple

    @property
    def size(self) -> int:
        return len(self.vertices)

    def __str__(self):
        return "[" + ",".join(str(v) for v in self.vertices) + "]"


def oriented(seq) -> tuple:
    """Normalize an ordered clique: (canonical OrientedClique, sign)."""
    verts, sign = _sort_parity(seq)
    return OrientedClique(verts), sign


class Chain(dict):
    """Finitely supported integer combination of same-size oriented cliques."""

    def __init__(self, items: Mapping = ()):
        super().__init__()
        items = items.items() if isinstance(items, Mapping) else items
        for clique, coeff in items:
            if not isinstance(clique, OrientedClique):
                clique, sign = oriented(clique)
                coeff = coeff * sign
            if coeff:
                self[clique] = self.get(clique, 0) + coeff
                if not self[clique]:
                    del self[clique]
        sizes = {c.size for c in self}
        if len(sizes) > 1:
            raise InvalidChain(f"mixed clique sizes {sorted(sizes)}")

    @property
    def size(self) -> int:
        return next(iter(self)).size if self else 0

    def __add__(self, other: "Chain") -> "Chain":
        out = dict(self)
        for c, a in other.items():
            out[c] = out.get(c, 0) + a
        return Chain(out)

    def __neg__(self) -> "Chain":
        return Chain({c: -a for c, a in self.items()})

    def scaled(self, k: int) -> "Chain":
        return Chain({c: k * a for c, a in self.items()})

    def __str__(self):
        if not self:
            return "0"
        return " + ".join(f"{a}*{c}" for c, a in sorted(self.items(),
                                                        key=lambda x: x[0].vertices))


def _is_clique(space: MolecularSpace, verts) -> bool:
    idx = [space.index_of(v) for v in verts]
    return all(space.masks[i] >> j & 1 for k, i in enumerate(idx) for j in idx[k + 1:])


def boundary(space: MolecularSpace, chain: Chain) -> Chain:
    """Alternating face sum, extended linearly; boundary of vertices is 0."""
    out = {}
    for clique, coeff in chain.items():
        verts = clique.vertices
        if not _is_clique(space, verts):
            raise InvalidChain(f"{clique} is not a clique of the space")
        if len(verts) == 1:
            continue
        for k in range(len(verts)):
            face = OrientedClique(verts[:k] + verts[k + 1:])
            sign = 1 if k % 2 == 0 else -1
            out[face] = out.get(face, 0) + sign * coeff
    return Chain(out)


@dataclass(frozen=True)
class HGroup:
    betti: int
    torsion: tuple = ()

    def __str__(self):
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti > 1:
            parts.append(f"Z^{self.betti}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    @property
    def trivial(self) -> bool:
        return self.betti == 0 and not self.torsion


@dataclass(frozen=True)
class HomologyGroups:
    groups: tuple

    def group(self, d: int) -> HGroup:
        return self.groups[d] if 0 <= d < len(self.groups) else HGroup(0)

    def betti(self) -> tuple:
        return tuple(g.betti for g in self.groups)

    def __str__(self):
        if not self.groups:
            return "trivial"
        return ", ".join(f"H{d} = {g}" for d, g in enumerate(self.groups))

    def __eq__(self, other):
        if not isinstance(other, HomologyGroups):
            return NotImplemented
        depth = max(len(self.groups), len(other.groups))
        return all(self.group(d) == other.group(d) for d in range(depth))

    def __hash__(self):
        return hash(self.groups)


def point_homology() -> HomologyGroups:
    return HomologyGroups((HGroup(1),))


def _boundary_matrix(smaller, larger):
    """Matrix of the face map from size-k cliques to size-(k-1) cliques."""
    row_of = {c: i for i, c in enumerate(smaller)}
    rows = [[0] * len(larger) for _ in smaller]
    for j, clique in enumerate(larger):
        for k in range(len(clique)):
            face = clique[:k] + clique[k + 1:]
            sign = 1 if k % 2 == 0 else -1
            rows[row_of[face]][j] += sign
    return rows


def homology(space: MolecularSpace, max_dim: int = None,
             budget: int = DEFAULT_CLIQUE_BUDGET) -> HomologyGroups:
    """Homology groups H_0..H_D with integer torsion coefficients."""
    cap = 0 if max_dim is None else max_dim + 2
    by_size = cliques_by_size(space, max_size=cap, budget=budget)
    depth = len(by_size)
    if depth == 0:
        return HomologyGroups(())
    # invariant factors of each boundary map; map for size 1 is zero
    factors = {1: []}
    for k in range(2, depth + 1):
        factors[k] = smith_normal_form(_boundary_matrix(by_size[k - 2], by_size[k - 1]))
    top = depth if max_dim is None else min(depth, max_dim + 1)
    groups = []
    for k in range(1, top + 1):  # H_{k-1} from chains on k-cliques
        n_k = len(by_size[k - 1])
        rank_in = len(factors.get(k + 1, []))
        rank_out = len(factors[k])
        betti = n_k - rank_out - rank_in
        torsion = tuple(f for f in factors.get(k + 1, []) if f > 1)
        groups.append(HGroup(betti, torsion))
    while groups and groups[-1].trivial:
        groups.pop()
    return HomologyGroups(tuple(groups))


def betti(space: MolecularSpace, budget: int = DEFAULT_CLIQUE_BUDGET) -> tuple:
    return homology(space, budget=budget).betti()
