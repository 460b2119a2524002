"""Canonical forms and exact isomorphism for small graphs.

Individualization-refinement canonical labeling: iterated color refinement
by neighbor color multisets, then backtracking over the members of the
first non-singleton cell, keeping the lexicographically smallest adjacency
matrix.  Exact at desk scale (the library memoizes verdicts on these keys).
"""

from __future__ import annotations

from .core import MolecularSpace, _mask_bits


def _refine(masks, colors):
    n = len(masks)
    while True:
        sigs = []
        for i in range(n):
            neigh = sorted(colors[j] for j in _mask_bits(masks[i]))
            sigs.append((colors[i], tuple(neigh)))
        order = {sig: rank for rank, sig in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _cells(colors):
    by_color = {}
    for i, c in enumerate(colors):
        by_color.setdefault(c, []).append(i)
    return [by_color[c] for c in sorted(by_color)]


def _key_for_order(masks, order):
    pos = {v: p for p, v in enumerate(order)}
    n = len(order)
    bits = 0
    at = 0
    for a in range(n):
        ma = masks[order[a]]
        for b in range(a + 1, n):
            if ma >> order[b] & 1:
                bits |= 1 << at
            at += 1
    return bits


def canonical_permutation(space: MolecularSpace) -> tuple:
    """Vertex-index order realizing the canonical adjacency matrix."""
    masks = space.masks
    n = len(masks)
    if n == 0:
        return ()
    colors = _refine(masks, [0] * n)
    best = [None, None]

    def descend(colors):
        cells = _cells(colors)
        pivot = next((c for c in cells if len(c) > 1), None)
        if pivot is None:
            order = [c[0] for c in cells]
            key = _key_for_order(masks, order)
            if best[0] is None or key < best[0]:
                best[0] = key
                best[1] = order
            return
        fresh = max(colors) + 1
        for v in pivot:
            branched = list(colors)
            branched[v] = fresh
            descend(_refine(masks, branched))

    descend(colors)
    return tuple(best[1])


def canonical_key(space: MolecularSpace):
    """Hashable canonical form; equal keys iff isomorphic graphs."""
    cached = space.__dict__.get("_canonical_key")
    if cached is None:
        order = canonical_permutation(space)
        cached = (space.volume, _key_for_order(space.masks, order))
        space.__dict__["_canonical_key"] = cached
    return cached


def is_isomorphic(a: MolecularSpace, b: MolecularSpace) -> bool:
    if a.volume != b.volume or a.weight != b.weight:
        return False
    if sorted(m.bit_count() for m in a.masks) != sorted(m.bit_count() for m in b.masks):
        return False
    return canonical_key(a) == canonical_key(b)


def isomorphism(a: MolecularSpace, b: MolecularSpace):
    """A vertex bijection a -> b when isomorphic, else None."""
    if not is_isomorphic(a, b):
        return None
    pa = canonical_permutation(a)
    pb = canonical_permutation(b)
    return {a.vertices[pa[i]]: b.vertices[pb[i]] for i in range(a.volume)}
