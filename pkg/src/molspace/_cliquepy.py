"""Pure-Python clique kernel: works for any vertex count (int bitsets).

Shares its contract with the compiled kernel in ``_cliquekernel``: cliques
are enumerated in ascending vertex-index order, each exactly once, and a
node budget guards pathological dense inputs.
"""

from __future__ import annotations

from .errors import BudgetExceeded

BACKEND = "python"


def count_cliques(masks, max_size=0, budget=0):
    """Count cliques of every size.

    Returns a list ``counts`` with ``counts[k-1]`` = number of k-cliques.
    ``max_size=0`` means unbounded; ``budget=0`` means no budget.
    """
    n = len(masks)
    counts = [0] * (n + 1)
    seen = 0

    def visit(cand, size):
        nonlocal seen
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            counts[size + 1] += 1
            seen += 1
            if budget and seen > budget:
                raise BudgetExceeded(f"clique budget {budget} exceeded")
            if not max_size or size + 1 < max_size:
                nxt = cand & masks[v]
                if nxt:
                    visit(nxt, size + 1)

    if n:
        visit((1 << n) - 1, 0)
    while counts and counts[-1] == 0:
        counts.pop()
    return counts[1:]


def list_cliques(masks, max_size=0, budget=0):
    """List cliques grouped by size.

    Returns ``by_size`` with ``by_size[k-1]`` = sorted list of k-cliques,
    each a tuple of ascending vertex indices.
    """
    n = len(masks)
    cap = max_size if max_size else n
    by_size = [[] for _ in range(cap)]
    seen = 0
    prefix = []

    def visit(cand, size):
        nonlocal seen
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            prefix.append(v)
            by_size[size].append(tuple(prefix))
            seen += 1
            if budget and seen > budget:
                raise BudgetExceeded(f"clique budget {budget} exceeded")
            if size + 1 < cap:
                nxt = cand & masks[v]
                if nxt:
                    visit(nxt, size + 1)
            prefix.pop()

    if n:
        visit((1 << n) - 1, 0)
    while by_size and not by_size[-1]:
        by_size.pop()
    return by_size
