"""Clique enumeration facade: compiled kernel when available, pure fallback.

The compiled kernel covers the common desk-scale case (<= 64 vertices);
anything larger, or an interpreter without the built extension, falls back
to the pure-Python twin with identical semantics.
"""

from __future__ import annotations

from .core import MolecularSpace
from . import _cliquepy

try:  # pragma: no cover - depends on build environment
    from . import _cliquekernel
except ImportError:  # pragma: no cover
    _cliquekernel = None

DEFAULT_CLIQUE_BUDGET = 5_000_000


def backend_name(volume: int = 0) -> str:
    if _cliquekernel is not None and volume <= 64:
        return _cliquekernel.BACKEND
    return _cliquepy.BACKEND


def _kernel(n: int):
    if _cliquekernel is not None and n <= 64:
        return _cliquekernel
    return _cliquepy


def clique_counts(space: MolecularSpace, max_size: int = 0,
                  budget: int = DEFAULT_CLIQUE_BUDGET) -> tuple:
    """Counts of k-cliques for k = 1..s (trailing zeros trimmed)."""
    masks = space.masks
    return tuple(_kernel(len(masks)).count_cliques(list(masks), max_size, budget or 0))


def cliques_by_size(space: MolecularSpace, max_size: int = 0,
                    budget: int = DEFAULT_CLIQUE_BUDGET) -> list:
    """Cliques grouped by size, as tuples of ascending vertex indices."""
    masks = space.masks
    return _kernel(len(masks)).list_cliques(list(masks), max_size, budget or 0)


def clique_number(space: MolecularSpace, budget: int = DEFAULT_CLIQUE_BUDGET) -> int:
    return len(clique_counts(space, budget=budget))
