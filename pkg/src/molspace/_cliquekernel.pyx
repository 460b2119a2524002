# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled clique kernel for graphs with at most 64 vertices.

Same enumeration order and budget semantics as ``_cliquepy``; the hot
recursion runs on C uint64 bitsets.
"""

from libc.stdint cimport uint64_t, int64_t

from .errors import BudgetExceeded

BACKEND = "compiled"

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef int _count_visit(uint64_t cand, int size, uint64_t *masks, int max_size,
                      int64_t budget, int64_t *seen, int64_t *counts) nogil:
    cdef uint64_t low, nxt
    cdef int v
    while cand:
        low = cand & (~cand + 1)
        v = __builtin_ctzll(low)
        cand ^= low
        counts[size + 1] += 1
        seen[0] += 1
        if budget and seen[0] > budget:
            return -1
        if max_size == 0 or size + 1 < max_size:
            nxt = cand & masks[v]
            if nxt:
                if _count_visit(nxt, size + 1, masks, max_size, budget, seen, counts) < 0:
                    return -1
    return 0


def count_cliques(masks, int max_size=0, long long budget=0):
    cdef int n = len(masks)
    if n > 64:
        raise ValueError("compiled kernel handles at most 64 vertices")
    cdef uint64_t cmasks[64]
    cdef int64_t counts[65]
    cdef int64_t seen = 0
    cdef int i
    for i in range(n):
        cmasks[i] = masks[i]
    for i in range(n + 1):
        counts[i] = 0
    cdef uint64_t full = 0
    if n == 64:
        full = <uint64_t>(-1)
    elif n:
        full = (<uint64_t>1 << n) - 1
    cdef int rc = 0
    if n:
        with nogil:
            rc = _count_visit(full, 0, cmasks, max_size, budget, &seen, counts)
    if rc < 0:
        raise BudgetExceeded(f"clique budget {budget} exceeded")
    out = [counts[i] for i in range(1, n + 1)]
    while out and out[len(out) - 1] == 0:
        out.pop()
    return out


def list_cliques(masks, int max_size=0, long long budget=0):
    cdef int n = len(masks)
    if n > 64:
        raise ValueError("compiled kernel handles at most 64 vertices")
    cdef uint64_t cmasks[64]
    cdef int prefix[64]
    cdef int i
    for i in range(n):
        cmasks[i] = masks[i]
    cdef int cap = max_size if max_size else n
    by_size = [[] for _ in range(cap)]
    cdef int64_t seen = 0
    cdef list stack_out

    if n == 0:
        return []

    cdef uint64_t full = 0
    if n == 64:
        full = <uint64_t>(-1)
    else:
        full = (<uint64_t>1 << n) - 1

    seen = _list_visit(full, 0, cmasks, cap, budget, prefix, by_size, seen)
    if seen < 0:
        raise BudgetExceeded(f"clique budget {budget} exceeded")
    while by_size and not by_size[len(by_size) - 1]:
        by_size.pop()
    return by_size


cdef int64_t _list_visit(uint64_t cand, int size, uint64_t *masks, int cap,
                         int64_t budget, int *prefix, list by_size, int64_t seen):
    cdef uint64_t low, nxt
    cdef int v, k
    while cand:
        low = cand & (~cand + 1)
        v = __builtin_ctzll(low)
        cand ^= low
        prefix[size] = v
        by_size[size].append(tuple([prefix[k] for k in range(size + 1)]))
        seen += 1
        if budget and seen > budget:
            return -1
        if size + 1 < cap:
            nxt = cand & masks[v]
            if nxt:
                seen = _list_visit(nxt, size + 1, masks, cap, budget, prefix, by_size, seen)
                if seen < 0:
                    return -1
    return seen
