"""Smith normal form over arbitrary-precision integers.

Naive pivoting with magnitude-minimizing pivot selection; fine for the
desk-scale boundary matrices this library produces.
"""

from __future__ import annotations

from math import gcd


def smith_normal_form(rows):
    """Invariant factors (positive, divisibility-ordered) of an int matrix.

    ``rows`` is a list of equal-length lists; the input is not modified.
    Returns the non-zero diagonal of the Smith form (its length is the
    rank of the matrix).
    """
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    factors = []
    top = 0
    while top < m and top < n:
        pivot = _smallest_nonzero(a, top)
        if pivot is None:
            break
        pi, pj = pivot
        a[top], a[pi] = a[pi], a[top]
        for r in a:
            r[top], r[pj] = r[pj], r[top]
        while True:
            if _reduce_column(a, top):
                continue
            if _reduce_row(a, top):
                continue
            stray = _stray_nondivisible(a, top)
            if stray is None:
                break
            # fold the offending row into the pivot row and restart
            for j in range(top, n):
                a[top][j] += a[stray][j]
        d = abs(a[top][top])
        factors.append(d)
        top += 1
    # enforce the divisibility chain d1 | d2 | ...
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            di, dj = factors[i], factors[j]
            if dj % di:
                g = gcd(di, dj)
                factors[i], factors[j] = g, di * dj // g
    return [f for f in factors if f != 0]


def integer_rank(rows) -> int:
    return len(smith_normal_form(rows))


def _smallest_nonzero(a, top):
    best = None
    best_val = None
    for i in range(top, len(a)):
        row = a[i]
        for j in range(top, len(row)):
            v = abs(row[j])
            if v and (best_val is None or v < best_val):
                best, best_val = (i, j), v
                if v == 1:
                    return best
    return best


def _reduce_column(a, top) -> bool:
    changed = False
    p = a[top][top]
    for i in range(top + 1, len(a)):
        if a[i][top]:
            q = a[i][top] // p
            if q:
                for j in range(top, len(a[i])):
                    a[i][j] -= q * a[top][j]
                changed = True
            if a[i][top]:
                a[top], a[i] = a[i], a[top]
                return True
    return changed and _has_nonzero_below(a, top)


def _reduce_row(a, top) -> bool:
    p = a[top][top]
    row = a[top]
    n = len(row)
    for j in range(top + 1, n):
        if row[j]:
            q = row[j] // p
            if q:
                for i in range(top, len(a)):
                    a[i][j] -= q * a[i][top]
            if a[top][j]:
                for i in range(top, len(a)):
                    a[i][top], a[i][j] = a[i][j], a[i][top]
                return True
    return False


def _has_nonzero_below(a, top) -> bool:
    return any(a[i][top] for i in range(top + 1, len(a)))


def _stray_nondivisible(a, top):
    p = a[top][top]
    for i in range(top + 1, len(a)):
        if any(v % p for v in a[i][top:]):
            return i
    return None
