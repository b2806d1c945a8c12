"""Exact linear algebra: integer invariant factors and rational ranks.

Matrices are sparse: a list of rows, each a dict {column: value}.  Integer
elimination takes unit pivots first (cheap and fill-light on boundary
matrices) and finishes the remaining block with a dense Smith normal form.
"""
from __future__ import annotations

from fractions import Fraction


def _clean(row: dict) -> dict:
    return {c: v for c, v in row.items() if v}


def _unit_pivot_pass(rows: list[dict]) -> tuple[list[dict], int]:
    """Eliminate unit pivots; return the remaining rows and the pivot count."""
    rows = [dict(r) for r in rows if r]
    units = 0
    while True:
        # column -> rows containing it
        where: dict[int, list[int]] = {}
        for idx, r in enumerate(rows):
            for c in r:
                where.setdefault(c, []).append(idx)
        best = None
        for idx, r in enumerate(rows):
            for c, v in r.items():
                if v in (1, -1):
                    cost = (len(where[c]) - 1) * (len(r) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, idx, c)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            return rows, units
        _, pr, pc = best
        prow = rows[pr]
        pv = prow[pc]
        for idx in where[pc]:
            if idx == pr:
                continue
            r = rows[idx]
            factor = r[pc] * pv  # pv is +-1, so this divides exactly
            for c, v in prow.items():
                nv = r.get(c, 0) - factor * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        # the pivot column is now zero outside the pivot row; column operations
        # clear the rest of the pivot row without touching other rows
        rows = [r for idx, r in enumerate(rows) if idx != pr and r]
        units += 1


def _dense_smith(mat: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a dense integer matrix."""
    a = [row[:] for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        # smallest nonzero entry in the remaining block
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    for j in range(t, n):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    for i in range(t, m):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        done = False
            if not done:
                # move the smallest nonzero entry of row/column t to the corner
                best = (abs(a[t][t]), t, t)
                for i in range(t + 1, m):
                    if a[i][t] and abs(a[i][t]) < best[0]:
                        best = (abs(a[i][t]), i, t)
                for j in range(t + 1, n):
                    if a[t][j] and abs(a[t][j]) < best[0]:
                        best = (abs(a[t][j]), t, j)
                _, i, j = best
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            # divisibility: every remaining entry must be a multiple of the corner
            p = a[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is not None:
                i, _ = bad
                for j in range(t, n):
                    a[t][j] += a[i][j]
                done = False
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def invariant_factors(rows: list[dict]) -> list[int]:
    """Nonzero invariant factors (with multiplicity) of a sparse integer matrix."""
    rest, units = _unit_pivot_pass(rows)
    rest = [r for r in rest if r]
    factors = [1] * units
    if rest:
        cols = sorted({c for r in rest for c in r})
        index = {c: k for k, c in enumerate(cols)}
        dense = [[0] * len(cols) for _ in rest]
        for i, r in enumerate(rest):
            for c, v in r.items():
                dense[i][index[c]] = v
        factors.extend(_dense_smith(dense))
    return sorted(factors)


def rank_rational(rows: list[dict]) -> int:
    """Rank over the rationals of a sparse matrix with int or Fraction entries."""
    rows = [_clean({c: Fraction(v) for c, v in r.items()}) for r in rows]
    rows = [r for r in rows if r]
    rank = 0
    pivots: dict[int, dict] = {}
    for r in rows:
        r = dict(r)
        while r:
            c = min(r)
            if c not in pivots:
                inv = 1 / r[c]
                pivots[c] = {k: v * inv for k, v in r.items()}
                rank += 1
                break
            p = pivots[c]
            f = r[c]
            for k, v in p.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return rank


def dense_to_sparse(mat) -> list[dict]:
    return [{j: v for j, v in enumerate(row) if v} for row in mat]


def matmul_sparse(a: list[dict], b: list[dict]) -> list[dict]:
    """Product of sparse matrices given as row dicts (a is m x k, b is k x n)."""
    out = []
    for r in a:
        acc: dict = {}
        for k, v in r.items():
            for j, w in b[k].items():
                acc[j] = acc.get(j, 0) + v * w
        out.append(_clean(acc))
    return out
