"""Classical Hochschild cochains of a commutative algebra with coefficients in
a symmetric bimodule, written directly from the bar differential

    (d phi)(a_1, ..., a_{m+1}) = a_1 phi(a_2, ..., a_{m+1})
        + sum_i (-1)^i phi(..., a_i a_{i+1}, ...)
        + (-1)^{m+1} phi(a_1, ..., a_m) a_{m+1}.

Deliberately independent of the simplicial machinery: it serves as the oracle
for the order-one cochain complex.  Matrices use the same coordinate
convention (rows are output coordinates, flat index I * dim M + k).
"""
from __future__ import annotations

import itertools
from fractions import Fraction


def _product(structure, u: list, v: list) -> list:
    d = len(structure)
    out = [Fraction(0)] * d
    for i in range(d):
        if u[i]:
            for j in range(d):
                if v[j]:
                    for k in range(d):
                        out[k] += u[i] * v[j] * Fraction(structure[i][j][k])
    return out


def _act(action, a: list, y: list) -> list:
    e = len(y)
    out = [Fraction(0)] * e
    for i, x in enumerate(a):
        for k in range(e):
            if x and y[k]:
                for k2 in range(e):
                    out[k2] += x * y[k] * Fraction(action[i][k][k2])
    return out


def bar_differential(structure, action, m: int) -> list[list[Fraction]]:
    """Dense matrix of d : C^m -> C^{m+1}; action defaults to the regular module."""
    d = len(structure)
    e = len(action)
    in_basis = list(itertools.product(range(d), repeat=m))
    pos = {I: r for r, I in enumerate(in_basis)}
    mat = [[Fraction(0)] * (len(in_basis) * e) for _ in range(d ** (m + 1) * e)]
    unitvec = lambda i, size: [Fraction(int(t == i)) for t in range(size)]
    for row_I, I in enumerate(itertools.product(range(d), repeat=m + 1)):
        # each term is  coefficient * (element of M or A acting) * phi(basis J)
        terms = []  # (J, left multiplier vector in A or None, scalar)
        terms.append((I[1:], unitvec(I[0], d), 1))
        for i in range(1, m + 1):
            merged = _product(structure, unitvec(I[i - 1], d), unitvec(I[i], d))
            for c, w in enumerate(merged):
                if w:
                    terms.append((I[:i - 1] + (c,) + I[i + 1:], None, (-1) ** i * w))
        terms.append((I[:m], unitvec(I[m], d), (-1) ** (m + 1)))
        for J, mult, scalar in terms:
            col0 = pos[J] * e
            for k in range(e):
                y = unitvec(k, e)
                img = _act(action, mult, y) if mult is not None else y
                for k2, v in enumerate(img):
                    if v:
                        mat[row_I * e + k2][col0 + k] += scalar * v
    return mat


def _rank(mat: list[list[Fraction]]) -> int:
    a = [row[:] for row in mat]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        for r in range(len(a)):
            if r != rank and a[r][c]:
                f = a[r][c] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def bar_oracle(structure, N: int, action=None) -> list[int]:
    """Hochschild cohomology dimensions in degrees 0..N."""
    action = action if action is not None else structure
    d, e = len(structure), len(action)
    ranks = [_rank(bar_differential(structure, action, m)) for m in range(N + 1)]
    return [d ** m * e - ranks[m] - (ranks[m - 1] if m else 0) for m in range(N + 1)]
