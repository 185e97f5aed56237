"""Slow, obviously-correct reference computations used only by the tests."""
from __future__ import annotations

from itertools import combinations, permutations, product
from math import gcd


def perm_sign(p) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def leibniz_det(rows) -> int:
    n = len(rows)
    total = 0
    for p in permutations(range(n)):
        term = perm_sign(p)
        for i in range(n):
            term *= rows[i][p[i]]
        total += term
    return total


def determinantal_divisors(rows, ncols) -> list[int]:
    """Elementary divisors from gcds of k-minors: d_k = D_k / D_(k-1)."""
    m = len(rows)
    D = [1]
    for k in range(1, min(m, ncols) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(ncols), k):
                g = gcd(g, leibniz_det([[rows[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        D.append(g)
    return [D[k] // D[k - 1] for k in range(1, len(D))]


def field_solutions(A, b, p):
    """All x in GF(p)^n with A x = b, by enumeration."""
    n = len(A[0]) if A else 0
    out = []
    for x in product(range(p), repeat=n):
        if all(sum(a * v for a, v in zip(row, x)) % p == bi % p for row, bi in zip(A, b)):
            out.append(x)
    return out
