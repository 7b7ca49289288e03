"""Brute-force reference implementations used as test oracles.

Everything here works straight from the definitions, by exhaustive search,
and shares no code with the library beyond the data containers.
"""

from __future__ import annotations

import itertools

import numpy as np


def is_right_quasigroup(table) -> bool:
    n = len(table)
    return all(sorted(table[y][x] for y in range(n)) == list(range(n)) for x in range(n))


def is_risack(table) -> bool:
    n = len(table)
    r = range(n)
    return all(table[y][z] == table[table[y][x]][table[z][x]] for x in r for y in r for z in r)


def risandle_law(table) -> bool:
    n = len(table)
    return all(x == table[table[x][x]][table[table[x][x]][x]] for x in range(n))


def is_rack(table) -> bool:
    n = len(table)
    r = range(n)
    return all(table[table[a][b]][x] == table[table[a][x]][table[b][x]] for x in r for a in r for b in r)


def inverse_table(table):
    n = len(table)
    inv = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            inv[table[y][x]][x] = y
    return inv


def homomorphisms(A, B):
    """All maps ``f`` with ``f(y ▷ x) = f(y) ▷ f(x)``."""
    n, m = len(A), len(B)
    out = []
    for f in itertools.product(range(m), repeat=n):
        if all(f[A[y][x]] == B[f[y]][f[x]] for x in range(n) for y in range(n)):
            out.append(f)
    return out


def group_homomorphisms(G, H) -> int:
    """Count maps ``f`` with ``f(gh) = f(g)f(h)`` between Cayley tables."""
    n, m = len(G), len(H)
    count = 0
    for f in itertools.product(range(m), repeat=n):
        if all(f[G[a][b]] == H[f[a]][f[b]] for a in range(n) for b in range(n)):
            count += 1
    return count


def colorings(arc_count, crossings, table):
    """Crossings are ``(sign, over, in, out)``; negative means out = s_over(in)."""
    inv = inverse_table(table)
    out = []
    for c in itertools.product(range(len(table)), repeat=arc_count):
        good = True
        for sign, over, a, b in crossings:
            image = table[c[a]][c[over]] if sign < 0 else inv[c[a]][c[over]]
            if image != c[b]:
                good = False
                break
        if good:
            out.append(c)
    return out


def cyclic_table(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def dihedral_rs_table(n):
    """Dihedral group of order 2n as r^k s^e, composition by explicit rules."""
    elems = [(k, e) for e in range(2) for k in range(n)]
    idx = {g: i for i, g in enumerate(elems)}

    def mul(p, q):
        (k1, e1), (k2, e2) = p, q
        k = (k1 + (k2 if e1 == 0 else -k2)) % n
        return k, (e1 + e2) % 2

    return [[idx[mul(p, q)] for q in elems] for p in elems]


def symmetric_table(n):
    perms = list(itertools.permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}
    return [[idx[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]


def all_order4_risacks() -> set[tuple[tuple[int, ...], ...]]:
    """Every risack on four points, by checking all 24^4 tables at once with numpy."""
    perms = np.array(list(itertools.permutations(range(4))), dtype=np.int8)
    choice = np.array(list(itertools.product(range(24), repeat=4)), dtype=np.int32)
    # T[k, y, x] = perm_{choice[k, x]}(y)
    T = perms[choice].transpose(0, 2, 1)
    ok = np.ones(len(T), dtype=bool)
    rows = np.arange(len(T))
    for x in range(4):
        for y in range(4):
            for z in range(4):
                ok &= T[:, y, z] == T[rows, T[:, y, x], T[:, z, x]]
    return {tuple(map(tuple, t.tolist())) for t in T[ok]}
