"""Slow, independent reference computations used as test oracles.

Nothing here imports the library's enumeration code; only plain Python
over explicit subsets and relations.
"""

from itertools import combinations, product


def leq_matrix(p):
    return [[bool((p.up[i] >> j) & 1) for j in range(p.n)] for i in range(p.n)]


def up_sets(p):
    le = leq_matrix(p)
    out = []
    for m in range(1 << p.n):
        if all(not (m >> i) & 1 or all((m >> j) & 1 for j in range(p.n) if le[i][j]) for i in range(p.n)):
            out.append(m)
    return out


def prime_filters(join, meet, n, bot, top):
    """Bitsets ``chi`` of lattice homs onto {0, 1}, by trying every subset."""
    out = []
    for chi in range(1 << n):
        v = [(chi >> k) & 1 for k in range(n)]
        if v[bot] != 0 or v[top] != 1:
            continue
        if all(v[join[a][b]] == (v[a] | v[b]) and v[meet[a][b]] == (v[a] & v[b])
               for a in range(n) for b in range(n)):
            out.append(chi)
    return out


def closed_subsets(n, binary, unary, constants):
    """Every subset closed under the operations (nonempty when there are constants)."""
    out = []
    for m in range(1 << n):
        els = [k for k in range(n) if (m >> k) & 1]
        if any(not (m >> c) & 1 for c in constants):
            continue
        ok = all((m >> t[a][b]) & 1 for t in binary for a in els for b in els)
        ok = ok and all((m >> u[a]) & 1 for u in unary for a in els)
        if ok:
            out.append(m)
    return out


def product_tables(a1, a2):
    """Operation tables of ``a1 x a2`` as nested lists, index ``i * a2.n + j``."""
    n1, n2 = a1.n, a2.n
    idx = [(i, j) for i in range(n1) for j in range(n2)]

    def binop(t1, t2):
        return [[int(t1[i][k]) * n2 + int(t2[j][l]) for (k, l) in idx] for (i, j) in idx]

    binary = [binop(a1.lat.join, a2.lat.join), binop(a1.lat.meet, a2.lat.meet)]
    unary = [[op1[i] * n2 + op2[j] for (i, j) in idx] for op1, op2 in zip(a1.ops, a2.ops)]
    constants = [a1.lat.bot * n2 + a2.lat.bot, a1.lat.top * n2 + a2.lat.top]
    return n1 * n2, binary, unary, constants


def partitions(n):
    """All set partitions of range(n) as canonical label tuples."""
    def rec(k, labels, m):
        if k == n:
            yield tuple(labels)
            return
        for b in range(m + 1):
            yield from rec(k + 1, labels + [b], max(m, b + 1))
    yield from rec(0, [], 0)


def is_congruence_labels(labels, n, binary, unary):
    same = [[labels[a] == labels[b] for b in range(n)] for a in range(n)]
    for a, b in combinations(range(n), 2):
        if not same[a][b]:
            continue
        for u in unary:
            if labels[u[a]] != labels[u[b]]:
                return False
        for t in binary:
            for c in range(n):
                if labels[t[a][c]] != labels[t[b][c]] or labels[t[c][a]] != labels[t[c][b]]:
                    return False
    return True


def all_maps(n, m):
    return product(range(m), repeat=n)
