"""Brute-force reference implementations used as test oracles.

Nothing here imports the algorithms under test; inputs are plain lists and
strings so that agreement is evidence rather than a tautology.
"""

from fractions import Fraction
from itertools import product
from math import gcd


def fib_substitution(length):
    w = "0"
    while len(w) < length:
        w = "".join("01" if c == "0" else "0" for c in w)
    return w[:length]


def wk_by_definition(nk, blocks):
    """w_1 = 0, w_{2k} = 1^{n_k}, w_{2k+1} = w_1 ... w_{2k}; returns the blocks."""
    ws = ["0"]
    k = 1
    while len(ws) < blocks:
        ws.append("1" * nk(k))
        ws.append("".join(ws))
        k += 1
    return ws[:blocks]


def expand(pre, per, length):
    s = pre
    while len(s) < length:
        s += per
    return s[:length]


def partial_d1(xs, ys):
    return sum(Fraction(1, 2 ** i) for i, (a, b) in enumerate(zip(xs, ys)) if a != b)


def d1_by_generating_sum(pre_x, per_x, pre_y, per_y, terms=400):
    """Partial sum over enough terms to pin the exact value of a rational distance.

    The infinite tail is periodic, so ``terms`` symbols plus the closed-form
    geometric continuation of a full common period give the exact value.
    """
    p = max(len(pre_x), len(pre_y))
    l = len(per_x) * len(per_y) // gcd(len(per_x), len(per_y))
    xs = expand(pre_x, per_x, p + l)
    ys = expand(pre_y, per_y, p + l)
    head = partial_d1(xs[:p], ys[:p])
    cyc = sum(Fraction(1, 2 ** (p + i)) for i in range(l) if xs[p + i] != ys[p + i])
    return head + cyc / (1 - Fraction(1, 2 ** l))


# ---------------------------------------------------------------- matrices as lists

def mat_mult(A, B):
    n = len(A)
    return [[int(any(A[i][k] and B[k][j] for k in range(n))) for j in range(n)] for i in range(n)]


def mat_power(A, l):
    R = A
    for _ in range(l - 1):
        R = mat_mult(R, A)
    return R


def reach_closure(A):
    n = len(A)
    R = [row[:] for row in A]
    for k in range(n):
        for i in range(n):
            if R[i][k]:
                for j in range(n):
                    if R[k][j]:
                        R[i][j] = 1
    return R


def irreducible(A):
    R = reach_closure(A)
    return all(R[i][j] for i in range(len(A)) for j in range(len(A)))


def period_by_diagonal(A, i=0):
    n = len(A)
    g = 0
    P = A
    for l in range(1, n * n + 1):
        if P[i][i]:
            g = gcd(g, l)
        P = mat_mult(P, A)
    return g


def strictly_positive(A):
    return all(all(row) for row in A)


def kron_lists(A, B):
    na, nb = len(A), len(B)
    return [[A[i // nb][j // nb] * B[i % nb][j % nb] for j in range(na * nb)] for i in range(na * nb)]


def essential_lists(A):
    n = len(A)
    return n > 0 and all(any(row) for row in A) and all(any(A[i][j] for i in range(n)) for j in range(n))


def words_by_product(A, length, labels):
    n = len(A)
    out = []
    for seq in product(range(n), repeat=length):
        if all(A[seq[t]][seq[t + 1]] for t in range(length - 1)):
            out.append("".join(labels[v] for v in seq))
    return sorted(out)


def has_singleton_cylinder(A, depth=12):
    """Some vertex has exactly one path of ``depth`` steps leaving it."""
    n = len(A)
    for v in range(n):
        count = {v: 1}
        for _ in range(depth):
            nxt = {}
            for u, c in count.items():
                for j in range(n):
                    if A[u][j]:
                        nxt[j] = nxt.get(j, 0) + c
            count = nxt
        if sum(count.values()) == 1:
            return True
    return False


def sft_times_oracle(A, labels, w, K, T, extra=None):
    """Sensitivity times by enumerating pairs of words extending w."""
    n = len(A)
    if extra is None:
        extra = n + 1
    times = []
    ext = words_by_extension(A, labels, w, T + K + 1 + extra)
    for t in range(T + 1):
        windows = {x[t:t + K] for x in ext}
        if len(windows) >= 2:
            hit = True
        else:
            # all points share the window; a pair differing at index K and
            # again later exists iff both the boundary symbol and the tail vary
            hit = len({x[t + K] for x in ext}) >= 2 and len({x[t + K + 1:] for x in ext}) >= 2
        if hit:
            times.append(t)
    return times


def words_by_extension(A, labels, w, length):
    idx = [labels.index(c) for c in w]
    frontier = [idx]
    while len(frontier[0]) < length:
        frontier = [p + [j] for p in frontier for j in range(len(A)) if A[p[-1]][j]]
        if not frontier:
            return []
    return ["".join(labels[v] for v in p) for p in frontier]


def path_exists_oracle(A, a, b, steps):
    return bool(mat_power(A, steps)[a][b])
