"""Independent brute-force oracles shared by the module tests and the acceptance suite."""
from __future__ import annotations

import itertools
import random

import numpy as np
import sympy

from symquot.lattice import contains, echelonize


def scaled(ctx, vectors, t=1):
    pi_t = ctx.pi ** t
    return [[pi_t * x for x in v] for v in vectors]


def pure_by_enumeration(ctx, gens_L, gens_M, n) -> bool:
    """J(O)L = J(O)M cap L, decided by enumerating residue combinations of the generators of L.

    If x = sum c_i l_i lies in pi M, then so does sum lift(c_i mod pi) l_i, and x lies in pi L
    iff that representative does; so it suffices to test one lift per residue vector.
    """
    if not gens_L:
        return True
    piL = echelonize(ctx, scaled(ctx, gens_L), n)
    piM = echelonize(ctx, scaled(ctx, gens_M), n)
    lifts = [ctx.lift(r) for r in list(ctx.k.elements())]
    zero = ctx.field.zero()
    for combo in itertools.product(range(len(lifts)), repeat=len(gens_L)):
        if not any(combo):
            continue
        x = [zero] * n
        for c, g in zip(combo, gens_L):
            if c:
                x = [a + lifts[c] * b for a, b in zip(x, g)]
        if contains(piM, x) and not contains(piL, x):
            return False
    return True


def random_entry(ctx, rng: random.Random, vmax=3):
    if rng.random() < 0.3:
        return ctx.field.zero()
    units = [r for r in ctx.k.elements() if any(r)]
    u = ctx.lift(rng.choice(units)) + ctx.pi * ctx.lift(rng.choice(list(ctx.k.elements())))
    return u * ctx.pi ** rng.randint(0, vmax)


def random_lattice_pair(ctx, rng: random.Random, max_rank=6):
    """(generators of L, generators of M, n) with L inside M; M is O^n half of the time."""
    n = rng.randint(1, max_rank)
    one, zero = ctx.field.one(), ctx.field.zero()
    if rng.random() < 0.5:
        gens_M = [[one if i == j else zero for j in range(n)] for i in range(n)]
    else:
        gens_M = [[random_entry(ctx, rng, 1) for _ in range(n)] for _ in range(rng.randint(1, n))]
    # keep the enumeration over k^(#gens) small
    max_gens = 3 if len(list(ctx.k.elements())) > 3 else min(4, n)
    gens_L = []
    for _ in range(rng.randint(1, max_gens)):
        coeffs = [random_entry(ctx, rng) for _ in gens_M]
        v = [zero] * n
        for c, g in zip(coeffs, gens_M):
            v = [a + c * b for a, b in zip(v, g)]
        gens_L.append(v)
    return gens_L, gens_M, n


def f_p_span_rank(vectors, p):
    """Rank over F_p of integer vectors by plain Gaussian elimination (no numpy)."""
    rows = [[x % p for x in v] for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def class_constants(G):
    """c[C, D, E] = #{(x, y) in C x D : xy = g_E}, by counting all products."""
    r = len(G.classes)
    cls = np.array(G.class_of)
    counts = np.zeros((r, r, r), dtype=np.int64)
    x, y = np.meshgrid(np.arange(G.n), np.arange(G.n), indexing="ij")
    np.add.at(counts, (cls[x], cls[y], cls[G.table[x, y]]), 1)
    return counts // np.array(G.class_sizes)[None, None, :]


def _split_primes(m, bound):
    """Primes l = 1 mod m below 2^22 whose product exceeds 2 * bound."""
    out = []
    prod = 1
    l = (2 ** 22 // m) * m + 1
    while prod <= 2 * bound:
        l -= m
        if l < 3:
            raise ValueError("ran out of primes")
        if sympy.isprime(l):
            out.append(l)
            prod *= l
    return out


def _mod_matmul(X, Y, l):
    # entries of X, Y lie in [0, l) and l < 2^22, so every float64 partial sum is an exact integer
    assert X.shape[1] * (l - 1) ** 2 < 2 ** 53
    return np.fmod(X @ Y, l)


def idempotent_system_check(G, idempotents):
    """Exact check that the given class-function elements of KG are orthogonal idempotents summing to 1.

    Each e is scaled to integer class coefficients A = |G| e.  The sum is compared
    coefficient by coefficient.  Products use brute-force class constants and are
    evaluated modulo primes l = 1 mod m at every primitive m-th root of unity mod l;
    since l splits completely in Z[zeta_m] this determines an element of Z[zeta_m]
    modulo l, and the primes are chosen with product above twice an a priori bound
    on the coefficients, so agreement modulo all of them is exact equality.
    Returns a list of failures (empty when the system is good).
    """
    failures = []
    n = G.n
    r = len(G.classes)
    F = idempotents[0][0].field
    m, phi = F.m, F.degree
    A = []
    for i, e in enumerate(idempotents):
        for cls in G.classes:
            if any(e[x] != e[cls[0]] for x in cls):
                failures.append(("not central", i))
        scaled = [e[cls[0]] * n for cls in G.classes]
        if any(v.den != 1 for v in scaled):
            failures.append(("|G| e not integral", i))
            return failures
        A.append([list(v.num) for v in scaled])
    one = [[0] * phi for _ in range(r)]
    one[G.class_of[0]][0] = n
    if [[sum(col) for col in zip(*rows)] for rows in zip(*A)] != one:
        failures.append(("sum is not 1",))
    c = class_constants(G)
    # |x y| <= phi * red_bound * |x| |y| coefficientwise, and the class constants for fixed E sum to |G|
    max_a = max(abs(x) for Ai in A for row in Ai for x in row)
    red = max((abs(x) for j in range(phi, 2 * phi - 1) for x in F._reduce([0] * j + [1])), default=0)
    bound = n * phi * (red * phi + 1) * max_a ** 2
    N = len(A)
    A_int = [[[int(x) for x in row] for row in Ai] for Ai in A]
    # c laid out as (D, C * E) and (C, E) blocks
    c_D = c.transpose(1, 0, 2).reshape(r, r * r).astype(np.float64)
    for l in _split_primes(m, bound):
        g = sympy.primitive_root(l)
        w = pow(g, (l - 1) // m, l)
        for k in (k for k in range(1, m + 1) if np.gcd(k, m) == 1):
            wk = pow(w, k, l)
            powers = [pow(wk, i, l) for i in range(phi)]
            # values of every class coefficient under zeta -> w^k, mod l
            V = np.array([[sum(a * p for a, p in zip(row, powers)) % l for row in Ai] for Ai in A_int],
                         dtype=np.float64)
            # T[j, C, E] = sum_D V[j, D] c[C, D, E]
            T = np.fmod(V @ c_D, l).reshape(N, r, r)
            # P[i, j, E] = sum_C V[i, C] T[j, C, E]
            P = _mod_matmul(V, T.transpose(1, 0, 2).reshape(r, N * r), l).reshape(N, N, r)
            want = np.zeros_like(P)
            for i in range(N):
                want[i, i] = np.fmod(V[i] * n, l)
            bad = np.argwhere(np.any(P != want, axis=2))
            failures.extend(("product", int(i), int(j), l) for i, j in bad)
            if len(bad):
                return failures
    return failures
