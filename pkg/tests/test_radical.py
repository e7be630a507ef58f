import itertools

import numpy as np
import pytest
import sympy

from symquot.groups import build
from symquot.linalg import rank_mod_p
from symquot.radical import (
    augmentation_ideal_mod_p,
    group_algebra_constants,
    radical_of_reduction,
    span_products,
    top_dimension,
)


def mul(c, x, y, p):
    return np.einsum("i,j,ijk->k", x, y, c) % p


def is_nilpotent(c, a, p):
    n = c.shape[0]
    x = a.copy()
    for _ in range(n + 1):
        if not x.any():
            return True
        x = mul(c, x, a, p)
    return not x.any()


def brute_force_radical_dim(c, p):
    """J = {a : ab nilpotent for every b}, by enumeration of the whole algebra."""
    n = c.shape[0]
    elems = [np.array(v, dtype=np.int64) for v in itertools.product(range(p), repeat=n)]
    J = [a for a in elems if all(is_nilpotent(c, mul(c, a, b, p), p) for b in elems)]
    dim = round(np.log(len(J)) / np.log(p))
    assert p ** dim == len(J)
    return dim


def upper_triangular_constants(d):
    idx = [(i, j) for i in range(d) for j in range(i, d)]
    pos = {e: k for k, e in enumerate(idx)}
    c = np.zeros((len(idx),) * 3, dtype=np.int64)
    for a, (i, j) in enumerate(idx):
        for b, (k, l) in enumerate(idx):
            if j == k:
                c[a, b, pos[(i, l)]] = 1
    return c, idx


def sylow_order(G, p):
    return p ** sympy.multiplicity(p, G.n)


def frattini_rank(G, p):
    """log_p |G : G' G^p| for a p-group, by closure of commutators and p-th powers."""
    gens = [G.power(g, p) for g in range(G.n)]
    gens += [int(G.table[G.table[G.inv[a], G.inv[b]], G.table[a, b]]) for a in range(G.n) for b in range(G.n)]
    return sympy.multiplicity(p, G.n // len(G.closure(gens)))


def test_f2_s3_matches_brute_force():
    G = build("file:s3")
    c = group_algebra_constants(G, 2)
    J = radical_of_reduction(c, 2)
    assert J.shape[0] == brute_force_radical_dim(c, 2) == 1


@pytest.mark.parametrize("spec,p", [("cyclic:2", 2), ("cyclic:3", 3), ("cyclic:4", 2), ("file:klein4", 2), ("cyclic:6", 3)])
def test_small_group_algebras_match_brute_force(spec, p):
    G = build(spec)
    if p ** G.n > 5000:
        pytest.skip("too large to enumerate")
    c = group_algebra_constants(G, p)
    assert radical_of_reduction(c, p).shape[0] == brute_force_radical_dim(c, p)


@pytest.mark.parametrize("d,p", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 5)])
def test_upper_triangular_radical_is_strictly_upper(d, p):
    c, idx = upper_triangular_constants(d)
    J = radical_of_reduction(c, p)
    strict = np.array([[1 if k == a else 0 for k in range(len(idx))] for a, (i, j) in enumerate(idx) if i < j])
    assert J.shape[0] == len(strict)
    assert rank_mod_p(np.vstack([J, strict]), p) == len(strict)


@pytest.mark.parametrize("spec", ["cyclic:8", "dihedral:8", "quaternion:8", "product:cyclic:2*cyclic:2*cyclic:2", "cyclic:9",
                                  "extraspecial:3:+", "dihedral:16", "quasidihedral:16"])
def test_p_group_radical_is_augmentation_ideal(spec):
    G = build(spec)
    p = sympy.primefactors(G.n)[0]
    c = group_algebra_constants(G, p)
    J = radical_of_reduction(c, p)
    I = augmentation_ideal_mod_p(G, p)
    assert J.shape[0] == G.n - 1
    assert rank_mod_p(np.vstack([J, I]), p) == G.n - 1


@pytest.mark.parametrize("spec,p", [("file:s3", 3), ("cyclic:6", 2), ("cyclic:6", 3), ("dihedral:12", 3),
                                    ("dihedral:10", 5), ("cyclic:12", 2), ("dihedral:6", 3)])
def test_normal_sylow_dimension(spec, p):
    # with a normal Sylow p-subgroup P, J(kG) = kG I(P) has codimension |G:P|
    G = build(spec)
    J = radical_of_reduction(group_algebra_constants(G, p), p)
    assert J.shape[0] == G.n - G.n // sylow_order(G, p)


@pytest.mark.parametrize("spec,p", [("cyclic:5", 2), ("file:s3", 5), ("dihedral:10", 3), ("cyclic:7", 2)])
def test_semisimple_case(spec, p):
    G = build(spec)
    assert radical_of_reduction(group_algebra_constants(G, p), p).shape[0] == 0


@pytest.mark.parametrize("spec,p", [("file:s3", 2), ("dihedral:12", 2), ("dihedral:16", 2), ("wreath:2", 2),
                                    ("extraspecial:3:-", 3), ("dihedral:18", 3)])
def test_radical_is_nilpotent_ideal(spec, p):
    G = build(spec)
    c = group_algebra_constants(G, p)
    J = radical_of_reduction(c, p)
    if J.shape[0] == 0:
        return
    whole = np.eye(G.n, dtype=np.int64)
    # two-sided ideal
    for side in (span_products(c, whole, J, p), span_products(c, J, whole, p)):
        assert rank_mod_p(np.vstack([J, side]), p) == J.shape[0]
    power = J
    for _ in range(G.n + 1):
        if power.size == 0 or power.shape[0] == 0:
            break
        power = span_products(c, power, J, p)
    assert power.shape[0] == 0 or not power.any()


def test_quotient_is_semisimple_for_s3():
    # F_2 S_3 / J has dimension 5 = 1 + 4 (F_2 + M_2(F_2)); its radical is zero
    G = build("file:s3")
    c = group_algebra_constants(G, 2)
    J = radical_of_reduction(c, 2)
    basis = np.eye(6, dtype=np.int64)
    # complement to J: drop the pivot coordinate of J
    piv = int(np.nonzero(J[0])[0][0])
    keep = [i for i in range(6) if i != piv]
    # structure constants of A/J in the basis of the kept coordinates
    q = np.zeros((5, 5, 5), dtype=np.int64)
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            prod = mul(c, basis[i], basis[j], 2)
            if prod[piv]:
                prod = (prod + J[0] * prod[piv]) % 2
            q[a, b] = prod[keep]
    assert radical_of_reduction(q, 2).shape[0] == 0


@pytest.mark.parametrize("spec", ["cyclic:4", "cyclic:8", "dihedral:8", "quaternion:8", "product:cyclic:2*cyclic:2", "product:cyclic:2*cyclic:2*cyclic:2",
                                  "cyclic:9", "product:cyclic:3*cyclic:3", "extraspecial:3:+", "dihedral:16", "modular:16"])
def test_top_of_augmentation_ideal_for_p_groups(spec):
    # I / I^2 is G / G'G^p, so its dimension is the minimal number of generators
    G = build(spec)
    p = sympy.primefactors(G.n)[0]
    assert top_dimension(G, p) == frattini_rank(G, p)


def test_top_dimension_examples():
    # F_3 S_3: I = rad(P_1) + P_sign, top sign + sign
    assert top_dimension(build("file:s3"), 3) == 2
    # F_2 S_3 = F_2 C_2 + M_2(F_2)
    assert top_dimension(build("file:s3"), 2) == 5
    # F_2 C_6 = F_2 C_2 + F_4 C_2
    assert top_dimension(build("cyclic:6"), 2) == 3
