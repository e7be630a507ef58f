"""Jacobson radical of a finite-dimensional algebra over F_p.

Chain-of-ideals method for positive characteristic: with integer lifts of
the left regular representation, ``g_i(a) = Tr(a~^(p^i)) / p^i mod p`` is
linear on ``I_(i-1)`` and the radical is ``I_l`` for ``l = floor(log_p n)``,
where ``I_0`` is the radical of the trace form and
``I_i = {a in I_(i-1) : g_i(ab) = 0 for all b}``.
"""
from __future__ import annotations

import numpy as np

from .groups import Group
from .linalg import left_nullspace_mod_p, rank_mod_p, rref_mod_p


def group_algebra_constants(G: Group, p: int) -> np.ndarray:
    """Structure constants of F_p G: c[g, h, gh] = 1."""
    n = G.n
    c = np.zeros((n, n, n), dtype=np.int64)
    g, h = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    c[g, h, G.table] = 1
    return c % p


def _left_matrix(c: np.ndarray, x: np.ndarray, p: int) -> np.ndarray:
    # column j of L_x is x * e_j
    return np.einsum("i,ijk->kj", x, c) % p


def _mul(c: np.ndarray, x, y, p: int) -> np.ndarray:
    return np.einsum("i,j,ijk->k", x, y, c) % p


def _g(c: np.ndarray, x: np.ndarray, p: int, i: int) -> int:
    mod = p ** (i + 1)
    M = _left_matrix(c, x, p)
    P = M.copy()
    for _ in range(i):
        Q = np.eye(M.shape[0], dtype=np.int64)
        for _ in range(p):
            Q = (Q @ P) % mod
        P = Q
    return int(np.trace(P) % mod) // p ** i % p


def radical_of_reduction(c: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning J(A) for the F_p-algebra with structure constants c[i, j, k]."""
    c = np.asarray(c, dtype=np.int64) % p
    n = c.shape[0]
    traces = np.einsum("ikk->i", c) % p
    T = np.einsum("ijk,k->ij", c, traces) % p
    U, _ = rref_mod_p(left_nullspace_mod_p(T, p), p) if n else (np.zeros((0, 0)), [])
    l = 0
    while p ** (l + 1) <= n:
        l += 1
    for i in range(1, l + 1):
        if U.shape[0] == 0:
            break
        _, piv = rref_mod_p(U, p)
        gvals = np.array([_g(c, u, p, i) for u in U], dtype=np.int64)
        cond = np.zeros((U.shape[0], n), dtype=np.int64)
        for k, u in enumerate(U):
            for j in range(n):
                e = np.zeros(n, dtype=np.int64)
                e[j] = 1
                prod = _mul(c, u, e, p)
                # coordinates in the reduced echelon basis U are read off at the pivots
                cond[k, j] = int(prod[piv] @ gvals) % p
        alpha = left_nullspace_mod_p(cond, p)
        if alpha.shape[0] == 0:
            U = np.zeros((0, n), dtype=np.int64)
            break
        U, _ = rref_mod_p((alpha @ U) % p, p)
    return U


def span_products(c: np.ndarray, X, Y, p: int) -> np.ndarray:
    """Reduced rows spanning span{x y : x in X, y in Y}."""
    c = np.asarray(c) % p
    rows = [_mul(c, x, y, p) for x in X for y in Y]
    if not rows:
        return np.zeros((0, c.shape[0]), dtype=np.int64)
    R, _ = rref_mod_p(np.array(rows), p)
    return R


def augmentation_ideal_mod_p(G: Group, p: int) -> np.ndarray:
    n = G.n
    rows = np.zeros((n - 1, n), dtype=np.int64)
    for g in range(1, n):
        rows[g - 1, g] = 1
        rows[g - 1, 0] = p - 1
    return rows


def top_dimension(G: Group, p: int, X=None) -> int:
    """dim of X / J X over F_p (X defaults to the augmentation ideal)."""
    c = group_algebra_constants(G, p)
    J = radical_of_reduction(c, p)
    X = augmentation_ideal_mod_p(G, p) if X is None else np.asarray(X)
    JX = span_products(c, J, X, p)
    return rank_mod_p(X, p) - (JX.shape[0] if JX.size else 0)
