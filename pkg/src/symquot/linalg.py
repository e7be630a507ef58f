"""Small exact linear-algebra helpers: matrices over F_p (numpy) and integer HNF."""
from __future__ import annotations

import numpy as np


def _as_mod(M, p: int) -> np.ndarray:
    A = np.array(M, dtype=object) if not isinstance(M, np.ndarray) else M
    A = np.asarray(A % p, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    return A


def rref_mod_p(M, p: int):
    """Reduced row echelon form over F_p; returns (R, pivot_columns)."""
    A = _as_mod(M, p).copy()
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod_p(M, p: int) -> int:
    A = np.asarray(M, dtype=object)
    if A.size == 0:
        return 0
    return len(rref_mod_p(A, p)[1])


def nullspace_mod_p(M, p: int) -> np.ndarray:
    """Basis (as rows) of {x : M x = 0} over F_p."""
    A = _as_mod(M, p)
    cols = A.shape[1]
    R, piv = rref_mod_p(A, p)
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-R[i, fc]) % p
    return basis


def left_nullspace_mod_p(M, p: int) -> np.ndarray:
    return nullspace_mod_p(np.asarray(M, dtype=object).T, p)


def span_intersection_mod_p(A, B, p: int) -> np.ndarray:
    """Rows spanning rowspace(A) cap rowspace(B)."""
    A = _as_mod(A, p)
    B = _as_mod(B, p)
    stacked = np.vstack([A, B]).T
    ns = nullspace_mod_p(stacked, p)
    if ns.size == 0:
        return np.zeros((0, A.shape[1]), dtype=np.int64)
    out = (ns[:, : A.shape[0]] @ A) % p
    R, _ = rref_mod_p(out, p)
    return R


# ---------------------------------------------------------------------------
# integer lattices

def hnf(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form (positive pivots, entries above reduced); zero rows dropped."""
    A = [list(r) for r in rows if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    r = 0
    for c in range(ncols):
        if not any(A[i][c] for i in range(r, len(A))):
            continue
        while True:
            nz = [i for i in range(r, len(A)) if A[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[piv] = A[piv], A[r]
            done = True
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    if q:
                        A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return A[:r]


def hnf_contains(H: list[list[int]], v) -> bool:
    v = list(v)
    for row in H:
        c = next(i for i, x in enumerate(row) if x)
        if v[c] % row[c]:
            return False
        q = v[c] // row[c]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


def solve_mod_p(rows, target, p: int):
    """Coefficients c with c @ rows = target over F_p, or None."""
    A = _as_mod(rows, p)
    b = _as_mod(target, p)[0]
    aug = np.vstack([A, b]).T  # columns: rows..., target
    R, piv = rref_mod_p(aug, p)
    k = A.shape[0]
    if k in piv:
        return None
    c = np.zeros(k, dtype=np.int64)
    for i, pc in enumerate(piv):
        c[pc] = R[i, k]
    return c
