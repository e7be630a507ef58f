"""Finitely generated O-submodules of O^n, held in valuation-echelon form.

Everything is built on one primitive, :func:`_reduce`: unimodular row
reduction over the discrete valuation ring O with minimal-valuation
pivoting.  Optionally the transformation ``U`` (with ``U A = [H; 0]``) and
the leading columns of ``U^{-1}`` are tracked sparsely; the trailing rows of
``U`` are then an O-basis of the left kernel and the leading columns of
``U^{-1}`` an O-basis of the saturation of the column space.  Both come out
pure, so no separate saturation step is ever needed.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .cyclotomic import CycNum, LocalContext, sub_mul_many
from .linalg import rank_mod_p


class LatticeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# row helpers

def _zero(ctx):
    return ctx.field.zero()


def _is_zero_row(row) -> bool:
    return not any(x.num and any(x.num) for x in row)


def _unit_content(ctx: LocalContext, row) -> Fraction | None:
    """A p-adic unit u in Q with ``u * row`` having coprime-to-p content 1."""
    p = ctx.p
    den = 1
    g = 0
    for x in row:
        if any(x.num):
            den = math.lcm(den, x.den)
    if den == 1 and all(x.den == 1 for x in row):
        pass
    for x in row:
        if any(x.num):
            mult = den // x.den
            for c in x.num:
                if c:
                    g = math.gcd(g, c * mult)
    if g == 0:
        return None
    while den % p == 0:
        den //= p
    while g % p == 0:
        g //= p
    if den == 1 and g == 1:
        return None
    return Fraction(den, g)


def _scale_row(row, u: Fraction):
    if u.denominator == 1:
        k = u.numerator
        return [CycNum(x.field, tuple(c * k for c in x.num), x.den) if any(x.num) else x for x in row]
    return [x * x.field.from_rational(u) if any(x.num) else x for x in row]


def _axpy(row, q: CycNum, piv_row, start: int = 0):
    """row - q * piv_row (columns before ``start`` are known to be untouched)."""
    out = list(row)
    idx = [j for j in range(start, len(row)) if any(piv_row[j].num)]
    for j, d in zip(idx, sub_mul_many([row[j] for j in idx], q, [piv_row[j] for j in idx])):
        out[j] = d
    return out


def _reduce(ctx: LocalContext, rows, *, track: bool = False, full: bool = True):
    """Unimodular row reduction over O.

    Returns ``(H, pivots, U, Uinv_cols)`` where ``H`` are the nonzero
    reduced rows (upper echelon, pivot valuations minimal in their column),
    ``pivots`` the list of ``(column, valuation)``; ``U`` is a list of sparse
    dict rows and ``Uinv_cols`` a list of sparse dict columns (only when
    ``track``).
    """
    A = [list(r) for r in rows]
    N = len(A)
    ncols = len(A[0]) if N else 0
    for row in A:
        for x in row:
            if any(x.num) and x.den % ctx.p == 0 and ctx.valuation(x) < 0:
                raise LatticeError("entry of negative valuation")
    one = ctx.field.one()
    U = [{i: one} for i in range(N)] if track else None
    Uinv = [{i: one} for i in range(N)] if track else None
    pivots = []
    r = 0
    for c in range(ncols):
        if r == N:
            break
        best = None
        for i in range(r, N):
            x = A[i][c]
            if any(x.num):
                v = ctx.valuation(x)
                if v < 0:
                    raise LatticeError("entry of negative valuation")
                if best is None or v < best[0]:
                    best = (v, i)
                    if v == 0:
                        break
        if best is None:
            continue
        t, i = best
        if i != r:
            A[r], A[i] = A[i], A[r]
            if track:
                U[r], U[i] = U[i], U[r]
                Uinv[r], Uinv[i] = Uinv[i], Uinv[r]
        a = A[r][c]
        a_inv = a.inverse()
        for i in range(r + 1, N):
            b = A[i][c]
            if not any(b.num):
                continue
            q = b * a_inv
            A[i] = _axpy(A[i], q, A[r], c)
            if track:
                _sparse_axpy(U[i], q, U[r])
                # U^{-1}: col_r += q col_i
                _sparse_axpy(Uinv[r], -q, Uinv[i])
            u = _unit_content(ctx, A[i])
            if u is not None:
                A[i] = _scale_row(A[i], u)
                if track:
                    fu = ctx.field.from_rational(u)
                    fi = ctx.field.from_rational(1 / u)
                    U[i] = {k: v * fu for k, v in U[i].items()}
                    Uinv[i] = {k: v * fi for k, v in Uinv[i].items()}
        pivots.append((c, t))
        r += 1
    H = A[:r]
    return H, pivots, U, Uinv


def _sparse_axpy(target: dict, q: CycNum, src: dict):
    """target -= q * src (sparse dict vectors)."""
    for k, v in src.items():
        w = target.get(k)
        nv = -(q * v) if w is None else w - q * v
        if any(nv.num):
            target[k] = nv
        elif w is not None:
            del target[k]


def _dense(ctx, sparse: dict, n: int):
    z = _zero(ctx)
    row = [z] * n
    for k, v in sparse.items():
        row[k] = v
    return row


def _canonicalize(ctx: LocalContext, H, pivots):
    """Pivots become exactly pi^t; entries above pivots reduced modulo pi^t."""
    H = [list(r) for r in H]
    for idx, (c, t) in enumerate(pivots):
        a = H[idx][c]
        u = ctx.pi_power(t) * a.inverse()
        H[idx] = [x * u if any(x.num) else x for x in H[idx]]
        for j in range(idx):
            x = H[j][c]
            if not any(x.num):
                continue
            rep = ctx.canonical_mod(x, t) if t > 0 else _zero(ctx)
            diff = x - rep
            if any(diff.num):
                q = diff * ctx.pi_power(-t)
                H[j] = _axpy(H[j], q, H[idx], c)
    return H


# ---------------------------------------------------------------------------

class OLattice:
    """An O-lattice inside O^n given by an O-basis.

    ``basis`` is in canonical valuation-echelon form when ``pivots`` is not
    None.  Lattices produced as kernels or saturations are known to be pure
    and carry their orthogonal complement, which makes membership tests cheap
    without echelonizing.
    """

    def __init__(self, ctx: LocalContext, ambient: int, basis, pivots=None, *, pure=None, complement=None):
        self.ctx = ctx
        self.ambient = ambient
        self.basis = [tuple(r) for r in basis]
        self.pivots = pivots
        self.pure = pure
        self._complement = complement

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"OLattice(rank={self.rank}, ambient={self.ambient}, m={self.ctx.m}, p={self.ctx.p})"

    def echelon(self) -> "OLattice":
        if self.pivots is not None:
            return self
        L = echelonize(self.ctx, self.basis, self.ambient)
        L.pure = self.pure
        L._complement = self._complement
        return L

    def contains(self, v) -> bool:
        return contains(self, v)

    def __contains__(self, v):
        return contains(self, v)


def _as_rows(ctx, vectors):
    out = []
    for v in vectors:
        out.append([ctx._own(x) if not isinstance(x, CycNum) or x.field.m != ctx.m else x for x in v])
    return out


def echelonize(ctx: LocalContext, vectors, ambient: int | None = None) -> OLattice:
    """The O-span of ``vectors`` (entries in O) in canonical echelon form."""
    rows = _as_rows(ctx, vectors)
    if ambient is None:
        if not rows:
            raise LatticeError("ambient rank needed for an empty generating set")
        ambient = len(rows[0])
    if any(len(r) != ambient for r in rows):
        raise LatticeError("vectors of unequal length")
    rows = [r for r in rows if not _is_zero_row(r)]
    if not rows:
        return OLattice(ctx, ambient, [], [])
    H, pivots, _, _ = _reduce(ctx, rows)
    H = _canonicalize(ctx, H, pivots)
    return OLattice(ctx, ambient, H, pivots)


def full_lattice(ctx: LocalContext, n: int) -> OLattice:
    one, z = ctx.field.one(), ctx.field.zero()
    basis = [[one if i == j else z for j in range(n)] for i in range(n)]
    comp = OLattice(ctx, n, [], [], pure=True)
    L = OLattice(ctx, n, basis, [(i, 0) for i in range(n)], pure=True, complement=comp)
    comp._complement = L
    return L


def zero_lattice(ctx: LocalContext, n: int) -> OLattice:
    return OLattice(ctx, n, [], [], pure=True)


def coordinates(L: OLattice, v):
    """Coefficients of v in the echelon basis of L, or None if v is not in L."""
    E = L.echelon()
    ctx = L.ctx
    v = list(_as_rows(ctx, [v])[0])
    coeffs = []
    for row, (c, t) in zip(E.basis, E.pivots):
        x = v[c]
        if not any(x.num):
            coeffs.append(_zero(ctx))
            continue
        if ctx.valuation(x) < t:
            return None
        q = x * ctx.pi_power(-t)
        coeffs.append(q)
        v = _axpy(v, q, row, c)
    if not _is_zero_row(v):
        return None
    return coeffs


def contains(L: OLattice, v) -> bool:
    ctx = L.ctx
    if L.pivots is None and L.pure and L._complement is not None:
        v = _as_rows(ctx, [v])[0]
        for x in v:
            if any(x.num) and ctx.valuation(x) < 0:
                return False
        for w in L._complement.basis:
            s = _zero(ctx)
            for a, b in zip(v, w):
                if any(a.num) and any(b.num):
                    s = s + a * b
            if any(s.num):
                return False
        return True
    return coordinates(L, v) is not None


def is_sublattice(L: OLattice, M: OLattice) -> bool:
    return all(contains(M, v) for v in L.basis)


def lattices_equal(L: OLattice, M: OLattice) -> bool:
    return L.rank == M.rank and is_sublattice(L, M) and is_sublattice(M, L)


def _coords_in(L: OLattice, M: OLattice):
    if not is_identity_basis(M):
        rows = []
        for v in L.basis:
            c = coordinates(M, v)
            if c is None:
                raise LatticeError("L is not contained in M")
            rows.append(c)
        return rows
    ctx = L.ctx
    for v in L.basis:
        for x in v:
            if any(x.num) and ctx.valuation(x) < 0:
                raise LatticeError("L is not contained in M")
    return [list(v) for v in L.basis]


def is_identity_basis(M: OLattice) -> bool:
    if M.rank != M.ambient:
        return False
    for i, row in enumerate(M.basis):
        for j, x in enumerate(row):
            if i == j:
                if x != 1:
                    return False
            elif any(x.num):
                return False
    return True


def residue_rank(ctx: LocalContext, vectors) -> int:
    """Rank over k of the reductions of ``vectors`` (entries of valuation >= 0)."""
    vectors = list(vectors)
    if not vectors:
        return 0
    k = ctx.k
    f = k.f
    rows = []
    y = k.reduce([0, 1]) if f > 1 else None
    for v in vectors:
        res = [ctx.residue_tuple(x) if any(x.num) else k.zero() for x in v]
        for j in range(f):
            rows.append([c for r in res for c in r])
            if j + 1 < f:
                res = [k.mul(r, y) for r in res]
    return rank_mod_p(rows, ctx.p) // f


def purity_certificate(L: OLattice, M: OLattice) -> dict:
    coords = _coords_in(L, M)
    rk = len(coords)
    rres = residue_rank(L.ctx, coords)
    return {"rank_K": rk, "rank_k": rres, "pure": rk == rres}


def is_pure(L: OLattice, M: OLattice) -> bool:
    """Whether L is a direct summand of M (M/L torsion-free)."""
    return purity_certificate(L, M)["pure"]


def pure_closure(L: OLattice, M: OLattice) -> OLattice:
    """M cap K L: the smallest pure sublattice of M containing L."""
    ctx = L.ctx
    coords = _coords_in(L, M)
    if not coords:
        return OLattice(ctx, L.ambient, [], [], pure=True)
    s = len(coords[0])
    cols = [[coords[i][j] for i in range(len(coords))] for j in range(s)]
    H, pivots, U, Uinv = _reduce(ctx, cols, track=True)
    r = len(pivots)
    sat_coords = [_dense(ctx, Uinv[i], s) for i in range(r)]
    if is_identity_basis(M):
        vecs = sat_coords
    else:
        z = _zero(ctx)
        vecs = []
        for y in sat_coords:
            acc = [z] * M.ambient
            for coef, b in zip(y, M.basis):
                if any(coef.num):
                    acc = [a + coef * bb if any(bb.num) else a for a, bb in zip(acc, b)]
            vecs.append(acc)
    out = echelonize(ctx, vecs, L.ambient)
    out.pure = True
    return out


def elementary_divisor_valuations(L: OLattice, M: OLattice) -> list[int]:
    """Valuations t_1 <= ... <= t_r of the Smith form of L inside M (equal K-ranks)."""
    if L.rank != M.rank:
        raise LatticeError("elementary divisors need equal K-ranks")
    coords = _coords_in(L, M)
    return smith_valuations(L.ctx, coords)


def smith_valuations(ctx: LocalContext, matrix) -> list[int]:
    """Elementary divisor valuations of a matrix over O (rank-many, finite only)."""
    A = [list(r) for r in matrix]
    out = []
    while A and A[0]:
        best = None
        for i, row in enumerate(A):
            for j, x in enumerate(row):
                if any(x.num):
                    v = ctx.valuation(x)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        t, i, j = best
        if t < 0:
            raise LatticeError("entry of negative valuation")
        out.append(t)
        piv = A[i]
        a_inv = piv[j].inverse()
        newA = []
        for k, row in enumerate(A):
            if k == i:
                continue
            b = row[j]
            if any(b.num):
                q = b * a_inv
                row = [x - q * y if any(y.num) else x for x, y in zip(row, piv)]
            newA.append(row[:j] + row[j + 1:])
        # column operations only touch the pivot row, which is dropped
        A = newA
    return sorted(out)


def left_kernel(ctx: LocalContext, rows, ambient_cols: int | None = None) -> OLattice:
    """{c in O^N : sum c_i rows_i = 0}; pure, with its complement cached."""
    rows = _as_rows(ctx, rows)
    N = len(rows)
    if N == 0:
        return OLattice(ctx, 0, [], [], pure=True)
    H, pivots, U, Uinv = _reduce(ctx, rows, track=True)
    r = len(pivots)
    kernel = [_dense(ctx, U[i], N) for i in range(r, N)]
    # x with U_low x = 0  <=>  x in span of the first r columns of U^{-1}
    comp_basis = [_dense(ctx, Uinv[i], N) for i in range(r)]
    comp = OLattice(ctx, N, comp_basis, None, pure=True)
    K = OLattice(ctx, N, kernel, None, pure=True, complement=comp)
    comp._complement = K
    return K


def orthogonal_complement(L: OLattice) -> OLattice:
    """{x in O^n : <x, l> = 0 for all l in L} under the standard pairing."""
    if L._complement is not None:
        return L._complement
    ctx = L.ctx
    n = L.ambient
    if L.rank == 0:
        comp = full_lattice(ctx, n)
    else:
        cols = [[L.basis[i][j] for i in range(L.rank)] for j in range(n)]
        comp = left_kernel(ctx, cols)
    L._complement = comp
    if L.pure:
        comp._complement = L
    return comp


def permute(L: OLattice, perm: Sequence[int]) -> OLattice:
    """The lattice with coordinates moved by ``new[perm[i]] = old[i]``."""
    n = L.ambient

    def move(v):
        out = [None] * n
        for i, x in enumerate(v):
            out[perm[i]] = x
        return out

    comp = None
    out = OLattice(L.ctx, n, [move(v) for v in L.basis], None, pure=L.pure)
    if L._complement is not None:
        comp = OLattice(L.ctx, n, [move(v) for v in L._complement.basis], None, pure=L._complement.pure)
        comp._complement = out
    out._complement = comp
    return out


# ---------------------------------------------------------------------------
# based algebras over O

class StructureAlgebra:
    """A free O-algebra of rank n given by structure constants table[i][j] = e_i e_j."""

    def __init__(self, ctx: LocalContext, table, generators=None, symmetrising_permutation=None):
        self.ctx = ctx
        self.table = table
        self.dim = len(table)
        self._generators = generators
        self.symmetrising_permutation = symmetrising_permutation

    def mul(self, a, b):
        ctx = self.ctx
        z = _zero(ctx)
        out = [z] * self.dim
        for i, x in enumerate(a):
            if not any(x.num):
                continue
            for j, y in enumerate(b):
                if not any(y.num):
                    continue
                xy = x * y
                for k, c in enumerate(self.table[i][j]):
                    if any(c.num):
                        out[k] = out[k] + xy * c
        return out

    def basis_vector(self, i):
        z, one = self.ctx.field.zero(), self.ctx.field.one()
        return [one if j == i else z for j in range(self.dim)]

    @property
    def generators(self):
        if self._generators is not None:
            return self._generators
        return [self.basis_vector(i) for i in range(self.dim)]


def check_ideal(algebra, I: OLattice) -> None:
    for b in I.basis:
        for g in algebra.generators:
            if not contains(I, algebra.mul(g, list(b))) or not contains(I, algebra.mul(list(b), g)):
                raise LatticeError("not a two-sided ideal")


def module_annihilator(algebra, I: OLattice, *, check: bool = True) -> OLattice:
    """ann(I) = {a : aI = 0 = Ia} for a two-sided ideal I."""
    ctx = algebra.ctx
    n = algebra.dim
    if check:
        if hasattr(algebra, "check_ideal"):
            algebra.check_ideal(I)
        else:
            check_ideal(algebra, I)
    if I.rank == 0:
        return full_lattice(ctx, n)
    perm = getattr(algebra, "symmetrising_permutation", None)
    if perm is not None:
        # s(ab) = <a, perm(b)> is a symmetrising form: ann(I) = perm(I)^perp
        return orthogonal_complement(permute(I, perm))
    rows = []
    for i in range(n):
        e = algebra.basis_vector(i)
        row = []
        for b in I.basis:
            row.extend(algebra.mul(e, list(b)))
            row.extend(algebra.mul(list(b), e))
        rows.append(row)
    return left_kernel(ctx, rows)
