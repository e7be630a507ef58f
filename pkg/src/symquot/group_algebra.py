"""The group algebra OG, its character quotients and the symmetry tests built on them.

Elements of KG are plain lists of :class:`CycNum` indexed by group
elements.  The central test is purity of ``OG * pi^t e(chi)`` in ``OG``;
everything else (matrix-algebra test, trace-form exponent, annihilator
principality, the augmentation quotient) is computed independently so the
results can be cross-checked.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .characters import (
    Character,
    CharacterTable,
    MonomialRealization,
    block_partition,
    character_table,
    decomposition_divisible_by_p,
    height,
    is_central_type,
    monomial_realization,
)
from .cyclotomic import CycNum, LocalContext, _vp, change_conductor, cyclotomic_field, make_context
from .groups import Group
from .lattice import (
    LatticeError,
    OLattice,
    contains,
    coordinates,
    echelonize,
    elementary_divisor_valuations,
    full_lattice,
    is_pure,
    lattices_equal,
    left_kernel,
    module_annihilator,
    orthogonal_complement,
    purity_certificate,
    smith_valuations,
)
from .linalg import rank_mod_p, rref_mod_p, solve_mod_p
from .radical import top_dimension


def default_context(G: Group, p: int, conductor: int | None = None) -> LocalContext:
    return make_context(conductor or G.exponent, p)


# ---------------------------------------------------------------------------
# the algebra

class GroupAlgebra:
    """OG with the group basis; the symmetrising form is the coefficient of 1."""

    def __init__(self, G: Group, ctx: LocalContext):
        self.group = G
        self.ctx = ctx
        self.dim = G.n
        self.symmetrising_permutation = [int(x) for x in G.inv]

    def zero(self):
        return [self.ctx.field.zero()] * self.dim

    def basis_vector(self, g: int):
        v = self.zero()
        v[g] = self.ctx.field.one()
        return v

    @property
    def generators(self):
        return [self.basis_vector(g) for g in self.group.small_generating_set(range(self.group.n))]

    def mul(self, a, b):
        T = self.group.table
        out = self.zero()
        bs = [(h, y) for h, y in enumerate(b) if any(y.num)]
        for g, x in enumerate(a):
            if not any(x.num):
                continue
            row = T[g]
            for h, y in bs:
                k = row[h]
                out[k] = out[k] + x * y
        return out

    def left(self, g: int, v):
        """g * v, i.e. (g v)(x) = v(g^-1 x)."""
        idx = self.group.table[self.group.inv[g]]
        return [v[i] for i in idx]

    def right(self, v, g: int):
        """v * g, i.e. (v g)(x) = v(x g^-1)."""
        idx = self.group.table[:, self.group.inv[g]]
        return [v[i] for i in idx]

    def class_sum(self, i: int):
        v = self.zero()
        one = self.ctx.field.one()
        for g in self.group.classes[i]:
            v[g] = one
        return v

    def check_ideal(self, I: OLattice) -> None:
        """Two-sided closure under the group generators.

        For a pure I it is enough that the complement I^perp is stable under
        left and right multiplication by inverses of generators, which is a
        small computation when I has small corank.
        """
        gens = self.group.small_generating_set(range(self.group.n))
        if I.pure and I._complement is not None and I._complement.rank <= I.rank:
            comp = I._complement.echelon()
            for w in comp.basis:
                w = list(w)
                for g in gens:
                    gi = int(self.group.inv[g])
                    if coordinates(comp, self.left(gi, w)) is None or coordinates(comp, self.right(w, gi)) is None:
                        raise LatticeError("not a two-sided ideal")
            return
        for b in I.basis:
            b = list(b)
            for g in gens:
                if not contains(I, self.left(g, b)) or not contains(I, self.right(b, g)):
                    raise LatticeError("not a two-sided ideal")


def augmentation(v) -> CycNum:
    s = v[0].field.zero()
    for x in v:
        s = s + x
    return s


# ---------------------------------------------------------------------------
# idempotents and the minimal scaling

def idempotent(G: Group, chi: Character, m: int | None = None) -> list:
    """e(chi) = chi(1)/|G| sum_x chi(x^-1) x, with coefficients in Q(zeta_m)."""
    m = m or chi.field.m
    vals = chi.in_field(m)
    coef = Fraction(chi.degree, G.n)
    per_class = [vals[G.inverse_class[c]] * coef for c in range(len(G.classes))]
    return [per_class[c] for c in G.class_of]


def _idempotent_by_class(G: Group, chi: Character, m: int) -> list:
    vals = chi.in_field(m)
    coef = Fraction(chi.degree, G.n)
    return [vals[G.inverse_class[c]] * coef for c in range(len(G.classes))]


def min_lambda_exponent(G: Group, chi: Character, ctx: LocalContext) -> int:
    """Least t >= 0 with pi^t e(chi) in OG."""
    per_class = _idempotent_by_class(G, chi, ctx.m)
    vmin = min(ctx.valuation(x) for x in per_class if any(x.num))
    return max(0, -vmin)


def scaled_idempotent(G: Group, chi: Character, ctx: LocalContext):
    t = min_lambda_exponent(G, chi, ctx)
    # any associate of pi^t spans the same lattice; this one keeps coefficients small
    pt = ctx.pi_power_associate(t)
    per_class = [x * pt for x in _idempotent_by_class(G, chi, ctx.m)]
    return t, [per_class[c] for c in G.class_of]


def block_idempotents(G: Group, ctx: LocalContext, table: CharacterTable | None = None) -> list:
    table = table or character_table(G)
    out = []
    for block in block_partition(G, ctx, table):
        acc = [ctx.field.zero()] * G.n
        for i in block:
            e = idempotent(G, table[i], ctx.m)
            acc = [a + b for a, b in zip(acc, e)]
        if any(any(x.num) and ctx.valuation(x) < 0 for x in acc):
            raise ArithmeticError("block idempotent is not integral")
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# the purity classifier

def _orbit(A: GroupAlgebra, v) -> list:
    return [A.left(g, v) for g in range(A.dim)]


def is_symmetric_quotient(G: Group, chi: Character, ctx: LocalContext):
    """Purity of OG pi^t e(chi) in OG; returns (verdict, certificate)."""
    t, v = scaled_idempotent(G, chi, ctx)
    A = GroupAlgebra(G, ctx)
    L = echelonize(ctx, _orbit(A, v), G.n)
    cert = purity_certificate(L, full_lattice(ctx, G.n))
    if cert["rank_K"] != chi.degree ** 2:
        raise ArithmeticError("OG e(chi) has the wrong rank")
    cert["lambda_exponent"] = t
    return cert["pure"], cert


def _root_table(e: int, m: int) -> list:
    F = cyclotomic_field(e)
    return [change_conductor(F.zeta(k), m) for k in range(e)]


def realization_vectors(R: MonomialRealization, ctx: LocalContext) -> list:
    """M(g) flattened row-major, entries in Q(zeta_m) of the context."""
    roots = _root_table(R.e, ctx.m)
    d = R.degree
    z = ctx.field.zero()
    out = []
    for g in range(R.group.n):
        vec = [z] * (d * d)
        for j in range(d):
            vec[int(R.perms[g, j]) * d + j] = roots[int(R.exps[g, j])]
        out.append(vec)
    return out


def is_matrix_algebra(G: Group, chi: Character, R: MonomialRealization, ctx: LocalContext) -> bool:
    """Whether the reductions of the M(g) span all d x d matrices over k."""
    if not R.check(chi):
        raise ValueError("realization does not afford chi")
    d = R.degree
    k = ctx.k
    roots = [ctx.residue_tuple(x) for x in _root_table(R.e, ctx.m)]
    f = k.f
    ymul = k.reduce([0, 1]) if f > 1 else None
    rows = []
    for g in range(G.n):
        mat = [k.zero()] * (d * d)
        for j in range(d):
            mat[int(R.perms[g, j]) * d + j] = roots[int(R.exps[g, j])]
        for _ in range(f):
            rows.append([c for r in mat for c in r])
            if f > 1:
                mat = [k.mul(r, ymul) for r in mat]
    return rank_mod_p(rows, ctx.p) // f == d * d


@dataclass
class TraceFormResult:
    r: int
    elementary_divisors: list
    gram_divisors: list
    unimodular: bool          # pi^-r tr is unimodular on the image lattice
    unimodular_any: bool      # some pi^-s tr is unimodular


def trace_form_exponent(G: Group, chi: Character, R: MonomialRealization, ctx: LocalContext) -> TraceFormResult:
    d = R.degree
    L = echelonize(ctx, realization_vectors(R, ctx), d * d)
    if L.rank != d * d:
        raise LatticeError("image of OG has rank below chi(1)^2")
    ed = elementary_divisor_valuations(L, full_lattice(ctx, d * d))
    r = max(ed)
    mats = [[list(b[i * d:(i + 1) * d]) for i in range(d)] for b in L.basis]

    def tr_prod(X, Y):
        s = ctx.field.zero()
        for i in range(d):
            for j in range(d):
                if any(X[i][j].num) and any(Y[j][i].num):
                    s = s + X[i][j] * Y[j][i]
        return s

    gram = [[tr_prod(X, Y) for Y in mats] for X in mats]
    gd = smith_valuations(ctx, gram)
    if len(gd) != d * d:
        raise LatticeError("trace form is degenerate on the image lattice")
    return TraceFormResult(r, ed, gd, all(x == r for x in gd), len(set(gd)) == 1)


def check_decnumber_theorem(G: Group, p: int, chi: Character, ctx: LocalContext | None = None,
                            table: CharacterTable | None = None) -> str:
    ctx = ctx or default_context(G, p)
    R = monomial_realization(G, chi)
    if R is None:
        return "SKIPPED"
    sym, _ = is_symmetric_quotient(G, chi, ctx)
    if not sym or is_matrix_algebra(G, chi, R, ctx):
        return "PASS"
    return "PASS" if decomposition_divisible_by_p(G, p, chi, table) else "VIOLATION"


# ---------------------------------------------------------------------------
# annihilators and the principality criterion

def kernel_ideal(G: Group, chi: Character, ctx: LocalContext) -> OLattice:
    """Kernel of OG -> OG e(chi), as the left kernel of the rows g pi^t e(chi)."""
    _, v = scaled_idempotent(G, chi, ctx)
    A = GroupAlgebra(G, ctx)
    return left_kernel(ctx, _orbit(A, v))


class NakayamaBudgetExceeded(RuntimeError):
    pass


@dataclass
class NakayamaResult:
    principal: bool
    z: list | None
    rank_annihilator: int
    rank_center_part: int
    candidates_tried: int
    verified: bool | None = None


def _residue_matrix(ctx: LocalContext, vectors) -> np.ndarray:
    """k-vectors as an array of shape (count, n, f)."""
    k = ctx.k
    out = np.zeros((len(vectors), len(vectors[0]) if vectors else 0, k.f), dtype=np.int64)
    for i, v in enumerate(vectors):
        for j, x in enumerate(v):
            if any(x.num):
                out[i, j] = ctx.residue_tuple(x)
    return out


def _y_matrix(ctx: LocalContext) -> np.ndarray:
    """Matrix of multiplication by y on F_q = F_p[y]/g, acting on coefficient rows."""
    k = ctx.k
    f = k.f
    Y = np.zeros((f, f), dtype=np.int64)
    for i in range(f):
        e = [0] * f
        e[i] = 1
        Y[i] = k.mul(tuple(e), k.reduce([0, 1]))
    return Y


def _generated_rank(G: Group, zbar: np.ndarray, Y: np.ndarray, p: int) -> int:
    """dim_k of kG * zbar, for zbar of shape (n, f)."""
    f = zbar.shape[1]
    rows = []
    cur = zbar
    for _ in range(f):
        for g in range(G.n):
            rows.append(cur[G.table[G.inv[g]]].reshape(-1))
        cur = (cur @ Y) % p
    return rank_mod_p(np.array(rows), p) // f


def _projective_vectors(dim: int, p: int):
    """Nonzero vectors of F_p^dim with first nonzero entry 1, by increasing support size."""
    for weight in range(1, dim + 1):
        for support in itertools.combinations(range(dim), weight):
            for tail in itertools.product(range(1, p), repeat=weight - 1):
                v = [0] * dim
                v[support[0]] = 1
                for pos, c in zip(support[1:], tail):
                    v[pos] = c
                yield v


def nakayama_check(G: Group, I: OLattice, ctx: LocalContext, *, budget: int = 20000,
                   blocks: list | None = None, verify: bool = True) -> NakayamaResult:
    """Decide whether ann(I) = OG z for a central z, by a search modulo the uniformizer.

    C = Z(OG) cap ann(I) is computed from class sums; since ann(I) is pure,
    OG z = ann(I) holds iff the residues of {g z} span a space of dimension
    rank ann(I) (Nakayama).  Candidates z run over C / pi C, split along
    blocks when block idempotents (as class-coefficient vectors) are given.
    """
    A = GroupAlgebra(G, ctx)
    A.check_ideal(I)
    N = module_annihilator(A, I, check=False)
    rank_N = N.rank
    if rank_N == 0:
        return NakayamaResult(True, A.zero(), 0, 0, 0, True)
    Nperp = N._complement if N._complement is not None else orthogonal_complement(N)
    r = len(G.classes)
    z0 = ctx.field.zero()
    pairing = []
    for cls in G.classes:
        row = []
        for w in Nperp.basis:
            s = z0
            for x in cls:
                if any(w[x].num):
                    s = s + w[x]
            row.append(s)
        pairing.append(row)
    if Nperp.rank == 0:
        Cc = [[ctx.field.one() if i == j else z0 for j in range(r)] for i in range(r)]
    else:
        Cc = [list(b) for b in left_kernel(ctx, pairing).basis]
    # class coordinates -> group coordinates
    C = [[c[G.class_of[g]] for g in range(G.n)] for c in Cc]
    p, f = ctx.p, ctx.k.f
    Y = _y_matrix(ctx)
    res_classes = _residue_matrix(ctx, Cc) if Cc else np.zeros((0, r, f), dtype=np.int64)
    # F_p-basis of the F_q-span: y^j multiples of each residue (independent since C is pure)
    basis_cls = []
    for v in res_classes:
        cur = v
        for _ in range(f):
            basis_cls.append(cur.copy())
            cur = (cur @ Y) % p
    co = np.array(G.class_of)

    pieces = [basis_cls]
    if blocks is not None and basis_cls:
        pieces = []
        for b in blocks:
            bres = _residue_matrix(ctx, [b])[0]
            prods = [_central_product_residue(G, ctx, v, bres) for v in basis_cls]
            flat = np.array([x.reshape(-1) for x in prods])
            R, _ = rref_mod_p(flat, p)
            pieces.append([row.reshape(r, f) for row in R])

    tried = 0
    total_rank = 0
    zbar = np.zeros((G.n, f), dtype=np.int64)
    for piece in pieces:
        best_rank, best = 0, None
        for coeffs in _projective_vectors(len(piece), p):
            tried += 1
            if tried > budget:
                raise NakayamaBudgetExceeded(f"more than {budget} candidates")
            cand = sum(c * x for c, x in zip(coeffs, piece) if c) % p
            rk = _generated_rank(G, cand[co], Y, p)
            if rk > best_rank:
                best_rank, best = rk, cand
                if total_rank + best_rank == rank_N:
                    break
        if best is not None:
            zbar = (zbar + best[co]) % p
            total_rank += best_rank
        if total_rank == rank_N:
            break
    if total_rank != rank_N:
        return NakayamaResult(False, None, rank_N, len(C), tried)
    # lift: solve zbar = sum a_ij y^j cbar_i over F_p, then z = sum lift(a_ij y^j) c_i
    flat_basis = [x[co].reshape(-1) for x in basis_cls]
    a = solve_mod_p(np.array(flat_basis), zbar.reshape(-1), p)
    if a is None:
        raise ArithmeticError("central residue does not come from C")
    z = A.zero()
    for idx, coef in enumerate(a):
        if coef:
            i, j = divmod(idx, f)
            e = [0] * f
            e[j] = int(coef)
            scal = ctx.lift(tuple(e))
            z = [x + scal * c for x, c in zip(z, C[i])]
    result = NakayamaResult(True, z, rank_N, len(C), tried)
    if verify:
        result.verified = verify_principal(A, z, N)
    return result


def _central_product_residue(G: Group, ctx: LocalContext, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Residue (class coordinates, shape (r, f)) of the product of two central elements."""
    from .characters import class_structure_constants

    consts = getattr(G, "_class_constants", None)
    if consts is None:
        consts = G._class_constants = class_structure_constants(G)
    k = ctx.k
    r = len(G.classes)
    out = [k.zero()] * r
    for i in range(r):
        ai = tuple(int(x) for x in a[i])
        if not any(ai):
            continue
        for j in range(r):
            bj = tuple(int(x) for x in b[j])
            if not any(bj):
                continue
            prod = k.mul(ai, bj)
            for kk in np.nonzero(consts[i, j])[0]:
                out[kk] = k.add(out[kk], k.scale(prod, int(consts[i, j, kk])))
    return np.array(out, dtype=np.int64).reshape(r, k.f)


def verify_principal(A: GroupAlgebra, z, N: OLattice) -> bool:
    """OG z = N by double membership (z central and in N, N inside the span of {g z})."""
    G = A.group
    ctx = A.ctx
    for cls in G.classes:
        if any(z[x] != z[cls[0]] for x in cls):
            return False
    if not contains(N, z):
        return False
    # z in N and N an ideal give OG z inside N; now the reverse inclusion
    span = echelonize(ctx, _orbit(A, z), G.n)
    return all(contains(span, list(b)) for b in N.basis)


# ---------------------------------------------------------------------------
# the augmentation quotient

@dataclass
class AugmentationResult:
    p: int
    group_criterion: bool
    p_nilpotent: bool
    sylow_cyclic: bool
    witness_verified: bool | None
    top_dimension: int
    k_level: bool | None      # None when the residue search exceeded its budget
    consistent: bool | None


def augmentation_ideal(A: GroupAlgebra) -> OLattice:
    ctx = A.ctx
    one = ctx.field.one()
    rows = []
    for g in range(1, A.dim):
        v = A.zero()
        v[g] = one
        v[0] = -one
        rows.append(v)
    return echelonize(ctx, rows, A.dim)


def augmentation_witness(G: Group, p: int, ctx: LocalContext, table: CharacterTable | None = None):
    """z = (y - 1) b + sum of the other block idempotents, y generating a Sylow p-subgroup."""
    A = GroupAlgebra(G, ctx)
    pp = p ** _vp(G.n, p)
    y = next(g for g in range(G.n) if G.element_orders[g] == pp)
    bids = block_idempotents(G, ctx, table)
    b0 = bids[0]
    ym1 = A.basis_vector(y)
    ym1[0] = ym1[0] - ctx.field.one()
    z = A.mul(ym1, b0)
    for b in bids[1:]:
        z = [a + c for a, c in zip(z, b)]
    return z


def verify_augmentation_generator(A: GroupAlgebra, z) -> bool:
    """OG z = I(OG): z has augmentation 0 and every g - 1 lies in OG z."""
    if any(augmentation(z).num):
        return False
    span = echelonize(A.ctx, _orbit(A, z), A.dim)
    if span.rank != A.dim - 1:
        return False
    return all(contains(span, v) for v in augmentation_ideal(A).basis)


def augmentation_quotient_symmetric(G: Group, p: int, ctx: LocalContext | None = None, *,
                                    budget: int = 4096, table: CharacterTable | None = None) -> AugmentationResult:
    ctx = ctx or default_context(G, p)
    table = table or character_table(G)
    pn = G.is_p_nilpotent(p)
    sc = G.sylow_is_cyclic(p)
    crit = pn and sc
    A = GroupAlgebra(G, ctx)
    witness = None
    if crit:
        witness = verify_augmentation_generator(A, augmentation_witness(G, p, ctx, table))
    one = ctx.field.one()
    I = echelonize(ctx, [[one] * G.n], G.n)
    I.pure = True
    blocks = [_class_vector(G, b) for b in block_idempotents(G, ctx, table)]
    try:
        k_level = nakayama_check(G, I, ctx, budget=budget, blocks=blocks, verify=G.n <= 32).principal
    except NakayamaBudgetExceeded:
        k_level = None
    td = top_dimension(G, p)
    consistent = None if k_level is None else (k_level == crit and (witness is not False))
    return AugmentationResult(p, crit, pn, sc, witness, td, k_level, consistent)


def _class_vector(G: Group, v) -> list:
    return [v[c[0]] for c in G.classes]


# ---------------------------------------------------------------------------
# per-character report

@dataclass
class QuotientReport:
    chi: int
    degree: int
    lambda_exponent: int
    symmetric: bool
    matrix_algebra: bool | None
    central_type: bool
    height: int
    trace_exponent: int | None
    gram_unimodular: bool | None
    divisible: bool
    verdict: str
    rank_K: int
    rank_k: int
    inducing_subgroup_order: int | None
    values: list = field(default_factory=list)
    nakayama: bool | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def classify_character(G: Group, p: int, chi: Character, ctx: LocalContext,
                       table: CharacterTable | None = None, *, nakayama: bool = False) -> QuotientReport:
    table = table or character_table(G)
    sym, cert = is_symmetric_quotient(G, chi, ctx)
    R = monomial_realization(G, chi)
    mat = tf = None
    if R is not None:
        mat = is_matrix_algebra(G, chi, R, ctx)
        tf = trace_form_exponent(G, chi, R, ctx)
    div = decomposition_divisible_by_p(G, p, chi, table)
    if R is None:
        verdict = "SKIPPED"
    elif sym and not mat and not div:
        verdict = "VIOLATION"
    else:
        verdict = "PASS"
    rep = QuotientReport(
        chi=chi.index,
        degree=chi.degree,
        lambda_exponent=cert["lambda_exponent"],
        symmetric=sym,
        matrix_algebra=mat,
        central_type=is_central_type(G, chi),
        height=height(G, p, chi, ctx, table),
        trace_exponent=None if tf is None else tf.r,
        gram_unimodular=None if tf is None else tf.unimodular,
        divisible=div,
        verdict=verdict,
        rank_K=cert["rank_K"],
        rank_k=cert["rank_k"],
        inducing_subgroup_order=None if R is None else len(R.subgroup),
        values=[v.to_json() for v in chi.values],
    )
    if nakayama:
        rep.nakayama = nakayama_check(G, kernel_ideal(G, chi, ctx), ctx).principal
    return rep


def classify(G: Group, p: int, ctx: LocalContext | None = None, *, nakayama: bool = False) -> list[QuotientReport]:
    ctx = ctx or default_context(G, p)
    table = character_table(G)
    return [classify_character(G, p, chi, ctx, table, nakayama=nakayama) for chi in table]


# ---------------------------------------------------------------------------
# the cyclic-index computations and the wreath example

def faithful_linear_idempotents(n: int, kind: str, ctx: LocalContext):
    """e(eta), e(eta_bar) in O C_{2^n} for the faithful eta and its conjugate under t."""
    N = 2 ** n
    F = ctx.field
    zeta = change_conductor(cyclotomic_field(N).zeta(1), ctx.m)
    if kind in ("dihedral", "quaternion"):
        bar = N - 1
    elif kind == "quasidihedral":
        bar = N // 2 - 1
    else:
        raise ValueError(f"unknown kind {kind!r}")
    inv_n = F.from_rational(Fraction(1, N))
    e_eta = [zeta ** ((-a) % N) * inv_n for a in range(N)]
    e_bar = [zeta ** ((-a * bar) % N) * inv_n for a in range(N)]
    return e_eta, e_bar


def _cyclic_shift(v, a: int):
    """s^a * v in O C_N with the basis s^0..s^(N-1)."""
    N = len(v)
    return [v[(i - a) % N] for i in range(N)]


def verify_section3_basis(n: int, kind: str, ctx: LocalContext | None = None) -> dict:
    if n < 3:
        raise ValueError("n must be at least 3")
    N = 2 ** n
    ctx = ctx or make_context(N, 2)
    F = ctx.field
    zeta = change_conductor(cyclotomic_field(N).zeta(1), ctx.m)
    e_eta, e_bar = faithful_linear_idempotents(n, kind, ctx)
    e_chi = [a + b for a, b in zip(e_eta, e_bar)]
    lam = F.from_int(N) * (F.one() - zeta).inverse() ** 2
    z = [lam * x for x in e_chi]
    t = max(0, -min(ctx.valuation(x) for x in e_chi if any(x.num)))
    orbit = echelonize(ctx, [_cyclic_shift(z, a) for a in range(N)], N)
    claimed = echelonize(ctx, [z, [F.from_int(N) * x for x in e_eta]], N)
    integral = all(ctx.valuation(x) >= 0 for x in z if any(x.num))
    half = F.from_int(N // 2) * (F.one() - zeta).inverse() ** 2
    return {
        "n": n,
        "kind": kind,
        "lambda_exponent": t,
        "lambda_valuation": ctx.valuation(lam),
        "z_integral": integral,
        "basis_confirmed": integral and lattices_equal(orbit, claimed),
        "rank": orbit.rank,
        "pure": integral and is_pure(orbit, full_lattice(ctx, N)),
        "half_scaling_integral": all(ctx.valuation(half * x) >= 0 for x in e_chi if any(x.num)),
    }


def _elementary_abelian_index(coords, p: int) -> int:
    i = 0
    for c in coords:
        i = i * p + c
    return i


def verify_example61(p: int, ctx: LocalContext | None = None, *, with_group: bool | None = None) -> dict:
    """The wreath example inside OH, H = (C_p)^p, plus (for p = 3) the full classifier on G."""
    if p % 2 == 0:
        raise ValueError("p must be odd")
    ctx = ctx or make_context(p, p)
    F = ctx.field
    n = p ** p
    zeta = change_conductor(cyclotomic_field(p).zeta(1), ctx.m)
    zpow = [zeta ** j for j in range(p)]
    elems = list(itertools.product(range(p), repeat=p))
    inv_n = Fraction(1, n)

    def e_psi(i):
        # e(psi_i) = 1/|H| sum_h psi_i(h^-1) h
        return [zpow[(-h[i]) % p] * inv_n for h in elems]

    es = [e_psi(i) for i in range(p)]
    e_chi = [sum(col[1:], col[0]) for col in zip(*es)]
    one_minus = F.one() - zeta
    scal = F.from_int(n) * one_minus.inverse()
    z = [scal * x for x in e_chi]
    t = max(0, -min(ctx.valuation(x) for x in e_chi if any(x.num)))
    z_integral = all(ctx.valuation(x) >= 0 for x in z if any(x.num))
    # minimal scaling: z / (1 - zeta) is no longer integral
    minimal = min(ctx.valuation(x) for x in z if any(x.num)) == 0

    def shift(v, i):
        # multiply by the generator with s in coordinate i
        out = [None] * n
        for idx, h in enumerate(elems):
            hh = list(h)
            hh[i] = (hh[i] + 1) % p
            out[_elementary_abelian_index(hh, p)] = v[idx]
        return out

    basis = [z] + [[F.from_int(n) * x for x in es[i]] for i in range(1, p)]
    L = echelonize(ctx, basis, n)
    # closure under the generators of H makes L an OH-module containing z
    closed = all(contains(L, shift(list(b), i)) for b in L.basis for i in range(p))
    # and each claimed basis vector lies in OH z: |H| e(psi_i) = z - v_i z
    diffs_ok = all(
        [a - b for a, b in zip(z, shift(z, i))] == [F.from_int(n) * x for x in es[i]] for i in range(p)
    )
    basis_confirmed = closed and diffs_ok and L.rank == p
    pure = is_pure(L, full_lattice(ctx, n))
    # witness: beta_2 = 1, beta_3 = -1 (units summing to 0), alpha = 0
    w = [F.from_int(n) * (a - b) for a, b in zip(es[1], es[2])]
    w_div = all(ctx.valuation(x) >= 1 for x in w if any(x.num))
    w_over = [x * one_minus.inverse() for x in w]
    witness_ok = w_div and contains(L, w) and not contains(L, w_over)
    report = {
        "p": p,
        "m": ctx.m,
        "order_H": n,
        "lambda_exponent": t,
        "z_integral": z_integral,
        "z_minimal": minimal,
        "basis_confirmed": basis_confirmed,
        "pure": pure,
        "witness_divisible": w_div,
        "witness_in_OHz": contains(L, w),
        "witness_quotient_in_OHz": contains(L, w_over),
        "witness_ok": witness_ok,
    }
    if with_group is None:
        with_group = p == 3
    if with_group:
        from .groups import wreath
        from .characters import induce_linear

        G = wreath(p)
        gctx = default_context(G, p)
        H = tuple(g for g in range(G.n) if G.labels[g][p] == 0)
        eta = {h: (G.exponent // p) * G.labels[h][0] for h in H}
        chi_ind = induce_linear(G, H, eta)
        table = character_table(G)
        chi = next(c for c in table if c.values == chi_ind.in_field(table.m))
        sym, cert = is_symmetric_quotient(G, chi, gctx)
        report.update({
            "induced_irreducible": chi_ind.irreducible,
            "chi_index": chi.index,
            "symmetric": sym,
            "group_rank_K": cert["rank_K"],
            "group_rank_k": cert["rank_k"],
            "group_lambda_exponent": cert["lambda_exponent"],
        })
    report["verdict"] = "PASS" if (basis_confirmed and not pure and witness_ok and not report.get("symmetric", False)) else "FAIL"
    return report
