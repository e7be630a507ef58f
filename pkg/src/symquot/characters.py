"""Ordinary characters: Dixon-Schneider tables, induction, monomial realizations, blocks.

Character values live in Q(zeta_e) with e = exp(G).  A monomial
realization stores each matrix M(g) as a permutation and a vector of
exponents: column j of M(g) has the single entry zeta_e^exps[j] in row
perm[j].
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy

from .cyclotomic import CycNum, LocalContext, _vp, change_conductor, cyclotomic_field
from .groups import Group
from .linalg import hnf, hnf_contains, nullspace_mod_p


class CharacterError(ValueError):
    pass


@dataclass(eq=False)
class Character:
    group: Group
    values: tuple            # CycNum per conjugacy class
    index: int | None = None
    irreducible: bool | None = None

    @property
    def degree(self) -> int:
        return int(self.values[0].rational())

    @property
    def field(self):
        return self.values[0].field

    def __call__(self, g: int) -> CycNum:
        return self.values[self.group.class_of[g]]

    def on_elements(self) -> list:
        return [self.values[c] for c in self.group.class_of]

    def is_linear(self) -> bool:
        return self.degree == 1

    def in_field(self, m: int) -> tuple:
        return tuple(change_conductor(v, m) for v in self.values)

    def __repr__(self):
        return f"Character(#{self.index}, degree={self.degree})"


def inner_product(G: Group, a, b) -> Fraction:
    """<a, b> = (1/|G|) sum_C |C| a(C) conj(b(C)) for class-function value tuples."""
    s = a[0].field.zero()
    for size, x, y in zip(G.class_sizes, a, b):
        s = s + x * y.complex_conjugate() * size
    if not s.is_rational():
        raise CharacterError("inner product is not rational")
    return s.rational() / G.n


class CharacterTable:
    def __init__(self, group: Group, characters: list):
        self.group = group
        self.characters = characters
        self.m = group.exponent
        self.field = cyclotomic_field(self.m)

    def __len__(self):
        return len(self.characters)

    def __iter__(self):
        return iter(self.characters)

    def __getitem__(self, i) -> Character:
        return self.characters[i]

    @property
    def degrees(self) -> list[int]:
        return [c.degree for c in self.characters]

    def check_orthogonality(self) -> bool:
        G = self.group
        r = len(G.classes)
        if len(self.characters) != r:
            return False
        for i, a in enumerate(self.characters):
            for j, b in enumerate(self.characters[i:], start=i):
                if inner_product(G, a.values, b.values) != (1 if i == j else 0):
                    return False
        # column relation: sum_chi chi(g_C) conj(chi(g_D)) = delta |C_G(g_C)|
        for c in range(r):
            for d in range(c, r):
                s = self.field.zero()
                for chi in self.characters:
                    s = s + chi.values[c] * chi.values[d].complex_conjugate()
                want = G.n // G.class_sizes[c] if c == d else 0
                if s != want:
                    return False
        return True


# ---------------------------------------------------------------------------
# Dixon-Schneider

def class_structure_constants(G: Group) -> np.ndarray:
    """a[i, j, k] = #{x in C_i : x^-1 g_k in C_j}, so C_i C_j = sum_k a[i,j,k] C_k."""
    r = len(G.classes)
    co = np.array(G.class_of)
    a = np.zeros((r, r, r), dtype=np.int64)
    for k, gk in enumerate(G.class_reps):
        js = co[G.table[G.inv, gk]]
        np.add.at(a[:, :, k], (co, js), 1)
    return a


def _splitting_prime(G: Group) -> int:
    e = G.exponent
    bound = 2 * math.isqrt(G.n) + 2
    ell = e + 1
    while not (ell > bound and sympy.isprime(ell)):
        ell += e
    return ell


def _split_spaces(a: np.ndarray, ell: int) -> list[np.ndarray]:
    r = a.shape[0]
    spaces = [np.eye(r, dtype=np.int64)]
    for i in range(1, r):
        if all(S.shape[0] == 1 for S in spaces):
            break
        Mi = a[i] % ell
        new = []
        for B in spaces:
            if B.shape[0] == 1:
                new.append(B)
                continue
            MB = (Mi @ B.T) % ell
            found = 0
            for lam in range(ell):
                ns = nullspace_mod_p((MB - lam * B.T) % ell, ell)
                if ns.shape[0]:
                    new.append((ns @ B) % ell)
                    found += ns.shape[0]
                    if found == B.shape[0]:
                        break
            if found != B.shape[0]:
                raise CharacterError("class matrix not diagonalisable modulo the auxiliary prime")
        spaces = new
    if len(spaces) != r:
        raise CharacterError("character count does not match class count")
    return spaces


def character_table(G: Group) -> CharacterTable:
    cache = getattr(G, "_character_table", None)
    if cache is not None:
        return cache
    n = G.n
    r = len(G.classes)
    e = G.exponent
    F = cyclotomic_field(e)
    sizes = G.class_sizes
    inv_cls = G.inverse_class
    ell = _splitting_prime(G)
    gen = int(sympy.primitive_root(ell))
    z = pow(gen, (ell - 1) // e, ell)
    spaces = _split_spaces(class_structure_constants(G), ell)

    # power maps on classes: pw[c][i] = class of g_c^i
    orders = [G.element_orders[c[0]] for c in G.classes]
    pw = []
    for c, rep in enumerate(G.class_reps):
        row, x = [], 0
        for _ in range(orders[c]):
            row.append(G.class_of[x])
            x = int(G.table[x, rep])
        pw.append(row)

    chars = []
    for S in spaces:
        w = [int(x) for x in S[0]]
        w0inv = pow(w[0], -1, ell)
        w = [x * w0inv % ell for x in w]
        s = sum(w[k] * w[inv_cls[k]] * pow(sizes[k], -1, ell) for k in range(r)) % ell
        d2 = n * pow(s, -1, ell) % ell
        deg = next((d for d in range(1, math.isqrt(n) + 1) if d * d % ell == d2), None)
        if deg is None:
            raise CharacterError("no degree matches the central character")
        vals_mod = [deg * w[k] * pow(sizes[k], -1, ell) % ell for k in range(r)]
        values = []
        for k in range(r):
            o = orders[k]
            step = e // o
            zo_inv = pow(z, -step, ell)
            roots = np.array([pow(zo_inv, t, ell) for t in range(o)], dtype=np.int64)
            idx = np.arange(o)
            dft = roots[np.outer(idx, idx) % o]
            v = np.array([vals_mod[c] for c in pw[k]], dtype=np.int64)
            mus = (dft @ v) % ell * pow(o, -1, ell) % ell
            acc = F.zero()
            for j in range(o):
                mu = int(mus[j])
                if mu > deg:
                    raise CharacterError("eigenvalue multiplicity out of range")
                if mu:
                    acc = acc + F.zeta(step * j) * mu
            values.append(acc)
        chars.append(tuple(values))

    def key(vals):
        return (int(vals[0].rational()), [(v.den, v.num) for v in vals])

    trivial = tuple(F.one() for _ in range(r))
    chars.sort(key=lambda v: (v != trivial, key(v)))
    table = CharacterTable(G, [Character(G, v, i, True) for i, v in enumerate(chars)])
    if sum(c.degree ** 2 for c in table) != n:
        raise CharacterError("sum of squared degrees differs from the group order")
    G._character_table = table
    return table


# ---------------------------------------------------------------------------
# induction and monomial realizations

def _as_exponents(G: Group, H, eta) -> dict:
    """Normalise a linear character on H to a dict h -> k meaning zeta_e^k."""
    e = G.exponent
    if isinstance(eta, dict) and all(isinstance(v, int) for v in eta.values()):
        return {h: v % e for h, v in eta.items()}
    F = cyclotomic_field(e)
    roots = {F.zeta(k): k for k in range(e)}
    vals = eta.items() if isinstance(eta, dict) else zip(H, eta)
    out = {}
    for h, v in vals:
        v = change_conductor(v, e) if isinstance(v, CycNum) else F.from_rational(v)
        if v not in roots:
            raise CharacterError("linear character values must be roots of unity")
        out[h] = roots[v]
    return out


def induce_linear(G: Group, H, eta) -> Character:
    """Ind_H^G of a linear character; ``eta`` maps elements of H to values (or exponents of zeta_e)."""
    H = tuple(sorted(int(h) for h in H))
    if not G.is_subgroup(H):
        raise CharacterError("H is not a subgroup")
    ex = _as_exponents(G, H, eta)
    if set(ex) != set(H):
        raise CharacterError("eta must be defined on all of H")
    e = G.exponent
    T = G.table
    for a in H:
        for b in H:
            if (ex[a] + ex[b] - ex[int(T[a, b])]) % e:
                raise CharacterError("eta is not a homomorphism")
    F = cyclotomic_field(e)
    values = []
    for rep in G.class_reps:
        counts = [0] * e
        for x in range(G.n):
            y = int(T[T[x, rep], G.inv[x]])
            if y in ex:
                counts[ex[y]] += 1
        acc = F.zero()
        for k, c in enumerate(counts):
            if c:
                acc = acc + F.zeta(k) * c
        values.append(acc * F.from_rational(Fraction(1, len(H))))
    chi = Character(G, tuple(values))
    chi.irreducible = inner_product(G, chi.values, chi.values) == 1
    return chi


def linear_characters(G: Group, H):
    """All homomorphisms H -> <zeta_e> as dicts h -> exponent (deterministic order)."""
    H = tuple(H)
    e = G.exponent
    gens = G.small_generating_set(H) if len(H) > 1 else []
    T = G.table
    choices = [range(0, e, e // G.element_orders[g]) for g in gens]
    Ha = np.array(H, dtype=np.int64)
    prods = T[np.ix_(Ha, Ha)]
    for images in itertools.product(*choices):
        eta = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, k in zip(gens, images):
                    y = int(T[x, g])
                    v = (eta[x] + k) % e
                    old = eta.get(y)
                    if old is None:
                        eta[y] = v
                        nxt.append(y)
                    elif old != v:
                        ok = False
                        break
                if not ok:
                    break
            frontier = nxt
        if ok:
            # homomorphism on the whole subgroup, not just along generators
            ev = np.zeros(G.n, dtype=np.int64)
            ev[list(eta)] = list(eta.values())
            eh = ev[Ha]
            if not np.any((eh[:, None] + eh[None, :] - ev[prods]) % e):
                yield eta


@dataclass(eq=False)
class MonomialRealization:
    group: Group
    subgroup: tuple
    eta: dict                  # h -> exponent of zeta_e
    transversal: list
    perms: np.ndarray          # perms[g, j] = row of the nonzero entry in column j
    exps: np.ndarray           # exps[g, j] = exponent of zeta_e in that entry
    e: int = field(default=1)

    @property
    def degree(self) -> int:
        return len(self.transversal)

    def matrix(self, g: int, m: int | None = None) -> list[list[CycNum]]:
        m = m or self.e
        F = cyclotomic_field(m)
        step = m // self.e
        d = self.degree
        M = [[F.zero()] * d for _ in range(d)]
        for j in range(d):
            M[int(self.perms[g, j])][j] = F.zeta(int(self.exps[g, j]) * step)
        return M

    def trace(self, g: int, m: int | None = None) -> CycNum:
        m = m or self.e
        F = cyclotomic_field(m)
        step = m // self.e
        acc = F.zero()
        for j in range(self.degree):
            if self.perms[g, j] == j:
                acc = acc + F.zeta(int(self.exps[g, j]) * step)
        return acc

    def is_homomorphism(self) -> bool:
        G = self.group
        P, E = self.perms, self.exps
        for a in range(G.n):
            prod = G.table[a]
            # (M(a) M(b)) column j: entry of M(a) in column P[b, j], scaled
            if not np.array_equal(P[a][P], P[prod]):
                return False
            if np.any((E[a][P] + E - E[prod]) % self.e):
                return False
        return True

    def check(self, chi: Character) -> bool:
        G = self.group
        return self.is_homomorphism() and all(
            change_conductor(self.trace(g), chi.field.m) == chi(g) for g in range(G.n)
        )


def realize_from(G: Group, H, eta: dict) -> MonomialRealization:
    H = tuple(H)
    Hs = set(H)
    reps = G.left_transversal(H)
    coset = {}
    for i, t in enumerate(reps):
        for h in H:
            coset[int(G.table[t, h])] = i
    d = len(reps)
    P = np.empty((G.n, d), dtype=np.int64)
    E = np.empty((G.n, d), dtype=np.int64)
    for g in range(G.n):
        for j, t in enumerate(reps):
            x = int(G.table[g, t])
            i = coset[x]
            h = int(G.table[G.inv[reps[i]], x])
            assert h in Hs
            P[g, j] = i
            E[g, j] = eta[h]
    return MonomialRealization(G, H, dict(eta), reps, P, E, G.exponent)


def monomial_realization(G: Group, chi: Character) -> MonomialRealization | None:
    """Search subgroups of index chi(1) and their linear characters; None if none induces chi."""
    d = chi.degree
    e = G.exponent
    F = cyclotomic_field(e)
    chi_e = chi.in_field(e)
    vals = [chi_e[c] for c in G.class_of]
    if d == 1:
        # a linear character is its own realization; read the exponents off its values
        exps = {F.zeta(k).num: k for k in range(e)}
        eta = {g: exps[vals[g].num] for g in range(G.n)}
        R = realize_from(G, tuple(range(G.n)), eta)
        if not R.check(chi):
            raise CharacterError("linear character is not a homomorphism")
        return R
    for H in G.subgroups_of_order(G.n // d):
        for eta in linear_characters(G, H):
            # <chi_H, eta> up to a positive factor, grouped by the exponent of eta
            by_exp = {}
            for h in H:
                k = eta[h]
                by_exp[k] = by_exp[k] + vals[h] if k in by_exp else vals[h]
            s = F.zero()
            for k, v in by_exp.items():
                s = s + v * F.zeta(-k)
            if s.is_zero():
                continue
            R = realize_from(G, H, eta)
            if not R.check(chi):
                raise CharacterError("induced realization does not reproduce the character")
            return R
    return None


# ---------------------------------------------------------------------------
# p-modular data from the ordinary table

def _brauer_lattice(table: CharacterTable, p: int):
    cache = getattr(table, "_brauer", None)
    if cache is None:
        cache = table._brauer = {}
    if p in cache:
        return cache[p]
    G = table.group
    reg = G.p_regular_classes(p)
    e = table.m
    m_reg = e
    while m_reg % p == 0:
        m_reg //= p
    rows = []
    for chi in table:
        row = []
        for c in reg:
            v = change_conductor(chi.values[c], m_reg)
            if v.den != 1:
                raise CharacterError("character value is not an algebraic integer")
            row.extend(v.num)
        rows.append(row)
    H = hnf(rows)
    cache[p] = (rows, H, reg, m_reg)
    return cache[p]


def brauer_restriction(table: CharacterTable, p: int, chi: Character) -> list:
    """Values of chi on the p-regular classes."""
    return [chi.values[c] for c in table.group.p_regular_classes(p)]


def decomposition_divisible_by_p(G: Group, p: int, chi: Character, table: CharacterTable | None = None) -> bool:
    """Whether chi restricted to p-regular classes lies in p times the span of all such restrictions."""
    table = table or character_table(G)
    rows, H, _, _ = _brauer_lattice(table, p)
    row = rows[chi.index]
    if any(x % p for x in row):
        return False
    return hnf_contains(H, [x // p for x in row])


def brauer_lattice_rank(G: Group, p: int, table: CharacterTable | None = None) -> int:
    table = table or character_table(G)
    return len(_brauer_lattice(table, p)[1])


def central_character(G: Group, chi: Character, m: int | None = None) -> list:
    """omega_chi(C) = |C| chi(g_C) / chi(1)."""
    vals = chi.in_field(m) if m else chi.values
    return [v * Fraction(size, chi.degree) for v, size in zip(vals, G.class_sizes)]


def block_partition(G: Group, ctx: LocalContext, table: CharacterTable | None = None) -> list[list[int]]:
    """Blocks as lists of character indices, ordered by least index (principal block first)."""
    cache = G.__dict__.setdefault("_blocks", {})
    if (ctx.m, ctx.p) in cache:
        return cache[(ctx.m, ctx.p)]
    table = table or character_table(G)
    omegas = [central_character(G, chi, ctx.m) for chi in table]
    for om in omegas:
        if any(ctx.valuation(x) < 0 for x in om):
            raise CharacterError("central character is not integral")
    keys = [tuple(ctx.residue_tuple(x) for x in om) for om in omegas]
    groups: dict = {}
    for i, k in enumerate(keys):
        groups.setdefault(k, []).append(i)
    cache[(ctx.m, ctx.p)] = sorted(groups.values())
    return cache[(ctx.m, ctx.p)]


def height(G: Group, p: int, chi: Character, ctx: LocalContext, table: CharacterTable | None = None) -> int:
    table = table or character_table(G)
    for block in block_partition(G, ctx, table):
        if chi.index in block:
            return _vp(chi.degree, p) - min(_vp(table[i].degree, p) for i in block)
    raise CharacterError("character not in table")


def is_central_type(G: Group, chi: Character) -> bool:
    return chi.degree ** 2 * len(G.center) == G.n
