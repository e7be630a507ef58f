"""Finite groups as explicit multiplication tables.

Family constructors build elements as normal-form tuples, sort them
lexicographically (the identity tuple is all zeros and comes first) and
tabulate the product.  Internally elements are 0-based indices with 0 the
identity; the file format is 1-based.
"""
from __future__ import annotations

import itertools
import math
from functools import cached_property
from importlib import resources
from pathlib import Path

import numpy as np
import sympy


class GroupError(ValueError):
    pass


class Group:
    def __init__(self, table, labels=None, name: str = ""):
        T = np.asarray(table, dtype=np.int64)
        n = T.shape[0]
        if T.shape != (n, n) or n == 0:
            raise GroupError("multiplication table must be square and nonempty")
        if T.min() < 0 or T.max() >= n:
            raise GroupError("table entries out of range")
        if not (np.array_equal(T[0], np.arange(n)) and np.array_equal(T[:, 0], np.arange(n))):
            raise GroupError("element 1 is not the identity")
        for row in T:
            if len(np.unique(row)) != n:
                raise GroupError("table is not a Latin square")
        self.table = T
        self.n = n
        self.name = name
        self.labels = labels if labels is not None else list(range(n))
        inv = np.empty(n, dtype=np.int64)
        for g in range(n):
            inv[g] = int(np.nonzero(T[g] == 0)[0][0])
        if not np.array_equal(T[np.arange(n), inv], np.zeros(n, dtype=np.int64)):
            raise GroupError("left and right inverses differ")
        self.inv = inv

    # -- basic structure -------------------------------------------------

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Group({self.name or '?'}, order={self.n})"

    @property
    def order(self) -> int:
        return self.n

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def check_associative(self, sample: int | None = None) -> bool:
        T = self.table
        n = self.n
        if sample is None:
            idx = np.arange(n)
            for a in range(n):
                left = T[T[a][:, None], idx[None, :]]  # (a b) c
                right = T[a][T]                       # a (b c)
                if not np.array_equal(left, right):
                    return False
            return True
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, sample))
        return bool(np.all(T[T[a, b], c] == T[a, T[b, c]]))

    def power(self, g: int, k: int) -> int:
        k %= self.element_order(g)
        out = 0
        for _ in range(k):
            out = int(self.table[out, g])
        return out

    @cached_property
    def element_orders(self) -> list[int]:
        orders = []
        for g in range(self.n):
            x, k = g, 1
            while x != 0:
                x = int(self.table[x, g])
                k += 1
            orders.append(k)
        return orders

    def element_order(self, g: int) -> int:
        return self.element_orders[g]

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.element_orders)

    @cached_property
    def classes(self) -> list[tuple[int, ...]]:
        """Conjugacy classes, each sorted, ordered by least member (identity first)."""
        T, inv = self.table, self.inv
        seen = np.full(self.n, -1)
        out = []
        for g in range(self.n):
            if seen[g] >= 0:
                continue
            orbit = sorted({int(T[T[x, g], inv[x]]) for x in range(self.n)})
            for y in orbit:
                seen[y] = len(out)
            out.append(tuple(orbit))
        self._class_of = [int(c) for c in seen]
        return out

    @property
    def class_of(self) -> list[int]:
        self.classes
        return self._class_of

    @property
    def class_reps(self) -> list[int]:
        return [c[0] for c in self.classes]

    @property
    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    @cached_property
    def inverse_class(self) -> list[int]:
        return [self.class_of[int(self.inv[c[0]])] for c in self.classes]

    def power_class(self, i: int, k: int) -> int:
        return self.class_of[self.power(self.classes[i][0], k)]

    @cached_property
    def center(self) -> list[int]:
        return [c[0] for c in self.classes if len(c) == 1]

    def is_abelian(self) -> bool:
        return np.array_equal(self.table, self.table.T)

    # -- p-local data -----------------------------------------------------

    def p_regular_elements(self, p: int) -> list[int]:
        return [g for g in range(self.n) if self.element_orders[g] % p]

    def p_regular_classes(self, p: int) -> list[int]:
        """Indices of classes whose elements have order prime to p."""
        return [i for i, c in enumerate(self.classes) if self.element_orders[c[0]] % p]

    def is_p_nilpotent(self, p: int) -> bool:
        regular = self.p_regular_elements(p)
        members = np.zeros(self.n, dtype=bool)
        members[regular] = True
        sub = self.table[np.ix_(regular, regular)]
        return bool(members[sub].all())

    def sylow_is_cyclic(self, p: int) -> bool:
        pp = p ** _vp(self.n, p)
        return any(o == pp for o in self.element_orders)

    def is_cyclic(self) -> bool:
        return self.n in self.element_orders

    # -- subgroups --------------------------------------------------------

    def closure(self, gens) -> tuple[int, ...]:
        elems = {0}
        frontier = [0]
        gens = [int(g) for g in gens]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = int(self.table[x, g])
                    if y not in elems:
                        elems.add(y)
                        new.append(y)
            frontier = new
        return tuple(sorted(elems))

    def is_subgroup(self, H) -> bool:
        S = set(int(h) for h in H)
        if 0 not in S:
            return False
        return all(int(self.table[a, b]) in S for a in S for b in S)

    def is_normal(self, H) -> bool:
        S = set(H)
        T, inv = self.table, self.inv
        return all(int(T[T[g, h], inv[g]]) in S for g in range(self.n) for h in S)

    @cached_property
    def cyclic_subgroups(self) -> list[tuple[int, ...]]:
        return sorted({self.closure([g]) for g in range(self.n)}, key=lambda H: (len(H), H))

    def subgroups_of_order(self, k: int) -> list[tuple[int, ...]]:
        """All subgroups of order k, found as joins of cyclic subgroups."""
        if self.n % k:
            return []
        cache = self.__dict__.setdefault("_subgroups_by_order", {})
        if k not in cache:
            cache[k] = self._subgroups_of_order(k)
        return cache[k]

    def _subgroups_of_order(self, k: int) -> list[tuple[int, ...]]:
        cyc = [H for H in self.cyclic_subgroups if k % len(H) == 0]
        found = set(cyc)
        frontier = list(cyc)
        while frontier:
            new = []
            for H in frontier:
                if len(H) == k:
                    continue
                Hs = set(H)
                for C in cyc:
                    if Hs.issuperset(C):
                        continue
                    J = self.closure(H + C)
                    if k % len(J) == 0 and J not in found:
                        found.add(J)
                        new.append(J)
            frontier = new
        return sorted((H for H in found if len(H) == k))

    def small_generating_set(self, H) -> list[int]:
        gens: list[int] = []
        span = (0,)
        for h in sorted(H, key=lambda x: (-self.element_orders[x], x)):
            if h not in span:
                gens.append(h)
                span = self.closure(gens)
                if len(span) == len(H):
                    break
        return gens

    def left_transversal(self, H) -> list[int]:
        """Representatives t with G = disjoint union of t H, least element of each coset."""
        seen = set()
        reps = []
        for g in range(self.n):
            if g in seen:
                continue
            reps.append(g)
            seen.update(int(self.table[g, h]) for h in H)
        return reps


def _vp(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def from_elements(elements, product, name: str) -> Group:
    elements = sorted(elements)
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    T = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            T[i, j] = index[product(a, b)]
    G = Group(T, labels=elements, name=name)
    if not G.check_associative(None if n <= 128 else 4096):
        raise GroupError(f"{name}: product is not associative")
    return G


# ---------------------------------------------------------------------------
# families

def metacyclic(M: int, N: int, r: int, c: int, name: str) -> Group:
    """<s, t | s^M, t^N = s^c, t s t^-1 = s^r>; elements s^a t^b as (a, b)."""
    if pow(r, N, M) != 1 % M or (c * (r - 1)) % M:
        raise GroupError(f"{name}: inconsistent metacyclic data")
    rp = [pow(r, b, M) for b in range(N)]

    def prod(x, y):
        a1, b1 = x
        a2, b2 = y
        a = a1 + rp[b1] * a2
        b = b1 + b2
        if b >= N:
            b -= N
            a += c
        return (a % M, b)

    return from_elements([(a, b) for a in range(M) for b in range(N)], prod, name)


def _power_of(n: int, p: int) -> int | None:
    k = 0
    while n > 1 and n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


def cyclic(n: int) -> Group:
    if n < 1:
        raise GroupError("cyclic order must be positive")
    return metacyclic(n, 1, 1, 0, f"cyclic:{n}")


def dihedral(n: int) -> Group:
    if n < 4 or n % 2:
        raise GroupError("dihedral order must be even and at least 4")
    return metacyclic(n // 2, 2, -1 % (n // 2), 0, f"dihedral:{n}")


def quaternion(n: int) -> Group:
    if _power_of(n, 2) is None or n < 8:
        raise GroupError("quaternion order must be a power of 2, at least 8")
    M = n // 2
    return metacyclic(M, 2, M - 1, M // 2, f"quaternion:{n}")


def semidihedral(n: int) -> Group:
    """Order n = 2^(k+1), s of order 2^k, t s t^-1 = s^(1 + 2^(k-1))."""
    if _power_of(n, 2) is None or n < 16:
        raise GroupError("semidihedral order must be a power of 2, at least 16")
    M = n // 2
    return metacyclic(M, 2, 1 + M // 2, 0, f"semidihedral:{n}")


def quasidihedral(n: int) -> Group:
    """Order n = 2^(k+1), s of order 2^k, t s t^-1 = s^(-1 + 2^(k-1))."""
    if _power_of(n, 2) is None or n < 16:
        raise GroupError("quasidihedral order must be a power of 2, at least 16")
    M = n // 2
    return metacyclic(M, 2, M // 2 - 1, 0, f"quasidihedral:{n}")


def modular(n: int) -> Group:
    """Order p^k: s of order p^(k-1), t of order p, t s t^-1 = s^(1 + p^(k-2))."""
    fac = sympy.factorint(n)
    if len(fac) != 1:
        raise GroupError("modular order must be a prime power")
    (p, k), = fac.items()
    if k < 3 or (p == 2 and k < 4):
        raise GroupError("modular group needs order p^k with k >= 3 (k >= 4 for p = 2)")
    M = p ** (k - 1)
    return metacyclic(M, p, 1 + p ** (k - 2), 0, f"modular:{n}")


def heisenberg(p: int) -> Group:
    def prod(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return from_elements(list(itertools.product(range(p), repeat=3)), prod, f"extraspecial:{p}:+")


def extraspecial(p: int, sign: str) -> Group:
    if p == 2:
        G = dihedral(8) if sign == "+" else quaternion(8)
    elif sign == "+":
        G = heisenberg(p)
    else:
        G = modular(p ** 3)
    G.name = f"extraspecial:{p}:{sign}"
    return G


def wreath(p: int) -> Group:
    """C_p wr C_p: pairs (v, k), v in (Z/p)^p, with the generator of the top shifting coordinates."""

    def prod(x, y):
        v, k = x[:p], x[p]
        w, l = y[:p], y[p]
        shifted = tuple(w[(i - k) % p] for i in range(p))
        return tuple((a + b) % p for a, b in zip(v, shifted)) + ((k + l) % p,)

    elems = list(itertools.product(range(p), repeat=p + 1))
    return from_elements(elems, prod, f"wreath:{p}")


def direct_product(A: Group, B: Group) -> Group:
    n, m = A.n, B.n
    T = np.empty((n * m, n * m), dtype=np.int64)
    for a1 in range(n):
        for b1 in range(m):
            row = A.table[a1][:, None] * m + B.table[b1][None, :]
            T[a1 * m + b1] = row.reshape(-1)
    labels = [(x, y) for x in A.labels for y in B.labels]
    return Group(T, labels=labels, name=f"product:{A.name}*{B.name}")


# ---------------------------------------------------------------------------
# files and descriptors

def read_table(path) -> Group:
    text = Path(path).read_text().split()
    try:
        nums = [int(x) for x in text]
    except ValueError as exc:
        raise GroupError(f"{path}: non-integer entry") from exc
    if not nums:
        raise GroupError(f"{path}: empty file")
    n = nums[0]
    if n < 1 or len(nums) != 1 + n * n:
        raise GroupError(f"{path}: expected {n * n} table entries")
    T = np.array(nums[1:], dtype=np.int64).reshape(n, n) - 1
    G = Group(T, name=f"file:{path}")
    if not G.check_associative():
        raise GroupError(f"{path}: table is not associative")
    return G


def write_table(G: Group, path) -> None:
    lines = [str(G.n)] + [" ".join(str(int(x) + 1) for x in row) for row in G.table]
    Path(path).write_text("\n".join(lines) + "\n")


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("symquot") / "data" / name))


def _resolve_file(path: str) -> Path:
    P = Path(path)
    if P.exists():
        return P
    bundled = fixture_path(path if path.endswith(".tab") else path + ".tab")
    if bundled.exists():
        return bundled
    raise GroupError(f"no such table file: {path}")


def _int(s: str, what: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise GroupError(f"bad {what}: {s!r}") from None


_FAMILIES = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "quaternion": quaternion,
    "semidihedral": semidihedral,
    "quasidihedral": quasidihedral,
    "modular": modular,
}


def build(spec: str) -> Group:
    """Group from a descriptor such as ``dihedral:16``, ``extraspecial:3:+``, ``product:cyclic:2*cyclic:3``."""
    spec = spec.strip()
    head, _, rest = spec.partition(":")
    if not rest:
        raise GroupError(f"malformed group descriptor: {spec!r}")
    if head == "product":
        parts = rest.split("*")
        if len(parts) < 2 or not all(parts):
            raise GroupError(f"malformed product descriptor: {spec!r}")
        G = build(parts[0])
        for part in parts[1:]:
            G = direct_product(G, build(part))
        G.name = spec
        return G
    if head == "file":
        G = read_table(_resolve_file(rest))
        G.name = spec
        return G
    if head in _FAMILIES:
        G = _FAMILIES[head](_int(rest, "order"))
        G.name = spec
        return G
    if head == "wreath":
        p = _int(rest, "prime")
        if not sympy.isprime(p):
            raise GroupError("wreath needs a prime")
        return wreath(p)
    if head == "extraspecial":
        q, _, sign = rest.partition(":")
        q = _int(q, "prime")
        if sign not in ("+", "-"):
            raise GroupError("extraspecial sign must be + or -")
        p = q
        if not sympy.isprime(q):
            root = round(q ** (1 / 3))
            if root ** 3 != q or not sympy.isprime(root):
                raise GroupError("extraspecial needs a prime p or its cube p^3")
            p = root
        G = extraspecial(p, sign)
        G.name = spec
        return G
    raise GroupError(f"unknown group family: {head!r}")
