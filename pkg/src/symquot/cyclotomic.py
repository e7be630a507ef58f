"""Exact arithmetic in Q(zeta_m) and in its localisation at a prime above p.

Elements are stored in the power basis of Z[zeta_m] with a single positive
rational denominator.  A :class:`LocalContext` fixes a prime ``P`` above
``p`` and exposes the valuation ``v_P`` (normalised so the uniformizer has
valuation one), the reduction map onto the residue field ``k = F_p[y]/(g)``
and division by powers of the uniformizer.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
import sympy

INF = math.inf


def _vp(n: int, p: int) -> int:
    n = abs(n)
    if n == 0:
        return 0
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _factorint(n: int) -> dict:
    return sympy.factorint(n)


def euler_phi(n: int) -> int:
    return int(sympy.totient(n))


class CyclotomicField:
    """Q(zeta_m) with its power basis 1, zeta, ..., zeta^(phi(m)-1)."""

    __slots__ = ("m", "degree", "_low", "_pow", "_red", "_red_bound", "__weakref__")

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("conductor must be positive")
        self.m = m
        x = sympy.Symbol("x")
        coeffs = [int(c) for c in sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()[::-1]]
        self.degree = len(coeffs) - 1
        # x^phi = -sum(low)
        self._low = tuple((j, c) for j, c in enumerate(coeffs[:-1]) if c)
        pows = []
        for k in range(m):
            v = [0] * (max(k + 1, self.degree))
            v[k] = 1
            pows.append(self._reduce(v))
        self._pow = tuple(pows)
        # rows x^k mod Phi_m for k = degree .. 2*degree-2, used by the int64 fast path
        n = self.degree
        red = [self._reduce([0] * k + [1]) for k in range(n, 2 * n - 1)] if n > 1 else []
        self._red = np.array(red, dtype=np.int64).reshape(-1, n)
        self._red_bound = max((abs(int(x)) for x in self._red.flat), default=0) * n + 1

    def _reduce(self, prod: list) -> tuple:
        n = self.degree
        low = self._low
        for k in range(len(prod) - 1, n - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                base = k - n
                for j, cj in low:
                    prod[base + j] -= c * cj
        return tuple(prod[:n]) if len(prod) >= n else tuple(prod) + (0,) * (n - len(prod))

    # -- constructors ----------------------------------------------------
    def zero(self) -> "CycNum":
        return CycNum(self, (0,) * self.degree, 1, _normalized=True)

    def one(self) -> "CycNum":
        return self.from_int(1)

    def from_int(self, c: int) -> "CycNum":
        return CycNum(self, (c,) + (0,) * (self.degree - 1), 1)

    def from_rational(self, q) -> "CycNum":
        q = Fraction(q)
        return CycNum(self, (q.numerator,) + (0,) * (self.degree - 1), q.denominator)

    def zeta(self, k: int = 1) -> "CycNum":
        return CycNum(self, self._pow[k % self.m], 1, _normalized=True)

    def __call__(self, value) -> "CycNum":
        if isinstance(value, CycNum):
            return change_conductor(value, self.m)
        return self.from_rational(value)

    def __repr__(self):
        return f"CyclotomicField({self.m})"


@lru_cache(maxsize=None)
def cyclotomic_field(m: int) -> CyclotomicField:
    return CyclotomicField(m)


_KRON_OFFSET: dict = {}
_INT64_SAFE = 1 << 62


def _kron_mul(field: CyclotomicField, a: tuple, b: tuple) -> tuple:
    n = field.degree
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    if not ma or not mb:
        return (0,) * n
    if ma * mb * n * field._red_bound < _INT64_SAFE:
        # every product coefficient and every reduced coefficient fits in int64
        prod = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64))
        return tuple((prod[:n] + prod[n:] @ field._red).tolist())
    # large coefficients: pack into one integer each, multiply once, unpack digits
    k = (ma.bit_length() + mb.bit_length() + n.bit_length() + 9) // 8 * 8
    A = 0
    for c in reversed(a):
        A = (A << k) + c
    B = 0
    for c in reversed(b):
        B = (B << k) + c
    L = 2 * n - 1
    off = _KRON_OFFSET.get((k, L))
    if off is None:
        off = _KRON_OFFSET[(k, L)] = sum(1 << (k * j + k - 1) for j in range(L))
    raw = (A * B + off).to_bytes(L * k // 8 + 1, "little")
    kb = k // 8
    half = 1 << (k - 1)
    prod = [int.from_bytes(raw[j * kb:(j + 1) * kb], "little") - half for j in range(L)]
    return field._reduce(prod)


def _poly_mul(field: CyclotomicField, a: tuple, b: tuple) -> tuple:
    n = field.degree
    if n >= 8:
        return _kron_mul(field, a, b)
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    return field._reduce(prod)


def _mul_matrix(q: "CycNum"):
    """Integer matrix whose row i is q.num * zeta^i, or None when int64 could overflow."""
    field = q.field
    n = field.degree
    mq = max(map(abs, q.num))
    if mq * field._red_bound >= _INT64_SAFE:
        return None
    S = np.zeros((n, 2 * n - 1), dtype=np.int64)
    qa = np.array(q.num, dtype=np.int64)
    for i in range(n):
        S[i, i:i + n] = qa
    return S[:, :n] + S[:, n:] @ field._red, mq * field._red_bound


def mul_many(q: "CycNum", xs: Sequence["CycNum"]) -> list:
    """[q * x for x in xs], as one integer matrix product when the entries are small."""
    return sub_mul_many(None, q, xs)


def sub_mul_many(ys, q: "CycNum", xs: Sequence["CycNum"]) -> list:
    """[y - q * x for y, x in zip(ys, xs)] (or [q * x] when ys is None), vectorised when safe."""
    field = q.field
    n = field.degree
    if not any(q.num) or n < 4 or len(xs) < 4:
        return [q * x for x in xs] if ys is None else [y - q * x for y, x in zip(ys, xs)]
    mm = _mul_matrix(q)
    if mm is not None:
        M, mbound = mm
        mx = max(max(map(abs, x.num)) for x in xs)
        pbound = mx * mbound * n
        if pbound < _INT64_SAFE:
            P = np.array([x.num for x in xs], dtype=np.int64) @ M
            dens = [q.den * x.den for x in xs]
            if ys is None:
                return [CycNum(field, tuple(row), d) for row, d in zip(P.tolist(), dens)]
            ydens = [y.den for y in ys]
            my = max(max(map(abs, y.num)) for y in ys)
            if my * max(dens) + pbound * max(ydens) < _INT64_SAFE:
                Y = np.array([y.num for y in ys], dtype=np.int64)
                dn = np.array(dens, dtype=np.int64)[:, None]
                yd = np.array(ydens, dtype=np.int64)[:, None]
                R = Y * dn - P * yd
                return [CycNum(field, tuple(row), a * b) for row, a, b in zip(R.tolist(), ydens, dens)]
            prods = [CycNum(field, tuple(row), d) for row, d in zip(P.tolist(), dens)]
            return [y - p for y, p in zip(ys, prods)]
    return [q * x for x in xs] if ys is None else [y - q * x for y, x in zip(ys, xs)]


class CycNum:
    """An element of Q(zeta_m): ``sum(num[i] zeta^i) / den``."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: CyclotomicField, num: Sequence[int], den: int = 1, _normalized=False):
        self.field = field
        if _normalized:
            self.num = num
            self.den = den
            return
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        num = tuple(num)
        if den != 1:
            g = den
            for c in num:
                if c:
                    g = math.gcd(g, c)
                    if g == 1:
                        break
            if not any(num):
                den = 1
            elif g != 1:
                num = tuple(c // g for c in num)
                den //= g
        self.num = num
        self.den = den

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def is_integral(self) -> bool:
        return self.den == 1

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.field is not self.field:
                if other.field.m == self.field.m:
                    return CycNum(self.field, other.num, other.den, _normalized=True)
                raise ValueError("mixing conductors %d and %d" % (self.field.m, other.field.m))
            return other
        return self.field.from_rational(other)

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return CycNum(self.field, tuple([a + b for a, b in zip(self.num, o.num)]), self.den)
        d1, d2 = self.den, o.den
        return CycNum(self.field, tuple([a * d2 + b * d1 for a, b in zip(self.num, o.num)]), d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.field, tuple(-a for a in self.num), self.den, _normalized=True)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return CycNum(self.field, tuple([a - b for a, b in zip(self.num, o.num)]), self.den)
        d1, d2 = self.den, o.den
        return CycNum(self.field, tuple([a * d2 - b * d1 for a, b in zip(self.num, o.num)]), d1 * d2)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycNum(self.field, tuple(a * other for a in self.num), self.den)
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CycNum(self.field, _poly_mul(self.field, self.num, o.num), self.den * o.den)

    __rmul__ = __mul__

    def conjugate_by(self, j: int) -> "CycNum":
        """Image under the Galois automorphism zeta -> zeta^j (gcd(j, m) = 1)."""
        f = self.field
        m = f.m
        out = [0] * f.degree
        for i, c in enumerate(self.num):
            if c:
                for k, r in enumerate(f._pow[(i * j) % m]):
                    if r:
                        out[k] += c * r
        return CycNum(f, tuple(out), self.den, _normalized=True)

    def complex_conjugate(self) -> "CycNum":
        return self.conjugate_by(-1)

    def adjugate(self) -> "CycNum":
        """Product of the non-identity Galois conjugates, so ``x * adj(x) = N(x)``."""
        f = self.field
        out = f.one()
        for j in range(2, f.m):
            if math.gcd(j, f.m) == 1:
                out = out * self.conjugate_by(j)
        return out

    def norm(self) -> Fraction:
        return (self * self.adjugate()).rational()

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            q = 1 / self.rational()
            return self.field.from_rational(q)
        adj = self.adjugate()
        n = (self * adj).rational()
        return adj * self.field.from_rational(1 / n)

    def __truediv__(self, other):
        if isinstance(other, int):
            return CycNum(self.field, self.num, self.den * other)
        o = self._coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CycNum):
            return self.field.m == other.field.m and self.num == other.num and self.den == other.den
        try:
            o = self.field.from_rational(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.field.m, self.num, self.den))

    def __repr__(self):
        if self.den == 1:
            return f"CycNum({self.field.m}, {list(self.num)})"
        return f"CycNum({self.field.m}, {list(self.num)}/{self.den})"

    def to_json(self) -> list:
        """``[numerator coefficients, denominator]`` - exact, no decimals."""
        return [list(self.num), self.den]


def change_conductor(x: CycNum, m_new: int) -> CycNum:
    """Re-express ``x`` in Q(zeta_{m_new}); raises ValueError if impossible."""
    m_old = x.field.m
    if m_old == m_new:
        return x
    target = cyclotomic_field(m_new)
    if m_new % m_old == 0:
        step = m_new // m_old
        acc = [0] * target.degree
        for i, c in enumerate(x.num):
            if c:
                for k, r in enumerate(target._pow[(i * step) % m_new]):
                    acc[k] += c * r
        return CycNum(target, tuple(acc), x.den)
    if x.is_rational():
        return target.from_rational(x.rational())
    big = math.lcm(m_old, m_new)
    y = change_conductor(x, big)
    return _descend(y, m_new)


@lru_cache(maxsize=None)
def _descent_data(big: int, m_new: int):
    """Embedding columns of Q(zeta_m_new) in Q(zeta_big) and an exact integer left inverse."""
    F = cyclotomic_field(big)
    sub = cyclotomic_field(m_new)
    step = big // m_new
    cols = [F._pow[(j * step) % big] for j in range(sub.degree)]
    A = sympy.Matrix(cols).T
    left = (A.T * A).inv() * A.T
    den = 1
    for v in left:
        den = math.lcm(den, int(sympy.fraction(v)[1]))
    inv = tuple(tuple(int(v * den) for v in left.row(i)) for i in range(left.rows))
    return tuple(cols), inv, den


def _descend(y: CycNum, m_new: int) -> CycNum:
    """Write y in Q(zeta_big) as an element of the subfield Q(zeta_{m_new})."""
    sub = cyclotomic_field(m_new)
    cols, inv, den = _descent_data(y.field.m, m_new)
    sol = [sum(a * b for a, b in zip(row, y.num)) for row in inv]
    # sol / (den * y.den) is the candidate; it must map back onto y exactly
    back = [sum(col[k] * s for col, s in zip(cols, sol)) for k in range(len(y.num))]
    if back != [c * den for c in y.num]:
        raise ValueError(f"value does not lie in Q(zeta_{m_new})")
    return CycNum(sub, tuple(sol), den * y.den)


# ---------------------------------------------------------------------------
# residue field F_q = F_p[y]/(g)

class ResidueField:
    """The finite field F_p[y]/(g(y)); elements are coefficient tuples of length f."""

    def __init__(self, p: int, g: tuple):
        self.p = p
        self.g = g  # monic, low-to-high coefficients, length f+1
        self.f = len(g) - 1
        self.q = p ** self.f

    def reduce(self, coeffs: Iterable[int]) -> tuple:
        p, f, g = self.p, self.f, self.g
        c = [x % p for x in coeffs]
        for k in range(len(c) - 1, f - 1, -1):
            t = c[k]
            if t:
                c[k] = 0
                for j in range(f):
                    c[k - f + j] = (c[k - f + j] - t * g[j]) % p
        c = c[:f] + [0] * (f - len(c))
        return tuple(c)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        prod = [0] * (2 * self.f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self.reduce(prod)

    def scale(self, a, c: int):
        return tuple((x * c) % self.p for x in a)

    def pow(self, a, k: int):
        result = self.one()
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in residue field")
        return self.pow(a, self.q - 2)

    def zero(self):
        return (0,) * self.f

    def one(self):
        return (1,) + (0,) * (self.f - 1)

    def elements(self):
        for c in itertools.product(range(self.p), repeat=self.f):
            yield tuple(c)

    def __repr__(self):
        return f"ResidueField(p={self.p}, g={self.g})"


class ResidueElem:
    """An element of the residue field k, carrying its field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: ResidueField, coeffs: tuple):
        self.field = field
        self.coeffs = tuple(coeffs)

    def __add__(self, o):
        return ResidueElem(self.field, self.field.add(self.coeffs, o.coeffs))

    def __sub__(self, o):
        return ResidueElem(self.field, self.field.sub(self.coeffs, o.coeffs))

    def __mul__(self, o):
        return ResidueElem(self.field, self.field.mul(self.coeffs, o.coeffs))

    def __eq__(self, o):
        if isinstance(o, ResidueElem):
            return self.coeffs == o.coeffs
        if isinstance(o, int):
            return self.coeffs == self.field.reduce([o])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"ResidueElem({list(self.coeffs)} mod {self.field.p})"


# ---------------------------------------------------------------------------

class LocalContext:
    """The DVR O = Z[zeta_m] localised at P = (p, g(zeta_m')), its field K and residue field k.

    The uniformizer is ``1 - zeta_{p^s}`` when p divides m and ``p`` otherwise.
    """

    def __init__(self, m: int, p: int, *, group_order: int | None = None):
        if m < 1:
            raise ValueError("conductor must be a positive integer")
        if not sympy.isprime(p):
            raise ValueError(f"{p} is not prime")
        self.m = m
        self.p = p
        self.s = _vp(m, p)
        self.m_prime = m // p ** self.s
        self.field = cyclotomic_field(m)
        self.phi = self.field.degree
        self.e = euler_phi(p ** self.s)
        self.f = int(sympy.n_order(p, self.m_prime)) if self.m_prime > 1 else 1
        self.residue_factor = _choose_factor(self.m_prime, p)
        self.k = ResidueField(p, self.residue_factor)
        self.group_order = group_order
        vg = _vp(group_order, p) if group_order else 8
        self.t_max = self.e * (vg + 2) + self.phi

        F = self.field
        if self.s >= 1:
            self.pi = F.one() - F.zeta(self.m_prime)
            self.pi_choice = f"1-zeta_{p ** self.s}"
        else:
            self.pi = F.from_int(p)
            self.pi_choice = str(p)
        self._pi_rational = self.s == 0
        if not self._pi_rational:
            self._adj_pi = self.pi.adjugate()
            self._norm_pi = (self.pi * self._adj_pi).rational().numerator
        # residue of zeta_m is y^w with w p^s = 1 mod m'
        if self.m_prime > 1:
            w = pow(p ** self.s, -1, self.m_prime)
        else:
            w = 0
        y_w = self.k.pow(self.k.reduce([0, 1]), w) if self.m_prime > 1 else self.k.one()
        self._zeta_res = y_w
        imgs = [self.k.one()]
        for _ in range(1, self.phi):
            imgs.append(self.k.mul(imgs[-1], y_w))
        self._imgs = imgs
        # h: product of the other factors of Phi_{m'} mod p, evaluated at zeta_{m'}
        others = _other_factors(self.m_prime, p, self.residue_factor)
        h = F.one()
        zm = F.zeta(p ** self.s) if self.m_prime > 1 else F.one()
        for poly in others:
            val = F.zero()
            for j, c in enumerate(poly):
                if c:
                    val = val + zm ** j * c
            h = h * val
        self._h = h
        self._h_trivial = not others
        self._h_res = self._residue_integral(h.num)
        if self._h_res == self.k.zero():
            raise ArithmeticError("auxiliary element lies in P")
        if self.s >= 1:
            u = F.from_int(p) * self._adj_pi ** self.e / self._norm_pi ** self.e
            if not u.is_integral():
                raise ArithmeticError("p / pi^e not integral")
            self._u_p_res = self._residue_integral(u.num)
        else:
            self._u_p_res = self.k.one()
        self._lifts = None

    # -- helpers on integral numerators -------------------------------------
    def _residue_integral(self, num: Sequence[int]) -> tuple:
        k = self.k
        p = self.p
        acc = [0] * k.f
        for c, img in zip(num, self._imgs):
            c %= p
            if c:
                for j, y in enumerate(img):
                    acc[j] += c * y
        return tuple(a % p for a in acc)

    def _div_pi_integral(self, num: tuple) -> tuple | None:
        """num / pi in Z[zeta] or None when not divisible."""
        if self._pi_rational:
            p = self.p
            if any(c % p for c in num):
                return None
            return tuple(c // p for c in num)
        prod = _poly_mul(self.field, num, self._adj_pi.num)
        n = self._norm_pi
        if any(c % n for c in prod):
            return None
        return tuple(c // n for c in prod)

    def _strip_once(self, num: tuple) -> tuple:
        """(h * num) / pi for num in P; stays integral."""
        if not self._h_trivial:
            num = _poly_mul(self.field, num, self._h.num)
        out = self._div_pi_integral(num)
        if out is None:
            raise ArithmeticError("element expected to be divisible by the uniformizer")
        return out

    def _valuation_integral(self, num: tuple) -> int:
        g = 0
        for c in num:
            if c:
                g = math.gcd(g, c)
        v = self.e * _vp(g, self.p)
        if g > 1:
            num = tuple(c // g for c in num)
        zero = self.k.zero()
        while self._residue_integral(num) == zero:
            num = self._strip_once(num)
            v += 1
            if v > self.t_max + self.e * 64:
                raise ArithmeticError("valuation exceeds the configured cap")
        return v

    # -- public ---------------------------------------------------------------
    def __call__(self, value) -> CycNum:
        return self.field(value)

    def zeta(self, k: int = 1) -> CycNum:
        return self.field.zeta(k)

    def valuation(self, x: CycNum):
        x = self._own(x)
        if x.is_zero():
            return INF
        return self._valuation_integral(x.num) - self.e * _vp(x.den, self.p)

    def residue(self, x: CycNum) -> ResidueElem:
        return ResidueElem(self.k, self.residue_tuple(x))

    def residue_tuple(self, x: CycNum) -> tuple:
        x = self._own(x)
        if x.is_zero():
            return self.k.zero()
        kk = _vp(x.den, self.p)
        if kk == 0:
            r = self._residue_integral(x.num)
            d = x.den % self.p
            if d != 1:
                r = self.k.scale(r, pow(d, -1, self.p))
            return r
        num = x.num
        for _ in range(self.e * kk):
            if self._residue_integral(num) != self.k.zero():
                raise ValueError("residue of an element of negative valuation")
            num = self._strip_once(num)
        r = self._residue_integral(num)
        denom = self.k.mul(self.k.pow(self._h_res, self.e * kk), self.k.pow(self._u_p_res, kk))
        d = (x.den // self.p ** kk) % self.p
        denom = self.k.scale(denom, d)
        return self.k.mul(r, self.k.inv(denom))

    def div_uniformizer(self, x: CycNum, t: int) -> CycNum:
        """``x / pi^t``; requires ``v(x) >= t``."""
        x = self._own(x)
        if x.is_zero():
            return x
        v = self.valuation(x)
        if v < t:
            raise ValueError(f"valuation {v} < {t}: not divisible by pi^{t}")
        return x * self.pi_power(-t)

    def pi_power(self, t: int) -> CycNum:
        return _pi_power(self, t)

    def pi_power_associate(self, t: int) -> CycNum:
        """p^(t // e) pi^(t % e): valuation t like pi^t, with much smaller coefficients."""
        if t < 0:
            raise ValueError("negative exponent")
        q, r = divmod(t, self.e)
        return _pi_power(self, r) * (self.p ** q)

    def lift(self, r: tuple) -> CycNum:
        """Canonical lift of a residue: sum c_j zeta_{m'}^j with 0 <= c_j < p."""
        F = self.field
        num = [0] * self.phi
        step = self.p ** self.s if self.m_prime > 1 else 0
        for j, c in enumerate(r):
            if c:
                for k, v in enumerate(F._pow[(j * step) % self.m]):
                    num[k] += c * v
        return CycNum(F, tuple(num), 1)

    def canonical_mod(self, x: CycNum, t: int) -> CycNum:
        """The representative sum_{i<t} lift(c_i) pi^i of x modulo pi^t."""
        rep = self.field.zero()
        cur = self._own(x)
        pw = self.field.one()
        for _ in range(t):
            r = self.residue_tuple(cur)
            c = self.lift(r)
            rep = rep + c * pw
            cur = (cur - c) * self.pi_power(-1)
            pw = pw * self.pi
        return rep

    def _own(self, x) -> CycNum:
        if isinstance(x, CycNum):
            if x.field.m != self.m:
                return change_conductor(x, self.m)
            return x
        return self.field.from_rational(x)

    def __repr__(self):
        return (f"LocalContext(m={self.m}, p={self.p}, e={self.e}, f={self.f}, "
                f"pi={self.pi_choice})")


@lru_cache(maxsize=None)
def _pi_power_cached(m: int, p: int, t: int) -> CycNum:
    ctx = make_context(m, p)
    if t >= 0:
        return ctx.pi ** t
    if ctx._pi_rational:
        return ctx.field.from_rational(Fraction(1, p ** (-t)))
    inv = ctx._adj_pi * ctx.field.from_rational(Fraction(1, ctx._norm_pi))
    return inv ** (-t)


def _pi_power(ctx: LocalContext, t: int) -> CycNum:
    return _pi_power_cached(ctx.m, ctx.p, t)


def _factor_key(c: tuple):
    return (len(c), tuple(reversed(c)))


@lru_cache(maxsize=None)
def _factors_mod_p(m_prime: int, p: int) -> tuple:
    x = sympy.Symbol("x")
    if m_prime == 1:
        return ((-1 % p, 1),)
    poly = sympy.Poly(sympy.cyclotomic_poly(m_prime, x), x, modulus=p)
    _, facs = poly.factor_list()
    out = []
    for fac, mult in facs:
        coeffs = [int(c) % p for c in fac.all_coeffs()[::-1]]
        lead = coeffs[-1]
        inv = pow(lead, -1, p)
        coeffs = tuple((c * inv) % p for c in coeffs)
        out.extend([coeffs] * mult)
    return tuple(sorted(out, key=_factor_key))


def _choose_factor(m_prime: int, p: int) -> tuple:
    return _factors_mod_p(m_prime, p)[0]


def _other_factors(m_prime: int, p: int, chosen: tuple) -> list:
    if m_prime == 1:
        return []
    facs = list(_factors_mod_p(m_prime, p))
    facs.remove(chosen)
    return facs


@lru_cache(maxsize=None)
def _context_cached(m: int, p: int) -> LocalContext:
    return LocalContext(m, p)


def make_context(m: int, p: int, group_order: int | None = None) -> LocalContext:
    """Build (and cache) the local context for conductor m at the prime p."""
    if m < 1:
        raise ValueError("conductor must be a positive integer")
    if group_order is None:
        return _context_cached(m, p)
    return LocalContext(m, p, group_order=group_order)


def valuation(ctx: LocalContext, x) -> float | int:
    return ctx.valuation(x)


def residue(ctx: LocalContext, x) -> ResidueElem:
    return ctx.residue(x)


def div_uniformizer(ctx: LocalContext, x, t: int) -> CycNum:
    return ctx.div_uniformizer(x, t)
