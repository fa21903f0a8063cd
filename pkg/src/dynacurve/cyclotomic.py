"""Exact arithmetic over the cyclotomic integers Z[w], w = exp(2*pi*i/d).

Elements are stored as integer coordinate vectors on the power basis
1, x, ..., x^(phi(d)-1) of Z[x]/(Phi_d(x)), where Phi_d is the d-th
cyclotomic polynomial.  This keeps every element in a canonical form, so
equality is plain tuple comparison and hashing works.

The module also hosts the small number-theoretic helpers (divisors,
Euler phi, Moebius) that the rest of the package shares.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath

from .errors import RingTagMismatch

DEFAULT_PRECISION_ENV = "DYNACURVE_PRECISION"


def default_precision() -> int:
    """Embedding precision in bits, overridable via DYNACURVE_PRECISION."""
    raw = os.environ.get(DEFAULT_PRECISION_ENV)
    if raw is None:
        return 53
    bits = int(raw)
    if bits < 10:
        raise ValueError("precision must be at least 10 bits")
    return bits


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def _poly_divmod_int(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    # Long division of integer polynomials, ascending coefficient order.
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    q = [0] * max(len(num) - dd, 0)
    for k in range(len(num) - 1, dd - 1, -1):
        coef = num[k]
        if coef % lead != 0:
            raise ArithmeticError("non-exact step in cyclotomic cascade")
        coef //= lead
        q[k - dd] = coef
        if coef:
            for i, b in enumerate(den):
                num[k - dd + i] -= coef * b
    while num and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> tuple[int, ...]:
    """Coefficients of Phi_d, ascending order, monic."""
    if d < 1:
        raise ValueError("d must be positive")
    if d == 1:
        return (-1, 1)
    # x^d - 1 divided by the product of Phi_e over proper divisors e of d.
    num = [0] * (d + 1)
    num[0] = -1
    num[d] = 1
    for e in divisors(d)[:-1]:
        q, r = _poly_divmod_int(num, cyclotomic_polynomial(e))
        if r:
            raise ArithmeticError("cyclotomic cascade left a remainder")
        num = q
    return tuple(num)


@lru_cache(maxsize=None)
def _reduction_table(d: int) -> tuple[tuple[int, ...], ...]:
    """x^k mod Phi_d for k = 0 .. max(2*phi-2, d-1), as coordinate rows."""
    phi = euler_phi(d)
    cyclo = cyclotomic_polynomial(d)
    k_max = max(2 * phi - 2, d - 1)
    rows: list[tuple[int, ...]] = []
    cur = [0] * phi
    if phi > 0:
        cur[0] = 1
    rows.append(tuple(cur))
    for _ in range(k_max):
        nxt = [0] + cur  # multiply by x
        if len(nxt) > phi:
            top = nxt.pop()
            if top:
                for i in range(phi):
                    nxt[i] -= top * cyclo[i]
        rows.append(tuple(nxt))
        cur = nxt
    return tuple(rows)


def reduce_power_coords(d: int, raw: Sequence[int]) -> tuple[int, ...]:
    """Reduce coordinates on 1, x, ..., x^(len-1) modulo Phi_d."""
    phi = euler_phi(d)
    table = _reduction_table(d)
    out = [0] * phi
    for k, a in enumerate(raw):
        if not a:
            continue
        row = table[k % d] if k >= len(table) else table[k]
        for i, t in enumerate(row):
            if t:
                out[i] += a * t
    return tuple(out)


class CycInt:
    """A cyclotomic integer in canonical power-basis coordinates.

    >>> a = CycInt.omega(4)          # i
    >>> (a * a).coords
    (-1, 0)
    >>> CycInt.omega(3) + CycInt.omega(3) ** 2 == CycInt.from_int(3, -1)
    True
    """

    __slots__ = ("d", "coords")

    def __init__(self, d: int, coords: Iterable[int]):
        phi = euler_phi(d)
        tup = tuple(int(x) for x in coords)
        if len(tup) < phi:
            tup = tup + (0,) * (phi - len(tup))
        elif len(tup) > phi:
            tup = reduce_power_coords(d, tup)
        self.d = d
        self.coords = tup

    @classmethod
    def from_int(cls, d: int, n: int) -> "CycInt":
        phi = euler_phi(d)
        return cls(d, (n,) + (0,) * (phi - 1))

    @classmethod
    def zero(cls, d: int) -> "CycInt":
        return cls.from_int(d, 0)

    @classmethod
    def one(cls, d: int) -> "CycInt":
        return cls.from_int(d, 1)

    @classmethod
    def omega(cls, d: int, k: int = 1) -> "CycInt":
        """The root-of-unity power w^k."""
        table = _reduction_table(d)
        return cls(d, table[k % d])

    def _check(self, other: "CycInt") -> None:
        if self.d != other.d:
            raise RingTagMismatch(f"ring Z[w_{self.d}] vs Z[w_{other.d}]")

    def __bool__(self) -> bool:
        return any(self.coords)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def as_int(self) -> int:
        if not self.is_rational:
            raise ValueError(f"{self!r} is not a rational integer")
        return int(self.coords[0]) if self.coords else 0

    def width(self) -> int:
        """1 + index of the highest nonzero coordinate (0 for zero)."""
        for i in range(len(self.coords) - 1, -1, -1):
            if self.coords[i]:
                return i + 1
        return 0

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        return CycInt(self.d, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        other = self._coerce(other)
        self._check(other)
        return CycInt(self.d, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return CycInt(self.d, tuple(-a for a in self.coords))

    def __mul__(self, other):
        other = self._coerce(other)
        self._check(other)
        a, b = self.coords, other.coords
        raw = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    raw[i + j] += ai * bj
        return CycInt(self.d, reduce_power_coords(self.d, raw))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a ring element")
        result = CycInt.one(self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, CycInt):
            return other
        if isinstance(other, int):
            return CycInt.from_int(self.d, other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycInt.from_int(self.d, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.d == other.d and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.d, self.coords))

    def __repr__(self) -> str:
        return f"CycInt(d={self.d}, {list(self.coords)})"

    def exact_div(self, other: "CycInt") -> "CycInt":
        """Quotient self/other when it exists in Z[w]; ValueError otherwise."""
        other = self._coerce(other)
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero in Z[w]")
        if other.is_rational:
            q = other.as_int()
            out = []
            for a in self.coords:
                if a % q:
                    raise ValueError("not divisible in Z[w]")
                out.append(a // q)
            return CycInt(self.d, out)
        inv = _inverse_coords(self.d, other.coords)
        raw: dict[int, Fraction] = {}
        for i, ai in enumerate(self.coords):
            if not ai:
                continue
            for j, bj in enumerate(inv):
                if bj:
                    raw[i + j] = raw.get(i + j, Fraction(0)) + ai * bj
        vec = [raw.get(k, Fraction(0)) for k in range(max(raw) + 1)] if raw else []
        out_f = _reduce_fraction_coords(self.d, vec)
        out = []
        for f in out_f:
            if f.denominator != 1:
                raise ValueError("not divisible in Z[w]")
            out.append(int(f))
        return CycInt(self.d, out)

    def embed(self, precision: int | None = None):
        """Complex embedding sending x to exp(2*pi*i/d).

        Absolute error is below 2**(1-precision) * sum(|coords|).  Returns a
        Python complex for precision <= 53, an mpmath.mpc above that.
        """
        if precision is None:
            precision = default_precision()
        if precision <= 53:
            ws = _omega_powers_f64(self.d)
            re = 0.0
            im = 0.0
            for a, w in zip(self.coords, ws):
                if a:
                    fa = float(a)
                    re += fa * w.real
                    im += fa * w.imag
            return complex(re, im)
        with mpmath.workprec(precision + 8):
            ws = _omega_powers_mp(self.d, precision + 8)
            acc = mpmath.mpc(0)
            for a, w in zip(self.coords, ws):
                if a:
                    acc += mpmath.mpf(a) * w
            return +acc

    def to_json(self) -> list[str]:
        return [str(int(a)) for a in self.coords]

    @classmethod
    def from_json(cls, d: int, data: Sequence[str]) -> "CycInt":
        return cls(d, tuple(int(s) for s in data))


@lru_cache(maxsize=None)
def _omega_powers_f64(d: int) -> tuple[complex, ...]:
    phi = euler_phi(d)
    return tuple(
        complex(math.cos(2 * math.pi * k / d), math.sin(2 * math.pi * k / d))
        for k in range(phi)
    )


@lru_cache(maxsize=32)
def _omega_powers_mp(d: int, workprec: int):
    with mpmath.workprec(workprec):
        w = mpmath.exp(2j * mpmath.pi / d)
        phi = euler_phi(d)
        out = [mpmath.mpc(1)]
        for _ in range(phi - 1):
            out.append(out[-1] * w)
        return tuple(out)


def _reduce_fraction_coords(d: int, raw: Sequence[Fraction]) -> list[Fraction]:
    phi = euler_phi(d)
    cyclo = cyclotomic_polynomial(d)
    vec = list(raw) + [Fraction(0)] * max(0, phi - len(raw))
    for k in range(len(vec) - 1, phi - 1, -1):
        top = vec[k]
        if top:
            for i in range(phi):
                vec[k - phi + i] -= top * cyclo[i]
        vec.pop()
    return vec[:phi]


@lru_cache(maxsize=None)
def _inverse_cache(d: int, coords: tuple[int, ...]) -> tuple[Fraction, ...]:
    # Extended Euclid in Q[x] for gcd(b, Phi_d); Phi_d irreducible over Q,
    # so any nonzero b is invertible mod Phi_d.
    cyclo = [Fraction(c) for c in cyclotomic_polynomial(d)]
    b = [Fraction(c) for c in coords]
    while b and b[-1] == 0:
        b.pop()
    r0, r1 = cyclo, b
    s0, s1 = [Fraction(0)], [Fraction(1)]
    t0, t1 = [Fraction(1)], [Fraction(0)]

    def frac_divmod(num, den):
        num = list(num)
        q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
        for k in range(len(num) - 1, len(den) - 2, -1):
            c = num[k] / den[-1]
            q[k - len(den) + 1] = c
            if c:
                for i, dv in enumerate(den):
                    num[k - len(den) + 1 + i] -= c * dv
        while num and num[-1] == 0:
            num.pop()
        return q, num

    def sub_scaled(a, q, b):
        # a - q*b
        out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
        for i, qi in enumerate(q):
            if qi:
                for j, bj in enumerate(b):
                    out[i + j] -= qi * bj
        while out and out[-1] == 0:
            out.pop()
        return out

    while r1:
        q, r = frac_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub_scaled(s0, q, s1)
    # r0 = gcd (a nonzero constant), s0 satisfies s0*b = r0 mod Phi_d.
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible mod Phi_d")
    inv = [c / r0[0] for c in s0]
    return tuple(_reduce_fraction_coords(d, inv))


def _inverse_coords(d: int, coords: tuple[int, ...]) -> tuple[Fraction, ...]:
    return _inverse_cache(d, tuple(coords))
