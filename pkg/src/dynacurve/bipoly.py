"""Bivariate polynomials in (z, c) over the cyclotomic integers Z[w].

The central type is CurvePoly: coefficients are stored as a tuple of
rows, one row per power of z, each row a tuple of CycInt giving the
polynomial in c at that z-power.  Rows and the row list are trimmed, so
equality is structural.

Products go through a Kronecker substitution: the three-dimensional
coefficient grid (z-power, c-power, power-basis slot) is flattened into
one huge integer with a fixed bit width per slot and multiplied with
gmpy2.  That turns the dominant cost of the package, multiplying dense
curve polynomials with thousands of terms, into a single big-integer
multiplication.

Exact division has a fast path for the common shape (divisor monic in z
with plain integer coefficients): pack each z-row along c into one
integer and run the schoolbook division on row integers.  Packing is
evaluation at 2**B, a ring map, so intermediate growth is harmless; the
final quotient is verified by one independent multiplication, and the
slot width doubles on a failed verification before giving up.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence

import gmpy2
import mpmath

from .cyclotomic import CycInt, euler_phi, reduce_power_coords
from .errors import NonZeroRemainder, RingTagMismatch

Row = tuple[CycInt, ...]


# ---------------------------------------------------------------------------
# row (univariate in c) helpers


def _trim_row(row: Sequence[CycInt]) -> Row:
    n = len(row)
    while n and row[n - 1].is_zero:
        n -= 1
    return tuple(row[:n])


def crow_add(a: Row, b: Row) -> Row:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = out[i] + x
    return _trim_row(out)


def crow_neg(a: Row) -> Row:
    return tuple(-x for x in a)


def crow_sub(a: Row, b: Row) -> Row:
    return crow_add(a, crow_neg(b))


def crow_mul(a: Row, b: Row) -> Row:
    if not a or not b:
        return ()
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero:
            continue
        for j, y in enumerate(b):
            if y.is_zero:
                continue
            t = x * y
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    d = a[0].d
    zero = CycInt.zero(d)
    return _trim_row([v if v is not None else zero for v in out])


def crow_scale(a: Row, s: CycInt) -> Row:
    return _trim_row([x * s for x in a])


def crow_pow(a: Row, n: int, d: int) -> Row:
    result: Row = (CycInt.one(d),)
    base = a
    while n:
        if n & 1:
            result = crow_mul(result, base)
        base = crow_mul(base, base)
        n >>= 1
    return result


def crow_divexact(num: Row, den: Row) -> Row:
    """Exact quotient of c-polynomials over Z[w]; NonZeroRemainder if inexact."""
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    if not num:
        return ()
    if len(num) < len(den):
        raise NonZeroRemainder("degree of numerator below denominator")
    rem = list(num)
    lead = den[-1]
    q: list[CycInt] = [None] * (len(num) - len(den) + 1)  # type: ignore[list-item]
    for k in range(len(num) - 1, len(den) - 2, -1):
        coef = rem[k]
        if coef.is_zero:
            q[k - len(den) + 1] = coef
            continue
        try:
            coef = coef.exact_div(lead)
        except ValueError as exc:
            raise NonZeroRemainder(str(exc)) from exc
        q[k - len(den) + 1] = coef
        for i, b in enumerate(den):
            rem[k - len(den) + 1 + i] = rem[k - len(den) + 1 + i] - coef * b
    if any(r for r in rem[: len(den) - 1]):
        raise NonZeroRemainder("nonzero remainder in c-polynomial division")
    return _trim_row(q)


def _row_is_rational(row: Row) -> bool:
    return all(x.is_rational for x in row)


# ---------------------------------------------------------------------------
# Kronecker packing


def _signed_pack(digits: list[int], bits: int) -> "gmpy2.mpz":
    pos = [x if x > 0 else 0 for x in digits]
    neg = [-x if x < 0 else 0 for x in digits]
    return gmpy2.pack(pos, bits) - gmpy2.pack(neg, bits)


def _signed_unpack(value, bits: int) -> list[int]:
    """Recover signed base-2**bits digits, assuming each |digit| < 2**(bits-1)."""
    v = gmpy2.mpz(value)
    if not v:
        return []
    n_slots = (abs(v).bit_length() // bits) + 2
    half = gmpy2.mpz(1) << (bits - 1)
    offset = ((gmpy2.mpz(1) << (bits * n_slots)) - 1) // ((gmpy2.mpz(1) << bits) - 1) * half
    u = v + offset
    if u < 0:
        raise OverflowError("slot width too small for signed unpack")
    digits = gmpy2.unpack(u, bits)
    out = [int(x - half) for x in digits]
    while out and out[-1] == 0:
        out.pop()
    return out


def _pack_row(row: Row, bits: int) -> "gmpy2.mpz":
    return _signed_pack([x.as_int() for x in row], bits)


def _unpack_row(value, bits: int, d: int) -> Row:
    return _trim_row([CycInt.from_int(d, x) for x in _signed_unpack(value, bits)])


# ---------------------------------------------------------------------------
# the main type


class CurvePoly:
    """Polynomial in z and c with CycInt coefficients, canonical form."""

    __slots__ = ("d", "z_coeffs")

    def __init__(self, d: int, z_coeffs: Iterable[Sequence[CycInt]]):
        rows = [_trim_row(tuple(r)) for r in z_coeffs]
        while rows and not rows[-1]:
            rows.pop()
        self.d = d
        self.z_coeffs: tuple[Row, ...] = tuple(rows)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, d: int) -> "CurvePoly":
        return cls(d, ())

    @classmethod
    def const(cls, d: int, value) -> "CurvePoly":
        if isinstance(value, int):
            value = CycInt.from_int(d, value)
        return cls(d, ((value,),))

    @classmethod
    def one(cls, d: int) -> "CurvePoly":
        return cls.const(d, 1)

    @classmethod
    def z_var(cls, d: int) -> "CurvePoly":
        return cls(d, ((), (CycInt.one(d),)))

    @classmethod
    def c_var(cls, d: int) -> "CurvePoly":
        return cls(d, ((CycInt.zero(d), CycInt.one(d)),))

    @classmethod
    def family_map(cls, d: int) -> "CurvePoly":
        """The unicritical map z**d + c as a curve polynomial."""
        one = CycInt.one(d)
        zero = CycInt.zero(d)
        rows: list[Row] = [(zero, one)]
        rows.extend(() for _ in range(d - 1))
        rows.append((one,))
        return cls(d, rows)

    @classmethod
    def from_int_rows(cls, d: int, rows: Sequence[Sequence[int]]) -> "CurvePoly":
        return cls(d, [[CycInt.from_int(d, v) for v in r] for r in rows])

    # -- shape ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.z_coeffs

    @property
    def deg_z(self) -> int:
        return len(self.z_coeffs) - 1

    @property
    def deg_c(self) -> int:
        best = -1
        for row in self.z_coeffs:
            if len(row) - 1 > best:
                best = len(row) - 1
        return best

    @property
    def is_rational_coeffs(self) -> bool:
        return all(_row_is_rational(r) for r in self.z_coeffs)

    def leading_row(self) -> Row:
        return self.z_coeffs[-1] if self.z_coeffs else ()

    def is_monic_in_z(self) -> bool:
        lead = self.leading_row()
        return len(lead) == 1 and lead[0] == CycInt.one(self.d)

    def n_terms(self) -> int:
        return sum(sum(1 for x in row if not x.is_zero) for row in self.z_coeffs)

    def max_coord_bits(self) -> int:
        best = 0
        for row in self.z_coeffs:
            for x in row:
                for a in x.coords:
                    b = abs(a).bit_length()
                    if b > best:
                        best = b
        return best

    def _max_abs_coord(self) -> int:
        best = 0
        for row in self.z_coeffs:
            for x in row:
                for a in x.coords:
                    if abs(a) > best:
                        best = abs(a)
        return best

    # -- ring operations -----------------------------------------------

    def _check(self, other: "CurvePoly") -> None:
        if self.d != other.d:
            raise RingTagMismatch(f"ring Z[w_{self.d}] vs Z[w_{other.d}]")

    def __eq__(self, other) -> bool:
        if not isinstance(other, CurvePoly):
            return NotImplemented
        return self.d == other.d and self.z_coeffs == other.z_coeffs

    def __hash__(self) -> int:
        return hash((self.d, self.z_coeffs))

    def __repr__(self) -> str:
        return f"CurvePoly(d={self.d}, deg_z={self.deg_z}, deg_c={self.deg_c})"

    def __add__(self, other: "CurvePoly") -> "CurvePoly":
        self._check(other)
        a, b = self.z_coeffs, other.z_coeffs
        if len(a) < len(b):
            a, b = b, a
        rows = list(a)
        for i, r in enumerate(b):
            rows[i] = crow_add(rows[i], r)
        return CurvePoly(self.d, rows)

    def __neg__(self) -> "CurvePoly":
        return CurvePoly(self.d, [crow_neg(r) for r in self.z_coeffs])

    def __sub__(self, other: "CurvePoly") -> "CurvePoly":
        return self + (-other)

    def __mul__(self, other: "CurvePoly") -> "CurvePoly":
        self._check(other)
        if self.is_zero or other.is_zero:
            return CurvePoly.zero(self.d)
        return _kronecker_mul(self, other)

    def __pow__(self, n: int) -> "CurvePoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = CurvePoly.one(self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def scale(self, s) -> "CurvePoly":
        if isinstance(s, int):
            s = CycInt.from_int(self.d, s)
        return CurvePoly(self.d, [crow_scale(r, s) for r in self.z_coeffs])

    def rotate_z(self, k: int) -> "CurvePoly":
        """Substitute z -> w**k z, with w the primitive d-th root of unity."""
        d = self.d
        rows = [
            crow_scale(row, CycInt.omega(d, (k * i) % d))
            for i, row in enumerate(self.z_coeffs)
        ]
        return CurvePoly(d, rows)

    def compose_z(self, inner: "CurvePoly") -> "CurvePoly":
        """Substitute z -> inner(z, c), by Horner in z."""
        self._check(inner)
        if (
            self.deg_z >= 8
            and inner.deg_z >= 1
            and inner.is_rational_coeffs
            and inner.n_terms() <= 8
        ):
            return self._compose_packed(inner)
        acc = CurvePoly.zero(self.d)
        for row in reversed(self.z_coeffs):
            acc = acc * inner + CurvePoly(self.d, (row,))
        return acc

    def _compose_packed(self, inner: "CurvePoly") -> "CurvePoly":
        """Horner composition evaluated on packed integers.

        Requires a sparse inner polynomial with plain integer
        coefficients; then one Horner step is a handful of shifts and
        small multiplies on the accumulator instead of a full product.
        """
        d = self.d
        phi = euler_phi(d)
        x_width = 1 if self.is_rational_coeffs else phi
        deg = self.deg_z
        z_res = deg * inner.deg_z + 1
        c_res = self.deg_c + deg * max(inner.deg_c, 0) + 1
        bits = (
            self.max_coord_bits()
            + deg * (inner.max_coord_bits() + inner.n_terms().bit_length())
            + (deg + 1).bit_length()
            + 16
        )

        terms: list[tuple[int, int]] = []
        for iz, row in enumerate(inner.z_coeffs):
            for ic, x in enumerate(row):
                if not x.is_zero:
                    terms.append((bits * (iz * c_res + ic) * x_width, x.as_int()))

        row_ints = []
        for row in self.z_coeffs:
            digits = [0] * (len(row) * x_width)
            for ic, x in enumerate(row):
                if x_width == 1:
                    digits[ic] = x.coords[0] if x.coords else 0
                else:
                    for ix, v in enumerate(x.coords):
                        digits[ic * x_width + ix] = v
            row_ints.append(_signed_pack(digits, bits))

        acc = gmpy2.mpz(0)
        for row_int in reversed(row_ints):
            if acc:
                acc = sum((acc * coef) << shift for shift, coef in terms)
            acc += row_int

        digits = _signed_unpack(acc, bits)
        digits.extend([0] * (z_res * c_res * x_width - len(digits)))
        rows: list[list[CycInt]] = []
        for iz in range(z_res):
            row_out: list[CycInt] = []
            for ic in range(c_res):
                base = (iz * c_res + ic) * x_width
                if x_width == 1:
                    row_out.append(CycInt.from_int(d, digits[base]))
                else:
                    row_out.append(CycInt(d, tuple(digits[base : base + x_width])))
            rows.append(row_out)
        return CurvePoly(d, rows)

    def derivative_z(self) -> "CurvePoly":
        rows = [
            crow_scale(row, CycInt.from_int(self.d, i))
            for i, row in enumerate(self.z_coeffs)
        ][1:]
        return CurvePoly(self.d, rows)

    def derivative_c(self) -> "CurvePoly":
        out = []
        for row in self.z_coeffs:
            out.append(
                tuple(
                    row[j] * CycInt.from_int(self.d, j)
                    for j in range(1, len(row))
                )
            )
        return CurvePoly(self.d, out)

    # -- exact division --------------------------------------------------

    def divide_exact(self, den: "CurvePoly") -> "CurvePoly":
        """Quotient self / den when the division is exact in Z[w][z, c]."""
        self._check(den)
        if den.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero:
            return CurvePoly.zero(self.d)
        if den.deg_z == 0:
            lead = den.z_coeffs[0]
            return CurvePoly(self.d, [crow_divexact(r, lead) for r in self.z_coeffs])
        if self.deg_z < den.deg_z:
            raise NonZeroRemainder("z-degree of numerator below denominator")
        if (
            den.is_monic_in_z()
            and den.is_rational_coeffs
            and self.is_rational_coeffs
        ):
            return self._divide_packed(den)
        return self._divide_generic(den)

    def _divide_packed(self, den: "CurvePoly") -> "CurvePoly":
        bits = max(self.max_coord_bits(), den.max_coord_bits()) + 64
        for _ in range(4):
            quo = self._divide_packed_once(den, bits)
            if quo is not None and quo * den == self:
                return quo
            bits *= 2
        raise NonZeroRemainder("packed division failed verification")

    def _divide_packed_once(self, den: "CurvePoly", bits: int):
        d = self.d
        num_rows = [_pack_row(r, bits) for r in self.z_coeffs]
        den_rows = [_pack_row(r, bits) for r in den.z_coeffs]
        nd = len(den_rows)
        q_rows = [gmpy2.mpz(0)] * (len(num_rows) - nd + 1)
        for k in range(len(num_rows) - 1, nd - 2, -1):
            q = num_rows[k]
            q_rows[k - nd + 1] = q
            if q:
                base = k - nd + 1
                for i, dr in enumerate(den_rows):
                    num_rows[base + i] -= q * dr
        if any(num_rows[: nd - 1]):
            return None
        try:
            rows = [_unpack_row(v, bits, d) for v in q_rows]
        except OverflowError:
            return None
        return CurvePoly(d, rows)

    def _divide_generic(self, den: "CurvePoly") -> "CurvePoly":
        rem = list(self.z_coeffs)
        lead = den.z_coeffs[-1]
        nd = len(den.z_coeffs)
        q_rows: list[Row] = [()] * (len(rem) - nd + 1)
        for k in range(len(rem) - 1, nd - 2, -1):
            top = rem[k]
            if not top:
                continue
            q = crow_divexact(top, lead)
            q_rows[k - nd + 1] = q
            base = k - nd + 1
            for i, dr in enumerate(den.z_coeffs):
                rem[base + i] = crow_sub(rem[base + i], crow_mul(q, dr))
        if any(rem[: nd - 1]):
            raise NonZeroRemainder("nonzero remainder in z division")
        return CurvePoly(self.d, q_rows)

    # -- evaluation -------------------------------------------------------

    def z_coefficients_at(self, c_value: complex) -> list[complex]:
        """Coefficients in z (ascending) after substituting the complex c."""
        out = []
        for row in self.z_coeffs:
            acc = 0j
            for x in reversed(row):
                acc = acc * c_value + _embed53(x)
            out.append(acc)
        return out

    def z_coefficients_at_mp(self, c_value, precision: int) -> list:
        with mpmath.workprec(precision):
            cv = mpmath.mpc(c_value)
            out = []
            for row in self.z_coeffs:
                acc = mpmath.mpc(0)
                for x in reversed(row):
                    acc = acc * cv + x.embed(precision)
                out.append(+acc)
        return out

    def evaluate(self, z_value: complex, c_value: complex) -> complex:
        acc = 0j
        coeffs = self.z_coefficients_at(c_value)
        for a in reversed(coeffs):
            acc = acc * z_value + a
        return acc

    def evaluate_mp(self, z_value, c_value, precision: int):
        with mpmath.workprec(precision):
            zv = mpmath.mpc(z_value)
            acc = mpmath.mpc(0)
            for a in reversed(self.z_coefficients_at_mp(c_value, precision)):
                acc = acc * zv + a
            return +acc

    def specialize_c_int(self, c0: int) -> "CurvePoly":
        """Substitute an integer value for c, exactly."""
        d = self.d
        rows: list[Row] = []
        for row in self.z_coeffs:
            acc = CycInt.zero(d)
            for x in reversed(row):
                acc = acc * c0 + x
            rows.append((acc,) if acc else ())
        return CurvePoly(d, rows)

    def coefficient(self, z_power: int, c_power: int) -> CycInt:
        if z_power > self.deg_z:
            return CycInt.zero(self.d)
        row = self.z_coeffs[z_power]
        if c_power >= len(row):
            return CycInt.zero(self.d)
        return row[c_power]

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "d": self.d,
            "z_coeffs": [[x.to_json() for x in row] for row in self.z_coeffs],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CurvePoly":
        if data.get("schema") != 1:
            raise ValueError("unsupported schema")
        d = int(data["d"])
        rows = [
            [CycInt.from_json(d, x) for x in row]
            for row in data["z_coeffs"]
        ]
        return cls(d, rows)


@lru_cache(maxsize=65536)
def _embed53_cached(x: CycInt) -> complex:
    return x.embed(53)


def _embed53(x: CycInt) -> complex:
    if x.is_rational:
        return complex(x.coords[0] if x.coords else 0)
    return _embed53_cached(x)


# ---------------------------------------------------------------------------
# Kronecker multiplication


def _kronecker_mul(a: CurvePoly, b: CurvePoly) -> CurvePoly:
    d = a.d
    phi = euler_phi(d)
    rational = a.is_rational_coeffs and b.is_rational_coeffs
    x_width = 1 if rational else 2 * phi - 1
    z_res = a.deg_z + b.deg_z + 1
    c_res = a.deg_c + b.deg_c + 1

    bound = a._max_abs_coord() * b._max_abs_coord() * min(a.n_terms(), b.n_terms())
    if not rational:
        # folding products of power-basis slots can combine up to phi terms
        bound *= phi
    bits = bound.bit_length() + 2

    def flatten(p: CurvePoly) -> list[int]:
        digits = [0] * (z_res * c_res * x_width)
        for iz, row in enumerate(p.z_coeffs):
            base_z = iz * c_res
            for ic, x in enumerate(row):
                base = (base_z + ic) * x_width
                if rational:
                    digits[base] = x.coords[0] if x.coords else 0
                else:
                    for ix, v in enumerate(x.coords):
                        digits[base + ix] = v
        return digits

    va = _signed_pack(flatten(a), bits)
    vb = _signed_pack(flatten(b), bits)
    digits = _signed_unpack(va * vb, bits)
    digits.extend([0] * (z_res * c_res * x_width - len(digits)))

    rows: list[list[CycInt]] = []
    for iz in range(z_res):
        row: list[CycInt] = []
        for ic in range(c_res):
            base = (iz * c_res + ic) * x_width
            chunk = digits[base : base + x_width]
            if rational:
                row.append(CycInt.from_int(d, chunk[0]))
            else:
                row.append(CycInt(d, reduce_power_coords(d, chunk)))
        rows.append(row)
    return CurvePoly(d, rows)


# ---------------------------------------------------------------------------
# resultants


def _trim_rows(rows: list[Row]) -> list[Row]:
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _prem(a: list[Row], b: list[Row], d: int) -> list[Row]:
    """Pseudo-remainder lc(b)**(deg a - deg b + 1) * a mod b."""
    r = list(a)
    lb = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) >= len(b):
        lr = r[-1]
        shift = len(r) - len(b)
        new_r = [crow_mul(lb, row) for row in r]
        for i, brow in enumerate(b):
            j = shift + i
            new_r[j] = crow_sub(new_r[j], crow_mul(lr, brow))
        r = _trim_rows(new_r)
        e -= 1
    for _ in range(e):
        r = [crow_mul(lb, row) for row in r]
    return r


def _int_content(rows: list[Row]) -> int:
    g = 0
    for row in rows:
        for x in row:
            for v in x.coords:
                g = math.gcd(g, abs(v))
                if g == 1:
                    return 1
    return g if g else 1


def resultant_z(a_poly: CurvePoly, b_poly: CurvePoly) -> CurvePoly:
    """Resultant with respect to z, as a polynomial in c.

    Subresultant polynomial remainder sequence, so every division along
    the way is exact in Z[w][c].
    """
    a_poly._check(b_poly)
    d = a_poly.d
    a = _trim_rows(list(a_poly.z_coeffs))
    b = _trim_rows(list(b_poly.z_coeffs))
    if not a or not b:
        return CurvePoly.zero(d)

    pre_factor: Row = (CycInt.one(d),)
    ca = _int_content(a)
    cb = _int_content(b)
    if ca > 1:
        a = [crow_divexact(r, (CycInt.from_int(d, ca),)) if r else () for r in a]
    if cb > 1:
        b = [crow_divexact(r, (CycInt.from_int(d, cb),)) if r else () for r in b]
    pre_factor = crow_scale(
        pre_factor,
        CycInt.from_int(d, ca ** (len(b) - 1) * cb ** (len(a) - 1)),
    )

    sign = 1
    if len(a) < len(b):
        if (len(a) - 1) % 2 == 1 and (len(b) - 1) % 2 == 1:
            sign = -sign
        a, b = b, a

    if len(a) == 1:
        # both constants: empty Sylvester matrix
        return CurvePoly(d, (pre_factor,)) if sign > 0 else CurvePoly(d, (crow_neg(pre_factor),))
    if len(b) == 1:
        res = crow_pow(b[0], len(a) - 1, d)
        res = crow_mul(res, pre_factor)
        return CurvePoly(d, (res if sign > 0 else crow_neg(res),))

    g: Row = (CycInt.one(d),)
    h: Row = (CycInt.one(d),)
    while True:
        deg_a = len(a) - 1
        deg_b = len(b) - 1
        delta = deg_a - deg_b
        if deg_a % 2 == 1 and deg_b % 2 == 1:
            sign = -sign
        r = _prem(a, b, d)
        a = b
        if not r:
            return CurvePoly.zero(d)
        divisor = crow_mul(g, crow_pow(h, delta, d))
        b = [crow_divexact(row, divisor) if row else () for row in r]
        b = _trim_rows(b)
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = crow_divexact(crow_pow(g, delta, d), crow_pow(h, delta - 1, d))
        if len(b) - 1 == 0:
            break

    deg_a = len(a) - 1
    num = crow_pow(b[0], deg_a, d)
    if deg_a >= 1:
        res = crow_divexact(num, crow_pow(h, deg_a - 1, d))
    else:
        res = num
    res = crow_mul(res, pre_factor)
    return CurvePoly(d, (res if sign > 0 else crow_neg(res),))


def sylvester_resultant_z(a_poly: CurvePoly, b_poly: CurvePoly) -> CurvePoly:
    """Resultant via Bareiss elimination on the Sylvester matrix.

    Exact but cubic in the matrix size; kept as an independent
    cross-check for small z-degrees.
    """
    a_poly._check(b_poly)
    d = a_poly.d
    a = _trim_rows(list(a_poly.z_coeffs))
    b = _trim_rows(list(b_poly.z_coeffs))
    if not a or not b:
        return CurvePoly.zero(d)
    n, m = len(a) - 1, len(b) - 1
    if n == 0 and m == 0:
        return CurvePoly.one(d)
    if n > 8 and m > 8:
        raise ValueError("matrix fallback is limited to small degrees")
    size = n + m
    zero_row: Row = ()
    mat: list[list[Row]] = []
    a_desc = a[::-1]
    b_desc = b[::-1]
    for i in range(m):
        mat.append([zero_row] * i + list(a_desc) + [zero_row] * (size - n - 1 - i))
    for i in range(n):
        mat.append([zero_row] * i + list(b_desc) + [zero_row] * (size - m - 1 - i))

    sign = 1
    prev: Row = (CycInt.one(d),)
    for k in range(size - 1):
        if not mat[k][k]:
            pivot_row = None
            for i in range(k + 1, size):
                if mat[i][k]:
                    pivot_row = i
                    break
            if pivot_row is None:
                return CurvePoly.zero(d)
            mat[k], mat[pivot_row] = mat[pivot_row], mat[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                t = crow_sub(
                    crow_mul(mat[i][j], mat[k][k]),
                    crow_mul(mat[i][k], mat[k][j]),
                )
                mat[i][j] = crow_divexact(t, prev) if t else ()
            mat[i][k] = zero_row
        prev = mat[k][k]
    det = mat[size - 1][size - 1]
    return CurvePoly(d, (det if sign > 0 else crow_neg(det),))
