"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) reduced
modulo the n-th cyclotomic polynomial.  Internally a number is an integer
coordinate vector over one positive common denominator, which keeps the hot
multiplication path in machine-friendly Python ints.  Rationals are plain
:class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

__all__ = [
    "CycField",
    "Cyc",
    "FieldMismatch",
    "field_create",
    "root_of_unity",
    "is_algebraic_integer",
    "embed",
    "restrict",
    "euler_phi",
    "parse_coeff",
    "format_coeff",
]

Scalar = Union[int, Fraction, "Cyc"]


class FieldMismatch(ValueError):
    pass


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low-to-high), den monic."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            out[k - dd] = c
            for i, b in enumerate(den):
                num[k - dd + i] -= c * b
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, low to high, by dividing x^n - 1 by Phi_d, d | n, d < n."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


class CycField:
    """The cyclotomic field Q(zeta_n); build through :func:`field_create`."""

    __slots__ = ("n", "degree", "poly", "_zeta_cache", "zero", "one", "__weakref__")

    def __init__(self, n: int):
        self.n = n
        self.poly = cyclotomic_poly(n)
        self.degree = len(self.poly) - 1
        self._zeta_cache: dict[int, Cyc] = {}
        self.zero = Cyc._raw(self, (0,) * self.degree, 1)
        self.one = Cyc._raw(self, (1,) + (0,) * (self.degree - 1), 1)

    def __repr__(self) -> str:
        return f"CycField({self.n})"

    def __reduce__(self):
        return (field_create, (self.n,))

    @property
    def cyclotomic_poly(self) -> tuple[int, ...]:
        return self.poly

    def __call__(self, value: Scalar) -> Cyc:
        return self.coerce(value)

    def coerce(self, value: Scalar) -> Cyc:
        if isinstance(value, Cyc):
            if value.field is not self:
                raise FieldMismatch(f"{value.field!r} vs {self!r}")
            return value
        if isinstance(value, int):
            return Cyc._raw(self, (value,) + (0,) * (self.degree - 1), 1)
        if isinstance(value, Fraction):
            return Cyc._raw(self, (value.numerator,) + (0,) * (self.degree - 1), value.denominator)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def element(self, coords: Sequence[Union[int, Fraction, str]]) -> Cyc:
        """Build from power-basis coordinates (any length; reduced mod Phi_n)."""
        fr = [c if isinstance(c, Fraction) else Fraction(c) for c in coords]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in fr]
        return Cyc._raw(self, self._reduce(ints), den)

    def zeta(self, e: int = 1) -> Cyc:
        """zeta_n ** e, canonical."""
        e %= self.n
        z = self._zeta_cache.get(e)
        if z is None:
            ints = [0] * (e + 1)
            ints[e] = 1
            z = Cyc._raw(self, self._reduce(ints), 1)
            self._zeta_cache[e] = z
        return z

    def _reduce(self, ints: list[int]) -> tuple[int, ...]:
        d = self.degree
        if len(ints) <= d:
            return tuple(ints) + (0,) * (d - len(ints))
        ints = list(ints)
        poly = self.poly
        for k in range(len(ints) - 1, d - 1, -1):
            c = ints[k]
            if c:
                base = k - d
                for i in range(d):
                    b = poly[i]
                    if b:
                        ints[base + i] -= c * b
        return tuple(ints[:d])


@lru_cache(maxsize=None)
def field_create(n: int) -> CycField:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"conductor must be a positive integer, got {n!r}")
    return CycField(n)


class Cyc:
    """An element of Q(zeta_n), immutable."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: CycField, coords: Sequence[Union[int, Fraction, str]]):
        other = field.element(coords)
        self.field, self.num, self.den, self._hash = field, other.num, other.den, None

    @classmethod
    def _raw(cls, field: CycField, num: tuple[int, ...], den: int) -> "Cyc":
        g = den
        for c in num:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if not any(num):
            den = 1
        elif g != 1:
            num = tuple(c // g for c in num)
            den //= g
        self = object.__new__(cls)
        self.field = field
        self.num = num
        self.den = den
        self._hash = None
        return self

    # -- inspection ---------------------------------------------------------

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def __bool__(self) -> bool:
        return any(self.num)

    # -- arithmetic ---------------------------------------------------------

    def _other(self, other: Scalar) -> "Cyc | None":
        if isinstance(other, Cyc):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return None

    def __add__(self, other: Scalar) -> "Cyc":
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Cyc._raw(self.field, tuple(a + b for a, b in zip(self.num, o.num)), self.den)
        da, db = self.den, o.den
        return Cyc._raw(self.field, tuple(a * db + b * da for a, b in zip(self.num, o.num)), da * db)

    __radd__ = __add__

    def __neg__(self) -> "Cyc":
        return Cyc._raw(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other: Scalar) -> "Cyc":
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Scalar) -> "Cyc":
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Scalar) -> "Cyc":
        if isinstance(other, int):
            return Cyc._raw(self.field, tuple(a * other for a in self.num), self.den)
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b = self.num, o.num
        if not any(a[1:]):
            c = a[0]
            return Cyc._raw(self.field, tuple(c * x for x in b), self.den * o.den)
        if not any(b[1:]):
            c = b[0]
            return Cyc._raw(self.field, tuple(c * x for x in a), self.den * o.den)
        d = len(a)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyc._raw(self.field, self.field._reduce(prod), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            n0 = self.num[0]
            sign = 1 if n0 > 0 else -1
            return Cyc._raw(self.field, (sign * self.den,) + (0,) * (len(self.num) - 1), abs(n0))
        s = _poly_inverse_mod([Fraction(c, self.den) for c in self.num], self.field.poly)
        return self.field.element(s)

    def __truediv__(self, other: Scalar) -> "Cyc":
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> "Cyc":
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "Cyc":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Cyc):
            return other.field is self.field and other.den == self.den and other.num == self.num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.field.n, self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"Cyc({self.field.n}, {self})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coords):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"

    # -- serialization ------------------------------------------------------

    def to_json(self) -> list[str]:
        return [format_coeff(c) for c in self.coords]


def format_coeff(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def parse_coeff(field: CycField, data: Iterable[str]) -> Cyc:
    coords = [Fraction(s) for s in data]
    if len(coords) != field.degree:
        raise ValueError(f"expected {field.degree} coordinates, got {len(coords)}")
    return field.element(coords)


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_poly_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, x in enumerate(b):
            a[shift + i] -= c * x
    return q, a


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a: list[Fraction], modulus: Sequence[int]) -> list[Fraction]:
    """Inverse of a modulo an irreducible polynomial, by extended Euclid over Q."""
    r0, r1 = [Fraction(c) for c in modulus], _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, _poly_trim(r)
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible modulo the cyclotomic polynomial")
    c = r1[0]
    return [x / c for x in s1]


def root_of_unity(field: CycField, order: int, k: int = 1) -> Cyc:
    """zeta_order ** k inside ``field``; requires order | n."""
    if order < 1 or field.n % order:
        raise ValueError(f"Q(zeta_{field.n}) has no primitive {order}-th root of unity")
    return field.zeta(k * (field.n // order))


def is_algebraic_integer(a: Cyc) -> bool:
    # Z[zeta_n] is the full ring of integers, and it has the power basis as Z-basis.
    return a.den == 1


def embed(a: Cyc, target: CycField) -> Cyc:
    src = a.field
    if target.n % src.n:
        raise ValueError(f"cannot embed Q(zeta_{src.n}) into Q(zeta_{target.n})")
    if src is target:
        return a
    step = target.n // src.n
    ints = [0] * (step * (src.degree - 1) + 1)
    for k, c in enumerate(a.num):
        ints[k * step] = c
    return Cyc._raw(target, target._reduce(ints), a.den)


def restrict(a: Cyc, target: CycField) -> Cyc:
    """Inverse of :func:`embed`: view ``a`` inside the subfield ``target``."""
    src = a.field
    if src.n % target.n:
        raise ValueError(f"Q(zeta_{target.n}) is not a subfield of Q(zeta_{src.n})")
    if a.is_rational():
        return Cyc._raw(target, (a.num[0],) + (0,) * (target.degree - 1), a.den)
    # solve by matching against the embedded power basis
    basis = [embed(target.zeta(k), src) for k in range(target.degree)]
    from hopforders.linalg import solve_combination

    coeffs = solve_combination([list(b.coords) for b in basis], list(a.coords), src_field=None)
    if coeffs is None:
        raise ValueError(f"{a} does not lie in Q(zeta_{target.n})")
    return target.element(coeffs)
