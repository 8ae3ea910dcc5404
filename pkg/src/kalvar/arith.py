"""Exact scalar arithmetic: rationals, prime fields, and a few combinatorial helpers.

Rationals are plain :class:`fractions.Fraction` values (always in lowest terms
with a positive denominator).  Prime-field elements are :class:`GFp`.  The
two ground fields are represented by :data:`QQ` and :func:`GF`, which act as
element constructors and carry the JSON tag of the field.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Fraction

__all__ = [
    "Rational", "GFp", "Field", "RationalField", "PrimeField", "QQ", "GF",
    "field_from_json", "scalar_to_json", "scalar_from_json",
    "pochhammer", "binomial", "is_prime",
]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    r = math.isqrt(p)
    f = 3
    while f <= r:
        if p % f == 0:
            return False
        f += 2
    return True


class GFp:
    """Element of the prime field GF(p), immutable."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", int(value) % p)

    def __setattr__(self, name, value):
        raise AttributeError("GFp is immutable")

    def _coerce(self, other):
        if isinstance(other, GFp):
            if other.p != self.p:
                raise ValueError(f"field mismatch: GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return GFp(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return GFp(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return GFp(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return GFp(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return GFp(-self.value, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "GFp":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in GF(%d)" % self.p)
        # extended Euclid
        a, b, x0, x1 = self.value, self.p, 1, 0
        while b:
            q = a // b
            a, b = b, a - q * b
            x0, x1 = x1, x0 - q * x1
        return GFp(x0, self.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * GFp(v, self.p).inverse()

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return GFp(v, self.p) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return GFp(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, GFp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GFp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class Field:
    """Ground field: element constructor plus serialization tag."""

    characteristic: int

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse(self, text: str):
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError


class RationalField(Field):
    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, GFp):
            raise TypeError("cannot lift a GF(p) element to Q")
        return Fraction(x)

    def parse(self, text: str) -> Fraction:
        return Fraction(str(text).strip())

    def to_json(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        if not (2 <= p < 2 ** 31) or not is_prime(p):
            raise ValueError(f"modulus must be a prime below 2^31, got {p}")
        self.p = p
        self.characteristic = p

    def __call__(self, x) -> GFp:
        if isinstance(x, GFp):
            if x.p != self.p:
                raise ValueError(f"field mismatch: GF({x.p}) vs GF({self.p})")
            return x
        if isinstance(x, Fraction):
            return GFp(x.numerator, self.p) / x.denominator
        return GFp(int(x), self.p)

    def parse(self, text: str) -> GFp:
        return self(Fraction(str(text).strip()))

    def to_json(self):
        return {"GFp": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GFp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_json(tag) -> Field:
    if tag == "Q":
        return QQ
    if isinstance(tag, dict) and set(tag) == {"GFp"}:
        return GF(int(tag["GFp"]))
    raise ValueError(f"unknown field tag {tag!r}")


def scalar_to_json(x: Union[Fraction, GFp, int]):
    """Rationals as "num/den" (or "num"), GF(p) elements as {"value", "p"}."""
    if isinstance(x, GFp):
        return {"value": x.value, "p": x.p}
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def scalar_from_json(obj):
    if isinstance(obj, dict):
        return GFp(int(obj["value"]), int(obj["p"]))
    return Fraction(str(obj))


def pochhammer(a, n: int) -> Fraction:
    """Rising factorial (a)_n = a(a+1)...(a+n-1); (a)_0 = 1."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    a = Fraction(a)
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, zero unless 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)
