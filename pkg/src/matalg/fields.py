"""Exact scalar fields: the rationals and prime fields.

Rational scalars are plain :class:`fractions.Fraction` values (always reduced,
positive denominator).  Prime-field scalars are :class:`Residue` objects that
overload the same arithmetic operators, so elimination code never needs to
know which field it runs over.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldMismatch, ParseError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Residue:
    """An element of the prime field ``F_p``; ``value`` lies in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _other(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldMismatch(f"cannot mix F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            raise FieldMismatch(f"cannot mix F_{self.p} and rational scalars")
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Residue(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Residue(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Residue(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Residue(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Residue(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Residue(o * pow(self.value, -1, self.p), self.p)

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Field:
    """Field tag.  ``p == 0`` means the rationals, otherwise ``F_p``."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"PrimeField requires a prime, got {self.p}")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def coerce(self, x):
        """Map an int, Fraction, Residue or fraction string into this field."""
        if isinstance(x, str):
            x = parse_fraction(x)
        if self.p == 0:
            if isinstance(x, Residue):
                raise FieldMismatch(f"cannot use an F_{x.p} scalar over Q")
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise TypeError(f"not an exact scalar: {x!r}")
        if isinstance(x, Residue):
            if x.p != self.p:
                raise FieldMismatch(f"cannot use an F_{x.p} scalar over F_{self.p}")
            return x
        if isinstance(x, int):
            return Residue(x, self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return Residue(x.numerator * pow(x.denominator, -1, self.p), self.p)
        raise TypeError(f"not an exact scalar: {x!r}")

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def tag(self) -> str:
        return "Q" if self.p == 0 else f"Fp:{self.p}"

    @classmethod
    def from_tag(cls, tag: str) -> "Field":
        tag = tag.strip()
        if tag == "Q":
            return QQ
        if tag.startswith("Fp:"):
            try:
                p = int(tag[3:])
            except ValueError:
                raise ParseError(f"bad field tag {tag!r}") from None
            try:
                return cls(p)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        raise ParseError(f"bad field tag {tag!r} (expected 'Q' or 'Fp:<p>')")

    def __repr__(self):
        return "Rationals" if self.p == 0 else f"PrimeField({self.p})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def field_of(entries) -> Field:
    """Infer the field of an iterable of scalars; plain ints and Fractions mean Q."""
    found = None
    saw_fraction = False
    for x in entries:
        if isinstance(x, Residue):
            if found is not None and found != x.p:
                raise FieldMismatch(f"cannot mix F_{found} and F_{x.p}")
            found = x.p
        elif isinstance(x, Fraction) and not isinstance(x, int):
            saw_fraction = True
    if found is None:
        return QQ
    if saw_fraction:
        raise FieldMismatch(f"cannot mix F_{found} and rational scalars")
    return Field(found)


def parse_fraction(s: str) -> Fraction:
    """Parse '3', '-2' or '3/7' exactly.  Decimal points are rejected."""
    s = s.strip()
    num, sep, den = s.partition("/")
    try:
        if not sep:
            return Fraction(int(num))
        d = int(den)
        if d == 0:
            raise ParseError(f"zero denominator in {s!r}")
        return Fraction(int(num), d)
    except ValueError:
        raise ParseError(f"not an exact integer or fraction: {s!r}") from None


def format_scalar(x) -> str:
    if isinstance(x, Residue):
        return str(x.value)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
