"""Scalar arithmetic backends: arbitrary-precision rationals, prime fields
GF(p), and an IEEE float64 ring for benchmarking.

A :class:`Field` instance is both the descriptor (kind + modulus) and the
arithmetic backend operating on canonical raw values (``Fraction``, ``int``
residue in ``[0, p)``, or ``float``).  A :class:`FieldElement` ties a raw
value to its field and overloads the usual operators.  Elements are
immutable; everything here is safe to share between threads.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Any


class FieldMismatchError(ValueError):
    """Operands belong to different fields."""


class ScalarFormatError(ValueError):
    """A scalar's textual form violates the canonical syntax for its field."""


class FloatFieldError(TypeError):
    """An exact field is required but the float64 ring was supplied."""


def is_prime(n: int) -> bool:
    """Trial-division primality check; moduli here are desk scale."""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """A scalar field (or ring): descriptor plus arithmetic on raw values.

    Subclasses implement the raw operations; instances compare equal iff
    they describe the same field, so an element carries its descriptor by
    holding a reference to its field.
    """

    kind: str = ""
    exact: bool = True

    # raw-value arithmetic -------------------------------------------------

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n: int):
        """Image of a plain integer under the canonical map Z -> F."""
        raise NotImplementedError

    def dot(self, xs, ys):
        """Inner product of two raw-value sequences of equal length."""
        acc = self.from_int(0)
        for x, y in zip(xs, ys):
            acc = self.add(acc, self.mul(x, y))
        return acc

    def coerce(self, value):
        """Canonical raw value from an int, a raw value, or a FieldElement."""
        raise NotImplementedError

    def sample(self, rng):
        """A small, well-scaled random raw value (tests and benchmarks)."""
        raise NotImplementedError

    # scalar text syntax ---------------------------------------------------

    def parse_scalar(self, text: str) -> "FieldElement":
        raise NotImplementedError

    def format_scalar(self, element: "FieldElement") -> str:
        raise NotImplementedError

    # element construction -------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.coerce(value))

    def zero(self) -> "FieldElement":
        return self(0)

    def one(self) -> "FieldElement":
        return self(1)

    @property
    def name(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)


class Rationals(Field):
    """The field of rationals, backed by arbitrary-precision Fraction."""

    kind = "rational"
    exact = True

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def from_int(self, n: int):
        return Fraction(n)

    def dot(self, xs, ys):
        return sum(x * y for x, y in zip(xs, ys))

    def coerce(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"expected {self.name}, got {value.field.name}")
            return value.value
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    def sample(self, rng):
        return Fraction(rng.randrange(-9, 10), rng.randrange(1, 5))

    _SCALAR_RE = re.compile(r"^-?\d+(?:/\d+)?$")

    def parse_scalar(self, text: str) -> "FieldElement":
        """Parse "p/q" with q > 0 and gcd(p, q) = 1, or a bare integer."""
        if not self._SCALAR_RE.match(text):
            raise ScalarFormatError(f"bad rational scalar {text!r}")
        if "/" in text:
            num_s, den_s = text.split("/")
            num, den = int(num_s), int(den_s)
            if den == 0:
                raise ScalarFormatError(f"zero denominator in {text!r}")
            if gcd(abs(num), den) != 1:
                raise ScalarFormatError(f"unreduced rational {text!r}")
            return self(Fraction(num, den))
        return self(int(text))

    def format_scalar(self, element: "FieldElement") -> str:
        return str(element.value)

    @property
    def name(self) -> str:
        return "rational"


class PrimeField(Field):
    """GF(p) for a prime modulus p; raw values are residues in [0, p)."""

    kind = "prime-field"
    exact = True

    def __init__(self, modulus: int):
        if not is_prime(modulus):
            raise ValueError(f"modulus {modulus} is not prime")
        self.modulus = modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.modulus)

    def from_int(self, n: int):
        return n % self.modulus

    def dot(self, xs, ys):
        # residues are small: accumulate in plain ints, reduce once
        return sum(x * y for x, y in zip(xs, ys)) % self.modulus

    def coerce(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"expected {self.name}, got {value.field.name}")
            return value.value
        if isinstance(value, int):
            return value % self.modulus
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    def sample(self, rng):
        return rng.randrange(self.modulus)

    def parse_scalar(self, text: str) -> "FieldElement":
        """Parse a decimal residue; must already lie in [0, p)."""
        if not text.isdigit():
            raise ScalarFormatError(f"bad {self.name} scalar {text!r}")
        value = int(text)
        if value >= self.modulus:
            raise ScalarFormatError(f"residue {value} out of range [0, {self.modulus})")
        return self(value)

    def format_scalar(self, element: "FieldElement") -> str:
        return str(element.value)

    @property
    def name(self) -> str:
        return f"gf({self.modulus})"


class Float64(Field):
    """IEEE doubles. Not exact: excluded from derivation and verification,
    used only by the benchmark path of the engine."""

    kind = "float64"
    exact = False

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0.0:
            raise ZeroDivisionError("inverse of zero")
        return 1.0 / a

    def from_int(self, n: int):
        return float(n)

    def dot(self, xs, ys):
        return sum(x * y for x, y in zip(xs, ys))

    def coerce(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"expected {self.name}, got {value.field.name}")
            return value.value
        if isinstance(value, (int, float, Fraction)):
            return float(value)
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    def sample(self, rng):
        return rng.random()

    def parse_scalar(self, text: str) -> "FieldElement":
        try:
            return self(float(text))
        except ValueError as exc:
            raise ScalarFormatError(f"bad float scalar {text!r}") from exc

    def format_scalar(self, element: "FieldElement") -> str:
        return repr(element.value)

    @property
    def name(self) -> str:
        return "float64"


class FieldElement:
    """A scalar bound to its field. Arithmetic requires matching fields;
    plain ints are accepted and coerced through Z -> F."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _raw(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"mixed fields: {self.field.name} and {other.field.name}"
                )
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        raw = self._raw(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.value, raw))

    __radd__ = __add__

    def __sub__(self, other):
        raw = self._raw(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.value, raw))

    def __rsub__(self, other):
        raw = self._raw(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(raw, self.value))

    def __mul__(self, other):
        raw = self._raw(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        raw = self._raw(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.value, raw))

    def __rtruediv__(self, other):
        raw = self._raw(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(raw, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != self.field.from_int(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __repr__(self) -> str:
        return self.field.format_scalar(self)


RATIONAL = Rationals()
FLOAT64 = Float64()

_FIELD_RE = re.compile(r"^gf\((\d+)\)$")


def parse_field(text: str) -> Field:
    """Resolve the textual descriptor: ``rational``, ``gf(p)``, ``float64``."""
    if text == "rational":
        return RATIONAL
    if text == "float64":
        return FLOAT64
    match = _FIELD_RE.match(text)
    if match:
        return PrimeField(int(match.group(1)))
    raise ValueError(f"unknown field descriptor {text!r}")


def require_exact(field: Field, operation: str) -> None:
    """Reject the float64 ring where exact identities are asserted."""
    if not field.exact:
        raise FloatFieldError(f"{operation} requires an exact field, got {field.name}")
