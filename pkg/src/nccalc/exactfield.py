"""Exact scalars over the rationals and prime fields.

Two layers live here.  :class:`ExactScalar` is the user-facing immutable
value carrying its field tag.  :class:`Field` (``QQ`` and ``GF(p)``) works on
*raw* values -- :class:`fractions.Fraction` for the rationals and plain ``int``
residues for prime fields -- and is what the linear algebra kernels use, so
inner loops never pay for wrapper objects.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache


class FieldMismatchError(ValueError):
    """Operands belong to different fields."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


class Field:
    """A ground field acting on raw values.

    Subclasses implement ``coerce``, ``inv`` and ``render``; the arithmetic
    helpers are written so that the rational case uses Fraction operators
    directly and the modular case reduces modulo ``p``.
    """

    characteristic: int = 0
    tag: str = ""

    zero: object
    one: object

    def coerce(self, x):
        raise NotImplementedError

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

    def render(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def scalar(self, a) -> "ExactScalar":
        return ExactScalar(self, self.coerce(a))

    def __repr__(self):
        return self.tag


class RationalField(Field):
    characteristic = 0
    tag = "Q"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, ExactScalar):
            if x.field != self:
                raise FieldMismatchError(f"cannot coerce {x!r} into {self}")
            return x.raw
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, float):
            raise TypeError("floating point values are not accepted")
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    def render(self, a) -> str:
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    _pat = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")

    def parse(self, text: str):
        m = self._pat.match(text)
        if not m:
            raise ValueError(f"not a rational literal: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return Fraction(num, den)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.tag = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        if isinstance(x, ExactScalar):
            if x.field != self:
                raise FieldMismatchError(f"cannot coerce {x!r} into {self}")
            return x.raw
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        if isinstance(x, float):
            raise TypeError("floating point values are not accepted")
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.p}")
        return pow(a, -1, self.p)

    def render(self, a) -> str:
        return f"{a % self.p} mod {self.p}"

    _pat = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*(?:mod\s+(\d+))?\s*$")

    def parse(self, text: str):
        m = self._pat.match(text)
        if not m:
            raise ValueError(f"not a residue literal: {text!r}")
        if m.group(3) is not None and int(m.group(3)) != self.p:
            raise FieldMismatchError(f"{text!r} is not in F{self.p}")
        num = int(m.group(1)) % self.p
        if m.group(2):
            return self.div(num, int(m.group(2)) % self.p)
        return num

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_tag(tag: str) -> Field:
    """``"Q"`` -> QQ, ``"F7"``/``"Fp7"``/``"GF7"`` -> GF(7)."""
    t = tag.strip()
    if t in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:Fp|GF|F)\s*\(?(\d+)\)?", t)
    if m:
        return GF(int(m.group(1)))
    raise ValueError(f"unknown field tag {tag!r}")


class ExactScalar:
    """Immutable element of Q or F_p.

    Rationals are stored in lowest terms with a positive denominator (that is
    what Fraction does); residues live in ``[0, p)``.
    """

    __slots__ = ("field", "raw")

    def __init__(self, field: Field, raw):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "raw", field.coerce(raw))

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    @property
    def is_modular(self) -> bool:
        return self.field.characteristic != 0

    @property
    def numerator(self) -> int:
        return self.raw.numerator if not self.is_modular else self.raw

    @property
    def denominator(self) -> int:
        return self.raw.denominator if not self.is_modular else 1

    def _other(self, other):
        if isinstance(other, ExactScalar):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine {self.field} with {other.field}")
            return other.raw
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.coerce(other)
        return NotImplemented

    def _binary(self, other, fn, reflected=False):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = (o, self.raw) if reflected else (self.raw, o)
        return ExactScalar(self.field, fn(a, b))

    def __add__(self, other):
        return self._binary(other, self.field.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, self.field.sub)

    def __rsub__(self, other):
        return self._binary(other, self.field.sub, reflected=True)

    def __mul__(self, other):
        return self._binary(other, self.field.mul)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, self.field.div)

    def __rtruediv__(self, other):
        return self._binary(other, self.field.div, reflected=True)

    def __neg__(self):
        return ExactScalar(self.field, self.field.neg(self.raw))

    def inverse(self) -> "ExactScalar":
        return ExactScalar(self.field, self.field.inv(self.raw))

    def __eq__(self, other):
        if isinstance(other, ExactScalar):
            return self.field == other.field and self.raw == other.raw
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.raw == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.raw))

    def __bool__(self):
        return bool(self.raw)

    def __str__(self):
        return self.field.render(self.raw)

    def __repr__(self):
        return f"ExactScalar({self})"


def field_arith(a: ExactScalar, b: ExactScalar, op: str) -> ExactScalar:
    """Apply ``op`` in {add, sub, mul, div} to two scalars of the same field."""
    if a.field != b.field:
        raise FieldMismatchError(f"cannot combine {a.field} with {b.field}")
    ops = {"add": a.field.add, "sub": a.field.sub, "mul": a.field.mul, "div": a.field.div}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ExactScalar(a.field, ops[op](a.raw, b.raw))


def modular_inverse(a: ExactScalar) -> ExactScalar:
    if not a.is_modular:
        raise TypeError("modular_inverse expects an element of F_p")
    return a.inverse()


_LITERAL = re.compile(r"^\s*([+-]?\d+(?:\s*/\s*\d+)?)\s*(?:mod\s+(\d+))?\s*$")


def parse_scalar(text: str, field: Field | None = None) -> ExactScalar:
    """Parse ``"a/b"`` or ``"r mod p"``.

    Without an explicit field, a ``mod p`` suffix selects GF(p) and anything
    else is rational.
    """
    m = _LITERAL.match(text)
    if not m:
        raise ValueError(f"not a scalar literal: {text!r}")
    if field is None:
        field = GF(int(m.group(2))) if m.group(2) else QQ
    return ExactScalar(field, field.parse(text))
