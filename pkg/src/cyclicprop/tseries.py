"""Dense truncated power series in ``t``.

Coefficients come from a pluggable field object. Two are provided:

* :func:`numeric` -- plain rationals with ``q`` fixed to an integer, so
  rational functions of ``q`` are embedded by evaluation;
* :data:`SYMBOLIC` -- :class:`~cyclicprop.exact.QRationalFunction` values,
  keeping ``q`` as an indeterminate.

A series of order ``N`` stores the coefficients of ``t**0 .. t**N``. Binary
operations truncate to the smaller order of the two operands.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exact import ONE, ZERO, QRationalFunction, as_qrf, render_rational

DEFAULT_ORDER = 16

__all__ = [
    "DEFAULT_ORDER",
    "Rationals",
    "SymbolicQ",
    "QQ",
    "SYMBOLIC",
    "numeric",
    "TruncSeries",
    "series_arith",
    "series_reciprocal",
    "series_pow",
    "coefficient",
]


@dataclass(frozen=True)
class Rationals:
    """Exact rationals; ``q`` fixes the value used to embed expressions in q."""

    q: int | None = None

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def embed(self, x) -> Fraction:
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if self.q is None:
            raise TypeError("this field has no value for q; cannot embed a function of q")
        return as_qrf(x)(self.q)

    def render(self, x) -> str:
        return render_rational(x)

    @property
    def name(self) -> str:
        return "rationals" if self.q is None else f"numeric q={self.q}"


@dataclass(frozen=True)
class SymbolicQ:
    """Rational functions of the indeterminate ``q``."""

    def zero(self) -> QRationalFunction:
        return ZERO

    def one(self) -> QRationalFunction:
        return ONE

    def embed(self, x) -> QRationalFunction:
        return as_qrf(x)

    def render(self, x) -> dict:
        return x.render()

    @property
    def name(self) -> str:
        return "symbolic q"


QQ = Rationals()
SYMBOLIC = SymbolicQ()


def numeric(q: int) -> Rationals:
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    return Rationals(q)


def _is_zero(x) -> bool:
    if isinstance(x, QRationalFunction):
        return x.is_zero()
    return not x


class TruncSeries:
    """Coefficients ``a_0..a_N`` of a power series known modulo ``t**(N+1)``."""

    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs: Iterable, order: int, field=QQ):
        if order < 0:
            raise ValueError("order must be nonnegative")
        c = [field.embed(x) for x in coeffs]
        if len(c) > order + 1:
            c = c[: order + 1]
        zero = field.zero()
        c += [zero] * (order + 1 - len(c))
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def _raw(cls, coeffs: Sequence, field) -> "TruncSeries":
        obj = object.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(coeffs)
        return obj

    # constructors -----------------------------------------------------------

    @classmethod
    def one(cls, order: int, field=QQ) -> "TruncSeries":
        return cls([field.one()], order, field)

    @classmethod
    def monomial(cls, k: int, c, order: int, field=QQ) -> "TruncSeries":
        """``c * t**k`` (zero if ``k`` exceeds the order)."""
        zero = field.zero()
        coeffs = [zero] * (order + 1)
        if k <= order:
            coeffs[k] = field.embed(c)
        return cls._raw(coeffs, field)

    # basic access -----------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, n: int):
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient t^{n} outside 0..{self.order}")
        return self.coeffs[n]

    __getitem__ = coefficient

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError("cannot raise the order of a truncated series")
        return TruncSeries._raw(self.coeffs[: order + 1], self.field)

    def valuation(self) -> int | None:
        """Index of the lowest nonzero coefficient (``None`` if all vanish)."""
        for k, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return k
        return None

    def map(self, fn: Callable, field) -> "TruncSeries":
        return TruncSeries._raw([fn(c) for c in self.coeffs], field)

    def at_q(self, q: int) -> "TruncSeries":
        """Evaluate every coefficient at a numeric ``q``."""
        f = numeric(q)
        return self.map(f.embed, f)

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by ``t**k`` keeping the order."""
        if k < 0:
            raise ValueError("negative shift")
        zero = self.field.zero()
        n = self.order + 1
        return TruncSeries._raw(([zero] * k + list(self.coeffs))[:n], self.field)

    # arithmetic -------------------------------------------------------------

    def _check(self, other: "TruncSeries"):
        if self.field != other.field:
            raise TypeError(f"mixed coefficient fields: {self.field.name} and {other.field.name}")

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries([other], self.order, self.field)
        self._check(other)
        n = min(self.order, other.order) + 1
        return TruncSeries._raw([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], self.field)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._raw([-a for a in self.coeffs], self.field)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries([other], self.order, self.field)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncSeries":
        c = self.field.embed(c)
        return TruncSeries._raw([a * c for a in self.coeffs], self.field)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        self._check(other)
        n = min(self.order, other.order) + 1
        a, b = self.coeffs, other.coeffs
        zero = self.field.zero()
        out = [zero] * n
        bnz = [(j, y) for j, y in enumerate(b[:n]) if not _is_zero(y)]
        for i in range(n):
            x = a[i]
            if _is_zero(x):
                continue
            for j, y in bnz:
                if i + j >= n:
                    break
                out[i + j] = out[i + j] + x * y
        return TruncSeries._raw(out, self.field)

    __rmul__ = __mul__

    def reciprocal(self) -> "TruncSeries":
        a = self.coeffs
        if _is_zero(a[0]):
            raise ZeroDivisionError("constant term is not invertible")
        inv0 = self.field.one() / a[0]
        nz = [(j, y) for j, y in enumerate(a) if j and not _is_zero(y)]
        out = [inv0]
        for k in range(1, len(a)):
            acc = self.field.zero()
            for j, y in nz:
                if j > k:
                    break
                acc = acc + y * out[k - j]
            out.append(-acc * inv0 if not _is_zero(acc) else self.field.zero())
        return TruncSeries._raw(out, self.field)

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * other.reciprocal()
        return self.scale(self.field.one() / self.field.embed(other))

    def __pow__(self, e: int) -> "TruncSeries":
        if e < 0:
            return self.reciprocal() ** (-e)
        result = TruncSeries.one(self.order, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    # rendering --------------------------------------------------------------

    def render(self) -> dict:
        return {"order": self.order, "coeffs": [self.field.render(c) for c in self.coeffs]}

    @classmethod
    def parse(cls, doc: dict, field=QQ) -> "TruncSeries":
        if isinstance(field, SymbolicQ):
            coeffs = [QRationalFunction.parse(c) for c in doc["coeffs"]]
        else:
            coeffs = [Fraction(c) for c in doc["coeffs"]]
        return cls(coeffs, doc["order"], field)

    def __repr__(self):
        return f"TruncSeries({self.render()}, field={self.field.name})"


def series_arith(a: TruncSeries, b: TruncSeries, op: str) -> TruncSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def series_reciprocal(a: TruncSeries) -> TruncSeries:
    return a.reciprocal()


def series_pow(a: TruncSeries, e: int) -> TruncSeries:
    if e < 0:
        raise ValueError("series_pow takes a nonnegative exponent")
    return a ** e


def coefficient(a: TruncSeries, n: int):
    return a.coefficient(n)
