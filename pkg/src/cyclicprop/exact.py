"""Exact scalar arithmetic in the symbolic prime power ``q``.

Three value types live here:

* rationals -- plain :class:`fractions.Fraction`, rendered as ``"num/den"``;
* :class:`QPolynomial` -- univariate polynomials in ``q`` with rational
  coefficients, stored densely in ascending powers;
* :class:`QRationalFunction` -- reduced quotients of two such polynomials with
  a monic denominator, so equality is structural.

:func:`laurent_expand` rewrites a rational function as a truncated power
series in ``u = 1/q`` (:class:`QinvSeries`), which is the form every limiting
proportion is quoted in.

Everything is immutable and exact; there is no floating point anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

__all__ = [
    "QPolynomial",
    "QRationalFunction",
    "QinvSeries",
    "ExpansionError",
    "laurent_expand",
    "poly_gcd",
    "render_rational",
    "parse_rational",
    "rat_arith",
    "qrf_arith",
    "as_qrf",
    "q_power",
]


class ExpansionError(ArithmeticError):
    """Raised when a rational function has a pole at ``u = 1/q = 0``."""


# ---------------------------------------------------------------------------
# rationals

def render_rational(x: Rational) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str | int) -> Fraction:
    return Fraction(s)


def rat_arith(a: Rational, b: Rational, op: str) -> Fraction:
    """Apply ``op`` in {add, sub, mul, div} to two rationals.

    Division by zero raises :class:`ZeroDivisionError`.
    """
    a, b = Fraction(a), Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# integer polynomial helpers (ascending coefficient lists)

def _trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _int_primitive(coeffs: Sequence[Fraction]) -> list[int]:
    """Primitive integer polynomial proportional to ``coeffs`` (positive lead)."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if ints[-1] < 0:
        g = -g
    return [v // g for v in ints]


def _int_exact_div(f: list[int], g: list[int]) -> list[int] | None:
    """Quotient f/g over Z, or ``None`` if g does not divide f."""
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    if len(f) - 1 < dg:
        return None if any(f) else []
    quo = [0] * (len(f) - dg)
    for k in range(len(f) - 1 - dg, -1, -1):
        c = f[k + dg]
        if c % lg:
            return None
        c //= lg
        quo[k] = c
        if c:
            for m in range(dg + 1):
                f[k + m] -= c * g[m]
    if any(f[:dg]):
        return None
    return quo


def _eval_int(f: list[int], x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _heugcd(f: list[int], g: list[int]) -> list[int] | None:
    """Heuristic gcd of two primitive integer polynomials (None on failure)."""
    nf = max(abs(c) for c in f)
    ng = max(abs(c) for c in g)
    bound = 2 * min(nf, ng) + 29
    xi = max(min(bound, 99 * math.isqrt(bound)),
             2 * min(nf // abs(f[-1]), ng // abs(g[-1])) + 2)
    for _ in range(8):
        a = _eval_int(f, xi)
        b = _eval_int(g, xi)
        if a and b:
            h = math.gcd(a, b)
            digits = []
            half = xi // 2
            while h:
                d = h % xi
                if d > half:
                    d -= xi
                digits.append(d)
                h = (h - d) // xi
            _trim(digits)
            if digits:
                cont = 0
                for d in digits:
                    cont = math.gcd(cont, d)
                if digits[-1] < 0:
                    cont = -cont
                digits = [d // cont for d in digits]
                if _int_exact_div(f, digits) is not None and _int_exact_div(g, digits) is not None:
                    return digits
        xi = xi * 73794 * math.isqrt(math.isqrt(xi)) // 27011
    return None


def _euclid_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = list(a), list(b)
    while b:
        _, r = _divmod_frac(a, b)
        a, b = b, r
    lead = a[-1]
    return [c / lead for c in a]


def _divmod_frac(f: Sequence[Fraction], g: Sequence[Fraction]):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f)
    dg = len(g) - 1
    if len(rem) - 1 < dg:
        return [], _trim(rem)
    inv = 1 / Fraction(g[-1])
    quo = [Fraction(0)] * (len(rem) - dg)
    for k in range(len(rem) - 1 - dg, -1, -1):
        c = rem[k + dg] * inv
        quo[k] = c
        if c:
            for m in range(dg + 1):
                rem[k + m] -= c * g[m]
    return _trim(quo), _trim(rem[:dg])


# ---------------------------------------------------------------------------
# polynomials in q

class QPolynomial:
    """Polynomial in ``q`` with rational coefficients, ascending powers.

    The empty coefficient tuple is the zero polynomial; otherwise the last
    coefficient is nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        c = [Fraction(x) for x in coeffs]
        self.coeffs: tuple[Fraction, ...] = tuple(_trim(c))

    @classmethod
    def _raw(cls, coeffs) -> "QPolynomial":
        obj = object.__new__(cls)
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def constant(cls, c: Rational) -> "QPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Rational = 1) -> "QPolynomial":
        if k < 0:
            raise ValueError("negative exponent in a polynomial")
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def monic(self) -> "QPolynomial":
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        return QPolynomial._raw(c / lead for c in self.coeffs)

    def __call__(self, x: Rational) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    evaluate = __call__

    def _coerce(self, other) -> "QPolynomial":
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return QPolynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return QPolynomial._raw(_trim(out))

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial._raw(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return QPolynomial._raw(())
            return QPolynomial._raw(c * other for c in self.coeffs)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPolynomial._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPolynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = QPolynomial._raw((Fraction(1),))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        quo, rem = _divmod_frac(self.coeffs, other.coeffs)
        return QPolynomial._raw(quo), QPolynomial._raw(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "QPolynomial") -> "QPolynomial":
        quo, rem = divmod(self, other)
        if not rem.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return quo

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPolynomial((other,))
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("QPolynomial", self.coeffs))

    def render(self) -> list[str]:
        return [render_rational(c) for c in self.coeffs]

    @classmethod
    def parse(cls, items: Sequence[str | int]) -> "QPolynomial":
        return cls(parse_rational(s) for s in items)

    def __repr__(self):
        return f"QPolynomial({self.render()})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = render_rational(mag)
            else:
                mono = "q" if k == 1 else f"q^{k}"
                body = mono if mag == 1 else f"{render_rational(mag)}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def poly_gcd(a: QPolynomial, b: QPolynomial) -> QPolynomial:
    """Monic greatest common divisor over Q (``0`` only if both are zero)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.degree == 0 or b.degree == 0:
        return QPolynomial._raw((Fraction(1),))
    # strip the common power of q first; cheap and very common here
    va = next(k for k, c in enumerate(a.coeffs) if c)
    vb = next(k for k, c in enumerate(b.coeffs) if c)
    shift = min(va, vb)
    ca, cb = a.coeffs[va:], b.coeffs[vb:]
    if len(ca) == 1 or len(cb) == 1:
        core = [1]
    else:
        core = _heugcd(_int_primitive(ca), _int_primitive(cb))
        if core is None:
            core = _euclid_gcd(ca, cb)
    lead = Fraction(core[-1])
    return QPolynomial._raw([Fraction(0)] * shift + [Fraction(c) / lead for c in core])


# ---------------------------------------------------------------------------
# rational functions in q

_ONE_POLY = QPolynomial._raw((Fraction(1),))
_ZERO_POLY = QPolynomial._raw(())


class QRationalFunction:
    """Reduced quotient ``num/den`` of polynomials in ``q``; ``den`` is monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: QPolynomial | Rational = 0, den: QPolynomial | Rational = 1):
        if not isinstance(num, QPolynomial):
            num = QPolynomial((num,))
        if not isinstance(den, QPolynomial):
            den = QPolynomial((den,))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = _ZERO_POLY, _ONE_POLY
        else:
            g = poly_gcd(num, den)
            if not g.is_one():
                num = num.exact_div(g)
                den = den.exact_div(g)
            lead = den.leading
            if lead != 1:
                num = num * (1 / lead)
                den = den * (1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num: QPolynomial, den: QPolynomial) -> "QRationalFunction":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def q(cls) -> "QRationalFunction":
        return cls._raw(QPolynomial._raw((Fraction(0), Fraction(1))), _ONE_POLY)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __call__(self, q0: Rational) -> Fraction:
        d = self.den(q0)
        if not d:
            raise ZeroDivisionError(f"denominator vanishes at q = {q0}")
        return self.num(q0) / d

    evaluate = __call__

    @staticmethod
    def _coerce(other):
        if isinstance(other, QRationalFunction):
            return other
        if isinstance(other, QPolynomial):
            return QRationalFunction._raw(other, _ONE_POLY)
        if isinstance(other, (int, Fraction)):
            return QRationalFunction._raw(QPolynomial((other,)), _ONE_POLY)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        a, b, c, d = self.num, self.den, other.num, other.den
        if b.is_one() and d.is_one():
            n = a + c
            return QRationalFunction._raw(n, _ONE_POLY) if not n.is_zero() else ZERO
        if b == d:
            return QRationalFunction(a + c, b)
        g = poly_gcd(b, d)
        if g.is_one():
            return QRationalFunction._raw(a * d + c * b, b * d)
        bg = b.exact_div(g)
        dg = d.exact_div(g)
        t = a * dg + c * bg
        if t.is_zero():
            return ZERO
        g2 = poly_gcd(t, g)
        if not g2.is_one():
            t = t.exact_div(g2)
            g = g.exact_div(g2)
        return QRationalFunction._raw(t, bg * dg * g)

    __radd__ = __add__

    def __neg__(self):
        return QRationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return QRationalFunction._raw(self.num * other, self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return ZERO
        g1 = poly_gcd(a, d)
        g2 = poly_gcd(c, b)
        if not g1.is_one():
            a, d = a.exact_div(g1), d.exact_div(g1)
        if not g2.is_one():
            c, b = c.exact_div(g2), b.exact_div(g2)
        num, den = a * c, b * d
        lead = den.leading
        if lead != 1:
            num, den = num * (1 / lead), den * (1 / lead)
        return QRationalFunction._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "QRationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        lead = self.num.leading
        return QRationalFunction._raw(self.den * (1 / lead), self.num * (1 / lead))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return QRationalFunction._raw(self.num ** e, self.den ** e)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("QRationalFunction", self.num.coeffs, self.den.coeffs))

    def render(self) -> dict:
        return {"num": self.num.render(), "den": self.den.render()}

    @classmethod
    def parse(cls, doc: dict) -> "QRationalFunction":
        return cls(QPolynomial.parse(doc["num"]), QPolynomial.parse(doc["den"]))

    def __repr__(self):
        return f"QRationalFunction({self.render()})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


ZERO = QRationalFunction._raw(_ZERO_POLY, _ONE_POLY)
ONE = QRationalFunction._raw(_ONE_POLY, _ONE_POLY)


def as_qrf(x) -> QRationalFunction:
    """Coerce an int, Fraction, polynomial or rational function."""
    y = QRationalFunction._coerce(x)
    if y is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a rational function of q")
    return y


def q_power(k: int) -> QRationalFunction:
    """``q**k`` for any integer ``k`` (negative powers allowed)."""
    if k >= 0:
        return QRationalFunction._raw(QPolynomial.monomial(k), _ONE_POLY)
    return QRationalFunction._raw(_ONE_POLY, QPolynomial.monomial(-k))


def qrf_arith(a, b, op: str) -> QRationalFunction:
    a, b = as_qrf(a), as_qrf(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# expansions at q = infinity

class QinvSeries:
    """Truncated series ``sum coeffs[k] * q**-(offset+k) + O(q**-(order+1))``."""

    __slots__ = ("offset", "coeffs", "order")

    def __init__(self, coeffs: Iterable[Rational], order: int, offset: int = 0):
        c = [Fraction(x) for x in coeffs]
        need = order - offset + 1
        if need < 0:
            raise ValueError("order below offset")
        if len(c) > need:
            c = c[:need]
        c += [Fraction(0)] * (need - len(c))
        self.offset = offset
        self.order = order
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    def coefficient(self, k: int) -> Fraction:
        """Coefficient of ``q**-k``."""
        if k > self.order:
            raise IndexError(f"q^-{k} is beyond the truncation order {self.order}")
        if k < self.offset:
            return Fraction(0)
        return self.coeffs[k - self.offset]

    def as_list(self, start: int = 0) -> list[Fraction]:
        """Coefficients of ``q**-start, ..., q**-order``."""
        return [self.coefficient(k) for k in range(start, self.order + 1)]

    def truncate(self, order: int) -> "QinvSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return QinvSeries(self.coeffs, order, self.offset)

    def __call__(self, q0: Rational) -> Fraction:
        u = Fraction(1, 1) / q0
        return sum((c * u ** (self.offset + k) for k, c in enumerate(self.coeffs)), Fraction(0))

    evaluate = __call__

    def __add__(self, other: "QinvSeries") -> "QinvSeries":
        lo = min(self.offset, other.offset)
        hi = min(self.order, other.order)
        return QinvSeries([self.coefficient(k) + other.coefficient(k) for k in range(lo, hi + 1)],
                          hi, lo)

    def __neg__(self):
        return QinvSeries([-c for c in self.coeffs], self.order, self.offset)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QinvSeries([c * other for c in self.coeffs], self.order, self.offset)
        if not isinstance(other, QinvSeries):
            return NotImplemented
        # relative precision: each factor is known to (order - offset) terms
        lo = self.offset + other.offset
        hi = min(self.order + other.offset, other.order + self.offset)
        out = [Fraction(0)] * (hi - lo + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j > hi - lo:
                    break
                out[i + j] += a * b
        return QinvSeries(out, hi, lo)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, QinvSeries):
            return NotImplemented
        if self.order != other.order:
            return False
        lo = min(self.offset, other.offset)
        return all(self.coefficient(k) == other.coefficient(k) for k in range(lo, self.order + 1))

    def __hash__(self):
        return hash(("QinvSeries", self.order, tuple(self.as_list(min(0, self.offset)))))

    def render(self) -> dict:
        return {"offset": self.offset, "order": self.order,
                "coeffs": [render_rational(c) for c in self.coeffs]}

    @classmethod
    def parse(cls, doc: dict) -> "QinvSeries":
        return cls([parse_rational(s) for s in doc["coeffs"]], doc["order"], doc["offset"])

    def __repr__(self):
        return f"QinvSeries({self.render()})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            e = self.offset + k
            mono = "1" if e == 0 else (f"q^{-e}" if e > 0 else f"q^{-e}")
            if e == 0:
                body = render_rational(abs(c))
            else:
                body = mono if abs(c) == 1 else f"{render_rational(abs(c))}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        tail = f"O(q^-{self.order + 1})"
        if not parts:
            return tail
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return f"{text} + {tail}"


def laurent_expand(f, order: int, lowest: int = 0) -> QinvSeries:
    """Expand ``f(q)`` in powers of ``u = 1/q`` up to ``u**order``.

    The expansion is computed by substituting ``q = 1/u`` and dividing the
    reversed coefficient lists as power series. ``lowest`` is the smallest
    exponent of ``u`` the caller is prepared to accept; ``f`` growing faster
    than ``q**-lowest`` raises :class:`ExpansionError`.
    """
    f = as_qrf(f)
    if f.is_zero():
        return QinvSeries([], order, lowest)
    a, b = f.num.degree, f.den.degree
    valuation = b - a
    if valuation < lowest:
        raise ExpansionError(
            f"pole of order {lowest - valuation} at u = 0 (f grows like q^{a - b})")
    num = list(reversed(f.num.coeffs))
    den = list(reversed(f.den.coeffs))
    terms = order - valuation + 1
    out: list[Fraction] = []
    if terms > 0:
        inv0 = 1 / den[0]
        for k in range(terms):
            acc = num[k] if k < len(num) else Fraction(0)
            for m in range(1, min(k, len(den) - 1) + 1):
                acc -= den[m] * out[k - m]
            out.append(acc * inv0)
    pad = valuation - lowest
    return QinvSeries([Fraction(0)] * pad + out, order, lowest)
