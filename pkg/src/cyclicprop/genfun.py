"""Generating functions for cyclic proportions in subspace stabilisers.

Notation used throughout:

* ``Cent(i, j) = q**(i*j) - q**(i*j - i)`` is the centraliser order of a
  cyclic matrix whose characteristic polynomial is ``p**j`` with ``p``
  irreducible of degree ``i``.
* ``N(i, q)`` counts monic irreducibles of degree ``i``; ``N+(i, q)`` drops
  the polynomial ``t`` when ``i == 1``.
* ``F_i(t) = (1 + sum_j t**(i*j) / Cent(i, j)) ** N+(i, q)`` and
  ``C_GL(t) = prod_i F_i(t)`` has ``t**n`` coefficient equal to the
  proportion of cyclic matrices in ``GL(n, q)``.
* ``C_GL,r(t)`` and ``C_M,r(t)`` refine this to the stabiliser of an
  ``r``-dimensional subspace, by summing a product of factors over the
  multiplicity arrays of weight ``r``.

Every series function takes a ``mode``: either a field from
:mod:`cyclicprop.tseries`, an integer ``q`` (numeric mode), or the string
``"symbolic"``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator

from .arrays import MultiplicityArray, enumerate_marrays
from .exact import (
    ONE,
    QinvSeries,
    QPolynomial,
    QRationalFunction,
    laurent_expand,
    q_power,
)
from .tseries import DEFAULT_ORDER, SYMBOLIC, Rationals, SymbolicQ, TruncSeries, numeric

__all__ = [
    "GroupKind",
    "LimitValue",
    "resolve_mode",
    "mobius",
    "cent",
    "num_irreducibles",
    "f_i_series",
    "c_gl_series",
    "c_m_series",
    "omega",
    "omega_r",
    "phi_factor",
    "phi_factor_at_1",
    "phi_alpha_series",
    "alpha_profile",
    "c_glr_series",
    "c_mr_series",
    "c_glr_coefficient",
    "c_mr_coefficient",
    "gl_limit",
    "m_limit",
    "gl_limit_expansion",
    "m_limit_expansion",
    "euler_product_series",
    "GL_LIMIT_BASE",
]


class GroupKind(enum.Enum):
    GL = "gl"
    M = "m"

    @classmethod
    def parse(cls, value) -> "GroupKind":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


def resolve_mode(mode):
    """Turn ``mode`` into a coefficient field."""
    if isinstance(mode, (Rationals, SymbolicQ)):
        if isinstance(mode, Rationals) and mode.q is None:
            raise ValueError("numeric mode needs a value of q")
        return mode
    if mode is None or mode == "symbolic":
        return SYMBOLIC
    if isinstance(mode, int):
        return numeric(mode)
    raise ValueError(f"unrecognised mode {mode!r}")


Q = QRationalFunction.q()


# ---------------------------------------------------------------------------
# scalars

def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for positive integers")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def cent(i: int, j: int) -> QRationalFunction:
    if i < 1 or j < 1:
        raise ValueError("cent needs i, j >= 1")
    return q_power(i * j) - q_power(i * j - i)


@lru_cache(maxsize=None)
def num_irreducibles(i: int, plus: bool = False) -> QRationalFunction:
    """Number of monic irreducibles of degree ``i`` over F_q, as a polynomial in q.

    With ``plus`` the polynomial ``t`` is excluded, which only matters for
    ``i == 1``.
    """
    if i < 1:
        raise ValueError("degree must be positive")
    coeffs = [Fraction(0)] * (i + 1)
    for d in range(1, i + 1):
        if i % d == 0:
            coeffs[i // d] += Fraction(mobius(d), i)
    if plus and i == 1:
        coeffs[0] -= 1
    return QRationalFunction(QPolynomial(coeffs))


def _count_for(i: int, kind: GroupKind) -> QRationalFunction:
    return num_irreducibles(i, plus=(kind is GroupKind.GL))


def _falling_poly(x: QPolynomial, k: int) -> QPolynomial:
    out = QPolynomial.constant(1)
    for s in range(k):
        out = out * (x - s)
    return out


def omega(n: int) -> QRationalFunction:
    """``|GL(n,q)| / |M(n,q)| = prod_{i<=n} (1 - q**-i)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = ONE
    for i in range(1, n + 1):
        out = out * (1 - q_power(-i))
    return out


def omega_r(n: int, r: int) -> QRationalFunction:
    """``|GL(V)_U| / |M(V)_U|`` for an ``r``-dimensional ``U`` in ``V = F_q**n``."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    return omega(r) * omega(n - r)


# ---------------------------------------------------------------------------
# profile sums

def _profiles(total: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Partitions of ``total`` as ``((j, n_j), ...)`` with ``n_j >= 1``."""
    def walk(left: int, largest: int):
        if left == 0:
            yield ()
            return
        for j in range(min(left, largest), 0, -1):
            for n in range(left // j, 0, -1):
                for rest in walk(left - n * j, j - 1):
                    yield ((j, n),) + rest
    yield from walk(total, total)


def _profile_series(i: int, order: int, field, count: QPolynomial,
                    weight: Callable[[dict[int, int]], int]) -> TruncSeries:
    """``sum_h weight(profile(h)) t**deg(h) / Cent(h)`` over products of degree-``i`` irreducibles.

    ``count`` is the number of irreducibles available, as a polynomial in q.
    A profile ``{j: n_j}`` says ``n_j`` distinct irreducibles occur with
    multiplicity exactly ``j``; there are ``falling(count, k) / prod n_j!``
    such ``h`` where ``k = sum n_j``.
    """
    zero = field.zero()
    coeffs = [zero] * (order + 1)
    qi = QPolynomial.monomial(i)
    qi1 = qi - 1
    falling = [QPolynomial.constant(1)]
    for d in range(order // i + 1):
        if d == 0:
            w = weight({})
            if w:
                coeffs[0] = field.embed(w)
            continue
        # Cent(h) = q**(i*(d-k)) * (q**i - 1)**k; put everything over
        # q**(i*(d-1)) * (q**i - 1)**d
        acc = QPolynomial()
        for prof in _profiles(d):
            pd = dict(prof)
            w = weight(pd)
            if not w:
                continue
            k = sum(pd.values())
            while len(falling) <= k:
                falling.append(falling[-1] * (count - (len(falling) - 1)))
            if falling[k].is_zero():
                continue
            denom = 1
            for n in pd.values():
                denom *= math.factorial(n)
            acc = acc + falling[k] * (qi ** (k - 1)) * (qi1 ** (d - k)) * Fraction(w, denom)
        if acc.is_zero():
            continue
        value = QRationalFunction(acc, (qi ** (d - 1)) * (qi1 ** d))
        coeffs[i * d] = field.embed(value)
    return TruncSeries._raw(coeffs, field)


def _one_weight(_profile) -> int:
    return 1


@lru_cache(maxsize=None)
def _f_i_cached(i: int, order: int, field, kind: GroupKind = None) -> TruncSeries:
    kind = kind or GroupKind.GL
    if i > order:
        return TruncSeries.one(order, field)
    if isinstance(field, Rationals):
        n = _count_for(i, kind)(field.q)
        base = [Fraction(0)] * (order + 1)
        base[0] = Fraction(1)
        for j in range(1, order // i + 1):
            base[i * j] = 1 / cent(i, j)(field.q)
        return TruncSeries(base, order, field) ** int(n)
    return _profile_series(i, order, field, _count_for(i, kind).num, _one_weight)


def f_i_series(i: int, order: int = DEFAULT_ORDER, mode="symbolic", kind="gl") -> TruncSeries:
    """Truncated ``F_i(t)``.

    At numeric ``q`` this is a plain integer power of a series. At symbolic
    ``q`` the exponent ``N+(i, q)`` is a polynomial, so the power is
    expanded as a sum over multiplicity profiles instead. With ``kind="m"``
    the exponent is ``N(i, q)``, which lets ``t`` itself in for ``i == 1``.
    """
    if i < 1 or order < 0:
        raise ValueError("need i >= 1 and order >= 0")
    return _f_i_cached(i, order, resolve_mode(mode), GroupKind.parse(kind))


@lru_cache(maxsize=None)
def _c_gl_cached(order: int, field) -> TruncSeries:
    out = TruncSeries.one(order, field)
    for i in range(1, order + 1):
        out = out * _f_i_cached(i, order, field, GroupKind.GL)
    return out


def c_gl_series(order: int = DEFAULT_ORDER, mode="symbolic") -> TruncSeries:
    """``C_GL(t)``: the ``t**n`` coefficient is the cyclic proportion in GL(n, q)."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    return _c_gl_cached(order, resolve_mode(mode))


def _ft_factor(order: int, field) -> TruncSeries:
    # contribution of the polynomial t, which only the algebra admits
    coeffs = [field.one()] + [field.embed(1 / cent(1, j)) for j in range(1, order + 1)]
    return TruncSeries._raw(coeffs, field)


@lru_cache(maxsize=None)
def _c_m_cached(order: int, field) -> TruncSeries:
    return _c_gl_cached(order, field) * _ft_factor(order, field)


def c_m_series(order: int = DEFAULT_ORDER, mode="symbolic") -> TruncSeries:
    """``C_M(t)``: the ``t**n`` coefficient is ``c_M(n) / omega(n)``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    return _c_m_cached(order, resolve_mode(mode))


# ---------------------------------------------------------------------------
# factors indexed by multiplicity arrays

def _closed_coefficient(i: int, M: MultiplicityArray, kind: GroupKind) -> QRationalFunction:
    """``falling(N, m_i) / prod_j m_ij! * q**-r_i``."""
    row = M.row(i)
    value = QRationalFunction(_falling_poly(_count_for(i, kind).num, row.m_i))
    denom = 1
    for _, m in row.multiplicities:
        denom *= math.factorial(m)
    return value * Fraction(1, denom) * q_power(-row.r_i)


@lru_cache(maxsize=None)
def _phi_cached(i: int, M: MultiplicityArray, kind: GroupKind, order: int, field) -> TruncSeries:
    row = M.row(i)
    if row.is_empty():
        return TruncSeries.one(order, field)
    coef = field.embed(_closed_coefficient(i, M, kind))
    if row.r_i > order or not coef:
        return TruncSeries([], order, field)
    base = [field.zero()] * (order + 1)
    base[0] = field.embed(1 - q_power(-i))
    if i <= order:
        base[i] = field.embed(q_power(-2 * i))
    inv = TruncSeries._raw(base, field).reciprocal() ** row.m_i
    return inv.shift(row.r_i).scale(coef)


def phi_factor(i: int, M: MultiplicityArray, kind="gl", order: int = DEFAULT_ORDER,
               mode="symbolic") -> TruncSeries:
    """Closed-form factor contributed by row ``i`` of ``M``.

    Equal to ``falling(N, m_i) * prod_j (t/q)**(i*j*m_ij) /
    (m_ij! * (1 - q**-i + t**i q**(-2i))**m_ij)``, with ``N = N+(i, q)`` for
    GL and ``N(i, q)`` for the full algebra. An empty row gives 1.
    """
    return _phi_cached(i, M, GroupKind.parse(kind), order, resolve_mode(mode))


def phi_factor_at_1(i: int, M: MultiplicityArray, kind="gl") -> QRationalFunction:
    """The factor of :func:`phi_factor` evaluated at ``t = 1``."""
    kind = GroupKind.parse(kind)
    row = M.row(i)
    if row.is_empty():
        return ONE
    base = 1 - q_power(-i) + q_power(-2 * i)
    return _closed_coefficient(i, M, kind) / base ** row.m_i


def alpha_profile(row: dict[int, int], profile: dict[int, int]) -> int:
    """Ways to pick a divisor with row multiplicities ``row`` from ``profile``.

    ``profile[j]`` is the number of distinct irreducibles (of one fixed
    degree) that divide ``h`` exactly ``j`` times and ``row[j]`` the number
    the divisor must contain exactly ``j`` times. Working down from the
    largest ``j``, the ``row[j]`` factors are chosen among those of
    multiplicity at least ``j`` not already taken.
    """
    top = max(row, default=0)
    used = 0
    alpha = 1
    for j in range(top, 0, -1):
        need = row.get(j, 0)
        avail = sum(n for k, n in profile.items() if k >= j) - used
        if avail < need:
            return 0
        alpha *= math.comb(avail, need)
        used += need
    return alpha


@lru_cache(maxsize=None)
def _phi_alpha_cached(i: int, M: MultiplicityArray, kind: GroupKind, order: int, field) -> TruncSeries:
    row = M.row(i).as_dict()
    count = _count_for(i, kind).num
    return _profile_series(i, order, field, count, lambda prof: alpha_profile(row, prof))


def phi_alpha_series(i: int, M: MultiplicityArray, kind="gl", order: int = DEFAULT_ORDER,
                     mode="symbolic") -> TruncSeries:
    """``sum_h alpha(h; r_i, M_i) t**deg(h) / Cent(h)`` over products of degree-``i`` irreducibles.

    ``alpha`` counts the divisors of ``h`` whose degree-``i`` part has the
    shape prescribed by row ``i`` of ``M``. This is the combinatorial
    counterpart of ``phi_factor(i, M) * f_i_series(i)``.
    """
    return _phi_alpha_cached(i, M, GroupKind.parse(kind), order, resolve_mode(mode))


# ---------------------------------------------------------------------------
# stabiliser series

def _bracket(r: int, kind: GroupKind, order: int, field) -> TruncSeries:
    total = TruncSeries([], order, field)
    for M in enumerate_marrays(r):
        term = TruncSeries.one(order, field)
        for i in M.rows():
            term = term * _phi_cached(i, M, kind, order, field)
        total = total + term
    return total


def _alpha_route(r: int, kind: GroupKind, order: int, field) -> TruncSeries:
    total = TruncSeries([], order, field)
    for M in enumerate_marrays(r):
        term = TruncSeries.one(order, field)
        for i in range(1, max(order, r) + 1):
            term = term * _phi_alpha_cached(i, M, kind, order, field)
        total = total + term
    return total


@lru_cache(maxsize=None)
def _c_glr_cached(r: int, order: int, field, route: str) -> TruncSeries:
    if route == "alpha":
        return _alpha_route(r, GroupKind.GL, order, field)
    return _c_gl_cached(order, field) * _bracket(r, GroupKind.GL, order, field)


@lru_cache(maxsize=None)
def _c_mr_cached(r: int, order: int, field, route: str) -> TruncSeries:
    if route == "alpha":
        return _alpha_route(r, GroupKind.M, order, field)
    return _c_m_cached(order, field) * _bracket(r, GroupKind.M, order, field)


def _check_route(route: str):
    if route not in ("closed", "alpha"):
        raise ValueError(f"route must be 'closed' or 'alpha', got {route!r}")


def c_glr_series(r: int, order: int = DEFAULT_ORDER, mode="symbolic", route: str = "closed") -> TruncSeries:
    """``C_GL,r(t)``: the ``t**n`` coefficient is the cyclic proportion in ``GL(V)_U``.

    ``route="closed"`` multiplies ``C_GL`` by the sum of closed-form factors;
    ``route="alpha"`` sums products of :func:`phi_alpha_series` instead.
    Coefficients below ``t**r`` are zero. ``r == 0`` gives ``C_GL``.
    """
    if r < 0 or order < 0:
        raise ValueError("need r >= 0 and order >= 0")
    _check_route(route)
    return _c_glr_cached(r, order, resolve_mode(mode), route)


def c_mr_series(r: int, order: int = DEFAULT_ORDER, mode="symbolic", route: str = "closed") -> TruncSeries:
    """``C_M,r(t)``: the ``t**n`` coefficient is ``c_M,r(n) / omega_r(n)``."""
    if r < 0 or order < 0:
        raise ValueError("need r >= 0 and order >= 0")
    _check_route(route)
    return _c_mr_cached(r, order, resolve_mode(mode), route)


def c_glr_coefficient(r: int, n: int, mode="symbolic"):
    """Cyclic proportion in the stabiliser ``GL(V)_U``, ``dim V = n``, ``dim U = r``."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    return c_glr_series(r, n, mode).coefficient(n)


def c_mr_coefficient(r: int, n: int, mode="symbolic"):
    """Cyclic proportion in the algebra ``M(V)_U``, undoing the ``omega_r`` weight."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    field = resolve_mode(mode)
    return c_mr_series(r, n, field).coefficient(n) * field.embed(omega_r(n, r))


# ---------------------------------------------------------------------------
# limits

GL_LIMIT_BASE = (1 - q_power(-5)) / (1 + q_power(-3))
M_LIMIT_BASE = (1 - q_power(-5)) / ((1 - q_power(-1)) * (1 - q_power(-2)))


def euler_product_series(order: int, start: int = 1) -> QinvSeries:
    """``prod_{i >= start} (1 - u**i)`` in ``u = 1/q``, exact up to ``u**order``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for i in range(max(start, 1), order + 1):
        for k in range(order, i - 1, -1):
            coeffs[k] -= coeffs[k - i]
    return QinvSeries(coeffs, order)


@dataclass(frozen=True)
class LimitValue:
    """Limit of a cyclic proportion as ``n`` grows.

    The value is ``rational_part * prod_{i<=finite_euler} (1 - q**-i)``,
    further multiplied by ``prod_{i>=1} (1 - q**-i)`` when
    ``infinite_euler`` is set. Only the GL limits are rational functions.
    """

    kind: GroupKind
    r: int
    rational_part: QRationalFunction
    finite_euler: int = 0
    infinite_euler: bool = False

    @property
    def euler_factor_count(self) -> str:
        if self.infinite_euler:
            return "full infinite"
        return "finite r-fold" if self.finite_euler else "none"

    def finite_part(self) -> QRationalFunction:
        out = self.rational_part
        for i in range(1, self.finite_euler + 1):
            out = out * (1 - q_power(-i))
        return out

    def is_rational(self) -> bool:
        return not self.infinite_euler

    def expand(self, order: int) -> QinvSeries:
        series = laurent_expand(self.finite_part(), order)
        if self.infinite_euler:
            series = series * euler_product_series(order)
        return series

    def evaluate(self, q: int, terms: int = 40) -> Fraction:
        """Value at ``q``; exact for rational limits.

        With an infinite Euler product the first ``terms`` factors are used;
        the relative error is below ``q**-terms``.
        """
        value = self.finite_part()(q)
        if self.infinite_euler:
            for i in range(1, terms + 1):
                value *= 1 - Fraction(1, q ** i)
        return value

    def to_json(self) -> dict:
        return {
            "group": self.kind.value,
            "r": self.r,
            "rational_part": self.rational_part.render(),
            "euler_factor_count": self.euler_factor_count,
            "finite_euler": self.finite_euler,
            "infinite_euler": self.infinite_euler,
        }


def _limit_sum(r: int, kind: GroupKind) -> QRationalFunction:
    total = QRationalFunction(0)
    for M in enumerate_marrays(r):
        term = ONE
        for i in M.rows():
            term = term * phi_factor_at_1(i, M, kind)
        total = total + term
    return total


@lru_cache(maxsize=None)
def gl_limit(r: int) -> LimitValue:
    """Limiting cyclic proportion in ``GL(V)_U`` with ``dim U = r``, a rational function of q."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    return LimitValue(GroupKind.GL, r, GL_LIMIT_BASE * _limit_sum(r, GroupKind.GL))


@lru_cache(maxsize=None)
def m_limit(r: int) -> LimitValue:
    """Limiting cyclic proportion in ``M(V)_U``.

    ``rational_part`` is the limit of the weighted coefficients
    ``c_M,r(n) / omega_r(n)``; the limit of ``omega_r(n)`` supplies the
    Euler factors.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    return LimitValue(GroupKind.M, r, M_LIMIT_BASE * _limit_sum(r, GroupKind.M),
                      finite_euler=r, infinite_euler=True)


def gl_limit_expansion(r: int, order: int) -> QinvSeries:
    return gl_limit(r).expand(order)


def m_limit_expansion(r: int, order: int) -> QinvSeries:
    return m_limit(r).expand(order)
