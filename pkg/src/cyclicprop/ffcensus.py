"""Brute-force ground truth over small prime fields.

Matrices act on row vectors from the right, ``w -> w A``. The subspace ``U``
is spanned by the first ``r`` standard basis vectors, so a matrix leaves ``U``
invariant exactly when its top-right ``r x (n-r)`` block is zero. Such a
matrix is stored by its three remaining blocks::

    [[A, 0],
     [C, B]]

with ``A`` of size ``r x r``, ``C`` of size ``(n-r) x r`` and ``B`` of size
``(n-r) x (n-r)``. Enumerating the blocks separately makes filtering for
invertibility free, since ``det = det(A) det(B)``.

The enumeration cap defaults to ``10**8`` matrices and can be raised with the
``CYCPROP_MAX_ENUM`` environment variable or the ``max_enum`` argument.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

__all__ = [
    "PrimeField",
    "PolyGF",
    "MatrixGF",
    "CensusResult",
    "ConjugacyResult",
    "TLambdaResult",
    "TLambdaFamily",
    "SizeGuardError",
    "char_poly",
    "min_poly",
    "is_cyclic",
    "census",
    "alpha_brute",
    "conjugacy_census",
    "t_lambda_enumerate",
    "t_lambda_family",
    "monic_polys",
    "is_irreducible",
    "count_irreducibles",
    "has_cyclic_vector",
    "invariant_subspaces",
    "centralizer_order",
    "stabiliser_matrices",
    "general_linear",
    "DEFAULT_MAX_ENUM",
]

DEFAULT_MAX_ENUM = 10 ** 8


class SizeGuardError(RuntimeError):
    """The requested enumeration is larger than the configured cap."""


def _max_enum(override: int | None) -> int:
    if override is not None:
        return override
    env = os.environ.get("CYCPROP_MAX_ENUM")
    return int(env) if env else DEFAULT_MAX_ENUM


def _guard(size: int, max_enum: int | None):
    cap = _max_enum(max_enum)
    if size > cap:
        raise SizeGuardError(
            f"enumeration of {size} matrices exceeds the cap {cap}; "
            "raise it with --max-enum or CYCPROP_MAX_ENUM")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def elements(self) -> range:
        return range(self.p)

    def units(self) -> range:
        return range(1, self.p)

    def inv(self, a: int) -> int:
        a %= self.p
        if not a:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.p)


# ---------------------------------------------------------------------------
# polynomials

def _ptrim(c: list[int]) -> list[int]:
    while c and not c[-1]:
        c.pop()
    return c


class PolyGF:
    """Polynomial over F_p in ascending coefficient order."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: PrimeField, coeffs: Iterable[int]):
        p = field.p
        self.field = field
        self.coeffs = tuple(_ptrim([c % p for c in coeffs]))

    @classmethod
    def t(cls, field: PrimeField) -> "PolyGF":
        return cls(field, (0, 1))

    @classmethod
    def linear(cls, field: PrimeField, root: int) -> "PolyGF":
        """``t - root``."""
        return cls(field, (-root, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "PolyGF":
        if not self.coeffs:
            return self
        inv = self.field.inv(self.coeffs[-1])
        return PolyGF(self.field, (c * inv for c in self.coeffs))

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.field.p
        return acc

    def __add__(self, other: "PolyGF") -> "PolyGF":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return PolyGF(self.field, ((a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0)
                                   for k in range(n)))

    def __neg__(self):
        return PolyGF(self.field, (-c for c in self.coeffs))

    def __sub__(self, other: "PolyGF") -> "PolyGF":
        return self + (-other)

    def __mul__(self, other: "PolyGF") -> "PolyGF":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyGF(self.field, ())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyGF(self.field, out)

    def __pow__(self, e: int) -> "PolyGF":
        out = PolyGF(self.field, (1,))
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other: "PolyGF"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.field.p
        rem = list(self.coeffs)
        g = other.coeffs
        dg = len(g) - 1
        inv = self.field.inv(g[-1])
        if len(rem) - 1 < dg:
            return PolyGF(self.field, ()), self
        quo = [0] * (len(rem) - dg)
        for k in range(len(rem) - 1 - dg, -1, -1):
            c = rem[k + dg] * inv % p
            quo[k] = c
            if c:
                for m in range(dg + 1):
                    rem[k + m] = (rem[k + m] - c * g[m]) % p
        return PolyGF(self.field, quo), PolyGF(self.field, rem[:dg])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def divides(self, other: "PolyGF") -> bool:
        """True when ``self`` divides ``other``."""
        return (other % self).is_zero()

    def gcd(self, other: "PolyGF") -> "PolyGF":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def lcm(self, other: "PolyGF") -> "PolyGF":
        if self.is_zero() or other.is_zero():
            return PolyGF(self.field, ())
        return (self * other // self.gcd(other)).monic()

    def __eq__(self, other):
        if not isinstance(other, PolyGF):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.coeffs))

    def __repr__(self):
        return f"PolyGF(p={self.field.p}, {list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


def monic_polys(field: PrimeField, degree: int) -> Iterator[PolyGF]:
    """All monic polynomials of the given degree, in a fixed order."""
    for low in itertools.product(field.elements(), repeat=degree):
        yield PolyGF(field, tuple(reversed(low)) + (1,))


def is_irreducible(f: PolyGF) -> bool:
    """Trial division by every monic polynomial of degree up to ``deg f / 2``."""
    if f.degree < 1:
        return False
    for d in range(1, f.degree // 2 + 1):
        for g in monic_polys(f.field, d):
            if g.divides(f):
                return False
    return True


def count_irreducibles(q: int, degree: int) -> int:
    field = PrimeField(q)
    return sum(1 for f in monic_polys(field, degree) if is_irreducible(f))


def alpha_brute(h: PolyGF, r: int) -> int:
    """Number of distinct monic degree-``r`` divisors of ``h`` (trial division)."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if h.is_zero():
        raise ValueError("alpha is not defined for the zero polynomial")
    if h.degree < r:
        return 0
    return sum(1 for f in monic_polys(h.field, r) if f.divides(h))


# ---------------------------------------------------------------------------
# raw matrix kernels (tuples of row tuples)

def _matmul(X, Y, p):
    cols = list(zip(*Y))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) % p for col in cols) for row in X)


def _vecmul(v, X, p):
    n = len(X[0]) if X else 0
    out = [0] * n
    for a, row in zip(v, X):
        if a:
            for k in range(n):
                out[k] += a * row[k]
    return [x % p for x in out]


def _echelon_insert(basis: list, v: list[int], p: int) -> list[int]:
    """Reduce ``v`` against ``basis`` (pairs ``(pivot, row)``); returns the remainder."""
    v = list(v)
    for piv, row in basis:
        c = v[piv]
        if c:
            v = [(x - c * y) % p for x, y in zip(v, row)]
    return v


def _rank(rows, p) -> int:
    basis: list = []
    for r in rows:
        v = _echelon_insert(basis, r, p)
        piv = next((k for k, x in enumerate(v) if x), None)
        if piv is not None:
            inv = pow(v[piv], -1, p)
            v = [x * inv % p for x in v]
            basis = [(pv, [(x - row[piv] * y) % p for x, y in zip(row, v)]) for pv, row in basis]
            basis.append((piv, v))
    return len(basis)


def _in_span(rows, target, p) -> bool:
    """Is ``target`` a linear combination of ``rows``?"""
    basis: list = []
    for r in rows:
        v = _echelon_insert(basis, r, p)
        piv = next((k for k, x in enumerate(v) if x), None)
        if piv is not None:
            inv = pow(v[piv], -1, p)
            v = [x * inv % p for x in v]
            basis = [(pv, [(x - row[piv] * y) % p for x, y in zip(row, v)]) for pv, row in basis]
            basis.append((piv, v))
    return not any(_echelon_insert(basis, target, p))


def _det(X, p) -> int:
    M = [list(r) for r in X]
    n = len(M)
    det = 1
    for c in range(n):
        piv = next((k for k in range(c, n) if M[k][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c] % p
        inv = pow(M[c][c], -1, p)
        for k in range(c + 1, n):
            f = M[k][c] * inv % p
            if f:
                M[k] = [(x - f * y) % p for x, y in zip(M[k], M[c])]
    return det % p


def _berkowitz(X, p) -> list[int]:
    """Descending coefficients of ``det(tI - X)`` without division."""
    n = len(X)
    if n == 0:
        return [1]
    a11 = X[0][0]
    R = X[0][1:]
    C = [X[k][0] for k in range(1, n)]
    sub = tuple(tuple(row[1:]) for row in X[1:])
    col = [1, -a11 % p]
    v = C
    for _ in range(n - 1):
        col.append(-sum(a * b for a, b in zip(R, v)) % p)
        # next Krylov column sub @ v
        v = [sum(sub[k][m] * v[m] for m in range(n - 1)) % p for k in range(n - 1)]
    inner = _berkowitz(sub, p)
    out = []
    for i in range(n + 1):
        s = 0
        for j in range(min(i, n - 1) + 1):
            s += col[i - j] * inner[j]
        out.append(s % p)
    return out


def _vector_annihilator(v, X, p) -> list[int]:
    """Ascending coefficients of the monic minimal polynomial of ``v`` under ``X``."""
    n = len(X)
    basis: list = []            # (pivot, reduced row, combination)
    w = list(v)
    k = 0
    while True:
        red = list(w)
        comb = [0] * (k + 1)
        comb[k] = 1
        for piv, row, cmb in basis:
            c = red[piv]
            if c:
                red = [(x - c * y) % p for x, y in zip(red, row)]
                comb = [(x - c * (cmb[i] if i < len(cmb) else 0)) % p for i, x in enumerate(comb)]
        piv = next((i for i, x in enumerate(red) if x), None)
        if piv is None:
            return comb
        inv = pow(red[piv], -1, p)
        red = [x * inv % p for x in red]
        comb = [x * inv % p for x in comb]
        basis.append((piv, red, comb))
        w = _vecmul(w, X, p)
        k += 1
        if k > n:
            raise AssertionError("Krylov sequence failed to terminate")


def _min_poly_raw(X, p) -> list[int]:
    field = PrimeField(p)
    out = PolyGF(field, (1,))
    n = len(X)
    for k in range(n):
        e = [0] * n
        e[k] = 1
        out = out.lcm(PolyGF(field, _vector_annihilator(e, X, p)))
        if out.degree == n:
            break
    return list(out.coeffs)


def _is_cyclic_raw(X, p) -> bool:
    return len(_min_poly_raw(X, p)) - 1 == len(X)


# ---------------------------------------------------------------------------
# matrices

class MatrixGF:
    """Square matrix over F_p, rows stored as tuples."""

    __slots__ = ("field", "rows")

    def __init__(self, field: PrimeField, rows: Sequence[Sequence[int]]):
        p = field.p
        rows = tuple(tuple(x % p for x in row) for row in rows)
        if any(len(row) != len(rows) for row in rows):
            raise ValueError("matrix must be square")
        self.field = field
        self.rows = rows

    @classmethod
    def _raw(cls, field, rows) -> "MatrixGF":
        obj = object.__new__(cls)
        obj.field = field
        obj.rows = rows
        return obj

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "MatrixGF":
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, field: PrimeField, n: int, c: int) -> "MatrixGF":
        return cls(field, [[c if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def companion(cls, f: PolyGF) -> "MatrixGF":
        """Companion matrix of a monic ``f``; ``e_1`` is a cyclic vector."""
        if not f.is_monic():
            raise ValueError("companion matrix needs a monic polynomial")
        n = f.degree
        rows = [[int(j == i + 1) for j in range(n)] for i in range(n - 1)]
        rows.append([-c for c in f.coeffs[:n]])
        return cls(f.field, rows)

    @classmethod
    def block_diag(cls, *blocks: "MatrixGF") -> "MatrixGF":
        field = blocks[0].field
        n = sum(b.n for b in blocks)
        rows = []
        at = 0
        for b in blocks:
            for row in b.rows:
                rows.append([0] * at + list(row) + [0] * (n - at - b.n))
            at += b.n
        return cls(field, rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other: "MatrixGF") -> "MatrixGF":
        return MatrixGF._raw(self.field, _matmul(self.rows, other.rows, self.field.p))

    def __add__(self, other: "MatrixGF") -> "MatrixGF":
        return MatrixGF(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "MatrixGF") -> "MatrixGF":
        return MatrixGF(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def act(self, v: Sequence[int]) -> tuple[int, ...]:
        """Row vector times matrix."""
        return tuple(_vecmul(v, self.rows, self.field.p))

    def transpose(self) -> "MatrixGF":
        return MatrixGF._raw(self.field, tuple(zip(*self.rows)))

    def det(self) -> int:
        return _det(self.rows, self.field.p)

    def rank(self) -> int:
        return _rank(self.rows, self.field.p)

    def is_invertible(self) -> bool:
        return self.det() != 0

    def inverse(self) -> "MatrixGF":
        p = self.field.p
        n = self.n
        M = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            piv = next((k for k in range(c, n) if M[k][c]), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            M[c], M[piv] = M[piv], M[c]
            inv = pow(M[c][c], -1, p)
            M[c] = [x * inv % p for x in M[c]]
            for k in range(n):
                if k != c and M[k][c]:
                    f = M[k][c]
                    M[k] = [(x - f * y) % p for x, y in zip(M[k], M[c])]
        return MatrixGF._raw(self.field, tuple(tuple(r[n:]) for r in M))

    def char_poly(self) -> PolyGF:
        desc = _berkowitz(self.rows, self.field.p)
        return PolyGF(self.field, reversed(desc))

    def min_poly(self) -> PolyGF:
        return PolyGF(self.field, _min_poly_raw(self.rows, self.field.p))

    def is_cyclic(self) -> bool:
        return _is_cyclic_raw(self.rows, self.field.p)

    def eigenspace_dim(self, lam: int) -> int:
        return self.n - (self - MatrixGF.scalar(self.field, self.n, lam)).rank()

    def __eq__(self, other):
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field.p, self.rows))

    def __repr__(self):
        return f"MatrixGF(p={self.field.p}, {[list(r) for r in self.rows]})"


def char_poly(A: MatrixGF) -> PolyGF:
    return A.char_poly()


def min_poly(A: MatrixGF) -> PolyGF:
    return A.min_poly()


def is_cyclic(A: MatrixGF) -> bool:
    return A.is_cyclic()


def has_cyclic_vector(A: MatrixGF) -> bool:
    """Try every vector ``w`` and test whether ``w, wA, ...`` spans the space."""
    p, n = A.field.p, A.n
    for w in itertools.product(range(p), repeat=n):
        if not any(w):
            continue
        krylov = [list(w)]
        for _ in range(n - 1):
            krylov.append(_vecmul(krylov[-1], A.rows, p))
        if _rank(krylov, p) == n:
            return True
    return False


def _rref_key(rows, p) -> tuple:
    basis: list = []
    for r in rows:
        v = _echelon_insert(basis, r, p)
        piv = next((k for k, x in enumerate(v) if x), None)
        if piv is not None:
            inv = pow(v[piv], -1, p)
            v = [x * inv % p for x in v]
            basis = [(pv, [(x - row[piv] * y) % p for x, y in zip(row, v)]) for pv, row in basis]
            basis.append((piv, v))
    return tuple(sorted(tuple(v) for _, v in basis))


def all_subspaces(field: PrimeField, n: int) -> list[tuple]:
    """Every subspace of ``F_p**n`` as a canonical tuple of RREF rows."""
    p = field.p
    vectors = [v for v in itertools.product(range(p), repeat=n) if any(v)]
    seen = {()}
    frontier = [()]
    while frontier:
        nxt = []
        for S in frontier:
            for v in vectors:
                key = _rref_key(list(S) + [list(v)], p)
                if key not in seen:
                    seen.add(key)
                    nxt.append(key)
        frontier = nxt
    return sorted(seen, key=lambda s: (len(s), s))


def invariant_subspaces(A: MatrixGF) -> list[tuple]:
    p = A.field.p
    out = []
    for S in all_subspaces(A.field, A.n):
        if all(_in_span(S, _vecmul(v, A.rows, p), p) for v in S):
            out.append(S)
    return out


def general_linear(field: PrimeField, n: int) -> list[MatrixGF]:
    """All of GL(n, p) (small ``n`` only)."""
    p = field.p
    out = []
    for flat in itertools.product(range(p), repeat=n * n):
        rows = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if _det(rows, p):
            out.append(MatrixGF._raw(field, rows))
    return out


def centralizer_order(A: MatrixGF) -> int:
    """``|C_GL(n,p)(A)|`` by brute force."""
    return sum(1 for B in general_linear(A.field, A.n) if A * B == B * A)


# ---------------------------------------------------------------------------
# stabiliser enumeration

@lru_cache(maxsize=None)
def _blocks(p: int, rows: int, cols: int, invertible: bool) -> tuple:
    out = []
    for flat in itertools.product(range(p), repeat=rows * cols):
        X = tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows))
        if invertible and not _det(X, p):
            continue
        out.append(X)
    return tuple(out)


def _assemble(A, C, B, r: int, n: int) -> tuple:
    zeros = (0,) * (n - r)
    return tuple(A[i] + zeros for i in range(r)) + tuple(C[k] + B[k] for k in range(n - r))


def _check_nr(n: int, r: int):
    if not 1 <= r < n:
        raise ValueError(f"need 1 <= r < n, got r={r}, n={n}")


def stabiliser_size(q: int, n: int, r: int, invertible_only: bool) -> int:
    if invertible_only:
        return q ** (r * (n - r)) * _gl_order(q, r) * _gl_order(q, n - r)
    return q ** (n * n - r * (n - r))


def _gl_order(q: int, n: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def stabiliser_matrices(q: int, n: int, r: int, invertible_only: bool,
                        shard: int = 0, shards: int = 1) -> Iterator[tuple]:
    """Raw rows of every matrix in ``GL(V)_U`` or ``M(V)_U``.

    The enumeration order is fixed: top-left block first, then the
    bottom-left block, then the bottom-right block. Shard ``k`` of ``s``
    takes the top-left blocks with index congruent to ``k`` mod ``s``.
    """
    _check_nr(n, r)
    As = _blocks(q, r, r, invertible_only)
    Cs = _blocks(q, n - r, r, False)
    Bs = _blocks(q, n - r, n - r, invertible_only)
    for a in range(shard, len(As), shards):
        A = As[a]
        for C in Cs:
            for B in Bs:
                yield _assemble(A, C, B, r, n)


@dataclass(frozen=True)
class CensusResult:
    q: int
    n: int
    r: int
    invertible_only: bool
    total: int
    cyclic: int

    @property
    def proportion(self):
        from fractions import Fraction
        return Fraction(self.cyclic, self.total)

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "r": self.r, "invertible_only": self.invertible_only,
                "total": self.total, "cyclic": self.cyclic}


def _census_shard(args) -> tuple[int, int]:
    q, n, r, inv, shard, shards = args
    total = cyclic = 0
    for X in stabiliser_matrices(q, n, r, inv, shard, shards):
        total += 1
        if _is_cyclic_raw(X, q):
            cyclic += 1
    return total, cyclic


def census(q: int, n: int, r: int, invertible_only: bool, *, shards: int = 1,
           workers: int = 1, max_enum: int | None = None) -> CensusResult:
    """Count cyclic matrices in ``GL(V)_U`` (``invertible_only``) or ``M(V)_U``."""
    PrimeField(q)
    _check_nr(n, r)
    _guard(stabiliser_size(q, n, r, invertible_only), max_enum)
    jobs = [(q, n, r, invertible_only, k, shards) for k in range(shards)]
    if workers > 1 and shards > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_census_shard, jobs))
    else:
        parts = [_census_shard(j) for j in jobs]
    total = sum(t for t, _ in parts)
    cyclic = sum(c for _, c in parts)
    return CensusResult(q, n, r, invertible_only, total, cyclic)


# ---------------------------------------------------------------------------
# conjugacy classes

@dataclass(frozen=True)
class ConjugacyResult:
    q: int
    n: int
    r: int
    orbit_count: int
    pair_count: int

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "r": self.r,
                "orbit_count": self.orbit_count, "pair_count": self.pair_count}


def conjugacy_census(q: int, n: int, r: int, max_group: int = 10 ** 5) -> ConjugacyResult:
    """Orbits of ``GL(V)_U`` on cyclic elements of ``M(V)_U``, and divisor pairs.

    ``orbit_count`` comes from explicit conjugation closure. ``pair_count``
    is the number of monic pairs ``(f, h)`` with ``deg f = r``, ``deg h = n``
    and ``f | h``.
    """
    field = PrimeField(q)
    _check_nr(n, r)
    if stabiliser_size(q, n, r, True) > max_group:
        raise SizeGuardError("stabiliser group too large for orbit computation")
    _guard(stabiliser_size(q, n, r, False), None)
    group = [MatrixGF._raw(field, X) for X in stabiliser_matrices(q, n, r, True)]
    pairs = [(g, g.inverse()) for g in group]
    cyclic = [X for X in stabiliser_matrices(q, n, r, False) if _is_cyclic_raw(X, q)]
    unseen = set(cyclic)
    orbits = 0
    for X in cyclic:
        if X not in unseen:
            continue
        orbits += 1
        A = MatrixGF._raw(field, X)
        for g, gi in pairs:
            unseen.discard((gi * A * g).rows)
    pair_count = sum(alpha_brute(h, r) for h in monic_polys(field, n))
    return ConjugacyResult(q, n, r, orbits, pair_count)


# ---------------------------------------------------------------------------
# the T_lambda family

@dataclass(frozen=True)
class TLambdaResult:
    q: int
    n: int
    r: int
    lam: int
    members: int
    all_noncyclic: bool
    large_eigenspace: int = 0

    @property
    def size_bound(self) -> int:
        """Twice the leading-order size ``q**(n*n + r*r - r*n - 3)``."""
        return 2 * self.q ** (self.n ** 2 + self.r ** 2 - self.r * self.n - 3)

    def within_size_bound(self) -> bool:
        return self.members <= self.size_bound

    def to_json(self) -> dict:
        return {"lambda": self.lam, "members": self.members, "all_noncyclic": self.all_noncyclic,
                "eigenspace_dim_above_2": self.large_eigenspace,
                "size_bound": self.size_bound, "within_size_bound": self.within_size_bound()}


@dataclass(frozen=True)
class TLambdaFamily:
    q: int
    n: int
    r: int
    per_lambda: tuple[TLambdaResult, ...]
    intersections: dict = dc_field(default_factory=dict)

    @property
    def intersection_bound(self) -> int:
        return self.q ** (self.n ** 2 + self.r ** 2 - self.n * self.r - 6)

    def all_noncyclic(self) -> bool:
        return all(res.all_noncyclic for res in self.per_lambda)

    def intersections_within_bound(self) -> bool:
        return all(v <= self.intersection_bound for v in self.intersections.values())

    def to_json(self) -> dict:
        return {
            "q": self.q, "n": self.n, "r": self.r,
            "per_lambda": [res.to_json() for res in self.per_lambda],
            "intersections": [{"lambda": a, "gamma": b, "count": v}
                              for (a, b), v in sorted(self.intersections.items())],
            "intersection_bound": self.intersection_bound,
            "all_noncyclic": self.all_noncyclic(),
            "intersections_within_bound": self.intersections_within_bound(),
        }


def _shifted(X, lam, p):
    return tuple(tuple((x - lam) % p if i == j else x for j, x in enumerate(row))
                 for i, row in enumerate(X))


def _first_eigen_condition(A, lam: int, p: int) -> bool:
    """Is there ``w`` in ``e_1 + <e_2..e_r>`` with ``w (T - lam) = 0``?

    ``w`` lies in ``U`` so only the top-left block of ``T`` matters.
    """
    S = _shifted(A, lam, p)
    return _in_span(S[1:], [(-x) % p for x in S[0]], p)


def _second_eigen_condition(X, lam: int, p: int) -> bool:
    """Is there ``w`` in ``e_n + <e_1..e_{n-1}>`` with ``w (T - lam) = 0``?"""
    S = _shifted(X, lam, p)
    return _in_span(S[:-1], [(-x) % p for x in S[-1]], p)


def _cube_divides(X, lam: int, p: int) -> bool:
    field = PrimeField(p)
    c = PolyGF(field, reversed(_berkowitz(X, p)))
    return (PolyGF.linear(field, lam) ** 3).divides(c)


def t_lambda_family(q: int, n: int, r: int, max_enum: int | None = None) -> TLambdaFamily:
    """Enumerate ``T_lambda`` for every nonzero ``lambda`` in one pass over ``GL(V)_U``."""
    field = PrimeField(q)
    _check_nr(n, r)
    _guard(stabiliser_size(q, n, r, True), max_enum)
    lams = list(field.units())
    counts = {lam: 0 for lam in lams}
    cyclic_members = {lam: 0 for lam in lams}
    large = {lam: 0 for lam in lams}
    inter = {(a, b): 0 for a in lams for b in lams if a < b}
    As = _blocks(q, r, r, True)
    Cs = _blocks(q, n - r, r, False)
    Bs = _blocks(q, n - r, n - r, True)
    for A in As:
        first = [lam for lam in lams if _first_eigen_condition(A, lam, q)]
        if not first:
            continue
        for C in Cs:
            for B in Bs:
                X = _assemble(A, C, B, r, n)
                hit = [lam for lam in first
                       if _second_eigen_condition(X, lam, q) and not _cube_divides(X, lam, q)]
                if not hit:
                    continue
                cyc = _is_cyclic_raw(X, q)
                for lam in hit:
                    counts[lam] += 1
                    cyclic_members[lam] += cyc
                    if n - _rank(_shifted(X, lam, q), q) > 2:
                        large[lam] += 1
                for a, b in itertools.combinations(hit, 2):
                    inter[(a, b)] += 1
    per = tuple(TLambdaResult(q, n, r, lam, counts[lam], cyclic_members[lam] == 0, large[lam])
                for lam in lams)
    return TLambdaFamily(q, n, r, per, inter)


def t_lambda_enumerate(q: int, n: int, r: int, lam: int, max_enum: int | None = None) -> TLambdaResult:
    """Members of ``T_lambda`` and whether all of them are noncyclic."""
    if lam % q == 0:
        raise ValueError("lambda must be a nonzero field element")
    family = t_lambda_family(q, n, r, max_enum)
    return next(res for res in family.per_lambda if res.lam == lam % q)
