"""Acceptance checks, one per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (a summary block is printed
at the end) or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction

import pytest

from cyclicprop.arrays import enumerate_marrays, weighted_partition_sum
from cyclicprop.exact import QPolynomial, QRationalFunction, q_power
from cyclicprop.ffcensus import (
    MatrixGF,
    PrimeField,
    alpha_brute,
    census,
    conjugacy_census,
    invariant_subspaces,
    stabiliser_matrices,
    t_lambda_family,
)
from cyclicprop.genfun import (
    GL_LIMIT_BASE,
    c_gl_series,
    c_glr_coefficient,
    c_glr_series,
    c_m_series,
    c_mr_coefficient,
    c_mr_series,
    f_i_series,
    gl_limit,
    gl_limit_expansion,
    m_limit_expansion,
    phi_alpha_series,
    phi_factor,
)
from cyclicprop.tseries import SYMBOLIC, TruncSeries

RESULTS: list[str] = []

# coefficient rows of the limits in powers of 1/q, q^0 .. q^-7
GL_GOLDEN = {
    1: [1, 0, -1, -2, 0, 1, 3, 1],
    2: [1, 0, -1, -3, 1, 3, 4, -2],
    3: [1, 0, -1, -3, 1, 4, 4, -5],
    4: [1, 0, -1, -3, 1, 4, 4, -6],
    5: [1, 0, -1, -3, 1, 4, 4, -6],
    6: [1, 0, -1, -3, 1, 4, 4, -6],
    7: [1, 0, -1, -3, 1, 4, 4, -6],
}
M_GOLDEN = {
    1: [1, 0, -1, -2, -1, 0, 2, 3],
    2: [1, 0, -1, -4, -1, 4, 5, 4],
    3: [1, 0, -1, -4, -3, 4, 11, 8],
    4: [1, 0, -1, -4, -3, 2, 11, 14],
    5: [1, 0, -1, -4, -3, 2, 9, 14],
    6: [1, 0, -1, -4, -3, 2, 9, 12],
    7: [1, 0, -1, -4, -3, 2, 9, 12],
}

ORACLE_CASES = [(2, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 1), (2, 4, 1), (2, 4, 2), (3, 3, 1)]


def _golden(expand, table):
    bad = []
    for r, row in table.items():
        got = expand(r, 7).as_list()
        if got != row:
            first = next(k for k, (a, b) in enumerate(zip(got, row)) if a != b)
            bad.append(f"r={r} differs from q^-{first}: computed {got}, table {row}")
    if bad:
        return False, "; ".join(bad)
    return True, "rows r=1..7 match exactly; no mismatch at or beyond q^-4"


def criterion_1():
    return _golden(gl_limit_expansion, GL_GOLDEN)


def criterion_2():
    return _golden(m_limit_expansion, M_GOLDEN)


def criterion_3():
    bad = [(kind, r) for r in range(1, 8)
           for kind, expand in (("gl", gl_limit_expansion), ("m", m_limit_expansion))
           if expand(r, 2).as_list() != [1, 0, -1]]
    note = (f"r=0 lies outside r >= 1 and gives GL {gl_limit_expansion(0, 3)}, "
            f"M {m_limit_expansion(0, 3)}")
    if bad:
        return False, f"failing (kind, r): {bad}; {note}"
    return True, f"1 + 0 q^-1 - q^-2 for r=1..7, both kinds; {note}"


def criterion_4():
    ok_gl = c_glr_series(0, 12) == c_gl_series(12)
    ok_m = c_mr_series(0, 12) == c_m_series(12)
    lim = gl_limit(0).rational_part
    ok_lim = lim == GL_LIMIT_BASE == (1 - q_power(-5)) / (1 + q_power(-3))
    # canonical form: (q^5 - 1) / (q^5 + q^2), already coprime
    canon = lim.num == QPolynomial([-1, 0, 0, 0, 0, 1]) and lim.den == QPolynomial([0, 0, 1, 0, 0, 1])
    ok = ok_gl and ok_m and ok_lim and canon
    return ok, f"GL series {ok_gl}, M series {ok_m}, limit {lim} canonical {ok_lim and canon}"


def criterion_5():
    count = 0
    bad = []
    for r in range(1, 5):
        for M in enumerate_marrays(r):
            for i in range(1, 5):
                for kind in ("gl", "m"):
                    closed = phi_factor(i, M, kind, 12) * f_i_series(i, 12, kind=kind)
                    count += 1
                    if closed != phi_alpha_series(i, M, kind, 12):
                        bad.append((kind, i, M.entries))
    if bad:
        return False, f"{len(bad)} of {count} differ: {bad[:3]}"
    return True, f"{count} (array, row, kind) products agree to t^12"


def criterion_6():
    lines = []
    ok = True
    for q, n, r in ORACLE_CASES:
        for inv in (True, False):
            res = census(q, n, r, inv)
            pred = c_glr_coefficient(r, n, q) if inv else c_mr_coefficient(r, n, q)
            good = res.cyclic == res.total * pred
            ok &= good
            lines.append(f"({q},{n},{r},{'T' if inv else 'F'}) {res.cyclic}/{res.total}"
                         f"{'=' if good else '!='}{pred}")
    return ok, ", ".join(lines)


def criterion_7():
    bad = [r for r in range(1, 16) if weighted_partition_sum(r) != 1]
    return not bad, "sum is 1 for r=1..15" if not bad else f"fails at r={bad}"


def criterion_8():
    lines = []
    ok = True
    for q, n, r in [(2, 2, 1), (2, 3, 1), (3, 2, 1)]:
        res = conjugacy_census(q, n, r)
        ok &= res.orbit_count == res.pair_count
        lines.append(f"({q},{n},{r}) orbits {res.orbit_count} pairs {res.pair_count}")
    return ok, ", ".join(lines)


def criterion_9():
    lines = []
    ok = True
    for q, n, r in [(2, 3, 1), (3, 3, 1), (2, 4, 2), (3, 4, 2)]:
        fam = t_lambda_family(q, n, r)
        ok &= fam.all_noncyclic() and fam.intersections_within_bound()
        sizes = "/".join(str(res.members) for res in fam.per_lambda)
        within = all(res.within_size_bound() for res in fam.per_lambda)
        inter = max(fam.intersections.values(), default=0)
        lines.append(f"({q},{n},{r}) |T|={sizes} noncyclic={fam.all_noncyclic()} "
                     f"max|T&T'|={inter}<={fam.intersection_bound} "
                     f"size<=2q^(n2+r2-rn-3) {within} (reported only)")
    return ok, "; ".join(lines)


def criterion_10():
    wall = c_gl_series(20, 2).coefficient(12)
    gap = abs(wall - Fraction(31, 36))
    limit = gl_limit(1).evaluate(2)
    errors = [abs(c_glr_coefficient(1, n, 2) - limit) for n in range(10, 21)]
    decreasing = all(b < a for a, b in zip(errors, errors[1:]))
    ok = gap < Fraction(1, 100) and decreasing
    return ok, (f"|c_GL(12)-31/36| = {float(gap):.2e}; errors n=10..20 strictly decreasing: "
                f"{decreasing} ({float(errors[0]):.1e} -> {float(errors[-1]):.1e})")


def _ring_axioms(rng):
    def rand_series():
        return TruncSeries([Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(7)], 6)
    for _ in range(60):
        a, b, c = rand_series(), rand_series(), rand_series()
        if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c or a * b != b * a:
            return False
        if a.coefficient(0) and a * a.reciprocal() != TruncSeries.one(6):
            return False
    return True


def _symbolic_numeric(rng):
    q = QRationalFunction.q()
    pool = [QRationalFunction(1), q, 1 / (q - 1), q_power(-2), (q * q - q) / 2, 1 - q_power(-3)]
    for _ in range(40):
        a = TruncSeries(rng.choices(pool, k=4), 3, SYMBOLIC)
        b = TruncSeries(rng.choices(pool, k=4), 3, SYMBOLIC)
        for q0 in (2, 3, 5):
            if (a * b).at_q(q0) != a.at_q(q0) * b.at_q(q0) or (a + b).at_q(q0) != a.at_q(q0) + b.at_q(q0):
                return False
    for q0 in (2, 3, 5):
        if c_glr_series(2, 6).at_q(q0) != c_glr_series(2, 6, q0):
            return False
        if c_mr_series(1, 6).at_q(q0) != c_mr_series(1, 6, q0):
            return False
    return True


def _min_divides_char():
    for q, n, r in [(2, 3, 1), (3, 2, 1), (2, 4, 2)]:
        field = PrimeField(q)
        for X in stabiliser_matrices(q, n, r, False):
            A = MatrixGF(field, X)
            m, c = A.min_poly(), A.char_poly()
            if not m.divides(c) or (m.degree == n) != A.is_cyclic():
                return False
    return True


def _divisor_correspondence():
    field = PrimeField(2)
    checked = 0
    for flat in range(2 ** 9):
        bits = [(flat >> k) & 1 for k in range(9)]
        A = MatrixGF(field, [bits[0:3], bits[3:6], bits[6:9]])
        if not A.is_cyclic():
            continue
        m = A.min_poly()
        divisors = sum(alpha_brute(m, d) for d in range(m.degree + 1))
        if len(invariant_subspaces(A)) != divisors:
            return False, checked
        checked += 1
    return True, checked


def criterion_11():
    rng = random.Random(20240611)
    ring = _ring_axioms(rng)
    agree = _symbolic_numeric(rng)
    divides = _min_divides_char()
    chain, checked = _divisor_correspondence()
    ok = ring and agree and divides and chain
    return ok, (f"ring axioms {ring}, symbolic/numeric at q=2,3,5 {agree}, min|char {divides}, "
                f"invariant subspaces = divisors of m_A on {checked} cyclic 3x3 over F_2 {chain}")


CRITERIA = [
    (1, "golden GL limit rows", criterion_1, 10),
    (2, "golden M limit rows", criterion_2, 10),
    (3, "limits start 1 - q^-2", criterion_3, None),
    (4, "r = 0 degenerates to Wall series", criterion_4, None),
    (5, "closed form equals combinatorial form", criterion_5, 60),
    (6, "census equals series", criterion_6, 300),
    (7, "partition weights sum to 1", criterion_7, None),
    (8, "conjugacy orbits equal divisor pairs", criterion_8, 120),
    (9, "T_lambda noncyclic and intersections bounded", criterion_9, 300),
    (10, "Wall limit convergence at q=2", criterion_10, None),
    (11, "exact invariant suites", criterion_11, None),
]


def evaluate(number, title, check, limit):
    start = time.perf_counter()
    ok, detail = check()
    elapsed = time.perf_counter() - start
    timed_out = limit is not None and elapsed > limit
    verdict = "PASS" if ok and not timed_out else "FAIL"
    budget = f" (limit {limit}s)" if limit is not None else ""
    line = f"criterion {number:2d} {verdict}  {title} [{elapsed:.1f}s{budget}]: {detail}"
    return ok and not timed_out, line


@pytest.mark.parametrize("number,title,check,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, check, limit):
    ok, line = evaluate(number, title, check, limit)
    RESULTS.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    passed = 0
    for entry in CRITERIA:
        ok, line = evaluate(*entry)
        passed += ok
        print(line, flush=True)
    print(f"{passed}/{len(CRITERIA)} criteria pass")
    sys.exit(0 if passed == len(CRITERIA) else 1)
