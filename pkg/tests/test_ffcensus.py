from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cyclicprop import ffcensus
from cyclicprop.ffcensus import (
    MatrixGF,
    PolyGF,
    PrimeField,
    SizeGuardError,
    alpha_brute,
    census,
    char_poly,
    conjugacy_census,
    count_irreducibles,
    general_linear,
    has_cyclic_vector,
    invariant_subspaces,
    is_cyclic,
    is_irreducible,
    min_poly,
    monic_polys,
    stabiliser_matrices,
    stabiliser_size,
    t_lambda_enumerate,
    t_lambda_family,
)
from cyclicprop.genfun import c_glr_coefficient, num_irreducibles

F2, F3 = PrimeField(2), PrimeField(3)


def P(field, *coeffs):
    return PolyGF(field, coeffs)


def M(field, *rows):
    return MatrixGF(field, rows)


def all_matrices(field, n):
    for flat in itertools.product(range(field.p), repeat=n * n):
        yield MatrixGF(field, [flat[i * n:(i + 1) * n] for i in range(n)])


def monic_divisor_count(f: PolyGF) -> int:
    return sum(alpha_brute(f, d) for d in range(f.degree + 1))


# polynomials and fields ------------------------------------------------------

def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        PrimeField(4)


def test_poly_gcd_and_lcm():
    a = P(F2, 0, 1, 1)  # t + t^2
    b = P(F2, 1, 0, 1)  # 1 + t^2 = (t+1)^2
    assert a.gcd(b) == P(F2, 1, 1)
    assert a.lcm(b) == P(F2, 0, 1, 1) * P(F2, 1, 1)


@pytest.mark.parametrize("q", [2, 3, 5])
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_irreducible_counts_match_necklace_formula(q, d):
    if q ** d > 700:
        pytest.skip("too many polynomials")
    assert count_irreducibles(q, d) == num_irreducibles(d)(q)


def test_quartic_irreducibles_over_f2():
    assert count_irreducibles(2, 4) == 3


def test_alpha_examples():
    h = P(F2, 0, 0, 1) * P(F2, 1, 1)
    assert alpha_brute(h, 1) == 2
    assert alpha_brute(h, 4) == 0
    assert alpha_brute(h, 0) == 1


# characteristic and minimal polynomials ---------------------------------------

def test_char_poly_examples():
    assert char_poly(MatrixGF.identity(F2, 2)) == P(F2, 1, 0, 1)
    assert char_poly(MatrixGF(F3, [[0] * 3] * 3)) == P(F3, 0, 0, 0, 1)
    f = P(F3, 2, 0, 1, 1)
    assert char_poly(MatrixGF.companion(f)) == f


def test_min_poly_examples():
    assert min_poly(MatrixGF.identity(F2, 2)) == P(F2, 1, 1)
    assert min_poly(M(F2, [1, 0], [1, 1])) == P(F2, 1, 1) ** 2
    f = P(F3, 1, 2, 0, 1)
    assert min_poly(MatrixGF.companion(f)) == f


def test_is_cyclic_examples():
    assert is_cyclic(M(F3, [2]))
    assert not is_cyclic(MatrixGF.identity(F2, 3))
    assert is_cyclic(M(F2, [1, 0], [1, 1]))


def test_row_action_convention():
    A = M(F3, [1, 2], [0, 1])
    assert A.act([1, 0]) == (1, 2)
    assert A.act([0, 1]) == (0, 1)


def test_char_poly_matches_cofactor_determinant():
    # det(tI - A) evaluated at every field element
    for A in itertools.islice(all_matrices(F3, 2), 0, None, 7):
        c = char_poly(A)
        for x in range(3):
            shifted = MatrixGF.scalar(F3, 2, x) - A
            assert c(x) == shifted.det()


@pytest.mark.parametrize("field,n", [(F2, 2), (F2, 3), (F3, 2)])
def test_min_poly_divides_char_poly(field, n):
    for A in all_matrices(field, n):
        m, c = min_poly(A), char_poly(A)
        assert m.is_monic() and c.is_monic() and c.degree == n
        assert m.divides(c)
        assert (m.degree == n) == is_cyclic(A)


@pytest.mark.parametrize("field,n", [(F2, 2), (F2, 3), (F3, 2)])
def test_cyclic_iff_cyclic_vector(field, n):
    for A in all_matrices(field, n):
        assert is_cyclic(A) == has_cyclic_vector(A)


def test_invariant_subspaces_match_divisors_of_min_poly():
    # for cyclic A the invariant subspaces correspond to monic divisors of m_A
    seen = 0
    for A in all_matrices(F2, 3):
        if not is_cyclic(A):
            continue
        seen += 1
        assert len(invariant_subspaces(A)) == monic_divisor_count(min_poly(A))
    assert seen > 0


def test_invariant_subspace_count_of_identity():
    # every subspace of F_2^2 is invariant: 0, three lines, the plane
    assert len(invariant_subspaces(MatrixGF.identity(F2, 2))) == 5


def _block_cases():
    fields = [F2, F3]
    for field in fields:
        polys = [f for d in (1, 2) for f in monic_polys(field, d)]
        for f, g in itertools.product(polys, repeat=2):
            yield field, f, g


@pytest.mark.parametrize("field,f,g", list(_block_cases()))
def test_direct_sum_cyclic_iff_coprime(field, f, g):
    A = MatrixGF.block_diag(MatrixGF.companion(f), MatrixGF.companion(g))
    assert is_cyclic(A) == (f.gcd(g).degree == 0)


def test_three_blocks_need_pairwise_coprime():
    a, b = P(F3, 1, 1), P(F3, 2, 1)
    c = P(F3, 1, 0, 1)  # t^2 + 1 irreducible over F_3
    assert is_irreducible(c)
    assert is_cyclic(MatrixGF.block_diag(*(MatrixGF.companion(x) for x in (a, b, c))))
    assert not is_cyclic(MatrixGF.block_diag(*(MatrixGF.companion(x) for x in (a, b, a))))


matrices_f3 = st.lists(st.integers(0, 2), min_size=9, max_size=9).map(
    lambda xs: MatrixGF(F3, [xs[0:3], xs[3:6], xs[6:9]]))
GL3_F2 = general_linear(F2, 3)
GL2_F3 = general_linear(F3, 2)


@given(matrices_f3, st.integers(0, 10 ** 6))
@settings(max_examples=80, deadline=None)
def test_cyclicity_is_conjugation_and_transpose_invariant(A, seed):
    rng = random.Random(seed)
    B = MatrixGF(F3, [rng.choices(range(3), k=3) for _ in range(3)])
    while not B.is_invertible():
        B = MatrixGF(F3, [rng.choices(range(3), k=3) for _ in range(3)])
    assert is_cyclic(A) == is_cyclic(A.transpose()) == is_cyclic(B.inverse() * A * B)
    assert char_poly(B.inverse() * A * B) == char_poly(A)


@given(st.sampled_from(GL3_F2), st.sampled_from(GL3_F2))
@settings(max_examples=60, deadline=None)
def test_conjugates_in_gl3_f2_share_min_poly(A, B):
    C = B.inverse() * A * B
    assert min_poly(C) == min_poly(A)
    assert is_cyclic(C) == is_cyclic(A)


def test_group_orders():
    assert len(GL3_F2) == 168
    assert len(GL2_F3) == 48


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3)])
def test_centralizer_of_irreducible_companion(q, n):
    field = PrimeField(q)
    f = next(g for g in monic_polys(field, n) if is_irreducible(g))
    assert ffcensus.centralizer_order(MatrixGF.companion(f)) == q ** n - 1


# censuses -------------------------------------------------------------------

def test_census_examples():
    r = census(2, 2, 1, True)
    assert (r.total, r.cyclic) == (2, 1)
    r = census(2, 2, 1, False)
    assert (r.total, r.cyclic) == (8, 6)
    r = census(3, 2, 1, True)
    assert r.total == 12
    assert r.cyclic == r.total * c_glr_coefficient(1, 2, 3)


def test_stabiliser_of_f2_plane():
    mats = sorted(stabiliser_matrices(2, 2, 1, True))
    assert mats == [((1, 0), (0, 1)), ((1, 0), (1, 1))]


@pytest.mark.parametrize("q,n,r", [(2, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 1), (3, 3, 1), (2, 4, 2)])
@pytest.mark.parametrize("inv", [True, False])
def test_census_totals_match_group_orders(q, n, r, inv):
    res = census(q, n, r, inv)
    assert res.total == stabiliser_size(q, n, r, inv)
    if inv:
        def gl(k):
            out = 1
            for i in range(k):
                out *= q ** k - q ** i
            return out
        assert res.total == q ** (r * (n - r)) * gl(r) * gl(n - r)
    else:
        assert res.total == q ** (n * n - r * (n - r))
    assert 0 <= res.cyclic <= res.total


def test_stabiliser_members_fix_subspace():
    p, n, r = 3, 3, 1
    for X in stabiliser_matrices(p, n, r, False):
        assert all(x == 0 for x in X[0][r:])


@pytest.mark.parametrize("shards", [1, 2, 3, 5])
def test_census_independent_of_sharding(shards):
    base = census(2, 3, 1, False)
    assert census(2, 3, 1, False, shards=shards) == base


def test_census_with_worker_processes():
    assert census(2, 3, 2, True, shards=3, workers=2) == census(2, 3, 2, True)


def test_shards_partition_the_stabiliser():
    whole = sorted(stabiliser_matrices(3, 2, 1, True))
    parts = [m for k in range(4) for m in stabiliser_matrices(3, 2, 1, True, k, 4)]
    assert sorted(parts) == whole and len(parts) == len(set(parts))


def test_size_guard_flag():
    with pytest.raises(SizeGuardError):
        census(2, 3, 1, False, max_enum=10)
    assert census(2, 2, 1, False, max_enum=8).total == 8


def test_size_guard_environment(monkeypatch):
    monkeypatch.setenv("CYCPROP_MAX_ENUM", "5")
    with pytest.raises(SizeGuardError):
        census(2, 2, 1, False)
    monkeypatch.setenv("CYCPROP_MAX_ENUM", "100")
    assert census(2, 2, 1, False).cyclic == 6


def test_default_guard_refuses_huge_enumeration():
    with pytest.raises(SizeGuardError):
        census(7, 5, 2, False)


@pytest.mark.parametrize("n,r", [(1, 1), (3, 0), (3, 3)])
def test_census_rejects_bad_r(n, r):
    with pytest.raises(ValueError):
        census(2, n, r, True)


def test_census_json():
    assert census(2, 2, 1, False).to_json() == {
        "q": 2, "n": 2, "r": 1, "invertible_only": False, "total": 8, "cyclic": 6}
    assert census(2, 2, 1, False).proportion == Fraction(3, 4)


# conjugacy classes -----------------------------------------------------------

@pytest.mark.parametrize("q,n,r,expected", [(2, 2, 1, 4), (2, 3, 1, 8), (3, 2, 1, 9)])
def test_orbits_match_divisor_pairs(q, n, r, expected):
    res = conjugacy_census(q, n, r)
    assert res.orbit_count == res.pair_count == expected


def test_pair_count_for_f2_quadratics():
    # t^2: 1, t^2+1: 1, t^2+t: 2, t^2+t+1: 0
    per = [alpha_brute(h, 1) for h in monic_polys(F2, 2)]
    assert sorted(per) == [0, 1, 1, 2]


def test_conjugacy_guard():
    with pytest.raises(SizeGuardError):
        conjugacy_census(2, 3, 1, max_group=10)


# the T_lambda family -----------------------------------------------------------

def _literal_member(X, lam, p, n, r):
    """Direct test of the three membership conditions by searching cosets."""
    def kills(w):
        return all((sum(w[k] * X[k][j] for k in range(n)) - lam * w[j]) % p == 0 for j in range(n))

    first = any(kills((1,) + tail + (0,) * (n - r))
                for tail in itertools.product(range(p), repeat=r - 1))
    second = any(kills(head + (1,)) for head in itertools.product(range(p), repeat=n - 1))
    field = PrimeField(p)
    c = char_poly(MatrixGF(field, X))
    cube = (PolyGF.linear(field, lam) ** 3).divides(c)
    return first and second and not cube


@pytest.mark.parametrize("q,n,r", [(2, 3, 1), (3, 3, 1), (2, 3, 2), (3, 3, 2)])
def test_t_lambda_matches_literal_conditions(q, n, r):
    fam = t_lambda_family(q, n, r)
    for res in fam.per_lambda:
        expected = sum(_literal_member(X, res.lam, q, n, r)
                       for X in stabiliser_matrices(q, n, r, True))
        assert res.members == expected


@pytest.mark.parametrize("q,n,r", [(2, 3, 1), (3, 3, 1), (2, 4, 2), (3, 3, 2)])
def test_t_lambda_members_are_noncyclic(q, n, r):
    fam = t_lambda_family(q, n, r)
    assert fam.all_noncyclic()
    assert fam.intersections_within_bound()
    assert all(res.large_eigenspace == 0 for res in fam.per_lambda)


def test_t_lambda_empty_over_f2():
    # over F_2 the only eigenvalue is 1 and an invertible member would
    # need two independent eigenvectors for it, forcing (t-1)^3 | c_T
    assert all(res.members == 0 for res in t_lambda_family(2, 4, 2).per_lambda)


def test_t_lambda_counts_over_f3():
    fam = t_lambda_family(3, 3, 1)
    assert [res.members for res in fam.per_lambda] == [27, 27]
    assert fam.intersections == {(1, 2): 0}


def test_t_lambda_single_value():
    res = t_lambda_enumerate(3, 3, 1, 2)
    assert res.lam == 2 and res.members == 27 and res.all_noncyclic
    with pytest.raises(ValueError):
        t_lambda_enumerate(3, 3, 1, 0)
