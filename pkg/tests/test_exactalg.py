from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cobindex.exactalg import (
    IntegerLattice,
    LatticeError,
    divisibility_factor,
    dual_lattice,
    hermite_normal_form,
    lattice_from_rational_rows,
    lattice_membership,
)


def _det(M):
    M = [[Fraction(x) for x in row] for row in M]
    n, det = len(M), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def _is_hnf(L):
    piv = L.pivots()
    if piv != sorted(set(piv)):
        return False
    for i, (row, p) in enumerate(zip(L.basis, piv)):
        if row[p] <= 0 or any(row[:p]):
            return False
        for above in L.basis[:i]:
            if not 0 <= above[p] < row[p]:
                return False
    return True


small = st.integers(-9, 9)


@st.composite
def full_rank_rows(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    rows = draw(st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n + 2))
    if _det(rows[:n]) == 0 and all(_det(rows[i:i + n]) == 0 for i in range(len(rows) - n + 1)):
        rows = rows + [[int(i == j) * 7 for j in range(n)] for i in range(n)]
    return n, rows


def test_hnf_small_example():
    L = hermite_normal_form([[2, 4], [1, 3]])
    assert L.basis == ((1, 1), (0, 2))
    assert L.index() == 2


def test_hnf_drops_dependent_rows():
    L = hermite_normal_form([[1, 2, 3], [2, 4, 6], [0, 0, 0]])
    assert L.rank == 1 and L.basis == ((1, 2, 3),)


def test_rational_rows_normalized():
    L = lattice_from_rational_rows([[Fraction(1, 2), 0], [0, Fraction(1, 3)]])
    assert L.denominator == 6 and L.basis == ((3, 0), (0, 2))
    assert L.index() == Fraction(1, 6)


def test_membership_coordinates():
    L = hermite_normal_form([[2, 0], [0, 3]])
    assert lattice_membership(L, [4, 9]) == (2, 3)
    assert lattice_membership(L, [1, 0]) is None
    assert lattice_membership(L, [Fraction(1, 2), 0]) is None


def test_dual_of_rank_deficient_rejected():
    with pytest.raises(LatticeError):
        dual_lattice(hermite_normal_form([[1, 0]], 2))


def test_divisibility_factor():
    L = hermite_normal_form([[1, 0], [0, 1]])
    assert divisibility_factor(L, [6, 4]) == 2


def test_json_round_trip():
    L = lattice_from_rational_rows([[Fraction(1, 4), 1], [0, Fraction(3, 2)]])
    assert IntegerLattice.from_json(L.to_json()) == L


@settings(max_examples=1000)
@given(full_rank_rows())
def test_hnf_canonical_and_dual_involution(data):
    n, rows = data
    L = hermite_normal_form(rows, n)
    assert _is_hnf(L)
    # canonical: unimodular mixing of the generators gives the same stored form
    mixed = [list(r) for r in rows]
    if len(mixed) > 1:
        mixed[0] = [a + 3 * b for a, b in zip(mixed[0], mixed[1])]
        mixed[1] = [-b for b in mixed[1]]
    mixed.reverse()
    assert hermite_normal_form(mixed, n) == L
    if L.is_full_rank:
        D = dual_lattice(L)
        assert dual_lattice(D) == L
        assert D.index() * L.index() == 1
        for u in L.rational_basis():
            for v in D.rational_basis():
                assert sum(a * b for a, b in zip(u, v)).denominator == 1


@settings(max_examples=200)
@given(st.integers(1, 3).flatmap(lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_index_matches_exhaustive_count(rows):
    # brute force: count lattice points in the box [0, D)^n, D = |det|
    n = len(rows)
    det = abs(_det(rows))
    if det == 0 or det > 40:
        return
    L = hermite_normal_form(rows, n)
    assert L.index() == det
    D = int(det)
    inside = sum(1 for v in product(range(D), repeat=n) if lattice_membership(L, v) is not None)
    assert inside == D ** n // D


def test_documented_examples():
    L = hermite_normal_form([[2, 0], [0, 4]])
    assert lattice_membership(L, [2, 4]) == (1, 1)
    assert lattice_membership(L, [1, 0]) is None
    D = dual_lattice(L)
    assert D.denominator == 4 and D.rational_basis() == [[Fraction(1, 2), 0], [0, Fraction(1, 4)]]
    assert dual_lattice(hermite_normal_form([[1, 0], [0, 1]])) == hermite_normal_form([[1, 0], [0, 1]])
    assert divisibility_factor(L, [4, 8]) == 2
    assert hermite_normal_form(L.basis) == L


def test_precondition_errors():
    L = hermite_normal_form([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        lattice_membership(L, [1, 2, 3])
    with pytest.raises(ValueError):
        divisibility_factor(L, [0, 0])
    with pytest.raises(ValueError):
        divisibility_factor(L, [Fraction(1, 2), 0])


@settings(max_examples=200)
@given(full_rank_rows(4), st.lists(small, min_size=6, max_size=6), st.integers(1, 6))
def test_membership_round_trip_and_divisibility_scaling(data, coeffs, n):
    dim, rows = data
    L = hermite_normal_form(rows, dim)
    v = [sum(c * r[j] for c, r in zip(coeffs, L.basis)) for j in range(dim)]
    x = lattice_membership(L, v)
    assert x is not None
    assert [sum(a * r[j] for a, r in zip(x, L.basis)) for j in range(dim)] == v
    if any(v):
        assert divisibility_factor(L, [n * a for a in v]) == n * divisibility_factor(L, v)
