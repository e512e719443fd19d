from fractions import Fraction

import pytest

from cobindex.charclass import (
    CatalogueError,
    CharClassPoly,
    build_Rf,
    build_Sf,
    build_Sf_sum,
    catalogue_class,
    l_polynomial,
    segre_polynomials,
    segre_substitute,
    signature_chern_polynomial,
    steenrod_indices,
)
from cobindex.symfun import ChernPolynomial, MultiIndex, partitions_of

c = {i: ChernPolynomial.variable(i) for i in range(1, 7)}
p = c  # l_polynomial keys index Pontryagin classes


def test_l_polynomials():
    assert l_polynomial(1) == p[1] / 3
    assert l_polynomial(2) == (7 * p[2] - p[1] ** 2) / 45


def test_signature_polynomials_exact():
    c1, c2, c3, c4 = c[1], c[2], c[3], c[4]
    assert signature_chern_polynomial(2) == c1 ** 2 / 3 - c2 * Fraction(2, 3)
    assert signature_chern_polynomial(4) == (14 * c4 - 14 * c1 * c3 + 3 * c2 ** 2 + 4 * c2 * c1 ** 2 - c1 ** 4) / 45


def test_segre_polynomials_invert_total_class():
    for d in range(1, 6):
        s = segre_polynomials(d)
        total_c = ChernPolynomial.one() + sum((c[i] for i in range(1, d + 1)), ChernPolynomial())
        total_s = ChernPolynomial.one() + sum(s, ChernPolynomial())
        assert (total_c * total_s).truncate(d) == ChernPolynomial.one()


@pytest.mark.parametrize("d", range(1, 6))
def test_segre_substitution_is_involution(d):
    for I in partitions_of(d):
        P = CharClassPoly.basis_element(I)
        assert segre_substitute(segre_substitute(P)) == P


def test_basis_change_round_trip():
    for d in range(1, 6):
        for I in partitions_of(d):
            P = CharClassPoly.basis_element(I) * Fraction(3, 7)
            assert CharClassPoly.from_chern_polynomial(P.to_chern_polynomial(), d) == P


def test_Rf_and_Sf_small_values():
    # m = 0 gives the Todd polynomial (c1^2 + c2)/12 written in the c_I basis
    R = build_Rf((0, 0), 2)
    assert {I.key(): v for I, v in R.coords.items()} == {"1+1": Fraction(1, 4), "2": Fraction(1, 12)}
    assert build_Rf((1,), 1).coords[MultiIndex((1,))] == Fraction(3, 2)
    assert build_Sf((1,), 1).coords[MultiIndex((1,))] == Fraction(-3, 2)
    assert build_Sf((0,), 1).coords[MultiIndex((1,))] == Fraction(-1, 2)


def test_Sf_sum_is_linear():
    a, b = build_Sf((1, 0), 2), build_Sf((0, 2), 2)
    assert build_Sf_sum([(2, (1, 0)), (-1, (0, 2))], 2) == a * 2 - b


def test_exponent_length_checked():
    with pytest.raises(ValueError):
        build_Sf((1, 0, 0), 2)


def test_catalogue_members():
    assert catalogue_class("half_euler", d=3) == CharClassPoly.from_chern_polynomial(c[3], 3) / 2
    assert catalogue_class("half_c1_power", d=1) == CharClassPoly.from_chern_polynomial(c[1], 1) / 2
    assert catalogue_class("signature", d=2).degree == 2
    assert steenrod_indices(2, 4) == [MultiIndex((1, 1, 1, 1)), MultiIndex((3, 1))]
    P = catalogue_class("steenrod", q=3, I=MultiIndex((2,)))
    assert P.to_chern_polynomial() == -c[1] ** 2 / 3 + c[2] * Fraction(2, 3)


@pytest.mark.parametrize(
    "kw",
    [
        {"name": "half_euler", "d": 2},
        {"name": "signature", "d": 3},
        {"name": "steenrod", "q": 4, "I": MultiIndex((3,))},
        {"name": "steenrod", "q": 2, "I": MultiIndex((2,))},
        {"name": "newton_over_q", "q": 2, "d": 4},
        {"name": "nonsense", "d": 2},
    ],
)
def test_catalogue_preconditions(kw):
    with pytest.raises(CatalogueError):
        catalogue_class(**kw)


def test_json_round_trip():
    P = catalogue_class("signature", d=4)
    assert CharClassPoly.from_json(P.to_json()) == P
    assert all(v["den"] > 0 for v in P.to_json()["coords"].values())
