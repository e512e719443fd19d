from fractions import Fraction
from math import comb, factorial

import pytest

from cobindex.chow import (
    InternalConsistencyError,
    Milnor,
    Proj,
    SpecSyntaxError,
    build_variety,
    chern_character,
    parse_variety,
    spec_string,
    todd_denominator_bound,
    virtual_negative,
)
from cobindex.cobordism import generator_atoms


def test_parse_and_print():
    assert parse_variety("P2xH2,3xP1") == [Proj(2), Milnor(2, 3), Proj(1)]
    assert parse_variety(" P 2 x H 2 , 3 ") == [Proj(2), Milnor(2, 3)]
    assert parse_variety("pt") == []
    assert spec_string([Proj(2), Milnor(2, 3)]) == "P2xH2,3"


@pytest.mark.parametrize("text,pos", [("P2xQ", 3), ("P", 1), ("H2", 2), ("P2x", 3), ("", 0)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(SpecSyntaxError) as exc:
        parse_variety(text)
    assert exc.value.position == pos


def test_invalid_atoms():
    with pytest.raises(ValueError):
        Proj(0)
    with pytest.raises(ValueError):
        Milnor(3, 2)


def test_projective_plane_classes():
    X = build_variety("P2")
    h = X.hyperplane(0)
    assert X.tangent_total == 1 + 3 * h + 3 * h ** 2
    assert virtual_negative(X.tangent_total) == 1 - 3 * h + 6 * h ** 2
    assert X.degree(h ** 2) == 1


def test_milnor_degree():
    X = build_variety("H2,2")
    c1 = X.tangent_total.component(1)
    assert X.degree(c1 ** 3) == 48
    assert X.dimension == 3


@pytest.mark.parametrize("spec", ["P1", "P2", "P3", "P5", "P8", "H2,2", "H2,3", "P1xH2,2", "P2xP3"])
def test_todd_genus_is_one(spec):
    X = build_variety(spec)
    assert X.degree(X.todd_tangent) == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_euler_number_of_projective_space(n):
    X = build_variety(f"P{n}")
    assert X.degree(X.tangent_total.component(n)) == n + 1


def test_chern_character_of_line():
    X = build_variety("P3")
    h = X.hyperplane(0)
    ch = chern_character(1 + h, 1, 3)
    assert ch == 1 + h + h ** 2 / 2 + h ** 3 / 6


def test_denominator_bound_values():
    assert [todd_denominator_bound(d) for d in range(1, 5)] == [2, 12, 24, 720]


@pytest.mark.parametrize("d", range(1, 9))
def test_rr_denominators_on_atoms(d):
    for a in generator_atoms(d):
        X = build_variety([a])
        assert X.is_integral_class(chern_character(X.tangent_total, d, d) * factorial(d))
        assert X.is_integral_class(X.todd_tangent * factorial(d + 1))


def test_intrinsic_integrality_rejects_halves():
    X = build_variety("H2,2")
    assert not X.is_integral_class(X.hyperplane(0) / 2)
    assert X.is_integral_class(X.hyperplane(0) ** 2)
