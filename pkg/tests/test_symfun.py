from fractions import Fraction
from itertools import combinations, permutations, product

import pytest

from cobindex.symfun import (
    ChernPolynomial,
    MultiIndex,
    binomial,
    c_I,
    exterior_power_chern,
    multiplicative_sequence,
    newton_polynomial,
    partitions_of,
)

c1, c2, c3 = (ChernPolynomial.variable(i) for i in (1, 2, 3))


def _elementary(roots):
    out = [1]
    for k in range(1, len(roots) + 1):
        total = 0
        for S in combinations(roots, k):
            p = 1
            for x in S:
                p *= x
            total += p
        out.append(total)
    return out[1:]


def _monomial_symmetric(I, roots):
    """sigma_I by brute force: sum over distinct rearrangements of the exponent vector."""
    exps = list(I.parts) + [0] * (len(roots) - len(I.parts))
    total = 0
    for e in set(permutations(exps)):
        p = 1
        for x, k in zip(roots, e):
            p *= x ** k
        total += p
    return total


def test_partition_counts():
    assert [len(partitions_of(d)) for d in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_partition_order_and_keys():
    assert [I.key() for I in partitions_of(4)] == ["1+1+1+1", "1+1+2", "2+2", "1+3", "4"]
    assert MultiIndex.from_key("") == MultiIndex()
    assert MultiIndex.from_key("3+1").parts == (3, 1)
    assert MultiIndex.from_key("1+3") == MultiIndex((3, 1))


def test_c_I_small_cases():
    assert c_I(MultiIndex((1, 2))) == c1 * c2 - 3 * c3
    assert c_I(MultiIndex((1, 1))) == c2
    assert c_I(MultiIndex((2,))) == c1 ** 2 - 2 * c2
    assert newton_polynomial(3) == c1 ** 3 - 3 * c1 * c2 + 3 * c3


@pytest.mark.parametrize("d", range(1, 7))
def test_c_I_against_brute_force(d, rng):
    # evaluate at random integer roots in d variables, where c_I is sigma_I exactly
    for _ in range(3):
        roots = [rng.randint(-4, 4) for _ in range(d)]
        e = _elementary(roots)
        for I in partitions_of(d):
            assert c_I(I).evaluate(e, 1) == _monomial_symmetric(I, roots), (I, roots)


@pytest.mark.parametrize("k", range(1, 9))
def test_newton_identity(k):
    # p_k = sum_{i<k} (-1)^{i-1} c_i p_{k-i} + (-1)^{k-1} k c_k
    p = [None] + [newton_polynomial(j) for j in range(1, k + 1)]
    rhs = ChernPolynomial.variable(k) * ((-1) ** (k - 1) * k)
    for i in range(1, k):
        rhs = rhs + ChernPolynomial.variable(i) * p[k - i] * (-1) ** (i - 1)
    assert p[k] == rhs


def test_multiplicative_sequence_todd():
    from cobindex.chow import todd_series

    td = multiplicative_sequence(todd_series(4), 2)
    assert td == (c1 ** 2 + c2) / 12


def test_exterior_power_rank3():
    assert exterior_power_chern(3, 2, 3) == (2 * c1, c1 ** 2 + c2, c1 * c2 - c3)


@pytest.mark.parametrize("r,i", [(2, 1), (3, 2), (4, 2), (4, 3), (5, 2)])
def test_exterior_power_against_roots(r, i, rng):
    roots = [rng.randint(-3, 3) for _ in range(r)]
    wedge_roots = [sum(S) for S in combinations(roots, i)]
    expect = _elementary(wedge_roots)
    got = [p.evaluate(_elementary(roots), 1) for p in exterior_power_chern(r, i, len(wedge_roots))]
    assert got == expect


def test_generalized_binomial():
    assert binomial(5, 2) == 10
    assert binomial(-2, 3) == -4
    assert binomial(3, 5) == 0


def test_polynomial_repr_and_arithmetic():
    assert repr(c1 ** 2 - 2 * c2) == "c1^2 - 2*c2"
    assert (c1 / 3) * 3 == c1
    assert (c1 + c2 ** 2).component(4) == c2 ** 2
    assert not ((c1 / 2).is_integral())
