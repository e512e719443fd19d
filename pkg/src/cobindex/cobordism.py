"""Fundamental polynomials and the degree-d cobordism lattice.

Coordinates in both Q[b]_d and Q[c]_d follow the order of
:func:`~cobindex.symfun.partitions_of`, so the pairing between the c_I and
b^I bases is the plain dot product.
"""
from __future__ import annotations

import os
from math import lcm
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Mapping, Optional, Sequence

from .charclass import CharClassPoly, build_Sf, segre_substitute
from .chow import (
    Atom,
    InternalConsistencyError,
    Milnor,
    Proj,
    VarietyModel,
    atom_sort_key,
    build_variety,
    conner_floyd_class,
    spec_string,
    virtual_negative,
)
from .exactalg import (
    IntegerLattice,
    divisibility_factor,
    dual_lattice,
    hermite_normal_form,
    lattice_from_rational_rows,
    lattice_membership,
)
from .symfun import MultiIndex, partitions_of

DEFAULT_MAX_B = int(os.environ.get("COBINDEX_MAX_B", "6"))


class FundamentalVector:
    """Coefficients of ``b^I`` in a homogeneous element of Z[b] of degree d."""

    __slots__ = ("degree", "coords")

    def __init__(self, degree: int, coords: Mapping[MultiIndex, int] | None = None):
        self.degree = degree
        clean = {}
        for I, a in (coords or {}).items():
            if I.weight != degree:
                raise ValueError(f"index {I.key()!r} has weight {I.weight}, expected {degree}")
            if a:
                clean[I] = a
        self.coords: dict[MultiIndex, int] = clean

    @classmethod
    def from_vector(cls, d: int, vector: Sequence[int]) -> "FundamentalVector":
        return cls(d, dict(zip(partitions_of(d), vector)))

    def vector(self) -> list[int]:
        return [self.coords.get(I, 0) for I in partitions_of(self.degree)]

    def __mul__(self, other):
        if isinstance(other, int):
            return FundamentalVector(self.degree, {I: a * other for I, a in self.coords.items()})
        coords: dict[MultiIndex, int] = {}
        for I, a in self.coords.items():
            for J, b in other.coords.items():
                K = I + J
                coords[K] = coords.get(K, 0) + a * b
        return FundamentalVector(self.degree + other.degree, coords)

    __rmul__ = __mul__

    def __add__(self, other: "FundamentalVector"):
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        coords = dict(self.coords)
        for I, a in other.coords.items():
            coords[I] = coords.get(I, 0) + a
        return FundamentalVector(self.degree, coords)

    def __eq__(self, other):
        return isinstance(other, FundamentalVector) and (self.degree, self.coords) == (other.degree, other.coords)

    def __hash__(self):
        return hash((self.degree, frozenset(self.coords.items())))

    def __repr__(self):
        body = ", ".join(f"{I.key()!r}: {a}" for I, a in sorted(self.coords.items()))
        return f"FundamentalVector({self.degree}, {{{body}}})"

    def to_json(self) -> dict:
        return {"degree": self.degree, "coords": {I.key(): a for I, a in sorted(self.coords.items())}}

    @classmethod
    def from_json(cls, data: Mapping) -> "FundamentalVector":
        return cls(int(data["degree"]), {MultiIndex.from_key(k): int(v) for k, v in data["coords"].items()})


def fundamental_polynomial(X: VarietyModel) -> FundamentalVector:
    """``b(X) = sum_{|I| = dim X} deg(c_I(-T_X)) b^I``."""
    d = X.dimension
    neg = virtual_negative(X.tangent_total)
    coords = {}
    for I in partitions_of(d):
        value = X.degree(conner_floyd_class(I, neg))
        if value.denominator != 1:
            raise InternalConsistencyError(f"non-integral Chern number {value} on {X}")
        coords[I] = int(value)
    return FundamentalVector(d, coords)


@lru_cache(maxsize=None)
def atom_vector(atom: Atom) -> FundamentalVector:
    return fundamental_polynomial(build_variety([atom]))


def product_vector(atoms: Sequence[Atom]) -> FundamentalVector:
    """Fundamental vector of a product via multiplicativity."""
    out = FundamentalVector(0, {MultiIndex(): 1})
    for atom in atoms:
        out = out * atom_vector(atom)
    return out


def pairing(P: CharClassPoly, v: FundamentalVector) -> Fraction:
    if P.degree != v.degree:
        raise ValueError(f"cannot pair degree {P.degree} with degree {v.degree}")
    return sum((a * v.coords.get(I, 0) for I, a in P.coords.items()), Fraction(0))


# --------------------------------------------------------------------------
# generators


def generator_atoms(k: int) -> list[Atom]:
    """P^k and every H(m, n) with 2 <= m <= n and m + n - 1 = k."""
    if k < 1:
        return []
    atoms: list[Atom] = [Proj(k)]
    for m in range(2, (k + 1) // 2 + 1):
        n = k + 1 - m
        if m <= n:
            atoms.append(Milnor(m, n))
    return sorted(atoms, key=atom_sort_key)


def generator_products(d: int) -> Iterator[tuple[Atom, ...]]:
    """Every multiset of generator atoms of total dimension d (largest factors first)."""

    def rec(left: int, bound: int) -> Iterator[tuple[Atom, ...]]:
        if left == 0:
            yield ()
            return
        for k in range(min(left, bound), 0, -1):
            for idx, atom in enumerate(generator_atoms(k)):
                for rest in rec(left - k, k):
                    # keep atoms of equal dimension in a fixed order
                    if rest and rest[0].dim == k and generator_atoms(k).index(rest[0]) < idx:
                        continue
                    yield (atom,) + rest

    yield from rec(d, d)


@lru_cache(maxsize=None)
def lattice_L(d: int) -> IntegerLattice:
    """Span of the fundamental vectors of all d-dimensional generator products."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    rows = [product_vector(atoms).vector() for atoms in generator_products(d)]
    L = hermite_normal_form(rows, len(partitions_of(d)))
    if not L.is_full_rank:
        raise InternalConsistencyError(f"L_{d} has rank {L.rank} < {L.ambient_rank}")
    return L


@lru_cache(maxsize=None)
def lattice_I(d: int) -> IntegerLattice:
    """Dual of L_d: the integral characteristic classes of degree d."""
    return dual_lattice(lattice_L(d))


def exponent_vectors(d: int, B: int) -> Iterator[tuple[int, ...]]:
    return product(range(B + 1), repeat=d)


@lru_cache(maxsize=None)
def lattice_Iprime(d: int, B: int) -> IntegerLattice:
    """Span of S_f for ``f = prod tau_i^{m_i}`` with ``0 <= m_i <= B``."""
    if B < 0:
        raise ValueError("B must be nonnegative")
    n = len(partitions_of(d))
    rows = [build_Sf(m, d).vector() for m in exponent_vectors(d, B)]
    return lattice_from_rational_rows(rows, n)


@dataclass
class HattoriStongReport:
    degree: int
    holds: Optional[bool]
    B_stable: Optional[int]
    L: IntegerLattice
    I: IntegerLattice
    Iprime: IntegerLattice
    inclusion_checked: list[int] = field(default_factory=list)
    conclusive: bool = True

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "holds": self.holds,
            "conclusive": self.conclusive,
            "B_stable": self.B_stable,
            "partitions": [sorted(I.parts) for I in partitions_of(self.degree)],
            "L": self.L.to_json(),
            "I": self.I.to_json(),
            "Iprime": self.Iprime.to_json(),
        }


def hattori_stong_verify(d: int, max_B: Optional[int] = None) -> HattoriStongReport:
    """Compare the stabilized S_f lattice with the dual of L_d.

    B grows from 0 until one step adds nothing; I'(B) must sit inside I_d at
    every B.  Without stabilization below ``max_B`` the report is marked
    inconclusive.
    """
    if max_B is None:
        max_B = DEFAULT_MAX_B
    L = lattice_L(d)
    I = lattice_I(d)
    checked = []
    prev = lattice_Iprime(d, 0)
    if not prev.issubset(I):
        raise InternalConsistencyError(f"I'_{d}(B=0) is not contained in I_{d}")
    checked.append(0)
    for B in range(1, max_B + 1):
        cur = lattice_Iprime(d, B)
        if not cur.issubset(I):
            raise InternalConsistencyError(f"I'_{d}(B={B}) is not contained in I_{d}")
        checked.append(B)
        if cur == prev:
            return HattoriStongReport(d, cur == I, B - 1, L, I, cur, checked)
        prev = cur
    return HattoriStongReport(d, None, None, L, I, prev, checked, conclusive=False)


# --------------------------------------------------------------------------
# verdicts


@dataclass
class IntegralityVerdict:
    integral: bool
    degree: int
    witness: Optional[tuple[Atom, ...]] = None
    witness_value: Optional[Fraction] = None
    segre_dual: Optional[CharClassPoly] = None

    def to_json(self) -> dict:
        out = {"integral": self.integral, "degree": self.degree}
        if self.witness is not None:
            out["witness"] = spec_string(self.witness)
            out["witness_value"] = {"num": self.witness_value.numerator, "den": self.witness_value.denominator}
        return out


def check_integral_class(P: CharClassPoly) -> IntegralityVerdict:
    """Is ``deg P(T_X)`` an integer on every d-dimensional generator product?"""
    d = P.degree
    Q = segre_substitute(P)
    integral = lattice_membership(lattice_I(d), Q.vector()) is not None
    if integral:
        return IntegralityVerdict(True, d, segre_dual=Q)
    for atoms in generator_products(d):
        value = pairing(Q, product_vector(atoms))
        if value.denominator != 1:
            return IntegralityVerdict(False, d, atoms, value, Q)
    raise InternalConsistencyError("class is not in I_d but integral on every generator product")


def divisibility_bound(v: FundamentalVector) -> int:
    """Largest n such that v / n is still in L_d."""
    L = lattice_L(v.degree)
    if lattice_membership(L, v.vector()) is None:
        raise ValueError(f"{v} is not in L_{v.degree}")
    return divisibility_factor(L, v.vector())


def express_in_Sf(Q: CharClassPoly, B: int) -> Optional[dict[tuple[int, ...], int]]:
    """Integer combination of the S_f (0 <= m_i <= B) equal to Q, if one exists."""
    d = Q.degree
    if lattice_membership(lattice_Iprime(d, B), Q.vector()) is None:
        return None
    gens = [(build_Sf(m, d).vector(), {m: 1}) for m in exponent_vectors(d, B)]
    return _solve_integer_combination(gens, Q.vector(), len(partitions_of(d)))


def _solve_integer_combination(gens, target, n):
    # echelonize over Z, carrying each row's combination of generators along
    den = 1
    for vec, _ in gens:
        for a in vec:
            den = lcm(den, Fraction(a).denominator)
    for a in target:
        den = lcm(den, Fraction(a).denominator)
    rows = [([int(Fraction(a) * den) for a in vec], dict(c)) for vec, c in gens]
    t = [int(Fraction(a) * den) for a in target]

    def combine(r1, c1, k, r2, c2):
        return [a + k * b for a, b in zip(r1, r2)], {
            m: c1.get(m, 0) + k * c2.get(m, 0) for m in set(c1) | set(c2) if c1.get(m, 0) + k * c2.get(m, 0)
        }

    pivots = []
    top = 0
    for col in range(n):
        while True:
            live = [i for i in range(top, len(rows)) if rows[i][0][col]]
            if not live:
                break
            p = min(live, key=lambda i: abs(rows[i][0][col]))
            rows[top], rows[p] = rows[p], rows[top]
            pr, pc = rows[top]
            done = True
            for i in range(top + 1, len(rows)):
                r, c = rows[i]
                if r[col]:
                    rows[i] = combine(r, c, -(r[col] // pr[col]), pr, pc)
                    if rows[i][0][col]:
                        done = False
            if done:
                break
        if top < len(rows) and rows[top][0][col]:
            pivots.append((top, col))
            top += 1
    coeffs: dict = {}
    for row_idx, col in pivots:
        r, c = rows[row_idx]
        if t[col] % r[col]:
            return None
        k = t[col] // r[col]
        t = [a - k * b for a, b in zip(t, r)]
        for m, x in c.items():
            coeffs[m] = coeffs.get(m, 0) + k * x
    if any(t):
        return None
    return {m: x for m, x in coeffs.items() if x}
