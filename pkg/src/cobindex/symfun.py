"""Partitions, Chern polynomials and the c_I basis.

A :class:`MultiIndex` ``I = (alpha_j)`` is stored as the partition with
``alpha_j`` parts equal to ``j``.  The same object indexes three things:
the basis polynomial ``c_I``, the monomial ``b^I`` and, when used as a
monomial key of a :class:`ChernPolynomial`, the product ``prod c_j``
over its parts (so ``(2, 1, 1)`` is ``c_1^2 c_2``).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence, Union

Number = Union[int, Fraction]


class MultiIndex:
    """Finitely supported ``j -> alpha_j``; canonical form is the sorted part list.

    Ordering is by weight, then lexicographic on the descending part tuple,
    which puts ``(1, ..., 1)`` first and ``(d,)`` last among partitions of d.
    """

    __slots__ = ("parts", "_hash")

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(sorted(parts, reverse=True))
        if parts and parts[-1] <= 0:
            raise ValueError(f"parts must be positive, got {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "_hash", hash(parts))

    def __setattr__(self, name, value):
        raise AttributeError("MultiIndex is immutable")

    @classmethod
    def from_alpha(cls, alpha: Mapping[int, int]) -> "MultiIndex":
        parts = []
        for j, a in alpha.items():
            if j <= 0 or a < 0:
                raise ValueError(f"invalid entry alpha_{j} = {a}")
            parts.extend([j] * a)
        return cls(parts)

    @classmethod
    def from_key(cls, key: str) -> "MultiIndex":
        key = key.strip()
        if not key:
            return cls()
        return cls(int(p) for p in key.split("+"))

    @property
    def alpha(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def key(self) -> str:
        """Ascending parts joined by ``+``; the empty index is ``""``."""
        return "+".join(str(p) for p in reversed(self.parts))

    def conjugate(self) -> "MultiIndex":
        if not self.parts:
            return self
        return MultiIndex(sum(1 for p in self.parts if p > i) for i in range(self.parts[0]))

    def __add__(self, other: "MultiIndex") -> "MultiIndex":
        return MultiIndex(self.parts + other.parts)

    def _order(self):
        return (self.weight, self.parts)

    def __eq__(self, other):
        return isinstance(other, MultiIndex) and self.parts == other.parts

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "MultiIndex"):
        return self._order() < other._order()

    def __le__(self, other):
        return self._order() <= other._order()

    def __gt__(self, other):
        return self._order() > other._order()

    def __ge__(self, other):
        return self._order() >= other._order()

    def __repr__(self):
        return f"MultiIndex({self.key()!r})"


@lru_cache(maxsize=None)
def _partitions(d: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(d: int) -> list[MultiIndex]:
    """All ``I`` with ``|I| = d``, ascending in :class:`MultiIndex` order."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    return sorted(MultiIndex(p) for p in _partitions(d, d))


class ChernPolynomial:
    """Polynomial in c_1, c_2, ... with exact rational coefficients, deg(c_i) = i."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Mapping[MultiIndex, Number] | None = None):
        terms = {}
        for mono, c in (coefficients or {}).items():
            if c:
                terms[mono] = Fraction(c)
        self.coefficients: dict[MultiIndex, Fraction] = terms

    @classmethod
    def one(cls) -> "ChernPolynomial":
        return cls({MultiIndex(): 1})

    @classmethod
    def variable(cls, i: int) -> "ChernPolynomial":
        return cls({MultiIndex((i,)): 1}) if i > 0 else cls.one()

    @classmethod
    def monomial(cls, parts: Iterable[int], coef: Number = 1) -> "ChernPolynomial":
        return cls({MultiIndex(parts): coef})

    def __bool__(self):
        return bool(self.coefficients)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ChernPolynomial({MultiIndex(): other})
        return isinstance(other, ChernPolynomial) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ChernPolynomial({MultiIndex(): other})
        terms = dict(self.coefficients)
        for m, c in other.coefficients.items():
            terms[m] = terms.get(m, 0) + c
        return ChernPolynomial(terms)

    __radd__ = __add__

    def __neg__(self):
        return ChernPolynomial({m: -c for m, c in self.coefficients.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ChernPolynomial({m: c * other for m, c in self.coefficients.items()})
        terms: dict[MultiIndex, Fraction] = {}
        for m1, c1 in self.coefficients.items():
            for m2, c2 in other.coefficients.items():
                m = m1 + m2
                terms[m] = terms.get(m, 0) + c1 * c2
        return ChernPolynomial(terms)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (1 / Fraction(k))

    def __pow__(self, k: int):
        out = ChernPolynomial.one()
        for _ in range(k):
            out = out * self
        return out

    def component(self, k: int) -> "ChernPolynomial":
        return ChernPolynomial({m: c for m, c in self.coefficients.items() if m.weight == k})

    def truncate(self, k: int) -> "ChernPolynomial":
        return ChernPolynomial({m: c for m, c in self.coefficients.items() if m.weight <= k})

    @property
    def max_degree(self) -> int:
        return max((m.weight for m in self.coefficients), default=0)

    def is_homogeneous(self, k: int) -> bool:
        return all(m.weight == k for m in self.coefficients)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients.values())

    def drop_above(self, r: int) -> "ChernPolynomial":
        """Set ``c_j = 0`` for ``j > r``."""
        return ChernPolynomial({m: c for m, c in self.coefficients.items() if not m.parts or m.parts[0] <= r})

    def evaluate(self, values: Sequence, one):
        """Image under the ring map ``c_i -> values[i-1]``; ``one`` is the unit of the target."""
        cache: dict[tuple[int, int], object] = {}

        def power(i, e):
            if (i, e) not in cache:
                cache[(i, e)] = one if e == 0 else power(i, e - 1) * values[i - 1]
            return cache[(i, e)]

        acc = one * 0
        for mono, c in self.coefficients.items():
            term = one
            for i, e in mono.alpha.items():
                if i > len(values):
                    term = None
                    break
                term = term * power(i, e)
            if term is not None:
                acc = acc + term * c
        return acc

    def _sort_key(self, mono: MultiIndex):
        top = mono.parts[0] if mono.parts else 0
        alpha = mono.alpha
        return (mono.weight, tuple(-alpha.get(j, 0) for j in range(1, top + 1)))

    def sorted_terms(self) -> list[tuple[MultiIndex, Fraction]]:
        """Graded lexicographic order on the exponents of (c_1, c_2, ...)."""
        return sorted(self.coefficients.items(), key=lambda mc: self._sort_key(mc[0]))

    def __repr__(self):
        if not self.coefficients:
            return "0"
        pieces = []
        for mono, c in self.sorted_terms():
            name = "*".join(
                f"c{j}" if a == 1 else f"c{j}^{a}" for j, a in sorted(mono.alpha.items())
            )
            if not name:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(name)
            elif c == -1:
                pieces.append("-" + name)
            else:
                pieces.append(f"{c}*{name}")
        return " + ".join(pieces).replace("+ -", "- ")


@lru_cache(maxsize=None)
def _zero_one_count(rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
    """Number of 0-1 matrices with the given row and column sums."""
    if not cols:
        return int(not any(rows))
    c, rest = cols[0], cols[1:]
    live = [i for i, r in enumerate(rows) if r > 0]
    total = 0
    for chosen in combinations(live, c):
        new = list(rows)
        for i in chosen:
            new[i] -= 1
        total += _zero_one_count(tuple(sorted(new, reverse=True)), rest)
    return total


@lru_cache(maxsize=None)
def _c_I_terms(parts: tuple[int, ...], n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    d = sum(parts)
    shapes = [lam for lam in _partitions(d, d) if len(lam) <= n]
    target: dict[tuple[int, ...], int] = {parts: 1}
    result: dict[tuple[int, ...], int] = {}
    while target:
        lam = max(target)
        a = target[lam]
        mu = MultiIndex(lam).conjugate().parts
        result[mu] = result.get(mu, 0) + a
        # e_mu = m_lam + (dominance-lower terms)
        for nu in shapes:
            k = _zero_one_count(mu, nu)
            if k:
                target[nu] = target.get(nu, 0) - a * k
        target = {k: v for k, v in target.items() if v}
    return tuple(sorted(result.items()))


def c_I(I: MultiIndex, n: int | None = None) -> ChernPolynomial:
    """The polynomial ``c_I`` with ``sigma_I = c_I(sigma_1, ..., sigma_n)``.

    ``n`` is the number of indeterminates used internally (default ``|I|``);
    the answer does not depend on it as long as ``n >= |I|``.
    """
    if n is None:
        n = I.weight
    if n < I.weight:
        raise ValueError(f"need at least |I| = {I.weight} indeterminates, got {n}")
    return ChernPolynomial({MultiIndex(mu): c for mu, c in _c_I_terms(I.parts, n)})


def newton_polynomial(d: int) -> ChernPolynomial:
    """Q_d: the power sum of degree d written in elementary symmetric functions."""
    if d < 1:
        raise ValueError("d must be positive")
    return c_I(MultiIndex((d,)))


def multiplicative_sequence(coeffs: Sequence[Number], k: int) -> ChernPolynomial:
    """Degree-k part of ``prod_j Q(xi_j)`` in elementary symmetric variables.

    ``coeffs[i]`` is the coefficient of ``x^i`` in Q, with ``coeffs[0] == 1``.
    """
    if Fraction(coeffs[0]) != 1:
        raise ValueError("characteristic series must have constant term 1")
    out = ChernPolynomial()
    for I in partitions_of(k):
        w = Fraction(1)
        for p in I.parts:
            w *= coeffs[p]
        if w:
            out = out + c_I(I) * w
    return out


def dual_chern(total: ChernPolynomial) -> ChernPolynomial:
    """Total Chern class of the dual bundle: ``c_i -> (-1)^i c_i``."""
    return ChernPolynomial({m: (-c if m.weight % 2 else c) for m, c in total.coefficients.items()})


def _sparse_mul_linear(poly: dict, support: Sequence[int], top: int) -> dict:
    out = dict(poly)
    for mono, c in poly.items():
        if sum(mono) >= top:
            continue
        for j in support:
            m = list(mono)
            m[j] += 1
            m = tuple(m)
            out[m] = out.get(m, 0) + c
    return out


@lru_cache(maxsize=None)
def exterior_power_chern(r: int, i: int, d: int) -> tuple[ChernPolynomial, ...]:
    """``(c_1, ..., c_d)`` of the i-th exterior power of a rank-r bundle E.

    Each entry is a polynomial in the Chern classes of E.  Computed from the
    Chern roots ``xi_{j_1} + ... + xi_{j_i}`` over i-element subsets.
    """
    if not 0 <= i <= r:
        raise ValueError(f"exterior power {i} of a rank-{r} bundle")
    if d < 1:
        raise ValueError("truncation degree must be positive")
    if i == 0:
        return tuple(ChernPolynomial() for _ in range(d))
    poly = {(0,) * r: 1}
    for subset in combinations(range(r), i):
        poly = _sparse_mul_linear(poly, subset, d)
    out = []
    for k in range(1, d + 1):
        comp = ChernPolynomial()
        for I in partitions_of(k):
            if len(I) > r:
                continue
            mono = I.parts + (0,) * (r - len(I))
            coef = poly.get(mono, 0)
            if coef:
                comp = comp + c_I(I).drop_above(r) * coef
        out.append(comp)
    return tuple(out)


def binomial(r: int, i: int) -> int:
    """Generalized binomial coefficient, valid for negative r."""
    if i < 0:
        return 0
    if r >= 0:
        return comb(r, i)
    return (-1) ** i * comb(i - r - 1, i)
