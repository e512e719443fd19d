"""Homogeneous rational characteristic classes in the c_I basis.

Besides the basis change and the Segre substitution c_i -> s_i, this module
builds the Todd-twisted classes ``S_f`` attached to ``f = prod tau_i^{m_i}``
and the catalogue of integral classes (half Euler class, Steenrod-type
classes, signature polynomials).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Sequence, Union

from . import kernels
from .chow import todd_series
from .symfun import ChernPolynomial, MultiIndex, Number, c_I, multiplicative_sequence, partitions_of


class CharClassPoly:
    """Element of Q[c]_d stored by its coordinates in the basis ``{c_I : |I| = d}``."""

    __slots__ = ("degree", "coords")

    def __init__(self, degree: int, coords: Mapping[MultiIndex, Number] | None = None):
        self.degree = degree
        clean = {}
        for I, a in (coords or {}).items():
            if I.weight != degree:
                raise ValueError(f"index {I.key()!r} has weight {I.weight}, expected {degree}")
            if a:
                clean[I] = Fraction(a)
        self.coords: dict[MultiIndex, Fraction] = clean

    @classmethod
    def basis_element(cls, I: MultiIndex) -> "CharClassPoly":
        return cls(I.weight, {I: 1})

    @classmethod
    def from_vector(cls, d: int, vector: Sequence[Number]) -> "CharClassPoly":
        return cls(d, dict(zip(partitions_of(d), vector)))

    def vector(self) -> list[Fraction]:
        return [self.coords.get(I, Fraction(0)) for I in partitions_of(self.degree)]

    def to_chern_polynomial(self) -> ChernPolynomial:
        out = ChernPolynomial()
        for I, a in self.coords.items():
            out = out + c_I(I) * a
        return out

    @classmethod
    def from_chern_polynomial(cls, poly: ChernPolynomial, d: int | None = None) -> "CharClassPoly":
        if d is None:
            d = poly.max_degree
        if not poly.is_homogeneous(d):
            raise ValueError(f"polynomial is not homogeneous of degree {d}")
        parts = partitions_of(d)
        inv = _monomial_to_cI(d)
        coords: dict[MultiIndex, Fraction] = {}
        for mono, a in poly.coefficients.items():
            row = inv[parts.index(mono)]
            for I, x in zip(parts, row):
                if x:
                    coords[I] = coords.get(I, 0) + a * x
        return cls(d, coords)

    def __eq__(self, other):
        return isinstance(other, CharClassPoly) and self.degree == other.degree and self.coords == other.coords

    def __hash__(self):
        return hash((self.degree, frozenset(self.coords.items())))

    def __add__(self, other: "CharClassPoly"):
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        coords = dict(self.coords)
        for I, a in other.coords.items():
            coords[I] = coords.get(I, 0) + a
        return CharClassPoly(self.degree, coords)

    def __neg__(self):
        return CharClassPoly(self.degree, {I: -a for I, a in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        k = Fraction(k)
        return CharClassPoly(self.degree, {I: a * k for I, a in self.coords.items()})

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (1 / Fraction(k))

    def __repr__(self):
        body = ", ".join(f"{I.key()!r}: {a}" for I, a in sorted(self.coords.items()))
        return f"CharClassPoly({self.degree}, {{{body}}})"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "coords": {
                I.key(): {"num": a.numerator, "den": a.denominator} for I, a in sorted(self.coords.items())
            },
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CharClassPoly":
        coords = {}
        for key, val in data["coords"].items():
            if isinstance(val, Mapping):
                coords[MultiIndex.from_key(key)] = Fraction(val["num"], val["den"])
            else:
                coords[MultiIndex.from_key(key)] = Fraction(val)
        return cls(int(data["degree"]), coords)


@lru_cache(maxsize=None)
def cI_to_monomial(d: int) -> tuple[tuple[int, ...], ...]:
    """Row I holds the monomial coordinates of ``c_I`` (partition order on both sides)."""
    parts = partitions_of(d)
    rows = []
    for I in parts:
        poly = c_I(I)
        rows.append(tuple(int(poly.coefficients.get(K, 0)) for K in parts))
    return tuple(rows)


def _invert(M: Sequence[Sequence[Number]]) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(a) for a in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        p = next(i for i in range(col, n) if A[i][col])
        A[col], A[p] = A[p], A[col]
        inv = 1 / A[col][col]
        A[col] = [a * inv for a in A[col]]
        for i in range(n):
            if i != col and A[i][col]:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[col])]
    return [row[n:] for row in A]


@lru_cache(maxsize=None)
def _monomial_to_cI(d: int) -> tuple[tuple[Fraction, ...], ...]:
    # row K: c-coordinates of the monomial c^K
    return tuple(tuple(r) for r in _invert(cI_to_monomial(d)))


# --------------------------------------------------------------------------
# Segre polynomials


@lru_cache(maxsize=None)
def _segre(d: int) -> tuple[ChernPolynomial, ...]:
    s = [ChernPolynomial.one()]
    for k in range(1, d + 1):
        acc = ChernPolynomial()
        for i in range(1, k + 1):
            acc = acc - ChernPolynomial.variable(i) * s[k - i]
        s.append(acc)
    return tuple(s[1:])


def segre_polynomials(d: int) -> list[ChernPolynomial]:
    """``s_1, ..., s_d`` with ``1 + sum s_i t^i = (1 + sum c_i t^i)^{-1}``."""
    if d < 1:
        raise ValueError("d must be positive")
    return list(_segre(d))


@lru_cache(maxsize=None)
def _segre_matrix(d: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row I: c_I-coordinates of ``c_I(s_1, ..., s_d)``."""
    if d == 0:
        return ((Fraction(1),),)
    s = _segre(d)
    rows = []
    for I in partitions_of(d):
        sub = c_I(I).evaluate(s, ChernPolynomial.one())
        rows.append(tuple(CharClassPoly.from_chern_polynomial(sub, d).vector()))
    return tuple(rows)


def segre_substitute(P: CharClassPoly) -> CharClassPoly:
    """``P(s_1, ..., s_d)`` re-expressed in the c_I basis (an involution)."""
    d = P.degree
    M = _segre_matrix(d)
    parts = partitions_of(d)
    out = [Fraction(0)] * len(parts)
    for I, a in P.coords.items():
        row = M[parts.index(I)]
        for j, x in enumerate(row):
            if x:
                out[j] += a * x
    return CharClassPoly.from_vector(d, out)


# --------------------------------------------------------------------------
# R_f and S_f in d Chern-root indeterminates


class _XiSpace:
    """Truncated power series in xi_1..xi_d, stored in divided-power form.

    Coefficient vectors hold ``|alpha|! * coef(xi^alpha)``, which keeps
    ``e_i(exp(xi_1), ..., exp(xi_d))`` and all its products integral.
    """

    def __init__(self, d: int):
        self.d = d
        self.table = kernels.product_table(d, d, divided_powers=True)
        monos = self.table.monomials
        self.elementary = [self._exp_elementary(i) for i in range(d + 1)]
        b = todd_series(d)
        self.todd = {}
        for m in monos:
            w = Fraction(1)
            for e in m:
                w *= b[e]
            self.todd[m] = w
        self.targets = []
        for I in partitions_of(d):
            lam = I.parts + (0,) * (d - len(I))
            split = []
            for m in monos:
                if all(a <= l for a, l in zip(m, lam)):
                    rest = tuple(l - a for a, l in zip(m, lam))
                    w = self.todd[rest] / factorial(sum(m))
                    if w:
                        split.append((self.table.index[m], w))
            self.targets.append((I, split))

    def _exp_elementary(self, i: int) -> list[int]:
        # |alpha|! * coef of xi^alpha in sum_{|S| = i} exp(sum_{j in S} xi_j)
        d = self.d
        out = []
        for m in self.table.monomials:
            support = sum(1 for e in m if e)
            multinom = factorial(sum(m))
            for e in m:
                multinom //= factorial(e)
            out.append(multinom * comb(d - support, i - support) if support <= i else 0)
        return out

    def mul(self, a, b):
        return kernels.trunc_mul(a, b, self.table)

    def one(self) -> list[int]:
        out = [0] * self.table.size
        out[self.table.index[(0,) * self.d]] = 1
        return out

    def twisted_degree_d(self, F: Sequence[int]) -> CharClassPoly:
        """R_f from ``F = f(exp(xi))``: the degree-d part of ``F * prod todd(xi_j)``."""
        coords = {}
        for I, split in self.targets:
            acc = Fraction(0)
            for idx, w in split:
                x = F[idx]
                if x:
                    acc += x * w
            coords[I] = acc
        return CharClassPoly(self.d, coords)


@lru_cache(maxsize=None)
def _xi_space(d: int) -> _XiSpace:
    return _XiSpace(d)


class _SfBuilder:
    """Memoizes ``f(exp(xi))`` along exponent vectors so sweeps over m share work."""

    def __init__(self, d: int):
        self.space = _xi_space(d)
        self.series: dict[tuple[int, ...], list[int]] = {(0,) * d: self.space.one()}
        self.R: dict[tuple[int, ...], CharClassPoly] = {}
        self.S: dict[tuple[int, ...], CharClassPoly] = {}

    def f_series(self, m: tuple[int, ...]) -> list[int]:
        if m not in self.series:
            k = max(i for i, e in enumerate(m) if e)
            prev = m[:k] + (m[k] - 1,) + m[k + 1:]
            self.series[m] = self.space.mul(self.f_series(prev), self.space.elementary[k + 1])
        return self.series[m]

    def R_f(self, m: tuple[int, ...]) -> CharClassPoly:
        if m not in self.R:
            self.R[m] = self.space.twisted_degree_d(self.f_series(m))
        return self.R[m]

    def S_f(self, m: tuple[int, ...]) -> CharClassPoly:
        if m not in self.S:
            self.S[m] = segre_substitute(self.R_f(m))
        return self.S[m]


@lru_cache(maxsize=None)
def _builder(d: int) -> _SfBuilder:
    return _SfBuilder(d)


def _check_exponents(m: Sequence[int], d: int) -> tuple[int, ...]:
    m = tuple(int(e) for e in m)
    if len(m) != d:
        raise ValueError(f"exponent vector must have length {d}, got {len(m)}")
    if any(e < 0 for e in m):
        raise ValueError("exponents must be nonnegative")
    return m


def build_Rf(m: Sequence[int], d: int) -> CharClassPoly:
    """R_f for ``f = prod tau_i^{m_i}``: degree-d part of ``f(e^xi) * prod xi_j / (1 - e^{-xi_j})``."""
    if d == 0:
        return CharClassPoly(0, {MultiIndex(): 1})
    return _builder(d).R_f(_check_exponents(m, d))


def build_Sf(m: Sequence[int], d: int) -> CharClassPoly:
    """S_f = R_f(s_1, ..., s_d) for ``f = prod tau_i^{m_i}``."""
    if d == 0:
        return CharClassPoly(0, {MultiIndex(): 1})
    return _builder(d).S_f(_check_exponents(m, d))


def build_Sf_sum(terms: Iterable[tuple[int, Sequence[int]]], d: int) -> CharClassPoly:
    """S_f for a Z-linear combination ``f = sum k * prod tau_i^{m_i}``."""
    out = CharClassPoly(d)
    for k, m in terms:
        out = out + build_Sf(m, d) * k
    return out


# --------------------------------------------------------------------------
# signature polynomials


@lru_cache(maxsize=None)
def _x_over_tanh(n: int) -> tuple[Fraction, ...]:
    """Coefficients ``b_k`` of ``sqrt(z) / tanh(sqrt(z)) = sum b_k z^k``."""
    # sqrt(z) cosh(sqrt(z)) / sinh(sqrt(z)) with both series in z
    cosh = [Fraction(1, factorial(2 * k)) for k in range(n + 1)]
    sinh_over = [Fraction(1, factorial(2 * k + 1)) for k in range(n + 1)]
    out = []
    for k in range(n + 1):
        acc = cosh[k] - sum(sinh_over[i] * out[k - i] for i in range(1, k + 1))
        out.append(acc)
    return tuple(out)


def pontryagin_in_chern(i: int) -> ChernPolynomial:
    """``p_i = sum_{j=0}^{2i} (-1)^{i+j} c_j c_{2i-j}`` with ``c_0 = 1``."""
    out = ChernPolynomial()
    for j in range(2 * i + 1):
        out = out + ChernPolynomial.variable(j) * ChernPolynomial.variable(2 * i - j) * (-1) ** (i + j)
    return out


def l_polynomial(k: int) -> ChernPolynomial:
    """Hirzebruch's L_k as a polynomial in the Pontryagin classes (keys index p_j)."""
    return multiplicative_sequence(_x_over_tanh(k), k)


@lru_cache(maxsize=None)
def _signature_poly(d: int) -> ChernPolynomial:
    k = d // 2
    ps = [pontryagin_in_chern(i) for i in range(1, k + 1)]
    return l_polynomial(k).evaluate(ps, ChernPolynomial.one()).truncate(d)


def signature_chern_polynomial(d: int) -> ChernPolynomial:
    """P_d in the monomial basis of the Chern classes."""
    if d <= 0 or d % 2:
        raise ValueError(f"signature polynomial needs an even positive degree, got {d}")
    return _signature_poly(d)


def hirzebruch_signature_polynomial(d: int) -> CharClassPoly:
    return CharClassPoly.from_chern_polynomial(signature_chern_polynomial(d), d)


# --------------------------------------------------------------------------
# catalogue


class CatalogueError(ValueError):
    pass


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % p for p in range(2, int(q ** 0.5) + 1))


def _is_q_power_minus_one(j: int, q: int) -> bool:
    x = j + 1
    if x < q:
        return False
    while x % q == 0:
        x //= q
    return x == 1


CATALOGUE = ("half_euler", "half_c1_power", "half_segre", "steenrod", "newton_over_q", "signature")


def catalogue_class(name: str, d: int | None = None, q: int | None = None, I: MultiIndex | None = None) -> CharClassPoly:
    """Integral characteristic classes from the cobordism examples.

    ``half_euler(d)`` and ``half_c1_power(d)`` need odd d; ``half_segre(d)``
    any d >= 1; ``steenrod(q, I)`` a prime q and parts of I of the form
    q^n - 1; ``newton_over_q(q, d)`` needs d = q^n - 1; ``signature(d)``
    needs even d.
    """
    if name in ("half_euler", "half_c1_power", "half_segre", "signature", "newton_over_q") and (d is None or d < 1):
        raise CatalogueError(f"{name} needs a positive degree d")
    if name == "half_euler":
        if d % 2 == 0:
            raise CatalogueError("half_euler needs odd d")
        return CharClassPoly.from_chern_polynomial(ChernPolynomial.variable(d), d) / 2
    if name == "half_c1_power":
        if d % 2 == 0:
            raise CatalogueError("half_c1_power needs odd d")
        return CharClassPoly.from_chern_polynomial(ChernPolynomial.variable(1) ** d, d) / 2
    if name == "half_segre":
        return CharClassPoly.from_chern_polynomial(segre_polynomials(d)[-1], d) / 2
    if name == "signature":
        if d % 2:
            raise CatalogueError("signature needs even d")
        return hirzebruch_signature_polynomial(d)
    if name in ("steenrod", "newton_over_q"):
        if q is None or not _is_prime(q):
            raise CatalogueError(f"{name} needs a prime q, got {q}")
        if name == "newton_over_q":
            if not _is_q_power_minus_one(d, q):
                raise CatalogueError(f"newton_over_q needs d = q^n - 1, got d = {d}, q = {q}")
            I = MultiIndex((d,))
        if I is None or I.weight == 0:
            raise CatalogueError("steenrod needs a nonempty multi-index I")
        if d is not None and d != I.weight:
            raise CatalogueError(f"|I| = {I.weight} does not match d = {d}")
        bad = [j for j in I.alpha if not _is_q_power_minus_one(j, q)]
        if bad:
            raise CatalogueError(f"parts {bad} are not of the form {q}^n - 1")
        return segre_substitute(CharClassPoly.basis_element(I)) / q
    raise CatalogueError(f"unknown class {name!r}; choose from {', '.join(CATALOGUE)}")


def steenrod_indices(q: int, d: int) -> list[MultiIndex]:
    """All I with |I| = d whose parts are of the form q^n - 1."""
    return [I for I in partitions_of(d) if all(_is_q_power_minus_one(j, q) for j in I.alpha)]
