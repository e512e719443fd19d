"""Truncated Chow rings of products of projective spaces and Milnor hypersurfaces.

A Milnor hypersurface H(m, n) is the bidegree-(1, 1) divisor in P^m x P^n.
Its classes are kept in the ambient ring Z[x, y]/(x^{m+1}, y^{n+1}); the
degree of a class a on H is the coefficient of x^m y^n in a * (x + y).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .symfun import ChernPolynomial, MultiIndex, c_I, newton_polynomial, partitions_of

Number = Union[int, Fraction]


class InternalConsistencyError(RuntimeError):
    """A mathematical identity the code relies on failed to hold."""


class TruncatedRing:
    """Q[v_1, ..., v_k] / (v_i^{cap_i + 1}, everything of degree > top)."""

    def __init__(self, caps: Sequence[int | None], top: int, weights: Sequence[int] | None = None):
        self.caps = tuple(caps)
        self.top = top
        self.weights = tuple(weights) if weights is not None else (1,) * len(self.caps)

    @property
    def nvars(self) -> int:
        return len(self.caps)

    def degree_of(self, mono: tuple[int, ...]) -> int:
        return sum(w * e for w, e in zip(self.weights, mono))

    def mono_mul(self, m1, m2):
        m = tuple(a + b for a, b in zip(m1, m2))
        for e, cap in zip(m, self.caps):
            if cap is not None and e > cap:
                return None
        if self.degree_of(m) > self.top:
            return None
        return m

    def one(self) -> "GradedClass":
        return GradedClass(self, {(0,) * self.nvars: 1})

    def zero(self) -> "GradedClass":
        return GradedClass(self, {})

    def gen(self, i: int) -> "GradedClass":
        mono = tuple(int(j == i) for j in range(self.nvars))
        return GradedClass(self, {mono: 1})

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedRing)
            and (self.caps, self.top, self.weights) == (other.caps, other.top, other.weights)
        )

    def __hash__(self):
        return hash((self.caps, self.top, self.weights))


class GradedClass:
    """Element of a :class:`TruncatedRing`; anything above the top degree is dropped."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: TruncatedRing, terms: Mapping[tuple[int, ...], Number]):
        self.ring = ring
        clean = {}
        for m, c in terms.items():
            if c and ring.degree_of(m) <= ring.top:
                clean[m] = Fraction(c)
        self.terms: dict[tuple[int, ...], Fraction] = clean

    def _coerce(self, other) -> "GradedClass":
        if isinstance(other, GradedClass):
            if other.ring != self.ring:
                raise ValueError("classes live in different rings")
            return other
        return self.ring.one() * Fraction(other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return GradedClass(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return GradedClass(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GradedClass):
            other = Fraction(other)
            return GradedClass(self.ring, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        ring = self.ring
        terms: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = ring.mono_mul(m1, m2)
                if m is not None:
                    terms[m] = terms.get(m, 0) + c1 * c2
        return GradedClass(ring, terms)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (1 / Fraction(k))

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedClass):
            other = self.ring.one() * Fraction(other)
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def component(self, k: int) -> "GradedClass":
        ring = self.ring
        return GradedClass(ring, {m: c for m, c in self.terms.items() if ring.degree_of(m) == k})

    def components(self) -> list["GradedClass"]:
        return [self.component(k) for k in range(self.ring.top + 1)]

    @property
    def constant(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def scale_by_degree(self, fn) -> "GradedClass":
        """Multiply the degree-k component by ``fn(k)``."""
        ring = self.ring
        return GradedClass(ring, {m: c * fn(ring.degree_of(m)) for m, c in self.terms.items()})

    def dual(self) -> "GradedClass":
        return self.scale_by_degree(lambda k: -1 if k % 2 else 1)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: (self.ring.degree_of(mc[0]), tuple(-e for e in mc[0])))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{list(m)}" for m, c in self.sorted_terms())


def exp_nilpotent(u: GradedClass) -> GradedClass:
    if u.constant:
        raise ValueError("exp needs a class without constant term")
    out = u.ring.one()
    term = u.ring.one()
    for k in range(1, u.ring.top + 1):
        term = term * u / k
        if not term.terms:
            break
        out = out + term
    return out


def log_one_plus(u: GradedClass) -> GradedClass:
    """log(1 + u) for ``u`` without constant term."""
    if u.constant:
        raise ValueError("log needs a class without constant term")
    out = u.ring.zero()
    power = u.ring.one()
    for k in range(1, u.ring.top + 1):
        power = power * u
        if not power.terms:
            break
        out = out + power * Fraction((-1) ** (k - 1), k)
    return out


# --------------------------------------------------------------------------
# varieties


@dataclass(frozen=True)
class Proj:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"P^n needs n >= 1, got {self.n!r}")

    @property
    def dim(self) -> int:
        return self.n

    def __str__(self):
        return f"P{self.n}"


@dataclass(frozen=True)
class Milnor:
    m: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.m, int) and isinstance(self.n, int) and 2 <= self.m <= self.n):
            raise ValueError(f"Milnor hypersurface H(m, n) needs 2 <= m <= n, got ({self.m}, {self.n})")

    @property
    def dim(self) -> int:
        return self.m + self.n - 1

    def __str__(self):
        return f"H{self.m},{self.n}"


Atom = Union[Proj, Milnor]


def atom_sort_key(atom: Atom):
    return (-atom.dim, 0 if isinstance(atom, Proj) else 1, str(atom))


def spec_string(atoms: Sequence[Atom]) -> str:
    return "x".join(str(a) for a in atoms) if atoms else "pt"


class VarietyModel:
    """Product of generator varieties with its truncated Chow ring."""

    def __init__(self, factors: Sequence[Atom]):
        self.factors: tuple[Atom, ...] = tuple(factors)
        caps: list[int] = []
        self._slots: list[tuple[int, ...]] = []
        for atom in self.factors:
            if isinstance(atom, Proj):
                self._slots.append((len(caps),))
                caps.append(atom.n)
            elif isinstance(atom, Milnor):
                self._slots.append((len(caps), len(caps) + 1))
                caps.extend([atom.m, atom.n])
            else:
                raise TypeError(f"not a generator atom: {atom!r}")
        self.dimension = sum(a.dim for a in self.factors)
        self.ring = TruncatedRing(caps, self.dimension)

    def __repr__(self):
        return f"VarietyModel({spec_string(self.factors)!r})"

    def __eq__(self, other):
        return isinstance(other, VarietyModel) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def hyperplane(self, f: int) -> GradedClass:
        """Hyperplane class of factor ``f`` (for H(m, n): the restriction of x + y)."""
        slots = self._slots[f]
        out = self.ring.zero()
        for v in slots:
            out = out + self.ring.gen(v)
        return out

    def generators(self, f: int) -> list[GradedClass]:
        return [self.ring.gen(v) for v in self._slots[f]]

    @property
    def fundamental_monomial(self) -> tuple[int, ...]:
        """Ambient top monomial; for H(m, n) it is x^m y^n, read after multiplying by x + y."""
        mono: list[int] = []
        for atom in self.factors:
            if isinstance(atom, Proj):
                mono.append(atom.n)
            else:
                mono.extend([atom.m, atom.n])
        return tuple(mono)

    @cached_property
    def tangent_total(self) -> GradedClass:
        total = self.ring.one()
        for f, atom in enumerate(self.factors):
            if isinstance(atom, Proj):
                h = self.ring.gen(self._slots[f][0])
                total = total * (1 + h) ** (atom.n + 1)
            else:
                x, y = self.generators(f)
                normal = 1 + x + y
                total = total * (1 + x) ** (atom.m + 1) * (1 + y) ** (atom.n + 1) * virtual_negative(normal)
        return total

    @cached_property
    def todd_tangent(self) -> GradedClass:
        td = todd_class(self.tangent_total, self.dimension, self.dimension)
        if not self.is_integral_class(td * factorial(self.dimension + 1)):
            raise InternalConsistencyError(f"(d+1)! td(T) is not integral on {self}")
        return td

    def degree(self, alpha: GradedClass) -> Fraction:
        if alpha.ring != self.ring:
            raise ValueError("class does not live on this variety")
        total = Fraction(0)
        for mono, c in alpha.terms.items():
            if sum(mono) != self.dimension:
                continue
            w = 1
            for atom, slots in zip(self.factors, self._slots):
                if isinstance(atom, Proj):
                    if mono[slots[0]] != atom.n:
                        w = 0
                        break
                else:
                    a, b = mono[slots[0]], mono[slots[1]]
                    # coefficient of x^m y^n in (x + y) x^a y^b
                    w *= int((a, b) == (atom.m - 1, atom.n)) + int((a, b) == (atom.m, atom.n - 1))
                    if not w:
                        break
            total += w * c
        return total

    def is_integral_class(self, alpha: GradedClass) -> bool:
        """Integrality in the Chow ring of X itself, not in the ambient coordinates.

        The hyperplane generators span the integral cohomology and Poincare
        duality is unimodular, so alpha is integral iff every graded piece
        pairs integrally with every monomial of complementary degree.
        """
        ring = self.ring
        for k in range(self.dimension + 1):
            piece = alpha.component(k)
            if not piece.terms:
                continue
            for mono in _monomials_of_degree(ring, self.dimension - k):
                if self.degree(piece * GradedClass(ring, {mono: 1})).denominator != 1:
                    return False
        return True


@lru_cache(maxsize=None)
def _variety(factors: tuple[Atom, ...]) -> VarietyModel:
    return VarietyModel(factors)


def _monomials_of_degree(ring: TruncatedRing, k: int) -> Iterator[tuple[int, ...]]:
    def rec(i, left):
        if i == ring.nvars:
            if left == 0:
                yield ()
            return
        cap = ring.caps[i] if ring.caps[i] is not None else left
        for e in range(min(cap, left) + 1):
            for rest in rec(i + 1, left - e):
                yield (e,) + rest

    return rec(0, k)


def build_variety(spec: Iterable[Atom] | str) -> VarietyModel:
    if isinstance(spec, str):
        spec = parse_variety(spec)
    return _variety(tuple(spec))


def degree(X: VarietyModel, alpha: GradedClass) -> Fraction:
    return X.degree(alpha)


# --------------------------------------------------------------------------
# characteristic classes on an arbitrary truncated ring


def virtual_negative(total: GradedClass) -> GradedClass:
    """Inverse of a total Chern class, i.e. the total class of the negative bundle."""
    if total.constant != 1:
        raise ValueError(f"total Chern class must have constant term 1, got {total.constant}")
    u = total - 1
    out = total.ring.one()
    power = total.ring.one()
    for _ in range(total.ring.top):
        power = power * (-u)
        if not power.terms:
            break
        out = out + power
    return out


def chern_components(total: GradedClass, upto: int) -> list[GradedClass]:
    return [total.component(k) for k in range(1, upto + 1)]


def conner_floyd_class(I: MultiIndex, total: GradedClass) -> GradedClass:
    """``c_I`` evaluated at the graded pieces of ``total``."""
    return c_I(I).evaluate(chern_components(total, I.weight), total.ring.one())


def _check_denominators(alpha: GradedClass, bound: int, what: str) -> None:
    for c in alpha.terms.values():
        if bound % c.denominator:
            raise InternalConsistencyError(f"{what}: coefficient {c} has denominator not dividing {bound}")


def chern_character(total: GradedClass, rank: int, d: int) -> GradedClass:
    """Truncation at degree ``d`` of ``sum_j exp(xi_j)`` written through Chern classes."""
    if rank < 0:
        raise ValueError("rank must be nonnegative")
    d = min(d, total.ring.top)
    comps = chern_components(total, d)
    one = total.ring.one()
    ch = one * rank
    for k in range(1, d + 1):
        ch = ch + newton_polynomial(k).evaluate(comps, one) / factorial(k)
    ch = GradedClass(ch.ring, {m: c for m, c in ch.terms.items() if ch.ring.degree_of(m) <= d})
    _check_denominators(ch, factorial(d), "chern_character")
    return ch


@lru_cache(maxsize=None)
def _todd_series(n: int) -> tuple[Fraction, ...]:
    # x / (1 - e^{-x}) = 1 / (sum_k (-1)^k x^k / (k+1)!)
    den = [Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1)]
    out = [Fraction(1)]
    for k in range(1, n + 1):
        out.append(-sum(den[i] * out[k - i] for i in range(1, k + 1)))
    return tuple(out)


def todd_series(n: int) -> tuple[Fraction, ...]:
    """Coefficients of ``x / (1 - exp(-x))`` up to ``x^n``."""
    return _todd_series(n)


def todd_denominator_bound(d: int) -> int:
    """prod_{p prime} p^floor(d/(p-1)); every td_k, k <= d, has integral multiples by it."""
    out = 1
    for p in range(2, d + 2):
        if all(p % q for q in range(2, int(p ** 0.5) + 1)):
            out *= p ** (d // (p - 1))
    return out


def todd_class(total: GradedClass, rank: int, d: int) -> GradedClass:
    """``prod_j xi_j / (1 - exp(-xi_j))`` truncated at degree ``d``."""
    if rank < 0:
        raise ValueError("rank must be nonnegative")
    d = min(d, total.ring.top)
    b = todd_series(d)
    comps = chern_components(total, d)
    one = total.ring.one()
    td = one * 0
    for k in range(d + 1):
        for I in partitions_of(k):
            w = Fraction(1)
            for p in I.parts:
                w *= b[p]
            td = td + c_I(I).evaluate(comps, one) * w
    td = GradedClass(td.ring, {m: c for m, c in td.terms.items() if td.ring.degree_of(m) <= d})
    _check_denominators(td, todd_denominator_bound(d), "todd_class")
    return td


# --------------------------------------------------------------------------
# variety-spec grammar:  factor ('x' factor)* ;  factor := 'P' n | 'H' m ',' n | 'pt'


class SpecSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position} in {text!r}")


def parse_variety(text: str) -> list[Atom]:
    """Parse e.g. ``"P2 x H2,3 x P1"``; whitespace is ignored, ``pt`` is the point."""
    chars = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
    pos = 0

    def where():
        return chars[pos][0] if pos < len(chars) else len(text)

    def peek():
        return chars[pos][1] if pos < len(chars) else ""

    def number():
        nonlocal pos
        start = pos
        while pos < len(chars) and chars[pos][1].isdigit():
            pos += 1
        if start == pos:
            raise SpecSyntaxError("expected a number", where(), text)
        return int("".join(ch for _, ch in chars[start:pos]))

    if not chars:
        raise SpecSyntaxError("empty variety spec", 0, text)
    atoms: list[Atom] = []
    while True:
        start = where()
        ch = peek()
        if ch == "P":
            pos += 1
            n = number()
            try:
                atoms.append(Proj(n))
            except ValueError as exc:
                raise SpecSyntaxError(str(exc), start, text) from None
        elif ch == "H":
            pos += 1
            m = number()
            if peek() != ",":
                raise SpecSyntaxError("expected ','", where(), text)
            pos += 1
            n = number()
            try:
                atoms.append(Milnor(m, n))
            except ValueError as exc:
                raise SpecSyntaxError(str(exc), start, text) from None
        elif ch == "p" and pos + 1 < len(chars) and chars[pos + 1][1] == "t":
            pos += 2
        else:
            raise SpecSyntaxError(f"expected 'P', 'H' or 'pt', found {ch!r}" if ch else "unexpected end", start, text)
        if pos == len(chars):
            return atoms
        if peek() != "x":
            raise SpecSyntaxError(f"expected 'x', found {peek()!r}", where(), text)
        pos += 1
        if pos == len(chars):
            raise SpecSyntaxError("dangling 'x'", where(), text)
