"""Euler characteristics of bundles built from T_X, via Hirzebruch-Riemann-Roch.

Bundle expressions are small trees over the atoms ``T``, ``O`` / ``trivial(r)``
and ``O(k)@f`` (a twist of the hyperplane bundle of factor f).
They are evaluated to a rank and a Chern character in the Chow ring of X.

Expression grammar used by the CLI (loosest binding first)::

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := ('~' | '-') unary | power
    power   := atom ('^' INT)*          # exterior power
    atom    := 'T' | 'O' | 'O(' INT ')' ['@' INT] | INT | '(' expr ')'

so ``~T^2`` is the dual of the second exterior power of T (the same bundle
as the second exterior power of the dual). On a Milnor factor H(m, n),
``O(k)@f`` is the restriction of O(k, k).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence, Union

from .charclass import build_Sf, signature_chern_polynomial
from .chow import (
    GradedClass,
    InternalConsistencyError,
    VarietyModel,
    chern_character,
    chern_components,
    exp_nilpotent,
    log_one_plus,
)
from .cobordism import fundamental_polynomial, pairing
from .symfun import binomial, exterior_power_chern

# exterior powers of genuine bundles up to this rank go through the splitting principle
SPLITTING_MAX_RANK = 10


# --------------------------------------------------------------------------
# expression tree


@dataclass(frozen=True)
class Tangent:
    def __str__(self):
        return "T"


@dataclass(frozen=True)
class Trivial:
    rank: int = 1

    def __str__(self):
        return "O" if self.rank == 1 else str(self.rank)


@dataclass(frozen=True)
class Line:
    factor: int
    twist: int

    def __str__(self):
        return f"O({self.twist})@{self.factor}"


@dataclass(frozen=True)
class Dual:
    arg: "BundleExpr"

    def __str__(self):
        return f"~{_wrap(self.arg)}"


@dataclass(frozen=True)
class ExteriorPower:
    i: int
    arg: "BundleExpr"

    def __str__(self):
        return f"{_wrap(self.arg)}^{self.i}"


@dataclass(frozen=True)
class Tensor:
    left: "BundleExpr"
    right: "BundleExpr"

    def __str__(self):
        return f"({self.left} * {self.right})"


@dataclass(frozen=True)
class DirectSum:
    left: "BundleExpr"
    right: "BundleExpr"

    def __str__(self):
        return f"({self.left} + {self.right})"


@dataclass(frozen=True)
class Negate:
    arg: "BundleExpr"

    def __str__(self):
        return f"-{_wrap(self.arg)}"


BundleExpr = Union[Tangent, Trivial, Line, Dual, ExteriorPower, Tensor, DirectSum, Negate]


def _wrap(e) -> str:
    s = str(e)
    return s if isinstance(e, (Tangent, Trivial, Line)) or s.startswith("(") else f"({s})"


def cotangent_power(i: int) -> BundleExpr:
    """Omega^i, the i-th exterior power of the dual tangent bundle."""
    return ExteriorPower(i, Dual(Tangent())) if i else Trivial(1)


def tensor_all(items: Sequence[BundleExpr]) -> BundleExpr:
    out: BundleExpr = Trivial(1)
    for i, e in enumerate(items):
        out = e if i == 0 else Tensor(out, e)
    return out


# --------------------------------------------------------------------------
# evaluation


@dataclass(frozen=True)
class BundleValue:
    rank: int
    ch: GradedClass
    genuine: bool  # no virtual differences inside, so c_j = 0 above the rank


def _adams(ch: GradedClass, k: int) -> GradedClass:
    return ch.scale_by_degree(lambda j: Fraction(k) ** j)


def chern_total_from_ch(ch: GradedClass) -> GradedClass:
    """c(E) = exp(sum_k (-1)^{k-1} (k-1)! ch_k(E))."""
    acc = ch.ring.zero()
    fact = 1
    for k in range(1, ch.ring.top + 1):
        if k > 1:
            fact *= k - 1
        acc = acc + ch.component(k) * ((-1) ** (k - 1) * fact)
    return exp_nilpotent(acc)


def ch_from_chern_total(total: GradedClass, rank: int) -> GradedClass:
    """Inverse of :func:`chern_total_from_ch`; works for any integer rank."""
    log = log_one_plus(total - 1)
    out = total.ring.one() * rank
    fact = 1
    for k in range(1, total.ring.top + 1):
        if k > 1:
            fact *= k - 1
        out = out + log.component(k) * Fraction((-1) ** (k - 1), fact)
    return out


def exterior_power_lambda_ring(value: BundleValue, i: int) -> BundleValue:
    """Lambda^i through Newton's recursion on Adams operations (valid for virtual bundles)."""
    ring = value.ch.ring
    lam = [ring.one()]
    for n in range(1, i + 1):
        acc = ring.zero()
        for k in range(1, n + 1):
            acc = acc + _adams(value.ch, k) * lam[n - k] * (-1) ** (k - 1)
        lam.append(acc / n)
    return BundleValue(binomial(value.rank, i), lam[i], value.genuine)


def exterior_power_splitting(value: BundleValue, i: int) -> BundleValue:
    r, ring = value.rank, value.ch.ring
    if i > r:
        return BundleValue(0, ring.zero(), True)
    if i == 0 or ring.top == 0:
        return BundleValue(comb(r, i), ring.one() * comb(r, i), True)
    total = chern_total_from_ch(value.ch)
    comps = chern_components(total, min(r, ring.top))
    polys = exterior_power_chern(r, i, ring.top)
    new_total = ring.one()
    for p in polys:
        new_total = new_total + p.evaluate(comps, ring.one())
    rank = comb(r, i)
    return BundleValue(rank, chern_character(new_total, rank, ring.top), True)


def evaluate_bundle(X: VarietyModel, E: BundleExpr) -> BundleValue:
    ring = X.ring
    if isinstance(E, Tangent):
        return BundleValue(X.dimension, chern_character(X.tangent_total, X.dimension, X.dimension), True)
    if isinstance(E, Trivial):
        if E.rank < 0:
            raise ValueError("trivial bundle rank must be nonnegative")
        return BundleValue(E.rank, ring.one() * E.rank, True)
    if isinstance(E, Line):
        if not 0 <= E.factor < len(X.factors):
            raise ValueError(f"factor index {E.factor} out of range for {X}")
        return BundleValue(1, exp_nilpotent(X.hyperplane(E.factor) * E.twist), True)
    if isinstance(E, Dual):
        v = evaluate_bundle(X, E.arg)
        return BundleValue(v.rank, v.ch.dual(), v.genuine)
    if isinstance(E, Negate):
        v = evaluate_bundle(X, E.arg)
        return BundleValue(-v.rank, -v.ch, False)
    if isinstance(E, DirectSum):
        a, b = evaluate_bundle(X, E.left), evaluate_bundle(X, E.right)
        return BundleValue(a.rank + b.rank, a.ch + b.ch, a.genuine and b.genuine)
    if isinstance(E, Tensor):
        a, b = evaluate_bundle(X, E.left), evaluate_bundle(X, E.right)
        return BundleValue(a.rank * b.rank, a.ch * b.ch, a.genuine and b.genuine)
    if isinstance(E, ExteriorPower):
        if E.i < 0:
            raise ValueError("exterior power index must be nonnegative")
        v = evaluate_bundle(X, E.arg)
        if v.genuine and v.rank <= SPLITTING_MAX_RANK:
            return exterior_power_splitting(v, E.i)
        return exterior_power_lambda_ring(v, E.i)
    raise TypeError(f"not a bundle expression: {E!r}")


def euler_characteristic(X: VarietyModel, E: BundleExpr) -> int:
    """chi(X, E) = deg(ch(E) td(T_X))."""
    value = X.degree(evaluate_bundle(X, E).ch * X.todd_tangent)
    if value.denominator != 1:
        raise InternalConsistencyError(f"chi({X}, {E}) = {value} is not an integer")
    return int(value)


# --------------------------------------------------------------------------
# identities


@dataclass(frozen=True)
class CobordSfCheck:
    lhs: Fraction
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def twisted_tangent_bundle(m: Sequence[int]) -> BundleExpr:
    """Tensor product over i of (Lambda^i T)^{m_i}."""
    items = []
    for i, mi in enumerate(m, start=1):
        items.extend([ExteriorPower(i, Tangent())] * mi)
    return tensor_all(items)


def verify_cobord_sf(X: VarietyModel, m: Sequence[int]) -> CobordSfCheck:
    d = X.dimension
    if len(m) != d:
        raise ValueError(f"exponent vector must have length dim X = {d}")
    lhs = pairing(build_Sf(m, d), fundamental_polynomial(X))
    rhs = euler_characteristic(X, twisted_tangent_bundle(m))
    return CobordSfCheck(lhs, rhs)


def hodge_sum(X: VarietyModel, signs: bool = False) -> int:
    return sum((-1) ** i * euler_characteristic(X, cotangent_power(i)) if signs else euler_characteristic(X, cotangent_power(i))
               for i in range(X.dimension + 1))


def signature_from_l_genus(X: VarietyModel) -> Fraction:
    d = X.dimension
    poly = signature_chern_polynomial(d)
    comps = chern_components(X.tangent_total, d)
    return X.degree(poly.evaluate(comps, X.ring.one()))


def signature(X: VarietyModel) -> int:
    """Signature computed from the L-genus and from the Hodge sum; both must agree."""
    d = X.dimension
    if d % 2:
        raise ValueError(f"signature needs even dimension, {X} has dimension {d}")
    if d == 0:
        return 1
    via_l = signature_from_l_genus(X)
    via_hodge = hodge_sum(X)
    if via_l != via_hodge:
        raise InternalConsistencyError(f"sig({X}): L-genus gives {via_l}, Hodge sum gives {via_hodge}")
    return via_hodge


@dataclass(frozen=True)
class HalfEulerCheck:
    e: int
    half: int
    rho_value: int

    @property
    def equal(self) -> bool:
        return self.half == self.rho_value


def half_euler_check(X: VarietyModel) -> HalfEulerCheck:
    d = X.dimension
    if d % 2 == 0:
        raise ValueError(f"half-Euler check needs odd dimension, {X} has dimension {d}")
    top = X.degree(X.tangent_total.component(d))
    e = hodge_sum(X, signs=True)
    if top != e:
        raise InternalConsistencyError(f"e({X}): Chern number {top} but Hodge sum {e}")
    if e % 2:
        raise InternalConsistencyError(f"odd Euler characteristic {e} on odd-dimensional {X}")
    rho = sum((-1) ** i * euler_characteristic(X, cotangent_power(i)) for i in range((d - 1) // 2 + 1))
    return HalfEulerCheck(e, e // 2, rho)


# --------------------------------------------------------------------------
# parser


class BundleSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position} in {text!r}")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = self._lex(text)
        self.pos = 0

    def _lex(self, text):
        toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                toks.append(("INT", int(text[i:j]), i))
                i = j
            elif ch in "TO+-*~^()@":
                toks.append((ch, ch, i))
                i += 1
            else:
                raise BundleSyntaxError(f"unexpected character {ch!r}", i, text)
        return toks

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def where(self):
        return self.toks[self.pos][2] if self.pos < len(self.toks) else len(self.text)

    def take(self, kind):
        if self.peek() != kind:
            found = self.toks[self.pos][1] if self.pos < len(self.toks) else "end of input"
            raise BundleSyntaxError(f"expected {kind!r}, found {found!r}", self.where(), self.text)
        tok = self.toks[self.pos]
        self.pos += 1
        return tok[1]

    def parse(self) -> BundleExpr:
        if not self.toks:
            raise BundleSyntaxError("empty bundle expression", 0, self.text)
        e = self.expr()
        if self.pos != len(self.toks):
            raise BundleSyntaxError(f"unexpected {self.toks[self.pos][1]!r}", self.where(), self.text)
        return e

    def expr(self):
        e = self.term()
        while self.peek() in ("+", "-"):
            op = self.take(self.peek())
            rhs = self.term()
            e = DirectSum(e, rhs if op == "+" else Negate(rhs))
        return e

    def term(self):
        e = self.unary()
        while self.peek() == "*":
            self.take("*")
            e = Tensor(e, self.unary())
        return e

    def unary(self):
        if self.peek() == "~":
            self.take("~")
            return Dual(self.unary())
        if self.peek() == "-":
            self.take("-")
            return Negate(self.unary())
        return self.power()

    def power(self):
        e = self.atom()
        while self.peek() == "^":
            self.take("^")
            e = ExteriorPower(self.take("INT"), e)
        return e

    def atom(self):
        kind = self.peek()
        if kind == "T":
            self.take("T")
            return Tangent()
        if kind == "INT":
            return Trivial(self.take("INT"))
        if kind == "(":
            self.take("(")
            e = self.expr()
            self.take(")")
            return e
        if kind == "O":
            self.take("O")
            if self.peek() != "(":
                return Trivial(1)
            self.take("(")
            sign = 1
            if self.peek() == "-":
                self.take("-")
                sign = -1
            k = sign * self.take("INT")
            self.take(")")
            factor = 0
            if self.peek() == "@":
                self.take("@")
                factor = self.take("INT")
            return Line(factor, k)
        found = self.toks[self.pos][1] if self.pos < len(self.toks) else "end of input"
        raise BundleSyntaxError(f"expected a bundle, found {found!r}", self.where(), self.text)


def parse_bundle(text: str) -> BundleExpr:
    """Parse a bundle expression such as ``"~T^2 + O(3)@1"``; ``O(k)`` alone twists factor 0."""
    return _Parser(text).parse()
