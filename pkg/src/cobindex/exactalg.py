"""Integer lattices in Q^n, kept in row Hermite normal form.

A lattice is stored as ``(1/denominator) * span_Z(basis)`` where ``basis`` is
an integer matrix in row HNF: rows are echelon, pivots are positive and the
entries above each pivot lie in ``[0, pivot)``.  With the common content of
``basis`` and ``denominator`` cleared, two lattices are equal exactly when
their stored fields are equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class IntegerLattice:
    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]
    denominator: int = 1

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_rank

    def rational_basis(self) -> list[list[Fraction]]:
        return [[Fraction(a, self.denominator) for a in row] for row in self.basis]

    def pivots(self) -> list[int]:
        return [next(j for j, a in enumerate(row) if a) for row in self.basis]

    def index(self) -> Fraction:
        """Covolume relative to Z^n (full-rank lattices only)."""
        if not self.is_full_rank:
            raise LatticeError("index is only defined for full-rank lattices")
        det = 1
        for i, row in enumerate(self.basis):
            det *= row[i]
        return Fraction(det, self.denominator ** self.ambient_rank)

    def __contains__(self, v) -> bool:
        return lattice_membership(self, v) is not None

    def issubset(self, other: "IntegerLattice") -> bool:
        return all(lattice_membership(other, row) is not None for row in self.rational_basis())

    def to_json(self) -> dict:
        return {"denominator": self.denominator, "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_json(cls, data: dict) -> "IntegerLattice":
        rows = [[Fraction(a, data["denominator"]) for a in r] for r in data["basis"]]
        n = len(rows[0]) if rows else data.get("ambient_rank")
        return lattice_from_rational_rows(rows, n)


def _normalized(n: int, rows: list[list[int]], den: int) -> IntegerLattice:
    if den <= 0:
        raise LatticeError("denominator must be positive")
    g = den
    for row in rows:
        for a in row:
            g = gcd(g, a)
            if g == 1:
                break
    if g > 1:
        rows = [[a // g for a in row] for row in rows]
        den //= g
    return IntegerLattice(n, tuple(tuple(r) for r in rows), den)


def _hnf_rows(rows: Iterable[Sequence[int]], n: int) -> list[list[int]]:
    A = [list(r) for r in rows]
    for r in A:
        if len(r) != n:
            raise LatticeError(f"row of length {len(r)} in ambient rank {n}")
    A = [r for r in A if any(r)]
    top = 0
    for col in range(n):
        if top == len(A):
            break
        # Euclid on the column below `top`
        while True:
            live = [i for i in range(top, len(A)) if A[i][col]]
            if not live:
                break
            p = min(live, key=lambda i: abs(A[i][col]))
            A[top], A[p] = A[p], A[top]
            prow = A[top]
            piv = prow[col]
            clean = True
            for i in range(top + 1, len(A)):
                a = A[i][col]
                if a:
                    q = a // piv
                    row = A[i]
                    for j in range(col, n):
                        row[j] -= q * prow[j]
                    if row[col]:
                        clean = False
            if clean:
                break
        if top < len(A) and A[top][col]:
            prow = A[top]
            if prow[col] < 0:
                for j in range(col, n):
                    prow[j] = -prow[j]
            piv = prow[col]
            for i in range(top):
                q = A[i][col] // piv
                if q:
                    row = A[i]
                    for j in range(col, n):
                        row[j] -= q * prow[j]
            top += 1
            A = A[:top] + [r for r in A[top:] if any(r)]
    return A[:top]


def hermite_normal_form(rows: Iterable[Sequence[int]], n: Optional[int] = None) -> IntegerLattice:
    """Lattice spanned by integer ``rows``, basis in canonical row HNF."""
    rows = [list(r) for r in rows]
    if n is None:
        if not rows:
            raise LatticeError("ambient rank required for an empty row list")
        n = len(rows[0])
    if n < 0:
        raise LatticeError("ambient rank must be nonnegative")
    return _normalized(n, _hnf_rows(rows, n), 1)


def lattice_from_rational_rows(rows: Iterable[Sequence], n: Optional[int] = None) -> IntegerLattice:
    rows = [[Fraction(a) for a in r] for r in rows]
    if n is None:
        if not rows:
            raise LatticeError("ambient rank required for an empty row list")
        n = len(rows[0])
    den = 1
    for r in rows:
        for a in r:
            den = lcm(den, a.denominator)
    ints = [[int(a * den) for a in r] for r in rows]
    return _normalized(n, _hnf_rows(ints, n), den)


def lattice_membership(L: IntegerLattice, v: Sequence) -> Optional[tuple[int, ...]]:
    """Integer coordinates of ``v`` in the basis of ``L``, or ``None`` if ``v`` is not in ``L``."""
    if len(v) != L.ambient_rank:
        raise LatticeError(f"vector of length {len(v)} in ambient rank {L.ambient_rank}")
    w = []
    for a in v:
        a = Fraction(a) * L.denominator
        if a.denominator != 1:
            return None
        w.append(a.numerator)
    coords = []
    start = 0
    for row in L.basis:
        p = next(j for j, a in enumerate(row) if a)
        if any(w[start:p]):
            return None
        x, r = divmod(w[p], row[p])
        if r:
            return None
        if x:
            for j in range(p, len(w)):
                w[j] -= x * row[j]
        coords.append(x)
        start = p + 1
    if any(w[start:]):
        return None
    return tuple(coords)


def _inverse(M: list[list[int]]) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(a) for a in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        p = next((i for i in range(col, n) if A[i][col]), None)
        if p is None:
            raise LatticeError("singular matrix")
        A[col], A[p] = A[p], A[col]
        inv = 1 / A[col][col]
        A[col] = [a * inv for a in A[col]]
        for i in range(n):
            if i != col and A[i][col]:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[col])]
    return [row[n:] for row in A]


def dual_lattice(L: IntegerLattice) -> IntegerLattice:
    """``{c : <c, v> in Z for all v in L}`` for a full-rank ``L``."""
    if not L.is_full_rank:
        raise LatticeError(f"dual of a rank-{L.rank} lattice in Q^{L.ambient_rank} is not defined")
    n = L.ambient_rank
    if n == 0:
        return L
    inv = _inverse([list(r) for r in L.basis])
    # dual basis vectors are the columns of denominator * B^{-1}
    rows = [[L.denominator * inv[i][j] for i in range(n)] for j in range(n)]
    return lattice_from_rational_rows(rows, n)


def divisibility_factor(L: IntegerLattice, v: Sequence) -> int:
    """Largest ``n >= 1`` with ``v / n`` still in ``L``."""
    coords = lattice_membership(L, v)
    if coords is None:
        raise LatticeError("vector is not in the lattice")
    g = 0
    for x in coords:
        g = gcd(g, x)
    if g == 0:
        raise LatticeError("zero vector has no divisibility factor")
    return g
