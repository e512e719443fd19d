"""Hot-loop kernels with a compiled fast path chosen at import time.

The compiled extension (``_ckernels``) works in int64 and signals overflow;
the pure-Python twin in ``_pykernels`` is exact for any input size.  Set
``COBINDEX_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os
from array import array
from dataclasses import dataclass
from math import comb
from typing import Sequence

from . import _pykernels

_compiled = None
if not os.environ.get("COBINDEX_PURE_PYTHON"):
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


@dataclass(frozen=True)
class ProductTable:
    """Multiplication table of a truncated monomial basis.

    Entry t says ``out[K[t]] += W[t] * a[I[t]] * b[J[t]]``.
    """

    monomials: tuple[tuple[int, ...], ...]
    index: dict
    I: array
    J: array
    K: array
    W: array

    @property
    def size(self) -> int:
        return len(self.monomials)


def _monomials(nvars: int, top: int) -> list[tuple[int, ...]]:
    out = []

    def rec(prefix, left, remaining):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for e in range(left + 1):
            rec(prefix + [e], left - e, remaining - 1)

    rec([], top, nvars)
    out.sort(key=lambda m: (sum(m), tuple(-e for e in m)))
    return out


def product_table(nvars: int, top: int, divided_powers: bool = False) -> ProductTable:
    """Table for polynomials in ``nvars`` variables truncated above degree ``top``.

    With ``divided_powers`` each coefficient is stored multiplied by
    ``(total degree)!``; the table then carries the binomial weights that
    keep such products integral.
    """
    monos = _monomials(nvars, top)
    index = {m: i for i, m in enumerate(monos)}
    I, J, K, W = array("q"), array("q"), array("q"), array("q")
    for i, m1 in enumerate(monos):
        d1 = sum(m1)
        for j, m2 in enumerate(monos):
            d2 = sum(m2)
            if d1 + d2 > top:
                continue
            k = index[tuple(x + y for x, y in zip(m1, m2))]
            I.append(i)
            J.append(j)
            K.append(k)
            W.append(comb(d1 + d2, d1) if divided_powers else 1)
    return ProductTable(tuple(monos), index, I, J, K, W)


def trunc_mul(a: Sequence[int], b: Sequence[int], table: ProductTable) -> list[int]:
    if _compiled is not None:
        try:
            return _compiled.trunc_mul(a, b, table.I, table.J, table.K, table.W, table.size)
        except OverflowError:
            pass
    return _pykernels.trunc_mul(a, b, table.I, table.J, table.K, table.W, table.size)


def trunc_mul_python(a: Sequence[int], b: Sequence[int], table: ProductTable) -> list[int]:
    return _pykernels.trunc_mul(a, b, table.I, table.J, table.K, table.W, table.size)


def trunc_mul_compiled(a: Sequence[int], b: Sequence[int], table: ProductTable) -> list[int]:
    """Compiled kernel without fallback; raises OverflowError past int64."""
    if _compiled is None:
        raise RuntimeError("compiled kernels are not available")
    return _compiled.trunc_mul(a, b, table.I, table.J, table.K, table.W, table.size)
