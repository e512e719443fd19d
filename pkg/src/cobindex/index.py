"""Index bounds for hypersurfaces in P^N over Henselian discretely valued fields."""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import comb, factorial, gcd
from typing import Optional

from .chow import InternalConsistencyError


def index_bound(d: int, N: int) -> int:
    """I_{d,N} = gcd of d / delta over the divisors delta of d with delta <= N."""
    if d < 1 or N < 1:
        raise ValueError("d and N must be positive")
    return reduce(gcd, (d // delta for delta in range(1, min(d, N) + 1) if d % delta == 0))


def chi_hypersurface(d: int, n: int) -> int:
    """Euler characteristic of the structure sheaf of a degree-d hypersurface in P^n."""
    if d < 1 or n < 1:
        raise ValueError("d and n must be positive")
    return 1 - (-1) ** n * comb(d - 1, n)


def verify_gcd_lemma(d: int, N: int) -> bool:
    return index_bound(d, N) == reduce(gcd, (chi_hypersurface(d, n) for n in range(1, N + 1)))


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def unit_index_threshold(d: int) -> int:
    """Smallest N with I_{d,N} = 1: the largest prime-power factor of d (1 for d = 1)."""
    return max((p ** a for p, a in factorize(d).items()), default=1)


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def prime_to_part(n: int, N: int) -> int:
    """Largest divisor of n that is prime to N."""
    if n == 0:
        raise ValueError("n must be nonzero")
    n = abs(n)
    g = gcd(n, N)
    while g > 1:
        n //= g
        g = gcd(n, g)
    return n


def rr_divisibility_holds(ind: int, d: int, chi: int) -> bool:
    """Whether the prime-to-(d+1)! part of ``ind`` divides ``chi``."""
    return chi % prime_to_part(ind, factorial(d + 1)) == 0


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class FermatCertificate:
    d: int
    N: int
    e: int
    trace: tuple[tuple[int, ...], ...]
    final_m: int

    def m(self, a) -> int:
        return min(i * self.e + self.d * ai for i, ai in enumerate(a))

    def check(self) -> bool:
        """Re-verify every local step of the trace."""
        if self.trace[0] != (0,) * (self.N + 1):
            return False
        prev_m = None
        for a, b in zip(self.trace, self.trace[1:]):
            diff = [y - x for x, y in zip(a, b)]
            if sorted(diff) != [0] * self.N + [1]:
                return False
            values = [i * self.e + self.d * ai for i, ai in enumerate(a)]
            mval = min(values)
            if values.count(mval) != 1 or values.index(mval) != diff.index(1):
                return False
            if prev_m is not None and mval <= prev_m:
                return False
            prev_m = mval
        last = self.trace[-1]
        return self.m(last) == self.final_m and self.final_m > self.N * self.e and all(x >= 1 for x in last)

    def to_json(self) -> dict:
        return {"d": self.d, "N": self.N, "e": self.e, "trace": [list(a) for a in self.trace], "final_m": self.final_m}


def fermat_certificate(d: int, N: int, e: int, max_steps: Optional[int] = None) -> FermatCertificate:
    """Run the valuation iteration showing x_0^d = sum pi^i x_i^d has no point of degree e.

    Starting from a = 0, the unique minimizer i of ``i*e + d*a_i`` is bumped
    until ``min_i(i*e + d*a_i) > N*e``.
    """
    if min(d, N, e) < 1:
        raise ValueError("d, N and e must be positive")
    bound = index_bound(d, N)
    if e % bound == 0:
        raise CertificateError(f"I_{{{d},{N}}} = {bound} divides e = {e}")
    if max_steps is None:
        max_steps = (N + 1) * (-(-N * e // d) + 1)
    a = [0] * (N + 1)
    trace = [tuple(a)]
    while True:
        values = [i * e + d * ai for i, ai in enumerate(a)]
        m = min(values)
        if m > N * e:
            break
        if values.count(m) != 1:
            raise InternalConsistencyError(f"minimizer not unique at {a} for (d, N, e) = ({d}, {N}, {e})")
        a[values.index(m)] += 1
        trace.append(tuple(a))
        if len(trace) - 1 > max_steps:
            raise InternalConsistencyError(f"iteration exceeded {max_steps} steps")
    return FermatCertificate(d, N, e, tuple(trace), m)
