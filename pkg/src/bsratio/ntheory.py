"""Prime generation, primality, Moebius function, and discrete-log tables.

Everything here is a pure function of its arguments; no global mutable
state, safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_SEGMENT = 1 << 20

# Deterministic Miller-Rabin witnesses, valid for all n < 3.3e24 (covers 2^63).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit, ascending, as an int64 array.

    Segmented odd-only sieve: memory stays O(sqrt(limit) + segment).
    """
    limit = int(limit)
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    if limit == 2:
        return np.array([2], dtype=np.int64)

    root = math.isqrt(limit)
    base = np.ones(root + 1, dtype=bool)
    base[:2] = False
    for p in range(2, math.isqrt(root) + 1):
        if base[p]:
            base[p * p :: p] = False
    base_primes = np.nonzero(base)[0]
    odd_base = base_primes[base_primes > 2]

    out = [np.array([2], dtype=np.int64)]
    lo = 3
    while lo <= limit:
        hi = min(lo + 2 * _SEGMENT - 1, limit)
        # odd numbers in [lo, hi]
        start = lo if lo % 2 == 1 else lo + 1
        seg = np.ones((hi - start) // 2 + 1, dtype=bool)
        for p in odd_base:
            p = int(p)
            if p * p > hi:
                break
            first = max(p * p, ((start + p - 1) // p) * p)
            if first % 2 == 0:
                first += p
            if first > hi:
                continue
            seg[(first - start) // 2 :: p] = False
        out.append(start + 2 * np.nonzero(seg)[0].astype(np.int64))
        lo = hi + 1
    return np.concatenate(out)


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 2^63."""
    n = int(n)
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def moebius(k: int) -> int:
    """mu(k) for k >= 1."""
    k = int(k)
    if k < 1:
        raise ValueError("moebius requires k >= 1")
    if k == 1:
        return 1
    res = 1
    d = 2
    while d * d <= k:
        if k % d == 0:
            k //= d
            if k % d == 0:
                return 0
            res = -res
        d += 1
    if k > 1:
        res = -res
    return res


def _prime_factors(n: int) -> list[int]:
    """Distinct prime factors by trial division."""
    fac = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            fac.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        fac.append(n)
    return fac


def find_primitive_root(q: int) -> int:
    """Least primitive root modulo an odd prime q."""
    q = int(q)
    if q < 3 or q % 2 == 0 or not is_prime(q):
        raise ValueError(f"{q} is not an odd prime")
    factors = _prime_factors(q - 1)
    g = 2
    while True:
        if all(pow(g, (q - 1) // r, q) != 1 for r in factors):
            return g
        g += 1


@dataclass(frozen=True)
class PrimeField:
    """An odd prime q with its least primitive root and discrete-log tables.

    pow_table[k] = g^k mod q for k = 0..q-2; dlog[a] = k with g^k = a mod q
    for a = 1..q-1 (dlog[0] is the sentinel -1).  Character j evaluates as
    chi_j(g^k) = e(jk/(q-1)).
    """

    q: int
    g: int
    pow_table: np.ndarray
    dlog: np.ndarray

    @property
    def n(self) -> int:
        """Order of the character group, q - 1."""
        return self.q - 1


def build_field(q: int) -> PrimeField:
    """Construct the PrimeField for an odd prime q.

    The power table is built blockwise (g^(iB+j) = (g^B)^i * g^j mod q) so
    the work is O(q) numpy operations rather than a length-q Python loop.
    """
    q = int(q)
    g = find_primitive_root(q)
    n = q - 1

    block = min(1024, n)
    row = np.empty(block, dtype=np.int64)
    x = 1
    for j in range(block):
        row[j] = x
        x = x * g % q
    nblocks = (n + block - 1) // block
    col = np.empty(nblocks, dtype=np.int64)
    gb = pow(g, block, q)
    y = 1
    for i in range(nblocks):
        col[i] = y
        y = y * gb % q
    pow_table = ((col[:, None] * row[None, :]) % q).reshape(-1)[:n]

    dlog = np.full(q, -1, dtype=np.int64)
    dlog[pow_table] = np.arange(n, dtype=np.int64)
    return PrimeField(q=q, g=g, pow_table=pow_table, dlog=dlog)


def prime_reciprocal_sum(x: float) -> float:
    """Sum of 1/p over primes p <= x, compensated (exact rounding via fsum)."""
    if x < 2:
        raise ValueError("prime_reciprocal_sum requires x >= 2")
    primes = sieve_primes(int(math.floor(x)))
    return math.fsum(1.0 / primes.astype(np.float64))
