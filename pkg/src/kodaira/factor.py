"""Integer factorization: trial division, Miller-Rabin, Brent's rho.

Only what the discriminant scanner needs. The trial-division bound defaults
to 10**6 and can be overridden with the ``KODAIRA_FACTOR_BOUND`` environment
variable.
"""

from __future__ import annotations

import math
import os
from functools import lru_cache

DEFAULT_TRIAL_BOUND = 10**6

# Cofactors above this size may be reported as unfactored.
MAX_UNFACTORED = 10**18

# First 13 primes: deterministic for n < 3.3e24, strong probable-prime beyond.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

_RHO_MAX_STEPS = 1 << 21
_RHO_SEEDS = 12


class FactorizationError(ArithmeticError):
    """Raised when a composite cofactor could not be split."""

    def __init__(self, cofactor: int):
        super().__init__(f"factorization incomplete: cofactor {cofactor} unfactored")
        self.cofactor = cofactor


def trial_bound() -> int:
    raw = os.environ.get("KODAIRA_FACTOR_BOUND")
    if raw is None:
        return DEFAULT_TRIAL_BOUND
    bound = int(raw)
    if bound < 2:
        raise ValueError(f"KODAIRA_FACTOR_BOUND must be >= 2, got {raw!r}")
    return bound


@lru_cache(maxsize=8)
def small_primes(bound: int) -> tuple[int, ...]:
    """All primes <= bound (sieve of Eratosthenes)."""
    if bound < 2:
        return ()
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, bound + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
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


def _brent_rho(n: int, c: int) -> int | None:
    """One Brent-rho attempt with f(x) = x^2 + c; returns a nontrivial factor or None."""
    y, r, q, g = 2, 1, 1, 1
    m = 128
    x = ys = y
    steps = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        steps += r
        if steps > _RHO_MAX_STEPS:
            return None
    if g == n:
        # backtrack one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _split(n: int) -> int:
    for c in range(1, _RHO_SEEDS + 1):
        g = _brent_rho(n, c)
        if g is not None:
            return g
    raise FactorizationError(n)


def factorize(n: int, bound: int | None = None) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}.

    Raises FactorizationError naming the cofactor when rho fails on a
    composite remainder.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    if bound is None:
        bound = trial_bound()
    out: dict[int, int] = {}
    for p in small_primes(bound):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m <= bound * bound or is_prime(m):
            # no prime <= bound divides m, so m below bound**2 must be prime
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack.extend((r, r))
            continue
        g = _split(m)
        stack.extend((g, m // g))
    return dict(sorted(out.items()))


def prime_divisors(n: int) -> list[int]:
    return list(factorize(n))
