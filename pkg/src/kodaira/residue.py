"""Root tests for polynomials over the residue field Z/p."""

from __future__ import annotations

# Primes below this are handled by plain enumeration.
ENUMERATION_LIMIT = 512


def quadratic_has_root(a: int, b: int, c: int, p: int) -> bool:
    """Whether a x^2 + b x + c has a root mod p."""
    a, b, c = a % p, b % p, c % p
    if a == 0:
        return b != 0 or c == 0
    if p == 2:
        return c == 0 or (a + b + c) % 2 == 0
    disc = (b * b - 4 * a * c) % p
    return disc == 0 or pow(disc, (p - 1) // 2, p) == 1


def _polymulmod(f: list[int], g: list[int], mod: list[int], p: int) -> list[int]:
    # coefficient lists, lowest degree first; mod is monic
    prod = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                prod[i + j] = (prod[i + j] + x * y) % p
    n = len(mod) - 1
    for k in range(len(prod) - 1, n - 1, -1):
        coef = prod[k]
        if coef:
            for i in range(n + 1):
                prod[k - n + i] = (prod[k - n + i] - coef * mod[i]) % p
    return prod[:n] or [0]


def _trim(f: list[int]) -> list[int]:
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def _polygcd(f: list[int], g: list[int], p: int) -> list[int]:
    f, g = _trim(list(f)), _trim(list(g))
    while g != [0]:
        inv = pow(g[-1], -1, p)
        r = list(f)
        while len(r) >= len(g) and r != [0]:
            coef = r[-1] * inv % p
            shift = len(r) - len(g)
            for i, y in enumerate(g):
                r[shift + i] = (r[shift + i] - coef * y) % p
            r = _trim(r)
            if len(r) < len(g):
                break
        f, g = g, r
    return f


def cubic_root_count(b: int, c: int, d: int, p: int) -> int:
    """Number of distinct roots of x^3 + b x^2 + c x + d mod p."""
    b, c, d = b % p, c % p, d % p
    if p < ENUMERATION_LIMIT:
        return sum(1 for x in range(p) if (x * x * x + b * x * x + c * x + d) % p == 0)
    f = [d, c, b, 1]
    # x^p mod f by square-and-multiply
    result, base, e = [1], [0, 1], p
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    xp_minus_x = list(result) + [0] * (3 - len(result))
    xp_minus_x[1] = (xp_minus_x[1] - 1) % p
    g = _polygcd(f, xp_minus_x, p)
    return len(_trim(g)) - 1
