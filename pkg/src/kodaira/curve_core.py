"""Exact Weierstrass models over Q.

Rationals are :class:`fractions.Fraction` throughout; nothing here ever
touches a float. Models may carry non-integral coefficients, integrality is
forced only where local analysis needs it (see :func:`integral_model`).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .factor import is_prime

RationalLike = Union[int, Fraction, str]


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class SingularModelError(DomainError):
    """The model has zero discriminant."""

    def __init__(self, model: "WeierstrassModel | None" = None):
        msg = "singular model"
        if model is not None:
            msg += f" {model.ainvs_str()}"
        super().__init__(msg)


@functools.total_ordering
class _Infinity:
    """Valuation of zero. Absorbing under +, larger than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("kodaira.INFINITY")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

Valuation = Union[int, _Infinity]


def to_rational(x: RationalLike) -> Fraction:
    """Parse an exact rational; rejects floats so no rounding can sneak in."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(ch in s for ch in ".eE_ "):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"not an exact rational: {x!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_valuation(q: RationalLike, p: int) -> Valuation:
    """v_p(q); INFINITY for q == 0. Raises DomainError unless p is prime."""
    if not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"{p!r} is not a prime")
    q = to_rational(q)
    if q == 0:
        return INFINITY
    return _int_valuation(q.numerator, p) - _int_valuation(q.denominator, p)


def is_squarefree(d: int) -> bool:
    if d == 0:
        return False
    from .factor import factorize

    return all(e == 1 for e in factorize(d).values())


def squarefree_part(d: int) -> int:
    """The squarefree integer in the class of d modulo squares (sign kept)."""
    if d == 0:
        raise DomainError("0 has no squarefree part")
    from .factor import factorize

    out = -1 if d < 0 else 1
    for p, e in factorize(d).items():
        if e % 2:
            out *= p
    return out


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))

    @classmethod
    def from_ainvs(cls, ainvs: Iterable[RationalLike]) -> "WeierstrassModel":
        vals = list(ainvs)
        if len(vals) == 2:
            vals = [0, 0, 0, vals[0], vals[1]]
        if len(vals) != 5:
            raise ValueError(f"expected 5 a-invariants, got {len(vals)}")
        return cls(*(to_rational(v) for v in vals))

    @property
    def ainvs(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def ainvs_str(self) -> list[str]:
        return [format_rational(a) for a in self.ainvs]

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.ainvs)

    @functools.cached_property
    def invariants(self) -> "StandardInvariants":
        return compute_invariants(self)

    @property
    def discriminant(self) -> Fraction:
        return self.invariants.delta

    def is_singular(self) -> bool:
        return self.invariants.delta == 0

    def __repr__(self) -> str:
        return f"WeierstrassModel({', '.join(self.ainvs_str())})"


@dataclass(frozen=True)
class StandardInvariants:
    b2: Fraction
    b4: Fraction
    b6: Fraction
    b8: Fraction
    c4: Fraction
    c6: Fraction
    delta: Fraction
    j: Fraction | None  # undefined for singular models


def compute_invariants(m: WeierstrassModel) -> StandardInvariants:
    a1, a2, a3, a4, a6 = m.ainvs
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6
    delta = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    j = c4 ** 3 / delta if delta != 0 else None
    return StandardInvariants(b2, b4, b6, b8, c4, c6, delta, j)


def require_nonsingular(m: WeierstrassModel) -> StandardInvariants:
    inv = m.invariants
    if inv.delta == 0:
        raise SingularModelError(m)
    return inv


@dataclass(frozen=True)
class CoordinateChange:
    """x = u^2 x' + r,  y = u^3 y' + s u^2 x' + t."""

    u: Fraction = Fraction(1)
    r: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    t: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("u", "r", "s", "t"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        if self.u == 0:
            raise DomainError("coordinate change with u = 0")

    @classmethod
    def identity(cls) -> "CoordinateChange":
        return cls()

    def is_identity(self) -> bool:
        return self == CoordinateChange()

    def then(self, other: "CoordinateChange") -> "CoordinateChange":
        """Change equal to applying self first, then other."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return CoordinateChange(
            u1 * u2,
            r1 + u1 * u1 * r2,
            s1 + u1 * s2,
            t1 + u1 ** 3 * t2 + u1 * u1 * s1 * r2,
        )

    def inverse(self) -> "CoordinateChange":
        u, r, s, t = self.u, self.r, self.s, self.t
        return CoordinateChange(1 / u, -r / u ** 2, -s / u, (r * s - t) / u ** 3)

    def as_strings(self) -> list[str]:
        return [format_rational(x) for x in (self.u, self.r, self.s, self.t)]


def apply_change(m: WeierstrassModel, c: CoordinateChange) -> WeierstrassModel:
    a1, a2, a3, a4, a6 = m.ainvs
    u, r, s, t = c.u, c.r, c.s, c.t
    na1 = (a1 + 2 * s) / u
    na2 = (a2 - s * a1 + 3 * r - s * s) / u ** 2
    na3 = (a3 + r * a1 + 2 * t) / u ** 3
    na4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u ** 4
    na6 = (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) / u ** 6
    return WeierstrassModel(na1, na2, na3, na4, na6)


def clearing_denominator(m: WeierstrassModel) -> int:
    """Smallest N with N^i * a_i integral for every i."""
    from .factor import factorize

    need: dict[int, int] = {}
    for weight, a in zip((1, 2, 3, 4, 6), m.ainvs):
        if a.denominator == 1:
            continue
        for p, e in factorize(a.denominator).items():
            need[p] = max(need.get(p, 0), -(-e // weight))
    return math.prod(p ** k for p, k in need.items())


def integral_model(m: WeierstrassModel) -> tuple[WeierstrassModel, CoordinateChange]:
    """Integral model via the single scaling u = 1/N."""
    n = clearing_denominator(m)
    if n == 1:
        return m, CoordinateChange()
    c = CoordinateChange(u=Fraction(1, n))
    return apply_change(m, c), c


def quadratic_twist(m: WeierstrassModel, d: int) -> WeierstrassModel:
    """Model of the quadratic twist by squarefree d.

    Models with a1 = a3 = 0 twist as y^2 = x^3 + d a2 x^2 + d^2 a4 x + d^3 a6;
    anything else is first moved to y^2 = x^3 + b2 x^2 + 8 b4 x + 16 b6.
    """
    if not isinstance(d, int) or isinstance(d, bool) or not is_squarefree(d):
        raise DomainError(f"twist parameter must be a squarefree nonzero integer, got {d!r}")
    require_nonsingular(m)
    if m.a1 == 0 and m.a3 == 0:
        a2, a4, a6 = m.a2, m.a4, m.a6
    else:
        inv = m.invariants
        a2, a4, a6 = inv.b2, 8 * inv.b4, 16 * inv.b6
    return WeierstrassModel(Fraction(0), d * a2, Fraction(0), d * d * a4, d ** 3 * a6)


def _rational_root(q: Fraction, k: int) -> Fraction | None:
    """Exact k-th root of q in Q, or None."""
    if q < 0:
        if k % 2 == 0:
            return None
        root = _rational_root(-q, k)
        return None if root is None else -root

    def iroot(n: int) -> int | None:
        lo, hi = 0, 1 << (n.bit_length() // k + 1)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if mid ** k <= n:
                lo = mid
            else:
                hi = mid - 1
        return lo if lo ** k == n else None

    num, den = iroot(q.numerator), iroot(q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def find_isomorphism(m1: WeierstrassModel, m2: WeierstrassModel) -> CoordinateChange | None:
    """A change c with apply_change(m1, c) == m2 over Q, or None."""
    i1, i2 = require_nonsingular(m1), require_nonsingular(m2)
    if i1.j != i2.j:
        return None
    candidates: list[Fraction] = []
    if i1.c4 != 0 and i1.c6 != 0:
        u2 = (i1.c6 * i2.c4) / (i1.c4 * i2.c6)
        u = _rational_root(u2, 2)
        if u is not None:
            candidates = [u, -u]
    elif i1.c6 == 0:
        u = _rational_root(i1.c4 / i2.c4, 4)
        if u is not None:
            candidates = [u, -u]
    else:
        u = _rational_root(i1.c6 / i2.c6, 6)
        if u is not None:
            candidates = [u, -u]
    for u in candidates:
        s = (u * m2.a1 - m1.a1) / 2
        r = (u * u * m2.a2 - m1.a2 + s * m1.a1 + s * s) / 3
        t = (u ** 3 * m2.a3 - m1.a3 - r * m1.a1) / 2
        c = CoordinateChange(u, r, s, t)
        if apply_change(m1, c) == m2:
            return c
    return None
