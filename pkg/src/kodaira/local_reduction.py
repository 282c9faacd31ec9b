"""Local reduction data of elliptic curves over Q at a prime.

:func:`tate_local_data` runs Tate's algorithm (valid at every prime, 2 and 3
included) and returns the Kodaira type, conductor exponent and Tamagawa
number together with a minimal model. For p >= 5 the type is also readable
from (v(c4), v(delta)) of a minimal model; see :func:`kodaira_from_valuations`.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction

from .curve_core import (
    INFINITY,
    CoordinateChange,
    DomainError,
    Valuation,
    WeierstrassModel,
    _int_valuation,
    integral_model,
    padic_valuation,
    require_nonsingular,
)
from .factor import is_prime
from .residue import cubic_root_count, quadratic_has_root


class Kind(enum.Enum):
    I0 = "I0"
    In = "In"
    II = "II"
    III = "III"
    IV = "IV"
    I0star = "I0*"
    Instar = "In*"
    IVstar = "IV*"
    IIIstar = "III*"
    IIstar = "II*"


_SYMBOL_RE = re.compile(r"^I(\d+)(\*?)$")


@dataclass(frozen=True, order=False)
class KodairaType:
    """Kodaira symbol; ``n`` is meaningful only for In and In*."""

    kind: Kind
    n: int = 0

    def __post_init__(self):
        kind, n = self.kind, self.n
        if n < 0:
            raise ValueError("negative Kodaira index")
        if kind is Kind.In and n == 0:
            kind = Kind.I0
        elif kind is Kind.Instar and n == 0:
            kind = Kind.I0star
        elif kind in (Kind.I0star, Kind.I0) and n != 0:
            kind = Kind.Instar if kind is Kind.I0star else Kind.In
        elif kind not in (Kind.In, Kind.Instar):
            n = 0
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "n", n)

    @classmethod
    def parse(cls, text: str) -> "KodairaType":
        s = text.strip()
        m = _SYMBOL_RE.match(s)
        if m:
            n = int(m.group(1))
            return cls(Kind.Instar if m.group(2) else Kind.In, n)
        for kind in (Kind.II, Kind.III, Kind.IV, Kind.IVstar, Kind.IIIstar, Kind.IIstar):
            if s == kind.value:
                return cls(kind)
        raise ValueError(f"unknown Kodaira symbol {text!r}")

    def __str__(self) -> str:
        if self.kind is Kind.In:
            return f"I{self.n}"
        if self.kind is Kind.Instar:
            return f"I{self.n}*"
        return self.kind.value

    def __repr__(self) -> str:
        return f"KodairaType({str(self)!r})"

    @property
    def is_semistable(self) -> bool:
        return self.kind in (Kind.I0, Kind.In)

    @property
    def components(self) -> int:
        """Number of irreducible components of the special fibre."""
        return {
            Kind.I0: 1,
            Kind.In: self.n,
            Kind.II: 1,
            Kind.III: 2,
            Kind.IV: 3,
            Kind.I0star: 5,
            Kind.Instar: 5 + self.n,
            Kind.IVstar: 7,
            Kind.IIIstar: 8,
            Kind.IIstar: 9,
        }[self.kind]


I0 = KodairaType(Kind.I0)


def I(n: int) -> KodairaType:  # noqa: E743
    return KodairaType(Kind.In, n)


def Istar(n: int) -> KodairaType:
    return KodairaType(Kind.Instar, n)


II, III, IV = KodairaType(Kind.II), KodairaType(Kind.III), KodairaType(Kind.IV)
IVs, IIIs, IIs = KodairaType(Kind.IVstar), KodairaType(Kind.IIIstar), KodairaType(Kind.IIstar)
I0s = KodairaType(Kind.I0star)


class Reduction(enum.Enum):
    GOOD = "good"
    MULTIPLICATIVE = "multiplicative"
    ADDITIVE = "additive"


class Potential(enum.Enum):
    POTENTIALLY_GOOD = "potentially good"
    POTENTIALLY_MULTIPLICATIVE = "potentially multiplicative"


@dataclass(frozen=True)
class ReductionClass:
    reduction: Reduction
    potential: Potential

    def __post_init__(self):
        if self.reduction is Reduction.GOOD and self.potential is not Potential.POTENTIALLY_GOOD:
            raise ValueError("good reduction is potentially good")
        if (
            self.reduction is Reduction.MULTIPLICATIVE
            and self.potential is not Potential.POTENTIALLY_MULTIPLICATIVE
        ):
            raise ValueError("multiplicative reduction is potentially multiplicative")

    @property
    def semistable(self) -> bool:
        return self.reduction is not Reduction.ADDITIVE


@dataclass(frozen=True)
class LocalReductionData:
    p: int
    minimal_model: WeierstrassModel
    change: CoordinateChange  # input model -> minimal_model
    v_delta_min: int
    v_c4_min: Valuation
    kodaira: KodairaType
    conductor_exponent: int
    tamagawa: int
    reduction: ReductionClass

    @property
    def f(self) -> int:
        return self.conductor_exponent

    @property
    def c(self) -> int:
        return self.tamagawa


class ClassificationError(ValueError):
    """Valuation pair that no minimal model at p >= 5 can produce."""


class TateInconsistencyError(RuntimeError):
    """Internal guard: Tate's algorithm failed to terminate where it must."""


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"{p!r} is not a prime")


def kodaira_from_valuations(v_c4: Valuation, v_delta: int) -> KodairaType:
    """Kodaira type from valuations of a model minimal at some p >= 5."""
    if v_delta < 0:
        raise ClassificationError(f"negative v(delta) = {v_delta}")
    if v_delta == 0:
        return I0
    if v_c4 == 0:
        return I(v_delta)
    if v_c4 >= 4 and v_delta >= 12:
        raise ClassificationError(f"model is not minimal: v(c4)={v_c4}, v(delta)={v_delta}")
    if v_c4 == 2 and v_delta > 6:
        return Istar(v_delta - 6)
    table = {
        2: (1, II),
        3: (1, III),
        4: (2, IV),
        6: (2, I0s),
        8: (3, IVs),
        9: (3, IIIs),
        10: (4, IIs),
    }
    if v_delta in table:
        min_c4, kt = table[v_delta]
        exact = kt in (III, IIIs)
        if (v_c4 == min_c4) if exact else (v_c4 >= min_c4):
            return kt
    raise ClassificationError(
        f"inconsistent valuations v(c4)={v_c4}, v(delta)={v_delta} (non-minimal or corrupt input)"
    )


@dataclass
class _TateResult:
    kodaira: KodairaType
    f: int
    c: int
    v_delta: int
    minimal: tuple[int, int, int, int, int]
    change: CoordinateChange


def _b_invariants(a1, a2, a3, a4, a6):
    b2 = a1 * a1 + 4 * a2
    b4 = a1 * a3 + 2 * a4
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def _disc(a1, a2, a3, a4, a6):
    b2, b4, b6, b8 = _b_invariants(a1, a2, a3, a4, a6)
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def _c4(a1, a2, a3, a4, a6):
    b2, b4, _, _ = _b_invariants(a1, a2, a3, a4, a6)
    return b2 * b2 - 24 * b4


def _rst(a, r, s, t):
    a1, a2, a3, a4, a6 = a
    return (
        a1 + 2 * s,
        a2 - s * a1 + 3 * r - s * s,
        a3 + r * a1 + 2 * t,
        a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
        a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1,
    )


def _tate(ainvs: tuple[int, ...], p: int) -> _TateResult:
    """Tate's algorithm on an integral model at p."""

    def val(x: int):
        return INFINITY if x == 0 else _int_valuation(x, p)

    def div(x: int) -> bool:
        return x % p == 0

    def inv(x: int) -> int:
        return pow(x, -1, p)

    a = tuple(ainvs)
    change = CoordinateChange()
    half = (p + 1) // 2  # inverse of 2 mod odd p

    def move(r=0, s=0, t=0):
        nonlocal a, change
        a = _rst(a, r, s, t)
        change = change.then(CoordinateChange(1, r, s, t))

    while True:
        start_model = a
        start_change = change
        vD = val(_disc(*a))
        if vD == INFINITY:
            raise DomainError("singular model")

        def done(kt, f, c):
            return _TateResult(kt, f, c, vD, start_model, start_change)

        if vD == 0:
            return done(I0, 0, 1)

        a1, a2, a3, a4, a6 = a
        b2, b4, b6, b8 = _b_invariants(*a)
        # move the singular point of the reduction to (0, 0)
        if p == 2:
            if div(b2):
                r = a4 % 2
                t = (r * (1 + a2 + a4) + a6) % 2
            else:
                r = a3 % 2
                t = (r + a4) % 2
        elif p == 3:
            r = (-b6) % 3 if div(b2) else (-b2 * b4) % 3
            t = (a1 * r + a3) % 3
        else:
            c4 = _c4(*a)
            c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
            if div(c4):
                r = (-b2 * inv(12)) % p
            else:
                r = (-(c6 + b2 * c4) * inv(12 * c4)) % p
            t = (-half * (a1 * r + a3)) % p
        move(r=r, t=t)
        a1, a2, a3, a4, a6 = a
        b2, b4, b6, b8 = _b_invariants(*a)

        if not div(b2):
            # multiplicative
            if quadratic_has_root(1, a1, -a2, p):
                c = vD
            else:
                c = 2 if vD % 2 == 0 else 1
            return done(I(vD), 1, c)

        if val(a6) < 2:
            return done(II, vD, 1)
        if val(b8) < 3:
            return done(III, vD - 1, 2)
        if val(b6) < 3:
            c = 3 if quadratic_has_root(1, a3 // p, -a6 // p ** 2, p) else 1
            return done(IV, vD - 2, c)

        # p | a1, a2;  p^2 | a3, a4;  p^3 | a6
        if p == 2:
            s = a2 % 2
            t = 2 * ((a6 // 4) % 2)
        elif p == 3:
            s, t = a1, a3
        else:
            s, t = -a1 * half, -a3 * half
        move(s=s, t=t)
        a1, a2, a3, a4, a6 = a

        b, cc, d = a2 // p, a4 // p ** 2, a6 // p ** 3
        w = 27 * d * d - b * b * cc * cc + 4 * b ** 3 * d - 18 * b * cc * d + 4 * cc ** 3
        x = 3 * cc - b * b
        if not div(w):
            return done(I0s, vD - 4, 1 + cubic_root_count(b, cc, d, p))

        if not div(x):
            # one double root: I_m^*
            if p == 2:
                r = cc
            elif p == 3:
                r = b * cc
            else:
                r = (b * cc - 9 * d) * inv(2 * x)
            move(r=p * (r % p))
            a1, a2, a3, a4, a6 = a
            ix = iy = 3
            mx = my = p * p
            for _ in range(vD + 1):
                a2t = a2 // p
                a3t = a3 // my
                a4t = a4 // (p * mx)
                a6t = a6 // (mx * my)
                if not div(a3t * a3t + 4 * a6t):
                    c = 4 if quadratic_has_root(1, a3t, -a6t, p) else 2
                    break
                t = my * (a6t % 2) if p == 2 else my * ((-a3t * half) % p)
                move(t=t)
                a1, a2, a3, a4, a6 = a
                my *= p
                iy += 1
                a2t = a2 // p
                a3t = a3 // my
                a4t = a4 // (p * mx)
                a6t = a6 // (mx * my)
                if not div(a4t * a4t - 4 * a6t * a2t):
                    c = 4 if quadratic_has_root(a2t, a4t, a6t, p) else 2
                    break
                if p == 2:
                    r = mx * ((a6t * a2t) % 2)
                else:
                    r = mx * ((-a4t * inv(2 * a2t)) % p)
                move(r=r)
                a1, a2, a3, a4, a6 = a
                mx *= p
                ix += 1
            else:
                raise TateInconsistencyError(f"I_m* loop exceeded v(delta)={vD} at p={p}")
            m = ix + iy - 5
            return done(Istar(m), vD - m - 4, c)

        # triple root
        if p == 2:
            r = b
        elif p == 3:
            r = -d
        else:
            r = -b * inv(3)
        move(r=p * (r % p))
        a1, a2, a3, a4, a6 = a
        x3t, x6t = a3 // p ** 2, a6 // p ** 4
        if not div(x3t * x3t + 4 * x6t):
            c = 3 if quadratic_has_root(1, x3t, -x6t, p) else 1
            return done(IVs, vD - 6, c)
        t = p * p * (x6t % 2) if p == 2 else p * p * ((-x3t * half) % p)
        move(t=t)
        a1, a2, a3, a4, a6 = a
        if val(a4) < 4:
            return done(IIIs, vD - 7, 2)
        if val(a6) < 6:
            return done(IIs, vD - 8, 1)
        # not minimal: scale by u = p and start over
        a = (a1 // p, a2 // p ** 2, a3 // p ** 3, a4 // p ** 4, a6 // p ** 6)
        change = change.then(CoordinateChange(u=p))


def _integral_ainvs(m: WeierstrassModel) -> tuple[tuple[int, ...], CoordinateChange]:
    im, c = integral_model(m)
    return tuple(int(x) for x in im.ainvs), c


def _run(m: WeierstrassModel, p: int) -> tuple[_TateResult, WeierstrassModel, CoordinateChange]:
    _check_prime(p)
    require_nonsingular(m)
    ainvs, clearing = _integral_ainvs(m)
    res = _tate(ainvs, p)
    minimal = WeierstrassModel(*(Fraction(x) for x in res.minimal))
    return res, minimal, clearing.then(res.change)


def minimal_model_at(m: WeierstrassModel, p: int) -> tuple[WeierstrassModel, CoordinateChange]:
    """Model minimal at p and the change from m to it."""
    _, minimal, change = _run(m, p)
    return minimal, change


def reduction_class(d: LocalReductionData | KodairaType, j: Fraction | None, p: int | None = None) -> ReductionClass:
    kt = d.kodaira if isinstance(d, LocalReductionData) else d
    if p is None:
        p = d.p
    if kt.kind is Kind.I0:
        red = Reduction.GOOD
    elif kt.kind is Kind.In:
        red = Reduction.MULTIPLICATIVE
    else:
        red = Reduction.ADDITIVE
    if j is None:
        raise DomainError("j-invariant undefined for a singular model")
    pot = Potential.POTENTIALLY_GOOD if padic_valuation(j, p) >= 0 else Potential.POTENTIALLY_MULTIPLICATIVE
    return ReductionClass(red, pot)


def tate_local_data(m: WeierstrassModel, p: int) -> LocalReductionData:
    res, minimal, change = _run(m, p)
    v_c4 = padic_valuation(minimal.invariants.c4, p)
    rc = reduction_class(res.kodaira, m.invariants.j, p)
    return LocalReductionData(
        p=p,
        minimal_model=minimal,
        change=change,
        v_delta_min=res.v_delta,
        v_c4_min=v_c4,
        kodaira=res.kodaira,
        conductor_exponent=res.f,
        tamagawa=res.c,
        reduction=rc,
    )


def candidate_primes(m: WeierstrassModel) -> list[int]:
    """Primes that can be bad: divisors of delta and of the coefficient denominators."""
    from .factor import factorize

    inv = require_nonsingular(m)
    primes: set[int] = set()
    for n in (inv.delta.numerator, inv.delta.denominator, *(a.denominator for a in m.ainvs)):
        if abs(n) > 1:
            primes.update(factorize(n))
    return sorted(primes)


def local_data_all(m: WeierstrassModel) -> dict[int, LocalReductionData]:
    """Local data at every prime dividing the minimal discriminant, ascending."""
    out = {}
    for p in candidate_primes(m):
        d = tate_local_data(m, p)
        if d.v_delta_min > 0:
            out[p] = d
    return out


def bad_primes(m: WeierstrassModel) -> list[int]:
    """Ascending primes dividing the global minimal discriminant."""
    return list(local_data_all(m))
