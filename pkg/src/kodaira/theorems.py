"""Admissible Kodaira types for curves with a rational isogeny of prime degree.

Each check returns a :class:`TheoremVerdict`. Rule ids:

* ``T1i``, ``T1ii``, ``T1iii``, ``T1`` -- local constraint at p > 3, p != ell,
  by the class of (ell - 1) mod 12 (``T1`` is the unconstrained class 0);
* ``T2`` -- 12 | (ell - 1) v(delta_min) under potentially good reduction;
* ``T3i``, ``T3ii`` -- the analogues at p = 2 and p = 3;
* ``T5`` (ell = 11), ``T6`` (19, 43, 67, 163), ``T7`` (37), ``T8`` (17) --
  the complete lists over Q;
* ``L31``, ``L32`` -- reduction types of quadratic twists at odd p and at 2.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .curve_core import (
    DomainError,
    WeierstrassModel,
    format_rational,
    padic_valuation,
    quadratic_twist,
    require_nonsingular,
)
from .factor import factorize, is_prime
from .isogeny_catalog import CATALOG, lookup_ell_by_j
from .local_reduction import (
    I0,
    II,
    IIs,
    Kind,
    KodairaType,
    LocalReductionData,
    Potential,
    ReductionClass,
    I,
    Istar,
    local_data_all,
    tate_local_data,
)

ALL_PATTERNS = ("I0", "In", "II", "III", "IV", "In*", "IV*", "III*", "II*")

NOTE_SUMMARY_MOD2 = "the set at 2 includes I4*, I8* besides good reduction, II and II*"
NOTE_SUMMARY_17_37 = "away from the listed primes only I0 and I0* occur; III, III* are not admitted here"
NOTE_T7_AT_2 = "ell = 37 has no separate list at 2; the common mod-2 set is used"


class PredicateUnavailable(DomainError):
    """No rule is known for this input."""


@dataclass(frozen=True)
class TheoremVerdict:
    rule_id: str
    p: int
    ell: int | None
    applicable: bool
    allowed: tuple[str, ...]
    observed: KodairaType | None
    compliant: bool | None  # None whenever not applicable
    note: str = ""

    def to_json(self) -> dict:
        return {
            "rule": self.rule_id,
            "p": self.p,
            "ell": self.ell,
            "applicable": self.applicable,
            "allowed": list(self.allowed),
            "observed": None if self.observed is None else str(self.observed),
            "compliant": self.compliant,
            "note": self.note,
        }


def pattern_matches(pattern: str, t: KodairaType) -> bool:
    """``In`` means n >= 1, ``In*`` means n >= 0; anything else is a literal symbol."""
    if pattern == "In":
        return t.kind is Kind.In
    if pattern == "In*":
        return t.kind in (Kind.I0star, Kind.Instar)
    return KodairaType.parse(pattern) == t


def _verdict(rule, p, ell, allowed, t, note="") -> TheoremVerdict:
    ok = any(pattern_matches(pat, t) for pat in allowed)
    return TheoremVerdict(rule, p, ell, True, tuple(allowed), t, ok, note)


def _skip(rule, p, ell, t, note) -> TheoremVerdict:
    return TheoremVerdict(rule, p, ell, False, (), t, None, note)


def check_isogeny_degree(ell: int) -> int:
    if not isinstance(ell, int) or isinstance(ell, bool) or not is_prime(ell) or ell <= 3:
        raise DomainError(f"isogeny degree must be a prime > 3, got {ell!r}")
    return ell


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"{p!r} is not a prime")


def _t1_rule(ell: int) -> tuple[str, tuple[str, ...], str]:
    cls = (ell - 1) % 12
    if cls in (2, 10):
        return "T1i", ("I0", "In", "In*"), ""
    if cls in (4, 8):
        return "T1ii", ("I0", "In", "III", "III*", "In*"), ""
    if cls == 6:
        return "T1iii", tuple(x for x in ALL_PATTERNS if x not in ("III", "III*")), ""
    return "T1", ALL_PATTERNS, "no constraint for (ell-1) = 0 mod 12"


def theorem1_allowed(ell: int, p: int, t: KodairaType) -> TheoremVerdict:
    check_isogeny_degree(ell)
    _check_prime(p)
    rule, allowed, note = _t1_rule(ell)
    if p <= 3:
        return _skip(rule, p, ell, t, "not applicable: residue characteristic p <= 3")
    if p == ell:
        return _skip(rule, p, ell, t, "not applicable at p = ell")
    return _verdict(rule, p, ell, allowed, t, note)


def theorem2_check(ell: int, d: LocalReductionData, rc: ReductionClass | None = None) -> TheoremVerdict:
    check_isogeny_degree(ell)
    rc = rc or d.reduction
    p, t, v = d.p, d.kodaira, d.v_delta_min
    if p <= 3:
        return _skip("T2", p, ell, t, "not applicable: residue characteristic p <= 3")
    if p == ell:
        return _skip("T2", p, ell, t, "not applicable at p = ell")
    if rc.potential is not Potential.POTENTIALLY_GOOD:
        return _skip("T2", p, ell, t, "not applicable: potentially multiplicative reduction")
    prod = (ell - 1) * v
    ok = prod % 12 == 0
    note = f"(ell-1)*v(delta_min) = {ell - 1}*{v} = {prod}, {prod % 12} mod 12"
    return TheoremVerdict("T2", p, ell, True, (), t, ok, note)


def theorem3_allowed(ell: int, p: int, t: KodairaType) -> TheoremVerdict:
    check_isogeny_degree(ell)
    cls = (ell - 1) % 12
    if p == 2:
        if cls in (2, 4, 8, 10):
            return _verdict("T3i", p, ell, tuple(x for x in ALL_PATTERNS if x not in ("IV", "IV*")), t)
        return _skip("T3i", p, ell, t, f"not applicable: (ell-1) = {cls} mod 12")
    if p == 3:
        if cls in (2, 10):
            return _verdict("T3ii", p, ell, ("I0", "In", "IV", "II*", "In*"), t)
        return _skip("T3ii", p, ell, t, f"not applicable: (ell-1) = {cls} mod 12")
    raise DomainError(f"this check is only defined at p = 2 or 3, got p = {p}")


_MOD2_GOOD = ("I0", "I4*", "I8*", "II", "II*")


def _rational_cell(ell: int, p: int) -> tuple[str, tuple[str, ...], str]:
    if ell in (19, 43, 67, 163):
        if p == 2:
            return "T6", _MOD2_GOOD, NOTE_SUMMARY_MOD2
        if p == ell:
            return "T6", ("III", "III*"), ""
        return "T6", ("I0", "I0*"), ""
    if ell == 11:
        if p == 2:
            return "T5", _MOD2_GOOD, NOTE_SUMMARY_MOD2
        if p == 11:
            return "T5", ("II", "II*", "III", "III*", "IV", "IV*"), ""
        return "T5", ("I0", "I0*"), ""
    if ell == 17:
        if p == 2:
            return "T8", ("I1", "I17", "I5*", "I9*", "I21*", "I25*"), ""
        if p == 5:
            return "T8", ("III", "III*"), ""
        if p == 17:
            return "T8", ("II", "II*", "IV", "IV*"), ""
        return "T8", ("I0", "I0*"), NOTE_SUMMARY_17_37
    if ell == 37:
        if p == 2:
            return "T7", _MOD2_GOOD, f"{NOTE_SUMMARY_MOD2}; {NOTE_T7_AT_2}"
        if p == 5:
            return "T7", ("III", "III*"), ""
        if p == 7:
            return "T7", ("II", "IV*"), ""
        return "T7", ("I0", "I0*"), NOTE_SUMMARY_17_37
    raise DomainError(f"no rational list for ell={ell}; supported: {', '.join(map(str, sorted(CATALOG)))}")


def rational_allowed(ell: int, p: int, t: KodairaType) -> TheoremVerdict:
    _check_prime(p)
    rule, allowed, note = _rational_cell(ell, p)
    return _verdict(rule, p, ell, allowed, t, note)


_TWIST_PAIRS = {
    Kind.I0: Kind.I0star,
    Kind.In: Kind.Instar,
    Kind.II: Kind.IVstar,
    Kind.III: Kind.IIIstar,
    Kind.IV: Kind.IIstar,
}
_TWIST_PAIRS.update({v: k for k, v in list(_TWIST_PAIRS.items())})


def twist_type_map(t: KodairaType) -> KodairaType:
    """Type after twisting by d at an odd prime dividing d."""
    return KodairaType(_TWIST_PAIRS[t.kind], t.n)


def twist_mod2_candidates(original: KodairaType) -> tuple[KodairaType, ...]:
    if original.kind is Kind.I0:
        return (I0, Istar(4), Istar(8), II, IIs)
    if original.kind is Kind.In:
        n = original.n
        return (I(n), Istar(n + 4), Istar(n + 8))
    raise PredicateUnavailable(f"no rule at 2 for twists of a curve with type {original}")


def twist_mod2_allowed(original: KodairaType, candidate: KodairaType) -> bool:
    return candidate in twist_mod2_candidates(original)


def model_from_j(j) -> WeierstrassModel:
    """y^2 + xy = x^3 - 36/(j - 1728) x - 1/(j - 1728)."""
    j = Fraction(j)
    if j in (0, 1728):
        raise DomainError(f"j = {j} is excluded (extra automorphisms)")
    k = j - 1728
    return WeierstrassModel(Fraction(1), Fraction(0), Fraction(0), -36 / k, -1 / k)


def _j_support(j: Fraction) -> set[int]:
    primes = {2, 3}
    for n in (j.numerator, j.denominator, (j - 1728).numerator):
        if n not in (0, 1, -1):
            primes.update(factorize(n))
    return primes


def conductor(m: WeierstrassModel) -> int:
    return math.prod(d.p ** d.conductor_exponent for d in local_data_all(m).values())


@functools.lru_cache(maxsize=64)
def base_twist(j: Fraction) -> tuple[WeierstrassModel, int]:
    """A twist of smallest conductor in the twist class of j, and the d producing it from model_from_j(j).

    Odd primes are decided locally (conductor exponent, then v(delta)); the
    2-adic part is chosen among d, -d, 2d, -2d.
    """
    e0 = model_from_j(j)
    odd = 1
    for p in sorted(_j_support(j) - {2}):
        here = tate_local_data(e0, p)
        there = tate_local_data(quadratic_twist(e0, p), p)
        if (there.f, there.v_delta_min) < (here.f, here.v_delta_min):
            odd *= p
    best = None
    for d in (odd, -odd, 2 * odd, -2 * odd):
        e = quadratic_twist(e0, d)
        at2 = tate_local_data(e, 2)
        key = (conductor(e), at2.v_delta_min, abs(d), d < 0)
        if best is None or key < best[0]:
            best = (key, e, d)
    return best[1], best[2]


def twist_parameter(m: WeierstrassModel, base: WeierstrassModel, primes) -> int:
    """Squarefree d with m isomorphic to the twist of base by d.

    ``primes`` must contain every prime where m or base has bad reduction.
    """
    im, ib = require_nonsingular(m), require_nonsingular(base)
    if im.j != ib.j or im.j in (0, 1728):
        raise DomainError("twist parameter needs equal j-invariants not in {0, 1728}")
    ratio = (im.c6 * ib.c4) / (im.c4 * ib.c6)
    d = -1 if ratio < 0 else 1
    for p in sorted(primes):
        if padic_valuation(ratio, p) % 2:
            d *= p
    rest = ratio / d
    if not (_is_square(rest.numerator) and _is_square(rest.denominator)):
        raise DomainError("curves are not quadratic twists over the given primes")
    return d


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


@dataclass
class PrimeReport:
    p: int
    local: LocalReductionData
    verdicts: list[TheoremVerdict] = field(default_factory=list)


@dataclass
class ComplianceReport:
    curve_id: str
    model: WeierstrassModel
    j: Fraction
    detected_ells: tuple[int, ...]
    asserted_ell: int | None
    conductor: int
    per_prime: list[PrimeReport]
    twist_d: int | None = None
    notes: list[str] = field(default_factory=list)

    def verdicts(self):
        for pr in self.per_prime:
            yield from pr.verdicts

    def violations(self) -> list[TheoremVerdict]:
        return [v for v in self.verdicts() if v.applicable and not v.compliant]

    @property
    def has_applicable(self) -> bool:
        return any(v.applicable for v in self.verdicts())


def _twist_verdicts(p: int, d: LocalReductionData, base_local: LocalReductionData, twist_d: int):
    t0, t = base_local.kodaira, d.kodaira
    if p != 2:
        expect = twist_type_map(t0) if twist_d % p == 0 else t0
        how = "p | d" if twist_d % p == 0 else "p does not divide d"
        return _verdict("L31", p, None, (str(expect),), t, f"twist of base type {t0} by d={twist_d}, {how}")
    try:
        cands = twist_mod2_candidates(t0)
    except PredicateUnavailable as exc:
        return _skip("L32", p, None, t, f"not applicable: {exc}")
    return _verdict("L32", p, None, tuple(map(str, cands)), t, f"twist of base type {t0} by d={twist_d}")


def verdict(m: WeierstrassModel, asserted_ell: int | None = None, curve_id: str = "") -> ComplianceReport:
    inv = require_nonsingular(m)
    j = inv.j
    if asserted_ell is not None:
        check_isogeny_degree(asserted_ell)
    catalogued = lookup_ell_by_j(j)
    ells = set(catalogued)
    if asserted_ell is not None:
        ells.add(asserted_ell)
    ells_sorted = tuple(sorted(ells))
    local = local_data_all(m)
    primes = sorted(set(local) | {2} | set(ells))
    for p in primes:
        if p not in local:
            local[p] = tate_local_data(m, p)
    notes: list[str] = []
    if asserted_ell in CATALOG and asserted_ell not in catalogued:
        notes.append(f"asserted ell={asserted_ell} but j is not in its catalogued list")

    twist_d = base_locals = None
    if catalogued:
        base, _ = base_twist(j)
        base_bad = set(local_data_all(base))
        twist_d = twist_parameter(m, base, set(local) | base_bad)
        base_locals = {p: tate_local_data(base, p) for p in primes}

    per_prime = []
    excluded = j in (0, 1728)
    if excluded:
        notes.append("j in {0, 1728}: no rational isogeny of prime degree > 3 exists; checks not applicable")
    for p in primes:
        d = local[p]
        t = d.kodaira
        out: list[TheoremVerdict] = []
        for ell in ells_sorted:
            if excluded:
                rule = _t1_rule(ell)[0] if p > 3 else ("T3i" if p == 2 else "T3ii")
                out.append(_skip(rule, p, ell, t, "not applicable: j in {0, 1728}"))
                continue
            if p > 3:
                out.append(theorem1_allowed(ell, p, t))
                out.append(theorem2_check(ell, d))
            else:
                out.append(theorem3_allowed(ell, p, t))
            if ell in catalogued:
                out.append(rational_allowed(ell, p, t))
            elif ell in CATALOG:
                rule = _rational_cell(ell, p)[0]
                out.append(_skip(rule, p, ell, t, "not applicable: j not in the catalogued list for ell"))
        if base_locals is not None:
            out.append(_twist_verdicts(p, d, base_locals[p], twist_d))
        per_prime.append(PrimeReport(p, d, out))

    return ComplianceReport(
        curve_id=curve_id,
        model=m,
        j=j,
        detected_ells=ells_sorted,
        asserted_ell=asserted_ell,
        conductor=math.prod(d.p ** d.conductor_exponent for d in local.values()),
        per_prime=per_prime,
        twist_d=twist_d,
        notes=notes,
    )


__all__ = [
    "ComplianceReport",
    "PredicateUnavailable",
    "PrimeReport",
    "TheoremVerdict",
    "base_twist",
    "check_isogeny_degree",
    "conductor",
    "format_rational",
    "model_from_j",
    "pattern_matches",
    "rational_allowed",
    "theorem1_allowed",
    "theorem2_check",
    "theorem3_allowed",
    "twist_mod2_allowed",
    "twist_mod2_candidates",
    "twist_parameter",
    "twist_type_map",
    "verdict",
]
