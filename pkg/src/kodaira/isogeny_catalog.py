"""Rational j-invariants carrying a Q-rational isogeny of prime degree >= 11 (13 excluded).

Degrees 2, 3, 5, 7 and 13 have infinitely many such j and are not listed.
Values are assembled from their factorizations to keep them transcription-safe.
"""

from __future__ import annotations

from fractions import Fraction

from .curve_core import DomainError, RationalLike, format_rational, to_rational


def _j(sign: int, num: dict[int, int], den: dict[int, int] | None = None) -> Fraction:
    n = 1
    for p, e in num.items():
        n *= p**e
    d = 1
    for p, e in (den or {}).items():
        d *= p**e
    return Fraction(sign * n, d)


CATALOG: dict[int, tuple[Fraction, ...]] = {
    11: (
        _j(-1, {11: 1, 131: 3}),
        _j(-1, {2: 15}),
        _j(-1, {11: 2}),
    ),
    17: (
        _j(-1, {17: 2, 101: 3}, {2: 1}),
        _j(-1, {17: 1, 373: 3}, {2: 17}),
    ),
    19: (_j(-1, {2: 15, 3: 3}),),
    37: (
        _j(-1, {7: 1, 11: 3}),
        _j(-1, {7: 1, 137: 3, 2083: 3}),
    ),
    43: (_j(-1, {2: 18, 3: 3, 5: 3}),),
    67: (_j(-1, {2: 15, 3: 3, 5: 3, 11: 3}),),
    163: (_j(-1, {2: 18, 3: 3, 5: 3, 23: 3, 29: 3}),),
}

SUPPORTED_ELLS = tuple(sorted(CATALOG))

_BY_J: dict[Fraction, frozenset[int]] = {}
for _ell, _js in CATALOG.items():
    for _jv in _js:
        _BY_J[_jv] = _BY_J.get(_jv, frozenset()) | {_ell}


def lookup_ell_by_j(j: RationalLike | None) -> frozenset[int]:
    """Catalogued degrees for j. Empty means no isogeny of degree 11, 17, 19, 37, 43, 67 or 163."""
    if j is None:
        return frozenset()
    return _BY_J.get(to_rational(j), frozenset())


def catalog_j_for(ell: int) -> list[Fraction]:
    try:
        return list(CATALOG[ell])
    except KeyError:
        raise DomainError(
            f"no finite j-list for ell={ell}; supported: {', '.join(map(str, SUPPORTED_ELLS))}"
        ) from None


def catalog_as_json() -> dict[str, list[str]]:
    return {str(ell): [format_rational(j) for j in js] for ell, js in CATALOG.items()}
