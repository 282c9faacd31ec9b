import pickle
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from kodaira.curve_core import (
    INFINITY,
    CoordinateChange,
    DomainError,
    SingularModelError,
    WeierstrassModel,
    apply_change,
    clearing_denominator,
    compute_invariants,
    find_isomorphism,
    integral_model,
    is_squarefree,
    padic_valuation,
    quadratic_twist,
    require_nonsingular,
    squarefree_part,
    to_rational,
)

J_EX1 = Fraction(-17 * 373**3, 2**17)

small = st.integers(min_value=-50, max_value=50)
rationals = st.builds(Fraction, st.integers(-10**4, 10**4), st.integers(1, 12))
units = st.builds(
    Fraction, st.integers(1, 19).flatmap(lambda n: st.sampled_from([n, -n])), st.integers(1, 6)
)


@st.composite
def models(draw, coeff=small):
    a = [draw(coeff) for _ in range(5)]
    m = WeierstrassModel.from_ainvs(a)
    assume(not m.is_singular())
    return m


@st.composite
def changes(draw):
    return CoordinateChange(draw(units), draw(rationals), draw(rationals), draw(rationals))


# -- valuations and parsing

def test_valuation_examples():
    assert padic_valuation(720, 2) == 4
    assert padic_valuation(0, 7) is INFINITY
    assert padic_valuation(J_EX1, 2) == -17
    assert padic_valuation(Fraction(3, 50), 5) == -2


def test_valuation_rejects_composite():
    with pytest.raises(DomainError):
        padic_valuation(10, 4)


def test_infinity_semantics():
    assert INFINITY > 10**100 and not INFINITY < 3
    assert INFINITY + 5 is INFINITY and 5 + INFINITY is INFINITY
    assert pickle.loads(pickle.dumps(INFINITY)) is INFINITY
    assert min(3, INFINITY) == 3


@pytest.mark.parametrize("bad", [1.5, "0.5", "1e3", True, None, "", "1_000"])
def test_to_rational_rejects_inexact(bad):
    with pytest.raises((TypeError, ValueError)):
        to_rational(bad)


def test_to_rational_accepts_exact():
    assert to_rational("-1/2") == Fraction(-1, 2)
    assert to_rational(" 7 ") == 7


@settings(max_examples=200)
@given(st.fractions().filter(lambda q: q != 0), st.fractions().filter(lambda q: q != 0),
       st.sampled_from([2, 3, 5, 7, 11]))
def test_valuation_is_additive(a, b, p):
    assert padic_valuation(a * b, p) == padic_valuation(a, p) + padic_valuation(b, p)


def test_squarefree_helpers():
    assert squarefree_part(-50) == -2
    assert squarefree_part(72) == 2
    assert squarefree_part(1) == 1
    assert is_squarefree(-30) and not is_squarefree(12) and not is_squarefree(0)
    with pytest.raises(DomainError):
        squarefree_part(0)


# -- invariants

def test_invariants_x3_plus_1():
    inv = compute_invariants(WeierstrassModel.from_ainvs([0, 0, 0, 0, 1]))
    assert (inv.c4, inv.c6, inv.delta, inv.j) == (0, -864, -432, 0)


def test_invariants_example_model(ex1):
    assert ex1.invariants.j == J_EX1


def test_zero_model_is_singular():
    m = WeierstrassModel.from_ainvs([0, 0, 0, 0, 0])
    assert m.invariants.delta == 0 and m.invariants.j is None and m.is_singular()
    with pytest.raises(SingularModelError):
        require_nonsingular(m)


def test_short_form_constructor():
    assert WeierstrassModel.from_ainvs(["-1/2", 3]).ainvs == (0, 0, 0, Fraction(-1, 2), 3)
    with pytest.raises(ValueError):
        WeierstrassModel.from_ainvs([1, 2, 3])


@settings(max_examples=200)
@given(models(coeff=rationals))
def test_standard_identities(m):
    i = m.invariants
    assert 4 * i.b8 == i.b2 * i.b6 - i.b4**2
    assert i.c4**3 - i.c6**2 == 1728 * i.delta


# -- coordinate changes

def test_identity_change_fixes_model(ex1):
    assert apply_change(ex1, CoordinateChange.identity()) == ex1


def test_scaling_removes_fifth_powers():
    m = WeierstrassModel.from_ainvs([0, 0, 0, 0, 5**6])
    out = apply_change(m, CoordinateChange(u=5))
    assert out == WeierstrassModel.from_ainvs([0, 0, 0, 0, 1])
    assert padic_valuation(m.discriminant, 5) == 12 and padic_valuation(out.discriminant, 5) == 0


def test_u_zero_rejected():
    with pytest.raises(DomainError):
        CoordinateChange(u=0)


@settings(max_examples=150, deadline=None)
@given(models(), changes())
def test_change_scaling_laws(m, c):
    n = apply_change(m, c)
    a, b = m.invariants, n.invariants
    assert b.j == a.j
    assert b.delta == a.delta / c.u**12
    assert b.c4 == a.c4 / c.u**4
    assert b.c6 == a.c6 / c.u**6


@settings(max_examples=150, deadline=None)
@given(models(), changes(), changes())
def test_change_composition_and_inverse(m, c1, c2):
    assert apply_change(apply_change(m, c1), c2) == apply_change(m, c1.then(c2))
    assert apply_change(apply_change(m, c1), c1.inverse()) == m


def test_u2_drops_v2_by_12(ex1):
    n = apply_change(ex1, CoordinateChange(u=2))
    assert padic_valuation(n.discriminant, 2) == padic_valuation(ex1.discriminant, 2) - 12


def test_integral_model_clears_denominators():
    m = WeierstrassModel.from_ainvs(["1/2", "0", "1/3", "-1/8", "5/27"])
    assert clearing_denominator(m) == 6
    im, c = integral_model(m)
    assert im.is_integral() and apply_change(m, c) == im


# -- twists and isomorphisms

def test_twist_short_model():
    m = WeierstrassModel.from_ainvs([0, 0, 0, 1, 0])
    t = quadratic_twist(m, 3)
    assert t == WeierstrassModel.from_ainvs([0, 0, 0, 9, 0])
    assert t.invariants.j == 1728


def test_twist_identity_is_isomorphic(ex1):
    t = quadratic_twist(ex1, 1)
    assert t.invariants.j == ex1.invariants.j
    assert find_isomorphism(ex1, t) is not None


def test_twist_example_by_2(ex1):
    assert quadratic_twist(ex1, 2).invariants.j == J_EX1


@pytest.mark.parametrize("d", [0, 4, -12, 2.0])
def test_twist_rejects_non_squarefree(ex1, d):
    with pytest.raises(DomainError):
        quadratic_twist(ex1, d)


@settings(max_examples=100, deadline=None)
@given(models(), st.sampled_from([-1, 2, -3, 5, 6, -7, 10, 11, -15, 21]))
def test_twist_twice_is_isomorphic(m, d):
    t = quadratic_twist(m, d)
    assert t.invariants.j == m.invariants.j
    c = find_isomorphism(m, quadratic_twist(t, d))
    assert c is not None


@settings(max_examples=100, deadline=None)
@given(models(), changes())
def test_find_isomorphism_round_trip(m, c):
    n = apply_change(m, c)
    found = find_isomorphism(m, n)
    assert found is not None and apply_change(m, found) == n


def test_nontrivial_twist_not_isomorphic(ex1):
    assert find_isomorphism(ex1, quadratic_twist(ex1, 5)) is None
