from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kodaira.curve_core import INFINITY, CoordinateChange, DomainError, SingularModelError, WeierstrassModel, apply_change, padic_valuation
from kodaira.local_reduction import (
    I0,
    II,
    III,
    IIIs,
    IIs,
    IV,
    IVs,
    I0s,
    ClassificationError,
    I,
    Istar,
    Kind,
    KodairaType,
    Potential,
    Reduction,
    ReductionClass,
    bad_primes,
    kodaira_from_valuations,
    local_data_all,
    minimal_model_at,
    reduction_class,
    tate_local_data,
)

ALL_KINDS_SAMPLE = [I0, I(1), I(17), II, III, IV, I0s, Istar(3), IVs, IIIs, IIs]


# -- symbols

@pytest.mark.parametrize("t", ALL_KINDS_SAMPLE)
def test_symbol_round_trip(t):
    assert KodairaType.parse(str(t)) == t


def test_symbol_rendering():
    assert [str(t) for t in (I(17), Istar(3), IIs, IVs, I0)] == ["I17", "I3*", "II*", "IV*", "I0"]


def test_symbol_canonical_forms():
    assert I(0) == I0 and Istar(0) == I0s
    assert KodairaType(Kind.II, 5) == II
    with pytest.raises(ValueError):
        KodairaType.parse("V")
    with pytest.raises(ValueError):
        I(-1)


def test_components():
    assert [t.components for t in (I0, I(4), II, III, IV, I0s, Istar(2), IVs, IIIs, IIs)] == [
        1, 4, 1, 2, 3, 5, 7, 7, 8, 9]


def test_reduction_class_validation():
    with pytest.raises(ValueError):
        ReductionClass(Reduction.GOOD, Potential.POTENTIALLY_MULTIPLICATIVE)
    with pytest.raises(ValueError):
        ReductionClass(Reduction.MULTIPLICATIVE, Potential.POTENTIALLY_GOOD)


# -- valuation shortcut

@pytest.mark.parametrize(
    "v_c4,v_delta,expected",
    [(1, 3, III), (0, 0, I0), (0, 17, I(17)), (1, 2, II), (2, 4, IV), (2, 6, I0s), (3, 6, I0s),
     (2, 9, Istar(3)), (3, 8, IVs), (3, 9, IIIs), (4, 10, IIs), (INFINITY, 2, II), (INFINITY, 10, IIs)],
)
def test_kodaira_from_valuations(v_c4, v_delta, expected):
    assert kodaira_from_valuations(v_c4, v_delta) == expected


@pytest.mark.parametrize("v_c4,v_delta", [(1, 1), (2, 3), (1, 5), (1, 7), (4, 12), (3, 11), (1, 11), (3, 7)])
def test_kodaira_from_valuations_rejects(v_c4, v_delta):
    with pytest.raises(ClassificationError):
        kodaira_from_valuations(v_c4, v_delta)


# -- full algorithm on named curves

def test_example_local_types(ex1, ex2):
    got = {p: tate_local_data(ex1, p) for p in (2, 5, 17)}
    assert {p: str(d.kodaira) for p, d in got.items()} == {2: "I17", 5: "III", 17: "IV*"}
    assert [got[p].f for p in (2, 5, 17)] == [1, 2, 2]
    assert got[5].v_delta_min == 3 and got[2].v_delta_min == 17
    assert str(tate_local_data(ex2, 5).kodaira) == "III*"


def test_example_minimal_at_5_is_unchanged(ex1):
    m, c = minimal_model_at(ex1, 5)
    assert m == ex1 and c.is_identity()


def test_scaled_model_is_reminimalized():
    m = WeierstrassModel.from_ainvs([0, 0, 0, 0, 5**6])
    mm, c = minimal_model_at(m, 5)
    assert padic_valuation(mm.discriminant, 5) == 0
    assert mm == WeierstrassModel.from_ainvs([0, 0, 0, 0, 1]) and apply_change(m, c) == mm
    assert tate_local_data(m, 5).kodaira == I0


def test_good_model_unchanged_at_7():
    m = WeierstrassModel.from_ainvs([0, 0, 0, 0, 1])
    mm, c = minimal_model_at(m, 7)
    assert mm == m and c.is_identity()


def test_reduction_class_examples(ex1):
    j = ex1.invariants.j
    d5, d2 = tate_local_data(ex1, 5), tate_local_data(ex1, 2)
    assert reduction_class(d5, j) == ReductionClass(Reduction.ADDITIVE, Potential.POTENTIALLY_GOOD)
    assert reduction_class(d2, j) == ReductionClass(Reduction.MULTIPLICATIVE, Potential.POTENTIALLY_MULTIPLICATIVE)
    assert tate_local_data(ex1, 7).reduction.reduction is Reduction.GOOD


def test_rational_model_accepted():
    # x -> x/4, y -> y/8 scaling of y^2 = x^3 + 1 gives a non-integral model
    m = WeierstrassModel.from_ainvs([0, 0, 0, 0, Fraction(1, 64)])
    assert tate_local_data(m, 2).kodaira == tate_local_data(WeierstrassModel.from_ainvs([0, 0, 0, 0, 1]), 2).kodaira


def test_errors():
    with pytest.raises(SingularModelError):
        tate_local_data(WeierstrassModel.from_ainvs([0, 0, 0, 0, 0]), 5)
    with pytest.raises(DomainError):
        tate_local_data(WeierstrassModel.from_ainvs([0, 0, 0, 0, 1]), 9)


# -- bad primes

def test_bad_primes_examples(ex1):
    assert bad_primes(ex1) == [2, 5, 17]
    assert bad_primes(WeierstrassModel.from_ainvs([0, 0, 0, 0, 1])) == [2, 3]
    assert bad_primes(WeierstrassModel.from_ainvs([0, 0, 0, 0, 5**6])) == [2, 3]


def test_no_bad_primes_for_unit_discriminant_away_from_scaling():
    # y^2 + xy = x^3 - x^2 - 2x - 1 has conductor 49; scaling by 1/7 keeps 7 the only bad prime
    m = WeierstrassModel.from_ainvs([1, -1, 0, -2, -1])
    assert bad_primes(m) == [7]
    assert bad_primes(apply_change(m, CoordinateChange(u=Fraction(1, 3)))) == [7]


# -- properties

@st.composite
def integral_models(draw):
    a = [draw(st.integers(-3, 3)), draw(st.integers(-30, 30)), draw(st.integers(-3, 3)),
         draw(st.integers(-2000, 2000)), draw(st.integers(-20000, 20000))]
    p = draw(st.sampled_from([2, 3, 5, 7, 11]))
    k = draw(st.integers(0, 3))
    a = [x * p ** (k * w // 2) for x, w in zip(a, (1, 2, 3, 4, 6))]
    m = WeierstrassModel.from_ainvs(a)
    from hypothesis import assume

    assume(not m.is_singular())
    return m, p


@settings(max_examples=150, deadline=None)
@given(integral_models())
def test_local_data_invariants(mp):
    m, p = mp
    d = tate_local_data(m, p)
    mm = d.minimal_model
    assert mm.is_integral()
    assert apply_change(m, d.change) == mm
    assert mm.invariants.j == m.invariants.j
    assert d.v_delta_min == padic_valuation(mm.discriminant, p)
    assert d.v_delta_min <= padic_valuation(m.discriminant, p)
    assert (padic_valuation(m.discriminant, p) - d.v_delta_min) % 12 == 0
    assert d.tamagawa >= 1
    if d.kodaira.kind is Kind.I0:
        assert d.f == 0 and d.tamagawa == 1
    elif d.kodaira.kind is Kind.In:
        assert d.f == 1
    else:
        assert d.f >= 2 and d.tamagawa <= 4
    if p >= 5:
        assert d.f in (0, 1, 2)
        assert d.v_delta_min == d.f + d.kodaira.components - 1
        assert kodaira_from_valuations(d.v_c4_min, d.v_delta_min) == d.kodaira


@settings(max_examples=60, deadline=None)
@given(integral_models())
def test_local_data_all_consistent(mp):
    m, _ = mp
    data = local_data_all(m)
    assert list(data) == sorted(data)
    assert all(d.v_delta_min > 0 for d in data.values())
