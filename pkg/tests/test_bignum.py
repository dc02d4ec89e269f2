"""Value-model tests: exact/tower/saturated arithmetic and its soundness."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kodairabound.bignum import (
    DEFAULT_BIT_BUDGET,
    BudgetError,
    GRANULE_DEN,
    MAX_TOWER_LEVEL,
    BoundValue,
    DomainError,
    as_bound,
    bit_budget,
    bv_add,
    bv_cmp,
    bv_factorial,
    bv_log2_upper,
    bv_max,
    bv_mul,
    bv_pow,
    describe,
    format_exact,
    format_fraction_up,
    format_log2,
    int_log2_lower,
    int_log2_upper,
    iterated_log2_at_depth,
    iterated_log2_view,
    local_bit_budget,
    set_bit_budget,
)


def exact_reference(n: int) -> BoundValue:
    # an exact BoundValue regardless of the ambient budget, for comparisons
    with local_bit_budget(max(n.bit_length() + 8, 64)):
        return BoundValue.exact(n)


class TestConstruction:
    def test_exact_basic(self):
        v = BoundValue.exact(12345)
        assert v.is_exact and v.exact_int() == 12345
        assert str(v) == "12345"
        with pytest.raises(DomainError):
            BoundValue.exact(-1)

    def test_exact_escalates_over_budget(self):
        with local_bit_budget(16):
            v = BoundValue.exact(2**100)
            assert v.is_tower and v.level == 1
            assert v.magnitude == Fraction(100)  # power of two: log2 exact

    def test_tower_collapses_to_exact_below_budget(self):
        v = BoundValue.tower(1, 20)
        assert v.is_exact and v.value == 2**20
        w = BoundValue.tower(2, 10)  # 2^(2^10) = 2^1024 fits the default budget
        assert w.is_exact and w.value == 2**1024

    def test_tower_level_overflow_saturates(self):
        v = BoundValue.tower(MAX_TOWER_LEVEL + 1, Fraction(7))
        assert v.is_beyond
        assert BoundValue.saturated().is_beyond

    def test_tower_magnitude_snaps_to_granule(self):
        v = BoundValue.tower(1, Fraction(10**7, 3))
        assert v.is_tower
        assert GRANULE_DEN % v.magnitude.denominator == 0
        assert v.magnitude >= Fraction(10**7, 3)

    def test_as_bound_rejects_non_ints(self):
        for bad in (True, 1.5, "3", None):
            with pytest.raises(DomainError):
                as_bound(bad)
        assert as_bound(7).exact_int() == 7


class TestBudget:
    def test_local_budget_restores(self):
        outer = bit_budget()
        with local_bit_budget(64):
            assert bit_budget() == 64
        assert bit_budget() == outer

    def test_set_budget_validates(self):
        with pytest.raises(BudgetError):
            set_bit_budget(4)

    def test_default_budget(self):
        assert bit_budget() == DEFAULT_BIT_BUDGET == 1 << 20


class TestArithmetic:
    def test_mul_exact_within_budget(self):
        assert bv_mul(6, 7).exact_int() == 42
        assert bv_mul(0, BoundValue.saturated()).exact_int() == 0

    def test_mul_escalation_boundary(self):
        with local_bit_budget(1 << 16):
            a = BoundValue.exact(2**69169)
            assert a.is_tower and a.magnitude == Fraction(69169)
            b = bv_mul(a, 2)
            assert b.is_tower and b.magnitude == Fraction(69170)
        c = BoundValue.exact(2**69170)  # default budget: exact
        assert c.is_exact
        assert bv_cmp(b, c) == 0  # representations from different budgets agree

    def test_add_exact_always_exact_then_normalized(self):
        assert bv_add(2**19, 2**19).exact_int() == 2**20
        with local_bit_budget(16):
            s = bv_add(2**100, 2**100)
            assert s.is_tower and s.magnitude == Fraction(101)

    def test_add_tower_plus_one_within_granule(self):
        with local_bit_budget(64):
            t = BoundValue.exact(2**1000)
            s = bv_add(t, 1)
            assert bv_cmp(s, t) > 0
            assert bv_log2_upper(s) - bv_log2_upper(t) <= Fraction(1, GRANULE_DEN)

    def test_pow_levels(self):
        assert bv_pow(2, 10).exact_int() == 1024
        with local_bit_budget(1024):
            e = BoundValue.exact(2**263)
            t1 = bv_pow(2, e)
            assert t1.is_tower and t1.level == 1 and t1.magnitude == Fraction(2**263)
            t2 = bv_pow(2, t1)
            assert t2.is_tower and t2.level == 2 and t2.magnitude == Fraction(2**263)
        with local_bit_budget(128):
            t1b = bv_pow(2, BoundValue.tower(1, 263))
            assert t1b.is_tower and t1b.level == 2 and t1b.magnitude == Fraction(263)
        assert bv_cmp(t1, t1b) == 0  # 2^(2^263) in two representations

    def test_pow_edge_cases(self):
        assert bv_pow(5, 0).exact_int() == 1
        assert bv_pow(0, 5).exact_int() == 0
        assert bv_pow(1, BoundValue.saturated()).exact_int() == 1
        assert bv_pow(BoundValue.saturated(), 2).is_beyond

    def test_saturation_propagates(self):
        big = BoundValue.tower(4, Fraction(10**18))
        assert bv_pow(2, big).is_beyond
        assert bv_mul(BoundValue.saturated(), 5).is_beyond
        assert bv_add(BoundValue.saturated(), 5).is_beyond

    def test_factorial(self):
        assert bv_factorial(0).exact_int() == 1
        assert bv_factorial(5).exact_int() == 120
        assert bv_factorial(100).exact_int() == math.factorial(100)
        with local_bit_budget(32):
            t = bv_factorial(100)
            assert t.is_tower
            assert bv_cmp(t, exact_reference(math.factorial(100))) >= 0
        with local_bit_budget(64):
            deep = bv_factorial(BoundValue.tower(1, 100))
            assert deep.is_tower and deep.level == 2

    def test_factorial_large_exact_uses_nlogn_bound(self):
        n = (1 << 20) + 1  # just past the exact-evaluation limit
        v = bv_factorial(n)
        assert v.is_tower
        assert v.magnitude >= Fraction(n) * int_log2_lower(n)

    def test_operator_sugar(self):
        a = BoundValue.exact(6)
        assert (a * 7).exact_int() == 42
        assert (a + 1).exact_int() == 7
        assert (a**2).exact_int() == 36
        assert a < BoundValue.exact(7)
        assert BoundValue.saturated() > a
        assert bv_max(a, 9).exact_int() == 9


class TestComparison:
    def test_trichotomy_exact(self):
        assert bv_cmp(3, 5) == -1
        assert bv_cmp(5, 5) == 0
        assert bv_cmp(7, 5) == 1

    def test_exact_vs_tower(self):
        equal = exact_reference(2**100)
        above = exact_reference(2**100 + 1)
        below = exact_reference(2**100 - 1)
        with local_bit_budget(64):
            t = BoundValue.tower(1, Fraction(100))
            assert t.is_tower
            assert bv_cmp(t, equal) == 0
            assert bv_cmp(t, above) == -1
            assert bv_cmp(t, below) == 1

    def test_beyond_above_everything(self):
        top = BoundValue.saturated()
        assert bv_cmp(top, BoundValue.tower(4, Fraction(10**9))) == 1
        assert bv_cmp(top, top) == 0

    def test_cross_level_equalities(self):
        with local_bit_budget(8):
            two_level = BoundValue.tower(2, 300)
            one_level = BoundValue.tower(1, Fraction(2**300))
            assert two_level.level == 2 and one_level.level == 1
            assert bv_cmp(two_level, one_level) == 0
            assert bv_cmp(two_level, BoundValue.tower(1, Fraction(2**300 + 1))) == -1
            assert bv_cmp(two_level, BoundValue.tower(1, Fraction(2**300 - 1))) == 1
            assert bv_cmp(BoundValue.tower(3, 300), BoundValue.tower(2, Fraction(2**300))) == 0

    def test_cmp_is_budget_independent(self):
        with local_bit_budget(16):
            a = bv_mul(2**40, 2**40)
        b = exact_reference(2**80)
        assert bv_cmp(a, b) == 0
        with local_bit_budget(16):
            assert bv_cmp(a, b) == 0


class TestLogsAndFormat:
    def test_log2_upper(self):
        assert bv_log2_upper(BoundValue.exact(2**50)) == Fraction(50)
        up = bv_log2_upper(BoundValue.exact(1000))
        assert up >= Fraction(math.log2(1000)) and up - math.log2(1000) <= Fraction(1, GRANULE_DEN)
        with pytest.raises(DomainError):
            bv_log2_upper(BoundValue.exact(0))
        with pytest.raises(DomainError):
            bv_log2_upper(BoundValue.saturated())

    def test_int_log2_bounds_bracket(self):
        for n in (3, 100, 2**64 + 12345, 10**30):
            lo, hi = int_log2_lower(n), int_log2_upper(n)
            assert lo <= Fraction(math.log2(n)) + Fraction(1, GRANULE_DEN)
            assert hi >= Fraction(math.log2(n)) - Fraction(1, GRANULE_DEN)
            assert lo <= hi

    def test_iterated_view(self):
        assert iterated_log2_view(BoundValue.exact(5)) == (0, Fraction(5))
        d, x = iterated_log2_view(BoundValue.tower(1, Fraction(10**17)))
        assert d == 1 and x == Fraction(10**17)
        assert iterated_log2_at_depth(BoundValue.exact(2**16), 1) == Fraction(16)

    def test_format_fraction_up(self):
        assert format_fraction_up(Fraction(1, 3)) == "0.333334"
        assert format_fraction_up(Fraction(18)) == "18.000000"
        assert format_fraction_up(Fraction(-1, 3)) == "-0.333333"

    def test_format_log2(self):
        assert format_log2(BoundValue.exact(2**18)) == "18.000000"
        assert format_log2(BoundValue.exact(0)) == "-inf"
        assert format_log2(BoundValue.tower(2, Fraction(2**21))) == "2^^1(2097152.000000)"
        assert "beyond" in format_log2(BoundValue.saturated())

    def test_serialization(self):
        assert BoundValue.exact(13).to_json() == {"kind": "exact", "decimal": "13"}
        t = BoundValue.tower(1, Fraction(2**22 + 1, 2)).to_json()
        assert t == {"kind": "tower", "level": 1, "log2_magnitude": "4194305/2"}
        assert BoundValue.saturated().to_json() == {"kind": "beyond", "min_level": 5}
        assert format_exact(BoundValue.exact(99)) == "99"

    def test_describe(self):
        d = describe(BoundValue.exact(2**18))
        assert d["value"]["kind"] == "exact" and d["log2"] == "18.000000"
        d = describe(BoundValue.tower(2, Fraction(10**20)))
        assert d["iterated_log2"]["depth"] >= 2
        assert describe(BoundValue.saturated())["display"].startswith("beyond")

    def test_format_log2_compacts_huge_magnitudes(self):
        # towers whose magnitude itself exceeds the printable range render
        # one iterated-log step deeper instead of dumping full digits
        with local_bit_budget(64):
            assert format_log2(BoundValue.tower(2, Fraction(2**100))) == "2^^2(100.000000)"
            assert format_log2(BoundValue.tower(1, Fraction(3 * 2**100))) == "2^^1(101.584963)"

    def test_huge_decimal_rendering(self):
        # past CPython's default int->str digit cap
        v = exact_reference(2**200000)
        s = str(v)
        assert s.startswith("99") and len(s) == 60206


@given(st.integers(0, 2**64), st.integers(0, 2**64))
def test_mul_sound_under_tiny_budget(a, b):
    with local_bit_budget(48):
        got = bv_mul(a, b)
    assert bv_cmp(got, exact_reference(a * b)) >= 0


@given(st.integers(0, 2**64), st.integers(0, 2**64))
def test_add_sound_under_tiny_budget(a, b):
    with local_bit_budget(48):
        got = bv_add(a, b)
    assert bv_cmp(got, exact_reference(a + b)) >= 0


@given(st.integers(2, 2**16), st.integers(0, 12))
def test_pow_sound_under_tiny_budget(a, e):
    with local_bit_budget(48):
        got = bv_pow(a, e)
    assert bv_cmp(got, exact_reference(a**e)) >= 0


@given(st.integers(0, 2**80), st.integers(0, 2**80))
def test_cmp_matches_int_order(a, b):
    assert bv_cmp(exact_reference(a), exact_reference(b)) == (a > b) - (a < b)


@given(st.integers(2, 2**32), st.integers(2, 2**32))
def test_tower_magnitudes_stay_on_granule(a, b):
    with local_bit_budget(24):
        v = bv_mul(a, b)
    if v.is_tower:
        assert GRANULE_DEN % v.magnitude.denominator == 0
