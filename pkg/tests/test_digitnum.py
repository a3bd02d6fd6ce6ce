import pytest
from hypothesis import given, strategies as st

from b2sets.digitnum import DigitVector, compare
from b2sets.errors import DigitOverflow


def dv(mapping):
    return DigitVector.from_map(mapping)


class TestConstruction:
    def test_from_power(self):
        assert dv({0: 1}) == DigitVector.from_power(0)
        assert DigitVector.from_power(7).digits == ((7, 1),)
        assert DigitVector.from_power(15).to_integer() == 5**15

    def test_zero_digits_dropped(self):
        assert dv({3: 0, 5: 1}) == dv({5: 1})

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            DigitVector(((0, 3),))
        with pytest.raises(ValueError):
            DigitVector(((0, 1), (0, 1)))
        with pytest.raises(ValueError):
            DigitVector(((-1, 1),))


class TestArithmetic:
    def test_add_pointwise(self):
        assert dv({7: 1, 11: 1}) + dv({7: 1, 15: -1}) == dv({7: 2, 11: 1, 15: -1})

    def test_add_cancellation(self):
        assert dv({3: 1}) + dv({3: -1}) == DigitVector.zero()

    def test_add_overflow(self):
        with pytest.raises(DigitOverflow):
            dv({3: 2}) + dv({3: 1})

    def test_negate(self):
        assert -dv({7: 1, 11: -1}) == dv({7: -1, 11: 1})

    def test_sub(self):
        assert dv({7: 1}) - dv({7: 1}) == DigitVector.zero()
        assert dv({7: 1, 11: 1}) - dv({15: 1}) == dv({7: 1, 11: 1, 15: -1})
        with pytest.raises(DigitOverflow):
            dv({3: -2}) - dv({3: 1})


class TestConversion:
    def test_to_integer_small(self):
        assert dv({1: 1}).to_integer() == 5
        assert dv({0: 2, 1: -1}).to_integer() == -3

    def test_to_integer_large(self):
        # 5^7 + 5^11 + 5^15 evaluated independently
        assert dv({7: 1, 11: 1, 15: 1}).to_integer() == 30566484375

    def test_from_integer_balanced(self):
        assert DigitVector.from_integer(0) == DigitVector.zero()
        assert DigitVector.from_integer(-3) == dv({0: 2, 1: -1})
        assert DigitVector.from_integer(30566484375) == dv({7: 1, 11: 1, 15: 1})

    def test_sparse_text_round_trip(self):
        a = dv({7: 1, 11: 2, 15: -1})
        assert a.to_sparse() == "5^7+2*5^11-5^15"
        assert DigitVector.parse(a.to_sparse()) == a
        assert DigitVector.parse("0") == DigitVector.zero()
        assert DigitVector.zero().to_sparse() == "0"

    def test_parse_decimal(self):
        assert DigitVector.parse("30566484375") == dv({7: 1, 11: 1, 15: 1})
        assert DigitVector.parse("-3") == dv({0: 2, 1: -1})

    def test_parse_garbage(self):
        for bad in ("", "5^", "5^3+quux", "5**3"):
            with pytest.raises(ValueError):
                DigitVector.parse(bad)


class TestOrdering:
    def test_examples(self):
        assert compare(dv({0: 1}), dv({1: 1})) == -1
        assert compare(dv({1: 1, 0: -2}), dv({0: 2})) == 1  # 3 > 2
        assert compare(dv({3: 1}), dv({3: 1})) == 0

    def test_sorting_matches_values(self):
        items = [dv({2: -1}), dv({0: 1}), DigitVector.zero(), dv({2: 1, 0: -2})]
        assert [x.to_integer() for x in sorted(items)] == sorted(
            x.to_integer() for x in items
        )


digit_maps = st.dictionaries(
    st.integers(min_value=0, max_value=40),
    st.sampled_from([-1, 1]),
    max_size=12,
)


@given(digit_maps)
def test_round_trip(mapping):
    a = dv(mapping)
    assert DigitVector.from_integer(a.to_integer()) == a


@given(digit_maps, digit_maps)
def test_add_homomorphism(m1, m2):
    a, b = dv(m1), dv(m2)
    assert (a + b).to_integer() == a.to_integer() + b.to_integer()


@given(digit_maps, digit_maps)
def test_uniqueness(m1, m2):
    a, b = dv(m1), dv(m2)
    assert (a == b) == (a.to_integer() == b.to_integer())


@given(digit_maps, digit_maps)
def test_order_matches_integers(m1, m2):
    a, b = dv(m1), dv(m2)
    assert (a < b) == (a.to_integer() < b.to_integer())


@given(st.integers(min_value=-10**30, max_value=10**30))
def test_from_integer_total(n):
    a = DigitVector.from_integer(n)
    assert a.to_integer() == n
    assert all(-2 <= c <= 2 and c != 0 for _, c in a.digits)
