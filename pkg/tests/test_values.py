import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from xcalc.core import FrozenMap, NValue, XCTypeError, format_local, lift_local, nv_get, pointwise_apply
from xcalc.core import builtins as B


def test_lift_local():
    assert lift_local(5) == NValue(5)
    assert lift_local(5).overrides == {}
    assert lift_local(True).default is True
    assert lift_local((1, 2)) == NValue((1, 2), {})


def test_pointwise_mul_keeps_override():
    w1 = NValue(2, {3: 2})
    w2 = NValue(1)
    assert pointwise_apply(B.mul, [w1, w2]) == NValue(2, {3: 2})


def test_pointwise_add():
    assert pointwise_apply(B.add, [NValue(0), NValue(0)]) == NValue(0)
    got = pointwise_apply(B.add, [NValue(1, {1: 2}), NValue(10, {2: 20})])
    assert got.default == 11
    assert dict(got.overrides) == {1: 12, 2: 21}


def test_pointwise_type_error_names_device():
    with pytest.raises(XCTypeError, match="device 4"):
        pointwise_apply(B.add, [NValue(1, {4: "x"}), NValue(2)])


def test_nv_get():
    w = NValue(0, {4: 1, 3: 2, 2: 3})
    assert nv_get(w, 3) == 2
    assert nv_get(w, 9) == 0
    assert nv_get(NValue(7), 123) == 7


def test_equality_is_lookup_based():
    assert NValue(0, {1: 0}) == NValue(0)
    assert NValue(0, {1: 0}).normalized().overrides == {}
    assert hash(NValue(0, {1: 0})) == hash(NValue(0))
    assert NValue(True) != NValue(1)


def test_format_local():
    assert format_local(None) == "unit"
    assert format_local(True) == "true"
    assert format_local(math.inf) == "inf"
    assert format_local((1, "a")) == '(1, "a")'
    assert format_local(frozenset({3, 1})) == "{1, 3}"
    assert format_local(FrozenMap({2: "b", 1: "a"})) == '{1: "a", 2: "b"}'
    assert repr(NValue(0, {2: 1, 1: 5})) == "0[1 -> 5, 2 -> 1]"


def test_frozen_map_is_hashable_and_ordered():
    m = FrozenMap({3: 1, 1: 2})
    assert list(m) == [1, 3]
    assert hash(m) == hash(FrozenMap({1: 2, 3: 1}))
    assert m.put(2, 0) == FrozenMap({1: 2, 2: 0, 3: 1})


def test_division_and_floor():
    assert B.div(1, 0) == math.inf
    assert B.div(-1, 0) == -math.inf
    assert B.floor(2.7) == 2
    with pytest.raises(XCTypeError):
        B.floor(math.inf)


def test_min_on_pairs_is_lexicographic():
    assert B.vmin((1.0, 5), (1.0, 3)) == (1.0, 3)
    assert B.vmin((0.5, 9), (1.0, 3)) == (0.5, 9)


locals_ = st.one_of(
    st.integers(-50, 50),
    st.floats(allow_nan=False, allow_infinity=True, width=32),
)

BINARY_NUMERIC = ["add", "sub", "mul", "min", "max", "lt", "le", "gt", "ge", "eq", "neq"]


@given(st.sampled_from(BINARY_NUMERIC), locals_, locals_)
def test_promotion_coherence(name, a, b):
    fn, _ = B.POINTWISE[name]
    try:
        expected = fn(a, b)
    except XCTypeError:
        with pytest.raises(XCTypeError):
            pointwise_apply(fn, [lift_local(a), lift_local(b)])
        return
    got = pointwise_apply(fn, [lift_local(a), lift_local(b)])
    assert got.overrides == {}
    if isinstance(expected, float) and math.isnan(expected):
        assert math.isnan(got.default)
    else:
        assert got == lift_local(expected)


@given(st.dictionaries(st.integers(0, 9), st.integers(-5, 5)), st.integers(-5, 5),
       st.dictionaries(st.integers(0, 9), st.integers(-5, 5)), st.integers(-5, 5))
def test_pointwise_matches_lookup(ov1, d1, ov2, d2):
    w1, w2 = NValue(d1, ov1), NValue(d2, ov2)
    got = pointwise_apply(B.add, [w1, w2])
    for d in range(12):
        assert got.get(d) == w1.get(d) + w2.get(d)
