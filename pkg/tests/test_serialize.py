import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swisscheese import cgop
from swisscheese import hochschild as H
from swisscheese import serialize as ser
from swisscheese import trees as T
from swisscheese.cgop import FULL, HALF


@st.composite
def operations(draw):
    n = draw(st.integers(1, 4))
    k = draw(st.integers(0, 5))
    mu = draw(st.lists(st.integers(1, n), min_size=k * (k - 1) // 2, max_size=k * (k - 1) // 2))
    sigma = draw(st.permutations(range(1, k + 1)))
    return cgop.make(n, mu, tuple(sigma))


@given(operations())
@settings(max_examples=200, deadline=None)
def test_op_round_trip(op):
    obj = ser.op_to_json(op)
    assert ser.op_from_json(json.loads(ser.dumps(obj))) == op


def test_relative_round_trip():
    x = cgop.RelativeOperation((FULL, HALF), HALF, cgop.make(2, [1]))
    assert ser.relative_from_json(ser.relative_to_json(x)) == x
    assert ser.relative_from_json({"inputs": ["f", "h"], "output": "h", "operation": {"colorBound": 2, "mu": [1]}}) == x


def test_tree_round_trip():
    caps = T.TreeCaps(max_black=2, max_vertices=3, max_arity=3)
    ops = T.enumerate_c_operations(2, 2, caps) + T.enumerate_b_operations(2, 1, 2, caps)
    assert len(ops) > 10
    for x in ops:
        back = ser.tree_from_json(json.loads(ser.dumps(ser.tree_to_json(x))))
        assert back == x


def test_rationals_bit_exact():
    for q in (Fraction(1, 3), Fraction(-22, 7), Fraction(0), Fraction(10**30 + 1, 3)):
        assert ser.rational_from_json(ser.rational_to_json(q)) == q
    assert ser.rational_to_json(Fraction(1, 3)) == "1/3"
    for bad in (1.5, None, True, "x/2", "1/0"):
        with pytest.raises(ser.MalformedInput):
            ser.rational_from_json(bad)


@pytest.mark.parametrize("A", [H.dual_numbers(), H.group_algebra_c2(), H.truncated_polynomials(3)])
def test_algebra_round_trip(A):
    B = ser.algebra_from_json(json.loads(ser.dumps(ser.algebra_to_json(A))))
    assert B.structure == A.structure and B.unit == A.unit


def test_malformed():
    with pytest.raises(ser.MalformedInput):
        ser.op_from_json({"mu": [1]})
    with pytest.raises(ser.MalformedInput):
        ser.op_from_json({"colorBound": 2, "mu": [1], "arity": 3})
    with pytest.raises(ser.MalformedInput):
        ser.tree_from_json({"colorBound": 2, "nodes": [], "leafOrder": []})
    with pytest.raises(ser.MalformedInput):
        ser.relative_from_json({"inputs": ["q"], "output": "f", "operation": {"colorBound": 1, "mu": []}})


def test_dumps_is_canonical():
    assert ser.dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}\n'


def test_simplex_map_json():
    f = H.SimplexMap(3, 5, (1, 2, 4, 5))
    assert ser.simplex_map_from_json(ser.simplex_map_to_json(f)) == f
    assert ser.simplex_map_from_json([1, 2, 4, 5]) == f
