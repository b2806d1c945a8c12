import itertools

import pytest
from hypothesis import given, settings, strategies as st

from swisscheese import cgop, checks
from swisscheese.cgop import FULL, HALF, act, compose, leq, make, pair_data, unit
from swisscheese.errors import (
    AdmissibilityViolation,
    CapExceeded,
    ColourMismatch,
    IndexOutOfRange,
    InvariantViolation,
    ShapeMismatch,
)

ID, SWAP = (1, 2), (2, 1)


def ops(n, max_k=4):
    @st.composite
    def strat(draw):
        k = draw(st.integers(0, max_k))
        mu = draw(st.lists(st.integers(1, n), min_size=k * (k - 1) // 2, max_size=k * (k - 1) // 2))
        sigma = draw(st.permutations(range(1, k + 1)))
        return make(n, mu, sigma)
    return strat()


# -- pair data ---------------------------------------------------------------

def test_pair_data_identity():
    assert pair_data(make(2, [1]), 1, 2) == (1, ID)


def test_pair_data_transposition():
    assert pair_data(make(2, [2], (2, 1)), 1, 2) == (2, SWAP)


def test_pair_data_cycle():
    op = make(2, [1, 2, 1], (3, 1, 2))
    assert pair_data(op, 1, 3) == (2, SWAP)
    assert pair_data(op, 2, 3) == (1, ID)


@pytest.mark.parametrize("i,j", [(2, 1), (1, 1), (1, 4), (0, 2)])
def test_pair_data_out_of_range(i, j):
    with pytest.raises(IndexOutOfRange):
        pair_data(make(2, [1, 1, 1]), i, j)


def test_invalid_elements_rejected():
    with pytest.raises(InvariantViolation):
        make(2, [3])
    with pytest.raises(InvariantViolation):
        make(2, [1, 1])
    with pytest.raises(InvariantViolation):
        make(2, [1], (1, 1))


# -- order -------------------------------------------------------------------

def test_leq_examples():
    a = make(2, [1])
    assert leq(a, a)
    assert leq(a, make(2, [2], SWAP))
    assert not leq(a, make(2, [1], SWAP))


def test_leq_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        leq(make(2, [1]), make(3, [1]))
    with pytest.raises(ShapeMismatch):
        leq(make(2, [1]), unit(2))


@pytest.mark.parametrize("n,k", [(1, 2), (2, 2), (3, 2), (4, 2), (2, 3)])
def test_partial_order(n, k):
    assert checks.poset_axioms(cgop.enumerate_ops(n, k)).ok


def test_up_set_matches_brute_force():
    for op in cgop.enumerate_ops(2, 3):
        brute = [b for b in cgop.enumerate_ops(2, 3) if b != op and leq(op, b)]
        assert set(cgop.up_set(op)) == set(brute)


# -- composition -------------------------------------------------------------

def test_composition_figure():
    a = make(5, [4, 5, 1])
    b = make(5, [2])
    c = compose(a, 2, b)
    assert c.arity == 4
    assert c.mu == (4, 4, 5, 2, 1, 1)
    assert c.sigma == (1, 2, 3, 4)


def test_units():
    b = make(2, [1, 2, 2], (2, 3, 1))
    assert compose(unit(2), 1, b) == b
    for i in range(1, 4):
        assert compose(b, i, unit(2)) == b
    assert leq(unit(2), unit(2))


def test_nullary_deletes_vertex():
    a = make(2, [2, 1, 1], (3, 1, 2))
    c = compose(a, 1, cgop.nullary(2))
    assert c.arity == 2
    assert c.mu == (1,)
    assert c.sigma == (1, 2)


def test_sigma_block_substitution():
    # b's block lands where a put slot 1, in b's internal order
    a = make(2, [1], SWAP)
    b = make(2, [2], SWAP)
    assert compose(a, 1, b).sigma == (3, 2, 1)


def test_compose_errors():
    with pytest.raises(IndexOutOfRange):
        compose(make(2, [1]), 3, unit(2))
    with pytest.raises(ColourMismatch):
        compose(make(2, [1]), 1, unit(3))


# -- symmetric action --------------------------------------------------------

def test_act_examples():
    op = make(2, [1])
    assert act(ID, op) == op
    assert act(SWAP, op) == make(2, [1], SWAP)


def test_act_relabels_pairs():
    op = make(3, [1, 2, 3], (2, 3, 1))
    p = (3, 1, 2)
    moved = act(p, op)
    for i, j in itertools.combinations(range(1, 4), 2):
        assert moved.colour(p[i - 1], p[j - 1]) == op.colour(i, j)
        assert moved.before(p[i - 1], p[j - 1]) == op.before(i, j)


def test_act_group_action():
    op = make(2, [1, 2, 2], (2, 3, 1))
    for p in itertools.permutations((1, 2, 3)):
        assert act(p, act(cgop.perm_inverse(p), op)) == op
        for q in itertools.permutations((1, 2, 3)):
            assert act(q, act(p, op)) == act(cgop.perm_compose(q, p), op)


def test_act_size_mismatch():
    with pytest.raises(ShapeMismatch):
        act((1, 2, 3), make(2, [1]))


# -- enumeration -------------------------------------------------------------

@pytest.mark.parametrize("n,k,size", [(2, 2, 4), (3, 2, 6), (2, 3, 48), (1, 0, 1), (1, 1, 1)])
def test_enumerate_counts(n, k, size):
    elems = cgop.enumerate_ops(n, k)
    assert len(elems) == size == len(set(elems))


def test_enumerate_deterministic():
    assert cgop.enumerate_ops(2, 3) == cgop.enumerate_ops(2, 3)


def test_enumerate_cap():
    with pytest.raises(CapExceeded) as info:
        cgop.enumerate_ops(3, 5, cap=1000)
    assert info.value.cap == 1000


# -- operad axioms -------------------------------------------------------------

def test_exhaustive_axioms():
    for report in checks.exhaustive_axioms((1, 2), 3):
        assert report.ok, report.as_dict()
        assert report.checked > 0


def test_randomized_axioms():
    for report in checks.randomized_axioms(3, 4, 1000, seed=0):
        assert report.ok, report.as_dict()


def test_monotone_composition():
    assert checks.monotonicity(2, 3).ok


@settings(max_examples=200, deadline=None)
@given(ops(3), ops(3), st.data())
def test_associativity_property(a, b, data):
    if a.arity == 0:
        return
    c = data.draw(ops(3, 3))
    i = data.draw(st.integers(1, a.arity))
    for j in range(1, b.arity + 1):
        assert compose(compose(a, i, b), i + j - 1, c) == compose(a, i, compose(b, j, c))


# -- relative operations -----------------------------------------------------

def test_admissible_examples():
    assert cgop.relative_admissible((FULL, FULL), make(3, [3]))
    assert not cgop.relative_admissible((HALF, HALF), make(2, [2]))
    assert cgop.relative_admissible((FULL, HALF), make(3, [3], SWAP))
    assert not cgop.relative_admissible((FULL, HALF), make(3, [3], ID))
    assert not cgop.relative_admissible((HALF, FULL), make(3, [3], SWAP))


def test_admissible_length_mismatch():
    with pytest.raises(ShapeMismatch):
        cgop.relative_admissible((FULL,), make(2, [1]))


def test_swiss_cheese_type():
    with pytest.raises(InvariantViolation):
        cgop.RelativeOperation((HALF,), FULL, unit(2))


def test_relative_compose():
    full2 = cgop.RelativeOperation((FULL, FULL), FULL, make(3, [3]))
    x = cgop.relative_compose(full2, 1, full2)
    assert x.underlying == compose(full2.underlying, 1, full2.underlying)
    mixed = cgop.RelativeOperation((FULL, HALF), HALF, make(3, [3], SWAP))
    assert cgop.relative_compose(mixed, 2, cgop.relative_unit(3, HALF)) == mixed
    with pytest.raises(ColourMismatch):
        cgop.relative_compose(mixed, 2, full2)


def test_half_half_into_mixed_slot():
    mixed = [
        cgop.RelativeOperation((FULL, HALF), HALF, op)
        for op in cgop.enumerate_ops(3, 2) if cgop.relative_admissible((FULL, HALF), op)
    ]
    halves = [
        cgop.RelativeOperation((HALF, HALF), HALF, op)
        for op in cgop.enumerate_ops(3, 2) if cgop.relative_admissible((HALF, HALF), op)
    ]
    for a in mixed:
        for b in halves:
            assert cgop.relative_admissible((FULL, HALF, HALF), cgop.relative_compose(a, 2, b).underlying)


def test_relative_closure_exhaustive():
    assert checks.relative_closure(2, 3).ok


def test_admissibility_violation_is_assertion():
    assert issubclass(AdmissibilityViolation, AssertionError)
