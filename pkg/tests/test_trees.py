import itertools

import pytest

from swisscheese import cgop, checks
from swisscheese import trees as T
from swisscheese.cgop import make, unit
from swisscheese.errors import ColourMismatch, IndexOutOfRange, InvariantViolation, NotRelated, ShapeMismatch
from swisscheese.trees import Leaf, ScOperation, black, white


def tower():
    return white(make(2, [1]), [white(make(2, [2]), [Leaf(1), Leaf(2)], 2), Leaf(3)], 1)


# -- target ------------------------------------------------------------------

def test_target_single_vertex():
    p = make(2, [2, 1, 1], (2, 3, 1))
    assert T.target(T.corolla(p)) == p


def test_target_tower():
    t = T.target(tower())
    assert t.mu == (2, 1, 1)
    assert t.sigma == (1, 2, 3)


def test_target_all_units():
    t = white(unit(2), [black(unit(2), [white(unit(2), [Leaf(1)], 2)])], 1)
    assert T.target(t) == unit(2)
    assert T.target(Leaf(1), 2) == unit(2)


def test_target_applies_combing():
    p = make(2, [1])
    t = white(p, [Leaf(2), Leaf(1)], 1)
    assert T.target(t) == cgop.act((2, 1), p)


def test_target_independent_of_canonical_form():
    t = white(make(2, [2, 1, 2], (3, 1, 2)), [Leaf(3), white(make(2, [1], (2, 1)), [Leaf(1), Leaf(4)], 2), Leaf(2)], 1)
    assert T.target(T.canonical(t)) == T.target(t)
    for _, v in T.vertices(T.canonical(t)):
        assert v.decoration.sigma == cgop.identity(v.arity)


def test_target_monotone():
    t = tower()
    assert T.target_monotone(t, t)
    raised = white(make(2, [1]), [white(make(2, [2]), [Leaf(1), Leaf(2)], 2), Leaf(3)], 1)
    assert T.target_monotone(t, raised)
    low = white(make(2, [1]), [white(make(2, [1]), [Leaf(1), Leaf(2)], 2), Leaf(3)], 1)
    assert T.target_monotone(low, t)
    assert cgop.leq(T.target(low), T.target(t))
    swapped = white(make(2, [1]), [white(make(2, [1], (2, 1)), [Leaf(1), Leaf(2)], 2), Leaf(3)], 1)
    assert not T.target_monotone(low, swapped)
    with pytest.raises(ShapeMismatch):
        T.target_monotone(t, T.corolla(make(2, [1, 1, 1])))


def test_target_monotone_sweep():
    # every vertexwise comparable pair of two-vertex towers has comparable targets
    for a, b, c, d in itertools.product(cgop.enumerate_ops(2, 2), repeat=4):
        t1 = white(a, [white(b, [Leaf(1), Leaf(2)], 2), Leaf(3)], 1)
        t2 = white(c, [white(d, [Leaf(1), Leaf(2)], 2), Leaf(3)], 1)
        if T.target_monotone(t1, t2):
            assert cgop.leq(T.target(t1), T.target(t2))


# -- black and white invariants ------------------------------------------------

def test_validate():
    assert T.validate(tower())
    adjacent = black(make(2, [1]), [black(make(2, [1]), [Leaf(1), Leaf(2)]), Leaf(3)])
    assert not T.validate(adjacent)
    assert not T.validate(black(unit(2), [Leaf(1)]))
    assert T.validate(white(unit(2), [Leaf(1)], 1))


def test_vertex_arity_checked():
    with pytest.raises(InvariantViolation):
        white(make(2, [1]), [Leaf(1)], 1)


def test_normalize_contracts_and_keeps_target():
    inner = black(make(2, [2]), [Leaf(2), Leaf(3)])
    t = black(make(2, [1]), [Leaf(1), inner])
    n = T.normalize(t)
    assert T.validate(n)
    assert len(T.vertices(n)) == 1
    assert T.target(n) == T.target(t)
    assert T.normalize(black(unit(2), [Leaf(1)])) == Leaf(1)


# -- compositions ---------------------------------------------------------------

def test_unit_corolla_insertion():
    x = ScOperation(tower(), 2, T.target(tower()))
    x.check()
    q = make(2, [2])
    assert T.plus_compose(x, 2, T.b_unit(q)) == x.tidy()
    assert T.plus_compose(T.b_unit(x.target_bound), 1, x) == x.tidy()


def test_two_corollas_make_a_tower():
    x = ScOperation(white(make(2, [1]), [Leaf(2), Leaf(3)], 1), 2)
    z = T.sc_compose(x, 2, ScOperation(white(make(2, [2]), [Leaf(2), Leaf(3)], 1), 2))
    assert z.tree == white(make(2, [1]), [white(make(2, [2]), [Leaf(3), Leaf(4)], 2), Leaf(5)], 1)


def test_insertion_creating_adjacent_blacks_is_normalized():
    # x: black root over a white; y: a black corolla with target below the white's decoration
    x = ScOperation(black(make(2, [1]), [Leaf(1), white(make(2, [2]), [Leaf(2), Leaf(3)], 1)]), 2,
                    make(2, [1, 1, 2]))
    x.check()
    y = ScOperation(black(make(2, [1]), [Leaf(1), Leaf(2)]), 2, make(2, [2]))
    y.check()
    z = T.plus_compose(x, 1, y)
    assert T.validate(z.tree)
    assert z.arity == 0
    assert len(T.vertices(z.tree)) == 1
    spliced = black(make(2, [1]), [Leaf(1), black(make(2, [1]), [Leaf(2), Leaf(3)])])
    assert z.target() == T.target(spliced)
    assert cgop.leq(z.target(), z.target_bound)


def test_graft_replaces_leaf():
    x = ScOperation(white(make(2, [1]), [Leaf(2), Leaf(3)], 1), 2)
    y = ScOperation(white(make(2, [2]), [Leaf(3), Leaf(2)], 1), 2)
    z = T.sc_compose(x, 3, y)
    z.check()
    assert z.arity == 5
    assert T.node_at(z.tree, (1,)).label == 3
    assert sorted(T.leaf_labels(z.tree)) == [2, 4, 5]


def test_insert_at_vertex_delegates():
    x = ScOperation(white(make(2, [1]), [Leaf(2), Leaf(3)], 1), 2)
    y = T.b_unit(make(2, [1]))
    assert T.sc_compose(x, 1, y) == x.tidy()


def test_colour_mismatches():
    x = ScOperation(white(make(2, [1]), [Leaf(2), Leaf(3)], 1), 2)
    with pytest.raises(ColourMismatch):
        T.sc_compose(x, 2, T.b_unit(make(2, [1])))  # a B-targeted operation at a leaf
    with pytest.raises(ColourMismatch):
        T.sc_compose(x, 1, T.c_unit(2))  # a C-targeted operation at a vertex
    with pytest.raises(ColourMismatch):
        T.sc_compose(x, 1, T.b_unit(make(2, [2])))  # wrong decoration
    with pytest.raises(ColourMismatch):
        T.plus_compose(x, 1, T.b_unit(make(2, [1])))
    with pytest.raises(IndexOutOfRange):
        T.sc_compose(x, 4, T.c_unit(2))


@pytest.mark.parametrize("n", [1, 2])
def test_plus_operad_axioms(n):
    elems = checks.plus_operations(n)
    for report in checks.plus_axioms(elems):
        assert report.ok, report.as_dict()
        assert report.checked > 0


def test_compositions_preserve_validity():
    elems = checks.plus_operations(2)
    for x, y in itertools.product(elems, repeat=2):
        for i in range(1, x.arity + 1):
            if checks._slot_fits(x, i, y):
                z = T.sc_compose(x, i, y)
                z.check()


# -- morphisms -------------------------------------------------------------------

def test_apply_identity_raise():
    x = ScOperation(black(make(2, [1]), [Leaf(1), Leaf(2)]), 2, make(2, [2]))
    assert T.apply_morphism(x, {}) == x
    assert T.apply_morphism(x, {0: make(2, [1])}) == x


def test_apply_raise():
    x = ScOperation(black(make(2, [1]), [Leaf(1), Leaf(2)]), 2, make(2, [2]))
    y = T.apply_morphism(x, {0: make(2, [2])})
    assert y.target() == make(2, [2])
    assert cgop.leq(x.target(), y.target())


def test_raise_breaking_bound():
    x = ScOperation(black(make(2, [1]), [Leaf(1), Leaf(2)]), 2, make(2, [1]))
    with pytest.raises(InvariantViolation):
        T.apply_morphism(x, {0: make(2, [2])})


def test_non_comparable_raise():
    x = ScOperation(black(make(2, [1]), [Leaf(1), Leaf(2)]), 2, make(2, [2]))
    with pytest.raises(NotRelated):
        T.apply_morphism(x, {0: make(2, [1], (2, 1))})
    with pytest.raises(IndexOutOfRange):
        T.apply_morphism(x, {3: make(2, [2])})


def test_raises_compose():
    x = ScOperation(white(make(2, [1, 1, 1]), [Leaf(1), black(make(2, [1]), [Leaf(2), Leaf(3)]),
                                                black(cgop.nullary(2), [])], 1), 2)
    x.check()
    low, high = make(2, [1]), make(2, [2])
    mid = T.apply_morphism(x, {0: high})
    assert T.apply_morphism(mid, {0: high}) == T.apply_morphism(x, {0: high})
    assert T.morphism_between(x, mid) == {0: high}
    assert T.morphism_between(mid, x) is None
    assert T.apply_morphism(x, {0: low}) == x


def test_sweep_raises_over_k22():
    for d in cgop.enumerate_ops(2, 2):
        x = ScOperation(black(d, [Leaf(1), Leaf(2)]), 2, make(2, [2]))
        if not cgop.leq(d, x.target_bound):
            continue
        for up in cgop.up_set(d):
            if cgop.leq(up, x.target_bound):
                assert T.apply_morphism(x, {0: up}).target() == up
            else:
                with pytest.raises(InvariantViolation):
                    T.apply_morphism(x, {0: up})


# -- enumeration -------------------------------------------------------------------

def test_shapes_are_distinct_and_valid():
    caps = T.TreeCaps(max_black=2, max_vertices=3, max_arity=3)
    shapes = T.enumerate_shapes(2, 1, 2, caps)
    assert len(shapes) == len(set(shapes))
    for t in shapes:
        assert T.validate(t)
        assert T.canonical(t) == t


def test_labelled_enumeration_is_orbit_closed():
    caps = T.TreeCaps(max_black=1, max_vertices=2, max_arity=2)
    ops = T.enumerate_c_operations(2, 3, caps)
    keys = {x.tree for x in ops}
    assert len(keys) == len(ops)
    for x in ops:
        x.check()
        assert T.sc_act((2, 3, 1), x).tree in keys
    reps = T.enumerate_c_operations(2, 3, caps, up_to_relabelling=True)
    assert len(ops) == 6 * len(reps)
