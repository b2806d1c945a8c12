import pytest

from swisscheese import cgop
from swisscheese import slice as S
from swisscheese.cgop import make
from swisscheese.errors import CapExceeded
from swisscheese.homotopy import homology, nerve
from swisscheese.trees import Leaf, ScOperation, black, white

SMALL = S.SliceCaps(max_black=1, max_vertices=3, max_arity=3)


def betti(n, d, c, caps=SMALL):
    return homology(nerve(S.slice_category(n, d, c, caps))).trimmed()


def test_pictured_objects_present():
    objs = set(S.slice_objects(2, "ff", cgop.nullary(2), SMALL))
    z = cgop.nullary(2)
    for mu in (1, 2):
        for a, b in ((1, 2), (2, 1)):
            t = black(make(2, [mu]), [white(z, [], a), white(z, [], b)])
            assert ScOperation(t, 2, z) in objs
    for a, b in ((1, 2), (2, 1)):
        tower = white(cgop.unit(2), [white(z, [], b)], a)
        assert ScOperation(tower, 2, z) in objs


def test_contraction_of_the_corolla():
    z = cgop.nullary(2)
    x = ScOperation(black(make(2, [1]), [white(z, [], 1), white(z, [], 2)]), 2, z)
    got = set(S.contractions(x))
    assert got == {
        ScOperation(white(cgop.unit(2), [white(z, [], 2)], 1), 2, z),
        ScOperation(white(cgop.unit(2), [white(z, [], 1)], 2), 2, z),
    }
    for y in got:
        assert y.target() == x.target()


def test_raises_respect_the_bound():
    c = make(2, [1])
    x = ScOperation(black(make(2, [1]), [Leaf(1), Leaf(2)]), 2, c)
    assert S.raises(x) == []
    x2 = ScOperation(black(make(2, [1]), [Leaf(1), Leaf(2)]), 2, make(2, [2]))
    assert [y.target() for y in S.raises(x2)] == [make(2, [2])]


def test_sphere_example():
    assert betti(2, "ff", cgop.nullary(2)) == [1, 0, 1]


def test_sphere_example_larger_caps():
    caps = S.SliceCaps(max_black=2, max_vertices=4, max_arity=3)
    assert betti(2, "ff", cgop.nullary(2), caps) == [1, 0, 1]


def test_no_positions_is_contractible():
    assert betti(2, "", cgop.nullary(2)) == [1]
    cat = S.slice_category(2, "", cgop.nullary(2), SMALL)
    assert cat.objects == [ScOperation(black(cgop.nullary(2), []), 2, cgop.nullary(2))]
    # below a binary bound: the black corollas under it, with the bound as maximum
    assert betti(2, "", make(2, [2])) == [1]


def test_single_full_position_is_contractible():
    assert betti(1, "f", cgop.nullary(1)) == [1]


@pytest.mark.parametrize("n,expected", [(1, [1, 1]), (3, [1, 0, 0, 1])])
def test_two_full_positions_other_n(n, expected):
    assert betti(n, "ff", cgop.nullary(n)) == expected


def test_half_positions_under_full_target_are_empty():
    assert S.slice_objects(2, "fh", cgop.nullary(2)) == []


def test_leaf_targeted_objects():
    objs = S.slice_objects(1, "h", None, SMALL)
    assert ScOperation(Leaf(1), 1, None) in objs
    assert all(x.input_colours() == ("*",) for x in objs)


def test_object_cap():
    with pytest.raises(CapExceeded) as info:
        S.slice_category(2, "ff", cgop.nullary(2), S.SliceCaps(max_black=2, max_vertices=4, max_objects=10))
    assert info.value.cap == 10


def test_generated_category_is_valid():
    cat = S.slice_category(2, "ff", cgop.nullary(2), SMALL)
    cat.check()
    for x in cat.objects:
        x.check()
