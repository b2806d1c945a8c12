"""Decorated black and white trees over K_n and the plus-construction operads.

Trees are immutable nested values.  A ``Vertex`` carries a K_n decoration
whose arity is its number of children (in planar order), a polarity and an
optional position label; a ``Leaf`` carries a label.  A lone ``Leaf`` is the
trivial tree with no vertices.

Operations of the two plus constructions are ``ScOperation`` values:

* B-targeted (output colour an operation of K_n): white vertices are the
  numbered positions 1..k, leaves carry their combing labels 1..L, and
  ``target_bound`` records the extra morphism target(tree) <= bound.
* C-targeted (output colour the unique colour of K_n): white vertices and
  leaves together carry the position labels 1..k; black vertices are never
  numbered.  The leaf combing is the order induced by the labels.

All composition results are normalized (no black-black edges, no unary black
vertices) and put in canonical form: every decoration has identity sigma and
children are listed in sigma-order.  Equal canonical trees are isomorphic as
symmetric decorated trees and conversely.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from functools import cached_property, lru_cache
from typing import Iterator, Union

from . import cgop
from .cgop import CompleteGraphOperation, act, compose, leq
from .errors import ColourMismatch, IndexOutOfRange, InvariantViolation, NotRelated, ShapeMismatch

STAR = "*"


@dataclass(frozen=True)
class Leaf:
    label: int


@dataclass(frozen=True)
class Vertex:
    decoration: CompleteGraphOperation
    children: tuple = ()
    black: bool = False
    label: int | None = None

    def __post_init__(self):
        if self.decoration.arity != len(self.children):
            raise InvariantViolation(
                f"decoration of arity {self.decoration.arity} on a vertex with {len(self.children)} children"
            )

    @property
    def arity(self) -> int:
        return len(self.children)


Node = Union[Leaf, Vertex]


def _vertex(decoration, children: tuple, is_black: bool, label) -> Vertex:
    # hot-path constructor; callers guarantee arity == len(children)
    v = object.__new__(Vertex)
    object.__setattr__(v, "decoration", decoration)
    object.__setattr__(v, "children", children)
    object.__setattr__(v, "black", is_black)
    object.__setattr__(v, "label", label)
    return v


def white(decoration, children=(), label=None) -> Vertex:
    return Vertex(decoration, tuple(children), False, label)


def black(decoration, children=()) -> Vertex:
    return Vertex(decoration, tuple(children), True, None)


def corolla(decoration: CompleteGraphOperation, label: int | None = 1, is_black: bool = False) -> Vertex:
    """One vertex whose leaves carry combing labels 1..arity."""
    leaves = tuple(Leaf(s) for s in range(1, decoration.arity + 1))
    return Vertex(decoration, leaves, is_black, None if is_black else label)


# -- traversal ---------------------------------------------------------------

def walk(node: Node, path: tuple = ()) -> Iterator[tuple[tuple, Node]]:
    """Depth-first preorder (path, node) pairs."""
    yield path, node
    if isinstance(node, Vertex):
        for s, child in enumerate(node.children):
            yield from walk(child, path + (s,))


def node_at(node: Node, path: tuple) -> Node:
    for s in path:
        node = node.children[s]
    return node


def replace_at(node: Node, path: tuple, new: Node) -> Node:
    if not path:
        return new
    s = path[0]
    children = list(node.children)
    children[s] = replace_at(children[s], path[1:], new)
    return _vertex(node.decoration, tuple(children), node.black, node.label)


def leaf_labels(node: Node) -> list[int]:
    """Leaf labels in planar order."""
    return [n.label for _, n in walk(node) if isinstance(n, Leaf)]


def vertices(node: Node) -> list[tuple[tuple, Vertex]]:
    return [(p, n) for p, n in walk(node) if isinstance(n, Vertex)]


def black_vertices(node: Node) -> list[tuple[tuple, Vertex]]:
    return [(p, n) for p, n in vertices(node) if n.black]


def shape(node: Node):
    """The tree with decorations forgotten (arity, polarity and labels kept)."""
    if isinstance(node, Leaf):
        return ("leaf", node.label)
    return (node.black, node.label, tuple(shape(c) for c in node.children))


def map_labels(node: Node, on_white, on_leaf) -> Node:
    if type(node) is Leaf:
        return Leaf(on_leaf(node.label))
    label = node.label
    if label is not None:
        label = on_white(label)
    return _vertex(node.decoration, tuple([map_labels(c, on_white, on_leaf) for c in node.children]), node.black, label)


def _shifted(node: Node, after: int, by: int, leaves: bool) -> Node:
    """Add ``by`` to every position label above ``after``."""
    if type(node) is Leaf:
        if leaves and node.label > after:
            return Leaf(node.label + by)
        return node
    label = node.label
    if label is not None and label > after:
        label += by
    return _vertex(node.decoration, tuple([_shifted(c, after, by, leaves) for c in node.children]), node.black, label)


def substitute_leaves(node: Node, mapping: dict) -> Node:
    if type(node) is Leaf:
        return mapping[node.label]
    return _vertex(node.decoration, tuple([substitute_leaves(c, mapping) for c in node.children]), node.black, node.label)


# -- target, canonical form, normalization ---------------------------------

def target(node: Node, color_bound: int | None = None) -> CompleteGraphOperation:
    """Composite of all decorations, followed by the leaf combing.

    The result's vertex r corresponds to the leaf with the r-th smallest label.
    """
    if isinstance(node, Leaf):
        if color_bound is None:
            raise InvariantViolation("the trivial tree needs an explicit colour bound")
        return cgop.unit(color_bound)
    op, labels = _planar_target(node)
    ranks = {lab: r for r, lab in enumerate(sorted(labels), start=1)}
    return act(tuple(ranks[lab] for lab in labels), op)


def _planar_target(node: Vertex) -> tuple[CompleteGraphOperation, list[int]]:
    op = node.decoration
    labels: list[int] = []
    for s in reversed(range(node.arity)):
        child = node.children[s]
        if isinstance(child, Leaf):
            labels.insert(0, child.label)
            continue
        sub, sub_labels = _planar_target(child)
        op = compose(op, s + 1, sub)
        labels[:0] = sub_labels
    return op, labels


def canonical(node: Node) -> Node:
    """Reorder children so that every decoration has identity sigma."""
    if type(node) is Leaf:
        return node
    kids = [canonical(c) for c in node.children]
    sigma = node.decoration.sigma
    if sigma == _identity(len(kids)):
        if all(a is b for a, b in zip(kids, node.children)):
            return node
        return _vertex(node.decoration, tuple(kids), node.black, node.label)
    ordered = [None] * len(kids)
    for s, child in enumerate(kids):
        ordered[sigma[s] - 1] = child
    return _vertex(act(sigma, node.decoration), tuple(ordered), node.black, node.label)


@lru_cache(maxsize=None)
def _identity(k: int) -> tuple:
    return tuple(range(1, k + 1))


def normalize(node: Node) -> Node:
    """Contract black-black edges and delete unary black vertices."""
    if type(node) is Leaf:
        return node
    kids = [normalize(c) for c in node.children]
    unchanged = all(a is b for a, b in zip(kids, node.children))
    if not node.black:
        return node if unchanged else _vertex(node.decoration, tuple(kids), False, node.label)
    if unchanged and len(kids) != 1 and not any(type(c) is Vertex and c.black for c in kids):
        return node
    dec = node.decoration
    merged: list[Node] = []
    for child in kids:
        if type(child) is Vertex and child.black:
            # child's own children are already free of black vertices
            dec = compose(dec, len(merged) + 1, child.decoration)
            merged.extend(child.children)
        else:
            merged.append(child)
    if len(merged) == 1:
        return merged[0]
    return _vertex(dec, tuple(merged), True, None)


def tidy(node: Node) -> Node:
    return canonical(normalize(node))


def validate(node: Node) -> bool:
    """Black and white invariants: no black unit vertex, no adjacent blacks."""
    if type(node) is Leaf:
        return True
    kids = node.children
    if node.decoration.arity != len(kids):
        return False
    if node.black and (len(kids) == 1 or any(type(c) is Vertex and c.black for c in kids)):
        return False
    return all(validate(c) for c in kids)


def target_monotone(t: Node, t2: Node) -> bool:
    """Vertexwise comparison of two decorations of one tree shape."""
    if shape(t) != shape(t2):
        raise ShapeMismatch("trees have different shapes")
    return all(
        leq(a.decoration, b.decoration) for (_, a), (_, b) in zip(vertices(t), vertices(t2))
    )


# -- operations of the plus constructions ------------------------------------

@dataclass(frozen=True)
class ScOperation:
    tree: Node
    color_bound: int
    target_bound: CompleteGraphOperation | None = None

    @property
    def b_targeted(self) -> bool:
        return self.target_bound is not None

    @cached_property
    def _positions(self) -> dict[int, tuple]:
        out = {}
        with_leaves = self.target_bound is None

        def go(node, path):
            if type(node) is Leaf:
                if with_leaves:
                    out[node.label] = path
                return
            if node.label is not None:
                out[node.label] = path
            for s, child in enumerate(node.children):
                go(child, path + (s,))

        go(self.tree, ())
        return out

    def positions(self) -> dict[int, tuple]:
        """Position label -> path of the numbered vertex or leaf."""
        return dict(self._positions)

    @property
    def arity(self) -> int:
        return len(self._positions)


    def input_colours(self) -> tuple:
        pos = self.positions()
        out = []
        for lab in range(1, len(pos) + 1):
            node = node_at(self.tree, pos[lab])
            out.append(node.decoration if isinstance(node, Vertex) else STAR)
        return tuple(out)

    @property
    def output_colour(self):
        return self.target_bound if self.b_targeted else STAR

    def target(self) -> CompleteGraphOperation:
        return target(self.tree, self.color_bound)

    def tidy(self) -> "ScOperation":
        return replace(self, tree=tidy(self.tree))

    def check(self) -> None:
        """Raise InvariantViolation unless this is a well-formed operation."""
        if not validate(self.tree):
            raise InvariantViolation("black and white invariants violated")
        for _, v in vertices(self.tree):
            if v.decoration.color_bound != self.color_bound:
                raise InvariantViolation("decoration with a foreign colour bound")
            if v.black and v.label is not None:
                raise InvariantViolation("black vertices are never numbered")
            if not v.black and v.label is None:
                raise InvariantViolation("every white vertex must be numbered")
        labels = sorted(self.positions())
        if labels != list(range(1, len(labels) + 1)):
            raise InvariantViolation(f"position labels {labels} are not 1..k")
        if self.b_targeted:
            leaves = sorted(leaf_labels(self.tree))
            if leaves != list(range(1, self.target_bound.arity + 1)):
                raise InvariantViolation("leaves must carry combing labels 1..arity(bound)")
            if not leq(self.target(), self.target_bound):
                raise InvariantViolation("target is not below the target bound")


def b_unit(decoration: CompleteGraphOperation) -> ScOperation:
    """Identity of P+_* at the colour ``decoration``."""
    return ScOperation(corolla(decoration, 1), decoration.color_bound, decoration)


def c_unit(color_bound: int) -> ScOperation:
    return ScOperation(Leaf(1), color_bound, None)


def _insert_white(x_tree: Node, path: tuple, y_tree: Node) -> Node:
    host = node_at(x_tree, path)
    filling = {s: child for s, child in enumerate(host.children, start=1)}
    return replace_at(x_tree, path, substitute_leaves(y_tree, filling))


def plus_compose(x: ScOperation, i: int, y: ScOperation) -> ScOperation:
    """Insert y into the i-th white vertex of x (both B-targeted)."""
    if not (x.b_targeted and y.b_targeted):
        raise ColourMismatch("insertion needs B-targeted operations")
    return sc_compose(x, i, y)


def sc_compose(x: ScOperation, i: int, y: ScOperation) -> ScOperation:
    """Partial composition in the Swiss cheese plus construction."""
    if x.color_bound != y.color_bound:
        raise ColourMismatch("colour bounds differ")
    pos = x.positions()
    if i not in pos:
        raise IndexOutOfRange(f"position {i} outside 1..{len(pos)}")
    path = pos[i]
    slot = node_at(x.tree, path)
    ky = y.arity
    if type(slot) is Vertex:
        if not y.b_targeted or y.target_bound != slot.decoration:
            raise ColourMismatch(f"position {i} expects an operation with bound {slot.decoration!r}")
        x_tree = _shifted(x.tree, i, ky - 1, not x.b_targeted)
        y_tree = _shifted(y.tree, 0, i - 1, False)
        tree = _insert_white(x_tree, path, y_tree)
    else:
        if y.b_targeted:
            raise ColourMismatch(f"position {i} is a leaf; only C-targeted operations graft there")
        x_tree = _shifted(x.tree, i, ky - 1, True)
        y_tree = _shifted(y.tree, 0, i - 1, True)
        tree = replace_at(x_tree, path, y_tree)
    out = ScOperation(tidy(tree), x.color_bound, x.target_bound)
    if not validate(out.tree):
        raise InvariantViolation("composite violates the black and white invariants")
    return out


def sc_act(p: tuple, x: ScOperation) -> ScOperation:
    """Renumber position i as p(i)."""
    if len(p) != x.arity or not cgop.is_permutation(p):
        raise ShapeMismatch("permutation size does not match the number of positions")
    relabel = lambda lab: p[lab - 1]
    leaf_map = (lambda lab: lab) if x.b_targeted else relabel
    return replace(x, tree=map_labels(x.tree, relabel, leaf_map))


def apply_morphism(x: ScOperation, raises: dict[int, CompleteGraphOperation]) -> ScOperation:
    """Raise the decorations of black vertices (indexed in preorder)."""
    blacks = black_vertices(x.tree)
    tree = x.tree
    for idx, new in sorted(raises.items()):
        if not 0 <= idx < len(blacks):
            raise IndexOutOfRange(f"no black vertex {idx}")
        path, v = blacks[idx]
        if v.decoration.arity != new.arity or not leq(v.decoration, new):
            raise NotRelated(f"{v.decoration!r} is not below {new!r}")
        tree = replace_at(tree, path, replace(node_at(tree, path), decoration=new))
    out = replace(x, tree=tree)
    if x.b_targeted and not leq(out.target(), x.target_bound):
        raise InvariantViolation("raised target is no longer below the target bound")
    return out


def morphism_between(x: ScOperation, x2: ScOperation) -> dict[int, CompleteGraphOperation] | None:
    """The black raise turning x into x2, or None if there is none."""
    if x.target_bound != x2.target_bound or shape(x.tree) != shape(x2.tree):
        return None
    raises = {}
    for idx, ((_, a), (_, b)) in enumerate(zip(vertices(x.tree), vertices(x2.tree))):
        if a.decoration == b.decoration:
            continue
        if not a.black or not leq(a.decoration, b.decoration):
            return None
    for idx, ((_, a), (_, b)) in enumerate(zip(black_vertices(x.tree), black_vertices(x2.tree))):
        if a.decoration != b.decoration:
            raises[idx] = b.decoration
    return raises


# -- enumeration ---------------------------------------------------------------

@dataclass(frozen=True)
class TreeCaps:
    max_black: int = 2
    max_vertices: int = 6
    max_arity: int = 3


def enumerate_shapes(n: int, whites: int, leaves: int, caps: TreeCaps = TreeCaps()) -> list[Node]:
    """All canonical black and white trees with the given numbers of white
    vertices and leaves, within the caps.  Labels are left as 0.

    Planar trees have no non-trivial automorphisms, so every labelling of a
    returned tree is a distinct labelled tree.
    """
    gen = _Generator(n, caps)
    return [t for t, _, _ in gen.subtrees(whites, leaves, caps.max_black, caps.max_vertices, False)]


def label_positions(node: Node, white_labels, leaf_labels) -> Node:
    """Assign labels to white vertices (preorder) and leaves (planar order)."""
    wi, li = iter(white_labels), iter(leaf_labels)

    def go(t: Node) -> Node:
        if isinstance(t, Leaf):
            return Leaf(next(li))
        label = None if t.black else next(wi)
        return Vertex(t.decoration, tuple(go(c) for c in t.children), t.black, label)

    return go(node)


def label_jointly(node: Node, labels) -> Node:
    """Assign labels to white vertices and leaves together, in preorder."""
    it = iter(labels)

    def go(t: Node) -> Node:
        if isinstance(t, Leaf):
            return Leaf(next(it))
        label = None if t.black else next(it)
        return Vertex(t.decoration, tuple(go(c) for c in t.children), t.black, label)

    return go(node)


def enumerate_trees(n: int, white_labels, leaf_labels_, caps: TreeCaps = TreeCaps()) -> list[Node]:
    """Canonical trees carrying exactly the given white and leaf labels.

    White vertices and leaves are labelled independently (B-targeted style).
    """
    wl, ll = sorted(white_labels), sorted(leaf_labels_)
    out = []
    for t in enumerate_shapes(n, len(wl), len(ll), caps):
        for pw in itertools.permutations(wl):
            for pl in itertools.permutations(ll):
                out.append(label_positions(t, pw, pl))
    return out


def enumerate_c_operations(n: int, k: int, caps: TreeCaps, up_to_relabelling: bool = False) -> list[ScOperation]:
    """C-targeted operations with k positions.

    With ``up_to_relabelling`` only the preorder labelling of each tree is
    returned (one representative per orbit of the symmetric action).
    """
    out = []
    for nw in range(k + 1):
        for t in enumerate_shapes(n, nw, k - nw, caps):
            labellings = [range(1, k + 1)] if up_to_relabelling else itertools.permutations(range(1, k + 1))
            out.extend(ScOperation(label_jointly(t, p), n, None) for p in labellings)
    return out


def enumerate_b_operations(n: int, k: int, leaves: int, caps: TreeCaps, up_to_relabelling: bool = False,
                           bounds: str = "canonical") -> list[ScOperation]:
    """B-targeted operations with k white vertices and the given leaf count.

    Every leaf combing is produced.  ``bounds`` selects the target bounds:
    "target" (the target itself), "canonical" (every identity-sigma
    operation above the target) or "all".
    """
    out = []
    ident = cgop.identity(leaves)
    for t in enumerate_shapes(n, k, leaves, caps):
        whites = [range(1, k + 1)] if up_to_relabelling else list(itertools.permutations(range(1, k + 1)))
        planar = cgop.unit(n) if type(t) is Leaf else _planar_target(t)[0]
        for pl in itertools.permutations(range(1, leaves + 1)):
            # the combing labels in planar order are the target's ranks
            tgt = act(pl, planar)
            for pw in whites:
                tree = label_positions(t, pw, pl)
                if bounds == "target":
                    ups = [tgt]
                else:
                    ups = [tgt] + cgop.up_set(tgt)
                    if bounds == "canonical":
                        ups = [c for c in ups if c.sigma == ident]
                out.extend(ScOperation(tree, n, c) for c in ups)
    return out


class _Generator:
    def __init__(self, n: int, caps: TreeCaps):
        self.n = n
        self.caps = caps
        self.subtrees = lru_cache(maxsize=None)(self._subtrees)
        self.sequences = lru_cache(maxsize=None)(self._sequences)
        self.bn = Vertex(cgop.nullary(n), (), True, None)

    def _subtrees(self, nw: int, nl: int, nb: int, nv: int, parent_black: bool):
        """Tuples (tree, blacks used, vertices used)."""
        out = []
        if nw == 0 and nl == 1:
            out.append((Leaf(0), 0, 0))
        if nv < 1:
            return tuple(out)
        if nw >= 1:
            for kids, b, v in self.sequences(nw - 1, nl, nb, nv - 1, True):
                if len(kids) > self.caps.max_arity:
                    continue
                for dec in cgop.canonical_ops(self.n, len(kids)):
                    out.append((Vertex(dec, kids, False, 0), b, v + 1))
        if not parent_black and nb >= 1:
            for kids, b, v in self.sequences(nw, nl, nb - 1, nv - 1, False):
                if len(kids) == 1 or len(kids) > self.caps.max_arity:
                    continue
                for dec in cgop.canonical_ops(self.n, len(kids)):
                    out.append((Vertex(dec, kids, True, None), b + 1, v + 1))
        return tuple(out)

    def _sequences(self, nw: int, nl: int, nb: int, nv: int, parent_white: bool):
        """Ordered children lists using exactly nw white vertices and nl leaves.

        Under a white parent, label-free black nullary children may appear;
        under a black parent every child must be white or a leaf.
        """
        out = []
        if nw == 0 and nl == 0:
            out.append(((), 0, 0))
        if parent_white and nb >= 1 and nv >= 1:
            for rest, b, v in self.sequences(nw, nl, nb - 1, nv - 1, True):
                out.append(((self.bn,) + rest, b + 1, v + 1))
        for fw in range(nw + 1):
            for fl in range(nl + 1):
                if fw + fl == 0:
                    continue
                for sub, b1, v1 in self.subtrees(fw, fl, nb, nv, not parent_white):
                    for rest, b2, v2 in self.sequences(nw - fw, nl - fl, nb - b1, nv - v1, parent_white):
                        out.append(((sub,) + rest, b1 + b2, v1 + v2))
        return tuple(out)
