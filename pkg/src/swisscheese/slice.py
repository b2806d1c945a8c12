"""Finite slice categories of the Swiss-cheese plus construction over K_n.

For a colour word ``d`` over {full, half} and a target colour ``c`` (an
operation of K_n, or ``None`` for the colour of the leaves), the objects are
the black and white trees whose numbered positions have complexity colours
``d``: position i is a white vertex when d_i is full and a leaf when d_i is
half.  With an operation ``c`` every position must be full, the leaves carry
the combing of the target, and the target must lie below ``c``.

Arrows are generated by
  * contracting an edge between a black and a white vertex (the white vertex
    keeps its label and absorbs the black decoration),
  * raising the decoration of one vertex along the K_n order (black vertices:
    the target-side morphism; white vertices: a unary operation whose bound
    lies above its decoration),
and closed under composition.  The realization is thin: parallel composites
are identified, which turns the category into the poset of reachability.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import cgop
from .cgop import FULL, HALF, CompleteGraphOperation, compose, leq
from .errors import CapExceeded, ShapeMismatch
from .homotopy import DEFAULT_ARROW_CAP, FiniteCategory
from .trees import Leaf, ScOperation, Vertex, _vertex, enumerate_shapes, label_positions, replace_at, tidy, walk
from .trees import TreeCaps


@dataclass(frozen=True)
class SliceCaps:
    """Bounds on the enumerated objects.

    ``max_black`` and ``max_arity`` bound black vertices (these include the
    label-free nullary black vertices that white vertices may carry) and the
    number of children of any vertex; ``max_objects`` and ``max_arrows``
    bound the resulting category.
    """
    max_black: int = 2
    max_vertices: int = 4
    max_arity: int = 3
    max_objects: int = 20_000
    max_arrows: int = DEFAULT_ARROW_CAP

    def tree_caps(self) -> TreeCaps:
        return TreeCaps(self.max_black, self.max_vertices, self.max_arity)


def _parse_word(d) -> tuple:
    word = []
    for x in d:
        if x in (FULL, "full", "f"):
            word.append(FULL)
        elif x in (HALF, "half", "h"):
            word.append(HALF)
        else:
            raise ShapeMismatch(f"unknown colour {x!r}")
    return tuple(word)


def slice_objects(n: int, d, c: CompleteGraphOperation | None, caps: SliceCaps = SliceCaps()) -> list[ScOperation]:
    word = _parse_word(d)
    whites = [i for i, x in enumerate(word, start=1) if x is FULL]
    leaves = [i for i, x in enumerate(word, start=1) if x is HALF]
    if c is not None:
        if c.color_bound != n:
            raise ShapeMismatch("target colour lives in a different K_n")
        if leaves:
            return []  # nothing full-coloured has half inputs
        leaves = list(range(1, c.arity + 1))
    out = []
    for t in enumerate_shapes(n, len(whites), len(leaves), caps.tree_caps()):
        if isinstance(t, Leaf) and c is not None:
            continue  # a lone leaf is not B-targeted; the unit corolla plays its role
        for pw in itertools.permutations(whites):
            for pl in itertools.permutations(leaves):
                x = ScOperation(tidy(label_positions(t, pw, pl)), n, c)
                if c is not None and not leq(x.target(), c):
                    continue
                out.append(x)
                if len(out) > caps.max_objects:
                    raise CapExceeded(f"more than {caps.max_objects} objects", caps.max_objects)
    if c is not None and c.arity == 1 and not whites:
        out.append(ScOperation(Leaf(1), n, c))
    # labelled enumeration may revisit a canonical tree; keep the first
    return list(dict.fromkeys(out))


def contractions(x: ScOperation) -> list[ScOperation]:
    """All results of contracting one black-white edge."""
    out = []
    for path, v in walk(x.tree):
        if type(v) is not Vertex:
            continue
        for s, child in enumerate(v.children):
            if type(child) is not Vertex or child.black == v.black:
                continue
            dec = compose(v.decoration, s + 1, child.decoration)
            kids = v.children[:s] + child.children + v.children[s + 1:]
            label = v.label if not v.black else child.label
            merged = _vertex(dec, kids, False, label)
            out.append(ScOperation(tidy(replace_at(x.tree, path, merged)), x.color_bound, x.target_bound))
    return out


def raises(x: ScOperation) -> list[ScOperation]:
    """All results of raising one decoration to a cover-or-higher element."""
    out = []
    for path, v in walk(x.tree):
        if type(v) is not Vertex:
            continue
        for up in cgop.up_set(v.decoration):
            new = _vertex(up, v.children, v.black, v.label)
            y = ScOperation(tidy(replace_at(x.tree, path, new)), x.color_bound, x.target_bound)
            if x.target_bound is not None and not leq(y.target(), x.target_bound):
                continue
            out.append(y)
    return out


def slice_category(n: int, d, c: CompleteGraphOperation | None, caps: SliceCaps = SliceCaps()) -> FiniteCategory:
    """The thin slice category on the enumerated objects.

    Generators leaving the enumerated set (a contraction whose merged vertex
    exceeds ``max_arity``) are dropped.
    """
    objects = slice_objects(n, d, c, caps)
    index = {x: k for k, x in enumerate(objects)}
    gens = []
    for k, x in enumerate(objects):
        for y in contractions(x) + raises(x):
            j = index.get(y)
            if j is not None and j != k:
                gens.append((k, j))
    return FiniteCategory.from_generators(objects, gens, cap=caps.max_arrows)
