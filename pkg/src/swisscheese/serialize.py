"""JSON encodings.  Rationals are strings "p/q" (or "p"); everything else is
plain JSON.  Every ``*_to_json`` has an inverse ``*_from_json``.

Trees are flattened in depth-first preorder::

    {"colorBound": n,
     "nodes": [{"children": [...], "polarity": "white"|"black"|"leaf",
                "decoration": op | null}, ...],
     "numbering": [label or null per node],
     "leafOrder": [combing label per leaf, in planar order],
     "targetBound": op | null}

Node 0 is the root; ``children`` lists node indices.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from . import cgop
from .cgop import FULL, HALF, CompleteGraphOperation, RelativeOperation
from .errors import OperadError, ShapeMismatch
from .hochschild import CommutativeAlgebra, SimplexMap
from .trees import Leaf, ScOperation, Vertex


class MalformedInput(OperadError):
    code = "malformed-input"


def dumps(obj) -> str:
    """Deterministic encoding: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def sha256(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


def _need(obj, key):
    if not isinstance(obj, dict) or key not in obj:
        raise MalformedInput(f"missing field {key!r}")
    return obj[key]


def rational_to_json(x) -> str:
    return str(Fraction(x))


def rational_from_json(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise MalformedInput(f"rational expected, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad rational {s!r}") from exc


# -- operations ------------------------------------------------------------------

def op_to_json(op: CompleteGraphOperation) -> dict:
    return {"colorBound": op.color_bound, "arity": op.arity, "mu": list(op.mu), "sigma": list(op.sigma)}


def op_from_json(obj) -> CompleteGraphOperation:
    n = _need(obj, "colorBound")
    mu = _need(obj, "mu")
    sigma = obj.get("sigma")
    if not isinstance(n, int) or not isinstance(mu, list):
        raise MalformedInput("colorBound must be an integer and mu a list")
    op = cgop.make(n, mu, tuple(sigma) if sigma is not None else None)
    if "arity" in obj and obj["arity"] != op.arity:
        raise MalformedInput("arity disagrees with mu")
    return op


def _colour_from_json(s):
    if s in ("full", "f"):
        return FULL
    if s in ("half", "h"):
        return HALF
    raise MalformedInput(f"unknown colour {s!r}")


def colour_to_json(c) -> str:
    return "full" if c is FULL else "half"


def relative_to_json(x: RelativeOperation) -> dict:
    return {"inputs": [colour_to_json(c) for c in x.inputs], "output": colour_to_json(x.output),
            "operation": op_to_json(x.underlying)}


def relative_from_json(obj) -> RelativeOperation:
    return RelativeOperation(tuple(_colour_from_json(c) for c in _need(obj, "inputs")),
                             _colour_from_json(_need(obj, "output")), op_from_json(_need(obj, "operation")))


# -- trees -------------------------------------------------------------------------

def tree_to_json(x: ScOperation) -> dict:
    nodes, numbering, leaf_order = [], [], []

    def go(t) -> int:
        idx = len(nodes)
        nodes.append(None)
        numbering.append(None)
        if type(t) is Leaf:
            nodes[idx] = {"children": [], "polarity": "leaf", "decoration": None}
            leaf_order.append(t.label)
            if not x.b_targeted:
                numbering[idx] = t.label
            return idx
        kids = [go(c) for c in t.children]
        nodes[idx] = {"children": kids, "polarity": "black" if t.black else "white",
                      "decoration": op_to_json(t.decoration)}
        numbering[idx] = t.label
        return idx

    go(x.tree)
    return {"colorBound": x.color_bound, "nodes": nodes, "numbering": numbering, "leafOrder": leaf_order,
            "targetBound": op_to_json(x.target_bound) if x.b_targeted else None}


def tree_from_json(obj) -> ScOperation:
    n = _need(obj, "colorBound")
    nodes = _need(obj, "nodes")
    numbering = obj.get("numbering") or [None] * len(nodes)
    leaf_order = iter(_need(obj, "leafOrder"))
    bound = obj.get("targetBound")
    if not nodes or len(numbering) != len(nodes):
        raise MalformedInput("nodes and numbering must be non-empty and of equal length")
    seen = set()

    def build(i: int):
        if not isinstance(i, int) or not 0 <= i < len(nodes) or i in seen:
            raise MalformedInput(f"bad node reference {i!r}")
        seen.add(i)
        node = nodes[i]
        pol = _need(node, "polarity")
        if pol == "leaf":
            if node.get("children"):
                raise MalformedInput("a leaf has no children")
            try:
                return Leaf(next(leaf_order))
            except StopIteration:
                raise MalformedInput("leafOrder is shorter than the number of leaves") from None
        if pol not in ("white", "black"):
            raise MalformedInput(f"unknown polarity {pol!r}")
        kids = tuple(build(c) for c in _need(node, "children"))
        dec = op_from_json(_need(node, "decoration"))
        return Vertex(dec, kids, pol == "black", numbering[i])

    tree = build(0)
    if len(seen) != len(nodes):
        raise MalformedInput("unreachable nodes")
    out = ScOperation(tree, n, op_from_json(bound) if bound is not None else None)
    out.check()
    return out


# -- algebras -------------------------------------------------------------------------

def algebra_to_json(A: CommutativeAlgebra) -> dict:
    return {"dim": A.dim, "unit": [rational_to_json(x) for x in A.unit],
            "structure": [[[rational_to_json(x) for x in row] for row in plane] for plane in A.structure]}


def algebra_from_json(obj) -> CommutativeAlgebra:
    d = _need(obj, "dim")
    unit = [rational_from_json(x) for x in _need(obj, "unit")]
    st = _need(obj, "structure")
    if not isinstance(d, int) or d < 1 or not isinstance(st, list):
        raise MalformedInput("dim must be a positive integer and structure a nested list")
    try:
        structure = [[[rational_from_json(x) for x in row] for row in plane] for plane in st]
        A = CommutativeAlgebra(d, tuple(unit), structure)
    except (TypeError, ShapeMismatch) as exc:
        raise MalformedInput(f"structure constants: {exc}") from exc
    A.check()
    return A


def simplex_map_from_json(obj) -> SimplexMap:
    if isinstance(obj, list):
        return SimplexMap(len(obj) - 1, max(obj) if obj else 0, tuple(obj))
    return SimplexMap(_need(obj, "source"), _need(obj, "target"), tuple(_need(obj, "values")))


def simplex_map_to_json(f: SimplexMap) -> dict:
    return {"source": f.source, "target": f.target, "values": list(f.values)}
