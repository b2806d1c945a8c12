"""The complexity map from Swiss cheese plus operations to relative complete
graph operations, and sweeps checking that it is a monotone lax morphism."""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from . import cgop
from .cgop import FULL, HALF, RelativeOperation, relative_compose, relative_leq
from .errors import InvariantViolation, NotRelated
from .trees import (
    Leaf,
    ScOperation,
    TreeCaps,
    Vertex,
    black_vertices,
    enumerate_b_operations,
    enumerate_c_operations,
    morphism_between,
    node_at,
    replace_at,
    sc_compose,
    vertices,
)


def _pair(tree, n: int, pi: tuple, pj: tuple) -> tuple[int, bool]:
    """(colour, i before j) for positions at paths pi, pj."""
    common = 0
    for a, b in zip(pi, pj):
        if a != b:
            break
        common += 1
    if common == len(pi):  # j sits above i
        return n + 1, False
    if common == len(pj):
        return n + 1, True
    v = node_at(tree, pi[:common])
    si, sj = pi[common] + 1, pj[common] + 1
    dec = v.decoration
    return dec.colour(si, sj), dec.sigma[si - 1] < dec.sigma[sj - 1]


def pair_table(x: ScOperation) -> tuple[tuple, dict]:
    """Input colours and the raw pairwise data {(i, j): (colour, i before j)}."""
    n = x.color_bound
    pos = x._positions
    k = len(pos)
    if sorted(pos) != list(range(1, k + 1)):
        raise InvariantViolation("positions are not numbered 1..k")
    paths = [pos[lab] for lab in range(1, k + 1)]
    inputs = tuple(FULL if type(node_at(x.tree, p)) is Vertex else HALF for p in paths)
    data = {}
    for i, j in itertools.combinations(range(k), 2):
        data[i + 1, j + 1] = _pair(x.tree, n, paths[i], paths[j])
    return inputs, data


def complexity(x: ScOperation) -> RelativeOperation:
    """Image of x under the complexity map; colour bound n + 1."""
    inputs, data = pair_table(x)
    k = len(inputs)
    mu = tuple(data[p][0] for p in itertools.combinations(range(1, k + 1), 2))
    sigma = cgop.sort_tournament(k, lambda i, j: data[i, j][1] if i < j else not data[j, i][1])
    underlying = cgop.CompleteGraphOperation._trusted(x.color_bound + 1, k, mu, sigma)
    if not cgop.relative_admissible(inputs, underlying):
        raise InvariantViolation(f"complexity image is not admissible: {underlying!r}")
    output = FULL if x.b_targeted else HALF
    return RelativeOperation._trusted(inputs, output, underlying)


def check_monotone(x: ScOperation, x2: ScOperation) -> bool:
    if morphism_between(x, x2) is None:
        raise NotRelated("the operations are not related by a black raise")
    return relative_leq(complexity(x), complexity(x2))


def laxity(x: ScOperation, i: int, y: ScOperation) -> str:
    """'equal', 'strict' or 'fail' for f(x o_i y) against f(x) o_i f(y)."""
    lhs = complexity(sc_compose(x, i, y))
    rhs = relative_compose(complexity(x), i, complexity(y))
    if lhs == rhs:
        return "equal"
    return "strict" if relative_leq(lhs, rhs) else "fail"


def check_laxity(x: ScOperation, i: int, y: ScOperation) -> bool:
    return laxity(x, i, y) != "fail"


# -- sweeps ----------------------------------------------------------------

@dataclass
class SweepReport:
    operations: int = 0
    admissible: int = 0
    sigma_ok: int = 0
    morphisms: int = 0
    laxity_pairs: int = 0
    strict_count: int = 0
    strict: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    complete: bool = True

    @property
    def ok(self) -> bool:
        return self.complete and not self.failures and self.strict_count > 0

    def as_dict(self) -> dict:
        return {
            "operations": self.operations, "admissible": self.admissible, "sigma_ok": self.sigma_ok,
            "morphisms": self.morphisms, "laxity_pairs": self.laxity_pairs,
            "strict_count": self.strict_count, "strict_example": [repr(s) for s in self.strict[:1]],
            "failures": [repr(f) for f in self.failures[:10]], "complete": self.complete,
            "seconds": round(self.seconds, 3), "ok": self.ok,
        }


def n_vertices(x: ScOperation) -> int:
    return len(vertices(x.tree))


def single_raises(x: ScOperation):
    """Every operation reached from x by raising one black decoration."""
    tree = x.tree
    for path, v in black_vertices(tree):
        for up in cgop.up_set(v.decoration):
            new = ScOperation(replace_at(tree, path, Vertex(up, v.children, True, None)), x.color_bound, x.target_bound)
            if x.b_targeted and not cgop.leq(new.target(), x.target_bound):
                continue
            yield new


def _operations(n: int, max_positions: int, max_vertices: int, max_arity: int):
    caps = TreeCaps(max_black=max_vertices, max_vertices=max_vertices, max_arity=max_arity)
    c_ops = {k: enumerate_c_operations(n, k, caps, up_to_relabelling=True) for k in range(max_positions + 1)}
    # the complexity map ignores the target bound, so bound = target suffices
    b_ops = [
        y for k in range(max_positions + 1) for leaves in range(max_arity + 1)
        for y in enumerate_b_operations(n, k, leaves, caps, up_to_relabelling=True, bounds="target")
    ]
    return c_ops, b_ops


def image_sweep(rep: SweepReport, ops) -> None:
    """Admissibility of images, transitivity of the pairwise order, monotonicity."""
    for x in ops:
        rep.operations += 1
        inputs, data = pair_table(x)
        k = len(inputs)
        try:
            sigma = cgop.sort_tournament(k, lambda i, j: data[i, j][1] if i < j else not data[j, i][1])
        except InvariantViolation:
            rep.failures.append(("sigma", x))
            continue
        rep.sigma_ok += 1
        mu = tuple(data[p][0] for p in itertools.combinations(range(1, k + 1), 2))
        if not cgop.relative_admissible(inputs, cgop.CompleteGraphOperation(x.color_bound + 1, k, mu, sigma)):
            rep.failures.append(("admissible", x))
            continue
        rep.admissible += 1
        fx = complexity(x)
        # single raises generate every morphism; leq is transitive
        for x2 in single_raises(x):
            rep.morphisms += 1
            if not relative_leq(fx, complexity(x2)):
                rep.failures.append(("monotone", x, x2))


def laxity_sweep(rep: SweepReport, n: int, c_ops: dict, b_ops: list, max_positions: int, max_vertices: int,
                 deadline: float | None = None) -> None:
    """Every composable pair whose composite stays within the bounds.

    Past ``deadline`` (a perf_counter value) the sweep stops and marks the
    report incomplete."""
    images = {}
    c_index: dict[tuple, list] = {}
    for k, ops in c_ops.items():
        for y in ops:
            images[id(y)] = complexity(y)
            c_index.setdefault((k, n_vertices(y)), []).append(y)
    b_index: dict[tuple, list] = {}
    for y in b_ops:
        images[id(y)] = complexity(y)
        b_index.setdefault((y.target_bound, y.arity, n_vertices(y)), []).append(y)
    below: dict = {}
    for x in [x for ops in c_ops.values() for x in ops] + b_ops:
        if deadline is not None and time.perf_counter() > deadline:
            rep.complete = False
            return
        kx, vx = x.arity, n_vertices(x)
        fx = images[id(x)]
        room_k = max_positions - kx + 1
        for i, path in sorted(x._positions.items()):
            slot = node_at(x.tree, path)
            if type(slot) is Leaf:
                room_v = max_vertices - vx
                cands = [(y, y) for (k, v), ys in c_index.items() if k <= room_k and v <= room_v for y in ys]
            else:
                room_v = max_vertices - vx + 1
                d = slot.decoration
                if d not in below:
                    below[d] = [key for key in b_index if key[0].arity == d.arity and cgop.leq(key[0], d)]
                cands = [
                    (ScOperation(y.tree, n, d), y)
                    for key in below[d] if key[1] <= room_k and key[2] <= room_v
                    for y in b_index[key]
                ]
            for y, y_orig in cands:
                rep.laxity_pairs += 1
                lhs = complexity(sc_compose(x, i, y))
                rhs = relative_compose(fx, i, images[id(y_orig)])
                if lhs == rhs:
                    continue
                if relative_leq(lhs, rhs):
                    rep.strict_count += 1
                    if len(rep.strict) < 5:
                        rep.strict.append((x, i, y))
                else:
                    rep.failures.append(("laxity", x, i, y))


def sweep(colour_bounds=(1, 2), max_positions: int = 5, max_vertices: int = 4, max_arity: int = 3,
          laxity_vertices: int | None = None, time_limit: float | None = None) -> SweepReport:
    """Exhaustive check of the complexity map up to relabelling of positions.

    Operations are taken one per orbit of the symmetric action (positions
    numbered in preorder); equivariance of the map and of the compositions
    is tested separately.  ``laxity_vertices`` lowers the vertex bound for
    the pair sweep only.  With ``time_limit`` (seconds) the pair sweep stops
    once the budget is spent and the report says it is incomplete.
    """
    rep = SweepReport()
    t0 = time.perf_counter()
    deadline = None if time_limit is None else t0 + time_limit
    lv = max_vertices if laxity_vertices is None else laxity_vertices
    for n in colour_bounds:
        c_ops, b_ops = _operations(n, max_positions, max_vertices, max_arity)
        image_sweep(rep, [x for ops in c_ops.values() for x in ops] + b_ops)
        if lv != max_vertices:
            c_ops, b_ops = _operations(n, max_positions, lv, max_arity)
        laxity_sweep(rep, n, c_ops, b_ops, max_positions, lv, deadline)
        if not rep.complete:
            break
    rep.seconds = time.perf_counter() - t0
    return rep
