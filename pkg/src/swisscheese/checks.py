"""Exhaustive and randomized operad-axiom suites for K_n.

Each suite returns a ``SuiteReport``; a failure list is kept (truncated) so
that a red run says which instance broke.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache

from . import cgop
from .cgop import CompleteGraphOperation, act, compose, leq, perm_insert, identity


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, good: bool, instance) -> None:
        self.checked += 1
        if not good and len(self.failures) < 20:
            self.failures.append(instance)

    def as_dict(self) -> dict:
        return {"name": self.name, "checked": self.checked, "ok": self.ok,
                "failures": [repr(f) for f in self.failures]}


@lru_cache(maxsize=None)
def _c(a: CompleteGraphOperation, i: int, b: CompleteGraphOperation) -> CompleteGraphOperation:
    return compose(a, i, b)


def _elements(color_bound: int, max_arity: int) -> list[CompleteGraphOperation]:
    return [op for k in range(max_arity + 1) for op in cgop.iter_elements(color_bound, k)]


def check_associativity(a, b, c, report: SuiteReport) -> None:
    for i in range(1, a.arity + 1):
        ab = _c(a, i, b)
        for j in range(1, b.arity + 1):
            # sequential
            report.record(_c(ab, i + j - 1, c) == _c(a, i, _c(b, j, c)), ("seq", a, i, b, j, c))
        for j in range(i + 1, a.arity + 1):
            # parallel: c goes into slot j of a, b into slot i
            report.record(
                _c(ab, j + b.arity - 1, c) == _c(_c(a, j, c), i, b),
                ("par", a, i, b, j, c),
            )


def check_units(a: CompleteGraphOperation, report: SuiteReport) -> None:
    u = cgop.unit(a.color_bound)
    report.record(_c(u, 1, a) == a, ("left unit", a))
    for i in range(1, a.arity + 1):
        report.record(_c(a, i, u) == a, ("right unit", a, i))


def check_equivariance(a, b, p, q, report: SuiteReport) -> None:
    for i in range(1, a.arity + 1):
        lhs = _c(act(p, a), p[i - 1], b)
        rhs = act(perm_insert(p, i, identity(b.arity)), _c(a, i, b))
        report.record(lhs == rhs, ("outer", a, i, b, p))
        lhs = _c(a, i, act(q, b))
        rhs = act(perm_insert(identity(a.arity), i, q), _c(a, i, b))
        report.record(lhs == rhs, ("inner", a, i, b, q))


def exhaustive_axioms(color_bounds=(1, 2), max_arity: int = 3) -> list[SuiteReport]:
    assoc, units, equiv = SuiteReport("associativity"), SuiteReport("unit"), SuiteReport("equivariance")
    for n in color_bounds:
        elems = _elements(n, max_arity)
        for a in elems:
            check_units(a, units)
        for a, b, c in itertools.product(elems, repeat=3):
            if a.arity == 0 or a.arity + b.arity - 1 > max_arity + 1:
                continue
            check_associativity(a, b, c, assoc)
        for a, b in itertools.product(elems, repeat=2):
            if a.arity == 0:
                continue
            for p in itertools.permutations(range(1, a.arity + 1)):
                check_equivariance(a, b, p, tuple(reversed(identity(b.arity))), equiv)
            for q in itertools.permutations(range(1, b.arity + 1)):
                check_equivariance(a, b, identity(a.arity), q, equiv)
    return [assoc, units, equiv]


def _random_op(rng: random.Random, n: int, k: int) -> CompleteGraphOperation:
    mu = tuple(rng.randint(1, n) for _ in range(k * (k - 1) // 2))
    sigma = list(range(1, k + 1))
    rng.shuffle(sigma)
    return CompleteGraphOperation(n, k, mu, tuple(sigma))


def randomized_axioms(color_bound: int = 3, max_arity: int = 4, samples: int = 1000, seed: int = 0) -> list[SuiteReport]:
    rng = random.Random(seed)
    assoc, units, equiv = SuiteReport("associativity"), SuiteReport("unit"), SuiteReport("equivariance")
    for _ in range(samples):
        a = _random_op(rng, color_bound, rng.randint(1, max_arity))
        b = _random_op(rng, color_bound, rng.randint(0, max_arity))
        c = _random_op(rng, color_bound, rng.randint(0, max_arity))
        check_associativity(a, b, c, assoc)
        check_units(a, units)
        p = list(range(1, a.arity + 1))
        rng.shuffle(p)
        q = list(range(1, b.arity + 1))
        rng.shuffle(q)
        check_equivariance(a, b, tuple(p), tuple(q), equiv)
    return [assoc, units, equiv]


def poset_axioms(elems: list[CompleteGraphOperation]) -> SuiteReport:
    report = SuiteReport("partial order")
    for a in elems:
        report.record(leq(a, a), ("reflexive", a))
    for a, b in itertools.product(elems, repeat=2):
        if a.arity != b.arity or a.color_bound != b.color_bound:
            continue
        if a != b:
            report.record(not (leq(a, b) and leq(b, a)), ("antisymmetric", a, b))
    by_arity: dict[int, list] = {}
    for a in elems:
        by_arity.setdefault((a.color_bound, a.arity), []).append(a)
    for group in by_arity.values():
        up = {a: [b for b in group if leq(a, b)] for a in group}
        for a in group:
            for b in up[a]:
                for c in up[b]:
                    report.record(leq(a, c), ("transitive", a, b, c))
    return report


def monotonicity(color_bound: int = 2, max_arity: int = 3) -> SuiteReport:
    """compose is monotone in each argument (checked on covering-free pairs)."""
    report = SuiteReport("compose monotone")
    elems = _elements(color_bound, max_arity)
    by_arity: dict[int, list] = {}
    for a in elems:
        by_arity.setdefault(a.arity, []).append(a)
    le_pairs = {k: [(a, b) for a in g for b in g if leq(a, b)] for k, g in by_arity.items()}
    for k, pairs in le_pairs.items():
        if k == 0:
            continue
        for (a, a2) in pairs:
            for b in elems:
                if k + b.arity - 1 > max_arity:
                    continue
                for i in range(1, k + 1):
                    report.record(leq(_c(a, i, b), _c(a2, i, b)), ("left", a, a2, i, b))
        for (b, b2) in pairs:
            for a in elems:
                if a.arity == 0 or a.arity + k - 1 > max_arity:
                    continue
                for i in range(1, a.arity + 1):
                    report.record(leq(_c(a, i, b), _c(a, i, b2)), ("right", a, i, b, b2))
    return report


def relative_closure(color_bound: int = 2, max_arity: int = 3) -> SuiteReport:
    """Admissible operations compose to admissible operations."""
    report = SuiteReport("admissibility closed under composition")
    rel = []
    for k in range(max_arity + 1):
        for op in cgop.iter_elements(color_bound, k):
            for word in itertools.product((cgop.FULL, cgop.HALF), repeat=k):
                for out in (cgop.FULL, cgop.HALF):
                    if out == cgop.FULL and cgop.HALF in word:
                        continue
                    if cgop.relative_admissible(word, op):
                        rel.append(cgop.RelativeOperation(word, out, op))
    for a in rel:
        for b in rel:
            if a.arity == 0 or a.arity + b.arity - 1 > max_arity:
                continue
            for i in range(1, a.arity + 1):
                if a.inputs[i - 1] != b.output:
                    continue
                u = _c(a.underlying, i, b.underlying)
                word = a.inputs[: i - 1] + b.inputs + a.inputs[i:]
                report.record(cgop.relative_admissible(word, u), (a, i, b))
    return report


# -- plus construction ---------------------------------------------------------

def _slot_fits(x, i: int, y) -> bool:
    from .trees import Vertex, node_at
    slot = node_at(x.tree, x.positions()[i])
    if type(slot) is Vertex:
        return y.b_targeted and y.target_bound == slot.decoration
    return not y.b_targeted


def plus_operations(n: int, max_positions: int = 2, max_vertices: int = 2, max_arity: int = 2) -> list:
    """Small fully labelled operations of both kinds (canonical bounds)."""
    from .trees import TreeCaps, enumerate_b_operations, enumerate_c_operations
    caps = TreeCaps(max_black=max_vertices, max_vertices=max_vertices, max_arity=max_arity)
    out = []
    for k in range(max_positions + 1):
        out.extend(enumerate_c_operations(n, k, caps))
        for leaves in range(max_arity + 1):
            out.extend(enumerate_b_operations(n, k, leaves, caps))
    return out


def plus_axioms(elems: list, max_vertices: int = 4) -> list[SuiteReport]:
    """Associativity, units and equivariance of the plus-construction composition."""
    from .trees import b_unit, c_unit, node_at, sc_act, sc_compose, vertices, Vertex
    assoc, units, equiv = SuiteReport("associativity"), SuiteReport("unit"), SuiteReport("equivariance")
    size = {x: len(vertices(x.tree)) for x in elems}
    for x in elems:
        n = x.color_bound
        if x.b_targeted:
            units.record(sc_compose(b_unit(x.target_bound), 1, x) == x.tidy(), ("left unit", x))
        for i, path in x.positions().items():
            slot = node_at(x.tree, path)
            u = b_unit(slot.decoration) if type(slot) is Vertex else c_unit(n)
            units.record(sc_compose(x, i, u) == x.tidy(), ("right unit", x, i))
    for x, y in itertools.product(elems, repeat=2):
        if x.color_bound != y.color_bound or size[x] + size[y] > max_vertices + 1:
            continue
        for i in range(1, x.arity + 1):
            if not _slot_fits(x, i, y):
                continue
            xy = sc_compose(x, i, y)
            for p in itertools.permutations(range(1, x.arity + 1)):
                lhs = sc_compose(sc_act(p, x), p[i - 1], y)
                rhs = sc_act(perm_insert(p, i, identity(y.arity)), xy)
                equiv.record(lhs.tidy() == rhs.tidy(), ("outer", x, i, y, p))
            for q in itertools.permutations(range(1, y.arity + 1)):
                lhs = sc_compose(x, i, sc_act(q, y))
                rhs = sc_act(perm_insert(identity(x.arity), i, q), xy)
                equiv.record(lhs.tidy() == rhs.tidy(), ("inner", x, i, y, q))
            for z in elems:
                if z.color_bound != x.color_bound or size[x] + size[y] + size[z] > max_vertices + 2:
                    continue
                for j in range(1, y.arity + 1):
                    if _slot_fits(y, j, z):
                        assoc.record(
                            sc_compose(xy, i + j - 1, z) == sc_compose(x, i, sc_compose(y, j, z)),
                            ("seq", x, i, y, j, z),
                        )
                for j in range(i + 1, x.arity + 1):
                    if _slot_fits(x, j, z):
                        assoc.record(
                            sc_compose(xy, j + y.arity - 1, z) == sc_compose(sc_compose(x, j, z), i, y),
                            ("par", x, i, y, j, z),
                        )
    return [assoc, units, equiv]
