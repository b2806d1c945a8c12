"""Complete graph operads K_n and relative complete graph operads.

An element of K_n(k) is a pair (mu, sigma): an edge colouring of the complete
graph on vertices 1..k by colours 1..n, plus a permutation sigma of 1..k.
Permutations are plain tuples of images, ``sigma[i - 1] == sigma(i)``, read as
"input i sits at position sigma(i) of a linear order".  Two vertices i, j
are in their natural order (the pair permutation is the identity) iff
sigma(i) < sigma(j).
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

from .errors import (
    AdmissibilityViolation,
    CapExceeded,
    ColourMismatch,
    IndexOutOfRange,
    InvariantViolation,
    ShapeMismatch,
)

Permutation = tuple  # tuple[int, ...], images of 1..k

IDENTITY2 = (1, 2)
SWAP2 = (2, 1)

DEFAULT_CAP = 10**6


# -- permutations ---------------------------------------------------------

def identity(k: int) -> Permutation:
    return tuple(range(1, k + 1))


def is_permutation(images: Sequence[int]) -> bool:
    return sorted(images) == list(range(1, len(images) + 1))


def perm_inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, v in enumerate(p, start=1):
        inv[v - 1] = i
    return tuple(inv)


def perm_compose(q: Permutation, p: Permutation) -> Permutation:
    """Return q∘p, i.e. i ↦ q(p(i))."""
    if len(q) != len(p):
        raise ShapeMismatch("permutations of different sizes")
    return tuple(q[v - 1] for v in p)


def perm_insert(s: Permutation, i: int, t: Permutation) -> Permutation:
    """Block substitution s ∘_i t, as in the associative operad.

    The block of t occupies positions i..i+len(t)-1 of the result and is
    placed, in the order t prescribes, at the slot s(i) held in s's order.
    """
    k, l = len(s), len(t)
    if not 1 <= i <= k:
        raise IndexOutOfRange(f"slot {i} outside 1..{k}")
    pivot = s[i - 1]

    def shift(v: int) -> int:
        return v + l - 1 if v > pivot else v

    return (
        tuple(shift(v) for v in s[: i - 1])
        + tuple(pivot + u - 1 for u in t)
        + tuple(shift(v) for v in s[i:])
    )


def sort_tournament(k: int, before) -> Permutation:
    """Turn a pairwise order into a permutation (position of each element).

    ``before(i, j)`` answers whether i precedes j.  Raises InvariantViolation
    if the relation is not a linear order.
    """
    order = sorted(range(1, k + 1), key=_cmp_key(before))
    sigma = [0] * k
    for pos, v in enumerate(order, start=1):
        sigma[v - 1] = pos
    for i, j in itertools.combinations(range(1, k + 1), 2):
        if before(i, j) != (sigma[i - 1] < sigma[j - 1]):
            raise InvariantViolation("pairwise order is cyclic")
    return tuple(sigma)


def _cmp_key(before):
    def cmp(i, j):
        if i == j:
            return 0
        return -1 if before(i, j) else 1

    return functools.cmp_to_key(cmp)


# -- K_n -------------------------------------------------------------------

def _pair_index(k: int, i: int, j: int) -> int:
    # row-major position of (i, j), i < j, in the upper triangle
    return (i - 1) * k - (i - 1) * i // 2 + (j - i - 1)


@dataclass(frozen=True)
class CompleteGraphOperation:
    color_bound: int
    arity: int
    mu: tuple
    sigma: Permutation

    def __post_init__(self):
        k = self.arity
        if self.color_bound < 1 or k < 0:
            raise InvariantViolation("colour bound must be >= 1, arity >= 0")
        if len(self.mu) != k * (k - 1) // 2:
            raise InvariantViolation(f"mu needs {k * (k - 1) // 2} entries, got {len(self.mu)}")
        if any(not 1 <= c <= self.color_bound for c in self.mu):
            raise InvariantViolation(f"mu entries must lie in 1..{self.color_bound}")
        if len(self.sigma) != k or not is_permutation(self.sigma):
            raise InvariantViolation(f"sigma is not a permutation of 1..{k}")

    @classmethod
    def _trusted(cls, color_bound: int, arity: int, mu: tuple, sigma: tuple) -> "CompleteGraphOperation":
        # internal results are correct by construction; skip validation
        op = object.__new__(cls)
        object.__setattr__(op, "color_bound", color_bound)
        object.__setattr__(op, "arity", arity)
        object.__setattr__(op, "mu", mu)
        object.__setattr__(op, "sigma", sigma)
        return op

    def colour(self, i: int, j: int) -> int:
        """Colour of the edge {i, j}, in either argument order."""
        if i > j:
            i, j = j, i
        return self.mu[_pair_index(self.arity, i, j)]

    def before(self, i: int, j: int) -> bool:
        return self.sigma[i - 1] < self.sigma[j - 1]

    def pair(self, i: int, j: int) -> tuple[int, Permutation]:
        """(colour, pair permutation) of vertices i and j taken in this order."""
        return self.colour(i, j), IDENTITY2 if self.before(i, j) else SWAP2

    def __repr__(self):
        return f"K{self.color_bound}(mu={list(self.mu)}, sigma={list(self.sigma)})"


def make(color_bound: int, mu: Sequence[int], sigma: Sequence[int] | None = None) -> CompleteGraphOperation:
    """Build an operation; the arity is inferred from sigma or from len(mu)."""
    if sigma is None:
        k = _arity_from_pairs(len(mu))
        sigma = identity(k)
    return CompleteGraphOperation(color_bound, len(sigma), tuple(mu), tuple(sigma))


def _arity_from_pairs(npairs: int) -> int:
    k = (1 + math.isqrt(1 + 8 * npairs)) // 2
    if k * (k - 1) // 2 != npairs:
        raise InvariantViolation(f"{npairs} is not a triangular number")
    # 0 pairs is ambiguous between arity 0 and 1; callers pass sigma then
    return k


def from_pairs(color_bound: int, k: int, data) -> CompleteGraphOperation:
    """Build an operation from a function (i, j) -> (colour, i_before_j).

    The pairwise order must be a linear order.
    """
    mu = tuple(data(i, j)[0] for i, j in itertools.combinations(range(1, k + 1), 2))
    sigma = sort_tournament(k, lambda i, j: data(i, j)[1] if i < j else not data(j, i)[1])
    return CompleteGraphOperation(color_bound, k, mu, sigma)


def unit(color_bound: int) -> CompleteGraphOperation:
    if color_bound < 1:
        raise InvariantViolation("colour bound must be >= 1")
    return CompleteGraphOperation(color_bound, 1, (), (1,))


def nullary(color_bound: int) -> CompleteGraphOperation:
    return CompleteGraphOperation(color_bound, 0, (), ())


def pair_data(op: CompleteGraphOperation, i: int, j: int) -> tuple[int, Permutation]:
    if not 1 <= i < j <= op.arity:
        raise IndexOutOfRange(f"need 1 <= i < j <= {op.arity}, got ({i}, {j})")
    return op.pair(i, j)


def _check_shape(a: CompleteGraphOperation, b: CompleteGraphOperation) -> None:
    if a.arity != b.arity or a.color_bound != b.color_bound:
        raise ShapeMismatch(f"cannot compare {a!r} with {b!r}")


def leq(a: CompleteGraphOperation, b: CompleteGraphOperation) -> bool:
    _check_shape(a, b)
    for i, j in itertools.combinations(range(1, a.arity + 1), 2):
        ca, cb = a.colour(i, j), b.colour(i, j)
        if ca < cb:
            continue
        if ca == cb and a.before(i, j) == b.before(i, j):
            continue
        return False
    return True


@functools.lru_cache(maxsize=None)
def _compose_plan(k: int, i: int, l: int) -> tuple:
    """For each pair of the composite: (comes from b, index into that mu)."""
    def origin(v: int) -> tuple[bool, int]:
        # (inside b's block, index in the operation the vertex came from)
        if v < i:
            return False, v
        if v < i + l:
            return True, v - i + 1
        return False, v - l + 1

    n = k + l - 1
    origins = [origin(v) for v in range(1, n + 1)]
    plan = []
    for u in range(n - 1):
        bu, ou = origins[u]
        for v in range(u + 1, n):
            bv, ov = origins[v]
            if bu and bv:
                plan.append((True, _pair_index(l, ou, ov)))
            else:
                x, y = (i if bu else ou), (i if bv else ov)
                if x > y:
                    x, y = y, x
                plan.append((False, _pair_index(k, x, y)))
    return tuple(plan)


def compose(a: CompleteGraphOperation, i: int, b: CompleteGraphOperation) -> CompleteGraphOperation:
    """Insert b into vertex i of a."""
    if a.color_bound != b.color_bound:
        raise ColourMismatch("colour bounds differ")
    k, l = a.arity, b.arity
    if not 1 <= i <= k:
        raise IndexOutOfRange(f"slot {i} outside 1..{k}")

    plan = _compose_plan(k, i, l)
    am, bm = a.mu, b.mu
    mu = tuple(bm[x] if inside else am[x] for inside, x in plan)
    return CompleteGraphOperation._trusted(a.color_bound, k + l - 1, mu, perm_insert(a.sigma, i, b.sigma))


@functools.lru_cache(maxsize=None)
def _act_plan(pinv: Permutation) -> tuple:
    k = len(pinv)
    return tuple(_pair_index(k, *sorted((pinv[u - 1], pinv[v - 1])))
                 for u, v in itertools.combinations(range(1, k + 1), 2))


def act(p: Permutation, op: CompleteGraphOperation) -> CompleteGraphOperation:
    """Relabel vertex i as p(i)."""
    if len(p) != op.arity or not is_permutation(p):
        raise ShapeMismatch(f"permutation of size {len(p)} cannot act on arity {op.arity}")
    pinv = perm_inverse(p)
    m = op.mu
    mu = tuple(m[x] for x in _act_plan(pinv))
    return CompleteGraphOperation._trusted(op.color_bound, op.arity, mu, perm_compose(op.sigma, pinv))


def restrict(op: CompleteGraphOperation, vertices: Sequence[int]) -> CompleteGraphOperation:
    """Full sub-graph on the given vertices, renumbered in the given order."""
    k = len(vertices)
    return from_pairs(
        op.color_bound,
        k,
        lambda a, b: (op.colour(vertices[a - 1], vertices[b - 1]), op.before(vertices[a - 1], vertices[b - 1])),
    )


def count(color_bound: int, arity: int) -> int:
    return color_bound ** (arity * (arity - 1) // 2) * math.factorial(arity)


def iter_elements(color_bound: int, arity: int) -> Iterator[CompleteGraphOperation]:
    npairs = arity * (arity - 1) // 2
    perms = list(itertools.permutations(range(1, arity + 1)))
    for mu in itertools.product(range(1, color_bound + 1), repeat=npairs):
        for sigma in perms:
            yield CompleteGraphOperation(color_bound, arity, mu, sigma)


def enumerate_ops(color_bound: int, arity: int, cap: int = DEFAULT_CAP) -> list[CompleteGraphOperation]:
    """All elements of K_color_bound(arity), lexicographic in (mu, sigma)."""
    total = count(color_bound, arity)
    if total > cap:
        raise CapExceeded(f"K_{color_bound}({arity}) has {total} elements, cap is {cap}", cap)
    return list(iter_elements(color_bound, arity))


def canonical_ops(color_bound: int, arity: int) -> list[CompleteGraphOperation]:
    """Elements with identity sigma; one per orbit of the symmetric action."""
    npairs = arity * (arity - 1) // 2
    sigma = identity(arity)
    return [
        CompleteGraphOperation(color_bound, arity, mu, sigma)
        for mu in itertools.product(range(1, color_bound + 1), repeat=npairs)
    ]


def up_set(op: CompleteGraphOperation) -> list[CompleteGraphOperation]:
    """Elements strictly above op, generated per permutation."""
    n, k = op.color_bound, op.arity
    pairs = list(itertools.combinations(range(1, k + 1), 2))
    out = []
    for sigma in itertools.permutations(range(1, k + 1)):
        choices = []
        for i, j in pairs:
            m = op.colour(i, j)
            same = (sigma[i - 1] < sigma[j - 1]) == op.before(i, j)
            choices.append(range(m if same else m + 1, n + 1))
        for mu in itertools.product(*choices):
            cand = CompleteGraphOperation._trusted(n, k, mu, sigma)
            if cand != op:
                out.append(cand)
    return out


# -- relative complete graph operad ----------------------------------------

class Colour(str, Enum):
    FULL = "f"
    HALF = "h"


FULL, HALF = Colour.FULL, Colour.HALF


def relative_admissible(inputs: Sequence[Colour], op: CompleteGraphOperation) -> bool:
    """Check the half-disk constraints, with n = op.color_bound - 1."""
    if len(inputs) != op.arity:
        raise ShapeMismatch(f"{len(inputs)} input colours for arity {op.arity}")
    n = op.color_bound - 1
    for i, j in itertools.combinations(range(1, op.arity + 1), 2):
        ci, cj = inputs[i - 1], inputs[j - 1]
        ident = op.before(i, j)
        constrained = (
            (ci == HALF and cj == HALF)
            or (ci == FULL and cj == HALF and ident)
            or (ci == HALF and cj == FULL and not ident)
        )
        if constrained and op.colour(i, j) > n:
            return False
    return True


@dataclass(frozen=True)
class RelativeOperation:
    inputs: tuple
    output: Colour
    underlying: CompleteGraphOperation

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(Colour(c) for c in self.inputs))
        object.__setattr__(self, "output", Colour(self.output))
        if self.underlying.color_bound < 2:
            raise InvariantViolation("relative operations need colour bound n + 1 >= 2")
        if self.output == FULL and HALF in self.inputs:
            raise InvariantViolation("an operation with full output cannot take half inputs")
        if not relative_admissible(self.inputs, self.underlying):
            raise InvariantViolation("half-disk constraint violated")

    @classmethod
    def _trusted(cls, inputs: tuple, output: Colour, underlying: CompleteGraphOperation) -> "RelativeOperation":
        # caller has already checked admissibility
        obj = object.__new__(cls)
        object.__setattr__(obj, "inputs", inputs)
        object.__setattr__(obj, "output", output)
        object.__setattr__(obj, "underlying", underlying)
        return obj

    @property
    def arity(self) -> int:
        return self.underlying.arity

    def __repr__(self):
        ins = ",".join(c.value for c in self.inputs)
        return f"RK({ins};{self.output.value} | {self.underlying!r})"


def relative_unit(color_bound: int, colour: Colour) -> RelativeOperation:
    return RelativeOperation((colour,), colour, unit(color_bound))


def relative_leq(a: RelativeOperation, b: RelativeOperation) -> bool:
    if a.inputs != b.inputs or a.output != b.output:
        raise ShapeMismatch("relative operations live in different hom-posets")
    return leq(a.underlying, b.underlying)


def relative_compose(a: RelativeOperation, i: int, b: RelativeOperation) -> RelativeOperation:
    if not 1 <= i <= a.arity:
        raise IndexOutOfRange(f"slot {i} outside 1..{a.arity}")
    if b.output != a.inputs[i - 1]:
        raise ColourMismatch(f"slot {i} has colour {a.inputs[i - 1].value}, got output {b.output.value}")
    underlying = compose(a.underlying, i, b.underlying)
    inputs = a.inputs[: i - 1] + b.inputs + a.inputs[i:]
    if not relative_admissible(inputs, underlying):
        raise AdmissibilityViolation(f"{a!r} ∘_{i} {b!r} is inadmissible")
    return RelativeOperation._trusted(inputs, a.output, underlying)


def relative_act(p: Permutation, x: RelativeOperation) -> RelativeOperation:
    pinv = perm_inverse(p)
    inputs = tuple(x.inputs[pinv[v - 1] - 1] for v in range(1, len(p) + 1))
    return RelativeOperation(inputs, x.output, act(p, x.underlying))
