"""Simplicial spheres, the Loday-type functor L(A, M) and the
Hochschild-Pirashvili cochain complex of a commutative algebra, together with
the functor alpha_n from the simplex category to Delta K_n and the evaluation
of the endomorphism operad on it.

Conventions
-----------
* ``SimplexMap(l, m, values)`` is a weakly increasing map [l] -> [m].
* ``S^n(m)`` is the pointed set {*} + (n-subsets of 1..m); the basepoint has
  index 0 and the subsets are indexed 1.. in lexicographic order.
* A vector of Hom(A^{(x)r}, M) has coordinates indexed by (I, k) with I in
  {0..dim A - 1}^r and k in {0..dim M - 1}; the flat index is
  index(I) * dim M + k where index(I) reads I as a base-(dim A) numeral,
  most significant digit first.
* Linear maps are ``RationalMatrix`` values; row r holds the coefficients of
  output coordinate r.  All arithmetic is exact (``fractions.Fraction``).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import cgop
from .cgop import CompleteGraphOperation, leq
from .errors import CapExceeded, InvariantViolation, ShapeMismatch
from .linalg import matmul_sparse, rank_rational
from .trees import Leaf, Node, Vertex, _vertex, replace_at, shape, target, tidy, walk

DEFAULT_SPACE_CAP = 1 << 16
STAR = "*"


# -- the simplex category and pointed sets -------------------------------------

@dataclass(frozen=True)
class SimplexMap:
    source: int
    target: int
    values: tuple

    def __post_init__(self):
        v = self.values
        if len(v) != self.source + 1:
            raise ShapeMismatch(f"a map out of [{self.source}] needs {self.source + 1} values")
        if any(not 0 <= x <= self.target for x in v) or any(a > b for a, b in zip(v, v[1:])):
            raise InvariantViolation(f"{v} is not weakly increasing into [{self.target}]")

    def __call__(self, i: int) -> int:
        return self.values[i]

    def then(self, g: "SimplexMap") -> "SimplexMap":
        """g after self."""
        if g.source != self.target:
            raise ShapeMismatch("maps are not composable")
        return SimplexMap(self.source, g.target, tuple(g.values[x] for x in self.values))


def simplex_identity(m: int) -> SimplexMap:
    return SimplexMap(m, m, tuple(range(m + 1)))


def coface(m: int, i: int) -> SimplexMap:
    """The injection [m] -> [m+1] missing i."""
    return SimplexMap(m, m + 1, tuple(j if j < i else j + 1 for j in range(m + 1)))


def simplex_maps(l: int, m: int) -> list[SimplexMap]:
    return [SimplexMap(l, m, v) for v in itertools.combinations_with_replacement(range(m + 1), l + 1)]


@dataclass(frozen=True)
class PointedSetMap:
    """A map {0..source} -> {0..target} fixing the basepoint 0."""
    source: int
    target: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.source + 1 or self.values[0] != 0:
            raise InvariantViolation("a pointed map must send 0 to 0")
        if any(not 0 <= x <= self.target for x in self.values):
            raise InvariantViolation("value outside the target")

    def then(self, g: "PointedSetMap") -> "PointedSetMap":
        """g after self."""
        if g.source != self.target:
            raise ShapeMismatch("maps are not composable")
        return PointedSetMap(self.source, g.target, tuple(g.values[x] for x in self.values))

    def fibre(self, t: int) -> list[int]:
        return [s for s in range(1, self.source + 1) if self.values[s] == t]

    def wedge(self, other: "PointedSetMap") -> "PointedSetMap":
        """Pointed union, other's points placed after self's."""
        shifted = tuple(0 if x == 0 else x + self.target for x in other.values[1:])
        return PointedSetMap(self.source + other.source, self.target + other.target, self.values + shifted)


def pointed_identity(k: int) -> PointedSetMap:
    return PointedSetMap(k, k, tuple(range(k + 1)))


EPSILON = PointedSetMap(0, 1, (0,))
MU = PointedSetMap(2, 1, (0, 1, 1))
RHO = PointedSetMap(1, 0, (0, 0))


# -- simplicial spheres --------------------------------------------------------

@lru_cache(maxsize=None)
def _subsets(n: int, m: int) -> tuple:
    return tuple(itertools.combinations(range(1, m + 1), n))


@lru_cache(maxsize=None)
def _subset_index(n: int, m: int) -> dict:
    return {s: k for k, s in enumerate(_subsets(n, m), start=1)}


def sphere_on_objects(n: int, m: int) -> list:
    """[STAR] followed by the n-subsets of 1..m in lexicographic order."""
    if n < 1 or m < 0:
        raise ShapeMismatch("need n >= 1 and m >= 0")
    return [STAR] + list(_subsets(n, m))


def circle_value(f: SimplexMap, k: int):
    """The j with f(j-1) < k <= f(j), or STAR."""
    for j in range(1, f.source + 1):
        if f.values[j - 1] < k <= f.values[j]:
            return j
    return STAR


def sphere_on_morphism(n: int, f: SimplexMap) -> PointedSetMap:
    """S^n(f) : S^n(m) -> S^n(l) for f : [l] -> [m]."""
    l, m = f.source, f.target
    circle = [None] + [circle_value(f, k) for k in range(1, m + 1)]
    index = _subset_index(n, l)
    values = [0]
    for subset in _subsets(n, m):
        image = {circle[x] for x in subset}
        if STAR in image or len(image) != n:
            values.append(0)
        else:
            values.append(index[tuple(sorted(image))])
    return PointedSetMap(comb(m, n), comb(l, n), tuple(values))


# -- algebras, modules, matrices -------------------------------------------------

def _frac(x) -> Fraction:
    return Fraction(x)


@dataclass(frozen=True)
class CommutativeAlgebra:
    """x_i x_j = sum_k structure[i][j][k] x_k over the rationals."""
    dim: int
    unit: tuple
    structure: tuple
    labels: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "unit", tuple(_frac(x) for x in self.unit))
        object.__setattr__(self, "structure", tuple(
            tuple(tuple(_frac(x) for x in row) for row in plane) for plane in self.structure))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"x{i}" for i in range(self.dim)))
        d = self.dim
        if len(self.unit) != d or len(self.structure) != d or any(
                len(p) != d or any(len(r) != d for r in p) for p in self.structure):
            raise ShapeMismatch("structure constants do not match the dimension")

    def mul(self, u, v) -> tuple:
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.structure[i][j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def basis(self, i: int) -> tuple:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def check(self) -> None:
        """Commutativity, associativity and the unit law, exactly."""
        e = [self.basis(i) for i in range(self.dim)]
        for i, j in itertools.product(range(self.dim), repeat=2):
            if self.structure[i][j] != self.structure[j][i]:
                raise InvariantViolation("product is not commutative")
            if self.mul(self.unit, e[i]) != e[i]:
                raise InvariantViolation("unit law fails")
            for k in range(self.dim):
                if self.mul(self.mul(e[i], e[j]), e[k]) != self.mul(e[i], self.mul(e[j], e[k])):
                    raise InvariantViolation("product is not associative")


def rationals() -> CommutativeAlgebra:
    return CommutativeAlgebra(1, (1,), (((1,),),), ("1",))


def dual_numbers() -> CommutativeAlgebra:
    """Q[x]/(x^2) on the basis 1, x."""
    return CommutativeAlgebra(2, (1, 0), (((1, 0), (0, 1)), ((0, 1), (0, 0))), ("1", "x"))


def group_algebra_c2() -> CommutativeAlgebra:
    """Q[C_2] on the basis e, g with g^2 = e."""
    return CommutativeAlgebra(2, (1, 0), (((1, 0), (0, 1)), ((0, 1), (1, 0))), ("e", "g"))


def truncated_polynomials(k: int) -> CommutativeAlgebra:
    """Q[x]/(x^k) on the basis 1, x, ..., x^(k-1)."""
    st = [[[int(a + b == c) for c in range(k)] for b in range(k)] for a in range(k)]
    return CommutativeAlgebra(k, tuple(int(i == 0) for i in range(k)), st, tuple(f"x^{i}" for i in range(k)))


@dataclass(frozen=True)
class Module:
    """x_i . y_k = sum_k' action[i][k][k'] y_k'."""
    algebra: CommutativeAlgebra
    dim: int
    action: tuple

    def act(self, a, m) -> tuple:
        out = [Fraction(0)] * self.dim
        for i, x in enumerate(a):
            if not x:
                continue
            for k, y in enumerate(m):
                if not y:
                    continue
                for k2, c in enumerate(self.action[i][k]):
                    if c:
                        out[k2] += x * y * c
        return tuple(out)


def regular_module(A: CommutativeAlgebra) -> Module:
    return Module(A, A.dim, A.structure)


@dataclass
class RationalMatrix:
    nrows: int
    ncols: int
    rows: list  # list of {column: Fraction}, zero entries omitted

    def __post_init__(self):
        self.rows = [{c: Fraction(v) for c, v in r.items() if v} for r in self.rows]

    def __eq__(self, other) -> bool:
        return (isinstance(other, RationalMatrix) and (self.nrows, self.ncols) == (other.nrows, other.ncols)
                and self.rows == other.rows)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        out = []
        for a, b in zip(self.rows, other.rows):
            r = dict(a)
            for c, v in b.items():
                r[c] = r.get(c, 0) + v
            out.append(r)
        return RationalMatrix(self.nrows, self.ncols, out)

    def scaled(self, s) -> "RationalMatrix":
        return RationalMatrix(self.nrows, self.ncols, [{c: v * s for c, v in r.items()} for r in self.rows])

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ShapeMismatch("matrix sizes do not match")
        return RationalMatrix(self.nrows, other.ncols, matmul_sparse(self.rows, other.rows))

    def is_zero(self) -> bool:
        return not any(self.rows)

    def rank(self) -> int:
        return rank_rational(self.rows)

    def dense(self) -> list[list[Fraction]]:
        return [[r.get(c, Fraction(0)) for c in range(self.ncols)] for r in self.rows]


def hom_dim(A: CommutativeAlgebra, M: Module, r: int) -> int:
    return A.dim ** r * M.dim


@dataclass(frozen=True)
class MultilinearMap:
    """An element of Hom(A^{(x)r}, A); coords[(I, k)] for nonzero entries."""
    arity: int
    dim: int
    coords: dict = field(hash=False)

    def __call__(self, I: tuple) -> tuple:
        return tuple(self.coords.get((tuple(I), k), Fraction(0)) for k in range(self.dim))


# -- the functor L(A, M) -------------------------------------------------------------

def L_on_map(A: CommutativeAlgebra, M: Module | None, g: PointedSetMap,
             cap: int = DEFAULT_SPACE_CAP) -> RationalMatrix:
    """L(g) : Hom(A^{(x)t}, M) -> Hom(A^{(x)s}, M) for g : s -> t.

    L(g)(phi)(a_1..a_s) = (prod of a_u over the basepoint fibre) .
                          phi(prod of a_u over the fibre of 1, ..., of t).
    """
    M = M or regular_module(A)
    if M.algebra.dim != A.dim:
        raise ShapeMismatch("module over a different algebra")
    s, t, d, e = g.source, g.target, A.dim, M.dim
    if hom_dim(A, M, s) > cap or hom_dim(A, M, t) > cap:
        raise CapExceeded(f"Hom space above {cap} coordinates", cap)
    fibres = [g.fibre(j) for j in range(t + 1)]
    basis = [A.basis(i) for i in range(d)]
    unit = A.unit
    rows = []
    for I in itertools.product(range(d), repeat=s):
        prods = []
        for fib in fibres:
            v = unit
            for u in fib:
                v = A.mul(v, basis[I[u - 1]])
            prods.append(v)
        outside = prods[0]
        supports = [[(i, c) for i, c in enumerate(v) if c] for v in prods[1:]]
        # outside . y_k for each output basis vector of M
        acted = [M.act(outside, tuple(Fraction(int(k2 == k)) for k2 in range(e))) for k in range(e)]
        out_rows = [dict() for _ in range(e)]
        for combo in itertools.product(*supports):
            coef = Fraction(1)
            J = 0
            for i, c in combo:
                coef *= c
                J = J * d + i
            for k in range(e):
                for k2, a in enumerate(acted[k]):
                    if a:
                        col = J * e + k
                        out_rows[k2][col] = out_rows[k2].get(col, 0) + coef * a
        rows.extend(out_rows)
    return RationalMatrix(d ** s * e, d ** t * e, rows)


# -- Hochschild-Pirashvili cochains -----------------------------------------------

@dataclass
class RationalCochainComplex:
    """Spaces of dimensions dims[0..], differentials[q] : degree q -> q + 1.

    Cohomology is available in degrees 0..len(differentials) - 1.
    """
    dims: list
    differentials: list

    def check(self) -> None:
        for q, dq in enumerate(self.differentials):
            if (dq.ncols, dq.nrows) != (self.dims[q], self.dims[q + 1]):
                raise InvariantViolation(f"differential {q} has the wrong size")
        for q in range(1, len(self.differentials)):
            if not (self.differentials[q] @ self.differentials[q - 1]).is_zero():
                raise InvariantViolation(f"d o d != 0 in degree {q - 1}")


def cohomology(cx: RationalCochainComplex) -> list[int]:
    ranks = [d.rank() for d in cx.differentials]
    return [cx.dims[q] - ranks[q] - (ranks[q - 1] if q else 0) for q in range(len(ranks))]


def hp_differential(A: CommutativeAlgebra, M: Module | None, n: int, m: int,
                    cap: int = DEFAULT_SPACE_CAP) -> RationalMatrix:
    """Alternating sum over the cofaces [m] -> [m+1]."""
    total = None
    for i in range(m + 2):
        term = L_on_map(A, M, sphere_on_morphism(n, coface(m, i)), cap)
        if i % 2:
            term = term.scaled(-1)
        total = term if total is None else total + term
    return total


def hp_complex(A: CommutativeAlgebra, M: Module | None, n: int, N: int,
               cap: int = DEFAULT_SPACE_CAP) -> RationalCochainComplex:
    """Cochains in degrees 0..N+1 with differentials out of degrees 0..N."""
    M = M or regular_module(A)
    dims = [hom_dim(A, M, comb(m, n)) for m in range(N + 2)]
    if max(dims) > cap:
        raise CapExceeded(f"degree {N + 1} needs {max(dims)} coordinates, above {cap}", cap)
    diffs = [hp_differential(A, M, n, m, cap) for m in range(N + 1)]
    return RationalCochainComplex(dims, diffs)


# -- alpha_n and the endomorphism operad -------------------------------------------

def alpha_on_object(n: int, m: int) -> CompleteGraphOperation:
    subsets = _subsets(n, m)
    k = len(subsets)

    def pair(a, b):
        x, y = subsets[a - 1], subsets[b - 1]
        lam = next(t for t in range(n) if x[t] != y[t]) + 1
        return lam, True

    return cgop.from_pairs(n, k, pair)


def staircase_configuration(n: int, m: int) -> list[tuple]:
    """One point of R^n per n-subset {i_1 < ... < i_n}: (i_1, i_2 - 1, ..., i_n - n + 1).

    For n = 2 these fill the triangle 1 <= c_1 <= c_2 <= m - 1.
    """
    return [tuple(i - t for t, i in enumerate(s)) for s in _subsets(n, m)]


def configuration_projection(n: int, points) -> CompleteGraphOperation:
    """Colour of a pair = first differing coordinate; order = lexicographic."""
    points = [tuple(Fraction(c) for c in p) for p in points]
    if len(set(points)) != len(points):
        raise InvariantViolation("configuration points must be distinct")
    ranks = {p: r for r, p in enumerate(sorted(points), start=1)}
    sigma = tuple(ranks[p] for p in points)

    def pair(a, b):
        x, y = points[a - 1], points[b - 1]
        lam = next(t for t in range(n) if x[t] != y[t]) + 1
        return lam, sigma[a - 1] < sigma[b - 1]

    return cgop.from_pairs(n, len(points), pair)


@dataclass(frozen=True)
class AlphaMorphism:
    """A morphism of Delta K_n: a tree with one white vertex and a bound.

    ``dominated`` records whether target(tree) <= bound holds in K_n.
    """
    n: int
    source: CompleteGraphOperation
    bound: CompleteGraphOperation
    tree: Node

    @property
    def target(self) -> CompleteGraphOperation:
        return target(self.tree, self.n)

    @property
    def dominated(self) -> bool:
        return leq(self.target, self.bound)


def _fibre_vertex(n: int, alpha_m: CompleteGraphOperation, leaves: list[int]) -> Node:
    if len(leaves) == 1:
        return Leaf(leaves[0])
    return _vertex(cgop.restrict(alpha_m, leaves), tuple(Leaf(x) for x in leaves), True, None)


def alpha_on_morphism(n: int, f: SimplexMap) -> AlphaMorphism:
    """The tree of alpha_n(f) for f : [l] -> [m].

    Black vertices carry the restriction of alpha_n(m) to their fibre.  At
    the root the white slot comes first and is placed below every fibre
    element with colour 1, a poset-minimal choice.
    """
    l, m = f.source, f.target
    g = sphere_on_morphism(n, f)
    alpha_m, alpha_l = alpha_on_object(n, m), alpha_on_object(n, l)
    kids = tuple(_fibre_vertex(n, alpha_m, g.fibre(j)) for j in range(1, g.target + 1))
    w = _vertex(alpha_l, kids, False, 1)
    outside = g.fibre(0)
    if not outside:
        tree = w
    else:
        k = len(outside) + 1
        inner = cgop.restrict(alpha_m, outside)

        def pair(a, b):
            if a == 1:
                return 1, True
            return inner.colour(a - 1, b - 1), inner.before(a - 1, b - 1)

        root = cgop.from_pairs(n, k, pair)
        tree = _vertex(root, (w,) + tuple(Leaf(x) for x in outside), True, None)
    return AlphaMorphism(n, alpha_l, alpha_m, tree)


def compose_alpha(second: AlphaMorphism, first: AlphaMorphism) -> AlphaMorphism:
    """second after first: insert first's tree into second's white vertex."""
    if first.bound != second.source:
        raise ShapeMismatch("morphisms are not composable")
    path, host = next((p, v) for p, v in walk(second.tree) if type(v) is Vertex and not v.black)
    filling = dict(enumerate(host.children, start=1))

    def sub(t: Node) -> Node:
        if type(t) is Leaf:
            return filling[t.label]
        return _vertex(t.decoration, tuple(sub(c) for c in t.children), t.black, t.label)

    tree = tidy(replace_at(second.tree, path, sub(first.tree)))
    return AlphaMorphism(second.n, first.source, second.bound, tree)


def same_shape(a: AlphaMorphism, b: AlphaMorphism) -> bool:
    return shape(tidy(a.tree)) == shape(tidy(b.tree))


def end_A_eval(A: CommutativeAlgebra, x, cap: int = DEFAULT_SPACE_CAP):
    """Action of the endomorphism operad of A.

    A K_n operation of arity k acts as the k-fold product (a MultilinearMap);
    a tree with one white vertex acts on Hom spaces (a RationalMatrix) by
    feeding the white vertex's inputs with the products of the black
    vertices above it and multiplying its output with the remaining inputs.
    """
    if isinstance(x, CompleteGraphOperation):
        coords = {}
        for I in itertools.product(range(A.dim), repeat=x.arity):
            v = A.unit
            for i in I:
                v = A.mul(v, A.basis(i))
            for k, c in enumerate(v):
                if c:
                    coords[(I, k)] = c
        return MultilinearMap(x.arity, A.dim, coords)
    tree = x.tree if isinstance(x, AlphaMorphism) else x
    whites = [v for _, v in walk(tree) if type(v) is Vertex and not v.black]
    if len(whites) != 1:
        raise ShapeMismatch("a morphism of Delta K_n has exactly one white vertex")
    r = whites[0].arity
    k = sum(1 for _, v in walk(tree) if type(v) is Leaf)
    d = A.dim
    if d ** max(k, r) * d > cap:
        raise CapExceeded(f"Hom space above {cap} coordinates", cap)
    basis = [A.basis(i) for i in range(d)]

    def value(t: Node, I: tuple):
        # plain vectors for white-free subtrees; {J: a_J} meaning sum a_J . phi(x_J) otherwise
        if type(t) is Leaf:
            return basis[I[t.label - 1]]
        vals = [value(c, I) for c in t.children]
        if not t.black:
            terms = {(): Fraction(1)}
            for v in vals:
                terms = {J + (i,): c * a for J, c in terms.items() for i, a in enumerate(v) if a}
            return {J: tuple(c * u for u in A.unit) for J, c in terms.items()}
        plain, linear = A.unit, None
        for v in vals:
            if isinstance(v, dict):
                linear = v
            else:
                plain = A.mul(plain, v)
        if linear is None:
            return plain
        return {J: A.mul(a, plain) for J, a in linear.items()}

    rows = []
    for I in itertools.product(range(d), repeat=k):
        form = value(tree, I)
        out = [dict() for _ in range(d)]
        for J, a in form.items():
            col0 = 0
            for i in J:
                col0 = col0 * d + i
            for kk in range(d):
                prod = A.mul(a, basis[kk])
                for k2, c in enumerate(prod):
                    if c:
                        out[k2][col0 * d + kk] = out[k2].get(col0 * d + kk, 0) + c
        rows.extend(out)
    return RationalMatrix(d ** k * d, d ** r * d, rows)


def square_check(A: CommutativeAlgebra, n: int, f: SimplexMap) -> bool:
    """End_A(alpha_n(f)) == L(A, A)(S^n(f)), exactly."""
    return end_A_eval(A, alpha_on_morphism(n, f)) == L_on_map(A, None, sphere_on_morphism(n, f))
