"""Finite categories, nerves, order complexes and integral homology."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

from .errors import CapExceeded, InvariantViolation
from .linalg import invariant_factors, matmul_sparse

DEFAULT_DEGREE_CAP = 4
DEFAULT_ARROW_CAP = 200_000


@dataclass
class FiniteCategory:
    """Objects, arrows (source, target, label) and a total composition table.

    Arrow ``k`` is the identity of object ``k`` for the first len(objects)
    arrows.  ``compose[(g, f)]`` is g after f, defined when target(f) == source(g).
    """
    objects: list
    arrows: list  # (source index, target index, label)
    compose: dict = field(default_factory=dict)

    def identity(self, obj: int) -> int:
        return obj

    def is_identity(self, arrow: int) -> bool:
        return arrow < len(self.objects)

    def hom(self, a: int, b: int) -> list[int]:
        return [k for k, (s, t, _) in enumerate(self.arrows) if s == a and t == b]

    def check(self) -> None:
        """Identity and associativity laws on the full table."""
        n = len(self.objects)
        out_of: dict[int, list] = {}
        for k, (s, _, _) in enumerate(self.arrows):
            out_of.setdefault(s, []).append(k)
        for k, (s, t, _) in enumerate(self.arrows):
            if self.compose.get((k, s)) != k or self.compose.get((t, k)) != k:
                raise InvariantViolation(f"identity law fails at arrow {k}")
        for f, (_, t, _) in enumerate(self.arrows):
            for g in out_of.get(t, ()):
                gf = self.compose.get((g, f))
                if gf is None:
                    raise InvariantViolation(f"composite of {g} and {f} missing")
                for h in out_of.get(self.arrows[g][1], ()):
                    if self.compose[(h, gf)] != self.compose[(self.compose[(h, g)], f)]:
                        raise InvariantViolation("composition is not associative")
        if any(self.arrows[k][:2] != (k, k) for k in range(n)):
            raise InvariantViolation("the first arrows must be identities")

    @classmethod
    def from_preorder(cls, objects: Sequence, leq: Callable[[Hashable, Hashable], bool],
                      cap: int = DEFAULT_ARROW_CAP) -> "FiniteCategory":
        """The thin category with an arrow a -> b iff leq(a, b)."""
        n = len(objects)
        related = [[leq(a, b) for b in objects] for a in objects]
        return cls._thin(objects, related, cap)

    @classmethod
    def from_generators(cls, objects: Sequence, generators: Sequence[tuple[int, int]],
                        cap: int = DEFAULT_ARROW_CAP) -> "FiniteCategory":
        """The thin category generated by arrows between object indices.

        Hom sets are singletons or empty, so composition closure is reachability.
        """
        n = len(objects)
        succ: dict[int, set] = {i: set() for i in range(n)}
        for s, t in generators:
            succ[s].add(t)
        related = [[False] * n for _ in range(n)]
        for a in range(n):
            stack, seen = [a], {a}
            while stack:
                v = stack.pop()
                for w in succ[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            for b in seen:
                related[a][b] = True
        for a in range(n):
            for b in range(a + 1, n):
                if related[a][b] and related[b][a]:
                    raise InvariantViolation("generated relation has a cycle; not a poset")
        return cls._thin(objects, related, cap)

    @classmethod
    def _thin(cls, objects, related, cap: int) -> "FiniteCategory":
        n = len(objects)
        arrows = [(i, i, "id") for i in range(n)]
        index = {(i, i): i for i in range(n)}
        for a in range(n):
            for b in range(n):
                if a != b and related[a][b]:
                    index[(a, b)] = len(arrows)
                    arrows.append((a, b, "<="))
                    if len(arrows) > cap:
                        raise CapExceeded(f"more than {cap} arrows", cap)
        comp = {}
        for (a, b), f in index.items():
            for c in range(n):
                g = index.get((b, c))
                if g is not None:
                    comp[(g, f)] = index[(a, c)]
        return cls(list(objects), arrows, comp)


@dataclass
class SimplicialData:
    """Nondegenerate simplices by degree, with signed face incidences.

    ``faces[q][s]`` lists (index of a (q-1)-simplex, sign) for simplex s of degree q.
    ``complete`` is False when simplices above the cap exist.
    """
    cap: int
    simplices: list
    faces: list
    complete: bool = True

    def counts(self) -> list[int]:
        return [len(s) for s in self.simplices]

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * c for q, c in enumerate(self.counts()))


@dataclass
class IntegerChainComplex:
    ranks: list[int]
    boundaries: list  # boundaries[q]: sparse rows of d_q : C_q -> C_{q-1}, one row per q-simplex

    def check(self) -> None:
        for q in range(2, len(self.ranks)):
            # rows are simplices, so the product d_q d_{q-1} is rows(q) x cols(q-2)
            prod = matmul_sparse(self.boundaries[q], self.boundaries[q - 1])
            if any(prod):
                raise InvariantViolation(f"boundary squared is nonzero in degree {q}")


@dataclass
class HomologyResult:
    betti: list[int]
    torsion: list[list[int]]

    def as_dict(self) -> dict:
        return {"betti": self.betti, "torsion": self.torsion}

    def trimmed(self) -> list[int]:
        """Betti numbers without trailing zeros (at least degree 0)."""
        out = list(self.betti)
        while len(out) > 1 and out[-1] == 0 and not self.torsion[len(out) - 1]:
            out.pop()
        return out


def order_complex(elements: Sequence, leq: Callable, cap: int = DEFAULT_DEGREE_CAP) -> SimplicialData:
    """Strictly increasing chains of a finite poset, up to degree ``cap``."""
    n = len(elements)
    above = [[j for j in range(n) if j != i and leq(elements[i], elements[j])] for i in range(n)]
    chains = [[(i,) for i in range(n)]]
    complete = True
    for q in range(1, cap + 1):
        nxt = [c + (j,) for c in chains[-1] for j in above[c[-1]]]
        chains.append(nxt)
    if any(above[c[-1]] for c in chains[-1]):
        complete = False
    return _from_vertex_chains(chains, cap, complete)


def _from_vertex_chains(chains: list, cap: int, complete: bool) -> SimplicialData:
    while len(chains) > 1 and not chains[-1]:
        chains.pop()
    index = [{c: k for k, c in enumerate(level)} for level in chains]
    faces = [[[] for _ in chains[0]]]
    for q in range(1, len(chains)):
        level = []
        for c in chains[q]:
            level.append([(index[q - 1][c[:i] + c[i + 1:]], (-1) ** i) for i in range(q + 1)])
        faces.append(level)
    return SimplicialData(cap, chains, faces, complete)


def nerve(cat: FiniteCategory, cap: int = DEFAULT_DEGREE_CAP) -> SimplicialData:
    """Composable chains of non-identity arrows (normalized nerve)."""
    nobj = len(cat.objects)
    out_of: dict[int, list] = {}
    for k, (s, _, _) in enumerate(cat.arrows):
        if not cat.is_identity(k):
            out_of.setdefault(s, []).append(k)
    simplices = [[(o,) for o in range(nobj)]]  # 0-simplices are objects
    level = [(f,) for f in range(nobj, len(cat.arrows))]
    for q in range(1, cap + 1):
        simplices.append(level)
        level = [c + (g,) for c in level for g in out_of.get(cat.arrows[c[-1]][1], ())]
    complete = not level
    while len(simplices) > 1 and not simplices[-1]:
        simplices.pop()
    index = [{c: k for k, c in enumerate(lv)} for lv in simplices]
    faces = [[[] for _ in simplices[0]]]
    for q in range(1, len(simplices)):
        fq = []
        for c in simplices[q]:
            entries = []
            for i in range(q + 1):
                if q == 1:
                    s, t, _ = cat.arrows[c[0]]
                    face = (t,) if i == 0 else (s,)
                elif i == 0:
                    face = c[1:]
                elif i == q:
                    face = c[:-1]
                else:
                    comp = cat.compose[(c[i], c[i - 1])]
                    if cat.is_identity(comp):
                        continue  # degenerate face
                    face = c[: i - 1] + (comp,) + c[i + 1:]
                entries.append((index[q - 1][face], (-1) ** i))
            fq.append(entries)
        faces.append(fq)
    return SimplicialData(cap, simplices, faces, complete)


def chain_complex(data: SimplicialData) -> IntegerChainComplex:
    ranks = data.counts()
    boundaries = [[{} for _ in range(ranks[0])]]
    for q in range(1, len(ranks)):
        rows = []
        for entries in data.faces[q]:
            row: dict = {}
            for j, sign in entries:
                row[j] = row.get(j, 0) + sign
            rows.append({j: v for j, v in row.items() if v})
        boundaries.append(rows)
    return IntegerChainComplex(ranks, boundaries)


def homology(data) -> HomologyResult:
    """Integral homology; degrees below the cap, or all degrees if complete."""
    cc = data if isinstance(data, IntegerChainComplex) else chain_complex(data)
    top = len(cc.ranks) - 1
    if isinstance(data, SimplicialData) and not data.complete:
        top = min(top, data.cap - 1)
    factors = [[] for _ in range(len(cc.ranks) + 1)]
    for q in range(1, len(cc.ranks)):
        factors[q] = invariant_factors(cc.boundaries[q])
    betti, torsion = [], []
    for q in range(top + 1):
        rank_out = len(factors[q]) if q >= 1 else 0
        rank_in = len(factors[q + 1]) if q + 1 < len(cc.ranks) else 0
        betti.append(cc.ranks[q] - rank_out - rank_in)
        torsion.append([f for f in (factors[q + 1] if q + 1 < len(cc.ranks) else []) if f > 1])
    return HomologyResult(betti, torsion)


def poset_homology(elements: Sequence, leq: Callable, cap: int = DEFAULT_DEGREE_CAP) -> HomologyResult:
    return homology(order_complex(elements, leq, cap))
