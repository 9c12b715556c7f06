"""
Finite abstract simplicial complexes, posets and their order complexes,
and reduced integer homology via Smith normal form.

A complex always contains the empty face, so the complex with no vertices
is the empty complex {()} whose reduced homology is Z in degree -1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import networkx as nx

from .errors import InvalidArgument

EMPTY = frozenset()


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    vertices: tuple
    faces: frozenset
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        verts = tuple(self.vertices)
        if len(set(verts)) != len(verts):
            raise InvalidArgument("duplicate vertex labels")
        faces = frozenset(frozenset(f) for f in self.faces) | {EMPTY}
        vset = set(verts)
        for face in faces:
            if not face <= vset:
                raise InvalidArgument(f"face {set(face)} uses unknown vertices")
            if len(face) > 1:
                for v in face:
                    if face - {v} not in faces:
                        raise InvalidArgument(f"faces not closed under subsets at {set(face)}")
        for v in verts:
            if frozenset((v,)) not in faces:
                raise InvalidArgument(f"vertex {v!r} is not a face")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "faces", faces)
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(verts)})

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable], vertices: Sequence | None = None):
        faces = set()
        for facet in facets:
            facet = tuple(facet)
            for k in range(len(facet) + 1):
                faces.update(frozenset(c) for c in itertools.combinations(facet, k))
        if vertices is None:
            seen = {}
            for facet in facets:
                for v in facet:
                    seen.setdefault(v, None)
            vertices = tuple(seen)
        return cls(tuple(vertices), frozenset(faces))

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self.faces == other.faces

    def __hash__(self):
        return hash(self.faces)

    def __len__(self):
        return len(self.faces)

    def __contains__(self, face):
        return frozenset(face) in self.faces

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def ordered(self, face) -> tuple:
        return tuple(sorted(face, key=self._index.__getitem__))

    def faces_of_dim(self, k: int) -> list[tuple]:
        """Faces of dimension k as vertex tuples in vertex order, sorted."""
        out = [self.ordered(f) for f in self.faces if len(f) == k + 1]
        out.sort(key=lambda f: [self._index[v] for v in f])
        return out

    def f_vector(self) -> tuple:
        return tuple(len(self.faces_of_dim(k)) for k in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def facets(self) -> list[tuple]:
        maximal = [f for f in self.faces if f and not any(f < g for g in self.faces)]
        return sorted((self.ordered(f) for f in maximal), key=lambda f: (len(f), [self._index[v] for v in f]))

    def edges(self) -> list[tuple]:
        return self.faces_of_dim(1)

    def to_json(self) -> dict:
        return {"vertices": [_jsonable(v) for v in self.vertices], "facets": [[_jsonable(v) for v in f] for f in self.facets()]}

    @classmethod
    def from_json(cls, doc: Mapping) -> "SimplicialComplex":
        try:
            vertices = [_hashable(v) for v in doc["vertices"]]
            facets = [[_hashable(v) for v in f] for f in doc["facets"]]
        except (KeyError, TypeError) as exc:
            raise InvalidArgument(f"malformed complex document: {exc}") from exc
        return cls.from_facets(facets, vertices)


def _hashable(x):
    return tuple(_hashable(y) for y in x) if isinstance(x, list) else x


def _jsonable(x):
    return [_jsonable(y) for y in x] if isinstance(x, tuple) else x


def simplex(vertices: Sequence) -> SimplicialComplex:
    return SimplicialComplex.from_facets([tuple(vertices)], tuple(vertices))


def points(labels: Sequence) -> SimplicialComplex:
    return SimplicialComplex.from_facets([(v,) for v in labels], tuple(labels))


def cycle(labels: Sequence) -> SimplicialComplex:
    n = len(labels)
    return SimplicialComplex.from_facets([(labels[i], labels[(i + 1) % n]) for i in range(n)], tuple(labels))


def join(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    if set(A.vertices) & set(B.vertices):
        raise InvalidArgument("join needs disjoint vertex labels")
    faces = frozenset(a | b for a in A.faces for b in B.faces)
    return SimplicialComplex(A.vertices + B.vertices, faces)


def octahedral_complex(p: int, V: Sequence) -> SimplicialComplex:
    """O(p, V): the |V|-fold join of (p+1)-point sets, vertices (v, i) with 0 <= i <= p."""
    if p < 0 or len(V) < 1:
        raise InvalidArgument("octahedral complex needs p >= 0 and a nonempty V")
    result = SimplicialComplex((), frozenset())
    for v in V:
        result = join(result, points([(v, i) for i in range(p + 1)]))
    return result


def full_subcomplex(L: SimplicialComplex, drop: Iterable) -> SimplicialComplex:
    """All faces of L avoiding ``drop``; the complement L - sigma when drop is a face."""
    drop = frozenset(drop)
    return SimplicialComplex(
        tuple(v for v in L.vertices if v not in drop),
        frozenset(f for f in L.faces if not (f & drop)),
    )


def induced_subcomplex(L: SimplicialComplex, keep: Iterable) -> SimplicialComplex:
    keep = frozenset(keep)
    return full_subcomplex(L, frozenset(L.vertices) - keep)


def missing_simplex(L: SimplicialComplex) -> tuple | None:
    """A minimal non-face whose vertices are pairwise joined by edges, or None if L is flag."""
    adj = {v: set() for v in L.vertices}
    for a, b in L.edges():
        adj[a].add(b)
        adj[b].add(a)
    for face in sorted(L.faces, key=lambda f: (len(f), [L._index[v] for v in L.ordered(f)])):
        if len(face) < 2:
            continue
        for v in L.vertices:
            if v not in face and face <= adj[v] and face | {v} not in L.faces:
                return L.ordered(face | {v})
    return None


def is_flag(L: SimplicialComplex) -> bool:
    return missing_simplex(L) is None


# -- posets ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Poset:
    """Finite poset given by its strict order relation ``{(a, b): a < b}``."""

    elements: tuple
    relation: frozenset

    def __post_init__(self):
        elems = tuple(self.elements)
        eset = set(elems)
        rel = frozenset(self.relation)
        succ = {x: set() for x in elems}
        for a, b in rel:
            if a not in eset or b not in eset:
                raise InvalidArgument("relation mentions unknown elements")
            if a == b:
                raise InvalidArgument(f"relation is not irreflexive at {a!r}")
            succ[a].add(b)
        for a in elems:
            for b in succ[a]:
                if not succ[b] <= succ[a]:
                    raise InvalidArgument("relation is not transitive")
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "relation", rel)
        object.__setattr__(self, "_succ", succ)

    @classmethod
    def from_order(cls, elements: Iterable, less: Callable[[Hashable, Hashable], bool]) -> "Poset":
        elems = tuple(elements)
        return cls(elems, frozenset((a, b) for a in elems for b in elems if a != b and less(a, b)))

    def less(self, a, b) -> bool:
        return b in self._succ[a]

    def above(self, x) -> list:
        return [y for y in self.elements if y in self._succ[x]]

    def opposite(self) -> "Poset":
        return Poset(self.elements, frozenset((b, a) for a, b in self.relation))

    def restrict(self, keep: Iterable) -> "Poset":
        keep = set(keep)
        return Poset(
            tuple(x for x in self.elements if x in keep),
            frozenset((a, b) for a, b in self.relation if a in keep and b in keep),
        )

    def hasse(self) -> nx.DiGraph:
        G = nx.DiGraph()
        G.add_nodes_from(self.elements)
        for a, b in self.relation:
            if not any(self.less(a, c) and self.less(c, b) for c in self._succ[a]):
                G.add_edge(a, b)
        return G


def poset_isomorphic(P: Poset, Q: Poset) -> bool:
    return nx.is_isomorphic(P.hasse(), Q.hasse())


def order_complex(P: Poset) -> SimplicialComplex:
    """Simplices are the nonempty chains of P."""
    faces = {EMPTY}

    def extend(chain: tuple):
        faces.add(frozenset(chain))
        for y in P.above(chain[-1]):
            extend(chain + (y,))

    for x in P.elements:
        extend((x,))
    return SimplicialComplex(P.elements, frozenset(faces))


def face_poset(L: SimplicialComplex, include_empty: bool = False) -> Poset:
    faces = [f for f in L.faces if f or include_empty]
    faces.sort(key=lambda f: (len(f), [L._index[v] for v in L.ordered(f)]))
    return Poset.from_order(faces, lambda a, b: a < b)


def barycentric_subdivision(L: SimplicialComplex) -> SimplicialComplex:
    return order_complex(face_poset(L))


def is_isomorphic(A: SimplicialComplex, B: SimplicialComplex) -> bool:
    return poset_isomorphic(face_poset(A), face_poset(B))


@dataclass(frozen=True, eq=False)
class MirroredComplex:
    complex: SimplicialComplex
    mirrors: dict

    def __post_init__(self):
        for s, X in self.mirrors.items():
            if X != induced_subcomplex(self.complex, X.vertices):
                raise InvalidArgument(f"mirror {s!r} is not a full subcomplex")


def mirrored_chamber(subsets) -> MirroredComplex:
    """K = |P| for a downward-closed family P of subsets, with mirrors K_s = |P_{>= {s}}|.

    ``subsets`` may be a SphericalPoset, a SimplicialComplex (giving K(L)), or
    any iterable of subsets containing the empty set.
    """
    if isinstance(subsets, SimplicialComplex):
        order = {v: i for i, v in enumerate(subsets.vertices)}
        family = list(subsets.faces)
    else:
        family = [frozenset(T) for T in subsets]
        order = {}
        for T in family:
            for s in sorted(T, key=repr):
                order.setdefault(s, len(order))
        if hasattr(subsets, "matrix"):
            order = {s: i for i, s in enumerate(subsets.matrix.generators)}
    fam = set(family)
    if EMPTY not in fam:
        raise InvalidArgument("poset must contain the empty set")
    for T in fam:
        if any(T - {s} not in fam for s in T):
            raise InvalidArgument("poset is not downward closed")
    family = sorted(fam, key=lambda T: (len(T), sorted(order[s] for s in T)))
    P = Poset.from_order(family, lambda a, b: a < b)
    K = order_complex(P)
    gens = sorted((next(iter(T)) for T in family if len(T) == 1), key=order.__getitem__)
    mirrors = {s: induced_subcomplex(K, [T for T in family if s in T]) for s in gens}
    return MirroredComplex(K, mirrors)


# -- homology --------------------------------------------------------------


def smith_invariants(rows: list[dict], ncols: int | None = None) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of a sparse integer matrix.

    ``rows`` is a list of ``{column: value}`` dicts; it is consumed.
    Pivots are chosen of minimal absolute value; arithmetic is exact.
    """
    row = {i: {c: v for c, v in r.items() if v} for i, r in enumerate(rows)}
    row = {i: r for i, r in row.items() if r}
    col: dict[int, set] = {}
    for i, r in row.items():
        for c in r:
            col.setdefault(c, set()).add(i)

    def set_entry(i, c, v):
        if v:
            row[i][c] = v
            col.setdefault(c, set()).add(i)
        else:
            row[i].pop(c, None)
            col[c].discard(i)

    def global_pivot():
        best = None
        for i, r in row.items():
            for c, v in r.items():
                if best is None or abs(v) < abs(best[2]):
                    best = (i, c, v)
                    if abs(v) == 1:
                        return best
        return best

    diagonal = []
    while row:
        i, j, _ = global_pivot()
        while True:
            p = row[i][j]
            for r in list(col[j] - {i}):
                q = row[r][j] // p
                for c, v in list(row[i].items()):
                    set_entry(r, c, row[r].get(c, 0) - q * v)
            rest = col[j] - {i}
            if rest:
                i = min(rest, key=lambda r: abs(row[r][j]))
                continue
            for c in list(row[i]):
                if c != j:
                    set_entry(i, c, row[i][c] - (row[i][c] // p) * p)
            rest = [c for c in row[i] if c != j]
            if rest:
                j = min(rest, key=lambda c: abs(row[i][c]))
                continue
            break
        diagonal.append(abs(row[i][j]))
        set_entry(i, j, 0)
        del row[i]
        for r in list(row):
            if not row[r]:
                del row[r]
    ones = [d for d in diagonal if d == 1]
    big = sorted(d for d in diagonal if d != 1)
    for a in range(len(big)):
        for b in range(a + 1, len(big)):
            g = math.gcd(big[a], big[b])
            big[a], big[b] = g, big[a] * big[b] // g
    return ones + big


def _boundary(L: SimplicialComplex, k: int, lower_index: dict) -> list[dict]:
    """Rows of the boundary map C_k -> C_{k-1}, one row per k-face."""
    rows = []
    for face in L.faces_of_dim(k):
        r = {}
        for j in range(len(face)):
            r[lower_index[face[:j] + face[j + 1 :]]] = (-1) ** j
        rows.append(r)
    return rows


@dataclass(frozen=True)
class HomologyReport:
    """Reduced integer homology: degree -> (rank, torsion coefficients)."""

    groups: tuple  # ((degree, rank, (d1, d2, ...)), ...)

    def rank(self, k: int) -> int:
        return next((r for d, r, _ in self.groups if d == k), 0)

    def torsion(self, k: int) -> tuple:
        return next((t for d, _, t in self.groups if d == k), ())

    @property
    def betti(self) -> dict:
        return {d: r for d, r, _ in self.groups}

    def nonzero_degrees(self) -> list[int]:
        return [d for d, r, t in self.groups if r or t]

    def is_free(self) -> bool:
        return all(not t for _, _, t in self.groups)

    def is_zero(self) -> bool:
        return not self.nonzero_degrees()

    def to_json(self) -> list[dict]:
        return [{"degree": d, "rank": r, "torsion": list(t)} for d, r, t in self.groups]


def reduced_homology(L: SimplicialComplex) -> HomologyReport:
    """Reduced homology with Z coefficients, degrees -1 .. dim L."""
    top = L.dim
    faces = {k: L.faces_of_dim(k) for k in range(-1, top + 1)}
    index = {k: {f: i for i, f in enumerate(fs)} for k, fs in faces.items()}
    invariants = {}
    prev_rows = None
    for k in range(0, top + 1):
        rows = _boundary(L, k, index[k - 1])
        if prev_rows is not None:
            for r in rows:
                total = {}
                for c, v in r.items():
                    for c2, v2 in prev_rows[c].items():
                        total[c2] = total.get(c2, 0) + v * v2
                assert not any(total.values()), "boundary of a boundary is nonzero"
        prev_rows = rows
        invariants[k] = smith_invariants([dict(r) for r in rows])
    groups = []
    for k in range(-1, top + 1):
        rank_out = len(invariants.get(k, ()))
        incoming = invariants.get(k + 1, [])
        rank = len(faces[k]) - rank_out - len(incoming)
        groups.append((k, rank, tuple(d for d in incoming if d > 1)))
    return HomologyReport(tuple(groups))


@dataclass(frozen=True)
class PunctureReport:
    ok: bool
    degree: int
    failures: tuple  # ((face, nonzero degrees, torsion-free), ...)

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {
            "ph": self.ok,
            "degree": self.degree,
            "failures": [{"face": list(f), "degrees": list(d), "free": free} for f, d, free in self.failures],
        }


def punctured_check(L: SimplicialComplex, m: int) -> PunctureReport:
    """Is L PH^m: for every closed simplex (the empty one included) the reduced homology
    of its complement is free and vanishes outside degree m."""
    failures = []
    for face in sorted(L.faces, key=lambda f: (len(f), [L._index[v] for v in L.ordered(f)])):
        H = reduced_homology(full_subcomplex(L, face))
        off = [d for d in H.nonzero_degrees() if d != m]
        if off or not H.is_free():
            failures.append((L.ordered(face), tuple(off), H.is_free()))
    return PunctureReport(not failures, m, tuple(failures))
