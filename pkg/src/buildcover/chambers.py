"""
Chamber systems, buildings with a Weyl distance, and their simplicial realizations.

Chamber ids are any hashable values; JSON documents encode tuples as lists.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import coxeter as cx
from .coxeter import CoxeterMatrix, Word
from .errors import InvalidArgument, InvalidInput
from .simplicial import Poset, SimplicialComplex, order_complex, reduced_homology, simplex


@dataclass(frozen=True, eq=False)
class ChamberSystem:
    """Chambers with one partition into panels per generator label."""

    chambers: tuple
    panels: Mapping  # s -> tuple of frozensets
    _lookup: dict = field(init=False, repr=False)

    def __post_init__(self):
        chambers = tuple(self.chambers)
        if len(set(chambers)) != len(chambers):
            raise InvalidArgument("duplicate chamber ids")
        cset = set(chambers)
        panels = {}
        lookup = {}
        for s, classes in self.panels.items():
            classes = tuple(frozenset(c) for c in classes)
            covered = {}
            for P in classes:
                for c in P:
                    if c not in cset:
                        raise InvalidArgument(f"{s}-panel mentions unknown chamber {c!r}")
                    if c in covered:
                        raise InvalidArgument(f"chamber {c!r} lies in two {s}-panels")
                    covered[c] = P
            if len(covered) != len(cset):
                missing = next(c for c in chambers if c not in covered)
                raise InvalidArgument(f"{s}-panels do not cover chamber {missing!r}")
            panels[s] = classes
            for c, P in covered.items():
                lookup[s, c] = P
        order = {c: i for i, c in enumerate(chambers)}
        ordered = {P: tuple(sorted(P, key=order.__getitem__)) for cls in panels.values() for P in cls}
        object.__setattr__(self, "chambers", chambers)
        object.__setattr__(self, "panels", panels)
        object.__setattr__(self, "_lookup", lookup)
        object.__setattr__(self, "_sorted", {k: ordered[P] for k, P in lookup.items()})

    @property
    def labels(self) -> tuple:
        return tuple(self.panels)

    def panel(self, s, c) -> frozenset:
        return self._lookup[s, c]

    def neighbours(self, s, c) -> list:
        """Chambers s-adjacent to c, in chamber order."""
        return [d for d in self._sorted[s, c] if d != c]

    def is_gallery(self, chambers: Sequence, word: Sequence) -> bool:
        if len(chambers) != len(word) + 1:
            return False
        return all(
            chambers[j] != chambers[j + 1] and chambers[j + 1] in self.panel(s, chambers[j])
            for j, s in enumerate(word)
        )


@dataclass(frozen=True)
class Gallery:
    chambers: tuple
    type: tuple

    def __post_init__(self):
        if len(self.chambers) != len(self.type) + 1:
            raise InvalidArgument("a gallery of type s has len(s) + 1 chambers")


@dataclass(frozen=True, eq=False)
class Building:
    """A chamber system with a Weyl distance table of canonical words."""

    system: ChamberSystem
    coxeter: CoxeterMatrix
    delta: Mapping  # (C, D) -> canonical reduced word
    _order: dict = field(init=False, repr=False)

    def __post_init__(self):
        if set(self.system.labels) != set(self.coxeter.generators):
            raise InvalidArgument("panel labels and Coxeter generators differ")
        object.__setattr__(self, "_order", {c: i for i, c in enumerate(self.system.chambers)})

    @classmethod
    def from_system(cls, system: ChamberSystem, M: CoxeterMatrix) -> "Building":
        """Weyl distance from minimal galleries: BFS from every chamber, reducing types."""
        delta = {}
        for C in system.chambers:
            delta[C, C] = ()
            queue = deque([C])
            while queue:
                X = queue.popleft()
                w = delta[C, X]
                for s in M.generators:
                    for Y in system.neighbours(s, X):
                        if (C, Y) not in delta:
                            delta[C, Y] = cx.tits_reduce(w + (s,), M)
                            queue.append(Y)
        return cls(system, M, delta)

    @property
    def chambers(self) -> tuple:
        return self.system.chambers

    def __len__(self):
        return len(self.system.chambers)

    def order(self, c) -> int:
        return self._order[c]

    def distance(self, C, D) -> Word:
        try:
            return self.delta[C, D]
        except KeyError:
            raise InvalidArgument(f"no Weyl distance recorded for ({C!r}, {D!r})") from None

    def panel(self, s, c) -> frozenset:
        return self.system.panel(s, c)

    def neighbours(self, s, c) -> list:
        return self.system.neighbours(s, c)

    def thickness(self) -> dict:
        """Panel sizes per generator, as sorted tuples of the distinct sizes."""
        return {s: tuple(sorted({len(P) for P in self.system.panels[s]})) for s in self.coxeter.generators}

    def relabel(self, mapping: Mapping) -> "Building":
        """Rename generators (chambers unchanged)."""
        M = self.coxeter.relabel(mapping)
        system = ChamberSystem(self.chambers, {mapping[s]: P for s, P in self.system.panels.items()})
        delta = {k: tuple(mapping[a] for a in w) for k, w in self.delta.items()}
        # relabelling can change the lexicographic order of generators
        delta = {k: cx.tits_reduce(w, M) for k, w in delta.items()}
        return Building(system, M, delta)

    def to_json(self, with_delta: bool = False) -> dict:
        doc = {
            "coxeter": self.coxeter.to_json(),
            "chambers": [_jsonable(c) for c in self.chambers],
            "panels": {
                s: [[_jsonable(c) for c in sorted(P, key=self.order)] for P in self.system.panels[s]]
                for s in self.coxeter.generators
            },
        }
        if with_delta:
            doc["delta"] = [
                [_jsonable(C), _jsonable(D), list(self.delta[C, D])] for C in self.chambers for D in self.chambers
            ]
        return doc

    @classmethod
    def from_json(cls, doc: Mapping) -> "Building":
        try:
            M = CoxeterMatrix.from_json(doc["coxeter"])
            chambers = tuple(_hashable(c) for c in doc["chambers"])
            panels = {s: [[_hashable(c) for c in P] for P in classes] for s, classes in doc["panels"].items()}
        except (KeyError, TypeError, AttributeError) as exc:
            raise InvalidInput(f"malformed building document: {exc}") from exc
        system = ChamberSystem(chambers, panels)
        if "delta" not in doc:
            return cls.from_system(system, M)
        delta = {}
        for C, D, w in doc["delta"]:
            delta[_hashable(C), _hashable(D)] = cx.tits_reduce(w, M)
        return cls(system, M, delta)


def _hashable(x):
    return tuple(_hashable(y) for y in x) if isinstance(x, list) else x


def _jsonable(x):
    return [_jsonable(y) for y in x] if isinstance(x, tuple) else x


def chamber_system(chambers: Iterable, adjacency: Mapping) -> ChamberSystem:
    """Chamber system from per-generator lists of adjacent pairs (closed up to classes)."""
    chambers = tuple(chambers)
    panels = {}
    for s, pairs in adjacency.items():
        parent = {c: c for c in chambers}

        def find(c):
            while parent[c] != c:
                parent[c] = parent[parent[c]]
                c = parent[c]
            return c

        for a, b in pairs:
            parent[find(a)] = find(b)
        classes = {}
        for c in chambers:
            classes.setdefault(find(c), []).append(c)
        panels[s] = tuple(frozenset(v) for v in classes.values())
    return ChamberSystem(chambers, panels)


# -- constructors ----------------------------------------------------------


def thin_building(M: CoxeterMatrix, cutoff: int = cx.DEFAULT_CUTOFF) -> Building:
    """W as a building: chambers are canonical words, delta(v, w) = v^-1 w."""
    elements = cx.enumerate_group(M, cutoff)
    panels = {}
    for s in M.generators:
        seen = set()
        classes = []
        for w in elements:
            if w not in seen:
                pair = frozenset((w, cx.tits_reduce(w + (s,), M)))
                seen |= pair
                classes.append(pair)
        panels[s] = tuple(classes)
    delta = {(v, w): cx.tits_reduce(cx.inverse(v) + w, M) for v in elements for w in elements}
    return Building(ChamberSystem(tuple(elements), panels), M, delta)


def incidence_building(points: Sequence, lines: Sequence[Iterable], labels=("s", "t"), m: int = 3) -> Building:
    """Flag building of a rank-2 incidence geometry (a generalized m-gon).

    Chambers are incident (point, line) pairs; the first label's panels are
    flags sharing the point and the second's are flags sharing the line.
    """
    s, t = labels
    lines = [tuple(L) for L in lines]
    flags = tuple((P, i) for P in points for i, L in enumerate(lines) if P in L)
    by_point = {}
    by_line = {}
    for P, i in flags:
        by_point.setdefault(P, []).append((P, i))
        by_line.setdefault(i, []).append((P, i))
    system = ChamberSystem(
        flags,
        {s: tuple(frozenset(v) for v in by_point.values()), t: tuple(frozenset(v) for v in by_line.values())},
    )
    return Building.from_system(system, cx.dihedral(m, labels))


def product_building(buildings: Sequence[Building]) -> Building:
    """Direct product: chambers are tuples, s-panels vary the coordinate owning s."""
    M = cx.direct_sum([B.coxeter for B in buildings])
    chambers = tuple(itertools.product(*(B.chambers for B in buildings)))
    panels = {}
    for i, B in enumerate(buildings):
        for s in B.coxeter.generators:
            classes = {}
            for c in chambers:
                key = c[:i] + (B.panel(s, c[i]),) + c[i + 1 :]
                classes.setdefault(key, []).append(c)
            panels[s] = tuple(frozenset(v) for v in classes.values())
    delta = {}
    for C in chambers:
        for D in chambers:
            w = tuple(a for i, B in enumerate(buildings) for a in B.distance(C[i], D[i]))
            delta[C, D] = cx.tits_reduce(w, M)
    return Building(ChamberSystem(chambers, panels), M, delta)


# -- verification ----------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    ok: bool
    check: str | None = None
    witness: dict | None = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        doc = {"pass": self.ok}
        if not self.ok:
            doc["check"] = self.check
            doc["witness"] = {k: _jsonable(v) for k, v in self.witness.items()}
        return doc


PASS = Verdict(True)


def gallery_endpoints(system: ChamberSystem, start, word: Sequence) -> set:
    """End chambers of all galleries of the given type starting at ``start``."""
    current = {start}
    for s in word:
        current = {d for c in current for d in system.neighbours(s, c)}
    return current


def reduced_words_up_to(M: CoxeterMatrix, max_len: int) -> list[Word]:
    words = [()]
    frontier = [()]
    for _ in range(max_len):
        frontier = [w + (s,) for w in frontier for s in M.generators if not w or w[-1] != s]
        frontier = [w for w in frontier if cx.is_reduced(w, M)]
        words.extend(frontier)
    return words


def verify_building(B: Building, max_len: int | None = None) -> Verdict:
    """Exhaustive check of the Weyl distance axioms; first counterexample wins.

    Order: panel sizes, adjacency vs delta, WD1, WD2, WD3, then the gallery
    characterization for every reduced word of length <= ``max_len``
    (default: the largest Weyl length in the table).
    """
    M, sysm = B.coxeter, B.system
    chambers = B.chambers
    for s in M.generators:
        for P in sysm.panels[s]:
            if len(P) < 2:
                return Verdict(False, "thickness", {"generator": s, "panel": tuple(sorted(P, key=B.order))})
    for C in chambers:
        for D in chambers:
            if (C, D) not in B.delta:
                return Verdict(False, "delta", {"C": C, "D": D})
    for s in M.generators:
        for C in chambers:
            for D in chambers:
                adjacent = C != D and D in sysm.panel(s, C)
                if adjacent != (B.delta[C, D] == (s,)):
                    return Verdict(False, "adjacency", {"generator": s, "C": C, "D": D, "delta": B.delta[C, D]})
    for C in chambers:
        for D in chambers:
            if (B.delta[C, D] == ()) != (C == D):
                return Verdict(False, "WD1", {"C": C, "D": D, "delta": B.delta[C, D]})
    for C in chambers:
        for D in chambers:
            w = B.delta[C, D]
            for s in M.generators:
                sw = cx.tits_reduce((s,) + w, M)
                for C2 in sysm.neighbours(s, C):
                    got = B.delta[C2, D]
                    if got not in (sw, w) or (len(sw) > len(w) and got != sw):
                        return Verdict(
                            False, "WD2", {"C": C, "D": D, "s": s, "C'": C2, "delta(C,D)": w, "delta(C',D)": got}
                        )
    for C in chambers:
        for D in chambers:
            w = B.delta[C, D]
            for s in M.generators:
                sw = cx.tits_reduce((s,) + w, M)
                if not any(B.delta[C2, D] == sw for C2 in sysm.neighbours(s, C)):
                    return Verdict(False, "WD3", {"C": C, "D": D, "s": s, "delta(C,D)": w})
    if max_len is None:
        max_len = max(len(w) for w in B.delta.values())
    for word in reduced_words_up_to(M, max_len):
        value = cx.tits_reduce(word, M)
        for C in chambers:
            ends = gallery_endpoints(sysm, C, word)
            expected = {D for D in chambers if B.delta[C, D] == value}
            if ends != expected:
                return Verdict(False, "galleries", {"C": C, "type": word})
    return PASS


# -- derived structure -----------------------------------------------------


def residue(B, C, T: Iterable) -> frozenset:
    """T-connected component of C (B may be a Building or a ChamberSystem)."""
    sysm = B.system if isinstance(B, Building) else B
    T = list(T)
    seen = {C}
    queue = deque([C])
    while queue:
        X = queue.popleft()
        for s in T:
            for Y in sysm.panel(s, X):
                if Y not in seen:
                    seen.add(Y)
                    queue.append(Y)
    return frozenset(seen)


def residues(B, T: Iterable) -> list[frozenset]:
    sysm = B.system if isinstance(B, Building) else B
    T = list(T)
    out = []
    seen = set()
    for C in sysm.chambers:
        if C not in seen:
            R = residue(sysm, C, T)
            seen |= R
            out.append(R)
    return out


def ball(B: Building, C, n: int) -> frozenset:
    if n < 0:
        raise InvalidArgument("radius must be >= 0")
    return frozenset(D for D in B.chambers if len(B.distance(C, D)) <= n)


def retraction(B: Building, C) -> dict:
    """D -> delta(C, D)."""
    return {D: B.distance(C, D) for D in B.chambers}


def is_apartment(B: Building, A: Iterable, cutoff: int = cx.DEFAULT_CUTOFF) -> bool:
    A = list(dict.fromkeys(A))
    W = cx.enumerate_group(B.coxeter, cutoff)
    if len(A) != len(W):
        return False
    C = A[0]
    rho = {D: B.distance(C, D) for D in A}
    if len(set(rho.values())) != len(W):
        return False
    M = B.coxeter
    return all(B.distance(D, E) == cx.tits_reduce(cx.inverse(rho[D]) + rho[E], M) for D in A for E in A)


def apartments_through(B: Building, C, cutoff: int = cx.DEFAULT_CUTOFF) -> list[frozenset]:
    """All apartments containing C, found as W-isometric embeddings sending 1 to C."""
    M = B.coxeter
    W = cx.enumerate_group(M, cutoff)
    found = []

    def place(k: int, image: dict):
        if k == len(W):
            found.append(frozenset(image.values()))
            return
        w = W[k]
        u, s = w[:-1], w[-1]
        used = set(image.values())
        for D in B.neighbours(s, image[u]):
            if D in used or B.distance(C, D) != w:
                continue
            if all(B.distance(image[v], D) == cx.tits_reduce(cx.inverse(v) + w, M) for v in image):
                image[w] = D
                place(k + 1, image)
                del image[w]

    place(1, {(): C})
    return sorted(set(found), key=lambda A: sorted(B.order(c) for c in A))


def minimal_gallery(B: Building, C, D) -> Gallery:
    """A shortest gallery from C to D (BFS over the chamber graph)."""
    prev = {C: None}
    queue = deque([C])
    while queue and D not in prev:
        X = queue.popleft()
        for s in B.coxeter.generators:
            for Y in B.neighbours(s, X):
                if Y not in prev:
                    prev[Y] = (X, s)
                    queue.append(Y)
    if D not in prev:
        raise InvalidArgument("chambers are not connected")
    chambers, word = [D], []
    while prev[chambers[-1]] is not None:
        X, s = prev[chambers[-1]]
        chambers.append(X)
        word.append(s)
    return Gallery(tuple(reversed(chambers)), tuple(reversed(word)))


# -- realizations ----------------------------------------------------------


def _complex_faces(L: SimplicialComplex, M: CoxeterMatrix) -> list[tuple]:
    faces = [M.sort(f) for f in L.faces]
    return sorted(faces, key=lambda f: (len(f), M.key(f)))


def realization_poset(B, L: SimplicialComplex) -> Poset:
    """Pairs (T, R): T a face of L (the empty face included), R a T-residue.

    (T, R) < (T', R') iff T is a proper subset of T' and R is contained in R'.
    """
    M = B.coxeter
    for f in L.faces:
        if not set(f) <= set(M.generators):
            raise InvalidArgument("complex has vertices that are not generators")
        if not cx.is_spherical(f, M):
            raise InvalidArgument(f"face {set(f)} of L is not spherical")
    elements = []
    for T in _complex_faces(L, M):
        for R in residues(B, T):
            elements.append((T, R))
    return Poset.from_order(elements, lambda a, b: set(a[0]) < set(b[0]) and a[1] <= b[1])


def realize(B: Building, L: SimplicialComplex) -> SimplicialComplex:
    """The L-realization of B as the order complex of its (T, residue) poset.

    With L the nerve this is the standard realization; with the full simplex
    (W finite) it is the subdivided spherical realization.
    """
    return order_complex(realization_poset(B, L))


def realization_h1(B: Building, L: SimplicialComplex | None = None):
    """Reduced homology of the realization (defaults to the standard one)."""
    if L is None:
        L = cx.nerve(B.coxeter)
    return reduced_homology(realize(B, L))


def full_simplex(M: CoxeterMatrix) -> SimplicialComplex:
    return simplex(M.generators)
