"""
Covering construction of buildings.

Given a folding f: L -> L(W', S') and a building C' of type (W', S'), the
surgered matrix gives a Coxeter system (W, S) and the universal cover of
U(C', K(L)) has as central vertices the chambers of a building C of type
(W, S). Only balls of C are ever built.

A chamber of C is stored as a class of reduced galleries from a fixed base
chamber of C'. A gallery is a pair (type word over S, chamber sequence in C')
where consecutive chambers are f(s)-adjacent downstairs. Two reduced galleries
represent the same chamber of C exactly when a sequence of flips carries one
to the other; each flip replaces a rank-2 subgallery by the unique downstairs
gallery of the flipped type with the same endpoints. The representative is
the least gallery of the orbit, ordered by type then by chamber positions.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from . import coxeter as cx
from .chambers import Building, Gallery, Verdict, PASS, residue, verify_building, _hashable, _jsonable
from .coxeter import INF, CoxeterMatrix, Word
from .errors import BudgetExceeded, InvalidArgument, InvalidFolding, InvalidInput, NotABuilding
from .simplicial import SimplicialComplex, missing_simplex

DEFAULT_CLASS_BUDGET = 10**6


@dataclass(frozen=True, eq=False)
class FoldingData:
    """A simplicial map f: L -> L(target), injective on simplices and onto the generators."""

    L: SimplicialComplex
    target: CoxeterMatrix
    f: Mapping

    def __post_init__(self):
        f = dict(self.f)
        object.__setattr__(self, "f", f)
        for s in self.L.vertices:
            if s not in f:
                raise InvalidFolding(f"f is undefined on vertex {s!r}")
            if f[s] not in self.target.generators:
                raise InvalidFolding(f"f({s}) = {f[s]!r} is not a target generator")
        if set(f) != set(self.L.vertices):
            raise InvalidFolding("f is defined off the vertex set of L")
        if set(f.values()) != set(self.target.generators):
            raise InvalidFolding("f is not onto the target generators")
        for face in self.L.faces:
            image = {f[s] for s in face}
            if len(image) != len(face):
                raise InvalidFolding(f"f is not injective on the simplex {sorted(face)}")
            if not cx.is_spherical(image, self.target):
                raise InvalidFolding(f"f maps {sorted(face)} to a non-spherical subset")

    @property
    def generators(self) -> tuple:
        return self.L.vertices

    def to_json(self) -> dict:
        return {"L": self.L.to_json(), "target": self.target.to_json(), "f": dict(self.f)}

    @classmethod
    def from_json(cls, doc: Mapping) -> "FoldingData":
        try:
            return cls(SimplicialComplex.from_json(doc["L"]), CoxeterMatrix.from_json(doc["target"]), dict(doc["f"]))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed folding document: {exc}") from exc


def surgery(fd: FoldingData) -> CoxeterMatrix:
    """m(s,t) = m'(f(s), f(t)) on edges of L and infinity on every other pair."""
    edges = {frozenset(e) for e in fd.L.edges()}
    labels = {}
    for s, t in itertools.combinations(fd.generators, 2):
        labels[s, t] = fd.target.m(fd.f[s], fd.f[t]) if frozenset((s, t)) in edges else INF
    return CoxeterMatrix.from_labels(fd.generators, labels)


def identity_folding(L: SimplicialComplex, target: CoxeterMatrix) -> FoldingData:
    return FoldingData(L, target, {s: s for s in L.vertices})


@dataclass(frozen=True)
class FlagNerveReport:
    flag: bool
    missing: tuple | None
    nerve_equals: bool

    def to_json(self) -> dict:
        return {"flag": self.flag, "missing": list(self.missing) if self.missing else None, "nerve_equals_L": self.nerve_equals}


def flag_nerve_check(fd: FoldingData) -> FlagNerveReport:
    """Is L flag? If so, L is the nerve of the surgered system (asserted)."""
    missing = missing_simplex(fd.L)
    equal = cx.nerve(surgery(fd)) == fd.L
    if missing is None:
        assert equal, "L is flag but differs from the nerve of the surgered system"
    return FlagNerveReport(missing is None, missing, equal)


@dataclass(frozen=True)
class GalleryClass:
    """A chamber of the covered building: the canonical reduced gallery from the base.

    The representative's type is always the canonical word of ``weyl``.
    """

    weyl: Word
    chambers: tuple

    @property
    def base(self):
        return self.chambers[0]

    @property
    def endpoint(self):
        return self.chambers[-1]

    @property
    def rep(self) -> Gallery:
        return Gallery(self.chambers, self.weyl)


class Cover:
    """The covered building over C' for one folding; galleries are canonicalized lazily."""

    def __init__(self, folding: FoldingData, building: Building, verify: bool = True, budget: int = cx.DEFAULT_BUDGET):
        if building.coxeter != folding.target:
            raise InvalidArgument("building type differs from the folding target")
        if verify:
            verdict = verify_building(building)
            if not verdict:
                raise NotABuilding(f"C' fails {verdict.check}: {verdict.witness}")
        self.folding = folding
        self.building = building
        self.W = surgery(folding)
        self.budget = budget
        self._canon: dict = {}

    def reduce(self, word) -> Word:
        return cx.tits_reduce(word, self.W, self.budget)

    def project_word(self, word) -> Word:
        """The homomorphism W -> W' induced by f."""
        return cx.tits_reduce([self.folding.f[a] for a in word], self.folding.target, self.budget)

    def root(self, base) -> GalleryClass:
        if base not in self.building._order:
            raise InvalidArgument(f"unknown chamber {base!r}")
        return GalleryClass((), (base,))

    def is_gallery(self, word, chambers) -> bool:
        f = self.folding.f
        return self.building.system.is_gallery(chambers, [f[a] for a in word])

    def downstairs_gallery(self, start, end, word) -> tuple:
        """The unique gallery of reduced type ``word`` from start to end in C'."""
        B, f = self.building, self.folding.f
        chambers = [start]
        for i, a in enumerate(word):
            rest = self.project_word(word[i + 1 :])
            step = [Y for Y in B.neighbours(f[a], chambers[-1]) if B.distance(Y, end) == rest]
            if len(step) != 1:
                raise NotABuilding(f"no unique gallery of type {word} from {start!r} to {end!r}")
            chambers.append(step[0])
        return tuple(chambers)

    def gallery_flips(self, word, chambers):
        W = self.W
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            if a == b:
                continue
            m = W.m(a, b)
            if m == INF or i + m > len(word) or word[i : i + m] != cx.prod_word(a, b, m):
                continue
            flipped = cx.prod_word(b, a, m)
            mid = self.downstairs_gallery(chambers[i], chambers[i + m], flipped)
            yield word[:i] + flipped + word[i + m :], chambers[:i] + mid + chambers[i + m + 1 :]

    def orbit(self, word, chambers) -> list[tuple]:
        start = (tuple(word), tuple(chambers))
        seen = {start}
        queue = deque([start])
        while queue:
            for g in self.gallery_flips(*queue.popleft()):
                if g not in seen:
                    seen.add(g)
                    queue.append(g)
                    if len(seen) > self.budget:
                        raise BudgetExceeded("flip orbit exceeded the budget")
        return sorted(seen, key=self._gallery_key)

    def _gallery_key(self, g):
        word, chambers = g
        return self.W.key(word), tuple(self.building.order(c) for c in chambers)

    def canonical(self, word, chambers) -> GalleryClass:
        key = (tuple(word), tuple(chambers))
        hit = self._canon.get(key)
        if hit is None:
            orbit = self.orbit(*key)
            hit = GalleryClass(*orbit[0])
            for g in orbit:
                self._canon[g] = hit
        return hit

    def extend(self, g: GalleryClass, s, D) -> GalleryClass:
        """The chamber s-adjacent to g lying over D.

        If ws is longer than w, append the step. Otherwise flip to a gallery
        ending in s; its last three chambers share an s-panel, so either the
        penultimate chamber is D (drop the last step) or D replaces the last one.
        """
        f = self.folding.f
        E = g.endpoint
        if D == E or D not in self.building.panel(f[s], E):
            raise InvalidArgument(f"{D!r} is not {f[s]}-adjacent to {E!r} in C'")
        w = g.weyl
        if len(self.reduce(w + (s,))) > len(w):
            return self.canonical(w + (s,), g.chambers + (D,))
        word, chambers = next(h for h in self.orbit(w, g.chambers) if h[0][-1] == s)
        if chambers[-2] == D:
            return self.canonical(word[:-1], chambers[:-1])
        return self.canonical(word, chambers[:-1] + (D,))

    def distance(self, X: GalleryClass, Y: GalleryClass) -> Word:
        """delta(X, Y): walk X's gallery backwards then Y's forwards, rooted at X."""
        if X.base != Y.base:
            raise InvalidArgument("classes have different base chambers")
        g = self.root(X.endpoint)
        for j in reversed(range(len(X.weyl))):
            g = self.extend(g, X.weyl[j], X.chambers[j])
        for j, s in enumerate(Y.weyl):
            g = self.extend(g, s, Y.chambers[j + 1])
        assert g.endpoint == Y.endpoint
        return g.weyl

    def panel_members(self, g: GalleryClass, s) -> list[GalleryClass]:
        """g and every class s-adjacent to it, in downstairs chamber order."""
        P = sorted(self.building.panel(self.folding.f[s], g.endpoint), key=self.building.order)
        return [g if D == g.endpoint else self.extend(g, s, D) for D in P]

    def ball(self, base, radius: int, budget: int = DEFAULT_CLASS_BUDGET) -> "CoveredBall":
        if radius < 0:
            raise InvalidArgument("radius must be >= 0")
        f = self.folding.f
        root = self.root(base)
        classes = [root]
        index = {root: 0}
        sphere = [root]
        for n in range(radius):
            nxt = []
            for g in sphere:
                for s in self.W.generators:
                    if len(self.reduce(g.weyl + (s,))) <= n:
                        continue
                    for D in self.building.neighbours(f[s], g.endpoint):
                        h = self.extend(g, s, D)
                        if h not in index:
                            index[h] = len(classes)
                            classes.append(h)
                            nxt.append(h)
                            if len(classes) > budget:
                                raise BudgetExceeded(f"ball exceeds {budget} classes")
            sphere = nxt
        panels = {}
        for s in self.W.generators:
            assigned = set()
            parts = []
            for i, g in enumerate(classes):
                if i in assigned:
                    continue
                members = frozenset(index[h] for h in self.panel_members(g, s) if h in index)
                assigned |= members
                parts.append(members)
            panels[s] = tuple(parts)
        return CoveredBall(self, base, radius, tuple(classes), panels)


@dataclass(eq=False)
class CoveredBall:
    cover: Cover
    base: object
    radius: int
    classes: tuple
    panels: dict  # s -> tuple of frozensets of class indices
    _index: dict = field(init=False, repr=False)
    _panel_of: dict = field(init=False, repr=False)
    _delta: dict = field(init=False, repr=False)

    def __post_init__(self):
        self._index = {g: i for i, g in enumerate(self.classes)}
        self._panel_of = {(s, i): P for s, parts in self.panels.items() for P in parts for i in P}
        self._delta = {}

    @property
    def folding(self) -> FoldingData:
        return self.cover.folding

    def __len__(self):
        return len(self.classes)

    def index(self, g: GalleryClass) -> int:
        return self._index[g]

    def projection(self, i: int):
        return self.classes[i].endpoint

    def panel(self, s, i: int) -> frozenset:
        return self._panel_of[s, i]

    def sphere_sizes(self) -> list[int]:
        sizes = [0] * (self.radius + 1)
        for g in self.classes:
            sizes[len(g.weyl)] += 1
        return sizes

    def distance(self, i: int, j: int) -> Word:
        key = (i, j)
        if key not in self._delta:
            self._delta[key] = self.cover.distance(self.classes[i], self.classes[j])
        return self._delta[key]

    def residue(self, i: int, T) -> frozenset:
        seen = {i}
        queue = deque([i])
        while queue:
            x = queue.popleft()
            for s in T:
                for y in self.panel(s, x):
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        return frozenset(seen)

    def to_json(self) -> dict:
        return {
            "folding": self.folding.to_json(),
            "building": self.cover.building.to_json(),
            "base": _jsonable(self.base),
            "radius": self.radius,
            "classes": [
                {"weyl": list(g.weyl), "gallery": [_jsonable(c) for c in g.chambers], "projection": _jsonable(g.endpoint)}
                for g in self.classes
            ],
            "panels": {s: [sorted(P) for P in parts] for s, parts in self.panels.items()},
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "CoveredBall":
        try:
            cover = Cover(FoldingData.from_json(doc["folding"]), Building.from_json(doc["building"]))
            classes = tuple(
                GalleryClass(tuple(c["weyl"]), tuple(_hashable(x) for x in c["gallery"])) for c in doc["classes"]
            )
            panels = {s: tuple(frozenset(P) for P in parts) for s, parts in doc["panels"].items()}
            return cls(cover, _hashable(doc["base"]), int(doc["radius"]), classes, panels)
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed ball document: {exc}") from exc


def extend_class(ball: CoveredBall, g: GalleryClass, s, D) -> GalleryClass:
    return ball.cover.extend(g, s, D)


def build_ball(fd: FoldingData, Cprime: Building, base, radius: int, budget: int = DEFAULT_CLASS_BUDGET) -> CoveredBall:
    return Cover(fd, Cprime).ball(base, radius, budget)


def _gallery_ball(B: Building, base, radius: int) -> set:
    dist = {base: 0}
    queue = deque([base])
    while queue:
        X = queue.popleft()
        if dist[X] == radius:
            continue
        for s in B.coxeter.generators:
            for Y in B.neighbours(s, X):
                if Y not in dist:
                    dist[Y] = dist[X] + 1
                    queue.append(Y)
    return set(dist)


def verify_cover(ball: CoveredBall, interior: int) -> Verdict:
    """Building axioms and covering properties on the classes of length <= interior."""
    if interior > ball.radius - 1 or interior < 0:
        raise InvalidArgument("interior radius must lie in [0, radius - 1]")
    cover = ball.cover
    W, B, f = cover.W, cover.building, cover.folding.f
    inner = [i for i, g in enumerate(ball.classes) if len(g.weyl) <= interior]
    cls = ball.classes

    for i in inner:
        for j in inner:
            if (ball.distance(i, j) == ()) != (i == j):
                return Verdict(False, "WD1", {"C": cls[i].chambers, "D": cls[j].chambers})
    for i in inner:
        for j in inner:
            w = ball.distance(i, j)
            for s in W.generators:
                sw = cover.reduce((s,) + w)
                for k in sorted(ball.panel(s, i) - {i}):
                    got = ball.distance(k, j)
                    if ball.distance(k, i) != (s,) or got not in (sw, w) or (len(sw) > len(w) and got != sw):
                        return Verdict(
                            False,
                            "WD2",
                            {"C": cls[i].chambers, "D": cls[j].chambers, "s": s, "C'": cls[k].chambers,
                             "delta(C,D)": w, "delta(C',D)": got},
                        )
    for i in inner:
        for j in inner:
            w = ball.distance(i, j)
            for s in W.generators:
                sw = cover.reduce((s,) + w)
                if not any(ball.distance(k, j) == sw for k in ball.panel(s, i) - {i}):
                    return Verdict(False, "WD3", {"C": cls[i].chambers, "D": cls[j].chambers, "s": s})
    for i in inner:
        for j in inner:
            if ball.distance(i, j) != cover.reduce(cx.inverse(ball.distance(j, i))):
                return Verdict(False, "rebasing", {"C": cls[i].chambers, "D": cls[j].chambers})

    for i in inner:
        for s in W.generators:
            expected = frozenset(ball.index(h) for h in cover.panel_members(cls[i], s))
            if ball.panel(s, i) != expected:
                return Verdict(False, "panels", {"C": cls[i].chambers, "s": s})
            down = B.panel(f[s], cls[i].endpoint)
            image = {ball.projection(k) for k in expected}
            if len(expected) != len(down) or image != set(down):
                return Verdict(False, "panel-size", {"C": cls[i].chambers, "s": s})

    spherical = [T for T in cx.spherical_poset(W) if T]
    longest = {T: cx.longest_length(T, W) for T in spherical}
    for i in inner:
        for T in spherical:
            if len(cls[i].weyl) + longest[T] > ball.radius:
                continue
            up = ball.residue(i, W.sort(T))
            image = [ball.projection(k) for k in up]
            down = residue(B, cls[i].endpoint, {f[s] for s in T})
            if len(set(image)) != len(image) or set(image) != set(down):
                return Verdict(False, "local-isomorphism", {"C": cls[i].chambers, "T": W.sort(T)})

    for i in inner:
        g = cls[i]
        words = set()
        for word, chambers in cover.orbit(g.weyl, g.chambers):
            words.add(word)
            if not cover.is_gallery(word, chambers) or chambers[0] != g.base or chambers[-1] != g.endpoint:
                return Verdict(False, "flip-closure", {"C": g.chambers, "type": word})
            if cover.canonical(word, chambers) != g:
                return Verdict(False, "flip-closure", {"C": g.chambers, "type": word})
        if words != set(cx.reduced_words(g.weyl, W)):
            return Verdict(False, "flip-closure", {"C": g.chambers, "types": len(words)})

    if {g.endpoint for g in cls} != _gallery_ball(B, ball.base, ball.radius):
        return Verdict(False, "deck", {"radius": ball.radius})
    return PASS
