"""
Coxeter matrices and exact word manipulation in Coxeter groups.

Words are tuples of generator labels. Every element of W has a canonical
form: the lexicographically least reduced expression, with letters ordered
by their position in ``CoxeterMatrix.generators``. It is found by Tits'
rewriting: cancel ``ss`` wherever a flip orbit exposes it, and take the
least word of the final orbit (which is the set of all reduced expressions).

Finiteness of special subgroups is decided from the classification of
finite irreducible Coxeter diagrams, never numerically.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import BudgetExceeded, GroupTooLarge, InvalidArgument

INF = math.inf
DEFAULT_BUDGET = 10**6
DEFAULT_CUTOFF = 10**4

Word = tuple


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric matrix over ``generators`` with ones on the diagonal.

    Off-diagonal entries are integers >= 2 or ``INF``.
    """

    generators: tuple
    entries: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise InvalidArgument(f"duplicate generator labels in {gens}")
        n = len(gens)
        rows = []
        for row in self.entries:
            row = tuple(INF if x == INF else int(x) for x in row)
            if len(row) != n:
                raise InvalidArgument("Coxeter matrix is not square")
            rows.append(row)
        if len(rows) != n:
            raise InvalidArgument("Coxeter matrix is not square")
        for i in range(n):
            if rows[i][i] != 1:
                raise InvalidArgument(f"diagonal entry m({gens[i]},{gens[i]}) must be 1")
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise InvalidArgument(f"asymmetric entry at ({gens[i]},{gens[j]})")
                if rows[i][j] < 2:
                    raise InvalidArgument(
                        f"off-diagonal entry m({gens[i]},{gens[j]}) must be >= 2 or infinity"
                    )
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "entries", tuple(rows))
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(gens)})

    @classmethod
    def from_labels(cls, generators: Sequence, labels: Mapping = (), default=2) -> "CoxeterMatrix":
        """Build from a sparse map ``{(s, t): m}``; unlisted pairs get ``default``."""
        gens = tuple(generators)
        idx = {s: i for i, s in enumerate(gens)}
        rows = [[1 if i == j else default for j in range(len(gens))] for i in range(len(gens))]
        for (s, t), m in dict(labels).items():
            if s not in idx or t not in idx:
                raise InvalidArgument(f"unknown generator in pair ({s}, {t})")
            rows[idx[s]][idx[t]] = rows[idx[t]][idx[s]] = m
        return cls(gens, tuple(map(tuple, rows)))

    @classmethod
    def from_json(cls, doc: Mapping) -> "CoxeterMatrix":
        """Load ``{"generators": [...], "matrix": [[...]]}`` where 0 encodes infinity."""
        try:
            gens = [str(s) for s in doc["generators"]]
            matrix = doc["matrix"]
            rows = tuple(tuple(INF if x == 0 else x for x in row) for row in matrix)
        except (KeyError, TypeError) as exc:
            raise InvalidArgument(f"malformed Coxeter matrix document: {exc}") from exc
        for row in rows:
            for x in row:
                if x != INF and (not isinstance(x, int) or isinstance(x, bool)):
                    raise InvalidArgument(f"non-integer Coxeter entry {x!r}")
        return cls(tuple(gens), rows)

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "matrix": [[0 if x == INF else x for x in row] for row in self.entries],
        }

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index(self, s) -> int:
        try:
            return self._index[s]
        except KeyError:
            raise InvalidArgument(f"{s!r} is not a generator") from None

    def m(self, s, t):
        return self.entries[self.index(s)][self.index(t)]

    def key(self, word: Sequence) -> tuple:
        """Sort key realising the lexicographic order on words."""
        return tuple(self._index[a] for a in word)

    def sort(self, subset: Iterable) -> tuple:
        return tuple(sorted(subset, key=self.index))

    def restrict(self, subset: Iterable) -> "CoxeterMatrix":
        gens = self.sort(subset)
        return CoxeterMatrix(gens, tuple(tuple(self.m(s, t) for t in gens) for s in gens))

    def relabel(self, mapping: Mapping) -> "CoxeterMatrix":
        return CoxeterMatrix(tuple(mapping[s] for s in self.generators), self.entries)

    def check_word(self, word: Iterable) -> Word:
        word = tuple(word)
        for a in word:
            if a not in self._index:
                raise InvalidArgument(f"letter {a!r} is not a generator of {self.generators}")
        return word


# -- standard matrices -----------------------------------------------------


def dihedral(m, generators=("s", "t")) -> CoxeterMatrix:
    """I2(m); pass ``INF`` for the infinite dihedral group."""
    s, t = generators
    return CoxeterMatrix.from_labels((s, t), {(s, t): m})


def type_a(n: int, generators: Sequence | None = None) -> CoxeterMatrix:
    gens = tuple(generators) if generators is not None else tuple(f"s{i}" for i in range(1, n + 1))
    return CoxeterMatrix.from_labels(gens, {(gens[i], gens[i + 1]): 3 for i in range(n - 1)})


def right_angled(vertices: Sequence, edges: Iterable) -> CoxeterMatrix:
    """Right-angled Coxeter group of a graph: 2 on edges, infinity elsewhere."""
    return CoxeterMatrix.from_labels(vertices, {tuple(e): 2 for e in edges}, default=INF)


def direct_sum(matrices: Sequence[CoxeterMatrix], cross=2) -> CoxeterMatrix:
    """Block matrix of ``matrices`` with every cross entry equal to ``cross``."""
    gens = tuple(s for M in matrices for s in M.generators)
    if len(set(gens)) != len(gens):
        raise InvalidArgument("factor generator sets are not disjoint")
    labels = {}
    for M in matrices:
        for s, t in itertools.combinations(M.generators, 2):
            labels[s, t] = M.m(s, t)
    return CoxeterMatrix.from_labels(gens, labels, default=cross)


# -- words -----------------------------------------------------------------


def prod_word(s, t, m: int) -> Word:
    """The alternating word (s, t, s, ...) of length m."""
    if m == INF or not isinstance(m, int) or m < 1:
        raise InvalidArgument(f"alternating word length must be a positive integer, got {m!r}")
    if s == t:
        raise InvalidArgument("alternating word needs two distinct generators")
    return tuple(s if i % 2 == 0 else t for i in range(m))


def inverse(word: Sequence) -> Word:
    return tuple(reversed(word))


def _free_cancel(word: Sequence) -> Word:
    out = []
    for a in word:
        if out and out[-1] == a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def _has_square(word: Sequence) -> bool:
    return any(word[i] == word[i + 1] for i in range(len(word) - 1))


def flips(word: Word, M: CoxeterMatrix) -> Iterator[Word]:
    """All words obtained from ``word`` by one braid move."""
    n = len(word)
    for i in range(n - 1):
        a, b = word[i], word[i + 1]
        if a == b:
            continue
        m = M.m(a, b)
        if m == INF or i + m > n:
            continue
        if word[i : i + m] == prod_word(a, b, m):
            yield word[:i] + prod_word(b, a, m) + word[i + m :]


@lru_cache(maxsize=1 << 18)
def _reduce(M: CoxeterMatrix, word: Word, budget: int) -> tuple[Word, frozenset]:
    steps = 0
    current = _free_cancel(word)
    while True:
        orbit = {current}
        queue = deque([current])
        shorter = None
        while queue and shorter is None:
            for v in flips(queue.popleft(), M):
                if v in orbit:
                    continue
                steps += 1
                if steps > budget:
                    raise BudgetExceeded(f"rewriting exceeded {budget} steps")
                if _has_square(v):
                    shorter = _free_cancel(v)
                    break
                orbit.add(v)
                queue.append(v)
        if shorter is None:
            return min(orbit, key=M.key), frozenset(orbit)
        current = shorter


def tits_reduce(word: Iterable, M: CoxeterMatrix, budget: int = DEFAULT_BUDGET) -> Word:
    """Canonical reduced expression for the value of ``word``."""
    return _reduce(M, M.check_word(word), budget)[0]


def reduced_words(word: Iterable, M: CoxeterMatrix, budget: int = DEFAULT_BUDGET) -> list[Word]:
    """Every reduced expression of the element represented by ``word``, sorted."""
    canon = tits_reduce(word, M, budget)
    return sorted(_reduce(M, canon, budget)[1], key=M.key)


def length(word: Iterable, M: CoxeterMatrix) -> int:
    return len(tits_reduce(word, M))


def multiply(u: Iterable, v: Iterable, M: CoxeterMatrix) -> Word:
    return tits_reduce(tuple(u) + tuple(v), M)


def words_equal(u: Iterable, v: Iterable, M: CoxeterMatrix) -> bool:
    return tits_reduce(u, M) == tits_reduce(v, M)


def is_reduced(word: Iterable, M: CoxeterMatrix) -> bool:
    word = tuple(word)
    return len(tits_reduce(word, M)) == len(word)


def enumerate_group(M: CoxeterMatrix, cutoff: int = DEFAULT_CUTOFF) -> list[Word]:
    """Canonical words of all elements of a finite W, in order of length.

    Raises GroupTooLarge once more than ``cutoff`` elements have been found.
    """
    elements = [()]
    sphere = [()]
    seen = {()}
    while sphere:
        nxt = []
        for w in sphere:
            for s in M.generators:
                v = tits_reduce(w + (s,), M)
                if len(v) > len(w) and v not in seen:
                    seen.add(v)
                    nxt.append(v)
        nxt.sort(key=M.key)
        elements.extend(nxt)
        if len(elements) > cutoff:
            raise GroupTooLarge(f"group has more than {cutoff} elements")
        sphere = nxt
    return elements


# -- finiteness ------------------------------------------------------------


def _components(M: CoxeterMatrix, subset: Sequence) -> list[list]:
    """Connected components of the Coxeter diagram (edges where m >= 3)."""
    remaining = list(subset)
    comps = []
    while remaining:
        comp = [remaining.pop(0)]
        i = 0
        while i < len(comp):
            a = comp[i]
            for b in list(remaining):
                if M.m(a, b) >= 3:
                    remaining.remove(b)
                    comp.append(b)
            i += 1
        comps.append(M.sort(comp))
    return comps


def _path_order(vertices: Sequence, adj: Mapping) -> list:
    start = next(v for v in vertices if len(adj[v]) <= 1)
    order = [start]
    while len(order) < len(vertices):
        order.append(next(u for u in adj[order[-1]] if u not in order))
    return order


def _irreducible_type(M: CoxeterMatrix, comp: Sequence) -> str | None:
    """Name of the finite irreducible type of a connected diagram, or None."""
    n = len(comp)
    if n == 1:
        return "A1"
    edges = {}
    adj = {v: [] for v in comp}
    for a, b in itertools.combinations(comp, 2):
        m = M.m(a, b)
        if m >= 3:
            if m == INF:
                return None
            edges[frozenset((a, b))] = m
            adj[a].append(b)
            adj[b].append(a)
    if n == 2:
        (m,) = edges.values()
        return "A2" if m == 3 else f"I2({m})"
    if len(edges) != n - 1:
        return None  # a connected diagram with a cycle
    degree = {v: len(adj[v]) for v in comp}
    heavy = [(e, m) for e, m in edges.items() if m > 3]
    branch = [v for v in comp if degree[v] >= 3]
    if not heavy:
        if not branch:
            return f"A{n}"
        if len(branch) > 1 or degree[branch[0]] > 3:
            return None
        centre = branch[0]
        arms = []
        for first in adj[centre]:
            prev, cur, k = centre, first, 1
            while degree[cur] == 2:
                prev, cur = cur, next(u for u in adj[cur] if u != prev)
                k += 1
            arms.append(k)
        p, q, r = sorted(arms)
        if p != 1:
            return None
        if q == 1:
            return f"D{n}"
        if q == 2 and r in (2, 3, 4):
            return f"E{n}"
        return None
    if len(heavy) > 1 or branch:
        return None
    (edge, m), = heavy
    path = _path_order(comp, adj)
    pos = min(path.index(v) for v in edge)
    at_end = pos in (0, n - 2)
    if m == 4:
        if at_end:
            return f"B{n}"
        return "F4" if n == 4 else None
    if m == 5 and at_end and n in (3, 4):
        return f"H{n}"
    return None


def finite_type(subset: Iterable, M: CoxeterMatrix) -> list[str] | None:
    """Names of the irreducible components of W_T if it is finite, else None."""
    subset = M.sort(set(subset))
    names = []
    for comp in _components(M, subset):
        name = _irreducible_type(M, comp)
        if name is None:
            return None
        names.append(name)
    return names


def is_spherical(subset: Iterable, M: CoxeterMatrix) -> bool:
    return finite_type(subset, M) is not None


@dataclass(frozen=True)
class SphericalPoset:
    """All spherical subsets of S, ordered by inclusion (always contains the empty set)."""

    matrix: CoxeterMatrix
    subsets: tuple

    def __iter__(self):
        return iter(self.subsets)

    def __len__(self):
        return len(self.subsets)

    def __contains__(self, subset):
        return frozenset(subset) in self.subsets

    def maximal(self) -> list[frozenset]:
        return [T for T in self.subsets if not any(T < U for U in self.subsets)]


def spherical_poset(M: CoxeterMatrix) -> SphericalPoset:
    """Upward closure search: a set is tested only when all its maximal proper subsets passed."""
    level = [frozenset()]
    found = [frozenset()]
    while level:
        present = set(level)
        candidates = set()
        for T in level:
            top = max((M.index(s) for s in T), default=-1)
            for s in M.generators[top + 1 :]:
                U = T | {s}
                if all(U - {u} in present for u in U):
                    candidates.add(U)
        level = sorted((U for U in candidates if is_spherical(U, M)), key=lambda U: M.key(M.sort(U)))
        found.extend(level)
    return SphericalPoset(M, tuple(found))


def longest_length(subset: Iterable, M: CoxeterMatrix) -> int:
    """Length of the longest element of a finite special subgroup W_T."""
    sub = M.restrict(subset)
    return len(enumerate_group(sub)[-1]) if sub.rank else 0


def nerve(M: CoxeterMatrix):
    """Simplicial complex on S whose simplices are the nonempty spherical subsets."""
    from .simplicial import SimplicialComplex

    return SimplicialComplex(M.generators, frozenset(spherical_poset(M).subsets))
