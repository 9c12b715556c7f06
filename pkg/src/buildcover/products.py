"""
Partial products of Coxeter systems and buildings, with the square product as the main special case.

Factor generators are namespaced as ``f"{s}_{i}"`` for factor i on assembly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import coxeter as cx
from .chambers import Building, product_building
from .coxeter import INF, CoxeterMatrix
from .cover import CoveredBall, Cover, identity_folding
from .errors import InvalidArgument, InvalidInput
from .simplicial import Poset, SimplicialComplex, octahedral_complex


def tag(s, i: int) -> str:
    return f"{s}_{i}"


@dataclass(frozen=True, eq=False)
class ProductSpec:
    """Factors plus, for i != j, the pairs R_ij of S_i x S_j whose edge is deleted."""

    factors: tuple
    relations: dict = field(default_factory=dict)

    def __post_init__(self):
        factors = tuple(self.factors)
        rel = {}
        for (i, j), pairs in dict(self.relations).items():
            if i == j or not (0 <= i < len(factors) and 0 <= j < len(factors)):
                raise InvalidArgument(f"bad factor pair ({i}, {j})")
            pairs = frozenset(tuple(p) for p in pairs)
            for s, t in pairs:
                if s not in factors[i].generators or t not in factors[j].generators:
                    raise InvalidArgument(f"({s}, {t}) is not in S_{i} x S_{j}")
            transposed = frozenset((t, s) for s, t in pairs)
            if (j, i) in rel and rel[j, i] != transposed:
                raise InvalidArgument(f"R_{j}{i} is not the transpose of R_{i}{j}")
            rel[i, j] = pairs
            rel[j, i] = transposed
        for i, j in itertools.permutations(range(len(factors)), 2):
            rel.setdefault((i, j), frozenset())
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "relations", rel)

    @property
    def generators(self) -> tuple:
        return tuple(tag(s, i) for i, M in enumerate(self.factors) for s in M.generators)

    def owner(self, label) -> tuple:
        """(factor index, original label) of a namespaced generator."""
        for i, M in enumerate(self.factors):
            for s in M.generators:
                if tag(s, i) == label:
                    return i, s
        raise InvalidArgument(f"{label!r} is not a generator of the product")


def direct_product_spec(factors: Sequence[CoxeterMatrix]) -> ProductSpec:
    return ProductSpec(tuple(factors), {})


def free_product_spec(factors: Sequence[CoxeterMatrix]) -> ProductSpec:
    rel = {
        (i, j): set(itertools.product(factors[i].generators, factors[j].generators))
        for i, j in itertools.combinations(range(len(factors)), 2)
    }
    return ProductSpec(tuple(factors), rel)


def graph_product_spec(factors: Sequence[CoxeterMatrix], edges: Iterable) -> ProductSpec:
    """Commuting across edges of the graph on factor indices, free across non-edges."""
    edges = {frozenset(e) for e in edges}
    rel = {}
    for i, j in itertools.combinations(range(len(factors)), 2):
        if frozenset((i, j)) not in edges:
            rel[i, j] = set(itertools.product(factors[i].generators, factors[j].generators))
    return ProductSpec(tuple(factors), rel)


def product_matrix(spec: ProductSpec) -> CoxeterMatrix:
    labels = {}
    for i, M in enumerate(spec.factors):
        for s, t in itertools.combinations(M.generators, 2):
            labels[tag(s, i), tag(t, i)] = M.m(s, t)
    for (i, j), pairs in spec.relations.items():
        if i < j:
            for s in spec.factors[i].generators:
                for t in spec.factors[j].generators:
                    labels[tag(s, i), tag(t, j)] = INF if (s, t) in pairs else 2
    return CoxeterMatrix.from_labels(spec.generators, labels)


@dataclass(frozen=True, eq=False)
class SquareSpec:
    """Equinumerous factors with a compatible family of bijections theta[i, j]: S_i -> S_j."""

    factors: tuple
    bijections: dict

    def __post_init__(self):
        factors = tuple(self.factors)
        n = len(factors)
        theta = {k: dict(v) for k, v in dict(self.bijections).items()}
        for i in range(n):
            theta.setdefault((i, i), {s: s for s in factors[i].generators})
        for i, j in itertools.product(range(n), repeat=2):
            if (i, j) not in theta:
                if (j, i) in theta:
                    theta[i, j] = {t: s for s, t in theta[j, i].items()}
                elif (i, 0) in theta and (0, j) in theta:
                    theta[i, j] = {s: theta[0, j][theta[i, 0][s]] for s in factors[i].generators}
                elif (0, i) in theta and (0, j) in theta:
                    inv = {t: s for s, t in theta[0, i].items()}
                    theta[i, j] = {s: theta[0, j][inv[s]] for s in factors[i].generators}
                else:
                    raise InvalidArgument(f"bijection theta_{i}{j} cannot be derived")
        for (i, j), th in theta.items():
            if set(th) != set(factors[i].generators) or sorted(th.values(), key=repr) != sorted(
                factors[j].generators, key=repr
            ):
                raise InvalidArgument(f"theta_{i}{j} is not a bijection S_{i} -> S_{j}")
        for i in range(n):
            if any(theta[i, i][s] != s for s in factors[i].generators):
                raise InvalidArgument(f"theta_{i}{i} is not the identity")
        for i, j, k in itertools.product(range(n), repeat=3):
            if any(theta[j, k][theta[i, j][s]] != theta[i, k][s] for s in factors[i].generators):
                raise InvalidArgument(f"bijections are not compatible at ({i}, {j}, {k})")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "bijections", theta)

    @classmethod
    def identical_labels(cls, factors: Sequence[CoxeterMatrix]) -> "SquareSpec":
        """All factors share their generator labels; every theta is the identity."""
        return cls(tuple(factors), {(0, j): {s: s for s in factors[0].generators} for j in range(len(factors))})

    def as_product(self) -> ProductSpec:
        rel = {
            (i, j): {(s, self.bijections[i, j][s]) for s in self.factors[i].generators}
            for i, j in itertools.combinations(range(len(self.factors)), 2)
        }
        return ProductSpec(self.factors, rel)

    @property
    def generators(self) -> tuple:
        return self.as_product().generators


def square_matrix(spec: SquareSpec) -> CoxeterMatrix:
    """Infinity exactly on pairs (s, theta_ij(s)) across factors, 2 on other cross pairs."""
    return product_matrix(spec.as_product())


def product_spherical_check(spec, T: Iterable) -> bool:
    """Spherical test factor by factor plus the cross condition, checked against the assembled matrix."""
    if isinstance(spec, SquareSpec):
        spec = spec.as_product()
    parts = {}
    for label in T:
        i, s = spec.owner(label)
        parts.setdefault(i, set()).add(s)
    ok = all(cx.is_spherical(Ti, spec.factors[i]) for i, Ti in parts.items())
    for (i, j), pairs in spec.relations.items():
        if i in parts and j in parts:
            if any((s, t) in pairs for s in parts[i] for t in parts[j]):
                ok = False
    assert ok == cx.is_spherical(T, product_matrix(spec)), "factorwise test disagrees with the assembled matrix"
    return ok


@dataclass(frozen=True, eq=False)
class SquareNerve:
    complex: SimplicialComplex  # subcomplex of O(p, V)
    octahedral: SimplicialComplex
    embedding: dict  # namespaced generator -> (v, i)


def square_nerve(spec: SquareSpec) -> SquareNerve:
    """The nerve of a square product as a subcomplex of O(p, V), V = S_0."""
    p = len(spec.factors) - 1
    V = spec.factors[0].generators
    O = octahedral_complex(p, V)
    M = square_matrix(spec)
    embed = {}
    for i, Mi in enumerate(spec.factors):
        for s in Mi.generators:
            embed[tag(s, i)] = (spec.bijections[i, 0][s], i)
    faces = set()
    for T in cx.spherical_poset(M):
        U = frozenset(embed[t] for t in T)
        if len({v for v, _ in U}) != len(U):
            raise AssertionError("a spherical subset meets a theta-diagonal pair")
        faces.add(U)
    sub = SimplicialComplex(O.vertices, frozenset(faces))
    if not sub.faces <= O.faces:
        raise AssertionError("square nerve is not a subcomplex of O(p, V)")
    nerve = cx.nerve(M)
    if {frozenset(embed[t] for t in f) for f in nerve.faces} != sub.faces:
        raise AssertionError("embedding is not an isomorphism onto the nerve")
    return SquareNerve(sub, O, embed)


def cube_face_poset(n: int) -> Poset:
    """Nonempty faces of [0,1]^n as words over {0, 1, *}, ordered by inclusion."""
    faces = list(itertools.product("01*", repeat=n))

    def contained(a, b):
        return a != b and all(x == y or y == "*" for x, y in zip(a, b))

    return Poset.from_order(faces, contained)


def namespaced_buildings(buildings: Sequence[Building]) -> list[Building]:
    return [B.relabel({s: tag(s, i) for s in B.coxeter.generators}) for i, B in enumerate(buildings)]


def product_cover_pipeline(spec, buildings: Sequence[Building], radius: int, base=None) -> CoveredBall:
    """Ball in the free/graph/square product building.

    C' is the direct product of the factor buildings, L is the nerve of the
    assembled system and f is the identity on generators.
    """
    if isinstance(spec, SquareSpec):
        spec = spec.as_product()
    if len(buildings) != len(spec.factors):
        raise InvalidArgument("one building per factor is required")
    for i, (B, M) in enumerate(zip(buildings, spec.factors)):
        if B.coxeter != M:
            raise InvalidArgument(f"building {i} does not have the type of factor {i}")
    Cprime = product_building(namespaced_buildings(buildings))
    W = product_matrix(spec)
    fd = identity_folding(cx.nerve(W), Cprime.coxeter)
    if base is None:
        base = Cprime.chambers[0]
    return Cover(fd, Cprime).ball(base, radius)


def _pair_key(key: str) -> tuple:
    try:
        i, j = (int(x) for x in key.split(","))
    except ValueError:
        raise InvalidInput(f"factor pair key {key!r} is not of the form 'i,j'") from None
    return i, j


def spec_from_json(doc: Mapping):
    """ProductSpec or SquareSpec from {"factors": [...]} plus "relations", "graph" or "square"."""
    try:
        factors = [CoxeterMatrix.from_json(M) for M in doc["factors"]]
        if "square" in doc:
            bij = {_pair_key(k): dict(v) for k, v in doc["square"].get("bijections", {}).items()}
            if not bij:
                return SquareSpec.identical_labels(factors)
            return SquareSpec(tuple(factors), bij)
        if "graph" in doc:
            return graph_product_spec(factors, [tuple(e) for e in doc["graph"]["edges"]])
        rel = {_pair_key(k): [tuple(p) for p in v] for k, v in doc.get("relations", {}).items()}
        return ProductSpec(tuple(factors), rel)
    except (KeyError, TypeError, AttributeError) as exc:
        raise InvalidInput(f"malformed product document: {exc}") from exc


def spec_to_json(spec) -> dict:
    doc = {"factors": [M.to_json() for M in spec.factors]}
    if isinstance(spec, SquareSpec):
        n = len(spec.factors)
        doc["square"] = {"bijections": {f"0,{j}": dict(spec.bijections[0, j]) for j in range(1, n)}}
    else:
        doc["relations"] = {
            f"{i},{j}": sorted([list(p) for p in pairs], key=repr)
            for (i, j), pairs in spec.relations.items()
            if i < j and pairs
        }
    return doc
