"""Small named examples used by the tests, the CLI corpus and the scripts."""

from __future__ import annotations

from . import coxeter as cx
from .chambers import Building, ChamberSystem, incidence_building, product_building, thin_building
from .cover import Cover, CoveredBall, FoldingData, identity_folding
from .products import SquareSpec, namespaced_buildings
from .simplicial import SimplicialComplex, cycle, octahedral_complex, points, simplex

FANO_LINES = tuple(tuple((i + d) % 7 for d in (0, 1, 3)) for i in range(7))


def thin_dihedral(m: int) -> Building:
    return thin_building(cx.dihedral(m))


def fano() -> Building:
    """Flag building of the Fano plane: 21 chambers, every panel of size 3."""
    return incidence_building(range(7), FANO_LINES)


def hexagon_product() -> Building:
    """Direct product of two thin hexagons: 36 chambers over a rank-4 system."""
    return product_building(namespaced_buildings([thin_dihedral(3), thin_dihedral(3)]))


def fano_prism() -> Building:
    """Fano flags times a thin rank-1 building: type I2(3) x A1, 42 chambers."""
    segment = Building.from_system(
        ChamberSystem((0, 1), {"u": (frozenset({0, 1}),)}), cx.CoxeterMatrix.from_labels(("u",))
    )
    return product_building([fano(), segment])


def fano_prism_folding(B: Building) -> FoldingData:
    """Nerve of I2(3) x A1 with the edge {s, u} deleted."""
    return identity_folding(SimplicialComplex.from_facets([("s", "t"), ("t", "u")]), B.coxeter)


def corrupted_hexagon() -> Building:
    """Thin I2(3) with one Weyl distance entry swapped: delta(1, st) := ts."""
    B = thin_dihedral(3)
    delta = dict(B.delta)
    delta[(), ("s", "t")] = ("t", "s")
    return Building(B.system, B.coxeter, delta)


def two_point_folding(B: Building) -> FoldingData:
    """L = two points: deletes the only edge of the rank-2 nerve."""
    return identity_folding(points(B.coxeter.generators), B.coxeter)


def edge_folding(B: Building) -> FoldingData:
    """L = the full edge: the surgery is the identity."""
    return identity_folding(simplex(B.coxeter.generators), B.coxeter)


def four_cycle_folding() -> FoldingData:
    """Square L folded onto A1 x A1; the surgered group is D_inf x D_inf."""
    L = cycle(("a", "b", "c", "d"))
    target = cx.CoxeterMatrix.from_labels(("s", "t"))
    return FoldingData(L, target, {"a": "s", "c": "s", "b": "t", "d": "t"})


def hollow_triangle_folding() -> FoldingData:
    """Boundary of a triangle mapped identically into the rank-3 right-angled (finite) system."""
    L = cycle(("r", "s", "t"))
    return identity_folding(L, cx.CoxeterMatrix.from_labels(("r", "s", "t")))


def octahedral(p: int, n: int):
    return octahedral_complex(p, tuple("abcdefgh"[:n]))


def square_of_dihedral(m, copies: int = 2) -> SquareSpec:
    return SquareSpec.identical_labels([cx.dihedral(m, ("a", "b"))] * copies)


def corrupted_cover_ball(radius: int = 4):
    """D_inf cover of the hexagon with the members of two s-panels swapped.

    The projection and class list are untouched, so only the panel structure
    disagrees with the Weyl distance.
    """
    B = thin_dihedral(3)
    ball = Cover(two_point_folding(B), B).ball(B.chambers[0], radius)
    parts = sorted((sorted(P) for P in ball.panels["s"] if len(P) == 2), key=lambda P: P[0])
    (a, b), (c, d) = parts[1], parts[2]
    swapped = [P for P in ball.panels["s"] if sorted(P) not in ([a, b], [c, d])]
    swapped += [frozenset((a, c)), frozenset((b, d))]
    panels = dict(ball.panels, s=tuple(swapped))
    return CoveredBall(ball.cover, ball.base, ball.radius, ball.classes, panels)
