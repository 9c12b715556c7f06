import itertools

import pytest
from hypothesis import given, settings, strategies as st

from buildcover import coxeter as cx
from buildcover import fixtures as fx
from buildcover.chambers import thin_building, verify_building
from buildcover.cover import (
    Cover,
    CoveredBall,
    FoldingData,
    GalleryClass,
    build_ball,
    extend_class,
    flag_nerve_check,
    identity_folding,
    surgery,
    verify_cover,
)
from buildcover.coxeter import INF, CoxeterMatrix
from buildcover.errors import BudgetExceeded, InvalidArgument, InvalidFolding, NotABuilding
from buildcover.products import SquareSpec, square_matrix
from buildcover.simplicial import SimplicialComplex, cycle, octahedral_complex, points, simplex

from oracles import ReflectionGroup, tree_sphere_sizes

HEX = fx.thin_dihedral(3)
FANO = fx.fano()
PRISM = fx.fano_prism()


@pytest.fixture(scope="module")
def hex_ball():
    return build_ball(fx.two_point_folding(HEX), HEX, (), 5)


@pytest.fixture(scope="module")
def fano_ball():
    return build_ball(fx.two_point_folding(FANO), FANO, FANO.chambers[0], 4)


@pytest.fixture(scope="module")
def prism_ball():
    return build_ball(fx.fano_prism_folding(PRISM), PRISM, PRISM.chambers[0], 4)


def test_surgery_examples():
    assert surgery(fx.edge_folding(HEX)) == HEX.coxeter
    assert surgery(fx.two_point_folding(HEX)) == cx.dihedral(INF)


@pytest.mark.parametrize("target", [cx.CoxeterMatrix.from_labels("abc"), cx.type_a(3, "abc")], ids=["A1^3", "A3"])
def test_octahedral_folding(target):
    L = octahedral_complex(1, "abc")
    fd = FoldingData(L, target, {v: v[0] for v in L.vertices})
    W = surgery(fd)
    for x, y in itertools.combinations(L.vertices, 2):
        assert (W.m(x, y) == INF) == (x[0] == y[0])
    # K(L) is a cube: its faces are the spherical subsets
    assert len(cx.spherical_poset(W)) == 27
    # with a right-angled target the surgered matrix is the square product matrix
    square = square_matrix(SquareSpec.identical_labels([cx.CoxeterMatrix.from_labels("abc")] * 2))
    agrees = all(W.m(x, y) == square.m(f"{x[0]}_{x[1]}", f"{y[0]}_{y[1]}") for x, y in itertools.product(L.vertices, repeat=2))
    assert agrees == (target.rank == 3 and all(target.m(s, t) == 2 for s, t in itertools.combinations("abc", 2)))


def test_folding_validation():
    target = cx.dihedral(3)
    with pytest.raises(InvalidFolding):
        FoldingData(simplex("ab"), target, {"a": "s", "b": "s"})
    with pytest.raises(InvalidFolding):
        FoldingData(points("ab"), target, {"a": "s", "b": "s"})
    with pytest.raises(InvalidFolding):
        FoldingData(points("ab"), target, {"a": "s"})
    with pytest.raises(InvalidFolding):
        FoldingData(simplex("abc"), CoxeterMatrix.from_labels("abc", {("a", "b"): 3, ("b", "c"): 6}), {x: x for x in "abc"})


def test_flag_nerve_examples():
    report = flag_nerve_check(fx.four_cycle_folding())
    assert report.flag and report.nerve_equals
    report = flag_nerve_check(fx.hollow_triangle_folding())
    assert not report.flag and report.missing == ("r", "s", "t") and not report.nerve_equals
    assert flag_nerve_check(fx.edge_folding(HEX)).flag


def test_unverified_building_is_refused():
    with pytest.raises(NotABuilding):
        Cover(fx.two_point_folding(HEX), fx.corrupted_hexagon())


def test_dinf_hexagon_ball_sizes(hex_ball):
    assert hex_ball.sphere_sizes() == [1, 2, 2, 2, 2, 2]
    assert [sum(hex_ball.sphere_sizes()[: n + 1]) for n in range(5)] == [1, 3, 5, 7, 9]
    assert hex_ball.sphere_sizes() == tree_sphere_sizes({"s": 2, "t": 2}, 5)


def test_fano_sphere_sizes(fano_ball):
    assert fano_ball.sphere_sizes() == [1, 4, 8, 16, 32]
    assert fano_ball.sphere_sizes() == tree_sphere_sizes({"s": 3, "t": 3}, 4)
    small = build_ball(fx.two_point_folding(FANO), FANO, FANO.chambers[0], 2)
    assert len(small) == 13
    assert len(build_ball(fx.two_point_folding(FANO), FANO, FANO.chambers[0], 0)) == 1


def test_prism_sphere_sizes_match_thickness_formula(prism_ball):
    W = surgery(fx.fano_prism_folding(PRISM))
    expected = ReflectionGroup(W).thick_sphere_sizes({"s": 3, "t": 3, "u": 2}, 4)
    assert prism_ball.sphere_sizes() == expected


@pytest.mark.parametrize("name", ["hex", "fano", "prism"])
def test_verify_cover_passes(name, hex_ball, fano_ball, prism_ball):
    ball = {"hex": hex_ball, "fano": fano_ball, "prism": prism_ball}[name]
    assert verify_cover(ball, 3).ok


def test_verify_cover_interior_range(fano_ball):
    with pytest.raises(InvalidArgument):
        verify_cover(fano_ball, 4)
    with pytest.raises(InvalidArgument):
        verify_cover(fano_ball, -1)


def test_corrupted_panels_fail_wd2():
    verdict = verify_cover(fx.corrupted_cover_ball(), 3)
    assert not verdict.ok and verdict.check == "WD2"


@pytest.mark.parametrize("B, count", [(HEX, 6), (FANO, 21)], ids=["hexagon", "fano"])
def test_identity_surgery_reproduces_building(B, count):
    ball = build_ball(fx.edge_folding(B), B, B.chambers[0], 4)
    assert len(ball) == count
    assert sorted(ball.projection(i) for i in range(len(ball))) == sorted(B.chambers)
    for i, j in itertools.product(range(len(ball)), repeat=2):
        assert ball.distance(i, j) == B.distance(ball.projection(i), ball.projection(j))
    assert verify_cover(ball, 3).ok


def test_canonicalization_soundness(fano_ball, prism_ball):
    for ball in (fano_ball, prism_ball):
        cover = ball.cover
        for g in ball.classes:
            for word, chambers in cover.orbit(g.weyl, g.chambers):
                assert chambers[-1] == g.endpoint
                assert cover.canonical(word, chambers) == g
            assert g.weyl == cx.tits_reduce(g.weyl, cover.W)


def test_rebasing_consistency(prism_ball):
    cover = prism_ball.cover
    inner = [i for i, g in enumerate(prism_ball.classes) if len(g.weyl) <= 2]
    for i, j in itertools.product(inner, repeat=2):
        assert prism_ball.distance(i, j) == cover.reduce(cx.inverse(prism_ball.distance(j, i)))


def test_extend_examples(hex_ball, fano_ball):
    cover = hex_ball.cover
    root = cover.root(())
    for D in HEX.neighbours("s", ()):
        assert extend_class(hex_ball, root, "s", D).weyl == ("s",)
    up = extend_class(hex_ball, root, "s", ("s",))
    assert extend_class(hex_ball, up, "s", ()) == root
    with pytest.raises(InvalidArgument):
        cover.extend(root, "s", ("t",))

    cover = fano_ball.cover
    C = FANO.chambers[0]
    st_classes = [g for g in fano_ball.classes if g.weyl == ("s", "t")]
    g = st_classes[0]
    siblings = [cover.extend(g, "t", D) for D in FANO.neighbours("t", g.endpoint)]
    # the back-step returns to the prefix class; the other chamber of the panel is a sibling of weyl st
    assert {h.weyl for h in siblings} == {("s",), ("s", "t")}
    sibling = next(h for h in siblings if h.weyl == ("s", "t"))
    assert sibling != g and sibling.endpoint != g.endpoint
    assert len({h for h in st_classes}) == 4 and C == g.base


def test_ball_json_roundtrip(fano_ball):
    again = CoveredBall.from_json(fano_ball.to_json())
    assert again.classes == fano_ball.classes
    assert again.panels == fano_ball.panels
    assert verify_cover(again, 2) == verify_cover(fano_ball, 2)


def test_class_budget():
    with pytest.raises(BudgetExceeded):
        build_ball(fx.two_point_folding(FANO), FANO, FANO.chambers[0], 4, budget=10)


def _foldings_of_thin(M):
    """Every L between the vertex set and the nerve of M, identity folding."""
    nerve = cx.nerve(M)
    extra = [f for f in nerve.faces if len(f) >= 2]
    for k in range(len(extra) + 1):
        for chosen in itertools.combinations(extra, k):
            faces = {frozenset((v,)) for v in M.generators} | {frozenset()}
            for f in chosen:
                faces |= {frozenset(c) for r in range(len(f) + 1) for c in itertools.combinations(f, r)}
            yield SimplicialComplex(M.generators, frozenset(faces))


THIN_TARGETS = [cx.dihedral(3), cx.dihedral(4), cx.CoxeterMatrix.from_labels("abc"), cx.type_a(3, "abc")]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(THIN_TARGETS), st.data())
def test_thin_covers_are_thin_buildings_of_the_surgered_group(M, data):
    Ls = list(_foldings_of_thin(M))
    L = data.draw(st.sampled_from(Ls))
    B = thin_building(M)
    fd = identity_folding(L, M)
    ball = build_ball(fd, B, (), 4)
    assert ball.sphere_sizes() == ReflectionGroup(surgery(fd)).sphere_sizes(4)
    assert all(len(P) == 2 for parts in ball.panels.values() for P in parts if len(P) > 1)
