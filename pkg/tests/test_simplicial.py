import itertools
import math

import pytest
from hypothesis import given, strategies as st

from buildcover import coxeter as cx
from buildcover.errors import InvalidArgument
from buildcover.simplicial import (
    Poset,
    SimplicialComplex,
    barycentric_subdivision,
    cycle,
    mirrored_chamber,
    face_poset,
    full_subcomplex,
    is_flag,
    is_isomorphic,
    join,
    missing_simplex,
    octahedral_complex,
    order_complex,
    points,
    punctured_check,
    reduced_homology,
    simplex,
    smith_invariants,
)

from oracles import rational_betti

EMPTY_COMPLEX = SimplicialComplex((), frozenset())
SQUARE = cycle("abcd")
K33 = octahedral_complex(2, "ab")
OCTAHEDRON = octahedral_complex(1, "abc")
# six-vertex real projective plane
RP2 = SimplicialComplex.from_facets(
    [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1), (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
)


@st.composite
def complexes(draw, max_vertices=6):
    n = draw(st.integers(1, max_vertices))
    verts = tuple(range(n))
    facets = draw(
        st.lists(st.lists(st.sampled_from(verts), min_size=1, max_size=4, unique=True), min_size=1, max_size=8)
    )
    return SimplicialComplex.from_facets([*facets, *[(v,) for v in verts]], verts)


def test_validation():
    with pytest.raises(InvalidArgument):
        SimplicialComplex(("a", "b"), frozenset({frozenset("ab"), frozenset("a")}))
    with pytest.raises(InvalidArgument):
        SimplicialComplex(("a",), frozenset({frozenset("ab"), frozenset("a"), frozenset("b")}))


def test_empty_complex_is_minus_one_sphere():
    H = reduced_homology(EMPTY_COMPLEX)
    assert H.betti == {-1: 1}
    assert frozenset() in EMPTY_COMPLEX.faces


def test_order_complex_examples():
    chain = Poset.from_order("abc", lambda x, y: x < y)
    assert order_complex(chain).f_vector() == (3, 3, 1)
    anti = Poset.from_order("abc", lambda x, y: False)
    assert order_complex(anti).f_vector() == (3,)
    boolean = [frozenset(), frozenset("s"), frozenset("t"), frozenset("st")]
    assert order_complex(Poset.from_order(boolean, lambda x, y: x < y)).f_vector() == (4, 5, 2)


def test_poset_rejects_non_transitive():
    with pytest.raises(InvalidArgument):
        Poset("abc", {("a", "b"), ("b", "c")})


def test_mirrored_chamber_examples():
    K = mirrored_chamber(cx.spherical_poset(cx.dihedral(cx.INF)))
    assert K.complex.f_vector() == (3, 2)
    assert [X.f_vector() for X in K.mirrors.values()] == [(1,), (1,)]
    K = mirrored_chamber(cx.spherical_poset(cx.dihedral(3)))
    assert K.complex.f_vector() == (4, 5, 2)
    assert [X.f_vector() for X in K.mirrors.values()] == [(2, 1), (2, 1)]
    K = mirrored_chamber(octahedral_complex(1, "ab"))
    assert K.complex.f_vector()[0] == 9


@pytest.mark.parametrize(
    "p, V, f", [(1, "ab", (4, 4)), (1, "abc", (6, 12, 8)), (2, "ab", (6, 9))]
)
def test_octahedral_f_vectors(p, V, f):
    assert octahedral_complex(p, V).f_vector() == f


def test_join_examples():
    assert is_isomorphic(join(points("ab"), points("cd")), SQUARE)
    assert join(SQUARE, EMPTY_COMPLEX) == SQUARE
    assert join(points("abc"), points("def")).f_vector() == (6, 9)
    with pytest.raises(InvalidArgument):
        join(points("ab"), points("bc"))


def test_full_subcomplex_examples():
    path = full_subcomplex(SQUARE, "a")
    assert sorted(path.edges()) == [("b", "c"), ("c", "d")]
    assert full_subcomplex(SQUARE, ()) == SQUARE
    cone = full_subcomplex(OCTAHEDRON, [("a", 0)])
    assert cone.f_vector() == (5, 8, 4)
    assert reduced_homology(cone).is_zero()


@pytest.mark.parametrize(
    "L, betti",
    [
        (SQUARE, {1: 1}),
        (K33, {1: 4}),
        (OCTAHEDRON, {2: 1}),
        (simplex("abcd"), {}),
        (points("abc"), {0: 2}),
    ],
    ids=["square", "K33", "octahedron", "simplex", "three-points"],
)
def test_homology_examples(L, betti):
    H = reduced_homology(L)
    assert {k: v for k, v in H.betti.items() if v} == betti
    assert H.is_free()


def test_torsion_of_projective_plane():
    H = reduced_homology(RP2)
    assert RP2.f_vector() == (6, 15, 10)
    assert H.torsion(1) == (2,)
    assert H.is_zero() is False and H.betti == {-1: 0, 0: 0, 1: 0, 2: 0}


def test_smith_invariants_divide():
    rows = [{0: 2, 1: 4, 2: 4}, {0: -6, 1: 6, 2: 12}, {0: 10, 1: -4, 2: -16}]
    assert smith_invariants(rows) == [2, 6, 12]


@given(complexes())
def test_homology_matches_rational_oracle(L):
    H = reduced_homology(L)
    assert H.betti == rational_betti(L.faces)
    assert L.euler_characteristic() - 1 == sum((-1) ** k * r for k, r in H.betti.items() if k >= 0) - H.rank(-1)
    for k in H.betti:
        t = H.torsion(k)
        assert all(d >= 2 for d in t)
        assert all(b % a == 0 for a, b in zip(t, t[1:]))


@given(complexes(max_vertices=5))
def test_barycentric_subdivision_preserves_homology(L):
    sd = barycentric_subdivision(L)
    assert sd.f_vector()[0] == len(L.faces) - 1
    assert reduced_homology(sd) == reduced_homology(L)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=4))
def test_join_of_point_sets_is_a_wedge_of_spheres(sizes):
    L = EMPTY_COMPLEX
    for i, k in enumerate(sizes):
        L = join(L, points([(i, j) for j in range(k)]))
    H = reduced_homology(L)
    n = len(sizes)
    expected = math.prod(k - 1 for k in sizes)
    assert H.rank(n - 1) == expected
    assert all(H.rank(d) == 0 for d in H.betti if d != n - 1)
    assert H.is_free()


def test_punctured_check_examples():
    assert punctured_check(SQUARE, 1).ok
    assert punctured_check(OCTAHEDRON, 2).ok
    # removing the middle vertex of a path leaves two points
    path = SimplicialComplex.from_facets([("a", "b"), ("b", "c")])
    report = punctured_check(path, 1)
    assert not report.ok and report.failures[0][0] == ("b",)
    two_edges = SimplicialComplex.from_facets([("a", "b"), ("c", "d")])
    assert not punctured_check(two_edges, 1).ok


@pytest.mark.parametrize("p, n", list(itertools.product(range(1, 3), range(1, 4))))
def test_octahedral_complexes_are_ph(p, n):
    assert punctured_check(octahedral_complex(p, "abc"[:n]), n - 1).ok


@pytest.mark.parametrize("n", [1, 2, 3])
def test_simplex_fails_ph_only_at_its_top_face(n):
    # O(0, V) is the simplex on V; deleting the top face leaves the empty complex
    report = punctured_check(octahedral_complex(0, "abc"[:n]), n - 1)
    assert [(len(face), degrees) for face, degrees, _ in report.failures] == [(n, (-1,))]


def test_flag_examples():
    hollow = cycle("abc")
    assert missing_simplex(hollow) == ("a", "b", "c")
    assert is_flag(SQUARE) and is_flag(OCTAHEDRON) and not is_flag(hollow)


def test_face_poset_and_json_roundtrip():
    P = face_poset(SQUARE)
    assert len(P.elements) == 8
    assert SimplicialComplex.from_json(OCTAHEDRON.to_json()) == OCTAHEDRON
