import pytest
from hypothesis import given, strategies as st

from surfdom import generators as gen
from surfdom.surface_map import (
    Triangulation, TriangulationError, Walk, bfs_layers, classify_surface, euler_characteristic,
    is_cycle, layers, parse_tri, serialize_tri, validate,
)

from oracles import bfs

CLOSED = [
    ("octahedron",), ("icosahedron",), ("tetrahedron",), ("geodesic_sphere", 3),
    ("projective_quotient", 1), ("projective_quotient", 2), ("torus_grid", 5, 6, 0),
    ("torus_grid", 6, 5, 2), ("klein_grid", 6, 6), ("klein_grid", 5, 7), ("capped_cylinder", 6, 4, 2),
]
ALL = CLOSED + [("cylinder", 5, 3, 1), ("cylinder", 3, 2, 0), ("hexagon_disk", 3)]


def g(spec):
    return gen.generate(spec[0], *spec[1:]).graph


OCTA = """tri 1
vertices 6
# octahedron
v0: 1:+ 2:+ 3:+ 4:+
v1: 0:+ 4:+ 5:+ 2:+
v2: 0:+ 1:+ 5:+ 3:+
v3: 0:+ 2:+ 5:+ 4:+
v4: 0:+ 3:+ 5:+ 1:+
v5: 1:+ 4:+ 3:+ 2:+
"""


def test_parse_octahedron():
    G = parse_tri(OCTA)
    assert G.n == 6 and G.edge_count == 12 and len(G.faces) == 8
    assert validate(G) == []


def test_parse_asymmetric():
    bad = OCTA.replace("v0: 1:+ 2:+ 3:+ 4:+", "v0: 1:+ 2:+ 3:+")
    with pytest.raises(TriangulationError, match="asymmetric adjacency"):
        parse_tri(bad)


def test_parse_signature_mismatch():
    bad = OCTA.replace("v0: 1:+", "v0: 1:-")
    with pytest.raises(TriangulationError, match="signature mismatch"):
        parse_tri(bad)


def test_parse_duplicate_and_header():
    with pytest.raises(TriangulationError, match="duplicate neighbor"):
        parse_tri(OCTA.replace("v0: 1:+ 2:+ 3:+ 4:+", "v0: 1:+ 2:+ 3:+ 4:+ 1:+"))
    with pytest.raises(TriangulationError, match="malformed header"):
        parse_tri(OCTA.replace("tri 1", "tri 2"))
    with pytest.raises(TriangulationError, match="malformed header"):
        parse_tri("tri 1\nvertexes 6\n")


@pytest.mark.parametrize("spec", ALL)
def test_roundtrip(spec):
    G = g(spec)
    text = serialize_tri(G)
    H = parse_tri(text.encode())
    assert serialize_tri(H) == text
    assert (H.rotations, H.signs, H.marked) == (G.rotations, G.signs, G.marked)


def test_roundtrip_canonicalizes():
    # rotations given from a non-minimal start come back starting at the lowest neighbour
    text = OCTA.replace("v1: 0:+ 4:+ 5:+ 2:+", "v1: 5:+ 2:+ 0:+ 4:+")
    assert serialize_tri(parse_tri(text)) == OCTA.replace("# octahedron\n", "")


def test_validate_duplicate_and_nontriangular():
    G = g(("octahedron",))
    rots = [list(r) for r in G.rotations]
    rots[0] = rots[0] + [rots[0][0]]
    bad = Triangulation(tuple(map(tuple, rots)), tuple(tuple([1] * len(r)) for r in rots))
    assert any("duplicate neighbor" in d for d in validate(bad))
    # the square pyramid without its base triangulated has a 4-face
    sq = Triangulation.from_rotations([[1, 2, 3, 4], [0, 4, 2], [0, 1, 3], [0, 2, 4], [0, 3, 1]])
    assert any("non-triangular face" in d for d in validate(sq))


@pytest.mark.parametrize("spec,chi", [(("octahedron",), 2), (("projective_quotient", 1), 1),
                                      (("torus_grid", 5, 5, 0), 0), (("klein_grid", 6, 6), 0)])
def test_euler_characteristic(spec, chi):
    assert euler_characteristic(g(spec)) == chi


def test_projective_quotient_k1_counts():
    G = g(("projective_quotient", 1))
    assert (G.n, G.edge_count, len(G.faces)) == (6, 15, 10)


@pytest.mark.parametrize("spec,want", [(("geodesic_sphere", 3), (True, 0)), (("projective_quotient", 2), (False, 1)),
                                       (("klein_grid", 6, 6), (False, 2)), (("torus_grid", 6, 6, 1), (True, 1))])
def test_classify_surface(spec, want):
    assert classify_surface(g(spec)) == want


@pytest.mark.parametrize("spec", CLOSED)
def test_defect_identity_and_edge_face(spec):
    G = g(spec)
    assert sum(6 - G.degree(v) for v in range(G.n)) == 6 * euler_characteristic(G)
    assert 2 * G.edge_count == 3 * len(G.faces)


@given(st.sampled_from(CLOSED), st.randoms(use_true_random=False), st.booleans())
def test_classify_invariant_under_relabel_and_reflect(spec, rnd, reflect):
    G = g(spec)
    perm = list(range(G.n))
    rnd.shuffle(perm)
    H = G.relabeled(perm)
    if reflect:
        H = H.reflected()
    assert validate(H) == []
    assert classify_surface(H) == classify_surface(G)
    assert euler_characteristic(H) == euler_characteristic(G)


def test_bfs_examples():
    O = g(("octahedron",))
    for x in range(6):
        assert [len(L) for L in layers(bfs_layers(O, x))] == [1, 4, 1]
    C = g(("cylinder", 6, 10, 0))
    assert sum(1 for d in bfs_layers(C, 0) if 0 <= d <= 1) == 5
    S = g(("geodesic_sphere", 5))
    x = next(v for v in range(S.n) if S.degree(v) == 5)
    assert len(layers(bfs_layers(S, x))[1]) == 5
    with pytest.raises((TriangulationError, IndexError)):
        bfs_layers(O, 7)


@given(st.sampled_from(CLOSED), st.data())
def test_bfs_metric(spec, data):
    G = g(spec)
    u, v, w = (data.draw(st.integers(0, G.n - 1)) for _ in range(3))
    du, dv = bfs_layers(G, u), bfs_layers(G, v)
    assert du == [bfs(G, u)[x] for x in range(G.n)]
    assert du[v] == dv[u]
    assert du[w] <= du[v] + dv[w]
    assert sorted(x for L in layers(du) for x in L) == list(range(G.n))


def test_walk_helpers():
    G = g(("octahedron",))
    assert is_cycle(G, Walk.cycle([0, 1, 2]))
    assert not is_cycle(G, Walk.cycle([0, 1, 5]))  # 0 and 5 are antipodal
    assert len(Walk.cycle([0, 1, 2])) == 3
