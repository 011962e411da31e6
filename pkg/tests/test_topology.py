import math

import pytest
from hypothesis import given, strategies as st

from surfdom import generators as gen
from surfdom.surface_map import TriangulationError, Walk, classify_surface, euler_characteristic, is_cycle
from surfdom.surgery import cut_along_cycle
from surfdom.topology import (
    CycleOracle, classify_cycle, double_cover, short_cycle_nonorientable, shortest_noncontractible_cycle,
    split_closed_walk,
)

import oracles
from oracles import bfs, brute_shortest_noncontractible, cycle_topology, simple_cycles


def test_face_triangle_contractible():
    G = gen.torus_grid(5, 5).graph
    c = classify_cycle(G, Walk.cycle(G.triangles[0]))
    assert (c.sided, c.separating, c.contractible) == ("two_sided", True, True)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_generator_cycle_one_sided(k):
    g = gen.projective_quotient(k)
    C = g.landmarks["generator_cycle"]
    assert len(C) == 3 * k
    c = classify_cycle(g.graph, Walk.cycle(C))
    assert c.one_sided and not c.separating and not c.contractible


def test_torus_meridian():
    g = gen.torus_grid(6, 7, 0)
    c = classify_cycle(g.graph, Walk.cycle(g.landmarks["meridian"]))
    assert (c.sided, c.separating, c.contractible) == ("two_sided", False, False)


def test_classify_rejects_non_cycle():
    G = gen.octahedron().graph
    with pytest.raises(TriangulationError):
        classify_cycle(G, Walk.cycle([0, 1, 5]))


SURFACES = [("projective_quotient", 1), ("torus_grid", 3, 4, 1), ("klein_grid", 3, 4),
            ("klein_grid", 4, 4), ("torus_grid", 4, 4, 0), ("projective_quotient", 2)]
_CYCLES = {}


def _cycles(spec):
    if spec not in _CYCLES:
        G = gen.generate(spec[0], *spec[1:]).graph
        _CYCLES[spec] = (G, simple_cycles(G, 5))
    return _CYCLES[spec]


@given(st.sampled_from(SURFACES), st.data())
def test_classification_matches_face_oracle(spec, data):
    G, cycles = _cycles(spec)
    cyc = data.draw(st.sampled_from(cycles))
    got = classify_cycle(G, Walk.cycle(cyc))
    want = cycle_topology(G, cyc)
    assert (got.one_sided, got.separating, got.contractible) == (
        want["one_sided"], want["separating"], want["contractible"])
    assert not (got.one_sided and (got.separating or got.contractible))
    assert not got.contractible or got.separating


def test_sphere_has_no_cycle():
    assert shortest_noncontractible_cycle(gen.octahedron().graph) is None


@pytest.mark.parametrize("spec,G", [(s, G) for s, G in oracles.small_instances() if not G.marked])
def test_shortest_matches_exhaustive(spec, G):
    C = shortest_noncontractible_cycle(G)
    want = brute_shortest_noncontractible(G)
    assert (None if C is None else len(C)) == want


@pytest.mark.parametrize("p,q", [(3, 3), (3, 5), (4, 4), (4, 6), (5, 5), (5, 7), (6, 6)])
def test_torus_shortest_is_p(p, q):
    G = gen.torus_grid(p, q, 0).graph
    C = shortest_noncontractible_cycle(G)
    assert len(C) == p
    # nothing shorter in the exhaustive list
    assert all(cycle_topology(G, c)["contractible"] for c in simple_cycles(G, p - 1))


def _cover_distance_oracle(G):
    cm = double_cover(G)
    n = G.n
    return min(bfs(cm.cover, v)[v + n] for v in range(n))


@pytest.mark.parametrize("k", range(1, 6))
def test_projective_shortest_via_lifts(k):
    # a one-sided cycle lifts to a path between the two lifts of a vertex
    G = gen.projective_quotient(k).graph
    C = shortest_noncontractible_cycle(G)
    assert len(C) == _cover_distance_oracle(G) == math.ceil(5 * k / 2)
    assert classify_cycle(G, C).one_sided


@pytest.mark.parametrize("k", range(1, 7))
def test_projective_cycle_bound(k):
    G = gen.projective_quotient(k).graph
    L = len(short_cycle_nonorientable(G))
    assert (L + 1) ** 2 <= 4 * G.n


@pytest.mark.parametrize("p,q", [(p, q) for p in (3, 5, 8, 12) for q in (3, 6, 12)])
def test_klein_short_cycle_bound(p, q):
    G = gen.klein_grid(p, q).graph
    C = short_cycle_nonorientable(G)
    assert is_cycle(G, C)
    assert not classify_cycle(G, C).contractible
    assert len(C) ** 2 <= 4 * G.n
    assert len(C) >= len(shortest_noncontractible_cycle(G))


def test_short_cycle_examples():
    assert len(short_cycle_nonorientable(gen.projective_quotient(1).graph)) == 3
    G = gen.projective_quotient(3).graph
    assert G.n == 46 and len(short_cycle_nonorientable(G)) ** 2 <= 4 * 46
    assert len(short_cycle_nonorientable(gen.klein_grid(8, 8).graph)) <= 16
    with pytest.raises(TriangulationError, match="orientable"):
        short_cycle_nonorientable(gen.torus_grid(5, 5).graph)


@pytest.mark.parametrize("p,q,s", [(5, 5, 0), (6, 9, 2), (10, 10, 3), (7, 4, 1)])
def test_albertson_hutchinson(p, q, s):
    G = gen.torus_grid(p, q, s).graph
    assert len(shortest_noncontractible_cycle(G)) ** 2 <= 2 * G.n


NONORIENTABLE = [("projective_quotient", 1), ("projective_quotient", 2), ("projective_quotient", 3),
                 ("klein_grid", 6, 6), ("klein_grid", 5, 7), ("klein_grid", 3, 3), ("klein_grid", 8, 4)]


@pytest.mark.parametrize("spec", NONORIENTABLE)
def test_double_cover(spec):
    G = gen.generate(spec[0], *spec[1:]).graph
    cm = double_cover(G)
    H = cm.cover
    assert H.n == 2 * G.n
    assert classify_surface(H)[0] is True
    assert euler_characteristic(H) == 2 * euler_characteristic(G)
    for v in range(H.n):
        img = [cm.projection[u] for u in (v,) + H.rotations[v]]
        assert len(set(img)) == len(img)
        assert set(img) == {cm.projection[v]} | set(G.rotations[cm.projection[v]])
        assert cm.lift(cm.projection[v], cm.sheet[v]) == v


def test_double_cover_examples():
    H = double_cover(gen.projective_quotient(1).graph).cover
    assert H.n == 12 and classify_surface(H) == (True, 0) and all(H.degree(v) == 5 for v in range(12))
    K = double_cover(gen.klein_grid(6, 6).graph).cover
    assert K.n == 72 and euler_characteristic(K) == 0 and classify_surface(K) == (True, 1)
    with pytest.raises(TriangulationError, match="orientable"):
        double_cover(gen.torus_grid(5, 5).graph)


@given(st.lists(st.integers(0, 6), min_size=1, max_size=30))
def test_split_closed_walk_pieces(walk):
    pieces = split_closed_walk(walk)
    assert sum(len(p) for p in pieces) == len(walk)
    for p in pieces:
        assert len(set(p)) == len(p)


def test_oracle_disk_test_scope():
    assert not CycleOracle(gen.torus_grid(5, 5).graph).needs_disk_test
    assert not CycleOracle(gen.projective_quotient(2).graph).needs_disk_test
    assert CycleOracle(gen.klein_grid(5, 5).graph).needs_disk_test


# ------------------------------------------------------------ layer paths on the projective plane
def _induced_dist(G, s, t, allowed):
    d = bfs(G, s, allowed)
    return d.get(t)


@pytest.mark.parametrize("k", range(1, 7))
def test_projective_layer_paths(k):
    G = gen.projective_quotient(k).graph
    C = shortest_noncontractible_cycle(G)
    L = len(C)
    rec = cut_along_cycle(G, C)
    (H,) = rec.components
    ((_, ring),) = rec.new_cycles
    ((_, apex),) = rec.apexes
    assert len(ring) == 2 * L
    disk = set(range(H.n)) - {apex}
    m = L // 2
    x = ring[m]
    dist = bfs(H, x, disk)
    for j in range(m + 1):
        a, b = ring[m - j], ring[m + j]
        assert dist[a] == j and dist[b] == j
        Vj = {v for v, d in dist.items() if d == j}
        inside = _induced_dist(H, a, b, Vj)
        assert inside is not None and inside >= 2 * j
        assert _induced_dist(H, a, b, disk) >= 2 * j
