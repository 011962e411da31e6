import pytest
from hypothesis import given, strategies as st

from surfdom import generators as gen
from surfdom.sphere_dominator.cylinder import extract_cylinder, seed_cycles, trace_walk
from surfdom.sphere_dominator.walks import derive_inner_walk, hexagon_radius, is_hexagon, outer_degree_walk, walk_type
from surfdom.surface_map import TriangulationError
from surfdom.surgery import USets

from oracles import bfs, check_transition, cone_sphere

# ------------------------------------------------------------ hexagons
def test_hexagon_radius_defect():
    G = gen.icosahedron().graph
    assert all(hexagon_radius(G, v) == 1 for v in range(G.n))


def test_hexagon_radius_geodesic():
    G = gen.geodesic_sphere(6).graph
    defects = [u for u in range(G.n) if G.degree(u) != 6]
    for x in range(0, G.n, 7):
        d = bfs(G, x)
        r = hexagon_radius(G, x)
        assert r == min(d[u] for u in defects) + 1
        ball = [v for v in d if d[v] <= r - 1]
        assert len(ball) == 1 + 3 * (r - 1) * r


def test_hexagon_radius_torus():
    G = gen.torus_grid(12, 12, 0).graph
    assert hexagon_radius(G, 0) == 6
    assert is_hexagon(G, 0, 5) and not is_hexagon(G, 0, 6)


def test_walk_type_examples():
    assert walk_type([2] * 6) == "A"
    assert walk_type([2, 3, 2, 2]) == "B"
    assert walk_type([2, 4, 2]) == "C"
    assert walk_type([3, 3, 2, 2]) == "D"
    assert walk_type([3, 2, 3, 2]) == "other"
    assert walk_type([1, 2, 3, 2]) == "E"
    assert walk_type([1, 1, 2]) == "other"


def test_outer_degree_examples():
    R = gen.capped_cylinder(8, 10, 0).graph
    ring = [5 * 8 + a for a in range(8)]
    bw = outer_degree_walk(R, ring)
    assert bw.type == "A" or bw.reversed(R).type == "A"
    K = gen.capped_cylinder(8, 10, 3).graph
    ring = [5 * 8 + a for a in range(8)]
    bw = outer_degree_walk(K, ring)
    assert "E" in (bw.type, bw.reversed(K).type)
    with pytest.raises(TriangulationError):
        outer_degree_walk(R, [0, 1])
    with pytest.raises(TriangulationError):
        outer_degree_walk(R, [0, 1, 40])


def test_hexagon_boundary_is_other():
    G = gen.geodesic_sphere(8).graph
    x = max(range(G.n), key=lambda v: hexagon_radius(G, v))
    d = bfs(G, x)
    ring = [v for v in d if d[v] == 2]
    # order the ring by walking it
    order = [ring[0]]
    while len(order) < len(ring):
        order.append(next(u for u in G.rotations[order[-1]] if u in ring and u not in order[-2:]))
    bw = outer_degree_walk(G, order)
    assert {bw.type, bw.reversed(G).type} <= {"other"}
    with pytest.raises(TriangulationError):
        derive_inner_walk(G, bw)


@pytest.mark.parametrize("spec", [(8, 12, 0), (9, 12, 2), (12, 10, 5), (7, 14, 3)])
def test_rings_of_capped_cylinders(spec):
    w, ell, k = spec
    G = gen.capped_cylinder(w, ell, k).graph
    for b in range(2, ell - 1):
        ring = [b * w + a for a in range(w)]
        for W in (ring, ring[::-1]):
            bw = outer_degree_walk(G, W)
            assert bw.type == ("A" if k == 0 else "E")
            nw = derive_inner_walk(G, bw)
            check_transition(G, bw, nw)
            assert set(nw.vertices) in ({(b - 1) * w + a for a in range(w)}, {(b + 1) * w + a for a in range(w)})


def test_b_walks_on_60_degree_cone():
    G, layers = cone_sphere(1, 3, 12)
    seen = 0
    for L in layers[2:-2]:
        for W in (L, L[::-1]):
            bw = outer_degree_walk(G, W)
            if bw.type == "B":
                nw = derive_inner_walk(G, bw)
                check_transition(G, bw, nw)
                seen += 1
    assert seen == len(layers) - 4


def test_c_and_d_walks_on_120_degree_cone():
    G, layers = cone_sphere(2, 3, 14)
    mid = {v for L in layers[2:-2] for v in L}
    found = {"C": 0, "D": 0}
    for x in (layers[6][0], layers[6][3], layers[7][5]):
        for f in G.rotations[x]:
            for i in range(1, 45):
                W = trace_walk(G, x, f, {i: 2, i + 1: 2}, 60)
                if not W or len(set(W)) != len(W) or not set(W) <= mid:
                    continue
                for WW in (W, W[::-1]):
                    bw = outer_degree_walk(G, WW)
                    if bw.type in found:
                        check_transition(G, bw, derive_inner_walk(G, bw))
                        found[bw.type] += 1
    assert found["C"] > 0 and found["D"] > 0


def test_derive_errors():
    G = gen.icosahedron().graph
    bw = outer_degree_walk(G, list(G.rotations[0]))
    with pytest.raises(TriangulationError):
        derive_inner_walk(G, bw)


# ------------------------------------------------------------ cylinders
def _embeds(h):
    """The handle's coordinates carry the generated (w, l, k)-cylinder into the host."""
    C = gen.cylinder(h.w, h.ell, h.k).graph
    for v in range(C.n):
        b, a = divmod(v, h.w)
        for u in C.rotations[v]:
            bu, au = divmod(u, h.w)
            if not h.host.has_edge(h.vertex(a, b), h.vertex(au, bu)):
                return False
    return len({v for r in h.rings for v in r}) == C.n


@pytest.mark.parametrize("spec,x,r,expect", [
    ((10, 40, 0), 10 * 20 + 3, 5, (10, 40, 0)),
    ((9, 40, 3), 9 * 20, 4, (9, None, 3)),
])
def test_extract_cylinder(spec, x, r, expect):
    G = gen.capped_cylinder(*spec).graph
    h = extract_cylinder(G, x, r)
    assert h.w == expect[0] and h.k == expect[2]
    if expect[1] is not None:
        assert h.ell == expect[1]
    else:
        assert h.ell >= spec[1] - 2
    assert _embeds(h)
    assert all(G.degree(v) == 6 for v in h.interior)
    assert h.turns == tuple(range(h.k))


def test_extract_cylinder_u_too_close():
    G = gen.capped_cylinder(10, 40, 0).graph
    x = 10 * 20
    us = USets.initial(G)
    us = USets(us.U0 | {x + 30}, us.U0bar, us.d_U)
    with pytest.raises(TriangulationError, match="U meets"):
        extract_cylinder(G, x, 5, us)


def test_seed_cycles():
    G = gen.capped_cylinder(10, 40, 2).graph
    seeds = seed_cycles(G, 200, 11)
    assert seeds and all(s.type in ("A", "E") for s in seeds)
    assert min(len(s) for s in seeds) == 10


@given(st.integers(6, 11), st.data())
def test_extract_hypothesis(w, data):
    k = data.draw(st.integers(0, w // 2))
    ell = 8 * w
    G = gen.capped_cylinder(w, ell, k).graph
    r = w // 2
    h = extract_cylinder(G, (ell // 2) * w + data.draw(st.integers(0, w - 1)), r)
    assert h.w == w and h.k == k
    assert _embeds(h)
