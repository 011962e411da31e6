"""Closed walks around degree-6 regions: hexagon growth and outer degrees.

Rotations are read in stored order.  A walk ``v_0 .. v_{m-1}`` has its
*exterior* on the side swept from ``v_i v_{i-1}`` forward to ``v_i v_{i+1}``;
the other side is the interior that :func:`derive_inner_walk` steps into.
Reversing a walk swaps the two sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..generators import AXIAL_DIRS, hex_norm
from ..surface_map import Triangulation, TriangulationError, bfs_layers

TYPES = ("A", "B", "C", "D", "E")


def _require_plus_signs(G: Triangulation) -> Triangulation:
    if all(s == 1 for sg in G.signs for s in sg):
        return G
    H = G.normalized()
    if any(s != 1 for sg in H.signs for s in sg):
        raise TriangulationError("walk machinery needs an orientable (sphere) triangulation")
    return H


# ------------------------------------------------------------ hexagons
def _hexagon_coords(G: Triangulation, x: int, i: int, dist: Sequence[int]) -> dict[int, tuple[int, int]] | None:
    """Axial coordinates on ``N_i[x]`` if ``G[N_i[x]]`` is a triangulated hexagon."""
    coords = {x: (0, 0)}
    seen = {(0, 0): x}
    order = [x]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        if dist[v] >= i:
            continue
        if G.degree(v) != 6:
            return None
        rot = G.rotations[v]
        if v == x:
            base, d0 = 0, 0
        else:
            # any already placed neighbour fixes the frame
            base = next(p for p, u in enumerate(rot) if u in coords)
            du = coords[rot[base]][0] - coords[v][0], coords[rot[base]][1] - coords[v][1]
            d0 = AXIAL_DIRS.index(du) if du in AXIAL_DIRS else -1
            if d0 < 0:
                return None
        cv = coords[v]
        for t in range(6):
            u = rot[(base + t) % 6]
            da, db = AXIAL_DIRS[(d0 + t) % 6]
            c = (cv[0] + da, cv[1] + db)
            if u in coords:
                if coords[u] != c:
                    return None
                continue
            if c in seen or dist[u] > i or hex_norm(*c) != dist[u]:
                return None
            coords[u] = c
            seen[c] = u
            order.append(u)
    if len(coords) != 1 + 3 * i * (i + 1):
        return None
    # no extra chords between outer-ring vertices
    for v, c in coords.items():
        for u in G.rotations[v]:
            if u in coords:
                d = (coords[u][0] - c[0], coords[u][1] - c[1])
                if d not in AXIAL_DIRS:
                    return None
    return coords


def is_hexagon(G: Triangulation, x: int, i: int, dist: Sequence[int] | None = None) -> bool:
    """True when the ball of radius ``i`` about ``x`` is a triangulated hexagon."""
    G = _require_plus_signs(G)
    if dist is None:
        dist = bfs_layers(G, x)
    return _hexagon_coords(G, x, i, dist) is not None


def hexagon_radius(G: Triangulation, x: int) -> int:
    """Least ``r`` for which the radius-``r`` ball about ``x`` is not a triangulated hexagon."""
    G = _require_plus_signs(G)
    if not 0 <= x < G.n:
        raise TriangulationError("vertex out of range")
    dist = bfs_layers(G, x)
    r = 1
    while _hexagon_coords(G, x, r, dist) is not None:
        r += 1
    # the hexagon of radius r-1 has 1 + 3r(r-1) vertices, all distinct
    assert G.n > 3 * (r - 1) ** 2
    return r


# --------------------------------------------------------- outer degree
@dataclass(frozen=True)
class BoundaryWalk:
    vertices: tuple[int, ...]  # cyclic, no repeated closing vertex
    rdeg: tuple[int, ...]
    type: str  # "A".."E" or "other"

    def __len__(self) -> int:
        return len(self.vertices)

    def reversed(self, G: Triangulation) -> "BoundaryWalk":
        return outer_degree_walk(G, tuple(reversed(self.vertices)))


def walk_type(seq: Sequence[int]) -> str:
    m = len(seq)
    twos = sum(1 for d in seq if d == 2)
    if twos == m:
        return "A"
    odd = sorted(d for d in seq if d != 2)
    if odd == [3]:
        return "B"
    if odd == [4]:
        return "C"
    if odd == [3, 3]:
        i = next(i for i, d in enumerate(seq) if d == 3)
        if seq[(i + 1) % m] == 3 or seq[i - 1] == 3:
            return "D"
        return "other"
    if odd == [1, 3]:
        return "E"
    return "other"


def outer_degree_walk(G: Triangulation, W) -> BoundaryWalk:
    """Outer degree sequence and type of the closed walk ``W``."""
    vs = list(W.cyclic if hasattr(W, "cyclic") else W)
    if len(vs) > 1 and vs[0] == vs[-1]:
        vs = vs[:-1]
    m = len(vs)
    if m < 3:
        raise TriangulationError("a bounding walk has at least 3 vertices")
    rd = []
    for i, v in enumerate(vs):
        a, b = vs[i - 1], vs[(i + 1) % m]
        if not (G.has_edge(v, a) and G.has_edge(v, b)):
            raise TriangulationError("consecutive walk vertices are not adjacent")
        d = G.degree(v)
        rd.append((G.position(v, b) - G.position(v, a) - 1) % d)
    return BoundaryWalk(tuple(vs), tuple(rd), walk_type(rd))


def _interior_run(G: Triangulation, vs: Sequence[int], i: int) -> list[int]:
    """Interior neighbours of ``v_i``, from the one next to ``v_{i-1}`` to the one next to ``v_{i+1}``."""
    m = len(vs)
    v, a, b = vs[i], vs[i - 1], vs[(i + 1) % m]
    rot, d = G.rotations[v], G.degree(v)
    pa, pb = G.position(v, a), G.position(v, b)
    # interior is swept backward from a to b
    steps = (pa - pb) % d
    return [rot[(pa - t) % d] for t in range(1, steps)]


def derive_inner_walk(G: Triangulation, bw: BoundaryWalk) -> BoundaryWalk:
    """The walk one layer further into the interior of ``bw``.

    Types and lengths change as A(m)->A(m), B(m)->B(m-1), C(m)->C(m-3),
    D(m)->C(m-2), E(m)->E(m).
    """
    if bw.type not in TYPES:
        raise TriangulationError(f"walk of type {bw.type!r} has no derived walk")
    bad = [v for v in bw.vertices if G.degree(v) != 6]
    if bad:
        raise TriangulationError(f"walk vertex {bad[0]} has degree {G.degree(bad[0])}")
    vs = list(bw.vertices)
    if bw.type == "C":
        # short-cut the rdeg-4 corner; its neighbours on the walk become a D pair
        i = bw.rdeg.index(4)
        vs = vs[:i] + vs[i + 1:]
        if not G.has_edge(vs[i - 1], vs[i % len(vs)]):
            raise TriangulationError("type C corner has no chord")
    m = len(vs)
    runs = [_interior_run(G, vs, i) for i in range(m)]
    out: list[int] = []
    for i in range(m):
        run = runs[i]
        nxt = runs[(i + 1) % m]
        if run[-1] != nxt[0]:
            raise TriangulationError("interior neighbour runs do not chain")
        out.extend(run[1:])
    on_walk = set(vs)
    if len(set(out)) != len(out) or on_walk & set(out):
        raise TriangulationError("derived walk is not a cycle disjoint from its parent")
    # keep the original orientation: parent lies on the exterior side
    new = outer_degree_walk(G, out)
    expect = {"A": ("A", 0), "B": ("B", 1), "C": ("C", 3), "D": ("C", 2), "E": ("E", 0)}[bw.type]
    if (new.type, len(bw) - len(new)) != expect:
        raise TriangulationError(
            f"derived walk is {new.type}{len(new)}, expected {expect[0]}{len(bw) - expect[1]}")
    return new
