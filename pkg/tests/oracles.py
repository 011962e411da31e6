"""Brute-force reference implementations used only by the tests.

Nothing here calls the library's search or classification code; inputs are
the face lists of a triangulation, read once through ``G.faces``.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

from surfdom import generators as gen
from surfdom.surface_map import Triangulation

# every generated instance with at most 14 vertices (closed surfaces and marked disks)
SMALL_SPECS = [
    ("tetrahedron",), ("octahedron",), ("icosahedron",), ("geodesic_sphere", 1),
    ("projective_quotient", 1),
    ("torus_grid", 3, 3, 0), ("torus_grid", 3, 4, 0), ("torus_grid", 3, 4, 1), ("torus_grid", 4, 3, 2),
    ("klein_grid", 3, 3), ("klein_grid", 3, 4), ("klein_grid", 4, 3),
    ("capped_cylinder", 3, 1, 0), ("capped_cylinder", 3, 2, 1), ("capped_cylinder", 4, 2, 0),
    ("capped_cylinder", 4, 1, 1), ("capped_cylinder", 3, 1, 1),
    ("hexagon_disk", 2), ("cylinder", 3, 2, 1), ("cylinder", 4, 2, 0), ("cylinder", 3, 3, 0),
]


def small_instances():
    return [(spec, gen.generate(spec[0], *spec[1:]).graph) for spec in SMALL_SPECS]


# ------------------------------------------------------------ domination
def closed_masks(G: Triangulation) -> list[int]:
    return [(1 << v) | sum(1 << u for u in G.rotations[v]) for v in range(G.n)]


def brute_gamma(G: Triangulation, required=()) -> int:
    """Smallest dominating set containing ``required``, by enumerating subsets by size."""
    full = (1 << G.n) - 1
    cm = closed_masks(G)
    req = sorted(set(required))
    base = 0
    for v in req:
        base |= cm[v]
    rest = [v for v in range(G.n) if v not in set(req)]
    for size in range(0, len(rest) + 1):
        for extra in combinations(rest, size):
            m = base
            for v in extra:
                m |= cm[v]
            if m == full:
                return len(req) + size
    raise AssertionError("unreachable")


def dominates(G: Triangulation, D) -> bool:
    D = set(D)
    return all(v in D or any(u in D for u in G.rotations[v]) for v in range(G.n))


# ------------------------------------------------------------ cycles
def simple_cycles(G: Triangulation, max_len: int):
    """All simple cycles of length 3..max_len, each once (least vertex first, then smaller neighbour)."""
    adj = [set(r) for r in G.rotations]
    out = []
    for s in range(G.n):
        stack = [(s, [s])]
        while stack:
            v, path = stack.pop()
            for u in adj[v]:
                if u == s and len(path) >= 3 and path[1] < path[-1]:
                    out.append(tuple(path))
                elif u > s and u not in path and len(path) < max_len:
                    stack.append((u, path + [u]))
    return out


def _edge(u, v):
    return (u, v) if u < v else (v, u)


def cycle_topology(G: Triangulation, cyc) -> dict:
    """Sidedness, separation and contractibility from face adjacency alone.

    Corners at each cycle vertex are grouped by faces meeting across
    non-cycle edges; linking the groups along cycle edges gives one closed
    curve (one-sided) or two (two-sided).  A separating cycle is contractible
    when one side has Euler characteristic 1.
    """
    m = len(cyc)
    cedges = {_edge(cyc[i], cyc[(i + 1) % m]) for i in range(m)}
    faces = [tuple(f) for f in G.faces if len(f) == 3]
    by_edge: dict[tuple[int, int], list[int]] = {}
    for fi, f in enumerate(faces):
        for i in range(3):
            by_edge.setdefault(_edge(f[i], f[(i + 1) % 3]), []).append(fi)
    # sides: flood faces across non-cycle edges
    comp = [-1] * len(faces)
    ncomp = 0
    for s in range(len(faces)):
        if comp[s] >= 0:
            continue
        comp[s] = ncomp
        q = deque([s])
        while q:
            f = q.popleft()
            t = faces[f]
            for i in range(3):
                e = _edge(t[i], t[(i + 1) % 3])
                if e in cedges:
                    continue
                for g in by_edge[e]:
                    if comp[g] < 0:
                        comp[g] = ncomp
                        q.append(g)
        ncomp += 1
    # corner groups at cycle vertices
    group: dict[tuple[int, int], tuple[int, int]] = {}  # (vertex, face) -> (vertex, class)
    for v in cyc:
        fs = [fi for fi, f in enumerate(faces) if v in f]
        parent = {f: f for f in fs}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x
        for a, b in combinations(fs, 2):
            shared = set(faces[a]) & set(faces[b])
            if len(shared) == 2:
                e = _edge(*shared)
                if e not in cedges:
                    parent[find(a)] = find(b)
        for f in fs:
            group[v, f] = (v, find(f))
    nodes = set(group.values())
    link: dict = {x: set() for x in nodes}
    for e in cedges:
        for f in by_edge[e]:
            a, b = group[e[0], f], group[e[1], f]
            link[a].add(b)
            link[b].add(a)
    seen, curves = set(), 0
    for x in nodes:
        if x in seen:
            continue
        curves += 1
        stack = [x]
        seen.add(x)
        while stack:
            y = stack.pop()
            for z in link[y]:
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
    one_sided = curves == 1
    separating = ncomp >= 2
    contractible = False
    if separating:
        for c in range(ncomp):
            fs = [faces[i] for i in range(len(faces)) if comp[i] == c]
            V = {v for f in fs for v in f}
            E = {_edge(f[i], f[(i + 1) % 3]) for f in fs for i in range(3)}
            if len(V) - len(E) + len(fs) == 1:
                contractible = True
    return {"one_sided": one_sided, "separating": separating, "contractible": contractible}


def brute_shortest_noncontractible(G: Triangulation, max_len: int = 8) -> int | None:
    for L in range(3, max_len + 1):
        for c in simple_cycles(G, L):
            if len(c) == L and not cycle_topology(G, c)["contractible"]:
                return L
    return None


def bfs(G: Triangulation, x: int, allowed=None) -> dict[int, int]:
    dist = {x: 0}
    q = deque([x])
    while q:
        v = q.popleft()
        for u in G.rotations[v]:
            if u not in dist and (allowed is None or u in allowed):
                dist[u] = dist[v] + 1
                q.append(u)
    return dist


# ------------------------------------------------------------ cones
def _rot(p, k=1):
    a, b = p
    for _ in range(k % 6):
        a, b = -b, a + b
    return a, b


def _hnorm(p):
    a, b = p
    return max(abs(a), abs(b), abs(a + b))


def cone_sphere(q: int, t: int, s: int):
    """Sphere from a ``60q``-degree lattice wedge with its rays glued, cut to hex layers ``t..s``.

    Both ends are capped by an apex.  The enclosed curvature of each layer is
    ``6 - q``, so the q=1 cone carries type-B walks and the q=2 cone type C/D.
    Returns the graph and the layer cycles, innermost first.
    """
    def canon(p):
        c = _hnorm(p)
        return (c, 0) if _rot(p, -q) == (c, 0) else p

    def inside(p):
        c = _hnorm(p)
        if not t <= c <= s:
            return False
        if _rot(p, -q) == (c, 0):
            return True
        return any((lambda ij: ij[0] > 0 and ij[1] >= 0)(_rot(p, -k)) for k in range(q))

    def layer(c):
        return [_rot((c - j, j), k) for k in range(q) for j in range(c)]

    pts = [p for c in range(t, s + 1) for p in layer(c)]
    idx = {p: i for i, p in enumerate(pts)}
    faces = set()
    for p in pts:
        for d in range(6):
            e1, e2 = _rot((1, 0), d), _rot((1, 0), d + 1)
            a = (p[0] + e1[0], p[1] + e1[1])
            b = (p[0] + e2[0], p[1] + e2[1])
            if inside(a) and inside(b):
                faces.add(tuple(sorted(idx[canon(x)] for x in (p, a, b))))
    n = len(pts)
    for ring, apex in ((layer(t), n), (layer(s), n + 1)):
        for i in range(len(ring)):
            faces.add(tuple(sorted((apex, idx[ring[i]], idx[ring[(i + 1) % len(ring)]]))))
    G = Triangulation.from_faces(n + 2, sorted(faces))
    return G, [[idx[p] for p in layer(c)] for c in range(t, s + 1)]


# ------------------------------------------------------------ walks
# parent type -> (derived type, length drop)
TRANSITIONS = {"A": ("A", 0), "B": ("B", 1), "C": ("C", 3), "D": ("C", 2), "E": ("E", 0)}


def check_transition(G, bw, nw):
    """Derived walk = interior-side neighbours of the parent; rdeg read off that side."""
    W = set(bw.vertices)
    inner = set(bfs(G, nw.vertices[0], set(range(G.n)) - W))
    assert not inner & W
    touching = {u for v in W for u in G.rotations[v] if u in inner}
    assert set(nw.vertices) == touching
    m = len(bw)
    chords = {v for i, v in enumerate(bw.vertices)
              for u in G.rotations[v] if u in W and u not in (bw.vertices[i - 1], bw.vertices[(i + 1) % m])}
    for v, rd in zip(bw.vertices, bw.rdeg):
        if v not in chords:
            assert rd == G.degree(v) - 2 - sum(u in inner for u in G.rotations[v])
    assert (nw.type, len(bw) - len(nw)) == TRANSITIONS[bw.type]
