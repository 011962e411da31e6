"""Locating a long triangulated cylinder around a vertex of a sphere triangulation."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..surface_map import Triangulation, TriangulationError, bfs_layers
from ..surgery import USets
from .patterns import cyl_neighbors
from .walks import BoundaryWalk, derive_inner_walk, outer_degree_walk


@dataclass(frozen=True, eq=False)
class CylinderHandle:
    """A (w, l, k)-cylinder inside ``host``.

    ``rings[b][a]`` is the host vertex with cylinder coordinates ``(a, b)``,
    so ``rings[0]`` and ``rings[-1]`` are the boundary cycles.
    """

    host: Triangulation = field(repr=False)
    w: int
    ell: int
    k: int
    rings: tuple[tuple[int, ...], ...]
    seed: BoundaryWalk = field(repr=False)

    @property
    def interior(self) -> frozenset:
        return frozenset(v for ring in self.rings[1:-1] for v in ring)

    @property
    def boundary(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.rings[0], self.rings[-1]

    def vertex(self, a: int, b: int) -> int:
        return self.rings[b][a % self.w]

    @property
    def turns(self) -> tuple[int, ...]:
        """Rows whose diagonal leans forward (``a < k``); identical on every ring."""
        return tuple(range(self.k))


# ---------------------------------------------------------- straight walks
def trace_walk(G: Triangulation, start: int, first: int, turns: dict[int, int], limit: int) -> list[int] | None:
    """Walk ``start -> first -> ...`` leaving each vertex 3 rotation steps after the entry edge.

    ``turns[i]`` overrides the step count at the ``i``-th vertex after
    ``start``.  Returns the closed vertex list once ``start`` is reached again.
    """
    walk = [start, first]
    prev, cur = start, first
    for i in range(1, limit):
        if cur == start:
            return walk[:-1]
        d = G.degree(cur)
        if d != 6:
            return None
        nxt = G.rotations[cur][(G.position(cur, prev) + turns.get(i, 3)) % d]
        prev, cur = cur, nxt
        walk.append(cur)
    return walk[:-1] if cur == start else None


def seed_cycles(G: Triangulation, x: int, limit: int) -> list[BoundaryWalk]:
    """Type A and E cycles through ``x`` of length at most ``limit``.

    Straight walks give type A; one left and one right turn give type E.
    """
    found: dict[tuple[int, ...], BoundaryWalk] = {}
    plans = [{}] + [{i: 2, j: 4} for i in range(1, limit) for j in range(1, limit) if i != j]
    for first in G.rotations[x]:
        for turns in plans:
            W = trace_walk(G, x, first, turns, limit + 1)
            if W is None or len(W) < 3 or len(set(W)) != len(W):
                continue
            bw = outer_degree_walk(G, W)
            if bw.type in ("A", "E"):
                i = W.index(min(W))
                found.setdefault(tuple(W[i:] + W[:i]), bw)
    return sorted(found.values(), key=lambda b: (len(b), b.vertices))


def _label_rings(rings: list[tuple[int, ...]], G: Triangulation) -> tuple[int, list[tuple[int, ...]]] | None:
    """Relabel ring vertices to cylinder coordinates; returns ``(k, rings)`` with ``k <= w/2``."""
    w = len(rings[0])
    ell = len(rings) - 1

    def ups(k: int, a: int) -> set[int]:
        return {x for x, y in cyl_neighbors(w, k, a, 0) if y == 1}

    def fits(k: int, lo: tuple[int, ...], hi: tuple[int, ...]) -> bool:
        where = {u: i for i, u in enumerate(hi)}
        for a in range(w):
            got = {where[u] for u in G.rotations[lo[a]] if u in where}
            if got != ups(k, a):
                return False
        return True

    for direction in (1, -1):
        oriented = [r if direction == 1 else tuple(reversed(r)) for r in rings]
        for k in range(w // 2 + 1):
            for s0 in range(w):
                r0 = oriented[0][s0:] + oriented[0][:s0]
                out = [r0]
                for b in range(ell):
                    nxt = oriented[b + 1]
                    for s in range(w):
                        cand = nxt[s:] + nxt[:s]
                        if fits(k, out[-1], cand):
                            out.append(cand)
                            break
                    else:
                        break
                if len(out) == ell + 1:
                    return k, out
    return None


def extract_cylinder(G: Triangulation, x: int, r: int, usets: USets | None = None) -> CylinderHandle:
    """Grow the longest cylinder with U-free interior from a short type A/E cycle through ``x``."""
    U = usets.U if usets is not None else frozenset(v for v in range(G.n) if G.degree(v) != 6)
    dist = bfs_layers(G, x)
    if any(0 <= dist[u] <= 3 * r + 1 for u in U):
        raise TriangulationError(f"U meets the ball of radius {3 * r + 1} about {x}")
    seeds = [s for s in seed_cycles(G, x, 2 * r + 1) if len(s) in (2 * r, 2 * r + 1) and len(s) >= 3]
    if not seeds:
        raise TriangulationError("no type A/E seed cycle of length 2r or 2r+1")
    seed = seeds[0]

    def grow(bw: BoundaryWalk, taken: set[int]) -> list[tuple[int, ...]]:
        out = []
        cur = bw
        while all(G.degree(v) == 6 and v not in U for v in cur.vertices):
            try:
                nxt = derive_inner_walk(G, cur)
            except TriangulationError:
                break
            if taken & set(nxt.vertices):
                break
            taken |= set(nxt.vertices)
            out.append(nxt.vertices)
            cur = nxt
        return out

    taken = set(seed.vertices)
    fwd = grow(seed, taken)
    back = grow(seed.reversed(G), taken)
    # the reversed side runs the other way round; put it back in the seed's orientation
    rings = [tuple(reversed(r)) for r in reversed(back)] + [seed.vertices] + fwd
    if len(rings) < 3:
        raise TriangulationError("cylinder has no interior ring")
    labelled = _label_rings(rings, G)
    if labelled is None:
        raise TriangulationError("rings do not form a triangulated cylinder")
    k, rings = labelled
    return CylinderHandle(G, len(rings[0]), len(rings) - 1, k, tuple(rings), seed)
