"""Cutting a sphere open along a tree and developing it onto the triangular grid.

Cutting along a tree ``T`` replaces every tree vertex ``v`` by one copy per
sector of its rotation between consecutive tree edges.  The result ``G'``
is a triangulated disk whose boundary runs twice along every tree edge.  When
every vertex off the tree has degree 6, the disk develops onto the lattice
``Z^2`` in axial coordinates, and the index-7 sublattice
``{(a, b) : 2a - b = phase (mod 7)}`` pulls back to a set that, together
with ``V(T)``, dominates the sphere.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from ..domination import prune_redundant
from ..generators import AXIAL_DIRS
from ..surface_map import Triangulation, TriangulationError
from ..surgery import USets
from .steiner import SteinerTree, steiner_tree

_DIR_INDEX = {d: i for i, d in enumerate(AXIAL_DIRS)}


def in_d_infinity(a: int, b: int, phase: int = 0) -> bool:
    return (2 * a - b - phase) % 7 == 0


def d_infinity_is_perfect() -> bool:
    """Each closed lattice neighbourhood holds exactly one member of every translate."""
    for phase in range(7):
        for a in range(7):
            for b in range(7):
                pts = [(a, b)] + [(a + da, b + db) for da, db in AXIAL_DIRS]
                if sum(in_d_infinity(x, y, phase) for x, y in pts) != 1:
                    return False
    return True


# ------------------------------------------------------------ cut-open disk
@dataclass(frozen=True, eq=False)
class CutOpenDisk:
    """``G'``: rotations of copies are open paths, all others closed cycles."""

    source: Triangulation
    tree_vertices: frozenset
    tree_edges: tuple[tuple[int, int], ...]
    origin: tuple[int, ...]  # G' id -> G id
    is_copy: tuple[bool, ...]
    rotations: tuple[tuple[int, ...], ...]
    closed: tuple[bool, ...]  # rotation is a full cycle (interior vertex)
    outer: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.origin)

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    @property
    def copy_count(self) -> int:
        return sum(self.is_copy)

    def triangles(self) -> list[tuple[int, int, int]]:
        out = set()
        for v, rot in enumerate(self.rotations):
            d = len(rot)
            for i in range(d if self.closed[v] else d - 1):
                t = (v, rot[i], rot[(i + 1) % d])
                j = t.index(min(t))
                out.add(t[j:] + t[:j])
        return sorted(out)


def build_cut_open_disk(G: Triangulation, tree_vertices: Iterable[int],
                        tree_edges: Iterable[tuple[int, int]]) -> CutOpenDisk:
    """Cut the sphere ``G`` open along the tree given by its vertices and edges."""
    VT = frozenset(int(v) for v in tree_vertices)
    ET = tuple(sorted((min(u, v), max(u, v)) for u, v in tree_edges))
    if not VT:
        raise TriangulationError("tree must have a vertex")
    if len(ET) != len(VT) - 1 or any(u not in VT or v not in VT or not G.has_edge(u, v) for u, v in ET):
        raise TriangulationError("edges do not form a tree of G on the given vertices")
    if any(s != 1 for sg in G.signs for s in sg):
        raise TriangulationError("cut-open disk needs an oriented (normalized) sphere")
    tadj: dict[int, set[int]] = {v: set() for v in VT}
    for u, v in ET:
        tadj[u].add(v)
        tadj[v].add(u)

    rot = G.rotations
    # sector bookkeeping: sector of v is identified by the tree neighbour it starts at
    sector_start: dict[int, list[int]] = {}  # v -> rotation positions of tree nbrs
    corner_sector: dict[int, list[int]] = {}  # v -> for position i, start position of its sector
    for v in sorted(VT):
        d = len(rot[v])
        tp = [i for i, u in enumerate(rot[v]) if u in tadj[v]]
        sector_start[v] = tp
        cs = [0] * d
        if tp:
            tps, cur = set(tp), tp[-1]
            for i in range(d):
                if i in tps:
                    cur = i
                cs[i] = cur
        corner_sector[v] = cs

    new_id: dict[tuple[int, int], int] = {}
    origin: list[int] = []
    is_copy: list[bool] = []
    for v in range(G.n):
        if v not in VT:
            new_id[v, -1] = len(origin)
            origin.append(v)
            is_copy.append(False)
    for v in sorted(VT):
        for p in sector_start[v]:
            new_id[v, p] = len(origin)
            origin.append(v)
            is_copy.append(True)

    def img(x: int, y: int) -> int:
        """Image of ``x`` on the side of the non-tree edge ``xy``."""
        if x not in VT:
            return new_id[x, -1]
        return new_id[x, corner_sector[x][G.position(x, y)]]

    def copy_starting(u: int, v: int) -> int:
        return new_id[u, G.position(u, v)]

    def copy_ending(u: int, v: int) -> int:
        tp = sector_start[u]
        j = tp.index(G.position(u, v))
        return new_id[u, tp[j - 1]]

    rotations: list[tuple[int, ...]] = [()] * len(origin)
    closed = [not c for c in is_copy]
    single = VT if len(VT) == 1 else frozenset()
    for v in range(G.n):
        if v in VT:
            continue
        r = rot[v]
        if single and next(iter(single)) in r:
            x = next(iter(single))
            i = r.index(x)
            path = [r[(i + j) % len(r)] for j in range(1, len(r))]
            rotations[new_id[v, -1]] = tuple(img(u, v) for u in path)
            closed[new_id[v, -1]] = False
        else:
            rotations[new_id[v, -1]] = tuple(img(u, v) for u in r)
    for v in sorted(VT):
        tp, d = sector_start[v], len(rot[v])
        for j, p in enumerate(tp):
            q = tp[(j + 1) % len(tp)]
            span = (q - p) % d or d
            us, ue = rot[v][p], rot[v][q]
            inner = [rot[v][(p + t) % d] for t in range(1, span)]
            path = [copy_ending(us, v)] + [img(x, v) for x in inner] + [copy_starting(ue, v)]
            rotations[new_id[v, p]] = tuple(path)

    if single:
        x = next(iter(single))
        outer = tuple(new_id[u, -1] for u in rot[x])
    else:
        # walk the boundary: from a copy leave through its last entry
        start = new_id[min(VT), sector_start[min(VT)][0]]
        outer_l = [start]
        cur = start
        while True:
            nxt = rotations[cur][-1]
            if nxt == start:
                break
            outer_l.append(nxt)
            cur = nxt
            if len(outer_l) > 2 * len(ET) + 1:
                raise TriangulationError("boundary walk of the cut-open disk does not close")
        outer = tuple(outer_l)
    return CutOpenDisk(G, VT, ET, tuple(origin), tuple(is_copy), tuple(rotations),
                       tuple(closed), outer)


# ---------------------------------------------------------------- grid map
@dataclass(frozen=True, eq=False)
class GridMap:
    disk: CutOpenDisk
    coords: tuple[tuple[int, int], ...]

    def neighbourhood_bijective(self, v: int) -> bool:
        """``g`` maps ``N[v]`` onto the 7 lattice points of ``N[g(v)]``."""
        a, b = self.coords[v]
        img = {self.coords[v]} | {self.coords[u] for u in self.disk.rotations[v]}
        want = {(a, b)} | {(a + da, b + db) for da, db in AXIAL_DIRS}
        return len(self.disk.rotations[v]) == 6 and img == want


def grid_map(disk: CutOpenDisk) -> GridMap:
    """Develop ``disk`` onto the lattice; raises if an interior degree is not 6."""
    for v in range(disk.n):
        if disk.closed[v] and disk.degree(v) != 6:
            raise TriangulationError(f"interior vertex {v} of the disk has degree {disk.degree(v)}")
    coords: list[tuple[int, int] | None] = [None] * disk.n
    seed = next((v for v in range(disk.n) if disk.closed[v]), 0)
    coords[seed] = (0, 0)
    queue = deque([(seed, 0, 0)])  # vertex, index into its rotation, direction of that neighbour
    coords[disk.rotations[seed][0]] = AXIAL_DIRS[0]
    queue.append((disk.rotations[seed][0], None, None))
    done = [False] * disk.n
    while queue:
        v, i0, d0 = queue.popleft()
        if done[v]:
            continue
        rot = disk.rotations[v]
        if i0 is None:
            for i, u in enumerate(rot):
                if coords[u] is not None:
                    du = (coords[u][0] - coords[v][0], coords[u][1] - coords[v][1])
                    if du not in _DIR_INDEX:
                        raise TriangulationError("grid map is not locally isometric")
                    i0, d0 = i, _DIR_INDEX[du]
                    break
            else:
                continue
        done[v] = True
        a, b = coords[v]
        d = len(rot)
        steps = range(d) if disk.closed[v] else range(-i0, d - i0)
        for t in steps:
            u = rot[(i0 + t) % d]
            da, db = AXIAL_DIRS[(d0 + t) % 6]
            p = (a + da, b + db)
            if coords[u] is None:
                coords[u] = p
                queue.append((u, None, None))
            elif coords[u] != p:
                raise TriangulationError(f"grid map inconsistent at vertex {u}")
            elif not done[u]:
                queue.append((u, None, None))
    if any(c is None for c in coords):
        raise TriangulationError("disk is not connected")
    return GridMap(disk, tuple(coords))


# ------------------------------------------------------------ pullback
@dataclass(frozen=True)
class OverlapStats:
    t_prime: int
    t_v: dict  # G' id of each D' member -> high-degree vertices in its closed neighbourhood
    star_edges: int  # sum over D' of max(t'_v - 1, 0)
    shared_low_degree: int  # shared vertices of degree <= 6; expected zero
    distinct_image_overlaps: int  # overlapping members with different lattice images

    @property
    def outerplanar_bound_holds(self) -> bool:
        return self.star_edges <= max(2 * self.t_prime - 3, 0)


@dataclass(frozen=True, eq=False)
class GridPullback:
    D: frozenset  # constructed set with redundant members pruned
    D_prime: frozenset  # ids in G
    tree: SteinerTree | None
    tree_vertices: frozenset
    disk: CutOpenDisk
    gmap: GridMap
    phase: int
    stats: OverlapStats
    constructed: frozenset  # V(T) plus the lattice image, before pruning

    @property
    def size(self) -> int:
        return len(self.D)

    def bound_general_num(self) -> int:
        """``6|D| <= n + 5|V(T)| + |V_T'| + t' - 3``; this is the right-hand side."""
        n = self.disk.source.n
        return n + 5 * len(self.tree_vertices) + self.disk.copy_count + self.stats.t_prime - 3

    def bound_flat_num(self) -> int:
        """``7|D| <= n + 8|V(T)| - 2``; valid when every degree is at most 6 and U = U0."""
        return self.disk.source.n + 8 * len(self.tree_vertices) - 2


def _spanning_tree(G: Triangulation, first: list[tuple[int, int]], extra: list[tuple[int, int]]):
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    out = []
    for u, v in first + extra:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            out.append((min(u, v), max(u, v)))
    return out


def tree_for_usets(G: Triangulation, us: USets, steiner: SteinerTree | None = None):
    """Spanning tree of a Steiner tree for ``U0`` together with ``G[U]``."""
    if not us.U0:
        raise TriangulationError("U0 must be nonempty")
    T0 = steiner if steiner is not None else steiner_tree(G, us.U0)
    U = us.U
    verts = set(T0.vertices) | set(U)
    gu = sorted((u, v) for u in U for v in G.rotations[u] if v in U and u < v)
    edges = _spanning_tree(G, list(T0.edges), gu)
    if len(edges) != len(verts) - 1:
        raise TriangulationError("Steiner tree and G[U] do not span a connected set")
    return T0, frozenset(verts), tuple(edges)


def _overlap(disk: CutOpenDisk, gm: GridMap, members: list[int]) -> OverlapStats:
    high = [disk.degree(v) > 6 for v in range(disk.n)]
    t_prime = sum(high)
    t_v = {}
    owner: dict[int, list[int]] = {}
    for v in members:
        nb = (v,) + disk.rotations[v]
        t_v[v] = sum(high[u] for u in nb)
        for u in nb:
            owner.setdefault(u, []).append(v)
    shared_low = 0
    distinct = 0
    for u, vs in owner.items():
        if len(vs) > 1:
            if not high[u]:
                shared_low += 1
            if len({gm.coords[v] for v in vs}) > 1:
                distinct += 1
    star = sum(max(t - 1, 0) for t in t_v.values())
    return OverlapStats(t_prime, t_v, star, shared_low, distinct)


def grid_pullback(G: Triangulation, us: USets, steiner: SteinerTree | None = None) -> GridPullback:
    """Dominating set ``V(T)`` plus the pulled-back lattice translate of least size.

    Members covered twice over are then pruned, tree vertices first; the
    overlap statistics describe the set before pruning.
    """
    T0, VT, ET = tree_for_usets(G, us, steiner)
    disk = build_cut_open_disk(G, VT, ET)
    gm = grid_map(disk)
    best = None
    for phase in range(7):
        mem = [v for v in range(disk.n) if not disk.is_copy[v] and in_d_infinity(*gm.coords[v], phase)]
        if best is None or len(mem) < len(best[1]):
            best = (phase, mem)
    phase, mem = best
    Dp = frozenset(disk.origin[v] for v in mem)
    stats = _overlap(disk, gm, mem)
    raw = frozenset(VT) | Dp
    D = prune_redundant(G, raw, us.U, sorted(VT) + sorted(Dp - VT))
    return GridPullback(frozenset(D), Dp, T0, VT, disk, gm, phase, stats, raw)
