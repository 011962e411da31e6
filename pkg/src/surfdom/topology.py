"""Cycle classification, shortest essential cycles and the orientation double cover."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels
from .surface_map import (
    Triangulation,
    TriangulationError,
    Walk,
    classify_surface,
    components,
    euler_characteristic,
    induced_component,
    is_cycle,
    validate,
)

ONE_SIDED = "one_sided"
TWO_SIDED = "two_sided"


@dataclass(frozen=True)
class CycleClass:
    sided: str
    separating: bool
    contractible: bool

    @property
    def one_sided(self) -> bool:
        return self.sided == ONE_SIDED

    def to_json(self) -> dict:
        return {"sided": self.sided, "separating": self.separating, "contractible": self.contractible}


def _as_cycle(G: Triangulation, C) -> tuple[int, ...]:
    W = C if isinstance(C, Walk) else Walk.cycle(C)
    if not is_cycle(G, W):
        raise TriangulationError("the given walk is not a cycle of the graph")
    return W.cyclic


def canonical_cycle(cyc) -> tuple[int, ...]:
    """Rotate to the smallest vertex and pick the lexicographically smaller direction."""
    cyc = list(cyc)
    i = cyc.index(min(cyc))
    fwd = cyc[i:] + cyc[:i]
    back = [fwd[0]] + fwd[:0:-1]
    return tuple(min(fwd, back))


def cycle_sign(G: Triangulation, cyc) -> int:
    s = 1
    for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
        s *= G.sign(a, b)
    return s


def classify_cycle(G: Triangulation, C) -> CycleClass:
    """Classify by cutting a scratch copy along ``C`` and inspecting the pieces."""
    from .surgery import split_along  # local: surgery depends on this module's callers

    cyc = _as_cycle(G, C)
    if cycle_sign(G, cyc) < 0:
        return CycleClass(ONE_SIDED, False, False)
    sp = split_along(G, cyc)
    comps = components(sp.graph)
    if len(comps) == 1:
        return CycleClass(TWO_SIDED, False, False)
    pieces = [induced_component(sp.graph, c)[0] for c in comps]
    disk = any(euler_characteristic(H) == 2 for H in pieces)
    return CycleClass(TWO_SIDED, True, disk)


class CycleOracle:
    """Fast classification of cycles in one fixed surface.

    Uses mod-2 homology classes of edges from a tree-cotree decomposition;
    a separating cycle is contractible exactly when a side is a disk, which
    only needs checking on surfaces of Euler genus at least two other than
    the torus.
    """

    def __init__(self, G: Triangulation):
        self.G = G
        self.orientable, self.genus = classify_surface(G)
        self.euler_genus = 2 * self.genus if self.orientable else self.genus
        self.needs_disk_test = self.euler_genus >= 2 and not (self.orientable and self.genus == 1)
        self._build()

    def _build(self) -> None:
        G = self.G
        eidx = G.edge_index
        m = G.edge_count
        in_tree = np.zeros(m, dtype=bool)
        seen = [False] * G.n
        seen[0] = True
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in G.rotations[u]:
                if not seen[v]:
                    seen[v] = True
                    in_tree[eidx[u, v]] = True
                    queue.append(v)
        faces = G.faces
        self.face_edges = [
            [eidx[f[i], f[(i + 1) % len(f)]] for i in range(len(f))] for f in faces
        ]
        self.edge_faces = [[] for _ in range(m)]
        for fi, es in enumerate(self.face_edges):
            for e in es:
                self.edge_faces[e].append(fi)
        # dual spanning tree avoiding primal tree edges
        nf = len(faces)
        fparent_edge = [-1] * nf
        order = [0]
        fseen = [False] * nf
        fseen[0] = True
        in_cotree = np.zeros(m, dtype=bool)
        head = 0
        while head < len(order):
            f = order[head]
            head += 1
            for e in self.face_edges[f]:
                if in_tree[e] or in_cotree[e]:
                    continue
                for g in self.edge_faces[e]:
                    if not fseen[g]:
                        fseen[g] = True
                        fparent_edge[g] = e
                        in_cotree[e] = True
                        order.append(g)
        leftover = [e for e in range(m) if not in_tree[e] and not in_cotree[e]]
        if len(leftover) != self.euler_genus:
            raise TriangulationError("tree-cotree decomposition inconsistent with the Euler genus")
        if len(leftover) > 62:
            raise TriangulationError("homology classes limited to Euler genus 62")
        hom = [0] * m
        for b, e in enumerate(leftover):
            hom[e] = 1 << b
        for f in reversed(order[1:]):
            e0 = fparent_edge[f]
            acc = 0
            for e in self.face_edges[f]:
                if e != e0:
                    acc ^= hom[e]
            hom[e0] = acc
        self.edge_hom = np.array(hom, dtype=np.int64)
        self.generators = [G.edges[e] for e in leftover]

    @cached_property
    def csr_hom(self) -> np.ndarray:
        G = self.G
        eidx = G.edge_index
        return np.fromiter((self.edge_hom[eidx[u, v]] for u in range(G.n) for v in G.rotations[u]),
                           dtype=np.int64, count=2 * G.edge_count)

    def homology(self, cyc) -> int:
        eidx = self.G.edge_index
        h = 0
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            h ^= int(self.edge_hom[eidx[a, b]])
        return h

    def side_is_disk(self, cyc) -> bool:
        """For a separating cycle: is one of its sides a disk?"""
        G = self.G
        eidx = G.edge_index
        cut = {eidx[a, b] for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]])}
        e0 = eidx[cyc[0], cyc[1]]
        f_a, f_b = self.edge_faces[e0]
        states = []
        for f in (f_a, f_b):
            states.append(({f}, deque([f])))
        while True:
            for k, (seen, queue) in enumerate(states):
                if not queue:
                    return self._region_chi(seen) == 1
                f = queue.popleft()
                for e in self.face_edges[f]:
                    if e in cut:
                        continue
                    for g in self.edge_faces[e]:
                        if g not in seen:
                            if g in states[1 - k][0]:
                                return False  # both sides meet: not separating
                            seen.add(g)
                            queue.append(g)

    def _region_chi(self, faces_set) -> int:
        verts, edges = set(), set()
        for f in faces_set:
            verts.update(self.G.faces[f])
            edges.update(self.face_edges[f])
        return len(verts) - len(edges) + len(faces_set)

    def classify(self, cyc) -> CycleClass:
        if cycle_sign(self.G, cyc) < 0:
            return CycleClass(ONE_SIDED, False, False)
        if self.homology(cyc):
            return CycleClass(TWO_SIDED, False, False)
        if not self.needs_disk_test:
            return CycleClass(TWO_SIDED, True, True)
        return CycleClass(TWO_SIDED, True, self.side_is_disk(cyc))


def _tree_cycle(parent, root, x, y) -> list[int]:
    px = [x]
    while px[-1] != root:
        px.append(int(parent[px[-1]]))
    py = [y]
    while py[-1] != root:
        py.append(int(parent[py[-1]]))
    return px[::-1] + py[:-1]


def shortest_noncontractible_cycle(G: Triangulation, oracle: CycleOracle | None = None) -> Walk | None:
    """A minimum-length non-contractible cycle, or ``None`` on the sphere.

    Candidates are the cycles formed by one non-tree edge and the two tree
    paths of a BFS tree; every root is tried.  Ties are broken by the
    canonical vertex sequence.
    """
    oracle = oracle or CycleOracle(G)
    if oracle.euler_genus == 0:
        return None
    ip, ix = G.csr
    csr_sign = G.csr_signs
    csr_hom = oracle.csr_hom
    edges = np.array(G.edges, dtype=np.int64)
    eu, ev = edges[:, 0], edges[:, 1]
    eh = oracle.edge_hom
    es = np.array([G.sign(u, v) for u, v in G.edges], dtype=np.int64)
    best = 1 << 40
    best_cycles: set[tuple[int, ...]] = set()
    checked_contractible: set[tuple[int, ...]] = set()
    for r in range(G.n):
        limit = best if best < (1 << 40) else -1
        dist, parent, branch, hom, par = _kernels.scan_root(ip, ix, csr_sign, csr_hom, r, limit)
        du, dv = dist[eu], dist[ev]
        ok = (du >= 0) & (dv >= 0) & (branch[eu] != branch[ev]) & (parent[eu] != ev) & (parent[ev] != eu)
        length = du + dv + 1
        ok &= length <= best
        if not ok.any():
            continue
        essential = ((hom[eu] ^ hom[ev] ^ eh) != 0) | (par[eu] * par[ev] * es < 0)
        nz = ok & essential
        if oracle.needs_disk_test:
            zero = np.flatnonzero(ok & ~essential)
            for idx in zero[np.argsort(length[zero], kind="stable")]:
                if length[idx] > best:
                    break
                cyc = canonical_cycle(_tree_cycle(parent, r, int(eu[idx]), int(ev[idx])))
                if cyc in checked_contractible or cyc in best_cycles:
                    continue
                if oracle.side_is_disk(cyc):
                    checked_contractible.add(cyc)
                    continue
                if length[idx] < best:
                    best = int(length[idx])
                    best_cycles = set()
                best_cycles.add(cyc)
        if nz.any():
            m = int(length[nz].min())
            if m < best:
                best = m
                best_cycles = set()
            if m == best:
                for idx in np.flatnonzero(nz & (length == best)):
                    best_cycles.add(canonical_cycle(_tree_cycle(parent, r, int(eu[idx]), int(ev[idx]))))
    if not best_cycles:
        raise TriangulationError("no non-contractible cycle found on a surface of positive genus")
    return Walk.cycle(min(best_cycles))


# ------------------------------------------------------------ double cover
@dataclass(frozen=True, eq=False)
class CoverMap:
    base: Triangulation
    cover: Triangulation
    projection: tuple[int, ...]
    sheet: tuple[int, ...]

    def lift(self, v: int, sheet: int) -> int:
        return v + sheet * self.base.n


def double_cover(G: Triangulation) -> CoverMap:
    """Orientation double cover: two sheets, a negative edge swaps sheets."""
    orientable, _ = classify_surface(G)
    if orientable:
        raise TriangulationError("orientable input has no connected orientation double cover")
    n = G.n
    rots = [None] * (2 * n)
    for v in range(n):
        up = [u + (0 if s > 0 else n) for u, s in zip(G.rotations[v], G.signs[v])]
        down = [u + (n if s > 0 else 0) for u, s in zip(G.rotations[v], G.signs[v])]
        rots[v] = up
        rots[v + n] = list(reversed(down))
    H = Triangulation.from_rotations(rots)
    diags = validate(H)
    if diags:
        raise TriangulationError("double cover invalid: " + "; ".join(diags[:3]))
    return CoverMap(G, H, tuple(v % n for v in range(2 * n)), tuple(v // n for v in range(2 * n)))


def split_closed_walk(walk) -> list[list[int]]:
    """Break a closed walk (first vertex not repeated) into simple closed pieces."""
    pieces, path, where = [], [], {}
    for v in list(walk) + [walk[0]]:
        if v in where:
            j = where[v]
            pieces.append(path[j:])
            for u in path[j + 1:]:
                del where[u]
            path = path[: j + 1]
        else:
            where[v] = len(path)
            path.append(v)
    return [p for p in pieces if len(p) >= 1]


def short_cycle_nonorientable(G: Triangulation) -> Walk:
    """Short non-contractible cycle via the orientation double cover.

    On the projective plane the cover is a sphere, so the exact search is used.
    """
    oracle = CycleOracle(G)
    if oracle.orientable:
        raise TriangulationError("orientable input")
    if oracle.euler_genus == 1:
        return shortest_noncontractible_cycle(G, oracle)
    cm = double_cover(G)
    CH = shortest_noncontractible_cycle(cm.cover)
    projected = [cm.projection[v] for v in CH.cyclic]
    found = []
    for piece in split_closed_walk(projected):
        if len(piece) < 3:
            continue
        if not oracle.classify(piece).contractible:
            found.append(canonical_cycle(piece))
    if not found:
        raise TriangulationError("projected cover cycle has no essential piece")
    return Walk.cycle(min(found, key=lambda c: (len(c), c)))
