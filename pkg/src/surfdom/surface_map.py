"""Triangulations of closed surfaces stored as signed rotation systems.

A vertex ``v`` carries a cyclic list of neighbours ``rotations[v]`` and a
parallel list of edge signatures ``signs[v]`` (each ``+1`` or ``-1``).  The two
ends of an edge carry the same signature.  Faces are never stored; they are
recovered by the usual face-tracing rule for embedding schemes.

Disks and cylinders are handled as sphere embeddings in which a few faces are
allowed to be longer than three; those faces are listed in ``marked``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class TriangulationError(ValueError):
    """Raised for malformed input or a violated precondition."""


@dataclass(frozen=True)
class Walk:
    """A vertex sequence; closed walks repeat the first vertex at the end."""

    vertices: tuple[int, ...]
    closed: bool = True

    def __len__(self) -> int:
        return len(self.vertices) - 1 if self.vertices else 0

    @classmethod
    def cycle(cls, vertices: Iterable[int]) -> "Walk":
        vs = tuple(vertices)
        if vs and vs[0] != vs[-1]:
            vs = vs + (vs[0],)
        return cls(vs, True)

    @property
    def cyclic(self) -> tuple[int, ...]:
        """Vertices of a closed walk without the repeated endpoint."""
        return self.vertices[:-1] if self.closed else self.vertices

    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.vertices, self.vertices[1:]))


def _canonical_rotation(rot: Sequence[int], sg: Sequence[int]):
    if not rot:
        return (), ()
    i = min(range(len(rot)), key=rot.__getitem__)
    return tuple(rot[i:]) + tuple(rot[:i]), tuple(sg[i:]) + tuple(sg[:i])


def _canonical_face(face: Sequence[int]) -> tuple[int, ...]:
    """Face up to rotation and reversal, as a hashable key."""
    k = len(face)
    best = None
    for seq in (list(face), list(reversed(face))):
        i = min(range(k), key=seq.__getitem__)
        cand = tuple(seq[i:] + seq[:i])
        if best is None or cand < best:
            best = cand
    return best


@dataclass(frozen=True, eq=False)
class Triangulation:
    """Signed rotation system of a surface-embedded simple graph."""

    rotations: tuple[tuple[int, ...], ...]
    signs: tuple[tuple[int, ...], ...]
    marked: tuple[tuple[int, ...], ...] = field(default=())

    # ------------------------------------------------------------------ build
    @classmethod
    def from_rotations(cls, rotations, signs=None, marked=()) -> "Triangulation":
        rots, sgs = [], []
        for v, rot in enumerate(rotations):
            sg = [1] * len(rot) if signs is None else list(signs[v])
            r, s = _canonical_rotation(list(rot), sg)
            rots.append(r)
            sgs.append(s)
        return cls(tuple(rots), tuple(sgs), tuple(tuple(f) for f in marked))

    @classmethod
    def from_faces(cls, n: int, faces: Iterable[Sequence[int]], marked=()) -> "Triangulation":
        """Build the rotation system of a closed surface from its face list.

        ``faces`` lists every face (triangles and any marked polygons) as a
        vertex cycle; orientation of the cycles is irrelevant.  Signatures are
        derived, then gauge-fixed so that orientable surfaces come out with all
        signatures positive.
        """
        faces = [tuple(f) for f in faces] + [tuple(f) for f in marked]
        corners: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for f in faces:
            k = len(f)
            for i in range(k):
                corners[f[i]].append((f[i - 1], f[(i + 1) % k]))
        rotations = []
        for v in range(n):
            links: dict[int, list[int]] = {}
            for a, b in corners[v]:
                links.setdefault(a, []).append(b)
                links.setdefault(b, []).append(a)
            if not links:
                raise TriangulationError(f"vertex {v} lies on no face")
            for u, ends in links.items():
                if len(ends) != 2:
                    raise TriangulationError(f"edge {v}-{u} is not on exactly two face corners")
            start = min(links)
            rot, prev, cur = [start], None, start
            while True:
                a, b = links[cur]
                nxt = b if a == prev else a
                if prev is None:
                    nxt = min(a, b)
                if nxt == start:
                    break
                rot.append(nxt)
                prev, cur = cur, nxt
                if len(rot) > len(links):
                    break
            if len(rot) != len(links):
                raise TriangulationError(f"link of vertex {v} is not a single cycle")
            rotations.append(rot)
        pos = [{u: i for i, u in enumerate(r)} for r in rotations]
        signs = [[0] * len(r) for r in rotations]
        # one face per edge decides the signature
        for f in faces:
            k = len(f)
            for i in range(k):
                u, v, x, y = f[i], f[(i + 1) % k], f[i - 1], f[(i + 2) % k]
                du, dv = len(rotations[u]), len(rotations[v])
                iu, iv = pos[u][v], pos[v][u]
                side_u = 1 if rotations[u][(iu - 1) % du] == x else -1
                side_v = 1 if rotations[v][(iv + 1) % dv] == y else -1
                s = side_u * side_v
                signs[u][iu] = s
                signs[v][iv] = s
        return cls.from_rotations(rotations, signs, marked).normalized()

    # ------------------------------------------------------------ basic data
    @property
    def vertex_count(self) -> int:
        return len(self.rotations)

    n = vertex_count

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.fromiter((len(r) for r in self.rotations), dtype=np.int64, count=self.n)

    @cached_property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    @cached_property
    def _pos(self) -> tuple[dict[int, int], ...]:
        return tuple({u: i for i, u in enumerate(r)} for r in self.rotations)

    def position(self, v: int, u: int) -> int:
        """Index of ``u`` in the rotation at ``v``."""
        return self._pos[v][u]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._pos[u]

    def sign(self, u: int, v: int) -> int:
        return self.signs[u][self._pos[u][v]]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotations[v]

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u, rot in enumerate(self.rotations) for v in rot if u < v)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        idx = {}
        for i, (u, v) in enumerate(self.edges):
            idx[u, v] = i
            idx[v, u] = i
        return idx

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency in CSR form (indptr, indices), rotation order kept."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum(self.degrees)
        indices = np.fromiter(
            (u for r in self.rotations for u in r), dtype=np.int64, count=int(indptr[-1])
        )
        return indptr, indices

    @cached_property
    def csr_signs(self) -> np.ndarray:
        return np.fromiter((s for sg in self.signs for s in sg), dtype=np.int64,
                           count=int(self.csr[0][-1]))

    # ----------------------------------------------------------------- faces
    def trace_faces(self) -> list[tuple[int, ...]]:
        """Trace all faces.  Each face is returned once as a vertex cycle."""
        seen: set[tuple[int, int, int]] = set()
        faces = []
        rots, sgs, pos = self.rotations, self.signs, self._pos
        for v0 in range(self.n):
            for i0 in range(len(rots[v0])):
                if (v0, i0, 1) in seen:
                    continue
                face = []
                v, i, s = v0, i0, 1
                while (v, i, s) not in seen:
                    seen.add((v, i, s))
                    seen.add((v, (i - s) % len(rots[v]), -s))
                    face.append(v)
                    u = rots[v][i]
                    s = s * sgs[v][i]
                    i = (pos[u][v] + s) % len(rots[u])
                    v = u
                faces.append(tuple(face))
        return faces

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.trace_faces())

    @cached_property
    def marked_keys(self) -> frozenset:
        return frozenset(_canonical_face(f) for f in self.marked)

    def is_marked(self, face: Sequence[int]) -> bool:
        return _canonical_face(face) in self.marked_keys

    @cached_property
    def triangles(self) -> tuple[tuple[int, int, int], ...]:
        """Traced 3-faces that are not marked."""
        return tuple(f for f in self.faces if len(f) == 3 and not self.is_marked(f))

    # ------------------------------------------------------------ transforms
    def normalized(self) -> "Triangulation":
        """Flip local orientations so BFS-tree edges (from 0) carry +1.

        Orientable surfaces end with every signature equal to +1.
        """
        n = self.n
        flip = [0] * n
        for root in range(n):
            if flip[root]:
                continue
            flip[root] = 1
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for v, s in zip(self.rotations[u], self.signs[u]):
                    if not flip[v]:
                        flip[v] = flip[u] * s
                        queue.append(v)
        if all(f == 1 for f in flip):
            return self
        rots, sgs = [], []
        for v in range(n):
            r = list(self.rotations[v])
            s = [flip[v] * flip[u] * x for u, x in zip(r, self.signs[v])]
            if flip[v] == -1:
                r.reverse()
                s.reverse()
            rots.append(r)
            sgs.append(s)
        return Triangulation.from_rotations(rots, sgs, self.marked)

    def reflected(self) -> "Triangulation":
        """Mirror image: every rotation reversed."""
        return Triangulation.from_rotations(
            [tuple(reversed(r)) for r in self.rotations],
            [tuple(reversed(s)) for s in self.signs],
            self.marked,
        )

    def relabeled(self, perm: Sequence[int]) -> "Triangulation":
        """Rename vertex ``v`` to ``perm[v]``."""
        n = self.n
        rots = [None] * n
        sgs = [None] * n
        for v in range(n):
            rots[perm[v]] = [perm[u] for u in self.rotations[v]]
            sgs[perm[v]] = list(self.signs[v])
        marked = [tuple(perm[u] for u in f) for f in self.marked]
        return Triangulation.from_rotations(rots, sgs, marked)

    def with_marked(self, marked) -> "Triangulation":
        return Triangulation(self.rotations, self.signs, tuple(tuple(f) for f in marked))


# ---------------------------------------------------------------- validation
def validate(G: Triangulation) -> list[str]:
    """List every violated invariant; an empty list means ``G`` is valid."""
    diags = []
    n = G.n
    if len(G.signs) != n:
        return ["signature table has the wrong length"]
    for v in range(n):
        rot, sg = G.rotations[v], G.signs[v]
        if len(rot) != len(sg):
            diags.append(f"vertex {v}: rotation and signature lengths differ")
            continue
        if len(set(rot)) != len(rot):
            dup = sorted({u for u in rot if rot.count(u) > 1})
            diags.append(f"duplicate neighbor {dup} in rotation of vertex {v}")
        for u, s in zip(rot, sg):
            if u == v:
                diags.append(f"loop at vertex {v}")
            elif not 0 <= u < n:
                diags.append(f"vertex {v}: neighbor {u} out of range")
            elif v not in G.rotations[u]:
                diags.append(f"asymmetric adjacency {v}-{u}")
            elif s not in (1, -1):
                diags.append(f"edge {v}-{u}: signature {s} not in {{+1,-1}}")
            elif G.signs[u][G.rotations[u].index(v)] != s:
                diags.append(f"signature mismatch on edge {v}-{u}")
    if diags:
        return diags
    for f in G.marked:
        if len(set(f)) != len(f) or any(not G.has_edge(a, b) for a, b in zip(f, f[1:] + f[:1])):
            diags.append(f"marked face {list(f)} is not a cycle of the graph")
    for face in G.faces:
        if len(face) != 3 and not G.is_marked(face):
            diags.append(f"non-triangular face of length {len(face)}: {list(face)}")
    traced = {_canonical_face(f) for f in G.faces}
    for f in G.marked:
        if _canonical_face(f) not in traced:
            diags.append(f"marked face {list(f)} is not a traced face")
    return diags


def euler_characteristic(G: Triangulation) -> int:
    """V - E + F with faces obtained by tracing (cellularity assumed)."""
    return G.n - G.edge_count + len(G.faces)


def components(G: Triangulation) -> list[list[int]]:
    seen = [False] * G.n
    comps = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            u = queue.popleft()
            for v in G.rotations[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def is_orientable(G: Triangulation) -> bool:
    flip = [0] * G.n
    for root in range(G.n):
        if flip[root]:
            continue
        flip[root] = 1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, s in zip(G.rotations[u], G.signs[u]):
                if not flip[v]:
                    flip[v] = flip[u] * s
                    queue.append(v)
                elif flip[u] * flip[v] * s != 1:
                    return False
    return True


def classify_surface(G: Triangulation) -> tuple[bool, int]:
    """Return ``(orientable, genus)`` of a connected embedded graph."""
    if G.n == 0 or len(components(G)) != 1:
        raise TriangulationError("classify_surface needs a connected input")
    chi = euler_characteristic(G)
    orientable = is_orientable(G)
    if orientable:
        if (2 - chi) % 2:
            raise TriangulationError(f"odd Euler genus {2 - chi} on an orientable surface")
        return True, (2 - chi) // 2
    return False, 2 - chi


def euler_genus(G: Triangulation) -> int:
    """2 - chi summed over components (0 exactly for unions of spheres)."""
    return sum(2 - euler_characteristic(induced_component(G, c)[0]) for c in components(G))


def bfs_layers(G: Triangulation, x: int, limit: int | None = None) -> list[int]:
    """BFS distances from ``x`` (-1 for unreached or beyond ``limit``)."""
    if not 0 <= x < G.n:
        raise TriangulationError(f"vertex {x} out of range")
    dist = [-1] * G.n
    dist[x] = 0
    queue = deque([x])
    while queue:
        u = queue.popleft()
        if limit is not None and dist[u] >= limit:
            continue
        for v in G.rotations[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def layers(dist: Sequence[int]) -> list[list[int]]:
    """Group vertices by distance: ``layers(d)[i]`` is N_i."""
    out: list[list[int]] = []
    for v, d in enumerate(dist):
        if d < 0:
            continue
        while len(out) <= d:
            out.append([])
        out[d].append(v)
    return out


def multi_source_distance(G: Triangulation, sources: Iterable[int]) -> list[int]:
    dist = [-1] * G.n
    queue = deque()
    for s in sources:
        if dist[s] < 0:
            dist[s] = 0
            queue.append(s)
    while queue:
        u = queue.popleft()
        for v in G.rotations[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def induced_component(G: Triangulation, verts: Sequence[int]):
    """Sub-rotation-system on a union of components; returns (H, old->new)."""
    verts = sorted(verts)
    new = {v: i for i, v in enumerate(verts)}
    rots = [[new[u] for u in G.rotations[v]] for v in verts]
    sgs = [list(G.signs[v]) for v in verts]
    marked = [tuple(new[u] for u in f) for f in G.marked if all(u in new for u in f)]
    return Triangulation.from_rotations(rots, sgs, marked), new


def is_walk(G: Triangulation, W: Walk) -> bool:
    vs = W.vertices
    if W.closed and (not vs or vs[0] != vs[-1]):
        return False
    return all(G.has_edge(a, b) for a, b in zip(vs, vs[1:]))


def is_cycle(G: Triangulation, W: Walk) -> bool:
    cyc = W.cyclic
    return W.closed and len(cyc) >= 3 and len(set(cyc)) == len(cyc) and is_walk(G, W)


# ------------------------------------------------------------------ TRI I/O
def parse_tri(text: str | bytes) -> Triangulation:
    """Parse the TRI text format."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = []
    for raw in text.split("\n"):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if len(lines) < 2 or lines[0] != "tri 1":
        raise TriangulationError("malformed header: expected 'tri 1'")
    head = lines[1].split()
    if len(head) != 2 or head[0] != "vertices" or not head[1].isdigit():
        raise TriangulationError("malformed header: expected 'vertices <n>'")
    n = int(head[1])
    body = lines[2:]
    marked = []
    if body and body[0].startswith("marked-faces"):
        for tok in body[0].split()[1:]:
            marked.append(tuple(int(x) for x in tok.split(",")))
        body = body[1:]
    if len(body) != n:
        raise TriangulationError(f"expected {n} rotation lines, found {len(body)}")
    rots, sgs = [], []
    for i, line in enumerate(body):
        label, _, rest = line.partition(":")
        if label.strip() != f"v{i}":
            raise TriangulationError(f"expected rotation line for v{i}, got {label!r}")
        rot, sg = [], []
        for tok in rest.split():
            u, _, s = tok.partition(":")
            if s not in ("+", "-") or not u.isdigit():
                raise TriangulationError(f"bad rotation entry {tok!r} at v{i}")
            rot.append(int(u))
            sg.append(1 if s == "+" else -1)
        rots.append(rot)
        sgs.append(sg)
    # structural errors are fatal at parse time
    for v in range(n):
        if len(set(rots[v])) != len(rots[v]):
            raise TriangulationError(f"duplicate neighbor in rotation of v{v}")
        for u, s in zip(rots[v], sgs[v]):
            if not 0 <= u < n or u == v:
                raise TriangulationError(f"bad neighbor {u} at v{v}")
            if v not in rots[u]:
                raise TriangulationError(f"asymmetric adjacency {v}-{u}")
            if sgs[u][rots[u].index(v)] != s:
                raise TriangulationError(f"signature mismatch on edge {v}-{u}")
    G = Triangulation.from_rotations(rots, sgs, marked)
    diags = validate(G)
    if diags:
        raise TriangulationError("; ".join(diags[:5]))
    return G


def serialize_tri(G: Triangulation) -> str:
    out = ["tri 1", f"vertices {G.n}"]
    if G.marked:
        out.append("marked-faces " + " ".join(",".join(map(str, f)) for f in G.marked))
    for v in range(G.n):
        ents = " ".join(f"{u}:{'+' if s > 0 else '-'}" for u, s in zip(G.rotations[v], G.signs[v]))
        out.append(f"v{v}: {ents}")
    return "\n".join(out) + "\n"
