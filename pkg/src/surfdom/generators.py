"""Deterministic constructors for the triangulation families used throughout."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any

from .surface_map import Triangulation, TriangulationError, validate

FAMILIES = (
    "tetrahedron", "octahedron", "icosahedron", "cylinder", "capped_cylinder",
    "geodesic_sphere", "projective_quotient", "torus_grid", "klein_grid", "hexagon_disk",
)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"{self.family}({','.join(map(str, self.params))})"


@dataclass
class Generated:
    graph: Triangulation
    spec: FamilySpec
    landmarks: dict[str, Any] = field(default_factory=dict)

    @property
    def special(self) -> list[int]:
        """Vertices whose degree differs from 6."""
        return [v for v in range(self.graph.n) if self.graph.degree(v) != 6]


def _finish(n, faces, spec, marked=(), **landmarks) -> Generated:
    G = Triangulation.from_faces(n, faces, marked)
    diags = validate(G)
    if diags:
        raise TriangulationError(f"{spec}: " + "; ".join(diags[:3]))
    return Generated(G, spec, dict(landmarks))


# ------------------------------------------------------------------ solids
def tetrahedron() -> Generated:
    faces = [(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)]
    return _finish(4, faces, FamilySpec("tetrahedron"))


def octahedron() -> Generated:
    # 0/5, 1/3, 2/4 are the antipodal pairs
    ring = [1, 2, 3, 4]
    faces = []
    for i in range(4):
        a, b = ring[i], ring[(i + 1) % 4]
        faces += [(0, a, b), (5, b, a)]
    return _finish(6, faces, FamilySpec("octahedron"))


def _icosahedron_data():
    """Coordinates (as sign/slot triples), faces and antipode map."""
    phi = (1 + math.sqrt(5)) / 2
    pts = []
    for s1, s2 in itertools.product((1, -1), repeat=2):
        pts += [(0.0, s1 * 1.0, s2 * phi), (s1 * 1.0, s2 * phi, 0.0), (s2 * phi, 0.0, s1 * 1.0)]
    pts.sort(key=lambda p: (-p[2], -p[1], -p[0]))
    anti = [pts.index(tuple(-c for c in p)) for p in pts]

    def d2(a, b):
        return sum((x - y) ** 2 for x, y in zip(pts[a], pts[b]))

    adj = {(a, b) for a in range(12) for b in range(12) if a != b and abs(d2(a, b) - 4) < 1e-9}
    faces = [t for t in itertools.combinations(range(12), 3)
             if (t[0], t[1]) in adj and (t[1], t[2]) in adj and (t[0], t[2]) in adj]
    return pts, faces, anti


def icosahedron() -> Generated:
    _, faces, anti = _icosahedron_data()
    return _finish(12, faces, FamilySpec("icosahedron"), antipode=anti)


def _subdivided_icosahedron(k: int):
    """Class-I subdivision; points keyed by their minimal barycentric support."""
    _, faces, anti = _icosahedron_data()
    keys: dict[tuple, int] = {}
    for v in range(12):
        keys[((v, k),)] = v

    def key(face, i, j):
        w = {face[0]: k - i - j, face[1]: i, face[2]: j}
        return tuple(sorted((v, c) for v, c in w.items() if c > 0))

    order = []
    for face in faces:
        for i in range(k + 1):
            for j in range(k + 1 - i):
                kk = key(face, i, j)
                if kk not in keys:
                    keys[kk] = len(keys)
                    order.append(kk)
    tris = []
    for fi, face in enumerate(faces):
        for i in range(k):
            for j in range(k - i):
                a, b, c = keys[key(face, i, j)], keys[key(face, i + 1, j)], keys[key(face, i, j + 1)]
                tris.append((fi, (a, b, c)))
                if i + j < k - 1:
                    d = keys[key(face, i + 1, j + 1)]
                    tris.append((fi, (b, d, c)))
    return keys, faces, anti, tris


def geodesic_sphere(k: int) -> Generated:
    if k < 1:
        raise TriangulationError("geodesic_sphere needs k >= 1")
    keys, _, _, tris = _subdivided_icosahedron(k)
    spec = FamilySpec("geodesic_sphere", (k,))
    return _finish(len(keys), [t for _, t in tris], spec, degree5=list(range(12)))


def projective_quotient(k: int) -> Generated:
    """Antipodal quotient of the k-subdivided icosahedron (Euler-consistent n = 5k^2 + 1)."""
    if k < 1:
        raise TriangulationError("projective_quotient needs k >= 1")
    keys, faces, anti, tris = _subdivided_icosahedron(k)
    inv = {i: kk for kk, i in keys.items()}

    def antikey(kk):
        return tuple(sorted((anti[v], c) for v, c in kk))

    cls: dict[int, int] = {}
    reps: dict[int, int] = {}
    for i in range(len(keys)):
        rep = min(i, keys[antikey(inv[i])])
        cls[i] = reps.setdefault(rep, len(reps))
    kept = []
    seen = set()
    for _, t in tris:
        img = frozenset(cls[v] for v in t)
        if img in seen:
            continue
        seen.add(img)
        kept.append(tuple(cls[v] for v in t))
    # a length-3k generator: icosahedron path v -> ... -> antipode(v)
    v0 = 0
    path_ico = _antipodal_path(faces, anti, v0)
    gen = []
    for a, b in zip(path_ico, path_ico[1:]):
        for t in range(k):
            kk = tuple(sorted(((a, k - t), (b, t)))) if t else ((a, k),)
            gen.append(cls[keys[tuple(x for x in kk if x[1] > 0)]])
    spec = FamilySpec("projective_quotient", (k,))
    return _finish(len(reps), kept, spec, generator_cycle=gen)


def _antipodal_path(faces, anti, v0):
    adj = {v: set() for v in range(12)}
    for f in faces:
        for a, b in itertools.combinations(f, 2):
            adj[a].add(b)
            adj[b].add(a)
    target = anti[v0]
    for a in sorted(adj[v0]):
        for b in sorted(adj[a]):
            if target in adj[b] and b != v0:
                return [v0, a, b, target]
    raise AssertionError("icosahedron antipodes are at distance 3")


# ------------------------------------------------------------------- grids
def torus_grid(p: int, q: int, s: int = 0) -> Generated:
    """p x q grid with diagonals; the seam j=q is glued to j=0 shifted by s."""
    if p < 3 or q < 3:
        raise TriangulationError("torus_grid needs p, q >= 3")

    def vid(i, j):
        if j == q:
            i, j = i + s, 0
        return (i % p) + p * j

    faces = []
    for j in range(q):
        for i in range(p):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)
            faces += [(a, b, c), (a, c, d)]
    spec = FamilySpec("torus_grid", (p, q, s))
    return _finish(p * q, faces, spec, meridian=[vid(i, 0) for i in range(p)])


def klein_grid(p: int, q: int) -> Generated:
    """p x q grid glued with a reflection: (i, q) is identified with (-i mod p, 0)."""
    if p < 3 or q < 3:
        raise TriangulationError("klein_grid needs p, q >= 3")

    def vid(i, j):
        if j == q:
            i, j = -i, 0
        return (i % p) + p * j

    faces = []
    for j in range(q):
        for i in range(p):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)
            faces += [(a, b, c), (a, c, d)]
    spec = FamilySpec("klein_grid", (p, q))
    return _finish(p * q, faces, spec, meridian=[vid(i, 0) for i in range(p)])


# --------------------------------------------------------------- cylinders
def cylinder_faces(w: int, ell: int, k: int):
    """Triangles of the (w, ell, k)-cylinder with z_{a,b} numbered b*w + a."""

    def z(a, b):
        return (a % w) + w * b

    tris = []
    for b in range(ell):
        for a in range(w):
            if a < k:
                tris += [(z(a, b), z(a + 1, b), z(a + 1, b + 1)), (z(a, b), z(a + 1, b + 1), z(a, b + 1))]
            else:
                tris += [(z(a, b), z(a + 1, b), z(a, b + 1)), (z(a + 1, b), z(a + 1, b + 1), z(a, b + 1))]
    rings = [[z(a, b) for a in range(w)] for b in range(ell + 1)]
    return tris, rings


def _check_cyl(w, ell, k):
    if w < 3 or ell < 1 or not 0 <= k < w:
        raise TriangulationError("cylinder needs w >= 3, ell >= 1 and 0 <= k < w")


def cylinder(w: int, ell: int, k: int = 0) -> Generated:
    _check_cyl(w, ell, k)
    tris, rings = cylinder_faces(w, ell, k)
    spec = FamilySpec("cylinder", (w, ell, k))
    return _finish(w * (ell + 1), tris, spec, marked=[tuple(rings[0]), tuple(rings[-1])],
                   rings=rings, boundary=[rings[0], rings[-1]])


def capped_cylinder(w: int, ell: int, k: int = 0) -> Generated:
    """Cylinder with an apex vertex coning off each boundary cycle (a sphere)."""
    _check_cyl(w, ell, k)
    tris, rings = cylinder_faces(w, ell, k)
    n = w * (ell + 1)
    apexes = [n, n + 1]
    for apex, ring in zip(apexes, (rings[0], rings[-1])):
        tris += [(apex, ring[a], ring[(a + 1) % w]) for a in range(w)]
    spec = FamilySpec("capped_cylinder", (w, ell, k))
    return _finish(n + 2, tris, spec, rings=rings, apexes=apexes, boundary=[rings[0], rings[-1]])


AXIAL_DIRS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def hex_norm(a: int, b: int) -> int:
    return max(abs(a), abs(b), abs(a + b))


def hex_ring(radius: int) -> list[tuple[int, int]]:
    """Lattice points at hex distance ``radius`` in counterclockwise order."""
    if radius == 0:
        return [(0, 0)]
    out = []
    a, b = AXIAL_DIRS[4][0] * radius, AXIAL_DIRS[4][1] * radius
    for d in range(6):
        da, db = AXIAL_DIRS[d]
        for _ in range(radius):
            out.append((a, b))
            a, b = a + da, b + db
    return out


def hexagon_disk(r: int) -> Generated:
    """Triangulated hexagon with 1 + sum_{i<r} 6i vertices (rings 0..r-1)."""
    if r < 2:
        raise TriangulationError("hexagon_disk needs r >= 2")
    radius = r - 1
    pts = [p for i in range(radius + 1) for p in hex_ring(i)]
    idx = {p: i for i, p in enumerate(pts)}
    tris = []
    for a, b in itertools.product(range(-radius - 1, radius + 1), repeat=2):
        for t in (((a, b), (a + 1, b), (a, b + 1)), ((a + 1, b), (a + 1, b + 1), (a, b + 1))):
            if all(p in idx for p in t):
                tris.append(tuple(idx[p] for p in t))
    outer = tuple(idx[p] for p in hex_ring(radius))
    spec = FamilySpec("hexagon_disk", (r,))
    return _finish(len(pts), tris, spec, marked=[outer], center=0, outer=list(outer), coords=pts)


_BUILDERS = {
    "tetrahedron": tetrahedron,
    "octahedron": octahedron,
    "icosahedron": icosahedron,
    "cylinder": cylinder,
    "capped_cylinder": capped_cylinder,
    "geodesic_sphere": geodesic_sphere,
    "projective_quotient": projective_quotient,
    "torus_grid": torus_grid,
    "klein_grid": klein_grid,
    "hexagon_disk": hexagon_disk,
}


def generate(spec: FamilySpec | str, *params: int) -> Generated:
    if isinstance(spec, str):
        spec = FamilySpec(spec, tuple(params))
    if spec.family not in _BUILDERS:
        raise TriangulationError(f"unknown family {spec.family!r}")
    try:
        return _BUILDERS[spec.family](*spec.params)
    except TypeError as exc:
        raise TriangulationError(f"bad parameters for {spec.family}: {exc}") from None
