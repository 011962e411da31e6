"""Dominating sets of sphere triangulations that contain a prescribed set ``U``.

Small spheres are solved exactly.  Otherwise the longest plain segment
``P0`` of a Steiner tree for ``U0`` decides the route: a short ``P0`` means
the lattice pullback on the tree-cut disk, a long one means there is a long
degree-6 cylinder around the middle of ``P0``, which is dominated by a
periodic pattern, cut out, and the two ends glued before recursing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..domination import exact_min_dominating_set, greedy_dominating_set, is_dominating
from ..surface_map import Triangulation, TriangulationError, bfs_layers, classify_surface
from ..surgery import USets, identify_boundary_pair
from .cylinder import CylinderHandle, extract_cylinder
from .disk import grid_pullback
from .patterns import cylinder_pattern
from .steiner import SteinerTree, steiner_tree
from .walks import hexagon_radius

SMALL_EXACT = 48


@dataclass
class DominationReport:
    D: frozenset
    branch: str  # exact / grid-map / case1-grid / case2-cylinder-small-w / case2-cylinder-large-w / fallback
    n: int
    U0: int
    U0bar: int
    d_U: int
    sizes: dict = field(default_factory=dict)  # |V(T)|, |V(T0)|, |P0|, r, w, l, k, |S_Z|
    bounds: dict = field(default_factory=dict)  # name -> (value, holds) or (value, None) when not asserted
    overlap: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    child: "DominationReport | None" = None

    @property
    def size(self) -> int:
        return len(self.D)

    def to_json(self) -> dict:
        return {
            "D": sorted(self.D), "size": self.size, "branch": self.branch, "n": self.n,
            "U0": self.U0, "U0bar": self.U0bar, "d_U": self.d_U,
            "sizes": self.sizes,
            "bounds": {k: list(v) for k, v in self.bounds.items()},
            "overlap": self.overlap, "notes": self.notes,
            "child": self.child.to_json() if self.child else None,
        }

    def branches(self) -> list[str]:
        out, r = [], self
        while r is not None:
            out.append(r.branch)
            r = r.child
        return out


# ------------------------------------------------------------ tree paths
def special_segments(T0: SteinerTree, U0) -> list[list[int]]:
    """Maximal paths of ``T0`` whose interior avoids ``U0' = U0 + {deg_T0 != 2}``."""
    adj: dict[int, list[int]] = {v: [] for v in T0.vertices}
    for u, v in T0.edges:
        adj[u].append(v)
        adj[v].append(u)
    special = set(U0) | {v for v, nb in adj.items() if len(nb) != 2}
    segs = []
    for s in sorted(special):
        for first in sorted(adj[s]):
            path = [s, first]
            while path[-1] not in special:
                nxt = [u for u in adj[path[-1]] if u != path[-2]]
                path.append(nxt[0])
            if path[0] < path[-1] or (path[0] == path[-1] and path[1] < path[-2]):
                segs.append(path)
    return segs


def longest_segment(T0: SteinerTree, U0) -> list[int]:
    segs = special_segments(T0, U0)
    if not segs:
        return [min(T0.vertices)]
    return max(segs, key=lambda p: (len(p), [-v for v in p]))


def case_two(n: int, p0: int, d_U: int) -> bool:
    """``|P0| >= 2 sqrt(3n) + 2 d_U + 9`` in integers."""
    lhs = p0 - 2 * d_U - 9
    return lhs >= 0 and lhs * lhs >= 12 * n


def sphere_size_check(n: int, size: int, U0: int, U0bar: int, d_U: int) -> tuple[float, bool | None]:
    """Value of the per-sphere size bound and, when it is at most ``n``, whether ``size`` meets it.

    The comparison ``6|D| <= n + 18(U0-1)(2 sqrt(3n) + 2 d_U + 9) + 9 U0bar + 2``
    is done on integers by isolating the root term.
    """
    value = n / 6 + 3 * (U0 - 1) * (2 * (3 * n) ** 0.5 + 2 * d_U + 9) + 1.5 * U0bar + 1 / 3
    if value > n:
        return value, None
    rest = 6 * size - n - 18 * (U0 - 1) * (2 * d_U + 9) - 9 * U0bar - 2
    c = 36 * (U0 - 1)
    holds = rest <= 0 or (c > 0 and rest * rest <= c * c * 3 * n)
    return value, holds


def layer_property(G: Triangulation, x: int, p0: int, us: USets) -> bool:
    """No vertex of ``U`` lies at distance ``i < floor(|P0|/2) - d_U`` from ``x``."""
    dist = bfs_layers(G, x)
    lim = p0 // 2 - us.d_U
    return all(not (0 <= dist[u] < lim) for u in us.U)


# ------------------------------------------------------------ case 2 surgery
def _cut_and_glue(G: Triangulation, cyl: CylinderHandle):
    """Delete the cylinder interior and glue its two boundary cycles together."""
    inner = cyl.interior
    keep = [v for v in range(G.n) if v not in inner]
    new = {v: i for i, v in enumerate(keep)}
    rots = [[new[u] for u in G.rotations[v] if u not in inner] for v in keep]
    C1 = [new[v] for v in cyl.rings[0]]
    C2 = [new[v] for v in cyl.rings[-1]]
    Gm = Triangulation.from_rotations(rots, None, [tuple(C1), tuple(C2)])
    ident = identify_boundary_pair(Gm, C1, C2)
    to_star = {v: ident.new_of_old[new[v]] for v in keep}
    return ident, to_star


def _glued_usets(us: USets, to_star: dict) -> USets:
    U0 = frozenset(to_star[v] for v in us.U0)
    U0bar = frozenset(to_star[v] for v in us.U0bar) - U0
    return USets(U0, U0bar, us.d_U)


# ------------------------------------------------------------ driver
def dominate_sphere(G: Triangulation, us: USets | None = None, small_exact: int = SMALL_EXACT) -> DominationReport:
    """A dominating set of the sphere triangulation ``G`` containing ``us.U``."""
    if classify_surface(G) != (True, 0):
        raise TriangulationError("dominate_sphere needs a sphere triangulation")
    us = USets.initial(G) if us is None else us
    problems = us.check(G)
    if problems:
        raise TriangulationError("invalid U-sets: " + "; ".join(problems))
    rep = DominationReport(frozenset(), "", G.n, len(us.U0), len(us.U0bar), us.d_U)
    try:
        _construct(G, us, rep, small_exact)
    except (TriangulationError, AssertionError) as exc:
        rep.branch, rep.child = "fallback", None
        rep.notes.append(f"fallback: {exc}")
        rep.D = frozenset(greedy_dominating_set(G, us.U))
        rep.bounds = {k: (v[0], None) for k, v in rep.bounds.items()}
    if not us.U <= rep.D or not is_dominating(G, rep.D):
        rep.notes.append("constructed set failed verification; replaced by greedy")
        rep.branch, rep.child = "fallback", None
        rep.D = frozenset(greedy_dominating_set(G, us.U))
    if rep.branch != "fallback" and rep.branch != "exact":
        rep.bounds["sphere_size"] = sphere_size_check(G.n, rep.size, len(us.U0), len(us.U0bar), us.d_U)
    return rep


def _construct(G: Triangulation, us: USets, rep: DominationReport, small_exact: int) -> None:
    n = G.n
    if n <= small_exact:
        res = exact_min_dominating_set(G, us.U)
        rep.branch = "exact"
        rep.D = res.D
        if not res.optimal:
            rep.notes.append("exact search hit its budget; best set found is used")
        return
    T0 = steiner_tree(G, us.U0)
    rep.sizes["V(T0)"] = T0.size
    rep.sizes["steiner_exact"] = T0.exact
    P0 = longest_segment(T0, us.U0) if len(us.U0) > 1 else [min(us.U0)]
    p0 = len(P0) - 1
    rep.sizes["P0"] = p0
    if len(us.U0) > 1:
        rep.bounds["steiner_segments"] = ((2 * len(us.U0) - 3) * p0 + 1, T0.size <= (2 * len(us.U0) - 3) * p0 + 1)
    if len(us.U0) <= 1 or not case_two(n, p0, us.d_U):
        gp = grid_pullback(G, us, T0)
        rep.branch = "grid-map" if len(us.U0) <= 1 else "case1-grid"
        rep.D = gp.D
        vt = len(gp.tree_vertices)
        rep.sizes["V(T)"] = vt
        rep.sizes["copies"] = gp.disk.copy_count
        rep.bounds["grid_general"] = ((n + 9 * vt - 7) / 6, 6 * gp.size <= n + 9 * vt - 7)
        rep.bounds["grid_overlap"] = (gp.bound_general_num() / 6, 6 * gp.size <= gp.bound_general_num())
        flat = G.max_degree <= 6 and not us.U0bar and set(us.U0) == {v for v in range(n) if G.degree(v) != 6}
        rep.bounds["grid_flat"] = (gp.bound_flat_num() / 7, 7 * gp.size <= gp.bound_flat_num() if flat else None)
        s = gp.stats
        rep.overlap = {"t_prime": s.t_prime, "star_edges": s.star_edges,
                       "outerplanar_bound_holds": s.outerplanar_bound_holds,
                       "shared_low_degree": s.shared_low_degree, "phase": gp.phase}
        return
    # Case 2: long plain segment, so a long cylinder sits around its middle
    x = P0[p0 // 2]
    rep.sizes["x"] = x
    rep.notes.append(f"layer property: {layer_property(G, x, p0, us)}")
    r = hexagon_radius(G, x)
    cyl = extract_cylinder(G, x, r, us)
    w, ell, k = cyl.w, cyl.ell, cyl.k
    rep.sizes.update(r=r, w=w, l=ell, k=k)
    if w < 3:
        raise TriangulationError("cylinder width below 3")
    pat = cylinder_pattern(w, ell, k)
    SZ = {cyl.vertex(a, b) for a, b in pat.members}
    rep.sizes["S_Z"] = len(SZ)
    if w >= 13:
        rep.branch = "case2-cylinder-large-w"
        rep.bounds["pattern_lattice"] = (pat.lattice_bound(), pat.size <= pat.lattice_bound())
        rep.bounds["pattern_relaxed"] = (pat.relaxed_lattice_bound(), pat.size <= pat.relaxed_lattice_bound())
    else:
        rep.branch = "case2-cylinder-small-w"
        rep.bounds["pattern_tile"] = (w * (ell + 1) / 6 + 12, pat.tile_bound_holds())
    ident, to_star = _cut_and_glue(G, cyl)
    Gs = ident.graph
    if ident.diagnostics:
        rep.notes.extend(ident.diagnostics)
    us_star = _glued_usets(us, to_star)
    child = dominate_sphere(Gs, us_star)
    rep.child = child
    ring_star = {to_star[v] for v in cyl.rings[0]}
    back = {}
    for v, s in to_star.items():
        back.setdefault(s, v)
    D = {back[s] for s in child.D if s not in ring_star}
    D |= SZ | set(cyl.rings[0]) | set(cyl.rings[-1])
    rep.D = frozenset(D)
