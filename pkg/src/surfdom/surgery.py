"""Cutting a surface along a cycle, capping the holes, and undoing it.

Vertex ids in the cut graph before it is split into components ("global"
ids): a vertex ``v`` of the input keeps id ``v`` (for cycle vertices this is
the left copy), the right copy of the i-th cycle vertex is ``n + i`` and the
apexes follow at ``n + L`` (and ``n + L + 1`` when the cycle is two-sided).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .surface_map import (
    Triangulation,
    TriangulationError,
    Walk,
    classify_surface,
    components,
    euler_characteristic,
    induced_component,
    is_cycle,
    multi_source_distance,
    validate,
)

ONE_SIDED = "one_sided"
TWO_SIDED = "two_sided"


# ---------------------------------------------------------------- U-sets
@dataclass(frozen=True)
class USets:
    """Bookkeeping of vertices a dominating set must contain.

    ``U0`` holds the anchors (defect vertices, apexes), ``U0bar`` the
    remaining forced vertices, each within ``d_U`` of ``U0``.
    """

    U0: frozenset
    U0bar: frozenset = frozenset()
    d_U: int = 0

    @property
    def U(self) -> frozenset:
        return self.U0 | self.U0bar

    @classmethod
    def initial(cls, G: Triangulation) -> "USets":
        return cls(frozenset(int(v) for v in range(G.n) if G.degree(v) != 6))

    def check(self, G: Triangulation) -> list[str]:
        """Diagnostics for every violated condition (empty when valid)."""
        out = []
        if self.U0 & self.U0bar:
            out.append("U0 and U0bar intersect")
        if any(not 0 <= v < G.n for v in self.U):
            out.append("vertex id out of range")
            return out
        off = [v for v in range(G.n) if G.degree(v) != 6 and v not in self.U]
        if off:
            out.append(f"vertices of degree != 6 outside U: {off[:10]}")
        U = self.U
        seen: set[int] = set()
        for s in sorted(U):
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                comp.append(u)
                for v in G.rotations[u]:
                    if v in U and v not in seen:
                        seen.add(v)
                        stack.append(v)
            if not any(v in self.U0 for v in comp):
                out.append(f"component of G[U] without a U0 vertex: {sorted(comp)[:10]}")
        if self.U0bar:
            if not self.U0:
                out.append("U0bar nonempty but U0 empty")
            else:
                dist = multi_source_distance(G, self.U0)
                far = [v for v in self.U0bar if dist[v] < 0 or dist[v] > self.d_U]
                if far:
                    out.append(f"U0bar vertices farther than d_U={self.d_U}: {sorted(far)[:10]}")
        return out

    def to_json(self) -> dict:
        return {"U0": sorted(self.U0), "U0bar": sorted(self.U0bar), "d_U": self.d_U}

    @classmethod
    def from_json(cls, data: dict) -> "USets":
        return cls(frozenset(data["U0"]), frozenset(data.get("U0bar", ())), int(data.get("d_U", 0)))


# ------------------------------------------------------------ raw splitting
@dataclass(frozen=True, eq=False)
class Split:
    """Cut graph on global ids, before splitting into components."""

    graph: Triangulation
    sided: str
    left: tuple[int, ...]
    right: tuple[int, ...]
    apexes: tuple[int, ...]
    new_cycles: tuple[tuple[int, ...], ...]


def _cycle_vertices(G: Triangulation, C) -> tuple[int, ...]:
    W = C if isinstance(C, Walk) else Walk.cycle(C)
    if not is_cycle(G, W):
        raise TriangulationError("the given walk is not a cycle of the graph")
    return W.cyclic


def split_along(G: Triangulation, C) -> Split:
    """Cut along the cycle ``C`` and cap each hole with an apex vertex.

    No contractibility check; the result may be disconnected.
    """
    cyc = _cycle_vertices(G, C)
    n, L = G.n, len(cyc)
    on_c = {v: i for i, v in enumerate(cyc)}

    # gauge so that the path c0 c1 ... c_{L-1} has positive signatures
    flip = [1] * n
    for i in range(1, L):
        flip[cyc[i]] = flip[cyc[i - 1]] * G.sign(cyc[i - 1], cyc[i])
    rots, sgs = [], []
    for v in range(n):
        r = list(G.rotations[v])
        s = [flip[v] * flip[u] * x for u, x in zip(r, G.signs[v])]
        if flip[v] < 0:
            r.reverse()
            s.reverse()
        rots.append(r)
        sgs.append(s)
    sigma = sgs[cyc[-1]][rots[cyc[-1]].index(cyc[0])]
    one_sided = sigma < 0

    # which side of the cycle each non-cycle edge leaves from
    side: list[dict[int, str]] = []
    for i, v in enumerate(cyc):
        r, d = rots[v], len(rots[v])
        ip, iq = r.index(cyc[i - 1]), r.index(cyc[(i + 1) % L])
        sd = {}
        j = (iq + 1) % d
        while j != ip:
            sd[r[j]] = "L"
            j = (j + 1) % d
        j = (ip + 1) % d
        while j != iq:
            sd[r[j]] = "R"
            j = (j + 1) % d
        side.append(sd)

    def copy(i: int, s: str) -> int:
        i %= L
        return cyc[i] if s == "L" else n + i

    if one_sided:
        apexes = (n + L,)
        doubled = [copy(i, "L") for i in range(L)] + [copy(i, "R") for i in range(L)]
    else:
        apexes = (n + L, n + L + 1)
    total = n + L + len(apexes)
    new_rots: list[list[int]] = [[] for _ in range(total)]
    new_sgs: list[list[int]] = [[] for _ in range(total)]

    def image(u: int, x: int) -> int:
        """Vertex that ``u`` attaches to after cutting, seen from cycle vertex ``x``."""
        if u in on_c:
            return copy(on_c[u], side[on_c[u]][x])
        return u

    for v in range(n):
        if v in on_c:
            continue
        r2, s2 = [], []
        for u, s in zip(rots[v], sgs[v]):
            r2.append(copy(on_c[u], side[on_c[u]][v]) if u in on_c else u)
            s2.append(s)
        new_rots[v], new_sgs[v] = r2, s2

    for i, v in enumerate(cyc):
        sd = side[i]
        r, d = rots[v], len(rots[v])
        ip, iq = r.index(cyc[i - 1]), r.index(cyc[(i + 1) % L])
        sg = dict(zip(r, sgs[v]))
        Lnb = [r[(iq + 1 + t) % d] for t in range((ip - iq - 1) % d)]
        Rnb = [r[(ip + 1 + t) % d] for t in range((iq - ip - 1) % d)]
        if one_sided:
            k = i
            nxt_L = copy(i + 1, "L") if i < L - 1 else copy(0, "R")
            prv_L = copy(i - 1, "L") if i > 0 else copy(L - 1, "R")
            nxt_R = copy(i + 1, "R") if i < L - 1 else copy(0, "L")
            prv_R = copy(i - 1, "R") if i > 0 else copy(L - 1, "L")
            cross_next = -1 if i == L - 1 else 1
            cross_prev = -1 if i == 0 else 1
            a = apexes[0]
            lv, rv = copy(k, "L"), copy(k, "R")
            new_rots[lv] = [nxt_L] + [image(u, v) for u in Lnb] + [prv_L, a]
            new_sgs[lv] = [cross_next] + [sg[u] for u in Lnb] + [cross_prev, 1]
            new_rots[rv] = [prv_R] + [image(u, v) for u in Rnb] + [nxt_R, a]
            new_sgs[rv] = [cross_prev] + [sg[u] for u in Rnb] + [cross_next, -1]
        else:
            lv, rv = copy(i, "L"), copy(i, "R")
            new_rots[lv] = [copy((i + 1) % L, "L")] + [image(u, v) for u in Lnb] + [copy(i - 1, "L"), apexes[0]]
            new_sgs[lv] = [1] + [sg[u] for u in Lnb] + [1, 1]
            new_rots[rv] = [copy(i - 1, "R")] + [image(u, v) for u in Rnb] + [copy((i + 1) % L, "R"), apexes[1]]
            new_sgs[rv] = [1] + [sg[u] for u in Rnb] + [1, 1]

    if one_sided:
        new_rots[apexes[0]] = list(reversed(doubled))
        new_sgs[apexes[0]] = [1 if u < n else -1 for u in reversed(doubled)]
        cycles = (tuple(doubled),)
    else:
        left = [copy(i, "L") for i in range(L)]
        right = [copy(i, "R") for i in range(L)]
        new_rots[apexes[0]] = list(reversed(left))
        new_sgs[apexes[0]] = [1] * L
        new_rots[apexes[1]] = right
        new_sgs[apexes[1]] = [1] * L
        cycles = (tuple(left), tuple(right))

    H = Triangulation.from_rotations(new_rots, new_sgs)
    diags = validate(H)
    if diags:
        raise TriangulationError("cut produced an invalid map: " + "; ".join(diags[:3]))
    return Split(H, ONE_SIDED if one_sided else TWO_SIDED, tuple(cyc),
                 tuple(range(n, n + L)), apexes, cycles)


# ------------------------------------------------------------ full record
@dataclass(frozen=True, eq=False)
class SurgeryRecord:
    """One cut-along-cycle event with everything needed to undo it."""

    source: Triangulation
    cycle: Walk
    sided: str
    case: int
    components: tuple[Triangulation, ...]
    new_cycles: tuple[tuple[int, tuple[int, ...]], ...]  # (component, local ids)
    apexes: tuple[tuple[int, int], ...]  # (component, local id)
    locate: dict = field(repr=False)  # global id -> (component, local id)
    origin: tuple[tuple[int, ...], ...] = field(repr=False)  # per component: local -> global
    copies: dict = field(repr=False)  # cycle vertex -> list of (component, local id)

    @property
    def separating(self) -> bool:
        return len(self.components) == 2

    def vertex_counts(self) -> tuple[int, int]:
        return self.source.n, sum(H.n for H in self.components)

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "sided": self.sided,
            "separating": self.separating,
            "cycle": list(self.cycle.cyclic),
            "components": [H.n for H in self.components],
            "new_cycles": [[c, list(vs)] for c, vs in self.new_cycles],
            "apexes": [list(a) for a in self.apexes],
            "copies": {str(v): [list(x) for x in cs] for v, cs in self.copies.items()},
            "V": [self.source.n, [H.n for H in self.components]],
            "E": [self.source.edge_count, [H.edge_count for H in self.components]],
            "F": [len(self.source.faces), [len(H.faces) for H in self.components]],
        }


def _table_case(orientable: bool, sided: str, outs: list[tuple[bool, int]]) -> int:
    if orientable:
        return 1 if len(outs) == 1 else 2
    if sided == ONE_SIDED:
        return 4 if outs[0][0] else 3
    if len(outs) == 1:
        return 6 if outs[0][0] else 5
    return 8 if any(o for o, _ in outs) else 7


def cut_along_cycle(G: Triangulation, C, allow_contractible: bool = False) -> SurgeryRecord:
    """Cut a connected surface along a non-contractible cycle and cap the holes."""
    sp = split_along(G, C)
    comps = components(sp.graph)
    parts, origin, locate = [], [], {}
    for ci, verts in enumerate(comps):
        H, new = induced_component(sp.graph, verts)
        parts.append(H.normalized())
        origin.append(tuple(verts))
        for g, l in new.items():
            locate[g] = (ci, l)
    outs = [classify_surface(H) for H in parts]
    if not allow_contractible and sp.sided == TWO_SIDED and len(parts) == 2:
        if any(o and g == 0 for o, g in outs):
            raise TriangulationError("contractible cycle: one side is a disk")
    orientable, _ = classify_surface(G)
    cyc = sp.left
    copies = {v: [locate[v]] + ([locate[G.n + i]]) for i, v in enumerate(cyc)}
    return SurgeryRecord(
        source=G,
        cycle=Walk.cycle(cyc),
        sided=sp.sided,
        case=_table_case(orientable, sp.sided, outs),
        components=tuple(parts),
        new_cycles=tuple((locate[c[0]][0], tuple(locate[v][1] for v in c)) for c in sp.new_cycles),
        apexes=tuple(locate[a] for a in sp.apexes),
        locate=locate,
        origin=tuple(origin),
        copies=copies,
    )


def count_identities(rec: SurgeryRecord) -> dict[str, bool]:
    """Vertex/edge/face/Euler bookkeeping of a cut, each as pass/fail."""
    G, L = rec.source, len(rec.cycle)
    V = sum(H.n for H in rec.components)
    E = sum(H.edge_count for H in rec.components)
    F = sum(len(H.faces) for H in rec.components)
    chi = sum(euler_characteristic(H) for H in rec.components)
    if rec.sided == ONE_SIDED:
        return {
            "V": V == G.n + L + 1,
            "E": E == G.edge_count + 3 * L,
            "F": F == len(G.faces) + 2 * L,
            "chi": chi == euler_characteristic(G) + 1,
            "new_cycle_length": len(rec.new_cycles) == 1 and len(rec.new_cycles[0][1]) == 2 * L,
        }
    return {
        "V": V == G.n + L + 2,
        "E": E == G.edge_count + 3 * L,
        "F": F == len(G.faces) + 2 * L,
        "chi": chi == euler_characteristic(G) + 2,
        "new_cycle_length": len(rec.new_cycles) == 2 and all(len(c) == L for _, c in rec.new_cycles),
    }


# ------------------------------------------------------------ bookkeeping
def update_usets(us: USets, rec: SurgeryRecord) -> list[USets]:
    """Forced-vertex sets for each output component after a cut."""
    G = rec.source
    problems = us.check(G)
    if problems:
        raise TriangulationError("input U-sets invalid: " + "; ".join(problems))
    cyc = set(rec.cycle.cyclic)
    ring_globals = [rec.origin[c][l] for c, vs in rec.new_cycles for l in vs]
    apex_globals = [rec.origin[c][l] for c, l in rec.apexes]
    U0 = (set(us.U0) - cyc) | set(apex_globals)
    U0bar = (set(us.U0bar) - cyc) | set(ring_globals)
    out = []
    for ci in range(len(rec.components)):
        loc = {g: l for l, g in enumerate(rec.origin[ci])}
        out.append(USets(
            frozenset(loc[g] for g in U0 if g in loc),
            frozenset(loc[g] for g in U0bar if g in loc),
            us.d_U + 1,
        ))
    return out


def pullback_dominating_set(rec: SurgeryRecord, parts: Sequence[Iterable[int]]) -> set[int]:
    """Map dominating sets of the cut components back to the input graph.

    ``parts[i]`` is a set of local ids of component ``i``; it must contain the
    new cycle copies and the apexes.
    """
    if len(parts) != len(rec.components):
        raise TriangulationError("one vertex set per component is required")
    parts = [set(p) for p in parts]
    need = [(c, l) for c, vs in rec.new_cycles for l in vs] + list(rec.apexes)
    missing = [(c, l) for c, l in need if l not in parts[c]]
    if missing:
        raise TriangulationError(f"dominating set misses new cycle or apex vertices {missing[:6]}")
    n = rec.source.n
    D = set(rec.cycle.cyclic)
    for ci, p in enumerate(parts):
        for l in p:
            g = rec.origin[ci][l]
            if g < n:
                D.add(g)
    return D


# ------------------------------------------------------------ identification
@dataclass(frozen=True, eq=False)
class Identification:
    graph: Triangulation
    new_of_old: dict  # surviving old id -> new id; removed ring vertices map to their partners
    diagnostics: tuple[str, ...]


def _hole_arc(G: Triangulation, v: int, a: int, b: int) -> list[int]:
    """Rotation at ``v`` read forward from the far side of the hole between ``a`` and ``b``."""
    r, d = G.rotations[v], G.degree(v)
    ia, ib = G.position(v, a), G.position(v, b)
    if (ia + 1) % d == ib:
        return [r[(ib + t) % d] for t in range(d)]
    if (ib + 1) % d == ia:
        return [r[(ia + t) % d] for t in range(d)]
    raise TriangulationError(f"ring neighbours {a},{b} of {v} are not consecutive")


def identify_boundary_pair(G: Triangulation, C1: Sequence[int], C2: Sequence[int],
                           correspondence: Sequence[tuple[int, int]] | None = None) -> Identification:
    """Glue the hole bounded by ``C1`` onto the hole bounded by ``C2``.

    ``C1[i]`` is glued to ``C2[i]`` unless an explicit list of pairs is given.
    The two boundary cycles must be marked faces of ``G``; the result drops
    the ``C2`` vertices.  Loops and parallel edges are rejected.
    """
    C1, C2 = list(C1), list(C2)
    if correspondence is not None:
        m = dict(correspondence)
        C2 = [m[v] for v in C1]
    w = len(C1)
    if w != len(C2) or w < 3:
        raise TriangulationError("boundary cycles must have the same length >= 3")
    if not (G.is_marked(C1) and G.is_marked(C2)):
        raise TriangulationError("boundary cycles must be marked faces")
    if set(C1) & set(C2):
        raise TriangulationError("boundary cycles share a vertex")
    to1 = dict(zip(C2, C1))
    ring1 = set(C1)

    def merged(u: int) -> int:
        return to1.get(u, u)

    rots: dict[int, list[int]] = {}
    for i in range(w):
        v1, v2 = C1[i], C2[i]
        arc1 = _hole_arc(G, v1, C1[i - 1], C1[(i + 1) % w])
        arc2 = [merged(u) for u in _hole_arc(G, v2, C2[i - 1], C2[(i + 1) % w])]
        # both arcs run forward; glued holes have opposite orientations, so arc2 ends where arc1 starts
        if arc2[0] == arc1[-1] and arc2[-1] == arc1[0]:
            rot = arc1 + arc2[1:-1]
        elif arc2[0] == arc1[0] and arc2[-1] == arc1[-1]:
            raise TriangulationError("boundary orientations do not match")
        else:
            raise TriangulationError("correspondence does not respect the cycles")
        if v1 in arc2 or len(set(rot)) != len(rot):
            raise TriangulationError(f"identification at {v1} creates a loop or parallel edge")
        rots[v1] = rot
    for v in range(G.n):
        if v in ring1 or v in to1:
            continue
        r = [merged(u) for u in G.rotations[v]]
        if len(set(r)) != len(r):
            raise TriangulationError(f"identification creates a parallel edge at {v}")
        rots[v] = r
    keep = [v for v in range(G.n) if v not in to1]
    new = {v: i for i, v in enumerate(keep)}
    for v2, v1 in to1.items():
        new[v2] = new[v1]
    marked = [tuple(f) for f in G.marked
              if not (G.is_marked(C1) and set(f) == set(C1)) and set(f) != set(C2)]
    H = Triangulation.from_rotations(
        [[new[u] for u in rots[v]] for v in keep],
        None,
        [tuple(new[u] for u in f) for f in marked],
    )
    diags = validate(H)
    if diags:
        raise TriangulationError("identification produced an invalid map: " + "; ".join(diags[:3]))
    notes = tuple(f"identified vertex {new[v]} has degree {H.degree(new[v])}"
                  for v in C1 if H.degree(new[v]) != 6)
    return Identification(H, new, notes)
