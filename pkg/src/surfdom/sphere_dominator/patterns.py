"""Dominating patterns for the interior of a (w, l, k)-cylinder.

Coordinates follow ``generators.cylinder_faces``: ``(a, b)`` is the vertex
in row ``a`` (position around the cycle, mod ``w``) on ring ``b`` with
``0 <= b <= l``; its vertex id is ``b * w + a``.  Interior vertices are the
rings ``1 .. l-1``.

Widths up to 12 use a tile that is periodic along the cylinder; the tiles
are frozen below and guarded by :func:`tile_dominates`.  Wider cylinders
unroll a period-7 tile built from a perfect code of the triangular lattice
with its seam repaired greedily, then prune and locally improve the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import ceil

import numpy as np

from ..surface_map import TriangulationError

# (w, k) -> (|S|, m) rows that the width-5/7/11 tiles must reproduce
TILE_ROWS = {
    (5, 0): (4, 5), (5, 1): (5, 7), (5, 2): (5, 6),
    (7, 0): (7, 7), (7, 1): (8, 7), (7, 2): (8, 7), (7, 3): (8, 7),
    (11, 0): (12, 7), (11, 1): (12, 7), (11, 2): (9, 5), (11, 3): (12, 7),
    (11, 4): (12, 7), (11, 5): (12, 7),
}

# Tiles for the width-5/7/11 rows: minimum dominating sets of the quotient
# Z_w x Z_m.  (11, 5) has an 11-vertex minimum; (10, 3) is added to reach 12.
_QUOTIENT_TILES = {
    (5, 0): (5, ((0, 0), (1, 2), (3, 2), (3, 4))),
    (5, 1): (7, ((0, 0), (1, 5), (2, 2), (3, 6), (4, 3))),
    (5, 2): (6, ((0, 0), (1, 3), (2, 0), (3, 2), (4, 4))),
    (7, 0): (7, ((0, 0), (1, 2), (2, 4), (3, 6), (4, 1), (5, 3), (6, 5))),
    (7, 1): (7, ((0, 0), (0, 5), (1, 3), (2, 0), (3, 4), (4, 1), (5, 3), (5, 5))),
    (7, 2): (7, ((0, 0), (0, 5), (1, 3), (2, 1), (3, 5), (4, 2), (5, 6), (6, 3))),
    (7, 3): (7, ((0, 0), (0, 3), (1, 5), (2, 3), (3, 1), (4, 5), (5, 2), (5, 6))),
    (11, 0): (7, ((0, 0), (0, 5), (1, 2), (2, 6), (3, 3), (4, 0), (5, 4), (6, 1), (7, 5),
                  (8, 2), (9, 6), (10, 3))),
    (11, 1): (7, ((0, 0), (0, 3), (1, 5), (2, 2), (3, 6), (4, 3), (5, 0), (6, 4), (7, 1),
                  (8, 5), (9, 2), (9, 6))),
    (11, 2): (5, ((0, 0), (1, 3), (3, 0), (3, 2), (5, 2), (6, 4), (8, 0), (8, 2), (10, 3))),
    (11, 3): (7, ((0, 0), (0, 3), (1, 6), (2, 2), (3, 5), (4, 0), (5, 2), (6, 4), (7, 6),
                  (8, 1), (9, 3), (9, 6))),
    (11, 4): (7, ((0, 0), (1, 3), (2, 6), (3, 2), (4, 5), (5, 0), (6, 2), (7, 4), (8, 6),
                  (9, 1), (9, 3), (10, 5))),
    (11, 5): (7, ((0, 0), (0, 1), (1, 5), (2, 3), (3, 1), (4, 6), (5, 4), (6, 1), (7, 5),
                  (8, 2), (9, 6), (10, 3))),
}

# Even widths: one vertex on every even row, period 3, offsets found by
# exhaustive search over the 3^(w/2) choices.
_EVEN_OFFSETS = {
    (4, 0): (0, 0), (4, 1): (0, 2), (4, 2): (0, 0),
    (8, 0): (0, 0, 0, 0), (8, 1): (0, 1, 1, 2), (8, 2): (0, 0, 0, 0), (8, 3): (0, 0, 1, 2),
    (8, 4): (0, 0, 0, 0),
    (10, 0): (0, 0, 0, 0, 0), (10, 1): (0, 1, 1, 1, 2), (10, 2): (0, 0, 0, 0, 0),
    (10, 3): (0, 0, 1, 1, 2), (10, 4): (0, 0, 0, 0, 0), (10, 5): (0, 0, 0, 1, 2),
}


def small_tile(w: int, k: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Frozen period-``m`` tile ``(m, S)`` for ``3 <= w <= 12``."""
    if (w, k) in _QUOTIENT_TILES:
        return _QUOTIENT_TILES[w, k]
    if w % 3 == 0:
        # every third row on alternate rings
        return 2, tuple((a, 0) for a in range(w) if a % 3 == 1)
    if (w, k) in _EVEN_OFFSETS:
        return 3, tuple((2 * i, o) for i, o in enumerate(_EVEN_OFFSETS[w, k]))
    raise TriangulationError(f"no tile for w={w}, k={k}")


# ------------------------------------------------------------- adjacency
def cyl_neighbors(w: int, k: int, a: int, b: int) -> list[tuple[int, int]]:
    """Closed neighbourhood of ``(a, b)`` on the unbounded (w, *, k)-cylinder."""
    a1, am = (a + 1) % w, (a - 1) % w
    return [(a, b), (a, b - 1), (a, b + 1), (a1, b), (am, b),
            (a1, b + 1) if a < k else (a1, b - 1),
            (am, b - 1) if am < k else (am, b + 1)]


def _shift_b(M: np.ndarray, d: int) -> np.ndarray:
    """``out[:, b] = M[:, b + d]`` with zeros past the ends."""
    out = np.zeros_like(M)
    if d > 0:
        out[:, :-d] = M[:, d:]
    elif d < 0:
        out[:, -d:] = M[:, :d]
    else:
        out[:] = M
    return out


def dominated_grid(w: int, ell: int, k: int, members) -> np.ndarray:
    """Boolean ``w x (l+1)`` grid of vertices with a member in their closed neighbourhood."""
    M = np.zeros((w, ell + 1), dtype=bool)
    for a, b in members:
        M[a, b] = True
    dom = M | _shift_b(M, -1) | _shift_b(M, 1)
    up = np.roll(M, -1, axis=0)  # up[a] = M[a + 1]
    down = np.roll(M, 1, axis=0)  # down[a] = M[a - 1]
    dom |= up | down
    rows = np.arange(w)[:, None]
    dom |= np.where(rows < k, _shift_b(up, 1), _shift_b(up, -1))
    am = (np.arange(w) - 1) % w
    dom |= np.where(am[:, None] < k, _shift_b(down, -1), _shift_b(down, 1))
    return dom


def interior_undominated(w: int, ell: int, k: int, members) -> list[tuple[int, int]]:
    dom = dominated_grid(w, ell, k, members)
    bad = np.argwhere(~dom[:, 1:ell])
    return [(int(a), int(b) + 1) for a, b in bad]


def tile_dominates(w: int, k: int, m: int, tile) -> bool:
    """Periodic check on the quotient ``Z_w x Z_m``; implies interior domination for all l."""
    S = {(a, b % m) for a, b in tile}
    return all(any((x, y % m) in S for x, y in cyl_neighbors(w, k, a, b))
               for a in range(w) for b in range(m))


# ------------------------------------------------------------ wide tiles
def _code_member(code: int, k: int, a: int, b: int, phase: int) -> bool:
    y = b - min(a, k)  # lattice coordinates (a, y)
    r = 2 * a - y if code == 0 else a - 2 * y
    return (r - phase) % 7 == 0


@lru_cache(maxsize=None)
def wide_tiles(w: int, k: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Period-7 tiles: each perfect code and phase, seam repaired greedily, then pruned.

    Only tiles within one of the smallest are kept.
    """
    P = 7
    verts = [(a, b) for a in range(w) for b in range(P)]
    nb = {v: [(x, y % P) for x, y in cyl_neighbors(w, k, *v)] for v in verts}
    out = []
    for code in (0, 1):
        for phase in range(7):
            T = {v for v in verts if _code_member(code, k, *v, phase)}
            cnt = dict.fromkeys(verts, 0)
            for t in T:
                for u in nb[t]:
                    cnt[u] += 1
            while True:
                und = {v for v in verts if cnt[v] == 0}
                if not und:
                    break
                pick = max(verts, key=lambda x: (sum(u in und for u in nb[x]), -x[0], -x[1]))
                T.add(pick)
                for u in nb[pick]:
                    cnt[u] += 1
            for t in sorted(T, reverse=True):
                if all(cnt[u] > 1 for u in nb[t]):
                    T.discard(t)
                    for u in nb[t]:
                        cnt[u] -= 1
            out.append(tuple(sorted(T)))
    best = min(map(len, out))
    return tuple(sorted(set(t for t in out if len(t) <= best + 1), key=lambda t: (len(t), t)))


def _unroll(tile, ell: int, offset: int, m: int = 7) -> set[tuple[int, int]]:
    return {(a, b) for a, r in tile for b in range((r - offset) % m, ell + 1, m)}


def _unroll_size(tile, ell: int, offset: int, m: int = 7) -> int:
    return sum((ell - (r - offset) % m) // m + 1 for _, r in tile if (r - offset) % m <= ell)


class _Grid:
    """Interior cover counts with add/remove, for pruning and swaps."""

    def __init__(self, w: int, ell: int, k: int):
        self.w, self.ell, self.k = w, ell, k
        self.nb = {}
        self.inner = {}
        for a in range(w):
            for b in range(ell + 1):
                ns = [p for p in cyl_neighbors(w, k, a, b) if 0 <= p[1] <= ell]
                self.nb[a, b] = ns
                self.inner[a, b] = [p for p in ns if 1 <= p[1] <= ell - 1]

    def improve(self, S) -> set[tuple[int, int]]:
        """Drop redundant members, then trade pairs for single vertices until stuck."""
        S = set(S)
        inner, ell = self.inner, self.ell
        cnt = {(a, b): 0 for a in range(self.w) for b in range(1, ell)}
        for s in S:
            for u in inner[s]:
                cnt[u] += 1

        def rem(x):
            S.discard(x)
            for u in inner[x]:
                cnt[u] -= 1

        def add(x):
            S.add(x)
            for u in inner[x]:
                cnt[u] += 1

        def prune():
            for s in sorted(S, key=lambda p: (0 < p[1] < ell, p)):
                if all(cnt[u] > 1 for u in inner[s]):
                    rem(s)

        prune()
        changed = True
        while changed:
            changed = False
            for x in sorted(S):
                if x not in S:
                    continue
                near = {y for u in self.nb[x] for v in self.nb[u] for y in self.nb[v]
                        if y in S and y != x}
                for q in sorted(near):
                    need = {u for u in inner[x] if cnt[u] == 1}
                    need |= {u for u in inner[q] if cnt[u] == 1}
                    need |= {u for u in inner[x] if cnt[u] == 2 and u in inner[q]}
                    if not need:
                        continue
                    need = sorted(need)
                    cands = set(self.nb[need[0]])
                    for u in need[1:]:
                        cands &= set(self.nb[u])
                    cands -= {x, q}
                    if cands:
                        rem(x)
                        rem(q)
                        add(min(cands))
                        prune()
                        changed = True
                        break
                if changed:
                    break
        return S

    def repair(self, S) -> set[tuple[int, int]]:
        """Greedily add vertices until the interior is dominated."""
        S = set(S)
        und = set(interior_undominated(self.w, self.ell, self.k, S))
        while und:
            pick = max(sorted(self.nb), key=lambda x: sum(u in und for u in self.nb[x]))
            S.add(pick)
            und -= set(self.nb[pick])
        return S


# ----------------------------------------------------------------- API
@dataclass(frozen=True)
class CylinderPattern:
    w: int
    ell: int
    k: int
    members: frozenset  # (a, b) pairs
    method: str  # "tile" or "lattice"
    tile: tuple | None = None  # (m, S) for tiled patterns

    @property
    def size(self) -> int:
        return len(self.members)

    def ids(self) -> list[int]:
        return sorted(b * self.w + a for a, b in self.members)

    def lattice_bound(self) -> int:
        return ceil(self.ell / 7) * (self.w + 2)

    def relaxed_lattice_bound(self) -> int:
        return ceil((self.ell + 1) / 7) * (self.w + 2)

    def tile_bound_holds(self) -> bool:
        """``|S_Z| <= w(l+1)/6 + 12``, compared on integers."""
        return 6 * self.size <= self.w * (self.ell + 1) + 72


def _check_params(w: int, ell: int, k: int) -> None:
    if w < 3 or ell < 1 or not 0 <= k <= w // 2:
        raise TriangulationError(f"cylinder pattern needs w >= 3, l >= 1, 0 <= k <= w/2 (got {w}, {ell}, {k})")


def cylinder_pattern(w: int, ell: int, k: int = 0) -> CylinderPattern:
    """A set of cylinder vertices dominating every interior vertex."""
    _check_params(w, ell, k)
    if w <= 12:
        m, tile = small_tile(w, k)
        S = frozenset((a, b) for a, r in tile for b in range(r % m, ell + 1, m))
        return CylinderPattern(w, ell, k, S, "tile", (m, tile))
    if ell == 1:
        return CylinderPattern(w, ell, k, frozenset(), "lattice")
    bound = ceil(ell / 7) * (w + 2)
    tiles = wide_tiles(w, k)
    raw = sorted((_unroll_size(t, ell, o), i, o) for i, t in enumerate(tiles) for o in range(7))
    best = _unroll(tiles[raw[0][1]], ell, raw[0][2])
    if len(best) > bound:
        grid = _Grid(w, ell, k)
        cands = [grid.improve(_unroll(tiles[i], ell, o)) for _, i, o in raw[:4]]
        if ell <= 7:
            lines = {(a, b) for b in (2, 5) if b < ell for a in range(0, w, 2)}
            cands.append(grid.improve(grid.repair(lines)))
        best = min(cands + [best], key=lambda s: (len(s), sorted(s)))
    return CylinderPattern(w, ell, k, frozenset(best), "lattice")
