"""Steiner trees in the unit-weight graph of a triangulation.

Up to ``EXACT_TERMINALS`` terminals the Dreyfus-Wagner table gives an
optimal tree; above that the metric-closure MST (a 2-approximation) is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .. import _kernels
from ..surface_map import Triangulation, TriangulationError

EXACT_TERMINALS = 12


@dataclass(frozen=True)
class SteinerTree:
    vertices: frozenset
    edges: tuple[tuple[int, int], ...]
    terminals: tuple[int, ...]
    exact: bool

    @property
    def size(self) -> int:
        return len(self.vertices)


def _prune(edges: set[tuple[int, int]], keep: set[int]) -> set[tuple[int, int]]:
    """Spanning tree of the edge set, then strip non-terminal leaves."""
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    if not adj:
        return set()
    root = min(keep)
    tree: dict[int, set[int]] = {root: set()}
    stack = [root]
    while stack:
        u = stack.pop()
        for v in sorted(adj.get(u, ())):
            if v not in tree:
                tree[v] = set()
                tree[u].add(v)
                tree[v].add(u)
                stack.append(v)
    leaves = [v for v, nb in tree.items() if len(nb) <= 1 and v not in keep]
    while leaves:
        v = leaves.pop()
        if v not in tree or v in keep or len(tree[v]) > 1:
            continue
        for u in tree.pop(v):
            tree[u].discard(v)
            if len(tree[u]) <= 1 and u not in keep:
                leaves.append(u)
    return {(min(u, v), max(u, v)) for u, nb in tree.items() for v in nb}


def _exact(G: Triangulation, terms: list[int]) -> set[tuple[int, int]]:
    ip, ix = G.csr
    dp = _kernels.steiner_dp(ip, ix, np.array(terms, dtype=np.int64))
    full = (1 << len(terms)) - 1
    root = int(np.argmin(dp[full]))
    rot = G.rotations
    edges: set[tuple[int, int]] = set()
    todo = [(full, root)]
    while todo:
        S, v = todo.pop()
        val = int(dp[S, v])
        if val == 0:
            continue
        if S & (S - 1):
            low = S & -S
            A = (S - 1) & S
            split = None
            while A:
                if A & low and int(dp[A, v]) + int(dp[S ^ A, v]) == val:
                    split = A
                    break
                A = (A - 1) & S
            if split is not None:
                todo += [(split, v), (S ^ split, v)]
                continue
        for u in sorted(rot[v]):
            if int(dp[S, u]) + 1 == val:
                edges.add((min(u, v), max(u, v)))
                todo.append((S, u))
                break
        else:  # pragma: no cover - table inconsistency
            raise TriangulationError("Steiner table reconstruction failed")
    return edges


def _approx(G: Triangulation, terms: list[int]) -> set[tuple[int, int]]:
    ip, ix = G.csr
    t = len(terms)
    dists = [_kernels.bfs_dist(ip, ix, np.array([s], dtype=np.int64), -1) for s in terms]
    # Prim on the terminal metric
    inside = [False] * t
    inside[0] = True
    best = [(int(dists[0][terms[j]]), 0) for j in range(t)]
    edges: set[tuple[int, int]] = set()
    for _ in range(t - 1):
        j = min((j for j in range(t) if not inside[j]), key=lambda j: (best[j][0], j))
        inside[j] = True
        src = best[j][1]
        d = dists[src]
        v = terms[j]
        while d[v] > 0:  # walk back to terms[src] along decreasing distance
            u = min(u for u in G.rotations[v] if d[u] == d[v] - 1)
            edges.add((min(u, v), max(u, v)))
            v = u
        for i in range(t):
            if not inside[i]:
                dj = int(dists[j][terms[i]])
                if dj < best[i][0]:
                    best[i] = (dj, j)
    return edges


def steiner_tree(G: Triangulation, terminals: Iterable[int], exact: bool | None = None) -> SteinerTree:
    """Tree connecting ``terminals``; every leaf is a terminal.

    ``exact=None`` picks the optimal solver up to ``EXACT_TERMINALS``.
    """
    terms = sorted({int(v) for v in terminals})
    if not terms:
        raise TriangulationError("Steiner tree needs at least one terminal")
    if any(not 0 <= v < G.n for v in terms):
        raise TriangulationError("terminal out of range")
    use_exact = len(terms) <= EXACT_TERMINALS if exact is None else exact
    if len(terms) == 1:
        return SteinerTree(frozenset(terms), (), tuple(terms), True)
    raw = _exact(G, terms) if use_exact else _approx(G, terms)
    edges = _prune(raw, set(terms))
    verts = {v for e in edges for v in e} | set(terms)
    if len(verts) != len(edges) + 1:
        raise TriangulationError("terminals are not connected")
    return SteinerTree(frozenset(verts), tuple(sorted(edges)), tuple(terms), use_exact)
