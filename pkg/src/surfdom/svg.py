"""Minimal SVG drawings: planar triangulations (barycentric embedding) and cylinder patterns."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .sphere_dominator.patterns import cyl_neighbors
from .surface_map import Triangulation, TriangulationError, classify_surface


def _svg(width: float, height: float, body: list[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
            f'viewBox="0 0 {width:.1f} {height:.1f}">')
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *body, "</svg>", ""])


def tutte_layout(G: Triangulation, outer: tuple[int, ...] | None = None) -> np.ndarray:
    """Barycentric (Tutte) coordinates with ``outer`` pinned to a regular polygon."""
    if classify_surface(G) != (True, 0):
        raise TriangulationError("planar drawing needs a sphere (or disk with marked faces)")
    if outer is None:
        outer = G.marked[0] if G.marked else G.triangles[0]
    outer = tuple(outer)
    n = G.n
    pos = np.zeros((n, 2))
    m = len(outer)
    ang = np.pi / 2 + 2 * np.pi * np.arange(m) / m
    pos[list(outer)] = np.column_stack([np.cos(ang), np.sin(ang)])
    free = [v for v in range(n) if v not in set(outer)]
    if free:
        idx = {v: i for i, v in enumerate(free)}
        L = np.zeros((len(free), len(free)))
        rhs = np.zeros((len(free), 2))
        for v in free:
            i = idx[v]
            L[i, i] = G.degree(v)
            for u in G.rotations[v]:
                if u in idx:
                    L[i, idx[u]] -= 1
                else:
                    rhs[i] += pos[u]
        pos[free] = np.linalg.solve(L, rhs)
    return pos


def planar_svg(G: Triangulation, highlight: Iterable[int] = (), size: int = 640, labels: bool = False) -> str:
    pos = tutte_layout(G)
    pad = 20
    xy = (pos + 1.05) / 2.1 * (size - 2 * pad) + pad
    xy[:, 1] = size - xy[:, 1]
    hi = set(highlight)
    body = ['<g stroke="#888" stroke-width="0.6">']
    for u, v in G.edges:
        body.append(f'<line x1="{xy[u, 0]:.1f}" y1="{xy[u, 1]:.1f}" x2="{xy[v, 0]:.1f}" y2="{xy[v, 1]:.1f}"/>')
    body.append("</g>")
    r = max(1.5, min(5.0, 60 / np.sqrt(G.n)))
    for v in range(G.n):
        fill = "#d62728" if v in hi else "#1f77b4"
        rad = r * 1.6 if v in hi else r
        body.append(f'<circle cx="{xy[v, 0]:.1f}" cy="{xy[v, 1]:.1f}" r="{rad:.1f}" fill="{fill}"/>')
        if labels:
            body.append(f'<text x="{xy[v, 0] + r:.1f}" y="{xy[v, 1] - r:.1f}" font-size="8">{v}</text>')
    return _svg(size, size, body)


def pattern_svg(w: int, ell: int, k: int, members: Iterable[tuple[int, int]], cell: int = 18) -> str:
    """Cylinder unrolled along its rows; ring ``b`` is column ``b``, boundary rings shaded."""
    mem = set(members)
    pad = cell
    W, H = (ell + 1) * cell + 2 * pad, w * cell + 2 * pad

    def at(a, b):
        return pad + b * cell, pad + a * cell

    body = ['<g stroke="#bbb" stroke-width="1">']
    for a in range(w):
        for b in range(ell + 1):
            x1, y1 = at(a, b)
            for x, y in cyl_neighbors(w, k, a, b):
                if 0 <= y <= ell and (y, x) > (b, a) and abs(x - a) <= 1:
                    x2, y2 = at(x, y)
                    body.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
    body.append("</g>")
    for a in range(w):
        for b in range(ell + 1):
            x, y = at(a, b)
            boundary = b in (0, ell)
            fill = "#d62728" if (a, b) in mem else ("#ddd" if boundary else "#fff")
            body.append(f'<circle cx="{x}" cy="{y}" r="{cell / 4:.1f}" fill="{fill}" stroke="#333"/>')
    return _svg(W, H, body)
