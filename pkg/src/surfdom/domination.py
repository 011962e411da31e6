"""Dominating-set checking plus exact and greedy solvers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _kernels
from .surface_map import Triangulation, TriangulationError

EXACT_LIMIT = 60


@dataclass(frozen=True)
class DominationCertificate:
    """``witness[v]`` is a member of ``D`` inside the closed neighbourhood of ``v``."""

    D: frozenset
    witness: tuple[int, ...]


@dataclass(frozen=True)
class DominationCheck:
    certificate: DominationCertificate | None
    undominated: int | None

    def __bool__(self) -> bool:
        return self.certificate is not None


def _as_set(G: Triangulation, D: Iterable[int]) -> frozenset:
    D = frozenset(int(v) for v in D)
    bad = [v for v in D if not 0 <= v < G.n]
    if bad:
        raise TriangulationError(f"vertex ids out of range: {sorted(bad)[:5]}")
    return D


def is_dominating(G: Triangulation, D: Iterable[int]) -> DominationCheck:
    D = _as_set(G, D)
    witness = []
    for v in range(G.n):
        if v in D:
            witness.append(v)
            continue
        for u in G.rotations[v]:
            if u in D:
                witness.append(u)
                break
        else:
            return DominationCheck(None, v)
    return DominationCheck(DominationCertificate(D, tuple(witness)), None)


def cover_counts(G: Triangulation, D: Iterable[int]) -> np.ndarray:
    """Number of members of ``D`` in each closed neighbourhood."""
    member = np.zeros(G.n, dtype=np.bool_)
    member[list(_as_set(G, D))] = True
    ip, ix = G.csr
    return _kernels.cover_counts(ip, ix, member)


def greedy_dominating_set(G: Triangulation, required: Iterable[int] = ()) -> set[int]:
    """Repeatedly add the vertex dominating the most new vertices (lowest id on ties)."""
    D = set(_as_set(G, required))
    ip, ix = G.csr
    owners = np.repeat(np.arange(G.n), np.diff(ip))
    dominated = cover_counts(G, D) > 0
    while not dominated.all():
        und = (~dominated).astype(np.int64)
        gain = und.copy()
        np.add.at(gain, owners, und[ix])
        v = int(np.argmax(gain))
        D.add(v)
        dominated[v] = True
        dominated[ix[ip[v]:ip[v + 1]]] = True
    return D


def prune_redundant(G: Triangulation, D: Iterable[int], keep: Iterable[int] = (), order=None) -> set[int]:
    """Drop members whose closed neighbourhood stays covered without them.

    Candidates are tried once each, in ``order`` (default: increasing id);
    members of ``keep`` are never dropped.  The result dominates whatever
    ``D`` dominated.
    """
    D = set(_as_set(G, D))
    keep = set(keep)
    cnt = cover_counts(G, D).astype(np.int64)
    ip, ix = G.csr
    for v in (sorted(D) if order is None else [u for u in order if u in D]):
        if v in keep:
            continue
        nb = ix[ip[v]:ip[v + 1]]
        if cnt[v] > 1 and (cnt[nb] > 1).all():
            D.discard(v)
            cnt[v] -= 1
            cnt[nb] -= 1
    return D


@dataclass(frozen=True)
class ExactResult:
    D: frozenset
    status: str  # "optimal" or "incomplete"
    nodes: int

    @property
    def size(self) -> int:
        return len(self.D)

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def exact_min_dominating_set(G: Triangulation, required: Iterable[int] = (),
                             budget: int | None = None, limit: int = EXACT_LIMIT) -> ExactResult:
    """Minimum dominating set containing ``required`` by branch and bound.

    Branches on the lowest-id undominated vertex.  When the node budget runs
    out the best set found so far is returned with status ``"incomplete"``.
    """
    req = _as_set(G, required)
    if G.n > limit and budget is None:
        raise TriangulationError(f"n={G.n} exceeds the exact-solver limit {limit}; pass a budget")
    budget = 5_000_000 if budget is None else int(budget)
    closed = [(1 << v) | sum(1 << u for u in G.rotations[v]) for v in range(G.n)]
    start_sel = sum(1 << v for v in req)
    start_dom = 0
    for v in req:
        start_dom |= closed[v]
    ub = greedy_dominating_set(G, req)
    ub_mask = sum(1 << v for v in ub)
    best, mask, nodes, complete = _kernels.dominating_bb(
        closed, start_dom, start_sel, len(req), len(ub) + 1, ub_mask, budget)
    if best > len(ub):  # search could not beat greedy; greedy is the incumbent
        best, mask = len(ub), ub_mask
    D = frozenset(v for v in range(G.n) if mask >> v & 1)
    return ExactResult(D, "optimal" if complete else "incomplete", nodes)
