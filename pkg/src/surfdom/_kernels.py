"""Hot loops, compiled with numba unless ``SURFDOM_NO_NUMBA=1``.

Every kernel has a pure numpy/Python twin with the same signature and the
same results; ``USE_NUMBA`` says which set is live.  The twins are always
importable under ``py_*`` names so tests and the benchmark can compare them.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("SURFDOM_NO_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:  # pragma: no cover - depends on the environment
    if _DISABLED:
        raise ImportError
    from numba import njit

    USE_NUMBA = True
except ImportError:  # pragma: no cover
    USE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


INF = np.int64(1 << 40)


# ------------------------------------------------------------------- BFS
def py_bfs_dist(indptr, indices, sources, limit):
    n = len(indptr) - 1
    dist = np.full(n, -1, dtype=np.int64)
    frontier = np.unique(np.asarray(sources, dtype=np.int64))
    dist[frontier] = 0
    d = 0
    while frontier.size and (limit < 0 or d < limit):
        starts, ends = indptr[frontier], indptr[frontier + 1]
        lens = ends - starts
        if lens.sum() == 0:
            break
        offs = np.repeat(starts - np.concatenate(([0], np.cumsum(lens)[:-1])), lens)
        nbrs = indices[np.arange(lens.sum()) + offs]
        nbrs = np.unique(nbrs[dist[nbrs] < 0])
        d += 1
        dist[nbrs] = d
        frontier = nbrs
    return dist


@njit(cache=True)
def _nb_bfs_dist(indptr, indices, sources, limit):
    n = len(indptr) - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    head = 0
    tail = 0
    for s in sources:
        if dist[s] < 0:
            dist[s] = 0
            queue[tail] = s
            tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        if limit >= 0 and dist[u] >= limit:
            continue
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue[tail] = v
                tail += 1
    return dist


# ------------------------------------------------------ rooted loop scan
def py_scan_root(indptr, indices, csr_sign, csr_hom, root, limit):
    """BFS tree from ``root`` carrying path parity and homology class.

    Returns ``dist, parent, branch, hom, par`` where ``branch`` is the child
    of the root on the tree path (root itself gets -1), ``hom`` the XOR of the
    edge classes along the tree path and ``par`` the product of signatures.
    """
    n = len(indptr) - 1
    ip, ix, sg, hm = indptr.tolist(), indices.tolist(), csr_sign.tolist(), csr_hom.tolist()
    dist = [-1] * n
    parent = [-1] * n
    branch = [-1] * n
    hom = [0] * n
    par = [1] * n
    dist[root] = 0
    queue = [root]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        if limit >= 0 and dist[u] >= limit:
            continue
        for p in range(ip[u], ip[u + 1]):
            v = ix[p]
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                parent[v] = u
                branch[v] = v if u == root else branch[u]
                hom[v] = hom[u] ^ hm[p]
                par[v] = par[u] * sg[p]
                queue.append(v)
    return (np.array(dist, dtype=np.int64), np.array(parent, dtype=np.int64),
            np.array(branch, dtype=np.int64), np.array(hom, dtype=np.int64),
            np.array(par, dtype=np.int64))


@njit(cache=True)
def _nb_scan_root(indptr, indices, csr_sign, csr_hom, root, limit):
    n = len(indptr) - 1
    dist = np.full(n, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    branch = np.full(n, -1, dtype=np.int64)
    hom = np.zeros(n, dtype=np.int64)
    par = np.ones(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    head = 0
    tail = 1
    queue[0] = root
    dist[root] = 0
    while head < tail:
        u = queue[head]
        head += 1
        if limit >= 0 and dist[u] >= limit:
            continue
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                parent[v] = u
                branch[v] = v if u == root else branch[u]
                hom[v] = hom[u] ^ csr_hom[p]
                par[v] = par[u] * csr_sign[p]
                queue[tail] = v
                tail += 1
    return dist, parent, branch, hom, par


# ------------------------------------------------------------ domination
def py_cover_counts(indptr, indices, member):
    """How many members lie in each closed neighbourhood."""
    member = np.asarray(member, dtype=bool)
    counts = member.astype(np.int64)
    owners = np.repeat(np.arange(len(indptr) - 1), np.diff(indptr))
    np.add.at(counts, indices[member[owners]], 1)
    return counts


@njit(cache=True)
def _nb_cover_counts(indptr, indices, member):
    n = len(indptr) - 1
    counts = np.zeros(n, dtype=np.int64)
    for u in range(n):
        if member[u]:
            counts[u] += 1
            for p in range(indptr[u], indptr[u + 1]):
                counts[indices[p]] += 1
    return counts


# ---------------------------------------------------- branch and bound
def py_dominating_bb(closed, start_dom, start_sel, start_count, best, best_sel, budget):
    """Exact minimum dominating set search on Python-int bitsets.

    ``closed[v]`` is the closed-neighbourhood bitmask of ``v``.  Returns
    ``(best_size, best_mask, nodes, complete)``.
    """
    n = len(closed)
    full = (1 << n) - 1
    cand_of = [[u for u in range(n) if closed[v] >> u & 1] for v in range(n)]
    nodes = 0
    stack = [(start_dom, start_sel, start_count)]
    while stack:
        dom, sel, count = stack.pop()
        nodes += 1
        if nodes > budget:
            return best, best_sel, nodes, False
        if dom == full:
            if count < best:
                best, best_sel = count, sel
            continue
        undom = full & ~dom
        left = undom.bit_count() if hasattr(int, "bit_count") else bin(undom).count("1")
        gains = [(closed[u] & undom) for u in range(n)]
        maxgain = max(bin(g).count("1") for g in gains)
        if count + -(-left // maxgain) >= best:
            continue
        v = (undom & -undom).bit_length() - 1
        cands = sorted(cand_of[v], key=lambda u: (-bin(gains[u]).count("1"), u))
        keep = []
        for i, u in enumerate(cands):
            gu = gains[u]
            if any((gu | gains[c]) == gains[c] for c in keep):
                continue
            keep.append(u)
        for u in reversed(keep):
            stack.append((dom | closed[u], sel | (1 << u), count + 1))
    return best, best_sel, nodes, True


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - np.uint64(1)
        c += 1
    return c


@njit(cache=True)
def _nb_dominating_bb(closed, cand_ptr, cand_idx, start_dom, start_sel, start_count,
                      best, best_sel, budget):
    n = len(closed)
    one = np.uint64(1)
    full = np.uint64(0xFFFFFFFFFFFFFFFF) if n == 64 else (one << np.uint64(n)) - one
    maxc = 0
    for v in range(n):
        if cand_ptr[v + 1] - cand_ptr[v] > maxc:
            maxc = cand_ptr[v + 1] - cand_ptr[v]
    depth_cap = n + 2
    dom_s = np.zeros(depth_cap, dtype=np.uint64)
    sel_s = np.zeros(depth_cap, dtype=np.uint64)
    cnt_s = np.zeros(depth_cap, dtype=np.int64)
    cands = np.zeros((depth_cap, maxc), dtype=np.int64)
    ncand = np.zeros(depth_cap, dtype=np.int64)
    nxt = np.zeros(depth_cap, dtype=np.int64)
    gains = np.zeros(n, dtype=np.uint64)
    gcount = np.zeros(n, dtype=np.int64)
    nodes = 0
    depth = 0
    dom_s[0] = start_dom
    sel_s[0] = start_sel
    cnt_s[0] = start_count
    expanded = False
    while depth >= 0:
        if not expanded:
            nodes += 1
            if nodes > budget:
                return best, best_sel, nodes, False
            dom = dom_s[depth]
            count = cnt_s[depth]
            ncand[depth] = 0
            nxt[depth] = 0
            if dom == full:
                if count < best:
                    best = count
                    best_sel = sel_s[depth]
            else:
                undom = full & ~dom
                left = _popcount(undom)
                maxgain = 1
                for u in range(n):
                    gains[u] = closed[u] & undom
                    gcount[u] = _popcount(gains[u])
                    if gcount[u] > maxgain:
                        maxgain = gcount[u]
                if count + (left + maxgain - 1) // maxgain < best:
                    low = undom & (~undom + one)
                    v = _popcount(low - one)
                    k = 0
                    for p in range(cand_ptr[v], cand_ptr[v + 1]):
                        u = cand_idx[p]
                        # insertion by gain desc, id asc
                        j = k
                        while j > 0 and (gcount[cands[depth, j - 1]] < gcount[u] or
                                         (gcount[cands[depth, j - 1]] == gcount[u] and cands[depth, j - 1] > u)):
                            cands[depth, j] = cands[depth, j - 1]
                            j -= 1
                        cands[depth, j] = u
                        k += 1
                    m = 0
                    for i in range(k):
                        u = cands[depth, i]
                        dominated = False
                        for j in range(m):
                            c = cands[depth, j]
                            if (gains[u] | gains[c]) == gains[c]:
                                dominated = True
                                break
                        if not dominated:
                            cands[depth, m] = u
                            m += 1
                    ncand[depth] = m
        if nxt[depth] < ncand[depth]:
            u = cands[depth, nxt[depth]]
            nxt[depth] += 1
            dom_s[depth + 1] = dom_s[depth] | closed[u]
            sel_s[depth + 1] = sel_s[depth] | (one << np.uint64(u))
            cnt_s[depth + 1] = cnt_s[depth] + 1
            if cnt_s[depth + 1] >= best:
                expanded = True
                continue
            depth += 1
            expanded = False
        else:
            depth -= 1
            expanded = True
    return best, best_sel, nodes, True


# --------------------------------------------------------------- Steiner
def _relax_py(ip, ix, row):
    """Unit-weight relaxation row[v] = min_u row[u] + d(u, v) (two-queue merge)."""
    n = len(row)
    order = sorted(range(n), key=row.__getitem__)
    done = [False] * n
    fifo = []
    fh = 0
    oi = 0
    while oi < n or fh < len(fifo):
        if fh < len(fifo) and (oi >= n or row[fifo[fh]] <= row[order[oi]]):
            u = fifo[fh]
            fh += 1
        else:
            u = order[oi]
            oi += 1
        if done[u]:
            continue
        done[u] = True
        du = row[u] + 1
        for p in range(ip[u], ip[u + 1]):
            v = ix[p]
            if du < row[v]:
                row[v] = du
                fifo.append(v)
    return row


def py_steiner_dp(indptr, indices, terminals):
    """Dreyfus-Wagner table: ``dp[S, v]`` = edges of a min tree spanning S + v."""
    n = len(indptr) - 1
    t = len(terminals)
    ip, ix = indptr.tolist(), indices.tolist()
    big = 1 << 29
    dp = [[big] * n for _ in range(1 << t)]
    for i, term in enumerate(terminals):
        row = [big] * n
        row[term] = 0
        dp[1 << i] = _relax_py(ip, ix, row)
    for S in range(1, 1 << t):
        if S & (S - 1) == 0:
            continue
        low = S & -S
        row = [big] * n
        A = (S - 1) & S
        while A:
            if A & low:
                B = S ^ A
                ra, rb = dp[A], dp[B]
                for v in range(n):
                    s = ra[v] + rb[v]
                    if s < row[v]:
                        row[v] = s
            A = (A - 1) & S
        dp[S] = _relax_py(ip, ix, row)
    return np.array(dp, dtype=np.int32)


@njit(cache=True)
def _nb_relax(indptr, indices, row):
    n = len(row)
    order = np.argsort(row, kind="mergesort")
    done = np.zeros(n, dtype=np.bool_)
    fifo = np.empty(n * 8 + 8, dtype=np.int64)
    fh = 0
    ft = 0
    oi = 0
    while oi < n or fh < ft:
        if fh < ft and (oi >= n or row[fifo[fh]] <= row[order[oi]]):
            u = fifo[fh]
            fh += 1
        else:
            u = order[oi]
            oi += 1
        if done[u]:
            continue
        done[u] = True
        du = row[u] + 1
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            if du < row[v]:
                row[v] = du
                if ft >= len(fifo):
                    grown = np.empty(len(fifo) * 2, dtype=np.int64)
                    grown[:ft] = fifo[:ft]
                    fifo = grown
                fifo[ft] = v
                ft += 1


@njit(cache=True)
def _nb_steiner_dp(indptr, indices, terminals):
    n = len(indptr) - 1
    t = len(terminals)
    big = np.int32(1 << 29)
    dp = np.full((1 << t, n), big, dtype=np.int32)
    for i in range(t):
        row = dp[1 << i]
        row[terminals[i]] = 0
        _nb_relax(indptr, indices, row)
    for S in range(1, 1 << t):
        if S & (S - 1) == 0:
            continue
        low = S & -S
        row = dp[S]
        A = (S - 1) & S
        while A:
            if A & low:
                B = S ^ A
                for v in range(n):
                    s = dp[A, v] + dp[B, v]
                    if s < row[v]:
                        row[v] = s
            A = (A - 1) & S
        _nb_relax(indptr, indices, row)
    return dp


# ------------------------------------------------------------ dispatch
if USE_NUMBA:
    bfs_dist = _nb_bfs_dist
    scan_root = _nb_scan_root
    cover_counts = _nb_cover_counts
    steiner_dp = _nb_steiner_dp
else:  # pragma: no cover
    bfs_dist = py_bfs_dist
    scan_root = py_scan_root
    cover_counts = py_cover_counts
    steiner_dp = py_steiner_dp


def dominating_bb(closed_masks, start_dom, start_sel, start_count, best, best_sel, budget,
                  force_python=False):
    """Dispatch the exact search; the compiled path handles up to 64 vertices."""
    n = len(closed_masks)
    if USE_NUMBA and n <= 64 and not force_python:
        closed = np.array(closed_masks, dtype=np.uint64)
        ptr = [0]
        idx = []
        for v in range(n):
            idx += [u for u in range(n) if closed_masks[v] >> u & 1]
            ptr.append(len(idx))
        b, bs, nodes, ok = _nb_dominating_bb(
            closed, np.array(ptr, dtype=np.int64), np.array(idx, dtype=np.int64),
            np.uint64(start_dom), np.uint64(start_sel), np.int64(start_count),
            np.int64(best), np.uint64(best_sel), np.int64(budget))
        return int(b), int(bs), int(nodes), bool(ok)
    return py_dominating_bb(list(closed_masks), start_dom, start_sel, start_count,
                            best, best_sel, budget)
