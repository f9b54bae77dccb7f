"""Pure-Python versions of the hot kernels.

Same call signatures as the compiled ``_kernels`` module.  Distance
matrices arrive as 2-D uint16 numpy arrays; we convert to nested lists once
per call because element access on numpy scalars is slow in a Python loop.
"""
from collections import deque
from itertools import combinations

import numpy as np

INF = 65535

MD, GS, SMD = 0, 1, 2


def bfs_all_pairs(n, indptr, indices):
    dist = np.full((n, n), INF, dtype=np.uint16)
    nbrs = [indices[indptr[u]:indptr[u + 1]].tolist() for u in range(n)]
    for src in range(n):
        row = [INF] * n
        row[src] = 0
        q = deque([src])
        while q:
            u = q.popleft()
            du = row[u] + 1
            for w in nbrs[u]:
                if row[w] == INF:
                    row[w] = du
                    q.append(w)
        dist[src, :] = row
    return dist


def _rows(dist):
    return dist.tolist() if hasattr(dist, "tolist") else dist


def _resolving(d, n, S):
    rows = [d[w] for w in S]
    seen = set()
    for u in range(n):
        key = tuple(r[u] for r in rows)
        if key in seen:
            return False
        seen.add(key)
    return True


def _geodetic(d, n, S):
    inS = set(S)
    for u in range(n):
        if u in inS:
            continue
        du = d[u]
        ok = False
        for i, a in enumerate(S):
            da = d[a]
            for b in S[i + 1:]:
                if da[u] + du[b] == da[b]:
                    ok = True
                    break
            if ok:
                break
        if not ok:
            return False
    return True


def _strong(d, n, S):
    rows = [d[w] for w in S]
    for u in range(n):
        du = d[u]
        for v in range(u + 1, n):
            duv = du[v]
            for r in rows:
                if r[u] == r[v] + duv or r[v] == r[u] + duv:
                    break
            else:
                return False
    return True


_CHECKS = {MD: _resolving, GS: _geodetic, SMD: _strong}


def check_set(dist, kind, S):
    d = _rows(dist)
    return _CHECKS[kind](d, len(d), sorted(S))


def first_subset(dist, kind, forced, candidates, size):
    """Lexicographically first combo of ``size`` candidates that, together
    with ``forced``, passes the ``kind`` check.  None when nothing passes."""
    d = _rows(dist)
    n = len(d)
    check = _CHECKS[kind]
    forced = sorted(forced)
    for combo in combinations(sorted(candidates), size):
        S = sorted(forced + list(combo))
        if check(d, n, S):
            return list(combo)
    return None
