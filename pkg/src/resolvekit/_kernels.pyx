# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: all-pairs BFS, the three set checks, and the
lexicographic subset search used by the brute-force oracles."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

ctypedef cnp.uint16_t dist_t

DEF INF_C = 65535
INF = INF_C

MD = 0
GS = 1
SMD = 2


def bfs_all_pairs(int n, cnp.int64_t[::1] indptr, cnp.int64_t[::1] indices):
    cdef cnp.ndarray[dist_t, ndim=2] out = np.full((n, n), INF_C, dtype=np.uint16)
    cdef dist_t[:, ::1] dist = out
    cdef int *queue = <int *> malloc(max(n, 1) * sizeof(int))
    cdef int src, head, tail, u, w
    cdef cnp.int64_t e
    cdef dist_t du
    try:
        for src in range(n):
            dist[src, src] = 0
            queue[0] = src
            head = 0
            tail = 1
            while head < tail:
                u = queue[head]
                head += 1
                du = dist[src, u] + 1
                for e in range(indptr[u], indptr[u + 1]):
                    w = <int> indices[e]
                    if dist[src, w] == INF_C:
                        dist[src, w] = du
                        queue[tail] = w
                        tail += 1
    finally:
        free(queue)
    return out


cdef bint _resolving(dist_t[:, ::1] d, int n, int *S, int k) nogil:
    cdef int u, v, i
    cdef bint same
    for u in range(n):
        for v in range(u + 1, n):
            same = True
            for i in range(k):
                if d[S[i], u] != d[S[i], v]:
                    same = False
                    break
            if same:
                return False
    return True


cdef bint _geodetic(dist_t[:, ::1] d, int n, int *S, int k, char *mark) nogil:
    cdef int u, i, j, a, b
    cdef bint ok
    for u in range(n):
        if mark[u]:
            continue
        ok = False
        for i in range(k):
            a = S[i]
            for j in range(i + 1, k):
                b = S[j]
                if d[a, u] + d[u, b] == d[a, b]:
                    ok = True
                    break
            if ok:
                break
        if not ok:
            return False
    return True


cdef bint _strong(dist_t[:, ::1] d, int n, int *S, int k) nogil:
    cdef int u, v, i, w
    cdef int duv
    cdef bint ok
    for u in range(n):
        for v in range(u + 1, n):
            duv = d[u, v]
            ok = False
            for i in range(k):
                w = S[i]
                if d[w, u] == d[w, v] + duv or d[w, v] == d[w, u] + duv:
                    ok = True
                    break
            if not ok:
                return False
    return True


cdef bint _check(dist_t[:, ::1] d, int n, int kind, int *S, int k, char *mark) nogil:
    if kind == 0:
        return _resolving(d, n, S, k)
    if kind == 1:
        return _geodetic(d, n, S, k, mark)
    return _strong(d, n, S, k)


def check_set(dist_t[:, ::1] d, int kind, S):
    cdef int n = d.shape[0]
    cdef list items = sorted(S)
    cdef int k = len(items)
    cdef int *buf = <int *> malloc(max(k, 1) * sizeof(int))
    cdef char *mark = <char *> malloc(max(n, 1))
    cdef int i
    cdef bint res
    try:
        for i in range(n):
            mark[i] = 0
        for i in range(k):
            buf[i] = items[i]
            mark[buf[i]] = 1
        res = _check(d, n, kind, buf, k, mark)
    finally:
        free(buf)
        free(mark)
    return bool(res)


def first_subset(dist_t[:, ::1] d, int kind, forced, candidates, int size):
    """Lexicographically first ``size``-combination of ``candidates`` that
    passes the check together with ``forced``; None if there is none."""
    cdef int n = d.shape[0]
    cdef list fl = sorted(forced)
    cdef list cl = sorted(candidates)
    cdef int nf = len(fl)
    cdef int nc = len(cl)
    cdef int k = nf + size
    if size < 0 or size > nc:
        return None
    cdef int *S = <int *> malloc(max(k, 1) * sizeof(int))
    cdef int *cand = <int *> malloc(max(nc, 1) * sizeof(int))
    cdef int *idx = <int *> malloc(max(size, 1) * sizeof(int))
    cdef char *mark = <char *> malloc(max(n, 1))
    cdef int i, j
    cdef bint found = False
    try:
        for i in range(nf):
            S[i] = fl[i]
        for i in range(nc):
            cand[i] = cl[i]
        for i in range(size):
            idx[i] = i
        with nogil:
            while True:
                for i in range(n):
                    mark[i] = 0
                for i in range(nf):
                    mark[S[i]] = 1
                for i in range(size):
                    S[nf + i] = cand[idx[i]]
                    mark[cand[idx[i]]] = 1
                if _check(d, n, kind, S, k, mark):
                    found = True
                    break
                # advance to the next combination in lex order
                i = size - 1
                while i >= 0 and idx[i] == nc - size + i:
                    i -= 1
                if i < 0:
                    break
                idx[i] += 1
                for j in range(i + 1, size):
                    idx[j] = idx[j - 1] + 1
        if found:
            return [cand[idx[i]] for i in range(size)]
        return None
    finally:
        free(S)
        free(cand)
        free(idx)
        free(mark)
