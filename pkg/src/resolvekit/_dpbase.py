"""Shared per-node data for the two tree-decomposition DPs.

Distance vectors are tuples indexed by the bag in ascending vertex order.
When a node introduces or forgets v, v's coordinate sits at its sorted
position in the larger bag rather than at the end.
"""
import math
import time

from .graph import GraphError, require_connected
from .treedecomp import NiceTreeDecomposition, check_nice

INFTY = math.inf


def vmin(a, b):
    """min_l (a_l + b_l)."""
    return min(x + y for x, y in zip(a, b))


def check_lengths(*vecs):
    k = len(vecs[0])
    if k < 1 or any(len(v) != k for v in vecs):
        raise ValueError("distance vectors must share a length >= 1")


def pair_key(a, b):
    return (a, b) if a <= b else (b, a)


def ext(r, pos, val):
    return r[:pos] + (val,) + r[pos:]


def trunc(r, pos):
    return r[:pos] + r[pos + 1:]


class NodeData:
    __slots__ = ("idx", "kind", "bag", "pos", "vertex", "children", "proc", "out",
                 "vec", "rin", "rin_nb", "rout", "vpos", "_out_pairs", "_dm")

    def out_pairs(self):
        """Realized (pair, distance) elements over distinct outside vertices."""
        if self._out_pairs is None:
            rows = self._dm.rows
            self._out_pairs = frozenset(
                (pair_key(self.vec[x], self.vec[y]), rows[x][y])
                for i, x in enumerate(self.out) for y in self.out[i + 1:])
        return self._out_pairs


class DPContext:
    """Distance vectors and realized vector sets for every node of a nice
    tree decomposition."""

    def __init__(self, g, ntd: NiceTreeDecomposition, check=True):
        require_connected(g)
        if check:
            ok, msg = check_nice(g, ntd)
            if not ok:
                raise GraphError(f"invalid nice decomposition: {msg}")
        self.g = g
        self.ntd = ntd
        self.dm = g.dm
        rows = self.dm.rows
        self.nodes = []
        for idx, nd in enumerate(ntd.nodes):
            d = NodeData()
            d.idx = idx
            d.kind = nd.kind
            d.bag = nd.bag
            d.pos = {v: i for i, v in enumerate(nd.bag)}
            d.vertex = nd.vertex
            d.children = list(nd.children)
            d.proc = nd.processed
            d.out = [x for x in range(g.n) if x not in nd.processed]
            d.vec = [tuple(rows[x][b] for b in nd.bag) for x in range(g.n)]
            d.rin = frozenset(d.vec[x] for x in nd.processed)
            d.rin_nb = frozenset(d.vec[x] for x in nd.processed if x not in d.pos)
            d.rout = frozenset(d.vec[x] for x in d.out)
            d.vpos = None
            if nd.kind == "introduce":
                d.vpos = d.pos[nd.vertex]
            elif nd.kind == "forget":
                d.vpos = ntd.nodes[nd.children[0]].bag.index(nd.vertex)
            d._out_pairs = None
            d._dm = self.dm
            self.nodes.append(d)

    def diameter(self):
        return self.dm.diameter


class Deadline:
    """Cooperative wall-clock budget checked between DP nodes."""

    def __init__(self, seconds=None):
        self.stop = None if seconds is None else time.monotonic() + seconds

    def check(self):
        if self.stop is not None and time.monotonic() > self.stop:
            raise TimeoutError("time budget exhausted")
