"""Set verifiers and exhaustive solvers for MD, GS and SMD."""
from dataclasses import dataclass, field

from ._accel import GS, MD, SMD, kernels
from .graph import GraphError, is_simplicial, nontrivial_twin_classes, require_connected

KIND = {"md": MD, "gs": GS, "smd": SMD}


@dataclass
class SolutionReport:
    problem: str
    optimum: int | None  # None means NO in decision mode
    witness: list = field(default_factory=list)
    method: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def yes(self):
        return self.optimum is not None


def _dm(g, dm):
    require_connected(g)
    return dm if dm is not None else g.dm


def is_resolving_set(g, dm=None, S=()):
    dm = _dm(g, dm)
    return kernels.check_set(dm.dist, MD, list(S))


def is_geodetic_set(g, dm=None, S=()):
    dm = _dm(g, dm)
    return kernels.check_set(dm.dist, GS, list(S))


def is_strong_resolving_set(g, dm=None, S=()):
    dm = _dm(g, dm)
    return kernels.check_set(dm.dist, SMD, list(S))


VERIFIERS = {"md": is_resolving_set, "gs": is_geodetic_set, "smd": is_strong_resolving_set}


def verify(problem, g, S, dm=None):
    return VERIFIERS[problem](g, dm, S)


def forced_vertices(g, problem):
    """Vertices that some minimum solution, and in particular the
    lexicographically smallest one, is known to contain.

    GS: every simplicial vertex.  MD/SMD: in a twin class of size c every
    solution holds c-1 members, and swapping twins is an automorphism, so
    the lex-smallest solution holds the c-1 lowest ones.
    """
    if problem == "gs":
        return [v for v in range(g.n) if is_simplicial(g, v)]
    out = []
    for cls in nontrivial_twin_classes(g):
        out.extend(cls[:-1])
    return sorted(out)


def search_min(g, problem, forced, candidates, dm=None, lo=0, hi=None, deadline=None):
    """Smallest set forced + C (C from candidates, lex-first at that size)
    that passes the verifier; |forced|+|C| kept <= hi when given.

    ``deadline`` (anything with a ``check()`` method) is polled between
    subset sizes."""
    dm = dm if dm is not None else g.dm
    kind = KIND[problem]
    forced = sorted(forced)
    candidates = sorted(set(candidates) - set(forced))
    top = len(candidates)
    if hi is not None:
        top = min(top, hi - len(forced))
    for size in range(max(lo, 0), top + 1):
        if deadline is not None:
            deadline.check()
        combo = kernels.first_subset(dm.dist, kind, forced, candidates, size)
        if combo is not None:
            return sorted(forced + combo)
    return None


def _brute(problem, g, dm=None, cap=16, deadline=None):
    dm = _dm(g, dm)
    if g.n > cap:
        raise GraphError(f"n={g.n} exceeds brute-force cap {cap}")
    forced = forced_vertices(g, problem)
    S = search_min(g, problem, forced, range(g.n), dm, deadline=deadline)
    assert S is not None and verify(problem, g, S, dm)
    return SolutionReport(problem, len(S), S, "brute")


def brute_md(g, dm=None, cap=16, deadline=None):
    return _brute("md", g, dm, cap, deadline)


def brute_gs(g, dm=None, cap=16, deadline=None):
    return _brute("gs", g, dm, cap, deadline)


def brute_smd(g, dm=None, cap=16, deadline=None):
    return _brute("smd", g, dm, cap, deadline)


BRUTE = {"md": brute_md, "gs": brute_gs, "smd": brute_smd}


def brute_unseeded(problem, g, dm=None):
    """Plain cardinality-then-lex search with no forced seeding (reference
    route for testing the seeded search)."""
    dm = _dm(g, dm)
    S = search_min(g, problem, [], range(g.n), dm)
    return SolutionReport(problem, len(S), S, "brute-unseeded")
