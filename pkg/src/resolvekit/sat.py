"""CNF formulas, the three-part partition transforms and a truth-table SAT check.

Literals are signed 1-indexed ints as in DIMACS.  A partitioned formula
splits its variables into parts alpha, beta and gamma of equal size; every
clause touches each part at most once (exactly once in the exact variant).
"""
import itertools
from dataclasses import dataclass, field

PARTS = ("alpha", "beta", "gamma")


class CnfError(ValueError):
    pass


@dataclass
class Cnf:
    num_vars: int
    clauses: list

    def evaluate(self, assignment):
        return evaluate(self.clauses, assignment)


@dataclass
class PartitionedCnf:
    n_per_part: int
    parts: dict
    clauses: list
    num_vars: int = 0
    _where: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not self.num_vars:
            self.num_vars = max((v for vs in self.parts.values() for v in vs), default=0)
        self._where = {}
        for part in PARTS:
            for i, v in enumerate(self.parts[part], 1):
                self._where[v] = (part, i)

    @property
    def m(self):
        return len(self.clauses)

    def locate(self, var):
        """(part, 1-based index within the part) of a variable id."""
        return self._where[var]

    def literal_in(self, clause, part):
        """The (index, positive?) of the clause's literal from ``part``, or None."""
        for lit in clause:
            p, i = self._where[abs(lit)]
            if p == part:
                return i, lit > 0
        return None

    def is_exact(self):
        return all(len(c) == 3 and {self._where[abs(l)][0] for l in c} == set(PARTS)
                   for c in self.clauses)

    def evaluate(self, assignment):
        return evaluate(self.clauses, assignment)

    def to_cnf(self):
        return Cnf(self.num_vars, [list(c) for c in self.clauses])


def evaluate(clauses, assignment):
    """``assignment`` maps variable id -> bool (missing ids count as False)."""
    return all(any(assignment.get(abs(l), False) == (l > 0) for l in c) for c in clauses)


def brute_sat(num_vars, clauses):
    """First satisfying assignment in binary counting order, or None."""
    used = sorted({abs(l) for c in clauses for l in c})
    for bits in itertools.product((False, True), repeat=len(used)):
        a = dict(zip(used, bits))
        if evaluate(clauses, a):
            for v in range(1, num_vars + 1):
                a.setdefault(v, False)
            return a
    return None


def validate_partition(pc):
    seen = {}
    for part in PARTS:
        vs = pc.parts.get(part)
        if vs is None:
            raise CnfError(f"missing part {part}")
        if len(vs) != pc.n_per_part:
            raise CnfError(f"part {part} has {len(vs)} variables, expected {pc.n_per_part}")
        for v in vs:
            if v in seen:
                raise CnfError(f"variable {v} in parts {seen[v]} and {part}")
            seen[v] = part
    for q, c in enumerate(pc.clauses, 1):
        if not 1 <= len(c) <= 3:
            raise CnfError(f"clause {q} has {len(c)} literals")
        hit = []
        for lit in c:
            if abs(lit) not in seen:
                raise CnfError(f"clause {q}: variable {abs(lit)} is in no part")
            hit.append(seen[abs(lit)])
        if len(set(hit)) != len(hit):
            raise CnfError(f"clause {q} uses a part more than once")
    return pc


def _check_3cnf(cnf):
    if not cnf.clauses:
        raise CnfError("formula has no clauses")
    for q, c in enumerate(cnf.clauses, 1):
        if not 2 <= len(c) <= 3:
            raise CnfError(f"clause {q} has {len(c)} literals (need 2 or 3)")
        for lit in c:
            if lit == 0 or abs(lit) > cnf.num_vars:
                raise CnfError(f"clause {q}: literal {lit} out of range")
    used = {abs(l) for c in cnf.clauses for l in c}
    missing = set(range(1, cnf.num_vars + 1)) - used
    if missing:
        raise CnfError(f"variables never used: {sorted(missing)[:5]}")


def partition_3sat(cnf):
    """Split every variable into three copies, one per part.

    The j-th literal of each clause moves to part j, and three two-literal
    clauses per variable force the copies to agree.
    """
    _check_3cnf(cnf)
    N = cnf.num_vars
    base = {"alpha": 0, "beta": N, "gamma": 2 * N}
    clauses = []
    for c in cnf.clauses:
        clauses.append(tuple((1 if l > 0 else -1) * (base[PARTS[j]] + abs(l)) for j, l in enumerate(c)))
    for i in range(1, N + 1):
        a, b, g = i, N + i, 2 * N + i
        clauses += [(-a, b), (-b, g), (a, -g)]
    parts = {p: [base[p] + i for i in range(1, N + 1)] for p in PARTS}
    return validate_partition(PartitionedCnf(N, parts, clauses, 3 * N))


def exact_partition_3sat(cnf):
    """Exact variant: one fresh variable per part, seven clauses (every sign
    pattern but all-positive) that force all three to False, and every short clause padded with the fresh
    variable of each part it misses."""
    pc = cnf if isinstance(cnf, PartitionedCnf) else partition_3sat(cnf)
    validate_partition(pc)
    for q, c in enumerate(pc.clauses, 1):
        if len(c) < 2:
            raise CnfError(f"clause {q} has {len(c)} literals (need 2 or 3)")
    top = pc.num_vars
    zero = {p: top + j + 1 for j, p in enumerate(PARTS)}
    clauses = []
    for c in pc.clauses:
        have = {pc.locate(abs(l))[0] for l in c}
        clauses.append(tuple(c) + tuple(zero[p] for p in PARTS if p not in have))
    for signs in itertools.product((1, -1), repeat=3):
        if -1 in signs:
            clauses.append(tuple(s * zero[p] for s, p in zip(signs, PARTS)))
    parts = {p: list(pc.parts[p]) + [zero[p]] for p in PARTS}
    out = PartitionedCnf(pc.n_per_part + 1, parts, clauses, top + 3)
    validate_partition(out)
    assert out.is_exact()
    return out


# --- DIMACS ------------------------------------------------------------------

def parse_dimacs(text):
    num_vars = num_clauses = None
    clauses, cur = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "c%":
            continue
        if line[0] == "p":
            tok = line.split()
            if len(tok) != 4 or tok[1] != "cnf":
                raise CnfError(f"line {lineno}: bad problem line")
            try:
                num_vars, num_clauses = int(tok[2]), int(tok[3])
            except ValueError:
                raise CnfError(f"line {lineno}: bad problem line") from None
            continue
        if num_vars is None:
            raise CnfError(f"line {lineno}: clause before problem line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise CnfError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(cur))
                cur = []
            elif abs(lit) > num_vars:
                raise CnfError(f"line {lineno}: literal {lit} exceeds {num_vars} variables")
            else:
                cur.append(lit)
    if num_vars is None:
        raise CnfError("missing problem line")
    if cur:
        clauses.append(tuple(cur))
    if len(clauses) != num_clauses:
        raise CnfError(f"header says {num_clauses} clauses, found {len(clauses)}")
    return Cnf(num_vars, clauses)


def format_dimacs(num_vars, clauses):
    lines = [f"p cnf {num_vars} {len(clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in clauses]
    return "\n".join(lines) + "\n"


def parse_partition(text, cnf):
    """Sidecar with lines ``pa``, ``pb``, ``pg`` listing 1-indexed variable ids."""
    key = {"pa": "alpha", "pb": "beta", "pg": "gamma"}
    parts = {}
    where = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("c "):
            continue
        tok = line.split()
        if tok[0] not in key:
            raise CnfError(f"line {lineno}: expected pa/pb/pg, got {tok[0]!r}")
        part = key[tok[0]]
        if part in parts:
            raise CnfError(f"line {lineno}: part {tok[0]} given twice")
        ids = []
        for t in tok[1:]:
            try:
                v = int(t)
            except ValueError:
                raise CnfError(f"line {lineno}: bad variable id {t!r}") from None
            if not 1 <= v <= cnf.num_vars:
                raise CnfError(f"line {lineno}: variable {v} out of range")
            if v in where:
                raise CnfError(f"line {lineno}: variable {v} already in part {where[v]}")
            where[v] = tok[0]
            ids.append(v)
        parts[part] = ids
    for part in PARTS:
        if part not in parts:
            raise CnfError(f"partition is missing part {part}")
    sizes = {len(v) for v in parts.values()}
    if len(sizes) != 1:
        raise CnfError("parts must have equal size")
    if len(where) != cnf.num_vars:
        raise CnfError(f"partition covers {len(where)} of {cnf.num_vars} variables")
    pc = PartitionedCnf(sizes.pop(), parts, [tuple(c) for c in cnf.clauses], cnf.num_vars)
    return validate_partition(pc)


def format_partition(pc):
    tag = {"alpha": "pa", "beta": "pb", "gamma": "pg"}
    return "".join(f"{tag[p]} " + " ".join(map(str, pc.parts[p])) + "\n" for p in PARTS)


def random_partitioned_cnf(rng, n, m, exact=False):
    """Random partitioned formula with n variables per part and m clauses.

    Variables 1..n go to alpha, n+1..2n to beta, 2n+1..3n to gamma.  Each
    clause picks a random subset of at least two parts (all three when
    ``exact``) and one signed variable from each.
    """
    parts = {p: [j * n + i for i in range(1, n + 1)] for j, p in enumerate(PARTS)}
    clauses = []
    for _ in range(m):
        if exact:
            chosen = PARTS
        else:
            chosen = [p for p in PARTS if rng.random() < 0.75]
            while len(chosen) < 2:
                chosen = [p for p in PARTS if rng.random() < 0.75]
        clauses.append(tuple(rng.choice(parts[p]) * rng.choice((1, -1)) for p in chosen))
    return PartitionedCnf(n, parts, clauses, 3 * n)
