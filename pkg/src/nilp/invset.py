"""Invertible subsets of a finite set of unitriangular matrices.

A generator is invertible when its inverse lies in the semigroup generated
by the whole set.  The semigroup contains I exactly when some generator is
invertible, and it is a group exactly when all of them are.
"""
from dataclasses import dataclass, field

from .cones import HomogeneousSystem, full_support_witness, support
from .exactq import QMatrix, preimage
from .liealg import bracket_span_chain, filtration_space
from .utgroup import UTMatrix, logm, mul

DEFAULT_CLASS_LIMIT = 10


class ClassTooHigh(Exception):
    def __init__(self, d, limit=DEFAULT_CLASS_LIMIT):
        super().__init__(f"bracket filtration has length {d} > {limit}")
        self.d = d
        self.limit = limit


class GeneratorSet:
    def __init__(self, gens):
        gens = [g if isinstance(g, UTMatrix) else UTMatrix(g) for g in gens]
        if not gens:
            raise ValueError("need at least one generator")
        n = gens[0].n
        if any(g.n != n for g in gens):
            raise ValueError("generators must share one dimension")
        self.n = n
        self.gens = gens
        self.logs = [logm(g) for g in gens]

    @property
    def K(self):
        return len(self.gens)

    def log_map(self):
        """The n^2 x K matrix sending l to sum_i l_i log A_i (flattened)."""
        cols = [x.flat() for x in self.logs]
        return QMatrix._raw(tuple(zip(*cols)))

    def bracket_class(self):
        """Least d >= 1 with every (d+1)-fold bracketing of the logs zero."""
        chain = bracket_span_chain(self.logs, self.n)
        d = 1
        while d + 1 < len(chain) and not chain[d + 1].is_zero():
            d += 1
        return d


@dataclass
class InvSetResult:
    invertible: frozenset
    iterations: int
    class_bound: int
    assumed_conjecture: bool = False
    chain: list = field(default_factory=list)
    witness: list = None

    def to_json(self):
        # 1-based indices for external consumers
        return {"invertible": sorted(i + 1 for i in self.invertible),
                "iterations": self.iterations,
                "class_bound": self.class_bound}


def _class_bound(g, max_class, assume_conjecture):
    d = g.bracket_class()
    limit = DEFAULT_CLASS_LIMIT
    if max_class is not None:
        if max_class > DEFAULT_CLASS_LIMIT and not assume_conjecture:
            raise ClassTooHigh(max_class)
        limit = max_class
    if d > limit:
        raise ClassTooHigh(d, limit)
    return d


def invertible_subset(g, max_class=None, assume_conjecture=False):
    """Run the support-shrinking loop and return the invertible indices (0-based)."""
    d = _class_bound(g, max_class, assume_conjecture)
    M = g.log_map()
    S = frozenset(range(g.K))
    chain = [S]
    iterations = 0
    while True:
        iterations += 1
        L2 = filtration_space([g.logs[i] for i in sorted(S)], 2, d)
        V = preimage(M, L2)
        supp = support(HomogeneousSystem.from_subspace(V))
        assert supp <= S, "support left the current index set"
        if supp == S:
            break
        S = supp
        chain.append(S)
        if not S:
            break
    witness = full_support_witness(HomogeneousSystem.from_subspace(V), S) if S else None
    return InvSetResult(S, iterations, d, bool(assume_conjecture and d > DEFAULT_CLASS_LIMIT),
                        chain, witness)


def identity_problem(g, **kw):
    return bool(invertible_subset(g, **kw).invertible)


def group_problem(g, **kw):
    return len(invertible_subset(g, **kw).invertible) == g.K


def brute_force_identity_oracle(g, max_len=10):
    """Shortest non-empty word (0-based letters) evaluating to I, up to max_len."""
    if max_len > 10:
        raise ValueError("max_len is capped at 10")
    ident = UTMatrix.identity(g.n)
    # one representative word per reachable matrix keeps the search small
    frontier = {ident: ()}
    for _ in range(max_len):
        nxt = {}
        for m, w in frontier.items():
            for i, a in enumerate(g.gens):
                p = mul(m, a)
                if p not in nxt:
                    nxt[p] = w + (i,)
        if ident in nxt:
            return list(nxt[ident])
        frontier = nxt
    return None
