"""Integer partitions, set partitions of {1..k}, coarsening, and partition-integer pairs.

Set partitions are also handled as restricted growth strings (RGS): position
i (0-based) carries the label of its block, labels numbered by first
appearance.  The RGS is the canonical hash key used by the rewriting code.
"""
from functools import lru_cache
from math import comb


def rgs_of(seq):
    """Relabel a sequence by order of first appearance."""
    seen = {}
    return tuple(seen.setdefault(x, len(seen)) for x in seq)


def block_sizes(rgs):
    sizes = [0] * (max(rgs) + 1)
    for x in rgs:
        sizes[x] += 1
    return sizes


class SetPartition:
    """A set partition of {1..k}, blocks sorted by their minimum element."""

    __slots__ = ("blocks", "k")

    def __init__(self, blocks):
        bs = [tuple(sorted(b)) for b in blocks]
        if any(not b for b in bs):
            raise ValueError("blocks must be non-empty")
        bs.sort(key=lambda b: b[0])
        elems = sorted(x for b in bs for x in b)
        if elems != list(range(1, len(elems) + 1)):
            raise ValueError("blocks must partition 1..k")
        self.blocks = tuple(bs)
        self.k = len(elems)

    @classmethod
    def from_rgs(cls, rgs):
        blocks = {}
        for pos, lab in enumerate(rgs, 1):
            blocks.setdefault(lab, []).append(pos)
        return cls(blocks.values())

    @property
    def rgs(self):
        out = [0] * self.k
        for lab, b in enumerate(self.blocks):
            for x in b:
                out[x - 1] = lab
        return tuple(out)

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        return isinstance(other, SetPartition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        inner = ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return "{" + inner + "}"

    def is_coarsening_of(self, finer):
        """True when every block of ``finer`` lies inside a block of self."""
        if self.k != finer.k:
            return False
        lab = self.rgs
        return all(len({lab[x - 1] for x in b}) == 1 for b in finer.blocks)


def associated_set_partition(j):
    """Blocks of positions holding equal values."""
    return SetPartition.from_rgs(rgs_of(j))


def associated_integer_partition(s):
    return tuple(sorted((len(b) for b in s.blocks), reverse=True))


@lru_cache(maxsize=None)
def set_partition_rgs(n):
    """All restricted growth strings of length n, in lexicographic order."""
    out = []

    def rec(prefix, top):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for v in range(top + 2):
            prefix.append(v)
            rec(prefix, max(top, v))
            prefix.pop()

    if n == 0:
        return ((),)
    rec([], -1)
    return tuple(out)


def set_partitions(k):
    return [SetPartition.from_rgs(r) for r in set_partition_rgs(k)]


def merge_rgs(rgs, merge):
    """Coarsen ``rgs`` by merging its blocks according to ``merge`` (an RGS on labels)."""
    return rgs_of(merge[x] for x in rgs)


def coarsenings(s):
    """All coarsenings of s including s itself, finest first."""
    base = s.rgs
    res = {merge_rgs(base, m) for m in set_partition_rgs(len(s))}
    order = sorted(res, key=lambda r: (-(max(r) + 1), r))
    return [SetPartition.from_rgs(r) for r in order]


def apply_permutation(s, tau):
    """Replace every i by tau(i); tau is one-line notation over 1..k."""
    tau = tuple(tau)
    if sorted(tau) != list(range(1, s.k + 1)):
        raise ValueError("tau must be a permutation of 1..k")
    return SetPartition([tau[x - 1] for x in b] for b in s.blocks)


def integer_partitions(k, largest=None):
    """Partitions of k as weakly decreasing tuples, in reverse lexicographic order."""
    if largest is None:
        largest = k
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in integer_partitions(k - first, first):
            yield (first,) + rest


def admissible_pairs(k):
    """Pairs (P, c) with min(P) >= 2 and c a part of P other than max(P)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    out = []
    for P in integer_partitions(k):
        if P[-1] < 2:
            continue
        for c in sorted(set(P) - {P[0]}, reverse=True):
            out.append((P, c))
    return out


def bell(n):
    """Bell numbers via the Bell triangle."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def singleton_free_count(k):
    """Number of set partitions of k elements with no singleton block."""
    # inclusion-exclusion over the forced singletons
    return sum((-1) ** i * comb(k, i) * bell(k - i) for i in range(k + 1))
