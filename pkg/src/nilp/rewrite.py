"""Rewriting symmetrized BCH terms into the canonical M-hat(P, c) basis.

For a tuple j over {1..k+1}, the sum over all relabelings sigma of
H_k(C_sigma(j_1), ..., C_sigma(j_m)) is reduced, modulo brackets of length
> k and the second derived filtration, to rational coefficients on the
admissible partition-integer pairs (see ``partitions.admissible_pairs``).

The pipeline has four stages:

1. expand H_k by Dynkin's formula; every composition contributes to the
   set partition of the repeated-letter word it produces;
2. eliminate partitions with singleton blocks, replacing each by minus the
   sum over its strict coarsenings, finest first;
3. push the Dynkin permutation weights through to M-type sums;
4. resolve each M-type sum by the Jacobi identity into M-hat terms.

Stages 3 and 4 are fused by default: the Jacobi step only looks at where the
first two bracket positions land, so the permutation sum collapses to a k x k
weight table.  ``method="literal"`` runs the two stages separately.
"""
import hashlib
import json
import os
import random
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

from .bch import descents, dynkin_weight
from .cones import in_nonneg_cone
from .exactq import fmt, q
from .partitions import admissible_pairs, block_sizes, merge_rgs, rgs_of, set_partition_rgs

MIN_K, MAX_K = 3, 11
LITERAL_MAX_K = 8
CACHE_ENV = "NILP_CACHE_DIR"


class CertificateError(ValueError):
    """A certificate that is not well formed."""


def _pair_key(pc):
    P, c = pc
    return "(" + ",".join(map(str, P)) + ")|" + str(c)


def _parse_pair_key(s):
    P, c = s.split("|")
    return tuple(int(x) for x in P.strip("()").split(",")), int(c)


class GammaVector:
    """Rational coefficients over ``admissible_pairs(k)``."""

    __slots__ = ("k", "coefficients")

    def __init__(self, k, coefficients=None):
        self.k = k
        allowed = set(admissible_pairs(k))
        coeffs = {}
        for pc, v in (coefficients or {}).items():
            pc = (tuple(pc[0]), pc[1])
            if pc not in allowed:
                raise ValueError(f"{pc} is not an admissible pair for k={k}")
            v = q(v)
            if v:
                coeffs[pc] = v
        self.coefficients = coeffs

    @property
    def pairs(self):
        return admissible_pairs(self.k)

    def __getitem__(self, pc):
        return self.coefficients.get((tuple(pc[0]), pc[1]), Fraction(0))

    def vector(self):
        return [self[pc] for pc in self.pairs]

    def is_zero(self):
        return not self.coefficients

    def __eq__(self, other):
        return (isinstance(other, GammaVector) and self.k == other.k
                and self.coefficients == other.coefficients)

    def __add__(self, other):
        if self.k != other.k:
            raise ValueError("k mismatch")
        out = dict(self.coefficients)
        for pc, v in other.coefficients.items():
            out[pc] = out.get(pc, 0) + v
        return GammaVector(self.k, out)

    def scale(self, c):
        c = q(c)
        return GammaVector(self.k, {pc: c * v for pc, v in self.coefficients.items()})

    def __repr__(self):
        body = ", ".join(f"{_pair_key(pc)}: {fmt(v)}" for pc, v in self.coefficients.items())
        return f"GammaVector(k={self.k}, {{{body}}})"

    def to_json(self):
        return {"k": self.k,
                "coefficients": {_pair_key(pc): fmt(self[pc]) for pc in self.pairs}}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["k"], {_parse_pair_key(s): q(v) for s, v in obj["coefficients"].items()})


# stage 1

def expand_compositions(k, j):
    """Stage 1: map each set partition (as RGS) to its accumulated coefficient.

    A composition (i_1, ..., i_m) of k repeats letter j_t i_t times; the
    resulting word contributes (k+1-card)!/(i_1!...i_m!) to its partition.
    Enumerated depth-first with the RGS built incrementally.
    """
    m = len(j)
    fact = [factorial(i) for i in range(k + 2)]
    acc = {}
    label = {}
    seq = []

    # mult carries k!/(i_1!...i_t!), an integer at every depth
    def rec(t, r, mult):
        if r == 0:
            key = tuple(seq)
            acc[key] = acc.get(key, 0) + mult
            return
        if t == m:
            return
        x = j[t]
        new = x not in label
        lab = len(label) if new else label[x]
        rec(t + 1, r, mult)
        if new:
            label[x] = lab
        for i in range(1, r + 1):
            seq.append(lab)
            rec(t + 1, r - i, mult // fact[i])
        del seq[-r:]
        if new:
            del label[x]

    rec(0, k, fact[k])
    return {key: Fraction(w * fact[k - max(key)], fact[k]) for key, w in acc.items()}


# stage 2

def eliminate_singletons(k, a):
    """Stage 2: remove every partition that has a singleton block.

    Partitions are processed by decreasing block count, so a coarsening is
    always handled after everything finer than it.  For a partition S with a
    singleton, v = b[S] is subtracted from every strict coarsening and then
    b[S] is cleared.
    """
    b = dict(a)
    buckets = {}
    for S in b:
        buckets.setdefault(max(S) + 1, set()).add(S)
    for nb in range(k, 0, -1):
        for S in sorted(buckets.get(nb, ())):
            v = b.get(S, 0)
            if not v or min(block_sizes(S)) >= 2:
                continue
            for merge in set_partition_rgs(nb):
                if max(merge) + 1 == nb:
                    continue
                T = merge_rgs(S, merge)
                b[T] = b.get(T, 0) - v
                buckets.setdefault(max(T) + 1, set()).add(T)
            b[S] = 0
    return {S: v for S, v in b.items() if v}


# stage 3 (literal)

def push_permutations(k, b):
    """Stage 3: g[S'] += b[S] * weight(tau) where S' relabels S by tau^-1."""
    if k > LITERAL_MAX_K:
        raise ValueError(f"literal permutation stage limited to k <= {LITERAL_MAX_K}")
    g = {}
    for tau in permutations(range(k)):
        w = dynkin_weight(k, descents(tau))
        for S, v in b.items():
            # position tau^-1(p) of the new partition carries the label of p
            T = rgs_of(S[t] for t in tau)
            g[T] = g.get(T, 0) + v * w
    return {S: v for S, v in g.items() if v}


# stage 4

def _jacobi(P, A, B, v, gamma):
    """Resolve one M-type term; A, B are the block sizes at bracket positions 1, 2."""
    mx = P[0]
    if A == mx and B != mx:
        gamma[(P, B)] = gamma.get((P, B), 0) + v
    elif A != mx and B == mx:
        gamma[(P, A)] = gamma.get((P, A), 0) - v
    elif A != mx and B != mx:
        gamma[(P, A)] = gamma.get((P, A), 0) - v
        gamma[(P, B)] = gamma.get((P, B), 0) + v
    # both maximal: the term is equivalent to zero


def resolve_jacobi(k, g):
    """Stage 4: M-type sums to M-hat coefficients."""
    gamma = {}
    for S, v in g.items():
        sz = block_sizes(S)
        P = tuple(sorted(sz, reverse=True))
        _jacobi(P, sz[S[0]], sz[S[1]], v, gamma)
    return gamma


@lru_cache(maxsize=None)
def _descent_counts(r):
    """f[i][d]: permutations of r values that start with the (i+1)-th smallest and have d descents."""
    f = [[1]]
    for size in range(2, r + 1):
        prev = f
        cur = []
        for i in range(size):
            row = [0] * size
            for jj, pr in enumerate(prev):
                # the next value is smaller than the first exactly when jj < i
                shift = 1 if jj < i else 0
                for d, cnt in enumerate(pr):
                    if cnt:
                        row[d + shift] += cnt
            cur.append(row)
        f = cur
    return f


@lru_cache(maxsize=None)
def weight_table(k):
    """W[p][q] = sum of Dynkin weights over permutations starting with p, q."""
    W = [[Fraction(0)] * k for _ in range(k)]
    if k == 2:
        W[0][1] = dynkin_weight(2, 0)
        W[1][0] = dynkin_weight(2, 1)
        return tuple(tuple(r) for r in W)
    r = k - 2
    f = _descent_counts(r)
    for p in range(k):
        for qq in range(k):
            if p == qq:
                continue
            rest = [s for s in range(k) if s not in (p, qq)]
            base = int(p > qq)
            total = Fraction(0)
            for i, s in enumerate(rest):
                extra = base + int(qq > s)
                for d, cnt in enumerate(f[i]):
                    if cnt:
                        total += cnt * dynkin_weight(k, d + extra)
            W[p][qq] = total
    return tuple(tuple(r) for r in W)


def fused_stages(k, b):
    """Stages 3 and 4 together via the weight table."""
    W = weight_table(k)
    gamma = {}
    for S, v in b.items():
        sz = block_sizes(S)
        P = tuple(sorted(sz, reverse=True))
        for p in range(k):
            A = sz[S[p]]
            for qq in range(k):
                w = W[p][qq]
                if p != qq and w:
                    _jacobi(P, A, sz[S[qq]], v * w, gamma)
    return gamma


def _check_tuple(k, j):
    if not MIN_K <= k <= MAX_K:
        raise ValueError(f"k must lie in {MIN_K}..{MAX_K}")
    j = tuple(int(x) for x in j)
    if not j or any(not 1 <= x <= k + 1 for x in j):
        raise ValueError(f"tuple entries must lie in 1..{k + 1}")
    return j


def canonical_tuple(j):
    """Relabel letters by first appearance; gamma is invariant under relabeling."""
    return tuple(x + 1 for x in rgs_of(j))


def _cache_path(k, j, method):
    d = os.environ.get(CACHE_ENV)
    if not d:
        return None
    h = hashlib.sha256(f"{k}:{method}:{','.join(map(str, j))}".encode()).hexdigest()[:24]
    return os.path.join(d, f"gamma-k{k}-{h}.json")


def _cache_load(path, k, j):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, ValueError):
        return None
    if obj.get("tuple") != list(j):
        return None
    return GammaVector.from_json(obj["gamma"])


def _cache_store(path, j, gv):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump({"tuple": list(j), "gamma": gv.to_json()}, fh)
    os.replace(tmp, path)


def gamma_of_tuple(k, j, method="fused", use_cache=True):
    """Coefficients gamma_(P,c) of the symmetrized H_k sum for the tuple j."""
    j = _check_tuple(k, j)
    if k % 2 == 0:
        return GammaVector(k)
    if method not in ("fused", "literal"):
        raise ValueError("method must be 'fused' or 'literal'")
    cj = canonical_tuple(j)
    path = _cache_path(k, cj, method) if use_cache else None
    if path:
        hit = _cache_load(path, k, cj)
        if hit is not None:
            return hit
    b = eliminate_singletons(k, expand_compositions(k, cj))
    if method == "fused":
        gamma = fused_stages(k, b)
    else:
        gamma = resolve_jacobi(k, push_permutations(k, b))
    gv = GammaVector(k, gamma)
    if path:
        _cache_store(path, cj, gv)
    return gv


def _gamma_job(args):
    k, j = args
    return gamma_of_tuple(k, j)


def gammas(k, tuples, threads=1):
    """gamma_of_tuple over many tuples, optionally in worker processes."""
    tuples = [tuple(t) for t in tuples]
    if threads <= 1 or len(tuples) <= 1:
        return [gamma_of_tuple(k, t) for t in tuples]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(_gamma_job, [(k, t) for t in tuples]))


def identity_tuple(k):
    return tuple(range(1, k + 2))


# verification against tabulated data

@dataclass
class RowReport:
    name: str
    word: tuple
    computed: GammaVector
    printed: list
    pairs: list
    match: bool
    ratio: object
    extra: dict


@dataclass
class HkReport:
    k: int
    rows: list
    alphas: list
    relation: GammaVector
    relation_zero: bool
    uniform_ratio: object = None
    notes: list = field(default_factory=list)

    @property
    def coefficients_match(self):
        return all(r.match for r in self.rows)

    @property
    def passed(self):
        return self.coefficients_match and self.relation_zero


def _ratio(computed, printed):
    """printed/computed if it is one constant across all nonzero entries."""
    r = None
    for c, p in zip(computed, printed):
        if c == 0 and p == 0:
            continue
        if c == 0 or p == 0:
            return None
        x = p / c
        if r is None:
            r = x
        elif r != x:
            return None
    return r


def verify_hk(k, threads=1):
    """Recompute every tabulated gamma row for k in {5, 7, 9} and the alpha relation."""
    from .fixtures import HK_DATA

    if k not in HK_DATA:
        raise ValueError("tabulated data exists for k in 5, 7, 9")
    data = HK_DATA[k]
    pairs = data["pairs"]
    words = [w for _, w, _ in data["rows"]]
    computed = gammas(k, words, threads)
    rows = []
    for (name, word, printed), gv in zip(data["rows"], computed):
        printed = [q(x) for x in printed]
        got = [gv[pc] for pc in pairs]
        extra = {pc: v for pc, v in gv.coefficients.items() if pc not in pairs}
        rows.append(RowReport(name, word, gv, printed, pairs, got == printed and not extra,
                              _ratio(got, printed), extra))
    alphas = [q(a) for a in data["alphas"]]
    rel = computed[0]
    for a, gv in zip(alphas, computed[1:]):
        rel = rel + gv.scale(a)
    ratios = {r.ratio for r in rows}
    uniform = ratios.pop() if len(ratios) == 1 else None
    return HkReport(k, rows, alphas, rel, rel.is_zero(), uniform)


# certificate search

@dataclass
class SearchResult:
    status: str
    certificate: dict = None
    tried: int = 0
    elapsed: float = 0.0


def constant_multiplicity(k, word):
    """The common letter count p if every letter of 1..k+1 occurs p times, else None."""
    counts = [0] * (k + 2)
    for x in word:
        if not 1 <= x <= k + 1:
            return None
        counts[x] += 1
    ps = set(counts[1:])
    return ps.pop() if len(ps) == 1 and counts[1] > 0 else None


def sample_words(k, p, count, rng):
    """Uniform samples from the permutations of the multiset (1^p, ..., (k+1)^p)."""
    base = [x for x in range(1, k + 2) for _ in range(p)]
    out = []
    for _ in range(count):
        w = base[:]
        rng.shuffle(w)
        out.append(tuple(w))
    return out


def _solve(g0, gs):
    return in_nonneg_cone([-x for x in g0.vector()], [g.vector() for g in gs])


def conjecture_search(k, multiplicities=(2,), samples=10, seed=0, budget=None,
                      pool=(), threads=1):
    """Look for positive alphas making gamma(id) + sum alpha_s gamma(j_s) vanish.

    ``pool`` words are tried first, then ``samples`` random words for each
    multiplicity in turn.  A missing certificate is not a disproof.
    """
    start = time.monotonic()
    if k % 2 == 0 or not MIN_K <= k <= MAX_K:
        raise ValueError(f"k must be odd and lie in {MIN_K}..{MAX_K}")
    rng = random.Random(seed)
    candidates = [tuple(w) for w in pool]
    for p in multiplicities:
        if p < 1:
            raise ValueError("multiplicities must be positive")
        candidates.extend(sample_words(k, p, samples, rng))
    if not candidates:
        return SearchResult("insufficient samples")
    for w in candidates:
        if constant_multiplicity(k, w) is None:
            raise ValueError(f"word {w} does not use every letter equally often")

    def out_of_time():
        return budget is not None and time.monotonic() - start > budget

    g0 = gamma_of_tuple(k, identity_tuple(k))
    words, gs = [], []
    step = max(1, threads)
    for i in range(0, len(candidates), step):
        if out_of_time():
            return SearchResult("budget exhausted", tried=len(words),
                                elapsed=time.monotonic() - start)
        batch = candidates[i:i + step]
        words.extend(batch)
        gs.extend(gammas(k, batch, threads))
        alphas = _solve(g0, gs)
        if alphas is not None:
            used = [(w, a) for w, a in zip(words, alphas) if a > 0]
            cert = {"k": k, "words": [list(w) for w, _ in used],
                    "alphas": [fmt(a) for _, a in used], "seed": seed}
            return SearchResult("found", cert, len(words), time.monotonic() - start)
    return SearchResult("not found", tried=len(words), elapsed=time.monotonic() - start)


def _parse_certificate(k, cert):
    if not isinstance(cert, dict):
        raise CertificateError("certificate must be an object")
    for key in ("k", "words", "alphas"):
        if key not in cert:
            raise CertificateError(f"missing field {key!r}")
    if cert["k"] != k:
        raise CertificateError(f"certificate is for k={cert['k']}, expected {k}")
    words, alphas = cert["words"], cert["alphas"]
    if not isinstance(words, list) or not isinstance(alphas, list) or len(words) != len(alphas):
        raise CertificateError("words and alphas must be lists of equal length")
    parsed = []
    for w, a in zip(words, alphas):
        try:
            w = tuple(int(x) for x in w)
            a = q(a)
        except (TypeError, ValueError) as exc:
            raise CertificateError(f"bad entry: {exc}") from None
        if constant_multiplicity(k, w) is None:
            raise CertificateError(f"word {list(w)} does not use every letter equally often")
        parsed.append((w, a))
    return parsed


def check_certificate(k, cert):
    """Recompute every gamma from scratch and test the weighted sum for zero."""
    parsed = _parse_certificate(k, cert)
    if any(a <= 0 for _, a in parsed):
        return False
    total = gamma_of_tuple(k, identity_tuple(k), use_cache=False)
    for w, a in parsed:
        total = total + gamma_of_tuple(k, w, use_cache=False).scale(a)
    return total.is_zero()
