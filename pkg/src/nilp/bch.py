"""BCH terms via Dynkin's formula, descent statistics, and exact identity checks.

Permutations are tuples in one-line notation over 1..k.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial

from .liealg import bracket, left_bracket
from .utgroup import LieElement, expm, logm, product, random_lie, random_ut

MAX_K = 9
MAX_LIEPERM_K = 4
MAX_COMPOSITIONS = 200_000


class GuardError(ValueError):
    """Raised when a direct evaluation would be too large."""


@dataclass
class CheckResult:
    ok: bool
    name: str
    inputs: list = field(default_factory=list)
    difference: object = None

    def __bool__(self):
        return self.ok

    def report(self):
        if self.ok:
            return f"{self.name}: ok"
        lines = [f"{self.name}: FAILED"]
        for i, c in enumerate(self.inputs, 1):
            lines.append(f"  C{i} = {c.data.to_json()}")
        if self.difference is not None:
            lines.append(f"  difference = {self.difference.data.to_json()}")
        return "\n".join(lines)


def descents(p):
    return sum(1 for a, b in zip(p, p[1:]) if a > b)


def _check_perm(k, p):
    if len(p) != k or sorted(p) != list(range(1, k + 1)):
        raise ValueError(f"{p!r} is not a permutation of 1..{k}")


@lru_cache(maxsize=None)
def mu_table(k):
    """Map from every permutation of 1..k to its integer weight."""
    if k < 2 or k > 10:
        raise ValueError("k must lie in 2..10")
    if k == 2:
        return {(1, 2): 1, (2, 1): -1}
    prev = mu_table(k - 1)
    table = {}
    for p in permutations(range(1, k + 1)):
        if p[-1] == k:
            table[p] = prev[p[:-1]]
        elif p[0] == k:
            # p composed with the cycle 1 -> 2 -> ... -> k -> 1
            table[p] = -prev[p[1:]]
        else:
            table[p] = 0
    return table


def mu(k, p):
    p = tuple(p)
    _check_perm(k, p)
    return mu_table(k)[p]


def dynkin_weight(k, d):
    return Fraction((-1) ** d, k * k * comb(k - 1, d))


@lru_cache(maxsize=None)
def _dynkin_terms(k):
    return [(tuple(i - 1 for i in p), dynkin_weight(k, descents(p)))
            for p in permutations(range(1, k + 1))]


def _guard_k(k):
    if k < 2 or k > MAX_K:
        raise GuardError(f"k={k} outside the supported range 2..{MAX_K}")


def dynkin_phi(k, X):
    """Descent-weighted sum of left-nested brackets over all orderings of X."""
    _guard_k(k)
    X = list(X)
    if len(X) != k:
        raise ValueError("need exactly k arguments")
    n = X[0].n
    total = LieElement.zero(n)
    if all(x == X[0] for x in X):
        return total
    # group orderings by the sequence of distinct arguments they produce
    reps, cls = [], []
    for x in X:
        if x not in reps:
            reps.append(x)
        cls.append(reps.index(x))
    weights = {}
    for idx, w in _dynkin_terms(k):
        key = tuple(cls[i] for i in idx)
        if key[0] != key[1]:
            weights[key] = weights.get(key, 0) + w
    prefix = {(c,): x for c, x in enumerate(reps)}

    def nested(key):
        if key not in prefix:
            prefix[key] = bracket(nested(key[:-1]), reps[key[-1]])
        return prefix[key]

    for key, w in weights.items():
        if w:
            total = total + nested(key).scale(w)
    return total


def compositions(k, m):
    """All (i_1, ..., i_m) of nonnegative integers with sum k."""
    if m == 1:
        yield (k,)
        return
    for i in range(k, -1, -1):
        for rest in compositions(k - i, m - 1):
            yield (i,) + rest


def bch_term(k, C):
    """H_k(C_1, ..., C_m) by Dynkin's formula."""
    C = list(C)
    if not C:
        raise ValueError("need at least one argument")
    n = C[0].n
    if k == 1:
        total = LieElement.zero(n)
        for c in C:
            total = total + c
        return total
    _guard_k(k)
    m = len(C)
    if comb(m + k - 1, k) > MAX_COMPOSITIONS:
        raise GuardError(f"too many compositions for k={k}, m={m}")
    total = LieElement.zero(n)
    for comp in compositions(k, m):
        if sum(1 for i in comp if i) < 2:
            continue
        X = []
        den = 1
        for c, i in zip(C, comp):
            X.extend([c] * i)
            den *= factorial(i)
        total = total + dynkin_phi(k, X).scale(Fraction(1, den))
    return total


def bch_log(Bs, max_k=None):
    """log(B_1 ... B_m) as sum of H_k(log B_1, ..., log B_m) for k up to n - 1."""
    Bs = list(Bs)
    n = Bs[0].n
    top = n - 1 if max_k is None else max_k
    logs = [logm(b) for b in Bs]
    total = bch_term(1, logs)
    for k in range(2, top + 1):
        total = total + bch_term(k, logs)
    return total


def h2_explicit(C):
    C = list(C)
    total = LieElement.zero(C[0].n)
    for i in range(len(C)):
        for j in range(i + 1, len(C)):
            total = total + bracket(C[i], C[j])
    return total.scale(Fraction(1, 2))


def h3_explicit(C):
    C = list(C)
    m = len(C)
    total = LieElement.zero(C[0].n)
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                total = (total + bracket(C[i], bracket(C[j], C[k])).scale(Fraction(1, 3))
                         + bracket(bracket(C[i], C[k]), C[j]).scale(Fraction(1, 6)))
    for i in range(m):
        for j in range(i + 1, m):
            t = bracket(C[i], bracket(C[i], C[j])) + bracket(bracket(C[i], C[j]), C[j])
            total = total + t.scale(Fraction(1, 12))
    return total


def _result(name, C, lhs, rhs):
    diff = lhs - rhs
    return CheckResult(diff.is_zero(), name, list(C), None if diff.is_zero() else diff)


def check_lieperm(k, C):
    """Left-nested bracket of C_1..C_k against the mu-weighted sum of permuted H_k."""
    C = list(C)
    if k < 2 or k > MAX_LIEPERM_K:
        raise GuardError(f"k={k} outside 2..{MAX_LIEPERM_K}")
    if len(C) < k:
        raise ValueError("need at least k arguments")
    lhs = left_bracket(C[:k])
    rhs = LieElement.zero(C[0].n)
    for p, w in mu_table(k).items():
        if w:
            args = [C[i - 1] for i in p] + C[k:]
            rhs = rhs + bch_term(k, args).scale(w)
    return _result(f"lieperm k={k}", C, lhs, rhs)


def check_antisymmetry(k, C):
    if k % 2:
        raise ValueError("k must be even")
    C = list(C)
    lhs = bch_term(k, C)
    rhs = -bch_term(k, C[::-1])
    return _result(f"antisymmetry k={k}", C, lhs, rhs)


def check_h3_identity(C):
    """Symmetrized H_3 against m!/12 * sum_i [C_i, [C_i, sum_j C_j]]."""
    C = list(C)
    m = len(C)
    if m > 4:
        raise GuardError("m must be at most 4")
    n = C[0].n
    lhs = LieElement.zero(n)
    for p in permutations(range(m)):
        lhs = lhs + bch_term(3, [C[i] for i in p])
    s = LieElement.zero(n)
    for c in C:
        s = s + c
    rhs = LieElement.zero(n)
    for c in C:
        rhs = rhs + bracket(c, bracket(c, s))
    rhs = rhs.scale(Fraction(factorial(m), 12))
    return _result(f"symmetrized H3 m={m}", C, lhs, rhs)


def check_bch(Bs):
    """log of the product against the truncated BCH expansion."""
    Bs = list(Bs)
    lhs = logm(product(Bs))
    rhs = bch_log(Bs)
    return _result(f"BCH m={len(Bs)}", [logm(b) for b in Bs], lhs, rhs)


def _check_roundtrip(a, x):
    ok = expm(logm(a)) == a and logm(expm(x)) == x
    return CheckResult(ok, f"exp/log round trip n={a.n}", [logm(a), x])


def _check_jacobi(x, y, z):
    s = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    return CheckResult(s.is_zero(), "Jacobi", [x, y, z], None if s.is_zero() else s)


def identity_suite(seed=0, trials=20):
    """Run every exact identity check on ``trials`` seeded random inputs each."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    dens = (1, 1, 2, 3)
    lie = lambda n: random_lie(n, rng, -3, 3, dens)
    results = []
    for _ in range(trials):
        n = rng.randint(2, 6)
        results.append(_check_roundtrip(random_ut(n, rng, -3, 3, dens), lie(n)))
        results.append(_check_jacobi(lie(5), lie(5), lie(5)))
        for k in (2, 4):
            results.append(check_antisymmetry(k, [lie(5) for _ in range(rng.randint(2, 3))]))
        for k in (2, 3, 4):
            results.append(check_lieperm(k, [lie(5) for _ in range(k)]))
        for m in (2, 3, 4):
            results.append(check_h3_identity([lie(4) for _ in range(m)]))
        length = rng.randint(1, 4)
        results.append(check_bch([random_ut(4, rng, -3, 3, dens) for _ in range(length)]))
    return results
