"""Exact feasibility LPs over Q, supports of integer cones, and cone membership.

Indices are 0-based throughout the library.
"""
from fractions import Fraction

from .exactq import clear_denominators, q


def solve_feasible(A, b):
    """Some x >= 0 with A x = b, or None.

    Phase-1 simplex on a dense tableau with one artificial per row, using
    Bland's rule for both the entering and the leaving variable.
    """
    m = len(A)
    b = [q(x) for x in b]
    if m == 0:
        return []
    n = len(A[0])
    T = []
    for i in range(m):
        row = [q(x) for x in A[i]]
        if len(row) != n:
            raise ValueError("ragged constraint matrix")
        rhs = b[i]
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(row + art + [rhs])
    width = n + m
    basis = [n + i for i in range(m)]
    # reduced costs of the phase-1 objective (sum of artificials)
    cost = [-sum(T[i][j] for i in range(m)) for j in range(n)] + [Fraction(0)] * m
    cost.append(-sum(T[i][width] for i in range(m)))
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                r = T[i][width] / a
                if best is None or r < best or (r == best and basis[i] < basis[leave]):
                    best, leave = r, i
        if leave is None:
            # cannot happen for a phase-1 objective bounded below by zero
            raise RuntimeError("unbounded phase-1 problem")
        piv = T[leave][enter]
        prow = [x / piv for x in T[leave]]
        T[leave] = prow
        for i in range(m):
            if i != leave:
                f = T[i][enter]
                if f:
                    T[i] = [x - f * y for x, y in zip(T[i], prow)]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, prow)]
        basis[leave] = enter
    if cost[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = T[i][width]
    return x


class HomogeneousSystem:
    """The rational solution space {l | E l = 0} in Q^K."""

    def __init__(self, K, equalities):
        self.K = K
        self.equalities = [tuple(q(x) for x in r) for r in equalities]
        if any(len(r) != K for r in self.equalities):
            raise ValueError("dimension mismatch")

    @classmethod
    def from_subspace(cls, V):
        return cls(V.ambient, V.annihilator())


def lp_feasible(system, i):
    """Some l >= 0 with E l = 0 and l_i = 1, or None."""
    K = system.K
    if not 0 <= i < K:
        raise IndexError("index out of range")
    unit = [Fraction(int(j == i)) for j in range(K)]
    A = list(system.equalities) + [unit]
    b = [Fraction(0)] * len(system.equalities) + [Fraction(1)]
    x = solve_feasible(A, b)
    if x is not None:
        assert all(v >= 0 for v in x) and x[i] == 1
    return x


def support(system):
    return frozenset(i for i in range(system.K) if lp_feasible(system, i) is not None)


def full_support_witness(system, S):
    """Integer vector in the cone whose support is exactly S, or None."""
    total = [Fraction(0)] * system.K
    for i in sorted(S):
        x = lp_feasible(system, i)
        if x is None:
            return None
        total = [a + b for a, b in zip(total, x)]
    w = clear_denominators(total)
    if {i for i, v in enumerate(w) if v} != set(S):
        return None
    return w


def in_nonneg_cone(target, generators):
    """Coefficients a >= 0 with sum a_s g_s = target, or None."""
    gens = [[q(x) for x in g] for g in generators]
    target = [q(x) for x in target]
    if not gens:
        return [] if not any(target) else None
    if any(len(g) != len(target) for g in gens):
        raise ValueError("dimension mismatch")
    if not any(target):
        return [Fraction(0)] * len(gens)
    A = [[g[r] for g in gens] for r in range(len(target))]
    return solve_feasible(A, target)
