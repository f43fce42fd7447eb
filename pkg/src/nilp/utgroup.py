"""Unitriangular rational matrices and their Lie algebra of strictly upper matrices."""
from fractions import Fraction

from .exactq import QMatrix, fmt


class UTMatrix:
    """Element of UT(n, Q): upper triangular with ones on the diagonal."""

    __slots__ = ("n", "data")

    def __init__(self, m):
        if not isinstance(m, QMatrix):
            m = QMatrix(m)
        if m.rows != m.cols:
            raise ValueError("matrix must be square")
        for i in range(m.rows):
            if m[i, i] != 1:
                raise ValueError(f"entry ({i + 1},{i + 1}) is {fmt(m[i, i])}, expected 1")
            for j in range(i):
                if m[i, j] != 0:
                    raise ValueError(f"entry ({i + 1},{j + 1}) is {fmt(m[i, j])}, expected 0")
        self.n = m.rows
        self.data = m

    @classmethod
    def identity(cls, n):
        return cls(QMatrix.identity(n))

    def __eq__(self, other):
        return isinstance(other, UTMatrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return f"UTMatrix({self.data.to_json()})"

    def __matmul__(self, other):
        return mul(self, other)

    def is_identity(self):
        return self.data == QMatrix.identity(self.n)

    def inverse(self):
        return expm(-logm(self))


class LieElement:
    """Element of u(n): strictly upper triangular."""

    __slots__ = ("n", "data")

    def __init__(self, m):
        if not isinstance(m, QMatrix):
            m = QMatrix(m)
        if m.rows != m.cols:
            raise ValueError("matrix must be square")
        for i in range(m.rows):
            for j in range(i + 1):
                if m[i, j] != 0:
                    raise ValueError(f"entry ({i + 1},{j + 1}) is {fmt(m[i, j])}, expected 0")
        self.n = m.rows
        self.data = m

    @classmethod
    def _raw(cls, m):
        x = object.__new__(cls)
        x.n = m.rows
        x.data = m
        return x

    @classmethod
    def zero(cls, n):
        return cls._raw(QMatrix.zeros(n, n))

    @classmethod
    def from_flat(cls, vec, n):
        return cls(QMatrix.from_flat(vec, n, n))

    def flat(self):
        return self.data.flat()

    def is_zero(self):
        return self.data.is_zero()

    def __eq__(self, other):
        return isinstance(other, LieElement) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return f"LieElement({self.data.to_json()})"

    def __add__(self, other):
        return LieElement._raw(self.data + other.data)

    def __sub__(self, other):
        return LieElement._raw(self.data - other.data)

    def __neg__(self):
        return LieElement._raw(-self.data)

    def scale(self, c):
        return LieElement._raw(self.data.scale(c))

    def __rmul__(self, c):
        return self.scale(c)


def _check_dim(a, b):
    if a.n != b.n:
        raise ValueError("dimension mismatch")


def mul(a, b):
    _check_dim(a, b)
    u = object.__new__(UTMatrix)
    u.n = a.n
    u.data = a.data @ b.data
    return u


def pow(a, e):
    """a**e by repeated squaring; negative e uses the inverse."""
    if e < 0:
        a, e = a.inverse(), -e
    result = UTMatrix.identity(a.n)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def product(mats):
    mats = list(mats)
    out = mats[0]
    for m in mats[1:]:
        out = mul(out, m)
    return out


def logm(a):
    """Truncated log series; (A - I)^n = 0 makes it exact."""
    n = a.n
    x = a.data - QMatrix.identity(n)
    total = QMatrix.zeros(n, n)
    term = x
    for k in range(1, n):
        total = total + term.scale(Fraction((-1) ** (k - 1), k))
        term = term @ x
    return LieElement._raw(total)


def expm(x):
    n = x.n
    total = QMatrix.identity(n)
    term = QMatrix.identity(n)
    for k in range(1, n):
        term = (term @ x.data).scale(Fraction(1, k))
        total = total + term
    u = object.__new__(UTMatrix)
    u.n = n
    u.data = total
    return u


def nilpotency_class(gens):
    """Least d >= 1 such that every (d+1)-fold left bracketing of the logs vanishes."""
    from .liealg import bracket_span_chain

    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise ValueError("dimension mismatch")
    chain = bracket_span_chain([logm(g) for g in gens], n)
    d = 1
    while d + 1 < len(chain) and not chain[d + 1].is_zero():
        d += 1
    return d


def random_lie(n, rng, lo=-2, hi=2, denominators=(1,)):
    """Strictly upper triangular matrix with entries a/b, a in lo..hi, b from denominators."""
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m[i][j] = Fraction(rng.randint(lo, hi), rng.choice(denominators))
    return LieElement(m)


def random_ut(n, rng, lo=-2, hi=2, denominators=(1,)):
    """Unitriangular matrix with random entries above the diagonal."""
    x = random_lie(n, rng, lo, hi, denominators)
    m = [list(r) for r in x.data.data]
    for i in range(n):
        m[i][i] = Fraction(1)
    return UTMatrix(m)
