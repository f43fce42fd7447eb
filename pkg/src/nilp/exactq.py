"""Exact rational scalars, dense matrices and subspaces.

All arithmetic uses :class:`fractions.Fraction`.  Matrices are flattened
row-major whenever they are viewed as vectors, so the (i, j) entry of an
n x n matrix sits at index ``i * n + j``.
"""
from fractions import Fraction
from math import lcm

Rat = Fraction


def q(x):
    """Coerce an int, Fraction or "p/q" string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        s = x.strip()
        if not s or any(c.isspace() for c in s):
            raise ValueError(f"bad rational {x!r}")
        return Fraction(s)
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot read {type(x).__name__} as a rational")


def fmt(x):
    x = q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class QMatrix:
    """Immutable dense matrix over Q."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, entries):
        data = tuple(tuple(q(x) for x in row) for row in entries)
        if not data:
            raise ValueError("matrix needs at least one row")
        cols = len(data[0])
        if any(len(r) != cols for r in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, name, value):
        raise AttributeError("QMatrix is immutable")

    @classmethod
    def _raw(cls, data):
        # trusted constructor: data is already a tuple of Fraction tuples
        m = object.__new__(cls)
        object.__setattr__(m, "data", data)
        object.__setattr__(m, "rows", len(data))
        object.__setattr__(m, "cols", len(data[0]) if data else 0)
        return m

    @classmethod
    def zeros(cls, rows, cols):
        z = Fraction(0)
        return cls._raw(tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n):
        return cls._raw(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def from_flat(cls, vec, rows, cols):
        if len(vec) != rows * cols:
            raise ValueError("length does not match shape")
        v = [q(x) for x in vec]
        return cls._raw(tuple(tuple(v[i * cols:(i + 1) * cols]) for i in range(rows)))

    def flat(self):
        return tuple(x for row in self.data for x in row)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(fmt(x) for x in r) + "]" for r in self.data)
        return f"QMatrix([{body}])"

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")

    def __add__(self, other):
        self._same_shape(other)
        return QMatrix._raw(tuple(tuple(a + b for a, b in zip(r, s))
                                  for r, s in zip(self.data, other.data)))

    def __sub__(self, other):
        self._same_shape(other)
        return QMatrix._raw(tuple(tuple(a - b for a, b in zip(r, s))
                                  for r, s in zip(self.data, other.data)))

    def __neg__(self):
        return QMatrix._raw(tuple(tuple(-a for a in r) for r in self.data))

    def scale(self, c):
        c = q(c)
        return QMatrix._raw(tuple(tuple(c * a for a in r) for r in self.data))

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.data))
        out = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append(tuple(sum((a * c[k] for k, a in nz), Fraction(0)) for c in cols))
        return QMatrix._raw(tuple(out))

    def transpose(self):
        return QMatrix._raw(tuple(zip(*self.data)))

    def is_zero(self):
        return not any(any(r) for r in self.data)

    def to_json(self):
        return [[fmt(x) for x in r] for r in self.data]


def _rref_rows(rows, ncols):
    """Reduce a list of mutable Fraction rows in place; return (nonzero rows, pivots)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        pr = [x * inv for x in rows[r]]
        rows[r] = pr
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for j in range(c, ncols):
                        if pr[j]:
                            ri[j] -= f * pr[j]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(x) for x in rows[:r]], pivots


def rref(m):
    """Reduced row-echelon form of ``m``, same shape, zero rows at the bottom."""
    basis, _ = _rref_rows(m.data, m.cols)
    z = (Fraction(0),) * m.cols
    return QMatrix._raw(tuple(basis) + (z,) * (m.rows - len(basis)))


def rank(m):
    return len(_rref_rows(m.data, m.cols)[1])


class Subspace:
    """A subspace of Q^ambient stored by its canonical RREF basis."""

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient, basis, pivots):
        self.ambient = ambient
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(ambient={self.ambient}, dim={self.dim})"

    def _check(self, other):
        if self.ambient != other.ambient:
            raise ValueError("dimension mismatch")

    def reduce(self, v):
        """Residual of ``v`` after eliminating the pivot coordinates."""
        v = [q(x) for x in v]
        if len(v) != self.ambient:
            raise ValueError("dimension mismatch")
        for row, c in zip(self.basis, self.pivots):
            f = v[c]
            if f:
                for j, x in enumerate(row):
                    if x:
                        v[j] -= f * x
        return v

    def contains(self, v):
        return not any(self.reduce(v))

    def coordinates(self, v):
        """Coefficients of ``v`` in the basis, or None when v is outside."""
        if not self.contains(v):
            return None
        return [q(v[c]) for c in self.pivots]

    def sum(self, other):
        self._check(other)
        return span(self.basis + other.basis, self.ambient)

    def annihilator(self):
        """Rows y with y . b = 0 for every basis vector b."""
        if not self.basis:
            return [tuple(Fraction(int(i == j)) for j in range(self.ambient))
                    for i in range(self.ambient)]
        return list(_null_basis(self.basis, self.pivots, self.ambient))

    def intersect(self, other):
        self._check(other)
        cons = self.annihilator() + other.annihilator()
        return kernel_of_rows(cons, self.ambient)

    def is_subspace_of(self, other):
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    def is_zero(self):
        return not self.basis


def span(vectors, ambient):
    vs = [tuple(q(x) for x in v) for v in vectors]
    if any(len(v) != ambient for v in vs):
        raise ValueError("dimension mismatch")
    basis, piv = _rref_rows(vs, ambient)
    return Subspace(ambient, basis, piv)


def zero_space(ambient):
    return Subspace(ambient, (), ())


def full_space(ambient):
    return span([[int(i == j) for j in range(ambient)] for i in range(ambient)], ambient)


def contains(s, v):
    return s.contains(v)


def _null_basis(basis, pivots, ncols):
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(basis, pivots):
            v[c] = -row[f]
        out.append(tuple(v))
    return out


def kernel_of_rows(rows, ncols):
    basis, piv = _rref_rows(rows, ncols)
    return span(_null_basis(basis, piv, ncols), ncols)


def kernel(m):
    """{x | m x = 0} as a subspace of Q^cols."""
    return kernel_of_rows(m.data, m.cols)


def image(m):
    """Column space of ``m`` as a subspace of Q^rows."""
    return span(m.transpose().data, m.rows)


def preimage(m, s):
    """{x | m x lies in s}."""
    if m.rows != s.ambient:
        raise ValueError("dimension mismatch")
    ann = s.annihilator()
    if not ann:
        return full_space(m.cols)
    cons = (QMatrix._raw(tuple(ann)) @ m).data
    return kernel_of_rows(cons, m.cols)


def clear_denominators(v):
    """Smallest positive integer multiple of a rational vector with integer entries."""
    d = 1
    for x in v:
        d = lcm(d, q(x).denominator)
    return [int(q(x) * d) for x in v]
