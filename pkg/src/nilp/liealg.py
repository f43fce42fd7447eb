"""Brackets, left bracketings and the filtration spaces they span."""

from .exactq import span, zero_space
from .utgroup import LieElement


def bracket(x, y):
    if x.n != y.n:
        raise ValueError("dimension mismatch")
    return LieElement._raw(x.data @ y.data - y.data @ x.data)


def left_bracket(xs):
    """[...[[x1, x2], x3], ..., xk]."""
    xs = list(xs)
    acc = xs[0]
    for x in xs[1:]:
        acc = bracket(acc, x)
    return acc


def left_bracketings(H, k):
    """All |H|**k left bracketings of length k, in lexicographic index order."""
    if k < 1:
        raise ValueError("k must be >= 1")
    H = list(H)
    if k == 1:
        return H
    prev = left_bracketings(H, k - 1)
    return [bracket(p, h) for p in prev for h in H]


def _elements(s, n):
    return [LieElement.from_flat(v, n) for v in s.basis]


def bracket_span_chain(H, upto):
    """chain[k] = span([H]_k) for 1 <= k <= upto; chain[0] is None.

    Bilinearity lets each level be generated from a basis of the previous one.
    Once a level is zero the rest are filled with zero spaces.
    """
    H = list(H)
    n = H[0].n
    amb = n * n
    hs = span([h.flat() for h in H], amb)
    gens = _elements(hs, n)
    chain = [None, hs]
    while len(chain) <= max(upto, 2):
        top = chain[-1]
        if top.is_zero():
            chain.append(zero_space(amb))
        else:
            chain.append(span([bracket(x, h).flat() for x in _elements(top, n) for h in gens], amb))
    return chain


def default_max_class(n):
    return min(n - 1, 10) if n > 1 else 1


def filtration_space(H, k, max_class=None):
    """Span of all left bracketings of length between k and max_class."""
    H = list(H)
    n = H[0].n
    d = default_max_class(n) if max_class is None else max_class
    if k < 1 or k > d + 1:
        raise ValueError("need 1 <= k <= max_class + 1")
    amb = n * n
    if k == d + 1:
        return zero_space(amb)
    chain = bracket_span_chain(H, d)
    out = zero_space(amb)
    for i in range(k, d + 1):
        if i < len(chain):
            out = out.sum(chain[i])
    return out


def nested_filtration(H, depth, max_class=None):
    """S_0 = span(H), S_{j+1} = L>=2(basis of S_j); returns S_depth."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    H = list(H)
    n = H[0].n
    s = span([h.flat() for h in H], n * n)
    for _ in range(depth):
        if s.is_zero():
            break
        s = filtration_space(_elements(s, n), 2, max_class)
    return s


def subspace_elements(s, n):
    return _elements(s, n)
