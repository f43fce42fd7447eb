from itertools import permutations

import pytest
import sympy
import sympy.utilities.iterables as symit
from hypothesis import given
from hypothesis import strategies as st

from nilp.fixtures import (COARSENING_EXAMPLE, COARSENING_EXAMPLE_COUNT, H9_PAIRS,
                           SET_PARTITION_EXAMPLE)
from nilp.partitions import (SetPartition, admissible_pairs, apply_permutation,
                             associated_integer_partition, associated_set_partition, bell,
                             coarsenings, integer_partitions, set_partition_rgs, set_partitions,
                             singleton_free_count)

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]


def test_bell_numbers():
    assert [bell(n) for n in range(11)] == BELL
    for n in range(1, 8):
        assert len(set_partitions(n)) == bell(n)


def test_set_partitions_match_sympy():
    for n in range(1, 7):
        ours = {SetPartition(p.blocks) for p in set_partitions(n)}
        theirs = {SetPartition([[x + 1 for x in b] for b in p])
                  for p in symit.multiset_partitions(list(range(n)))}
        assert ours == theirs


def test_integer_partitions_match_sympy():
    for k in range(1, 12):
        ours = list(integer_partitions(k))
        assert len(ours) == sympy.partition(k)
        assert ours == sorted(ours, reverse=True)


def test_associated_maps():
    j, blocks, shape = SET_PARTITION_EXAMPLE
    s = associated_set_partition(j)
    assert s == SetPartition(blocks)
    assert associated_integer_partition(s) == shape
    assert repr(s) == "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in blocks) + "}"


def test_rgs_round_trip():
    for r in set_partition_rgs(5):
        assert SetPartition.from_rgs(r).rgs == r


def test_invalid_partitions():
    with pytest.raises(ValueError):
        SetPartition([[1, 2], [2, 3]])
    with pytest.raises(ValueError):
        SetPartition([[1], [3]])
    with pytest.raises(ValueError):
        apply_permutation(SetPartition([[1, 2]]), (1, 1))


def test_coarsening_example():
    s = SetPartition(COARSENING_EXAMPLE)
    cs = coarsenings(s)
    assert len(cs) == COARSENING_EXAMPLE_COUNT
    assert cs[0] == s
    assert all(c.is_coarsening_of(s) for c in cs)
    # finest first
    assert [len(c) for c in cs] == sorted((len(c) for c in cs), reverse=True)


@given(st.integers(1, 5), st.data())
def test_coarsening_is_a_partial_order(n, data):
    parts = set_partitions(n)
    a, b, c = (data.draw(st.sampled_from(parts)) for _ in range(3))
    assert a.is_coarsening_of(a)
    if a.is_coarsening_of(b) and b.is_coarsening_of(a):
        assert a == b
    if a.is_coarsening_of(b) and b.is_coarsening_of(c):
        assert a.is_coarsening_of(c)


def test_coarsenings_are_exactly_the_coarser_partitions():
    for s in set_partitions(5):
        expect = {t for t in set_partitions(5) if t.is_coarsening_of(s)}
        assert set(coarsenings(s)) == expect
        assert len(coarsenings(s)) == bell(len(s))


def test_apply_permutation():
    s = SetPartition([[1, 2], [3]])
    assert apply_permutation(s, (3, 1, 2)) == SetPartition([[3, 1], [2]])
    for tau in permutations(range(1, 5)):
        t = apply_permutation(SetPartition([[1, 3], [2, 4]]), tau)
        assert associated_integer_partition(t) == (2, 2)


def test_admissible_pairs_small_k():
    assert admissible_pairs(3) == []
    assert admissible_pairs(5) == [((3, 2), 2)]
    assert admissible_pairs(7) == [((5, 2), 2), ((4, 3), 3), ((3, 2, 2), 2)]


def test_admissible_pairs_k9():
    pairs = admissible_pairs(9)
    assert len(pairs) == 7
    assert set(H9_PAIRS) < set(pairs)
    assert set(pairs) - set(H9_PAIRS) == {((3, 2, 2, 2), 2)}


def test_admissible_pairs_brute_force():
    for k in range(2, 12):
        expect = {(P, c) for P in integer_partitions(k) if min(P) >= 2
                  for c in set(P) if c != max(P)}
        assert set(admissible_pairs(k)) == expect
        assert len(admissible_pairs(k)) == len(expect)


def test_singleton_free_count_brute_force():
    for k in range(0, 8):
        direct = sum(1 for r in set_partition_rgs(k) if all(r.count(x) >= 2 for x in set(r)))
        assert singleton_free_count(k) == direct
