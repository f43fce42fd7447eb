import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import nilp.bch as bch
from nilp.bch import (GuardError, bch_log, bch_term, check_antisymmetry, check_bch,
                      check_h3_identity, check_lieperm, descents, dynkin_phi, h2_explicit,
                      h3_explicit, identity_suite, mu, mu_table)
from nilp.liealg import bracket
from nilp.utgroup import UTMatrix, logm, product, random_lie, random_ut

seeds = st.integers(0, 10_000)


def lie(rng, n=5):
    return random_lie(n, rng, -3, 3, (1, 2, 3))


def test_descents():
    assert descents((1, 2, 3)) == 0
    assert descents((3, 1, 2)) == 1
    assert descents((4, 3, 2, 1)) == 3


def test_mu_table_small_cases():
    assert mu_table(2) == {(1, 2): 1, (2, 1): -1}
    t = mu_table(3)
    assert t[(1, 2, 3)] == 1 and t[(3, 1, 2)] == -1 and t[(2, 1, 3)] == -1
    assert t[(1, 3, 2)] == 0
    assert mu(3, (3, 2, 1)) == 1
    with pytest.raises(ValueError):
        mu(3, (1, 1, 2))


@given(st.integers(2, 7))
def test_mu_weights_are_signs_on_a_support_of_size_two_to_the_k_minus_one(k):
    vals = mu_table(k).values()
    assert set(vals) <= {-1, 0, 1}
    assert sum(1 for v in vals if v) == 2 ** (k - 1)


@given(seeds)
def test_h2_and_h3_match_closed_forms(seed):
    rng = random.Random(seed)
    C = [lie(rng) for _ in range(rng.randint(2, 4))]
    assert bch_term(2, C) == h2_explicit(C)
    assert bch_term(3, C) == h3_explicit(C)


def test_h2_of_two_arguments():
    rng = random.Random(3)
    x, y = lie(rng), lie(rng)
    assert bch_term(2, [x, y]) == bracket(x, y).scale(Fraction(1, 2))


@given(seeds, st.integers(1, 4), st.integers(2, 5))
def test_bch_reproduces_log_of_product(seed, m, n):
    rng = random.Random(seed)
    Bs = [random_ut(n, rng, -3, 3, (1, 2)) for _ in range(m)]
    assert bch_log(Bs) == logm(product(Bs))
    assert check_bch(Bs)


def test_dynkin_phi_vanishes_on_a_repeated_argument():
    x = lie(random.Random(0))
    assert dynkin_phi(3, [x, x, x]).is_zero()


@given(seeds)
def test_lieperm_identity(seed):
    rng = random.Random(seed)
    for k in (2, 3):
        assert check_lieperm(k, [lie(rng) for _ in range(k + rng.randint(0, 1))])


def test_lieperm_identity_at_k4():
    rng = random.Random(11)
    for _ in range(3):
        assert check_lieperm(4, [lie(rng) for _ in range(4)])


@given(seeds)
def test_even_terms_are_antisymmetric_under_reversal(seed):
    rng = random.Random(seed)
    assert check_antisymmetry(2, [lie(rng) for _ in range(3)])
    assert check_antisymmetry(4, [lie(rng) for _ in range(2)])


@given(seeds, st.integers(2, 4))
def test_symmetrized_h3(seed, m):
    rng = random.Random(seed)
    assert check_h3_identity([lie(rng, 4) for _ in range(m)])


def test_guards():
    x = lie(random.Random(1))
    with pytest.raises(GuardError):
        check_lieperm(5, [x] * 5)
    with pytest.raises(GuardError):
        bch_term(10, [x, x])
    with pytest.raises(GuardError):
        check_h3_identity([x] * 5)
    with pytest.raises(ValueError):
        check_antisymmetry(3, [x, x])


def test_identity_suite_is_deterministic_and_green():
    a = identity_suite(seed=5, trials=2)
    b = identity_suite(seed=5, trials=2)
    assert all(a)
    assert [r.inputs for r in a] == [r.inputs for r in b]
    with pytest.raises(ValueError):
        identity_suite(trials=0)


def test_a_broken_term_is_caught_with_a_counterexample(monkeypatch):
    real = bch.bch_term

    def broken(k, C):
        out = real(k, C)
        return out.scale(2) if k == 2 else out

    monkeypatch.setattr(bch, "bch_term", broken)
    a = UTMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    b = UTMatrix([[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    res = check_bch([a, b])
    assert not res
    assert "difference" in res.report()
