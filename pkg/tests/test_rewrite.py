import random
from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest

import metabelian
from nilp.bch import compositions, descents, dynkin_weight
from nilp.fixtures import H5_WORD, H7_ALPHAS, H7_WORDS
from nilp.partitions import block_sizes, rgs_of
from nilp.rewrite import (CertificateError, GammaVector, _descent_counts, check_certificate,
                          conjecture_search, constant_multiplicity, eliminate_singletons,
                          expand_compositions, gamma_of_tuple, gammas, identity_tuple,
                          sample_words, verify_hk, weight_table)

K5_TUPLES = [identity_tuple(5), H5_WORD, (1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6), (2, 1, 3, 4, 6, 5)]
K7_TUPLES = [identity_tuple(7)] + H7_WORDS


def brute_stage1(k, j):
    out = {}
    for comp in compositions(k, len(j)):
        word = [x for x, i in zip(j, comp) for _ in range(i)]
        key = rgs_of(word)
        den = 1
        for i in comp:
            den *= factorial(i)
        out[key] = out.get(key, 0) + Fraction(factorial(k + 1 - (max(key) + 1)), den)
    return {s: v for s, v in out.items() if v}


def test_stage1_matches_direct_enumeration():
    for k, j in [(3, (1, 2, 3, 4)), (5, H5_WORD), (5, (1, 2, 1, 3, 2, 4, 5, 6)), (7, (1, 2, 3, 4, 5, 6, 7, 8))]:
        assert expand_compositions(k, j) == brute_stage1(k, j)


def test_stage2_leaves_no_singletons():
    b = eliminate_singletons(7, expand_compositions(7, H7_WORDS[1]))
    assert b
    assert all(min(block_sizes(s)) >= 2 for s in b)


def test_descent_count_table():
    for r in range(1, 7):
        f = _descent_counts(r)
        for i in range(r):
            counts = [0] * r
            for p in permutations(range(r)):
                if p[0] == i:
                    counts[descents(p)] += 1
            assert f[i] == counts


def test_weight_table_matches_permutation_sum():
    for k in range(2, 8):
        W = weight_table(k)
        brute = [[Fraction(0)] * k for _ in range(k)]
        for tau in permutations(range(k)):
            brute[tau[0]][tau[1]] += dynkin_weight(k, descents(tau))
        assert [list(r) for r in W] == brute


def test_literal_and_fused_paths_agree():
    for j in K5_TUPLES:
        assert gamma_of_tuple(5, j, "literal", False) == gamma_of_tuple(5, j, "fused", False)
    for j in K7_TUPLES[:2]:
        assert gamma_of_tuple(7, j, "literal", False) == gamma_of_tuple(7, j, "fused", False)


def test_k5_against_metabelian_model():
    for j in K5_TUPLES:
        g = gamma_of_tuple(5, j, use_cache=False)
        for seed in range(2):
            assert metabelian.agrees(5, j, g, seed)


def test_k7_against_metabelian_model():
    for j in K7_TUPLES:
        assert metabelian.agrees(7, j, gamma_of_tuple(7, j, use_cache=False))


def test_model_distinguishes_scalar_multiples():
    g = gamma_of_tuple(5, identity_tuple(5), use_cache=False)
    assert not g.is_zero()
    assert not metabelian.agrees(5, identity_tuple(5), g.scale(Fraction(-1, 2)))


def test_k3_has_no_admissible_pairs_so_gamma_vanishes():
    assert gamma_of_tuple(3, (1, 2, 3, 4)).is_zero()
    a, t = metabelian.point(3, random.Random(0))
    assert metabelian.symmetrized_h(3, (1, 2, 3, 4), a, t) == 0


def test_even_k_is_zero():
    assert gamma_of_tuple(4, (1, 2, 3, 4, 5)).is_zero()


def test_relabeling_does_not_change_gamma():
    j = (3, 1, 2, 4, 6, 5)
    assert gamma_of_tuple(5, j, use_cache=False) == gamma_of_tuple(5, identity_tuple(5), use_cache=False)


def test_tuple_validation():
    with pytest.raises(ValueError):
        gamma_of_tuple(5, (1, 2, 7))
    with pytest.raises(ValueError):
        gamma_of_tuple(13, (1, 2))
    with pytest.raises(ValueError):
        gamma_of_tuple(5, (1, 2), method="other")


def test_gamma_vector_json_round_trip():
    g = gamma_of_tuple(7, H7_WORDS[0], use_cache=False)
    assert GammaVector.from_json(g.to_json()) == g
    with pytest.raises(ValueError):
        GammaVector(5, {((4, 1), 1): 1})
    assert (g + g.scale(-1)).is_zero()


def test_disk_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("NILP_CACHE_DIR", str(tmp_path))
    g = gamma_of_tuple(5, H5_WORD)
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    assert gamma_of_tuple(5, H5_WORD) == g
    files[0].write_text("not json")
    assert gamma_of_tuple(5, H5_WORD) == g


def test_parallel_matches_sequential():
    assert gammas(5, K5_TUPLES, threads=2) == [gamma_of_tuple(5, j) for j in K5_TUPLES]


def test_constant_multiplicity_and_sampling():
    assert constant_multiplicity(5, H5_WORD) == 2
    assert constant_multiplicity(5, (1, 2, 3)) is None
    ws = sample_words(5, 2, 3, random.Random(1))
    assert all(constant_multiplicity(5, w) == 2 for w in ws)


def test_certificates():
    assert check_certificate(5, {"k": 5, "words": [list(H5_WORD)], "alphas": ["1"]})
    assert not check_certificate(5, {"k": 5, "words": [list(H5_WORD)], "alphas": ["2"]})
    assert not check_certificate(5, {"k": 5, "words": [list(H5_WORD)], "alphas": ["0"]})
    k7 = {"k": 7, "words": [list(w) for w in H7_WORDS], "alphas": [str(a) for a in H7_ALPHAS]}
    assert check_certificate(7, k7)
    k7["alphas"][0] = "1/16"
    assert not check_certificate(7, k7)


def test_malformed_certificates():
    with pytest.raises(CertificateError):
        check_certificate(5, {"k": 5, "words": [[1, 2]], "alphas": ["1"]})
    with pytest.raises(CertificateError):
        check_certificate(5, {"k": 7, "words": [], "alphas": []})
    with pytest.raises(CertificateError):
        check_certificate(5, {"k": 5, "words": [list(H5_WORD)]})
    with pytest.raises(CertificateError):
        check_certificate(5, {"k": 5, "words": [list(H5_WORD)], "alphas": ["x"]})


def test_search_finds_a_checkable_certificate():
    res = conjecture_search(5, samples=0, pool=[H5_WORD])
    assert res.status == "found"
    assert check_certificate(5, res.certificate)
    res = conjecture_search(5, samples=4, seed=3)
    if res.status == "found":
        assert check_certificate(5, res.certificate)


def test_search_statuses():
    assert conjecture_search(5, samples=0).status == "insufficient samples"
    assert conjecture_search(5, samples=2, budget=0).status == "budget exhausted"
    with pytest.raises(ValueError):
        conjecture_search(6)


def test_verify_report_structure():
    rep = verify_hk(5)
    assert [r.name for r in rep.rows] == ["id", "j1"]
    for r in rep.rows:
        assert r.computed == gamma_of_tuple(5, r.word)
        assert not r.extra
    assert rep.relation_zero
