import random
from collections import Counter

import pytest

from tricosine.gf2 import Quotient
from tricosine.rm import (anchor_words, anf, build_rm, coset_clean_count, defect, degree,
                          affine_flat, clean_weights, is_clean, trace_of_sign)


def test_dimensions():
    assert build_rm(1, 4).dim == 5
    assert build_rm(2, 4).dim == 11
    assert build_rm(2, 5).dim == 16
    assert all(w in build_rm(2, 4) for w in build_rm(1, 4).space.basis)


def test_weights():
    assert set(Counter(w.bit_count() for w in build_rm(1, 4))) == {0, 8, 16}
    assert set(Counter(w.bit_count() for w in build_rm(2, 4))) == {0, 4, 6, 8, 10, 12, 16}


def test_bad_parameters():
    with pytest.raises(ValueError):
        build_rm(3, 2)
    with pytest.raises(ValueError):
        build_rm(1, 7)


def test_degree_matches_membership():
    rm2 = build_rm(2, 4)
    for w in rm2:
        assert degree(w, 4) <= 2
    assert degree(1, 4) == 4  # a point has full degree


def test_defect_examples():
    rm2 = build_rm(2, 4)
    for a in build_rm(1, 4):
        assert defect(rm2, a).k == 0
    plane = affine_flat((1, 2), 0)
    assert plane.bit_count() == 4 and defect(rm2, plane).k == 1 and defect(rm2, plane).clean
    with pytest.raises(ValueError):
        defect(rm2, 1)


def test_exhaustive_weight_law_and_counts():
    rm2, rm1 = build_rm(2, 4), build_rm(1, 4)
    anchor = anchor_words(4)
    for a in rm2:
        c = defect(rm2, a)
        w = a.bit_count()
        if c.k:
            if c.clean:
                assert w in clean_weights(4, c.k)
            else:
                assert w == 8
            assert coset_clean_count(rm2, a, anchor) == 4 ** c.k
        if w in (6, 10):
            assert c.k == 2
        if w in (4, 12):
            assert c.k == 1
    reps = [r for r in Quotient(rm2.space, rm1.space).reps() if r]
    counts = Counter(defect(rm2, r).k for r in reps)
    assert counts == {1: 35, 2: 28}


def test_defect_constant_on_cosets():
    rm2, rm1 = build_rm(2, 4), list(build_rm(1, 4))
    for a in rm2:
        k = defect(rm2, a).k
        assert all(defect(rm2, a ^ l).k == k for l in rm1[::5])


def test_d5_sampled():
    rm2, rm1 = build_rm(2, 5), list(build_rm(1, 5))
    words = list(rm2)
    rng = random.Random(5)
    anchor = anchor_words(5)
    for a in rng.sample(words, 60):
        c = defect(rm2, a)
        assert defect(rm2, a ^ rng.choice(rm1)).k == c.k
        if c.k:
            assert coset_clean_count(rm2, a, anchor) == 4 ** c.k
            assert is_clean(a, 5) == (a.bit_count() != 16)


def test_trace():
    assert trace_of_sign(0, 4) == 16
    assert trace_of_sign(0xFF, 4) == 0
    assert trace_of_sign(0b111111, 4) == 4


def test_anf_roundtrip():
    rng = random.Random(3)
    for _ in range(50):
        w = rng.randrange(1 << 16)
        assert anf(anf(w, 4), 4) == w
