import random

import pytest
from hypothesis import given, settings, strategies as st

from tricosine.gf2 import (GF2Matrix, GF2Subspace, Quotient, coset_reps, mat_inverse, nullspace,
                           quotient_coords, rank, rref, solve, span)
from tricosine.rm import build_rm


def brute_span(vectors):
    out = {0}
    for v in vectors:
        out |= {x ^ v for x in out}
    return out


def test_rref_identity_and_zero():
    assert rref(GF2Matrix.identity(4))[1] == 4
    assert rref(GF2Matrix([0, 0, 0], 4))[1] == 0


def test_rm24_rank():
    rm = build_rm(2, 4)
    assert rank(rm.space.basis, 16) == 11
    assert len(rm) == 2048


def test_width_limit():
    with pytest.raises(ValueError):
        GF2Subspace([1], 65)


def test_solve_identity_and_outside():
    assert solve(GF2Matrix.identity(5), 0b10110) == 0b10110
    assert solve(GF2Matrix([0b0011, 0b0110], 4), 0b1000) is None


def test_solve_mismatch():
    with pytest.raises(ValueError):
        solve(GF2Matrix([1, 2], 2), 0b100)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.data())
def test_solve_random(n, data):
    rows = data.draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=8))
    m = GF2Matrix(rows, n)
    coeffs = data.draw(st.integers(0, (1 << len(rows)) - 1))
    t = m.vecmul(coeffs)
    x = solve(m, t)
    assert x is not None and m.vecmul(x) == t


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.data())
def test_membership_matches_enumeration(n, data):
    rows = data.draw(st.lists(st.integers(0, (1 << n) - 1), max_size=6))
    s = GF2Subspace(rows, n)
    full = brute_span(rows)
    assert len(s) == len(full)
    for v in data.draw(st.lists(st.integers(0, (1 << n) - 1), max_size=20)):
        assert (v in s) == (v in full)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 10), st.data())
def test_rref_canonical(n, data):
    rows = data.draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=6))
    a = GF2Subspace(rows, n)
    shuffled = list(span(rows))
    random.Random(0).shuffle(shuffled)
    assert GF2Subspace(shuffled, n).basis == a.basis
    assert GF2Subspace(a.basis, n).basis == a.basis  # idempotent


def test_reduce_gives_smallest_coset_member():
    a = GF2Subspace([0b1100, 0b0110], 4)
    for v in range(16):
        assert a.reduce(v) == min(v ^ w for w in a)


def test_coset_reps_counts():
    a = GF2Subspace.full(5)
    assert coset_reps(a, a) == [0]
    b = GF2Subspace([0b00011, 0b01100], 5)
    reps = coset_reps(a, b)
    assert len(reps) * len(b) == len(a)
    assert sum(len({r ^ w for w in b}) for r in reps) == len(a)
    assert all(r == min(r ^ w for w in b) for r in reps)


def test_rm_quotient_reps():
    rm2, rm1 = build_rm(2, 4), build_rm(1, 4)
    assert len(coset_reps(rm2.space, rm1.space)) == 64


def test_coset_reps_requires_subspace():
    with pytest.raises(ValueError):
        coset_reps(GF2Subspace([1], 3), GF2Subspace([2], 3))


def test_quotient_coords_constant_on_cosets():
    rm2, rm1 = build_rm(2, 4).space, build_rm(1, 4).space
    q = Quotient(rm2, rm1)
    seen = {}
    for a in rm2:
        c = q.coords(a)
        key = q.lift(c)
        assert key == rm1.reduce(a)
        seen.setdefault(c, set()).add(a)
    assert len(seen) == 64 and all(len(s) == 32 for s in seen.values())
    assert quotient_coords(rm2, rm1, rm1.basis[0]) == 0
    with pytest.raises(ValueError):
        q.coords(1)


def test_intersect_and_nullspace():
    a = GF2Subspace([0b1100, 0b0011], 4)
    b = GF2Subspace([0b1111, 0b1000], 4)
    assert set(a.intersect(b)) == set(a) & set(b)
    ns = nullspace([0b1100, 0b0011], 4)
    assert all(((r & x).bit_count() & 1) == 0 for x in ns for r in (0b1100, 0b0011))
    assert ns.dim == 2


def test_mat_inverse():
    rng = random.Random(1)
    for _ in range(20):
        while True:
            m = GF2Matrix([rng.randrange(1 << 5) for _ in range(5)], 5)
            if rank(m.rows, 5) == 5:
                break
        assert m @ mat_inverse(m) == GF2Matrix.identity(5)
