import random

import numpy as np
import pytest

from tricosine.gf2 import GF2Subspace
from tricosine.mono import (CapExceeded, MonoElt, agl_generators, agl_order, closure,
                            conjugacy_class, gl_generators, image_set, is_abelian, linear_part,
                            o2_subgroup, orbit_signs, orbit_vectors, perm_closure, perm_order,
                            section_builders_d4, singer_like_element, translation)
from tricosine.rm import build_rm

N = 16


def random_elt(rng, n=N):
    p = list(range(n))
    rng.shuffle(p)
    return MonoElt(rng.randrange(1 << n), tuple(p))


def test_composition_matches_matrices():
    rng = random.Random(0)
    for _ in range(1000):
        g, h = random_elt(rng), random_elt(rng)
        lhs = np.array((g * h).matrix())
        rhs = np.array(g.matrix()) @ np.array(h.matrix())
        assert (lhs == rhs).all()


def test_action_is_sequential():
    rng = random.Random(1)
    for _ in range(100):
        g, h = random_elt(rng), random_elt(rng)
        x = tuple(rng.choice((-1, 1)) for _ in range(N))
        assert (g * h).act(x) == h.act(g.act(x))
        assert np.array_equal(np.array(g.act(x)), np.array(x) @ np.array(g.matrix()))


def test_inverse_and_diag():
    rng = random.Random(2)
    g = random_elt(rng)
    assert (g * g.inverse()).is_identity()
    assert MonoElt.diag(0b1010, N) * MonoElt.diag(0b0110, N) == MonoElt.diag(0b1100, N)
    with pytest.raises(ValueError):
        g * MonoElt.identity(8)


def test_conjugating_diagonal():
    rng = random.Random(3)
    for _ in range(50):
        p = MonoElt.of_perm(random_elt(rng).perm)
        a = rng.randrange(1 << N)
        assert MonoElt.diag(a, N).conj(p) == MonoElt.diag(image_set(p.perm, a), N)


def test_agl_order():
    group = perm_closure(agl_generators(4))
    assert len(group) == agl_order(4) == 322560
    assert sum(1 for p in group if p[0] == 0) == 20160
    assert len(perm_closure(gl_generators(3))) == 168


def test_translation():
    t = translation(1, 4)
    assert perm_order(t) == 2 and all(t[i] != i for i in range(16))
    assert linear_part(perm_closure(agl_generators(4))[12345])[0] == 0


def test_singer():
    g3 = singer_like_element(3, 3)
    assert perm_order(g3) == 7 and [i for i in range(8) if g3[i] == i] == [0]
    assert perm_order(singer_like_element(5, 5)) == 31
    assert singer_like_element(3, 4)[0] == 0
    with pytest.raises(ValueError):
        singer_like_element(4, 4)


def test_diagonal_closure_and_orbit():
    gens = [MonoElt.diag(a, N) for a in build_rm(1, 4).space.basis]
    assert closure(gens).order == 32
    x0 = (1,) * N
    assert len(orbit_vectors(x0, gens)) == 32
    with pytest.raises(CapExceeded):
        closure(gens, cap=10)


def test_closure_order_independent():
    f = section_builders_d4()
    gens = f.sign_gens(f.E) + [MonoElt.of_perm(q) for q in f.Q_gens]
    a = closure(gens)
    b = closure(list(reversed(gens)))
    assert a.order == 1344 and a.same_elements(b)


def test_orbit_stabilizer():
    f = section_builders_d4()
    gens = f.sign_gens(f.E) + [MonoElt.of_perm(q) for q in f.Q_gens]
    g = closure(gens)
    orb = orbit_signs(0b110, gens)
    stab = sum(1 for x in g if x.act_signs(0b110) == 0b110)
    assert len(orb) * stab == g.order


def test_o2_elementary_abelian():
    gens = [MonoElt.diag(a, N) for a in build_rm(1, 4).space.basis]
    g = closure(gens)
    o2 = o2_subgroup(g)
    assert o2.order == 32 and is_abelian(o2)


def test_conjugacy_class_size_divides():
    f = section_builders_d4()
    gens = [MonoElt.of_perm(q) for q in f.Q_gens]
    cls = conjugacy_class(gens[0], gens)
    assert 168 % len(cls) == 0


def test_frame_facts():
    f = section_builders_d4()
    n = 16
    assert f.E.dim == 3 and len(f.Q) == 168
    assert f.J.dim == 9 and f.D.dim == 11 and f.D.dim - f.J.dim == 2
    assert f.T0.dim == f.T1.dim == 3
    assert (f.T0 + f.T1 + f.B01) == f.J
    assert f.B01.intersect(f.R) == f.E
    # every nonzero E word is an affine hyperplane avoiding ω0 and ω1
    assert all(w.bit_count() == 8 and not w & 3 for w in f.E if w)
    assert sum(1 for w in build_rm(1, 4) if w and w.bit_count() == 8 and not w & 3) == 7
    for q in f.Q:
        assert image_set(q, f.B0) == f.B0 and image_set(q, f.B1) == f.B1
        assert q[f.omega1] == f.omega1
    assert f.B0 & 1 and not (f.B0 >> 1) & 1
    assert GF2Subspace((image_set(f.p01, a) for a in f.B01.basis), n) == f.B01
