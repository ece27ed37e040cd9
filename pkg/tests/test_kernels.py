import math
import os
import random
import subprocess
import sys

import pytest

from tricosine import _pykernels, kernels

try:
    from tricosine import _ckernels
except ImportError:  # pure-Python install
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def test_backend_name():
    assert kernels.BACKEND in ("compiled", "python")


def test_pack_roundtrip():
    p = tuple(reversed(range(16)))
    assert kernels.unpack_perm(kernels.pack_perm(p), 16) == p


def test_hist_python():
    words = [0, 1, 3, 7]
    assert _pykernels.xor_weight_hist(words) == {1: 3, 2: 2, 3: 1}
    assert _pykernels.xor_weight_hist([0], words) == {0: 1, 1: 1, 2: 1, 3: 1}


@needs_c
def test_hist_parity():
    rng = random.Random(0)
    a = [rng.randrange(1 << 16) for _ in range(200)]
    b = [rng.randrange(1 << 16) for _ in range(50)]
    assert _ckernels.xor_weight_hist(a) == _pykernels.xor_weight_hist(a)
    assert _ckernels.xor_weight_hist(a, b) == _pykernels.xor_weight_hist(a, b)


def _sym_gens(n):
    cyc = tuple((i + 1) % n for i in range(n))
    swap = (1, 0) + tuple(range(2, n))
    return [kernels.pack_perm(cyc), kernels.pack_perm(swap)]


@needs_c
def test_closure_parity():
    gens = _sym_gens(4)
    signs = [0b0001, 0]
    c = _ckernels.mono_closure16(signs, gens, 4, 10**6)
    p = _pykernels.mono_closure16(signs, gens, 4, 10**6)
    assert c == p and len(c[0]) == 384
    assert _ckernels.mono_closure16(signs, gens, 4, 100) is None
    assert _pykernels.mono_closure16(signs, gens, 4, 100) is None


@needs_c
def test_backtrack_parity():
    n = 6
    words = [0] + [1 << i for i in range(n)]
    blocks = words[1:]
    args = (n, blocks, blocks, words, words, list(range(n)), False, 10**7)
    pc, nc, ec = _ckernels.perm_backtrack(*args)
    pp, np_, ep = _pykernels.perm_backtrack(*args)
    assert sorted(pc) == sorted(pp) and len(pc) == math.factorial(n)
    assert nc == np_ and not ec and not ep


def test_backtrack_budget():
    n = 6
    words = [0] + [1 << i for i in range(n)]
    perms, nodes, exhausted = _pykernels.perm_backtrack(n, words[1:], words[1:], words, words,
                                                        list(range(n)), False, 50)
    assert exhausted


def test_env_forces_python_fallback():
    env = dict(os.environ, TRICOSINE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from tricosine import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
