"""Hot-loop dispatch: compiled ``_ckernels`` when importable, else ``_pykernels``.

Set ``TRICOSINE_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("TRICOSINE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels

pack_perm = _pykernels.pack_perm
unpack_perm = _pykernels.unpack_perm


def xor_weight_hist(a, b=None) -> dict[int, int]:
    if BACKEND == "compiled" and max(max(a, default=0), max(b or (), default=0)) >> 64 == 0:
        return _impl.xor_weight_hist(a, b)
    return _pykernels.xor_weight_hist(a, b)


def mono_closure16(gen_signs, gen_perms, n: int, cap: int):
    return _impl.mono_closure16(gen_signs, gen_perms, n, cap)


def perm_backtrack(n, src_blocks, dst_blocks, src_words, dst_words, order,
                   first_only: bool = False, node_budget: int = 10**8):
    impl = _impl if n <= 16 else _pykernels
    return impl.perm_backtrack(n, list(src_blocks), list(dst_blocks), list(src_words),
                               list(dst_words), list(order), first_only, node_budget)
