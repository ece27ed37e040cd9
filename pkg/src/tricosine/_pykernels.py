"""Pure-Python versions of the hot loops.

Same signatures and outputs as the compiled ``_ckernels`` module; the
``kernels`` module picks one at import.
"""

from __future__ import annotations

from collections import Counter
from typing import Sequence


def xor_weight_hist(a: Sequence[int], b: Sequence[int] | None = None) -> dict[int, int]:
    """Histogram of popcount(x ^ y) over unordered distinct pairs of ``a``, or over a × b."""
    hist: Counter = Counter()
    if b is None:
        for i, x in enumerate(a):
            hist.update((x ^ y).bit_count() for y in a[i + 1:])
    else:
        for x in a:
            hist.update((x ^ y).bit_count() for y in b)
    return dict(hist)


def pack_perm(perm: Sequence[int]) -> int:
    out = 0
    for i, p in enumerate(perm):
        out |= p << (4 * i)
    return out


def unpack_perm(packed: int, n: int) -> tuple[int, ...]:
    return tuple((packed >> (4 * i)) & 15 for i in range(n))


def _compose(a: tuple[int, tuple], b: tuple[int, tuple]) -> tuple[int, tuple]:
    sa, p = a
    sb, q = b
    pre = 0
    for i, pi in enumerate(p):
        if (sb >> pi) & 1:
            pre |= 1 << i
    return sa ^ pre, tuple([q[pi] for pi in p])


def mono_closure16(gen_signs: Sequence[int], gen_perms: Sequence[int], n: int, cap: int):
    """BFS closure of signed permutations on n <= 16 points.

    Perms are packed 4 bits per point.  Returns ``(signs, perms)`` lists in BFS
    order starting from the identity, or None when the group exceeds ``cap``.
    """
    gens = [(s, unpack_perm(p, n)) for s, p in zip(gen_signs, gen_perms)]
    ident = (0, tuple(range(n)))
    seen = {ident}
    order = [ident]
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for g in gens:
            y = _compose(x, g)
            if y not in seen:
                if len(order) >= cap:
                    return None
                seen.add(y)
                order.append(y)
    return [s for s, _ in order], [pack_perm(p) for _, p in order]


def _block_tables(n: int, blocks: Sequence[int]):
    union: dict[int, int] = {}
    for b in blocks:
        sub = b
        while True:
            union[sub] = union.get(sub, 0) | b
            if sub == 0:
                break
            sub = (sub - 1) & b
    deg = [sum((b >> i) & 1 for b in blocks) for i in range(n)]
    pair = [[sum(((b >> i) & (b >> j)) & 1 for b in blocks) for j in range(n)] for i in range(n)]
    return union, deg, pair


def perm_backtrack(n: int, src_blocks: Sequence[int], dst_blocks: Sequence[int],
                   src_words: Sequence[int], dst_words: Sequence[int], order: Sequence[int],
                   first_only: bool, node_budget: int):
    """All bijections σ of {0..n-1} with σ[src_blocks] ⊆-consistent with dst_blocks
    and σ[src_words] == dst_words.

    Points are assigned in ``order``; each assignment is forward-checked against
    every source block through the point (the image of the assigned part must
    sit inside a destination block).  Returns ``(perms, nodes, exhausted)``
    where ``exhausted`` is True when the node budget ran out.
    """
    union, dst_deg, dst_pair = _block_tables(n, dst_blocks)
    _, src_deg, src_pair = _block_tables(n, src_blocks)
    through = [[b for b in src_blocks if (b >> i) & 1] for i in range(n)]
    dst_set = set(dst_words)
    full = (1 << n) - 1
    sigma = [-1] * n
    found: list[tuple[int, ...]] = []
    nodes = 0
    exhausted = False

    def image(mask: int) -> int:
        out = 0
        while mask:
            low = mask & -mask
            out |= 1 << sigma[low.bit_length() - 1]
            mask ^= low
        return out

    def leaf_ok() -> bool:
        for w in src_words:
            if image(w) not in dst_set:
                return False
        return True

    def rec(level: int, assigned: int, used: int) -> bool:
        nonlocal nodes, exhausted
        if level == n:
            if leaf_ok():
                found.append(tuple(sigma))
                return first_only
            return False
        u = order[level]
        allowed = full & ~used
        for b in through[u]:
            t = b & assigned
            if t:
                allowed &= union.get(image(t), 0)
                if not allowed:
                    return False
        while allowed:
            low = allowed & -allowed
            allowed ^= low
            c = low.bit_length() - 1
            if dst_deg[c] != src_deg[u]:
                continue
            ok = True
            for s in order[:level]:
                if src_pair[u][s] != dst_pair[c][sigma[s]]:
                    ok = False
                    break
            if not ok:
                continue
            nodes += 1
            if nodes > node_budget:
                exhausted = True
                return True
            sigma[u] = c
            if rec(level + 1, assigned | (1 << u), used | low):
                return True
            sigma[u] = -1
        return False

    rec(0, 0, 0)
    return found, nodes, exhausted
