# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled hot loops; mirrors ``_pykernels`` exactly (same arguments, same outputs)."""

from libc.stdint cimport uint8_t, uint32_t, uint64_t
from libcpp.pair cimport pair
from libcpp.set cimport set as cppset
from libcpp.vector cimport vector


cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil


def xor_weight_hist(a, b=None):
    cdef vector[uint64_t] va = [int(x) for x in a]
    cdef vector[uint64_t] vb
    cdef uint64_t counts[65]
    cdef Py_ssize_t i, j, na = va.size(), nb
    cdef uint64_t x
    for i in range(65):
        counts[i] = 0
    if b is None:
        for i in range(na):
            x = va[i]
            for j in range(i + 1, na):
                counts[popcount64(x ^ va[j])] += 1
    else:
        vb = [int(y) for y in b]
        nb = vb.size()
        for i in range(na):
            x = va[i]
            for j in range(nb):
                counts[popcount64(x ^ vb[j])] += 1
    return {k: int(counts[k]) for k in range(65) if counts[k]}


def mono_closure16(gen_signs, gen_perms, int n, Py_ssize_t cap):
    if n > 16:
        raise ValueError("packed closure handles at most 16 points")
    cdef Py_ssize_t ng = len(gen_perms), head = 0, gi
    cdef vector[uint32_t] gsign = [int(s) for s in gen_signs]
    cdef vector[uint8_t] gq = vector[uint8_t](ng * 16)
    cdef uint64_t gp
    cdef int i, pi
    for gi in range(ng):
        gp = gen_perms[gi]
        for i in range(n):
            gq[gi * 16 + i] = (gp >> (4 * i)) & 15
    cdef uint64_t ident = 0
    for i in range(n):
        ident |= (<uint64_t>i) << (4 * i)
    cdef vector[uint64_t] perms
    cdef vector[uint32_t] signs
    cdef cppset[pair[uint64_t, uint32_t]] seen
    perms.push_back(ident)
    signs.push_back(0)
    seen.insert(pair[uint64_t, uint32_t](ident, 0))
    cdef uint64_t p, out
    cdef uint32_t sa, sb, pre
    while head < <Py_ssize_t>perms.size():
        p = perms[head]
        sa = signs[head]
        head += 1
        for gi in range(ng):
            sb = gsign[gi]
            pre = 0
            out = 0
            for i in range(n):
                pi = (p >> (4 * i)) & 15
                if (sb >> pi) & 1:
                    pre |= (<uint32_t>1) << i
                out |= (<uint64_t>gq[gi * 16 + pi]) << (4 * i)
            pre ^= sa
            if seen.insert(pair[uint64_t, uint32_t](out, pre)).second:
                if <Py_ssize_t>perms.size() >= cap:
                    return None
                perms.push_back(out)
                signs.push_back(pre)
    return [int(s) for s in signs], [int(q) for q in perms]


cdef struct Ctx:
    int n
    int first_only
    int exhausted
    uint64_t nodes
    uint64_t budget
    uint32_t *union_tab
    uint8_t *dst_word_tab
    int *src_deg
    int *dst_deg
    int *src_pair
    int *dst_pair
    int *order
    int *sigma
    uint32_t *through
    int *through_start
    uint32_t *src_words
    int n_words


cdef inline uint32_t _image(Ctx *c, uint32_t mask) nogil:
    cdef uint32_t out = 0
    cdef int i
    while mask:
        i = popcount64(<uint64_t>((mask & (~mask + 1)) - 1))
        out |= (<uint32_t>1) << c.sigma[i]
        mask &= mask - 1
    return out


cdef int _rec(Ctx *c, int level, uint32_t assigned, uint32_t used, vector[uint64_t] *found) nogil:
    cdef int n = c.n, k, u, s, cand, ok
    cdef uint32_t allowed, t, low
    cdef uint64_t packed
    if level == n:
        for k in range(c.n_words):
            if not c.dst_word_tab[_image(c, c.src_words[k])]:
                return 0
        packed = 0
        for k in range(n):
            packed |= (<uint64_t>c.sigma[k]) << (4 * k)
        found.push_back(packed)
        return c.first_only
    u = c.order[level]
    allowed = (((<uint32_t>1) << n) - 1) & ~used
    for k in range(c.through_start[u], c.through_start[u + 1]):
        t = c.through[k] & assigned
        if t:
            allowed &= c.union_tab[_image(c, t)]
            if not allowed:
                return 0
    while allowed:
        low = allowed & (~allowed + 1)
        allowed ^= low
        cand = popcount64(<uint64_t>(low - 1))
        if c.dst_deg[cand] != c.src_deg[u]:
            continue
        ok = 1
        for k in range(level):
            s = c.order[k]
            if c.src_pair[u * 16 + s] != c.dst_pair[cand * 16 + c.sigma[s]]:
                ok = 0
                break
        if not ok:
            continue
        c.nodes += 1
        if c.nodes > c.budget:
            c.exhausted = 1
            return 1
        c.sigma[u] = cand
        if _rec(c, level + 1, assigned | ((<uint32_t>1) << u), used | low, found):
            return 1
        c.sigma[u] = -1
    return 0


def perm_backtrack(int n, src_blocks, dst_blocks, src_words, dst_words, order,
                   bint first_only, node_budget):
    if n > 16:
        raise ValueError("compiled backtrack handles at most 16 points")
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n, i, j
    cdef vector[uint32_t] union_tab = vector[uint32_t](size, 0)
    cdef vector[uint8_t] dst_word_tab = vector[uint8_t](size, 0)
    cdef vector[int] src_deg = vector[int](16, 0), dst_deg = vector[int](16, 0)
    cdef vector[int] src_pair = vector[int](256, 0), dst_pair = vector[int](256, 0)
    cdef vector[int] vorder = [int(o) for o in order]
    cdef vector[int] sigma = vector[int](16, -1)
    cdef vector[uint32_t] through
    cdef vector[int] through_start
    cdef vector[uint32_t] vwords = [int(w) for w in src_words]
    cdef uint32_t b, sub
    for bb in dst_blocks:
        b = bb
        sub = b
        while True:
            union_tab[sub] |= b
            if sub == 0:
                break
            sub = (sub - 1) & b
        for i in range(n):
            if (b >> i) & 1:
                dst_deg[i] += 1
                for j in range(n):
                    if (b >> j) & 1:
                        dst_pair[i * 16 + j] += 1
    for bb in src_blocks:
        b = bb
        for i in range(n):
            if (b >> i) & 1:
                src_deg[i] += 1
                for j in range(n):
                    if (b >> j) & 1:
                        src_pair[i * 16 + j] += 1
    for w in dst_words:
        dst_word_tab[<uint32_t>w] = 1
    for i in range(n):
        through_start.push_back(through.size())
        for bb in src_blocks:
            b = bb
            if (b >> i) & 1:
                through.push_back(b)
    through_start.push_back(through.size())
    through.push_back(0)

    cdef Ctx c
    c.n = n
    c.first_only = first_only
    c.exhausted = 0
    c.nodes = 0
    c.budget = node_budget
    c.union_tab = union_tab.data()
    c.dst_word_tab = dst_word_tab.data()
    c.src_deg = src_deg.data()
    c.dst_deg = dst_deg.data()
    c.src_pair = src_pair.data()
    c.dst_pair = dst_pair.data()
    c.order = vorder.data()
    c.sigma = sigma.data()
    c.through = through.data()
    c.through_start = through_start.data()
    c.src_words = vwords.data()
    c.n_words = vwords.size()
    cdef vector[uint64_t] found
    with nogil:
        _rec(&c, 0, 0, 0, &found)
    perms = [tuple(int((p >> (4 * k)) & 15) for k in range(n)) for p in found]
    return perms, int(c.nodes), bool(c.exhausted)
