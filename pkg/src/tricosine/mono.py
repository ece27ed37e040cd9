"""Signed coordinate permutations on 2^d coordinates and the groups they generate.

Conventions (right actions throughout):

* a permutation is a tuple of images, ``p[i]`` is where coordinate ``i`` goes,
  and ``p * q`` means "p first, then q";
* ``MonoElt(A, p)`` sends basis vector ``v_i`` to ``(-1)^[i in A] v_p(i)``, i.e.
  the sign change ε_A followed by the permutation p;
* ``(A, p) * (B, q) = (A ^ p^{-1}[B], p * q)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence

from . import kernels
from .gf2 import GF2Subspace, bits
from .rm import build_rm, affine_flat

Perm = tuple[int, ...]


class CapExceeded(RuntimeError):
    """A closure or orbit grew past its configured cap."""


# -- permutations ------------------------------------------------------------

def perm_identity(n: int) -> Perm:
    return tuple(range(n))


def perm_compose(p: Perm, q: Perm) -> Perm:
    return tuple([q[i] for i in p])


def perm_inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, pi in enumerate(p):
        inv[pi] = i
    return tuple(inv)


def perm_order(p: Perm) -> int:
    from math import lcm

    seen = [False] * len(p)
    out = 1
    for i in range(len(p)):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            out = lcm(out, length)
    return out


def image_set(p: Perm, mask: int) -> int:
    """p[A] as a bitmask."""
    out = 0
    for i in bits(mask):
        out |= 1 << p[i]
    return out


def preimage_set(p: Perm, mask: int) -> int:
    """p^{-1}[A] = {i : p(i) in A}."""
    out = 0
    for i, pi in enumerate(p):
        if (mask >> pi) & 1:
            out |= 1 << i
    return out


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


# -- affine maps of Ω = F2^d as coordinate permutations -----------------------

def linear_perm(columns: Sequence[int], d: int) -> Perm:
    """Point permutation x -> L(x) for the linear map with L(e_j) = columns[j]."""
    out = []
    for x in range(1 << d):
        y = 0
        for j in bits(x):
            y ^= columns[j]
        out.append(y)
    p = tuple(out)
    if not is_permutation(p):
        raise ValueError("columns do not define an invertible map")
    return p


def translation(t: int, d: int) -> Perm:
    return tuple(x ^ t for x in range(1 << d))


def linear_part(p: Perm) -> Perm:
    """For an affine permutation p(x) = L(x) + p(0), return L."""
    t = p[0]
    return tuple(y ^ t for y in p)


def is_affine(p: Perm, d: int) -> bool:
    lin = linear_part(p)
    return all(lin[x ^ y] == lin[x] ^ lin[y] for x in range(1 << d) for y in range(1 << d))


def gl_generators(d: int) -> list[Perm]:
    """Two generators of GL(d, 2): the coordinate cycle and the transvection e0 -> e0 + e1."""
    if d == 1:
        return [perm_identity(2)]
    if d == 2:
        return [linear_perm([2, 1], 2), linear_perm([3, 2], 2)]
    cycle = [1 << ((j + 1) % d) for j in range(d)]
    transvection = [3] + [1 << j for j in range(1, d)]
    return [linear_perm(cycle, d), linear_perm(transvection, d)]


def agl_generators(d: int) -> list[Perm]:
    if not 1 <= d <= 6:
        raise ValueError("d must be in 1..6")
    return gl_generators(d) + [translation(1, d)]


def agl_order(d: int) -> int:
    out = 1 << d
    for i in range(d):
        out *= (1 << d) - (1 << i)
    return out


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(n ** 0.5) + 1))


def _poly_mulmod(a: int, b: int, mod: int) -> int:
    deg = mod.bit_length() - 1
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if (a >> deg) & 1:
            a ^= mod
    return out


def is_irreducible(poly: int) -> bool:
    deg = poly.bit_length() - 1
    for q in range(2, 1 << (deg // 2 + 1)):
        qd = q.bit_length() - 1
        if 1 <= qd <= deg // 2:
            r = poly
            while r.bit_length() - 1 >= qd:
                r ^= q << (r.bit_length() - 1 - qd)
            if r == 0:
                return False
    return True


def primitive_polynomial(m: int) -> int:
    """Smallest primitive polynomial of degree m, as an int (bit i = coefficient of x^i)."""
    order = (1 << m) - 1
    for poly in range((1 << m) | 1, 1 << (m + 1), 2):
        if not is_irreducible(poly):
            continue
        x, acc = 2, 1
        k = 0
        # order of x modulo poly
        while True:
            acc = _poly_mulmod(acc, x, poly)
            k += 1
            if acc == 1:
                break
        if k == order:
            return poly
    raise ValueError(f"no primitive polynomial of degree {m}")


def singer_like_element(m: int, d: int) -> Perm:
    """Multiplication by x on F2[x]/(φ) on the first m coordinates of Ω, identity on the rest."""
    if not 3 <= m <= d:
        raise ValueError("need 3 <= m <= d")
    if not _is_prime((1 << m) - 1):
        raise ValueError(f"2^{m} - 1 is not prime")
    poly = primitive_polynomial(m)
    low = poly ^ (1 << m)
    columns = [1 << (j + 1) for j in range(m - 1)] + [low] + [1 << j for j in range(m, d)]
    return linear_perm(columns, d)


# -- monomial elements ---------------------------------------------------------

@dataclass(frozen=True, slots=True)
class MonoElt:
    signs: int
    perm: Perm

    @classmethod
    def diag(cls, signs: int, n: int) -> "MonoElt":
        return cls(signs, perm_identity(n))

    @classmethod
    def of_perm(cls, perm: Perm) -> "MonoElt":
        return cls(0, tuple(perm))

    @classmethod
    def identity(cls, n: int) -> "MonoElt":
        return cls(0, perm_identity(n))

    @property
    def n(self) -> int:
        return len(self.perm)

    def __mul__(self, other: "MonoElt") -> "MonoElt":
        if len(self.perm) != len(other.perm):
            raise ValueError("dimension mismatch")
        return MonoElt(self.signs ^ preimage_set(self.perm, other.signs),
                       perm_compose(self.perm, other.perm))

    def inverse(self) -> "MonoElt":
        return MonoElt(image_set(self.perm, self.signs), perm_inverse(self.perm))

    def __pow__(self, k: int) -> "MonoElt":
        base = self if k >= 0 else self.inverse()
        out = MonoElt.identity(self.n)
        for _ in range(abs(k)):
            out = out * base
        return out

    def conj(self, by: "MonoElt") -> "MonoElt":
        """by^{-1} self by."""
        return by.inverse() * self * by

    def is_identity(self) -> bool:
        return self.signs == 0 and all(i == p for i, p in enumerate(self.perm))

    def order(self) -> int:
        k, g = 1, self
        while not g.is_identity():
            g = g * self
            k += 1
        return k

    def act(self, x: Sequence[int]) -> tuple[int, ...]:
        out = [0] * len(x)
        for i, xi in enumerate(x):
            out[self.perm[i]] = -xi if (self.signs >> i) & 1 else xi
        return tuple(out)

    def act_signs(self, negatives: int) -> int:
        """Action on ±1 vectors encoded by the set of -1 coordinates."""
        return image_set(self.perm, negatives ^ self.signs)

    def matrix(self) -> list[list[int]]:
        n = self.n
        rows = [[0] * n for _ in range(n)]
        for i, p in enumerate(self.perm):
            rows[i][p] = -1 if (self.signs >> i) & 1 else 1
        return rows

    def key(self) -> tuple[int, int]:
        return self.signs, kernels.pack_perm(self.perm)


# -- groups ------------------------------------------------------------------

@dataclass
class MonoGroup:
    """Generators plus (optionally) the full element list in BFS order."""

    generators: list[MonoElt]
    n: int
    _signs: list[int] | None = field(default=None, repr=False)
    _packed: list[int] | None = field(default=None, repr=False)
    _elements: list[MonoElt] | None = field(default=None, repr=False)
    _keys: set | None = field(default=None, repr=False)

    @property
    def materialized(self) -> bool:
        return self._signs is not None or self._elements is not None

    @property
    def order(self) -> int:
        if self._signs is not None:
            return len(self._signs)
        if self._elements is not None:
            return len(self._elements)
        raise ValueError("group not materialized")

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[MonoElt]:
        if self._elements is not None:
            return iter(self._elements)
        n = self.n
        return (MonoElt(s, kernels.unpack_perm(p, n)) for s, p in zip(self._signs, self._packed))

    @property
    def elements(self) -> list[MonoElt]:
        if self._elements is None:
            self._elements = list(iter(self))
        return self._elements

    def __contains__(self, g: MonoElt) -> bool:
        if self._keys is None:
            if self._signs is not None:
                self._keys = set(zip(self._signs, self._packed))
            else:
                self._keys = {g.key() if self.n <= 16 else (g.signs, g.perm) for g in self._elements}
        return (g.key() if self.n <= 16 else (g.signs, g.perm)) in self._keys

    def select(self, pred: Callable[[int, int], bool]) -> list[MonoElt]:
        """Elements whose (signs, packed perm) satisfy ``pred``; needs the packed form."""
        if self._signs is None:
            raise ValueError("select works on packed groups (n <= 16)")
        n = self.n
        return [MonoElt(s, kernels.unpack_perm(p, n))
                for s, p in zip(self._signs, self._packed) if pred(s, p)]

    def same_elements(self, other: "MonoGroup") -> bool:
        return self.order == other.order and all(g in other for g in self)


def closure(gens: Sequence[MonoElt], cap: int = 2_000_000, n: int | None = None) -> MonoGroup:
    """Breadth-first closure; raises CapExceeded past ``cap`` elements."""
    gens = list(gens)
    if n is None:
        if not gens:
            raise ValueError("need generators or n")
        n = gens[0].n
    if n <= 16:
        res = kernels.mono_closure16([g.signs for g in gens],
                                     [kernels.pack_perm(g.perm) for g in gens], n, cap)
        if res is None:
            raise CapExceeded(f"group order exceeds {cap}")
        return MonoGroup(gens, n, _signs=res[0], _packed=res[1])
    ident = MonoElt.identity(n)
    seen = {ident}
    out = [ident]
    head = 0
    while head < len(out):
        x = out[head]
        head += 1
        for g in gens:
            y = x * g
            if y not in seen:
                if len(out) >= cap:
                    raise CapExceeded(f"group order exceeds {cap}")
                seen.add(y)
                out.append(y)
    return MonoGroup(gens, n, _elements=out)


def perm_closure(gens: Sequence[Perm], cap: int = 2_000_000) -> list[Perm]:
    group = closure([MonoElt.of_perm(p) for p in gens], cap, n=len(gens[0]))
    return [g.perm for g in group]


def generated_subgroup(elements: Iterable[MonoElt], n: int, cap: int = 2_000_000) -> MonoGroup:
    """Subgroup generated by ``elements``, keeping only the generators that enlarge it."""
    gens: list[MonoElt] = []
    group = closure([], cap, n=n)
    for e in elements:
        if e not in group:
            gens.append(e)
            group = closure(gens, cap, n=n)
    group.generators = gens
    return group


def orbit_vectors(start: Sequence[int], gens: Sequence[MonoElt], cap: int = 1 << 20) -> list[tuple[int, ...]]:
    start = tuple(start)
    seen = {start}
    out = [start]
    head = 0
    while head < len(out):
        x = out[head]
        head += 1
        for g in gens:
            y = g.act(x)
            if y not in seen:
                if len(out) >= cap:
                    raise CapExceeded(f"orbit longer than {cap}")
                seen.add(y)
                out.append(y)
    return out


def orbit_signs(start: int, gens: Sequence[MonoElt], cap: int = 1 << 20) -> list[int]:
    """Orbit of a ±1 vector given by its set of -1 coordinates."""
    seen = {start}
    out = [start]
    head = 0
    while head < len(out):
        x = out[head]
        head += 1
        for g in gens:
            y = g.act_signs(x)
            if y not in seen:
                if len(out) >= cap:
                    raise CapExceeded(f"orbit longer than {cap}")
                seen.add(y)
                out.append(y)
    return out


def signs_to_vector(negatives: int, n: int) -> tuple[int, ...]:
    return tuple(-1 if (negatives >> i) & 1 else 1 for i in range(n))


def conjugacy_class(x: MonoElt, gens: Sequence[MonoElt]) -> list[MonoElt]:
    invs = [g.inverse() for g in gens]
    seen = {x}
    out = [x]
    head = 0
    while head < len(out):
        y = out[head]
        head += 1
        for g, gi in zip(gens, invs):
            z = gi * y * g
            if z not in seen:
                seen.add(z)
                out.append(z)
    return out


def _two_part(n: int) -> int:
    return n & -n


def o2_subgroup(group: MonoGroup, max_order: int = 10**6) -> MonoGroup:
    """Largest normal 2-subgroup: union of the classes whose normal closure is a 2-group."""
    if group.order > max_order:
        raise ValueError("group too large for the brute-force O_2")
    limit = _two_part(group.order)
    gens = group.generators
    done: set[MonoElt] = set()
    members: list[MonoElt] = []
    for x in group:
        if x in done:
            continue
        cls = conjugacy_class(x, gens)
        done.update(cls)
        if _two_part(x.order()) != x.order():
            continue
        try:
            sub = generated_subgroup(cls, group.n, cap=limit)
        except CapExceeded:
            continue
        if _two_part(sub.order) == sub.order:
            members.extend(cls)
    return generated_subgroup(members, group.n, cap=limit)


def is_abelian(group: MonoGroup) -> bool:
    """Checked on generators, so ``group.generators`` must generate it."""
    return all(a * b == b * a for a, b in combinations(group.generators, 2))


def exponent(elements: Iterable[MonoElt]) -> int:
    from math import lcm

    out = 1
    for g in elements:
        out = lcm(out, g.order())
    return out


# -- the d = 4 frame subgroups -------------------------------------------------

@dataclass
class Frame4:
    """Named subgroups of the frame normalizer for d = 4 (two fixed points ω0, ω1).

    Codeword spaces are GF2Subspaces of F2^16; groups are generator lists.
    """

    d: int
    omega0: int
    omega1: int
    B0: int
    B1: int
    p01: Perm
    Q_gens: list[Perm]
    Q: list[Perm]
    U_gens: list[Perm]
    P01_gens: list[Perm]
    S0: GF2Subspace
    S1: GF2Subspace
    T0: GF2Subspace
    T1: GF2Subspace
    D0: GF2Subspace
    D1: GF2Subspace
    B01: GF2Subspace
    J: GF2Subspace
    E: GF2Subspace
    D: GF2Subspace
    R: GF2Subspace

    @property
    def n(self) -> int:
        return 1 << self.d

    def sign_gens(self, space: GF2Subspace) -> list[MonoElt]:
        return [MonoElt.diag(a, self.n) for a in space.basis]


def section_builders_d4() -> Frame4:
    d, n = 4, 16
    omega0, omega1 = 0, 1  # ω1 = e0
    b0 = sum(1 << x for x in range(n) if not x & 1)  # linear hyperplane x_0 = 0
    b1 = ((1 << n) - 1) ^ b0
    p01 = translation(omega1, d)
    # Q: block diag(1, GL(3,2)) on span{e1, e2, e3}
    q_gens = []
    for g3 in gl_generators(3):
        cols = [1] + [g3[1 << j] << 1 for j in range(3)]
        q_gens.append(linear_perm(cols, d))
    u_gens = [linear_perm([1, 2 | 1, 4, 8], d)]
    q_all = perm_closure(q_gens)

    def flats_inside(block: int) -> list[int]:
        pts = list(bits(block))
        out = set()
        for a, b_, c in combinations(pts, 3):
            flat = affine_flat((b_ ^ a, c ^ a), a)
            if flat & block == flat and flat.bit_count() == 4:
                out.add(flat)
        return sorted(out)

    s0 = GF2Subspace(flats_inside(b0), n)
    s1 = GF2Subspace(flats_inside(b1), n)
    t0 = GF2Subspace([w for w in s0 if not (w >> omega0) & 1], n)
    t1 = GF2Subspace([w for w in s1 if not (w >> omega1) & 1], n)

    def even_avoiding(block: int, point: int) -> GF2Subspace:
        pts = [x for x in bits(block) if x != point]
        return GF2Subspace(((1 << pts[0]) | (1 << x) for x in pts[1:]), n)

    dd0 = even_avoiding(b0, omega0)
    dd1 = even_avoiding(b1, omega1)
    b01 = GF2Subspace((a | image_set(p01, a) for a in dd0.basis), n)
    rm2, rm1 = build_rm(2, d), build_rm(1, d)
    avoid = lambda w: not (w >> omega0) & 1 and not (w >> omega1) & 1  # noqa: E731
    j = GF2Subspace([w for w in rm2 if avoid(w)], n)
    e = GF2Subspace([w for w in rm1 if avoid(w)], n)
    return Frame4(d, omega0, omega1, b0, b1, p01, q_gens, q_all, u_gens, q_gens + u_gens,
                  s0, s1, t0, t1, dd0, dd1, b01, j, e, rm2.space, rm1.space)
