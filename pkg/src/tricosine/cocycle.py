"""1-cocycles of permutation groups acting on F2-modules.

Module vectors are ints (bit i = coordinate i); the action of a group element
``x`` is ``m -> m·M_x`` with row-vector matrices.  A derivation satisfies

    f(xy) = f(x) + f(y)·x^{-1}

which is the additive form of closure for ``{ε_f(x) x}`` under the monomial
product in ``mono``.  Inner derivations are ``f_a(x) = a + a·x^{-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .gf2 import GF2Matrix, GF2Subspace, Quotient, _insert, bits, mat_inverse, nullspace
from .mono import MonoElt, Perm, image_set, linear_part, perm_compose
from .rm import build_rm, defect, clean_weights, weight


class ActionError(ValueError):
    """Generator matrices do not define an action of the enumerated group."""


def _columns(m: GF2Matrix) -> tuple[int, ...]:
    cols = [0] * m.ncols
    for i, row in enumerate(m.rows):
        for j in bits(row):
            cols[j] |= 1 << i
    return tuple(cols)


class ModuleAction:
    """A permutation group (enumerated by BFS) acting linearly on F2^n."""

    def __init__(self, gens: Sequence[Perm], gen_matrices: Sequence[GF2Matrix],
                 cap: int = 100_000, quotient: Quotient | None = None, name: str = ""):
        if len(gens) != len(gen_matrices):
            raise ValueError("one matrix per generator")
        self.gens = [tuple(g) for g in gens]
        self.n = gen_matrices[0].ncols if gen_matrices else 0
        self.gen_matrices = list(gen_matrices)
        self.quotient = quotient
        self.name = name
        inv_gen = [mat_inverse(m) for m in self.gen_matrices]
        ident = tuple(range(len(self.gens[0])))
        self.elements: list[Perm] = [ident]
        self.index: dict[Perm, int] = {ident: 0}
        self.inv_mats: list[GF2Matrix] = [GF2Matrix.identity(self.n)]
        self.parent: list[tuple[int, int]] = [(-1, -1)]
        head = 0
        while head < len(self.elements):
            x = self.elements[head]
            for s, g in enumerate(self.gens):
                y = perm_compose(x, g)
                # (xs)^{-1} = s^{-1} x^{-1}
                m = inv_gen[s] @ self.inv_mats[head]
                j = self.index.get(y)
                if j is None:
                    if len(self.elements) >= cap:
                        raise ValueError(f"group larger than cap {cap}")
                    self.index[y] = len(self.elements)
                    self.elements.append(y)
                    self.inv_mats.append(m)
                    self.parent.append((head, s))
                elif self.inv_mats[j] != m:
                    raise ActionError("matrices are not a homomorphic image of the permutations")
            head += 1
        self._z1: GF2Subspace | None = None
        self._exprs: np.ndarray | None = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def linear(cls, gens: Sequence[Perm], d: int, **kw) -> "ModuleAction":
        """Natural module F2^d for linear point permutations of F2^d."""
        mats = [GF2Matrix((g[1 << i] for i in range(d)), d) for g in gens]
        return cls(gens, mats, **kw)

    @classmethod
    def trivial(cls, gens: Sequence[Perm], n: int = 1, **kw) -> "ModuleAction":
        return cls(gens, [GF2Matrix.identity(n) for _ in gens], **kw)

    @classmethod
    def on_quotient(cls, gens: Sequence[Perm], quotient: Quotient, **kw) -> "ModuleAction":
        """Codeword quotient a/b with A·p = p[A]."""
        mats = [GF2Matrix((quotient.coords(image_set(g, b)) for b in quotient.basis), quotient.dim)
                for g in gens]
        return cls(gens, mats, quotient=quotient, **kw)

    # -- basic queries --------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def nunknowns(self) -> int:
        return self.n * len(self.gens)

    def act_inverse(self, m: int, idx: int) -> int:
        """m · x^{-1} for the element with index ``idx``."""
        return self.inv_mats[idx].vecmul(m)

    def act(self, m: int, idx: int) -> int:
        return self.act_inverse(m, self.index[_perm_inv(self.elements[idx])])

    def mul(self, i: int, j: int) -> int:
        return self.index[perm_compose(self.elements[i], self.elements[j])]

    def fixed_space(self) -> GF2Subspace:
        rows = []
        # m fixed by all gens  <=>  m (M_s + I) = 0 for each s
        for mat in self.gen_matrices:
            cols = _columns(mat)
            rows += [cols[j] ^ (1 << j) for j in range(self.n)]
        return nullspace(rows, self.n)

    # -- cocycle spaces -------------------------------------------------------

    def _solve(self) -> None:
        n = self.n
        cols = [_columns(m) for m in self.inv_mats]
        exprs = [tuple([0] * n)]
        for y in range(1, self.order):
            x, s = self.parent[y]
            shift = s * n
            exprs.append(tuple(e ^ (c << shift) for e, c in zip(exprs[x], cols[x])))
        piv: dict[int, int] = {}
        for x in range(self.order):
            ex, cx = exprs[x], cols[x]
            for s, g in enumerate(self.gens):
                y = self.index[perm_compose(self.elements[x], g)]
                shift = s * n
                for e_y, e_x, c in zip(exprs[y], ex, cx):
                    row = e_y ^ e_x ^ (c << shift)
                    if row:
                        _insert(piv, row)
        self._z1 = nullspace(piv.values(), self.nunknowns)
        self._exprs = np.array(exprs, dtype=np.uint64).reshape(self.order, n)

    def z1_space(self) -> GF2Subspace:
        """Derivations as packed generator values (bits s*n .. s*n+n-1 hold f(gen s))."""
        if self._z1 is None:
            self._solve()
        return self._z1

    def derivation(self, values: int) -> "Derivation":
        if values not in self.z1_space():
            raise ValueError("generator values do not extend to a derivation")
        ex = self._exprs
        sol = np.uint64(values)
        table = np.zeros(self.order, dtype=np.uint64)
        for j in range(self.n):
            par = np.bitwise_count(ex[:, j] & sol) & np.uint8(1)
            table |= par.astype(np.uint64) << np.uint64(j)
        return Derivation(self, values, table)

    def inner(self, a: int) -> "Derivation":
        table = np.array([a ^ m.vecmul(a) for m in self.inv_mats], dtype=np.uint64)
        values = 0
        for s in range(len(self.gens)):
            values |= int(table[self.index[self.gens[s]]]) << (s * self.n)
        return Derivation(self, values, table)

    def b1_space(self) -> GF2Subspace:
        return GF2Subspace((self.inner(1 << i).values for i in range(self.n)), self.nunknowns)


def _perm_inv(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, pi in enumerate(p):
        inv[pi] = i
    return tuple(inv)


@dataclass
class Derivation:
    action: ModuleAction
    values: int  # packed generator values
    table: np.ndarray = field(repr=False)

    def __call__(self, x: Perm) -> int:
        return int(self.table[self.action.index[tuple(x)]])

    def at(self, idx: int) -> int:
        return int(self.table[idx])

    def gen_values(self) -> list[int]:
        n = self.action.n
        return [(self.values >> (s * n)) & ((1 << n) - 1) for s in range(len(self.action.gens))]

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.action, self.values ^ other.values, self.table ^ other.table)

    def is_inner(self) -> bool:
        return self.values in self.action.b1_space()

    def kernel_indices(self) -> np.ndarray:
        return np.flatnonzero(self.table == 0)

    def kernel(self) -> list[Perm]:
        return [self.action.elements[i] for i in self.kernel_indices()]

    def kernel_order(self) -> int:
        return int(np.count_nonzero(self.table == 0))

    def image(self) -> set[int]:
        return {int(v) for v in np.unique(self.table)}

    def check_identity(self, pairs: Iterable[tuple[int, int]]) -> bool:
        act = self.action
        for i, j in pairs:
            if self.at(act.mul(i, j)) != self.at(i) ^ act.act_inverse(self.at(j), i):
                return False
        return True


def z1_basis(action: ModuleAction) -> list[Derivation]:
    return [action.derivation(v) for v in action.z1_space().basis]


def b1_basis(action: ModuleAction) -> list[Derivation]:
    """Spanning set {f_a : a a basis vector}; its span has dimension n - dim(fixed space)."""
    return [action.inner(1 << i) for i in range(action.n)]


def h1_dim(action: ModuleAction) -> int:
    return action.z1_space().dim - action.b1_space().dim


def kernel(f: Derivation) -> list[Perm]:
    """Ker f, checked to be closed under products."""
    from .mono import perm_closure

    ker = f.kernel()
    gens = _greedy_generators(ker)
    if gens:
        closed = perm_closure(gens, cap=len(ker) + 1)
        if len(closed) != len(ker) or any(f(g) for g in closed):
            raise ArithmeticError("derivation kernel is not a subgroup")
    return ker


def _greedy_generators(elements: Sequence[Perm]) -> list[Perm]:
    from .mono import perm_closure

    gens: list[Perm] = []
    current = {elements[0]} if elements else set()
    for e in elements:
        if e not in current:
            gens.append(e)
            current = set(perm_closure(gens))
    return gens


def noninner_cocycles(action: ModuleAction) -> list[tuple[int, Derivation]]:
    """The coset (canonical noninner rep) + B¹, listed by coboundary coefficient a.

    Duplicate derivations (a differing by a fixed vector) are kept once, at the
    smallest a.
    """
    z1, b1 = action.z1_space(), action.b1_space()
    if z1.dim == b1.dim:
        raise ValueError("H^1 vanishes; every derivation is inner")
    reps = Quotient(z1, b1).reps()
    base = action.derivation(min(r for r in reps if r))
    out, seen = [], set()
    for a in range(1 << action.n):
        f = base + action.inner(a)
        if f.values not in seen:
            seen.add(f.values)
            out.append((a, f))
    return out


def select_noninner_with_kernel_index(action: ModuleAction, index: int) -> Derivation:
    """First noninner cocycle (by coboundary coefficient) whose kernel has the given index."""
    for _, f in noninner_cocycles(action):
        if f.kernel_order() * index == action.order:
            return f
    raise LookupError(f"no noninner derivation with kernel index {index}")


# -- near-derivations ----------------------------------------------------------

@dataclass
class NearDerivation:
    """A derivation into a codeword quotient a/b together with canonical lifts into a.

    With ``affine=True`` the domain is extended from the linear group to the
    affine group by f(p) := f(linear part of p); translations must act
    trivially on the quotient for that to be a derivation.
    """

    fbar: Derivation
    quotient: Quotient
    lifted: np.ndarray = field(repr=False)
    affine: bool = False
    d: int = 0

    def at(self, p: Perm) -> int:
        if self.affine:
            p = linear_part(p)
        return int(self.lifted[self.fbar.action.index[tuple(p)]])

    @property
    def domain_order(self) -> int:
        base = self.fbar.action.order
        return base << self.d if self.affine else base

    @property
    def kernel_order(self) -> int:
        base = self.fbar.kernel_order()
        return base << self.d if self.affine else base

    def parts(self) -> set[int]:
        """Every diagonal part b + lift(f(x)) of the associated group."""
        out: set[int] = set()
        for v in {int(v) for v in np.unique(self.lifted)}:
            out.update(v ^ w for w in self.quotient.b)
        return out


def lift_to_near_derivation(fbar: Derivation, quotient: Quotient | None = None) -> NearDerivation:
    quotient = quotient or fbar.action.quotient
    if quotient is None or quotient.dim != fbar.action.n:
        raise ValueError("derivation is not valued in the given quotient")
    lifts = np.array([quotient.lift(c) for c in range(1 << quotient.dim)], dtype=np.uint64)
    return NearDerivation(fbar, quotient, lifts[fbar.table.astype(np.int64)])


def extend_to_affine(nd: NearDerivation, d: int) -> NearDerivation:
    q = nd.quotient
    for t in range(1 << d):
        shift = tuple(x ^ t for x in range(1 << d))
        if any(q.coords(image_set(shift, b)) != 1 << i for i, b in enumerate(q.basis)):
            raise ValueError("translations act nontrivially on the quotient")
    return NearDerivation(nd.fbar, q, nd.lifted, affine=True, d=d)


@dataclass
class UnidefectResult:
    status: str  # "strong", "weak" or "fail"
    k: int
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.status != "fail"


def unidefect_check(parts: Iterable[int], d: int, k: int) -> UnidefectResult:
    rm2, rm1 = build_rm(2, d), build_rm(1, d)
    parts = sorted(set(parts))
    strong = all(a in rm1 or defect(rm2, a).k == k for a in parts)
    if strong:
        return UnidefectResult("strong", k)
    allowed = {0, 1 << d, 1 << (d - 1)} | clean_weights(d, k)
    for a in parts:
        if weight(a) not in allowed:
            return UnidefectResult("fail", k, a)
    return UnidefectResult("weak", k)


@dataclass
class NearDerivationGroup:
    generators: list[MonoElt]
    order: int
    predicted_orbit: int


def group_from_near_derivation(lower_basis: Sequence[int], nd: NearDerivation,
                               q_gens: Sequence[Perm]) -> NearDerivationGroup:
    """Generators {ε_A : A in the lower basis} ∪ {ε_lift(f(s)) s}; order |lower|·|Q|."""
    n = len(q_gens[0]) if q_gens else 0
    gens = [MonoElt.diag(a, n) for a in lower_basis]
    gens += [MonoElt(nd.at(s), tuple(s)) for s in q_gens]
    lower = 1 << len(lower_basis)
    return NearDerivationGroup(gens, lower * nd.domain_order,
                               lower * (nd.domain_order // nd.kernel_order))


def rm_quotient(d: int) -> Quotient:
    """RM(2,d)/RM(1,d)."""
    return Quotient(build_rm(2, d).space, build_rm(1, d).space)
