"""The 64- and 128-point codes built from the 4^3:GL(3,2) subgroup H and the 2^3.GL(3,2) group H*."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from ..cocycle import (Derivation, ModuleAction, UnidefectResult,
                       unidefect_check)
from ..gf2 import GF2Subspace, Quotient, bits, solve, GF2Matrix
from ..mono import (CapExceeded, MonoElt, MonoGroup, closure, exponent, gl_generators,
                    generated_subgroup, image_set, is_abelian, o2_subgroup, orbit_signs,
                    perm_closure, section_builders_d4, Frame4)
from ..rm import affine_flat, build_rm, defect
from ..spherecode import SphericalCode, cosine_set, reduce
from .optimism import optimism_near_derivation

N = 16


class StructureError(AssertionError):
    def __init__(self, msg: str, witness=None):
        super().__init__(msg if witness is None else f"{msg}: {witness!r}")
        self.witness = witness


def _require(cond: bool, msg: str, witness=None) -> None:
    if not cond:
        raise StructureError(msg, witness)


@lru_cache(maxsize=None)
def frame() -> Frame4:
    return section_builders_d4()


# -- the subgroup H fixing points 0 and 1 ------------------------------------

def x_generators() -> list[MonoElt]:
    """2^5.GL(4,2): RM(1,4) sign changes and the cocycle-twisted linear maps."""
    nd = optimism_near_derivation()
    gens = [MonoElt.diag(a, N) for a in build_rm(1, 4).space.basis]
    gens += [MonoElt(nd.at(s), s) for s in gl_generators(4)]
    return gens


def _fixes01(signs: int, packed: int) -> bool:
    return signs & 3 == 0 and packed & 0xFF == 0x10


def h_from_x(x: MonoGroup) -> list[MonoElt]:
    """Elements of X fixing v0 and v1; they normalize E01 automatically (checked by the caller)."""
    return x.select(_fixes01)


def h_lazy() -> list[MonoElt]:
    """The same set without materializing X: lifts over the 1344 linear maps fixing ω1."""
    f = frame()
    nd = optimism_near_derivation()
    rm1 = list(build_rm(1, 4).space)
    out = []
    for p in perm_closure(f.P01_gens):
        a = nd.at(p)
        for l in rm1:
            s = a ^ l
            if s & 3 == 0:
                out.append(MonoElt(s, p))
    return out


@dataclass
class HReport:
    H: MonoGroup
    x_order: int
    lazy_agrees: bool
    o2: MonoGroup
    o2_exponent: int
    orbit: list[int] = field(repr=False)
    commutator_group_order: int = 0
    codes: dict[str, SphericalCode] = field(default_factory=dict, repr=False)
    hss_generators: list[MonoElt] = field(default_factory=list, repr=False)
    hss_orbit: list[int] = field(default_factory=list, repr=False)


def _sign_space_of(elements: Sequence[MonoElt]) -> GF2Subspace | None:
    if any(any(i != p for i, p in enumerate(g.perm)) for g in elements):
        return None
    return GF2Subspace((g.signs for g in elements), N)


def build_h_and_nsc_family(materialize_x: bool = True, sign_block: int | None = None) -> HReport:
    """Build H, check its structure, and emit NSC_{16,64}, NSC_{15,64}, NSC_{14,64}, NSC_{16,128}, NSC_{15,128}.

    ``sign_block`` is the hyperplane whose sign change extends H to H**;
    it defaults to the hyperplane B1 (contains ω1, avoids ω0).
    """
    f = frame()
    lazy = h_lazy()
    lazy_keys = {g.key() for g in lazy}
    if materialize_x:
        x = closure(x_generators(), cap=700_000)
        _require(x.order == 645120, "|X| differs from 2^5·20160", x.order)
        elems = h_from_x(x)
        agrees = {g.key() for g in elems} == lazy_keys
        _require(agrees, "lazy H differs from the filtered X")
        x_order = x.order
        del x
    else:
        elems, agrees, x_order = lazy, True, 0
    H = generated_subgroup(elems, N)
    _require(H.order == 10752 == len(elems), "|H| is not 10752", H.order)
    E = f.E
    for g in H.generators:
        _require(GF2Subspace((image_set(g.perm, e) for e in E.basis), N) == E,
                 "H does not normalize E01", g)
    diag = [g for g in elems if g.is_identity() or all(i == p for i, p in enumerate(g.perm))]
    _require(_sign_space_of(diag) == E and len(diag) == 8, "H ∩ R is not E01")

    o2 = o2_subgroup(H)
    exp = exponent(o2)
    _require(o2.order == 64 and is_abelian(o2) and exp == 4, "O2(H) is not 4^3",
             (o2.order, exp))
    # 4^3 has rank 3: exactly 8 elements of order dividing 2
    _require(sum(1 for g in o2 if (g * g).is_identity()) == 8, "O2(H) does not have rank 3")

    orbit = orbit_signs(0, H.generators)
    _require(len(orbit) == 64, "x0 H does not have 64 points", len(orbit))
    _require(sorted(orbit_signs(0, o2.generators)) == sorted(orbit), "O2(H) is not transitive")

    # p01 fixes x0 and normalizes H with [H, p01] = E01
    p = MonoElt.of_perm(f.p01)
    for g in H.generators:
        _require(g.conj(p) in H, "p01 does not normalize H", g)
    comms = {(g.inverse() * p.inverse() * g * p) for g in H}
    _require(_sign_space_of(list(comms)) == E, "[H, p01] is not E01")

    c16 = SphericalCode.from_signs(orbit, N, "NSC_16_64")
    codes = {"NSC_16_64": c16,
             "NSC_15_64": reduce(c16, [f.omega0], "NSC_15_64"),
             "NSC_14_64": reduce(c16, [f.omega0, f.omega1], "NSC_14_64")}

    block = f.B1 if sign_block is None else sign_block
    eps = MonoElt.diag(block, N)
    for g in H.generators:
        c = g.inverse() * eps.inverse() * g * eps
        _require(all(i == q for i, q in enumerate(c.perm)) and c.signs in E,
                 "[H, ε] is not inside E01", g)
    hss = H.generators + [eps]
    orbit2 = orbit_signs(0, hss)
    _require(len(orbit2) == 128, "x0 H** does not have 128 points", len(orbit2))
    full = (1 << N) - 1
    s2 = set(orbit2)
    _require(all(v ^ full not in s2 for v in orbit2), "x0 H** contains an antipodal pair")
    c128 = SphericalCode.from_signs(orbit2, N, "NSC_16_128")
    codes["NSC_16_128"] = c128
    # the H** orbit agrees at ω0 only when the sign block avoids it
    if not (block >> f.omega0) & 1:
        codes["NSC_15_128"] = reduce(c128, [f.omega0], "NSC_15_128")
    return HReport(H, x_order, agrees, o2, exp, orbit, len(comms), codes, hss, orbit2)


def opticode_alternate_route(nsc_orbit: Sequence[int]) -> set[int]:
    """NSC_{16,64} · (D ∩ R): translate every vector by the RM(1,4) sign changes."""
    rm1 = list(build_rm(1, 4).space)
    return {s ^ l for s in nsc_orbit for l in rm1}


# -- the GL(3,2) route to H* ---------------------------------------------------

@dataclass
class HStarCandidate:
    values: int  # generator values in J/E coordinates
    full: Derivation
    gamma0: Derivation
    gamma1: Derivation
    unidefect: UnidefectResult


@dataclass
class HStarReport:
    n_cocycles: int
    candidates: list[HStarCandidate]
    chosen: HStarCandidate
    generators: list[MonoElt] = field(repr=False)
    orbit: list[int] = field(repr=False)
    code: SphericalCode = field(repr=False)
    quotient: Quotient = field(repr=False)


@lru_cache(maxsize=None)
def _je_actions():
    f = frame()
    je = Quotient(f.J, f.E)
    zero = GF2Subspace.zero(N)
    m_full = ModuleAction.on_quotient(f.Q_gens, je, name="Q on J/E")
    m0 = ModuleAction.on_quotient(f.Q_gens, Quotient(f.T0, zero), name="Q on F0")
    m1 = ModuleAction.on_quotient(f.Q_gens, Quotient(f.B01, f.E), name="Q on D01/E")
    return je, m_full, m0, m1


def _split_components(je: Quotient, m0: ModuleAction, m1: ModuleAction, coords: int) -> tuple[int, int]:
    """J = T0 ⊕ B[01]: split the lift of a J/E class into its F0 and D01/E coordinates."""
    f = frame()
    v = je.lift(coords)
    t_basis, b_basis = list(f.T0.basis), list(f.B01.basis)
    x = solve(GF2Matrix(t_basis + b_basis, N), v)
    if x is None:
        raise StructureError("J is not T0 + B[01]", v)
    t = b = 0
    for i in bits(x):
        if i < len(t_basis):
            t ^= t_basis[i]
        else:
            b ^= b_basis[i - len(t_basis)]
    return m0.quotient.coords(t), m1.quotient.coords(b)


def build_h_star_gl32_route(k: int = 2) -> HStarReport:
    f = frame()
    je, m_full, m0, m1 = _je_actions()
    z1 = m_full.z1_space()
    cands = []
    for values in z1:
        d = m_full.derivation(values)
        gv = d.gen_values()
        parts = [_split_components(je, m0, m1, v) for v in gv]
        g0 = m0.derivation(sum(p[0] << (m0.n * i) for i, p in enumerate(parts)))
        g1 = m1.derivation(sum(p[1] << (m1.n * i) for i, p in enumerate(parts)))
        if g0.is_inner() or g1.is_inner():
            continue
        if set(g0.kernel()) != set(g1.kernel()) or g0.kernel_order() != 21:
            continue
        lifts = {je.lift(int(c)) for c in set(d.table.tolist())}
        parts_all = {a ^ e for a in lifts for e in f.E}
        uni = unidefect_check(parts_all, 4, k)
        if uni:
            cands.append(HStarCandidate(values, d, g0, g1, uni))
    if not cands:
        raise StructureError("no noninner near-derivation with equal Frobenius kernels")
    chosen = cands[0]
    gens = f.sign_gens(f.E)
    gens += [MonoElt(je.lift(v), s) for v, s in zip(chosen.full.gen_values(), f.Q_gens)]
    orbit = orbit_signs(0, gens)
    code = SphericalCode.from_signs(orbit, N, "NSC_16_64_gl32")
    return HStarReport(1 << z1.dim, cands, chosen, gens, orbit, code, je)


def gram_multiset(c: SphericalCode) -> Counter:
    return c.inner_products()


# -- the explicit 6-set ----------------------------------------------------------

def y_set(t: MonoElt | tuple) -> int:
    """For an involution t of Q, the t-fixed 6-set u, v, a, a', d, f built from B0."""
    f = frame()
    perm = t.perm if isinstance(t, MonoElt) else tuple(t)
    pts = [x for x in bits(f.B0) if x != f.omega0]
    moved = [x for x in pts if perm[x] != x]
    fixed = [x for x in pts if perm[x] == x]
    if len(moved) != 4 or len(fixed) != 3:
        raise ValueError("t does not have two 2-cycles on B0 minus ω0")
    a = moved[0]
    a2 = perm[a]
    for d_, e in combinations(fixed, 2):
        if affine_flat((a2 ^ a, d_ ^ a), a) == (1 << a) | (1 << a2) | (1 << d_) | (1 << e):
            break
    else:
        raise ValueError("no affine plane through the 2-cycle and two fixed points")
    ff = next(x for x in fixed if x not in (d_, e))
    # d and e play symmetric roles; f is the remaining fixed point
    u, v = f.p01[e], f.p01[ff]
    return (1 << u) | (1 << v) | (1 << a) | (1 << a2) | (1 << d_) | (1 << ff)


# -- nonsplitting ---------------------------------------------------------------

@dataclass
class SplitResult:
    split: bool
    tried: int
    complement: MonoGroup | None = None


def nonsplit_complement_search(normal: Sequence[MonoElt], quotient_gens: Sequence[MonoElt],
                               quotient_order: int, max_group: int = 5000) -> SplitResult:
    """Decide whether the extension of ``normal`` (elementary abelian) by the quotient splits.

    A complement meets each coset of ``normal`` once, so it contains exactly
    one lift of each quotient generator; trying all lift tuples is exhaustive.
    """
    if len(normal) * quotient_order > max_group:
        raise ValueError("group too large for the lift search")
    n = quotient_gens[0].n
    normal_keys = {e.key() for e in normal}
    tried = 0
    lifts = [[e * g for e in normal] for g in quotient_gens]

    def rec(i: int, chosen: list[MonoElt]):
        nonlocal tried
        if i == len(lifts):
            tried += 1
            try:
                sub = closure(chosen, cap=quotient_order, n=n)
            except CapExceeded:
                return None
            if sub.order == quotient_order and \
                    sum(1 for g in sub if g.key() in normal_keys) == 1:
                return sub
            return None
        for x in lifts[i]:
            hit = rec(i + 1, chosen + [x])
            if hit is not None:
                return hit
        return None

    comp = rec(0, [])
    return SplitResult(comp is not None, tried, comp)


def check_nsc_cosines(codes: dict[str, SphericalCode]) -> dict[str, list]:
    return {name: cosine_set(c) for name, c in codes.items()}


def q_defect_of_value(value: int) -> int:
    return defect(build_rm(2, 4), value).k
