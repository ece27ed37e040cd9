"""The Optimism Group (2^{1+8}GL(4,2) shape), its 256-point orbit, and the (16,256,6) binary code."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ..cocycle import (Derivation, ModuleAction, NearDerivation, NearDerivationGroup,
                       UnidefectResult, extend_to_affine, group_from_near_derivation,
                       lift_to_near_derivation, rm_quotient, select_noninner_with_kernel_index,
                       unidefect_check)
from ..mono import (Perm, agl_generators, agl_order, gl_generators, orbit_signs,
                    perm_closure, translation)
from ..rm import build_rm, defect
from ..spherecode import BinaryCode, SphericalCode, to_binary

D = 4
N = 16


@dataclass
class OptimismReport:
    cocycle: Derivation
    near: NearDerivation
    group: NearDerivationGroup
    unidefect: UnidefectResult
    value_defects: list[int]  # defects of the nonzero value cosets
    stabilizer_order: int
    orbit: list[int] = field(repr=False)  # sign sets, BFS order

    @property
    def order(self) -> int:
        return self.group.order


@lru_cache(maxsize=None)
def gl42_action() -> ModuleAction:
    """GL(4,2) on RM(2,4)/RM(1,4)."""
    return ModuleAction.on_quotient(gl_generators(D), rm_quotient(D), name="gl42-m6")


@lru_cache(maxsize=None)
def optimism_near_derivation() -> NearDerivation:
    f = select_noninner_with_kernel_index(gl42_action(), 8)
    return extend_to_affine(lift_to_near_derivation(f), D)


@lru_cache(maxsize=None)
def build_optigroup() -> OptimismReport:
    nd = optimism_near_derivation()
    rm1 = build_rm(1, D)
    grp = group_from_near_derivation(rm1.space.basis, nd, agl_generators(D))
    rm2 = build_rm(2, D)
    vals = sorted({int(v) for v in nd.lifted if v})
    uni = unidefect_check(nd.parts(), D, 2)
    orbit = orbit_signs(0, grp.generators)
    return OptimismReport(nd.fbar, nd, grp, uni, [defect(rm2, v).k for v in vals],
                          nd.kernel_order, orbit)


def build_opticode() -> SphericalCode:
    return SphericalCode.from_signs(build_optigroup().orbit, N, name="OPTICODE")


def build_bc16() -> BinaryCode:
    return to_binary(build_opticode())


def stabilizer_generators() -> list[Perm]:
    """Coordinate permutations fixing x0 inside the Optimism Group: translations and Ker(f̄)."""
    f = build_optigroup().cocycle
    kern = f.kernel()
    gens = [translation(1 << i, D) for i in range(D)]
    current = set(perm_closure(gens))
    for p in kern:
        if p not in current:
            gens.append(p)
            current = set(perm_closure(gens))
    if len(current) != 16 * f.kernel_order():
        raise ArithmeticError("stabilizer closure has the wrong order")
    return gens


def preserves_code(gens, code_signs) -> bool:
    s = set(code_signs)
    return all(g.act_signs(x) in s for g in gens for x in code_signs)


def optigroup_order_formula() -> int:
    return 2 ** (D + 1) * agl_order(D)
