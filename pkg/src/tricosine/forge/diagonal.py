"""Diagonal codes from a prime-order (2^m - 1) permutation fixing ω0."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..gf2 import GF2Subspace, Quotient, span
from ..mono import MonoElt, Perm, image_set, is_irreducible, singer_like_element
from ..rm import build_rm, defect
from ..spherecode import SphericalCode, cosine_set, reduce


class ImpureConstituent(ValueError):
    def __init__(self, msg: str, defects: set[int]):
        super().__init__(f"{msg}: defects {sorted(defects)}")
        self.defects = defects


@dataclass
class Constituent:
    poly: int  # irreducible factor whose kernel contains it
    basis: tuple[int, ...]  # quotient coordinates


@dataclass
class DSCReport:
    d: int
    m: int
    selector: int
    k: int
    pure: bool
    both_signs: bool
    n_constituents: int
    code: SphericalCode = field(repr=False)
    words: list[int] = field(repr=False)
    g: Perm = field(repr=False)

    @property
    def cosines(self) -> list[Fraction]:
        return cosine_set(self.code)


def avoiding_quotient(d: int, point: int = 0) -> Quotient:
    """Codewords of RM(2,d) avoiding ``point`` modulo those of RM(1,d)."""
    n = 1 << d
    keep = lambda w: not (w >> point) & 1  # noqa: E731
    top = GF2Subspace([w for w in build_rm(2, d) if keep(w)], n)
    low = GF2Subspace([w for w in build_rm(1, d) if keep(w)], n)
    return Quotient(top, low)


def _act(q: Quotient, g: Perm, coords: int) -> int:
    return q.coords(image_set(g, q.lift(coords)))


def _poly_eval(q: Quotient, g: Perm, poly: int, coords: int) -> int:
    out, v = 0, coords
    while poly:
        if poly & 1:
            out ^= v
        v = _act(q, g, v)
        poly >>= 1
    return out


def constituents(d: int, m: int, g: Perm | None = None) -> list[Constituent]:
    """m-dimensional irreducible g-submodules, ordered by factor polynomial then basis."""
    g = g or singer_like_element(m, d)
    q = avoiding_quotient(d)
    out = []
    for poly in range(1 << m, 1 << (m + 1)):
        if not is_irreducible(poly):
            continue
        ker = [v for v in range(1, 1 << q.dim) if _poly_eval(q, g, poly, v) == 0]
        seen = set()
        for v in ker:
            orbit, w = [], v
            for _ in range(m):
                orbit.append(w)
                w = _act(q, g, w)
            sub = GF2Subspace(orbit, q.dim)
            if sub.dim == m and sub.basis not in seen:
                seen.add(sub.basis)
                out.append(Constituent(poly, sub.basis))
    out.sort(key=lambda c: (c.poly, c.basis))
    return out


def build_dsc(d: int, m: int, selector: int = 0) -> DSCReport:
    g = singer_like_element(m, d)
    cons = constituents(d, m, g)
    if not 0 <= selector < len(cons):
        raise IndexError(f"selector {selector} out of range 0..{len(cons) - 1}")
    q = avoiding_quotient(d)
    c = cons[selector]
    words = sorted(span([q.lift(v) for v in c.basis] + list(q.b.basis)))
    rm2 = build_rm(2, d)
    ks = {defect(rm2, w).k for w in words} - {0}
    if len(ks) != 1:
        raise ImpureConstituent("constituent is not pure", ks)
    k = ks.pop()
    code = SphericalCode.from_signs(words, 1 << d, f"DSC_{1 << d}_{len(words)}_k{k}")
    ips = set(code.inner_products())
    h = 1 << (d - k)
    both = {h, -h} <= ips and ips <= {0, h, -h}
    return DSCReport(d, m, selector, k, True, both, len(cons), code, words, g)


def dsc_projection(rep: DSCReport) -> SphericalCode:
    """Drop the ω0 coordinate (every codeword avoids it)."""
    return reduce(rep.code, [0], rep.code.name + "_proj")


def preserved_by_diag_and_g(rep: DSCReport) -> bool:
    """The code is invariant under the sign changes in J and the permutation g."""
    n = 1 << rep.d
    s = set(rep.words)
    gens = [MonoElt.of_perm(rep.g)] + [MonoElt.diag(w, n) for w in GF2Subspace(rep.words, n).basis]
    return all(x.act_signs(w) in s for x in gens for w in rep.words)
