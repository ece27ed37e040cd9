"""Reed-Muller codes RM(r, d) on Ω = F2^d and the defect of second-order words.

A codeword is an int with bit ``x`` set when the point ω_x (radix-2 encoding
of ``x``) is in the support.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .gf2 import GF2Subspace, rank, weight

MAX_D = 6


def _check_d(d: int) -> None:
    if not 0 <= d <= MAX_D:
        raise ValueError(f"d={d} outside 0..{MAX_D}")


def full_word(d: int) -> int:
    return (1 << (1 << d)) - 1


def monomial_word(variables: int, d: int) -> int:
    """Truth table of the product of the coordinate functions in ``variables`` (a bitmask)."""
    return sum(1 << x for x in range(1 << d) if x & variables == variables)


@lru_cache(maxsize=None)
def _half_masks(d: int) -> tuple[int, ...]:
    # bit x set iff bit i of x is clear
    return tuple(sum(1 << x for x in range(1 << d) if not (x >> i) & 1) for i in range(d))


def anf(word: int, d: int) -> int:
    """Algebraic normal form by the Möbius transform; bit m is the coefficient of monomial m."""
    for i, low in enumerate(_half_masks(d)):
        word ^= (word & low) << (1 << i)
    return word


def degree(word: int, d: int) -> int:
    coeffs = anf(word, d)
    return max((m.bit_count() for m in range(1 << d) if (coeffs >> m) & 1), default=-1)


def affine_flat(direction: tuple[int, ...], offset: int) -> int:
    """Indicator of ``offset + span(direction)`` with direction vectors given as points."""
    pts = [offset]
    for v in direction:
        pts += [p ^ v for p in pts]
    return sum(1 << p for p in set(pts))


@dataclass(frozen=True)
class RMCode:
    r: int
    d: int
    space: GF2Subspace

    @property
    def length(self) -> int:
        return 1 << self.d

    @property
    def dim(self) -> int:
        return self.space.dim

    def __contains__(self, word: int) -> bool:
        return word in self.space

    def __iter__(self):
        return iter(self.space)

    def __len__(self) -> int:
        return len(self.space)


@lru_cache(maxsize=None)
def build_rm(r: int, d: int) -> RMCode:
    _check_d(d)
    if not 0 <= r <= d:
        raise ValueError(f"need 0 <= r <= d, got r={r}, d={d}")
    gens = [monomial_word(sum(1 << i for i in vs), d)
            for k in range(r + 1) for vs in combinations(range(d), k)]
    space = GF2Subspace(gens, 1 << d)
    assert space.dim == sum(comb(d, i) for i in range(r + 1))
    return RMCode(r, d, space)


@dataclass(frozen=True)
class DefectClass:
    k: int
    clean: bool


def polar_rank(word: int, d: int) -> int:
    """Rank of B(x, y) = χ(x+y) + χ(x) + χ(y) + χ(0) on the standard basis."""
    chi = lambda x: (word >> x) & 1  # noqa: E731
    rows = []
    for i in range(d):
        ei = 1 << i
        row = 0
        for j in range(d):
            ej = 1 << j
            if chi(ei ^ ej) ^ chi(ei) ^ chi(ej) ^ chi(0):
                row |= 1 << j
        rows.append(row)
    return rank(rows, d)


def is_clean(word: int, d: int) -> bool:
    return weight(word) != 1 << (d - 1)


def is_midset(word: int, d: int) -> bool:
    return weight(word) == 1 << (d - 1)


def defect(code: RMCode, a: int) -> DefectClass:
    """Half the rank of the alternating form of ``a``; requires a ∈ RM(2, d)."""
    if code.r != 2:
        raise ValueError("defect is defined on RM(2, d)")
    if a not in code:
        raise ValueError("word is not in RM(2, d)")
    return DefectClass(polar_rank(a, code.d) // 2, is_clean(a, code.d))


def clean_weights(d: int, k: int) -> set[int]:
    half = 1 << (d - 1)
    if k == 0:
        return {0, 1 << d}
    return {half - (1 << (d - k - 1)), half + (1 << (d - k - 1))}


def anchor_words(d: int, point: int = 0) -> list[int]:
    """The 2^d words of RM(1, d) that avoid ``point``."""
    return [w for w in build_rm(1, d) if not (w >> point) & 1]


def coset_clean_count(code: RMCode, a: int, anchor: list[int] | None = None) -> int:
    if a not in code:
        raise ValueError("word is not in the code")
    if a in build_rm(1, code.d):
        raise ValueError("word lies in RM(1, d)")
    if anchor is None:
        anchor = anchor_words(code.d)
    return sum(is_clean(a ^ w, code.d) for w in anchor)


def trace_of_sign(a: int, d: int) -> int:
    """Trace of the sign change at ``a``: 2^d − 2·|a|."""
    return (1 << d) - 2 * weight(a)
