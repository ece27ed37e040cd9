"""Few-cosine unions of subgroup orbits on the ±1 vectors x0 - 2v_B, B in RM(2,d)."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .. import kernels
from ..mono import MonoElt, orbit_signs
from ..rm import build_rm


class ActionError(ValueError):
    def __init__(self, msg: str, witness):
        super().__init__(f"{msg}: {witness!r}")
        self.witness = witness


@dataclass
class SearchConfig:
    d: int
    generators: list[MonoElt] = field(repr=False)
    max_cosines: int = 3
    antipodal: str = "exclude"  # or "include"
    min_arity: int = 2
    max_arity: int | None = None
    jobs: int = 1
    name: str = ""


@dataclass(frozen=True)
class SearchHit:
    orbits: tuple[int, ...]
    size: int
    cosines: tuple[Fraction, ...]
    antipodal: bool


@dataclass
class SearchResult:
    a0_size: int
    orbits: list[list[int]]
    hits: list[SearchHit]

    def union(self, hit: SearchHit) -> list[int]:
        return sorted(w for i in hit.orbits for w in self.orbits[i])


def _ips(a: Sequence[int], b: Sequence[int] | None, n: int) -> frozenset[int]:
    hist = kernels.xor_weight_hist(list(a), None if b is None else list(b))
    return frozenset(n - 2 * w for w in hist)


def _orbits(cfg: SearchConfig, a0: list[int]) -> list[list[int]]:
    members = set(a0)
    for g in cfg.generators:
        for a in a0:
            if g.act_signs(a) not in members:
                raise ActionError("subgroup does not act on A0", (g, a))
    seen: set[int] = set()
    out = []
    for a in a0:
        if a not in seen:
            orb = orbit_signs(a, cfg.generators)
            seen.update(orb)
            out.append(sorted(orb))
    return out


def _dfs(start: int, within, cross, budget: int, drop: frozenset, min_arity: int,
         max_arity: int) -> list[tuple[tuple[int, ...], frozenset]]:
    m = len(within)
    hits = []

    def rec(chosen: list[int], ips: frozenset):
        if len(chosen) >= min_arity:
            hits.append((tuple(chosen), ips))
        if len(chosen) == max_arity:
            return
        for j in range(chosen[-1] + 1, m):
            new = ips | within[j]
            for i in chosen:
                new = new | cross[i][j]
            if len(new - drop) <= budget:
                rec(chosen + [j], new)

    if len(within[start] - drop) <= budget:
        rec([start], within[start])
    return hits


def procedure51_search(cfg: SearchConfig) -> SearchResult:
    if cfg.d > 5:
        raise ValueError("A0 search supports d <= 5")
    n = 1 << cfg.d
    a0 = sorted(build_rm(2, cfg.d).space)
    orbits = _orbits(cfg, a0)
    m = len(orbits)
    within = [_ips(o, None, n) for o in orbits]
    cross = [[_ips(orbits[i], orbits[j], n) if i < j else frozenset() for j in range(m)]
             for i in range(m)]
    drop = frozenset({-n}) if cfg.antipodal == "exclude" else frozenset()
    max_arity = cfg.max_arity or m
    args = [(s, within, cross, cfg.max_cosines, drop, cfg.min_arity, max_arity) for s in range(m)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            parts = list(pool.map(_dfs, *zip(*args)))
    else:
        parts = [_dfs(*a) for a in args]
    hits = []
    for part in parts:
        for idx, ips in part:
            size = sum(len(orbits[i]) for i in idx)
            cos = tuple(sorted(Fraction(v, n) for v in ips - drop))
            hits.append(SearchHit(idx, size, cos, -n in ips))
    hits.sort(key=lambda h: (h.orbits,))
    return SearchResult(len(a0), orbits, hits)


def nsc_subgroup_generators() -> list[MonoElt]:
    """E01 sign changes together with the coordinate permutations of H (the x0-stabilizer H ∩ P)."""
    from .nsc import frame, h_lazy
    from ..mono import generated_subgroup

    f = frame()
    hp = generated_subgroup((g for g in h_lazy() if g.signs == 0), 1 << 4)
    return f.sign_gens(f.E) + hp.generators


def eq_subgroup_generators() -> list[MonoElt]:
    """E01 sign changes with the split GL(3,2) complement Q."""
    from .nsc import frame

    f = frame()
    return f.sign_gens(f.E) + [MonoElt.of_perm(q) for q in f.Q_gens]


SUBGROUP_PRESETS = {"nsc": nsc_subgroup_generators, "eq": eq_subgroup_generators}
