"""Spherical codes as sets of integer vectors of common norm, and their binary images."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .mono import CapExceeded, MonoElt, Perm, image_set, perm_closure


class ReductionError(ValueError):
    def __init__(self, msg: str, witness: tuple[int, int]):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class SphericalCode:
    vectors: tuple[tuple[int, ...], ...]
    norm_sq: int
    name: str = ""

    def __init__(self, vectors: Iterable[Sequence[int]], name: str = ""):
        vecs = tuple(tuple(int(x) for x in v) for v in vectors)
        if not vecs:
            raise ValueError("empty code")
        norms = {sum(x * x for x in v) for v in vecs}
        if len(norms) != 1:
            raise ValueError(f"vectors have different norms {sorted(norms)}")
        if len(set(vecs)) != len(vecs):
            raise ValueError("duplicate vectors")
        if len({len(v) for v in vecs}) != 1:
            raise ValueError("vectors have different lengths")
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "norm_sq", norms.pop())
        object.__setattr__(self, "name", name)

    @classmethod
    def from_signs(cls, negatives: Iterable[int], n: int, name: str = "") -> "SphericalCode":
        return cls(((-1 if (m >> i) & 1 else 1 for i in range(n)) for m in negatives), name)

    @property
    def dim(self) -> int:
        return len(self.vectors[0])

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def array(self) -> np.ndarray:
        return np.array(self.vectors, dtype=np.int64)

    def sign_masks(self) -> list[int] | None:
        """-1 coordinate sets when every entry is ±1, else None."""
        out = []
        for v in self.vectors:
            m = 0
            for i, x in enumerate(v):
                if x == -1:
                    m |= 1 << i
                elif x != 1:
                    return None
            out.append(m)
        return out

    def inner_products(self) -> Counter:
        """Multiset of inner products over unordered pairs of distinct vectors."""
        masks = self.sign_masks()
        if masks is not None:
            n = self.dim
            return Counter({n - 2 * w: c for w, c in kernels.xor_weight_hist(masks).items()})
        a = self.array()
        g = a @ a.T
        iu = np.triu_indices(len(a), 1)
        vals, counts = np.unique(g[iu], return_counts=True)
        return Counter({int(v): int(c) for v, c in zip(vals, counts)})

    def gram(self) -> np.ndarray:
        a = self.array()
        return a @ a.T

    def as_set(self) -> frozenset:
        return frozenset(self.vectors)


def cosine_set(c: SphericalCode) -> list[Fraction]:
    if len(c) < 2:
        raise ValueError("need at least two vectors")
    return sorted(Fraction(ip, c.norm_sq) for ip in c.inner_products())


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def reduce(c: SphericalCode, drop: Iterable[int], name: str = "") -> SphericalCode:
    """Delete coordinates on which every vector agrees."""
    drop = sorted(set(drop))
    first = c.vectors[0]
    for idx, v in enumerate(c.vectors):
        for i in drop:
            if v[i] != first[i]:
                raise ReductionError(f"vectors disagree on coordinate {i}", (idx, i))
    keep = [i for i in range(c.dim) if i not in drop]
    return SphericalCode((tuple(v[i] for i in keep) for v in c.vectors), name)


def reduced_cosines(d: int, k: int, ell: int) -> list[Fraction]:
    """Cosines after deleting ell coordinates (each +1 throughout) from a unidefect-k orbit code."""
    den = (1 << d) - ell
    h = 1 << (d - k)
    return sorted(Fraction(num, den) for num in (-h - ell, -ell, h - ell))


@dataclass
class IPReport:
    within: set[int]
    cross: set[int]
    violations: list[tuple[int, int, int]]

    @property
    def ok(self) -> bool:
        return not self.violations


def orbit_ip_invariants(c: SphericalCode, partition: Sequence[Sequence[int]],
                        within_allowed: set[int], cross_allowed: set[int]) -> IPReport:
    """Inner products inside parts and across parts, checked against allowed sets."""
    g = c.gram()
    label = np.empty(len(c), dtype=np.int64)
    for k, part in enumerate(partition):
        label[list(part)] = k
    same = label[:, None] == label[None, :]
    np.fill_diagonal(same, False)
    cross = label[:, None] != label[None, :]
    within = {int(v) for v in np.unique(g[same])}
    crossv = {int(v) for v in np.unique(g[cross])}
    bad = []
    for mask, allowed in ((same, within_allowed), (cross, cross_allowed)):
        hit = mask & ~np.isin(g, sorted(allowed))
        for i, j in zip(*np.nonzero(hit)):
            bad.append((int(i), int(j), int(g[i, j])))
            if len(bad) > 10:
                break
    return IPReport(within, crossv, bad)


@dataclass
class SchemeReport:
    relations: list[int]  # inner product per relation; relation 0 is the identity
    is_scheme: bool
    intersection_numbers: dict | None = None  # p[c][a][b]
    violation: tuple | None = None  # (a, b, c, x, y, count)


def association_scheme_check(c: SphericalCode) -> SchemeReport:
    g = c.gram()
    n = len(c)
    off = sorted({int(v) for v in np.unique(g[~np.eye(n, dtype=bool)])})
    relations = [c.norm_sq] + off
    rel = np.zeros((n, n), dtype=np.int64)
    for r, v in enumerate(off, start=1):
        rel[(g == v) & ~np.eye(n, dtype=bool)] = r
    mats = [(rel == r).astype(np.int64) for r in range(len(relations))]
    p: dict[int, dict[int, dict[int, int]]] = {cc: {a: {} for a in range(len(relations))}
                                                for cc in range(len(relations))}
    for a, ma in enumerate(mats):
        for b, mb in enumerate(mats):
            prod = ma @ mb
            for cc in range(len(relations)):
                vals = np.unique(prod[rel == cc])
                if len(vals) != 1:
                    where = np.argwhere((rel == cc) & (prod != vals[0]))[0]
                    return SchemeReport(relations, False, None,
                                        (a, b, cc, int(where[0]), int(where[1]),
                                         int(prod[where[0], where[1]])))
                p[cc][a][b] = int(vals[0])
    return SchemeReport(relations, True, p)


# -- binary codes -------------------------------------------------------------

@dataclass(frozen=True)
class BinaryCode:
    length: int
    words: tuple[int, ...]

    def __init__(self, length: int, words: Iterable[int]):
        ws = tuple(sorted(set(int(w) for w in words)))
        if any(w >> length for w in ws):
            raise ValueError("word longer than the code length")
        object.__setattr__(self, "length", length)
        object.__setattr__(self, "words", ws)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, w: int) -> bool:
        return w in self._set

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.words)
            object.__setattr__(self, "_cached_set", s)
        return s

    def weights(self) -> Counter:
        return Counter(w.bit_count() for w in self.words)

    def translate(self, s: int) -> "BinaryCode":
        return BinaryCode(self.length, (w ^ s for w in self.words))

    def permute(self, p: Perm) -> "BinaryCode":
        return BinaryCode(self.length, (image_set(p, w) for w in self.words))

    def hex_lines(self) -> list[str]:
        width = (self.length + 3) // 4
        return [format(w, f"0{width}x") for w in self.words]


def to_binary(c: SphericalCode) -> BinaryCode:
    masks = c.sign_masks()
    if masks is None:
        raise ValueError("code has a coordinate outside ±1")
    return BinaryCode(c.dim, masks)


def pair_distance_hist(b: BinaryCode) -> dict[int, int]:
    return dict(sorted(kernels.xor_weight_hist(list(b.words)).items()))


def min_distance(b: BinaryCode) -> int:
    return min(pair_distance_hist(b))


def distance_distribution(b: BinaryCode, word: int | None = None) -> dict[int, int]:
    """Distances from ``word`` (default: the smallest word) to every codeword, itself included."""
    if word is None:
        word = b.words[0]
    return dict(sorted(kernels.xor_weight_hist([word], list(b.words)).items()))


def is_distance_invariant(b: BinaryCode) -> bool:
    ref = distance_distribution(b)
    return all(distance_distribution(b, w) == ref for w in b.words)


def nonlinearity_witness(b: BinaryCode) -> tuple[int, int] | None:
    """A pair whose sum leaves the code, or None when the code is linear."""
    if 0 not in b:
        raise ValueError("code must contain the zero word")
    for i, u in enumerate(b.words):
        for w in b.words[i + 1:]:
            if u ^ w not in b:
                return u, w
    return None


@dataclass
class AutomorphismResult:
    order: int
    generators: list[Perm]
    elements: list[Perm] = field(repr=False)
    nodes: int = 0


def _blocks(b: BinaryCode) -> list[int]:
    wt = min((w.bit_count() for w in b.words if w), default=0)
    return [w for w in b.words if w and w.bit_count() == wt]


def search_order(n: int, blocks: Sequence[int]) -> list[int]:
    """Rarest point class first (by block degree), then greedy by co-incidence with chosen points."""
    deg = [sum((blk >> i) & 1 for blk in blocks) for i in range(n)]
    freq = Counter(deg)
    order = [min(range(n), key=lambda i: (freq[deg[i]], i))]
    while len(order) < n:
        chosen = set(order)

        def score(i):
            co = sum(1 for blk in blocks if (blk >> i) & 1 and any((blk >> j) & 1 for j in chosen))
            return (-co, freq[deg[i]], i)

        order.append(min((i for i in range(n) if i not in chosen), key=score))
    return order


def code_isomorphisms(src: BinaryCode, dst: BinaryCode, first_only: bool = False,
                      node_budget: int = 10**8) -> tuple[list[Perm], int]:
    """Coordinate permutations p with p[src] == dst; raises CapExceeded past the node budget."""
    if src.length != dst.length or len(src) != len(dst) or src.weights() != dst.weights():
        return [], 0
    sb, db = _blocks(src), _blocks(dst)
    order = search_order(src.length, sb)
    perms, nodes, exhausted = kernels.perm_backtrack(src.length, sb, db, src.words, dst.words,
                                                     order, first_only, node_budget)
    if exhausted:
        raise CapExceeded(f"backtrack exceeded {node_budget} nodes")
    return perms, nodes


def _greedy_perm_generators(elements: Sequence[Perm]) -> list[Perm]:
    gens: list[Perm] = []
    current: set[Perm] = {tuple(range(len(elements[0])))}
    for e in elements:
        if e not in current:
            gens.append(e)
            current = set(perm_closure(gens))
    return gens


def binary_automorphism_group(b: BinaryCode, node_budget: int = 10**8) -> AutomorphismResult:
    perms, nodes = code_isomorphisms(b, b, node_budget=node_budget)
    gens = _greedy_perm_generators(perms)
    closed = set(perm_closure(gens)) if gens else {tuple(range(b.length))}
    if closed != set(perms):
        raise ArithmeticError("automorphism list is not closed")
    return AutomorphismResult(len(perms), gens, perms, nodes)


def monomial_automorphism_order(c: SphericalCode, aut_order: int | None = None,
                                node_budget: int = 10**8) -> int:
    """Order of the signed-permutation symmetry group of a ±1 code containing the all-ones vector.

    A signed permutation taking the all-ones vector to the vector with -1 set S
    preserves the code iff its permutation part maps the binary code C onto
    C + S, so the order is |{S in C : C ≅ C + S}| · |Aut(C)|.
    """
    b = to_binary(c)
    if 0 not in b:
        raise ValueError("code must contain the all-ones vector")
    if aut_order is None:
        aut_order = binary_automorphism_group(b, node_budget).order
    hits = sum(1 for s in b.words
               if code_isomorphisms(b, b.translate(s), first_only=True, node_budget=node_budget)[0])
    return hits * aut_order


def preserves(code: SphericalCode, g: MonoElt) -> bool:
    s = code.as_set()
    return all(g.act(v) in s for v in code.vectors)
