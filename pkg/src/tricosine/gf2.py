"""Linear algebra over F2 with rows packed into Python ints.

Bit ``i`` of a word is coordinate ``i``.  Echelon forms keep pivots at the
*highest* set bit of each row, which makes "reduce against the basis" return
the smallest integer in a coset.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

MAX_BITS = 64


def weight(w: int) -> int:
    return w.bit_count()


def parity(w: int) -> int:
    return w.bit_count() & 1


def bits(w: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while w:
        low = w & -w
        yield low.bit_length() - 1
        w ^= low


def from_bits(indices: Iterable[int]) -> int:
    w = 0
    for i in indices:
        w |= 1 << i
    return w


def _check_width(n: int) -> None:
    if not 0 <= n <= MAX_BITS:
        raise ValueError(f"bit width {n} outside 0..{MAX_BITS}")


@dataclass(frozen=True)
class GF2Matrix:
    rows: tuple[int, ...]
    ncols: int

    def __init__(self, rows: Iterable[int], ncols: int):
        _check_width(ncols)
        rows = tuple(rows)
        limit = 1 << ncols
        for r in rows:
            if not 0 <= r < limit:
                raise ValueError(f"row {r:#x} does not fit in {ncols} columns")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def vecmul(self, coeffs: int) -> int:
        """Row vector times matrix: XOR of the rows selected by ``coeffs``."""
        out = 0
        for i in bits(coeffs):
            out ^= self.rows[i]
        return out

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        return GF2Matrix((other.vecmul(r) for r in self.rows), other.ncols)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls((1 << i for i in range(n)), n)


def _insert(pivots: dict[int, int], v: int) -> int:
    """Reduce ``v`` against a pivot map and insert it if nonzero; returns the residue."""
    while v:
        top = v.bit_length() - 1
        row = pivots.get(top)
        if row is None:
            # keep the basis fully reduced: clear other pivots from v, then top from the rest
            for p, r in pivots.items():
                if (v >> p) & 1:
                    v ^= r
            for p, r in pivots.items():
                if (r >> top) & 1:
                    pivots[p] = r ^ v
            pivots[top] = v
            return v
        v ^= row
    return 0


@dataclass(frozen=True)
class GF2Subspace:
    """Subspace of F2^n stored as a fully reduced echelon basis (descending pivots)."""

    basis: tuple[int, ...]
    ambient_dim: int
    _pivots: dict = field(default=None, repr=False, compare=False, hash=False)

    def __init__(self, basis: Iterable[int], ambient_dim: int):
        _check_width(ambient_dim)
        pivots: dict[int, int] = {}
        limit = 1 << ambient_dim
        for v in basis:
            if not 0 <= v < limit:
                raise ValueError(f"vector {v:#x} outside F2^{ambient_dim}")
            _insert(pivots, v)
        ordered = tuple(pivots[p] for p in sorted(pivots, reverse=True))
        object.__setattr__(self, "basis", ordered)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "_pivots", dict(sorted(pivots.items(), reverse=True)))

    @classmethod
    def zero(cls, n: int) -> "GF2Subspace":
        return cls((), n)

    @classmethod
    def full(cls, n: int) -> "GF2Subspace":
        return cls((1 << i for i in range(n)), n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self._pivots)

    def __len__(self) -> int:
        return 1 << self.dim

    def reduce(self, v: int) -> int:
        """Smallest integer in the coset ``v + self``."""
        for p, row in self._pivots.items():
            if (v >> p) & 1:
                v ^= row
        return v

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def contains_space(self, other: "GF2Subspace") -> bool:
        return all(v in self for v in other.basis)

    def __iter__(self) -> Iterator[int]:
        return iter(span(self.basis))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GF2Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.basis, self.ambient_dim))

    def __add__(self, other: "GF2Subspace") -> "GF2Subspace":
        return GF2Subspace(self.basis + other.basis, max(self.ambient_dim, other.ambient_dim))

    def intersect(self, other: "GF2Subspace") -> "GF2Subspace":
        # Zassenhaus: stack (u|u) and (v|0); rows with zero left half give u ∩ v.
        n = max(self.ambient_dim, other.ambient_dim)
        if 2 * n > MAX_BITS:
            return GF2Subspace((v for v in self if v in other), n)
        rows = [u | (u << n) for u in self.basis] + [v << n for v in other.basis]
        piv: dict[int, int] = {}
        for r in rows:
            _insert(piv, r)
        low = (1 << n) - 1
        return GF2Subspace((r & low for r in piv.values() if r >> n == 0), n)

    def coordinates(self, v: int) -> int:
        """Coefficients of ``v`` in ``self.basis`` (bit i for basis[i]); ValueError if v ∉ self."""
        coeffs = 0
        for i, (p, row) in enumerate(self._pivots.items()):
            if (v >> p) & 1:
                v ^= row
                coeffs |= 1 << i
        if v:
            raise ValueError("vector not in subspace")
        return coeffs


def span(vectors: Sequence[int]) -> list[int]:
    """All F2 combinations, ordered by coefficient integer (Gray-code free, exact)."""
    out = [0]
    for v in vectors:
        out += [x ^ v for x in out]
    return out


def rref(m: GF2Matrix) -> tuple[GF2Subspace, int]:
    space = GF2Subspace(m.rows, m.ncols)
    return space, space.dim


def rank(rows: Iterable[int], ncols: int = MAX_BITS) -> int:
    return GF2Subspace(rows, ncols).dim


def solve(m: GF2Matrix, t: int) -> int | None:
    """Return ``x`` with ``x · m == t`` (x indexes rows of m), or None if t is not in the row space."""
    if t >> m.ncols:
        raise ValueError("target has more bits than the matrix has columns")
    # track combinations alongside the elimination
    piv: dict[int, tuple[int, int]] = {}
    for i, r in enumerate(m.rows):
        c = 1 << i
        while r:
            top = r.bit_length() - 1
            hit = piv.get(top)
            if hit is None:
                piv[top] = (r, c)
                break
            r ^= hit[0]
            c ^= hit[1]
    x = 0
    while t:
        top = t.bit_length() - 1
        hit = piv.get(top)
        if hit is None:
            return None
        t ^= hit[0]
        x ^= hit[1]
    return x


def nullspace(rows: Iterable[int], ncols: int) -> GF2Subspace:
    """Basis of ``{x : parity(r & x) == 0 for every row r}``."""
    space = GF2Subspace(rows, ncols)
    piv = space._pivots
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for c in free:
        x = 1 << c
        for p, row in piv.items():
            if (row >> c) & 1:
                x |= 1 << p
        out.append(x)
    return GF2Subspace(out, ncols)


def mat_inverse(m: GF2Matrix) -> GF2Matrix:
    n = m.nrows
    if n != m.ncols:
        raise ValueError("not square")
    rows = [m.rows[i] | (1 << (n + i)) for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if (rows[r] >> col) & 1), None)
        if pivot is None:
            raise ValueError("singular matrix")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        for r in range(n):
            if r != col and (rows[r] >> col) & 1:
                rows[r] ^= rows[col]
    return GF2Matrix((r >> n for r in rows), n)


def _complement_basis(a: GF2Subspace, b: GF2Subspace) -> tuple[int, ...]:
    if not a.contains_space(b):
        raise ValueError("b is not a subspace of a")
    piv: dict[int, int] = {}
    for v in a.basis:
        _insert(piv, b.reduce(v))
    comp = [piv[p] for p in sorted(piv)]
    # residues stay reduced against b after mutual reduction
    return tuple(b.reduce(c) for c in comp)


class Quotient:
    """The quotient ``a / b`` with fixed coordinates and canonical lifts.

    Coordinate ``i`` refers to ``self.basis[i]``; basis vectors are sorted by
    pivot and each is the smallest member of its coset.
    """

    def __init__(self, a: GF2Subspace, b: GF2Subspace):
        self.a = a
        self.b = b
        self.basis = _complement_basis(a, b)
        self._pivots = [v.bit_length() - 1 for v in self.basis]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, v: int) -> int:
        if v not in self.a:
            raise ValueError("vector not in the numerator space")
        r = self.b.reduce(v)
        out = 0
        for i, p in enumerate(self._pivots):
            if (r >> p) & 1:
                out |= 1 << i
        return out

    def lift(self, coords: int) -> int:
        """Canonical (smallest-integer) member of the coset with these coordinates."""
        v = 0
        for i in bits(coords):
            v ^= self.basis[i]
        return self.b.reduce(v)

    def reps(self) -> list[int]:
        return sorted(self.lift(c) for c in range(1 << self.dim))


def coset_reps(a: GF2Subspace, b: GF2Subspace) -> list[int]:
    return Quotient(a, b).reps()


def quotient_coords(a: GF2Subspace, b: GF2Subspace, v: int) -> int:
    return Quotient(a, b).coords(v)
