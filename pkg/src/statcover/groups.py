"""Finite abelian groups given as explicit products of cyclic groups.

Elements are coordinate vectors reduced modulo the factor orders.  The
canonical element order is lexicographic over coordinates, which coincides
with row-major mixed-radix index order; every deterministic tie-break in
this package refers to that order.  All operations are pure and exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "GroupMismatchError",
    "GroupSpec",
    "GroupElement",
    "Character",
    "closure_indices",
    "require_same_spec",
]


class GroupMismatchError(ValueError):
    """Two operands belong to different groups."""


def require_same_spec(left, right) -> None:
    """Raise GroupMismatchError unless both operands share one GroupSpec."""
    if left.spec != right.spec:
        raise GroupMismatchError(
            f"operands live in different groups: {left.spec.moduli} vs {right.spec.moduli}"
        )


@dataclass(frozen=True)
class GroupSpec:
    """The group Z_m1 x ... x Z_mn; every factor order m_j must be >= 2."""

    moduli: tuple[int, ...]

    def __post_init__(self) -> None:
        mods = tuple(int(m) for m in self.moduli)
        if not mods:
            raise ValueError("a group needs at least one cyclic factor")
        bad = [m for m in mods if m < 2]
        if bad:
            raise ValueError(f"cyclic factor orders must be at least 2, got {bad}")
        object.__setattr__(self, "moduli", mods)

    # structure ------------------------------------------------------------

    @cached_property
    def order(self) -> int:
        return math.prod(self.moduli)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @cached_property
    def _weights(self) -> np.ndarray:
        """Mixed-radix place values (row-major, last coordinate fastest)."""
        ws = np.ones(self.rank, dtype=np.int64)
        for j in range(self.rank - 2, -1, -1):
            ws[j] = ws[j + 1] * self.moduli[j + 1]
        return ws

    @cached_property
    def _mods(self) -> np.ndarray:
        return np.asarray(self.moduli, dtype=np.int64)

    @cached_property
    def _grid(self) -> np.ndarray:
        """Coordinates of every element index, shape (order, rank)."""
        idx = np.arange(self.order, dtype=np.int64)
        return (idx[:, None] // self._weights[None, :]) % self._mods[None, :]

    @cached_property
    def _arange(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    # elements ---------------------------------------------------------------

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, tuple(int(c) for c in coords))

    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def element_at(self, index: int) -> "GroupElement":
        index = int(index)
        if not 0 <= index < self.order:
            raise ValueError(f"element index {index} out of range [0, {self.order})")
        coords = tuple(
            int((index // w) % m) for w, m in zip(self._weights, self.moduli)
        )
        return GroupElement(self, coords)

    def index_of(self, coords: Sequence[int]) -> int:
        total = 0
        for c, w, m in zip(coords, self._weights, self.moduli):
            if not 0 <= c < m:
                raise ValueError(f"coordinate {c} out of range [0, {m})")
            total += int(c) * int(w)
        return total

    def elements(self) -> Iterator["GroupElement"]:
        for i in range(self.order):
            yield self.element_at(i)

    # vectorized index arithmetic ---------------------------------------------

    def shift_indices(self, indices: np.ndarray, by: int) -> np.ndarray:
        """Indices of x + b for each index x in `indices`, b the index `by`."""
        co = (self._grid[indices] + self._grid[by]) % self._mods
        return co @ self._weights

    def negate_indices(self, indices: np.ndarray) -> np.ndarray:
        co = (-self._grid[indices]) % self._mods
        return co @ self._weights

    def add_index(self, i: int, j: int) -> int:
        co = (self._grid[i] + self._grid[j]) % self._mods
        return int(co @ self._weights)

    # characters ---------------------------------------------------------------

    def character(self, coords: Sequence[int]) -> "Character":
        return Character(self, tuple(int(c) for c in coords))

    def character_at(self, index: int) -> "Character":
        return Character(self, self.element_at(index).coords)

    def trivial_character(self) -> "Character":
        return Character(self, (0,) * self.rank)

    def characters(self) -> Iterator["Character"]:
        for i in range(self.order):
            yield self.character_at(i)

    def __repr__(self) -> str:
        return "Z" + "xZ".join(str(m) for m in self.moduli)


def _validate_coords(spec: GroupSpec, coords: tuple[int, ...]) -> None:
    if len(coords) != spec.rank:
        raise ValueError(
            f"expected {spec.rank} coordinates, got {len(coords)}"
        )
    for c, m in zip(coords, spec.moduli):
        if not 0 <= c < m:
            raise ValueError(f"coordinate {c} out of range [0, {m})")


@dataclass(frozen=True)
class GroupElement:
    """One group element, stored as reduced coordinates."""

    spec: GroupSpec
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        coords = tuple(int(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        _validate_coords(self.spec, coords)

    @cached_property
    def index(self) -> int:
        total = 0
        for c, w in zip(self.coords, self.spec._weights):
            total += c * int(w)
        return total

    def __add__(self, other: "GroupElement") -> "GroupElement":
        require_same_spec(self, other)
        coords = tuple(
            (a + b) % m for a, b, m in zip(self.coords, other.coords, self.spec.moduli)
        )
        return GroupElement(self.spec, coords)

    def __neg__(self) -> "GroupElement":
        coords = tuple((-a) % m for a, m in zip(self.coords, self.spec.moduli))
        return GroupElement(self.spec, coords)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __rmul__(self, n: int) -> "GroupElement":
        if not isinstance(n, int):
            return NotImplemented
        coords = tuple((n * a) % m for a, m in zip(self.coords, self.spec.moduli))
        return GroupElement(self.spec, coords)

    def is_identity(self) -> bool:
        return all(c == 0 for c in self.coords)

    def element_order(self) -> int:
        """Least t >= 1 with t * self = identity."""
        t = 1
        for c, m in zip(self.coords, self.spec.moduli):
            t = math.lcm(t, m // math.gcd(c, m))
        return t

    def __repr__(self) -> str:
        return f"({','.join(str(c) for c in self.coords)})"


@dataclass(frozen=True)
class Character:
    """A character of the group; self.coords indexes the dual group.

    Evaluation follows gamma(x) = exp(2*pi*i * sum_j coords_j * x_j / m_j),
    so the dual group is again Z_m1 x ... x Z_mn under the same indexing.
    """

    spec: GroupSpec
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        coords = tuple(int(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        _validate_coords(self.spec, coords)

    @cached_property
    def index(self) -> int:
        total = 0
        for c, w in zip(self.coords, self.spec._weights):
            total += c * int(w)
        return total

    def is_trivial(self) -> bool:
        return all(c == 0 for c in self.coords)

    def phase(self, x: GroupElement) -> Fraction:
        """Exact phase in [0, 1): gamma(x) = exp(2*pi*i*phase)."""
        require_same_spec(self, x)
        ph = Fraction(0)
        for c, xc, m in zip(self.coords, x.coords, self.spec.moduli):
            ph += Fraction(c * xc, m)
        return ph % 1

    def __call__(self, x: GroupElement) -> complex:
        return cmath.exp(2j * math.pi * float(self.phase(x)))


def closure_indices(spec: GroupSpec, generators: Iterable[int]) -> frozenset[int]:
    """Indices of the subgroup generated by the given element indices.

    Breadth-first accumulation of generator sums; in a finite group this
    reaches inverses, so the result is closed under both add and negate.
    """
    gens = sorted({int(g) for g in generators} - {0})
    seen: set[int] = {0}
    if not gens:
        return frozenset(seen)
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        fresh: set[int] = set()
        for g in gens:
            fresh.update(spec.shift_indices(frontier, g).tolist())
        fresh -= seen
        seen |= fresh
        frontier = np.fromiter(fresh, dtype=np.int64, count=len(fresh))
    return frozenset(seen)
