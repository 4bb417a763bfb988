"""Finite subsets of a group: sumset algebra, doubling, instance generators."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .groups import (
    GroupElement,
    GroupMismatchError,
    GroupSpec,
    closure_indices,
    require_same_spec,
)

__all__ = [
    "GroupSet",
    "sumset",
    "k_fold_sum",
    "doubling_constant",
    "subgroup_closure",
    "is_subgroup",
    "generate_instance",
    "indices_to_mask",
]

INSTANCE_KINDS = ("random", "independent", "subgroup", "coset_union")


def indices_to_mask(order: int, indices: Iterable[int]) -> int:
    """Pack element indices into an int bitmask (bit i <-> element index i)."""
    buf = np.zeros(order, dtype=bool)
    idx = list(indices)
    if idx:
        buf[idx] = True
    return int.from_bytes(np.packbits(buf, bitorder="little").tobytes(), "little")


@dataclass(frozen=True)
class GroupSet:
    """A subset of a group, stored as a frozenset of canonical element indices."""

    spec: GroupSpec
    indices: frozenset[int]

    def __post_init__(self) -> None:
        idx = frozenset(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if idx:
            lo, hi = min(idx), max(idx)
            if lo < 0 or hi >= self.spec.order:
                raise ValueError(f"element index out of range [0, {self.spec.order})")

    # construction -----------------------------------------------------------

    @classmethod
    def from_elements(
        cls, spec: GroupSpec, elements: Iterable[GroupElement | Sequence[int]]
    ) -> "GroupSet":
        idx = set()
        for e in elements:
            if isinstance(e, GroupElement):
                if e.spec != spec:
                    raise GroupMismatchError("element from a different group")
                idx.add(e.index)
            else:
                idx.add(spec.index_of(e))
        return cls(spec, frozenset(idx))

    @classmethod
    def empty(cls, spec: GroupSpec) -> "GroupSet":
        return cls(spec, frozenset())

    @classmethod
    def full(cls, spec: GroupSpec) -> "GroupSet":
        return cls(spec, frozenset(range(spec.order)))

    @classmethod
    def singleton(cls, x: GroupElement) -> "GroupSet":
        return cls(x.spec, frozenset([x.index]))

    # basic queries -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, x: GroupElement) -> bool:
        return x.spec == self.spec and x.index in self.indices

    def contains_index(self, i: int) -> bool:
        return i in self.indices

    def __iter__(self) -> Iterator[GroupElement]:
        for i in sorted(self.indices):
            yield self.spec.element_at(i)

    def members(self) -> list[GroupElement]:
        return list(self)

    def min_element(self) -> GroupElement:
        if not self.indices:
            raise ValueError("empty set has no minimum")
        return self.spec.element_at(min(self.indices))

    @property
    def has_identity(self) -> bool:
        return 0 in self.indices

    @cached_property
    def index_array(self) -> np.ndarray:
        return np.fromiter(sorted(self.indices), dtype=np.int64, count=len(self.indices))

    @cached_property
    def mask(self) -> int:
        return indices_to_mask(self.spec.order, self.indices)

    # algebra -------------------------------------------------------------------

    def shifted(self, x: GroupElement | int) -> "GroupSet":
        """The translate x + self."""
        xi = x if isinstance(x, int) else x.index
        if not self.indices:
            return self
        out = self.spec.shift_indices(self.index_array, int(xi))
        return GroupSet(self.spec, frozenset(out.tolist()))

    def __add__(self, other: "GroupSet") -> "GroupSet":
        return sumset(self, other)

    def __neg__(self) -> "GroupSet":
        if not self.indices:
            return self
        out = self.spec.negate_indices(self.index_array)
        return GroupSet(self.spec, frozenset(out.tolist()))

    def __sub__(self, other: "GroupSet") -> "GroupSet":
        return sumset(self, -other)

    def __or__(self, other: "GroupSet") -> "GroupSet":
        require_same_spec(self, other)
        return GroupSet(self.spec, self.indices | other.indices)

    def __and__(self, other: "GroupSet") -> "GroupSet":
        require_same_spec(self, other)
        return GroupSet(self.spec, self.indices & other.indices)

    def issubset(self, other: "GroupSet") -> bool:
        require_same_spec(self, other)
        return self.indices <= other.indices

    def with_identity(self) -> "GroupSet":
        return GroupSet(self.spec, self.indices | {0})

    def __repr__(self) -> str:
        shown = ",".join(repr(e) for e in list(self)[:8])
        tail = ",..." if len(self) > 8 else ""
        return f"GroupSet[{self.spec!r}]{{{shown}{tail}}}"


def sumset(A: GroupSet, B: GroupSet) -> GroupSet:
    """{a + b : a in A, b in B}; empty if either operand is empty."""
    require_same_spec(A, B)
    if not A.indices or not B.indices:
        return GroupSet.empty(A.spec)
    small, big = (A, B) if len(A) <= len(B) else (B, A)
    big_arr = big.index_array
    acc: set[int] = set()
    for i in small.indices:
        acc.update(A.spec.shift_indices(big_arr, i).tolist())
    return GroupSet(A.spec, frozenset(acc))


def k_fold_sum(X: GroupSet, k: int) -> GroupSet:
    """k-fold iterated sumset; k = 0 gives {identity} (empty-sum convention)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    ident = GroupSet(X.spec, frozenset([0]))
    if k == 0:
        return ident
    acc = X
    for _ in range(k - 1):
        nxt = acc + X
        if X.has_identity and nxt.indices == acc.indices:
            return acc
        acc = nxt
    return acc


def doubling_constant(A: GroupSet) -> Fraction:
    """|A+A| / |A| as an exact rational."""
    if not A.indices:
        raise ValueError("doubling constant of the empty set is undefined")
    return Fraction(len(A + A), len(A))


def subgroup_closure(S: GroupSet) -> GroupSet:
    """Smallest subgroup containing S (the empty set generates {identity})."""
    return GroupSet(S.spec, closure_indices(S.spec, S.indices))


def is_subgroup(S: GroupSet) -> bool:
    return bool(S.indices) and subgroup_closure(S).indices == S.indices


def _random_subgroup(
    spec: GroupSpec, rng: random.Random, n_generators: int, max_size: int | None
) -> frozenset[int]:
    best: frozenset[int] | None = None
    for _ in range(64):
        gens = [rng.randrange(spec.order) for _ in range(n_generators)]
        got = closure_indices(spec, gens)
        if best is None or len(got) < len(best):
            best = got
        if max_size is None or len(got) <= max_size:
            return got
    assert best is not None
    return best


def generate_instance(
    kind: str,
    spec: GroupSpec,
    *,
    size: int | None = None,
    generators: Sequence[Sequence[int]] | None = None,
    n_generators: int | None = None,
    n_cosets: int | None = None,
    max_size: int | None = None,
    seed: int = 0,
) -> GroupSet:
    """Deterministic instance families used by sweeps and the CLI.

    random      size elements sampled without replacement
    independent identity plus the standard basis vectors e_1, ..., e_n
    subgroup    closure of explicit `generators`, or of n_generators random ones
    coset_union a random subgroup plus n_cosets random coset representatives
    """
    rng = random.Random(seed)
    order = spec.order
    if kind == "random":
        if size is None:
            raise ValueError("random instances need a size")
        if size > order:
            raise ValueError(f"requested size {size} exceeds group order {order}")
        return GroupSet(spec, frozenset(rng.sample(range(order), size)))
    if kind == "independent":
        idx = {0}
        for j in range(spec.rank):
            coords = [0] * spec.rank
            coords[j] = 1
            idx.add(spec.index_of(coords))
        return GroupSet(spec, frozenset(idx))
    if kind == "subgroup":
        if generators is not None:
            gidx = [spec.index_of(c) for c in generators]
            return GroupSet(spec, closure_indices(spec, gidx))
        return GroupSet(
            spec, _random_subgroup(spec, rng, n_generators or 1, max_size)
        )
    if kind == "coset_union":
        sub = _random_subgroup(spec, rng, n_generators or 1, max_size)
        H = GroupSet(spec, sub)
        reps = {rng.randrange(order) for _ in range(n_cosets or 2)}
        acc: set[int] = set()
        for r in sorted(reps):
            acc |= H.shifted(r).indices
        return GroupSet(spec, frozenset(acc))
    raise ValueError(f"unknown instance kind {kind!r}; expected one of {INSTANCE_KINDS}")
