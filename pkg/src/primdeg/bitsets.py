"""Index sets over {1, ..., n} as bitmasks, and inclusion-minimal set families.

Everything downstream (pattern tensors, digraph frontiers, trace states) stores
subsets of [n] as plain integers: bit i-1 set means index i is a member. The
classes here are thin immutable wrappers that carry the universe size along with
the mask; hot loops work on the raw masks directly.

The universe size is capped (default 128, override with the PRIMDEG_MAX_DIM
environment variable) so that a typo'd dimension fails fast instead of silently
allocating gigantic iteration spaces.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import CapExceededError

MAX_DIM = int(os.environ.get("PRIMDEG_MAX_DIM", "128"))


def _check_dim(dim: int) -> None:
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    if dim > MAX_DIM:
        raise CapExceededError(
            f"dimension {dim} exceeds the cap {MAX_DIM} (set PRIMDEG_MAX_DIM to raise it)"
        )


@dataclass(frozen=True)
class IndexSet:
    """An immutable subset of {1, ..., dim}, stored as a bitmask.

    Bit i-1 of ``mask`` is set exactly when index i is a member. Operations
    between sets require equal ``dim``.
    """

    mask: int
    dim: int

    def __post_init__(self) -> None:
        _check_dim(self.dim)
        if not 0 <= self.mask < (1 << self.dim):
            raise ValueError(f"mask {self.mask:#x} out of range for dim {self.dim}")

    @classmethod
    def from_members(cls, members: Iterable[int], dim: int) -> "IndexSet":
        _check_dim(dim)
        mask = 0
        for i in members:
            if not 1 <= i <= dim:
                raise ValueError(f"index {i} out of range 1..{dim}")
            mask |= 1 << (i - 1)
        return cls(mask, dim)

    @classmethod
    def empty(cls, dim: int) -> "IndexSet":
        return cls(0, dim)

    @classmethod
    def full(cls, dim: int) -> "IndexSet":
        _check_dim(dim)
        return cls((1 << dim) - 1, dim)

    @classmethod
    def singleton(cls, i: int, dim: int) -> "IndexSet":
        return cls.from_members((i,), dim)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.dim) if self.mask >> i & 1)

    @property
    def is_full(self) -> bool:
        return self.mask == (1 << self.dim) - 1

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    def __contains__(self, i: int) -> bool:
        return 1 <= i <= self.dim and bool(self.mask >> (i - 1) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def _require_same_dim(self, other: "IndexSet") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def union(self, other: "IndexSet") -> "IndexSet":
        self._require_same_dim(other)
        return IndexSet(self.mask | other.mask, self.dim)

    __or__ = union

    def intersection(self, other: "IndexSet") -> "IndexSet":
        self._require_same_dim(other)
        return IndexSet(self.mask & other.mask, self.dim)

    __and__ = intersection

    def issubset(self, other: "IndexSet") -> bool:
        self._require_same_dim(other)
        return self.mask & other.mask == self.mask

    def __repr__(self) -> str:
        inner = ",".join(str(i) for i in self.members)
        return f"IndexSet({{{inner}}}, dim={self.dim})"


def minimize_masks(masks: Iterable[int]) -> tuple[int, ...]:
    """Reduce a collection of nonzero masks to its inclusion-minimal antichain.

    Supersets of a kept mask are dropped; duplicates collapse. The result is
    sorted ascending by mask value, which is the canonical storage order.
    """
    kept: list[int] = []
    for cand in sorted(set(masks), key=lambda m: (bin(m).count("1"), m)):
        if cand == 0:
            raise ValueError("empty set is not a valid support")
        if not any(k & cand == k for k in kept):
            kept.append(cand)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class SupportFamily:
    """An inclusion-minimal family (antichain) of nonempty subsets of [dim].

    ``masks`` is the canonical sorted tuple of member bitmasks. Construction via
    :meth:`from_masks` / :meth:`from_sets` minimizes arbitrary input: inserting a
    superset of a present set is a no-op, inserting a subset evicts everything it
    dominates. Two families built from step-equivalent raw collections therefore
    compare equal.
    """

    dim: int
    masks: tuple[int, ...]

    # Split views used by the step hot loop: the union of all singleton members,
    # and the masks of size >= 2 that need an individual containment check.
    singles: int = field(init=False, repr=False, compare=False)
    multis: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        _check_dim(self.dim)
        limit = 1 << self.dim
        if self.masks != minimize_masks(self.masks):
            raise ValueError("masks must be a canonical inclusion-minimal tuple")
        singles = 0
        multis = []
        for m in self.masks:
            if not 0 < m < limit:
                raise ValueError(f"mask {m:#x} out of range for dim {self.dim}")
            if m & (m - 1):
                multis.append(m)
            else:
                singles |= m
        object.__setattr__(self, "singles", singles)
        object.__setattr__(self, "multis", tuple(multis))

    @classmethod
    def from_masks(cls, dim: int, masks: Iterable[int]) -> "SupportFamily":
        return cls(dim, minimize_masks(masks))

    @classmethod
    def from_sets(cls, dim: int, sets: Iterable[IndexSet]) -> "SupportFamily":
        collected = []
        for s in sets:
            if s.dim != dim:
                raise ValueError(f"dimension mismatch: {s.dim} vs {dim}")
            collected.append(s.mask)
        return cls.from_masks(dim, collected)

    @classmethod
    def empty(cls, dim: int) -> "SupportFamily":
        return cls(dim, ())

    @classmethod
    def of_singletons(cls, dim: int, union_mask: int) -> "SupportFamily":
        """Family consisting of one singleton per set bit of ``union_mask``."""
        if not 0 <= union_mask < (1 << dim):
            raise ValueError(f"mask {union_mask:#x} out of range for dim {dim}")
        return cls(dim, tuple(1 << i for i in range(dim) if union_mask >> i & 1))

    @property
    def sets(self) -> tuple[IndexSet, ...]:
        return tuple(IndexSet(m, self.dim) for m in self.masks)

    def add(self, s: IndexSet) -> "SupportFamily":
        """Return the family with ``s`` inserted (and the antichain re-minimized)."""
        if s.dim != self.dim:
            raise ValueError(f"dimension mismatch: {s.dim} vs {self.dim}")
        return SupportFamily.from_masks(self.dim, self.masks + (s.mask,))

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[IndexSet]:
        return iter(self.sets)

    def __contains__(self, s: IndexSet) -> bool:
        return s.dim == self.dim and s.mask in self.masks

    def max_set_size(self) -> int:
        return max((bin(m).count("1") for m in self.masks), default=0)

    def __repr__(self) -> str:
        inner = " ".join("{" + ",".join(map(str, IndexSet(m, self.dim).members)) + "}" for m in self.masks)
        return f"SupportFamily(dim={self.dim}, [{inner}])"
