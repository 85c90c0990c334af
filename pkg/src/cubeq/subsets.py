"""Subset algebra on the ground set [n] = {1, ..., n}.

Vertices of the 0/1 cube are identified with subsets of [n]. A subset is an
n-bit word (bit i-1 stores membership of element i), so the width cap of 63
keeps every subset in one machine word. Elements are 1-based in every public
interface. All values here are immutable and safe to share across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InputError

MAX_WIDTH = 63


def _check_width(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= MAX_WIDTH:
        raise InputError(f"width must be an integer in 1..{MAX_WIDTH}, got {n!r}")


@dataclass(frozen=True, slots=True)
class SubsetMask:
    """A subset of [n] packed into the low n bits of an integer."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        _check_width(self.n)
        if not isinstance(self.bits, int) or self.bits < 0 or self.bits >> self.n:
            raise InputError(f"bits {self.bits!r} do not fit width {self.n}")

    @classmethod
    def empty(cls, n: int) -> "SubsetMask":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "SubsetMask":
        _check_width(n)
        return cls(n, (1 << n) - 1)

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[int]) -> "SubsetMask":
        _check_width(n)
        bits = 0
        for e in elements:
            if not isinstance(e, int) or isinstance(e, bool) or not 1 <= e <= n:
                raise InputError(f"element {e!r} outside 1..{n}")
            bits |= 1 << (e - 1)
        return cls(n, bits)

    def elements(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.bits >> i & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, element: int) -> bool:
        return 1 <= element <= self.n and bool(self.bits >> (element - 1) & 1)

    def _check_same_width(self, other: "SubsetMask") -> None:
        if not isinstance(other, SubsetMask):
            raise InputError(f"expected SubsetMask, got {type(other).__name__}")
        if other.n != self.n:
            raise InputError(f"width mismatch: {self.n} vs {other.n}")

    def __xor__(self, other: "SubsetMask") -> "SubsetMask":
        self._check_same_width(other)
        return SubsetMask(self.n, self.bits ^ other.bits)

    def __or__(self, other: "SubsetMask") -> "SubsetMask":
        self._check_same_width(other)
        return SubsetMask(self.n, self.bits | other.bits)

    def __and__(self, other: "SubsetMask") -> "SubsetMask":
        self._check_same_width(other)
        return SubsetMask(self.n, self.bits & other.bits)

    def complement(self) -> "SubsetMask":
        """Complement within the full ground set [n]."""
        return SubsetMask(self.n, self.bits ^ ((1 << self.n) - 1))

    def add(self, element: int) -> "SubsetMask":
        if not 1 <= element <= self.n:
            raise InputError(f"element {element!r} outside 1..{self.n}")
        return SubsetMask(self.n, self.bits | 1 << (element - 1))

    def issuperset(self, other: "SubsetMask") -> bool:
        self._check_same_width(other)
        return self.bits & other.bits == other.bits

    def issubset(self, other: "SubsetMask") -> bool:
        self._check_same_width(other)
        return self.bits & other.bits == self.bits

    def to_json(self) -> list[int]:
        return list(self.elements())

    @classmethod
    def from_json(cls, n: int, data: object) -> "SubsetMask":
        if not isinstance(data, list):
            raise InputError(f"subset must be a JSON array, got {data!r}")
        return cls.from_elements(n, data)

    def __repr__(self) -> str:
        return f"SubsetMask({self.n}, {{{', '.join(map(str, self.elements()))}}})"


@dataclass(frozen=True, slots=True)
class Family:
    """A finite set of equal-width subsets, kept in ascending bit order."""

    n: int
    members: tuple[SubsetMask, ...]

    def __post_init__(self) -> None:
        _check_width(self.n)
        prev = -1
        for m in self.members:
            if not isinstance(m, SubsetMask) or m.n != self.n:
                raise InputError(f"family member {m!r} has wrong width (want {self.n})")
            if m.bits <= prev:
                raise InputError("family members must be distinct and sorted")
            prev = m.bits

    @classmethod
    def of(cls, n: int, masks: Iterable[SubsetMask]) -> "Family":
        uniq = {m.bits: m for m in masks}
        return cls(n, tuple(uniq[b] for b in sorted(uniq)))

    @classmethod
    def from_bits(cls, n: int, bits: Iterable[int]) -> "Family":
        return cls(n, tuple(SubsetMask(n, b) for b in sorted(set(bits))))

    def bits(self) -> tuple[int, ...]:
        return tuple(m.bits for m in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[SubsetMask]:
        return iter(self.members)

    def __contains__(self, mask: SubsetMask) -> bool:
        return isinstance(mask, SubsetMask) and mask.n == self.n and any(
            m.bits == mask.bits for m in self.members
        )

    def to_json(self) -> list[list[int]]:
        return [m.to_json() for m in self.members]

    @classmethod
    def from_json(cls, n: int, data: object) -> "Family":
        if not isinstance(data, list):
            raise InputError(f"family must be a JSON array, got {data!r}")
        return cls.of(n, (SubsetMask.from_json(n, item) for item in data))


@dataclass(frozen=True, slots=True)
class SignSets:
    """The sequence S_1..S_n of subsets steering the twisted order ``superset_under``.

    ``sets[i-1]`` holds S_i; each S_i is a width-n subset of the same ground
    set. Whether i is excluded from S_i is not required in general; entry
    points that need it query :meth:`is_normalized` / :meth:`normalized_at`.
    """

    sets: tuple[SubsetMask, ...]

    def __post_init__(self) -> None:
        n = len(self.sets)
        _check_width(n)
        for s in self.sets:
            if not isinstance(s, SubsetMask) or s.n != n:
                raise InputError(f"sign set {s!r} must have width {n}")

    @property
    def n(self) -> int:
        return len(self.sets)

    @classmethod
    def of(cls, n: int, masks: Iterable[SubsetMask]) -> "SignSets":
        masks = tuple(masks)
        if len(masks) != n:
            raise InputError(f"need exactly {n} sign sets, got {len(masks)}")
        return cls(masks)

    @classmethod
    def from_bits(cls, n: int, bits: Iterable[int]) -> "SignSets":
        return cls.of(n, (SubsetMask(n, b) for b in bits))

    @classmethod
    def all_empty(cls, n: int) -> "SignSets":
        _check_width(n)
        return cls(tuple(SubsetMask(n, 0) for _ in range(n)))

    def get(self, i: int) -> SubsetMask:
        """S_i, 1-based."""
        if not 1 <= i <= self.n:
            raise InputError(f"index {i} outside 1..{self.n}")
        return self.sets[i - 1]

    def bits(self) -> tuple[int, ...]:
        return tuple(s.bits for s in self.sets)

    @property
    def is_normalized(self) -> bool:
        """True iff i is not a member of S_i for every i."""
        return all(not s.bits >> i & 1 for i, s in enumerate(self.sets))

    def normalized_at(self, k: int) -> bool:
        """True iff i not in S_i for all i, and k not in S_i for all i."""
        if not 1 <= k <= self.n:
            raise InputError(f"index {k} outside 1..{self.n}")
        kb = 1 << (k - 1)
        return self.is_normalized and all(not s.bits & kb for s in self.sets)

    def restrict(self, m: int) -> "SignSets":
        """The sign sets S_1..S_m intersected with [m]."""
        if not 1 <= m <= self.n:
            raise InputError(f"cannot restrict width {self.n} to {m}")
        low = (1 << m) - 1
        return SignSets(tuple(SubsetMask(m, self.sets[i].bits & low) for i in range(m)))

    def to_json(self) -> list[list[int]]:
        return [s.to_json() for s in self.sets]

    @classmethod
    def from_json(cls, n: int, data: object) -> "SignSets":
        if not isinstance(data, list) or len(data) != n:
            raise InputError(f"signsets must be a JSON array of {n} subsets")
        return cls.of(n, (SubsetMask.from_json(n, item) for item in data))


def superset_under(x: SubsetMask, y: SubsetMask, s: SubsetMask) -> bool:
    """Twisted containment: (x XOR s) is a superset of (y XOR s)."""
    x._check_same_width(y)
    x._check_same_width(s)
    xs = x.bits ^ s.bits
    ys = y.bits ^ s.bits
    return xs & ys == ys


def upper_level(f: Family, i: int) -> Family:
    """{A : i not in A, A + {i} in f} -- members containing i, with i removed."""
    if not 1 <= i <= f.n:
        raise InputError(f"level index {i} outside 1..{f.n}")
    bit = 1 << (i - 1)
    return Family.from_bits(f.n, (b ^ bit for b in f.bits() if b & bit))


def lower_level(f: Family, i: int) -> Family:
    """{A in f : i not in A} -- the members avoiding i."""
    if not 1 <= i <= f.n:
        raise InputError(f"level index {i} outside 1..{f.n}")
    bit = 1 << (i - 1)
    return Family.from_bits(f.n, (b for b in f.bits() if not b & bit))


def base_change_family(f: Family, a: SubsetMask) -> Family:
    """Translate every member by XOR with ``a``; involutive and a bijection."""
    if a.n != f.n:
        raise InputError(f"width mismatch: {f.n} vs {a.n}")
    return Family.from_bits(f.n, (b ^ a.bits for b in f.bits()))


def central_binomial(n: int) -> int:
    """C(n, floor(n/2)), computed exactly."""
    _check_width(n)
    return math.comb(n, n // 2)
