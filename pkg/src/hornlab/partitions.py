"""Partitions, index sets, and the subset/partition dictionary.

Index sets are 1-based everywhere in the public API.
"""
from dataclasses import dataclass

from .errors import DomainError, ValidationError


class Partition(tuple):
    """Weakly decreasing tuple of nonnegative ints with trailing zeros stripped.

    Because it is a tuple, ``Partition((2, 1, 0)) == (2, 1)``.
    """

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValidationError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValidationError(f"parts must be nonnegative: {parts}")
        end = len(parts)
        while end and parts[end - 1] == 0:
            end -= 1
        return super().__new__(cls, parts[:end])

    @property
    def weight(self):
        return sum(self)

    @property
    def parts(self):
        return tuple(self)

    def padded(self, length):
        """Parts as a tuple of exactly ``length`` entries (zeros appended)."""
        if len(self) > length:
            raise DomainError(f"{tuple(self)} has more than {length} parts")
        return tuple(self) + (0,) * (length - len(self))

    def fits(self, rows, cols):
        return len(self) <= rows and (not self or self[0] <= cols)

    def contains(self, other):
        """True when the diagram of ``other`` sits inside this one."""
        other = Partition(other)
        if len(other) > len(self):
            return False
        return all(a >= b for a, b in zip(self, other))

    def __repr__(self):
        return f"Partition({tuple(self)})"


@dataclass(frozen=True, order=True)
class IndexSet:
    """Strictly increasing subset of {1, ..., n}."""

    elements: tuple
    n: int

    def __post_init__(self):
        elems = tuple(int(e) for e in self.elements)
        object.__setattr__(self, "elements", elems)
        if self.n < 0:
            raise ValidationError(f"ambient size must be nonnegative, got {self.n}")
        for a, b in zip(elems, elems[1:]):
            if a >= b:
                raise ValidationError(f"index set must be strictly increasing: {elems}")
        if elems and (elems[0] < 1 or elems[-1] > self.n):
            raise ValidationError(f"index set {elems} out of range 1..{self.n}")

    @property
    def r(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def to_json(self):
        return {"set": list(self.elements), "n": self.n}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(obj["set"]), obj["n"])


def _as_index_set(I, n=None):
    if isinstance(I, IndexSet):
        return I
    elems = tuple(I)
    if n is None:
        n = max(elems, default=0)
    return IndexSet(elems, n)


def partition_from_subset(I):
    """lambda(I) = (i_r - r, ..., i_1 - 1)."""
    I = _as_index_set(I)
    elems = I.elements
    r = len(elems)
    return Partition(elems[p] - (p + 1) for p in range(r - 1, -1, -1))


def subset_from_partition(lam, r, n):
    """Inverse of :func:`partition_from_subset` inside the r x (n-r) rectangle."""
    lam = Partition(lam)
    if r < 0 or n < r:
        raise DomainError(f"need 0 <= r <= n, got r={r}, n={n}")
    if not lam.fits(r, n - r):
        raise DomainError(f"{tuple(lam)} does not fit in a {r} x {n - r} rectangle")
    parts = lam.padded(r)
    return IndexSet(tuple(parts[r - 1 - q] + q + 1 for q in range(r)), n)


def conjugate(lam):
    lam = Partition(lam)
    if not lam:
        return Partition()
    return Partition(sum(1 for part in lam if part >= c) for c in range(1, lam[0] + 1))


def complement_subset(I, n=None):
    """I' = {i : n+1-i not in I}; lambda(I') is the conjugate of lambda(I)."""
    I = _as_index_set(I, n)
    members = set(I.elements)
    return IndexSet(tuple(i for i in range(1, I.n + 1) if I.n + 1 - i not in members), I.n)


def reverse_subset(I, n=None):
    """The set {n+1-i : i in I}."""
    I = _as_index_set(I, n)
    return IndexSet(tuple(sorted(I.n + 1 - i for i in I.elements)), I.n)


def partitions_of(total, max_parts=None, max_part=None):
    """All partitions of ``total`` in reverse lexicographic order."""
    if max_part is None:
        max_part = total
    if max_parts is None:
        max_parts = total

    def gen(rest, cap, slots):
        if rest == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(rest, cap), 0, -1):
            if first * slots < rest:
                break
            for tail in gen(rest - first, first, slots - 1):
                yield (first,) + tail

    for parts in gen(total, max_part, max_parts):
        yield Partition(parts)


def partitions_in_box(rows, cols):
    """Every partition fitting in a rows x cols rectangle."""
    def gen(slots, cap):
        yield ()
        if slots == 0:
            return
        for first in range(cap, 0, -1):
            for tail in gen(slots - 1, first):
                yield (first,) + tail

    for parts in gen(rows, cols):
        yield Partition(parts)


def subpartitions(nu):
    """All partitions contained in ``nu``."""
    nu = Partition(nu)

    def gen(i, cap):
        yield ()
        if i == len(nu):
            return
        for first in range(min(cap, nu[i]), 0, -1):
            for tail in gen(i + 1, first):
                yield (first,) + tail

    for parts in gen(0, nu[0] if nu else 0):
        yield Partition(parts)
