"""Integer partitions and the dominance order.

Partitions are stored as finite weakly decreasing tuples of positive integers
but behave as eventually-zero sequences: ``part(j)`` returns 0 for any index
past the last part, and conjugates, multiplicities and prefix sums all follow
that convention.  Everything here is immutable and pure.
"""

from __future__ import annotations

from typing import Iterable, Iterator, List


class Partition:
    """A weakly decreasing sequence of positive integers."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for j, p in enumerate(parts):
            if p < 1:
                raise ValueError("parts must be positive, got %r" % (p,))
            if j and parts[j - 1] < p:
                raise ValueError("parts must be weakly decreasing, got %r" % (parts,))
        self.parts = parts

    @property
    def total(self) -> int:
        return sum(self.parts)

    def part(self, j: int) -> int:
        """The j-th part, 1-based; 0 for any j past the last part."""
        if j < 1:
            raise ValueError("part index is 1-based")
        return self.parts[j - 1] if j <= len(self.parts) else 0

    def prefix_sum(self, i: int) -> int:
        """Sum of the first i parts (i may exceed the number of parts)."""
        if i < 0:
            raise ValueError("prefix length must be >= 0")
        return sum(self.parts[: min(i, len(self.parts))])

    def conjugate(self) -> "Partition":
        """The conjugate partition: i-th part counts parts >= i."""
        if not self.parts:
            return Partition(())
        return Partition(
            sum(1 for p in self.parts if p >= i) for i in range(1, self.parts[0] + 1)
        )

    def multiplicity(self, i: int) -> int:
        """Number of parts equal to i (i >= 1)."""
        if i < 1:
            raise ValueError("multiplicity index must be >= 1")
        return sum(1 for p in self.parts if p == i)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return "Partition(%r)" % (list(self.parts),)

    def __str__(self) -> str:
        return "[%s]" % ",".join(str(p) for p in self.parts)


def dominance_leq(c: Partition, cp: Partition) -> bool:
    """Dominance order: every prefix sum of c is <= the one of cp.

    Defined only between partitions of the same total.  Equivalently the
    conjugates satisfy the reversed prefix-sum inequalities; the test suite
    checks both characterizations agree.
    """
    if c.total != cp.total:
        raise ValueError("dominance is defined between partitions of equal total")
    acc = accp = 0
    for i in range(max(len(c), len(cp))):
        acc += c.part(i + 1)
        accp += cp.part(i + 1)
        if acc > accp:
            return False
    return True


def nilpotent_power_rank(c: Partition, i: int) -> int:
    """Sum of (p - i) over the parts p >= i.

    For a nilpotent map N with Jordan block sizes c this is the rank of N^i,
    so it doubles as the combinatorial prediction for dim(image of N^i).
    """
    if i < 1:
        raise ValueError("power must be >= 1")
    return sum(p - i for p in c.parts if p >= i)


def enumerate_partitions(total: int) -> List[Partition]:
    """All partitions of ``total`` in decreasing lexicographic order."""
    if total < 0:
        raise ValueError("total must be >= 0")
    if total == 0:
        return [Partition(())]
    out = []
    cur = [total]
    while True:
        out.append(Partition(cur))
        i = len(cur) - 1
        while i >= 0 and cur[i] == 1:
            i -= 1
        if i < 0:
            break
        v = cur[i] - 1
        rest = sum(cur[i:]) - v
        cur = cur[:i] + [v]
        while rest > 0:
            take = min(v, rest)
            cur.append(take)
            rest -= take
    return out
