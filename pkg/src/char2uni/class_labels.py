"""Labels for unipotent conjugacy classes of Sp(2n) in characteristic 2.

A class is named by a pair (jordan, eps): the partition of Jordan block sizes
together with one extra bit eps(i) for every even block size i that actually
occurs.  Odd block sizes must occur with even multiplicity, and eps(i) is
forced to 1 when the multiplicity of i is odd.  The closure order between two
labels is decided purely combinatorially; see ``closure_leq``.

Cycle types of elliptic Weyl group classes (signed permutations all of whose
cycles are negative) live here too, with the map sending a cycle type to the
label with doubled parts and eps identically 1 on its support.
"""

from __future__ import annotations

from itertools import product
from typing import Dict, Iterable, List, Tuple

from .partitions import Partition, dominance_leq, enumerate_partitions


class SpLabel:
    """A pair (jordan, eps) naming one unipotent symplectic class."""

    __slots__ = ("jordan", "_eps")

    def __init__(self, jordan, eps=()):
        self.jordan = jordan if isinstance(jordan, Partition) else Partition(jordan)
        items = eps.items() if isinstance(eps, dict) else eps
        self._eps = tuple(sorted((int(i), int(v)) for i, v in items))

    @property
    def eps(self) -> Dict[int, int]:
        return dict(self._eps)

    def is_valid(self) -> bool:
        """Membership test: odd multiplicities even, eps exactly on the even
        part sizes present, eps(i)=1 wherever the multiplicity of i is odd."""
        c = self.jordan
        support = set(c.parts)
        if any(i % 2 == 1 and c.multiplicity(i) % 2 == 1 for i in support):
            return False
        expected = {i for i in support if i % 2 == 0}
        if {i for i, _ in self._eps} != expected:
            return False
        for i, v in self._eps:
            if v not in (0, 1):
                return False
            if c.multiplicity(i) % 2 == 1 and v != 1:
                return False
        return True

    def epsilon(self, i: int) -> int:
        """eps extended to every positive integer: -1 when i is odd or i does
        not occur as a block size, the stored bit otherwise."""
        if i < 1:
            raise ValueError("index must be >= 1")
        if i % 2 == 1 or self.jordan.multiplicity(i) == 0:
            return -1
        return dict(self._eps)[i]

    def sort_key(self):
        # jordan in decreasing lexicographic order, then eps bits read at
        # increasing i, larger bits first (so eps=1 labels precede eps=0).
        return (
            tuple(-p for p in self.jordan.parts),
            tuple(-v for _, v in self._eps),
        )

    def pretty(self) -> str:
        """Human-readable form, e.g. "[4,2] ε{4:1,2:1}"."""
        body = ",".join("%d:%d" % (i, v) for i, v in reversed(self._eps))
        if body:
            return "%s ε{%s}" % (self.jordan, body)
        return str(self.jordan)

    def to_dict(self) -> dict:
        return {
            "jordan": list(self.jordan.parts),
            "eps": {str(i): v for i, v in self._eps},
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "SpLabel":
        return cls(Partition(obj["jordan"]), {int(k): int(v) for k, v in obj.get("eps", {}).items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SpLabel)
            and self.jordan == other.jordan
            and self._eps == other._eps
        )

    def __hash__(self) -> int:
        return hash((self.jordan.parts, self._eps))

    def __repr__(self) -> str:
        return "SpLabel(%r, %r)" % (list(self.jordan.parts), dict(self._eps))


class CycleType:
    """A partition p_1 >= ... >= p_sigma of n naming an elliptic Weyl class.

    With a nonzero quadratic form (type D) only even sigma is meaningful;
    that restriction is enforced where the form enters, not here.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int]):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if not parts:
            raise ValueError("a cycle type needs at least one cycle")
        if parts[-1] < 1:
            raise ValueError("cycle lengths must be positive")
        self.parts = parts

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def sigma(self) -> int:
        return len(self.parts)

    @classmethod
    def from_string(cls, text: str) -> "CycleType":
        try:
            return cls(int(tok) for tok in text.split(",") if tok.strip())
        except ValueError as exc:
            raise ValueError("malformed cycle list %r" % (text,)) from exc

    def __eq__(self, other) -> bool:
        return isinstance(other, CycleType) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(("cycles", self.parts))

    def __repr__(self) -> str:
        return "CycleType(%r)" % (list(self.parts),)


def enumerate_sp_labels(nn: int) -> List[SpLabel]:
    """All valid labels with jordan total nn, in the deterministic order
    given by ``SpLabel.sort_key``."""
    if nn < 2 or nn % 2 == 1:
        raise ValueError("total must be even and >= 2")
    out = []
    for c in enumerate_partitions(nn):
        support = sorted(set(c.parts))
        if any(i % 2 == 1 and c.multiplicity(i) % 2 == 1 for i in support):
            continue
        evens = [i for i in support if i % 2 == 0]
        forced = [(i, 1) for i in evens if c.multiplicity(i) % 2 == 1]
        free = [i for i in evens if c.multiplicity(i) % 2 == 0]
        for bits in product((1, 0), repeat=len(free)):
            eps = dict(forced)
            eps.update(zip(free, bits))
            out.append(SpLabel(c, eps))
    out.sort(key=SpLabel.sort_key)
    return out


def _stable_bound(a: SpLabel, b: SpLabel) -> int:
    # Beyond the largest part both conjugate prefix sums are the full total
    # and eps is -1 on both sides, so nothing can change from there on.
    return max(a.jordan.part(1), b.jordan.part(1)) + 1


def _closure_leq_bounded(a: SpLabel, b: SpLabel, imax: int) -> bool:
    if not dominance_leq(a.jordan, b.jordan):
        return False
    ca = a.jordan.conjugate()
    cb = b.jordan.conjugate()
    sa = sb = 0
    for i in range(1, imax + 1):
        sa += ca.part(i)
        sb += cb.part(i)
        if sa - max(a.epsilon(i), 0) < sb - max(b.epsilon(i), 0):
            return False
        if sa == sb and (ca.part(i + 1) - cb.part(i + 1)) % 2 == 1 and b.epsilon(i) == 0:
            return False
    return True


def closure_leq(a: SpLabel, b: SpLabel) -> bool:
    """Whether the class of ``a`` lies in the closure of the class of ``b``.

    Three conditions, all required:
      * the Jordan types satisfy dominance a <= b;
      * at every i >= 1 the conjugate prefix sums, each lowered by 1 when the
        respective eps(i) equals 1, satisfy sum_a - [eps_a(i)=1] >=
        sum_b - [eps_b(i)=1];
      * whenever the conjugate prefix sums agree at i and the conjugates
        differ by an odd amount at i+1, eps_b(i) must not be 0.
    The scan stops at max part + 1, past which all quantities are stable.
    """
    if a.jordan.total != b.jordan.total:
        raise ValueError("closure order is defined within one total")
    if not (a.is_valid() and b.is_valid()):
        raise ValueError("closure order needs valid labels")
    return _closure_leq_bounded(a, b, _stable_bound(a, b))


def label_from_cycle_type(ct: CycleType) -> SpLabel:
    """The unipotent class attached to an elliptic cycle type: Jordan blocks
    of sizes 2*p_r and eps identically 1 on its whole support."""
    doubled = Partition(2 * p for p in ct.parts)
    return SpLabel(doubled, {i: 1 for i in set(doubled.parts)})


def hasse_diagram(labels: Iterable[SpLabel]) -> List[Tuple[SpLabel, SpLabel]]:
    """Covering pairs (lower, upper) of the closure order on ``labels``."""
    labels = sorted(labels, key=SpLabel.sort_key)
    m = len(labels)
    if len(set(labels)) != m:
        raise ValueError("labels must be pairwise distinct")
    up = [0] * m  # bit j of up[i]: labels[i] <= labels[j]
    down = [0] * m
    for i in range(m):
        for j in range(m):
            if closure_leq(labels[i], labels[j]):
                up[i] |= 1 << j
                down[j] |= 1 << i
    covers = []
    for i in range(m):
        for j in range(m):
            if i == j or not (up[i] >> j) & 1:
                continue
            if (up[i] & down[j]) == (1 << i) | (1 << j):
                covers.append((labels[i], labels[j]))
    return covers
