"""Complete isotropic flags in a standard formed space, and pairs of flags in
the special relative position attached to a cycle type.

The standard space of rank n has hyperbolic basis e_1..e_n, f_n..f_1 (so the
Gram matrix is the antidiagonal) and, in the quadratic case, Q = 0 on every
basis vector.  A complete isotropic flag fixes subspaces of every dimension
0..2n with the bottom half totally singular and the top half forced by
perpendicularity: the step of codimension i is the perp of the step of
dimension i.

For a cycle type p_1 >= ... >= p_sigma of n, a pair of flags (V, V') is in
the wanted position when two families of intersection-dimension constraints
hold, one running inside each cycle and one closing each cycle against the
perp chain of V; ``check_flag_conditions`` states them verbatim and
``build_flag_pair`` searches a second flag realizing them among coordinate
flags (orderings of the hyperbolic basis using one vector from each pair
{e_k, f_k} in the bottom half).
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from .class_labels import CycleType
from .gf2 import BitMatrix, FormedSpace, Subspace, intersect


def standard_space(n: int, with_q: bool) -> FormedSpace:
    """Hyperbolic space of dimension 2n: basis index j < n is e_{j+1}, index
    2n-1-j is f_{j+1}, with (e_i, f_i) = 1 and all other pairings zero.  With
    ``with_q`` the split quadratic form vanishing on the whole basis."""
    if n < 2:
        raise ValueError("rank must be at least 2")
    nn = 2 * n
    gram = BitMatrix((1 << (nn - 1 - r) for r in range(nn)), nn)
    return FormedSpace(gram, (0,) * nn if with_q else None)


def basis_names(n: int) -> List[str]:
    return ["e%d" % (k + 1) for k in range(n)] + ["f%d" % (n - k) for k in range(n)]


class Flag:
    """A complete isotropic flag: one subspace per dimension 0..2n."""

    __slots__ = ("space", "steps")

    def __init__(self, space: FormedSpace, steps):
        steps = tuple(steps)
        if len(steps) != space.dim + 1:
            raise ValueError("a complete flag has one step per dimension")
        self.space = space
        self.steps = steps

    @classmethod
    def from_isotropic_prefix(cls, space: FormedSpace, prefix) -> "Flag":
        """Build the whole flag from its steps of dimension 0..n; the upper
        half is filled in as perps of the lower half."""
        n = space.dim // 2
        prefix = list(prefix)
        if len(prefix) != n + 1:
            raise ValueError("need the steps of dimension 0..n")
        steps: List[Optional[Subspace]] = [None] * (space.dim + 1)
        for i, s in enumerate(prefix):
            steps[i] = s
        for i in range(n):
            steps[space.dim - i] = space.perp(prefix[i])
        flag = cls(space, steps)
        if not flag.is_valid():
            raise ValueError("prefix does not extend to an isotropic flag")
        return flag

    def is_valid(self) -> bool:
        n = self.space.dim // 2
        for i, s in enumerate(self.steps):
            if s.ambient_dim != self.space.dim or s.dim != i:
                return False
            if i and not s.contains(self.steps[i - 1]):
                return False
        for i in range(n + 1):
            if self.space.perp(self.steps[i]) != self.steps[self.space.dim - i]:
                return False
            if self.space.has_q:
                if not self.space.q_vanishes_on(self.steps[i]):
                    return False
            elif not self.space.form_vanishes_on(self.steps[i]):
                return False
        return True

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Flag)
            and self.space.gram == other.space.gram
            and self.steps == other.steps
        )

    def __repr__(self) -> str:
        return "Flag(dim=%d)" % self.space.dim

    def to_json(self) -> List[List[List[int]]]:
        return [s.to_json() for s in self.steps]


def standard_flag(space: FormedSpace) -> Flag:
    """The coordinate flag whose i-th step spans the first i basis vectors."""
    nn = space.dim
    steps = [Subspace(nn, [1 << j for j in range(i)]) for i in range(nn + 1)]
    flag = Flag(space, steps)
    assert flag.is_valid()
    return flag


class FlagPair:
    """Two flags over one space together with the cycle type tying them."""

    __slots__ = ("a", "b", "cycle_type", "a_indices", "b_indices")

    def __init__(self, a: Flag, b: Flag, cycle_type: CycleType,
                 a_indices=None, b_indices=None):
        if a.space.dim != b.space.dim or a.space.gram != b.space.gram:
            raise ValueError("flags live in different spaces")
        if 2 * cycle_type.n != a.space.dim:
            raise ValueError("cycle type total must be half the dimension")
        self.a = a
        self.b = b
        self.cycle_type = cycle_type
        # basis-index orderings when the flags are coordinate flags (audit output)
        self.a_indices = tuple(a_indices) if a_indices is not None else None
        self.b_indices = tuple(b_indices) if b_indices is not None else None

    @property
    def space(self) -> FormedSpace:
        return self.a.space

    def intersection_dims(self) -> List[List[int]]:
        """dims[j][i] = dim(b.steps[j] /\\ a.steps[i])."""
        nn = self.space.dim
        return [
            [intersect(self.b.steps[j], self.a.steps[i]).dim for i in range(nn + 1)]
            for j in range(nn + 1)
        ]

    def to_dict(self) -> dict:
        obj = {
            "n": self.cycle_type.n,
            "cycles": list(self.cycle_type.parts),
            "form": "so" if self.space.has_q else "sp",
            "intersection_dims": self.intersection_dims(),
        }
        if self.a_indices is not None:
            obj["a_step_indices"] = [list(self.a_indices[:i]) for i in range(len(self.a_indices) + 1)]
        if self.b_indices is not None:
            obj["b_step_indices"] = [list(self.b_indices[:i]) for i in range(len(self.b_indices) + 1)]
        return obj


def _condition_table(ct: CycleType, nn: int):
    """The required intersection dimensions, grouped by the step of the
    second flag they constrain: cond[j] lists pairs (i, d) demanding
    dim(V'_j /\\ V_i) = d."""
    cond = {}

    def add(j, i, d):
        cond.setdefault(j, []).append((i, d))

    before = 0
    for r, p in enumerate(ct.parts, start=1):
        for i in range(1, p):
            add(before + i, before + i, before + i - r)
            add(before + i, before + i + 1, before + i - r + 1)
        upto = before + p
        add(upto, nn - before - 1, upto - r)
        add(upto, nn - before, upto - r + 1)
        before = upto
    return cond


def check_flag_conditions(pair: FlagPair) -> bool:
    """Whether the pair satisfies every intersection-dimension constraint of
    its cycle type."""
    nn = pair.space.dim
    dims = pair.intersection_dims()
    for j, reqs in _condition_table(pair.cycle_type, nn).items():
        for i, d in reqs:
            if dims[j][i] != d:
                return False
    return True


def build_flag_pair(ct: CycleType, with_q: bool) -> FlagPair:
    """Construct a pair (standard flag, coordinate flag) in the position of
    ``ct``.

    The second flag is searched among orderings of the hyperbolic basis that
    pick one vector of each pair {e_k, f_k} in the first n positions (the
    last n positions are then forced to the partners in reverse order, which
    makes the perp duality hold by construction).  Each constraint mentions a
    single step of the second flag, so it can prune the search as soon as
    that step is placed.  A full isometry-orbit argument guarantees a
    coordinate witness exists; exhausting the search therefore means the
    input was invalid and raises.
    """
    if with_q and ct.sigma % 2 == 1:
        raise ValueError("the quadratic case needs an even number of cycles")
    n = ct.n
    space = standard_space(n, with_q)
    nn = 2 * n
    cond = _condition_table(ct, nn)

    chosen: List[int] = []
    used_pairs = [False] * n

    def placed_ok() -> bool:
        j = len(chosen)
        for i, d in cond.get(j, ()):
            if sum(1 for idx in chosen if idx < i) != d:
                return False
        return True

    def search() -> bool:
        if len(chosen) == n:
            return True
        for k in range(n):
            if used_pairs[k]:
                continue
            for idx in (k, nn - 1 - k):
                used_pairs[k] = True
                chosen.append(idx)
                if placed_ok() and search():
                    return True
                chosen.pop()
                used_pairs[k] = False
        return False

    if not search():
        raise RuntimeError("no coordinate flag realizes this cycle type")

    order = list(chosen) + [nn - 1 - chosen[n - 1 - t] for t in range(n)]
    prefix = [Subspace(nn, [1 << idx for idx in order[:i]]) for i in range(n + 1)]
    b = Flag.from_isotropic_prefix(space, prefix)
    # the perp completion of a coordinate prefix is again a coordinate prefix
    for i in range(n + 1, nn + 1):
        assert b.steps[i] == Subspace(nn, [1 << idx for idx in order[:i]])
    a = standard_flag(space)
    pair = FlagPair(a, b, ct, a_indices=range(nn), b_indices=order)
    assert check_flag_conditions(pair)
    return pair
