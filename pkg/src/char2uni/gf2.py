"""Exact dense linear algebra over GF(2) and formed spaces in characteristic 2.

Vectors are int bitsets (bit r = coordinate r); matrices are tuples of row
ints with bit j of row r the (r, j) entry, acting on column vectors.  A
FormedSpace carries a nondegenerate alternating Gram matrix and optionally the
values of a quadratic form on the basis vectors; in characteristic 2 those
basis values determine Q everywhere through Q(x+y) = Q(x) + Q(y) + (x, y).

The heavy kernels (rank, products, unipotent classification) dispatch through
`_backend`; everything else is plain Python.
"""

from __future__ import annotations

from operator import index as _as_int
from typing import Iterable, Iterator, List, Optional, Tuple

from . import _backend, _kernels_py
from .class_labels import SpLabel
from .partitions import Partition


class BitVector:
    """A vector over GF(2) with an explicit ambient dimension."""

    __slots__ = ("dim", "bits")

    def __init__(self, dim: int, bits: int = 0):
        if dim < 1:
            raise ValueError("dimension must be positive")
        bits = _as_int(bits)
        if bits < 0 or bits >> dim:
            raise ValueError("coordinates do not fit the dimension")
        self.dim = dim
        self.bits = bits

    def __index__(self) -> int:
        return self.bits

    def __getitem__(self, r: int) -> int:
        if not 0 <= r < self.dim:
            raise IndexError(r)
        return (self.bits >> r) & 1

    def __xor__(self, other) -> "BitVector":
        return BitVector(self.dim, self.bits ^ _as_int(other))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitVector)
            and self.dim == other.dim
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.bits))

    def __repr__(self) -> str:
        return "BitVector(%d, 0b%s)" % (self.dim, format(self.bits, "0%db" % self.dim))

    def to_json(self) -> List[int]:
        return [(self.bits >> r) & 1 for r in range(self.dim)]

    @classmethod
    def from_json(cls, coords: Iterable[int]) -> "BitVector":
        coords = list(coords)
        bits = 0
        for r, v in enumerate(coords):
            if v:
                bits |= 1 << r
        return cls(len(coords), bits)


class BitMatrix:
    """An immutable matrix over GF(2), rows packed into ints."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[int], ncols: int):
        rows = tuple(_as_int(r) for r in rows)
        if ncols < 1:
            raise ValueError("ncols must be positive")
        for r in rows:
            if r < 0 or r >> ncols:
                raise ValueError("row does not fit in %d columns" % ncols)
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls((1 << i for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls((0,) * nrows, ncols)

    @classmethod
    def from_entries(cls, entries: Iterable[Iterable[int]]) -> "BitMatrix":
        rows = []
        width = None
        for entry_row in entries:
            entry_row = list(entry_row)
            if width is None:
                width = len(entry_row)
            elif width != len(entry_row):
                raise ValueError("ragged rows")
            acc = 0
            for j, v in enumerate(entry_row):
                if v:
                    acc |= 1 << j
            rows.append(acc)
        if width is None or width == 0:
            raise ValueError("matrix needs at least one entry")
        return cls(rows, width)

    def entry(self, r: int, c: int) -> int:
        return (self.rows[r] >> c) & 1

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return not any(self.rows)

    def apply(self, x: int) -> int:
        """Matrix times column vector."""
        return _kernels_py.apply_rows(self.rows, _as_int(x))

    def transpose(self) -> "BitMatrix":
        out = [0] * self.ncols
        for r, row in enumerate(self.rows):
            t = row
            while t:
                c = (t & -t).bit_length() - 1
                out[c] |= 1 << r
                t &= t - 1
        return BitMatrix(out, self.nrows)

    def __mul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        if self.is_square() and other.is_square():
            return BitMatrix(_backend.mat_mul(self.rows, other.rows, self.nrows), self.ncols)
        out = []
        for a in self.rows:
            acc = 0
            t = a
            while t:
                acc ^= other.rows[(t & -t).bit_length() - 1]
                t &= t - 1
            out.append(acc)
        return BitMatrix(out, other.ncols)

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return BitMatrix((a ^ b for a, b in zip(self.rows, other.rows)), self.ncols)

    def __pow__(self, k: int) -> "BitMatrix":
        if not self.is_square():
            raise ValueError("powers need a square matrix")
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = BitMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.ncols, self.rows))

    def __repr__(self) -> str:
        return "BitMatrix(%d x %d)" % (self.nrows, self.ncols)

    def __str__(self) -> str:
        return "\n".join(
            "".join(str(self.entry(r, c)) for c in range(self.ncols))
            for r in range(self.nrows)
        )

    def to_json(self) -> List[List[int]]:
        return [[(row >> c) & 1 for c in range(self.ncols)] for row in self.rows]

    @classmethod
    def from_json(cls, obj, ncols: Optional[int] = None) -> "BitMatrix":
        """Rows either as 0/1 lists or as hex strings of the packed row word
        (least significant bit = column 0); the latter needs ``ncols``."""
        rows = list(obj)
        if rows and isinstance(rows[0], str):
            if ncols is None:
                raise ValueError("hex rows need an explicit column count")
            return cls((int(tok, 16) for tok in rows), ncols)
        return cls.from_entries(rows)


def rank(m: BitMatrix) -> int:
    """Rank over GF(2)."""
    return _backend.rank(m.rows, m.ncols)


def inverse(m: BitMatrix) -> BitMatrix:
    """Inverse of a square matrix; ValueError when singular."""
    if not m.is_square():
        raise ValueError("only square matrices can be inverted")
    n = m.nrows
    work = [m.rows[i] | (1 << (n + i)) for i in range(n)]
    r = 0
    for c in range(n):
        piv = None
        for k in range(r, n):
            if (work[k] >> c) & 1:
                piv = k
                break
        if piv is None:
            raise ValueError("matrix is singular")
        work[r], work[piv] = work[piv], work[r]
        for k in range(n):
            if k != r and (work[k] >> c) & 1:
                work[k] ^= work[r]
        r += 1
    mask = (1 << n) - 1
    # rows ended up sorted by pivot column, i.e. in original column order
    return BitMatrix(((row >> n) & mask for row in work), n)


class Subspace:
    """A subspace of GF(2)^ambient_dim in reduced row echelon form.

    The basis is canonical, so equality of subspaces is equality of the
    stored tuples.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors: Iterable[int] = ()):
        if ambient_dim < 1:
            raise ValueError("ambient dimension must be positive")
        vectors = [_as_int(v) for v in vectors]
        for v in vectors:
            if v < 0 or v >> ambient_dim:
                raise ValueError("vector does not fit the ambient space")
        reduced, _ = _kernels_py.rref(vectors, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis = tuple(reduced)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, x) -> bool:
        if isinstance(x, Subspace):
            return all(self.contains(b) for b in x.basis)
        cur = _as_int(x)
        for row in self.basis:
            piv = row & -row
            if cur & piv:
                cur ^= row
        return cur == 0

    def vectors(self) -> Iterator[int]:
        """All 2^dim elements (small subspaces only)."""
        for mask in range(1 << self.dim):
            v = 0
            t = mask
            while t:
                v ^= self.basis[(t & -t).bit_length() - 1]
                t &= t - 1
            yield v

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return "Subspace(dim=%d, ambient=%d)" % (self.dim, self.ambient_dim)

    def to_json(self) -> List[List[int]]:
        return [BitVector(self.ambient_dim, b).to_json() for b in self.basis]


def span(vectors: Iterable[int], ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, vectors)


def intersect(s: Subspace, t: Subspace) -> Subspace:
    """Intersection via the Zassenhaus trick: reduce rows (x | x << n) for x
    in s and (y) for y in t; rows whose low word vanished carry intersection
    vectors in the high word."""
    if s.ambient_dim != t.ambient_dim:
        raise ValueError("ambient dimensions differ")
    n = s.ambient_dim
    work = [b | (b << n) for b in s.basis] + list(t.basis)
    r = 0
    for c in range(n):
        piv = None
        for k in range(r, len(work)):
            if (work[k] >> c) & 1:
                piv = k
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for k in range(len(work)):
            if k != r and (work[k] >> c) & 1:
                work[k] ^= work[r]
        r += 1
    out = [row >> n for row in work[r:] if row >> n]
    return Subspace(n, out)


def subspace_sum(s: Subspace, t: Subspace) -> Subspace:
    if s.ambient_dim != t.ambient_dim:
        raise ValueError("ambient dimensions differ")
    return Subspace(s.ambient_dim, s.basis + t.basis)


def image_under(g: BitMatrix, s: Subspace) -> Subspace:
    if g.ncols != s.ambient_dim:
        raise ValueError("matrix does not act on this ambient space")
    return Subspace(g.nrows, (g.apply(b) for b in s.basis))


def kernel(m: BitMatrix) -> Subspace:
    """The nullspace {x : m x = 0}."""
    return Subspace(m.ncols, _kernels_py.kernel_basis(m.rows, m.ncols))


class FormedSpace:
    """GF(2)^dim with a nondegenerate alternating form and optionally a
    quadratic form Q whose polarization is that form.

    ``q_values`` lists Q on the basis vectors; Q of an arbitrary vector adds
    the basis values on its support and the Gram entries over pairs of
    support indices.
    """

    __slots__ = ("dim", "gram", "q_values", "_qmask")

    def __init__(self, gram: BitMatrix, q_values: Optional[Iterable[int]] = None):
        if not gram.is_square():
            raise ValueError("gram matrix must be square")
        n = gram.nrows
        if n % 2 == 1:
            raise ValueError("formed spaces here have even dimension")
        for r in range(n):
            if gram.entry(r, r):
                raise ValueError("gram matrix must have zero diagonal")
        if gram != gram.transpose():
            raise ValueError("gram matrix must be symmetric")
        if rank(gram) != n:
            raise ValueError("form is degenerate")
        self.dim = n
        self.gram = gram
        if q_values is None:
            self.q_values = None
            self._qmask = None
        else:
            q_values = tuple(int(v) & 1 for v in q_values)
            if len(q_values) != n:
                raise ValueError("need one Q value per basis vector")
            self.q_values = q_values
            mask = 0
            for r, v in enumerate(q_values):
                if v:
                    mask |= 1 << r
            self._qmask = mask

    @property
    def has_q(self) -> bool:
        return self.q_values is not None

    def form(self, x, y) -> int:
        return (_as_int(x) & self.gram.apply(y)).bit_count() & 1

    def q(self, x) -> int:
        if not self.has_q:
            raise ValueError("no quadratic form on this space")
        x = _as_int(x)
        acc = (self._qmask & x).bit_count() & 1
        t = x
        while t:
            r = (t & -t).bit_length() - 1
            t &= t - 1
            acc ^= (self.gram.rows[r] & t).bit_count() & 1
        return acc

    def perp(self, s: Subspace) -> Subspace:
        """{x : (x, b) = 0 for all b in s}."""
        if s.ambient_dim != self.dim:
            raise ValueError("subspace lives in a different space")
        rows = [self.gram.apply(b) for b in s.basis]
        return Subspace(self.dim, _kernels_py.kernel_basis(rows, self.dim))

    def q_vanishes_on(self, s: Subspace) -> bool:
        """Whether Q is identically zero on the subspace.  Because Q is
        quadratic with polarization the Gram form, it suffices that Q kills
        every basis vector and the form kills every basis pair."""
        if not self.has_q:
            raise ValueError("no quadratic form on this space")
        if any(self.q(b) for b in s.basis):
            return False
        return not any(
            self.form(s.basis[i], s.basis[j])
            for i in range(s.dim)
            for j in range(i + 1, s.dim)
        )

    def form_vanishes_on(self, s: Subspace) -> bool:
        return not any(
            self.form(s.basis[i], s.basis[j])
            for i in range(s.dim)
            for j in range(i + 1, s.dim)
        )

    def to_json(self) -> dict:
        obj = {"dim": self.dim, "gram": self.gram.to_json()}
        obj["q_values"] = list(self.q_values) if self.has_q else None
        return obj


def is_isometry(g: BitMatrix, space: FormedSpace) -> bool:
    """Membership in the full isometry group: preserves the bilinear form and,
    when present, the quadratic form."""
    if not g.is_square() or g.nrows != space.dim:
        raise ValueError("matrix size does not match the space")
    gt = g.transpose()
    if gt * (space.gram * g) != space.gram:
        return False
    if space.has_q:
        for j in range(space.dim):
            if space.q(g.apply(1 << j)) != space.q_values[j]:
                return False
    return True


def transvection(space: FormedSpace, a) -> BitMatrix:
    """The map x -> x + (x, a) a.  Always symplectic; preserves Q exactly
    when Q(a) = 1."""
    a = _as_int(a)
    ga = space.gram.apply(a)
    rows = [(1 << r) ^ (ga if (a >> r) & 1 else 0) for r in range(space.dim)]
    return BitMatrix(rows, space.dim)


def is_unipotent(g: BitMatrix) -> bool:
    if not g.is_square():
        raise ValueError("unipotence needs a square matrix")
    n = g.nrows
    m = g + BitMatrix.identity(n)
    e = 1
    while e < n:
        m = m * m
        e <<= 1
    return m.is_zero()


def jordan_type(g: BitMatrix) -> Partition:
    """Jordan block sizes of a unipotent matrix, from the rank sequence of
    the powers of N = g - 1: blocks of size >= i number
    rank(N^{i-1}) - rank(N^i)."""
    if not is_unipotent(g):
        raise ValueError("matrix is not unipotent")
    n = g.nrows
    big = g + BitMatrix.identity(n)
    ranks = [n]
    p = big
    while True:
        r = rank(p)
        ranks.append(r)
        if r == 0:
            break
        p = p * big
    cstar = [ranks[i - 1] - ranks[i] for i in range(1, len(ranks))]
    parts = [sum(1 for v in cstar if v >= j) for j in range(1, cstar[0] + 1)] if cstar[0] else []
    return Partition(parts)


def quadratic_vanishes_on(m: BitMatrix, space: FormedSpace, sub: Subspace) -> bool:
    """Whether x -> (m x, x) vanishes identically on ``sub``.

    The map is quadratic over GF(2) with polar form
    B(x, y) = (m x, y) + (m y, x), so it vanishes on the whole subspace iff it
    vanishes on a basis and B vanishes on all basis pairs.  That replaces a
    2^k sweep by O(k^2) form evaluations; the test suite checks the
    equivalence against the exhaustive sweep.
    """
    if sub.ambient_dim != space.dim or m.ncols != space.dim:
        raise ValueError("dimension mismatch")
    mb = [m.apply(b) for b in sub.basis]
    gb = [space.gram.apply(b) for b in sub.basis]
    k = sub.dim
    for s in range(k):
        if (mb[s] & gb[s]).bit_count() & 1:
            return False
    for s in range(k):
        for t in range(s + 1, k):
            if ((mb[s] & gb[t]).bit_count() ^ (mb[t] & gb[s]).bit_count()) & 1:
                return False
    return True


def epsilon_invariant(g: BitMatrix, space: FormedSpace, i: int) -> int:
    """The extra bit attached to an even Jordan block size i of a unipotent
    isometry g: 0 iff (N^{i-1} x, x) = 0 for every x in ker N^i, where
    N = g - 1.  Undefined (ValueError) when no block of size i exists."""
    if i < 2 or i % 2 == 1:
        raise ValueError("the invariant is defined for even i >= 2")
    if g.nrows != space.dim:
        raise ValueError("matrix size does not match the space")
    c = jordan_type(g)
    if c.multiplicity(i) == 0:
        raise ValueError("no Jordan block of size %d" % i)
    big = g + BitMatrix.identity(space.dim)
    ker = kernel(big ** i)
    return 0 if quadratic_vanishes_on(big ** (i - 1), space, ker) else 1


def sp_label_of(g: BitMatrix, space: FormedSpace) -> SpLabel:
    """The class label (Jordan type plus eps bits) of a unipotent element of
    the symplectic group of ``space``.  Dispatches to the selected kernel
    backend; the granular route through jordan_type/epsilon_invariant is
    checked against it in the tests."""
    if g.nrows != space.dim or not g.is_square():
        raise ValueError("matrix size does not match the space")
    gt = g.transpose()
    if gt * (space.gram * g) != space.gram:
        raise ValueError("matrix does not preserve the form")
    res = _backend.classify_unipotent(g.rows, space.gram.rows, space.dim)
    if res is None:
        raise ValueError("matrix is not unipotent")
    parts, eps = res
    label = SpLabel(Partition(parts), eps)
    assert label.is_valid()
    return label


def dickson_invariant(g: BitMatrix, space: FormedSpace) -> int:
    """rank(g - 1) mod 2 for an isometry of a quadratic space; the kernel of
    this homomorphism is the identity component of the isometry group."""
    if not space.has_q:
        raise ValueError("the invariant needs a quadratic form (it is trivial otherwise)")
    if not is_isometry(g, space):
        raise ValueError("matrix is not an isometry of the space")
    return rank(g + BitMatrix.identity(space.dim)) % 2
