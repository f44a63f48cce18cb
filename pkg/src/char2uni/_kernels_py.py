"""Pure-Python GF(2) kernels on int bitsets (bit j of a row = column j).

Reference implementations for the hot operations; `_core` mirrors them on
64-bit words.  These work for any dimension.
"""

from __future__ import annotations


def rank(rows, ncols):
    """GF(2) rank via elimination keyed on lowest set bits."""
    pivots = {}
    r = 0
    for row in rows:
        cur = row
        while cur:
            low = cur & -cur
            p = pivots.get(low)
            if p is None:
                pivots[low] = cur
                r += 1
                break
            cur ^= p
    return r


def mat_mul(a_rows, b_rows, n):
    """Row representation of the product: row i of A*B xors the B-rows
    selected by the bits of row i of A."""
    out = []
    for a in a_rows:
        acc = 0
        t = a
        while t:
            acc ^= b_rows[(t & -t).bit_length() - 1]
            t &= t - 1
        out.append(acc)
    return tuple(out)


def apply_rows(rows, x):
    """Matrix times column vector: bit r of the result is <row r, x>."""
    y = 0
    for r, row in enumerate(rows):
        if (row & x).bit_count() & 1:
            y |= 1 << r
    return y


def rref(rows, ncols):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    work = [r for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
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
        pivots.append(c)
        r += 1
    return work[:r], pivots


def kernel_basis(rows, ncols):
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    work, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for c in range(ncols):
        if c in pivset:
            continue
        v = 1 << c
        for ri, pc in enumerate(pivots):
            if (work[ri] >> c) & 1:
                v |= 1 << pc
        basis.append(v)
    return basis


def classify_unipotent(g_rows, gram_rows, n):
    """Classify a unipotent isometry by (Jordan parts, eps bits).

    Returns None when g is not unipotent.  Otherwise returns a pair
    (parts, eps) where parts is the weakly decreasing tuple of Jordan block
    sizes and eps is a tuple of (i, bit) for every even block size i present,
    the bit recording whether x -> <N^{i-1} x, x> is nonzero somewhere on
    ker N^i (N = g - 1, <,> the form given by gram_rows).

    The Jordan type comes from the rank sequence of the powers of N: the
    number of blocks of size >= i is rank(N^{i-1}) - rank(N^i).
    """
    ident = [1 << i for i in range(n)]
    big = tuple(g_rows[i] ^ ident[i] for i in range(n))

    m = big
    e = 1
    while e < n:
        m = mat_mul(m, m, n)
        e <<= 1
    if any(m):
        return None

    powers = [tuple(ident), big]
    ranks = [n, rank(big, n)]
    while ranks[-1]:
        powers.append(mat_mul(powers[-1], big, n))
        ranks.append(rank(powers[-1], n))
    top = len(ranks) - 1  # nilpotency index: N^top = 0
    cstar = [ranks[i - 1] - ranks[i] for i in range(1, top + 1)]

    parts = []
    for j in range(1, (cstar[0] if cstar else 0) + 1):
        parts.append(sum(1 for v in cstar if v >= j))

    eps = []
    for i in range(2, top + 1, 2):
        mu = cstar[i - 1] - (cstar[i] if i < top else 0)
        if mu <= 0:
            continue
        kb = kernel_basis(powers[i], n)
        mprev = powers[i - 1]
        mb = [apply_rows(mprev, b) for b in kb]
        gb = [apply_rows(gram_rows, b) for b in kb]
        hit = any((mb[s] & gb[s]).bit_count() & 1 for s in range(len(kb)))
        if not hit:
            for s in range(len(kb)):
                for t in range(s + 1, len(kb)):
                    if ((mb[s] & gb[t]).bit_count() ^ (mb[t] & gb[s]).bit_count()) & 1:
                        hit = True
                        break
                if hit:
                    break
        eps.append((i, 1 if hit else 0))
    return tuple(parts), tuple(eps)
