# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled GF(2) kernels: one uint64 word per row, dimension <= 64.

Mirrors `_kernels_py` exactly; parity between the two is enforced by the test
suite.
"""

from libc.stdint cimport uint64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _parity(uint64_t x) nogil:
    return __builtin_popcountll(x) & 1


cdef int _load(object rows, uint64_t* buf, int cap) except -1:
    cdef int m = 0
    for row in rows:
        if m >= cap:
            raise ValueError("too many rows for the compiled kernel")
        buf[m] = <uint64_t> row
        m += 1
    return m


cdef int _rank_words(uint64_t* rows, int m) nogil:
    cdef uint64_t piv[64]
    cdef int i, b, r = 0
    cdef uint64_t cur
    for i in range(64):
        piv[i] = 0
    for i in range(m):
        cur = rows[i]
        while cur != 0:
            b = __builtin_ctzll(cur)
            if piv[b] == 0:
                piv[b] = cur
                r += 1
                break
            cur ^= piv[b]
    return r


cdef void _mul_words(uint64_t* a, uint64_t* b, uint64_t* out, int n) nogil:
    # out must not alias a or b
    cdef int i, j
    cdef uint64_t acc, t
    for i in range(n):
        acc = 0
        t = a[i]
        while t != 0:
            j = __builtin_ctzll(t)
            acc ^= b[j]
            t &= t - 1
        out[i] = acc


cdef inline uint64_t _apply_words(uint64_t* m, uint64_t x, int n) nogil:
    cdef int r
    cdef uint64_t y = 0
    for r in range(n):
        if _parity(m[r] & x):
            y |= (<uint64_t> 1) << r
    return y


cdef int _is_zero(uint64_t* m, int n) nogil:
    cdef int i
    for i in range(n):
        if m[i] != 0:
            return 0
    return 1


cdef int _kernel_words(uint64_t* m_in, int n, uint64_t* kb) nogil:
    """Basis of {x : M x = 0}; writes vectors into kb, returns their count."""
    cdef uint64_t work[64]
    cdef int pivcol[64]
    cdef int is_piv[64]
    cdef int i, c, k, piv, r = 0, cnt = 0
    cdef uint64_t tmp, v
    for i in range(n):
        work[i] = m_in[i]
        is_piv[i] = 0
    for c in range(n):
        piv = -1
        for k in range(r, n):
            if (work[k] >> c) & 1:
                piv = k
                break
        if piv < 0:
            continue
        tmp = work[r]
        work[r] = work[piv]
        work[piv] = tmp
        for k in range(n):
            if k != r and ((work[k] >> c) & 1):
                work[k] ^= work[r]
        pivcol[r] = c
        is_piv[c] = 1
        r += 1
    for c in range(n):
        if is_piv[c]:
            continue
        v = (<uint64_t> 1) << c
        for i in range(r):
            if (work[i] >> c) & 1:
                v |= (<uint64_t> 1) << pivcol[i]
        kb[cnt] = v
        cnt += 1
    return cnt


def rank(rows, int ncols):
    """GF(2) rank of a matrix given as int rows (at most 64 rows/columns)."""
    cdef uint64_t buf[64]
    cdef int m = _load(rows, buf, 64)
    return _rank_words(buf, m)


def mat_mul(a_rows, b_rows, int n):
    """Product of two n x n matrices in row representation."""
    cdef uint64_t a[64]
    cdef uint64_t b[64]
    cdef uint64_t out[64]
    if _load(a_rows, a, 64) != n or _load(b_rows, b, 64) != n:
        raise ValueError("expected n rows")
    _mul_words(a, b, out, n)
    cdef int i
    return tuple(out[i] for i in range(n))


def classify_unipotent(g_rows, gram_rows, int n):
    """Same contract as the pure kernel: None when g is not unipotent, else
    (jordan parts, eps items)."""
    cdef uint64_t g[64]
    cdef uint64_t gram[64]
    cdef uint64_t nmat[64]
    cdef uint64_t m[64]
    cdef uint64_t t[64]
    cdef uint64_t powers[65][64]
    cdef uint64_t kb[64]
    cdef uint64_t mb[64]
    cdef uint64_t gb[64]
    cdef int ranks[66]
    cdef int i, j, e, top, kcnt, s, u, mu, hit
    if n > 64:
        raise ValueError("compiled kernel handles dimension <= 64")
    if _load(g_rows, g, 64) != n or _load(gram_rows, gram, 64) != n:
        raise ValueError("expected n rows")

    for i in range(n):
        nmat[i] = g[i] ^ ((<uint64_t> 1) << i)

    # unipotence: square N until the exponent reaches the dimension
    for i in range(n):
        m[i] = nmat[i]
    e = 1
    while e < n:
        _mul_words(m, m, t, n)
        for i in range(n):
            m[i] = t[i]
        e <<= 1
    if not _is_zero(m, n):
        return None

    for i in range(n):
        powers[0][i] = (<uint64_t> 1) << i
        powers[1][i] = nmat[i]
    ranks[0] = n
    ranks[1] = _rank_words(powers[1], n)
    top = 1
    while ranks[top] > 0:
        _mul_words(powers[top], nmat, powers[top + 1], n)
        top += 1
        ranks[top] = _rank_words(powers[top], n)

    # conjugate parts c*_i = ranks[i-1] - ranks[i], i = 1..top
    parts = []
    for j in range(1, (ranks[0] - ranks[1]) + 1):
        s = 0
        for i in range(1, top + 1):
            if ranks[i - 1] - ranks[i] >= j:
                s += 1
        parts.append(s)

    eps = []
    for i in range(2, top + 1, 2):
        mu = (ranks[i - 1] - ranks[i]) - ((ranks[i] - ranks[i + 1]) if i < top else 0)
        if mu <= 0:
            continue
        kcnt = _kernel_words(powers[i], n, kb)
        for s in range(kcnt):
            mb[s] = _apply_words(powers[i - 1], kb[s], n)
            gb[s] = _apply_words(gram, kb[s], n)
        hit = 0
        for s in range(kcnt):
            if _parity(mb[s] & gb[s]):
                hit = 1
                break
        if not hit:
            for s in range(kcnt):
                for u in range(s + 1, kcnt):
                    if _parity(mb[s] & gb[u]) ^ _parity(mb[u] & gb[s]):
                        hit = 1
                        break
                if hit:
                    break
        eps.append((i, 1 if hit else 0))
    return tuple(parts), tuple(eps)
