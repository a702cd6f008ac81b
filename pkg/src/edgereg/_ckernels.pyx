# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: face enumeration and boundary ranks over GF(2) / GF(p).

Same contract as ``_pykernels``; vertex masks must fit in 64 bits.
"""
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, calloc, realloc, free, qsort


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef int _cmp_u64(const void* a, const void* b) noexcept nogil:
    cdef uint64_t x = (<const uint64_t*>a)[0]
    cdef uint64_t y = (<const uint64_t*>b)[0]
    return (x > y) - (x < y)


cdef Py_ssize_t _find(const uint64_t* arr, Py_ssize_t n, uint64_t key) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = n - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if arr[mid] < key:
            lo = mid + 1
        elif arr[mid] > key:
            hi = mid - 1
        else:
            return mid
    return -1


cdef int64_t _inv_mod(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t t = 0, nt = 1, r = p, nr = a % p, q, tmp
    if nr < 0:
        nr += p
    while nr:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


cdef Py_ssize_t _rank_gf2_words(uint64_t* cols, Py_ssize_t ncols, Py_ssize_t nrows,
                                Py_ssize_t nwords, Py_ssize_t* piv) noexcept nogil:
    cdef Py_ssize_t j, w, t, r, pj, rank = 0
    cdef uint64_t* col
    cdef uint64_t* pc
    for r in range(nrows):
        piv[r] = -1
    for j in range(ncols):
        col = cols + j * nwords
        w = 0
        while True:
            while w < nwords and col[w] == 0:
                w += 1
            if w == nwords:
                break
            r = w * 64 + __builtin_ctzll(col[w])
            pj = piv[r]
            if pj < 0:
                piv[r] = j
                rank += 1
                break
            pc = cols + pj * nwords
            for t in range(w, nwords):
                col[t] ^= pc[t]
    return rank


cdef Py_ssize_t _rank_modp_dense(int64_t* cols, Py_ssize_t ncols, Py_ssize_t nrows,
                                 int64_t p, Py_ssize_t* piv) noexcept nogil:
    cdef Py_ssize_t j, r, t, pj, rank = 0
    cdef int64_t* col
    cdef int64_t* pc
    cdef int64_t c, inv, x
    for r in range(nrows):
        piv[r] = -1
    for j in range(ncols):
        col = cols + j * nrows
        r = 0
        while True:
            while r < nrows and col[r] == 0:
                r += 1
            if r == nrows:
                break
            pj = piv[r]
            if pj < 0:
                inv = _inv_mod(col[r], p)
                for t in range(r, nrows):
                    if col[t]:
                        col[t] = col[t] * inv % p
                piv[r] = j
                rank += 1
                break
            c = col[r]
            pc = cols + pj * nrows
            for t in range(r, nrows):
                if pc[t]:
                    x = (col[t] - c * pc[t]) % p
                    if x < 0:
                        x += p
                    col[t] = x
    return rank


def rank_gf2(Py_ssize_t nrows, cols):
    """Rank over GF(2) of a matrix given as columns of nonzero row indices."""
    cdef Py_ssize_t ncols = len(cols), nwords = (nrows + 63) // 64, j, r
    if ncols == 0 or nrows == 0:
        return 0
    cdef uint64_t* buf = <uint64_t*>calloc(ncols * nwords, sizeof(uint64_t))
    cdef Py_ssize_t* piv = <Py_ssize_t*>malloc(nrows * sizeof(Py_ssize_t))
    if buf == NULL or piv == NULL:
        free(buf)
        free(piv)
        raise MemoryError()
    try:
        for j in range(ncols):
            for r in cols[j]:
                buf[j * nwords + r // 64] ^= (<uint64_t>1) << (r % 64)
        return _rank_gf2_words(buf, ncols, nrows, nwords, piv)
    finally:
        free(buf)
        free(piv)


def rank_modp(Py_ssize_t nrows, cols, int64_t p):
    """Rank over GF(p) of a matrix given as columns of ``(row, value)`` pairs."""
    cdef Py_ssize_t ncols = len(cols), j, r
    cdef int64_t a
    if ncols == 0 or nrows == 0:
        return 0
    cdef int64_t* buf = <int64_t*>calloc(ncols * nrows, sizeof(int64_t))
    cdef Py_ssize_t* piv = <Py_ssize_t*>malloc(nrows * sizeof(Py_ssize_t))
    if buf == NULL or piv == NULL:
        free(buf)
        free(piv)
        raise MemoryError()
    try:
        for j in range(ncols):
            for r, val in cols[j]:
                a = (buf[j * nrows + r] + val % p) % p
                buf[j * nrows + r] = a
        return _rank_modp_dense(buf, ncols, nrows, p, piv)
    finally:
        free(buf)
        free(piv)


cdef struct Level:
    uint64_t* faces
    int* top
    Py_ssize_t size
    Py_ssize_t cap


cdef int _push(Level* lv, uint64_t f, int t) noexcept nogil:
    cdef uint64_t* nf
    cdef int* nt
    if lv.size == lv.cap:
        lv.cap = lv.cap * 2 if lv.cap else 16
        nf = <uint64_t*>realloc(lv.faces, lv.cap * sizeof(uint64_t))
        if nf == NULL:
            return -1
        lv.faces = nf
        nt = <int*>realloc(lv.top, lv.cap * sizeof(int))
        if nt == NULL:
            return -1
        lv.top = nt
    lv.faces[lv.size] = f
    lv.top[lv.size] = t
    lv.size += 1
    return 0


def subset_betti(gens, uint64_t w, int64_t p):
    """Reduced Betti numbers of the Stanley–Reisner complex restricted to ``w``.

    Entry ``k`` of the result is ``dim H̃_{k-1}`` over GF(p).
    """
    cdef int verts[64]
    cdef int nv = 0, v, idx, k, nlev = 0, i
    cdef uint64_t m = w, g, f, nf, low
    # generators contained in w, bucketed by vertex
    cdef uint64_t* bucket = NULL
    cdef int* bstart = NULL
    cdef Level levels[66]
    cdef Py_ssize_t nsub = 0, j, a, nrows, ncols, nwords, r
    cdef Py_ssize_t ranks[67]
    cdef bint ok
    cdef int err = 0
    cdef uint64_t* wbuf
    cdef int64_t* pbuf
    cdef Py_ssize_t* piv
    cdef int64_t sign

    while m:
        verts[nv] = __builtin_ctzll(m)
        nv += 1
        m &= m - 1

    sub = [gg for gg in gens if (gg & ~w) == 0]
    cdef Py_ssize_t total = 0
    for gg in sub:
        total += bin(gg).count("1")
    bucket = <uint64_t*>malloc((total + 1) * sizeof(uint64_t))
    bstart = <int*>malloc((nv + 1) * sizeof(int))
    for i in range(66):
        levels[i].faces = NULL
        levels[i].top = NULL
        levels[i].size = 0
        levels[i].cap = 0
    try:
        if bucket == NULL or bstart == NULL:
            raise MemoryError()
        a = 0
        for i in range(nv):
            bstart[i] = a
            for gg in sub:
                g = gg
                if (g >> verts[i]) & 1:
                    bucket[a] = g
                    a += 1
        bstart[nv] = a

        if _push(&levels[0], 0, -1):
            raise MemoryError()
        nlev = 1
        with nogil:
            while True:
                for j in range(levels[nlev - 1].size):
                    f = levels[nlev - 1].faces[j]
                    for idx in range(levels[nlev - 1].top[j] + 1, nv):
                        nf = f | ((<uint64_t>1) << verts[idx])
                        ok = True
                        for a in range(bstart[idx], bstart[idx + 1]):
                            if (bucket[a] & nf) == bucket[a]:
                                ok = False
                                break
                        if ok and _push(&levels[nlev], nf, idx):
                            err = 1
                            break
                    if err:
                        break
                if err or levels[nlev].size == 0:
                    break
                nlev += 1
        if err:
            raise MemoryError()
        for k in range(nlev):
            qsort(levels[k].faces, levels[k].size, sizeof(uint64_t), _cmp_u64)

        for k in range(nlev + 1):
            ranks[k] = 0
        for k in range(1, nlev):
            nrows = levels[k - 1].size
            ncols = levels[k].size
            piv = <Py_ssize_t*>malloc(nrows * sizeof(Py_ssize_t))
            if piv == NULL:
                raise MemoryError()
            if p == 2:
                nwords = (nrows + 63) // 64
                wbuf = <uint64_t*>calloc(ncols * nwords, sizeof(uint64_t))
                if wbuf == NULL:
                    free(piv)
                    raise MemoryError()
                with nogil:
                    for j in range(ncols):
                        f = levels[k].faces[j]
                        m = f
                        while m:
                            low = m & (~m + 1)
                            r = _find(levels[k - 1].faces, nrows, f ^ low)
                            wbuf[j * nwords + r // 64] ^= (<uint64_t>1) << (r % 64)
                            m ^= low
                    ranks[k] = _rank_gf2_words(wbuf, ncols, nrows, nwords, piv)
                free(wbuf)
            else:
                pbuf = <int64_t*>calloc(ncols * nrows, sizeof(int64_t))
                if pbuf == NULL:
                    free(piv)
                    raise MemoryError()
                with nogil:
                    for j in range(ncols):
                        f = levels[k].faces[j]
                        m = f
                        sign = 1
                        while m:
                            low = m & (~m + 1)
                            r = _find(levels[k - 1].faces, nrows, f ^ low)
                            pbuf[j * nrows + r] = 1 if sign > 0 else p - 1
                            sign = -sign
                            m ^= low
                    ranks[k] = _rank_modp_dense(pbuf, ncols, nrows, p, piv)
                free(pbuf)
            free(piv)
        return [levels[k].size - ranks[k] - ranks[k + 1] for k in range(nlev)]
    finally:
        free(bucket)
        free(bstart)
        for i in range(66):
            free(levels[i].faces)
            free(levels[i].top)
