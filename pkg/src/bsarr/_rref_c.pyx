# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer Gauss-Jordan elimination.

Runs in machine integers with overflow detection and restarts on Python
integers when a product or difference leaves the int64 range.  Output is
identical to ``bsarr._rref_py.int_rref``.
"""
from libc.stdlib cimport malloc, free
from math import gcd

cdef extern from *:
    """
    static inline int bs_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int bs_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    bint bs_mul_ovf(long long a, long long b, long long *r) nogil
    bint bs_sub_ovf(long long a, long long b, long long *r) nogil

cdef long long LIMIT = 1LL << 62


cdef inline long long _gcd(long long a, long long b) noexcept nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef void _primitive_c(long long *row, Py_ssize_t ncols) noexcept nogil:
    cdef long long g = 0
    cdef Py_ssize_t j
    for j in range(ncols):
        if row[j]:
            g = _gcd(g, row[j])
            if g == 1:
                return
    if g > 1:
        for j in range(ncols):
            row[j] = row[j] // g


cdef int _eliminate_c(long long *m, Py_ssize_t nrows, Py_ssize_t ncols,
                      Py_ssize_t *pivots, Py_ssize_t *rank) noexcept nogil:
    """Return 0 on success, 1 on int64 overflow."""
    cdef Py_ssize_t c, i, j, sel, prow = 0
    cdef long long a, b, g, a1, b1, t1, t2, tmp
    cdef long long *p
    cdef long long *r
    for c in range(ncols):
        if prow == nrows:
            break
        sel = -1
        for i in range(prow, nrows):
            if m[i * ncols + c]:
                sel = i
                break
        if sel < 0:
            continue
        if sel != prow:
            for j in range(ncols):
                tmp = m[prow * ncols + j]
                m[prow * ncols + j] = m[sel * ncols + j]
                m[sel * ncols + j] = tmp
        p = m + prow * ncols
        _primitive_c(p, ncols)
        if p[c] < 0:
            for j in range(ncols):
                p[j] = -p[j]
        a = p[c]
        for i in range(nrows):
            if i == prow:
                continue
            r = m + i * ncols
            b = r[c]
            if not b:
                continue
            g = _gcd(a, b)
            a1 = a // g
            b1 = b // g
            for j in range(ncols):
                if bs_mul_ovf(a1, r[j], &t1):
                    return 1
                if bs_mul_ovf(b1, p[j], &t2):
                    return 1
                if bs_sub_ovf(t1, t2, &tmp):
                    return 1
                if tmp >= LIMIT or tmp <= -LIMIT:
                    return 1
                r[j] = tmp
            _primitive_c(r, ncols)
        pivots[prow] = c
        prow += 1
    rank[0] = prow
    return 0


def _primitive_obj(list row):
    cdef object g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if g > 1:
        row = [x // g for x in row]
    return row


def _int_rref_obj(list work, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(work)
    cdef Py_ssize_t c, i, j, sel, prow = 0
    cdef list pivots = []
    cdef list p, r
    for c in range(ncols):
        if prow == nrows:
            break
        sel = -1
        for i in range(prow, nrows):
            if work[i][c]:
                sel = i
                break
        if sel < 0:
            continue
        if sel != prow:
            work[prow], work[sel] = work[sel], work[prow]
        p = _primitive_obj(work[prow])
        if p[c] < 0:
            p = [-x for x in p]
        work[prow] = p
        a = p[c]
        for i in range(nrows):
            if i == prow:
                continue
            r = work[i]
            b = r[c]
            if not b:
                continue
            g = gcd(a, b)
            a1 = a // g
            b1 = b // g
            work[i] = _primitive_obj([a1 * r[j] - b1 * p[j] for j in range(ncols)])
        pivots.append(c)
        prow += 1
    out = work[:prow]
    return out, pivots


def int_rref(rows, Py_ssize_t ncols):
    """Fraction-free Gauss-Jordan elimination over the integers.

    Same contract as the pure-Python kernel.
    """
    cdef list work = [list(r) for r in rows if any(r)]
    cdef Py_ssize_t nrows = len(work)
    cdef Py_ssize_t i, j, rank = 0
    cdef long long *m
    cdef Py_ssize_t *piv
    cdef int status
    fits = True
    for row in work:
        for x in row:
            if x >= LIMIT or x <= -LIMIT:
                fits = False
                break
        if not fits:
            break
    if not fits or nrows == 0 or ncols == 0:
        return _int_rref_obj(work, ncols)
    m = <long long *> malloc(nrows * ncols * sizeof(long long))
    piv = <Py_ssize_t *> malloc(nrows * sizeof(Py_ssize_t))
    if m == NULL or piv == NULL:
        free(m)
        free(piv)
        raise MemoryError()
    try:
        for i in range(nrows):
            for j in range(ncols):
                m[i * ncols + j] = work[i][j]
        with nogil:
            status = _eliminate_c(m, nrows, ncols, piv, &rank)
        if status:
            return _int_rref_obj(work, ncols)
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(rank)]
        pivots = [piv[i] for i in range(rank)]
    finally:
        free(m)
        free(piv)
    return out, pivots
