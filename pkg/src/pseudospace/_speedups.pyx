# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled word kernels.

Same contract as ``_kernels_py``: raw words are tuples of ``(lo, hi)`` pairs
of closed level intervals.  Letters are unpacked once into C arrays and all
scanning runs without Python object traffic.
"""

from libc.stdlib cimport free, malloc

BACKEND_NAME = "compiled"


cdef inline bint _commutes(int alo, int ahi, int blo, int bhi) noexcept nogil:
    return blo >= ahi + 2 or alo >= bhi + 2


cdef inline bint _contains(int alo, int ahi, int blo, int bhi) noexcept nogil:
    # [blo, bhi] inside [alo, ahi]
    return alo <= blo and bhi <= ahi


cdef int _unpack(word, int **lo_out, int **hi_out) except -1:
    cdef Py_ssize_t n = len(word)
    cdef int *lo = <int *> malloc(n * sizeof(int) if n else sizeof(int))
    cdef int *hi = <int *> malloc(n * sizeof(int) if n else sizeof(int))
    if lo == NULL or hi == NULL:
        free(lo)
        free(hi)
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        lo[i] = word[i][0]
        hi[i] = word[i][1]
    lo_out[0] = lo
    hi_out[0] = hi
    return <int> n


cdef bint _absorbed(int *lo, int *hi, int n, int i) noexcept nogil:
    cdef int j
    for j in range(i + 1, n):
        if _contains(lo[j], hi[j], lo[i], hi[i]):
            return True
        if not _commutes(lo[i], hi[i], lo[j], hi[j]):
            break
    for j in range(i - 1, -1, -1):
        if _contains(lo[j], hi[j], lo[i], hi[i]):
            return True
        if not _commutes(lo[i], hi[i], lo[j], hi[j]):
            break
    return False


def absorbed_at(word, int i):
    """True iff the letter at ``i`` can be deleted by generalized cancellation."""
    cdef int *lo
    cdef int *hi
    cdef int n = _unpack(word, &lo, &hi)
    cdef bint out = _absorbed(lo, hi, n, i)
    free(lo)
    free(hi)
    return bool(out)


def is_reduced(word):
    cdef int *lo
    cdef int *hi
    cdef int n = _unpack(word, &lo, &hi)
    cdef int i
    cdef bint ok = True
    for i in range(n):
        if _absorbed(lo, hi, n, i):
            ok = False
            break
    free(lo)
    free(hi)
    return bool(ok)


cdef void _sort_normal(int *lo, int *hi, int n) noexcept nogil:
    cdef bint swapped = True
    cdef int i, tl, th
    while swapped:
        swapped = False
        for i in range(n - 1):
            # commuting inversion: the right letter lies entirely below
            if lo[i] >= hi[i + 1] + 2:
                tl = lo[i]
                th = hi[i]
                lo[i] = lo[i + 1]
                hi[i] = hi[i + 1]
                lo[i + 1] = tl
                hi[i + 1] = th
                swapped = True


def normal_form(word):
    """Bubble adjacent commuting inversions until increasing."""
    cdef int *lo
    cdef int *hi
    cdef int n = _unpack(word, &lo, &hi)
    _sort_normal(lo, hi, n)
    out = tuple((lo[i], hi[i]) for i in range(n))
    free(lo)
    free(hi)
    return out


def reduce_word(word):
    """Delete absorbed letters (leftmost first) until reduced; normalize."""
    cdef int *lo
    cdef int *hi
    cdef int n = _unpack(word, &lo, &hi)
    cdef int i, j
    i = 0
    while i < n:
        if _absorbed(lo, hi, n, i):
            for j in range(i, n - 1):
                lo[j] = lo[j + 1]
                hi[j] = hi[j + 1]
            n -= 1
            i = 0
        else:
            i += 1
    _sort_normal(lo, hi, n)
    out = tuple((lo[i], hi[i]) for i in range(n))
    free(lo)
    free(hi)
    return out
