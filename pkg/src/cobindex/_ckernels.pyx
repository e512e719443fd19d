# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""int64 fast path for the table-driven truncated product.

Any intermediate that leaves the int64 range raises OverflowError; the
caller then reruns the Python kernel, so results are always exact.
"""
from libc.stdlib cimport malloc, free


cdef extern from *:
    bint mul_ovf "__builtin_mul_overflow"(long long a, long long b, long long *res) nogil
    bint add_ovf "__builtin_add_overflow"(long long a, long long b, long long *res) nogil


def trunc_mul(a, b, const long long[::1] I, const long long[::1] J,
              const long long[::1] K, const long long[::1] W, Py_ssize_t size):
    cdef Py_ssize_t na = len(a), nb = len(b), t, nt = I.shape[0], idx
    cdef long long x, y, p
    cdef bint bad = False
    cdef long long *A = <long long *> malloc(na * sizeof(long long))
    cdef long long *B = <long long *> malloc(nb * sizeof(long long))
    cdef long long *O = <long long *> malloc(size * sizeof(long long))
    if A == NULL or B == NULL or O == NULL:
        free(A); free(B); free(O)
        raise MemoryError()
    try:
        # PyLong -> long long conversion raises OverflowError on its own
        for idx in range(na):
            A[idx] = a[idx]
        for idx in range(nb):
            B[idx] = b[idx]
        for idx in range(size):
            O[idx] = 0
        with nogil:
            for t in range(nt):
                x = A[I[t]]
                if x == 0:
                    continue
                y = B[J[t]]
                if y == 0:
                    continue
                if mul_ovf(x, y, &p) or mul_ovf(p, W[t], &p) or add_ovf(O[K[t]], p, &O[K[t]]):
                    bad = True
                    break
        if bad:
            raise OverflowError("int64 overflow in trunc_mul")
        return [O[idx] for idx in range(size)]
    finally:
        free(A)
        free(B)
        free(O)
