# cython: language_level=3
"""Compiled polynomial kernel: integer convolution and reduction.

Coefficients stay arbitrary-precision Python ints; Cython removes the
interpreter overhead of the inner loops, which dominate exact
cyclotomic multiplication.
"""


cpdef list convolve(list a, list b):
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t lb = len(b)
    cdef Py_ssize_t i, j
    cdef list out = [0] * (la + lb - 1)
    cdef object ai, bj
    for i in range(la):
        ai = a[i]
        if ai:
            for j in range(lb):
                bj = b[j]
                if bj:
                    out[i + j] = out[i + j] + ai * bj
    return out


cpdef list reduce_tail(list c, list rows, Py_ssize_t phi):
    cdef Py_ssize_t lc = len(c)
    cdef Py_ssize_t k, j
    cdef list out = list(c[:phi])
    cdef list row
    cdef object ck, rj
    while len(out) < phi:
        out.append(0)
    for k in range(lc - phi):
        ck = c[phi + k]
        if ck:
            row = rows[k]
            for j in range(phi):
                rj = row[j]
                if rj:
                    out[j] = out[j] + ck * rj
    return out


cpdef list mul_reduced(list a, list b, list rows, Py_ssize_t phi):
    return reduce_tail(convolve(a, b), rows, phi)
