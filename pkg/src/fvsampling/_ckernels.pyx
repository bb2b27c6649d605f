# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same contracts as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport atan2, fmod, M_PI, hypot
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef double ZERO_TOL = 1e-12


def coset_dft(values, Py_ssize_t p, Py_ssize_t h):
    # radix-p decimation: one length-p DFT per axis, O(h p^(h+1)) per row
    out_arr = np.array(values, dtype=np.complex128, order="C", copy=True)
    cdef double complex[:, ::1] out = out_arr
    cdef Py_ssize_t n = out.shape[0]
    cdef Py_ssize_t size = out.shape[1]
    cdef double complex[:, ::1] tw = np.exp(-2j * np.pi * (np.outer(np.arange(p), np.arange(p)) % p) / p)
    cdef double complex[::1] src = np.empty(p, dtype=np.complex128)
    cdef double complex *row_ptr
    cdef double complex *twb
    cdef Py_ssize_t row, axis, stride, inner, o, i, a, b, base
    cdef double complex acc
    cdef double scale = 1.0 / size
    for row in range(n):
        row_ptr = &out[row, 0]
        stride = size
        for axis in range(h):
            inner = stride // p
            for o in range(0, size, stride):
                for i in range(inner):
                    base = o + i
                    for a in range(p):
                        src[a] = row_ptr[base + a * inner]
                    for b in range(p):
                        twb = &tw[b, 0]
                        acc = 0
                        for a in range(p):
                            acc = acc + src[a] * twb[a]
                        row_ptr[base + b * inner] = acc
            stride = inner
        for i in range(size):
            row_ptr[i] = row_ptr[i] * scale
    return out_arr


def coset_members(minv, labels, Py_ssize_t p):
    cdef cnp.int64_t[:, ::1] m = np.ascontiguousarray(minv, dtype=np.int64)
    cdef cnp.int64_t[:, ::1] lab = np.ascontiguousarray(labels, dtype=np.int64)
    cdef Py_ssize_t r = m.shape[0]
    cdef Py_ssize_t n = lab.shape[0]
    cdef Py_ssize_t h = lab.shape[1]
    cdef Py_ssize_t k = r - h
    cdef Py_ssize_t count = 1
    cdef Py_ssize_t i, c, row, col, idx
    for i in range(k):
        count *= p
    out_arr = np.empty((n, count), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] out = out_arr
    cdef cnp.int64_t[::1] base = np.empty(r, dtype=np.int64)
    cdef cnp.int64_t[::1] u = np.empty(max(k, 1), dtype=np.int64)
    cdef cnp.int64_t code, acc
    for row in range(n):
        for i in range(r):
            acc = 0
            for c in range(h):
                acc += m[i, c] * lab[row, c]
            base[i] = acc % p
        for i in range(k):
            u[i] = 0
        for idx in range(count):
            code = 0
            for i in range(r):
                acc = base[i]
                for c in range(k):
                    acc += m[i, h + c] * u[c]
                code = code * p + acc % p
            out[row, idx] = code
            # odometer over u, last coordinate fastest
            col = k - 1
            while col >= 0:
                u[col] += 1
                if u[col] < p:
                    break
                u[col] = 0
                col -= 1
    return out_arr


cdef inline double _pdist(double x, double p):
    cdef double d = fmod(x, p)
    if d < 0:
        d += p
    if p - d < d:
        return p - d
    return d


def decode_one_sparse_batch(values, Py_ssize_t p):
    cdef double complex[:, ::1] v = np.ascontiguousarray(values, dtype=np.complex128)
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t width = v.shape[1]
    out_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    cdef double *b = <double *> malloc(max(width, 1) * sizeof(double))
    cdef char *alive = <char *> malloc(p * sizeof(char))
    cdef Py_ssize_t row, l, j
    cdef double complex f0, fl, ratio
    cdef double ang, power, dp = <double> p
    try:
        for row in range(n):
            f0 = v[row, 0]
            for l in range(width - 1):
                fl = v[row, l + 1]
                if hypot(f0.real, f0.imag) < ZERO_TOL or hypot(fl.real, fl.imag) < ZERO_TOL:
                    b[l] = 0.0
                else:
                    ratio = fl / f0
                    ang = atan2(ratio.imag, ratio.real)
                    if ang < 0:
                        ang += 2 * M_PI
                    b[l] = ang
            for j in range(p):
                alive[j] = 1
            power = 1.0
            for l in range(width - 1):
                for j in range(p):
                    if alive[j] and _pdist(dp * b[l] / (2 * M_PI) - power * j, dp) >= dp / 6:
                        alive[j] = 0
                power *= 2.0
            out[row] = 0
            for j in range(p):
                if alive[j]:
                    out[row] = j
                    break
    finally:
        free(b)
        free(alive)
    return out_arr
