"""Compiled exhaustive-sweep kernels over dense operation tables.

Same contracts as nearrings._sweeps_py; selected at import time by
nearrings.kernels when the extension built successfully.
"""

import numpy as np

cimport numpy as cnp


def assoc_counterexample(cnp.int32_t[:, ::1] mul):
    """First (x, y, z) in rank-lex order with (xy)z != x(yz), or None."""
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t x, y, z
    cdef cnp.int32_t xy
    for x in range(n):
        for y in range(n):
            xy = mul[x, y]
            for z in range(n):
                if mul[xy, z] != mul[x, mul[y, z]]:
                    return (x, y, int(z))
    return None


def ldist_counterexample(cnp.int32_t[:, ::1] mul, cnp.int32_t[:, ::1] add):
    """First (x, y, z) with x(y+z) != xy + xz, or None."""
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t x, y, z
    cdef cnp.int32_t xy
    for x in range(n):
        for y in range(n):
            xy = mul[x, y]
            for z in range(n):
                if mul[x, add[y, z]] != add[xy, mul[x, z]]:
                    return (x, y, int(z))
    return None
