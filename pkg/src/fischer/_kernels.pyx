# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sliding-window kernels (same contract as ``_kernels_py``)."""

from array import array
from cpython cimport array as carray


cdef void _step(const long[:] table, long k, long span, const long[:] src,
                long[:] dst, Py_ssize_t n_out) noexcept nogil:
    cdef long top = 1
    cdef long idx = 0
    cdef Py_ssize_t j, t
    for j in range(span - 1):
        top *= k
        idx = idx * k + src[j]
    for t in range(n_out):
        idx = idx * k + src[t + span - 1]
        dst[t] = table[idx]
        idx -= src[t] * top


def step(table, long k, long span, src, Py_ssize_t n_out):
    cdef carray.array tab = array("l", table)
    cdef carray.array s = array("l", src)
    cdef carray.array out = array("l", bytes(8 * n_out)) if n_out > 0 else array("l")
    if n_out > 0:
        _step(tab, k, span, s, out, n_out)
    return out


def evolve(table, long k, long span, cells, long steps):
    cdef carray.array tab = array("l", table)
    cdef carray.array a = array("l", cells)
    cdef carray.array b = array("l", cells)
    cdef Py_ssize_t n = len(a)
    cdef long s
    for s in range(steps):
        _step(tab, k, span, a, b, n - span + 1)
        n -= span - 1
        a, b = b, a
    return a[:n]


def trajectory(table, long k, long span, long mem, cells, long lo, long q, long p,
               long n_steps, long win_lo, long win_len):
    cdef carray.array tab = array("l", table)
    cdef carray.array a = array("l", cells)
    cdef carray.array b = array("l", cells)
    cdef carray.array out = array("l", bytes(8 * n_steps * win_len)) if n_steps * win_len > 0 else array("l")
    cdef long[:] av
    cdef long[:] ov = out
    cdef Py_ssize_t n = len(a)
    cdef long step_n, r, i, start
    for step_n in range(1, n_steps + 1):
        for r in range(q):
            if n - span + 1 <= 0:
                raise IndexError("window left the simulated range")
            _step(tab, k, span, a, b, n - span + 1)
            n -= span - 1
            lo -= mem
            a, b = b, a
        start = win_lo + p * step_n - lo
        if start < 0 or start + win_len > n:
            raise IndexError("window left the simulated range")
        av = a
        for i in range(win_len):
            ov[(step_n - 1) * win_len + i] = av[start + i]
    return out
