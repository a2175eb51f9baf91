# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled orbit-canonicalization kernel.

Must agree bit-for-bit with the pure implementation in kernels.py: the
canonical form is the smallest (even1, even2, odd1, odd2) bitmask tuple
under integer comparison, minimized over all group elements (and the side
swap when requested).  Root counts are capped at 64 bits here; larger
systems fall back to the Python path in kernels.prepare_perms callers.
"""
from cpython.mem cimport PyMem_Free, PyMem_Malloc

from libc.stdint cimport uint64_t


cdef class PermBits:
    """Flattened per-element bit-target tables (G x N uint64)."""
    cdef uint64_t* data
    cdef Py_ssize_t g
    cdef Py_ssize_t n

    def __cinit__(self, list abs_perms, int nroots):
        if nroots > 64:
            raise ValueError("compiled kernel supports at most 64 roots")
        self.g = len(abs_perms)
        self.n = nroots
        self.data = <uint64_t*> PyMem_Malloc(self.g * self.n * sizeof(uint64_t))
        if not self.data:
            raise MemoryError()
        cdef Py_ssize_t gi, i
        for gi in range(self.g):
            perm = abs_perms[gi]
            for i in range(self.n):
                self.data[gi * self.n + i] = (<uint64_t> 1) << (<int> perm[i])

    def __dealloc__(self):
        if self.data:
            PyMem_Free(self.data)


def prepare_perms(list abs_perms, int nroots):
    return PermBits(abs_perms, nroots)


cdef inline uint64_t _transform(uint64_t mask, uint64_t* bits) nogil:
    cdef uint64_t out = 0
    cdef uint64_t low
    cdef int i
    while mask:
        low = mask & (~mask + 1)
        i = 0
        while not (low & 1):
            low >>= 1
            i += 1
        out |= bits[i]
        mask &= mask - 1
    return out


def canonical_quadruple(e1, e2, o1, o2, PermBits tables, bint swap):
    cdef uint64_t me1 = e1, me2 = e2, mo1 = o1, mo2 = o2
    cdef uint64_t ba = 0, bb = 0, bc = 0, bd = 0
    cdef uint64_t a, b, c, d, t
    cdef bint have = False
    cdef Py_ssize_t gi
    cdef uint64_t* bits
    for gi in range(tables.g):
        bits = tables.data + gi * tables.n
        a = _transform(me1, bits)
        b = _transform(me2, bits)
        c = _transform(mo1, bits)
        d = _transform(mo2, bits)
        if swap:
            if (b < a) or (b == a and (d < c)):
                t = a; a = b; b = t
                t = c; c = d; d = t
        if not have or (a < ba or (a == ba and (b < bb or (b == bb and
                (c < bc or (c == bc and d < bd)))))):
            ba = a; bb = b; bc = c; bd = d
            have = True
    return (int(ba), int(bb), int(bc), int(bd))
