# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Semantics match ``_pykernels`` exactly."""

from libc.stdlib cimport malloc, free


cdef inline int _find(int* parent, int x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def subset_profile(int n, edges_a, edges_b, int u=-1, int v=-1):
    cdef int m = len(edges_a)
    if m > 62:
        raise ValueError("subset enumeration supports at most 62 edges")
    cdef int* parent = <int*> malloc(n * sizeof(int))
    cdef int* ea = <int*> malloc((m + 1) * sizeof(int))
    cdef int* eb = <int*> malloc((m + 1) * sizeof(int))
    cdef long long* conn = <long long*> malloc((m + 1) * sizeof(long long))
    cdef long long* spl = <long long*> malloc((m + 1) * sizeof(long long))
    if not parent or not ea or not eb or not conn or not spl:
        free(parent); free(ea); free(eb); free(conn); free(spl)
        raise MemoryError()
    cdef int i, e, x, y, comps, size
    cdef unsigned long long mask, bits, low, total
    cdef bint want_split = u >= 0
    for i in range(m):
        ea[i] = edges_a[i]
        eb[i] = edges_b[i]
    for i in range(m + 1):
        conn[i] = 0
        spl[i] = 0
    total = (<unsigned long long> 1) << m
    with nogil:
        mask = 0
        while mask < total:
            for i in range(n):
                parent[i] = i
            comps = n
            size = 0
            bits = mask
            while bits:
                low = bits & (~bits + 1)
                e = __builtin_ctzll(bits)
                bits ^= low
                size += 1
                x = _find(parent, ea[e])
                y = _find(parent, eb[e])
                if x != y:
                    parent[x] = y
                    comps -= 1
            if comps == 1:
                conn[size] += 1
            elif comps == 2 and want_split:
                if _find(parent, u) != _find(parent, v):
                    spl[size] += 1
            mask += 1
    connected = [conn[i] for i in range(m + 1)]
    split = [spl[i] for i in range(m + 1)]
    free(parent); free(ea); free(eb); free(conn); free(spl)
    return connected, split


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


def taylor_shift(list coeffs, a):
    cdef Py_ssize_t d = len(coeffs) - 1
    cdef Py_ssize_t i, j
    if a == 0 or d < 1:
        return coeffs
    if a == 1:
        for i in range(d):
            for j in range(d - 1, i - 1, -1):
                coeffs[j] = coeffs[j] + coeffs[j + 1]
    else:
        for i in range(d):
            for j in range(d - 1, i - 1, -1):
                coeffs[j] = coeffs[j] + a * coeffs[j + 1]
    return coeffs


def sign_variations(coeffs):
    cdef int count = 0
    cdef int last = 0
    cdef int s
    for c in coeffs:
        if c:
            s = 1 if c > 0 else -1
            if last and s != last:
                count += 1
            last = s
    return count
