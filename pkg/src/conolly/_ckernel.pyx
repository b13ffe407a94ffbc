# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contract as ``_pykernel``."""
from libc.stdlib cimport malloc, free

cdef extern from *:
    bint add_overflow "__builtin_saddll_overflow" (long long a, long long b, long long *res) nogil
    bint sub_overflow "__builtin_ssubll_overflow" (long long a, long long b, long long *res) nogil


cdef struct Layout:
    int k
    long long *shifts
    int *starts        # offsets of term i live in flat[starts[i]:starts[i+1]]
    long long *flat


cdef int _layout(Layout *lay, shifts, offsets) except -1:
    cdef int k = len(shifts)
    cdef int total = 0
    cdef int i, j, pos
    for row in offsets:
        total += len(row)
    lay.k = k
    lay.shifts = <long long *> malloc(k * sizeof(long long))
    lay.starts = <int *> malloc((k + 1) * sizeof(int))
    lay.flat = <long long *> malloc((total if total > 0 else 1) * sizeof(long long))
    if lay.shifts == NULL or lay.starts == NULL or lay.flat == NULL:
        _release(lay)
        raise MemoryError()
    pos = 0
    for i in range(k):
        lay.shifts[i] = shifts[i]
        lay.starts[i] = pos
        for a in offsets[i]:
            lay.flat[pos] = a
            pos += 1
    lay.starts[k] = pos
    return 0


cdef void _release(Layout *lay):
    free(lay.shifts)
    free(lay.starts)
    free(lay.flat)
    lay.shifts = NULL
    lay.starts = NULL
    lay.flat = NULL


def evaluate(shifts, offsets, initial, long long horizon):
    cdef Layout lay
    cdef long long c = min(len(initial), horizon)
    cdef long long n, arg, inner, total
    cdef int i, j, dterm = 0
    cdef int status = 0  # 0 alive, 1 death, 2 overflow
    cdef long long *vals
    _layout(&lay, shifts, offsets)
    vals = <long long *> malloc((horizon + 1) * sizeof(long long))
    if vals == NULL:
        _release(&lay)
        raise MemoryError()
    try:
        for n in range(c):
            vals[n + 1] = initial[n]
        n = c + 1
        with nogil:
            while n <= horizon:
                total = 0
                for i in range(lay.k):
                    dterm = i
                    arg = n - lay.shifts[i]
                    for j in range(lay.starts[i], lay.starts[i + 1]):
                        inner = n - lay.flat[j]
                        if inner < 1 or inner >= n:
                            arg = inner
                            status = 1
                            break
                        if sub_overflow(arg, vals[inner], &arg):
                            status = 2
                            break
                    if status:
                        break
                    if arg < 1 or arg >= n:
                        status = 1
                        break
                    if add_overflow(total, vals[arg], &total):
                        status = 2
                        break
                if status:
                    break
                vals[n] = total
                n += 1
        if status == 2:
            raise OverflowError(f"value at n={n} leaves the signed 64-bit range")
        death = (n, dterm, arg) if status == 1 else None
        return [vals[j] for j in range(1, n)], death
    finally:
        free(vals)
        _release(&lay)


cdef class PreparedTarget:
    """A target sequence copied once into a C buffer (1-based)."""
    cdef long long *data
    cdef readonly long long length

    def __cinit__(self, target):
        cdef long long n
        self.length = len(target)
        self.data = <long long *> malloc((self.length + 1) * sizeof(long long))
        if self.data == NULL:
            raise MemoryError()
        self.data[0] = 0
        for n in range(self.length):
            self.data[n + 1] = target[n]

    def __dealloc__(self):
        free(self.data)

    def __len__(self):
        return self.length


def prepare_target(target):
    return target if isinstance(target, PreparedTarget) else PreparedTarget(target)


def match_prefix(shifts, offsets, target, long long seed_len, long long compare_len):
    cdef Layout lay
    cdef long long n, arg, inner, total
    cdef int i, j
    cdef long long *vals
    cdef long long *tgt
    cdef long long matched = compare_len
    cdef bint ok
    cdef PreparedTarget prepared = prepare_target(target)
    if prepared.length < compare_len:
        raise ValueError("target shorter than compare_len")
    tgt = prepared.data
    _layout(&lay, shifts, offsets)
    vals = <long long *> malloc((compare_len + 1) * sizeof(long long))
    if vals == NULL:
        _release(&lay)
        raise MemoryError()
    try:
        for n in range(1, min(seed_len, compare_len) + 1):
            vals[n] = tgt[n]
        with nogil:
            n = seed_len + 1
            while n <= compare_len:
                total = 0
                ok = True
                for i in range(lay.k):
                    arg = n - lay.shifts[i]
                    for j in range(lay.starts[i], lay.starts[i + 1]):
                        inner = n - lay.flat[j]
                        if inner < 1 or inner >= n:
                            ok = False
                            break
                        arg -= vals[inner]
                    if not ok or arg < 1 or arg >= n:
                        ok = False
                        break
                    total += vals[arg]
                if not ok or total != tgt[n]:
                    matched = n - 1
                    break
                vals[n] = total
                n += 1
        return matched
    finally:
        free(vals)
        _release(&lay)


cdef inline long long _floor_div(long long x, long long q) nogil:
    cdef long long r = x / q
    if (x % q != 0) and (x < 0):
        r -= 1
    return r


cdef inline long long _ceil_div(long long x, long long q) nogil:
    return -_floor_div(-x, q)


def formal_satisfy(shifts, offsets, long long q, long long lo, long long hi):
    cdef Layout lay
    cdef long long n, arg, total
    cdef int i, j
    cdef long long bad = 0
    cdef bint found = False
    _layout(&lay, shifts, offsets)
    try:
        with nogil:
            for n in range(lo, hi + 1):
                total = 0
                for i in range(lay.k):
                    arg = n - lay.shifts[i]
                    for j in range(lay.starts[i], lay.starts[i + 1]):
                        arg -= _ceil_div(n - lay.flat[j], q)
                    total += _ceil_div(arg, q)
                if total != _ceil_div(n, q):
                    bad = n
                    found = True
                    break
        return bad if found else None
    finally:
        _release(&lay)
