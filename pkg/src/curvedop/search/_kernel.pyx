# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled candidate scanner; same buffer layout and semantics as ``_kernel_py.scan``."""
from libc.stdlib cimport malloc, free

cdef enum:
    MAXD = 16
    ASSOC = 0
    PRELIE = 1
    CURVED = 2
    DCRBS = 3
    GRB = 4


cdef inline long long md(long long a, long long p) nogil:
    a %= p
    return a + p if a < 0 else a


cdef bint assoc_vec(long long* b, long long o, int n, int x, int y, int z, long long* out) nogil:
    cdef int m, k
    cdef long long c
    for k in range(n):
        out[k] = 0
    for m in range(n):
        c = b[o + (x * n + y) * n + m]
        if c:
            for k in range(n):
                out[k] += c * b[o + (m * n + z) * n + k]
        c = b[o + (y * n + z) * n + m]
        if c:
            for k in range(n):
                out[k] -= c * b[o + (x * n + m) * n + k]
    return True


cdef bint assoc_ok(long long* b, long long o, int n, long long p, bint prelie) nogil:
    cdef long long a1[MAXD]
    cdef long long a2[MAXD]
    cdef int x, y, z, k
    for x in range(n):
        for y in range(n):
            for z in range(n):
                assoc_vec(b, o, n, x, y, z, a1)
                if prelie:
                    assoc_vec(b, o, n, y, x, z, a2)
                    for k in range(n):
                        if md(a1[k] - a2[k], p):
                            return False
                else:
                    for k in range(n):
                        if md(a1[k], p):
                            return False
    return True


cdef bint curved_ok(long long* b, long long* offs, int dA, int dV, long long p) nogil:
    cdef long long oM = offs[0], oL = offs[1], oRt = offs[2], oR = offs[3], oS = offs[4], oW = offs[5]
    cdef long long t[MAXD]
    cdef long long oo, acc, r, s, u, v
    cdef int x, y, z, a, c, k, w
    for x in range(dV):
        for y in range(dV):
            for z in range(dV):
                t[z] = b[oW + (x * dV + y) * dV + z]
            for a in range(dA):
                r = b[oR + a * dV + x]
                if r:
                    for z in range(dV):
                        t[z] += r * b[oL + (a * dV + y) * dV + z]
                s = b[oS + a * dV + y]
                if s:
                    for z in range(dV):
                        t[z] += s * b[oRt + (x * dA + a) * dV + z]
            for w in range(2):
                oo = oR if w == 0 else oS
                for k in range(dA):
                    acc = 0
                    for a in range(dA):
                        u = b[oo + a * dV + x]
                        if u:
                            for c in range(dA):
                                v = b[oo + c * dV + y]
                                if v:
                                    acc += u * v * b[oM + (a * dA + c) * dA + k]
                    for z in range(dV):
                        acc -= b[oo + k * dV + z] * t[z]
                    if md(acc, p):
                        return False
    return True


cdef bint dcrbs_ok(long long* b, long long* offs, int n, long long p) nogil:
    cdef long long oM = offs[0], oR = offs[1], oS = offs[2], oW1 = offs[3], oW2 = offs[4]
    cdef long long t[MAXD]
    cdef long long oo, ow, acc, r, s, u, v
    cdef int x, y, z, a, c, k, w
    for x in range(n):
        for y in range(n):
            for z in range(n):
                t[z] = 0
            for c in range(n):
                r = b[oR + c * n + x]
                if r:
                    for z in range(n):
                        t[z] += r * b[oM + (c * n + y) * n + z]
                s = b[oS + c * n + y]
                if s:
                    for z in range(n):
                        t[z] += s * b[oM + (x * n + c) * n + z]
            for w in range(2):
                oo = oR if w == 0 else oS
                ow = oW1 if w == 0 else oW2
                for k in range(n):
                    acc = -b[ow + (x * n + y) * n + k]
                    for a in range(n):
                        u = b[oo + a * n + x]
                        if u:
                            for c in range(n):
                                v = b[oo + c * n + y]
                                if v:
                                    acc += u * v * b[oM + (a * n + c) * n + k]
                    for z in range(n):
                        acc -= b[oo + k * n + z] * t[z]
                    if md(acc, p):
                        return False
    return True


cdef bint grb_ok(long long* b, long long* offs, int n, long long p) nogil:
    cdef long long oM = offs[0], oN = offs[1], oR = offs[2]
    cdef long long t[MAXD]
    cdef long long acc, r, s, u, v
    cdef int x, y, z, a, c, k
    for x in range(n):
        for y in range(n):
            for z in range(n):
                t[z] = b[oN + (x * n + y) * n + z]
            for c in range(n):
                r = b[oR + c * n + x]
                if r:
                    for z in range(n):
                        t[z] += r * b[oM + (c * n + y) * n + z]
                s = b[oR + c * n + y]
                if s:
                    for z in range(n):
                        t[z] += s * b[oM + (x * n + c) * n + z]
            for k in range(n):
                acc = 0
                for a in range(n):
                    u = b[oR + a * n + x]
                    if u:
                        for c in range(n):
                            v = b[oR + c * n + y]
                            if v:
                                acc += u * v * b[oM + (a * n + c) * n + k]
                for z in range(n):
                    acc -= b[oR + k * n + z] * t[z]
                if md(acc, p):
                    return False
    return True


cdef bint holds_c(int kind, long long* b, long long* offs, long long* dims, long long p) nogil:
    if kind == ASSOC:
        return assoc_ok(b, offs[0], <int>dims[0], p, False)
    if kind == PRELIE:
        return assoc_ok(b, offs[0], <int>dims[0], p, True)
    if kind == CURVED:
        return curved_ok(b, offs, <int>dims[0], <int>dims[1], p)
    if kind == DCRBS:
        return dcrbs_ok(b, offs, <int>dims[0], p)
    return grb_ok(b, offs, <int>dims[0], p)


def scan(int kind, buf, offs, dims, slots, long long p, long long start, long long stop, long long limit):
    """Count candidates in ``[start, stop)`` that satisfy the system; keep the first ``limit`` indices."""
    if kind < 0 or kind > 4:
        raise ValueError(f"unknown kernel kind {kind}")
    for d in dims:
        if d > MAXD:
            raise ValueError(f"dimension {d} exceeds the compiled limit {MAXD}")
    cdef Py_ssize_t nb = len(buf), no = len(offs), nd = len(dims), ns = len(slots)
    cdef long long* b = <long long*>malloc((nb + 1) * sizeof(long long))
    cdef long long* o = <long long*>malloc((no + 1) * sizeof(long long))
    cdef long long* dm = <long long*>malloc((nd + 1) * sizeof(long long))
    cdef long long* sl = <long long*>malloc((ns + 1) * sizeof(long long))
    cdef long long* dg = <long long*>malloc((ns + 1) * sizeof(long long))
    cdef Py_ssize_t i
    cdef long long idx, c, count = 0
    found = []
    try:
        for i in range(nb):
            b[i] = buf[i]
        for i in range(no):
            o[i] = offs[i]
        for i in range(nd):
            dm[i] = dims[i]
        for i in range(ns):
            sl[i] = slots[i]
        c = start
        for i in range(ns - 1, -1, -1):
            dg[i] = c % p
            c //= p
        for i in range(ns):
            b[sl[i]] = dg[i]
        idx = start
        while idx < stop:
            if holds_c(kind, b, o, dm, p):
                count += 1
                if limit < 0 or len(found) < limit:
                    found.append(idx)
            i = ns - 1
            while i >= 0:
                dg[i] += 1
                if dg[i] < p:
                    b[sl[i]] = dg[i]
                    break
                dg[i] = 0
                b[sl[i]] = 0
                i -= 1
            idx += 1
    finally:
        free(b)
        free(o)
        free(dm)
        free(sl)
        free(dg)
    return count, found
