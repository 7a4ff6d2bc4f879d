# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular kernels; same contract as ``quivinv._pykernels``.

Only valid for ``p < 2**32`` so that a product of two residues fits in an
unsigned 64-bit word. ``quivinv.kernels`` routes larger moduli to Python.
"""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64


cdef inline u64 _mulm(u64 a, u64 b, u64 p) nogil:
    return (a * b) % p


cdef inline u64 _subm(u64 a, u64 b, u64 p) nogil:
    return a - b if a >= b else a + p - b


cdef u64 _inv(u64 a, u64 p) nogil:
    cdef long long t = 0, newt = 1, q, tmp
    cdef long long r = <long long>p, newr = <long long>a
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += <long long>p
    return <u64>t


cdef u64* _load(rows, Py_ssize_t m, Py_ssize_t ncols) except NULL:
    cdef u64* buf = <u64*>malloc(max(m * ncols, 1) * sizeof(u64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    for i in range(m):
        row = rows[i]
        for j in range(ncols):
            buf[i * ncols + j] = <u64>row[j]
    return buf


cdef u64 _det(u64* a, Py_ssize_t n, u64 p) nogil:
    cdef Py_ssize_t c, r, j, piv
    cdef u64 det = 1 % p, inv, f, tmp
    for c in range(n):
        piv = -1
        for r in range(c, n):
            if a[r * n + c] != 0:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != c:
            for j in range(n):
                tmp = a[c * n + j]
                a[c * n + j] = a[piv * n + j]
                a[piv * n + j] = tmp
            det = (p - det) % p
        det = _mulm(det, a[c * n + c], p)
        inv = _inv(a[c * n + c], p)
        for r in range(c + 1, n):
            f = a[r * n + c]
            if f != 0:
                f = _mulm(f, inv, p)
                for j in range(c + 1, n):
                    a[r * n + j] = _subm(a[r * n + j], _mulm(f, a[c * n + j], p), p)
    return det


def det_mod(rows, p):
    cdef Py_ssize_t n = len(rows)
    if n == 0:
        return 1 % p
    cdef u64* a = _load(rows, n, n)
    cdef u64 res
    try:
        res = _det(a, n, <u64>p)
    finally:
        free(a)
    return res


def det_dual_mod(re_rows, eps_rows, p):
    cdef Py_ssize_t n = len(re_rows)
    if n == 0:
        return (1 % p, 0)
    cdef u64 pp = <u64>p
    cdef u64* a = _load(re_rows, n, n)
    cdef u64* b = NULL
    cdef u64* sub = NULL
    cdef Py_ssize_t c, r, j, piv, m
    cdef u64 acc_a = 1, acc_b = 0, pa, pb, ia, ib, xa, xb, fa, fb, tmp, d
    try:
        b = _load(eps_rows, n, n)
        for c in range(n):
            piv = -1
            for r in range(c, n):
                if a[r * n + c] != 0:
                    piv = r
                    break
            if piv < 0:
                m = n - c
                sub = <u64*>malloc(m * m * sizeof(u64))
                if sub == NULL:
                    raise MemoryError()
                for r in range(m):
                    for j in range(m):
                        if j == 0:
                            sub[r * m + j] = b[(r + c) * n + c]
                        else:
                            sub[r * m + j] = a[(r + c) * n + (j + c)]
                d = _det(sub, m, pp)
                return (0, _mulm(acc_a, d, pp))
            if piv != c:
                for j in range(n):
                    tmp = a[c * n + j]
                    a[c * n + j] = a[piv * n + j]
                    a[piv * n + j] = tmp
                    tmp = b[c * n + j]
                    b[c * n + j] = b[piv * n + j]
                    b[piv * n + j] = tmp
                acc_a = (pp - acc_a) % pp
                acc_b = (pp - acc_b) % pp
            pa = a[c * n + c]
            pb = b[c * n + c]
            tmp = (_mulm(acc_a, pb, pp) + _mulm(acc_b, pa, pp)) % pp
            acc_a = _mulm(acc_a, pa, pp)
            acc_b = tmp
            ia = _inv(pa, pp)
            ib = (pp - _mulm(_mulm(pb, ia, pp), ia, pp)) % pp
            for r in range(c + 1, n):
                xa = a[r * n + c]
                xb = b[r * n + c]
                if xa == 0 and xb == 0:
                    continue
                fa = _mulm(xa, ia, pp)
                fb = (_mulm(xa, ib, pp) + _mulm(xb, ia, pp)) % pp
                for j in range(c + 1, n):
                    b[r * n + j] = _subm(
                        _subm(b[r * n + j], _mulm(fa, b[c * n + j], pp), pp),
                        _mulm(fb, a[c * n + j], pp), pp)
                    a[r * n + j] = _subm(a[r * n + j], _mulm(fa, a[c * n + j], pp), pp)
                a[r * n + c] = 0
                b[r * n + c] = 0
        return (acc_a, acc_b)
    finally:
        free(a)
        if b != NULL:
            free(b)
        if sub != NULL:
            free(sub)


def rank_mod(rows, p):
    cdef Py_ssize_t m = len(rows)
    if m == 0:
        return 0
    cdef Py_ssize_t ncols = len(rows[0])
    cdef u64 pp = <u64>p
    cdef u64* a = _load(rows, m, ncols)
    cdef Py_ssize_t rank = 0, c, r, j, piv
    cdef u64 inv, f, tmp
    try:
        for c in range(ncols):
            if rank == m:
                break
            piv = -1
            for r in range(rank, m):
                if a[r * ncols + c] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(ncols):
                    tmp = a[rank * ncols + j]
                    a[rank * ncols + j] = a[piv * ncols + j]
                    a[piv * ncols + j] = tmp
            inv = _inv(a[rank * ncols + c], pp)
            for r in range(rank + 1, m):
                f = a[r * ncols + c]
                if f != 0:
                    f = _mulm(f, inv, pp)
                    for j in range(c, ncols):
                        a[r * ncols + j] = _subm(
                            a[r * ncols + j], _mulm(f, a[rank * ncols + j], pp), pp)
            rank += 1
    finally:
        free(a)
    return rank


def matmul_mod(a, b, p):
    cdef Py_ssize_t n = len(a), k = len(b), m = len(b[0]) if len(b) else 0
    cdef u64 pp = <u64>p
    cdef u64* x = _load(a, n, k)
    cdef u64* y = NULL
    cdef Py_ssize_t i, j, t
    cdef u64 s
    try:
        y = _load(b, k, m)
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                s = 0
                for t in range(k):
                    s = (s + _mulm(x[i * k + t], y[t * m + j], pp)) % pp
                row.append(s)
            out.append(row)
        return out
    finally:
        free(x)
        if y != NULL:
            free(y)
