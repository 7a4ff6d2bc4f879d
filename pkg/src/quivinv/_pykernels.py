"""Pure-Python modular kernels.

Reference implementation of the hot loops. ``_ckernels`` (Cython) exposes
the same four functions with identical semantics; :mod:`quivinv.kernels`
picks one at import time.

All matrices are sequences of rows of Python ints already reduced into
``[0, p)``. Inputs are never mutated.
"""

from __future__ import annotations


def det_mod(rows, p):
    n = len(rows)
    if n == 0:
        return 1 % p
    a = [list(r) for r in rows]
    det = 1
    for c in range(n):
        piv = -1
        for r in range(c, n):
            if a[r][c]:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = p - det if det else 0
        pc = a[c]
        pv = pc[c]
        det = det * pv % p
        inv = pow(pv, p - 2, p)
        for r in range(c + 1, n):
            row = a[r]
            f = row[c]
            if f:
                f = f * inv % p
                for j in range(c + 1, n):
                    row[j] = (row[j] - f * pc[j]) % p
    return det


def det_dual_mod(re_rows, eps_rows, p):
    """Determinant of ``A + eps*B`` with ``eps**2 == 0``; returns ``(re, eps)``.

    Pivots must have a unit real part. When a column has none left, the
    remaining block is divisible by eps through that column, so the result
    is ``eps * acc * det(remaining real block with that column swapped for
    its eps part)``.
    """
    n = len(re_rows)
    if n == 0:
        return (1 % p, 0)
    a = [list(r) for r in re_rows]
    b = [list(r) for r in eps_rows]
    acc_a, acc_b = 1, 0
    for c in range(n):
        piv = -1
        for r in range(c, n):
            if a[r][c]:
                piv = r
                break
        if piv < 0:
            sub = [
                [b[r][j] if j == c else a[r][j] for j in range(c, n)]
                for r in range(c, n)
            ]
            return (0, acc_a * det_mod(sub, p) % p)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            b[c], b[piv] = b[piv], b[c]
            acc_a = (p - acc_a) % p
            acc_b = (p - acc_b) % p
        pa, pb = a[c][c], b[c][c]
        acc_a, acc_b = acc_a * pa % p, (acc_a * pb + acc_b * pa) % p
        # (pa + eps*pb)^-1 = ia - eps*pb*ia^2
        ia = pow(pa, p - 2, p)
        ib = (p - pb * ia % p * ia % p) % p
        ra, rb = a[c], b[c]
        for r in range(c + 1, n):
            xa, xb = a[r][c], b[r][c]
            if not xa and not xb:
                continue
            fa = xa * ia % p
            fb = (xa * ib + xb * ia) % p
            row_a, row_b = a[r], b[r]
            for j in range(c + 1, n):
                row_b[j] = (row_b[j] - fa * rb[j] - fb * ra[j]) % p
                row_a[j] = (row_a[j] - fa * ra[j]) % p
            row_a[c] = 0
            row_b[c] = 0
    return (acc_a, acc_b)


def rank_mod(rows, p):
    a = [list(r) for r in rows]
    m = len(a)
    if m == 0:
        return 0
    ncols = len(a[0])
    rank = 0
    for c in range(ncols):
        if rank == m:
            break
        piv = -1
        for r in range(rank, m):
            if a[r][c]:
                piv = r
                break
        if piv < 0:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pr = a[rank]
        inv = pow(pr[c], p - 2, p)
        for r in range(rank + 1, m):
            row = a[r]
            f = row[c]
            if f:
                f = f * inv % p
                for j in range(c, ncols):
                    row[j] = (row[j] - f * pr[j]) % p
        rank += 1
    return rank


def matmul_mod(a, b, p):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a]
