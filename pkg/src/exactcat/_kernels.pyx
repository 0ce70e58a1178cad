# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled elimination kernels.

Same contract and pivot rules as ``exactcat._kernels_py``; the integer kernel
keeps arbitrary-precision Python integers, the F_p kernel works on C 64-bit
words (p < 2**31, so every product fits).
"""

from libc.stdlib cimport malloc, free


cdef list _identity(Py_ssize_t n):
    cdef Py_ssize_t i
    cdef list out = []
    cdef list row
    for i in range(n):
        row = [0] * n
        row[i] = 1
        out.append(row)
    return out


def smith_int(a, Py_ssize_t m, Py_ssize_t n):
    cdef list A = [list(r) for r in a]
    cdef list P = _identity(m)
    cdef list Pi = _identity(m)
    cdef list Q = _identity(n)
    cdef list Qi = _identity(n)
    cdef list diag = []
    cdef Py_ssize_t t = 0, i, j, k, bi, bj, bad
    cdef object v, bv, av, piv, c, q
    cdef list row, ra, rs, r
    cdef bint clean

    while t < m and t < n:
        bi = -1
        bj = -1
        bv = 0
        for i in range(t, m):
            row = <list>A[i]
            for j in range(t, n):
                v = row[j]
                if v:
                    av = v if v > 0 else -v
                    if bi < 0 or av < bv:
                        bi = i
                        bj = j
                        bv = av
                        if av == 1:
                            break
            if bv == 1:
                break
        if bi < 0:
            break
        _row_swap(A, P, Pi, t, bi)
        _col_swap(A, Q, Qi, t, bj)
        while True:
            clean = True
            piv = (<list>A[t])[t]
            for i in range(t + 1, m):
                v = (<list>A[i])[t]
                if v:
                    _row_add(A, P, Pi, i, t, -(v // piv), n, m)
                    if (<list>A[i])[t]:
                        clean = False
            for j in range(t + 1, n):
                v = (<list>A[t])[j]
                if v:
                    _col_add(A, Q, Qi, j, t, -(v // piv), n)
                    if (<list>A[t])[j]:
                        clean = False
            if not clean:
                bi = t
                bj = t
                bv = abs((<list>A[t])[t])
                for i in range(t + 1, m):
                    v = (<list>A[i])[t]
                    if v and (bv == 0 or abs(v) < bv):
                        bi = i
                        bj = t
                        bv = abs(v)
                for j in range(t + 1, n):
                    v = (<list>A[t])[j]
                    if v and (bv == 0 or abs(v) < bv):
                        bi = t
                        bj = j
                        bv = abs(v)
                _row_swap(A, P, Pi, t, bi)
                _col_swap(A, Q, Qi, t, bj)
                continue
            piv = (<list>A[t])[t]
            bad = -1
            for i in range(t + 1, m):
                row = <list>A[i]
                for j in range(t + 1, n):
                    if row[j] % piv:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad >= 0:
                _row_add(A, P, Pi, t, bad, 1, n, m)
                continue
            break
        if (<list>A[t])[t] < 0:
            A[t] = [-v for v in <list>A[t]]
            P[t] = [-v for v in <list>P[t]]
            for r in Pi:
                r[t] = -r[t]
        diag.append((<list>A[t])[t])
        t += 1
    while len(diag) < min(m, n):
        diag.append(0)
    return diag, P, Pi, Q, Qi


cdef void _row_add(list A, list P, list Pi, Py_ssize_t dst, Py_ssize_t src,
                   object c, Py_ssize_t n, Py_ssize_t m):
    cdef list ra = <list>A[dst]
    cdef list rs = <list>A[src]
    cdef list r
    cdef Py_ssize_t j
    for j in range(n):
        if rs[j]:
            ra[j] = ra[j] + c * rs[j]
    ra = <list>P[dst]
    rs = <list>P[src]
    for j in range(m):
        if rs[j]:
            ra[j] = ra[j] + c * rs[j]
    for r in Pi:
        if r[dst]:
            r[src] = r[src] - c * r[dst]


cdef void _col_add(list A, list Q, list Qi, Py_ssize_t dst, Py_ssize_t src,
                   object c, Py_ssize_t n):
    cdef list r, qs, qd
    cdef Py_ssize_t j
    for r in A:
        if r[src]:
            r[dst] = r[dst] + c * r[src]
    for r in Q:
        if r[src]:
            r[dst] = r[dst] + c * r[src]
    qs = <list>Qi[src]
    qd = <list>Qi[dst]
    for j in range(n):
        if qd[j]:
            qs[j] = qs[j] - c * qd[j]


cdef void _row_swap(list A, list P, list Pi, Py_ssize_t i, Py_ssize_t k):
    cdef list r
    if i == k:
        return
    A[i], A[k] = A[k], A[i]
    P[i], P[k] = P[k], P[i]
    for r in Pi:
        r[i], r[k] = r[k], r[i]


cdef void _col_swap(list A, list Q, list Qi, Py_ssize_t j, Py_ssize_t k):
    cdef list r
    if j == k:
        return
    for r in A:
        r[j], r[k] = r[k], r[j]
    for r in Q:
        r[j], r[k] = r[k], r[j]
    Qi[j], Qi[k] = Qi[k], Qi[j]


cdef long long _inv_mod(long long a, long long p):
    cdef long long t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef list _to_list(long long *buf, Py_ssize_t rows, Py_ssize_t cols):
    cdef list out = []
    cdef Py_ssize_t i, j
    for i in range(rows):
        out.append([buf[i * cols + j] for j in range(cols)])
    return out


def smith_mod_p(a, Py_ssize_t m, Py_ssize_t n, long long p):
    cdef long long *A = <long long *>malloc(max(m * n, 1) * sizeof(long long))
    cdef long long *P = <long long *>malloc(max(m * m, 1) * sizeof(long long))
    cdef long long *Pi = <long long *>malloc(max(m * m, 1) * sizeof(long long))
    cdef long long *Q = <long long *>malloc(max(n * n, 1) * sizeof(long long))
    cdef long long *Qi = <long long *>malloc(max(n * n, 1) * sizeof(long long))
    cdef Py_ssize_t i, j, k, t, bi, bj
    cdef long long v, piv, inv, c, tmp
    cdef list diag = []
    if not A or not P or not Pi or not Q or not Qi:
        free(A); free(P); free(Pi); free(Q); free(Qi)
        raise MemoryError()
    try:
        for i in range(m):
            row = a[i]
            for j in range(n):
                v = row[j] % p
                A[i * n + j] = v
        for i in range(m):
            for j in range(m):
                P[i * m + j] = 1 if i == j else 0
                Pi[i * m + j] = 1 if i == j else 0
        for i in range(n):
            for j in range(n):
                Q[i * n + j] = 1 if i == j else 0
                Qi[i * n + j] = 1 if i == j else 0
        t = 0
        while t < m and t < n:
            bi = -1
            bj = -1
            for i in range(t, m):
                for j in range(t, n):
                    if A[i * n + j]:
                        bi = i
                        bj = j
                        break
                if bi >= 0:
                    break
            if bi < 0:
                break
            if bi != t:
                for j in range(n):
                    tmp = A[t * n + j]; A[t * n + j] = A[bi * n + j]; A[bi * n + j] = tmp
                for j in range(m):
                    tmp = P[t * m + j]; P[t * m + j] = P[bi * m + j]; P[bi * m + j] = tmp
                for k in range(m):
                    tmp = Pi[k * m + t]; Pi[k * m + t] = Pi[k * m + bi]; Pi[k * m + bi] = tmp
            if bj != t:
                for k in range(m):
                    tmp = A[k * n + t]; A[k * n + t] = A[k * n + bj]; A[k * n + bj] = tmp
                for k in range(n):
                    tmp = Q[k * n + t]; Q[k * n + t] = Q[k * n + bj]; Q[k * n + bj] = tmp
                for j in range(n):
                    tmp = Qi[t * n + j]; Qi[t * n + j] = Qi[bj * n + j]; Qi[bj * n + j] = tmp
            piv = A[t * n + t]
            if piv != 1:
                inv = _inv_mod(piv, p)
                for j in range(n):
                    A[t * n + j] = A[t * n + j] * inv % p
                for j in range(m):
                    P[t * m + j] = P[t * m + j] * inv % p
                for k in range(m):
                    Pi[k * m + t] = Pi[k * m + t] * piv % p
            for i in range(t + 1, m):
                c = A[i * n + t]
                if c:
                    for j in range(t, n):
                        if A[t * n + j]:
                            A[i * n + j] = (A[i * n + j] - c * A[t * n + j]) % p
                            if A[i * n + j] < 0:
                                A[i * n + j] += p
                    for j in range(m):
                        if P[t * m + j]:
                            P[i * m + j] = (P[i * m + j] - c * P[t * m + j]) % p
                            if P[i * m + j] < 0:
                                P[i * m + j] += p
                    for k in range(m):
                        if Pi[k * m + i]:
                            Pi[k * m + t] = (Pi[k * m + t] + c * Pi[k * m + i]) % p
            for j in range(t + 1, n):
                c = A[t * n + j]
                if c:
                    A[t * n + j] = 0
                    for k in range(n):
                        if Q[k * n + t]:
                            Q[k * n + j] = (Q[k * n + j] - c * Q[k * n + t]) % p
                            if Q[k * n + j] < 0:
                                Q[k * n + j] += p
                    for k in range(n):
                        if Qi[j * n + k]:
                            Qi[t * n + k] = (Qi[t * n + k] + c * Qi[j * n + k]) % p
            diag.append(1)
            t += 1
        while len(diag) < min(m, n):
            diag.append(0)
        return (diag, _to_list(P, m, m), _to_list(Pi, m, m),
                _to_list(Q, n, n), _to_list(Qi, n, n))
    finally:
        free(A); free(P); free(Pi); free(Q); free(Qi)
