"""Pure-Python elimination kernels.

Reference twin of the compiled ``_kernels`` extension. Both modules expose
the same three functions with the same deterministic pivot rules, so the
results are identical bit for bit whichever one is loaded.

Every function takes a dense matrix as a list of row lists and returns
``(diag, P, Pinv, Q, Qinv)`` with ``P * A * Q == D`` where ``D`` carries
``diag`` on its main diagonal and zeros elsewhere.
"""


def _identity(n, one=1, zero=0):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def smith_int(a, m, n):
    """Smith normal form over the integers.

    Pivots are chosen by minimal absolute value (first in row-major order on
    ties) and the returned diagonal is nonnegative with each entry dividing
    the next.
    """
    A = [list(r) for r in a]
    P = _identity(m)
    Pi = _identity(m)
    Q = _identity(n)
    Qi = _identity(n)
    diag = []

    def row_add(dst, src, c):
        # row dst += c * row src
        ra, rs = A[dst], A[src]
        for j in range(n):
            if rs[j]:
                ra[j] += c * rs[j]
        pd, ps = P[dst], P[src]
        for j in range(m):
            if ps[j]:
                pd[j] += c * ps[j]
        for r in Pi:
            if r[dst]:
                r[src] -= c * r[dst]

    def col_add(dst, src, c):
        # col dst += c * col src
        for r in A:
            if r[src]:
                r[dst] += c * r[src]
        for r in Q:
            if r[src]:
                r[dst] += c * r[src]
        qs, qd = Qi[src], Qi[dst]
        for j in range(n):
            if qd[j]:
                qs[j] -= c * qd[j]

    def row_swap(i, k):
        if i == k:
            return
        A[i], A[k] = A[k], A[i]
        P[i], P[k] = P[k], P[i]
        for r in Pi:
            r[i], r[k] = r[k], r[i]

    def col_swap(j, k):
        if j == k:
            return
        for r in A:
            r[j], r[k] = r[k], r[j]
        for r in Q:
            r[j], r[k] = r[k], r[j]
        Qi[j], Qi[k] = Qi[k], Qi[j]

    t = 0
    while t < m and t < n:
        bi = bj = -1
        bv = 0
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v:
                    av = v if v > 0 else -v
                    if bi < 0 or av < bv:
                        bi, bj, bv = i, j, av
                        if av == 1:
                            break
            if bv == 1:
                break
        if bi < 0:
            break
        row_swap(t, bi)
        col_swap(t, bj)
        while True:
            clean = True
            piv = A[t][t]
            for i in range(t + 1, m):
                v = A[i][t]
                if v:
                    row_add(i, t, -(v // piv))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                v = A[t][j]
                if v:
                    col_add(j, t, -(v // piv))
                    if A[t][j]:
                        clean = False
            if not clean:
                bi, bj = t, t
                bv = abs(A[t][t])
                for i in range(t + 1, m):
                    v = A[i][t]
                    if v and (bv == 0 or abs(v) < bv):
                        bi, bj, bv = i, t, abs(v)
                for j in range(t + 1, n):
                    v = A[t][j]
                    if v and (bv == 0 or abs(v) < bv):
                        bi, bj, bv = t, j, abs(v)
                row_swap(t, bi)
                col_swap(t, bj)
                continue
            piv = A[t][t]
            bad = -1
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % piv:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad >= 0:
                row_add(t, bad, 1)
                continue
            break
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            P[t] = [-v for v in P[t]]
            for r in Pi:
                r[t] = -r[t]
        diag.append(A[t][t])
        t += 1
    while len(diag) < min(m, n):
        diag.append(0)
    return diag, P, Pi, Q, Qi


def smith_mod_p(a, m, n, p):
    """Rank normal form over the prime field F_p (entries in ``[0, p)``)."""
    A = [[v % p for v in r] for r in a]
    P = _identity(m)
    Pi = _identity(m)
    Q = _identity(n)
    Qi = _identity(n)
    diag = []
    t = 0
    while t < m and t < n:
        bi = bj = -1
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                if row[j]:
                    bi, bj = i, j
                    break
            if bi >= 0:
                break
        if bi < 0:
            break
        if bi != t:
            A[t], A[bi] = A[bi], A[t]
            P[t], P[bi] = P[bi], P[t]
            for r in Pi:
                r[t], r[bi] = r[bi], r[t]
        if bj != t:
            for r in A:
                r[t], r[bj] = r[bj], r[t]
            for r in Q:
                r[t], r[bj] = r[bj], r[t]
            Qi[t], Qi[bj] = Qi[bj], Qi[t]
        piv = A[t][t]
        if piv != 1:
            inv = pow(piv, p - 2, p)
            A[t] = [v * inv % p for v in A[t]]
            P[t] = [v * inv % p for v in P[t]]
            for r in Pi:
                r[t] = r[t] * piv % p
        rt, pt = A[t], P[t]
        for i in range(t + 1, m):
            c = A[i][t]
            if c:
                ri = A[i]
                for j in range(t, n):
                    if rt[j]:
                        ri[j] = (ri[j] - c * rt[j]) % p
                pi = P[i]
                for j in range(m):
                    if pt[j]:
                        pi[j] = (pi[j] - c * pt[j]) % p
                for r in Pi:
                    if r[i]:
                        r[t] = (r[t] + c * r[i]) % p
        for j in range(t + 1, n):
            c = rt[j]
            if c:
                rt[j] = 0
                for r in Q:
                    if r[t]:
                        r[j] = (r[j] - c * r[t]) % p
                qt, qj = Qi[t], Qi[j]
                for k in range(n):
                    if qj[k]:
                        qt[k] = (qt[k] + c * qj[k]) % p
        diag.append(1)
        t += 1
    while len(diag) < min(m, n):
        diag.append(0)
    return diag, P, Pi, Q, Qi


def smith_field(a, m, n, zero, one):
    """Rank normal form over a field whose scalars support exact ``/``.

    Used for the rationals (``fractions.Fraction``); the pivot is the first
    nonzero entry in row-major order.
    """
    A = [list(r) for r in a]
    P = _identity(m, one, zero)
    Pi = _identity(m, one, zero)
    Q = _identity(n, one, zero)
    Qi = _identity(n, one, zero)
    diag = []
    t = 0
    while t < m and t < n:
        bi = bj = -1
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                if row[j]:
                    bi, bj = i, j
                    break
            if bi >= 0:
                break
        if bi < 0:
            break
        if bi != t:
            A[t], A[bi] = A[bi], A[t]
            P[t], P[bi] = P[bi], P[t]
            for r in Pi:
                r[t], r[bi] = r[bi], r[t]
        if bj != t:
            for r in A:
                r[t], r[bj] = r[bj], r[t]
            for r in Q:
                r[t], r[bj] = r[bj], r[t]
            Qi[t], Qi[bj] = Qi[bj], Qi[t]
        piv = A[t][t]
        if piv != one:
            A[t] = [v / piv for v in A[t]]
            P[t] = [v / piv for v in P[t]]
            for r in Pi:
                r[t] = r[t] * piv
        rt, pt = A[t], P[t]
        for i in range(t + 1, m):
            c = A[i][t]
            if c:
                ri = A[i]
                for j in range(t, n):
                    if rt[j]:
                        ri[j] = ri[j] - c * rt[j]
                pi = P[i]
                for j in range(m):
                    if pt[j]:
                        pi[j] = pi[j] - c * pt[j]
                for r in Pi:
                    if r[i]:
                        r[t] = r[t] + c * r[i]
        for j in range(t + 1, n):
            c = rt[j]
            if c:
                rt[j] = zero
                for r in Q:
                    if r[t]:
                        r[j] = r[j] - c * r[t]
                qt, qj = Qi[t], Qi[j]
                for k in range(n):
                    if qj[k]:
                        qt[k] = qt[k] + c * qj[k]
        diag.append(one)
        t += 1
    while len(diag) < min(m, n):
        diag.append(zero)
    return diag, P, Pi, Q, Qi
