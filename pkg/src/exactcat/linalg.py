"""Smith normal form, linear solving and kernel lattices.

Everything here is ring-generic: over Z the Smith form carries the invariant
factors, over a field it is the rank normal form.
"""

from __future__ import annotations

from dataclasses import dataclass

from exactcat.matrix import Matrix


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ S @ V == M`` with ``P = U^-1`` and ``Q = V^-1`` kept alongside."""

    U: Matrix
    S: Matrix
    V: Matrix
    P: Matrix
    Q: Matrix
    diag: tuple
    rank: int

    @property
    def invariants(self):
        return self.diag[: self.rank]


def smith_normal_form(M: Matrix) -> SmithDecomposition:
    ring = M.ring
    m, n = M.shape
    diag, P, Pi, Q, Qi = ring.smith([list(r) for r in M.rows], m, n)
    diag = tuple(ring(d) for d in diag)
    rank = sum(1 for d in diag if d)
    S = Matrix.diagonal(ring, diag, m, n)
    P = Matrix(ring, P, m, m)
    Pi = Matrix(ring, Pi, m, m)
    Q = Matrix(ring, Q, n, n)
    Qi = Matrix(ring, Qi, n, n)
    return SmithDecomposition(U=Pi, S=S, V=Qi, P=P, Q=Q, diag=diag, rank=rank)


class NoSolution:
    """Falsy result of :func:`solve_linear`, carrying the failing row.

    ``row`` indexes the transformed right-hand side ``P @ b``; ``reason`` is
    either ``"not-divisible"`` (an invariant factor does not divide the entry)
    or ``"inconsistent"`` (nonzero entry beyond the rank).
    """

    __slots__ = ("row", "reason")

    def __init__(self, row, reason):
        self.row = row
        self.reason = reason

    def __bool__(self):
        return False

    def __repr__(self):
        return f"NoSolution(row={self.row}, reason={self.reason!r})"


def solve_linear(A: Matrix, b: Matrix, snf: SmithDecomposition | None = None):
    """Return a column ``x`` with ``A @ x == b`` or a :class:`NoSolution`.

    ``b`` may have several columns; each is solved independently and the
    first failure is returned.
    """
    if b.nrows != A.nrows:
        raise ValueError(f"right-hand side has {b.nrows} rows, matrix has {A.nrows}")
    ring = A.ring
    snf = snf or smith_normal_form(A)
    Pb = snf.P @ b
    n = A.ncols
    ys = [[ring.zero] * b.ncols for _ in range(n)]
    for i in range(A.nrows):
        d = snf.diag[i] if i < len(snf.diag) else ring.zero
        for k in range(b.ncols):
            v = Pb.rows[i][k]
            if not d:
                if v:
                    return NoSolution(i, "inconsistent")
                continue
            if not ring.divides(d, v):
                return NoSolution(i, "not-divisible")
            ys[i][k] = ring.exact_quotient(v, d)
    return snf.Q @ Matrix(ring, ys, n, b.ncols)


def kernel_basis(A: Matrix, snf: SmithDecomposition | None = None) -> Matrix:
    """Columns form a basis of ``{x : A @ x == 0}`` (a lattice basis over Z)."""
    snf = snf or smith_normal_form(A)
    return snf.Q.submatrix(range(A.ncols), range(snf.rank, A.ncols))


def rank(A: Matrix) -> int:
    return smith_normal_form(A).rank


def determinant(A: Matrix):
    """Exact determinant by Bareiss elimination (fraction-free over Z)."""
    if A.nrows != A.ncols:
        raise ValueError("determinant of a non-square matrix")
    ring = A.ring
    n = A.nrows
    if n == 0:
        return ring.one
    a = [list(r) for r in A.rows]
    sign = ring.one
    prev = ring.one
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                if ring.kind == "Fp":
                    a[i][j] = num * pow(prev, ring.p - 2, ring.p) % ring.p
                elif ring.kind == "Z":
                    a[i][j] = num // prev
                else:
                    a[i][j] = num / prev
        prev = a[k][k]
    return ring.reduce(sign * a[n - 1][n - 1])
