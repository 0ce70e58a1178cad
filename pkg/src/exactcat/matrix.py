"""Dense immutable matrices over a :class:`~exactcat.rings.BaseRing`.

Literal syntax (shared by every input file and every JSON report)::

    "1,0;1/2,3"      two rows, rationals as a/b
    "empty:2x0"      a matrix with no entries but a definite shape
"""

from __future__ import annotations

from exactcat.rings import BaseRing


class Matrix:
    __slots__ = ("ring", "nrows", "ncols", "rows", "_hash")

    def __init__(self, ring: BaseRing, rows, nrows: int | None = None, ncols: int | None = None):
        rows = tuple(tuple(ring(v) for v in r) for r in rows)
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            if not rows:
                raise ValueError("column count needed for a matrix with no rows")
            ncols = len(rows[0])
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError("ragged or mis-shaped matrix rows")
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows
        self._hash = None

    @classmethod
    def _raw(cls, ring, rows, nrows, ncols):
        # trusted constructor: entries already normalized
        m = object.__new__(cls)
        m.ring = ring
        m.nrows = nrows
        m.ncols = ncols
        m.rows = rows
        m._hash = None
        return m

    # construction helpers

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        z = ring.zero
        return cls._raw(ring, tuple((z,) * ncols for _ in range(nrows)), nrows, ncols)

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero, ring.one
        return cls._raw(ring, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def diagonal(cls, ring, diag, nrows=None, ncols=None):
        nrows = len(diag) if nrows is None else nrows
        ncols = len(diag) if ncols is None else ncols
        rows = [[ring.zero] * ncols for _ in range(nrows)]
        for i, d in enumerate(diag):
            rows[i][i] = d
        return cls(ring, rows, nrows, ncols)

    @classmethod
    def from_columns(cls, ring, cols, nrows):
        cols = list(cols)
        return cls(ring, [[c[i] for c in cols] for i in range(nrows)], nrows, len(cols))

    @classmethod
    def column(cls, ring, values):
        values = list(values)
        return cls(ring, [[v] for v in values], len(values), 1)

    @classmethod
    def parse(cls, ring: BaseRing, text: str, nrows: int | None = None, ncols: int | None = None):
        text = text.strip()
        if text.startswith("empty:"):
            r, c = text[6:].split("x")
            shape = (int(r), int(c))
            if (nrows, ncols) not in ((None, None), shape):
                raise ValueError(f"matrix shape {shape} does not match expected {(nrows, ncols)}")
            return cls.zeros(ring, *shape)
        if not text:
            if nrows is None or ncols is None or nrows * ncols:
                raise ValueError("empty matrix literal needs an empty shape")
            return cls.zeros(ring, nrows, ncols)
        rows = [[ring.parse_scalar(e) for e in row.split(",")] for row in text.split(";")]
        m = cls(ring, rows)
        if nrows is not None and m.nrows != nrows or ncols is not None and m.ncols != ncols:
            raise ValueError(f"matrix {text!r} has shape {m.shape}, expected {(nrows, ncols)}")
        return m

    def literal(self) -> str:
        if not self.nrows or not self.ncols:
            return f"empty:{self.nrows}x{self.ncols}"
        fmt = self.ring.format_scalar
        return ";".join(",".join(fmt(v) for v in r) for r in self.rows)

    # basic protocol

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def entries(self):
        return [v for r in self.rows for v in r]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.shape == other.shape and self.ring == other.ring
                and self.rows == other.rows)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.nrows, self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        return f"Matrix({self.literal()!r})"

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j):
        return [r[j] for r in self.rows]

    def cols(self):
        return [list(c) for c in zip(*self.rows)] if self.nrows else [[] for _ in range(self.ncols)]

    def is_zero(self):
        return not any(any(r) for r in self.rows)

    def tolist(self):
        return [list(r) for r in self.rows]

    # arithmetic

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ring = self.ring
        ocols = list(zip(*other.rows)) if other.nrows else [() for _ in range(other.ncols)]
        z = ring.zero
        out = []
        for r in self.rows:
            nz = [(k, v) for k, v in enumerate(r) if v]
            row = []
            for c in ocols:
                s = z
                for k, v in nz:
                    w = c[k]
                    if w:
                        s += v * w
                row.append(s)
            out.append(row)
        if ring.kind == "Fp":
            p = ring.p
            rows = tuple(tuple(v % p for v in row) for row in out)
        else:
            rows = tuple(tuple(row) for row in out)
        return Matrix._raw(ring, rows, self.nrows, other.ncols)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        red = self.ring.reduce
        rows = tuple(tuple(red(a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Matrix._raw(self.ring, rows, self.nrows, self.ncols)

    def __neg__(self) -> Matrix:
        red = self.ring.reduce
        return Matrix._raw(self.ring, tuple(tuple(red(-a) for a in r) for r in self.rows),
                           self.nrows, self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, c) -> Matrix:
        c = self.ring(c)
        red = self.ring.reduce
        return Matrix._raw(self.ring, tuple(tuple(red(c * a) for a in r) for r in self.rows),
                           self.nrows, self.ncols)

    @property
    def T(self) -> Matrix:
        rows = tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols))
        return Matrix._raw(self.ring, rows, self.ncols, self.nrows)

    def submatrix(self, row_idx, col_idx) -> Matrix:
        row_idx, col_idx = list(row_idx), list(col_idx)
        rows = tuple(tuple(self.rows[i][j] for j in col_idx) for i in row_idx)
        return Matrix._raw(self.ring, rows, len(row_idx), len(col_idx))

    def reduce_rows(self, moduli) -> Matrix:
        """Reduce row ``i`` modulo ``moduli[i]`` (0 means no reduction)."""
        if not any(moduli):
            return self
        rows = tuple(tuple(v % d for v in r) if d else r for r, d in zip(self.rows, moduli))
        return Matrix._raw(self.ring, rows, self.nrows, self.ncols)


def hstack(ring, blocks, nrows) -> Matrix:
    blocks = list(blocks)
    rows = tuple(tuple(v for b in blocks for v in b.rows[i]) for i in range(nrows))
    return Matrix._raw(ring, rows, nrows, sum(b.ncols for b in blocks))


def vstack(ring, blocks, ncols) -> Matrix:
    blocks = list(blocks)
    rows = tuple(r for b in blocks for r in b.rows)
    return Matrix._raw(ring, rows, len(rows), ncols)


def block_diag(ring, blocks) -> Matrix:
    blocks = list(blocks)
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    out = [[ring.zero] * nc for _ in range(nr)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            out[r0 + i][c0:c0 + b.ncols] = row
        r0 += b.nrows
        c0 += b.ncols
    return Matrix._raw(ring, tuple(tuple(r) for r in out), nr, nc)
