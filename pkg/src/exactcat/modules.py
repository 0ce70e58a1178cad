"""Finitely generated modules over the base ring and maps between them.

A module is kept in *diagonal form*: generators ``e_1 .. e_n`` where ``e_i``
has order ``moduli[i]`` (``0`` for a free generator). Over a field every
modulus is 0. Elements are coordinate vectors reduced modulo the moduli, and
a map ``M -> N`` is a ``N.n x M.n`` matrix whose columns are the images of the
generators. Kernels, cokernels and images are brought back to diagonal form
through the Smith decomposition, so every derived module is again diagonal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from exactcat.linalg import NoSolution, smith_normal_form, solve_linear
from exactcat.matrix import Matrix, hstack
from exactcat.rings import BaseRing


@dataclass(frozen=True)
class FgModule:
    ring: BaseRing
    moduli: tuple = ()
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        for d in self.moduli:
            if d < 0 or d == 1:
                raise ValueError(f"bad generator order {d}")
            if d and self.ring.is_field:
                raise ValueError("torsion generators only exist over Z")

    @classmethod
    def free(cls, ring, n, labels=None):
        return cls(ring, (0,) * n, labels)

    @classmethod
    def from_invariants(cls, ring, free_rank=0, torsion=()):
        torsion = tuple(d for d in torsion if d != 1)
        return cls(ring, (0,) * free_rank + torsion)

    @property
    def n(self) -> int:
        return len(self.moduli)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.moduli if d == 0)

    @property
    def torsion_invariants(self) -> tuple:
        ds = [d for d in self.moduli if d]
        if not ds:
            return ()
        snf = smith_normal_form(Matrix.diagonal(self.ring, ds))
        return tuple(d for d in snf.diag if d != 1)

    @property
    def presentation(self) -> Matrix:
        """Relation matrix whose cokernel is this module (one column per torsion generator)."""
        cols = []
        for i, d in enumerate(self.moduli):
            if d:
                c = [0] * self.n
                c[i] = d
                cols.append(c)
        return Matrix.from_columns(self.ring, cols, self.n)

    def canonical(self):
        return (self.free_rank, self.torsion_invariants)

    def is_isomorphic(self, other: FgModule) -> bool:
        return self.ring == other.ring and self.canonical() == other.canonical()

    def is_zero(self) -> bool:
        return not self.moduli

    @property
    def is_finite(self) -> bool:
        return self.ring.kind == "Fp" or self.n == 0 or (self.ring.kind == "Z" and all(self.moduli))

    def order(self):
        """Number of elements, or ``None`` when infinite."""
        if self.ring.kind == "Fp":
            return self.ring.p ** self.n
        if self.ring.kind == "Z" and all(self.moduli):
            out = 1
            for d in self.moduli:
                out *= d
            return out
        if self.n == 0:
            return 1
        return None

    def reduce(self, vec):
        return [v % d if d else self.ring.reduce(v) for v, d in zip(vec, self.moduli)]

    def column(self, vec) -> Matrix:
        return Matrix.column(self.ring, self.reduce(vec))

    def zero_vector(self):
        return [self.ring.zero] * self.n

    def is_zero_vector(self, vec) -> bool:
        return all(not (v % d if d else v) for v, d in zip(vec, self.moduli))

    def elements(self, box: int = 1):
        """Iterate all elements (finite modules) or a coefficient box (free parts)."""
        ranges = [self.ring.elements(d, box) for d in self.moduli]
        for combo in itertools.product(*ranges):
            yield list(combo)

    def describe(self) -> str:
        if not self.moduli:
            return "0"
        if self.ring.is_field:
            return f"k^{self.n}"
        parts = []
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}" if self.free_rank > 1 else "Z")
        parts += [f"Z/{d}" for d in self.torsion_invariants]
        return " + ".join(parts) if parts else "0"


def module_canonical_form(presentation: Matrix, labels=None) -> FgModule:
    """The module ``coker(presentation)`` in canonical diagonal form.

    Unit invariant factors are dropped; torsion generators come first in
    divisibility order, free generators after them.
    """
    ring = presentation.ring
    n = presentation.nrows
    snf = smith_normal_form(presentation)
    moduli = []
    for i in range(n):
        d = snf.diag[i] if i < len(snf.diag) else ring.zero
        if d and ring.is_unit(d):
            continue
        moduli.append(int(d) if ring.kind == "Z" else 0)
    return FgModule(ring, tuple(moduli), labels)


class ModuleMap:
    """A homomorphism ``source -> target`` given on generators."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FgModule, target: FgModule, matrix: Matrix, check: bool = True):
        if matrix.shape != (target.n, source.n):
            raise ValueError(f"map matrix shape {matrix.shape} does not fit {source.n} -> {target.n}")
        matrix = matrix.reduce_rows(target.moduli)
        self.source = source
        self.target = target
        self.matrix = matrix
        if check and not self.well_defined():
            raise ValueError("matrix does not define a module homomorphism")

    def well_defined(self) -> bool:
        tm = self.target.moduli
        for j, d in enumerate(self.source.moduli):
            if d:
                for i, e in enumerate(tm):
                    v = d * self.matrix.rows[i][j]
                    if (v % e if e else v):
                        return False
        return True

    def __eq__(self, other):
        if not isinstance(other, ModuleMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def __repr__(self):
        return f"ModuleMap({self.source.describe()} -> {self.target.describe()}, {self.matrix.literal()!r})"

    def __matmul__(self, other: ModuleMap) -> ModuleMap:
        if other.target != self.source:
            raise ValueError("composition endpoint mismatch")
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix, check=False)

    def __add__(self, other: ModuleMap) -> ModuleMap:
        return ModuleMap(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other: ModuleMap) -> ModuleMap:
        return ModuleMap(self.source, self.target, self.matrix - other.matrix, check=False)

    def __neg__(self) -> ModuleMap:
        return ModuleMap(self.source, self.target, -self.matrix, check=False)

    def scale(self, c) -> ModuleMap:
        return ModuleMap(self.source, self.target, self.matrix.scale(c), check=False)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def apply(self, vec):
        col = Matrix.column(self.source.ring, vec)
        return self.target.reduce((self.matrix @ col).col(0))

    @classmethod
    def identity(cls, M: FgModule) -> ModuleMap:
        return cls(M, M, Matrix.identity(M.ring, M.n), check=False)

    @classmethod
    def zero(cls, M: FgModule, N: FgModule) -> ModuleMap:
        return cls(M, N, Matrix.zeros(M.ring, N.n, M.n), check=False)


def _relations(N: FgModule) -> Matrix:
    return N.presentation


def kernel(f: ModuleMap) -> ModuleMap:
    """Inclusion of ``ker f`` into ``f.source`` (diagonal form)."""
    M, N = f.source, f.target
    ring = M.ring
    DN = _relations(N)
    G = hstack(ring, [f.matrix, DN], N.n)
    snf = smith_normal_form(G)
    # lattice L = {x : f x in rel(N)} is generated by the top block of ker G
    gens = snf.Q.submatrix(range(M.n), range(snf.rank, G.ncols))
    return _sublattice_module(M, gens)


def _sublattice_module(M: FgModule, gens: Matrix) -> ModuleMap:
    """Inclusion of the submodule ``(span(gens) + rel(M)) / rel(M)`` into ``M``."""
    ring = M.ring
    DM = _relations(M)
    gens = hstack(ring, [gens, DM], M.n)
    snf = smith_normal_form(gens)
    r = snf.rank
    # basis of the lattice: s_i * (P^-1 column i)
    B = snf.U.submatrix(range(M.n), range(r))
    if ring.kind == "Z":
        B = Matrix(ring, [[v * snf.diag[j] for j, v in enumerate(row)] for row in B.rows], M.n, r)
    if not DM.ncols or r == 0:
        return ModuleMap(FgModule(ring, (0,) * r), M, B, check=False)
    # relations of M expressed in the lattice basis
    PD = snf.P @ DM
    C = Matrix(ring, [[ring.exact_quotient(PD.rows[i][k], snf.diag[i]) for k in range(DM.ncols)]
                      for i in range(r)], r, DM.ncols)
    snf2 = smith_normal_form(C)
    keep, moduli = [], []
    for i in range(r):
        d = snf2.diag[i] if i < len(snf2.diag) else 0
        if d == 1:
            continue
        keep.append(i)
        moduli.append(d)
    basis = B @ snf2.U.submatrix(range(r), keep)
    return ModuleMap(FgModule(ring, tuple(moduli)), M, basis, check=False)


@dataclass(frozen=True)
class Cokernel:
    """``proj: target -> Q`` together with ``section``, a lift of Q's generators."""

    proj: ModuleMap
    section: Matrix

    @property
    def module(self) -> FgModule:
        return self.proj.target

    def lift(self, vec):
        col = Matrix.column(self.proj.source.ring, vec)
        return self.proj.source.reduce((self.section @ col).col(0))


def cokernel(f: ModuleMap) -> Cokernel:
    M, N = f.source, f.target
    ring = N.ring
    G = hstack(ring, [f.matrix, _relations(N)], N.n)
    snf = smith_normal_form(G)
    keep, moduli = [], []
    for i in range(N.n):
        d = snf.diag[i] if i < len(snf.diag) else ring.zero
        if d and ring.is_unit(d):
            continue
        keep.append(i)
        moduli.append(int(d) if ring.kind == "Z" else 0)
    Qm = FgModule(ring, tuple(moduli))
    proj = ModuleMap(N, Qm, snf.P.submatrix(keep, range(N.n)), check=False)
    section = snf.U.submatrix(range(N.n), keep)
    return Cokernel(proj, section)


def image(f: ModuleMap) -> ModuleMap:
    """Inclusion of ``im f`` into ``f.target``."""
    return _sublattice_module(f.target, f.matrix)


def submodule(M: FgModule, vectors) -> ModuleMap:
    """Inclusion of the submodule generated by ``vectors``."""
    vectors = list(vectors)
    return _sublattice_module(M, Matrix.from_columns(M.ring, vectors, M.n))


def solve(f: ModuleMap, b, snf=None):
    """Some ``x`` with ``f(x) = b`` (a coordinate list), or ``None``."""
    M, N = f.source, f.target
    ring = M.ring
    G = hstack(ring, [f.matrix, _relations(N)], N.n)
    x = solve_linear(G, Matrix.column(ring, b), snf)
    if isinstance(x, NoSolution):
        return None
    return M.reduce(x.col(0)[: M.n])


def solve_columns(f: ModuleMap, B: Matrix):
    """Solve ``f @ X == B`` column by column; ``None`` if some column fails."""
    M, N = f.source, f.target
    ring = M.ring
    G = hstack(ring, [f.matrix, _relations(N)], N.n)
    snf = smith_normal_form(G)
    X = solve_linear(G, B, snf)
    if isinstance(X, NoSolution):
        return None
    return X.submatrix(range(M.n), range(B.ncols)).reduce_rows(M.moduli)


def is_injective(f: ModuleMap) -> bool:
    return kernel(f).source.is_zero()


def is_surjective(f: ModuleMap) -> bool:
    return cokernel(f).module.is_zero()


def is_isomorphism(f: ModuleMap) -> bool:
    return is_injective(f) and is_surjective(f)


def contains(inc: ModuleMap, vec) -> bool:
    """Whether ``vec`` of ``inc.target`` lies in the image of ``inc``."""
    return solve(inc, vec) is not None


def direct_sum(modules) -> FgModule:
    modules = list(modules)
    if not modules:
        raise ValueError("direct sum of no modules needs a ring; use FgModule(ring)")
    return FgModule(modules[0].ring, tuple(d for M in modules for d in M.moduli))


def _hom_entry(ring, d_src, d_tgt):
    """(order, scale) of the cyclic group Hom(<e_j>, <f_i>), or None when it is 0."""
    if d_src == 0:
        return (d_tgt, 1)
    if d_tgt == 0:
        return None
    g = gcd(d_src, d_tgt)
    if g == 1:
        return None
    return (g, d_tgt // g)


class HomModule:
    """``Hom(M, N)`` as a diagonal module with a coordinate dictionary.

    Coordinate ``k`` corresponds to the matrix unit at ``entries[k] = (i, j)``
    scaled by ``scales[k]``.
    """

    def __init__(self, M: FgModule, N: FgModule):
        self.source = M
        self.target = N
        ring = M.ring
        self.entries, self.scales, moduli = [], [], []
        for i, dt in enumerate(N.moduli):
            for j, ds in enumerate(M.moduli):
                e = _hom_entry(ring, ds, dt)
                if e is None:
                    continue
                self.entries.append((i, j))
                moduli.append(e[0])
                self.scales.append(e[1])
        self.module = FgModule(ring, tuple(moduli))
        self._index = {ij: k for k, ij in enumerate(self.entries)}

    def to_matrix(self, coords) -> Matrix:
        ring = self.source.ring
        rows = [[ring.zero] * self.source.n for _ in range(self.target.n)]
        for (i, j), s, c in zip(self.entries, self.scales, coords):
            rows[i][j] = s * c
        return Matrix(ring, rows, self.target.n, self.source.n).reduce_rows(self.target.moduli)

    def to_map(self, coords) -> ModuleMap:
        return ModuleMap(self.source, self.target, self.to_matrix(coords), check=False)

    def coords(self, A: Matrix):
        A = A.reduce_rows(self.target.moduli)
        out = []
        for (i, j), s, d in zip(self.entries, self.scales, self.module.moduli):
            v = A.rows[i][j]
            if s != 1:
                if v % s:
                    raise ValueError("matrix is not a well-defined homomorphism")
                v //= s
            out.append(v % d if d else v)
        # entries outside the coordinate set must vanish
        for i in range(A.nrows):
            for j in range(A.ncols):
                if (i, j) not in self._index and A.rows[i][j]:
                    raise ValueError("matrix is not a well-defined homomorphism")
        return out


class Solver:
    """Repeated solving of ``f(x) = b`` against one map, sharing a single Smith form."""

    __slots__ = ("f", "_G", "_snf")

    def __init__(self, f: ModuleMap):
        self.f = f
        N = f.target
        self._G = hstack(f.source.ring, [f.matrix, _relations(N)], N.n)
        self._snf = smith_normal_form(self._G)

    def __call__(self, b):
        M = self.f.source
        x = solve_linear(self._G, Matrix.column(M.ring, b), self._snf)
        if isinstance(x, NoSolution):
            return None
        return M.reduce(x.col(0)[: M.n])

    def columns(self, B: Matrix):
        M = self.f.source
        X = solve_linear(self._G, B, self._snf)
        if isinstance(X, NoSolution):
            return None
        return X.submatrix(range(M.n), range(B.ncols)).reduce_rows(M.moduli)
