"""Ext groups by the syzygy method, realization of classes, Baer sums.

For ``X`` take the representable cover ``eps: P0 -> X`` (one copy of ``P_a``
per generator of ``X(a)``) and its syzygy ``iota: Omega -> P0``. Then
``Ext^1(X, Y) = coker(Hom(P0, Y) -> Hom(Omega, Y))`` and
``Ext^2(X, Y) = Ext^1(Omega, Y)``. A class is represented by a cocycle
``phi: Omega -> Y``; the sequence it names is the pushout of ``iota`` along
``phi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from exactcat.modules import Cokernel, Solver, cokernel
from exactcat.rep import (Rep, RepError, RepMap, ShortSeq, cokernel_of, direct_sum,
                          factor_through_cokernel, factor_through_mono, kernel_of, limit_square,
                          map_column, map_row, map_sum, precompose, rep_hom, split_sequence,
                          yoneda_map)


@dataclass(frozen=True)
class Cover:
    X: Rep
    P0: Rep
    eps: RepMap
    omega: Rep
    iota: RepMap
    summands: tuple  # (object, generator index) per representable summand


@lru_cache(maxsize=1024)
def projective_cover(X: Rep) -> Cover:
    spec = X.spec
    maps, summands = [], []
    for a, V in zip(spec.objects, X.values):
        for j in range(V.n):
            e = [0] * V.n
            e[j] = 1
            maps.append(yoneda_map(X, a, e))
            summands.append((a, j))
    if maps:
        eps = map_row(maps)
    else:
        eps = RepMap.zero(direct_sum([], spec).obj, X)
    iota = kernel_of(eps)
    return Cover(X, eps.source, eps, iota.source, iota, tuple(summands))


class ExtGroup:
    """``Ext^1(X, Y)`` with explicit cocycles."""

    def __init__(self, X: Rep, Y: Rep):
        if X.spec != Y.spec:
            raise RepError("Ext between representations of different categories")
        self.X, self.Y = X, Y
        self.cover = projective_cover(X)
        self.cocycles = rep_hom(self.cover.omega, Y)
        restrict = precompose(self.cover.iota, Y)
        self.coker: Cokernel = cokernel(restrict)
        self._restrict = restrict

    @property
    def module(self):
        return self.coker.module

    def is_zero(self) -> bool:
        return self.module.is_zero()

    def class_of_cocycle(self, phi: RepMap):
        return self.coker.proj.apply(self.cocycles.coords(phi))

    def cocycle(self, cls) -> RepMap:
        return self.cocycles.to_map(self.coker.lift(cls))

    def classes(self, box: int = 1):
        return self.module.elements(box)

    def realize(self, cls) -> ShortSeq:
        """A pointwise-exact sequence ``Y -> E -> X`` with the given class."""
        if self.module.is_zero_vector(cls):
            return split_sequence(self.Y, self.X)
        phi = self.cocycle(cls)
        cov = self.cover
        # E = (Y + P0) / {(phi w, -iota w)}
        rel = map_column([phi, -cov.iota])
        q, sections = cokernel_of(rel)
        ds = direct_sum([self.Y, cov.P0])
        i = q @ ds.injections[0]
        p = factor_through_cokernel(q, sections, map_row([RepMap.zero(self.Y, self.X), cov.eps]))
        return ShortSeq(i, p, check=False)

    def class_of(self, seq: ShortSeq):
        """Class of a pointwise-exact sequence ``Y -> E -> X``."""
        if seq.left != self.Y or seq.right != self.X:
            raise RepError("sequence ends do not match this Ext group")
        cov = self.cover
        lam = lift_cover(cov, seq.p)
        phi = factor_through_mono(seq.i, lam @ cov.iota)
        if phi is None:
            raise RepError("sequence is not exact in the middle")
        return self.class_of_cocycle(phi)

    def pullback_class(self, b: RepMap, other: ExtGroup):
        """``b^*``: this group's classes pulled back along ``b: X' -> X`` into ``other``."""
        omega_map = lift_to_syzygies(b, other.cover, self.cover)
        return lambda cls: other.class_of_cocycle(self.cocycle(cls) @ omega_map)

    def pushforward_class(self, a: RepMap, other: ExtGroup):
        """``a_*`` along ``a: Y -> Y'``."""
        return lambda cls: other.class_of_cocycle(a @ self.cocycle(cls))


def lift_cover(cov: Cover, p: RepMap) -> RepMap:
    """Some ``lam: P0 -> E`` with ``p . lam == eps`` (``p`` pointwise onto ``cov.X``)."""
    E = p.source
    spec = E.spec
    maps = []
    for a, j in cov.summands:
        k = spec.index(a)
        target = [0] * cov.X.values[k].n
        target[j] = 1
        e = Solver(p.module_map(k))(target)
        if e is None:
            raise RepError(f"map is not onto at object {a}")
        maps.append(yoneda_map(E, a, e))
    if not maps:
        return RepMap.zero(cov.P0, E)
    return map_row(maps)


def lift_to_syzygies(b: RepMap, cov_src: Cover, cov_tgt: Cover) -> RepMap:
    """Restriction to syzygies of a chain lift of ``b: X' -> X`` between covers."""
    maps = []
    E = cov_tgt.P0
    spec = E.spec
    for a, j in cov_src.summands:
        k = spec.index(a)
        x = b.components[k].col(j)
        e = Solver(cov_tgt.eps.module_map(k))(x)
        maps.append(yoneda_map(E, a, e))
    lam = map_row(maps) if maps else RepMap.zero(cov_src.P0, E)
    out = factor_through_mono(cov_tgt.iota, lam @ cov_src.iota)
    if out is None:
        raise RepError("chain lift does not preserve syzygies")
    return out


@lru_cache(maxsize=4096)
def ext1(X: Rep, Y: Rep) -> ExtGroup:
    return ExtGroup(X, Y)


def ext_group(n: int, X: Rep, Y: Rep):
    """``Ext^n(X, Y)`` as an FgModule for ``n`` in {1, 2}."""
    if n == 1:
        return ext1(X, Y).module
    if n == 2:
        return ext1(projective_cover(X).omega, Y).module
    raise ValueError("only Ext^1 and Ext^2 are supported")


def realize_ext1(X: Rep, Y: Rep, cls) -> ShortSeq:
    return ext1(X, Y).realize(cls)


def ext_class(seq: ShortSeq):
    return ext1(seq.right, seq.left).class_of(seq)


def baer_sum(s1: ShortSeq, s2: ShortSeq) -> ShortSeq:
    """Baer sum by the textbook recipe: pull the sum back along the diagonal, push out along the codiagonal."""
    if s1.left != s2.left or s1.right != s2.right:
        raise RepError("Baer sum needs sequences with the same ends")
    X, Y = s1.right, s1.left
    S = ShortSeq(map_sum([s1.i, s2.i]), map_sum([s1.p, s2.p]), check=False)
    diag = map_column([RepMap.identity(X), RepMap.identity(X)])
    pb = limit_square("pullback", S.p, diag)
    i_pb = factor_through_pullback(pb, S.i, RepMap.zero(S.i.source, X))
    codiag = map_row([RepMap.identity(Y), RepMap.identity(Y)])
    po = limit_square("pushout", i_pb, codiag)
    p_po = factor_through_pushout(po, pb.second, RepMap.zero(Y, X), i_pb, codiag)
    return ShortSeq(po.second, p_po, check=False)


def factor_through_pullback(sq, f: RepMap, g: RepMap) -> RepMap:
    """The map into the pullback corner with components ``f`` and ``g``."""
    corner_inc = map_column([sq.first, sq.second])
    out = factor_through_mono(corner_inc, map_column([f, g]))
    if out is None:
        raise RepError("maps do not define a cone over the pullback")
    return out


def factor_through_pushout(sq, f: RepMap, g: RepMap, u: RepMap, v: RepMap) -> RepMap:
    """The map out of the pushout of ``u, v`` restricting to ``f`` and ``g``."""
    rel = map_column([u, -v])
    q, sections = cokernel_of(rel)
    h = map_row([f, g])
    induced = factor_through_cokernel(q, sections, h)
    if sq.corner != q.target:
        raise RepError("pushout square was not built from these maps")
    return induced
