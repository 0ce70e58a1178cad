"""Named categories, subcategories and curated instances used by tests and the CLI."""

from __future__ import annotations

import os
from functools import lru_cache

from exactcat.category import a2, point, two_a2
from exactcat.linalg import rank
from exactcat.matrix import Matrix
from exactcat.modules import FgModule
from exactcat.rep import (Rep, RepMap, ShortSeq, direct_sum, enumerate_reps, iso_classes,
                          representable, simple)
from exactcat.rings import GF, ZZ
from exactcat.structures import AdditiveSubcat


# A_2 = (a -f-> b) ------------------------------------------------------------------------------

def a2_rep(ring, f_rows, n0: int | None = None, n1: int | None = None) -> Rep:
    """The A_2 representation ``k^n0 -f-> k^n1``."""
    spec = a2(ring)
    m = Matrix(ring, f_rows, n1, n0)
    return Rep(spec, (FgModule.free(ring, m.ncols), FgModule.free(ring, m.nrows)), (m,))


def a2_simples(ring):
    spec = a2(ring)
    return simple(spec, "a"), simple(spec, "b")


def a2_projective(ring):
    return representable(a2(ring), "a")


@lru_cache(maxsize=None)
def a2_catalog(p: int = 2, max_dim: int = 2):
    """Isomorphism classes of A_2 representations over F_p with dims at most ``max_dim``."""
    return tuple(iso_classes(enumerate_reps(a2(GF(p)), max_dim)))


# the rank-balanced category: f: V0 -> V1 with dim V0 - dim V1 = rk f -------------------------

def rank_balanced(X: Rep) -> bool:
    if X.spec.objects != ("a", "b") or len(X.actions) != 1:
        return False
    v0, v1 = X.values
    return v0.n - v1.n == rank(X.actions[0])


def rank_balanced_subcat(ring=GF(2), multiplicity_bound: int = 3) -> AdditiveSubcat:
    Sa, Sb = a2_simples(ring)
    Pa = a2_projective(ring)
    gens = [direct_sum([Sa, Sb]).obj, direct_sum([Sa, Pa]).obj]
    return AdditiveSubcat(a2(ring), "predicate", generators=gens, predicate=rank_balanced,
                          multiplicity_bound=multiplicity_bound, name="rank-balanced")


def rank_balanced_objects(ring=GF(2), max_dim: int = 3):
    """Iso classes in the rank-balanced category with both dims at most ``max_dim``.

    Every object is ``S_a^x + S_b^y + P_a^z``; membership means ``x = y + z``.
    """
    Sa, Sb = a2_simples(ring)
    Pa = a2_projective(ring)
    out = []
    for z in range(max_dim + 1):
        for y in range(max_dim + 1):
            x = y + z
            if x + z > max_dim or y + z > max_dim:
                continue
            out.append(direct_sum([Sa] * x + [Sb] * y + [Pa] * z, a2(ring)).obj)
    return out


# free abelian groups -----------------------------------------------------------------------

def z_module(moduli=(0,)) -> Rep:
    """A single f.g. abelian group as a representation of the one-object category."""
    return Rep(point(ZZ), (FgModule(ZZ, tuple(moduli)),), ())


def z_map(source: Rep, target: Rep, rows) -> RepMap:
    m = Matrix(ZZ, rows, target.values[0].n, source.values[0].n)
    return RepMap(source, target, (m,))


def free_z_subcat(multiplicity_bound: int = 4) -> AdditiveSubcat:
    return AdditiveSubcat(point(ZZ), "generated", generators=[z_module()],
                          multiplicity_bound=multiplicity_bound, name="free-Z")


# two disjoint copies of A_2 -----------------------------------------------------------------

def two_a2_seeds(p: int = 2):
    """The nonsplit sequence ``S_b -> P_a -> S_a`` placed in each component of two copies of A_2."""
    ring = GF(p)
    spec = two_a2(ring)
    out = []
    for src, tgt in (("a", "b"), ("c", "d")):
        out.append(_a2_nonsplit(spec, src, tgt))
    return out


def _a2_nonsplit(spec, src, tgt) -> ShortSeq:
    ring = spec.ring
    Sa = simple(spec, src)
    Sb = simple(spec, tgt)
    P = representable(spec, src)
    k = {o: i for i, o in enumerate(spec.objects)}

    def comp(X, Y, o, val):
        n, m = Y.values[k[o]].n, X.values[k[o]].n
        return Matrix(ring, [[val] * m] * n, n, m) if n and m else Matrix.zeros(ring, n, m)

    i = RepMap(Sb, P, tuple(comp(Sb, P, o, 1) for o in spec.objects))
    pr = RepMap(P, Sa, tuple(comp(P, Sa, o, 1) for o in spec.objects))
    return ShortSeq(i, pr)


def a2_nonsplit(ring=GF(2)) -> ShortSeq:
    return _a2_nonsplit(a2(ring), "a", "b")


# packaged data ---------------------------------------------------------------------------------

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def data_path(*parts) -> str:
    return os.path.join(DATA_DIR, *parts)


def curated_instances():
    """The packaged periodicity instances, in file order."""
    from exactcat.fileio import load_instance
    d = data_path("corpus")
    return [load_instance(os.path.join(d, f)) for f in sorted(os.listdir(d)) if f.endswith(".inst")]


def hereditary_pairs():
    """Three (A, B) pairs: projectives against everything, everything against injectives, frees over Z."""
    ring = GF(2)
    spec = a2(ring)
    cat = list(a2_catalog(2, 2))
    projectives = [representable(spec, o) for o in spec.objects]
    Sa, _ = a2_simples(ring)
    injectives = [Sa, a2_projective(ring)]
    frees = [z_module((0,)), z_module((0, 0))]
    zs = [z_module((2,)), z_module((3,)), z_module((4,)), z_module((0,))]
    return [("projectives", projectives, cat), ("injectives", cat, injectives), ("frees-over-Z", frees, zs)]
