"""Acceptance criteria 1-11, each under its wall-clock limit.

Run alone with ``pytest tests/test_acceptance.py -v``; the terminal summary
prints one PASS/FAIL line per criterion.
"""

import itertools
import random
import time
from contextlib import contextmanager

import pytest

from exactcat.category import a2
from exactcat.corpus import (a2_catalog, a2_nonsplit, curated_instances, free_z_subcat, hereditary_pairs,
                             rank_balanced, rank_balanced_objects, rank_balanced_subcat, z_map, z_module)
from exactcat.ext import ext1, ext_group
from exactcat.homlab import ambient_structure, check_eklof, check_hereditary, verify_periodicity
from exactcat.lex import exact_in_K
from exactcat.linalg import rank, smith_normal_form
from exactcat.matrix import Matrix
from exactcat.modules import FgModule, ModuleMap, kernel
from exactcat.rep import ShortSeq, rep_hom
from exactcat.rings import GF, ZZ
from exactcat.structures import (AdditiveSubcat, custom_structure, enumerate_sequences, is_admissible,
                                 maximal_structure, split_decision, split_structure)
from exactcat.telescope import (Colimit, NotFinitelyGenerated, Telescope, TelescopeSeq, colimit_materialize,
                                is_admissible_ind, purity_test)

F2 = GF(2)


@contextmanager
def deadline(seconds):
    t0 = time.perf_counter()
    yield
    elapsed = time.perf_counter() - t0
    assert elapsed < seconds, f"took {elapsed:.1f}s, limit {seconds}s"


def _int_det(rows):
    # Bareiss fraction-free elimination, independent of the library
    a = [list(r) for r in rows]
    n, sign, prev = len(a), 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1] if n else 1


def _a2_sweep():
    """All composable pairs ``L -> M -> R`` (p.i = 0, dims additive) among A_2 reps with dims <= 2."""
    cat = a2_catalog(2, 2)
    out = []
    for L, M, R in itertools.product(cat, repeat=3):
        if any(l + r != m for l, m, r in zip(L.dims, M.dims, R.dims)) or (L.is_zero() and R.is_zero()):
            continue
        for i in rep_hom(L, M).elements():
            for p in rep_hom(M, R).elements():
                if (p @ i).is_zero():
                    out.append(ShortSeq(i, p, check=False))
    return out


@pytest.fixture(scope="module")
def a2_sweep():
    return _a2_sweep()


# 1 -----------------------------------------------------------------------------------------------

@pytest.mark.criterion(1, "SNF suite: 500 random integer matrices, reassembly, unimodularity, divisibility")
def test_c01_snf_suite():
    rng = random.Random(1)
    with deadline(5):
        for _ in range(500):
            m, n = rng.randint(1, 8), rng.randint(1, 8)
            M = Matrix(ZZ, [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)], m, n)
            d = smith_normal_form(M)
            assert d.U @ d.S @ d.V == M
            assert abs(_int_det(d.U.rows)) == 1 and abs(_int_det(d.V.rows)) == 1
            assert d.P @ d.U == Matrix.identity(ZZ, m) and d.V @ d.Q == Matrix.identity(ZZ, n)
            diag = [d.S.rows[k][k] for k in range(min(m, n))]
            assert all(x >= 0 for x in diag)
            assert all(diag[k + 1] % diag[k] == 0 if diag[k] else diag[k + 1] == 0
                       for k in range(len(diag) - 1))
            assert all(d.S.rows[i][j] == 0 for i in range(m) for j in range(n) if i != j)


# 2 -----------------------------------------------------------------------------------------------

@pytest.mark.criterion(2, "Rank-balanced example: maximal structure admits exactly the split sequences")
def test_c02_rank_balanced_example():
    with deadline(60):
        objs = rank_balanced_objects(F2, 3)
        assert all(rank_balanced(X) for X in objs)
        assert all(max(X.dims) <= 3 for X in objs)
        sub = rank_balanced_subcat(F2)
        mx = maximal_structure(sub)
        in_s, outside = [], 0
        for X, Y in itertools.product(objs, objs):
            G = ext1(X, Y)
            order = G.module.order()
            assert order is not None
            for c in G.module.elements():           # every class, so every sequence up to isomorphism
                s = G.realize(c)
                assert s.is_pointwise_exact()
                if rank_balanced(s.middle):
                    in_s.append(s)
                else:
                    outside += 1
        assert in_s and outside > 0                 # S is not closed under extensions
        for s in in_s:
            f, g, h = (X.actions[0] for X in (s.left, s.middle, s.right))
            assert rank(g) == rank(f) + rank(h)
            assert split_decision(s).verdict is True
            assert mx.admits(s).verdict is True


# 3 -----------------------------------------------------------------------------------------------

@pytest.mark.criterion(3, "Constant telescopes: induced admissibility equals admissibility (split, maximal)")
def test_c03_constant_telescopes(a2_sweep):
    sub = AdditiveSubcat.full(a2(F2))
    with deadline(120):
        checked = 0
        for st in (split_structure(sub), maximal_structure(sub)):
            for s in a2_sweep:
                a = is_admissible(st, s).verdict
                b = is_admissible_ind(st, TelescopeSeq.constant(s)).verdict
                assert a == b, (st.kind, s)
                checked += 1
        assert checked == 2 * len(a2_sweep) > 8000


# 4 -----------------------------------------------------------------------------------------------

@pytest.mark.criterion(4, "Coherent case: maximal verdict equals pointwise exactness on A_2, dims <= 2")
def test_c04_maximal_is_pointwise_exact(a2_sweep):
    sub = AdditiveSubcat.full(a2(F2))
    mx = maximal_structure(sub)
    with deadline(60):
        exact = 0
        for s in a2_sweep:
            e = s.is_pointwise_exact()
            exact += e
            assert (mx.admits(s).verdict is True) == e
        assert 0 < exact < len(a2_sweep)


# 5 -----------------------------------------------------------------------------------------------

def _brute_retraction(f):
    """Search raw F_2 matrices r with r.f = id that commute with the A_2 actions."""
    X, Y = f.source, f.target
    (xa, xb), (ya, yb) = X.dims, Y.dims
    Xf, Yf = X.actions[0], Y.actions[0]

    def mats(r, c):
        for e in itertools.product(range(2), repeat=r * c):
            yield Matrix(F2, [e[i * c:(i + 1) * c] for i in range(r)], r, c)

    for ra in mats(xa, ya):
        if ra @ f.components[0] != Matrix.identity(F2, xa):
            continue
        for rb in mats(xb, yb):
            if rb @ f.components[1] == Matrix.identity(F2, xb) and rb @ Yf == Xf @ ra:
                return True
    return False


@pytest.mark.criterion(5, "Purity: pure monos are exactly the split ones; Z examples")
def test_c05_purity():
    with deadline(120):
        seen = set()
        cat = a2_catalog(2, 2)
        for X, Y in itertools.product(cat, cat):
            for f in rep_hom(X, Y).elements():
                if not f.is_mono():
                    continue
                v = purity_test("mono", f).verdict
                assert v == _brute_retraction(f)
                seen.add(v)
        assert seen == {True, False}
        Z, Zp, Zp2, Z2 = z_module((0,)), z_module((3,)), z_module((9,)), z_module((0, 0))
        assert purity_test("mono", z_map(Z, Z, [[3]])).verdict is False
        assert purity_test("mono", z_map(Zp, Zp2, [[3]])).verdict is False
        assert purity_test("mono", z_map(Z, Z2, [[1], [0]])).verdict is True
        assert purity_test("mono", z_map(Zp, z_module((3, 0)), [[1], [0]])).verdict is True


# 6 -----------------------------------------------------------------------------------------------

def _unimodular(rng, n):
    U = Matrix.identity(ZZ, n)
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        E = [[int(r == c) for c in range(n)] for r in range(n)]
        E[i][j] = rng.randint(-3, 3)
        U = Matrix(ZZ, E, n, n) @ U
    return U


@pytest.mark.criterion(6, "Flat coherence: kernels of surjections of free Z-modules are free")
def test_c06_flat_coherence():
    rng = random.Random(6)
    with deadline(10):
        for _ in range(200):
            n = rng.randint(1, 6)
            m = rng.randint(0, n)
            base = Matrix(ZZ, [[int(i == j) for j in range(n)] for i in range(m)], m, n)
            A = (_unimodular(rng, m) @ base if m else base) @ _unimodular(rng, n)
            f = ModuleMap(FgModule.free(ZZ, n), FgModule.free(ZZ, m), A)
            K = kernel(f)
            assert K.source.torsion_invariants == ()
            assert K.source.free_rank == n - m
            assert (A @ K.matrix).is_zero()
            # saturation: the kernel lattice has trivial elementary divisors (a direct summand)
            if n - m:
                assert all(d == 1 for d in smith_normal_form(K.matrix).invariants)


# 7 -----------------------------------------------------------------------------------------------

@pytest.mark.criterion(7, "Telescope colimits: strict descent, nilpotent tail, identity tail")
def test_c07_telescope_colimits():
    with deadline(1):
        Z = z_module((0,))
        c = colimit_materialize(Telescope.periodic(Z, z_map(Z, Z, [[3]])))
        assert isinstance(c, NotFinitelyGenerated) and c.certificate == "strict-descent"
        V = z_module((3, 3))
        N = z_map(V, V, [[0, 1], [0, 0]])
        c = colimit_materialize(Telescope.periodic(V, N))
        assert isinstance(c, Colimit) and c.rep.is_zero()
        X = z_module((0, 4))
        c = colimit_materialize(Telescope.constant(X))
        assert isinstance(c, Colimit) and c.rep == X


# 8 -----------------------------------------------------------------------------------------------

@pytest.mark.criterion(8, "Eklof self-test: frees over Z filtered, Ext^1 into Z vanishes")
def test_c08_eklof():
    with deadline(30):
        U = [z_module((0,) * r) for r in range(1, 5)]
        r = check_eklof(U, [z_module((0,))], length_bound=4, size_ok=lambda X: X.values[0].n <= 4)
        assert r.precondition and r.checked >= len(U)
        assert r.counterexamples == []


# 9 -----------------------------------------------------------------------------------------------

@pytest.mark.criterion(9, "Hereditary equivalence: three verdicts agree on the three pairs")
def test_c09_hereditary():
    with deadline(30):
        pairs = hereditary_pairs()
        assert len(pairs) == 3
        for name, A, B in pairs:
            r = check_hereditary(A, B)
            assert r.precondition, name
            assert r.agree, (name, r.verdicts)


# 10 ----------------------------------------------------------------------------------------------

@pytest.mark.criterion(10, "Periodicity corpus witnessed; exactness after Yoneda equals admissibility")
def test_c10_periodicity_corpus():
    with deadline(120):
        insts = curated_instances()
        names = {i.name for i in insts}
        assert {"split-a2-simple", "cotorsion-z9", "free-telescope", "z-times3-diag"} <= names
        for inst in insts:
            assert verify_periodicity(inst).verdict is True, inst.name
            s = inst.structure or ambient_structure(inst.seq.left.spec)
            levels = [inst.seq] if isinstance(inst.seq, ShortSeq) else \
                [inst.seq.level(j) for j in range(inst.seq.m + 1)]
            for q in levels:
                assert exact_in_K(s, q).verdict == is_admissible(s, q).verdict, inst.name
        # broader sweep: every realized A_2 class under three structures
        sub = AdditiveSubcat.full(a2(F2))
        cat = [X for X in a2_catalog(2, 2) if not X.is_zero()]
        seqs = enumerate_sequences(cat)
        structures = [split_structure(sub), maximal_structure(sub), custom_structure(sub, [a2_nonsplit()])]
        for st in structures:
            for s in seqs:
                assert exact_in_K(st, s).verdict == is_admissible(st, s).verdict
        # free Z-modules with their maximal structure, including non-admissible pairs
        fz = maximal_structure(free_z_subcat())
        Z, Z2 = z_module((0,)), z_module((0, 0))
        for i, p in [(z_map(Z, Z, [[2]]), z_map(Z, z_module(()), [])),
                     (z_map(Z, Z2, [[1], [0]]), z_map(Z2, Z, [[0, 2]])),
                     (z_map(Z, Z2, [[1], [0]]), z_map(Z2, Z, [[0, 1]]))]:
            q = ShortSeq(i, p)
            assert exact_in_K(fz, q).verdict == is_admissible(fz, q).verdict


# 11 ----------------------------------------------------------------------------------------------

def _brute_ext_count(X, Y):
    """Extensions Y -> E -> X over A_2 are glued by c: X(a) -> Y(b) with
    E(f) = [[Y(f), c], [0, X(f)]]; c and c' are equivalent iff
    c' - c = Y(f) h_a - h_b X(f). Count orbits by enumeration."""
    (xa, xb), (ya, yb) = X.dims, Y.dims
    Xf, Yf = X.actions[0], Y.actions[0]

    def mats(r, c):
        for e in itertools.product(range(2), repeat=r * c):
            yield Matrix(F2, [e[i * c:(i + 1) * c] for i in range(r)], r, c)

    coboundaries = {Yf @ ha - hb @ Xf for ha in mats(ya, xa) for hb in mats(yb, xb)}
    seen, orbits = set(), 0
    for c in mats(yb, xa):
        if c in seen:
            continue
        orbits += 1
        seen.update(c + b for b in coboundaries)
    return orbits


@pytest.mark.criterion(11, "Ext brute-force oracle over A_2, dims <= 2")
def test_c11_ext_oracle():
    with deadline(120):
        cat = a2_catalog(2, 2)
        nonzero = 0
        for X, Y in itertools.product(cat, cat):
            order = ext_group(1, X, Y).order()
            assert order == _brute_ext_count(X, Y), (X, Y)
            nonzero += order > 1
        assert nonzero > 0
