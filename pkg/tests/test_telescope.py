import itertools
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from exactcat.category import a2
from exactcat.corpus import a2_catalog, a2_nonsplit, a2_simples, z_map, z_module
from exactcat.rep import RepMap, rep_hom, split_sequence
from exactcat.rings import GF
from exactcat.structures import AdditiveSubcat, OutsideSubcat, maximal_structure, split_structure
from exactcat.telescope import (Colimit, ColimitBounded, FpToTelescopeMap, NotFinitelyGenerated, Telescope,
                                TelescopeMap, TelescopeSeq, class_is_zero, colimit_materialize,
                                factors_through_class, flat_test, hom_from_fp, is_admissible_ind,
                                materialize_seq, purity_test, telescope_sum)

F2 = GF(2)
Z = z_module((0,))


def times(n, X=Z):
    return z_map(X, X, [[n if i == j else 0 for j in range(X.values[0].n)] for i in range(X.values[0].n)])


# construction -----------------------------------------------------------------------------------

def test_telescope_validation():
    with pytest.raises(ValueError):
        Telescope([Z, z_module((0, 0))], [])
    with pytest.raises(ValueError):
        Telescope([Z], [], z_map(Z, z_module((0, 0)), [[1], [0]]))
    T = Telescope([z_module((3,)), z_module((9,))], [z_map(z_module((3,)), z_module((9,)), [[3]])],
                  times(3, z_module((9,))))
    assert T.m == 1 and T.stage(5) == z_module((9,))
    assert T.transition(0, 2).components[0].rows == ((0,),)


def test_ladder_must_commute():
    A = Telescope.periodic(Z, times(2))
    B = Telescope.periodic(Z, times(3))
    with pytest.raises(ValueError):
        TelescopeMap(A, B, [times(1)])
    TelescopeMap(A, Telescope.periodic(Z, times(2)), [times(5)])


def test_telescope_sum():
    S = telescope_sum([Telescope.periodic(Z, times(3)), Telescope.constant(Z)])
    assert S.tail_object == z_module((0, 0))
    assert isinstance(colimit_materialize(S), NotFinitelyGenerated)


# colimits ---------------------------------------------------------------------------------------

def test_strict_descent_certificate():
    c = colimit_materialize(Telescope.periodic(Z, times(3)))
    assert c.certificate == "strict-descent"
    assert [x[0][1] for x in c.detail["cokernels_of_powers"]] == [(3,), (9,), (27,)]


def test_nilpotent_and_identity_tails():
    V = z_module((3, 3))
    assert colimit_materialize(Telescope.periodic(V, z_map(V, V, [[0, 1], [0, 0]]))).rep.is_zero()
    c = colimit_materialize(Telescope.constant(V))
    assert c.rep == V and c.stage == 0


def test_unstable_kernel_is_bounded():
    # the nilpotent shift on Z^3 needs three steps before its kernel chain stops growing
    V = z_module((0, 0, 0))
    shift = z_map(V, V, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert isinstance(colimit_materialize(Telescope.periodic(V, shift), stage_bound=1), ColimitBounded)
    assert colimit_materialize(Telescope.periodic(V, shift), stage_bound=4).rep.is_zero()


def _orbit_size(moduli, matrix):
    # independent oracle: iterate the map on the full element set of a finite group
    elems = set(itertools.product(*[range(d) for d in moduli]))

    def apply(v):
        return tuple(sum(matrix[i][j] * v[j] for j in range(len(v))) % moduli[i] for i in range(len(v)))

    while True:
        nxt = {apply(v) for v in elems}
        if len(nxt) == len(elems):
            return len(elems)
        elems = nxt


@st.composite
def finite_endos(draw):
    """A well-defined endomorphism of a finite abelian group: entry (i, j) is a multiple of d_i / gcd(d_i, d_j)."""
    moduli = tuple(draw(st.lists(st.sampled_from([2, 3, 4, 9]), min_size=1, max_size=3)))
    n = len(moduli)
    rows = [[draw(st.integers(0, 8)) * (moduli[i] // gcd(moduli[i], moduli[j])) for j in range(n)]
            for i in range(n)]
    V = z_module(moduli)
    return V, z_map(V, V, rows), rows


@settings(max_examples=60, deadline=None)
@given(finite_endos())
def test_colimit_order_matches_eventual_image(data):
    V, f, rows = data
    c = colimit_materialize(Telescope.periodic(V, f))
    assert isinstance(c, Colimit)
    assert c.rep.values[0].order() == _orbit_size(V.values[0].moduli, rows)


@settings(max_examples=40, deadline=None)
@given(finite_endos(), st.sampled_from([(2,), (3,), (9,), (0,)]))
def test_hom_from_fp_matches_hom_into_colimit(data, smod):
    V, f, _ = data
    S = z_module(smod)
    T = Telescope.periodic(V, f)
    h = hom_from_fp(S, T)
    c = colimit_materialize(T)
    assert h.stabilized
    assert h.module.order() == rep_hom(S, c.rep).module.order()


def test_hom_from_fp_nonstable():
    h = hom_from_fp(Z, Telescope.periodic(Z, times(3)))
    assert not h.stabilized and h.module is None


def test_class_is_zero_and_factorization():
    T = Telescope.periodic(z_module((9,)), times(3, z_module((9,))))
    c = FpToTelescopeMap(0, RepMap.identity(z_module((9,))))
    assert class_is_zero(c, T) is True
    T3 = Telescope.periodic(Z, times(3))
    c = FpToTelescopeMap(0, RepMap.identity(Z))
    assert class_is_zero(c, T3) is False
    d = factors_through_class(c, T3, [z_module((3,))])
    assert d.verdict is False and d.witness["obstruction"] == "image"
    assert factors_through_class(c, T3, [Z]).verdict is True


# purity and flatness ---------------------------------------------------------------------------

def test_purity_z():
    assert purity_test("mono", times(3)).verdict is False
    assert purity_test("epi", z_map(Z, z_module((3,)), [[1]])).verdict is False
    assert purity_test("mono", z_map(Z, z_module((0, 0)), [[1], [0]])).verdict is True
    assert purity_test("epi", z_map(z_module((0, 0)), Z, [[0, 1]])).verdict is True
    with pytest.raises(ValueError):
        purity_test("iso", times(1))


def test_purity_constant_telescope_agrees():
    cat = a2_catalog(2, 1)
    for X, Y in itertools.product(cat, cat):
        for f in rep_hom(X, Y).elements():
            if f.is_mono():
                assert purity_test("mono", TelescopeMap.constant(f)).verdict == purity_test("mono", f).verdict


def test_flatness():
    assert flat_test(Telescope.periodic(Z, times(3))).verdict is True
    assert flat_test(Telescope.constant(z_module((3,)))).verdict is False
    assert flat_test(Telescope.constant(z_module((0, 0)))).verdict is True
    # Z/3 -3-> Z/9 -3-> ... has colimit 0, so it is flat
    T = Telescope([z_module((3,)), z_module((9,))], [z_map(z_module((3,)), z_module((9,)), [[3]])],
                  times(3, z_module((9,))))
    assert flat_test(T).verdict is True


# admissibility of telescope sequences ----------------------------------------------------------

def test_admissible_ind_levelwise_and_colimit():
    sub = AdditiveSubcat.full(a2(F2))
    s = a2_nonsplit()
    sigma = TelescopeSeq.constant(s)
    assert is_admissible_ind(split_structure(sub), sigma).verdict is False
    assert is_admissible_ind(maximal_structure(sub), sigma).verdict is True
    seq, cols = materialize_seq(sigma)
    assert seq == s


def test_admissible_ind_times_p_sequence():
    from exactcat.homlab import ambient_structure
    Z2 = z_module((0, 0))
    L = Telescope.periodic(Z, times(3))
    M = Telescope.periodic(Z2, z_map(Z2, Z2, [[3, 0], [0, 1]]))
    R = Telescope.constant(Z)
    sigma = TelescopeSeq(TelescopeMap(L, M, [z_map(Z, Z2, [[1], [0]])]),
                         TelescopeMap(M, R, [z_map(Z2, Z, [[0, 1]])]))
    assert is_admissible_ind(ambient_structure(Z.spec), sigma).verdict is True


def test_admissible_ind_outside_subcat():
    Sa, Sb = a2_simples(F2)
    sub = AdditiveSubcat(a2(F2), "generated", generators=[Sa])
    with pytest.raises(OutsideSubcat):
        is_admissible_ind(split_structure(sub), TelescopeSeq.constant(split_sequence(Sb, Sa)))
