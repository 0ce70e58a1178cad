import itertools

import pytest

from exactcat.category import a2
from exactcat.corpus import a2_catalog, a2_nonsplit, a2_projective, a2_simples, free_z_subcat, z_map, z_module
from exactcat.lex import FpFunctor, evaluate, exact_in_K, fpfun_hom, yoneda
from exactcat.rep import RepMap, ShortSeq, rep_hom, split_sequence
from exactcat.rings import GF
from exactcat.structures import AdditiveSubcat, is_admissible, maximal_structure, split_structure

F2 = GF(2)


@pytest.fixture(scope="module")
def catalog():
    return a2_catalog(2, 1)


def test_yoneda_evaluates_to_hom(catalog):
    for E, X in itertools.product(catalog, catalog):
        assert evaluate(yoneda(E), X).order() == rep_hom(X, E).module.order()


def test_yoneda_is_fully_faithful(catalog):
    for X, Y in itertools.product(catalog, catalog):
        assert fpfun_hom(yoneda(X), yoneda(Y)).module.order() == rep_hom(X, Y).module.order()


def test_hom_from_representable_is_evaluation(catalog):
    Sa, Sb = a2_simples(F2)
    G = FpFunctor(rep_hom(Sb, a2_projective(F2)).basis[0])    # coker(h(Sb) -> h(Pa))
    for X in catalog:
        assert fpfun_hom(yoneda(X), G).module.order() == evaluate(G, X).order()


def test_cokernel_of_times_two():
    Z = z_module((0,))
    F = FpFunctor(z_map(Z, Z, [[2]]))
    assert evaluate(F, Z).canonical() == (0, (2,))
    assert fpfun_hom(F, F).module.canonical() == (0, (2,))
    assert not F.is_representable() and yoneda(Z).is_representable()


def test_ladder_roundtrip():
    Z = z_module((0,))
    F = FpFunctor(z_map(Z, Z, [[2]]))
    H = fpfun_hom(yoneda(Z), F)
    assert H.module.order() == 2
    for c in H.module.elements():
        phi = H.to_map(c)
        assert phi.is_null() == all(v == 0 for v in H.module.reduce(c))
        assert H.coords(phi) == H.module.reduce(c)


def test_exact_in_k_matches_admissibility_on_a2():
    full = AdditiveSubcat.full(a2(F2))
    s = a2_nonsplit()
    assert exact_in_K(split_structure(full), s).verdict is False
    assert exact_in_K(maximal_structure(full), s).verdict is True
    Sa, Sb = a2_simples(F2)
    for st in (split_structure(full), maximal_structure(full)):
        assert exact_in_K(st, split_sequence(Sa, Sb)).verdict is True


def test_exact_in_k_rejects_non_complex():
    full = AdditiveSubcat.full(a2(F2))
    X = a2_projective(F2)
    d = exact_in_K(maximal_structure(full), ShortSeq(RepMap.identity(X), RepMap.identity(X), check=False))
    assert d.verdict is False


def test_exact_in_k_free_z():
    sub = free_z_subcat()
    mx = maximal_structure(sub)
    Z, Z2 = z_module((0,)), z_module((0, 0))
    good = ShortSeq(z_map(Z, Z2, [[1], [0]]), z_map(Z2, Z, [[0, 1]]))
    assert exact_in_K(mx, good).verdict is True
    assert is_admissible(mx, good).verdict is True
