import itertools
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from exactcat.matrix import Matrix
from exactcat.modules import (FgModule, HomModule, ModuleMap, cokernel, direct_sum, image, is_injective,
                              is_isomorphism, is_surjective, kernel, module_canonical_form)
from exactcat.rings import GF, ZZ

orders = st.sampled_from([0, 0, 2, 3, 4, 6, 9])


def test_module_basics():
    M = FgModule(ZZ, (0, 6, 4))
    assert M.free_rank == 1
    assert M.torsion_invariants == (2, 12)
    assert M.describe() == "Z + Z/2 + Z/12"
    assert FgModule(ZZ, (6,)).order() == 6
    assert M.order() is None
    with pytest.raises(ValueError):
        FgModule(ZZ, (1,))
    with pytest.raises(ValueError):
        FgModule(GF(2), (2,))


def test_canonical_form_from_presentation():
    # Z^2 / <(2, 0), (0, 3)> = Z/6
    M = module_canonical_form(Matrix(ZZ, [[2, 0], [0, 3]]))
    assert M.canonical() == (0, (6,))


def test_ill_defined_map_rejected():
    with pytest.raises(ValueError):
        ModuleMap(FgModule(ZZ, (2,)), FgModule(ZZ, (0,)), Matrix(ZZ, [[1]]))
    ModuleMap(FgModule(ZZ, (2,)), FgModule(ZZ, (4,)), Matrix(ZZ, [[2]]))


@settings(max_examples=60, deadline=None)
@given(orders, orders)
def test_hom_order_matches_gcd(a, b):
    H = HomModule(FgModule(ZZ, (a,)), FgModule(ZZ, (b,)))
    if a == 0 and b == 0:
        assert H.module.canonical() == (1, ())
    elif a == 0:
        assert H.module.order() == b
    elif b == 0:
        assert H.module.is_zero()
    else:
        assert H.module.order() == gcd(a, b)


def test_hom_brute_force():
    # every matrix Z/4 -> Z/6 that is well defined, counted directly
    M, N = FgModule(ZZ, (4,)), FgModule(ZZ, (6,))
    good = sum(1 for v in range(6) if (4 * v) % 6 == 0)
    assert HomModule(M, N).module.order() == good == 2


def _random_map(draw, M, N):
    H = HomModule(M, N)
    coords = [draw(st.integers(0, d - 1 if d else 5)) for d in H.module.moduli]
    return H.to_map(coords)


@st.composite
def module_maps(draw):
    M = FgModule(ZZ, tuple(draw(st.lists(orders, max_size=3))))
    N = FgModule(ZZ, tuple(draw(st.lists(orders, max_size=3))))
    return _random_map(draw, M, N)


@settings(max_examples=100, deadline=None)
@given(module_maps())
def test_kernel_cokernel_properties(f):
    K = kernel(f)
    assert is_injective(K)
    assert (f.matrix @ K.matrix).reduce_rows(f.target.moduli).is_zero()
    C = cokernel(f)
    assert is_surjective(C.proj)
    comp = C.proj.matrix @ f.matrix
    assert comp.reduce_rows(C.module.moduli).is_zero()
    I = image(f)
    assert is_injective(I)
    # first isomorphism theorem on finite modules
    if f.source.order() is not None and f.target.order() is not None:
        assert K.source.order() * I.source.order() == f.source.order()
        assert I.source.order() * C.module.order() == f.target.order()


def test_identity_is_iso_and_sum():
    M = FgModule(ZZ, (0, 3))
    assert is_isomorphism(ModuleMap.identity(M))
    S = direct_sum([M, FgModule(ZZ, (2,))])
    assert S.canonical() == (1, (6,))


def test_elements_enumeration():
    M = FgModule(GF(3), (0, 0))
    elems = list(M.elements())
    assert len(elems) == 9 == M.order()
    assert len({tuple(e) for e in itertools.islice(elems, 9)}) == 9
