import pytest

from exactcat.category import a2
from exactcat.corpus import a2_nonsplit, a2_projective, a2_simples, z_map, z_module
from exactcat.homlab import (Filtration, NotFoundWithinBound, OmegaFiltration, PeriodicityInstance,
                             ambient_structure, check_eklof, check_hereditary, ext_vanishes, fil_witness,
                             fp_projective_test, orthogonal_test, verify_periodicity)
from exactcat.rep import split_sequence
from exactcat.rings import GF
from exactcat.structures import AdditiveSubcat, split_structure
from exactcat.telescope import Telescope
from exactcat.verdict import BOUNDED

F2 = GF(2)
Z = z_module((0,))


def times(n, X=Z):
    return z_map(X, X, [[n]])


def z_third():
    # Z -3-> Z -3-> ... : the colimit is Z[1/3]
    return Telescope.periodic(Z, times(3))


# Ext against telescopes -------------------------------------------------------------------------

@pytest.mark.parametrize("mod, expected", [((3,), True), ((0,), False), ((9,), True), ((2,), True)])
def test_ext1_out_of_z_third(mod, expected):
    assert ext_vanishes(1, z_third(), z_module(mod)).verdict is expected


def test_ext_lim1_detail():
    d = ext_vanishes(1, z_third(), Z)
    assert d.witness["lim1_vanishes"] is False


def test_ext_into_telescope():
    # Ext^1(Z/3, colim(Z/9 -3-> Z/9)) = Ext^1(Z/3, 0) = 0
    T = Telescope.periodic(z_module((9,)), times(3, z_module((9,))))
    assert ext_vanishes(1, z_module((3,)), T).verdict is True
    assert ext_vanishes(1, z_module((3,)), Telescope.constant(z_module((3,)))).verdict is False
    with pytest.raises(ValueError):
        ext_vanishes(1, T, T)


def test_ext_plain_objects():
    Sa, Sb = a2_simples(F2)
    assert ext_vanishes(1, Sa, Sb).verdict is False
    assert ext_vanishes(1, Sb, Sa).verdict is True
    assert ext_vanishes(2, Sa, Sb).verdict is True
    assert ext_vanishes(0, Sb, Sa).verdict is True


def test_orthogonal_test():
    out = orthogonal_test("right", [z_module((3,))], Z)
    assert out["perp1"] is False and out["perp_ge1"] is False
    out = orthogonal_test("left", [z_module((3,))], z_module((0, 0)))
    assert out["perp1"] is True and out["perp_ge1"] is True
    with pytest.raises(ValueError):
        orthogonal_test("up", [], Z)


# filtrations ------------------------------------------------------------------------------------

def test_fil_witness_z9_by_z3():
    fil = fil_witness(z_module((9,)), [z_module((3,))])
    assert isinstance(fil, Filtration)
    assert fil.length == 2 and fil.validate()


def test_fil_witness_reports_torsion_obstruction():
    out = fil_witness(Z, [z_module((3,))])
    assert isinstance(out, NotFoundWithinBound) and not out
    assert out.obstruction.startswith("torsion")


def test_fil_witness_a2():
    Sa, Sb = a2_simples(F2)
    fil = fil_witness(a2_projective(F2), [Sa, Sb])
    assert fil.length == 2 and fil.validate()
    assert not fil_witness(a2_projective(F2), [Sa])


def test_fil_witness_telescope_stages():
    Z2 = z_module((0, 0))
    T = Telescope([Z, Z2], [z_map(Z, Z2, [[1], [0]])], z_map(Z2, Z2, [[1, 0], [0, 1]]))
    fil = fil_witness(T, [Z])
    assert isinstance(fil, OmegaFiltration)
    # the stage quotients of Z -3-> Z are Z and Z/3
    assert not fil_witness(z_third(), [Z])
    assert isinstance(fil_witness(z_third(), [Z, z_module((3,))]), OmegaFiltration)


# Eklof and hereditary checks --------------------------------------------------------------------

def test_eklof_a2():
    Sa, Sb = a2_simples(F2)
    r = check_eklof([Sb], [Sa], length_bound=3)
    assert r.precondition and r.passed and r.checked >= 1
    r = check_eklof([Sa], [Sb], length_bound=2)
    assert not r.precondition and not r.passed


def test_hereditary_a2_projectives():
    Sa, Sb = a2_simples(F2)
    Pa = a2_projective(F2)
    r = check_hereditary([Pa, Sb], [Sa, Sb, Pa])
    assert r.agree


# fp-projectivity and periodicity ----------------------------------------------------------------

def test_fp_projective():
    assert fp_projective_test(z_module((3,))).verdict is True
    assert fp_projective_test(Telescope.constant(Z)).verdict is True
    assert fp_projective_test(z_third()).verdict is True
    split_z = split_structure(AdditiveSubcat.full(Z.spec))
    assert fp_projective_test(z_third(), split_z).verdict == BOUNDED


def test_periodicity_instance_validation():
    Sa, Sb = a2_simples(F2)
    with pytest.raises(ValueError):
        PeriodicityInstance("FpProjective", split_sequence(Sa, Sb))
    with pytest.raises(ValueError):
        PeriodicityInstance("Bogus", split_sequence(Sa, Sa))
    PeriodicityInstance("MaxLC", a2_nonsplit(), periodic=False)


def test_verify_periodicity_split():
    Sa, _ = a2_simples(F2)
    rep = verify_periodicity(PeriodicityInstance("FpProjective", split_sequence(Sa, Sa), name="s"))
    assert rep.verdict is True
    assert rep.as_dict()["name"] == "s"
    assert ambient_structure(a2(F2)).kind == "maximal"
