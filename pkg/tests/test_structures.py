import pytest

from exactcat.category import a2, two_a2
from exactcat.corpus import (a2_catalog, a2_nonsplit, a2_projective, a2_simples, free_z_subcat,
                             rank_balanced_objects, rank_balanced_subcat, two_a2_seeds, z_map, z_module)
from exactcat.ext import ext1
from exactcat.rep import ShortSeq, direct_sum, simple, split_sequence
from exactcat.rings import GF
from exactcat.structures import (AdditiveSubcat, OutsideSubcat, check_axioms, custom_structure,
                                 enumerate_sequences, idempotents, is_admissible, karoubi_envelope,
                                 maximal_structure, meet_structures, relative_kernel_test, split_decision,
                                 split_equivalence, split_structure)
from exactcat.verdict import BOUNDED

F2 = GF(2)


@pytest.fixture(scope="module")
def full_a2():
    return AdditiveSubcat.full(a2(F2))


def test_split_and_maximal_on_nonsplit(full_a2):
    s = a2_nonsplit()
    assert is_admissible(split_structure(full_a2), s).verdict is False
    d = is_admissible(maximal_structure(full_a2), s)
    assert d.verdict is True and "relative_test" in d.witness


def test_split_sequences_admitted_everywhere(full_a2):
    for X in a2_catalog(2, 1):
        s = split_sequence(X, X)
        for st in (split_structure(full_a2), maximal_structure(full_a2)):
            assert st.admits(s).verdict is True


@pytest.mark.parametrize("kind", ["split", "maximal"])
def test_axioms_hold(full_a2, kind):
    st = split_structure(full_a2) if kind == "split" else maximal_structure(full_a2)
    rep = check_axioms(st)
    assert rep.passed, [a for a in rep.axioms if a.status is not True]
    d = rep.as_dict()
    assert d["passed"] is True and d["bound"]["multiplicity_bound"] == 3


def test_generated_membership():
    Sa, Sb = a2_simples(F2)
    sub = AdditiveSubcat(a2(F2), "generated", generators=[Sa])
    assert sub.contains(direct_sum([Sa, Sa]).obj) is True
    assert sub.contains(Sb) is False
    with pytest.raises(OutsideSubcat):
        is_admissible(split_structure(sub), a2_nonsplit())


def test_generated_membership_bounded():
    Sa, _ = a2_simples(F2)
    sub = AdditiveSubcat(a2(F2), "generated", generators=[Sa], multiplicity_bound=1)
    assert sub.contains(direct_sum([Sa, Sa]).obj) == BOUNDED


def test_relative_test_on_free_z():
    sub = free_z_subcat()
    Z, Z2 = z_module((0,)), z_module((0, 0))
    i = z_map(Z, Z2, [[1], [0]])
    ok = relative_kernel_test(sub, i, z_map(Z2, Z, [[0, 1]]))
    assert ok.is_rel_kernel and ok.is_rel_cokernel
    bad = relative_kernel_test(sub, i, z_map(Z2, Z, [[0, 2]]))
    assert bad.is_rel_kernel and not bad.is_rel_cokernel
    mx = maximal_structure(sub)
    assert mx.admits(ShortSeq(z_map(Z, Z, [[2]]), z_map(Z, z_module(()), []))).verdict is False


def test_custom_structure_span_and_meet():
    s1, s2 = two_a2_seeds()
    sub = AdditiveSubcat.full(two_a2(F2))
    c1 = custom_structure(sub, [s1], name="c1")
    c2 = custom_structure(sub, [s2], name="c2")
    assert c1.admits(s1).verdict is True and c1.admits(s2).verdict is False
    assert c2.admits(s2).verdict is True and c2.admits(s1).verdict is False
    m = meet_structures(c1, c2)
    assert m.admits(s1).verdict is False and m.admits(s2).verdict is False
    for X in (s1.right, s2.right):
        assert m.admits(split_sequence(X, X)).verdict is True


def test_custom_unsaturated_and_bad_witness(full_a2):
    s = a2_nonsplit()
    c = custom_structure(full_a2, [s], closure="none")
    assert c.saturated
    assert c.admits(s).verdict is True
    Sa, Sb = a2_simples(F2)
    not_exact = ShortSeq(split_sequence(Sb, Sa).i, split_sequence(Sb, Sa).p.scale(0), check=False)
    with pytest.raises(ValueError):
        custom_structure(full_a2, [not_exact])


def test_custom_on_a2_generates_everything(full_a2):
    # a single nonsplit class spans all of Ext^1 on A_2 over F_2
    c = custom_structure(full_a2, [a2_nonsplit()])
    mx = maximal_structure(full_a2)
    objs = [X for X in a2_catalog(2, 1) if not X.is_zero()]
    for s in enumerate_sequences(objs):
        assert c.admits(s).verdict == mx.admits(s).verdict


def test_rank_balanced_split_equivalence_and_karoubi():
    sub = rank_balanced_subcat(F2)
    mx = maximal_structure(sub)
    ev = split_equivalence(mx, rank_balanced_objects(F2, 3))
    assert ev is not None and ev["sequences"] > 0
    k = karoubi_envelope(mx)
    assert k.split_evidence is not None
    Sa, Sb = a2_simples(F2)
    Pa = a2_projective(F2)
    blocks = k.subcat.blocks()
    assert any(b == Sb for b in blocks) and any(b == Pa for b in blocks)
    assert k.subcat.contains(Sa) is True
    # the envelope of a split-only structure stays split
    assert k.admits(a2_nonsplit()).verdict is False
    assert k.admits(split_sequence(Sa, Sb)).verdict is True


def test_idempotents():
    Sa, Sb = a2_simples(F2)
    es, exhaustive = idempotents(direct_sum([Sa, Sb]).obj)
    assert exhaustive and len(es) == 2
    es, _ = idempotents(a2_projective(F2))
    assert es == []


def test_split_decision_certificate():
    X = a2_projective(F2)
    d = split_decision(split_sequence(X, X))
    assert d.verdict is True and d.witness["section"] is not None
    assert split_decision(a2_nonsplit()).verdict is False
