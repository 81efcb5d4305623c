import pytest

from qdual.catalog import catalog_get
from qdual.drinfeld import (INCONCLUSIVE, MEMBER, NOT_MEMBER, Substitution, double_tilde_check,
                            lattice_valuation, scaled, tilde_F_presentation, tilde_member,
                            tilde_presentation, valuation_profile, verify_substitution)
from qdual.errors import InputError
from qdual.qcoeff import INF, ONE, Q


@pytest.fixture(scope="module")
def usl2():
    return catalog_get("Uq_sl2_hat").presentation


def test_excluded_generator_has_early_witness(usl2):
    v = tilde_member(usl2.gen("E"), usl2, 4)
    assert v.verdict == NOT_MEMBER
    assert v.witness == 1


def test_scaled_generator_is_member(usl2):
    v = tilde_member(usl2.parse("(q-1)*E"), usl2, 4)
    assert v.verdict == MEMBER
    assert v.witness is None


def test_profile_grows_linearly(usl2):
    x = usl2.parse("(q-1)*E")
    prof = dict(valuation_profile(x, usl2, 4))
    assert all(prof[n] >= n for n in range(1, 5))


def test_scalars_in_tilde(usl2):
    assert tilde_member(usl2.one(), usl2, 3).verdict == MEMBER
    assert tilde_member(usl2.zero(), usl2, 3).verdict == MEMBER


def test_lattice_valuation(usl2):
    assert lattice_valuation(usl2.gen("E"), usl2) == 0
    assert lattice_valuation(usl2.parse("(q-1)^2*E*F"), usl2) == 2
    assert lattice_valuation(usl2.zero(), usl2) == INF


def test_scaled_helper(usl2):
    assert scaled(usl2.gen("E"), 1) == usl2.gen("E").scale(Q - ONE)


def test_bad_max_n(usl2):
    with pytest.raises(InputError):
        tilde_member(usl2.gen("E"), usl2, 0)


def test_verdict_names():
    assert {MEMBER, NOT_MEMBER, INCONCLUSIVE} == {"MEMBER-UP-TO-BOUND", "NOT-MEMBER", "INCONCLUSIVE"}


@pytest.mark.parametrize("name", ["Uq_sl2_hat", "Uq_e2_a_hat", "Uq_hn_s_hat(2)"])
def test_tilde_quea(name):
    t = tilde_presentation(catalog_get(name))
    assert t.ok, t.failures()[:3]


@pytest.mark.parametrize("name", ["Fq_SL2_hat", "Fq_E2_hat", "Fq_Hn_hat(2)"])
def test_tilde_qfsha(name):
    t = tilde_F_presentation(catalog_get(name))
    assert t.ok, t.failures()[:3]


def test_wrong_kind_rejected():
    with pytest.raises(InputError):
        tilde_F_presentation(catalog_get("Uq_sl2_hat"))
    with pytest.raises(InputError):
        tilde_presentation(catalog_get("Fq_SL2_hat"))


def test_corrupted_substitution_is_caught(usl2):
    t = tilde_presentation(catalog_get("Uq_sl2_hat"))
    gens = t.presentation.generators
    images = {g.name: t.substitution.images[g.pbw_index] for g in gens}
    # send Edot to E instead of (q-1) E
    images["Edot"] = usl2.gen("E")
    phi = Substitution(t.presentation, usl2, images)
    bad = [c for c in verify_substitution(phi, []) if not c.ok]
    assert "relation" in {c.check for c in bad}


def test_double_tilde_sl2():
    rep = double_tilde_check(catalog_get("Uq_sl2_hat"), 3)
    assert rep.ok
    assert rep.double_generators


def test_double_tilde_heisenberg_dual():
    rep = double_tilde_check(catalog_get("Fq_Hn_hat(1)"), 3)
    assert rep.ok
