import random

import pytest

from qdual.catalog import catalog_get
from qdual.errors import InputError, UnknownGenerator
from qdual.ncalg import Presentation, commutator, critical_words, overlap_check, random_words
from qdual.qcoeff import ONE, Q, Q_INV


@pytest.fixture(scope="module")
def usl2():
    return catalog_get("Uq_sl2_hat").presentation


@pytest.fixture(scope="module")
def fsl2():
    return catalog_get("Fq_SL2_hat").presentation


def test_sl2_commutator(usl2):
    assert usl2.parse("E*F") == usl2.parse("F*E + Gamma")
    assert str(usl2.parse("E*F")) == "F*E + Gamma"


def test_sl2_dual_q_commute(fsl2):
    assert fsl2.parse("a*b") == fsl2.parse("q*b*a")
    assert str(fsl2.parse("a*b")) == "q*b*a"
    assert fsl2.parse("a*d - q*b*c") == fsl2.one()
    assert str(fsl2.parse("a*d - d*a")) == "(q - q^-1)*b*c"


def test_heisenberg_commutator():
    p = catalog_get("Uq_hn_s_hat(1)").presentation
    assert p.parse("E1*F1") == p.parse("F1*E1 + Gamma")


def test_e2_commuting_pair():
    p = catalog_get("Uq_e2_s_hat").presentation
    assert p.parse("E*F") == p.parse("F*E")


def test_normal_words_are_fixed(fsl2):
    rng = random.Random(3)
    for w in random_words(fsl2, rng, 20, 4):
        x = fsl2.word_element(fsl2.generators[i].name for i in w)
        for v in x.support():
            assert fsl2.is_normal(v)


def test_associativity_on_random_words(usl2):
    rng = random.Random(7)
    words = random_words(usl2, rng, 18, 3)
    xs = [usl2.element({w: ONE}) for w in words]
    for a, b, c in zip(xs, xs[1:], xs[2:]):
        assert (a * b) * c == a * (b * c)


def test_commutator_antisymmetric(usl2):
    E, F = usl2.gen("E"), usl2.gen("F")
    assert commutator(E, F) == -commutator(F, E)
    assert commutator(E, F) == usl2.gen("Gamma")


def test_inverse_pairs():
    p = catalog_get("Fq_E2_hat").presentation
    assert p.parse("a*ainv") == p.one()
    assert p.parse("ainv*a") == p.one()


def test_rule_must_decrease_order():
    p = Presentation("toy", ["x", "y"])
    with pytest.raises(InputError):
        p.add_rule((0, 1), {(1, 0): ONE})


def test_duplicate_rule_rejected():
    p = Presentation("toy", ["x", "y"])
    p.add_rule((1, 0), {(0, 1): Q})
    with pytest.raises(InputError):
        p.add_rule((1, 0), {(0, 1): ONE})


def test_toy_quantum_plane_is_confluent():
    p = Presentation("plane", ["x", "y"])
    p.add_relation(p.parse("y*x - q*x*y"))
    p.freeze()
    assert p.parse("y*y*x") == p.parse("q^2*x*y*y")
    assert overlap_check(p).ok


def test_broken_toy_fails_overlap():
    # y x = q x y, z y = y z, z x = x z + y: z y x reduces to q y^2 or y^2 extra
    p = Presentation("bad", ["x", "y", "z"])
    p.add_relation(p.parse("y*x - q*x*y"))
    p.add_relation(p.parse("z*y - y*z"))
    p.add_relation(p.parse("z*x - x*z - y"))
    p.freeze()
    rep = overlap_check(p)
    assert not rep.ok
    assert rep.failures


def test_unknown_generator(usl2):
    with pytest.raises(UnknownGenerator):
        usl2.parse("E*Z")


def test_critical_words_nonempty(usl2):
    assert critical_words(usl2)


def test_chain_rules_keep_sl3_confluent():
    p = catalog_get("Fq_SL3_hat").presentation
    names = [tuple(p.generators[i].name for i in c) for c in p.chains]
    assert ("r11", "r22", "r33") in names
    r11, r22, r33 = p.gen("r11"), p.gen("r22"), p.gen("r33")
    # r11 r22^k r33 needs the synthesized rules; compare two association orders
    for k in range(1, 5):
        left = (r11 * r22 ** k) * r33
        right = r11 * (r22 ** k * r33)
        assert left == right
    assert overlap_check(p).ok


def test_chain_needs_base_rule():
    p = Presentation("toy", ["x", "y", "z"])
    with pytest.raises(InputError):
        p.add_chain("x", "y", "z")


def test_scalars_mix(usl2):
    E = usl2.gen("E")
    assert (Q * E) * Q_INV == E
    assert E - E == usl2.zero()
    assert 2 * E == E + E


def test_eff_from_k_relations(usl2):
    # K = 1 + (q-1) H and K^-1 = K - (q - q^-1) Gamma; Gamma F = q^-2 F Gamma - (q + q^-1) F K^-1
    kinv = "(1 + (q-1)*H - (q - q^-1)*Gamma)"
    gf = usl2.parse(f"q^-2*F*Gamma - (q + q^-1)*F*{kinv}")
    assert usl2.parse("Gamma*F") == gf
    assert usl2.parse("E*F*F") == usl2.parse("F*F*E + F*Gamma") + gf
