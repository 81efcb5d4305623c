import pytest

from qdual.catalog import catalog_get, quantum_entries
from qdual.cli.presfile import parse_presentation_file, serialize
from qdual.errors import ArityMismatch, HopfCheckFailed
from qdual.hopf import (apply_antipode, apply_coproduct, apply_counit, apply_in_slot, check_hopf,
                        delta_n, delta_via_subsets, iterated_coproduct, multiply_slots)
from qdual.qcoeff import ONE, Q, Q_INV
from qdual.tensor import tensor_concat, tensor_of, unit_tensor


@pytest.fixture(scope="module")
def usl2():
    return catalog_get("Uq_sl2_hat").presentation


@pytest.fixture(scope="module")
def fsl2():
    return catalog_get("Fq_SL2_hat").presentation


def test_tensor_product_slotwise(fsl2):
    a, b = fsl2.gen("a"), fsl2.gen("b")
    lhs = tensor_of([a, a]) * tensor_of([b, b])
    assert lhs == tensor_of([b * a, b * a]).scale(Q * Q)
    assert str(lhs) == "q^2*b*a @ b*a"


def test_tensor_unit_and_concat(fsl2):
    a = fsl2.gen("a")
    x = tensor_of([a, a])
    assert x * unit_tensor(fsl2, 2) == x
    assert tensor_concat(tensor_of([a]), tensor_of([a])) == x


def test_tensor_arity_mismatch(fsl2):
    a = fsl2.gen("a")
    with pytest.raises(ArityMismatch):
        tensor_of([a]) + tensor_of([a, a])


def test_coproduct_is_multiplicative(usl2):
    E, F, G = usl2.gen("E"), usl2.gen("F"), usl2.gen("Gamma")
    dE, dF = apply_coproduct(E), apply_coproduct(F)
    assert dE * dF - dF * dE == apply_coproduct(G)


def test_counit(usl2):
    assert apply_counit(usl2.gen("E")) == 0
    assert apply_counit(usl2.parse("1 + (q-1)*H")) == ONE


def test_heisenberg_dual_coproduct():
    p = catalog_get("Fq_Hn_hat(2)").presentation
    want = p.parse("c @ 1 + 1 @ c + a1 @ b1 + a2 @ b2")
    assert apply_coproduct(p.gen("c")) == want


def test_antipode_of_b(fsl2):
    # the value that satisfies the antipode axiom with a b = q b a
    assert apply_antipode(fsl2.gen("b")) == fsl2.gen("b").scale(-Q_INV)


def test_antipode_with_q_fails(fsl2):
    text = serialize(fsl2)
    lines = [ln for ln in text.splitlines() if not ln.startswith("antipode b ")]
    p = parse_presentation_file("\n".join(lines + ["antipode b = -q*b"]), check=False)
    assert not check_hopf(p).ok


def test_antipode_minus_b_fails(fsl2):
    text = serialize(fsl2)
    lines = [ln for ln in text.splitlines() if not ln.startswith("antipode b ")]
    src = "\n".join(lines + ["antipode b = -b"])
    assert not check_hopf(parse_presentation_file(src, check=False)).ok
    with pytest.raises(HopfCheckFailed):
        parse_presentation_file(src)


@pytest.mark.parametrize("name", ["Uq_sl2_hat", "Fq_SL2_hat", "Uq_hn_a_hat(2)"])
def test_antipode_is_anti_multiplicative(name):
    p = catalog_get(name).presentation
    gens = [p.gen(g.name) for g in p.generators]
    for x in gens:
        for y in gens:
            assert apply_antipode(x * y) == apply_antipode(y) * apply_antipode(x)


def test_antipode_convolution(fsl2):
    for g in fsl2.generators:
        x = fsl2.gen(g.name)
        d = apply_coproduct(x)
        assert multiply_slots(apply_in_slot(d, 0, "S")) == fsl2.scalar(apply_counit(x))


def test_grouplike_delta():
    p = catalog_get("Fq_E2_hat").presentation
    a = p.gen("a")
    for n in range(1, 5):
        assert delta_n(a, n) == tensor_of([a - p.one()] * n)


def test_sl2_delta_formula(usl2):
    E, H = usl2.gen("E"), usl2.gen("H")
    for n in range(1, 5):
        s = (Q - ONE) ** (n - 1)
        assert delta_n(E, n) == tensor_of([H] * (n - 1) + [E]).scale(s)


def test_delta_low_orders(usl2):
    E = usl2.gen("E")
    assert delta_n(E, 0) == delta_via_subsets(E, 0)
    assert delta_n(E, 1) == tensor_of([E])
    assert iterated_coproduct(E, 1) == tensor_of([E])


@pytest.mark.parametrize("name", quantum_entries(1))
def test_delta_subsets_agree(name):
    p = catalog_get(name).presentation
    for g in p.generators:
        x = p.gen(g.name)
        for n in range(4):
            assert delta_n(x, n) == delta_via_subsets(x, n)


@pytest.mark.parametrize("name", quantum_entries(2))
def test_hopf_report(name):
    rep = check_hopf(catalog_get(name).presentation, sample_budget=4)
    assert rep.ok, rep.failures[:3]
