import re

import pytest

from qdual.catalog import (CLASSICAL_NAMES, QUANTUM_NAMES, canonical_name, catalog_get, catalog_names,
                           det_q_terms, quantum_entries)
from qdual.cli.presfile import parse_presentation_file, presentations_equal, serialize
from qdual.errors import BadParameter, ParseError, UnknownEntry


def test_eleven_quantum_bases():
    assert len(QUANTUM_NAMES) == 11
    assert len(quantum_entries(1)) == 11
    assert len(quantum_entries(3)) == 17


def test_names_listing():
    names = catalog_names()
    assert "Fq_Hn_hat(n)" in names
    assert set(CLASSICAL_NAMES) <= {n.split("(")[0] for n in names}


def test_family_parameter():
    assert canonical_name("Fq_Hn_hat( 2 )") == "Fq_Hn_hat(2)"
    assert canonical_name("Fq_Hn_hat") == "Fq_Hn_hat(1)"
    with pytest.raises(BadParameter):
        catalog_get("Fq_Hn_hat(0)")
    with pytest.raises(BadParameter):
        catalog_get("Fq_Hn_hat(x)")


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        catalog_get("Uq_sl7_hat")


def test_sl2_dual_determinant():
    p = catalog_get("Fq_SL2_hat").presentation
    assert p.parse("a*d - q*b*c") == p.one()


def test_sl3_qdet():
    terms = det_q_terms()
    assert len(terms) == 6
    assert sorted(l for l, _ in terms) == [0, 1, 1, 2, 2, 3]
    p = catalog_get("Fq_SL3_hat").presentation
    expr = " + ".join(f"(-q)^{l}*" + "*".join(w) for l, w in terms)
    assert p.parse(expr) == p.one()


def test_entry_metadata():
    e = catalog_get("Uq_sl2_hat")
    assert e.kind == "QUEA"
    assert e.excluded
    assert e.paper_section
    assert "§" not in e.paper_section and not re.search(r"\d+\.\d+", e.paper_section)
    assert catalog_get("Fq_SL2_hat").kind == "QFA"


@pytest.mark.parametrize("name", quantum_entries(2) + ["U_sl2star", "F_aHnstar(2)"])
def test_round_trip(name):
    p = catalog_get(name).presentation
    text = serialize(p)
    back = parse_presentation_file(text, check=False)
    assert presentations_equal(p, back)
    assert serialize(back) == text


def test_round_trip_e2_dual_checked():
    p = catalog_get("Fq_E2_hat").presentation
    assert presentations_equal(p, parse_presentation_file(serialize(p)))


def test_missing_antipode_is_parse_error():
    text = serialize(catalog_get("Fq_SL2_hat").presentation)
    src = "\n".join(ln for ln in text.splitlines() if not ln.startswith("antipode b "))
    with pytest.raises(ParseError):
        parse_presentation_file(src)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as exc:
        parse_presentation_file("algebra X\ngenerators x, y\nrelation x*y - * y*x\n")
    assert "3" in str(exc.value)


def test_unknown_keyword():
    with pytest.raises(ParseError):
        parse_presentation_file("algebra X\ngenerators x\nfrobnicate x\n")
