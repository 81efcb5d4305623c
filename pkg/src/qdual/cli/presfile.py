"""The line-oriented presentation file format.

Keywords (one per line, ``#`` starts a comment)::

    algebra NAME
    kind QUEA|QFA|POISSON|COPOISSON
    generators g1, g2, ...          PBW order = listing order
    weight g = INT                  term-order weight (default 1)
    inverse g, ginv
    alias NAME = EXPR               shorthand usable in later expressions
    relation EXPR                   EXPR = 0, oriented by the term order
    chain a, b, c                   a*b^k*c reduces for all k (needs a rule for a*b*c)
    coproduct g = TEXPR
    counit g = QEXPR
    antipode g = EXPR
    lattice free|span: PATTERN
    window g1, g2                   generators whose exponents the lattice solver varies
    grading g = INT
    bracket g, h = EXPR             Poisson bracket table of a classical target
    cobracket g = TEXPR             cobracket table of a classical target

``kind``, ``weight``, ``alias`` and ``window`` are optional.  A POISSON
presentation is commutative: generator commutation rules are added
automatically.  Each relation is reduced by the rules read before it, and
skipped when that leaves nothing.
"""

from __future__ import annotations

import re

from ..errors import HopfCheckFailed, ParseError
from ..ncalg import NcElement, Presentation
from ..qcoeff import LaurentPoly, QFrac, as_coeff
from ..tensor import TensorElement
from .parse import parse_expression

KEYWORDS = ("algebra", "kind", "generators", "weight", "inverse", "alias", "relation",
            "chain", "coproduct", "counit", "antipode", "lattice", "window", "grading",
            "bracket", "cobracket")
KINDS = ("QUEA", "QFA", "POISSON", "COPOISSON")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _lines(src: str):
    for no, raw in enumerate(src.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        stripped = body.lstrip()
        col = len(body) - len(stripped) + 1
        m = re.match(r"([A-Za-z_]+)", stripped)
        if not m or m.group(1) not in KEYWORDS:
            raise ParseError(f"unknown keyword {stripped.split()[0]!r}", no, col)
        kw = m.group(1)
        rest_col = col + len(kw)
        yield no, kw, body[rest_col - 1:], rest_col


def _names(text: str, no: int, col: int) -> list[str]:
    names = [t.strip() for t in text.split(",")]
    for n in names:
        if not _IDENT.match(n):
            raise ParseError(f"bad identifier {n!r}", no, col)
    return names


def _assignment(text: str, no: int, col: int) -> tuple[str, str, int]:
    if "=" not in text:
        raise ParseError("expected 'NAME = ...'", no, col)
    lhs, rhs = text.split("=", 1)
    name = lhs.strip()
    if not _IDENT.match(name):
        raise ParseError(f"bad identifier {name!r}", no, col)
    return name, rhs, col + len(lhs) + 1


def _expr(src: str, p: Presentation, no: int, col: int, raw: bool = False):
    padded = "\n" * (no - 1) + " " * (col - 1) + src
    return parse_expression(padded, p, raw=raw)


def parse_presentation_file(src: str, check: bool = True, hopf_budget: int = 5,
                            max_sample_len: int = 3) -> Presentation:
    """Build and verify a presentation from the file format."""
    from ..drinfeld import LatticeSpec
    from ..hopf import attach_hopf, check_hopf

    name = None
    kind = "QUEA"
    gens: list[str] | None = None
    later = []
    for no, kw, rest, col in _lines(src):
        if kw == "algebra":
            name = rest.strip()
            if not name:
                raise ParseError("algebra needs a name", no, col)
        elif kw == "kind":
            kind = rest.strip().upper()
            if kind not in KINDS:
                raise ParseError(f"kind must be one of {', '.join(KINDS)}", no, col)
        elif kw == "generators":
            if gens is not None:
                raise ParseError("generators declared twice", no, col)
            gens = _names(rest, no, col)
        else:
            if gens is None:
                raise ParseError(f"'{kw}' before 'generators'", no, col)
            later.append((no, kw, rest, col))
    if name is None:
        raise ParseError("missing 'algebra NAME' line")
    if gens is None:
        raise ParseError("missing 'generators' line")
    p = Presentation(name, gens, classification=kind, commutative=kind == "POISSON")
    # weights first: they fix the term order used to orient relations
    for no, kw, rest, col in later:
        if kw == "weight":
            g, val, vcol = _assignment(rest, no, col)
            if g not in p.index:
                raise ParseError(f"weight for unknown generator {g!r}", no, col)
            p.set_weight(g, _int(val, no, vcol))
    if p.commutative:
        add_commutation_rules(p, [tuple(_names(rest, no, col)) for no, kw, rest, col in later
                                  if kw == "inverse"])
    for no, kw, rest, col in later:
        if kw == "inverse":
            pair = _names(rest, no, col)
            if len(pair) != 2 or any(x not in p.index for x in pair):
                raise ParseError("inverse needs two declared generators", no, col)
            try:
                p.set_inverse(*pair)
            except Exception as exc:
                raise ParseError(str(exc), no, col) from exc
        elif kw == "alias":
            a, val, vcol = _assignment(rest, no, col)
            if a in p.index:
                raise ParseError(f"alias {a!r} shadows a generator", no, col)
            v = _expr(val, p, no, vcol, raw=True)
            if isinstance(v, TensorElement):
                raise ParseError("alias must be an algebra element", no, vcol)
            p.add_alias(a, v)
        elif kw == "relation":
            v = _expr(rest, p, no, col, raw=True)
            if isinstance(v, TensorElement):
                raise ParseError("relation must be an algebra element", no, col)
            # reduce by the rules so far so the true leading word orients it
            v = NcElement(p, p.reduce(v.terms))
            if not v:
                continue
            try:
                p.add_relation(v)
            except Exception as exc:  # orientation or duplicate-rule problems
                raise ParseError(str(exc), no, col) from exc
    for no, kw, rest, col in later:
        if kw == "chain":
            names = _names(rest, no, col)
            if len(names) != 3 or any(x not in p.index for x in names):
                raise ParseError("chain needs three declared generators", no, col)
            try:
                p.add_chain(*names)
            except Exception as exc:
                raise ParseError(str(exc), no, col) from exc
    p.freeze()
    cop, cou, ant = {}, {}, {}
    lattice_kind, pattern, window, grading = None, (), (), {}
    for no, kw, rest, col in later:
        if kw in ("coproduct", "counit", "antipode"):
            g, val, vcol = _assignment(rest, no, col)
            if g not in p.index:
                raise ParseError(f"{kw} for unknown generator {g!r}", no, col)
            v = _expr(val, p, no, vcol)
            if kw == "coproduct":
                if not isinstance(v, TensorElement):
                    v = TensorElement(p, 1, {(w,): c for w, c in v.terms.items()})
                if v.arity != 2 and v.terms:
                    raise ParseError(f"coproduct of {g} must have arity 2", no, vcol)
                if not v.terms:
                    v = TensorElement(p, 2, {})
                cop[g] = v
            elif kw == "counit":
                if isinstance(v, TensorElement) or any(w for w in v.terms):
                    raise ParseError(f"counit of {g} must be a scalar", no, vcol)
                cou[g] = v.scalar_part()
            else:
                if isinstance(v, TensorElement):
                    raise ParseError(f"antipode of {g} must be an algebra element", no, vcol)
                ant[g] = v
        elif kw == "lattice":
            m = re.match(r"\s*(free|span)\s*:(.*)$", rest)
            if not m:
                raise ParseError("expected 'lattice free|span: PATTERN'", no, col)
            lattice_kind = "FREE" if m.group(1) == "free" else "SPANNING"
            pattern = tuple(re.findall(r"[A-Za-z_][A-Za-z0-9_]*(?=\^|\s|\*|$)", m.group(2)))
            pattern = tuple(x for x in pattern if x in p.index)
        elif kw == "window":
            window = tuple(_names(rest, no, col))
        elif kw == "grading":
            g, val, vcol = _assignment(rest, no, col)
            grading[g] = _int(val, no, vcol)
        elif kw == "bracket":
            m = re.match(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*,\s*([A-Za-z_][A-Za-z0-9_]*)\s*=(.*)$", rest)
            if not m or m.group(1) not in p.index or m.group(2) not in p.index:
                raise ParseError("expected 'bracket g, h = EXPR' with declared generators", no, col)
            v = _expr(m.group(3), p, no, col + m.start(3))
            if isinstance(v, TensorElement):
                raise ParseError("a bracket must be an algebra element", no, col)
            p.meta.setdefault("bracket", {})[(m.group(1), m.group(2))] = v
        elif kw == "cobracket":
            g, val, vcol = _assignment(rest, no, col)
            if g not in p.index:
                raise ParseError(f"cobracket for unknown generator {g!r}", no, col)
            v = _expr(val, p, no, vcol)
            if not isinstance(v, TensorElement):
                if v:
                    raise ParseError(f"cobracket of {g} must have arity 2", no, vcol)
                v = TensorElement(p, 2, {})
            if v.arity != 2 and v.terms:
                raise ParseError(f"cobracket of {g} must have arity 2", no, vcol)
            p.meta.setdefault("cobracket", {})[g] = v
    for what, table in (("coproduct", cop), ("counit", cou), ("antipode", ant)):
        missing = [g for g in gens if g not in table]
        if missing:
            raise ParseError(f"incomplete Hopf data: no {what} for {', '.join(missing)}")
    attach_hopf(p, cop, cou, ant)
    if lattice_kind is not None:
        p.lattice = LatticeSpec(lattice_kind, pattern or tuple(gens), window, grading)
    if check:
        rep = check_hopf(p, hopf_budget, max_sample_len=max_sample_len)
        if not rep.ok:
            bad = rep.failures[0]
            raise HopfCheckFailed(f"{p.name}: {bad.check} fails on {bad.item}: {bad.detail}")
    return p


def add_commutation_rules(p: Presentation, inverse_pairs=()) -> None:
    """ba -> ab for every pair of generators a < b (inverse pairs excepted)."""
    skip = {frozenset(pr) for pr in inverse_pairs}
    for a in p.generators:
        for b in p.generators:
            if b.pbw_index > a.pbw_index and frozenset((a.name, b.name)) not in skip:
                p.add_rule((b.pbw_index, a.pbw_index), {(a.pbw_index, b.pbw_index): 1})


def _int(text: str, no: int, col: int) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ParseError(f"expected an integer, found {text.strip()!r}", no, col)


# serialization -----------------------------------------------------------------

def _clear_denominators(terms: dict) -> dict:
    den = LaurentPoly.const(1)
    for c in terms.values():
        scaled = as_coeff(c * den)
        if isinstance(scaled, QFrac):
            den = den * scaled.den
    return {w: as_coeff(c * den) for w, c in terms.items()}


def serialize(p: Presentation) -> str:
    """Render p in the file format; ``parse_presentation_file`` inverts this."""
    lines = [f"algebra {p.name}", f"kind {p.classification}",
             "generators " + ", ".join(g.name for g in p.generators)]
    for g in p.generators:
        if g.weight != 1:
            lines.append(f"weight {g.name} = {g.weight}")
    done = set()
    for g in p.generators:
        if g.grouplike_inverse and g.name not in done:
            lines.append(f"inverse {g.name}, {g.grouplike_inverse}")
            done.update((g.name, g.grouplike_inverse))
    for a in p.alias_order:
        lines.append(f"alias {a} = {p.aliases[a]}")
    inv_rules = set()
    for g in p.generators:
        if g.grouplike_inverse:
            i, j = g.pbw_index, p.index[g.grouplike_inverse]
            inv_rules.add((i, j))
    for r in p.rules:
        if r.lhs in inv_rules:
            continue
        if p.commutative and len(r.lhs) == 2 and r.rhs == ((r.lhs[::-1], 1),):
            continue
        terms = {r.lhs: LaurentPoly.const(1)}
        for w, c in r.rhs:
            terms[w] = -c
        terms = _clear_denominators(terms)
        lines.append("relation " + str(NcElement(p, terms)))
    for a, b, c in p.chains:
        lines.append("chain " + ", ".join(p.generators[i].name for i in (a, b, c)))
    h = p.hopf
    if h is not None:
        for g in p.generators:
            lines.append(f"coproduct {g.name} = {h.coproduct_of[g.pbw_index] or '0 @ 0'}")
        for g in p.generators:
            lines.append(f"counit {g.name} = {NcElement(p, {(): h.counit_of[g.pbw_index]}) if h.counit_of[g.pbw_index] else 0}")
        for g in p.generators:
            lines.append(f"antipode {g.name} = {h.antipode_of[g.pbw_index]}")
    lat = p.lattice
    if lat is not None:
        kw = "free" if lat.kind == "FREE" else "span"
        lines.append(f"lattice {kw}: " + " ".join(lat.pattern))
        if lat.window:
            lines.append("window " + ", ".join(lat.window))
        for g, v in sorted(lat.grading.items(), key=lambda kv: p.index.get(kv[0], 0)):
            lines.append(f"grading {g} = {v}")
    for (a, b), v in p.meta.get("bracket", {}).items():
        lines.append(f"bracket {a}, {b} = {v}")
    for g, v in p.meta.get("cobracket", {}).items():
        lines.append(f"cobracket {g} = {v or '0 @ 0'}")
    return "\n".join(lines) + "\n"


def presentations_equal(a: Presentation, b: Presentation) -> bool:
    if [(g.name, g.grouplike_inverse, g.weight) for g in a.generators] != \
            [(g.name, g.grouplike_inverse, g.weight) for g in b.generators]:
        return False
    if {r.lhs: dict(r.rhs) for r in a.rules} != {r.lhs: dict(r.rhs) for r in b.rules}:
        return False
    if a.classification != b.classification or list(a.chains) != list(b.chains):
        return False
    ha, hb = a.hopf, b.hopf
    if (ha is None) != (hb is None):
        return False
    if ha is not None:
        if {k: v.terms for k, v in ha.coproduct_of.items()} != {k: v.terms for k, v in hb.coproduct_of.items()}:
            return False
        if ha.counit_of != hb.counit_of:
            return False
        if {k: v.terms for k, v in ha.antipode_of.items()} != {k: v.terms for k, v in hb.antipode_of.items()}:
            return False
    la, lb = a.lattice, b.lattice
    if (la is None) != (lb is None):
        return False
    return la is None or (la.kind, la.pattern, la.window, la.grading) == (lb.kind, lb.pattern, lb.window, lb.grading)
