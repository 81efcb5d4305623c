"""Specialization at q = 1 and the induced (co-)Poisson structures.

The limit of a lattice presentation is again a ``Presentation`` with
rational coefficients: relations are made primitive in (q-1), evaluated at
q = 1 and completed to a confluent system.  Brackets are the standard
semiclassical ones, ((xy - yx)/(q-1))|_{q=1} and ((Delta - Delta^op)/(q-1))|_{q=1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .cli.presfile import add_commutation_rules
from .drinfeld import Substitution, lattice_valuation, monomial_coordinates, verify_substitution
from .errors import (InputError, NotCocommutativeAtLimit, NotCommutativeAtLimit,
                     VerificationFailed)
from .hopf import CheckEntry, apply_coproduct, attach_hopf
from .ncalg import NcElement, Presentation
from .qcoeff import ONE, Q_MINUS_1, LaurentPoly, NotDivisible, as_coeff, eval1, valuation
from .tensor import TensorElement, tensor_multiply

POISSON = "POISSON"
COPOISSON = "COPOISSON"


@dataclass
class PoissonPresentation:
    """q = 1 limit of ``source``; exactly one of the two tables is filled."""

    source: Presentation
    limit: Presentation
    marker: str
    bracket: dict = field(default_factory=dict)
    cobracket: dict = field(default_factory=dict)

    @property
    def generators(self) -> list:
        return [g.name for g in self.limit.generators]

    def table_rows(self) -> list:
        if self.marker == POISSON:
            return [(f"{{{a}, {b}}}", str(v)) for (a, b), v in self.bracket.items()]
        return [(f"delta({g})", str(v) if v else "0") for g, v in self.cobracket.items()]


def _primitive_at_1(terms: dict) -> dict:
    """Scale by the power of (q-1) that makes the coefficients primitive, then evaluate."""
    v = min(valuation(c) for c in terms.values())
    scale = ONE / Q_MINUS_1 ** v if v > 0 else Q_MINUS_1 ** (-v)
    out = {}
    for w, c in terms.items():
        e = eval1(as_coeff(c * scale))
        if e:
            out[w] = LaurentPoly.const(e)
    return out


def _build_limit(p: Presentation, marker: str) -> Presentation:
    commutative = marker == POISSON
    lim = Presentation(p.name + "@q=1", [g.name for g in p.generators],
                       classification=p.classification, commutative=commutative)
    for g in p.generators:
        if g.weight != 1:
            lim.set_weight(g.name, g.weight)
    pairs = []
    for g in p.generators:
        if g.grouplike_inverse and g.pbw_index < p.index[g.grouplike_inverse]:
            pairs.append((g.name, g.grouplike_inverse))
            lim.set_inverse(g.name, g.grouplike_inverse)
    if commutative:
        add_commutation_rules(lim, pairs)
    pending = []
    inv_lhs = {(p.index[a], p.index[b]) for a, b in pairs} | {(p.index[b], p.index[a]) for a, b in pairs}
    for r in p.rules:
        if r.lhs in inv_lhs:
            continue
        terms = {r.lhs: ONE}
        for w, c in r.rhs:
            terms[w] = terms.get(w, 0) - c
        rel = _primitive_at_1(terms)
        if rel:
            pending.append(rel)
    chains = [tuple(p.generators[i].name for i in ch) for ch in p.chains]
    for _ in range(8):
        for rel in pending:
            red = lim.reduce(rel)
            if red:
                lim.add_relation(red)
        for ch in list(chains):
            if tuple(lim.index[x] for x in ch) in lim._rules:
                lim.add_chain(*ch)
                chains.remove(ch)
        pending = _critical_differences(lim)
        if not pending:
            break
    else:
        raise VerificationFailed(f"{p.name}: the q = 1 relations did not complete to a confluent system")
    lim.freeze()
    return lim


def _critical_differences(p: Presentation) -> list:
    """Unresolved critical pairs of p, as difference polynomials."""
    from .ncalg import _one_step, critical_words

    out = []
    for cw, p1, l1, p2, l2 in critical_words(p):
        left = p.reduce(_one_step(p, cw, p1, l1))
        right = p.reduce(_one_step(p, cw, p2, l2))
        diff = (NcElement(p, left) - NcElement(p, right)).terms
        if diff:
            out.append(diff)
    return out


def _lift(x: NcElement, p: Presentation) -> NcElement:
    """Canonical lift of a limit element: same words, rational coefficients."""
    return p.element({w: c for w, c in x.terms.items()})


def specialize_element(x, p: Presentation, lim: Presentation):
    """Image mod (q-1) of a lattice element (NcElement or TensorElement)."""
    coords = monomial_coordinates(x, p)
    if isinstance(x, NcElement):
        out = lim.zero()
        for (w,), c in coords.items():
            if valuation(c) < 0:
                raise NotDivisible(f"{x} is not in the lattice of {p.name}")
            e = eval1(c)
            if e:
                out = out + lim.element({w: e})
        return out
    raw = {}
    for ws, c in coords.items():
        if valuation(c) < 0:
            raise NotDivisible(f"tensor is not in the lattice of {p.name}")
        e = eval1(c)
        if e:
            raw[ws] = raw.get(ws, 0) + e
    from .tensor import tensor_normalize

    return tensor_normalize(lim, x.arity, {k: v for k, v in raw.items() if v})


def _limit_marker(p: Presentation) -> str:
    # function algebras (and the tilde of a QUEA) become Poisson; enveloping
    # algebras (and the tilde of a QFA) become co-Poisson
    return POISSON if p.classification in ("QFA", POISSON) else COPOISSON


def specialize(p: Presentation, marker: str | None = None) -> PoissonPresentation:
    """The q = 1 limit with its bracket or cobracket table on generators."""
    hit = p.__dict__.get("_limit")
    if hit is not None and (marker is None or hit.marker == marker):
        return hit
    if p.hopf is None or p.lattice is None:
        raise InputError(f"{p.name} needs Hopf and lattice data to specialize")
    marker = marker or _limit_marker(p)
    gens = [p.gen(g.name) for g in p.generators]
    if marker == POISSON:
        for (i, x), (j, y) in iproduct(enumerate(gens), repeat=2):
            if i < j:
                c = x * y - y * x
                if lattice_valuation(c, p) < 1:
                    raise NotCommutativeAtLimit(
                        f"{p.name}: [{p.generators[i].name}, {p.generators[j].name}] = {c} "
                        "does not vanish at q = 1")
    else:
        for g, x in zip(p.generators, gens):
            d = apply_coproduct(x)
            c = d - d.flip()
            if lattice_valuation(c, p) < 1:
                raise NotCocommutativeAtLimit(f"{p.name}: Delta({g.name}) is not cocommutative at q = 1")
    lim = _build_limit(p, marker)
    h = p.hopf
    cop, cou, ant = {}, {}, {}
    for g in p.generators:
        i = g.pbw_index
        cop[g.name] = specialize_element(h.coproduct_of[i], p, lim)
        if not cop[g.name].terms:
            cop[g.name] = TensorElement(lim, 2, {})
        cou[g.name] = LaurentPoly.const(eval1(h.counit_of[i]))
        ant[g.name] = specialize_element(h.antipode_of[i], p, lim)
    attach_hopf(lim, cop, cou, ant)
    pp = PoissonPresentation(p, lim, marker)
    p.__dict__["_limit"] = pp
    if marker == POISSON:
        for i, a in enumerate(p.generators):
            for b in p.generators[i + 1:]:
                pp.bracket[(a.name, b.name)] = poisson_bracket(gens[a.pbw_index], gens[b.pbw_index], p)
    else:
        for g in p.generators:
            pp.cobracket[g.name] = co_poisson_cobracket(gens[g.pbw_index], p)
    return pp


def _limit_of(p: Presentation, marker: str) -> PoissonPresentation:
    pp = p.__dict__.get("_limit")
    if pp is None:
        pp = specialize(p, marker)
    return pp


def poisson_bracket(x: NcElement, y: NcElement, p: Presentation | None = None) -> NcElement:
    """((xy - yx)/(q-1)) at q = 1, in the limit's normal form."""
    p = p or x.p
    lim = _limit_of(p, POISSON).limit
    c = x * y - y * x
    if not c:
        return lim.zero()
    if lattice_valuation(c, p) < 1:
        raise NotDivisible(f"[{x}, {y}] is not divisible by (q-1) in the lattice of {p.name}")
    return specialize_element(c.scale(ONE / Q_MINUS_1), p, lim)


def co_poisson_cobracket(x: NcElement, p: Presentation | None = None) -> TensorElement:
    """((Delta(x) - Delta^op(x))/(q-1)) at q = 1, slot-normalized."""
    p = p or x.p
    lim = _limit_of(p, COPOISSON).limit
    d = apply_coproduct(x)
    c = d - d.flip()
    if not c:
        return TensorElement(lim, 2, {})
    # specialize_element rejects anything outside the lattice, so this also
    # checks that (q-1) divides Delta - Delta^op
    try:
        return specialize_element(c.scale(ONE / Q_MINUS_1), p, lim)
    except NotDivisible:
        raise NotDivisible(f"Delta - Delta^op of {x} is not divisible by (q-1) in {p.name}") from None


# brackets of classical targets ------------------------------------------------

def _table_bracket(t: Presentation, a: int, b: int) -> NcElement:
    if a == b:
        return t.zero()
    table = t.meta.get("bracket", {})
    na, nb = t.generators[a].name, t.generators[b].name
    if (na, nb) in table:
        return table[(na, nb)]
    if (nb, na) in table:
        return -table[(nb, na)]
    ga, gb = t.generators[a], t.generators[b]
    # {g^-1, h} = -g^-2 {g, h}, read off from g g^-1 = 1
    if ga.grouplike_inverse and (ga.grouplike_inverse, nb) in table or \
            ga.grouplike_inverse and (nb, ga.grouplike_inverse) in table:
        inv = t.gen(na)
        return -(inv * inv * _table_bracket(t, t.index[ga.grouplike_inverse], b))
    if gb.grouplike_inverse and (na, gb.grouplike_inverse) in table or \
            gb.grouplike_inverse and (gb.grouplike_inverse, na) in table:
        return -_table_bracket(t, b, a)
    return t.zero()


def target_bracket(x: NcElement, y: NcElement, t: Presentation) -> NcElement:
    """Bracket on a commutative target, extended from its table by Leibniz."""
    out = t.zero()
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            for i, a in enumerate(u):
                for j, b in enumerate(v):
                    br = _table_bracket(t, a, b)
                    if br:
                        rest = t.element({u[:i] + u[i + 1:] + v[:j] + v[j + 1:]: cu * cv})
                        out = out + rest * br
    return out


def target_cobracket(x: NcElement, t: Presentation) -> TensorElement:
    """Cobracket on a target, extended from its table by the co-Leibniz rule."""
    table = t.meta.get("cobracket", {})
    out = TensorElement(t, 2, {})
    for w, c in x.terms.items():
        delta = TensorElement(t, 2, {})
        cop = TensorElement(t, 2, {((), ()): ONE})
        for g in w:
            name = t.generators[g].name
            if name not in table:
                raise InputError(f"{t.name} declares no cobracket for {name}")
            dg = t.hopf.coproduct_of[g]
            delta = tensor_multiply(delta, dg) + tensor_multiply(cop, table[name])
            cop = tensor_multiply(cop, dg)
        out = out + delta.scale(c)
    return out


# generator maps -----------------------------------------------------------------

@dataclass
class GeneratorMap:
    source: PoissonPresentation
    target: Presentation
    images: dict  # source generator name -> target element

    def __post_init__(self):
        missing = [g for g in self.source.generators if g not in self.images]
        if missing:
            raise InputError(f"generator map is not total: no image for {', '.join(missing)}")


@dataclass
class MapReport:
    source: str
    target: str
    entries: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def failures(self) -> list:
        return [e for e in self.entries if not e.ok]

    def add(self, check: str, item: str, ok: bool, detail: str = "") -> None:
        self.entries.append(CheckEntry(check, item, ok, detail))


def check_generator_map(m: GeneratorMap) -> MapReport:
    """(i) limit relations hold for the images, (ii) Delta, eps, S intertwine
    at q = 1, (iii) the computed (co)bracket table maps onto the target's."""
    pp, t = m.source, m.target
    lim = pp.limit
    rep = MapReport(lim.name, t.name)
    phi = Substitution(lim, t, m.images)
    verify_substitution(phi, rep.entries)
    if pp.marker == POISSON:
        for (a, b), br in pp.bracket.items():
            lhs = phi(br)
            rhs = target_bracket(m.images[a], m.images[b], t)
            diff = lhs - rhs
            rep.add("bracket", f"{{{a}, {b}}}", not diff, f"{lhs} vs {rhs}" if diff else str(lhs))
    else:
        for g, cb in pp.cobracket.items():
            lhs = phi.tensor(cb)
            rhs = target_cobracket(m.images[g], t)
            diff = lhs - rhs
            rep.add("cobracket", f"delta({g})", not diff, f"{lhs} vs {rhs}" if diff else str(lhs))
    return rep


# structure checks on the limit -------------------------------------------------

def limit_property_report(p: Presentation) -> MapReport:
    """Jacobi and Leibniz on generator triples (Poisson limits), or antisymmetry
    and co-Leibniz on generators and generator pairs (co-Poisson limits)."""
    pp = specialize(p)
    lim = pp.limit
    rep = MapReport(p.name, lim.name)
    gens = [g.name for g in p.generators]
    if pp.marker == POISSON:
        def br(x, y):
            return poisson_bracket(_lift(x, p), _lift(y, p), p)

        lg = {g: lim.gen(g) for g in gens}
        for a, b in iproduct(gens, repeat=2):
            s = br(lg[a], lg[b]) + br(lg[b], lg[a])
            rep.add("antisymmetry", f"{{{a}, {b}}}", not s, str(s) if s else "")
        for a, b, c in iproduct(gens, repeat=3):
            x, y, z = lg[a], lg[b], lg[c]
            jac = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
            rep.add("Jacobi", f"{a}, {b}, {c}", not jac, str(jac) if jac else "")
            lei = br(x, y * z) - br(x, y) * z - y * br(x, z)
            rep.add("Leibniz", f"{a}, {b}, {c}", not lei, str(lei) if lei else "")
    else:
        qg = {g: p.gen(g) for g in gens}
        for a in gens:
            d = pp.cobracket[a]
            s = d + d.flip()
            rep.add("antisymmetry", f"delta({a})", not s, str(s) if s else "")
        for a, b in iproduct(gens, repeat=2):
            lhs = co_poisson_cobracket(qg[a] * qg[b], p)
            da, db = lim.hopf.coproduct_of[lim.index[a]], lim.hopf.coproduct_of[lim.index[b]]
            rhs = tensor_multiply(pp.cobracket[a], db) + tensor_multiply(da, pp.cobracket[b])
            diff = lhs - rhs
            rep.add("co-Leibniz", f"delta({a}*{b})", not diff, str(diff) if diff else "")
    return rep


__all__ = [
    "POISSON", "COPOISSON", "PoissonPresentation", "GeneratorMap", "MapReport", "specialize",
    "specialize_element", "poisson_bracket", "co_poisson_cobracket", "target_bracket",
    "target_cobracket", "check_generator_map", "limit_property_report",
]
