"""Hopf structure maps extended from generator data, Drinfeld's delta maps,
and the axiom checks run on every presentation at load time."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

from .errors import HopfCheckFailed, InputError
from .ncalg import NcElement, Presentation
from .qcoeff import ONE, ZERO, as_coeff
from .tensor import (TensorElement, scalar_tensor, slot_map, tensor_multiply, tensor_of,
                     unit_tensor)


class HopfData:
    """Images of the generators under Delta, epsilon and S."""

    def __init__(self, p: Presentation, coproduct_of: Mapping[str, TensorElement],
                 counit_of: Mapping[str, object], antipode_of: Mapping[str, NcElement]):
        missing = [g.name for g in p.generators
                   if g.name not in coproduct_of or g.name not in counit_of or g.name not in antipode_of]
        if missing:
            raise InputError(f"{p.name}: incomplete Hopf data for {', '.join(missing)}")
        self.coproduct_of = {p.index[k]: v for k, v in coproduct_of.items()}
        self.counit_of = {p.index[k]: as_coeff(v) for k, v in counit_of.items()}
        self.antipode_of = {p.index[k]: v for k, v in antipode_of.items()}
        self._delta_cache: dict = {}
        self._s_cache: dict = {}

    def clear(self) -> None:
        self._delta_cache.clear()
        self._s_cache.clear()


def attach_hopf(p: Presentation, coproduct_of, counit_of, antipode_of) -> HopfData:
    p.hopf = HopfData(p, coproduct_of, counit_of, antipode_of)
    return p.hopf


def _hopf(p: Presentation) -> HopfData:
    if p.hopf is None:
        raise InputError(f"{p.name} carries no Hopf data")
    return p.hopf


# structure maps on words ------------------------------------------------------

def counit_word(p: Presentation, w: tuple):
    h = _hopf(p)
    c = ONE
    for g in w:
        e = h.counit_of[g]
        if not e:
            return ZERO
        c = c * e
    return c


def coproduct_word(p: Presentation, w: tuple) -> TensorElement:
    """Delta of a (not necessarily normal) word, by multiplicativity."""
    h = _hopf(p)
    hit = h._delta_cache.get(w)
    if hit is not None:
        return hit
    if not w:
        out = unit_tensor(p, 2)
    elif len(w) == 1:
        out = h.coproduct_of[w[0]]
    else:
        out = tensor_multiply(coproduct_word(p, w[:-1]), h.coproduct_of[w[-1]], p)
    if len(h._delta_cache) > 200_000:
        h._delta_cache.clear()
    h._delta_cache[w] = out
    return out


def antipode_word(p: Presentation, w: tuple) -> NcElement:
    h = _hopf(p)
    hit = h._s_cache.get(w)
    if hit is not None:
        return hit
    if not w:
        out = p.one()
    elif len(w) == 1:
        out = h.antipode_of[w[0]]
    else:
        out = h.antipode_of[w[-1]] * antipode_word(p, w[:-1])
    h._s_cache[w] = out
    return out


def apply_counit(x: NcElement):
    p = x.p
    total = ZERO
    for w, c in x.terms.items():
        e = counit_word(p, w)
        if e:
            total = total + c * e
    return total


def apply_coproduct(x: NcElement) -> TensorElement:
    p = x.p
    out = TensorElement(p, 2, {})
    for w, c in x.terms.items():
        out = out + coproduct_word(p, w).scale(c)
    return out


def apply_coproduct_op(x: NcElement) -> TensorElement:
    return apply_coproduct(x).flip()


def apply_antipode(x: NcElement) -> NcElement:
    p = x.p
    out = p.zero()
    for w, c in x.terms.items():
        out = out + antipode_word(p, w).scale(c)
    return out


def _word_tensor(p: Presentation, w: tuple) -> TensorElement:
    return TensorElement(p, 1, {(w,): ONE})


def iterated_coproduct(x: NcElement, n: int) -> TensorElement:
    """Delta^n: Delta^0 = epsilon, Delta^1 = id, Delta^n = (Delta (x) id) Delta^{n-1}."""
    p = x.p
    if n < 0:
        raise InputError("n must be nonnegative")
    if n == 0:
        return scalar_tensor(p, apply_counit(x))
    t = TensorElement(p, 1, {(w,): c for w, c in x.terms.items()})
    for _ in range(n - 1):
        t = slot_map(t, 0, lambda w: coproduct_word(p, w))
    return t if t.terms else TensorElement(p, n, {})


def _id_minus_eps(p: Presentation):
    def f(w):
        if w == ():
            return TensorElement(p, 1, {})
        e = counit_word(p, w)
        terms = {(w,): ONE}
        if e:
            terms[((),)] = -e
        return TensorElement(p, 1, terms)
    return f


def delta_n(x: NcElement, n: int) -> TensorElement:
    """Drinfeld's delta_n = (id - epsilon)^{(x) n} o Delta^n."""
    p = x.p
    if n == 0:
        return scalar_tensor(p, apply_counit(x))
    t = iterated_coproduct(x, n)
    f = _id_minus_eps(p)
    for k in range(n):
        t = slot_map(t, k, f)
    return t if t.terms else TensorElement(p, n, {})


def embed(t: TensorElement, subset: tuple, n: int) -> TensorElement:
    """j_Psi: place the slots of t into positions ``subset`` of an n-fold tensor, 1 elsewhere."""
    p = t.p
    out = {}
    for ws, c in t.terms.items():
        full = [()] * n
        for pos, w in zip(subset, ws):
            full[pos] = w
        key = tuple(full)
        s = out.get(key)
        out[key] = c if s is None else s + c
    return TensorElement(p, n, {k: v for k, v in out.items() if v})


def delta_via_subsets(x: NcElement, n: int) -> TensorElement:
    """delta_n by inclusion-exclusion: sum over Psi of (-1)^{n-|Psi|} j_Psi(Delta^{|Psi|}(x))."""
    p = x.p
    if n == 0:
        return scalar_tensor(p, apply_counit(x))
    total = TensorElement(p, n, {})
    powers = {}
    for k in range(n + 1):
        powers[k] = iterated_coproduct(x, k)
    for k in range(n + 1):
        sign = -1 if (n - k) % 2 else 1
        for subset in combinations(range(n), k):
            if k == 0:
                e = powers[0].terms.get((), ZERO)
                piece = unit_tensor(p, n).scale(e)
            else:
                piece = embed(powers[k], subset, n)
            total = total + piece.scale(sign)
    return total


def multiply_slots(t: TensorElement) -> NcElement:
    """m: H (x) H -> H (any arity, left to right)."""
    p = t.p
    out = p.zero()
    for ws, c in t.terms.items():
        acc = {(): c}
        for w in ws:
            acc = p.product_terms(acc, {w: ONE})
        out = out + NcElement(p, acc)
    return out


def apply_in_slot(t: TensorElement, k: int, which: str) -> TensorElement:
    p = t.p
    if which == "S":
        return slot_map(t, k, lambda w: TensorElement(p, 1, {(v,): c for v, c in antipode_word(p, w).terms.items()}))
    if which == "Delta":
        return slot_map(t, k, lambda w: coproduct_word(p, w))
    if which == "eps":
        return slot_map(t, k, lambda w: scalar_tensor(p, counit_word(p, w)))
    raise ValueError(which)


# axiom checks -----------------------------------------------------------------

@dataclass
class CheckEntry:
    check: str
    item: str
    ok: bool
    detail: str = ""


@dataclass
class HopfReport:
    presentation: str
    entries: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def failures(self) -> list:
        return [e for e in self.entries if not e.ok]

    def add(self, check: str, item: str, ok: bool, detail: str = "") -> None:
        self.entries.append(CheckEntry(check, item, ok, detail))

    def summary(self) -> str:
        n_ok = sum(e.ok for e in self.entries)
        return f"{self.presentation}: {n_ok}/{len(self.entries)} Hopf checks passed"


def _raw_word_element(p: Presentation, w: tuple) -> NcElement:
    return NcElement(p, {w: ONE})


def _axioms_on(p: Presentation, x: NcElement, label: str, rep: HopfReport) -> None:
    d = apply_coproduct(x)
    left = apply_in_slot(d, 0, "Delta")
    right = apply_in_slot(d, 1, "Delta")
    rep.add("coassociativity", label, left == right, "" if left == right else str(left - right))
    x1 = TensorElement(p, 1, {(w,): c for w, c in x.terms.items()})
    for k, name in ((0, "left counit"), (1, "right counit")):
        r = apply_in_slot(d, k, "eps")
        ok = r == x1
        rep.add(name, label, ok, "" if ok else str(r))
    e = apply_counit(x)
    target = p.scalar(e)
    for k, name in ((0, "antipode m(S(x)id)"), (1, "antipode m(id(x)S)")):
        r = multiply_slots(apply_in_slot(d, k, "S"))
        ok = r == target
        rep.add(name, label, ok, "" if ok else str(r - target))


def check_hopf(p: Presentation, sample_budget: int = 20, seed: int = 0,
               max_sample_len: int = 3) -> HopfReport:
    """(i) relations respected by Delta, epsilon, S; (ii) coassociativity;
    (iii) counit laws; (iv) antipode laws.  Generators always, plus
    ``sample_budget`` random products of 2..max_sample_len generators.

    The generator checks already decide (ii)-(iv): both sides of each law
    are multiplicative in the right sense.  The samples are a cross-check
    of the term engine."""
    rep = HopfReport(p.name)
    _hopf(p).clear()
    for rule in p.rules:
        label = f"{p.word_str(rule.lhs)} = {NcElement(p, dict(rule.rhs))}"
        d = coproduct_word(p, rule.lhs)
        for w, c in rule.rhs:
            d = d - coproduct_word(p, w).scale(c)
        rep.add("Delta respects relation", label, not d, "" if not d else str(d))
        e = counit_word(p, rule.lhs)
        for w, c in rule.rhs:
            e = e - c * counit_word(p, w)
        rep.add("epsilon respects relation", label, not e, "" if not e else str(e))
        s = antipode_word(p, rule.lhs)
        for w, c in rule.rhs:
            s = s - antipode_word(p, w).scale(c)
        rep.add("S respects relation", label, not s, "" if not s else str(s))
    for g in p.generators:
        _axioms_on(p, p.gen(g.name), g.name, rep)
    rng = random.Random(seed)
    n = len(p.generators)
    for _ in range(sample_budget):
        w = tuple(rng.randrange(n) for _ in range(rng.randint(2, max(2, max_sample_len))))
        x = p.element({w: ONE})
        _axioms_on(p, x, p.word_str(w), rep)
    return rep


def require_hopf(p: Presentation, sample_budget: int = 0) -> HopfReport:
    rep = check_hopf(p, sample_budget)
    if not rep.ok:
        bad = rep.failures[0]
        raise HopfCheckFailed(f"{p.name}: {bad.check} fails on {bad.item}: {bad.detail}")
    return rep
