"""Noncommutative polynomials over k[q, q^-1] (or k(q)) and PBW rewriting.

Words are tuples of generator indices; the index of a generator is its
position in the PBW order.  Words are compared by weighted length first and
then lexicographically, and every rewrite rule replaces its left-hand side by
strictly smaller words, so rewriting terminates.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Iterable, Mapping, Sequence

from . import kernel
from .errors import InputError, VerificationFailed
from .qcoeff import ONE, RATIONAL_TYPES, ZERO, Coeff, LaurentPoly, QFrac, as_coeff

Word = tuple

DEFAULT_MAX_STEPS = 2_000_000
CACHE_LIMIT = 400_000
CHAIN_MAX = 48  # longest middle run a chain rule will synthesize


def max_rewrite_steps() -> int:
    raw = os.environ.get("QDUAL_MAX_REWRITE_STEPS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise InputError(f"QDUAL_MAX_REWRITE_STEPS must be an integer, got {raw!r}")
    return DEFAULT_MAX_STEPS


@dataclass(frozen=True)
class Generator:
    name: str
    pbw_index: int
    grouplike_inverse: str | None = None
    weight: int = 1


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: tuple  # ((word, coeff), ...)

    def rhs_terms(self) -> dict:
        return dict(self.rhs)


class _ChainRules(dict):
    """Rule table that synthesizes the chain rules a b^k c on first lookup."""

    def __init__(self, p: "Presentation", data: dict):
        super().__init__(data)
        self._p = p

    def __contains__(self, key) -> bool:
        if dict.__contains__(self, key):
            return True
        return self._p._chain_rule(key)


class Presentation:
    """Generators, oriented relations and (later) Hopf and lattice data.

    Build with ``add_rule``/``add_relation`` and call ``freeze``; the object
    is treated as immutable afterwards.  The normal-form cache is a plain
    dict: entries are deterministic, so concurrent fills are harmless.
    """

    def __init__(self, name: str, generators: Sequence[str | Generator],
                 classification: str = "QUEA", commutative: bool = False):
        self.name = name
        gens = []
        for i, g in enumerate(generators):
            if isinstance(g, Generator):
                gens.append(Generator(g.name, i, g.grouplike_inverse, g.weight))
            else:
                gens.append(Generator(g, i))
        self.generators: list[Generator] = gens
        self.index = {g.name: g.pbw_index for g in gens}
        if len(self.index) != len(gens):
            raise InputError("duplicate generator name")
        self.classification = classification
        self.commutative = commutative
        self.rules: list[RewriteRule] = []
        self.aliases: dict[str, NcElement] = {}
        self.alias_order: list[str] = []
        self.hopf = None
        self.lattice = None
        self.grading: dict[str, int] = {}
        self.meta: dict = {}
        self._rules: dict = {}
        self._lens: tuple = ()
        self._weights: tuple = tuple(g.weight for g in gens)
        self._cache: dict = {}
        self.chains: list = []
        self.frozen = False

    # construction --------------------------------------------------------

    def set_inverse(self, g: str, ginv: str) -> None:
        i, j = self.index[g], self.index[ginv]
        self.generators[i] = Generator(g, i, ginv, self.generators[i].weight)
        self.generators[j] = Generator(ginv, j, g, self.generators[j].weight)
        self.add_rule((i, j), {(): ONE})
        self.add_rule((j, i), {(): ONE})

    def set_weight(self, g: str, w: int) -> None:
        i = self.index[g]
        old = self.generators[i]
        self.generators[i] = Generator(old.name, i, old.grouplike_inverse, int(w))
        self._weights = tuple(x.weight for x in self.generators)

    def add_alias(self, name: str, value: "NcElement") -> None:
        self.aliases[name] = value
        self.alias_order.append(name)

    def word_key(self, w: Word):
        return (sum(self._weights[g] for g in w), w)

    def add_rule(self, lhs: Word, rhs: Mapping[Word, Coeff]) -> None:
        if self.frozen:
            raise VerificationFailed("presentation is frozen")
        lhs = tuple(lhs)
        if lhs in self._rules:
            raise InputError(f"two rules for the word {self.word_str(lhs)}")
        k = self.word_key(lhs)
        items = []
        for w, c in rhs.items():
            c = as_coeff(c)
            if not c:
                continue
            if self.word_key(tuple(w)) >= k:
                raise InputError(
                    f"rule {self.word_str(lhs)} -> {self.word_str(w)} does not decrease the term order")
            items.append((tuple(w), c))
        rule = RewriteRule(lhs, tuple(items))
        self.rules.append(rule)
        self._rules[lhs] = rule.rhs
        self._update_lens()
        self._cache.clear()

    def _update_lens(self) -> None:
        lens = {len(r.lhs) for r in self.rules}
        if self.chains:
            lens.update(range(4, CHAIN_MAX + 3))
        self._lens = tuple(sorted(lens))

    def add_chain(self, a: str, b: str, c: str) -> None:
        """Declare that a*b^k*c reduces for every k, given a rule for a*b*c.

        The rule for k is derived from the one for k - 1 through
        a b^k c = (a b^(k-1) c) b + a b^(k-1) (b c - c b).  This is how a
        cubic relation such as det_q = 1 stays confluent without an infinite
        rule list."""
        i, j, k = self.index[a], self.index[b], self.index[c]
        if (i, j, k) not in self._rules:
            raise InputError(f"chain {a}, {b}, {c} needs a rule for {a}*{b}*{c}")
        self.chains.append((i, j, k))
        if not isinstance(self._rules, _ChainRules):
            self._rules = _ChainRules(self, self._rules)
        self._update_lens()
        self._cache.clear()

    def _chain_rule(self, key) -> bool:
        n = len(key)
        if n < 4 or n > CHAIN_MAX + 2:
            return False
        for a, b, c in self.chains:
            if key[0] != a or key[-1] != c or any(x != b for x in key[1:-1]):
                continue
            shorter = key[:-2] + (c,)
            if shorter not in self._rules:  # builds the whole ladder below
                return False
            one = {(b, c): ONE}
            for w, v in self.reduce({(c, b): ONE}).items():
                one[w] = one.get(w, ZERO) - v
            comm = {w: v for w, v in one.items() if v}
            rhs = self.product_terms(dict(self._rules[shorter]), {(b,): ONE})
            tail = self.product_terms({key[:-2]: ONE}, comm)
            for w, v in tail.items():
                rhs[w] = rhs.get(w, ZERO) + v
            rhs = self.reduce(rhs)
            top = self.word_key(key)
            if any(self.word_key(w) >= top for w in rhs):
                raise InputError(f"chain rule for {self.word_str(key)} does not decrease the order")
            dict.__setitem__(self._rules, key, tuple((w, v) for w, v in rhs.items() if v))
            return True
        return False

    def add_relation(self, rel: "NcElement | Mapping[Word, Coeff]") -> RewriteRule:
        """Orient ``rel = 0`` by the term order and add it as a rule."""
        terms = rel.terms if isinstance(rel, NcElement) else dict(rel)
        terms = {tuple(w): as_coeff(c) for w, c in terms.items() if c}
        if not terms:
            raise InputError("relation is identically zero")
        lead = max(terms, key=self.word_key)
        lc = terms[lead]
        rhs = {w: -c / lc for w, c in terms.items() if w != lead}
        self.add_rule(lead, rhs)
        return self.rules[-1]

    def freeze(self) -> "Presentation":
        self.frozen = True
        return self

    # term engine ---------------------------------------------------------

    def reduce(self, terms: Mapping[Word, Coeff]) -> dict:
        res, _ = kernel.reduce_terms(dict(terms), self._rules, self._lens, self._weights,
                                     self._cache, max_rewrite_steps())
        return res

    def normal_word(self, w: Word) -> tuple:
        return kernel.normal_word(w, ONE, self._rules, self._lens, self._weights, self._cache,
                                  max_rewrite_steps(), CACHE_LIMIT)

    def product_terms(self, xt: dict, yt: dict) -> dict:
        return kernel.product_terms(xt, yt, ONE, self._rules, self._lens, self._weights,
                                    self._cache, max_rewrite_steps(), CACHE_LIMIT)

    def is_normal(self, w: Word) -> bool:
        return kernel.find_redex(tuple(w), self._rules, self._lens) is None

    def rule_for(self, lhs: Word):
        return self._rules.get(tuple(lhs))

    # element constructors ------------------------------------------------

    def gen(self, name: str) -> "NcElement":
        if name in self.index:
            return NcElement(self, self.reduce({(self.index[name],): ONE}))
        if name in self.aliases:
            return NcElement(self, self.reduce(self.aliases[name].terms))
        from .errors import UnknownGenerator

        raise UnknownGenerator(f"unknown generator {name!r} in {self.name}")

    def one(self) -> "NcElement":
        return NcElement(self, {(): ONE})

    def zero(self) -> "NcElement":
        return NcElement(self, {})

    def scalar(self, c) -> "NcElement":
        c = as_coeff(c)
        return NcElement(self, {(): c} if c else {})

    def element(self, terms: Mapping[Word, Coeff]) -> "NcElement":
        return NcElement(self, self.reduce({tuple(w): as_coeff(c) for w, c in terms.items()}))

    def word_element(self, names: Iterable[str]) -> "NcElement":
        out = self.one()
        for n in names:
            out = out * self.gen(n)
        return out

    def parse(self, src: str):
        from .cli.parse import parse_expression

        return parse_expression(src, self)

    # rendering -----------------------------------------------------------

    def word_str(self, w: Word) -> str:
        if not w:
            return "1"
        parts = []
        i = 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            name = self.generators[w[i]].name
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)

    def sorted_words(self, words: Iterable[Word]) -> list:
        return sorted(words, key=self.word_key, reverse=True)

    def __repr__(self) -> str:
        return f"<Presentation {self.name}: {len(self.generators)} generators, {len(self.rules)} rules>"


def coeff_str(c, word_str: str) -> str:
    """Render ``c * word`` as a signed term (leading '-' when negative)."""
    if isinstance(c, QFrac):
        body = f"({c.num.to_str(True)})/({c.den.to_str(True)})"
        return body if word_str == "1" else f"{body}*{word_str}"
    c = as_coeff(c)
    t = c._t
    if len(t) == 1:
        (e, k), = t.items()
        neg = k < 0
        a = -k if neg else k
        sign = "-" if neg else ""
        if e == 0:
            if word_str == "1":
                return f"{sign}{a}"
            return f"{sign}{word_str}" if a == 1 else f"{sign}{a}*{word_str}"
        qs = "q" if e == 1 else f"q^{e}"
        mono = qs if a == 1 else f"{a}*{qs}"
        return f"{sign}{mono}" if word_str == "1" else f"{sign}{mono}*{word_str}"
    body = c.to_str(True)
    if word_str == "1":
        return f"({body})"
    return f"({body})*{word_str}"


def join_terms(parts: list[str]) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for s in parts[1:]:
        out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
    return out


class NcElement:
    """Element of a presented algebra; ``terms`` maps normal words to coefficients."""

    __slots__ = ("p", "terms")

    def __init__(self, p: Presentation, terms: dict):
        self.p = p
        self.terms = terms

    def _coerce(self, other) -> "NcElement | None":
        if isinstance(other, NcElement):
            if other.p is not self.p:
                raise InputError(f"mixing elements of {self.p.name} and {other.p.name}")
            return other
        if isinstance(other, (LaurentPoly, QFrac, RATIONAL_TYPES)):
            return self.p.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in o.terms.items():
            s = out.get(w)
            if s is None:
                out[w] = c
            else:
                s = s + c
                if s:
                    out[w] = s
                else:
                    del out[w]
        return NcElement(self.p, out)

    __radd__ = __add__

    def __neg__(self):
        return NcElement(self.p, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, NcElement):
            return multiply(self, other, self.p)
        if isinstance(other, (LaurentPoly, QFrac, RATIONAL_TYPES)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (LaurentPoly, QFrac, RATIONAL_TYPES)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = self.p.one()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "NcElement":
        c = as_coeff(c)
        if not c:
            return self.p.zero()
        return NcElement(self.p, {w: v * c for w, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, NcElement):
            return other.p is self.p and self.terms == other.terms
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, w) -> Coeff:
        return self.terms.get(tuple(w), ZERO)

    def support(self) -> list:
        return self.p.sorted_words(self.terms)

    def scalar_part(self) -> Coeff:
        return self.terms.get((), ZERO)

    def map_coeffs(self, f) -> "NcElement":
        out = {}
        for w, c in self.terms.items():
            c2 = f(c)
            if c2:
                out[w] = c2
        return NcElement(self.p, out)

    def __str__(self) -> str:
        return join_terms([coeff_str(self.terms[w], self.p.word_str(w)) for w in self.support()])

    def __repr__(self) -> str:
        return f"<{self.p.name}: {self}>"


def normal_form(x: NcElement, p: Presentation | None = None) -> NcElement:
    """Rewriting fixed point of x (idempotent)."""
    p = p or x.p
    return NcElement(p, p.reduce(x.terms))


def multiply(x: NcElement, y: NcElement, p: Presentation | None = None) -> NcElement:
    p = p or x.p
    return NcElement(p, p.product_terms(x.terms, y.terms))


def commutator(x: NcElement, y: NcElement) -> NcElement:
    return x * y - y * x


# overlap (critical pair) check ------------------------------------------------


@dataclass
class OverlapEntry:
    word: str
    ok: bool
    difference: str = "0"


@dataclass
class OverlapReport:
    presentation: str
    checked: int = 0
    total: int = 0
    failures: list = field(default_factory=list)
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.problems

    def summary(self) -> str:
        status = "ok" if self.ok else "FAILED"
        return (f"{self.presentation}: {self.checked}/{self.total} overlaps resolved, "
                f"{len(self.failures)} failures, {len(self.problems)} structural problems: {status}")


def _one_step(p: Presentation, w: Word, pos: int, lhs: Word) -> dict:
    pre, post = w[:pos], w[pos + len(lhs):]
    return {pre + r + post: c for r, c in p.rule_for(lhs)}


def critical_words(p: Presentation) -> list:
    """All overlap and inclusion ambiguities as (word, pos1, lhs1, pos2, lhs2)."""
    lhss = [r.lhs for r in p.rules]
    out = []
    for l1 in lhss:
        for l2 in lhss:
            # proper suffix/prefix overlaps
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k] and (len(l1) > k or len(l2) > k):
                    w = l1 + l2[k:]
                    out.append((w, 0, l1, len(l1) - k, l2))
            # inclusions
            if l1 != l2 and len(l2) < len(l1):
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i:i + len(l2)] == l2:
                        out.append((l1, 0, l1, i, l2))
    seen = set()
    uniq = []
    for item in out:
        if item not in seen:
            seen.add(item)
            uniq.append(item)
    uniq.sort(key=lambda t: (p.word_key(t[0]), t[1:]))
    return uniq


def overlap_check(p: Presentation, sample_budget: int = 10_000) -> OverlapReport:
    """Resolve every critical pair both ways (up to ``sample_budget`` of them)."""
    rep = OverlapReport(p.name)
    n = len(p.generators)
    for a, b in iproduct(range(n), range(n)):
        if a > b and p.rule_for((a, b)) is None and not any(
                len(r.lhs) == 1 and r.lhs[0] in (a, b) for r in p.rules):
            rep.problems.append(f"no rule for the inversion {p.word_str((a, b))}")
    crit = critical_words(p)
    rep.total = len(crit)
    if len(crit) > sample_budget:
        step = len(crit) / sample_budget
        crit = [crit[int(i * step)] for i in range(sample_budget)]
    for w, p1, l1, p2, l2 in crit:
        left = p.reduce(_one_step(p, w, p1, l1))
        right = p.reduce(_one_step(p, w, p2, l2))
        rep.checked += 1
        if left != right:
            diff = NcElement(p, left) - NcElement(p, right)
            rep.failures.append(OverlapEntry(p.word_str(w), False, str(diff)))
    return rep


def random_words(p: Presentation, rng, count: int, max_len: int) -> list:
    n = len(p.generators)
    return [tuple(rng.randrange(n) for _ in range(rng.randint(0, max_len))) for _ in range(count)]
