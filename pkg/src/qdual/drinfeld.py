"""Lattice-aware (q-1)-adic valuation, the membership test for U~, the
tilde presentations and the double-tilde regeneration checks.

Valuations are taken in the local ring of k[q, q^-1] at q = 1: factors
such as (q + 1) in a denominator are units there and do not count.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product as iproduct

from .errors import InputError, VerificationFailed, WindowExceeded
from .hopf import (CheckEntry, apply_antipode, apply_coproduct, apply_counit, delta_n)
from .ncalg import NcElement, Presentation
from .qcoeff import INF, ONE, ZERO, Q_MINUS_1, as_coeff, valuation
from .tensor import TensorElement

DEFAULT_SLACK = 2
DEFAULT_WINDOW_LIMIT = 6000


def window_slack() -> int:
    raw = os.environ.get("QDUAL_WINDOW_SLACK")
    if raw:
        try:
            return max(0, int(raw))
        except ValueError:
            raise InputError(f"QDUAL_WINDOW_SLACK must be an integer, got {raw!r}")
    return DEFAULT_SLACK


def window_limit() -> int:
    raw = os.environ.get("QDUAL_WINDOW_LIMIT")
    return max(1, int(raw)) if raw else DEFAULT_WINDOW_LIMIT


@dataclass
class LatticeSpec:
    """FREE: the normal words are a k[q,q^-1]-basis of the lattice.
    SPANNING: the lattice is the span of the ordered monomials in ``pattern``;
    only the ``window`` generators make the family dependent."""

    kind: str
    pattern: tuple
    window: tuple = ()
    grading: dict = field(default_factory=dict)

    @property
    def monomial_family(self) -> str:
        letters = "abcdefghijklmnopqrstuvwxyz"
        return " ".join(f"{g}^{letters[i % 26]}" for i, g in enumerate(self.pattern))


# lattice solver ---------------------------------------------------------------

class _SlotBasis:
    """R-basis (R = k[q,q^-1] localized at q = 1) of the span of a finite
    window of lattice monomials, in echelon form over the normal words."""

    def __init__(self, p: Presentation, shape, slack: int):
        win = [p.index[g] for g in p.lattice.window]
        skeletons, exps = shape
        maxexp = dict(zip(win, exps))
        ranges = [range(maxexp[g] + slack + 1) for g in win]
        n_mono = len(skeletons)
        for r in ranges:
            n_mono *= len(r)
        if n_mono > window_limit():
            raise WindowExceeded(f"{p.name}: lattice window needs {n_mono} monomials "
                                 f"(limit {window_limit()}, set QDUAL_WINDOW_LIMIT)")
        monos = []
        for sk in sorted(skeletons):
            for exps in iproduct(*ranges):
                letters = list(sk)
                for g, e in zip(win, exps):
                    letters.extend([g] * e)
                monos.append(tuple(sorted(letters)))
        self.p = p
        self.monomials = monos
        keys: dict = {}

        def key(w):
            k = keys.get(w)
            if k is None:
                k = keys[w] = p.word_key(w)
            return k

        rows = [(dict(_monomial_nf(p, m)), {i: ONE}) for i, m in enumerate(monos)]
        rows = [r for r in rows if r[0]]
        basis = []
        while rows:
            row = max({w for vec, _ in rows for w in vec}, key=key)
            cands = [i for i, (vec, _) in enumerate(rows) if row in vec]
            piv_i = min(cands, key=lambda i: (valuation(rows[i][0][row]), len(rows[i][0]), i))
            pvec, pcombo = rows[piv_i]
            pe = pvec[row]
            rest = []
            for i, (vec, combo) in enumerate(rows):
                if i == piv_i:
                    continue
                c = vec.get(row)
                if c is not None:
                    f = c / pe
                    vec = _axpy(vec, pvec, -f)
                    combo = _axpy(combo, pcombo, -f)
                if vec:
                    rest.append((vec, combo))
            basis.append((row, pvec, pcombo))
            rows = rest
        self.basis = basis
        self._word_cache: dict = {}

    def solve(self, vec: dict):
        """Coordinates of vec in the echelon basis, or None if outside the span.

        Normal words are window monomials themselves, so solving word by word
        (and caching) is valid and far cheaper than eliminating each vector."""
        out: dict = {}
        for w, c in vec.items():
            unit = self._word_cache.get(w)
            if unit is None:
                unit = self._word_cache[w] = self._solve_vec({w: ONE})
            if unit is False:
                return self._solve_vec(vec) or None
            for row, f in unit.items():
                s = out.get(row)
                out[row] = f * c if s is None else s + f * c
        return {k: as_coeff(v) for k, v in out.items() if v}

    def _solve_vec(self, vec: dict):
        x = dict(vec)
        coords = []
        for row, bvec, _ in self.basis:
            c = x.get(row)
            if c is None:
                continue
            f = as_coeff(c / bvec[row])
            x = _axpy(x, bvec, -f)
            coords.append((len(coords), f, row))
        if x:
            return False
        out = {}
        for _, f, row in coords:
            out[row] = f
        return out

    def combo(self, row) -> dict:
        for r, _, combo in self.basis:
            if r == row:
                return combo
        raise KeyError(row)


def _monomial_nf(p: Presentation, m: tuple) -> dict:
    # normal form of a sorted monomial, built from its prefix; shared by all windows of p
    memo = p.__dict__.setdefault("_monomial_nf", {(): {(): ONE}})
    hit = memo.get(m)
    if hit is None:
        hit = memo[m] = p.product_terms(_monomial_nf(p, m[:-1]), {(m[-1],): ONE})
    return hit


def _axpy(x: dict, y: dict, f) -> dict:
    out = dict(x)
    for k, v in y.items():
        s = out.get(k)
        s = v * f if s is None else s + v * f
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _window_shape(p: Presentation, support) -> tuple:
    """What a window solver depends on: the non-window skeletons of the
    support and the largest exponent of each window generator."""
    win = [p.index[g] for g in p.lattice.window]
    winset = set(win)
    skeletons = set()
    maxexp = [0] * len(win)
    for w in support:
        skeletons.add(tuple(g for g in w if g not in winset))
        for i, g in enumerate(win):
            c = w.count(g)
            if c > maxexp[i]:
                maxexp[i] = c
    return frozenset(skeletons), tuple(maxexp)


def _lattice(p: Presentation) -> LatticeSpec:
    if p.lattice is None:
        raise InputError(f"{p.name} declares no lattice")
    return p.lattice


def _solve_slot(p: Presentation, vectors: dict) -> dict:
    """vectors: key -> {word: coeff}.  Returns key -> {basis_row: coeff}."""
    support = set()
    for vec in vectors.values():
        support.update(vec)
    slack = window_slack()
    shape = _window_shape(p, support)
    for extra in (0, 2, 4):
        cache = p.__dict__.setdefault("_lattice_cache", {})
        ck = (shape, slack + extra)
        solver = cache.get(ck)
        if solver is None:
            if len(cache) > 2000:
                cache.clear()
            solver = cache[ck] = _SlotBasis(p, shape, slack + extra)
        out = {}
        for k, vec in vectors.items():
            sol = solver.solve(vec)
            if sol is None:
                break
            out[k] = (solver, sol)
        else:
            return out
    raise WindowExceeded(f"{p.name}: element is not in the span of the lattice window "
                         f"(slack {slack + 4}); raise QDUAL_WINDOW_SLACK")


def basis_coordinates(x, p: Presentation | None = None) -> dict:
    """Coordinates of x (NcElement or TensorElement) in a lattice basis.

    Keys are tuples of basis labels, one per slot; a label is
    ``(solver, row)`` for SPANNING lattices and the normal word for FREE ones."""
    p = p or x.p
    lat = _lattice(p)
    if isinstance(x, NcElement):
        terms = {(w,): c for w, c in x.terms.items()}
        arity = 1
    else:
        terms = dict(x.terms)
        arity = x.arity
    if lat.kind == "FREE" or arity == 0:
        return terms
    cur = terms
    for k in range(arity):
        groups: dict = {}
        for ws, c in cur.items():
            rest = ws[:k] + ws[k + 1:]
            groups.setdefault(rest, {})[ws[k]] = c
        solved = _solve_slot(p, groups)
        nxt = {}
        for rest, (solver, sol) in solved.items():
            for row, c in sol.items():
                nxt[rest[:k] + ((solver, row),) + rest[k:]] = c
        cur = nxt
    return cur


def lattice_valuation(x, p: Presentation | None = None):
    """Largest k with x in (q-1)^k * Lambda^{(x) arity}; INF for zero."""
    p = p or x.p
    coords = basis_coordinates(x, p)
    if not coords:
        return INF
    return min(valuation(c) for c in coords.values())


def monomial_coordinates(x, p: Presentation | None = None) -> dict:
    """x as an R-combination of lattice monomials: {tuple of words: coeff}."""
    p = p or x.p
    lat = _lattice(p)
    coords = basis_coordinates(x, p)
    if lat.kind == "FREE":
        return coords
    out: dict = {}
    for labels, c in coords.items():
        parts = [((), c)]
        for lab in labels:
            solver, row = lab
            combo = solver.combo(row)
            parts = [(acc + (solver.monomials[i],), pc * cc)
                     for acc, pc in parts for i, cc in combo.items()]
        for k, v in parts:
            s = out.get(k)
            out[k] = v if s is None else s + v
    return {k: v for k, v in out.items() if v}


# membership ----------------------------------------------------------------

MEMBER = "MEMBER-UP-TO-BOUND"
NOT_MEMBER = "NOT-MEMBER"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class MembershipVerdict:
    element: str
    n_max: int
    profile: list
    verdict: str
    witness: int | None = None
    failing: list = field(default_factory=list)
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "element": self.element,
            "n_max": self.n_max,
            "profile": [[n, _val_out(v)] for n, v in self.profile],
            "verdict": self.verdict,
            "witness": self.witness,
            "failing": self.failing,
            "note": self.note,
        }


def _val_out(v):
    return "inf" if v == INF else v


def valuation_profile(x: NcElement, p: Presentation | None = None, n_max: int = 4) -> list:
    p = p or x.p
    return [(n, lattice_valuation(delta_n(x, n), p)) for n in range(1, n_max + 1)]


def tilde_member(x: NcElement, p: Presentation | None = None, n_max: int = 4) -> MembershipVerdict:
    """Bounded test of delta_n(x) in (q-1)^n * Lambda^{(x) n} for 1 <= n <= n_max."""
    p = p or x.p
    if n_max < 1:
        raise InputError("max-n must be at least 1")
    base = lattice_valuation(x, p)
    desc = str(x)
    if base < 0:
        return MembershipVerdict(desc, n_max, [], NOT_MEMBER, 0, [0],
                                 "the element is not in the lattice itself")
    prof = valuation_profile(x, p, n_max)
    failing = [n for n, v in prof if v < n]
    if failing:
        return MembershipVerdict(desc, n_max, prof, NOT_MEMBER, failing[0], failing,
                                 f"delta_{failing[0]} has lattice valuation "
                                 f"{_val_out(dict(prof)[failing[0]])} < {failing[0]}")
    margins = [v - n for n, v in prof]
    vanished = any(v == INF for _, v in prof)
    stable = vanished or _margins_stable(margins)
    note = "bounded test; stabilization is a heuristic (the condition quantifies over all n)"
    if stable:
        return MembershipVerdict(desc, n_max, prof, MEMBER, None, [], note)
    return MembershipVerdict(desc, n_max, prof, INCONCLUSIVE, None, [],
                             "all tested n pass but the margins have not stabilized")


def _margins_stable(margins: list) -> bool:
    # Over the last three n the margin must not drop: m[-1] >= m[-3] and the
    # window minimum is no lower than anything seen before.  Comparing n with
    # n - 2 lets period-two parity patterns (the Gamma-type generators) pass.
    if len(margins) < 3:
        return False
    tail, head = margins[-3:], margins[:-3]
    if tail[2] < tail[0]:
        return False
    return not head or min(tail) >= min(head)


# substitution homomorphisms -------------------------------------------------

class Substitution:
    """Algebra map src -> dst given by generator images (words are mapped
    letter by letter, so it also accepts non-normal words)."""

    def __init__(self, src: Presentation, dst: Presentation, images: dict):
        self.src = src
        self.dst = dst
        self.images = {src.index[k]: v for k, v in images.items()}
        missing = [g.name for g in src.generators if g.pbw_index not in self.images]
        if missing:
            raise InputError(f"no image for {', '.join(missing)}")
        self._cache: dict = {}

    def word(self, w: tuple) -> NcElement:
        hit = self._cache.get(w)
        if hit is None:
            if not w:
                hit = self.dst.one()
            elif len(w) == 1:
                hit = self.images[w[0]]
            else:
                hit = self.word(w[:-1]) * self.images[w[-1]]
            self._cache[w] = hit
        return hit

    def __call__(self, x) -> NcElement:
        if isinstance(x, dict):
            terms = x
        else:
            terms = x.terms
        out = self.dst.zero()
        for w, c in terms.items():
            out = out + self.word(w).scale(c)
        return out

    def tensor(self, t: TensorElement) -> TensorElement:
        out = TensorElement(self.dst, t.arity, {})
        for ws, c in t.terms.items():
            parts = {(): as_coeff(c)}
            for w in ws:
                img = self.word(w)
                parts = {k + (v,): pc * cv for k, pc in parts.items() for v, cv in img.terms.items()}
            out = out + TensorElement(self.dst, t.arity, {k: v for k, v in parts.items() if v})
        return out


def verify_substitution(phi: Substitution, rep_items: list, label: str = "") -> list:
    """Relations, Delta, epsilon and S of phi.src transported into phi.dst."""
    src, dst = phi.src, phi.dst
    out = []
    for rule in src.rules:
        img = phi({rule.lhs: ONE}) - phi(dict(rule.rhs))
        name = f"{src.word_str(rule.lhs)} = {NcElement(src, dict(rule.rhs))}"
        out.append(CheckEntry("relation", name, not img, "" if not img else str(img)))
    hs = src.hopf
    for g in src.generators:
        i = g.pbw_index
        x = phi.images[i]
        d_img = phi.tensor(hs.coproduct_of[i])
        d_dst = apply_coproduct(x)
        diff = d_img - d_dst
        out.append(CheckEntry("coproduct", g.name, not diff, "" if not diff else str(diff)))
        e = apply_counit(x) - hs.counit_of[i]
        out.append(CheckEntry("counit", g.name, not e, "" if not e else str(e)))
        s = phi(hs.antipode_of[i]) - apply_antipode(x)
        out.append(CheckEntry("antipode", g.name, not s, "" if not s else str(s)))
    rep_items.extend(out)
    return out


# tilde presentations ----------------------------------------------------------

@dataclass
class TildeResult:
    source: str
    presentation: Presentation
    substitution: Substitution
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]


_TILDE_CACHE: dict = {}


def _build_tilde(entry, kind: str) -> TildeResult:
    key = (entry.name, id(entry.presentation), kind)
    hit = _TILDE_CACHE.get(key)
    if hit is not None and hit[0] is entry.presentation:
        return hit[1]
    res = _build_tilde_uncached(entry, kind)
    _TILDE_CACHE[key] = (entry.presentation, res)
    return res


def _build_tilde_uncached(entry, kind: str) -> TildeResult:
    from .cli.presfile import parse_presentation_file

    hat = entry.presentation
    if hat.classification != kind:
        want = "QUEA" if kind == "QUEA" else "QFA"
        raise InputError(f"{entry.name} is not a {want}-form entry")
    if not entry.tilde_text:
        raise InputError(f"{entry.name} declares no tilde presentation")
    t = parse_presentation_file(entry.tilde_text, max_sample_len=2)
    images = {g: hat.parse(expr) for g, expr in entry.tilde_recipe.items()}
    phi = Substitution(t, hat, images)
    checks: list = []
    verify_substitution(phi, checks)
    res = TildeResult(entry.name, t, phi, checks)
    if not res.ok:
        bad = res.failures()[0]
        raise VerificationFailed(f"{t.name}: {bad.check} fails on {bad.item}: {bad.detail}")
    return res


def tilde_presentation(entry) -> TildeResult:
    """The catalog-declared U~ presentation, re-verified inside the hat algebra."""
    return _build_tilde(entry, "QUEA")


def tilde_F_presentation(entry) -> TildeResult:
    """The catalog-declared F~ presentation, re-verified inside F_q."""
    return _build_tilde(entry, "QFA")


# double tilde ----------------------------------------------------------------

@dataclass
class DoubleTildeReport:
    entry: str
    checks: list = field(default_factory=list)
    double_generators: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, check: str, item: str, ok: bool, detail: str = "") -> None:
        self.checks.append(CheckEntry(check, item, ok, detail))


def _dd_name(g: str) -> str:
    return f"dd_{g}"


def double_tilde_check(entry, n_max: int = 3) -> DoubleTildeReport:
    """Rebuild the hat algebra from the tilde presentation.

    QUEA side: the generators of (q-1)^-1 I are (g~ - eps(g~))/(q-1).
    QFA side: the new generators are (q-1) g~, and each must pass the
    membership test inside the tilde lattice.  In both cases the new
    generators must lie in the hat lattice and regenerate every hat
    generator through the catalog-declared expressions."""
    hat = entry.presentation
    res = (tilde_presentation if hat.classification == "QUEA" else tilde_F_presentation)(entry)
    t, phi = res.presentation, res.substitution
    rep = DoubleTildeReport(entry.name)
    for c in res.checks:
        rep.checks.append(CheckEntry("tilde " + c.check, c.item, c.ok, c.detail))
    dd = {}
    for g in t.generators:
        img = phi.images[g.pbw_index]
        if hat.classification == "QUEA":
            eps = t.hopf.counit_of[g.pbw_index]
            x = (img - hat.scalar(eps)).scale(ONE / Q_MINUS_1)
        else:
            x = img.scale(Q_MINUS_1)
        x = NcElement(hat, {w: as_coeff(c) for w, c in x.terms.items()})
        dd[_dd_name(g.name)] = x
        rep.double_generators[_dd_name(g.name)] = str(x)
        v = lattice_valuation(x, hat)
        rep.add("double generator lies in the hat lattice", _dd_name(g.name), v >= 0,
                f"valuation {_val_out(v)}")
    if hat.classification == "QFA":
        for g in t.generators:
            scaled = t.gen(g.name).scale(Q_MINUS_1)
            verdict = tilde_member(scaled, t, n_max)
            rep.add("(q-1)*generator passes the membership test in the tilde lattice",
                    g.name, verdict.verdict == MEMBER,
                    f"{verdict.verdict}; profile {[(n, _val_out(v)) for n, v in verdict.profile]}")
    ddp = Presentation("dd", list(dd))
    from .cli.parse import parse_expression

    to_hat = Substitution(ddp, hat, dd)
    for h in hat.generators:
        expr = entry.regeneration.get(h.name)
        if expr is None:
            rep.add("regeneration", h.name, False, "no regeneration expression declared")
            continue
        raw = parse_expression(expr, ddp, raw=True)
        val = to_hat(raw) if isinstance(raw, NcElement) else hat.scalar(raw)
        diff = val - hat.gen(h.name)
        rep.add("regeneration", f"{h.name} = {expr}", not diff, "" if not diff else str(diff))
    return rep


def scaled(x: NcElement, k: int) -> NcElement:
    """(q-1)^k * x."""
    return x.scale(Q_MINUS_1 ** k) if k >= 0 else x.scale(ONE / Q_MINUS_1 ** (-k))


__all__ = [
    "LatticeSpec", "lattice_valuation", "basis_coordinates", "monomial_coordinates",
    "valuation_profile", "tilde_member", "MembershipVerdict", "tilde_presentation",
    "tilde_F_presentation", "double_tilde_check", "Substitution", "verify_substitution",
    "MEMBER", "NOT_MEMBER", "INCONCLUSIVE", "ZERO",
]
