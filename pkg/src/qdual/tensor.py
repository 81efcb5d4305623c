"""Finite tensor powers of a presented algebra."""

from __future__ import annotations

from typing import Callable, Sequence

from . import kernel
from .errors import InputError
from .ncalg import CACHE_LIMIT, NcElement, Presentation, coeff_str, join_terms, max_rewrite_steps
from .qcoeff import INF, ONE, RATIONAL_TYPES, ZERO, LaurentPoly, QFrac, as_coeff, valuation


class TensorElement:
    """Element of p^{(x) arity}: map from tuples of normal words to coefficients."""

    __slots__ = ("p", "arity", "terms")

    def __init__(self, p: Presentation, arity: int, terms: dict):
        self.p = p
        self.arity = arity
        self.terms = terms

    def _check(self, other: "TensorElement") -> None:
        if other.p is not self.p:
            raise InputError(f"mixing tensors over {self.p.name} and {other.p.name}")
        if other.arity != self.arity:
            from .errors import ArityMismatch

            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            if self.arity == 0:
                return self + scalar_tensor(self.p, other)
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for ws, c in other.terms.items():
            s = out.get(ws)
            if s is None:
                out[ws] = c
            else:
                s = s + c
                if s:
                    out[ws] = s
                else:
                    del out[ws]
        return TensorElement(self.p, self.arity, out)

    def __neg__(self):
        return TensorElement(self.p, self.arity, {ws: -c for ws, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = as_coeff(c)
        if not c:
            return TensorElement(self.p, self.arity, {})
        return TensorElement(self.p, self.arity, {ws: v * c for ws, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_multiply(self, other, self.p)
        if isinstance(other, (LaurentPoly, QFrac, RATIONAL_TYPES)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (LaurentPoly, QFrac, RATIONAL_TYPES)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return other.p is self.p and self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list:
        key = self.p.word_key
        return sorted(self.terms, key=lambda ws: [key(w) for w in ws], reverse=True)

    def map_coeffs(self, f: Callable) -> "TensorElement":
        out = {}
        for ws, c in self.terms.items():
            c2 = f(c)
            if c2:
                out[ws] = c2
        return TensorElement(self.p, self.arity, out)

    def permute(self, perm: Sequence[int]) -> "TensorElement":
        """Slot k of the result is slot perm[k] of self."""
        return TensorElement(self.p, self.arity,
                             {tuple(ws[i] for i in perm): c for ws, c in self.terms.items()})

    def flip(self) -> "TensorElement":
        return self.permute(list(range(self.arity))[::-1])

    def __str__(self) -> str:
        if self.arity == 0:
            c = self.terms.get((), ZERO)
            return join_terms([coeff_str(c, "1")]) if c else "0"
        parts = []
        for ws in self.support():
            body = " @ ".join(self.p.word_str(w) for w in ws)
            parts.append(coeff_str(self.terms[ws], body) if body != "1" else coeff_str(self.terms[ws], "1"))
        return join_terms(parts)

    def __repr__(self) -> str:
        return f"<{self.p.name}^(x){self.arity}: {self}>"


def scalar_tensor(p: Presentation, c) -> TensorElement:
    c = as_coeff(c)
    return TensorElement(p, 0, {(): c} if c else {})


def unit_tensor(p: Presentation, arity: int) -> TensorElement:
    return TensorElement(p, arity, {((),) * arity: ONE})


def zero_tensor(p: Presentation, arity: int) -> TensorElement:
    return TensorElement(p, arity, {})


def tensor_of(xs: Sequence[NcElement]) -> TensorElement:
    """Multilinear expansion of x_1 (x) ... (x) x_n (xs must share a presentation)."""
    if not xs:
        raise InputError("tensor_of needs at least one factor; use scalar_tensor for arity 0")
    p = xs[0].p
    partial = {(): ONE}
    for x in xs:
        if x.p is not p:
            raise InputError("tensor factors from different presentations")
        nxt = {}
        for ws, c in partial.items():
            for w, cw in x.terms.items():
                k = ws + (w,)
                s = nxt.get(k)
                nxt[k] = c * cw if s is None else s + c * cw
        partial = {k: v for k, v in nxt.items() if v}
    return TensorElement(p, len(xs), partial)


def tensor_multiply(x: TensorElement, y: TensorElement, p: Presentation | None = None) -> TensorElement:
    """Componentwise product, each slot normalized."""
    p = p or x.p
    x._check(y)
    if x.arity == 0:
        return scalar_tensor(p, x.terms.get((), ZERO) * y.terms.get((), ZERO))
    terms = kernel.tensor_product_terms(x.terms, y.terms, x.arity, ONE, p._rules, p._lens,
                                        p._weights, p._cache, max_rewrite_steps(), CACHE_LIMIT)
    return TensorElement(p, x.arity, terms)


def tensor_normalize(p: Presentation, arity: int, raw: dict) -> TensorElement:
    """Normalize each slot of an arbitrary tuple-of-words -> coeff map."""
    out = {}
    for ws, c in raw.items():
        if not c:
            continue
        partial = [((), as_coeff(c))]
        for w in ws:
            nf = p.normal_word(tuple(w))
            partial = [(acc + (w2,), pc * c2) for acc, pc in partial for w2, c2 in nf]
        for k, v in partial:
            s = out.get(k)
            out[k] = v if s is None else s + v
    return TensorElement(p, arity, {k: v for k, v in out.items() if v})


def tensor_concat(x: TensorElement, y: TensorElement) -> TensorElement:
    """x (x) y as an element of arity x.arity + y.arity."""
    out = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            out[a + b] = ca * cb
    return TensorElement(x.p, x.arity + y.arity, {k: v for k, v in out.items() if v})


def tensor_coeff_valuation(x: TensorElement):
    """Minimum (q-1)-adic valuation of the coefficients (no lattice awareness)."""
    if not x.terms:
        return INF
    return min(valuation(c) for c in x.terms.values())


def slot_map(x: TensorElement, k: int, f: Callable[[tuple], TensorElement]) -> TensorElement:
    """Apply a linear map word -> tensor (arity m) to slot k; result arity n - 1 + m."""
    out = {}
    arity = None
    cache: dict = {}
    for ws, c in x.terms.items():
        w = ws[k]
        img = cache.get(w)
        if img is None:
            img = cache[w] = f(w)
        arity = x.arity - 1 + img.arity
        for vs, cv in img.terms.items():
            key = ws[:k] + vs + ws[k + 1:]
            s = out.get(key)
            out[key] = c * cv if s is None else s + c * cv
    if arity is None:
        return TensorElement(x.p, x.arity, {})
    return TensorElement(x.p, arity, {ws: c for ws, c in out.items() if c})
