# Hot loops of the term engine.
#
# This file is plain Python and is used as-is when no compiled core is
# available.  _ckernel.pyx includes it verbatim so Cython compiles the very
# same source; kernel.py picks whichever one imports.

from heapq import heappop, heappush

from .errors import NonTerminating


def _clean(c):
    # integral rationals (Fraction or mpq) collapse to int
    if type(c) is int:
        return c
    if c.denominator == 1:
        return int(c.numerator)
    return c


def poly_add(a, b):
    """Sum of two exponent -> rational maps, zeros dropped."""
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = _clean(s)
            else:
                del out[e]
    return out


def poly_mul(a, b):
    """Product of two exponent -> rational maps, zeros dropped."""
    if not a or not b:
        return {}
    if len(a) == 1:
        (e0, c0), = a.items()
        if c0 == 1:
            return {e0 + e: c for e, c in b.items()}
        return {e0 + e: _clean(c0 * c) for e, c in b.items()}
    if len(b) == 1:
        return poly_mul(b, a)
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            s = out.get(e)
            out[e] = c1 * c2 if s is None else s + c1 * c2
    return {e: _clean(c) for e, c in out.items() if c}


def word_weight(w, weights):
    s = 0
    for g in w:
        s += weights[g]
    return s


def find_redex(w, rules, lens):
    """Leftmost occurrence of a rule left-hand side in w: (pos, length) or None."""
    n = len(w)
    for i in range(n):
        for L in lens:
            if i + L > n:
                break
            if w[i:i + L] in rules:
                return i, L
    return None


def reduce_terms(terms, rules, lens, weights, cache, budget):
    """Rewrite a word -> coefficient map to normal form.

    Words are processed largest-first in the (weighted length, lex) order, so
    every word is rewritten once after all of its contributions have merged.
    ``cache`` maps words to their already known normal forms (tuples of
    (word, coeff)); it is read here and filled by ``normal_word``.
    Returns (normal form map, rewrite steps used).
    """
    result = {}
    pending = {}
    heap = []
    for w, c in terms.items():
        if not c:
            continue
        hit = cache.get(w)
        if hit is not None:
            for w2, c2 in hit:
                s = result.get(w2)
                result[w2] = c * c2 if s is None else s + c * c2
            continue
        s = pending.get(w)
        if s is None:
            pending[w] = c
            heappush(heap, (-word_weight(w, weights), tuple([-g for g in w]), w))
        else:
            pending[w] = s + c
    steps = 0
    while heap:
        w = heappop(heap)[2]
        c = pending.pop(w)
        if not c:
            continue
        hit = cache.get(w)
        if hit is not None:
            for w2, c2 in hit:
                s = result.get(w2)
                result[w2] = c * c2 if s is None else s + c * c2
            continue
        red = find_redex(w, rules, lens)
        if red is None:
            s = result.get(w)
            result[w] = c if s is None else s + c
            continue
        steps += 1
        if steps > budget:
            raise NonTerminating(f"rewrite budget of {budget} steps exhausted")
        i, L = red
        pre = w[:i]
        post = w[i + L:]
        for r, rc in rules[w[i:i + L]]:
            nw = pre + r + post
            s = pending.get(nw)
            if s is None:
                pending[nw] = c * rc
                heappush(heap, (-word_weight(nw, weights), tuple([-g for g in nw]), nw))
            else:
                pending[nw] = s + c * rc
    return {w: c for w, c in result.items() if c}, steps


def normal_word(w, one, rules, lens, weights, cache, budget, cache_limit):
    """Normal form of a single word as a tuple of (word, coeff), memoized."""
    hit = cache.get(w)
    if hit is not None:
        return hit
    if find_redex(w, rules, lens) is None:
        nf = ((w, one),)
    else:
        res, _ = reduce_terms({w: one}, rules, lens, weights, cache, budget)
        nf = tuple(res.items())
    if len(cache) >= cache_limit:
        cache.clear()
    cache[w] = nf
    return nf


def product_terms(xt, yt, one, rules, lens, weights, cache, budget, cache_limit):
    """Normalized product of two word -> coeff maps whose words are normal."""
    out = {}
    for u, cu in xt.items():
        for v, cv in yt.items():
            c = cu * cv
            for w, cw in normal_word(u + v, one, rules, lens, weights, cache, budget, cache_limit):
                s = out.get(w)
                out[w] = c * cw if s is None else s + c * cw
    return {w: c for w, c in out.items() if c}


def tensor_product_terms(xt, yt, arity, one, rules, lens, weights, cache, budget, cache_limit):
    """Slotwise normalized product of two tuple-of-words -> coeff maps."""
    out = {}
    for us, cu in xt.items():
        for vs, cv in yt.items():
            partial = [((), cu * cv)]
            for k in range(arity):
                nf = normal_word(us[k] + vs[k], one, rules, lens, weights, cache, budget, cache_limit)
                partial = [(ws + (w,), pc * cw) for ws, pc in partial for w, cw in nf]
            for ws, pc in partial:
                s = out.get(ws)
                out[ws] = pc if s is None else s + pc
    return {ws: c for ws, c in out.items() if c}
