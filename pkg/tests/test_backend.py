"""The compiled kernel and the pure-Python fallback must agree term for term."""

import os
import random
import subprocess
import sys

import pytest

from qdual import _kernel, kernel
from qdual.catalog import catalog_get
from qdual.ncalg import CACHE_LIMIT, max_rewrite_steps, random_words
from qdual.qcoeff import ONE

ckernel = pytest.importorskip("qdual._ckernel")


def test_compiled_backend_selected():
    assert kernel.BACKEND == "cython"


@pytest.mark.parametrize("name", ["Uq_sl2_hat", "Fq_SL2_hat", "Fq_SL3_hat", "Uq_hn_a_hat(2)"])
def test_normal_words_agree(name):
    p = catalog_get(name).presentation
    rng = random.Random(11)
    budget = max_rewrite_steps()
    for w in random_words(p, rng, 25, 5):
        a = _kernel.normal_word(w, ONE, p._rules, p._lens, p._weights, {}, budget, CACHE_LIMIT)
        b = ckernel.normal_word(w, ONE, p._rules, p._lens, p._weights, {}, budget, CACHE_LIMIT)
        assert dict(a) == dict(b)


@pytest.mark.parametrize("name", ["Uq_sl2_hat", "Fq_E2_hat"])
def test_products_agree(name):
    p = catalog_get(name).presentation
    rng = random.Random(5)
    words = random_words(p, rng, 12, 3)
    budget = max_rewrite_steps()
    for x, y in zip(words, words[1:]):
        xt, yt = {x: ONE}, {y: ONE + ONE}
        a = _kernel.product_terms(xt, yt, ONE, p._rules, p._lens, p._weights, {}, budget, CACHE_LIMIT)
        b = ckernel.product_terms(xt, yt, ONE, p._rules, p._lens, p._weights, {}, budget, CACHE_LIMIT)
        assert a == b


def test_poly_arithmetic_agrees():
    rng = random.Random(2)
    for _ in range(200):
        a = {rng.randint(-3, 3): rng.randint(-5, 5) for _ in range(3)}
        b = {rng.randint(-3, 3): rng.randint(-5, 5) for _ in range(3)}
        a = {k: v for k, v in a.items() if v}
        b = {k: v for k, v in b.items() if v}
        assert _kernel.poly_add(a, b) == ckernel.poly_add(a, b)
        assert _kernel.poly_mul(a, b) == ckernel.poly_mul(a, b)


def test_fallback_process_matches():
    script = ("from qdual import kernel\n"
              "from qdual.catalog import catalog_get\n"
              "from qdual.hopf import delta_n\n"
              "p = catalog_get('Fq_SL2_hat').presentation\n"
              "print(kernel.BACKEND)\n"
              "print(delta_n(p.parse('a*d*b'), 3))\n"
              "print(p.parse('(a + b)^3*(c + d)^2'))\n")
    outs = {}
    for flag in ("0", "1"):
        env = dict(os.environ, QDUAL_PURE_PYTHON=flag)
        r = subprocess.run([sys.executable, "-c", script], capture_output=True, text=True,
                           env=env, timeout=120)
        assert r.returncode == 0, r.stderr
        backend, rest = r.stdout.split("\n", 1)
        outs[backend] = rest
    assert set(outs) == {"cython", "python"}
    assert outs["cython"] == outs["python"]
