"""Backend selection for the term-engine loops.

The compiled module is preferred; set ``QDUAL_PURE_PYTHON=1`` to force the
interpreted fallback (the benchmark and the equivalence tests do this).
"""

from __future__ import annotations

import os

if os.environ.get("QDUAL_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernel as impl

    BACKEND = "python"
else:
    try:
        from . import _ckernel as impl

        BACKEND = "cython"
    except ImportError:
        from . import _kernel as impl

        BACKEND = "python"

poly_add = impl.poly_add
poly_mul = impl.poly_mul
reduce_terms = impl.reduce_terms
normal_word = impl.normal_word
product_terms = impl.product_terms
tensor_product_terms = impl.tensor_product_terms
find_redex = impl.find_redex
