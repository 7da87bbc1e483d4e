"""Pure-Python term kernels.

A term dictionary maps a packed monomial key (see :mod:`coxembed.algebra.poly`)
to a nonzero integer coefficient; scalars passed to ``scale_terms`` and
``exact_div_terms`` are nonzero.  Monomial multiplication is key addition.
``_ckernels.pyx`` implements the same functions with identical semantics.
"""

from math import gcd


def mul_terms(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    bitems = list(b.items())
    for ka, ca in a.items():
        for kb, cb in bitems:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def lincomb_terms(a, ca, b, cb):
    """Return ``ca*a + cb*b`` with zero coefficients dropped."""
    out = {k: v * ca for k, v in a.items()}
    get = out.get
    for k, v in b.items():
        out[k] = get(k, 0) + v * cb
    return {k: v for k, v in out.items() if v}


def scale_terms(a, c):
    return {k: v * c for k, v in a.items()}


def exact_div_terms(a, c):
    return {k: v // c for k, v in a.items()}


def content_gcd(a, start):
    g = start
    for v in a.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g
