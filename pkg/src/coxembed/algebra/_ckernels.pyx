# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term kernels; semantics match ``_pykernels`` exactly."""

from cpython.dict cimport PyDict_GetItem, PyDict_SetItem
from cpython.object cimport PyObject

from math import gcd


def mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef list akeys, avals, bkeys, bvals
    cdef Py_ssize_t i, j, na, nb
    cdef object ka, ca, k, v
    cdef PyObject *old
    if len(a) > len(b):
        a, b = b, a
    akeys = list(a.keys())
    avals = list(a.values())
    bkeys = list(b.keys())
    bvals = list(b.values())
    na = len(akeys)
    nb = len(bkeys)
    for i in range(na):
        ka = akeys[i]
        ca = avals[i]
        for j in range(nb):
            k = ka + bkeys[j]
            v = ca * bvals[j]
            old = PyDict_GetItem(out, k)
            if old is NULL:
                PyDict_SetItem(out, k, v)
            else:
                PyDict_SetItem(out, k, <object>old + v)
    return {k: v for k, v in out.items() if v}


def lincomb_terms(dict a, object ca, dict b, object cb):
    cdef dict out = {}
    cdef object k, v
    cdef PyObject *old
    for k, v in a.items():
        PyDict_SetItem(out, k, v * ca)
    for k, v in b.items():
        old = PyDict_GetItem(out, k)
        if old is NULL:
            PyDict_SetItem(out, k, v * cb)
        else:
            PyDict_SetItem(out, k, <object>old + v * cb)
    return {k: v for k, v in out.items() if v}


def scale_terms(dict a, object c):
    return {k: v * c for k, v in a.items()}


def exact_div_terms(dict a, object c):
    return {k: v // c for k, v in a.items()}


def content_gcd(dict a, object start):
    cdef object g = start
    for v in a.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g
