# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term-map kernels.

Same interface as ``_termops``: term maps are dicts from exponent tuples to
nonzero int coefficients.  Multiplication packs exponent vectors into a
single machine word when the degrees allow it, which turns monomial
multiplication into one integer addition; otherwise it falls back to
C-level tuple arithmetic.  Coefficients stay Python ints throughout, so
results are exact at any magnitude.
"""

from cpython.tuple cimport PyTuple_New, PyTuple_GET_ITEM, PyTuple_SET_ITEM
from cpython.long cimport PyLong_FromLongLong, PyLong_AsLongLong
from cpython.ref cimport Py_INCREF
from libc.stdlib cimport malloc, free


cdef inline int _bit_length(long long v):
    cdef int n = 0
    while v:
        v >>= 1
        n += 1
    return n


def mul_terms(dict a, dict b, Py_ssize_t nvars):
    """Multiply two term maps; distributes over all term pairs."""
    if not a or not b:
        return {}
    if nvars == 0:
        # Only constant terms are possible.
        ca = a[()]
        cb = b[()]
        prod = ca * cb
        return {(): prod} if prod else {}

    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef Py_ssize_t i, j, v
    cdef long long e, packed, width_sum
    cdef object key, coeff, cur, contrib

    # Per-variable maxima decide whether packed keys can hold every
    # exponent sum without overflowing its bit field.
    cdef long long *amax = <long long *> malloc(nvars * sizeof(long long))
    cdef long long *bmax = <long long *> malloc(nvars * sizeof(long long))
    cdef long long *shifts = <long long *> malloc(nvars * sizeof(long long))
    if amax == NULL or bmax == NULL or shifts == NULL:
        free(amax); free(bmax); free(shifts)
        raise MemoryError()
    for v in range(nvars):
        amax[v] = 0
        bmax[v] = 0
    for key in a:
        for v in range(nvars):
            e = PyLong_AsLongLong(<object> PyTuple_GET_ITEM(key, v))
            if e > amax[v]:
                amax[v] = e
    for key in b:
        for v in range(nvars):
            e = PyLong_AsLongLong(<object> PyTuple_GET_ITEM(key, v))
            if e > bmax[v]:
                bmax[v] = e
    width_sum = 0
    for v in range(nvars):
        shifts[v] = width_sum
        width_sum += _bit_length(amax[v] + bmax[v])
    cdef bint packable = width_sum <= 62

    cdef long long *akeys = NULL
    cdef long long *bkeys = NULL
    cdef list acoeffs = list(a.values())
    cdef list bcoeffs = list(b.values())
    cdef dict out = {}
    cdef dict packed_out
    cdef object okey, oval, tup
    cdef long long rem, mask, width

    if packable:
        akeys = <long long *> malloc(na * sizeof(long long))
        bkeys = <long long *> malloc(nb * sizeof(long long))
        if akeys == NULL or bkeys == NULL:
            free(amax); free(bmax); free(shifts)
            free(akeys); free(bkeys)
            raise MemoryError()
        i = 0
        for key in a:
            packed = 0
            for v in range(nvars):
                packed += PyLong_AsLongLong(<object> PyTuple_GET_ITEM(key, v)) << shifts[v]
            akeys[i] = packed
            i += 1
        j = 0
        for key in b:
            packed = 0
            for v in range(nvars):
                packed += PyLong_AsLongLong(<object> PyTuple_GET_ITEM(key, v)) << shifts[v]
            bkeys[j] = packed
            j += 1
        packed_out = {}
        try:
            for i in range(na):
                coeff = acoeffs[i]
                e = akeys[i]
                for j in range(nb):
                    okey = PyLong_FromLongLong(e + bkeys[j])
                    contrib = coeff * <object> bcoeffs[j]
                    cur = packed_out.get(okey)
                    if cur is None:
                        packed_out[okey] = contrib
                    else:
                        packed_out[okey] = cur + contrib
        finally:
            free(akeys)
            free(bkeys)
        # Unpack machine-word keys back into exponent tuples.
        for okey, oval in packed_out.items():
            if not oval:
                continue
            packed = PyLong_AsLongLong(okey)
            tup = PyTuple_New(nvars)
            for v in range(nvars):
                if v + 1 < nvars:
                    width = shifts[v + 1] - shifts[v]
                    mask = (<long long> 1 << width) - 1
                    rem = (packed >> shifts[v]) & mask
                else:
                    rem = packed >> shifts[v]
                okey = PyLong_FromLongLong(rem)
                Py_INCREF(okey)
                PyTuple_SET_ITEM(tup, v, okey)
            out[tup] = oval
        free(amax); free(bmax); free(shifts)
        return out

    free(amax); free(bmax); free(shifts)

    # Fallback for exponent ranges too wide to pack: tuple keys, with the
    # component sums still done in C.
    cdef list akeylist = list(a.keys())
    cdef list bkeylist = list(b.keys())
    cdef object ka, kb, comp
    for i in range(na):
        ka = akeylist[i]
        coeff = acoeffs[i]
        for j in range(nb):
            kb = bkeylist[j]
            tup = PyTuple_New(nvars)
            for v in range(nvars):
                comp = (<object> PyTuple_GET_ITEM(ka, v)) + (<object> PyTuple_GET_ITEM(kb, v))
                Py_INCREF(comp)
                PyTuple_SET_ITEM(tup, v, comp)
            contrib = coeff * <object> bcoeffs[j]
            cur = out.get(tup)
            if cur is None:
                out[tup] = contrib
            else:
                out[tup] = cur + contrib
    return {k: c for k, c in out.items() if c}


def eval_terms(dict terms, tuple values):
    """Exact integer value of a term map at a point."""
    cdef Py_ssize_t nvars = len(values)
    cdef Py_ssize_t v
    cdef object exps, coeff, acc, p, e_obj
    cdef object total = 0
    cdef list caches = [dict() for _ in range(nvars)]
    cdef dict cache
    for exps, coeff in terms.items():
        acc = coeff
        for v in range(nvars):
            e_obj = <object> PyTuple_GET_ITEM(exps, v)
            if not e_obj:
                continue
            cache = <dict> caches[v]
            p = cache.get(e_obj)
            if p is None:
                p = (<object> PyTuple_GET_ITEM(values, v)) ** e_obj
                cache[e_obj] = p
            acc = acc * p
        total = total + acc
    return total
