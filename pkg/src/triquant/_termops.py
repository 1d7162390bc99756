"""Pure-Python term-map kernels.

A term map is a dict mapping exponent tuples (one entry per variable) to
nonzero integer coefficients.  The multiplier below is the deliberately
naive term-by-term reference; the optional compiled extension implements
the same interface and is checked against this one.
"""


def mul_terms(a, b, nvars):
    """Multiply two term maps; distributes over all term pairs."""
    if not a or not b:
        return {}
    out = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = get(e)
            out[e] = ca * cb if c is None else c + ca * cb
    return {e: c for e, c in out.items() if c}


def eval_terms(terms, values):
    """Exact integer value of a term map at a point (one value per variable).

    Powers of each coordinate are cached per call; exponents repeat heavily
    in the polynomials this package produces.
    """
    total = 0
    caches = [{} for _ in values]
    for exps, coeff in terms.items():
        acc = coeff
        for i, e in enumerate(exps):
            if e == 0:
                continue
            cache = caches[i]
            p = cache.get(e)
            if p is None:
                p = values[i] ** e
                cache[e] = p
            acc *= p
        total += acc
    return total
