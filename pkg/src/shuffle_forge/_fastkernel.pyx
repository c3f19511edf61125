# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of shuffle_forge._purekernel (same API, same semantics)."""

BACKEND = "cython"


cpdef tuple merge_keys(tuple ka, tuple kb):
    """Product of two monomial keys: merge sorted var codes, add exponents."""
    cdef Py_ssize_t ia = 0, ib = 0, la = len(ka), lb = len(kb)
    cdef long va, vb
    if la == 0:
        return kb
    if lb == 0:
        return ka
    out = []
    while ia < la and ib < lb:
        va = ka[ia]
        vb = kb[ib]
        if va < vb:
            out.append(va)
            out.append(ka[ia + 1])
            ia += 2
        elif va > vb:
            out.append(vb)
            out.append(kb[ib + 1])
            ib += 2
        else:
            e = ka[ia + 1] + kb[ib + 1]
            if e:
                out.append(va)
                out.append(e)
            ia += 2
            ib += 2
    while ia < la:
        out.append(ka[ia])
        ia += 1
    while ib < lb:
        out.append(kb[ib])
        ib += 1
    return tuple(out)


cpdef dict poly_mul(dict a, dict b):
    """Multiply two term maps {key: coeff}."""
    cdef dict out = {}
    if len(a) > len(b):
        a, b = b, a
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = merge_keys(ka, kb)
            c = ca * cb
            prev = out.get(k)
            if prev is None:
                out[k] = c
            else:
                s = prev + c
                if s:
                    out[k] = s
                else:
                    del out[k]
    return out


cpdef dict poly_add_inplace(dict acc, dict other):
    """acc += other, in place on the term map acc."""
    for k, c in other.items():
        prev = acc.get(k)
        if prev is None:
            acc[k] = c
        else:
            s = prev + c
            if s:
                acc[k] = s
            else:
                del acc[k]
    return acc


cpdef dict poly_scale(dict a, c):
    """Multiply every coefficient of the term map by the scalar c."""
    cdef dict out = {}
    if not c:
        return out
    for k, ca in a.items():
        s = ca * c
        if s:
            out[k] = s
    return out
