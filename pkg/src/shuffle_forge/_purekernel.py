"""Pure-Python hot kernels for sparse polynomial arithmetic.

Monomials are flat tuples (var1, exp1, var2, exp2, ...) with integer variable
codes strictly ascending and all exponents nonzero.  Coefficients are opaque
ring elements supporting +, *, unary - and truth testing (zero is falsy).

`shuffle_forge._fastkernel` is a compiled twin of this module; `polyvars`
picks whichever is importable.
"""

BACKEND = "pure"


def merge_keys(ka, kb):
    """Product of two monomial keys: merge sorted var codes, add exponents."""
    if not ka:
        return kb
    if not kb:
        return ka
    out = []
    ia, ib = 0, 0
    la, lb = len(ka), len(kb)
    while ia < la and ib < lb:
        va, vb = ka[ia], kb[ib]
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
    out.extend(ka[ia:])
    out.extend(kb[ib:])
    return tuple(out)


def poly_mul(a, b):
    """Multiply two term maps {key: coeff}."""
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = merge_keys(ka, kb)
            c = ca * cb
            prev = get(k)
            if prev is None:
                out[k] = c
            else:
                s = prev + c
                if s:
                    out[k] = s
                else:
                    del out[k]
    return out


def poly_add_inplace(acc, other):
    """acc += other, in place on the term map acc."""
    get = acc.get
    for k, c in other.items():
        prev = get(k)
        if prev is None:
            acc[k] = c
        else:
            s = prev + c
            if s:
                acc[k] = s
            else:
                del acc[k]
    return acc


def poly_scale(a, c):
    """Multiply every coefficient of the term map by the scalar c."""
    if not c:
        return {}
    out = {}
    for k, ca in a.items():
        s = ca * c
        if s:
            out[k] = s
    return out
