"""Sparse multivariate Laurent polynomials in colored variables.

A monomial is a flat tuple (var1, exp1, var2, exp2, ...) with integer variable
codes ascending and exponents nonzero; a polynomial is a dict from monomial to
scalar.  Scalars are RationalV (trigonometric side) or FracH (rational side);
any ring element with +, *, unary -, / and truthiness works.

Variable codes pack a kind tag and two indices so that keys are plain integer
tuples; see xvar/wvar/... below.  The hot loops (key merge, multiply, add)
live in the kernel module: the compiled `_fastkernel` when available, else the
pure-Python `_purekernel` with identical semantics.
"""

import itertools

from .scalars import NotDivisible

try:
    from . import _fastkernel as _kernel
except ImportError:
    from . import _purekernel as _kernel

KERNEL_BACKEND = _kernel.BACKEND
merge_keys = _kernel.merge_keys
_poly_mul = _kernel.poly_mul
_poly_add_inplace = _kernel.poly_add_inplace
_poly_scale = _kernel.poly_scale


# -- variable codes -----------------------------------------------------

KIND_X, KIND_W, KIND_WP, KIND_Z, KIND_U = 1, 2, 3, 4, 5


def varcode(kind, a, b=0):
    if not (0 <= a < 4096 and 0 <= b < 4096):
        raise ValueError("variable index out of range")
    return (kind << 24) | (a << 12) | b


def xvar(i, r):
    """The r-th copy of the color-i variable (i >= 1, r >= 1)."""
    return varcode(KIND_X, i, r)


def wvar(beta_idx, s):
    return varcode(KIND_W, beta_idx, s)


def wpvar(beta_idx, s):
    return varcode(KIND_WP, beta_idx, s)


def zvar(beta_idx, r):
    return varcode(KIND_Z, beta_idx, r)


def uvar(idx):
    return varcode(KIND_U, idx)


def var_decode(code):
    return (code >> 24, (code >> 12) & 0xFFF, code & 0xFFF)


def var_name(code):
    kind, a, b = var_decode(code)
    return {KIND_X: f"x[{a}][{b}]", KIND_W: f"w[{a}][{b}]",
            KIND_WP: f"w'[{a}][{b}]", KIND_Z: f"z[{a}][{b}]",
            KIND_U: f"u[{a}]"}[kind]


# -- polynomial construction ---------------------------------------------

def p_zero():
    return {}


def p_const(c):
    return {(): c} if c else {}


def p_monomial(exps, c):
    """exps: dict var -> exponent."""
    if not c:
        return {}
    key = tuple(x for v in sorted(k for k, e in exps.items() if e)
                for x in (v, exps[v]))
    return {key: c}


def p_var(code, one, exp=1):
    return {(code, exp): one}


def p_add(a, b):
    out = dict(a)
    return _poly_add_inplace(out, b)


def p_sub(a, b):
    return _poly_add_inplace(dict(a), p_neg(b))


def p_neg(a):
    return {k: -c for k, c in a.items()}


def p_mul(a, b):
    return _poly_mul(a, b)


def p_scale(a, c):
    return _poly_scale(a, c)


def p_pow(a, n, one):
    result = p_const(one)
    base = a
    while n:
        if n & 1:
            result = _poly_mul(result, base)
        base = _poly_mul(base, base)
        n >>= 1
    return result


def p_is_zero(a):
    return not a


def p_equal(a, b):
    return a == b


def p_variables(a):
    out = set()
    for k in a:
        out.update(k[::2])
    return out


def p_total_degree(key):
    return sum(key[1::2])


def key_exp(key, var):
    for i in range(0, len(key), 2):
        if key[i] == var:
            return key[i + 1]
    return 0


def p_min_exp(a, var):
    """Minimal exponent of var over all terms (0 if var absent somewhere)."""
    return min(key_exp(k, var) for k in a)


def p_max_exp(a, var):
    return max(key_exp(k, var) for k in a)


def p_rename(a, mapping):
    """Relabel variables; mapping is var -> var, injective on p_variables(a)."""
    out = {}
    for k, c in a.items():
        pairs = sorted((mapping.get(k[i], k[i]), k[i + 1])
                       for i in range(0, len(k), 2))
        key = tuple(x for p in pairs for x in p)
        if key in out:
            raise ValueError("rename collision")
        out[key] = c
    return out


def p_coeff_map(a, func):
    out = {}
    for k, c in a.items():
        s = func(c)
        if s:
            out[k] = s
    return out


# -- substitution ---------------------------------------------------------

def p_substitute(a, assignment, one):
    """Replace variables by polynomials.

    assignment: var -> polynomial (term map).  Variables with negative
    exponents must map to invertible monomials (single term, invertible
    scalar).  Unassigned variables pass through.
    """
    cache = {}

    def image_power(var, e):
        got = cache.get((var, e))
        if got is not None:
            return got
        img = assignment[var]
        if e >= 0:
            out = p_pow(img, e, one)
        else:
            if len(img) != 1:
                raise ValueError(
                    f"negative exponent of {var_name(var)} with non-monomial image")
            key, c = next(iter(img.items()))
            inv_key = tuple(x if i % 2 == 0 else -x for i, x in enumerate(key))
            inv = {inv_key: _scalar_inverse(c, one)}
            out = p_pow(inv, -e, one)
        cache[(var, e)] = out
        return out

    result = {}
    for k, c in a.items():
        term = p_const(c)
        for i in range(0, len(k), 2):
            var, e = k[i], k[i + 1]
            if var in assignment:
                term = _poly_mul(term, image_power(var, e))
            else:
                term = _poly_mul(term, {(var, e): one})
        _poly_add_inplace(result, term)
    return result


def _scalar_inverse(c, one):
    try:
        return one / c
    except TypeError:
        raise ValueError("scalar not invertible") from None


# -- symmetrization ---------------------------------------------------------

def p_symmetrize(a, k):
    """Sum of a over all per-color copy permutations of S_k.

    k: dict or sequence color -> copy count (colors are 1-based for
    sequences).  The sum runs over the full product of symmetric groups.
    """
    kmap = _degree_map(k)
    out = {}
    for mapping in _color_permutations(kmap):
        _poly_add_inplace(out, p_rename(a, mapping))
    return out


def symmetrize(a, k):
    """Alias for the full-group symmetrization."""
    return p_symmetrize(a, k)


def _degree_map(k):
    if isinstance(k, dict):
        return {i: n for i, n in k.items() if n}
    return {i + 1: n for i, n in enumerate(k) if n}


def _color_permutations(kmap):
    colors = sorted(kmap)
    pools = [list(itertools.permutations(range(1, kmap[i] + 1))) for i in colors]
    for combo in itertools.product(*pools):
        mapping = {}
        for i, perm in zip(colors, combo):
            for r, target in enumerate(perm, start=1):
                if r != target:
                    mapping[xvar(i, r)] = xvar(i, target)
        yield mapping


def p_is_symmetric(a, k):
    kmap = _degree_map(k)
    for i, n in kmap.items():
        for r in range(1, n):
            swap = {xvar(i, r): xvar(i, r + 1), xvar(i, r + 1): xvar(i, r)}
            if p_rename(a, swap) != a:
                return False
    return True


# -- exact division -----------------------------------------------------

def _lex_greater(ka, kb):
    """Lex order on exponent vectors over ascending var codes."""
    ia = ib = 0
    la, lb = len(ka), len(kb)
    while ia < la or ib < lb:
        va = ka[ia] if ia < la else None
        vb = kb[ib] if ib < lb else None
        if vb is None or (va is not None and va < vb):
            ea, eb = ka[ia + 1], 0
            var_a_smaller = True
        elif va is None or vb < va:
            ea, eb = 0, kb[ib + 1]
            var_a_smaller = False
        else:
            ea, eb = ka[ia + 1], kb[ib + 1]
            var_a_smaller = None
        if ea != eb:
            return ea > eb
        if var_a_smaller is True:
            ia += 2
        elif var_a_smaller is False:
            ib += 2
        else:
            ia += 2
            ib += 2
    return False


def _shift_to_poly(a):
    """Factor out per-variable minimal exponents; return (poly, shift dict)."""
    shifts = {}
    for var in p_variables(a):
        m = p_min_exp(a, var)
        if m:
            shifts[var] = m
    if not shifts:
        return a, shifts
    out = {}
    for k, c in a.items():
        pairs = []
        for i in range(0, len(k), 2):
            e = k[i + 1] - shifts.get(k[i], 0)
            if e:
                pairs.append((k[i], e))
        for var, m in shifts.items():
            if key_exp(k, var) == 0 and m:
                pairs.append((var, -m))
        pairs.sort()
        out[tuple(x for p in pairs for x in p)] = c
    return out, shifts


def _linear_profile(g):
    """If g = lead * x_a - u with x_a its lex-max variable appearing to the
    first power in a single pure term, return (a, lead, u); else None."""
    a = max(p_variables(g), default=None)
    if a is None:
        return None
    lead = None
    u = {}
    for k, c in g.items():
        e = key_exp(k, a)
        if e == 0:
            u[k] = -c
        elif e == 1 and k == (a, 1):
            if lead is not None:
                return None
            lead = c
        else:
            return None
    if lead is None:
        return None
    return a, lead, u


def exact_div(f, g, one):
    """Return q with f = q * g over the scalar ring; raise NotDivisible else.

    Fast path for divisors linear in their top variable (every denominator
    factor in this package is of that shape); generic leading-term division
    otherwise.
    """
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    if not f:
        return {}
    if len(g) == 1:
        (gk, gc), = g.items()
        inv_key = tuple(x if i % 2 == 0 else -x for i, x in enumerate(gk))
        out = {}
        for k, c in f.items():
            out[merge_keys(k, inv_key)] = _coeff_div(c, gc)
        return out
    f0, sf = _shift_to_poly(f)
    g0, sg = _shift_to_poly(g)
    prof = _linear_profile(g0)
    if prof is not None:
        q0 = _div_linear(f0, *prof, one)
    else:
        q0 = _div_generic(f0, g0)
    shift = {}
    for var, m in sf.items():
        shift[var] = shift.get(var, 0) + m
    for var, m in sg.items():
        shift[var] = shift.get(var, 0) - m
    key = tuple(x for v in sorted(v for v, m in shift.items() if m)
                for x in (v, shift[v]))
    return _poly_mul(q0, {key: one}) if key else q0


def _div_linear(f, a, lead, u, one):
    """Divide polynomial f by lead*x_a - u (u free of x_a), exactly."""
    by_deg = {}
    top = 0
    for k, c in f.items():
        e = key_exp(k, a)
        top = max(top, e)
        stripped = tuple(x for i in range(0, len(k), 2) if k[i] != a
                         for x in (k[i], k[i + 1]))
        by_deg.setdefault(e, {})[stripped] = c
    q_parts = {}
    carry = {}
    lead_is_one = (lead == one)
    for e in range(top, 0, -1):
        coeff = p_add(by_deg.get(e, {}), carry)
        if not lead_is_one:
            coeff = {k: _coeff_div(c, lead) for k, c in coeff.items()}
        if coeff:
            q_parts[e - 1] = coeff
        carry = _poly_mul(coeff, u)
    rem = p_add(by_deg.get(0, {}), carry)
    if rem:
        raise NotDivisible("nonzero remainder", rem)
    out = {}
    for e, part in q_parts.items():
        mono = {(a, e): one} if e else {(): one}
        _poly_add_inplace(out, _poly_mul(part, mono))
    return out


def _div_generic(f, g):
    """Leading-term division for honest polynomials (small inputs only)."""
    rem = dict(f)
    quo = {}
    glt = max(g.keys(), key=_LexKey)
    gc = g[glt]
    while rem:
        rlt = max(rem.keys(), key=_LexKey)
        diff = _try_key_div(rlt, glt)
        if diff is None:
            raise NotDivisible("leading term not divisible", rem)
        c = _coeff_div(rem[rlt], gc)
        t = {diff: c}
        quo = p_add(quo, t)
        rem = p_sub(rem, _poly_mul(t, g))
    return quo


class _LexKey:
    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return _lex_greater(other.k, self.k)


def _try_key_div(ka, kb):
    """ka / kb as monomials with nonnegative result, else None."""
    out = dict(zip(ka[::2], ka[1::2]))
    for i in range(0, len(kb), 2):
        e = out.get(kb[i], 0) - kb[i + 1]
        if e < 0:
            return None
        if e:
            out[kb[i]] = e
        else:
            out.pop(kb[i], None)
    return tuple(x for v in sorted(out) for x in (v, out[v]))


def _coeff_div(a, b):
    if hasattr(a, "exact_div"):
        return a.exact_div(b)
    return a / b


# -- linear forms ----------------------------------------------------------

class LinearForm:
    """x_left - coeff * x_right (multiplicative twist) or
    x_left - x_right - shift (additive twist); shift lives in the scalar ring.
    """

    __slots__ = ("left", "right", "coeff", "shift")

    def __init__(self, left, right, coeff=None, shift=None):
        if left == right:
            raise ValueError("degenerate linear form")
        self.left = left
        self.right = right
        self.coeff = coeff
        self.shift = shift

    def poly(self, one):
        if self.coeff is not None:
            return p_add({(self.left, 1): one}, {(self.right, 1): -self.coeff})
        out = p_add({(self.left, 1): one}, {(self.right, 1): -one})
        if self.shift:
            _poly_add_inplace(out, p_const(-self.shift))
        return out


def divide_by_forms(f, forms, one):
    """Divide f by a product of linear forms factor by factor."""
    out = f
    for form in forms:
        out = exact_div(out, form.poly(one) if isinstance(form, LinearForm)
                        else form, one)
    return out


# -- serialization -----------------------------------------------------------

def p_serialize(a):
    rows = []
    for k in sorted(a.keys()):
        c = a[k]
        names = [[var_name(k[i]), k[i + 1]] for i in range(0, len(k), 2)]
        rows.append([names, repr(c)])
    return rows
