"""Quantum root vectors (generic and preset), normalized variants, PBWD
monomials, and the closed-form shuffle images of the preset vectors.

Preset ("tilde") vectors follow the fixed bracket shapes: the chain along the
Lyndon word with twist v^{+-1}, twist v^{+-2} at the long-root step in type C,
and the two-chain plain commutator for the doubled C-type root.  A part
decomposition assigns one mode per color; colors visited twice reuse the same
part, so the total mode is sum(nu_l * part_l).
"""

from .scalars import (RationalV, RV_ONE, angle, quantum_factorial)
from .shuffle import (FELeaf, FEProd, FEScale, FEComm, psi, star, unit,
                      ShuffleElement)
from . import polyvars as pv
from .polyvars import xvar


def _chain(colors, modes, lam):
    """Left-nested commutator [[..[e,e]_lam, ...]_lam over given leaves."""
    expr = FELeaf(colors[0], modes[0])
    for c, m in zip(colors[1:], modes[1:]):
        expr = FEComm(expr, FELeaf(c, m), lam)
    return expr


def total_mode(beta, parts):
    """The mode realized by a per-color part assignment."""
    return sum(beta.nu[l] * parts[l] for l in beta.nu)


def tilde_parts(beta, s):
    """Canonical decomposition: the whole mode on a unit-coefficient slot."""
    parts = {l: 0 for l in beta.nu}
    if beta.sys.type == "C" and beta.tag == "ini":
        parts[beta.sys.rank] = s
    else:
        parts[beta.i if beta.tag != "n" else beta.sys.rank] = s
    assert total_mode(beta, parts) == s
    return parts


def tilde_root_vector(beta, eps, parts):
    """The preset quantum root vector as a free expression; eps in {+1,-1}."""
    sys = beta.sys
    n = sys.rank
    lam1 = RationalV.v_power(eps)
    lam2 = RationalV.v_power(2 * eps)
    i, j, tag = beta.i, beta.j, beta.tag
    if tag == "n":
        return FELeaf(n, parts[n])
    if sys.type == "C":
        if tag == "ij":
            cols = list(range(i, j + 1))
            return _chain(cols, [parts[c] for c in cols], lam1)
        if tag == "in":
            cols = list(range(i, n))
            up = _chain(cols, [parts[c] for c in cols], lam1)
            return FEComm(up, FELeaf(n, parts[n]), lam2)
        if tag == "inj":
            cols = list(range(i, n))
            expr = _chain(cols, [parts[c] for c in cols], lam1)
            expr = FEComm(expr, FELeaf(n, parts[n]), lam2)
            for c in range(n - 1, j - 1, -1):
                expr = FEComm(expr, FELeaf(c, parts[c]), lam1)
            return expr
        if tag == "ini":
            cols = list(range(i, n))
            up = _chain(cols, [parts[c] for c in cols], lam1)
            inner = FEComm(up, FELeaf(n, parts[n]), lam2)
            return FEComm(up, inner, None)
    else:
        if tag == "ij":
            cols = list(range(i, j + 1))
            return _chain(cols, [parts[c] for c in cols], lam1)
        if tag == "in":
            cols = list(range(i, n - 1))
            up = _chain(cols, [parts[c] for c in cols], lam1)
            return FEComm(up, FELeaf(n, parts[n]), lam1)
        if tag == "inj":
            cols = list(range(i, n - 1))
            expr = _chain(cols, [parts[c] for c in cols], lam1)
            expr = FEComm(expr, FELeaf(n, parts[n]), lam1)
            for c in range(n - 1, j - 1, -1):
                expr = FEComm(expr, FELeaf(c, parts[c]), lam1)
            return expr
    raise ValueError(f"no preset for {beta!r}")


def generic_root_vector(beta, modes, lambdas):
    """Chain root vector along the Lyndon word with chosen twists.

    modes: one mode per word position; lambdas: one scalar per bracket.
    Covers every root except the doubled C-type one (two-factor form below).
    """
    if beta.sys.type == "C" and beta.tag == "ini":
        raise ValueError("doubled C-type root needs the two-factor form")
    word = beta.word
    if len(modes) != len(word) or len(lambdas) != len(word) - 1:
        raise ValueError("decomposition shape mismatch")
    expr = FELeaf(word[0], modes[0])
    for letter, m, lam in zip(word[1:], modes[1:], lambdas):
        expr = FEComm(expr, FELeaf(letter, m), lam)
    return expr


def doubled_root_vector(beta, spec1, spec2, lam):
    """E_{[i,n,i],s} = [E_{[i,n-1],s1}, E_{[i,n],s2}]_lam (type C).

    spec1/spec2: (modes, lambdas) for the chain vectors of [i,n-1] and [i,n].
    """
    from .roots import positive_roots
    sys = beta.sys
    if sys.type != "C" or beta.tag != "ini":
        raise ValueError("two-factor form only for the doubled C-type root")
    n, i = sys.rank, beta.i
    sub1 = sub2 = None
    for b in positive_roots(sys):
        if b.tag == "ij" and b.i == i and b.j == n - 1:
            sub1 = b
        if b.tag == "in" and b.i == i:
            sub2 = b
    e1 = generic_root_vector(sub1, *spec1)
    e2 = generic_root_vector(sub2, *spec2)
    return FEComm(e1, e2, lam)


LAMBDA_POOL = tuple(RationalV.v_power(t) for t in range(-2, 3))


def random_root_vector(beta, s, rng):
    """A generic root vector with seeded random decomposition and twists."""
    sys = beta.sys
    if sys.type == "C" and beta.tag == "ini":
        s1 = rng.choice((-1, 0, 1))
        s2 = s - s1
        spec1 = _random_chain_spec(beta.height - (sys.rank - beta.i) - 1, s1, rng)
        spec2 = _random_chain_spec(sys.rank - beta.i + 1, s2, rng)
        return doubled_root_vector(beta, spec1, spec2, rng.choice(LAMBDA_POOL))
    modes, lambdas = _random_chain_spec(beta.height, s, rng)
    return generic_root_vector(beta, modes, lambdas)


def _random_chain_spec(length, s, rng):
    modes = [rng.choice((-1, 0, 1)) for _ in range(length - 1)]
    modes.append(s - sum(modes))
    lambdas = [rng.choice(LAMBDA_POOL) for _ in range(length - 1)]
    return modes, lambdas


def rtt_root_vector(beta, s, eps, parts=None):
    """Normalized root vector: <2>*tilde for the simple long root in type C,
    <1>*tilde otherwise."""
    sys = beta.sys
    parts = parts if parts is not None else tilde_parts(beta, s)
    scalar = angle(2) if (sys.type == "C" and beta.tag == "n") else angle(1)
    return FEScale(RationalV.from_laurent(scalar),
                   tilde_root_vector(beta, eps, parts))


def divided_power(beta, s, p, eps, parts=None):
    """tilde^p / ([2]^p [p]_{v_beta}!) for the doubled C-type root,
    tilde^p / [p]_{v_beta}! otherwise."""
    if p == 0:
        return FEProd([])
    parts = parts if parts is not None else tilde_parts(beta, s)
    base = tilde_root_vector(beta, eps, parts)
    denom = quantum_factorial(p, beta.vbeta_exp)
    if beta.sys.type == "C" and beta.tag == "ini":
        denom = denom * quantum_factorial(2, 1) ** p
    scalar = RV_ONE / RationalV.from_laurent(denom)
    return FEScale(scalar, FEProd([base] * p))


def pbwd_monomial(h, eps=1):
    """Ordered product of preset root vectors E_{beta,s}^{h(beta,s)}."""
    factors = []
    for beta, s, mult in h.entries:
        expr = tilde_root_vector(beta, eps, tilde_parts(beta, s))
        factors.extend([expr] * mult)
    return FEProd(factors)


_root_image_cache = {}


def tilde_image(sys, beta, s, eps=1):
    """Cached shuffle image of the preset root vector."""
    key = (sys.key(), beta.key(), s, eps)
    got = _root_image_cache.get(key)
    if got is None:
        got = psi(sys, tilde_root_vector(beta, eps, tilde_parts(beta, s)))
        _root_image_cache[key] = got
    return got


def pbwd_image(sys, h, eps=1):
    """Shuffle image of the PBWD monomial, via cached root-vector images."""
    acc = unit(sys)
    for beta, s, mult in h.entries:
        piece = tilde_image(sys, beta, s, eps)
        for _ in range(mult):
            acc = star(acc, piece)
    return acc


# -- closed forms ---------------------------------------------------------

def _q_factor(ell, one):
    """(1+v^2)(x_{l,1}x_{l,2} + x_{l+1,1}x_{l+1,2})
       - v(x_{l,1}+x_{l,2})(x_{l+1,1}+x_{l+1,2})."""
    one_plus_v2 = RationalV(_LZ({0: 1, 2: 1}))
    v = RationalV.v_power(1)
    x1, x2 = xvar(ell, 1), xvar(ell, 2)
    y1, y2 = xvar(ell + 1, 1), xvar(ell + 1, 2)
    part1 = pv.p_add(pv.p_monomial({x1: 1, x2: 1}, one_plus_v2),
                     pv.p_monomial({y1: 1, y2: 1}, one_plus_v2))
    sx = pv.p_add(pv.p_var(x1, one), pv.p_var(x2, one))
    sy = pv.p_add(pv.p_var(y1, one), pv.p_var(y2, one))
    part2 = pv.p_scale(pv.p_mul(sx, sy), v)
    return pv.p_sub(part1, part2)


def closed_form(beta, eps, parts):
    """The closed-form shuffle image of the preset root vector."""
    sys = beta.sys
    n = sys.rank
    i, j, tag = beta.i, beta.j, beta.tag
    s = parts
    one = RV_ONE
    v = RationalV.v_power(1)

    def mono(exps):
        return pv.p_monomial(
            {xvar(c, copy): e for (c, copy), e in exps.items()}, one)

    a1 = RationalV.from_laurent(angle(1))
    a2 = RationalV.from_laurent(angle(2))
    plus = eps > 0

    if tag == "n":
        pref = one
        num = mono({(n, 1): s[n]})
    elif sys.type == "C":
        if tag == "ij":
            pref = a1 ** (j - i)
            exps = {}
            if plus:
                for l in range(i, j):
                    exps[(l, 1)] = s[l] + 1
                exps[(j, 1)] = s[j]
            else:
                exps[(i, 1)] = s[i]
                for l in range(i + 1, j + 1):
                    exps[(l, 1)] = s[l] + 1
            num = mono(exps)
        elif tag == "in":
            pref = a1 ** (n - i - 1) * a2
            exps = {}
            if plus:
                for l in range(i, n):
                    exps[(l, 1)] = s[l] + 1
                exps[(n, 1)] = s[n]
            else:
                exps[(i, 1)] = s[i]
                for l in range(i + 1, n):
                    exps[(l, 1)] = s[l] + 1
                exps[(n, 1)] = s[n] + 1
            num = mono(exps)
        elif tag == "inj":
            pref = a1 ** (2 * n - i - j - 1) * a2
            one_plus_v2 = RationalV(
                _LZ({0: 1, 2: 1}))
            if plus:
                exps = {}
                for l in range(i, j):
                    exps[(l, 1)] = s[l] + 1
                exps[(j, 1)] = s[j]
                exps[(j, 2)] = s[j]
                for l in range(j + 1, n):
                    exps[(l, 1)] = s[l] + 1
                    exps[(l, 2)] = s[l] + 1
                exps[(n, 1)] = s[n] + 1
                g = mono(exps)
                bracket = pv.p_sub(
                    pv.p_monomial({xvar(j, 1): 1, xvar(j, 2): 1}, one_plus_v2),
                    pv.p_scale(pv.p_mul(
                        pv.p_var(xvar(j - 1, 1), one),
                        pv.p_add(pv.p_var(xvar(j, 1), one),
                                 pv.p_var(xvar(j, 2), one))), v))
            else:
                exps = {(i, 1): s[i]}
                for l in range(i + 1, j):
                    exps[(l, 1)] = s[l] + 1
                for l in range(j, n):
                    exps[(l, 1)] = s[l] + 1
                    exps[(l, 2)] = s[l] + 1
                exps[(n, 1)] = s[n] + 1
                g = mono(exps)
                bracket = pv.p_sub(
                    pv.p_monomial({xvar(j - 1, 1): 1}, one_plus_v2),
                    pv.p_scale(pv.p_add(pv.p_var(xvar(j, 1), one),
                                        pv.p_var(xvar(j, 2), one)), v))
            num = pv.p_mul(g, bracket)
            for l in range(j, n - 1):
                num = pv.p_mul(num, _q_factor(l, one))
        elif tag == "ini":
            pref = a1 ** (2 * n - 2 * i - 2) * a2 ** 2
            exps = {}
            if plus:
                for l in range(i, n):
                    exps[(l, 1)] = s[l] + 1
                    exps[(l, 2)] = s[l] + 1
                exps[(n, 1)] = s[n]
            else:
                exps[(i, 1)] = s[i]
                exps[(i, 2)] = s[i]
                for l in range(i + 1, n):
                    exps[(l, 1)] = s[l] + 1
                    exps[(l, 2)] = s[l] + 1
                exps[(n, 1)] = s[n] + 2
            num = mono(exps)
            for l in range(i, n - 1):
                num = pv.p_mul(num, _q_factor(l, one))
        else:
            raise ValueError(tag)
    else:
        if tag == "ij":
            pref = a1 ** (j - i)
            exps = {}
            if plus:
                for l in range(i, j):
                    exps[(l, 1)] = s[l] + 1
                exps[(j, 1)] = s[j]
            else:
                exps[(i, 1)] = s[i]
                for l in range(i + 1, j + 1):
                    exps[(l, 1)] = s[l] + 1
            num = mono(exps)
        elif tag == "in":
            pref = a1 ** (n - i - 1)
            exps = {}
            if plus:
                for l in range(i, n - 1):
                    exps[(l, 1)] = s[l] + 1
                exps[(n, 1)] = s[n]
            else:
                exps[(i, 1)] = s[i]
                for l in range(i + 1, n - 1):
                    exps[(l, 1)] = s[l] + 1
                exps[(n, 1)] = s[n] + 1
            num = mono(exps)
        elif tag == "inj" and j == n - 1:
            pref = a1 ** (n - i)
            exps = {}
            if plus:
                for l in range(i, n - 2):
                    exps[(l, 1)] = s[l] + 1
                exps[(n - 2, 1)] = s[n - 2] + 2
                exps[(n - 1, 1)] = s[n - 1]
                exps[(n, 1)] = s[n]
            else:
                exps[(i, 1)] = s[i]
                for l in range(i + 1, n - 1):
                    exps[(l, 1)] = s[l] + 1
                exps[(n - 1, 1)] = s[n - 1] + 1
                exps[(n, 1)] = s[n] + 1
            num = mono(exps)
        elif tag == "inj":
            pref = a1 ** (2 * n - i - j - 1)
            exps = {}
            if plus:
                for l in range(i, j - 1):
                    exps[(l, 1)] = s[l] + 1
                exps[(j - 1, 1)] = s[j - 1] + 2
                exps[(j, 1)] = s[j]
                exps[(j, 2)] = s[j]
                for l in range(j + 1, n - 1):
                    exps[(l, 1)] = s[l] + 1
                    exps[(l, 2)] = s[l] + 1
                exps[(n - 1, 1)] = s[n - 1] + 1
                exps[(n, 1)] = s[n] + 1
            else:
                exps[(i, 1)] = s[i]
                for l in range(i + 1, j):
                    exps[(l, 1)] = s[l] + 1
                for l in range(j, n - 1):
                    exps[(l, 1)] = s[l] + 1
                    exps[(l, 2)] = s[l] + 1
                exps[(n - 1, 1)] = s[n - 1] + 1
                exps[(n, 1)] = s[n] + 1
            num = mono(exps)
            v2 = RationalV.v_power(2)
            for l in range(j, n - 1):
                f1 = pv.p_sub(pv.p_var(xvar(l, 1), v2), pv.p_var(xvar(l, 2), one))
                f2 = pv.p_sub(pv.p_var(xvar(l, 2), v2), pv.p_var(xvar(l, 1), one))
                num = pv.p_mul(num, pv.p_mul(f1, f2))
        else:
            raise ValueError(tag)

    num = pv.p_scale(num, pref)
    k = [0] * n
    for l, m in beta.nu.items():
        k[l - 1] = m
    return ShuffleElement(sys, tuple(k), num)


def _LZ(d):
    from .scalars import LaurentZ
    return LaurentZ(d)
