"""The rational (additive) counterpart of the trigonometric shuffle algebra:
elements over Q[hbar], the hzeta-twisted star product, Yangian root vectors,
rational specialization maps, and the good/integral membership predicates.

The star kernel, wheel machinery, and free-expression classes are shared with
the trigonometric side; only the cross factors, wheel alignments, and scalar
ring differ.
"""

from fractions import Fraction

from .scalars import (PolyH, PH_ONE, FracH, FH_ONE, NotDivisible)
from . import polyvars as pv
from .polyvars import xvar, wvar, wpvar, uvar
from .shuffle import (FELeaf, FEProd, FESum, FEScale, FEComm,
                      _star_numerator, wheel_check)
from .roots import positive_roots, kostant_partitions
from .specmaps import kappa, NotDivisibleByB

import itertools

HBAR = FracH.from_poly(PolyH.h_power(1))


def h_const(q):
    return FracH.from_rational(q)


class RationalShuffleElement:
    """Degree vector plus numerator polynomial over Q[hbar]."""

    __slots__ = ("sys", "k", "num")

    def __init__(self, sys, k, num):
        self.sys = sys
        self.k = tuple(k)
        self.num = num

    def is_zero(self):
        return not self.num

    def __eq__(self, other):
        return (isinstance(other, RationalShuffleElement)
                and self.sys == other.sys and self.k == other.k
                and self.num == other.num)

    def __hash__(self):
        return hash((self.sys.key(), self.k,
                     tuple(sorted((k, c) for k, c in self.num.items()))))

    def __add__(self, other):
        if self.k != other.k and self.num and other.num:
            raise ValueError("grading mismatch in addition")
        k = self.k if self.num or not other.num else other.k
        return RationalShuffleElement(self.sys, k,
                                      pv.p_add(self.num, other.num))

    def __sub__(self, other):
        return self + other.scale(h_const(-1))

    def scale(self, c):
        return RationalShuffleElement(self.sys, self.k,
                                      pv.p_scale(self.num, c))

    def __repr__(self):
        return (f"RationalShuffleElement({self.sys!r}, k={self.k}, "
                f"terms={len(self.num)})")


def unit_rat(sys):
    return RationalShuffleElement(sys, (0,) * sys.rank, pv.p_const(FH_ONE))


def zero_rat(sys, k=None):
    return RationalShuffleElement(sys, k or (0,) * sys.rank, {})


def generator_rat(sys, i, r):
    if r < 0:
        raise ValueError("rational modes live in N")
    k = tuple(1 if c == i else 0 for c in sys.colors)
    return RationalShuffleElement(sys, k,
                                  pv.p_monomial({xvar(i, 1): r}, FH_ONE))


def hzeta(sys, i, j):
    """The coefficient c of hzeta_{ij}(z) = 1 + c*hbar/z, i.e. (a_i,a_j)/2."""
    return Fraction(sys.pairing(i, j), 2)


def hzeta_cross_factor(sys, one):
    """Additive cross factor (x_{i,p} - x_{j,q} + (a_i,a_j) hbar / 2)."""
    shifts = {}
    for i in sys.colors:
        for j in sys.colors:
            pairing = sys.pairing(i, j)
            if pairing:
                shifts[(i, j)] = FracH.from_poly(
                    PolyH({1: Fraction(pairing, 2)}))

    def factor(i, p, j, q):
        c = shifts.get((i, j))
        if c is None:
            return None
        return {(xvar(i, p), 1): one, (xvar(j, q), 1): -one, (): c}

    return factor


def star_rat(F, G, mode="coset", strict=False):
    """The hzeta-twisted shuffle product."""
    if F.sys != G.sys:
        raise ValueError("mismatched root systems")
    sys = F.sys
    if F.is_zero() or G.is_zero():
        return zero_rat(sys, tuple(a + b for a, b in zip(F.k, G.k)))
    num = _star_numerator(sys, F.k, F.num, G.k, G.num, FH_ONE,
                          hzeta_cross_factor(sys, FH_ONE), mode)
    out = RationalShuffleElement(sys, tuple(a + b for a, b in zip(F.k, G.k)),
                                 num)
    if strict:
        ok, witness = wheel_check_rat(out)
        if not ok:
            raise ArithmeticError(f"wheel condition violated: {witness}")
    return out


def _wheel_assignment_rat(sys, i, j, copies, r, one):
    """x_{i,s_t} -> u - (t-1) d_i hbar,  x_{j,r} -> u + (d_i a_ij / 2) hbar."""
    d_i = sys.d_i(i)
    assignment = {}
    for t, s in enumerate(copies):
        poly = {(uvar(0), 1): one}
        if t:
            poly[()] = FracH.from_poly(PolyH({1: Fraction(-t * d_i)}))
        assignment[xvar(i, s)] = poly
    assignment[xvar(j, r)] = {
        (uvar(0), 1): one,
        (): FracH.from_poly(PolyH({1: Fraction(d_i * sys.a(i, j), 2)}))}
    return assignment


def wheel_check_rat(F):
    return wheel_check(F, assignment_builder=_wheel_assignment_rat,
                       one=FH_ONE)


# -- psi ---------------------------------------------------------------------

_word_cache_rat = {}


def _word_image_rat(sys, word):
    key = (sys.key(), word)
    got = _word_cache_rat.get(key)
    if got is not None:
        return got
    if not word:
        out = unit_rat(sys)
    else:
        prefix = _word_image_rat(sys, word[:-1])
        i, r = word[-1]
        out = star_rat(prefix, generator_rat(sys, i, r))
    _word_cache_rat[key] = out
    return out


def psi_rat(sys, expr):
    """x_{i,r} -> x_{i,1}^r, products to the rational star."""
    words = expr.expand(FH_ONE)
    acc = None
    for word, coeff in words.items():
        for _, r in word:
            if r < 0:
                raise ValueError("rational modes live in N")
        piece = _word_image_rat(sys, word).scale(coeff)
        acc = piece if acc is None else acc + piece
    if acc is None:
        return zero_rat(sys)
    return acc


# -- root vectors -------------------------------------------------------------

def yangian_root_vector(beta, modes):
    """Plain-commutator chain along the Lyndon word (non-doubled roots)."""
    if beta.sys.type == "C" and beta.tag == "ini":
        raise ValueError("doubled C-type root needs the two-factor form")
    word = beta.word
    if len(modes) != len(word) or any(m < 0 for m in modes):
        raise ValueError("invalid decomposition")
    expr = FELeaf(word[0], modes[0])
    for letter, m in zip(word[1:], modes[1:]):
        expr = FEComm(expr, FELeaf(letter, m))
    return expr


def yangian_doubled_root_vector(beta, modes1, modes2):
    """[X_{[i,n-1],s1}, X_{[i,n],s2}] for the doubled C-type root."""
    sys = beta.sys
    if sys.type != "C" or beta.tag != "ini":
        raise ValueError("two-factor form only for the doubled C-type root")
    n, i = sys.rank, beta.i
    sub1 = next(b for b in positive_roots(sys)
                if b.tag == "ij" and b.i == i and b.j == n - 1)
    sub2 = next(b for b in positive_roots(sys)
                if b.tag == "in" and b.i == i)
    return FEComm(yangian_root_vector(sub1, modes1),
                  yangian_root_vector(sub2, modes2))


def tilde_x(beta, s):
    """The preset root vector: mode s on the first letter, 0 elsewhere;
    for the doubled C-type root, s sits on the x_n leaf of the inner bracket."""
    sys = beta.sys
    if sys.type == "C" and beta.tag == "ini":
        n, i = sys.rank, beta.i
        chain = FELeaf(i, 0)
        for c in range(i + 1, n):
            chain = FEComm(chain, FELeaf(c, 0))
        inner = FEComm(chain, FELeaf(n, s))
        return FEComm(chain, inner)
    word = beta.word
    expr = FELeaf(word[0], s)
    for letter in word[1:]:
        expr = FEComm(expr, FELeaf(letter, 0))
    return expr


def xbar(expr):
    """The hbar-rescaled root vector."""
    return FEScale(HBAR, expr)


def pbwd_monomial_rat(h, bar=False):
    """Ordered product of preset Yangian root vectors."""
    factors = []
    for beta, s, mult in h.entries:
        expr = tilde_x(beta, s)
        if bar:
            expr = xbar(expr)
        factors.extend([expr] * mult)
    return FEProd(factors)


# -- relations ----------------------------------------------------------------

def defining_relation_rat(sys, i, j, r, s):
    """[x_{i,r+1}, x_{j,s}] - [x_{i,r}, x_{j,s+1}]
    - (d_i a_ij hbar / 2)(x_{i,r} x_{j,s} + x_{j,s} x_{i,r})."""
    c = FracH.from_poly(PolyH({1: Fraction(-sys.d_i(i) * sys.a(i, j), 2)}))
    return FESum([
        FEComm(FELeaf(i, r + 1), FELeaf(j, s)),
        FEScale(h_const(-1), FEComm(FELeaf(i, r), FELeaf(j, s + 1))),
        FEScale(c, FEProd([FELeaf(i, r), FELeaf(j, s)])),
        FEScale(c, FEProd([FELeaf(j, s), FELeaf(i, r)])),
    ])


def serre_relation_rat(sys, i, j, modes, r):
    """Sym over the i-modes of the nested commutator
    [x_{i,s1}, [x_{i,s2}, .., [x_{i,sm}, x_{j,r}]..]]."""
    if i == j:
        raise ValueError("Serre relation needs i != j")
    m = 1 - sys.a(i, j)
    if len(modes) != m:
        raise ValueError(f"need {m} modes for colors ({i},{j})")
    terms = []
    for perm in itertools.permutations(range(m)):
        expr = FELeaf(j, r)
        for t in range(m - 1, -1, -1):
            expr = FEComm(FELeaf(i, modes[perm[t]]), expr)
        terms.append(expr)
    return FESum(terms)


# -- rational specialization maps ---------------------------------------------

def _shifted_image(target, half_shift):
    """The polynomial target_var - (half_shift/2) hbar."""
    poly = {(target, 1): FH_ONE}
    if half_shift:
        poly[()] = FracH.from_poly(PolyH({1: Fraction(-half_shift, 2)}))
    return poly


def _spec_assignment_rat(sys, d):
    order = {i: iter(range(1, d.k[i - 1] + 1)) for i in sys.colors}
    assignment = {}
    two_step = []
    n = sys.rank
    roots = positive_roots(sys)
    for beta, mult in d.entries:
        bidx = roots.index(beta)
        for s in range(1, mult + 1):
            w, wp = wvar(bidx, s), wpvar(bidx, s)
            if beta.is_two_step():
                two_step.append((beta, s))
            for l in sorted(beta.nu):
                copies = [next(order[l]) for _ in range(beta.nu[l])]
                if sys.type == "C":
                    if beta.tag == "ini":
                        if l != n:
                            images = [(w, l - 1), (wp, l - 1)]
                        else:
                            images = [(wp, n)]
                    else:
                        images = [(w, l - 1 if l != n else n)]
                        if beta.nu[l] == 2:
                            images.append((w, 2 * n + 1 - l))
                else:
                    images = [(w, l - 1 if l != n else n - 2)]
                    if beta.nu[l] == 2:
                        images.append((wp, 2 * n - 3 - l))
                for copy, (target, half_shift) in zip(copies, images):
                    assignment[xvar(l, copy)] = _shifted_image(
                        target, half_shift)
    return assignment, two_step


def _b_factor_list_rat(beta, s):
    """Linear factors of the rational B_beta in (w, w')."""
    sys = beta.sys
    bidx = positive_roots(sys).index(beta)
    w, wp = wvar(bidx, s), wpvar(bidx, s)

    def form(shift):
        poly = {(w, 1): FH_ONE, (wp, 1): -FH_ONE}
        if shift:
            poly[()] = FracH.from_poly(PolyH({1: Fraction(shift)}))
        return poly

    out = []
    if sys.type == "C":
        for _ in range(sys.rank - beta.i - 1):
            out.append(form(1))
            out.append(form(-1))
    else:
        # zero loci forced by the wheel conditions: w = w' - (n-l-2) hbar and
        # w = w' - (n-l) hbar, matching the trigonometric factors
        # (w - v^{2l+4-2n} w') (w - v^{2l-2n} w')
        n = sys.rank
        for l in range(beta.j, n - 1):
            out.append(form(n - l - 2))
            out.append(form(n - l))
    return out


def phi_d_rat(F, d):
    """The rational specialization of F's numerator at the partition d."""
    sys = F.sys
    if F.is_zero() or tuple(F.k) != tuple(d.k):
        return {}
    assignment, two_step = _spec_assignment_rat(sys, d)
    out = pv.p_substitute(F.num, assignment, FH_ONE)
    roots = positive_roots(sys)
    final = {}
    for beta, s in two_step:
        bidx = roots.index(beta)
        for factor in _b_factor_list_rat(beta, s):
            try:
                out = pv.exact_div(out, factor, FH_ONE)
            except NotDivisible as exc:
                raise NotDivisibleByB(
                    f"rational B-factor of {beta.full_name()} copy {s} "
                    f"does not divide: {exc}") from exc
        image = {(wvar(bidx, s), 1): FH_ONE}
        if sys.type == "C":
            image = pv.p_add(image, pv.p_const(HBAR))
        final[wpvar(bidx, s)] = image
    if final:
        out = pv.p_substitute(out, final, FH_ONE)
    return out


def phi_single_rat(F, beta):
    from .roots import KostantPartition
    return phi_d_rat(F, KostantPartition(beta.sys, [(beta, 1)]))


# -- hbar divisibility and membership ----------------------------------------

def hbar_order(g):
    """Minimal hbar-exponent over all coefficients (None for the zero poly).

    Coefficients must be honest polynomials in hbar.
    """
    order = None
    for c in g.values():
        if not c.is_poly():
            raise ValueError("coefficient not polynomial in hbar")
        e = c.num.min_exp()
        order = e if order is None else min(order, e)
    return order


def hbar_divisible(g, m):
    order = hbar_order(g)
    return order is None or order >= m


def is_good(F):
    """phi_d(F) divisible by hbar^{sum d_beta kappa_beta} for all d."""
    sys = F.sys
    for d in kostant_partitions(sys, F.k):
        target = sum(kappa(beta) * mult for beta, mult in d.entries)
        try:
            g = phi_d_rat(F, d)
        except NotDivisibleByB:
            return False
        if not hbar_divisible(g, target):
            return False
    return True


def is_integral(F):
    """F divisible by hbar^{|k|}, phi_d by hbar^{sum d_beta (kappa_beta+1)}."""
    size = sum(F.k)
    if not hbar_divisible(F.num, size):
        return False
    sys = F.sys
    for d in kostant_partitions(sys, F.k):
        target = sum((kappa(beta) + 1) * mult for beta, mult in d.entries)
        try:
            g = phi_d_rat(F, d)
        except NotDivisibleByB:
            return False
        if not hbar_divisible(g, target):
            return False
    return True


def proportional_rational(a, b):
    """If a = q*b with q a nonzero rational, return q; both zero -> 1."""
    if not a and not b:
        return Fraction(1)
    if not a or not b:
        return None
    key = next(iter(b))
    ca = a.get(key)
    if ca is None:
        return None
    c = ca / b[key]
    q = c.rational_value()
    if q is None:
        return None
    if pv.p_sub(a, pv.p_scale(b, c)):
        return None
    return q
