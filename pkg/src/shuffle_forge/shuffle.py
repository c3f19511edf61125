"""The trigonometric shuffle algebra: elements, star product, wheel checks,
and the homomorphism psi from free-algebra expressions.

An element of degree k is stored as its numerator only; the pole denominator
prod_{i<j adjacent} prod_{r,s} (x_{i,r} - x_{j,s}) is implicit, reconstructed
from k with ascending color order.

The star product is computed as a shuffle-coset sum: every coset term is put
over the common same-color Vandermonde product and the numerator is recovered
by one exact division.  A full-group mode (with the 1/(k! l!) prefactor)
is kept alongside and the two are asserted to agree in the test suite.

The generic machinery (`_star_numerator`, `_wheel_patterns`) is shared with
the rational (additive) variant in the `yangian` module via small profile
hooks for the cross factors and wheel alignments.
"""

import itertools

from .scalars import RationalV, RV_ONE, LaurentZ
from . import polyvars as pv
from .polyvars import xvar, uvar


class ShuffleElement:
    """Degree vector plus numerator polynomial (implicit pole denominator)."""

    __slots__ = ("sys", "k", "num")

    def __init__(self, sys, k, num):
        self.sys = sys
        self.k = tuple(k)
        self.num = num

    def is_zero(self):
        return not self.num

    def total_degree(self):
        return sum(self.k)

    def __eq__(self, other):
        return (isinstance(other, ShuffleElement) and self.sys == other.sys
                and self.k == other.k and self.num == other.num)

    def __hash__(self):
        return hash((self.sys.key(), self.k,
                     tuple(sorted((k, c) for k, c in self.num.items()))))

    def __add__(self, other):
        if self.k != other.k and self.num and other.num:
            raise ValueError("grading mismatch in addition")
        k = self.k if self.num or not other.num else other.k
        return ShuffleElement(self.sys, k, pv.p_add(self.num, other.num))

    def __sub__(self, other):
        return self + other.scale(RationalV.from_int(-1))

    def scale(self, c):
        return ShuffleElement(self.sys, self.k, pv.p_scale(self.num, c))

    def denominator_factors(self):
        out = []
        n = self.sys.rank
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if self.sys.a(i, j) == 0:
                    continue
                for r in range(1, self.k[i - 1] + 1):
                    for s in range(1, self.k[j - 1] + 1):
                        out.append((xvar(i, r), xvar(j, s)))
        return out

    def __repr__(self):
        return f"ShuffleElement({self.sys!r}, k={self.k}, terms={len(self.num)})"


def unit(sys):
    return ShuffleElement(sys, (0,) * sys.rank, pv.p_const(RV_ONE))


def zero(sys, k=None):
    return ShuffleElement(sys, k or (0,) * sys.rank, {})


def generator(sys, i, r):
    """psi image of e_{i,r}: the monomial x_{i,1}^r in degree 1_i."""
    k = tuple(1 if c == i else 0 for c in sys.colors)
    return ShuffleElement(sys, k, pv.p_monomial({xvar(i, 1): r}, RV_ONE))


def zeta_cross_factor(sys, one):
    """Trigonometric cross factor (x_{i,p} - v^{-(a_i,a_j)} x_{j,q})."""
    coeffs = {}
    for i in sys.colors:
        for j in sys.colors:
            pairing = sys.pairing(i, j)
            if pairing:
                coeffs[(i, j)] = RationalV.v_power(-pairing)

    def factor(i, p, j, q):
        c = coeffs.get((i, j))
        if c is None:
            return None
        return {(xvar(i, p), 1): one, (xvar(j, q), 1): -c}

    return factor


def zeta(sys, i, j):
    """(numerator, denominator) coefficient pair of zeta_{ij}(z): the pair
    (v^{-(a_i,a_j)}, 1) meaning (z - v^{-(a_i,a_j)})/(z - 1)."""
    return RationalV.v_power(-sys.pairing(i, j)), RV_ONE


def _vandermonde_factors(k):
    out = []
    for i, ki in enumerate(k, start=1):
        for p in range(1, ki + 1):
            for q in range(p + 1, ki + 1):
                out.append((i, p, q))
    return out


def _star_numerator(sys, kF, fnum, kG, gnum, one, cross_factor, mode):
    """Shared star kernel; returns the numerator of F * G.

    mode "coset": sum over per-color shuffles; mode "full": sum over all
    per-color permutations followed by division by k! l! (caller's job is
    nothing; the division happens here via scalar inversion).
    """
    ktot = tuple(a + b for a, b in zip(kF, kG))
    per_color = []
    for i, (a, b) in enumerate(zip(kF, kG), start=1):
        positions = range(1, a + b + 1)
        if mode == "coset":
            choices = []
            for fpos in itertools.combinations(positions, a):
                gpos = tuple(p for p in positions if p not in fpos)
                choices.append((fpos, gpos))
        elif mode == "full":
            choices = []
            for perm in itertools.permutations(positions):
                choices.append((tuple(sorted(perm[:a])),
                                tuple(sorted(perm[a:]))))
        else:
            raise ValueError(f"unknown star mode {mode!r}")
        per_color.append((i, choices))

    total = {}
    for combo in itertools.product(*(c for _, c in per_color)):
        fmap, gmap = {}, {}
        fassign, gassign = {}, {}
        for (i, _), (fpos, gpos) in zip(per_color, combo):
            for t, p in enumerate(fpos, start=1):
                fmap[xvar(i, t)] = xvar(i, p)
            for t, p in enumerate(gpos, start=1):
                gmap[xvar(i, t)] = xvar(i, p)
            fassign[i] = fpos
            gassign[i] = gpos
        term = pv.p_rename(fnum, fmap)
        term = pv.p_mul(term, pv.p_rename(gnum, gmap))
        inversions = 0
        for i, _ in per_color:
            fpos, gpos = fassign[i], gassign[i]
            inversions += sum(1 for p in fpos for q in gpos if q < p)
            for pos in (fpos, gpos):
                for a_idx in range(len(pos)):
                    for b_idx in range(a_idx + 1, len(pos)):
                        p, q = pos[a_idx], pos[b_idx]
                        term = pv.p_mul(term, {(xvar(i, p), 1): one,
                                               (xvar(i, q), 1): -one})
        for i, _ in per_color:
            for j, _ in per_color:
                for p in fassign[i]:
                    for q in gassign[j]:
                        fac = cross_factor(i, p, j, q)
                        if fac is not None:
                            term = pv.p_mul(term, fac)
        if inversions % 2:
            term = pv.p_neg(term)
        pv._poly_add_inplace(total, term)

    # The pole denominator orients distinct-color pairs as i < j; each cross
    # zeta denominator with F-color i above G-color j flips that orientation.
    reorient = 0
    for i, ki in enumerate(kF, start=1):
        for j, kj in enumerate(kG, start=1):
            if i > j and ki and kj and cross_factor(i, 1, j, 1) is not None:
                reorient += ki * kj
    if reorient % 2:
        total = pv.p_neg(total)

    for i, p, q in _vandermonde_factors(ktot):
        if total:
            total = pv.exact_div(
                total, {(xvar(i, p), 1): one, (xvar(i, q), 1): -one}, one)
    if mode == "full":
        denom = 1
        for a, b in zip(kF, kG):
            for t in range(2, a + 1):
                denom *= t
            for t in range(2, b + 1):
                denom *= t
        if denom != 1:
            inv = _scalar_fraction(one, denom)
            total = pv.p_scale(total, inv)
    return total


def _scalar_fraction(one, denom):
    return one / (one * denom)


def star(F, G, mode="coset", strict=False):
    """Shuffle product F * G."""
    if F.sys != G.sys:
        raise ValueError("mismatched root systems")
    sys = F.sys
    if F.is_zero() or G.is_zero():
        return zero(sys, tuple(a + b for a, b in zip(F.k, G.k)))
    num = _star_numerator(sys, F.k, F.num, G.k, G.num, RV_ONE,
                          zeta_cross_factor(sys, RV_ONE), mode)
    out = ShuffleElement(sys, tuple(a + b for a, b in zip(F.k, G.k)), num)
    if strict:
        ok, witness = wheel_check(out)
        if not ok:
            raise ArithmeticError(f"wheel condition violated: {witness}")
    return out


# -- wheel conditions ---------------------------------------------------

def _wheel_patterns(sys, k):
    """Yield (i, j, copies, r) for every wheel alignment available at k:
    1 - a_ij distinct copies of color i and one copy r of color j."""
    for i in sys.colors:
        for j in sys.colors:
            if i == j or sys.a(i, j) == 0:
                continue
            m = 1 - sys.a(i, j)
            if k[i - 1] < m or k[j - 1] < 1:
                continue
            for copies in itertools.permutations(range(1, k[i - 1] + 1), m):
                for r in range(1, k[j - 1] + 1):
                    yield i, j, copies, r


def _wheel_assignment_trig(sys, i, j, copies, r, one):
    """x_{i,s_t} -> v_i^{-2(t-1)} u,  x_{j,r} -> v_i^{a_ij} u."""
    d_i = sys.d_i(i)
    assignment = {}
    for t, s in enumerate(copies):
        assignment[xvar(i, s)] = {(uvar(0), 1): one * RationalV.v_power(-2 * d_i * t)}
    assignment[xvar(j, r)] = {(uvar(0), 1): one * RationalV.v_power(d_i * sys.a(i, j))}
    return assignment


def wheel_check(F, assignment_builder=None, one=RV_ONE):
    """True iff the numerator vanishes under every wheel alignment.

    Returns (ok, witness); witness names the first violating alignment.
    """
    builder = assignment_builder or _wheel_assignment_trig
    sys = F.sys
    for i, j, copies, r in _wheel_patterns(sys, F.k):
        assignment = builder(sys, i, j, copies, r, one)
        image = pv.p_substitute(F.num, assignment, one)
        if image:
            witness = {"i": i, "j": j, "copies": copies, "j_copy": r}
            return False, witness
    return True, None


# -- free expressions ------------------------------------------------------

class FreeExpr:
    """Formal expression over generators (i, r); expands to a word map."""

    def __mul__(self, other):
        return FEProd([self, other])

    def __add__(self, other):
        return FESum([self, other])

    def expand(self, one):
        """Return {word: coeff} with word a tuple of (i, r) pairs."""
        raise NotImplementedError


class FELeaf(FreeExpr):
    __slots__ = ("i", "r")

    def __init__(self, i, r):
        self.i = i
        self.r = r

    def expand(self, one):
        return {((self.i, self.r),): one}

    def __repr__(self):
        return f"e({self.i},{self.r})"


class FEProd(FreeExpr):
    __slots__ = ("factors",)

    def __init__(self, factors):
        self.factors = list(factors)

    def expand(self, one):
        out = {(): one}
        for f in self.factors:
            fx = f.expand(one)
            nxt = {}
            for wa, ca in out.items():
                for wb, cb in fx.items():
                    w = wa + wb
                    c = ca * cb
                    prev = nxt.get(w)
                    if prev is None:
                        if c:
                            nxt[w] = c
                    else:
                        s = prev + c
                        if s:
                            nxt[w] = s
                        else:
                            del nxt[w]
            out = nxt
        return out

    def __repr__(self):
        return "*".join(f"({f!r})" for f in self.factors) or "1"


class FESum(FreeExpr):
    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = list(terms)

    def expand(self, one):
        out = {}
        for t in self.terms:
            for w, c in t.expand(one).items():
                prev = out.get(w)
                if prev is None:
                    out[w] = c
                else:
                    s = prev + c
                    if s:
                        out[w] = s
                    else:
                        del out[w]
        return out

    def __repr__(self):
        return "+".join(f"({t!r})" for t in self.terms) or "0"


class FEScale(FreeExpr):
    __slots__ = ("c", "sub")

    def __init__(self, c, sub):
        self.c = c
        self.sub = sub

    def expand(self, one):
        out = {}
        for w, coeff in self.sub.expand(one).items():
            s = coeff * self.c
            if s:
                out[w] = s
        return out

    def __repr__(self):
        return f"({self.c!r})*({self.sub!r})"


class FEComm(FreeExpr):
    """[a, b]_lam = a*b - lam * b*a; lam None means the plain commutator."""

    __slots__ = ("a", "b", "lam")

    def __init__(self, a, b, lam=None):
        self.a = a
        self.b = b
        self.lam = lam

    def expand(self, one):
        ab = FEProd([self.a, self.b]).expand(one)
        ba = FEProd([self.b, self.a]).expand(one)
        out = dict(ab)
        lam = self.lam if self.lam is not None else one
        for w, c in ba.items():
            delta = c * lam
            prev = out.get(w)
            if prev is None:
                out[w] = -delta
            else:
                s = prev - delta
                if s:
                    out[w] = s
                else:
                    del out[w]
        return out

    def __repr__(self):
        lam = "" if self.lam is None else f"[{self.lam!r}]"
        return f"comm{lam}({self.a!r},{self.b!r})"


def e_leaf(i, r):
    return FELeaf(i, r)


def defining_relation(sys, i, j, r, s):
    """Coefficient of the quadratic defining relation at modes (r, s):
    e_{i,r+1}e_{j,s} - v_i^{a_ij}(e_{i,r}e_{j,s+1} + e_{j,s}e_{i,r+1})
    + e_{j,s+1}e_{i,r}."""
    lam = RationalV.v_power(sys.d_i(i) * sys.a(i, j))
    minus_one = RationalV.from_int(-1)
    return FESum([
        FEProd([FELeaf(i, r + 1), FELeaf(j, s)]),
        FEScale(minus_one * lam, FEProd([FELeaf(i, r), FELeaf(j, s + 1)])),
        FEScale(minus_one * lam, FEProd([FELeaf(j, s), FELeaf(i, r + 1)])),
        FEProd([FELeaf(j, s + 1), FELeaf(i, r)]),
    ])


def serre_relation(sys, i, j, modes, r):
    """The Serre relation for i != j, symmetrized over the given i-modes:
    Sym sum_k (-1)^k [1-a_ij; k]_{v_i} e_i..e_i e_{j,r} e_i..e_i."""
    from .scalars import quantum_binom
    if i == j:
        raise ValueError("Serre relation needs i != j")
    m = 1 - sys.a(i, j)
    if len(modes) != m:
        raise ValueError(f"need {m} modes for colors ({i},{j})")
    d = sys.d_i(i)
    terms = []
    for perm in itertools.permutations(range(m)):
        for k in range(m + 1):
            coeff = RationalV.from_laurent(quantum_binom(m, k, d))
            if k % 2:
                coeff = -coeff
            factors = [FELeaf(i, modes[perm[t]]) for t in range(k)]
            factors.append(FELeaf(j, r))
            factors.extend(FELeaf(i, modes[perm[t]]) for t in range(k, m))
            terms.append(FEScale(coeff, FEProd(factors)))
    return FESum(terms)


# -- psi -------------------------------------------------------------------

_word_cache = {}


def _word_image(sys, word):
    key = (sys.key(), word)
    got = _word_cache.get(key)
    if got is not None:
        return got
    if not word:
        out = unit(sys)
    else:
        prefix = _word_image(sys, word[:-1])
        i, r = word[-1]
        out = star(prefix, generator(sys, i, r))
    _word_cache[key] = out
    return out


def psi(sys, expr):
    """The homomorphism: e_{i,r} -> x_{i,1}^r, products to star."""
    words = expr.expand(RV_ONE)
    acc = None
    for word, coeff in words.items():
        piece = _word_image(sys, word).scale(coeff)
        acc = piece if acc is None else acc + piece
    if acc is None:
        return zero(sys)
    return acc


# -- comparisons ----------------------------------------------------------

def proportional_monomial(F, G):
    """If F = q*v^t*G with q in Q^x, return (q, t); both zero -> (1, 0);
    otherwise None."""
    if F.is_zero() and G.is_zero():
        return (1, 0)
    if F.is_zero() or G.is_zero():
        return None
    if F.k != G.k:
        return None
    key = next(iter(G.num))
    cf = F.num.get(key)
    if cf is None:
        return None
    c = cf / G.num[key]
    ratio = c.monomial_ratio()
    if ratio is None:
        return None
    if pv.p_sub(F.num, pv.p_scale(G.num, c)):
        return None
    return ratio
