"""Exact scalar arithmetic: Z[v,v^-1], Q(v), Q[hbar] and its fraction field.

All values are immutable and hashable.  RationalV and FracH are kept fully
reduced (univariate gcd), which pins down a canonical representative: the
denominator has lowest exponent 0, positive leading integer coefficient
(RationalV) or is monic (FracH), and shares no content with the numerator.

Also provides the quantum-integer combinatorics [l]_u, [l]_u!, the Gaussian
binomial and the two-sided power difference <m> = v^m - v^-m.
"""

from fractions import Fraction
from math import gcd as int_gcd


class NotDivisible(ArithmeticError):
    """Exact division failed; carries the offending remainder as witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _strip(d):
    return {e: c for e, c in d.items() if c}


class LaurentZ:
    """Sparse Laurent polynomial in v with integer coefficients."""

    __slots__ = ("coeffs", "_key")

    def __init__(self, coeffs=None):
        object.__setattr__(self, "coeffs", _strip(coeffs or {}))
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentZ is immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def from_int(n):
        return LaurentZ({0: n} if n else {})

    @staticmethod
    def v_power(e, c=1):
        return LaurentZ({e: c} if c else {})

    # -- basic queries ------------------------------------------------
    def __bool__(self):
        return bool(self.coeffs)

    def is_one(self):
        return self.coeffs == {0: 1}

    def min_exp(self):
        return min(self.coeffs)

    def max_exp(self):
        return max(self.coeffs)

    def leading_coeff(self):
        return self.coeffs[self.max_exp()]

    def content(self):
        """Positive gcd of the integer coefficients (0 for the zero poly)."""
        g = 0
        for c in self.coeffs.values():
            g = int_gcd(g, abs(c))
        return g

    def is_monomial(self):
        return len(self.coeffs) == 1

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentZ(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LaurentZ({e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentZ({e: c * other for e, c in self.coeffs.items()})
        out = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in other.coeffs.items():
                e = ea + eb
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentZ(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a LaurentZ; use RationalV")
        result = LZ_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def bar(self):
        """The involution v -> v^-1."""
        return LaurentZ({-e: c for e, c in self.coeffs.items()})

    # -- comparison / hashing ------------------------------------------
    def _frozen(self):
        k = self._key
        if k is None:
            k = tuple(sorted(self.coeffs.items()))
            object.__setattr__(self, "_key", k)
        return k

    def __eq__(self, other):
        if not isinstance(other, LaurentZ):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self._frozen())

    # -- division ------------------------------------------------------
    def exact_div(self, other):
        """Return q with self = q * other, else raise NotDivisible."""
        if not other:
            raise ZeroDivisionError("division by zero LaurentZ")
        if not self:
            return LZ_ZERO
        if other.is_monomial():
            e0 = other.min_exp()
            c0 = other.coeffs[e0]
            out = {}
            for e, c in self.coeffs.items():
                q, r = divmod(c, c0)
                if r:
                    raise NotDivisible("coefficient not divisible", self)
                out[e - e0] = q
            return LaurentZ(out)
        shift = self.min_exp() - other.min_exp()
        num = _dense(self)
        den = _dense(other)
        quo, rem = _qdivmod(num, den)
        if any(rem):
            raise NotDivisible("nonzero remainder", _undense(rem, self.min_exp()))
        out = {}
        for i, c in enumerate(quo):
            if c:
                if c.denominator != 1:
                    raise NotDivisible("non-integer quotient", self)
                out[i + shift] = int(c)
        return LaurentZ(out)

    @staticmethod
    def gcd(a, b):
        """gcd in Z[v,v^-1] up to units: primitive part gcd times content gcd.

        Normalized with lowest exponent 0 and positive leading coefficient.
        """
        if not a:
            return _positive_normal(b)
        if not b:
            return _positive_normal(a)
        ca, cb = a.content(), b.content()
        g = _qpoly_gcd(_dense(a), _dense(b))
        prim = _undense_primitive(g)
        return prim * LaurentZ.from_int(int_gcd(ca, cb))

    # -- presentation ---------------------------------------------------
    def serialize(self):
        return [[e, str(c)] for e, c in sorted(self.coeffs.items())]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items(), reverse=True):
            if e == 0:
                parts.append(f"{c:+d}")
            elif e == 1:
                parts.append(f"{c:+d}*v")
            else:
                parts.append(f"{c:+d}*v^{e}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


LZ_ZERO = LaurentZ({})
LZ_ONE = LaurentZ({0: 1})


def _dense(p):
    """Laurent poly -> dense Fraction list starting at its lowest exponent."""
    lo = p.min_exp()
    out = [Fraction(0)] * (p.max_exp() - lo + 1)
    for e, c in p.coeffs.items():
        out[e - lo] = Fraction(c)
    return out


def _undense(lst, lo):
    return LaurentZ({lo + i: int(c) for i, c in enumerate(lst) if c})


def _undense_primitive(lst):
    """Fraction list -> primitive integer polynomial, positive lead, val 0."""
    den = 1
    for c in lst:
        den = den * c.denominator // int_gcd(den, c.denominator)
    ints = [int(c * den) for c in lst]
    g = 0
    for c in ints:
        g = int_gcd(g, abs(c))
    ints = [c // g for c in ints]
    if ints[-1] < 0 or (ints[-1] == 0 and ints and max(ints) < 0):
        ints = [-c for c in ints]
    first = next(i for i, c in enumerate(ints) if c)
    return LaurentZ({i - first: c for i, c in enumerate(ints) if c})


def _positive_normal(p):
    if not p:
        return LZ_ZERO
    lo = p.min_exp()
    sign = 1 if p.leading_coeff() > 0 else -1
    return LaurentZ({e - lo: sign * c for e, c in p.coeffs.items()})


def _qdivmod(num, den):
    """Dense divmod over Q; den's last entry must be nonzero."""
    num = list(num)
    dn = len(den)
    lead = den[-1]
    quo = [Fraction(0)] * max(len(num) - dn + 1, 0)
    for i in range(len(num) - dn, -1, -1):
        c = num[i + dn - 1] / lead
        if c:
            quo[i] = c
            for j, d in enumerate(den):
                num[i + j] -= c * d
    return quo, num


def _qpoly_gcd(a, b):
    """Monic gcd of dense Fraction polys (nonzero inputs)."""
    def trim(p):
        while p and not p[-1]:
            p.pop()
        return p

    a, b = trim(list(a)), trim(list(b))
    while b:
        _, r = _qdivmod(a, b)
        a, b = b, trim(r)
    lead = a[-1]
    return [c / lead for c in a]


class RationalV:
    """Element of Q(v), stored as a reduced fraction of LaurentZ."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=LZ_ONE, reduced=False):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            num, den = _reduce_v(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalV is immutable")

    @staticmethod
    def from_int(n):
        return RationalV(LaurentZ.from_int(n), LZ_ONE, reduced=True)

    @staticmethod
    def from_laurent(p):
        return RationalV(p, LZ_ONE, reduced=True)

    @staticmethod
    def v_power(e, c=1):
        if e >= 0:
            return RationalV(LaurentZ.v_power(e, c), LZ_ONE, reduced=True)
        return RationalV(LaurentZ.v_power(e, c))

    def __bool__(self):
        return bool(self.num)

    def is_laurent(self):
        return self.den.is_one()

    def __add__(self, other):
        if self.den.is_one() and other.den.is_one():
            return RationalV(self.num + other.num, LZ_ONE, reduced=True)
        return RationalV(self.num * other.den + other.num * self.den,
                         self.den * other.den)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RationalV(-self.num, self.den, reduced=True)

    def __mul__(self, other):
        if isinstance(other, int):
            other = RationalV.from_int(other)
        if self.den.is_one() and other.den.is_one():
            return RationalV(self.num * other.num, LZ_ONE, reduced=True)
        return RationalV(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not other.num:
            raise ZeroDivisionError("division by zero RationalV")
        return RationalV(self.num * other.den, self.den * other.num)

    def __pow__(self, n):
        if n < 0:
            return (RV_ONE / self) ** (-n)
        result = RV_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def bar(self):
        return RationalV(self.num.bar(), self.den.bar())

    def __eq__(self, other):
        if not isinstance(other, RationalV):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num._frozen(), self.den._frozen()))

    def monomial_ratio(self):
        """If self = q * v^t with q rational, return (q, t), else None."""
        if not self.num:
            return None
        if not (self.num.is_monomial() and self.den.is_monomial()):
            return None
        en, ed = self.num.min_exp(), self.den.min_exp()
        return (Fraction(self.num.coeffs[en], self.den.coeffs[ed]), en - ed)

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _reduce_v(num, den):
    if not num:
        return LZ_ZERO, LZ_ONE
    g = LaurentZ.gcd(num, den)
    if not g.is_one():
        num = num.exact_div(g)
        den = den.exact_div(g)
    shift = den.min_exp()
    if shift:
        num = num * LaurentZ.v_power(-shift)
        den = den * LaurentZ.v_power(-shift)
    if den.leading_coeff() < 0:
        num, den = -num, -den
    return num, den


RV_ZERO = RationalV.from_int(0)
RV_ONE = RationalV.from_int(1)


class PolyH:
    """Polynomial in hbar with rational coefficients."""

    __slots__ = ("coeffs", "_key")

    def __init__(self, coeffs=None):
        clean = {}
        for e, c in (coeffs or {}).items():
            if c:
                if e < 0:
                    raise ValueError("negative hbar exponent")
                clean[e] = c if isinstance(c, Fraction) else Fraction(c)
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("PolyH is immutable")

    @staticmethod
    def from_rational(q):
        q = Fraction(q)
        return PolyH({0: q} if q else {})

    @staticmethod
    def h_power(e, c=1):
        return PolyH({e: Fraction(c)})

    def __bool__(self):
        return bool(self.coeffs)

    def is_one(self):
        return self.coeffs == {0: Fraction(1)}

    def min_exp(self):
        return min(self.coeffs)

    def degree(self):
        return max(self.coeffs)

    def leading_coeff(self):
        return self.coeffs[self.degree()]

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return PolyH(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return PolyH({e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PolyH({e: c * other for e, c in self.coeffs.items()})
        out = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in other.coeffs.items():
                e = ea + eb
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return PolyH(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = PH_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def hbar_divisible(self, m):
        return not self.coeffs or self.min_exp() >= m

    def div_hbar(self, m):
        if not self.coeffs:
            return self
        if self.min_exp() < m:
            raise NotDivisible(f"not divisible by hbar^{m}", self)
        return PolyH({e - m: c for e, c in self.coeffs.items()})

    def _frozen(self):
        k = self._key
        if k is None:
            k = tuple(sorted(self.coeffs.items()))
            object.__setattr__(self, "_key", k)
        return k

    def __eq__(self, other):
        if not isinstance(other, PolyH):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self._frozen())

    def _dense(self):
        out = [Fraction(0)] * (self.degree() + 1)
        for e, c in self.coeffs.items():
            out[e] = c
        return out

    def exact_div(self, other):
        if not other:
            raise ZeroDivisionError("division by zero PolyH")
        if not self:
            return PH_ZERO
        quo, rem = _qdivmod(self._dense(), other._dense())
        if any(rem):
            raise NotDivisible("nonzero remainder",
                               PolyH({i: c for i, c in enumerate(rem) if c}))
        return PolyH({i: c for i, c in enumerate(quo) if c})

    @staticmethod
    def gcd(a, b):
        if not a:
            return _monic(b)
        if not b:
            return _monic(a)
        g = _qpoly_gcd(a._dense(), b._dense())
        return PolyH({i: c for i, c in enumerate(g) if c})

    def serialize(self):
        return [[e, str(c)] for e, c in sorted(self.coeffs.items())]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items(), reverse=True):
            if e == 0:
                parts.append(f"+({c})")
            elif e == 1:
                parts.append(f"+({c})*h")
            else:
                parts.append(f"+({c})*h^{e}")
        return "".join(parts)[1:]


PH_ZERO = PolyH({})
PH_ONE = PolyH({0: 1})


def _monic(p):
    if not p:
        return PH_ZERO
    lead = p.leading_coeff()
    return PolyH({e: c / lead for e, c in p.coeffs.items()})


class FracH:
    """Element of Q(hbar) as a reduced fraction of PolyH with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=PH_ONE, reduced=False):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            num, den = _reduce_h(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("FracH is immutable")

    @staticmethod
    def from_poly(p):
        return FracH(p, PH_ONE, reduced=True)

    @staticmethod
    def from_rational(q):
        return FracH(PolyH.from_rational(q), PH_ONE, reduced=True)

    def __bool__(self):
        return bool(self.num)

    def is_poly(self):
        return self.den.is_one()

    def __add__(self, other):
        if self.den.is_one() and other.den.is_one():
            return FracH(self.num + other.num, PH_ONE, reduced=True)
        return FracH(self.num * other.den + other.num * self.den,
                     self.den * other.den)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return FracH(-self.num, self.den, reduced=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FracH(self.num * other, self.den, reduced=True) if other \
                else FH_ZERO
        if self.den.is_one() and other.den.is_one():
            return FracH(self.num * other.num, PH_ONE, reduced=True)
        return FracH(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not other.num:
            raise ZeroDivisionError("division by zero FracH")
        return FracH(self.num * other.den, self.den * other.num)

    def __pow__(self, n):
        if n < 0:
            return (FH_ONE / self) ** (-n)
        result = FH_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, FracH):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num._frozen(), self.den._frozen()))

    def rational_value(self):
        """If self is a nonzero rational constant, return it, else None."""
        if not self.num or not self.is_poly():
            return None
        if self.num.degree() != 0:
            return None
        return self.num.coeffs[0]

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _reduce_h(num, den):
    if not num:
        return PH_ZERO, PH_ONE
    g = PolyH.gcd(num, den)
    if not g.is_one():
        num = num.exact_div(g)
        den = den.exact_div(g)
    lead = den.leading_coeff()
    if lead != 1:
        num = num * (Fraction(1) / lead)
        den = den * (Fraction(1) / lead)
    return num, den


FH_ZERO = FracH.from_rational(0)
FH_ONE = FracH.from_rational(1)


# -- quantum combinatorics ---------------------------------------------

def quantum_int(ell, d=1):
    """[ell] at u = v^d: v^{d(ell-1)} + v^{d(ell-3)} + ... + v^{-d(ell-1)}."""
    if ell < 0:
        raise ValueError("quantum_int needs ell >= 0")
    return LaurentZ({d * (ell - 1 - 2 * t): 1 for t in range(ell)})


def quantum_factorial(ell, d=1):
    """[ell]! at u = v^d."""
    out = LZ_ONE
    for t in range(2, ell + 1):
        out = out * quantum_int(t, d)
    return out


def quantum_binom(ell, m, d=1):
    """Gaussian binomial [ell choose m] at u = v^d (exact division)."""
    if not 0 <= m <= ell:
        raise ValueError("need 0 <= m <= ell")
    num = quantum_factorial(ell, d)
    den = quantum_factorial(m, d) * quantum_factorial(ell - m, d)
    return num.exact_div(den)


def angle(m):
    """<m> = v^m - v^-m."""
    if m < 1:
        raise ValueError("angle needs m >= 1")
    return LaurentZ({m: 1, -m: -1})
