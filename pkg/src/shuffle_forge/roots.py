"""Root-system data for types C and D (plus A for internal oracles).

Positive roots are carried as standard Lyndon words together with a
classification tag; the convex order used everywhere is the lexicographic
order on the words.  Kostant partitions are ordered by comparing their
multiplicity vectors lexicographically along the convex root order.
"""

import itertools
from functools import lru_cache


class RootSystem:
    """Cartan data: type tag, rank, Cartan matrix, symmetrizers."""

    def __init__(self, type_tag, rank, symmetrizers=None):
        if type_tag == "C":
            if rank < 2:
                raise ValueError("type C needs rank >= 2")
        elif type_tag == "D":
            if rank < 4:
                raise ValueError("type D needs rank >= 4 (D_3 rejected)")
        elif type_tag == "A":
            if rank < 1:
                raise ValueError("type A needs rank >= 1")
        else:
            raise ValueError(f"unsupported type {type_tag!r}")
        self.type = type_tag
        self.rank = rank
        n = rank
        if type_tag == "C":
            self.d = tuple([1] * (n - 1) + [2])
        elif symmetrizers is not None:
            self.d = tuple(symmetrizers)
        else:
            self.d = tuple([1] * n)
        self.cartan = self._build_cartan()
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                assert self.d[i - 1] * self.cartan[i - 1][j - 1] == \
                    self.d[j - 1] * self.cartan[j - 1][i - 1]

    def _build_cartan(self):
        n = self.rank
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = 2
        if self.type in ("A",):
            for i in range(n - 1):
                a[i][i + 1] = a[i + 1][i] = -1
        elif self.type == "C":
            for i in range(n - 2):
                a[i][i + 1] = a[i + 1][i] = -1
            if n >= 2:
                a[n - 2][n - 1] = -2
                a[n - 1][n - 2] = -1
        elif self.type == "D":
            for i in range(n - 2):
                a[i][i + 1] = a[i + 1][i] = -1
            a[n - 2][n - 1] = a[n - 1][n - 2] = 0
            a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        return tuple(tuple(row) for row in a)

    def a(self, i, j):
        return self.cartan[i - 1][j - 1]

    def d_i(self, i):
        return self.d[i - 1]

    def pairing(self, i, j):
        """(alpha_i, alpha_j) = d_i a_ij."""
        return self.d[i - 1] * self.cartan[i - 1][j - 1]

    @property
    def colors(self):
        return range(1, self.rank + 1)

    def key(self):
        return (self.type, self.rank, self.d)

    def __repr__(self):
        return f"{self.type}{self.rank}"

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


class PositiveRoot:
    """A positive root given by its standard Lyndon word.

    tag is one of "ij" ([i,j], including simple [i] and, in D, [n-1]),
    "n" ([n]), "in" ([i,n]), "inj" ([i,n,j], i < j < n),
    "ini" ([i,n,i], type C only).
    """

    __slots__ = ("sys", "tag", "i", "j", "word", "nu", "height", "vbeta_exp")

    def __init__(self, sys, tag, i, j, word):
        self.sys = sys
        self.tag = tag
        self.i = i
        self.j = j
        self.word = tuple(word)
        nu = {}
        for letter in word:
            nu[letter] = nu.get(letter, 0) + 1
        self.nu = nu
        self.height = len(word)
        norm = 0
        for l, nl in nu.items():
            for m, nm in nu.items():
                norm += nl * nm * sys.pairing(l, m)
        if norm % 2:
            raise ValueError("odd root norm")
        self.vbeta_exp = norm // 2

    @property
    def name(self):
        if self.tag == "ij":
            return f"[{self.i}]" if self.i == self.j else f"[{self.i},{self.j}]"
        if self.tag == "n":
            return f"[{self.sys.rank}]"
        if self.tag == "in":
            return f"[{self.i},{self.sys.rank}]"
        return f"[{self.i},{self.sys.rank},{self.j}]"

    def full_name(self):
        return f"{self.sys!r}:{self.name}"

    def is_two_step(self):
        """Roots whose specialization passes through an auxiliary variable."""
        if self.sys.type == "C":
            return self.tag == "ini"
        return self.tag == "inj" and self.j <= self.sys.rank - 2

    def key(self):
        return (self.sys.key(), self.tag, self.i, self.j)

    def __eq__(self, other):
        return isinstance(other, PositiveRoot) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return self.name


@lru_cache(maxsize=None)
def _positive_roots_cached(sys_key):
    sys = RootSystem(sys_key[0], sys_key[1],
                     None if sys_key[0] == "C" else sys_key[2])
    n = sys.rank
    roots = []
    if sys.type == "A":
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                roots.append(PositiveRoot(sys, "ij", i, j, range(i, j + 1)))
    elif sys.type == "C":
        for i in range(1, n):
            for j in range(i, n):
                roots.append(PositiveRoot(sys, "ij", i, j, range(i, j + 1)))
            roots.append(PositiveRoot(sys, "in", i, n, range(i, n + 1)))
            word = list(range(i, n)) * 2 + [n]
            roots.append(PositiveRoot(sys, "ini", i, i, word))
            for j in range(i + 1, n):
                word = list(range(i, n + 1)) + list(range(n - 1, j - 1, -1))
                roots.append(PositiveRoot(sys, "inj", i, j, word))
        roots.append(PositiveRoot(sys, "n", n, n, [n]))
        expected = n * n
    else:
        for i in range(1, n):
            for j in range(i, n):
                roots.append(PositiveRoot(sys, "ij", i, j, range(i, j + 1)))
        roots.append(PositiveRoot(sys, "n", n, n, [n]))
        for i in range(1, n - 1):
            roots.append(PositiveRoot(sys, "in", i, n,
                                      list(range(i, n - 1)) + [n]))
            for j in range(i + 1, n):
                word = list(range(i, n - 1)) + [n] + list(range(n - 1, j - 1, -1))
                roots.append(PositiveRoot(sys, "inj", i, j, word))
        expected = n * (n - 1)
    if sys.type != "A":
        assert len(roots) == expected, (len(roots), expected)
    roots.sort(key=lambda b: b.word)
    return tuple(roots)


def positive_roots(sys):
    """All positive roots in the convex (lexicographic Lyndon) order."""
    return list(_positive_roots_cached(sys.key()))


def root_coeffs(beta):
    """(nu vector as dict, height, v_beta exponent (beta,beta)/2)."""
    return dict(beta.nu), beta.height, beta.vbeta_exp


def root_by_name(sys, name):
    for beta in positive_roots(sys):
        if beta.name == name:
            return beta
    raise KeyError(name)


def degree_tuple(k, rank):
    if isinstance(k, dict):
        return tuple(k.get(i, 0) for i in range(1, rank + 1))
    return tuple(k)


class KostantPartition:
    """A partition of the degree vector k into positive roots."""

    __slots__ = ("sys", "entries", "k")

    def __init__(self, sys, entries):
        order = {b: idx for idx, b in enumerate(positive_roots(sys))}
        self.sys = sys
        self.entries = tuple(sorted(((b, m) for b, m in entries if m),
                                    key=lambda bm: order[bm[0]]))
        k = [0] * sys.rank
        for b, m in self.entries:
            for l, nl in b.nu.items():
                k[l - 1] += m * nl
        self.k = tuple(k)

    def get(self, beta):
        for b, m in self.entries:
            if b == beta:
                return m
        return 0

    def order_key(self):
        """Multiplicity vector along the convex order (KP order = lex)."""
        lookup = dict(self.entries)
        return tuple(lookup.get(b, 0) for b in positive_roots(self.sys))

    @property
    def name(self):
        return "+".join(f"{m}*{b.name}" if m > 1 else b.name
                        for b, m in self.entries) or "0"

    def __eq__(self, other):
        return (isinstance(other, KostantPartition)
                and self.sys == other.sys and self.entries == other.entries)

    def __hash__(self):
        return hash((self.sys.key(), tuple((b.key(), m) for b, m in self.entries)))

    def __lt__(self, other):
        return self.order_key() < other.order_key()

    def __repr__(self):
        return self.name


def kostant_partitions(sys, k):
    """All Kostant partitions of k, ascending in the KP order."""
    k = degree_tuple(k, sys.rank)
    roots = positive_roots(sys)
    out = []

    def rec(idx, remaining, acc):
        if not any(remaining):
            out.append(KostantPartition(sys, list(acc)))
            return
        if idx == len(roots):
            return
        beta = roots[idx]
        max_mult = min((remaining[l - 1] // nl for l, nl in beta.nu.items()),
                       default=0)
        for m in range(max_mult, -1, -1):
            if m:
                nxt = list(remaining)
                ok = True
                for l, nl in beta.nu.items():
                    nxt[l - 1] -= m * nl
                    if nxt[l - 1] < 0:
                        ok = False
                if not ok:
                    continue
                acc.append((beta, m))
                rec(idx + 1, tuple(nxt), acc)
                acc.pop()
            else:
                rec(idx + 1, remaining, acc)

    rec(0, k, [])
    out.sort(key=KostantPartition.order_key)
    return out


class PBWDKey:
    """Finite-support multiplicity function h on (root, mode) pairs."""

    __slots__ = ("sys", "entries")

    def __init__(self, sys, entries):
        order = {b: idx for idx, b in enumerate(positive_roots(sys))}
        self.sys = sys
        self.entries = tuple(sorted(((b, s, m) for b, s, m in entries if m),
                                    key=lambda e: (order[e[0]], e[1])))

    def deg(self):
        """The Kostant partition deg(h): total multiplicity per root."""
        acc = {}
        for b, s, m in self.entries:
            acc[b] = acc.get(b, 0) + m
        return KostantPartition(self.sys, acc.items())

    def gr(self):
        return self.deg().k

    def modes(self, beta):
        """Sorted mode list of beta, with multiplicity."""
        out = []
        for b, s, m in self.entries:
            if b == beta:
                out.extend([s] * m)
        return sorted(out)

    def total_mode_degree(self):
        return sum(s * m for _, s, m in self.entries)

    @property
    def name(self):
        return "*".join(
            f"({b.name},{s})" + (f"^{m}" if m > 1 else "")
            for b, s, m in self.entries) or "1"

    def __eq__(self, other):
        return (isinstance(other, PBWDKey) and self.sys == other.sys
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.sys.key(),
                     tuple((b.key(), s, m) for b, s, m in self.entries)))

    def __repr__(self):
        return self.name


def pbwd_keys(sys, k, window):
    """All PBWD keys with gr(h) = k and modes inside the window, grouped by
    Kostant partition: returns list of (KostantPartition, [PBWDKey, ...])."""
    s_min, s_max = window
    modes = range(s_min, s_max + 1)
    out = []
    for d in kostant_partitions(sys, k):
        pools = []
        for beta, mult in d.entries:
            pools.append([
                tuple(zip([beta] * len(combo), combo))
                for combo in itertools.combinations_with_replacement(modes, mult)
            ])
        keys = []
        for combo in itertools.product(*pools):
            counted = {}
            for beta, s in itertools.chain.from_iterable(combo):
                counted[(beta, s)] = counted.get((beta, s), 0) + 1
            keys.append(PBWDKey(sys, [(b, s, m) for (b, s), m in counted.items()]))
        out.append((d, keys))
    return out
