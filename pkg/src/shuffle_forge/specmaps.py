"""Specialization maps phi_d, the two-step B-factor cancellation, the
kappa/c/G/A tables, the rank-1 symmetrized factors P, vertical and cross
specializations, integral-form membership predicates, and the desk-scale
dimension identity.

A specialization image lives in the w variables wvar(root_index, s) for
1 <= s <= d_beta, with RationalV coefficients; it is symmetric in the copies
of each root.
"""

import itertools

from .scalars import (LaurentZ, LZ_ZERO, LZ_ONE, RationalV, RV_ONE,
                      NotDivisible, angle, quantum_int, quantum_factorial)
from . import polyvars as pv
from .polyvars import xvar, wvar, wpvar, zvar
from .roots import positive_roots, kostant_partitions
from .rootvec import pbwd_image


class NotDivisibleByB(ArithmeticError):
    """Step-one specialization not divisible by the forced B factor."""


def root_index(sys, beta):
    for idx, b in enumerate(positive_roots(sys)):
        if b == beta:
            return idx
    raise KeyError(beta)


# -- tables ---------------------------------------------------------------

def kappa(beta):
    """The w-exponent shift of the single-root specialization."""
    sys = beta.sys
    if sys.type == "D":
        return beta.height - 1
    n, i, j = sys.rank, beta.i, beta.j
    if beta.tag in ("ij", "n"):
        return j - i
    if beta.tag == "in":
        return n - i
    if beta.tag == "inj":
        return 4 * n - i - 3 * j - 1
    return 2 * n - 2 * i


def c_factor(beta):
    """The constant c_beta, as a Laurent polynomial."""
    sys = beta.sys
    h = beta.height
    a1, a2 = angle(1), angle(2)
    if sys.type == "D" or beta.tag in ("ij", "n"):
        return a1 ** (h - 1)
    n, j = sys.rank, beta.j
    if beta.tag == "in":
        return a1 ** (h - 2) * a2
    if beta.tag == "inj":
        out = a1 ** (h - 3) * a2
        for l in range(j, n):
            out = out * LaurentZ({2 * n - 2 * l: 1, 0: -1})
            out = out * LaurentZ({2 * n - 2 * l + 4: 1, 0: -1})
        return out
    return a1 ** (h - 3) * a2 ** 2


def c_tilde(beta):
    """c_beta, divided by [2]_v for the doubled C-type root."""
    c = c_factor(beta)
    if beta.sys.type == "C" and beta.tag == "ini":
        return c.exact_div(quantum_int(2))
    return c


def tables(beta):
    return kappa(beta), c_factor(beta), c_tilde(beta)


def b_factor_list(beta, s=1):
    """The linear factors of B_beta in (w_{beta,s}, w'_{beta,s})."""
    sys = beta.sys
    if not beta.is_two_step():
        raise ValueError(f"{beta!r} is not a two-step root")
    bidx = root_index(sys, beta)
    w = pv.p_var(wvar(bidx, s), RV_ONE)
    wp = wpvar(bidx, s)

    def form(exp):
        return pv.p_sub(w, {(wp, 1): RationalV.v_power(exp)})

    out = []
    if sys.type == "C":
        for _ in range(sys.rank - beta.i - 1):
            out.append(form(-2))
            out.append(form(2))
    else:
        n = sys.rank
        for l in range(beta.j, n - 1):
            out.append(form(2 * l + 4 - 2 * n))
            out.append(form(2 * l - 2 * n))
    return out


def b_factor(beta, s=1):
    out = pv.p_const(RV_ONE)
    for f in b_factor_list(beta, s):
        out = pv.p_mul(out, f)
    return out


def a_d_factor(sys, d):
    """The A_d constant of the C-type RTT membership (1 in type D)."""
    out = LZ_ONE
    if sys.type != "C":
        return out
    n = sys.rank
    for beta, m in d.entries:
        if beta.tag == "ini":
            out = out * quantum_int(2) ** m
        elif beta.tag == "inj":
            j = beta.j
            out = out * LaurentZ({2 * n - 2 * j + 4: 1, 0: -1}) ** m
            for l in range(j, n - 1):
                out = out * LaurentZ({2 * n - 2 * l: 1, 0: -1}) ** m
                out = out * LaurentZ({2 * n - 2 * l + 2: 1, 0: -1}) ** m
    return out


def rtt_prefactor(sys, k):
    """<1>^{k_1+..+k_{n-1}} <2>^{k_n} (C) or <1>^{|k|} (D)."""
    if sys.type == "C":
        return angle(1) ** sum(k[:-1]) * angle(2) ** k[-1]
    return angle(1) ** sum(k)


def g_factor_list(beta, d_beta):
    """Linear factors of G_beta in the variables w_{beta,1..d_beta}."""
    sys = beta.sys
    bidx = root_index(sys, beta)
    kap = kappa(beta)
    out = []
    for s in range(1, d_beta + 1):
        if kap:
            out.append({(wvar(bidx, s), kap): RV_ONE})

    def cross(exp, mult):
        for s in range(1, d_beta + 1):
            for sp in range(1, d_beta + 1):
                if s == sp:
                    continue
                f = pv.p_sub(pv.p_var(wvar(bidx, s), RV_ONE),
                             {(wvar(bidx, sp), 1): RationalV.v_power(exp)})
                out.extend([f] * mult)

    n, i, j = sys.rank, beta.i, beta.j
    if sys.type == "C":
        if beta.tag in ("ij", "n"):
            cross(2, j - i)
        elif beta.tag == "in":
            cross(2, n - i - 1)
            cross(4, 1)
        elif beta.tag == "inj":
            cross(2, 2 * n - i - j - 1)
            cross(4, 1)
            for l in range(j, n - 1):
                cross(2 * n - 2 * l, 1)
            for l in range(j, n):
                cross(2 * n - 2 * l + 4, 1)
        else:
            cross(2, 2 * n - 2 * i - 1)
            cross(0, n - i - 1)
            cross(4, n - i)
    else:
        cross(2, beta.height - 1)
        if beta.tag == "inj" and j <= n - 2:
            for l in range(j, n - 1):
                cross(2 * n - 2 * l, 1)
                cross(2 * n - 2 * l - 4, 1)
    return out


def g_factor(beta, d_beta):
    out = pv.p_const(RV_ONE)
    for f in g_factor_list(beta, d_beta):
        out = pv.p_mul(out, f)
    return out


# -- the specialization map -----------------------------------------------

def _spec_assignment(sys, d, shuffle_copies=None):
    """Variable images for phi_d under the canonical split.

    Roots are taken in convex order, copies of each color ascending; pass
    shuffle_copies (an rng) to spot-test independence on random splits.
    Returns (assignment, two_step) with two_step the list of (beta, s) whose
    images involve the auxiliary w' variable.
    """
    order = {}
    for i in sys.colors:
        pool = list(range(1, d.k[i - 1] + 1))
        if shuffle_copies is not None:
            shuffle_copies.shuffle(pool)
        order[i] = iter(pool)
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
                            images = [(w, 1 - l), (wp, 1 - l)]
                        else:
                            images = [(wp, -n)]
                    else:
                        images = [(w, 1 - l if l != n else -n)]
                        if beta.nu[l] == 2:
                            images.append((w, -2 * n + l - 1))
                else:
                    images = [(w, 1 - l if l != n else 2 - n)]
                    if beta.nu[l] == 2:
                        images.append((wp, l + 3 - 2 * n))
                for copy, (target, exp) in zip(copies, images):
                    assignment[xvar(l, copy)] = {
                        (target, 1): RationalV.v_power(exp)}
    return assignment, two_step


def phi_d(F, d, shuffle_copies=None):
    """The specialization of F's numerator at the Kostant partition d.

    Grading mismatch yields 0; failure of the forced B-divisibility raises
    NotDivisibleByB.
    """
    sys = F.sys
    if F.is_zero() or tuple(F.k) != tuple(d.k):
        return {}
    assignment, two_step = _spec_assignment(sys, d, shuffle_copies)
    out = pv.p_substitute(F.num, assignment, RV_ONE)
    roots = positive_roots(sys)
    final = {}
    for beta, s in two_step:
        bidx = roots.index(beta)
        for factor in b_factor_list(beta, s):
            try:
                out = pv.exact_div(out, factor, RV_ONE)
            except NotDivisible as exc:
                raise NotDivisibleByB(
                    f"B-factor of {beta.full_name()} copy {s} does not "
                    f"divide: {exc}") from exc
        exp = 2 if sys.type == "C" else 0
        final[wpvar(bidx, s)] = {(wvar(bidx, s), 1): RationalV.v_power(exp)}
    if final:
        out = pv.p_substitute(out, final, RV_ONE)
    return out


def phi_single(F, beta, shuffle_copies=None):
    """phi_d for d the single-root partition {beta: 1}."""
    from .roots import KostantPartition
    return phi_d(F, KostantPartition(beta.sys, [(beta, 1)]), shuffle_copies)


def spec_is_symmetric(sys, g, d):
    """Check S_d-symmetry of a specialization image, root by root."""
    roots = positive_roots(sys)
    for beta, mult in d.entries:
        bidx = roots.index(beta)
        for s in range(1, mult):
            swap = {wvar(bidx, s): wvar(bidx, s + 1),
                    wvar(bidx, s + 1): wvar(bidx, s)}
            if pv.p_rename(g, swap) != g:
                return False
    return True


# -- rank-1 symmetrized factors --------------------------------------------

def p_lambda_core(bidx, r_list, vbeta_exp):
    """Sym over S_d of prod w_s^{r_s} prod_{i<j} (w_i - v_b^{-2}w_j)/(w_i - w_j)."""
    d = len(r_list)
    variables = [wvar(bidx, s) for s in range(1, d + 1)]
    c = RationalV.v_power(-2 * vbeta_exp)
    total = {}
    for perm in itertools.permutations(range(d)):
        sign = _perm_sign(perm)
        term = pv.p_monomial(
            {variables[perm[s]]: r_list[s] for s in range(d)}, RV_ONE)
        for a in range(d):
            for b in range(a + 1, d):
                term = pv.p_mul(term, pv.p_sub(
                    pv.p_var(variables[perm[a]], RV_ONE),
                    {(variables[perm[b]], 1): c}))
        if sign < 0:
            term = pv.p_neg(term)
        pv._poly_add_inplace(total, term)
    for a in range(d):
        for b in range(a + 1, d):
            if total:
                total = pv.exact_div(total, pv.p_sub(
                    pv.p_var(variables[a], RV_ONE),
                    pv.p_var(variables[b], RV_ONE)), RV_ONE)
    return total


def _perm_sign(perm):
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


def p_lambda(h, beta):
    """The P factor of the factorization formula for the root beta."""
    r_list = h.modes(beta)
    if not r_list:
        raise ValueError("root not in the support of h")
    return p_lambda_core(root_index(h.sys, beta), r_list, beta.vbeta_exp)


# -- vertical and cross specializations -------------------------------------

def compositions(total):
    """All ordered tuples of positive integers summing to total."""
    if total == 0:
        return [()]
    out = []
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            out.append((first,) + rest)
    return out


def vertical_specialize(g, sys, d, t):
    """Specialize the r-th w-group of each root to v_b^{-2}z, .., v_b^{-2t}z."""
    roots = positive_roots(sys)
    assignment = {}
    for beta, mult in d.entries:
        parts = t[beta]
        if sum(parts) != mult:
            raise ValueError("composition does not match d")
        bidx = roots.index(beta)
        s = 0
        for r, size in enumerate(parts, start=1):
            for m in range(1, size + 1):
                s += 1
                assignment[wvar(bidx, s)] = {
                    (zvar(bidx, r), 1):
                        RationalV.v_power(-2 * m * beta.vbeta_exp)}
    if not assignment:
        return dict(g)
    return pv.p_substitute(g, assignment, RV_ONE)


def scalar_divide(g, scalar):
    """Divide every coefficient by a Laurent scalar within Z[v, v^-1].

    Returns the quotient polynomial; raises NotDivisible (with the offending
    monomial as witness) when some coefficient is not Laurent-integral or not
    divisible.
    """
    out = {}
    for key, c in g.items():
        if not c.is_laurent():
            raise NotDivisible("coefficient not in Z[v,v^-1]", key)
        q = c.num.exact_div(scalar)
        out[key] = RationalV.from_laurent(q)
    return out


def cross_specialize(F, d, t):
    """The cross specialization Upsilon_{d,t}(F) plus its divisibility flag.

    Returns (poly in z variables, divisible_by_factorials, witness).
    """
    sys = F.sys
    pref = rtt_prefactor(sys, F.k) * a_d_factor(sys, d)
    g = phi_d(F, d)
    g = scalar_divide(g, pref)
    for beta, mult in d.entries:
        for factor in g_factor_list(beta, mult):
            g = pv.exact_div(g, factor, RV_ONE)
    out = vertical_specialize(g, sys, d, t)
    target = LZ_ONE
    for beta, _ in d.entries:
        for part in t[beta]:
            target = target * quantum_factorial(part, beta.vbeta_exp)
    try:
        scalar_divide(out, target)
    except NotDivisible as exc:
        return out, False, exc.witness
    return out, True, None


# -- membership predicates ---------------------------------------------------

def lusztig_member(F):
    """Membership test for the shuffle image of the Lusztig integral form.

    Returns (ok, witness): integer Laurent coefficients, and phi_d divisible
    by prod c~_beta^{d_beta} for every Kostant partition d.
    """
    for key, c in F.num.items():
        if not c.is_laurent():
            return False, {"condition": "coefficients", "monomial": key}
    sys = F.sys
    for d in kostant_partitions(sys, F.k):
        target = LZ_ONE
        for beta, mult in d.entries:
            target = target * c_tilde(beta) ** mult
        try:
            g = phi_d(F, d)
            scalar_divide(g, target)
        except (NotDivisible, NotDivisibleByB) as exc:
            return False, {"condition": "c-tilde divisibility",
                           "partition": d.name, "detail": str(exc)}
    return True, None


def rtt_member(F):
    """Membership test for the shuffle image of the RTT integral form.

    Type C checks three conditions (prefactor, A_d, cross specialization);
    type D checks two (no A_d constant).
    """
    sys = F.sys
    pref = rtt_prefactor(sys, F.k)
    for key, c in F.num.items():
        try:
            if not c.is_laurent():
                raise NotDivisible("not Laurent", key)
            c.num.exact_div(pref)
        except NotDivisible:
            return False, {"condition": "prefactor", "monomial": key}
    for d in kostant_partitions(sys, F.k):
        try:
            g = phi_d(F, d)
        except NotDivisibleByB as exc:
            return False, {"condition": "B-divisibility",
                           "partition": d.name, "detail": str(exc)}
        try:
            g = scalar_divide(g, pref * a_d_factor(sys, d))
        except NotDivisible:
            return False, {"condition": "A_d divisibility",
                           "partition": d.name}
        try:
            for beta, mult in d.entries:
                for factor in g_factor_list(beta, mult):
                    g = pv.exact_div(g, factor, RV_ONE)
        except NotDivisible:
            return False, {"condition": "G divisibility", "partition": d.name}
        for t in itertools.product(
                *(compositions(mult) for _, mult in d.entries)):
            tmap = {beta: comp
                    for (beta, _), comp in zip(d.entries, t)}
            out = vertical_specialize(g, sys, d, tmap)
            target = LZ_ONE
            for beta, _ in d.entries:
                for part in tmap[beta]:
                    target = target * quantum_factorial(part, beta.vbeta_exp)
            try:
                scalar_divide(out, target)
            except NotDivisible:
                return False, {"condition": "cross specialization",
                               "partition": d.name,
                               "composition": {b.name: c
                                               for b, c in tmap.items()}}
    return True, None


# -- verification helpers -----------------------------------------------------

def proportional_poly(a, b):
    """(q, t) with a = q*v^t*b, q rational nonzero; (1, 0) if both zero."""
    if not a and not b:
        return (1, 0)
    if not a or not b:
        return None
    key = next(iter(b))
    ca = a.get(key)
    if ca is None:
        return None
    c = ca / b[key]
    ratio = c.monomial_ratio()
    if ratio is None:
        return None
    if pv.p_sub(a, pv.p_scale(b, c)):
        return None
    return ratio


def verify_vanishing(h, dprime, image=None):
    """phi_{d'}(Psi(E_h)) = 0 for d' below deg(h) in the partition order."""
    sys = h.sys
    F = image if image is not None else pbwd_image(sys, h)
    return pv.p_is_zero(phi_d(F, dprime))


def verify_leading(h1, h2, image1=None, image2=None):
    """The h-independence of the factorization cofactor, plus divisibility.

    Checks phi_d(Psi(E_h1)) * prod P_{h2} proportional to
    phi_d(Psi(E_h2)) * prod P_{h1}, and each phi_d image exactly divisible
    by prod c_beta^{d_beta} * G_beta.
    """
    d = h1.deg()
    if d != h2.deg():
        raise ValueError("degrees differ")
    sys = h1.sys
    images = []
    for h, img in ((h1, image1), (h2, image2)):
        F = img if img is not None else pbwd_image(sys, h)
        images.append(phi_d(F, d))

    def p_product(h):
        out = pv.p_const(RV_ONE)
        for beta, _ in d.entries:
            out = pv.p_mul(out, p_lambda(h, beta))
        return out

    lhs = pv.p_mul(images[0], p_product(h2))
    rhs = pv.p_mul(images[1], p_product(h1))
    if proportional_poly(lhs, rhs) is None:
        return False
    scalar = LZ_ONE
    for beta, mult in d.entries:
        scalar = scalar * c_factor(beta) ** mult
    for g in images:
        try:
            q = scalar_divide(g, scalar)
            for beta, mult in d.entries:
                for factor in g_factor_list(beta, mult):
                    q = pv.exact_div(q, factor, RV_ONE)
        except NotDivisible:
            return False
    return True


# -- exact linear algebra and the dimension identity -------------------------

def _laurent_lcm(a, b):
    g = LaurentZ.gcd(a, b)
    return a.exact_div(g) * b


def clear_row(coeffs):
    """RationalV list -> LaurentZ list, scaled by the common denominator."""
    den = LZ_ONE
    for c in coeffs:
        den = _laurent_lcm(den, c.den)
    return [c.num * den.exact_div(c.den) for c in coeffs]


def laurent_rank(rows):
    """Rank of a matrix over the fraction field of Z[v,v^-1].

    Fraction-free Bareiss elimination: entries stay in Z[v,v^-1], each step
    divides exactly by the previous pivot.
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = LZ_ONE
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, len(m)):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        p = m[row][col]
        for r in range(row + 1, len(m)):
            for c in range(col + 1, ncols):
                m[r][c] = (p * m[r][c] - m[r][col] * m[row][c]).exact_div(prev)
            m[r][col] = LZ_ZERO
        prev = p
        rank += 1
        row += 1
        if row == len(m):
            break
    return rank


def sparse_rank(rows):
    """Rank of sparse rows (dicts column -> field element) by Gaussian
    elimination with sparsest-row / rarest-column pivoting.

    Works over any exact field (RationalV, FracH); far faster than dense
    fraction-free elimination on the sparse matrices arising here.
    """
    rows = [dict(r) for r in rows if r]
    rank = 0
    while rows:
        rows.sort(key=len)
        row = rows.pop(0)
        if not row:
            continue
        occurrences = {}
        for r in rows:
            for c in r:
                occurrences[c] = occurrences.get(c, 0) + 1
        col = min(row, key=lambda c: occurrences.get(c, 0))
        pivot = row[col]
        rank += 1
        remaining = []
        for r in rows:
            if col in r:
                f = r.pop(col) / pivot
                for c2, val in row.items():
                    if c2 == col:
                        continue
                    cur = r.get(c2)
                    nv = (cur - f * val) if cur is not None else -(f * val)
                    if nv:
                        r[c2] = nv
                    elif cur is not None:
                        del r[c2]
            if r:
                remaining.append(r)
        rows = remaining
    return rank


def poly_matrix_rank(polys):
    """Rank of a family of polynomials over Q(v)."""
    return sparse_rank(polys)


def _wheel_orbits_and_patterns(sys, k, delta, boxes):
    """Symmetrized monomial orbits in the box at total degree delta, plus the
    wheel alignments available at k (one per ordered color pair suffices on
    symmetric inputs)."""
    pools = []
    colors = [i for i in sys.colors if k[i - 1]]
    for i in colors:
        lo, hi = boxes[i]
        pools.append(list(itertools.combinations_with_replacement(
            range(lo, hi + 1), k[i - 1])))
    orbits = []
    for combo in itertools.product(*pools):
        if sum(sum(part) for part in combo) != delta:
            continue
        exps = {}
        for i, part in zip(colors, combo):
            for r, e in enumerate(part, start=1):
                exps[xvar(i, r)] = e
        orbits.append(pv.p_symmetrize(pv.p_monomial(exps, RV_ONE), k))
    patterns = []
    for i in sys.colors:
        for j in sys.colors:
            if i == j or sys.a(i, j) == 0:
                continue
            m = 1 - sys.a(i, j)
            if k[i - 1] < m or k[j - 1] < 1:
                continue
            patterns.append((i, j, tuple(range(1, m + 1)), 1))
    return orbits, patterns


def _wheel_constraint_columns(sys, orbits, patterns):
    """Constraint matrix columns: orbit index -> list of constraint values."""
    from .shuffle import _wheel_assignment_trig
    constraints = {}
    for t, orbit in enumerate(orbits):
        for pidx, (i, j, copies, r) in enumerate(patterns):
            assignment = _wheel_assignment_trig(sys, i, j, copies, r, RV_ONE)
            image = pv.p_substitute(orbit, assignment, RV_ONE)
            for key, c in image.items():
                constraints.setdefault((pidx, key),
                                       [RationalV.from_int(0)] * len(orbits))
                constraints[(pidx, key)][t] = c
    return constraints


def wheel_space_dimension(sys, k, delta, boxes):
    """Dimension of homogeneous symmetric polynomials of total degree delta,
    per-color exponents inside the given boxes, satisfying wheel conditions.

    boxes: color -> (lo, hi) exponent range.
    """
    orbits, patterns = _wheel_orbits_and_patterns(sys, k, delta, boxes)
    if not orbits:
        return 0
    constraints = _wheel_constraint_columns(sys, orbits, patterns)
    if not constraints:
        return len(orbits)
    rows = [{t: c for t, c in enumerate(rowvals) if c}
            for rowvals in constraints.values()]
    return len(orbits) - sparse_rank(rows)


def box_restricted_span_dimension(polys, k, boxes):
    """dim of {p in span(polys) : every exponent of p inside the boxes}.

    Equals rank(polys) minus the rank of their projections onto the
    monomials that leave the boxes (rank-nullity for the projection map).
    """
    def in_box(key):
        for t in range(0, len(key), 2):
            kind, i, _ = pv.var_decode(key[t])
            lo, hi = boxes[i]
            if not lo <= key[t + 1] <= hi:
                return False
        return True

    rows_out = [{key: c for key, c in p.items() if not in_box(key)}
                for p in polys]
    return sparse_rank(polys) - sparse_rank(rows_out)


def dimension_report(sys, k, degrees, window, pad=2):
    """Per total mode degree: PBWD count, image rank, wheel-space dimension,
    and containment of the wheel space in the span of PBWD images.

    The wheel space is cut to the exponent hull of the PBWD images from the
    given mode window, making the comparison finite.  Near the hull boundary
    it can pick up images of keys just outside the window, so it is compared
    against the span of images from the window padded by `pad` on both ends:
    the row is ok when the windowed images are linearly independent and the
    wheel space is contained in the padded span.  (Every image lands in the
    wheel space, so containment makes the two spaces match exactly on the
    box.)
    """
    from .roots import pbwd_keys
    k = tuple(k)

    def keys_by_mode(win):
        out = {}
        for _, keys in pbwd_keys(sys, k, win):
            for h in keys:
                out.setdefault(h.total_mode_degree(), []).append(h)
        return out

    by_mode = keys_by_mode(window)
    padded_by_mode = None
    report = []
    for m in degrees:
        keys = by_mode.get(m, [])
        if not keys:
            report.append({"degree": m, "pbwd": 0, "rank": 0,
                           "wheel_dim": 0, "contained": True, "ok": True})
            continue
        images = [pbwd_image(sys, h) for h in keys]
        polys = [F.num for F in images]
        deltas = {pv.p_total_degree(key) for p in polys for key in p}
        assert len(deltas) == 1, "images not homogeneous"
        delta = deltas.pop()
        boxes = {}
        for i in sys.colors:
            if not k[i - 1]:
                continue
            exps = [pv.key_exp(key, xvar(i, r))
                    for p in polys for key in p
                    for r in range(1, k[i - 1] + 1)]
            boxes[i] = (min(exps), max(exps))
        rank = poly_matrix_rank(polys)
        dim = wheel_space_dimension(sys, k, delta, boxes)
        if dim == rank:
            contained = True
        else:
            if padded_by_mode is None:
                padded_by_mode = keys_by_mode(
                    (window[0] - pad, window[1] + pad))
            big = [pbwd_image(sys, h).num for h in padded_by_mode.get(m, [])]
            contained = dim == box_restricted_span_dimension(big, k, boxes)
        report.append({"degree": m, "pbwd": len(keys), "rank": rank,
                       "wheel_dim": dim, "contained": contained,
                       "ok": len(keys) == rank and contained})
    return report
