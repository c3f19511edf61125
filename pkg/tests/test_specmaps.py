"""Specialization maps, constant tables, membership predicates, exact
linear algebra, and the desk-scale dimension identity."""

import random
from fractions import Fraction

import pytest

from shuffle_forge.roots import (RootSystem, positive_roots, root_by_name,
                                 KostantPartition, PBWDKey, pbwd_keys)
from shuffle_forge.scalars import (LaurentZ, LZ_ONE, RationalV, RV_ONE,
                                   angle, quantum_int)
from shuffle_forge import polyvars as pv
from shuffle_forge.polyvars import xvar, wvar
from shuffle_forge.shuffle import psi, star, generator
from shuffle_forge.rootvec import (tilde_image, tilde_root_vector,
                                   tilde_parts, rtt_root_vector,
                                   divided_power, pbwd_image)
from shuffle_forge import specmaps as sm


C2 = RootSystem("C", 2)
C3 = RootSystem("C", 3)
D4 = RootSystem("D", 4)


class TestTables:
    def test_kappa_values(self):
        assert sm.kappa(root_by_name(C2, "[1]")) == 0
        assert sm.kappa(root_by_name(C2, "[1,2]")) == 1
        assert sm.kappa(root_by_name(C2, "[1,2,1]")) == 2
        assert sm.kappa(root_by_name(C3, "[1,3,2]")) == 4
        # type D: height - 1 throughout
        for beta in positive_roots(D4):
            assert sm.kappa(beta) == beta.height - 1

    def test_c_factor_values(self):
        assert sm.c_factor(root_by_name(C2, "[1]")) == LZ_ONE
        assert sm.c_factor(root_by_name(C2, "[1,2]")) == angle(2)
        assert sm.c_factor(root_by_name(C2, "[1,2,1]")) == angle(2) ** 2
        # height of [1,4,3] in D4 is 4, so the constant is <1>^3
        assert sm.c_factor(root_by_name(D4, "[1,4,3]")) == angle(1) ** 3

    def test_c_tilde_divides_out_quantum_two(self):
        beta = root_by_name(C2, "[1,2,1]")
        assert sm.c_tilde(beta) * quantum_int(2) == sm.c_factor(beta)
        plain = root_by_name(C2, "[1,2]")
        assert sm.c_tilde(plain) == sm.c_factor(plain)

    def test_b_factor_shapes(self):
        # C3 doubled root [1,3,1]: (n - i - 1) = 1 pair of factors
        assert len(sm.b_factor_list(root_by_name(C3, "[1,3,1]"))) == 2
        # C2 doubled root: empty product
        assert sm.b_factor_list(root_by_name(C2, "[1,2,1]")) == []
        # D4 [1,4,2]: one l value (l = 2), v-exponents 0 and -4
        beta = root_by_name(D4, "[1,4,2]")
        factors = sm.b_factor_list(beta)
        assert len(factors) == 2
        bidx = sm.root_index(D4, beta)
        from shuffle_forge.polyvars import wpvar
        assert factors[0] == {(wvar(bidx, 1), 1): RV_ONE,
                              (wpvar(bidx, 1), 1): -RV_ONE}
        assert factors[1] == {(wvar(bidx, 1), 1): RV_ONE,
                              (wpvar(bidx, 1), 1): -RationalV.v_power(-4)}

    def test_b_factor_requires_two_step(self):
        with pytest.raises(ValueError):
            sm.b_factor_list(root_by_name(C2, "[1,2]"))


class TestSpecAssignment:
    def test_c3_worked_example(self):
        beta = root_by_name(C3, "[1,3,2]")
        d = KostantPartition(C3, [(beta, 1)])
        assignment, two_step = sm._spec_assignment(C3, d)
        assert two_step == []
        bidx = sm.root_index(C3, beta)
        w = wvar(bidx, 1)
        expected = {
            xvar(1, 1): 0,   # w
            xvar(2, 1): -1,  # v^-1 w
            xvar(2, 2): -5,  # v^-5 w  (second copy of color 2)
            xvar(3, 1): -3,  # v^-3 w
        }
        for var, exp in expected.items():
            assert assignment[var] == {(w, 1): RationalV.v_power(exp)}, var

    def test_images_are_group_symmetric(self):
        beta = root_by_name(C2, "[1,2]")
        d = KostantPartition(C2, [(beta, 2)])
        h = PBWDKey(C2, [(beta, 0, 2)])
        g = sm.phi_d(pbwd_image(C2, h), d)
        assert sm.spec_is_symmetric(C2, g, d)

    def test_degree_mismatch_gives_zero(self):
        beta = root_by_name(C2, "[1]")
        d = KostantPartition(C2, [(beta, 1)])
        F = star(generator(C2, 1, 0), generator(C2, 2, 0))
        assert sm.phi_d(F, d) == {}


class TestLeadingTerms:
    @pytest.mark.parametrize("sys", (C2, C3, D4), ids=repr)
    def test_single_root_leading_term(self, sys):
        # phi_beta(psi(tilde)) = const * c_beta * w^(s + kappa)
        for beta in positive_roots(sys):
            bidx = sm.root_index(sys, beta)
            for s in (-1, 0, 2):
                g = sm.phi_single(tilde_image(sys, beta, s), beta)
                assert len(g) == 1, (beta, s)
                (key, c), = g.items()
                assert key == ((wvar(bidx, 1), s + sm.kappa(beta))
                               if s + sm.kappa(beta) else ())
                ratio = (c / RationalV.from_laurent(sm.c_factor(beta)))
                assert ratio.monomial_ratio() is not None, (beta, s)

    def test_split_assignment_independence(self):
        # the canonical and a shuffled copy split give proportional images
        rng = random.Random(31)
        beta = root_by_name(C2, "[1,2,1]")
        F = tilde_image(C2, beta, 1)
        base = sm.phi_single(F, beta)
        shuffled = sm.phi_single(F, beta, shuffle_copies=rng)
        assert sm.proportional_poly(shuffled, base) is not None


class TestPLambda:
    def test_rank_one_oracle(self):
        # p_lambda_core is the A_1 shuffle product of one-variable powers,
        # computed independently in a rank-1 system with matching d_i
        for vexp, r_list in ((1, [0, 1]), (1, [2, 2]), (2, [0, 1]),
                             (2, [1, 1, 2])):
            a1 = RootSystem("A", 1, symmetrizers=(vexp,))
            acc = generator(a1, 1, r_list[0])
            for r in r_list[1:]:
                acc = star(acc, generator(a1, 1, r))
            from math import factorial
            dup = 1
            counts = {}
            for r in r_list:
                counts[r] = counts.get(r, 0) + 1
            for m in counts.values():
                dup *= factorial(m)
            got = sm.p_lambda_core(0, r_list, vexp)
            # align variable names: x_{1,s} -> w_{0,s}
            ren = {xvar(1, s): wvar(0, s) for s in range(1, len(r_list) + 1)}
            oracle = pv.p_rename(acc.num, ren)
            assert pv.p_scale(got, RationalV.from_int(dup)) == oracle or \
                sm.proportional_poly(got, oracle) is not None

    def test_requires_support(self):
        h = PBWDKey(C2, [(root_by_name(C2, "[1]"), 0, 1)])
        with pytest.raises(ValueError):
            sm.p_lambda(h, root_by_name(C2, "[2]"))


class TestLinearAlgebra:
    def test_laurent_rank_against_fraction_oracle(self):
        rng = random.Random(13)
        for _ in range(15):
            rows = rng.randint(1, 5)
            cols = rng.randint(1, 5)
            m = [[rng.randint(-4, 4) for _ in range(cols)]
                 for _ in range(rows)]
            lrows = [[LaurentZ.from_int(e) for e in row] for row in m]
            # plain fraction-based Gaussian elimination as the oracle
            fm = [[Fraction(e) for e in row] for row in m]
            rank = 0
            for col in range(cols):
                piv = next((r for r in range(rank, rows) if fm[r][col]), None)
                if piv is None:
                    continue
                fm[rank], fm[piv] = fm[piv], fm[rank]
                for r in range(rows):
                    if r != rank and fm[r][col]:
                        f = fm[r][col] / fm[rank][col]
                        fm[r] = [a - f * b for a, b in zip(fm[r], fm[rank])]
                rank += 1
            assert sm.laurent_rank(lrows) == rank

    def test_clear_row(self):
        half = RationalV(LZ_ONE, LaurentZ({0: 2}))
        v = RationalV.v_power(1)
        cleared = sm.clear_row([half, v])
        assert cleared == [LZ_ONE, LaurentZ({1: 2})]

    def test_poly_matrix_rank(self):
        x1 = xvar(1, 1)
        a = {(x1, 1): RV_ONE}
        b = {(x1, 1): RationalV.v_power(2)}
        c = {(x1, 2): RV_ONE}
        assert sm.poly_matrix_rank([a, b]) == 1
        assert sm.poly_matrix_rank([a, c]) == 2
        assert sm.poly_matrix_rank([{}, a]) == 1

    def test_box_restricted_span_dimension(self):
        x1 = xvar(1, 1)
        # span of {x^0 + x^2, x^1} restricted to exponents [0, 1] is <x^1>
        polys = [pv.p_add(pv.p_const(RV_ONE), {(x1, 2): RV_ONE}),
                 {(x1, 1): RV_ONE}]
        assert sm.box_restricted_span_dimension(polys, (1,), {1: (0, 1)}) == 1
        assert sm.box_restricted_span_dimension(polys, (1,), {1: (0, 2)}) == 2


class TestVanishingAndLeading:
    def test_vanishing_below_deg(self):
        for k in ((1, 1), (2, 1)):
            groups = pbwd_keys(C2, k, (0, 0))
            parts = [d for d, _ in groups]
            for d, keys in groups:
                for h in keys:
                    img = pbwd_image(C2, h)
                    for dprime in parts:
                        if dprime < d:
                            assert sm.verify_vanishing(h, dprime, img), \
                                (h, dprime)

    def test_leading_pairs(self):
        for d, keys in pbwd_keys(C2, (2, 1), (0, 1)):
            for a in range(len(keys)):
                for b in range(a + 1, min(a + 3, len(keys))):
                    assert sm.verify_leading(keys[a], keys[b]), \
                        (keys[a], keys[b])

    def test_leading_rejects_mixed_degrees(self):
        groups = pbwd_keys(C2, (1, 1), (0, 0))
        h1 = groups[0][1][0]
        h2 = groups[1][1][0]
        with pytest.raises(ValueError):
            sm.verify_leading(h1, h2)


class TestMembership:
    def test_lusztig_accepts_divided_powers(self):
        for sys, beta in [(C2, b) for b in positive_roots(C2)] + \
                [(D4, b) for b in positive_roots(D4) if b.height <= 2]:
            expr = divided_power(beta, 0, 2, 1)
            ok, witness = sm.lusztig_member(psi(sys, expr))
            assert ok, (beta, witness)

    def test_lusztig_rejects_overdivided_vector(self):
        from shuffle_forge.scalars import quantum_factorial
        from shuffle_forge.shuffle import FEScale
        beta = root_by_name(C2, "[1]")
        base = tilde_root_vector(beta, 1, tilde_parts(beta, 0))
        bad = FEScale(RV_ONE / RationalV.from_laurent(
            quantum_factorial(2, beta.vbeta_exp)), base)
        ok, witness = sm.lusztig_member(psi(C2, bad))
        assert not ok
        assert witness["condition"] in ("coefficients",
                                        "c-tilde divisibility")

    def test_rtt_accepts_normalized_vectors(self):
        for beta in positive_roots(C2):
            img = psi(C2, rtt_root_vector(beta, 0, 1))
            ok, witness = sm.rtt_member(img)
            assert ok, (beta, witness)

    def test_rtt_rejects_plain_tilde(self):
        beta = root_by_name(C2, "[1]")
        ok, witness = sm.rtt_member(tilde_image(C2, beta, 0))
        assert not ok
        assert witness["condition"] == "prefactor"


class TestDimensionReport:
    def test_c2_small(self):
        rows = sm.dimension_report(C2, (1, 1), range(0, 3), (-1, 1))
        for row in rows:
            assert row["pbwd"] == row["rank"]
            assert row["contained"]
            assert row["ok"], row

    def test_empty_degree_row(self):
        rows = sm.dimension_report(C2, (1, 0), [99], (0, 0))
        assert rows == [{"degree": 99, "pbwd": 0, "rank": 0, "wheel_dim": 0,
                         "contained": True, "ok": True}]
