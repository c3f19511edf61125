"""Sparse multivariate polynomials over exact scalar rings."""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shuffle_forge import polyvars as pv
from shuffle_forge.scalars import RationalV, RV_ONE, NotDivisible


ONE = Fraction(1)


def _poly_strategy(nvars=3, max_exp=3):
    codes = [pv.xvar(i, 1) for i in range(1, nvars + 1)]

    def build(terms):
        out = {}
        for exps, c in terms:
            key = tuple(x for v, e in zip(codes, exps) if e
                        for x in (v, e))
            if c:
                out[key] = out.get(key, Fraction(0)) + Fraction(c)
        return {k: c for k, c in out.items() if c}

    term = st.tuples(st.tuples(*[st.integers(0, max_exp)] * nvars),
                     st.integers(-9, 9))
    return st.lists(term, max_size=5).map(build)


polys = _poly_strategy()
polys_nonzero = polys.filter(bool)


class TestVarcodes:
    def test_round_trip(self):
        for code in (pv.xvar(3, 2), pv.wvar(1, 4), pv.wpvar(2, 0),
                     pv.zvar(5, 1), pv.uvar(0)):
            kind, a, b = pv.var_decode(code)
            assert pv.varcode(kind, a, b) == code

    def test_distinct(self):
        codes = [pv.xvar(1, 1), pv.xvar(1, 2), pv.xvar(2, 1),
                 pv.wvar(1, 1), pv.wpvar(1, 1), pv.zvar(1, 1), pv.uvar(1)]
        assert len(set(codes)) == len(codes)

    def test_names(self):
        assert pv.var_name(pv.xvar(2, 3)) == "x[2][3]"
        assert pv.var_name(pv.uvar(0)) == "u[0]"

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            pv.varcode(1, 5000)


class TestRingOps:
    @given(polys, polys, polys)
    def test_ring_axioms(self, a, b, c):
        assert pv.p_add(a, b) == pv.p_add(b, a)
        assert pv.p_mul(a, b) == pv.p_mul(b, a)
        assert pv.p_mul(pv.p_mul(a, b), c) == pv.p_mul(a, pv.p_mul(b, c))
        assert pv.p_mul(a, pv.p_add(b, c)) == \
            pv.p_add(pv.p_mul(a, b), pv.p_mul(a, c))
        assert pv.p_sub(a, a) == pv.p_zero()

    @given(polys)
    def test_pow_matches_repeated_mul(self, a):
        acc = pv.p_const(ONE)
        for n in range(4):
            assert pv.p_pow(a, n, ONE) == acc
            acc = pv.p_mul(acc, a)

    def test_monomial_sorts_and_drops(self):
        x1, x2 = pv.xvar(1, 1), pv.xvar(2, 1)
        m = pv.p_monomial({x2: 2, x1: 1, pv.xvar(3, 1): 0}, ONE)
        assert m == {(x1, 1, x2, 2): ONE}

    def test_key_helpers(self):
        x1, x2 = pv.xvar(1, 1), pv.xvar(2, 1)
        key = (x1, 2, x2, 3)
        assert pv.key_exp(key, x1) == 2
        assert pv.key_exp(key, pv.xvar(3, 1)) == 0
        assert pv.p_total_degree(key) == 5

    @given(polys_nonzero)
    def test_min_max_exp(self, a):
        x1 = pv.xvar(1, 1)
        lo, hi = pv.p_min_exp(a, x1), pv.p_max_exp(a, x1)
        assert lo <= hi
        assert any(pv.key_exp(k, x1) == lo for k in a)
        assert any(pv.key_exp(k, x1) == hi for k in a)


class TestSubstitution:
    def test_is_ring_homomorphism(self):
        rng = random.Random(7)
        x1, x2, x3 = (pv.xvar(i, 1) for i in range(1, 4))
        w = pv.wvar(1, 0)
        assignment = {
            x1: pv.p_add(pv.p_var(w, ONE), pv.p_const(Fraction(2))),
            x2: pv.p_var(w, Fraction(-1, 3), exp=2),
        }
        for _ in range(20):
            a = {}
            b = {}
            for tgt in (a, b):
                for _ in range(3):
                    key = tuple(x for v in sorted(
                        rng.sample([x1, x2, x3], rng.randint(1, 2)))
                        for x in (v, rng.randint(1, 2)))
                    tgt[key] = Fraction(rng.randint(1, 5))
            lhs = pv.p_substitute(pv.p_mul(a, b), assignment, ONE)
            rhs = pv.p_mul(pv.p_substitute(a, assignment, ONE),
                           pv.p_substitute(b, assignment, ONE))
            assert lhs == rhs

    def test_negative_exponent_monomial_image(self):
        x1 = pv.xvar(1, 1)
        w = pv.wvar(1, 0)
        a = {(x1, -2): RV_ONE}
        img = pv.p_substitute(a, {x1: {(w, 1): RationalV.v_power(3)}}, RV_ONE)
        assert img == {(w, -2): RationalV.v_power(-6)}

    def test_negative_exponent_rejects_sums(self):
        x1 = pv.xvar(1, 1)
        w = pv.wvar(1, 0)
        image = pv.p_add(pv.p_var(w, ONE), pv.p_const(ONE))
        with pytest.raises(ValueError):
            pv.p_substitute({(x1, -1): ONE}, {x1: image}, ONE)

    def test_unassigned_variables_pass_through(self):
        x1, x2 = pv.xvar(1, 1), pv.xvar(2, 1)
        a = {(x1, 1, x2, 1): ONE}
        out = pv.p_substitute(a, {x1: pv.p_const(Fraction(3))}, ONE)
        assert out == {(x2, 1): Fraction(3)}


class TestSymmetrize:
    def test_output_is_symmetric(self):
        x11, x12, x21 = pv.xvar(1, 1), pv.xvar(1, 2), pv.xvar(2, 1)
        a = {(x11, 2, x21, 1): ONE, (x12, 1): Fraction(2)}
        sym = pv.p_symmetrize(a, (2, 1))
        assert pv.p_is_symmetric(sym, (2, 1))

    def test_symmetric_input_scales_by_group_order(self):
        x11, x12 = pv.xvar(1, 1), pv.xvar(1, 2)
        a = pv.p_add({(x11, 1): ONE}, {(x12, 1): ONE})
        assert pv.p_symmetrize(a, (2,)) == pv.p_scale(a, Fraction(2))

    def test_group_order(self):
        # constant symmetrized over (2, 2) picks up 2! * 2! copies
        out = pv.p_symmetrize(pv.p_const(ONE), (2, 2))
        assert out == pv.p_const(Fraction(4))

    @given(_poly_strategy(nvars=2))
    def test_alias(self, a):
        # rename vars to two copies of color 1
        ren = pv.p_rename(a, {pv.xvar(2, 1): pv.xvar(1, 2)})
        assert pv.symmetrize(ren, (2,)) == pv.p_symmetrize(ren, (2,))


class TestExactDivision:
    @given(polys, polys_nonzero)
    def test_round_trip(self, a, b):
        assert pv.exact_div(pv.p_mul(a, b), b, ONE) == a

    def test_rejects_non_factor(self):
        x1, x2 = pv.xvar(1, 1), pv.xvar(2, 1)
        f = pv.p_add(pv.p_var(x1, ONE), pv.p_const(ONE))
        g = pv.p_add(pv.p_var(x2, ONE), pv.p_const(ONE))
        with pytest.raises((NotDivisible, ArithmeticError)):
            pv.exact_div(f, g, ONE)

    def test_rationalv_scalars(self):
        x1, x2 = pv.xvar(1, 1), pv.xvar(2, 1)
        form = pv.p_sub(pv.p_var(x1, RV_ONE),
                        pv.p_scale(pv.p_var(x2, RV_ONE),
                                   RationalV.v_power(-2)))
        prod = pv.p_mul(form, form)
        assert pv.exact_div(prod, form, RV_ONE) == form

    def test_divide_by_forms(self):
        x1, x2 = pv.xvar(1, 1), pv.xvar(2, 1)
        f1 = pv.LinearForm(x1, x2, coeff=RationalV.v_power(2))
        f2 = pv.LinearForm(x1, x2, coeff=RationalV.v_power(-2))
        prod = pv.p_mul(f1.poly(RV_ONE), f2.poly(RV_ONE))
        assert pv.divide_by_forms(prod, [f1, f2], RV_ONE) == \
            pv.p_const(RV_ONE)

    def test_additive_form(self):
        w, wp = pv.wvar(1, 0), pv.wpvar(1, 0)
        form = pv.LinearForm(w, wp, shift=Fraction(3))
        assert form.poly(ONE) == {(w, 1): ONE, (wp, 1): -ONE,
                                  (): Fraction(-3)}

    def test_degenerate_form_rejected(self):
        with pytest.raises(ValueError):
            pv.LinearForm(pv.wvar(1, 0), pv.wvar(1, 0))


class TestSerialization:
    def test_sorted_and_readable(self):
        x1, x2 = pv.xvar(1, 1), pv.xvar(2, 1)
        a = {(x2, 1): Fraction(2), (x1, 3): ONE}
        rows = pv.p_serialize(a)
        assert rows == [[[["x[1][1]", 3]], "Fraction(1, 1)"],
                        [[["x[2][1]", 1]], "Fraction(2, 1)"]]


def test_backend_reported():
    assert pv.KERNEL_BACKEND in ("cython", "pure")
