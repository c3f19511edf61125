"""Symmetrized shuffle product, wheel conditions, free-expression expansion."""

import random

import pytest

from shuffle_forge.roots import RootSystem
from shuffle_forge.scalars import RationalV, RV_ONE
from shuffle_forge import polyvars as pv
from shuffle_forge.shuffle import (
    ShuffleElement, unit, zero, generator, star, zeta, wheel_check,
    FELeaf, FEProd, FESum, FEScale, FEComm, e_leaf,
    defining_relation, serre_relation, psi, proportional_monomial)


C2 = RootSystem("C", 2)
C3 = RootSystem("C", 3)
D4 = RootSystem("D", 4)
SYSTEMS = (C2, C3, D4)


def _random_element(sys, rng, max_factors=3):
    acc = unit(sys)
    for _ in range(rng.randint(1, max_factors)):
        acc = star(acc, generator(sys, rng.choice(list(sys.colors)),
                                  rng.randint(-2, 2)))
    return acc


class TestBasics:
    def test_unit_and_zero(self):
        assert unit(C2).k == (0, 0)
        assert not unit(C2).is_zero()
        assert zero(C2, (1, 0)).is_zero()

    def test_generator_shape(self):
        g = generator(C2, 1, -2)
        assert g.k == (1, 0)
        assert g.num == {(pv.xvar(1, 1), -2): RV_ONE}
        assert generator(C2, 2, 0).num == {(): RV_ONE}

    def test_star_degrees_add(self):
        p = star(generator(C2, 1, 0), generator(C2, 2, 1))
        assert p.k == (1, 1)

    def test_unit_is_identity(self):
        f = star(generator(C2, 1, 1), generator(C2, 2, 0))
        assert star(unit(C2), f) == f
        assert star(f, unit(C2)) == f

    def test_zero_absorbs(self):
        assert star(zero(C2, (1, 0)), generator(C2, 2, 0)).is_zero()

    def test_mismatched_systems_rejected(self):
        with pytest.raises(ValueError):
            star(generator(C2, 1, 0), generator(C3, 1, 0))

    def test_zeta_values(self):
        # zeta_12(z) = (z - v^2)/(z - 1) since (alpha_1, alpha_2) = -2
        assert zeta(C2, 1, 2) == (RationalV.v_power(2), RV_ONE)
        assert zeta(C2, 2, 2) == (RationalV.v_power(-4), RV_ONE)
        assert zeta(D4, 3, 4) == (RV_ONE, RV_ONE)


class TestProductLaws:
    def test_associativity_random(self):
        rng = random.Random(11)
        for sys in SYSTEMS:
            for _ in range(6):
                a = generator(sys, rng.choice(list(sys.colors)),
                              rng.randint(-1, 1))
                b = generator(sys, rng.choice(list(sys.colors)),
                              rng.randint(-1, 1))
                c = generator(sys, rng.choice(list(sys.colors)),
                              rng.randint(-1, 1))
                assert star(star(a, b), c) == star(a, star(b, c))

    def test_bilinearity(self):
        a = generator(C2, 1, 0)
        b = generator(C2, 1, 1)
        c = generator(C2, 2, 0)
        lhs = star(a + b.scale(RationalV.v_power(3)), c)
        rhs = star(a, c) + star(b, c).scale(RationalV.v_power(3))
        assert lhs == rhs

    def test_coset_and_full_modes_agree(self):
        rng = random.Random(5)
        for sys in (C2, D4):
            a = _random_element(sys, rng)
            b = _random_element(sys, rng)
            assert star(a, b, mode="coset") == star(a, b, mode="full")

    def test_same_color_product_symmetric_form(self):
        # e_{1,1} * e_{1,0} lives in two copies of x_1 and is symmetric
        p = star(generator(C2, 1, 1), generator(C2, 1, 0))
        assert pv.p_is_symmetric(p.num, p.k)

    def test_results_are_symmetric(self):
        rng = random.Random(3)
        f = _random_element(C2, rng, max_factors=4)
        assert pv.p_is_symmetric(f.num, f.k)


class TestRelations:
    def test_defining_relations_vanish(self):
        for sys in SYSTEMS:
            for i in sys.colors:
                for j in sys.colors:
                    if i == j:
                        continue
                    for r, s in ((0, 0), (1, -1), (-2, 2)):
                        rel = defining_relation(sys, i, j, r, s)
                        assert psi(sys, rel).is_zero(), (sys, i, j, r, s)

    def test_serre_relations_vanish(self):
        cases = [(C2, 1, 2, (0, 1, -1)), (C2, 2, 1, (0, 1)),
                 (C3, 2, 3, (0, 1, 2)), (C3, 3, 2, (0, -1)),
                 (D4, 2, 4, (0, 1)), (D4, 4, 2, (1, -1))]
        for sys, i, j, modes, in cases:
            rel = serre_relation(sys, i, j, list(modes), 0)
            assert psi(sys, rel).is_zero(), (sys, i, j, modes)

    def test_serre_arity_checked(self):
        with pytest.raises(ValueError):
            serre_relation(C2, 1, 2, [0], 0)
        with pytest.raises(ValueError):
            serre_relation(C2, 1, 1, [0, 0], 0)

    def test_orthogonal_colors_commute(self):
        # colors 3 and 4 in D4 have a_34 = 0
        a = generator(D4, 3, 1)
        b = generator(D4, 4, -1)
        assert star(a, b) == star(b, a)


class TestWheelConditions:
    def test_products_satisfy_wheels(self):
        rng = random.Random(17)
        for sys in (C2, D4):
            f = _random_element(sys, rng, max_factors=4)
            ok, witness = wheel_check(f)
            assert ok, witness

    def test_violating_element_detected(self):
        # degree (1, 2) admits a wheel pattern with two copies of color 2;
        # a bare monomial does not vanish under it
        num = {(pv.xvar(1, 1), 1): RV_ONE}
        bad = ShuffleElement(C2, (1, 2), num)
        ok, witness = wheel_check(bad)
        assert not ok
        assert witness["i"] == 2 and witness["j"] == 1

    def test_strict_mode_passes_on_valid_product(self):
        star(generator(C2, 1, 0), generator(C2, 2, 0), strict=True)


class TestFreeExpressions:
    def test_leaf_and_product_expand(self):
        expr = FEProd([FELeaf(1, 2), FELeaf(2, -1)])
        assert expr.expand(RV_ONE) == {((1, 2), (2, -1)): RV_ONE}

    def test_sum_cancellation(self):
        a = FEProd([FELeaf(1, 0)])
        expr = FESum([a, FEScale(RationalV.from_int(-1), a)])
        assert expr.expand(RV_ONE) == {}

    def test_commutator_expand(self):
        expr = FEComm(FELeaf(1, 0), FELeaf(2, 0),
                      lam=RationalV.v_power(-1))
        words = expr.expand(RV_ONE)
        assert words[((1, 0), (2, 0))] == RV_ONE
        assert words[((2, 0), (1, 0))] == -RationalV.v_power(-1)

    def test_operator_sugar(self):
        expr = e_leaf(1, 0) * e_leaf(2, 0) + e_leaf(2, 0) * e_leaf(1, 0)
        assert len(expr.expand(RV_ONE)) == 2

    def test_psi_is_multiplicative(self):
        expr = FEProd([FELeaf(1, 1), FELeaf(2, 0), FELeaf(1, -1)])
        direct = star(star(generator(C2, 1, 1), generator(C2, 2, 0)),
                      generator(C2, 1, -1))
        assert psi(C2, expr) == direct

    def test_psi_of_empty_sum_is_zero(self):
        assert psi(C2, FESum([])).is_zero()


class TestProportionality:
    def test_detects_monomial_ratio(self):
        from fractions import Fraction
        f = star(generator(C2, 1, 0), generator(C2, 2, 1))
        g = f.scale(RationalV.v_power(-3) * RationalV.from_int(2))
        assert proportional_monomial(g, f) == (Fraction(2), -3)

    def test_rejects_non_proportional(self):
        f = star(generator(C2, 1, 0), generator(C2, 2, 0))
        g = star(generator(C2, 1, 1), generator(C2, 2, 0))
        assert proportional_monomial(f, g) is None

    def test_zero_conventions(self):
        z = zero(C2, (1, 1))
        f = star(generator(C2, 1, 0), generator(C2, 2, 0))
        assert proportional_monomial(z, z) == (1, 0)
        assert proportional_monomial(z, f) is None
