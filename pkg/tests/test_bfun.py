"""Invariant operators, Cayley identities, P(s) recovery, the theorem
catalog, renormalization, and the several-variables formulas."""

from fractions import Fraction
from itertools import product

import pytest

from bsato.bfun import (
    NotCollinear,
    ScalarDependsOnTuple,
    TupleF,
    build_Dd,
    build_Ddual,
    catalog_bfunction,
    cayley_scalar_poly,
    collinearity_scalar,
    default_sample_plan,
    recover_Pf,
    roots_divide,
    several_variables_scalar,
    shift_to_bZ,
    verify_capelli_equals_Ddual,
    verify_cayley,
    verify_fourier_Dd,
    verify_several_variables,
)
from bsato.exact import FactoredPolynomial, MultiPoly
from bsato.weyl import SpaceDescriptor, weyl_apply


def V(name):
    return MultiPoly.variable(name)


class TestBuildOperators:
    def test_skew3_Dd_normal_form(self):
        # D_d over skew(3): members are the entries, so
        # D_d = sum x_e d_e + 3 after normal ordering
        sp = SpaceDescriptor.skew(1)
        t = TupleF.for_space(sp)
        A = sp.algebra
        euler = A.zero()
        for i in range(3):
            euler = euler + A.x(i) * A.d(i)
        assert build_Dd(t) == euler + 3

    def test_matrix32_summand_count(self):
        t = TupleF.for_space(SpaceDescriptor.matrix(3, 2))
        assert len(t) == 3
        assert t.labels() == [(1, 2), (1, 3), (2, 3)]

    def test_matrix22_Ddual(self):
        # single minor: D_dual = d * d^* stays in x-then-d shape: 4 terms
        sp = SpaceDescriptor.matrix(2, 2)
        t = TupleF.for_space(sp)
        D = build_Ddual(t)
        assert len(D.terms) == 4
        assert D.order() == 2

    def test_Dd_minus_Ddual_correction(self):
        # the normal-ordering correction is computed, never asserted to a
        # golden value; sanity: it has strictly smaller order
        sp = SpaceDescriptor.matrix(2, 2)
        t = TupleF.for_space(sp)
        diff = build_Dd(t) - build_Ddual(t)
        assert diff.order() < build_Dd(t).order()


class TestCollinearity:
    def test_scalar(self):
        f = V("x") ** 2 + V("y")
        assert collinearity_scalar(3 * f, f) == 3

    def test_zero(self):
        f = V("x")
        assert collinearity_scalar(MultiPoly.zero(), f) == 0

    def test_not_collinear(self):
        with pytest.raises(NotCollinear):
            collinearity_scalar(V("x") + 1, V("x"))


class TestCayley:
    def test_matrix22_power1(self):
        sp = SpaceDescriptor.matrix(2, 2)
        rep = verify_cayley(TupleF.for_space(sp), a_max=1)
        assert rep.passed
        # the a=1 scalar is s(s+1) at s=1, i.e. 2
        assert cayley_scalar_poly(sp).expand("s")(1) == 2

    def test_matrix33_power2_scalar(self):
        sp = SpaceDescriptor.matrix(3, 3)
        assert cayley_scalar_poly(sp).expand("s")(2) == 24  # 2*3*4

    def test_skew5_power1_scalar(self):
        sp = SpaceDescriptor.skew(2)
        assert cayley_scalar_poly(sp).expand("s")(1) == 3  # s(s+2) at 1

    @pytest.mark.parametrize("space", [
        SpaceDescriptor.matrix(2, 2), SpaceDescriptor.matrix(3, 2),
        SpaceDescriptor.matrix(3, 3), SpaceDescriptor.skew(1),
        SpaceDescriptor.skew(2)])
    def test_pass_through_power_4(self, space):
        assert verify_cayley(TupleF.for_space(space), a_max=4).passed


class TestRecoverPf:
    def test_matrix32(self):
        got = recover_Pf(TupleF.for_space(SpaceDescriptor.matrix(3, 2)))
        assert got == FactoredPolynomial.from_roots([-2, -3])

    def test_matrix22(self):
        got = recover_Pf(TupleF.for_space(SpaceDescriptor.matrix(2, 2)))
        assert got == FactoredPolynomial.from_roots([-1, -2])

    def test_skew3(self):
        # direct check: D_d . x23^a = (a+3) x23^a, so P(s) = s+3
        got = recover_Pf(TupleF.for_space(SpaceDescriptor.skew(1)))
        assert got == FactoredPolynomial.from_roots([-3])

    def test_sample_plan_degrees(self):
        t = TupleF.for_space(SpaceDescriptor.matrix(3, 2))
        degrees = {sum(e) for e in default_sample_plan(t)}
        assert len(degrees) >= t.degree() + 3

    def test_not_multiplicity_free_tuple_raises(self):
        # (x11, x12) on matrix(2,2) is not the full minor tuple; the
        # invariance breaks and the scalar depends on the split
        sp = SpaceDescriptor.matrix(2, 2)
        t = TupleF(sp, [("a", V("x[1,1]")), ("b", V("x[1,2]"))])
        with pytest.raises((NotCollinear, ScalarDependsOnTuple, ValueError)):
            recover_Pf(t)


class TestCatalog:
    def test_matrix32(self):
        assert catalog_bfunction(SpaceDescriptor.matrix(3, 2)) \
            == FactoredPolynomial.from_roots([-2, -3])

    def test_skew5(self):
        assert catalog_bfunction(SpaceDescriptor.skew(2)) \
            == FactoredPolynomial.from_roots([-3, -5])

    def test_matrix44(self):
        assert catalog_bfunction(SpaceDescriptor.matrix(4, 4)) \
            == FactoredPolynomial.from_roots([-1, -2, -3, -4])

    def test_recover_matches_catalog_small(self):
        for space in [SpaceDescriptor.matrix(2, 2),
                      SpaceDescriptor.matrix(3, 2),
                      SpaceDescriptor.skew(1)]:
            t = TupleF.for_space(space)
            assert recover_Pf(t) == catalog_bfunction(space)


class TestShiftToBZ:
    def test_matrix32(self):
        sp = SpaceDescriptor.matrix(3, 2)
        got = shift_to_bZ(catalog_bfunction(sp), sp)
        assert got == FactoredPolynomial.from_roots([0, -1])

    def test_skew5(self):
        sp = SpaceDescriptor.skew(2)
        got = shift_to_bZ(catalog_bfunction(sp), sp)
        assert got == FactoredPolynomial.from_roots([0, -2])

    def test_matrix22(self):
        sp = SpaceDescriptor.matrix(2, 2)
        got = shift_to_bZ(catalog_bfunction(sp), sp)
        assert got == FactoredPolynomial.from_roots([0, -1])

    def test_independent_of_m(self):
        # the renormalized b-function depends only on n
        for n in (1, 2, 3):
            forms = {shift_to_bZ(catalog_bfunction(SpaceDescriptor.matrix(m, n)),
                                 SpaceDescriptor.matrix(m, n)).to_text()
                     for m in range(n, n + 4)}
            assert len(forms) == 1

    def test_divisibility_chain(self):
        for m, n in [(3, 2), (4, 2), (4, 3), (5, 3)]:
            big_sp = SpaceDescriptor.matrix(m, n)
            small_sp = SpaceDescriptor.matrix(m - 1, n - 1)
            big = shift_to_bZ(catalog_bfunction(big_sp), big_sp)
            small = shift_to_bZ(catalog_bfunction(small_sp), small_sp)
            assert roots_divide(small, big)
        for n in (2, 3):
            big_sp = SpaceDescriptor.skew(n)
            small_sp = SpaceDescriptor.skew(n - 1)
            big = shift_to_bZ(catalog_bfunction(big_sp), big_sp)
            small = shift_to_bZ(catalog_bfunction(small_sp), small_sp)
            assert roots_divide(small, big)


class TestCapelliEqualsDdual:
    @pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (3, 2)])
    def test_small(self, m, n):
        assert verify_capelli_equals_Ddual(SpaceDescriptor.matrix(m, n)).passed


class TestFourierDd:
    @pytest.mark.parametrize("space", [
        SpaceDescriptor.matrix(2, 2), SpaceDescriptor.matrix(3, 2),
        SpaceDescriptor.skew(1), SpaceDescriptor.skew(2)])
    def test_small(self, space):
        assert verify_fourier_Dd(space).passed


class TestSeveralVariables:
    def test_matrix21_example(self):
        # d = (x11, x21); i = 0, a = (2,1): d11 . x11^3 x21 = 3 x11^2 x21
        sp = SpaceDescriptor.matrix(2, 1)
        t = TupleF.for_space(sp)
        assert several_variables_scalar(sp, (2, 1), 0) == 3
        assert verify_several_variables(t, 0, (2, 1)).passed

    def test_skew3_example(self):
        sp = SpaceDescriptor.skew(1)
        t = TupleF.for_space(sp)
        assert several_variables_scalar(sp, (1, 1, 0), 0) == 2
        assert verify_several_variables(t, 0, (1, 1, 0)).passed

    def test_skew5_example(self):
        sp = SpaceDescriptor.skew(2)
        t = TupleF.for_space(sp)
        assert several_variables_scalar(sp, (1, 0, 0, 0, 0), 0) == 8
        assert verify_several_variables(t, 0, (1, 0, 0, 0, 0)).passed

    def test_wrong_matrix_shape_rejected(self):
        t = TupleF.for_space(SpaceDescriptor.matrix(4, 2))
        with pytest.raises(ValueError):
            verify_several_variables(t, 0, (1, 0, 0, 0, 0, 0))

    @pytest.mark.parametrize("space", [
        SpaceDescriptor.matrix(2, 1), SpaceDescriptor.matrix(3, 2),
        SpaceDescriptor.skew(1), SpaceDescriptor.skew(2)])
    def test_sweep_degree_2(self, space):
        t = TupleF.for_space(space)
        r = len(t)
        for e in product(range(3), repeat=r):
            if sum(e) > 2:
                continue
            for i in range(r):
                assert verify_several_variables(t, i, e).passed, (space, e, i)
