"""Zeta functions, pole sets, the strong monodromy product test, and the
blow-up pullback."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from bsato.exact import FactoredPolynomial, MultiPoly, var
from bsato.weyl import SpaceDescriptor
from bsato.bfun import catalog_bfunction
from bsato.zeta import (
    ResolutionData,
    express_in_ideal,
    pole_set,
    resolution_for,
    smc_check,
    verify_pfaffian_blowup,
    zeta_of,
)


class TestResolutionFor:
    def test_matrix32(self):
        data = resolution_for(SpaceDescriptor.matrix(3, 2))
        assert [(a, k + 1) for _, a, k in data.components] == [(2, 6), (1, 2)]

    def test_skew5(self):
        data = resolution_for(SpaceDescriptor.skew(2))
        assert [Fraction(k + 1, a) for _, a, k in data.components] == [5, 3]

    def test_matrix22(self):
        data = resolution_for(SpaceDescriptor.matrix(2, 2))
        assert [(a, k + 1) for _, a, k in data.components] == [(2, 4), (1, 1)]

    def test_json_round_trip(self):
        data = resolution_for(SpaceDescriptor.matrix(4, 3))
        again = ResolutionData.from_json(data.to_json())
        assert [(a, k) for _, a, k in again.components] == \
            [(a, k) for _, a, k in data.components]

    def test_chi_override_round_trip(self):
        data = ResolutionData(((0, 2, 5), (1, 1, 1)),
                              {frozenset(): 1, frozenset({0, 1}): -2})
        again = ResolutionData.from_json(data.to_json())
        assert again.chi == data.chi


class TestZetaOf:
    def test_single_component(self):
        data = ResolutionData(((0, 2, 5),))
        z = zeta_of(data)
        s = MultiPoly.variable("s")
        chi_empty = MultiPoly.variable(var("chi[]"))
        chi_0 = MultiPoly.variable(var("chi[0]"))
        assert z.value.numerator == chi_empty * (2 * s + 6) + chi_0
        assert z.value.denominator == 2 * s + 6

    def test_empty_resolution(self):
        z = zeta_of(ResolutionData(()))
        assert z.value.denominator == MultiPoly.const(1)
        assert z.value.numerator == MultiPoly.variable(var("chi[]"))

    def test_matrix32_denominator(self):
        z = zeta_of(resolution_for(SpaceDescriptor.matrix(3, 2)))
        s = MultiPoly.variable("s")
        assert z.value.denominator == (2 * s + 6) * (s + 2)

    def test_linear_in_each_chi(self):
        z = zeta_of(resolution_for(SpaceDescriptor.matrix(3, 2)))
        for v in z.value.numerator.variables():
            if v.name.startswith("chi"):
                assert z.value.numerator.degree_in(v) == 1


class TestPoleSet:
    def test_matrix42(self):
        assert pole_set(resolution_for(SpaceDescriptor.matrix(4, 2))) == [-4, -3]

    def test_skew7(self):
        assert pole_set(resolution_for(SpaceDescriptor.skew(3))) == [-7, -5, -3]

    def test_matrix22(self):
        assert pole_set(resolution_for(SpaceDescriptor.matrix(2, 2))) == [-2, -1]

    def test_matrix_sweep(self):
        for n in range(1, 7):
            for m in range(n, 7):
                got = pole_set(resolution_for(SpaceDescriptor.matrix(m, n)))
                assert got == [Fraction(-m + i) for i in range(n)]

    def test_skew_sweep(self):
        for n in range(1, 7):
            got = pole_set(resolution_for(SpaceDescriptor.skew(n)))
            assert got == [Fraction(-(2 * i + 3)) for i in reversed(range(n))]


class TestSMC:
    def test_matrix32(self):
        sp = SpaceDescriptor.matrix(3, 2)
        rep = smc_check(catalog_bfunction(sp), zeta_of(resolution_for(sp)))
        assert rep.passed

    def test_skew5(self):
        sp = SpaceDescriptor.skew(2)
        rep = smc_check(catalog_bfunction(sp), zeta_of(resolution_for(sp)))
        assert rep.passed

    def test_designed_failure_with_witness(self):
        # a pole at -9/2 that the supplied b misses: fail, witness 2*s+9
        data = ResolutionData(((0, 2, 8),))  # pole -(8+1)/2 = -9/2
        rep = smc_check(FactoredPolynomial.from_roots([-2]), zeta_of(data))
        assert not rep.passed
        witnesses = [c.witness for c in rep.checks if c.witness]
        assert any("2*s+9" in w for w in witnesses)

    def test_full_sweep(self):
        for n in range(1, 7):
            for m in range(n, 7):
                sp = SpaceDescriptor.matrix(m, n)
                assert smc_check(catalog_bfunction(sp),
                                 zeta_of(resolution_for(sp))).passed
        for n in range(1, 7):
            sp = SpaceDescriptor.skew(n)
            assert smc_check(catalog_bfunction(sp),
                             zeta_of(resolution_for(sp))).passed

    def test_chi_values_do_not_flip_pass(self):
        rng = random.Random(20260809)
        sp = SpaceDescriptor.matrix(4, 2)
        data = resolution_for(sp)
        labels = data.labels()
        for _ in range(25):
            chi = {}
            for size in range(len(labels) + 1):
                for subset in combinations(labels, size):
                    chi[frozenset(subset)] = rng.randint(-5, 5)
            override = ResolutionData(data.components, chi)
            assert smc_check(catalog_bfunction(sp), zeta_of(override)).passed


class TestMembership:
    def test_simple_membership(self):
        x, y = MultiPoly.variable("mx"), MultiPoly.variable("my")
        combo = express_in_ideal(x * x + x * y, [x], 1)
        assert combo is not None
        assert combo[0] * x == x * x + x * y

    def test_non_membership(self):
        x, y = MultiPoly.variable("mx"), MultiPoly.variable("my")
        assert express_in_ideal(y, [x], 2) is None


class TestBlowup:
    def test_n1_trivial_chart(self):
        assert verify_pfaffian_blowup(1).passed

    def test_n2(self):
        assert verify_pfaffian_blowup(2).passed
