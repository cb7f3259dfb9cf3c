"""Minors, Pfaffians, polarization, weights, dimensions, Pluecker and
localization identities.

Independent oracles: the Pfaffian is cross-checked against a sum over
perfect matchings with the crossing-number sign, and the Weyl dimension
formula against brute-force enumeration of semistandard Young tableaux.
"""

from fractions import Fraction
from itertools import combinations

import pytest

from bsato.exact import MultiPoly, var
from bsato.genmat import (
    BadPartition,
    cauchy_check,
    doubled_partition,
    highest_weight_vector,
    minor,
    partitions_of,
    pfaffian,
    pfaffian_of_rows,
    plucker_coordinate,
    polarization,
    schur_dim,
    star,
    submatrix_det,
    verify_localization_matrix,
    verify_localization_skew,
    verify_plucker_relation,
    weight_of,
)
from bsato.weyl import BadIndexSet, SpaceDescriptor, commutator, weyl_apply


def V(name):
    return MultiPoly.variable(name)


def perfect_matchings(items):
    items = list(items)
    if not items:
        yield ()
        return
    first = items[0]
    for k in range(1, len(items)):
        partner = items[k]
        rest = items[1:k] + items[k + 1:]
        for sub in perfect_matchings(rest):
            yield ((first, partner),) + sub


def matching_sign(pairs):
    """(-1)^(number of crossings) for a matching of sorted indices."""
    crossings = 0
    for (a, b), (c, d) in combinations(pairs, 2):
        lo, hi = (a, b), (c, d)
        if lo[0] > hi[0]:
            lo, hi = hi, lo
        if lo[0] < hi[0] < lo[1] < hi[1]:
            crossings += 1
    return -1 if crossings % 2 else 1


def pfaffian_oracle(space, rows):
    total = MultiPoly.zero()
    for matching in perfect_matchings(sorted(rows)):
        term = MultiPoly.const(matching_sign(matching))
        for a, b in matching:
            term = term * space.entry(a, b)
        total = total + term
    return total


def ssyt_count(lam, N):
    """Number of semistandard Young tableaux of shape lam, entries <= N."""
    lam = tuple(lam)
    rows = len(lam)

    def fill(r, c, prev_row, cur_row):
        if r == rows:
            return 1
        if c == lam[r]:
            return fill(r + 1, 0, cur_row, [])
        lo = cur_row[-1] if c else 1
        hi = N
        total = 0
        for val in range(lo, hi + 1):
            if prev_row is not None and c < len(prev_row) and val <= prev_row[c]:
                continue
            total += fill(r, c + 1, prev_row, cur_row + [val])
        return total

    if not lam:
        return 1
    return fill(0, 0, None, [])


class TestMinor:
    def test_2x2_full(self):
        sp = SpaceDescriptor.matrix(2, 2)
        assert minor(sp, [1, 2]) == (V("x[1,1]") * V("x[2,2]")
                                     - V("x[1,2]") * V("x[2,1]"))

    def test_3x2_rows_1_3(self):
        sp = SpaceDescriptor.matrix(3, 2)
        assert minor(sp, [1, 3]) == (V("x[1,1]") * V("x[3,2]")
                                     - V("x[1,2]") * V("x[3,1]"))

    def test_3x3_leibniz(self):
        sp = SpaceDescriptor.matrix(3, 3)
        d = minor(sp, [1, 2, 3])
        assert len(d.terms) == 6
        diag = tuple((var("x[%d,%d]" % (i, i)), 1) for i in range(1, 4))
        assert d.coefficient(diag) == 1

    def test_homogeneous(self):
        sp = SpaceDescriptor.matrix(4, 3)
        d = minor(sp, [1, 2, 4])
        from bsato.exact import _mono_degree
        assert all(_mono_degree(m) == 3 for m in d.terms)

    def test_bad_index_set(self):
        sp = SpaceDescriptor.matrix(3, 2)
        with pytest.raises(BadIndexSet):
            minor(sp, [1, 4])
        with pytest.raises(BadIndexSet):
            minor(sp, [1, 2, 3])


class TestPfaffian:
    def test_skew3(self):
        sp = SpaceDescriptor.skew(1)
        assert pfaffian(sp, 1) == V("x[2,3]")
        assert pfaffian(sp, 3) == V("x[1,2]")

    def test_skew5_delete_5(self):
        sp = SpaceDescriptor.skew(2)
        expected = (V("x[1,2]") * V("x[3,4]")
                    - V("x[1,3]") * V("x[2,4]")
                    + V("x[1,4]") * V("x[2,3]"))
        assert pfaffian(sp, 5) == expected

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_against_matching_oracle(self, n):
        sp = SpaceDescriptor.skew(n)
        for i in range(1, 2 * n + 2):
            rows = [j for j in range(1, 2 * n + 2) if j != i]
            assert pfaffian(sp, i) == pfaffian_oracle(sp, rows)

    def test_pfaffian_squared_is_det(self):
        sp = SpaceDescriptor.skew(2)
        rows = (1, 2, 3, 4)
        pf = pfaffian_of_rows(sp, rows)
        det = submatrix_det(sp, rows, rows)
        assert pf * pf == det


class TestStar:
    def test_det_to_partials(self):
        sp = SpaceDescriptor.matrix(2, 2)
        A = sp.algebra
        d = minor(sp, [1, 2])
        assert star(sp, d) == A.d(0) * A.d(3) - A.d(1) * A.d(2)

    def test_constant(self):
        sp = SpaceDescriptor.matrix(2, 2)
        assert star(sp, MultiPoly.const(1)) == sp.algebra.one()

    def test_skew_entry(self):
        sp = SpaceDescriptor.skew(1)
        i = sp._pos[(2, 3)]
        assert star(sp, pfaffian(sp, 1)) == sp.algebra.d(i)


class TestPolarization:
    def test_matrix_e12(self):
        sp = SpaceDescriptor.matrix(2, 2)
        A = sp.algebra
        e12 = polarization(sp, 1, 2)
        expected = (A.x(sp._pos[(1, 1)]) * A.d(sp._pos[(1, 2)])
                    + A.x(sp._pos[(2, 1)]) * A.d(sp._pos[(2, 2)]))
        assert e12 == expected

    def test_diagonal_commute(self):
        sp = SpaceDescriptor.matrix(2, 2)
        e11 = polarization(sp, 1, 1)
        e22 = polarization(sp, 2, 2)
        assert commutator(e11, e22).is_zero()

    def test_skew_weight_annihilation(self):
        sp = SpaceDescriptor.skew(1)
        e11 = polarization(sp, 1, 1)
        assert weyl_apply(e11, V("x[2,3]")).is_zero()

    @pytest.mark.parametrize("space", [
        SpaceDescriptor.matrix(3, 2), SpaceDescriptor.skew(2)])
    def test_gl_relations(self, space):
        from bsato.capelli import PolarizationRealization
        assert PolarizationRealization(space).check_relations()


class TestHighestWeightVector:
    def test_matrix_22_11(self):
        sp = SpaceDescriptor.matrix(2, 2)
        assert highest_weight_vector(sp, (1, 1)) == minor(sp, [1, 2])

    def test_matrix_32_21(self):
        sp = SpaceDescriptor.matrix(3, 2)
        v = highest_weight_vector(sp, (2, 1))
        assert v == V("x[1,1]") * submatrix_det(sp, [1, 2], [1, 2])

    def test_skew5_11(self):
        sp = SpaceDescriptor.skew(2)
        assert highest_weight_vector(sp, (1, 1)) == pfaffian(sp, 5)
        assert weight_of(sp, (1, 1)) == (1, 1, 1, 1, 0)

    @pytest.mark.parametrize("space,lam", [
        (SpaceDescriptor.matrix(2, 2), (1,)),
        (SpaceDescriptor.matrix(2, 2), (2, 1)),
        (SpaceDescriptor.matrix(3, 2), (2, 1)),
        (SpaceDescriptor.matrix(3, 3), (2, 1, 1)),
        (SpaceDescriptor.skew(2), (1,)),
        (SpaceDescriptor.skew(2), (2, 1)),
        (SpaceDescriptor.skew(3), (1, 1)),
    ])
    def test_weight_and_annihilation(self, space, lam):
        # the defining property: E_ii v = w_i v, E_ij v = 0 for i < j
        from bsato.genmat import gl_rank
        v = highest_weight_vector(space, lam)
        w = weight_of(space, lam)
        r = gl_rank(space)
        for i in range(1, r + 1):
            got = weyl_apply(polarization(space, i, i), v)
            assert got == w[i - 1] * v
            for j in range(i + 1, r + 1):
                assert weyl_apply(polarization(space, i, j), v).is_zero()

    def test_bad_partition(self):
        sp = SpaceDescriptor.matrix(3, 2)
        with pytest.raises(BadPartition):
            highest_weight_vector(sp, (1, 2))
        with pytest.raises(BadPartition):
            highest_weight_vector(sp, (1, 1, 1))


class TestSchurDim:
    def test_exterior_square(self):
        assert schur_dim((1, 1), 3) == 3

    def test_sym_square(self):
        assert schur_dim((2,), 2) == 3

    def test_22_of_3(self):
        assert schur_dim((2, 2), 3) == 6

    def test_against_ssyt_oracle(self):
        for N in range(1, 6):
            for d in range(0, 7):
                for lam in partitions_of(d, min(N, d) if d else 0):
                    assert schur_dim(lam, N) == ssyt_count(lam, N)

    def test_too_long(self):
        with pytest.raises(BadPartition):
            schur_dim((1, 1, 1), 2)


class TestCauchy:
    def test_matrix22_degree2(self):
        rep = cauchy_check(SpaceDescriptor.matrix(2, 2), 2)
        assert rep.passed and rep.lhs == 10

    def test_degree0(self):
        rep = cauchy_check(SpaceDescriptor.skew(3), 0)
        assert rep.passed and rep.lhs == 1

    def test_skew5_degree2(self):
        rep = cauchy_check(SpaceDescriptor.skew(2), 2)
        assert rep.passed and rep.lhs == 55

    @pytest.mark.parametrize("space", [
        SpaceDescriptor.matrix(2, 2), SpaceDescriptor.matrix(3, 2),
        SpaceDescriptor.matrix(3, 3), SpaceDescriptor.skew(2),
        SpaceDescriptor.skew(3)])
    def test_sweep_through_degree_4(self, space):
        for d in range(5):
            assert cauchy_check(space, d).passed


class TestPlucker:
    def test_p0(self):
        sp = SpaceDescriptor.matrix(3, 2)
        assert plucker_coordinate(sp, "p0") == minor(sp, [1, 2])

    def test_p13(self):
        sp = SpaceDescriptor.matrix(3, 2)
        assert plucker_coordinate(sp, (1, 3)) == minor(sp, [2, 3])

    def test_p23(self):
        sp = SpaceDescriptor.matrix(3, 2)
        assert plucker_coordinate(sp, (2, 3)) == minor(sp, [1, 3])

    def test_relation_k1(self):
        rep = verify_plucker_relation(SpaceDescriptor.matrix(3, 2), (2, 3))
        assert rep.passed and rep.k == 1

    def test_relation_k2_three_term(self):
        rep = verify_plucker_relation(SpaceDescriptor.matrix(4, 2), (3, 4))
        assert rep.passed and rep.k == 2

    def test_relation_k0(self):
        rep = verify_plucker_relation(SpaceDescriptor.matrix(4, 2), (1, 2))
        assert rep.passed and rep.k == 0

    def test_full_sweep_small(self):
        for m, n in [(2, 2), (3, 2), (4, 2), (4, 3), (5, 3)]:
            sp = SpaceDescriptor.matrix(m, n)
            for K in combinations(range(1, m + 1), n):
                assert verify_plucker_relation(sp, K).passed, (m, n, K)


class TestLocalization:
    def test_matrix_22(self):
        assert verify_localization_matrix(2, 2).passed

    def test_matrix_32(self):
        assert verify_localization_matrix(3, 2).passed

    def test_matrix_33(self):
        assert verify_localization_matrix(3, 3).passed

    def test_skew_n1(self):
        assert verify_localization_skew(1).passed

    def test_skew_n2(self):
        assert verify_localization_skew(2).passed
