"""Invariant operators and b-function verification.

The central architectural decision: formal powers f^s are never represented
symbolically.  Because the minors satisfy Pluecker relations there is no
canonical monomial basis in the tuple members, so every identity involving
f^s is verified at nonnegative integer exponents and then recovered by
exact interpolation; this is sound because the scalar by which the
invariant operator acts is a polynomial of known degree (at most n) in the
total exponent.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .exact import FactoredPolynomial, MultiPoly, UniPoly, factor_linear, interpolate, var
from .genmat import gl_rank, minor, pfaffian, star
from .capelli import capelli_C
from .report import Report
from .weyl import SpaceDescriptor, WeylElement, fourier, weyl_apply, weyl_mul


class NotCollinear(ValueError):
    """The operator image is not a scalar multiple of the input power
    product; falsifies the multiplicity-free wiring, i.e. a build bug."""


class ScalarDependsOnTuple(ValueError):
    """Two exponent tuples of equal total degree produced different
    scalars."""


class TupleF:
    """The defining tuple: all maximal minors (matrix) or all sub-maximal
    Pfaffians (skew), as ordered (label, polynomial) pairs."""

    def __init__(self, space: SpaceDescriptor, members):
        self.space = space
        self.members = tuple(members)
        self._power_cache = {}

    @classmethod
    def for_space(cls, space: SpaceDescriptor) -> "TupleF":
        if space.kind == "matrix":
            members = [(K, minor(space, K))
                       for K in combinations(range(1, space.m + 1), space.n)]
        else:
            members = [(i, pfaffian(space, i))
                       for i in range(1, space.size + 1)]
        return cls(space, members)

    def __len__(self):
        return len(self.members)

    def labels(self):
        return [lab for lab, _ in self.members]

    def member(self, idx) -> MultiPoly:
        return self.members[idx][1]

    def degree(self):
        """Common degree of the members (n in both families)."""
        return self.space.n

    def member_power(self, idx, a) -> MultiPoly:
        """Cached member^a, built incrementally."""
        if a == 0:
            return MultiPoly.const(1)
        key = (idx, a)
        p = self._power_cache.get(key)
        if p is None:
            p = self.member_power(idx, a - 1) * self.member(idx)
            self._power_cache[key] = p
        return p

    def power_product(self, exponents) -> MultiPoly:
        """f^a = prod member_i^(a_i) for a tuple of nonnegative exponents
        aligned with the member order."""
        exponents = self.normalize_exponents(exponents)
        out = MultiPoly.const(1)
        for i, e in enumerate(exponents):
            if e:
                out = out * self.member_power(i, e)
        return out

    def normalize_exponents(self, exponents):
        if isinstance(exponents, dict):
            by_label = {lab: int(e) for lab, e in exponents.items()}
            out = [by_label.pop(lab, 0) for lab in self.labels()]
            if by_label:
                raise KeyError("unknown labels %s" % list(by_label))
            exponents = out
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != len(self.members):
            raise ValueError("expected %d exponents, got %d"
                             % (len(self.members), len(exponents)))
        if any(e < 0 for e in exponents):
            raise ValueError("exponents must be nonnegative")
        return exponents


def build_Dd(t: TupleF) -> WeylElement:
    """D_d = sum_i (d_i)* . d_i, normal-ordered."""
    alg = t.space.algebra
    out = alg.zero()
    for _, f in t.members:
        out = out + weyl_mul(star(t.space, f), alg.from_poly(f))
    return out


def build_Ddual(t: TupleF) -> WeylElement:
    """D_dual = sum_i d_i . (d_i)*: already normal-ordered by shape."""
    alg = t.space.algebra
    out = alg.zero()
    for _, f in t.members:
        out = out + weyl_mul(alg.from_poly(f), star(t.space, f))
    return out


def collinearity_scalar(g: MultiPoly, f: MultiPoly) -> Fraction:
    """The exact scalar c with g = c*f; raises NotCollinear otherwise.

    Leading terms fix the candidate scalar, then full equality is asserted,
    avoiding any polynomial division.
    """
    if f.is_zero():
        raise ValueError("reference polynomial is zero")
    if g.is_zero():
        return Fraction(0)
    mf, cf = f.leading_term()
    mg, cg = g.leading_term()
    if mf != mg:
        raise NotCollinear("leading monomials differ")
    c = cg / cf
    if g != c * f:
        raise NotCollinear("not an exact scalar multiple")
    return c


def cayley_scalar_poly(space: SpaceDescriptor) -> FactoredPolynomial:
    """The Cayley product: prod_(i=0..n-1)(s+i) for an n x n determinant,
    prod_(i=0..n-1)(s+2i) for a 2n x 2n Pfaffian."""
    n = space.n
    step = 1 if space.kind == "matrix" else 2
    return FactoredPolynomial.from_roots([-step * i for i in range(n)])


def verify_cayley(t: TupleF, L=0, a_max=4) -> Report:
    """Differentiating powers of one member by its starred partner.

    For each integer a: (d_L)* . d_L^a = c_a * d_L^(a-1) exactly, and the
    scalars interpolate to the Cayley product.  In the skew case the other
    members' starred operators annihilate d_L^a.
    """
    space = t.space
    rep = Report("cayley %r member %s" % (space, t.labels()[L]))
    dL = t.member(L)
    op = star(space, dL)
    expected = cayley_scalar_poly(space)
    expected_poly = expected.expand("s")
    points = []
    for a in range(1, a_max + 1):
        g = weyl_apply(op, t.member_power(L, a))
        c = collinearity_scalar(g, t.member_power(L, a - 1))
        points.append((Fraction(a), c))
        rep.add("a=%d scalar %s" % (a, c), c == expected_poly(a),
                None if c == expected_poly(a) else "expected %s"
                % expected_poly(a))
    n = space.n
    if a_max >= n + 1:  # enough points to pin the degree-n product
        interp = interpolate(points, "s")
        ok = interp == expected_poly
        rep.add("scalars interpolate to %s" % expected.to_text(), ok,
                None if ok else interp.to_text())
    if space.kind == "skew":
        ann_ok = True
        for idx, (lab, f) in enumerate(t.members):
            if idx == L:
                continue
            killed = all(
                weyl_apply(star(space, f), t.member_power(L, a)).is_zero()
                for a in range(1, a_max + 1))
            if not killed:
                ann_ok = False
                rep.add("annihilation by member %s" % lab, False)
        rep.add("other members annihilate d_L^a", ann_ok)
    return rep


def default_sample_plan(t: TupleF):
    """Exponent tuples for recover_Pf: pure powers of the first member
    through degree n+3 (n+2 of them interpolate, two confirm the degree),
    plus mixed tuples of total degree 2 and 3 when the tuple has more than
    one member."""
    n = t.degree()
    r = len(t)
    samples = []
    for a in range(0, n + 4):
        e = [0] * r
        e[0] = a
        samples.append(tuple(e))
    if r >= 2:
        mixed = [(1, 1), (2, 1), (1, 2)]
        if r >= 3:
            mixed += [(1, 0, 1), (1, 1, 1)]
        for pattern in mixed:
            e = list(pattern) + [0] * (r - len(pattern))
            samples.append(tuple(e))
    return samples


def recover_Pf(t: TupleF, samples=None) -> FactoredPolynomial:
    """Recover the polynomial P(s) with D_d . f^a = P(|a|) f^a by exact
    collinearity at integer exponents plus Lagrange interpolation.

    Asserts along the way that every image is an exact scalar multiple of
    f^a and that the scalar depends only on |a| (the testable shadow of
    multiplicity-freeness), and that the interpolant has degree exactly n.
    """
    if samples is None:
        samples = default_sample_plan(t)
    samples = [t.normalize_exponents(e) for e in samples]
    degrees = {sum(e) for e in samples}
    n = t.degree()
    if len(degrees) < n + 3:
        raise ValueError("need at least %d distinct total degrees, got %d"
                         % (n + 3, len(degrees)))
    Dd = build_Dd(t)
    by_degree = {}
    for e in samples:
        f = t.power_product(e)
        g = weyl_apply(Dd, f)
        c = collinearity_scalar(g, f)
        a = sum(e)
        if a in by_degree and by_degree[a] != c:
            raise ScalarDependsOnTuple(
                "degree %d: scalar %s vs %s at %s"
                % (a, by_degree[a], c, e))
        by_degree[a] = c
    interp = interpolate(sorted(by_degree.items()), "s")
    if interp.degree() != n:
        raise ScalarDependsOnTuple(
            "interpolant %s does not have degree %d" % (interp.to_text(), n))
    return factor_linear(interp)


def catalog_bfunction(space: SpaceDescriptor) -> FactoredPolynomial:
    """The proven closed forms: prod_(i=m-n+1..m)(s+i) for maximal minors,
    prod_(i=0..n-1)(s+2i+3) for sub-maximal Pfaffians.  Lookup, not
    computation."""
    if space.kind == "matrix":
        roots = [-i for i in range(space.m - space.n + 1, space.m + 1)]
    else:
        roots = [-(2 * i + 3) for i in range(space.n)]
    return FactoredPolynomial.from_roots(roots)


def shift_to_bZ(b: FactoredPolynomial, space: SpaceDescriptor) -> FactoredPolynomial:
    """Renormalize to the scheme-intrinsic b-function: substitute
    s -> s - codim, i.e. move every root up by the codimension."""
    return b.shifted(space.codim())


def verify_capelli_equals_Ddual(space: SpaceDescriptor) -> Report:
    """tau(C_n) = D_dual = sum_K d_K (d_K)* on matrix spaces, exactly."""
    rep = Report("tau(C_n) == D_dual on %r" % space)
    if space.kind != "matrix":
        raise ValueError("the Capelli comparison is a matrix-space identity")
    t = TupleF.for_space(space)
    C = capelli_C(space)
    lhs = C[space.n]
    rhs = build_Ddual(t)
    rep.add("normal forms equal", lhs == rhs,
            None if lhs == rhs else (lhs - rhs).to_text())
    return rep


def verify_fourier_Dd(space: SpaceDescriptor) -> Report:
    """D_d = (-1)^n F(D_dual) for both families."""
    rep = Report("fourier relation on %r" % space)
    t = TupleF.for_space(space)
    lhs = build_Dd(t)
    rhs = fourier(build_Ddual(t))
    if space.n % 2:
        rhs = -rhs
    rep.add("D_d == (-1)^n F(D_dual)", lhs == rhs)
    return rep


def several_variables_scalar(space: SpaceDescriptor, exponents, i) -> Fraction:
    """Expected scalar of (d_i)* d_i on f^a:
    (a_i+1) * prod_(k=2..n)(|a|+k)      for the (n+1) x n matrix space,
    (a_i+1) * prod_(k=1..n-1)(|a|+2k+1) for the skew space."""
    a = sum(exponents)
    ai = exponents[i]
    c = Fraction(ai + 1)
    n = space.n
    if space.kind == "matrix":
        for k in range(2, n + 1):
            c *= a + k
    else:
        for k in range(1, n):
            c *= a + 2 * k + 1
    return c


def verify_several_variables(t: TupleF, i, exponents) -> Report:
    """One instance of the several-variables formula: (d_i)* d_i acting on
    f^a multiplies it by the expected scalar."""
    space = t.space
    if space.kind == "matrix" and space.m != space.n + 1:
        raise ValueError(
            "the several-variables formula is stated for the (n+1) x n case")
    exponents = t.normalize_exponents(exponents)
    rep = Report("several variables %r i=%s a=%s"
                 % (space, t.labels()[i], list(exponents)))
    f = t.power_product(exponents)
    op = weyl_mul(star(space, t.member(i)), space.algebra.from_poly(t.member(i)))
    g = weyl_apply(op, f)
    c = collinearity_scalar(g, f)
    want = several_variables_scalar(space, exponents, i)
    rep.add("scalar %s == %s" % (c, want), c == want)
    return rep


def roots_divide(small: FactoredPolynomial, big: FactoredPolynomial) -> bool:
    """Whether small divides big, at the level of factored forms."""
    return all(big.multiplicity(r) >= m for r, m in small.factors)
