"""Topological zeta functions from log-resolution data and the strong
monodromy product test.

The Euler characteristics chi(E_I) are kept symbolic by default (one
variable per subset of components); nothing in the product test depends on
them, and an override hook accepts integer values.  The zeta function is
an exact rational function in s over Q[chi].
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exact import (
    FactoredPolynomial,
    MultiPoly,
    RationalFunction,
    UniPoly,
    _divide_linear,
    _poly_in_var,
    _rebuild_from_var,
    factor_linear,
    var,
)
from .genmat import generic_pfaffian, _grid_var
from .report import Report
from .weyl import SpaceDescriptor

S = var("s")


@dataclass(frozen=True)
class ResolutionData:
    """Components (label, a_j, k_j) of a log resolution: the divisor
    multiplicities a_j and discrepancies k_j; chi optionally overrides the
    symbolic Euler characteristics with integers, keyed by label subsets."""

    components: tuple  # of (label, a, k)
    chi: dict = None

    def __post_init__(self):
        labels = [lab for lab, _, _ in self.components]
        if len(set(labels)) != len(labels):
            raise ValueError("component labels must be distinct")
        if any(a < 1 for _, a, _ in self.components):
            raise ValueError("divisor multiplicities a_j must be >= 1")
        if any(k < 0 for _, _, k in self.components):
            raise ValueError("discrepancies k_j must be >= 0")

    def labels(self):
        return [lab for lab, _, _ in self.components]

    def chi_value(self, subset) -> MultiPoly:
        key = frozenset(subset)
        if self.chi is not None and key in self.chi:
            return MultiPoly.const(self.chi[key])
        name = "chi[%s]" % ",".join(str(l) for l in sorted(subset, key=str))
        return MultiPoly.variable(var(name))

    def to_json(self):
        data = {"components": [{"a": a, "k": k}
                               for _, a, k in self.components]}
        if self.chi is None:
            data["chi"] = "symbolic"
        else:
            data["chi"] = {",".join(str(l) for l in sorted(key, key=str)): v
                           for key, v in self.chi.items()}
        return data

    @classmethod
    def from_json(cls, data) -> "ResolutionData":
        comps = tuple((idx, int(c["a"]), int(c["k"]))
                      for idx, c in enumerate(data["components"]))
        chi = data.get("chi", "symbolic")
        if chi == "symbolic" or chi is None:
            return cls(comps, None)
        parsed = {}
        for key, v in chi.items():
            subset = frozenset(int(t) for t in key.split(",")) if key else frozenset()
            parsed[subset] = int(v)
        return cls(comps, parsed)

    @classmethod
    def load(cls, path) -> "ResolutionData":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def resolution_for(space: SpaceDescriptor) -> ResolutionData:
    """The resolution data of the rank stratification:
    matrix:  a_i = n - i,  k_i + 1 = (m - i)(n - i),
    skew:    a_i = n - i,  k_i + 1 = 2(n-i)^2 + (n-i),
    for i = 0..n-1."""
    comps = []
    n = space.n
    for i in range(n):
        a = n - i
        if space.kind == "matrix":
            k1 = (space.m - i) * (n - i)
        else:
            k1 = 2 * (n - i) ** 2 + (n - i)
        comps.append((i, a, k1 - 1))
    return ResolutionData(tuple(comps))


@dataclass(frozen=True)
class ZetaFunction:
    """Z(s) = sum over subsets I of chi(E_I) prod_(i in I) 1/(a_i s + k_i + 1),
    held as one rational function over the common denominator."""

    value: RationalFunction
    data: ResolutionData

    def to_text(self):
        return self.value.to_text()


def zeta_of(data: ResolutionData) -> ZetaFunction:
    s = MultiPoly.variable(S)
    factors = {lab: a * s + (k + 1) for lab, a, k in data.components}
    labels = data.labels()
    denominator = MultiPoly.const(1)
    for lab in labels:
        denominator = denominator * factors[lab]
    numerator = MultiPoly.zero()
    for size in range(len(labels) + 1):
        for subset in combinations(labels, size):
            term = data.chi_value(subset)
            for lab in labels:
                if lab not in subset:
                    term = term * factors[lab]
            numerator = numerator + term
    return ZetaFunction(RationalFunction(numerator, denominator), data)


def pole_set(data: ResolutionData):
    """Distinct candidate poles -(k_j + 1)/a_j, ascending."""
    return sorted({Fraction(-(k + 1), a) for _, a, k in data.components})


def _clear_linear_text(root: Fraction) -> str:
    """(s - root) with cleared integer coefficients, e.g. root -9/2 ->
    2*s+9."""
    a = root.denominator
    b = -root.numerator
    lead = "s" if a == 1 else "%d*s" % a
    if b == 0:
        return lead
    return "%s%+d" % (lead, b)


def smc_check(b: FactoredPolynomial, z: ZetaFunction) -> Report:
    """Assert b(s) * Z(s) is a polynomial in s and that every candidate
    pole is a root of b; multiplicities are tracked even though the two
    catalog families only ever need simple factors."""
    rep = Report("strong monodromy product test")
    poles = pole_set(z.data)
    missing = [p for p in poles if b.multiplicity(p) == 0]
    rep.add("poles %s are roots of b" % [str(p) for p in poles],
            not missing,
            None if not missing else "missing %s" % [str(p) for p in missing])

    product = RationalFunction(
        z.value.numerator * b.expand("s").to_multipoly(),
        z.value.denominator)
    den_uni = UniPoly(S, [c.constant_value()
                          for _, c in _enumerate_coeffs(product.denominator)])
    factored = factor_linear(den_uni)
    num_coeffs = _poly_in_var(product.numerator, S)
    leftovers = []
    for root, mult in factored.factors:
        for _ in range(mult):
            quotient, rem = _divide_linear(num_coeffs, root)
            if rem.is_zero():
                num_coeffs = quotient
            else:
                leftovers.append(root)
    if leftovers:
        witness = "*".join(_clear_linear_text(r) for r in leftovers)
        rep.add("b*Z is a polynomial in s", False, witness)
    else:
        rep.add("b*Z is a polynomial in s", True)
        rep.product = _rebuild_from_var(num_coeffs, S) * (1 / factored.lead)
    return rep


def _enumerate_coeffs(p: MultiPoly):
    by = p.coeffs_in(S)
    top = max(by) if by else 0
    return [(e, by.get(e, MultiPoly.zero())) for e in range(top + 1)]


# -- the one-step blow-up on the skew space ------------------------------------


def express_in_ideal(target: MultiPoly, generators, coeff_degree):
    """Exact membership via linear algebra over monomials: find polynomial
    coefficients g_k of total degree <= coeff_degree with
    sum g_k * gen_k = target; returns the list of g_k or None."""
    variables = set()
    for g in generators:
        variables |= g.variables()
    variables |= target.variables()
    variables = sorted(variables)

    monos = [()]
    frontier = [()]
    for _ in range(coeff_degree):
        nxt = []
        for m in frontier:
            base = dict(m)
            start = variables.index(m[-1][0]) if m else 0
            for v in variables[start:]:
                e = dict(base)
                e[v] = e.get(v, 0) + 1
                key = tuple(sorted(e.items(), key=lambda p: p[0].key))
                nxt.append(key)
        frontier = nxt
        monos.extend(nxt)

    columns = []
    for g in generators:
        for m in monos:
            columns.append(g * MultiPoly._raw({m: Fraction(1)}))
    # row space: all monomials appearing anywhere
    row_index = {}
    for p in columns + [target]:
        for m in p.terms:
            row_index.setdefault(m, len(row_index))
    ncols = len(columns)
    nrows = len(row_index)
    matrix = [[Fraction(0)] * (ncols + 1) for _ in range(nrows)]
    for j, p in enumerate(columns):
        for m, c in p.terms.items():
            matrix[row_index[m]][j] = c
    for m, c in target.terms.items():
        matrix[row_index[m]][ncols] = c

    solution = _solve_exact(matrix, ncols)
    if solution is None:
        return None
    out = []
    per = len(monos)
    for k in range(len(generators)):
        terms = {}
        for t, m in enumerate(monos):
            c = solution[k * per + t]
            if c:
                terms[m] = c
        out.append(MultiPoly._raw(terms))
    return out


def _solve_exact(matrix, ncols):
    """Gaussian elimination over Q on [A | b]; any solution or None."""
    rows = [r[:] for r in matrix]
    nrows = len(rows)
    pivot_cols = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if rows[i][ncols] != 0:
            return None
    solution = [Fraction(0)] * ncols
    for i, c in enumerate(pivot_cols):
        solution[c] = rows[i][ncols]
    return solution


def verify_pfaffian_blowup(n) -> Report:
    """One blow-up step on the (2n+1) x (2n+1) skew space, on the chart
    where the (1,2) projective coordinate is 1: substituting x_ij -> t0*u_ij
    sends each 2(p+1)-Pfaffian ideal onto t0^(p+1) times the 2p-Pfaffian
    ideal of the transformed matrix M_ij = Pf on rows {1, 2, i+2, j+2}."""
    rep = Report("pfaffian blow-up chart, skew(%d)" % (2 * n + 1))
    size = 2 * n + 1
    space = SpaceDescriptor.skew(n)
    t0 = MultiPoly.variable(var("t0"))
    u12 = var("u[1,2]")
    one = MultiPoly.const(1)

    bindings = {}
    for i in range(1, size + 1):
        for j in range(i + 1, size + 1):
            u = _grid_var("u", i, j) if (i, j) != (1, 2) else one
            bindings[space.xvar(i, j)] = t0 * u

    def set_u12(p):
        return p.subst({u12: one})

    if n == 1:
        ok = all(
            space.entry(i, j).subst(bindings)
            == t0 * set_u12(_grid_var("u", i, j))
            for i in range(1, 4) for j in range(i + 1, 4))
        rep.add("entries pull back to t0*u_ij (u12=1)", ok)
        rep.add("t0 is the pullback of x[1,2]",
                space.entry(1, 2).subst(bindings) == t0)
        return rep

    # M_ij = Pf of u on rows {1,2,i+2,j+2}, with u12 = 1
    M = {}
    for i in range(1, 2 * n):
        for j in range(i + 1, 2 * n):
            M[(i, j)] = set_u12(generic_pfaffian("u", (1, 2, i + 2, j + 2)))
    gens = [M[key] for key in sorted(M)]

    for p in range(1, n):
        all_rows = range(1, size + 1)
        ok_pullback = True
        ok_membership = True
        for rows in combinations(all_rows, 2 * (p + 1)):
            pf_x = pfaffian_rows_on_space(space, rows)
            pulled = pf_x.subst(bindings)
            target = set_u12(generic_pfaffian("u", rows))
            if pulled != t0 ** (p + 1) * target:
                ok_pullback = False
            if p == 1:
                combo = express_in_ideal(target, gens, 1)
                if combo is None:
                    ok_membership = False
        rep.add("2(p+1)-Pfaffians pull back to t0^%d * Q[u] (p=%d)"
                % (p + 1, p), ok_pullback)
        if p == 1:
            rep.add("pullbacks lie in the ideal of the M_ij (p=1)",
                    ok_membership)
    # reverse inclusion at generator level: t0^2 * M_ij is the pullback of
    # the x-Pfaffian on the matching rows
    rep.add("t0^2 * M_ij are pulled-back generators",
            all(pfaffian_rows_on_space(space, (1, 2, i + 2, j + 2))
                .subst(bindings) == t0 ** 2 * M[(i, j)]
                for i in range(1, 2 * n) for j in range(i + 1, 2 * n)))
    return rep


def pfaffian_rows_on_space(space: SpaceDescriptor, rows) -> MultiPoly:
    from .genmat import pfaffian_of_rows
    return pfaffian_of_rows(space, rows)
