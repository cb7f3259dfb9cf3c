"""Capelli elements of U(gl_r) realized inside the Weyl algebra.

The abstract layer is a free algebra on the generators E_ij (formal
noncommutative words with polynomial coefficients); no PBW reduction is
ever attempted.  All equality assertions happen after realization through
the polarization operators, where normal order is canonical.

The Capelli polynomial C(z) is the column-determinant of E + Delta with
Delta = diag(r-1-z, ..., 1-z, -z); expanding in the falling-factorial
basis [z]_a = z(z-1)...(z-a+1) yields the Capelli elements C_a via
C(z) = sum_a (-1)^(r-a) C_a [z]_(r-a).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .exact import MultiPoly, VarId, var
from .genmat import _perm_sign, gl_rank, highest_weight_vector, weight_of, polarization
from .report import Report
from .weyl import SpaceDescriptor, WeylElement, commutator, weyl_apply

Z = var("z")


class NotDominant(ValueError):
    """Weight entries not weakly decreasing."""


@lru_cache(maxsize=None)
def stirling2(j, k):
    """Stirling numbers of the second kind: z^j = sum_k S(j,k) [z]_k."""
    if j == k:
        return 1
    if k == 0 or k > j:
        return 0
    return k * stirling2(j - 1, k) + stirling2(j - 1, k - 1)


def falling_factorial(v: VarId, a) -> MultiPoly:
    """[v]_a = v(v-1)...(v-a+1)."""
    out = MultiPoly.const(1)
    t = MultiPoly.variable(v)
    for k in range(a):
        out = out * (t - k)
    return out


def _extract_capelli_coeffs(by_zdeg, r, zero):
    """Given A_j with value = sum_j A_j z^j, return [C_0..C_r] where
    value = sum_a (-1)^(r-a) C_a [z]_(r-a)."""
    out = []
    for a in range(r + 1):
        k = r - a
        acc = zero
        for j, A in by_zdeg.items():
            s = stirling2(j, k)
            if s:
                acc = acc + A * s
        if (r - a) % 2:
            acc = -acc
        out.append(acc)
    return out


def column_det(entries):
    """Column-determinant of a square array with noncommuting entries:
    sum over permutations of sgn * a_(s(1),1) * a_(s(2),2) * ... with the
    factors multiplied left to right in column order."""
    r = len(entries)
    for row in entries:
        if len(row) != r:
            raise ValueError("column_det needs a square array")
    total = None
    for sigma in permutations(range(r)):
        sign = _perm_sign(sigma)
        prod = entries[sigma[0]][0]
        for j in range(1, r):
            prod = prod * entries[sigma[j]][j]
        if sign < 0:
            prod = -prod
        total = prod if total is None else total + prod
    return total


class UEAElement:
    """Formal Q[aux]-linear combination of words in the generators E_ij."""

    __slots__ = ("r", "terms")

    def __init__(self, r, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            if not isinstance(c, MultiPoly):
                c = MultiPoly.const(c)
            if c.is_zero():
                continue
            prev = clean.get(w)
            s = c if prev is None else prev + c
            if s.is_zero():
                clean.pop(w, None)
            else:
                clean[w] = s
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("UEAElement is immutable")

    @classmethod
    def generator(cls, r, i, j):
        if not (1 <= i <= r and 1 <= j <= r):
            raise ValueError("generator indices out of range")
        return cls(r, {((i, j),): MultiPoly.const(1)})

    @classmethod
    def unit(cls, r, c=1):
        return cls(r, {(): c})

    def _coerce(self, other):
        if isinstance(other, UEAElement):
            if other.r != self.r:
                raise ValueError("mixing U(gl_r) ranks")
            return other
        if isinstance(other, (int, Fraction, MultiPoly)):
            return UEAElement.unit(self.r, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            prev = out.get(w)
            s = c if prev is None else prev + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return UEAElement(self.r, out)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement(self.r, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = wa + wb
                c = ca * cb
                prev = out.get(w)
                s = c if prev is None else prev + c
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        return UEAElement(self.r, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            return UEAElement(self.r,
                              {w: c * other for w, c in self.terms.items()})
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w, c in sorted(self.terms.items()):
            word = "*".join("E[%d,%d]" % ij for ij in w) or "1"
            bits.append("(%s)*%s" % (c.to_text(), word))
        return " + ".join(bits)


def fourier_u(element: UEAElement, u) -> UEAElement:
    """The involution E_ij -> -E_ji (i != j), E_ii -> -E_ii - u, extended
    multiplicatively to words; u may be rational or a polynomial."""
    r = element.r
    if isinstance(u, VarId):
        u = MultiPoly.variable(u)
    if not isinstance(u, MultiPoly):
        u = MultiPoly.const(u)
    out = UEAElement(r, {})
    for w, c in element.terms.items():
        acc = UEAElement.unit(r, c)
        for (i, j) in w:
            if i == j:
                img = UEAElement(r, {((i, i),): MultiPoly.const(-1),
                                     (): -u})
            else:
                img = UEAElement(r, {((j, i),): MultiPoly.const(-1)})
            acc = acc * img
        out = out + acc
    return out


class PolarizationRealization:
    """The r x r matrix of polarization operators tau(E_ij) on a space."""

    def __init__(self, space: SpaceDescriptor):
        self.space = space
        self.r = gl_rank(space)
        self.E = [[polarization(space, i, j) for j in range(1, self.r + 1)]
                  for i in range(1, self.r + 1)]

    def entry(self, i, j) -> WeylElement:
        return self.E[i - 1][j - 1]

    def realize(self, element: UEAElement) -> WeylElement:
        if element.r != self.r:
            raise ValueError("rank mismatch: element r=%d, realization r=%d"
                             % (element.r, self.r))
        alg = self.space.algebra
        out = alg.zero()
        for w, c in element.terms.items():
            acc = alg.scalar(c)
            for (i, j) in w:
                acc = acc * self.entry(i, j)
            out = out + acc
        return out

    def check_relations(self) -> bool:
        """Spot-check [E_ij, E_kl] = d_jk E_il - d_il E_kj on all tuples."""
        r = self.r
        alg = self.space.algebra
        for i in range(1, r + 1):
            for j in range(1, r + 1):
                for k in range(1, r + 1):
                    for l in range(1, r + 1):
                        lhs = commutator(self.entry(i, j), self.entry(k, l))
                        rhs = alg.zero()
                        if j == k:
                            rhs = rhs + self.entry(i, l)
                        if i == l:
                            rhs = rhs - self.entry(k, j)
                        if lhs != rhs:
                            return False
        return True


@dataclass(frozen=True)
class CapelliPolynomial:
    """C(z) = sum_a (-1)^(r-a) C_a [z]_(r-a), with realized coefficients."""

    space: SpaceDescriptor
    r: int
    coeffs: tuple  # C_0, ..., C_r as WeylElements

    def __getitem__(self, a) -> WeylElement:
        return self.coeffs[a]


def capelli_matrix_abstract(r) -> list:
    """The matrix E + Delta over U(gl_r)[z]."""
    z = MultiPoly.variable(Z)
    out = []
    for i in range(1, r + 1):
        row = []
        for j in range(1, r + 1):
            e = UEAElement.generator(r, i, j)
            if i == j:
                e = e + (MultiPoly.const(r - i) - z)
            row.append(e)
        out.append(row)
    return out


def capelli_C_abstract(r) -> list:
    """Abstract Capelli elements [C_0..C_r] as UEAElements."""
    det = column_det(capelli_matrix_abstract(r))
    by_zdeg = {}
    for w, c in det.terms.items():
        for e, part in c.coeffs_in(Z).items():
            bucket = by_zdeg.setdefault(e, UEAElement(r, {}))
            by_zdeg[e] = bucket + UEAElement(r, {w: part})
    return _extract_capelli_coeffs(by_zdeg, r, UEAElement(r, {}))


def capelli_C(space: SpaceDescriptor, r=None,
              realization: PolarizationRealization = None) -> CapelliPolynomial:
    """Realized Capelli polynomial: expand col-det(tau(E) + Delta) with z
    central and rewrite in the falling-factorial basis."""
    real = realization or PolarizationRealization(space)
    if r is None:
        r = real.r
    if r != real.r:
        raise ValueError("rank %d does not match the gl action on %r"
                         % (r, space))
    alg = space.algebra
    z = MultiPoly.variable(Z)
    entries = []
    for i in range(1, r + 1):
        row = []
        for j in range(1, r + 1):
            e = real.entry(i, j)
            if i == j:
                e = e + alg.scalar(MultiPoly.const(r - i) - z)
            row.append(e)
        entries.append(row)
    det = column_det(entries)
    by_zdeg = {}
    for key, c in det.terms.items():
        for e, part in c.coeffs_in(Z).items():
            bucket = by_zdeg.setdefault(e, {})
            prev = bucket.get(key)
            s = part if prev is None else prev + part
            if s.is_zero():
                bucket.pop(key, None)
            else:
                bucket[key] = s
    levels = {e: WeylElement(alg, terms) for e, terms in by_zdeg.items()}
    coeffs = _extract_capelli_coeffs(levels, r, alg.zero())
    return CapelliPolynomial(space, r, tuple(coeffs))


# -- eigenvalues ----------------------------------------------------------------


def _pad_weight(lam, r):
    lam = tuple(lam)
    if len(lam) > r:
        raise NotDominant("weight %s longer than rank %d" % (lam, r))
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise NotDominant("weight %s is not dominant" % (lam,))
    return lam + (0,) * (r - len(lam))


def eigenvalue_poly(lam, r, kind="plain", u=None) -> MultiPoly:
    """The scalar by which C(z) (or F_u C(z)) acts on the irreducible with
    highest weight lam: prod_i (lam_i + r - i - z), resp.
    prod_i (-lam_(r+1-i) - u + r - i - z).  Entries of lam may be integers
    or polynomials (for the symbolic eigenvalue lemmas)."""
    lam = list(lam)
    if len(lam) > r:
        raise NotDominant("weight longer than rank")
    if all(isinstance(a, int) for a in lam):
        if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
            raise NotDominant("weight %s is not dominant" % (lam,))
    lam = lam + [0] * (r - len(lam))
    z = MultiPoly.variable(Z)
    out = MultiPoly.const(1)
    if kind == "plain":
        for i in range(1, r + 1):
            out = out * (MultiPoly._coerce(lam[i - 1]) + (r - i) - z)
        return out
    if kind == "fourier":
        if u is None:
            u = MultiPoly.variable(var("u"))
        if isinstance(u, VarId):
            u = MultiPoly.variable(u)
        u = MultiPoly._coerce(u)
        for i in range(1, r + 1):
            out = out * (-MultiPoly._coerce(lam[r - i]) - u + (r - i) - z)
        return out
    raise ValueError("kind must be 'plain' or 'fourier'")


def eigenvalue_coeffs(lam, r, kind="plain", u=None):
    """[P_0..P_r]: eigenvalues of the C_a (or F_u C_a) on highest weight lam,
    read off from eigenvalue_poly in the falling-factorial basis."""
    poly = eigenvalue_poly(lam, r, kind, u)
    by_zdeg = poly.coeffs_in(Z)
    return _extract_capelli_coeffs(by_zdeg, r, MultiPoly.zero())


def capelli_eigenvalues(lam, r):
    """Rational eigenvalues of C_0..C_r on the integer weight lam."""
    lam = _pad_weight(tuple(int(a) for a in lam), r)
    return [c.constant_value() for c in eigenvalue_coeffs(lam, r)]


# -- the eigenvalue lemmas --------------------------------------------------------


def eigenvalue_like_coeffs(poly: MultiPoly, r):
    by_zdeg = poly.coeffs_in(Z)
    return _extract_capelli_coeffs(by_zdeg, r, MultiPoly.zero())


def verify_lemma_Fsr(r, u=None) -> Report:
    """With lam = (s, ..., s): the eigenvalues satisfy
    F_u P_a(s) = P_a(-s - u), checked coefficient-wise in the [z] basis
    with s (and u, unless numeric) symbolic."""
    s = MultiPoly.variable(var("s"))
    if u is None:
        u = MultiPoly.variable(var("u"))
    elif isinstance(u, VarId):
        u = MultiPoly.variable(u)
    else:
        u = MultiPoly.const(u)
    rep = Report("lemma F on (s^%d), r=%d" % (r, r))
    plain = eigenvalue_poly([s] * r, r, "plain")
    twisted = eigenvalue_poly([s] * r, r, "fourier", u)
    sub = {var("s"): -s - u}
    P = eigenvalue_like_coeffs(plain, r)
    FP = eigenvalue_like_coeffs(twisted, r)
    ok = True
    for a in range(r + 1):
        if FP[a] != P[a].subst(sub):
            ok = False
            rep.add("a=%d" % a, False,
                    "F_u P_a = %s, P_a(-s-u) = %s"
                    % (FP[a].to_text(), P[a].subst(sub).to_text()))
    rep.add("F_u P(s,z) == P(-s-u,z) in the [z] basis", ok)
    return rep


def verify_lemma_Fsr1(r) -> Report:
    """With lam = (s, ..., s, 0) and u = r - 1:
    F_(r-1) Q_a(s) = Q_a(-s - r), coefficient-wise in the [z] basis."""
    s = MultiPoly.variable(var("s"))
    rep = Report("lemma F on (s^%d,0), r=%d" % (r - 1, r))
    lam = [s] * (r - 1) + [MultiPoly.zero()]
    plain = eigenvalue_poly(lam, r, "plain")
    twisted = eigenvalue_poly(lam, r, "fourier", Fraction(r - 1))
    sub = {var("s"): -s - r}
    Q = eigenvalue_like_coeffs(plain, r)
    FQ = eigenvalue_like_coeffs(twisted, r)
    ok = all(FQ[a] == Q[a].subst(sub) for a in range(r + 1))
    rep.add("F_(r-1) Q(s,z) == Q(-s-r,z) in the [z] basis", ok)
    return rep


def verify_eigenvalue_on_hwv(space: SpaceDescriptor, lam) -> Report:
    """Apply every realized C_a to the highest-weight vector of lam and
    compare with the falling-factorial eigenvalue extraction."""
    rep = Report("capelli eigenvalues on hwv %s of %r" % (list(lam), space))
    v = highest_weight_vector(space, lam)
    w = weight_of(space, lam)
    r = gl_rank(space)
    C = capelli_C(space)
    expected = capelli_eigenvalues(w, r)
    for a in range(r + 1):
        got = weyl_apply(C[a], v)
        want = expected[a] * v
        rep.add("C_%d eigenvalue %s" % (a, expected[a]), got == want,
                None if got == want else got.to_text())
    return rep
