"""Exact arithmetic kernel.

Everything downstream computes over this module: arbitrary-precision
rationals (``ExactScalar``), sparse multivariate polynomials with named,
globally interned variables (``MultiPoly``), dense univariate polynomials
(``UniPoly``), factored univariate polynomials presented as
``lead * prod (t - root)^mult`` (``FactoredPolynomial``), and rational
functions reduced in one distinguished variable (``RationalFunction``).

Polynomials are kept in a canonical form (graded-lexicographic term order
over a fixed variable order), so equality of values is equality of
representations.  No floating point anywhere.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction

from .budget import tick

# The coefficient field is Q.  fractions.Fraction already maintains every
# invariant we need: reduced, denominator >= 1, zero is 0/1.
ExactScalar = Fraction


def rational(x, y=None):
    """Coerce to an ExactScalar (accepts int, Fraction, or "p/q" strings)."""
    if y is not None:
        return Fraction(x, y)
    return Fraction(x)


class DuplicateAbscissa(ValueError):
    """Two interpolation points share an abscissa."""


class NonLinearFactor(ValueError):
    """A univariate polynomial is not a product of rational linear factors."""


_NAME_TOKEN = re.compile(r"\d+|\D+")


def _natural_key(name):
    # chunk digits as ints so x[1,2] < x[1,10]; deterministic across runs
    return tuple(
        (1, int(tok)) if tok.isdigit() else (0, tok)
        for tok in _NAME_TOKEN.findall(name)
    )


class VarId:
    """An interned symbolic variable name.

    Instances are unique per name, so identity comparison is equality.
    The total order (by natural sort key of the name) is fixed and does not
    depend on interning order, which makes the canonical term order
    deterministic across runs.
    """

    __slots__ = ("name", "key")

    _registry: dict = {}
    _lock = threading.Lock()

    def __new__(cls, name):
        v = cls._registry.get(name)
        if v is None:
            with cls._lock:
                v = cls._registry.get(name)
                if v is None:
                    v = object.__new__(cls)
                    object.__setattr__(v, "name", name)
                    object.__setattr__(v, "key", _natural_key(name))
                    cls._registry[name] = v
        return v

    def __setattr__(self, *a):
        raise AttributeError("VarId is immutable")

    def __repr__(self):
        return self.name

    def __lt__(self, other):
        return self.key < other.key

    def __le__(self, other):
        return self.key <= other.key

    def __gt__(self, other):
        return self.key > other.key

    def __ge__(self, other):
        return self.key >= other.key


def var(name) -> VarId:
    """Intern and return the variable with the given name."""
    return VarId(name)


# A monomial is a tuple of (VarId, exponent) pairs, sorted by variable,
# with all exponents positive.  The empty tuple is the unit monomial.

_EMPTY = ()


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va is vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va.key < vb.key:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_degree(m):
    return sum(e for _, e in m)


def _mono_sort_key(m):
    # ascending in this key == descending graded-lex; the leading monomial
    # is min() under it
    return (-_mono_degree(m), tuple((v.key, -e) for v, e in m))


def _mono_text(m):
    return "*".join(v.name if e == 1 else "%s^%d" % (v.name, e) for v, e in m)


class MultiPoly:
    """A sparse multivariate polynomial over Q.

    ``terms`` maps monomials to nonzero ExactScalar coefficients.  Values are
    immutable; all arithmetic returns fresh objects.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                m = tuple(sorted(((v, e) for v, e in m if e != 0),
                                 key=lambda p: p[0].key))
                clean[m] = clean.get(m, Fraction(0)) + c
                if clean[m] == 0:
                    del clean[m]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def _raw(cls, terms):
        # caller guarantees canonical monomials and no zero coefficients
        p = object.__new__(cls)
        object.__setattr__(p, "terms", terms)
        return p

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls._raw({} if c == 0 else {_EMPTY: c})

    @classmethod
    def variable(cls, v, exp=1):
        if isinstance(v, str):
            v = var(v)
        if exp == 0:
            return cls.const(1)
        return cls._raw({((v, exp),): Fraction(1)})

    # -- ring structure ----------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return MultiPoly.const(x)
        if isinstance(x, VarId):
            return MultiPoly.variable(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s == 0:
                    del out[m]
                else:
                    out[m] = s
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ma, ca in a.items():
            tick()
            for mb, cb in b.items():
                m = _mono_mul(ma, mb)
                s = out.get(m)
                if s is None:
                    out[m] = ca * cb
                else:
                    s = s + ca * cb
                    if s == 0:
                        del out[m]
                    else:
                        out[m] = s
        return MultiPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    # -- structure queries -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and _EMPTY in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant: %s" % self)
        return self.terms[_EMPTY]

    def total_degree(self):
        if not self.terms:
            return -1
        return max(_mono_degree(m) for m in self.terms)

    def degree_in(self, v):
        if isinstance(v, str):
            v = var(v)
        d = 0
        for m in self.terms:
            for w, e in m:
                if w is v and e > d:
                    d = e
        return d

    def variables(self):
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def leading_term(self):
        """(monomial, coefficient) largest in the canonical term order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = min(self.terms, key=_mono_sort_key)
        return m, self.terms[m]

    def coefficient(self, mono):
        mono = tuple(sorted(((v, e) for v, e in mono if e != 0),
                            key=lambda p: p[0].key))
        return self.terms.get(mono, Fraction(0))

    # -- substitution and calculus ------------------------------------------

    def subst(self, bindings):
        """Simultaneous substitution var -> MultiPoly (unbound vars remain)."""
        fixed = {}
        for v, p in bindings.items():
            if isinstance(v, str):
                v = var(v)
            fixed[v] = self._coerce(p)
        out = MultiPoly.zero()
        cache = {}
        for m, c in self.terms.items():
            untouched = []
            factors = []
            for v, e in m:
                rep = fixed.get(v)
                if rep is None:
                    untouched.append((v, e))
                else:
                    key = (v, e)
                    p = cache.get(key)
                    if p is None:
                        p = rep ** e
                        cache[key] = p
                    factors.append(p)
            acc = MultiPoly._raw({tuple(untouched): c})
            for p in factors:
                acc = acc * p
            out = out + acc
        return out

    def evaluate(self, bindings) -> Fraction:
        """Full evaluation at rational values; every variable must be bound."""
        vals = {}
        for v, x in bindings.items():
            if isinstance(v, str):
                v = var(v)
            vals[v] = Fraction(x)
        total = Fraction(0)
        for m, c in self.terms.items():
            acc = c
            for v, e in m:
                if v not in vals:
                    raise ValueError("unbound variable %s" % v)
                acc *= vals[v] ** e
            total += acc
        return total

    def diff(self, v, times=1):
        if isinstance(v, str):
            v = var(v)
        out = {}
        for m, c in self.terms.items():
            e = 0
            for w, ew in m:
                if w is v:
                    e = ew
                    break
            if e < times:
                continue
            for k in range(times):
                c = c * (e - k)
            rest = tuple((w, ew) for w, ew in m if w is not v)
            if e > times:
                rest = _mono_mul(rest, ((v, e - times),))
            out[rest] = out.get(rest, Fraction(0)) + c
        return MultiPoly._raw({m: c for m, c in out.items() if c != 0})

    def coeffs_in(self, v):
        """Decompose as a polynomial in v: {exponent: MultiPoly coefficient}."""
        if isinstance(v, str):
            v = var(v)
        out = {}
        for m, c in self.terms.items():
            e = 0
            rest = m
            for idx, (w, ew) in enumerate(m):
                if w is v:
                    e = ew
                    rest = m[:idx] + m[idx + 1:]
                    break
            bucket = out.setdefault(e, {})
            bucket[rest] = bucket.get(rest, Fraction(0)) + c
        return {e: MultiPoly._raw(b) for e, b in out.items()}

    def content(self) -> Fraction:
        """Positive rational c with self/c integral, coprime coefficients."""
        if not self.terms:
            return Fraction(1)
        from math import gcd, lcm
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator))
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    # -- text form -----------------------------------------------------------

    def to_text(self):
        """Canonical text: terms in descending graded-lex order, +/- joined."""
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_mono_sort_key):
            c = self.terms[m]
            sign = "-" if c < 0 else "+"
            c = abs(c)
            if not m:
                body = str(c)
            elif c == 1:
                body = _mono_text(m)
            else:
                body = "%s*%s" % (c, _mono_text(m))
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def __repr__(self):
        return self.to_text()


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Dispatch form of +, -, * used by the textual/JSON surfaces."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError("unknown op %r" % op)


def poly_subst(p: MultiPoly, bindings) -> MultiPoly:
    return p.subst(bindings)


class UniPoly:
    """Dense univariate polynomial over Q, low-degree coefficients first."""

    __slots__ = ("var", "coeffs")

    def __init__(self, v, coeffs):
        if isinstance(v, str):
            v = var(v)
        coeffs = [Fraction(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "var", v)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *a):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def const(cls, v, c):
        return cls(v, [c])

    @classmethod
    def monomial(cls, v, exp=1, coeff=1):
        return cls(v, [0] * exp + [coeff])

    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def leading_coeff(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _check_var(self, other):
        if self.var is not other.var:
            raise ValueError("univariate variable mismatch: %s vs %s"
                             % (self.var, other.var))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly.const(self.var, other)
        self._check_var(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return UniPoly(self.var, a)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.var, [-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly.const(self.var, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly(self.var, [c * other for c in self.coeffs])
        self._check_var(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly(self.var, [])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(self.var, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly.const(self.var, other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.var is other.var and self.coeffs == other.coeffs

    __hash__ = None

    def to_multipoly(self) -> MultiPoly:
        terms = {}
        for e, c in enumerate(self.coeffs):
            if c != 0:
                terms[_EMPTY if e == 0 else ((self.var, e),)] = c
        return MultiPoly._raw(terms)

    def to_text(self):
        return self.to_multipoly().to_text()

    def __repr__(self):
        return self.to_text()


def interpolate(points, v) -> UniPoly:
    """Exact Lagrange interpolation through (abscissa, value) pairs."""
    if isinstance(v, str):
        v = var(v)
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if not pts:
        raise ValueError("need at least one interpolation point")
    seen = set()
    for x, _ in pts:
        if x in seen:
            raise DuplicateAbscissa("abscissa %s repeated" % x)
        seen.add(x)
    total = UniPoly(v, [])
    for i, (xi, yi) in enumerate(pts):
        if yi == 0:
            continue
        basis = UniPoly.const(v, 1)
        denom = Fraction(1)
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            basis = basis * UniPoly(v, [-xj, 1])
            denom *= xi - xj
        total = total + basis * (yi / denom)
    return total


def _divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _synthetic_divide(coeffs, root):
    """coeffs / (t - root); returns quotient coeffs, assumes exact division."""
    out = [Fraction(0)] * (len(coeffs) - 1)
    carry = Fraction(0)
    for i in range(len(coeffs) - 1, 0, -1):
        carry = coeffs[i] + root * carry
        out[i - 1] = carry
    return out


@dataclass(frozen=True)
class FactoredPolynomial:
    """lead * prod (t - root)^mult with pairwise distinct rational roots."""

    lead: Fraction
    factors: tuple  # of (root: Fraction, mult: int), sorted by descending root

    @classmethod
    def from_roots(cls, roots, lead=1):
        counts = {}
        for r in roots:
            r = Fraction(r)
            counts[r] = counts.get(r, 0) + 1
        factors = tuple(sorted(counts.items(), key=lambda p: -p[0]))
        return cls(Fraction(lead), factors)

    def roots(self):
        return [r for r, _ in self.factors]

    def degree(self):
        return sum(m for _, m in self.factors)

    def multiplicity(self, root) -> int:
        root = Fraction(root)
        for r, m in self.factors:
            if r == root:
                return m
        return 0

    def expand(self, v="s") -> UniPoly:
        if isinstance(v, str):
            v = var(v)
        out = UniPoly.const(v, self.lead)
        for r, m in self.factors:
            lin = UniPoly(v, [-r, 1])
            for _ in range(m):
                out = out * lin
        return out

    def shifted(self, delta) -> "FactoredPolynomial":
        """The factored form of p(t - delta): every root moves up by delta."""
        delta = Fraction(delta)
        return FactoredPolynomial(
            self.lead, tuple((r + delta, m) for r, m in self.factors))

    def to_text(self, name="s"):
        if not self.factors:
            return str(self.lead)
        pieces = []
        for r, m in self.factors:
            if r == 0:
                base = name
            elif r < 0:
                base = "(%s+%s)" % (name, -r)
            else:
                base = "(%s-%s)" % (name, r)
            pieces.append(base if m == 1 else "%s^%d" % (base, m))
        body = "*".join(pieces)
        if self.lead == 1:
            return body
        return "%s*%s" % (self.lead, body)

    def to_json(self):
        return {
            "lead": str(self.lead),
            "factors": [{"root": str(r), "mult": m} for r, m in self.factors],
        }

    def __repr__(self):
        return self.to_text()


def factor_linear(p: UniPoly) -> FactoredPolynomial:
    """Split p into rational linear factors.

    Raises NonLinearFactor if an irreducible factor of degree > 1 over Q
    remains (rational root test with exact division).
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    lead = p.leading_coeff()
    coeffs = [c / lead for c in p.coeffs]
    roots = []
    while coeffs[0] == 0 and len(coeffs) > 1:
        roots.append(Fraction(0))
        coeffs = coeffs[1:]
    while len(coeffs) > 1:
        from math import lcm
        scale = 1
        for c in coeffs:
            scale = lcm(scale, c.denominator)
        ints = [int(c * scale) for c in coeffs]
        a0, ak = ints[0], ints[-1]
        found = None
        candidates = sorted(
            {Fraction(sp * pnum, qden)
             for pnum in _divisors(a0) for qden in _divisors(ak)
             for sp in (1, -1)},
            key=abs)
        for cand in candidates:
            acc = Fraction(0)
            for c in reversed(coeffs):
                acc = acc * cand + c
            if acc == 0:
                found = cand
                break
        if found is None:
            raise NonLinearFactor(
                "no rational root of %s" % UniPoly(p.var, coeffs).to_text())
        roots.append(found)
        coeffs = _synthetic_divide(coeffs, found)
    return FactoredPolynomial.from_roots(roots, lead)


class RationalFunction:
    """numerator/denominator of MultiPolys, reducible in one variable.

    Only complete reduction in a distinguished variable is supported (enough
    for the zeta-function checks); full multivariate gcd is out of scope.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: MultiPoly, denominator: MultiPoly):
        if denominator.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", denominator)

    def __setattr__(self, *a):
        raise AttributeError("RationalFunction is immutable")

    def is_polynomial(self):
        return self.denominator.is_constant()

    def reduced_in(self, v) -> "RationalFunction":
        """Cancel content and every common linear factor in the variable v."""
        if isinstance(v, str):
            v = var(v)
        num, den = self.numerator, self.denominator
        extra = den.variables() - {v}
        if extra:
            raise ValueError(
                "denominator must be univariate in %s, found %s" % (v, extra))
        den_uni = UniPoly(v, [
            den.coeffs_in(v).get(e, MultiPoly.zero()).constant_value()
            for e in range(den.degree_in(v) + 1)
        ])
        factored = factor_linear(den_uni)
        lead = factored.lead
        remaining = []
        num_coeffs = _poly_in_var(num, v)
        for root, mult in factored.factors:
            for _ in range(mult):
                quotient, rem = _divide_linear(num_coeffs, root)
                if rem.is_zero():
                    num_coeffs = quotient
                else:
                    remaining.append(root)
        new_num = _rebuild_from_var(num_coeffs, v)
        new_den = FactoredPolynomial.from_roots(remaining, lead) \
            .expand(v).to_multipoly()
        c = new_den.content()
        if not remaining:
            # constant denominator: fold it into the numerator entirely
            scale = new_den.constant_value()
            return RationalFunction(new_num * (1 / scale), MultiPoly.const(1))
        new_num = new_num * (1 / c)
        new_den = new_den * (1 / c)
        return RationalFunction(new_num, new_den)

    def to_text(self):
        if self.is_polynomial():
            c = self.denominator.constant_value()
            return (self.numerator * (1 / c)).to_text()
        return "(%s)/(%s)" % (self.numerator.to_text(),
                              self.denominator.to_text())

    def __repr__(self):
        return self.to_text()

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.numerator * other.denominator
                == other.numerator * self.denominator)

    __hash__ = None


def _poly_in_var(p: MultiPoly, v) -> list:
    by_deg = p.coeffs_in(v)
    top = max(by_deg) if by_deg else 0
    return [by_deg.get(e, MultiPoly.zero()) for e in range(top + 1)]


def _rebuild_from_var(coeffs, v) -> MultiPoly:
    out = MultiPoly.zero()
    vp = MultiPoly.variable(v)
    for e, c in enumerate(coeffs):
        out = out + c * vp ** e
    return out


def _divide_linear(coeffs, root):
    """Divide sum coeffs[e]*v^e by (v - root) over an arbitrary coefficient
    ring; returns (quotient coefficient list, remainder)."""
    if len(coeffs) == 1:
        return [MultiPoly.zero()], coeffs[0]
    out = [MultiPoly.zero()] * (len(coeffs) - 1)
    carry = MultiPoly.zero()
    for i in range(len(coeffs) - 1, 0, -1):
        carry = coeffs[i] + carry * root
        out[i - 1] = carry
    rem = coeffs[0] + carry * root
    return out, rem
