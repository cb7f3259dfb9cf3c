"""The Weyl algebra of differential operators with polynomial coefficients.

Operators are stored in normal order: every monomial carries all coordinate
factors to the left of all partials, as a pair of dense exponent vectors
over a fixed list of coordinate/partial pairs.  Coefficients live in Q
extended by optional central parameter variables (z, s, u, ...), which
commute with everything.  Normal order is a canonical form, so equality of
operators is equality of representations.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .budget import tick
from .exact import MultiPoly, VarId, var


class VariableMismatch(ValueError):
    """Operands live over different variable sets."""


class BadIndexSet(ValueError):
    """An index or index set is outside the space's valid range."""


class WeylAlgebra:
    """D = Q[x_1..x_N][d_1..d_N] with [d_i, x_j] = delta_ij.

    Instances are interned per coordinate list, so elements of the same
    algebra share the identical context object.
    """

    _registry = {}

    def __new__(cls, coord_names):
        key = tuple(coord_names)
        inst = cls._registry.get(key)
        if inst is not None:
            return inst
        inst = object.__new__(cls)
        inst.xvars = tuple(var(n) for n in key)
        inst.dvars = tuple(var(_partial_name(n)) for n in key)
        inst.n = len(key)
        inst.xindex = {v: i for i, v in enumerate(inst.xvars)}
        inst.dindex = {v: i for i, v in enumerate(inst.dvars)}
        inst._zero_exp = (0,) * inst.n
        cls._registry[key] = inst
        return inst

    def __repr__(self):
        return "WeylAlgebra(%d vars)" % self.n

    # -- element constructors ------------------------------------------------

    def zero(self):
        return WeylElement(self, {})

    def one(self):
        return self.scalar(1)

    def scalar(self, c):
        if isinstance(c, (int, Fraction)):
            c = MultiPoly.const(c)
        if c.is_zero():
            return self.zero()
        self._check_coeff(c)
        return WeylElement(self, {(self._zero_exp, self._zero_exp): c})

    def x(self, i):
        e = list(self._zero_exp)
        e[i] = 1
        return WeylElement(self, {(tuple(e), self._zero_exp): MultiPoly.const(1)})

    def d(self, i):
        e = list(self._zero_exp)
        e[i] = 1
        return WeylElement(self, {(self._zero_exp, tuple(e)): MultiPoly.const(1)})

    def from_poly(self, p: MultiPoly) -> "WeylElement":
        """Embed a polynomial (in the coordinates, times central parameters)
        as a multiplication operator."""
        terms = {}
        for mono, c in p.terms.items():
            xe = list(self._zero_exp)
            central = []
            for v, e in mono:
                i = self.xindex.get(v)
                if i is not None:
                    xe[i] = e
                elif v in self.dindex:
                    raise VariableMismatch(
                        "%s is a partial of this algebra, not a coordinate" % v)
                else:
                    central.append((v, e))
            key = (tuple(xe), self._zero_exp)
            add = MultiPoly({tuple(central): c})
            prev = terms.get(key)
            terms[key] = add if prev is None else prev + add
        return WeylElement(self, {k: c for k, c in terms.items()
                                  if not c.is_zero()})

    def _check_coeff(self, c: MultiPoly):
        for v in c.variables():
            if v in self.xindex or v in self.dindex:
                raise VariableMismatch(
                    "coefficient contains algebra variable %s" % v)


def _partial_name(name):
    # x[1,2] -> d[1,2]; bare names get a d prefix: y -> d_y
    if "[" in name:
        head, rest = name.split("[", 1)
        return "d[" + rest if head == "x" else "d_" + name
    if name.startswith("x") and name[1:].isdigit():
        return "d" + name[1:]
    return "d_" + name


class WeylElement:
    """A normal-ordered differential operator.

    terms: {(x_exponents, d_exponents): MultiPoly coefficient}, both exponent
    vectors being dense tuples over the algebra's coordinate list.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, *a):
        raise AttributeError("WeylElement is immutable")

    # -- basics ---------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, WeylElement):
            if other.algebra is not self.algebra:
                raise VariableMismatch("operators over different variable sets")
            return other
        if isinstance(other, (int, Fraction, MultiPoly)):
            return self.algebra.scalar(other)
        return NotImplemented

    def is_zero(self):
        return not self.terms

    def order(self):
        """Order as a differential operator (max total partial degree)."""
        if not self.terms:
            return -1
        return max(sum(de) for _, de in self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            prev = out.get(k)
            s = c if prev is None else prev + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return WeylElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.algebra,
                           {k: -c for k, c in self.terms.items()})

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
        if isinstance(other, (int, Fraction, MultiPoly)):
            if isinstance(other, MultiPoly) and not other.is_constant():
                self.algebra._check_coeff(other)
            c = other if isinstance(other, MultiPoly) else MultiPoly.const(other)
            if c.is_zero():
                return self.algebra.zero()
            return WeylElement(self.algebra,
                               {k: cc * c for k, cc in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return weyl_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative operator power")
        out = self.algebra.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    # -- the Weyl product ------------------------------------------------------

    def apply(self, f: MultiPoly) -> MultiPoly:
        return weyl_apply(self, f)

    def fourier(self) -> "WeylElement":
        return fourier(self)

    def to_text(self):
        """Normal-ordered text, x-part then d-part: e.g. 3*x[1,2]^2*d[1,1]."""
        if not self.terms:
            return "0"
        alg = self.algebra

        def sort_key(key):
            xe, de = key
            return (-(sum(xe) + sum(de)),
                    tuple(-e for e in xe), tuple(-e for e in de))

        parts = []
        for key in sorted(self.terms, key=sort_key):
            xe, de = key
            c = self.terms[key]
            mono = []
            for i, e in enumerate(xe):
                if e:
                    v = alg.xvars[i].name
                    mono.append(v if e == 1 else "%s^%d" % (v, e))
            for i, e in enumerate(de):
                if e:
                    v = alg.dvars[i].name
                    mono.append(v if e == 1 else "%s^%d" % (v, e))
            body = "*".join(mono)
            if c.is_constant():
                cv = c.constant_value()
                sign = "-" if cv < 0 else "+"
                cv = abs(cv)
                if not body:
                    text = str(cv)
                elif cv == 1:
                    text = body
                else:
                    text = "%s*%s" % (cv, body)
            else:
                sign = "+"
                ct = c.to_text()
                text = "(%s)*%s" % (ct, body) if body else "(%s)" % ct
            parts.append((sign, text))
        first_sign, first_text = parts[0]
        out = ("-" if first_sign == "-" else "") + first_text
        for sign, text in parts[1:]:
            out += sign + text
        return out

    def __repr__(self):
        return self.to_text()


def weyl_mul(a: WeylElement, b: WeylElement) -> WeylElement:
    """Normal-ordered product.

    Per variable, the reordering follows the closed form
    d^p x^q = sum_k C(p,k) C(q,k) k! x^(q-k) d^(p-k),
    applied jointly over all variables of each term pair.
    """
    if a.algebra is not b.algebra:
        raise VariableMismatch("operators over different variable sets")
    alg = a.algebra
    out = {}
    for (xa, da), ca in a.terms.items():
        for (xb, db), cb in b.terms.items():
            tick()
            c = ca * cb
            # variables needing reordering: da_i > 0 and xb_i > 0
            hot = [i for i in range(alg.n) if da[i] and xb[i]]
            if not hot:
                key = (_add_exp(xa, xb), _add_exp(da, db))
                _accumulate(out, key, c)
                continue
            for kvec, coef in _reorder_terms(da, xb, hot):
                xe = list(xa)
                de = list(db)
                for i in range(alg.n):
                    xe[i] += xb[i]
                    de[i] += da[i]
                for i, k in kvec:
                    xe[i] -= k
                    de[i] -= k
                _accumulate(out, (tuple(xe), tuple(de)), c * coef)
    return WeylElement(alg, out)


def _reorder_terms(da, xb, hot):
    """Yield (sparse k-vector, integer coefficient) for d^da x^xb."""
    results = [([], 1)]
    for i in hot:
        p, q = da[i], xb[i]
        expanded = []
        for kvec, coef in results:
            for k in range(min(p, q) + 1):
                c = comb(p, k) * comb(q, k) * factorial(k)
                expanded.append((kvec + [(i, k)] if k else kvec, coef * c))
        results = expanded
    return results


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _accumulate(out, key, c):
    prev = out.get(key)
    s = c if prev is None else prev + c
    if s.is_zero():
        out.pop(key, None)
    else:
        out[key] = s


def weyl_apply(p: WeylElement, f: MultiPoly) -> MultiPoly:
    """Apply the operator to a polynomial in the algebra's coordinates.

    f may carry central parameters in its coefficients, but no partials.
    """
    alg = p.algebra
    for v in f.variables():
        if v in alg.dindex:
            raise VariableMismatch("polynomial contains partial %s" % v)
    result = {}
    for (xe, de), c in p.terms.items():
        g = _diff_poly(alg, f, de)
        if g.is_zero():
            continue
        xmono = tuple((alg.xvars[i], e) for i, e in enumerate(xe) if e)
        for mono, cf in (g * c).terms.items():
            from .exact import _mono_mul
            m = _mono_mul(mono, xmono)
            prev = result.get(m)
            s = cf if prev is None else prev + cf
            if s == 0:
                result.pop(m, None)
            else:
                result[m] = s
    return MultiPoly._raw(result)


def _diff_poly(alg, f: MultiPoly, de) -> MultiPoly:
    needed = [(alg.xvars[i], k) for i, k in enumerate(de) if k]
    if not needed:
        return f
    out = {}
    for mono, c in f.terms.items():
        exps = dict(mono)
        coef = c
        ok = True
        for v, k in needed:
            e = exps.get(v, 0)
            if e < k:
                ok = False
                break
            for t in range(k):
                coef *= e - t
            if e == k:
                del exps[v]
            else:
                exps[v] = e - k
        if not ok:
            continue
        tick()
        m = tuple(sorted(exps.items(), key=lambda pr: pr[0].key))
        prev = out.get(m)
        s = coef if prev is None else prev + coef
        if s == 0:
            out.pop(m, None)
        else:
            out[m] = s
    return MultiPoly._raw(out)


def commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    """ab - ba, normal-ordered."""
    return weyl_mul(a, b) - weyl_mul(b, a)


def fourier(p: WeylElement) -> WeylElement:
    """The algebra automorphism x -> d, d -> -x, renormal-ordered.

    Central parameters are not allowed: the transform is only defined on the
    plain Weyl algebra.
    """
    alg = p.algebra
    out = alg.zero()
    for (xe, de), c in p.terms.items():
        if not c.is_constant():
            raise VariableMismatch(
                "fourier of an operator with central parameters")
        sign = -1 if sum(de) % 2 else 1
        # x^a d^b  ->  d^a (-x)^b, then normal-order d^a x^b
        piece = WeylElement(alg, {(xe, de): MultiPoly.const(sign * c.constant_value())})
        out = out + _normal_order_swapped(alg, piece)
    return out


def _normal_order_swapped(alg, p):
    """Interpret each stored (xe, de) as the product d^xe x^de and
    normal-order it."""
    out = {}
    for (ae, be), c in p.terms.items():
        hot = [i for i in range(alg.n) if ae[i] and be[i]]
        if not hot:
            _accumulate(out, (be, ae), c)
            continue
        for kvec, coef in _reorder_terms(ae, be, hot):
            xe = list(be)
            de = list(ae)
            for i, k in kvec:
                xe[i] -= k
                de[i] -= k
            _accumulate(out, (tuple(xe), tuple(de)), c * coef)
    return WeylElement(alg, out)


class SpaceDescriptor:
    """Which generic space: matrix(m, n) with m >= n, or skew(2n+1).

    Supplies the coordinate grid, the Weyl algebra, the coordinate lookup
    with the skew sign convention, and the tuple/group bookkeeping shared by
    the minor/Pfaffian machinery.
    """

    def __init__(self, kind, *dims):
        if kind == "matrix":
            m, n = dims
            if not (m >= n >= 1):
                raise BadIndexSet("matrix space needs m >= n >= 1")
            self.kind = "matrix"
            self.m, self.n = m, n
            names = ["x[%d,%d]" % (i, j)
                     for i in range(1, m + 1) for j in range(1, n + 1)]
            self._pos = {(i, j): (i - 1) * n + (j - 1)
                         for i in range(1, m + 1) for j in range(1, n + 1)}
        elif kind == "skew":
            (n,) = dims
            if n < 1:
                raise BadIndexSet("skew space needs n >= 1")
            self.kind = "skew"
            self.n = n
            self.size = 2 * n + 1
            names = []
            self._pos = {}
            for i in range(1, self.size + 1):
                for j in range(i + 1, self.size + 1):
                    self._pos[(i, j)] = len(names)
                    names.append("x[%d,%d]" % (i, j))
        else:
            raise ValueError("unknown space kind %r" % kind)
        self.coord_names = tuple(names)
        self.algebra = WeylAlgebra(names)

    @classmethod
    def matrix(cls, m, n):
        return cls("matrix", m, n)

    @classmethod
    def skew(cls, n):
        return cls("skew", n)

    def __repr__(self):
        if self.kind == "matrix":
            return "matrix(%d,%d)" % (self.m, self.n)
        return "skew(%d)" % self.size

    def nvars(self):
        return len(self.coord_names)

    def xvar(self, i, j) -> VarId:
        """The coordinate variable at (i, j); skew spaces require i < j."""
        if (i, j) not in self._pos:
            raise BadIndexSet("no coordinate at (%d,%d)" % (i, j))
        return self.algebra.xvars[self._pos[(i, j)]]

    def entry(self, i, j) -> MultiPoly:
        """The (i, j) entry of the generic matrix as a polynomial.

        Matrix spaces: x[i,j].  Skew spaces: x[i,j] for i<j, -x[j,i] for
        i>j, and 0 on the diagonal (the sign convention is resolved here and
        never stored).
        """
        if self.kind == "matrix":
            return MultiPoly.variable(self.xvar(i, j))
        if i == j:
            return MultiPoly.zero()
        if i < j:
            return MultiPoly.variable(self.xvar(i, j))
        return -MultiPoly.variable(self.xvar(j, i))

    def signed_pair(self, i, j):
        """(sign, dense index) for the skew entry (i, j); None on diagonal."""
        if i == j:
            return None
        if i < j:
            return 1, self._pos[(i, j)]
        return -1, self._pos[(j, i)]

    def codim(self):
        """Codimension of the rank-degenerate locus cut out by the tuple."""
        if self.kind == "matrix":
            return self.m - self.n + 1
        return 3
