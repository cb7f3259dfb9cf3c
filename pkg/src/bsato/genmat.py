"""Generic matrix and skew-symmetric spaces.

Minors and Pfaffians of the generic coordinate matrix, starred
(constant-coefficient) operators, polarization operators realizing the
gl action on the coordinate ring, highest-weight vectors, Schur/Weyl
dimension counts with the Cauchy decompositions, Pluecker coordinates and
the determinantal Pluecker relation, and the one-step localization
identities used to pass from a space to the next smaller one.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import comb

from .exact import MultiPoly, var
from .report import Report
from .weyl import BadIndexSet, SpaceDescriptor, WeylElement, weyl_apply


class BadPartition(ValueError):
    """Not a weakly decreasing list of nonnegative integers (or too long)."""


def check_partition(lam):
    lam = tuple(int(a) for a in lam)
    if any(a < 0 for a in lam):
        raise BadPartition("negative part in %s" % (lam,))
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise BadPartition("parts not weakly decreasing in %s" % (lam,))
    while lam and lam[-1] == 0:
        lam = lam[:-1]
    return lam


def doubled_partition(lam):
    """(a, b, ...) -> (a, a, b, b, ...), each part repeated twice."""
    out = []
    for a in check_partition(lam):
        out += [a, a]
    return tuple(out)


def det_of_entries(entries) -> MultiPoly:
    """Leibniz determinant of a square array of commuting polynomials."""
    k = len(entries)
    total = MultiPoly.zero()
    for sigma in permutations(range(k)):
        sign = _perm_sign(sigma)
        prod = MultiPoly.const(sign)
        for j in range(k):
            prod = prod * entries[sigma[j]][j]
            if prod.is_zero():
                break
        total = total + prod
    return total


def _perm_sign(sigma):
    sign = 1
    seen = [False] * len(sigma)
    for i in range(len(sigma)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def submatrix_det(space: SpaceDescriptor, rows, cols) -> MultiPoly:
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise BadIndexSet("non-square submatrix %s x %s" % (rows, cols))
    return det_of_entries([[space.entry(i, j) for j in cols] for i in rows])


def minor(space: SpaceDescriptor, K) -> MultiPoly:
    """The maximal minor d_K = det(x_ij), i in K, j in [n] (matrix spaces)."""
    if space.kind != "matrix":
        raise BadIndexSet("minors are defined on matrix spaces")
    K = _check_index_set(K, space.n, space.m)
    return submatrix_det(space, K, range(1, space.n + 1))


def _check_index_set(K, size, bound):
    K = tuple(sorted(int(i) for i in K))
    if len(K) != size or len(set(K)) != size:
        raise BadIndexSet("index set %s must have %d distinct entries"
                          % (K, size))
    if K and (K[0] < 1 or K[-1] > bound):
        raise BadIndexSet("index set %s out of range [1..%d]" % (K, bound))
    return K


def pfaffian_of_rows(space: SpaceDescriptor, rows) -> MultiPoly:
    """Pfaffian of the principal skew submatrix on the given (sorted) rows,
    expanded recursively along the first surviving row."""
    rows = tuple(sorted(rows))
    if len(rows) % 2:
        raise BadIndexSet("Pfaffian needs an even index set, got %s" % (rows,))
    if not rows:
        return MultiPoly.const(1)
    first, rest = rows[0], rows[1:]
    total = MultiPoly.zero()
    for t, j in enumerate(rest):
        sign = 1 if t % 2 == 0 else -1
        sub = rest[:t] + rest[t + 1:]
        total = total + sign * space.entry(first, j) * pfaffian_of_rows(space, sub)
    return total


def pfaffian(space: SpaceDescriptor, i) -> MultiPoly:
    """The sub-maximal Pfaffian d_i: delete row and column i (skew spaces)."""
    if space.kind != "skew":
        raise BadIndexSet("sub-maximal Pfaffians live on skew spaces")
    if not (1 <= i <= space.size):
        raise BadIndexSet("row index %d out of range [1..%d]" % (i, space.size))
    rows = tuple(j for j in range(1, space.size + 1) if j != i)
    return pfaffian_of_rows(space, rows)


def star(space: SpaceDescriptor, p: MultiPoly) -> WeylElement:
    """p(x_1..x_N) -> p(d_1..d_N), the constant-coefficient operator."""
    alg = space.algebra
    terms = {}
    zero_exp = alg._zero_exp
    for mono, c in p.terms.items():
        de = list(zero_exp)
        central = []
        for v, e in mono:
            i = alg.xindex.get(v)
            if i is None:
                central.append((v, e))
            else:
                de[i] = e
        key = (zero_exp, tuple(de))
        add = MultiPoly({tuple(central): c})
        prev = terms.get(key)
        terms[key] = add if prev is None else prev + add
    return WeylElement(alg, {k: c for k, c in terms.items() if not c.is_zero()})


def polarization(space: SpaceDescriptor, i, j) -> WeylElement:
    """The polarization operator E_ij = sum_k x_ki d_kj.

    Matrix spaces: i, j range over the columns [n] (the gl_n action).  Skew
    spaces: i, j range over [2n+1], with the sign convention x_ab = -x_ba
    resolved per summand.
    """
    alg = space.algebra
    zero_exp = alg._zero_exp
    terms = {}
    if space.kind == "matrix":
        if not (1 <= i <= space.n and 1 <= j <= space.n):
            raise BadIndexSet("column indices must lie in [1..%d]" % space.n)
        for k in range(1, space.m + 1):
            xe = list(zero_exp)
            de = list(zero_exp)
            xe[space._pos[(k, i)]] += 1
            de[space._pos[(k, j)]] += 1
            _acc(terms, (tuple(xe), tuple(de)), Fraction(1))
    else:
        if not (1 <= i <= space.size and 1 <= j <= space.size):
            raise BadIndexSet("indices must lie in [1..%d]" % space.size)
        for k in range(1, space.size + 1):
            sx = space.signed_pair(k, i)
            sd = space.signed_pair(k, j)
            if sx is None or sd is None:
                continue
            xe = list(zero_exp)
            de = list(zero_exp)
            xe[sx[1]] += 1
            de[sd[1]] += 1
            _acc(terms, (tuple(xe), tuple(de)), Fraction(sx[0] * sd[0]))
    return WeylElement(alg, {k: MultiPoly.const(c)
                             for k, c in terms.items() if c})


def _acc(terms, key, c):
    prev = terms.get(key)
    s = c if prev is None else prev + c
    if s == 0:
        terms.pop(key, None)
    else:
        terms[key] = s


def gl_rank(space: SpaceDescriptor) -> int:
    """Rank of the gl action realized by polarization: n or 2n+1."""
    return space.n if space.kind == "matrix" else space.size


def highest_weight_vector(space: SpaceDescriptor, lam) -> MultiPoly:
    """Product of leading principal minors (matrix) or leading principal
    Pfaffians (skew) with exponents given by the successive differences of
    the partition; a highest-weight vector of weight lam (matrix, on the
    column side) resp. the doubled partition (skew)."""
    lam = check_partition(lam)
    if len(lam) > space.n:
        raise BadPartition("partition %s too long for %r" % (lam, space))
    steps = list(lam) + [0]
    v = MultiPoly.const(1)
    for i in range(len(lam)):
        e = steps[i] - steps[i + 1]
        if e == 0:
            continue
        if space.kind == "matrix":
            block = submatrix_det(space, range(1, i + 2), range(1, i + 2))
        else:
            block = pfaffian_of_rows(space, range(1, 2 * (i + 1) + 1))
        v = v * block ** e
    return v


def weight_of(space: SpaceDescriptor, lam):
    """The torus weight of highest_weight_vector(space, lam), padded to the
    gl rank."""
    lam = check_partition(lam)
    w = list(lam) if space.kind == "matrix" else list(doubled_partition(lam))
    return tuple(w + [0] * (gl_rank(space) - len(w)))


def schur_dim(lam, N) -> int:
    """dim of the irreducible GL_N representation with highest weight lam,
    by the Weyl dimension formula."""
    lam = check_partition(lam)
    if len(lam) > N:
        raise BadPartition("partition %s has more than %d parts" % (lam, N))
    full = list(lam) + [0] * (N - len(lam))
    num = 1
    den = 1
    for i in range(N):
        for j in range(i + 1, N):
            num *= full[i] - full[j] + j - i
            den *= j - i
    assert num % den == 0
    return num // den


def partitions_of(d, max_parts):
    """All partitions of d with at most max_parts parts."""
    def rec(remaining, largest, parts):
        if remaining == 0:
            yield tuple(parts)
            return
        if len(parts) == max_parts:
            return
        for a in range(min(remaining, largest), 0, -1):
            parts.append(a)
            yield from rec(remaining - a, a, parts)
            parts.pop()
    yield from rec(d, d, [])


def cauchy_check(space: SpaceDescriptor, d) -> Report:
    """Compare dim of the degree-d part of the coordinate ring against the
    sum of products of Schur dimensions from the Cauchy decomposition."""
    rep = Report("cauchy %r degree %d" % (space, d))
    N = space.nvars()
    lhs = comb(N + d - 1, d)
    if space.kind == "matrix":
        rhs = sum(schur_dim(lam, space.m) * schur_dim(lam, space.n)
                  for lam in partitions_of(d, space.n)) if d else 1
    else:
        rhs = sum(schur_dim(doubled_partition(lam), space.size)
                  for lam in partitions_of(d, space.n)) if d else 1
    rep.add("dim_degree_%d" % d, lhs == rhs,
            None if lhs == rhs else "lhs=%d rhs=%d" % (lhs, rhs))
    rep.lhs = lhs
    rep.rhs = rhs
    return rep


# -- Pluecker coordinates ----------------------------------------------------


def plucker_coordinate(space: SpaceDescriptor, which) -> MultiPoly:
    """p_0 = d_[n]; p_(i,j) = d_([n] minus i, plus j) for i in [n],
    j in [m] beyond [n]."""
    if space.kind != "matrix":
        raise BadIndexSet("Pluecker coordinates live on matrix spaces")
    n, m = space.n, space.m
    if which == "p0":
        return minor(space, range(1, n + 1))
    i, j = which
    if not (1 <= i <= n) or not (n < j <= m):
        raise BadIndexSet("need i in [1..%d], j in [%d..%d]" % (n, n + 1, m))
    K = sorted(set(range(1, n + 1)) - {i} | {j})
    return minor(space, K)


def verify_plucker_relation(space: SpaceDescriptor, K) -> Report:
    """Check p_0^(k-1) d_K = +/- det(p_(i_a, j_b)) with k = |[n] \\ K|.

    With both index sets enumerated increasingly the determinant recovers
    p_0^(k-1) d_K only up to the reversal sign (-1)^(k(k-1)/2) (already
    visible for k = 2, where the classical three-term relation reads
    p0*d_34 = p14*p23 - p13*p24 on the 4 x 2 matrix).  The check asserts
    the sign-exact identity and reports the sign it used.
    """
    n = space.n
    K = _check_index_set(K, n, space.m)
    base = set(range(1, n + 1))
    I = sorted(base - set(K))
    J = sorted(set(K) - base)
    k = len(I)
    rep = Report("plucker %r K=%s" % (space, list(K)))
    rep.k = k
    p0 = plucker_coordinate(space, "p0")
    dK = minor(space, K)
    if k == 0:
        rep.add("K=[n] reduces to p0", dK == p0)
        return rep
    grid = [[plucker_coordinate(space, (i, j)) for j in J] for i in I]
    sign = -1 if (k * (k - 1) // 2) % 2 else 1
    rep.sign = sign
    lhs = p0 ** (k - 1) * dK
    rhs = det_of_entries(grid)
    if sign < 0:
        rhs = -rhs
    ok = lhs == rhs
    rep.add("p0^%d*d_K == %sdet(p_ij)" % (k - 1, "-" if sign < 0 else ""),
            ok, None if ok else (lhs - rhs).to_text())
    return rep


# -- localization lemmas -------------------------------------------------------


def _grid_var(prefix, i, j):
    return MultiPoly.variable(var("%s[%d,%d]" % (prefix, i, j)))


def generic_det(prefix, rows, cols) -> MultiPoly:
    return det_of_entries([[_grid_var(prefix, i, j) for j in cols]
                           for i in rows])


def verify_localization_matrix(m, n) -> Report:
    """Identities behind the chart u11 != 0 on the m x n generic matrix.

    M_ij = u11*u_(i+1,j+1) - u_(1,j+1)*u_(i+1,1) is the corner 2x2 minor;
    the Desnanot-Jacobi condensation identity transports (p+1) x (p+1)
    minors of u through row/column 1 to p x p minors of M; and for n = 2
    the minors avoiding row 1 land in the ideal of the entries of M.
    """
    if not (m >= n >= 2):
        raise BadIndexSet("localization check needs m >= n >= 2")
    rep = Report("localization matrix(%d,%d)" % (m, n))
    u11 = _grid_var("u", 1, 1)
    M = {}
    for i in range(1, m):
        for j in range(1, n):
            M[(i, j)] = (u11 * _grid_var("u", i + 1, j + 1)
                         - _grid_var("u", 1, j + 1) * _grid_var("u", i + 1, 1))
    entry_ok = all(
        M[(i, j)] == generic_det("u", [1, i + 1], [1, j + 1])
        for i in range(1, m) for j in range(1, n))
    rep.add("entries are corner 2x2 minors", entry_ok)

    # condensation: u11^(p-1) * det of a (p+1)x(p+1) corner submatrix of u
    # equals the corresponding p x p minor of M
    for p in range(2, n):
        ok = True
        for rows in combinations(range(2, m + 1), p):
            for cols in combinations(range(2, n + 1), p):
                lhs = u11 ** (p - 1) * generic_det("u", (1,) + rows, (1,) + cols)
                rhs = det_of_entries([[M[(i - 1, j - 1)] for j in cols]
                                      for i in rows])
                if lhs != rhs:
                    ok = False
        rep.add("condensation order %d" % (p + 1), ok)
    if n == 2 and m >= 3:
        ok = True
        for a, b in combinations(range(2, m + 1), 2):
            lhs = u11 * generic_det("u", [a, b], [1, 2])
            rhs = (_grid_var("u", a, 1) * M[(b - 1, 1)]
                   - _grid_var("u", b, 1) * M[(a - 1, 1)])
            if lhs != rhs:
                ok = False
        rep.add("row-1-avoiding minors in ideal(M)", ok)
    return rep


def _generic_skew_entry(prefix, i, j) -> MultiPoly:
    if i == j:
        return MultiPoly.zero()
    if i < j:
        return _grid_var(prefix, i, j)
    return -_grid_var(prefix, j, i)


def generic_pfaffian(prefix, rows) -> MultiPoly:
    rows = tuple(sorted(rows))
    if not rows:
        return MultiPoly.const(1)
    first, rest = rows[0], rows[1:]
    total = MultiPoly.zero()
    for t, j in enumerate(rest):
        sign = 1 if t % 2 == 0 else -1
        total = total + sign * _generic_skew_entry(prefix, first, j) \
            * generic_pfaffian(prefix, rest[:t] + rest[t + 1:])
    return total


def verify_localization_skew(n) -> Report:
    """Identities behind the chart u12 != 0 on the (2n+1) x (2n+1) generic
    skew matrix, denominator-cleared: u12*M_ij equals the 4x4 Pfaffian on
    rows {1,2,i+2,j+2}, and Ct*u*C splits off the symplectic 2x2 block."""
    if n < 1:
        raise BadIndexSet("skew localization needs n >= 1")
    rep = Report("localization skew(%d)" % (2 * n + 1))
    size = 2 * n + 1
    u12 = _grid_var("u", 1, 2)

    cleared_M = {}
    ok = True
    for i in range(1, 2 * n):
        for j in range(1, 2 * n):
            # u12*M_ij = u12*u_(i+2,j+2) - (u_(1,i+2)u_(2,j+2) - u_(1,j+2)u_(2,i+2))
            lhs = (u12 * _generic_skew_entry("u", i + 2, j + 2)
                   - (_grid_var("u", 1, i + 2) * _grid_var("u", 2, j + 2)
                      - _grid_var("u", 1, j + 2) * _grid_var("u", 2, i + 2)))
            cleared_M[(i, j)] = lhs
            if i < j:
                pf = generic_pfaffian("u", (1, 2, i + 2, j + 2))
                if lhs != pf:
                    ok = False
    rep.add("u12*M_ij equals 4x4 Pfaffians", ok)

    # Ct*u*C block identity, cleared by u12^2 (Ctilde = u12*C)
    Ct = [[MultiPoly.zero() for _ in range(size)] for _ in range(size)]
    for j in range(3, size + 1):
        Ct[0][j - 1] = _grid_var("u", 2, j)
        Ct[1][j - 1] = -_grid_var("u", 1, j)
    Ct[0][1] = u12
    Ct[1][0] = MultiPoly.const(1)
    for i in range(3, size + 1):
        Ct[i - 1][i - 1] = u12

    U = [[_generic_skew_entry("u", i, j) for j in range(1, size + 1)]
         for i in range(1, size + 1)]

    def mat_mul(A, B):
        k = len(A)
        return [[sum((A[i][t] * B[t][j] for t in range(k)), MultiPoly.zero())
                 for j in range(k)] for i in range(k)]

    def transpose(A):
        return [list(r) for r in zip(*A)]

    prod = mat_mul(transpose(Ct), mat_mul(U, Ct))
    ok = True
    for i in range(size):
        for j in range(size):
            if i == 0 and j == 1:
                want = -(u12 ** 2)
            elif i == 1 and j == 0:
                want = u12 ** 2
            elif i >= 2 and j >= 2:
                want = u12 * cleared_M[(i - 1, j - 1)]
            else:
                want = MultiPoly.zero()
            if prod[i][j] != want:
                ok = False
    rep.add("Ct*u*C block identity (cleared)", ok)
    return rep
