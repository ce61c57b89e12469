"""Exact linear algebra over Scalar, dict-sparse.

Rows are dicts {column key -> Scalar}; a caller-supplied sort key on
column keys makes pivoting (and therefore every basis this module
produces) deterministic.  Also: Smith-form invariant factors for
matrices over the univariate polynomial ring Cyc8[x] (x one of the
scalar parameters), used to find where a parametric matrix drops rank.
"""

from __future__ import annotations

from fractions import Fraction

from .exactfield import (
    C_ONE, P_ONE, P_ZERO, Cyc8, ParamPoly, Scalar, ScalarError, ONE,
)


def _clean(row):
    return {k: v for k, v in row.items() if v}


class Echelon:
    """Incremental reduced echelon basis of a subspace of row vectors."""

    def __init__(self, keyorder):
        self.keyorder = keyorder
        self.pivots = {}       # pivot column key -> row dict
        self.order = []        # pivot keys in insertion order

    def reduce(self, row):
        row = _clean(row)
        for pk in self.order:
            c = row.get(pk)
            if c:
                prow = self.pivots[pk]
                for k, v in prow.items():
                    w = row.get(k)
                    nv = (w - c * v) if w is not None else -(c * v)
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        return row

    def insert(self, row):
        """Reduce row against the basis; add it if independent.

        Returns the new pivot key, or None if the row was dependent.
        """
        row = self.reduce(row)
        if not row:
            return None
        pk = min(row, key=self.keyorder)
        inv = row[pk].inv()
        row = {k: v * inv for k, v in row.items()}
        # back-substitute into the existing rows
        for qk in self.order:
            prow = self.pivots[qk]
            c = prow.get(pk)
            if c:
                for k, v in row.items():
                    w = prow.get(k)
                    nv = (w - c * v) if w is not None else -(c * v)
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        self.pivots[pk] = row
        self.order.append(pk)
        return pk

    def contains(self, row):
        return not self.reduce(row)

    @property
    def dim(self):
        return len(self.order)

    def rows(self):
        """Basis rows, sorted by pivot key."""
        return [self.pivots[k] for k in sorted(self.order, key=self.keyorder)]


def rref(rows, cols):
    """Reduced row echelon form of a dense-logical matrix.

    rows: list of dicts {col -> Scalar}; cols: ordered list of columns.
    Returns (pivotcols, rowdicts) with rowdicts normalized and fully
    reduced, one per pivot, in column order.
    """
    colpos = {c: i for i, c in enumerate(cols)}
    ech = Echelon(lambda k: colpos[k])
    for r in rows:
        ech.insert(r)
    pivotcols = sorted(ech.order, key=lambda k: colpos[k])
    return pivotcols, [ech.pivots[c] for c in pivotcols]


def nullspace(rows, cols):
    """Kernel basis of the homogeneous system rows . x = 0.

    Each row is a constraint dict {col -> Scalar}.  Returns a list of
    solution dicts {col -> Scalar}, one per free column, deterministic
    in the order of `cols`.
    """
    pivotcols, red = rref(rows, cols)
    prow = dict(zip(pivotcols, red))
    pivotset = set(pivotcols)
    basis = []
    for f in cols:
        if f in pivotset:
            continue
        vec = {f: ONE}
        for p in pivotcols:
            c = prow[p].get(f)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis


def solve_unique(rows, rhs, cols):
    """Solve rows . x = rhs, requiring a unique solution.

    Returns the solution dict, or raises ScalarError when the system is
    inconsistent or underdetermined.
    """
    aug = object()  # sentinel column for the right-hand side
    allcols = list(cols) + [aug]
    augrows = []
    for r, b in zip(rows, rhs):
        rr = dict(r)
        if b:
            rr[aug] = -b
        augrows.append(rr)
    # kernel vectors of the augmented system with aug-component 1 are
    # exactly the solutions
    basis = nullspace(augrows, allcols)
    sols = [v for v in basis if v.get(aug)]
    if not sols:
        raise ScalarError("inconsistent linear system")
    if len(basis) != 1:
        raise ScalarError("linear system is not uniquely solvable")
    v = sols[0]
    c = v[aug].inv()
    return {k: val * c for k, val in v.items() if k is not aug and val}


# ---------------------------------------------------------------------------
# univariate polynomial matrices: Smith invariant factors and rational roots
# ---------------------------------------------------------------------------


def _udeg(p, i):
    return p.degree_in(i) if not p.is_zero() else -1


def _ucoeff(p, i, d):
    out = {}
    for e, z in p.terms.items():
        if e[i] == d:
            ee = list(e)
            ee[i] = 0
            out[tuple(ee)] = z
    return ParamPoly(out)


def _ushift(p, i, d):
    """Multiply by x_i^d."""
    out = {}
    for e, z in p.terms.items():
        ee = list(e)
        ee[i] += d
        out[tuple(ee)] = z
    return ParamPoly(out)


def uni_divmod(f, g, i):
    """Division with remainder in Cyc8[x_i]; coefficients must be free
    of the other parameters (callers pass genuinely univariate data)."""
    if g.is_zero():
        raise ScalarError("polynomial division by zero")
    dg = _udeg(g, i)
    lg = _ucoeff(g, i, dg)
    if not lg.is_const():
        raise ScalarError("matrix entries are not univariate")
    lginv = lg.const_value().inv()
    q = P_ZERO
    r = f
    while not r.is_zero() and _udeg(r, i) >= dg:
        dr = _udeg(r, i)
        lr = _ucoeff(r, i, dr)
        term = _ushift(lr.scale(lginv), i, dr - dg)
        q = q + term
        r = r - term * g
    return q, r


def smith_invariants(mat, i):
    """Invariant factors d1 | d2 | ... of a matrix over Cyc8[x_i].

    mat: list of rows, each a list of ParamPoly (univariate in x_i).
    Only unimodular row/column operations are used, so for every point
    x0: rank(mat(x0)) = #{k : d_k(x0) != 0}.
    """
    m = [list(r) for r in mat]
    out = []
    while m and m[0]:
        # find a nonzero entry of minimal degree (scan order breaks ties)
        best = None
        for r, row in enumerate(m):
            for c, p in enumerate(row):
                if p.is_zero():
                    continue
                d = _udeg(p, i)
                if best is None or d < best[0]:
                    best = (d, r, c)
        if best is None:
            break  # zero matrix: no more invariant factors
        _, br, bc = best
        m[0], m[br] = m[br], m[0]
        for row in m:
            row[0], row[bc] = row[bc], row[0]
        while True:
            # clear the first column
            dirty = False
            for r in range(1, len(m)):
                if m[r][0].is_zero():
                    continue
                q, rem = uni_divmod(m[r][0], m[0][0], i)
                m[r] = [a - q * b for a, b in zip(m[r], m[0])]
                if not rem.is_zero():
                    # remainder has smaller degree: swap it up and redo
                    m[0], m[r] = m[r], m[0]
                    dirty = True
            if dirty:
                continue
            # clear the first row
            for c in range(1, len(m[0])):
                if m[0][c].is_zero():
                    continue
                q, rem = uni_divmod(m[0][c], m[0][0], i)
                for row in m:
                    row[c] = row[c] - q * row[0]
                if not rem.is_zero():
                    for row in m:
                        row[0], row[c] = row[c], row[0]
                    dirty = True
                    break
            if dirty:
                continue
            if all(m[r][0].is_zero() for r in range(1, len(m))):
                break
        pivot = m[0][0]
        # ensure pivot divides every remaining entry (Smith condition)
        fixed = False
        for r in range(1, len(m)):
            for c in range(1, len(m[0])):
                _, rem = uni_divmod(m[r][c], pivot, i)
                if not rem.is_zero():
                    # add that row to row 0 and restart this pivot
                    m[0] = [a + b for a, b in zip(m[0], m[r])]
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        out.append(_monic_in(pivot, i))
        m = [row[1:] for row in m[1:]]
    return out


def _monic_in(p, i):
    d = _udeg(p, i)
    lc = _ucoeff(p, i, d)
    return p.scale(lc.const_value().inv())


def _frac_poly_gcd(a, b):
    """gcd of two univariate polys given as {deg: Fraction} dicts."""
    while b:
        db = max(b)
        lb = b[db]
        r = dict(a)
        while r and max(r) >= db:
            dr = max(r)
            q = r[dr] / lb
            for k, v in b.items():
                kk = k + dr - db
                nv = r.get(kk, Fraction(0)) - q * v
                if nv:
                    r[kk] = nv
                else:
                    r.pop(kk, None)
        a, b = b, r
    if a:
        la = a[max(a)]
        a = {k: v / la for k, v in a.items()}
    return a


def rational_roots(p, i):
    """All rational roots of p in Cyc8[x_i], with the leftover factor.

    Returns (roots, residual) where roots is a sorted list of Fractions
    and residual is the monic rational-root-free part (P_ONE when p
    splits over the rationals).
    """
    if p.is_zero():
        raise ScalarError("zero polynomial has every root")
    # a rational root is a common root of the four Q-components
    comp = [{}, {}, {}, {}]
    for e, z in p.terms.items():
        d = e[i]
        for j, q in enumerate((z.a, z.b, z.c, z.d)):
            if q:
                comp[j][d] = comp[j].get(d, Fraction(0)) + q
    g = {}
    for c in comp:
        if c:
            g = _frac_poly_gcd(g, c) if g else dict(c)
    roots = []
    if g and max(g) > 0:
        # integer-scale and apply the rational root theorem
        den = 1
        for v in g.values():
            den = den * v.denominator // _gcd_int(den, v.denominator)
        ig = {k: int(v * den) for k, v in g.items()}
        lead = ig[max(ig)]
        low = min(ig)
        const = ig[low]
        for pn in _divisors(abs(const)):
            for qn in _divisors(abs(lead)):
                for cand in (Fraction(pn, qn), Fraction(-pn, qn)):
                    if cand in roots:
                        continue
                    if _eval_frac_poly(g, cand) == 0:
                        roots.append(cand)
    if low_has_zero_root(g):
        roots.append(Fraction(0))
    roots = sorted(set(roots))
    residual = p
    var = ParamPoly.var(ParamsName(i))
    for r in roots:
        factor = var - ParamPoly.const(Cyc8(r))
        while True:
            q, rem = uni_divmod(residual, factor, i)
            if rem.is_zero():
                residual = q
            else:
                break
    return roots, _monic_in(residual, i) if not residual.is_const() \
        else P_ONE


def ParamsName(i):
    from .exactfield import PARAMS
    return PARAMS[i]


def low_has_zero_root(g):
    return bool(g) and min(g) > 0


def _eval_frac_poly(g, x):
    acc = Fraction(0)
    for d, c in g.items():
        acc += c * x ** d
    return acc


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)
