"""Exact lambda-bracket calculus.

A conformal superalgebra here is a finite free C[d]-module with a
lambda-bracket table; a conformal module is a finite free C[d]-module
with a lambda-action table.  Every check below is an identity of
polynomials in the formal symbols d (the translation generator), lam
and mu, with Scalar coefficients, so the verdicts are exact.

The axiom names follow the usual conventions: sesquilinearity
((d a)_lam b = -lam a_lam b), skew symmetry (a_lam b = -(-1)^{p(a)p(b)}
b_{-lam-d} a), the Jacobi identity in two formal variables, and for
modules the commutator rule a_lam(b_mu v) - (-1)^{p(a)p(b)}
b_mu(a_lam v) = (a_lam b)_{lam+mu} v together with the derivative rule.

Tables for the Virasoro, sl2 current, semidirect and N=2 algebras (and
the N=2 module families) are written out by hand; tables for the other
algebras are reconstructed exactly from the mode structure constants
and cross-checked against them.

One caveat: the barred generator family of the big N=4 algebra spans
its modes but is not a free C[d]-basis, and its mode brackets come out
rational in the mode indices (for instance [L_m, Lbar_n] carries
m(m+1)/(m+n+1)).  Lambda calculus for that algebra therefore runs over
the sixteen monomial towers xi_S t^n, which are free; see
big_n4_tower_algebra and big_n4_action_table.
"""

from collections import namedtuple
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from .algebra import (GenMode, N2, N4B, bracket, canonical_genmode,
                      expand_n4b, generators, normalize_alg, parity_of,
                      weight2_of)
from .exactfield import (ALPHA, DELTA, LAMBDA_SYM, ONE, ZERO, Scalar,
                         ScalarError, rat, render_scalar)
from .grassmann import contact_bracket, gmono
from .linalg import Echelon, nullspace, solve_unique
from .verma import PBWKey, VermaVector, act, build_module


class LambdaError(ValueError):
    pass


def _scal(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return rat(x)
    raise LambdaError("cannot use %r as a coefficient" % (x,))


def _acc(terms, key, c):
    w = terms.get(key)
    nv = w + c if w is not None else c
    if nv:
        terms[key] = nv
    else:
        terms.pop(key, None)


class LambdaPoly(object):
    """Polynomial in d, lam, mu over a generator set.

    terms: {(gen, dpow, lampow, mupow): Scalar}, zero coefficients
    dropped.  d multiplies formally (it commutes with everything at
    this level; the evaluators put it in the right place).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, c in terms.items():
                _acc(self.terms, k, c)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def gen(cls, label):
        return cls({(label, 0, 0, 0): ONE})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        return self.terms == other.terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return LambdaPoly(out)

    def __sub__(self, other):
        return self + other.scale(rat(-1))

    def __neg__(self):
        return self.scale(rat(-1))

    def scale(self, c):
        c = _scal(c)
        if not c:
            return LambdaPoly()
        return LambdaPoly({k: v * c for k, v in self.terms.items()})

    def shift(self, dpow=0, lampow=0, mupow=0):
        """Multiply by d^dpow lam^lampow mu^mupow."""
        return LambdaPoly({(g, d + dpow, l + lampow, m + mupow): c
                           for (g, d, l, m), c in self.terms.items()})

    def mul_linear(self, const, c_d, c_lam, c_mu, power=1):
        """Multiply by (const + c_d*d + c_lam*lam + c_mu*mu)^power."""
        out = self
        coeffs = (_scal(const), _scal(c_d), _scal(c_lam), _scal(c_mu))
        for _ in range(power):
            acc = {}
            for (g, d, l, m), c in out.terms.items():
                for i, f in enumerate(coeffs):
                    if not f:
                        continue
                    k = (g, d + (i == 1), l + (i == 2), m + (i == 3))
                    _acc(acc, k, c * f)
            out = LambdaPoly(acc)
        return out

    def lam_to_mu(self):
        """Rename lam to mu; the operand must be mu-free."""
        out = {}
        for (g, d, l, m), c in self.terms.items():
            if m:
                raise LambdaError("operand already uses mu")
            out[(g, d, 0, l)] = c
        return LambdaPoly(out)

    def lam_to_sum(self):
        """Substitute lam -> lam + mu; the operand must be mu-free."""
        out = {}
        for (g, d, l, m), c in self.terms.items():
            if m:
                raise LambdaError("operand already uses mu")
            for k in range(l + 1):
                _acc(out, (g, d, k, l - k), c * rat(comb(l, k)))
        return LambdaPoly(out)

    def lam_to_opposite(self):
        """Substitute lam -> -lam-d (the skew-symmetry substitution)."""
        out = {}
        for (g, d, l, m), c in self.terms.items():
            if m:
                raise LambdaError("operand already uses mu")
            s = c if l % 2 == 0 else -c
            for k in range(l + 1):
                _acc(out, (g, d + l - k, k, 0), s * rat(comb(l, k)))
        return LambdaPoly(out)

    def lam_coefficient(self, n):
        """The coefficient of lam^n as {(gen, dpow): Scalar}; mu-free."""
        out = {}
        for (g, d, l, m), c in self.terms.items():
            if m:
                raise LambdaError("operand already uses mu")
            if l == n:
                _acc(out, (g, d), c)
        return out

    def lam_degree(self):
        return max((l for (_, _, l, _) in self.terms), default=-1)

    def map_scalars(self, f):
        return LambdaPoly({k: f(c) for k, c in self.terms.items()})

    def subs(self, bindings):
        return self.map_scalars(lambda c: c.subs(bindings))

    def rename_gens(self, mapping):
        out = {}
        for (g, d, l, m), c in self.terms.items():
            _acc(out, (mapping.get(g, g), d, l, m), c)
        return LambdaPoly(out)

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            g, d, l, m = key
            factors = ["(%s)" % render_scalar(self.terms[key])]
            if d:
                factors.append("d" if d == 1 else "d^%d" % d)
            if l:
                factors.append("lam" if l == 1 else "lam^%d" % l)
            if m:
                factors.append("mu" if m == 1 else "mu^%d" % m)
            factors.append(g)
            parts.append(" ".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return "LambdaPoly(%s)" % self.render()


def _poly(*terms):
    """Build a mu-free LambdaPoly from (gen, dpow, lampow, coeff)."""
    out = {}
    for g, d, l, c in terms:
        _acc(out, (g, d, l, 0), _scal(c))
    return LambdaPoly(out)


def skew_flip(poly, sign_odd):
    """b_lam a from a_lam b: -(-1)^{p(a)p(b)} (a_{-lam-d} b)."""
    out = poly.lam_to_opposite()
    return out if sign_odd else -out


# -- specs ----------------------------------------------------------------


class ConformalAlgebraSpec(object):
    """Generator labels with parities plus the full lambda-bracket
    table; missing orientations are filled in through skew symmetry."""

    def __init__(self, name, gens, parity, entries):
        self.name = name
        self.gens = tuple(gens)
        self.parity = dict(parity)
        table = {}
        for a in self.gens:
            for b in self.gens:
                given = entries.get((a, b))
                mirror = entries.get((b, a))
                if given is None and mirror is None:
                    table[(a, b)] = LambdaPoly.zero()
                elif given is not None:
                    table[(a, b)] = given
                else:
                    table[(a, b)] = skew_flip(
                        mirror, self.parity[a] and self.parity[b])
        for (a, b), p in table.items():
            for (g, _, _, m) in p.terms:
                if m:
                    raise LambdaError("bracket table entry uses mu")
                if g not in self.parity:
                    raise LambdaError("unknown generator %r in table" % (g,))
        self.table = table

    def entry(self, a, b):
        try:
            return self.table[(a, b)]
        except KeyError:
            raise LambdaError("no bracket entry for (%s, %s)" % (a, b))


class ConformalModuleSpec(object):
    """Free-module generator labels with parities plus the full
    lambda-action table of an algebra generator set on them."""

    def __init__(self, name, alg_gens, alg_parity, gens, parity, entries,
                 params=None):
        self.name = name
        self.alg_gens = tuple(alg_gens)
        self.alg_parity = dict(alg_parity)
        self.gens = tuple(gens)
        self.parity = dict(parity)
        self.params = dict(params or {})
        table = {}
        for a in self.alg_gens:
            for v in self.gens:
                table[(a, v)] = entries.get((a, v), LambdaPoly.zero())
        for p in table.values():
            for (g, _, _, m) in p.terms:
                if m:
                    raise LambdaError("action table entry uses mu")
                if g not in self.parity:
                    raise LambdaError("unknown module generator %r" % (g,))
        self.action = table

    def entry(self, a, v):
        try:
            return self.action[(a, v)]
        except KeyError:
            raise LambdaError("no action entry for (%s, %s)" % (a, v))


# -- evaluation -----------------------------------------------------------

_LAM = "l"
_MU = "m"


def _as_elem(x):
    if isinstance(x, LambdaPoly):
        return x
    return LambdaPoly.gen(x)


def _apply_gen(table, x, operand, var):
    """x_var(operand) where operand may carry d, lam and mu powers and
    table maps (x, gen) to the mu-free lambda-form products."""
    out = LambdaPoly.zero()
    for (z, d, l, m), c in operand.terms.items():
        base = table.get((x, z))
        if base is None:
            raise LambdaError("no table entry for (%s, %s)" % (x, z))
        if var == _MU:
            base = base.lam_to_mu()
        if d:
            base = base.mul_linear(ZERO, ONE, ONE if var == _LAM else ZERO,
                                   ONE if var == _MU else ZERO, d)
        out = out + base.shift(lampow=l, mupow=m).scale(c)
    return out


def _apply_elem(table, a, operand, var):
    """Bilinear extension of _apply_gen to a C[d]-combination on the
    left; (d^k x)_var picks up (-var)^k."""
    out = LambdaPoly.zero()
    for (x, dx, l, m), c in a.terms.items():
        if l or m:
            raise LambdaError("acting element carries a formal variable")
        t = _apply_gen(table, x, operand, var)
        if dx:
            t = t.shift(lampow=dx if var == _LAM else 0,
                        mupow=dx if var == _MU else 0)
            if dx % 2:
                t = -t
        out = out + t.scale(c)
    return out


def lambda_bracket(R, a, b):
    """a_lam b extended bilinearly over C[d] on both sides."""
    return _apply_elem(R.table, _as_elem(a), _as_elem(b), _LAM)


def module_action(Ms, a, w):
    """a_lam w for an algebra element a and a module element w."""
    return _apply_elem(Ms.action, _as_elem(a), _as_elem(w), _LAM)


def _composite_action(table, ab, c_elem):
    """(ab)_{lam+mu} c for a lambda-form element ab of the algebra."""
    out = LambdaPoly.zero()
    for (z, d, l, m), s in ab.terms.items():
        if m:
            raise LambdaError("composite element uses mu")
        t = _apply_gen(table, z, c_elem, _LAM)
        t = t.lam_to_sum()
        if d:
            # (d z)_{nu} picks up (-nu) with nu = lam + mu
            t = t.mul_linear(ZERO, ZERO, rat(-1), rat(-1), d)
        out = out + t.shift(lampow=l).scale(s)
    return out


def jacobi_residual(R, a, b, c):
    """a_lam(b_mu c) - (-1)^{p(a)p(b)} b_mu(a_lam c)
    - (a_lam b)_{lam+mu} c."""
    t1 = _apply_gen(R.table, a, R.entry(b, c).lam_to_mu(), _LAM)
    t2 = _apply_gen(R.table, b, R.entry(a, c), _MU)
    t3 = _composite_action(R.table, R.entry(a, b), _as_elem(c))
    if R.parity[a] and R.parity[b]:
        t2 = -t2
    return t1 - t2 - t3


def commutator_residual(R, Ms, a, b, v):
    """The module analogue of the Jacobi residual."""
    t1 = _apply_gen(Ms.action, a, Ms.entry(b, v).lam_to_mu(), _LAM)
    t2 = _apply_gen(Ms.action, b, Ms.entry(a, v), _MU)
    t3 = _composite_action(Ms.action, R.entry(a, b), _as_elem(v))
    if R.parity[a] and R.parity[b]:
        t2 = -t2
    return t1 - t2 - t3


AxiomReport = namedtuple("AxiomReport", ["ok", "checked", "failures"])


def check_conformal_axioms(R):
    """Sesquilinearity, skew symmetry (with its involutivity) and the
    Jacobi identity over all generator pairs and triples."""
    failures = []
    checked = 0
    for a in R.gens:
        for b in R.gens:
            checked += 1
            da = LambdaPoly({(a, 1, 0, 0): ONE})
            r = lambda_bracket(R, da, b) \
                + lambda_bracket(R, a, b).shift(lampow=1)
            if r:
                failures.append(("sesquilinearity", (a, b), r.render()))
            sign_odd = R.parity[a] and R.parity[b]
            flipped = skew_flip(R.entry(a, b), sign_odd)
            if flipped != R.entry(b, a):
                failures.append(("skew", (a, b),
                                 (flipped - R.entry(b, a)).render()))
            twice = skew_flip(flipped, sign_odd)
            if twice != R.entry(a, b):
                failures.append(("skew-involution", (a, b),
                                 (twice - R.entry(a, b)).render()))
    for a in R.gens:
        for b in R.gens:
            for c in R.gens:
                checked += 1
                r = jacobi_residual(R, a, b, c)
                if r:
                    failures.append(("jacobi", (a, b, c), r.render()))
    return AxiomReport(not failures, checked, failures)


def check_module_axioms(R, Ms):
    """The derivative rule and the commutator rule over all algebra
    generator pairs and module generators."""
    if tuple(Ms.alg_gens) != tuple(R.gens):
        raise LambdaError("module spec belongs to a different algebra")
    failures = []
    checked = 0
    for a in R.gens:
        for v in Ms.gens:
            checked += 1
            da = LambdaPoly({(a, 1, 0, 0): ONE})
            r = module_action(Ms, da, v) \
                + module_action(Ms, a, v).shift(lampow=1)
            if r:
                failures.append(("derivative", (a, v), r.render()))
    for a in R.gens:
        for b in R.gens:
            for v in Ms.gens:
                checked += 1
                r = commutator_residual(R, Ms, a, b, v)
                if r:
                    failures.append(("commutator", (a, b, v), r.render()))
    return AxiomReport(not failures, checked, failures)


# -- hand-built tables ----------------------------------------------------


def virasoro_algebra():
    return ConformalAlgebraSpec(
        "virasoro", ("L",), {"L": 0},
        {("L", "L"): _poly(("L", 1, 0, ONE), ("L", 0, 1, 2))})


_SL2 = ("E", "H", "F")


def _sl2_entries():
    return {
        ("H", "E"): _poly(("E", 0, 0, 2)),
        ("H", "F"): _poly(("F", 0, 0, -2)),
        ("E", "F"): _poly(("H", 0, 0, ONE)),
    }


def sl2_current_algebra():
    return ConformalAlgebraSpec(
        "current-sl2", _SL2, {g: 0 for g in _SL2}, _sl2_entries())


def sl2_semidirect_algebra():
    gens = ("L",) + _SL2
    entries = _sl2_entries()
    entries[("L", "L")] = _poly(("L", 1, 0, ONE), ("L", 0, 1, 2))
    for g in _SL2:
        entries[("L", g)] = _poly((g, 1, 0, ONE), (g, 0, 1, ONE))
    return ConformalAlgebraSpec(
        "virasoro-sl2", gens, {g: 0 for g in gens}, entries)


def n2_algebra():
    gens = ("L", "J", "Gp", "Gm")
    parity = {"L": 0, "J": 0, "Gp": 1, "Gm": 1}
    entries = {
        ("L", "L"): _poly(("L", 1, 0, ONE), ("L", 0, 1, 2)),
        ("L", "J"): _poly(("J", 1, 0, ONE), ("J", 0, 1, ONE)),
        ("L", "Gp"): _poly(("Gp", 1, 0, ONE), ("Gp", 0, 1, rat(3, 2))),
        ("L", "Gm"): _poly(("Gm", 1, 0, ONE), ("Gm", 0, 1, rat(3, 2))),
        ("J", "Gp"): _poly(("Gp", 0, 0, ONE)),
        ("J", "Gm"): _poly(("Gm", 0, 0, -1)),
        ("Gp", "Gm"): _poly(("J", 1, 0, ONE), ("J", 0, 1, 2),
                            ("L", 0, 0, 2)),
    }
    return ConformalAlgebraSpec("n2", gens, parity, entries)


def virasoro_module(alpha=ALPHA, delta=DELTA):
    alpha, delta = _scal(alpha), _scal(delta)
    entries = {("L", "v"): _poly(("v", 1, 0, ONE), ("v", 0, 0, alpha),
                                 ("v", 0, 1, delta))}
    return ConformalModuleSpec(
        "virasoro-family", ("L",), {"L": 0}, ("v",), {"v": 0}, entries,
        {"alpha": alpha, "delta": delta})


def _n2_base(alpha, delta, gens, parity, entries, name, lam=None):
    alg = n2_algebra()
    params = {"alpha": alpha, "delta": delta}
    if lam is not None:
        params["lambda"] = lam
    return ConformalModuleSpec(name, alg.gens, alg.parity, gens, parity,
                               entries, params)


def n2_module_rank4(alpha=ALPHA, delta=DELTA, lam=LAMBDA_SYM):
    """The free rank-4 family v, v+, v-, v+- (generic weights)."""
    al, de, la = _scal(alpha), _scal(delta), _scal(lam)
    half = rat(1, 2)
    e = {
        ("L", "v"): _poly(("v", 1, 0, ONE), ("v", 0, 0, al),
                          ("v", 0, 1, de)),
        ("L", "v+"): _poly(("v+", 1, 0, ONE), ("v+", 0, 0, al),
                           ("v+", 0, 1, de + half)),
        ("L", "v-"): _poly(("v-", 1, 0, ONE), ("v-", 0, 0, al),
                           ("v-", 0, 1, de + half)),
        ("L", "v+-"): _poly(("v+-", 1, 0, ONE), ("v+-", 0, 0, al),
                            ("v+-", 0, 1, de + ONE),
                            ("v", 0, 2, de + la * half)),
        ("J", "v"): _poly(("v", 0, 0, la)),
        ("J", "v+"): _poly(("v+", 0, 0, la + ONE)),
        ("J", "v-"): _poly(("v-", 0, 0, la - ONE)),
        ("J", "v+-"): _poly(("v+-", 0, 0, la),
                            ("v", 0, 1, de * rat(2) + la)),
        ("Gp", "v"): _poly(("v+", 0, 0, ONE)),
        ("Gm", "v"): _poly(("v-", 0, 0, ONE)),
        ("Gp", "v-"): _poly(("v+-", 0, 0, ONE),
                            ("v", 0, 1, de * rat(2) + la)),
        ("Gm", "v+"): _poly(("v", 1, 0, 2), ("v", 0, 0, al * rat(2)),
                            ("v", 0, 1, de * rat(2) - la),
                            ("v+-", 0, 0, -1)),
        ("Gp", "v+-"): _poly(("v+", 0, 1, -(de * rat(2) + la))),
        ("Gm", "v+-"): _poly(("v-", 1, 0, 2), ("v-", 0, 0, al * rat(2)),
                             ("v-", 0, 1, de * rat(2) + rat(2) - la)),
    }
    gens = ("v", "v+", "v-", "v+-")
    parity = {"v": 0, "v+": 1, "v-": 1, "v+-": 0}
    return _n2_base(al, de, gens, parity, e, "n2-rank4", la)


def n2_module_rank2_plus(alpha=ALPHA, delta=DELTA):
    """The rank-2 family v, v+ on which J acts by -2*Delta."""
    al, de = _scal(alpha), _scal(delta)
    half = rat(1, 2)
    e = {
        ("L", "v"): _poly(("v", 1, 0, ONE), ("v", 0, 0, al),
                          ("v", 0, 1, de)),
        ("L", "v+"): _poly(("v+", 1, 0, ONE), ("v+", 0, 0, al),
                           ("v+", 0, 1, de + half)),
        ("J", "v"): _poly(("v", 0, 0, de * rat(-2))),
        ("J", "v+"): _poly(("v+", 0, 0, ONE - de * rat(2))),
        ("Gp", "v"): _poly(("v+", 0, 0, ONE)),
        ("Gm", "v+"): _poly(("v", 1, 0, 2), ("v", 0, 0, al * rat(2)),
                            ("v", 0, 1, de * rat(4))),
    }
    return _n2_base(al, de, ("v", "v+"), {"v": 0, "v+": 1}, e,
                    "n2-rank2-plus")


def n2_module_rank2_minus(alpha=ALPHA, delta=DELTA):
    """The rank-2 family v, v- on which J acts by 2*Delta."""
    al, de = _scal(alpha), _scal(delta)
    half = rat(1, 2)
    e = {
        ("L", "v"): _poly(("v", 1, 0, ONE), ("v", 0, 0, al),
                          ("v", 0, 1, de)),
        ("L", "v-"): _poly(("v-", 1, 0, ONE), ("v-", 0, 0, al),
                           ("v-", 0, 1, de + half)),
        ("J", "v"): _poly(("v", 0, 0, de * rat(2))),
        ("J", "v-"): _poly(("v-", 0, 0, de * rat(2) - ONE)),
        ("Gm", "v"): _poly(("v-", 0, 0, ONE)),
        ("Gp", "v-"): _poly(("v", 1, 0, 2), ("v", 0, 0, al * rat(2)),
                            ("v", 0, 1, de * rat(4))),
    }
    return _n2_base(al, de, ("v", "v-"), {"v": 0, "v-": 1}, e,
                    "n2-rank2-minus")


def alpha_twist(Ms, alpha):
    """Shift d to d + alpha in every action coefficient (the uniform
    one-parameter deformation of a conformal module)."""
    alpha = _scal(alpha)
    entries = {}
    for (a, v), p in Ms.action.items():
        out = {}
        for (g, d, l, m), c in p.terms.items():
            pw = ONE
            for k in range(d, -1, -1):
                _acc(out, (g, k, l, m), c * rat(comb(d, k)) * pw)
                pw = pw * alpha
        entries[(a, v)] = LambdaPoly(out)
    params = dict(Ms.params)
    params["alpha"] = params.get("alpha", ZERO) + alpha
    return ConformalModuleSpec(Ms.name, Ms.alg_gens, Ms.alg_parity,
                               Ms.gens, Ms.parity, entries, params)


# -- reconstruction from mode structure constants -------------------------


def _phys_mode2(gen, idx):
    """Doubled physics mode of the idx-th nonneg product of gen."""
    return 2 * idx + 2 - weight2_of(gen)


def _falling(r, d):
    out = 1
    for i in range(d):
        out *= r - i
    return out


_SAMPLE_IDX = (2, 3, 4)


def _solve_products(alg, x, y):
    """Recover x_lam y as a LambdaPoly from sampled mode brackets.

    Works at mode indices away from any boundary identifications, then
    relies on mode_table_check for validation over the full range."""
    w2x, w2y = weight2_of(x), weight2_of(y)
    samples = []
    for p in _SAMPLE_IDX:
        for q in _SAMPLE_IDX:
            br = bracket(alg, GenMode(x, _phys_mode2(x, p)),
                         GenMode(y, _phys_mode2(y, q)))
            samples.append((p, q, br))
    out = {}
    seen = set()
    for _, _, br in samples:
        seen.update(gm.gen for gm in br)
    for z in generators(alg):
        num2 = w2x + w2y - 2 - weight2_of(z)
        if num2 < 0 or num2 % 2:
            if z in seen:
                raise LambdaError(
                    "%s appears in [%s, %s] with impossible weight"
                    % (z, x, y))
            continue
        deg = num2 // 2
        rows, rhs = [], []
        for p, q, br in samples:
            m2out = _phys_mode2(x, p) + _phys_mode2(y, q)
            row = {}
            for j in range(deg + 1):
                d = deg - j
                c = _falling(p, j) * _falling(p + q - j, d)
                if d % 2:
                    c = -c
                if c:
                    row[j] = rat(c)
            rows.append(row)
            rhs.append(br.get(GenMode(z, m2out), ZERO))
        try:
            sol = solve_unique(rows, rhs, list(range(deg + 1)))
        except ScalarError:
            raise LambdaError(
                "mode samples for [%s, %s] -> %s are not polynomial"
                % (x, y, z))
        for j, s in sol.items():
            _acc(out, (z, deg - j, j, 0), s)
    return LambdaPoly(out)


def algebra_spec_from_modes(alg):
    """Conformal-algebra spec reconstructed from the mode tables."""
    alg = normalize_alg(alg)
    gens = generators(alg)
    entries = {}
    for x in gens:
        for y in gens:
            entries[(x, y)] = _solve_products(alg, x, y)
    return ConformalAlgebraSpec(alg, gens,
                                {g: parity_of(g) for g in gens}, entries)


def _predict_mode_bracket(alg, R, x, y, p, q):
    """[x_[p], y_[q]] predicted by the lambda table, as a mode dict."""
    out = {}
    for (z, d, l, _), c in R.entry(x, y).terms.items():
        r = p + q - l - d
        fac = _falling(p, l) * _falling(p + q - l, d)
        if d % 2:
            fac = -fac
        s = c * rat(fac)
        if not s:
            continue
        gm = canonical_genmode(alg, GenMode(z, 2 * r + 2 - weight2_of(z)))
        _acc(out, gm, s)
    return out


def mode_table_check(alg, R, idx_range=range(0, 4)):
    """Compare the lambda table against the mode structure constants
    over a grid of nonneg product indices (which for n4b includes the
    boundary identifications).  Returns a list of mismatches."""
    alg = normalize_alg(alg)
    bad = []
    for x in R.gens:
        for y in R.gens:
            for p in idx_range:
                for q in idx_range:
                    want = bracket(alg, GenMode(x, _phys_mode2(x, p)),
                                   GenMode(y, _phys_mode2(y, q)))
                    got = _predict_mode_bracket(alg, R, x, y, p, q)
                    if got != {k: v for k, v in want.items() if v}:
                        bad.append((x, y, p, q))
    return bad


# -- action tables generated from the induced-module engine ---------------


def _key_label(M, key):
    parts = []
    for i, g in enumerate(M.odd_gens):
        if (key.oddmask >> i) & 1:
            parts.append(g.gen)
    if M.alg == N4B:
        j, k = key.wt
        if j:
            parts.append("F0" if j == 1 else "F0^%d" % j)
        if k:
            parts.append("Fbar0" if k == 1 else "Fbar0^%d" % k)
    elif M.alg != N2 and key.wt:
        parts.append("F0" if key.wt == 1 else "F0^%d" % key.wt)
    parts.append("v")
    return ".".join(parts)


def action_table_from_pbw(alg, delta=None, lam=None, lam_bar=None):
    """Lambda-action table of the full induced module, read off from
    the exact mode action on its C[d]-basis."""
    alg = normalize_alg(alg)
    if delta is None:
        delta = DELTA
    if lam is None:
        if alg != N2:
            raise LambdaError("a concrete highest weight is needed")
        lam = LAMBDA_SYM
    M = build_module(alg, delta, lam, lam_bar)
    keys = []
    for lv2 in range(M.n_odd + 1):
        keys.extend(k for k in M.keys_at_level2(lv2) if k.dpow == 0)
    keys.sort()
    labels = {k: _key_label(M, k) for k in keys}
    gens = tuple(labels[k] for k in keys)
    parity = {labels[k]: bin(k.oddmask).count("1") & 1 for k in keys}
    entries = {}
    for x in generators(alg):
        w2 = weight2_of(x)
        for key in keys:
            wvec = VermaVector(M, {key: ONE})
            terms = {}
            n = 0
            while 2 * n + 2 - w2 <= M.n_odd:
                res = act(M, GenMode(x, 2 * n + 2 - w2), wvec)
                inv_fact = rat(1, factorial(n))
                for k2, c in res.terms.items():
                    base = PBWKey(0, k2.oddmask, k2.wt)
                    _acc(terms, (labels[base], k2.dpow, n, 0),
                         c * inv_fact)
                n += 1
            entries[(x, labels[key])] = LambdaPoly(terms)
    params = {"delta": M.delta, "lambda": M.lam}
    if alg == N4B:
        params["lambdaBar"] = M.lam_bar
    return ConformalModuleSpec(
        "%s-induced" % alg, generators(alg),
        {g: parity_of(g) for g in generators(alg)},
        gens, parity, entries, params)


# -- big N=4 over the monomial towers --------------------------------------
#
# algebra_spec_from_modes refuses n4b because the barred generators are
# not free over C[d].  The sixteen towers xi_S t^n are, so the big
# algebra gets its lambda table solved from raw contact brackets of
# monomials instead, and the induced-module action is re-expressed over
# the same towers through the generator-span expansion.


def _tower_label(xs):
    return "xi" + "".join(str(j) for j in xs) if xs else "one"


_TOWER_XS = tuple(xs for size in range(5)
                  for xs in combinations((1, 2, 3, 4), size))
_TOWER_OF = {_tower_label(xs): xs for xs in _TOWER_XS}
TOWER_GENS = tuple(_tower_label(xs) for xs in _TOWER_XS)


def tower_weight2(label):
    return 4 - len(_TOWER_OF[label])


def _tower_parities():
    return {g: len(_TOWER_OF[g]) & 1 for g in TOWER_GENS}


def _tower_bracket(xl, p, yl, q):
    """Mode bracket [x_[p], y_[q]] of two towers, keyed (tower, index)."""
    fb = contact_bracket(gmono(p, _TOWER_OF[xl]), gmono(q, _TOWER_OF[yl]))
    return {(_tower_label(xs), tp): c for (tp, xs), c in fb.terms.items()}


def _solve_tower_products(xl, yl):
    w2x, w2y = tower_weight2(xl), tower_weight2(yl)
    samples = [(p, q, _tower_bracket(xl, p, yl, q))
               for p in _SAMPLE_IDX for q in _SAMPLE_IDX]
    seen = set()
    for _, _, br in samples:
        seen.update(z for z, _ in br)
    out = {}
    for z in TOWER_GENS:
        num2 = w2x + w2y - 2 - tower_weight2(z)
        if num2 < 0 or num2 % 2:
            if z in seen:
                raise LambdaError(
                    "%s appears in [%s, %s] with impossible weight"
                    % (z, xl, yl))
            continue
        deg = num2 // 2
        rows, rhs = [], []
        for p, q, br in samples:
            row = {}
            for j in range(deg + 1):
                d = deg - j
                c = _falling(p, j) * _falling(p + q - j, d)
                if d % 2:
                    c = -c
                if c:
                    row[j] = rat(c)
            rows.append(row)
            rhs.append(br.get((z, p + q - deg), ZERO))
        try:
            sol = solve_unique(rows, rhs, list(range(deg + 1)))
        except ScalarError:
            raise LambdaError(
                "mode samples for [%s, %s] -> %s are not polynomial"
                % (xl, yl, z))
        for j, s in sol.items():
            _acc(out, (z, deg - j, j, 0), s)
    return LambdaPoly(out)


def big_n4_tower_algebra():
    """Conformal algebra of the full N=4 contact superalgebra, solved
    over the sixteen monomial towers."""
    entries = {}
    for xl in TOWER_GENS:
        for yl in TOWER_GENS:
            poly = _solve_tower_products(xl, yl)
            if poly:
                entries[(xl, yl)] = poly
    return ConformalAlgebraSpec("n4-towers", TOWER_GENS,
                                _tower_parities(), entries)


def tower_mode_check(R, idx_range=range(0, 4)):
    """Compare a tower lambda table against raw contact brackets over a
    grid of product indices.  Returns a list of mismatches."""
    bad = []
    for x in R.gens:
        for y in R.gens:
            for p in idx_range:
                for q in idx_range:
                    want = {k: v
                            for k, v in _tower_bracket(x, p, y, q).items()
                            if v}
                    got = {}
                    for (z, d, l, _), c in R.entry(x, y).terms.items():
                        fac = _falling(p, l) * _falling(p + q - l, d)
                        if d % 2:
                            fac = -fac
                        s = c * rat(fac)
                        if s:
                            _acc(got, (z, p + q - l - d), s)
                    if got != want:
                        bad.append((x, y, p, q))
    return bad


def big_n4_action_table(delta=None, lam=None, lam_bar=None):
    """Lambda-action table of the big N=4 induced module, read off from
    the exact mode action and expressed over the monomial towers."""
    if delta is None:
        delta = DELTA
    M = build_module(N4B, delta, lam, lam_bar)
    keys = []
    for lv2 in range(M.n_odd + 1):
        keys.extend(k for k in M.keys_at_level2(lv2) if k.dpow == 0)
    keys.sort()
    labels = {k: _key_label(M, k) for k in keys}
    gens = tuple(labels[k] for k in keys)
    parity = {labels[k]: bin(k.oddmask).count("1") & 1 for k in keys}
    entries = {}
    for xl in TOWER_GENS:
        xs = _TOWER_OF[xl]
        for key in keys:
            wvec = VermaVector(M, {key: ONE})
            terms = {}
            n = 0
            while 2 * n + len(xs) - 2 <= M.n_odd:
                ops = expand_n4b(gmono(n, xs), 2 * n + len(xs) - 2)
                inv_fact = rat(1, factorial(n))
                for gm, c0 in ops.items():
                    res = act(M, gm, wvec)
                    for k2, c in res.terms.items():
                        base = PBWKey(0, k2.oddmask, k2.wt)
                        _acc(terms, (labels[base], k2.dpow, n, 0),
                             c * c0 * inv_fact)
                n += 1
            entries[(xl, labels[key])] = LambdaPoly(terms)
    params = {"delta": M.delta, "lambda": M.lam, "lambdaBar": M.lam_bar}
    return ConformalModuleSpec("n4-towers-induced", TOWER_GENS,
                               _tower_parities(), gens, parity, entries,
                               params)


# -- the algebra as a module over itself -----------------------------------


def adjoint_module(R):
    return ConformalModuleSpec("%s-adjoint" % R.name, R.gens, R.parity,
                               R.gens, R.parity, dict(R.table))


AdjointReport = namedtuple(
    "AdjointReport",
    ["ok", "axioms_ok", "singular_ok", "generates_ok", "rank_ok",
     "singular", "detail"])


def _vec_add(acc, vec, c):
    for k, v in vec.items():
        _acc(acc, k, v * c)


def _op_image(Ms, a, n, vec):
    """n!-normalized lam^n product of a applied to {(gen,d): Scalar}."""
    out = {}
    for (g, d), c in vec.items():
        base = Ms.entry(a, g)
        if d:
            base = base.mul_linear(ZERO, ONE, ONE, ZERO, d)
        _vec_add(out, base.lam_coefficient(n), c * rat(factorial(n)))
    return out


def adjoint_identification(alg, delta, lam, lam_bar=None, R=None):
    """Verify that the algebra acting on itself is the irreducible
    module with the stated weights: the action satisfies the module
    axioms, there is exactly one weight generator killed by every
    positive product (and by the sl2 raising where present), its
    weights match, it generates everything, and the irreducible rank
    at those weights equals the number of generators."""
    from .classify import classification_row
    alg = normalize_alg(alg)
    if R is None:
        R = algebra_spec_from_modes(alg)
    Ms = adjoint_module(R)
    ax = check_module_axioms(R, Ms)
    detail = []
    # positive products and the raising constraint on a C-combination
    # of generators
    maxdeg = max(p.lam_degree() for p in Ms.action.values())
    cons = []
    for a in R.gens:
        w2 = weight2_of(a)
        for n in range(0, maxdeg + 2):
            if 2 * n + 2 - w2 <= 0 and not (n == 0 and a in ("E", "E_bar")):
                continue
            for x in R.gens:
                img = _op_image(Ms, a, n, {(x, 0): ONE})
                for k, c in img.items():
                    cons.append(((a, n, k), x, c))
    rows = {}
    for rk, col, c in cons:
        rows.setdefault(rk, {})[col] = c
    sols = nullspace(list(rows.values()), list(R.gens))
    singular_ok = len(sols) == 1
    singular = tuple(sorted(sols[0])) if sols else ()
    if not singular_ok:
        detail.append("singular space has dimension %d" % len(sols))
    de, la = _scal(Fraction(delta)), _scal(Fraction(lam))
    gen_vec = {(g, 0): c for g, c in sols[0].items()} if sols else {}
    if singular_ok:
        ell = _op_image(Ms, "L", 1, gen_vec)
        want = {k: v * de for k, v in gen_vec.items()}
        if ell != want:
            singular_ok = False
            detail.append("conformal weight mismatch")
        cartan = "H" if "H" in R.gens else "J"
        h0 = _op_image(Ms, cartan, 0, gen_vec)
        want = {k: v * la for k, v in gen_vec.items() if v * la}
        if h0 != want:
            singular_ok = False
            detail.append("charge mismatch")
    # generation: close the span of the singular vector under d and all
    # nonneg products, then ask for every generator
    generates_ok = False
    if sols:
        dcut = 4
        keys = [(g, d) for d in range(dcut + 1) for g in R.gens]
        pos = {k: i for i, k in enumerate(keys)}
        ech = Echelon(lambda k: pos[k])
        queue = [dict(gen_vec)]
        while queue:
            vec = queue.pop()
            vec = {k: c for k, c in vec.items() if k[1] <= dcut}
            if not vec or ech.insert(vec) is None:
                continue
            queue.append({(g, d + 1): c for (g, d), c in vec.items()})
            for a in R.gens:
                for n in range(0, maxdeg + 2):
                    img = _op_image(Ms, a, n, vec)
                    if img:
                        queue.append(img)
        generates_ok = all(ech.contains({(g, 0): ONE}) for g in R.gens)
        if not generates_ok:
            detail.append("singular vector does not generate")
    row = classification_row(alg, Fraction(delta), Fraction(lam),
                             Fraction(lam_bar) if lam_bar is not None
                             else None)
    rank_ok = row.rank == len(R.gens)
    if not rank_ok:
        detail.append("irreducible rank %r != %d generators"
                      % (row.rank, len(R.gens)))
    ok = ax.ok and singular_ok and generates_ok and rank_ok
    if not ax.ok:
        detail.append("module axioms fail: %r" % (ax.failures[:3],))
    return AdjointReport(ok, ax.ok, singular_ok, generates_ok, rank_ok,
                         singular, tuple(detail))


# -- serialization ----------------------------------------------------------


def lambda_poly_to_json(p):
    out = []
    for key in sorted(p.terms):
        g, d, l, m = key
        out.append({"gen": g, "dpow": d, "lampow": l, "mupow": m,
                    "coeff": render_scalar(p.terms[key])})
    return out


def algebra_spec_to_json(R):
    return {
        "schema": 1,
        "kind": "conformal-algebra",
        "name": R.name,
        "generators": [{"name": g, "parity": R.parity[g]} for g in R.gens],
        "table": [{"a": a, "b": b,
                   "terms": lambda_poly_to_json(R.entry(a, b))}
                  for a in R.gens for b in R.gens],
    }


def module_spec_to_json(Ms):
    return {
        "schema": 1,
        "kind": "conformal-module",
        "name": Ms.name,
        "algebraGenerators": [{"name": g, "parity": Ms.alg_parity[g]}
                              for g in Ms.alg_gens],
        "generators": [{"name": g, "parity": Ms.parity[g]}
                       for g in Ms.gens],
        "params": {k: render_scalar(v) for k, v in sorted(Ms.params.items())},
        "action": [{"a": a, "v": v,
                    "terms": lambda_poly_to_json(Ms.entry(a, v))}
                   for a in Ms.alg_gens for v in Ms.gens],
    }
