"""Exact scalar arithmetic.

Three layers, all immutable and exact (no floats anywhere):

  Cyc8      -- the number field Q(i, sqrt2), stored as four Fractions
               a + b*I + c*SQRT2 + d*I*SQRT2.
  ParamPoly -- sparse polynomials in the formal parameters Delta, alpha,
               LambdaSym with Cyc8 coefficients.
  Scalar    -- quotients num/den of ParamPolys, kept normalized
               (gcd removed, denominator leading coefficient 1).

Scalars render to a deterministic ASCII form and parse back.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce

PARAMS = ("Delta", "alpha", "LambdaSym")
NPARAMS = len(PARAMS)
_ZEXP = (0,) * NPARAMS


class ScalarError(ValueError):
    pass


class ScalarDivisionError(ScalarError, ZeroDivisionError):
    """Division by a zero scalar."""


class UnboundParameterError(ScalarError):
    """eval() did not receive a binding for a parameter that occurs."""


class EvalPoleError(ScalarError, ZeroDivisionError):
    """A denominator vanishes at the requested binding."""


class Cyc8:
    """a + b*I + c*SQRT2 + d*I*SQRT2 with rational a, b, c, d.

    This is Q(i, sqrt 2), the 8th cyclotomic field; it is closed under
    the four operations, which is all the generator formulas need
    (factors of i and 1/sqrt2 appear in the N=2 and N=4 families).
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a = a if type(a) is Fraction else Fraction(a)
        self.b = b if type(b) is Fraction else Fraction(b)
        self.c = c if type(c) is Fraction else Fraction(c)
        self.d = d if type(d) is Fraction else Fraction(d)

    def __bool__(self):
        return bool(self.a or self.b or self.c or self.d)

    def __eq__(self, other):
        if not isinstance(other, Cyc8):
            return NotImplemented
        return (self.a == other.a and self.b == other.b
                and self.c == other.c and self.d == other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __add__(self, other):
        return Cyc8(self.a + other.a, self.b + other.b,
                    self.c + other.c, self.d + other.d)

    def __sub__(self, other):
        return Cyc8(self.a - other.a, self.b - other.b,
                    self.c - other.c, self.d - other.d)

    def __neg__(self):
        return Cyc8(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        if not (b or c or d):
            return Cyc8(a * e, a * f, a * g, a * h)
        if not (f or g or h):
            return Cyc8(a * e, b * e, c * e, d * e)
        return Cyc8(a * e - b * f + 2 * (c * g - d * h),
                    a * f + b * e + 2 * (c * h + d * g),
                    a * g + c * e - b * h - d * f,
                    a * h + d * e + b * g + c * f)

    def inv(self):
        if not self:
            raise ScalarDivisionError("inverse of zero")
        a, b, c, d = self.a, self.b, self.c, self.d
        if not (b or c or d):
            return Cyc8(1 / a)
        # product of the three nontrivial Galois conjugates; the norm
        # self * w is rational.
        w = (Cyc8(a, -b, c, -d) * Cyc8(a, b, -c, -d) * Cyc8(a, -b, -c, d))
        n = self * w
        if n.b or n.c or n.d:
            raise AssertionError("norm not rational")
        return Cyc8(w.a / n.a, w.b / n.a, w.c / n.a, w.d / n.a)

    def __truediv__(self, other):
        return self * other.inv()

    def conj_i(self):
        return Cyc8(self.a, -self.b, self.c, -self.d)

    def is_rational(self):
        return not (self.b or self.c or self.d)

    def __repr__(self):
        return "Cyc8(%s)" % render_cyc8(self)


C_ZERO = Cyc8(0)
C_ONE = Cyc8(1)


def _frac_str(q):
    return str(q)


def render_cyc8(z):
    """Deterministic text for a field element, e.g. '3/2 - I + 2*SQRT2'."""
    parts = []
    for coeff, unit in ((z.a, ""), (z.b, "I"), (z.c, "SQRT2"),
                        (z.d, "I*SQRT2")):
        if not coeff:
            continue
        mag = -coeff if coeff < 0 else coeff
        if not unit:
            body = _frac_str(mag)
        elif mag == 1:
            body = unit
        else:
            body = "%s*%s" % (_frac_str(mag), unit)
        if not parts:
            parts.append(body if coeff > 0 else "-" + body)
        else:
            parts.append((" + " if coeff > 0 else " - ") + body)
    return "".join(parts) if parts else "0"


def _cyc8_is_simple(z):
    # one nonzero component: renders without internal +/-
    return (bool(z.a) + bool(z.b) + bool(z.c) + bool(z.d)) <= 1


def _gl_key(exp):
    # graded-lex sort key
    return (sum(exp), exp)


class ParamPoly:
    """Sparse polynomial over Cyc8 in the fixed parameters PARAMS.

    terms maps exponent tuples to nonzero Cyc8 coefficients.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}

    @staticmethod
    def const(z):
        if not isinstance(z, Cyc8):
            z = Cyc8(z)
        return ParamPoly({_ZEXP: z} if z else {})

    @staticmethod
    def var(name):
        i = PARAMS.index(name)
        e = [0] * NPARAMS
        e[i] = 1
        return ParamPoly({tuple(e): C_ONE})

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and _ZEXP in self.terms)

    def const_value(self):
        if not self.terms:
            return C_ZERO
        return self.terms[_ZEXP]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((e, c.a, c.b, c.c, c.d)
                              for e, c in self.terms.items()))

    def __add__(self, other):
        a, b = self.terms, other.terms
        if not a:
            return other
        if not b:
            return self
        out = dict(a)
        for e, z in b.items():
            w = out.get(e)
            if w is None:
                out[e] = z
            else:
                w = w + z
                if w:
                    out[e] = w
                else:
                    del out[e]
        return ParamPoly(out)

    def __neg__(self):
        return ParamPoly({e: -z for e, z in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.terms, other.terms
        if not a or not b:
            return P_ZERO
        if len(a) == 1 and _ZEXP in a:
            z = a[_ZEXP]
            return ParamPoly({e: z * w for e, w in b.items()})
        if len(b) == 1 and _ZEXP in b:
            z = b[_ZEXP]
            return ParamPoly({e: w * z for e, w in a.items()})
        out = {}
        for e1, z1 in a.items():
            for e2, z2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                z = z1 * z2
                w = out.get(e)
                if w is None:
                    out[e] = z
                else:
                    w = w + z
                    if w:
                        out[e] = w
                    else:
                        del out[e]
        return ParamPoly(out)

    def scale(self, z):
        if not z:
            return P_ZERO
        return ParamPoly({e: c * z for e, c in self.terms.items()})

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i):
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def params_used(self):
        used = set()
        for e in self.terms:
            for i, p in enumerate(e):
                if p:
                    used.add(PARAMS[i])
        return used

    def leading(self):
        """(exponent, coeff) of the graded-lex leading term."""
        e = max(self.terms, key=_gl_key)
        return e, self.terms[e]

    def subs(self, bindings):
        """Substitute ParamPoly (or Fraction/int) values for parameters.

        Parameters not mentioned stay formal.
        """
        vals = {}
        for name, v in bindings.items():
            i = PARAMS.index(name)
            if not isinstance(v, ParamPoly):
                v = ParamPoly.const(Cyc8(v) if not isinstance(v, Cyc8) else v)
            vals[i] = v
        out = P_ZERO
        for e, z in self.terms.items():
            term = ParamPoly({tuple(0 if i in vals else p
                                    for i, p in enumerate(e)): z})
            for i, v in vals.items():
                for _ in range(e[i]):
                    term = term * v
            out = out + term
        return out

    def divexact(self, other):
        """Exact division; raises if the division leaves a remainder."""
        if other.is_zero():
            raise ScalarDivisionError("polynomial division by zero")
        if other.is_const():
            zinv = other.const_value().inv()
            return self.scale(zinv)
        rem = self
        quo = {}
        le, lz = other.leading()
        lzinv = lz.inv()
        while rem.terms:
            re, rz = rem.leading()
            qe = tuple(a - b for a, b in zip(re, le))
            if any(x < 0 for x in qe):
                raise ScalarError("non-exact polynomial division")
            qz = rz * lzinv
            quo[qe] = qz
            rem = rem - ParamPoly({qe: qz}) * other
        return ParamPoly(quo)

    def monic(self):
        if not self.terms:
            return self
        _, lz = self.leading()
        if lz == C_ONE:
            return self
        return self.scale(lz.inv())

    def __repr__(self):
        return "ParamPoly(%s)" % render_poly(self)


P_ZERO = ParamPoly({})
P_ONE = ParamPoly({_ZEXP: C_ONE})


def _as_univar(p, i):
    """View p as univariate in parameter i: dict degree -> ParamPoly."""
    out = {}
    for e, z in p.terms.items():
        d = e[i]
        rest = list(e)
        rest[i] = 0
        rest = tuple(rest)
        row = out.setdefault(d, {})
        row[rest] = z
    return {d: ParamPoly(t) for d, t in out.items()}


def _from_univar(coeffs, i):
    out = {}
    for d, poly in coeffs.items():
        for e, z in poly.terms.items():
            ee = list(e)
            ee[i] = d
            out[tuple(ee)] = z
    return ParamPoly(out)


def _uni_prem(f, g, i):
    """Pseudo-remainder of f by g, both univariate views in parameter i."""
    df = max(f) if f else -1
    dg = max(g)
    lg = g[dg]
    while f and max(f) >= dg:
        d = max(f)
        lf = f[d]
        # f <- lg*f - lf*x^(d-dg)*g
        nf = {}
        for k, c in f.items():
            nf[k] = c * lg
        for k, c in g.items():
            kk = k + d - dg
            val = nf.get(kk, P_ZERO) - lf * c
            if val.is_zero():
                nf.pop(kk, None)
            else:
                nf[kk] = val
        f = nf
    return f


def poly_gcd(p, q):
    """gcd in Cyc8[Delta, alpha, LambdaSym], graded-lex-monic."""
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    if p.is_const() or q.is_const():
        return P_ONE
    # main variable: last parameter occurring in either
    main = max(i for i in range(NPARAMS)
               if p.degree_in(i) > 0 or q.degree_in(i) > 0)
    if p.degree_in(main) == 0 or q.degree_in(main) == 0:
        # one of them is free of the main variable: gcd divides its
        # content with respect to it
        free, other = (p, q) if p.degree_in(main) == 0 else (q, p)
        cont = _content(_as_univar(other, main))
        return poly_gcd(free, cont).monic()
    fu = _as_univar(p, main)
    gu = _as_univar(q, main)
    cf = _content(fu)
    cg = _content(gu)
    f = {d: c.divexact(cf) for d, c in fu.items()}
    g = {d: c.divexact(cg) for d, c in gu.items()}
    if max(f) < max(g):
        f, g = g, f
    while True:
        r = _uni_prem(f, g, main)
        if not r:
            break
        cr = _content(r)
        r = {d: c.divexact(cr) for d, c in r.items()}
        f, g = g, r
    inner = _from_univar(g, main)
    return (poly_gcd(cf, cg) * inner).monic()


def _content(u):
    cont = P_ZERO
    for d in sorted(u):
        cont = poly_gcd(cont, u[d])
        if cont.is_const() and not cont.is_zero():
            return P_ONE
    return cont


class Scalar:
    """num/den with ParamPoly num, den; always normalized."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        if den is None:
            den = P_ONE
        if not _normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------

    @staticmethod
    def from_rat(x):
        return Scalar(ParamPoly.const(Cyc8(x)), P_ONE, _normalized=True)

    @staticmethod
    def from_cyc8(z):
        return Scalar(ParamPoly.const(z), P_ONE, _normalized=True)

    @staticmethod
    def param(name):
        return Scalar(ParamPoly.var(name), P_ONE, _normalized=True)

    # -- predicates --------------------------------------------------

    def __bool__(self):
        return bool(self.num.terms)

    def is_one(self):
        return self.num == P_ONE and self.den == P_ONE

    def is_const(self):
        return self.num.is_const() and self.den.is_const()

    def const_value(self):
        """The Cyc8 value of a parameter-free scalar."""
        if not (self.num.is_const() and self.den.is_const()):
            raise ScalarError("scalar is not parameter-free")
        if self.den == P_ONE:
            return self.num.const_value()
        return self.num.const_value() / self.den.const_value()

    def as_fraction(self):
        z = self.const_value()
        if not z.is_rational():
            raise ScalarError("scalar is not rational")
        return z.a

    def params_used(self):
        return self.num.params_used() | self.den.params_used()

    # -- arithmetic --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.den == P_ONE and other.den == P_ONE:
            return Scalar(self.num + other.num, P_ONE, _normalized=True)
        return Scalar(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.den == P_ONE and other.den == P_ONE:
            return Scalar(self.num - other.num, P_ONE, _normalized=True)
        return Scalar(self.num * other.den - other.num * self.den,
                      self.den * other.den)

    def __neg__(self):
        return Scalar(-self.num, self.den, _normalized=True)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.den == P_ONE and other.den == P_ONE:
            return Scalar(self.num * other.num, P_ONE, _normalized=True)
        return Scalar(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if not other:
            raise ScalarDivisionError("scalar division by zero")
        return Scalar(self.num * other.den, self.den * other.num)

    def inv(self):
        if not self:
            raise ScalarDivisionError("inverse of zero scalar")
        return Scalar(self.den, self.num)

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- evaluation --------------------------------------------------

    def subs(self, bindings):
        """Partial substitution; bindings may hit only some parameters."""
        num = self.num.subs(bindings)
        den = self.den.subs(bindings)
        if den.is_zero():
            raise EvalPoleError("denominator vanishes under substitution")
        return Scalar(num, den)

    def eval(self, bindings):
        """Full evaluation; every parameter occurring must be bound."""
        missing = self.params_used() - set(bindings)
        if missing:
            raise UnboundParameterError(
                "unbound parameter(s): %s" % ", ".join(sorted(missing)))
        return self.subs(bindings)

    def __repr__(self):
        return "Scalar(%s)" % render_scalar(self)


def _normalize(num, den):
    if den.is_zero():
        raise ScalarDivisionError("zero denominator")
    if num.is_zero():
        return P_ZERO, P_ONE
    if den.is_const():
        z = den.const_value()
        if z == C_ONE:
            return num, P_ONE
        return num.scale(z.inv()), P_ONE
    if num.is_const():
        g = P_ONE
    else:
        g = poly_gcd(num, den)
    if not (g.is_const()):
        num = num.divexact(g)
        den = den.divexact(g)
        if den.is_const():
            z = den.const_value()
            if z == C_ONE:
                return num, P_ONE
            return num.scale(z.inv()), P_ONE
    _, lz = den.leading()
    if lz != C_ONE:
        zinv = lz.inv()
        num = num.scale(zinv)
        den = den.scale(zinv)
    return num, den


# module-level constants
ZERO = Scalar.from_rat(0)
ONE = Scalar.from_rat(1)
TWO = Scalar.from_rat(2)
HALF = Scalar.from_rat(Fraction(1, 2))
I = Scalar.from_cyc8(Cyc8(0, 1))
SQRT2 = Scalar.from_cyc8(Cyc8(0, 0, 1))
DELTA = Scalar.param("Delta")
ALPHA = Scalar.param("alpha")
LAMBDA_SYM = Scalar.param("LambdaSym")


def rat(p, q=1):
    return Scalar.from_rat(Fraction(p, q))


def scalar_arith(x, y, op):
    """The four operations; op is one of add|sub|mul|div."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if not y:
            raise ScalarDivisionError("scalar division by zero")
        return x / y
    raise ScalarError("unknown op %r" % (op,))


def scalar_eval(x, bindings):
    """Evaluate at parameter bindings (rationals or scalars)."""
    clean = {}
    for name, v in bindings.items():
        if name not in PARAMS:
            raise ScalarError("unknown parameter %r" % (name,))
        if isinstance(v, Scalar):
            if v.den != P_ONE:
                raise ScalarError("bindings must be polynomial")
            clean[name] = v.num
        else:
            clean[name] = Fraction(v)
    return x.eval(clean)


# -- rendering -------------------------------------------------------

def _render_mono(exp):
    parts = []
    for name, p in zip(PARAMS, exp):
        if p == 0:
            continue
        parts.append(name if p == 1 else "%s^%d" % (name, p))
    return "*".join(parts)


def render_poly(p):
    if not p.terms:
        return "0"
    out = []
    for e in sorted(p.terms, key=_gl_key, reverse=True):
        z = p.terms[e]
        mono = _render_mono(e)
        if not mono:
            if _cyc8_is_simple(z):
                body = render_cyc8(z)
                neg = body.startswith("-")
                if neg:
                    body = body[1:]
            else:
                neg = False
                body = "(%s)" % render_cyc8(z)
        else:
            if _cyc8_is_simple(z):
                zs = render_cyc8(z)
                neg = zs.startswith("-")
                if neg:
                    zs = zs[1:]
                if zs == "1":
                    body = mono
                else:
                    body = "%s*%s" % (zs, mono)
            else:
                neg = False
                body = "(%s)*%s" % (render_cyc8(z), mono)
        if not out:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def render_scalar(s):
    if s.den == P_ONE:
        return render_poly(s.num)
    return "(%s)/(%s)" % (render_poly(s.num), render_poly(s.den))


# -- parsing ---------------------------------------------------------

_NAMES = {
    "I": I,
    "SQRT2": SQRT2,
    "Delta": DELTA,
    "alpha": ALPHA,
    "LambdaSym": LAMBDA_SYM,
}


def _tokenize(text):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", int(text[i:j])))
            i = j
        elif ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j]))
            i = j
        elif ch in "+-*/^()":
            toks.append((ch, ch))
            i += 1
        else:
            raise ScalarError("bad character %r in scalar text" % ch)
    toks.append(("end", None))
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.pos = 0

    def peek(self):
        return self.toks[self.pos][0]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expr(self):
        v = self.term()
        while self.peek() in "+-":
            op, _ = self.next()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.factor()
        while self.peek() in "*/":
            op, _ = self.next()
            w = self.factor()
            if op == "*":
                v = v * w
            else:
                if not w:
                    raise ScalarDivisionError("division by zero in text")
                v = v / w
        return v

    def factor(self):
        neg = False
        while self.peek() in "+-":
            op, _ = self.next()
            if op == "-":
                neg = not neg
        v = self.atom()
        if self.peek() == "^":
            self.next()
            kind, val = self.next()
            if kind != "num":
                raise ScalarError("exponent must be an integer")
            w = ONE
            for _ in range(val):
                w = w * v
            v = w
        return -v if neg else v

    def atom(self):
        kind, val = self.next()
        if kind == "num":
            return rat(val)
        if kind == "name":
            if val not in _NAMES:
                raise ScalarError("unknown name %r" % val)
            return _NAMES[val]
        if kind == "(":
            v = self.expr()
            k, _ = self.next()
            if k != ")":
                raise ScalarError("expected ')'")
            return v
        raise ScalarError("unexpected token %r" % kind)


def parse_scalar(text):
    p = _Parser(_tokenize(text))
    v = p.expr()
    if p.peek() != "end":
        raise ScalarError("trailing input in scalar text")
    return v


def parse_rational(text):
    """Strict p or p/q form, used by the CLI for weights."""
    s = Scalar.from_rat(Fraction(text.strip()))
    return s
