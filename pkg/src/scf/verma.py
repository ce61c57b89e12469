"""Highest-weight modules with finite level spaces and an exact action
engine for the annihilation side of each superconformal algebra.

A module is spanned by PBW monomials

    partial^d  (ordered word of odd mode -1/2 generators)  F0^j v

(F0^j Fbar0^k v for n4b; plain v for n2, whose degree-0 part is
abelian).  ``act`` normal-orders any annihilation-side generator through
such a monomial using the structure constants, with all coefficients
exact Scalars; Delta may stay symbolic, and for n3/n4s/n4b the weight
Lambda may also stay symbolic, in which case the F0-string is not
truncated (every printed identity with symbolic Lambda lives below the
truncation boundary).
"""

from collections import namedtuple
from fractions import Fraction

from .exactfield import ONE, Scalar, ZERO, rat, render_scalar
from .algebra import (N2, N3, N4B, N4S_MINUS, N4S_PLUS, GenMode,
                      bracket, genmode, in_annihilation, normalize_alg,
                      parity_of, render_genmode)

PBWKey = namedtuple("PBWKey", ["dpow", "oddmask", "wt"])


class VermaError(ValueError):
    pass


_ODD_CREATION = {
    N2: ("Gp", "Gm"),
    N3: ("e", "h", "f"),
    N4S_PLUS: ("Gpp", "Gpm", "Gmp", "Gmm"),
}
_ODD_CREATION[N4S_MINUS] = _ODD_CREATION[N4S_PLUS]
_ODD_CREATION[N4B] = _ODD_CREATION[N4S_PLUS]

_L_MINUS = GenMode("L", -2)


def _as_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return rat(x)
    raise VermaError("cannot use %r as a weight scalar" % (x,))


def _check_weight(lam, what):
    lam = _as_scalar(lam)
    if lam.is_const():
        q = lam.as_fraction()
        if q.denominator != 1 or q < 0:
            raise VermaError("%s must be a nonnegative integer, got %s"
                             % (what, q))
        return lam, int(q)
    return lam, None


class VermaModule(object):
    """Immutable module data plus the memoized action engine."""

    def __init__(self, alg, delta, lam, lam_bar=None):
        alg = normalize_alg(alg)
        self.alg = alg
        self.delta = _as_scalar(delta)
        if alg == N4B:
            if lam_bar is None:
                raise VermaError("n4b modules need both weights")
            self.lam, self.lam_int = _check_weight(lam, "Lambda")
            self.lam_bar, self.lam_bar_int = _check_weight(lam_bar,
                                                           "LambdaBar")
        else:
            if lam_bar is not None:
                raise VermaError("only n4b modules take a second weight")
            self.lam_bar = None
            self.lam_bar_int = None
            if alg == N2:
                # the degree-0 part is abelian: any scalar works
                self.lam = _as_scalar(lam)
                self.lam_int = None
            else:
                self.lam, self.lam_int = _check_weight(lam, "Lambda")
        self.odd_gens = tuple(GenMode(g, -1) for g in _ODD_CREATION[alg])
        self.n_odd = len(self.odd_gens)
        # brackets among the creation generators are multiples of
        # partial = L_{-1}; record the coefficients
        self.odd_square = []
        self.odd_pair = {}
        for i, gi in enumerate(self.odd_gens):
            for j, gj in enumerate(self.odd_gens):
                out = bracket(alg, gi, gj)
                coeff = ZERO
                for gm, c in out.items():
                    if gm != _L_MINUS:
                        raise VermaError("unexpected creation bracket %r"
                                         % (gm,))
                    coeff = c
                if i == j:
                    half = coeff / rat(2)
                    self.odd_square.append(half if half else None)
                elif i > j and coeff:
                    self.odd_pair[(i, j)] = coeff
        self._memo = {}

    # -- bookkeeping ---------------------------------------------------

    @property
    def symbolic(self):
        if self.alg == N2:
            return not self.lam.is_const()
        if self.lam_int is None:
            return True
        return self.alg == N4B and self.lam_bar_int is None

    def vacuum_key(self):
        return PBWKey(0, 0, (0, 0) if self.alg == N4B else 0)

    def vacuum(self):
        return VermaVector(self, {self.vacuum_key(): ONE})

    def zero(self):
        return VermaVector(self, {})

    def key_level2(self, key):
        return 2 * key.dpow + bin(key.oddmask).count("1")

    def wt_range(self):
        if self.lam_int is None:
            raise VermaError("level enumeration needs a concrete Lambda")
        return range(self.lam_int + 1)

    def keys_at_level2(self, lv2):
        """All PBW keys of doubled level lv2, in the canonical order."""
        if lv2 < 0:
            return []
        out = []
        for dpow in range(lv2 // 2 + 1):
            rem = lv2 - 2 * dpow
            if rem > self.n_odd:
                continue
            for mask in range(1 << self.n_odd):
                if bin(mask).count("1") != rem:
                    continue
                if self.alg == N4B:
                    if self.lam_bar_int is None:
                        raise VermaError(
                            "level enumeration needs concrete weights")
                    for j in self.wt_range():
                        for k in range(self.lam_bar_int + 1):
                            out.append(PBWKey(dpow, mask, (j, k)))
                else:
                    for j in (self.wt_range() if self.alg != N2 else (0,)):
                        out.append(PBWKey(dpow, mask, j))
        out.sort()
        return out

    def keys_per_ddegree(self):
        """Basis size at a fixed partial-power (the generic rank)."""
        if self.alg == N2:
            u = 1
        elif self.alg == N4B:
            u = (self.lam_int + 1) * (self.lam_bar_int + 1)
        else:
            u = self.lam_int + 1
        return (1 << self.n_odd) * u

    # -- the action ----------------------------------------------------

    def act_key(self, x, key):
        """Action of a generator mode on one PBW basis key; returns a
        tuple of (PBWKey, Scalar) pairs."""
        memo_key = (x, key)
        hit = self._memo.get(memo_key)
        if hit is not None:
            return hit
        hit = tuple(self._act_key(x, key))
        self._memo[memo_key] = hit
        return hit

    def _act_key(self, x, key):
        if x == _L_MINUS:
            return ((PBWKey(key.dpow + 1, key.oddmask, key.wt), ONE),)
        if x.mode2 == -1:
            # odd creation generator: left multiplication
            acc = {}
            _left_mul_odd(self, self._odd_index(x), key, ONE, acc)
            return tuple(sorted(acc.items()))
        # annihilation side proper
        if x.mode2 > self.key_level2(key):
            return ()
        if key.dpow > 0:
            sub = PBWKey(key.dpow - 1, key.oddmask, key.wt)
            acc = {}
            for k2, c in self.act_key(x, sub):
                _acc_add(acc, PBWKey(k2.dpow + 1, k2.oddmask, k2.wt), c)
            for z, c in bracket(self.alg, x, _L_MINUS).items():
                for k2, c2 in self.act_key(z, sub):
                    _acc_add(acc, k2, c * c2)
            return tuple(sorted(acc.items()))
        if key.oddmask:
            lo = (key.oddmask & -key.oddmask).bit_length() - 1
            sub = PBWKey(0, key.oddmask & ~(1 << lo), key.wt)
            acc = {}
            sign = parity_of(x.gen)
            for k2, c in self.act_key(x, sub):
                _left_mul_odd(self, lo, k2, -c if sign else c, acc)
            for z, c in bracket(self.alg, x, self.odd_gens[lo]).items():
                for k2, c2 in self.act_key(z, sub):
                    _acc_add(acc, k2, c * c2)
            return tuple(sorted(acc.items()))
        return tuple(self._act_diagonal(x, key))

    def _odd_index(self, x):
        for i, g in enumerate(self.odd_gens):
            if g == x:
                return i
        raise VermaError("%s is not a creation generator of %s"
                         % (render_genmode(x), self.alg))

    def _act_diagonal(self, x, key):
        """x of degree 0 on F0^j v (F0^j Fbar0^k v for n4b)."""
        if x.mode2 > 0:
            return
        if x.gen == "L":
            yield (key, self.delta)
            return
        if self.alg == N2:
            # J0 eigenvalue
            if self.lam:
                yield (key, self.lam)
            return
        if self.alg == N4B:
            j, k = key.wt
            if x.gen.endswith("_bar"):
                base, cur, lam, lam_int, pos = (x.gen[:-4], k, self.lam_bar,
                                                self.lam_bar_int, 1)
            else:
                base, cur, lam, lam_int, pos = (x.gen, j, self.lam,
                                                self.lam_int, 0)
            for wt2, c in _sl2_string(base, cur, lam, lam_int):
                nw = (wt2, k) if pos == 0 else (j, wt2)
                yield (PBWKey(0, 0, nw), c)
            return
        for wt2, c in _sl2_string(x.gen, key.wt, self.lam, self.lam_int):
            yield (PBWKey(0, 0, wt2), c)


def _sl2_string(gen, j, lam, lam_int):
    """H/E/F action on the weight-string index j of F0^j v."""
    if gen == "H":
        c = lam - rat(2 * j)
        if c:
            yield (j, c)
    elif gen == "E":
        if j:
            yield (j - 1, rat(j) * (lam - rat(j - 1)))
    elif gen == "F":
        if lam_int is None or j < lam_int:
            yield (j + 1, ONE)
    # any other degree-0 generator name cannot reach here


def _acc_add(acc, key, c):
    if not c:
        return
    w = acc.get(key)
    nv = w + c if w is not None else c
    if nv:
        acc[key] = nv
    else:
        acc.pop(key, None)


def _left_mul_odd(M, gi, key, c, acc):
    """Left-multiply the PBW monomial `key` by the creation generator of
    index gi, normal ordering into the fixed word order.  The creation
    generators commute with partial, and their mutual brackets are
    multiples of partial, recorded in M.odd_pair / M.odd_square."""
    if not c:
        return
    mask = key.oddmask
    if not mask:
        _acc_add(acc, PBWKey(key.dpow, 1 << gi, key.wt), c)
        return
    lo = (mask & -mask).bit_length() - 1
    if gi < lo:
        _acc_add(acc, PBWKey(key.dpow, mask | (1 << gi), key.wt), c)
        return
    rest = mask & ~(1 << lo)
    if gi == lo:
        q = M.odd_square[gi]
        if q is not None:
            _acc_add(acc, PBWKey(key.dpow + 1, rest, key.wt), c * q)
        return
    q = M.odd_pair.get((gi, lo))
    if q is not None:
        _acc_add(acc, PBWKey(key.dpow + 1, rest, key.wt), c * q)
    tmp = {}
    _left_mul_odd(M, gi, PBWKey(key.dpow, rest, key.wt), -c, tmp)
    for k2, c2 in tmp.items():
        _acc_add(acc, PBWKey(k2.dpow, k2.oddmask | (1 << lo), k2.wt), c2)


class VermaVector(object):
    __slots__ = ("module", "terms")

    def __init__(self, module, terms=None):
        self.module = module
        self.terms = terms if terms is not None else {}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, VermaVector):
            return NotImplemented
        if self.module is not other.module and (self.terms or other.terms):
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        _check_same_module(self, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc_add(out, k, c)
        return VermaVector(self.module, out)

    def __neg__(self):
        return VermaVector(self.module,
                           {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _as_scalar(c)
        if not c:
            return VermaVector(self.module, {})
        return VermaVector(self.module,
                           {k: v * c for k, v in self.terms.items()})

    def parity(self):
        ps = {bin(k.oddmask).count("1") & 1 for k in self.terms}
        if not ps:
            return 0
        if len(ps) > 1:
            return None
        return ps.pop()

    def level2(self):
        """Doubled level when homogeneous, else None."""
        lvs = {self.module.key_level2(k) for k in self.terms}
        if len(lvs) == 1:
            return lvs.pop()
        return None

    def subs(self, bindings):
        out = {}
        for k, c in self.terms.items():
            _acc_add(out, k, c.subs(bindings))
        return VermaVector(self.module, out)

    def map_to(self, other_module):
        return VermaVector(other_module, dict(self.terms))

    def render(self):
        return render_vector(self)

    def __repr__(self):
        return "VermaVector(%s)" % render_vector(self)


def _check_same_module(a, b):
    if a.module is not b.module and a.terms and b.terms:
        raise VermaError("vectors from different modules")


def build_module(alg, delta, lam, lam_bar=None):
    return VermaModule(alg, delta, lam, lam_bar)


def act(M, x, v):
    """Apply a generator mode to a module vector, Scalar-exact."""
    if v.module is not M and v.terms:
        raise VermaError("vector does not belong to the module")
    x = genmode(M.alg, x.gen, x.mode2)
    if not in_annihilation(M.alg, x):
        raise VermaError("%s is outside the annihilation side of %s"
                         % (render_genmode(x), M.alg))
    out = {}
    for key, c in v.terms.items():
        for k2, c2 in M.act_key(x, key):
            _acc_add(out, k2, c2 * c)
    return VermaVector(M, out)


def act_word(M, word, v):
    """Apply a product of generator modes, rightmost factor first."""
    for x in reversed(list(word)):
        v = act(M, x, v)
    return v


def dshift(M, v, n=1):
    """Multiply by partial^n (exact key shift; always injective)."""
    out = {PBWKey(k.dpow + n, k.oddmask, k.wt): c
           for k, c in v.terms.items() if c}
    return VermaVector(M, out)


INHOMOGENEOUS = "inhomogeneous"


def weight_of(M, v):
    """Simultaneous (L0, H0[, Hbar0]) eigenvalues, or "inhomogeneous".

    For n2 the second entry is the J0 eigenvalue.
    """
    if not v.terms:
        return INHOMOGENEOUS
    if M.alg == N2:
        ops = (GenMode("L", 0), GenMode("J", 0))
    elif M.alg == N4B:
        ops = (GenMode("L", 0), GenMode("H", 0), GenMode("H_bar", 0))
    else:
        ops = (GenMode("L", 0), GenMode("H", 0))
    k0 = min(v.terms)
    c0 = v.terms[k0]
    wts = []
    for op in ops:
        w = act(M, op, v)
        lam = w.terms.get(k0, ZERO) / c0
        if w != v.scale(lam):
            return INHOMOGENEOUS
        wts.append(lam)
    return tuple(wts)


# -- rendering and JSON ---------------------------------------------------


def render_key(M, key):
    parts = []
    if key.dpow:
        parts.append("d" if key.dpow == 1 else "d^%d" % key.dpow)
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
    return " ".join(parts)


def render_vector(v):
    if not v.terms:
        return "0"
    M = v.module
    parts = []
    for key in sorted(v.terms):
        c = v.terms[key]
        parts.append("(%s) %s" % (render_scalar(c), render_key(M, key)))
    return " + ".join(parts)


def vector_to_json(v):
    M = v.module
    out = []
    for key in sorted(v.terms):
        names = [g.gen for i, g in enumerate(M.odd_gens)
                 if (key.oddmask >> i) & 1]
        wt = list(key.wt) if M.alg == N4B else key.wt
        out.append({"dpow": key.dpow, "oddmask": names, "wt": wt,
                    "coeff": render_scalar(v.terms[key])})
    return out


def vector_from_json(M, data):
    from .exactfield import parse_scalar
    name_index = {g.gen: i for i, g in enumerate(M.odd_gens)}
    terms = {}
    for item in data:
        mask = 0
        for name in item["oddmask"]:
            mask |= 1 << name_index[name]
        wt = tuple(item["wt"]) if M.alg == N4B else item["wt"]
        key = PBWKey(item["dpow"], mask, wt)
        _acc_add(terms, key, parse_scalar(item["coeff"]))
    return VermaVector(M, terms)
