"""The superalgebra Lambda(1,N): Laurent t-powers times Grassmann
monomials, with the contact bracket.

A monomial is (tpow, xis) where xis is a strictly increasing tuple of
generator labels; signs are normalized into the coefficient at
construction, so element equality is dict equality.

Two basis kinds:
  standard -- labels 1..N are xi_1..xi_N.
  split    -- N even; label 2j-1 is xi_j^+, label 2j is xi_j^-
              (so xi_1^+ < xi_1^- < xi_2^+ < ...).
The contact bracket uses the matching formula for each kind; converting
between kinds is an explicit operation.
"""

from __future__ import annotations

from .exactfield import (
    HALF, I, ONE, SQRT2, Scalar, ScalarError, ZERO, parse_scalar, rat,
    render_scalar,
)

STANDARD = "standard"
SPLIT = "split"


class GrassmannError(ValueError):
    pass


class GElement:
    """Linear combination of monomials, all of one basis kind."""

    __slots__ = ("kind", "terms")

    def __init__(self, kind, terms=None):
        self.kind = kind
        self.terms = terms if terms is not None else {}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, GElement):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.kind == other.kind and self.terms == other.terms

    def __hash__(self):
        return hash((self.kind if self.terms else None,
                     frozenset(self.terms)))

    def __add__(self, other):
        _check_kinds(self, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            w = out.get(m)
            nv = w + c if w is not None else c
            if nv:
                out[m] = nv
            else:
                out.pop(m, None)
        return GElement(self.kind if self.terms else other.kind, out)

    def __neg__(self):
        return GElement(self.kind, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return GElement(self.kind, {})
        return GElement(self.kind, {m: v * c for m, v in self.terms.items()})

    def parity(self):
        """0, 1, or None when the element mixes parities."""
        ps = {len(m[1]) & 1 for m in self.terms}
        if not ps:
            return 0
        if len(ps) > 1:
            return None
        return ps.pop()

    def __repr__(self):
        return "GElement(%s)" % render_gelement(self)


def _check_kinds(f, g):
    if f.terms and g.terms and f.kind != g.kind:
        raise GrassmannError("mixed basis kinds %s/%s" % (f.kind, g.kind))


def gzero(kind=STANDARD):
    return GElement(kind, {})


def merge_sign(xs, ys):
    """Sign of sorting the concatenation of two increasing label tuples,
    or None when they overlap (the product vanishes)."""
    if not xs:
        return 1, ys
    if not ys:
        return 1, xs
    sign = 1
    out = []
    i = j = 0
    nx, ny = len(xs), len(ys)
    while i < nx and j < ny:
        if xs[i] == ys[j]:
            return None, None
        if xs[i] < ys[j]:
            out.append(xs[i])
            i += 1
        else:
            # ys[j] moves left past the remaining xs
            if (nx - i) & 1:
                sign = -sign
            out.append(ys[j])
            j += 1
    out.extend(xs[i:])
    out.extend(ys[j:])
    return sign, tuple(out)


def gmono(tpow, xis, coeff=ONE, kind=STANDARD):
    """Build c * t^tpow xi_{i1}...xi_{ik}, normalizing label order."""
    xis = tuple(xis)
    if len(set(xis)) != len(xis):
        return gzero(kind)
    sign = 1
    lst = list(xis)
    # insertion sort, counting transpositions
    for a in range(1, len(lst)):
        b = a
        while b > 0 and lst[b - 1] > lst[b]:
            lst[b - 1], lst[b] = lst[b], lst[b - 1]
            sign = -sign
            b -= 1
    c = coeff if sign == 1 else -coeff
    if not c:
        return gzero(kind)
    return GElement(kind, {(tpow, tuple(lst)): c})


def gmul(f, g):
    """Associative product; xi's anticommute, t-powers add."""
    _check_kinds(f, g)
    kind = f.kind if f.terms else g.kind
    out = {}
    for (tf, xf), cf in f.terms.items():
        for (tg, xg), cg in g.terms.items():
            sign, merged = merge_sign(xf, xg)
            if sign is None:
                continue
            key = (tf + tg, merged)
            c = cf * cg
            if sign < 0:
                c = -c
            w = out.get(key)
            nv = w + c if w is not None else c
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)
    return GElement(kind, out)


def gderive(f, var):
    """Derivative: var is "t" or an integer xi label."""
    out = {}
    if var == "t":
        for (tp, xs), c in f.terms.items():
            if tp == 0:
                continue
            out[(tp - 1, xs)] = c * rat(tp)
        return GElement(f.kind, out)
    label = int(var)
    for (tp, xs), c in f.terms.items():
        if label not in xs:
            continue
        pos = xs.index(label)
        rest = xs[:pos] + xs[pos + 1:]
        out[(tp, rest)] = c if pos % 2 == 0 else -c
    return GElement(f.kind, out)


def euler(f):
    """E = sum_i xi_i d/dxi_i; multiplies each monomial by its odd degree."""
    out = {}
    for (tp, xs), c in f.terms.items():
        if xs:
            out[(tp, xs)] = c * rat(len(xs))
    return GElement(f.kind, out)


def _two_minus_e(f):
    out = {}
    for (tp, xs), c in f.terms.items():
        k = 2 - len(xs)
        if k:
            out[(tp, xs)] = c * rat(k)
    return GElement(f.kind, out)


def _split_partner(label):
    return label + 1 if label % 2 == 1 else label - 1


def contact_bracket(f, g):
    """[f,g] = (2-E)f dg/dt - df/dt (2-E)g + (-1)^p(f) sum df/dxi dg/dxi.

    In the split basis the xi-sum pairs each label with its partner.
    Inputs must be Z2-homogeneous.
    """
    _check_kinds(f, g)
    pf = f.parity()
    pg = g.parity()
    if pf is None or pg is None:
        raise GrassmannError("contact bracket needs homogeneous inputs")
    kind = f.kind if f.terms else g.kind
    out = gmul(_two_minus_e(f), gderive(g, "t")) \
        - gmul(gderive(f, "t"), _two_minus_e(g))
    labels = sorted({l for (_, xs) in f.terms for l in xs})
    for l in labels:
        gl = _split_partner(l) if kind == SPLIT else l
        piece = gmul(gderive(f, l), gderive(g, gl))
        if pf:
            piece = -piece
        out = out + piece
    return out


def grade2(mono):
    """Doubled contact degree of a monomial: 2*tpow + |I| - 2."""
    tp, xs = mono
    return 2 * tp + len(xs) - 2


def hodge_dual(f):
    """Hodge dual for N=4 standard monomials: xi_I -> xi_I* with
    xi_I xi_I* = xi_1 xi_2 xi_3 xi_4; t-powers ride along."""
    if f.terms and f.kind != STANDARD:
        raise GrassmannError("hodge dual is defined on the standard basis")
    out = gzero(STANDARD)
    for (tp, xs), c in f.terms.items():
        if any(l > 4 for l in xs):
            raise GrassmannError("hodge dual needs N=4 labels")
        comp = tuple(l for l in (1, 2, 3, 4) if l not in xs)
        sign, merged = merge_sign(xs, comp)
        if merged != (1, 2, 3, 4):
            raise AssertionError("complement error")
        out = out + gmono(tp, comp, c if sign == 1 else -c)
    return out


def convert(f, to_kind, N):
    """Change basis between standard and split; N (even) fixes the
    pairing xi_j with xi_{j+N/2}."""
    if N % 2:
        raise GrassmannError("split basis needs even N")
    if not f.terms or f.kind == to_kind:
        return GElement(to_kind, dict(f.terms))
    n = N // 2  # pairs
    inv_sqrt2 = ONE / SQRT2
    out = gzero(to_kind)
    for (tp, xs), c in f.terms.items():
        acc = gmono(tp, (), c, to_kind)
        for l in xs:
            if f.kind == STANDARD:
                # xi_j = (xi_j^+ + xi_j^-)/sqrt2 ;
                # xi_{j+n} = -i (xi_j^+ - xi_j^-)/sqrt2
                if l <= n:
                    j = l
                    fac = (gmono(0, (2 * j - 1,), inv_sqrt2, SPLIT)
                           + gmono(0, (2 * j,), inv_sqrt2, SPLIT))
                else:
                    j = l - n
                    fac = (gmono(0, (2 * j - 1,), -I * inv_sqrt2, SPLIT)
                           + gmono(0, (2 * j,), I * inv_sqrt2, SPLIT))
            else:
                # xi_j^+/- = (xi_j -/+ ... ) : xi_j^pm = (xi_j pm i xi_{j+n})/sqrt2
                j = (l + 1) // 2
                sgn = I if l % 2 == 1 else -I
                fac = (gmono(0, (j,), inv_sqrt2, STANDARD)
                       + gmono(0, (j + n,), sgn * inv_sqrt2, STANDARD))
            acc = gmul(acc, fac)
        out = out + acc
    return out


# -- rendering / parsing ----------------------------------------------------


def _label_text(label, kind):
    if kind == SPLIT:
        j = (label + 1) // 2
        return "%d%s" % (j, "+" if label % 2 == 1 else "-")
    return str(label)


def render_gelement(f):
    if not f.terms:
        return "0"
    parts = []
    for (tp, xs) in sorted(f.terms):
        c = f.terms[(tp, xs)]
        mono = []
        if tp:
            mono.append("t^%d" % tp)
        if xs:
            tag = "xis" if f.kind == SPLIT else "xi"
            mono.append("%s[%s]" % (tag, ",".join(_label_text(l, f.kind)
                                                  for l in xs)))
        cs = "(%s)" % render_scalar(c)
        parts.append(cs + " * " + " ".join(mono) if mono else cs)
    return " + ".join(parts)


def parse_gelement(text, kind=STANDARD):
    text = text.strip()
    if text == "0":
        return gzero(kind)
    out = gzero(kind)
    for chunk in _split_terms(text):
        out = out + _parse_term(chunk, kind)
    return out


def _split_terms(text):
    # split on " + " at paren depth 0
    parts = []
    depth = 0
    cur = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and text.startswith(" + ", i):
            parts.append("".join(cur))
            cur = []
            i += 3
            continue
        cur.append(ch)
        i += 1
    parts.append("".join(cur))
    return parts


def _parse_term(chunk, kind):
    chunk = chunk.strip()
    if not chunk.startswith("("):
        raise GrassmannError("term must start with a coefficient: %r" % chunk)
    depth = 0
    for i, ch in enumerate(chunk):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                break
    coeff = parse_scalar(chunk[1:i])
    rest = chunk[i + 1:].strip()
    if rest.startswith("*"):
        rest = rest[1:].strip()
    tpow = 0
    xis = []
    for piece in rest.split():
        if piece.startswith("t^"):
            tpow = int(piece[2:])
        elif piece == "t":
            tpow = 1
        elif piece.startswith("xis[") or piece.startswith("xi["):
            body = piece[piece.index("[") + 1:piece.index("]")]
            for lab in body.split(","):
                lab = lab.strip()
                if kind == SPLIT or lab[-1] in "+-":
                    j = int(lab[:-1])
                    xis.append(2 * j - 1 if lab[-1] == "+" else 2 * j)
                else:
                    xis.append(int(lab))
        elif piece:
            raise GrassmannError("bad monomial piece %r" % piece)
    return gmono(tpow, tuple(xis), coeff, kind)
