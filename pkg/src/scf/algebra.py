"""Mode-indexed superconformal algebras: N=2, N=3, and the two N=4 kinds.

Each algebra is available in two forms that are kept in sync:

* a contact-field realization inside the Grassmann algebra Lambda(1,N)
  (``realize``), and
* structure constants on the generator basis (``bracket``).

For n2/n3/n4s the stored bracket rules are the primary source and the
realization is the cross-check oracle (``check_tables``).  For n4b there
is no single stored table: the bracket is computed in the realization and
re-expanded over the generator basis, degree by degree.  Brackets of
annihilation-side generators always re-expand; a few far-negative cross
pairs of the two n4s copies genuinely leave the span and raise
``NotExpressibleError``.
"""

from collections import namedtuple

from .exactfield import ONE, SQRT2, rat
from .grassmann import (SPLIT, STANDARD, contact_bracket, gmono, gzero,
                        hodge_dual)
from .linalg import Echelon

N2 = "n2"
N3 = "n3"
N4S_PLUS = "n4s+"
N4S_MINUS = "n4s-"
N4B = "n4b"
ALGEBRAS = (N2, N3, N4S_PLUS, N4S_MINUS, N4B)


class AlgebraError(ValueError):
    pass


class NotExpressibleError(AlgebraError):
    """The bracket leaves the span of the generator basis."""


GenMode = namedtuple("GenMode", ["gen", "mode2"])


_BASE_GENS = {
    N2: ("L", "J", "Gp", "Gm"),
    N3: ("L", "H", "E", "F", "e", "h", "f", "Psi"),
    N4S_PLUS: ("L", "H", "E", "F", "Gpp", "Gpm", "Gmp", "Gmm"),
}
_BASE_GENS[N4S_MINUS] = _BASE_GENS[N4S_PLUS]
_BASE_GENS[N4B] = _BASE_GENS[N4S_PLUS] + tuple(
    g + "_bar" for g in _BASE_GENS[N4S_PLUS])

# kind -> doubled conformal weight of the corresponding field
_H2 = {"L": 4, "cur": 2, "odd": 3, "psi": 1}


def normalize_alg(alg):
    a = str(alg).strip().lower()
    if a == "n4s":
        return N4S_PLUS
    if a in ALGEBRAS:
        return a
    raise AlgebraError("unknown algebra %r" % (alg,))


def generators(alg):
    return _BASE_GENS[normalize_alg(alg)]


def unbar(gen):
    return gen[:-4] if gen.endswith("_bar") else gen


def is_barred(gen):
    return gen.endswith("_bar")


def kind_of(gen):
    g = unbar(gen)
    if g == "L":
        return "L"
    if g in ("J", "H", "E", "F"):
        return "cur"
    if g == "Psi":
        return "psi"
    if g in ("Gp", "Gm", "e", "h", "f", "Gpp", "Gpm", "Gmp", "Gmm"):
        return "odd"
    raise AlgebraError("unknown generator %r" % (gen,))


def parity_of(gen):
    return 1 if kind_of(gen) in ("odd", "psi") else 0


def weight2_of(gen):
    return _H2[kind_of(gen)]


def canonical_genmode(alg, g):
    """Resolve the n4b barred/unbarred overlaps to the unbarred symbol."""
    if normalize_alg(alg) != N4B or not is_barred(g.gen):
        return g
    base = unbar(g.gen)
    k = kind_of(base)
    if k == "L" and g.mode2 in (-2, 0):
        return GenMode("L", g.mode2)
    if k == "odd" and g.mode2 == -1:
        return GenMode(base, -1)
    return g


def genmode(alg, gen, mode2):
    alg = normalize_alg(alg)
    if gen not in _BASE_GENS[alg]:
        raise AlgebraError("generator %r not in algebra %s" % (gen, alg))
    mode2 = int(mode2)
    if mode2 % 2 != parity_of(gen) % 2:
        raise AlgebraError("mode2 %d has the wrong parity for %s"
                           % (mode2, gen))
    return canonical_genmode(alg, GenMode(gen, mode2))


def grade_parity(alg, g):
    """(degree2, parity) of a generator mode; degree2 equals mode2."""
    alg = normalize_alg(alg)
    if g.gen not in _BASE_GENS[alg]:
        raise AlgebraError("generator %r not in algebra %s" % (g.gen, alg))
    return (g.mode2, parity_of(g.gen))


def in_annihilation(alg, g):
    """True when the realization has only nonnegative t-powers."""
    grade_parity(alg, g)  # validation
    return g.mode2 >= 2 - weight2_of(g.gen)


# -- realizations -------------------------------------------------------


_REALIZE_CACHE = {}


def realize(alg, g):
    alg = normalize_alg(alg)
    g = canonical_genmode(alg, GenMode(g.gen, g.mode2))
    key = (alg, g.gen, g.mode2)
    f = _REALIZE_CACHE.get(key)
    if f is None:
        if g.gen not in _BASE_GENS[alg]:
            raise AlgebraError("generator %r not in algebra %s"
                               % (g.gen, alg))
        if g.mode2 % 2 != parity_of(g.gen) % 2:
            raise AlgebraError("mode2 %d has the wrong parity for %s"
                               % (g.mode2, g.gen))
        if alg == N2:
            f = _realize_n2(g)
        elif alg == N3:
            f = _realize_n3(g)
        elif alg == N4S_PLUS:
            f = _realize_n4s(g.gen, g.mode2, 1)
        elif alg == N4S_MINUS:
            f = _realize_n4s(g.gen, g.mode2, -1)
        else:
            beta = -1 if is_barred(g.gen) else 1
            f = _realize_n4s(unbar(g.gen), g.mode2, beta)
        _REALIZE_CACHE[key] = f
    return f


def _realize_n2(g):
    m2 = g.mode2
    if g.gen == "L":
        return gmono(m2 // 2 + 1, (), rat(-1, 2), SPLIT)
    if g.gen == "J":
        # xi1- xi1+ t^n = -xi1+ xi1- t^n
        return gmono(m2 // 2, (1, 2), rat(-1), SPLIT)
    tp = (m2 + 1) // 2
    if g.gen == "Gp":
        return gmono(tp, (1,), ONE, SPLIT)
    return gmono(tp, (2,), ONE, SPLIT)


_I = None


def _imag():
    global _I
    if _I is None:
        from .exactfield import I
        _I = I
    return _I


def _realize_n3(g):
    m2 = g.mode2
    i = _imag()
    if g.gen == "L":
        return gmono(m2 // 2 + 1, (), rat(-1, 2))
    if g.gen == "H":
        return gmono(m2 // 2, (1, 2), rat(2) * i)
    if g.gen == "E":
        n = m2 // 2
        return gmono(n, (1, 3), rat(-1)) + gmono(n, (2, 3), -i)
    if g.gen == "F":
        n = m2 // 2
        return gmono(n, (1, 3), ONE) + gmono(n, (2, 3), -i)
    if g.gen == "Psi":
        return gmono((m2 - 1) // 2, (1, 2, 3), rat(-1))
    tp = (m2 + 1) // 2
    if g.gen == "h":
        return gmono(tp, (3,), rat(-2) * i)
    if g.gen == "e":
        return gmono(tp, (1,), i) + gmono(tp, (2,), rat(-1))
    # f
    return gmono(tp, (1,), i) + gmono(tp, (2,), ONE)


# odd n4s generators as coefficient lists over xi labels
def _n4s_g_coeffs(gen):
    i = _imag()
    if gen == "Gpp":
        return ((1, ONE), (2, i))
    if gen == "Gpm":
        return ((3, ONE), (4, -i))
    if gen == "Gmp":
        return ((3, ONE), (4, i))
    if gen == "Gmm":
        return ((1, rat(-1)), (2, i))
    raise AlgebraError("unknown odd generator %r" % (gen,))


def _realize_n4s(gen, m2, beta):
    i = _imag()
    if gen == "L":
        n = m2 // 2
        out = gmono(n + 1, (), rat(-1, 2))
        if n * (n + 1):
            out = out + gmono(n - 1, (1, 2, 3, 4), rat(-beta * n * (n + 1), 2))
        return out
    if gen == "H":
        n = m2 // 2
        return gmono(n, (1, 2), i) + gmono(n, (3, 4), rat(-beta) * i)
    if gen == "E":
        n = m2 // 2
        return (gmono(n, (1, 3), rat(-1, 2))
                + gmono(n, (2, 4), rat(-beta, 2))
                + gmono(n, (2, 3), rat(-1, 2) * i)
                + gmono(n, (1, 4), rat(beta, 2) * i))
    if gen == "F":
        n = m2 // 2
        return (gmono(n, (1, 3), rat(1, 2))
                + gmono(n, (2, 4), rat(beta, 2))
                + gmono(n, (2, 3), rat(-1, 2) * i)
                + gmono(n, (1, 4), rat(beta, 2) * i))
    coeffs = _n4s_g_coeffs(gen)
    inv = ONE / SQRT2
    tp = (m2 + 1) // 2
    out = gzero(STANDARD)
    for lab, c in coeffs:
        out = out + gmono(tp, (lab,), c * inv)
    if m2 + 1:
        low = gzero(STANDARD)
        for lab, c in coeffs:
            low = low + gmono(tp - 1, (lab,), c * inv)
        out = out + hodge_dual(low).scale(rat(-beta * (m2 + 1), 2))
    return out


# -- structure constants -------------------------------------------------


# sl2 adjoint brackets [X, Y] and the invariant form (X|Y)
_ADJ = {
    ("H", "E"): (("E", 2),), ("E", "H"): (("E", -2),),
    ("H", "F"): (("F", -2),), ("F", "H"): (("F", 2),),
    ("E", "F"): (("H", 1),), ("F", "E"): (("H", -1),),
    ("H", "H"): (), ("E", "E"): (), ("F", "F"): (),
}
_FORM = {("H", "H"): 2, ("E", "F"): 1, ("F", "E"): 1}

# partner current of each n3 odd generator
_N3_PARTNER = {"e": "E", "h": "H", "f": "F"}

_N4_ORD = {"Gpp": 0, "Gpm": 1, "Gmp": 2, "Gmm": 3}


def _bracket_L(x, y):
    """[L_m, a_k] = ((h-1)m - k) a_{m+k}, doubled-mode arithmetic."""
    if y.gen == "L":
        c = rat(x.mode2 - y.mode2, 2)
    else:
        c = rat((weight2_of(y.gen) - 2) * x.mode2 - 2 * y.mode2, 4)
    return ((y.gen, x.mode2 + y.mode2, c),)


def _bracket_n2(x, y):
    kx, ky = kind_of(x.gen), kind_of(y.gen)
    s2 = x.mode2 + y.mode2
    if kx == "cur" and ky == "cur":
        return ()
    if kx == "cur" and ky == "odd":
        sign = 1 if y.gen == "Gp" else -1
        return ((y.gen, s2, rat(sign)),)
    # odd, odd
    if x.gen == y.gen:
        return ()
    a, b = (x, y) if x.gen == "Gp" else (y, x)
    return (("L", s2, rat(2)), ("J", s2, rat(a.mode2 - b.mode2, 2)))


def _bracket_n3(x, y):
    kx, ky = kind_of(x.gen), kind_of(y.gen)
    s2 = x.mode2 + y.mode2
    if kx == "cur" and ky == "cur":
        return tuple((z, s2, rat(c)) for z, c in _ADJ[(x.gen, y.gen)])
    if kx == "cur" and ky == "psi":
        return ()
    if kx == "cur" and ky == "odd":
        part = _N3_PARTNER[y.gen]
        out = [(z.lower(), s2, rat(c)) for z, c in _ADJ[(x.gen, part)]]
        fc = _FORM.get((x.gen, part), 0)
        if fc and x.mode2:
            out.append(("Psi", s2, rat(x.mode2 * fc)))
        return tuple(out)
    if kx == "odd" and ky == "psi":
        return ((_N3_PARTNER[x.gen], s2, rat(-1)),)
    if kx == "psi" and ky == "psi":
        return ()
    # odd, odd
    cx, cy = _N3_PARTNER[x.gen], _N3_PARTNER[y.gen]
    out = [(z, s2, rat(-c * (x.mode2 - y.mode2), 2))
           for z, c in _ADJ[(cx, cy)]]
    fc = _FORM.get((cx, cy), 0)
    if fc:
        out.append(("L", s2, rat(-4 * fc)))
    return tuple(out)


def _raise_label(gen, idx):
    labs = [gen[1], gen[2]]
    if labs[idx] != "m":
        return None
    labs[idx] = "p"
    return "G" + labs[0] + labs[1]


def _lower_label(gen, idx):
    labs = [gen[1], gen[2]]
    if labs[idx] != "p":
        return None
    labs[idx] = "m"
    return "G" + labs[0] + labs[1]


def _bracket_n4s(x, y, beta):
    kx, ky = kind_of(x.gen), kind_of(y.gen)
    s2 = x.mode2 + y.mode2
    if kx == "cur" and ky == "cur":
        return tuple((z, s2, rat(c)) for z, c in _ADJ[(x.gen, y.gen)])
    if kx == "cur" and ky == "odd":
        # the sl2 acts on the first superscript for beta=+1 and on the
        # second for beta=-1 (the realization decides)
        idx = 0 if beta == 1 else 1
        if x.gen == "H":
            sign = 1 if y.gen[1 + idx] == "p" else -1
            return ((y.gen, s2, rat(sign)),)
        if x.gen == "E":
            z = _raise_label(y.gen, idx)
        else:
            z = _lower_label(y.gen, idx)
        if z is None:
            return ()
        return ((z, s2, rat(1)),)
    # odd, odd
    if x.gen == y.gen:
        return ()
    if _N4_ORD[x.gen] > _N4_ORD[y.gen]:
        x, y = y, x  # no sign: both operands are odd
    d2 = x.mode2 - y.mode2
    pair = (x.gen, y.gen)
    if pair == ("Gpp", "Gpm"):
        return (("E", s2, rat(d2 * (1 + beta), 2)),)
    if pair == ("Gpp", "Gmp"):
        return (("E", s2, rat(d2 * (1 - beta), 2)),)
    if pair == ("Gpp", "Gmm"):
        return (("H", s2, rat(-d2, 2)), ("L", s2, rat(-2)))
    if pair == ("Gpm", "Gmp"):
        return (("H", s2, rat(beta * d2, 2)), ("L", s2, rat(2)))
    if pair == ("Gpm", "Gmm"):
        return (("F", s2, rat(-d2 * (1 - beta), 2)),)
    if pair == ("Gmp", "Gmm"):
        return (("F", s2, rat(-d2 * (1 + beta), 2)),)
    raise AlgebraError("unhandled odd pair %r" % (pair,))


def _bracket_table(alg, x, y):
    if x.gen == "L":
        return _bracket_L(x, y)
    if y.gen == "L":
        # [a, L] = -[L, a]; L is even, so no extra parity sign
        return tuple((g, m, -c) for g, m, c in _bracket_L(y, x))
    kx, ky = kind_of(x.gen), kind_of(y.gen)
    ordered = True
    if (kx, ky) in (("odd", "cur"), ("psi", "cur"), ("psi", "odd")):
        ordered = False
        x, y = y, x
    if alg == N2:
        out = _bracket_n2(x, y)
    elif alg == N3:
        out = _bracket_n3(x, y)
    elif alg == N4S_PLUS:
        out = _bracket_n4s(x, y, 1)
    else:
        out = _bracket_n4s(x, y, -1)
    if not ordered:
        # [b, a] = -(-1)^{p(a)p(b)} [a, b]
        if not (parity_of(x.gen) and parity_of(y.gen)):
            out = tuple((g, m, -c) for g, m, c in out)
    return out


# -- n4b: bracket via realization and re-expansion -----------------------


def _n4b_degree_basis(d2):
    """Canonical generator modes spanning the degree-d2 slice of the
    sum of the two n4s copies."""
    if d2 % 2 == 0:
        out = [GenMode("L", d2)]
        if d2 not in (0, -2):
            out.append(GenMode("L_bar", d2))
        for g in ("H", "E", "F"):
            out.append(GenMode(g, d2))
        for g in ("H_bar", "E_bar", "F_bar"):
            out.append(GenMode(g, d2))
        return tuple(out)
    out = [GenMode(g, d2) for g in ("Gpp", "Gpm", "Gmp", "Gmm")]
    if d2 != -1:
        out.extend(GenMode(g + "_bar", d2)
                   for g in ("Gpp", "Gpm", "Gmp", "Gmm"))
    return tuple(out)


_N4B_EXPANDERS = {}


def _n4b_expander(d2):
    hit = _N4B_EXPANDERS.get(d2)
    if hit is not None:
        return hit
    basis = _n4b_degree_basis(d2)
    ech = Echelon(lambda k: k)
    for i, gm in enumerate(basis):
        row = {(0, tp, xs): c
               for (tp, xs), c in realize(N4B, gm).terms.items()}
        row[(1, i)] = ONE
        if ech.insert(row) is None:
            raise AlgebraError("dependent n4b basis at degree2 %d" % d2)
    hit = (basis, ech)
    _N4B_EXPANDERS[d2] = hit
    return hit


def expand_n4b(f, d2):
    """Re-express a degree-d2 realization element over the generator
    basis; raises NotExpressibleError when it leaves the span."""
    if not f.terms:
        return {}
    basis, ech = _n4b_expander(d2)
    row = {(0, tp, xs): c for (tp, xs), c in f.terms.items()}
    rem = ech.reduce(row)
    out = {}
    for k, v in rem.items():
        if k[0] == 0:
            raise NotExpressibleError(
                "element of degree2 %d leaves the n4b generator span" % d2)
        out[basis[k[1]]] = -v
    return out


def _bracket_n4b(x, y):
    fb = contact_bracket(realize(N4B, x), realize(N4B, y))
    return expand_n4b(fb, x.mode2 + y.mode2)


# -- public bracket ------------------------------------------------------


_BRACKET_CACHE = {}


def bracket(alg, x, y):
    """Structure-constant expansion of [x, y] as {GenMode: Scalar}."""
    alg = normalize_alg(alg)
    x = genmode(alg, x.gen, x.mode2)
    y = genmode(alg, y.gen, y.mode2)
    key = (alg, x, y)
    hit = _BRACKET_CACHE.get(key)
    if hit is None:
        if alg == N4B:
            out = _bracket_n4b(x, y)
            hit = tuple(sorted(out.items()))
        else:
            terms = {}
            for g, m2, c in _bracket_table(alg, x, y):
                if not c:
                    continue
                gm = GenMode(g, m2)
                w = terms.get(gm)
                nv = w + c if w is not None else c
                if nv:
                    terms[gm] = nv
                else:
                    terms.pop(gm, None)
            hit = tuple(sorted(terms.items()))
        _BRACKET_CACHE[key] = hit
    return dict(hit)


def bracket_apply(alg, el_x, el_y):
    """Bilinear extension of bracket to AlgElement maps."""
    out = {}
    for x, cx in el_x.items():
        for y, cy in el_y.items():
            c = cx * cy
            if not c:
                continue
            for gm, v in bracket(alg, x, y).items():
                w = out.get(gm)
                nv = w + v * c if w is not None else v * c
                if nv:
                    out[gm] = nv
                else:
                    out.pop(gm, None)
    return out


def realize_element(alg, el):
    """Realize an AlgElement map as a Grassmann element."""
    alg = normalize_alg(alg)
    acc = gzero(SPLIT if alg == N2 else STANDARD)
    for gm, c in el.items():
        acc = acc + realize(alg, gm).scale(c)
    return acc


# -- phi: the n4s(+1) -> n4s(-1) relabeling inside n4b -------------------


_PHI = {"L": "L_bar", "H": "H_bar", "E": "E_bar", "F": "F_bar",
        "Gpp": "Gpp_bar", "Gpm": "Gmp_bar", "Gmp": "Gpm_bar",
        "Gmm": "Gmm_bar"}


def phi_genmode(g):
    """Isomorphism of the unbarred copy onto the barred copy (n4b
    names); swaps the middle superscript pair of the odd generators."""
    if is_barred(g.gen):
        raise AlgebraError("phi is defined on unbarred generators")
    return canonical_genmode(N4B, GenMode(_PHI[g.gen], g.mode2))


# -- consistency check: stored tables vs realization ---------------------


class TableReport(object):
    def __init__(self, alg, mode2_bound, pairs, mismatches):
        self.alg = alg
        self.mode2_bound = mode2_bound
        self.pairs = pairs
        self.mismatches = mismatches

    @property
    def ok(self):
        return not self.mismatches

    def summary(self):
        return ("%s: %d pairs within |mode2|<=%d, %d mismatches"
                % (self.alg, self.pairs, self.mode2_bound,
                   len(self.mismatches)))


def genmodes_upto(alg, mode2_bound, annihilation_only=False):
    """All canonical generator modes with |mode2| <= mode2_bound."""
    alg = normalize_alg(alg)
    out = []
    for gen in _BASE_GENS[alg]:
        p = parity_of(gen)
        for m2 in range(-mode2_bound, mode2_bound + 1):
            if (m2 - p) % 2:
                continue
            g = GenMode(gen, m2)
            if canonical_genmode(alg, g) != g:
                continue
            if annihilation_only and not in_annihilation(alg, g):
                continue
            out.append(g)
    return out


def check_tables(alg, mode_bound=3):
    """Compare the stored bracket of every generator pair with
    |mode2| <= 2*mode_bound against the realized contact bracket.

    For n4b the pairs are restricted to the annihilation side, where
    re-expansion over the basis is always possible; the check there is
    the round trip realization -> expansion -> realization.
    """
    alg = normalize_alg(alg)
    b2 = 2 * mode_bound
    gms = genmodes_upto(alg, b2, annihilation_only=(alg == N4B))
    mismatches = []
    pairs = 0
    for x in gms:
        fx = realize(alg, x)
        for y in gms:
            pairs += 1
            want = contact_bracket(fx, realize(alg, y))
            try:
                got = bracket(alg, x, y)
            except NotExpressibleError:
                mismatches.append((x, y, "not expressible"))
                continue
            if realize_element(alg, got) != want:
                mismatches.append((x, y, "coefficient mismatch"))
    return TableReport(alg, b2, pairs, mismatches)


# -- text and JSON forms --------------------------------------------------


def render_mode2(m2):
    if m2 % 2 == 0:
        return str(m2 // 2)
    return "%d/2" % m2


def parse_mode2(text):
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        if den.strip() != "2":
            raise AlgebraError("modes are half-integers: %r" % (text,))
        return int(num)
    return 2 * int(text)


def render_genmode(g):
    return "%s:%s" % (g.gen, render_mode2(g.mode2))


def parse_genmode(alg, text):
    if ":" not in text:
        raise AlgebraError("generator mode must look like NAME:MODE, got %r"
                           % (text,))
    gen, mode = text.split(":", 1)
    return genmode(alg, gen.strip(), parse_mode2(mode))


def genmode_to_json(g):
    return {"gen": g.gen, "mode2": g.mode2}


def genmode_from_json(alg, obj):
    return genmode(alg, obj["gen"], obj["mode2"])


def render_algelement(alg, el):
    """Deterministic text for an AlgElement map."""
    from .exactfield import render_scalar
    alg = normalize_alg(alg)
    if not el:
        return "0"
    order = {g: i for i, g in enumerate(_BASE_GENS[alg])}
    items = sorted(el.items(), key=lambda kv: (order[kv[0].gen],
                                               kv[0].mode2))
    parts = []
    for gm, c in items:
        if c.is_one():
            parts.append(render_genmode(gm))
        else:
            parts.append("(%s)*%s" % (render_scalar(c), render_genmode(gm)))
    return " + ".join(parts)
