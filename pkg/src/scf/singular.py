"""Distinguished vectors and singular-vector search in the finite modules.

The module stores the explicit u-operator words for the n3, n4s+ and
n4b module families (and the short n2 quartet), applies them through
the exact PBW engine, and provides the three search tools built on
sparse nullspaces over Scalar:

  * e0_invariants / e0_generators: the sl2-invariant subspace per level
    and its new polynomial-module generators,
  * is_singular / find_singular: verification and exhaustive search of
    proper singular vectors, weight space by weight space,
  * singular_locus: for symbolic conformal weight, the rational Delta
    values admitting singular vectors, found by fraction-free
    elimination and confirmed by exact re-computation.
"""

from collections import namedtuple
from fractions import Fraction

from .exactfield import DELTA, ONE, PARAMS, Scalar, ZERO, rat
from .linalg import Echelon, nullspace, rational_roots
from .algebra import (GenMode, N2, N3, N4B, N4S_MINUS, N4S_PLUS, bracket,
                      generators, genmode, genmodes_upto, normalize_alg,
                      render_genmode)
from .verma import (INHOMOGENEOUS, VermaVector, act, act_word, build_module,
                    dshift, weight_of)


class SingularError(ValueError):
    pass


_DELTA_IDX = PARAMS.index("Delta")

# word tokens; a word acts with its rightmost factor first, so the
# tuple reads like the printed product
_D = GenMode("L", -2)
_F0 = GenMode("F", 0)
_FB0 = GenMode("F_bar", 0)
_E = GenMode("e", -1)
_H = GenMode("h", -1)
_F = GenMode("f", -1)
_GPP = GenMode("Gpp", -1)
_GPM = GenMode("Gpm", -1)
_GMP = GenMode("Gmp", -1)
_GMM = GenMode("Gmm", -1)
_GP = GenMode("Gp", -1)
_GM = GenMode("Gm", -1)


def _c(q):
    """Constant coefficient, ignoring the weight arguments."""
    val = rat(q)
    return lambda lam, lam_bar: val


_ONEC = _c(1)

# the u-operator words: index -> tuple of (coefficient(lam, lam_bar),
# word); u_i applied to the vacuum gives the named vector a_i / b_i

_U_N3 = {
    1: ((_ONEC, ()),),
    2: ((_ONEC, (_E,)),),
    3: ((lambda L, Lb: L, (_H,)),
        (_c(2), (_E, _F0))),
    4: ((lambda L, Lb: L * (L - ONE), (_F,)),
        (lambda L, Lb: ONE - L, (_H, _F0)),
        (_c(-1), (_E, _F0, _F0))),
    5: ((_ONEC, (_E, _H)),),
    6: ((lambda L, Lb: L, (_E, _F)),
        (_c(-1), (_E, _H, _F0))),
    7: ((lambda L, Lb: L * (L - ONE), (_H, _F)),
        (lambda L, Lb: rat(4) * (L - ONE), (_D, _F0)),
        (lambda L, Lb: rat(2) * (L - ONE), (_E, _F, _F0)),
        (_c(-1), (_E, _H, _F0, _F0))),
    8: ((_ONEC, (_E, _H, _F)),
        (_c(-2), (_D, _H))),
}

_U_N4S = {
    1: ((_ONEC, ()),),
    2: ((_ONEC, (_GPP,)),),
    3: ((_ONEC, (_GPM,)),),
    4: ((lambda L, Lb: L, (_GMP,)),
        (_c(-1), (_GPP, _F0))),
    5: ((lambda L, Lb: -L, (_GMM,)),
        (_ONEC, (_GPM, _F0))),
    6: ((_ONEC, (_GMP, _GPP)),),
    7: ((_ONEC, (_GPM, _GMM)),),
    8: ((_ONEC, (_GPP, _GPM)),),
    9: ((_ONEC, (_GMP, _GPM)),
        (_c(-1), (_GPP, _GMM))),
    10: ((lambda L, Lb: -L, (_GPP, _GMM)),
         (_ONEC, (_GPP, _GPM, _F0))),
    11: ((lambda L, Lb: -L * (L - ONE), (_GMP, _GMM)),
         (lambda L, Lb: L - ONE, (_GMP, _GPM, _F0)),
         (lambda L, Lb: L - ONE, (_GPP, _GMM, _F0)),
         (_c(-1), (_GPP, _GPM, _F0, _F0))),
    12: ((_ONEC, (_GMP, _GPP, _GPM)),),
    13: ((_ONEC, (_GPP, _GPM, _GMM)),),
    14: ((lambda L, Lb: -L, (_GMP, _GPP, _GMM)),
         (_ONEC, (_GMP, _GPP, _GPM, _F0))),
    15: ((lambda L, Lb: -L, (_GMP, _GPM, _GMM)),
         (_ONEC, (_GPP, _GPM, _GMM, _F0))),
    16: ((_ONEC, (_GMP, _GPP, _GPM, _GMM)),),
}

_U_N4B = {
    1: ((_ONEC, ()),),
    2: ((_ONEC, (_GPP,)),),
    3: ((lambda L, Lb: L, (_GMP,)),
        (_c(-1), (_GPP, _F0))),
    4: ((lambda L, Lb: Lb, (_GPM,)),
        (_c(-1), (_GPP, _FB0))),
    5: ((lambda L, Lb: L * Lb, (_GMM,)),
        (lambda L, Lb: -Lb, (_GPM, _F0)),
        (lambda L, Lb: -L, (_GMP, _FB0)),
        (_ONEC, (_GPP, _F0, _FB0))),
    6: ((_ONEC, (_GPP, _GPM)),),
    7: ((lambda L, Lb: L, (_GMP, _GPM)),
        (lambda L, Lb: L, (_GPP, _GMM)),
        (_c(-2), (_GPP, _GPM, _F0))),
    8: ((lambda L, Lb: -L * (L - ONE), (_GMP, _GMM)),
        (lambda L, Lb: L - ONE, (_GMP, _GPM, _F0)),
        (lambda L, Lb: L - ONE, (_GPP, _GMM, _F0)),
        (_c(-1), (_GPP, _GPM, _F0, _F0))),
    9: ((_ONEC, (_GPP, _GMP)),),
    10: ((lambda L, Lb: Lb, (_GPP, _GMM)),
         (lambda L, Lb: -Lb, (_GMP, _GPM)),
         (_c(-2), (_GPP, _GMP, _FB0))),
    11: ((lambda L, Lb: -Lb * (Lb - ONE), (_GPM, _GMM)),
         (lambda L, Lb: Lb - ONE, (_GPM, _GMP, _FB0)),
         (lambda L, Lb: Lb - ONE, (_GPP, _GMM, _FB0)),
         (_c(-1), (_GPP, _GMP, _FB0, _FB0))),
    12: ((_ONEC, (_GPP, _GPM, _GMP)),),
    13: ((lambda L, Lb: L, (_GPP, _GMP, _GMM)),
         (_c(-1), (_GPP, _GMP, _GPM, _F0))),
    14: ((lambda L, Lb: Lb, (_GPP, _GPM, _GMM)),
         (_c(-1), (_GPP, _GPM, _GMP, _FB0))),
    15: ((lambda L, Lb: L * Lb, (_GMP, _GMM, _GPM)),
         (lambda L, Lb: -L, (_GMP, _GMM, _GPP, _FB0)),
         (lambda L, Lb: Lb, (_GPP, _GPM, _GMM, _F0)),
         (_c(-1), (_GPP, _GPM, _GMP, _F0, _FB0))),
    16: ((_ONEC, (_GPP, _GPM, _GMP, _GMM)),
         (_c(-1), (_D, _GMP, _GPM)),
         (_c(-1), (_D, _GPP, _GMM))),
}

_U_TABLES = {N3: _U_N3, N4S_PLUS: _U_N4S, N4B: _U_N4B}

_N2_WORDS = {
    "v": ((_ONEC, ()),),
    "Gp_v": ((_ONEC, (_GP,)),),
    "Gm_v": ((_ONEC, (_GM,)),),
    "GpGm_v": ((_ONEC, (_GP, _GM)),),
}


def _scal(x):
    if isinstance(x, Scalar):
        return x
    return rat(x)


def u_terms(alg, i, lam, lam_bar=None):
    """The word expansion of u_i at the given weight superscripts.

    Returns a tuple of (Scalar coefficient, word) pairs with vanished
    coefficients already dropped.  lam_bar defaults to lam.
    """
    alg = normalize_alg(alg)
    table = _U_TABLES.get(alg)
    if table is None:
        raise SingularError("no u-operator table for %s" % alg)
    if i not in table:
        raise SingularError("u-operator index %r out of range for %s"
                            % (i, alg))
    lam = _scal(lam)
    lam_bar = lam if lam_bar is None else _scal(lam_bar)
    out = []
    for cf, word in table[i]:
        c = cf(lam, lam_bar)
        if c:
            out.append((c, word))
    return tuple(out)


def named_vector_ids(alg):
    alg = normalize_alg(alg)
    if alg == N2:
        return ("v", "Gp_v", "Gm_v", "GpGm_v")
    if alg == N3:
        return tuple("a%d" % i for i in range(1, 9))
    if alg == N4S_PLUS:
        return tuple("a%d" % i for i in range(1, 17))
    if alg == N4B:
        return tuple("b%d" % i for i in range(1, 17))
    # the mirrored small algebra carries no stored list; its module
    # theory matches n4s+ under the superscript swap
    raise SingularError("no named vectors for %s" % alg)


def _terms_to_vector(M, terms):
    out = M.zero()
    vac = M.vacuum()
    for c, word in terms:
        out = out + act_word(M, word, vac).scale(c)
    return out


def named_vector(M, name):
    """One of the distinguished module vectors, in PBW form.

    The documented vanishing cases come out as the zero vector on
    their own, through the string truncation at concrete weights.
    """
    if name not in named_vector_ids(M.alg):
        raise SingularError("unknown vector name %r for %s"
                            % (name, M.alg))
    if M.alg == N2:
        return _terms_to_vector(M, [(cf(M.lam, M.lam), w)
                                    for cf, w in _N2_WORDS[name]])
    i = int(name[1:])
    return _terms_to_vector(M, u_terms(M.alg, i, M.lam, M.lam_bar))


def apply_u(M, i, lam_prime, target, lam_bar_prime=None):
    """Apply u_i with shifted weight superscripts to a module vector."""
    out = M.zero()
    for c, word in u_terms(M.alg, i, lam_prime, lam_bar_prime):
        out = out + act_word(M, word, target).scale(c)
    return out


# -- annihilation checks ---------------------------------------------------


def _full_checkers(alg):
    """E_0 (and its bar partner) plus every degree-1/2 and degree-1
    generator mode, the complete singularity test set."""
    pos = {g: i for i, g in enumerate(generators(alg))}
    out = []
    if alg != N2:
        out.append(genmode(alg, "E", 0))
        if alg == N4B:
            out.append(genmode(alg, "E_bar", 0))
    deg12 = [g for g in genmodes_upto(alg, 2, annihilation_only=True)
             if g.mode2 in (1, 2)]
    deg12.sort(key=lambda g: (g.mode2, pos[g.gen]))
    out.extend(deg12)
    return tuple(out)


_REDUCED = {
    N3: (GenMode("f", 1), GenMode("Psi", 1)),
    N4S_PLUS: (GenMode("F", 2), GenMode("Gmp", 1), GenMode("Gmm", 1)),
    N4S_MINUS: (GenMode("F", 2), GenMode("Gpm", 1), GenMode("Gmm", 1)),
}


def _reduced_checkers(alg):
    extra = _REDUCED.get(alg)
    if extra is None:
        return _full_checkers(alg)
    out = [genmode(alg, "E", 0)]
    out.extend(extra)
    return tuple(out)


class SingularCheck(object):
    """Boolean verdict plus the witness data of a singularity test."""

    __slots__ = ("ok", "weight", "checked", "failing", "image")

    def __init__(self, ok, weight, checked, failing, image):
        self.ok = ok
        self.weight = weight
        self.checked = checked
        self.failing = failing
        self.image = image

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "SingularCheck(ok, %d generators)" % len(self.checked)
        if self.failing is None:
            return "SingularCheck(not a weight vector)"
        return ("SingularCheck(fails at %s)"
                % render_genmode(self.failing))


def is_singular(M, v, reduced=False):
    """Test the singular-vector conditions, returning a witness.

    A singular vector is a weight vector killed by every positive
    generator mode; E_0-invariance (with the bar partner for n4b) and
    the degree-{1/2, 1} modes suffice, see
    annihilator_generation_check.  With reduced=True the short test
    sets are used where available (n3, n4s+, n4s-); results agree
    with the full set on weight vectors.
    """
    if not v:
        raise SingularError("the zero vector is never singular")
    wt = weight_of(M, v)
    if wt == INHOMOGENEOUS:
        return SingularCheck(False, wt, (), None, None)
    checkers = (_reduced_checkers(M.alg) if reduced
                else _full_checkers(M.alg))
    checked = []
    for g in checkers:
        image = act(M, g, v)
        checked.append(g)
        if image:
            return SingularCheck(False, wt, tuple(checked), g, image)
    return SingularCheck(True, wt, tuple(checked), None, None)


# -- weight-space bookkeeping ----------------------------------------------


def _charge_ops(alg):
    if alg == N2:
        return (GenMode("J", 0),)
    if alg == N4B:
        return (GenMode("H", 0), GenMode("H_bar", 0))
    return (GenMode("H", 0),)


def _odd_charges(M):
    """Charge row per odd creation generator under the diagonal
    currents; each bracket must be a multiple of the generator."""
    ops = _charge_ops(M.alg)
    out = []
    for g in M.odd_gens:
        row = []
        for op in ops:
            br = bracket(M.alg, op, g)
            if any(z != g for z in br):
                raise SingularError("charge operator mixes %s"
                                    % render_genmode(g))
            row.append(br.get(g, ZERO).as_fraction())
        out.append(tuple(row))
    return tuple(out)


def _group_sig(M, key, charges, nops):
    tot = [Fraction(0)] * nops
    m = key.oddmask
    i = 0
    while m:
        if m & 1:
            for a in range(nops):
                tot[a] += charges[i][a]
        m >>= 1
        i += 1
    if M.alg == N4B:
        tot[0] -= 2 * key.wt[0]
        tot[1] -= 2 * key.wt[1]
    elif M.alg != N2:
        tot[0] -= 2 * key.wt
    return tuple(tot)


def _weight_groups(M, lv2, dpow_cutoff, charges, nops):
    groups = {}
    for key in M.keys_at_level2(lv2):
        if key.dpow > dpow_cutoff:
            continue
        groups.setdefault(_group_sig(M, key, charges, nops),
                          []).append(key)
    return groups


def _constraint_rows(M, keys, checkers):
    """Stacked equations <checker applied to combination> = 0, one row
    per (checker, target key) pair, columns indexed by source key."""
    rows = {}
    for ci, g in enumerate(checkers):
        for key in keys:
            for k2, c in M.act_key(g, key):
                rows.setdefault((ci, k2), {})[key] = c
    return [rows[k] for k in sorted(rows)]


# -- invariants and search -------------------------------------------------


def _require_concrete(M, what, delta_too=False):
    if M.symbolic:
        raise SingularError("%s needs concrete module weights" % what)
    if delta_too and not M.delta.is_const():
        raise SingularError("%s needs a concrete conformal weight" % what)


def e0_invariants(M, level_cutoff2):
    """Basis of the sl2-invariant subspace, keyed by doubled level.

    For n4b both E_0 and Ebar_0 are imposed; for n2, which has no sl2
    part, every vector counts and full level bases are returned.
    """
    _require_concrete(M, "invariant enumeration")
    ops = []
    if M.alg != N2:
        ops.append(genmode(M.alg, "E", 0))
        if M.alg == N4B:
            ops.append(genmode(M.alg, "E_bar", 0))
    out = {}
    for lv2 in range(level_cutoff2 + 1):
        keys = M.keys_at_level2(lv2)
        if not keys:
            continue
        sols = nullspace(_constraint_rows(M, keys, ops), keys)
        out[lv2] = [VermaVector(M, {k: c for k, c in s.items() if c})
                    for s in sols]
    return out


def e0_generators(M, level_cutoff2):
    """Invariant vectors that are new modulo derivative shifts.

    Within the cutoff these generate the invariant subspace as a
    module over the polynomial ring in the derivative.
    """
    inv = e0_invariants(M, level_cutoff2)
    gens = []
    for lv2 in sorted(inv):
        keys = M.keys_at_level2(lv2)
        pos = {k: i for i, k in enumerate(keys)}
        ech = Echelon(lambda k: pos[k])
        for w in inv.get(lv2 - 2, ()):
            ech.insert(dict(dshift(M, w).terms))
        for w in inv[lv2]:
            if ech.insert(dict(w.terms)) is not None:
                gens.append(w)
    return gens


SingularReport = namedtuple("SingularReport",
                            ["level2", "weight", "vectors", "checked"])


def find_singular(M, dpow_cutoff=3):
    """All proper singular vectors with derivative power <= cutoff.

    Scans every weight space level by level and returns one report per
    weight carrying singular vectors: the exact solution basis of the
    stacked annihilation conditions.  The highest weight vector itself
    (level 0) is excluded.
    """
    _require_concrete(M, "singular-vector search", delta_too=True)
    checkers = _full_checkers(M.alg)
    charges = _odd_charges(M)
    nops = 2 if M.alg == N4B else 1
    reports = []
    top = 2 * dpow_cutoff + M.n_odd
    for lv2 in range(1, top + 1):
        groups = _weight_groups(M, lv2, dpow_cutoff, charges, nops)
        for sig in sorted(groups):
            keys = groups[sig]
            sols = nullspace(_constraint_rows(M, keys, checkers), keys)
            if not sols:
                continue
            vecs = [VermaVector(M, {k: c for k, c in s.items() if c})
                    for s in sols]
            reports.append(SingularReport(lv2, weight_of(M, vecs[0]),
                                          tuple(vecs), checkers))
    return reports


# -- parametric locus ------------------------------------------------------


def _bareiss_pivots(rows, cols):
    """Pivot polynomials of fraction-free elimination.

    Row entries are cleared to polynomial form first; pivoting is
    deterministic (first nonzero row per column).  Any weight value
    killing a potential solution space must be a root of some pivot.
    """
    mat = []
    for r in rows:
        r = {k: v for k, v in r.items() if v}
        if not r:
            continue
        den = None
        for v in r.values():
            if not v.den.is_const():
                den = v.den if den is None else den * v.den
        if den is not None:
            s = Scalar(den)
            r = {k: v * s for k, v in r.items()}
        mat.append(r)
    pivots = []
    prev = ONE
    for col in cols:
        pidx = None
        for idx, r in enumerate(mat):
            if r.get(col):
                pidx = idx
                break
        if pidx is None:
            continue
        prow = mat.pop(pidx)
        p = prow[col]
        pivots.append(p)
        nxt = []
        for r in mat:
            rc = r.get(col, ZERO)
            support = set(r)
            if rc:
                support |= set(prow)
            nr = {}
            for k in support:
                if k == col:
                    continue
                val = p * r.get(k, ZERO) - rc * prow.get(k, ZERO)
                if val:
                    nr[k] = val / prev
            if nr:
                nxt.append(nr)
        mat = nxt
        prev = p
    return pivots


LocusEntry = namedtuple("LocusEntry", ["delta", "condition", "reports"])


def _condition_poly(d0):
    """The primitive integer polynomial vanishing at the locus point."""
    return rat(d0.denominator) * DELTA - rat(d0.numerator)


def singular_locus(M, dpow_cutoff=3):
    """Rational conformal weights admitting proper singular vectors.

    The module must carry the symbolic Delta and concrete odd weights.
    Candidate values are the rational roots of the elimination pivots;
    each one is confirmed by re-running find_singular on the
    specialized module, so false candidates are discarded.  Entries
    come back sorted by Delta with the primitive linear condition and
    the confirmed reports.
    """
    if M.delta.is_const():
        raise SingularError("singular_locus needs a symbolic Delta")
    if M.delta.params_used() != {"Delta"}:
        raise SingularError(
            "the conformal weight must be the plain Delta parameter")
    if M.alg == N2:
        if not M.lam.is_const():
            raise SingularError("the odd weight must be concrete")
    elif M.lam_int is None or (M.alg == N4B and M.lam_bar_int is None):
        raise SingularError("the odd weight must be concrete")
    checkers = _full_checkers(M.alg)
    charges = _odd_charges(M)
    nops = 2 if M.alg == N4B else 1
    cand = set()
    generic = False
    top = 2 * dpow_cutoff + M.n_odd
    for lv2 in range(1, top + 1):
        groups = _weight_groups(M, lv2, dpow_cutoff, charges, nops)
        for sig in sorted(groups):
            keys = groups[sig]
            rows = _constraint_rows(M, keys, checkers)
            pivots = _bareiss_pivots(rows, keys)
            if len(pivots) < len(keys):
                generic = True
            for p in pivots:
                if p.num.is_const():
                    continue
                roots, _ = rational_roots(p.num, _DELTA_IDX)
                cand.update(roots)
    entries = []
    if generic:
        # a solution space present for every Delta; not hit by the
        # stored families, kept for completeness
        entries.append(LocusEntry(None, ZERO, ()))
    for d0 in sorted(cand):
        M0 = build_module(M.alg, rat(d0), M.lam, M.lam_bar)
        reps = find_singular(M0, dpow_cutoff)
        if reps:
            entries.append(LocusEntry(d0, _condition_poly(d0),
                                      tuple(reps)))
    return entries


# -- generation check ------------------------------------------------------


GenerationCheck = namedtuple("GenerationCheck",
                             ["ok", "degree2", "got", "want"])


def annihilator_generation_check(alg, top2=6):
    """Verify the degree-{1/2, 1} modes bracket-generate each positive
    degree up to top2/2; this justifies the truncated test set used by
    is_singular and find_singular."""
    alg = normalize_alg(alg)
    pool = genmodes_upto(alg, top2, annihilation_only=True)

    def at(d2):
        return [g for g in pool if g.mode2 == d2]

    span = {1: [{g: ONE} for g in at(1)],
            2: [{g: ONE} for g in at(2)]}
    for d2 in range(3, top2 + 1):
        target = at(d2)
        order = {g: i for i, g in enumerate(target)}
        ech = Echelon(lambda g: order[g])
        for a in (1, 2):
            b = d2 - a
            if b not in span:
                continue
            for ga in at(a):
                for el in span[b]:
                    acc = {}
                    for gb, cb in el.items():
                        for gz, cz in bracket(alg, ga, gb).items():
                            cur = acc.get(gz, ZERO) + cb * cz
                            if cur:
                                acc[gz] = cur
                            else:
                                acc.pop(gz, None)
                    if acc:
                        ech.insert(acc)
        if ech.dim != len(target):
            return GenerationCheck(False, d2, ech.dim, len(target))
        span[d2] = ech.rows()
    return GenerationCheck(True, top2, None, None)
