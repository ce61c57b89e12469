"""Curated corpus of source-table identities behind `scf verify-paper`.

Every entry recomputes one stated claim about the algebras or their
modules and reports a status:

  PASS         the claim holds exactly as stated
  DISCREPANCY  the stated line is known to disagree with exact
               recomputation; the entry shows both forms and also pins
               the computed one, so any kernel drift turns it to FAIL
  FAIL         the kernel contradicts what the entry records

Statuses are data rather than asserts, so a single run reports every
line, grouped into suites by algebra plus one for the lambda-bracket
layer.
"""

from collections import namedtuple
from fractions import Fraction

from .algebra import N2, N3, N4B, N4S_PLUS, GenMode, genmode
from .classify import (classification_row, submodule_generated,
                       torsion_closure)
from .exactfield import DELTA, LAMBDA_SYM, ONE, rat, render_scalar
from .lambda_calc import (LambdaError, action_table_from_pbw,
                          adjoint_identification, algebra_spec_from_modes,
                          big_n4_action_table, big_n4_tower_algebra,
                          check_conformal_axioms, check_module_axioms,
                          mode_table_check, n2_algebra, n2_module_rank4,
                          n2_module_rank2_minus, n2_module_rank2_plus,
                          sl2_current_algebra, sl2_semidirect_algebra,
                          tower_mode_check, virasoro_algebra,
                          virasoro_module)
from .linalg import Echelon
from .singular import apply_u, find_singular, named_vector
from .verma import act, act_word, build_module, dshift, render_vector

PASS = "PASS"
FAIL = "FAIL"
DISCREPANCY = "DISCREPANCY"

CheckResult = namedtuple("CheckResult", ["suite", "name", "status",
                                         "detail"])

L = LAMBDA_SYM
R = rat


# -- small helpers ---------------------------------------------------------


def _vec(M, entries):
    out = M.zero()
    for coeff, dpow, name in entries:
        v = named_vector(M, name)
        if dpow:
            v = dshift(M, v, dpow)
        out = out + v.scale(coeff)
    return out


def _table_status(M, lam_prime, target, table, skip=()):
    bad = [i for i in sorted(table)
           if i not in skip
           and apply_u(M, i, lam_prime, target) != _vec(M, table[i])]
    if bad:
        return FAIL, ["lines off at u-indices %s" % bad]
    kept = [i for i in sorted(table) if i not in skip]
    return PASS, ["%d lines verified%s"
                  % (len(kept),
                     ", indices %s deferred to discrepancy entries"
                     % list(skip) if skip else "")]


def _span_eq(vs, ws):
    vs = [v for v in vs if v]
    ws = [w for w in ws if w]
    keys = sorted({k for v in vs + ws for k in v.terms})
    pos = {k: i for i, k in enumerate(keys)}
    ech = Echelon(lambda k: pos[k])
    for v in vs:
        ech.insert(dict(v.terms))
    dim = ech.dim
    if any(not ech.contains(dict(w.terms)) for w in ws):
        return False
    ech2 = Echelon(lambda k: pos[k])
    for w in ws:
        ech2.insert(dict(w.terms))
    return dim == ech2.dim


def _multiple_of(image, base):
    """Render image as `c base`, or None when it is not a multiple."""
    if not image:
        return "0"
    if image.terms.keys() != base.terms.keys():
        return None
    ks = sorted(image.terms)
    c = image.terms[ks[0]] * base.terms[ks[0]].inv()
    if any(image.terms[k] != base.terms[k] * c for k in ks):
        return None
    return render_scalar(c)


# -- the adjudicated u-operator tables --------------------------------------
#
# Same data as the regression tests keep independently; the flagged
# indices carry their own discrepancy entries below.

N3_TABLE_A2 = {
    1: [(ONE, 0, "a2")],
    2: [],
    3: [(-(L + R(4)), 0, "a5")],
    4: [(-(L + R(3)), 0, "a6"),
        (R(-4) * (L + ONE) * (L + R(3)), 1, "a1")],
    5: [],
    6: [(R(-4) * (L + R(3)), 1, "a2")],
    7: [((L + R(3)) * (L + R(2)), 0, "a8"),
        (R(-2) * (L + R(3)), 1, "a3")],
    8: [(R(-2), 1, "a5")],
}

N3_TABLE_A4 = {
    1: [(ONE, 0, "a4")],
    2: [(L - ONE, 0, "a6")],
    3: [(L - R(2), 0, "a7")],
    4: [],
    5: [(L * (L - ONE), 0, "a8"), (R(2) * (L - ONE), 1, "a3")],
    6: [],
    7: [],
    8: [(R(-2), 1, "a7")],
}

N3_TABLE_A6_L1 = {
    1: [(ONE, 0, "a6")],
    2: [],
    3: [(R(-3), 0, "a8"), (R(-6), 1, "a3")],
    5: [],
    6: [(R(-8), 1, "a6")],
    8: [(R(-2), 1, "a8"), (R(-4), 2, "a3")],
}

N4S_TABLE_A2 = {
    1: [(ONE, 0, "a2")],
    2: [],
    3: [(-ONE, 0, "a8")],
    4: [(L + R(2), 0, "a6")],
    5: [(-ONE, 0, "a9"), (-ONE, 0, "a10"),
        (R(2) * (L + R(2)), 1, "a1")],
    6: [],
    7: [(ONE, 0, "a13"), (R(-2), 1, "a3")],
    8: [],
    9: [(-ONE, 0, "a12"), (R(2), 1, "a2")],
    10: [(ONE, 0, "a12"), (R(2) * (L + R(2)), 1, "a2")],
    11: [(R(2) * (L + R(2)), 1, "a4"), (-(L + R(2)), 0, "a14")],
    12: [],
    13: [(R(-2), 1, "a8")],
    14: [(R(2) * (L + R(2)), 1, "a6")],
    15: [(-(L + R(2)), 0, "a16"), (R(2) * (L + ONE), 1, "a9"),
         (R(-2), 1, "a10")],
    16: [(R(-2), 1, "a12")],
}

N4S_TABLE_A3 = {
    1: [(ONE, 0, "a3")],
    2: [(ONE, 0, "a8")],
    3: [],
    4: [(L + ONE, 0, "a9"), (-ONE, 0, "a10")],
    5: [(L + R(2), 0, "a7")],
    6: [(ONE, 0, "a12")],
    7: [],
    8: [],
    9: [(ONE, 0, "a13")],
    10: [(L + R(2), 0, "a13")],
    11: [(-(L + R(2)), 0, "a15")],
    12: [],
    13: [],
    14: [(L + R(2), 0, "a16")],
    15: [],
    16: [],
}

N4S_TABLE_A4 = {
    1: [(ONE, 0, "a4")],
    2: [(-L, 0, "a6")],
    3: [(R(2) * L, 1, "a1"), (-L, 0, "a9"), (ONE, 0, "a10")],
    4: [],
    5: [(-ONE, 0, "a11")],
    6: [],
    7: [(-ONE, 0, "a15"), (R(2), 1, "a5")],
    8: [(R(2) * L, 1, "a2"), (L, 0, "a12")],
    9: [(ONE, 0, "a14"), (R(2), 1, "a4")],
    10: [(L - ONE, 0, "a14")],
    11: [],
    12: [(R(2) * L, 1, "a6")],
    13: [(-L, 0, "a16"), (R(2), 1, "a10")],
    14: [],
    15: [(R(-2), 1, "a11")],
    16: [(R(2), 1, "a14")],
}

N4S_TABLE_A5 = {
    1: [(ONE, 0, "a5")],
    2: [(ONE, 0, "a10")],
    3: [(-L, 0, "a7")],
    4: [(ONE, 0, "a11")],
    5: [],
    6: [(ONE, 0, "a14")],
    7: [],
    8: [(-L, 0, "a13")],
    9: [(ONE, 0, "a15")],
    10: [],
    11: [],
    12: [(-L, 0, "a16")],
    13: [],
    14: [],
    15: [],
    16: [],
}

N4B_TABLE_B2 = {
    1: [(ONE, 0, "b2")],
    2: [],
    3: [(-(L + R(2)), 0, "b9")],
    4: [(-(L + R(2)), 0, "b6")],
    5: [(-(L + R(2)) * R(1, 2), 0, "b7"),
        (-(L + R(2)) * R(1, 2), 0, "b10"),
        (R(-2) * (L + R(2)) * (L + ONE), 1, "b1")],
    6: [],
    7: [(-(L + R(3)), 0, "b12")],
    8: [(-(L + R(2)), 0, "b13"), (R(2) * (L + R(2)), 1, "b3")],
    9: [],
    10: [(L + R(3), 0, "b12"), (R(-4) * (L + R(2)), 1, "b2")],
    11: [(-(L + R(2)), 0, "b14"), (R(2) * (L + R(2)), 1, "b4")],
    12: [],
    13: [(R(-2) * (L + R(2)), 1, "b9")],
    14: [(R(-2) * (L + R(2)), 1, "b6")],
    15: [(-(L + R(2)) * (L + R(2)), 0, "b16"), (L + R(2), 1, "b7")],
    16: [(-ONE, 1, "b12")],
}

N4B_TABLE_B5 = {
    1: [(ONE, 0, "b5")],
    2: [(L * R(1, 2), 0, "b7"), (L * R(1, 2), 0, "b10")],
    3: [(-L, 0, "b8")],
    4: [(-L, 0, "b11")],
    5: [],
    6: [(L, 0, "b14")],
    7: [(-(L - ONE), 0, "b15")],
    8: [],
    9: [(L, 0, "b13")],
    10: [(L - ONE, 0, "b15")],
    11: [],
    12: [(L * L, 0, "b16"), (L, 1, "b7")],
    13: [],
    14: [],
    15: [],
    16: [(ONE, 1, "b15")],
}


# -- n2 entries -------------------------------------------------------------


def _n2_reordering_displays():
    M = build_module(N2, DELTA, L)
    vac = M.vacuum()
    gp = act(M, GenMode("Gp", -1), vac)
    gm = act(M, GenMode("Gm", -1), vac)
    gpgm = act(M, GenMode("Gp", -1), gm)
    two_d = DELTA * R(2)
    for k in (1, 2, 3):
        got = act(M, GenMode("Gm", 1), dshift(M, gp, k))
        want = dshift(M, vac, k).scale(two_d - L + R(2 * k)) \
            - dshift(M, gpgm, k - 1).scale(R(k))
        if got != want:
            return FAIL, ["computed first-display form drifted at k=%d" % k]
        got = act(M, GenMode("Gp", 1), dshift(M, gm, k))
        want = dshift(M, vac, k).scale(two_d + L) \
            + dshift(M, gpgm, k - 1).scale(R(k))
        if got != want:
            return FAIL, ["second display drifted at k=%d" % k]
    return DISCREPANCY, [
        "stated:   G-_1/2 d^k G+ v = (2D-L+2k) d^k v + k d^(k-1) G+G- v",
        "computed: G-_1/2 d^k G+ v = (2D-L+2k) d^k v - k d^(k-1) G+G- v",
        "the companion display G+_1/2 d^k G- v = (2D+L) d^k v"
        " + k d^(k-1) G+G- v is computed-correct as stated",
    ]


def _n2_singular_points():
    checks = [
        (R(1, 2), 1, [(1, ("Gp_v",))]),
        (R(-1, 2), 1, [(1, ("Gm_v",)), (2, ("GpGm_v",))]),
        (R(5, 7), 1, []),
    ]
    for d, lm, shape in checks:
        M = build_module(N2, d, lm)
        reps = find_singular(M, 3)
        got = [(r.level2, len(r.vectors)) for r in reps]
        if got != [(lv, len(nm)) for lv, nm in shape]:
            return FAIL, ["shape %s at (%s, %s)" % (got, d, lm)]
        for rep, (_, names) in zip(reps, shape):
            if not _span_eq(rep.vectors,
                            [named_vector(M, n) for n in names]):
                return FAIL, ["span off at (%s, %s)" % (d, lm)]
    return PASS, ["singular vectors at 2D-L=0, the 2D+L=0 pair,"
                  " and a generic point"]


def _n2_ranks():
    want = [(Fraction(1, 3), 1, 4), (Fraction(1, 2), 1, 2),
            (Fraction(-1, 2), 1, 2), (Fraction(0), 0, 0)]
    for d, lm, rk in want:
        row = classification_row(N2, d, lm)
        if row.rank != rk:
            return FAIL, ["rank %s at (%s, %s), stated %d"
                          % (row.rank, d, lm, rk)]
    return PASS, ["ranks 4 / 2 / 2 / 0 across the four sample points"]


# -- n3 entries -------------------------------------------------------------


def _n3_table_a2():
    M = build_module(N3, DELTA, L)
    return _table_status(M, L + R(2), named_vector(M, "a2"), N3_TABLE_A2,
                         skip=(7,))


def _n3_table_a4():
    M = build_module(N3, DELTA, L)
    return _table_status(M, L - R(2), named_vector(M, "a4"), N3_TABLE_A4)


def _n3_table_a6():
    M = build_module(N3, R(-3, 4), 1)
    return _table_status(M, R(1), named_vector(M, "a6"), N3_TABLE_A6_L1)


def _n3_u7_on_a2():
    M = build_module(N3, DELTA, L)
    got = apply_u(M, 7, L + R(2), named_vector(M, "a2"))
    want = _vec(M, N3_TABLE_A2[7])
    if got != want:
        return FAIL, ["computed form drifted: %s" % render_vector(got)]
    return DISCREPANCY, [
        "stated:   u_7^(L+2) a2 = (L+3)(L+2) a8 + 2(L+3) d a3",
        "computed: u_7^(L+2) a2 = (L+3)(L+2) a8 - 2(L+3) d a3",
        "so the invariant generator reads a8 - (2/(L+2)) d a3,"
        " not a8 + (2/(L+2)) d a3; the generated submodule is the"
        " same line either way",
    ]


def _n3_descent_first_case():
    M = build_module(N3, L * R(1, 4), L)
    a = {n: named_vector(M, n) for n in ("a1", "a3", "a4", "a7")}
    two_l2 = R(2) * L + R(2)
    f0f0 = act_word(M, (genmode(N3, "F", 0), genmode(N3, "F", 0)), a["a1"])
    checks = [
        ("Psi", 1, a["a3"], a["a1"].scale(-L * (L + R(2))),
         "Psi_1/2 a3 = -L(L+2) a1"),
        ("f", 1, a["a4"], f0f0.scale(two_l2),
         "f_1/2 a4 = (2L+2) F0^2 a1"),
        ("E", 2, a["a7"], a["a1"].scale(R(2) * L * (L - ONE) * two_l2),
         "E_1 a7 = 2L(L-1)(2L+2) a1"),
    ]
    for gen, m2, vec, want, line in checks:
        if act(M, genmode(N3, gen, m2), vec) != want:
            return FAIL, ["line failed: %s" % line]
    return PASS, ["three lowering identities, symbolic weights,"
                  " on 4D-L=0"]


def _n3_descent_second_case():
    M = build_module(N3, (L + R(2)) * R(-1, 4), L)
    a = {n: named_vector(M, n) for n in ("a1", "a2", "a3", "a5")}
    checks = [
        ("f", 1, a["a2"], a["a1"].scale(R(2) * (L + ONE)),
         "f_1/2 a2 = 2(L+1) a1"),
        ("Psi", 1, a["a3"], a["a1"].scale(-L * (L + R(2))),
         "Psi_1/2 a3 = -L(L+2) a1"),
        ("F", 2, a["a5"], a["a1"].scale(R(-4) * (L + ONE)),
         "F_1 a5 = -4(L+1) a1"),
    ]
    for gen, m2, vec, want, line in checks:
        if act(M, genmode(N3, gen, m2), vec) != want:
            return FAIL, ["line failed: %s" % line]
    return PASS, ["three lowering identities, symbolic weights,"
                  " on 4D+L+2=0"]


def _n3_f2_line():
    M = build_module(N3, R(1, 2), 2)
    a1 = named_vector(M, "a1")
    got = act(M, genmode(N3, "F", 4), dshift(M, a1))
    neighbor = act(M, genmode(N3, "F", 4), dshift(M, named_vector(M, "a5")))
    if got or neighbor:
        return FAIL, ["computed values drifted: %s / %s"
                      % (render_vector(got), render_vector(neighbor))]
    return DISCREPANCY, [
        "stated:   F_2 d a1 = -24 a1 at L=2 on 4D-L=0",
        "computed: F_2 d a1 = 0 (F_2 d v = 2 F_1 v = 0; the left side"
        " also sits at the wrong H_0-weight for a1)",
        "the type-correct neighbour F_2 d a5 computes to 0 as well,"
        " so no nonzero reading of the line survives",
    ]


def _n3_torsion_a7():
    M = build_module(N3, R(-1), 2)
    seeds = [v for rep in find_singular(M, 3) for v in rep.vectors]
    N = submodule_generated(M, seeds, 10)
    a7 = named_vector(M, "a7")
    if N.contains(a7):
        return FAIL, ["a7 already lies in the plain submodule"]
    if not N.contains(dshift(M, a7)):
        return FAIL, ["d a7 escapes the plain submodule"]
    T = torsion_closure(M, N, 10)
    if not T.contains(a7):
        return FAIL, ["torsion closure misses a7"]
    return PASS, ["d a7 lands in the submodule while a7 does not;"
                  " the torsion closure adjoins a7 (L=2, 4D+L+2=0)"]


def _n3_ranks():
    want = [(Fraction(1, 2), 2, 8, "4D-L=0"),
            (Fraction(-1), 2, 16, "4D+L+2=0"),
            (Fraction(1, 3), 2, 24, "generic"),
            (Fraction(0), 0, 0, "trivial")]
    for d, lm, rk, case in want:
        row = classification_row(N3, d, lm)
        if row.rank != rk or row.case != case:
            return FAIL, ["(%s, %s): rank %s case %s, stated %d %s"
                          % (d, lm, row.rank, row.case, rk, case)]
    return PASS, ["ranks 4L / 4L+8 / 8L+8 / 0 at the L=2 samples"]


# -- n4s entries ------------------------------------------------------------


def _n4s_table_a2():
    M = build_module(N4S_PLUS, DELTA, L)
    return _table_status(M, L + ONE, named_vector(M, "a2"), N4S_TABLE_A2)


def _n4s_table_a3():
    M = build_module(N4S_PLUS, DELTA, L)
    return _table_status(M, L + ONE, named_vector(M, "a3"), N4S_TABLE_A3,
                         skip=(12,))


def _n4s_table_a4():
    M = build_module(N4S_PLUS, DELTA, L)
    return _table_status(M, L - ONE, named_vector(M, "a4"), N4S_TABLE_A4)


def _n4s_table_a5():
    M = build_module(N4S_PLUS, DELTA, L)
    return _table_status(M, L - ONE, named_vector(M, "a5"), N4S_TABLE_A5,
                         skip=(3, 12))


def _n4s_u12_on_a3():
    M = build_module(N4S_PLUS, DELTA, L)
    got = apply_u(M, 12, L + ONE, named_vector(M, "a3"))
    if got:
        return FAIL, ["computed form drifted: %s" % render_vector(got)]
    return DISCREPANCY, [
        "stated:   u_12^(L+1) a3 = -a16",
        "computed: u_12^(L+1) a3 = 0 (u_12 ends with the odd factor"
        " a3 starts with, and odd squares vanish)",
        "a16 still enters the generator set through"
        " u_14^(L+1) a3 = (L+2) a16",
    ]


def _n4s_a5_lines():
    M = build_module(N4S_PLUS, DELTA, L)
    a5 = named_vector(M, "a5")
    got3 = apply_u(M, 3, L - ONE, a5)
    got12 = apply_u(M, 12, L - ONE, a5)
    if got3 != named_vector(M, "a7").scale(-L) \
            or got12 != named_vector(M, "a16").scale(-L):
        return FAIL, ["computed forms drifted"]
    return DISCREPANCY, [
        "stated:   u_3^(L-1) a5 = -a7  and  u_12^(L-1) a5 = -a16",
        "computed: u_3^(L-1) a5 = -L a7  and  u_12^(L-1) a5 = -L a16",
        "the missing L factor is invisible at L=1; membership in the"
        " generated submodule is unchanged for L >= 1",
    ]


def _n4s_lambda0_tables():
    M = build_module(N4S_PLUS, R(-1), 0)
    a = {n: named_vector(M, n) for n in ("a1", "a2", "a6", "a7", "a9")}
    a9s = a["a9"] - dshift(M, a["a1"]).scale(R(2))
    tables = [
        (a["a6"], {1: [(ONE, 0, "a6")], 3: [(R(2), 1, "a2"),
                                            (ONE, 0, "a12")],
                   7: [(R(4), 2, "a1"), (R(-2), 1, "a9"),
                       (ONE, 0, "a16")],
                   9: [(R(4), 1, "a6")],
                   13: [(R(4), 2, "a2"), (R(2), 1, "a12")],
                   16: [(R(4), 2, "a6")]}),
        (a["a7"], {1: [(ONE, 0, "a7")], 2: [(ONE, 0, "a13")],
                   6: [(ONE, 0, "a16")]}),
        (a9s, {1: [(ONE, 0, "a9"), (R(-2), 1, "a1")],
               2: [(-ONE, 0, "a12"), (R(-2), 1, "a2")],
               3: [(ONE, 0, "a13")], 6: [(R(-2), 1, "a6")],
               7: [(R(2), 1, "a7")], 9: [(R(2), 0, "a16")],
               13: [(R(2), 1, "a13")], 16: [(R(2), 1, "a16")]}),
    ]
    n = 0
    for target, table in tables:
        st, _ = _table_status(M, R(0), target, table)
        if st != PASS:
            return FAIL, ["a zero-weight table line failed"]
        n += len(table)
    return PASS, ["%d lines of the three L=0 generator tables" % n]


def _n4s_descent():
    M = build_module(N4S_PLUS, L * R(1, 2), L)
    a = {n: named_vector(M, n) for n in ("a1", "a4", "a5", "a11")}
    two_l2 = R(2) * L + R(2)
    f0a1 = act(M, genmode(N4S_PLUS, "F", 0), a["a1"])
    first = [
        ("Gpp", 1, a["a4"], M.zero(), "G++_1/2 a4 = 0"),
        ("Gpp", 1, a["a5"], a["a1"].scale(L * two_l2),
         "G++_1/2 a5 = L(2L+2) a1"),
        ("Gmm", 1, a["a4"], f0a1.scale(two_l2),
         "G--_1/2 a4 = (2L+2) F0 a1"),
        ("E", 2, a["a11"], a["a1"].scale(L * (L - ONE) * two_l2),
         "E_1 a11 = L(L-1)(2L+2) a1"),
    ]
    for gen, m2, vec, want, line in first:
        if act(M, genmode(N4S_PLUS, gen, m2), vec) != want:
            return FAIL, ["line failed on 2D-L=0: %s" % line]
    M = build_module(N4S_PLUS, (L + R(2)) * R(-1, 2), L)
    a = {n: named_vector(M, n) for n in ("a1", "a2", "a3", "a8")}
    second = [
        ("Gmm", 1, a["a2"], a["a1"].scale(R(2) * (L + ONE)),
         "G--_1/2 a2 = 2(L+1) a1"),
        ("Gmm", 1, a["a3"], M.zero(), "G--_1/2 a3 = 0"),
        ("Gmp", 1, a["a3"], a["a1"].scale(R(-2) * (L + ONE)),
         "G-+_1/2 a3 = -2(L+1) a1"),
        ("F", 2, a["a8"], a["a1"].scale(R(-2) * (L + ONE)),
         "F_1 a8 = -2(L+1) a1"),
    ]
    for gen, m2, vec, want, line in second:
        if act(M, genmode(N4S_PLUS, gen, m2), vec) != want:
            return FAIL, ["line failed on 2D+L+2=0: %s" % line]
    M0 = build_module(N4S_PLUS, R(-1), 0)
    got = act(M0, genmode(N4S_PLUS, "F", 4),
              dshift(M0, named_vector(M0, "a8")))
    if got != named_vector(M0, "a1").scale(R(-4)):
        return FAIL, ["line failed at L=0: F_2 d a8 = -4 a1"]
    return PASS, ["eight lowering identities symbolic, plus the L=0"
                  " two-level line F_2 d a8 = -4 a1"]


def _n4s_singular_points():
    M = build_module(N4S_PLUS, R(1, 2), 1)
    reps = find_singular(M, 3)
    ok = [(r.level2, len(r.vectors)) for r in reps] == [(1, 2), (2, 1)] \
        and _span_eq(reps[0].vectors, [named_vector(M, "a2"),
                                       named_vector(M, "a3")]) \
        and _span_eq(reps[1].vectors, [named_vector(M, "a8")])
    if not ok:
        return FAIL, ["first-case lists wrong at (1/2, 1)"]
    M = build_module(N4S_PLUS, R(-1), 0)
    reps = find_singular(M, 3)
    a = {n: named_vector(M, n) for n in ("a1", "a2", "a6", "a7", "a9",
                                         "a12", "a13")}
    ok = [(r.level2, len(r.vectors)) for r in reps] == [(2, 3), (3, 2)] \
        and _span_eq(reps[0].vectors,
                     [a["a6"], a["a7"],
                      a["a9"] - dshift(M, a["a1"]).scale(R(2))]) \
        and _span_eq(reps[1].vectors,
                     [a["a13"], a["a12"] + dshift(M, a["a2"]).scale(R(2))])
    if not ok:
        return FAIL, ["two-level family wrong at (-1, 0)"]
    return PASS, ["complete singular lists at (1/2, 1) and the"
                  " two-level family at (-1, 0)"]


def _n4s_ranks():
    want = [(Fraction(1, 2), 1, 4, "2D-L=0"),
            (Fraction(-3, 2), 1, 12, "2D+L+2=0"),
            (Fraction(-1), 0, 8, "2D+L+2=0"),
            (Fraction(1, 3), 1, 32, "generic")]
    for d, lm, rk, case in want:
        row = classification_row(N4S_PLUS, d, lm)
        if row.rank != rk or row.case != case:
            return FAIL, ["(%s, %s): rank %s case %s, stated %d %s"
                          % (d, lm, row.rank, row.case, rk, case)]
    return PASS, ["ranks 4L / 4L+8 (incl. L=0) / 16L+16 at the samples"]


# -- n4b entries ------------------------------------------------------------


def _n4b_table_b2():
    M = build_module(N4B, DELTA, L, L)
    return _table_status(M, L + ONE, named_vector(M, "b2"), N4B_TABLE_B2,
                         skip=(10, 15, 16))


def _n4b_table_b5():
    M = build_module(N4B, DELTA, L, L)
    return _table_status(M, L - ONE, named_vector(M, "b5"), N4B_TABLE_B5,
                         skip=(2,))


def _n4b_u10_on_b2():
    M = build_module(N4B, DELTA, L, L)
    got = apply_u(M, 10, L + ONE, named_vector(M, "b2"))
    if got != _vec(M, N4B_TABLE_B2[10]):
        return FAIL, ["computed form drifted: %s" % render_vector(got)]
    return DISCREPANCY, [
        "stated:   u_10^(L+1) b2 = (L+3) b12 - 4(L+1) d b2",
        "computed: u_10^(L+1) b2 = (L+3) b12 - 4(L+2) d b2",
    ]


def _n4b_u15_on_b2():
    M = build_module(N4B, DELTA, L, L)
    got = apply_u(M, 15, L + ONE, named_vector(M, "b2"))
    if got != _vec(M, N4B_TABLE_B2[15]):
        return FAIL, ["computed form drifted: %s" % render_vector(got)]
    return DISCREPANCY, [
        "stated:   u_15^(L+1) b2 = -4(L+1) d^2 b1 - (L+2)^2 b16"
        " + (L+2) d b7",
        "computed: u_15^(L+1) b2 = -(L+2)^2 b16 + (L+2) d b7, with"
        " no d^2 b1 term",
        "the matching invariant generator is b16 - (1/(L+2)) d b7;"
        " the stated d^2 b1 admixture is also internally inconsistent"
        " with its own generator display",
    ]


def _n4b_u16_on_b2():
    M = build_module(N4B, DELTA, L, L)
    got = apply_u(M, 16, L + ONE, named_vector(M, "b2"))
    if got != _vec(M, N4B_TABLE_B2[16]):
        return FAIL, ["computed form drifted: %s" % render_vector(got)]
    return DISCREPANCY, [
        "stated:   u_16^(L+1) b2 = -4 d b12",
        "computed: u_16^(L+1) b2 = -d b12",
    ]


def _n4b_u2_on_b5():
    M = build_module(N4B, DELTA, L, L)
    got = apply_u(M, 2, L - ONE, named_vector(M, "b5"))
    if got != _vec(M, N4B_TABLE_B5[2]):
        return FAIL, ["computed form drifted: %s" % render_vector(got)]
    return DISCREPANCY, [
        "stated:   u_2^(L-1) b5 = (1/2)(b7 + b10)",
        "computed: u_2^(L-1) b5 = (L/2)(b7 + b10)",
        "u_2 is the bare word G++ with no coefficient freedom, so the"
        " L factor is forced; the slip hides at L=1",
    ]


def _n4b_u5_generator_display():
    M = build_module(N4B, DELTA, L, L)
    got = apply_u(M, 5, L + ONE, named_vector(M, "b2"))
    if got != _vec(M, N4B_TABLE_B2[5]):
        return FAIL, ["the u_5 line itself drifted"]
    return DISCREPANCY, [
        "the worked line u_5^(L+1) b2 = -((L+2)/2)(b7 + b10"
        " + 4(L+1) d b1) is computed-correct",
        "stated generator display: b7 + b10 + 4(L+2) d b1",
        "computed generator:       b7 + b10 + 4(L+1) d b1",
    ]


def _n4b_b13_b14_forms():
    M = build_module(N4B, R(1, 3), 2, 1)
    e0 = genmode(N4B, "E", 0)
    eb0 = genmode(N4B, "E_bar", 0)
    vac = M.vacuum()
    gpp = GenMode("Gpp", -1)
    gmp = GenMode("Gmp", -1)
    gpm = GenMode("Gpm", -1)
    gmm = GenMode("Gmm", -1)
    printed13 = act_word(M, (gpp, gmp, gmm), vac).scale(R(2)) \
        - act_word(M, (gpp, gmp, gpm), vac)
    printed14 = act_word(M, (gpp, gpm, gmm), vac).scale(R(1)) \
        - act_word(M, (gpp, gpm, gmp), vac)
    if not act(M, e0, printed13) or not act(M, eb0, printed14):
        return FAIL, ["printed forms unexpectedly invariant"]
    for name in ("b13", "b14"):
        v = named_vector(M, name)
        if act(M, e0, v) or act(M, eb0, v):
            return FAIL, ["corrected %s lost invariance" % name]
    return DISCREPANCY, [
        "stated:   b13 = (L G++G-+G-- - G++G-+G+-) v and"
        " b14 = (Lb G++G+-G-- - G++G+-G-+) v",
        "computed: both need the trailing weight-string factor on the"
        " second word (F0 for b13, Fbar0 for b14); as stated they are"
        " not weight vectors and fail sl2-invariance, with the factor"
        " they pass and every table line through them verifies",
    ]


def _n4b_b15_coefficient():
    M = build_module(N4B, R(1, 3), 3, 3)
    vac = M.vacuum()
    gpp = GenMode("Gpp", -1)
    gmp = GenMode("Gmp", -1)
    gpm = GenMode("Gpm", -1)
    gmm = GenMode("Gmm", -1)
    f0 = genmode(N4B, "F", 0)
    fb0 = genmode(N4B, "F_bar", 0)
    lm = R(3)
    printed = act_word(M, (gmp, gmm, gpm), vac).scale(lm * lm) \
        - act_word(M, (gmp, gmm, gpp, fb0), vac).scale(lm) \
        + act_word(M, (gpp, gpm, gmm, f0), vac).scale(lm) \
        - act_word(M, (gpp, gpm, gmp, f0, fb0), vac).scale(lm)
    eb0 = genmode(N4B, "E_bar", 0)
    if not act(M, eb0, printed):
        return FAIL, ["printed b15 unexpectedly invariant at L=Lb=3"]
    b15 = named_vector(M, "b15")
    if act(M, genmode(N4B, "E", 0), b15) or act(M, eb0, b15):
        return FAIL, ["corrected b15 lost invariance"]
    got = apply_u(M, 7, R(2), named_vector(M, "b5"))
    if got != b15.scale(-(lm - ONE)):
        return FAIL, ["u_7^(L-1) b5 = -(L-1) b15 drifted"]
    return DISCREPANCY, [
        "stated:   b15's last word carries coefficient -Lb"
        " (distributing Lb over both words of the second bracket)",
        "computed: the last word's coefficient is -1; the stated form"
        " fails sl2-invariance whenever Lb != 1, the corrected one is"
        " invariant and matches the three table lines that pin b15",
    ]


def _n4b_descent_first_case():
    stated = [
        ("Gmm", 1, "b3", "F0", R(2) * (L + ONE),
         "G--_1/2 b3 = 2(L+1) F0 b1"),
        ("Gmm_bar", 1, "b4", "Fbar0", R(2) * (L + ONE),
         "Gbar--_1/2 b4 = 2(L+1) Fbar0 b1"),
        ("Gpp", 1, "b5", None, R(-2) * L * L * (L + ONE),
         "G++_1/2 b5 = -2L^2(L+1) b1"),
        ("E", 2, "b8", None, R(2) * L * (L - ONE) * (L + ONE),
         "E_1 b8 = 2L(L-1)(L+1) b1"),
        ("E_bar", 2, "b11", None, R(2) * L * (L - ONE) * (L + ONE),
         "Ebar_1 b11 = 2L(L-1)(L+1) b1"),
    ]
    for lm in (1, 2, 3):
        M = build_module(N4B, R(lm, 2), lm, lm)
        b1 = named_vector(M, "b1")
        sub = {"Delta": Fraction(lm, 2), "LambdaSym": Fraction(lm)}
        for gen, m2, src, string, coeff, line in stated:
            base = b1 if string is None else \
                act(M, genmode(N4B, string.replace("bar", "_bar")
                               if string != "F0" else "F", 0), b1)
            want = base.scale(coeff.subs(sub))
            if act(M, genmode(N4B, gen, m2), named_vector(M, src)) != want:
                return FAIL, ["line failed at L=%d: %s" % (lm, line)]
        v10 = named_vector(M, "b10") + dshift(M, b1).scale(R(2 * lm))
        fb0b1 = act(M, genmode(N4B, "F_bar", 0), b1)
        if act(M, genmode(N4B, "F_bar", 2), v10) != \
                fb0b1.scale(R(-2 * (lm + 2))):
            return FAIL, ["line failed at L=%d: Fbar_1 (b10 + 2L d b1)"
                          " = -2(L+2) Fbar0 b1" % lm]
    return PASS, ["six of the seven 2D-L=0 lowering lines at"
                  " L = 1, 2, 3 (the b15 line has its own entry)"]


def _n4b_b15_descent_line():
    vals = []
    for lm in (1, 2, 3):
        M = build_module(N4B, R(lm, 2), lm, lm)
        b1 = named_vector(M, "b1")
        img = act(M, genmode(N4B, "Gpp_bar", 3), named_vector(M, "b15"))
        c = _multiple_of(img, b1)
        want = R(8 * lm * lm * (lm + 1))
        if c != render_scalar(want):
            return FAIL, ["computed value drifted at L=%d: %s" % (lm, c)]
        vals.append(c)
    return DISCREPANCY, [
        "stated:   Gbar++_3/2 b15 = -2L^2(L+1) b1",
        "computed: Gbar++_3/2 b15 = 8L^2(L+1) b1 (values %s at"
        " L=1,2,3; the unbarred G++_3/2 image is zero, so no"
        " generator mix-up explains the stated coefficient)"
        % ", ".join(vals),
        "only nonzereness of the image enters the irreducibility"
        " argument, so its conclusion stands",
    ]


def _n4b_descent_second_case():
    for lm in (1, 2, 3):
        M = build_module(N4B, R(-(lm + 2), 2), lm, lm)
        b = {n: named_vector(M, n) for n in
             ("b1", "b2", "b3", "b4", "b6", "b9", "b10", "b12")}
        fb0b1 = act(M, genmode(N4B, "F_bar", 0), b["b1"])
        checks = [
            ("Gmm", 1, b["b2"], b["b1"].scale(R(2 * (lm + 1))),
             "G--_1/2 b2 = 2(L+1) b1"),
            ("Gpm_bar", 1, b["b3"], b["b1"].scale(R(-2 * lm * (lm + 1))),
             "Gbar+-_1/2 b3 = -2L(L+1) b1"),
            ("Gmp", 1, b["b4"], b["b1"].scale(R(-2 * lm * (lm + 1))),
             "G-+_1/2 b4 = -2L(L+1) b1"),
            ("F", 2, b["b6"], b["b1"].scale(R(-2 * (lm + 1))),
             "F_1 b6 = -2(L+1) b1"),
            ("F_bar", 2, b["b9"], b["b1"].scale(R(-2 * (lm + 1))),
             "Fbar_1 b9 = -2(L+1) b1"),
            ("F_bar", 2, b["b10"] + dshift(M, b["b1"]).scale(R(2 * lm)),
             fb0b1.scale(R(2 * lm)),
             "Fbar_1 (b10 + 2L d b1) = 2L Fbar0 b1"),
            ("Gmm_bar", 3, b["b12"], b["b1"].scale(R(8 * (lm + 1))),
             "Gbar--_3/2 b12 = 8(L+1) b1"),
        ]
        for gen, m2, vec, want, line in checks:
            if act(M, genmode(N4B, gen, m2), vec) != want:
                return FAIL, ["line failed at L=%d: %s" % (lm, line)]
    return PASS, ["all seven 2D+L+2=0 lowering lines at L = 1, 2, 3"]


def _n4b_g52_line():
    for lm in (1, 2):
        M = build_module(N4B, R(-(lm + 2), 2), lm, lm)
        img = act(M, genmode(N4B, "Gmm_bar", 5),
                  dshift(M, named_vector(M, "b12")))
        want = named_vector(M, "b1").scale(R(24 * (lm + 1)))
        if img != want:
            return FAIL, ["computed value drifted at L=%d" % lm]
    return DISCREPANCY, [
        "stated:   Gbar--_5/2 d b12 = 24(L+1) d b1",
        "computed: Gbar--_5/2 d b12 = 24(L+1) b1 (the stated right"
        " side sits one derivative level too high for the left)",
    ]


def _n4b_torsion_b15():
    M = build_module(N4B, R(-3, 2), 1, 1)
    seeds = [v for rep in find_singular(M, 3) for v in rep.vectors]
    N = submodule_generated(M, seeds, 10)
    b15 = named_vector(M, "b15")
    if N.contains(b15) or not N.contains(dshift(M, b15)):
        return FAIL, ["b15 torsion setup does not hold"]
    T = torsion_closure(M, N, 10)
    if not T.contains(b15):
        return FAIL, ["torsion closure misses b15"]
    return PASS, ["d b15 lands in the submodule while b15 does not;"
                  " the torsion closure adjoins b15 (L=Lb=1,"
                  " 2D+L+2=0)"]


def _n4b_mixed_weights():
    for d, lm, lb in ((Fraction(1, 2), 1, 2), (Fraction(-3, 2), 1, 2),
                      (Fraction(3, 2), 2, 1)):
        M = build_module(N4B, R(d.numerator, d.denominator), lm, lb)
        if find_singular(M, 3):
            return FAIL, ["unexpected singular vector at (%s, %d, %d)"
                          % (d, lm, lb)]
        row = classification_row(N4B, d, lm, lb)
        if row.case != "generic" or \
                row.rank != 16 * (lm + 1) * (lb + 1):
            return FAIL, ["row off at (%s, %d, %d)" % (d, lm, lb)]
    return PASS, ["off-diagonal weights stay irreducible with the"
                  " full rank, locus points included"]


def _n4b_ranks():
    want = [(Fraction(1, 2), 1, 1, 16, "2D-L=0"),
            (Fraction(-3, 2), 1, 1, 48, "2D+L+2=0"),
            (Fraction(-1), 0, 0, 16, "generic"),
            (Fraction(0), 0, 0, 0, "trivial")]
    for d, lm, lb, rk, case in want:
        row = classification_row(N4B, d, lm, lb)
        if row.rank != rk or row.case != case:
            return FAIL, ["(%s, %d, %d): rank %s case %s, stated %d %s"
                          % (d, lm, lb, row.rank, row.case, rk, case)]
    return PASS, ["ranks 8L(L+1) / 8(L+1)(L+2) / 16 / 0 at the"
                  " diagonal samples"]


# -- lambda entries ----------------------------------------------------------


def _lambda_hand_tables():
    for build in (virasoro_algebra, sl2_current_algebra,
                  sl2_semidirect_algebra, n2_algebra):
        rep = check_conformal_axioms(build())
        if not rep.ok:
            return FAIL, ["axioms fail for %s" % build().name]
    return PASS, ["sesquilinearity, skew symmetry and Jacobi for the"
                  " four hand-written tables"]


def _lambda_n2_modules():
    R2 = n2_algebra()
    for build in (n2_module_rank4, n2_module_rank2_plus,
                  n2_module_rank2_minus):
        rep = check_module_axioms(R2, build())
        if not rep.ok:
            return FAIL, ["module axioms fail for %s" % build().name]
    rep = check_module_axioms(virasoro_algebra(), virasoro_module())
    if not rep.ok:
        return FAIL, ["module axioms fail for the rank-1 family"]
    return PASS, ["module axioms for the three rank tables and the"
                  " rank-1 family, symbolic weights throughout"]


def _lambda_reconstruction():
    if algebra_spec_from_modes("n2").table != n2_algebra().table:
        return FAIL, ["n2 reconstruction differs from the hand table"]
    for alg in ("n3", "n4s+", "n4s-"):
        R293 = algebra_spec_from_modes(alg)
        if not check_conformal_axioms(Rspec := Rec if False else Rec).ok:
            return FAIL, ["axioms fail for %s" % alg]
    return PASS, [""]


def _lambda_pbw_cross_validation():
    gen = action_table_from_pbw("n2")
    ren = {"v": "v", "Gp.v": "v+", "Gm.v": "v-", "Gp.Gm.v": "v+-"}
    hand = n2_module_rank4(alpha=DELTA - DELTA)
    got = {(a, ren[w]): poly.rename_gens(ren)
           for (a, w), poly in gen.action.items()}
    if got != hand.action:
        return FAIL, ["induced-module series differ from the stated"
                      " rank-4 table at alpha = 0"]
    return PASS, ["the full induced module of n2, read off the mode"
                  " engine with symbolic weights, is the stated"
                  " rank-4 table at alpha = 0"]


def _lambda_barred_not_free():
    try:
        algebra_spec_from_modes("n4b")
    except LambdaError:
        pass
    else:
        return FAIL, ["a polynomial table appeared for the barred"
                      " family"]
    T = big_n4_tower_algebra()
    if not check_conformal_axioms(T).ok or tower_mode_check(T):
        return FAIL, ["tower table failed its checks"]
    Ms = big_n4_action_table(None, 0, 0)
    if not check_module_axioms(T, Ms).ok:
        return FAIL, ["tower-basis action table fails the module"
                      " axioms"]
    return PASS, ["the barred family admits no polynomial"
                  " lambda-table ([L_m, Lbar_n] is rational in the"
                  " modes); the sixteen monomial towers do, and the"
                  " induced action over them passes every axiom"]


def _lambda_adjoints():
    want = [("n2", Fraction(1), Fraction(0), ("J",)),
            ("n3", Fraction(1, 2), Fraction(0), ("Psi",)),
            ("n4s+", Fraction(1), Fraction(2), ("E",))]
    for alg, d, lm, gens in want:
        rep = adjoint_identification(alg, d, lm)
        if not rep.ok or rep.singular != gens:
            return FAIL, ["adjoint identification failed for %s" % alg]
    return PASS, ["each algebra, acting on itself, is the irreducible"
                  " module with the stated weights and singular"
                  " generator"]


# -- registry ----------------------------------------------------------------


ENTRIES = (
    ("n2", "string-reordering-displays", _n2_reordering_displays),
    ("n2", "singular-vectors", _n2_singular_points),
    ("n2", "ranks", _n2_ranks),
    ("n3", "u-table-on-a2", _n3_table_a2),
    ("n3", "u-table-on-a4", _n3_table_a4),
    ("n3", "u-table-on-a6-at-weight-1", _n3_table_a6),
    ("n3", "u7-on-a2-sign", _n3_u7_on_a2),
    ("n3", "lowering-on-4D-L", _n3_descent_first_case),
    ("n3", "lowering-on-4D+L+2", _n3_descent_second_case),
    ("n3", "F2-da1-line", _n3_f2_line),
    ("n3", "torsion-a7", _n3_torsion_a7),
    ("n3", "ranks", _n3_ranks),
    ("n4s", "u-table-on-a2", _n4s_table_a2),
    ("n4s", "u-table-on-a3", _n4s_table_a3),
    ("n4s", "u-table-on-a4", _n4s_table_a4),
    ("n4s", "u-table-on-a5", _n4s_table_a5),
    ("n4s", "u12-on-a3", _n4s_u12_on_a3),
    ("n4s", "a5-lines-weight-factor", _n4s_a5_lines),
    ("n4s", "weight-0-tables", _n4s_lambda0_tables),
    ("n4s", "lowering-identities", _n4s_descent),
    ("n4s", "singular-lists", _n4s_singular_points),
    ("n4s", "ranks", _n4s_ranks),
    ("n4b", "u-table-on-b2", _n4b_table_b2),
    ("n4b", "u-table-on-b5", _n4b_table_b5),
    ("n4b", "u10-on-b2", _n4b_u10_on_b2),
    ("n4b", "u15-on-b2", _n4b_u15_on_b2),
    ("n4b", "u16-on-b2", _n4b_u16_on_b2),
    ("n4b", "u2-on-b5", _n4b_u2_on_b5),
    ("n4b", "u5-generator-display", _n4b_u5_generator_display),
    ("n4b", "b13-b14-string-factors", _n4b_b13_b14_forms),
    ("n4b", "b15-last-coefficient", _n4b_b15_coefficient),
    ("n4b", "lowering-on-2D-L", _n4b_descent_first_case),
    ("n4b", "b15-lowering-coefficient", _n4b_b15_descent_line),
    ("n4b", "lowering-on-2D+L+2", _n4b_descent_second_case),
    ("n4b", "level-5/2-lowering", _n4b_g52_line),
    ("n4b", "torsion-b15", _n4b_torsion_b15),
    ("n4b", "off-diagonal-weights", _n4b_mixed_weights),
    ("n4b", "ranks", _n4b_ranks),
    ("lambda", "hand-tables", _lambda_hand_tables),
    ("lambda", "n2-module-tables", _lambda_n2_modules),
    ("lambda", "mode-reconstruction", _lambda_reconstruction),
    ("lambda", "pbw-cross-validation", _lambda_pbw_cross_validation),
    ("lambda", "big-n4-towers", _lambda_barred_not_free),
    ("lambda", "adjoint-identifications", _lambda_adjoints),
)


def suites():
    out = []
    for s, _, _ in ENTRIES:
        if s not in out:
            out.append(s)
    return tuple(out)


def run_suite(suite):
    """Run one suite (or "all"); returns a list of CheckResult rows."""
    names = suites()
    if suite != "all" and suite not in names:
        raise ValueError("unknown suite %r (have %s and all)"
                         % (suite, ", ".join(names)))
    out = []
    for s, name, fn in ENTRIES:
        if suite != "all" and s != suite:
            continue
        status, detail = fn()
        out.append(CheckResult(s, name, status, tuple(detail)))
    return out
