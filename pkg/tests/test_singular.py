import pytest

from scf.exactfield import DELTA, LAMBDA_SYM, ONE, ZERO, rat, render_scalar
from scf.linalg import Echelon
from scf.algebra import (GenMode, N2, N3, N4B, N4S_MINUS, N4S_PLUS, genmode)
from scf.verma import (INHOMOGENEOUS, act, act_word, build_module, dshift,
                       weight_of)
from scf.singular import (SingularError, annihilator_generation_check,
                          apply_u, e0_generators, e0_invariants,
                          find_singular, is_singular, named_vector,
                          named_vector_ids, singular_locus, u_terms)

L = LAMBDA_SYM
R = rat


def _rhs(M, entries):
    out = M.zero()
    for coeff, dpow, name in entries:
        v = named_vector(M, name)
        if dpow:
            v = dshift(M, v, dpow)
        out = out + v.scale(coeff)
    return out


def _check_table(M, lam_prime, target, table):
    bad = []
    for i in sorted(table):
        lhs = apply_u(M, i, lam_prime, target)
        if lhs != _rhs(M, table[i]):
            bad.append(i)
    assert not bad, "u-table lines off at indices %s" % bad


def _span(vectors):
    keys = sorted({k for v in vectors for k in v.terms})
    pos = {k: i for i, k in enumerate(keys)}
    ech = Echelon(lambda k: pos[k])
    for v in vectors:
        ech.insert(dict(v.terms))
    return ech, pos


def _same_span(vs, ws):
    vs = [v for v in vs if v]
    ws = [w for w in ws if w]
    ech, pos = _span(vs)
    if any(k not in pos for w in ws for k in w.terms):
        return False
    if any(not ech.contains(dict(w.terms)) for w in ws):
        return False
    ech2, _ = _span(ws)
    return ech.dim == ech2.dim


# -- named vectors ---------------------------------------------------------


def test_named_vector_n3_a3():
    M = build_module(N3, R(1, 3), 2)
    a3 = named_vector(M, "a3")
    vac = M.vacuum()
    expected = act(M, GenMode("h", -1), vac).scale(R(2)) + \
        act_word(M, (GenMode("e", -1), GenMode("F", 0)), vac).scale(R(2))
    assert a3 == expected
    assert len(a3.terms) == 2


def test_named_vector_ids_and_errors():
    assert named_vector_ids(N2) == ("v", "Gp_v", "Gm_v", "GpGm_v")
    assert len(named_vector_ids(N3)) == 8
    assert len(named_vector_ids(N4S_PLUS)) == 16
    assert named_vector_ids(N4B)[0] == "b1"
    with pytest.raises(SingularError):
        named_vector_ids(N4S_MINUS)
    M = build_module(N3, R(1, 3), 2)
    with pytest.raises(SingularError):
        named_vector(M, "b3")
    with pytest.raises(SingularError):
        u_terms(N2, 1, 0)
    with pytest.raises(SingularError):
        u_terms(N3, 9, 2)


def test_named_vanishing_n3():
    M1 = build_module(N3, R(1, 3), 1)
    assert not named_vector(M1, "a4")
    assert not named_vector(M1, "a7")
    assert all(named_vector(M1, "a%d" % i) for i in (1, 2, 3, 5, 6, 8))
    M0 = build_module(N3, R(1, 3), 0)
    zero_ids = {3, 4, 6, 7}
    for i in range(1, 9):
        v = named_vector(M0, "a%d" % i)
        assert bool(v) == (i not in zero_ids)


def test_named_vanishing_n4s():
    M1 = build_module(N4S_PLUS, R(1, 3), 1)
    for i in range(1, 17):
        assert bool(named_vector(M1, "a%d" % i)) == (i != 11)
    M0 = build_module(N4S_PLUS, R(1, 3), 0)
    zero_ids = {4, 5, 10, 11, 14, 15}
    for i in range(1, 17):
        assert bool(named_vector(M0, "a%d" % i)) == (i not in zero_ids)


def test_named_vanishing_n4b():
    M1 = build_module(N4B, R(1, 3), 1, 1)
    for i in range(1, 17):
        assert bool(named_vector(M1, "b%d" % i)) == (i not in (8, 11))
    M0 = build_module(N4B, R(1, 3), 0, 0)
    zero_ids = {3, 4, 5, 7, 8, 10, 11, 13, 14, 15}
    for i in range(1, 17):
        assert bool(named_vector(M0, "b%d" % i)) == (i not in zero_ids)


def test_b16_explicit_form():
    M = build_module(N4B, R(1, 3), 0, 0)
    vac = M.vacuum()
    gens = {x: GenMode(x, -1) for x in ("Gpp", "Gpm", "Gmp", "Gmm")}
    w = act_word(M, (gens["Gpp"], gens["Gpm"], gens["Gmp"], gens["Gmm"]),
                 vac)
    w = w - dshift(M, act_word(M, (gens["Gmp"], gens["Gpm"]), vac))
    w = w - dshift(M, act_word(M, (gens["Gpp"], gens["Gmm"]), vac))
    assert named_vector(M, "b16") == w


def test_named_vectors_are_invariant_weight_vectors():
    grid = [(N3, (0, 1, 2, 3), None), (N4S_PLUS, (0, 1, 2), None),
            (N4B, (0, 0), (1, 1), (2, 1), (1, 2))]
    cases = [(N3, lm, None) for lm in (0, 1, 2, 3)]
    cases += [(N4S_PLUS, lm, None) for lm in (0, 1, 2)]
    cases += [(N4B, lm, lb) for lm, lb in ((0, 0), (1, 1), (2, 1), (1, 2))]
    for alg, lm, lb in cases:
        M = build_module(alg, R(1, 5), lm, lb)
        ops = [genmode(alg, "E", 0)]
        if alg == N4B:
            ops.append(genmode(alg, "E_bar", 0))
        for name in named_vector_ids(alg):
            v = named_vector(M, name)
            if not v:
                continue
            assert weight_of(M, v) != INHOMOGENEOUS, (alg, lm, lb, name)
            for op in ops:
                assert not act(M, op, v), (alg, lm, lb, name)


# -- u-operator tables -----------------------------------------------------


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


def test_n3_table_on_a2_symbolic():
    M = build_module(N3, DELTA, L)
    _check_table(M, L + R(2), named_vector(M, "a2"), N3_TABLE_A2)


def test_n3_table_on_a4_symbolic():
    M = build_module(N3, DELTA, L)
    _check_table(M, L - R(2), named_vector(M, "a4"), N3_TABLE_A4)


def test_n3_table_on_a6_at_lambda_one():
    M = build_module(N3, R(-3, 4), 1)
    _check_table(M, R(1), named_vector(M, "a6"), N3_TABLE_A6_L1)


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


def test_n4s_table_on_a2_symbolic():
    M = build_module(N4S_PLUS, DELTA, L)
    _check_table(M, L + ONE, named_vector(M, "a2"), N4S_TABLE_A2)


def test_n4s_table_on_a3_symbolic():
    M = build_module(N4S_PLUS, DELTA, L)
    _check_table(M, L + ONE, named_vector(M, "a3"), N4S_TABLE_A3)


def test_n4s_table_on_a4_symbolic():
    M = build_module(N4S_PLUS, DELTA, L)
    _check_table(M, L - ONE, named_vector(M, "a4"), N4S_TABLE_A4)


def test_n4s_table_on_a5_symbolic():
    M = build_module(N4S_PLUS, DELTA, L)
    _check_table(M, L - ONE, named_vector(M, "a5"), N4S_TABLE_A5)


N4S_L0_IDX = (1, 2, 3, 6, 7, 8, 9, 12, 13, 16)

N4S_L0_ON_A6 = {
    1: [(ONE, 0, "a6")],
    2: [],
    3: [(R(2), 1, "a2"), (ONE, 0, "a12")],
    6: [],
    7: [(R(4), 2, "a1"), (R(-2), 1, "a9"), (ONE, 0, "a16")],
    8: [],
    9: [(R(4), 1, "a6")],
    12: [],
    13: [(R(4), 2, "a2"), (R(2), 1, "a12")],
    16: [(R(4), 2, "a6")],
}

N4S_L0_ON_A7 = {
    1: [(ONE, 0, "a7")],
    2: [(ONE, 0, "a13")],
    3: [],
    6: [(ONE, 0, "a16")],
    7: [],
    8: [],
    9: [],
    12: [],
    13: [],
    16: [],
}

N4S_L0_ON_A9 = {
    1: [(ONE, 0, "a9"), (R(-2), 1, "a1")],
    2: [(-ONE, 0, "a12"), (R(-2), 1, "a2")],
    3: [(ONE, 0, "a13")],
    6: [(R(-2), 1, "a6")],
    7: [(R(2), 1, "a7")],
    8: [],
    9: [(R(2), 0, "a16")],
    12: [],
    13: [(R(2), 1, "a13")],
    16: [(R(2), 1, "a16")],
}


def test_n4s_tables_at_lambda_zero():
    M = build_module(N4S_PLUS, R(-1), 0)
    a6 = named_vector(M, "a6")
    a7 = named_vector(M, "a7")
    a9 = named_vector(M, "a9") - dshift(M, named_vector(M, "a1")).scale(R(2))
    _check_table(M, R(0), a6, N4S_L0_ON_A6)
    _check_table(M, R(0), a7, N4S_L0_ON_A7)
    _check_table(M, R(0), a9, N4S_L0_ON_A9)


N4B_TABLE_B2 = {
    1: [(ONE, 0, "b2")],
    2: [],
    3: [(-(L + R(2)), 0, "b9")],
    4: [(-(L + R(2)), 0, "b6")],
    5: [(-(L + R(2)) / R(2), 0, "b7"), (-(L + R(2)) / R(2), 0, "b10"),
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
    15: [(-(L + R(2)) * (L + R(2)), 0, "b16"),
         (L + R(2), 1, "b7")],
    16: [(-ONE, 1, "b12")],
}

N4B_TABLE_B5 = {
    1: [(ONE, 0, "b5")],
    2: [(L / R(2), 0, "b7"), (L / R(2), 0, "b10")],
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


def test_n4b_table_on_b2_symbolic():
    M = build_module(N4B, DELTA, L, L)
    _check_table(M, L + ONE, named_vector(M, "b2"), N4B_TABLE_B2)


def test_n4b_table_on_b5_symbolic():
    M = build_module(N4B, DELTA, L, L)
    _check_table(M, L - ONE, named_vector(M, "b5"), N4B_TABLE_B5)


def test_apply_u_concrete_examples():
    for lm in (2, 3, 4, 5):
        M = build_module(N3, R(1, 3), lm)
        got = apply_u(M, 3, lm + 2, named_vector(M, "a2"))
        assert got == named_vector(M, "a5").scale(R(-(lm + 4)))
    for lm in (1, 2, 3):
        M = build_module(N4S_PLUS, R(1, 3), lm)
        got = apply_u(M, 4, lm + 1, named_vector(M, "a2"))
        assert got == named_vector(M, "a6").scale(R(lm + 2))
    for lm in (1, 2):
        M = build_module(N4B, R(1, 3), lm, lm)
        got = apply_u(M, 3, lm + 1, named_vector(M, "b2"))
        assert got == named_vector(M, "b9").scale(R(-(lm + 2)))


# -- invariants ------------------------------------------------------------


def test_e0_invariant_generator_counts():
    assert len(e0_generators(build_module(N3, R(1, 3), 0), 7)) == 4
    assert len(e0_generators(build_module(N3, R(1, 3), 2), 7)) == 8
    assert len(e0_generators(build_module(N4S_PLUS, R(1, 3), 1), 8)) == 15
    assert len(e0_generators(build_module(N4S_PLUS, R(1, 3), 2), 8)) == 16
    assert len(e0_generators(build_module(N4B, R(1, 3), 0, 0), 8)) == 6
    assert len(e0_generators(build_module(N4B, R(1, 3), 1, 1), 8)) == 14


def test_e0_invariants_contain_named_vectors():
    M = build_module(N4S_PLUS, R(1, 3), 2)
    inv = e0_invariants(M, 8)
    for name in named_vector_ids(N4S_PLUS):
        v = named_vector(M, name)
        ech, pos = _span(inv[v.level2()])
        assert all(k in pos for k in v.terms)
        assert ech.contains(dict(v.terms)), name


def test_e0_invariants_level_zero_is_vacuum_line():
    M = build_module(N3, R(1, 3), 3)
    inv = e0_invariants(M, 0)
    assert len(inv[0]) == 1
    assert set(inv[0][0].terms) == {M.vacuum_key()}


# -- is_singular -----------------------------------------------------------


def test_is_singular_examples():
    M = build_module(N2, R(1, 2), 1)
    chk = is_singular(M, named_vector(M, "Gp_v"))
    assert chk.ok and bool(chk)
    assert chk.failing is None
    assert len(chk.checked) == 4
    M = build_module(N3, R(-3, 4), 1)
    assert is_singular(M, named_vector(M, "a6")).ok


def test_is_singular_witness_symbolic():
    M = build_module(N2, DELTA, LAMBDA_SYM)
    chk = is_singular(M, named_vector(M, "Gp_v"))
    assert not chk.ok
    assert chk.failing == GenMode("Gm", 1)
    want = M.vacuum().scale(R(2) * DELTA - LAMBDA_SYM)
    assert chk.image == want


def test_is_singular_zero_and_inhomogeneous():
    M = build_module(N2, R(1, 2), 1)
    with pytest.raises(SingularError):
        is_singular(M, M.zero())
    v = M.vacuum() + named_vector(M, "Gp_v")
    chk = is_singular(M, v)
    assert not chk.ok
    assert chk.weight == INHOMOGENEOUS
    assert chk.failing is None


def test_reduced_checks_match_full():
    cases = [(N3, R(1, 4) * R(2), 2), (N3, R(-1), 2), (N3, R(-3, 4), 1),
             (N4S_PLUS, R(1, 2), 1), (N4S_PLUS, R(-3, 2), 1),
             (N4S_PLUS, R(-1), 0), (N4S_PLUS, R(1, 3), 2)]
    for alg, d, lm in cases:
        M = build_module(alg, d, lm)
        vecs = [named_vector(M, nm) for nm in named_vector_ids(alg)]
        vecs += [v for rep in find_singular(M, 2) for v in rep.vectors]
        for v in vecs:
            if not v:
                continue
            assert is_singular(M, v).ok == is_singular(M, v, reduced=True).ok
    # the mirrored small algebra uses its own reduced set
    M = build_module(N4S_MINUS, R(1, 2), 1)
    for rep in find_singular(M, 2):
        for v in rep.vectors:
            assert is_singular(M, v, reduced=True).ok


# -- find_singular ---------------------------------------------------------


def test_find_singular_n2_extra_pair():
    M = build_module(N2, R(-1, 2), 1)
    reps = find_singular(M, 3)
    assert [(r.level2, len(r.vectors)) for r in reps] == [(1, 1), (2, 1)]
    assert _same_span(reps[0].vectors, [named_vector(M, "Gm_v")])
    assert _same_span(reps[1].vectors, [named_vector(M, "GpGm_v")])
    # the mirror point
    Mb = build_module(N2, R(-1, 2), -1)
    reps = find_singular(Mb, 3)
    assert [(r.level2, len(r.vectors)) for r in reps] == [(1, 1), (2, 1)]
    assert _same_span(reps[0].vectors, [named_vector(Mb, "Gp_v")])
    gm_gp = act_word(Mb, (GenMode("Gm", -1), GenMode("Gp", -1)),
                     Mb.vacuum())
    assert _same_span(reps[1].vectors, [gm_gp])


def test_find_singular_n2_plain_points():
    M = build_module(N2, R(1, 2), 1)
    reps = find_singular(M, 3)
    assert len(reps) == 1
    assert _same_span(reps[0].vectors, [named_vector(M, "Gp_v")])
    assert find_singular(build_module(N2, R(5, 7), 1), 3) == []


def test_find_singular_n3_points():
    M = build_module(N3, R(1, 2), 2)
    reps = find_singular(M, 3)
    assert len(reps) == 1 and reps[0].level2 == 1
    assert _same_span(reps[0].vectors, [named_vector(M, "a2")])
    M = build_module(N3, R(-1), 2)
    reps = find_singular(M, 3)
    assert len(reps) == 1 and reps[0].level2 == 1
    assert _same_span(reps[0].vectors, [named_vector(M, "a4")])
    M = build_module(N3, R(-3, 4), 1)
    reps = find_singular(M, 3)
    assert len(reps) == 1 and reps[0].level2 == 2
    assert _same_span(reps[0].vectors, [named_vector(M, "a6")])
    assert find_singular(build_module(N3, R(1, 3), 2), 3) == []


def test_find_singular_n4s_case_four():
    M = build_module(N4S_PLUS, R(-1), 0)
    reps = find_singular(M, 3)
    assert [(r.level2, len(r.vectors)) for r in reps] == [(2, 3), (3, 2)]
    a = {nm: named_vector(M, nm) for nm in named_vector_ids(N4S_PLUS)}
    lvl2 = [a["a6"], a["a7"], a["a9"] - dshift(M, a["a1"]).scale(R(2))]
    lvl3 = [a["a13"], a["a12"] + dshift(M, a["a2"]).scale(R(2))]
    assert _same_span(reps[0].vectors, lvl2)
    assert _same_span(reps[1].vectors, lvl3)


def test_find_singular_n4s_first_case():
    M = build_module(N4S_PLUS, R(1, 2), 1)
    reps = find_singular(M, 3)
    assert [(r.level2, len(r.vectors)) for r in reps] == [(1, 2), (2, 1)]
    a = {nm: named_vector(M, nm) for nm in named_vector_ids(N4S_PLUS)}
    assert _same_span(reps[0].vectors, [a["a2"], a["a3"]])
    assert _same_span(reps[1].vectors, [a["a8"]])


def test_find_singular_n4b_points():
    M = build_module(N4B, R(1, 2), 1, 1)
    reps = find_singular(M, 3)
    assert len(reps) == 1 and reps[0].level2 == 1
    assert _same_span(reps[0].vectors, [named_vector(M, "b2")])
    M = build_module(N4B, R(-3, 2), 1, 1)
    reps = find_singular(M, 3)
    assert len(reps) == 1 and reps[0].level2 == 1
    assert _same_span(reps[0].vectors, [named_vector(M, "b5")])
    # off the diagonal the module stays irreducible
    assert find_singular(build_module(N4B, R(1, 2), 1, 2), 3) == []
    assert find_singular(build_module(N4B, R(5, 7), 1, 1), 3) == []


def test_find_singular_reports_verify():
    for alg, d, lm, lb in ((N2, R(-1, 2), R(1), None), (N3, R(-1), 2, None),
                           (N4S_PLUS, R(-3, 2), 1, None),
                           (N4B, R(1, 2), 1, 1)):
        M = build_module(alg, d, lm, lb)
        for rep in find_singular(M, 3):
            for v in rep.vectors:
                chk = is_singular(M, v)
                assert chk.ok
                assert weight_of(M, v) == rep.weight
    with pytest.raises(SingularError):
        find_singular(build_module(N2, DELTA, R(1)), 2)


# -- singular_locus --------------------------------------------------------


def test_singular_locus_n2():
    entries = singular_locus(build_module(N2, DELTA, 1), 3)
    assert [e.delta for e in entries] == [R(-1, 2).as_fraction(),
                                          R(1, 2).as_fraction()]
    assert render_scalar(entries[0].condition) == "2*Delta + 1"
    assert render_scalar(entries[1].condition) == "2*Delta - 1"
    assert [(r.level2, len(r.vectors)) for r in entries[0].reports] == \
        [(1, 1), (2, 1)]
    assert [(r.level2, len(r.vectors)) for r in entries[1].reports] == \
        [(1, 1)]


def test_singular_locus_n3():
    entries = singular_locus(build_module(N3, DELTA, 2), 3)
    got = {render_scalar(e.condition):
           [(r.level2, len(r.vectors)) for r in e.reports]
           for e in entries}
    assert got == {"Delta + 1": [(1, 1)], "2*Delta - 1": [(1, 1)]}
    entries = singular_locus(build_module(N3, DELTA, 0), 3)
    assert [render_scalar(e.condition) for e in entries] == ["Delta"]


def test_singular_locus_n4s():
    entries = singular_locus(build_module(N4S_PLUS, DELTA, 1), 3)
    got = {render_scalar(e.condition):
           [(r.level2, len(r.vectors)) for r in e.reports]
           for e in entries}
    assert got == {"2*Delta + 3": [(1, 2), (3, 2), (4, 1)],
                   "2*Delta - 1": [(1, 2), (2, 1)]}


def test_singular_locus_n4b():
    entries = singular_locus(build_module(N4B, DELTA, 1, 1), 3)
    got = {render_scalar(e.condition):
           [(r.level2, len(r.vectors)) for r in e.reports]
           for e in entries}
    assert got == {"2*Delta + 3": [(1, 1)], "2*Delta - 1": [(1, 1)]}


def test_singular_locus_requires_symbolic_delta():
    with pytest.raises(SingularError):
        singular_locus(build_module(N2, R(1, 2), 1), 2)
    with pytest.raises(SingularError):
        singular_locus(build_module(N2, DELTA + LAMBDA_SYM, 1), 2)
    with pytest.raises(SingularError):
        singular_locus(build_module(N2, DELTA, LAMBDA_SYM), 2)


# -- generation check ------------------------------------------------------


def test_annihilator_generation_check():
    for alg in (N2, N3, N4S_PLUS, N4S_MINUS, N4B):
        chk = annihilator_generation_check(alg)
        assert chk.ok, (alg, chk)
