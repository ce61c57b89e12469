import random

from fractions import Fraction

import pytest

from scf.algebra import (ALGEBRAS, N2, N3, N4B, N4S_MINUS, N4S_PLUS,
                         GenMode, bracket, genmodes_upto, parity_of)
from scf.exactfield import DELTA, LAMBDA_SYM, ONE, Scalar, rat
from scf.verma import (INHOMOGENEOUS, PBWKey, VermaError, act, act_word,
                       build_module, dshift, vector_from_json,
                       vector_to_json, weight_of)


def gm(gen, m2):
    return GenMode(gen, m2)


def n2_module(delta=None, lam=None):
    return build_module(N2, DELTA if delta is None else delta,
                        LAMBDA_SYM if lam is None else lam)


# -- basis bookkeeping ----------------------------------------------------


def test_generic_rank_per_ddegree():
    assert build_module(N2, rat(1, 3), rat(2)).keys_per_ddegree() == 4
    assert build_module(N3, rat(1, 3), 2).keys_per_ddegree() == 8 * 3
    assert build_module(N4S_PLUS, rat(1, 3), 2).keys_per_ddegree() == 16 * 3
    assert build_module(N4B, rat(1, 3), 2, 1).keys_per_ddegree() == 16 * 3 * 2


def test_keys_at_level2_counts():
    M = build_module(N3, rat(1, 3), 1)
    # level2 0: the two F0 powers of v
    assert len(M.keys_at_level2(0)) == 2
    # level2 1: three odd generators times two F0 powers
    assert len(M.keys_at_level2(1)) == 6
    # level2 2: dpow=1 (2 keys) plus 3 choose 2 odd words (6 keys)
    assert len(M.keys_at_level2(2)) == 8
    assert M.keys_at_level2(-1) == []


def test_symbolic_module_rejects_enumeration():
    M = build_module(N3, DELTA, LAMBDA_SYM)
    with pytest.raises(VermaError):
        M.keys_at_level2(1)


def test_weight_validation():
    with pytest.raises(VermaError):
        build_module(N3, rat(0), rat(1, 2))
    with pytest.raises(VermaError):
        build_module(N3, rat(0), -1)
    with pytest.raises(VermaError):
        build_module(N4B, rat(0), 1)
    with pytest.raises(VermaError):
        build_module(N3, rat(0), 1, 1)
    # n2 takes any scalar weight
    build_module(N2, rat(0), rat(1, 2))


# -- creation side --------------------------------------------------------


def test_odd_word_normal_ordering_n2():
    M = n2_module()
    v = M.vacuum()
    gp = act(M, gm("Gp", -1), v)
    gm_v = act(M, gm("Gm", -1), v)
    word = act(M, gm("Gp", -1), gm_v)
    assert word.terms == {PBWKey(0, 0b11, 0): ONE}
    # Gm Gp = -Gp Gm + 2 partial
    flipped = act(M, gm("Gm", -1), gp)
    assert flipped.terms == {PBWKey(0, 0b11, 0): -ONE,
                             PBWKey(1, 0, 0): rat(2)}
    # squares vanish
    assert not act(M, gm("Gp", -1), gp)
    assert not act(M, gm("Gm", -1), gm_v)


def test_odd_word_normal_ordering_n3():
    M = build_module(N3, DELTA, LAMBDA_SYM)
    v = M.vacuum()
    e = act(M, gm("e", -1), v)
    h = act(M, gm("h", -1), v)
    # h squares to -4 partial
    assert act(M, gm("h", -1), h).terms == {PBWKey(1, 0, 0): rat(-4)}
    # f e = -e f - 4 partial
    fe = act(M, gm("f", -1), e)
    assert fe.terms == {PBWKey(0, 0b101, 0): -ONE, PBWKey(1, 0, 0): rat(-4)}
    # e h = -h e reordered with no correction
    eh = act(M, gm("h", -1), e)
    assert eh.terms == {PBWKey(0, 0b011, 0): -ONE}


def test_odd_word_normal_ordering_n4():
    M = build_module(N4S_PLUS, DELTA, 2)
    v = M.vacuum()
    gpp = act(M, gm("Gpp", -1), v)
    gmm = act(M, gm("Gmm", -1), v)
    # Gmm Gpp = -Gpp Gmm - 2 partial
    out = act(M, gm("Gmm", -1), gpp)
    assert out.terms == {PBWKey(0, 0b1001, 0): -ONE,
                         PBWKey(1, 0, 0): rat(-2)}
    # Gpm Gmp pair carries +2 partial
    gmp = act(M, gm("Gmp", -1), v)
    out2 = act(M, gm("Gpm", -1), gmp)
    assert out2.terms == {PBWKey(0, 0b0110, 0): ONE}
    out3 = act(M, gm("Gmp", -1), act(M, gm("Gpm", -1), v))
    assert out3.terms == {PBWKey(0, 0b0110, 0): -ONE,
                          PBWKey(1, 0, 0): rat(2)}
    assert not act(M, gm("Gmm", -1), gmm)


def test_f0_string_and_truncation():
    M = build_module(N3, rat(1, 3), 1)
    v = M.vacuum()
    f0 = gm("F", 0)
    f1 = act(M, f0, v)
    assert f1.terms == {PBWKey(0, 0, 1): ONE}
    assert not act(M, f0, f1)          # truncated at Lambda = 1
    # E0 F0 v = 1*(Lambda - 0) v
    assert act(M, gm("E", 0), f1).terms == {PBWKey(0, 0, 0): ONE}
    assert act(M, gm("H", 0), f1).terms == {PBWKey(0, 0, 1): rat(-1)}
    # symbolic weight: no truncation
    Ms = build_module(N3, DELTA, LAMBDA_SYM)
    vs = Ms.vacuum()
    f2 = act_word(Ms, [f0, f0], vs)
    assert f2.terms == {PBWKey(0, 0, 2): ONE}
    e_f2 = act(Ms, gm("E", 0), f2)
    assert e_f2.terms == {PBWKey(0, 0, 1): rat(2) * (LAMBDA_SYM - ONE)}


# -- the contract examples ------------------------------------------------


def test_n2_g_plus_minus_pairing():
    # Gm_{1/2} d^k Gp v carries -k on the quartic term (the bracket
    # {Gm_{-1/2}, Gp_{-1/2}} = 2 partial fixes the sign); the Gp twin
    # carries +k.
    M = n2_module()
    v = M.vacuum()
    two_d = rat(2) * DELTA
    for k in range(4):
        gp = dshift(M, act(M, gm("Gp", -1), v), k)
        lhs = act(M, gm("Gm", 1), gp)
        want = dshift(M, v, k).scale(two_d - LAMBDA_SYM + rat(2 * k))
        if k:
            word = act(M, gm("Gp", -1), act(M, gm("Gm", -1), v))
            want = want - dshift(M, word, k - 1).scale(rat(k))
        assert lhs == want
        gmv = dshift(M, act(M, gm("Gm", -1), v), k)
        lhs2 = act(M, gm("Gp", 1), gmv)
        want2 = dshift(M, v, k).scale(two_d + LAMBDA_SYM)
        if k:
            want2 = want2 + dshift(M, word, k - 1).scale(rat(k))
        assert lhs2 == want2


def test_n2_mixed_level_action():
    # w = alpha d^k v + beta d^(k-1) Gp Gm v
    M = n2_module()
    v = M.vacuum()
    word = act(M, gm("Gp", -1), act(M, gm("Gm", -1), v))
    al, be, k = rat(3), rat(5), 2
    w = dshift(M, v, k).scale(al) + dshift(M, word, k - 1).scale(be)
    two_d = rat(2) * DELTA
    gp_w = act(M, gm("Gp", 1), w)
    want = dshift(M, act(M, gm("Gp", -1), v), k - 1).scale(
        al * rat(k) - be * (two_d + LAMBDA_SYM))
    assert gp_w == want
    gm_w = act(M, gm("Gm", 1), w)
    want = dshift(M, act(M, gm("Gm", -1), v), k - 1).scale(
        al * rat(k) + be * (two_d - LAMBDA_SYM + rat(2 * k)))
    assert gm_w == want
    j_w = act(M, gm("J", 2), w)
    want = dshift(M, v, k - 1).scale(
        al * LAMBDA_SYM * rat(k) + be * (two_d + LAMBDA_SYM))
    want = want + dshift(M, word, k - 2).scale(be * rat(k - 1) * LAMBDA_SYM)
    assert j_w == want


def test_l0_counts_level():
    M = n2_module()
    dv = dshift(M, M.vacuum(), 1)
    assert act(M, gm("L", 0), dv) == dv.scale(DELTA + ONE)
    M3 = build_module(N3, DELTA, 2)
    w = act(M3, gm("e", -1), dshift(M3, M3.vacuum(), 1))
    assert act(M3, gm("L", 0), w) == w.scale(DELTA + rat(3, 2))


def test_n3_psi_on_a3():
    M = build_module(N3, DELTA, LAMBDA_SYM)
    v = M.vacuum()
    a3 = (act(M, gm("h", -1), v).scale(LAMBDA_SYM)
          + act(M, gm("e", -1), act(M, gm("F", 0), v)).scale(rat(2)))
    out = act(M, gm("Psi", 1), a3)
    assert out == v.scale(-LAMBDA_SYM * (LAMBDA_SYM + rat(2)))


def test_n4b_pairing_and_weights():
    M = build_module(N4B, DELTA, 2, 2)
    v = M.vacuum()
    b2 = act(M, gm("Gpp", -1), v)
    out = act(M, gm("Gmm", 1), b2)
    # [Gmm_{1/2}, Gpp_{-1/2}] = H0 - 2 L0
    assert out == v.scale(rat(2) - rat(2) * DELTA)
    w = weight_of(M, b2)
    assert w == (DELTA + rat(1, 2), rat(3), rat(3))
    b9 = act(M, gm("Gpp", -1), act(M, gm("Gmp", -1), v))
    w9 = weight_of(M, b9)
    assert w9 == (DELTA + ONE, rat(2), rat(4))
    # barred string acts on the second index only
    fb = act(M, gm("F_bar", 0), v)
    assert fb.terms == {PBWKey(0, 0, (0, 1)): ONE}
    assert act(M, gm("H", 0), fb) == fb.scale(rat(2))
    assert act(M, gm("H_bar", 0), fb) == fb.scale(rat(0))
    assert act(M, gm("E", 0), fb).terms == {}
    assert act(M, gm("E_bar", 0), fb).terms == {PBWKey(0, 0, (0, 0)): rat(2)}


def test_weight_of_results():
    M = n2_module()
    v = M.vacuum()
    gp = act(M, gm("Gp", -1), v)
    assert weight_of(M, gp) == (DELTA + rat(1, 2), LAMBDA_SYM + ONE)
    mixed = v + dshift(M, v, 1)
    assert weight_of(M, mixed) == INHOMOGENEOUS
    assert weight_of(M, M.zero()) == INHOMOGENEOUS


def test_annihilation_precondition():
    M = n2_module()
    with pytest.raises(VermaError):
        act(M, gm("L", -4), M.vacuum())
    with pytest.raises(VermaError):
        act(M, gm("Gp", -3), M.vacuum())


# -- structural invariants ------------------------------------------------


def _random_vector(M, rng, max_level2=3):
    terms = {}
    for lv2 in range(max_level2 + 1):
        for key in M.keys_at_level2(lv2):
            if rng.random() < 0.4:
                num = rng.choice([-4, -3, -2, -1, 1, 2, 3, 4])
                terms[key] = rat(num, rng.randint(1, 3))
    from scf.verma import VermaVector
    return VermaVector(M, terms)


def _act_elem(M, elem, v):
    out = M.zero()
    for g, c in elem.items():
        out = out + act(M, g, v).scale(c)
    return out


MODULE_GRID = [
    (N2, rat(1, 3), rat(2), None),
    (N3, rat(-1, 4), 2, None),
    (N4S_PLUS, rat(1, 2), 1, None),
    (N4S_MINUS, rat(1, 2), 1, None),
    (N4B, rat(1, 5), 1, 1),
]


@pytest.mark.parametrize("alg,delta,lam,lam_bar", MODULE_GRID)
def test_representation_property(alg, delta, lam, lam_bar):
    M = build_module(alg, delta, lam, lam_bar)
    rng = random.Random("rep-" + alg)
    gms = [g for g in genmodes_upto(alg, 4, annihilation_only=True)
           if -2 <= g.mode2 <= 4]
    v = _random_vector(M, rng)
    pairs = [(rng.choice(gms), rng.choice(gms)) for _ in range(40)]
    for x, y in pairs:
        lhs = act(M, x, act(M, y, v))
        sign = (-1) ** (parity_of(x.gen) * parity_of(y.gen))
        swapped = act(M, y, act(M, x, v))
        lhs = lhs - swapped if sign == 1 else lhs + swapped
        rhs = _act_elem(M, bracket(alg, x, y), v)
        assert lhs == rhs, (x, y)


@pytest.mark.parametrize("alg,delta,lam,lam_bar", MODULE_GRID)
def test_degree_compatibility(alg, delta, lam, lam_bar):
    M = build_module(alg, delta, lam, lam_bar)
    rng = random.Random("deg-" + alg)
    gms = [g for g in genmodes_upto(alg, 4, annihilation_only=True)
           if -2 <= g.mode2 <= 4]
    for lv2 in range(4):
        for key in M.keys_at_level2(lv2):
            for x in rng.sample(gms, min(6, len(gms))):
                for k2, c in M.act_key(x, key):
                    assert M.key_level2(k2) == lv2 - x.mode2


def test_dshift_is_injective_and_matches_l_minus():
    for alg, delta, lam, lam_bar in MODULE_GRID:
        M = build_module(alg, delta, lam, lam_bar)
        rng = random.Random("dsh-" + alg)
        v = _random_vector(M, rng, max_level2=2)
        assert dshift(M, v, 1) == act(M, gm("L", -2), v)
        if v:
            assert dshift(M, v, 3)
            assert len(dshift(M, v, 3).terms) == len(v.terms)


def test_symbolic_delta_specializes():
    q = rat(5, 7)
    Ms = build_module(N3, DELTA, 2)
    Mc = build_module(N3, q, 2)
    words = [
        [gm("Psi", 1), gm("e", -1), gm("F", 0)],
        [gm("f", 1), gm("h", -1), gm("e", -1)],
        [gm("E", 2), gm("L", -2), gm("f", -1), gm("F", 0)],
        [gm("L", 2), gm("L", -2), gm("L", -2)],
    ]
    for word in words:
        vs = act_word(Ms, word, Ms.vacuum()).subs({"Delta": Fraction(5, 7)})
        vc = act_word(Mc, word, Mc.vacuum())
        assert vs.terms == vc.terms


def test_vector_json_round_trip():
    M = build_module(N4B, rat(1, 3), 1, 1)
    rng = random.Random("json")
    v = _random_vector(M, rng)
    data = vector_to_json(v)
    back = vector_from_json(M, data)
    assert back == v
    assert vector_to_json(M.zero()) == []


def test_vector_arithmetic():
    M = build_module(N3, rat(1), 1)
    v = M.vacuum()
    w = dshift(M, v, 1)
    assert (v + w) - v == w
    assert not (v - v)
    assert v.scale(rat(0)).terms == {}
    assert (v + w).level2() is None
    assert w.level2() == 2
    assert v.parity() == 0
    e = act(M, gm("e", -1), v)
    assert e.parity() == 1
    assert (v + e).parity() is None
    assert v.render() == "(1) v"
    assert "d" in w.render()
