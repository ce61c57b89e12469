from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scf.exactfield import HALF, I, ONE, SQRT2, ZERO, rat
from scf.grassmann import (
    GrassmannError, SPLIT, STANDARD, contact_bracket, convert, euler,
    gderive, gmono, gmul, grade2, gzero, hodge_dual, parse_gelement,
    render_gelement,
)


def xi(*labels, tpow=0, coeff=ONE, kind=STANDARD):
    return gmono(tpow, labels, coeff, kind)


def test_anticommutation():
    assert gmul(xi(1), xi(2)) == xi(1, 2)
    assert gmul(xi(2), xi(1)) == xi(1, 2, coeff=-ONE)


def test_nilpotence():
    assert not gmul(xi(1), xi(1))


def test_tpowers_add():
    f = xi(1, tpow=1)
    g = xi(2, 3, tpow=-1)
    assert gmul(f, g) == xi(1, 2, 3)


def test_sign_normalized_at_construction():
    assert gmono(0, (2, 1), ONE) == gmono(0, (1, 2), -ONE)
    assert gmono(0, (3, 1, 2), ONE) == gmono(0, (1, 2, 3), ONE)


def test_odd_derivative_sign():
    # d/dxi2 (xi1 xi2) = -xi1
    assert gderive(xi(1, 2), 2) == xi(1, coeff=-ONE)
    assert gderive(xi(1, 2), 1) == xi(2)


def test_t_derivative():
    assert gderive(xi(1, tpow=2), "t") == xi(1, tpow=1, coeff=rat(2))


def test_euler_counts_odd_degree():
    f = xi(1, 3, tpow=5)
    assert euler(f) == xi(1, 3, tpow=5, coeff=rat(2))


def test_bracket_virasoro_modes():
    # L_m = -t^(m+1)/2; [L_1, L_0] = L_1
    def L(m):
        return gmono(m + 1, (), -HALF)
    assert contact_bracket(L(1), L(0)) == L(1)
    # general (m-n) structure on a couple of pairs
    assert contact_bracket(L(2), L(-1)) == L(1).scale(rat(3))


def test_bracket_constant_against_t():
    one = gmono(0, (), ONE)
    t = gmono(1, (), ONE)
    assert contact_bracket(one, t) == gmono(0, (), rat(2))


def test_bracket_split_gplus_gminus():
    # split N=2: G+_{-1/2} = xi+ t^0, G-_{-1/2} = xi- t^0; bracket = -1
    gp = xi(1, kind=SPLIT)
    gm = xi(2, kind=SPLIT)
    out = contact_bracket(gp, gm)
    assert out == gmono(0, (), -ONE, SPLIT)


def test_bracket_requires_homogeneous():
    f = xi(1) + gmono(0, (), ONE)
    with pytest.raises(GrassmannError):
        contact_bracket(f, xi(2))


def test_hodge_duals():
    assert hodge_dual(xi(1)) == xi(2, 3, 4)
    assert hodge_dual(xi(2)) == xi(1, 3, 4, coeff=-ONE)
    assert hodge_dual(xi(3)) == xi(1, 2, 4)
    assert hodge_dual(xi(4)) == xi(1, 2, 3, coeff=-ONE)
    assert hodge_dual(xi(1, 2)) == xi(3, 4)
    for a in (xi(1), xi(2), xi(3), xi(4), xi(1, 3), xi(2, 4)):
        assert gmul(a, hodge_dual(a)) == xi(1, 2, 3, 4)


def test_grade2():
    assert grade2((0, ())) == -2          # constants sit at degree -1
    assert grade2((1, (1, 2))) == 2
    assert grade2((0, (1,))) == -1


def rand_mono(rng, N, kind):
    labels = tuple(sorted(rng.sample(range(1, N + 1), rng.randint(0, N))))
    tp = rng.randint(-2, 2)
    c = rat(rng.randint(1, 3))
    return gmono(tp, labels, c, kind)


@pytest.mark.parametrize("N,kind", [(2, STANDARD), (2, SPLIT),
                                    (3, STANDARD), (4, STANDARD),
                                    (4, SPLIT)])
def test_super_jacobi_sampled(N, kind):
    rng = random.Random(20188 + N + (kind == SPLIT))
    for _ in range(120):
        f = rand_mono(rng, N, kind)
        g = rand_mono(rng, N, kind)
        h = rand_mono(rng, N, kind)
        if not (f and g and h):
            continue
        pf = f.parity()
        pg = g.parity()
        lhs = contact_bracket(f, contact_bracket(g, h))
        rhs = contact_bracket(contact_bracket(f, g), h)
        tail = contact_bracket(g, contact_bracket(f, h))
        if pf and pg:
            tail = -tail
        assert lhs == rhs + tail


@pytest.mark.parametrize("N,kind", [(2, STANDARD), (2, SPLIT),
                                    (4, STANDARD), (4, SPLIT)])
def test_super_anticommutativity(N, kind):
    rng = random.Random(7 + N + (kind == SPLIT))
    for _ in range(80):
        f = rand_mono(rng, N, kind)
        g = rand_mono(rng, N, kind)
        if not (f and g):
            continue
        ab = contact_bracket(f, g)
        ba = contact_bracket(g, f)
        if f.parity() and g.parity():
            assert ab == ba
        else:
            assert ab == -ba


@pytest.mark.parametrize("N", [2, 4])
def test_convert_intertwines_brackets(N):
    rng = random.Random(99 + N)
    for _ in range(60):
        f = rand_mono(rng, N, STANDARD)
        g = rand_mono(rng, N, STANDARD)
        if not (f and g):
            continue
        lhs = convert(contact_bracket(f, g), SPLIT, N)
        rhs = contact_bracket(convert(f, SPLIT, N), convert(g, SPLIT, N))
        assert lhs == rhs


@pytest.mark.parametrize("N", [2, 4])
def test_convert_round_trip(N):
    rng = random.Random(4 + N)
    for _ in range(40):
        f = rand_mono(rng, N, STANDARD)
        assert convert(convert(f, SPLIT, N), STANDARD, N) == f


def test_bracket_degree_additivity():
    rng = random.Random(11)
    for _ in range(60):
        f = rand_mono(rng, 4, STANDARD)
        g = rand_mono(rng, 4, STANDARD)
        if not (f and g):
            continue
        (mf,) = f.terms
        (mg,) = g.terms
        out = contact_bracket(f, g)
        for m in out.terms:
            assert grade2(m) == grade2(mf) + grade2(mg)


def test_render_parse_round_trip():
    cases = [
        gzero(),
        xi(1, 3, tpow=-1, coeff=rat(-3, 2)),
        xi(1, 2, 3, 4, coeff=I) + xi(2, tpow=2, coeff=SQRT2 * HALF),
        gmono(0, (), rat(5)),
        xi(1, kind=SPLIT, coeff=I) + xi(2, 4, kind=SPLIT, tpow=1),
    ]
    for f in cases:
        kind = f.kind
        assert parse_gelement(render_gelement(f), kind) == f
