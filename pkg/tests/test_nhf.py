import random

import pytest
from hypothesis import given, settings, strategies as st

from drinfeld_nhf.algebra.combinat import binom_mod_p
from drinfeld_nhf.checks import random_structure_form, random_texp
from drinfeld_nhf.errors import WeightViolation
from drinfeld_nhf.nearly_holomorphic import (NearlyHoloForm, compose_e2, const_texp, decompose_e2,
                                             e2_form, hyperderiv_texp, maass_shimura,
                                             maass_shimura_nhf, nhf_mul)
from drinfeld_nhf.texp import coefficient_forms, delta_texp, false_eisenstein

N = 30


@settings(max_examples=20)
@given(st.sampled_from([2, 3, 5]), st.integers(0, 10 ** 6), st.integers(1, 6))
def test_hyperderivative_leibniz(q, seed, n):
    rng = random.Random(seed)
    f, g = random_texp(rng, q, N), random_texp(rng, q, N)
    lhs = hyperderiv_texp(f * g, n)
    rhs = None
    for i in range(n + 1):
        term = hyperderiv_texp(f, i) * hyperderiv_texp(g, n - i)
        rhs = term if rhs is None else rhs + term
    assert lhs.agrees(rhs)


@settings(max_examples=20)
@given(st.sampled_from([2, 3]), st.integers(0, 10 ** 6), st.integers(0, 5), st.integers(0, 5))
def test_hyperderivative_composition(q, seed, a, b):
    f = random_texp(random.Random(seed), q, N)
    lhs = hyperderiv_texp(hyperderiv_texp(f, b), a)
    rhs = hyperderiv_texp(f, a + b) * binom_mod_p(a + b, a, q)
    assert lhs.agrees(rhs)


def test_hyperderivative_bookkeeping():
    g1, _ = coefficient_forms(N, 3)
    d = hyperderiv_texp(g1, 2)
    assert (d.weight, d.type) == (g1.weight + 4, g1.type + 2)
    # D^n raises t-orders by at least n, so precision never drops
    assert d.prec >= g1.prec
    with pytest.raises(ValueError):
        hyperderiv_texp(g1, -1)


def test_e2_components():
    E2 = e2_form(N, 3)
    assert (E2.weight, E2.type, E2.depth) == (2, 1, 1)
    assert E2.component(0).agrees(false_eisenstein(N, 3))
    assert E2.component(1).agrees(const_texp(-1, N, 3) * 1)
    assert E2.component(2).is_zero()


@pytest.mark.parametrize("q", [2, 3])
def test_ms_of_delta_is_delta_e2(q):
    D = delta_texp(40, q)
    assert maass_shimura(D, 1).agrees(nhf_mul(NearlyHoloForm.from_texp(D), e2_form(40, q)), 40)


@pytest.mark.parametrize("q", [3, 5])
def test_ms_composition(q):
    # delta_(k+2r)^s o delta_k^r = binom(r+s, r) delta_k^(r+s)
    g1, D = coefficient_forms(N, q)
    for f in (g1, D):
        for r in range(0, 3):
            for s in range(0, 3):
                a = maass_shimura_nhf(maass_shimura(f, r), s, f.weight + 2 * r)
                b = maass_shimura(f, r + s) * binom_mod_p(r + s, r, q)
                assert a.agrees(b), (f.name, r, s)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_ms_leibniz_and_bounds(q):
    g1, D = coefficient_forms(N, q)
    lhs = maass_shimura(g1 * D, 1)
    rhs = maass_shimura(D, 1) * g1 + maass_shimura(g1, 1) * D
    assert lhs.agrees(rhs)
    for f in (g1, D):
        for r in range(4):
            F = maass_shimura(f, r)
            assert F.weight == f.weight + 2 * r
            assert F.depth <= r and 2 * F.depth <= F.weight


@pytest.mark.parametrize("q", [2, 3])
def test_structure_round_trip(q):
    rng = random.Random(q)
    for _ in range(10):
        F, gs = random_structure_form(rng, q, 20)
        back = decompose_e2(F)
        for j in range(max(len(gs), len(back))):
            a = back[j] if j < len(back) else None
            b = gs[j] if j < len(gs) else None
            if b is None or b.is_zero():
                assert a is None or a.is_zero()
            else:
                assert a.agrees(b)
        assert compose_e2(back, 20, q, F.weight, F.type).agrees(F)


def test_decompose_of_ms_image():
    # delta(g1) = der g1 + k g1 u = (der g1 + k g1 E) - k g1 E_2
    q = 3
    g1, _ = coefficient_forms(N, q)
    k = g1.weight
    gs = decompose_e2(maass_shimura(g1, 1))
    assert len(gs) == 2
    assert gs[1].agrees(g1 * (-k))
    assert gs[0].agrees(hyperderiv_texp(g1, 1) + g1 * false_eisenstein(N, q) * k)


def test_weight_guards():
    g1, D = coefficient_forms(N, 3)
    with pytest.raises(WeightViolation):
        NearlyHoloForm(4, 0, [g1, g1], 3)
    with pytest.raises(WeightViolation):
        NearlyHoloForm.from_texp(g1) + NearlyHoloForm.from_texp(D)
    bad = NearlyHoloForm(2, 1, [const_texp(1, N, 3, 2, 1), const_texp(1, N, 3, 0, 0),
                                const_texp(1, N, 3, -2, -1)], 3)
    with pytest.raises(WeightViolation):
        decompose_e2(bad)


def test_nhf_json():
    j = e2_form(10, 3).to_json()
    assert (j["weight"], j["type"], j["depth"]) == (2, 1, 1)
    assert j["components"][1]["coeffs"][0] == "2"
