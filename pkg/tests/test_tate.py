import pytest

from drinfeld_nhf.algebra.kseries import tseries_ring
from drinfeld_nhf.algebra.poly import poly_ring, rat_field
from drinfeld_nhf.errors import CrossCheckFailure
from drinfeld_nhf.nearly_holomorphic import e2_form
from drinfeld_nhf.serialize import render_series
from drinfeld_nhf.tate import (cusp_false_eisenstein, derham_change_of_basis, tate_coeffs,
                               tate_crosscheck, tate_exp, tate_lattice, tate_module)


def test_g1_q2_frozen():
    g1, g2 = tate_coeffs(8, 2)
    assert render_series(g1.truncate(6), "X") == "1 + (T^2+T)*X + (T^2+T)*X^3 + (T^2+T)*X^4 + (T^4+T)*X^5 + O(X^6)"
    assert g2.val == 1 and g2.coeff(1) == rat_field(2).one()


@pytest.mark.parametrize("q", [2, 3, 5])
def test_lowest_orders(q):
    N = 12 if q < 5 else 8
    g1, g2 = tate_coeffs(N, q)
    K = rat_field(q)
    assert g1.val == 0 and g1.coeff(0) == K.one()
    assert g2.val == q - 1
    Emu = cusp_false_eisenstein(N, q)
    assert Emu.val == 1 and Emu.coeff(1) == K.one()


@pytest.mark.parametrize("q,N", [(2, 30), (3, 30), (5, 12)])
def test_crosscheck_with_t_expansions(q, N):
    assert tate_crosscheck(N, q) == {"g1": True, "g2": True, "E": True}


def test_exponential_is_linearized():
    for q in (2, 3):
        e = tate_exp(10, q)
        R = tseries_ring(q)
        assert e[0].truncate(1) == R.one(1)
        assert all(c.val >= 1 for c in e[1:])


@pytest.mark.parametrize("q", [2, 3])
def test_phi_t_squared_is_phi_t_composed(q):
    # phi_(T^2) = phi_T o phi_T in the twisted ring over K((X))
    N = 10 + (q ** 4 - 1) // (q - 1)
    M2 = tate_module(N, q, poly_ring(q).theta() ** 2)
    g1, g2 = tate_coeffs(N, q)
    K = rat_field(q)
    Tq = lambda j: K.theta().frob(j)
    T = K.theta()
    want = [
        g1 * T + g1 * Tq(1),
        g2 * T + g1 * g1.frob(1) + g2 * Tq(2),
        g1 * g2.frob(1) + g2 * g1.frob(2),
        g2 * g2.frob(2),
    ]
    for k, w in enumerate(want, start=1):
        assert M2.g[k].agrees(w, N), k


def test_false_eisenstein_independent_of_a():
    q = 2
    N = 10 + (q ** 4 - 1) // (q - 1) + q
    a1 = cusp_false_eisenstein(N, q)
    a2 = cusp_false_eisenstein(N, q, poly_ring(q).theta() ** 2)
    assert a1.agrees(a2, 10)


def test_derham_basis():
    q, N = 3, 20
    B = derham_change_of_basis(N, q)
    E2 = e2_form(N, q)
    conv = B.to_eta(E2)
    assert conv[0].is_zero()
    assert conv[1].agrees(tseries_ring(q).one(N) * -1)
    assert B.from_eta(conv, 2, 1).agrees(E2)
    (a, b), (c, d) = B.matrix()
    assert c.is_zero() and b.agrees(B.E_mu.series)


def test_lattice_and_guards():
    lat = tate_lattice(4, 2)
    # nonzero b with 2^deg(b) <= 4: 1, T, T+1, and the four of degree 2
    assert len(lat) == 7
    with pytest.raises(ValueError):
        tate_lattice(1, 3)
    j = tate_module(6, 2).to_json()
    assert j["a"] == "T" and len(j["g"]) == 2


def test_crosscheck_failure_is_reported(monkeypatch):
    import drinfeld_nhf.tate as tate
    real = tate.false_eisenstein
    monkeypatch.setattr(tate, "false_eisenstein", lambda N, q: real(N, q) * 2)
    with pytest.raises(CrossCheckFailure):
        tate.tate_crosscheck(10, 3)
