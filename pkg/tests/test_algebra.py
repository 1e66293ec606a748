from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from drinfeld_nhf.algebra.combinat import binom_mod_p
from drinfeld_nhf.algebra.finite_field import FiniteField, prime_power
from drinfeld_nhf.algebra.kseries import tseries_ring
from drinfeld_nhf.algebra.poly import PolyA, poly_gcd, poly_ring, rat_field
from drinfeld_nhf.errors import DivisionByZero, ZeroLeadingCoefficient
from drinfeld_nhf.kernels import BACKEND, compiled_mul2d, python_mul2d

Q = st.sampled_from([2, 3, 5])


def polys(q, maxdeg=4):
    return st.lists(st.integers(0, q - 1), max_size=maxdeg + 1).map(lambda c: PolyA(poly_ring(q), c))


@st.composite
def poly_pair(draw, n=2):
    q = draw(Q)
    return (q, *[draw(polys(q)) for _ in range(n)])


@st.composite
def rat(draw, q):
    n = draw(polys(q, 3))
    d = draw(polys(q, 3).filter(lambda x: x.degree >= 0))
    K = rat_field(q)
    return K.coerce(n) / K.coerce(d)


# ---------------------------------------------------------------- combinatorics

@given(st.integers(0, 200), st.integers(0, 200), st.sampled_from([2, 3, 5, 7]))
def test_lucas_matches_exact_binomial(n, k, p):
    assert binom_mod_p(n, k, p) == comb(n, k) % p


def test_negative_binomial_upper_index():
    # binom(-1, k) = (-1)^k
    assert [binom_mod_p(-1, k, 5) for k in range(4)] == [1, 4, 1, 4]


# ---------------------------------------------------------------- finite fields

@pytest.mark.parametrize("q,m", [(2, 2), (3, 2), (5, 2), (4, 1), (2, 3)])
def test_finite_field_axioms(q, m):
    p, s = prime_power(q)
    F = FiniteField(p, s, m)
    els = list(F.elements())
    assert len(els) == q ** m
    nz = [x for x in els if x]
    g = F.gen()
    assert len({(g ** i).v for i in range(q ** m - 1)}) == q ** m - 1
    for x in nz[:10]:
        assert x * x.inv() == F.one()
        assert x ** (q ** m) == x
        assert x.frob(m) == x


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    with pytest.raises(ValueError):
        prime_power(6)


# ---------------------------------------------------------------- polynomials

@given(poly_pair(3))
def test_poly_ring_axioms(args):
    q, a, b, c = args
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == poly_ring(q).zero()


@given(poly_pair(2))
def test_poly_divmod(args):
    q, a, b = args
    if b.degree < 0:
        return
    qt, r = divmod(a, b)
    assert qt * b + r == a
    assert r.degree < b.degree


@given(poly_pair(2))
def test_gcd_divides(args):
    q, a, b = args
    if a.degree < 0 and b.degree < 0:
        return
    g = poly_gcd(a, b)
    assert g.is_monic()
    assert (a % g).degree < 0 and (b % g).degree < 0


def test_poly_frobenius_is_qth_power():
    A = poly_ring(3)
    a = A.parse("T^2+2*T+1")
    assert a.frob(1) == a * a * a


# ---------------------------------------------------------------- rational functions

@given(st.data())
def test_ratk_field_axioms(data):
    q = data.draw(Q)
    K = rat_field(q)
    x, y = data.draw(rat(q)), data.draw(rat(q))
    assert (x + y) - y == x
    if y:
        assert (x / y) * y == x
        assert y * y.inv() == K.one()
    assert x.frob(1) == x ** q


@given(st.data())
def test_ratk_json_round_trip(data):
    q = data.draw(Q)
    x = data.draw(rat(q))
    assert rat_field(q).parse(x.to_json()) == x


def test_ratk_rendering_is_unambiguous():
    K = rat_field(3)
    x = K.parse("1/(T^2+T)")
    assert str(x) == "1/(T^2+T)"
    assert K.parse(str(x)) == x


def test_division_by_zero():
    K = rat_field(3)
    with pytest.raises(ZeroDivisionError):
        K.one() / K.zero()


def test_ratk_degree():
    K = rat_field(2)
    assert K.parse("T^3/(T+1)").degree() == 2


# ---------------------------------------------------------------- kernels

@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 6), st.integers(1, 6), st.integers(0, 8),
       st.sampled_from([2, 3, 5]), st.integers(0, 2 ** 31))
def test_kernels_agree(ra, ca, rb, cb, rows, p, seed):
    if compiled_mul2d is None:
        pytest.skip("compiled kernels not built")
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, size=(ra, ca))
    b = rng.integers(0, p, size=(rb, cb))
    assert np.array_equal(compiled_mul2d(a, b, p, rows), python_mul2d(a, b, p, rows))


def test_backend_selected():
    assert BACKEND in ("cython", "python")


def test_python_kernel_small_case():
    # (1 + t)(1 + T t) = 1 + (1 + T) t + T t^2 with rows = 2 truncation
    a = np.array([[1], [1]])
    b = np.array([[1, 0], [0, 1]])
    out = python_mul2d(a, b, 5, 2)
    assert out.tolist() == [[1, 0], [1, 1]]


# ---------------------------------------------------------------- series

@st.composite
def series_pair(draw):
    q = draw(st.sampled_from([2, 3]))
    n = draw(st.integers(4, 10))
    cs = [draw(polys(q, 2)) for _ in range(n)]
    ds = [draw(polys(q, 2)) for _ in range(n)]
    cs[0] = cs[0] if cs[0].degree >= 0 else poly_ring(q).one()
    return q, cs, ds, draw(st.integers(-2, 2)), draw(st.integers(0, 3))


@given(series_pair())
def test_fast_series_match_generic(args):
    q, cs, ds, v1, v2 = args
    fast, slow = tseries_ring(q, True), tseries_ring(q, False)
    N = len(cs)
    a_f, b_f = fast.from_polys(cs, v1, v1 + N), fast.from_polys(ds, v2, v2 + N)
    a_s, b_s = slow.from_polys(cs, v1, v1 + N), slow.from_polys(ds, v2, v2 + N)
    for x, y in [(a_f * b_f, a_s * b_s), (a_f + b_f, a_s + b_s), (a_f.inv(), a_s.inv()),
                 (a_f.derivative(), a_s.derivative()), (a_f.frob(1), a_s.frob(1))]:
        assert x.val == y.val and x.prec == y.prec
        assert all(x.coeff(n) == y.coeff(n) for n in range(x.val, x.prec))


@given(series_pair())
def test_series_inverse(args):
    q, cs, _, v, _ = args
    R = tseries_ring(q)
    a = R.from_polys(cs, v, v + len(cs))
    one = a * a.inv()
    assert one.agrees(R.one(one.prec))
    assert one.prec - one.val == len(cs)


def test_precision_is_never_extended():
    R = tseries_ring(3)
    a = R.from_coeffs([1, 1], 0, 5)
    b = R.from_coeffs([1], 0, 3)
    assert (a + b).prec == 3 and (a * b).prec == 3


def test_inverse_of_zero_series():
    R = tseries_ring(3)
    with pytest.raises(ZeroLeadingCoefficient):
        R.zero(5).inv()


def test_divided_derivative():
    # d^(2)/2! of t^5 = binom(5, 2) t^3 = 10 t^3 = t^3 mod 3
    R = tseries_ring(3)
    s = R.from_coeffs([0, 0, 0, 0, 0, 1], 0, 8)
    d = s.divided_derivative(2)
    assert d.coeff(3) == rat_field(3).one()


def test_fp_division_by_zero():
    from drinfeld_nhf.algebra import fp
    with pytest.raises(DivisionByZero):
        fp.inv_mod(0, 3)


@given(st.lists(st.integers(0, 4), max_size=30), st.lists(st.integers(0, 4), min_size=1, max_size=10),
       st.sampled_from([2, 3, 5]))
def test_divmod_kernels_agree(a, b, p):
    from drinfeld_nhf.kernels import compiled_polydivmod, python_polydivmod
    from drinfeld_nhf.algebra import fp
    a, b = fp.arr(a, p), fp.arr(b, p)
    if len(b) == 0:
        return
    qt, r = python_polydivmod(a, b, p)
    assert np.array_equal(fp.add(fp.mul(fp.trim(qt), b, p), fp.trim(r), p), a)
    if compiled_polydivmod is not None:
        qc, rc = compiled_polydivmod(a, b, p)
        assert np.array_equal(fp.trim(qc), fp.trim(qt)) and np.array_equal(fp.trim(rc), fp.trim(r))


@settings(max_examples=15)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(0, 2 ** 32 - 1), st.integers(65, 600), st.integers(65, 400))
def test_python_kernels_long_inputs(p, seed, la, lb):
    # lengths above the FFT and Newton thresholds, against schoolbook references
    from drinfeld_nhf.kernels import python_mul2d, python_polydivmod
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, la + lb)
    b = rng.integers(0, p, lb)
    b[-1] = rng.integers(1, p)
    prod = python_mul2d(a.reshape(1, -1), b.reshape(1, -1), p, 1)[0]
    assert np.array_equal(prod, np.convolve(a, b) % p)
    qt, r = python_polydivmod(a, b, p)
    assert not r[lb - 1:].any()
    back = (np.convolve(qt, b) % p)[:len(a)]
    back[:len(r)] = (back[:len(r)] + r) % p
    assert np.array_equal(back, a % p)
