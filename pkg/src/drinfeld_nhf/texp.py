"""t-expansions at the cusp of GL_2(A).

All expansions are arithmetic: the stored series is the expansion of
PI^(-pi_power) times the form, where PI is the Carlitz period, so every
coefficient lies in K = F_q(T).  The uniformizer is t = 1/e_C(PI z).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra.combinat import binom_mod_p
from .algebra.kseries import tseries_ring
from .algebra.poly import PolyA, poly_ring, rat_field
from .drinfeld import carlitz_exp_coeffs, carlitz_poly
from .errors import (CrossCheckFailure, InconsistentConvention, PrecisionExhausted,
                     RouteMismatch, WeightViolation)
from .serialize import render_series, render_terms, series_json


@dataclass(frozen=True, eq=False)
class TExpansion:
    series: object
    weight: int
    type: int
    q: int
    pi_power: int | None = None
    name: str = ""

    def _mod(self, m: int) -> int:
        return m % (self.q - 1) if self.q > 2 else 0

    def _with(self, series, weight, type_, pi_power, name=""):
        return TExpansion(series, weight, self._mod(type_), self.q, pi_power, name)

    @property
    def val(self) -> int:
        return self.series.val

    @property
    def prec(self) -> int:
        return self.series.prec

    def coeff(self, n: int):
        return self.series.coeff(n)

    def __mul__(self, o):
        if isinstance(o, TExpansion):
            pp = None if self.pi_power is None or o.pi_power is None else self.pi_power + o.pi_power
            return self._with(self.series * o.series, self.weight + o.weight, self.type + o.type, pp)
        return self._with(self.series * o, self.weight, self.type, self.pi_power)

    __rmul__ = __mul__

    def _check_same(self, o):
        if self.weight != o.weight or self._mod(self.type - o.type):
            raise WeightViolation(f"cannot add weight/type ({self.weight},{self.type}) and ({o.weight},{o.type})")

    def __add__(self, o):
        if not isinstance(o, TExpansion):
            return self._with(self.series + o, self.weight, self.type, self.pi_power)
        self._check_same(o)
        pp = self.pi_power if self.pi_power == o.pi_power else None
        return self._with(self.series + o.series, self.weight, self.type, pp)

    def __neg__(self):
        return self._with(-self.series, self.weight, self.type, self.pi_power, self.name)

    def __sub__(self, o):
        return self + (-o)

    def __pow__(self, e: int):
        pp = None if self.pi_power is None else self.pi_power * e
        return self._with(self.series ** e, self.weight * e, self.type * e, pp)

    def frob(self, j: int = 1):
        Q = self.q ** j
        pp = None if self.pi_power is None else self.pi_power * Q
        return self._with(self.series.frob(j), self.weight * Q, self.type * Q, pp)

    def truncate(self, n: int):
        return self._with(self.series.truncate(n), self.weight, self.type, self.pi_power, self.name)

    def is_zero(self) -> bool:
        return self.series.is_zero()

    def has_principal_part(self) -> bool:
        return not self.series.is_zero() and self.series.val < 0

    def agrees(self, o, upto: int | None = None) -> bool:
        os_ = o.series if isinstance(o, TExpansion) else o
        return self.series.agrees(os_, upto)

    def to_json(self) -> dict:
        d = {"weight": self.weight, "type": self.type, "pi_power": self.pi_power}
        d.update(series_json(self.series))
        if self.name:
            d["name"] = self.name
        return d

    def __str__(self):
        return render_series(self.series, "t")


def _series_ring(q: int):
    return tseries_ring(q)


# ---------------------------------------------------------------- Goss polynomials

@dataclass(frozen=True, eq=False)
class GossPoly:
    k: int
    q: int
    coeffs: tuple  # coefficient of X^j at index j

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        # Horner with the zero constant term factored out
        cs = self.coeffs
        acc = x * cs[-1]
        for c in reversed(cs[1:-1]):
            acc = (acc + c) * x
        return acc

    def to_json(self) -> dict:
        return {"k": self.k, "coeffs": [c.to_json() for c in self.coeffs]}

    def __str__(self):
        return render_terms([(c, j) for j, c in reversed(list(enumerate(self.coeffs)))], "X")


@lru_cache(maxsize=None)
def _goss_table(q: int, kmax: int) -> tuple:
    K = rat_field(q)
    beta = []
    i = 0
    while q ** i <= kmax:
        i += 1
    beta = carlitz_exp_coeffs(q, i)
    G = [()]  # G_0 = 0
    for k in range(1, kmax + 1):
        if k == 1:
            G.append((K.zero(), K.one()))
            continue
        acc = list(G[k - 1])
        j = 1
        while k - q ** j >= 1:
            for d, c in enumerate(G[k - q ** j]):
                while len(acc) <= d:
                    acc.append(K.zero())
                acc[d] = acc[d] + beta[j] * c
            j += 1
        G.append(tuple([K.zero()] + acc))
    return tuple(G)


def goss_poly(k: int, q: int, N_oracle: int | None = None) -> GossPoly:
    """k-th Goss polynomial of the lattice PI*A (coefficients in K).

    G_1 = X and G_k = X (G_{k-1} + sum_j beta_j G_{k-q^j}).  When ``N_oracle``
    is given the result is checked against the z-expansion oracle.
    """
    if k < 1:
        raise ValueError("Goss polynomial index must be >= 1")
    cs = _goss_table(q, max(k, 2 * q + 2))[k]
    g = GossPoly(k, q, cs)
    if N_oracle is not None:
        o = goss_poly_oracle(k, q, N_oracle)
        if len(o.coeffs) != len(cs) or any(a != b for a, b in zip(o.coeffs, cs)):
            raise CrossCheckFailure(f"G_{k} recursion disagrees with the lattice-sum oracle")
    return g


@lru_cache(maxsize=None)
def _inv_exp_z(q: int, prec: int):
    """1/e_C(z) as a Laurent series in z, known below z^prec."""
    R = _series_ring(q)
    K = rat_field(q)
    beta = carlitz_exp_coeffs(q, max(1, _log_q(prec + 2, q) + 1))
    L = prec + 2
    cs = [K.zero()] * L
    for i, b in enumerate(beta):
        if q ** i - 1 < L:
            cs[q ** i - 1] = b
    e = R.from_coeffs(cs, 1, 1 + L)
    return e.inv().truncate(prec)


def _log_q(n: int, q: int) -> int:
    i = 0
    while q ** (i + 1) <= n:
        i += 1
    return i


def power_sum(q: int, n: int):
    """sum over nonzero lattice points of PI*A of lambda^(-n)."""
    return -_inv_exp_z(q, max(n, 1)).coeff(n - 1)


def goss_poly_oracle(k: int, q: int, order: int) -> GossPoly:
    """Goss polynomial from the partial-fraction expansion alone.

    Expands S(z) = sum_lambda (z - lambda)^(-k) in z using lattice power sums,
    peels powers of X = 1/e_C(z) from the top and demands that the remainder
    vanish through z^order.
    """
    R = _series_ring(q)
    K = rat_field(q)
    p = K.p
    sign = K.one() if k % 2 == 0 else -K.one()
    cs = [K.one()] + [K.zero()] * (k - 1)
    for n in range(order):
        b = binom_mod_p(k + n - 1, n, p)
        cs.append(sign * power_sum(q, k + n) * b if b else K.zero())
    S = R.from_coeffs(cs, -k, order)
    X = _inv_exp_z(q, order + k)
    rem = S
    out = [K.zero()] * (k + 1)
    for j in range(k, 0, -1):
        c = rem.coeff(-j)
        if c:
            out[j] = c
            rem = rem - (X ** j).truncate(order) * c
    if not rem.truncate(order).is_zero() or rem.prec < order:
        raise CrossCheckFailure(f"no polynomial G_{k} matches the lattice sum through z^{order}")
    while len(out) > 1 and not out[-1]:
        out.pop()
    return GossPoly(k, q, tuple(out))


# ---------------------------------------------------------------- re-expansion

def reexpand_scaled(a, N: int, q: int | None = None):
    """t(az) = 1/C_a(1/t) as a series in t, known below t^N."""
    if not isinstance(a, PolyA):
        a = poly_ring(q).coerce(a)
    q = a.ring.q
    if not a:
        raise ValueError("a must be nonzero")
    R = _series_ring(q)
    K = rat_field(q)
    cs = carlitz_poly(q, a)
    d = len(cs) - 1
    top = q ** d
    if N <= top:
        return R.zero(N)
    coeffs = [K.zero()] * (top + 1)
    for i, c in enumerate(cs):
        coeffs[top - q ** i] = K.coerce(c)
    s = R.from_coeffs(coeffs, -top, -top + (N - top))
    return s.inv()


@lru_cache(maxsize=None)
def _monic_t_table(q: int, N: int) -> tuple:
    """((m, t(mz))) for monic m with q^deg(m) < N."""
    A = poly_ring(q)
    out = []
    d = 0
    while q ** d < N:
        for m in A.monics(d):
            out.append((m, reexpand_scaled(m, N)))
        d += 1
    return tuple(out)


# ---------------------------------------------------------------- Eisenstein series

@lru_cache(maxsize=None)
def eisenstein_constant(k: int, q: int):
    """sum_{b in A, b != 0} (PI b)^(-k)."""
    return power_sum(q, k)


@lru_cache(maxsize=None)
def eisenstein_texp(k: int, N: int, q: int) -> TExpansion:
    """PI^(-k) E_k with E_k = sum' (az+b)^(-k), known below t^N."""
    R = _series_ring(q)
    if k < 1 or k % (q - 1):
        return TExpansion(R.zero(N), k, 0, q, k, f"E{k}")
    G = goss_poly(k, q)
    acc = R.zero(N)
    for _, tm in _monic_t_table(q, N):
        acc = acc + G(tm)
    s = -acc + eisenstein_constant(k, q)
    return TExpansion(s, k, 0, q, k, f"E{k}")


# ---------------------------------------------------------------- coefficient forms

@lru_cache(maxsize=None)
def coefficient_forms(N: int, q: int):
    """(g1~, g2~) of phi_T = T + g1 tau + g2 tau^2 for the lattice Az+A.

    Solved from T E_{q^i-1} = sum_l E_{q^l-1} g_{i-l}^{q^l} with E_0 = -1 and
    g_0 = T; the normalized forms are PI^(1-q^i) g_i.
    """
    R = _series_ring(q)
    K = rat_field(q)
    T = K.theta()
    E = [TExpansion(R.one(N) * -1, 0, 0, q, 0, "E0")]
    g = [TExpansion(R.one(N) * T, 0, 0, q, 0, "g0")]
    lhs0 = E[0] * T
    rhs0 = E[0] * g[0]
    if not lhs0.agrees(rhs0):
        raise InconsistentConvention("the i = 0 instance fails with E_0 = -1, g_0 = T")
    for i in (1, 2):
        E.append(eisenstein_texp(q ** i - 1, N, q))
        acc = E[i] * T
        for l in range(1, i + 1):
            acc = acc - E[l] * (g[i - l].frob(l) if l else g[i - l])
        # the l = 0 term is E_0 g_i = -g_i
        g.append(TExpansion(-acc.series, q ** i - 1, 0, q, q ** i - 1, f"g{i}"))
    return g[1], g[2]


def delta_lowest(q: int):
    """(c, k) with Delta~ = c t^k + O(t^(k+1)), read from the recursion route."""
    d = coefficient_forms(q + 2, q)[1].series
    return d.lead(), d.val


def _product_factor(m: PolyA, L: int, q: int):
    """P_m(t) = C_m(1/t) t^(q^deg m), a polynomial with constant term 1."""
    R = _series_ring(q)
    K = rat_field(q)
    cs = carlitz_poly(q, m)
    top = q ** (len(cs) - 1)
    coeffs = [K.zero()] * (top + 1)
    for i, c in enumerate(cs):
        coeffs[top - q ** i] = K.coerce(c)
    return R.from_coeffs(coeffs, 0, max(L, top + 1)).truncate(L)


def product_degree_bound(L: int, q: int) -> int:
    """Largest deg m whose factor P_m^((q^2-1)(q-1)) differs from 1 below t^L.

    P_m - 1 has lowest order q^(d-1)(q-1) for d >= 1, and the outer exponent
    is prime to p, so degree d matters exactly when q^(d-1)(q-1) < L.
    """
    d = 0
    while q ** d * (q - 1) < L:
        d += 1
    return d


@lru_cache(maxsize=None)
def delta_product(N: int, q: int) -> TExpansion:
    """Delta~ = c t^k prod_{m monic} P_m(t)^((q^2-1)(q-1)), known below t^N.

    c and k are read off by matching the lowest term of the recursion route.
    """
    R = _series_ring(q)
    A = poly_ring(q)
    c, k = delta_lowest(q)
    L = N - k
    E = (q * q - 1) * (q - 1)
    B = product_degree_bound(L, q)
    prod = R.one(L)
    for d in range(1, B + 1):
        for m in A.monics(d):
            prod = prod * _product_factor(m, L, q) ** E
    # factors of the next degree must be invisible at this precision
    nxt = _product_factor(next(iter(A.monics(B + 1))), L, q) ** E
    if not (nxt - R.one(L)).truncate(L).is_zero():
        raise PrecisionExhausted(f"product truncation at degree {B} is too small for t^{N}")
    s = prod.shift(k) * c
    return TExpansion(s, q * q - 1, 0, q, q * q - 1, "delta")


def delta_texp(N: int, q: int, route: str = "recursion") -> TExpansion:
    if route == "recursion":
        return coefficient_forms(N, q)[1]
    if route == "product":
        return delta_product(N, q)
    raise ValueError(f"unknown route {route!r}")


def _false_eisenstein_logderiv(N: int, q: int):
    # -t^2 D'/D loses q - 2 orders against the precision of D
    D = coefficient_forms(N + q - 2, q)[1].series
    return (D.derivative() / D).shift(2) * -1


def _false_eisenstein_monicsum(N: int, q: int):
    R = _series_ring(q)
    K = rat_field(q)
    acc = R.zero(N)
    for m, tm in _monic_t_table(q, N):
        acc = acc + tm * K.coerce(m)
    return acc


@lru_cache(maxsize=None)
def false_eisenstein(N: int, q: int, route: str = "both") -> TExpansion:
    """E = -t^2 (d Delta~/dt)/Delta~ = sum_{m monic} m t(mz), known below t^N."""
    if route == "logderiv":
        s = _false_eisenstein_logderiv(N, q)
    elif route == "monicsum":
        s = _false_eisenstein_monicsum(N, q)
    elif route == "both":
        s = _false_eisenstein_monicsum(N, q)
        s2 = _false_eisenstein_logderiv(N, q)
        if not s.agrees(s2, N):
            raise RouteMismatch("log-derivative and monic-sum routes disagree")
    else:
        raise ValueError(f"unknown route {route!r}")
    return TExpansion(s.truncate(N), 2, 1, q, 0, "E")
