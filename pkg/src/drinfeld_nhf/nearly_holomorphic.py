"""Nearly holomorphic forms, hyperderivatives and Maass-Shimura operators.

A nearly holomorphic form of weight k and type m is stored through its
components (f_0, ..., f_r) in F = sum_i f_i u^i, u = 1/(PI z - PI phi(z)).
Component f_i is a t-expansion of weight k - 2i and type m - i.
"""
from __future__ import annotations

from functools import lru_cache

from .algebra.combinat import binom_mod_p
from .algebra.kseries import tseries_ring
from .algebra.period import PeriodRing
from .algebra.poly import rat_field
from .drinfeld import carlitz_exp_coeffs
from .errors import PrecisionExhausted, WeightViolation
from .texp import TExpansion, false_eisenstein


class NearlyHoloForm:
    __slots__ = ("weight", "type", "q", "components", "_prec")

    def __init__(self, weight: int, type_: int, components, q: int, prec: int | None = None):
        self.weight, self.q = weight, q
        self.type = type_ % (q - 1) if q > 2 else 0
        comps = list(components)
        ps = [f.prec for f in comps] + ([prec] if prec is not None else [])
        self._prec = min(ps) if ps else None
        while comps and comps[-1].is_zero():
            comps.pop()
        for i, f in enumerate(comps):
            if f.weight != weight - 2 * i:
                raise WeightViolation(f"component {i} has weight {f.weight}, expected {weight - 2 * i}")
        self.components = tuple(comps)

    @classmethod
    def from_texp(cls, f: TExpansion):
        return cls(f.weight, f.type, [f], f.q)

    @property
    def depth(self) -> int:
        return len(self.components) - 1

    def is_zero(self) -> bool:
        return not self.components

    def component(self, i: int) -> TExpansion:
        if 0 <= i < len(self.components):
            return self.components[i]
        return _zero_like(self, self.weight - 2 * i, self.type - i)

    @property
    def prec(self) -> int:
        if self.components:
            return min(f.prec for f in self.components)
        return self._prec if self._prec is not None else 10 ** 9

    def __add__(self, o):
        if self.weight != o.weight:
            raise WeightViolation("weights differ")
        n = max(len(self.components), len(o.components))
        return NearlyHoloForm(self.weight, self.type, [self.component(i) + o.component(i) for i in range(n)],
                              self.q, min(self.prec, o.prec))

    def __neg__(self):
        return NearlyHoloForm(self.weight, self.type, [-f for f in self.components], self.q, self._prec)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, NearlyHoloForm):
            return nhf_mul(self, o)
        if isinstance(o, TExpansion):
            return nhf_mul(self, NearlyHoloForm.from_texp(o))
        return NearlyHoloForm(self.weight, self.type, [f * o for f in self.components], self.q)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        r = None
        for _ in range(e):
            r = self if r is None else r * self
        return r

    def agrees(self, o, upto: int | None = None) -> bool:
        a, b = self.components, o.components
        n = max(len(a), len(b))
        for i in range(n):
            x, y = self.component(i), o.component(i)
            if not x.agrees(y, upto):
                return False
        return self.weight == o.weight

    def to_json(self) -> dict:
        return {"weight": self.weight, "type": self.type, "depth": self.depth,
                "components": [f.to_json() for f in self.components]}


def _zero_like(F, weight: int, type_: int) -> TExpansion:
    prec = F.prec
    return TExpansion(tseries_ring(F.q).zero(prec), weight, type_, F.q, None)


def const_texp(c, N: int, q: int, weight: int = 0, type_: int = 0) -> TExpansion:
    s = tseries_ring(q).one(N) * rat_field(q).coerce(c)
    return TExpansion(s, weight, type_, q, 0)


def e2_form(N: int, q: int) -> NearlyHoloForm:
    """E_2 = E - u, components (E, -1)."""
    E = false_eisenstein(N, q)
    return NearlyHoloForm(2, 1, [E, const_texp(-1, N, q)], q)


def nhf_mul(F: NearlyHoloForm, G: NearlyHoloForm) -> NearlyHoloForm:
    k = F.weight + G.weight
    if F.is_zero() or G.is_zero():
        return NearlyHoloForm(k, F.type + G.type, [], F.q, min(F.prec, G.prec))
    out = []
    for i in range(F.depth + G.depth + 1):
        acc = None
        for j in range(max(0, i - G.depth), min(i, F.depth) + 1):
            term = F.components[j] * G.components[i - j]
            acc = term if acc is None else acc + term
        out.append(acc)
    return NearlyHoloForm(k, F.type + G.type, out, F.q)


def compose_e2(gs, N: int, q: int, weight: int, type_: int) -> NearlyHoloForm:
    """sum_j g_j E_2^j."""
    E2 = e2_form(N, q)
    acc = NearlyHoloForm(weight, type_, [], q)
    P = None
    for j, g in enumerate(gs):
        if j:
            P = E2 if P is None else P * E2
        if g.is_zero():
            continue
        term = NearlyHoloForm.from_texp(g) if j == 0 else nhf_mul(NearlyHoloForm.from_texp(g), P)
        acc = acc + term
    return acc


def decompose_e2(F: NearlyHoloForm, N: int | None = None) -> list[TExpansion]:
    """(g_0, ..., g_r) with F = sum_j g_j E_2^j, peeling from the top."""
    q = F.q
    if F.is_zero():
        return []
    if 2 * F.depth > F.weight:
        raise WeightViolation(f"depth {F.depth} exceeds half the weight {F.weight}")
    N = F.prec if N is None else N
    E2 = e2_form(N, q)
    r = F.depth
    gs: list = [None] * (r + 1)
    rem = F
    for j in range(r, -1, -1):
        top = rem.component(j)
        g = top if j % 2 == 0 else -top
        gs[j] = g
        if g.is_zero():
            continue
        term = NearlyHoloForm.from_texp(g)
        for _ in range(j):
            term = nhf_mul(term, E2)
        rem = rem - term
        if rem.depth >= j:
            raise PrecisionExhausted("peeling did not lower the depth")
    return gs


# ---------------------------------------------------------------- hyperderivatives

class HyperDerivTable:
    """der^n(t) = D^n(t)/PI^n as exact polynomials in t over K.

    der^0 t = t and der^n t = -t sum_{q^j <= n} beta_j der^(n-q^j) t, which
    comes from D^n(t e_C(PI z)) = 0 and the additivity of e_C.
    """

    def __init__(self, q: int, N: int):
        self.q, self.N = q, N
        R = tseries_ring(q)
        beta = carlitz_exp_coeffs(q, max(1, _logq(N, q)))
        self.polys = []
        for n in range(N + 1):
            L = n + 2
            if n == 0:
                self.polys.append(R.gen(L))
                continue
            acc = R.zero(L)
            j = 0
            while q ** j <= n:
                acc = acc + self.polys[n - q ** j].extend(L) * beta[j]
                j += 1
            self.polys.append((acc * R.gen(L)).truncate(L) * -1)
        self._conv = {}

    def der(self, n: int):
        return self.polys[n]

    def D(self, n: int) -> dict:
        """D^n(t) with coefficients in K[PI]: exponent -> PeriodElem."""
        P = PeriodRing(self.q)
        pi_n = P.pi() ** n
        s = self.polys[n]
        return {i: pi_n * P.coerce(s.coeff(i)) for i in range(s.val, s.prec) if s.coeff(i)}

    def conv(self, n: int, k: int):
        """[eps^n] (sum_{m>=1} der^m(t) eps^m)^k, an exact polynomial of degree <= n + k."""
        key = (n, k)
        if key in self._conv:
            return self._conv[key]
        L = n + k + 1
        if k == 1:
            r = self.polys[n].extend(L)
        else:
            R = tseries_ring(self.q)
            r = R.zero(L)
            for m in range(1, n - k + 2):
                r = r + (self.polys[m].extend(L) * self.conv(n - m, k - 1).extend(L)).truncate(L)
        self._conv[key] = r
        return r


def _logq(n: int, q: int) -> int:
    j = 0
    while q ** (j + 1) <= n:
        j += 1
    return j


@lru_cache(maxsize=None)
def hyperderiv_t_table(N: int, q: int) -> HyperDerivTable:
    return HyperDerivTable(q, N)


def hyperderiv_series(s, n: int, q: int):
    """der^n applied to a Laurent series in t (composition rule)."""
    if n == 0:
        return s
    tab = hyperderiv_t_table(max(n, 1), q)
    acc = None
    rel = s.relprec
    for k in range(1, n + 1):
        Dk = s.divided_derivative(k)
        c = tab.conv(n, k)
        if c.is_zero():
            continue
        term = Dk * c.extend(max(c.prec, c.val + rel))
        acc = term if acc is None else acc + term
    if acc is None:
        acc = tseries_ring(q).zero(s.prec)
    return acc


def hyperderiv_texp(f: TExpansion, n: int) -> TExpansion:
    """der^n f = PI^(-n) D^n f; weight +2n, type +n, K coefficients preserved."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return f
    s = hyperderiv_series(f.series, n, f.q)
    if s.prec <= s.val and not s.is_zero():
        raise PrecisionExhausted("no coefficients left")
    return TExpansion(s, f.weight + 2 * n, f.type + n, f.q, f.pi_power)


def maass_shimura_nhf(F: NearlyHoloForm, r: int, k: int | None = None) -> NearlyHoloForm:
    """delta_k^r F = sum_mu sum_i binom(k-mu+r-1, i) der^(r-i) f_mu u^(mu+i)."""
    k = F.weight if k is None else k
    q = F.q
    if r == 0:
        return F
    p = rat_field(q).p
    out: dict[int, TExpansion] = {}
    for mu, f in enumerate(F.components):
        if f.is_zero():
            continue
        for i in range(r + 1):
            b = binom_mod_p(k - mu + r - 1, i, p)
            if not b:
                continue
            term = hyperderiv_texp(f, r - i) * b
            j = mu + i
            out[j] = term if j not in out else out[j] + term
    depth = max(out) if out else -1
    comps = []
    for j in range(depth + 1):
        if j in out:
            comps.append(out[j])
        else:
            comps.append(_zero_like(F, F.weight + 2 * r - 2 * j, F.type + r - j))
    return NearlyHoloForm(F.weight + 2 * r, F.type + r, comps, q)


def maass_shimura(f: TExpansion, r: int) -> NearlyHoloForm:
    return maass_shimura_nhf(NearlyHoloForm.from_texp(f), r, f.weight)
