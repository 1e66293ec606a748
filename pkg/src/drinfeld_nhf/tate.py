"""The Tate-Drinfeld module at the cusp of GL_2(A).

Lattice {C_b(1/X) : b in A} inside K((X)), its exponential e_L(Z) and the
coefficients of phi_a(Z) = e_L(C_a(e_L^{-1}(Z))), all modulo X^N_X.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra.combinat import binom_mod_p
from .algebra.kseries import tseries_ring
from .algebra.poly import PolyA, poly_ring, rat_field
from .drinfeld import carlitz_poly
from .errors import CrossCheckFailure, NonLinearResidue
from .nearly_holomorphic import NearlyHoloForm
from .texp import TExpansion, coefficient_forms, false_eisenstein, reexpand_scaled


def _laurent_poly(coeffs_by_exp: dict, prec: int, q: int):
    K = rat_field(q)
    lo = min(coeffs_by_exp)
    cs = [K.zero()] * (max(coeffs_by_exp) - lo + 1)
    for n, c in coeffs_by_exp.items():
        cs[n - lo] = K.coerce(c)
    return tseries_ring(q).from_coeffs(cs, lo, prec)


def tate_lattice(N_X: int, q: int):
    """[(b, C_b(1/X))] for nonzero b with q^deg(b) <= N_X, as series below X^N_X."""
    if N_X < q:
        raise ValueError("N_X must be at least q")
    A = poly_ring(q)
    out = []
    d = 0
    while q ** d <= N_X:
        for b in A.of_degree_at_most(d):
            if b.degree != d:
                continue
            cs = carlitz_poly(q, b)
            out.append((b, _laurent_poly({-(q ** i): c for i, c in enumerate(cs) if c}, N_X, q)))
        d += 1
    return out


@lru_cache(maxsize=None)
def tate_exp(N_X: int, q: int, z_levels: int = 4) -> tuple:
    """Coefficients (e_0, e_1, ...) of e_L(Z) = sum_i e_i Z^(q^i), i <= z_levels.

    e_L(Z) = Z prod_{m monic} (1 - Z^(q-1) T_m^(q-1)) with T_m = 1/C_m(1/X);
    a factor is kept while (q-1) q^deg(m) < N_X, later ones are 1 mod X^N_X.
    """
    R = tseries_ring(q)
    A = poly_ring(q)
    J = (q ** z_levels - 1) // (q - 1)
    P = [R.one(N_X)] + [R.zero(N_X)] * J
    d = 0
    while (q - 1) * q ** d < N_X:
        for m in A.monics(d):
            s = reexpand_scaled(m, N_X) ** (q - 1)
            for j in range(J, 0, -1):
                if not P[j - 1].is_zero():
                    P[j] = P[j] - P[j - 1] * s
        d += 1
    linear = {(q ** i - 1) // (q - 1): i for i in range(z_levels + 1)}
    for j, c in enumerate(P):
        if j not in linear and not c.truncate(N_X).is_zero():
            raise NonLinearResidue(f"Z^{1 + j * (q - 1)} survives in e_L")
    return tuple(P[(q ** i - 1) // (q - 1)] for i in range(z_levels + 1))


@dataclass(frozen=True, eq=False)
class TateModule:
    q: int
    N_X: int
    a: PolyA
    exp_coeffs: tuple
    g: tuple  # g_0 = a, g_1, ..., g_{2 deg a}

    @property
    def g1(self):
        return self.g[1]

    @property
    def g2(self):
        return self.g[2]

    @property
    def delta(self):
        return self.g[2 * self.a.degree]

    def to_json(self) -> dict:
        from .serialize import series_json
        return {"q": self.q, "N_X": self.N_X, "a": str(self.a),
                "g": [series_json(x) for x in self.g[1:]]}


@lru_cache(maxsize=None)
def tate_module(N_X: int, q: int, a=None) -> TateModule:
    """Solve phi_a e_L = e_L C_a coefficientwise; g_k must vanish beyond 2 deg a."""
    A = poly_ring(q)
    K = rat_field(q)
    R = tseries_ring(q)
    a = A.theta() if a is None else (a if isinstance(a, PolyA) else A.coerce(a))
    d = a.degree
    kmax = 2 * d + 2
    e = tate_exp(N_X, q, kmax)
    c = [K.coerce(x) for x in carlitz_poly(q, a)]
    one = R.one(N_X)
    g = [one * K.coerce(a)]
    for k in range(1, kmax + 1):
        acc = R.zero(N_X)
        for i in range(min(k, len(c) - 1) + 1):
            acc = acc + e[k - i] * c[i].frob(k - i)
        for i in range(k):
            acc = acc - g[i] * (e[k - i].frob(i) if i else e[k - i])
        g.append(acc.truncate(N_X))
    for k in range(2 * d + 1, kmax + 1):
        if not g[k].is_zero():
            raise CrossCheckFailure(f"g_{k} of the Tate module should vanish")
    return TateModule(q, N_X, a, e, tuple(g[: 2 * d + 1]))


def tate_coeffs(N_X: int, q: int):
    """(g_1, g_2) of phi_T for the Tate module, in K[[X]] below X^N_X."""
    M = tate_module(N_X, q)
    return M.g1, M.g2


def cusp_false_eisenstein(N_X: int, q: int, a=None):
    """E(mu) = -X^2 (d/dX g_top)/g_top with g_top = g_{2 deg a}; known below X^(N_X - q + 2)."""
    D = tate_module(N_X, q, a).delta
    return (D.derivative() / D).shift(2) * -1


def substitute_t(s, weight: int, type_: int, q: int, pi_power: int | None = None, name: str = "") -> TExpansion:
    """The substitution X -> t (equal uniformizers in this normalization)."""
    return TExpansion(s, weight, type_, q, pi_power, name)


def tate_crosscheck(N: int, q: int) -> dict:
    """Compare g_1, g_2 and E(mu) with the t-expansion routes below t^N."""
    N_X = N + q - 2
    g1, g2 = tate_coeffs(N_X, q)
    tg1, tg2 = coefficient_forms(N, q)
    Emu = cusp_false_eisenstein(N_X, q)
    E = false_eisenstein(N, q)
    res = {"g1": g1.agrees(tg1.series, N), "g2": g2.agrees(tg2.series, N), "E": Emu.agrees(E.series, N)}
    if not all(res.values()):
        raise CrossCheckFailure(f"Tate data disagree with t-expansions: {res}")
    return res


@dataclass(frozen=True, eq=False)
class DeRhamCuspBasis:
    """eta'_2 = eta_2 + E(mu) eta_1; matrix [[1, E(mu)], [0, 1]]."""

    E_mu: TExpansion

    def matrix(self):
        q = self.E_mu.q
        R = tseries_ring(q)
        N = self.E_mu.prec
        return ((R.one(N), self.E_mu.series), (R.zero(N), R.one(N)))

    def _convert(self, comps, sign: int):
        q = self.E_mu.q
        p = rat_field(q).p
        E = self.E_mu if sign > 0 else -self.E_mu
        out = []
        for i in range(len(comps)):
            acc = None
            for l in range(i, len(comps)):
                b = binom_mod_p(l, i, p)
                if not b or comps[l].is_zero():
                    continue
                term = comps[l] * (E ** (l - i)) * b if l > i else comps[l] * b
                acc = term if acc is None else acc + term
            if acc is None:
                acc = comps[i] * 0
            out.append(acc)
        return out

    def to_eta(self, F: NearlyHoloForm) -> list:
        """{eta_1, eta'_2} components (f_l) -> {eta_1, eta_2} components."""
        return self._convert(list(F.components), 1)

    def from_eta(self, comps, weight: int, type_: int) -> NearlyHoloForm:
        return NearlyHoloForm(weight, type_, self._convert(list(comps), -1), self.E_mu.q)


def derham_change_of_basis(N: int, q: int, E_mu: TExpansion | None = None) -> DeRhamCuspBasis:
    if E_mu is None:
        s = cusp_false_eisenstein(N + q - 2, q).truncate(N)
        E_mu = substitute_t(s, 2, 1, q, 0, "E_mu")
    return DeRhamCuspBasis(E_mu)
