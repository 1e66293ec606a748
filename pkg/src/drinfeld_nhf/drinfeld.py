"""Drinfeld F_q[T]-modules, exponentials and logarithms."""
from __future__ import annotations

from functools import lru_cache

from .algebra.poly import PolyA, RatK, poly_ring, rat_field
from .errors import NonInvertibleDenominator, PrecisionExhausted
from .skew import TwistedPoly, TwistedSeries, skew_mul


class DrinfeldModule:
    """phi: A -> R[tau] determined by the image of T."""

    def __init__(self, phi_theta: TwistedPoly, q: int):
        self.ring = phi_theta.ring
        self.phi_theta = phi_theta
        self.q = q
        self.A = poly_ring(q)
        self.rank = phi_theta.degree

    def phi(self, a) -> TwistedPoly:
        a = self.A.coerce(a) if not isinstance(a, PolyA) else a
        R = self.ring
        result = TwistedPoly(R, [])
        for c in reversed(a.c):
            result = skew_mul(result, self.phi_theta) + TwistedPoly(R, [R.coerce(self.A.F(c))])
        return result

    __call__ = phi

    def to_json(self, enc=str):
        return {"rank": self.rank, "phi_theta": [enc(c) for c in self.phi_theta.coeffs]}


def carlitz(q: int, ring=None) -> DrinfeldModule:
    """C_T = T + tau."""
    R = ring if ring is not None else rat_field(q)
    theta = R.coerce(poly_ring(q).theta())
    return DrinfeldModule(TwistedPoly(R, [theta, R.one()]), q)


def rank2_module(q: int, g1, g2, ring=None) -> DrinfeldModule:
    R = ring if ring is not None else rat_field(q)
    theta = R.coerce(poly_ring(q).theta())
    return DrinfeldModule(TwistedPoly(R, [theta, g1, g2]), q)


class ExpLogPair:
    def __init__(self, exp: TwistedSeries, log: TwistedSeries):
        self.exp, self.log = exp, log
        self.order = exp.order

    @property
    def beta(self):
        return self.exp.coeffs


def exp_from_module(phi: DrinfeldModule, N: int) -> ExpLogPair:
    """Solve exp T = phi_T exp degree by degree, then invert compositionally."""
    R = phi.ring
    theta = R.coerce(phi.A.theta())
    g = phi.phi_theta.coeffs
    beta = [R.one()]
    for i in range(1, N + 1):
        acc = R.zero()
        for j in range(1, min(i, len(g) - 1) + 1):
            if g[j]:
                acc = acc + g[j] * beta[i - j].frob(j)
        d = theta.frob(i) - theta
        if not d:
            raise NonInvertibleDenominator(f"T^(q^{i}) - T vanishes in the coefficient ring")
        if not hasattr(d, "__truediv__"):
            # rings without division (A itself): the quotient must be exact
            qt, r = divmod(acc, d)
            if r:
                raise NonInvertibleDenominator(f"beta_{i} does not lie in the coefficient ring")
            beta.append(qt)
            continue
        try:
            beta.append(acc / d)
        except ZeroDivisionError as exc:
            raise NonInvertibleDenominator(str(exc)) from exc
    log = [R.one()]
    for i in range(1, N + 1):
        acc = R.zero()
        for j in range(i):
            acc = acc + log[j] * beta[i - j].frob(j)
        log.append(-acc)
    return ExpLogPair(TwistedSeries(R, beta, N), TwistedSeries(R, log, N))


@lru_cache(maxsize=None)
def carlitz_factorials(q: int, N: int) -> tuple[PolyA, ...]:
    """D_0 = 1, D_i = (T^{q^i} - T) D_{i-1}^q."""
    A = poly_ring(q)
    T = A.theta()
    D = [A.one()]
    for i in range(1, N + 1):
        D.append((T.frob(i) - T) * D[-1].frob(1))
    return tuple(D)


@lru_cache(maxsize=None)
def carlitz_exp_coeffs(q: int, N: int) -> tuple[RatK, ...]:
    """beta_i = 1/D_i, the coefficients of the Carlitz exponential."""
    K = rat_field(q)
    return tuple(K.one() / K.coerce(d) for d in carlitz_factorials(q, N))


def carlitz_poly(q: int, a) -> list[PolyA]:
    """Coefficients of C_a as a list of polynomials in T."""
    C = carlitz(q, poly_ring(q))
    return list(C.phi(a).coeffs)


# ---------------------------------------------------------------- numerics

def _local_inv_factorials(F, n_terms: int):
    """1/D_i in the local field, from D_i = (T^(q^i) - T) D_{i-1}^q."""
    cache = F.__dict__.setdefault("_invD", [])
    if not cache:
        cache.append(F.from_terms([(0, 1)]))
    T = F.theta()
    while len(cache) <= n_terms:
        i = len(cache)
        bracket = T.frob(i) - T
        cache.append(cache[-1].frob(1) * bracket.inv())
    return cache


def carlitz_exp_numeric(x, cap_terms: int = 64):
    """e_C(x) = sum_i x^(q^i)/D_i, summed until the terms drop below precision."""
    F = x.K
    if x.is_zero():
        return F.zero(x.prec)
    acc = None
    i = 0
    while True:
        invD = _local_inv_factorials(F, i)[i]
        term = x.frob(i) * invD
        acc = term if acc is None else acc + term
        # log_q|term_i| = q^i (log|x| - i) decreases once i > log|x|
        if i > x.log_abs() + 1 and term.val >= acc.prec:
            break
        i += 1
        if i > cap_terms:
            raise PrecisionExhausted("Carlitz exponential did not converge")
    return acc


def carlitz_period_numeric(q: int, precision: int, m: int = 1, root: int = 1):
    """The Carlitz period in F_{q^m}((u)), u^(q-1) = -1/T, to ``precision`` u-digits."""
    from .local_field import local_field
    F = local_field(q, m, q - 1, precision, root)
    return F.pi()


def lattice_exp_numeric(generators, z, cutoff_degree: int, rel_prec: int | None = None):
    """exp of the lattice sum_j A g_j, truncated to points sum a_j g_j with deg a_j <= cutoff.

    The finite product z prod (1 - z/v) over the F_q-space V spanned by
    T^i g_j is built one basis vector at a time with
    e_{V + F_q l}(x) = e_V(x) - e_V(x)^q / e_V(l)^(q-1).
    Omitted factors satisfy |1 - z/l - 1| <= |z|/|l|, which gives the
    documented relative error bound.  PrecisionExhausted is raised when that
    bound is weaker than ``rel_prec`` (u-digits).
    """
    F = z.K
    T = F.theta()
    q = F.q
    basis = []
    for g in generators:
        b = g
        for _ in range(cutoff_degree + 1):
            basis.append(b)
            b = b * T
    vals = [z] + basis
    for idx in range(len(basis)):
        lam = vals[1 + idx]
        if lam.is_zero():
            # lam already lies in the span: the new factor dies, keep e_V
            continue
        c = lam ** (q - 1)
        vals = [w - w.frob(1) / c for w in vals]
    if rel_prec is not None and generators:
        # smallest omitted lattice point has norm >= min_j |g_j| q^(cutoff+1)
        smallest = min(g.log_abs() for g in generators) + cutoff_degree + 1
        bound = (smallest - z.log_abs()) * F.e
        if bound < rel_prec:
            raise PrecisionExhausted(f"cutoff {cutoff_degree} only guarantees {bound:.1f} u-digits")
    return vals[0]
