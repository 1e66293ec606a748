"""Twisted polynomials R[tau] and truncated twisted series R[[tau]].

tau c = c^q tau.  Coefficients need ring arithmetic, truth testing and
``frob(j)`` returning the q^j-th power.  The coefficient ``ring`` object
supplies ``zero()``, ``one()`` and ``coerce(x)``.
"""
from __future__ import annotations

from .errors import PrecisionExhausted, ZeroPolynomial


def _trim(cs):
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return tuple(cs[:n])


class TwistedPoly:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = _trim([ring.coerce(c) for c in coeffs])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero()

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, o):
        o = _as_twisted(self.ring, o)
        n = max(len(self.coeffs), len(o.coeffs))
        return TwistedPoly(self.ring, [self.coeff(i) + o.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return TwistedPoly(self.ring, [-c for c in self.coeffs])

    def __sub__(self, o):
        return self + (-_as_twisted(self.ring, o))

    def __rsub__(self, o):
        return _as_twisted(self.ring, o) - self

    def __mul__(self, o):
        if isinstance(o, TwistedSeries):
            return TwistedSeries(self.ring, self.coeffs, o.order) * o
        return skew_mul(self, _as_twisted(self.ring, o))

    def __rmul__(self, o):
        return skew_mul(_as_twisted(self.ring, o), self)

    def __pow__(self, e: int):
        r = TwistedPoly(self.ring, [self.ring.one()])
        for _ in range(e):
            r = r * self
        return r

    def __call__(self, x, prec=None):
        return skew_apply(self, x, prec)

    def __eq__(self, o):
        if not isinstance(o, TwistedPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return all(self.coeff(i) == o.coeff(i) for i in range(n))

    __hash__ = None

    def __repr__(self):
        return "TwistedPoly(" + " + ".join(f"({c})*tau^{i}" for i, c in enumerate(self.coeffs) if c) + ")"

    def to_json(self, enc=str):
        return {"tau_coeffs": [enc(c) for c in self.coeffs]}


def _as_twisted(ring, x):
    if isinstance(x, TwistedPoly):
        return x
    return TwistedPoly(ring, [x])


def skew_mul(u: TwistedPoly, v: TwistedPoly) -> TwistedPoly:
    """(sum a_i tau^i)(sum b_j tau^j) = sum a_i b_j^{q^i} tau^{i+j}."""
    if not u or not v:
        return TwistedPoly(u.ring, [])
    out = [u.ring.zero()] * (len(u.coeffs) + len(v.coeffs) - 1)
    for i, a in enumerate(u.coeffs):
        if not a:
            continue
        for j, b in enumerate(v.coeffs):
            if b:
                out[i + j] = out[i + j] + a * (b.frob(i) if i else b)
    return TwistedPoly(u.ring, out)


def skew_apply(u, x, prec=None):
    """u(x) = sum a_i x^{q^i}.

    If ``prec`` is given and x is a truncated series, PrecisionExhausted is
    raised when the result is not known below ``prec``.
    """
    coeffs = u.coeffs
    acc = None
    for i, a in enumerate(coeffs):
        if not a:
            continue
        xi = x.frob(i) if i else x
        term = a * xi
        acc = term if acc is None else acc + term
    if acc is None:
        acc = 0 * x
    if prec is not None and hasattr(acc, "prec") and acc.prec < prec:
        raise PrecisionExhausted(f"result known only below t^{acc.prec}, need {prec}")
    return acc


def partial_and_leading(u: TwistedPoly):
    """(tau^0 coefficient, leading coefficient)."""
    if not u:
        raise ZeroPolynomial("leading coefficient of the zero twisted polynomial")
    return u.coeffs[0], u.coeffs[-1]


class TwistedSeries:
    """sum_{i<=N} beta_i tau^i, truncated at tau-degree N."""

    __slots__ = ("ring", "coeffs", "order")

    def __init__(self, ring, coeffs, order: int):
        self.ring = ring
        cs = [ring.coerce(c) for c in list(coeffs)[: order + 1]]
        cs += [ring.zero()] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    def coeff(self, i: int):
        return self.coeffs[i]

    def __mul__(self, o):
        if isinstance(o, TwistedPoly):
            o = TwistedSeries(self.ring, o.coeffs, self.order)
        N = min(self.order, o.order)
        out = [self.ring.zero()] * (N + 1)
        for i in range(N + 1):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(N + 1 - i):
                b = o.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * (b.frob(i) if i else b)
        return TwistedSeries(self.ring, out, N)

    def __rmul__(self, o):
        if isinstance(o, TwistedPoly):
            return TwistedSeries(self.ring, o.coeffs, self.order) * self
        return NotImplemented

    def __add__(self, o):
        N = min(self.order, o.order)
        return TwistedSeries(self.ring, [self.coeffs[i] + o.coeffs[i] for i in range(N + 1)], N)

    def __sub__(self, o):
        N = min(self.order, o.order)
        return TwistedSeries(self.ring, [self.coeffs[i] - o.coeffs[i] for i in range(N + 1)], N)

    def to_poly(self) -> TwistedPoly:
        return TwistedPoly(self.ring, self.coeffs)

    def agrees(self, o, upto: int | None = None) -> bool:
        N = min(self.order, o.order if isinstance(o, TwistedSeries) else len(o.coeffs) - 1 + 10 ** 9)
        if upto is not None:
            N = min(N, upto)
        return all(self.coeffs[i] == o.coeff(i) for i in range(N + 1))

    def is_identity(self) -> bool:
        return self.coeffs[0] == self.ring.one() and not any(self.coeffs[1:])

    def __call__(self, x, prec=None):
        return skew_apply(self, x, prec)

    def __repr__(self):
        return f"TwistedSeries(order={self.order}, coeffs={[str(c) for c in self.coeffs]})"
