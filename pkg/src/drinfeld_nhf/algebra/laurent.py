"""Precision-tracked Laurent series over a generic coefficient ring.

A series is ``t^val * (c_0 + c_1 t + ...) + O(t^prec)``.  The coefficient
ring object must provide ``zero()``, ``one()``, ``coerce(x)`` and ``q``;
coefficients must support ring arithmetic, ``frob(j)`` (q^j-th power) and
truth testing.
"""
from __future__ import annotations

from ..errors import ZeroLeadingCoefficient
from .combinat import binom_mod_p


class LaurentSeries:
    __slots__ = ("ring", "val", "coeffs", "prec")

    def __init__(self, ring, coeffs, val: int, prec: int):
        coeffs = list(coeffs)[: max(prec - val, 0)]
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        if i == len(coeffs):
            self.ring, self.val, self.coeffs, self.prec = ring, prec, (), prec
            return
        coeffs = coeffs[i:]
        val += i
        self.ring, self.val, self.coeffs, self.prec = ring, val, tuple(coeffs), prec
        if len(self.coeffs) < prec - val:
            z = ring.zero()
            self.coeffs = self.coeffs + (z,) * (prec - val - len(self.coeffs))

    # constructors
    @classmethod
    def zero(cls, ring, prec: int):
        return cls(ring, (), prec, prec)

    @classmethod
    def one(cls, ring, prec: int):
        return cls(ring, [ring.one()], 0, prec)

    @classmethod
    def monomial(cls, ring, c, n: int, prec: int):
        return cls(ring, [ring.coerce(c)], n, prec)

    def _new(self, coeffs, val, prec):
        return LaurentSeries(self.ring, coeffs, val, prec)

    # inspection
    @property
    def relprec(self) -> int:
        return self.prec - self.val

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, n: int):
        if n >= self.prec:
            raise IndexError(f"coefficient t^{n} beyond precision {self.prec}")
        if n < self.val:
            return self.ring.zero()
        return self.coeffs[n - self.val]

    def coefficients(self, start: int | None = None):
        """List of coefficients from ``start`` (default val) up to prec."""
        s = self.val if start is None else start
        return [self.coeff(n) for n in range(s, self.prec)]

    def lead(self):
        if not self.coeffs:
            raise ZeroLeadingCoefficient("series is zero to precision")
        return self.coeffs[0]

    def truncate(self, n: int):
        return self._new(self.coeffs, self.val, min(self.prec, n))

    def shift(self, k: int):
        return self._new(self.coeffs, self.val + k, self.prec + k)

    def extend(self, prec: int):
        """Reinterpret an exactly known series at larger precision (zero-padded)."""
        if prec <= self.prec:
            return self
        if not self.coeffs:
            return LaurentSeries.zero(self.ring, prec)
        return self._new(self.coeffs, self.val, prec)

    def map_coeffs(self, f):
        return self._new([f(c) for c in self.coeffs], self.val, self.prec)

    # arithmetic
    def _as_series(self, o):
        if isinstance(o, LaurentSeries):
            return o
        return None

    def __add__(self, o):
        s = self._as_series(o)
        if s is None:
            c = self.ring.coerce(o)
            if self.prec <= 0:
                return self
            return self + LaurentSeries(self.ring, [c], 0, self.prec)
        prec = min(self.prec, s.prec)
        vals = [x.val for x in (self, s) if x.coeffs]
        if not vals:
            return self._new([], prec, prec)
        v = min(vals)
        out = [self.ring.zero()] * max(prec - v, 0)
        for i, c in enumerate(self.coeffs):
            k = self.val + i - v
            if k < len(out):
                out[k] = out[k] + c
        for i, c in enumerate(s.coeffs):
            k = s.val + i - v
            if k < len(out):
                out[k] = out[k] + c
        return self._new(out, v, prec)

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self.coeffs], self.val, self.prec)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        s = self._as_series(o)
        if s is None:
            c = self.ring.coerce(o)
            return self._new([c * x for x in self.coeffs], self.val, self.prec)
        if not self.coeffs or not s.coeffs:
            prec = min(self.val + s.prec, s.val + self.prec)
            return self._new([], prec, prec)
        n = min(len(self.coeffs), len(s.coeffs))
        out = []
        a, b = self.coeffs, s.coeffs
        for k in range(n):
            acc = a[0] * b[k]
            for i in range(1, k + 1):
                if a[i] and b[k - i]:
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        v = self.val + s.val
        return self._new(out, v, v + n)

    __rmul__ = __mul__

    def inv(self):
        if not self.coeffs:
            raise ZeroLeadingCoefficient("cannot invert a series that is zero to precision")
        a = self.coeffs
        n = len(a)
        b0 = self.ring.one() / a[0]
        out = [b0]
        for k in range(1, n):
            acc = self.ring.zero()
            for i in range(1, k + 1):
                if a[i]:
                    acc = acc + a[i] * out[k - i]
            out.append(-(b0 * acc))
        return self._new(out, -self.val, -self.val + n)

    def __truediv__(self, o):
        s = self._as_series(o)
        if s is None:
            return self * (self.ring.one() / self.ring.coerce(o))
        return self * s.inv()

    def __rtruediv__(self, o):
        return self.inv() * o

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        base = self
        result = LaurentSeries.one(self.ring, self.relprec)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frob(self, j: int = 1):
        """The q^j-th power (characteristic-p Frobenius on the whole series)."""
        Q = self.ring.q ** j
        z = self.ring.zero()
        out = [z] * (len(self.coeffs) * Q)
        for i, c in enumerate(self.coeffs):
            out[i * Q] = c.frob(j)
        return self._new(out, self.val * Q, self.prec * Q)

    def derivative(self):
        """d/dt."""
        p = self.ring.p
        out = [c * ((self.val + i) % p) for i, c in enumerate(self.coeffs)]
        return self._new(out, self.val - 1, self.prec - 1)

    def divided_derivative(self, k: int):
        """sum_n binom(n, k) a_n t^{n-k}."""
        p = self.ring.p
        out = [c * binom_mod_p(self.val + i, k, p) for i, c in enumerate(self.coeffs)]
        return self._new(out, self.val - k, self.prec - k)

    # comparison
    def agrees(self, other, upto: int | None = None) -> bool:
        """Coefficientwise equality below min(precisions) (or ``upto``)."""
        n = min(self.prec, other.prec)
        if upto is not None:
            n = min(n, upto)
        lo = min(self.val, other.val)
        return all(self.coeff(i) == other.coeff(i) for i in range(lo, n))

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.agrees(other)

    __hash__ = None

    def __repr__(self):
        return f"LaurentSeries(val={self.val}, prec={self.prec}, coeffs={[str(c) for c in self.coeffs]})"


def coeff_frobenius(s: LaurentSeries, power: int) -> LaurentSeries:
    """Replace each coefficient a by a^{q^power}, exponents unchanged."""
    return s.map_coeffs(lambda c: c.frob(power))
