"""Fast Laurent series over K = F_p(T) for prime q = p.

A series is stored as ``t^val * (sum_i N_i(T) t^i) / d(T) + O(t^prec)`` with
a single monic denominator d and numerator rows N_i packed into a 2-D int64
array (row = power of t, column = power of T).  Multiplication goes through
the bivariate kernel.  The public interface mirrors ``LaurentSeries``.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..errors import ZeroLeadingCoefficient
from ..kernels import mul2d
from . import fp
from .combinat import binom_mod_p
from .laurent import LaurentSeries
from .poly import PolyA, RatK, rat_canonicalize, rat_field

_ONE = np.ones(1, dtype=np.int64)


def _empty():
    return np.zeros((0, 1), dtype=np.int64)


class KSeries:
    __slots__ = ("K", "p", "val", "num", "den", "prec")

    def __init__(self, K, num, den, val: int, prec: int, reduce: bool = True):
        p = K.p
        self.K, self.p = K, p
        L = prec - val
        if L <= 0:
            self.val, self.prec, self.num, self.den = prec, prec, _empty(), _ONE
            return
        num = np.asarray(num, dtype=np.int64)
        if num.ndim != 2:
            raise ValueError("numerator must be 2-D")
        if num.shape[0] > L:
            num = num[:L]
        nzr = np.flatnonzero(num.any(axis=1)) if num.size else np.zeros(0, dtype=np.int64)
        if nzr.size == 0:
            self.val, self.prec, self.num, self.den = prec, prec, _empty(), _ONE
            return
        first = int(nzr[0])
        num = num[first:]
        val += first
        L = prec - val
        cols = np.flatnonzero(num.any(axis=0))
        num = num[:, : int(cols[-1]) + 1]
        if num.shape[0] < L:
            num = np.vstack([num, np.zeros((L - num.shape[0], num.shape[1]), dtype=np.int64)])
        den = fp.trim(np.asarray(den, dtype=np.int64) % p)
        if reduce and len(den) > 1:
            g = den
            for i in nzr - first:
                if i >= L:
                    break
                g = fp.gcd(g, fp.trim(num[i]), p)
                if len(g) == 1:
                    break
            if len(g) > 1:
                den = fp.divmod_(den, g, p)[0]
                rows = [fp.divmod_(fp.trim(r), g, p)[0] if r.any() else fp.EMPTY for r in num]
                width = max(len(r) for r in rows)
                num = np.zeros((L, width), dtype=np.int64)
                for i, r in enumerate(rows):
                    num[i, : len(r)] = r
        lead = int(den[-1])
        if lead != 1:
            il = fp.inv_mod(lead, p)
            den = (den * il) % p
            num = (num * il) % p
        self.val, self.prec, self.num, self.den = val, prec, num, den

    # constructors
    @classmethod
    def from_coeffs(cls, K, coeffs, val: int, prec: int):
        coeffs = [K.coerce(c) for c in coeffs][: max(prec - val, 0)]
        p = K.p
        den = _ONE
        for c in coeffs:
            d = c.den.arr()
            if not fp.equal(d, den):
                g = fp.gcd(den, d, p)
                den = fp.mul(den, fp.divmod_(d, g, p)[0], p)
        rows = []
        for c in coeffs:
            if not c:
                rows.append(fp.EMPTY)
                continue
            scale = fp.divmod_(den, c.den.arr(), p)[0]
            rows.append(fp.mul(c.num.arr(), scale, p))
        width = max([len(r) for r in rows] + [1])
        num = np.zeros((max(prec - val, 0), width), dtype=np.int64)
        for i, r in enumerate(rows):
            num[i, : len(r)] = r
        return cls(K, num, den, val, prec)

    @classmethod
    def zero(cls, K, prec: int):
        return cls(K, _empty(), _ONE, prec, prec)

    @classmethod
    def one(cls, K, prec: int):
        return cls(K, np.ones((1, 1), dtype=np.int64), _ONE, 0, prec)

    @classmethod
    def monomial(cls, K, c, n: int, prec: int):
        return cls.from_coeffs(K, [c], n, prec)

    def _new(self, num, den, val, prec, reduce=True):
        return KSeries(self.K, num, den, val, prec, reduce)

    # inspection
    @property
    def relprec(self) -> int:
        return self.prec - self.val

    def is_zero(self) -> bool:
        return self.num.shape[0] == 0

    def __bool__(self):
        return self.num.shape[0] != 0

    @property
    def ring(self):
        return self.K

    def coeff(self, n: int) -> RatK:
        if n >= self.prec:
            raise IndexError(f"coefficient t^{n} beyond precision {self.prec}")
        if n < self.val:
            return self.K.zero()
        A = self.K.A
        return rat_canonicalize(PolyA.from_arr(A, fp.trim(self.num[n - self.val])), PolyA.from_arr(A, self.den))

    def coefficients(self, start: int | None = None):
        s = self.val if start is None else start
        return [self.coeff(n) for n in range(s, self.prec)]

    def lead(self) -> RatK:
        if self.is_zero():
            raise ZeroLeadingCoefficient("series is zero to precision")
        return self.coeff(self.val)

    def truncate(self, n: int):
        if n >= self.prec:
            return self
        return self._new(self.num, self.den, self.val, n, reduce=False)

    def shift(self, k: int):
        return self._new(self.num, self.den, self.val + k, self.prec + k, reduce=False)

    def to_generic(self) -> LaurentSeries:
        return LaurentSeries(self.K, self.coefficients(), self.val, self.prec)

    # arithmetic
    def _coerce_series(self, o):
        if isinstance(o, KSeries):
            return o
        if isinstance(o, LaurentSeries):
            return KSeries.from_coeffs(self.K, o.coefficients(), o.val, o.prec)
        return None

    def __add__(self, o):
        s = self._coerce_series(o)
        if s is None:
            c = self.K.coerce(o)
            if self.prec <= 0 or not c:
                return self
            s = KSeries.from_coeffs(self.K, [c], 0, self.prec)
        prec = min(self.prec, s.prec)
        if self.is_zero():
            return s.truncate(prec) if s.val < prec else KSeries.zero(self.K, prec)
        if s.is_zero():
            return self.truncate(prec)
        p = self.p
        v = min(self.val, s.val)
        L = prec - v
        if L <= 0:
            return KSeries.zero(self.K, prec)
        a, b = self.num, s.num
        if fp.equal(self.den, s.den):
            den = self.den
        else:
            g = fp.gcd(self.den, s.den, p)
            ca = fp.divmod_(s.den, g, p)[0]
            cb = fp.divmod_(self.den, g, p)[0]
            den = fp.mul(self.den, ca, p)
            a = mul2d(a, ca[None, :], p, a.shape[0]) if len(ca) > 1 else a
            b = mul2d(b, cb[None, :], p, b.shape[0]) if len(cb) > 1 else b
        width = max(a.shape[1], b.shape[1])
        out = np.zeros((L, width), dtype=np.int64)
        for x, xv in ((a, self.val), (b, s.val)):
            off = xv - v
            n = min(x.shape[0], L - off)
            if n > 0:
                out[off:off + n, : x.shape[1]] += x[:n]
        out %= p
        return self._new(out, den, v, prec)

    __radd__ = __add__

    def __neg__(self):
        return self._new((-self.num) % self.p, self.den, self.val, self.prec, reduce=False)

    def __sub__(self, o):
        if isinstance(o, (KSeries, LaurentSeries)):
            return self + (-self._coerce_series(o))
        return self + (-self.K.coerce(o))

    def __rsub__(self, o):
        return (-self) + o

    def scale(self, c) -> KSeries:
        c = self.K.coerce(c)
        if not c:
            return KSeries.zero(self.K, self.prec)
        if self.is_zero():
            return self
        p = self.p
        cn, cd = c.num.arr(), c.den.arr()
        num = self.num if fp.is_one(cn) else mul2d(self.num, cn[None, :], p, self.num.shape[0])
        den = self.den if fp.is_one(cd) else fp.mul(self.den, cd, p)
        return self._new(num, den, self.val, self.prec)

    def __mul__(self, o):
        s = self._coerce_series(o)
        if s is None:
            return self.scale(o)
        if self.is_zero() or s.is_zero():
            prec = min(self.val + s.prec, s.val + self.prec)
            return KSeries.zero(self.K, prec)
        p = self.p
        rows = min(self.num.shape[0], s.num.shape[0])
        num = mul2d(self.num, s.num, p, rows)
        if fp.is_one(self.den):
            den = s.den
        elif fp.is_one(s.den):
            den = self.den
        else:
            den = fp.mul(self.den, s.den, p)
        v = self.val + s.val
        return self._new(num, den, v, v + rows, reduce=len(den) > 1)

    __rmul__ = __mul__

    def inv(self) -> KSeries:
        if self.is_zero():
            raise ZeroLeadingCoefficient("cannot invert a series that is zero to precision")
        K, p = self.K, self.p
        L = self.num.shape[0]
        unit = KSeries(K, self.num, _ONE, 0, L, reduce=False)
        n0 = fp.trim(self.num[0])
        x = KSeries(K, np.ones((1, 1), dtype=np.int64), n0, 0, 1)
        k = 1
        while k < L:
            k = min(2 * k, L)
            ux = unit.truncate(k) * x.extend(k)
            x = (x.extend(k) * (2 - ux)).truncate(k)
        res = x
        if not fp.is_one(self.den):
            res = res.scale(rat_canonicalize(PolyA.from_arr(K.A, self.den), K.A.one()))
        return res.shift(-self.val)

    def extend(self, prec: int) -> KSeries:
        """Reinterpret an exactly known series at larger precision (zero-padded)."""
        if prec <= self.prec:
            return self
        if self.is_zero():
            return KSeries.zero(self.K, prec)
        return self._new(self.num, self.den, self.val, prec, reduce=False)

    def __truediv__(self, o):
        s = self._coerce_series(o)
        if s is None:
            return self.scale(self.K.coerce(o).inv())
        return self * s.inv()

    def __rtruediv__(self, o):
        return self.inv() * o

    def __pow__(self, e: int) -> KSeries:
        if e < 0:
            return self.inv() ** (-e)
        p = self.p
        result = None
        j = 0
        base = self
        while e:
            d = e % p
            if d:
                f = base.frob(j) if j else base
                term = f
                for _ in range(d - 1):
                    term = term * f
                result = term if result is None else result * term
            e //= p
            j += 1
        if result is None:
            return KSeries.one(self.K, self.relprec)
        return result

    def frob(self, j: int = 1) -> KSeries:
        if j == 0:
            return self
        Q = self.p ** j
        if self.is_zero():
            return KSeries.zero(self.K, self.prec * Q)
        L, D = self.num.shape
        num = np.zeros((L * Q, (D - 1) * Q + 1), dtype=np.int64)
        num[::Q, ::Q] = self.num
        return self._new(num, fp.stretch(self.den, Q), self.val * Q, self.prec * Q, reduce=False)

    def derivative(self) -> KSeries:
        if self.is_zero():
            return KSeries.zero(self.K, self.prec - 1)
        L = self.num.shape[0]
        f = (np.arange(self.val, self.val + L) % self.p).astype(np.int64)
        return self._new((self.num * f[:, None]) % self.p, self.den, self.val - 1, self.prec - 1)

    def divided_derivative(self, k: int) -> KSeries:
        if self.is_zero():
            return KSeries.zero(self.K, self.prec - k)
        L = self.num.shape[0]
        f = np.array([binom_mod_p(self.val + i, k, self.p) for i in range(L)], dtype=np.int64)
        return self._new((self.num * f[:, None]) % self.p, self.den, self.val - k, self.prec - k)

    def map_coeffs(self, f):
        return KSeries.from_coeffs(self.K, [f(c) for c in self.coefficients()], self.val, self.prec)

    # comparison
    def agrees(self, other, upto: int | None = None) -> bool:
        o = self._coerce_series(other)
        n = min(self.prec, o.prec)
        if upto is not None:
            n = min(n, upto)
        a, b = self.truncate(n), o.truncate(n)
        if a.is_zero() or b.is_zero():
            return a.is_zero() and b.is_zero() or (a.is_zero() and b.val >= n) or (b.is_zero() and a.val >= n)
        if a.val != b.val:
            return False
        p = self.p
        x = mul2d(a.num, b.den[None, :], p, a.num.shape[0])
        y = mul2d(b.num, a.den[None, :], p, b.num.shape[0])
        w = max(x.shape[1], y.shape[1])
        X = np.zeros((x.shape[0], w), dtype=np.int64)
        Y = np.zeros((y.shape[0], w), dtype=np.int64)
        X[:, : x.shape[1]] = x
        Y[:, : y.shape[1]] = y
        return bool(np.all(X == Y))

    def __eq__(self, other):
        if not isinstance(other, (KSeries, LaurentSeries)):
            return NotImplemented
        return self.agrees(other)

    __hash__ = None

    def __repr__(self):
        return f"KSeries(val={self.val}, prec={self.prec}, coeffs={[str(c) for c in self.coefficients()]})"


class TSeriesRing:
    """Factory for Laurent series in one variable over K = F_q(T).

    Uses ``KSeries`` for prime q and the generic ``LaurentSeries`` otherwise.
    """

    def __init__(self, q: int, fast: bool | None = None):
        self.K = rat_field(q)
        self.q, self.p = q, self.K.p
        self.fast = self.K.A.prime if fast is None else fast
        if self.fast and not self.K.A.prime:
            raise ValueError("fast series need prime q")

    def from_coeffs(self, coeffs, val: int, prec: int):
        if self.fast:
            return KSeries.from_coeffs(self.K, coeffs, val, prec)
        return LaurentSeries(self.K, [self.K.coerce(c) for c in coeffs], val, prec)

    def zero(self, prec: int):
        return self.from_coeffs([], prec, prec)

    def one(self, prec: int):
        return self.from_coeffs([1], 0, prec)

    def gen(self, prec: int):
        return self.from_coeffs([1], 1, prec)

    def monomial(self, c, n: int, prec: int):
        return self.from_coeffs([c], n, prec)

    def coerce(self, x, prec: int = 10 ** 6):
        if isinstance(x, (KSeries, LaurentSeries)):
            return x
        return self.from_coeffs([x], 0, prec)

    def from_polys(self, polys, val: int, prec: int):
        """Series with polynomial coefficients given as PolyA or coefficient lists."""
        A = self.K.A
        return self.from_coeffs([A(c) if not isinstance(c, PolyA) else c for c in polys], val, prec)


@lru_cache(maxsize=None)
def tseries_ring(q: int, fast: bool | None = None) -> TSeriesRing:
    return TSeriesRing(q, fast)
