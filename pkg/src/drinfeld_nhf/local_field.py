"""The local fields F_{q^m}((u)) with u^e = -1/T, for prime q.

Elements carry capped relative precision: at most ``prec`` u-digits are
stored, and every element records the absolute u-adic precision to which it
is known.  Digits are rows of a (L, m) int64 array over F_p; row j holds the
coefficient of u^(val + j) in the polynomial basis of F_{q^m}.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .algebra.finite_field import FiniteField, FqElem, is_prime
from .algebra.poly import PolyA, RatK, rat_field
from .errors import DivisionByZero, DomainError, FieldTooSmall, PrecisionExhausted
from .kernels import mul2d


class LocalField:
    """F_{q^m}((u)) containing K_inf = F_q((1/T)) through T = -u^(-e)."""

    def __init__(self, q: int, m: int = 2, e: int | None = None, prec: int = 40, root: int = 1):
        if not is_prime(q):
            raise ValueError("numeric evaluation is implemented for prime q")
        self.q = self.p = q
        self.m = m
        self.e = (q - 1) if e is None else e
        self.prec = prec
        self.root = root % q
        if not self.root:
            raise ValueError("root choice must lie in F_q^x")
        self.F = FiniteField(q, 1, m)
        n = m
        red = np.zeros((2 * n - 1, n), dtype=np.int64)
        y = self.F.gen_int() if n > 1 else 1
        for j in range(2 * n - 1):
            red[j] = self.F.vec(self.F.pow(y, j)) if n > 1 else [1]
        self._red = red
        self._frob = {}
        self._rat_cache = {}
        self._pi = None

    def __repr__(self):
        return f"LocalField(q={self.q}, m={self.m}, e={self.e}, prec={self.prec})"

    def with_prec(self, prec: int) -> LocalField:
        return local_field(self.q, self.m, self.e, prec, self.root)

    # constructors
    def zero(self, prec: int | None = None) -> LocalElem:
        P = 10 ** 9 if prec is None else prec
        return LocalElem(self, np.zeros((0, self.m), dtype=np.int64), P, P)

    def from_digits(self, rows, val: int, prec: int | None = None) -> LocalElem:
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.m)
        if prec is None:
            prec = val + max(self.prec, rows.shape[0])
        return LocalElem(self, rows, val, prec)

    def from_terms(self, terms, prec: int | None = None) -> LocalElem:
        """Exact element sum c u^n from (n, field-int or FqElem) pairs."""
        terms = [(int(n), c.v if isinstance(c, FqElem) else int(c)) for n, c in terms]
        terms = [(n, c) for n, c in terms if c]
        if not terms:
            return self.zero(prec)
        lo = min(n for n, _ in terms)
        hi = max(n for n, _ in terms)
        L = max(hi - lo + 1, 1)
        rows = np.zeros((L, self.m), dtype=np.int64)
        for n, c in terms:
            rows[n - lo] = (rows[n - lo] + np.array(self.F.vec(c), dtype=np.int64)) % self.p
        return self.from_digits(rows, lo, prec)

    def scalar(self, c) -> LocalElem:
        if isinstance(c, FqElem):
            return self.from_terms([(0, c.v)])
        return self.from_terms([(0, self.F.coerce(int(c)).v)])

    def u(self) -> LocalElem:
        return self.from_terms([(1, 1)])

    def from_poly(self, a: PolyA) -> LocalElem:
        """T -> -u^(-e); only the top ``prec`` digits are materialized."""
        if not a:
            return self.zero()
        e, p = self.e, self.p
        d = a.degree
        L = min(e * d + 1, self.prec)
        rows = np.zeros((L, self.m), dtype=np.int64)
        for i, c in enumerate(a.c):
            if not c:
                continue
            j = e * (d - i)
            if j < L:
                rows[j, 0] = (c * (-1) ** i) % p
        return LocalElem(self, rows, -e * d, -e * d + max(L, self.prec))

    def from_rat(self, r) -> LocalElem:
        if not isinstance(r, RatK):
            r = rat_field(self.q).coerce(r)
        key = (r.num.c, r.den.c)
        got = self._rat_cache.get(key)
        if got is None:
            got = self.from_poly(r.num)
            if r.den.degree > 0:
                got = got * self.from_poly(r.den).inv()
            self._rat_cache[key] = got
        return got

    def theta(self) -> LocalElem:
        return self.from_rat(rat_field(self.q).theta())

    def coerce(self, x) -> LocalElem:
        if isinstance(x, LocalElem):
            return x
        if isinstance(x, (RatK, PolyA)):
            return self.from_rat(x)
        if isinstance(x, FqElem):
            return self.scalar(x)
        if isinstance(x, int):
            return self.scalar(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    def frob_matrix(self, j: int) -> np.ndarray:
        j %= self.m
        M = self._frob.get(j)
        if M is None:
            M = self.F.frob_matrix(j) if self.m > 1 else np.ones((1, 1), dtype=np.int64)
            self._frob[j] = M
        return M

    # the Carlitz period
    def pi(self) -> LocalElem:
        if self._pi is None:
            self._pi = carlitz_period(self)
        return self._pi

    def zeta(self) -> LocalElem:
        """The generator of F_{q^m} used for point input."""
        return self.scalar(self.F.gen())


@lru_cache(maxsize=None)
def local_field(q: int, m: int = 2, e: int | None = None, prec: int = 40, root: int = 1) -> LocalField:
    return LocalField(q, m, e, prec, root)


def carlitz_period(F: LocalField) -> LocalElem:
    """PI = T (-T)^(1/(q-1)) prod_{i >= 1} (1 - T^(1-q^i))^(-1).

    With T = -u^(-e): (-T)^(1/(q-1)) = r u^(-e/(q-1)) and T^(1-q^i) = u^(e(q^i-1)).
    """
    q, e = F.q, F.e
    if e % (q - 1):
        raise FieldTooSmall(f"ramification {e} is not divisible by q - 1 = {q - 1}")
    # prod (1 - u^(e(q^i-1)))^(-1) as a power series, to relative precision
    L = F.prec
    prod = F.from_terms([(0, 1)])
    i = 1
    while e * (q ** i - 1) < L:
        prod = prod * (F.from_terms([(0, 1), (e * (q ** i - 1), F.F.coerce(-1).v)])).inv()
        i += 1
    lead = F.from_terms([(-e - e // (q - 1), F.F.coerce(-F.root).v)])
    return lead * prod


class LocalElem:
    __slots__ = ("K", "val", "d", "prec")

    def __init__(self, K: LocalField, d, val: int, prec: int):
        self.K = K
        L = prec - val
        if L <= 0 or d.shape[0] == 0:
            self.val = self.prec = prec
            self.d = np.zeros((0, K.m), dtype=np.int64)
            return
        d = d[:L]
        nz = np.flatnonzero(d.any(axis=1))
        if nz.size == 0:
            self.val = self.prec = prec
            self.d = np.zeros((0, K.m), dtype=np.int64)
            return
        f = int(nz[0])
        d = d[f:]
        val += f
        L = min(prec - val, K.prec)
        prec = val + L
        d = d[:L]
        if d.shape[0] < L:
            d = np.vstack([d, np.zeros((L - d.shape[0], K.m), dtype=np.int64)])
        self.val, self.d, self.prec = val, d, prec

    # inspection
    @property
    def relprec(self) -> int:
        return self.prec - self.val

    def is_zero(self) -> bool:
        return self.d.shape[0] == 0

    def __bool__(self):
        return self.d.shape[0] != 0

    def digit(self, n: int) -> int:
        """Coefficient of u^n as a field integer."""
        if n >= self.prec:
            raise PrecisionExhausted(f"u^{n} is beyond the precision u^{self.prec}")
        if n < self.val:
            return 0
        return self.K.F.from_vec(self.d[n - self.val])

    def terms(self):
        return [(self.val + j, self.K.F.from_vec(r)) for j, r in enumerate(self.d) if r.any()]

    def valuation(self) -> int:
        return self.val

    def log_abs(self) -> float:
        """log_q |x| with |T| = q; -inf for zero to precision."""
        if self.is_zero():
            return float("-inf")
        return -self.val / self.K.e

    def lead(self) -> int:
        if self.is_zero():
            raise DivisionByZero("element is zero to precision")
        return self.K.F.from_vec(self.d[0])

    # arithmetic
    def _co(self, o):
        if isinstance(o, LocalElem):
            return o
        return self.K.coerce(o)

    def __add__(self, o):
        o = self._co(o)
        K = self.K
        P = min(self.prec, o.prec)
        if self.is_zero() and o.is_zero():
            return K.zero(P)
        v = min(x.val for x in (self, o) if not x.is_zero())
        if P <= v:
            return K.zero(P)
        out = np.zeros((P - v, K.m), dtype=np.int64)
        for x in (self, o):
            if x.is_zero():
                continue
            a = x.val - v
            n = min(x.d.shape[0], P - x.val)
            if n > 0:
                out[a:a + n] += x.d[:n]
        return LocalElem(K, out % K.p, v, P)

    __radd__ = __add__

    def __neg__(self):
        return LocalElem(self.K, (-self.d) % self.K.p, self.val, self.prec)

    def __sub__(self, o):
        return self + (-self._co(o))

    def __rsub__(self, o):
        return self._co(o) - self

    def __mul__(self, o):
        o = self._co(o)
        K = self.K
        P = min(self.val + o.prec, o.val + self.prec)
        if self.is_zero() or o.is_zero():
            return K.zero(P)
        v = self.val + o.val
        L = P - v
        c = mul2d(self.d, o.d, K.p, L)
        if K.m > 1:
            c = (c @ K._red) % K.p
        return LocalElem(K, c, v, P)

    __rmul__ = __mul__

    def inv(self) -> LocalElem:
        if self.is_zero():
            raise DivisionByZero("element is zero to precision")
        K = self.K
        L = self.relprec
        unit = LocalElem(K, self.d, 0, L)
        x = K.from_terms([(0, K.F.inv(self.lead()))], prec=1)
        n = 1
        while n < L:
            n = min(2 * n, L)
            u_n = LocalElem(K, unit.d, 0, n)
            x = LocalElem(K, x.d, 0, n)
            x = x * (2 - u_n * x)
        x = LocalElem(K, x.d, -self.val, -self.val + L)
        return x

    def __truediv__(self, o):
        return self * self._co(o).inv()

    def __rtruediv__(self, o):
        return self._co(o) * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        r = None
        b = self
        while e:
            if e & 1:
                r = b if r is None else r * b
            e >>= 1
            if e:
                b = b * b
        return self.K.from_terms([(0, 1)]) if r is None else r

    def frob(self, j: int = 1) -> LocalElem:
        """x^(q^j)."""
        if j == 0:
            return self
        K = self.K
        Q = K.q ** j
        if self.is_zero():
            return K.zero(self.prec * Q if self.prec < 10 ** 8 else self.prec)
        rows = (self.d @ K.frob_matrix(j)) % K.p
        L = min(self.relprec * Q, K.prec)
        out = np.zeros((L, K.m), dtype=np.int64)
        take = (L - 1) // Q + 1
        out[::Q] = rows[:take]
        return LocalElem(K, out, self.val * Q, self.val * Q + self.relprec * Q)

    def sigma(self, j: int = 1) -> LocalElem:
        """Coefficientwise Frobenius a u^n -> a^(q^j) u^n (fixes K_inf and u)."""
        if self.is_zero():
            return self
        rows = (self.d @ self.K.frob_matrix(j)) % self.K.p
        return LocalElem(self.K, rows, self.val, self.prec)

    def imag_valuation(self) -> int:
        """u-adic exponent of inf_{a in K_inf} |x - a|.

        The terms removable by an element of K_inf are exactly those at
        exponents divisible by e with coefficient in F_q, so the infimum is
        attained at the first other nonzero term.
        """
        e = self.K.e
        for j, r in enumerate(self.d):
            n = self.val + j
            if not r.any():
                continue
            if n % e or r[1:].any():
                return n
        raise DomainError("point lies in K_inf to the available precision")

    def log_imag_abs(self) -> float:
        return -self.imag_valuation() / self.K.e

    def truncate(self, prec: int) -> LocalElem:
        return LocalElem(self.K, self.d, self.val, min(prec, self.prec))

    def with_prec(self, prec: int) -> LocalElem:
        """Same digits with absolute precision lowered to ``prec``."""
        return self.truncate(prec)

    def agrees(self, o, upto: int | None = None) -> bool:
        diff = self - self._co(o)
        P = diff.prec if upto is None else min(diff.prec, upto)
        return diff.is_zero() or diff.val >= P

    def __eq__(self, o):
        if not isinstance(o, LocalElem):
            return NotImplemented
        return self.agrees(o)

    __hash__ = None

    def __repr__(self):
        ts = self.terms()[:6]
        body = " + ".join(f"[{c}]u^{n}" for n, c in ts) or "0"
        return f"LocalElem({body} + O(u^{self.prec}))"

    def to_json(self) -> dict:
        return {"m": self.K.m, "e": self.K.e, "prec": self.prec,
                "terms": [[n, _fq_str(self.K.F, c)] for n, c in self.terms()]}


def _fq_str(F: FiniteField, c: int) -> str:
    v = F.vec(c)
    parts = []
    for i, x in enumerate(v):
        if not x:
            continue
        mono = "" if i == 0 else ("zeta" if i == 1 else f"zeta^{i}")
        if not mono:
            parts.append(str(x))
        else:
            parts.append(mono if x == 1 else f"{x}*{mono}")
    return "+".join(reversed(parts)) if parts else "0"
