"""The polynomial ring A = F_q[T] and its fraction field K = F_q(T)."""
from __future__ import annotations

import re
from functools import lru_cache
from itertools import product

import numpy as np

from ..errors import DivisionByZero
from . import fp
from .finite_field import FiniteField, FqElem, prime_power


class PolyRing:
    """A = F_q[T]; coefficients are integer encodings of F_q elements."""

    def __init__(self, q: int):
        p, s = prime_power(q)
        self.q, self.p, self.s = q, p, s
        self.F = FiniteField(p, s, 1)
        self.prime = s == 1

    def __repr__(self):
        return f"PolyRing(q={self.q})"

    def __call__(self, coeffs) -> PolyA:
        if isinstance(coeffs, PolyA):
            return coeffs
        if isinstance(coeffs, (int, FqElem)):
            coeffs = [int(coeffs)]
        return PolyA(self, coeffs)

    def zero(self) -> PolyA:
        return PolyA(self, ())

    def one(self) -> PolyA:
        return PolyA(self, (1,))

    def theta(self) -> PolyA:
        return PolyA(self, (0, 1))

    def coerce(self, x) -> PolyA:
        if isinstance(x, PolyA):
            return x
        if isinstance(x, FqElem):
            return PolyA(self, (x.v,))
        if isinstance(x, int):
            return PolyA(self, (self.F.coerce(x).v,))
        raise TypeError(f"cannot coerce {type(x).__name__} into A")

    def monics(self, d: int):
        """All monic polynomials of degree d (deterministic order)."""
        for low in product(range(self.q), repeat=d):
            yield PolyA(self, low + (1,))

    def of_degree_at_most(self, d: int):
        for c in product(range(self.q), repeat=d + 1):
            yield PolyA(self, c)

    def parse(self, text: str) -> PolyA:
        return parse_poly(self, text)


@lru_cache(maxsize=None)
def poly_ring(q: int) -> PolyRing:
    return PolyRing(q)


def _trim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


class PolyA:
    __slots__ = ("ring", "c")

    def __init__(self, ring: PolyRing, coeffs):
        self.ring = ring
        q = ring.q
        if ring.prime:
            self.c = _trim([int(x) % q for x in coeffs])
        else:
            self.c = _trim([int(x) for x in coeffs])

    @classmethod
    def _raw(cls, ring, c):
        obj = object.__new__(cls)
        obj.ring = ring
        obj.c = c
        return obj

    # basic data
    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def deg(self) -> int:
        return len(self.c) - 1

    @property
    def lead(self) -> int:
        if not self.c:
            return 0
        return self.c[-1]

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def arr(self) -> np.ndarray:
        return np.array(self.c, dtype=np.int64)

    @classmethod
    def from_arr(cls, ring, a) -> PolyA:
        return cls._raw(ring, tuple(np.asarray(a).tolist()))

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, o):
        if isinstance(o, int):
            o = self.ring.coerce(o)
        return isinstance(o, PolyA) and o.ring.q == self.ring.q and o.c == self.c

    def __hash__(self):
        return hash((self.ring.q, self.c))

    def __repr__(self):
        return f"PolyA({self})"

    def __str__(self):
        return poly_str(self.c)

    def _co(self, o):
        if isinstance(o, PolyA):
            return o
        if isinstance(o, (int, FqElem)):
            return self.ring.coerce(o)
        return None

    # arithmetic
    def __add__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        R = self.ring
        if R.prime:
            return PolyA.from_arr(R, fp.add(self.arr(), o.arr(), R.p))
        F = R.F
        n = max(len(self.c), len(o.c))
        a = self.c + (0,) * (n - len(self.c))
        b = o.c + (0,) * (n - len(o.c))
        return PolyA._raw(R, _trim([F.add(x, y) for x, y in zip(a, b)]))

    __radd__ = __add__

    def __neg__(self):
        R = self.ring
        if R.prime:
            return PolyA._raw(R, tuple((-x) % R.p for x in self.c))
        return PolyA._raw(R, tuple(R.F.neg(x) for x in self.c))

    def __sub__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        R = self.ring
        if not self.c or not o.c:
            return R.zero()
        if R.prime:
            return PolyA.from_arr(R, fp.mul(self.arr(), o.arr(), R.p))
        F = R.F
        out = [0] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return PolyA._raw(R, _trim(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power in A")
        r, b = self.ring.one(), self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __divmod__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        R = self.ring
        if not o.c:
            raise DivisionByZero("division by zero polynomial")
        if R.prime:
            qt, r = fp.divmod_(self.arr(), o.arr(), R.p)
            return PolyA.from_arr(R, qt), PolyA.from_arr(R, r)
        F = R.F
        r = list(self.c)
        lb = len(o.c)
        if len(r) < lb:
            return R.zero(), self
        qt = [0] * (len(r) - lb + 1)
        il = F.inv(o.c[-1])
        for i in range(len(r) - lb, -1, -1):
            c = F.mul(r[i + lb - 1], il)
            if c:
                qt[i] = c
                for j, y in enumerate(o.c):
                    r[i + j] = F.sub(r[i + j], F.mul(c, y))
        return PolyA._raw(R, _trim(qt)), PolyA._raw(R, _trim(r))

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def scale(self, c: int) -> PolyA:
        """Multiply by the F_q element with encoding c."""
        R = self.ring
        return PolyA._raw(R, _trim([R.F.mul(c, x) for x in self.c]))

    def monic(self) -> PolyA:
        if not self.c or self.c[-1] == 1:
            return self
        return self.scale(self.ring.F.inv(self.c[-1]))

    def frob(self, j: int = 1) -> PolyA:
        """self^{q^j} = self(T^{q^j}) since coefficients lie in F_q."""
        k = self.ring.q ** j
        if len(self.c) <= 1 or k == 1:
            return self
        out = [0] * ((len(self.c) - 1) * k + 1)
        out[::k] = self.c
        return PolyA._raw(self.ring, tuple(out))

    def derivative(self) -> PolyA:
        R = self.ring
        return PolyA._raw(R, _trim([R.F.scalar(i % R.p, x) for i, x in enumerate(self.c)][1:]))

    def __call__(self, x):
        """Horner evaluation at x in any ring accepting F_q coefficients."""
        acc = 0 * x
        for c in reversed(self.c):
            acc = acc * x + self.ring.F(c)
        return acc


def poly_gcd(a: PolyA, b: PolyA) -> PolyA:
    R = a.ring
    if R.prime:
        return PolyA.from_arr(R, fp.gcd(a.arr(), b.arr(), R.p))
    while b:
        a, b = b, a % b
    return a.monic()


def poly_str(c, var: str = "T") -> str:
    if not c:
        return "0"
    terms = []
    for i in range(len(c) - 1, -1, -1):
        x = c[i]
        if not x:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(str(x))
        elif x == 1:
            terms.append(mono)
        else:
            terms.append(f"{x}*{mono}")
    return "+".join(terms)


_TERM = re.compile(r"^(?:(\d+)\*?)?(T(?:\^(\d+))?)?$")


def parse_poly(R: PolyRing, text: str) -> PolyA:
    text = text.replace(" ", "").replace("θ", "T")
    if text in ("", "0"):
        return R.zero()
    text = text.replace("-", "+-")
    coeffs: dict[int, int] = {}
    for tok in text.split("+"):
        if not tok:
            continue
        sign = 1
        if tok.startswith("-"):
            sign, tok = -1, tok[1:]
        mt = _TERM.match(tok)
        if not mt or (mt.group(1) is None and mt.group(2) is None):
            raise ValueError(f"cannot parse polynomial term {tok!r}")
        c = int(mt.group(1)) if mt.group(1) is not None else 1
        if mt.group(2) is None:
            e = 0
        else:
            e = int(mt.group(3)) if mt.group(3) is not None else 1
        v = R.F(c).v if not R.prime else c % R.p
        if sign < 0:
            v = R.F.neg(v)
        coeffs[e] = R.F.add(coeffs.get(e, 0), v)
    n = max(coeffs) + 1
    return PolyA(R, [coeffs.get(i, 0) for i in range(n)])


class RatField:
    """K = F_q(T)."""

    def __init__(self, q: int):
        self.A = poly_ring(q)
        self.q, self.p = q, self.A.p
        self._zero = RatK._raw(self, self.A.zero(), self.A.one())
        self._one = RatK._raw(self, self.A.one(), self.A.one())

    def __repr__(self):
        return f"RatField(q={self.q})"

    def zero(self) -> RatK:
        return self._zero

    def one(self) -> RatK:
        return self._one

    def theta(self) -> RatK:
        return RatK._raw(self, self.A.theta(), self.A.one())

    def coerce(self, x) -> RatK:
        if isinstance(x, RatK):
            return x
        if isinstance(x, tuple) and len(x) == 2:
            return rat_canonicalize(self.A.coerce(x[0]), self.A.coerce(x[1]))
        return RatK._raw(self, self.A.coerce(x), self.A.one())

    __call__ = coerce

    def parse(self, text: str) -> RatK:
        text = text.strip()
        if "/" in text:
            n, d = text.split("/", 1)
            return rat_canonicalize(self.A.parse(n.strip("() ")), self.A.parse(d.strip("() ")))
        return self.coerce(self.A.parse(text.strip("() ")))


@lru_cache(maxsize=None)
def rat_field(q: int) -> RatField:
    return RatField(q)


def rat_canonicalize(n: PolyA, d: PolyA) -> RatK:
    """Reduced fraction n/d with monic denominator."""
    if not d:
        raise DivisionByZero("zero denominator")
    K = rat_field(n.ring.q)
    if not n:
        return K.zero()
    g = poly_gcd(n, d)
    if g.degree > 0:
        n, d = n // g, d // g
    if d.c[-1] != 1:
        il = n.ring.F.inv(d.c[-1])
        n, d = n.scale(il), d.scale(il)
    return RatK._raw(K, n, d)


class RatK:
    __slots__ = ("K", "num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = num.ring.one()
        r = rat_canonicalize(num, den)
        self.K, self.num, self.den = r.K, r.num, r.den

    @classmethod
    def _raw(cls, K, num, den):
        obj = object.__new__(cls)
        obj.K, obj.num, obj.den = K, num, den
        return obj

    def _co(self, o):
        if isinstance(o, RatK):
            return o
        if isinstance(o, (int, FqElem, PolyA)):
            return self.K.coerce(o)
        return None

    def __add__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return rat_canonicalize(self.num + o.num, self.den)
        # only factors of g = gcd(b, d) can cancel in a/b + c/d
        g = poly_gcd(self.den, o.den)
        if g.degree == 0:
            n = self.num * o.den + o.num * self.den
            return RatK._raw(self.K, n, self.den * o.den) if n else self.K.zero()
        b, d = self.den // g, o.den // g
        n = self.num * d + o.num * b
        if not n:
            return self.K.zero()
        h = poly_gcd(n, g)
        if h.degree > 0:
            n, g = n // h, g // h
        return RatK._raw(self.K, n, b * d * g)

    __radd__ = __add__

    def __neg__(self):
        return RatK._raw(self.K, -self.num, self.den)

    def __sub__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return self.K.zero()
        if self.den.degree == 0 and o.den.degree == 0:
            return RatK._raw(self.K, self.num * o.num, self.den)
        # cross-cancel; the inputs are reduced so the result is too
        a, b, c, d = self.num, self.den, o.num, o.den
        g1, g2 = poly_gcd(a, d), poly_gcd(c, b)
        if g1.degree > 0:
            a, d = a // g1, d // g1
        if g2.degree > 0:
            c, b = c // g2, b // g2
        return RatK._raw(self.K, a * c, b * d)

    __rmul__ = __mul__

    def inv(self) -> RatK:
        if not self.num:
            raise DivisionByZero("inverse of zero in K")
        return rat_canonicalize(self.den, self.num)

    def __truediv__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, o):
        o = self._co(o)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return RatK._raw(self.K, self.num ** e, self.den ** e)

    def frob(self, j: int = 1) -> RatK:
        return RatK._raw(self.K, self.num.frob(j), self.den.frob(j))

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, o):
        if isinstance(o, (int, FqElem, PolyA)):
            o = self.K.coerce(o)
        return isinstance(o, RatK) and o.K.q == self.K.q and o.num == self.num and o.den == self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def degree(self) -> int:
        """deg num - deg den (so |x| = q^degree); -inf-like for zero."""
        if not self.num:
            raise ValueError("degree of zero")
        return self.num.degree - self.den.degree

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        n, d = str(self.num), str(self.den)
        if "+" in n:
            n = f"({n})"
        if "+" in d or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatK({self})"

    def to_json(self) -> str:
        return str(self)
