"""Finite fields F_{q^m}, q = p^s, in a polynomial basis over F_p.

Elements are encoded as integers in [0, p^n) whose base-p digits are the
coordinates in the basis 1, x, ..., x^{n-1} (n = s*m).  The modulus is the
lexicographically least primitive polynomial of degree n, so ``gen()`` also
generates the multiplicative group.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

SMALL_FIELD_BOUND = 2 ** 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, s) with q = p^s, or raise ValueError."""
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            s, r = 0, q
            while r % p == 0:
                r //= p
                s += 1
            if r == 1:
                return p, s
            break
    raise ValueError(f"{q} is not a prime power")


def _polymulmod(a, b, mod, p):
    n = len(mod) - 1
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k] % p
        if c:
            for i in range(n):
                prod[k - n + i] -= c * mod[i]
        prod[k] = 0
    return [x % p for x in prod[:n]]


def _powmod_x(e, mod, p):
    n = len(mod) - 1
    result = [1] + [0] * (n - 1)
    base = [0, 1] + [0] * (n - 2) if n > 1 else [(-mod[0]) % p]
    while e:
        if e & 1:
            result = _polymulmod(result, base, mod, p)
        base = _polymulmod(base, base, mod, p)
        e >>= 1
    return result


@lru_cache(maxsize=None)
def primitive_modulus(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically least primitive monic polynomial of degree n over F_p."""
    if n == 1:
        # x - g for the least primitive root g
        order = p - 1
        for g in range(1, p):
            if p == 2 or all(pow(g, order // r, p) != 1 for r in prime_factors(order)):
                return ((-g) % p, 1)
    order = p ** n - 1
    factors = prime_factors(order)
    one = [1] + [0] * (n - 1)
    for code in range(p ** n):
        low = [(code // p ** i) % p for i in range(n)]
        if low[0] == 0:
            continue
        mod = low + [1]
        if _powmod_x(order, mod, p) != one:
            continue
        if all(_powmod_x(order // r, mod, p) != one for r in factors):
            return tuple(mod)
    raise ValueError("no primitive polynomial found")


class FiniteField:
    """The field F_{q^m} with q = p^s."""

    def __init__(self, p: int, s: int = 1, m: int = 1):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if s < 1 or m < 1:
            raise ValueError("s and m must be positive")
        n = s * m
        if p ** n > SMALL_FIELD_BOUND:
            raise ValueError(f"field of order {p}^{n} exceeds the small-field bound")
        self.p, self.s, self.m, self.n = p, s, m, n
        self.q = p ** s
        self.order = p ** n
        self.modulus = primitive_modulus(p, n)
        self._pw = [p ** i for i in range(n)]

    def __repr__(self):
        return f"FiniteField(p={self.p}, s={self.s}, m={self.m})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.s, self.m) == (other.p, other.s, other.m)

    def __hash__(self):
        return hash((self.p, self.s, self.m))

    # raw integer-encoded arithmetic
    def vec(self, a: int) -> list[int]:
        p = self.p
        return [(a // w) % p for w in self._pw]

    def from_vec(self, v) -> int:
        p = self.p
        return sum((int(x) % p) * w for x, w in zip(v, self._pw))

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        return self.from_vec([x + y for x, y in zip(self.vec(a), self.vec(b))])

    def neg(self, a: int) -> int:
        if self.n == 1:
            return (-a) % self.p
        return self.from_vec([-x for x in self.vec(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self.from_vec(_polymulmod(self.vec(a), self.vec(b), self.modulus, self.p))

    def scalar(self, c: int, a: int) -> int:
        """Multiply by an element of the prime field."""
        return self.from_vec([c * x for x in self.vec(a)])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            from ..errors import DivisionByZero

            raise DivisionByZero("zero has no inverse")
        return self.pow(a, self.order - 2)

    def frob(self, a: int, j: int = 1) -> int:
        """a^{q^j}."""
        j %= self.m
        return self.pow(a, self.q ** j) if j else a

    def in_base(self, a: int) -> bool:
        """Membership in F_q."""
        return self.frob(a, 1) == a

    def one_int(self) -> int:
        return 1

    def gen_int(self) -> int:
        return self.p if self.n > 1 else (-self.modulus[0]) % self.p

    def frob_matrix(self, j: int = 1) -> np.ndarray:
        """Matrix over F_p of a -> a^{q^j} acting on coordinate row vectors."""
        rows = [self.vec(self.frob(w, j)) for w in self._pw]
        return np.array(rows, dtype=np.int64)

    # element wrappers
    def __call__(self, a) -> FqElem:
        if isinstance(a, FqElem):
            if a.field != self:
                raise ValueError("element of a different field")
            return a
        return FqElem(self, int(a) % self.order)

    def zero(self) -> FqElem:
        return FqElem(self, 0)

    def one(self) -> FqElem:
        return FqElem(self, 1)

    def gen(self) -> FqElem:
        return FqElem(self, self.gen_int())

    def coerce(self, x) -> FqElem:
        if isinstance(x, FqElem):
            return x
        return FqElem(self, self.from_vec([int(x)] + [0] * (self.n - 1)))

    def elements(self):
        return [FqElem(self, a) for a in range(self.order)]


class FqElem:
    __slots__ = ("field", "v")

    def __init__(self, field: FiniteField, v: int):
        self.field = field
        self.v = v

    def _other(self, o):
        if isinstance(o, FqElem):
            if o.field != self.field:
                raise ValueError("mixed fields")
            return o.v
        if isinstance(o, int):
            return self.field.coerce(o).v
        return NotImplemented

    def __add__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else FqElem(self.field, self.field.add(self.v, w))

    __radd__ = __add__

    def __sub__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else FqElem(self.field, self.field.sub(self.v, w))

    def __rsub__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else FqElem(self.field, self.field.sub(w, self.v))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.v))

    def __mul__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else FqElem(self.field, self.field.mul(self.v, w))

    __rmul__ = __mul__

    def __truediv__(self, o):
        w = self._other(o)
        if w is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.mul(self.v, self.field.inv(w)))

    def __rtruediv__(self, o):
        w = self._other(o)
        if w is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.mul(w, self.field.inv(self.v)))

    def __pow__(self, e: int):
        return FqElem(self.field, self.field.pow(self.v, e))

    def inv(self):
        return FqElem(self.field, self.field.inv(self.v))

    def frob(self, j: int = 1):
        return FqElem(self.field, self.field.frob(self.v, j))

    def __eq__(self, o):
        if isinstance(o, int):
            o = self.field.coerce(o)
        return isinstance(o, FqElem) and o.field == self.field and o.v == self.v

    def __hash__(self):
        return hash((self.field, self.v))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"FqElem({self.v} in F_{self.field.order})"


def subfield_embedding(small: FiniteField, big: FiniteField):
    """Return a function mapping integer encodings of ``small`` into ``big``."""
    if small.p != big.p or big.n % small.n:
        raise ValueError("not a subfield")
    mod = small.modulus
    root = None
    for a in range(big.order):
        acc = 0
        for c in reversed(mod):
            acc = big.add(big.mul(acc, a), big.coerce(c).v)
        if acc == 0:
            root = a
            break
    powers = [big.pow(root, i) for i in range(small.n)]

    def embed(v: int) -> int:
        out = 0
        for c, w in zip(small.vec(v), powers):
            if c:
                out = big.add(out, big.scalar(c, w))
        return out

    return embed
