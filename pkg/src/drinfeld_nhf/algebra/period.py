"""Laurent polynomials K[PI, 1/PI] in a free period symbol."""
from __future__ import annotations

from .poly import RatK, rat_field


class PeriodElem:
    """Sum of c_k PI^k with c_k in K; no relation on PI."""

    __slots__ = ("K", "terms")

    def __init__(self, K, terms=None):
        self.K = K
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def monomial(cls, c, k: int, K=None):
        if K is None:
            K = c.K
        return cls(K, {k: K.coerce(c)})

    def _co(self, o):
        if isinstance(o, PeriodElem):
            return o
        return PeriodElem(self.K, {0: self.K.coerce(o)})

    def __add__(self, o):
        o = self._co(o)
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out[k] + v if k in out else v
        return PeriodElem(self.K, out)

    __radd__ = __add__

    def __neg__(self):
        return PeriodElem(self.K, {k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._co(o))

    def __rsub__(self, o):
        return self._co(o) + (-self)

    def __mul__(self, o):
        o = self._co(o)
        out: dict[int, RatK] = {}
        for a, x in self.terms.items():
            for b, y in o.terms.items():
                out[a + b] = out[a + b] + x * y if a + b in out else x * y
        return PeriodElem(self.K, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials are invertible")
            (k, v), = self.terms.items()
            return PeriodElem(self.K, {k * e: v ** e})
        r = PeriodElem(self.K, {0: self.K.one()})
        for _ in range(e):
            r = r * self
        return r

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, o):
        o = self._co(o)
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def pi_degrees(self) -> set[int]:
        return set(self.terms)

    def is_homogeneous(self) -> bool:
        return len(self.terms) <= 1

    def degree_zero(self) -> RatK:
        """The coefficient of PI^0, asserting no other Π-degree is present."""
        if set(self.terms) - {0}:
            raise ValueError(f"period symbol not cancelled: degrees {sorted(self.terms)}")
        return self.terms.get(0, self.K.zero())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = "" if k == 0 else ("PI" if k == 1 else f"PI^{k}")
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)


PeriodElem.__repr__ = lambda self: f"PeriodElem({self})"


class PeriodRing:
    def __init__(self, q: int):
        self.K = rat_field(q)

    def pi(self) -> PeriodElem:
        return PeriodElem(self.K, {1: self.K.one()})

    def coerce(self, x) -> PeriodElem:
        if isinstance(x, PeriodElem):
            return x
        return PeriodElem(self.K, {0: self.K.coerce(x)})

    def zero(self) -> PeriodElem:
        return PeriodElem(self.K)

    def one(self) -> PeriodElem:
        return self.coerce(1)
