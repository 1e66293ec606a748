"""Dense polynomials over a prime field F_p stored as int64 numpy arrays.

Coefficients are ascending; the zero polynomial is the empty array.
"""
import numpy as np

from ..errors import DivisionByZero
from ..kernels import mul2d, polydivmod

EMPTY = np.zeros(0, dtype=np.int64)


def arr(coeffs, p):
    return trim(np.asarray(coeffs, dtype=np.int64) % p)


def trim(a):
    nz = np.flatnonzero(a)
    if nz.size == 0:
        return EMPTY
    return a[: nz[-1] + 1]


def deg(a):
    return len(a) - 1


def add(a, b, p):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] += b
    return trim(out % p)


def sub(a, b, p):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] -= b
    return trim(out % p)


def scale(a, c, p):
    c %= p
    if c == 0 or len(a) == 0:
        return EMPTY
    return (a * c) % p


def mul(a, b, p):
    if len(a) == 0 or len(b) == 0:
        return EMPTY
    return trim(mul2d(a[None, :], b[None, :], p, 1)[0])


def inv_mod(c, p):
    c %= p
    if c == 0:
        raise DivisionByZero("zero in F_p")
    return pow(int(c), p - 2, p)


def divmod_(a, b, p):
    if len(b) == 0:
        raise DivisionByZero("division by the zero polynomial")
    if len(a) < len(b):
        return EMPTY, a
    qt, r = polydivmod(a, b, p)
    return trim(qt), trim(r)


def monic(a, p):
    if len(a) == 0:
        return a
    lead = int(a[-1])
    if lead == 1:
        return a
    return scale(a, inv_mod(lead, p), p)


def gcd(a, b, p):
    while len(b):
        a, b = b, divmod_(a, b, p)[1]
    return monic(a, p)


def stretch(a, k):
    """a(T^k)."""
    if len(a) == 0 or k == 1:
        return a
    out = np.zeros((len(a) - 1) * k + 1, dtype=np.int64)
    out[::k] = a
    return out


def is_one(a):
    return len(a) == 1 and a[0] == 1


def equal(a, b):
    return len(a) == len(b) and bool(np.all(a == b))
