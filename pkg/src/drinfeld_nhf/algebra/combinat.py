"""Binomial coefficients reduced mod p."""
from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def binom_mod_p(n: int, k: int, p: int) -> int:
    """binom(n, k) mod p via Lucas' theorem; n may be negative."""
    if k < 0:
        return 0
    if n < 0:
        sign = -1 if k % 2 else 1
        return (sign * binom_mod_p(k - n - 1, k, p)) % p
    if k > n:
        return 0
    r = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        r = (r * comb(ni, ki)) % p
        n //= p
        k //= p
    return r
