"""Reference kernels written against numpy only."""
import numpy as np


_FFT_MIN = 64


def _conv(x, y, p):
    """Exact integer convolution of residues mod p; FFT once the inputs are long."""
    n = min(len(x), len(y))
    if n < _FFT_MIN or n * (p - 1) ** 2 >= 1 << 40:
        return np.convolve(x, y)
    L = len(x) + len(y) - 1
    size = 1 << (L - 1).bit_length()
    c = np.fft.irfft(np.fft.rfft(x, size) * np.fft.rfft(y, size), size)[:L]
    return np.rint(c).astype(np.int64)


def mul2d(a, b, p, rows):
    """Product of two bivariate arrays over F_p.

    Axis 0 is a truncated series variable (only ``rows`` rows are kept),
    axis 1 is a polynomial variable multiplied in full.  Both arrays are
    flattened with row stride ca + cb - 1, so one 1-d convolution suffices.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    ra, ca = a.shape
    rb, cb = b.shape
    rows = max(int(rows), 0)
    cols = max(ca + cb - 1, 1)
    out = np.zeros((rows, cols), dtype=np.int64)
    if rows == 0 or ra == 0 or rb == 0 or ca == 0 or cb == 0:
        return out
    na, nb = min(ra, rows), min(rb, rows)
    w = cols
    apad = np.zeros((na, w), dtype=np.int64)
    apad[:, :ca] = a[:na] % p
    bpad = np.zeros((nb, w), dtype=np.int64)
    bpad[:, :cb] = b[:nb] % p
    conv = _conv(apad.ravel(), bpad.ravel(), p)
    m = min(rows, na + nb - 1)
    flat = np.zeros(m * w, dtype=np.int64)
    k = min(len(conv), m * w)
    flat[:k] = conv[:k]
    out[:m] = flat.reshape(m, w) % p
    return out


def _inv_series(f, n, p):
    """g with f g = 1 mod x^n over F_p, by Newton iteration; f[0] != 0."""
    g = np.array([pow(int(f[0]), p - 2, p)], dtype=np.int64)
    k = 1
    while k < n:
        k = min(2 * k, n)
        e = _conv(f[:k], g, p)[:k] % p
        e = (-e) % p
        e[0] = (e[0] + 2) % p
        g = _conv(g, e, p)[:k] % p
    return g


def polydivmod(a, b, p):
    """(quotient, remainder) of dense polynomials over F_p; b has a nonzero leading coefficient."""
    r = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    lb = len(b)
    if len(r) < lb:
        return np.zeros(0, dtype=np.int64), r
    nq = len(r) - lb + 1
    if nq > 2 * _FFT_MIN and lb > _FFT_MIN:
        # reversed quotient = reversed a / reversed b mod x^nq
        inv = _inv_series(b[::-1].copy(), nq, p)
        qt = (_conv(r[::-1][:nq].copy(), inv, p)[:nq] % p)[::-1].copy()
        qb = _conv(qt, b, p) % p
        r = (r - qb[:len(r)]) % p
        r[lb - 1:] = 0
        return qt, r
    qt = np.zeros(nq, dtype=np.int64)
    il = pow(int(b[-1]), p - 2, p)
    for i in range(len(r) - lb, -1, -1):
        c = (int(r[i + lb - 1]) * il) % p
        if c:
            qt[i] = c
            r[i:i + lb] = (r[i:i + lb] - c * b) % p
    return qt, r
