"""Hot arithmetic kernels.

The compiled module is used when it was built and ``DRINFELD_NHF_PURE`` is
unset; otherwise the numpy reference implementation is selected.  With the
compiled backend, inputs past a size threshold still go to the numpy FFT and
Newton-division paths, which beat schoolbook loops there.
"""
import os

from . import _pykernels

python_mul2d = _pykernels.mul2d
python_polydivmod = _pykernels.polydivmod

try:
    from ._ckernels import mul2d as compiled_mul2d, polydivmod as compiled_polydivmod
except ImportError:  # extension not built
    compiled_mul2d = compiled_polydivmod = None

# schoolbook operation counts above which the FFT paths win
_MUL_CUTOFF = 400_000
_DIV_CUTOFF = 200_000


def _hybrid_mul2d(a, b, p, rows):
    na = min(a.shape[0], rows) * a.shape[1]
    nb = min(b.shape[0], rows) * b.shape[1]
    if na * nb > _MUL_CUTOFF and min(na, nb) >= _pykernels._FFT_MIN:
        return python_mul2d(a, b, p, rows)
    return compiled_mul2d(a, b, p, rows)


def _hybrid_polydivmod(a, b, p):
    nq = len(a) - len(b) + 1
    if nq * len(b) > _DIV_CUTOFF:
        return python_polydivmod(a, b, p)
    return compiled_polydivmod(a, b, p)


if compiled_mul2d is not None and not os.environ.get("DRINFELD_NHF_PURE"):
    mul2d, polydivmod = _hybrid_mul2d, _hybrid_polydivmod
    BACKEND = "cython"
else:
    mul2d, polydivmod = python_mul2d, python_polydivmod
    BACKEND = "python"

__all__ = ["mul2d", "polydivmod", "python_mul2d", "python_polydivmod", "compiled_mul2d",
           "compiled_polydivmod", "BACKEND"]
