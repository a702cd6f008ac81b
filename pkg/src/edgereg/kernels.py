"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python twin.  ``EDGEREG_PURE_PYTHON=1`` forces the fallback.  Masks wider
than 64 bits always go to the Python twin.
"""
import os

from . import _pykernels

BACKEND = "python"
_c = None
if os.environ.get("EDGEREG_PURE_PYTHON", "") != "1":
    try:
        from . import _ckernels as _c

        BACKEND = "cython"
    except ImportError:
        _c = None

_WIDE = 1 << 64


def rank_gf2(nrows, cols):
    if _c is not None:
        return _c.rank_gf2(nrows, cols)
    return _pykernels.rank_gf2(nrows, cols)


def rank_modp(nrows, cols, p):
    if _c is not None:
        return _c.rank_modp(nrows, cols, p)
    return _pykernels.rank_modp(nrows, cols, p)


def subset_betti(gens, w, p):
    if _c is not None and w < _WIDE:
        return _c.subset_betti(gens, w, p)
    return _pykernels.subset_betti(gens, w, p)
