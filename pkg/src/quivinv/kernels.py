"""Backend selection for the modular kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module is used. ``BACKEND`` names the active one. Moduli of 2**32 or more
always go to the Python kernels, since the compiled ones work in 64-bit words.
"""

from __future__ import annotations

from quivinv import _pykernels

try:
    from quivinv import _ckernels
except ImportError:  # pragma: no cover - depends on the build
    _ckernels = None

BACKEND = "compiled" if _ckernels is not None else "python"

_WORD_LIMIT = 1 << 32


def available_backends():
    return ["python"] + (["compiled"] if _ckernels is not None else [])


def backend_module(name):
    if name == "python":
        return _pykernels
    if name == "compiled" and _ckernels is not None:
        return _ckernels
    raise ValueError(f"kernel backend {name!r} is not available")


_fast = _ckernels if _ckernels is not None else _pykernels


def det_mod(rows, p):
    return (_fast if p < _WORD_LIMIT else _pykernels).det_mod(rows, p)


def det_dual_mod(re_rows, eps_rows, p):
    return (_fast if p < _WORD_LIMIT else _pykernels).det_dual_mod(re_rows, eps_rows, p)


def rank_mod(rows, p):
    return (_fast if p < _WORD_LIMIT else _pykernels).rank_mod(rows, p)


def matmul_mod(a, b, p):
    return (_fast if p < _WORD_LIMIT else _pykernels).matmul_mod(a, b, p)
