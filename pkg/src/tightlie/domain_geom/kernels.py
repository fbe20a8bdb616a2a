"""Backend selection for the argument-continuation kernel.

The compiled module is used when it imports; ``TIGHTLIE_PURE=1`` forces the
pure-Python fallback.  Both expose ``arg_continuation(A)`` and
``arg_continuation_batch(As)`` with identical semantics.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

_c = None
if os.environ.get("TIGHTLIE_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _c  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _c = None

BACKEND = "cython" if _c is not None else "python"


class KernelVanishes(ArithmeticError):
    """The kernel hit zero along the radial path; ``t`` is where tracking stopped."""

    def __init__(self, t: float):
        super().__init__(f"Bergmann kernel vanishes on the radial path near t = {t:.6g}")
        self.t = t


def _prep(A) -> np.ndarray:
    return np.ascontiguousarray(A, dtype=np.complex128)


def arg_continuation(A, backend: str | None = None) -> float:
    """Continuous argument of det(I - sA) along s in [0, 1], starting at 0."""
    mod = _pick(backend)
    status, value, s_fail = mod.arg_continuation(_prep(A))
    if status:
        raise KernelVanishes(float(np.sqrt(s_fail)))
    return value


def arg_continuation_batch(As, backend: str | None = None) -> np.ndarray:
    mod = _pick(backend)
    As = _prep(As)
    if As.ndim != 3:
        raise ValueError("expected a stack of square matrices")
    status, values, fails = mod.arg_continuation_batch(As)
    for st, sf in zip(status, fails):
        if st:
            raise KernelVanishes(float(np.sqrt(sf)))
    return np.asarray(values, dtype=float)


def _pick(backend):
    if backend is None:
        return _c if _c is not None else _kernels_py
    if backend == "python":
        return _kernels_py
    if backend == "cython":
        if _c is None:
            raise RuntimeError("compiled kernels are not available")
        return _c
    raise ValueError(f"unknown backend {backend!r}")


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _c is not None else [])
