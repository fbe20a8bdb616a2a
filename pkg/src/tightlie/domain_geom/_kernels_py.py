"""Pure-Python path continuation of arg det(I - sA), s in [0, 1].

Mirrors the compiled kernel step for step so the two agree to rounding.
"""

from __future__ import annotations

import cmath
import math

MAX_STEP = 0.25
MIN_STEP = 1e-15
PHASE_CAP = math.pi / 2
CONSISTENCY = 1e-9

OK = 0
VANISHED = 1


def _det_shifted(A, n: int, s: float) -> complex:
    """det(I - s A) by Gaussian elimination with partial pivoting."""
    a = [[(1.0 if i == j else 0.0) - s * A[i][j] for j in range(n)] for i in range(n)]
    det = 1.0 + 0.0j
    for k in range(n):
        piv = max(range(k, n), key=lambda r: abs(a[r][k]))
        if a[piv][k] == 0:
            return 0j
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        p = a[k][k]
        det *= p
        rk = a[k]
        for r in range(k + 1, n):
            f = a[r][k] / p
            if f:
                rr = a[r]
                for c in range(k + 1, n):
                    rr[c] -= f * rk[c]
    return det


def _phase(u: complex, v: complex) -> float:
    # principal arg of v / u without dividing
    return cmath.phase(v * u.conjugate())


def continue_arg(A, n: int):
    """Return (status, accumulated phase, failing s)."""
    s0 = 0.0
    f0 = 1.0 + 0.0j
    acc = 0.0
    ds = min(MAX_STEP, 1.0 / (4 * n))
    while s0 < 1.0:
        s1 = min(1.0, s0 + ds)
        f1 = _det_shifted(A, n, s1)
        fm = _det_shifted(A, n, 0.5 * (s0 + s1))
        if f1 != 0 and fm != 0:
            d = _phase(f0, f1)
            d1 = _phase(f0, fm)
            d2 = _phase(fm, f1)
            if (abs(d) < PHASE_CAP and abs(d1) < PHASE_CAP and abs(d2) < PHASE_CAP
                    and abs(d1 + d2 - d) < CONSISTENCY):
                acc += d
                s0, f0 = s1, f1
                ds = min(MAX_STEP, 2.0 * ds)
                continue
        ds *= 0.5
        if ds < MIN_STEP:
            return VANISHED, acc, s0
    return OK, acc, 1.0


def arg_continuation(A):
    """Continuous argument of det(I - sA) from s = 0 to 1 for a square complex array."""
    n = len(A)
    rows = [[complex(A[i][j]) for j in range(n)] for i in range(n)]
    return continue_arg(rows, n)


def arg_continuation_batch(As):
    """Vectorised entry point: returns (status list, values, failing s) for a stack of matrices."""
    st, val, fail = [], [], []
    for A in As:
        a, b, c = arg_continuation(A)
        st.append(a)
        val.append(b)
        fail.append(c)
    return st, val, fail
