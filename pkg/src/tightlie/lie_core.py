"""Classical Hermitian Lie algebras sp(2n,R) and su(p,q) as exact matrix algebras.

Every algebra carries its form, a Cartan involution ``theta`` (conjugation by
an exact matrix ``S`` with ``S @ S == I``), the central element ``Z`` of the
fixed subalgebra k whose adjoint action is a complex structure on p, and a
Cartan-adapted real basis that is only built when asked for.

Orientation: for sp the complex structure ``K`` is chosen with ``form @ K``
symmetric positive definite and ``Z = K/2``; for the standard form this puts
``Z = (1/2)[[0, -I], [I, 0]]``, the image of the sl(2,R) generator under the
block-diagonal embedding.  For su, ``Z`` is ``i*q/(p+q)`` on the positive part
and ``-i*p/(p+q)`` on the negative part of an H-orthogonal frame.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .exact import ExactScalar, Mat, RationalSpan, as_scalar

__all__ = [
    "Family",
    "CartanComponent",
    "HermitianLieAlgebra",
    "make_sp",
    "make_su",
    "parse_algebra",
    "bracket",
    "trace_pairing",
    "lambda_Z",
    "center_of_k",
    "cartan_component",
    "contains",
    "rank",
    "standard_symplectic",
    "sl2_elements",
    "NotInSubalgebra",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)
_I = ExactScalar(0, 1)


class Family(str, Enum):
    SP = "sp"
    SU = "su"


class CartanComponent(str, Enum):
    K = "K"
    P = "P"
    MIXED = "Mixed"


class NotInSubalgebra(ValueError):
    """Raised when a matrix fails a membership requirement."""


def bracket(X: Mat, Y: Mat) -> Mat:
    if X.dim != Y.dim:
        raise ValueError(f"bracket of {X.dim}x{X.dim} and {Y.dim}x{Y.dim} matrices")
    return X @ Y - Y @ X


def trace_pairing(X: Mat, Y: Mat) -> Fraction:
    """Re tr(XY)."""
    if X.dim != Y.dim:
        raise ValueError(f"trace pairing of {X.dim}x{X.dim} and {Y.dim}x{Y.dim} matrices")
    # only the diagonal of XY is needed
    n = X.dim
    acc = _ZERO
    for i in range(n):
        xr, xi = X._re[i], X._im[i]
        for k in range(n):
            a, b = xr[k], xi[k]
            if not a and not b:
                continue
            c, d = Y._re[k][i], Y._im[k][i]
            acc += a * c - b * d
    return acc


def standard_symplectic(n: int) -> Mat:
    """``[[0, I], [-I, 0]]`` of size 2n."""
    N = 2 * n
    rows = [[0] * N for _ in range(N)]
    for i in range(n):
        rows[i][n + i] = 1
        rows[n + i][i] = -1
    return Mat(rows)


def sl2_elements() -> dict[str, Mat]:
    """The sl(2,R) elements H, E, F and the compact generator Z_D."""
    h = Fraction(1, 2)
    return {
        "H": Mat([[1, 0], [0, -1]]),
        "E": Mat([[0, 1], [0, 0]]),
        "F": Mat([[0, 0], [1, 0]]),
        "Z": Mat([[0, -h], [h, 0]]),
    }


# ---------------------------------------------------------------------------
# small exact helpers on column vectors (lists of ExactScalar / Fraction)

def _col(M: Mat, j: int) -> list[ExactScalar]:
    return [M[i, j] for i in range(M.dim)]


def _from_cols(cols: Sequence[Sequence]) -> Mat:
    n = len(cols)
    return Mat([[cols[j][i] for j in range(n)] for i in range(n)])


def _leading_minors_positive(G: Mat) -> bool:
    """Exact positive-definiteness of a real symmetric (or Hermitian) matrix."""
    n = G.dim
    a = [[G[i, j] for j in range(n)] for i in range(n)]
    for k in range(n):
        piv = a[k][k]
        if piv.im or piv.re <= 0:
            return False
        for r in range(k + 1, n):
            if a[r][k]:
                f = a[r][k] / piv
                a[r] = [x - f * y for x, y in zip(a[r], a[k])]
    return True


def _bilinear(u, M: Mat, v) -> ExactScalar:
    """uᵀ M v for real vectors."""
    n = M.dim
    acc = as_scalar(0)
    for i in range(n):
        if not u[i]:
            continue
        s = as_scalar(0)
        for j in range(n):
            if v[j]:
                s = s + M[i, j] * v[j]
        acc = acc + u[i] * s
    return acc


def _sesq(u, M: Mat, v) -> ExactScalar:
    """u* M v."""
    return _bilinear([as_scalar(x).conjugate() for x in u], M, v)


def _symplectic_frame(omega: Mat) -> Mat:
    """Exact basis ``B = [e_1..e_n, f_1..f_n]`` with ``Bᵀ Ω B = [[0,I],[-I,0]]``."""
    N = omega.dim
    pool = [[as_scalar(1 if i == j else 0) for i in range(N)] for j in range(N)]
    es, fs = [], []

    def proj(v):
        # remove the components along established e/f pairs
        for e, f in zip(es, fs):
            a = _bilinear(v, omega, f)  # coefficient of e
            b = _bilinear(e, omega, v)  # coefficient of f
            v = [x - a * y - b * z for x, y, z in zip(v, e, f)]
        return v

    while len(es) < N // 2:
        cand = [proj(v) for v in pool]
        cand = [v for v in cand if any(v)]
        found = None
        for i, e in enumerate(cand):
            for f in cand[i + 1:]:
                w = _bilinear(e, omega, f)
                if w:
                    found = (e, [x / w for x in f])
                    break
            if found:
                break
        if found is None:
            raise ValueError("form is degenerate")
        es.append(found[0])
        fs.append(found[1])
        pool = cand
    return _from_cols(es + fs)


def _hermitian_frame(H: Mat) -> tuple[Mat, list[Fraction]]:
    """Exact H-orthogonal frame ``Q`` with ``Q* H Q = diag(d)``, positive entries first."""
    N = H.dim
    pool = [[as_scalar(1 if i == j else 0) for i in range(N)] for j in range(N)]
    vecs, norms = [], []
    while len(vecs) < N:
        cand = []
        for v in pool:
            for u, d in zip(vecs, norms):
                c = _sesq(u, H, v) / d
                v = [x - c * y for x, y in zip(v, u)]
            if any(v):
                cand.append(v)
        pick = None
        for v in cand:
            d = _sesq(v, H, v)
            if d:
                pick = (v, d)
                break
        if pick is None:
            # all remaining vectors are H-null; a sum with real or imaginary
            # coefficient is not (H is nondegenerate on their span)
            for i, u in enumerate(cand):
                for w in cand[i + 1:]:
                    for c in (as_scalar(1), _I):
                        v = [x + c * y for x, y in zip(u, w)]
                        d = _sesq(v, H, v)
                        if d:
                            pick = (v, d)
                            break
                    if pick:
                        break
                if pick:
                    break
        if pick is None:
            raise ValueError("form is degenerate")
        v, d = pick
        if d.im:
            raise ValueError("form is not Hermitian")
        vecs.append(v)
        norms.append(d.re)
        pool = cand
    order = sorted(range(N), key=lambda k: (norms[k] < 0, k))
    Q = _from_cols([vecs[k] for k in order])
    return Q, [norms[k] for k in order]


# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HermitianLieAlgebra:
    """sp(2n,R) or su(p,q) for an arbitrary nondegenerate form.

    ``theta_matrix`` is ``S`` with θ(X) = S X S⁻¹ and S² = I; k and p are its
    ±1 eigenspaces.  ``frame`` is the coordinate change used to build the
    compact structure (symplectic or H-orthogonal basis as columns).
    """

    family: Family
    params: tuple
    form: Mat
    Z: Mat
    theta_matrix: Mat
    frame: Mat
    frame_norms: tuple = ()
    complex_structure: Optional[Mat] = None

    @property
    def ambient_dim(self) -> int:
        return self.form.dim

    @property
    def rank(self) -> int:
        if self.family is Family.SP:
            return self.params[0]
        return min(self.params)

    @property
    def real_dim(self) -> int:
        if self.family is Family.SP:
            n = self.params[0]
            return n * (2 * n + 1)
        p, q = self.params
        return (p + q) ** 2 - 1

    @property
    def is_tube(self) -> bool:
        return self.family is Family.SP or self.params[0] == self.params[1]

    @property
    def descriptor(self) -> str:
        if self.family is Family.SP:
            return f"sp({2 * self.params[0]},R)"
        return f"su({self.params[0]},{self.params[1]})"

    def __repr__(self):
        return f"HermitianLieAlgebra({self.descriptor})"

    # -- structure maps ----------------------------------------------------
    def theta(self, X: Mat) -> Mat:
        S = self.theta_matrix
        return S @ X @ S  # S is an involution

    def relation_residual(self, X: Mat) -> Mat:
        """XᵀΩ + ΩX (sp) or X*H + HX (su); zero iff the form is preserved."""
        if self.family is Family.SP:
            return X.T @ self.form + self.form @ X
        return X.H @ self.form + self.form @ X

    def contains(self, X: Mat) -> bool:
        if X.dim != self.ambient_dim:
            return False
        if self.family is Family.SP and not X.is_real():
            return False
        if self.family is Family.SU and X.trace():
            return False
        return self.relation_residual(X).is_zero()

    def in_k(self, X: Mat) -> bool:
        return self.contains(X) and self.theta(X) == X

    def in_p(self, X: Mat) -> bool:
        return self.contains(X) and self.theta(X) == -X

    def k_part(self, X: Mat) -> Mat:
        return (X + self.theta(X)).scale(Fraction(1, 2))

    def p_part(self, X: Mat) -> Mat:
        return (X - self.theta(X)).scale(Fraction(1, 2))

    # -- bases -------------------------------------------------------------
    @cached_property
    def _adapted(self) -> tuple[list[Mat], list[Mat]]:
        return _cartan_basis(self)

    @property
    def k_elements(self) -> list[Mat]:
        return list(self._adapted[0])

    @property
    def p_elements(self) -> list[Mat]:
        return list(self._adapted[1])

    @property
    def basis(self) -> list[Mat]:
        k, p = self._adapted
        return k + p

    @property
    def k_basis(self) -> list[int]:
        return list(range(len(self._adapted[0])))

    @property
    def p_basis(self) -> list[int]:
        nk = len(self._adapted[0])
        return list(range(nk, nk + len(self._adapted[1])))

    @cached_property
    def span(self) -> RationalSpan:
        return RationalSpan(self.ambient_dim, self.basis)

    def coordinates(self, X: Mat) -> list[Fraction]:
        if not self.contains(X):
            raise NotInSubalgebra(f"matrix is not in {self.descriptor}")
        return self.span.coordinates(X)


def _cartan_basis(g: HermitianLieAlgebra) -> tuple[list[Mat], list[Mat]]:
    N = g.ambient_dim
    if g.family is Family.SU:
        # build in the H-orthogonal frame where everything is explicit
        Q = g.frame
        Qi = Q.inverse()
        d = g.frame_norms
        p = g.params[0]
        ks, ps = [], []
        for i in range(N - 1):
            ks.append(Mat.diag([_I if t == i else (-_I if t == i + 1 else 0) for t in range(N)]))
        for i in range(N):
            for j in range(i + 1, N):
                # D Y skew-Hermitian: Y_ij = A_ij / d_i
                for a_ij in (as_scalar(1), _I):
                    a_ji = -a_ij.conjugate()
                    Y = Mat.unit(N, i, j, a_ij / d[i]) + Mat.unit(N, j, i, a_ji / d[j])
                    if (i < p) == (j < p):
                        ks.append(Y)
                    else:
                        ps.append(Y)
        return [Q @ Y @ Qi for Y in ks], [Q @ Y @ Qi for Y in ps]
    oinv = g.form.inverse()
    kspan, pspan = RationalSpan(N), RationalSpan(N)
    for i in range(N):
        for j in range(i, N):
            S = Mat.unit(N, i, j) if i == j else Mat.unit(N, i, j) + Mat.unit(N, j, i)
            X = oinv @ S
            kspan.add(g.k_part(X))
            pspan.add(g.p_part(X))
    kspan.basis = [b for b in kspan.basis if not b.is_zero()]
    pspan.basis = [b for b in pspan.basis if not b.is_zero()]
    return kspan.basis, pspan.basis


def _validate_complex_structure(omega: Mat, K: Mat) -> Mat:
    N = omega.dim
    if K.dim != N or not K.is_real():
        raise ValueError("complex structure must be a real matrix of the ambient size")
    if K @ K != -Mat.identity(N):
        raise ValueError("complex structure must square to -I")
    G = omega @ K
    if G != G.T:
        raise ValueError("complex structure is not compatible with the form (form @ K not symmetric)")
    if _leading_minors_positive(G):
        return K
    if _leading_minors_positive(-G):
        return -K
    raise ValueError("form @ K is indefinite; complex structure does not define a compact involution")


def make_sp(n: int, form: Optional[Mat] = None, complex_structure: Optional[Mat] = None) -> HermitianLieAlgebra:
    """sp(2n,R) preserving the skew form ``form`` (standard block form by default).

    ``complex_structure`` optionally fixes the compatible complex structure
    K (K² = -I, form@K symmetric definite); its sign is adjusted so that
    form@K is positive definite.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    N = 2 * n
    omega = standard_symplectic(n) if form is None else form
    if omega.dim != N:
        raise ValueError(f"form must be {N}x{N}, got {omega.dim}x{omega.dim}")
    if not omega.is_real():
        raise ValueError("symplectic form must be real")
    if omega.T != -omega:
        raise ValueError("symplectic form must be skew-symmetric")
    if not omega.det():
        raise ValueError("symplectic form is singular")
    if complex_structure is not None:
        K = _validate_complex_structure(omega, complex_structure)
        frame = Mat.identity(N)
    elif omega @ omega == -Mat.identity(N):
        K = -omega
        frame = Mat.identity(N)
    else:
        B = _symplectic_frame(omega)
        K0 = -standard_symplectic(n)
        K = B @ K0 @ B.inverse()
        frame = B
    Z = K.scale(Fraction(1, 2))
    # θ(X) = K X K⁻¹ = -K X K; use S = K with the sign folded into theta below
    return _SpAlgebra(Family.SP, (n,), omega, Z, K, frame, (), K)


class _SpAlgebra(HermitianLieAlgebra):
    def theta(self, X: Mat) -> Mat:
        K = self.theta_matrix
        return -(K @ X @ K)


def make_su(p: int, q: int, form: Optional[Mat] = None, frame: Optional[Mat] = None) -> HermitianLieAlgebra:
    """su(p,q) preserving the Hermitian form ``form`` (diag(I_p, -I_q) by default).

    ``frame`` optionally supplies the H-orthogonal coordinate change Q
    (columns with Q* H Q diagonal, positive entries first).
    """
    if not (isinstance(p, int) and isinstance(q, int)) or p < 1 or q < 1:
        raise ValueError("p and q must be positive integers")
    N = p + q
    H = Mat.diag([1] * p + [-1] * q) if form is None else form
    if H.dim != N:
        raise ValueError(f"form must be {N}x{N}, got {H.dim}x{H.dim}")
    if H.H != H:
        raise ValueError("form must be Hermitian")
    if frame is None:
        if H.is_real() and all(not H[i, j] for i in range(N) for j in range(N) if i != j):
            order = sorted(range(N), key=lambda k: (H[k, k].re < 0, k))
            Q = Mat([[1 if i == order[j] else 0 for j in range(N)] for i in range(N)])
            norms = [H[k, k].re for k in order]
            if any(not x for x in norms):
                raise ValueError("form is singular")
        else:
            Q, norms = _hermitian_frame(H)
    else:
        Q = frame
        D = Q.H @ H @ Q
        if any(D[i, j] for i in range(N) for j in range(N) if i != j):
            raise ValueError("frame does not diagonalize the form")
        norms = [D[i, i].re for i in range(N)]
        if norms != sorted(norms, key=lambda x: x < 0):
            raise ValueError("frame must list positive directions first")
    npos = sum(1 for x in norms if x > 0)
    if npos != p or N - npos != q:
        raise ValueError(f"form has signature ({npos},{N - npos}), expected ({p},{q})")
    Qi = Q.inverse()
    zd = [_I * Fraction(q, N)] * p + [-_I * Fraction(p, N)] * q
    Z = Q @ Mat.diag(zd) @ Qi
    S = Q @ Mat.diag([1] * p + [-1] * q) @ Qi
    return HermitianLieAlgebra(Family.SU, (p, q), H, Z, S, Q, tuple(norms))


_SP_RE = re.compile(r"\s*sp\(\s*(\d+)\s*(?:,\s*R\s*)?\)\s*")
_SU_RE = re.compile(r"\s*su\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*")
_SL2_RE = re.compile(r"\s*sl\(\s*2\s*(?:,\s*R\s*)?\)\s*")


def parse_algebra(text: str) -> HermitianLieAlgebra:
    """Parse ``"sp(2n,R)"`` / ``"sp(2n)"``, ``"su(p,q)"`` or ``"sl(2,R)"``."""
    if _SL2_RE.fullmatch(text):
        return make_sp(1)
    m = _SP_RE.fullmatch(text)
    if m:
        N = int(m.group(1))
        if N < 2 or N % 2:
            raise ValueError(f"sp needs an even positive dimension, got {N}")
        return make_sp(N // 2)
    m = _SU_RE.fullmatch(text)
    if m:
        return make_su(int(m.group(1)), int(m.group(2)))
    raise ValueError(f"unknown algebra descriptor {text!r}")


# ---------------------------------------------------------------------------
# functional interface

def contains(g: HermitianLieAlgebra, X: Mat) -> bool:
    return g.contains(X)


def rank(g: HermitianLieAlgebra) -> int:
    return g.rank


def cartan_component(g: HermitianLieAlgebra, X: Mat) -> CartanComponent:
    if not g.contains(X):
        raise NotInSubalgebra(f"matrix is not in {g.descriptor}")
    t = g.theta(X)
    if t == X:
        return CartanComponent.K
    if t == -X:
        return CartanComponent.P
    return CartanComponent.MIXED


def lambda_Z(g: HermitianLieAlgebra, X: Mat) -> Fraction:
    """Coefficient of the orthogonal projection of ``X`` in k onto the line RZ."""
    if X.dim != g.ambient_dim:
        raise NotInSubalgebra(f"expected a {g.ambient_dim}x{g.ambient_dim} matrix")
    if not g.contains(X):
        res = g.relation_residual(X)
        bad = next(((i, j) for i, j, _, _ in res.nonzeros()), None)
        what = f"form relation fails at entry {bad}" if bad else "trace is nonzero"
        raise NotInSubalgebra(f"matrix is not in {g.descriptor}: {what}")
    P = g.p_part(X)
    if not P.is_zero():
        i, j, _, _ = next(P.nonzeros())
        raise NotInSubalgebra(f"matrix has a nonzero p-component (entry {(i, j)} = {P[i, j]})")
    return trace_pairing(X, g.Z) / trace_pairing(g.Z, g.Z)


def center_of_k(g: HermitianLieAlgebra) -> list[Mat]:
    """Basis of the center of k, by exact nullspace of X ↦ ([X, k_j])_j."""
    ks = g.k_elements
    N = g.ambient_dim
    span = RationalSpan(N * len(ks) or 1)
    accepted: list[int] = []
    relations: list[list[Fraction]] = []
    for a, X in enumerate(ks):
        v = {}
        for b, Y in enumerate(ks):
            for (i, j, part), x in bracket(X, Y).vec().items():
                v[(b, i, j, part)] = x
        rel = span.add_vector(v)
        if rel is None:
            accepted.append(a)
        else:
            c = [_ZERO] * len(ks)
            c[a] = _ONE
            for pos, x in zip(accepted, rel):
                c[pos] -= x
            relations.append(c)
    out = []
    for c in relations:
        acc = Mat.zeros(N)
        for x, X in zip(c, ks):
            if x:
                acc = acc + X.scale(x)
        out.append(acc)
    return out
