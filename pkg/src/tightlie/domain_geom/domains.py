"""Bounded symmetric domains in floating point.

Points are numpy arrays: a complex scalar (disk), an r-vector (polydisk), a
p x q matrix (matrix ball) or a symmetric n x n matrix (Siegel disk).  Every
kernel is reduced to det(I - A); the pair matrix ``A`` is what the
argument-continuation kernels consume.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import expm, sqrtm

from . import kernels

__all__ = [
    "Kind",
    "Classification",
    "Tolerances",
    "BoundedDomain",
    "DomainPoint",
    "CocycleEval",
    "NonTransverse",
    "parse_domain",
    "h_kernel",
    "pair_matrix",
    "arg_h",
    "arg_h_spectral",
    "bergmann_cocycle",
    "is_transverse",
    "shilov_contains",
    "classify",
    "mobius",
    "check_group_element",
    "random_group_element",
    "random_interior_point",
    "random_shilov_point",
    "geodesic_from_origin",
    "boundary_limit",
    "orientation_cocycle",
    "symplectic_standard_frame",
    "tangent_from_sp",
    "origin",
]


class Kind(str, Enum):
    DISK = "disk"
    POLYDISK = "polydisk"
    BALL = "ball"
    SIEGEL = "siegel"


class Classification(str, Enum):
    INTERIOR = "Interior"
    SHILOV = "Shilov"
    OTHER = "OtherBoundary"
    EXTERIOR = "Exterior"


@dataclass(frozen=True)
class Tolerances:
    interior: float = 1e-10
    transverse: float = 1e-8
    shilov: float = 1e-6


DEFAULT_TOL = Tolerances()
T_MAX = 20.0


class NonTransverse(ValueError):
    def __init__(self, msg: str, pair: tuple = ()):
        super().__init__(msg)
        self.pair = pair


@dataclass(frozen=True)
class BoundedDomain:
    kind: Kind
    params: tuple = ()

    @property
    def rank(self) -> int:
        if self.kind is Kind.DISK:
            return 1
        if self.kind is Kind.POLYDISK:
            return self.params[0]
        if self.kind is Kind.BALL:
            return min(self.params)
        return self.params[0]

    @property
    def shape(self) -> tuple:
        if self.kind is Kind.DISK:
            return ()
        if self.kind is Kind.POLYDISK:
            return (self.params[0],)
        if self.kind is Kind.BALL:
            return tuple(self.params)
        n = self.params[0]
        return (n, n)

    @property
    def is_tube(self) -> bool:
        return self.kind is not Kind.BALL or self.params[0] == self.params[1]

    @property
    def descriptor(self) -> str:
        if self.kind is Kind.DISK:
            return "disk"
        return f"{self.kind.value}:" + ",".join(map(str, self.params))

    @property
    def real_dim(self) -> int:
        """Number of real coordinates of a point."""
        if self.kind is Kind.SIEGEL:
            n = self.params[0]
            return n * (n + 1)
        return 2 * int(np.prod(self.shape, dtype=int))

    def __str__(self):
        return self.descriptor


def parse_domain(text: str) -> BoundedDomain:
    """``disk``, ``polydisk:r``, ``ball:p,q`` or ``siegel:n``."""
    t = text.strip().lower()
    if t == "disk":
        return BoundedDomain(Kind.DISK)
    m = re.fullmatch(r"polydisk:(\d+)", t)
    if m and int(m.group(1)) >= 1:
        return BoundedDomain(Kind.POLYDISK, (int(m.group(1)),))
    m = re.fullmatch(r"ball:(\d+),(\d+)", t)
    if m and int(m.group(1)) >= 1 and int(m.group(2)) >= 1:
        return BoundedDomain(Kind.BALL, (int(m.group(1)), int(m.group(2))))
    m = re.fullmatch(r"siegel:(\d+)", t)
    if m and int(m.group(1)) >= 1:
        return BoundedDomain(Kind.SIEGEL, (int(m.group(1)),))
    raise ValueError(f"unknown domain descriptor {text!r}")


def _as_point(D: BoundedDomain, z) -> np.ndarray:
    a = np.asarray(z, dtype=np.complex128)
    if a.shape != D.shape:
        raise ValueError(f"{D.descriptor} expects points of shape {D.shape}, got {a.shape}")
    return a


def origin(D: BoundedDomain) -> np.ndarray:
    return np.zeros(D.shape, dtype=np.complex128)


def pair_matrix(D: BoundedDomain, z, w) -> np.ndarray:
    """Square ``A`` with h(z, w) = det(I - A)."""
    z, w = _as_point(D, z), _as_point(D, w)
    if D.kind is Kind.DISK:
        return np.array([[z * np.conj(w)]])
    if D.kind is Kind.POLYDISK:
        return np.diag(z * np.conj(w))
    if D.kind is Kind.BALL:
        p, q = D.params
        # det(I_p - Z W*) = det(I_q - W* Z); use the smaller side
        return z @ w.conj().T if p <= q else w.conj().T @ z
    return z @ np.conj(w)


def h_kernel(D: BoundedDomain, z, w) -> complex:
    A = pair_matrix(D, z, w)
    return complex(np.linalg.det(np.eye(A.shape[0]) - A))


def arg_h_spectral(D: BoundedDomain, z, w) -> float:
    """Closed form of the continuous argument: sum of Arg(1 - mu) over eigenvalues mu of A.

    Along s in [0,1] each factor 1 - s*mu moves on a segment in the half plane
    Re > 0 (|mu| <= 1), so no branch is crossed; used as an independent check.
    """
    A = pair_matrix(D, z, w)
    mu = np.linalg.eigvals(A)
    return float(np.sum(np.angle(1.0 - mu)))


def arg_h(D: BoundedDomain, z, w, tol: Tolerances = DEFAULT_TOL, backend: Optional[str] = None) -> float:
    """Continuous argument of h(tz, tw) for t in [0, 1], vanishing at t = 0."""
    A = pair_matrix(D, z, w)
    h = np.linalg.det(np.eye(A.shape[0]) - A)
    if abs(h) <= tol.transverse:
        raise NonTransverse(f"|h| = {abs(h):.3g} <= {tol.transverse:g}: points are not transverse")
    return kernels.arg_continuation(A, backend)


@dataclass(frozen=True)
class CocycleEval:
    beta: float
    arg_parts: tuple
    min_transversality: float

    def to_json(self) -> dict:
        return {"beta": self.beta, "arg_parts": list(self.arg_parts), "min_h": self.min_transversality}


def bergmann_cocycle(D: BoundedDomain, x, y, z, tol: Tolerances = DEFAULT_TOL,
                     backend: Optional[str] = None) -> CocycleEval:
    """β(x,y,z) = (1/π)(arg_h(x,y) + arg_h(y,z) + arg_h(z,x))."""
    pts = (x, y, z)
    names = ("x", "y", "z")
    As, mins = [], []
    for a, b in ((0, 1), (1, 2), (2, 0)):
        A = pair_matrix(D, pts[a], pts[b])
        h = abs(np.linalg.det(np.eye(A.shape[0]) - A))
        if h <= tol.transverse:
            raise NonTransverse(f"pair ({names[a]}, {names[b]}) is not transverse: |h| = {h:.3g}",
                                (names[a], names[b]))
        As.append(A)
        mins.append(h)
    try:
        parts = kernels.arg_continuation_batch(np.stack(As), backend)
    except kernels.KernelVanishes as e:  # pragma: no cover - excluded by the endpoint test
        raise NonTransverse(str(e)) from e
    beta = float(parts.sum() / math.pi)
    bound = D.rank / 2 + 1e-6
    if abs(beta) > bound:  # pragma: no cover - would signal a kernel bug
        raise ArithmeticError(f"|beta| = {abs(beta)} exceeds rank/2")
    return CocycleEval(beta, tuple(float(v) for v in parts), float(min(mins)))


def is_transverse(D: BoundedDomain, x, y, tol: Tolerances = DEFAULT_TOL) -> bool:
    return abs(h_kernel(D, x, y)) > tol.transverse


def _gram(D: BoundedDomain, z: np.ndarray) -> np.ndarray:
    """The Hermitian matrix whose positivity defines the interior."""
    if D.kind is Kind.BALL:
        p, q = D.params
        return np.eye(p) - z @ z.conj().T if p <= q else np.eye(q) - z.conj().T @ z
    return np.eye(z.shape[0]) - z.conj().T @ z


def shilov_contains(D: BoundedDomain, z, tol: Tolerances = DEFAULT_TOL) -> tuple[bool, float]:
    """Membership in the Shilov boundary with its residual."""
    z = _as_point(D, z)
    if D.kind in (Kind.DISK, Kind.POLYDISK):
        res = float(np.max(np.abs(np.abs(np.atleast_1d(z)) - 1.0)))
    elif D.kind is Kind.BALL:
        res = float(np.max(np.abs(_gram(D, z))))
    else:
        sym = float(np.max(np.abs(z - z.T)))
        res = max(sym, float(np.max(np.abs(z @ np.conj(z) - np.eye(z.shape[0])))))
    return res <= tol.shilov, res


@dataclass(frozen=True)
class DomainPoint:
    domain: BoundedDomain
    coords: np.ndarray
    classification: Classification
    residuals: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        flat = np.atleast_1d(self.coords).ravel()
        return {
            "domain": self.domain.descriptor,
            "shape": list(self.domain.shape),
            "coords": [[float(c.real), float(c.imag)] for c in flat],
            "classification": self.classification.value,
            "residuals": {k: float(v) for k, v in self.residuals.items()},
        }


def classify(D: BoundedDomain, z, tol: Tolerances = DEFAULT_TOL) -> DomainPoint:
    z = _as_point(D, z)
    if D.kind is Kind.SIEGEL and np.max(np.abs(z - z.T), initial=0.0) > tol.shilov:
        return DomainPoint(D, z, Classification.EXTERIOR, {"symmetry": float(np.max(np.abs(z - z.T)))})
    if D.kind in (Kind.DISK, Kind.POLYDISK):
        radii = np.abs(np.atleast_1d(z))
        min_gap = float(np.min(1.0 - radii))
    else:
        min_gap = float(np.min(np.linalg.eigvalsh(_gram(D, z))))
    ok, res = shilov_contains(D, z, tol)
    resid = {"min_eig": min_gap, "shilov": res}
    if min_gap > tol.interior:
        return DomainPoint(D, z, Classification.INTERIOR, resid)
    if ok:
        return DomainPoint(D, z, Classification.SHILOV, resid)
    if min_gap >= -tol.shilov:
        return DomainPoint(D, z, Classification.OTHER, resid)
    return DomainPoint(D, z, Classification.EXTERIOR, resid)


# ---------------------------------------------------------------------------
# group action

def _ball_form(p: int, q: int) -> np.ndarray:
    return np.diag(np.r_[np.ones(p), -np.ones(q)]).astype(complex)


def _jstd(n: int) -> np.ndarray:
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def _cayley(n: int) -> tuple[np.ndarray, np.ndarray]:
    """C with C Sp(2n,R) C^-1 inside U(n,n), sending Z = (1/2)[[0,-I],[I,0]] to (i/2)diag(I,-I)."""
    I = np.eye(n)
    C = np.block([[I, 1j * I], [I, -1j * I]])
    Ci = 0.5 * np.block([[I, I], [-1j * I, 1j * I]])
    return C, Ci


def check_group_element(D: BoundedDomain, g, tol: float = 1e-8) -> float:
    """Residual of the form-preservation identity; raises if above ``tol``."""
    if D.kind is Kind.POLYDISK:
        g = np.asarray(g, dtype=complex)
        if g.shape != (D.params[0], 2, 2):
            raise ValueError(f"polydisk group elements have shape ({D.params[0]}, 2, 2)")
        H = _ball_form(1, 1)
        res = max(float(np.max(np.abs(gi.conj().T @ H @ gi - H))) for gi in g)
    elif D.kind is Kind.SIEGEL:
        g = np.asarray(g)
        n = D.params[0]
        if g.shape != (2 * n, 2 * n):
            raise ValueError(f"siegel:{n} group elements are {2 * n}x{2 * n} real matrices")
        J = _jstd(n)
        res = max(float(np.max(np.abs(np.imag(g)))), float(np.max(np.abs(np.real(g).T @ J @ np.real(g) - J))))
    else:
        p, q = (1, 1) if D.kind is Kind.DISK else D.params
        g = np.asarray(g, dtype=complex)
        if g.shape != (p + q, p + q):
            raise ValueError(f"{D.descriptor} group elements are {p + q}x{p + q}")
        H = _ball_form(p, q)
        res = float(np.max(np.abs(g.conj().T @ H @ g - H)))
    scale = max(1.0, float(np.max(np.abs(g))) ** 2)
    if res > tol * scale:
        raise ValueError(f"group element does not preserve the form (residual {res:.3g})")
    return res


def _frac_linear(g: np.ndarray, Z: np.ndarray, p: int) -> np.ndarray:
    A, B = g[:p, :p], g[:p, p:]
    C, Dm = g[p:, :p], g[p:, p:]
    den = C @ Z + Dm
    cond = np.linalg.cond(den)
    if not np.isfinite(cond) or cond > 1e14:
        raise ZeroDivisionError("CZ + D is singular")
    return np.linalg.solve(den.T, (A @ Z + B).T).T


def mobius(D: BoundedDomain, g, z, tol: Tolerances = DEFAULT_TOL, check: bool = True) -> DomainPoint:
    """Z -> (AZ + B)(CZ + D)^-1; Siegel elements are real symplectic and pass through the Cayley transform."""
    if check:
        check_group_element(D, g)
    z = _as_point(D, z)
    if D.kind is Kind.DISK:
        out = _frac_linear(np.asarray(g, dtype=complex), z.reshape(1, 1), 1)[0, 0]
    elif D.kind is Kind.POLYDISK:
        g = np.asarray(g, dtype=complex)
        out = np.array([_frac_linear(gi, zi.reshape(1, 1), 1)[0, 0] for gi, zi in zip(g, z)])
    elif D.kind is Kind.BALL:
        out = _frac_linear(np.asarray(g, dtype=complex), z, D.params[0])
    else:
        n = D.params[0]
        C, Ci = _cayley(n)
        gh = C @ np.asarray(g, dtype=complex) @ Ci
        out = _frac_linear(gh, z, n)
        out = 0.5 * (out + out.T)
    return classify(D, out, tol)


def _lie_algebra_sample(D: BoundedDomain, rng: np.random.Generator, scale: float) -> np.ndarray:
    if D.kind is Kind.SIEGEL:
        n = D.params[0]
        S = rng.normal(scale=scale, size=(2 * n, 2 * n))
        S = 0.5 * (S + S.T)
        return -_jstd(n) @ S  # Hamiltonian: J⁻¹ S with J⁻¹ = -J
    p, q = (1, 1) if D.kind in (Kind.DISK, Kind.POLYDISK) else D.params
    N = p + q
    A = rng.normal(scale=scale, size=(N, N)) + 1j * rng.normal(scale=scale, size=(N, N))
    A = 0.5 * (A - A.conj().T)
    return _ball_form(p, q) @ A


def random_group_element(D: BoundedDomain, rng: np.random.Generator, scale: float = 0.5) -> np.ndarray:
    """exp of a Gaussian element of the Lie algebra (not Haar; adequate for invariance checks)."""
    if D.kind is Kind.POLYDISK:
        return np.stack([expm(_lie_algebra_sample(D, rng, scale)) for _ in range(D.params[0])])
    g = expm(_lie_algebra_sample(D, rng, scale))
    return np.real(g) if D.kind is Kind.SIEGEL else g


def _squash(D: BoundedDomain, M: np.ndarray, cap: float = np.inf) -> np.ndarray:
    """Map an arbitrary (symmetric, for Siegel) matrix into the domain: singular values s -> tanh(s)."""
    M = np.atleast_2d(M)
    H = M.conj().T @ M
    w, V = np.linalg.eigh(H)
    s = np.sqrt(np.clip(w, 0.0, None))
    f = np.where(s > 1e-300, np.tanh(np.minimum(s, cap)) / np.where(s > 1e-300, s, 1.0), 1.0)
    return M @ (V * f) @ V.conj().T


def random_interior_point(D: BoundedDomain, rng: np.random.Generator, spread: float = 1.0) -> np.ndarray:
    if D.kind is Kind.DISK:
        m = complex(rng.normal(scale=spread), rng.normal(scale=spread))
        return np.asarray(_squash(D, np.array([[m]]))[0, 0])
    if D.kind is Kind.POLYDISK:
        m = rng.normal(scale=spread, size=D.shape) + 1j * rng.normal(scale=spread, size=D.shape)
        return np.tanh(np.abs(m)) * np.exp(1j * np.angle(m))
    M = rng.normal(scale=spread, size=D.shape) + 1j * rng.normal(scale=spread, size=D.shape)
    if D.kind is Kind.SIEGEL:
        M = 0.5 * (M + M.T)
    Z = _squash(D, M)
    return 0.5 * (Z + Z.T) if D.kind is Kind.SIEGEL else Z


def _haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    G = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / math.sqrt(2)
    Q, R = np.linalg.qr(G)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_shilov_point(D: BoundedDomain, rng: np.random.Generator) -> np.ndarray:
    """Disk/polydisk: uniform phases; ball: QR of a Gaussian; Siegel: U Uᵀ for a Haar unitary U."""
    if D.kind is Kind.DISK:
        return np.asarray(np.exp(2j * math.pi * rng.random()))
    if D.kind is Kind.POLYDISK:
        return np.exp(2j * math.pi * rng.random(D.params[0]))
    if D.kind is Kind.BALL:
        p, q = D.params
        lo, hi = min(p, q), max(p, q)
        G = (rng.normal(size=(hi, lo)) + 1j * rng.normal(size=(hi, lo))) / math.sqrt(2)
        Q, R = np.linalg.qr(G)
        Q = Q * (np.diag(R) / np.abs(np.diag(R)))
        return Q.conj().T if p <= q else Q
    U = _haar_unitary(D.params[0], rng)
    return U @ U.T


# ---------------------------------------------------------------------------
# geodesics

def origin_tangent_shape(D: BoundedDomain) -> tuple:
    return D.shape


def _polar_tanh(D: BoundedDomain, X: np.ndarray, t: float) -> np.ndarray:
    if D.kind is Kind.DISK:
        x = complex(X)
        r = abs(x)
        return np.asarray(0j if r == 0 else math.tanh(t * r) * x / r)
    if D.kind is Kind.POLYDISK:
        r = np.abs(X)
        with np.errstate(invalid="ignore", divide="ignore"):
            u = np.where(r > 0, X / np.where(r > 0, r, 1.0), 0.0)
        return np.tanh(t * r) * u
    U, s, Vh = np.linalg.svd(X, full_matrices=False)
    Z = (U * np.tanh(t * s)) @ Vh
    return 0.5 * (Z + Z.T) if D.kind is Kind.SIEGEL else Z


def geodesic_from_origin(D: BoundedDomain, X, t: float, tol: Tolerances = DEFAULT_TOL) -> DomainPoint:
    """exp(tX)·0 for the tangent vector X at the origin (a point-shaped array).

    X corresponds to the Lie algebra element [[0, X], [X*, 0]]; the orbit of
    the origin is U tanh(tΣ) V* for the singular value decomposition X = UΣV*.
    """
    X = _as_point(D, X)
    if D.kind is Kind.SIEGEL and np.max(np.abs(X - X.T)) > 1e-12:
        raise ValueError("Siegel tangent vectors are symmetric matrices")
    return classify(D, _polar_tanh(D, X, t), tol)


def geodesic_group_element(D: BoundedDomain, X, t: float) -> np.ndarray:
    """The group element exp(t·[[0, X], [X*, 0]]) (Siegel: its real symplectic preimage)."""
    X = _as_point(D, X)
    if D.kind is Kind.POLYDISK:
        return np.stack([expm(t * np.array([[0, x], [np.conj(x), 0]])) for x in X])
    if D.kind is Kind.DISK:
        X = X.reshape(1, 1)
    p, q = X.shape
    L = np.block([[np.zeros((p, p)), X], [X.conj().T, np.zeros((q, q))]])
    g = expm(t * L)
    if D.kind is Kind.SIEGEL:
        C, Ci = _cayley(p)
        return np.real(Ci @ g @ C)
    return g


def boundary_limit(D: BoundedDomain, X, tol: Tolerances = DEFAULT_TOL, t_max: float = T_MAX) -> DomainPoint:
    return geodesic_from_origin(D, X, t_max, tol)


def symplectic_standard_frame(omega: np.ndarray, K: np.ndarray) -> np.ndarray:
    """Real B with Bᵀ Ω B = [[0,I],[-I,0]] and B⁻¹ K B = [[0,-I],[I,0]].

    Requires K² = -I with ΩK symmetric positive definite.
    """
    omega = np.asarray(omega, dtype=float)
    K = np.asarray(K, dtype=float)
    N = omega.shape[0]
    n = N // 2
    G = omega @ K
    G = 0.5 * (G + G.T)
    Gh = np.real(sqrtm(G))
    Ghi = np.linalg.inv(Gh)
    Kp = Gh @ K @ Ghi  # orthogonal complex structure in g-orthonormal coordinates
    es, fs = [], []
    for j in range(N):
        v = np.zeros(N)
        v[j] = 1.0
        for e, f in zip(es, fs):
            v = v - (e @ v) * e - (f @ v) * f
        nv = np.linalg.norm(v)
        if nv < 1e-8:
            continue
        e = v / nv
        f = Kp @ e
        es.append(e)
        fs.append(f)
        if len(es) == n:
            break
    Bp = np.column_stack(es + fs)
    return Ghi @ Bp


def tangent_from_sp(X_std: np.ndarray) -> np.ndarray:
    """Siegel tangent vector of a p-element [[a, b], [b, -a]] of standard sp(2n,R): a + ib."""
    X_std = np.asarray(X_std, dtype=float)
    n = X_std.shape[0] // 2
    a, b = X_std[:n, :n], X_std[:n, n:]
    return a + 1j * b


# ---------------------------------------------------------------------------

def orientation_cocycle(x, y, z, tol: float = 1e-12) -> int:
    """Cyclic orientation of three circle points: +1 counterclockwise, -1 clockwise, 0 if two coincide."""
    x, y, z = complex(x), complex(y), complex(z)
    if min(abs(x - y), abs(y - z), abs(z - x)) <= tol:
        return 0
    a = (cmath.phase(y / x)) % (2 * math.pi)
    b = (cmath.phase(z / x)) % (2 * math.pi)
    return 1 if a < b else -1
