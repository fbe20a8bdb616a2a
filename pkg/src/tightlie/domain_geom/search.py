"""Supremum search and Shilov integrality scans for the Bergmann cocycle.

Both split their work into independent tasks (restarts, samples), each with
its own RNG stream spawned from one ``SeedSequence``, so results do not depend
on the number of worker threads.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .domains import (
    DEFAULT_TOL,
    BoundedDomain,
    Kind,
    Tolerances,
    _squash,
    bergmann_cocycle,
    h_kernel,
    pair_matrix,
    random_shilov_point,
)

__all__ = [
    "BoundViolation",
    "SupResult",
    "ScanResult",
    "sup_search",
    "integrality_scan",
    "lattice_distance",
    "gap_statistics",
    "worker_count",
]

BOUND_SLACK = 1e-6
CHART_CAP = 10.0


class BoundViolation(AssertionError):
    """|β| exceeded rank/2 + slack: the kernel or the chart is broken."""


def worker_count(requested: Optional[int] = None) -> int:
    cap = os.environ.get("TIGHTLIE_THREADS")
    n = requested if requested is not None else (os.cpu_count() or 1)
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ValueError(f"TIGHTLIE_THREADS must be an integer, got {cap!r}") from None
    return max(1, n)


def _map_tasks(fn, items, threads: Optional[int]):
    n = worker_count(threads)
    if n == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


# ---------------------------------------------------------------------------
# chart

def _point_params(D: BoundedDomain) -> int:
    return D.real_dim


def _unpack(D: BoundedDomain, v: np.ndarray) -> np.ndarray:
    """Real parameter block -> raw (unsquashed) point-shaped complex array."""
    if D.kind is Kind.SIEGEL:
        n = D.params[0]
        m = n * (n + 1) // 2
        c = v[:m] + 1j * v[m:2 * m]
        M = np.zeros((n, n), dtype=complex)
        iu = np.triu_indices(n)
        M[iu] = c
        return M + np.triu(M, 1).T
    size = v.size // 2
    c = v[:size] + 1j * v[size:]
    return c.reshape(D.shape) if D.shape else c[0]


def chart(D: BoundedDomain, v: np.ndarray, cap: float = CHART_CAP) -> np.ndarray:
    """Interior point with singular values tanh(min(s, cap)) of the raw matrix."""
    M = _unpack(D, v)
    if D.kind is Kind.DISK:
        r = abs(M)
        return np.asarray(0j if r == 0 else math.tanh(min(r, cap)) * M / r)
    if D.kind is Kind.POLYDISK:
        r = np.abs(M)
        safe = np.where(r > 0, r, 1.0)
        return np.where(r > 0, np.tanh(np.minimum(r, cap)) * M / safe, 0.0)
    Z = _squash(D, M, cap)
    return 0.5 * (Z + Z.T) if D.kind is Kind.SIEGEL else Z


@dataclass
class SupResult:
    domain: str
    best: float
    argmax: list
    restart_values: list
    evaluations: int
    max_abs_beta: float
    seed: int

    def to_json(self) -> dict:
        def pt(z):
            return [[float(c.real), float(c.imag)] for c in np.atleast_1d(z).ravel()]
        return {
            "domain": self.domain,
            "seed": self.seed,
            "sup": self.best,
            "argmax": [pt(z) for z in self.argmax],
            "restart_values": list(self.restart_values),
            "evaluations": self.evaluations,
            "max_abs_beta": self.max_abs_beta,
        }


def _one_restart(D: BoundedDomain, child: np.random.SeedSequence, iters: int, cap: float,
                 tol: Tolerances, backend: Optional[str], polish: int):
    rng = np.random.default_rng(child)
    k = _point_params(D)
    bound = D.rank / 2 + BOUND_SLACK
    stats = {"evals": 0, "max_abs": 0.0}

    def objective(v):
        pts = [chart(D, v[i * k:(i + 1) * k], cap) for i in range(3)]
        # interior triples are always transverse, so the endpoint test is skipped
        As = np.stack([pair_matrix(D, pts[0], pts[1]), pair_matrix(D, pts[1], pts[2]),
                       pair_matrix(D, pts[2], pts[0])])
        try:
            b = float(kernels.arg_continuation_batch(As, backend).sum() / math.pi)
        except kernels.KernelVanishes:
            return 0.0
        stats["evals"] += 1
        if abs(b) > stats["max_abs"]:
            stats["max_abs"] = abs(b)
        if abs(b) > bound:
            raise BoundViolation(f"beta = {b!r} exceeds rank/2 = {D.rank / 2} on {D.descriptor}")
        return -b

    x = rng.normal(scale=2.0, size=3 * k)
    best_f = objective(x)
    for round_ in range(1 + polish):
        res = minimize(objective, x, method="Nelder-Mead",
                       options={"maxiter": iters, "maxfev": 2 * iters, "adaptive": True,
                                "xatol": 1e-6, "fatol": 1e-13})
        improved = res.fun < best_f - 1e-15
        if res.fun <= best_f:
            best_f, x = float(res.fun), res.x
        if round_ and not improved:
            break
    pts = [chart(D, x[i * k:(i + 1) * k], cap) for i in range(3)]
    return -best_f, pts, stats["evals"], stats["max_abs"]


def sup_search(D: BoundedDomain, restarts: int = 32, iters: int = 800, seed: int = 0,
               threads: Optional[int] = None, cap: float = CHART_CAP, tol: Tolerances = DEFAULT_TOL,
               backend: Optional[str] = None, polish: int = 1) -> SupResult:
    """Maximise β over interior triples by Nelder–Mead from random starts.

    Every evaluated |β| is checked against rank/2 + 1e-6; a violation raises
    :class:`BoundViolation` instead of being optimised over.
    """
    if restarts < 1 or iters < 1:
        raise ValueError("restarts and iters must be positive")
    children = np.random.SeedSequence(seed).spawn(restarts)
    out = _map_tasks(lambda c: _one_restart(D, c, iters, cap, tol, backend, polish), children, threads)
    values = [o[0] for o in out]
    # first index wins ties so the result is independent of scheduling
    i = int(np.argmax(values))
    return SupResult(D.descriptor, float(values[i]), out[i][1], [float(v) for v in values],
                     int(sum(o[2] for o in out)), float(max(o[3] for o in out)), seed)


# ---------------------------------------------------------------------------
# integrality scans

def lattice_distance(beta: float, rank: int) -> float:
    """Distance from β to {-r/2, -r/2 + 1, ..., r/2}."""
    shifted = beta + rank / 2
    k = min(max(round(shifted), 0), rank)
    return abs(shifted - k)


@dataclass
class ScanResult:
    domain: str
    seed: int
    betas: np.ndarray
    min_h: np.ndarray
    lattice_distance: np.ndarray
    rejected: int
    rank: int = 0
    histogram: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "domain": self.domain,
            "seed": self.seed,
            "samples": int(self.betas.size),
            "rejected": self.rejected,
            "max_lattice_distance": float(self.lattice_distance.max()) if self.betas.size else 0.0,
            "min_beta": float(self.betas.min()) if self.betas.size else None,
            "max_beta": float(self.betas.max()) if self.betas.size else None,
            "histogram": self.histogram,
        }

    def to_csv(self) -> str:
        lines = ["beta,min_h,lattice_distance"]
        lines += [f"{b:.17g},{h:.17g},{d:.17g}" for b, h, d in zip(self.betas, self.min_h, self.lattice_distance)]
        return "\n".join(lines) + "\n"


def _one_sample(D: BoundedDomain, child, tol: Tolerances, backend, max_tries: int):
    rng = np.random.default_rng(child)
    for attempt in range(max_tries):
        pts = [random_shilov_point(D, rng) for _ in range(3)]
        if min(abs(h_kernel(D, pts[a], pts[b])) for a, b in ((0, 1), (1, 2), (2, 0))) <= tol.transverse:
            continue
        ev = bergmann_cocycle(D, *pts, tol=tol, backend=backend)
        return ev.beta, ev.min_transversality, attempt
    raise RuntimeError("could not draw a transverse Shilov triple")


def integrality_scan(D: BoundedDomain, samples: int = 1000, seed: int = 0, tol: Tolerances = DEFAULT_TOL,
                     threads: Optional[int] = None, backend: Optional[str] = None, bins: int = 40,
                     max_tries: int = 100) -> ScanResult:
    """β over random pairwise transverse Shilov triples, with distances to the half-integer lattice."""
    if samples < 1:
        raise ValueError("samples must be positive")
    children = np.random.SeedSequence(seed).spawn(samples)
    out = _map_tasks(lambda c: _one_sample(D, c, tol, backend, max_tries), children, threads)
    betas = np.array([o[0] for o in out])
    mins = np.array([o[1] for o in out])
    dist = np.array([lattice_distance(b, D.rank) for b in betas])
    r = D.rank
    # rounding can put lattice endpoints a few ulps outside [-r/2, r/2]
    counts, edges = np.histogram(np.clip(betas, -r / 2, r / 2), bins=bins, range=(-r / 2, r / 2))
    hist = {"edges": [float(e) for e in edges], "counts": [int(c) for c in counts]}
    return ScanResult(D.descriptor, seed, betas, mins, dist, int(sum(o[2] for o in out)), r, hist)


def gap_statistics(values, lo: float, hi: float, distinct_tol: float = 1e-9) -> tuple[int, float]:
    """Number of distinct values strictly inside (lo, hi) and the largest gap between neighbours."""
    v = np.sort(np.asarray(values, dtype=float))
    v = v[(v > lo) & (v < hi)]
    if v.size == 0:
        return 0, float("inf")
    keep = np.r_[True, np.diff(v) > distinct_tol]
    v = v[keep]
    gap = float(np.max(np.diff(v))) if v.size > 1 else float("inf")
    return int(v.size), gap
