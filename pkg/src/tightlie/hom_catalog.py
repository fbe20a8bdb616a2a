"""Catalog of homomorphisms between Hermitian Lie algebras.

A :class:`LieHom` stores the image of every domain basis element; all other
values come from exact coordinates in that basis.  Constructors here build the
standard examples (diagonal disks, irreducible sl(2) representations, the
symmetric square of su(1,2), the two Sp(4,R) embeddings, corner inclusions)
and the generic combinators ``compose`` and ``direct_sum_hom``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb
from typing import Callable, Optional, Sequence, Union

from .exact import ExactScalar, Mat, RationalSpan, as_scalar, linear_combination, nullspace
from .lie_core import (
    Family,
    HermitianLieAlgebra,
    NotInSubalgebra,
    bracket,
    make_sp,
    make_su,
    parse_algebra,
    sl2_elements,
    standard_symplectic,
)

__all__ = [
    "LieHom",
    "DirectSumAlgebra",
    "sl2",
    "same_algebra",
    "identity",
    "diagonal_disk",
    "irreducible_sl2_to_sp",
    "sym2_su12_to_su24",
    "sp4_embeddings",
    "sp4_forms",
    "corner_su",
    "compose",
    "direct_sum_hom",
    "from_images",
    "conjugate_to_standard",
    "gaussian_sqrt",
    "hom_to_json",
    "hom_from_json",
]

_I = ExactScalar(0, 1)
_HALF = Fraction(1, 2)


@lru_cache(maxsize=None)
def sl2() -> HermitianLieAlgebra:
    """sl(2,R) = sp(2,R) with the standard form; shared instance."""
    return make_sp(1)


class DirectSumAlgebra:
    """Block-diagonal direct sum of Hermitian Lie algebras.

    The basis lists the embedded k-elements of every summand first and then
    the embedded p-elements, so ``k_basis``/``p_basis`` stay index ranges.
    """

    def __init__(self, summands: Sequence[HermitianLieAlgebra]):
        if len(summands) < 1:
            raise ValueError("direct sum needs at least one summand")
        self.summands = tuple(summands)
        self.sizes = tuple(g.ambient_dim for g in summands)
        self.offsets = tuple(sum(self.sizes[:i]) for i in range(len(summands)))

    @property
    def ambient_dim(self) -> int:
        return sum(self.sizes)

    @property
    def rank(self) -> int:
        return sum(g.rank for g in self.summands)

    @property
    def real_dim(self) -> int:
        return sum(g.real_dim for g in self.summands)

    @property
    def descriptor(self) -> str:
        return "+".join(g.descriptor for g in self.summands)

    @property
    def is_tube(self) -> bool:
        return all(g.is_tube for g in self.summands)

    def __repr__(self):
        return f"DirectSumAlgebra({self.descriptor})"

    def embed(self, i: int, X: Mat) -> Mat:
        blocks = [X if j == i else Mat.zeros(n) for j, n in enumerate(self.sizes)]
        return Mat.block_diag(blocks)

    def block(self, i: int, X: Mat) -> Mat:
        o, n = self.offsets[i], self.sizes[i]
        return Mat([[X[o + r, o + c] for c in range(n)] for r in range(n)])

    def _block_diagonal(self, X: Mat) -> bool:
        for i, j, _, _ in X.nonzeros():
            bi = max(b for b, o in enumerate(self.offsets) if o <= i)
            o = self.offsets[bi]
            if not (o <= j < o + self.sizes[bi]):
                return False
        return True

    def contains(self, X: Mat) -> bool:
        if X.dim != self.ambient_dim or not self._block_diagonal(X):
            return False
        return all(g.contains(self.block(i, X)) for i, g in enumerate(self.summands))

    def theta(self, X: Mat) -> Mat:
        return Mat.block_diag([g.theta(self.block(i, X)) for i, g in enumerate(self.summands)])

    def in_k(self, X: Mat) -> bool:
        return self.contains(X) and self.theta(X) == X

    def in_p(self, X: Mat) -> bool:
        return self.contains(X) and self.theta(X) == -X

    @cached_property
    def Z(self) -> Mat:
        return Mat.block_diag([g.Z for g in self.summands])

    @cached_property
    def _adapted(self):
        ks = [self.embed(i, X) for i, g in enumerate(self.summands) for X in g.k_elements]
        ps = [self.embed(i, X) for i, g in enumerate(self.summands) for X in g.p_elements]
        return ks, ps

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


Algebra = Union[HermitianLieAlgebra, DirectSumAlgebra]


def same_algebra(a: Algebra, b: Algebra) -> bool:
    """Structural equality: same family, parameters, form and Cartan involution."""
    if a is b:
        return True
    if isinstance(a, DirectSumAlgebra) or isinstance(b, DirectSumAlgebra):
        return (isinstance(a, DirectSumAlgebra) and isinstance(b, DirectSumAlgebra)
                and len(a.summands) == len(b.summands)
                and all(same_algebra(x, y) for x, y in zip(a.summands, b.summands)))
    return (a.family == b.family and a.params == b.params and a.form == b.form
            and a.Z == b.Z and a.theta_matrix == b.theta_matrix)


@dataclass(frozen=True, eq=False)
class LieHom:
    """Real-linear map ``domain -> codomain`` given on the domain basis."""

    domain: Algebra
    codomain: HermitianLieAlgebra
    images: tuple
    label: str = ""

    def __post_init__(self):
        if len(self.images) != len(self.domain.basis):
            raise ValueError(f"{len(self.images)} images for a domain basis of size {len(self.domain.basis)}")
        n = self.codomain.ambient_dim
        for j, M in enumerate(self.images):
            if M.dim != n:
                raise ValueError(f"image {j} is {M.dim}x{M.dim}, codomain needs {n}x{n}")

    def apply(self, X: Mat) -> Mat:
        coords = self.domain.coordinates(X)
        return linear_combination(coords, self.images, self.codomain.ambient_dim)

    __call__ = apply

    def __repr__(self):
        return f"LieHom({self.label or '?'}: {self.domain.descriptor} -> {self.codomain.descriptor})"


def _from_function(domain: Algebra, codomain: HermitianLieAlgebra, f: Callable[[Mat], Mat], label: str) -> LieHom:
    return LieHom(domain, codomain, tuple(f(b) for b in domain.basis), label)


def _sl2_linear(dH: Mat, dE: Mat, dF: Mat) -> Callable[[Mat], Mat]:
    """Linear extension of H, E, F images to arbitrary 2x2 traceless matrices."""
    def f(X: Mat) -> Mat:
        a, b, c = X[0, 0], X[0, 1], X[1, 0]
        return dH.scale(a) + dE.scale(b) + dF.scale(c)
    return f


def identity(g: Algebra) -> LieHom:
    return LieHom(g, g if isinstance(g, HermitianLieAlgebra) else _sum_codomain(g), tuple(g.basis), f"id:{g.descriptor}")


# ---------------------------------------------------------------------------
# diagonal disks

def _nullspace_real(rows: list[list[Fraction]], N: int) -> list[list[Fraction]]:
    """Basis of {x in Q^N : r.x = 0 for every row r}."""
    piv_rows: list[tuple[int, list[Fraction]]] = []
    for r in rows:
        r = list(r)
        for c, pr in piv_rows:
            if r[c]:
                f = r[c]
                r = [x - f * y for x, y in zip(r, pr)]
        lead = next((c for c in range(N) if r[c]), None)
        if lead is None:
            continue
        p = r[lead]
        r = [x / p for x in r]
        piv_rows = [(c, [x - pr[lead] * y for x, y in zip(pr, r)]) for c, pr in piv_rows]
        piv_rows.append((lead, r))
    pivots = {c for c, _ in piv_rows}
    out = []
    for free in range(N):
        if free in pivots:
            continue
        v = [Fraction(0)] * N
        v[free] = Fraction(1)
        for c, pr in piv_rows:
            v[c] = -pr[free]
        out.append(v)
    return out


def _real_rank(vecs: list[list[Fraction]]) -> int:
    from .exact import _dense_rank
    return _dense_rank([list(v) for v in vecs])


def _lagrangian(g: HermitianLieAlgebra) -> list[list[Fraction]]:
    """Exact Lagrangian subspace of the symplectic form, greedily extended."""
    N = g.ambient_dim
    om = [[g.form[i, j].re for j in range(N)] for i in range(N)]
    L: list[list[Fraction]] = []
    while len(L) < N // 2:
        rows = [[sum(l[i] * om[i][j] for i in range(N)) for j in range(N)] for l in L]
        cand = _nullspace_real(rows, N) if rows else [
            [Fraction(int(i == j)) for i in range(N)] for j in range(N)]
        for v in cand:
            if _real_rank(L + [v]) > len(L):
                L.append(v)
                break
        else:  # pragma: no cover - the perp of an isotropic subspace is larger
            raise RuntimeError("isotropic extension failed")
    return L


def _sp_disk_images(g: HermitianLieAlgebra) -> tuple[Mat, Mat, Mat]:
    N = g.ambient_dim
    n = N // 2
    K = g.complex_structure
    L = _lagrangian(g)
    KL = [[sum(K[i, j].re * v[j] for j in range(N)) for i in range(N)] for v in L]
    cols = L + KL
    M = Mat([[cols[j][i] for j in range(N)] for i in range(N)])
    Y = M @ Mat.diag([1] * n + [-1] * n) @ M.inverse()
    W = bracket(g.Z, Y)
    Z2 = g.Z.scale(2)
    dE = (W - Z2).scale(_HALF)
    dF = (W + Z2).scale(_HALF)
    return Y, dE, dF


def gaussian_sqrt(r: Fraction) -> ExactScalar:
    """A Gaussian rational ``s`` with ``|s|^2 == r`` (r > 0), if one exists."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("need a positive rational")
    u, v = r.numerator, r.denominator
    N = u * v
    # r = N / v^2, so |x + iy|^2 = N gives s = (x + iy) / v
    for x in range(math.isqrt(N), -1, -1):
        y2 = N - x * x
        y = math.isqrt(y2)
        if y * y == y2:
            return ExactScalar(Fraction(x, v), Fraction(y, v))
    raise ValueError(f"{r} is not a norm from Q(i); no rational unit frame exists")


# Cayley transform sl(2,R) -> su(1,1): X -> C X C^-1
_CAYLEY = Mat([[_HALF, _I * _HALF], [_HALF, -_I * _HALF]])
_CAYLEY_INV = Mat([[1, 1], [-_I, _I]])


def _su_disk_function(g: HermitianLieAlgebra) -> Callable[[Mat], Mat]:
    p, q = g.params
    N = p + q
    d = g.frame_norms
    Q, Qi = g.frame, g.frame.inverse()
    pairs = [(j, p + j) for j in range(min(p, q))]
    scales = {}
    for a, b in pairs:
        scales[a] = gaussian_sqrt(1 / abs(d[a]))
        scales[b] = gaussian_sqrt(1 / abs(d[b]))

    def f(X: Mat) -> Mat:
        Y = _CAYLEY @ X @ _CAYLEY_INV
        rows = [[as_scalar(0)] * N for _ in range(N)]
        for a, b in pairs:
            idx = (a, b)
            for r in range(2):
                for c in range(2):
                    rows[idx[r]][idx[c]] = scales[idx[r]] * Y[r, c] / scales[idx[c]]
        return Q @ Mat(rows) @ Qi
    return f


def diagonal_disk(g: HermitianLieAlgebra) -> LieHom:
    """Diagonal disk sl(2,R) -> g through a maximal polydisk."""
    if g.family is Family.SP:
        f = _sl2_linear(*_sp_disk_images(g))
    else:
        f = _su_disk_function(g)
    return _from_function(sl2(), g, f, f"diag:{g.descriptor}")


# ---------------------------------------------------------------------------
# irreducible representations of sl(2,R)

def irreducible_sl2_to_sp(n: int, positive: bool = True) -> LieHom:
    """The 2n-dimensional irreducible representation sl(2,R) -> sp(2n,R).

    Works on homogeneous polynomials P_k = x^(m-k) y^k, m = 2n-1, with the
    invariant skew form <P_k, P_{m-k}> = (-1)^k / binom(m, k).  The action is
    X.P(v) = d/dt P(exp(-tX) v), which is minus the coordinate formula
    a(m-2k)P_k + b(m-k)P_{k+1} + ckP_{k-1}.  ``positive`` rescales the form by
    (-1)^(n+1) so that the map is positive for every n; ``J P_k = (-1)^k P_{m-k}``
    is the complex structure, up to that sign.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    m = 2 * n - 1
    N = 2 * n
    eps = (-1) ** (n + 1) if positive else 1
    omega = [[0] * N for _ in range(N)]
    J = [[0] * N for _ in range(N)]
    for k in range(N):
        omega[k][m - k] = Fraction(eps * (-1) ** k, comb(m, k))
        J[m - k][k] = (-1) ** k
    cod = make_sp(n, Mat(omega), complex_structure=Mat(J))

    def act(a: Fraction, b: Fraction, c: Fraction) -> Mat:
        rows = [[0] * N for _ in range(N)]
        for k in range(N):
            rows[k][k] = -a * (m - 2 * k)
            if k + 1 < N:
                rows[k + 1][k] = -b * (m - k)
            if k >= 1:
                rows[k - 1][k] = -c * k
        return Mat(rows)

    f = _sl2_linear(act(1, 0, 0), act(0, 1, 0), act(0, 0, 1))
    return _from_function(sl2(), cod, f, f"irrep:sp({N})")


# ---------------------------------------------------------------------------
# symmetric square su(1,2) -> su(2,4)

def _sym2_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


def sym2_form(h: Mat) -> Mat:
    """Induced form h~(vw, v'w') = h(v,v')h(w,w') + h(v,w')h(w,v') on monomials."""
    pairs = _sym2_pairs(h.dim)
    rows = []
    for i, j in pairs:
        rows.append([h[i, k] * h[j, l] + h[i, l] * h[j, k] for k, l in pairs])
    return Mat(rows)


def sym2_action(X: Mat) -> Mat:
    """Derivation action of X on the symmetric square, monomial basis e_i e_j (i <= j)."""
    n = X.dim
    pairs = _sym2_pairs(n)
    index = {pq: t for t, pq in enumerate(pairs)}
    M = len(pairs)
    rows = [[as_scalar(0)] * M for _ in range(M)]
    for col, (i, j) in enumerate(pairs):
        for k in range(n):
            x = X[k, i]
            if x:
                t = index[tuple(sorted((k, j)))]
                rows[t][col] = rows[t][col] + x
            y = X[k, j]
            if y:
                t = index[tuple(sorted((i, k)))]
                rows[t][col] = rows[t][col] + y
    return Mat(rows)


def sym2_su12_to_su24() -> LieHom:
    """su(1,2) acting on Sym^2(C^3); the induced form is negated to get signature (2,4)."""
    dom = make_su(1, 2)
    cod = make_su(2, 4, form=-sym2_form(dom.form))
    return _from_function(dom, cod, sym2_action, "sym2:su12-su24")


# ---------------------------------------------------------------------------
# two copies of Sp(4,R) inside SL(4,R)

_LAMBDA = Mat([[0, 1], [1, 0]])


def sp4_forms() -> dict[str, Mat]:
    """The forms J, J~ and the conjugator s with sᵀ J s = J~."""
    I2, L = Mat.identity(2), _LAMBDA
    J = standard_symplectic(2)
    Jt = Mat.from_blocks([[None, L], [-L, None]], [2, 2])
    s = Mat.block_diag([I2, L])
    return {"J": J, "Jt": Jt, "s": s}


def _i_embedding(which: str) -> Callable[[Mat], Mat]:
    I2 = Mat.identity(2)
    off = I2 if which == "iA" else _LAMBDA

    def f(X: Mat) -> Mat:
        return Mat.from_blocks([[I2.scale(X[0, 0]), off.scale(X[0, 1])],
                                [off.scale(X[1, 0]), I2.scale(X[1, 1])]], [2, 2])
    return f


def sp4_embeddings() -> dict[tuple[str, str], LieHom]:
    """i_A and i_B into Sp(4,R)_A (form J) and Sp(4,R)_B (form J~).

    Keys are ``(embedding, form)`` with embedding in {"iA", "iB"} and form in
    {"A", "B"}.
    """
    forms = sp4_forms()
    cods = {"A": make_sp(2), "B": make_sp(2, forms["Jt"])}
    # each embedding is named bare against its own form, with "@" otherwise
    tags = {("iA", "A"): "iA", ("iA", "B"): "iA@B", ("iB", "B"): "iB", ("iB", "A"): "iB@A"}
    return {key: _from_function(sl2(), cods[key[1]], _i_embedding(key[0]), tag)
            for key, tag in tags.items()}


# ---------------------------------------------------------------------------

def corner_su(p1: int, q1: int, p2: int, q2: int) -> LieHom:
    """Block inclusion su(p1,q1) -> su(p2,q2) on the leading positive and negative coordinates."""
    if p1 > p2 or q1 > q2:
        raise ValueError(f"su({p1},{q1}) does not fit in su({p2},{q2})")
    dom, cod = make_su(p1, q1), make_su(p2, q2)
    idx = list(range(p1)) + [p2 + j for j in range(q1)]
    N2 = p2 + q2

    def f(X: Mat) -> Mat:
        rows = [[as_scalar(0)] * N2 for _ in range(N2)]
        for a, ia in enumerate(idx):
            for b, ib in enumerate(idx):
                rows[ia][ib] = X[a, b]
        return Mat(rows)
    return _from_function(dom, cod, f, f"corner:{p1},{q1},{p2},{q2}")


def compose(f: LieHom, g: LieHom) -> LieHom:
    """``f ∘ g``; requires ``g.codomain`` to be ``f.domain``."""
    if not same_algebra(g.codomain, f.domain):
        raise ValueError(f"cannot compose: {g.codomain.descriptor} is not the domain {f.domain.descriptor}")
    images = tuple(f.apply(Y) for Y in g.images)
    return LieHom(g.domain, f.codomain, images, f"{f.label}∘{g.label}")


def _sum_codomain(parts: Union[DirectSumAlgebra, Sequence[HermitianLieAlgebra]]) -> HermitianLieAlgebra:
    """A single algebra on the block-diagonal form with a block-diagonal Cartan involution."""
    algs = parts.summands if isinstance(parts, DirectSumAlgebra) else tuple(parts)
    fams = {g.family for g in algs}
    if len(fams) != 1:
        raise ValueError("direct sums must stay within one family")
    form = Mat.block_diag([g.form for g in algs])
    if Family.SP in fams:
        K = Mat.block_diag([g.complex_structure for g in algs])
        return make_sp(sum(g.params[0] for g in algs), form, complex_structure=K)
    sizes = [g.ambient_dim for g in algs]
    offs = [sum(sizes[:i]) for i in range(len(algs))]
    N = sum(sizes)
    pos_cols, neg_cols = [], []
    for g, o in zip(algs, offs):
        for c in range(g.ambient_dim):
            col = [as_scalar(0)] * N
            for r in range(g.ambient_dim):
                col[o + r] = g.frame[r, c]
            (pos_cols if g.frame_norms[c] > 0 else neg_cols).append(col)
    cols = pos_cols + neg_cols
    frame = Mat([[cols[j][i] for j in range(N)] for i in range(N)])
    return make_su(len(pos_cols), len(neg_cols), form, frame=frame)


def direct_sum_hom(homs: Sequence[LieHom]) -> LieHom:
    """Block sum of homomorphisms.

    With a common domain this is the sum of representations into the block
    codomain; otherwise the domain is the direct sum of the domains.
    """
    homs = list(homs)
    if not homs:
        raise ValueError("empty direct sum")
    cod = _sum_codomain([h.codomain for h in homs])
    label = "(" + "+".join(h.label for h in homs) + ")"
    if all(same_algebra(h.domain, homs[0].domain) for h in homs):
        images = tuple(Mat.block_diag([h.images[j] for h in homs]) for j in range(len(homs[0].images)))
        return LieHom(homs[0].domain, cod, images, label)
    dom = DirectSumAlgebra([h.domain for h in homs])

    def f(X: Mat) -> Mat:
        blocks = [h.apply(dom.block(i, X)) for i, h in enumerate(homs)]
        return Mat.block_diag(blocks)
    return _from_function(dom, cod, f, label)


def from_images(domain: Algebra, codomain: HermitianLieAlgebra, matrices: Sequence[Mat],
                sources: Optional[Sequence[Mat]] = None, label: str = "user") -> LieHom:
    """Homomorphism candidate from images of ``sources`` (default: the domain basis).

    ``sources`` may be any spanning family of the domain; every linear relation
    among them must hold among the images, otherwise the map is not well
    defined.  Images must lie in the codomain.
    """
    matrices = list(matrices)
    n = codomain.ambient_dim
    for j, M in enumerate(matrices):
        if not isinstance(M, Mat):
            raise TypeError(f"image {j} is not a matrix")
        if M.dim != n:
            raise ValueError(f"image {j} is {M.dim}x{M.dim}, codomain needs {n}x{n}")
        if not codomain.contains(M):
            raise NotInSubalgebra(f"image {j} is not in {codomain.descriptor}")
    if sources is None:
        if len(matrices) != len(domain.basis):
            raise ValueError(f"expected {len(domain.basis)} images, got {len(matrices)}")
        return LieHom(domain, codomain, tuple(matrices), label)
    sources = list(sources)
    if len(sources) != len(matrices):
        raise ValueError("sources and images differ in length")
    for j, S in enumerate(sources):
        if not domain.contains(S):
            raise NotInSubalgebra(f"source {j} is not in {domain.descriptor}")
    for rel in nullspace(sources, domain.ambient_dim):
        if not linear_combination(rel, matrices, n).is_zero():
            raise ValueError("map is not well defined: a linear relation among sources fails on the images")
    span = RationalSpan(domain.ambient_dim)
    picked = []
    for j, S in enumerate(sources):
        if span.add(S) is None:
            picked.append(j)
    if len(span) != len(domain.basis):
        raise ValueError("sources do not span the domain")

    def f(X: Mat) -> Mat:
        c = span.coordinates(X)
        return linear_combination(c, [matrices[j] for j in picked], n)
    return _from_function(domain, codomain, f, label)


def conjugate_to_standard(h: LieHom) -> tuple[Mat, list[Mat]]:
    """Exact symplectic frame B (Bᵀ Ω B standard) and the images B⁻¹ X B, for display."""
    from .lie_core import _symplectic_frame

    cod = h.codomain
    if cod.family is not Family.SP:
        raise ValueError("only symplectic codomains have a standard form here")
    B = _symplectic_frame(cod.form)
    Bi = B.inverse()
    return B, [Bi @ X @ B for X in h.images]


# ---------------------------------------------------------------------------
# JSON

def _algebra_to_json(g: Algebra) -> dict:
    if isinstance(g, DirectSumAlgebra):
        return {"sum": [_algebra_to_json(x) for x in g.summands]}
    out = {"algebra": g.descriptor, "form": g.form.to_json()}
    if g.family is Family.SP:
        out["complex_structure"] = g.complex_structure.to_json()
    else:
        out["frame"] = g.frame.to_json()
    return out


def _algebra_from_json(d) -> Algebra:
    if isinstance(d, str):
        return parse_algebra(d)
    if not isinstance(d, dict):
        raise ValueError("algebra entry must be a descriptor string or an object")
    if "sum" in d:
        return DirectSumAlgebra([_algebra_from_json(x) for x in d["sum"]])
    base = parse_algebra(d["algebra"])
    form = Mat.from_json(d["form"]) if "form" in d else None
    if base.family is Family.SP:
        K = Mat.from_json(d["complex_structure"]) if "complex_structure" in d else None
        return make_sp(base.params[0], form, complex_structure=K)
    frame = Mat.from_json(d["frame"]) if "frame" in d else None
    return make_su(*base.params, form=form, frame=frame)


def hom_to_json(h: LieHom) -> dict:
    return {
        "label": h.label,
        "domain": _algebra_to_json(h.domain),
        "codomain": _algebra_to_json(h.codomain),
        "images": [M.to_json() for M in h.images],
    }


def hom_from_json(data: Union[str, dict]) -> LieHom:
    """Inverse of :func:`hom_to_json`; an optional ``"sources"`` list is honoured."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict):
        raise ValueError("homomorphism JSON must be an object")
    try:
        dom = _algebra_from_json(data["domain"])
        cod = _algebra_from_json(data["codomain"])
        images = [Mat.from_json(m) for m in data["images"]]
    except KeyError as e:
        raise ValueError(f"missing field {e.args[0]!r}") from None
    if isinstance(cod, DirectSumAlgebra):
        raise ValueError("codomain must be a single algebra")
    sources = data.get("sources")
    if sources is not None:
        sources = [Mat.from_json(m) for m in sources]
    return from_images(dom, cod, images, sources=sources, label=data.get("label", "user"))
