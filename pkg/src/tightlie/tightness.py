"""Exact tightness certification for homomorphisms of Hermitian Lie algebras.

A homomorphism from sl(2,R) is measured by its disk coefficient: the
λ-projection of the image of Z_D, divided by the same quantity for the
codomain's diagonal disk.  For a general domain each simple factor is probed
through its own diagonal disk, giving pullback coefficients λ_i, and the map
is tight exactly when ``sum |λ_i| r_i`` equals the codomain rank.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exact import Mat, RationalSpan
from .hom_catalog import (
    DirectSumAlgebra,
    LieHom,
    compose,
    diagonal_disk,
    sl2,
)
from .lie_core import (
    HermitianLieAlgebra,
    bracket,
    lambda_Z,
    sl2_elements,
    trace_pairing,
)

__all__ = [
    "HomWitness",
    "FactorReport",
    "TightnessReport",
    "HullResult",
    "HullNotTightWarning",
    "check_homomorphism",
    "check_cartan",
    "disk_coefficient",
    "disk_data",
    "pullback_coefficients",
    "is_tight",
    "is_positive",
    "is_H1",
    "is_H2",
    "hermitian_hull",
    "isotypic_decomposition",
    "irreducible_dimensions",
    "weight_multiplicities",
    "tightness_report",
]


@dataclass(frozen=True)
class HomWitness:
    """Outcome of the bracket check; truthy iff the map is a homomorphism."""

    ok: bool
    pair: Optional[tuple[int, int]] = None
    residual: Optional[Mat] = None

    def __bool__(self):
        return self.ok


def check_homomorphism(rho: LieHom) -> HomWitness:
    """Test ρ[X_i, X_j] = [ρX_i, ρX_j] on every pair of domain basis elements."""
    basis = rho.domain.basis
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            lhs = rho.apply(bracket(basis[i], basis[j]))
            rhs = bracket(rho.images[i], rho.images[j])
            if lhs != rhs:
                return HomWitness(False, (i, j), lhs - rhs)
    return HomWitness(True)


def check_cartan(rho: LieHom) -> bool:
    """ρ(k1) ⊆ k2 and ρ(p1) ⊆ p2, by exact membership."""
    cod = rho.codomain
    dom = rho.domain
    return (all(cod.in_k(rho.images[i]) for i in dom.k_basis)
            and all(cod.in_p(rho.images[i]) for i in dom.p_basis))


def _require_valid(rho: LieHom):
    w = check_homomorphism(rho)
    if not w:
        raise ValueError(f"not a homomorphism: bracket fails on basis pair {w.pair}")
    if not check_cartan(rho):
        raise ValueError("homomorphism does not respect the Cartan decompositions")


@dataclass(frozen=True)
class DiskData:
    dc: Fraction
    trace: Fraction  # Re tr(Z_cod ρ(Z_D))
    trace_ratio: Fraction  # λ_Z(ρ(Z_D)), the raw projection
    reference: Fraction  # λ_Z of the codomain diagonal disk


def _rank_one_tube(g) -> bool:
    return isinstance(g, HermitianLieAlgebra) and g.rank == 1 and g.is_tube


def disk_data(rho: LieHom, validate: bool = True) -> DiskData:
    """Disk coefficient plus the raw traces behind it."""
    if not _rank_one_tube(rho.domain):
        raise ValueError(f"disk coefficient needs an sl(2,R)-type domain, got {rho.domain.descriptor}")
    if validate:
        _require_valid(rho)
    cod = rho.codomain
    img = rho.apply(rho.domain.Z)
    raw = lambda_Z(cod, img)
    d = diagonal_disk(cod)
    ref = lambda_Z(cod, d.apply(sl2().Z))
    # cannot vanish for the supported families: the diagonal disk is tight
    assert ref != 0
    return DiskData(raw / ref, trace_pairing(cod.Z, img), raw, ref)


def disk_coefficient(rho: LieHom) -> Fraction:
    """λ_Z(ρ(Z_D)) / λ_Z(d(Z_D)) with d the diagonal disk of the codomain."""
    return disk_data(rho).dc


def _factors(dom) -> list[HermitianLieAlgebra]:
    return list(dom.summands) if isinstance(dom, DirectSumAlgebra) else [dom]


def _factor_probe(rho: LieHom, i: int) -> LieHom:
    dom = rho.domain
    if isinstance(dom, DirectSumAlgebra):
        g = dom.summands[i]
        d = diagonal_disk(g)
        images = tuple(rho.apply(dom.embed(i, X)) for X in d.images)
        return LieHom(d.domain, rho.codomain, images, f"{rho.label}∘incl{i}∘{d.label}")
    if _rank_one_tube(dom):
        return rho
    return compose(rho, diagonal_disk(dom))


@dataclass(frozen=True)
class FactorReport:
    index: int
    dc: Fraction
    lam: Fraction
    rank: int
    trace: Fraction
    trace_ratio: Fraction

    def to_json(self) -> dict:
        return {"dc": str(self.dc), "lambda": str(self.lam), "rank": self.rank,
                "trace": str(self.trace), "trace_ratio": str(self.trace_ratio)}


def _factor_reports(rho: LieHom) -> list[FactorReport]:
    _require_valid(rho)
    r = rho.codomain.rank
    out = []
    for i, g in enumerate(_factors(rho.domain)):
        probe = _factor_probe(rho, i)
        dd = disk_data(probe, validate=False)
        out.append(FactorReport(i, dd.dc, Fraction(r, g.rank) * dd.dc, g.rank, dd.trace, dd.trace_ratio))
    return out


def pullback_coefficients(rho: LieHom) -> list[Fraction]:
    """λ_i = (r / r_i) · disk_coefficient(ρ ∘ incl_i ∘ diagonal_disk(factor_i))."""
    return [f.lam for f in _factor_reports(rho)]


def _norm_numerator(reports: Sequence[FactorReport]) -> Fraction:
    return sum((abs(f.lam) * f.rank for f in reports), Fraction(0))


def is_tight(rho: LieHom) -> bool:
    return _norm_numerator(_factor_reports(rho)) == rho.codomain.rank


def is_positive(rho: LieHom) -> bool:
    return all(l >= 0 for l in pullback_coefficients(rho))


def is_H2(rho: LieHom) -> bool:
    """ρ(Z_1) = Z_2."""
    return rho.apply(rho.domain.Z) == rho.codomain.Z


def is_H1(rho: LieHom, reading: str = "intertwining") -> bool:
    """Holomorphy of the map on p.

    ``reading="intertwining"`` tests ρ([Z_1, X]) = [Z_2, ρ(X)] on the domain
    basis.  ``reading="literal"`` tests ad(ρ(Z_1)) = ad(Z_2) as operators on
    the codomain, which for a simple codomain is the same as (H2).
    """
    Z1, Z2 = rho.domain.Z, rho.codomain.Z
    if reading == "intertwining":
        return all(rho.apply(bracket(Z1, X)) == bracket(Z2, Y)
                   for X, Y in zip(rho.domain.basis, rho.images))
    if reading == "literal":
        D = rho.apply(Z1) - Z2
        return all(bracket(D, B).is_zero() for B in rho.codomain.basis)
    raise ValueError(f"unknown reading {reading!r}")


# ---------------------------------------------------------------------------
# hull

class HullNotTightWarning(UserWarning):
    pass


@dataclass(frozen=True)
class HullResult:
    basis: tuple
    dimension: int
    label: str  # "hermitian hull" or "generated subalgebra"


def bracket_closure(generators: Sequence[Mat], dim: int) -> list[Mat]:
    """Basis of the real Lie subalgebra generated by ``generators``."""
    span = RationalSpan(dim)
    for g in generators:
        span.add(g)
    done = 0
    # bracket each element with everything before it; new elements join the queue
    while done < len(span.basis):
        X = span.basis[done]
        for Y in list(span.basis[:done]):
            span.add(bracket(X, Y))
        done += 1
    return list(span.basis)


def hermitian_hull(rho: LieHom) -> HullResult:
    """Subalgebra generated by ρ(sl2) and Z of the codomain.

    On tube-type codomains this is the Hermitian hull; elsewhere it is only
    reported as the generated subalgebra.
    """
    cod = rho.codomain
    tube = cod.is_tube
    if not is_tight(rho):
        warnings.warn("hull of a non-tight map: the generated subalgebra need not be Hermitian",
                      HullNotTightWarning, stacklevel=2)
    basis = bracket_closure(list(rho.images) + [cod.Z], cod.ambient_dim)
    return HullResult(tuple(basis), len(basis), "hermitian hull" if tube else "generated subalgebra")


# ---------------------------------------------------------------------------
# sl2-isotypic decomposition

def weight_multiplicities(rho: LieHom) -> dict[int, int]:
    """Multiplicity of each eigenvalue k of ρ(H) on the ambient space."""
    if not _rank_one_tube(rho.domain):
        raise ValueError("isotypic decomposition needs an sl(2,R)-type domain")
    H = rho.apply(_domain_H(rho.domain))
    N = H.dim
    mult = {}
    total = 0
    Id = Mat.identity(N)
    for k in range(-(N - 1), N):
        m = N - (H - Id.scale(k)).rank()
        if m:
            mult[k] = m
            total += m
    if total != N:
        raise ValueError("ρ(H) has non-integral or repeated generalized eigenvalues; not a representation of sl(2)")
    if any(mult.get(-k) != m for k, m in mult.items()):
        raise ValueError("weight multiset is not symmetric; not a representation of sl(2)")
    return mult


def _domain_H(dom: HermitianLieAlgebra) -> Mat:
    el = sl2_elements()
    if dom.ambient_dim == 2 and dom.is_tube and dom.family.value == "sp":
        return el["H"]
    # su(1,1): transport H through the diagonal disk of the domain itself
    return diagonal_disk(dom).apply(el["H"])


def irreducible_dimensions(rho: LieHom) -> list[int]:
    """Dimensions of the irreducible constituents, largest first, with multiplicity."""
    mult = weight_multiplicities(rho)
    out = []
    top = max(mult)
    for k in range(top, -1, -1):
        c = mult.get(k, 0) - mult.get(k + 2, 0)
        if c < 0:
            raise ValueError("weight multiplicities are not unimodal; not a representation of sl(2)")
        out.extend([k + 1] * c)
    return out


def isotypic_decomposition(rho: LieHom) -> list[int]:
    """The numbers n_i of the even-dimensional constituents (of dimension 2 n_i)."""
    return [d // 2 for d in irreducible_dimensions(rho) if d % 2 == 0]


# ---------------------------------------------------------------------------

@dataclass
class TightnessReport:
    label: str
    factors: list[FactorReport]
    target_rank: int
    norm_numerator: Fraction
    is_tight: bool
    is_positive: bool
    is_H1: bool
    is_H2: bool
    hull_dim: Optional[int] = None
    hull_label: Optional[str] = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "factors": [f.to_json() for f in self.factors],
            "target_rank": self.target_rank,
            "norm_numerator": str(self.norm_numerator),
            "tight": self.is_tight,
            "positive": self.is_positive,
            "H1": self.is_H1,
            "H2": self.is_H2,
            "hull_dim": self.hull_dim,
        }
        if self.hull_label is not None:
            out["hull_label"] = self.hull_label
        out.update(self.extra)
        return out


def tightness_report(rho: LieHom, hull: bool = False, h1_reading: str = "intertwining") -> TightnessReport:
    reports = _factor_reports(rho)
    r = rho.codomain.rank
    num = _norm_numerator(reports)
    rep = TightnessReport(
        label=rho.label,
        factors=reports,
        target_rank=r,
        norm_numerator=num,
        is_tight=num == r,
        is_positive=all(f.lam >= 0 for f in reports),
        is_H1=is_H1(rho, h1_reading),
        is_H2=is_H2(rho),
    )
    if hull:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", HullNotTightWarning)
            h = hermitian_hull(rho)
        rep.hull_dim, rep.hull_label = h.dimension, h.label
    return rep
