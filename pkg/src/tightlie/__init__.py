"""Exact tightness certificates for homomorphisms of Hermitian Lie algebras,
with numerical checks of the Bergmann cocycle on bounded symmetric domains."""

from .exact import ExactScalar, Mat, RationalSpan
from .lie_core import (
    CartanComponent,
    Family,
    HermitianLieAlgebra,
    NotInSubalgebra,
    bracket,
    cartan_component,
    center_of_k,
    lambda_Z,
    make_sp,
    make_su,
    parse_algebra,
    trace_pairing,
)
from .hom_catalog import (
    DirectSumAlgebra,
    LieHom,
    compose,
    corner_su,
    diagonal_disk,
    direct_sum_hom,
    from_images,
    identity,
    irreducible_sl2_to_sp,
    sp4_embeddings,
    sym2_su12_to_su24,
)
from .tightness import (
    TightnessReport,
    check_cartan,
    check_homomorphism,
    disk_coefficient,
    hermitian_hull,
    is_positive,
    is_tight,
    isotypic_decomposition,
    pullback_coefficients,
    tightness_report,
)

__version__ = "0.1.0"
