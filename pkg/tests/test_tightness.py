import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tightlie.exact import ExactScalar, Mat
from tightlie.hom_catalog import (
    LieHom,
    compose,
    corner_su,
    diagonal_disk,
    direct_sum_hom,
    identity,
    irreducible_sl2_to_sp,
    sl2,
    sp4_embeddings,
    sym2_su12_to_su24,
)
from tightlie.lie_core import bracket, make_sp, make_su
from tightlie.tightness import (
    HullNotTightWarning,
    bracket_closure,
    check_cartan,
    check_homomorphism,
    disk_coefficient,
    disk_data,
    hermitian_hull,
    irreducible_dimensions,
    is_H1,
    is_H2,
    is_positive,
    is_tight,
    isotypic_decomposition,
    pullback_coefficients,
    tightness_report,
    weight_multiplicities,
)
from tightlie.exact import RationalSpan

F = Fraction


def _automorphism(M: Mat) -> LieHom:
    """X -> M X M^-1 on sl(2,R)."""
    Mi = M.inverse()
    g = sl2()
    return LieHom(g, g, tuple(M @ X @ Mi for X in g.basis), "conj")


def _rotation(t: Fraction) -> Mat:
    c, s = (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)
    return Mat([[c, -s], [s, c]])


FLIP = Mat.diag([1, -1])

DISKS = {
    "diag:sp(2)": diagonal_disk(make_sp(1)),
    "diag:sp(4)": diagonal_disk(make_sp(2)),
    "diag:su(1,2)": diagonal_disk(make_su(1, 2)),
    "diag:su(2,2)": diagonal_disk(make_su(2, 2)),
    "irrep:2": irreducible_sl2_to_sp(2),
    "irrep:3": irreducible_sl2_to_sp(3),
    "iA": sp4_embeddings()["iA", "A"],
    "iA@B": sp4_embeddings()["iA", "B"],
    "sum": direct_sum_hom([irreducible_sl2_to_sp(2), irreducible_sl2_to_sp(1)]),
    "sym2-disk": compose(compose(sym2_su12_to_su24(), corner_su(1, 1, 1, 2)), diagonal_disk(make_su(1, 1))),
}

CATALOG = dict(DISKS)
CATALOG.update({
    "sym2": sym2_su12_to_su24(),
    "corner:1,1,1,2": corner_su(1, 1, 1, 2),
    "corner:1,1,2,2": corner_su(1, 1, 2, 2),
    "id:sp(4)": identity(make_sp(2)),
    "id:su(1,2)": identity(make_su(1, 2)),
    "sum-domains": direct_sum_hom([identity(make_sp(1)), identity(make_sp(2))]),
})

# maps known to be tight, from the catalog constructions
TIGHT = {"diag:sp(2)", "diag:sp(4)", "diag:su(1,2)", "diag:su(2,2)", "irrep:2", "irrep:3", "iA", "sum",
         "corner:1,1,1,2", "id:sp(4)", "id:su(1,2)", "sum-domains"}


class TestHomomorphismCheck:
    def test_identity(self):
        assert check_homomorphism(identity(make_sp(2)))

    def test_irrep3(self):
        assert check_homomorphism(irreducible_sl2_to_sp(3))

    def test_perturbed_image_fails_with_witness(self):
        rho = irreducible_sl2_to_sp(2)
        images = list(rho.images)
        images[0] = images[0] + Mat.unit(4, 0, 3)
        bad = LieHom(rho.domain, rho.codomain, tuple(images), "bad")
        w = check_homomorphism(bad)
        assert not w
        assert w.pair is not None and 0 in w.pair
        assert not w.residual.is_zero()

    def test_cartan_fails_after_noncompact_conjugation(self):
        g = sl2()
        rho = compose(identity(g), _automorphism(Mat.diag([2, F(1, 2)])))
        assert check_homomorphism(rho)
        assert not check_cartan(rho)

    def test_compose_keeps_cartan(self):
        rho = compose(sym2_su12_to_su24(), corner_su(1, 1, 1, 2))
        assert check_cartan(rho)


class TestDiskCoefficient:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_irrep_is_one(self, n):
        assert disk_coefficient(irreducible_sl2_to_sp(n)) == 1

    def test_sp4_pair(self):
        e = sp4_embeddings()
        assert disk_coefficient(e["iA", "A"]) == 1
        assert disk_coefficient(e["iA", "B"]) == 0
        assert disk_coefficient(e["iB", "B"]) == 1
        assert disk_coefficient(e["iB", "A"]) == 0

    def test_sym2_exact_value(self):
        # the exact oracle: trace -1/2 against a diagonal-disk reference of -1
        dd = disk_data(DISKS["sym2-disk"])
        assert dd.dc == F(1, 2)
        assert dd.trace == F(-1, 2)
        assert dd.trace_ratio == F(3, 8)

    def test_needs_rank_one_domain(self):
        with pytest.raises(ValueError):
            disk_coefficient(identity(make_sp(2)))

    @pytest.mark.parametrize("name", sorted(DISKS))
    def test_in_unit_interval(self, name):
        assert -1 <= disk_coefficient(DISKS[name]) <= 1

    @settings(max_examples=15)
    @given(st.sampled_from(sorted(DISKS)), st.fractions(-4, 4, max_denominator=6))
    def test_invariant_under_rotations(self, name, t):
        rho = DISKS[name]
        rot = compose(rho, _automorphism(_rotation(t)))
        assert disk_coefficient(rot) == disk_coefficient(rho)

    @pytest.mark.parametrize("name", sorted(DISKS))
    def test_negates_under_orientation_reversal(self, name):
        rho = DISKS[name]
        flipped = compose(rho, _automorphism(FLIP))
        assert check_cartan(flipped)
        assert disk_coefficient(flipped) == -disk_coefficient(rho)


class TestPullback:
    def test_identity_sp4(self):
        assert pullback_coefficients(identity(make_sp(2))) == [1]

    @pytest.mark.parametrize("n", range(1, 6))
    def test_irrep(self, n):
        assert pullback_coefficients(irreducible_sl2_to_sp(n)) == [n]

    def test_sym2(self):
        assert pullback_coefficients(sym2_su12_to_su24()) == [1]

    def test_direct_sum_domain(self):
        rho = CATALOG["sum-domains"]
        rep = tightness_report(rho)
        assert [f.dc for f in rep.factors] == [F(1, 3), F(2, 3)]
        assert pullback_coefficients(rho) == [1, 1]
        assert rep.norm_numerator == 3 == rep.target_rank

    def test_kernel_factor_is_zero_and_not_a_veto(self):
        g1, g2 = make_sp(1), make_sp(1)
        from tightlie.hom_catalog import DirectSumAlgebra

        dom = DirectSumAlgebra([g1, g2])
        # project onto the first summand only
        images = tuple(dom.block(0, X) for X in dom.basis)
        rho = LieHom(dom, g1, images, "proj")
        assert pullback_coefficients(rho) == [1, 0]
        assert is_positive(rho) and is_tight(rho)

    def test_composition_law_chain(self):
        # λ(f ∘ g) = λ(f) λ(g) through a rank-one middle algebra
        for f, g in [
            (corner_su(1, 1, 2, 2), diagonal_disk(make_su(1, 1))),
            (sym2_su12_to_su24(), compose(corner_su(1, 1, 1, 2), diagonal_disk(make_su(1, 1)))),
            (corner_su(1, 1, 1, 2), diagonal_disk(make_su(1, 1))),
        ]:
            (lf,), (lg,) = pullback_coefficients(f), pullback_coefficients(g)
            assert pullback_coefficients(compose(f, g)) == [lf * lg]

    def test_composition_law_polydisk(self):
        # diagonal of a polydisk: block sums add their coefficients
        parts = [irreducible_sl2_to_sp(2), irreducible_sl2_to_sp(1)]
        (total,) = pullback_coefficients(direct_sum_hom(parts))
        assert total == sum(pullback_coefficients(p)[0] for p in parts) == 3
        d = direct_sum_hom([diagonal_disk(make_sp(1))] * 3)
        # same map as the diagonal disk of sp(6), read in the block-diagonal form
        assert pullback_coefficients(d) == pullback_coefficients(diagonal_disk(make_sp(3))) == [3]
        assert is_H2(d)


class TestTightness:
    @pytest.mark.parametrize("name", sorted(CATALOG))
    def test_rank_inequality_and_declared_tightness(self, name):
        rep = tightness_report(CATALOG[name])
        assert rep.norm_numerator <= rep.target_rank
        assert rep.is_tight == (rep.norm_numerator == rep.target_rank) == (name in TIGHT)

    @pytest.mark.parametrize("name", sorted(CATALOG))
    def test_report_invariants(self, name):
        rep = tightness_report(CATALOG[name])
        for f in rep.factors:
            assert f.lam == F(rep.target_rank, f.rank) * f.dc
        assert rep.norm_numerator == sum(abs(f.lam) * f.rank for f in rep.factors)
        assert rep.is_positive == all(f.lam >= 0 for f in rep.factors)

    def test_diagonal_disk_sp4(self):
        rho = diagonal_disk(make_sp(2))
        assert is_tight(rho) and is_positive(rho)

    def test_sym2_not_tight(self):
        assert not is_tight(sym2_su12_to_su24())

    def test_compose_tight(self):
        iA = sp4_embeddings()["iA", "A"]
        rho = compose(iA, compose(identity(sl2()), _automorphism(_rotation(F(1, 3)))))
        assert is_tight(rho) and is_positive(rho)
        rho2 = compose(corner_su(1, 1, 2, 2), diagonal_disk(make_su(1, 1)))
        assert not is_tight(rho2)

    def test_flags(self):
        assert is_H2(diagonal_disk(make_sp(2)))
        assert is_H2(diagonal_disk(make_sp(3)))
        r = irreducible_sl2_to_sp(2)
        assert not is_H2(r) and not is_H1(r)
        assert not is_H2(corner_su(1, 1, 1, 2))
        assert not is_H2(corner_su(2, 2, 2, 3))
        assert is_H1(corner_su(1, 1, 1, 2))

    def test_h1_readings(self):
        c = corner_su(1, 1, 1, 2)
        assert is_H1(c, "intertwining")
        assert not is_H1(c, "literal")
        d = diagonal_disk(make_sp(2))
        assert is_H1(d, "literal") and is_H1(d, "intertwining")
        with pytest.raises(ValueError):
            is_H1(d, "other")

    def test_h2_implies_h1(self):
        for name, rho in CATALOG.items():
            if is_H2(rho):
                assert is_H1(rho), name

    def test_json_shape(self):
        js = tightness_report(sym2_su12_to_su24(), hull=False).to_json()
        assert set(js) >= {"factors", "target_rank", "tight", "positive", "H1", "H2", "hull_dim"}
        assert js["factors"][0]["dc"] == "1/2"
        assert js["factors"][0]["lambda"] == "1"
        assert js["hull_dim"] is None


class TestHull:
    def test_irrep_sp4(self):
        assert hermitian_hull(irreducible_sl2_to_sp(2)).dimension == 10

    def test_diagonal_disk_sp4(self):
        assert hermitian_hull(diagonal_disk(make_sp(2))).dimension == 3

    def test_irrep_sum(self):
        h = hermitian_hull(direct_sum_hom([irreducible_sl2_to_sp(2), irreducible_sl2_to_sp(1)]))
        assert h.dimension == 13 and h.label == "hermitian hull"

    def test_non_tube_label(self):
        h = hermitian_hull(compose(corner_su(1, 1, 1, 2), diagonal_disk(make_su(1, 1))))
        assert h.label == "generated subalgebra"

    def test_non_tight_warns(self):
        with pytest.warns(HullNotTightWarning):
            hermitian_hull(DISKS["iA@B"])

    @pytest.mark.parametrize("name", ["irrep:2", "irrep:3", "diag:sp(4)", "sum", "iA", "diag:su(2,2)"])
    def test_closed_and_contains_generators(self, name):
        rho = DISKS[name]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", HullNotTightWarning)
            h = hermitian_hull(rho)
        span = RationalSpan(rho.codomain.ambient_dim, h.basis)
        assert len(span) == h.dimension
        for X in list(rho.images) + [rho.codomain.Z]:
            assert span.contains(X)
        for a in h.basis:
            for b in h.basis:
                assert span.contains(bracket(a, b))

    def test_bracket_closure_of_sl2_triple(self):
        g = sl2()
        assert len(bracket_closure([g.basis[0]], 2)) == 1
        from tightlie.lie_core import sl2_elements

        s = sl2_elements()
        assert len(bracket_closure([s["E"], s["F"]], 2)) == 3


class TestIsotypic:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_irrep(self, n):
        assert isotypic_decomposition(irreducible_sl2_to_sp(n)) == [n]

    def test_diagonal_disk(self):
        assert isotypic_decomposition(diagonal_disk(make_sp(2))) == [1, 1]

    def test_sum(self):
        assert isotypic_decomposition(DISKS["sum"]) == [2, 1]

    def test_sym2_weights_include_odd_constituents(self):
        rho = DISKS["sym2-disk"]
        assert irreducible_dimensions(rho) == [3, 2, 1]
        assert isotypic_decomposition(rho) == [1]
        assert sum(weight_multiplicities(rho).values()) == 6

    def test_rejects_non_representation(self):
        g = sl2()
        # halving every image gives rho(H) the weights 1/2, -1/2
        bad = LieHom(g, make_sp(1), tuple(X.scale(F(1, 2)) for X in g.basis), "half")
        with pytest.raises(ValueError):
            weight_multiplicities(bad)

    @pytest.mark.parametrize("name", ["irrep:2", "irrep:3", "sum"])
    def test_hull_dimension_matches_blocks(self, name):
        # multiplicity-free tight maps: the hull is the product of sp(2 n_i)
        rho = DISKS[name]
        ns = isotypic_decomposition(rho)
        assert len(set(ns)) == len(ns)
        assert hermitian_hull(rho).dimension == sum(n * (2 * n + 1) for n in ns)

    def test_hull_dimension_with_multiplicity(self):
        # repeated constituents share one sp(2) block in the hull
        rho = diagonal_disk(make_sp(2))
        assert isotypic_decomposition(rho) == [1, 1]
        assert hermitian_hull(rho).dimension == 3
