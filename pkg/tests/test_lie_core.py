from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from tightlie.exact import ExactScalar, I, Mat, RationalSpan
from tightlie.lie_core import (
    CartanComponent,
    NotInSubalgebra,
    bracket,
    cartan_component,
    center_of_k,
    contains,
    lambda_Z,
    make_sp,
    make_su,
    parse_algebra,
    rank,
    sl2_elements,
    standard_symplectic,
    trace_pairing,
)

from strategies import coefficient_vectors, combo, matrices

F = Fraction

SMALL = [make_sp(1), make_sp(2), make_su(1, 1), make_su(1, 2), make_su(2, 2)]
IDS = [g.descriptor for g in SMALL]


@pytest.mark.parametrize("n,dim", [(1, 3), (2, 10), (3, 21)])
def test_sp_dimensions(n, dim):
    g = make_sp(n)
    assert g.real_dim == dim == len(g.basis)
    assert rank(g) == n and g.is_tube


@pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (2, 2), (2, 4)])
def test_su_dimensions(p, q):
    g = make_su(p, q)
    assert g.real_dim == (p + q) ** 2 - 1
    assert g.rank == min(p, q)
    assert g.is_tube == (p == q)


def test_sp_dimension_matches_nullspace_count():
    # count solutions of XᵀΩ + ΩX = 0 directly over the 16 real matrix units
    g = make_sp(2)
    units = [Mat.unit(4, i, j) for i in range(4) for j in range(4)]
    images = RationalSpan(4, [g.relation_residual(U) for U in units])
    assert 16 - len(images) == 10


def test_sp4_Z():
    I2 = Mat.identity(2)
    expected = Mat.from_blocks([[None, -I2], [I2, None]], [2, 2]).scale(F(1, 2))
    assert make_sp(2).Z == expected


def test_su12_Z():
    assert make_su(1, 2).Z == Mat.diag([ExactScalar(0, F(2, 3)), ExactScalar(0, F(-1, 3)), ExactScalar(0, F(-1, 3))])


@pytest.mark.parametrize("g,value", [(make_sp(1), F(-1, 2)), (make_su(1, 2), F(-2, 3)), (make_su(2, 4), F(-4, 3))])
def test_trace_pairing_of_Z(g, value):
    assert trace_pairing(g.Z, g.Z) == value


def test_sl2_relations():
    s = sl2_elements()
    assert bracket(s["E"], s["F"]) == s["H"]
    assert bracket(s["H"], s["E"]) == s["E"].scale(2)
    assert bracket(s["H"], s["H"]).is_zero()


def test_contains_examples():
    sp2 = make_sp(1)
    assert contains(sp2, sp2.Z)
    assert not contains(sp2, Mat.identity(2))
    su12 = make_su(1, 2)
    assert contains(su12, Mat.diag([I, I, ExactScalar(0, -2)]))
    assert not contains(su12, Mat.diag([I, I, I]))


def test_lambda_Z_examples():
    for g in SMALL:
        assert lambda_Z(g, g.Z) == 1
    su12 = make_su(1, 2)
    # semisimple part of k: the su(2) acting on the negative block
    X = Mat([[0, 0, 0], [0, 0, 1], [0, -1, 0]])
    assert lambda_Z(su12, X) == 0


def test_lambda_Z_rejects_p_and_outside():
    g = make_sp(1)
    s = sl2_elements()
    with pytest.raises(NotInSubalgebra, match="p-component"):
        lambda_Z(g, s["H"])
    with pytest.raises(NotInSubalgebra, match="entry"):
        lambda_Z(g, Mat.identity(2))


def test_cartan_component():
    g = make_sp(1)
    s = sl2_elements()
    assert cartan_component(g, g.Z) is CartanComponent.K
    assert cartan_component(g, s["H"]) is CartanComponent.P
    assert cartan_component(g, s["E"]) is CartanComponent.MIXED


@pytest.mark.parametrize("g", SMALL, ids=IDS)
def test_center_of_k_is_RZ(g):
    c = center_of_k(g)
    assert len(c) == 1
    assert RationalSpan(g.ambient_dim, c).contains(g.Z)


def test_parse_algebra():
    assert parse_algebra("sp(4,R)").descriptor == parse_algebra("sp(4)").descriptor
    assert parse_algebra("sl(2,R)").real_dim == 3
    assert parse_algebra("su(2,4)").rank == 2
    for bad in ("sp(3)", "so(2,3)", "su(1)"):
        with pytest.raises(ValueError):
            parse_algebra(bad)


def test_rejects_bad_forms():
    with pytest.raises(ValueError, match="skew"):
        make_sp(1, Mat([[0, 1], [1, 0]]))
    with pytest.raises(ValueError, match="singular"):
        make_sp(1, Mat([[0, 0], [0, 0]]))
    with pytest.raises(ValueError, match="signature"):
        make_su(1, 2, Mat.diag([1, 1, -1]))
    with pytest.raises(ValueError, match="Hermitian"):
        make_su(1, 1, Mat([[1, 1], [0, -1]]))


# -- structural invariants ---------------------------------------------------

def _symplectic_congruence(P: Mat):
    return P.T @ standard_symplectic(2) @ P


def _hermitian_congruence(P: Mat):
    return P.H @ Mat.diag([1, -1, -1]) @ P


NONSTANDARD = [
    make_sp(2, _symplectic_congruence(Mat([[1, 2, 0, 0], [0, 1, 0, 3], [1, 0, 1, 0], [0, 0, 1, 1]]))),
    make_su(1, 2, _hermitian_congruence(Mat([[1, I, 0], [0, 1, 1], [1, 0, 1]]))),
]
ALL = SMALL + NONSTANDARD
ALL_IDS = IDS + ["sp4-twisted", "su12-twisted"]


@pytest.mark.parametrize("g", ALL, ids=ALL_IDS)
def test_basis_satisfies_relation(g):
    for X in g.basis:
        assert g.relation_residual(X).is_zero()
        assert g.contains(X)
    assert len(g.basis) == g.real_dim
    assert len(RationalSpan(g.ambient_dim, g.basis)) == g.real_dim


@pytest.mark.parametrize("g", ALL, ids=ALL_IDS)
def test_Z_central_and_complex_structure(g):
    for i in g.k_basis:
        assert bracket(g.Z, g.basis[i]).is_zero()
    for i in g.p_basis:
        Y = g.basis[i]
        assert bracket(g.Z, bracket(g.Z, Y)) == -Y


@pytest.mark.parametrize("g", ALL, ids=ALL_IDS)
def test_theta_is_involutive_automorphism(g):
    for X in g.basis[:6]:
        assert g.theta(g.theta(X)) == X
        for Y in g.basis[:6]:
            assert g.theta(bracket(X, Y)) == bracket(g.theta(X), g.theta(Y))


@pytest.mark.parametrize("g", SMALL[:4], ids=IDS[:4])
def test_bracket_closure(g):
    span = g.span
    for a in g.basis:
        for b in g.basis:
            assert span.contains(bracket(a, b))


@pytest.mark.parametrize("g", ALL, ids=ALL_IDS)
def test_diagonal_embedding_orientation(g):
    # the diagonal disk determines the sign of Z
    from tightlie.hom_catalog import diagonal_disk, sl2
    assert lambda_Z(g, diagonal_disk(g).apply(sl2().Z)) > 0


@settings(max_examples=25)
@given(st.sampled_from(range(len(ALL))), st.data())
def test_trace_pairing_negative_definite_on_k(idx, data):
    g = ALL[idx]
    ks = g.k_elements
    c = data.draw(coefficient_vectors(len(ks)))
    assume(any(c))
    X = combo(c, ks)
    assert trace_pairing(X, X) < 0


@settings(max_examples=25)
@given(st.sampled_from(range(len(ALL))), st.data())
def test_lambda_Z_linear(idx, data):
    g = ALL[idx]
    ks = g.k_elements
    a = data.draw(coefficient_vectors(len(ks)))
    b = data.draw(coefficient_vectors(len(ks)))
    r = data.draw(st.fractions(-5, 5, max_denominator=7))
    X, Y = combo(a, ks), combo(b, ks)
    assert lambda_Z(g, X + Y) == lambda_Z(g, X) + lambda_Z(g, Y)
    assert lambda_Z(g, X.scale(r)) == r * lambda_Z(g, X)


@settings(max_examples=25)
@given(matrices(3), matrices(3), matrices(3))
def test_jacobi(X, Y, Z):
    total = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y))
    assert total.is_zero()


@given(matrices(3), matrices(3))
def test_trace_pairing_symmetric(X, Y):
    assert trace_pairing(X, Y) == trace_pairing(Y, X)
    assert bracket(X, X).is_zero()


@settings(max_examples=25)
@given(st.sampled_from(range(len(ALL))), st.data())
def test_cartan_split_of_random_element(idx, data):
    g = ALL[idx]
    X = combo(data.draw(coefficient_vectors(len(g.basis))), g.basis)
    K, P = g.k_part(X), g.p_part(X)
    assert K + P == X
    assert g.in_k(K) and g.in_p(P)


def test_anisotropic_form_has_no_rational_disk():
    # diag(1, -3) is anisotropic over Q(i): 3 is not a sum of two squares
    from tightlie.hom_catalog import diagonal_disk
    g = make_su(1, 1, Mat.diag([1, -3]))
    assert g.real_dim == 3
    with pytest.raises(ValueError, match="norm"):
        diagonal_disk(g)
