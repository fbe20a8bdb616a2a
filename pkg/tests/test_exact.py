from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from tightlie.exact import ExactScalar, I, Mat, RationalSpan, linear_combination, nullspace

from strategies import matrices, nonzero_rationals, rationals, scalars

F = Fraction


class TestScalar:
    def test_parse_forms(self):
        assert ExactScalar.parse("3/4") == ExactScalar(F(3, 4))
        assert ExactScalar.parse("-2/3 i") == ExactScalar(0, F(-2, 3))
        assert ExactScalar.parse("1/2+1/3 i") == ExactScalar(F(1, 2), F(1, 3))
        assert ExactScalar.parse("1-i") == ExactScalar(1, -1)

    def test_canonical_text(self):
        assert str(ExactScalar(F(2, 6))) == "1/3"
        assert str(ExactScalar(0, F(-4, 6))) == "-2/3 i"
        assert str(ExactScalar(F(1, 2), F(-3, 9))) == "1/2-1/3 i"
        assert str(ExactScalar(F(5, -10))) == "-1/2"

    @pytest.mark.parametrize("bad", ["1.5", "x", "1/0i1", "", "1//2"])
    def test_malformed(self, bad):
        with pytest.raises((ValueError, ZeroDivisionError)):
            ExactScalar.parse(bad)

    def test_rejects_floats(self):
        with pytest.raises(TypeError):
            ExactScalar(0.5)

    def test_i_squared(self):
        assert I * I == ExactScalar(-1)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ExactScalar(1) / ExactScalar(0)

    @given(scalars)
    def test_text_round_trip(self, a):
        assert ExactScalar.parse(str(a)) == a

    @given(scalars, scalars, scalars)
    def test_field_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert (a - b) + b == a

    @given(scalars)
    def test_inverse(self, a):
        assume(a)
        assert a * a.inverse() == ExactScalar(1)
        assert a * a.conjugate() == ExactScalar(a.norm())

    @given(scalars, scalars)
    def test_equality_is_decidable_and_hash_consistent(self, a, b):
        assert (a == b) == (a.re == b.re and a.im == b.im)
        if a == b:
            assert hash(a) == hash(b)


class TestMat:
    def test_identity_and_products(self):
        A = Mat([[1, 2], [3, 4]])
        assert A @ Mat.identity(2) == A
        assert A.det() == ExactScalar(-2)
        assert A @ A.inverse() == Mat.identity(2)

    def test_singular_inverse(self):
        with pytest.raises(ValueError):
            Mat([[1, 2], [2, 4]]).inverse()

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            Mat.identity(2) + Mat.identity(3)

    def test_blocks(self):
        A, B = Mat([[1]]), Mat([[0, 1], [-1, 0]])
        M = Mat.block_diag([A, B])
        assert M.dim == 3 and M[1, 2] == ExactScalar(1)
        G = Mat.from_blocks([[None, A], [A, None]], [1, 1])
        assert G == Mat([[0, 1], [1, 0]])

    def test_json_round_trip(self):
        M = Mat([[ExactScalar(F(1, 3), 2), 0], [ExactScalar(0, -1), F(-5, 7)]])
        assert Mat.from_json(M.to_json()) == M
        assert M.to_json()[0][0] == "1/3+2 i"

    def test_from_json_malformed(self):
        with pytest.raises(ValueError):
            Mat.from_json({"a": 1})

    def test_rank(self):
        assert Mat([[1, 0], [0, 0]]).rank() == 1
        assert Mat([[1, 2], [2, 4]]).rank() == 1
        assert Mat.identity(3).rank() == 3

    @given(matrices(3), matrices(3), matrices(3))
    def test_ring_laws(self, A, B, C):
        assert (A @ B) @ C == A @ (B @ C)
        assert A @ (B + C) == A @ B + A @ C
        assert (A @ B).H == B.H @ A.H
        assert (A @ B).T == B.T @ A.T

    @given(matrices(3), matrices(3))
    def test_trace_cyclic(self, A, B):
        assert (A @ B).trace() == (B @ A).trace()

    @given(matrices(3))
    def test_inverse_when_invertible(self, A):
        assume(A.det())
        assert A @ A.inverse() == Mat.identity(3)
        assert (A.inverse()).det() * A.det() == ExactScalar(1)

    @given(matrices(2), matrices(2))
    def test_det_multiplicative(self, A, B):
        assert (A @ B).det() == A.det() * B.det()

    @given(matrices(3, real=True), nonzero_rationals)
    def test_scale(self, A, c):
        assert A.scale(c).scale(1 / c) == A

    @given(matrices(2))
    def test_vec_round_trip(self, A):
        assert Mat.from_vec(2, A.vec()) == A


class TestSpan:
    def test_coordinates_and_membership(self):
        E, F_ = Mat.unit(2, 0, 1), Mat.unit(2, 1, 0)
        span = RationalSpan(2, [E, F_])
        assert len(span) == 2
        X = E.scale(3) + F_.scale(F(-1, 2))
        assert span.contains(X)
        assert span.coordinates(X) == [3, F(-1, 2)]
        assert not span.contains(Mat.identity(2))
        assert not span.residual(Mat.identity(2)).is_zero()
        with pytest.raises(ValueError):
            span.coordinates(Mat.identity(2))

    def test_add_reports_dependency(self):
        E = Mat.unit(2, 0, 1)
        span = RationalSpan(2)
        assert span.add(E) is None
        assert span.add(E.scale(2)) == [2]

    def test_nullspace(self):
        A, B = Mat.unit(2, 0, 0), Mat.unit(2, 1, 1)
        rels = nullspace([A, B, A + B.scale(2)], 2)
        assert len(rels) == 1
        assert linear_combination(rels[0], [A, B, A + B.scale(2)], 2).is_zero()

    @given(st.lists(matrices(2), min_size=1, max_size=6), st.lists(rationals, min_size=6, max_size=6))
    def test_span_contains_combinations(self, gens, coeffs):
        span = RationalSpan(2, gens)
        X = linear_combination(coeffs[: len(gens)], gens, 2)
        assert span.contains(X)
        assert span.combine(span.coordinates(X)) == X
        assert len(span) <= 8

    @given(st.lists(matrices(2), min_size=1, max_size=10))
    def test_rank_nullity(self, gens):
        span = RationalSpan(2, gens)
        assert len(span) + len(nullspace(gens, 2)) == len(gens)
