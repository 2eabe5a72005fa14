"""2x2 matrix operations, the exact solver, and the trace identities they
must satisfy (cyclic invariance, conjugation invariance, Cayley-Hamilton)."""

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from strassen7.fields import RATIONAL, FieldMismatchError, PrimeField
from strassen7.linalg import (
    ColVec2,
    Mat2,
    RowVec2,
    SingularMatrixError,
    SingularSystemError,
    SquareSystem,
    independent,
    outer,
    solve,
    vectors_rank,
)

FIELDS = [RATIONAL, PrimeField(2), PrimeField(3), PrimeField(5), PrimeField(7)]

D_ENTRIES = [0, -1, 1, -1]
NILPOTENT = [0, 1, 0, 0]

four_ints = st.tuples(*[st.integers(-9, 9)] * 4)


def mat(field, entries):
    return Mat2(field, entries)


class TestMatrixOps:
    def test_product_of_rotation_with_itself(self):
        d = mat(RATIONAL, D_ENTRIES)
        assert d @ d == mat(RATIONAL, [-1, 1, -1, 0])

    def test_identity_is_neutral(self):
        d = mat(RATIONAL, D_ENTRIES)
        assert d @ Mat2.identity(RATIONAL) == d

    def test_nilpotent_squares_to_zero(self):
        m = mat(RATIONAL, NILPOTENT)
        assert m @ m == Mat2.zero(RATIONAL)

    def test_add_sub_scale(self):
        a = mat(RATIONAL, [1, 2, 3, 4])
        b = mat(RATIONAL, [5, 6, 7, 8])
        assert a + b == mat(RATIONAL, [6, 8, 10, 12])
        assert b - a == mat(RATIONAL, [4, 4, 4, 4])
        assert a.scale(2) == mat(RATIONAL, [2, 4, 6, 8])
        assert -a == mat(RATIONAL, [-1, -2, -3, -4])

    def test_mixed_fields_rejected(self):
        with pytest.raises(FieldMismatchError):
            mat(RATIONAL, [1, 0, 0, 1]) @ mat(PrimeField(3), [1, 0, 0, 1])


class TestTraceDet:
    def test_rotation_trace_and_det(self):
        d = mat(RATIONAL, D_ENTRIES)
        assert d.trace() == RATIONAL(-1)
        assert d.det() == RATIONAL(1)

    def test_identity(self):
        i = Mat2.identity(RATIONAL)
        assert i.trace() == RATIONAL(2)
        assert i.det() == RATIONAL(1)

    def test_nilpotent_is_traceless_singular(self):
        m = mat(RATIONAL, NILPOTENT)
        assert m.trace() == RATIONAL(0)
        assert m.det() == RATIONAL(0)


class TestInverse:
    def test_rotation_inverse_is_its_square(self):
        d = mat(RATIONAL, D_ENTRIES)
        assert d.inverse() == mat(RATIONAL, [-1, 1, -1, 0])
        assert d.inverse() == d @ d
        assert d @ d @ d == Mat2.identity(RATIONAL)

    def test_identity_inverse(self):
        assert Mat2.identity(RATIONAL).inverse() == Mat2.identity(RATIONAL)

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrixError):
            mat(RATIONAL, NILPOTENT).inverse()


class TestConjugate:
    def test_nilpotent_by_rotation(self):
        d = mat(RATIONAL, D_ENTRIES)
        m = mat(RATIONAL, NILPOTENT)
        assert m.conjugate_by(d) == mat(RATIONAL, [-1, 1, -1, 1])
        assert m.conjugate_by(d.inverse()) == mat(RATIONAL, [0, 0, -1, 0])

    def test_by_identity_is_noop(self):
        a = mat(RATIONAL, [3, 1, 4, 1])
        assert a.conjugate_by(Mat2.identity(RATIONAL)) == a

    def test_by_singular_rejected(self):
        with pytest.raises(SingularMatrixError):
            mat(RATIONAL, [1, 0, 0, 1]).conjugate_by(mat(RATIONAL, NILPOTENT))


class TestSolve:
    def test_identity_system(self):
        system = SquareSystem.build(RATIONAL, [[1, 0], [0, 1]], [3, 4])
        assert solve(system) == [RATIONAL(3), RATIONAL(4)]

    def test_perp_system_for_default_rotation(self):
        # row (a, b) with (a,b).(1,0) = 0 and (a,b).D(1,0) = 1, D(1,0) = (0,1)
        system = SquareSystem.build(RATIONAL, [[1, 0], [0, 1]], [0, 1])
        assert solve(system) == [RATIONAL(0), RATIONAL(1)]

    def test_singular_system(self):
        system = SquareSystem.build(RATIONAL, [[0, 0], [0, 0]], [1, 0])
        with pytest.raises(SingularSystemError):
            solve(system)

    def test_4x4(self):
        rows = [[2, 0, 0, 0], [0, 1, 1, 0], [0, 0, 3, 0], [1, 0, 0, 1]]
        system = SquareSystem.build(RATIONAL, rows, [2, 5, 3, 2])
        x = solve(system)
        for row, want in zip(rows, [2, 5, 3, 2]):
            acc = RATIONAL(0)
            for coeff, val in zip(row, x):
                acc = acc + RATIONAL(coeff) * val
            assert acc == RATIONAL(want)


class TestVectors:
    def test_row_times_col(self):
        row = RowVec2(RATIONAL, [1, 2])
        col = ColVec2(RATIONAL, [3, 4])
        assert row @ col == RATIONAL(11)

    def test_row_times_matrix(self):
        row = RowVec2(RATIONAL, [1, 2])
        assert row @ mat(RATIONAL, [1, 2, 3, 4]) == RowVec2(RATIONAL, [7, 10])

    def test_matrix_times_col(self):
        col = ColVec2(RATIONAL, [1, 0])
        assert mat(RATIONAL, D_ENTRIES) @ col == ColVec2(RATIONAL, [0, 1])

    def test_outer_product(self):
        m = outer(ColVec2(RATIONAL, [1, 0]), RowVec2(RATIONAL, [0, 1]))
        assert m == mat(RATIONAL, NILPOTENT)

    def test_rank_helpers(self):
        f = RATIONAL
        e1, e2 = [f(1), f(0)], [f(0), f(1)]
        assert vectors_rank([e1, e2]) == 2
        assert vectors_rank([e1, e1]) == 1
        assert independent([mat(f, [1, 0, 0, 0]), mat(f, [0, 1, 0, 0])])
        assert not independent([mat(f, [1, 0, 0, 0]), mat(f, [2, 0, 0, 0])])


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.name)
class TestAlgebraicProperties:
    @given(a=four_ints, b=four_ints)
    def test_cyclic_trace_invariance(self, field, a, b):
        x, y = mat(field, a), mat(field, b)
        assert (x @ y).trace() == (y @ x).trace()

    @given(a=four_ints, p=four_ints)
    def test_conjugation_preserves_trace(self, field, a, p):
        x, pm = mat(field, a), mat(field, p)
        assume(bool(pm.det()))
        conj = x.conjugate_by(pm)
        assert conj.trace() == x.trace()

    @given(a=four_ints)
    def test_cayley_hamilton(self, field, a):
        x = mat(field, a)
        ident = Mat2.identity(field)
        assert x @ x - x.scale(x.trace()) + ident.scale(x.det()) == Mat2.zero(field)

    @settings(max_examples=50)
    @given(rows=st.tuples(four_ints, four_ints, four_ints, four_ints),
           rhs=four_ints)
    def test_solve_reproduces_rhs(self, field, rows, rhs):
        matrix = [list(r) for r in rows]
        system = SquareSystem.build(field, matrix, list(rhs))
        try:
            x = solve(system)
        except SingularSystemError:
            assume(False)
        for row, want in zip(system.matrix, system.rhs):
            acc = field.zero()
            for coeff, val in zip(row, x):
                acc = acc + coeff * val
            assert acc == want
