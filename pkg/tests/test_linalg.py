from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qhom.cyclotomic import CyclotomicInt, CyclotomicRational, qbasic
from qhom.linalg import Matrix, extend_basis, solve, span_rank

from strategies import cyc_ints, orders


def matrices(order, max_dim=4):
    return st.tuples(st.integers(0, max_dim), st.integers(0, max_dim)).flatmap(
        lambda shape: st.lists(
            st.lists(cyc_ints(order), min_size=shape[1], max_size=shape[1]),
            min_size=shape[0], max_size=shape[0],
        ).map(lambda rows, c=shape[1]: Matrix.from_rows(order, rows, ncols=c))
    )


def test_shapes_survive_empty_dimensions():
    a = Matrix.zeros(3, 0, 2)
    b = Matrix.zeros(3, 2, 0)
    assert (b @ a).shape == (2, 2)
    assert (a @ b).shape == (0, 0)
    assert a.transpose().shape == (2, 0)
    assert a.rank() == 0
    assert len(a.nullspace()) == 2


def test_from_rows_needs_ncols_without_rows():
    with pytest.raises(ValueError):
        Matrix.from_rows(3, [])


def test_shape_mismatch():
    with pytest.raises(ValueError):
        Matrix.identity(3, 2) @ Matrix.identity(3, 3)
    with pytest.raises(ValueError):
        Matrix.identity(3, 2) + Matrix.identity(3, 3)


def test_rank_of_known_matrices():
    one = CyclotomicInt.one(3)
    two = qbasic(3, 2)
    # second row is (1+q) times the first
    m = Matrix.from_rows(3, [[one, one], [two, two]])
    assert m.rank() == 1
    assert Matrix.identity(5, 3).rank() == 3
    # [3]_q = 0 at N = 3
    assert Matrix.from_rows(3, [[qbasic(3, 3)]]).rank() == 0


def test_rational_entries():
    m = Matrix.from_rows(3, [[Fraction(1, 2), 1], [1, 2]])
    assert m.rank() == 1


def test_solve_and_outside_span():
    e1 = (CyclotomicInt.one(3), CyclotomicInt.zero(3))
    e2 = (CyclotomicInt.zero(3), CyclotomicInt.one(3))
    q = CyclotomicInt.gen(3)
    b = (q, CyclotomicInt.one(3))
    assert solve(3, [e1, e2], b, 2) == (q, CyclotomicInt.one(3))
    assert solve(3, [e1], b, 2) is None
    assert solve(3, [], (CyclotomicInt.zero(3),), 1) == ()


def test_extend_basis_keeps_independent_candidates_in_order():
    one, zero = CyclotomicInt.one(5), CyclotomicInt.zero(5)
    e1, e2, e3 = (one, zero, zero), (zero, one, zero), (zero, zero, one)
    s = tuple(a + b for a, b in zip(e1, e2))
    assert extend_basis(5, [e1], [s, e2, e3, e3], 3) == [s, e3]
    assert span_rank(5, [e1, e2, s], 3) == 2


@given(st.data())
def test_rank_nullity(data):
    order = data.draw(orders)
    m = data.draw(matrices(order))
    null = m.nullspace()
    assert m.rank() + len(null) == m.ncols
    for v in null:
        assert all(x.is_zero() for x in m.apply(v))


@given(st.data())
def test_row_rank_equals_column_rank(data):
    order = data.draw(orders)
    m = data.draw(matrices(order))
    assert m.rank() == m.transpose().rank()


@given(st.data())
def test_matmul_associative(data):
    order = data.draw(st.sampled_from((3, 5)))
    a = data.draw(matrices(order, 3))
    b = Matrix.from_rows(order, [[data.draw(cyc_ints(order)) for _ in range(2)] for _ in range(a.ncols)], ncols=2)
    c = Matrix.from_rows(order, [[data.draw(cyc_ints(order))] for _ in range(2)], ncols=1)
    assert (a @ b) @ c == a @ (b @ c)


@given(st.data())
def test_solve_recovers_combination(data):
    order = data.draw(st.sampled_from((3, 5)))
    m = data.draw(matrices(order, 3))
    x = tuple(data.draw(cyc_ints(order)) for _ in range(m.ncols))
    b = m.apply(x)
    cols = extend_basis(order, [], m.columns(), m.nrows)
    y = solve(order, cols, b, m.nrows)
    assert y is not None
    recon = [CyclotomicRational.zero(order)] * m.nrows
    for coef, col in zip(y, cols):
        recon = [r + coef * c for r, c in zip(recon, col)]
    assert tuple(recon) == b
