from hypothesis import given, settings, strategies as st

import pytest

from k1wb.linalg import (GF, ZZ, DimensionError, Matrix, Solver, column_basis,
                         column_span_membership, det, hnf, inverse, is_unimodular,
                         kernel_basis, lll_reduce, rank, snf, solve_matrix, xgcd)

from oracles import determinantal_divisors, field_solutions, leibniz_det


def M(rows, ring=ZZ, cols=None):
    return Matrix.from_rows(ring, rows, cols)


def int_matrices(max_dim=4, bound=9):
    return st.integers(1, max_dim).flatmap(lambda r: st.integers(1, max_dim).flatmap(
        lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def square_int(max_dim=4, bound=9):
    return st.integers(1, max_dim).flatmap(lambda n: st.lists(
        st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=n, max_size=n))


def same_lattice(A: Matrix, B: Matrix) -> bool:
    return (all(column_span_membership(A, B.column(j)) for j in range(B.cols))
            and all(column_span_membership(B, A.column(j)) for j in range(A.cols)))


# -- rings and matrices --------------------------------------------------------

def test_ring_rejects_composite_modulus():
    with pytest.raises(ValueError):
        GF(6)


def test_field_entries_are_reduced():
    assert M([[7, -1]], GF(5)).entries == (2, 4)


def test_multiply_shape_mismatch():
    with pytest.raises(DimensionError):
        M([[1, 2]]) @ M([[1, 2]])


def test_ragged_rows_rejected():
    with pytest.raises(DimensionError):
        M([[1, 2], [3]])


def test_xgcd_bezout():
    for a in range(-12, 13):
        for b in range(-12, 13):
            x, y, g = xgcd(a, b)
            assert x * a + y * b == g >= 0


# -- Smith normal form -----------------------------------------------------------

def test_snf_example():
    dec = snf(M([[2, 4], [6, 8]]))
    assert dec.D == M([[2, 0], [0, 4]])
    assert abs(det(dec.D)) == abs(leibniz_det([[2, 4], [6, 8]])) == 8


def test_snf_diag_2_3():
    assert snf(M([[2, 0], [0, 3]])).divisors == (1, 6)


def test_snf_zero_and_empty():
    assert snf(M([[0, 0], [0, 0]])).divisors == ()
    assert snf(Matrix.zero(ZZ, 0, 3)).divisors == ()


@given(int_matrices())
@settings(max_examples=150, deadline=None)
def test_snf_matches_determinantal_divisors(rows):
    A = M(rows)
    dec = snf(A)
    assert dec.U @ A @ dec.V == dec.D
    assert is_unimodular(dec.U) and is_unimodular(dec.V)
    assert list(dec.divisors) == determinantal_divisors(rows, A.cols)


@given(int_matrices(), st.sampled_from([2, 3, 5, 7]))
@settings(max_examples=100, deadline=None)
def test_snf_over_field_rank(rows, p):
    A = M(rows, GF(p))
    dec = snf(A)
    assert dec.U @ A @ dec.V == dec.D
    assert all(x == 1 for x in dec.divisors)
    # rank over GF(p): number of integer divisors not divisible by p
    assert dec.rank == sum(1 for d in determinantal_divisors(rows, A.cols) if d % p)


# -- Hermite normal form ---------------------------------------------------------

def test_hnf_example():
    H, V = hnf(M([[4, 2]]))
    assert H == M([[2, 0]])
    assert M([[4, 2]]) @ V == H


def _is_column_hnf(H: Matrix) -> bool:
    last = -1
    for j in range(H.cols):
        col = H.column(j)
        nz = [i for i, v in enumerate(col) if v]
        if not nz:
            if any(H.column(k) != [0] * H.rows for k in range(j, H.cols)):
                return False
            return True
        r = nz[0]
        if r <= last or col[r] <= 0:
            return False
        if any(not 0 <= H[r, k] < col[r] for k in range(j)):
            return False
        last = r
    return True


@given(int_matrices())
@settings(max_examples=150, deadline=None)
def test_hnf_properties(rows):
    A = M(rows)
    H, V = hnf(A)
    assert A @ V == H and is_unimodular(V)
    assert _is_column_hnf(H)
    assert same_lattice(A, H)


@given(int_matrices(), square_int(bound=2))
@settings(max_examples=80, deadline=None)
def test_hnf_is_canonical(rows, urows):
    A = M(rows)
    n = A.cols
    U = M(urows)
    if U.rows != n or not is_unimodular(U):
        U = Matrix.identity(ZZ, n)
    assert hnf(A @ U)[0] == hnf(A)[0]


# -- kernels, ranks, solving ------------------------------------------------------

def test_kernel_example():
    K = kernel_basis(M([[1, 1]]))
    assert K.cols == 1 and K.column(0) in ([1, -1], [-1, 1])


@given(int_matrices())
@settings(max_examples=150, deadline=None)
def test_kernel_is_saturated_lattice(rows):
    A = M(rows)
    K = kernel_basis(A)
    assert (A @ K).is_zero()
    assert K.cols == A.cols - rank(A)
    # the kernel basis must be part of a unimodular basis (saturation):
    if K.cols:
        assert snf(K).divisors == (1,) * K.cols


def test_lll_keeps_lattice():
    basis = [[1, 0, 0, 1000], [0, 1, 0, 999], [0, 0, 1, 1001]]
    red = lll_reduce(basis)
    A = M(basis).T
    B = M(red).T
    assert same_lattice(A, B)
    assert max(abs(x) for v in red for x in v) < 1000


def test_lll_rejects_dependent_vectors():
    with pytest.raises(ValueError):
        lll_reduce([[1, 2], [2, 4]])


def test_field_solve_example():
    assert solve_matrix(M([[2]], GF(5)), M([[3]], GF(5))) == M([[4]], GF(5))


@given(st.lists(st.lists(st.integers(0, 2), min_size=2, max_size=2), min_size=1, max_size=3),
       st.lists(st.integers(0, 2), min_size=3, max_size=3))
@settings(max_examples=100, deadline=None)
def test_field_solve_matches_enumeration(rows, b):
    p = 3
    A = M(rows, GF(p))
    b = b[:A.rows]
    X = solve_matrix(A, M([[v] for v in b], GF(p)))
    sols = field_solutions(rows, b, p)
    if not sols:
        assert X is None
    else:
        assert tuple(X.column(0)) in sols


@given(square_int(), st.lists(st.integers(-9, 9), min_size=4, max_size=4))
@settings(max_examples=150, deadline=None)
def test_square_solver_agrees_with_echelon_route(rows, b):
    A = M(rows)
    B = M([[v] for v in b[:A.rows]])
    X = Solver(A).solve(B)
    # feasibility over Z: Ax = b solvable iff appending b keeps the lattice
    Y = solve_matrix(A, B)
    assert (X is None) == (Y is None)
    if X is not None:
        assert A @ X == B


def test_solve_row_mismatch():
    with pytest.raises(DimensionError):
        Solver(M([[1]])).solve(M([[1], [2]]))


def test_column_basis_spans_same():
    A = M([[2, 4, 6], [1, 2, 3]])
    C = column_basis(A)
    assert C.cols == 1 and same_lattice(A, C)


# -- determinants -------------------------------------------------------------------

def test_det_example():
    assert det(M([[0, -1], [1, 0]])) == 1


def test_det_empty():
    assert det(Matrix.zero(ZZ, 0, 0)) == 1


@given(square_int(max_dim=5))
@settings(max_examples=150, deadline=None)
def test_det_matches_leibniz(rows):
    assert det(M(rows)) == leibniz_det(rows)


@given(square_int(max_dim=4), st.sampled_from([2, 5, 7]))
@settings(max_examples=100, deadline=None)
def test_det_field_matches_leibniz(rows, p):
    assert det(M(rows, GF(p))) == leibniz_det(rows) % p


def test_inverse_of_unimodular():
    A = M([[2, 1], [1, 1]])
    assert inverse(A) @ A == Matrix.identity(ZZ, 2)
    with pytest.raises(ZeroDivisionError):
        inverse(M([[2, 0], [0, 1]]))
