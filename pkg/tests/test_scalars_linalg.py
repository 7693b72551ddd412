from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from liekoszul.errors import (EvenCharacteristic, NoUnit, NonCommutative,
                              NotPrime, DimensionMismatch)
from liekoszul.linalg import (ExactMatrix, quotient, rank, rank_nullspace,
                              restrict_scalars, solve, determinant)
from liekoszul.scalars import (QQ, CommAlgebra, PrimeField, make_domain,
                               parse_rational, truncated_polynomial)

G12_MATRIX = [
    [1, 1, 1, 0, 1, 0, 0, 0],
    [1, 0, 0, 1, 0, 1, 0, 0],
    [-1, 1, 1, 1, 0, 0, 0, 0],
    [0, 1, 0, -1, 0, 1, 0, 0],
    [0, 0, -1, 0, 1, 0, 0, 0],
    [0, -1, 0, 0, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 0, 0, 1],
]


# --- domains ---------------------------------------------------------------

def test_make_domain_strings():
    assert make_domain("Q") is QQ
    F3 = make_domain("F 3")
    assert isinstance(F3, PrimeField) and F3.p == 3
    A = make_domain("truncated Q 2")
    t = (0, 1)
    assert A.dim == 2 and A.is_zero(A.mul(t, t))
    assert make_domain("ring truncated F 5 3").base == PrimeField(5)


def test_prime_field_rejects_bad_characteristic():
    with pytest.raises(EvenCharacteristic):
        PrimeField(2)
    with pytest.raises(NotPrime):
        PrimeField(9)


def test_truncations():
    A1 = truncated_polynomial(QQ, 1)
    assert A1.dim == 1 and A1.mul((3,), (5,)) == (15,)
    A3 = truncated_polynomial(QQ, 3)
    t, t2 = (0, 1, 0), (0, 0, 1)
    assert A3.mul(t, t) == t2
    assert A3.is_zero(A3.mul(t, t2))


def test_comm_algebra_axioms_checked():
    with pytest.raises(NonCommutative):
        CommAlgebra(QQ, [[[1, 0], [0, 1]], [[0, 0], [0, 0]]], [1, 0])
    with pytest.raises(NoUnit):
        CommAlgebra(QQ, [[[0, 0], [0, 0]], [[0, 0], [0, 0]]], [1, 0])


def test_parse_rational():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational("7") == 7
    with pytest.raises(ValueError):
        parse_rational("1.5")


def test_prime_field_inverse_of_fraction():
    F = PrimeField(5)
    assert F.convert(Fraction(1, 2)) == 3
    assert F.format(4) == "-1"


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7, 11]), st.integers(), st.integers(), st.integers())
def test_prime_field_axioms(p, a, b, c):
    F = PrimeField(p)
    a, b, c = F.convert(a), F.convert(b), F.convert(c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    if not F.is_zero(a):
        assert F.mul(a, F.inv(a)) == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_truncated_ring_associative_commutative(a, b, c):
    A = truncated_polynomial(QQ, 3)
    a, b, c = A.convert(a), A.convert(b), A.convert(c)
    assert A.mul(a, b) == A.mul(b, a)
    assert A.mul(A.mul(a, b), c) == A.mul(a, A.mul(b, c))


# --- exact linear algebra ----------------------------------------------------

def test_rank_nullspace_trivial_cases():
    Z = ExactMatrix(QQ, 3, 3)
    r, ker = rank_nullspace(Z)
    assert r == 0 and len(ker) == 3
    r, ker = rank_nullspace(ExactMatrix.identity(QQ, 4))
    assert r == 4 and ker == []


def test_g12_matrix_kernel():
    M = ExactMatrix.from_rows(QQ, G12_MATRIX)
    v = [2, 4, -3, 1, -3, -3, 4, 3]
    assert all(x == 0 for x in M.apply(v))
    r, ker = rank_nullspace(M)
    assert r + len(ker) == 8
    for k in ker:
        assert all(x == 0 for x in M.apply(k))


def test_quotient_examples():
    Q = quotient(QQ, 2, [[1, 0]])
    assert Q.quotient_dim == 1
    assert Q.coordinates([1, 1]) == Q.coordinates([0, 1])
    Q = quotient(QQ, 2, [[1, 0], [1, 1]])
    assert Q.quotient_dim == 0 and Q.coordinates([5, 7]) == ()
    with pytest.raises(DimensionMismatch):
        quotient(QQ, 3, [[1, 0]])


def test_restrict_scalars():
    A = truncated_polynomial(QQ, 2)
    one, eps = A.one, (0, 1)
    I = restrict_scalars(A, [[one, A.zero], [A.zero, one]])
    assert I.entries == ExactMatrix.identity(QQ, 4).entries
    E = restrict_scalars(A, [[eps]])
    assert E.shape == (2, 2) and rank(E) == 1
    assert all(x == 0 for row in _square(E) for x in row)


def _square(M):
    n = M.rows
    return [[sum(M.entries[i][k] * M.entries[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def test_solve_and_determinant():
    M = ExactMatrix.from_rows(QQ, [[2, 1], [1, 1]])
    assert solve(M, [3, 2]) == [1, 1]
    assert determinant(QQ, [[2, 1], [1, 1]]) == 1
    assert solve(ExactMatrix.from_rows(QQ, [[1, 1], [1, 1]]), [0, 1]) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_nullity_property(m, n, data):
    rows = [[data.draw(st.integers(-4, 4)) for _ in range(n)] for _ in range(m)]
    for F in (QQ, PrimeField(5)):
        M = ExactMatrix.from_rows(F, rows)
        r, ker = rank_nullspace(M)
        assert r + len(ker) == n
        assert r == rank(M.transpose())
        for k in ker:
            assert all(F.is_zero(x) for x in M.apply(k))
