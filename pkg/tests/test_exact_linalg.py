import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ortho_hecke.exact_linalg import (Field, Matrix, Subspace, gaussian_binomial, iter_subspaces, iter_vectors,
                                      kernel_basis, solve_rows)

small_ints = st.integers(-4, 4)


def int_matrix(m, n):
    return st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m)


def test_field_parse_roundtrip():
    assert Field.parse("q").characteristic == 0
    assert Field.parse("fp:7").spec == "fp:7"
    for bad in ("fp:4", "fp:x", "reals"):
        with pytest.raises(ValueError):
            Field.parse(bad)


def test_prime_field_inverse(F3):
    f = Field(7)
    for x in range(1, 7):
        assert x * f.inv(x) % 7 == 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


@settings(max_examples=60, deadline=None)
@given(int_matrix(4, 5))
def test_rank_matches_float_oracle(rows):
    m = Matrix.from_rows(Field(0), rows, 5)
    assert m.rank() == np.linalg.matrix_rank(np.array(rows, dtype=float))


@settings(max_examples=60, deadline=None)
@given(int_matrix(4, 4))
def test_det_matches_float_oracle(rows):
    d = Matrix.from_rows(Field(0), rows, 4).det()
    assert d == round(np.linalg.det(np.array(rows, dtype=float)))


@settings(max_examples=40, deadline=None)
@given(int_matrix(3, 5))
def test_kernel_is_annihilated(rows):
    fld = Field(0)
    m = Matrix.from_rows(fld, rows, 5)
    K = kernel_basis(m)
    assert (m @ K).is_zero()
    assert K.ncols + m.rank() == 5


@settings(max_examples=40, deadline=None)
@given(int_matrix(3, 3), int_matrix(3, 3))
def test_det_multiplicative_mod_p(a, b):
    f = Field(5)
    A, B = Matrix.from_rows(f, a, 3), Matrix.from_rows(f, b, 3)
    assert (A @ B).det() == A.det() * B.det() % 5


def test_matrix_json_roundtrip():
    fld = Field(0)
    m = Matrix.from_rows(fld, [[Fraction(1, 2), 0], [3, -1]], 2)
    obj = m.to_json()
    assert obj == {"field": "q", "rows": [["1/2", "0"], ["3", "-1"]]}
    assert Matrix.from_json(obj) == m
    assert Matrix.from_json({"field": "fp:3", "rows": [["4", "-1"]]}).rows == ((1, 2),)


@pytest.mark.parametrize("n,k,q", [(4, 2, 3), (5, 2, 3), (6, 3, 3), (3, 1, 5)])
def test_gaussian_binomial_counts_subspaces(n, k, q):
    assert sum(1 for _ in iter_subspaces(Field(q), n, k)) == gaussian_binomial(n, k, q)


def test_33880_three_dimensional_subspaces():
    assert gaussian_binomial(6, 3, 3) == 33880


def test_subspace_operations(F3):
    A = Subspace.span(F3, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    B = Subspace.span(F3, 4, [[0, 1, 0, 0], [0, 0, 1, 0]])
    assert (A + B).dim == 3
    assert A.intersect(B) == Subspace.span(F3, 4, [[0, 1, 0, 0]])
    assert A.annihilator().dim == 2
    assert A.contains([2, 1, 0, 0]) and not A.contains([0, 0, 1, 0])
    assert A.coords([2, 1, 0, 0]) == [2, 1]
    assert B.contains_space(A.intersect(B))


def test_subspace_dimension_formula_exhaustive(F3):
    lines = list(iter_subspaces(F3, 3, 1))
    planes = list(iter_subspaces(F3, 3, 2))
    for A, B in itertools.product(lines, planes):
        assert (A + B).dim + A.intersect(B).dim == A.dim + B.dim


def test_solve_rows():
    sol = solve_rows([[1, 1], [1, -1]], [3, 1], 2, 0)
    assert sol == [2, 1]
    assert solve_rows([[1, 1], [1, 1]], [1, 2], 2, 0) is None


def test_iter_vectors_count():
    assert len(list(iter_vectors(Field(3), 3))) == 27


def test_characteristic_two_rejected():
    with pytest.raises(ValueError):
        Field(2)


def test_rational_results_stay_exact():
    # plain int input must never turn into floats
    fld = Field(0)
    assert isinstance(fld.inv(3), Fraction) and fld.inv(3) == Fraction(1, 3)
    sol = solve_rows([[2, 1], [1, 3]], [1, 1], 2, 0)
    assert sol == [Fraction(2, 5), Fraction(1, 5)]
    assert all(isinstance(x, (int, Fraction)) and not isinstance(x, bool) for x in sol)
    S = Subspace.span(fld, 3, [[3, 1, 0], [0, 7, 2]])
    assert all(isinstance(x, (int, Fraction)) for row in S.rows for x in row)
    assert Matrix.from_rows(fld, [[2, 1], [1, 3]], 2).det() == 5


def test_no_floats_in_rank_six_lagrangians():
    from ortho_hecke import sampling
    from ortho_hecke.quad_space import extend_form, hyperbolic_space, is_lagrangian
    ef = extend_form(hyperbolic_space(6, Field(0)))
    for rng in sampling.trial_rngs(1, 5):
        L = sampling.lagrangian(ef, rng, 3)
        assert is_lagrangian(ef, L)
        assert not any(isinstance(x, float) for row in L.space.rows for x in row)
