from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ortho_hecke import sampling
from ortho_hecke.dual_module import Ambient, torsion_degree
from ortho_hecke.exact_linalg import Field, Matrix, Subspace
from ortho_hecke.quad_space import (brute_force_lagrangians, enumerate_isotropic, extend_form, hyperbolic_space,
                                    is_lagrangian, iter_eps_stable)
from ortho_hecke.strata import (FlagDatum, ModelPoint, SkewDatum, census, change_basis, desingularize,
                                dim_formulas, iter_model_points, lagrangian_from_skew, model_is_valid,
                                plain_census, project, skew_from_lagrangian, stratum_data, submodule_from_flag)

QF = Field(0)


@pytest.mark.parametrize("r,counts,brute", [(2, [1, 2], 3), (3, [1, 4], 5), (4, [1, 16, 24], None)])
def test_census_values(r, counts, brute):
    c = census(extend_form(hyperbolic_space(r, Field(3))))
    assert [s["count"] for s in c.strata] == counts
    assert [s["predicted"] for s in c.strata] == counts
    assert c.brute_force_total == brute
    if r == 4:
        assert c.families == [12, 12]


def test_census_csv():
    c = census(extend_form(hyperbolic_space(2, Field(3))))
    assert c.to_csv().splitlines() == ["i,count,predicted,component", "0,1,1,0", "1,2,2,1"]


def test_plain_census_matches_brute_force():
    amb = Ambient(3, Field(3))
    pc = plain_census(amb, 3)
    assert {i: row["count"] for i, row in pc.items()} == {0: 1, 1: 156}
    brute = {}
    for L in iter_eps_stable(amb, 3):
        i = L.projection().dim
        brute[i] = brute.get(i, 0) + 1
    assert brute == {0: 1, 1: 156}


def test_stratum_data_eps_v():
    amb = Ambient(3, QF)
    rep = stratum_data(amb.eps_v, extend_form(hyperbolic_space(3, QF)))
    assert (rep.i, rep.torsion_degree, rep.component) == (0, 3, 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(1, 5))
def test_flag_roundtrip_over_q(seed, r):
    rng = sampling.make_rng(seed)
    amb = Ambient(r, QF)
    n = int(rng.integers(0, 2 * r + 1))
    d = sampling.flag(amb, n, rng)
    L = submodule_from_flag(amb, d)
    rep = stratum_data(L)
    assert rep.i == d.F.dim and L.n == n
    assert rep.torsion_degree == n - 2 * rep.i == torsion_degree(L)
    assert submodule_from_flag(amb, rep.flag) == L
    assert project(desingularize(rep.i, rep.flag), amb) == L


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(2, 6))
def test_skew_roundtrip_over_q(seed, r):
    rng = sampling.make_rng(seed)
    ef = extend_form(hyperbolic_space(r, QF))
    i = int(rng.integers(0, r // 2 + 1))
    s = SkewDatum(sampling.isotropic(ef.parent, i, rng), sampling.skew(QF, i, rng))
    L = lagrangian_from_skew(ef, s)
    assert is_lagrangian(ef, L)
    assert skew_from_lagrangian(ef, L) == s
    A = sampling.invertible(QF, i, rng)
    assert lagrangian_from_skew(ef, change_basis(s, A)) == L


def test_first_order_term():
    fld = Field(5)
    qs = hyperbolic_space(4, fld)
    B1 = Matrix.from_rows(fld, [[1, 2, 0, 0], [2, 0, 0, 3], [0, 0, 4, 0], [0, 3, 0, 1]], 4)
    ef = extend_form(qs, first_order=B1)
    for F in enumerate_isotropic(qs, 2):
        s = SkewDatum(F, Matrix.from_rows(fld, [[0, 2], [3, 0]], 2))
        L = lagrangian_from_skew(ef, s)
        assert is_lagrangian(ef, L)
        assert skew_from_lagrangian(ef, L) == s


def test_input_errors():
    fld = Field(3)
    ef = extend_form(hyperbolic_space(4, fld))
    F = Subspace.span(fld, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    with pytest.raises(ValueError, match="skew"):
        lagrangian_from_skew(ef, SkewDatum(F, Matrix.from_rows(fld, [[1, 0], [0, 0]], 2)))
    bad = Subspace.span(fld, 4, [[1, 0, 0, 1]])
    with pytest.raises(ValueError, match="isotropic"):
        lagrangian_from_skew(ef, SkewDatum(bad, Matrix.zeros(fld, 1, 1)))
    G = Subspace.span(fld, 4, [[0, 0, 1, 0]])
    with pytest.raises(ValueError, match="flag"):
        submodule_from_flag(Ambient(4, fld), FlagDatum(Subspace.span(fld, 4, [[1, 0, 0, 0]]), G,
                                                       Matrix.zeros(fld, 3, 1)))
    with pytest.raises(ValueError, match="dimension"):
        desingularize(1, SkewDatum(F, Matrix.zeros(fld, 2, 2)), ef)


def test_largest_stratum_dimensions():
    # largest strata: k(k-1) on both components for r = 2k; k^2 and k^2 - 1 for r = 2k+1
    assert dim_formulas(4, 2, variant="orthogonal")["component_dims"] == {0: 2, 1: 2}
    assert dim_formulas(6, 3, variant="orthogonal")["component_dims"] == {0: 6, 1: 6}
    assert dim_formulas(5, 2, variant="orthogonal")["component_dims"] == {0: 4, 1: 3}
    assert dim_formulas(7, 3, variant="orthogonal")["component_dims"] == {0: 8, 1: 9}


@pytest.mark.parametrize("r,n", [(3, 3), (4, 4), (4, 3), (5, 6)])
def test_plain_total_is_largest_closure(r, n):
    ls = range(max(0, n - r), n // 2 + 1)
    dims = [dim_formulas(r, l, n)["closure_dim"] for l in ls]
    assert max(dims) == dim_formulas(r, 0 if n == 0 else max(ls), n)["total_dim"]


def test_eps_dual_point_projects_to_eps_v():
    fld = Field(3)
    ef = extend_form(hyperbolic_space(4, fld))
    F = enumerate_isotropic(ef.parent, 2)[0]
    pt = ModelPoint("orthogonal", 2, F, Subspace.span(fld, 4, [[0, 0, 1, 0], [0, 0, 0, 1]]))
    assert model_is_valid(pt)
    assert project(pt, ef) == ef.ambient.eps_v


def test_orthogonal_model_points_land_in_parity_closure():
    fld = Field(3)
    ef = extend_form(hyperbolic_space(4, fld))
    for F in enumerate_isotropic(ef.parent, 2):
        pts = list(iter_model_points(2, F, "orthogonal"))
        assert len(pts) == 4  # the P^1 of Lagrangians in F + eps F*, one family
        for pt in pts:
            L = project(pt, ef)
            assert L.projection().dim in (0, 2) and is_lagrangian(ef, L)
