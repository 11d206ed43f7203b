import pytest

from ortho_hecke.dual_module import Ambient, make_submodule
from ortho_hecke.exact_linalg import Field, Matrix, Subspace, gaussian_binomial, iter_subspaces
from ortho_hecke.quad_space import (EnumerationTooLarge, NotLagrangian, QuadraticSpace, brute_force_lagrangians,
                                    component_index, enumerate_isotropic, extend_form, hyperbolic_space,
                                    is_isotropic, is_lagrangian, orthogonal_complement, same_family)


def split_isotropic_count(r, i, q):
    # totally isotropic i-spaces of the split form in dimension r
    k = r // 2
    top = k - 1 if r % 2 == 0 else k
    out = gaussian_binomial(k, i, q)
    for j in range(i):
        out *= q ** (top - j) + 1
    return out


def naive_isotropic(qs, i):
    return [F for F in iter_subspaces(qs.field, qs.r, i)
            if all(qs.pair(u, v) % qs.field.characteristic == 0 for u in F.rows for v in F.rows)]


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_isotropic_counts(r):
    qs = hyperbolic_space(r, Field(3))
    for i in range(r // 2 + 1):
        found = enumerate_isotropic(qs, i)
        assert len(found) == split_isotropic_count(r, i, 3)
        if r <= 4:
            assert found == sorted(naive_isotropic(qs, i))


def test_ogr_2_4_has_eight_points():
    assert len(enumerate_isotropic(hyperbolic_space(4, Field(3)), 2)) == 8


def test_orthogonal_complement(F3):
    qs = hyperbolic_space(4, F3)
    F = Subspace.span(F3, 4, [[1, 0, 0, 0]])
    perp = orthogonal_complement(qs, F)
    assert perp.dim == 3 and perp.contains_space(F)
    assert orthogonal_complement(qs, Subspace.zero(F3, 4)).dim == 4


def test_degenerate_form_rejected(F3):
    with pytest.raises(ValueError):
        QuadraticSpace(2, F3, Matrix.from_rows(F3, [[1, 1], [1, 1]], 2))


def test_eps_v_is_lagrangian_component_zero(F3):
    ef = extend_form(hyperbolic_space(3, F3))
    assert is_lagrangian(ef, ef.ambient.eps_v)
    assert component_index(ef, ef.ambient.eps_v) == 0


def test_not_lagrangian_reasons(F3):
    ef = extend_form(hyperbolic_space(2, F3))
    L = make_submodule(Ambient(2, F3), [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    chk = is_lagrangian(ef, L)
    assert not chk and any("dim" in s for s in chk.reasons)
    with pytest.raises(NotLagrangian):
        component_index(ef, L)


@pytest.mark.parametrize("r", [2, 3])
def test_brute_force_lagrangian_components(r):
    ef = extend_form(hyperbolic_space(r, Field(3)))
    Ls = brute_force_lagrangians(ef)
    for L in Ls:
        inter = L.space.intersect(ef.ambient.eps_v.space).dim
        assert component_index(ef, L) == (r - inter) % 2 == L.projection().dim % 2


def test_maximal_isotropic_families(F3):
    qs = hyperbolic_space(4, F3)
    planes = enumerate_isotropic(qs, 2)
    ref = planes[0]
    fam = [same_family(2, ref, P) for P in planes]
    assert fam.count(True) == fam.count(False) == 4


def test_guard_env(monkeypatch):
    monkeypatch.setenv("ORTHO_HECKE_GUARD", "10")
    with pytest.raises(EnumerationTooLarge):
        enumerate_isotropic(hyperbolic_space(4, Field(3)), 2)


def test_explicit_guard_argument():
    with pytest.raises(EnumerationTooLarge):
        enumerate_isotropic(hyperbolic_space(4, Field(3)), 1, guard=5)


def test_is_isotropic_line(F3):
    qs = hyperbolic_space(2, F3)
    assert is_isotropic(qs, Subspace.span(F3, 2, [[1, 0]]))
    assert not is_isotropic(qs, Subspace.span(F3, 2, [[1, 1]]))


def test_form_json_roundtrip(F3):
    qs = hyperbolic_space(3, F3)
    assert QuadraticSpace.from_json(qs.to_json()) == qs
