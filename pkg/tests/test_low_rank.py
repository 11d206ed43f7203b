import pytest

from ortho_hecke import sampling
from ortho_hecke.dual_module import Ambient, make_submodule
from ortho_hecke.exact_linalg import Field
from ortho_hecke.hecke import hecke_orthogonal
from ortho_hecke.low_rank import CASES, MalformedCase, hom_bundle, rank2_bundle, verify_low_rank, wedge_bundle


@pytest.mark.parametrize("d", [-2, 0, 1, 3])
def test_rank_two_closed_forms(d):
    fld = Field(0)
    E = rank2_bundle(d, fld)
    amb = Ambient(2, fld)
    e1 = make_submodule(amb, [[1, 0, 0, 0], [0, 0, 1, 0]])
    e2 = make_submodule(amb, [[0, 1, 0, 0], [0, 0, 0, 1]])
    assert hecke_orthogonal(E, e1).output_type == tuple(sorted((d + 1, -d - 1), reverse=True))
    assert hecke_orthogonal(E, e2).output_type == tuple(sorted((d - 1, -d + 1), reverse=True))


@pytest.mark.parametrize("case", CASES[:4])
def test_small_cases_exhaustive(case):
    rep = verify_low_rank(case, Field(3), 2)
    assert rep.ok, rep.failures[:2]


@pytest.mark.parametrize("case", CASES[4:])
def test_rank_six_cases_sampled(case):
    rep = verify_low_rank(case, Field(3), 1, exhaustive_degrees=(), per_degree=6, rng=sampling.make_rng(1))
    assert rep.ok, rep.failures[:2]


def test_rank_six_over_f5_sample():
    rep = verify_low_rank("rank6_i2", Field(5), 1, exhaustive_degrees=(), per_degree=3, rng=sampling.make_rng(2))
    assert rep.ok


def test_malformed_inputs():
    with pytest.raises(MalformedCase):
        wedge_bundle((1, 0, 0, 0), Field(3))
    with pytest.raises(MalformedCase):
        hom_bundle((1, 0), (0, 0), Field(3))
    with pytest.raises(MalformedCase):
        verify_low_rank("rank5", Field(3))
