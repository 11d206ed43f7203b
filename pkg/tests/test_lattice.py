import pytest
from hypothesis import given, settings, strategies as st

from ortho_hecke import sampling
from ortho_hecke.dual_module import Ambient
from ortho_hecke.exact_linalg import Field, Subspace
from ortho_hecke.hecke import hecke_plain, jet_lattice
from ortho_hecke.lattice import LocalLattice, combine, unit_vector
from oracles import brute_h0

F3 = Field(3)


def coordinate_lattice(r, S):
    # sections whose value at 0 lies in span(e_i : i in S)
    return LocalLattice.generated(F3, r, [unit_vector(F3, r, i) for i in S], 0, 1)


def test_standard_type():
    lat = LocalLattice.standard(F3, 3)
    assert lat.splitting_type((2, 0, -1)) == (2, 0, -1)
    assert lat.shift(-1).splitting_type((2, 0, -1)) == (3, 1, 0)


@pytest.mark.parametrize("degrees,S,expected", [((0, 0), [0], (0, -1)), ((1, -1), [1], (0, -1)),
                                                ((1, -1), [0], (1, -2)), ((2, 0, -2), [0, 2], (2, -1, -2))])
def test_elementary_modification_of_coordinate_subspace(degrees, S, expected):
    assert coordinate_lattice(len(degrees), S).splitting_type(degrees) == expected


@pytest.mark.parametrize("degrees", [(0, 0), (1, -1), (1, 0)])
def test_h0_against_brute_force(degrees):
    amb = Ambient(2, F3)
    rng = sampling.make_rng(7)
    for n in range(5):
        P = sampling.submodule(amb, rng, n)
        lat = jet_lattice(F3, 2, P)
        for low_shift in (0, -1):
            L2 = lat.shift(low_shift)
            for m in range(-2, 2):
                if sum(max(0, a + m - L2.low + 1) for a in degrees) <= 9:
                    assert L2.h0(degrees, m) == brute_h0(L2, degrees, m)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(1, 4))
def test_jet_lattice_properties(seed, r):
    rng = sampling.make_rng(seed)
    P = sampling.submodule(Ambient(r, Field(0)), rng)
    lat = jet_lattice(Field(0), r, P)
    assert lat.is_t_stable()
    assert LocalLattice.standard(Field(0), r).contains_lattice(lat)
    assert lat.contains_lattice(LocalLattice.standard(Field(0), r).shift(2))
    degrees = sampling.hyperbolic_degrees(r, 2, rng)
    out = hecke_plain(degrees, P)
    assert sum(out) == sum(degrees) - (2 * r - P.n)
    basis = lat.basis()
    rebuilt = LocalLattice.generated(Field(0), r, basis, lat.low, lat.high)
    assert rebuilt.same_as(lat)


def test_fiber_coords_reconstruct():
    fld = Field(5)
    P = sampling.submodule(Ambient(3, fld), sampling.make_rng(3), 3)
    lat = jet_lattice(fld, 3, P).shift(-1)
    basis = lat.basis()
    v = {1: [1, 2, 3], 2: [0, 4, 1]}
    c = lat.fiber_coords(basis, v)
    back = combine(fld, c[:3], basis)
    back = combine(fld, [1, 1], [back, combine(fld, c[3:], basis, shift=1)])
    diff = combine(fld, [1, fld.neg(1)], [v, back])
    assert lat.shift(2).contains(diff)


def test_contains_rejects_poles():
    lat = LocalLattice.standard(F3, 2)
    assert not lat.contains({-1: [1, 0]})
    assert lat.contains({3: [1, 1]})


def test_not_eps_stable_window():
    S = Subspace.span(F3, 4, [[1, 0, 0, 0]])
    with pytest.raises(ValueError):
        jet_lattice(F3, 2, S)
