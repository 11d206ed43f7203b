"""Orthogonal bundles of rank 2, 3, 4 and 6 built from smaller bundles.

Each case pairs a Lagrangian L with a prediction for H(E, L) obtained from
ordinary Hecke transformations of the building blocks:

    rank 2:  E = M + M^{-1}
    rank 3:  E = End_0(F), trace form
    rank 4:  E = Hom(F, G), determinant form
    rank 6:  E = Λ^2 F (or Λ^2 F (x)), wedge form

The generic algorithm only sees (E, L); the prediction only sees the
building blocks and the data used to define L.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .dual_module import Ambient, make_submodule
from .exact_linalg import Field, Matrix, Subspace, iter_subspaces, kernel_rows
from .hecke import SplitOrthogonalBundle, fiber_module, hecke_orthogonal, hecke_plain
from .lattice import LocalLattice
from .quad_space import is_lagrangian, orthogonal_complement
from .strata import SkewDatum, lagrangian_from_skew

CASES = ("rank2", "rank3", "rank4_i1", "rank4_i2", "rank6_i1", "rank6_i2", "rank6_i3_0", "rank6_i3_1")


class MalformedCase(ValueError):
    pass


@dataclass
class LowRankReport:
    case: str
    checked: int = 0
    failures: list = dc_field(default_factory=list)
    outcomes: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.failures

    def to_json(self) -> dict:
        return {"case": self.case, "checked": self.checked, "ok": self.ok,
                "failures": self.failures[:5],
                "outcomes": {k: sorted(list(t) for t in v) for k, v in sorted(self.outcomes.items())}}


def _sorted(t) -> tuple:
    return tuple(sorted(t, reverse=True))


def _submodule(field: Field, r: int, vecs) -> "object":
    return make_submodule(Ambient(r, field), [[field(x) for x in v] for v in vecs])


def _jets_of_line(field: Field, D: Subspace) -> object:
    """D + eps V: the jets of sections whose value lies in D."""
    r = D.n
    vecs = [list(d) + [0] * r for d in D.rows]
    vecs += [[0] * r + [int(i == j) for j in range(r)] for i in range(r)]
    return _submodule(field, r, vecs)


def _lines(field: Field, n: int):
    return list(iter_subspaces(field, n, 1))


def _split_degrees(total: int, n: int, bound: int):
    """Descending integer vectors of length n with entries in [-bound, bound]."""
    for t in itertools.combinations_with_replacement(range(bound, -bound - 1, -1), n):
        if sum(t) == total:
            yield t


# ---------------------------------------------------------------------------
# rank 2

def rank2_bundle(d: int, field: Field) -> SplitOrthogonalBundle:
    return SplitOrthogonalBundle((d, -d), Matrix.from_rows(field, [[0, 1], [1, 0]], 2))


def rank2_instances(field: Field, bound: int = 2):
    for d in range(-bound, bound + 1):
        E = rank2_bundle(d, field)
        amb, _ = fiber_module(E)
        for k, expect in ((0, (d + 1, -d - 1)), (1, (d - 1, -d + 1))):
            e = [field(int(j == k)) for j in range(2)]
            L = amb.lift(Subspace.span(field, 2, [e]))
            yield {"d": d, "line": k}, E, L, _sorted(expect)


# ---------------------------------------------------------------------------
# rank 3: End_0(F) with coordinates (E12, H, E21)

END0_GRAM = [[0, 0, 1], [0, 2, 0], [1, 0, 0]]


def end0_degrees(f) -> tuple:
    return (f[0] - f[1], 0, f[1] - f[0])


def end0_bundle(f, field: Field) -> SplitOrthogonalBundle:
    return SplitOrthogonalBundle(end0_degrees(f), Matrix.from_rows(field, END0_GRAM, 3))


def end0_matrix(field: Field, coords) -> Matrix:
    e, h, g = coords
    return Matrix.from_rows(field, [[h, e], [g, field.neg(h)]], 2)


def rank3_instance(f, phi_coords, field: Field):
    if sum(f) not in (0, 1):
        raise MalformedCase("rank3 needs deg F in {0, 1}")
    E = end0_bundle(f, field)
    _, ef = fiber_module(E)
    line = Subspace.span(field, 3, [phi_coords])
    phi = end0_matrix(field, phi_coords)
    if phi.is_zero() or phi.det() or not (phi @ phi).is_zero():
        raise MalformedCase("phi must be a nonzero nilpotent")
    L = lagrangian_from_skew(ef, SkewDatum(line, Matrix.zeros(field, 1, 1)))
    D = Subspace.span(field, 2, phi.columns())
    f2 = hecke_plain(f, _jets_of_line(field, D))
    return E, L, _sorted(end0_degrees(f2))


def rank3_instances(field: Field, bound: int = 2):
    ef = fiber_module(end0_bundle((0, 0), field))[1]
    from .quad_space import enumerate_isotropic
    lines = enumerate_isotropic(ef.parent, 1)
    for deg in (0, 1):
        for f in _split_degrees(deg, 2, bound):
            for line in lines:
                phi = line.rows[0]
                E, L, expect = rank3_instance(f, phi, field)
                yield {"F": list(f), "phi": [str(x) for x in phi]}, E, L, expect


# ---------------------------------------------------------------------------
# rank 4: Hom(F, G), coordinate X_ij at index 2i + j, degree g_i - f_j

HOM_GRAM = [[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]


def hom_degrees(f, g) -> tuple:
    return tuple(g[i] - f[j] for i in range(2) for j in range(2))


def hom_bundle(f, g, field: Field) -> SplitOrthogonalBundle:
    if sum(f) != sum(g):
        raise MalformedCase("rank4 needs det F = det G")
    return SplitOrthogonalBundle(hom_degrees(f, g), Matrix.from_rows(field, HOM_GRAM, 4))


def _flat(m) -> list:
    return [m[i][j] for i in range(2) for j in range(2)]


def _outer(field: Field, u, v) -> list:
    p = field.characteristic
    return [[(a * b) % p if p else a * b for b in v] for a in u]


def rank4_i1_instance(f, g, phi: Matrix, field: Field):
    E = hom_bundle(f, g, field)
    _, ef = fiber_module(E)
    if phi.rank() != 1:
        raise MalformedCase("rank4_i1 needs a rank-one phi")
    line = Subspace.span(field, 4, [_flat(phi.rows)])
    L = lagrangian_from_skew(ef, SkewDatum(line, Matrix.zeros(field, 1, 1)))
    ker = Subspace.span(field, 2, kernel_rows(phi.rows, 2, field.characteristic))
    img = Subspace.span(field, 2, phi.columns())
    f2 = hecke_plain(f, _jets_of_line(field, ker))
    g2 = hecke_plain(g, _jets_of_line(field, img))
    return E, L, _sorted(hom_degrees(f2, g2))


def _free_line(field: Field, d, v):
    """K[eps](d + eps v) inside K[eps]^2."""
    return _submodule(field, 2, [list(d) + list(v), [0, 0] + list(d)])


def rank4_i2_target_instance(f, g, d, v, field: Field):
    """L = Hom(F_2x, M) with M = K[eps](d + eps v) in G_2x."""
    E = hom_bundle(f, g, field)
    amb, _ = fiber_module(E)
    vecs = []
    for j in range(2):
        lam = [int(k == j) for k in range(2)]
        vecs.append(_flat(_outer(field, d, lam)) + _flat(_outer(field, v, lam)))
        vecs.append([0] * 4 + _flat(_outer(field, d, lam)))
    L = make_submodule(amb, [[field(x) for x in w] for w in vecs])
    g2 = hecke_plain(g, _free_line(field, d, v))
    # twisted by O(x) so that the prediction has degree 0
    return E, L, _sorted(a + 1 for a in hom_degrees(f, g2))


def rank4_i2_source_instance(f, g, n, u, field: Field):
    """L = {X : X(N) = 0} with N = K[eps](n + eps u) in F_2x."""
    E = hom_bundle(f, g, field)
    amb, _ = fiber_module(E)
    p = field.characteristic
    # unknowns X0 (4 entries) then X1 (4 entries); X0 n = 0 and X1 n + X0 u = 0
    eqs = []
    for i in range(2):
        row = [0] * 8
        for j in range(2):
            row[2 * i + j] = n[j]
        eqs.append(row)
        row = [0] * 8
        for j in range(2):
            row[4 + 2 * i + j] = n[j]
            row[2 * i + j] = u[j]
        eqs.append(row)
    eqs = [[field(x) for x in row] for row in eqs]
    L = make_submodule(amb, kernel_rows(eqs, 8, p))
    f2 = hecke_plain(f, _free_line(field, n, u))
    return E, L, _sorted(a - 1 for a in hom_degrees(f2, g))


def _rank4_degree_pairs(bound: int):
    for deg in (0, 1):
        vs = list(_split_degrees(deg, 2, bound))
        for f in vs:
            for g in vs:
                yield f, g


def rank4_instances(case: str, field: Field, bound: int = 2):
    lines = _lines(field, 2)
    for f, g in _rank4_degree_pairs(bound):
        if case == "rank4_i1":
            for a in lines:
                for b in lines:
                    phi = Matrix.from_rows(field, _outer(field, a.rows[0], b.rows[0]), 2)
                    E, L, expect = rank4_i1_instance(f, g, phi, field)
                    yield {"F": list(f), "G": list(g), "image": _s(a.rows[0]), "coimage": _s(b.rows[0])}, E, L, expect
        else:
            for D in lines:
                d = D.rows[0]
                for c in field.elements():
                    v = [field(c) * x for x in _complement_vector(D)]
                    E, L, expect = rank4_i2_target_instance(f, g, d, v, field)
                    yield {"F": list(f), "G": list(g), "family": "target", "d": _s(d), "v": _s(v)}, E, L, expect
                    E, L, expect = rank4_i2_source_instance(f, g, d, v, field)
                    yield {"F": list(f), "G": list(g), "family": "source", "n": _s(d), "u": _s(v)}, E, L, expect


def _complement_vector(D: Subspace) -> list:
    j = D.complement_indices()[0]
    return [D.field.one if k == j else D.field.zero for k in range(D.n)]


def _s(v) -> list:
    return [str(x) for x in v]


# ---------------------------------------------------------------------------
# rank 6: Λ^2 F with coordinates (12, 13, 14, 23, 24, 34)

PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
WEDGE_GRAM = [[0, 0, 0, 0, 0, 1], [0, 0, 0, 0, -1, 0], [0, 0, 0, 1, 0, 0],
              [0, 0, 1, 0, 0, 0], [0, -1, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0]]
SHIFTS = {"rank6_i1": 0, "rank6_i2": 1, "rank6_i3_0": 0, "rank6_i3_1": 2}
STRATA6 = {"rank6_i1": 1, "rank6_i2": 2, "rank6_i3_0": 3, "rank6_i3_1": 3}


def wedge_degrees(f, twist: int = 0) -> tuple:
    return tuple(f[a] + f[b] + twist for a, b in PAIRS)


@lru_cache(maxsize=256)
def _wedge_bundle(f: tuple, field: Field) -> tuple[SplitOrthogonalBundle, int]:
    if sum(f) == 0:
        tw = 0
    elif sum(f) == -2:
        tw = 1
    else:
        raise MalformedCase("rank6 needs deg F in {0, -2}")
    return SplitOrthogonalBundle(wedge_degrees(f, tw), Matrix.from_rows(field, WEDGE_GRAM, 6)), tw


def wedge_bundle(f, field: Field) -> tuple[SplitOrthogonalBundle, int]:
    """Λ^2 F if deg F = 0, (Λ^2 F)(x) if deg F = -2."""
    return _wedge_bundle(tuple(f), field)


def wedge2(u, v, field: Field) -> list:
    p = field.characteristic
    out = [u[a] * v[b] - u[b] * v[a] for a, b in PAIRS]
    return [x % p for x in out] if p else out


def _poly_wedge(field: Field, u: dict, v: dict) -> dict:
    out: dict = {}
    p = field.characteristic
    for e1, a in u.items():
        for e2, b in v.items():
            w = wedge2(a, b, field)
            cur = out.get(e1 + e2, [field.zero] * 6)
            out[e1 + e2] = [(x + y) % p if p else x + y for x, y in zip(cur, w)]
    return out


def wedge_lattice(field: Field, P, shift: int) -> LocalLattice:
    """t^{-shift} Λ^2 of the lattice {s : jet(s) in P}."""
    frame = LocalLattice(field, 4, 0, 2, P.space).basis()
    gens = []
    for a in range(4):
        for b in range(a + 1, 4):
            w = _poly_wedge(field, frame[a], frame[b])
            gens.append({k - shift: v for k, v in w.items()})
    # frame elements lie in K[[t]]^4 and t^2 K[[t]]^4 is in the lattice,
    # so t^4 K[[t]]^6 is in Λ^2
    return LocalLattice.generated(field, 6, gens, -shift, 4 - shift + 1)


def wedge_jets(field: Field, P, shift: int):
    """The Lagrangian cut out by t^{-shift} Λ^2(F'_0), after checking t^2 ⊆ it ⊆ K[[t]]^6."""
    lat = wedge_lattice(field, P, shift)
    std = LocalLattice.standard(field, 6)
    if not std.contains_lattice(lat):
        raise AssertionError("wedge lattice is not inside K[[t]]^6")
    if not lat.contains_lattice(std.shift(2)):
        raise AssertionError("wedge lattice does not contain t^2 K[[t]]^6")
    full = lat.widen(min(lat.low, 0), max(lat.high, 2))
    off = (0 - full.low) * 6
    vecs = [row[off:off + 12] for row in full.span.rows]
    return make_submodule(Ambient(6, field), vecs)


def rank6_P(case: str, field: Field, data: dict):
    """The submodule P of F_2x attached to the case data."""
    z = [0, 0, 0, 0]
    eps = [[0] * 4 + [int(i == j) for j in range(4)] for i in range(4)]
    if case == "rank6_i1":
        vecs = [list(k) + z for k in data["K"].rows] + eps
    elif case == "rank6_i2":
        vecs = [list(data["w"]) + list(data["v"])] + [z + list(x) for x in data["W"].rows]
    elif case == "rank6_i3_0":
        W = data["W"]
        vecs = [list(wj) + list(vj) for wj, vj in zip(W.rows, data["vs"])] + [z + list(x) for x in W.rows]
    elif case == "rank6_i3_1":
        vecs = [list(data["w"]) + list(data["v"]), z + list(data["w"])]
    else:
        raise MalformedCase(f"unknown case {case!r}")
    return _submodule(field, 4, vecs)


def rank6_expected_projection(case: str, field: Field, data: dict) -> Subspace:
    if case == "rank6_i1":
        k1, k2 = data["K"].rows
        vecs = [wedge2(k1, k2, field)]
    elif case == "rank6_i2":
        vecs = [wedge2(data["w"], x, field) for x in data["W"].rows]
    elif case == "rank6_i3_0":
        rows = data["W"].rows
        vecs = [wedge2(a, b, field) for a, b in itertools.combinations(rows, 2)]
    else:
        vecs = [wedge2(data["w"], [int(i == j) for j in range(4)], field) for i in range(4)]
    return Subspace.span(field, 6, vecs)


def rank6_lagrangian(case: str, data: dict, field: Field):
    """(P, L) for the case data; L is checked against the case description."""
    ef = fiber_module(wedge_bundle((0, 0, 0, 0), field)[0])[1]
    P = rank6_P(case, field, data)
    L = wedge_jets(field, P, SHIFTS[case])
    chk = is_lagrangian(ef, L)
    if not chk:
        raise AssertionError("wedge construction is not Lagrangian: " + "; ".join(chk.reasons))
    F = L.projection()
    if F != rank6_expected_projection(case, field, data) or F.dim != STRATA6[case]:
        raise AssertionError("wedge construction has the wrong projection")
    if L.eps_part() != orthogonal_complement(ef.parent, F):
        raise AssertionError("wedge construction has the wrong kernel part")
    if case == "rank6_i1":
        if L != lagrangian_from_skew(ef, SkewDatum(F, Matrix.zeros(field, 1, 1))):
            raise AssertionError("stratum-one Lagrangian is not unique")
    return P, L


def rank6_instance(case: str, f, data: dict, field: Field, built=None):
    E, tw = wedge_bundle(f, field)
    P, L = built or rank6_lagrangian(case, data, field)
    f2 = hecke_plain(f, P)
    return E, L, _sorted(wedge_degrees(f2, SHIFTS[case] + 1 + tw))


def rank6_data(case: str, field: Field):
    """Every datum of the case over a prime field, in a fixed order."""
    if case == "rank6_i1":
        for K in iter_subspaces(field, 4, 2):
            yield {"K": K}
    elif case in ("rank6_i2", "rank6_i3_0"):
        for W in iter_subspaces(field, 4, 3):
            quot = _complement_vector(W)
            if case == "rank6_i2":
                for wl in iter_subspaces(field, 3, 1):
                    w = _combine(field, W.rows, wl.rows[0])
                    for c in field.elements():
                        yield {"w": w, "W": W, "v": [c * x for x in quot]}
            else:
                for cs in itertools.product(field.elements(), repeat=3):
                    yield {"W": W, "vs": [[c * x for x in quot] for c in cs]}
    elif case == "rank6_i3_1":
        for wl in iter_subspaces(field, 4, 1):
            w = list(wl.rows[0])
            comp = wl.complement_indices()
            for cs in itertools.product(field.elements(), repeat=3):
                v = [0] * 4
                for j, c in zip(comp, cs):
                    v[j] = c
                yield {"w": w, "v": v}
    else:
        raise MalformedCase(f"unknown case {case!r}")


def _combine(field: Field, rows, coeffs) -> list:
    p = field.characteristic
    v = [0] * len(rows[0])
    for c, row in zip(coeffs, rows):
        v = [x + c * y for x, y in zip(v, row)]
    return [x % p for x in v] if p else v


def rank6_degrees(bound: int = 2):
    for tot in (0, -2):
        yield from _split_degrees(tot, 4, bound)


def _data_json(data: dict) -> dict:
    out = {}
    for k, v in data.items():
        if isinstance(v, Subspace):
            out[k] = [_s(r) for r in v.rows]
        elif v and isinstance(v[0], (list, tuple)):
            out[k] = [_s(r) for r in v]
        else:
            out[k] = _s(v)
    return out


def rank6_instances(case: str, field: Field, bound: int = 2, exhaustive_degrees=None,
                    per_degree: int | None = None, rng=None):
    """All case data at ``exhaustive_degrees``; ``per_degree`` sampled data elsewhere."""
    data = list(rank6_data(case, field))
    degrees = list(rank6_degrees(bound))
    if per_degree is None:
        picks = {f: range(len(data)) for f in degrees}
    else:
        picks = {f: range(len(data)) if f in (exhaustive_degrees or ())
                 else sorted(rng.choice(len(data), size=min(per_degree, len(data)), replace=False))
                 for f in degrees}
    wanted = sorted({i for idx in picks.values() for i in idx})
    built = {i: rank6_lagrangian(case, data[i], field) for i in wanted}
    for f in degrees:
        for i in picks[f]:
            E, L, expect = rank6_instance(case, f, data[i], field, built[i])
            yield {"F": list(f), **_data_json(data[i])}, E, L, expect


# ---------------------------------------------------------------------------

def instances(case: str, field: Field, bound: int = 2, **kw):
    if case == "rank2":
        return rank2_instances(field, bound)
    if case == "rank3":
        return rank3_instances(field, bound)
    if case in ("rank4_i1", "rank4_i2"):
        return rank4_instances(case, field, bound)
    if case in SHIFTS:
        return rank6_instances(case, field, bound, **kw)
    raise MalformedCase(f"unknown case {case!r}")


def verify_low_rank(case: str, field: Field | None = None, bound: int = 2, **kw) -> LowRankReport:
    field = field or Field(3)
    rep = LowRankReport(case)
    for params, E, L, expect in instances(case, field, bound, **kw):
        got = hecke_orthogonal(E, L, extras=False).output_type
        rep.checked += 1
        key = ",".join(map(str, params.get("F", [params.get("d")])))
        rep.outcomes.setdefault(key, set()).add(got)
        if got != expect:
            rep.failures.append({"params": params, "generic": list(got), "structured": list(expect)})
    return rep
