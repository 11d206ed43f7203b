"""Stratifications of epsilon-stable and Lagrangian submodules of W = V + eps V.

A submodule L of dimension n is described by the flag data
``F = pi(L) ⊆ G`` (with ``eps G = L ∩ eps V``) and a map ``phi: F -> V/G``
read off from the eps-parts of lifts.  For a Lagrangian L one has
``G = F^perp`` and phi becomes a skew form ``omega`` on F, stored as the
matrix ``omega[j][k] = b1(f_j, b_k)`` where ``f_k + eps b_k`` lies in L.

Conventions for bases: ``F`` and ``G`` are canonical echelon subspaces,
phi is a matrix whose k-th column is phi(f_k) in the non-pivot coordinates
of G, and lifts are chosen with zero entries on the pivots of G.
"""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .dual_module import Ambient, Submodule, make_submodule, torsion_degree
from .exact_linalg import (Field, Matrix, Subspace, apply, bilinear, dot, gaussian_binomial,
                           iter_rref, iter_subspaces, solve_rows)
from .quad_space import (ExtendedForm, NotLagrangian, _check_guard, brute_force_lagrangians,
                         component_index, enumerate_isotropic, is_isotropic, is_lagrangian,
                         orthogonal_complement, same_family)


def columns_matrix(field: Field, cols, nrows: int) -> Matrix:
    cols = list(cols)
    if not cols:
        return Matrix(field, tuple(() for _ in range(nrows)), 0)
    return Matrix.from_columns(field, cols, nrows)


@dataclass(frozen=True)
class FlagDatum:
    F: Subspace
    G: Subspace
    phi: Matrix  # (r - dim G) x dim F

    def to_json(self) -> dict:
        return {"F": [list(map(str, v)) for v in self.F.rows],
                "G": [list(map(str, v)) for v in self.G.rows],
                "phi": [list(map(str, row)) for row in self.phi.rows]}


@dataclass(frozen=True)
class SkewDatum:
    F: Subspace
    omega: Matrix
    basis: tuple | None = None  # basis of F used for omega; echelon basis if None

    def frame(self) -> tuple:
        return self.F.rows if self.basis is None else self.basis

    def to_json(self) -> dict:
        return {"F": [list(map(str, v)) for v in self.frame()],
                "omega": [list(map(str, row)) for row in self.omega.rows]}


@dataclass(frozen=True)
class StratumReport:
    n: int
    i: int
    torsion_degree: int
    flag: FlagDatum
    component: int | None = None
    skew: SkewDatum | None = None

    def to_json(self) -> dict:
        out = {"n": self.n, "i": self.i, "torsion_degree": self.torsion_degree}
        if self.component is not None:
            out["component"] = self.component
        out["flag"] = self.flag.to_json()
        if self.skew is not None:
            out["skew"] = self.skew.to_json()
        return out


# ---------------------------------------------------------------------------

def _lifts(L: Submodule) -> tuple[Subspace, list]:
    """F = pi(L) with its echelon basis, and the eps-parts b_k of lifts f_k + eps b_k."""
    r = L.r
    top = [v for v in L.space.rows if any(v[:r])]
    # rows of an echelon basis with a pivot among the first r coordinates come
    # first, and their V-parts are already the echelon basis of pi(L)
    F = Subspace.span(L.field, r, [v[:r] for v in top])
    assert tuple(tuple(v[:r]) for v in top) == F.rows
    return F, [list(v[r:]) for v in top]


def stratum_data(L: Submodule, ef: ExtendedForm | None = None) -> StratumReport:
    F, lifts = _lifts(L)
    G = L.eps_part()
    phi = columns_matrix(L.field, [G.quotient_coords(b) for b in lifts], L.r - G.dim)
    i = F.dim
    tdeg = torsion_degree(L)
    if tdeg != L.n - 2 * i:
        raise AssertionError(f"torsion degree {tdeg} != n - 2i = {L.n - 2 * i}")
    comp = skew = None
    if ef is not None and is_lagrangian(ef, L):
        comp = component_index(ef, L)
        skew = skew_from_lagrangian(ef, L)
    return StratumReport(L.n, i, tdeg, FlagDatum(F, G, phi), comp, skew)


def _lift_class(G: Subspace, coords) -> list:
    v = [G.field.zero] * G.n
    for j, c in zip(G.complement_indices(), coords):
        v[j] = c
    return v


def submodule_from_flag(ambient: Ambient, d: FlagDatum) -> Submodule:
    F, G, phi = d.F, d.G, d.phi
    r = ambient.r
    if F.n != r or G.n != r:
        raise ValueError("flag subspaces must live in V")
    if not G.contains_space(F):
        raise ValueError("flag violation: F is not contained in G")
    if phi.shape != (r - G.dim, F.dim):
        raise ValueError(f"phi must be {(r - G.dim, F.dim)}, got {phi.shape}")
    cols = phi.columns()
    vecs = [list(f) + _lift_class(G, c) for f, c in zip(F.rows, cols)]
    vecs += [[ambient.field.zero] * r + list(g) for g in G.rows]
    return make_submodule(ambient, vecs)


# ---------------------------------------------------------------------------
# Lagrangians <-> skew data

def _first_order(ef: ExtendedForm) -> Matrix:
    r = ef.r
    return ef.beps.submatrix(range(r), range(r))


def _half(field: Field, x):
    return x * field.inv(field(2)) if field.characteristic else Fraction(x) / 2


def _correction(ef: ExtendedForm, a, a2):
    """Half of the first-order Gram term; zero for constant forms."""
    B1 = _first_order(ef)
    return _half(ef.field, bilinear(a, B1, a2))


def is_skew(m: Matrix) -> bool:
    return (m + m.T).is_zero()


def lagrangian_from_skew(ef: ExtendedForm, s: SkewDatum) -> Submodule:
    qs, fld, r = ef.parent, ef.field, ef.r
    F = s.F
    if not is_isotropic(qs, F):
        raise ValueError("not isotropic")
    i = F.dim
    frame = [list(v) for v in s.frame()]
    if len(frame) != i or Subspace.span(fld, r, frame) != F:
        raise ValueError("basis does not span F")
    if s.omega.shape != (i, i) or not is_skew(s.omega):
        raise ValueError("omega is not skew-symmetric")
    p = fld.characteristic
    eqs = [apply(qs.b1, f) for f in frame]
    vecs = []
    for k in range(i):
        rhs = [s.omega[j, k] - _correction(ef, frame[j], frame[k]) for j in range(i)]
        b = solve_rows(eqs, [x % p if p else x for x in rhs], r, p)
        assert b is not None
        vecs.append(frame[k] + b)
    vecs += [[fld.zero] * r + list(w) for w in orthogonal_complement(qs, F).rows]
    return make_submodule(ef.ambient, vecs)


def skew_from_lagrangian(ef: ExtendedForm, L: Submodule) -> SkewDatum:
    chk = is_lagrangian(ef, L)
    if not chk:
        raise NotLagrangian("not lagrangian: " + "; ".join(chk.reasons))
    F, lifts = _lifts(L)
    p = ef.field.characteristic
    rows = []
    for f in F.rows:
        row = []
        for f2, b in zip(F.rows, lifts):
            x = ef.parent.pair(f, b) + _correction(ef, f, f2)
            row.append(x % p if p else x)
        rows.append(row)
    return SkewDatum(F, Matrix.from_rows(ef.field, rows, F.dim))


def change_basis(s: SkewDatum, A: Matrix) -> SkewDatum:
    """Same Lagrangian, new frame f'_k = sum_j A[j][k] f_j; omega becomes A^t omega A."""
    frame = s.frame()
    fld = s.F.field
    p = fld.characteristic
    new = []
    for k in range(A.ncols):
        v = [fld.zero] * s.F.n
        for j in range(A.nrows):
            c = A[j, k]
            if c:
                v = [x + c * y for x, y in zip(v, frame[j])]
        new.append(tuple(x % p if p else x for x in v))
    return SkewDatum(s.F, A.T @ s.omega @ A, tuple(new))


# ---------------------------------------------------------------------------
# desingularization models

@dataclass(frozen=True)
class ModelPoint:
    """A point of the resolution: ``base`` is G (plain) or F (orthogonal).

    ``point`` is an l-dim subspace of G + eps(V/G) (plain, coordinates:
    G-coordinates then quotient coordinates) or of F + eps F* (orthogonal,
    coordinates: F-coordinates then dual coordinates).
    """

    variant: str
    l: int
    base: Subspace
    point: Subspace


def desingularize(l: int, datum: FlagDatum | SkewDatum, ef: ExtendedForm | None = None) -> ModelPoint:
    if isinstance(datum, FlagDatum):
        F, G = datum.F, datum.G
        if F.dim != l:
            raise ValueError(f"dimension mismatch: dim F = {F.dim}, l = {l}")
        if not G.contains_space(F):
            raise ValueError("flag violation: F is not contained in G")
        vecs = [G.coords(f) + list(c) for f, c in zip(F.rows, datum.phi.columns())]
        return ModelPoint("plain", l, G, Subspace.span(F.field, F.n, vecs))
    if ef is None:
        raise ValueError("orthogonal model needs the extended form")
    F = datum.F
    if F.dim != l:
        raise ValueError(f"dimension mismatch: dim F = {F.dim}, l = {l}")
    if datum.basis is not None:
        datum = skew_from_lagrangian(ef, lagrangian_from_skew(ef, datum))
    fld = F.field
    vecs = []
    for k in range(l):
        e = [fld.one if j == k else fld.zero for j in range(l)]
        vecs.append(e + [datum.omega[j, k] for j in range(l)])
    return ModelPoint("orthogonal", l, F, Subspace.span(fld, 2 * l, vecs))


def model_is_valid(pt: ModelPoint) -> bool:
    """Orthogonal model points must be Lagrangian in F + eps F* and in the family of the graphs."""
    if pt.point.dim != pt.l:
        return False
    if pt.variant == "plain":
        return True
    l = pt.l
    p = pt.base.field.characteristic
    for u in pt.point.rows:
        for v in pt.point.rows:
            x = dot(u[:l], v[l:], p) + dot(u[l:], v[:l], p)
            if (x % p if p else x):
                return False
    horiz = Subspace.span(pt.base.field, 2 * l, [[int(j == k) for j in range(2 * l)] for k in range(l)])
    return (pt.point.intersect(horiz).dim - l) % 2 == 0


def project(pt: ModelPoint, target: Ambient | ExtendedForm) -> Submodule:
    base = pt.base
    fld, r = base.field, base.n
    if pt.variant == "plain":
        ambient = target if isinstance(target, Ambient) else target.ambient
        g = base.dim
        vecs = []
        for v in pt.point.rows:
            a = _combine(fld, base.rows, v[:g], r)
            vecs.append(a + _lift_class(base, v[g:]))
        vecs += [[fld.zero] * r + list(x) for x in base.rows]
        return make_submodule(ambient, vecs)
    if not isinstance(target, ExtendedForm):
        raise ValueError("orthogonal model needs the extended form")
    ef = target
    l = pt.l
    p = fld.characteristic
    eqs = [apply(ef.parent.b1, f) for f in base.rows]
    vecs = []
    for v in pt.point.rows:
        a = _combine(fld, base.rows, v[:l], r)
        rhs = [v[l + j] - _correction(ef, base.rows[j], a) for j in range(l)]
        b = solve_rows(eqs, [x % p if p else x for x in rhs], r, p)
        vecs.append(a + b)
    vecs += [[fld.zero] * r + list(w) for w in orthogonal_complement(ef.parent, base).rows]
    return make_submodule(ef.ambient, vecs)


def _combine(fld: Field, rows, coeffs, n: int) -> list:
    p = fld.characteristic
    v = [fld.zero] * n
    for c, row in zip(coeffs, rows):
        if c:
            v = [x + c * y for x, y in zip(v, row)]
    return [x % p for x in v] if p else v


def iter_model_points(l: int, base: Subspace, variant: str):
    """All model points over ``base`` (prime fields only)."""
    fld = base.field
    dim = base.n if variant == "plain" else 2 * l
    for rows in iter_rref(fld, dim, l):
        pt = ModelPoint(variant, l, base, Subspace.from_rref(fld, dim, rows))
        if model_is_valid(pt):
            yield pt


# ---------------------------------------------------------------------------

def dim_formulas(r: int, l: int, n: int | None = None, variant: str = "plain") -> dict:
    if variant == "plain":
        if n is None:
            raise ValueError("plain formulas need n")
        a = max(0, n - r)
        if not (a <= l <= n // 2) or n > 2 * r:
            raise ValueError(f"l = {l} out of range [{a}, {n // 2}]")
        k = n // 2
        total = 2 * k * (r - k) if n % 2 == 0 else 2 * k * (r - k - 1) + r - 1
        return {"closure_dim": n * (r - n + l) + l * (n - 2 * l), "total_dim": total}
    if variant == "orthogonal":
        if not 0 <= l <= r // 2:
            raise ValueError(f"l = {l} out of range [0, {r // 2}]")
        comps = {}
        for m in (0, 1):
            dims = [i * (r - i - 1) for i in range(r // 2 + 1) if i % 2 == m]
            if dims:
                comps[m] = max(dims)
        return {"stratum_dim": l * (r - l - 1), "component_dims": comps}
    raise ValueError(f"unknown variant {variant!r}")


def iter_skew(field: Field, i: int):
    """All i x i skew matrices over a prime field."""
    pairs = [(j, k) for j in range(i) for k in range(j + 1, i)]
    p = field.characteristic
    for vals in itertools.product(range(p), repeat=len(pairs)):
        rows = [[0] * i for _ in range(i)]
        for (j, k), x in zip(pairs, vals):
            rows[j][k] = x
            rows[k][j] = (-x) % p
        yield Matrix.from_rows(field, rows, i)


# ---------------------------------------------------------------------------
# censuses

@dataclass
class Census:
    r: int
    p: int
    strata: list
    brute_force_total: int | None = None
    families: list | None = None

    def to_json(self) -> dict:
        out = {"r": self.r, "p": self.p, "strata": self.strata}
        if self.brute_force_total is not None:
            out["brute_force_total"] = self.brute_force_total
        if self.families is not None:
            out["families"] = self.families
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "count", "predicted", "component"])
        for s in self.strata:
            w.writerow([s["i"], s["count"], s["predicted"], s.get("component", "")])
        return buf.getvalue()

    @property
    def total(self) -> int:
        return sum(s["count"] for s in self.strata)


def lagrangians_by_stratum(ef: ExtendedForm, guard: int | None = None) -> dict[int, list]:
    """Constructive enumeration through (F, omega) pairs, one list per stratum."""
    out = {}
    for i in range(ef.r // 2 + 1):
        Ls = []
        for F in enumerate_isotropic(ef.parent, i, guard):
            for om in iter_skew(ef.field, i):
                Ls.append(lagrangian_from_skew(ef, SkewDatum(F, om)))
        out[i] = Ls
    return out


def census(ef: ExtendedForm, brute_force: bool | None = None, guard: int | None = None) -> Census:
    fld = ef.field
    if not fld.is_prime_field:
        raise ValueError("census needs a prime field")
    p, r = fld.characteristic, ef.r
    by = lagrangians_by_stratum(ef, guard)
    strata = []
    for i, Ls in by.items():
        nF = len({L.projection() for L in Ls})
        uniq = set(Ls)
        comps = {component_index(ef, L) for L in uniq}
        if comps != {i % 2}:
            raise AssertionError(f"stratum {i} meets components {sorted(comps)}")
        strata.append({"i": i, "count": len(uniq), "predicted": nF * p ** (i * (i - 1) // 2),
                       "component": i % 2})
    fams = None
    if r % 2 == 0 and r > 2:
        k = r // 2
        Fs = sorted({L.projection() for L in by[k]})
        ref = Fs[0]
        sizes = [0, 0]
        for L in by[k]:
            sizes[0 if same_family(k, L.projection(), ref) else 1] += 1
        fams = sizes
    if brute_force is None:
        brute_force = 2 * r <= 6 and p == 3
    bf = None
    if brute_force:
        found = brute_force_lagrangians(ef, guard)
        bf = len(found)
        if set(found) != set().union(*map(set, by.values())):
            raise AssertionError("constructive and brute-force Lagrangians differ")
    return Census(r, p, strata, bf, fams)


def isotropic_count(r: int, i: int, q: int) -> int:
    """|OGr(i)(F_q)| for the split form of rank r (closed form, used as an oracle)."""
    m = r // 2
    c = gaussian_binomial(m, i, q)
    if r % 2 == 0:
        js = range(m - i, m)
    else:
        js = range(m - i + 1, m + 1)
    for j in js:
        c *= q ** j + 1
    return c


def plain_stratum_prediction(r: int, n: int, i: int, q: int) -> int:
    """|Flag(i, n-i)(F_q)| * q^{i(r-n+i)}."""
    return gaussian_binomial(r, n - i, q) * gaussian_binomial(n - i, i, q) * q ** (i * (r - n + i))


def iter_flags(ambient: Ambient, n: int, i: int):
    fld, r = ambient.field, ambient.r
    g = n - i
    for G in iter_subspaces(fld, r, g):
        for sub in iter_rref(fld, g, i):
            F = Subspace.span(fld, r, [_combine(fld, G.rows, c, r) for c in sub])
            q = r - g
            for vals in itertools.product(range(fld.characteristic), repeat=q * i):
                phi = Matrix.from_rows(fld, [vals[a * i:(a + 1) * i] for a in range(q)], i)
                yield FlagDatum(F, G, phi)


def plain_census(ambient: Ambient, n: int, guard: int | None = None) -> dict:
    """Constructive count of epsilon-stable n-dim submodules per stratum."""
    fld, r = ambient.field, ambient.r
    if not fld.is_prime_field:
        raise ValueError("census needs a prime field")
    p = fld.characteristic
    out = {}
    for i in range(max(0, n - r), n // 2 + 1):
        _check_guard(plain_stratum_prediction(r, n, i, p), guard)
        seen = set()
        for d in iter_flags(ambient, n, i):
            L = submodule_from_flag(ambient, d)
            if stratum_data(L).i != i:
                raise AssertionError("flag construction landed in the wrong stratum")
            seen.add(L)
        out[i] = {"count": len(seen), "predicted": plain_stratum_prediction(r, n, i, p)}
    return out
