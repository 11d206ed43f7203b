"""Tangent spaces to the strata and the fiberwise duality of skew tangent spaces.

Maps L -> W/L are matrices from echelon coordinates of L to the non-pivot
coordinates of W/L; maps W/L -> L go the other way.  A class in W/L is
lifted to W by putting its coordinates on the non-pivot positions.
"""
from __future__ import annotations

from dataclasses import dataclass

from .dual_module import EpsModule, Submodule, hom_epsilon
from .exact_linalg import Matrix, apply, bilinear, kernel_rows, rank_rows
from .quad_space import ExtendedForm, NotLagrangian, is_lagrangian


@dataclass(frozen=True)
class TangentReport:
    dim_hom0: int
    expected_dim: int
    skew_dim: int | None = None
    dual_skew_dim: int | None = None
    pairing_rank: int | None = None

    def to_json(self) -> dict:
        return {"dim_hom0": self.dim_hom0, "expected_dim": self.expected_dim,
                "skew_dim": self.skew_dim, "dual_skew_dim": self.dual_skew_dim,
                "pairing_rank": self.pairing_rank}


def expected_tangent_dim(r: int, n: int, i: int) -> int:
    return n * (r - n + i) + i * (n - 2 * i)


def tangent_dim(L: Submodule) -> TangentReport:
    hom = hom_epsilon(EpsModule.of_submodule(L), EpsModule.of_quotient(L))
    i = L.projection().dim
    return TangentReport(hom.dim0, expected_tangent_dim(L.r, L.n, i))


def _lift(L: Submodule, coords) -> list:
    v = [L.field.zero] * L.ambient.dim
    for j, c in zip(L.space.complement_indices(), coords):
        v[j] = c
    return v


def _combine(L: Submodule, coords) -> list:
    """Element of L with the given echelon coordinates."""
    p = L.field.characteristic
    v = [L.field.zero] * L.ambient.dim
    for c, row in zip(coords, L.space.rows):
        if c:
            v = [x + c * y for x, y in zip(v, row)]
    return [x % p for x in v] if p else v


def _check_largest(ef: ExtendedForm, L: Submodule) -> int:
    chk = is_lagrangian(ef, L)
    if not chk:
        raise NotLagrangian("not lagrangian: " + "; ".join(chk.reasons))
    i = L.projection().dim
    k = ef.r // 2
    if i < k - 1:
        raise ValueError(f"not largest stratum: i = {i} < {k - 1}")
    return i


def _skew_defects(ef: ExtendedForm, pairs) -> list:
    """Coordinates of (u, v) -> b2(x_u, y_v) + b2(x_v, y_u) in both K-components."""
    p = ef.field.characteristic
    out = []
    for gram in (ef.b0, ef.beps):
        for a in range(len(pairs)):
            for b in range(a, len(pairs)):
                xa, ya = pairs[a]
                xb, yb = pairs[b]
                s = bilinear(xa, gram, yb) + bilinear(xb, gram, ya)
                out.append(s % p if p else s)
    return out


def _skew_subspace(ef: ExtendedForm, basis: list, evaluate) -> list:
    """Combinations of ``basis`` whose induced K[eps]-form is skew."""
    p = ef.field.characteristic
    if not basis:
        return []
    cols = [_skew_defects(ef, evaluate(X)) for X in basis]
    rows = [list(r) for r in zip(*cols)]
    coeffs = kernel_rows(rows, len(basis), p)
    out = []
    for c in coeffs:
        acc = None
        for x, X in zip(c, basis):
            if x:
                acc = X.scale(x) if acc is None else acc + X.scale(x)
        out.append(acc if acc is not None else basis[0].scale(0))
    return out


def skew_maps(ef: ExtendedForm, L: Submodule) -> list[Matrix]:
    """Basis of Hom^{0,skew}(L, W/L)."""
    hom = hom_epsilon(EpsModule.of_submodule(L), EpsModule.of_quotient(L))
    rows = L.space.rows

    def evaluate(X):
        return [(_lift(L, apply(X, e)), u) for e, u in zip(_unit(L.field, L.n), rows)]
    return _skew_subspace(ef, hom.restricted_basis, evaluate)


def dual_skew_maps(ef: ExtendedForm, L: Submodule) -> list[Matrix]:
    """Basis of Hom^{0,skew}(W/L, L), with W/L paired to L through b2."""
    hom = hom_epsilon(EpsModule.of_quotient(L), EpsModule.of_submodule(L))
    d = ef.ambient.dim - L.n

    def evaluate(Y):
        return [(_lift(L, e), _combine(L, apply(Y, e))) for e in _unit(L.field, d)]
    return _skew_subspace(ef, hom.restricted_basis, evaluate)


def _unit(field, n):
    return [[field.one if j == k else field.zero for j in range(n)] for k in range(n)]


def lift_independence(ef: ExtendedForm, L: Submodule) -> bool:
    """b2(x + l, v) = b2(x, v) for l, v in L: the skew test does not depend on lifts."""
    p = ef.field.characteristic
    rows = L.space.rows
    return all(not (bilinear(u, g, v) % p if p else bilinear(u, g, v))
               for g in (ef.b0, ef.beps) for u in rows for v in rows)


def skew_tangent_dim(ef: ExtendedForm, L: Submodule) -> TangentReport:
    i = _check_largest(ef, L)
    base = tangent_dim(L)
    skew = skew_maps(ef, L)
    expected = i * (ef.r - i - 1)
    if len(skew) != expected:
        raise AssertionError(f"skew tangent dimension {len(skew)} != {expected}")
    return TangentReport(base.dim_hom0, expected, skew_dim=len(skew))


def pairing_rank(ef: ExtendedForm, phis: list, psis: list) -> int:
    """Rank of (Phi, Psi) -> trace of Psi o Phi on L."""
    p = ef.field.characteristic
    rows = []
    for A in phis:
        row = []
        for B in psis:
            C = B @ A
            t = sum(C[j, j] for j in range(C.nrows))
            row.append(t % p if p else t)
        rows.append(row)
    return rank_rows(rows, p) if rows and psis else 0


def duality_check(ef: ExtendedForm, L: Submodule) -> TangentReport:
    i = _check_largest(ef, L)
    base = tangent_dim(L)
    phis = skew_maps(ef, L)
    psis = dual_skew_maps(ef, L)
    if len(phis) != len(psis):
        raise AssertionError(f"skew dimensions differ: {len(phis)} vs {len(psis)}")
    return TangentReport(base.dim_hom0, i * (ef.r - i - 1), len(phis), len(psis),
                         pairing_rank(ef, phis, psis))
