"""Seeded random instances: flags, isotropic subspaces, Lagrangians, bundles.

All randomness flows from numpy's counter-based Philox generator; a run
seeded with ``seed`` hands each trial its own child stream, so a trial can
be replayed on its own from (seed, index).
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .dual_module import Ambient, Submodule
from .exact_linalg import Field, Matrix, Subspace
from .quad_space import ExtendedForm, QuadraticSpace, is_isotropic
from .strata import FlagDatum, SkewDatum, lagrangian_from_skew, submodule_from_flag


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def trial_rngs(seed: int, n: int) -> list[np.random.Generator]:
    return [np.random.Generator(np.random.Philox(s)) for s in np.random.SeedSequence(seed).spawn(n)]


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """The stream of trial ``index`` of a run seeded with ``seed``."""
    return trial_rngs(seed, index + 1)[index]


def scalar(field: Field, rng: np.random.Generator, bound: int = 3):
    if field.characteristic:
        return int(rng.integers(field.characteristic))
    num = int(rng.integers(-bound, bound + 1))
    den = int(rng.integers(1, 3))
    return Fraction(num, den)


def vector(field: Field, n: int, rng, bound: int = 3) -> list:
    return [scalar(field, rng, bound) for _ in range(n)]


def subspace(field: Field, n: int, k: int, rng) -> Subspace:
    while True:
        S = Subspace.span(field, n, [vector(field, n, rng) for _ in range(k)])
        if S.dim == k:
            return S


def flag(ambient: Ambient, n: int, rng, i: int | None = None) -> FlagDatum:
    r, fld = ambient.r, ambient.field
    lo, hi = max(0, n - r), n // 2
    if i is None:
        i = int(rng.integers(lo, hi + 1))
    G = subspace(fld, r, n - i, rng)
    while True:
        coeffs = [vector(fld, G.dim, rng) for _ in range(i)]
        F = Subspace.span(fld, r, [_combine(fld, G.rows, c) for c in coeffs])
        if F.dim == i:
            break
    q = r - G.dim
    phi = Matrix.from_rows(fld, [vector(fld, i, rng) for _ in range(q)], i) if q else \
        Matrix(fld, (), i)
    return FlagDatum(F, G, phi)


def submodule(ambient: Ambient, rng, n: int | None = None) -> Submodule:
    if n is None:
        n = int(rng.integers(0, 2 * ambient.r + 1))
    return submodule_from_flag(ambient, flag(ambient, n, rng))


def _combine(fld: Field, rows, coeffs) -> list:
    p = fld.characteristic
    v = [fld.zero] * (len(rows[0]) if rows else 0)
    for c, row in zip(coeffs, rows):
        v = [x + c * y for x, y in zip(v, row)]
    return [x % p for x in v] if p else v


def reflect(qs: QuadraticSpace, u, v) -> list:
    """Reflection of v in the hyperplane orthogonal to the anisotropic u."""
    fld = qs.field
    p = fld.characteristic
    c = 2 * qs.pair(v, u) * fld.inv(qs.pair(u, u))
    out = [x - c * y for x, y in zip(v, u)]
    return [x % p for x in out] if p else out


def orthogonal_image(qs: QuadraticSpace, vecs, rng, reflections: int = 3) -> list:
    """Apply a random product of reflections to ``vecs``."""
    vecs = [list(v) for v in vecs]
    for _ in range(reflections):
        while True:
            u = vector(qs.field, qs.r, rng, bound=2)
            if qs.pair(u, u):
                break
        vecs = [reflect(qs, u, v) for v in vecs]
    return vecs


def isotropic(qs: QuadraticSpace, i: int, rng) -> Subspace:
    """Random isotropic subspace for the split form: the image of span(e_1..e_i)."""
    fld = qs.field
    base = [[fld.one if j == k else fld.zero for j in range(qs.r)] for k in range(i)]
    if not is_isotropic(qs, Subspace.span(fld, qs.r, base)):
        raise ValueError("random isotropic subspaces need the split form")
    F = Subspace.span(fld, qs.r, orthogonal_image(qs, base, rng))
    assert F.dim == i and is_isotropic(qs, F)
    return F


def skew(field: Field, i: int, rng) -> Matrix:
    rows = [[field.zero] * i for _ in range(i)]
    for j in range(i):
        for k in range(j + 1, i):
            x = field(scalar(field, rng))
            rows[j][k] = x
            rows[k][j] = field.neg(x)
    return Matrix.from_rows(field, rows, i) if i else Matrix(field, (), 0)


def lagrangian(ef: ExtendedForm, rng, i: int | None = None) -> Submodule:
    if i is None:
        i = int(rng.integers(0, ef.r // 2 + 1))
    F = isotropic(ef.parent, i, rng)
    return lagrangian_from_skew(ef, SkewDatum(F, skew(ef.field, i, rng)))


def hyperbolic_degrees(r: int, bound: int, rng) -> tuple:
    half = [int(rng.integers(-bound, bound + 1)) for _ in range(r // 2)]
    mid = [0] if r % 2 else []
    return tuple(half + mid + [-a for a in reversed(half)])


def invertible(field: Field, n: int, rng) -> Matrix:
    while True:
        m = Matrix.from_rows(field, [vector(field, n, rng) for _ in range(n)], n) if n else Matrix(field, (), 0)
        if not n or m.det():
            return m
