"""Symmetric bilinear forms on V and their K[eps]-linear extension to W.

For a form b1 on V the K[eps]-bilinear extension b2 to W = V + eps V
splits into two K-bilinear pieces,

    b2(a + eps b, a' + eps b') = b1(a, a') + eps (b1(a, b') + b1(b, a')),

stored as the 2r x 2r Gram matrices ``b0`` and ``beps``.  A subspace is
q2-isotropic iff it is isotropic for both pieces.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator

from .dual_module import Ambient, Submodule, is_eps_stable
from .exact_linalg import (Field, Matrix, Subspace, apply, bilinear, dot, gaussian_binomial,
                           iter_subspaces, kernel_rows)

DEFAULT_GUARD = 2_000_000


class EnumerationTooLarge(RuntimeError):
    pass


class NotLagrangian(ValueError):
    pass


def enumeration_guard() -> int:
    raw = os.environ.get("ORTHO_HECKE_GUARD")
    if raw:
        return int(float(raw))
    return DEFAULT_GUARD


@dataclass(frozen=True)
class QuadraticSpace:
    r: int
    field: Field
    b1: Matrix

    def __post_init__(self):
        if self.b1.shape != (self.r, self.r):
            raise ValueError("Gram matrix has the wrong shape")
        if not self.b1.is_symmetric():
            raise ValueError("Gram matrix is not symmetric")
        if self.r and not self.b1.det():
            raise ValueError("degenerate form")

    @property
    def ambient(self) -> Ambient:
        return Ambient(self.r, self.field)

    def pair(self, u, v):
        return bilinear(u, self.b1, v)

    def to_json(self) -> dict:
        return {"r": self.r, "field": self.field.spec, "gram": self.b1.to_json()["rows"]}

    @classmethod
    def from_json(cls, obj: dict) -> "QuadraticSpace":
        fld = Field.parse(obj["field"])
        r = int(obj["r"])
        if obj.get("gram", "hyperbolic") == "hyperbolic":
            return hyperbolic_space(r, fld)
        return cls(r, fld, Matrix.from_rows(fld, obj["gram"], r))


def hyperbolic_gram(r: int, field: Field) -> Matrix:
    rows = [[field.zero] * r for _ in range(r)]
    for i in range(r):
        rows[i][r - 1 - i] = field.one
    return Matrix.from_rows(field, rows, r)


def hyperbolic_space(r: int, field: Field) -> QuadraticSpace:
    """Split form: b1(e_i, e_{r+1-i}) = 1, plus b1(e_c, e_c) = 1 at the centre for odd r."""
    return QuadraticSpace(r, field, hyperbolic_gram(r, field))


@dataclass(frozen=True)
class ExtendedForm:
    parent: QuadraticSpace
    b0: Matrix
    beps: Matrix

    @property
    def r(self) -> int:
        return self.parent.r

    @property
    def field(self) -> Field:
        return self.parent.field

    @property
    def ambient(self) -> Ambient:
        return self.parent.ambient

    def value(self, u, v):
        """b2(u, v) as the pair (constant term, eps coefficient)."""
        return bilinear(u, self.b0, v), bilinear(u, self.beps, v)


def extend_form(qs: QuadraticSpace, first_order: Matrix | None = None) -> ExtendedForm:
    """K[eps]-extension of b1.

    ``first_order`` is the t-coefficient B1 of a Gram matrix B0 + t B1 that
    varies along the jet; it only enters the eps component.  It is zero for
    the constant forms of split bundles.
    """
    f, r = qs.field, qs.r
    z = Matrix.zeros(f, r, r)
    B = qs.b1
    b0 = B.hstack(z).vstack(z.hstack(z))
    top_left = first_order if first_order is not None else z
    beps = top_left.hstack(B).vstack(B.hstack(z))
    return ExtendedForm(qs, b0, beps)


def orthogonal_complement(qs: QuadraticSpace, F: Subspace) -> Subspace:
    """F^perp = ker(V -> V* -> F*)."""
    if not F.dim:
        return Subspace.full(qs.field, qs.r)
    rows = [apply(qs.b1.T, v) for v in F.rows]
    return Subspace.span(qs.field, qs.r, kernel_rows(rows, qs.r, qs.field.characteristic))


def is_isotropic(qs: QuadraticSpace, F: Subspace) -> bool:
    p = qs.field.characteristic
    images = [apply(qs.b1, v) for v in F.rows]
    return all(not dot(u, w, p) for u in F.rows for w in images)


@dataclass(frozen=True)
class LagrangianCheck:
    ok: bool
    reasons: tuple = ()

    def __bool__(self):
        return self.ok


def is_lagrangian(ef: ExtendedForm, L: Submodule | Subspace) -> LagrangianCheck:
    space = L.space if isinstance(L, Submodule) else L
    reasons = []
    if space.n != 2 * ef.r:
        return LagrangianCheck(False, ("ambient dimension mismatch",))
    if space.dim != ef.r:
        reasons.append(f"dim L = {space.dim} != r = {ef.r}")
    p = ef.field.characteristic
    rows = space.rows
    for name, gram in (("b0", ef.b0), ("beps", ef.beps)):
        imgs = [apply(gram, v) for v in rows]
        if any(dot(u, w, p) for u in rows for w in imgs):
            reasons.append(f"L is not isotropic for the {name} component")
    if not is_eps_stable(ef.ambient, space):
        reasons.append("L is not eps-stable")
    return LagrangianCheck(not reasons, tuple(reasons))


def component_index(ef: ExtendedForm, L: Submodule) -> int:
    """Which of the two families of maximal isotropic subspaces of W contains L.

    Labelled so that eps V has index 0.
    """
    chk = is_lagrangian(ef, L)
    if not chk:
        raise NotLagrangian("not lagrangian: " + "; ".join(chk.reasons))
    m_proj = L.projection().dim % 2
    m_int = (ef.r - L.space.intersect(ef.ambient.eps_v.space).dim) % 2
    if m_proj != m_int:
        raise AssertionError("component index computations disagree")
    return m_proj


def same_family(r: int, a: Subspace, b: Subspace) -> bool:
    """Maximal isotropic subspaces of a split 2r-dim space lie in one family iff dim(a∩b) ≡ r mod 2."""
    return (a.intersect(b).dim - r) % 2 == 0


def _check_guard(count: int, guard: int | None):
    g = enumeration_guard() if guard is None else guard
    if count > g:
        raise EnumerationTooLarge(f"enumeration too large: {count} candidates > guard {g}")


def enumerate_isotropic(qs: QuadraticSpace, i: int, guard: int | None = None) -> list[Subspace]:
    """All i-dimensional isotropic subspaces of V over a prime field, sorted."""
    fld = qs.field
    if not fld.is_prime_field:
        raise ValueError("enumeration needs a prime field")
    if i < 0 or 2 * i > qs.r:
        raise ValueError(f"isotropic dimension {i} out of range for r = {qs.r}")
    _check_guard(gaussian_binomial(qs.r, i, fld.characteristic), guard)
    out = [F for F in iter_subspaces(fld, qs.r, i) if is_isotropic(qs, F)]
    out.sort()
    return out


def iter_eps_stable(ambient: Ambient, n: int, guard: int | None = None) -> Iterator[Submodule]:
    """Brute force: every n-dim subspace of W that eps preserves."""
    p = ambient.field.characteristic
    _check_guard(gaussian_binomial(ambient.dim, n, p), guard)
    for S in iter_subspaces(ambient.field, ambient.dim, n):
        if is_eps_stable(ambient, S):
            yield Submodule(ambient, S)


def brute_force_lagrangians(ef: ExtendedForm, guard: int | None = None) -> list[Submodule]:
    return sorted(L for L in iter_eps_stable(ef.ambient, ef.r, guard) if is_lagrangian(ef, L))
