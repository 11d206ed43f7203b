"""Modules over the dual numbers K[eps] = K[t]/t^2.

The ambient module is W = V + eps V with V = K^r.  Coordinates
``0..r-1`` hold the V-part ``a`` and ``r..2r-1`` the eps-part ``b`` of a
vector ``a + eps b``; eps acts by ``(a, b) -> (0, a)``.

A finite-dimensional K[eps]-module is just a K-space with a square-zero
endomorphism, which is what :class:`EpsModule` stores.  Submodules of W
and quotients W/L are turned into ``EpsModule`` by writing the induced
eps-action in a basis (echelon basis for L, non-pivot coordinates for W/L).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .exact_linalg import Field, Matrix, Subspace, kernel_rows, rank_rows


class NotEpsilonStable(ValueError):
    pass


@dataclass(frozen=True)
class Ambient:
    r: int
    field: Field

    @property
    def dim(self) -> int:
        return 2 * self.r

    def eps(self, v: Sequence) -> list:
        r = self.r
        return [self.field.zero] * r + list(v[:r])

    def vector(self, a: Sequence, b: Sequence | None = None) -> list:
        """The vector a + eps b."""
        f = self.field
        b = b if b is not None else [0] * self.r
        return [f(x) for x in a] + [f(x) for x in b]

    def split(self, v: Sequence) -> tuple[list, list]:
        return list(v[:self.r]), list(v[self.r:])

    @property
    def eps_v(self) -> "Submodule":
        """The submodule eps V."""
        f = self.field
        vecs = [[f.zero] * self.r + [f.one if j == i else f.zero for j in range(self.r)] for i in range(self.r)]
        return Submodule(self, Subspace.span(f, self.dim, vecs))

    @property
    def everything(self) -> "Submodule":
        return Submodule(self, Subspace.full(self.field, self.dim))

    def lift(self, s: Subspace) -> "Submodule":
        """K[eps] s = s + eps s for a subspace s of V (the free module on s)."""
        vecs = [self.vector(v) for v in s.rows] + [self.vector([0] * self.r, v) for v in s.rows]
        return Submodule(self, Subspace.span(self.field, self.dim, vecs))


def is_eps_stable(ambient: Ambient, space: Subspace) -> bool:
    return all(space.contains(ambient.eps(v)) for v in space.rows)


@dataclass(frozen=True, eq=False)
class Submodule:
    """An eps-stable subspace of W, held in canonical (echelon) form."""

    ambient: Ambient
    space: Subspace

    @property
    def r(self) -> int:
        return self.ambient.r

    @property
    def field(self) -> Field:
        return self.ambient.field

    @property
    def n(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> Matrix:
        return self.space.matrix

    def vectors(self) -> list[tuple]:
        return list(self.space.rows)

    def __eq__(self, other):
        return isinstance(other, Submodule) and self.r == other.r and self.space == other.space

    def __hash__(self):
        return hash((self.r, self.space))

    def __lt__(self, other):
        return self.space < other.space

    def __repr__(self):
        return f"Submodule(r={self.r}, n={self.n}, {self.space!r})"

    def projection(self) -> Subspace:
        """F = pi(L), the image in V."""
        r = self.r
        return Subspace.span(self.field, r, [v[:r] for v in self.space.rows])

    def eps_part(self) -> Subspace:
        """G with eps G = L ∩ eps V."""
        r = self.r
        return Subspace.span(self.field, r, [v[r:] for v in self.space.intersect(self.ambient.eps_v.space).rows])

    def to_json(self) -> dict:
        m = self.basis
        return {"r": self.r, "field": self.field.spec, "basis": m.to_json()["rows"]}


def make_submodule(ambient: Ambient, columns: Matrix | Sequence[Sequence]) -> Submodule:
    """Canonical submodule spanned by the columns of ``columns``.

    Rank-deficient input is fine; a span that eps does not preserve is not.
    """
    if isinstance(columns, Matrix):
        if columns.nrows != ambient.dim:
            raise ValueError(f"basis must have {ambient.dim} rows, got {columns.nrows}")
        vecs = columns.columns()
    else:
        vecs = [[ambient.field(x) for x in v] for v in columns]
    space = Subspace.span(ambient.field, ambient.dim, vecs)
    if not is_eps_stable(ambient, space):
        raise NotEpsilonStable("not epsilon-stable")
    return Submodule(ambient, space)


def submodule_from_json(obj: dict) -> Submodule:
    fld = Field.parse(obj["field"])
    r = int(obj["r"])
    amb = Ambient(r, fld)
    rows = obj["basis"]
    if rows and len(rows) != 2 * r and all(len(row) == 2 * r for row in rows):
        # tolerated: one vector per row instead of one per column
        return make_submodule(amb, rows)
    m = Matrix.from_rows(fld, rows, len(rows[0]) if rows else 0)
    return make_submodule(amb, m)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EpsModule:
    """K^d with a square-zero operator ``nil`` acting on column vectors."""

    field: Field
    nil: Matrix
    name: str = ""

    @property
    def dim(self) -> int:
        return self.nil.nrows

    @classmethod
    def free(cls, field: Field, f: int) -> "EpsModule":
        """K[eps]^f with basis (e_1, eps e_1, e_2, eps e_2, ...)."""
        d = 2 * f
        rows = [[field.zero] * d for _ in range(d)]
        for k in range(f):
            rows[2 * k + 1][2 * k] = field.one
        return cls(field, Matrix.from_rows(field, rows, d), f"K[eps]^{f}")

    @classmethod
    def trivial(cls, field: Field, g: int) -> "EpsModule":
        return cls(field, Matrix.zeros(field, g, g), f"K^{g}")

    @classmethod
    def direct_sum(cls, a: "EpsModule", b: "EpsModule") -> "EpsModule":
        f = a.field
        da, db = a.dim, b.dim
        rows = [list(r) + [f.zero] * db for r in a.nil.rows] + [[f.zero] * da + list(r) for r in b.nil.rows]
        return cls(f, Matrix.from_rows(f, rows, da + db), f"{a.name}+{b.name}")

    @classmethod
    def of_submodule(cls, L: Submodule) -> "EpsModule":
        amb = L.ambient
        cols = [L.space.coords(amb.eps(v)) for v in L.space.rows]
        n = L.n
        return cls(L.field, Matrix.from_columns(L.field, cols, n) if n else Matrix.zeros(L.field, 0, 0), "L")

    @classmethod
    def of_quotient(cls, L: Submodule) -> "EpsModule":
        amb = L.ambient
        comp = L.space.complement_indices()
        f = L.field
        cols = []
        for c in comp:
            e = [f.zero] * amb.dim
            e[c] = f.one
            cols.append(L.space.quotient_coords(amb.eps(e)))
        d = len(comp)
        return cls(f, Matrix.from_columns(f, cols, d) if d else Matrix.zeros(f, 0, 0), "W/L")

    def image(self) -> Subspace:
        return Subspace.span(self.field, self.dim, self.nil.columns())

    def kernel(self) -> Subspace:
        return Subspace.span(self.field, self.dim, kernel_rows(self.nil.rows, self.dim, self.field.characteristic))


@dataclass(frozen=True)
class ModuleStructure:
    f: int
    g: int
    l1_basis: Matrix
    l2_basis: Matrix
    torsion_degree: int

    @property
    def dim(self) -> int:
        return 2 * self.f + self.g


def _structure(l1: Subspace, l2: Subspace) -> ModuleStructure:
    f = l1.dim
    g = l2.dim - l1.dim
    return ModuleStructure(f=f, g=g, l1_basis=l1.matrix, l2_basis=l2.matrix, torsion_degree=g)


def module_structure(L: Submodule | EpsModule) -> ModuleStructure:
    """Free rank f and torsion rank g with L ≅ K[eps]^f + K^g.

    For a submodule of W the bases of L^(1) = eps L and L^(2) = ker(eps)
    are returned in ambient coordinates.
    """
    if isinstance(L, EpsModule):
        return _structure(L.image(), L.kernel())
    amb = L.ambient
    l1 = Subspace.span(L.field, amb.dim, [amb.eps(v) for v in L.space.rows])
    l2 = L.space.intersect(amb.eps_v.space)
    return _structure(l1, l2)


def quotient_structure(L: Submodule) -> ModuleStructure:
    """Structure of W/L, bases given in the non-pivot coordinates of L."""
    return module_structure(EpsModule.of_quotient(L))


def torsion_degree(L: Submodule | EpsModule) -> int:
    if isinstance(L, EpsModule):
        rk = rank_rows(L.nil.rows, L.field.characteristic)
        return L.dim - 2 * rk
    return module_structure(L).torsion_degree


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomSpace:
    source: EpsModule
    target: EpsModule
    basis: list = dc_field(default_factory=list)
    restricted_basis: list = dc_field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def dim0(self) -> int:
        return len(self.restricted_basis)


def _as_module(x) -> EpsModule:
    if isinstance(x, EpsModule):
        return x
    if isinstance(x, Submodule):
        return EpsModule.of_submodule(x)
    raise TypeError(f"cannot view {type(x).__name__} as a K[eps]-module")


def commuting_equations(A: EpsModule, B: EpsModule) -> list[list]:
    """Rows of the linear system X.N_A = N_B.X in the row-major entries of X."""
    dA, dB = A.dim, B.dim
    p = A.field.characteristic
    NA, NB = A.nil.rows, B.nil.rows
    zero = A.field.zero
    eqs = []
    for i in range(dB):
        for j in range(dA):
            row = [zero] * (dA * dB)
            for k in range(dA):
                c = NA[k][j]
                if c:
                    row[i * dA + k] += c
            for k in range(dB):
                c = NB[i][k]
                if c:
                    row[k * dA + j] -= c
            if p:
                row = [x % p for x in row]
            if any(row):
                eqs.append(row)
    return eqs


def filtration_equations(A: EpsModule, B: EpsModule) -> list[list]:
    """Rows expressing X(ker eps_A) ⊆ im eps_B, i.e. the induced map phi_0 vanishes."""
    dA, dB = A.dim, B.dim
    p = A.field.characteristic
    zero = A.field.zero
    kers = A.kernel().rows
    # functionals vanishing on im eps_B
    ann = kernel_rows(B.nil.T.rows, dB, p) if dB else []
    eqs = []
    for y in ann:
        for kv in kers:
            row = [zero] * (dA * dB)
            for i in range(dB):
                if y[i]:
                    for j in range(dA):
                        if kv[j]:
                            row[i * dA + j] += y[i] * kv[j]
            if p:
                row = [x % p for x in row]
            if any(row):
                eqs.append(row)
    return eqs


def _to_matrices(field: Field, vecs: list, dB: int, dA: int) -> list[Matrix]:
    return [Matrix.from_rows(field, [v[i * dA:(i + 1) * dA] for i in range(dB)], dA) for v in vecs]


def hom_epsilon(L, M) -> HomSpace:
    """All K[eps]-linear maps L -> M; ``restricted_basis`` spans those with phi_0 = 0.

    The restricted basis is a prefix of ``basis``.
    """
    A, B = _as_module(L), _as_module(M)
    if A.field != B.field:
        raise ValueError("field mismatch")
    p = A.field.characteristic
    nvar = A.dim * B.dim
    comm = commuting_equations(A, B)
    hom0 = kernel_rows(comm + filtration_equations(A, B), nvar, p)
    full = Subspace.span(A.field, nvar, kernel_rows(comm, nvar, p))
    # extend the Hom^0 basis to a basis of Hom
    extra = []
    acc = Subspace.span(A.field, nvar, hom0)
    for v in full.rows:
        if not acc.contains(v):
            extra.append(list(v))
            acc = acc + Subspace.span(A.field, nvar, [v])
    return HomSpace(A, B, _to_matrices(A.field, hom0 + extra, B.dim, A.dim),
                    _to_matrices(A.field, hom0, B.dim, A.dim))
