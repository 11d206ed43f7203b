"""Exact linear algebra over Q and over prime fields F_p (p odd).

Scalars are plain Python values: ``Fraction`` for Q and ``int`` in
``[0, p)`` for F_p.  A :class:`Field` knows how to coerce, invert and
print them.  Matrices are immutable row tuples; subspaces are stored by
their reduced row-echelon basis, so two equal subspaces compare equal.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class FieldMismatch(ValueError):
    def __init__(self, a: "Field", b: "Field"):
        super().__init__(f"field mismatch: {a.spec} vs {b.spec}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """Q (characteristic 0) or F_p for an odd prime p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        if p != 0 and not _is_prime(p):
            raise ValueError(f"{p} is not a prime")

    @classmethod
    def parse(cls, spec: str) -> "Field":
        s = spec.strip().lower()
        if s in ("q", "qq", "rationals"):
            return cls(0)
        if s.startswith("fp:"):
            try:
                return cls(int(s[3:]))
            except ValueError as exc:
                raise ValueError(f"bad field spec {spec!r}: {exc}") from None
        raise ValueError(f"bad field spec {spec!r} (expected 'q' or 'fp:<p>')")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime_field"

    @property
    def spec(self) -> str:
        return "q" if self.characteristic == 0 else f"fp:{self.characteristic}"

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    def __call__(self, x):
        p = self.characteristic
        if isinstance(x, str):
            x = Fraction(x.strip())
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, p)) % p
        return int(x) % p

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / Fraction(x)
        return pow(x, -1, self.characteristic)

    def neg(self, x):
        return -x if self.characteristic == 0 else (-x) % self.characteristic

    def fmt(self, x) -> str:
        return str(x)

    def elements(self) -> range:
        if self.characteristic == 0:
            raise ValueError("Q is infinite")
        return range(self.characteristic)

    def __repr__(self):
        return f"Field({self.spec!r})"


QQ = Field(0)


# ---------------------------------------------------------------------------
# row reduction on plain lists (hot path; no Matrix objects involved)

def rref_rows(rows: list[list], p: int) -> list[int]:
    """Reduce ``rows`` in place to reduced row-echelon form and return pivots.

    Zero rows are dropped from ``rows``.  ``p`` is the characteristic.
    """
    pivots: list[int] = []
    if not rows:
        return pivots
    ncols = len(rows[0])
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = None
        for k in range(r, nrows):
            if rows[k][c]:
                piv = k
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        if p:
            inv = pow(prow[c], -1, p)
            if inv != 1:
                prow = [(x * inv) % p for x in prow]
        else:
            inv = 1 / Fraction(prow[c])
            if inv != 1:
                prow = [x * inv for x in prow]
        rows[r] = prow
        for k in range(nrows):
            if k != r:
                f = rows[k][c]
                if f:
                    row = rows[k]
                    if p:
                        rows[k] = [(x - f * y) % p for x, y in zip(row, prow)]
                    else:
                        rows[k] = [x - f * y for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    del rows[r:]
    return pivots


def kernel_rows(rows: Sequence[Sequence], ncols: int, p: int) -> list[list]:
    """Basis of {x : rows . x = 0}, one vector per free column."""
    work = [list(r) for r in rows]
    pivots = rref_rows(work, p)
    pivset = set(pivots)
    zero = 0 if p else Fraction(0)
    one = 1 if p else Fraction(1)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(work, pivots):
            c = row[free]
            if c:
                v[pc] = (-c) % p if p else -c
        basis.append(v)
    return basis


def rank_rows(rows: Sequence[Sequence], p: int) -> int:
    work = [list(r) for r in rows]
    return len(rref_rows(work, p))


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """Immutable exact matrix.  ``ncols`` is kept for the 0-row case."""

    field: Field
    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable], ncols: int | None = None) -> "Matrix":
        rows = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(field, rows, ncols)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        cols = [tuple(field(x) for x in c) for c in cols]
        if any(len(c) != nrows for c in cols):
            raise ValueError("column length mismatch")
        rows = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return cls(field, rows, len(cols))

    @classmethod
    def zeros(cls, field: Field, m: int, n: int) -> "Matrix":
        z = field.zero
        return cls(field, tuple((z,) * n for _ in range(m)), n)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    @property
    def p(self) -> int:
        return self.field.characteristic

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def columns(self) -> list[tuple]:
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        cols = tuple(zip(*self.rows)) if self.rows else tuple(() for _ in range(self.ncols))
        return Matrix(self.field, cols, self.nrows)

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatch(self.field, other.field)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        p = self.p
        cols = other.columns()
        out = []
        for row in self.rows:
            if p:
                out.append(tuple(sum(a * b for a, b in zip(row, c)) % p for c in cols))
            else:
                out.append(tuple(sum((a * b for a, b in zip(row, c)), Fraction(0)) for c in cols))
        return Matrix(self.field, tuple(out), other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        p = self.p
        rows = tuple(tuple(((a + b) % p if p else a + b) for a, b in zip(r, s))
                     for r, s in zip(self.rows, other.rows))
        return Matrix(self.field, rows, self.ncols)

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix(f, tuple(tuple(f.neg(a) for a in r) for r in self.rows), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f(c)
        p = self.p
        return Matrix(f, tuple(tuple(((a * c) % p if p else a * c) for a in r) for r in self.rows), self.ncols)

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return Matrix(self.field, tuple(a + b for a, b in zip(self.rows, other.rows)), self.ncols + other.ncols)

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return Matrix(self.field, self.rows + other.rows, self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    def rank(self) -> int:
        return rank_rows(self.rows, self.p)

    def det(self):
        n, m = self.shape
        if n != m:
            raise ValueError("det of non-square matrix")
        p = self.p
        a = [list(r) for r in self.rows]
        det = self.field.one
        for c in range(n):
            piv = next((k for k in range(c, n) if a[k][c]), None)
            if piv is None:
                return self.field.zero
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            pv = a[c][c]
            det = det * pv
            inv = self.field.inv(pv)
            for k in range(c + 1, n):
                f = a[k][c]
                if f:
                    f = f * inv
                    a[k] = [x - f * y for x, y in zip(a[k], a[c])]
                    if p:
                        a[k] = [x % p for x in a[k]]
        return det % p if p else det

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i))

    # JSON matrix literal: {"field": "q" | "fp:<p>", "rows": [["1/2", "0"], ...]}
    def to_json(self) -> dict:
        return {"field": self.field.spec, "rows": [[self.field.fmt(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj: dict, field: Field | None = None) -> "Matrix":
        f = Field.parse(obj["field"]) if "field" in obj else field
        if f is None:
            raise ValueError("matrix literal without a field")
        rows = obj["rows"]
        ncols = obj.get("cols", len(rows[0]) if rows else 0)
        return cls.from_rows(f, rows, ncols)

    def __str__(self):
        return "\n".join("[" + " ".join(f"{str(x):>5}" for x in r) + "]" for r in self.rows)


def reduced_form(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns (zero rows kept at the bottom)."""
    work = [list(r) for r in m.rows]
    pivots = rref_rows(work, m.p)
    rank = len(pivots)
    z = m.field.zero
    work.extend([z] * m.ncols for _ in range(m.nrows - rank))
    return Matrix(m.field, tuple(tuple(r) for r in work), m.ncols), rank, pivots


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of the right kernel of ``m``."""
    basis = kernel_rows(m.rows, m.ncols, m.p)
    return Matrix.from_columns(m.field, basis, m.ncols) if basis else Matrix(
        m.field, tuple(() for _ in range(m.ncols)), 0)


def intersect_spans(a: Matrix, b: Matrix) -> Matrix:
    """Columns spanning colspan(a) ∩ colspan(b), in canonical form."""
    if a.field != b.field:
        raise FieldMismatch(a.field, b.field)
    if a.nrows != b.nrows:
        raise ValueError("spans live in different ambient spaces")
    sa = Subspace.span(a.field, a.nrows, a.columns())
    sb = Subspace.span(b.field, b.nrows, b.columns())
    return sa.intersect(sb).matrix


# ---------------------------------------------------------------------------

class Subspace:
    """Subspace of K^n held by its reduced row-echelon basis."""

    __slots__ = ("field", "n", "rows", "pivots", "_hash")

    def __init__(self, field: Field, n: int, rows: tuple, pivots: tuple):
        self.field = field
        self.n = n
        self.rows = rows
        self.pivots = pivots
        self._hash = None

    @classmethod
    def span(cls, field: Field, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        work = [list(v) for v in vectors]
        if any(len(v) != n for v in work):
            raise ValueError("vector length does not match ambient dimension")
        work = [v for v in work if any(v)]
        pivots = rref_rows(work, field.characteristic)
        return cls(field, n, tuple(tuple(r) for r in work), tuple(pivots))

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls.span(field, n, Matrix.identity(field, n).rows)

    @classmethod
    def from_rref(cls, field: Field, n: int, rows: Sequence[Sequence]) -> "Subspace":
        """Trusts that ``rows`` is already reduced row-echelon (used by enumerators)."""
        rows = tuple(tuple(r) for r in rows)
        pivots = tuple(next(j for j, x in enumerate(r) if x) for r in rows)
        return cls(field, n, rows, pivots)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def key(self):
        return (self.field.characteristic, self.n, self.rows)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __lt__(self, other):
        # deterministic ordering for sorted output; Fractions and ints both compare
        return (self.dim, self.rows) < (other.dim, other.rows)

    def __repr__(self):
        return f"Subspace(dim={self.dim} in K^{self.n}, basis={[list(map(str, r)) for r in self.rows]})"

    def reduce(self, v: Sequence) -> list:
        """Remainder of ``v`` after clearing the pivot coordinates."""
        p = self.field.characteristic
        v = list(v)
        for row, c in zip(self.rows, self.pivots):
            f = v[c]
            if f:
                if p:
                    v = [(x - f * y) % p for x, y in zip(v, row)]
                else:
                    v = [x - f * y for x, y in zip(v, row)]
        return v

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def coords(self, v: Sequence) -> list:
        """Coordinates of ``v`` (assumed inside) in the echelon basis."""
        return [v[c] for c in self.pivots]

    def complement_indices(self) -> list[int]:
        piv = set(self.pivots)
        return [j for j in range(self.n) if j not in piv]

    def quotient_coords(self, v: Sequence) -> list:
        """Coordinates of the class of ``v`` in K^n / self (non-pivot coordinates)."""
        r = self.reduce(v)
        return [r[j] for j in self.complement_indices()]

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.n, self.rows + other.rows)

    def annihilator(self) -> "Subspace":
        """{y : v . y = 0 for all v in self}."""
        return Subspace.span(self.field, self.n, kernel_rows(self.rows, self.n, self.field.characteristic))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.field != other.field:
            raise FieldMismatch(self.field, other.field)
        if self.n != other.n:
            raise ValueError("ambient mismatch")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.n)
        return (self.annihilator() + other.annihilator()).annihilator()

    def image(self, m: Matrix) -> "Subspace":
        """Image of this subspace under the column-vector map ``m``."""
        vecs = [_apply(m, v) for v in self.rows]
        return Subspace.span(self.field, m.nrows, vecs)

    @property
    def matrix(self) -> Matrix:
        """Basis as columns (reduced column-echelon form)."""
        if not self.rows:
            return Matrix(self.field, tuple(() for _ in range(self.n)), 0)
        return Matrix(self.field, tuple(zip(*self.rows)), len(self.rows))

    def basis(self) -> list[tuple]:
        return list(self.rows)


def _apply(m: Matrix, v: Sequence) -> list:
    p = m.p
    if p:
        return [sum(a * b for a, b in zip(row, v)) % p for row in m.rows]
    # Gram matrices here are sparse; skipping zeros avoids most Fraction arithmetic
    return [sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in m.rows]


apply = _apply


def dot(u: Sequence, v: Sequence, p: int):
    if p:
        return sum(a * b for a, b in zip(u, v) if a and b) % p
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def bilinear(u: Sequence, gram: Matrix, v: Sequence):
    return dot(u, _apply(gram, v), gram.p)


# ---------------------------------------------------------------------------
# finite field enumeration

def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def iter_rref(field: Field, n: int, k: int) -> Iterator[tuple]:
    """All k x n reduced row-echelon matrices of rank k over F_p, as row tuples."""
    p = field.characteristic
    if not p:
        raise ValueError("enumeration needs a finite field")
    if k == 0:
        yield ()
        return
    for pivots in itertools.combinations(range(n), k):
        pivset = set(pivots)
        free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pivset]
        base = [[0] * n for _ in range(k)]
        for i, pc in enumerate(pivots):
            base[i][pc] = 1
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [row[:] for row in base]
            for (i, j), x in zip(free, vals):
                rows[i][j] = x
            yield tuple(tuple(r) for r in rows)


def iter_subspaces(field: Field, n: int, k: int) -> Iterator[Subspace]:
    for rows in iter_rref(field, n, k):
        yield Subspace.from_rref(field, n, rows)


def iter_vectors(field: Field, n: int) -> Iterator[tuple]:
    return itertools.product(range(field.characteristic), repeat=n)


def solve_rows(rows: Sequence[Sequence], rhs: Sequence, ncols: int, p: int) -> list | None:
    """One solution x of rows . x = rhs (free variables set to zero), or None."""
    zero = 0 if p else Fraction(0)
    work = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = rref_rows(work, p)
    if pivots and pivots[-1] == ncols:
        return None
    x = [zero] * ncols
    for row, pc in zip(work, pivots):
        x[pc] = row[ncols]
    return x
