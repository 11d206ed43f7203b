"""Lattices in K((t))^r, used to model modifications of split bundles at t = 0.

A lattice Λ with t^high K[[t]]^r ⊆ Λ ⊆ t^low K[[t]]^r is stored through its
image S in the window t^low K[[t]]^r / t^high K[[t]]^r.  Window coordinates
are exponent-major: index ``(k - low) * r + i`` holds the t^k coefficient of
component i.  With low = 0 and high = 2 this is exactly the jet space
E_{2x} = V + eps V.

A Laurent vector is a dict ``{exponent: list of r coefficients}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .exact_linalg import Field, Subspace, kernel_rows, rank_rows, solve_rows


@dataclass(frozen=True)
class LocalLattice:
    field: Field
    r: int
    low: int
    high: int
    span: Subspace

    @property
    def width(self) -> int:
        return self.high - self.low

    # -- construction ------------------------------------------------------

    @classmethod
    def standard(cls, field: Field, r: int) -> "LocalLattice":
        return cls(field, r, 0, 0, Subspace.zero(field, 0))

    @classmethod
    def generated(cls, field: Field, r: int, gens, low: int, high: int) -> "LocalLattice":
        """K[[t]]-span of ``gens`` plus t^high K[[t]]^r.

        The caller guarantees every generator lies in t^low K[[t]]^r.
        """
        if high < low:
            raise ValueError("empty window")
        w = high - low
        vecs = []
        for g in gens:
            if any(k < low and any(v) for k, v in g.items()):
                raise ValueError("generator below the window")
            for j in range(w):
                vecs.append(_window({k + j: v for k, v in g.items()}, field, r, low, high))
        return cls(field, r, low, high, Subspace.span(field, w * r, vecs))

    def widen(self, low: int | None = None, high: int | None = None) -> "LocalLattice":
        low = self.low if low is None else low
        high = self.high if high is None else high
        if low > self.low or high < self.high:
            raise ValueError("widen can only enlarge the window")
        f, r = self.field, self.r
        off = (self.low - low) * r
        n = (high - low) * r
        vecs = []
        for row in self.span.rows:
            v = [f.zero] * n
            v[off:off + len(row)] = row
            vecs.append(v)
        for k in range(self.high, high):
            for i in range(r):
                v = [f.zero] * n
                v[(k - low) * r + i] = f.one
                vecs.append(v)
        return LocalLattice(f, r, low, high, Subspace.span(f, n, vecs))

    def shift(self, j: int) -> "LocalLattice":
        """t^j Λ."""
        return LocalLattice(self.field, self.r, self.low + j, self.high + j, self.span)

    # -- queries -------------------------------------------------------------

    def window(self, vec: dict) -> list:
        return _window(vec, self.field, self.r, self.low, self.high)

    def contains(self, vec: dict) -> bool:
        if any(k < self.low and any(v) for k, v in vec.items()):
            return False
        return self.span.contains(self.window(vec))

    def is_t_stable(self) -> bool:
        r = self.r
        for row in self.span.rows:
            if not self.span.contains([self.field.zero] * r + list(row[:len(row) - r])):
                return False
        return True

    def same_as(self, other: "LocalLattice") -> bool:
        low = min(self.low, other.low)
        high = max(self.high, other.high)
        return self.widen(low, high).span == other.widen(low, high).span

    def contains_lattice(self, other: "LocalLattice") -> bool:
        low = min(self.low, other.low)
        high = max(self.high, other.high)
        return self.widen(low, high).span.contains_space(other.widen(low, high).span)

    def to_laurent(self, v) -> dict:
        r = self.r
        return {self.low + k: list(v[k * r:(k + 1) * r]) for k in range(self.width)}

    def basis(self) -> list[dict]:
        """A K[[t]]-basis (Nakayama: lifts of a basis of Λ/tΛ)."""
        lat = self.widen(high=self.high + 1)
        r = lat.r
        zero = lat.field.zero
        tsp = Subspace.span(lat.field, lat.width * r,
                            [[zero] * r + list(row[:len(row) - r]) for row in lat.span.rows])
        out = []
        acc = tsp
        for row in lat.span.rows:
            if not acc.contains(row):
                out.append(lat.to_laurent(row))
                acc = acc + Subspace.span(lat.field, lat.width * r, [row])
        if len(out) != r:
            raise AssertionError(f"lattice basis has {len(out)} elements, expected {r}")
        return out

    # -- global sections -------------------------------------------------------

    def h0(self, degrees, m: int) -> int:
        """dim H^0 of the modified bundle twisted by O(m).

        Sections are Laurent polynomial vectors with component i supported on
        exponents low..degrees[i] + m, lying in Λ near t = 0.
        """
        r, low, high = self.r, self.low, self.high
        total = sum(max(0, a + m - low + 1) for a in degrees)
        avail = [(k - low) * r + i for k in range(low, high) for i in range(r)
                 if k <= degrees[i] + m]
        if not avail:
            return total
        sub = [[row[c] for c in avail] for row in self.constraints]
        return total - (rank_rows(sub, self.field.characteristic) if sub else 0)

    @cached_property
    def constraints(self) -> list:
        """Linear functionals on the window cutting out S."""
        return kernel_rows(self.span.rows, self.width * self.r, self.field.characteristic)

    def splitting_type(self, degrees) -> tuple:
        """Degrees of the modified bundle, sorted descending, from the h0 differences."""
        r = self.r
        if len(degrees) != r:
            raise ValueError("degree vector has the wrong length")
        m = self.low - max(degrees) - 1
        if self.h0(degrees, m) != 0:
            raise AssertionError("scan did not start at h0 = 0")
        prev_h = 0
        prev_d = 0
        out = []
        for _ in range(4 * (max(degrees) - min(degrees)) + 4 * (self.high - self.low) + 8):
            m += 1
            h = self.h0(degrees, m)
            d = h - prev_h  # number of summands of degree >= -m
            out.extend([-m] * (d - prev_d))
            prev_h, prev_d = h, d
            if d == r:
                break
        if len(out) != r:
            raise AssertionError(f"scan recovered {len(out)} summands, expected {r}")
        return tuple(sorted(out, reverse=True))

    def fiber_coords(self, basis: list[dict], vec: dict, order: int = 2) -> list:
        """(c_0, ..., c_{order-1}) with vec = sum_k c_k(t) basis_k mod t^order Λ."""
        f, r = self.field, self.r
        p = f.characteristic
        deep = self.shift(order)
        low = min(self.low, min(vec, default=self.low))
        high = max(deep.high, max(vec, default=0) + 1)
        deep = deep.widen(low, high)
        n = (high - low) * r
        cols = []
        for j in range(order):
            for b in basis:
                cols.append(_window({k + j: v for k, v in b.items()}, f, r, low, high))
        cols += [list(row) for row in deep.span.rows]
        target = _window(vec, f, r, low, high)
        rows = [[c[i] for c in cols] for i in range(n)]
        sol = solve_rows(rows, target, len(cols), p)
        if sol is None:
            raise ValueError("vector is not in the lattice")
        return sol[:order * r]


def _window(vec: dict, field: Field, r: int, low: int, high: int) -> list:
    out = [field.zero] * ((high - low) * r)
    for k, v in vec.items():
        if low <= k < high:
            for i, x in enumerate(v):
                out[(k - low) * r + i] = field(x)
    return out


def unit_vector(field: Field, r: int, i: int, k: int = 0) -> dict:
    return {k: [field.one if j == i else field.zero for j in range(r)]}


def combine(field: Field, coeffs, vecs: list[dict], shift: int = 0) -> dict:
    """sum_k coeffs[k] t^shift vecs[k]."""
    p = field.characteristic
    out: dict = {}
    for c, v in zip(coeffs, vecs):
        if not c:
            continue
        for k, comp in v.items():
            cur = out.setdefault(k + shift, [field.zero] * len(comp))
            out[k + shift] = [x + c * y for x, y in zip(cur, comp)]
    if p:
        out = {k: [x % p for x in v] for k, v in out.items()}
    return out
