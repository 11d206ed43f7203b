"""Orthogonal Hecke transformations of split orthogonal bundles over P^1.

The bundle E = O(a_1) + ... + O(a_r) carries a constant Gram matrix in the
trivialisation near x = {t = 0}.  A section s of E near x has jet
s(0) + eps s'(0) in E_{2x} = V + eps V, and a submodule P of E_{2x} gives
the lattice E'_0 = {s : jet(s) in P}.  Everything about E' (its splitting
type, a local frame, its Gram matrix) is computed from that lattice.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .dual_module import Ambient, Submodule, make_submodule
from .exact_linalg import Field, Matrix, Subspace, apply, kernel_rows
from .lattice import LocalLattice, combine, unit_vector
from .quad_space import ExtendedForm, NotLagrangian, QuadraticSpace, extend_form, is_lagrangian
from .strata import ModelPoint, SkewDatum, lagrangian_from_skew, project


class CertificateFailed(AssertionError):
    pass


@dataclass(frozen=True)
class SplitOrthogonalBundle:
    degrees: tuple
    gram: Matrix

    def __post_init__(self):
        a = self.degrees
        r = len(a)
        if sum(a) != 0:
            raise ValueError(f"degrees sum to {sum(a)}, not 0")
        if self.gram.shape != (r, r):
            raise ValueError("Gram matrix has the wrong shape")
        if not self.gram.is_symmetric():
            raise ValueError("Gram matrix is not symmetric")
        if r and not self.gram.det():
            raise ValueError("degenerate form")
        for i in range(r):
            for j in range(r):
                if self.gram[i, j] and a[i] + a[j] != 0:
                    raise ValueError(f"gram pairs O({a[i]}) with O({a[j]}): not a pairing into O")

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def field(self) -> Field:
        return self.gram.field

    @classmethod
    def hyperbolic(cls, degrees, field: Field) -> "SplitOrthogonalBundle":
        """Degrees (a, b, ..., -b, -a) with the anti-diagonal form."""
        from .quad_space import hyperbolic_gram
        return cls(tuple(degrees), hyperbolic_gram(len(degrees), field))

    @classmethod
    def from_json(cls, obj: dict, field: Field | None = None) -> "SplitOrthogonalBundle":
        fld = field or Field.parse(obj.get("field", "q"))
        degrees = tuple(int(x) for x in obj["degrees"])
        gram = obj.get("gram", "hyperbolic")
        if gram == "hyperbolic":
            return cls.hyperbolic(degrees, fld)
        return cls(degrees, Matrix.from_rows(fld, gram, len(degrees)))

    def to_json(self) -> dict:
        return {"degrees": list(self.degrees), "field": self.field.spec,
                "gram": self.gram.to_json()["rows"]}


def splitting_type(degrees) -> tuple:
    return tuple(sorted(degrees, reverse=True))


def w2_parity(degrees) -> int:
    """Serre's parity: h^0(E(-1)) mod 2 on P^1."""
    if sum(degrees) != 0:
        raise ValueError("w2 needs degree 0")
    return sum(max(0, a) for a in degrees) % 2


def fiber_module(E: SplitOrthogonalBundle) -> tuple[Ambient, ExtendedForm]:
    qs = QuadraticSpace(E.r, E.field, E.gram)
    return qs.ambient, extend_form(qs)


def jet_lattice(field: Field, r: int, P: Submodule | Subspace) -> LocalLattice:
    space = P.space if isinstance(P, Submodule) else P
    if space.n != 2 * r:
        raise ValueError("submodule is not in the 2-jet space")
    lat = LocalLattice(field, r, 0, 2, space)
    if not lat.is_t_stable():
        raise ValueError("not epsilon-stable")
    return lat


def hecke_plain(degrees, P: Submodule) -> tuple:
    """Splitting type of ker(E -> E_{2x}/P)."""
    degrees = tuple(degrees)
    lat = jet_lattice(P.field, len(degrees), P)
    out = lat.splitting_type(degrees)
    if sum(out) != sum(degrees) - (2 * len(degrees) - P.n):
        raise AssertionError("degree sum mismatch")
    return out


# ---------------------------------------------------------------------------
# Gram matrices of lattice frames

def laurent_gram(field: Field, frame: list[dict], B: Matrix, shift: int = 0) -> dict:
    """t^shift * (frame_j^t B frame_k) as {exponent: matrix rows}."""
    p = field.characteristic
    n = len(frame)
    out: dict = {}
    imgs = [{k: apply(B, v) for k, v in f.items()} for f in frame]
    for j in range(n):
        for k in range(n):
            for e1, u in frame[j].items():
                if not any(u):
                    continue
                for e2, w in imgs[k].items():
                    s = sum(x * y for x, y in zip(u, w))
                    if p:
                        s %= p
                    if s:
                        e = e1 + e2 + shift
                        mat = out.setdefault(e, [[field.zero] * n for _ in range(n)])
                        mat[j][k] = (mat[j][k] + s) % p if p else mat[j][k] + s
    return {e: m for e, m in out.items() if any(any(x for x in row) for row in m)}


@dataclass(frozen=True)
class Transformed:
    """H(E, L): its lattice t^{-1} E'_0, a frame of it and the Gram in that frame."""

    lattice: LocalLattice
    frame: list
    gram: dict  # exponent -> rows

    def gram_at(self, e: int, field: Field) -> Matrix:
        n = len(self.frame)
        rows = self.gram.get(e, [[field.zero] * n for _ in range(n)])
        return Matrix.from_rows(field, rows, n)


def transform(E: SplitOrthogonalBundle, L: Submodule) -> Transformed:
    lat = jet_lattice(E.field, E.r, L).shift(-1)
    frame = lat.basis()
    gram = laurent_gram(E.field, frame, E.gram)
    return Transformed(lat, frame, gram)


def certify(E: SplitOrthogonalBundle, T: Transformed):
    """Gram of H(E, L) must be regular at t = 0 with invertible value there."""
    return certify_gram(T, E.field)


def certify_gram(T: Transformed, field: Field):
    neg = sorted(e for e in T.gram if e < 0)
    if neg:
        raise CertificateFailed(f"orthogonality certificate failed: pole of order {-neg[0]}")
    d = T.gram_at(0, field).det()
    if not d:
        raise CertificateFailed("orthogonality certificate failed: degenerate at x")
    return d


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HeckeReport:
    input_type: tuple
    output_type: tuple
    gram_det_at_x: object
    w2_in: int
    w2_out: int
    stratum_i: int
    reciprocity_ok: bool
    two_step_type: tuple

    def to_json(self) -> dict:
        return {"input_type": list(self.input_type), "output_type": list(self.output_type),
                "gram_det_at_x": str(self.gram_det_at_x), "w2_in": self.w2_in,
                "w2_out": self.w2_out, "stratum_i": self.stratum_i,
                "reciprocity_ok": self.reciprocity_ok, "two_step_type": list(self.two_step_type)}

    def consistent(self) -> list[str]:
        """Names of the invariants this report violates."""
        bad = []
        if not self.gram_det_at_x:
            bad.append("certificate")
        if sum(self.output_type) != 0:
            bad.append("degree sum")
        if (self.w2_in + self.stratum_i - self.w2_out) % 2:
            bad.append("w2 parity")
        if not self.reciprocity_ok:
            bad.append("reciprocity")
        if self.two_step_type != self.output_type:
            bad.append("two-step")
        return bad


def _check_lagrangian(E: SplitOrthogonalBundle, L: Submodule) -> ExtendedForm:
    _, ef = fiber_module(E)
    if L.r != E.r or L.field != E.field:
        raise ValueError("submodule does not live in the fiber of E")
    chk = is_lagrangian(ef, L)
    if not chk:
        raise NotLagrangian("not lagrangian: " + "; ".join(chk.reasons))
    return ef


def hecke_type(E: SplitOrthogonalBundle, L: Submodule) -> tuple:
    return tuple(a + 1 for a in hecke_plain(E.degrees, L))


@lru_cache(maxsize=8192)
def _certified(gram: Matrix, L: Submodule) -> tuple:
    """Lagrangian check, frame and Gram certificate; none of it depends on the degrees."""
    qs = QuadraticSpace(gram.nrows, gram.field, gram)
    ef = extend_form(qs)
    chk = is_lagrangian(ef, L)
    if not chk:
        raise NotLagrangian("not lagrangian: " + "; ".join(chk.reasons))
    lat = jet_lattice(gram.field, gram.nrows, L).shift(-1)
    frame = lat.basis()
    T = Transformed(lat, frame, laurent_gram(gram.field, frame, gram))
    return T, certify_gram(T, gram.field)


def hecke_orthogonal(E: SplitOrthogonalBundle, L: Submodule, extras: bool = True) -> HeckeReport:
    if L.r != E.r or L.field != E.field:
        raise ValueError("submodule does not live in the fiber of E")
    T, d = _certified(E.gram, L)
    out = hecke_type(E, L)
    i = L.projection().dim
    rec = verify_reciprocity(E, L, T) if extras else True
    two = hecke_two_step(E, L) if extras else out
    return HeckeReport(splitting_type(E.degrees), out, d, w2_parity(E.degrees), w2_parity(out),
                       i, rec, two)


def elementary(lat: LocalLattice, frame: list[dict], fiber: list, G: Subspace) -> LocalLattice:
    """{s in lat : class of s in lat/t lat lies in G}.

    ``fiber[k]`` are the coordinates of frame[k] in the model of lat/t lat
    that G lives in.
    """
    fld, r = lat.field, lat.r
    p = fld.characteristic
    # coefficient vectors c with sum c_k fiber[k] in G
    ann = kernel_rows(G.rows, G.n, p) if G.dim else [[fld.one if j == c else fld.zero for j in range(G.n)]
                                                       for c in range(G.n)]
    eqs = [[sum(y[a] * fiber[k][a] for a in range(G.n)) for k in range(len(frame))] for y in ann]
    if p:
        eqs = [[x % p for x in row] for row in eqs]
    coeffs = kernel_rows(eqs, len(frame), p)
    gens = [combine(fld, c, frame) for c in coeffs]
    gens += [combine(fld, [fld.one], [f], shift=1) for f in frame]
    low = min(lat.low, 0)
    return LocalLattice.generated(fld, r, gens, low, lat.high + 1)


def hecke_two_step(E: SplitOrthogonalBundle, L: Submodule) -> tuple:
    """First modify at F = pi(L), then at G = L / eps F inside the new fiber."""
    _check_lagrangian(E, L)
    fld, r = E.field, E.r
    F = L.projection()
    # step 1: sections with s(0) in F
    first = LocalLattice.generated(fld, r, [{0: list(f)} for f in F.rows], 0, 1)
    frame = first.basis()
    Fc = F.complement_indices()

    def model(s: dict) -> list:
        # class of s in first/t first  ~  F + V/F via (s(0) in F-coordinates, s'(0) mod F)
        s0 = s.get(0, [fld.zero] * r)
        s1 = s.get(1, [fld.zero] * r)
        return F.coords(s0) + [F.reduce(s1)[j] for j in Fc]

    fiber = [model(f) for f in frame]
    G = Subspace.span(fld, r, [F.coords(v[:r]) + [F.reduce(v[r:])[j] for j in Fc] for v in L.space.rows])
    if G.dim != r - F.dim:
        raise AssertionError("L / eps F has the wrong dimension")
    second = elementary(first, frame, fiber, G)
    out = second.splitting_type(E.degrees)
    return tuple(a + 1 for a in out)


# ---------------------------------------------------------------------------
# reciprocity

def dual_submodule(T: Transformed, field: Field) -> Submodule:
    """L* in H(E, L)_{2x}: the jets of t K[[t]]^r in the frame of H(E, L)."""
    r = len(T.frame)
    vecs = []
    for k in (1, 2):
        for i in range(r):
            c = T.lattice.fiber_coords(T.frame, unit_vector(field, r, i, k))
            vecs.append(c)
    return make_submodule(Ambient(r, field), vecs)


def back_transform(E: SplitOrthogonalBundle, T: Transformed, Lstar: Submodule) -> LocalLattice:
    """Lattice of H(H(E, L), L*) inside K((t))^r."""
    fld = E.field
    r = E.r
    gens = []
    for v in Lstar.space.rows:
        a, b = v[:r], v[r:]
        g0 = combine(fld, a, T.frame)
        g1 = combine(fld, b, T.frame, shift=1)
        gens.append(combine(fld, [fld.one, fld.one], [g0, g1], shift=-1))
    gens += [combine(fld, [fld.one], [f], shift=1) for f in T.frame]
    low = T.lattice.low - 1
    return LocalLattice.generated(fld, r, gens, low, T.lattice.high + 2)


def reciprocity_details(E: SplitOrthogonalBundle, L: Submodule, T: Transformed | None = None) -> dict:
    fld = E.field
    T = T or transform(E, L)
    certify_gram(T, fld)
    Lstar = dual_submodule(T, fld)
    G0 = T.gram_at(0, fld)
    G1 = T.gram_at(1, fld)
    ef2 = extend_form(QuadraticSpace(E.r, fld, G0), first_order=G1)
    lag = bool(is_lagrangian(ef2, Lstar))
    back = back_transform(E, T, Lstar)
    std = LocalLattice.standard(fld, E.r)
    mid_type = T.lattice.splitting_type(E.degrees)
    back_type = back.splitting_type(E.degrees)
    return {"dual_lagrangian": lag, "lattice_restored": back.same_as(std),
            "type_restored": back_type == splitting_type(E.degrees),
            "w2_restored": w2_parity(back_type) == w2_parity(E.degrees),
            "middle_type": mid_type, "dual_stratum": Lstar.projection().dim}


def verify_reciprocity(E: SplitOrthogonalBundle, L: Submodule, T: Transformed | None = None) -> bool:
    d = reciprocity_details(E, L, T)
    return d["dual_lagrangian"] and d["lattice_restored"] and d["type_restored"] and d["w2_restored"]


# ---------------------------------------------------------------------------

INFINITY = "inf"


def hecke_curve(E: SplitOrthogonalBundle, F: Subspace, samples) -> list[dict]:
    """H(E, L_c) along the line of Lagrangians over an isotropic plane F."""
    amb, ef = fiber_module(E)
    fld = E.field
    if F.dim != 2 or F.n != E.r:
        raise ValueError("not an isotropic plane")
    from .quad_space import is_isotropic
    if not is_isotropic(ef.parent, F):
        raise ValueError("not an isotropic plane")
    out = []
    for c in samples:
        if c == INFINITY:
            eps_dual = [[fld(int(j == k + 2)) for j in range(4)] for k in range(2)]
            pt = ModelPoint("orthogonal", 2, F, Subspace.span(fld, 4, eps_dual))
            L = project(pt, ef)
        else:
            c = fld(c)
            om = Matrix.from_rows(fld, [[0, c], [-c, 0]], 2)
            L = lagrangian_from_skew(ef, SkewDatum(F, om))
        T = transform(E, L)
        d = certify(E, T)
        out.append({"sample": str(c), "type": hecke_type(E, L), "gram_det_at_x": d,
                    "stratum_i": L.projection().dim})
    return out
