"""Command-line front end.  Every subcommand prints JSON on stdout.

Exit status: 0 on success, 1 when a check fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .dual_module import Ambient, NotEpsilonStable, make_submodule, submodule_from_json
from .exact_linalg import Field, Matrix, Subspace
from .hecke import INFINITY, CertificateFailed, SplitOrthogonalBundle, hecke_curve, hecke_orthogonal
from .quad_space import (EnumerationTooLarge, NotLagrangian, QuadraticSpace, extend_form, hyperbolic_space,
                         is_lagrangian)
from .strata import census, stratum_data
from .suites import SUITES, ConfigError, SuiteConfig, run_suite
from .tangent_dual import skew_tangent_dim, tangent_dim


class InputError(ValueError):
    pass


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _vectors(obj, field: Field | None):
    """Spanning vectors from a submodule object, a matrix literal or a bare list of rows."""
    if isinstance(obj, dict):
        if "field" in obj:
            field = Field.parse(obj["field"])
        rows = obj.get("basis", obj.get("rows"))
    else:
        rows = obj
    if field is None:
        field = Field(0)
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("expected a list of vectors")
    return field, [[field(x) for x in r] for r in rows]


def load_submodule(path: str, field: Field | None, r: int | None):
    obj = _read_json(path)
    if isinstance(obj, dict) and "basis" in obj and "r" in obj and "field" in obj:
        # the library's own format: basis vectors are the columns
        L = submodule_from_json(obj)
        if field is not None and L.field != field:
            raise InputError(f"basis is over {L.field.spec}, not {field.spec}")
        return L
    field, rows = _vectors(obj, field)
    if r is None:
        if isinstance(obj, dict) and "r" in obj:
            r = int(obj["r"])
        elif rows:
            r = len(rows[0]) // 2
        else:
            raise InputError("cannot infer r from an empty basis; pass --r")
    if any(len(v) != 2 * r for v in rows):
        raise InputError(f"every vector needs {2 * r} entries")
    return make_submodule(Ambient(r, field), rows)


def load_form(path: str | None, field: Field, r: int) -> QuadraticSpace:
    if path in (None, "hyperbolic"):
        return hyperbolic_space(r, field)
    obj = _read_json(path)
    m = Matrix.from_json(obj, field) if isinstance(obj, dict) else Matrix.from_rows(field, obj, r)
    if m.nrows != r or m.ncols != r:
        raise InputError(f"gram must be {r} x {r}")
    return QuadraticSpace(r, field, m)


def parse_degrees(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"bad degree list {text!r}") from None


def parse_samples(text: str, field: Field) -> list:
    out = []
    for s in text.split(","):
        s = s.strip()
        out.append(INFINITY if s.lower() in ("inf", "infinity") else field(Fraction(s)))
    return out


def load_bundle(args) -> SplitOrthogonalBundle:
    field = Field.parse(args.field)
    degrees = parse_degrees(args.degrees)
    if args.gram in (None, "hyperbolic"):
        return SplitOrthogonalBundle.hyperbolic(degrees, field)
    qs = load_form(args.gram, field, len(degrees))
    return SplitOrthogonalBundle(degrees, qs.b1)


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2, default=str))


# ---------------------------------------------------------------------------

def _field(args) -> Field | None:
    return Field.parse(args.field) if args.field else None


def cmd_classify(args) -> int:
    field = _field(args)
    L = load_submodule(args.basis, field, args.r)
    ef = extend_form(load_form(args.gram, L.field, L.r))
    _emit(stratum_data(L, ef).to_json())
    return 0


def cmd_census(args) -> int:
    field = Field.parse(args.field)
    if not field.characteristic:
        raise InputError("census needs a prime field (fp:P)")
    ef = extend_form(load_form(args.gram, field, args.r))
    c = census(ef, brute_force=args.brute_force or None)
    if args.csv:
        sys.stdout.write(c.to_csv())
    else:
        _emit(c.to_json())
    ok = all(s["count"] == s["predicted"] for s in c.strata)
    if c.brute_force_total is not None:
        ok = ok and c.brute_force_total == c.total
    return 0 if ok else 1


def cmd_hecke(args) -> int:
    E = load_bundle(args)
    L = load_submodule(args.lagrangian, E.field, E.r)
    try:
        rep = hecke_orthogonal(E, L)
    except CertificateFailed as exc:
        _emit({"error": str(exc)})
        return 1
    out = rep.to_json()
    bad = rep.consistent()
    out["violations"] = bad
    _emit(out)
    return 1 if bad else 0


def cmd_curve(args) -> int:
    E = load_bundle(args)
    field, rows = _vectors(_read_json(args.plane), E.field)
    if field != E.field:
        raise InputError("plane and bundle live over different fields")
    F = Subspace.span(field, E.r, rows)
    samples = parse_samples(args.samples, field)
    try:
        out = hecke_curve(E, F, samples)
    except CertificateFailed as exc:
        _emit({"error": str(exc)})
        return 1
    _emit([{**o, "type": list(o["type"]), "gram_det_at_x": str(o["gram_det_at_x"])} for o in out])
    return 0


def cmd_tangent(args) -> int:
    field = _field(args)
    L = load_submodule(args.basis, field, args.r)
    ef = extend_form(load_form(args.gram, L.field, L.r))
    i = L.projection().dim
    base = tangent_dim(L)
    out = base.to_json()
    ok = base.dim_hom0 == base.expected_dim
    if is_lagrangian(ef, L) and i >= L.r // 2 - 1:
        try:
            out["skew_dim"] = skew_tangent_dim(ef, L).skew_dim
        except AssertionError as exc:
            out["skew_error"] = str(exc)
            ok = False
        out["expected_skew_dim"] = i * (L.r - i - 1)
    _emit(out)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    cfg = SuiteConfig(suite=args.suite, trials=args.trials, seed=args.seed, field=Field.parse(args.field),
                      max_rank=args.max_rank, max_degree=args.max_degree, exhaustive=args.exhaustive,
                      jobs=args.jobs)
    rep = run_suite(cfg, timing=args.timing)
    text = rep.dumps()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ortho-hecke", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="stratum data of an eps-stable submodule")
    p.add_argument("--field", help="q or fp:P (default: from the file, else q)")
    p.add_argument("--r", type=int)
    p.add_argument("--basis", required=True, help="JSON file of spanning vectors, or - for stdin")
    p.add_argument("--gram", help="quadratic form file (default: hyperbolic)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("census", help="Lagrangian census over a prime field")
    p.add_argument("--field", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--gram")
    p.add_argument("--brute-force", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_census)

    for name, func, help_ in (("hecke", cmd_hecke, "orthogonal Hecke transformation"),
                              ("curve", cmd_curve, "Hecke types along a line of Lagrangians")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--degrees", required=True, help="comma-separated, e.g. 1,0,0,-1")
        p.add_argument("--gram", default="hyperbolic")
        p.add_argument("--field", default="q")
        p.set_defaults(func=func)
    sub.choices["hecke"].add_argument("--lagrangian", required=True)
    sub.choices["curve"].add_argument("--plane", required=True)
    sub.choices["curve"].add_argument("--samples", default="0,1,2,inf")

    p = sub.add_parser("tangent", help="tangent dimensions at a submodule")
    p.add_argument("--field", help="q or fp:P (default: from the file, else q)")
    p.add_argument("--r", type=int)
    p.add_argument("--basis", required=True)
    p.add_argument("--gram")
    p.set_defaults(func=cmd_tangent)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", default="all", choices=("all",) + SUITES)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", default="q")
    p.add_argument("--max-rank", type=int, default=6)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--exhaustive", action="store_true", help="full rank-6 degree grid")
    p.add_argument("--timing", action="store_true", help="add wall time (breaks byte-identical output)")
    p.add_argument("--output", help="also write the report to this file")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ConfigError, NotEpsilonStable, NotLagrangian, EnumerationTooLarge,
            ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
