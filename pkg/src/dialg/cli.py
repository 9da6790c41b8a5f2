"""Command-line interface.

Exit codes: 0 when every check passes (or the queried property holds),
1 when a mathematical check fails, 2 on usage or parse errors.
Algebra arguments are file paths or catalog names (``k1``, ``m2d``, ...).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog
from .algebra import Algebra, center, check_axioms, derived, hom_to_field_dim, is_perfect
from .cohomology import h2, multiplier
from .errors import (
    AmbientMismatchError,
    DialgError,
    ExtensionMismatchError,
    FieldError,
    FormatError,
)
from .extensions import (
    CentralExtension,
    certify_universal,
    compose,
    find_covering,
    is_central,
    splits,
    universal_central_extension,
)
from .io import parse_algebra, parse_extension, write_algebra, write_extension
from .linalg import Field
from .verify import FAIL, format_table, verify_theorems

USAGE_ERRORS = (FormatError, FieldError, ExtensionMismatchError, AmbientMismatchError)


class UsageError(Exception):
    pass


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _read(path: str) -> str:
    p = Path(path)
    if p.is_file():
        return p.read_text()
    name = p.name.removesuffix(".dialg")
    if name in catalog.CATALOG and p.parent == Path("."):
        return catalog.catalog_text(name)
    raise UsageError(f"no such file or catalog algebra: {path}")


def _field(args) -> Field | None:
    return Field.from_spec(args.field) if args.field else None


def _algebra(args, path: str) -> Algebra:
    return parse_algebra(_read(path), _field(args))


def _extension(args, path: str) -> CentralExtension:
    return parse_extension(_read(path), _field(args))


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _format_matrix(field: Field, rows) -> list[str]:
    return ["  " + " ".join(field.format(v) for v in row) for row in rows]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_check(args) -> int:
    L = _algebra(args, args.algebra)
    report = check_axioms(L)
    print(f"axioms={'pass' if report.ok else 'fail'} violations={len(report.violations)}")
    for v in report.violations:
        i, j, k = (t + 1 for t in v.triple)
        lhs = " ".join(L.field.format(x) for x in v.lhs)
        rhs = " ".join(L.field.format(x) for x in v.rhs)
        print(f"violation identity={v.identity} triple={i},{j},{k} lhs=[{lhs}] rhs=[{rhs}]")
    return 0 if report.ok else 1


def cmd_invariants(args) -> int:
    L = _algebra(args, args.algebra)
    print(f"dim={L.dim} derived={derived(L).dim} center={center(L).dim} perfect={_yes(is_perfect(L))}")
    print(f"hom_to_field={hom_to_field_dim(L)}")
    return 0


def cmd_multiplier(args) -> int:
    L = _algebra(args, args.algebra)
    res = multiplier(L)
    print(f"dim M(L) = {res.h2_dim}")
    print(f"multiplier_dim={res.h2_dim}")
    if args.verbose:
        for t, rep in enumerate(res.representatives, start=1):
            print(f"# representative {t}")
            for (op, i, j, _), v in sorted(rep.entries().items()):
                print(f"cocycle {op} {i + 1} {j + 1} 1 {L.field.format(v)}")
    return 0


def cmd_h2(args) -> int:
    L = _algebra(args, args.algebra)
    res = h2(L, args.k)
    print(f"z2_dim={res.z2_dim} b2_dim={res.b2_dim} h2_dim={res.h2_dim} k={args.k}")
    return 0


def cmd_cover(args) -> int:
    L = _algebra(args, args.algebra)
    E = universal_central_extension(L)
    print(f"kernel_dim={E.kernel_dim} cover_dim={E.total.dim}", file=sys.stderr if not args.output else sys.stdout)
    _emit(args, write_extension(E))
    return 0


def cmd_split(args) -> int:
    E = _extension(args, args.extension)
    beta = splits(E)
    print(f"splits={_yes(beta is not None)}")
    if beta is not None:
        print("# homomorphic section (rows of the matrix total <- base)")
        print("\n".join(_format_matrix(E.field, beta.matrix)))
    return 0 if beta is not None else 1


def cmd_covers(args) -> int:
    E, E1 = _extension(args, args.source), _extension(args, args.target)
    if E.field != E1.field:
        raise FieldError("extensions are over different fields")
    cov = find_covering(E, E1)
    print(f"covers={_yes(cov.covers)} unique={_yes(cov.unique)} solution_space_dim={cov.solution_space_dim}")
    if cov.covers and args.verbose:
        print("# covering map")
        print("\n".join(_format_matrix(E.field, cov.witness.map.matrix)))
    return 0 if cov.covers else 1


def cmd_certify(args) -> int:
    E = _extension(args, args.extension)
    cert = certify_universal(E)
    print(f"universal={_yes(cert.ok)}")
    for reason in cert.reasons:
        print(f"# {reason}")
    return 0 if cert.ok else 1


def cmd_compose(args) -> int:
    E1, E2 = _extension(args, args.first), _extension(args, args.second)
    E3 = compose(E1, E2)
    print(f"kernel_dim={E3.kernel_dim} central={_yes(is_central(E3))}", file=sys.stderr if not args.output else sys.stdout)
    _emit(args, write_extension(E3))
    return 0


def cmd_verify(args) -> int:
    L = _algebra(args, args.algebra)
    checks = verify_theorems(L, seed=args.seed, samples=args.samples)
    print(format_table(checks))
    failed = sum(c.status == FAIL for c in checks)
    print(f"rows={len(checks)} failed={failed}")
    return 1 if failed else 0


def cmd_gen(args) -> int:
    field = _field(args) or Field.rationals()
    family, params = args.family, args.params
    try:
        if family == "catalog":
            (name,) = params
            L = catalog.load(name, field if args.field else None)
        elif family == "random":
            (n,) = map(int, params)
            L = catalog.gen_random(field, n, args.seed)
        elif family in catalog.GENERATORS:
            (n,) = map(int, params)
            L = catalog.GENERATORS[family](n, field)
        else:
            raise UsageError(f"unknown family {family!r}; choose from catalog, {', '.join(catalog.GENERATORS)}")
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad parameters for {family}: {exc}") from None
    _emit(args, write_algebra(L))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dialg", description="Multipliers, covers and central extensions of dialgebras.")
    parser.add_argument("--field", help="reinterpret integral constants over Q or p=<prime>")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        p.add_argument("--field", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        return p

    add("check", cmd_check, "check the dialgebra identities").add_argument("algebra")
    add("invariants", cmd_invariants, "derived ideal, center, perfectness").add_argument("algebra")
    p = add("multiplier", cmd_multiplier, "dimension of the multiplier")
    p.add_argument("algebra")
    p.add_argument("-v", "--verbose", action="store_true", help="print representative cocycles")
    p = add("h2", cmd_h2, "second cohomology with coefficients F^k")
    p.add_argument("algebra")
    p.add_argument("-k", type=int, default=1)
    p = add("cover", cmd_cover, "universal central extension of a perfect algebra")
    p.add_argument("algebra")
    p.add_argument("-o", "--output")
    add("split", cmd_split, "find a homomorphic section").add_argument("extension")
    p = add("covers", cmd_covers, "does the first extension (uniquely) cover the second")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("-v", "--verbose", action="store_true")
    add("certify-universal", cmd_certify, "certify universality").add_argument("extension")
    p = add("compose", cmd_compose, "compose G -> L with L -> H")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-o", "--output")
    p = add("verify-theorems", cmd_verify, "run the structural checks on one algebra")
    p.add_argument("algebra")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=3)
    p = add("gen", cmd_gen, "generate an algebra file")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (UsageError, *USAGE_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DialgError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
