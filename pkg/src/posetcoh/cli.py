"""Command-line front end.

Subcommands: build (emit example posets/presheaves as JSON), check
(grading, diamond property, cellularity), cohomology (singular or cellular),
compare (both, with the cellularity verdict), signs (incidence signs of a
cell-poset-like input).

Exit codes: 0 on success -- including when compare finds the two
cohomologies differ, which is a finding, not a failure; 1 for malformed
input; 2 for precondition violations such as running a grading-dependent
command on an ungraded poset.
"""

from __future__ import annotations

import argparse
import json
import sys

from .builders import (
    boolean_lattice,
    bruhat_poset,
    circle_poset,
    face_poset,
    khovanov,
    parse_pd,
    partition_lattice,
    rp2_poset,
    suspension_simplex_poset,
    tree_poset,
)
from .cellular import compare, incidence_signs, is_cellular
from .errors import InvalidInput, PreconditionError
from .poset import Poset, has_diamond_property
from .presheaf import Presheaf, constant
from .singular import singular_cohomology
from . import cellular

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_PRECONDITION = 2


def _note(args, message):
    if not args.quiet:
        print(message, file=sys.stderr)


def _emit(data, path=None):
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from None


def _load_poset(path) -> Poset:
    return Poset.from_json_dict(_read_json(path))


def _load_presheaf(args, poset) -> Presheaf:
    if getattr(args, "presheaf", None) and args.constant is not None:
        raise InvalidInput("give either --presheaf or --constant, not both")
    if getattr(args, "presheaf", None):
        return Presheaf.from_json_dict(poset, _read_json(args.presheaf))
    if args.constant is not None:
        if args.constant < 0:
            raise InvalidInput("--constant needs a nonnegative rank")
        return constant(poset, args.constant)
    raise InvalidInput("a presheaf is required: --presheaf FILE or --constant K")


def _int_params(params, count, usage):
    if len(params) != count:
        raise InvalidInput(f"usage: build {usage}")
    try:
        return [int(v) for v in params]
    except ValueError:
        raise InvalidInput(f"usage: build {usage}") from None


def _cmd_build(args):
    family = args.family
    params = args.params
    presheaf = None
    if family == "boolean":
        (n,) = _int_params(params, 1, "boolean N")
        poset = boolean_lattice(n)
    elif family == "partition":
        (n,) = _int_params(params, 1, "partition N")
        poset = partition_lattice(n)
    elif family == "bruhat":
        (n,) = _int_params(params, 1, "bruhat N")
        poset = bruhat_poset(n).poset
    elif family == "tree":
        depth, branching = _int_params(params, 2, "tree DEPTH BRANCHING")
        poset = tree_poset(depth, branching)
    elif family == "circle":
        _int_params(params, 0, "circle")
        poset = circle_poset()
    elif family == "rp2":
        _int_params(params, 0, "rp2")
        poset = rp2_poset()
    elif family == "suspension":
        (n,) = _int_params(params, 1, "suspension N")
        poset = suspension_simplex_poset(n)
    elif family == "cw":
        if len(params) != 1:
            raise InvalidInput("usage: build cw FACETS.json")
        data = _read_json(params[0])
        if not isinstance(data, dict) or "facets" not in data:
            raise InvalidInput("simplicial input needs a 'facets' list")
        poset = face_poset(data["facets"], adjoin_minimum=args.adjoin_minimum)
    elif family == "khovanov":
        if len(params) != 1:
            raise InvalidInput("usage: build khovanov PDCODE.txt")
        try:
            with open(params[0]) as fh:
                text = fh.read()
        except OSError as exc:
            raise InvalidInput(f"cannot read {params[0]}: {exc}") from None
        poset, presheaf = khovanov(parse_pd(text))
    else:
        raise InvalidInput(f"unknown build family {family!r}")
    _note(args, f"built {family} poset with {len(poset)} elements")
    _emit(poset.to_json_dict(), args.out)
    if args.presheaf_out:
        if presheaf is None:
            raise InvalidInput(f"family {family!r} has no associated presheaf")
        _emit(presheaf.to_json_dict(), args.presheaf_out)
    return EXIT_OK


def _cmd_check(args):
    poset = _load_poset(args.poset)
    result = {
        "elements": len(poset),
        "graded": poset.graded,
        "diamond": None,
        "cellular": None,
        "witness": None,
    }
    if poset.graded:
        _note(args, "checking diamond property and cellularity")
        result["diamond"] = has_diamond_property(poset)
        verdict = is_cellular(poset)
        result["cellular"] = verdict.cellular
        if verdict.witness is not None:
            result["witness"] = {
                "element": verdict.witness[0],
                "degree": verdict.witness[1],
            }
    _emit(result)
    return EXIT_OK


def _cmd_cohomology(args):
    poset = _load_poset(args.poset)
    sheaf = _load_presheaf(args, poset)
    _note(args, f"computing {args.method} cohomology")
    if args.method == "singular":
        report = singular_cohomology(poset, sheaf)
    else:
        report = cellular.cellular_cohomology(poset, sheaf)
    _emit(report.to_json_dict())
    return EXIT_OK


def _cmd_compare(args):
    poset = _load_poset(args.poset)
    sheaf = _load_presheaf(args, poset)
    _note(args, "computing both cohomologies")
    report = compare(poset, sheaf)
    _emit(report.to_json_dict())
    return EXIT_OK


def _cmd_signs(args):
    poset = _load_poset(args.poset)
    signs = incidence_signs(poset)
    _emit({f"{x}<{y}": v for (x, y), v in signs.items()})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--quiet", action="store_true",
        help="suppress progress notes on stderr",
    )
    parser = argparse.ArgumentParser(
        prog="posetcoh",
        description=(
            "Cohomology of finite graded posets with presheaf coefficients,"
            " computed on the nerve and cellularly."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser(
        "build", parents=[shared],
        help="emit an example poset (and presheaf where applicable) as JSON",
    )
    b.add_argument(
        "family",
        choices=[
            "boolean", "partition", "bruhat", "tree", "circle", "rp2",
            "suspension", "cw", "khovanov",
        ],
    )
    b.add_argument("params", nargs="*")
    b.add_argument("--out", help="poset output path (default: stdout)")
    b.add_argument("--presheaf-out", help="presheaf output path")
    b.add_argument(
        "--adjoin-minimum", action="store_true",
        help="adjoin a formal minimum below a cw complex's facets",
    )
    b.set_defaults(func=_cmd_build)

    c = sub.add_parser(
        "check", parents=[shared],
        help="report grading, diamond property, and cellularity",
    )
    c.add_argument("poset")
    c.set_defaults(func=_cmd_check)

    for name, func, description in (
        ("cohomology", _cmd_cohomology, "per-degree rank and torsion"),
        ("compare", _cmd_compare, "singular vs cellular comparison report"),
    ):
        s = sub.add_parser(name, parents=[shared], help=description)
        s.add_argument("--poset", required=True)
        s.add_argument("--presheaf", help="presheaf JSON path")
        s.add_argument(
            "--constant", type=int, default=None, metavar="K",
            help="use the constant presheaf of rank K",
        )
        if name == "cohomology":
            s.add_argument(
                "--method", choices=["singular", "cellular"], required=True
            )
        s.set_defaults(func=func)

    g = sub.add_parser(
        "signs", parents=[shared],
        help="incidence signs of a poset whose local groups are all Z",
    )
    g.add_argument("--poset", required=True)
    g.set_defaults(func=_cmd_signs)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
