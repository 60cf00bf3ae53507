"""
Command-line front end.

Structured output goes to stdout as JSON; diagnostics go to stderr.
Exit codes: 0 success / valid / related / census match, 1 a well-formed
but negative answer (invalid system, unrelated systems, census
mismatch), 2 usage, parse, shape or budget errors.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .census import PRESETS, bar_data, load_table, run_census
from .classify.enumerate import compute_GHL2
from .crossed import CrossedSystem, crossed_product, image_algebra, induce_from_section, validate
from .equivalence import find_witness
from .errors import InvalidSystemError, LeibnizLabError
from .field import field_from_descriptor
from .formats import (
    algebra_to_json,
    dumps,
    matrix_to_json,
    read_algebra,
    read_matrix,
    read_system,
    system_to_json,
    write_json,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


def _emit(obj, out=None):
    text = dumps(obj)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _diag(msg):
    print(f"leibniz-lab: {msg}", file=sys.stderr)


def _cap(args):
    bits = getattr(args, "cap", None)
    return None if bits is None else 2**bits


def _jobs(args):
    return getattr(args, "jobs", 1)


def _plot(labels, counts, path, title):
    from .plotting import component_bar_chart

    component_bar_chart(labels, counts, path, title)
    _diag(f"wrote plot {path}")


# -- commands ----------------------------------------------------------------------


def cmd_validate(args):
    datum = read_system(args.file)
    report = validate(datum)
    _emit({"file": args.file, **report.to_dict(datum.field)})
    if not report.valid:
        _diag(f"not a crossed system (failed: {', '.join(report.failed_axioms())})")
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_product(args):
    datum = read_system(args.file)
    report = validate(datum)
    if not report.valid:
        _emit({"file": args.file, **report.to_dict(datum.field)})
        _diag(f"not a crossed system (failed: {', '.join(report.failed_axioms())}); no product written")
        return EXIT_NEGATIVE
    E = crossed_product(CrossedSystem(datum))
    write_json(algebra_to_json(E), args.output)
    basis = [f"g{a + 1}" for a in range(datum.n)] + [f"e{x + 1}" for x in range(datum.m)]
    _emit({"output": args.output, "dim": E.dim, "basis": basis})
    return EXIT_OK


def cmd_induce(args):
    E = read_algebra(args.algebra)
    pi = read_matrix(args.pi, E.field)
    section = read_matrix(args.section, E.field) if args.section else None
    L = read_algebra(args.target, E.field) if args.target else image_algebra(E, pi)
    ind = induce_from_section(E, pi, L, section)
    fld = E.field
    system = system_to_json(ind.datum)
    if args.output:
        write_json(system, args.output)
    _emit(
        {
            "system": system,
            "valid": validate(ind.datum).valid,
            "phi": matrix_to_json(ind.phi, fld),
            "kernel": matrix_to_json(ind.kernel, fld),
            "section": matrix_to_json(ind.section, fld),
        }
    )
    return EXIT_OK


def cmd_equiv(args):
    a, b = read_system(args.a), read_system(args.b)
    for path, d in ((args.a, a), (args.b, b)):
        report = validate(d)
        if not report.valid:
            _diag(f"{path}: not a crossed system (failed: {', '.join(report.failed_axioms())})")
            _emit({"related": None, "invalid": path, **report.to_dict(d.field)})
            return EXIT_NEGATIVE
    res = find_witness(a, b, _cap(args))
    _emit(
        {
            "related": res.related,
            "method": res.method,
            "witness": matrix_to_json(res.witness.r, a.field) if res.related else None,
        }
    )
    return EXIT_OK if res.related else EXIT_NEGATIVE


def cmd_classify(args):
    field = field_from_descriptor(args.field) if args.field else None
    L = read_algebra(args.algebra, field)
    report = compute_GHL2(
        L, args.gdim, method=args.method, cap=_cap(args), jobs=_jobs(args), breakdown=args.breakdown
    )
    if args.plot:
        labels = [f"C{i + 1}" for i in range(len(report.components))]
        sizes = [0 if s is None else s for s in report.component_sizes()]
        _plot(labels, sizes, args.plot, f"classes per component over {L.field}")
    _emit(report.to_dict(), args.output)
    return EXIT_OK


def cmd_census(args):
    field = field_from_descriptor(args.field)
    table = load_table(args.expect) if args.expect else None
    result = run_census(args.preset, field, _cap(args), _jobs(args), table)
    if args.plot:
        labels, counts = bar_data(result)
        _plot(labels, counts, args.plot, f"{args.preset} over {field}")
    _emit(result.to_dict(full=not args.summary), args.output)
    for line in result.mismatches:
        _diag(f"census mismatch: {line}")
    if result.status == "unpinned":
        _diag(f"no pinned expectation for {args.preset} over {field}; counts not checked")
    return EXIT_OK if result.ok else EXIT_NEGATIVE


# -- parser -----------------------------------------------------------------------------


def _bits(text):
    value = int(text)
    if not 0 <= value <= 62:
        raise argparse.ArgumentTypeError("cap must be a bit count between 0 and 62")
    return value


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser():
    # global options may be given before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=_positive, default=argparse.SUPPRESS, help="worker processes (default 1)")
    common.add_argument(
        "--cap",
        type=_bits,
        default=argparse.SUPPRESS,
        help="enumeration cap as a bit count (default: $LEIBNIZ_LAB_CAP or 24)",
    )

    parser = argparse.ArgumentParser(
        prog="leibniz-lab",
        description="Crossed systems, crossed products and extension classes of Leibniz algebras.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("validate", parents=[common], help="check the crossed-system axioms of a system file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("product", parents=[common], help="write the crossed product of a system file")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("induce", parents=[common], help="crossed system induced by a projection and a section")
    p.add_argument("algebra")
    p.add_argument("--pi", required=True, help="matrix file of the projection")
    p.add_argument("--section", help="matrix file of the section (default: pivot section)")
    p.add_argument("--target", help="algebra file of the target (default: induced bracket on the image)")
    p.add_argument("-o", "--output", help="also write the induced system file here")
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("equiv", parents=[common], help="decide whether two systems are cohomologous")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("classify", parents=[common], help="classes of crossed systems of L by a g of given dim")
    p.add_argument("algebra")
    p.add_argument("--gdim", type=_positive, required=True)
    p.add_argument("--field", help="p or Q (default: the algebra file's field)")
    p.add_argument("--method", choices=("auto", "enumerate", "coflag"), default="auto")
    p.add_argument("--breakdown", choices=("g_bracket", "actions"), default="g_bracket")
    p.add_argument("--plot", help="write a bar chart of component sizes (png, pdf, svg)")
    p.add_argument("-o", "--output", help="also write the report here")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("census", parents=[common], help="run a named classification and check pinned counts")
    p.add_argument("preset", choices=list(PRESETS))
    p.add_argument("--field", required=True, help="prime p")
    p.add_argument("--expect", help="expected-count table to use instead of the pinned one")
    p.add_argument("--summary", action="store_true", help="omit the full reports")
    p.add_argument("--plot", help="write a bar chart of the decomposition")
    p.add_argument("-o", "--output", help="also write the report here")
    p.set_defaults(func=cmd_census)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidSystemError as exc:
        _diag(str(exc))
        return EXIT_NEGATIVE
    except (LeibnizLabError, ValueError, ZeroDivisionError, OSError) as exc:
        _diag(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
