"""
persista command line.

    persista barcode FILE [--field P] [--module abs-hom|abs-coh|rel-hom|rel-coh|all]
    persista homology FILE
    persista rips POINTS --max-dim D --max-radius R
    persista verify --suite {duality,les,excision,subdivision,oracle,uct,all} --seed S --count N
    persista diagram BARCODE.tsv [--style diagram|barcode-strips]
    persista example {s2,rp2,square}

Exit status: 0 success, 1 failed assertion or verification, 2 bad input.
"""

import argparse
import os
import sys

from . import __version__
from .algebra import PrimeField
from .core import ValidationError
from .fixtures import S2_CWF, UNIT_SQUARE, rp2_filtration
from .homology import cell_integer_homology
from .io import (
    ParseError, SizeError, build_rips, emit_diagram_svg, load_filtration,
    parse_points, read_barcode, write_barcode, write_filtration,
)
from .persistence import (
    MODULES, DualityViolation, OracleCapExceeded, barcode_absolute_cohomology,
    barcode_absolute_homology, barcode_relative, four_barcodes, reduce,
)
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _prime(text):
    try:
        return PrimeField(int(text)).p
    except ValueError:
        raise argparse.ArgumentTypeError("field must be a prime, got %r" % text) from None


def build_parser():
    ap = _Parser(prog="persista", description="Homology and persistence barcodes over prime fields.")
    ap.add_argument("--version", action="version", version="persista " + __version__)
    sub = ap.add_subparsers(dest="verb", parser_class=_Parser)

    b = sub.add_parser("barcode", help="persistence barcodes of a .flt or .cwf filtration")
    b.add_argument("file")
    b.add_argument("--field", type=_prime, default=2)
    b.add_argument("--module", choices=MODULES + ("all",), default="abs-hom")
    b.add_argument("--format", choices=("tsv", "json"), default="tsv")
    b.add_argument("--keep-zero-length", action="store_true",
                   help="keep zero-length pairs, reported by filtration index")
    b.add_argument("-o", "--output")

    h = sub.add_parser("homology", help="integer homology (Betti numbers and torsion) of all cells")
    h.add_argument("file")
    h.add_argument("-o", "--output")

    r = sub.add_parser("rips", help="Vietoris-Rips filtration of a point cloud, written as .cwf",
                       description="Simplex birth is the largest pairwise Euclidean distance "
                                   "among its vertices (not half of it).")
    r.add_argument("points")
    r.add_argument("--max-dim", type=int, required=True)
    r.add_argument("--max-radius", type=float, required=True)
    r.add_argument("--size-cap", type=int, default=10 ** 6)
    r.add_argument("-o", "--output")

    v = sub.add_parser("verify", help="run seeded property suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=50)
    v.add_argument("--oracle-cap", type=int, help="cell cap for the rank-invariant oracle")

    d = sub.add_parser("diagram", help="SVG persistence diagram or barcode strips from a barcode TSV")
    d.add_argument("barcode")
    d.add_argument("--style", choices=("diagram", "barcode-strips"), default="diagram")
    d.add_argument("-o", "--output")

    e = sub.add_parser("example", help="write a built-in fixture")
    e.add_argument("name", choices=("s2", "rp2", "square"))
    e.add_argument("-o", "--output")
    return ap


def _emit(text, path, out):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)


def cmd_barcode(args, out):
    f = load_filtration(args.file)
    keep = args.keep_zero_length
    if args.module == "all":
        four = four_barcodes(f, args.field, keep)  # raises before anything is printed
        parts = []
        for name in MODULES:
            parts.append("# %s\n" % name + write_barcode(four.get(name), args.format))
        _emit("".join(parts), args.output, out)
        return 0
    if args.module == "abs-hom":
        bc = barcode_absolute_homology(reduce(f, args.field), f, keep)
    elif args.module == "abs-coh":
        bc = barcode_absolute_cohomology(f, args.field, keep)
    elif args.module == "rel-hom":
        bc = barcode_relative(f, args.field, "homology", keep)
    else:
        bc = barcode_relative(f, args.field, "cohomology", keep)
    _emit(write_barcode(bc, args.format), args.output, out)
    return 0


def cmd_homology(args, out):
    h = cell_integer_homology(load_filtration(args.file))
    lines = ["dim\tbetti\ttorsion\tgroup"]
    for d in range(len(h.betti)):
        tor = ",".join(str(t) for t in h.torsion[d]) or "-"
        lines.append("%d\t%d\t%s\t%s" % (d, h.betti[d], tor, h.group(d)))
    _emit("\n".join(lines) + "\n", args.output, out)
    return 0


def cmd_rips(args, out):
    with open(args.points, encoding="utf-8") as fh:
        pc = parse_points(fh.read())
    f = build_rips(pc, args.max_dim, args.max_radius, args.size_cap)
    _emit(write_filtration(f, "cwf"), args.output, out)
    return 0


def cmd_verify(args, out):
    if args.oracle_cap is not None:
        os.environ["PERSISTA_ORACLE_CAP"] = str(args.oracle_cap)
    results = run_suite(args.suite, args.seed, args.count)
    for r in results:
        out.write(r.line() + "\n")
    ok = all(r.passed for r in results)
    out.write("%s: %d/%d properties passed\n" % ("OK" if ok else "FAILED",
                                                 sum(r.passed for r in results), len(results)))
    return 0 if ok else 1


def cmd_diagram(args, out):
    with open(args.barcode, encoding="utf-8") as fh:
        text = fh.read()
    bc = read_barcode(text, "json" if args.barcode.endswith(".json") else "tsv")
    _emit(emit_diagram_svg(bc, args.style), args.output, out)
    return 0


def cmd_example(args, out):
    if args.name == "s2":
        text = S2_CWF
    elif args.name == "rp2":
        text = write_filtration(rp2_filtration(), "flt")
    else:
        text = "".join("%g %g\n" % pt for pt in UNIT_SQUARE)
    _emit(text, args.output, out)
    return 0


COMMANDS = {
    "barcode": cmd_barcode, "homology": cmd_homology, "rips": cmd_rips,
    "verify": cmd_verify, "diagram": cmd_diagram, "example": cmd_example,
}


def run(argv, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.verb is None:
            raise UsageError("missing command (one of %s)" % ", ".join(COMMANDS))
        return COMMANDS[args.verb](args, out)
    except UsageError as e:
        err.write("persista: error: %s\n" % e)
        return 2
    except (DualityViolation, AssertionError) as e:
        err.write("persista: assertion failed: %s\n" % e)
        return 1
    except (ParseError, ValidationError, SizeError, OracleCapExceeded, OSError, ValueError) as e:
        msg = str(e).splitlines()[0] if str(e) else type(e).__name__
        err.write("persista: error: %s\n" % msg)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
