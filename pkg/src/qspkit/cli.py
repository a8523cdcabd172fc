"""``qspkit`` command line.

Exit status: 0 on success, 2 on invalid input, 3 on numerical failure.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import logging
import sys
from types import SimpleNamespace

import numpy as np

from . import io
from .bench import (BenchConfig, completion_error, forward_error, invert, run_bench, write_csv,
                    write_json)
from .errors import NumericalError, ValidationError
from .gqsp import phases_from_sequence, switch_polynomials
from .nlft import evaluate_protocol
from .weiss import complete

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 2, 3


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _dump(obj, path):
    with _output(path) as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def _cmd_complete(args):
    b = io.poly_from_json(io.load(args.input))
    res = complete(b, eps=args.eps, eta=args.eta)
    _dump(io.completion_to_json(res, b), args.out)


def _cmd_inverse(args):
    data = io.load(args.input)
    io._require(data, "c_hat")
    res = SimpleNamespace(c_hat=io.complex_from_json(data["c_hat"]),
                          a=io.poly_from_json(data["a"]) if "a" in data else None)
    b = io.poly_from_json(data["b"]) if "b" in data else None
    if args.method == "layer-strip" and (b is None or res.a is None):
        raise ValidationError("layer stripping needs both 'a' and 'b' in the input")
    _dump(io.sequence_to_json(invert(args.method, res, b)), args.out)


def _cmd_phases(args):
    F = io.sequence_from_json(io.load(args.sequence))
    shift = F.support_start
    ph = phases_from_sequence(F.shifted(-shift))
    if args.switch:
        ph = switch_polynomials(ph)
    out = io.phases_to_json(ph)
    if shift:
        out["support_shift"] = shift
    _dump(out, args.out)


def _cmd_verify(args):
    pair = io.load(args.pair)
    io._require(pair, "a", "b")
    a, b = io.poly_from_json(pair["a"]), io.poly_from_json(pair["b"])
    F = io.sequence_from_json(io.load(args.sequence))
    row = {"completion_err": completion_error(a, b), "forward_err": forward_error(a, b, F)}
    with _output(args.out) as fh:
        if args.format == "csv":
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(row.keys())
            w.writerow([repr(v) for v in row.values()])
        else:
            json.dump(row, fh, indent=2)
            fh.write("\n")


def _cmd_eval(args):
    ph = io.phases_from_json(io.load(args.phases))
    U = evaluate_protocol(ph, complex(args.z_re, args.z_im), picture=args.picture).matrix
    with _output(args.out) as fh:
        if args.format == "csv":
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["row", "col", "re", "im"])
            for (i, j), v in np.ndenumerate(U):
                w.writerow([i, j, repr(float(v.real)), repr(float(v.imag))])
        else:
            json.dump({"matrix": [io.complex_to_json(r) for r in U]}, fh, indent=2)
            fh.write("\n")


def _int_list(text):
    return [int(t) for t in text.split(",") if t.strip()]


def _str_list(text):
    return [t.strip() for t in text.split(",") if t.strip()]


def _cmd_bench(args):
    cfg = BenchConfig(degrees=args.degrees, eta=args.eta, eps=args.eps, seed=args.seed,
                      methods=args.methods, repeats=args.repeats)
    records = run_bench(cfg, workers=args.workers)
    with _output(args.out) as fh:
        if args.format == "csv":
            write_csv(records, fh)
        else:
            write_json(records, cfg, fh)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps", type=float, default=1e-14, help="target precision (default 1e-14)")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="output format for tabular results")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="qspkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("complete", parents=[common], help="outer completion of a target b")
    p.add_argument("--input", required=True, help="polynomial JSON for b")
    p.add_argument("--eta", type=float, default=None, help="margin with |b| <= 1 - eta")
    p.set_defaults(func=_cmd_complete)

    p = sub.add_parser("inverse-nlft", parents=[common], help="NLFT sequence from a completion")
    p.add_argument("--input", required=True, help="completion JSON")
    p.add_argument("--method", default="half-cholesky",
                   choices=("half-cholesky", "direct", "layer-strip"))
    p.set_defaults(func=_cmd_inverse)

    p = sub.add_parser("phases", parents=[common], help="GQSP phase factors from a sequence")
    p.add_argument("--sequence", required=True)
    p.add_argument("--switch", action="store_true", help="absorb a trailing iX (swap P and Q)")
    p.set_defaults(func=_cmd_phases)

    p = sub.add_parser("verify", parents=[common], help="completion and reconstruction errors")
    p.add_argument("--pair", required=True, help="JSON with 'a' and 'b' polynomials")
    p.add_argument("--sequence", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("eval", parents=[common], help="evaluate a protocol at a point of the circle")
    p.add_argument("--phases", required=True)
    p.add_argument("--z-re", type=float, required=True)
    p.add_argument("--z-im", type=float, required=True)
    p.add_argument("--picture", choices=("analytic", "laurent"), default="analytic")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("bench", parents=[common], help="accuracy/timing sweep")
    p.add_argument("--degrees", type=_int_list, default=[5, 10, 20, 50, 100, 200, 500])
    p.add_argument("--eta", type=float, default=0.5)
    p.add_argument("--methods", type=_str_list, default=["half_cholesky"],
                   help="comma list of direct, half_cholesky, layer_strip")
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--workers", type=int, default=None, help="override QSPKIT_THREADS")
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except ValidationError as exc:
        print(f"qspkit: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"qspkit: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
