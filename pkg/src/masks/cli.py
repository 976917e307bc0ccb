"""Command-line interface.

Subcommands::

    masks check      --model FILE --world W --formula F
    masks announce   --model FILE --formula F [--formula F]...
    masks reduce     --model FILE
    masks product    --model FILE --model FILE [--announce F]... [--cap N]
    masks ckc        --net FILE --input FILE --perturb SPEC...
    masks verify     --nets DIR --input FILE --perturb SPEC... [--external F]...
    masks experiment --nets DIR --mnist-images P --mnist-labels P
                     --perturb SPEC... --agents 1,3,5 --seed 7 --out report.csv

Perturbation syntax: ``affine:LO:HI:STEPS[:axis][:interp]``,
``eps:EPS:METRIC:STEPS``, ``file:PATH`` (one comma-separated point per
line); repeat --perturb for a union.  ``verify`` exits 0 when the input is
verified, 2 on a plural candidate set, 3 on inconsistency.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .dataio import load_idx_dataset
from .ensemble import (Candidates, ExternalSource, Inconsistent, Verified,
                       masks_verify)
from .errors import MasksError
from .experiment import report_to_csv, run_experiment
from .knowledge import ckc
from .logic import announce as announce_model
from .logic import satisfies
from .modelio import format_model, parse_model
from .nn import load_weights_file
from .perturb import (AffineGrid, Composite, EpsilonGrid, Explicit,
                      InputPoint, PerturbationSpec)
from .product import DEFAULT_WORLD_CAP, product
from .reduction import PowerSetModel, reduce_model
from .syntax import parse as parse_formula


def _parse_perturb(arg: str) -> PerturbationSpec:
    kind, _, rest = arg.partition(":")
    if kind == "affine":
        parts = rest.split(":")
        if len(parts) < 3 or len(parts) > 5:
            raise MasksError(f"bad affine spec {arg!r}")
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
        axis = parts[3] if len(parts) > 3 else "diag"
        interp = parts[4] if len(parts) > 4 else "bilinear"
        return AffineGrid(lo, hi, steps, axis, interp)
    if kind == "eps":
        parts = rest.split(":")
        if len(parts) != 3:
            raise MasksError(f"bad eps spec {arg!r}")
        return EpsilonGrid(float(parts[0]), parts[1], int(parts[2]))
    if kind == "file":
        points = []
        for line in Path(rest).read_text().splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                points.append(InputPoint(
                    np.array([float(v) for v in line.split(",")],
                             dtype=np.float32)))
        return Explicit(tuple(points))
    raise MasksError(f"unknown perturbation kind {kind!r}")


def _combine_perturbs(args: list[str]) -> PerturbationSpec:
    specs = [_parse_perturb(a) for a in args]
    return specs[0] if len(specs) == 1 else Composite(tuple(specs))


def _parse_shape(arg: str | None, dim: int) -> tuple[int, int] | None:
    if arg:
        h, _, w = arg.partition("x")
        return (int(h), int(w))
    root = math.isqrt(dim)
    if root * root == dim:
        return (root, root)
    return None


def _read_point(path: str, shape_arg: str | None) -> InputPoint:
    values = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            values.extend(float(v) for v in line.split(","))
    arr = np.array(values, dtype=np.float32)
    return InputPoint(arr, _parse_shape(shape_arg, arr.size))


def _load_nets(directory: str):
    paths = sorted(Path(directory).glob("*.nn"))
    if not paths:
        raise MasksError(f"no *.nn weight files in {directory!r}")
    return [load_weights_file(p) for p in paths], paths


def _cmd_check(args) -> int:
    model = parse_model(Path(args.model).read_text())
    value = satisfies(model, args.world, parse_formula(args.formula))
    print("true" if value else "false")
    return 0


def _cmd_announce(args) -> int:
    model = parse_model(Path(args.model).read_text())
    for text in args.formula:
        model = announce_model(model, parse_formula(text))
    sys.stdout.write(format_model(model))
    return 0


def _cmd_reduce(args) -> int:
    model = parse_model(Path(args.model).read_text())
    classes = frozenset(a.label for a in model.atoms())
    reduced = reduce_model(PowerSetModel(model, classes))
    sys.stdout.write(format_model(reduced.model))
    return 0


def _cmd_product(args) -> int:
    models = [parse_model(Path(p).read_text()) for p in args.model]
    joint = product(models, separator=args.separator, cap=args.cap)
    model = joint.model
    for text in args.announce:
        model = announce_model(model, parse_formula(text))
    sys.stdout.write(format_model(model))
    return 0


def _cmd_ckc(args) -> int:
    net = load_weights_file(args.net)
    x0 = _read_point(args.input, args.shape)
    ks = ckc(net, x0, _combine_perturbs(args.perturb))
    print("robust" if ks.robust else "not-robust")
    for label in sorted(ks.classes):
        print(label)
    return 0


def _cmd_verify(args) -> int:
    nets, _ = _load_nets(args.nets)
    x0 = _read_point(args.input, args.shape)
    sources = [ExternalSource(f"external{i}", parse_formula(text))
               for i, text in enumerate(args.external)]
    outcome, survivors = masks_verify(
        nets, x0, _combine_perturbs(args.perturb), sources)
    match outcome:
        case Verified(label):
            print(f"verified {label}")
            return 0
        case Candidates():
            print("candidates")
            for label in sorted(survivors):
                print(label)
            return 2
        case Inconsistent():
            print("inconsistent")
            return 3
    raise AssertionError


def _cmd_experiment(args) -> int:
    nets, paths = _load_nets(args.nets)
    dataset = load_idx_dataset(args.mnist_images, args.mnist_labels)
    spec = _combine_perturbs(args.perturb)
    counts = [int(v) for v in args.agents.split(",")]
    config = {
        "perturb": ";".join(args.perturb),
        "nets": ";".join(f"{p.name}:{n.digest()[:16]}"
                         for p, n in zip(paths, nets)),
    }
    report = run_experiment(nets, dataset, spec, counts, args.seed, config)
    Path(args.out).write_text(report_to_csv(report), newline="")
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="masks",
        description="Epistemic verification of classifier ensembles")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate a formula at a world")
    p.add_argument("--model", required=True)
    p.add_argument("--world", required=True)
    p.add_argument("--formula", required=True)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("announce", help="apply public announcements")
    p.add_argument("--model", required=True)
    p.add_argument("--formula", action="append", required=True)
    p.set_defaults(func=_cmd_announce)

    p = sub.add_parser("reduce", help="reduce a power-set model")
    p.add_argument("--model", required=True)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("product", help="compose models into a joint model")
    p.add_argument("--model", action="append", required=True)
    p.add_argument("--announce", action="append", default=[])
    p.add_argument("--separator", default="")
    p.add_argument("--cap", type=int, default=DEFAULT_WORLD_CAP)
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("ckc", help="knowledge set of one network")
    p.add_argument("--net", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--perturb", action="append", required=True)
    p.add_argument("--shape")
    p.set_defaults(func=_cmd_ckc)

    p = sub.add_parser("verify", help="verify an input with an ensemble")
    p.add_argument("--nets", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--perturb", action="append", required=True)
    p.add_argument("--external", action="append", default=[])
    p.add_argument("--shape")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("experiment", help="ensemble-size sweep over a dataset")
    p.add_argument("--nets", required=True)
    p.add_argument("--mnist-images", required=True)
    p.add_argument("--mnist-labels", required=True)
    p.add_argument("--perturb", action="append", required=True)
    p.add_argument("--agents", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MasksError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
