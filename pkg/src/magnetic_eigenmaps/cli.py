"""Command line: ``magnetic-eigenmaps {generate,embed,spectrum,diagnose,baseline}``.

Exit codes: 0 success, 2 input/parse error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings

from . import pipeline
from .exceptions import (
    ChargeOutOfRangeError,
    DenseLimitExceededError,
    GraphError,
    IndexOutOfRangeError,
    MissingSpectralGapError,
    NoConvergenceError,
    ParamOutOfRangeError,
    ParseError,
)

EXIT_PARSE = 2
EXIT_NUMERIC = 3

_INPUT_ERRORS = (
    ParseError,
    GraphError,
    ChargeOutOfRangeError,
    ParamOutOfRangeError,
    IndexOutOfRangeError,
    FileNotFoundError,
    json.JSONDecodeError,
)
_NUMERIC_ERRORS = (NoConvergenceError, MissingSpectralGapError, DenseLimitExceededError, FloatingPointError)


def _int_list(text):
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _rotation(text):
    try:
        axis, angle = text.split(",")
        return int(axis), float(angle)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'axis,angle', got {text!r}") from None


def _param(text):
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    key, value = text.split("=", 1)
    try:
        value = json.loads(value)
    except json.JSONDecodeError:
        pass
    return key, value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magnetic-eigenmaps",
        description="Embed directed graphs on a torus with magnetic Laplacian eigenvectors.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", help="edge list, or GML file (.gml)")
    common.add_argument("--generator", help="flow_groups, cluster_hubs, erdos_renyi_digraph, tree, cycle, path")
    common.add_argument("--param", action="append", type=_param, default=[], metavar="KEY=VALUE",
                        help="generator parameter (repeatable)")
    common.add_argument("--config", help="JSON or YAML file with run settings; flags override it")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="output directory (default: out)")
    common.add_argument("--drop-isolated", action="store_true", default=None)

    spectral = argparse.ArgumentParser(add_help=False)
    spectral.add_argument("--g", help="charge k/m in [0, 1/2] (presets: 1/3, 1/4, 2/5, 1/2)")
    spectral.add_argument("--k", type=int, help="number of eigenpairs (default 4)")
    spectral.add_argument("--solver", choices=("dense", "power"))
    spectral.add_argument("--tol", type=float)
    spectral.add_argument("--max-iter", type=int)

    sub.add_parser("generate", parents=[common], help="write a synthetic graph as an edge list")
    embed = sub.add_parser("embed", parents=[common, spectral], help="torus embedding and all outputs")
    embed.add_argument("--axes", type=_int_list, help="eigen indices, e.g. 0,1 or 0,3")
    embed.add_argument("--rotate", type=_rotation, action="append", default=[], metavar="AXIS,ANGLE",
                       help="shift the cut of an eigen index by ANGLE radians (repeatable)")
    sub.add_parser("spectrum", parents=[common, spectral], help="lowest eigenvalues at g and at g = 0")
    sub.add_parser("diagnose", parents=[common, spectral], help="bound ledger and frustration report")
    base = sub.add_parser("baseline", parents=[common], help="diffusion-map coordinates at g = 0")
    base.add_argument("--axes", type=_int_list, help="eigen indices a,b with 1 <= a < b (default 1,2)")
    base.add_argument("--k", type=int)
    return parser


def _config(args) -> pipeline.RunConfig:
    settings = pipeline.load_config_file(args.config) if args.config else {}
    if args.command == "baseline":
        settings.setdefault("axes", (1, 2))
    for name in ("input", "generator", "seed", "out", "drop_isolated", "g", "k", "solver", "tol", "max_iter", "axes"):
        value = getattr(args, name, None)
        if value is not None:
            settings[name] = value
    if args.param:
        settings["params"] = {**settings.get("params", {}), **dict(args.param)}
    if getattr(args, "rotate", None):
        settings["rotate"] = {**settings.get("rotate", {}), **dict(args.rotate)}
    if args.command == "baseline":
        settings["k"] = max(int(settings.get("k", 4)), max(settings["axes"]) + 1)
    if args.command == "generate":
        settings.pop("input", None)
    return pipeline.RunConfig(**settings)


_COMMANDS = {
    "generate": pipeline.cmd_generate,
    "embed": pipeline.cmd_embed,
    "spectrum": pipeline.cmd_spectrum,
    "diagnose": pipeline.cmd_diagnose,
    "baseline": pipeline.cmd_diffusion_baseline,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    caught = []
    try:
        config = _config(args)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            result = _COMMANDS[args.command](config)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _NUMERIC_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    finally:
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    summary = {k: v for k, v in result.items() if k != "report"}
    print(json.dumps(summary, indent=2))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
