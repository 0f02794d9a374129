"""Command-line interface: descriptor ingestion and deterministic reports.

Every subcommand reads an exact JSON descriptor, runs one of the library
operations, and prints a single JSON report to stdout.  Reports embed the
schema tag, the descriptor hash and all effective parameters, and are
byte-identical across runs with identical inputs and seeds.  Exit codes:
0 ok or positive evidence, 1 invalid input, 2 non-integrable module,
3 negative evidence, 4 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .connection import NotIntegrableError, integrability_check
from .corpus import build_corpus, corpus_by_label
from .curves import UnitPoint, curve_witness_search, specialize
from .descriptor import (
    DescriptorError,
    ModuleDescriptor,
    descriptor_sha256,
    load_module_descriptor,
    load_poly_descriptor,
    module_descriptor_to_dict,
)
from .laurent import RadiusVector
from .newton import AlignedInterval, dominant_term, shrink_interval, unit_certificate_check
from .padic import LogRadius, PAdicRational, parse_fraction
from .radius import ProbeOutcome, Verdict, intrinsic_radius, oc_ir_test, taylor_probe

SCHEMA = "nabla-radius/1"

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NOT_INTEGRABLE = 2
EXIT_NEGATIVE = 3
EXIT_INCONCLUSIVE = 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID) -> None:
        super().__init__(message)
        self.code = code


def _parse_fraction_arg(text: str, what: str) -> Fraction:
    try:
        return parse_fraction(text)
    except ValueError:
        raise CliError(f"invalid {what}: {text!r}") from None


def _parse_radius_arg(text: str, what: str) -> LogRadius:
    try:
        return LogRadius.parse(text)
    except ValueError:
        raise CliError(f"invalid {what}: {text!r}") from None


def _radius_vector(tokens: Optional[list[str]], dims: int) -> RadiusVector:
    if not tokens:
        return RadiusVector.ones(dims)
    entries = [_parse_radius_arg(t, "radius exponent") for t in tokens]
    if len(entries) == 1:
        entries = entries * dims
    if len(entries) != dims:
        raise CliError(
            f"got {len(tokens)} radius values for a module with {dims} variables"
        )
    return RadiusVector(tuple(entries))


def _load(path: str) -> tuple[ModuleDescriptor, dict]:
    descriptor = load_module_descriptor(path)
    envelope = {
        "schema": SCHEMA,
        "descriptor_sha256": descriptor_sha256(descriptor),
        "label": descriptor.label,
    }
    return descriptor, envelope


def _point(text: str, prime: int) -> UnitPoint:
    coords = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            raise CliError("empty coordinate in --point")
        coords.append(PAdicRational(_parse_fraction_arg(token, "coordinate"), prime))
    try:
        return UnitPoint(tuple(coords))
    except ValueError as exc:
        raise CliError(str(exc)) from None


def cmd_validate(args: argparse.Namespace) -> tuple[dict, int]:
    report: dict = {"schema": SCHEMA, "command": "validate"}
    try:
        descriptor, envelope = _load(args.descriptor)
    except (DescriptorError, OSError) as exc:
        report.update(
            {
                "status": "schema-error",
                "error": str(exc),
                "descriptor_sha256": None,
                "label": None,
            }
        )
        return report, EXIT_INVALID
    report.update(envelope)
    violation = integrability_check(descriptor.module)
    if violation is not None:
        report.update(
            {
                "status": "non-integrable",
                "violation": {
                    "i": violation.i,
                    "j": violation.j,
                    "curvature": violation.curvature.to_records(),
                },
            }
        )
        return report, EXIT_NOT_INTEGRABLE
    report.update({"status": "ok", "violation": None})
    return report, EXIT_OK


def cmd_ir(args: argparse.Namespace) -> tuple[dict, int]:
    descriptor, envelope = _load(args.descriptor)
    module = descriptor.module
    rho = _radius_vector(args.radius, module.dims)
    window = _parse_fraction_arg(args.window, "window")
    report = intrinsic_radius(module, rho, args.depth, window, args.depth_cap)
    doc = {
        "schema": SCHEMA,
        "command": "ir",
        **envelope,
        "parameters": {
            "depth": args.depth,
            "window": str(window),
            "radius": rho.exponent_strs(),
        },
        **report.to_json_dict(),
    }
    return doc, EXIT_OK


def cmd_oc(args: argparse.Namespace) -> tuple[dict, int]:
    descriptor, envelope = _load(args.descriptor)
    tol = _parse_fraction_arg(args.tol, "tol")
    window = _parse_fraction_arg(args.window, "window")
    verdict = oc_ir_test(descriptor.module, args.depth, tol, window, args.depth_cap)
    doc = {
        "schema": SCHEMA,
        "command": "oc",
        **envelope,
        "parameters": {
            "depth": args.depth,
            "tol": str(tol),
            "window": str(window),
        },
        **verdict.to_json_dict(),
    }
    if verdict.verdict is Verdict.NOT_OVERCONVERGENT_EVIDENCE:
        return doc, EXIT_NEGATIVE
    if verdict.verdict is Verdict.INCONCLUSIVE:
        return doc, EXIT_INCONCLUSIVE
    return doc, EXIT_OK


def cmd_taylor(args: argparse.Namespace) -> tuple[dict, int]:
    descriptor, envelope = _load(args.descriptor)
    eta = _parse_radius_arg(args.eta, "eta exponent")
    lam = _parse_radius_arg(getattr(args, "lam"), "lambda exponent")
    report = taylor_probe(descriptor.module, eta, lam, args.depth, args.depth_cap)
    doc = {
        "schema": SCHEMA,
        "command": "taylor",
        **envelope,
        "parameters": {"bound": args.depth},
        **report.to_json_dict(),
    }
    if report.outcome is ProbeOutcome.FAIL:
        return doc, EXIT_NEGATIVE
    if report.outcome is ProbeOutcome.INCONCLUSIVE:
        return doc, EXIT_INCONCLUSIVE
    return doc, EXIT_OK


def cmd_specialize(args: argparse.Namespace) -> tuple[dict, int]:
    descriptor, envelope = _load(args.descriptor)
    module = descriptor.module
    point = _point(args.point, module.prime)
    curve = specialize(module, args.direction, point)
    label = descriptor.label
    curve_label = f"{label}-curve-t{args.direction}" if label else None
    curve_descriptor = ModuleDescriptor(module=curve, label=curve_label)
    doc = {
        "schema": SCHEMA,
        "command": "specialize",
        **envelope,
        "parameters": {
            "direction": args.direction,
            "point": point.coordinate_strs(),
        },
        "module": module_descriptor_to_dict(curve_descriptor),
    }
    return doc, EXIT_OK


def cmd_cutcheck(args: argparse.Namespace) -> tuple[dict, int]:
    descriptor, envelope = _load(args.descriptor)
    tol = _parse_fraction_arg(args.tol, "tol")
    window = _parse_fraction_arg(args.window, "window")
    report = curve_witness_search(
        descriptor.module,
        depth=args.depth,
        trials=args.trials,
        seed=args.seed,
        tol=tol,
        window=window,
        depth_cap=args.depth_cap,
    )
    doc = {
        "schema": SCHEMA,
        "command": "cutcheck",
        **envelope,
        "parameters": {
            "depth": args.depth,
            "trials": args.trials,
            "seed": args.seed,
            "tol": str(tol),
            "window": str(window),
        },
        **report.to_json_dict(),
    }
    verdict = report.verdict.verdict
    if verdict is Verdict.NOT_OVERCONVERGENT_EVIDENCE:
        return doc, EXIT_NEGATIVE
    if verdict is Verdict.INCONCLUSIVE:
        return doc, EXIT_INCONCLUSIVE
    return doc, EXIT_OK


def cmd_techlemma(args: argparse.Namespace) -> tuple[dict, int]:
    try:
        poly, label = load_poly_descriptor(args.poly)
    except (DescriptorError, OSError) as exc:
        raise CliError(str(exc)) from None
    r_alpha = _parse_fraction_arg(args.alpha, "alpha exponent")
    r_beta = _parse_fraction_arg(args.beta, "beta exponent")
    try:
        interval = AlignedInterval.from_exponents(r_alpha, r_beta)
        result = dominant_term(poly, interval)
        certificate = shrink_interval(poly, interval)
        check = unit_certificate_check(poly, certificate, args.samples)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    doc = {
        "schema": SCHEMA,
        "command": "techlemma",
        "label": label,
        "parameters": {
            "alpha_exponent": str(r_alpha),
            "beta_exponent": str(r_beta),
            "samples": args.samples,
        },
        "dominant": {"A": sorted(result.A), "B": sorted(result.B), "n0": result.n0},
        "certificate": certificate.to_json_dict(),
        "unit_check": check.to_json_dict(),
    }
    return doc, (EXIT_OK if check.ok else EXIT_NEGATIVE)


def cmd_corpus(args: argparse.Namespace) -> tuple[dict, int]:
    if args.dump:
        entry = corpus_by_label().get(args.dump)
        if entry is None:
            raise CliError(f"unknown corpus label {args.dump!r}")
        return module_descriptor_to_dict(entry.descriptor), EXIT_OK
    entries = []
    for entry in build_corpus():
        module = entry.descriptor.module
        entries.append(
            {
                "label": entry.label,
                "prime": module.prime,
                "n": module.nvars_annulus,
                "m": module.nvars_disc,
                "rank": module.rank,
                "expected": dict(entry.descriptor.expected or {}),
            }
        )
    return {"schema": SCHEMA, "command": "corpus", "entries": entries}, EXIT_OK


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; reserve 2 for curvature."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nabla-radius", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("validate", cmd_validate, "check descriptor schema and integrability")
    p.add_argument("descriptor")

    p = add("ir", cmd_ir, "windowed intrinsic-radius estimates")
    p.add_argument("descriptor")
    p.add_argument("--depth", type=int, default=200)
    p.add_argument("--window", default="1/4")
    p.add_argument("--radius", action="append", metavar="EXP",
                   help="radius exponent num/den or 'center'; repeat per variable")
    p.add_argument("--depth-cap", type=int, default=512)

    p = add("oc", cmd_oc, "overconvergence verdict at the unit polyradius")
    p.add_argument("descriptor")
    p.add_argument("--depth", type=int, default=200)
    p.add_argument("--tol", default="1/20")
    p.add_argument("--window", default="1/4")
    p.add_argument("--depth-cap", type=int, default=512)

    p = add("taylor", cmd_taylor, "Taylor-term decay probe")
    p.add_argument("descriptor")
    p.add_argument("--eta", required=True, help="eta exponent num/den (0 < eta < 1)")
    p.add_argument("--lambda", dest="lam", default="0",
                   help="inner-radius exponent num/den (default 0, i.e. radius 1)")
    p.add_argument("--depth", type=int, default=24, help="multi-index bound J")
    p.add_argument("--depth-cap", type=int, default=512)

    p = add("specialize", cmd_specialize, "restrict to a coordinate curve")
    p.add_argument("descriptor")
    p.add_argument("--direction", type=int, required=True)
    p.add_argument("--point", required=True, help="comma-separated unit coordinates")

    p = add("cutcheck", cmd_cutcheck, "curve witness search")
    p.add_argument("descriptor")
    p.add_argument("--depth", type=int, default=64)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", default="1/20")
    p.add_argument("--window", default="1/4")
    p.add_argument("--depth-cap", type=int, default=512)

    p = add("techlemma", cmd_techlemma, "dominant-term certificate on an interval")
    p.add_argument("poly", help="one-variable polynomial descriptor path")
    p.add_argument("--alpha", required=True, help="inner endpoint exponent num/den")
    p.add_argument("--beta", required=True, help="outer endpoint exponent num/den")
    p.add_argument("--samples", type=int, default=20)

    p = add("corpus", cmd_corpus, "list or dump bundled example modules")
    p.add_argument("--dump", metavar="LABEL", help="print one descriptor document")

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, code = args.handler(args)
    except CliError as exc:
        print(f"nabla-radius: {exc}", file=sys.stderr)
        return exc.code
    except DescriptorError as exc:
        print(f"nabla-radius: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NotIntegrableError as exc:
        print(f"nabla-radius: {exc}", file=sys.stderr)
        return EXIT_NOT_INTEGRABLE
    except OSError as exc:
        print(f"nabla-radius: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"nabla-radius: {exc}", file=sys.stderr)
        return EXIT_INVALID
    json.dump(report, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
