"""Command-line front end.

Exit codes: 0 proper (or trivially proper), 1 improper, 2 not free,
3 indeterminate, 64 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import yaml

from . import criterion
from .config import Config, load_config
from .derivation import COACTION_VARS, TwinDerivation, check_free, coaction, format_local_multi
from .errors import NormalizationFailed, RegularValueRequired, TwinPropError
from .multipoly import MultiPoly
from .normalize import normalize
from .parser import ParseError, parse_derivation, parse_local_polynomial, parse_rational, parse_structured
from .report import dumps, format_text, report_to_dict

EXIT_PROPER = 0
EXIT_IMPROPER = 1
EXIT_NOT_FREE = 2
EXIT_INDETERMINATE = 3
EXIT_USAGE = 64

VERDICT_EXIT = {
    criterion.PROPER: EXIT_PROPER,
    criterion.TRIVIALLY_PROPER: EXIT_PROPER,
    criterion.IMPROPER: EXIT_IMPROPER,
    criterion.NOT_FREE: EXIT_NOT_FREE,
    criterion.INDETERMINATE: EXIT_INDETERMINATE,
}


class UsageError(Exception):
    pass


def read_input(args) -> tuple[TwinDerivation, str]:
    if (args.derivation is None) == (args.file is None):
        raise UsageError("give exactly one of a derivation expression or --file")
    if args.derivation is not None:
        return parse_derivation(args.derivation), args.derivation
    text = Path(args.file).read_text(encoding="utf-8")
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError:
        data = None
    if isinstance(data, dict):
        return parse_structured(data), text.strip()
    return parse_derivation(text.strip()), text.strip()


def read_config(args) -> Config:
    config = load_config(args.config) if args.config else Config()
    if args.strict_pole:
        config = Config(**{**config.to_dict(), "strict_pole": True})
    return config


def cmd_check(args) -> int:
    D, text = read_input(args)
    config = read_config(args)
    report = criterion.properness_verdict(D, config)
    print(format_text(report))
    if args.json:
        Path(args.json).write_text(dumps(report_to_dict(report, config, text)), encoding="utf-8")
    return VERDICT_EXIT[report.overall]


def cmd_normalize(args) -> int:
    D, _ = read_input(args)
    config = read_config(args)
    if not check_free(D):
        print("not free: normalization does not apply")
        return EXIT_NOT_FREE
    if D.n == 0:
        print("r is a unit: nothing to normalize")
        return EXIT_PROPER
    try:
        N, shears = normalize(D, config.shear_search_bound)
    except NormalizationFailed as exc:
        print(f"NORMALIZATION_FAILED: {exc}")
        return EXIT_INDETERMINATE
    if not shears:
        print("shears: none")
    for s in shears:
        print(f"shear: {s.kind} lambda={s.lam} mu={s.mu}")
    print(f"normalized: {N}")
    return EXIT_PROPER


def cmd_exp(args) -> int:
    D, _ = read_input(args)
    images = coaction(D)
    if args.s.strip() != "s":
        value = parse_local_polynomial(args.s).with_vars(COACTION_VARS)
        images = {k: _substitute_s(v, value) for k, v in images.items()}
    for name in ("y", "z1", "z2"):
        print(f"{name} -> {format_local_multi(images[name])}")
    return EXIT_PROPER


def _substitute_s(f: MultiPoly, value: MultiPoly) -> MultiPoly:
    out = MultiPoly.zero(COACTION_VARS)
    for k, part in sorted(f.coeffs_in("s").items()):
        out = out + part * value**k
    return out


def cmd_specialized(args) -> int:
    D, _ = read_input(args)
    config = read_config(args)
    if {args.i, args.j} != {1, 2}:
        raise UsageError("--i and --j must be 1 and 2 in some order")
    if D.n == 0 or not check_free(D):
        raise UsageError("specialized check needs a free derivation with r not a unit")
    value = parse_rational(args.lam)
    status = criterion.specialized_check(D, args.i, args.j, value, config)
    print(f"component ({args.i},{args.j}) at t = {value}: {status}")
    return EXIT_PROPER if status == criterion.SATISFIED else EXIT_IMPROPER


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("derivation", nargs="?", help='e.g. "x*dy + 2*y*dz1 + (1+y^2)*dz2"')
    common.add_argument("--file", help="read the derivation (text, or YAML/JSON with keys r, p1, p2)")
    common.add_argument("--config", help="YAML/JSON file: max_basis_size, max_degree, shear_search_bound, seed")
    common.add_argument("--strict-pole", action="store_true", help="require pole order at least 2")

    parser = argparse.ArgumentParser(prog="twinprop", description="Properness of twin-triangular Ga-actions")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="decide properness")
    p.add_argument("--json", help="also write a JSON report to this path")
    p.set_defaults(func=cmd_check)
    p = sub.add_parser("normalize", parents=[common], help="print shears and the normalized derivation")
    p.set_defaults(func=cmd_normalize)
    p = sub.add_parser("exp", parents=[common], help="print the images of y, z1, z2 under the co-action")
    p.add_argument("--s", default="s", help="value of the group parameter (default: symbolic s)")
    p.set_defaults(func=cmd_exp)
    p = sub.add_parser("specialized", parents=[common], help="check one component at one regular value")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.set_defaults(func=cmd_specialized)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (UsageError, RegularValueRequired, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except TwinPropError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
