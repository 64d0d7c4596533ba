"""Command-line front end: verify, dump-quintic, certify-germ, lattice eval.

Everything is hermetic: inputs are built in or local files, and identical
invocations print identical output apart from the report timestamp.  Exit
codes: 0 when every executed check passes or is skipped, 1 when any check
fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import divcalc, germlab, quintic, scenarios
from .exactnum import embed_real, render_element

MAX_REAL_DIGITS = 1000

CONFIG_KEYS = ("suites", "format", "real_digits", "verbose")


@dataclass
class CliConfig:
    """Effective settings after merging flags, config file, and defaults."""

    suites: tuple[str, ...] = tuple(scenarios.SUITES)
    output_format: str = "text"
    real_digits: int = 6
    verbose: bool = False

    def __post_init__(self):
        if not self.suites:
            raise ValueError("at least one suite is required")
        for name in self.suites:
            if name not in scenarios.SUITES:
                raise ValueError(f"unknown suite {name!r}")
        if self.output_format not in ("json", "markdown", "text"):
            raise ValueError(f"unknown format {self.output_format!r}")
        if not 1 <= self.real_digits <= MAX_REAL_DIGITS:
            raise ValueError(f"real digits must be in 1..{MAX_REAL_DIGITS}")


def read_config_file(path: str) -> dict:
    """Key-value settings, one ``key = value`` pair per line, '#' comments.

    Recognized keys: ``suites`` (comma-separated), ``format``,
    ``real_digits``, ``verbose`` (true/false).
    """
    settings: dict = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or key not in CONFIG_KEYS:
            raise ValueError(f"bad config line: {raw!r}")
        if key == "suites":
            settings["suites"] = tuple(s.strip() for s in value.split(",") if s.strip())
        elif key == "format":
            settings["output_format"] = value
        elif key == "real_digits":
            settings["real_digits"] = int(value)
        elif key == "verbose":
            settings["verbose"] = value.lower() in ("1", "true", "yes", "on")
    return settings


def merge_config(args, parser: argparse.ArgumentParser) -> CliConfig:
    settings: dict = {}
    if getattr(args, "config", None):
        try:
            settings.update(read_config_file(args.config))
        except (OSError, ValueError) as err:
            parser.error(f"config file: {err}")
    if getattr(args, "suite", None):
        settings["suites"] = tuple(args.suite)
    if getattr(args, "format", None):
        settings["output_format"] = args.format
    if getattr(args, "real", None) is not None:
        settings["real_digits"] = args.real
    if getattr(args, "verbose", False):
        settings["verbose"] = True
    try:
        return CliConfig(**settings)
    except ValueError as err:
        parser.error(str(err))


def _output_path(name: str, explicit: str | None) -> Path | None:
    if explicit:
        return Path(explicit)
    directory = os.environ.get("GODEAUX_OUTPUT_DIR")
    if directory:
        return Path(directory) / name
    return None


def cmd_verify(args, parser) -> int:
    config = merge_config(args, parser)
    reports = scenarios.run_suites(config.suites)
    if config.output_format == "json":
        text = scenarios.reports_to_json(reports)
    elif config.output_format == "markdown":
        text = "\n\n".join(scenarios.report_to_markdown(r) for r in reports)
    else:
        text = "\n\n".join(scenarios.report_to_text(r) for r in reports)
    destination = _output_path(f"report.{config.output_format}", args.output)
    if destination:
        destination.parent.mkdir(parents=True, exist_ok=True)
        destination.write_text(text + "\n", encoding="utf-8")
        print(f"report written to {destination}")
    else:
        print(text)
    return 0 if all(r.ok for r in reports) else 1


def cmd_dump_quintic(args, parser) -> int:
    config = merge_config(args, parser)
    bundle = quintic.build_quintic()
    print("F5 =", bundle.f5)
    if args.real is not None:
        digits = config.real_digits
        from .exactnum import U
        rows = [("u", U)] + [(name, getattr(bundle.parameters, name))
                             for name in "abcdef"]
        print(f"\ncertified real intervals ({digits} digits):")
        for name, value in rows:
            interval = embed_real(value, digits)
            print(f"  {name} = {render_element(value)} ~ "
                  f"{interval.decimal(digits)} "
                  f"(width < 10^-{digits})")
    return 0


def cmd_certify_germ(args, parser) -> int:
    config = merge_config(args, parser)
    if bool(args.point) == bool(args.input):
        parser.error("exactly one of --point or --input is required")
    if args.point:
        index = {"a1": 1, "a2": 2, "a3": 3, "a4": 4}.get(args.point)
        if index is None:
            parser.error("--point must be one of a1, a2, a3, a4")
        bundle = quintic.build_quintic()
        germ = germlab.localize(bundle, index)
        label = f"vertex {args.point}"
    else:
        try:
            text = Path(args.input).read_text(encoding="utf-8")
            germ = germlab.germ_from_text(text)
        except OSError as err:
            parser.error(str(err))
        except Exception as err:  # parse errors
            parser.error(f"cannot parse germ: {err}")
        label = args.input
    try:
        cert = germlab.tilde_e8_certificate(germ)
    except germlab.GermError as err:
        print(f"{label}: FAIL at stage {err.stage}: {err}")
        if err.witness is not None:
            print(f"  witness: {err.witness}")
        return 1
    if config.verbose:
        print(f"germ: {germ}")
        print(f"square root of the quadratic part: {cert.square_root_form}")
        print(f"discriminant germ: {cert.discriminant_germ}")
        print(f"cube line: {cert.tangent_cone_form}")
        alpha, beta, gamma = cert.principal_part
        print(f"principal part (alpha, beta, gamma) = "
              f"({render_element(alpha)}, {render_element(beta)}, "
              f"{render_element(gamma)})")
        print(f"normalization: {cert.normalization}")
        print(f"resolvent discriminant: {render_element(cert.resolvent_discriminant)}")
    verdict = "PASS" if cert.passed else "FAIL"
    print(f"{label}: {verdict} "
          f"(disc = {render_element(cert.resolvent_discriminant)})")
    return 0 if cert.passed else 1


def cmd_lattice_eval(args, parser) -> int:
    if args.decls:
        try:
            text = Path(args.decls).read_text(encoding="utf-8")
        except OSError as err:
            parser.error(str(err))
        lattice = divcalc.parse_lattice(text)
    else:
        lattice = scenarios.v_lattice()
    try:
        value = divcalc.evaluate_expression(lattice, args.expression)
    except Exception as err:
        parser.error(f"cannot evaluate expression: {err}")
    print(value)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="godeaux",
        description="Exact verifier for the invariant quintic construction "
                    "and its double-plane divisor calculus.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run verification suites")
    verify.add_argument("--suite", action="append",
                        choices=sorted(scenarios.SUITES),
                        help="suite to run (repeatable; default: all)")
    verify.add_argument("--format", choices=("json", "markdown", "text"),
                        help="output format (default: text)")
    verify.add_argument("--output", help="write the report to this file")
    verify.add_argument("--config", help="optional key=value config file")
    verify.add_argument("--verbose", action="store_true")
    verify.set_defaults(func=cmd_verify)

    dump = sub.add_parser("dump-quintic",
                          help="print the quintic with exact coefficients")
    dump.add_argument("--real", type=int, nargs="?", const=6, metavar="N",
                      help="also print certified decimal intervals with N digits")
    dump.add_argument("--config", help="optional key=value config file")
    dump.set_defaults(func=cmd_dump_quintic)

    certify = sub.add_parser("certify-germ",
                             help="run the normal-form certificate on one germ")
    certify.add_argument("--point", help="built-in vertex germ: a1, a2, a3, a4")
    certify.add_argument("--input", help="file with a germ in the polynomial "
                                         "grammar (variables x, y, z)")
    certify.add_argument("--verbose", action="store_true",
                         help="print every pipeline stage")
    certify.add_argument("--config", help="optional key=value config file")
    certify.set_defaults(func=cmd_certify_germ)

    lattice = sub.add_parser("lattice", help="declared-lattice utilities")
    lattice_sub = lattice.add_subparsers(dest="lattice_command", required=True)
    lat_eval = lattice_sub.add_parser(
        "eval", help="evaluate a class expression ('.' pairs two classes)")
    lat_eval.add_argument("expression")
    lat_eval.add_argument("--decls",
                          help="lattice declaration file (default: the "
                               "built-in resolution lattice)")
    lat_eval.set_defaults(func=cmd_lattice_eval)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
