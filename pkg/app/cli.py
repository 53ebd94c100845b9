"""Command-line surface: rootdata, orbits, module, verify and table.

Exit codes: 0 success, 1 failing suite or failed computation, 2 bad input.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from app.core.exceptions import EngineError, InvalidInput
from app.core.logging_config import setup_logging
from app.models.weyl import WeylGroup, Window
from app.schemas.suite import SUITE_NAMES, TABLE_KINDS, SuiteConfig
from app.services import coeff, gradedmod, rootdata, structure, verification, weyl
from app.services.export_service import ExportService

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2

CONFIG_FIELDS = ("gl", "cartan", "p", "levi", "base", "pi", "window", "suites", "seed", "samples", "out",
                 "format", "timings")


def parse_window(text: str) -> List[int]:
    """'a..b' -> [a, b]."""
    try:
        a, b = text.split("..")
        return [int(a), int(b)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like a..b, got '{text}'")


def attach_window(argv: Sequence[str]) -> List[str]:
    """Glue `--window a..b` into `--window=a..b` so argparse keeps negative bounds."""
    out: List[str] = []
    args = list(argv)
    i = 0
    while i < len(args):
        if args[i] == "--window" and i + 1 < len(args):
            out.append(f"--window={args[i + 1]}")
            i += 2
            continue
        out.append(args[i])
        i += 1
    return out


def parse_int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def parse_name_list(text: str) -> List[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _add_common(parser: argparse.ArgumentParser) -> None:
    # Defaults stay None so that a JSON config file can fill them.
    datum = parser.add_mutually_exclusive_group()
    datum.add_argument("--gl", type=int, default=None, help="gl_n with this n")
    datum.add_argument("--cartan", default=None, help="Cartan type, e.g. A2, B2, G2")
    parser.add_argument("--p", type=int, default=None, help="Prime (default: 3)")
    parser.add_argument("--levi", type=parse_int_list, default=None, help="Simple-root indices of I, e.g. 0,1")
    parser.add_argument("--base", default=None, help="field:q | dual:q | trunc:q:k")
    parser.add_argument("--pi", default=None, help="Structure map, e.g. h1=t,h2=0")
    parser.add_argument("--window", type=parse_window, default=None, help="Weight window a..b")
    parser.add_argument("--seed", type=int, default=None, help="Seed for every random choice")
    parser.add_argument("--out", default=None, help="Output path (default: stdout)")
    parser.add_argument("--format", choices=("json", "csv"), default=None, help="Output format")
    parser.add_argument("--config", type=Path, default=None, help="JSON config file; flags win on conflict")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG on the console")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modcat",
        description="Exact computations in graded module categories of reduced enveloping algebras."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cmd = sub.add_parser("rootdata", help="Dump the Chevalley datum")
    _add_common(cmd)

    cmd = sub.add_parser("orbits", help="Dot-orbit table of the window")
    _add_common(cmd)
    cmd.add_argument("--group", choices=[g.value for g in WeylGroup], default=WeylGroup.W_IP.value)

    cmd = sub.add_parser("module", help="Construct a distinguished module and dump it")
    _add_common(cmd)
    cmd.add_argument("kind", choices=structure.MODULE_KINDS)
    cmd.add_argument("weight", type=parse_int_list, help="λ as comma-separated coordinates")
    cmd.add_argument("--summary", action="store_true", help="Only dims and freeness, no matrices")

    cmd = sub.add_parser("verify", help="Run verification suites")
    _add_common(cmd)
    cmd.add_argument("--suite", type=parse_name_list, default=None,
                     help=f"Comma-separated subset of: {', '.join(SUITE_NAMES)}")
    cmd.add_argument("--samples", type=int, default=None, help="Random instances per sampled case")
    cmd.add_argument("--timings", action="store_true", default=None, help="Include timings in the report")
    cmd.add_argument("--workers", type=int, default=None, help="Suites run in parallel")

    cmd = sub.add_parser("table", help="Multiplicity table as CSV or JSON")
    _add_common(cmd)
    cmd.add_argument("kind", choices=TABLE_KINDS)
    return parser


def load_config(args: argparse.Namespace) -> SuiteConfig:
    """JSON file values, overridden by every flag that was given."""
    values: Dict[str, Any] = {}
    if args.config is not None:
        try:
            payload = json.loads(args.config.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise InvalidInput(f"cannot read config {args.config}: {e}")
        if not isinstance(payload, dict):
            raise InvalidInput(f"{args.config}: root must be an object")
        values.update({k: v for k, v in payload.items() if k in CONFIG_FIELDS})
    flags = dict(vars(args))
    flags["suites"] = flags.pop("suite", None)
    if flags.get("gl") is not None or flags.get("cartan") is not None:
        values.pop("gl", None)
        values.pop("cartan", None)
    values.update({k: flags[k] for k in CONFIG_FIELDS if flags.get(k) is not None})
    try:
        return SuiteConfig(**values)
    except ValidationError as e:
        raise InvalidInput("; ".join(err["msg"] for err in e.errors()))


def _ambient(config: SuiteConfig):
    datum = rootdata.datum_for(config.selector, config.p)
    chi = rootdata.standard_levi_chi(datum, config.levi)
    algebra = coeff.make_base(config.base_descriptor, datum.d, config.p, config.pi)
    return gradedmod.make_ambient(datum, chi, algebra)


def _emit(content: str, out: Optional[str]) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(content, encoding="utf-8")
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(content)


def _json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n"


def cmd_rootdata(args: argparse.Namespace, config: SuiteConfig) -> int:
    datum = rootdata.datum_for(config.selector, config.p)
    chi = rootdata.standard_levi_chi(datum, config.levi)
    _emit(_json(rootdata.datum_to_dict(datum, chi)), config.out)
    return EXIT_OK


def cmd_orbits(args: argparse.Namespace, config: SuiteConfig) -> int:
    datum = rootdata.datum_for(config.selector, config.p)
    window = Window.cube(config.window[0], config.window[1], datum.d)
    rows = weyl.orbit_table(datum, window, WeylGroup(args.group), config.levi)
    content, _ = ExportService().export_orbits(rows, config.format)
    _emit(content, config.out)
    return EXIT_OK


def cmd_module(args: argparse.Namespace, config: SuiteConfig) -> int:
    ambient = _ambient(config)
    module = structure.construct(ambient, args.kind, args.weight, config.seed)
    payload = structure.summarize(module)
    if not args.summary:
        payload["data"] = gradedmod.module_to_dict(module)
    _emit(_json(payload), config.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: SuiteConfig) -> int:
    report = verification.run_suites(config, args.workers)
    content, _ = ExportService().export_report(report, config.format)
    _emit(content, config.out)
    for suite in report.suites:
        logger.info(f"{suite.name}: {'ok' if suite.ok else 'FAILED'} "
                    f"({suite.passed} passed, {suite.failed} failed, {suite.skipped} skipped)")
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_table(args: argparse.Namespace, config: SuiteConfig) -> int:
    ambient = _ambient(config)
    window = Window.cube(config.window[0], config.window[1], ambient.datum.d)
    table = structure.multiplicities(ambient, args.kind, window)
    content, _ = ExportService().export_table(table, "json" if args.format == "json" else "csv")
    _emit(content, config.out)
    return EXIT_OK


COMMANDS = {
    "rootdata": cmd_rootdata,
    "orbits": cmd_orbits,
    "module": cmd_module,
    "verify": cmd_verify,
    "table": cmd_table,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(attach_window(sys.argv[1:] if argv is None else argv))
    setup_logging(logging.DEBUG if args.verbose else logging.INFO, stream=sys.stderr)
    try:
        config = load_config(args)
        logger.info(f"{args.command}: {config.selector}, p={config.p}, I={config.levi}, "
                    f"A={config.base_descriptor}, seed={config.seed}")
        return COMMANDS[args.command](args, config)
    except EngineError as e:
        logger.error(f"{e.code}: {e.detail}")
        sys.stderr.write(_json(e.to_dict()))
        return EXIT_INPUT if e.input_error else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
