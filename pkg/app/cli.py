"""
Command-line front end

Exit codes: 0 member / pass, 1 reject / fail, 2 input error.
JSON goes to stdout, logs go to stderr.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ValidationError

from app.config import settings
from app.exceptions import TotalStabilityError
from app.models import TsdDocument, error_payload
from app.service import service

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_INPUT = 2


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} is not a positive integer")
    return value


def non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"{value} is negative")
    return value


def read_document(path: str) -> TsdDocument:
    """Read a datum from a file ('-' for stdin)"""
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return TsdDocument.model_validate(json.loads(text))


def _emit(payload: Any, pretty: bool) -> None:
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    print(json.dumps(payload, indent=2 if pretty else None))


def _validation_detail(exc: ValidationError) -> List[Dict[str, str]]:
    return [
        {"field": ".".join(str(p) for p in err["loc"]) or "document", "message": err["msg"]}
        for err in exc.errors()
    ]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tss",
        description="Total semi-stability on tame weighted projective lines.",
    )
    output = parser.add_mutually_exclusive_group()
    output.add_argument("--pretty", dest="pretty", action="store_true", default=True, help="Indented JSON (default)")
    output.add_argument("--json", dest="pretty", action="store_false", help="Compact JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="Closed-form membership of a datum")
    check.add_argument("input", help="Datum JSON file, '-' for stdin")

    oracle = sub.add_parser("oracle", help="Phase monotonicity along the mesh")
    oracle.add_argument("input", help="Datum JSON file, '-' for stdin")
    oracle.add_argument("--periods", type=positive_int, default=settings.oracle_periods)

    derive = sub.add_parser("derive", help="Derived versus listed inequalities of a type")
    derive.add_argument("--type", dest="type_tag", required=True, help="A32, D6, E8, ...")
    derive.add_argument("--redundancy", action="store_true", help="Report redundant listed inequalities")

    flow = sub.add_parser("flow", help="Contraction flow between two data")
    flow.add_argument("start", help="Base datum with Im z > 0")
    flow.add_argument("end", help="Target datum")
    flow.add_argument("--steps", type=positive_int, default=settings.flow_steps)

    heart = sub.add_parser("heart", help="Classify the heart of a datum")
    heart.add_argument("input", help="Datum JSON file, '-' for stdin")

    sample = sub.add_parser("sample", help="Seeded random data")
    sample.add_argument("--type", dest="type_tag", required=True)
    sample.add_argument("--count", type=non_negative_int, default=settings.sample_count)
    sample.add_argument("--seed", type=int, default=settings.sample_seed)
    mode = sample.add_mutually_exclusive_group()
    mode.add_argument("--on-boundary", action="store_true", help="Put each datum on one listed inequality")
    mode.add_argument("--real", action="store_true", help="Sample Im z = 0")
    sample.add_argument("--members", action="store_true", help="Only members of the region")

    sub.add_parser("types", help="List shipped types")
    return parser


def run(args: argparse.Namespace) -> int:
    if args.command == "check":
        report = service.check(read_document(args.input))
        _emit(report, args.pretty)
        return EXIT_OK if report.member else EXIT_REJECT
    if args.command == "oracle":
        report = service.oracle(read_document(args.input), args.periods)
        _emit(report, args.pretty)
        return EXIT_OK if report.member else EXIT_REJECT
    if args.command == "derive":
        report = service.derive(args.type_tag, args.redundancy)
        _emit(report, args.pretty)
        return EXIT_OK if report.equivalent else EXIT_REJECT
    if args.command == "flow":
        response = service.flow(read_document(args.start), read_document(args.end), args.steps)
        _emit(response, args.pretty)
        return EXIT_OK if all(step.member for step in response.steps) else EXIT_REJECT
    if args.command == "heart":
        _emit(service.heart(read_document(args.input)), args.pretty)
        return EXIT_OK
    if args.command == "sample":
        response = service.sample(args.type_tag, args.count, args.seed, args.on_boundary, args.real, args.members)
        _emit(response, args.pretty)
        return EXIT_OK
    _emit(service.list_types(), args.pretty)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=settings.log_level, format=settings.log_format)
    args = build_parser().parse_args(argv)
    logger.info(f"Command: {args.command}")
    pretty = getattr(args, "pretty", True)
    try:
        return run(args)
    except json.JSONDecodeError as e:
        logger.warning(f"Malformed JSON: {e}")
        _emit(error_payload("Malformed JSON", {"line": e.lineno, "column": e.colno, "message": e.msg}), pretty)
    except ValidationError as e:
        logger.warning(f"Invalid document: {e.error_count()} errors")
        _emit(error_payload("Invalid document", _validation_detail(e)), pretty)
    except TotalStabilityError as e:
        logger.warning(f"{type(e).__name__}: {e}")
        _emit(error_payload(type(e).__name__, str(e)), pretty)
    except OSError as e:
        logger.warning(f"Cannot read input: {e}")
        _emit(error_payload("Cannot read input", str(e)), pretty)
    except Exception as e:
        logger.error(f"Internal error: {e}", exc_info=True)
        _emit(error_payload("Internal error", str(e)), pretty)
    return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
