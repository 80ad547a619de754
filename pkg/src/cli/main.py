"""
Command-line front end
JSON results go to standard output, diagnostics to standard error.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

from config.settings import settings
from src.algebra.errors import InvalidInputError, UndecidedError, UnsupportedInstanceError
from src.apolarity.cubics import cubic_rank
from src.apolarity.forms import SymForm
from src.apolarity.ledger import verify_quartic_ledger
from src.binary.sylvester import BinaryForm, sylvester_rank
from src.cli.codecs import decode_curve, decode_point, decode_polynomial, dumps, load_json
from src.cli.reports import exit_code, quick_suite, report_payload, timed, write_report
from src.curves.secants import curve_point_rank
from src.loci.hirzebruch import verify_f1
from src.loci.hypotheses import verify_ii1
from src.loci.ii0 import verify_ii0
from src.loci.piene import piene_verify
from src.models.json_models import parse_rational

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_REFUTED, EXIT_INVALID, EXIT_UNDECIDED, EXIT_INTERNAL = 0, 1, 2, 3, 4


def _rational_arg(text: str):
    try:
        return parse_rational(text if "/" in text else f"{text}/1")
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hrl", description=f"{settings.app_name} {settings.app_version}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank-binary", help="Rank of a binary form")
    p.add_argument("--form", type=Path, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("rank-cubic", help="Rank of a plane cubic")
    p.add_argument("--form", type=Path, required=True)
    p.add_argument("--decompose", action="store_true", help="Include the certificate")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("rank-curve-point", help="Rank of a point with respect to a curve in P^3 or P^4")
    p.add_argument("--curve", type=Path, required=True)
    p.add_argument("--point", type=Path, required=True)
    p.add_argument("--seed", type=int, default=0)

    verify = sub.add_parser("verify", help="Verify one claim").add_subparsers(dest="claim", required=True)
    p = verify.add_parser("ii1")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p = verify.add_parser("ii0")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a2", type=_rational_arg, required=True)
    p.add_argument("--a3", type=_rational_arg, required=True)
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p = verify.add_parser("piene")
    p.add_argument("--seed", type=int, default=0)
    p = verify.add_parser("f1")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    verify.add_parser("quartic-ledger")

    p = sub.add_parser("report", help="Run the quick verification suite")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _emit(payload: Dict) -> None:
    sys.stdout.write(dumps(payload) + "\n")


def _rank_command(args: argparse.Namespace) -> int:
    if args.command == "rank-binary":
        form = BinaryForm.from_poly(decode_polynomial(load_json(args.form)))
        r, cert = sylvester_rank(form, seed=args.seed)
        _emit({"rank": r, "certificate": cert.to_dict()})
    elif args.command == "rank-cubic":
        poly = decode_polynomial(load_json(args.form))
        if len(poly.gens) != 3:
            raise InvalidInputError("A plane cubic has three variables")
        r, cert = cubic_rank(SymForm.from_poly(poly), seed=args.seed)
        _emit({"rank": r, "certificate": cert.to_dict()} if args.decompose else {"rank": r})
    else:
        curve = decode_curve(load_json(args.curve))
        point = decode_point(load_json(args.point))
        r, cert = curve_point_rank(curve, point, seed=args.seed)
        _emit({"rank": r, "certificate": cert.to_dict()})
    return EXIT_OK


def _verify_command(args: argparse.Namespace) -> int:
    if args.claim == "ii1":
        report = timed(verify_ii1, args.d, args.g)
    elif args.claim == "ii0":
        report = timed(verify_ii0, args.d, args.a2, args.a3, samples=args.samples, seed=args.seed)
    elif args.claim == "piene":
        report = timed(piene_verify, args.seed)
    elif args.claim == "f1":
        report = timed(verify_f1, args.d, seed=args.seed)
    else:
        report = timed(verify_quartic_ledger)
    _emit(report_payload(report))
    return exit_code(report)


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments and dispatch

    Returns:
        0 verified or computed, 1 refuted, 2 invalid input, 3 undecided, 4 internal error
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INVALID
    try:
        if args.command == "verify":
            return _verify_command(args)
        if args.command == "report":
            reports = quick_suite(args.seed)
            write_report(args.out, reports)
            _emit({"out": str(args.out), "statuses": {r.claim: r.status.value for r in reports}})
            return max(exit_code(r) for r in reports)
        return _rank_command(args)
    except (InvalidInputError, UnsupportedInstanceError, OSError) as e:
        logger.error(f"Invalid input: {e}")
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INVALID
    except UndecidedError as e:
        logger.warning(f"Undecided: {e}")
        _emit({"status": "undecided", "limit": e.limit})
        return EXIT_UNDECIDED
    except Exception as e:
        logger.exception(f"Internal error in {args.command}: {e}")
        sys.stderr.write(f"internal error: {e}\n")
        return EXIT_INTERNAL
