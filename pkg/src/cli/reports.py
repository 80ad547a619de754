"""
Report assembly and report files
"""
import json
import logging
import time
from pathlib import Path
from typing import Callable, Dict, List

from filelock import FileLock

from config.settings import settings
from src.algebra.errors import UndecidedError
from src.apolarity.ledger import verify_quartic_ledger
from src.loci.hypotheses import ii1_table, verify_ii1
from src.loci.hirzebruch import verify_f1
from src.loci.ii0 import verify_ii0
from src.loci.piene import piene_verify
from src.models.certificates import ReportStatus, VerificationReport
from src.models.json_models import SuiteReportModel, VerificationReportModel

logger = logging.getLogger(__name__)

EXIT_CODES = {
    ReportStatus.VERIFIED: 0,
    ReportStatus.REFUTED: 1,
    ReportStatus.UNDECIDED: 3,
}

QUICK_II1_PAIRS = ((4, 1), (6, 1), (8, 1), (9, 1))


def exit_code(report: VerificationReport) -> int:
    return EXIT_CODES[report.status]


def timed(verifier: Callable[..., VerificationReport], *args, **kwargs) -> VerificationReport:
    """Run a verifier and record its wall time in the report"""
    start = time.perf_counter()
    report = verifier(*args, **kwargs)
    report.timings["seconds"] = round(time.perf_counter() - start, 3)
    return report


def report_payload(report: VerificationReport) -> Dict:
    """Validated JSON payload of a report, stamped with the library version"""
    data = report.to_dict(include_timings=settings.record_timings)
    model = VerificationReportModel(version=settings.app_version, **data)
    return model.model_dump(exclude_none=True)


def quick_suite(seed: int = 0) -> List[VerificationReport]:
    """Ledger, ii1 table, ii0 at d = 5, one Piene seed and the F1 numeric checks"""
    reports = [timed(verify_quartic_ledger)]
    reports.extend(timed(verify_ii1, c.d, c.g) for c in ii1_table(QUICK_II1_PAIRS))
    reports.append(timed(verify_ii0, 5, 1, 1, seed=seed))
    reports.append(timed(piene_verify, seed))
    try:
        reports.append(timed(verify_f1, 5, seed=seed, rank_points=False))
    except UndecidedError as e:
        reports.append(VerificationReport(claim="f1(d=5)", status=ReportStatus.UNDECIDED, seeds=[seed], limit=e.limit))
    for r in reports:
        logger.info(f"{r.claim}: {r.status.value}")
    return reports


def write_report(path: Path, reports: List[VerificationReport]) -> Dict:
    """
    Write a suite report under a file lock

    Args:
        path: Output file
        reports: Reports in suite order

    Returns:
        The payload written
    """
    suite = SuiteReportModel(
        app_name=settings.app_name,
        version=settings.app_version,
        reports=[VerificationReportModel(**report_payload(r)) for r in reports],
    )
    payload = suite.model_dump(exclude_none=True)
    path.parent.mkdir(parents=True, exist_ok=True)
    lock_path = path.with_suffix(path.suffix + ".lock")
    with FileLock(str(lock_path), timeout=5):
        with open(path, "w", encoding="utf-8") as f:
            json.dump(payload, f, indent=2, ensure_ascii=False)
    logger.info(f"Wrote {len(reports)} report(s) to {path}")
    return payload
