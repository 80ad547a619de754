"""
Numeric hypotheses on (degree, genus) for finiteness of the rank-3 locus
"""
import logging
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from src.algebra.errors import InvalidInputError
from src.models.certificates import ReportStatus, VerificationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HypothesisCheck:
    """Which numeric route applies to a pair (d, g)"""
    d: int
    g: int
    odd_route: bool
    even_route: bool
    cusp_count: int
    tono_threshold: Fraction
    hirzebruch_bound: Optional[int]

    @property
    def covered(self) -> bool:
        return self.odd_route or self.even_route

    @property
    def exceeds_tono(self) -> bool:
        """More cusps than a cuspidal curve of genus g may carry"""
        return self.cusp_count > self.tono_threshold

    def to_dict(self) -> Dict:
        out = asdict(self)
        out["tono_threshold"] = f"{self.tono_threshold.numerator}/{self.tono_threshold.denominator}"
        out["covered"] = self.covered
        out["exceeds_tono"] = self.exceeds_tono
        return out


def hirzebruch_bound(d: int) -> int:
    """Largest number of cusps d(5d-6)/16, rounded down"""
    return d * (5 * d - 6) // 16


def ii1_check(d: int, g: int) -> HypothesisCheck:
    """
    Evaluate both numeric routes for a curve of degree d and genus g

    Args:
        d: Degree, at least 3
        g: Genus, non-negative

    Returns:
        HypothesisCheck
    """
    if d < 3 or g < 0:
        raise InvalidInputError(f"Need d >= 3 and g >= 0, got ({d}, {g})")
    return HypothesisCheck(
        d=d,
        g=g,
        odd_route=23 * g < d * d - 3 * d - 15,
        even_route=d % 2 == 0 and 16 * g < 3 * d * d - 16 * d + 16,
        cusp_count=(d - 1) * (d - 2) // 2 - g,
        tono_threshold=Fraction(21 * g + 17, 2),
        hirzebruch_bound=hirzebruch_bound(d) if d % 2 == 0 else None,
    )


def ii1_table(pairs: Iterable[Tuple[int, int]]) -> List[HypothesisCheck]:
    return [ii1_check(d, g) for d, g in pairs]


def genus_one_coverage(max_degree: int) -> Dict[str, bool]:
    """Elliptic curves are covered for every even d >= 6 and every d >= 9"""
    even = all(ii1_check(d, 1).even_route for d in range(6, max_degree + 1, 2))
    large = all(ii1_check(d, 1).odd_route for d in range(9, max_degree + 1))
    return {"even_from_6": even, "all_from_9": large}


def verify_ii1(d: int, g: int) -> VerificationReport:
    """Report whether either numeric route covers (d, g)"""
    check = ii1_check(d, g)
    logger.info(f"Numeric routes for (d, g) = ({d}, {g}): odd {check.odd_route}, even {check.even_route}")
    return VerificationReport(
        claim=f"ii1(d={d}, g={g})",
        status=ReportStatus.VERIFIED if check.covered else ReportStatus.REFUTED,
        details=check.to_dict(),
        numeric=True,
    )
