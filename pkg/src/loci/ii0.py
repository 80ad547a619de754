"""
Curves in P^3 whose tangent line at one point has contact d-1
"""
import logging
from fractions import Fraction
from typing import List, Optional

import numpy as np

from src.algebra.errors import InvalidInputError, UndecidedError
from src.algebra.polynomials import Number, seeded_integers, to_fraction, to_rational
from src.binary.sylvester import Z0, Z1
from src.curves.curve import ParameterPoint, RationalCurve
from src.curves.local import contact_profile, osculating_subspace, subspace_contact_degree
from src.curves.secants import curve_point_rank
from src.models.certificates import ReportStatus, VerificationReport

logger = logging.getLogger(__name__)

BASE_PARAMETER = ParameterPoint.at(1, 0)


def ii0_curve(d: int, a2: Number, a3: Number) -> RationalCurve:
    """
    The curve (z0^d : z1 z0^(d-1) : a2 z1^(d-1) z0 : a3 z1^d)

    Args:
        d: Degree, at least 4
        a2, a3: Nonzero rationals

    Returns:
        RationalCurve in P^3 through p = (1:0:0:0) at the parameter (1:0)
    """
    if d < 4:
        raise InvalidInputError(f"Degree must be at least 4, got {d}")
    a2, a3 = to_fraction(a2), to_fraction(a3)
    if a2 * a3 == 0:
        raise InvalidInputError("Coefficients a2 and a3 must be nonzero")
    return RationalCurve.from_exprs([
        Z0 ** d,
        Z1 * Z0 ** (d - 1),
        to_rational(a2) * Z1 ** (d - 1) * Z0,
        to_rational(a3) * Z1 ** d,
    ])


def tangent_samples(count: int, seed: int) -> List[tuple]:
    """Points (lam : 1 : 0 : 0) of the tangent line at p, lam = 0 first"""
    rng = np.random.default_rng(seed)
    lams = [0]
    while len(lams) < count:
        (lam,) = seeded_integers(rng, 1, bound=9)
        if lam not in lams:
            lams.append(lam)
    return [(Fraction(lam), Fraction(1), Fraction(0), Fraction(0)) for lam in lams]


def verify_ii0(d: int, a2: Number, a3: Number, samples: int = 3, seed: int = 0) -> VerificationReport:
    """
    Contact of the tangent line at p and rank 3 along it

    Args:
        d, a2, a3: Curve parameters
        samples: Number of points of T_pX minus p to certify
        seed: Seed for the sample points and eliminations

    Returns:
        VerificationReport; verified when the contact degree is d-1 supported at p and
        every sample has rank 3
    """
    X = ii0_curve(d, a2, a3)
    tangent = osculating_subspace(X, BASE_PARAMETER, 1)
    osculating = osculating_subspace(X, BASE_PARAMETER, 2)
    contact = subspace_contact_degree(X, tangent)
    details = {
        "curve": {"d": d, "a2": str(to_fraction(a2)), "a3": str(to_fraction(a3))},
        "point": list(X.point(BASE_PARAMETER)),
        "profile": list(contact_profile(X, BASE_PARAMETER).orders),
        "tangent_line": tangent.equation_text(),
        "osculating_plane": osculating.equation_text(),
        "contact_degree": contact.degree,
        "contact_support": contact.labels(),
        "samples": [],
    }
    ok = contact.degree == d - 1 and [p.label() for p, _ in contact.support] == [BASE_PARAMETER.label()]
    certificates = []
    try:
        for q in tangent_samples(samples, seed):
            r, cert = curve_point_rank(X, q, seed=seed)
            details["samples"].append({"point": [str(c) for c in q], "rank": r})
            certificates.append(cert)
            ok = ok and r == 3
    except UndecidedError as e:
        return VerificationReport(claim=f"ii0(d={d})", status=ReportStatus.UNDECIDED, certificates=certificates,
                                  seeds=[seed], details=details, limit=e.limit or str(e))
    logger.info(f"ii0 d={d}: contact {contact.degree}, sample ranks {[s['rank'] for s in details['samples']]}")
    return VerificationReport(
        claim=f"ii0(d={d})",
        status=ReportStatus.VERIFIED if ok else ReportStatus.REFUTED,
        certificates=certificates,
        seeds=[seed],
        details=details,
    )
