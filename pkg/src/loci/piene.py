"""
Rational quartics in P^3 obtained by projecting the rational normal quartic
A general such projection has a stall; the tangent line at the stall meets one
ordinary tangent line, and the meeting point has rank 3. Projecting the quartic
from that point gives a plane quartic with an ordinary and a ramphoid cusp.
"""
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix, Poly, QQ

from config.settings import settings
from src.algebra.errors import InvalidInputError, UndecidedError
from src.algebra.matrices import QMatrix, kernel
from src.algebra.polynomials import primitive_vector, seeded_integers, to_fraction, to_rational
from src.curves.curve import S, ParameterPoint, RationalCurve, project, rnc
from src.curves.local import stall_parameters
from src.curves.secants import curve_point_rank
from src.curves.singularities import NODE, ORDINARY_CUSP, RAMPHOID_CUSP, TACNODE, TRIPLE_POINT, plane_singularities
from src.models.certificates import ReportStatus, VerificationReport

logger = logging.getLogger(__name__)


def secant_hankel_det(c: Sequence[Fraction]) -> Fraction:
    """Vanishes iff the center lies on the secant variety of the rational normal quartic"""
    c0, c1, c2, c3, c4 = c
    return c0 * (c2 * c4 - c3 * c3) - c1 * (c1 * c4 - c3 * c2) + c2 * (c1 * c3 - c2 * c2)


def seeded_center(rng: np.random.Generator) -> Tuple[Fraction, ...]:
    """Random center whose projection has a stall at a random rational parameter"""
    v0 = Fraction(seeded_integers(rng, 1, bound=3)[0])
    head = [Fraction(x) for x in seeded_integers(rng, 4, bound=5)]
    binom = (1, 4, 6, 4)
    c4 = -sum(binom[i] * (-v0) ** (4 - i) * head[i] for i in range(4))
    return tuple(head) + (c4,)


def stall_polynomial(c: Sequence[Fraction]) -> Poly:
    """sum C(4,i) (-t)^(4-i) c_i, whose roots are the stall parameters"""
    binom = (1, 4, 6, 4, 1)
    expr = sum(binom[i] * (-S) ** (4 - i) * to_rational(c[i]) for i in range(5))
    return Poly(expr, S, domain=QQ)


def _point_and_derivative(Y: RationalCurve, u: Fraction) -> Tuple[List[Fraction], List[Fraction]]:
    phi = Y.affine_polys(S)
    return ([to_fraction(p.eval(to_rational(u))) for p in phi],
            [to_fraction(p.diff(S).eval(to_rational(u))) for p in phi])


def tangent_partners(Y: RationalCurve, v0: Fraction) -> Tuple[List[Fraction], List[str]]:
    """
    Parameters u != v0 whose tangent line meets the tangent line at v0

    Returns:
        Tuple of (rational partners, labels of partners that are irrational or at infinity)
    """
    phi = [p.as_expr() for p in Y.affine_polys(S)]
    dphi = [e.diff(S) for e in phi]
    pv, dv = _point_and_derivative(Y, v0)
    fixed = [[to_rational(x) for x in pv], [to_rational(x) for x in dv]]
    M = Matrix([phi, dphi] + fixed)
    det = Poly(M.det(method="berkowitz").expand(), S, domain=QQ)
    if det.is_zero:
        raise InvalidInputError("Every tangent meets the stall tangent")
    rational, other = [], []
    for f, _ in det.factor_list()[1]:
        if f.degree() == 1:
            a, b = f.all_coeffs()
            u = -to_fraction(b) / to_fraction(a)
            if u != v0:
                rational.append(u)
        else:
            other.append(ParameterPoint.from_affine_factor(f).label())
    d = Y.degree
    at_inf = [[to_rational(dict(p.terms()).get(m, 0)) for p in Y.polys()] for m in ((0, d), (1, d - 1))]
    if any(x != 0 for x in at_inf[1]) and Matrix(at_inf + fixed).det() == 0:
        other.append(ParameterPoint.infinity().label())
    return sorted(rational), other


def tangent_intersection(Y: RationalCurve, u: Fraction, v0: Fraction) -> Tuple[int, ...]:
    """The point where the tangent lines at u and v0 meet"""
    pu, du = _point_and_derivative(Y, u)
    pv, dv = _point_and_derivative(Y, v0)
    cols = [pu, du, [-x for x in pv], [-x for x in dv]]
    M = QMatrix.from_rows([[col[i] for col in cols] for i in range(len(pu))], cols=4)
    basis = kernel(M).basis
    if len(basis) != 1:
        raise InvalidInputError(f"Tangent lines at {u} and {v0} do not meet in a single point")
    a, b, _, _ = basis[0]
    return primitive_vector([a * x + b * y for x, y in zip(pu, du)])


def piene_curve(seed: int) -> Optional[Tuple[Tuple[Fraction, ...], RationalCurve]]:
    """First center of the seed schedule giving a smooth projected quartic"""
    rng = np.random.default_rng(seed)
    for _ in range(settings.seed_schedule_length):
        c = seeded_center(rng)
        if secant_hankel_det(c) == 0:
            continue
        Y = project(rnc(4), c)
        if Y.degree == 4 and Y.is_nondegenerate():
            return c, Y
    return None


def secant_samples(Y: RationalCurve, count: int, seed: int) -> List[Tuple[Fraction, ...]]:
    """lam Y(s) + mu Y(t) for distinct rational s, t and nonzero lam, mu"""
    rng = np.random.default_rng(seed + 1)
    out = []
    while len(out) < count:
        s, t = seeded_integers(rng, 2, bound=6)
        lam, mu = seeded_integers(rng, 2, bound=4, nonzero=True)
        if s == t:
            continue
        ps, pt = Y.evaluate(1, s), Y.evaluate(1, t)
        out.append(tuple(lam * a + mu * b for a, b in zip(ps, pt)))
    return out


def piene_verify(seed: int = 0, samples: int = 5) -> VerificationReport:
    """
    Find the stall tangent / ordinary tangent point of a seeded projection and certify its rank

    Args:
        seed: Seed for the center schedule and the sample points
        samples: Number of secant points certified to have rank 2

    Returns:
        VerificationReport with the rank-3 certificate, rank-2 certificates and the cusp types
        of the projection from the rank-3 point
    """
    found = piene_curve(seed)
    if found is None:
        return VerificationReport(claim="piene", status=ReportStatus.UNDECIDED, seeds=[seed],
                                  limit=f"seed_schedule_length={settings.seed_schedule_length}")
    c, Y = found
    details: Dict = {"center": [str(x) for x in c], "stall_polynomial": str(stall_polynomial(c).as_expr())}
    certificates = []
    try:
        stalls = stall_parameters(Y)
        rational = [p for p in stalls.points if p.coordinates() is not None and not p.is_infinity]
        details["stalls"] = [p.label() for p in stalls.points]
        if not rational:
            return VerificationReport(claim="piene", status=ReportStatus.UNDECIDED, seeds=[seed], details=details,
                                      limit="no rational stall parameter")
        candidates, unresolved = [], []
        for stall in rational:
            v0 = stall.coordinates()[1]
            partners, other = tangent_partners(Y, v0)
            unresolved.extend(f"{v0}: {label}" for label in other)
            for u in partners:
                candidates.append((v0, u, tangent_intersection(Y, u, v0)))
        details["candidates"] = [{"stall": str(v0), "partner": str(u), "point": list(p)} for v0, u, p in candidates]
        details["unresolved_partners"] = unresolved
        if unresolved:
            return VerificationReport(claim="piene", status=ReportStatus.UNDECIDED, seeds=[seed], details=details,
                                      limit="tangent partner outside Q")
        if not candidates:
            return VerificationReport(claim="piene", status=ReportStatus.UNDECIDED, seeds=[seed], details=details,
                                      limit="no tangent partner of a rational stall")
        ok = True
        cusp_types = []
        for v0, u, p in candidates:
            r, cert = curve_point_rank(Y, p, seed=seed)
            certificates.append(cert)
            ok = ok and r == 3
            plane = project(Y, p)
            sing = plane_singularities(plane, seed=seed)
            kinds = sorted(e.kind for e in sing.entries)
            cusp_types.append({
                "point": list(p),
                "rank": r,
                "singularities": kinds,
                "genus": sing.geometric_genus,
                "genus_consistent": sing.genus_consistent,
                "injective": not any(e.kind in (NODE, TACNODE, TRIPLE_POINT) for e in sing.entries),
            })
            ok = ok and ORDINARY_CUSP in kinds and RAMPHOID_CUSP in kinds
        details["projections"] = cusp_types

        ranks = []
        for q in secant_samples(Y, samples, seed):
            r, cert = curve_point_rank(Y, q, seed=seed)
            ranks.append(r)
            certificates.append(cert)
        details["secant_sample_ranks"] = ranks
        ok = ok and all(r == 2 for r in ranks)
    except UndecidedError as e:
        return VerificationReport(claim="piene", status=ReportStatus.UNDECIDED, certificates=certificates,
                                  seeds=[seed], details=details, limit=e.limit or str(e))
    logger.info(f"Piene projection with center {details['center']}: {len(candidates)} candidate point(s)")
    return VerificationReport(
        claim="piene",
        status=ReportStatus.VERIFIED if ok else ReportStatus.REFUTED,
        certificates=certificates,
        seeds=[seed],
        details=details,
    )
