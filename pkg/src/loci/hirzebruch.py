"""
Curves on the Hirzebruch surface F1 embedded in P^4 as the cubic scroll

Cox coordinates z0, z1 (fiber class f) and w0, w1 with C0 = {w0 = 0}. A curve of
class C0 + (d-1)f is F = A(z) w0 + B(z) w1 with deg A = d-1 and deg B = d-2; the
scroll sections z0^2 w0, z0 z1 w0, z1^2 w0, z0 w1, z1 w1 restricted to F = 0 give
the parametrization (z0^2 B, z0 z1 B, z1^2 B, -z0 A, -z1 A) of a degree-d curve.
"""
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Poly, QQ, Symbol, symbols

from config.settings import settings
from src.algebra.elimination import SystemWitness, WitnessStatus, system_has_zero_off
from src.algebra.errors import InvalidInputError, UndecidedError, UnsupportedInstanceError
from src.algebra.polynomials import Number, seeded_integers, to_fraction
from src.binary.sylvester import Z0, Z1
from src.curves.curve import S, LinearSubspace, ParameterPoint, RationalCurve
from src.curves.local import subspace_contact_degree
from src.curves.secants import curve_point_rank
from src.models.certificates import CertificateKind, RankCertificate, ReportStatus, VerificationReport

logger = logging.getLogger(__name__)

W0, W1 = symbols("w0 w1")
V = Symbol("v")

O_POINT = (Fraction(0), Fraction(0), Fraction(0), Fraction(1), Fraction(0))
O_PARAMETER = ParameterPoint.at(1, 0)


@dataclass(frozen=True)
class F1Class:
    """Divisor class a C0 + b f"""
    a: int
    b: int

    def dot(self, other: "F1Class") -> int:
        # C0^2 = -1, f^2 = 0, C0 f = 1
        return -self.a * other.a + self.a * other.b + self.b * other.a

    def __add__(self, other: "F1Class") -> "F1Class":
        return F1Class(self.a + other.a, self.b + other.b)

    def __str__(self) -> str:
        return f"{self.a}C0+{self.b}f"


C0 = F1Class(1, 0)
FIBER = F1Class(0, 1)
HYPERPLANE = F1Class(1, 2)
CANONICAL = F1Class(-2, -3)


def f1_intersection(c1: F1Class, c2: F1Class) -> int:
    return c1.dot(c2)


def f1_genus(c: F1Class) -> int:
    """Arithmetic genus 1 + (Y.Y + Y.K)/2"""
    return 1 + (c.dot(c) + c.dot(CANONICAL)) // 2


def f1_system_dimension(c: F1Class, e: Optional[int] = None) -> Tuple[int, List[str]]:
    """
    Projective dimension of |c|, or of the curves in |c| containing E

    E is the curvilinear scheme of length e at o = ((1:0), w0 = 0) along C0; it forces
    B to vanish to order e at (1:0).

    Args:
        c: Class with a = 1 (sections of the ruling) or a = 0 (unions of fibers)
        e: Length of E, at most b - 1

    Returns:
        Tuple of (dimension, monomial basis in Cox coordinates)
    """
    if c.b < 0 or c.a not in (0, 1):
        raise UnsupportedInstanceError(f"Linear systems are computed for a in (0, 1) and b >= 0, got {c}")
    if c.a == 0:
        if e:
            raise UnsupportedInstanceError("E is only imposed on sections of the ruling")
        basis = [Z0 ** (c.b - k) * Z1 ** k for k in range(c.b + 1)]
        return len(basis) - 1, [str(m) for m in basis]
    e = e or 0
    if e < 0 or (e > 0 and e > c.b - 1):
        raise InvalidInputError(f"Length of E must lie in [0, {c.b - 1}], got {e}")
    basis = [Z0 ** (c.b - k) * Z1 ** k * W0 for k in range(c.b + 1)]
    basis += [Z0 ** (c.b - 1 - k) * Z1 ** k * W1 for k in range(e, c.b)]
    return len(basis) - 1, [str(m) for m in basis]


@dataclass(frozen=True)
class F1Curve:
    """F = A w0 + B w1 in |C0 + (d-1)f|"""
    d: int
    A: Poly
    B: Poly

    def __post_init__(self):
        for name, p, deg in (("A", self.A, self.d - 1), ("B", self.B, self.d - 2)):
            if p.gens != (Z0, Z1) or p.is_zero or not p.is_homogeneous or p.total_degree() != deg:
                raise InvalidInputError(f"{name} must be a binary form of degree {deg}")

    @property
    def divisor_class(self) -> F1Class:
        return F1Class(1, self.d - 1)

    def form(self):
        return (self.A.as_expr() * W0 + self.B.as_expr() * W1).expand()

    def is_irreducible(self) -> bool:
        return self.A.gcd(self.B).total_degree() == 0


def f1_embed(C: F1Curve) -> RationalCurve:
    """The curve F = 0 in P^4, parametrized by the base P^1"""
    if not C.is_irreducible():
        raise InvalidInputError(f"A and B share the factor {C.A.gcd(C.B).as_expr()}")
    A, B = C.A.as_expr(), C.B.as_expr()
    return RationalCurve.from_exprs([Z0 ** 2 * B, Z0 * Z1 * B, Z1 ** 2 * B, -Z0 * A, -Z1 * A])


def _chart(p: Poly, z: int):
    zsub = {Z0: 1, Z1: S} if z == 0 else {Z0: S, Z1: 1}
    return p.as_expr().subs(zsub)


def smoothness_witnesses(C: F1Curve, seed: int = 0) -> List[SystemWitness]:
    """
    Jacobian systems of F on the four affine charts {z_i = 1, w_j = 1}

    Returns:
        One witness per chart; the curve is smooth iff every witness is no-zero
    """
    out = []
    for z in (0, 1):
        a, b = _chart(C.A, z), _chart(C.B, z)
        for w in (0, 1):
            F = a + b * V if w == 0 else a * V + b
            polys = [Poly(g, S, V, domain=QQ) for g in (F, F.diff(S), F.diff(V))]
            witness = system_has_zero_off(polys, seed=seed)
            out.append(replace(
                witness,
                description=f"chart z{z}=1, w{w}=1" + (f": {witness.description}" if witness.description else ""),
            ))
    return out


def f1_sample_curve(d: int, seed: int = 0) -> Tuple[F1Curve, RationalCurve, VerificationReport]:
    """
    Smooth curve of class C0 + (d-1)f with B = z1^(d-2) and seeded A

    Args:
        d: Degree, at least 4
        seed: Seed of the resampling schedule for A

    Returns:
        Tuple of (F1Curve, its image in P^4, report carrying the smoothness witnesses)
    """
    if d < 4:
        raise InvalidInputError(f"Degree must be at least 4, got {d}")
    rng = np.random.default_rng(seed)
    B = Poly(Z1 ** (d - 2), Z0, Z1, domain=QQ)
    for attempt in range(settings.seed_schedule_length):
        coeffs = seeded_integers(rng, d, bound=5)
        A = Poly(sum(c * Z0 ** (d - 1 - k) * Z1 ** k for k, c in enumerate(coeffs)), Z0, Z1, domain=QQ)
        if A.is_zero or A.total_degree() != d - 1:
            continue
        C = F1Curve(d, A, B)
        if not C.is_irreducible():
            logger.debug(f"Attempt {attempt}: A and B share a factor")
            continue
        witnesses = smoothness_witnesses(C, seed=seed)
        if any(w.status != WitnessStatus.NO_ZERO for w in witnesses):
            logger.debug(f"Attempt {attempt}: Jacobian system not refuted")
            continue
        X = f1_embed(C)
        if X.degree != d or not X.is_nondegenerate():
            continue
        cert = RankCertificate(kind=CertificateKind.REFUTATION, trace=tuple(witnesses),
                               notes="no singular point of F = 0 on any chart of F1")
        report = VerificationReport(
            claim=f"f1-sample(d={d})",
            status=ReportStatus.VERIFIED,
            certificates=[cert],
            seeds=[seed],
            details={"A": str(A.as_expr()), "B": str(B.as_expr()), "form": str(C.form()),
                     "attempt": attempt, "degree": X.degree, "spans_p4": True},
        )
        logger.info(f"Sampled smooth F1 curve of degree {d} after {attempt + 1} attempt(s)")
        return C, X, report
    raise UndecidedError(f"No smooth curve of degree {d} in {settings.seed_schedule_length} attempts",
                         limit=f"seed_schedule_length={settings.seed_schedule_length}")


def c0_point(a: Number, b: Number) -> Tuple[Fraction, ...]:
    """The point (0:0:0:a:b) of C0"""
    a, b = to_fraction(a), to_fraction(b)
    if a == 0 and b == 0:
        raise InvalidInputError("C0 points need (a, b) != (0, 0)")
    return Fraction(0), Fraction(0), Fraction(0), a, b


def c0_line() -> LinearSubspace:
    return LinearSubspace.from_equations([(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0)], ambient=4)


def ruling_line(a: Number, b: Number) -> LinearSubspace:
    """The embedded fiber over z = (a:b)"""
    a, b = to_fraction(a), to_fraction(b)
    return LinearSubspace.from_points([(a * a, a * b, b * b, 0, 0), (0, 0, 0, a, b)])


def verify_claim2(d: int, points: Optional[Sequence[Tuple[Number, Number]]] = None,
                  seed: int = 0) -> VerificationReport:
    """
    Rank 4 at points of C0 other than o

    Args:
        d: Degree, at least 5
        points: (a, b) coordinates of C0 points; defaults to (0, 1) and (1, 1)
        seed: Seed for the sampled curve and the eliminations

    Returns:
        VerificationReport with one chained refutation per point
    """
    if d < 5:
        raise InvalidInputError(f"Rank-4 points on C0 need d >= 5, got {d}")
    points = list(points) if points is not None else [(0, 1), (1, 1)]
    qs = [c0_point(a, b) for a, b in points]
    for q in qs:
        if q[4] == 0:
            raise InvalidInputError("The point o lies on the curve")
    claim = f"f1-claim2(d={d})"
    certificates = []
    details: Dict = {"points": []}
    try:
        C, X, _ = f1_sample_curve(d, seed)
        details["A"] = str(C.A.as_expr())
        ok = True
        for q in qs:
            r, cert = curve_point_rank(X, q, seed=seed)
            certificates.append(cert)
            details["points"].append({"point": [str(c) for c in q], "rank": r})
            ok = ok and r == 4
    except UndecidedError as e:
        return VerificationReport(claim=claim, status=ReportStatus.UNDECIDED, certificates=certificates,
                                  seeds=[seed], details=details, limit=e.limit or str(e))
    return VerificationReport(
        claim=claim,
        status=ReportStatus.VERIFIED if ok else ReportStatus.REFUTED,
        certificates=certificates,
        seeds=[seed],
        details=details,
    )


def f1_numbers(d: int) -> Dict:
    """Intersection numbers, genus and system dimensions for Y in |C0 + (d-1)f|"""
    Y = F1Class(1, d - 1)
    dim, _ = f1_system_dimension(Y)
    dim_e, _ = f1_system_dimension(Y, e=d - 2)
    return {
        "degree": f1_intersection(Y, HYPERPLANE),
        "c0_intersection": f1_intersection(Y, C0),
        "fiber_intersection": f1_intersection(Y, FIBER),
        "genus": f1_genus(Y),
        "system_dimension": dim,
        "system_dimension_with_e": dim_e,
    }


def verify_f1(d: int, seed: int = 0, rank_points: bool = True) -> VerificationReport:
    """
    Numeric checks, a smooth sample with its contact data, and rank-4 points on C0

    Args:
        d: Degree, at least 5 when rank_points is set
        seed: Seed for the sample and eliminations
        rank_points: Certify the rank of the default C0 points as well

    Returns:
        VerificationReport bundling every check
    """
    numbers = f1_numbers(d)
    expected = {"degree": d, "c0_intersection": d - 2, "fiber_intersection": 1, "genus": 0,
                "system_dimension": 2 * d - 2, "system_dimension_with_e": d}
    ok = numbers == expected
    details: Dict = {"numbers": numbers}
    certificates = []
    try:
        C, X, sample = f1_sample_curve(d, seed)
    except UndecidedError as e:
        return VerificationReport(claim=f"f1(d={d})", status=ReportStatus.UNDECIDED, seeds=[seed],
                                  details=details, limit=e.limit or str(e))
    certificates.extend(sample.certificates)
    details["sample"] = sample.details
    ruling = subspace_contact_degree(X, ruling_line(1, 0))
    c0 = subspace_contact_degree(X, c0_line())
    details["ruling_contact"] = {"degree": ruling.degree, "support": ruling.labels()}
    details["c0_contact"] = {"degree": c0.degree, "support": c0.labels()}
    ok = ok and ruling.degree == 1
    ok = ok and c0.degree == d - 2 and [p.label() for p, _ in c0.support] == [O_PARAMETER.label()]
    ok = ok and X.point(O_PARAMETER) == O_POINT
    status = ReportStatus.VERIFIED if ok else ReportStatus.REFUTED
    limit = None
    if rank_points:
        claim2 = verify_claim2(d, seed=seed)
        certificates.extend(claim2.certificates)
        details["claim2"] = claim2.details
        if claim2.status == ReportStatus.UNDECIDED and status == ReportStatus.VERIFIED:
            status, limit = ReportStatus.UNDECIDED, claim2.limit
        elif claim2.status == ReportStatus.REFUTED:
            status = ReportStatus.REFUTED
    logger.info(f"F1 checks for d={d}: {status.value}")
    return VerificationReport(claim=f"f1(d={d})", status=status, certificates=certificates, seeds=[seed],
                              details=details, limit=limit)
