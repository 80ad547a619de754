"""
Exact rank of points with respect to rational curves in P^3 and P^4
Each step reduces to zero-existence questions for minor systems in one or two
parameters: on the curve, on a secant line, on a trisecant plane. Rank 3 in P^4
is refuted only through a tangent line of high contact.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix, Poly, QQ

from config.settings import settings
from src.algebra.elimination import SystemWitness, WitnessStatus, solve_bivariate, system_has_zero_off
from src.algebra.errors import InvalidInputError, UndecidedError, UnsupportedInstanceError
from src.algebra.fields import NumberField
from src.algebra.matrices import QMatrix, solve
from src.algebra.polynomials import Number, common_gcd, to_fraction, to_rational
from src.curves.curve import S, T, ParameterPoint, RationalCurve, pair_minors, project
from src.curves.local import osculating_subspace, subspace_contact_degree
from src.models.certificates import CertificateKind, RankCertificate, fraction_text

logger = logging.getLogger(__name__)

# Known ceilings for the rank of nondegenerate rational curves
RANK_CEILING = {3: 3, 4: 4}


def maximal_minors(rows: Sequence[Sequence], gens: Tuple) -> List[Poly]:
    """All k x k minors of a k x m matrix of polynomial expressions"""
    k = len(rows)
    m = len(rows[0])
    out = []
    for cols in combinations(range(m), k):
        M = Matrix([[r[c] for c in cols] for r in rows])
        out.append(Poly(M.det(method="berkowitz").expand(), *gens, domain=QQ))
    return out


def _row(values: Sequence[Number]) -> List:
    return [to_rational(v) for v in values]


def _exprs(polys: Sequence[Poly]) -> List:
    return [p.as_expr() for p in polys]


def _point_text(p: Sequence[Number]) -> str:
    return "(" + ":".join(fraction_text(to_fraction(c)) for c in p) + ")"


def _proportional(u: Sequence[Fraction], v: Sequence[Fraction]) -> bool:
    return all(u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(i + 1, len(u)))


def _combination(target: Sequence[Fraction], vectors: Sequence[Sequence[Fraction]], notes: str) -> RankCertificate:
    M = QMatrix.from_rows([[v[k] for v in vectors] for k in range(len(target))], cols=len(vectors))
    weights = solve(M, target)
    return RankCertificate(
        kind=CertificateKind.DECOMPOSITION,
        rank=len(vectors),
        target=tuple(target),
        vectors=tuple(tuple(v) for v in vectors),
        coefficients=weights,
        notes=notes,
    )


def _check_point(X: RationalCurve, q: Sequence[Number]) -> Tuple[Fraction, ...]:
    if len(q) != X.ambient + 1:
        raise InvalidInputError(f"Point has {len(q)} coordinates, curve lives in P^{X.ambient}")
    v = tuple(to_fraction(c) for c in q)
    if all(c == 0 for c in v):
        raise InvalidInputError("The zero vector is not a point")
    return v


@dataclass
class ChartWitnesses:
    """Witnesses of one membership question over its parameter charts"""
    witnesses: List[SystemWitness] = field(default_factory=list)

    @property
    def status(self) -> WitnessStatus:
        statuses = [w.status for w in self.witnesses]
        if WitnessStatus.ZERO_EXISTS in statuses:
            return WitnessStatus.ZERO_EXISTS
        if WitnessStatus.UNDECIDED in statuses:
            return WitnessStatus.UNDECIDED
        return WitnessStatus.NO_ZERO

    def found(self) -> Optional[SystemWitness]:
        return next((w for w in self.witnesses if w.status == WitnessStatus.ZERO_EXISTS), None)


def on_curve(X: RationalCurve, q: Sequence[Number]) -> Tuple[bool, RankCertificate]:
    """
    Whether q is a point of X

    Returns:
        Tuple of (membership, certificate): a one-term decomposition or a refutation
    """
    v = _check_point(X, q)
    at_inf = X.evaluate(0, 1)
    if _proportional(v, at_inf):
        return True, _combination(v, [at_inf], "point of the curve at (0:1)")
    phi = X.affine_polys(S)
    minors = pair_minors([Poly(to_rational(c), S, domain=QQ) for c in v], phi)
    witness = system_has_zero_off(minors)
    if witness.status == WitnessStatus.UNDECIDED:
        raise UndecidedError("On-curve test undecided", limit=witness.limit)
    if witness.status == WitnessStatus.ZERO_EXISTS:
        if witness.witness is not None:
            image = X.evaluate(1, witness.witness[0])
            return True, _combination(v, [image], f"point of the curve at (1:{fraction_text(witness.witness[0])})")
        return True, _algebraic_point(X, v, witness)
    return False, RankCertificate(kind=CertificateKind.REFUTATION, rank=1, trace=(witness,),
                                  notes=f"{_point_text(v)} is not on the curve")


def _secant_system(X: RationalCurve, v: Sequence[Fraction]) -> Tuple[List[Poly], List[Poly]]:
    """Affine-pair system divided by the diagonal, and the (infinity, t) system"""
    gens = (S, T)
    phi_s = _exprs(X.affine_polys(S))
    phi_t = _exprs(X.affine_polys(T))
    diag = Poly(S - T, *gens, domain=QQ)
    affine = [m.div(diag)[0] for m in maximal_minors([_row(v), phi_s, phi_t], gens) if not m.is_zero]
    at_inf = _row(X.evaluate(0, 1))
    line = maximal_minors([_row(v), at_inf, phi_t], (T,))
    return affine, line


def secant_witnesses(X: RationalCurve, q: Sequence[Number], order: str = "st", seed: int = 0,
                     excluded_extra: Optional[Poly] = None) -> ChartWitnesses:
    v = _check_point(X, q)
    affine, line = _secant_system(X, v)
    diag = Poly(S - T, S, T, domain=QQ)
    excluded = diag if excluded_extra is None else diag * Poly(excluded_extra.as_expr(), S, T, domain=QQ)
    out = ChartWitnesses()
    out.witnesses.append(system_has_zero_off(affine, excluded=excluded, order=order, seed=seed) if affine else
                         SystemWitness(WitnessStatus.ZERO_EXISTS, description="all minors vanish"))
    if out.status != WitnessStatus.ZERO_EXISTS:
        ex_line = None
        if excluded_extra is not None:
            ex_line = Poly(excluded_extra.as_expr().subs(S, T), T, domain=QQ)
        out.witnesses.append(system_has_zero_off(line, excluded=ex_line, order=order, seed=seed))
    return out


def secant_membership(X: RationalCurve, q: Sequence[Number], seed: int = 0,
                      orders: Sequence[str] = ("st", "ts")) -> Tuple[bool, RankCertificate]:
    """
    Whether q lies on a line through two distinct points of X

    Args:
        X: Curve
        q: Point not on X
        seed: Seed for the eliminants
        orders: Elimination orders that must agree

    Returns:
        Tuple of (membership, certificate)
    """
    v = _check_point(X, q)
    runs = [secant_witnesses(X, v, order=o, seed=seed) for o in orders]
    statuses = {r.status for r in runs}
    if WitnessStatus.UNDECIDED in statuses or len(statuses) > 1:
        raise UndecidedError(f"Secant test undecided for {_point_text(v)}", limit="extension_degree_limit")
    if statuses == {WitnessStatus.ZERO_EXISTS}:
        found = runs[0].found()
        if found.witness is not None and len(found.witness) == 2:
            s, t = found.witness
            return True, _combination(v, [X.evaluate(1, s), X.evaluate(1, t)],
                                      f"secant through s = {fraction_text(s)}, t = {fraction_text(t)}")
        if found.witness is not None:
            (t,) = found.witness
            return True, _combination(v, [X.evaluate(0, 1), X.evaluate(1, t)],
                                      f"secant through (0:1) and t = {fraction_text(t)}")
        return True, _algebraic_secant(X, v, found, seed=seed)
    trace = tuple(w for r in runs for w in r.witnesses)
    return False, RankCertificate(kind=CertificateKind.REFUTATION, rank=2, trace=trace,
                                  notes=f"{_point_text(v)} is on no secant line")


def base_point_schedule(count: int) -> List[Fraction]:
    """Rational base parameters 0, 1, -1, 2, -2, ..."""
    out = [Fraction(0)]
    k = 1
    while len(out) < count:
        out.extend([Fraction(k), Fraction(-k)])
        k += 1
    return out[:count]


def _algebraic_point(X: RationalCurve, v: Tuple[Fraction, ...], witness: SystemWitness) -> RankCertificate:
    """One-term decomposition at a parameter that is a root of an irreducible factor"""
    phi = tuple(X.affine_polys(S))
    minors = [m for m in pair_minors([Poly(to_rational(c), S, domain=QQ) for c in v], phi) if not m.is_zero]
    for f, _ in common_gcd(minors).factor_list()[1]:
        K = NumberField.from_poly(f, limit=settings.extension_degree_limit)
        cert = RankCertificate(kind=CertificateKind.DECOMPOSITION, rank=1, target=v, curve=phi, modulus=K.modulus,
                               points=(ParameterPoint.from_affine_factor(f).label(),), trace=(witness,),
                               notes="point of the curve at an algebraic parameter")
        if cert.validate():
            return cert
    raise UndecidedError(f"No parameter of the curve maps to {_point_text(v)}", limit="algebraic-parameter")


def _algebraic_secant(X: RationalCurve, v: Tuple[Fraction, ...], witness: SystemWitness,
                      seed: int = 0) -> RankCertificate:
    """Secant decomposition where the two parameters are only known as a field and a fiber over it"""
    affine, line = _secant_system(X, v)
    phi = tuple(X.affine_polys(S))
    candidates = []
    if affine:
        found = solve_bivariate(affine, excluded=Poly(S - T, S, T, domain=QQ), seed=seed)
        candidates.extend((b.field, b.fiber, b.label()) for b in found.blocks if b.off_excluded)
        for h in found.curve_factors:
            if h.is_zero:
                continue
            for c in base_point_schedule(settings.seed_schedule_length):
                K = NumberField.from_poly(Poly(S - to_rational(c), S, domain=QQ))
                fiber = K.specialize(h, 0)
                if len(fiber) >= 2:
                    candidates.append((K, K.psquarefree(fiber), f"s = {fraction_text(c)} on {h.as_expr()} = 0"))
    for K, F, label in candidates:
        on_diagonal = K.pgcd(F, (K.one(), -K.element(K.gen)))
        if len(on_diagonal) > 1:
            F = K.pdivmod(F, on_diagonal)[0]
        if len(F) < 2:
            continue
        cert = RankCertificate(kind=CertificateKind.DECOMPOSITION, rank=2, target=v, curve=phi, modulus=K.modulus,
                               fiber=F, points=(label,), trace=(witness,),
                               notes="secant through algebraic parameters")
        if cert.validate():
            return cert
    nonzero = [p for p in line if not p.is_zero]
    if nonzero:
        for f, _ in common_gcd(nonzero).factor_list()[1]:
            K = NumberField.from_poly(f, limit=settings.extension_degree_limit)
            cert = RankCertificate(kind=CertificateKind.DECOMPOSITION, rank=2, target=v, curve=phi,
                                   modulus=K.modulus, at_infinity=True,
                                   points=("(0:1)", ParameterPoint.from_affine_factor(f).label()), trace=(witness,),
                                   notes="secant through (0:1) and an algebraic parameter")
            if cert.validate():
                return cert
    raise UndecidedError(f"Secant through {_point_text(v)} not certified at algebraic parameters",
                         limit="algebraic-secant")


def _trisecant_through(X: RationalCurve, v: Sequence[Fraction], c: Fraction, seed: int,
                       orders: Sequence[str]) -> Tuple[WitnessStatus, List[SystemWitness], Optional[Tuple]]:
    """Trisecant planes through q and the curve point at parameter c, via projection from it"""
    base = X.evaluate(1, c)
    A_rows = project_matrix(base)
    image = tuple(sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in A_rows)
    if all(x == 0 for x in image):
        raise InvalidInputError("Point coincides with the base point")
    Xc = project(X, base)
    extra = Poly((S - to_rational(c)) * (T - to_rational(c)), S, T, domain=QQ)
    runs = []
    for o in orders:
        # the image curve is parametrized with the base point removed, so its points stay on their parameters
        runs.append(secant_witnesses(Xc, image, order=o, seed=seed, excluded_extra=extra))
    statuses = {r.status for r in runs}
    trace = [w for r in runs for w in r.witnesses]
    if WitnessStatus.UNDECIDED in statuses or len(statuses) > 1:
        return WitnessStatus.UNDECIDED, trace, None
    status = statuses.pop()
    params = None
    if status == WitnessStatus.ZERO_EXISTS:
        found = runs[0].found()
        if found.witness is not None:
            params = (c,) + tuple(found.witness)
    return status, trace, params


def project_matrix(point: Sequence[Fraction]) -> List[Tuple[Fraction, ...]]:
    """Rows of the projection from a point, as used by project()"""
    from src.algebra.matrices import kernel
    return list(kernel(QMatrix.from_rows([list(point)], cols=len(point))).basis)


def tangential_bound(X: RationalCurve, q: Sequence[Number]) -> Optional[RankCertificate]:
    """
    Rule out trisecant planes through a point on a tangent line of high contact

    If q lies on the tangent line L at p and L meets the curve only at p, with
    length k >= d - 2, then q is on no plane spanned by three distinct curve points:
    such a plane together with L would put a divisor of degree at least d + 1 on a
    hyperplane, or one of degree at least d on a plane.

    Args:
        X: Nondegenerate curve in P^4
        q: Point not on X

    Returns:
        Contact-bound certificate, or None when no rational tangent line qualifies
    """
    if X.ambient != 4:
        raise InvalidInputError("The tangential bound is stated for curves in P^4")
    X.require_nondegenerate()
    v = _check_point(X, q)
    phi = X.affine_polys(S)
    minors = [m for m in maximal_minors([_row(v), _exprs(phi), [p.diff(S).as_expr() for p in phi]], (S,))
              if not m.is_zero]
    candidates = [ParameterPoint.infinity()]
    if minors:
        g = common_gcd(minors)
        if g.degree() > 0:
            candidates.extend(ParameterPoint.from_affine_factor(f) for f, _ in g.factor_list()[1] if f.degree() == 1)
    for p in candidates:
        L = osculating_subspace(X, p, 1)
        if not L.contains(v):
            continue
        contact = subspace_contact_degree(X, L)
        labels = [s.label() for s, _ in contact.support]
        if labels != [p.label()] or contact.degree + 2 < X.degree:
            logger.debug(f"Tangent at {p.label()} has contact {contact.labels()}, too small")
            continue
        span = _combination(v, list(L.points), "")
        logger.info(f"{_point_text(v)} is on the tangent at {p.label()} with contact {contact.degree}")
        return RankCertificate(
            kind=CertificateKind.CONTACT_BOUND,
            rank=3,
            target=span.target,
            vectors=span.vectors,
            coefficients=span.coefficients,
            points=(p.label(),),
            contact=(contact.degree, X.degree),
            notes=f"tangent line at {p.label()} meets the curve in length {contact.degree} there only",
        )
    return None


def trisecant_membership(X: RationalCurve, q: Sequence[Number], seed: int = 0) -> Tuple[bool, RankCertificate]:
    """
    Whether q lies on a plane spanned by three distinct points of a curve in P^4

    Planes are searched through the curve points at trisecant_base_points fixed
    parameters c, in the two elimination orders; a plane is only reported with its
    explicit decomposition. The search cannot rule out planes missing every base
    point, so a negative answer comes from the tangential bound or not at all.

    Args:
        X: Curve in P^4
        q: Point on no secant line of X

    Returns:
        Tuple of (membership, certificate)

    Raises:
        UndecidedError: no plane was found and the tangential bound does not apply
    """
    if X.ambient != 4:
        raise InvalidInputError("Trisecant membership is defined for curves in P^4")
    X.require_nondegenerate()
    v = _check_point(X, q)
    if X.degree > settings.trisecant_max_degree:
        raise UndecidedError(
            f"Trisecant search for degree {X.degree} is beyond the configured maximum",
            limit=f"trisecant_max_degree={settings.trisecant_max_degree}",
        )
    for c in base_point_schedule(settings.trisecant_base_points):
        if _proportional(v, X.evaluate(1, c)):
            continue
        status, _, params = _trisecant_through(X, v, c, seed, ("st", "ts"))
        if status != WitnessStatus.ZERO_EXISTS:
            logger.debug(f"No trisecant plane through the base parameter {c}: {status.value}")
            continue
        if params is None:
            logger.debug(f"Trisecant plane through {c} only at algebraic parameters")
            continue
        if len(params) == 3:
            vectors = [X.evaluate(1, p) for p in params]
        else:
            vectors = [X.evaluate(1, params[0]), X.evaluate(0, 1), X.evaluate(1, params[1])]
        try:
            return True, _combination(v, vectors, f"trisecant plane through parameters {params}")
        except InvalidInputError:
            # collinear points after the projection: no plane, try the next base point
            logger.debug(f"Parameters {params} do not span a plane through {_point_text(v)}")
    bound = tangential_bound(X, v)
    if bound is not None:
        return False, bound
    raise UndecidedError(
        f"No trisecant plane through {_point_text(v)} at the scheduled base points",
        limit=f"trisecant_base_points={settings.trisecant_base_points}",
    )


def curve_point_rank(X: RationalCurve, q: Sequence[Number], seed: int = 0) -> Tuple[int, RankCertificate]:
    """
    Rank of a point with respect to a nondegenerate rational curve in P^3 or P^4

    Args:
        X: Curve
        q: Point of the ambient space
        seed: Seed for the eliminants

    Returns:
        Tuple of (rank, certificate); refutations of lower ranks are chained as children
    """
    if X.ambient not in RANK_CEILING:
        raise UnsupportedInstanceError(f"Point ranks are computed in P^3 and P^4, not P^{X.ambient}")
    X.require_nondegenerate()
    v = _check_point(X, q)
    member, cert1 = on_curve(X, v)
    if member:
        return 1, cert1
    secant, cert2 = secant_membership(X, v, seed=seed)
    if secant:
        return 2, cert2
    if X.ambient == 3:
        return 3, RankCertificate(kind=CertificateKind.REFUTATION, rank=3, children=(cert1, cert2),
                                  notes="rank at most 3 for curves in P^3")
    trisecant, cert3 = trisecant_membership(X, v, seed=seed)
    if trisecant:
        return 3, RankCertificate(kind=CertificateKind.DECOMPOSITION, rank=3, children=(cert1, cert2, cert3),
                                  vectors=cert3.vectors, coefficients=cert3.coefficients, target=cert3.target,
                                  trace=cert3.trace, notes=cert3.notes)
    return 4, RankCertificate(kind=CertificateKind.REFUTATION, rank=4, children=(cert1, cert2, cert3),
                              notes="rank at most 4 for curves in P^4")
