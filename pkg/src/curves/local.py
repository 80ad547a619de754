"""
Local structure of a rational curve at a parameter
Expansions are taken over the residue field of the parameter, so rational,
infinite and algebraic parameters go through the same code.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Optional, Tuple

from sympy import Matrix, Poly, QQ

from config.settings import settings
from src.algebra.errors import InvalidInputError
from src.algebra.fields import NumberField
from src.algebra.polynomials import common_gcd, to_fraction, to_rational
from src.binary.sylvester import Z0, Z1
from src.curves.curve import S, LinearSubspace, ParameterPoint, RationalCurve, pair_minors

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalExpansion:
    """
    Taylor coefficients of the parametrization at a parameter

    series[i][k] is the coefficient of e^k in component i, an element of `field`.
    """
    field: NumberField
    parameter: ParameterPoint
    series: Tuple[Tuple[Poly, ...], ...]

    @property
    def length(self) -> int:
        return len(self.series[0])

    def vector(self, k: int) -> List[Poly]:
        return [c[k] for c in self.series]

    def jump_orders(self) -> Tuple[int, ...]:
        """Orders at which the osculating flag grows"""
        n = len(self.series)
        jumps: List[int] = []
        rows: List[List[Poly]] = []
        for k in range(self.length):
            trial = rows + [self.vector(k)]
            if self.field.rank(trial) > len(jumps):
                rows = trial
                jumps.append(k)
                if len(jumps) == n:
                    return tuple(jumps)
        raise InvalidInputError("Curve is degenerate: the osculating flag does not fill the ambient space")


def local_expansion(X: RationalCurve, point: ParameterPoint, limit: Optional[int] = None) -> LocalExpansion:
    """
    Exact local expansion of X at a parameter

    Args:
        X: Rational curve
        point: Parameter, possibly algebraic
        limit: Extension degree limit (defaults to settings.extension_degree_limit)

    Returns:
        LocalExpansion with d+1 coefficients per component
    """
    limit = settings.extension_degree_limit if limit is None else limit
    d = X.degree
    if point.is_infinity:
        K = NumberField.from_poly(Poly(S, S, domain=QQ))
        series = []
        for p in X.polys():
            terms = dict(p.terms())
            series.append(tuple(K.rational(terms.get((k, d - k), 0)) for k in range(d + 1)))
        return LocalExpansion(K, point, tuple(series))

    K = NumberField.from_poly(point.affine_modulus(), limit)
    series = []
    for p in X.affine_polys(S):
        coeffs = []
        for k in range(d + 1):
            dk = p.diff((S, k)) if k else p
            coeffs.append(K.element((dk.as_expr() / factorial(k)).subs(S, K.gen)))
        series.append(tuple(coeffs))
    return LocalExpansion(K, point, tuple(series))


@dataclass(frozen=True)
class ContactProfile:
    """Orders (l0, ..., l_{n-1}) of the adapted local expansion"""
    orders: Tuple[int, ...]

    @property
    def is_immersion(self) -> bool:
        return self.orders[0] == 0

    @property
    def is_ordinary(self) -> bool:
        return all(v == 0 for v in self.orders)


def contact_profile(X: RationalCurve, point: ParameterPoint, limit: Optional[int] = None) -> ContactProfile:
    """
    Contact profile at a parameter

    Args:
        X: Rational curve in P^n
        point: Parameter

    Returns:
        ContactProfile with l_i = j_{i+1} - i - 1 from the flag jump orders j
    """
    j = local_expansion(X, point, limit).jump_orders()
    return ContactProfile(tuple(j[i + 1] - i - 1 for i in range(len(j) - 1)))


def _rational_vector(K: NumberField, v: List[Poly]) -> Tuple[Fraction, ...]:
    if K.degree != 1:
        raise InvalidInputError("Osculating spaces are computed at rational parameters only")
    return tuple(to_fraction(x.as_expr()) for x in v)


def osculating_subspace(X: RationalCurve, point: ParameterPoint, k: int) -> LinearSubspace:
    """
    Osculating k-space at a rational parameter

    Args:
        X: Rational curve in P^n
        point: Rational parameter
        k: 1 for the tangent line, 2 for the osculating plane, up to n-1

    Returns:
        LinearSubspace spanned by the first k+1 flag vectors
    """
    if k < 1 or k > X.ambient - 1:
        raise InvalidInputError(f"Osculating order {k} outside [1, {X.ambient - 1}]")
    exp = local_expansion(X, point)
    jumps = exp.jump_orders()
    return LinearSubspace.from_points([_rational_vector(exp.field, exp.vector(j)) for j in jumps[:k + 1]])


@dataclass(frozen=True)
class ContactDegree:
    """Length of X intersected with a subspace and its support"""
    degree: int
    support: Tuple[Tuple[ParameterPoint, int], ...]

    def labels(self) -> List[str]:
        return [f"{p.label()}^{m}" for p, m in self.support]


def subspace_contact_degree(X: RationalCurve, L: LinearSubspace) -> ContactDegree:
    """
    Degree of the scheme X intersected with L

    Args:
        X: Rational curve
        L: Subspace not containing X

    Returns:
        ContactDegree: the degree of the gcd of the pulled-back equations and its factors
    """
    polys = X.polys()
    pulled = []
    for eq in L.equations:
        form = sum((to_rational(c) * p for c, p in zip(eq, polys) if c != 0), Poly(0, Z0, Z1, domain=QQ))
        if not form.is_zero:
            pulled.append(form)
    if not pulled:
        raise InvalidInputError("The subspace contains the curve")
    G = common_gcd(pulled)
    support = []
    if G.total_degree() > 0:
        for f, m in G.factor_list()[1]:
            support.append((ParameterPoint(f.monic()), m))
    support.sort(key=lambda pm: (pm[0].degree, pm[0].label()))
    return ContactDegree(G.total_degree(), tuple(support))


def wronskian(X: RationalCurve) -> Poly:
    """Determinant of the affine parametrization and its first n derivatives"""
    phi = X.affine_polys(S)
    rows = []
    for k in range(X.ambient + 1):
        rows.append([(p.diff((S, k)) if k else p).as_expr() for p in phi])
    return Poly(Matrix(rows).det(method="berkowitz").expand(), S, domain=QQ)


@dataclass
class SpecialParameters:
    """Parameters with a given profile, plus eliminant factors left undecided"""
    points: List[ParameterPoint]
    undecided: List[str]


def _candidates(g: Poly, limit: int) -> Tuple[List[ParameterPoint], List[str]]:
    points, undecided = [], []
    if g.is_zero or g.degree() <= 0:
        return points, undecided
    for f, _ in g.factor_list()[1]:
        if f.degree() > limit:
            undecided.append(str(f.as_expr()))
            continue
        points.append(ParameterPoint.from_affine_factor(f))
    return points, undecided


def parameters_with_profile(X: RationalCurve, profile: Tuple[int, ...], candidates: Poly,
                            limit: Optional[int] = None) -> SpecialParameters:
    limit = settings.extension_degree_limit if limit is None else limit
    points, undecided = _candidates(candidates, limit)
    points.append(ParameterPoint.infinity())
    found = [p for p in points if contact_profile(X, p, limit).orders == tuple(profile)]
    logger.debug(f"Parameters with profile {profile}: {[p.label() for p in found]}")
    return SpecialParameters(found, undecided)


def stall_parameters(X: RationalCurve, limit: Optional[int] = None) -> SpecialParameters:
    """Parameters of a space curve with profile (0, 0, 1)"""
    if X.ambient != 3:
        raise InvalidInputError("Stalls are defined for curves in P^3")
    W = wronskian(X)
    if W.is_zero:
        raise InvalidInputError("Curve is degenerate")
    return parameters_with_profile(X, (0, 0, 1), W, limit)


def cusp_parameters(X: RationalCurve, limit: Optional[int] = None) -> SpecialParameters:
    """Parameters where the parametrization of a plane curve is not an immersion"""
    if X.ambient != 2:
        raise InvalidInputError("Cusp parameters are computed for plane curves")
    limit = settings.extension_degree_limit if limit is None else limit
    phi = X.affine_polys(S)
    minors = [m for m in pair_minors(phi, [p.diff(S) for p in phi]) if not m.is_zero]
    g = common_gcd(minors) if minors else Poly(0, S, domain=QQ)
    points, undecided = _candidates(g, limit)
    points.append(ParameterPoint.infinity())
    found = [p for p in points if not contact_profile(X, p, limit).is_immersion]
    return SpecialParameters(found, undecided)
