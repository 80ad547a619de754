"""
Parametrized rational curves
A curve of degree d in P^n is given by n+1 binary forms of degree d in (z0, z1).
The affine chart z0 = 1, z1 = s covers every parameter except (0 : 1).
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sympy import Poly, QQ, symbols

from src.algebra.elimination import SystemWitness, WitnessStatus, system_has_zero_off
from src.algebra.errors import InvalidInputError
from src.algebra.matrices import QMatrix, kernel, rank
from src.algebra.polynomials import Number, common_gcd, primitive_vector, to_fraction, to_rational
from src.binary.sylvester import Z0, Z1, BinaryForm

logger = logging.getLogger(__name__)

S, T = symbols("s t")


@dataclass(frozen=True)
class ParameterPoint:
    """
    A point of P^1 given by an irreducible binary form vanishing on it

    Rational points (a : b) have the linear factor b z0 - a z1; infinity (0 : 1)
    is z0; algebraic points carry their minimal binary form.
    """
    factor: Poly

    def __post_init__(self):
        if self.factor.gens != (Z0, Z1) or not self.factor.is_homogeneous or self.factor.total_degree() < 1:
            raise InvalidInputError(f"Parameter points need a binary form in (z0, z1): {self.factor}")

    @classmethod
    def at(cls, z0: Number, z1: Number) -> "ParameterPoint":
        a, b = primitive_vector((z0, z1))
        return cls(Poly(b * Z0 - a * Z1, Z0, Z1, domain=QQ).monic())

    @classmethod
    def affine(cls, s: Number) -> "ParameterPoint":
        return cls.at(1, s)

    @classmethod
    def infinity(cls) -> "ParameterPoint":
        return cls(Poly(Z0, Z0, Z1, domain=QQ))

    @classmethod
    def from_affine_factor(cls, m: Poly) -> "ParameterPoint":
        """The roots of an irreducible polynomial in s, as points (1 : s)"""
        d = m.degree()
        expr = sum(c * Z0 ** (d - k) * Z1 ** k for k, c in zip(range(d, -1, -1), m.all_coeffs()))
        return cls(Poly(expr, Z0, Z1, domain=QQ).monic())

    @property
    def degree(self) -> int:
        return self.factor.total_degree()

    @property
    def is_infinity(self) -> bool:
        return self.degree == 1 and self.factor.coeff_monomial(Z1) == 0

    def affine_modulus(self) -> Poly:
        """Polynomial in s whose roots are the affine coordinates"""
        if self.is_infinity:
            raise InvalidInputError("The point at infinity has no affine coordinate")
        return Poly(self.factor.as_expr().subs({Z0: 1, Z1: S}), S, domain=QQ)

    def coordinates(self) -> Optional[Tuple[Fraction, Fraction]]:
        """(z0, z1) when the point is rational"""
        if self.degree != 1:
            return None
        if self.is_infinity:
            return Fraction(0), Fraction(1)
        m = self.affine_modulus()
        c1, c0 = m.all_coeffs()
        return Fraction(1), -to_fraction(c0) / to_fraction(c1)

    def label(self) -> str:
        coords = self.coordinates()
        if coords is not None:
            return f"({coords[0]}:{coords[1]})"
        return f"[{self.factor.as_expr()}]"


@dataclass(frozen=True)
class LinearSubspace:
    """A projective subspace by its equations (rows) and a spanning set of points"""
    ambient: int
    equations: Tuple[Tuple[Fraction, ...], ...]
    points: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def from_points(cls, points: Sequence[Sequence[Number]]) -> "LinearSubspace":
        n = len(points[0]) - 1
        rows = [[to_fraction(c) for c in p] for p in points]
        eqs = kernel(QMatrix.from_rows(rows, cols=n + 1)).basis
        basis = cls._basis(rows, n + 1)
        return cls(n, tuple(eqs), basis)

    @classmethod
    def from_equations(cls, equations: Sequence[Sequence[Number]], ambient: int) -> "LinearSubspace":
        rows = [[to_fraction(c) for c in e] for e in equations]
        pts = kernel(QMatrix.from_rows(rows, cols=ambient + 1)).basis if rows else tuple(
            tuple(Fraction(int(i == j)) for j in range(ambient + 1)) for i in range(ambient + 1))
        return cls(ambient, cls._basis(rows, ambient + 1), tuple(pts))

    @staticmethod
    def _basis(rows, width) -> Tuple[Tuple[Fraction, ...], ...]:
        if not rows:
            return ()
        from src.algebra.matrices import reduced_echelon
        R, _ = reduced_echelon(QMatrix.from_rows(rows, cols=width))
        return tuple(tuple(r) for r in R)

    @property
    def dimension(self) -> int:
        return len(self.points) - 1

    def contains(self, point: Sequence[Number]) -> bool:
        v = [to_fraction(c) for c in point]
        return all(sum(e * x for e, x in zip(eq, v)) == 0 for eq in self.equations)

    def equation_text(self) -> List[str]:
        names = [f"x{i}" for i in range(self.ambient + 1)]
        out = []
        for eq in self.equations:
            terms = [f"{c}*{x}" if c != 1 else x for c, x in zip(eq, names) if c != 0]
            out.append(" + ".join(terms) + " = 0")
        return out


@dataclass(frozen=True)
class RationalCurve:
    """Curve parametrized by n+1 binary forms of the same degree"""
    ambient: int
    degree: int
    components: Tuple[BinaryForm, ...]

    def __post_init__(self):
        if len(self.components) != self.ambient + 1:
            raise InvalidInputError(f"A curve in P^{self.ambient} needs {self.ambient + 1} components")
        if any(c.degree != self.degree for c in self.components):
            raise InvalidInputError(f"All components must have degree {self.degree}")
        if common_gcd(self.polys()).total_degree() > 0:
            raise InvalidInputError("Components share a common factor (base point)")

    @classmethod
    def from_polys(cls, polys: Sequence[Poly]) -> "RationalCurve":
        polys = [Poly(p.as_expr().subs(dict(zip(p.gens, (Z0, Z1))), simultaneous=True), Z0, Z1, domain=QQ)
                 for p in polys]
        d = max(p.total_degree() for p in polys)
        return cls(len(polys) - 1, d, tuple(BinaryForm.from_poly(p, d) for p in polys))

    @classmethod
    def from_exprs(cls, exprs: Sequence) -> "RationalCurve":
        return cls.from_polys([Poly(e, Z0, Z1, domain=QQ) for e in exprs])

    def polys(self) -> Tuple[Poly, ...]:
        return tuple(c.to_poly() for c in self.components)

    def affine_polys(self, var=S) -> Tuple[Poly, ...]:
        """Components on the chart z0 = 1"""
        return tuple(Poly(p.as_expr().subs({Z0: 1, Z1: var}), var, domain=QQ) for p in self.polys())

    def coefficient_matrix(self) -> QMatrix:
        """Rows indexed by monomials z0^(d-i) z1^i, columns by components"""
        cols = [c.monomial_coefficients() for c in self.components]
        return QMatrix.from_rows([[col[i] for col in cols] for i in range(self.degree + 1)], cols=self.ambient + 1)

    def is_nondegenerate(self) -> bool:
        return rank(self.coefficient_matrix()) == self.ambient + 1

    def require_nondegenerate(self) -> "RationalCurve":
        """The curve itself, or InvalidInputError when it lies in a hyperplane"""
        if not self.is_nondegenerate():
            raise InvalidInputError(f"Curve of degree {self.degree} lies in a hyperplane of P^{self.ambient}")
        return self

    def evaluate(self, z0: Number, z1: Number) -> Tuple[Fraction, ...]:
        return tuple(c.evaluate(z0, z1) for c in self.components)

    def point(self, parameter: ParameterPoint) -> Tuple[int, ...]:
        coords = parameter.coordinates()
        if coords is None:
            raise InvalidInputError(f"Parameter {parameter.label()} is not rational")
        return primitive_vector(self.evaluate(*coords))

    def transform(self, matrix: Sequence[Sequence[Number]]) -> "RationalCurve":
        """Image under a linear map of the ambient coordinates"""
        polys = self.polys()
        out = []
        for row in matrix:
            out.append(sum((to_rational(c) * p for c, p in zip(row, polys) if c != 0), Poly(0, Z0, Z1, domain=QQ)))
        return RationalCurve.from_polys(_clear_gcd(out))

    def injectivity_witness(self, seed: int = 0) -> SystemWitness:
        """
        Whether two distinct parameters share an image

        Returns:
            SystemWitness over the chart pairs; no-zero means the parametrization is injective
        """
        return _pair_witness(self, seed)

    def is_injective(self, seed: int = 0) -> bool:
        return self.injectivity_witness(seed).status == WitnessStatus.NO_ZERO


def _clear_gcd(polys: Sequence[Poly]) -> List[Poly]:
    nonzero = [p for p in polys if not p.is_zero]
    if not nonzero:
        raise InvalidInputError("Linear map kills the curve")
    g = common_gcd(nonzero)
    if g.total_degree() > 0:
        return [p.exquo(g) if not p.is_zero else p for p in polys]
    return list(polys)


def pair_minors(first: Sequence[Poly], second: Sequence[Poly]) -> List[Poly]:
    """2x2 minors of the matrix with rows first and second"""
    n = len(first)
    return [first[i] * second[j] - first[j] * second[i] for i in range(n) for j in range(i + 1, n)]


def _pair_witness(X: RationalCurve, seed: int) -> SystemWitness:
    phi_s = X.affine_polys(S)
    phi_t = X.affine_polys(T)
    minors = [Poly(m.as_expr(), S, T, domain=QQ) for m in pair_minors(
        [Poly(p.as_expr(), S, T, domain=QQ) for p in phi_s],
        [Poly(p.as_expr(), S, T, domain=QQ) for p in phi_t])]
    diag = Poly(S - T, S, T, domain=QQ)
    reduced = [m.div(diag)[0] for m in minors if not m.is_zero]
    if not reduced:
        raise InvalidInputError("Curve is constant")
    # after removing one diagonal factor, zeros on s = t are cusps, not pairs
    witness = system_has_zero_off(reduced, excluded=diag, seed=seed)
    if witness.status != WitnessStatus.NO_ZERO:
        return witness
    at_inf = [Poly(to_rational(c), T, domain=QQ) for c in X.evaluate(0, 1)]
    line = pair_minors(at_inf, phi_t)
    return system_has_zero_off(line, seed=seed)


def rnc(d: int) -> RationalCurve:
    """Rational normal curve z0^(d-i) z1^i"""
    if d < 1:
        raise InvalidInputError("Degree must be positive")
    return RationalCurve.from_exprs([Z0 ** (d - i) * Z1 ** i for i in range(d + 1)])


def _complement_basis(vectors: Sequence[Sequence[Fraction]], n: int) -> List[Tuple[Fraction, ...]]:
    return list(kernel(QMatrix.from_rows([list(v) for v in vectors], cols=n)).basis)


def project(X: RationalCurve, center: Sequence[Sequence[Number]]) -> RationalCurve:
    """
    Linear projection from a point or a line

    Args:
        X: Curve in P^n
        center: One point (projection to P^(n-1)) or two points spanning a line (to P^(n-2))

    Returns:
        The projected curve after removing base points; projecting from a point of X drops the degree
    """
    if isinstance(center[0], (int, Fraction)) or not hasattr(center[0], "__len__"):
        center = [center]
    rows = [[to_fraction(c) for c in p] for p in center]
    if rank(QMatrix.from_rows(rows, cols=X.ambient + 1)) != len(rows):
        raise InvalidInputError("Projection center points are dependent")
    A = _complement_basis(rows, X.ambient + 1)
    polys = X.polys()
    images = [sum((to_rational(c) * p for c, p in zip(a, polys) if c != 0), Poly(0, Z0, Z1, domain=QQ)) for a in A]
    cleared = _clear_gcd(images)
    lost = X.degree - max(p.total_degree() for p in cleared if not p.is_zero)
    if len(rows) == 2 and lost > 0:
        raise InvalidInputError("Center line meets the curve")
    logger.debug(f"Projection of degree-{X.degree} curve from {len(rows)} point(s): degree drops by {lost}")
    return RationalCurve.from_polys(cleared)
