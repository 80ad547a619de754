"""
Binary forms and Sylvester's rank algorithm
Coefficients are stored against the binomial basis C(d,i) z0^(d-i) z1^i, so the
apolarity pairing is the plain Hankel matrix of the coefficient sequence.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import Poly, QQ, symbols

from config.settings import settings
from src.algebra.errors import InvalidInputError, UndecidedError
from src.algebra.matrices import QMatrix, kernel, rank, solve
from src.algebra.polynomials import Number, seeded_integers, squarefree_part, to_fraction, to_rational
from src.models.certificates import CertificateKind, RankCertificate, fraction_text

logger = logging.getLogger(__name__)

Z0, Z1 = symbols("z0 z1")
W = symbols("w")


@dataclass(frozen=True)
class BinaryForm:
    """A nonzero binary form f = sum C(d,i) a_i z0^(d-i) z1^i"""
    degree: int
    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0 or len(self.coefficients) != self.degree + 1:
            raise InvalidInputError(f"Binary form of degree {self.degree} needs {self.degree + 1} coefficients")
        if all(c == 0 for c in self.coefficients):
            raise InvalidInputError("Binary form must be nonzero")

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[Number]) -> "BinaryForm":
        return cls(len(coefficients) - 1, tuple(to_fraction(c) for c in coefficients))

    @classmethod
    def from_monomial_coefficients(cls, coefficients: Sequence[Number]) -> "BinaryForm":
        """From plain coefficients m_i of z0^(d-i) z1^i"""
        d = len(coefficients) - 1
        return cls(d, tuple(to_fraction(c) / comb(d, i) for i, c in enumerate(coefficients)))

    @classmethod
    def from_poly(cls, p: Poly, degree: Optional[int] = None) -> "BinaryForm":
        if len(p.gens) != 2:
            raise InvalidInputError(f"Binary form needs two variables, got {p.gens}")
        if p.is_zero:
            raise InvalidInputError("Binary form must be nonzero")
        d = p.total_degree() if degree is None else degree
        if not p.is_homogeneous or p.total_degree() != d:
            raise InvalidInputError(f"Not a binary form of degree {d}: {p.as_expr()}")
        terms = dict(p.terms())
        return cls.from_monomial_coefficients([terms.get((d - i, i), 0) for i in range(d + 1)])

    def monomial_coefficients(self) -> Tuple[Fraction, ...]:
        return tuple(comb(self.degree, i) * a for i, a in enumerate(self.coefficients))

    def to_poly(self, gens: Tuple = (Z0, Z1)) -> Poly:
        z0, z1 = gens
        d = self.degree
        expr = sum(to_rational(m) * z0 ** (d - i) * z1 ** i for i, m in enumerate(self.monomial_coefficients()))
        return Poly(expr, z0, z1, domain=QQ)

    def evaluate(self, z0: Number, z1: Number) -> Fraction:
        d = self.degree
        a, b = to_fraction(z0), to_fraction(z1)
        return sum((m * a ** (d - i) * b ** i for i, m in enumerate(self.monomial_coefficients())), Fraction(0))

    def hankel(self, a: int) -> QMatrix:
        """Catalecticant Cat_{a,d-a}: rows k = 0..d-a, columns j = 0..a, entry a_{k+j}"""
        if a < 0 or a > self.degree:
            raise InvalidInputError(f"Hankel level {a} outside [0, {self.degree}]")
        return QMatrix.from_rows(
            [[self.coefficients[k + j] for j in range(a + 1)] for k in range(self.degree - a + 1)],
            cols=a + 1,
        )


def moment_vector(point: Tuple[Number, Number], degree: int) -> Tuple[Fraction, ...]:
    """Binomial coordinates of (p0 z0 + p1 z1)^d, i.e. the point of the rational normal curve"""
    p0, p1 = to_fraction(point[0]), to_fraction(point[1])
    return tuple(p0 ** (degree - k) * p1 ** k for k in range(degree + 1))


def power_sum(points: Sequence[Tuple[Number, Number]], weights: Sequence[Number], degree: int) -> BinaryForm:
    """The form sum w_i (p0_i z0 + p1_i z1)^d"""
    total = [Fraction(0)] * (degree + 1)
    for p, w in zip(points, weights):
        for k, v in enumerate(moment_vector(p, degree)):
            total[k] += to_fraction(w) * v
    return BinaryForm.from_coefficients(total)


def catalecticant_rank(f: BinaryForm) -> int:
    """Largest Hankel rank, the catalecticant lower bound"""
    return max(rank(f.hankel(a)) for a in range(f.degree + 1))


def kernel_form(vector: Sequence[Fraction]) -> Poly:
    """Operator sum c_j w0^(a-j) w1^j as a binary form in (z0, z1)"""
    a = len(vector) - 1
    expr = sum(to_rational(c) * Z0 ** (a - j) * Z1 ** j for j, c in enumerate(vector))
    return Poly(expr, Z0, Z1, domain=QQ)


def binary_roots(vector: Sequence[Fraction]) -> Tuple[bool, List[Tuple[Fraction, Fraction]]]:
    """
    Squarefreeness and rational roots of a binary form given by its coefficients c_j of w0^(a-j) w1^j

    Returns:
        Tuple of (squarefree as a binary form, rational roots as points (w0:w1))
    """
    a = len(vector) - 1
    top = max(j for j, c in enumerate(vector) if c != 0)
    at_infinity = a - top
    roots: List[Tuple[Fraction, Fraction]] = []
    if at_infinity >= 1:
        roots.append((Fraction(0), Fraction(1)))
    if top == 0:
        return at_infinity <= 1, roots
    affine = Poly([to_rational(vector[j]) for j in range(top, -1, -1)], W, domain=QQ)
    _, is_sqf = squarefree_part(affine)
    for factor, _ in affine.factor_list()[1]:
        if factor.degree() == 1:
            c1, c0 = factor.all_coeffs()
            roots.append((Fraction(1), -to_fraction(c0) / to_fraction(c1)))
    return is_sqf and at_infinity <= 1, roots


def _draw_kernel_element(basis, rng) -> Tuple[Fraction, ...]:
    weights = seeded_integers(rng, len(basis), bound=9, nonzero=True)
    n = len(basis[0])
    return tuple(sum((w * v[i] for w, v in zip(weights, basis)), Fraction(0)) for i in range(n))


def _squarefree_element(basis, draws: int, seed: int) -> Optional[Tuple[Fraction, ...]]:
    """A squarefree kernel element: the basis vectors first, then seeded combinations"""
    for v in basis:
        if binary_roots(v)[0]:
            return v
    if len(basis) < 2:
        return None
    rng = np.random.default_rng(seed)
    for _ in range(draws):
        v = _draw_kernel_element(basis, rng)
        if any(c != 0 for c in v) and binary_roots(v)[0]:
            return v
    return None


def _certificate_for(f: BinaryForm, vector: Sequence[Fraction], notes: str) -> RankCertificate:
    """Decomposition when the kernel form splits over Q, otherwise the apolar form itself"""
    r = len(vector) - 1
    squarefree, roots = binary_roots(vector)
    if squarefree and len(roots) == r:
        vectors = [moment_vector(p, f.degree) for p in roots]
        M = QMatrix.from_rows([[v[k] for v in vectors] for k in range(f.degree + 1)], cols=r)
        weights = solve(M, f.coefficients)
        return RankCertificate(
            kind=CertificateKind.DECOMPOSITION,
            rank=r,
            target=f.coefficients,
            vectors=tuple(vectors),
            coefficients=weights,
            points=tuple(f"({fraction_text(p[0])}:{fraction_text(p[1])})" for p in roots),
            notes=notes,
        )
    return RankCertificate(
        kind=CertificateKind.SCHEME_MEMBERSHIP,
        rank=r,
        scheme=(kernel_form(vector),),
        form=f.to_poly(),
        notes=notes,
    )


def sylvester_rank(f: BinaryForm, seed: int = 0, draws: Optional[int] = None) -> Tuple[int, RankCertificate]:
    """
    Waring rank of a binary form

    Args:
        f: Nonzero binary form
        seed: Seed for the generic kernel elements
        draws: Number of generic draws per level (defaults to settings.generic_draws)

    Returns:
        Tuple of (rank, certificate)
    """
    draws = settings.generic_draws if draws is None else draws
    d = f.degree
    if d == 0:
        return 1, RankCertificate(kind=CertificateKind.DECOMPOSITION, rank=1, target=f.coefficients,
                                  vectors=((Fraction(1),),), coefficients=(f.coefficients[0],))

    level, basis = None, None
    for a in range(1, d + 1):
        result = kernel(f.hankel(a))
        if result.basis:
            level, basis = a, result.basis
            break
    logger.debug(f"Sylvester: degree {d}, first kernel at level {level} of dimension {len(basis)}")

    found = _squarefree_element(basis, draws, seed)
    if found is not None:
        return level, _certificate_for(f, found, f"squarefree apolar form at level {level}")

    if len(basis) >= 2:
        common = kernel_form(basis[0])
        for v in basis[1:]:
            common = common.gcd(kernel_form(v))
        k = common.total_degree()
        terms = dict(common.terms())
        common_vec = [to_fraction(terms.get((k - j, j), 0)) for j in range(k + 1)]
        # every kernel element is a multiple of `common`
        if k < 2 or binary_roots(common_vec)[0]:
            raise UndecidedError(
                f"No squarefree element among {draws} draws at level {level}", limit=f"generic_draws={draws}"
            )

    r = d - level + 2
    notes = f"apolar forms at level {level} are not squarefree; rank {r}"
    upper = kernel(f.hankel(r)).basis if r <= d else ()
    if r <= d:
        witness = _squarefree_element(upper, draws, seed + 1)
        if witness is not None:
            return r, _certificate_for(f, witness, notes)
    return r, RankCertificate(
        kind=CertificateKind.SCHEME_MEMBERSHIP,
        rank=r,
        scheme=(kernel_form(basis[0]),),
        form=f.to_poly(),
        notes=notes,
    )


def rnc_point_rank(point: Sequence[Number], seed: int = 0) -> Tuple[int, RankCertificate]:
    """
    Rank of a point of P^d with respect to the rational normal curve

    Args:
        point: Nonzero vector of length d+1, read in binomial coordinates

    Returns:
        Tuple of (rank, certificate) from sylvester_rank
    """
    if all(to_fraction(c) == 0 for c in point):
        raise InvalidInputError("The zero vector is not a point")
    return sylvester_rank(BinaryForm.from_coefficients(point), seed=seed)
