"""
Homogeneous forms and the apolarity pairing
Operators act on forms by differentiation: g o f = g(d/dx0, ..., d/dxn) f.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Sequence, Tuple

from sympy import Matrix, Poly, QQ, symbols

from src.algebra.errors import InvalidInputError
from src.algebra.matrices import QMatrix, kernel, rank
from src.algebra.polynomials import Number, homogeneous_monomials, to_fraction, to_rational

logger = logging.getLogger(__name__)


def standard_gens(nvars: int) -> Tuple:
    """Default generators x0, ..., x{n}"""
    return tuple(symbols(f"x0:{nvars}"))


@dataclass(frozen=True)
class SymForm:
    """A nonzero homogeneous form of degree d in n+1 variables"""
    nvars: int
    degree: int
    body: Poly

    def __post_init__(self):
        if self.body.is_zero:
            raise InvalidInputError("A form must be nonzero")
        if len(self.body.gens) != self.nvars:
            raise InvalidInputError(f"Form has {len(self.body.gens)} variables, expected {self.nvars}")
        if not self.body.is_homogeneous or self.body.total_degree() != self.degree:
            raise InvalidInputError(f"Form is not homogeneous of degree {self.degree}: {self.body.as_expr()}")

    @classmethod
    def from_poly(cls, body: Poly) -> "SymForm":
        body = Poly(body.as_expr(), *body.gens, domain=QQ)
        if body.is_zero:
            raise InvalidInputError("A form must be nonzero")
        return cls(nvars=len(body.gens), degree=body.total_degree(), body=body)

    @classmethod
    def from_expr(cls, expr, gens: Sequence) -> "SymForm":
        return cls.from_poly(Poly(expr, *gens, domain=QQ))

    @property
    def gens(self) -> Tuple:
        return self.body.gens

    def vector(self) -> Tuple[Fraction, ...]:
        """Coefficients against the degree-d monomials (grevlex)"""
        return form_vector(self.body, self.degree)


def form_vector(p: Poly, degree: int) -> Tuple[Fraction, ...]:
    coeffs = dict(p.terms()) if not p.is_zero else {}
    return tuple(
        to_fraction(coeffs.get(m, 0)) for m in homogeneous_monomials(len(p.gens), degree)
    )


def _falling(top: int, k: int) -> int:
    return factorial(top) // factorial(top - k)


def apply_operator(g: Poly, f: Poly) -> Poly:
    """
    The apolarity action g o f

    Args:
        g: Operator, read positionally in the variables of f
        f: Form

    Returns:
        g(d/dx) applied to f, as a polynomial in f's variables
    """
    if len(g.gens) != len(f.gens):
        raise InvalidInputError(f"Operator has {len(g.gens)} variables, form has {len(f.gens)}")
    out: Dict[Tuple[int, ...], object] = {}
    if g.is_zero or f.is_zero:
        return Poly(0, *f.gens, domain=QQ)
    for alpha, c in g.terms():
        for gamma, e in f.terms():
            if any(a > b for a, b in zip(alpha, gamma)):
                continue
            scale = 1
            for a, b in zip(alpha, gamma):
                scale *= _falling(b, a)
            mono = tuple(b - a for a, b in zip(alpha, gamma))
            out[mono] = out.get(mono, 0) + c * e * scale
    out = {m: v for m, v in out.items() if v != 0}
    if not out:
        return Poly(0, *f.gens, domain=QQ)
    return Poly.from_dict(out, *f.gens, domain=QQ)


def annihilates(g: Poly, f: Poly) -> bool:
    """Whether g o f = 0"""
    return apply_operator(g, f).is_zero


def annihilates_over(g: Poly, f: Poly, modulus: Poly) -> bool:
    """
    Whether g o f = 0 for an operator with coefficients in Q[a]/(modulus)

    Args:
        g: Operator in f's variables whose coefficients are polynomials in the generator of modulus
        f: Rational form
        modulus: Irreducible univariate polynomial defining the field

    Returns:
        True iff every coefficient of g o f reduces to zero modulo the modulus
    """
    a = modulus.gen
    lifted = Poly(g.as_expr(), *f.gens, a, domain=QQ)
    by_power: Dict[int, Dict[Tuple[int, ...], object]] = {}
    for monom, c in lifted.terms():
        by_power.setdefault(monom[-1], {})[monom[:-1]] = c
    collected: Dict[Tuple[int, ...], object] = {}
    for k, terms in by_power.items():
        image = apply_operator(Poly.from_dict(terms, *f.gens, domain=QQ), f)
        for mono, c in image.terms():
            collected[mono] = collected.get(mono, 0) + c * a ** k
    return all(Poly(c, a, domain=QQ).rem(modulus).is_zero for c in collected.values())


def catalecticant(f: SymForm, a: int) -> QMatrix:
    """
    Matrix of the apolar action T_a -> S_{d-a}

    Args:
        f: Form of degree d
        a: Operator degree, 0 <= a <= d

    Returns:
        QMatrix with rows indexed by degree-(d-a) monomials and columns by degree-a operators
    """
    if a < 0 or a > f.degree:
        raise InvalidInputError(f"Catalecticant degree {a} outside [0, {f.degree}]")
    rows_m = homogeneous_monomials(f.nvars, f.degree - a)
    cols_m = homogeneous_monomials(f.nvars, a)
    row_index = {m: i for i, m in enumerate(rows_m)}
    coeffs = {m: to_fraction(c) for m, c in f.body.terms()}
    entries = [[Fraction(0)] * len(cols_m) for _ in rows_m]
    for j, alpha in enumerate(cols_m):
        for gamma, c in coeffs.items():
            if any(x > y for x, y in zip(alpha, gamma)):
                continue
            scale = 1
            for x, y in zip(alpha, gamma):
                scale *= _falling(y, x)
            beta = tuple(y - x for x, y in zip(alpha, gamma))
            entries[row_index[beta]][j] += c * scale
    return QMatrix.from_rows(entries, cols=len(cols_m))


def apolar_basis(f: SymForm, k: int) -> List[Poly]:
    """
    Basis of the degree-k piece of the apolar ideal

    Args:
        f: Form
        k: Degree, 0 <= k <= d

    Returns:
        Operators (polynomials in f's variables) spanning (f^perp)_k
    """
    cols_m = homogeneous_monomials(f.nvars, k)
    result = kernel(catalecticant(f, k))
    basis = []
    for v in result.basis:
        terms = {m: to_rational(c) for m, c in zip(cols_m, v) if c != 0}
        basis.append(Poly.from_dict(terms, *f.gens, domain=QQ))
    return basis


def catalecticant_ranks(f: SymForm) -> List[int]:
    return [rank(catalecticant(f, a)) for a in range(f.degree + 1)]


def border_rank_lb(f: SymForm) -> int:
    """Largest catalecticant rank, a lower bound for the border rank"""
    return max(catalecticant_ranks(f))


def power_form(point: Sequence[Number], degree: int, gens: Sequence) -> Poly:
    """The form l_p^d for the linear form l_p = sum p_i x_i"""
    ell = sum(to_rational(c) * g for c, g in zip(point, gens))
    return Poly(ell ** degree, *gens, domain=QQ)


def hessian(f: SymForm) -> Poly:
    """Determinant of the matrix of second partials"""
    gens = f.gens
    H = Matrix([[f.body.diff(a).diff(b).as_expr() for b in gens] for a in gens])
    return Poly(H.det(method="berkowitz").expand(), *gens, domain=QQ)
