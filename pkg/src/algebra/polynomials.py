"""
Polynomial helpers over the rationals
Thin layer over sympy Poly: fixed monomial order, squarefree parts, resultants
and the conversions between sympy numbers and Fractions used by the matrices.
"""
import itertools
import logging
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
from sympy import Poly, QQ, Rational, Symbol, sympify
from sympy.polys.orderings import grevlex

from src.algebra.errors import InvalidInputError

logger = logging.getLogger(__name__)

# Every serialized or enumerated term list uses graded reverse lexicographic order
MONOMIAL_ORDER = "grevlex"

Number = Union[int, Fraction, Rational]


def to_fraction(value: Number) -> Fraction:
    """Convert an int, Fraction or sympy rational into a Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    r = sympify(value)
    if not r.is_Rational:
        raise InvalidInputError(f"Not a rational number: {value}")
    return Fraction(int(r.p), int(r.q))


def to_rational(value: Number) -> Rational:
    """Convert an int or Fraction into a sympy Rational"""
    f = to_fraction(value)
    return Rational(f.numerator, f.denominator)


def make_poly(expr, gens: Sequence[Symbol]) -> Poly:
    """Build a Poly over QQ in the given generators"""
    return Poly(expr, *gens, domain=QQ)


def ordered_terms(p: Poly) -> List[Tuple[Tuple[int, ...], Fraction]]:
    """
    Terms of p in the fixed graded reverse lexicographic order (leading term first)

    Args:
        p: Polynomial over QQ

    Returns:
        List of (exponent vector, coefficient) pairs, no zero coefficients
    """
    if p.is_zero:
        return []
    return [(tuple(m), to_fraction(c)) for m, c in p.terms(order=MONOMIAL_ORDER)]


def homogeneous_monomials(nvars: int, degree: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of all degree-`degree` monomials in `nvars` variables, grevlex descending"""
    if degree < 0:
        return []
    exps = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        exps.append(tuple(e))
    return sorted(set(exps), key=grevlex, reverse=True)


def squarefree_part(p: Poly) -> Tuple[Poly, bool]:
    """
    Squarefree part of a univariate polynomial

    Args:
        p: Nonzero univariate polynomial

    Returns:
        Tuple of (p / gcd(p, p') made monic, whether gcd(p, p') is constant)
    """
    if p.is_zero:
        raise InvalidInputError("squarefree_part of the zero polynomial")
    if len(p.gens) != 1:
        raise InvalidInputError(f"squarefree_part expects a univariate polynomial, got gens {p.gens}")
    if p.degree() <= 0:
        return p.monic(), True
    g = p.gcd(p.diff(p.gens[0]))
    part = p.exquo(g).monic()
    return part, g.degree() <= 0


def resultant(p: Poly, q: Poly, var: Union[int, Symbol]) -> Poly:
    """
    Sylvester resultant of p and q with respect to one variable

    Computed by sympy's subresultant remainder sequence.

    Args:
        p: Nonzero polynomial of positive degree in var
        q: Nonzero polynomial of positive degree in var
        var: Generator index (into p's generators) or the Symbol itself

    Returns:
        Polynomial in the remaining generators (a constant polynomial in var when none remain)
    """
    p, q = p.unify(q)
    x = p.gens[var] if isinstance(var, int) else var
    if x not in p.gens:
        raise InvalidInputError(f"{x} is not a generator of the inputs")
    if p.is_zero or q.is_zero:
        raise InvalidInputError("resultant of a zero polynomial")
    if p.degree(x) <= 0 or q.degree(x) <= 0:
        raise InvalidInputError(f"resultant needs positive degree in {x}")

    others = [g for g in p.gens if g != x]
    P = Poly(p.as_expr(), x, *others, domain=QQ)
    Q = Poly(q.as_expr(), x, *others, domain=QQ)
    res = P.resultant(Q)
    if others:
        return Poly(res.as_expr() if isinstance(res, Poly) else res, *others, domain=QQ)
    return Poly(res, x, domain=QQ)


def common_gcd(polys: Iterable[Poly]) -> Poly:
    """gcd of a family of polynomials sharing generators"""
    return reduce(lambda a, b: a.gcd(b), polys)


def divides(h: Poly, f: Poly) -> bool:
    """Whether h divides f exactly (h nonzero)"""
    if f.is_zero:
        return True
    h, f = h.unify(f)
    return h.gcd(f).total_degree() == h.total_degree()


def primitive_vector(values: Sequence[Number]) -> Tuple[int, ...]:
    """
    Canonical representative of a projective point

    Args:
        values: Nonzero rational vector

    Returns:
        Primitive integer vector whose leading nonzero entry is positive
    """
    fr = [to_fraction(v) for v in values]
    if all(v == 0 for v in fr):
        raise InvalidInputError("The zero vector is not a projective point")
    den = lcm(*[v.denominator for v in fr])
    ints = [int(v * den) for v in fr]
    g = reduce(gcd, [abs(i) for i in ints if i != 0])
    ints = [i // g for i in ints]
    lead = next(i for i in ints if i != 0)
    if lead < 0:
        ints = [-i for i in ints]
    return tuple(ints)


def seeded_integers(rng: np.random.Generator, size: int, bound: int = 5, nonzero: bool = False) -> List[int]:
    """Small integers drawn from [-bound, bound] by a seeded generator"""
    out = []
    while len(out) < size:
        v = int(rng.integers(-bound, bound + 1))
        if nonzero and v == 0:
            continue
        out.append(v)
    return out
