"""
Common zeros of homogeneous polynomials in the projective plane
Covered by the charts z = 1, then (x : 1 : 0), then the point (1 : 0 : 0).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

from sympy import Poly, QQ

from src.algebra.elimination import solve_bivariate
from src.algebra.polynomials import primitive_vector, to_fraction, to_rational

logger = logging.getLogger(__name__)


@dataclass
class PlaneZeros:
    """Zero locus summary: rational points, count of distinct complex points"""
    points: List[Tuple[int, ...]] = field(default_factory=list)
    count: int = 0
    infinite: bool = False
    undecided: bool = False

    @property
    def empty(self) -> bool:
        return not self.infinite and not self.undecided and self.count == 0


def plane_common_zeros(polys: Sequence[Poly], seed: int = 0) -> PlaneZeros:
    """
    Common zeros in P^2 of homogeneous polynomials in three variables

    Args:
        polys: Homogeneous polynomials sharing the generators (x, y, z)
        seed: Seed for the eliminant combinations

    Returns:
        PlaneZeros with rational points (primitive vectors) and the number of distinct zeros
    """
    x, y, z = polys[0].gens
    out = PlaneZeros()

    affine = [Poly(p.as_expr().subs({z: 1}), x, y, domain=QQ) for p in polys]
    sol = solve_bivariate(affine, seed=seed)
    if sol.curve_factors:
        out.infinite = True
        return out
    out.undecided = bool(sol.undecided)
    out.count += sol.finite_count()
    for block in sol.blocks:
        for a, b in block.rational_points():
            out.points.append(primitive_vector((a, b, 1)))

    line = [Poly(p.as_expr().subs({z: 0, y: 1}), x, domain=QQ) for p in polys]
    sol = solve_bivariate(line)
    if sol.curve_factors:
        out.infinite = True
        return out
    out.count += sol.finite_count()
    for block in sol.blocks:
        root = block.field_root()
        if root is not None:
            out.points.append(primitive_vector((root, 1, 0)))

    if all(p.as_expr().subs({x: 1, y: 0, z: 0}) == 0 for p in polys):
        out.count += 1
        out.points.append((1, 0, 0))

    out.points.sort()
    logger.debug(f"Plane zeros: {out.count} point(s), rational {out.points}")
    return out


def evaluate(p: Poly, point: Sequence) -> Fraction:
    """Value of a polynomial at a rational point"""
    return to_fraction(p.as_expr().subs(dict(zip(p.gens, [to_rational(c) for c in point]))))
