"""
Exact decision procedure for polynomial systems in one or two variables
A system is split into a curve part (the gcd of its members) and a finite part.
The finite part is projected by resultants of random combinations; every factor of
the eliminant is lifted back over Q[a]/(factor) and checked against the excluded locus.
"""
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Poly, QQ

from config.settings import settings
from src.algebra.errors import InvalidInputError, UndecidedError
from src.algebra.fields import KPoly, NumberField
from src.algebra.polynomials import common_gcd, divides, resultant, seeded_integers, squarefree_part, to_fraction, to_rational

logger = logging.getLogger(__name__)


class WitnessStatus(Enum):
    """Outcome of a zero-existence query"""
    ZERO_EXISTS = "zero-exists"
    NO_ZERO = "no-zero"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class SystemWitness:
    """
    Certificate of a zero-existence decision

    When the deciding system is attached, validate() substitutes a rational
    witness back into it and re-runs the elimination behind a no-zero answer.
    """
    status: WitnessStatus
    description: Optional[str] = None
    eliminant_factors: Tuple[str, ...] = ()
    witness: Optional[Tuple[Fraction, ...]] = None
    limit: Optional[str] = None
    variable_order: str = ""
    system: Tuple[Poly, ...] = field(default=(), compare=False, repr=False)
    excluded: Optional[Poly] = field(default=None, compare=False, repr=False)
    seed: int = field(default=0, compare=False, repr=False)

    def validate(self) -> bool:
        if self.status == WitnessStatus.ZERO_EXISTS and not self.description:
            return False
        if self.status == WitnessStatus.UNDECIDED and not self.limit:
            return False
        if self.witness is not None and self.status != WitnessStatus.ZERO_EXISTS:
            return False
        if not self.system:
            return True
        if self.witness is not None:
            gens = self.system[0].gens
            if len(self.witness) != len(gens):
                return False
            at = dict(zip(gens, [to_rational(c) for c in self.witness]))
            if any(p.as_expr().subs(at) != 0 for p in self.system):
                return False
            return self.excluded is None or self.excluded.as_expr().subs(at) != 0
        if self.status == WitnessStatus.NO_ZERO:
            again = system_has_zero_off(list(self.system), excluded=self.excluded,
                                        order=self.variable_order or "st", seed=self.seed)
            return again.status == WitnessStatus.NO_ZERO
        return True

    def to_dict(self) -> Dict:
        return {
            "status": self.status.value,
            "description": self.description,
            "eliminant_factors": list(self.eliminant_factors),
            "witness": [f"{w.numerator}/{w.denominator}" for w in self.witness] if self.witness else None,
            "limit": self.limit,
            "variable_order": self.variable_order,
        }


@dataclass
class SolutionBlock:
    """
    Common zeros lying over one irreducible factor of the eliminant

    The points are (a, b) with a a root of the field modulus and b a root of
    `fiber` over Q[a]; `count` is the number of distinct complex points.
    """
    field: NumberField
    fiber: KPoly
    keep_index: int
    count: int
    off_excluded: bool

    def field_root(self) -> Optional[Fraction]:
        """The projected coordinate when it is rational"""
        if self.field.degree != 1:
            return None
        return -to_fraction(self.field.modulus.all_coeffs()[1])

    def rational_points(self) -> List[Tuple[Fraction, Fraction]]:
        """Points of the block with both coordinates rational"""
        if self.field.degree != 1:
            return []
        a = -to_fraction(self.field.modulus.all_coeffs()[1])
        coeffs = [c.as_expr() for c in self.fiber]
        fiber = Poly(coeffs, self.field.gen, domain=QQ) if coeffs else None
        if fiber is None or fiber.degree() < 1:
            return []
        points = []
        for factor, _ in fiber.factor_list()[1]:
            if factor.degree() == 1:
                b = -to_fraction(factor.all_coeffs()[1]) / to_fraction(factor.all_coeffs()[0])
                points.append((a, b) if self.keep_index == 0 else (b, a))
        return points

    def label(self) -> str:
        return f"[{self.field.modulus.as_expr()}] x deg {len(self.fiber) - 1}"


@dataclass
class SolutionSet:
    """Common zeros of a bivariate system, split into a curve part and finite blocks"""
    gens: Tuple
    curve_factors: List[Poly] = field(default_factory=list)
    blocks: List[SolutionBlock] = field(default_factory=list)
    undecided: List[str] = field(default_factory=list)
    eliminant: Optional[Poly] = None

    @property
    def positive_dimensional(self) -> bool:
        return bool(self.curve_factors)

    def finite_count(self) -> int:
        return sum(b.count for b in self.blocks)


def _as_system(polys: Sequence[Poly], excluded: Optional[Poly]) -> Tuple[List[Poly], Poly, Tuple]:
    if not polys:
        raise InvalidInputError("Empty polynomial system")
    gens = polys[0].gens
    for p in polys[1:]:
        if p.gens != gens:
            gens = tuple(dict.fromkeys(gens + p.gens))
    if len(gens) not in (1, 2):
        raise InvalidInputError(f"Systems must be in one or two variables, got {gens}")
    system = [Poly(p.as_expr(), *gens, domain=QQ) for p in polys]
    ex = Poly(1 if excluded is None else excluded.as_expr(), *gens, domain=QQ)
    if ex.is_zero:
        raise InvalidInputError("Excluded polynomial must be nonzero")
    return system, ex, gens


def _eliminant(system: List[Poly], elim: int, keep_gen, draws: int, seed: int) -> Optional[Poly]:
    """gcd of resultants of random combinations; vanishes on the projection of the finite part"""
    rng = np.random.default_rng(seed)
    R = None
    pure = [g for g in system if g.degree(elim) <= 0]
    for g in pure:
        r = Poly(g.as_expr(), keep_gen, domain=QQ)
        R = r if R is None else R.gcd(r)

    mixed = [g for g in system if g.degree(elim) > 0]
    if len(mixed) >= 2 or (mixed and R is None):
        attempts = 0
        made = 0
        while made < draws and attempts < 4 * draws:
            attempts += 1
            lam = seeded_integers(rng, len(system), bound=7, nonzero=True)
            mu = seeded_integers(rng, len(system), bound=7, nonzero=True)
            P1 = sum((c * g for c, g in zip(lam, system)), Poly(0, *system[0].gens, domain=QQ))
            P2 = sum((c * g for c, g in zip(mu, system)), Poly(0, *system[0].gens, domain=QQ))
            if P1.is_zero or P2.is_zero:
                continue
            if P1.degree(elim) > 0 and P2.degree(elim) > 0:
                r = resultant(P1, P2, elim)
            elif P1.degree(elim) <= 0:
                r = P1
            else:
                r = P2
            r = Poly(r.as_expr(), keep_gen, domain=QQ)
            if r.is_zero:
                continue
            made += 1
            R = r if R is None else R.gcd(r)
            if R.degree() <= 0:
                break
    return R


def _solve_univariate(system: List[Poly], excluded: Poly) -> Tuple[SolutionSet, Optional[Tuple[Fraction]]]:
    gens = system[0].gens
    result = SolutionSet(gens=gens)
    nonzero = [p for p in system if not p.is_zero]
    if not nonzero:
        result.curve_factors.append(Poly(0, *gens, domain=QQ))
        return result, None
    g = common_gcd(nonzero)
    result.eliminant = g
    if g.degree() <= 0:
        return result, None
    witness = None
    for factor, _ in g.factor_list()[1]:
        K = NumberField.from_poly(factor)
        off = not divides(factor, excluded)
        result.blocks.append(SolutionBlock(field=K, fiber=(K.one(),), keep_index=0, count=factor.degree(), off_excluded=off))
        if off and factor.degree() == 1 and witness is None:
            c = factor.all_coeffs()
            witness = (-to_fraction(c[1]) / to_fraction(c[0]),)
    return result, witness


def solve_bivariate(
    polys: Sequence[Poly],
    excluded: Optional[Poly] = None,
    order: str = "st",
    limit: Optional[int] = None,
    draws: Optional[int] = None,
    seed: int = 0,
) -> SolutionSet:
    """
    Describe the common complex zeros of a system in one or two variables

    Args:
        polys: Polynomials sharing the same one or two generators
        excluded: Polynomial whose zero locus does not count
        order: "st" projects onto the first generator, "ts" onto the second
        limit: Largest extension degree to compute in
        draws: Number of independent resultants combined into the eliminant
        seed: Seed for the random combinations

    Returns:
        SolutionSet with curve factors, finite blocks and undecided eliminant factors
    """
    system, ex, gens = _as_system(polys, excluded)
    limit = settings.extension_degree_limit if limit is None else limit
    draws = settings.combination_draws if draws is None else draws
    if len(gens) == 1:
        return _solve_univariate(system, ex)[0]

    result = SolutionSet(gens=gens)
    nonzero = [p for p in system if not p.is_zero]
    if not nonzero:
        result.curve_factors.append(Poly(0, *gens, domain=QQ))
        return result

    G = common_gcd(nonzero)
    if G.total_degree() > 0:
        result.curve_factors.extend(f for f, _ in G.factor_list()[1])
        nonzero = [p.exquo(G) for p in nonzero]
    if any(p.total_degree() <= 0 for p in nonzero):
        return result

    keep = 0 if order == "st" else 1
    elim = 1 - keep
    R = _eliminant(nonzero, elim, gens[keep], draws, seed)
    if R is None:
        raise UndecidedError("No nonzero resultant among the random combinations", limit="combination_draws")
    result.eliminant = R
    if R.degree() <= 0:
        return result

    for m, _ in R.factor_list()[1]:
        if m.degree() > limit:
            result.undecided.append(str(m.as_expr()))
            logger.debug(f"Eliminant factor of degree {m.degree()} exceeds limit {limit}")
            continue
        K = NumberField.from_poly(m)
        fiber: KPoly = ()
        for p in nonzero:
            fiber = K.pgcd(fiber, K.specialize(p, keep))
            if len(fiber) == 1:
                break
        if not fiber:
            # every member vanishes on the whole line; impossible once the gcd is removed
            raise UndecidedError(f"Degenerate fiber over {m.as_expr()}", limit="fiber")
        if len(fiber) == 1:
            continue
        D = K.psquarefree(fiber)
        ex_line = K.specialize(ex, keep)
        off = bool(ex_line) and not K.pdivides(D, ex_line)
        result.blocks.append(
            SolutionBlock(field=K, fiber=D, keep_index=keep, count=K.degree * (len(D) - 1), off_excluded=off)
        )
    return result


def _curve_off_excluded(result: SolutionSet, excluded: Poly) -> List[Poly]:
    return [h for h in result.curve_factors if h.is_zero or not divides(h, excluded)]


def system_has_zero_off(
    polys: Sequence[Poly],
    excluded: Optional[Poly] = None,
    order: str = "st",
    limit: Optional[int] = None,
    seed: int = 0,
) -> SystemWitness:
    """
    Decide whether a system has a common complex zero off the excluded locus

    Args:
        polys: Nonempty sequence of polynomials in the same one or two generators
        excluded: Nonzero polynomial; zeros where it vanishes are discarded
        order: Elimination order, "st" or "ts"
        limit: Extension degree limit (defaults to settings.extension_degree_limit)
        seed: Seed for the random combinations forming the eliminant

    Returns:
        SystemWitness with status zero-exists, no-zero or undecided
    """
    system, ex, gens = _as_system(polys, excluded)
    limit = settings.extension_degree_limit if limit is None else limit
    decided = _decide(system, ex, gens, order, limit, seed)
    return replace(decided, system=tuple(system), excluded=ex, seed=seed)


def _decide(system: List[Poly], ex: Poly, gens: Tuple, order: str, limit: int, seed: int) -> SystemWitness:
    try:
        if len(gens) == 1:
            result, witness = _solve_univariate(system, ex)
        else:
            result = solve_bivariate(system, ex, order=order, limit=limit, seed=seed)
            witness = None
    except UndecidedError as e:
        logger.warning(f"Elimination undecided: {e}")
        return SystemWitness(status=WitnessStatus.UNDECIDED, limit=e.limit, variable_order=order)

    factors = tuple(b.label() for b in result.blocks) + tuple(f"undecided[{u}]" for u in result.undecided)
    curves = _curve_off_excluded(result, ex)
    if curves:
        return SystemWitness(
            status=WitnessStatus.ZERO_EXISTS,
            description=f"curve component {curves[0].as_expr()} = 0 not contained in {ex.as_expr()} = 0",
            eliminant_factors=factors,
            variable_order=order,
        )

    live = [b for b in result.blocks if b.off_excluded]
    if live:
        if witness is None:
            for b in live:
                for pt in b.rational_points():
                    if ex.as_expr().subs(dict(zip(gens, [to_rational(v) for v in pt]))) != 0:
                        witness = pt
                        break
                if witness is not None:
                    break
        desc = f"{sum(b.count for b in live)} point(s) over " + ", ".join(b.label() for b in live)
        logger.debug(f"Zero found off excluded locus: {desc}")
        return SystemWitness(
            status=WitnessStatus.ZERO_EXISTS,
            description=desc,
            eliminant_factors=factors,
            witness=witness,
            variable_order=order,
        )

    if result.undecided:
        return SystemWitness(
            status=WitnessStatus.UNDECIDED,
            description="eliminant factors beyond the extension limit",
            eliminant_factors=factors,
            limit=f"extension_degree_limit={limit}",
            variable_order=order,
        )
    return SystemWitness(
        status=WitnessStatus.NO_ZERO,
        description="all common zeros lie on the excluded locus" if result.blocks or result.curve_factors else "no common zeros",
        eliminant_factors=factors,
        variable_order=order,
    )
