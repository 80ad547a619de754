"""
Singularities of parametrized plane curves
Cusps come from parameters where the parametrization is not an immersion and
are typed by the characteristic exponent of their branch; nodes, tacnodes and
triple points come from distinct parameters with the same image.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix, Poly, QQ

from src.algebra.elimination import solve_bivariate
from src.algebra.errors import InvalidInputError
from src.algebra.fields import KPoly, NumberField
from src.algebra.polynomials import to_rational
from src.curves.curve import S, T, ParameterPoint, RationalCurve, pair_minors
from src.curves.local import cusp_parameters, local_expansion

logger = logging.getLogger(__name__)

NODE = "node"
TACNODE = "tacnode"
TRIPLE_POINT = "triple-point"
ORDINARY_CUSP = "ordinary-cusp"
RAMPHOID_CUSP = "ramphoid-cusp"
OTHER = "other"
CUSP_TYPES = (ORDINARY_CUSP, RAMPHOID_CUSP)


@dataclass(frozen=True)
class SingularityEntry:
    """Singular points of one type over one field of definition"""
    kind: str
    parameters: str
    count: int
    delta: Optional[int]
    multiplicity: int = 2
    exponent: Optional[int] = None
    point: Optional[Tuple[int, ...]] = None

    def to_dict(self) -> Dict:
        out = {"type": self.kind, "parameters": self.parameters, "count": self.count,
               "delta": self.delta, "multiplicity": self.multiplicity}
        if self.exponent is not None:
            out["characteristic_exponent"] = self.exponent
        if self.point is not None:
            out["point"] = list(self.point)
        return out


@dataclass
class SingularityReport:
    degree: int
    entries: List[SingularityEntry] = field(default_factory=list)
    undecided: List[str] = field(default_factory=list)

    @property
    def cusp_count(self) -> int:
        return sum(e.count for e in self.entries if e.kind in CUSP_TYPES)

    @property
    def delta_sum(self) -> Optional[int]:
        if any(e.delta is None for e in self.entries):
            return None
        return sum(e.count * e.delta for e in self.entries)

    @property
    def arithmetic_genus(self) -> int:
        return (self.degree - 1) * (self.degree - 2) // 2

    @property
    def geometric_genus(self) -> Optional[int]:
        """Arithmetic genus minus the delta sum, when every singularity has a known delta"""
        if self.undecided or self.delta_sum is None or any(e.kind == OTHER for e in self.entries):
            return None
        return self.arithmetic_genus - self.delta_sum

    @property
    def genus_consistent(self) -> bool:
        """False when the delta sum exceeds the arithmetic genus, i.e. some singularity was miscounted"""
        g = self.geometric_genus
        return g is None or g >= 0

    def count(self, kind: str) -> int:
        return sum(e.count for e in self.entries if e.kind == kind)

    def to_dict(self) -> Dict:
        return {
            "degree": self.degree,
            "entries": [e.to_dict() for e in self.entries],
            "cusp_count": self.cusp_count,
            "delta_sum": self.delta_sum,
            "geometric_genus": self.geometric_genus,
            "genus_consistent": self.genus_consistent,
            "undecided": list(self.undecided),
        }


class _Series:
    """Truncated power series over a number field"""

    def __init__(self, K: NumberField, n: int):
        self.K = K
        self.n = n

    def pad(self, coeffs: Sequence[Poly]) -> List[Poly]:
        out = list(coeffs[:self.n])
        return out + [self.K.zero()] * (self.n - len(out))

    def mul(self, a: List[Poly], b: List[Poly]) -> List[Poly]:
        out = [self.K.zero()] * self.n
        for i, x in enumerate(a):
            if x.is_zero:
                continue
            for j in range(self.n - i):
                if not b[j].is_zero:
                    out[i + j] = out[i + j] + x * b[j]
        return [c.rem(self.K.modulus) for c in out]

    def inv(self, a: List[Poly]) -> List[Poly]:
        if self.K.is_zero(a[0]):
            raise ZeroDivisionError("Series with zero constant term")
        a0 = self.K.inv(a[0])
        out = [a0] + [self.K.zero()] * (self.n - 1)
        for k in range(1, self.n):
            acc = self.K.zero()
            for i in range(1, k + 1):
                acc = acc + a[i] * out[k - i]
            out[k] = self.K.mul(-acc.rem(self.K.modulus), a0)
        return out

    def order(self, a: List[Poly]) -> Optional[int]:
        return next((i for i, c in enumerate(a) if not self.K.is_zero(c)), None)

    def power(self, a: List[Poly], k: int) -> List[Poly]:
        out = [self.K.one()] + [self.K.zero()] * (self.n - 1)
        for _ in range(k):
            out = self.mul(out, a)
        return out


def truncation_order(d: int) -> int:
    return (d - 1) * (d - 2) + 3


def branch_exponent(X: RationalCurve, point: ParameterPoint) -> Tuple[int, Optional[int]]:
    """
    Multiplicity and characteristic exponent of the branch at a parameter

    Returns:
        Tuple of (multiplicity m, first odd exponent beta for m = 2, otherwise None)
    """
    exp = local_expansion(X, point)
    K = exp.field
    ring = _Series(K, truncation_order(X.degree))
    comps = [ring.pad(c) for c in exp.series]
    k = next(i for i, c in enumerate(comps) if not K.is_zero(c[0]))
    inv = ring.inv(comps[k])
    local = []
    for i, c in enumerate(comps):
        if i == k:
            continue
        u = ring.mul(c, inv)
        u[0] = K.zero()
        local.append(u)
    orders = [ring.order(u) for u in local]
    present = [(o, u) for o, u in zip(orders, local) if o is not None]
    if not present:
        raise InvalidInputError("Curve is constant near the parameter")
    present.sort(key=lambda ou: ou[0])
    m = present[0][0]
    if m != 2:
        return m, None
    x = present[0][1]
    y = present[1][1] if len(present) > 1 else [K.zero()] * ring.n
    lead = x[2]
    while True:
        o = ring.order(y)
        if o is None:
            return m, None
        if o % 2 == 1:
            return m, o
        c = K.mul(y[o], K.inv(_field_power(K, lead, o // 2)))
        xk = ring.power(x, o // 2)
        y = [(a - K.mul(c, b)).rem(K.modulus) for a, b in zip(y, xk)]


def _field_power(K: NumberField, a: Poly, k: int) -> Poly:
    out = K.one()
    for _ in range(k):
        out = K.mul(out, a)
    return out


def _cusp_entry(X: RationalCurve, point: ParameterPoint) -> SingularityEntry:
    m, beta = branch_exponent(X, point)
    image = X.point(point) if point.degree == 1 else None
    if m == 2 and beta is not None:
        kind = {3: ORDINARY_CUSP, 5: RAMPHOID_CUSP}.get(beta, OTHER)
        return SingularityEntry(kind, point.label(), point.degree, (beta - 1) // 2, m, beta, image)
    return SingularityEntry(OTHER, point.label(), point.degree, None, m, beta, image)


def _tangent_det(phi_a: Sequence, dphi_a: Sequence, dphi_b: Sequence) -> object:
    return Matrix([list(phi_a), list(dphi_a), list(dphi_b)]).det(method="berkowitz").expand()


def _pair_entries(X: RationalCurve, seed: int, report: SingularityReport) -> None:
    gens = (S, T)
    phi_s = [p.as_expr() for p in X.affine_polys(S)]
    phi_t = [p.as_expr() for p in X.affine_polys(T)]
    dphi_s = [e.diff(S) for e in phi_s]
    dphi_t = [e.diff(T) for e in phi_t]

    # partners of the parameter (0:1)
    at_inf = [to_rational(c) for c in X.evaluate(0, 1)]
    d = X.degree
    tangent_inf = [to_rational(c.monomial_coefficients()[d - 1]) for c in X.components]
    line = [m for m in (Poly(m, T, domain=QQ) for m in pair_minors(at_inf, phi_t)) if not m.is_zero]
    sol = solve_bivariate(line or [Poly(0, T, domain=QQ)])
    if sol.curve_factors:
        raise InvalidInputError("Parametrization is not birational onto its image")
    inf_partners = Poly(1, T, domain=QQ)
    for block in sol.blocks:
        inf_partners *= Poly(block.field.modulus.as_expr().subs(block.field.gen, T), T, domain=QQ)
    inf_count = sol.finite_count()

    diag = Poly(S - T, *gens, domain=QQ)
    minors = [Poly(m, *gens, domain=QQ) for m in pair_minors(phi_s, phi_t)]
    system = [m.div(diag)[0] for m in minors if not m.is_zero]
    tac = Poly(_tangent_det(phi_t, dphi_t, dphi_s), *gens, domain=QQ)

    result = solve_bivariate(system, excluded=diag, seed=seed)
    if result.curve_factors:
        raise InvalidInputError("Parametrization is not birational onto its image")
    report.undecided.extend(result.undecided)
    labels: Dict[str, List[str]] = {NODE: [], TACNODE: []}
    ordered = {NODE: 0, TACNODE: 0}
    # parameters lying over points of multiplicity m >= 3, with a tangency flag
    multiple: Dict[int, List[int]] = {}
    multiple_labels: Dict[int, List[str]] = {}
    tangential: Dict[int, bool] = {}
    for block in result.blocks:
        K = block.field
        E = K.specialize(diag, block.keep_index)
        F: KPoly = block.fiber
        common = K.pgcd(F, E)
        if len(common) > 1:
            F = K.pdivmod(F, common)[0]
        if len(F) <= 1:
            continue
        Dspec = K.specialize(tac, block.keep_index)
        tangent = K.pgcd(F, Dspec) if Dspec else K.pmonic(F)
        partners = len(F) - 1
        if inf_count and K.is_zero(K.element(inf_partners.as_expr().subs(T, K.gen))):
            partners += 1
        if partners >= 2:
            m = partners + 1
            multiple.setdefault(m, []).append(K.degree)
            multiple_labels.setdefault(m, []).append(block.label())
            tangential[m] = tangential.get(m, False) or len(tangent) > 1
            continue
        n_tac = K.degree * (len(tangent) - 1)
        n_all = K.degree * (len(F) - 1)
        if n_all > n_tac:
            ordered[NODE] += n_all - n_tac
            labels[NODE].append(block.label())
        if n_tac:
            ordered[TACNODE] += n_tac
            labels[TACNODE].append(block.label())

    if inf_count >= 2:
        # (0:1) is itself one of the parameters over its point
        m = inf_count + 1
        multiple.setdefault(m, []).append(1)
        multiple_labels.setdefault(m, []).append("(0:1)")
    elif inf_count == 1:
        tac_inf = Poly(_tangent_det(phi_t, dphi_t, tangent_inf), T, domain=QQ)
        for block in sol.blocks:
            mt = Poly(block.field.modulus.as_expr().subs(block.field.gen, T), T, domain=QQ)
            is_tac = tac_inf.is_zero or tac_inf.rem(mt).is_zero
            label = f"(0:1) x [{mt.as_expr()}]"
            report.entries.append(SingularityEntry(TACNODE if is_tac else NODE, label, block.count, 2 if is_tac else 1))

    # each unordered pair was found as (s, t) and as (t, s)
    for kind, delta in ((NODE, 1), (TACNODE, 2)):
        if ordered[kind] % 2:
            raise InvalidInputError(f"Odd number of ordered {kind} pairs")
        if ordered[kind]:
            report.entries.append(SingularityEntry(kind, "; ".join(labels[kind]), ordered[kind] // 2, delta))
    for m, sizes in sorted(multiple.items()):
        total = sum(sizes)
        if total % m:
            raise InvalidInputError(f"{total} parameters do not group into points of multiplicity {m}")
        ordinary = m == 3 and not tangential.get(m, False)
        report.entries.append(SingularityEntry(
            TRIPLE_POINT if ordinary else OTHER, "; ".join(multiple_labels[m]), total // m,
            m * (m - 1) // 2 if ordinary else None, multiplicity=m,
        ))


def plane_singularities(C: RationalCurve, seed: int = 0) -> SingularityReport:
    """
    Singular points of a parametrized plane curve

    Args:
        C: Base-point-free plane curve, birational onto its image
        seed: Seed for the eliminations

    Returns:
        SingularityReport with typed entries, cusp count, delta sum and genus when computable
    """
    if C.ambient != 2:
        raise InvalidInputError("Plane singularities need a curve in P^2")
    report = SingularityReport(C.degree)
    _pair_entries(C, seed, report)
    cusps = cusp_parameters(C)
    report.undecided.extend(cusps.undecided)
    for point in cusps.points:
        report.entries.append(_cusp_entry(C, point))
    if not report.genus_consistent:
        logger.warning(f"Delta sum {report.delta_sum} exceeds the arithmetic genus {report.arithmetic_genus}")
    logger.info(
        f"Plane curve of degree {C.degree}: {report.cusp_count} cusp(s), delta sum {report.delta_sum}, "
        f"genus {report.geometric_genus}"
    )
    return report
