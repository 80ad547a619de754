"""
Zero-dimensional schemes by their homogeneous ideals
Ideals are handled degree by degree: the degree-k piece is a subspace of the
degree-k forms, intersections are subspace intersections, and generators are
read off by comparing each piece with the multiples of the previous one.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy import Poly, QQ, symbols

from src.algebra.errors import InvalidInputError, UnsupportedInstanceError
from src.algebra.matrices import QMatrix, kernel, rank, reduced_echelon
from src.algebra.polynomials import Number, homogeneous_monomials, to_fraction, to_rational
from src.apolarity.forms import SymForm, annihilates, annihilates_over, form_vector

logger = logging.getLogger(__name__)

X, Y, Z = symbols("x y z")
PLANE = (X, Y, Z)

Vector = Tuple[Fraction, ...]


def _vector_to_poly(v: Sequence[Fraction], gens: Sequence, degree: int) -> Poly:
    monos = homogeneous_monomials(len(gens), degree)
    return Poly.from_dict({m: to_rational(c) for m, c in zip(monos, v) if c != 0}, *gens, domain=QQ)


def _row_basis(rows: List[Vector], width: int) -> List[Vector]:
    if not rows:
        return []
    R, _ = reduced_echelon(QMatrix.from_rows(rows, cols=width))
    return [tuple(r) for r in R]


def piece_from_generators(generators: Sequence[Poly], k: int) -> List[Vector]:
    """Basis (reduced echelon) of the degree-k piece of the ideal generated by homogeneous polys"""
    gens = generators[0].gens
    n = len(gens)
    width = comb(n + k - 1, k)
    rows = []
    for g in generators:
        e = g.total_degree()
        if e > k:
            continue
        for m in homogeneous_monomials(n, k - e):
            mono = Poly.from_dict({m: 1}, *gens, domain=QQ)
            rows.append(form_vector(g * mono, k))
    return _row_basis(rows, width)


def intersect_pieces(A: List[Vector], B: List[Vector], width: int) -> List[Vector]:
    """Intersection of two row spaces"""
    if not A or not B:
        return []
    cols = [list(a) for a in A] + [[-x for x in b] for b in B]
    M = QMatrix.from_rows([[c[i] for c in cols] for i in range(width)], cols=len(cols))
    out = []
    for u in kernel(M).basis:
        v = [Fraction(0)] * width
        for coeff, a in zip(u[:len(A)], A):
            if coeff != 0:
                v = [x + coeff * y for x, y in zip(v, a)]
        out.append(tuple(v))
    return _row_basis(out, width)


def point_conditions(points: Sequence[Sequence[Number]], k: int) -> List[Vector]:
    """Basis of the degree-k forms vanishing at the given points"""
    n = len(points[0])
    monos = homogeneous_monomials(n, k)
    rows = []
    for p in points:
        fp = [to_fraction(c) for c in p]
        row = []
        for m in monos:
            v = Fraction(1)
            for c, e in zip(fp, m):
                v *= c ** e
            row.append(v)
        rows.append(row)
    M = QMatrix.from_rows(rows, cols=len(monos))
    return _row_basis(list(kernel(M).basis), len(monos))


def minimal_generators(piece: Callable[[int], List[Vector]], gens: Sequence, max_degree: int) -> List[Poly]:
    """Generators of a graded ideal given degree by degree up to max_degree"""
    n = len(gens)
    generators: List[Poly] = []
    for k in range(1, max_degree + 1):
        width = comb(n + k - 1, k)
        current = piece(k)
        if not current:
            continue
        spanned = piece_from_generators(generators, k) if generators else []
        base = rank(QMatrix.from_rows(spanned, cols=width)) if spanned else 0
        rows = list(spanned)
        for v in current:
            trial = rows + [v]
            r = rank(QMatrix.from_rows(trial, cols=width))
            if r > base:
                rows, base = trial, r
                generators.append(_vector_to_poly(v, gens, k))
    return generators


@dataclass(frozen=True)
class ZeroDimScheme:
    """A finite scheme presented by generators of its homogeneous ideal"""
    generators: Tuple[Poly, ...]
    claimed_degree: int
    support_size: int
    label: str = ""
    modulus: Optional[Poly] = None  # generators over Q[a]/(modulus) when set

    def __post_init__(self):
        if not self.generators:
            raise InvalidInputError("A scheme needs at least one generator")
        if self.support_size > self.claimed_degree:
            raise InvalidInputError("Support larger than the claimed degree")

    @property
    def gens(self) -> Tuple:
        return self.generators[0].gens

    def piece(self, k: int) -> List[Vector]:
        if self.modulus is not None:
            raise UnsupportedInstanceError("Ideal pieces are only computed over Q")
        return piece_from_generators(self.generators, k)

    def hilbert_value(self, k: int) -> int:
        """Codimension of the degree-k piece of the ideal"""
        n = len(self.gens)
        return comb(n + k - 1, k) - len(self.piece(k))

    def degree_holds(self, k: int) -> bool:
        return self.hilbert_value(k) == self.claimed_degree

    def max_generator_degree(self) -> int:
        return max(g.total_degree() for g in self.generators)

    @classmethod
    def from_points(cls, points: Sequence[Sequence[Number]], gens: Sequence = PLANE, label: str = "") -> "ZeroDimScheme":
        """Reduced scheme on distinct points"""
        pts = [tuple(to_fraction(c) for c in p) for p in points]
        gens_ = minimal_generators(lambda k: point_conditions(pts, k), gens, len(pts))
        return cls(tuple(gens_), len(pts), len(pts), label or "points")

    @classmethod
    def from_ideal(cls, generators: Sequence[Poly], degree: int, support: int, label: str = "") -> "ZeroDimScheme":
        return cls(tuple(generators), degree, support, label)

    def intersect(self, other: "ZeroDimScheme", label: str = "") -> "ZeroDimScheme":
        """Scheme union (ideal intersection) of disjoint schemes"""
        n = len(self.gens)
        total = self.claimed_degree + other.claimed_degree

        def piece(k: int) -> List[Vector]:
            return intersect_pieces(self.piece(k), other.piece(k), comb(n + k - 1, k))

        gens_ = minimal_generators(piece, self.gens, total)
        return ZeroDimScheme(
            tuple(gens_), total, self.support_size + other.support_size,
            label or f"{self.label}+{other.label}",
        )


def linear_forms_vanishing_at(point: Sequence[Number], gens: Sequence = PLANE) -> List[Poly]:
    """Basis of the linear forms through a point"""
    return [_vector_to_poly(v, gens, 1) for v in point_conditions([point], 1)]


def jet_scheme(point: Sequence[Number], line: Poly, length: int, label: str = "") -> ZeroDimScheme:
    """
    Curvilinear scheme of the given length at a point, along a line through it

    The ideal is (L) + m_p^length.
    """
    gens = line.gens
    if line.as_expr().subs(dict(zip(gens, [to_rational(c) for c in point]))) != 0:
        raise InvalidInputError(f"Point {tuple(point)} is not on the line {line.as_expr()}")
    m = linear_forms_vanishing_at(point, gens)
    powers = []
    for i in range(length + 1):
        powers.append(m[0] ** (length - i) * m[1] ** i)
    return ZeroDimScheme((line,) + tuple(powers), length, 1, label or f"Z({length})")


def conic_jet_scheme(point: Sequence[Number], conic: Poly, length: int, label: str = "") -> ZeroDimScheme:
    """Curvilinear scheme of the given length at a smooth point of a conic: (C) + m_p^length"""
    gens = conic.gens
    if conic.as_expr().subs(dict(zip(gens, [to_rational(c) for c in point]))) != 0:
        raise InvalidInputError(f"Point {tuple(point)} is not on the conic {conic.as_expr()}")
    m = linear_forms_vanishing_at(point, gens)
    powers = [m[0] ** (length - i) * m[1] ** i for i in range(length + 1)]
    return ZeroDimScheme((conic,) + tuple(powers), length, 1, label or f"Z({length})")


def apolarity_membership(f: SymForm, scheme: ZeroDimScheme) -> bool:
    """
    Whether f lies in the span of the degree-d Veronese image of the scheme

    Args:
        f: Form of degree d
        scheme: Scheme whose ideal generators have degree at most d

    Returns:
        True iff every generator annihilates f
    """
    if len(scheme.gens) != f.nvars:
        raise InvalidInputError("Scheme and form live in different projective spaces")
    if scheme.max_generator_degree() > f.degree:
        raise UnsupportedInstanceError(
            f"Generator of degree {scheme.max_generator_degree()} exceeds the form degree {f.degree}"
        )
    if scheme.modulus is not None:
        return all(annihilates_over(g, f.body, scheme.modulus) for g in scheme.generators)
    return all(annihilates(Poly(g.as_expr(), *f.gens, domain=QQ) if g.gens != f.gens else g, f.body)
               for g in scheme.generators)


def span_membership(f: SymForm, points: Sequence[Sequence[Number]]) -> bool:
    """Direct check that f is a combination of the powers l_p^d"""
    from src.algebra.matrices import in_span
    from src.apolarity.forms import power_form
    vectors = [form_vector(power_form(p, f.degree, f.gens), f.degree) for p in points]
    return in_span(vectors, f.vector())


def conic_matrix(conic: Poly) -> QMatrix:
    """Symmetric matrix of a ternary quadratic form"""
    terms = dict(conic.terms())
    rows = [[Fraction(0)] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            e = [0, 0, 0]
            e[i] += 1
            e[j] += 1
            c = to_fraction(terms.get(tuple(e), 0))
            rows[i][j] = c if i == j else c / 2
    return QMatrix.from_rows(rows)


def is_smooth_conic(conic: Poly) -> bool:
    from src.algebra.matrices import determinant
    return determinant(conic_matrix(conic)) != 0


QUARTIC_CASES = ("I", "IIa", "IIb", "IIIa", "IIIb", "IIIc")
_EXPECTED_DEGREE = {"I": 3, "IIa": 4, "IIb": 4, "IIIa": 5, "IIIb": 5, "IIIc": 5}


def _default_params(case: str) -> Dict:
    x, y, z = PLANE
    if case == "I":
        return {"conic": x * z - y ** 2, "point": (1, 0, 0)}
    if case == "IIa":
        return {"points": [(1, 0, 0), (0, 1, 0)], "lines": [y - z, x - z]}
    if case == "IIb":
        return {"points": [(1, 0, 0), (0, 1, 0), (0, 0, 1)], "line": y - z}
    if case == "IIIa":
        return {"points": [(1, 0, 0), (0, 1, 0)], "lines": [y - z, x - z]}
    if case == "IIIb":
        return {"conic": y * z - x ** 2}
    return {}


def quartic_scheme(case: str, params: Optional[Dict] = None) -> ZeroDimScheme:
    """
    One of the schemes that can span a plane quartic of high rank

    Args:
        case: One of I, IIa, IIb, IIIa, IIIb, IIIc
        params: Free geometric choices of the case; defaults are used when omitted

    Returns:
        ZeroDimScheme of degree 3 (I), 4 (IIa, IIb) or 5 (IIIa, IIIb, IIIc)
    """
    if case not in QUARTIC_CASES:
        raise InvalidInputError(f"Unknown quartic case {case}; expected one of {QUARTIC_CASES}")
    p = dict(_default_params(case))
    p.update(params or {})
    x, y, z = PLANE

    def poly(e) -> Poly:
        return Poly(e, *PLANE, domain=QQ)

    if case == "I":
        conic = poly(p["conic"])
        if not is_smooth_conic(conic):
            raise InvalidInputError("Case I needs a smooth conic")
        scheme = conic_jet_scheme(p["point"], conic, 3, "I")
    elif case == "IIa":
        (p1, p2), (l1, l2) = p["points"], p["lines"]
        scheme = jet_scheme(p1, poly(l1), 2, "Z(2,p)").intersect(jet_scheme(p2, poly(l2), 2, "Z(2,l)"), "IIa")
    elif case == "IIb":
        p1, p2, p3 = p["points"]
        scheme = jet_scheme(p1, poly(p["line"]), 2, "Z(2,p)").intersect(
            ZeroDimScheme.from_points([p2, p3]), "IIb")
    elif case == "IIIa":
        (p1, p2), (l1, l2) = p["points"], p["lines"]
        scheme = jet_scheme(p1, poly(l1), 3, "Z(3,p)").intersect(jet_scheme(p2, poly(l2), 2, "Z(2,l)"), "IIIa")
    elif case == "IIIb":
        Q = poly(p["conic"])
        vertex = {x: 0, y: 0, z: 1}
        grads = [Q.as_expr().diff(v).subs(vertex) for v in (x, z)]
        if Q.as_expr().subs(vertex) != 0 or any(g != 0 for g in grads):
            raise InvalidInputError("Case IIIb needs a conic through (0:0:1) tangent to y = 0 there")
        double_line = ZeroDimScheme((Q, poly(y ** 2)), 4, 1, "Z(4,p)")
        scheme = double_line.intersect(ZeroDimScheme((poly(x - z), poly(y)), 1, 1, "Z(1,l)"), "IIIb")
    else:
        first = ZeroDimScheme((poly(x), poly(y)), 1, 1, "Z(1,q)")
        second = ZeroDimScheme((poly(x ** 2 - z ** 2), poly(y ** 2)), 4, 2, "Z(2,p)+Z(2,l)")
        scheme = first.intersect(second, "IIIc")

    expected = _EXPECTED_DEGREE[case]
    if scheme.claimed_degree != expected or not scheme.degree_holds(4):
        raise InvalidInputError(
            f"Case {case} parameters give Hilbert value {scheme.hilbert_value(4)} at degree 4, expected {expected}"
        )
    logger.debug(f"Quartic scheme {case}: {len(scheme.generators)} generators")
    return scheme
