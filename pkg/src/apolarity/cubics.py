"""
Ranks of plane cubics
Rank by stratum: essential variables through the first catalecticant, the
tangent line-conic normal form of rank 5, three-point and four-point apolar
schemes read off the net of apolar conics, and the degenerate length-4 scheme
built from a flex of the Hessian.
"""
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix, Poly, QQ, symbols

from config.settings import settings
from src.algebra.elimination import solve_bivariate
from src.algebra.errors import InvalidInputError, UndecidedError, UnsupportedInstanceError
from src.algebra.fields import NumberField
from src.algebra.matrices import QMatrix, kernel, rank, solve
from src.algebra.polynomials import homogeneous_monomials, resultant, seeded_integers, to_fraction, to_rational
from src.apolarity.forms import SymForm, apolar_basis, catalecticant, form_vector, hessian, power_form
from src.apolarity.plane import plane_common_zeros
from src.apolarity.schemes import ZeroDimScheme, apolarity_membership, conic_matrix, is_smooth_conic
from src.binary.sylvester import Z0, Z1, BinaryForm, sylvester_rank
from src.models.certificates import CertificateKind, RankCertificate, fraction_text

logger = logging.getLogger(__name__)

X, Y, Z = symbols("x y z")
_Y = symbols("y0:3")


def _check_cubic(f: SymForm) -> None:
    if f.nvars != 3 or f.degree != 3:
        raise InvalidInputError(f"Expected a ternary cubic, got {f.nvars} variables and degree {f.degree}")


def _point_text(p: Sequence[Fraction]) -> str:
    return "(" + ":".join(fraction_text(c) for c in p) + ")"


def _decomposition(f: SymForm, points: Sequence[Sequence[Fraction]], notes: str,
                   scheme: Tuple[Poly, ...] = ()) -> RankCertificate:
    """Weights of f against the cubes of the linear forms given by the points"""
    vectors = [form_vector(power_form(p, 3, f.gens), 3) for p in points]
    target = f.vector()
    M = QMatrix.from_rows([[v[k] for v in vectors] for k in range(len(target))], cols=len(vectors))
    weights = solve(M, target)
    return RankCertificate(
        kind=CertificateKind.DECOMPOSITION,
        rank=len(points),
        target=target,
        vectors=tuple(vectors),
        coefficients=weights,
        points=tuple(_point_text(p) for p in points),
        scheme=scheme,
        form=f.body if scheme else None,
        notes=notes,
    )


def _linear_coefficients(p: Poly) -> Tuple[Fraction, ...]:
    terms = dict(p.terms())
    out = []
    for i in range(len(p.gens)):
        e = [0] * len(p.gens)
        e[i] = 1
        out.append(to_fraction(terms.get(tuple(e), 0)))
    return tuple(out)


def _operator_index(monos) -> List[int]:
    return [m.index(1) for m in monos]


def _rank_one(f: SymForm) -> Tuple[int, RankCertificate]:
    gens = f.gens
    for a in gens:
        for b in gens:
            second = f.body.diff(a).diff(b)
            if not second.is_zero:
                ell = _linear_coefficients(second)
                return 1, _decomposition(f, [ell], "pure cube")
    raise InvalidInputError("Cubic with vanishing second partials")


def _few_variables(f: SymForm) -> Tuple[int, RankCertificate]:
    """Cubics in two essential variables, handed to the binary algorithm"""
    gens = f.gens
    monos = homogeneous_monomials(3, 1)
    (v,) = kernel(catalecticant(f, 1)).basis
    D = [Fraction(0)] * 3
    for i, c in zip(_operator_index(monos), v):
        D[i] = c
    u, w = kernel(QMatrix.from_rows([D], cols=3)).basis
    rows = [list(u), list(w)]
    for k in range(3):
        e = [Fraction(int(i == k)) for i in range(3)]
        if rank(QMatrix.from_rows(rows + [e], cols=3)) == 3:
            rows.append(e)
            break
    M = Matrix([[to_rational(c) for c in r] for r in rows])
    Minv = M.inv()
    sub = {gens[i]: sum(Minv[i, j] * _Y[j] for j in range(3)) for i in range(3)}
    g = Poly(f.body.as_expr().subs(sub, simultaneous=True).expand(), *_Y, domain=QQ)
    if g.degree(_Y[2]) > 0:
        raise InvalidInputError("Essential-variable reduction failed")
    binary = BinaryForm.from_poly(Poly(g.as_expr().subs({_Y[0]: Z0, _Y[1]: Z1}, simultaneous=True), Z0, Z1, domain=QQ))
    r, cert = sylvester_rank(binary)
    if cert.kind == CertificateKind.DECOMPOSITION and cert.vectors:
        points = []
        for vec in cert.vectors:
            p0, p1 = (Fraction(1), vec[1]) if vec[0] != 0 else (Fraction(0), Fraction(1))
            points.append(tuple(p0 * a + p1 * b for a, b in zip(u, w)))
        return r, _decomposition(f, points, f"two essential variables; {cert.notes}")

    # lift the binary apolar form through d/dY = M^-T d/dx
    (op,) = cert.scheme
    lift = {Z0: sum(Minv[j, 0] * gens[j] for j in range(3)), Z1: sum(Minv[j, 1] * gens[j] for j in range(3))}
    lifted = Poly(op.as_expr().subs(lift, simultaneous=True).expand(), *gens, domain=QQ)
    D_op = Poly(sum(to_rational(c) * x for c, x in zip(D, gens)), *gens, domain=QQ)
    return r, RankCertificate(
        kind=CertificateKind.SCHEME_MEMBERSHIP,
        rank=r,
        scheme=(D_op, lifted),
        form=f.body,
        notes=f"two essential variables; {cert.notes}",
    )


def tangent_line_conic(f: SymForm) -> Optional[Tuple[Poly, Poly]]:
    """The factors (L, Q) when f = L Q with Q a smooth conic and L tangent to it"""
    c, factors = f.body.factor_list()
    if len(factors) != 2 or any(e != 1 for _, e in factors):
        return None
    factors = sorted((g for g, _ in factors), key=lambda g: g.total_degree())
    line, conic = factors
    if line.total_degree() != 1 or conic.total_degree() != 2:
        return None
    conic = conic * c
    if not is_smooth_conic(conic):
        return None
    A = Matrix([[to_rational(x) for x in r] for r in conic_matrix(conic).to_rows()])
    ell = Matrix([to_rational(x) for x in _linear_coefficients(line)])
    if (ell.T * A.adjugate() * ell)[0, 0] != 0:
        return None
    return line, conic


def _net_base_points(f: SymForm, net: List[Poly], seed: int) -> Optional[Tuple[int, RankCertificate]]:
    zeros = plane_common_zeros(net, seed=seed)
    if zeros.undecided:
        raise UndecidedError("Base locus of the apolar net not decided", limit="extension_degree_limit")
    if zeros.infinite or zeros.count != 3:
        return None
    notes = "apolar net with three distinct base points"
    if len(zeros.points) == 3:
        points = [tuple(Fraction(c) for c in p) for p in zeros.points]
        return 3, _decomposition(f, points, notes, scheme=tuple(net))
    return 3, RankCertificate(kind=CertificateKind.SCHEME_MEMBERSHIP, rank=3, scheme=tuple(net), form=f.body, notes=notes)


def _two_conics(f: SymForm, net: List[Poly], seed: int, draws: int) -> Optional[Tuple[int, RankCertificate]]:
    rng = np.random.default_rng(seed)
    zero = Poly(0, *f.gens, domain=QQ)
    for attempt in range(draws):
        lam = seeded_integers(rng, len(net), bound=7)
        mu = seeded_integers(rng, len(net), bound=7)
        C1 = sum((c * g for c, g in zip(lam, net)), zero)
        C2 = sum((c * g for c, g in zip(mu, net)), zero)
        if C1.is_zero or C2.is_zero or C1.gcd(C2).total_degree() > 0:
            continue
        zeros = plane_common_zeros([C1, C2], seed=seed + attempt)
        if zeros.undecided or zeros.infinite or zeros.count != 4:
            continue
        notes = "two apolar conics meeting in four distinct points"
        logger.debug(f"Rank 4 witness found at draw {attempt}")
        if len(zeros.points) == 4:
            points = [tuple(Fraction(c) for c in p) for p in zeros.points]
            return 4, _decomposition(f, points, notes, scheme=(C1, C2))
        return 4, RankCertificate(kind=CertificateKind.SCHEME_MEMBERSHIP, rank=4, scheme=(C1, C2), form=f.body, notes=notes)
    return None


def cubic_rank(f: SymForm, seed: int = 0, draws: Optional[int] = None) -> Tuple[int, RankCertificate]:
    """
    Waring rank of a plane cubic with a certificate

    Args:
        f: Nonzero ternary cubic
        seed: Seed for the generic members of the apolar net
        draws: Number of conic pairs tried for the rank 4 witness

    Returns:
        Tuple of (rank, certificate)

    Raises:
        UndecidedError: f lies in a stratum these tests do not reach
    """
    _check_cubic(f)
    draws = settings.generic_draws if draws is None else draws
    essential = rank(catalecticant(f, 1))
    logger.debug(f"Cubic {f.body.as_expr()}: {essential} essential variable(s)")
    if essential == 1:
        return _rank_one(f)
    if essential == 2:
        return _few_variables(f)

    factors = tangent_line_conic(f)
    if factors is not None:
        line, conic = factors
        return 5, RankCertificate(
            kind=CertificateKind.FACTORIZATION,
            rank=5,
            scheme=(line, conic),
            form=f.body,
            notes="line tangent to a smooth conic",
        )

    net = apolar_basis(f, 2)
    found = _net_base_points(f, net, seed)
    if found is not None:
        return found
    found = _two_conics(f, net, seed, draws)
    if found is not None:
        return found
    raise UndecidedError(
        f"No three-point or four-point apolar scheme found for {f.body.as_expr()}",
        limit=f"generic_draws={draws}",
    )


def seeded_cubic(seed: int, bound: int = 5) -> SymForm:
    """Random ternary cubic with small integer coefficients"""
    rng = np.random.default_rng(seed)
    monos = homogeneous_monomials(3, 3)
    while True:
        coeffs = seeded_integers(rng, len(monos), bound=bound)
        if any(coeffs):
            body = Poly.from_dict({m: c for m, c in zip(monos, coeffs) if c}, X, Y, Z, domain=QQ)
            return SymForm.from_poly(body)


def hesse_cubic(seed: int) -> SymForm:
    """
    A smooth cubic x^3 + y^3 + z^3 + 6m xyz in random integer coordinates

    The parameter m is an integer >= 2 and the coordinate change has nonzero
    determinant, so the Hessian is smooth with rational flexes.
    """
    rng = np.random.default_rng(seed)
    m = int(rng.integers(2, 6))
    while True:
        A = Matrix(3, 3, seeded_integers(rng, 9, bound=3))
        if A.det() != 0:
            break
    base = X ** 3 + Y ** 3 + Z ** 3 + 6 * m * X * Y * Z
    v = A * Matrix([X, Y, Z])
    body = Poly(base.subs({X: v[0], Y: v[1], Z: v[2]}, simultaneous=True).expand(), X, Y, Z, domain=QQ)
    return SymForm.from_poly(body)


def _gradient(p: Poly) -> List[Poly]:
    return [p.diff(g) for g in p.gens]


KPoint = Tuple[Poly, Poly, Poly]


def _over(K: NumberField, expr, gens: Sequence) -> Poly:
    """Form with coefficients in K, as a polynomial in gens and the field generator"""
    p = Poly(expr, *gens, K.gen, domain=QQ)
    grouped: Dict[Tuple[int, ...], object] = {}
    for m, c in p.terms():
        grouped[m[:-1]] = grouped.get(m[:-1], 0) + c * K.gen ** m[-1]
    out = 0
    for m, c in grouped.items():
        mono = 1
        for g, e in zip(gens, m):
            mono *= g ** e
        out += K.element(c).as_expr() * mono
    return Poly(out, *gens, K.gen, domain=QQ)


def _kvalue(K: NumberField, expr, gens: Sequence, point: Sequence[Poly]) -> Poly:
    sub = {g: c.as_expr() for g, c in zip(gens, point)}
    return K.element(expr.subs(sub, simultaneous=True).expand())


def _kcoeff(K: NumberField, C: Poly, mono: Tuple[int, ...]) -> Poly:
    return K.element(sum((c * K.gen ** m[-1] for m, c in C.terms() if m[:-1] == mono), 0))


def _kpoint_text(point: Sequence[Poly]) -> str:
    return "(" + ":".join(str(c.as_expr()) for c in point) + ")"


def _hessian_flexes(H: Poly, seed: int) -> List[Tuple[NumberField, KPoint]]:
    """Flexes of the Hessian, each over the field its coordinates generate"""
    x, y, z = H.gens
    HH = hessian(SymForm.from_poly(H))
    affine = [Poly(p.as_expr().subs(z, 1), x, y, domain=QQ) for p in (H, HH)]
    sol = solve_bivariate(affine, seed=seed)
    if sol.curve_factors:
        raise UnsupportedInstanceError("Hessian has a linear component")
    out: List[Tuple[NumberField, KPoint]] = []
    for block in sol.blocks:
        K = block.field
        if len(block.fiber) != 2:
            logger.debug(f"Flex block {block.label()} has several points per fiber, skipped")
            continue
        a = K.element(K.gen)
        b = K.element(-block.fiber[1].as_expr())
        out.append((K, (a, b, K.one()) if block.keep_index == 0 else (b, a, K.one())))
    Q = NumberField.rationals()
    line = [Poly(p.as_expr().subs({z: 0, y: 1}), x, domain=QQ) for p in (H, HH)]
    g = line[0].gcd(line[1])
    if not g.is_zero and g.degree() > 0:
        for factor, _ in g.factor_list()[1]:
            if factor.degree() == 1:
                c1, c0 = factor.all_coeffs()
                out.append((Q, (Q.rational(-to_fraction(c0) / to_fraction(c1)), Q.one(), Q.zero())))
    if all(p.as_expr().subs({x: 1, y: 0, z: 0}) == 0 for p in (H, HH)):
        out.append((Q, (Q.one(), Q.zero(), Q.zero())))
    return out


def _residual_coordinate(K: NumberField, pencil: Sequence[Poly], q: KPoint, axis: int) -> Optional[Poly]:
    """
    Affine coordinate of the second base point of a pencil of conics through q

    The resultant eliminating the other coordinate must split as (u - q_u)(u - p_u)^3
    with p_u != q_u; the pencil is changed within itself so that both members keep
    the eliminated square.
    """
    gens = pencil[0].gens[:-1]
    keep, elim = gens[axis], gens[1 - axis]
    square = tuple(2 if g == elim else 0 for g in gens)
    P, R = pencil
    if K.is_zero(_kcoeff(K, P, square)):
        P, R = R, P
    if K.is_zero(_kcoeff(K, P, square)):
        return None
    if K.is_zero(_kcoeff(K, R, square)):
        R = _over(K, P.as_expr() + R.as_expr(), gens)
    z = gens[2]
    A1 = Poly(P.as_expr().subs(z, 1), keep, elim, K.gen, domain=QQ)
    A2 = Poly(R.as_expr().subs(z, 1), keep, elim, K.gen, domain=QQ)
    res = resultant(A1, A2, elim)
    eliminant = K.specialize(Poly(res.as_expr(), keep, K.gen, domain=QQ), 1)
    if K.pdegree(eliminant) != 4:
        return None
    qu = q[axis]
    rest, remainder = K.pdivmod(eliminant, (K.one(), K.element(-qu.as_expr())))
    if remainder:
        return None
    rest = K.pmonic(rest)
    pu = K.mul(rest[1], K.rational(Fraction(-1, 3)))
    cube = (K.one(), K.mul(pu, K.rational(-3)), K.mul(K.mul(pu, pu), K.rational(3)),
            K.element(-K.mul(K.mul(pu, pu), pu).as_expr()))
    if K.padd(rest, K.pscale(cube, K.rational(-1))) or K.is_zero(pu - qu):
        return None
    return pu


def de_paolis_decompose(f: SymForm, seed: int = 0) -> Tuple[ZeroDimScheme, RankCertificate]:
    """
    Degenerate apolar scheme of length 4 supported at two points

    The tangent line to the Hessian at a flex is a point q of the operator plane;
    the apolar conics through q form a pencil whose base scheme is q plus a
    curvilinear scheme of length 3. Flexes are taken over the number field their
    coordinates generate, so the pencil and the scheme are defined over that field.

    Args:
        f: Ternary cubic with smooth Hessian
        seed: Seed for the eliminations

    Returns:
        Tuple of (scheme, scheme-membership certificate carrying the field modulus
        when the flex is irrational)
    """
    _check_cubic(f)
    H = hessian(f)
    if H.is_zero or H.total_degree() != 3:
        raise UnsupportedInstanceError("Hessian is not a cubic")
    singular = plane_common_zeros(_gradient(H), seed=seed)
    if singular.undecided:
        raise UndecidedError("Singular locus of the Hessian not decided", limit="extension_degree_limit")
    if not singular.empty:
        raise UnsupportedInstanceError(f"Hessian {H.as_expr()} is singular")
    net = apolar_basis(f, 2)
    if len(net) != 3:
        raise UnsupportedInstanceError(f"Apolar conics form a space of dimension {len(net)}, expected 3")

    gens = f.gens
    for K, flex in _hessian_flexes(H, seed):
        q = [_kvalue(K, g.as_expr(), gens, flex) for g in _gradient(H)]
        if K.is_zero(q[2]):
            continue
        scale = K.inv(q[2])
        q = (K.mul(q[0], scale), K.mul(q[1], scale), K.one())
        values = [_kvalue(K, g.as_expr(), gens, q) for g in net]
        j = next((i for i, v in enumerate(values) if not K.is_zero(v)), None)
        if j is None:
            continue
        inv = K.inv(values[j])
        pencil = [_over(K, net[k].as_expr() - K.mul(values[k], inv).as_expr() * net[j].as_expr(), gens)
                  for k in range(3) if k != j]
        px = _residual_coordinate(K, pencil, q, 0)
        py = _residual_coordinate(K, pencil, q, 1) if px is not None else None
        if py is None:
            logger.debug(f"Flex {_kpoint_text(flex)}: pencil base locus is not q plus a triple point")
            continue
        p = (px, py, K.one())
        if not all(K.is_zero(_kvalue(K, C.as_expr(), gens, p)) for C in pencil):
            continue
        rational = K.degree == 1
        generators = tuple(Poly(C.as_expr(), *gens, domain=QQ) if rational else Poly(C.as_expr(), *gens)
                           for C in pencil)
        modulus = None if rational else K.modulus
        scheme = ZeroDimScheme(generators, 4, 2, "Z(3,p)+Z(1,q)", modulus=modulus)
        if not apolarity_membership(f, scheme):
            continue
        logger.info(f"De Paolis scheme at flex {_kpoint_text(flex)} over a field of degree {K.degree}")
        cert = RankCertificate(
            kind=CertificateKind.SCHEME_MEMBERSHIP,
            rank=4,
            scheme=generators,
            form=f.body,
            points=(_kpoint_text(p), _kpoint_text(q)),
            notes=f"pencil of apolar conics through q = {_kpoint_text(q)}"
                  + (f" over Q[a]/({K.modulus.as_expr()})" if modulus is not None else ""),
            modulus=modulus,
        )
        return scheme, cert
    raise UndecidedError("No flex gave a length-4 scheme on two points",
                         limit=f"extension_degree_limit={settings.extension_degree_limit}")
