from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
from sympy import Poly, QQ

from config.settings import settings
from src.algebra.elimination import SystemWitness, WitnessStatus
from src.algebra.errors import InvalidInputError, UndecidedError, UnsupportedInstanceError
from src.algebra.matrices import QMatrix, determinant
from src.algebra.polynomials import seeded_integers
from src.binary.sylvester import Z0, Z1
from src.curves.curve import S, LinearSubspace, ParameterPoint, RationalCurve, project, rnc
from src.curves.local import (
    contact_profile,
    cusp_parameters,
    osculating_subspace,
    stall_parameters,
    subspace_contact_degree,
    wronskian,
)
from src.curves.secants import (
    base_point_schedule,
    curve_point_rank,
    on_curve,
    secant_membership,
    tangential_bound,
    trisecant_membership,
)
from src.curves.singularities import (
    NODE,
    ORDINARY_CUSP,
    TRIPLE_POINT,
    SingularityEntry,
    SingularityReport,
    branch_exponent,
    plane_singularities,
)
from src.models.certificates import CertificateKind, RankCertificate


def test_parameter_points():
    p = ParameterPoint.at(2, 4)
    assert p.coordinates() == (Fraction(1), Fraction(2))
    assert p.label() == "(1:2)"
    assert ParameterPoint.infinity().is_infinity
    assert ParameterPoint.infinity().label() == "(0:1)"
    assert ParameterPoint.from_affine_factor(Poly(S, S, domain=QQ)) == ParameterPoint.at(1, 0)
    quadratic = ParameterPoint.from_affine_factor(Poly(S ** 2 - 2, S, domain=QQ))
    assert quadratic.degree == 2
    assert quadratic.coordinates() is None
    with pytest.raises(InvalidInputError):
        ParameterPoint(Poly(Z0 ** 2 + Z1, Z0, Z1, domain=QQ))


def test_curve_validation():
    with pytest.raises(InvalidInputError):
        RationalCurve.from_exprs([Z0 ** 2, Z0 * Z1])
    with pytest.raises(InvalidInputError):
        rnc(0)
    assert rnc(4).is_nondegenerate()
    assert not RationalCurve.from_exprs([Z0 ** 3, Z1 ** 3, Z0 ** 3 + Z1 ** 3]).is_nondegenerate()


def test_projection_degree_drops_only_from_curve_points():
    X = rnc(4)
    off = project(X, (1, 0, 0, 0, 1))
    assert (off.ambient, off.degree) == (3, 4)
    on = project(X, (1, 0, 0, 0, 0))
    assert (on.ambient, on.degree) == (3, 3)
    with pytest.raises(InvalidInputError):
        project(X, [(1, 0, 0, 0, 0), (2, 0, 0, 0, 0)])


def test_twisted_cubic_is_ordinary(twisted_cubic):
    for p in (ParameterPoint.affine(0), ParameterPoint.affine(3), ParameterPoint.infinity()):
        assert contact_profile(twisted_cubic, p).orders == (0, 0)
    assert twisted_cubic.is_injective()


def test_contact_profile_is_projectively_invariant():
    X = RationalCurve.from_exprs([Z0 ** 4, Z0 ** 3 * Z1, Z0 ** 2 * Z1 ** 2, Z1 ** 4])
    at_zero = ParameterPoint.affine(0)
    assert contact_profile(X, at_zero).orders == (0, 0, 1)
    Y = X.transform([[1, 1, 0, 0], [0, 1, 2, 0], [0, 0, 1, -1], [1, 0, 0, 1]])
    assert contact_profile(Y, at_zero).orders == (0, 0, 1)
    assert contact_profile(X, ParameterPoint.infinity()).orders == contact_profile(Y, ParameterPoint.infinity()).orders


def test_stall_parameters():
    X = RationalCurve.from_exprs([Z0 ** 4, Z0 ** 3 * Z1, Z0 ** 2 * Z1 ** 2, Z1 ** 4])
    assert wronskian(X) == Poly(48 * S, S, domain=QQ)
    stalls = stall_parameters(X)
    assert [p.label() for p in stalls.points] == ["(1:0)"]
    assert not stalls.undecided
    with pytest.raises(InvalidInputError):
        stall_parameters(rnc(4))


def test_osculating_contact(twisted_cubic):
    at_zero = ParameterPoint.affine(0)
    tangent = osculating_subspace(twisted_cubic, at_zero, 1)
    assert tangent.dimension == 1
    contact = subspace_contact_degree(twisted_cubic, tangent)
    assert contact.degree == 2
    assert contact.labels() == ["(1:0)^2"]
    plane = osculating_subspace(twisted_cubic, at_zero, 2)
    assert subspace_contact_degree(twisted_cubic, plane).degree == 3
    with pytest.raises(InvalidInputError):
        osculating_subspace(twisted_cubic, at_zero, 3)


def test_linear_subspace_from_equations():
    L = LinearSubspace.from_equations([[0, 0, 1, 0], [0, 0, 0, 1]], 3)
    assert L.dimension == 1
    assert L.contains((5, -1, 0, 0))
    assert not L.contains((0, 0, 1, 0))
    assert L.equation_text() == ["x2 = 0", "x3 = 0"]


def test_cuspidal_cubic(cuspidal_cubic):
    cusps = cusp_parameters(cuspidal_cubic)
    assert [p.label() for p in cusps.points] == ["(1:0)"]
    assert branch_exponent(cuspidal_cubic, ParameterPoint.affine(0)) == (2, 3)
    report = plane_singularities(cuspidal_cubic)
    assert report.count(ORDINARY_CUSP) == 1
    assert report.count(NODE) == 0
    assert report.delta_sum == 1
    assert report.geometric_genus == 0


def test_nodal_cubic(nodal_cubic):
    assert not nodal_cubic.is_injective()
    report = plane_singularities(nodal_cubic)
    assert report.count(NODE) == 1
    assert report.cusp_count == 0
    assert report.geometric_genus == 0
    assert report.to_dict()["delta_sum"] == 1


def test_singularities_need_a_plane_curve(twisted_cubic):
    with pytest.raises(InvalidInputError):
        plane_singularities(twisted_cubic)


def test_twisted_cubic_point_ranks(twisted_cubic):
    r, cert = curve_point_rank(twisted_cubic, (1, 2, 4, 8))
    assert r == 1
    assert cert.validate()
    r, cert = curve_point_rank(twisted_cubic, (1, 0, 0, 1))
    assert r == 2
    assert cert.kind == CertificateKind.DECOMPOSITION
    assert cert.validate()
    # tangent points off the curve need three terms
    r, cert = curve_point_rank(twisted_cubic, (0, 1, 0, 0))
    assert r == 3
    assert cert.validate()


def test_on_curve_refutation(twisted_cubic):
    member, cert = on_curve(twisted_cubic, (0, 1, 0, 0))
    assert not member
    assert cert.kind == CertificateKind.REFUTATION
    assert cert.validate()
    with pytest.raises(InvalidInputError):
        on_curve(twisted_cubic, (0, 0, 0, 0))
    with pytest.raises(InvalidInputError):
        on_curve(twisted_cubic, (1, 0, 0))


def test_point_rank_rejects_other_ambients(cuspidal_cubic):
    with pytest.raises(UnsupportedInstanceError):
        curve_point_rank(cuspidal_cubic, (1, 0, 0))


def test_base_point_schedule():
    assert base_point_schedule(5) == [0, 1, -1, 2, -2]


def test_tangent_points_of_the_quartic_have_rank_four():
    r, cert = curve_point_rank(rnc(4), (0, 1, 0, 0, 0))
    assert r == 4
    assert cert.kind == CertificateKind.REFUTATION
    bound = cert.children[-1]
    assert bound.kind == CertificateKind.CONTACT_BOUND
    assert bound.contact == (2, 4)
    assert bound.points == ("(1:0)",)
    assert cert.validate()


def test_trisecant_search_without_base_points_is_undecided(monkeypatch):
    # Hankel determinant 2: off the secant variety, so on no tangent line
    q = (1, 0, 1, 0, 3)
    assert tangential_bound(rnc(4), q) is None
    monkeypatch.setattr(settings, "trisecant_base_points", 0)
    with pytest.raises(UndecidedError):
        trisecant_membership(rnc(4), q)


def test_tangential_bound_needs_p4(twisted_cubic):
    with pytest.raises(InvalidInputError):
        tangential_bound(twisted_cubic, (0, 1, 0, 0))


def test_ordinary_triple_point_is_not_three_nodes():
    # lines y = s x through the origin, with s = 0, 1, -1 all landing on it
    X = RationalCurve.from_exprs([Z0 ** 3 * Z1 - Z0 * Z1 ** 3, Z0 ** 2 * Z1 ** 2 - Z1 ** 4, Z0 ** 4 + Z1 ** 4])
    report = plane_singularities(X)
    assert report.count(TRIPLE_POINT) == 1
    assert report.count(NODE) == 0
    (entry,) = report.entries
    assert entry.multiplicity == 3
    assert entry.delta == 3
    assert report.geometric_genus == 0


def test_genus_is_reported_and_negative_values_flagged():
    positive = SingularityReport(4, [SingularityEntry(NODE, "p", 1, 1)])
    assert positive.geometric_genus == 2
    assert positive.genus_consistent
    negative = SingularityReport(3, [SingularityEntry(NODE, "p", 2, 1)])
    assert negative.geometric_genus == -1
    assert not negative.genus_consistent
    assert negative.to_dict()["genus_consistent"] is False


def test_node_at_conjugate_parameters_is_a_curve_point():
    # s = +-sqrt(2) both map to (1 : 2 : 0 : 4)
    X = RationalCurve.from_exprs([Z0 ** 4, Z0 ** 2 * Z1 ** 2, Z0 * Z1 ** 3 - 2 * Z0 ** 3 * Z1, Z1 ** 4])
    member, cert = on_curve(X, (1, 2, 0, 4))
    assert member
    assert cert.kind == CertificateKind.DECOMPOSITION
    assert not cert.vectors
    assert cert.modulus.degree() == 2
    assert cert.validate()
    assert not replace(cert, target=(1, 2, 0, 5)).validate()


def test_secant_through_conjugate_parameters(twisted_cubic):
    # (1, 0, 2, 0) is half the sum of the points at s = sqrt(2) and s = -sqrt(2)
    member, cert = secant_membership(twisted_cubic, (1, 0, 2, 0))
    assert member
    assert not cert.vectors
    assert cert.modulus.degree() == 2
    assert len(cert.fiber) == 2
    assert cert.validate()
    assert "fiber" in cert.to_dict()
    assert not replace(cert, target=(1, 0, 3, 0)).validate()


def test_certificates_without_evidence_fail_validation(twisted_cubic):
    claimed = SystemWitness(WitnessStatus.ZERO_EXISTS, description="claimed")
    assert not RankCertificate(kind=CertificateKind.DECOMPOSITION, rank=1, trace=(claimed,)).validate()

    r, cert = curve_point_rank(twisted_cubic, (1, 0, 0, 1))
    assert r == 2
    assert not replace(cert, rank=3).validate()

    r, cert = curve_point_rank(rnc(4), (0, 1, 0, 0, 0))
    assert r == 4
    assert not replace(cert, children=cert.children[:2]).validate()

    member, refutation = on_curve(twisted_cubic, (0, 1, 0, 0))
    assert not member
    (w,) = refutation.trace
    forged = replace(w, system=(Poly(S - 1, S, domain=QQ),))
    assert refutation.validate()
    assert not replace(refutation, trace=(forged,)).validate()


@pytest.mark.slow
def test_projection_degree_law_on_random_centers():
    rng = np.random.default_rng(21)
    trials = 0
    while trials < 100:
        d = 3 + trials % 2
        M = [seeded_integers(rng, d + 1, bound=3) for _ in range(d + 1)]
        if determinant(QMatrix.from_rows(M)) == 0:
            continue
        X = rnc(d).transform(M)
        q = seeded_integers(rng, d + 1, bound=4)
        if any(q) and not on_curve(X, q)[0]:
            assert project(X, q).degree == d
        c = seeded_integers(rng, 1, bound=5)[0]
        assert project(X, X.evaluate(1, c)).degree == d - 1
        trials += 1


@pytest.mark.slow
def test_contact_profiles_survive_random_coordinate_changes():
    X = RationalCurve.from_exprs([Z0 ** 4, Z0 ** 3 * Z1, Z0 ** 2 * Z1 ** 2, Z1 ** 4])
    params = [ParameterPoint.affine(0), ParameterPoint.infinity(), ParameterPoint.affine(2)]
    expected = [contact_profile(X, p).orders for p in params]
    assert expected[0] == (0, 0, 1)
    rng = np.random.default_rng(22)
    trials = 0
    while trials < 100:
        M = [seeded_integers(rng, 4, bound=3) for _ in range(4)]
        if determinant(QMatrix.from_rows(M)) == 0:
            continue
        Y = X.transform(M)
        assert [contact_profile(Y, p).orders for p in params] == expected
        trials += 1
