from fractions import Fraction

import numpy as np
import pytest
from sympy import Poly, QQ

from src.algebra.errors import InvalidInputError, UnsupportedInstanceError
from src.binary.sylvester import Z0, Z1
from src.curves.curve import S, RationalCurve
from src.loci.hirzebruch import (
    C0,
    CANONICAL,
    FIBER,
    HYPERPLANE,
    O_POINT,
    F1Class,
    F1Curve,
    c0_point,
    f1_embed,
    f1_genus,
    f1_intersection,
    f1_numbers,
    f1_sample_curve,
    f1_system_dimension,
    verify_claim2,
    verify_f1,
)
from src.loci.hypotheses import genus_one_coverage, hirzebruch_bound, ii1_check, ii1_table, verify_ii1
from src.loci.ii0 import BASE_PARAMETER, ii0_curve, tangent_samples, verify_ii0
from src.loci.joins import join_dim_bound
import src.loci.piene as piene
from src.loci.piene import piene_verify, secant_hankel_det, seeded_center, stall_polynomial, tangent_partners
from src.models.certificates import ReportStatus


def test_ii1_table():
    quartic, sextic, octic, nonic = ii1_table([(4, 1), (6, 1), (8, 1), (9, 1)])
    assert not quartic.covered
    assert sextic.even_route and not sextic.odd_route
    assert octic.even_route and octic.odd_route
    assert nonic.odd_route and not nonic.even_route
    assert nonic.hirzebruch_bound is None
    assert quartic.hirzebruch_bound == hirzebruch_bound(4) == 3


def test_ii1_cusp_count_against_tono():
    check = ii1_check(6, 1)
    assert check.cusp_count == 9
    assert check.tono_threshold == Fraction(19)
    assert not check.exceeds_tono
    assert check.to_dict()["tono_threshold"] == "19/1"


def test_ii1_rejects_bad_pairs():
    with pytest.raises(InvalidInputError):
        ii1_check(2, 0)
    with pytest.raises(InvalidInputError):
        ii1_check(5, -1)


def test_genus_one_coverage():
    assert genus_one_coverage(40) == {"even_from_6": True, "all_from_9": True}


def test_verify_ii1_reports():
    assert verify_ii1(9, 1).status == ReportStatus.VERIFIED
    report = verify_ii1(4, 1)
    assert report.status == ReportStatus.REFUTED
    assert report.validate()


@pytest.mark.parametrize("dims,bound", [((10, 2), 13), ((6, 2), 9), ((0, 1), 2)])
def test_join_dim_bound(dims, bound):
    assert join_dim_bound(*dims) == bound


def test_join_dim_bound_rejects_negative():
    with pytest.raises(InvalidInputError):
        join_dim_bound(-1, 2)


def test_ii0_curve_validation():
    with pytest.raises(InvalidInputError):
        ii0_curve(3, 1, 1)
    with pytest.raises(InvalidInputError):
        ii0_curve(5, 0, 1)
    X = ii0_curve(5, 2, Fraction(1, 3))
    assert X.point(BASE_PARAMETER) == (1, 0, 0, 0)


def test_tangent_samples_start_at_tangent_direction():
    samples = tangent_samples(3, seed=4)
    assert samples[0] == (0, 1, 0, 0)
    assert len({s[0] for s in samples}) == 3
    assert all(s[1:] == (1, 0, 0) for s in samples)


def test_ii0_contact_and_ranks():
    report = verify_ii0(5, 1, 1, samples=2)
    assert report.details["contact_degree"] == 4
    assert report.details["contact_support"] == ["(1:0)^4"]
    assert report.details["tangent_line"] == ["x2 = 0", "x3 = 0"]
    assert report.status == ReportStatus.VERIFIED
    assert report.validate()


@pytest.mark.slow
def test_ii0_sextic():
    report = verify_ii0(6, 1, -1, samples=2)
    assert report.details["contact_degree"] == 5
    assert report.status == ReportStatus.VERIFIED


def test_f1_intersection_numbers():
    Y = F1Class(1, 4)
    assert f1_intersection(Y, HYPERPLANE) == 5
    assert f1_intersection(Y, C0) == 3
    assert f1_intersection(Y, FIBER) == 1
    assert f1_intersection(FIBER, FIBER) == 0
    assert f1_intersection(C0, C0) == -1
    assert C0 + FIBER + FIBER == HYPERPLANE
    assert str(CANONICAL) == "-2C0+-3f"


@pytest.mark.parametrize("c", [F1Class(1, 4), HYPERPLANE, FIBER, C0])
def test_f1_rational_classes(c):
    assert f1_genus(c) == 0


def test_f1_system_dimensions():
    assert f1_system_dimension(F1Class(1, 4))[0] == 8
    assert f1_system_dimension(F1Class(1, 4), e=3)[0] == 5
    assert f1_system_dimension(F1Class(0, 3))[0] == 3
    assert f1_numbers(5) == {"degree": 5, "c0_intersection": 3, "fiber_intersection": 1, "genus": 0,
                             "system_dimension": 8, "system_dimension_with_e": 5}
    with pytest.raises(UnsupportedInstanceError):
        f1_system_dimension(F1Class(2, 1))
    with pytest.raises(UnsupportedInstanceError):
        f1_system_dimension(FIBER, e=1)
    with pytest.raises(InvalidInputError):
        f1_system_dimension(F1Class(1, 4), e=4)


def test_f1_curve_validation():
    with pytest.raises(InvalidInputError):
        F1Curve(5, Poly(Z0 ** 3, Z0, Z1, domain=QQ), Poly(Z1 ** 3, Z0, Z1, domain=QQ))
    reducible = F1Curve(5, Poly(Z1 ** 4, Z0, Z1, domain=QQ), Poly(Z1 ** 3, Z0, Z1, domain=QQ))
    assert not reducible.is_irreducible()
    with pytest.raises(InvalidInputError):
        f1_embed(reducible)


@pytest.mark.parametrize("d", [4, 5])
def test_f1_sample_is_smooth_and_spans(d):
    C, X, report = f1_sample_curve(d, seed=0)
    assert C.divisor_class == F1Class(1, d - 1)
    assert (X.ambient, X.degree) == (4, d)
    assert X.is_nondegenerate()
    assert report.status == ReportStatus.VERIFIED
    assert len(report.certificates[0].trace) == 4
    assert report.validate()


def test_c0_points():
    assert c0_point(1, 0) == O_POINT
    with pytest.raises(InvalidInputError):
        c0_point(0, 0)
    with pytest.raises(InvalidInputError):
        verify_claim2(5, points=[(1, 0)])
    with pytest.raises(InvalidInputError):
        verify_claim2(4)


def test_f1_numbers_and_contacts():
    report = verify_f1(5, rank_points=False)
    assert report.status == ReportStatus.VERIFIED
    assert report.details["ruling_contact"]["degree"] == 1
    assert report.details["c0_contact"] == {"degree": 3, "support": ["(1:0)^3"]}
    assert report.validate()


@pytest.mark.slow
def test_c0_points_have_rank_four():
    report = verify_claim2(5)
    assert report.status == ReportStatus.VERIFIED
    assert [p["rank"] for p in report.details["points"]] == [4, 4]
    assert report.validate()


def test_piene_helpers():
    assert secant_hankel_det([1, 1, 1, 1, 1]) == 0
    assert secant_hankel_det([1, 0, 1, 0, 0]) == -1
    assert stall_polynomial([0, 0, 0, 1, 0]) == Poly(-4 * S, S, domain=QQ)


@pytest.mark.slow
def test_piene_projection():
    report = piene_verify(seed=0, samples=3)
    assert report.status == ReportStatus.VERIFIED
    assert report.details["candidates"]
    assert all(r == 2 for r in report.details["secant_sample_ranks"])
    assert report.validate()


def test_seeded_centers_put_a_stall_at_a_rational_parameter():
    rng = np.random.default_rng(3)
    centers = [seeded_center(rng) for _ in range(20)]
    for c in centers:
        stall = stall_polynomial(c)
        assert stall.is_zero or any(f.degree() == 1 for f, _ in stall.factor_list()[1])
    # the stall is not pinned to t = 0
    assert any(c[4] != 0 for c in centers)


def test_tangent_partners_of_a_degenerate_stall():
    # tangent lines at u != 0 meet the one at 0 iff 2u^5 = 0
    X = RationalCurve.from_exprs([Z0 ** 4, Z0 ** 3 * Z1, Z0 ** 2 * Z1 ** 2, Z1 ** 4])
    assert tangent_partners(X, Fraction(0)) == ([], [])


def test_piene_without_partners_is_undecided(monkeypatch):
    monkeypatch.setattr(piene, "tangent_partners", lambda Y, v0: ([], []))
    report = piene_verify(seed=0, samples=1)
    assert report.status == ReportStatus.UNDECIDED
    assert report.limit == "no tangent partner of a rational stall"
    assert report.validate()


def test_piene_with_irrational_partner_is_undecided(monkeypatch):
    monkeypatch.setattr(piene, "tangent_partners", lambda Y, v0: ([], ["[z0**2 - 2*z1**2]"]))
    report = piene_verify(seed=0, samples=1)
    assert report.status == ReportStatus.UNDECIDED
    assert report.details["unresolved_partners"]
