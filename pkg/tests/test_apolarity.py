import numpy as np
import pytest
from sympy import Poly, QQ, Rational, Symbol

from src.algebra.errors import InvalidInputError, UnsupportedInstanceError
from src.algebra.matrices import rank
from src.algebra.polynomials import seeded_integers
from src.apolarity.cubics import cubic_rank, de_paolis_decompose, hesse_cubic, seeded_cubic, tangent_line_conic
from src.apolarity.forms import (
    SymForm,
    annihilates,
    annihilates_over,
    apolar_basis,
    apply_operator,
    border_rank_lb,
    catalecticant,
    catalecticant_ranks,
    hessian,
    power_form,
)
from src.apolarity.ledger import quartic_case_table, verify_quartic_ledger
from src.apolarity.plane import plane_common_zeros
from src.apolarity.schemes import (
    PLANE,
    QUARTIC_CASES,
    ZeroDimScheme,
    apolarity_membership,
    is_smooth_conic,
    jet_scheme,
    quartic_scheme,
    span_membership,
)
from src.models.certificates import CertificateKind, ReportStatus

x, y, z = PLANE


def form(expr) -> SymForm:
    return SymForm.from_expr(expr, PLANE)


def test_apply_operator():
    f = Poly(x ** 2 * y, *PLANE, domain=QQ)
    assert apply_operator(Poly(x, *PLANE, domain=QQ), f) == Poly(2 * x * y, *PLANE, domain=QQ)
    assert annihilates(Poly(z, *PLANE, domain=QQ), f)
    assert annihilates(Poly(y ** 2, *PLANE, domain=QQ), f)


def test_symform_rejects_inhomogeneous():
    with pytest.raises(InvalidInputError):
        form(x ** 3 + y)


def test_catalecticant_ranks_of_fermat_cubic():
    assert catalecticant_ranks(form(x ** 3 + y ** 3 + z ** 3)) == [1, 3, 3, 1]
    assert len(apolar_basis(form(x ** 3 + y ** 3 + z ** 3), 2)) == 3


def test_catalecticant_transpose_rank():
    rng = np.random.default_rng(3)
    for _ in range(100):
        d = int(rng.integers(2, 5))
        total = sum(int(rng.integers(-3, 4)) * x ** i * y ** j * z ** (d - i - j)
                    for i in range(d + 1) for j in range(d + 1 - i))
        if total == 0:
            continue
        f = form(total)
        for a in range(d + 1):
            assert rank(catalecticant(f, a)) == rank(catalecticant(f, d - a))


def test_power_sums_pass_membership():
    rng = np.random.default_rng(5)
    trials = 0
    while trials < 100:
        r = int(rng.integers(1, 4))
        points = [tuple(seeded_integers(rng, 3, bound=4)) for _ in range(r)]
        if any(all(c == 0 for c in p) for p in points):
            continue
        if rank_of(points) != r:
            continue
        weights = seeded_integers(rng, r, bound=4, nonzero=True)
        body = sum((w * power_form(p, 3, PLANE) for w, p in zip(weights, points)), Poly(0, *PLANE, domain=QQ))
        if body.is_zero:
            continue
        f = SymForm.from_poly(body)
        assert span_membership(f, points)
        assert apolarity_membership(f, ZeroDimScheme.from_points(points))
        assert border_rank_lb(f) <= r
        trials += 1


def rank_of(points):
    from src.algebra.matrices import QMatrix
    return rank(QMatrix.from_rows([list(p) for p in points], cols=3))


def test_point_schemes_have_expected_hilbert_function():
    scheme = ZeroDimScheme.from_points([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
    assert scheme.claimed_degree == 4
    assert scheme.hilbert_value(1) == 3
    assert scheme.degree_holds(2)
    assert scheme.degree_holds(3)


def test_jet_scheme():
    scheme = jet_scheme((0, 0, 1), Poly(y, *PLANE, domain=QQ), 3)
    assert scheme.claimed_degree == 3
    assert scheme.degree_holds(3)
    with pytest.raises(InvalidInputError):
        jet_scheme((1, 0, 0), Poly(x, *PLANE, domain=QQ), 2)


@pytest.mark.parametrize("case,degree", [
    ("I", 3), ("IIa", 4), ("IIb", 4), ("IIIa", 5), ("IIIb", 5), ("IIIc", 5),
])
def test_quartic_schemes(case, degree):
    scheme = quartic_scheme(case)
    assert scheme.claimed_degree == degree
    assert scheme.hilbert_value(4) == degree


def test_quartic_scheme_rejects_unknown_case():
    with pytest.raises(InvalidInputError):
        quartic_scheme("IV")
    with pytest.raises(InvalidInputError):
        quartic_scheme("I", {"conic": x * y})
    assert len(QUARTIC_CASES) == 6


def test_membership_degree_guard():
    scheme = ZeroDimScheme.from_ideal([Poly(x ** 4, *PLANE, domain=QQ), Poly(y, *PLANE, domain=QQ)], 4, 1)
    with pytest.raises(UnsupportedInstanceError):
        apolarity_membership(form(z ** 3), scheme)


def test_smooth_conic():
    assert is_smooth_conic(Poly(x * z - y ** 2, *PLANE, domain=QQ))
    assert not is_smooth_conic(Poly(x * y, *PLANE, domain=QQ))


def test_plane_common_zeros():
    zeros = plane_common_zeros([Poly(x * y, *PLANE, domain=QQ), Poly(y * z, *PLANE, domain=QQ),
                                Poly(x * z, *PLANE, domain=QQ)])
    assert zeros.count == 3
    assert sorted(zeros.points) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_normal_form_cubic_has_rank_five():
    f = form(y * (x ** 2 + y * z))
    assert tangent_line_conic(f) is not None
    r, cert = cubic_rank(f)
    assert r == 5
    assert cert.kind == CertificateKind.FACTORIZATION
    assert cert.validate()


def test_fermat_cubic_has_rank_three():
    r, cert = cubic_rank(form(x ** 3 + y ** 3 + z ** 3))
    assert r == 3
    assert cert.validate()


def test_cubes_and_binary_cubics():
    r, cert = cubic_rank(form((x + 2 * y - z) ** 3))
    assert r == 1
    assert cert.validate()
    r, cert = cubic_rank(form(x ** 2 * y))
    assert r == 3
    assert cert.validate()


@pytest.mark.parametrize("seed", range(10))
def test_seeded_cubics_have_rank_four(seed):
    f = seeded_cubic(seed)
    r, cert = cubic_rank(f, seed=seed)
    assert r == 4
    assert cert.validate()
    C1, C2 = cert.scheme
    assert apolarity_membership(f, ZeroDimScheme.from_ideal([C1, C2], 4, 4))


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(3))
def test_de_paolis_scheme(seed):
    f = hesse_cubic(seed)
    assert hessian(f).total_degree() == 3
    scheme, cert = de_paolis_decompose(f, seed=seed)
    assert scheme.claimed_degree == 4
    assert scheme.support_size == 2
    assert apolarity_membership(f, scheme)
    assert cert.validate()


@pytest.mark.slow
def test_de_paolis_on_random_cubics():
    extended = 0
    for seed in range(3):
        f = seeded_cubic(seed)
        scheme, cert = de_paolis_decompose(f, seed=seed)
        assert (scheme.claimed_degree, scheme.support_size) == (4, 2)
        assert len(scheme.generators) == 2
        assert cert.validate()
        if cert.modulus is not None:
            extended += 1
            assert cert.to_dict()["field"]
            assert all(annihilates_over(g, f.body, cert.modulus) for g in cert.scheme)
            with pytest.raises(UnsupportedInstanceError):
                scheme.hilbert_value(2)
    # at least one of these Hessians has only irrational flexes
    assert extended > 0


def test_annihilation_over_a_quadratic_field():
    x, y, z = PLANE
    a = Symbol("a")
    modulus = Poly(a ** 2 - 2, a, domain=QQ)
    f = Poly(x ** 2 * y + Rational(2, 3) * y ** 3, x, y, z, domain=QQ)
    # a^2 x^2 - y^2 sends f to (2 a^2 - 4) y
    assert annihilates_over(Poly(a ** 2 * x ** 2 - y ** 2, x, y, z), f, modulus)
    assert not annihilates_over(Poly(a * x ** 2 - y ** 2, x, y, z), f, modulus)
    assert not annihilates_over(Poly(a ** 2 * x ** 2 - y ** 2, x, y, z), f, Poly(a ** 2 - 3, a, domain=QQ))


def test_quartic_ledger_values():
    ledger = quartic_case_table()
    assert ledger.totals() == {"I": 8, "IIa": 9, "IIb": 10, "IIIa": 10, "IIIb": 10, "IIIc": 9}
    assert ledger.bound == 10
    assert ledger.join_bound == 13
    assert ledger.below_rank6_locus
    iiib = next(r for r in ledger.rows if r.case == "IIIb")
    assert [v for _, v in iiib.summands] == [2, 2, 2, 4]
    assert [v for _, v in iiib.alternatives[0]] == [5, 1, 4]


def test_quartic_ledger_report():
    report = verify_quartic_ledger()
    assert report.status == ReportStatus.VERIFIED
    assert report.validate()
    assert report.details["join_bound"] == 13


@pytest.mark.parametrize("m", [0, 1])
def test_de_paolis_needs_a_smooth_hessian(m):
    # Hess(x^3 + y^3 + z^3 + 6m xyz) is a multiple of m^2 (x^3 + y^3 + z^3) - (1 + 2m^3) xyz,
    # a triangle for m = 0 and m = 1 although the cubic itself is smooth
    with pytest.raises(UnsupportedInstanceError, match="singular"):
        de_paolis_decompose(form(x ** 3 + y ** 3 + z ** 3 + 6 * m * x * y * z))
