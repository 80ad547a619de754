from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from sympy import Poly, QQ

from src.algebra.errors import InvalidInputError
from src.algebra.matrices import in_span
from src.algebra.polynomials import seeded_integers
from src.binary.sylvester import (
    Z0,
    Z1,
    BinaryForm,
    binary_roots,
    catalecticant_rank,
    moment_vector,
    power_sum,
    rnc_point_rank,
    sylvester_rank,
)
from src.models.certificates import CertificateKind


@pytest.mark.parametrize("d", range(1, 9))
def test_pure_power_has_rank_one(d):
    f = BinaryForm.from_poly(Poly(Z0 ** d, Z0, Z1, domain=QQ))
    r, cert = sylvester_rank(f)
    assert r == 1
    assert cert.validate()


@pytest.mark.parametrize("d", range(3, 7))
def test_tangent_monomial_has_rank_d(d):
    f = BinaryForm.from_poly(Poly(Z0 ** (d - 1) * Z1, Z0, Z1, domain=QQ))
    r, cert = sylvester_rank(f)
    assert r == d
    assert cert.rank == d
    assert cert.validate()


def test_poly_round_trip():
    p = Poly(3 * Z0 ** 3 - Z0 * Z1 ** 2 + 5 * Z1 ** 3, Z0, Z1, domain=QQ)
    assert BinaryForm.from_poly(p).to_poly() == p


def test_binary_form_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        BinaryForm.from_coefficients([0, 0, 0])
    with pytest.raises(InvalidInputError):
        BinaryForm.from_poly(Poly(Z0 ** 2 + Z1, Z0, Z1, domain=QQ))


def test_moment_vector_is_curve_point():
    assert moment_vector((1, 2), 3) == (1, 2, 4, 8)


def test_binary_roots():
    # w0 w1 - w1^2 = w1 (w0 - w1): roots (1:0) and (1:1)
    squarefree, roots = binary_roots([Fraction(0), Fraction(1), Fraction(-1)])
    assert squarefree
    assert sorted(roots) == [(Fraction(1), Fraction(0)), (Fraction(1), Fraction(1))]
    squarefree, _ = binary_roots([Fraction(0), Fraction(0), Fraction(1)])
    assert not squarefree


def test_power_sums_up_to_generic_rank():
    rng = np.random.default_rng(11)
    for trial in range(100):
        d = int(rng.integers(4, 8))
        r = int(rng.integers(1, d // 2 + 1))
        params = rng.choice(np.arange(-20, 21), size=r, replace=False)
        points = [(1, int(p)) for p in params]
        weights = [int(w) or 1 for w in rng.integers(1, 6, size=r)]
        f = power_sum(points, weights, d)
        assert catalecticant_rank(f) == r
        rank, cert = sylvester_rank(f, seed=trial)
        assert rank == r
        assert cert.validate()


def test_rank_two_decomposition_certificate():
    f = power_sum([(1, 0), (1, 1)], [1, 1], 4)
    r, cert = sylvester_rank(f)
    assert r == 2
    assert cert.kind == CertificateKind.DECOMPOSITION
    assert len(cert.points) == 2


def test_hankel_transpose_rank():
    f = power_sum([(1, 1), (1, -2), (0, 1)], [1, 3, -1], 6)
    for a in range(7):
        assert f.hankel(a).transpose() == f.hankel(6 - a)


def test_rnc_point_rank():
    r, _ = rnc_point_rank([1, 0, 0, 0])
    assert r == 1
    # binomial coordinates of z0^2 z1 are (0, 1/3, 0, 0)
    r, _ = rnc_point_rank([0, Fraction(1, 3), 0, 0])
    assert r == 3
    with pytest.raises(InvalidInputError):
        rnc_point_rank([0, 0, 0])


@pytest.mark.parametrize("d", range(2, 8))
def test_sum_of_two_coordinate_vertices_has_rank_two(d):
    point = [1] + [0] * (d - 1) + [1]
    r, cert = rnc_point_rank(point)
    assert r == 2
    assert cert.validate()


def test_rank_is_invariant_under_shearing():
    rng = np.random.default_rng(31)
    for trial in range(30):
        d = int(rng.integers(3, 7))
        coeffs = seeded_integers(rng, d + 1, bound=3)
        if not any(coeffs):
            coeffs[0] = 1
        f = BinaryForm.from_monomial_coefficients(coeffs)
        c = seeded_integers(rng, 1, bound=4, nonzero=True)[0]
        sheared = Poly(f.to_poly().as_expr().subs(Z1, Z1 + c * Z0), Z0, Z1, domain=QQ)
        g = BinaryForm.from_poly(sheared, d)
        assert sylvester_rank(g, seed=trial)[0] == sylvester_rank(f, seed=trial)[0]


def _span_oracle(f: BinaryForm, grid, top: int):
    """Smallest number of grid points whose powers span f, by exhaustive search"""
    for r in range(1, top + 1):
        for points in combinations(grid, r):
            if in_span([moment_vector(p, f.degree) for p in points], f.coefficients):
                return r
    return None


def test_sylvester_agrees_with_exhaustive_span_search():
    grid = [(0, 1)] + [(1, k) for k in range(-2, 3)]
    rng = np.random.default_rng(32)
    for trial in range(40):
        d = int(rng.integers(4, 7))
        r = int(rng.integers(1, 4))
        chosen = rng.choice(len(grid), size=r, replace=False)
        weights = seeded_integers(rng, r, bound=4, nonzero=True)
        f = power_sum([grid[i] for i in chosen], weights, d)
        assert _span_oracle(f, grid, 3) == sylvester_rank(f, seed=trial)[0] == r
