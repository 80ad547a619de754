from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
from sympy import Poly, QQ, Rational, symbols

from src.algebra.elimination import WitnessStatus, solve_bivariate, system_has_zero_off
from src.algebra.errors import InvalidInputError, UndecidedError
from src.algebra.fields import NumberField
from src.algebra.matrices import QMatrix, determinant, in_span, kernel, rank, solve
from src.algebra.polynomials import (
    divides,
    homogeneous_monomials,
    ordered_terms,
    primitive_vector,
    resultant,
    seeded_integers,
    squarefree_part,
    to_fraction,
    to_rational,
)

s, t = symbols("s t")


def test_conversions():
    assert to_fraction(3) == Fraction(3)
    assert to_fraction(Rational(2, 6)) == Fraction(1, 3)
    assert to_rational(Fraction(-4, 6)) == Rational(-2, 3)
    with pytest.raises(InvalidInputError):
        to_fraction(symbols("a"))


def test_primitive_vector():
    assert primitive_vector([Fraction(1, 2), Fraction(1, 3), 0]) == (3, 2, 0)
    assert primitive_vector([0, -2, 4]) == (0, 1, -2)
    with pytest.raises(InvalidInputError):
        primitive_vector([0, 0])


def test_homogeneous_monomials_count_and_order():
    monos = homogeneous_monomials(3, 2)
    assert len(monos) == 6
    assert monos[0] == (2, 0, 0)
    assert all(sum(m) == 2 for m in monos)
    assert homogeneous_monomials(2, -1) == []


def test_ordered_terms_leading_first():
    x, y = symbols("x y")
    p = Poly(x ** 2 + 3 * x * y - y ** 2, x, y, domain=QQ)
    terms = ordered_terms(p)
    assert terms[0] == ((2, 0), Fraction(1))
    assert dict(terms)[(0, 2)] == Fraction(-1)


def test_squarefree_part():
    part, was = squarefree_part(Poly((s - 1) ** 2 * (s + 2), s, domain=QQ))
    assert part == Poly((s - 1) * (s + 2), s, domain=QQ)
    assert not was


def test_resultant_detects_common_root():
    p = Poly(s ** 2 - 1, s, domain=QQ)
    q = Poly(s - 1, s, domain=QQ)
    assert resultant(p, q, s).is_zero


def test_seeded_integers_reproducible():
    a = seeded_integers(np.random.default_rng(7), 10, bound=3, nonzero=True)
    b = seeded_integers(np.random.default_rng(7), 10, bound=3, nonzero=True)
    assert a == b
    assert all(v != 0 and abs(v) <= 3 for v in a)


def test_kernel_and_rank():
    M = QMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    result = kernel(M)
    assert result.rank == rank(M) == 1
    assert len(result.basis) == 2
    for v in result.basis:
        assert M.apply(v) == (0, 0)


def test_solve_and_span():
    M = QMatrix.from_rows([[1, 1], [1, -1]])
    assert solve(M, [3, 1]) == (Fraction(2), Fraction(1))
    assert in_span([[1, 0, 1], [0, 1, 1]], [2, 3, 5])
    assert not in_span([[1, 0, 1]], [0, 1, 0])
    with pytest.raises(InvalidInputError):
        solve(QMatrix.from_rows([[1, 1], [1, 1]]), [1, 2])


def test_determinant():
    assert determinant(QMatrix.from_rows([[2, 1], [1, 1]])) == 1
    assert determinant(QMatrix.from_rows([[Fraction(1, 2), 0], [0, 4]])) == 2
    assert determinant(QMatrix.from_rows([[1, 2], [2, 4]])) == 0


def test_number_field_inverse():
    K = NumberField.from_poly(Poly(s ** 2 - 2, s, domain=QQ))
    assert K.degree == 2
    a = K.element(K.gen + 1)
    assert K.mul(a, K.inv(a)) == K.one()
    assert K.is_zero(K.element(K.gen ** 2 - 2))


def test_number_field_degree_limit():
    with pytest.raises(UndecidedError):
        NumberField.from_poly(Poly(s ** 5 - s - 1, s, domain=QQ), limit=4)


def test_solve_bivariate_counts_points():
    system = [Poly(s ** 2 + t ** 2 - 2, s, t, domain=QQ), Poly(s - t, s, t, domain=QQ)]
    result = solve_bivariate(system)
    assert not result.positive_dimensional
    assert result.finite_count() == 2


def test_solve_bivariate_irrational_points():
    system = [Poly(s ** 2 - 2, s, t, domain=QQ), Poly(t - s, s, t, domain=QQ)]
    result = solve_bivariate(system)
    assert result.finite_count() == 2
    assert any(b.field.degree == 2 for b in result.blocks)


def test_curve_component_reported():
    system = [Poly((s - t) * (s + 1), s, t, domain=QQ), Poly((s - t) * (t + 2), s, t, domain=QQ)]
    result = solve_bivariate(system)
    assert result.positive_dimensional


@pytest.mark.parametrize("order", ["st", "ts"])
def test_zero_off_excluded_both_orders(order):
    system = [Poly(s * t - 1, s, t, domain=QQ), Poly(s - t, s, t, domain=QQ)]
    w = system_has_zero_off(system, order=order)
    assert w.status == WitnessStatus.ZERO_EXISTS
    assert w.validate()

    excluded = Poly((s - 1) * (s + 1), s, t, domain=QQ)
    w = system_has_zero_off(system, excluded=excluded, order=order)
    assert w.status == WitnessStatus.NO_ZERO
    assert w.validate()


def test_no_common_zero():
    system = [Poly(s - 1, s, t, domain=QQ), Poly(s - 2, s, t, domain=QQ)]
    assert system_has_zero_off(system).status == WitnessStatus.NO_ZERO


def test_extension_limit_marks_undecided():
    system = [Poly(s ** 5 - s - 1, s, t, domain=QQ), Poly(t - s, s, t, domain=QQ)]
    w = system_has_zero_off(system, limit=3)
    assert w.status == WitnessStatus.UNDECIDED
    assert w.limit


def test_empty_system_rejected():
    with pytest.raises(InvalidInputError):
        solve_bivariate([])


def test_undecided_error_carries_limit():
    e = UndecidedError("stopped", limit="extension_degree_limit=2")
    assert e.limit == "extension_degree_limit=2"
    assert UndecidedError("stopped").limit == "stopped"


def test_resultant_against_a_linear_factor_is_a_value():
    rng = np.random.default_rng(11)
    for _ in range(40):
        coeffs = seeded_integers(rng, 5, bound=6)
        coeffs[0] = coeffs[0] or 1
        p = Poly(coeffs, s, domain=QQ)
        c = seeded_integers(rng, 1, bound=9)[0]
        r = resultant(p, Poly(s - c, s, domain=QQ), s)
        assert r.as_expr() == (-1) ** p.degree() * p.eval(c)


def test_squarefree_part_divides_and_keeps_roots():
    rng = np.random.default_rng(12)
    for _ in range(30):
        roots = seeded_integers(rng, 3, bound=4)
        mults = [1 + abs(k) % 3 for k in seeded_integers(rng, 3, bound=5)]
        p = Poly(1, s, domain=QQ)
        for a, m in zip(roots, mults):
            p = p * Poly((s - a) ** m, s, domain=QQ)
        part, was = squarefree_part(p)
        assert divides(part, p)
        assert part.gcd(part.diff(s)).degree() == 0
        assert divides(p, part ** p.degree())
        assert part.degree() == len(set(roots))
        assert was == (p.degree() == part.degree())


def test_kernel_vectors_are_annihilated():
    rng = np.random.default_rng(13)
    for _ in range(30):
        rows = [seeded_integers(rng, 5, bound=4) for _ in range(3)]
        rows.append([a - 2 * b for a, b in zip(rows[0], rows[1])])
        M = QMatrix.from_rows(rows)
        result = kernel(M)
        assert len(result.basis) == 5 - result.rank
        assert result.rank == rank(M.transpose())
        for v in result.basis:
            assert all(x == 0 for x in M.apply(v))


def test_zero_on_the_excluded_locus_only():
    w = system_has_zero_off([Poly(s - t, s, t, domain=QQ)], excluded=Poly(s - t, s, t, domain=QQ))
    assert w.status == WitnessStatus.NO_ZERO
    assert w.validate()


def test_linear_system_has_a_rational_witness():
    system = [Poly(s + t, s, t, domain=QQ), Poly(s - t + 2, s, t, domain=QQ)]
    w = system_has_zero_off(system, excluded=Poly(s - t, s, t, domain=QQ))
    assert w.status == WitnessStatus.ZERO_EXISTS
    assert w.witness == (Fraction(-1), Fraction(1))
    assert w.validate()


def test_complex_curve_component_off_the_axes():
    w = system_has_zero_off([Poly(s ** 2 + t ** 2, s, t, domain=QQ)], excluded=Poly(s * t, s, t, domain=QQ))
    assert w.status == WitnessStatus.ZERO_EXISTS
    assert w.witness is None


def test_relabelled_witnesses_fail_validation():
    system = [Poly(s * t - 1, s, t, domain=QQ), Poly(s - t, s, t, domain=QQ)]
    w = system_has_zero_off(system)
    assert w.witness is not None
    assert not replace(w, status=WitnessStatus.NO_ZERO, witness=None).validate()
    assert not replace(w, witness=(Fraction(2), Fraction(2))).validate()

    w = system_has_zero_off(system, excluded=Poly(s ** 2 - 1, s, t, domain=QQ))
    assert w.status == WitnessStatus.NO_ZERO
    assert not replace(w, excluded=None).validate()
