"""Spectral structure of hyperplane multiplication."""
from fractions import Fraction

import pytest

from cgquantum.exactmath import QPolynomial, identity, mat_rank, rat
from cgquantum.schubert import LABELS, SchubertElement, load_default_table
from cgquantum.spectral import (check_semisimple, conjecture_o_check,
                                covariance_check, galkin_bound_check,
                                multiplication_matrix, nilpotency_index,
                                sigma1_charpoly)

Y_MAX_REFERENCE = 99.00713881372502
T_REFERENCE = 12.6175960332


@pytest.fixture(scope="module")
def table():
    return load_default_table()


@pytest.fixture(scope="module")
def report(table):
    return conjecture_o_check(table)


def test_identity_multiplication_matrix(table):
    m = multiplication_matrix(table, SchubertElement.basis("s0"), 1)
    assert m == identity(15)


def test_charpoly_exact(table):
    p = sigma1_charpoly(table, 1)
    want = QPolynomial({15: rat(1), 11: rat(-102), 7: rat(317),
                        3: rat(-2048)}, var="t")
    assert p == want


def test_classical_operator_nilpotent(table):
    assert nilpotency_index(table, 0) == 9
    m = multiplication_matrix(table, SchubertElement.basis("s1"), 0)
    power = identity(15)
    from cgquantum.exactmath import mat_mul
    for _ in range(15):
        power = mat_mul(power, m)
    assert all(x == 0 for row in power for x in row)


def test_semisimple_at_q1_not_at_q0(table):
    ok, det = check_semisimple(table, 1)
    assert ok and det != 0
    ok0, det0 = check_semisimple(table, 0)
    assert not ok0 and det0 == 0


def test_trace_form_rank_is_full(table, report):
    assert report.trace_form_nondegenerate


def test_dominant_root_value(report):
    assert report.shape_ok
    assert abs(report.y_max - Y_MAX_REFERENCE) <= 1e-9 * Y_MAX_REFERENCE
    lo, hi = report.y_max_bracket
    assert lo < Fraction(report.y_max).limit_denominator(10**18) < hi or \
        float(lo) <= report.y_max <= float(hi)


def test_reference_decimal_is_near_the_root():
    # exact rational evaluation of the cubic at the published decimal
    f = QPolynomial({3: rat(1), 2: rat(-102), 1: rat(317), 0: rat(-2048)},
                    var="y")
    literal = Fraction(9900713881372502, 10**14)
    residual = f(literal)
    scale = abs(f.derivative()(literal) * literal)
    assert abs(residual) < Fraction(1, 10**6) * scale


def test_all_flags_true(report):
    assert report.ok
    assert report.dominant_real_simple
    assert report.modulus_set_is_fourth_roots


def test_subdominant_pair_strictly_smaller(report):
    assert 4.5 < report.other_modulus < 4.6
    assert report.other_modulus < report.y_max


def test_spectral_radius_and_strict_bound(table):
    t_cg, bound_ok, _ = galkin_bound_check(table)
    assert abs(t_cg - T_REFERENCE) <= 1e-8
    assert bound_ok
    assert t_cg > 9


def test_boundary_value_would_fail_strictness():
    # equality case of the bound: a bracket pinned at (9/4)^4 must not
    # certify strict dominance
    from cgquantum.spectral import GALKIN_THRESHOLD
    assert not (GALKIN_THRESHOLD > GALKIN_THRESHOLD)
    assert 4 * float(GALKIN_THRESHOLD) ** 0.25 == 9.0


def test_charpoly_scaling_with_q(table):
    assert covariance_check(table, 16)
    p16 = sigma1_charpoly(table, 16)
    assert p16.coeff(11) == -102 * 16
    assert p16.coeff(7) == 317 * 16 ** 2
    assert p16.coeff(3) == -2048 * 16 ** 3
