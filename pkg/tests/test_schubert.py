"""The Schubert-basis ring: table data, products, pairing, invariant
extraction, and the built-in consistency suite."""
from fractions import Fraction

import pytest

from cgquantum.exactmath import QPolynomial, rat
from cgquantum.schubert import (DEGREES, DUALS, LABELS, SchubertElement,
                                TableFormatError, classical_product,
                                gw_invariant, load_default_table,
                                poincare_pairing, quantum_product,
                                verify_table)


@pytest.fixture(scope="module")
def table():
    return load_default_table()


def _basis(label):
    return SchubertElement.basis(label)


def test_labels_and_degree_histogram():
    assert len(LABELS) == 15
    histogram = [0] * 9
    for label in LABELS:
        histogram[DEGREES[label]] += 1
    assert histogram == [1, 1, 2, 2, 3, 2, 2, 1, 1]


def test_duality_is_degree_complementary_involution():
    for label, dual in DUALS.items():
        assert DUALS[dual] == label
        assert DEGREES[label] + DEGREES[dual] == 8


def test_product_s2_squared(table):
    got = quantum_product(table, _basis("s2"), _basis("s2"))
    assert str(got) == "s4 + 2*s4p + 2*s4pp"


def test_identity_acts_trivially(table):
    for label in LABELS:
        assert quantum_product(table, _basis("s0"), _basis(label)) == _basis(label)


def test_top_class_squared_is_purely_quantum(table):
    got = quantum_product(table, _basis("s8"), _basis("s8"))
    want = SchubertElement({
        "s4p": QPolynomial.monomial(3),
        "s4pp": QPolynomial.monomial(3),
        "s0": QPolynomial.monomial(4),
    })
    assert got == want


def test_classical_product_drops_q_terms(table):
    got = classical_product(table, _basis("s3"), _basis("s1"))
    want = SchubertElement({"s4": QPolynomial.constant(2),
                            "s4p": QPolynomial.constant(2)})
    assert got == want


def test_classical_product_of_top_class_vanishes(table):
    assert classical_product(table, _basis("s8"), _basis("s1")).is_zero()


def test_hyperplane_squared(table):
    got = classical_product(table, _basis("s1"), _basis("s1"))
    want = SchubertElement({"s2": QPolynomial.constant(1),
                            "s2p": QPolynomial.constant(1)})
    assert got == want


def test_pairing_values(table):
    assert poincare_pairing(table, _basis("s2"), _basis("s6")) == 1
    assert poincare_pairing(table, _basis("s2p"), _basis("s6")) == 0
    assert poincare_pairing(table, _basis("s4pp"), _basis("s4pp")) == 1


def test_pairing_matches_duality_involution(table):
    for a in LABELS:
        for b in LABELS:
            if DEGREES[a] + DEGREES[b] != 8:
                continue
            want = 1 if DUALS[a] == b else 0
            assert poincare_pairing(table, _basis(a), _basis(b)) == want


def test_gw_examples(table):
    assert gw_invariant(table, 1, "s3", "s1", "s8") == 2
    assert gw_invariant(table, 3, "s7", "s8", "s5") == 1
    assert gw_invariant(table, 0, "s4", "s4", "s0") == 1
    # the degree-5 hyperplane row carries its q-term on the primed
    # degree-2 class, so extraction against s6p picks it up
    assert gw_invariant(table, 1, "s5", "s1", "s6p") == 1
    assert gw_invariant(table, 1, "s5", "s1", "s6") == 0


def test_gw_degree_mismatch_returns_zero(table):
    assert gw_invariant(table, 2, "s1", "s1", "s1") == 0
    assert gw_invariant(table, 0, "s8", "s8", "s8") == 0


def test_gw_symmetric_in_all_arguments(table):
    triples = [("s2", "s3", "s3"), ("s4", "s5", "s3"), ("s7", "s8", "s5")]
    for d in range(5):
        for a, b, c in triples:
            vals = {gw_invariant(table, d, x, y, z)
                    for x, y, z in [(a, b, c), (a, c, b), (b, a, c),
                                    (b, c, a), (c, a, b), (c, b, a)]}
            assert len(vals) == 1


def test_shipped_table_passes_all_checks(table):
    report = verify_table(table)
    assert report.ok, [c.check_id for c in report.failures()]


def test_missing_coefficient_fault_breaks_associativity(table):
    # drop the coefficient of s7 in the degree-7 entry from 3 to 1
    entry = table.basis_product("s5p", "s2")
    assert entry.coeff("s7") == QPolynomial.constant(3)
    broken_entry = entry + SchubertElement({"s7": QPolynomial.constant(-2)})
    broken = table.with_entry("s5p", "s2", broken_entry)
    report = verify_table(broken)
    failed = {c.check_id for c in report.failures()}
    assert "associativity" in failed


def test_negative_coefficient_fault_is_named(table):
    entry = table.basis_product("s2", "s2")
    bad = entry + SchubertElement({"s4": QPolynomial.constant(-5)})
    broken = table.with_entry("s2", "s2", bad)
    report = verify_table(broken)
    failed = {c.check_id for c in report.failures()}
    assert "positivity" in failed


def test_bilinearity_with_polynomial_coefficients(table):
    x = SchubertElement({"s1": QPolynomial.constant(2),
                         "s2": QPolynomial.monomial(1, Fraction(1, 2))})
    y = _basis("s1")
    lhs = quantum_product(table, x, y)
    rhs = (quantum_product(table, _basis("s1"), y).scale(2)
           + quantum_product(table, _basis("s2"), y)
           .scale_poly(QPolynomial.monomial(1, Fraction(1, 2))))
    assert lhs == rhs


def test_element_string_order(table):
    got = quantum_product(table, _basis("s7"), _basis("s7"))
    assert str(got) == "q^2*s6 + q^2*s6p + q^3*s2 + q^3*s2p"


def test_malformed_table_rejected(tmp_path):
    from cgquantum.schubert import MultiplicationTable
    bad = tmp_path / "bad.json"
    bad.write_text('{"labels": [], "products": []}')
    with pytest.raises(TableFormatError):
        MultiplicationTable.load(str(bad))
