"""Exact-arithmetic engine for the small quantum cohomology ring of the
Cayley Grassmannian: Schubert-basis table, polynomial presentation,
intersection-theory scenarios, derivation pipeline, and spectral checks."""

from .exactmath import Rational, QPolynomial, MultiPolynomial, GradedRing
from .schubert import (LABELS, DEGREES, DUALS, SchubertElement,
                       MultiplicationTable, quantum_product,
                       classical_product, poincare_pairing, gw_invariant,
                       verify_table, load_default_table)

__all__ = [
    "Rational", "QPolynomial", "MultiPolynomial", "GradedRing",
    "LABELS", "DEGREES", "DUALS", "SchubertElement", "MultiplicationTable",
    "quantum_product", "classical_product", "poincare_pairing",
    "gw_invariant", "verify_table", "load_default_table",
]
