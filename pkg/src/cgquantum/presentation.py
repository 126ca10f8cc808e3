"""The ring Q[s1, s2, q]/(R5, R6) handled degree by degree.

Instead of Groebner bases, each graded slice is treated as a finite
dimensional vector space: enumerate the monomials of that weighted degree,
row-reduce the span of all relation multiples landing there, and keep the
non-pivot monomials as the normal-form basis.  With only two relations in
tiny degrees this is exact, fast, and order independent.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction

from .exactmath import (GradedRing, MultiPolynomial, QPolynomial, rat, rref,
                        solve_linear)
from .schubert import (DEGREES, LABELS, MultiplicationTable, SchubertElement,
                       quantum_product, default_data_dir)

BETTI = (1, 1, 2, 2, 3, 2, 2, 1, 1)
DEFAULT_MAX_DEGREE = 16


class DimensionMismatch(Exception):
    """A graded slice of the quotient has unexpected dimension."""


class DegreeOutOfRange(Exception):
    """normal_form was asked about a degree beyond the built bases."""


def generator_ring() -> GradedRing:
    return GradedRing(("s1", "s2", "q"), (1, 2, 4))


def expected_dimension(degree: int) -> int:
    """Dimension of the degree-d slice: the quotient is a free Q[q]-module
    on the 15 classes, so dim = sum of Betti numbers b_{d-4c}."""
    total = 0
    d = degree
    while d >= 0:
        if d < len(BETTI):
            total += BETTI[d]
        d -= 4
    return total


def standard_relations(ring: GradedRing) -> list[MultiPolynomial]:
    """The two quantum relations in degrees five and six."""
    s1, s2, q = ring.gen("s1"), ring.gen("s2"), ring.gen("q")
    r5 = s1**5 - 5 * s1**3 * s2 + 6 * s1 * s2**2 + 4 * q * s1
    r6 = (16 * s2**3 - 27 * s1**2 * s2**2 + 9 * s1**4 * s2
          + 32 * q * s2 - 28 * q * s1**2)
    return [r5, r6]


@dataclass
class DegreeSlice:
    monomials: list[tuple[int, ...]]          # graded-lex descending
    index: dict[tuple[int, ...], int]
    pivots: list[int]                         # pivot columns of relation span
    basis: list[tuple[int, ...]]              # non-pivot monomials
    reduced_rows: list[list[Fraction]]        # rref of the relation span


class GradedQuotient:
    """A graded polynomial ring modulo homogeneous relations, with
    per-degree normal forms."""

    def __init__(self, ring: GradedRing, relations: list[MultiPolynomial],
                 max_degree: int = DEFAULT_MAX_DEGREE,
                 expected_dims=None):
        for rel in relations:
            if not rel.is_homogeneous():
                raise ValueError("relations must be homogeneous")
        self.ring = ring
        self.relations = list(relations)
        self.max_degree = max_degree
        self.slices: dict[int, DegreeSlice] = {}
        for d in range(max_degree + 1):
            self.slices[d] = self._build_slice(d)
            if expected_dims is not None:
                want = expected_dims(d)
                got = len(self.slices[d].basis)
                if got != want:
                    raise DimensionMismatch(
                        f"degree {d}: quotient dimension {got}, expected {want}")

    def _build_slice(self, degree: int) -> DegreeSlice:
        monomials = self.ring.monomials(degree)
        index = {m: i for i, m in enumerate(monomials)}
        rows: list[list[Fraction]] = []
        for rel in self.relations:
            shift = degree - rel.degree()
            if shift < 0:
                continue
            for mono in self.ring.monomials(shift):
                prod = rel * self.ring.monomial(mono)
                row = [rat(0)] * len(monomials)
                for exps, c in prod.terms.items():
                    row[index[exps]] = c
                rows.append(row)
        if rows:
            reduced, _, pivots = rref(rows)
        else:
            reduced, pivots = [], []
        basis = [m for i, m in enumerate(monomials) if i not in set(pivots)]
        return DegreeSlice(monomials, index, pivots, basis, reduced)

    def dimension(self, degree: int) -> int:
        return len(self._slice(degree).basis)

    def _slice(self, degree: int) -> DegreeSlice:
        if degree not in self.slices:
            raise DegreeOutOfRange(f"degree {degree} beyond built maximum "
                                   f"{self.max_degree}")
        return self.slices[degree]

    def normal_form(self, p: MultiPolynomial) -> MultiPolynomial:
        """Reduce a homogeneous polynomial onto the non-pivot monomial basis
        of its degree.  normal_form(p) = 0 iff p lies in the ideal."""
        if p.is_zero():
            return p
        if not p.is_homogeneous():
            raise ValueError("normal_form expects a homogeneous polynomial")
        sl = self._slice(p.degree())
        vec = [rat(0)] * len(sl.monomials)
        for exps, c in p.terms.items():
            vec[sl.index[exps]] = c
        # eliminate pivot coordinates using the reduced relation rows
        for row_i, col in enumerate(sl.pivots):
            f = vec[col]
            if f:
                row = sl.reduced_rows[row_i]
                for j in range(col, len(vec)):
                    if row[j]:
                        vec[j] -= f * row[j]
        terms = {m: vec[sl.index[m]] for m in sl.basis}
        return MultiPolynomial(self.ring, terms)

    def basis(self, degree: int) -> list[tuple[int, ...]]:
        return list(self._slice(degree).basis)


def build_graded_basis(relations: list[MultiPolynomial] | None = None,
                       max_degree: int = DEFAULT_MAX_DEGREE,
                       check_dimensions: bool = True) -> GradedQuotient:
    """The quotient ring with per-degree normal-form bases built."""
    ring = generator_ring()
    if relations is None:
        relations = standard_relations(ring)
    return GradedQuotient(ring, relations, max_degree,
                          expected_dims=expected_dimension
                          if check_dimensions else None)


# ---------------------------------------------------------------------------
# Giambelli dictionary and evaluation into the Schubert basis


def load_giambelli(path: str | os.PathLike | None = None,
                   ring: GradedRing | None = None) -> dict[str, MultiPolynomial]:
    if path is None:
        path = os.path.join(default_data_dir(), "cg_giambelli.json")
    if ring is None:
        ring = generator_ring()
    with open(path) as fh:
        raw = json.load(fh)
    out: dict[str, MultiPolynomial] = {}
    for label, terms in raw.items():
        if label not in DEGREES:
            raise ValueError(f"unknown label {label!r} in dictionary")
        poly = ring.zero()
        for term in terms:
            poly = poly + ring.monomial(term["exponents"], rat(term["coeff"]))
        if not poly.is_homogeneous() or poly.degree() != DEGREES[label]:
            raise ValueError(f"dictionary entry for {label} is not "
                             f"homogeneous of degree {DEGREES[label]}")
        out[label] = poly
    if set(out) != set(LABELS):
        raise ValueError("dictionary must cover all 15 labels")
    return out


def evaluate_in_schubert(table: MultiplicationTable,
                         p: MultiPolynomial) -> SchubertElement:
    """Evaluation homomorphism sending s1, s2 to the corresponding classes
    and q to the quantum parameter, multiplying out with the table."""
    if tuple(p.ring.names) != ("s1", "s2", "q"):
        raise ValueError("polynomial must live in the s1, s2, q ring")
    out = SchubertElement.zero()
    s1 = SchubertElement.basis("s1")
    s2 = SchubertElement.basis("s2")
    for (e1, e2, eq), c in p.terms.items():
        term = SchubertElement({"s0": QPolynomial.monomial(eq, c)})
        for _ in range(e1):
            term = quantum_product(table, term, s1)
        for _ in range(e2):
            term = quantum_product(table, term, s2)
        out = out + term
    return out


def schubert_to_normal_form(quotient: GradedQuotient,
                            giambelli: dict[str, MultiPolynomial],
                            degree: int):
    """Change of basis in a fixed degree between Schubert-type generators
    {q^c * G(label) : deg(label) + 4c = degree} and the normal-form
    monomial basis.  Returns (columns, matrix) where matrix[i][j] is the
    coefficient of basis monomial i in the normal form of column j."""
    ring = quotient.ring
    cols: list[tuple[str, int]] = []
    for label in LABELS:
        rem = degree - DEGREES[label]
        if rem >= 0 and rem % 4 == 0:
            cols.append((label, rem // 4))
    basis = quotient.basis(degree)
    index = {m: i for i, m in enumerate(basis)}
    matrix = [[rat(0)] * len(cols) for _ in basis]
    for j, (label, qexp) in enumerate(cols):
        poly = giambelli[label] * ring.gen("q") ** qexp
        nf = quotient.normal_form(poly)
        for exps, c in nf.terms.items():
            matrix[index[exps]][j] = c
    return cols, matrix


def expand_in_schubert(quotient: GradedQuotient,
                       giambelli: dict[str, MultiPolynomial],
                       p: MultiPolynomial) -> SchubertElement:
    """Rewrite a homogeneous polynomial, via its normal form, as an exact
    combination of q-power multiples of Schubert classes."""
    if p.is_zero():
        return SchubertElement.zero()
    degree = p.degree()
    cols, matrix = schubert_to_normal_form(quotient, giambelli, degree)
    basis = quotient.basis(degree)
    index = {m: i for i, m in enumerate(basis)}
    nf = quotient.normal_form(p)
    target = [rat(0)] * len(basis)
    for exps, c in nf.terms.items():
        target[index[exps]] = c
    sol = solve_linear(matrix, target)
    coeffs: dict[str, QPolynomial] = {}
    for (label, qexp), c in zip(cols, sol):
        if c:
            coeffs[label] = coeffs.get(label, QPolynomial({})) \
                + QPolynomial.monomial(qexp, c)
    return SchubertElement(coeffs)


def cross_check_presentation(table: MultiplicationTable,
                             quotient: GradedQuotient | None = None,
                             giambelli: dict[str, MultiPolynomial] | None = None):
    """Three-way consistency of table, relations, and dictionary.

    (i) the table kills both relations; (ii) each Giambelli polynomial
    evaluates to its own class; (iii) every unordered product recomputed
    through the quotient matches the table entry.
    Returns a VerificationReport.
    """
    from .schubert import VerificationReport

    if quotient is None:
        quotient = build_graded_basis()
    if giambelli is None:
        giambelli = load_giambelli(ring=quotient.ring)
    report = VerificationReport()

    bad_rel = [str(rel) for rel in quotient.relations
               if not evaluate_in_schubert(table, rel).is_zero()]
    report.add("relations_killed", not bad_rel,
               "" if not bad_rel else f"table does not satisfy: {bad_rel}")

    bad_g = []
    for label in LABELS:
        got = evaluate_in_schubert(table, giambelli[label])
        if got != SchubertElement.basis(label):
            bad_g.append((label, str(got)))
    report.add("giambelli_evaluation", not bad_g,
               "" if not bad_g else f"mismatches: {bad_g[:3]}")

    bad_prod = []
    for i, a in enumerate(LABELS):
        for b in LABELS[i:]:
            product = giambelli[a] * giambelli[b]
            try:
                via_quotient = expand_in_schubert(quotient, giambelli, product)
            except Exception as exc:
                bad_prod.append((a, b, f"expansion failed: {exc}"))
                continue
            if via_quotient != table.basis_product(a, b):
                bad_prod.append((a, b, str(via_quotient)))
    report.add("products_match", not bad_prod,
               "" if not bad_prod else f"{len(bad_prod)} mismatches, "
               f"first: {bad_prod[:3]}")
    return report
