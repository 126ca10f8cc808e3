"""Quantum cohomology of the Cayley Grassmannian in its Schubert basis.

The ring is an 8-graded, 15-dimensional free module over Q[q] with deg q = 4.
The ground truth is a multiplication table shipped as JSON; this module
provides the bilinear product, the Poincare pairing, Gromov-Witten invariant
extraction, and an exhaustive self-consistency suite over the table.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .exactmath import QPolynomial, Rational, rat

LABELS = ("s0", "s1", "s2", "s2p", "s3", "s3p", "s4", "s4p", "s4pp",
          "s5", "s5p", "s6", "s6p", "s7", "s8")

DEGREES = {"s0": 0, "s1": 1, "s2": 2, "s2p": 2, "s3": 3, "s3p": 3,
           "s4": 4, "s4p": 4, "s4pp": 4, "s5": 5, "s5p": 5,
           "s6": 6, "s6p": 6, "s7": 7, "s8": 8}

# Poincare duality involution: pairing <a, dual(a)> = 1, all other basis
# pairs in complementary degree pair to 0.
DUALS = {"s0": "s8", "s1": "s7", "s2": "s6", "s2p": "s6p", "s3": "s5",
         "s3p": "s5p", "s4": "s4", "s4p": "s4p", "s4pp": "s4pp",
         "s5": "s3", "s5p": "s3p", "s6": "s2", "s6p": "s2p",
         "s7": "s1", "s8": "s0"}

DIMENSION = 8   # complex dimension of the variety
Q_DEGREE = 4    # Fano index, the degree of the quantum parameter

LABEL_INDEX = {name: i for i, name in enumerate(LABELS)}


class TableFormatError(ValueError):
    """The table file does not match the documented schema."""


class SchubertElement:
    """A vector over the 15 Schubert classes with Q[q] coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[str, QPolynomial] | None = None):
        self.coeffs: dict[str, QPolynomial] = {}
        if coeffs:
            for label, poly in coeffs.items():
                if label not in DEGREES:
                    raise KeyError(f"unknown label {label!r}")
                if not poly.is_zero():
                    self.coeffs[label] = poly

    @classmethod
    def basis(cls, label: str) -> "SchubertElement":
        return cls({label: QPolynomial.constant(1)})

    @classmethod
    def zero(cls) -> "SchubertElement":
        return cls()

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, label: str) -> QPolynomial:
        return self.coeffs.get(label, QPolynomial({}))

    def __add__(self, other: "SchubertElement") -> "SchubertElement":
        out = dict(self.coeffs)
        for label, poly in other.coeffs.items():
            out[label] = out.get(label, QPolynomial({})) + poly
        return SchubertElement(out)

    def __sub__(self, other: "SchubertElement") -> "SchubertElement":
        out = dict(self.coeffs)
        for label, poly in other.coeffs.items():
            out[label] = out.get(label, QPolynomial({})) - poly
        return SchubertElement(out)

    def __neg__(self) -> "SchubertElement":
        return SchubertElement({l: -p for l, p in self.coeffs.items()})

    def scale(self, c) -> "SchubertElement":
        return SchubertElement({l: p.scale(c) for l, p in self.coeffs.items()})

    def scale_poly(self, poly: QPolynomial) -> "SchubertElement":
        return SchubertElement({l: p * poly for l, p in self.coeffs.items()})

    def drop_quantum(self) -> "SchubertElement":
        """Keep only the q^0 part (the classical cup product contribution)."""
        return SchubertElement({
            l: QPolynomial({0: p.coeff(0)}) for l, p in self.coeffs.items()})

    def is_homogeneous(self) -> bool:
        degs = {DEGREES[l] + Q_DEGREE * e
                for l, p in self.coeffs.items() for e in p.coeffs}
        return len(degs) <= 1

    def degree(self) -> int:
        degs = {DEGREES[l] + Q_DEGREE * e
                for l, p in self.coeffs.items() for e in p.coeffs}
        if not degs:
            return -1
        if len(degs) != 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    def __eq__(self, other) -> bool:
        return isinstance(other, SchubertElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def sorted_terms(self) -> list[tuple[int, str, Fraction]]:
        """(q-exponent, label, coefficient) with q ascending, then label order."""
        out = []
        for label, poly in self.coeffs.items():
            for e, c in poly.coeffs.items():
                out.append((e, label, c))
        out.sort(key=lambda t: (t[0], LABEL_INDEX[t[1]]))
        return out

    def __str__(self) -> str:
        terms = self.sorted_terms()
        if not terms:
            return "0"
        parts = []
        for e, label, c in terms:
            qpart = "" if e == 0 else ("q*" if e == 1 else f"q^{e}*")
            if c == 1 and (qpart or label):
                parts.append(f"{qpart}{label}")
            else:
                parts.append(f"{c}*{qpart}{label}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"SchubertElement({self})"


def _pair_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if LABEL_INDEX[a] <= LABEL_INDEX[b] else (b, a)


class MultiplicationTable:
    """The 15x15 symmetric table of quantum products, loaded from JSON."""

    def __init__(self, entries: dict[tuple[str, str], SchubertElement]):
        self.entries = entries

    @classmethod
    def load(cls, path: str | os.PathLike) -> "MultiplicationTable":
        try:
            with open(path) as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise TableFormatError(f"cannot read table file {path}: {exc}") from exc
        return cls.from_dict(raw)

    @classmethod
    def from_dict(cls, raw: dict) -> "MultiplicationTable":
        if not isinstance(raw, dict) or "labels" not in raw or "products" not in raw:
            raise TableFormatError("table must have 'labels' and 'products'")
        names = tuple(rec.get("name") for rec in raw["labels"])
        if names != LABELS:
            raise TableFormatError("label list does not match the 15 expected labels")
        for rec in raw["labels"]:
            if DEGREES[rec["name"]] != rec.get("degree"):
                raise TableFormatError(f"degree mismatch for {rec['name']}")
        entries: dict[tuple[str, str], SchubertElement] = {}
        for rec in raw["products"]:
            a, b = rec.get("a"), rec.get("b")
            if a not in DEGREES or b not in DEGREES:
                raise TableFormatError(f"unknown labels in product record {a},{b}")
            key = _pair_key(a, b)
            if key in entries:
                raise TableFormatError(f"duplicate product record {key}")
            coeffs: dict[str, QPolynomial] = {}
            for term in rec.get("terms", []):
                label, qexp, coeff = term["label"], term["q"], term["coeff"]
                if label not in DEGREES:
                    raise TableFormatError(f"unknown label {label} in {key}")
                poly = coeffs.get(label, QPolynomial({}))
                coeffs[label] = poly + QPolynomial.monomial(int(qexp), coeff)
            entries[key] = SchubertElement(coeffs)
        expected = (len(LABELS) * (len(LABELS) + 1)) // 2
        if len(entries) != expected:
            raise TableFormatError(
                f"expected {expected} product records, found {len(entries)}")
        return cls(entries)

    def basis_product(self, a: str, b: str) -> SchubertElement:
        return self.entries[_pair_key(a, b)]

    def with_entry(self, a: str, b: str,
                   value: SchubertElement) -> "MultiplicationTable":
        """Copy of the table with one entry replaced (for fault injection)."""
        entries = dict(self.entries)
        entries[_pair_key(a, b)] = value
        return MultiplicationTable(entries)


def quantum_product(table: MultiplicationTable, x: SchubertElement,
                    y: SchubertElement) -> SchubertElement:
    """Bilinear extension of the table; q-coefficients multiply through."""
    out = SchubertElement.zero()
    for la, pa in x.coeffs.items():
        for lb, pb in y.coeffs.items():
            out = out + table.basis_product(la, lb).scale_poly(pa * pb)
    return out


def classical_product(table: MultiplicationTable, x: SchubertElement,
                      y: SchubertElement) -> SchubertElement:
    """Cup product: the quantum product with all positive q-powers dropped."""
    return quantum_product(table, x, y).drop_quantum()


def poincare_pairing(table: MultiplicationTable, x: SchubertElement,
                     y: SchubertElement) -> Rational:
    """Coefficient of s8 in the classical product."""
    return classical_product(table, x, y).coeff("s8").coeff(0)


def gw_invariant(table: MultiplicationTable, d: int, a: str, b: str,
                 c: str) -> Rational:
    """Three-point degree-d invariant I_d(a, b, c).

    Returns 0 whenever the degrees do not sum to 8 + 4d, so exhaustive
    symmetry scans need no special-casing.
    """
    if d < 0:
        return rat(0)
    if DEGREES[a] + DEGREES[b] + DEGREES[c] != DIMENSION + Q_DEGREE * d:
        return rat(0)
    prod = table.basis_product(a, b)
    return prod.coeff(DUALS[c]).coeff(d)


# rows of the hyperplane-class product in degrees four through seven;
# below degree four the product has no quantum correction.
CHEVALLEY_ROWS = {
    "s3": {("s4", 0): 2, ("s4p", 0): 2, ("s0", 1): 2},
    "s3p": {("s4p", 0): 1, ("s4pp", 0): 1},
    "s4": {("s5", 0): 2, ("s1", 1): 1},
    "s4p": {("s5", 0): 2, ("s5p", 0): 1, ("s1", 1): 1},
    "s4pp": {("s5p", 0): 1},
    "s5": {("s6", 0): 1, ("s6p", 0): 2, ("s2p", 1): 1},
    "s5p": {("s6", 0): 3, ("s6p", 0): 2, ("s2", 1): 1},
    "s6": {("s7", 0): 1, ("s3p", 1): 1},
    "s6p": {("s7", 0): 1, ("s3", 1): 1},
}


@dataclass
class CheckResult:
    check_id: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, check_id: str, passed: bool, detail: str = ""):
        self.checks.append(CheckResult(check_id, passed, detail))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"ok": self.ok,
                "checks": [{"id": c.check_id,
                            "status": "pass" if c.passed else "fail",
                            "detail": c.detail} for c in self.checks]}


def verify_table(table: MultiplicationTable) -> VerificationReport:
    """Exhaustive internal consistency suite over the table.

    Checks: identity row, grading, coefficient non-negativity and
    integrality, pairing permutation matrices, total symmetry of the
    invariants, associativity over all ordered basis triples, and the
    hyperplane rows in degrees up to seven.
    """
    report = VerificationReport()

    bad = [l for l in LABELS
           if table.basis_product("s0", l) != SchubertElement.basis(l)]
    report.add("identity", not bad,
               "" if not bad else f"s0 row wrong at {bad}")

    bad_grading = []
    bad_positive = []
    for (a, b), elem in table.entries.items():
        target = DEGREES[a] + DEGREES[b]
        for label, poly in elem.coeffs.items():
            for e, c in poly.coeffs.items():
                if DEGREES[label] + Q_DEGREE * e != target:
                    bad_grading.append((a, b, label, e))
                if c < 0 or c.denominator != 1:
                    bad_positive.append((a, b, label, e, str(c)))
    report.add("grading", not bad_grading,
               "" if not bad_grading else f"non-homogeneous entries: {bad_grading[:3]}")
    report.add("positivity", not bad_positive,
               "" if not bad_positive
               else f"negative or non-integer coefficients: {bad_positive[:3]}")

    # pairing matrix per complementary degree must be the involution's
    # permutation matrix
    bad_pairs = []
    for a in LABELS:
        for b in LABELS:
            if DEGREES[a] + DEGREES[b] != DIMENSION:
                continue
            val = poincare_pairing(table, SchubertElement.basis(a),
                                   SchubertElement.basis(b))
            want = 1 if DUALS[a] == b else 0
            if val != want:
                bad_pairs.append((a, b, str(val)))
    report.add("pairing", not bad_pairs,
               "" if not bad_pairs else f"pairing mismatches: {bad_pairs[:3]}")

    bad_sym = []
    for a in LABELS:
        for b in LABELS:
            for c in LABELS:
                total = DEGREES[a] + DEGREES[b] + DEGREES[c] - DIMENSION
                if total % Q_DEGREE:
                    continue
                d = total // Q_DEGREE
                if d < 0:
                    continue
                ref = gw_invariant(table, d, a, b, c)
                for perm in ((a, c, b), (b, a, c), (b, c, a),
                             (c, a, b), (c, b, a)):
                    if gw_invariant(table, d, *perm) != ref:
                        bad_sym.append((d, a, b, c, perm))
                        break
    report.add("gw_symmetry", not bad_sym,
               "" if not bad_sym else f"asymmetric invariants: {bad_sym[:3]}")

    bad_assoc = []
    basis = {l: SchubertElement.basis(l) for l in LABELS}
    # precompute basis-times-basis to reuse in both association orders
    for a in LABELS:
        for b in LABELS:
            ab = table.basis_product(a, b)
            for c in LABELS:
                left = quantum_product(table, ab, basis[c])
                right = quantum_product(table, basis[a],
                                        table.basis_product(b, c))
                if left != right:
                    bad_assoc.append((a, b, c))
    report.add("associativity", not bad_assoc,
               "" if not bad_assoc
               else f"{len(bad_assoc)} failing triples, first: {bad_assoc[:3]}")

    bad_chev = []
    for label in ("s0", "s1", "s2", "s2p"):
        row = table.basis_product(label, "s1")
        if any(e > 0 for p in row.coeffs.values() for e in p.coeffs):
            bad_chev.append((label, "unexpected quantum term"))
    for label, want in CHEVALLEY_ROWS.items():
        row = table.basis_product(label, "s1")
        got = {(l, e): c for l, p in row.coeffs.items()
               for e, c in p.coeffs.items()}
        if got != {k: rat(v) for k, v in want.items()}:
            bad_chev.append((label, str(row)))
    report.add("chevalley_rows", not bad_chev,
               "" if not bad_chev else f"hyperplane row mismatches: {bad_chev[:3]}")

    return report


def default_data_dir() -> str:
    env = os.environ.get("CG_DATA_DIR")
    if env:
        return env
    return os.path.join(os.path.dirname(__file__), "data")


def load_default_table() -> MultiplicationTable:
    return MultiplicationTable.load(
        os.path.join(default_data_dir(), "cg_table.json"))
