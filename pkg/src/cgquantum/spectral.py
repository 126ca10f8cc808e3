"""Spectral checks on quantum multiplication: characteristic polynomial,
semisimplicity via the trace form, dominant-eigenvalue structure, and the
spectral-radius lower bound.

The certified parts (root isolation, strict inequalities) are done with
exact rational arithmetic; floating point only polishes the final decimal
approximations, and every printed approximation carries an error radius.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactmath import (Matrix, QPolynomial, charpoly, determinant,
                        mat_mul, mat_rank, mat_trace, rat)
from .schubert import (LABELS, MultiplicationTable, SchubertElement,
                       quantum_product)


def multiplication_matrix(table: MultiplicationTable, x: SchubertElement,
                          q_value) -> Matrix:
    """15x15 matrix of quantum multiplication by x with q specialized,
    columns indexed by the basis in label order."""
    qv = rat(q_value)
    cols = []
    for label in LABELS:
        prod = quantum_product(table, x, SchubertElement.basis(label))
        cols.append([prod.coeff(l)(qv) for l in LABELS])
    # transpose: entry (i, j) = coefficient of basis i in x * basis j
    return [[cols[j][i] for j in range(len(LABELS))]
            for i in range(len(LABELS))]


def check_semisimple(table: MultiplicationTable, q_value) -> tuple[bool, Fraction]:
    """Trace-form criterion: the algebra at the given q is semisimple iff
    the Gram matrix B(e_i, e_j) = trace(mult by e_i e_j) has full rank.
    Returns (semisimple, exact Gram determinant)."""
    qv = rat(q_value)
    n = len(LABELS)
    mult = {label: multiplication_matrix(
        table, SchubertElement.basis(label), qv) for label in LABELS}
    gram = [[rat(0)] * n for _ in range(n)]
    for i, a in enumerate(LABELS):
        for j, b in enumerate(LABELS):
            if j < i:
                gram[i][j] = gram[j][i]
                continue
            prod = quantum_product(table, SchubertElement.basis(a),
                                   SchubertElement.basis(b))
            tr = rat(0)
            for label, poly in prod.coeffs.items():
                tr += poly(qv) * mat_trace(mult[label])
            gram[i][j] = tr
    det = determinant(gram)
    return det != 0, det


def sigma1_charpoly(table: MultiplicationTable, q_value) -> QPolynomial:
    m = multiplication_matrix(table, SchubertElement.basis("s1"), q_value)
    return charpoly(m, var="t")


# ---------------------------------------------------------------------------
# certified real root isolation for the cubic factor


def sturm_sequence(p: QPolynomial) -> list[QPolynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        rem = seq[-2].divmod(seq[-1])[1]
        if rem.is_zero():
            break
        seq.append(-rem)
    return seq


def sign_changes(seq: list[QPolynomial], x: Fraction) -> int:
    signs = []
    for p in seq:
        v = p(x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: QPolynomial, lo: Fraction, hi: Fraction) -> int:
    seq = sturm_sequence(p)
    return sign_changes(seq, lo) - sign_changes(seq, hi)


def isolate_root(p: QPolynomial, lo: Fraction, hi: Fraction,
                 width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink a bracket known to contain exactly one real root down to the
    requested width by exact bisection on Sturm counts."""
    lo, hi = rat(lo), rat(hi)
    if count_real_roots(p, lo, hi) != 1:
        raise ValueError("bracket does not isolate a single root")
    while hi - lo > width:
        mid = (lo + hi) / 2
        if count_real_roots(p, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def newton_polish(p: QPolynomial, x0, iterations: int = 60) -> float:
    """Newton iteration in exact rationals from a certified starting
    point; denominators are trimmed each step to keep sizes bounded far
    below the trim precision's effect on the result."""
    dp = p.derivative()
    x = rat(x0)
    for _ in range(iterations):
        fx, dfx = p(x), dp(x)
        if dfx == 0:
            break
        step = fx / dfx
        x = (x - step).limit_denominator(10**30)
        if abs(step) < Fraction(1, 10**20) * max(1, abs(x)):
            break
    return float(x)


@dataclass
class SpectralReport:
    char_poly: QPolynomial
    shape_ok: bool = False
    y_max: float = 0.0
    y_max_bracket: tuple[Fraction, Fraction] = (rat(0), rat(0))
    other_modulus: float = 0.0
    dominant_real_simple: bool = False
    modulus_set_is_fourth_roots: bool = False
    trace_form_nondegenerate: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.shape_ok and self.dominant_real_simple
                and self.modulus_set_is_fourth_roots
                and self.trace_form_nondegenerate)

    def to_dict(self) -> dict:
        lo, hi = self.y_max_bracket
        return {
            "char_poly": {str(e): str(c)
                          for e, c in sorted(self.char_poly.coeffs.items())},
            "shape_t3_f_t4": self.shape_ok,
            "y_max": {"value": repr(self.y_max),
                      "bracket": [str(lo), str(hi)],
                      "radius": str(hi - lo)},
            "other_root_modulus": {"value": repr(self.other_modulus),
                                   "note": "exact square is |constant term| / y_max"},
            "dominant_real_simple": self.dominant_real_simple,
            "modulus_set_is_fourth_roots": self.modulus_set_is_fourth_roots,
            "trace_form_nondegenerate": self.trace_form_nondegenerate,
            "notes": self.notes,
        }


def conjecture_o_check(table: MultiplicationTable) -> SpectralReport:
    """Eigenvalue structure of hyperplane multiplication at q = 1.

    The characteristic polynomial must factor as t^3 * f(t^4) for a cubic
    f; the dominant root of f is isolated exactly, and dominance over the
    complex pair is certified with rational arithmetic (the pair has
    modulus squared equal to (constant term magnitude)/y_max).
    """
    cp = sigma1_charpoly(table, 1)
    report = SpectralReport(char_poly=cp)

    n = cp.degree()
    report.shape_ok = (n == 15 and
                       all(e % 4 == 3 or e == 15 for e in cp.coeffs) and
                       all(e >= 3 for e in cp.coeffs))
    if not report.shape_ok:
        report.notes.append("characteristic polynomial does not have the "
                            "t^3 * f(t^4) shape")
        return report
    # f(y) = y^3 + c11 y^2 + c7 y + c3 so that t^3 f(t^4) = charpoly
    f = QPolynomial({3: rat(1), 2: cp.coeff(11), 1: cp.coeff(7),
                     0: cp.coeff(3)}, var="y")

    # count and isolate real roots of f over a bracket certain to contain
    # them all (Cauchy bound)
    bound = 1 + max(abs(f.coeff(i)) for i in range(3))
    n_real = count_real_roots(f, -bound, bound)
    if n_real != 1:
        report.notes.append(f"cubic has {n_real} real roots, expected 1 "
                            "(one real plus a complex pair)")
        report.dominant_real_simple = False
        return report
    lo, hi = isolate_root(f, rat(0), bound, Fraction(1, 10**14))
    report.y_max_bracket = (lo, hi)
    report.y_max = newton_polish(f, float((lo + hi) / 2))

    # the complex pair z, z~ satisfies y_max * |z|^2 = -f(0), so strict
    # dominance is |z|^2 < y_max^2, i.e. -f(0) < y_max^3, certified on
    # the exact lower bracket end
    c0 = -f.coeff(0)
    dominant = c0 > 0 and lo > 0 and lo ** 3 > c0
    report.dominant_real_simple = dominant and n_real == 1
    report.other_modulus = float(c0 / ((lo + hi) / 2)) ** 0.5
    # the fifteen eigenvalues are 0 (multiplicity 3) and the fourth roots
    # of the three roots of f; the modulus-maximal set is exactly the four
    # fourth roots of y_max, i.e. T times the fourth roots of unity
    report.modulus_set_is_fourth_roots = report.shape_ok and dominant

    ss, _ = check_semisimple(table, 1)
    report.trace_form_nondegenerate = ss
    return report


GALKIN_THRESHOLD = Fraction(6561, 256)  # (9/4)^4: equality means T exactly 9


def galkin_bound_check(table: MultiplicationTable) -> tuple[float, bool, SpectralReport]:
    """Spectral radius of anticanonical multiplication, 4 * y_max^(1/4),
    and the strict bound against dimension + 1 = 9.

    The strictness is certified in rationals: T > 9 iff y_max > (9/4)^4,
    tested on the exact lower end of the isolation bracket.
    """
    report = conjecture_o_check(table)
    lo, hi = report.y_max_bracket
    bound_ok = lo > GALKIN_THRESHOLD
    t_cg = 4 * (report.y_max ** 0.25)
    return t_cg, bound_ok, report


def nilpotency_index(table: MultiplicationTable, q_value=0) -> int:
    """Smallest k with the k-th power of hyperplane multiplication zero;
    returns 0 if no power up to the algebra dimension vanishes."""
    m = multiplication_matrix(table, SchubertElement.basis("s1"), q_value)
    n = len(m)
    power = m
    for k in range(1, n + 1):
        if all(x == 0 for row in power for x in row):
            return k
        power = mat_mul(power, m)
    return 0


def covariance_check(table: MultiplicationTable, q_value=16) -> bool:
    """Grading covariance of the characteristic polynomial: the t^k
    coefficient scales as q^((15 - k)/4) relative to q = 1."""
    base = sigma1_charpoly(table, 1)
    scaled = sigma1_charpoly(table, q_value)
    qv = rat(q_value)
    for e in set(base.coeffs) | set(scaled.coeffs):
        expo = Fraction(15 - e, 4)
        if expo.denominator != 1:
            return False
        if scaled.coeff(e) != base.coeff(e) * qv ** int(expo):
            return False
    return True
