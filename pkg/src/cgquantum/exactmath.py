"""Exact rational arithmetic: univariate and multivariate polynomials over
the rationals, and dense exact linear algebra.

Everything here is pure and immutable-by-convention; no floating point is
used anywhere.  Rational numbers are ``fractions.Fraction`` (arbitrary
precision, always in lowest terms, positive denominator).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(x) -> Fraction:
    """Coerce ints, strings like '3/4', and Fractions to Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


class NonSquareMatrixError(ValueError):
    pass


class InconsistentSystem(Exception):
    """The linear system has no solution."""


class UnderdeterminedSystem(Exception):
    """The linear system has more than one solution."""


# ---------------------------------------------------------------------------
# univariate polynomials


class QPolynomial:
    """Univariate polynomial with Fraction coefficients, keyed by exponent.

    The variable name is cosmetic ('q' for quantum parameters, 't' for
    characteristic polynomials).  Zero coefficients are never stored.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Mapping[int, Fraction] | None = None, var: str = "q"):
        self.var = var
        self.coeffs: dict[int, Fraction] = {}
        if coeffs:
            for e, c in coeffs.items():
                c = rat(c)
                if c:
                    if e < 0:
                        raise ValueError("negative exponent")
                    self.coeffs[int(e)] = c

    @classmethod
    def constant(cls, c, var: str = "q") -> "QPolynomial":
        return cls({0: rat(c)}, var)

    @classmethod
    def monomial(cls, exp: int, c=1, var: str = "q") -> "QPolynomial":
        return cls({exp: rat(c)}, var)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max(self.coeffs) if self.coeffs else -1

    def coeff(self, exp: int) -> Fraction:
        return self.coeffs.get(exp, ZERO)

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, ZERO) + c
        return QPolynomial(out, self.var)

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, ZERO) - c
        return QPolynomial(out, self.var)

    def __neg__(self) -> "QPolynomial":
        return QPolynomial({e: -c for e, c in self.coeffs.items()}, self.var)

    def __mul__(self, other) -> "QPolynomial":
        if isinstance(other, QPolynomial):
            out: dict[int, Fraction] = {}
            for e1, c1 in self.coeffs.items():
                for e2, c2 in other.coeffs.items():
                    e = e1 + e2
                    out[e] = out.get(e, ZERO) + c1 * c2
            return QPolynomial(out, self.var)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "QPolynomial":
        c = rat(c)
        return QPolynomial({e: c * v for e, v in self.coeffs.items()}, self.var)

    def __call__(self, value) -> Fraction:
        value = rat(value)
        total = ZERO
        for e, c in self.coeffs.items():
            total += c * value**e
        return total

    def derivative(self) -> "QPolynomial":
        return QPolynomial({e - 1: e * c for e, c in self.coeffs.items() if e > 0},
                           self.var)

    def monic(self) -> "QPolynomial":
        if self.is_zero():
            return self
        lead = self.coeffs[self.degree()]
        return self.scale(1 / lead)

    def divmod(self, other: "QPolynomial") -> tuple["QPolynomial", "QPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = dict(self.coeffs)
        quo: dict[int, Fraction] = {}
        dg, lead = other.degree(), other.coeffs[other.degree()]
        while rem and max(rem) >= dg:
            e = max(rem)
            f = rem[e] / lead
            quo[e - dg] = f
            for eo, co in other.coeffs.items():
                k = e - dg + eo
                v = rem.get(k, ZERO) - f * co
                if v:
                    rem[k] = v
                elif k in rem:
                    del rem[k]
        return QPolynomial(quo, self.var), QPolynomial(rem, self.var)

    def gcd(self, other: "QPolynomial") -> "QPolynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def __eq__(self, other) -> bool:
        return isinstance(other, QPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self) -> str:
        return f"QPolynomial({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                parts.append(str(c))
            else:
                v = self.var if e == 1 else f"{self.var}^{e}"
                parts.append(v if c == 1 else f"{c}*{v}")
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# multivariate polynomials over a graded generator list


class GradedRing:
    """Named generators with positive integer degrees, e.g. s1:1, s2:2, q:4.

    Monomials are exponent tuples over the generator list; the canonical
    term order is graded lexicographic in the given generator order.
    """

    def __init__(self, names: Sequence[str], degrees: Sequence[int]):
        if len(names) != len(degrees) or not names:
            raise ValueError("names and degrees must match and be non-empty")
        self.names = tuple(names)
        self.degrees = tuple(int(d) for d in degrees)
        if any(d <= 0 for d in self.degrees):
            raise ValueError("generator degrees must be positive")
        self._index = {n: i for i, n in enumerate(self.names)}

    def monomial_degree(self, exps: Sequence[int]) -> int:
        return sum(e * d for e, d in zip(exps, self.degrees))

    def monomials(self, degree: int) -> list[tuple[int, ...]]:
        """All exponent tuples of the given weighted degree, graded-lex
        descending (first generator heaviest)."""
        out: list[tuple[int, ...]] = []

        def rec(i: int, remaining: int, prefix: tuple[int, ...]):
            if i == len(self.names) - 1:
                d = self.degrees[i]
                if remaining % d == 0:
                    out.append(prefix + (remaining // d,))
                return
            d = self.degrees[i]
            for e in range(remaining // d, -1, -1):
                rec(i + 1, remaining - e * d, prefix + (e,))

        if degree >= 0:
            rec(0, degree, ())
        return out

    def zero(self) -> "MultiPolynomial":
        return MultiPolynomial(self, {})

    def one(self) -> "MultiPolynomial":
        return self.constant(1)

    def constant(self, c) -> "MultiPolynomial":
        z = (0,) * len(self.names)
        return MultiPolynomial(self, {z: rat(c)})

    def gen(self, name: str) -> "MultiPolynomial":
        exps = [0] * len(self.names)
        exps[self._index[name]] = 1
        return MultiPolynomial(self, {tuple(exps): ONE})

    def monomial(self, exps: Sequence[int], c=1) -> "MultiPolynomial":
        return MultiPolynomial(self, {tuple(exps): rat(c)})

    def __eq__(self, other):
        return (isinstance(other, GradedRing) and self.names == other.names
                and self.degrees == other.degrees)

    def __hash__(self):
        return hash((self.names, self.degrees))

    def __repr__(self):
        gens = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"GradedRing({gens})"


class MultiPolynomial:
    """Multivariate polynomial over a GradedRing, terms keyed by exponent
    tuple.  Zero coefficients are never stored."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GradedRing, terms: Mapping[tuple[int, ...], Fraction]):
        self.ring = ring
        self.terms: dict[tuple[int, ...], Fraction] = {}
        for exps, c in terms.items():
            c = rat(c)
            if c:
                self.terms[tuple(exps)] = c

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        degs = {self.ring.monomial_degree(e) for e in self.terms}
        return len(degs) <= 1

    def degree(self) -> int:
        """Weighted degree of a homogeneous polynomial; -1 for zero."""
        if not self.terms:
            return -1
        degs = {self.ring.monomial_degree(e) for e in self.terms}
        if len(degs) != 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop()

    def homogeneous_components(self) -> dict[int, "MultiPolynomial"]:
        buckets: dict[int, dict] = {}
        for exps, c in self.terms.items():
            buckets.setdefault(self.ring.monomial_degree(exps), {})[exps] = c
        return {d: MultiPolynomial(self.ring, t) for d, t in buckets.items()}

    def component(self, degree: int) -> "MultiPolynomial":
        return MultiPolynomial(self.ring, {
            e: c for e, c in self.terms.items()
            if self.ring.monomial_degree(e) == degree})

    def truncate(self, max_degree: int) -> "MultiPolynomial":
        return MultiPolynomial(self.ring, {
            e: c for e, c in self.terms.items()
            if self.ring.monomial_degree(e) <= max_degree})

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), ZERO)

    def __add__(self, other: "MultiPolynomial") -> "MultiPolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ZERO) + c
        return MultiPolynomial(self.ring, out)

    def __sub__(self, other: "MultiPolynomial") -> "MultiPolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ZERO) - c
        return MultiPolynomial(self.ring, out)

    def __neg__(self) -> "MultiPolynomial":
        return MultiPolynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> "MultiPolynomial":
        if isinstance(other, MultiPolynomial):
            out: dict[tuple[int, ...], Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, ZERO) + c1 * c2
            return MultiPolynomial(self.ring, out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPolynomial":
        c = rat(c)
        return MultiPolynomial(self.ring, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Graded-lex descending: higher total degree first, then earlier
        generators heavier."""
        return sorted(self.terms.items(),
                      key=lambda kv: (self.ring.monomial_degree(kv[0]), kv[0]),
                      reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.ring.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MultiPolynomial({self})"


def series_inverse(p: MultiPolynomial, max_degree: int) -> MultiPolynomial:
    """Inverse of a polynomial with unit constant term, as a power series
    truncated at the given weighted degree."""
    ring = p.ring
    zero_exp = (0,) * len(ring.names)
    c0 = p.coeff(zero_exp)
    if c0 == 0:
        raise ValueError("constant term must be a unit")
    # inv accumulated degree by degree: inv_d = -(sum_{k<d} inv_k * p_{d-k}) / c0
    comps = p.homogeneous_components()
    inv: dict[int, MultiPolynomial] = {0: ring.constant(1 / c0)}
    for d in range(1, max_degree + 1):
        acc = ring.zero()
        for k in range(d):
            pk = comps.get(d - k)
            if pk is not None and k in inv:
                acc = acc + inv[k] * pk
        inv[d] = acc.scale(-1 / c0)
    total = ring.zero()
    for part in inv.values():
        total = total + part
    return total


# ---------------------------------------------------------------------------
# dense exact linear algebra

Matrix = list  # list of rows of Fractions


def mat(rows: Iterable[Iterable]) -> Matrix:
    return [[rat(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[ZERO] * cols for _ in range(rows)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(m):
                    if bt[j]:
                        oi[j] += c * bt[j]
    return out


def mat_trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), ZERO)


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form; returns (reduced copy, rank, pivot columns)."""
    r = [row[:] for row in m]
    nrows = len(r)
    ncols = len(r[0]) if nrows else 0
    pivots: list[int] = []
    lead = 0
    for col in range(ncols):
        piv = None
        for i in range(lead, nrows):
            if r[i][col]:
                piv = i
                break
        if piv is None:
            continue
        r[lead], r[piv] = r[piv], r[lead]
        inv = 1 / r[lead][col]
        r[lead] = [x * inv for x in r[lead]]
        for i in range(nrows):
            if i != lead and r[i][col]:
                f = r[i][col]
                r[i] = [x - f * y for x, y in zip(r[i], r[lead])]
        pivots.append(col)
        lead += 1
        if lead == nrows:
            break
    return r, len(pivots), pivots


def mat_rank(m: Matrix) -> int:
    if not m:
        return 0
    return rref(m)[1]


def solve_linear(a: Matrix, b: Sequence) -> list[Fraction]:
    """Exact unique solution of a x = b.

    Raises InconsistentSystem when no solution exists and
    UnderdeterminedSystem when the solution is not unique; both are
    expected outcomes for callers, not failures.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    bb = [rat(x) for x in b]
    if len(bb) != nrows:
        raise ValueError("dimension mismatch")
    aug = [a[i][:] + [bb[i]] for i in range(nrows)]
    r, rank, pivots = rref(aug)
    if ncols in pivots:
        raise InconsistentSystem("no solution")
    if rank < ncols:
        raise UnderdeterminedSystem("solution not unique")
    sol = [ZERO] * ncols
    for i, col in enumerate(pivots):
        sol[col] = r[i][ncols]
    return sol


def determinant(m: Matrix) -> Fraction:
    n = len(m)
    if any(len(row) != n for row in m):
        raise NonSquareMatrixError("determinant needs a square matrix")
    a = [row[:] for row in m]
    det = ONE
    for col in range(n):
        piv = None
        for i in range(col, n):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            return ZERO
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for i in range(col + 1, n):
            if a[i][col]:
                f = a[i][col] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return det


def charpoly(m: Matrix, var: str = "t") -> QPolynomial:
    """Monic characteristic polynomial det(t*I - M), exactly.

    Uses the Faddeev-LeVerrier recurrence; all arithmetic stays rational.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise NonSquareMatrixError("charpoly needs a square matrix")
    coeffs = {n: ONE}
    mk = identity(n)
    ck = ZERO
    for k in range(1, n + 1):
        # M_k = A (M_{k-1} + c_{k-1} I); c_k = -tr(M_k)/k; M_0 = I, c_0 = 0
        step = [row[:] for row in mk]
        if k > 1:
            for i in range(n):
                step[i][i] += ck
        mk = mat_mul(m, step)
        ck = -mat_trace(mk) / k
        coeffs[n - k] = ck
    return QPolynomial(coeffs, var)
