"""Operator algebra for the Euler derivation theta = z*d/dz and the q-shift
automorphism f(z) -> f(qz): formal duals, the bilinear pairing matrices, the
pairings on tagged series solutions, Wronskians, and exact matrix inversion.

Operators are stored in theta-form (Theta mode, L = sum A_j theta^j) or
shift-form (QShift mode, L = sum A_j Delta^j) with RationalFunction
coefficients A_0..A_r.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import comb

from .exact_algebra import (
    Polynomial,
    Q,
    RationalFunction,
    TruncatedSeries,
    poly_lcm,
    rat,
    series_of_ratfunc,
)

THETA = "theta"
QSHIFT = "qshift"

_RF_ZERO = RationalFunction.zero()


class DegenerateOperator(ValueError):
    """Operator violates a structural requirement (e.g. A_0 = 0 or A_r = 0)."""


class OffsetMismatch(ValueError):
    """Tagged series whose formal prefactors do not cancel."""


class SingularMatrix(ValueError):
    """Matrix inversion requested for a matrix with zero determinant."""


class InsufficientPrecision(ValueError):
    """Truncation order too small for a certified verification run."""

    def __init__(self, order, minimum):
        super().__init__(
            "order %d is below the certified minimum %d" % (order, minimum)
        )
        self.order = order
        self.minimum = minimum


class SkewOperator:
    """L = A_r X^r + ... + A_1 X + A_0 with X = theta or X = Delta.

    coeffs holds A_0..A_r ascending; trailing zero coefficients are stripped,
    so order = len(coeffs)-1 and A_r != 0. QShift mode carries the base q
    with 0 < q < 1.
    """

    __slots__ = ("mode", "coeffs", "q")

    def __init__(self, mode, coeffs, q=None):
        if mode not in (THETA, QSHIFT):
            raise ValueError("unknown operator mode %r" % (mode,))
        cs = [c if isinstance(c, RationalFunction) else RationalFunction.constant(c)
              for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        if not cs:
            raise DegenerateOperator("zero operator")
        if mode == QSHIFT:
            if q is None:
                raise ValueError("QShift mode requires the base q")
            q = rat(q)
            if not (0 < q < 1):
                raise DegenerateOperator("base q must satisfy 0 < q < 1")
        else:
            if q is not None:
                raise ValueError("Theta mode takes no base")
        self.mode = mode
        self.coeffs = tuple(cs)
        self.q = q

    @property
    def order(self):
        return len(self.coeffs) - 1

    def coefficient(self, j):
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else _RF_ZERO

    def __eq__(self, other):
        if not isinstance(other, SkewOperator):
            return NotImplemented
        return (
            self.mode == other.mode
            and self.q == other.q
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        sym = "theta" if self.mode == THETA else "Delta"
        parts = ["(%r)*%s^%d" % (c, sym, j) for j, c in enumerate(self.coeffs)]
        return " + ".join(parts)

    def scale(self, unit):
        """Multiply every coefficient by a nonzero rational function."""
        if not isinstance(unit, RationalFunction):
            unit = RationalFunction.constant(unit)
        if unit.is_zero:
            raise ValueError("unit must be nonzero")
        return SkewOperator(self.mode, [c * unit for c in self.coeffs], self.q)

    def apply(self, s):
        """Apply the operator to a tagged series, exactly through its order."""
        if s.mode != self.mode:
            raise ValueError("operator and series mode disagree")
        n = s.body.order
        acc = TruncatedSeries.zero(n)
        term = s
        for j, a in enumerate(self.coeffs):
            if not a.is_zero:
                acc = acc + series_of_ratfunc(a, n) * term.body
            if j < self.order:
                term = term.advance()
        return TaggedSeries(self.mode, s.offset, acc, s.q)


class TaggedSeries:
    """A formal product z^c * body(z), with the prefactor kept symbolic.

    Theta mode stores the exponent c itself (theta(z^c) = c z^c); QShift mode
    stores the eigenvalue mu with Delta(z^c) = mu z^c. Scalar multiples are
    folded into the body, so equal values compare equal structurally.
    """

    __slots__ = ("mode", "offset", "body", "q")

    def __init__(self, mode, offset, body, q=None):
        if mode not in (THETA, QSHIFT):
            raise ValueError("unknown series mode %r" % (mode,))
        if mode == QSHIFT:
            if q is None:
                raise ValueError("QShift mode requires the base q")
            q = rat(q)
        elif q is not None:
            raise ValueError("Theta mode takes no base")
        self.mode = mode
        self.offset = rat(offset)
        self.body = body
        self.q = q

    def __eq__(self, other):
        if not isinstance(other, TaggedSeries):
            return NotImplemented
        return (
            self.mode == other.mode
            and self.q == other.q
            and self.offset == other.offset
            and self.body == other.body
        )

    def __repr__(self):
        return "z^[%s] * %r" % (self.offset, self.body)

    def scale(self, c):
        return TaggedSeries(self.mode, self.offset, self.body.scale(c), self.q)

    def __add__(self, other):
        if self.mode != other.mode or self.offset != other.offset or self.q != other.q:
            raise OffsetMismatch("cannot add tagged series with different tags")
        return TaggedSeries(self.mode, self.offset, self.body + other.body, self.q)

    def advance(self):
        """One application of the mode's operator symbol.

        Theta: theta(z^c phi) = z^c (c + theta) phi.
        QShift: Delta(z^c phi) = mu z^c phi(qz).
        """
        if self.mode == THETA:
            body = self.body.scale(self.offset) + self.body.theta()
        else:
            body = self.body.scale_arg(self.q).scale(self.offset)
        return TaggedSeries(self.mode, self.offset, body, self.q)

    def advance_power(self, k):
        s = self
        for _ in range(k):
            s = s.advance()
        return s

    def cancels_with(self, other):
        if self.mode != other.mode or self.q != other.q:
            return False
        if self.mode == THETA:
            return self.offset + other.offset == 0
        return self.offset * other.offset == 1

    def pair_product(self, other):
        """Product collapsing to a plain series; the prefactors must cancel."""
        if not self.cancels_with(other):
            raise OffsetMismatch(
                "prefactors do not cancel: %s vs %s" % (self.offset, other.offset)
            )
        return self.body * other.body


def dual_operator(op):
    """Formal adjoint of a Theta operator: sum_j (-theta)^j o A_j, expanded
    to standard form with the commutation rule theta o a = a o theta + theta(a).
    """
    if op.mode != THETA:
        raise ValueError("dual_operator expects a Theta operator")
    r = op.order
    total = [_RF_ZERO] * (r + 1)
    for j, a in enumerate(op.coeffs):
        cur = [a]
        for _ in range(j):
            nxt = [_RF_ZERO] * (len(cur) + 1)
            for k, c in enumerate(cur):
                # (-theta) o (c theta^k) = -theta(c) theta^k - c theta^{k+1}
                nxt[k] = nxt[k] - c.theta()
                nxt[k + 1] = nxt[k + 1] - c
            cur = nxt
        for k, c in enumerate(cur):
            total[k] = total[k] + c
    return SkewOperator(THETA, total)


def _shift_coeff(a, q, k):
    """Delta^k on a coefficient: substitute z -> q^k z (k may be negative)."""
    return a.scale_arg(q**k)


def q_dual_operator(op):
    """Dual of a QShift operator:
    L* = Delta^{r-1}(A_0) Delta^r + ... + A_{r-1} Delta + Delta^{-1}(A_r).
    """
    if op.mode != QSHIFT:
        raise ValueError("q_dual_operator expects a QShift operator")
    r = op.order
    if op.coefficient(0).is_zero:
        raise DegenerateOperator("A_0 = 0")
    q = op.q
    coeffs = [_shift_coeff(op.coefficient(r), q, -1)]
    for k in range(1, r + 1):
        coeffs.append(_shift_coeff(op.coefficient(r - k), q, k - 1))
    return SkewOperator(QSHIFT, coeffs, q)


def _theta_power(a, l):
    for _ in range(l):
        a = a.theta()
    return a


def psi_matrix(op):
    """Pairing matrix of a Theta operator: entry (i,j) vanishes for
    i+j >= r and otherwise equals
    (-1)^i sum_{l=0}^{r-1-i-j} (-1)^l C(l+i, i) theta^l(A_{i+j+l+1}).
    """
    if op.mode != THETA:
        raise ValueError("psi_matrix expects a Theta operator")
    r = op.order
    mat = [[_RF_ZERO] * r for _ in range(r)]
    for i in range(r):
        for j in range(r - i):
            acc = _RF_ZERO
            for l in range(r - i - j):
                term = _theta_power(op.coefficient(i + j + l + 1), l)
                term = term * RationalFunction.constant(Q(comb(l + i, i)))
                acc = acc + term if l % 2 == 0 else acc - term
            if i % 2 == 1:
                acc = -acc
            mat[i][j] = acc
    return mat


def psi_q_matrix(op):
    """Pairing matrix of a QShift operator: row 0 is (0, ..., 0, -Delta^{-1}(A_r));
    row k >= 1 carries Delta^{k-1}(A_0..A_{r-1-k}) in columns k-1..r-2.
    """
    if op.mode != QSHIFT:
        raise ValueError("psi_q_matrix expects a QShift operator")
    r = op.order
    if op.coefficient(0).is_zero:
        raise DegenerateOperator("A_0 = 0")
    q = op.q
    mat = [[_RF_ZERO] * r for _ in range(r)]
    mat[0][r - 1] = -_shift_coeff(op.coefficient(r), q, -1)
    for k in range(1, r):
        for j in range(r - k):
            mat[k][k - 1 + j] = _shift_coeff(op.coefficient(j), q, k - 1)
    return mat


def _pairing(mat, g, f, r):
    n = min(g.body.order, f.body.order)
    gs, fs = [g], [f]
    for _ in range(r - 1):
        gs.append(gs[-1].advance())
        fs.append(fs[-1].advance())
    acc = TruncatedSeries.zero(n)
    for i in range(r):
        for j in range(r):
            entry = mat[i][j]
            if entry.is_zero:
                continue
            acc = acc + series_of_ratfunc(entry, n) * gs[i].pair_product(fs[j])
    return acc


def omega_pairing(op, g, f):
    """Sum_{i,j} Psi_{ij} theta^i(g) theta^j(f) as a plain series; constant
    through the guard order when g, f solve the dual and primal equations."""
    if not g.cancels_with(f):
        raise OffsetMismatch("pairing requires cancelling prefactors")
    return _pairing(psi_matrix(op), g, f, op.order)


def omega_q_pairing(op, g, f):
    """Shift-mode pairing (g, Delta g, ...) Psi_q (f, Delta f, ...)^t."""
    if not g.cancels_with(f):
        raise OffsetMismatch("pairing requires cancelling prefactors")
    return _pairing(psi_q_matrix(op), g, f, op.order)


def annihilates(op, s, guard):
    """True when op(s) vanishes on every coefficient z^0..z^{order-guard}."""
    out = op.apply(s).body
    limit = out.order - guard
    return all(c == 0 for c in out.coeffs[: limit + 1])


def wronskian_matrix(rows):
    """Matrix whose k-th row is the k-th theta- or Delta-power of each input."""
    if not rows:
        raise ValueError("empty solution list")
    r = len(rows)
    mat = [list(rows)]
    for _ in range(r - 1):
        mat.append([s.advance() for s in mat[-1]])
    return mat


def wronskian_det(rows):
    """Determinant of the Wronskian matrix as a tagged series.

    Every permutation term carries the same total prefactor (one entry per
    column), so the determinant is z^[sum of offsets] times a plain series.
    """
    mat = wronskian_matrix(rows)
    r = len(rows)
    n = min(s.body.order for s in rows)
    first = rows[0]
    if first.mode == THETA:
        total = sum((s.offset for s in rows), Q(0))
    else:
        total = Q(1)
        for s in rows:
            total = total * s.offset
    det = TruncatedSeries.zero(n)
    for perm in permutations(range(r)):
        inversions = sum(
            1 for x in range(r) for y in range(x + 1, r) if perm[x] > perm[y]
        )
        term = TruncatedSeries.one(n)
        for k in range(r):
            term = term * mat[k][perm[k]].body
        det = det + (term if inversions % 2 == 0 else -term)
    return TaggedSeries(first.mode, total, det, first.q)


def _poly_matrix_det(rows):
    """Fraction-free Bareiss determinant of a square Polynomial matrix."""
    n = len(rows)
    if n == 0:
        return Polynomial.one()
    m = [list(row) for row in rows]
    sign = 1
    prev = Polynomial.one()
    for k in range(n - 1):
        if m[k][k].is_zero:
            for i in range(k + 1, n):
                if not m[i][k].is_zero:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Polynomial.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).divexact(prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def _poly_minor(rows, i, j):
    return _poly_matrix_det(
        [
            [row[c] for c in range(len(rows)) if c != j]
            for ri, row in enumerate(rows)
            if ri != i
        ]
    )


def matrix_det(mat):
    """Exact determinant of a square RationalFunction matrix."""
    n = len(mat)
    den = Polynomial.one()
    for row in mat:
        for e in row:
            den = poly_lcm(den, e.den)
    cleared = [
        [e.num * den.divexact(e.den) for e in row] for row in mat
    ]
    num = _poly_matrix_det(cleared)
    full_den = Polynomial.one()
    for _ in range(n):
        full_den = full_den * den
    return RationalFunction(num, full_den)


def matrix_invert(mat):
    """Exact inverse of a square RationalFunction matrix via fraction-free
    elimination on the denominator-cleared polynomial matrix."""
    n = len(mat)
    den = Polynomial.one()
    for row in mat:
        for e in row:
            den = poly_lcm(den, e.den)
    cleared = [
        [e.num * den.divexact(e.den) for e in row] for row in mat
    ]
    det = _poly_matrix_det(cleared)
    if det.is_zero:
        raise SingularMatrix("matrix has zero determinant")
    inv = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = _poly_minor(cleared, j, i)
            num = den * minor
            if (i + j) % 2 == 1:
                num = -num
            inv[i][j] = RationalFunction(num, det)
    return inv


def matrix_mul(a, b):
    n, m, p = len(a), len(b[0]), len(b)
    out = [[_RF_ZERO] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = _RF_ZERO
            for k in range(p):
                acc = acc + a[i][k] * b[k][j]
            out[i][j] = acc
    return out


def matrix_identity(n):
    one = RationalFunction.one()
    return [
        [one if i == j else _RF_ZERO for j in range(n)] for i in range(n)
    ]


@dataclass(frozen=True)
class CellResult:
    """Outcome of one verified identity cell (k, l)."""

    cell: tuple
    passed: bool
    expected: object = None
    got_prefix: tuple = None

    @property
    def label(self):
        return "(%d,%d)" % tuple(self.cell)


@dataclass(frozen=True)
class VerificationReport:
    """Per-cell outcomes of one verification run."""

    cells: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.cells)

    @property
    def failures(self):
        return tuple(c for c in self.cells if not c.passed)
