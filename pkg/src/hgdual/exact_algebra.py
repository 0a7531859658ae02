"""Exact arithmetic kernel: rationals, univariate polynomials in z, reduced
rational functions, truncated power series, and rational reconstruction.

Everything is exact; there is no floating point anywhere in this package.
Values are immutable after construction, so all operations are pure.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Q

__all__ = [
    "Q",
    "rat",
    "rat_str",
    "is_integer",
    "Polynomial",
    "poly_gcd",
    "poly_lcm",
    "RationalFunction",
    "TruncatedSeries",
    "series_of_ratfunc",
    "series_invert",
    "rational_reconstruct",
    "PoleAtOrigin",
    "ReconstructionFailed",
]

_QZERO = Q(0)
_QONE = Q(1)


class PoleAtOrigin(ValueError):
    """Series expansion requested for a rational function with den(0) = 0."""


class ReconstructionFailed(ValueError):
    """No rational function within the degree bounds matches the series."""


def rat(x):
    """Coerce an int, string \"p/q\", or rational to the scalar type."""
    if isinstance(x, type(_QZERO)):
        return x
    if isinstance(x, (int, str)):
        return Q(x)
    raise TypeError("cannot coerce %r to a rational" % (x,))


def rat_str(x):
    """Canonical string form: \"p\" for integers, \"p/q\" otherwise."""
    return str(x)


def is_integer(x):
    return x.denominator == 1


class Polynomial:
    """Univariate polynomial over Q, coefficients ascending in z.

    The zero polynomial has an empty coefficient tuple and degree -1.
    Trailing zero coefficients are stripped on construction.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def zero():
        return Polynomial(())

    @staticmethod
    def one():
        return Polynomial((1,))

    @staticmethod
    def constant(c):
        return Polynomial((c,))

    @staticmethod
    def z():
        return Polynomial((0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    def coefficient(self, n):
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else _QZERO

    @property
    def leading_coefficient(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            [self.coefficient(i) + other.coefficient(i) for i in range(n)]
        )

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            [self.coefficient(i) - other.coefficient(i) for i in range(n)]
        )

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        # schoolbook convolution; degrees stay tiny in this package
        if isinstance(other, Polynomial):
            if self.is_zero or other.is_zero:
                return Polynomial(())
            out = [_QZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, ci in enumerate(self.coeffs):
                if ci == 0:
                    continue
                for j, cj in enumerate(other.coeffs):
                    out[i + j] += ci * cj
            return Polynomial(out)
        return self.scale(other)

    def scale(self, c):
        c = rat(c)
        return Polynomial([c * x for x in self.coeffs])

    def evaluate(self, x):
        x = rat(x)
        acc = _QZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def scale_arg(self, c):
        """p(c*z): multiply the n-th coefficient by c^n."""
        c = rat(c)
        out, power = [], _QONE
        for x in self.coeffs:
            out.append(x * power)
            power *= c
        return Polynomial(out)

    def monic(self):
        if self.is_zero:
            raise ValueError("cannot normalize the zero polynomial")
        lead = self.leading_coefficient
        return self if lead == 1 else self.scale(1 / lead)

    def divmod(self, other):
        """Euclidean division: self = q*other + rem with deg rem < deg other."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return Polynomial(()), self
        quot = [_QZERO] * (dq + 1)
        lead = other.leading_coefficient
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quot[k] = c
            if c != 0:
                for j, oc in enumerate(other.coeffs):
                    rem[k + j] -= c * oc
        return Polynomial(quot), Polynomial(rem)

    def divexact(self, other):
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ValueError("inexact polynomial division")
        return q

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("%s*z" % c)
            else:
                parts.append("%s*z^%d" % (c, i))
        return " + ".join(parts)


def poly_gcd(p, q):
    """Monic greatest common divisor via the Euclidean algorithm."""
    if p.is_zero and q.is_zero:
        raise ValueError("gcd of two zero polynomials is undefined")
    a, b = p, q
    while not b.is_zero:
        a, b = b, a.divmod(b)[1]
    return a.monic()


def poly_lcm(p, q):
    if p.is_zero or q.is_zero:
        return Polynomial(())
    return (p * q).divexact(poly_gcd(p, q)).monic()


class RationalFunction:
    """Reduced ratio of polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Polynomial):
            num = Polynomial((rat(num),))
        if den is None:
            den = Polynomial.one()
        elif not isinstance(den, Polynomial):
            den = Polynomial((rat(den),))
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            self.num, self.den = Polynomial(()), Polynomial.one()
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.divexact(g), den.divexact(g)
        lead = den.leading_coefficient
        if lead != 1:
            num, den = num.scale(1 / lead), den.scale(1 / lead)
        self.num, self.den = num, den

    @staticmethod
    def zero():
        return RationalFunction(Polynomial(()))

    @staticmethod
    def one():
        return RationalFunction(Polynomial.one())

    @staticmethod
    def constant(c):
        return RationalFunction(Polynomial((rat(c),)))

    @staticmethod
    def z():
        return RationalFunction(Polynomial.z())

    @property
    def is_zero(self):
        return self.num.is_zero

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self.num * other.num, self.den * other.den)
        return RationalFunction(self.num.scale(other), self.den)

    def __truediv__(self, other):
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def evaluate(self, x):
        d = self.den.evaluate(x)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num.evaluate(x) / d

    def derivative(self):
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def theta(self):
        """z * d/dz, the Euler derivation, computed exactly."""
        d = self.derivative()
        return RationalFunction(Polynomial.z() * d.num, d.den)

    def scale_arg(self, c):
        """Substitute z -> c*z and re-normalize."""
        return RationalFunction(self.num.scale_arg(c), self.den.scale_arg(c))

    def __repr__(self):
        if self.den == Polynomial.one():
            return "(%r)" % self.num
        return "(%r) / (%r)" % (self.num, self.den)


class TruncatedSeries:
    """Power series known exactly through z^order.

    coeffs has length order+1. Binary operations return the minimum of the
    two operand orders; there is no silent padding.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order=None):
        cs = [rat(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("series order must be non-negative")
        if len(cs) < order + 1:
            cs.extend([_QZERO] * (order + 1 - len(cs)))
        self.coeffs = tuple(cs[: order + 1])
        self.order = order

    @staticmethod
    def zero(order):
        return TruncatedSeries([_QZERO] * (order + 1))

    @staticmethod
    def one(order):
        return TruncatedSeries([_QONE] + [_QZERO] * order)

    def coefficient(self, n):
        if n < 0 or n > self.order:
            raise IndexError("coefficient beyond truncation order")
        return self.coeffs[n]

    @property
    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1])

    def __add__(self, other):
        n = min(self.order, other.order)
        return TruncatedSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)]
        )

    def __sub__(self, other):
        n = min(self.order, other.order)
        return TruncatedSeries(
            [self.coeffs[i] - other.coeffs[i] for i in range(n + 1)]
        )

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            n = min(self.order, other.order)
            out = [_QZERO] * (n + 1)
            for i in range(n + 1):
                ci = self.coeffs[i]
                if ci == 0:
                    continue
                for j in range(n + 1 - i):
                    out[i + j] += ci * other.coeffs[j]
            return TruncatedSeries(out)
        return self.scale(other)

    def scale(self, c):
        c = rat(c)
        return TruncatedSeries([c * x for x in self.coeffs])

    def theta(self):
        """Euler operator on the body: coefficient of z^n multiplies by n."""
        return TruncatedSeries([i * c for i, c in enumerate(self.coeffs)])

    def scale_arg(self, q):
        """phi(q*z): coefficient of z^n multiplies by q^n."""
        q = rat(q)
        out, power = [], _QONE
        for c in self.coeffs:
            out.append(c * power)
            power *= q
        return TruncatedSeries(out)

    def __repr__(self):
        prefix = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.order >= 8 else ""
        return "Series[%s%s; order=%d]" % (prefix, tail, self.order)


def series_of_ratfunc(f, order):
    """Maclaurin expansion of a rational function through z^order."""
    if f.den.evaluate(0) == 0:
        raise PoleAtOrigin("rational function has a pole at z = 0")
    num = TruncatedSeries(
        [f.num.coefficient(i) for i in range(order + 1)]
    )
    den = TruncatedSeries(
        [f.den.coefficient(i) for i in range(order + 1)]
    )
    return num * series_invert(den)


def series_invert(a):
    """Multiplicative inverse: a * result = 1 through the truncation order."""
    c0 = a.coeffs[0]
    if c0 == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = 1 / c0
    out = [inv0]
    for n in range(1, a.order + 1):
        acc = _QZERO
        for k in range(1, n + 1):
            acc += a.coeffs[k] * out[n - k]
        out.append(-inv0 * acc)
    return TruncatedSeries(out)


def _kernel_vector(rows, ncols):
    """One nonzero kernel vector of the matrix given by rows, via exact
    Gaussian elimination. rows may be fewer than ncols."""
    mat = [list(row) for row in rows]
    pivots = []
    free = list(range(ncols))
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        free.remove(c)
        r += 1
        if r == len(mat):
            break
    if not free:
        return None
    fc = free[0]
    vec = [_QZERO] * ncols
    vec[fc] = _QONE
    for row_idx, pc in enumerate(pivots):
        vec[pc] = -mat[row_idx][fc]
    return vec


def rational_reconstruct(a, num_deg, den_deg):
    """Recover p/q with deg p <= num_deg, deg q <= den_deg, den(0) != 0 from
    the series a, certifying against every supplied coefficient.

    The denominator degree is minimized: candidates are tried from degree 0
    upward and the first fully-certified one wins. Raises ReconstructionFailed
    when nothing within the bounds matches.
    """
    if a.order < num_deg + den_deg + 1:
        raise ValueError(
            "series order %d too small for bounds (%d, %d); need >= %d"
            % (a.order, num_deg, den_deg, num_deg + den_deg + 1)
        )
    for d in range(den_deg + 1):
        # q has d+1 unknown coefficients; require every known coefficient of
        # q*a beyond z^num_deg to vanish (overdetermined on purpose)
        rows = []
        for k in range(num_deg + 1, a.order + 1):
            rows.append(
                [a.coeffs[k - j] if k - j >= 0 else _QZERO for j in range(d + 1)]
            )
        qvec = _kernel_vector(rows, d + 1)
        if qvec is None:
            continue
        den = Polynomial(qvec)
        if den.is_zero:
            continue
        den_series = TruncatedSeries(
            [den.coefficient(i) for i in range(a.order + 1)]
        )
        prod = den_series * a
        num = Polynomial(prod.coeffs[: num_deg + 1])
        try:
            f = RationalFunction(num, den)
        except ZeroDivisionError:
            continue
        if f.den.evaluate(0) == 0 or f.num.degree > num_deg:
            continue
        if series_of_ratfunc(f, a.order) == a:
            return f
    raise ReconstructionFailed(
        "no rational function with degrees (%d, %d) matches all %d coefficients"
        % (num_deg, den_deg, a.order + 1)
    )
