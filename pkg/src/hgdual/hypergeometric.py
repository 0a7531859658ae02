"""Order-r generalized hypergeometric machinery: the theta-form operator,
its dual parameters, the solution bases f_i/g_i, the pairing constants, the
duality matrix M = Psi^{-1}, and exact verification of the bilinear sum
identities including the closed-form r=2 and r=3 matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact_algebra import (
    Polynomial,
    Q,
    RationalFunction,
    ReconstructionFailed,
    TruncatedSeries,
    is_integer,
    rat,
    rational_reconstruct,
    series_of_ratfunc,
)
from .skew_operators import (
    THETA,
    CellResult,
    InsufficientPrecision,
    SkewOperator,
    TaggedSeries,
    VerificationReport,
    matrix_invert,
    psi_matrix,
)


class DegenerateParameters(ValueError):
    """Parameter tuple outside the generic range the solution theory needs."""


def pochhammer(x, n):
    """Rising factorial x(x+1)...(x+n-1), with (x)_0 = 1."""
    if n < 0:
        raise ValueError("pochhammer index must be non-negative")
    x = rat(x)
    acc = Q(1)
    for k in range(n):
        acc *= x + k
    return acc


def elementary_symmetric(values):
    """All elementary symmetric functions e_0..e_n of the given rationals."""
    es = [Q(1)]
    for v in values:
        v = rat(v)
        es.append(Q(0))
        for k in range(len(es) - 1, 0, -1):
            es[k] = es[k] + v * es[k - 1]
    return es


@dataclass(frozen=True)
class HGParams:
    """Parameters (a_1..a_r; b_1..b_r) with b_r = 1, b_i distinct mod Z."""

    a: tuple
    b: tuple

    def __post_init__(self):
        a = tuple(rat(x) for x in self.a)
        b = tuple(rat(x) for x in self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if len(a) != len(b) or len(a) < 2:
            raise DegenerateParameters("need r >= 2 with r upper and r lower parameters")
        if b[-1] != 1:
            raise DegenerateParameters("the last lower parameter must be 1")
        for i in range(len(b)):
            for j in range(i + 1, len(b)):
                if is_integer(b[i] - b[j]):
                    raise DegenerateParameters(
                        "lower parameters %s and %s differ by an integer"
                        % (b[i], b[j])
                    )

    @classmethod
    def make(cls, a, b_head):
        """Build from r upper parameters and the r-1 free lower ones."""
        return cls(tuple(rat(x) for x in a), tuple(rat(x) for x in b_head) + (Q(1),))

    @property
    def r(self):
        return len(self.a)

    def dual(self):
        """The parameter map a -> 1-a, b -> 2-b; the last entry stays 1."""
        return HGParams(
            tuple(1 - x for x in self.a), tuple(2 - x for x in self.b)
        )


def hg_operator(p):
    """L = (theta+b_1-1)...(theta+b_r-1) - z (theta+a_1)...(theta+a_r).

    Coefficient of theta^j is e_{r-j}(b-1) - z e_{r-j}(a); the leading
    coefficient is 1-z and, since b_r = 1, the constant one is -z a_1...a_r.
    """
    r = p.r
    eb = elementary_symmetric([x - 1 for x in p.b])
    ea = elementary_symmetric(p.a)
    coeffs = [
        RationalFunction(Polynomial([eb[r - j], -ea[r - j]])) for j in range(r + 1)
    ]
    return SkewOperator(THETA, coeffs)


def hg_dual_params(p):
    return p.dual()


def dual_unit(r):
    """dual_operator(hg_operator(p)) = unit * hg_operator(p.dual())."""
    return Q(1) if r % 2 == 0 else Q(-1)


@dataclass(frozen=True)
class SolutionBasis:
    entries: tuple
    which: str


def hypergeometric_body(upper, lower, N, argument_scale=None):
    """Series sum_n c_n z^n with c_0 = 1 and
    c_{n+1}/c_n = prod(u+n) / (prod(l+n) * (n+1)); the (n+1) factor is the
    implicit factorial. An argument_scale s folds s^n into c_n."""
    upper = [rat(u) for u in upper]
    lower = [rat(l) for l in lower]
    for l in lower:
        if is_integer(l) and l <= 0:
            raise DegenerateParameters("lower parameter %s is a non-positive integer" % l)
    coeffs = [Q(1)]
    for n in range(N):
        num = Q(1)
        for u in upper:
            num *= u + n
        den = Q(n + 1)
        for l in lower:
            den *= l + n
        coeffs.append(coeffs[-1] * num / den)
    if argument_scale is not None:
        s = rat(argument_scale)
        power = Q(1)
        scaled = []
        for c in coeffs:
            scaled.append(c * power)
            power *= s
        coeffs = scaled
    return TruncatedSeries(coeffs)


def solution_basis(p, N, which="primal"):
    """Basis i = z^{1-b_i} F(a_k+1-b_i ; b_j+1-b_i, j != i) for the primal
    family; the dual family swaps to z^{b_i-1} F(b_i-a_k ; b_i+1-b_j)."""
    if which not in ("primal", "dual"):
        raise ValueError("which must be 'primal' or 'dual'")
    entries = []
    for i in range(p.r):
        bi = p.b[i]
        if which == "primal":
            offset = 1 - bi
            upper = [x + 1 - bi for x in p.a]
            lower = [x + 1 - bi for j, x in enumerate(p.b) if j != i]
        else:
            offset = bi - 1
            upper = [bi - x for x in p.a]
            lower = [bi + 1 - x for j, x in enumerate(p.b) if j != i]
        body = hypergeometric_body(upper, lower, N)
        entries.append(TaggedSeries(THETA, offset, body))
    return SolutionBasis(tuple(entries), which)


def c_constants(p):
    """Diagonal pairing constants C_ii = prod_{j != i} (b_j - b_i)."""
    out = []
    for i in range(p.r):
        acc = Q(1)
        for j in range(p.r):
            if j != i:
                acc *= p.b[j] - p.b[i]
        out.append(acc)
    return out


def duality_weights(p):
    """The weights 1/C_ii multiplying f_i g_i in the bilinear sums."""
    return [1 / c for c in c_constants(p)]


def duality_matrix(p):
    return matrix_invert(psi_matrix(hg_operator(p)))


def _one_minus_z():
    return RationalFunction(Polynomial([1, -1]))


def anti_diagonal_entry(l):
    """Value of the duality matrix on the k+l = r-1 anti-diagonal."""
    sign = Q(1) if l % 2 == 0 else Q(-1)
    return RationalFunction(Polynomial([sign])) / _one_minus_z()


def bilinear_sum(weights, f_powers, g_powers, k, l):
    """sum_i w_i theta^k(f_i) theta^l(g_i) collapsed to a plain series."""
    acc = None
    for w, fp, gp in zip(weights, f_powers, g_powers):
        term = fp[k].pair_product(gp[l]).scale(w)
        acc = term if acc is None else acc + term
    return acc


def _advance_table(entries, r):
    table = []
    for s in entries:
        row = [s]
        for _ in range(r - 1):
            row.append(row[-1].advance())
        table.append(row)
    return table


def verify_theorem1(p, N):
    """Check, cell by cell, that the bilinear sums of the solution bases
    reproduce Psi^{-1} exactly through z^N, that the zero pattern and
    anti-diagonal closed form hold, and that each sum reconstructs to the
    same rational function."""
    r = p.r
    minimum = 4 * r + 8
    if N < minimum:
        raise InsufficientPrecision(N, minimum)
    m = duality_matrix(p)
    f_powers = _advance_table(solution_basis(p, N, "primal").entries, r)
    g_powers = _advance_table(solution_basis(p, N, "dual").entries, r)
    weights = duality_weights(p)
    cells = []
    for k in range(r):
        for l in range(r):
            s = bilinear_sum(weights, f_powers, g_powers, k, l)
            entry = m[k][l]
            ok = s == series_of_ratfunc(entry, N)
            if k + l <= r - 2:
                ok = ok and entry.is_zero
            if k + l == r - 1:
                ok = ok and entry == anti_diagonal_entry(l)
            if ok:
                try:
                    ok = rational_reconstruct(s, r, r) == entry
                except ReconstructionFailed:
                    ok = False
            cells.append(
                CellResult(
                    (k, l),
                    ok,
                    expected=None if ok else entry,
                    got_prefix=None if ok else tuple(s.coeffs[: 2 * r + 2]),
                )
            )
    return VerificationReport(tuple(cells))


def closed_form_m_r2(p):
    """The r=2 duality matrix in closed form:
    [[0, -1/(1-z)], [1/(1-z), (b_1+b_2-2+(1-a_1-a_2)z)/(1-z)^2]]."""
    if p.r != 2:
        raise ValueError("closed form is for r = 2")
    omz = _one_minus_z()
    a1, a2 = p.a
    b1, b2 = p.b
    corner = RationalFunction(Polynomial([b1 + b2 - 2, 1 - a1 - a2])) / (omz * omz)
    return [
        [RationalFunction.zero(), -anti_diagonal_entry(0)],
        [anti_diagonal_entry(0), corner],
    ]


def closed_form_m_r3(p):
    """The r=3 duality matrix in closed form, written with the elementary
    symmetric functions e_1, e_2 of the upper and lower parameters."""
    if p.r != 3:
        raise ValueError("closed form is for r = 3")
    ea = elementary_symmetric(p.a)
    eb = elementary_symmetric(p.b)
    e1a, e2a = ea[1], ea[2]
    e1b, e2b = eb[1], eb[2]
    omz = _one_minus_z()
    omz2 = omz * omz
    omz3 = omz2 * omz
    inv = RationalFunction.one() / omz
    big_a = (e1b - 2) * (e1b - 2) - e2b + 2
    big_b = e2b - 2 * (e1a - Q(1, 2)) * (e1b - Q(5, 2)) + e2a - Q(5, 2)
    big_c = (e1a - 1) * (e1a - 1) - e2a
    return [
        [RationalFunction.zero(), RationalFunction.zero(), inv],
        [
            RationalFunction.zero(),
            -inv,
            RationalFunction(Polynomial([3 - e1b, -2 + e1a])) / omz2,
        ],
        [
            inv,
            RationalFunction(Polynomial([-3 + e1b, 1 - e1a])) / omz2,
            RationalFunction(Polynomial([big_a, big_b, big_c])) / omz3,
        ],
    ]


def binomial_series(e, N):
    """(1-z)^e for rational e: c_0 = 1, c_{n+1} = c_n (n-e)/(n+1)."""
    e = rat(e)
    coeffs = [Q(1)]
    for n in range(N):
        coeffs.append(coeffs[-1] * (n - e) / (n + 1))
    return TruncatedSeries(coeffs)


def verify_euler_identity(a1, a2, b1, N):
    """Two classical order-2 checks at the given parameters: the quadratic
    transformation F(a,b;c;z) = (1-z)^{c-a-b} F(c-a,c-b;c;z), and the
    four-product identity equivalent to the (0,0) cell of the bilinear sum."""
    a1, a2, b1 = rat(a1), rat(a2), rat(b1)
    p = HGParams.make([a1, a2], [b1])
    left = hypergeometric_body([a1, a2], [b1], N)
    right = hypergeometric_body([b1 - a1, b1 - a2], [b1], N)
    transform_ok = left == binomial_series(b1 - a1 - a2, N) * right
    primal = solution_basis(p, N, "primal").entries
    dual = solution_basis(p, N, "dual").entries
    product_ok = primal[1].body * dual[1].body == primal[0].body * dual[0].body
    cells = (
        CellResult((0, 0), transform_ok),
        CellResult((0, 1), product_ok),
    )
    return VerificationReport(cells)
