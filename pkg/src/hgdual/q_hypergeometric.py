"""Order-r basic hypergeometric machinery over a rational base 0 < q < 1:
the shift-form operator, its dual parameter map with argument rescale, the
solution bases, the pairing constants, the duality matrix M_q = Psi_q^{-1},
and exact verification of the bilinear sum identities with their closed
forms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact_algebra import (
    Polynomial,
    Q,
    RationalFunction,
    ReconstructionFailed,
    TruncatedSeries,
    rat,
    rational_reconstruct,
    series_of_ratfunc,
)
from .hypergeometric import DegenerateParameters, elementary_symmetric
from .skew_operators import (
    QSHIFT,
    CellResult,
    InsufficientPrecision,
    SkewOperator,
    TaggedSeries,
    VerificationReport,
    matrix_invert,
    psi_q_matrix,
)


def q_pochhammer(a, q, n):
    """q-shifted factorial (a;q)_n = (1-a)(1-aq)...(1-aq^{n-1})."""
    if n < 0:
        raise ValueError("q-pochhammer index must be non-negative")
    a, q = rat(a), rat(q)
    acc = Q(1)
    power = Q(1)
    for _ in range(n):
        acc *= 1 - a * power
        power *= q
    return acc


def genericity_check_q(b, q):
    """Decide exactly whether some quotient b_i/b_j is an integral power
    of q. Returns (True, None) when generic, else (False, (i, j, k)).

    Since 0 < q < 1, powers q^k decrease strictly, so the search over k
    terminates as soon as q^k drops below the candidate ratio.
    """
    b = [rat(x) for x in b]
    q = rat(q)
    for i in range(len(b)):
        for j in range(len(b)):
            if i == j:
                continue
            ratio = b[i] / b[j]
            if ratio == 1:
                return False, (i, j, 0)
            if ratio < 0:
                continue
            target = ratio if ratio < 1 else 1 / ratio
            k = 1
            power = q
            while power >= target:
                if power == target:
                    return False, (i, j, k if ratio < 1 else -k)
                power *= q
                k += 1
    return True, None


@dataclass(frozen=True)
class QHGParams:
    """Base q in (0,1) with parameters (a_1..a_r; b_1..b_r), b_r = q, all
    nonzero, and no b_i/b_j an integral power of q."""

    q: object
    a: tuple
    b: tuple

    def __post_init__(self):
        q = rat(self.q)
        a = tuple(rat(x) for x in self.a)
        b = tuple(rat(x) for x in self.b)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if not (0 < q < 1):
            raise DegenerateParameters("base must satisfy 0 < q < 1")
        if len(a) != len(b) or len(a) < 2:
            raise DegenerateParameters("need r >= 2 with r upper and r lower parameters")
        if b[-1] != q:
            raise DegenerateParameters("the last lower parameter must equal q")
        if any(x == 0 for x in a) or any(x == 0 for x in b):
            raise DegenerateParameters("parameters must be nonzero")
        ok, witness = genericity_check_q(b, q)
        if not ok:
            i, j, k = witness
            raise DegenerateParameters(
                "b_%d / b_%d equals q^%d" % (i + 1, j + 1, k)
            )

    @classmethod
    def make(cls, q, a, b_head):
        q = rat(q)
        return cls(q, tuple(rat(x) for x in a), tuple(rat(x) for x in b_head) + (q,))

    @property
    def r(self):
        return len(self.a)

    def dual(self):
        """The parameter map a -> q/a, b -> q^2/b; the last entry stays q."""
        return QHGParams(
            self.q,
            tuple(self.q / x for x in self.a),
            tuple(self.q * self.q / x for x in self.b),
        )


def argument_rescale(p):
    """rho = a_1...a_r q^{r-2} / (b_1...b_{r-1}): the dual solutions live in
    the variable rho*z."""
    num = Q(1)
    for x in p.a:
        num *= x
    den = Q(1)
    for x in p.b[:-1]:
        den *= x
    return num * p.q ** (p.r - 2) / den


def qhg_dual_params(p):
    return p.dual(), argument_rescale(p)


def qhg_operator(p):
    """L = (1 - b_1 Delta/q)...(1 - b_r Delta/q) - z (1 - a_1 Delta)...(1 - a_r Delta).

    Coefficient of Delta^j is (-1)^j (e_j(b)/q^j - e_j(a) z); the constant
    one is 1-z and the leading one is (-1)^r (b_1...b_r/q^r - a_1...a_r z).
    """
    r = p.r
    eb = elementary_symmetric(p.b)
    ea = elementary_symmetric(p.a)
    coeffs = []
    for j in range(r + 1):
        c = Polynomial([eb[j] / p.q**j, -ea[j]])
        if j % 2 == 1:
            c = -c
        coeffs.append(RationalFunction(c))
    return SkewOperator(QSHIFT, coeffs, q=p.q)


def q_dual_unit(p):
    """q_dual_operator(qhg_operator(p)) = unit * (dual-parameter operator
    with argument rescaled by rho)."""
    prod = Q(1)
    for x in p.b:
        prod *= x
    unit = prod / p.q**p.r
    if p.r % 2 == 1:
        unit = -unit
    return unit


def rescale_operator(op, c):
    """Substitute z -> c*z in every coefficient."""
    return SkewOperator(op.mode, [a.scale_arg(c) for a in op.coeffs], op.q)


def q_hypergeometric_body(upper, lower, q, N, argument_scale=None):
    """Series sum_n c_n z^n with c_0 = 1 and
    c_{n+1}/c_n = prod(1 - u q^n) / (prod(1 - l q^n) * (1 - q^{n+1})); the
    final factor is the implicit q-factorial. An argument_scale s folds s^n
    into c_n."""
    upper = [rat(u) for u in upper]
    lower = [rat(l) for l in lower]
    q = rat(q)
    coeffs = [Q(1)]
    qn = Q(1)
    for n in range(N):
        num = Q(1)
        for u in upper:
            num *= 1 - u * qn
        den = 1 - qn * q
        for l in lower:
            factor = 1 - l * qn
            if factor == 0:
                raise DegenerateParameters(
                    "lower parameter %s is an inverse power of q" % l
                )
            den *= factor
        coeffs.append(coeffs[-1] * num / den)
        qn *= q
    if argument_scale is not None:
        s = rat(argument_scale)
        power = Q(1)
        scaled = []
        for c in coeffs:
            scaled.append(c * power)
            power *= s
        coeffs = scaled
    return TruncatedSeries(coeffs)


@dataclass(frozen=True)
class QSolutionBasis:
    entries: tuple
    which: str


def q_solution_basis(p, N, which="primal"):
    """Primal entry i carries the shift eigenvalue q/b_i and body parameters
    (q a_k/b_i ; q b_j/b_i, j != i); the dual entry carries b_i/q with body
    (b_i/a_k ; q b_i/b_j, j != i) in the rescaled argument rho*z."""
    if which not in ("primal", "dual"):
        raise ValueError("which must be 'primal' or 'dual'")
    rho = argument_rescale(p) if which == "dual" else None
    entries = []
    for i in range(p.r):
        bi = p.b[i]
        if which == "primal":
            mu = p.q / bi
            upper = [p.q * x / bi for x in p.a]
            lower = [p.q * x / bi for j, x in enumerate(p.b) if j != i]
            body = q_hypergeometric_body(upper, lower, p.q, N)
        else:
            mu = bi / p.q
            upper = [bi / x for x in p.a]
            lower = [p.q * bi / x for j, x in enumerate(p.b) if j != i]
            body = q_hypergeometric_body(upper, lower, p.q, N, argument_scale=rho)
        entries.append(TaggedSeries(QSHIFT, mu, body, p.q))
    return QSolutionBasis(tuple(entries), which)


def q_c_constants(p):
    """Diagonal pairing constants (1/(q b_i^{r-2})) prod_{j != i} (b_i - b_j)."""
    out = []
    for i in range(p.r):
        acc = Q(1) / (p.q * p.b[i] ** (p.r - 2))
        for j in range(p.r):
            if j != i:
                acc *= p.b[i] - p.b[j]
        out.append(acc)
    return out


def q_duality_weights(p):
    """Weights q b_i^{r-2} prod_{j != i} 1/(b_i - b_j) = 1/C_ii."""
    return [1 / c for c in q_c_constants(p)]


def q_duality_matrix(p):
    return matrix_invert(psi_q_matrix(qhg_operator(p)))


def corner_entry(p):
    """The (r-1, 0) closed form (-1)^{r+1} q^r / (b_1...b_r - a_1...a_r q^{r-1} z)."""
    pb = Q(1)
    for x in p.b:
        pb *= x
    pa = Q(1)
    for x in p.a:
        pa *= x
    sign = Q(1) if (p.r + 1) % 2 == 0 else Q(-1)
    return RationalFunction(
        Polynomial([sign * p.q**p.r]), Polynomial([pb, -pa * p.q ** (p.r - 1)])
    )


def superdiagonal_entry(p, k):
    """The (k, k+1) closed form 1/(1 - q^k z)."""
    return RationalFunction(Polynomial([1]), Polynomial([1, -(p.q**k)]))


def q_bilinear_sum(weights, f_powers, g_powers, k, l):
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


def verify_theorem2(p, N):
    """Check every cell of the shift-mode bilinear sum against Psi_q^{-1},
    the on-and-below-diagonal zero pattern (with the (r-1,0) corner), both
    closed forms, and per-cell rational reconstruction."""
    r = p.r
    minimum = 4 * r + 8
    if N < minimum:
        raise InsufficientPrecision(N, minimum)
    m = q_duality_matrix(p)
    f_powers = _advance_table(q_solution_basis(p, N, "primal").entries, r)
    g_powers = _advance_table(q_solution_basis(p, N, "dual").entries, r)
    weights = q_duality_weights(p)
    cells = []
    for k in range(r):
        for l in range(r):
            s = q_bilinear_sum(weights, f_powers, g_powers, k, l)
            entry = m[k][l]
            ok = s == series_of_ratfunc(entry, N)
            if l <= k and (k, l) != (r - 1, 0):
                ok = ok and entry.is_zero
            if (k, l) == (r - 1, 0):
                ok = ok and entry == corner_entry(p)
            if l == k + 1:
                ok = ok and entry == superdiagonal_entry(p, k)
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


def closed_form_mq_r2(p):
    """The r=2 matrix: [[0, 1/(1-z)], [-q^2/(b_1 b_2 - a_1 a_2 q z), 0]]."""
    if p.r != 2:
        raise ValueError("closed form is for r = 2")
    zero = RationalFunction.zero()
    return [
        [zero, superdiagonal_entry(p, 0)],
        [corner_entry(p), zero],
    ]


def closed_form_mq_r3(p):
    """The r=3 matrix: zeros except
    (0,1) = 1/(1-z), (0,2) = (e_1(b)/q - e_1(a) z)/((1-z)(1-qz)),
    (1,2) = 1/(1-qz), (2,0) = q^3/(b_1 b_2 b_3 - a_1 a_2 a_3 q^2 z)."""
    if p.r != 3:
        raise ValueError("closed form is for r = 3")
    zero = RationalFunction.zero()
    ea = elementary_symmetric(p.a)
    eb = elementary_symmetric(p.b)
    num = Polynomial([eb[1] / p.q, -ea[1]])
    den = Polynomial([1, -1]) * Polynomial([1, -p.q])
    return [
        [zero, superdiagonal_entry(p, 0), RationalFunction(num, den)],
        [zero, zero, superdiagonal_entry(p, 1)],
        [corner_entry(p), zero, zero],
    ]


def verify_heine_identity(a1, a2, b1, q, N):
    """The r=2 four-product identity: the primal/dual solution bodies at
    index 2 multiply to the same series as the pair at index 1. Equivalent
    to the vanishing of the (0,0) bilinear sum."""
    p = QHGParams.make(q, [a1, a2], [b1])
    primal = q_solution_basis(p, N, "primal").entries
    dual = q_solution_basis(p, N, "dual").entries
    ok = primal[1].body * dual[1].body == primal[0].body * dual[0].body
    return VerificationReport((CellResult((0, 0), ok),))
