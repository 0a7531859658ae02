"""Command line front end: construct operators and their duals, print the
pairing and duality matrices, and run the exact verification suites.

Exit codes: 0 pass, 1 identity mismatch, 2 parse error, 3 degenerate
parameters, 4 insufficient truncation order.
"""

import argparse
import json
import random
import sys
from dataclasses import dataclass

from .exact_algebra import Q, is_integer, rat, rat_str
from .hypergeometric import (
    DegenerateParameters,
    HGParams,
    closed_form_m_r2,
    closed_form_m_r3,
    dual_unit,
    duality_matrix,
    hg_dual_params,
    hg_operator,
    verify_euler_identity,
    verify_theorem1,
)
from .q_hypergeometric import (
    QHGParams,
    closed_form_mq_r2,
    closed_form_mq_r3,
    q_dual_unit,
    q_duality_matrix,
    qhg_dual_params,
    qhg_operator,
    verify_heine_identity,
    verify_theorem2,
)
from .skew_operators import (
    DegenerateOperator,
    InsufficientPrecision,
    dual_operator,
    matrix_det,
    matrix_identity,
    matrix_mul,
    psi_matrix,
    psi_q_matrix,
    q_dual_operator,
)

EXIT_PASS = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_DEGENERATE = 3
EXIT_PRECISION = 4


@dataclass(frozen=True)
class RunConfig:
    """Frozen snapshot of one invocation."""

    command: str
    qmode: bool
    r: int
    a: tuple
    b: tuple
    q: object
    order: int
    samples: int
    seed: int
    output_format: str
    check: bool


# --------------------------------------------------------------------------
# parameter acquisition


def _sample_rational(rng):
    return Q(rng.randint(1, 97), rng.randint(1, 97))


def sample_theta_params(rng, r):
    """Random generic parameters; integer upper parameters are rejected so
    the dual parameter list stays inside the validated class."""
    while True:
        a = tuple(_sample_rational(rng) for _ in range(r))
        if any(is_integer(x) for x in a):
            continue
        b_head = tuple(_sample_rational(rng) for _ in range(r - 1))
        try:
            return HGParams.make(a, b_head)
        except DegenerateParameters:
            continue


def sample_qshift_params(rng, r, q):
    while True:
        a = tuple(_sample_rational(rng) for _ in range(r))
        b_head = tuple(_sample_rational(rng) for _ in range(r - 1))
        try:
            return QHGParams.make(q, a, b_head)
        except DegenerateParameters:
            continue


def resolve_params(cfg):
    """Explicit --a/--b pin a single tuple; otherwise draw cfg.samples
    seeded tuples (rejection until generic)."""
    if cfg.a:
        if cfg.qmode:
            return [QHGParams.make(cfg.q, cfg.a, cfg.b)]
        return [HGParams.make(cfg.a, cfg.b)]
    rng = random.Random(cfg.seed)
    if cfg.qmode:
        return [sample_qshift_params(rng, cfg.r, cfg.q) for _ in range(cfg.samples)]
    return [sample_theta_params(rng, cfg.r) for _ in range(cfg.samples)]


# --------------------------------------------------------------------------
# serialization


def coeff_strings(poly):
    return [rat_str(c) for c in poly.coeffs]


def ratfunc_json(f):
    return {"num": coeff_strings(f.num), "den": coeff_strings(f.den)}


def ratfunc_text(f):
    return "num [%s] den [%s]" % (
        ", ".join(coeff_strings(f.num)),
        ", ".join(coeff_strings(f.den)),
    )


def tuple_text(values):
    return "(" + ", ".join(rat_str(x) for x in values) + ")"


def params_json(p, qmode):
    out = {
        "r": p.r,
        "a": [rat_str(x) for x in p.a],
        "b": [rat_str(x) for x in p.b],
    }
    if qmode:
        out["q"] = rat_str(p.q)
    return out


def params_text(p, qmode):
    line = "a = %s, b = %s" % (tuple_text(p.a), tuple_text(p.b))
    if qmode:
        line += ", q = %s" % rat_str(p.q)
    return line


def cell_json(cell):
    out = {"cell": list(cell.cell), "pass": cell.passed}
    if cell.expected is not None:
        out["expected"] = ratfunc_json(cell.expected)
    if cell.got_prefix is not None:
        out["got"] = [rat_str(c) for c in cell.got_prefix]
    return out


def report_json(cfg, p, order, report):
    return {
        "command": cfg.command,
        "params": params_json(p, cfg.qmode),
        "order": order,
        "results": [cell_json(c) for c in report.cells],
    }


def emit_json(payloads):
    """Single run prints the bare object; multi-sample runs print an array."""
    doc = payloads[0] if len(payloads) == 1 else payloads
    print(json.dumps(doc, indent=2))


# --------------------------------------------------------------------------
# subcommands


def _operator(cfg, p):
    return qhg_operator(p) if cfg.qmode else hg_operator(p)


def cmd_dual(cfg):
    payloads = []
    for p in resolve_params(cfg):
        op = _operator(cfg, p)
        star = q_dual_operator(op) if cfg.qmode else dual_operator(op)
        if cfg.qmode:
            dp, rho = qhg_dual_params(p)
            unit = q_dual_unit(p)
        else:
            dp, rho = hg_dual_params(p), None
            unit = rat(dual_unit(p.r))
        if cfg.output_format == "json":
            payload = {
                "command": cfg.command,
                "params": params_json(p, cfg.qmode),
                "operator": [ratfunc_json(c) for c in op.coeffs],
                "dual_operator": [ratfunc_json(c) for c in star.coeffs],
                "dual_params": params_json(dp, cfg.qmode),
                "unit": rat_str(unit),
            }
            if rho is not None:
                payload["rho"] = rat_str(rho)
            payloads.append(payload)
        else:
            print("parameters: %s" % params_text(p, cfg.qmode))
            print("operator:")
            for j, c in enumerate(op.coeffs):
                print("  A[%d] = %s" % (j, ratfunc_text(c)))
            print("dual operator:")
            for j, c in enumerate(star.coeffs):
                print("  A*[%d] = %s" % (j, ratfunc_text(c)))
            print("dual parameters:")
            print("  a' = %s" % tuple_text(dp.a))
            print("  b' = %s" % tuple_text(dp.b))
            print("unit = %s" % rat_str(unit))
            if rho is not None:
                print("rho = %s" % rat_str(rho))
    if cfg.output_format == "json":
        emit_json(payloads)
    return EXIT_PASS


def _psi_det_expected(cfg, p, op):
    """det Psi closed form: A_r^r, resp. (-1)^r shift(A_r, -1) prod shift(A_0, k)."""
    r = p.r
    if not cfg.qmode:
        acc = op.coefficient(r)
        for _ in range(r - 1):
            acc = acc * op.coefficient(r)
        return acc
    acc = op.coefficient(r).scale_arg(1 / p.q)
    if r % 2:
        acc = -acc
    power = Q(1)
    for _ in range(r - 1):
        acc = acc * op.coefficient(0).scale_arg(power)
        power *= p.q
    return acc


def cmd_psi(cfg):
    payloads = []
    failed = False
    for p in resolve_params(cfg):
        op = _operator(cfg, p)
        mat = psi_q_matrix(op) if cfg.qmode else psi_matrix(op)
        check = None
        if cfg.check:
            check = matrix_det(mat) == _psi_det_expected(cfg, p, op)
            failed = failed or not check
        if cfg.output_format == "json":
            payload = {
                "command": cfg.command,
                "params": params_json(p, cfg.qmode),
                "entries": [[ratfunc_json(e) for e in row] for row in mat],
            }
            if check is not None:
                payload["check"] = check
            payloads.append(payload)
        else:
            print("parameters: %s" % params_text(p, cfg.qmode))
            for k, row in enumerate(mat):
                for l, e in enumerate(row):
                    print("  Psi[%d][%d] = %s" % (k, l, ratfunc_text(e)))
            if check is not None:
                print("check det: %s" % ("pass" if check else "FAIL"))
    if cfg.output_format == "json":
        emit_json(payloads)
    return EXIT_MISMATCH if failed else EXIT_PASS


def cmd_matrix(cfg):
    payloads = []
    failed = False
    for p in resolve_params(cfg):
        op = _operator(cfg, p)
        if cfg.qmode:
            mat = q_duality_matrix(p)
            pairing = psi_q_matrix(op)
        else:
            mat = duality_matrix(p)
            pairing = psi_matrix(op)
        check = None
        if cfg.check:
            check = matrix_mul(mat, pairing) == matrix_identity(p.r)
            failed = failed or not check
        if cfg.output_format == "json":
            payload = {
                "command": cfg.command,
                "params": params_json(p, cfg.qmode),
                "entries": [[ratfunc_json(e) for e in row] for row in mat],
            }
            if check is not None:
                payload["check"] = check
            payloads.append(payload)
        else:
            print("parameters: %s" % params_text(p, cfg.qmode))
            for k, row in enumerate(mat):
                for l, e in enumerate(row):
                    print("  M[%d][%d] = %s" % (k, l, ratfunc_text(e)))
            if check is not None:
                print("check inverse: %s" % ("pass" if check else "FAIL"))
    if cfg.output_format == "json":
        emit_json(payloads)
    return EXIT_MISMATCH if failed else EXIT_PASS


def cmd_verify(cfg):
    order = cfg.order if cfg.order is not None else 4 * cfg.r + 8
    payloads = []
    all_passed = True
    for idx, p in enumerate(resolve_params(cfg)):
        report = (
            verify_theorem2(p, order) if cfg.qmode else verify_theorem1(p, order)
        )
        all_passed = all_passed and report.passed
        if cfg.output_format == "json":
            payloads.append(report_json(cfg, p, order, report))
        else:
            print("sample %d: %s" % (idx, params_text(p, cfg.qmode)))
            for cell in report.cells:
                print(
                    "  cell %s: %s" % (cell.label, "pass" if cell.passed else "FAIL")
                )
            print("sample %d result: %s" % (idx, "pass" if report.passed else "FAIL"))
    if cfg.output_format == "json":
        emit_json(payloads)
    else:
        print("overall: %s" % ("pass" if all_passed else "FAIL"))
    return EXIT_PASS if all_passed else EXIT_MISMATCH


# Embedded generic fixtures for the regression command: (a, b_head) tuples,
# plus identity samples. Heights are small so exact runs stay fast.
THETA_R2_FIXTURES = (
    (("1/2", "1/3"), ("1/5",)),
    (("1/3", "1/7"), ("2/5",)),
    (("2/3", "1/5"), ("3/7",)),
    (("1/4", "3/5"), ("5/6",)),
    (("2/7", "5/3"), ("1/2",)),
)
THETA_R3_FIXTURES = (
    (("1/2", "1/3", "3/7"), ("1/5", "5/3")),
    (("1/3", "1/7", "2/3"), ("2/5", "3/4")),
    (("1/4", "2/5", "5/6"), ("1/3", "5/7")),
    (("2/3", "1/5", "4/7"), ("1/2", "7/5")),
    (("3/5", "2/7", "5/2"), ("1/6", "4/3")),
)
QSHIFT_R2_FIXTURES = (
    ("1/2", ("1/3", "1/7"), ("1/5",)),
    ("1/2", ("2/5", "3/7"), ("1/3",)),
    ("2/3", ("1/3", "1/7"), ("1/5",)),
    ("2/3", ("2/5", "3/7"), ("1/3",)),
    ("1/2", ("3/5", "5/7"), ("2/7",)),
)
QSHIFT_R3_FIXTURES = (
    ("1/2", ("1/3", "1/7", "2/3"), ("1/5", "3/7")),
    ("1/2", ("2/5", "3/7", "4/5"), ("1/3", "2/7")),
    ("2/3", ("1/3", "1/7", "2/5"), ("1/5", "3/5")),
    ("2/3", ("2/5", "3/5", "1/7"), ("1/2", "5/7")),
    ("1/2", ("1/5", "2/7", "3/4"), ("2/5", "5/6")),
)
EULER_FIXTURES = (
    ("1/2", "1/3", "1/5"),
    ("1/3", "1/7", "2/5"),
    ("2/3", "1/5", "3/7"),
    ("1/4", "3/5", "5/6"),
    ("2/7", "5/3", "1/2"),
)
HEINE_FIXTURES = (
    ("1/3", "1/7", "1/5", "1/2"),
    ("2/5", "3/7", "1/3", "2/3"),
    ("3/5", "5/7", "2/7", "1/2"),
    ("1/3", "1/7", "1/5", "2/3"),
    ("2/5", "5/9", "4/7", "1/2"),
)


def _matrix_cases():
    for i, (a, bh) in enumerate(THETA_R2_FIXTURES):
        p = HGParams.make([rat(x) for x in a], [rat(x) for x in bh])
        yield "m-r2", i, duality_matrix(p), closed_form_m_r2(p)
    for i, (a, bh) in enumerate(THETA_R3_FIXTURES):
        p = HGParams.make([rat(x) for x in a], [rat(x) for x in bh])
        yield "m-r3", i, duality_matrix(p), closed_form_m_r3(p)
    for i, (q, a, bh) in enumerate(QSHIFT_R2_FIXTURES):
        p = QHGParams.make(rat(q), [rat(x) for x in a], [rat(x) for x in bh])
        yield "mq-r2", i, q_duality_matrix(p), closed_form_mq_r2(p)
    for i, (q, a, bh) in enumerate(QSHIFT_R3_FIXTURES):
        p = QHGParams.make(rat(q), [rat(x) for x in a], [rat(x) for x in bh])
        yield "mq-r3", i, q_duality_matrix(p), closed_form_mq_r3(p)


def cmd_paper_regression(cfg):
    order = cfg.order if cfg.order is not None else 40
    results = []
    for case, i, computed, closed in _matrix_cases():
        r = len(computed)
        for k in range(r):
            for l in range(r):
                results.append(
                    {
                        "case": case,
                        "sample": i,
                        "cell": [k, l],
                        "pass": computed[k][l] == closed[k][l],
                    }
                )
    for i, (a1, a2, b1) in enumerate(EULER_FIXTURES):
        report = verify_euler_identity(rat(a1), rat(a2), rat(b1), order)
        for cell in report.cells:
            entry = {"case": "euler", "sample": i}
            entry.update(cell_json(cell))
            results.append(entry)
    for i, (a1, a2, b1, q) in enumerate(HEINE_FIXTURES):
        report = verify_heine_identity(rat(a1), rat(a2), rat(b1), rat(q), order)
        for cell in report.cells:
            entry = {"case": "heine", "sample": i}
            entry.update(cell_json(cell))
            results.append(entry)
    all_passed = all(r["pass"] for r in results)
    if cfg.output_format == "json":
        print(
            json.dumps(
                {"command": cfg.command, "order": order, "results": results},
                indent=2,
            )
        )
    else:
        by_case = {}
        for r in results:
            by_case.setdefault(r["case"], []).append(r)
        for case, rows in by_case.items():
            bad = [r for r in rows if not r["pass"]]
            print(
                "case %s: %s (%d checks)"
                % (case, "pass" if not bad else "FAIL", len(rows))
            )
            for r in bad:
                print("  FAIL sample %d cell %s" % (r["sample"], r["cell"]))
        print("overall: %s" % ("pass" if all_passed else "FAIL"))
    return EXIT_PASS if all_passed else EXIT_MISMATCH


# --------------------------------------------------------------------------
# argument parsing


def _rational_arg(text):
    try:
        return rat(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError("not a rational literal: %r" % text)


def _rational_list_arg(text):
    return tuple(_rational_arg(part) for part in text.split(","))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hgdual",
        description="Exact duality computations for generalized and basic "
        "hypergeometric operators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    param_commands = ("dual", "psi", "matrix", "verify")
    for name in param_commands + ("paper-regression",):
        s = sub.add_parser(name)
        if name in param_commands:
            mode = s.add_mutually_exclusive_group(required=True)
            mode.add_argument(
                "--hg", action="store_true", help="differential (theta) family"
            )
            mode.add_argument(
                "--qhg", action="store_true", help="q-shift family (needs --q)"
            )
            s.add_argument("-r", type=int, default=2, help="operator order")
            s.add_argument(
                "--a",
                type=_rational_list_arg,
                default=(),
                help="comma-separated upper parameters",
            )
            s.add_argument(
                "--b",
                type=_rational_list_arg,
                default=(),
                help="comma-separated lower parameters (last one is implied)",
            )
            s.add_argument("--q", type=_rational_arg, default=None, help="base")
            s.add_argument("--samples", type=int, default=1)
            s.add_argument("--seed", type=int, default=0)
        s.add_argument("--order", type=int, default=None)
        s.add_argument(
            "--format",
            dest="output_format",
            choices=("text", "json"),
            default="text",
        )
        s.add_argument("--check", action="store_true")
    return parser


def config_from_args(parser, args):
    if args.command == "paper-regression":
        return RunConfig(
            command=args.command,
            qmode=False,
            r=0,
            a=(),
            b=(),
            q=None,
            order=args.order,
            samples=0,
            seed=0,
            output_format=args.output_format,
            check=args.check,
        )
    if args.qhg and args.q is None:
        parser.error("--qhg requires --q")
    if not args.qhg and args.q is not None:
        parser.error("--q requires --qhg")
    r = len(args.a) if args.a else args.r
    if args.a and len(args.b) != r - 1:
        parser.error("--b must list exactly r-1 lower parameters")
    if args.b and not args.a:
        parser.error("--b requires --a")
    if args.samples < 1:
        parser.error("--samples must be positive")
    return RunConfig(
        command=args.command,
        qmode=args.qhg,
        r=r,
        a=args.a,
        b=args.b,
        q=args.q,
        order=args.order,
        samples=args.samples,
        seed=args.seed,
        output_format=args.output_format,
        check=args.check,
    )


COMMANDS = {
    "dual": cmd_dual,
    "psi": cmd_psi,
    "matrix": cmd_matrix,
    "verify": cmd_verify,
    "paper-regression": cmd_paper_regression,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = config_from_args(parser, args)
    try:
        return COMMANDS[cfg.command](cfg)
    except (DegenerateParameters, DegenerateOperator) as exc:
        print("degenerate parameters: %s" % exc, file=sys.stderr)
        return EXIT_DEGENERATE
    except InsufficientPrecision as exc:
        print(
            "order %d is below the certified minimum; rerun with --order %d"
            % (exc.order, exc.minimum),
            file=sys.stderr,
        )
        return EXIT_PRECISION


if __name__ == "__main__":
    sys.exit(main())
