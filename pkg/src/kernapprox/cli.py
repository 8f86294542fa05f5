"""Command-line front end: error tables, optimal polynomials, verification.

Four commands:

    error-table     exact error E_n (and E_n**2) for each requested n
    extremal        coefficients of the optimal polynomial plus E_n
    verify          run the full invariant battery at the given parameters
    identity-check  basis identity and cross-integral checks on built-in data

Reports go to standard output (or --out) as JSON or CSV with fixed key
order and round-trip-exact floats, so a fixed configuration produces
byte-identical output.  Exit codes: 0 success, 2 invalid input (message on
standard error), 3 verification failure (report still emitted).
Diagnostics are plain text; NO_COLOR is honored trivially.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .basis import BasisContext, dzhrbashyan_residual, eval_blaschke
from .closedform import (
    cross_integral,
    error_squared,
    error_squared_general,
    laguerre_identity_gap,
    residue_coefficients,
)
from .errors import ConvergenceError, IllConditionedError
from .extremal import extremal_poly
from .kernel import (
    KernelParams,
    PoleSequence,
    WeightSpec,
    _powi,
    eval_kernel,
    eval_R,
    eval_tau,
    mu_n,
)
from .oracle import basis_gram, integrate_real_line, ls_best_poly
from .symmetric import nu, nu_bruteforce

_BUILTIN_POLES = PoleSequence((0.4 + 0.9j, -0.7 + 1.3j, 1.1 + 0.6j))
_BATTERY_SEED = 20240809


class CliInputError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kernapprox",
        description=(
            "Best weighted mean-square polynomial approximation of kernels "
            "(A + B*t)/(t**2 + lambda**2)**(s+1) on the real line: exact "
            "errors, optimal polynomials, and oracle verification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_params: bool):
        if with_params:
            p.add_argument("--A", nargs=2, type=float, default=[1.0, 0.0],
                           metavar=("RE", "IM"), help="kernel numerator constant A")
            p.add_argument("--B", nargs=2, type=float, default=[0.0, 0.0],
                           metavar=("RE", "IM"), help="kernel numerator slope B")
            p.add_argument("--lambda", dest="lam", type=float, default=1.0,
                           help="kernel pole height, > 0")
            p.add_argument("--s", type=int, default=1, help="kernel order, integer >= 1")
            p.add_argument("--poles", type=str, default=None,
                           help="pole file: one 're im' pair per line, '#' comments")
            p.add_argument("--pole", nargs=2, type=float, action="append", default=None,
                           metavar=("RE", "IM"), help="inline pole (repeatable)")
            p.add_argument("--n-list", type=str, default=None,
                           help="comma-separated n values; each uses the first n poles")
            p.add_argument("--rho0", nargs=2, type=float, default=[1.0, 0.0],
                           metavar=("RE", "IM"), help="leading weight constant, nonzero")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--rel-tol", type=float, default=1e-6,
                       help="pass threshold for closed-form vs oracle gaps")
        p.add_argument("--out", type=str, default=None,
                       help="write the report to this path instead of stdout")

    p_table = sub.add_parser("error-table", help="exact errors for each n")
    add_common(p_table, with_params=True)
    p_table.add_argument("--verify", action="store_true",
                         help="also run the least-squares oracle and report gaps")

    p_ext = sub.add_parser("extremal", help="optimal polynomial coefficients")
    add_common(p_ext, with_params=True)
    p_ext.add_argument("--verify", action="store_true",
                       help="also compare coefficients against the oracle")

    p_verify = sub.add_parser("verify", help="full invariant battery")
    add_common(p_verify, with_params=True)

    p_ident = sub.add_parser("identity-check", help="built-in identity sample")
    add_common(p_ident, with_params=False)
    return parser


def _parse_pole_file(path: str) -> list:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliInputError(f"cannot read pole file {path}: {exc}") from exc
    poles = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise CliInputError(f"{path}:{lineno}: expected 're im', got {raw!r}")
        try:
            poles.append(complex(float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise CliInputError(f"{path}:{lineno}: {exc}") from exc
    return poles


def _resolve_inputs(args):
    if args.poles is not None and args.pole:
        raise CliInputError("give poles either inline (--pole) or via --poles, not both")
    if args.poles is not None:
        raw_poles = _parse_pole_file(args.poles)
    elif args.pole:
        raw_poles = [complex(re, im) for re, im in args.pole]
    else:
        raise CliInputError("no poles given; use --pole RE IM or --poles FILE")
    try:
        poles = PoleSequence(tuple(raw_poles))
        params = KernelParams(
            complex(args.A[0], args.A[1]), complex(args.B[0], args.B[1]), args.lam, args.s
        )
        weight = WeightSpec(complex(args.rho0[0], args.rho0[1]), poles)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    if args.n_list is not None:
        try:
            n_list = [int(part) for part in args.n_list.split(",") if part.strip()]
        except ValueError as exc:
            raise CliInputError(f"bad --n-list: {exc}") from exc
        if not n_list:
            raise CliInputError("--n-list is empty")
        for n in n_list:
            if not 1 <= n <= poles.n:
                raise CliInputError(f"n = {n} outside 1..{poles.n} (number of poles)")
    else:
        n_list = [poles.n]
    return params, weight, n_list


def _pair(z: complex) -> list:
    return [z.real, z.imag]


def _config_dict(args, params=None, weight=None, n_list=None) -> dict:
    config = {"command": args.command}
    if params is not None:
        config["A"] = _pair(params.A)
        config["B"] = _pair(params.B)
        config["lambda"] = params.lam
        config["s"] = params.s
        config["poles"] = [_pair(a) for a in weight.poles.poles]
        config["n_list"] = n_list
        config["rho0"] = _pair(weight.rho0)
    config["format"] = args.format
    config["rel_tol"] = args.rel_tol
    return config


def _check(name: str, value: float, threshold: float) -> dict:
    return {
        "name": name,
        "passed": bool(value <= threshold),
        "value": float(value),
        "threshold": float(threshold),
    }


def _failed_check(name: str, reason: str) -> dict:
    return {"name": f"{name} [{reason}]", "passed": False, "value": math.inf,
            "threshold": 0.0}


def _rel_gap(value: float, reference: float) -> float:
    if reference == 0.0:
        return abs(value)
    return abs(value - reference) / abs(reference)


def _exact_error_squared(params, weight) -> float:
    if params.has_real_AB:
        return error_squared(params, weight)
    return error_squared_general(params, weight)


def _run_error_table(args, params, weight, n_list):
    results, checks = [], []
    for n in n_list:
        sub_weight = WeightSpec(weight.rho0, weight.poles.prefix(n))
        e_sq = _exact_error_squared(params, sub_weight)
        row = {"n": n, "error": math.sqrt(e_sq), "error_squared": e_sq}
        if args.verify:
            try:
                fit = ls_best_poly(params, sub_weight)
                gap = _rel_gap(fit.error**2, e_sq)
                row["oracle_error_squared"] = fit.error**2
                row["rel_gap"] = gap
                checks.append(_check(f"oracle_error_gap_n{n}", gap, args.rel_tol))
            except (IllConditionedError, ConvergenceError) as exc:
                checks.append(_failed_check(f"oracle_error_gap_n{n}", str(exc)))
        results.append(row)
    return results, checks


def _run_extremal(args, params, weight, n_list):
    results, checks = [], []
    for n in n_list:
        sub_poles = weight.poles.prefix(n)
        sub_weight = WeightSpec(weight.rho0, sub_poles)
        poly = extremal_poly(params, sub_poles)
        e_sq = _exact_error_squared(params, sub_weight)
        row = {
            "n": n,
            "coefficients": [_pair(c) for c in poly.coeffs],
            "error": math.sqrt(e_sq),
        }
        if args.verify:
            try:
                fit = ls_best_poly(params, sub_weight)
                scale = 1.0 + max(
                    float(np.max(np.abs(poly.coeffs_array()))),
                    float(np.max(np.abs(fit.poly.coeffs_array()))),
                )
                gap = float(np.max(np.abs(poly.coeffs_array() - fit.poly.coeffs_array())))
                row["oracle_coeff_gap"] = gap
                checks.append(_check(f"oracle_coeff_gap_n{n}", gap / scale, args.rel_tol))
            except (IllConditionedError, ConvergenceError) as exc:
                checks.append(_failed_check(f"oracle_coeff_gap_n{n}", str(exc)))
        results.append(row)
    return results, checks


def _identity_checks(poles: PoleSequence, lams, rng) -> list:
    checks = []
    worst = 0.0
    for convention in ("standard", "all_ones"):
        ctx = BasisContext(poles, convention)
        for _ in range(25):
            z = complex(rng.uniform(-3, 3), rng.uniform(0.1, 3))
            zeta = complex(rng.uniform(-3, 3), rng.uniform(0.1, 3))
            m = int(rng.integers(1, poles.n + 1))
            lhs = abs(1.0 / (2j * (zeta.conjugate() - z)))
            worst = max(worst, dzhrbashyan_residual(ctx, z, zeta, m) / (1.0 + lhs))
    checks.append(_check("dzhrbashyan_residual", worst, 1e-10))

    worst = 0.0
    for lam in lams:
        for k in range(5):
            for j in range(5 - k):
                exact = cross_integral(k, j, lam)
                quad = integrate_real_line(
                    lambda t, k=k, j=j, lam=lam: 1.0
                    / (_powi(1j * lam - t, k + 1) * _powi(-1j * lam - t, j + 1))
                )
                worst = max(worst, abs(quad - exact) / abs(exact))
    checks.append(_check("cross_integral_vs_quadrature", worst, 1e-9))

    gram = basis_gram(BasisContext(poles))
    gap = float(np.max(np.abs(gram - np.eye(poles.n))))
    checks.append(_check("basis_orthonormality", gap, 1e-8))
    return checks


def _verification_checks(args, params, weight) -> list:
    rng = np.random.default_rng(_BATTERY_SEED)
    poles = weight.poles
    lam, s = params.lam, params.s
    conj_poles = poles.conjugated()
    checks = []

    sample_z = [0.3 + 0.7j, -1.2 + 0.4j, 2.5 + 1.5j, 0.9j, 0.7 + 0j, -2.3 + 0j]
    worst = 0.0
    for z in sample_z:
        k_val = eval_kernel(params, z)
        r_val = eval_R(params, poles, z) * eval_tau(z, conj_poles)
        worst = max(worst, abs(k_val - r_val) / max(1e-300, abs(k_val)))
    checks.append(_check("kernel_factorization", worst, 1e-13))

    mu = mu_n(lam, poles)
    checks.append(_check("mu_product_identity",
                         abs(mu - abs(eval_tau(1j * lam, conj_poles)) ** 2) / mu, 1e-13))

    ts = rng.uniform(-100.0, 100.0, size=200)
    ctx = BasisContext(poles)
    worst = 0.0
    for j in range(1, poles.n + 2):
        worst = max(worst, float(np.max(np.abs(np.abs(eval_blaschke(ctx, j, ts)) - 1.0))))
    checks.append(_check("blaschke_unimodular", worst, 1e-12))

    worst = 0.0
    for convention in ("standard", "all_ones"):
        bctx = BasisContext(poles, convention)
        for _ in range(25):
            z = complex(rng.uniform(-3, 3), rng.uniform(0.1, 3))
            zeta = complex(rng.uniform(-3, 3), rng.uniform(0.1, 3))
            m = int(rng.integers(1, poles.n + 1))
            lhs = abs(1.0 / (2j * (zeta.conjugate() - z)))
            worst = max(worst, dzhrbashyan_residual(bctx, z, zeta, m) / (1.0 + lhs))
    checks.append(_check("dzhrbashyan_residual", worst, 1e-10))

    n_gram = min(poles.n, 6)
    gram = basis_gram(BasisContext(poles.prefix(n_gram)))
    checks.append(_check("basis_orthonormality",
                         float(np.max(np.abs(gram - np.eye(n_gram)))), 1e-8))

    worst = 0.0
    pts = poles.prefix(min(poles.n, 5)).poles
    for k in range(min(8, 2 * s) + 1):
        for z in (1j * lam, 2.0 + 1.5j):
            fast = nu(k, z, pts)
            slow = nu_bruteforce(k, z, pts)
            worst = max(worst, abs(fast - slow) / (1.0 + abs(fast)))
    checks.append(_check("nu_recurrence_vs_bruteforce", worst, 1e-12))

    rc = residue_coefficients(params, poles)
    tau_up = eval_tau(1j * lam, conj_poles)
    worst = 0.0
    for l in range(s + 1):
        lhs = rc.D[l] * tau_up * _powi(2.0 * lam, s + 1 - l)
        rhs = _powi(1j, l) * rc.G[l]
        worst = max(worst, abs(lhs - rhs) / max(1e-300, abs(rhs)))
    checks.append(_check("dg_consistency", worst, 1e-12))

    if params.has_real_AB:
        worst = 0.0
        for l in range(s + 1):
            worst = max(worst, abs(rc.D_lower[l] - rc.D[l].conjugate())
                        / max(1e-300, abs(rc.D[l])))
        checks.append(_check("lower_coeff_conjugation", worst, 1e-12))

        e_real = error_squared(params, weight)
        e_gen = error_squared_general(params, weight)
        checks.append(_check("error_general_matches", _rel_gap(e_gen, e_real), 1e-12))

    bilinear = sum(
        math.comb(l + k, l) * rc.G[k] * rc.G[l].conjugate()
        for k in range(s + 1) for l in range(s + 1)
    )
    checks.append(_check("laguerre_identity_gap",
                         laguerre_identity_gap(rc.G) / (1.0 + abs(bilinear)), 1e-10))

    worst = 0.0
    for k in range(4):
        for j in range(4 - k):
            exact = cross_integral(k, j, lam)
            quad = integrate_real_line(
                lambda t, k=k, j=j: 1.0
                / (_powi(1j * lam - t, k + 1) * _powi(-1j * lam - t, j + 1))
            )
            worst = max(worst, abs(quad - exact) / abs(exact))
    checks.append(_check("cross_integral_vs_quadrature", worst, 1e-9))

    e_sq = _exact_error_squared(params, weight)
    try:
        fit = ls_best_poly(params, weight)
        checks.append(_check("closed_vs_oracle_error",
                             _rel_gap(fit.error**2, e_sq), args.rel_tol))
        poly = extremal_poly(params, poles)
        scale = 1.0 + float(np.max(np.abs(poly.coeffs_array())))
        gap = float(np.max(np.abs(poly.coeffs_array() - fit.poly.coeffs_array())))
        checks.append(_check("extremal_vs_oracle_poly", gap / scale, args.rel_tol))

        def weight_fn(t):
            return 1.0 / weight.rho_abs_sq(t)

        error_norm = max(fit.error, 1e-300)
        worst = 0.0
        for k in range(poles.n):
            inner = integrate_real_line(
                lambda t, k=k: (eval_kernel(params, t) - poly(t)) * t**k * weight_fn(t)
            )
            basis_norm = math.sqrt(
                integrate_real_line(lambda t, k=k: t ** (2 * k) * weight_fn(t)).real
            )
            worst = max(worst, abs(inner) / (error_norm * basis_norm))
        checks.append(_check("residual_orthogonality", worst, 1e-8))
    except (IllConditionedError, ConvergenceError) as exc:
        checks.append(_failed_check("closed_vs_oracle_error", str(exc)))
    return checks


def execute(args) -> dict:
    if args.command == "identity-check":
        config = _config_dict(args)
        rng = np.random.default_rng(_BATTERY_SEED)
        checks = _identity_checks(_BUILTIN_POLES, (0.5, 1.0, 2.0), rng)
        return {"config": config, "results": [], "checks": checks}

    params, weight, n_list = _resolve_inputs(args)
    config = _config_dict(args, params, weight, n_list)
    if args.command == "error-table":
        results, checks = _run_error_table(args, params, weight, n_list)
    elif args.command == "extremal":
        results, checks = _run_extremal(args, params, weight, n_list)
    else:
        results, checks = [], _verification_checks(args, params, weight)
    return {"config": config, "results": results, "checks": checks}


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _render_csv(report: dict) -> str:
    command = report["config"]["command"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if command == "error-table":
        writer.writerow(["n", "error", "error_squared", "oracle_error_squared", "rel_gap"])
        for row in report["results"]:
            writer.writerow([
                row["n"], _fmt(row["error"]), _fmt(row["error_squared"]),
                _fmt(row["oracle_error_squared"]) if "oracle_error_squared" in row else "",
                _fmt(row["rel_gap"]) if "rel_gap" in row else "",
            ])
    elif command == "extremal":
        writer.writerow(["n", "index", "coeff_re", "coeff_im", "error"])
        for row in report["results"]:
            for idx, (re, im) in enumerate(row["coefficients"]):
                writer.writerow([row["n"], idx, _fmt(re), _fmt(im), _fmt(row["error"])])
    if report["checks"]:
        if report["results"]:
            buf.write("\n")
        writer.writerow(["check", "passed", "value", "threshold"])
        for chk in report["checks"]:
            writer.writerow([chk["name"], _fmt(chk["passed"]),
                             _fmt(chk["value"]), _fmt(chk["threshold"])])
    return buf.getvalue()


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    return _render_csv(report)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = execute(args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(report, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 3 if any(not chk["passed"] for chk in report["checks"]) else 0


if __name__ == "__main__":
    sys.exit(main())
