"""Command-line interface: ``flatwell estimate|table|sweep-beta|wavefunction``.

Reports go to stdout, diagnostics to stderr. Exit codes: 0 success, 1 usage
error, 2 domain error, 3 convergence error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .errors import ConvergenceError, DomainError
from .known import lookup, relative_error
from .potential import (
    SQUARE_WELL,
    PhysicalConstants,
    ReducedProblem,
    make_power_potential,
    reduce,
)
from .reference import auto_domain, ground_wavefunction, solve_ground_state, symmetric_nodes
from .trial import (
    beta_for,
    coefficient,
    coefficient_from_reduced,
    energy_matched,
    energy_optimized,
    matched_alpha,
    optimize_alpha,
    sample_trial,
)

EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_CONVERGENCE = 3

TABLE_COLUMNS = (
    "N", "beta", "C_trial_gamma", "C_trial_quadrature", "C_optimized",
    "C_reference", "C_known", "rel_error_vs_reference",
)
SWEEP_COLUMNS = ("beta", "C", "C_over_beta")
WAVEFUNCTION_COLUMNS = ("z", "psi")
ESTIMATE_COLUMNS = (
    "N", "beta", "method", "coefficient_C", "kinetic_exponent", "potential_exponent",
    "reduced_energy", "physical_energy", "error_bound",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return f"{value:.9g}"


def _json_value(value):
    if value is None or isinstance(value, str):
        return value
    value = float(f"{value:.9g}")
    return value if math.isfinite(value) else None


def render(rows: list[dict], columns, fmt: str) -> str:
    if fmt == "json":
        data = [{k: _json_value(row[k]) for k in columns} for row in rows]
        return json.dumps(data, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[k]) for k in columns])
    return buf.getvalue()


def _parse_exponent(token: str) -> float | str:
    token = token.strip()
    if token.lower() == SQUARE_WELL:
        return SQUARE_WELL
    try:
        return float(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number or '{SQUARE_WELL}': {token!r}")


def _parse_exponent_list(text: str) -> list[float | str]:
    tokens = [t for t in text.split(",") if t.strip()]
    if not tokens:
        raise argparse.ArgumentTypeError("empty --n-list")
    return [_parse_exponent(t) for t in tokens]


def cmd_estimate(args) -> str:
    if args.n == SQUARE_WELL:
        raise DomainError("estimate needs a numeric exponent N >= 2")
    potential = make_power_potential(args.mu, args.a, args.n)
    rp = reduce(potential, PhysicalConstants(args.hbar, args.mass))
    if args.method == "optimized":
        est = energy_optimized(rp)
    else:
        est = energy_matched(rp, args.method)
    row = {
        "N": rp.n, "beta": beta_for(rp.n), "method": est.method,
        "coefficient_C": est.coefficient_C,
        "kinetic_exponent": est.kinetic_exponent,
        "potential_exponent": est.potential_exponent,
        "reduced_energy": est.reduced_energy,
        "physical_energy": est.physical_energy,
        "error_bound": est.error_bound,
    }
    if args.format == "text":
        return "".join(f"{k} = {_fmt(row[k])}\n" for k in ESTIMATE_COLUMNS)
    if args.format == "json":
        return json.dumps({k: _json_value(row[k]) for k in ESTIMATE_COLUMNS}, indent=2) + "\n"
    return render([row], ESTIMATE_COLUMNS, "csv")


def table_row(n: float | str, tol: float = 1e-6) -> dict:
    """One comparison row at unit reduced coupling."""
    known = lookup(n)
    c_known = known.coefficient_C if known else None
    if n == SQUARE_WELL:
        ref = solve_ground_state(ReducedProblem.square_well(), tol)
        # E = C hbar^2/(m a^2) = 2 C eps0
        return {
            "N": SQUARE_WELL, "beta": None, "C_trial_gamma": None,
            "C_trial_quadrature": None, "C_optimized": None,
            "C_reference": ref.reduced_energy / 2.0, "C_known": c_known,
            "rel_error_vs_reference": None,
        }
    beta = beta_for(n)
    rp = ReducedProblem.power(1.0, n)
    c_gamma = coefficient(beta, "gamma")
    c_quad = coefficient(beta, "quadrature")
    _, e_opt = optimize_alpha(rp, beta)
    ref = solve_ground_state(rp, tol)
    c_ref = coefficient_from_reduced(ref.reduced_energy, 1.0, beta)
    return {
        "N": n, "beta": beta, "C_trial_gamma": c_gamma, "C_trial_quadrature": c_quad,
        "C_optimized": coefficient_from_reduced(e_opt, 1.0, beta),
        "C_reference": c_ref, "C_known": c_known,
        "rel_error_vs_reference": relative_error(c_gamma, c_ref),
    }


def cmd_table(args) -> str:
    return render([table_row(n, args.tol) for n in args.n_list], TABLE_COLUMNS, args.format)


def sweep_betas(beta_from: float, beta_to: float, step: float) -> list[float]:
    if not (math.isfinite(beta_from) and math.isfinite(beta_to) and math.isfinite(step)):
        raise DomainError("sweep bounds must be finite")
    if not (2.0 <= beta_from < beta_to) or step <= 0.0:
        raise DomainError("sweep needs 2 <= beta-from < beta-to and step > 0")
    count = math.floor((beta_to - beta_from) / step + 1e-9) + 1
    return [round(beta_from + k * step, 12) for k in range(count)]


def cmd_sweep_beta(args) -> str:
    rows = []
    for beta in sweep_betas(args.beta_from, args.beta_to, args.step):
        c = coefficient(beta, args.method)
        rows.append({"beta": beta, "C": c, "C_over_beta": c / beta})
    return render(rows, SWEEP_COLUMNS, args.format)


def cmd_wavefunction(args) -> str:
    if args.points < 16:
        raise DomainError("--points must be at least 16")
    if args.n == SQUARE_WELL:
        if args.source == "trial":
            raise DomainError("no trial wavefunction for the square well")
        rp = ReducedProblem.square_well()
        half_width = 1.0
    else:
        rp = ReducedProblem.power(args.mu, args.n)
        half_width = auto_domain(rp, energy_matched(rp).reduced_energy)
    if args.source == "reference":
        samples = ground_wavefunction(rp, half_width, args.points)
    else:
        grid = symmetric_nodes(2.0 * half_width / (args.points + 1), args.points)
        samples = sample_trial(matched_alpha(rp), beta_for(rp.n), 1.0, grid)
    rows = [{"z": z, "psi": v} for z, v in zip(samples.grid, samples.values)]
    return render(rows, WAVEFUNCTION_COLUMNS, args.format)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flatwell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("estimate", help="trial ground-state energy for one well")
    p.add_argument("--n", type=_parse_exponent, required=True)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--method", choices=("gamma", "quadrature", "optimized"), default="gamma")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("table", help="coefficient table with reference and known values")
    p.add_argument("--n-list", type=_parse_exponent_list, default=[2.0, 4.0, 6.0, 8.0])
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--tol", type=float, default=1e-6, help="reference solver tolerance")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("sweep-beta", help="coefficient C over a range of beta")
    p.add_argument("--beta-from", type=float, default=2.0)
    p.add_argument("--beta-to", type=float, default=20.0)
    p.add_argument("--step", type=float, default=1.0)
    p.add_argument("--method", choices=("gamma", "quadrature"), default="gamma")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep_beta)

    p = sub.add_parser("wavefunction", help="trial or reference ground-state samples")
    p.add_argument("--n", type=_parse_exponent, required=True)
    p.add_argument("--mu", type=float, default=1.0, help="reduced coupling mu_tilde")
    p.add_argument("--source", choices=("trial", "reference"), default="trial")
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_wavefunction)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except DomainError as exc:
        print(f"flatwell: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"flatwell: convergence error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    sys.stdout.write(report)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
