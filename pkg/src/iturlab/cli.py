"""Command-line front end: ``iturlab <command> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass

from . import epi, examples, itur_continuous, itur_discrete, matgeo, renyi
from .core import gaussian_density, gaussian_wavefunction
from .errors import (
    DomainError,
    GridError,
    IturError,
    NormalizationError,
    ParseError,
    QuadratureError,
    SingularMatrixError,
    UnsupportedNormPairError,
)
from .io import parse_distribution, read_density, read_grid, read_matrix

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_PARSE, EXIT_NUMERIC, EXIT_DOMAIN, EXIT_OTHER = range(7)

EPILOG = """\
exit status:
  0  every requested check holds
  1  a checked inequality is violated beyond --tolerance
  2  usage error (bad flags or values)
  3  an input file or list could not be parsed
  4  numerical failure (quadrature, aliasing, divergent entropy, singular matrix)
  5  domain error (parameter, norm pair or grid out of range, non-normalized input)
  6  any other iturlab error

environment:
  ITURLAB_THREADS  maximum worker threads for sweeps (default 1)

numbers are printed with 9 significant digits; entropies are in bits.
"""

COMMANDS = ("entropy", "epi", "matgeo", "itur-discrete", "itur-continuous", "example", "table1", "sweep")


@dataclass(frozen=True)
class RunConfig:
    command: str
    hbar: float = 1.0
    grid_points: int = 2**14
    tolerance: float = 1e-6
    output_path: str | None = None
    format: str = "csv"


def fmt_number(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float)):
        return f"{float(v):.9g}"
    return str(v)


def _json_value(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, (int, float)):
        f = float(v)
        return fmt_number(f) if not math.isfinite(f) else float(f"{f:.9g}")
    return v


def render(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        payload = [{k: _json_value(v) for k, v in r.items()} for r in records]
        return json.dumps(payload[0] if len(payload) == 1 else payload, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(records[0].keys()))
    for r in records:
        w.writerow([fmt_number(v) for v in r.values()])
    return buf.getvalue()


def _power_of_two(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 2**10 or n > 2**20 or n & (n - 1):
        raise argparse.ArgumentTypeError("grid points must be a power of two between 2^10 and 2^20")
    return n


def _positive(text: str) -> float:
    v = _extended(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _extended(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected two comma-separated exponents, e.g. 1,inf")
    return _extended(parts[0]), _extended(parts[1])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--hbar", type=_positive, default=1.0, help="reduced Planck constant (default 1)")
    common.add_argument("--grid-points", type=_power_of_two, default=2**14, help="grid size, 2^10..2^20 (default 2^14)")
    common.add_argument("--tolerance", type=_positive, default=1e-6, help="violation tolerance in bits (default 1e-6)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(
        prog="iturlab",
        description="Renyi entropies, entropy powers and entropic uncertainty relations.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_, epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)

    p = add("entropy", "Renyi entropy of a distribution or gridded density")
    p.add_argument("--alpha", type=_extended, default=1.0)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--dist", help="comma-separated probabilities")
    src.add_argument("--input", help="density CSV (x,value)")

    p = add("epi", "generalized entropy-power inequality for two densities")
    p.add_argument("--input", nargs=2, metavar=("F1", "F2"), help="two density CSVs with equal spacing (default: N(0,1), N(0,4))")
    p.add_argument("--r", type=_extended, default=1.0)
    p.add_argument("--lambda", dest="lam", type=_extended, help="weight in (0,1) (default: optimal)")

    p = add("matgeo", "mixed norm, condition number and overlap constant of a matrix")
    p.add_argument("--matrix", help="matrix CSV (default: the spin basis change)")
    p.add_argument("--pair", type=_pair, default=(1.0, math.inf), help="norm exponents alpha,beta (default 1,inf)")

    p = add("itur-discrete", "discrete Renyi uncertainty relation")
    p.add_argument("--dist1", required=True, help="distribution P1 (order 1+r)")
    p.add_argument("--dist2", required=True, help="distribution P2 (order 1+t)")
    p.add_argument("--r", type=_extended, default=0.0)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--c", type=_positive, help="overlap constant (default 1/sqrt(2))")
    g.add_argument("--matrix", help="basis-change matrix CSV; c = max |a_ij|")

    p = add("itur-continuous", "continuous uncertainty relation for a wave function")
    p.add_argument("--input", help="wave function CSV (x,re,im); default: Gaussian ground state")
    p.add_argument("--t", type=_extended, default=0.0)

    p = add("example", "built-in case studies")
    p.add_argument("name", choices=("cauchy", "regulated", "cat", "levy"))
    p.add_argument("--cutoff-R", type=_positive, help="regulator radius for 'regulated' (default: sweep 1e2..1e8)")
    p.add_argument("--beta-max", type=_positive, default=4.0, help="largest cat amplitude (default 4)")
    p.add_argument("--t", type=_extended, default=0.0, help="ITUR order for 'levy'")

    add("table1", "feasible q intervals for the two-level spin")

    p = add("sweep", "continuous ITUR over a grid of orders t")
    p.add_argument("--input", help="wave function CSV; default: Gaussian ground state")
    p.add_argument("--t", type=_extended, action="append", help="order (repeatable); default: 20-point grid")
    return parser


@contextmanager
def _executor():
    try:
        n = int(os.environ.get("ITURLAB_THREADS", "1"))
    except ValueError:
        n = 1
    if n <= 1:
        yield None
        return
    with ThreadPoolExecutor(max_workers=n) as ex:
        yield ex


# ---------------------------------------------------------------------------
# Commands: each returns (records, ok)
# ---------------------------------------------------------------------------


def cmd_entropy(a):
    if a.dist is not None:
        val = renyi.renyi_discrete(parse_distribution(a.dist), a.alpha)
    else:
        val = renyi.renyi_differential(read_density(a.input), a.alpha)
    return [{"alpha": a.alpha, "entropy_bits": val}], True


def cmd_epi(a):
    if a.input:
        F1, F2 = read_density(a.input[0]), read_density(a.input[1])
    else:
        n = a.grid_points
        F1 = gaussian_density(1.0, n=n, half_width=20.0)
        F2 = gaussian_density(2.0, n=n, half_width=20.0)
    lam = a.lam
    if lam is None:
        lam = epi.optimal_lambda(renyi.renyi_entropy_power(F1, 1.0), renyi.renyi_entropy_power(F2, 1.0))
    rep = epi.check_generalized_epi(F1, F2, lam, a.r)
    return [{**rep.to_dict(), "q": rep.q, "p": rep.p, "r": rep.r}], rep.holds


def cmd_matgeo(a):
    A = read_matrix(a.matrix) if a.matrix else matgeo.SPIN_BASIS_CHANGE
    al, be = a.pair
    c = matgeo.overlap_bound_c(A)
    rec = {"alpha": al, "beta": be, "norm": matgeo.mixed_norm(A, al, be), "c": c, "itur_bound_bits": itur_discrete.itur_bound(c)}
    if A.rows == A.cols:
        rec["kappa"] = matgeo.condition_number(A, al, be)
        rec["dist"] = matgeo.distance_to_singularity(A, al, be)
    rec["unitarity_defect"] = A.unitarity_defect() if A.rows == A.cols else math.nan
    return [rec], True


def cmd_itur_discrete(a):
    P1 = parse_distribution(a.dist1)
    P2 = parse_distribution(a.dist2)
    if a.matrix:
        c = matgeo.overlap_bound_c(read_matrix(a.matrix))
    else:
        c = a.c if a.c is not None else 1.0 / math.sqrt(2.0)
    rep = itur_discrete.check_renyi_itur(P1, P2, a.r, c, tolerance=a.tolerance)
    t = itur_discrete.itur_pair(a.r).t
    return [{"t": t, "r": a.r, "lhs_bits": rep.lhs, "bound_bits": rep.bound, "slack_bits": rep.slack, "holds": rep.holds}], rep.holds


def _wavefunction(a):
    if a.input:
        psi = read_grid(a.input, a.hbar)
        if not hasattr(psi, "amplitudes"):
            raise ParseError("a wave function file (x,re,im) is required")
        return psi
    return gaussian_wavefunction(hbar=a.hbar, n=a.grid_points)


def cmd_itur_continuous(a):
    psi = _wavefunction(a)
    rep = itur_continuous.check_continuous_itur(psi, a.t, tolerance=a.tolerance)
    r = itur_continuous.itur_pair(a.t).t
    rec = {
        "t": a.t,
        "r": r,
        "lhs_bits": rep.lhs,
        "strong_bound_bits": rep.bound,
        "weak_bound_bits": rep.weak_bound,
        "slack_bits": rep.slack,
        "holds": rep.holds,
    }
    return [rec], rep.holds


def cmd_sweep(a):
    psi = _wavefunction(a)
    Fx = psi.density()
    Fp = itur_continuous.momentum_density(psi)
    with _executor() as ex:
        rows = itur_continuous.sweep_continuous(Fx, Fp, a.t, psi.hbar, executor=ex)
    recs = [r._asdict() for r in rows]
    return recs, all(r.slack_bits >= -a.tolerance for r in rows)


def cmd_table1(a):
    return itur_discrete.table1_records(), True


def cmd_example(a):
    params = examples.CauchyParams(hbar=a.hbar)
    if a.name == "cauchy":
        Fx, Fp = examples.cauchy_pdfs(params, n=max(a.grid_points, 2**15))
        closed = examples.cauchy_closed_entropies(params)
        quad = {
            "Hpos": renyi.renyi_differential(Fx, 1.0),
            "Hmom": renyi.renyi_differential(Fp, 1.0),
            "Ihalf_mom": renyi.renyi_differential(Fp, 0.5),
            "Iinf_pos": renyi.renyi_differential(Fx, math.inf),
        }
        recs = [{"quantity": k, "closed_bits": getattr(closed, k), "quadrature_bits": v} for k, v in quad.items()]
        s = quad["Ihalf_mom"] + quad["Iinf_pos"]
        weak = itur_continuous.weak_bound(1, a.hbar)
        h = quad["Hpos"] + quad["Hmom"]
        ok = s >= weak - a.tolerance and h >= itur_continuous.bb_rhs(0.0, 1, a.hbar) - a.tolerance
        return recs, ok
    if a.name == "regulated":
        ratios = None if a.cutoff_R is None else [a.cutoff_R / params.c]
        rows = examples.regulated_table(params, ratios)
        return [dict(zip(examples.REGULATED_HEADER, r)) for r in rows], True
    if a.name == "cat":
        n_beta = 40
        betas = [a.beta_max * k / (n_beta - 1) for k in range(n_beta)]
        with _executor() as ex:
            rows = examples.cat_itur_curves(betas, executor=ex)
        ok = all(
            r.shannon_sum >= r.shannon_bound - a.tolerance and r.renyi_iii >= r.renyi_bound - a.tolerance for r in rows
        )
        return [r._asdict() for r in rows], ok
    # levy
    psi = examples.levy_smirnov_wavefunction(hbar=a.hbar, n=max(a.grid_points, 2**17))
    rep = itur_continuous.check_continuous_itur(psi, a.t, tolerance=a.tolerance, tail_tol=1.0)
    rec = {"t": a.t, "lhs_bits": rep.lhs, "strong_bound_bits": rep.bound, "weak_bound_bits": rep.weak_bound, "slack_bits": rep.slack, "holds": rep.holds}
    return [rec], rep.holds


HANDLERS = {
    "entropy": cmd_entropy,
    "epi": cmd_epi,
    "matgeo": cmd_matgeo,
    "itur-discrete": cmd_itur_discrete,
    "itur-continuous": cmd_itur_continuous,
    "example": cmd_example,
    "table1": cmd_table1,
    "sweep": cmd_sweep,
}


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, (QuadratureError, SingularMatrixError, ArithmeticError)):
        return EXIT_NUMERIC
    if isinstance(exc, (DomainError, GridError, NormalizationError, UnsupportedNormPairError)):
        return EXIT_DOMAIN
    return EXIT_OTHER


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        records, ok = HANDLERS[a.command](a)
    except (IturError, OSError) as exc:
        print(f"iturlab: error: {exc}", file=stderr)
        if isinstance(exc, OSError):
            return EXIT_PARSE
        return exit_code_for(exc)
    text = render(records, a.format)
    if a.output:
        with open(a.output, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if not ok:
        print("iturlab: inequality violated beyond tolerance", file=stderr)
    return EXIT_OK if ok else EXIT_VIOLATION


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
