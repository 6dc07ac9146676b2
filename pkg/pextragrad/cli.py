"""
Command line front end: single solves, the benchmark sweeps and the solution
verifier. Every command writes CSV (UTF-8, LF, full-precision floats) to
--out or to stdout.
"""
import argparse
import concurrent.futures
import csv
import io
import logging
import os
import re
import sys

import numpy as np

from pextragrad import __version__
from pextragrad.config import RunConfig, load_config_file, normalize_key
from pextragrad.core import as_point, check_feasible, natural_residual
from pextragrad.errors import PextragradError, ReferenceSolutionError, UsageError
from pextragrad.extragradient import EInexPMConfig, Status, einexpm_solve, solve
from pextragrad.oracles import brute_force_vi_check
from pextragrad.problems import get_problem, linear_saddle_operator, th_operator

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NOT_CONVERGED = 3
EXIT_REFERENCE = 4

THREADS_ENV = "VIP_EXTRAGRAD_THREADS"

TRACE_HEADER = ("k", "dist_ref", "step_norm", "gamma_k", "lambda_k", "i_k", "fw_iters")
TABLE1_HEADER = ("alpha", "gamma_bar", "outer_steps", "fw_total")
TABLE3_HEADER = ("d", "p", "iterations")
FIGURE1_HEADER = ("gamma_bar", "k")
FIGURE2_HEADER = ("k", "dist_ref", "i_k", "lambda_k")
FIGURE3_HEADER = ("k", "dist_ref", "step_norm")

# alpha -> the gamma_bar values tabulated for it
TABLE1_GRID = (
    (0.01, (0.01, 0.106, 0.49)),
    (0.11, (0.01, 0.106, 0.394)),
    (0.21, (0.01, 0.106, 0.394)),
    (0.31, (0.01, 0.106, 0.298)),
    (0.41, (0.01, 0.106)),
)
TABLE1_B_BAR = 1.0
TABLE1_OUTER_TOL = 1e-4

TABLE3_DIMS = tuple(range(5, 21)) + (25, 50, 100)
TABLE3_POWERS = (10.0, 15.0)
TABLE3_H = 0.2
TABLE3_REF_TOL = 1e-2
TABLE3_MAX_OUTER = 20000

FIGURE1_PROBLEM = "linear-saddle"
# near-exact projections to set against the problem's own gamma_bar
FIGURE1_EXACT_GAMMA_BAR = 1e-8
FIGURE2_PROBLEM = "non-lipschitz"
FIGURE3_PROBLEM = "th:d=5,p=10,h=0.6,denominator=0"
FIGURE3_STEPS = 29

VERIFY_TOL = 1e-6


def format_value(value):
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return repr(float(value))


def write_csv(path, header, rows):
    handle = sys.stdout if path in (None, "-") else io.open(path, "w", encoding="utf-8", newline="")
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(value) for value in row])
    finally:
        if handle is not sys.stdout:
            handle.close()


def thread_count():
    value = os.environ.get(THREADS_ENV)
    if not value:
        return os.cpu_count() or 1
    try:
        count = int(value)
    except ValueError:
        raise UsageError("%s must be a positive integer, got %r" % (THREADS_ENV, value))
    if count < 1:
        raise UsageError("%s must be a positive integer, got %r" % (THREADS_ENV, value))
    return count


def run_cells(func, cells):
    """Runs func on every cell with at most thread_count() workers, keeping the input order."""
    cells = list(cells)
    workers = max(1, min(thread_count(), len(cells)))
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, cells))


def configure_logging(cfg):
    logging.basicConfig(filename=cfg.log_file, level=logging.DEBUG if cfg.verbose else logging.WARNING,
                        format="%(asctime)s %(levelname)s %(message)s")


def iterate_columns(dim):
    return tuple("x_%d" % i for i in range(1, dim + 1)) + tuple("y_%d" % i for i in range(1, dim + 1))


def iterate_values(record, dim):
    y = (None,) * dim if record.y_k is None else tuple(record.y_k)
    return tuple(record.x_k) + y


def trace_rows(trace, dim):
    for record in trace.records:
        yield (record.k, record.dist_to_ref, record.step_norm, record.gamma_k, record.lambda_k, record.i_k,
               record.fw_iters) + iterate_values(record, dim)


def summary_line(trace):
    return "status=%s outer=%d fw_total=%d residual=%.6g" % (trace.status.value, trace.outer_steps,
                                                             trace.fw_total, trace.residual)


def cmd_solve(cfg):
    problem = get_problem(cfg.problem_name())
    method = cfg.method_for(problem)
    x, trace = solve(problem, method, cfg.solver_config(problem))
    write_csv(cfg.out, TRACE_HEADER + iterate_columns(problem.dim), trace_rows(trace, problem.dim))
    print(summary_line(trace))
    if trace.status is not Status.CONVERGED:
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _table1_cell(cell):
    alpha, gamma_bar, template = cell
    cfg = template.replace(alpha=alpha, gamma_bar=gamma_bar)
    x, trace = einexpm_solve(linear_saddle_operator(), cfg)
    return alpha, gamma_bar, trace.outer_steps, trace.fw_total, trace.status


def cmd_table1(cfg, alphas=None):
    template = EInexPMConfig(b_bar=cfg.b_bar or TABLE1_B_BAR, fw=cfg.fw_config(),
                             a_schedule=cfg.schedule or "harmonic",
                             outer_tol=cfg.tol or TABLE1_OUTER_TOL,
                             max_outer=cfg.max_outer or EInexPMConfig.MAX_OUTER)
    grid = [(alpha, gamma_bar, template) for alpha, gammas in TABLE1_GRID for gamma_bar in gammas
            if alphas is None or alpha in alphas]
    if not grid:
        raise UsageError("no table1 row matches alphas %s" % (alphas,))
    results = sorted(run_cells(_table1_cell, grid), key=lambda row: row[:2])
    write_csv(cfg.out, TABLE1_HEADER, [row[:4] for row in results])
    failed = [row for row in results if row[4] is not Status.CONVERGED]
    for row in failed:
        logging.warning("table1 alpha=%s gamma_bar=%s ended with status %s", row[0], row[1], row[4].value)
    return EXIT_NOT_CONVERGED if failed else EXIT_OK


def _table3_cell(cell):
    d, p, template = cell
    problem = th_operator(d, p, TABLE3_H)
    cfg = template.replace(alpha=problem.defaults["alpha"], gamma_bar=problem.defaults["gamma_bar"])
    x, trace = einexpm_solve(problem, cfg)
    return d, p, trace.outer_steps, trace.status


def cmd_table3(cfg, dims=None, powers=None):
    template = EInexPMConfig(fw=cfg.fw_config(), ref_tol=cfg.ref_tol or TABLE3_REF_TOL,
                             outer_tol=cfg.tol or EInexPMConfig.OUTER_TOL,
                             max_outer=cfg.max_outer or TABLE3_MAX_OUTER)
    grid = [(d, p, template) for p in (powers or TABLE3_POWERS) for d in (dims or TABLE3_DIMS)]
    results = sorted(run_cells(_table3_cell, grid), key=lambda row: row[:2])
    write_csv(cfg.out, TABLE3_HEADER, [(d, p, steps) for d, p, steps, status in results])
    failed = [row for row in results if row[3] is not Status.CONVERGED]
    for row in failed:
        logging.warning("table3 d=%s p=%s ended with status %s", row[0], row[1], row[3].value)
    return EXIT_NOT_CONVERGED if failed else EXIT_OK


def cmd_figure1(cfg):
    """EInexPM iterates on the linear saddle problem, near-exact against inexact projections."""
    problem = get_problem(cfg.problem_name(FIGURE1_PROBLEM))
    inexact = cfg.solver_config(problem)
    if not isinstance(inexact, EInexPMConfig):
        raise UsageError("figure1 runs einexpm, got method %s" % cfg.method_for(problem))
    rows = []
    statuses = []
    for solver_cfg in (inexact.replace(gamma_bar=FIGURE1_EXACT_GAMMA_BAR), inexact):
        x, trace = einexpm_solve(problem, solver_cfg)
        statuses.append(trace.status)
        rows.extend((solver_cfg.gamma_bar, record.k) + iterate_values(record, problem.dim) for record in trace.records)
        logging.info("figure1 gamma_bar=%s: %s", solver_cfg.gamma_bar, summary_line(trace))
    write_csv(cfg.out, FIGURE1_HEADER + iterate_columns(problem.dim), rows)
    if any(status is not Status.CONVERGED for status in statuses):
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_figure2(cfg):
    """EInexPMLS iterates on the non-Lipschitz problem."""
    problem = get_problem(cfg.problem_name(FIGURE2_PROBLEM))
    x, trace = solve(problem, cfg.method_for(problem), cfg.solver_config(problem))
    rows = [(r.k, r.dist_to_ref, r.i_k, r.lambda_k) + iterate_values(r, problem.dim) for r in trace.records]
    write_csv(cfg.out, FIGURE2_HEADER + iterate_columns(problem.dim), rows)
    print(summary_line(trace))
    return EXIT_OK if trace.status is Status.CONVERGED else EXIT_NOT_CONVERGED


def cmd_figure3(cfg):
    problem = get_problem(cfg.problem_name(FIGURE3_PROBLEM))
    solver_cfg = cfg.solver_config(problem)
    if cfg.max_outer is None:
        solver_cfg = solver_cfg.replace(max_outer=FIGURE3_STEPS)
    x, trace = solve(problem, cfg.method_for(problem), solver_cfg)
    write_csv(cfg.out, FIGURE3_HEADER, [(r.k, r.dist_to_ref, r.step_norm) for r in trace.records])
    return EXIT_OK


def parse_point(text):
    """A point literal like "0.5, 0.5" or a path to a file holding one."""
    if os.path.isfile(text):
        with io.open(text, encoding="utf-8") as handle:
            text = handle.read()
    items = [item for item in re.split(r"[\s,;]+", text.strip().strip("()[]")) if item]
    if not items:
        raise UsageError("empty point")
    try:
        return as_point([float(item) for item in items])
    except ValueError:
        raise UsageError("not a point: %r" % text)


def cmd_verify(cfg, point):
    problem = get_problem(cfg.problem_name())
    x = as_point(parse_point(point), problem.dim)
    check_feasible(x, problem.feasible_set, what="verified point")
    tol = cfg.tol or VERIFY_TOL
    witness = brute_force_vi_check(x, problem.F, problem.feasible_set, seed=cfg.seed)
    residual = natural_residual(x, problem.F, problem.feasible_set)
    passed = witness >= -tol and residual <= tol
    print("min_vi=%.6g residual=%.6g %s" % (witness, residual, "pass" if passed else "fail"))
    return EXIT_OK if passed else EXIT_FAILED


def _add_run_flags(parser):
    parser.add_argument("--problem")
    parser.add_argument("--method", choices=("einexpm", "einexpmls"))
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--gamma-bar", type=float)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--sigma", type=float)
    parser.add_argument("--rho", type=float)
    parser.add_argument("--backtrack", type=float)
    parser.add_argument("--tol", type=float)
    parser.add_argument("--max-outer", type=int)
    parser.add_argument("--fw-max-iter", type=int)
    parser.add_argument("--fw-floor", type=float)
    parser.add_argument("--b-bar", type=float)
    parser.add_argument("--schedule", choices=("harmonic", "log"))
    parser.add_argument("--ref-tol", type=float)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out")
    parser.add_argument("--config")
    parser.add_argument("--log-file")
    parser.add_argument("--verbose", action="store_true", default=None)


def _float_list(text):
    try:
        return tuple(float(item) for item in text.split(",") if item.strip())
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated numbers, got %r" % text)


def _int_list(text):
    try:
        return tuple(int(item) for item in text.split(",") if item.strip())
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated integers, got %r" % text)


def build_parser():
    parser = argparse.ArgumentParser(prog="pextragrad", description="Extragradient VIP solvers with "
                                     "Frank-Wolfe inexact projections")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    commands = parser.add_subparsers(dest="command")
    commands.required = True

    _add_run_flags(commands.add_parser("solve", help="run one method on one problem"))
    table1 = commands.add_parser("table1", help="alpha x gamma_bar sweep on the linear saddle problem")
    _add_run_flags(table1)
    table1.add_argument("--alphas", type=_float_list)
    table3 = commands.add_parser("table3", help="iteration counts of the T_h family at h=0.2")
    _add_run_flags(table3)
    table3.add_argument("--dims", type=_int_list)
    table3.add_argument("--powers", type=_float_list)
    _add_run_flags(commands.add_parser("figure1", help="einexpm iterates on the linear saddle problem"))
    _add_run_flags(commands.add_parser("figure2", help="einexpmls iterates on the non-Lipschitz problem"))
    _add_run_flags(commands.add_parser("figure3", help="distance trace on the five-dimensional T_h problem"))
    verify = commands.add_parser("verify", help="check a candidate solution")
    _add_run_flags(verify)
    verify.add_argument("point", help="point literal such as 0.5,0.5 or a file holding one")
    return parser


EXTRA_ARGS = ("command", "config", "alphas", "dims", "powers", "point")


def run_config(args):
    file_values = load_config_file(args.config) if args.config else {}
    flags = dict((normalize_key(key), value) for key, value in vars(args).items() if key not in EXTRA_ARGS)
    return RunConfig.merged(file_values, flags)


def dispatch(args, cfg):
    if args.command == "solve":
        return cmd_solve(cfg)
    if args.command == "table1":
        return cmd_table1(cfg, args.alphas)
    if args.command == "table3":
        return cmd_table3(cfg, args.dims, args.powers)
    if args.command == "figure1":
        return cmd_figure1(cfg)
    if args.command == "figure2":
        return cmd_figure2(cfg)
    if args.command == "figure3":
        return cmd_figure3(cfg)
    return cmd_verify(cfg, args.point)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        cfg = run_config(args)
        configure_logging(cfg)
        return dispatch(args, cfg)
    except ReferenceSolutionError as exc:
        logging.error("reference solution failed: %s", exc)
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_REFERENCE
    except (UsageError, IOError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except PextragradError as exc:
        logging.error("solver failed: %s", exc)
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_NOT_CONVERGED


if __name__ == "__main__":
    sys.exit(main())
