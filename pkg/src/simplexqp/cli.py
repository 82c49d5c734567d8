"""Command-line entry point: ``simplexqp {solve,project,generate,oracle,bench}``.

Exit codes: 0 on success or convergence, 1 on invalid input, 2 when the
solver hits its iteration limit.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import io
from ._types import QPProblem, SolverConfig
from .oracle import OracleError, oracle_qp
from .projection import ProjectionProblem, project_partial_sign, verify_projection_kkt
from .solver import MAX_ITERATIONS, solve

EXIT_OK, EXIT_INPUT, EXIT_MAXITER = 0, 1, 2


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def generate_problem(n: int, kind: str, seed: int) -> QPProblem:
    """Random instance from numpy's PCG64 generator seeded with ``seed``.

    ``convex``: ``H = A'A + 1e-3 I``. ``indefinite``: ``(A + A') / 2``.
    ``A`` is an ``n x n`` standard-normal draw, then ``c`` is standard normal.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    A = rng.standard_normal((n, n))
    if kind == "convex":
        H = A.T @ A + 1e-3 * np.eye(n)
    elif kind == "indefinite":
        H = 0.5 * (A + A.T)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    c = rng.standard_normal(n)
    return QPProblem(H, c)


def _config(args) -> SolverConfig:
    return SolverConfig(
        epsilon=args.epsilon,
        theta1=args.theta1,
        theta2=args.theta2,
        max_outer_iterations=args.max_iter,
        binding_rule=args.binding_rule,
        trace_enabled=args.trace,
    )


def _solve_file(path: str, config: SolverConfig) -> tuple[int, str]:
    try:
        problem, start = io.load_problem(path)
    except (io.FileFormatError, ValueError) as exc:
        return EXIT_INPUT, f"{path}: {exc}"
    result = solve(problem, start, config)
    code = EXIT_MAXITER if result.status == MAX_ITERATIONS else EXIT_OK
    return code, io.dumps(io.result_to_dict(result, config))


def cmd_solve(args) -> int:
    try:
        config = _config(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if len(args.input) == 1:
        code, text = _solve_file(args.input[0], config)
        if code == EXIT_INPUT:
            print(f"error: {text}", file=sys.stderr)
            return code
        _emit(text, args.out)
        return code

    if not args.out_dir:
        print("error: several inputs need --out-dir", file=sys.stderr)
        return EXIT_INPUT
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with ProcessPoolExecutor(max_workers=args.jobs) as pool:
        outcomes = list(pool.map(_solve_file, args.input, [config] * len(args.input)))
    for path, (code, text) in zip(args.input, outcomes):
        if code == EXIT_INPUT:
            print(f"error: {text}", file=sys.stderr)
        else:
            (out_dir / (Path(path).stem + ".solution.json")).write_text(text, encoding="utf-8")
    codes = {code for code, _ in outcomes}
    if EXIT_INPUT in codes:
        return EXIT_INPUT
    return EXIT_MAXITER if EXIT_MAXITER in codes else EXIT_OK


def cmd_project(args) -> int:
    try:
        problem = io.load_projection(args.input)
    except io.FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    cert = project_partial_sign(problem)
    doc = {
        "x": cert.x.tolist(),
        "lambda": cert.lambda_,
        "mu": cert.mu.tolist(),
        "zero_set": cert.zero_set.tolist(),
        "mean_free": cert.mean_free,
        "kkt_residual": verify_projection_kkt(problem, cert),
    }
    _emit(io.dumps(doc), args.out)
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.n < 1:
        print("error: --n must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    problem = generate_problem(args.n, args.kind, args.seed)
    _emit(io.dumps(io.problem_to_dict(problem)), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    try:
        problem, _ = io.load_problem(args.input)
        sol = oracle_qp(problem, args.guard)
    except (io.FileFormatError, OracleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    doc = {
        "alpha": sol.x_or_alpha.tolist(),
        "objective": sol.objective,
        "status": "oracle",
        "kkt_residual": sol.kkt_residual,
        "iterations": 0,
        "active_set": sol.active_set.tolist(),
        "config": {"guard": args.guard},
    }
    _emit(io.dumps(doc), args.out)
    return EXIT_OK


def bench_projection(sizes, reps: int, seed: int = 0, fraction: float = 0.5):
    """Median wall time of the projection per size, inputs from PCG64(seed)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    rows = []
    for n in sizes:
        g = rng.standard_normal(n)
        problem = ProjectionProblem(g, np.flatnonzero(rng.random(n) < fraction))
        times = []
        for _ in range(reps):
            t0 = time.perf_counter()
            project_partial_sign(problem)
            times.append(time.perf_counter() - t0)
        rows.append((n, float(np.median(times))))
    return rows


def cmd_bench(args) -> int:
    rows = bench_projection(args.sizes, args.reps, args.seed)
    lines = ["n,median_seconds"] + [f"{n},{t!r}" for n, t in rows]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    return [int(float(x)) for x in text.split(",") if x.strip()]


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; exit 2 is reserved for the iteration limit
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="simplexqp", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a QP problem file")
    p.add_argument("input", nargs="+")
    p.add_argument("--out")
    p.add_argument("--out-dir", help="output directory when several inputs are given")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--epsilon", type=float, default=1e-8)
    p.add_argument("--theta1", type=float, default=math.pi / 18)
    p.add_argument("--theta2", type=float, default=math.pi / 90)
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--binding-rule", choices=["multiplier", "sign"], default="multiplier")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("project", help="project g with sign constraints on a subset")
    p.add_argument("input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("generate", help="write a random problem file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=["convex", "indefinite"], default="convex")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=None, help="accepted and ignored")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("oracle", help="solve a small QP by active-set enumeration")
    p.add_argument("input")
    p.add_argument("--guard", type=int, default=12)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="time the projection on random inputs")
    p.add_argument("--sizes", type=_int_list, default=[10**3, 10**4, 10**5, 10**6])
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
