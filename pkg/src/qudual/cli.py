"""Command line front end.

Subcommands:

``compute``
    Closed-form report for one state: duality quantities, complementary
    family members, moments, the variance bound, and (given an overlap
    ``--c``) the entangled-readout quantities.
``sweep``
    CSV sweep of the duality and product curves over populations
    parameterized by an angle so both ends are sampled evenly.
``verify``
    Deterministic self-check suites (fast or full).
``mc``
    Sampling oracle comparison for one configuration.

Exit codes: 0 success, 1 failed checks or flagged samples, 2 invalid
parameters, 3 unwritable output path. The seed for ``verify`` and ``mc``
resolves from ``--seed``, then the ``QUDUAL_SEED`` environment variable,
then 42.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import replace

import numpy as np

from . import montecarlo, verify
from .duality import (
    duality_report,
    predictability,
    predictability_of_b,
    visibility,
    visibility_of_b,
)
from .errors import ParameterError, QudualError
from .simultaneous import (
    distinguishability,
    entangle,
    entangled_visibility,
    estimate_a,
    estimate_b,
    minimum_simultaneous_product,
    optimal_entanglement,
    simultaneous_product,
)
from .states import ComplementaryFamily, DensityMatrix, complementary_observable, pure_state, symmetric_observable
from .uncertainty import mean_var, normalized_product_bounds, robertson

CSV_HEADER = "w_plus,P,V,product_min,product_max,D,V_e,c_opt,sim_product_min"

_EXIT_OK = 0
_EXIT_CHECK_FAILED = 1
_EXIT_BAD_PARAMS = 2
_EXIT_UNWRITABLE = 3

__all__ = ["main", "CSV_HEADER"]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _resolve_seed(arg_seed: int | None) -> int:
    if arg_seed is not None:
        return arg_seed
    env = os.environ.get("QUDUAL_SEED")
    if env is None:
        return 42
    try:
        return int(env)
    except ValueError:
        raise ParameterError(f"QUDUAL_SEED must be an integer, got {env!r}")


def _print_pairs(pairs: list[tuple[str, float]]) -> None:
    width = max(len(k) for k, _ in pairs)
    for key, value in pairs:
        print(f"{key:<{width}}  {_fmt(value)}")


def _cmd_compute(args: argparse.Namespace) -> int:
    if args.pure and args.rho12 is not None:
        raise ParameterError("give either --rho12 or --pure, not both")
    if args.pure:
        rho = pure_state(args.w_plus, args.theta)
    elif args.rho12 is not None:
        rho = DensityMatrix(args.w_plus, args.rho12, args.theta)
    else:
        raise ParameterError("one of --rho12 or --pure is required")
    varrho = rho.theta if args.varrho is None else args.varrho

    rep = duality_report(rho)
    a_obs = symmetric_observable()
    b_obs = complementary_observable(ComplementaryFamily(a_obs, varrho))
    mean_a, var_a = mean_var(rho, a_obs)
    mean_b, var_b = mean_var(rho, b_obs)
    bound = robertson(rho, a_obs, b_obs)
    lo, hi = normalized_product_bounds(rho.w_plus)

    pairs = [
        ("w_plus", rho.w_plus),
        ("rho12", rho.rho12),
        ("theta", rho.theta),
        ("purity", rho.purity),
        ("P", rep.p),
        ("V", rep.v),
        ("P2_plus_V2", rep.sum_sq),
        ("varrho", varrho),
        ("P_B", predictability_of_b(rho, varrho)),
        ("V_B", visibility_of_b(rho, varrho)),
        ("mean_A", mean_a),
        ("var_A", var_a),
        ("mean_B", mean_b),
        ("var_B", var_b),
        ("robertson_lhs", bound.lhs),
        ("robertson_rhs", bound.rhs),
        ("robertson_slack", bound.slack),
        ("product_min", lo),
        ("product_max", hi),
    ]

    if args.c is not None:
        if not rho.is_pure():
            raise ParameterError("--c models meter entanglement of a pure state; drop --rho12 mixing or pass --pure")
        psi = entangle(rho.w_plus, rho.theta, args.c)
        pairs += [
            ("c", args.c),
            ("D", distinguishability(psi)),
            ("V_e", entangled_visibility(psi)),
        ]
        if 0.0 < args.c < 1.0:
            mean_ar, var_ar = estimate_a(psi)
            mean_br, var_br = estimate_b(psi, varrho)
            pairs += [
                ("mean_A_readout", mean_ar),
                ("var_A_readout", var_ar),
                ("mean_B_readout", mean_br),
                ("var_B_readout", var_br),
            ]
        pairs += [
            ("sim_product", simultaneous_product(rho.w_plus, args.c)),
            ("c_opt", optimal_entanglement(rho.w_plus)),
            ("sim_product_min", minimum_simultaneous_product(rho.w_plus)),
        ]

    _print_pairs(pairs)
    return _EXIT_OK


def _sweep_rows(figure: int, points: int) -> list[str]:
    rows = []
    for alpha in np.linspace(0.0, math.pi / 2.0, points):
        w = math.sin(float(alpha)) ** 2
        p = abs(2.0 * w - 1.0)
        v = 2.0 * math.sqrt(w * (1.0 - w))
        lo, hi = normalized_product_bounds(w)
        c_opt = optimal_entanglement(w)
        c_row = 1.0 if figure == 1 else c_opt
        psi = entangle(w, 0.0, c_row)
        d = distinguishability(psi)
        ve = entangled_visibility(psi)
        sim_min = minimum_simultaneous_product(w)
        rows.append(",".join(_fmt(x) for x in (w, p, v, lo, hi, d, ve, c_opt, sim_min)))
    return rows


def _cmd_sweep(args: argparse.Namespace) -> int:
    if args.points < 2:
        raise ParameterError(f"--points must be at least 2, got {args.points}")
    rows = _sweep_rows(args.figure, args.points)
    text = CSV_HEADER + "\n" + "\n".join(rows) + "\n"
    if args.out is not None:
        try:
            # newline='' plus explicit \n keeps line endings LF on every platform
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return _EXIT_UNWRITABLE
        print(f"wrote {args.points} rows to {args.out}")
    else:
        sys.stdout.write(text)
    return _EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    results = verify.run_suites(args.level, seed, corrupt=args.selftest_corrupt)
    sys.stdout.write(verify.render_report(results, args.level, seed))
    failures = sum(r.failures for r in results)
    return _EXIT_OK if failures == 0 else _EXIT_CHECK_FAILED


def _print_sample(rep: montecarlo.SampleReport) -> None:
    print(
        f"{rep.quantity:<10} n={rep.n} "
        f"mean={_fmt(rep.empirical_mean)} (analytic {_fmt(rep.analytic_mean)}, z={rep.z_mean:+.3f}) "
        f"var={_fmt(rep.empirical_variance)} (analytic {_fmt(rep.analytic_variance)}, z={rep.z_variance:+.3f})"
        f"{' FLAGGED' if rep.flagged else ''}{' degenerate' if rep.degenerate else ''}"
    )


def _cmd_mc(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    varrho = args.theta if args.varrho is None else args.varrho
    c = optimal_entanglement(args.w_plus) if args.c is None else args.c
    rho = pure_state(args.w_plus, args.theta)
    a_obs = symmetric_observable()
    b_obs = complementary_observable(ComplementaryFamily(a_obs, varrho))

    print(f"sampling at w_plus={_fmt(args.w_plus)} theta={_fmt(args.theta)} varrho={_fmt(varrho)} c={_fmt(c)} seed={seed}")
    reports = [
        replace(montecarlo.sample_sharp(rho, a_obs, args.n, seed + 1), quantity="sharp_a"),
        replace(montecarlo.sample_sharp(rho, b_obs, args.n, seed + 2), quantity="sharp_b"),
    ]
    psi = entangle(args.w_plus, args.theta, c)
    rep_a, rep_b = montecarlo.sample_simultaneous(psi, varrho, args.n, seed + 3)
    reports += [rep_a, rep_b]
    for rep in reports:
        _print_sample(rep)

    phi_grid = np.linspace(0.0, 2.0 * math.pi, 16, endpoint=False)
    v_hat, _ = montecarlo.sample_fringe(rho, phi_grid, math.pi / 4.0, max(args.n // 16, 1), seed + 4)
    print(f"fringe     contrast={_fmt(v_hat)} (analytic {_fmt(visibility(rho))})")

    flagged = any(rep.flagged for rep in reports)
    return _EXIT_CHECK_FAILED if flagged else _EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qudual",
        description="Two-path state duality, variance bounds, and unsharp joint readout.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="closed-form report for one state")
    p.add_argument("--w-plus", type=float, required=True, help="population of the + path")
    p.add_argument("--rho12", type=float, default=None, help="off-diagonal magnitude")
    p.add_argument("--pure", action="store_true", help="use the largest coherence allowed by w-plus")
    p.add_argument("--theta", type=float, default=0.0, help="off-diagonal phase")
    p.add_argument("--varrho", type=float, default=None, help="family phase; defaults to theta (the proper choice)")
    p.add_argument("--c", type=float, default=None, help="meter overlap; adds the entangled-readout block")
    p.set_defaults(fn=_cmd_compute)

    p = sub.add_parser("sweep", help="write the duality and product curves as CSV")
    p.add_argument("--figure", type=int, choices=(1, 3), required=True,
                   help="1: full entanglement column (c=1); 3: optimal overlap column")
    p.add_argument("--points", type=int, default=201, help="number of sweep points")
    p.add_argument("--out", type=str, default=None, help="output path; stdout when omitted")
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("verify", help="run the deterministic self-check suites")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--selftest-corrupt", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("mc", help="compare sampled moments against the closed forms")
    p.add_argument("--w-plus", type=float, default=0.9)
    p.add_argument("--theta", type=float, default=0.3)
    p.add_argument("--varrho", type=float, default=None, help="family phase; defaults to theta")
    p.add_argument("--c", type=float, default=None, help="meter overlap; defaults to the optimal one")
    p.add_argument("--n", type=int, default=100000)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(fn=_cmd_mc)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except QudualError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_BAD_PARAMS


if __name__ == "__main__":
    sys.exit(main())
