"""Command-line front end.

Exit codes: 0 success, 1 configuration or argument error, 2 equilibrium
iteration did not converge, 3 an assumption check found a violating tuple.
"""
from __future__ import annotations

import argparse
import io
import json
import sys

import numpy as np

from .analysis import Regime, counterexample_table, fmt, sweep_ideal, write_csv
from .assumptions import check_sls, check_sls_implies_shift, check_sscp
from .config import ConfigError, load_config
from .contest import expected_policy, win_probability
from .errors import DomainError
from .solver import extremal_equilibria, no_commitment_equilibrium

EXIT_OK, EXIT_CONFIG, EXIT_NONCONVERGENCE, EXIT_WITNESS = 0, 1, 2, 3


def round12(obj):
    """Round every float in a JSON-ready structure to 12 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        return float(fmt(obj))
    if isinstance(obj, dict):
        return {k: round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round12(v) for v in obj]
    return obj


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _dump(obj) -> str:
    return json.dumps(round12(obj), indent=2, sort_keys=True) + "\n"


def solve_report(cfg, regime: str) -> dict:
    model = cfg.model
    ideals = {"t_l": model.ideals.t_l, "t_r": model.ideals.t_r}
    if regime == "no-commitment":
        prof = no_commitment_equilibrium(model.ideals)
        eq = {"smallest": {"x_l": prof.x_l, "x_r": prof.x_r}, "largest": {"x_l": prof.x_l, "x_r": prof.x_r},
              "iterations_smallest": 0, "iterations_largest": 0, "converged": True, "clamped": False}
        profiles = {"smallest": prof, "largest": prof}
    else:
        rep = extremal_equilibria(model, cfg.solver)
        eq = rep.to_dict()
        profiles = {"smallest": rep.smallest, "largest": rep.largest}
    return {
        "regime": regime,
        "ideals": ideals,
        "equilibrium": eq,
        "win_prob": {k: win_probability(model.belief, p) for k, p in profiles.items()},
        "pi_star": {k: expected_policy(model.belief, p) for k, p in profiles.items()},
    }


def cmd_solve(args) -> int:
    cfg = load_config(args.config)
    report = solve_report(cfg, args.regime)
    _emit(_dump(report), args.out)
    return EXIT_OK if report["equilibrium"]["converged"] else EXIT_NONCONVERGENCE


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    if args.steps < 1:
        raise DomainError("--steps must be at least 1")
    values = np.linspace(args.start, args.stop, args.steps) if args.steps > 1 else np.array([args.start])
    regimes = ([Regime.COMMITMENT_SMALLEST, Regime.COMMITMENT_LARGEST] if args.regime == "commitment"
               else [Regime(args.regime)])
    per_regime = [sweep_ideal(cfg.model, args.vary, values, r, cfg.solver) for r in regimes]
    rows = [row for group in zip(*per_regime) for row in group]
    buf = io.StringIO()
    write_csv(rows, buf)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK if all(r.converged for r in rows) else EXIT_NONCONVERGENCE


def cmd_check(args) -> int:
    cfg = load_config(args.config)
    model = cfg.model
    if args.assumption == "sls":
        rep = check_sls(model.utility, args.samples)
    elif args.assumption == "sscp":
        rep = check_sscp(model.utility, model.belief, args.samples)
    else:
        rep = check_sls_implies_shift(model.utility, model.belief, args.samples)
    _emit(_dump(rep.to_dict()), args.out)
    return EXIT_OK if rep.passed else EXIT_WITNESS


def cmd_counterexample(args) -> int:
    rows, closed, slope = counterexample_table(args.t_r, args.steps)
    buf = io.StringIO()
    write_csv(rows, buf, {"pi_star_closed": closed, "dpi_dtl": slope})
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors share the config-error exit code; 2 is reserved for non-convergence
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="commitlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="extremal equilibria and expected policy for one model")
    s.add_argument("--config", required=True)
    s.add_argument("--regime", choices=["commitment", "no-commitment"], default="commitment")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("sweep", help="indirect expected policy over a range of one ideal policy")
    s.add_argument("--config", required=True)
    s.add_argument("--vary", choices=["tl", "tr"], required=True)
    s.add_argument("--from", dest="start", type=float, required=True)
    s.add_argument("--to", dest="stop", type=float, required=True)
    s.add_argument("--steps", type=int, default=11)
    s.add_argument("--regime", default="commitment",
                   choices=["commitment", "commitment-smallest", "commitment-largest", "no-commitment"])
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("check", help="sampled certificate for SSCP, SLS or the ideal-shift implication")
    s.add_argument("--config", required=True)
    s.add_argument("--assumption", choices=["sscp", "sls", "claim7"], required=True)
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("counterexample", help="no-commitment triangular example with closed-form columns")
    s.add_argument("--t_r", type=float, default=0.6)
    s.add_argument("--steps", type=int, default=61)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_counterexample)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"commitlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
