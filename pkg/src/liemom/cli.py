"""Command-line entry point for the benchmark harness.

Exit codes: 0 on success, 2 on configuration/validation errors, 3 on
numerical failures.
"""

from __future__ import annotations

import argparse
import sys

from .bench import METHOD_NAMES, PRESETS, SOLVER_NAMES, ExperimentConfig, run_custom, run_preset
from .errors import ConvergenceError, DomainError, SingularityError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liemom",
        description="Momentum-descent benchmarks on the rotation group: "
        "CSV trajectories and SVG convergence plots.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_preset = sub.add_parser("preset", help="run a named experiment preset")
    p_preset.add_argument("name", choices=sorted(PRESETS))
    p_preset.add_argument("--out-dir", default="bench-out")

    p_run = sub.add_parser("run", help="run a custom configuration")
    p_run.add_argument("--objective", required=True)
    p_run.add_argument("--solver", required=True, choices=SOLVER_NAMES)
    p_run.add_argument("--method", default="all", choices=METHOD_NAMES + ("all",))
    p_run.add_argument("--epochs", type=int, required=True)
    p_run.add_argument("--mu", type=float, default=0.0)
    p_run.add_argument("--eta", type=float, required=True)
    p_run.add_argument("--init", required=True, metavar="TAG:X,Y,Z",
                       help="initial rotation, e.g. cay:1,1,1")
    p_run.add_argument("--out-dir", default="bench-out")
    p_run.add_argument("--name", default="", help="artifact basename override")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "preset":
            artifacts = run_preset(args.name, args.out_dir)
            for art in artifacts:
                print(f"wrote {art.csv_path} and {art.svg_path}")
            print(f"wrote {artifacts[0].json_path}")
        else:
            cfg = ExperimentConfig(
                objective=args.objective,
                solver=args.solver,
                method=args.method,
                epochs=args.epochs,
                mu0=args.mu,
                eta0=args.eta,
                init=args.init,
                name=args.name,
            )
            art = run_custom(cfg, args.out_dir)
            print(f"wrote {art.csv_path}, {art.svg_path} and {art.json_path}")
    except (ValueError, DomainError, SingularityError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, FloatingPointError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
