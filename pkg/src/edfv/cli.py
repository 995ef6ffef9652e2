"""Command line front end: ``edfv --scenario burgers-sine --n-cells 50``.

Exit status is 0 on success, 1 for an invalid configuration and 2 when the
solver aborts on a non-finite or inadmissible state.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from edfv.experiments import (
    SCENARIOS, RunConfig, convergence_study, default_scheme, get_scenario, run)
from edfv.solver import SolverError

logger = logging.getLogger("edfv")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_SOLVER = 2


def _times(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma separated times: {text!r}") from None


def _sizes(text: str) -> list[int]:
    try:
        return [int(n) for n in text.split(",") if n.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma separated cell counts: {text!r}") from None


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edfv",
        description="Run an entropy dissipative finite volume experiment.")
    parser.add_argument("--scenario", choices=sorted(SCENARIOS),
                        default="burgers-sine")
    parser.add_argument("--n-cells", type=int, default=50)
    parser.add_argument("--cfl", type=float, default=0.5)

    scheme = parser.add_argument_group("scheme")
    scheme.add_argument("--p", type=int, default=None,
                        help="stencil half width; the flux has order 2p")
    scheme.add_argument("--ec-flux", choices=["tadmor", "ismail-roe"])
    scheme.add_argument("--diss-flux", choices=["godunov", "lxf"])
    scheme.add_argument("--predictor", choices=["godunov", "lxf", "eno2-lxf"])
    scheme.add_argument("--a", type=float, default=None)
    scheme.add_argument("--b", type=float, default=None)
    scheme.add_argument("--kernel-halfwidth", type=int, default=None)
    scheme.add_argument("--eno-slope-mode", choices=["abs", "literal"])
    scheme.add_argument("--force-alpha", choices=["none", "zero", "one"])

    out = parser.add_argument_group("run")
    out.add_argument("--t-end", type=float, default=None)
    out.add_argument("--snapshot-times", type=_times, default=[],
                     help="comma separated, e.g. 0.22,1.82")
    out.add_argument("--out-dir", default=None)
    out.add_argument("--restart-from", default=None,
                     help="solution CSV to start from")
    out.add_argument("--restart-time", type=float, default=None,
                     help="start time; parsed from the file name by default")
    out.add_argument("--reference-n", type=int, default=None,
                     help="cells of a reference run for error reports")
    out.add_argument("--epsilon", type=float, default=None)
    out.add_argument("--gamma", type=float, default=1.4)

    conv = parser.add_argument_group("convergence study")
    conv.add_argument("--convergence", type=_sizes, default=None,
                      metavar="N1,N2,...",
                      help="run a refinement study instead of a single run")
    conv.add_argument("--dt-exponent", type=float, default=1.0,
                      help="time step scales as dx^q")

    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    sc = get_scenario(args.scenario, args.epsilon)
    scheme = default_scheme(
        sc, p=args.p, ec_flux=args.ec_flux, diss_flux=args.diss_flux,
        predictor=args.predictor, a=args.a, b=args.b,
        kernel_halfwidth=args.kernel_halfwidth,
        eno_slope_mode=args.eno_slope_mode, force_alpha=args.force_alpha)

    n_cells = min(args.convergence) if args.convergence else args.n_cells
    return RunConfig(
        scenario=args.scenario, n_cells=n_cells, cfl=args.cfl, scheme=scheme,
        t_end=args.t_end, snapshot_times=args.snapshot_times,
        out_dir=args.out_dir, restart_from=args.restart_from,
        restart_time=args.restart_time, reference_n=args.reference_n,
        epsilon=args.epsilon, gamma=args.gamma)


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad flags; that is a configuration error here
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")

    try:
        config = config_from_args(args)
        if args.convergence:
            rows = convergence_study(config, args.convergence,
                                     dt_exponent=args.dt_exponent)
            print("n_cells,l1,l2,order_l1,alpha_max")
            for r in rows:
                print(f"{r.n_cells},{r.l1:.6e},{r.l2:.6e},"
                      f"{r.order_l1:.3f},{r.alpha_max:.3g}")
        else:
            result = run(config)
            for path in result.files:
                print(path)
            for rep in result.errors:
                print(f"t={rep.t:g} N={rep.n_cells} L1={rep.l1:.6e} "
                      f"L2={rep.l2:.6e}")
    except SolverError as exc:
        logger.error("solver aborted: %s", exc)
        return EXIT_SOLVER
    except (ValueError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_CONFIG

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
