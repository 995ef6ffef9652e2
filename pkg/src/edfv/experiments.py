"""
Experiments
-----------

Test cases, reference and exact solutions, and the run orchestration behind
the command line driver: CSV snapshots, the total entropy time series, error
reports against a fine reference run, restarts from snapshots and
convergence studies.

.. autofunction:: build_initial_field
.. autofunction:: run
.. autofunction:: convergence_study
"""

from __future__ import annotations

import csv
import logging
import math
import os
import re
from dataclasses import dataclass, field, replace
from typing import Any, Sequence

import numpy as np

from edfv.diagnostics import (
    EntropyTimeSeries,
    ErrorReport,
    convergence_rates,
    error_norms,
    restrict_reference,
)
from edfv.fluxes import Scheme, SchemeConfig
from edfv.grid import Grid1D
from edfv.laws import Array, Burgers, Euler, LawDefinition, as_float
from edfv.solver import Solver, Trajectory

logger = logging.getLogger(__name__)

SHU_OSHER_LEFT = (3.857153, 2.629, 10.333)


# {{{ scenarios


@dataclass(frozen=True)
class Scenario:
    name: str
    law: str
    x_left: float
    x_right: float
    boundary: str
    t_end: float
    epsilon: float = 0.0
    smooth: bool = False


SCENARIOS = {
    "burgers-sine": Scenario("burgers-sine", "burgers", 0.0, 2.0, "periodic",
                             t_end=2.0, smooth=True),
    "burgers-riemann": Scenario("burgers-riemann", "burgers", 0.0, 2.0, "fixed",
                                t_end=0.4),
    "shu-osher": Scenario("shu-osher", "euler", 0.0, 10.0, "fixed",
                          t_end=1.8, epsilon=0.2),
    "euler-smooth": Scenario("euler-smooth", "euler", 0.0, math.pi, "periodic",
                             t_end=0.5, epsilon=0.1, smooth=True),
}


def get_scenario(name: str, epsilon: float | None = None) -> Scenario:
    try:
        sc = SCENARIOS[name]
    except KeyError:
        raise ValueError(
            f"unknown scenario {name!r}; choose from {sorted(SCENARIOS)}"
            ) from None
    if epsilon is not None:
        sc = replace(sc, epsilon=epsilon)
    return sc


def make_grid(scenario: Scenario, n_cells: int) -> Grid1D:
    return Grid1D(scenario.x_left, scenario.x_right, n_cells, scenario.boundary)


def make_law(scenario: Scenario, gamma: float = 1.4) -> LawDefinition:
    return Burgers() if scenario.law == "burgers" else Euler(gamma)


def default_scheme(scenario: Scenario, **overrides) -> SchemeConfig:
    if scenario.law == "burgers":
        base = dict(p=4, ec_flux="tadmor", diss_flux="godunov",
                    predictor="godunov", a=1 / 20, b=1 / 100)
    else:
        base = dict(p=3, ec_flux="ismail-roe", diss_flux="lxf",
                    predictor="eno2-lxf", a=1 / 1000, b=1 / 1000)
    base.update({k: v for k, v in overrides.items() if v is not None})
    return SchemeConfig(**base)


def godunov_scheme() -> SchemeConfig:
    """First order Godunov scheme as a special case of the combination."""
    return SchemeConfig(p=1, ec_flux="tadmor", diss_flux="godunov",
                        predictor="godunov", force_alpha="one")


# }}}


# {{{ initial conditions and exact solutions


def _sine_integral(k: float, a: Array, b: Array) -> Array:
    # int_a^b sin(k x) dx, written without cancellation for b close to a
    return 2.0 * np.sin(0.5 * k * (a + b)) * np.sin(0.5 * k * (b - a)) / k


def _edges(grid: Grid1D, dtype: Any) -> Array:
    x = np.arange(grid.n_cells + 1, dtype=dtype)
    return grid.x_left + x * (np.asarray(grid.length, dtype=dtype) / grid.n_cells)


def _euler_smooth_density(grid: Grid1D, eps: float, t: float,
                          dtype: Any = np.float64) -> Array:
    e = _edges(grid, dtype) - 2.0 * t
    dx = np.asarray(grid.length, dtype=dtype) / grid.n_cells
    return 3.857153 + eps * _sine_integral(2.0, e[:-1], e[1:]) / dx


def build_initial_field(scenario: Scenario, grid: Grid1D,
                        law: LawDefinition | None = None, *,
                        dtype: Any = np.float64) -> Array:
    """Cell values of the initial condition of *scenario* on *grid*.

    ``burgers-sine`` is sampled at cell centres; all other cases use exact
    cell averages of the conserved variables. *dtype* only applies to the
    smooth scenarios.
    """
    law = make_law(scenario) if law is None else law
    xl, xr = grid.edges[:-1], grid.edges[1:]
    dx = grid.dx

    if scenario.name == "burgers-sine":
        x = 0.5 * (_edges(grid, dtype)[:-1] + _edges(grid, dtype)[1:])
        return np.sin(np.pi * x)[:, None]

    if scenario.name == "burgers-riemann":
        mid = 0.5 * (grid.x_left + grid.x_right)
        # fractions of each cell's own width, so whole cells come out exact
        width = xr - xl
        left = np.clip(mid - xl, 0.0, width)
        return ((width - 2.0 * left) / width)[:, None]

    if scenario.name == "shu-osher":
        g = law.gamma
        eps = scenario.epsilon
        rho_l, v_l, p_l = SHU_OSHER_LEFT
        u_left = law.conserved(rho_l, v_l, p_l)

        len_l = np.clip(1.0 - xl, 0.0, dx)
        a = np.maximum(xl, 1.0)
        len_r = dx - len_l
        rho_r = len_r + eps * np.where(len_r > 0, _sine_integral(5.0, a, xr), 0.0)

        u = np.empty((grid.n_cells, 3))
        u[:, 0] = (len_l * u_left[0] + rho_r) / dx
        u[:, 1] = len_l * u_left[1] / dx
        u[:, 2] = (len_l * u_left[2] + len_r * 1.0 / (g - 1.0)) / dx
        return u

    if scenario.name == "euler-smooth":
        rho = _euler_smooth_density(grid, scenario.epsilon, 0.0, dtype)
        return _euler_smooth_state(law, rho)

    raise ValueError(f"unknown scenario: {scenario.name!r}")


def _euler_smooth_state(law: Euler, rho_avg: Array) -> Array:
    # momentum and energy are affine in rho for constant v, p
    v, p = 2.0, 10.33333
    return np.stack([rho_avg, v * rho_avg,
                     p / (law.gamma - 1.0) + 0.5 * v**2 * rho_avg], axis=-1)


def burgers_sine_exact(x: Array, t: float, tol: float = 1.0e-13) -> Array:
    """Solution of ``u = sin(pi (x - u t))`` before the shock forms."""
    if t >= 1.0 / np.pi:
        raise ValueError(f"smooth solution only exists for t < 1/pi: {t}")

    x = as_float(x)
    lo = np.full_like(x, -1.0)
    hi = np.full_like(x, 1.0)
    # g(u) = u - sin(pi (x - u t)) is increasing in u for t < 1/pi
    while np.max(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        g = mid - np.sin(np.pi * (x - mid * t))
        lo = np.where(g < 0, mid, lo)
        hi = np.where(g < 0, hi, mid)

    return 0.5 * (lo + hi)


def burgers_rarefaction_exact(grid: Grid1D, t: float, u_l: float = -1.0,
                              u_r: float = 1.0) -> Array:
    """Cell averages of the rarefaction fan centred at the domain midpoint."""
    x0 = 0.5 * (grid.x_left + grid.x_right)

    def antiderivative(x):
        # int of clip((x - x0) / t, u_l, u_r)
        xa, xb = x0 + u_l * t, x0 + u_r * t
        xc = np.clip(x, xa, xb)
        fan = ((xc - x0) ** 2 - (xa - x0) ** 2) / (2.0 * t)
        return (u_l * (np.minimum(x, xa) - xa) + fan
                + u_r * (np.maximum(x, xb) - xb))

    e = grid.edges
    return ((antiderivative(e[1:]) - antiderivative(e[:-1])) / grid.dx)[:, None]


def exact_solution(scenario: Scenario, grid: Grid1D, t: float,
                   law: LawDefinition | None = None, *,
                   dtype: Any = np.float64) -> Array:
    law = make_law(scenario) if law is None else law
    if scenario.name == "euler-smooth":
        return _euler_smooth_state(
            law, _euler_smooth_density(grid, scenario.epsilon, t, dtype))
    if scenario.name == "burgers-sine":
        if t == 0.0:
            return build_initial_field(scenario, grid, law, dtype=dtype)
        e = _edges(grid, dtype)
        return burgers_sine_exact(0.5 * (e[:-1] + e[1:]), t)[:, None]
    if scenario.name == "burgers-riemann":
        if t == 0.0:
            return build_initial_field(scenario, grid, law)
        return burgers_rarefaction_exact(grid, t)
    raise ValueError(f"no exact solution for scenario {scenario.name!r}")


# }}}


# {{{ csv


def component_names(law: LawDefinition) -> list[str]:
    return ["u"] if law.n_components == 1 else ["rho", "mom", "energy"]


def snapshot_path(out_dir: str, t: float) -> str:
    return os.path.join(out_dir, f"solution_t{t:.6f}.csv")


def write_solution_csv(path: str, grid: Grid1D, law: LawDefinition,
                       u: Array, r: Array | None = None,
                       alpha: Array | None = None) -> None:
    n = grid.n_cells
    r = np.zeros(n) if r is None else r
    alpha = np.zeros(n) if alpha is None else alpha

    with open(path, "w", newline="") as fd:
        writer = csv.writer(fd)
        writer.writerow(["x", *component_names(law), "r", "alpha"])
        for i, x in enumerate(grid.centers):
            writer.writerow([repr(float(x)), *(repr(float(c)) for c in u[i]),
                             repr(float(r[i])), repr(float(alpha[i]))])


def read_solution_csv(path: str, law: LawDefinition) -> tuple[Array, Array, float | None]:
    """Return ``(x, u, t)``; *t* is parsed from the file name when possible."""
    names = component_names(law)
    with open(path, newline="") as fd:
        rows = list(csv.DictReader(fd))
    if not rows or any(n not in rows[0] for n in ["x", *names]):
        raise ValueError(f"{path}: expected columns x,{','.join(names)}")

    x = np.array([float(row["x"]) for row in rows])
    u = np.array([[float(row[n]) for n in names] for row in rows])

    m = re.search(r"_t([0-9.eE+-]+)\.csv$", os.path.basename(path))
    return x, u, (float(m.group(1)) if m else None)


def write_entropy_csv(path: str, series: EntropyTimeSeries) -> None:
    with open(path, "w", newline="") as fd:
        writer = csv.writer(fd)
        writer.writerow(["t", "E", "dEdt"])
        for t, E, d in zip(series.t, series.E, series.dEdt):
            writer.writerow([repr(float(t)), repr(float(E)), repr(float(d))])


def write_error_csv(path: str, reports: Sequence[ErrorReport]) -> None:
    with open(path, "w", newline="") as fd:
        writer = csv.writer(fd)
        writer.writerow(["t", "n_cells", "l1", "l2"])
        for rep in reports:
            writer.writerow([repr(rep.t), rep.n_cells, repr(rep.l1), repr(rep.l2)])


# }}}


# {{{ run


@dataclass
class RunConfig:
    scenario: str = "burgers-sine"
    n_cells: int = 50
    cfl: float = 0.5
    scheme: SchemeConfig | None = None
    t_end: float | None = None
    snapshot_times: Sequence[float] = ()
    out_dir: str | None = None
    restart_from: str | None = None
    restart_time: float | None = None
    reference_n: int | None = None
    epsilon: float | None = None
    gamma: float = 1.4

    def __post_init__(self) -> None:
        sc = get_scenario(self.scenario, self.epsilon)
        if not 0.0 < self.cfl <= 1.0:
            raise ValueError(f"CFL number must lie in (0, 1]: {self.cfl}")
        if self.scheme is None:
            self.scheme = default_scheme(sc)
        self.scheme.validate(make_law(sc, self.gamma))
        if self.n_cells < 2 * self.scheme.p + 2:
            raise ValueError(
                f"{self.n_cells} cells are too few for p = {self.scheme.p}")
        if self.reference_n is not None and self.reference_n % self.n_cells:
            raise ValueError("reference_n must be a multiple of n_cells")

    @property
    def scenario_def(self) -> Scenario:
        return get_scenario(self.scenario, self.epsilon)


@dataclass
class RunResult:
    grid: Grid1D
    law: LawDefinition
    trajectory: Trajectory
    entropy: EntropyTimeSeries
    errors: list[ErrorReport] = field(default_factory=list)
    files: list[str] = field(default_factory=list)

    @property
    def field(self) -> Array:
        return self.trajectory.final.field


def reference_scheme(scenario: Scenario) -> SchemeConfig:
    if scenario.law == "burgers":
        return godunov_scheme()
    return default_scheme(scenario)


def run(config: RunConfig) -> RunResult:
    """Integrate one scenario; write CSV output when ``out_dir`` is set."""
    sc = config.scenario_def
    law = make_law(sc, config.gamma)
    grid = make_grid(sc, config.n_cells)
    t_end = sc.t_end if config.t_end is None else config.t_end
    u0 = build_initial_field(sc, grid, law)
    ghosts = (u0[0].copy(), u0[-1].copy()) if grid.boundary == "fixed" else None

    t0 = 0.0
    if config.restart_from is not None:
        x, u0, t_file = read_solution_csv(config.restart_from, law)
        if x.size != grid.n_cells or not np.allclose(x, grid.centers):
            raise ValueError(f"{config.restart_from}: grid does not match")
        t0 = config.restart_time if config.restart_time is not None else t_file
        if t0 is None:
            raise ValueError("restart time is neither given nor in the file name")

    snaps = sorted({float(t) for t in config.snapshot_times if t0 <= t <= t_end}
                   | {t_end})
    solver = Solver(Scheme(law, config.scheme), grid, cfl=config.cfl, ghosts=ghosts)
    traj = solver.integrate(u0, t_end, t0=t0, snapshot_times=snaps)
    series = EntropyTimeSeries.from_samples(traj.t, traj.entropy)

    errors = []
    if config.reference_n is not None:
        ref_grid = make_grid(sc, config.reference_n)
        ref_u0 = build_initial_field(sc, ref_grid, law)
        ref_solver = Solver(Scheme(law, reference_scheme(sc)), ref_grid,
                            cfl=config.cfl)
        ref = ref_solver.integrate(ref_u0, t_end, snapshot_times=snaps)
        for t in snaps:
            coarse = restrict_reference(ref.snapshots[t][0], ref_grid, grid)
            errors.append(error_norms(traj.snapshots[t][0], coarse, grid.dx, t=t))

    result = RunResult(grid, law, traj, series, errors)
    if config.out_dir is not None:
        os.makedirs(config.out_dir, exist_ok=True)
        for t in snaps:
            u, alpha = traj.snapshots[t]
            path = snapshot_path(config.out_dir, t)
            write_solution_csv(path, grid, law, u,
                               None if alpha is None else alpha.r_cells,
                               None if alpha is None else alpha.alpha_cells)
            result.files.append(path)

        path = os.path.join(config.out_dir, "entropy.csv")
        write_entropy_csv(path, series)
        result.files.append(path)

        if errors:
            path = os.path.join(config.out_dir, "errors.csv")
            write_error_csv(path, errors)
            result.files.append(path)

    return result


# }}}


# {{{ convergence


@dataclass(frozen=True)
class ConvergenceRow:
    n_cells: int
    l1: float
    l2: float
    order_l1: float
    alpha_max: float


def convergence_study(config: RunConfig, n_list: Sequence[int], *,
                      dt_exponent: float = 1.0,
                      dtype: Any = np.float64) -> list[ConvergenceRow]:
    """Errors against the exact solution for a sequence of grids.

    The time step on each grid is ``dt0 * (dx / dx0)^q`` where ``dt0`` is
    the CFL step of the coarsest grid, adjusted so that ``t_end`` is hit in
    an integer number of steps. Passing ``dtype=np.longdouble`` lowers the
    round-off floor for high orders on fine grids.
    """
    sc = config.scenario_def
    if not sc.smooth:
        raise ValueError(f"scenario {sc.name!r} has no smooth exact solution")

    law = make_law(sc, config.gamma)
    t_end = sc.t_end if config.t_end is None else config.t_end
    n_list = sorted(n_list)

    g0 = make_grid(sc, n_list[0])
    u00 = build_initial_field(sc, g0, law)
    dt0 = config.cfl * g0.dx / float(np.max(law.max_wave_speed(u00)))

    reports = []
    alpha_max = []
    for n in n_list:
        grid = make_grid(sc, n)
        u0 = build_initial_field(sc, grid, law, dtype=dtype)
        dt = dt0 * (grid.dx / g0.dx) ** dt_exponent
        dt = t_end / math.ceil(t_end / dt - 1.0e-9)

        solver = Solver(Scheme(law, config.scheme), grid, cfl=config.cfl)
        traj = solver.integrate(u0, t_end, dt=dt)
        exact = exact_solution(sc, grid, t_end, law, dtype=dtype)
        reports.append(error_norms(traj.final.field, exact, grid.dx, t=t_end))
        alpha_max.append(max(traj.alpha_max))
        logger.info("N=%d: L1=%.3e", n, reports[-1].l1)

    orders = [math.nan] + convergence_rates([(r.n_cells, r.l1) for r in reports])
    rows = [ConvergenceRow(r.n_cells, r.l1, r.l2, o, a)
            for r, o, a in zip(reports, orders, alpha_max)]

    if config.out_dir is not None:
        os.makedirs(config.out_dir, exist_ok=True)
        with open(os.path.join(config.out_dir, "convergence.csv"), "w",
                  newline="") as fd:
            writer = csv.writer(fd)
            writer.writerow(["n_cells", "l1", "l2", "order_l1", "alpha_max"])
            for row in rows:
                writer.writerow([row.n_cells, repr(row.l1), repr(row.l2),
                                 repr(row.order_l1), repr(row.alpha_max)])

    return rows


# }}}
