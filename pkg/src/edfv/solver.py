"""
Time integration
----------------

Method-of-lines discretization with the high-order convex combination flux
and the ten stage, fourth order strong stability preserving Runge--Kutta
method of Ketcheson. The predictor output is computed once per step from
the state at the beginning of the step and frozen over the stages.

.. autofunction:: semidiscrete_rhs
.. autofunction:: ssprk104_step
.. autofunction:: integrate
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from edfv.fluxes import Scheme
from edfv.grid import Grid1D, pad
from edfv.laws import AdmissibilityError, Array, LawDefinition, as_float
from edfv.predictor import AlphaField, compute_alpha

logger = logging.getLogger(__name__)


class SolverError(RuntimeError):
    """Raised when a run produces non-finite or inadmissible states."""

    def __init__(self, msg: str, step: int | None = None) -> None:
        super().__init__(msg if step is None else f"{msg} (step {step})")
        self.step = step


def compute_dt(cfl: float, law: LawDefinition, field: Array, dx: float, *,
               t: float | None = None, t_end: float | None = None,
               fallback_speed: float = 1.0) -> float:
    """CFL time step, shortened so that ``t + dt`` does not pass *t_end*."""
    if not cfl > 0:
        raise ValueError(f"CFL number must be positive: {cfl}")

    smax = float(np.max(law.max_wave_speed(field)))
    if not smax > 0:
        smax = fallback_speed
    dt = cfl * dx / smax

    if t is not None and t_end is not None:
        dt = min(dt, t_end - t)
    return dt


def semidiscrete_rhs(scheme: Scheme, grid: Grid1D, field: Array,
                     alpha: Array, lam: float = 1.0,
                     ghosts: tuple[Any, Any] | None = None, *,
                     entropy: bool = False):
    """``du_k/dt = (f_{k-1/2} - f_{k+1/2}) / dx``.

    *alpha* holds the ``n + 1`` interface values. With *entropy* set, also
    returns the ``n + 1`` numerical entropy fluxes.
    """
    padded = pad(field, scheme.p, grid.boundary, ghosts)
    f, F = scheme.interface_fluxes(padded, alpha, lam, entropy=entropy)
    rhs = (f[:-1] - f[1:]) / grid.dx

    return (rhs, F) if entropy else rhs


def ssprk104_step(rhs: Callable[[Array], Array], u: Array, dt: float) -> Array:
    """One step of the low-storage SSPRK(10, 4) method."""
    q1 = u.copy()
    q2 = u.copy()

    for _ in range(5):
        q1 = q1 + dt / 6.0 * rhs(q1)
    # integer weights divided in the array dtype keep the combinations
    # affine exactly, so conservation holds to round-off of that dtype
    q2 = (q2 + 9.0 * q1) / 25.0
    q1 = 15.0 * q2 - 5.0 * q1
    for _ in range(4):
        q1 = q1 + dt / 6.0 * rhs(q1)

    return (5.0 * q2 + 3.0 * q1) / 5.0 + dt / 10.0 * rhs(q1)


@dataclass
class RunState:
    t: float
    field: Array
    alpha: AlphaField | None = None
    step_count: int = 0
    dt: float = 0.0


@dataclass
class Trajectory:
    #: times of the entropy samples, including the initial one
    t: list[float] = field(default_factory=list)
    #: total entropy at each sample
    entropy: list[float] = field(default_factory=list)
    #: largest interface alpha used for the step ending at each sample
    alpha_max: list[float] = field(default_factory=list)
    #: snapshot time -> (field, alpha field used in the last step)
    snapshots: dict[float, tuple[Array, AlphaField | None]] = field(
        default_factory=dict)
    final: RunState | None = None


@dataclass
class Solver:
    """Advances a field on *grid* with *scheme*.

    For fixed boundaries, *ghosts* are the (left, right) boundary states held
    for the whole run; they default to the initial edge cells.
    """

    scheme: Scheme
    grid: Grid1D
    cfl: float = 0.5
    ghosts: tuple[Any, Any] | None = None
    check_admissible: bool = True

    @property
    def law(self) -> LawDefinition:
        return self.scheme.law

    def alpha(self, u: Array, dt: float) -> AlphaField:
        return compute_alpha(self.law, self.scheme.config, u, dt, self.grid.dx,
                             self.grid.boundary, self.ghosts)

    def rhs(self, u: Array, alpha: Array, lam: float) -> Array:
        return semidiscrete_rhs(self.scheme, self.grid, u, alpha, lam, self.ghosts)

    def step(self, state: RunState, dt: float) -> RunState:
        u = state.field
        lam = dt / self.grid.dx
        alpha = self.alpha(u, dt)
        a_if = alpha.alpha_interfaces

        step = state.step_count + 1

        def stage_rhs(q: Array) -> Array:
            if self.check_admissible:
                self.law.check_admissible(q)
            return self.rhs(q, a_if, lam)

        try:
            u_new = ssprk104_step(stage_rhs, u, dt)
            if self.check_admissible:
                self.law.check_admissible(u_new)
        except AdmissibilityError as exc:
            raise SolverError(str(exc), step) from exc
        if not np.all(np.isfinite(u_new)):
            raise SolverError("non-finite state", step)

        return RunState(t=state.t + dt, field=u_new, alpha=alpha,
                        step_count=step, dt=dt)

    def integrate(self, u0: Array, t_end: float, *, t0: float = 0.0,
                  snapshot_times: Sequence[float] = (),
                  dt: float | None = None,
                  callback: Callable[[RunState], None] | None = None
                  ) -> Trajectory:
        """Run from *t0* to *t_end*.

        The step is the CFL step unless a fixed *dt* is given; it is shortened
        to land exactly on every snapshot time. *callback* sees the state
        after every step.
        """
        if self.grid.boundary == "fixed" and self.ghosts is None:
            self.ghosts = (u0[0].copy(), u0[-1].copy())
        if self.check_admissible:
            self.law.check_admissible(u0)

        dx = self.grid.dx
        targets = sorted({float(s) for s in snapshot_times if t0 <= s <= t_end})
        state = RunState(t=t0, field=as_float(u0).copy())

        traj = Trajectory()
        traj.t.append(t0)
        traj.entropy.append(float(np.sum(self.law.entropy(state.field)) * dx))
        traj.alpha_max.append(0.0)
        if targets and targets[0] == t0:
            traj.snapshots[t0] = (state.field.copy(), None)
            targets.pop(0)

        while state.t < t_end:
            stop = targets[0] if targets else t_end
            if dt is None:
                h = compute_dt(self.cfl, self.law, state.field, dx,
                               t=state.t, t_end=stop)
            else:
                h = min(dt, stop - state.t)
            # summed step sizes drift from the stop time by round-off; the
            # step that nearly reaches it is stretched to land exactly
            landing = stop - (state.t + h) <= 1.0e-6 * h
            if landing:
                h = stop - state.t

            state = self.step(state, h)
            if landing:
                state.t = stop

            traj.t.append(state.t)
            traj.entropy.append(float(np.sum(self.law.entropy(state.field)) * dx))
            traj.alpha_max.append(float(np.max(state.alpha.alpha_interfaces)))

            if targets and state.t >= targets[0]:
                traj.snapshots[targets.pop(0)] = (state.field.copy(), state.alpha)
            if callback is not None:
                callback(state)

            if state.step_count % 1000 == 0:
                logger.info("step %d t=%.6g dt=%.3g", state.step_count,
                            state.t, state.dt)

        traj.final = state
        return traj


def integrate(scheme: Scheme, grid: Grid1D, u0: Array, t_end: float, *,
              cfl: float = 0.5, ghosts: tuple[Any, Any] | None = None,
              **kwargs: Any) -> Trajectory:
    return Solver(scheme, grid, cfl=cfl, ghosts=ghosts).integrate(
        u0, t_end, **kwargs)
