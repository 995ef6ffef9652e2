from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from edfv.fluxes import Scheme
from edfv.grid import Grid1D
from edfv.laws import Array, LawDefinition
from edfv.solver import semidiscrete_rhs


def total_entropy(law: LawDefinition, field: Array, dx: float) -> float:
    return float(np.sum(law.entropy(field)) * dx)


@dataclass(frozen=True)
class EntropyTimeSeries:
    t: np.ndarray
    E: np.ndarray

    def __post_init__(self) -> None:
        if np.any(np.diff(self.t) <= 0):
            raise ValueError("sample times must be strictly increasing")

    @property
    def dEdt(self) -> np.ndarray:
        """Backward differences; the first sample repeats the second."""
        d = np.diff(self.E) / np.diff(self.t)
        if d.size == 0:
            return np.zeros_like(self.E)
        return np.concatenate([d[:1], d])

    @classmethod
    def from_samples(cls, t: Sequence[float], E: Sequence[float]) -> EntropyTimeSeries:
        t = np.asarray(t, dtype=np.float64)
        E = np.asarray(E, dtype=np.float64)
        # snapshots may repeat a time stamp; keep the latest value
        keep = np.append(np.diff(t) > 0, True)
        return cls(t[keep], E[keep])


def per_cell_entropy_residual(scheme: Scheme, grid: Grid1D, field: Array,
                              alpha: Array, lam: float = 1.0,
                              ghosts: tuple[Any, Any] | None = None) -> Array:
    """``<v_k, du_k/dt> - (F_{k-1/2} - F_{k+1/2}) / dx`` for every cell."""
    rhs, F = semidiscrete_rhs(scheme, grid, field, alpha, lam, ghosts,
                              entropy=True)
    v = scheme.law.entropy_variables(field)
    return np.sum(v * rhs, axis=-1) - (F[:-1] - F[1:]) / grid.dx


def restrict_reference(fine: Array, fine_grid: Grid1D,
                       coarse_grid: Grid1D) -> Array:
    """Conservative restriction by averaging the covered fine cells."""
    ratio, rem = divmod(fine_grid.n_cells, coarse_grid.n_cells)
    if rem != 0:
        raise ValueError(
            f"fine grid ({fine_grid.n_cells}) is not a multiple of the "
            f"coarse grid ({coarse_grid.n_cells})")
    fine = np.asarray(fine)
    return fine.reshape(coarse_grid.n_cells, ratio, *fine.shape[1:]).mean(axis=1)


@dataclass(frozen=True)
class ErrorReport:
    l1: float
    l2: float
    n_cells: int
    t: float = 0.0


def error_norms(field: Array, reference: Array, dx: float, *,
                components: Sequence[int] | None = (0,),
                t: float = 0.0) -> ErrorReport:
    """Discrete L1 and L2 norms of ``field - reference``.

    By default only the first component (density for Euler) enters; pass
    ``components=None`` to sum over all of them.
    """
    field = np.asarray(field)
    reference = np.asarray(reference)
    if field.shape != reference.shape:
        raise ValueError(f"shape mismatch: {field.shape} vs {reference.shape}")

    err = field - reference
    if err.ndim > 1 and components is not None:
        err = err[..., list(components)]

    return ErrorReport(
        l1=float(np.sum(np.abs(err)) * dx),
        l2=float(np.sqrt(np.sum(err**2) * dx)),
        n_cells=field.shape[0], t=t)


def convergence_rates(errors: Sequence[tuple[int, float]]) -> list[float]:
    """Observed orders ``log(e_i / e_{i+1}) / log(N_{i+1} / N_i)``."""
    if len(errors) < 2:
        raise ValueError("need at least two (n_cells, error) entries")
    n = np.array([e[0] for e in errors], dtype=np.float64)
    e = np.array([e[1] for e in errors], dtype=np.float64)
    if np.any(np.diff(n) <= 0):
        raise ValueError("n_cells must be strictly increasing")
    if np.any(e <= 0):
        raise ValueError("errors must be positive")

    return list(np.log(e[:-1] / e[1:]) / np.log(n[1:] / n[:-1]))
