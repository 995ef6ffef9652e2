from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from edfv.laws import Array

BOUNDARIES = ("periodic", "fixed")


@dataclass(frozen=True)
class Grid1D:
    """Uniform cells on ``[x_left, x_right]``.

    ``boundary`` is ``"periodic"`` or ``"fixed"``; in the latter case ghost
    cells hold fixed states supplied by the caller.
    """

    x_left: float
    x_right: float
    n_cells: int
    boundary: str = "periodic"

    def __post_init__(self) -> None:
        if self.n_cells < 2:
            raise ValueError(f"need at least two cells: {self.n_cells}")
        if not self.x_right > self.x_left:
            raise ValueError("empty domain")
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"unknown boundary mode: {self.boundary!r}")

    @property
    def dx(self) -> float:
        return (self.x_right - self.x_left) / self.n_cells

    @property
    def length(self) -> float:
        return self.x_right - self.x_left

    @property
    def edges(self) -> np.ndarray:
        return np.linspace(self.x_left, self.x_right, self.n_cells + 1)

    @property
    def centers(self) -> np.ndarray:
        return self.x_left + (np.arange(self.n_cells) + 0.5) * self.dx

    @property
    def periodic(self) -> bool:
        return self.boundary == "periodic"


def pad(u: Array, width: int, boundary: str = "periodic",
        ghosts: tuple[Any, Any] | None = None) -> Array:
    """Extend *u* by *width* ghost cells on each side.

    Periodic fields wrap around. Fixed fields use the states in *ghosts*,
    or repeat the edge cells when none are given.
    """
    if width == 0:
        return u
    if boundary == "periodic":
        if width > u.shape[0]:
            return np.concatenate([u[np.arange(-width, 0) % u.shape[0]], u,
                                   u[np.arange(width) % u.shape[0]]])
        return np.concatenate([u[-width:], u, u[:width]])

    if ghosts is None:
        left, right = u[0], u[-1]
    else:
        left, right = ghosts
    left = np.broadcast_to(left, (width,) + u.shape[1:])
    right = np.broadcast_to(right, (width,) + u.shape[1:])

    return np.concatenate([left, u, right])
