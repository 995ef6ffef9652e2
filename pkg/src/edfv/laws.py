r"""
Conservation laws
-----------------

Scalar Burgers' equation and the 1D Euler equations of gas dynamics,

.. math::

    \frac{\partial u}{\partial t} + \frac{\partial f(u)}{\partial x} = 0,

together with the entropy pairs used throughout the package. States are
numpy arrays whose *last* axis holds the conserved components, so a Burgers
field on ``n`` cells has shape ``(n, 1)`` and an Euler field ``(n, 3)``.

.. autoclass:: Burgers
.. autoclass:: Euler
.. autofunction:: entropy_pair
.. autofunction:: exact_riemann_burgers
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, NamedTuple, Union

import numpy as np

Array = Any


class AdmissibilityError(ValueError):
    """Raised for states outside the admissible set of a law."""

    def __init__(self, msg: str, index: int | None = None) -> None:
        super().__init__(msg if index is None else f"{msg} (cell {index})")
        self.index = index


class EntropyPairValue(NamedTuple):
    #: entropy density
    U: Array
    #: entropy flux density
    F: Array
    #: entropy variables, dU/du
    v: Array
    #: entropy potential, <v, f(u)> - F(u)
    psi: Array


# {{{ burgers


@dataclass(frozen=True)
class Burgers:
    """Inviscid Burgers' equation with the entropy pair ``(u^2/2, u^3/3)``."""

    kind: str = "burgers"

    @property
    def n_components(self) -> int:
        return 1

    def check_admissible(self, u: Array) -> None:
        bad = ~np.isfinite(u[..., 0])
        if np.any(bad):
            raise AdmissibilityError(
                "non-finite Burgers state", int(np.flatnonzero(bad.ravel())[0]))

    def flux(self, u: Array) -> Array:
        return 0.5 * u**2

    def entropy(self, u: Array) -> Array:
        return 0.5 * u[..., 0] ** 2

    def entropy_flux(self, u: Array) -> Array:
        return u[..., 0] ** 3 / 3.0

    def entropy_variables(self, u: Array) -> Array:
        return u.copy()

    def entropy_potential(self, u: Array) -> Array:
        return u[..., 0] ** 3 / 6.0

    def max_wave_speed(self, u: Array) -> Array:
        return np.abs(u[..., 0])


# }}}


# {{{ euler


@dataclass(frozen=True)
class Euler:
    r"""1D Euler equations for an ideal gas.

    The entropy pair is :math:`U = -\rho S`, :math:`F = -\rho v S` with
    :math:`S = \ln(p \rho^{-\gamma})`, i.e. *without* the customary
    :math:`1/(\gamma - 1)` scaling.
    """

    gamma: float = 1.4
    kind: str = "euler"

    def __post_init__(self) -> None:
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must be > 1: {self.gamma}")

    @property
    def n_components(self) -> int:
        return 3

    def pressure(self, u: Array) -> Array:
        rho, mom, energy = u[..., 0], u[..., 1], u[..., 2]
        return (self.gamma - 1.0) * (energy - 0.5 * mom**2 / rho)

    def check_admissible(self, u: Array) -> None:
        rho = u[..., 0]
        with np.errstate(all="ignore"):
            p = self.pressure(u)
        bad = ~((rho > 0) & (p > 0) & np.isfinite(p))
        if np.any(bad):
            raise AdmissibilityError(
                "inadmissible Euler state (rho <= 0 or p <= 0)",
                int(np.flatnonzero(bad.ravel())[0]))

    def primitive(self, u: Array) -> tuple[Array, Array, Array]:
        rho = u[..., 0]
        v = u[..., 1] / rho
        return rho, v, self.pressure(u)

    def conserved(self, rho: Array, v: Array, p: Array) -> Array:
        rho, v, p = np.broadcast_arrays(as_float(rho), v, p)
        energy = p / (self.gamma - 1.0) + 0.5 * rho * v**2
        return np.stack([rho, rho * v, energy], axis=-1)

    def flux(self, u: Array) -> Array:
        rho, v, p = self.primitive(u)
        return np.stack([rho * v, rho * v**2 + p, v * (u[..., 2] + p)], axis=-1)

    def specific_entropy(self, u: Array) -> Array:
        rho, _, p = self.primitive(u)
        return np.log(p) - self.gamma * np.log(rho)

    def entropy(self, u: Array) -> Array:
        return -u[..., 0] * self.specific_entropy(u)

    def entropy_flux(self, u: Array) -> Array:
        return -u[..., 1] * self.specific_entropy(u)

    def entropy_variables(self, u: Array) -> Array:
        g = self.gamma
        rho, v, p = self.primitive(u)
        s = np.log(p) - g * np.log(rho)
        beta = (g - 1.0) * rho / p
        return np.stack([g - s - 0.5 * beta * v**2, beta * v, -beta], axis=-1)

    def entropy_potential(self, u: Array) -> Array:
        # <v, f> - F collapses to (gamma - 1) * rho * v
        return (self.gamma - 1.0) * u[..., 1]

    def max_wave_speed(self, u: Array) -> Array:
        rho, v, p = self.primitive(u)
        return np.abs(v) + np.sqrt(self.gamma * p / rho)


# }}}


LawDefinition = Union[Burgers, Euler]


def as_float(x: Any) -> Array:
    """*x* as a floating point array; extended precision input is kept."""
    x = np.asarray(x)
    return x if np.issubdtype(x.dtype, np.floating) else x.astype(np.float64)


def make_law(kind: str, gamma: float = 1.4) -> LawDefinition:
    if kind == "burgers":
        return Burgers()
    if kind == "euler":
        return Euler(gamma=gamma)
    raise ValueError(f"unknown law: {kind!r}")


def as_state(law: LawDefinition, u: Any) -> Array:
    """Convert *u* to a float array with a trailing component axis."""
    u = as_float(u)
    if law.n_components == 1 and (u.ndim == 0 or u.shape[-1] != 1):
        u = u[..., None]
    if u.shape[-1] != law.n_components:
        raise ValueError(
            f"expected {law.n_components} components, got shape {u.shape}")
    return u


# {{{ checked operations


def physical_flux(law: LawDefinition, u: Any) -> Array:
    u = as_state(law, u)
    law.check_admissible(u)
    return law.flux(u)


def pressure(law: Euler, u: Any) -> Array:
    u = as_state(law, u)
    if np.any(u[..., 0] <= 0):
        raise AdmissibilityError("density must be positive")
    return law.pressure(u)


def entropy_pair(law: LawDefinition, u: Any) -> EntropyPairValue:
    u = as_state(law, u)
    law.check_admissible(u)
    return EntropyPairValue(
        U=law.entropy(u),
        F=law.entropy_flux(u),
        v=law.entropy_variables(u),
        psi=law.entropy_potential(u))


def max_wave_speed(law: LawDefinition, u: Any) -> Array:
    u = as_state(law, u)
    law.check_admissible(u)
    return law.max_wave_speed(u)


# }}}


def exact_riemann_burgers(u_l: Any, u_r: Any, xi: Any) -> Array:
    """Entropy solution of the Burgers Riemann problem at ``x / t = xi``."""
    u_l, u_r, xi = np.broadcast_arrays(
        np.asarray(u_l, dtype=np.float64), u_r, xi)

    shock = u_l > u_r
    speed = 0.5 * (u_l + u_r)
    u_shock = np.where(xi < speed, u_l, u_r)
    u_fan = np.clip(xi, u_l, np.maximum(u_l, u_r))

    return np.where(shock, u_shock, u_fan)
