r"""
Entropy inequality predictors
-----------------------------

Per-cell indicators :math:`\alpha \in [0, 1]` that switch the convex
combination flux towards its dissipative part wherever a base scheme
produces a large amount of entropy, relative to the entropy production
:math:`s^{ref}` of the strongest shock the current solution could contain:

.. math::

    r_k = H\left(\frac{s_k / s^{ref} - a}{b}\right), \qquad
    \alpha = r \circledast h,

with :math:`H` the smoothstep function and :math:`\circledast` the
discrete sup-mollification with a cut hat kernel :math:`h`.

.. autofunction:: smoothstep
.. autofunction:: discrete_sup_mollify
.. autofunction:: compute_alpha
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from edfv.fluxes import (
    SchemeConfig,
    godunov_entropy_flux_burgers,
    godunov_flux_burgers,
    lax_friedrichs_entropy_flux,
    lax_friedrichs_flux,
)
from edfv.grid import pad
from edfv.laws import Array, Burgers, LawDefinition

DEGENERATE_TOL = 1.0e-14


# {{{ smoothstep and kernels


def smoothstep(x: Any) -> Array:
    # integers are promoted; floats of any width and exact rationals
    # (object arrays of Fraction) are evaluated in their own arithmetic
    x = np.asarray(x)
    if x.dtype.kind in "biu":
        x = x.astype(np.float64)
    x = np.minimum(np.maximum(x, 0), 1)
    return x**3 * (10 + x * (-15 + 6 * x))


def cut_hat(x: Any) -> Array:
    x = np.asarray(x, dtype=np.float64)
    return np.maximum(0.0, np.minimum(1.0, np.minimum(2.0 * x + 2.0, -2.0 * x + 2.0)))


def rescaled_kernel(halfwidth: int) -> np.ndarray:
    """Samples ``h(j / W)`` for ``j = -W, ..., W``; entry ``W`` is the centre."""
    if halfwidth < 1:
        raise ValueError(f"kernel halfwidth must be >= 1: {halfwidth}")
    j = np.arange(-halfwidth, halfwidth + 1)
    return cut_hat(j / halfwidth)


def kernel_slope_bound(kernel: np.ndarray) -> float:
    """Largest difference between adjacent kernel samples (zero outside)."""
    g = np.concatenate([[0.0], kernel, [0.0]])
    return float(np.max(np.abs(np.diff(g))))


# }}}


# {{{ sup-mollification


def discrete_sup_mollify(f: Any, g: Any, boundary: str = "periodic") -> np.ndarray:
    """``out[i] = max_j f[j] g[i - j]`` with *g* indexed around its centre.

    *g* has odd length ``2 W + 1``. Outside the domain *f* wraps around for
    ``boundary="periodic"`` and vanishes for ``boundary="zero"``.
    """
    f = np.asarray(f, dtype=np.float64)
    g = np.asarray(g, dtype=np.float64)
    if g.size % 2 != 1:
        raise ValueError("kernel must have odd length")
    if boundary not in ("periodic", "zero"):
        raise ValueError(f"unknown boundary mode: {boundary!r}")

    n = f.size
    w = g.size // 2
    if boundary == "periodic":
        ext = f[np.arange(-w, n + w) % n]
    else:
        ext = np.concatenate([np.zeros(w), f, np.zeros(w)])

    out = np.full(n, -np.inf)
    for d in range(-w, w + 1):
        # f[i - d] * g[d]
        out = np.maximum(out, ext[w - d:w - d + n] * g[w + d])

    return out


# }}}


# {{{ residuals


def _one_step_residual(law: LawDefinition, padded: Array, dt: float, dx: float,
                       flux, entropy_flux) -> Array:
    u_l, u_r = padded[:-1], padded[1:]
    f = flux(u_l, u_r)
    F = entropy_flux(u_l, u_r)

    u = padded[1:-1]
    u_new = u - dt / dx * (f[1:] - f[:-1])

    return (F[1:] - F[:-1]) / dx + (law.entropy(u_new) - law.entropy(u)) / dt


def entropy_residual_godunov(law: LawDefinition, field: Array, dt: float,
                             dx: float, boundary: str = "periodic",
                             ghosts: tuple[Any, Any] | None = None) -> Array:
    """Cell entropy production of one forward Godunov step (Burgers only)."""
    if not isinstance(law, Burgers):
        raise ValueError("the Godunov predictor is only available for Burgers")
    padded = pad(field, 1, boundary, ghosts)
    return _one_step_residual(law, padded, dt, dx,
                              godunov_flux_burgers, godunov_entropy_flux_burgers)


def entropy_residual_lxf(law: LawDefinition, field: Array, dt: float,
                         dx: float, boundary: str = "periodic",
                         ghosts: tuple[Any, Any] | None = None) -> Array:
    lam = dt / dx
    padded = pad(field, 1, boundary, ghosts)
    return _one_step_residual(
        law, padded, dt, dx,
        lambda ul, ur: lax_friedrichs_flux(law, ul, ur, lam),
        lambda ul, ur: lax_friedrichs_entropy_flux(law, ul, ur, lam))


def _admissible(law: LawDefinition, u: Array) -> Array:
    if isinstance(law, Burgers):
        return np.isfinite(u[..., 0])
    with np.errstate(all="ignore"):
        p = law.pressure(u)
    return (u[..., 0] > 0) & (p > 0) & np.isfinite(p)


def eno2_traces(field: Array, boundary: str = "periodic",
                ghosts: tuple[Any, Any] | None = None,
                slope_mode: str = "abs") -> tuple[Array, Array]:
    """Left and right traces at each of the ``n + 1`` interfaces.

    Each cell keeps the one-sided difference of smaller magnitude
    (``slope_mode="abs"``) or the smaller signed one (``"literal"``).
    """
    if field.shape[0] < 3:
        raise ValueError("ENO2 reconstruction needs at least three cells")

    u = pad(field, 2, boundary, ghosts)
    d_l = u[1:-1] - u[:-2]
    d_r = u[2:] - u[1:-1]
    if slope_mode == "abs":
        d = np.where(np.abs(d_l) < np.abs(d_r), d_l, d_r)
    elif slope_mode == "literal":
        d = np.minimum(d_l, d_r)
    else:
        raise ValueError(f"unknown slope mode: {slope_mode!r}")

    # cells -1, ..., n
    mid = u[1:-1]
    u_minus = (mid + 0.5 * d)[:-1]
    u_plus = (mid - 0.5 * d)[1:]

    return u_minus, u_plus


def _eno2_lxf_dissipation(law: LawDefinition, u_m: Array, u_p: Array,
                          lam: float) -> Array:
    mid = 0.5 * (u_m + u_p) + 0.5 * lam * (law.flux(u_m) - law.flux(u_p))
    return (law.entropy(mid) - 0.5 * (law.entropy(u_m) + law.entropy(u_p))
            + 0.5 * lam * (law.entropy_flux(u_m) - law.entropy_flux(u_p)))


def entropy_residual_eno2_lxf(law: LawDefinition, field: Array, lam: float,
                              boundary: str = "periodic",
                              ghosts: tuple[Any, Any] | None = None,
                              slope_mode: str = "abs") -> Array:
    """Interface entropy production of a Lax--Friedrichs step started from
    the ENO2 reconstruction, in the limit of vanishing sub-cells.

    Returns ``n + 1`` values, entry ``i`` belonging to the interface between
    cells ``i - 1`` and ``i``. Interfaces whose traces (or Lax--Friedrichs
    average) leave the admissible set fall back to the cell means.
    """
    u_m, u_p = eno2_traces(field, boundary, ghosts, slope_mode)
    means = pad(field, 1, boundary, ghosts)
    c_m, c_p = means[:-1], means[1:]

    ok = _admissible(law, u_m) & _admissible(law, u_p)
    u_m = np.where(ok[:, None], u_m, c_m)
    u_p = np.where(ok[:, None], u_p, c_p)

    with np.errstate(all="ignore"):
        s = _eno2_lxf_dissipation(law, u_m, u_p, lam)
    bad = ~np.isfinite(s)
    if np.any(bad):
        s[bad] = _eno2_lxf_dissipation(law, c_m[bad], c_p[bad], lam)

    return s


def entropy_residual(kind: str, law: LawDefinition, field: Array, dt: float,
                     dx: float, boundary: str = "periodic",
                     ghosts: tuple[Any, Any] | None = None,
                     slope_mode: str = "abs") -> Array:
    if kind == "godunov":
        return entropy_residual_godunov(law, field, dt, dx, boundary, ghosts)
    if kind == "lxf":
        return entropy_residual_lxf(law, field, dt, dx, boundary, ghosts)
    if kind == "eno2-lxf":
        return entropy_residual_eno2_lxf(law, field, dt / dx, boundary, ghosts,
                                         slope_mode)
    raise ValueError(f"unknown predictor: {kind!r}")


def extreme_states(law: LawDefinition, field: Array) -> tuple[Array, Array]:
    """Cell states of maximal and minimal value (scalar) or entropy (system)."""
    key = field[:, 0] if isinstance(law, Burgers) else law.entropy(field)
    return field[np.argmax(key)], field[np.argmin(key)]


def compute_s_ref(law: LawDefinition, field: Array, kind: str, dt: float,
                  dx: float, slope_mode: str = "abs") -> tuple[float, bool]:
    """Entropy production of the strongest two-state jump in *field*.

    Both orderings of the extreme states are placed on a four cell grid and
    advanced by one step of the base scheme. Returns ``(s_ref, degenerate)``
    where *degenerate* flags a (numerically) constant field.
    """
    u_hi, u_lo = extreme_states(law, field)

    s_ref = 0.0
    for left, right in ((u_lo, u_hi), (u_hi, u_lo)):
        aux = np.stack([left, left, right, right])
        s = entropy_residual(kind, law, aux, dt, dx, boundary="fixed",
                             slope_mode=slope_mode)
        s_ref = min(s_ref, float(np.min(s)))

    return s_ref, abs(s_ref) < DEGENERATE_TOL


# }}}


# {{{ alpha


@dataclass(frozen=True)
class AlphaField:
    #: thresholded indicator per cell
    r_cells: np.ndarray
    #: mollified indicator per cell
    alpha_cells: np.ndarray
    #: per interface; entry ``i`` lies between cells ``i - 1`` and ``i``
    alpha_interfaces: np.ndarray

    @classmethod
    def constant(cls, n_cells: int, value: float) -> AlphaField:
        return cls(np.full(n_cells, value), np.full(n_cells, value),
                   np.full(n_cells + 1, value))


def cells_to_interfaces(alpha_cells: Array, boundary: str = "periodic") -> Array:
    if boundary == "periodic":
        ext = np.concatenate([alpha_cells[-1:], alpha_cells, alpha_cells[:1]])
    else:
        ext = np.concatenate([[0.0], alpha_cells, [0.0]])
    return np.maximum(ext[:-1], ext[1:])


def predictor_alpha(s: Array, s_ref: float, config: SchemeConfig,
                    boundary: str = "periodic",
                    degenerate: bool = False) -> AlphaField:
    """Threshold and mollify an entropy production indicator.

    *s* holds one value per cell, or ``n + 1`` interface values which are
    first mapped to cells by taking the minimum of the two cell faces.
    """
    s = np.asarray(s, dtype=np.float64)
    if degenerate:
        n = s.size
        return AlphaField.constant(n - 1 if config.predictor == "eno2-lxf" else n, 0.0)

    if config.predictor == "eno2-lxf":
        s = np.minimum(s[:-1], s[1:])

    r = smoothstep((s / s_ref - config.a) / config.b)
    kernel = rescaled_kernel(config.kernel_halfwidth)
    mode = "periodic" if boundary == "periodic" else "zero"
    alpha = np.clip(discrete_sup_mollify(r, kernel, mode), 0.0, 1.0)

    return AlphaField(r, alpha, cells_to_interfaces(alpha, boundary))


def compute_alpha(law: LawDefinition, config: SchemeConfig, field: Array,
                  dt: float, dx: float, boundary: str = "periodic",
                  ghosts: tuple[Any, Any] | None = None) -> AlphaField:
    """Predictor output for the state at the start of a time step."""
    n = field.shape[0]
    if config.force_alpha == "zero":
        return AlphaField.constant(n, 0.0)
    if config.force_alpha == "one":
        return AlphaField.constant(n, 1.0)

    kind = config.predictor
    s = entropy_residual(kind, law, field, dt, dx, boundary, ghosts,
                         config.eno_slope_mode)
    s_ref, degenerate = compute_s_ref(law, field, kind, dt, dx,
                                      config.eno_slope_mode)

    return predictor_alpha(s, s_ref, config, boundary, degenerate)


# }}}
