r"""
Numerical fluxes
----------------

Two-point fluxes and their numerical entropy fluxes, the convex combination
of a dissipative and an entropy conservative flux, and its high-order
extension through the LeFloch--Mercier--Rohde linear combination

.. math::

    f_\alpha(u_{k-p+1}, \dots, u_{k+p}) = \sum_{r=1}^p c_p^r
        \sum_{s=0}^{r-1} f^{GT}_\alpha(u_{k-s}, u_{k-s+r}).

All two-point functions are vectorized: ``u_l`` and ``u_r`` are arrays of
shape ``(..., m)``.

.. autoclass:: SchemeConfig
.. autoclass:: Scheme
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any

import numpy as np

from edfv.laws import Array, Burgers, Euler, LawDefinition, as_float, as_state

EC_FLUXES = ("tadmor", "ismail-roe")
DISS_FLUXES = ("godunov", "lxf")
PREDICTORS = ("godunov", "lxf", "eno2-lxf")


# {{{ godunov (burgers)


def godunov_flux_burgers(u_l: Array, u_r: Array) -> Array:
    # min of u^2/2 over [u_l, u_r] for rarefactions, max over [u_r, u_l]
    # for shocks; both reduce to the expression below
    return 0.5 * np.maximum(np.maximum(u_l, 0.0) ** 2, np.minimum(u_r, 0.0) ** 2)


def godunov_entropy_flux_burgers(u_l: Array, u_r: Array) -> Array:
    """Entropy flux ``u^3/3`` at the Riemann solution sampled at ``x/t = 0``.

    A stationary shock has two traces at the interface; the mean of their
    entropy fluxes is used, which keeps the one-step cell entropy inequality
    of both adjacent cells intact.
    """
    ul, ur = u_l[..., 0], u_r[..., 0]
    u0 = np.where(ul > ur,
                  np.where(ul + ur > 0, ul, ur),
                  np.clip(0.0, ul, np.maximum(ul, ur)))
    flux = u0**3 / 3.0

    stationary = (ul > ur) & (ul + ur == 0)
    return np.where(stationary, (ul**3 + ur**3) / 6.0, flux)


# }}}


# {{{ lax-friedrichs


def lax_friedrichs_flux(law: LawDefinition, u_l: Array, u_r: Array,
                        lam: float) -> Array:
    """Lax--Friedrichs flux for the mesh ratio ``lam = dt / dx``."""
    if not lam > 0:
        raise ValueError(f"mesh ratio must be positive: {lam}")
    return 0.5 * (law.flux(u_l) + law.flux(u_r)) + (u_l - u_r) / (2.0 * lam)


def lax_friedrichs_entropy_flux(law: LawDefinition, u_l: Array, u_r: Array,
                                lam: float) -> Array:
    if not lam > 0:
        raise ValueError(f"mesh ratio must be positive: {lam}")
    return (0.5 * (law.entropy_flux(u_l) + law.entropy_flux(u_r))
            + (law.entropy(u_l) - law.entropy(u_r)) / (2.0 * lam))


# }}}


# {{{ entropy conservative fluxes


def tadmor_ec_flux_burgers(u_l: Array, u_r: Array) -> Array:
    return (u_l**2 + u_l * u_r + u_r**2) / 6.0


def log_mean(x: Array, y: Array) -> Array:
    """Logarithmic mean ``(x - y) / (ln x - ln y)`` of positive numbers.

    Written as ``(x + y) / 2 * zeta / artanh(zeta)`` with
    ``zeta = (x - y) / (x + y)``; below ``|zeta| < 1e-4`` the ratio is
    replaced by its series so that ``x == y`` needs no special casing.
    """
    x = as_float(x)
    y = as_float(y)
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("logarithmic mean requires positive arguments")

    zeta = (x - y) / (x + y)
    z2 = zeta * zeta
    small = np.abs(zeta) < 1.0e-4

    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(small, 1.0, np.arctanh(zeta) / zeta)
    # artanh(z) / z = 1 + z^2/3 + z^4/5 + z^6/7 + ...
    series = 1.0 + z2 * (1.0 / 3.0 + z2 * (1.0 / 5.0 + z2 / 7.0))
    ratio = np.where(small, series, ratio)

    return 0.5 * (x + y) / ratio


def ismail_roe_flux(u_l: Array, u_r: Array, gamma: float) -> Array:
    """Entropy conservative flux of Ismail and Roe for the Euler equations."""
    g = gamma

    rho_l = u_l[..., 0]
    v_l = u_l[..., 1] / rho_l
    p_l = (g - 1.0) * (u_l[..., 2] - 0.5 * rho_l * v_l**2)
    rho_r = u_r[..., 0]
    v_r = u_r[..., 1] / rho_r
    p_r = (g - 1.0) * (u_r[..., 2] - 0.5 * rho_r * v_r**2)

    w_l = np.sqrt(rho_l / p_l)
    w_r = np.sqrt(rho_r / p_r)
    z1_l, z2_l, z3_l = w_l, w_l * v_l, w_l * p_l
    z1_r, z2_r, z3_r = w_r, w_r * v_r, w_r * p_r

    z1_avg = 0.5 * (z1_l + z1_r)
    z2_avg = 0.5 * (z2_l + z2_r)
    z3_avg = 0.5 * (z3_l + z3_r)
    z1_ln = log_mean(z1_l, z1_r)
    z3_ln = log_mean(z3_l, z3_r)

    rho_hat = z1_avg * z3_ln
    v_hat = z2_avg / z1_avg
    p1_hat = z3_avg / z1_avg
    p2_hat = ((g + 1.0) / (2.0 * g) * z3_ln / z1_ln
              + (g - 1.0) / (2.0 * g) * z3_avg / z1_avg)
    a2_hat = g * p2_hat / rho_hat
    h_hat = a2_hat / (g - 1.0) + 0.5 * v_hat**2

    return np.stack([
        rho_hat * v_hat,
        rho_hat * v_hat**2 + p1_hat,
        rho_hat * v_hat * h_hat,
        ], axis=-1)


def ec_entropy_flux(law: LawDefinition, u_l: Array, u_r: Array,
                    f_ec: Array) -> Array:
    """Numerical entropy flux matching an entropy conservative flux *f_ec*."""
    v_l = law.entropy_variables(u_l)
    v_r = law.entropy_variables(u_r)
    return 0.5 * (np.sum((v_l + v_r) * f_ec, axis=-1)
                  - law.entropy_potential(u_l) - law.entropy_potential(u_r))


def tadmor_residual(law: LawDefinition, u_l: Array, u_r: Array,
                    f_ec: Array) -> Array:
    """``<v_r - v_l, f> - (psi_r - psi_l)``, zero for entropy conservation."""
    dv = law.entropy_variables(u_r) - law.entropy_variables(u_l)
    dpsi = law.entropy_potential(u_r) - law.entropy_potential(u_l)
    return np.sum(dv * f_ec, axis=-1) - dpsi


# }}}


# {{{ lmr coefficients


@dataclass(frozen=True)
class LmrCoefficients:
    p: int
    c: tuple[float, ...]
    exact: tuple[Fraction, ...] = ()

    def order_residuals(self) -> np.ndarray:
        r = np.arange(1, self.p + 1, dtype=np.float64)
        c = np.array(self.c)
        res = [np.sum(c * r) - 1.0]
        res += [np.sum(c * r ** (2 * s - 1)) for s in range(2, self.p + 1)]
        return np.array(res)


def _solve_exact(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    # Gauss-Jordan elimination over the rationals
    n = len(b)
    M = [row[:] + [rhs] for row, rhs in zip(A, b)]
    for col in range(n):
        piv = next(i for i in range(col, n) if M[i][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        M[col] = [x / M[col][col] for x in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                M[i] = [x - M[i][col] * y for x, y in zip(M[i], M[col])]
    return [row[-1] for row in M]


@lru_cache
def lmr_coefficients(p: int) -> LmrCoefficients:
    """Weights of the order ``2p`` entropy conservative combination.

    Solves ``sum_r c_r r = 1`` and ``sum_r c_r r^(2s - 1) = 0`` for
    ``s = 2, ..., p`` in exact rational arithmetic.
    """
    if p < 1:
        raise ValueError(f"half-stencil width must be >= 1: {p}")

    A = [[Fraction(r) ** (2 * s - 1) for r in range(1, p + 1)]
         for s in range(1, p + 1)]
    b = [Fraction(1)] + [Fraction(0)] * (p - 1)
    exact = tuple(_solve_exact(A, b))

    return LmrCoefficients(p=p, c=tuple(float(c) for c in exact), exact=exact)


# }}}


# {{{ scheme


@dataclass(frozen=True)
class SchemeConfig:
    """Parameters of the entropy dissipative scheme.

    ``kernel_halfwidth`` defaults to ``2 p`` so that the plateau of the
    mollification kernel covers the whole flux stencil.
    """

    p: int = 2
    ec_flux: str = "tadmor"
    diss_flux: str = "godunov"
    predictor: str = "godunov"
    a: float = 1.0 / 20.0
    b: float = 1.0 / 100.0
    kernel_halfwidth: int | None = None
    eno_slope_mode: str = "abs"
    force_alpha: str = "none"

    def __post_init__(self) -> None:
        if self.kernel_halfwidth is None:
            object.__setattr__(self, "kernel_halfwidth", 2 * self.p)

        if self.p < 1:
            raise ValueError(f"p must be >= 1: {self.p}")
        if not (self.a > 0 and self.b > 0):
            raise ValueError(f"thresholds must be positive: a={self.a}, b={self.b}")
        if self.kernel_halfwidth < 1:
            raise ValueError(f"kernel halfwidth must be >= 1: {self.kernel_halfwidth}")
        if self.ec_flux not in EC_FLUXES:
            raise ValueError(f"unknown entropy conservative flux: {self.ec_flux!r}")
        if self.diss_flux not in DISS_FLUXES:
            raise ValueError(f"unknown dissipative flux: {self.diss_flux!r}")
        if self.predictor not in PREDICTORS:
            raise ValueError(f"unknown predictor: {self.predictor!r}")
        if self.eno_slope_mode not in ("abs", "literal"):
            raise ValueError(f"unknown ENO slope mode: {self.eno_slope_mode!r}")
        if self.force_alpha not in ("none", "zero", "one"):
            raise ValueError(f"unknown alpha override: {self.force_alpha!r}")

    def validate(self, law: LawDefinition) -> None:
        if isinstance(law, Euler):
            if self.ec_flux != "ismail-roe":
                raise ValueError("Euler requires the Ismail-Roe flux")
            if self.diss_flux == "godunov" or self.predictor == "godunov":
                raise ValueError("no Godunov flux is available for Euler")
        elif isinstance(law, Burgers):
            if self.ec_flux != "tadmor":
                raise ValueError("Burgers requires the Tadmor flux")
        else:
            raise TypeError(f"unsupported law: {law!r}")


@dataclass(frozen=True)
class Scheme:
    """Flux evaluation for a fixed law and :class:`SchemeConfig`."""

    law: LawDefinition
    config: SchemeConfig
    coeffs: LmrCoefficients = field(init=False)

    def __post_init__(self) -> None:
        self.config.validate(self.law)
        object.__setattr__(self, "coeffs", lmr_coefficients(self.config.p))

    @property
    def p(self) -> int:
        return self.config.p

    # {{{ two-point

    def ec(self, u_l: Array, u_r: Array) -> Array:
        if self.config.ec_flux == "tadmor":
            return tadmor_ec_flux_burgers(u_l, u_r)
        return ismail_roe_flux(u_l, u_r, self.law.gamma)

    def diss(self, u_l: Array, u_r: Array, lam: float) -> Array:
        if self.config.diss_flux == "godunov":
            return godunov_flux_burgers(u_l, u_r)
        return lax_friedrichs_flux(self.law, u_l, u_r, lam)

    def ec_entropy(self, u_l: Array, u_r: Array,
                   f_ec: Array | None = None) -> Array:
        if f_ec is None:
            f_ec = self.ec(u_l, u_r)
        return ec_entropy_flux(self.law, u_l, u_r, f_ec)

    def diss_entropy(self, u_l: Array, u_r: Array, lam: float) -> Array:
        if self.config.diss_flux == "godunov":
            return godunov_entropy_flux_burgers(u_l, u_r)
        return lax_friedrichs_entropy_flux(self.law, u_l, u_r, lam)

    def convex(self, alpha: Array, u_l: Array, u_r: Array, lam: float) -> Array:
        alpha = np.asarray(alpha)[..., None]
        return alpha * self.diss(u_l, u_r, lam) + (1 - alpha) * self.ec(u_l, u_r)

    # }}}

    # {{{ interfaces

    def interface_fluxes(self, padded: Array, alpha: Array, lam: float, *,
                         entropy: bool = False) -> tuple[Array, Array | None]:
        """High-order fluxes at every interface of a padded field.

        *padded* holds ``n + 2 p`` cells, the first and last ``p`` being
        ghosts. The result has ``n + 1`` rows: row ``i`` is the interface
        between cells ``i - 1`` and ``i``. With *entropy* set, the matching
        numerical entropy fluxes are returned as well.
        """
        p = self.p
        n_if = padded.shape[0] - 2 * p + 1
        m = padded.shape[-1]

        dtype = padded.dtype
        f_diss = np.zeros((n_if, m), dtype=dtype)
        f_ec = np.zeros((n_if, m), dtype=dtype)
        F_diss = np.zeros(n_if, dtype=dtype) if entropy else None
        F_ec = np.zeros(n_if, dtype=dtype) if entropy else None

        for r, c in zip(range(1, p + 1), self.coeffs.c):
            u_l, u_r = padded[:-r], padded[r:]
            fd = self.diss(u_l, u_r, lam)
            fe = self.ec(u_l, u_r)
            if entropy:
                Fd = self.diss_entropy(u_l, u_r, lam)
                Fe = self.ec_entropy(u_l, u_r, fe)

            for s in range(r):
                # interface i uses the pair (i - 1 - s, i - 1 - s + r)
                lo = p - 1 - s
                f_diss += c * fd[lo:lo + n_if]
                f_ec += c * fe[lo:lo + n_if]
                if entropy:
                    F_diss += c * Fd[lo:lo + n_if]
                    F_ec += c * Fe[lo:lo + n_if]

        alpha = np.asarray(alpha, dtype=np.float64)
        f = alpha[:, None] * f_diss + (1.0 - alpha[:, None]) * f_ec
        F = alpha * F_diss + (1.0 - alpha) * F_ec if entropy else None

        return f, F

    # }}}


# }}}


# {{{ stencil-level operations


def convex_flux(alpha: float, scheme: Scheme, u_l: Any, u_r: Any,
                lam: float = 1.0) -> Array:
    """``alpha * f_diss + (1 - alpha) * f_ec`` for a single pair."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1]: {alpha}")
    u_l = as_state(scheme.law, u_l)
    u_r = as_state(scheme.law, u_r)
    return scheme.convex(alpha, u_l, u_r, lam)


def lmr_flux(alpha: float, scheme: Scheme, stencil: Any,
             lam: float = 1.0) -> Array:
    """High-order flux at the centre interface of ``2 p`` states."""
    stencil = as_state(scheme.law, stencil)
    p = scheme.p
    if stencil.shape[0] != 2 * p:
        raise ValueError(f"stencil must hold {2 * p} states, got {stencil.shape[0]}")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1]: {alpha}")

    f, _ = scheme.interface_fluxes(stencil, np.array([alpha]), lam)
    return f[0]


def numerical_entropy_flux(kind: str, law: LawDefinition, *args: Any,
                           alpha: float | None = None,
                           lam: float | None = None,
                           scheme: Scheme | None = None) -> Array:
    """Numerical entropy flux of the given *kind*.

    ``"godunov"``, ``"tadmor"`` and ``"lxf"`` take a pair ``(u_l, u_r)``;
    ``"gt"`` takes a pair and *alpha* and the dissipative part of *scheme*;
    ``"lmrgt"`` takes a ``2 p`` stencil, *alpha* and *scheme*.
    """
    if kind in ("godunov", "tadmor", "lxf", "gt"):
        if len(args) != 2:
            raise ValueError(f"{kind!r} entropy flux takes a pair of states")
        u_l, u_r = (as_state(law, a) for a in args)
    elif kind == "lmrgt":
        if len(args) != 1:
            raise ValueError("'lmrgt' entropy flux takes a single stencil")
    else:
        raise ValueError(f"unknown entropy flux kind: {kind!r}")

    if kind == "godunov":
        if not isinstance(law, Burgers):
            raise ValueError("Godunov entropy flux is only available for Burgers")
        return godunov_entropy_flux_burgers(u_l, u_r)

    if kind == "tadmor":
        if isinstance(law, Burgers):
            f_ec = tadmor_ec_flux_burgers(u_l, u_r)
        else:
            f_ec = ismail_roe_flux(u_l, u_r, law.gamma)
        return ec_entropy_flux(law, u_l, u_r, f_ec)

    if kind == "lxf":
        if lam is None:
            raise ValueError("'lxf' entropy flux requires the mesh ratio lam")
        return lax_friedrichs_entropy_flux(law, u_l, u_r, lam)

    if alpha is None or scheme is None:
        raise ValueError(f"{kind!r} entropy flux requires alpha and scheme")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1]: {alpha}")
    lam = 1.0 if lam is None else lam

    if kind == "gt":
        return (alpha * scheme.diss_entropy(u_l, u_r, lam)
                + (1 - alpha) * scheme.ec_entropy(u_l, u_r))

    stencil = as_state(law, args[0])
    if stencil.shape[0] != 2 * scheme.p:
        raise ValueError(
            f"stencil must hold {2 * scheme.p} states, got {stencil.shape[0]}")
    _, F = scheme.interface_fluxes(stencil, np.array([alpha]), lam, entropy=True)
    return F[0]


# }}}
