"""Entropy dissipative high order finite volume schemes in one dimension."""

from edfv.diagnostics import (
    EntropyTimeSeries, ErrorReport, convergence_rates, error_norms,
    per_cell_entropy_residual, restrict_reference, total_entropy)
from edfv.experiments import (
    RunConfig, RunResult, Scenario, build_initial_field, convergence_study,
    exact_solution, get_scenario, run)
from edfv.fluxes import (
    Scheme, SchemeConfig, convex_flux, ismail_roe_flux, lax_friedrichs_flux,
    lmr_coefficients, lmr_flux, log_mean, numerical_entropy_flux,
    tadmor_ec_flux_burgers)
from edfv.grid import Grid1D, pad
from edfv.laws import (
    AdmissibilityError, Burgers, Euler, entropy_pair, exact_riemann_burgers,
    make_law, physical_flux)
from edfv.predictor import (
    AlphaField, compute_alpha, compute_s_ref, discrete_sup_mollify,
    predictor_alpha, rescaled_kernel, smoothstep)
from edfv.solver import Solver, SolverError, integrate, ssprk104_step

__all__ = [
    "AdmissibilityError", "AlphaField", "Burgers", "EntropyTimeSeries",
    "ErrorReport", "Euler", "Grid1D", "RunConfig", "RunResult", "Scenario",
    "Scheme", "SchemeConfig", "Solver", "SolverError",
    "build_initial_field", "compute_alpha", "compute_s_ref",
    "convergence_rates", "convergence_study", "convex_flux",
    "discrete_sup_mollify", "entropy_pair", "error_norms",
    "exact_riemann_burgers", "exact_solution", "get_scenario", "integrate",
    "ismail_roe_flux", "lax_friedrichs_flux", "lmr_coefficients", "lmr_flux",
    "log_mean", "make_law", "numerical_entropy_flux", "pad",
    "per_cell_entropy_residual", "physical_flux", "predictor_alpha",
    "rescaled_kernel", "restrict_reference", "run", "smoothstep",
    "ssprk104_step", "tadmor_ec_flux_burgers",
]
