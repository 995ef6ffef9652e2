from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from edfv.experiments import build_initial_field, get_scenario, make_grid
from edfv.fluxes import SchemeConfig
from edfv.laws import Burgers, Euler
from edfv.predictor import (
    AlphaField, compute_alpha, compute_s_ref, cut_hat, discrete_sup_mollify,
    eno2_traces, entropy_residual, entropy_residual_eno2_lxf,
    entropy_residual_godunov, entropy_residual_lxf, kernel_slope_bound,
    predictor_alpha, rescaled_kernel, smoothstep)


def brute_force_mollify(f, g, boundary):
    n, w = len(f), len(g) // 2
    out = []
    for i in range(n):
        best = -np.inf
        for j in range(-n - w, 2 * n + w):
            d = i - j
            if abs(d) > w:
                continue
            if boundary == "periodic":
                fj = f[j % n]
            else:
                fj = f[j] if 0 <= j < n else 0.0
            best = max(best, fj * g[d + w])
        out.append(best)
    return np.array(out)


# {{{ smoothstep and kernel


def test_smoothstep_values():
    assert smoothstep(0.0) == 0.0
    assert smoothstep(1.0) == 1.0
    assert smoothstep(0.5) == 0.5
    assert smoothstep(-3.0) == 0.0 and smoothstep(7.0) == 1.0


@pytest.mark.parametrize("x0", [0, 1])
def test_smoothstep_flat_ends(x0):
    # exact rational differences; in float64 the second difference at 1 is
    # swamped by round-off before the truncation error drops below 1e-6
    x0, h = Fraction(x0), Fraction(1, 10**8)
    H = [np.asarray(smoothstep(np.array(x, dtype=object))).item()
         for x in (x0 - h, x0, x0 + h)]
    d1 = (H[2] - H[0]) / (2 * h)
    d2 = (H[2] - 2 * H[1] + H[0]) / h**2
    assert abs(d1) <= 1e-6 and abs(d2) <= 1e-6


@given(st.floats(-2, 2), st.floats(-2, 2))
def test_smoothstep_monotone(x, y):
    lo, hi = min(x, y), max(x, y)
    assert 0.0 <= smoothstep(lo) <= smoothstep(hi) <= 1.0


def test_cut_hat_values():
    assert cut_hat(0.0) == 1.0
    assert cut_hat(1.0) == 0.0 and cut_hat(-1.0) == 0.0
    assert cut_hat(-0.75) == 0.5
    np.testing.assert_array_equal(cut_hat([-0.5, 0.25, 0.5]), 1.0)


def test_rescaled_kernel():
    np.testing.assert_array_equal(rescaled_kernel(1), [0, 1, 0])
    np.testing.assert_array_equal(rescaled_kernel(2), [0, 1, 1, 1, 0])
    k4 = rescaled_kernel(4)
    assert k4.size == 9 and k4.max() == 1.0
    assert k4[4 + 3] == 0.5 and k4[4 - 3] == 0.5
    assert kernel_slope_bound(k4) == 0.5
    with pytest.raises(ValueError):
        rescaled_kernel(0)


# }}}


# {{{ sup-mollification


def test_mollify_examples():
    f = np.array([0.0, 1.0, 0.0])
    np.testing.assert_array_equal(discrete_sup_mollify(f, [1.0]), f)

    f = np.array([0.0, 1.0, 0.0, 0.0, 0.0])
    np.testing.assert_array_equal(
        discrete_sup_mollify(f, [1.0, 1.0, 1.0], "zero"), [1, 1, 1, 0, 0])


def test_mollify_boundary_modes():
    f = np.array([1.0, 0.0, 0.0, 0.0])
    g = np.array([0.5, 1.0, 0.5])
    np.testing.assert_array_equal(discrete_sup_mollify(f, g, "periodic"),
                                  [1.0, 0.5, 0.0, 0.5])
    np.testing.assert_array_equal(discrete_sup_mollify(f, g, "zero"),
                                  [1.0, 0.5, 0.0, 0.0])
    with pytest.raises(ValueError):
        discrete_sup_mollify(f, [1.0, 1.0])
    with pytest.raises(ValueError):
        discrete_sup_mollify(f, g, "reflect")


step_functions = arrays(np.float64, st.integers(1, 30),
                        elements=st.floats(0, 1))
kernels = st.integers(0, 6).flatmap(
    lambda w: arrays(np.float64, 2 * w + 1, elements=st.floats(0, 1)))
modes = st.sampled_from(["periodic", "zero"])


@given(step_functions, kernels, modes)
def test_mollify_matches_brute_force(f, g, mode):
    np.testing.assert_array_equal(discrete_sup_mollify(f, g, mode),
                                  brute_force_mollify(f, g, mode))


@given(step_functions, kernels)
def test_mollify_sup_norm_product(f, g):
    out = discrete_sup_mollify(f, g, "periodic")
    assert abs(out.max() - f.max() * g.max()) <= 1e-14


# }}}


# {{{ residuals


def test_residuals_vanish_for_constant_fields():
    law = Burgers()
    u = np.full((10, 1), 0.7)
    for kind in ("godunov", "lxf", "eno2-lxf"):
        np.testing.assert_allclose(entropy_residual(kind, law, u, 0.01, 0.1),
                                   0.0, atol=1e-13)


def test_godunov_residual_at_shock():
    law = Burgers()
    u = np.array([2.0, 2.0, 2.0, 0.0, 0.0, 0.0])[:, None]
    s = entropy_residual_godunov(law, u, 0.02, 0.1, "fixed")
    assert s[2] < 0 or s[3] < 0
    assert np.all(s <= 1e-12)
    assert np.all(s[[0, 1, 4, 5]] == pytest.approx(0.0, abs=1e-12))


def test_godunov_residual_on_sine():
    sc = get_scenario("burgers-sine")
    grid = make_grid(sc, 100)
    u = build_initial_field(sc, grid)
    dt = 0.5 * grid.dx
    s = entropy_residual_godunov(Burgers(), u, dt, grid.dx)
    assert np.max(s) <= 1e-12


def test_godunov_residual_rejects_euler():
    with pytest.raises(ValueError):
        entropy_residual_godunov(Euler(), np.ones((4, 3)), 0.1, 0.1)


@given(arrays(np.float64, st.integers(3, 20), elements=st.floats(-3, 3)))
def test_lxf_residual_nonpositive(values):
    law = Burgers()
    u = values[:, None]
    dx = 0.1
    dt = 0.9 * dx / max(np.max(np.abs(values)), 1e-3)
    s = entropy_residual_lxf(law, u, dt, dx)
    assert np.all(s <= 1e-12 * max(1.0, np.max(np.abs(values)) ** 3 / dx))


def test_lxf_residual_largest_at_jump():
    u = np.array([1.0] * 5 + [-1.0] * 5)[:, None]
    s = entropy_residual_lxf(Burgers(), u, 0.05, 0.1, "fixed")
    assert np.argmin(s) in (4, 5)


def test_eno2_traces_linear_data_match():
    u = np.linspace(0.0, 1.0, 12)[:, None]
    u_m, u_p = eno2_traces(u, "fixed")
    # cells next to the repeated-edge ghosts see a zero slope
    np.testing.assert_allclose(u_m[2:-2], u_p[2:-2], atol=1e-15)
    s = entropy_residual_eno2_lxf(Burgers(), u, 0.3, "fixed")
    np.testing.assert_allclose(s[2:-2], 0.0, atol=1e-15)


def test_eno2_isolated_jump_is_plain_lxf():
    law = Burgers()
    ul, ur, lam = 1.5, -0.5, 0.3
    u = np.array([ul] * 4 + [ur] * 4)[:, None]
    s = entropy_residual_eno2_lxf(law, u, lam, "fixed")
    mid = 0.5 * (ul + ur) + 0.5 * lam * (0.5 * ul**2 - 0.5 * ur**2)
    expected = (0.5 * mid**2 - 0.25 * (ul**2 + ur**2)
                + 0.5 * lam * (ul**3 - ur**3) / 3.0)
    assert s[4] == pytest.approx(expected, rel=1e-14)
    assert np.all(s <= 1e-12)


def test_eno2_slope_modes_differ():
    u = np.array([0.0, 1.0, 3.0, 2.0, 0.0, -1.0])[:, None]
    abs_m, _ = eno2_traces(u, "periodic", slope_mode="abs")
    lit_m, _ = eno2_traces(u, "periodic", slope_mode="literal")
    assert not np.allclose(abs_m, lit_m)
    with pytest.raises(ValueError):
        eno2_traces(u, slope_mode="minmod")
    with pytest.raises(ValueError):
        eno2_traces(u[:2])


def test_eno2_inadmissible_traces_fall_back():
    law = Euler(1.4)
    # steep density drop drives a linear trace negative
    u = law.conserved(np.array([5.0, 5.0, 0.2, 0.01, 0.01]), 0.0, 1.0)
    s = entropy_residual_eno2_lxf(law, u, 0.1, "fixed")
    assert np.all(np.isfinite(s))


# }}}


# {{{ s_ref


def _godunov_one_step_oracle(cells, dt, dx):
    # scalar loops; fixed ghosts repeat the edge cells
    ext = [cells[0]] + list(cells) + [cells[-1]]

    def f(a, c):
        return 0.5 * max(max(a, 0.0) ** 2, min(c, 0.0) ** 2)

    def F(a, c):
        if a > c:
            if a + c == 0:
                return (a**3 + c**3) / 6.0
            u0 = a if a + c > 0 else c
        else:
            u0 = min(max(0.0, a), c)
        return u0**3 / 3.0

    s = []
    for k in range(1, len(ext) - 1):
        u_new = ext[k] - dt / dx * (f(ext[k], ext[k + 1]) - f(ext[k - 1], ext[k]))
        s.append((F(ext[k], ext[k + 1]) - F(ext[k - 1], ext[k])) / dx
                 + (0.5 * u_new**2 - 0.5 * ext[k] ** 2) / dt)
    return min(s)


def test_s_ref_constant_field_is_degenerate():
    s_ref, degenerate = compute_s_ref(Burgers(), np.ones((8, 1)), "godunov",
                                      0.01, 0.1)
    assert s_ref == 0.0 and degenerate


def test_s_ref_burgers_brute_force():
    u = np.array([0.3, 1.0, -0.2, -1.0, 0.5])[:, None]
    dt, dx = 0.04, 0.1
    oracle = min(_godunov_one_step_oracle([-1, -1, 1, 1], dt, dx),
                 _godunov_one_step_oracle([1, 1, -1, -1], dt, dx))
    s_ref, degenerate = compute_s_ref(Burgers(), u, "godunov", dt, dx)
    assert s_ref == pytest.approx(oracle, rel=1e-13)
    assert s_ref < 0 and not degenerate


def test_s_ref_shu_osher_negative():
    sc = get_scenario("shu-osher")
    grid = make_grid(sc, 200)
    law = Euler(1.4)
    u = build_initial_field(sc, grid, law)
    dt = 0.1 * grid.dx / np.max(law.max_wave_speed(u))
    for kind in ("lxf", "eno2-lxf"):
        s_ref, degenerate = compute_s_ref(law, u, kind, dt, grid.dx)
        assert s_ref < 0 and not degenerate


# }}}


# {{{ alpha


def test_alpha_zero_indicator():
    a = predictor_alpha(np.zeros(10), -1.0, SchemeConfig(p=2))
    assert np.all(a.alpha_interfaces == 0.0) and np.all(a.r_cells == 0.0)


def test_alpha_single_spike_copies_kernel():
    config = SchemeConfig(p=2, a=1 / 20, b=1 / 100, kernel_halfwidth=4)
    s = np.zeros(20)
    s[10] = -2.0
    a = predictor_alpha(s, -2.0, config)
    assert a.r_cells[10] == 1.0
    np.testing.assert_array_equal(a.alpha_cells[6:15], rescaled_kernel(4))
    assert np.all(a.alpha_cells[:6] == 0) and np.all(a.alpha_cells[15:] == 0)
    # interface values take the larger neighbour
    np.testing.assert_array_equal(
        a.alpha_interfaces[1:-1],
        np.maximum(a.alpha_cells[:-1], a.alpha_cells[1:]))


def test_alpha_degenerate_and_interface_input():
    config = SchemeConfig(p=2, predictor="eno2-lxf")
    a = predictor_alpha(np.full(11, -1.0), 0.0, config, degenerate=True)
    assert a.alpha_cells.size == 10 and np.all(a.alpha_interfaces == 0)

    s_if = np.zeros(11)
    s_if[5] = -1.0
    a = predictor_alpha(s_if, -1.0, config)
    # interface 5 touches cells 4 and 5
    assert a.r_cells[4] == 1.0 and a.r_cells[5] == 1.0
    assert a.r_cells[3] == 0.0 and a.r_cells[6] == 0.0


@given(st.integers(1, 8), st.integers(0, 39))
def test_alpha_plateau(w, spike):
    config = SchemeConfig(p=1, kernel_halfwidth=w)
    s = np.zeros(40)
    s[spike] = -1.0
    a = predictor_alpha(s, -1.0, config)
    for d in range(-(w // 2), w // 2 + 1):
        assert a.alpha_cells[(spike + d) % 40] >= 1.0


@given(arrays(np.float64, 30, elements=st.floats(-1, 0)),
       st.integers(1, 8))
def test_alpha_range_and_slope(s, w):
    config = SchemeConfig(p=1, kernel_halfwidth=w)
    a = predictor_alpha(s, -0.5, config)
    for arr in (a.r_cells, a.alpha_cells, a.alpha_interfaces):
        assert np.all((arr >= 0) & (arr <= 1))
    jumps = np.abs(np.diff(np.append(a.alpha_cells, a.alpha_cells[0])))
    assert np.all(jumps <= kernel_slope_bound(rescaled_kernel(w)) + 1e-15)


@given(arrays(np.float64, 20, elements=st.floats(-1, 0)),
       arrays(np.float64, 20, elements=st.floats(0, 1)))
def test_thresholding_monotone(s, extra):
    # more dissipation never lowers r
    config = SchemeConfig(p=1)
    r1 = predictor_alpha(s, -1.0, config).r_cells
    r2 = predictor_alpha(s - extra, -1.0, config).r_cells
    assert np.all(r2 >= r1)


def test_compute_alpha_overrides():
    u = np.linspace(-1, 1, 12)[:, None]
    for mode, value in (("zero", 0.0), ("one", 1.0)):
        a = compute_alpha(Burgers(), SchemeConfig(p=2, force_alpha=mode), u,
                          0.01, 0.1)
        assert np.all(a.alpha_interfaces == value)
    assert AlphaField.constant(5, 0.5).alpha_interfaces.size == 6


def test_compute_alpha_constant_field():
    a = compute_alpha(Burgers(), SchemeConfig(p=2), np.ones((12, 1)), 0.01, 0.1)
    assert np.all(a.alpha_interfaces == 0.0)


# }}}
