import logging

import numpy as np
import pytest

from zakharov_radial.errors import InvalidParameterError
from zakharov_radial.littlewood_paley import chi, frequency_l2_norm, homogeneous_sobolev_norm, lebesgue_norm
from zakharov_radial.radial_spectral import (
    make_grid,
    physical,
    schrodinger_propagate,
    spectral,
    to_frequency,
    wave_propagate,
)
from zakharov_radial.solver import (
    InitialData,
    SimState,
    StepperConfig,
    TimeSeries,
    energy,
    initial_data_family,
    mass,
    recover_wave_fields,
    reduce_to_first_order,
    simulate,
    strang_step,
)


@pytest.fixture(autouse=True)
def _quiet_boundary_warnings(caplog):
    caplog.set_level(logging.ERROR, logger="zakharov_radial")


@pytest.fixture(scope="module")
def grid():
    return make_grid(40.0, 256)


def _random_data(grid, rng):
    r = grid.r
    w = rng.uniform(0.7, 2.0, 3)
    c = rng.standard_normal(4)
    u0 = physical(grid, (c[0] + 1j * c[1]) * np.exp(-(r**2) / (2 * w[0] ** 2)))
    n0 = physical(grid, c[2] * np.exp(-(r**2) / (2 * w[1] ** 2)) + 0j)
    n1 = physical(grid, c[3] * (1 - r**2 / (3 * w[2] ** 2)) * np.exp(-(r**2) / (2 * w[2] ** 2)) + 0j)
    return InitialData(u0, n0, n1)


# ----------------------------------------------------------------------------- reduction


@pytest.mark.parametrize("alpha", [0.5, 1.0, 3.0])
def test_reduction_identity_on_random_data(grid, alpha):
    rng = np.random.default_rng(2024)
    for _ in range(20):
        d = _random_data(grid, rng)
        s = reduce_to_first_order(d, alpha)
        lhs = lebesgue_norm(d.n0, 2.0) ** 2 + homogeneous_sobolev_norm(d.n1, -1.0) ** 2 / alpha**2
        rhs = frequency_l2_norm(s.N_hat) ** 2
        assert abs(lhs - rhs) <= 1e-10 * rhs


def test_recover_wave_fields_round_trip(grid):
    d = _random_data(grid, np.random.default_rng(5))
    s = reduce_to_first_order(d, 2.0)
    n, nt = recover_wave_fields(s.N_hat, 2.0)
    scale = np.max(np.abs(d.n0.values)) + np.max(np.abs(d.n1.values))
    assert np.max(np.abs(n.values - d.n0.values)) <= 1e-10 * scale
    assert np.max(np.abs(nt.values - d.n1.values)) <= 1e-10 * scale
    assert np.max(np.abs(n.values.imag)) <= 1e-10 * scale
    assert np.max(np.abs(nt.values.imag)) <= 1e-10 * scale


def test_reduction_rejects_bad_speed(grid):
    d = _random_data(grid, np.random.default_rng(0))
    with pytest.raises(InvalidParameterError):
        reduce_to_first_order(d, 0.0)


def test_initial_data_must_be_real_wave_components(grid):
    u = physical(grid, np.exp(-grid.r**2) + 0j)
    with pytest.raises(InvalidParameterError):
        InitialData(u, u * 1j, u)
    with pytest.raises(InvalidParameterError):
        InitialData(u.with_values(np.full(grid.N, np.nan + 0j)), u, u)


# ----------------------------------------------------------------------------- stepping


def test_zero_horizon_returns_initial_state(grid):
    d = initial_data_family("gaussian", grid, 0.01)
    series = simulate(d, 1.0, StepperConfig(dt=0.01, T=0.0))
    assert len(series) == 1 and series.times[0] == 0.0
    s0 = reduce_to_first_order(d, 1.0)
    assert np.array_equal(series.u_hat[0], s0.u_hat.values)


def test_free_flow_matches_propagators(grid):
    d = _random_data(grid, np.random.default_rng(9))
    s0 = reduce_to_first_order(d, 1.5)
    series = simulate(s0, 1.5, StepperConfig(dt=0.05, T=10.0, sample_every=50, nonlinearity="off"))
    last = series.state(len(series) - 1)
    u_ref = schrodinger_propagate(s0.u_hat, last.t).values
    N_ref = wave_propagate(s0.N_hat, last.t, 1.5).values
    assert np.max(np.abs(last.u_hat.values - u_ref)) <= 1e-10 * np.max(np.abs(u_ref))
    assert np.max(np.abs(last.N_hat.values - N_ref)) <= 1e-10 * np.max(np.abs(N_ref))


def test_mass_conserved_to_round_off(grid):
    d = initial_data_family("gaussian", grid, 0.5, width=1.5)
    series = simulate(d, 1.0, StepperConfig(dt=0.01, T=1.0))
    m = series.diagnostics["mass"]
    assert np.max(np.abs(m - m[0])) <= 1e-12 * m[0]


def test_strang_is_second_order(grid):
    d = initial_data_family("gaussian", grid, 0.5, width=1.5)

    def final(dt):
        return simulate(d, 1.0, StepperConfig(dt=dt, T=1.0)).u_hat[-1]

    ref = final(0.00125)
    e = [np.max(np.abs(final(dt) - ref)) for dt in (0.02, 0.01, 0.005)]
    assert 3.0 <= e[0] / e[1] <= 5.0
    assert 3.0 <= e[1] / e[2] <= 5.5


def test_energy_drift_ratio_under_step_halving(grid):
    d = initial_data_family("gaussian", grid, 0.5, width=1.5)
    drift = []
    for dt in (0.02, 0.01):
        E = simulate(d, 1.0, StepperConfig(dt=dt, T=1.0)).diagnostics["energy"]
        drift.append(np.max(np.abs(E - E[0])) / abs(E[0]))
    assert 3.0 <= drift[0] / drift[1] <= 5.0


def test_simplified_nonlinearity_runs_and_differs(grid):
    d = initial_data_family("gaussian", grid, 0.5, width=1.5)
    a = simulate(d, 1.0, StepperConfig(dt=0.02, T=0.2, nonlinearity="physical"))
    b = simulate(d, 1.0, StepperConfig(dt=0.02, T=0.2, nonlinearity="simplified"))
    assert np.all(np.isfinite(b.u_hat))
    assert np.max(np.abs(a.u_hat[-1] - b.u_hat[-1])) > 0


def test_sampling_stride_and_exact_horizon(grid):
    d = initial_data_family("gaussian", grid, 0.01)
    series = simulate(d, 1.0, StepperConfig(dt=0.03, T=1.0, sample_every=4))
    # 34 steps of 1/34, sampled every 4 plus the final one
    assert series.times[-1] == pytest.approx(1.0, abs=1e-12)
    assert len(series) == 1 + 34 // 4 + 1
    w = series.window(0.2, 0.6)
    assert np.all((w.times >= 0.2 - 1e-9) & (w.times <= 0.6 + 1e-9))


def test_stepper_config_validation():
    with pytest.raises(InvalidParameterError):
        StepperConfig(dt=-0.1, T=1.0)
    with pytest.raises(InvalidParameterError):
        StepperConfig(dt=0.1, T=1.0, sample_every=0)
    with pytest.raises(InvalidParameterError):
        StepperConfig(dt=0.1, T=1.0, nonlinearity="cubic")
    with pytest.raises(InvalidParameterError):
        StepperConfig(dt=0.1, T=1.0, scheme="euler")


def test_checkpoint_hook_called(grid):
    d = initial_data_family("gaussian", grid, 0.01)
    seen = []
    simulate(d, 1.0, StepperConfig(dt=0.1, T=1.0, checkpoint_every=3), checkpoint=lambda s: seen.append(s.t))
    assert np.allclose(seen, [0.3, 0.6, 0.9])


def test_time_series_requires_increasing_times(grid):
    s = reduce_to_first_order(initial_data_family("gaussian", grid, 0.01), 1.0)
    with pytest.raises(InvalidParameterError):
        TimeSeries.from_states([s, s])


def test_strang_step_rejects_unknown_nonlinearity(grid):
    s = reduce_to_first_order(initial_data_family("gaussian", grid, 0.01), 1.0)
    with pytest.raises(InvalidParameterError):
        strang_step(s, 0.1, "bogus")


# ----------------------------------------------------------------------------- invariants


def test_energy_of_pure_wave_state(grid):
    N = spectral(grid, np.exp(-grid.rho**2) + 0j)
    zero = spectral(grid, np.zeros(grid.N, dtype=complex))
    s = SimState(0.0, zero, N, 1.0)
    assert energy(s) == pytest.approx(0.5 * frequency_l2_norm(N) ** 2, rel=1e-12)


def test_gaussian_mass_closed_form(grid):
    w = 1.3
    u = physical(grid, np.exp(-(grid.r**2) / (2 * w**2)) + 0j)
    zero = spectral(grid, np.zeros(grid.N, dtype=complex))
    s = SimState(0.0, to_frequency(u), zero, 1.0)
    assert mass(s) == pytest.approx(np.pi**1.5 * w**3, rel=1e-10)


def test_aligned_density_lowers_energy(grid):
    u = physical(grid, np.exp(-(grid.r**2) / 2) + 0j)
    n = physical(grid, 5.0 * np.exp(-(grid.r**2) / 2) + 0j)
    zero = physical(grid, np.zeros(grid.N, dtype=complex))
    s = reduce_to_first_order(InitialData(u, n, zero), 1.0)
    grad2 = frequency_l2_norm(s.u_hat.with_values(grid.rho * s.u_hat.values)) ** 2
    quadratic = grad2 + 0.5 * frequency_l2_norm(s.N_hat) ** 2
    assert energy(s) < quadratic


# ----------------------------------------------------------------------------- data families


@pytest.mark.parametrize("family", ["gaussian", "shell_bump", "two_bump"])
def test_data_family_normalization(grid, family):
    d = initial_data_family(family, grid, 0.01, shell=1)
    assert d.size() == pytest.approx(0.01, abs=1e-8)


def test_data_family_rejections(grid):
    with pytest.raises(InvalidParameterError):
        initial_data_family("gaussian", grid, 0.0)
    with pytest.raises(InvalidParameterError):
        initial_data_family("square", grid, 0.01)


def test_shell_bump_is_frequency_localized(grid):
    d = initial_data_family("shell_bump", grid, 0.01, shell=1)
    uh = to_frequency(d.u0).values
    outside = (grid.rho < 0.625 * 2) | (grid.rho > 1.6 * 2)
    assert np.max(np.abs(uh[outside])) <= 1e-10 * np.max(np.abs(uh))
    c = chi(grid.rho, 1)
    ratio = uh[c > 1e-3] / c[c > 1e-3]
    assert np.allclose(ratio, ratio[0], rtol=1e-10)
