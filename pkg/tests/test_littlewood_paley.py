import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import band_limited
from zakharov_radial.errors import InvalidParameterError
from zakharov_radial.littlewood_paley import (
    BesovSpec,
    TruncationWarning,
    besov_norm,
    bucket_weights,
    chi,
    chi_le,
    dyadic_pieces,
    dyadic_range,
    eta0,
    frequency_l2_norm,
    homogeneous_sobolev_norm,
    lebesgue_norm,
    project,
    q_of,
    sobolev_norm,
    strichartz_exponents_ok,
)
from zakharov_radial.radial_spectral import FREQUENCY, PHYSICAL, make_grid, physical, spectral, to_frequency


def test_eta0_plateau_and_support():
    assert eta0(1.0) == 1.0
    assert eta0(2.0) == 0.0
    assert eta0(1.25) == 1.0 and eta0(1.6) == 0.0
    v = eta0(1.4)
    assert 0 < v < 1 and eta0(-1.4) == v


@given(st.floats(-10, 10, allow_nan=False))
def test_eta0_bounds_and_evenness(x):
    v = eta0(x)
    assert 0.0 <= v <= 1.0
    assert v == eta0(-x)


def test_eta0_monotone_on_transition():
    x = np.linspace(1.25, 1.6, 2001)
    assert np.all(np.diff(eta0(x)) <= 0)


@given(st.floats(0.01, 500), st.integers(-6, 8))
def test_cutoffs_telescope(x, k):
    total = chi_le(x, k) + sum(chi(x, j) for j in range(k + 1, 12))
    if x <= 1.25 * 2.0**11:
        assert abs(total - 1.0) <= 1e-14


def test_dyadic_range_from_grid():
    g = make_grid(40.0, 2048)
    dr = dyadic_range(g)
    assert dr.k_min == math.ceil(math.log2(g.rho[0])) + 1
    assert dr.k_max == math.floor(math.log2(g.rho[-1])) - 1
    assert 2.0**dr.k_min >= g.rho[0] and 1.6 * 2.0**dr.k_max <= g.rho[-1]


def test_partition_of_unity_on_interior_band():
    g = make_grid(40.0, 2048)
    dr, w = bucket_weights(g)
    inside = (g.rho >= 2.0 ** (dr.k_min + 1)) & (g.rho <= 2.0 ** (dr.k_max - 1))
    shells_only = w[1:].sum(axis=0)
    assert np.max(np.abs(shells_only[inside] - 1)) <= 1e-12
    # with the low bucket the sum is 1 everywhere below the top shell's plateau
    full = w.sum(axis=0)
    assert np.max(np.abs(full[g.rho <= 1.25 * 2.0**dr.k_max] - 1)) <= 1e-12


def test_besov_spec_rejects_other_summation_and_small_p():
    with pytest.raises(InvalidParameterError):
        BesovSpec(0.0, 2.0, q=1.0)
    with pytest.raises(InvalidParameterError):
        BesovSpec(0.0, 0.5)


def test_pieces_telescope_to_field(rng):
    g = make_grid(30.0, 512)
    f = band_limited(g, rng)
    ks, pieces = dyadic_pieces(f, FREQUENCY)
    assert ks[0] == dyadic_range(g).low
    err = np.linalg.norm(pieces.sum(axis=0) - f.values) / np.linalg.norm(f.values)
    assert err <= 1e-12


def test_project_modes_and_supports(rng):
    g = make_grid(30.0, 512)
    k = 2
    node = int(np.argmin(np.abs(g.rho - 2.0**k)))
    vals = np.zeros(g.N, complex)
    vals[node] = 1.0
    f = spectral(g, vals)
    assert abs(project(f, k).values[node] - chi(g.rho[node], k)) <= 1e-15
    assert np.all(project(f, k - 3).values == 0)
    h = band_limited(g, rng)
    assert np.max(np.abs(project(project(h, k - 3), k + 2).values)) == 0.0
    assert project(physical(g, np.ones(g.N)), 1).space == PHYSICAL


def test_project_out_of_range_warns_and_returns_zero(grid_small):
    f = spectral(grid_small, np.ones(grid_small.N))
    with pytest.warns(TruncationWarning):
        out = project(f, 40)
    assert np.all(out.values == 0)
    with pytest.raises(InvalidParameterError):
        project(f, 0, mode="bogus")


def test_lebesgue_norm_zero_and_gaussian():
    g = make_grid(40.0, 2048)
    assert lebesgue_norm(physical(g, np.zeros(g.N)), 2) == 0
    f = physical(g, lambda r: np.exp(-(r**2) / 2))
    assert abs(lebesgue_norm(f, 2) / np.pi**0.75 - 1) <= 1e-8
    sup = lebesgue_norm(f, np.inf)
    assert sup <= 1
    g2 = g.refined()
    assert abs(1 - lebesgue_norm(physical(g2, lambda r: np.exp(-(r**2) / 2)), np.inf)) <= 1 - sup + 1e-15
    with pytest.raises(InvalidParameterError):
        lebesgue_norm(f, 0.5)


@given(st.integers(0, 10000), st.floats(1, 8), st.floats(-3, 3).filter(lambda c: c == 0 or abs(c) > 1e-6))
def test_lebesgue_norm_homogeneous_and_triangle(seed, p, c):
    rng = np.random.default_rng(seed)
    g = make_grid(10.0, 64)
    a = physical(g, rng.standard_normal(g.N))
    b = physical(g, rng.standard_normal(g.N))
    assert math.isclose(lebesgue_norm(a * c, p), abs(c) * lebesgue_norm(a, p), rel_tol=1e-12, abs_tol=1e-300)
    assert lebesgue_norm(a + b, p) <= lebesgue_norm(a, p) + lebesgue_norm(b, p) * (1 + 1e-12)


def test_plancherel(rng):
    g = make_grid(25.0, 300)
    f = physical(g, rng.standard_normal(g.N) + 1j * rng.standard_normal(g.N))
    assert math.isclose(lebesgue_norm(f, 2), frequency_l2_norm(f), rel_tol=1e-10)


def test_besov_l2_comparable_and_refinement_stable(rng):
    ratios = []
    for g in (make_grid(30.0, 512), make_grid(60.0, 1025)):
        f = physical(g, lambda r: np.exp(-(r**2) / 2) * np.cos(r))
        ratios.append(besov_norm(f, BesovSpec(0.0, 2.0)) / lebesgue_norm(f, 2))
    assert 1 / math.sqrt(2) * 0.9 <= ratios[0] <= 1.0 + 1e-12
    assert abs(ratios[1] / ratios[0] - 1) <= 0.05


def test_besov_zero_and_shell_scaling():
    g = make_grid(64.0, 2048)
    assert besov_norm(spectral(g, np.zeros(g.N)), BesovSpec(0.5, 3.0)) == 0
    s = 0.7
    for k in (-2, 0, 3):
        f = spectral(g, chi(g.rho, k))
        b0 = besov_norm(f, BesovSpec(0.0, 2.0))
        bs = besov_norm(f, BesovSpec(s, 2.0))
        ks, pieces = dyadic_pieces(f, PHYSICAL)
        l2 = np.sqrt(np.sum(4 * np.pi * g.r**2 * g.dr * np.abs(pieces) ** 2, axis=1))
        direct = np.sqrt(np.sum((2.0 ** (ks * s) * l2) ** 2))
        assert math.isclose(bs, direct, rel_tol=1e-12)
        # mass sits in shells k and k+1, so the weight is 2^{ks} up to a factor 2^s
        assert 2.0 ** (k * s) * 0.99 <= bs / b0 <= 2.0 ** ((k + 1) * s) * 1.01


def test_sobolev_norms():
    g = make_grid(40.0, 2048)
    f = physical(g, lambda r: np.exp(-(r**2) / 2))
    assert math.isclose(sobolev_norm(f, 0.0, 3.0), lebesgue_norm(f, 3.0), rel_tol=1e-12)
    # ||f||_2^2 = pi^{3/2}, ||grad f||_2^2 = (3/2) pi^{3/2}
    exact = math.sqrt(np.pi**1.5 * 2.5)
    assert abs(sobolev_norm(f, 1.0) / exact - 1) <= 1e-6
    assert abs(homogeneous_sobolev_norm(f, 1.0) / math.sqrt(1.5 * np.pi**1.5) - 1) <= 1e-6


def test_q_of_values():
    assert q_of(0.0) == 4.0
    assert q_of(0.75) == 2.0
    assert math.isclose(q_of(0.1), 120 / 34)
    assert 10 / 3 < q_of(0.1) < 4 < q_of(-0.1)
    with pytest.raises(InvalidParameterError):
        q_of(-0.75)
    with pytest.raises(InvalidParameterError):
        q_of(3.0)


@given(st.floats(-0.7, 2.2))
def test_q_of_formula(eps):
    assert math.isclose(1 / q_of(eps), 0.25 + eps / 3, rel_tol=1e-12)


def test_strichartz_window():
    assert strichartz_exponents_ok(0.1)
    assert not strichartz_exponents_ok(0.4)
    assert not strichartz_exponents_ok(0.0)


def test_bernstein_constant_stable():
    from zakharov_radial.estimates import RandomFieldSpec, random_radial_field

    consts = []
    for g in (make_grid(32.0, 512), make_grid(64.0, 1025)):
        worst = 0.0
        for k in (-1, 1, 3):
            spec = RandomFieldSpec(seed=3, k_lo=k, k_hi=k, count=10)
            for i in range(10):
                f = random_radial_field(spec, i, g)
                worst = max(worst, lebesgue_norm(f, np.inf) / (2.0 ** (1.5 * k) * lebesgue_norm(f, 2)))
        consts.append(worst)
    assert consts[1] / consts[0] < 1.5


def test_embedding_chain_constants_bounded_below():
    from zakharov_radial.estimates import RandomFieldSpec, random_radial_field

    g = make_grid(32.0, 512)
    spec = RandomFieldSpec(seed=9, k_lo=-1, k_hi=2, s_dec=1.5, count=50)
    plus, minus = BesovSpec(0.35, q_of(0.1)), BesovSpec(0.15, q_of(-0.1))
    c1, c2 = [], []
    for i in range(spec.count):
        f = random_radial_field(spec, i, g)
        bp, bm = besov_norm(f, plus), besov_norm(f, minus)
        c1.append(bp / bm)
        c2.append(bm / lebesgue_norm(f, 6))
    assert min(c1) > 0.5 and min(c2) > 0.5
