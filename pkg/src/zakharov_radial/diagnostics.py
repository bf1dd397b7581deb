"""Scattering and normal-form diagnostics on simulated trajectories.

Scattering is probed through the free pullbacks ``S(-t) u(t)`` and
``W_alpha(-t) N(t)``: a scattering solution makes them Cauchy in time.
Space-time norms use the trapezoid rule over the stored samples.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Union

import numpy as np

from .errors import InvalidParameterError
from .interactions import interaction_product, omega_tilde_transform, omega_transform
from .littlewood_paley import BesovSpec, besov_norm, frequency_l2_norm, q_of, sobolev_norm
from .radial_spectral import (
    RadialField,
    apply_radial_multiplier,
    forward_transform,
    inverse_transform,
    japanese,
    schrodinger_propagate,
    spectral,
    wave_propagate,
)
from .solver import SimState, StepperConfig, TimeSeries, simulate


@dataclass(frozen=True)
class SobolevSpec:
    """``H^s_p`` norm ``||<D>^s f||_{L^p}``."""

    s: float
    p: float = 2.0


SpatialSpec = Union[BesovSpec, SobolevSpec]


@dataclass(frozen=True)
class NormSpec:
    """Space-time norm ``|| <D>^derivative X ||_{L^q_t(window; spatial)}`` with ``X`` in ``{u, N}``."""

    component: str
    q_t: float
    spatial: SpatialSpec
    window: tuple | None = None
    derivative: float = 0.0

    def __post_init__(self):
        if self.component not in ("u", "N"):
            raise InvalidParameterError(f"component must be 'u' or 'N', got {self.component!r}")
        if self.q_t not in (1, 2, np.inf):
            raise InvalidParameterError(f"time exponent must be 1, 2 or inf, got {self.q_t}")


def spatial_norm(f: RadialField, spec: SpatialSpec, derivative: float = 0.0) -> float:
    if derivative:
        f = apply_radial_multiplier(f, japanese(derivative))
    if isinstance(spec, BesovSpec):
        return besov_norm(f, spec)
    return sobolev_norm(f, spec.s, spec.p)


def pullback(s: SimState) -> tuple[RadialField, RadialField]:
    """Free profiles ``(S(-t) u(t), W_alpha(-t) N(t))`` in frequency space."""
    return schrodinger_propagate(s.u_hat, -s.t), wave_propagate(s.N_hat, -s.t, s.alpha)


def _windowed(series: TimeSeries, window) -> TimeSeries:
    if window is None:
        return series
    t_a, t_b = window
    if t_a < series.times[0] - 1e-9 or t_b > series.times[-1] + 1e-9:
        raise InvalidParameterError(f"window {window} outside simulated horizon "
                                    f"[{series.times[0]}, {series.times[-1]}]")
    return series.window(t_a, t_b)


def _component(series: TimeSeries, component: str) -> np.ndarray:
    return series.u_hat if component == "u" else series.N_hat


def cauchy_tail(series: TimeSeries, spec: NormSpec) -> np.ndarray:
    """Table ``T[i, j] = || pullback(t_i) - pullback(t_j) ||`` over the window samples."""
    sub = _windowed(series, spec.window)
    if len(sub) < 3:
        raise InvalidParameterError(f"need at least 3 samples in window {spec.window}, got {len(sub)}")
    rho = sub.grid.rho
    t = sub.times[:, None]
    if spec.component == "u":
        prof = sub.u_hat * np.exp(-1j * t * rho**2)
    else:
        prof = sub.N_hat * np.exp(-1j * sub.alpha * t * rho)
    n = len(sub)
    table = np.zeros((n, n))
    for i in range(n):
        for j in range(i):
            d = spectral(sub.grid, prof[i] - prof[j])
            table[i, j] = table[j, i] = spatial_norm(d, spec.spatial, spec.derivative)
    return table


def norm_profile(series: TimeSeries, spec: NormSpec) -> tuple[np.ndarray, np.ndarray]:
    """Sample times and spatial norms of the requested component."""
    sub = _windowed(series, spec.window)
    vals = _component(sub, spec.component)
    norms = np.array([spatial_norm(spectral(sub.grid, v), spec.spatial, spec.derivative) for v in vals])
    return sub.times, norms


def time_norm(times: np.ndarray, values: np.ndarray, q_t: float) -> float:
    """``L^q`` norm in time of sampled nonnegative values (trapezoid rule)."""
    if len(values) == 0:
        return 0.0
    if np.isinf(q_t):
        return float(np.max(values))
    if len(values) == 1:
        return 0.0
    return float(np.trapezoid(values**q_t, times) ** (1.0 / q_t))


def strichartz_norm(series: TimeSeries, spec: NormSpec) -> float:
    times, norms = norm_profile(series, spec)
    return time_norm(times, norms, spec.q_t)


def x_norm_parts(series: TimeSeries, eps: float, window=None) -> dict:
    specs = {
        "u_energy": NormSpec("u", np.inf, SobolevSpec(0.0), window, derivative=1.0),
        "u_strichartz": NormSpec("u", 2, BesovSpec(0.25 + eps, q_of(eps)), window, derivative=1.0),
        "N_energy": NormSpec("N", np.inf, SobolevSpec(0.0), window),
        "N_strichartz": NormSpec("N", 2, BesovSpec(-0.25 - eps, q_of(-eps)), window),
    }
    return {k: strichartz_norm(series, s) for k, s in specs.items()}


def x_norm(series: TimeSeries, eps: float, window=None) -> float:
    """Resolution-space norm: energy plus radial Strichartz norms of ``<D>u`` and ``N``."""
    return float(sum(x_norm_parts(series, eps, window).values()))


def boundary_term_norms(s: SimState) -> tuple[float, float]:
    """``(||Omega(N, u)||_{H^1}, ||D Omega~(u, u)||_{L^2})``."""
    om = omega_transform(s.N_hat, s.u_hat, s.alpha)
    omt = omega_tilde_transform(s.u_hat, s.u_hat, s.alpha)
    return sobolev_norm(om, 1.0), frequency_l2_norm(omt.with_values(omt.grid.rho * omt.values))


def _duhamel(times: np.ndarray, phase: np.ndarray, forcing: np.ndarray) -> np.ndarray:
    """``int_{t_0}^{t_k} e^{i (t_k - s) phase} forcing(s) ds`` for every sample ``k`` (trapezoid)."""
    out = np.zeros_like(forcing)
    # profile-frame integrand e^{-i s phase} forcing(s), accumulated then rotated back
    g = np.exp(-1j * times[:, None] * phase) * forcing
    acc = np.zeros(forcing.shape[1], dtype=complex)
    for k in range(1, len(times)):
        acc = acc + 0.5 * (times[k] - times[k - 1]) * (g[k] + g[k - 1])
        out[k] = np.exp(1j * times[k] * phase) * acc
    return out


@dataclass
class DuhamelResidual:
    r_u: float
    r_N: float
    times: np.ndarray
    r_u_t: np.ndarray
    r_N_t: np.ndarray


def duhamel_terms(series: TimeSeries) -> dict:
    """Frequency-space samples of every term of the normal-form integral equations.

    Uses the simplified nonlinearity ``N u`` in the Schrodinger equation.
    """
    g = series.grid
    rho = g.rho
    a = series.alpha
    terms = {k: [] for k in ("Om", "Om_cubic_1", "Om_cubic_2", "u_rest", "DOmt", "DOmt_1", "DOmt_2", "N_rest")}
    for st in series.states():
        u = st.u()
        N = st.N()
        Nu = u.with_values(N.values * u.values)
        Nu_hat = forward_transform(Nu)
        dens = u.with_values(np.abs(u.values) ** 2)
        dens_hat = forward_transform(dens)
        D_dens = dens_hat.with_values(rho * dens_hat.values)
        terms["Om"].append(omega_transform(st.N_hat, st.u_hat, a).values)
        terms["Om_cubic_1"].append(omega_transform(D_dens, st.u_hat, a).values)
        terms["Om_cubic_2"].append(omega_transform(st.N_hat, Nu_hat, a).values)
        terms["u_rest"].append(Nu_hat.values - forward_transform(interaction_product(N, u, "XL", a)).values)
        terms["DOmt"].append(rho * omega_tilde_transform(st.u_hat, st.u_hat, a).values)
        terms["DOmt_1"].append(rho * omega_tilde_transform(Nu_hat, st.u_hat, a).values)
        terms["DOmt_2"].append(rho * omega_tilde_transform(st.u_hat, Nu_hat, a).values)
        xl = interaction_product(u, u.conj(), "XL+LX", a)
        terms["N_rest"].append(rho * (dens_hat.values - forward_transform(xl).values))
    return {k: np.array(v) for k, v in terms.items()}


def duhamel_residual(series: TimeSeries, window=None, strict: bool = True, max_stride_factor: float = 10.0
                     ) -> DuhamelResidual:
    """Residuals of the normal-form integral equations along a trajectory.

    With ``t0`` the window start, the Schrodinger residual is ``u(t)`` minus::

        S(t-t0) u(t0) + S(t-t0) Om(N,u)(t0) - Om(N,u)(t)
          - i alpha int S(t-s) Om(D|u|^2, u) ds - i int S(t-s) Om(N, Nu) ds
          - i int S(t-s) (Nu)_{LH+HH+aL} ds

    and the wave residual is ``N(t)`` minus::

        W(t-t0) N(t0) + alpha W(t-t0) D Om~(u,u)(t0) - alpha D Om~(u,u)(t)
          - i alpha int W(t-s) D (u conj u)_{HH+aL+La} ds
          - i alpha int W(t-s) D Om~(Nu, u) ds + i alpha int W(t-s) D Om~(u, Nu) ds

    The low-order pieces are evaluated as ``Nu - (Nu)_XL`` so that frequencies
    above the resolved dyadic range stay in the equation.  Residual norms are
    the maxima over the window of ``H^1`` (Schrodinger) and ``L^2`` (wave).

    In strict mode a trajectory produced with the physical nonlinearity is
    re-simulated from the window start with the simplified one, keeping the
    step and the sampling stride.
    """
    sub = _windowed(series, window)
    if len(sub) < 2:
        raise InvalidParameterError("window must contain at least 2 samples")
    dt = series.meta.get("dt")
    stride = float(np.max(np.diff(sub.times)))
    if dt is not None and stride > max_stride_factor * dt * (1 + 1e-9):
        raise InvalidParameterError(f"sampling stride {stride:.3g} too coarse: need <= {max_stride_factor * dt:.3g}")
    if strict and series.meta.get("nonlinearity", "physical") == "physical":
        if dt is None:
            raise InvalidParameterError("strict mode needs the step size in series.meta['dt']")
        every = max(1, int(round(stride / dt)))
        cfg = StepperConfig(dt=dt, T=sub.times[-1] - sub.times[0], sample_every=every, nonlinearity="simplified")
        s0 = sub.state(0)
        shifted = simulate(replace(s0, t=0.0), sub.alpha, cfg)
        shifted.times = shifted.times + s0.t
        sub = shifted

    rho = sub.grid.rho
    a = sub.alpha
    tau = sub.times - sub.times[0]
    terms = duhamel_terms(sub)
    S = np.exp(1j * tau[:, None] * rho**2)
    W = np.exp(1j * a * tau[:, None] * rho)
    sch = rho**2
    wav = a * rho

    u_rhs = (S * sub.u_hat[0] + S * terms["Om"][0] - terms["Om"]
             - 1j * a * _duhamel(tau, sch, terms["Om_cubic_1"])
             - 1j * _duhamel(tau, sch, terms["Om_cubic_2"])
             - 1j * _duhamel(tau, sch, terms["u_rest"]))
    N_rhs = (W * sub.N_hat[0] + a * W * terms["DOmt"][0] - a * terms["DOmt"]
             - 1j * a * _duhamel(tau, wav, terms["N_rest"])
             - 1j * a * _duhamel(tau, wav, terms["DOmt_1"])
             + 1j * a * _duhamel(tau, wav, terms["DOmt_2"]))
    ru = np.array([sobolev_norm(spectral(sub.grid, x), 1.0) for x in sub.u_hat - u_rhs])
    rn = np.array([frequency_l2_norm(spectral(sub.grid, x)) for x in sub.N_hat - N_rhs])
    return DuhamelResidual(float(ru.max()), float(rn.max()), sub.times, ru, rn)


def _nearest_state(series: TimeSeries, t: float) -> SimState:
    return series.state(int(np.argmin(np.abs(series.times - t))))


def scattering_report(series: TimeSeries, eps: float, boundary_times=(2.0, 20.0), x_norm_on: bool = True,
                      boundary_on: bool = True) -> dict:
    """Cauchy tails of the free pullbacks over the first and last quarter of the run.

    ``u_tail_*`` is the largest ``H^1`` distance between pullbacks ``S(-t)u(t)``
    inside a quarter, ``N_tail_*`` the ``L^2`` analogue for ``W_alpha(-t)N(t)``.
    Boundary-term norms are evaluated at the samples nearest ``boundary_times``.
    """
    t0, t1 = float(series.times[0]), float(series.times[-1])
    q = (t1 - t0) / 4.0
    first, last = (t0, t0 + q), (t1 - q, t1)
    out = {"t_start": t0, "t_end": t1, "boundary_contaminated": bool(series.meta.get("boundary_contaminated", False))}
    for comp, spatial, deriv in (("u", SobolevSpec(0.0), 1.0), ("N", SobolevSpec(0.0), 0.0)):
        for name, win in (("first", first), ("last", last)):
            out[f"{comp}_tail_{name}"] = float(cauchy_tail(series, NormSpec(comp, np.inf, spatial, win, deriv)).max())
        out[f"{comp}_tail_ratio"] = out[f"{comp}_tail_last"] / out[f"{comp}_tail_first"]
    if x_norm_on:
        parts = x_norm_parts(series, eps)
        out["x_norm_parts"] = parts
        out["x_norm"] = float(sum(parts.values()))
    if boundary_on:
        rows = []
        for t in boundary_times:
            st = _nearest_state(series, t)
            om, omt = boundary_term_norms(st)
            rows.append({"t": st.t, "omega_H1": om, "omega_tilde_DL2": omt})
        out["boundary_terms"] = rows
    return out
