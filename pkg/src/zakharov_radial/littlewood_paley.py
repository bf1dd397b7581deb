"""Dyadic frequency cutoffs, Littlewood-Paley projectors and the associated norms.

The cutoff ``eta0`` equals 1 on ``|x| <= 5/4`` and vanishes for ``|x| >= 8/5``;
``chi_k(x) = eta0(x/2^k) - eta0(x/2^(k-1))`` and ``chi_le_k(x) = eta0(x/2^k)``.

On a finite grid only the shells ``k_min..k_max`` of :func:`dyadic_range` are
resolved.  Everything below them is collected into a single *low bucket*
``P_{<=k_min-1}`` which is indexed as shell ``k_min - 1`` in
:func:`dyadic_pieces`; the buckets then telescope exactly to ``P_{<=k_max}``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.fft import dst

from .errors import InvalidParameterError
from .radial_spectral import (
    FREQUENCY,
    PHYSICAL,
    RadialField,
    RadialGrid,
    apply_radial_multiplier,
    japanese,
    to_frequency,
    to_physical,
)

PLATEAU = 5.0 / 4.0
SUPPORT = 8.0 / 5.0


class TruncationWarning(UserWarning):
    """A projector index lies outside the dyadic range resolved by the grid."""


def _smooth_step(t):
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        a = np.where(t > 0, np.exp(-1.0 / np.where(t > 0, t, 1.0)), 0.0)
        b = np.where(t < 1, np.exp(-1.0 / np.where(t < 1, 1.0 - t, 1.0)), 0.0)
    return a / (a + b)


def eta0(x):
    """Smooth even cutoff: 1 on ``|x| <= 5/4``, 0 on ``|x| >= 8/5``, monotone between."""
    x = np.abs(np.asarray(x, dtype=float))
    out = _smooth_step((SUPPORT - x) / (SUPPORT - PLATEAU))
    return out if out.ndim else float(out)


def chi(x, k: int):
    return eta0(np.asarray(x) / 2.0**k) - eta0(np.asarray(x) / 2.0 ** (k - 1))


def chi_le(x, k: int):
    return eta0(np.asarray(x) / 2.0**k)


@dataclass(frozen=True)
class DyadicRange:
    k_min: int
    k_max: int

    @property
    def low(self) -> int:
        """Index of the low bucket ``P_{<=k_min-1}``."""
        return self.k_min - 1

    @property
    def shells(self) -> range:
        return range(self.k_min, self.k_max + 1)

    @property
    def buckets(self) -> range:
        return range(self.k_min - 1, self.k_max + 1)

    def __contains__(self, k) -> bool:
        return self.k_min <= k <= self.k_max


def dyadic_range(grid: RadialGrid) -> DyadicRange:
    rho = grid.rho
    return DyadicRange(math.ceil(math.log2(rho[0])) + 1, math.floor(math.log2(rho[-1])) - 1)


def bucket_weights(grid: RadialGrid) -> tuple[DyadicRange, np.ndarray]:
    """Cutoff values of every bucket at the frequency nodes, shape ``(K, N)``.

    Row 0 is the low bucket ``chi_le(k_min - 1)``; row ``i`` is ``chi(k_min - 1 + i)``.
    """
    dr = dyadic_range(grid)
    rows = [chi_le(grid.rho, dr.low)] + [chi(grid.rho, k) for k in dr.shells]
    return dr, np.array(rows)


@dataclass(frozen=True)
class BesovSpec:
    """Homogeneous Besov exponents; the summation exponent is always 2."""

    s: float
    p: float
    q: float = 2.0

    def __post_init__(self):
        if not self.p >= 1:
            raise InvalidParameterError(f"Lebesgue exponent must be >= 1, got p={self.p}")
        if self.q != 2:
            raise InvalidParameterError("only the l^2 summation exponent q=2 is supported")


def project(f: RadialField, k: int, mode: str = "single") -> RadialField:
    """Apply ``P_k`` (``mode='single'``) or ``P_{<=k}`` (``mode='at_most'``).

    Indices the grid cannot resolve give the zero field and a
    :class:`TruncationWarning`.  The result is in the same space as ``f``.
    """
    fh = to_frequency(f)
    dr = dyadic_range(f.grid)
    if mode == "single":
        ok = k in dr
        cut = chi
    elif mode == "at_most":
        ok = dr.low <= k <= dr.k_max
        cut = chi_le
    else:
        raise InvalidParameterError(f"unknown projection mode {mode!r}")
    if not ok:
        warnings.warn(f"shell {k} outside resolved range [{dr.k_min}, {dr.k_max}]", TruncationWarning, stacklevel=2)
        out = fh.with_values(np.zeros_like(fh.values))
    else:
        out = apply_radial_multiplier(fh, cut(f.grid.rho, k))
    return out if f.space == FREQUENCY else to_physical(out)


def dyadic_pieces(f: RadialField, space: str = PHYSICAL) -> tuple[np.ndarray, np.ndarray]:
    """All bucket projections of ``f`` at once.

    Returns ``(ks, pieces)`` where ``pieces[i]`` holds the samples of
    ``P_{ks[i]} f`` (row 0 is the low bucket) in the requested space.
    """
    fh = to_frequency(f)
    g = f.grid
    dr, w = bucket_weights(g)
    pieces = w * fh.values
    if space == PHYSICAL:
        x = g.rho * pieces
        pieces = (g.drho / (4.0 * np.pi**2 * g.r)) * (dst(x.real, type=1, axis=-1) + 1j * dst(x.imag, type=1, axis=-1))
    return np.array(list(dr.buckets)), pieces


def _lp_samples(values: np.ndarray, grid: RadialGrid, p: float) -> np.ndarray:
    a = np.abs(values)
    if np.isinf(p):
        return a.max(axis=-1)
    w = 4.0 * np.pi * grid.r**2 * grid.dr
    return (np.sum(w * a**p, axis=-1)) ** (1.0 / p)


def lebesgue_norm(f: RadialField, p: float) -> float:
    """``L^p(R^3)`` norm via the radial measure ``4 pi r^2 dr`` on the nodes."""
    if not p >= 1:
        raise InvalidParameterError(f"Lebesgue exponent must be >= 1, got p={p}")
    return float(_lp_samples(to_physical(f).values, f.grid, p))


def frequency_l2_norm(f: RadialField) -> float:
    """Plancherel-side ``L^2`` norm: ``((2 pi)^-3 int |fhat|^2 d xi)^(1/2)``."""
    fh = to_frequency(f)
    g = f.grid
    return float(np.sqrt(np.sum(np.abs(fh.values) ** 2 * g.rho**2) * g.drho * 4.0 * np.pi / (2.0 * np.pi) ** 3))


def besov_norm(f: RadialField, spec: BesovSpec) -> float:
    ks, pieces = dyadic_pieces(f, PHYSICAL)
    norms = _lp_samples(pieces, f.grid, spec.p)
    return float(np.sqrt(np.sum((2.0 ** (ks * spec.s) * norms) ** 2)))


def sobolev_norm(f: RadialField, s: float, p: float = 2.0) -> float:
    """Inhomogeneous ``H^s_p`` norm ``||<D>^s f||_{L^p}``."""
    return lebesgue_norm(apply_radial_multiplier(to_frequency(f), japanese(s)), p)


def homogeneous_sobolev_norm(f: RadialField, s: float) -> float:
    """``||D^s f||_{L^2}`` computed on the frequency side."""
    fh = to_frequency(f)
    return frequency_l2_norm(fh.with_values(fh.grid.rho**s * fh.values))


def q_of(eps: float) -> float:
    """Lebesgue exponent with ``1/q = 1/4 + eps/3``."""
    inv = 0.25 + eps / 3.0
    if not 0.0 < inv <= 1.0:
        raise InvalidParameterError(f"1/4 + eps/3 must lie in (0, 1], got {inv} for eps={eps}")
    return 12.0 / (3.0 + 4.0 * eps)


def strichartz_exponents_ok(eps: float) -> bool:
    """Whether ``10/3 < q(eps) < 4 < q(-eps) < inf``."""
    try:
        lo, hi = q_of(eps), q_of(-eps)
    except InvalidParameterError:
        return False
    return 10.0 / 3.0 < lo < 4.0 < hi < np.inf
