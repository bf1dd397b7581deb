"""Frequency-interaction decompositions and the normal-form bilinear operators.

Products are split by the relative dyadic size of the two factors::

    uv = (uv)_HH + (uv)_LH + (uv)_HL
       = (uv)_HH + (uv)_La + (uv)_LX + (uv)_aL + (uv)_XL

where ``HL`` collects ``P_k u * P_{<=k-5} v``, ``HH`` the pairs with
``|k1 - k2| <= 4``, and the ``a``/``X`` variants split ``HL`` (resp. ``LH``)
according to whether the high shell lies in the band ``|k - log2(alpha)| <= 1``.
Shell indices are the buckets of :func:`littlewood_paley.dyadic_pieces`, so
the decomposition is exact on every grid.

Radial bilinear multipliers use the symbol convention
``F[T_m(f, g)](xi) = (2 pi)^-3 int m(|xi - eta|, |eta|, |xi|) fhat(xi - eta) ghat(eta) d eta``
so that ``m = 1`` is the pointwise product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from . import _quadrature
from .errors import ContractError, DomainError, InvalidParameterError, SingularMultiplierError
from .littlewood_paley import DyadicRange, bucket_weights, chi, chi_le, dyadic_pieces, dyadic_range
from .radial_spectral import FREQUENCY, PHYSICAL, RadialField, RadialGrid, check_compatible, to_frequency, to_physical

KINDS = ("HH", "HL", "LH", "aL", "XL", "La", "LX")
_ALIASES = {"αL": "aL", "Lα": "La", "alphaL": "aL", "Lalpha": "La"}


@dataclass(frozen=True)
class InteractionKind:
    """A sum of elementary interaction tags, e.g. ``"XL+LX"``, at wave speed ``alpha``."""

    tags: tuple
    alpha: float = 1.0

    @classmethod
    def parse(cls, spec, alpha: float = 1.0) -> "InteractionKind":
        if isinstance(spec, InteractionKind):
            return spec
        tags = tuple(_ALIASES.get(t.strip(), t.strip()) for t in spec.split("+"))
        for t in tags:
            if t not in KINDS:
                raise InvalidParameterError(f"unknown interaction tag {t!r}")
        if not alpha > 0:
            raise InvalidParameterError(f"wave speed must be positive, got {alpha}")
        return cls(tags, float(alpha))

    def __str__(self):
        return "+".join(self.tags)


def in_alpha_band(k, alpha: float):
    return np.abs(np.asarray(k) - math.log2(alpha)) <= 1


def pair_mask(kind: InteractionKind, ks: np.ndarray) -> np.ndarray:
    """Boolean matrix over bucket pairs ``(k1, k2)`` (first factor, second factor)."""
    k1 = ks[:, None]
    k2 = ks[None, :]
    band1 = in_alpha_band(k1, kind.alpha)
    band2 = in_alpha_band(k2, kind.alpha)
    hl = k1 >= k2 + 5
    lh = k2 >= k1 + 5
    masks = {
        "HH": np.abs(k1 - k2) <= 4,
        "HL": hl,
        "LH": lh,
        "aL": hl & band1,
        "XL": hl & ~band1,
        "La": lh & band2,
        "LX": lh & ~band2,
    }
    out = np.zeros((len(ks), len(ks)), dtype=bool)
    for t in kind.tags:
        if np.any(out & masks[t]):
            raise InvalidParameterError(f"overlapping tags in {kind}")
        out |= masks[t]
    return out


def interaction_product(u: RadialField, v: RadialField, kind, alpha: float = 1.0) -> RadialField:
    """Physical-space bilinear piece ``(uv)_kind``, summed over dyadic pairs."""
    if u.grid != v.grid:
        raise ContractError("interaction_product needs fields on a shared grid")
    kind = InteractionKind.parse(kind, alpha)
    ks, pu = dyadic_pieces(u, PHYSICAL)
    _, pv = dyadic_pieces(v, PHYSICAL)
    mask = pair_mask(kind, ks).astype(float)
    return RadialField(u.grid, np.sum(pu * (mask @ pv), axis=0), PHYSICAL)


def _bucket_matrix(grid: RadialGrid) -> tuple[np.ndarray, np.ndarray]:
    dr, w = bucket_weights(grid)
    # node 0 (zero frequency) sits in the low bucket only
    w0 = np.zeros((w.shape[0], 1))
    w0[0, 0] = 1.0
    return np.array(list(dr.buckets)), np.hstack([w0, w])


@lru_cache(maxsize=16)
def _pair_weight_block(grid: RadialGrid, tags: tuple, alpha: float, r0: int, r1: int, c0: int, c1: int) -> np.ndarray:
    ks, b = _bucket_matrix(grid)
    mask = pair_mask(InteractionKind(tags, alpha), ks).astype(float)
    table = b[:, r0 : r1 + 1].T @ mask @ b[:, c0 : c1 + 1]
    table[np.abs(table) < 1e-300] = 0.0
    table.flags.writeable = False
    return table


def _block_weight(kind: InteractionKind):
    def weight(grid, r0, r1, c0, c1):
        return _pair_weight_block(grid, kind.tags, kind.alpha, r0, r1, c0, c1)

    return weight


def pair_weight_table(grid: RadialGrid, kind, alpha: float = 1.0) -> np.ndarray:
    """Cutoff symbol ``P_kind(t, s)`` on frequency nodes ``0..N`` (rows ``t``, columns ``s``)."""
    kind = InteractionKind.parse(kind, alpha)
    return _pair_weight_block(grid, kind.tags, kind.alpha, 0, grid.N, 0, grid.N)


def continuum_pair_weight(kind, t, s, alpha: float = 1.0, k_range=(-30, 30)):
    """Cutoff symbol from the un-truncated dyadic sums (no grid buckets).

    Used for scans over continuous frequency samples.
    """
    kind = InteractionKind.parse(kind, alpha)
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    out = np.zeros(np.broadcast(t, s).shape)
    ks = range(k_range[0], k_range[1] + 1)
    for tag in kind.tags:
        for k in ks:
            band = bool(in_alpha_band(k, kind.alpha))
            if tag == "HL" or (tag == "aL" and band) or (tag == "XL" and not band):
                out = out + chi(t, k) * chi_le(s, k - 5)
            elif tag == "LH" or (tag == "La" and band) or (tag == "LX" and not band):
                out = out + chi_le(t, k - 5) * chi(s, k)
            elif tag == "HH":
                for k2 in range(k - 4, k + 5):
                    out = out + chi(t, k) * chi(s, k2)
    return out


def _check_triangle(t, s, rho):
    t, s, rho = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (t, s, rho)))
    tol = 1e-12 * np.maximum(1.0, rho + s)
    if np.any((t < 0) | (s < 0) | (rho < 0)):
        raise DomainError("frequencies must be nonnegative")
    if np.any((t < np.abs(rho - s) - tol) | (t > rho + s + tol)):
        raise DomainError("|xi - eta|, |eta|, |xi| violate the triangle inequality")
    return t, s, rho


def resonance_omega(t, s, rho, alpha: float):
    """Phase mismatch ``-|xi|^2 + alpha |xi - eta| + |eta|^2`` with ``t=|xi-eta|, s=|eta|, rho=|xi|``."""
    t, s, rho = _check_triangle(t, s, rho)
    out = -(rho**2) + alpha * t + s**2
    return out if out.ndim else float(out)


def resonance_omega_tilde(t, s, rho, alpha: float):
    """Denominator ``|xi - eta|^2 - |eta|^2 - alpha |xi|`` of the wave-side normal form."""
    t, s, rho = _check_triangle(t, s, rho)
    out = t**2 - s**2 - alpha * rho
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class BilinearSymbol:
    """Radial bilinear symbol ``m(t, s, rho)``.

    The fast path covers ``m = weight(t, s) * out(rho) / Q(t, s, rho)`` where
    ``weight`` is tabulated on grid nodes and ``Q`` is the quadratic
    ``c0 t^2 + c1 s^2 + c2 rho^2 + c3 t + c4 s + c5 rho``.  Anything else can
    be given as a vectorized ``func(t, s, rho)`` (slow path, small grids).
    """

    name: str
    weight: Optional[Callable[..., np.ndarray]] = None
    denominator: Optional[tuple] = None
    output: Optional[Callable[[np.ndarray], np.ndarray]] = None
    func: Optional[Callable] = None
    support: tuple = ()
    conjugate_second: bool = False

    def table(self, grid: RadialGrid, rows=None, cols=None) -> np.ndarray:
        """Weights on nodes ``rows = (r0, r1)`` by ``cols = (c0, c1)`` (inclusive; default all)."""
        r0, r1 = rows if rows is not None else (0, grid.N)
        c0, c1 = cols if cols is not None else (0, grid.N)
        if self.weight is None:
            return np.ones((r1 - r0 + 1, c1 - c0 + 1))
        return self.weight(grid, r0, r1, c0, c1)

    def __call__(self, t, s, rho, grid: RadialGrid | None = None):
        """Pointwise value; tabulated weights need ``grid`` and node-aligned arguments."""
        if self.func is not None:
            return self.func(t, s, rho)
        t, s, rho = (np.asarray(x, dtype=float) for x in (t, s, rho))
        if self.weight is None:
            w = np.ones(np.broadcast(t, s).shape)
        else:
            tab = self.table(grid)
            w = tab[np.rint(t / grid.drho).astype(int), np.rint(s / grid.drho).astype(int)]
        if self.denominator is not None:
            c = self.denominator
            w = w / (c[0] * t**2 + c[1] * s**2 + c[2] * rho**2 + c[3] * t + c[4] * s + c[5] * rho)
        if self.output is not None:
            w = w * self.output(rho)
        return w

    def times_output(self, mult: Callable[[np.ndarray], np.ndarray], name: str | None = None) -> "BilinearSymbol":
        """Symbol multiplied by a function of the output frequency."""
        old = self.output
        new = mult if old is None else (lambda rho: old(rho) * mult(rho))
        fn = None if self.func is None else (lambda t, s, rho: self.func(t, s, rho) * mult(rho))
        return BilinearSymbol(name or f"{self.name}*out", self.weight, self.denominator, new, fn,
                              self.support, self.conjugate_second)


def identity_symbol() -> BilinearSymbol:
    return BilinearSymbol("one", support=KINDS)


def interaction_symbol(kind, alpha: float = 1.0) -> BilinearSymbol:
    kind = InteractionKind.parse(kind, alpha)
    return BilinearSymbol(f"P_{kind}", weight=_block_weight(kind),
                          support=kind.tags)


def omega_symbol(alpha: float) -> BilinearSymbol:
    """Symbol ``P_XL / omega`` of the Schrodinger-side normal form."""
    kind = InteractionKind.parse("XL", alpha)
    return BilinearSymbol(f"Omega[{alpha}]", weight=_block_weight(kind),
                          denominator=(0.0, 1.0, -1.0, alpha, 0.0, 0.0), support=("XL",))


def omega_tilde_symbol(alpha: float) -> BilinearSymbol:
    """Symbol ``P_{XL+LX} / (t^2 - s^2 - alpha rho)``; second argument enters conjugated."""
    kind = InteractionKind.parse("XL+LX", alpha)
    return BilinearSymbol(f"OmegaTilde[{alpha}]", weight=_block_weight(kind),
                          denominator=(1.0, -1.0, 0.0, 0.0, 0.0, -alpha), support=("XL", "LX"),
                          conjugate_second=True)


def _padded(grid: RadialGrid, fh: np.ndarray) -> np.ndarray:
    out = np.zeros(grid.N + 1, dtype=complex)
    out[1:] = grid.rho * fh
    return out


def radial_bilinear_apply(m: BilinearSymbol, f: RadialField, g: RadialField, nodes=None) -> RadialField:
    """Apply a radial bilinear multiplier by trapezoid quadrature in frequency.

    ``nodes`` (1-based frequency indices) restricts the evaluation; other
    output samples are left at zero.  Cost is ``O(N^2)`` per output node,
    reduced by the supports of the symbol and of ``f``, ``g``.
    """
    check_compatible(f, g)
    grid = f.grid
    fh = to_frequency(f).values
    gh = to_frequency(g).values
    if m.conjugate_second:
        # radial fields: F[conj g](rho) = conj(ghat(rho))
        gh = np.conj(gh)
    F = _padded(grid, fh)
    G = _padded(grid, gh)
    out_nodes = np.arange(1, grid.N + 1) if nodes is None else np.asarray(nodes, dtype=np.int64)
    values = np.zeros(grid.N, dtype=complex)
    if not (np.any(F) and np.any(G)):
        return RadialField(grid, values, FREQUENCY)

    nz_f = np.flatnonzero(F)
    nz_g = np.flatnonzero(G)
    r0, r1 = int(nz_f[0]), int(nz_f[-1])
    c0, c1 = int(nz_g[0]), int(nz_g[-1])
    if m.func is None:
        W = np.ascontiguousarray(m.table(grid, (r0, r1), (c0, c1)), dtype=float)
        den = np.zeros(6) if m.denominator is None else np.asarray(m.denominator, dtype=float)
        lo, hi = _quadrature.support_bounds(W, r0, c0, F)
        res = _quadrature.bilinear_trapezoid(F, G, W, r0, c0, den, m.denominator is not None, lo, hi, out_nodes,
                                             grid.drho)
        if m.output is not None:
            res = res * m.output(out_nodes * grid.drho)
    else:
        li = np.arange(r0, r1 + 1)[:, None]
        ji = np.arange(c0, c1 + 1)[None, :]
        tt, ss = li * grid.drho, ji * grid.drho
        res = np.empty(len(out_nodes), dtype=complex)
        for q, i in enumerate(out_nodes):
            with np.errstate(divide="ignore", invalid="ignore"):
                W = np.array(np.broadcast_to(m.func(tt, ss, i * grid.drho), (len(li), ji.shape[1])), dtype=float)
            tri = (li >= np.abs(i - ji)) & (li <= i + ji) & (li > 0) & (ji > 0)
            if not np.all(np.isfinite(W[tri])):
                raise SingularMultiplierError(f"symbol {m.name} is not finite near rho={i * grid.drho}")
            W[~tri] = 0.0
            lo, hi = _quadrature.support_bounds(W, r0, c0, F)
            res[q] = _quadrature.bilinear_trapezoid(F, G, W, r0, c0, np.zeros(6), False, lo, hi,
                                                    np.array([i], dtype=np.int64), grid.drho)[0]
    if not np.all(np.isfinite(res)):
        raise SingularMultiplierError(f"symbol {m.name} is singular on the sampled support")
    values[out_nodes - 1] = res
    return RadialField(grid, values, FREQUENCY)


def omega_transform(N: RadialField, u: RadialField, alpha: float, nodes=None) -> RadialField:
    """Normal-form boundary operator ``Omega(N, u)`` (frequency field)."""
    if not alpha > 0:
        raise InvalidParameterError(f"wave speed must be positive, got {alpha}")
    return radial_bilinear_apply(omega_symbol(alpha), N, u, nodes)


def omega_tilde_transform(u: RadialField, v: RadialField, alpha: float, nodes=None) -> RadialField:
    """Wave-side normal-form operator ``Omega~(u, v)`` (frequency field, ``v`` conjugated)."""
    if not alpha > 0:
        raise InvalidParameterError(f"wave speed must be positive, got {alpha}")
    return radial_bilinear_apply(omega_tilde_symbol(alpha), u, v, nodes)


@dataclass(frozen=True)
class ResonanceScan:
    alpha: float
    kind: str
    which: str
    c_min: float
    c_max: float
    n_points: int
    table: np.ndarray = field(repr=False, compare=False)


def resonance_scan(alpha: float, which: str = "omega", k_range=(-6, 6), n_t=24, n_s=12, n_rho=12) -> ResonanceScan:
    """Brute-force ``|denominator| / (rho^2 + alpha rho)`` over the sampled non-resonant support.

    ``which='omega'`` scans ``omega`` on ``XL`` (shells offset from ``log2 alpha``
    by ``k_range``); ``which='omega_tilde'`` scans the wave-side denominator on
    ``XL + LX``.  Samples are interior points of each shell and of the
    low-frequency cutoff support, so every sample carries positive weight.
    The scan is deterministic.
    """
    if not alpha > 0:
        raise InvalidParameterError(f"wave speed must be positive, got {alpha}")
    if which not in ("omega", "omega_tilde"):
        raise InvalidParameterError(f"unknown denominator {which!r}")
    k0 = round(math.log2(alpha))
    rows = []
    ft = (np.arange(n_t) + 0.5) / n_t
    fs = (np.arange(n_s) + 0.5) / n_s
    fr = (np.arange(n_rho) + 0.5) / n_rho
    orders = ("XL",) if which == "omega" else ("XL", "LX")
    for k in range(k0 + k_range[0], k0 + k_range[1] + 1):
        if in_alpha_band(k, alpha):
            continue
        hi = 1.25 * 2.0 ** (k - 1) + ft * (1.6 * 2.0**k - 1.25 * 2.0 ** (k - 1))
        lo = fs * 1.6 * 2.0 ** (k - 5)
        for order in orders:
            hh, ll = np.meshgrid(hi, lo, indexing="ij")
            t, s = (hh, ll) if order == "XL" else (ll, hh)
            t = t[..., None]
            s = s[..., None]
            rho = np.abs(t - s) + fr * (t + s - np.abs(t - s))
            if which == "omega":
                den = -(rho**2) + alpha * t + s**2
            else:
                den = t**2 - s**2 - alpha * rho
            ratio = np.abs(den) / (rho**2 + alpha * rho)
            rows.append(np.stack(np.broadcast_arrays(t, s, rho, ratio), axis=-1).reshape(-1, 4))
    table = np.concatenate(rows)
    return ResonanceScan(alpha, "+".join(orders), which, float(table[:, 3].min()), float(table[:, 3].max()),
                         len(table), table)
