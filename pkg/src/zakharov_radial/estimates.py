"""Empirical checks of the bilinear, boundary, cubic and embedding estimates.

Every check draws random radial fields whose Fourier profiles are fixed
continuum functions (so the same sample can be evaluated on a grid and on its
refinement), evaluates both sides of an inequality ``lhs <= C rhs`` and
records the ratio.  Mixed space-time norms use synthetic piecewise-constant
time profiles on the unit window, which makes every time factor exact:
for ``F(t, x) = a(t) f(x)`` one has ``||F||_{L^q_t X} = ||a||_{L^q} ||f||_X``.

A report passes when every counted ratio is finite and the largest ratio
grows by less than ``growth_tol`` when the grid is refined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .errors import InvalidParameterError
from .interactions import (
    BilinearSymbol,
    identity_symbol,
    interaction_product,
    interaction_symbol,
    omega_symbol,
    omega_tilde_symbol,
    radial_bilinear_apply,
)
from .littlewood_paley import (
    BesovSpec,
    besov_norm,
    chi,
    homogeneous_sobolev_norm,
    lebesgue_norm,
    q_of,
    sobolev_norm,
    strichartz_exponents_ok,
)
from .radial_spectral import (
    FREQUENCY,
    PHYSICAL,
    RadialField,
    RadialGrid,
    D,
    apply_radial_multiplier,
    japanese,
    make_grid,
    to_frequency,
    to_physical,
)

DEFAULT_EPS = 0.1
DEFAULT_THETA_SCHRODINGER = 0.06
DEFAULT_THETA_WAVE = 0.12


@dataclass(frozen=True)
class RandomFieldSpec:
    """Band-limited random radial fields.

    The Fourier profile is ``sum_k 2^(-k s_dec) chi_k(rho) sum_l c_kl cos(pi l x_k)``
    with ``x_k = log2(rho) - k`` and complex Gaussian coefficients drawn from
    ``numpy.random.default_rng([seed, index])``.
    """

    seed: int = 0
    k_lo: int = -1
    k_hi: int = 2
    s_dec: float = 0.0
    count: int = 50
    modes: int = 4

    def __post_init__(self):
        if self.k_hi < self.k_lo:
            raise InvalidParameterError(f"empty shell band [{self.k_lo}, {self.k_hi}]")
        if self.count < 1 or self.modes < 1:
            raise InvalidParameterError("count and modes must be positive")

    @property
    def shells(self) -> range:
        return range(self.k_lo, self.k_hi + 1)


def field_profile(spec: RandomFieldSpec, index: int) -> Callable[[np.ndarray], np.ndarray]:
    """Continuum Fourier profile ``rho -> fhat(rho)`` of sample ``index``."""
    rng = np.random.default_rng([spec.seed, index])
    shells = list(spec.shells)
    c = (rng.standard_normal((len(shells), spec.modes)) + 1j * rng.standard_normal((len(shells), spec.modes)))
    c /= math.sqrt(2.0)
    ls = np.arange(spec.modes)

    def profile(rho):
        shape = np.shape(rho)
        rho = np.atleast_1d(np.asarray(rho, dtype=float)).ravel()
        out = np.zeros(rho.shape, dtype=complex)
        with np.errstate(divide="ignore"):
            lr = np.log2(rho)
        for i, k in enumerate(shells):
            w = np.atleast_1d(chi(rho, k))
            on = w > 0
            x = lr[on] - k
            basis = np.cos(np.pi * ls[:, None] * x[None, :])
            out[on] += 2.0 ** (-k * spec.s_dec) * w[on] * (c[i] @ basis)
        return out.reshape(shape) if shape else complex(out[0])

    return profile


def random_radial_field(spec: RandomFieldSpec, index: int, grid: RadialGrid) -> RadialField:
    """Sample ``index`` of ``spec`` as a frequency-space field on ``grid``."""
    return RadialField(grid, field_profile(spec, index)(grid.rho), FREQUENCY)


def time_profile(seed: int, index: int, which: int, pieces: int) -> np.ndarray:
    """Piecewise-constant amplitudes in ``[1/4, 1]`` on ``pieces`` equal parts of ``[0, 1]``."""
    rng = np.random.default_rng([seed, index, 1000 + which])
    return rng.uniform(0.25, 1.0, pieces)


def time_norm_pc(a: np.ndarray, q: float) -> float:
    """``L^q([0, 1])`` norm of a piecewise-constant profile with equal pieces."""
    a = np.abs(np.asarray(a, dtype=float))
    if np.isinf(q):
        return float(a.max())
    return float(np.mean(a**q) ** (1.0 / q))


@dataclass(frozen=True)
class SampleSuite:
    """Everything that determines a batch of samples.

    ``first`` draws the wave-side field ``N`` (or the high-frequency input of a
    bilinear operator), ``second`` the Schrodinger-side field ``u``.
    """

    grid: RadialGrid
    first: RandomFieldSpec
    second: RandomFieldSpec
    alpha: float = 1.0
    eps: float = DEFAULT_EPS
    theta: float = DEFAULT_THETA_SCHRODINGER
    time_pieces: int = 4
    growth_tol: float = 1.5
    refine: bool = True

    def __post_init__(self):
        if not strichartz_exponents_ok(self.eps):
            raise InvalidParameterError(f"eps={self.eps} violates 10/3 < q(eps) < 4 < q(-eps)")
        if not self.alpha > 0:
            raise InvalidParameterError(f"wave speed must be positive, got {self.alpha}")

    @property
    def count(self) -> int:
        return min(self.first.count, self.second.count)


@dataclass
class EstimateReport:
    """Ratio statistics of one inequality over a sample suite."""

    lemma: str
    lhs: np.ndarray
    rhs: np.ndarray
    ratio: np.ndarray
    max_ratio: float
    median_ratio: float
    refined_max_ratio: float
    refinement_factor: float
    skipped: int
    passed: bool
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "count": int(len(self.ratio)),
            "skipped": int(self.skipped),
            "max_ratio": self.max_ratio,
            "median_ratio": self.median_ratio,
            "refined_max_ratio": self.refined_max_ratio,
            "refinement_factor": self.refinement_factor,
            "passed": bool(self.passed),
            "lhs": [float(x) for x in self.lhs],
            "rhs": [float(x) for x in self.rhs],
            "meta": self.meta,
        }


def _ratios(pairs):
    lhs = np.array([p[0] for p in pairs], dtype=float)
    rhs = np.array([p[1] for p in pairs], dtype=float)
    keep = rhs > 0
    return lhs[keep], rhs[keep], int(np.count_nonzero(~keep))


def build_report(lemma: str, base_pairs, refined_pairs=None, growth_tol: float = 1.5, meta=None) -> EstimateReport:
    """Assemble a report from ``(lhs, rhs)`` pairs on the base and refined grids.

    Samples with ``rhs == 0`` are skipped and counted.
    """
    lhs, rhs, skipped = _ratios(base_pairs)
    ratio = lhs / rhs if len(rhs) else np.zeros(0)
    mx = float(ratio.max()) if len(ratio) else 0.0
    med = float(np.median(ratio)) if len(ratio) else 0.0
    finite = bool(np.all(np.isfinite(ratio)))
    if refined_pairs is not None:
        l2, r2, _ = _ratios(refined_pairs)
        ratio2 = l2 / r2 if len(r2) else np.zeros(0)
        mx2 = float(ratio2.max()) if len(ratio2) else 0.0
        finite = finite and bool(np.all(np.isfinite(ratio2)))
        if mx == 0.0:
            factor = 1.0 if mx2 == 0.0 else math.inf
        else:
            factor = mx2 / mx
    else:
        mx2, factor = mx, 1.0
    passed = finite and factor < growth_tol
    return EstimateReport(lemma, lhs, rhs, ratio, mx, med, mx2, factor, skipped, passed, dict(meta or {}))


def _run(lemma: str, suite: SampleSuite, sample_fn, meta=None) -> EstimateReport:
    """Evaluate ``sample_fn(N, u, index)`` on the base grid and its refinement."""
    grids = [suite.grid] + ([suite.grid.refined()] if suite.refine else [])
    results = []
    for g in grids:
        pairs = []
        for i in range(suite.count):
            n_field = random_radial_field(suite.first, i, g)
            u_field = random_radial_field(suite.second, i, g)
            pairs.append(sample_fn(n_field, u_field, i))
        results.append(pairs)
    info = {"alpha": suite.alpha, "eps": suite.eps, "theta": suite.theta, "R": suite.grid.R, "N": suite.grid.N}
    info.update(meta or {})
    return build_report(lemma, results[0], results[1] if suite.refine else None, suite.growth_tol, info)


def _profiles(suite: SampleSuite, i: int):
    return (time_profile(suite.first.seed, i, 0, suite.time_pieces),
            time_profile(suite.second.seed, i, 1, suite.time_pieces))


def _jd(f: RadialField, s: float = 1.0) -> RadialField:
    return apply_radial_multiplier(to_frequency(f), japanese(s))


def _d(f: RadialField, s: float = 1.0) -> RadialField:
    return apply_radial_multiplier(to_frequency(f), D(s))


def _product(f: RadialField, g: RadialField) -> RadialField:
    a, b = to_physical(f), to_physical(g)
    return RadialField(a.grid, a.values * b.values, PHYSICAL)


def _minus(eps):
    return BesovSpec(-0.25 - eps, q_of(-eps))


def _plus(eps):
    return BesovSpec(0.25 + eps, q_of(eps))


# ---------------------------------------------------------------- default suites


def default_suites(seed: int = 0, count: int = 50, eps: float = DEFAULT_EPS,
                   theta_s: float = DEFAULT_THETA_SCHRODINGER, theta_w: float = DEFAULT_THETA_WAVE,
                   alpha: float = 1.0) -> dict:
    """Sample suites used by the default verification run.

    The resonant (``alpha L``) parts need the high factor inside the band
    ``|k - log2 alpha| <= 1`` and the low factor five shells below it; they
    run at wave speed 16 on a grid that resolves both ranges.
    """

    def spec(k_lo, k_hi, which):
        return RandomFieldSpec(seed=seed + which, k_lo=k_lo, k_hi=k_hi, s_dec=1.5, count=count)

    base = make_grid(32.0, 512)
    wide = make_grid(32.0, 1024)
    common = dict(eps=eps, alpha=alpha)
    # normal-form terms need the first factor five shells above the second
    nf = dict(grid=wide, first=spec(3, 5, 0), second=spec(-1, 4, 1), **common)
    return {
        "S-LH": SampleSuite(wide, spec(-1, 1, 0), spec(2, 5, 1), theta=theta_s, **common),
        "S-HH": SampleSuite(base, spec(-1, 2, 0), spec(-1, 2, 1), theta=theta_s, **common),
        "S-aL": SampleSuite(wide, spec(3, 5, 0), spec(-2, 0, 1), theta=theta_s, eps=eps, alpha=16.0),
        "W-HH": SampleSuite(base, spec(-1, 2, 0), spec(-1, 2, 1), theta=theta_w, **common),
        "W-aL": SampleSuite(wide, spec(-1, 2, 0), spec(-2, 5, 1), theta=theta_w, eps=eps, alpha=16.0),
        "B": SampleSuite(**nf),
        "OS": SampleSuite(**nf),
        "C": SampleSuite(**nf),
        "E": SampleSuite(base, spec(-1, 2, 0), spec(-1, 2, 1), **common),
        "CM": SampleSuite(make_grid(32.0, 21000), spec(5, 5, 0), spec(0, 0, 1), **common),
    }


def _suite(samples, key):
    """``samples`` may be a suite, a mapping of suites by key, or ``None`` for the defaults."""
    if samples is None:
        return default_suites()[key]
    if isinstance(samples, dict):
        return samples[key]
    return samples


# ---------------------------------------------------------------- bilinear (Schrodinger side)


def dual_exponents(theta: float, eps: float, wave: bool = False) -> tuple[float, float, float]:
    """``(q~', r~', sigma)`` of the dual Strichartz space in the resonant estimates.

    Schrodinger side: ``1/q~ = 1/2 - theta/2``, ``1/r~ = 1/4 + theta/3 + eps/3``,
    ``sigma = 3/2 - 2/q~ - 3/r~``.  Wave side: ``1/r~ = 1/4 + theta/3 - eps/3`` and
    ``sigma = 3/2 - 1/q~ - 3/r~``.
    """
    if not 0.0 <= theta <= 1.0:
        raise InvalidParameterError(f"theta must lie in [0, 1], got {theta}")
    iq = 0.5 - theta / 2.0
    ir = 0.25 + theta / 3.0 + (-eps if wave else eps) / 3.0
    sigma = 1.5 - (1.0 if wave else 2.0) * iq - 3.0 * ir
    return 1.0 / (1.0 - iq), 1.0 / (1.0 - ir), sigma


def verify_bilinear_schrodinger(samples=None, resonant=None) -> list[EstimateReport]:
    """Reports for ``(Nu)_LH``, ``(Nu)_HH`` and the resonant ``(Nu)_{alpha L}`` piece."""
    reports = []
    for tag in ("LH", "HH"):
        suite = _suite(samples, f"S-{tag}")
        eps = suite.eps

        def fn(N, u, i, tag=tag, suite=suite, eps=eps):
            aN, au = _profiles(suite, i)
            lhs = sobolev_norm(interaction_product(N, u, tag, suite.alpha), 1.0) * time_norm_pc(aN * au, 1)
            rhs = (besov_norm(N, _minus(eps)) * time_norm_pc(aN, 2)
                   * besov_norm(_jd(u), _plus(eps)) * time_norm_pc(au, 2))
            return lhs, rhs

        reports.append(_run(f"schrodinger-{tag}", suite, fn))

    suite = _suite(resonant, "S-aL")
    qp, rp, sigma = dual_exponents(suite.theta, suite.eps)

    def fn_res(N, u, i):
        aN, au = _profiles(suite, i)
        piece = interaction_product(N, u, "aL", suite.alpha)
        lhs = besov_norm(_jd(piece), BesovSpec(sigma, rp)) * time_norm_pc(aN * au, qp)
        u_norm = (lebesgue_norm(u, 2) * time_norm_pc(au, np.inf)
                  + besov_norm(u, _plus(suite.eps)) * time_norm_pc(au, 2))
        rhs = besov_norm(N, _minus(suite.eps)) * time_norm_pc(aN, 2) * u_norm
        return lhs, rhs

    reports.append(_run("schrodinger-aL", suite, fn_res, {"q_dual": qp, "r_dual": rp, "sigma": sigma}))
    return reports


# ---------------------------------------------------------------- bilinear (wave side)


def verify_bilinear_wave(samples=None, resonant=None) -> list[EstimateReport]:
    """Reports for ``D(u ubar)_HH`` and the resonant ``D(u ubar)_{alpha L + L alpha}`` piece."""
    suite = _suite(samples, "W-HH")
    eps = suite.eps

    def fn_hh(_, u, i):
        _, au = _profiles(suite, i)
        piece = interaction_product(u, to_physical(u).conj(), "HH", suite.alpha)
        lhs = lebesgue_norm(_d(piece), 2) * time_norm_pc(au * au, 1)
        rhs = (besov_norm(u, BesovSpec(0.25 - eps, q_of(-eps))) * besov_norm(_jd(u), _plus(eps))
               * time_norm_pc(au, 2) ** 2)
        return lhs, rhs

    reports = [_run("wave-HH", suite, fn_hh)]

    suite_r = _suite(resonant, "W-aL")
    qp, rp, sigma = dual_exponents(suite_r.theta, suite_r.eps, wave=True)

    def fn_res(_, u, i):
        _, au = _profiles(suite_r, i)
        piece = interaction_product(u, to_physical(u).conj(), "aL+La", suite_r.alpha)
        lhs = besov_norm(_d(piece), BesovSpec(sigma, rp)) * time_norm_pc(au * au, qp)
        ju = _jd(u)
        rhs = (lebesgue_norm(ju, 2) * time_norm_pc(au, np.inf)
               + besov_norm(ju, _plus(suite_r.eps)) * time_norm_pc(au, 2)) ** 2
        return lhs, rhs

    reports.append(_run("wave-aL+La", suite_r, fn_res, {"q_dual": qp, "r_dual": rp, "sigma": sigma}))
    return reports


# ---------------------------------------------------------------- normal-form terms


def _omega(N, u, alpha):
    return radial_bilinear_apply(omega_symbol(alpha), to_frequency(N), to_frequency(u))


def _omega_tilde(u, v, alpha):
    return radial_bilinear_apply(omega_tilde_symbol(alpha), to_frequency(u), to_frequency(v))


def verify_boundary(samples=None) -> list[EstimateReport]:
    """Fixed-time bounds for ``Omega(N, u)`` in ``H^1`` and ``D Omega~(u, u)`` in ``L^2``."""
    suite = _suite(samples, "B")
    a = suite.alpha

    def fn_omega(N, u, _):
        return sobolev_norm(_omega(N, u, a), 1.0), lebesgue_norm(N, 2) * sobolev_norm(u, 1.0)

    def fn_tilde(_, u, __):
        return lebesgue_norm(_d(_omega_tilde(u, u, a)), 2), sobolev_norm(u, 1.0) ** 2

    return [_run("boundary-Omega", suite, fn_omega), _run("boundary-OmegaTilde", suite, fn_tilde)]


def verify_omega_strichartz(samples=None) -> list[EstimateReport]:
    """Strichartz-space bounds for ``<D> Omega(N, u)`` and ``D Omega~(u, u)``."""
    suite = _suite(samples, "OS")
    a, eps = suite.alpha, suite.eps

    def fn_omega(N, u, i):
        aN, au = _profiles(suite, i)
        lhs = besov_norm(_jd(_omega(N, u, a)), _plus(eps)) * time_norm_pc(aN * au, 2)
        rhs = lebesgue_norm(N, 2) * time_norm_pc(aN, np.inf) * lebesgue_norm(_jd(u), 6) * time_norm_pc(au, 2)
        return lhs, rhs

    def fn_tilde(_, u, i):
        _, au = _profiles(suite, i)
        lhs = besov_norm(_d(_omega_tilde(u, u, a)), _minus(eps)) * time_norm_pc(au * au, 2)
        rhs = lebesgue_norm(u, 6) * time_norm_pc(au, 2) * lebesgue_norm(u, 2) * time_norm_pc(au, np.inf)
        return lhs, rhs

    return [_run("strichartz-Omega", suite, fn_omega), _run("strichartz-OmegaTilde", suite, fn_tilde)]


def verify_cubic(samples=None) -> list[EstimateReport]:
    """Bounds for ``Omega(D|u|^2, u)``, ``<D> Omega(N, Nu)`` and ``D Omega~(Nu, u)``."""
    suite = _suite(samples, "C")
    a = suite.alpha

    def fn1(_, u, i):
        _, au = _profiles(suite, i)
        d_u2 = _d(_product(u, to_physical(u).conj()))
        lhs = sobolev_norm(_omega(d_u2, u, a), 1.0) * time_norm_pc(au**3, 1)
        rhs = lebesgue_norm(_jd(u), 6) ** 2 * time_norm_pc(au, 2) ** 2 * lebesgue_norm(u, 2) * time_norm_pc(au, np.inf)
        return lhs, rhs

    def fn2(N, u, i):
        aN, au = _profiles(suite, i)
        lhs = besov_norm(_jd(_omega(N, _product(N, u), a)), BesovSpec(0.0, 1.2)) * time_norm_pc(aN**2 * au, 2)
        rhs = lebesgue_norm(_jd(u), 6) * time_norm_pc(au, 2) * lebesgue_norm(N, 2) ** 2 * time_norm_pc(aN, np.inf) ** 2
        return lhs, rhs

    def fn3(N, u, i):
        aN, au = _profiles(suite, i)
        lhs = lebesgue_norm(_d(_omega_tilde(_product(N, u), u, a)), 2) * time_norm_pc(aN * au**2, 1)
        rhs = lebesgue_norm(_jd(u), 6) ** 2 * time_norm_pc(au, 2) ** 2 * lebesgue_norm(N, 2) * time_norm_pc(aN, np.inf)
        return lhs, rhs

    return [_run("cubic-Omega(D|u|^2,u)", suite, fn1), _run("cubic-<D>Omega(N,Nu)", suite, fn2),
            _run("cubic-DOmegaTilde(Nu,u)", suite, fn3)]


# ---------------------------------------------------------------- Coifman-Meyer and embeddings


def holder_exponent(p: float, q: float) -> float:
    """``r`` with ``1/r = 1/p + 1/q``; every exponent must lie in ``[1, inf]``."""
    if not (p >= 1 and q >= 1):
        raise InvalidParameterError(f"exponents must be >= 1, got p={p}, q={q}")
    inv = 1.0 / p + 1.0 / q
    if inv > 1.0:
        raise InvalidParameterError(f"1/p + 1/q = {inv} > 1 gives r < 1")
    return math.inf if inv == 0 else 1.0 / inv


def cm_symbols(alpha: float = 1.0) -> dict:
    """Symbols whose bilinear bounds are used in the normal-form estimates."""
    return {
        "one": identity_symbol(),
        "Omega*omega": interaction_symbol("XL", alpha),
        "D<D>Omega": omega_symbol(alpha).times_output(lambda rho: rho * np.sqrt(1.0 + rho**2), "D<D>Omega"),
    }


def verify_coifman_meyer(m: BilinearSymbol, k1: int, k2: int, p: float, q: float,
                         samples=None) -> EstimateReport:
    """``||T_m(P_k1 f, P_k2 g)||_r`` against ``||P_k1 f||_p ||P_k2 g||_q``.

    The inputs are drawn directly as single-shell fields, so they play the
    role of the projected functions.  The symbol ``m = 1`` is evaluated as
    the pointwise product.
    """
    r = holder_exponent(p, q)
    suite = _suite(samples, "CM")
    suite = replace(suite, first=replace(suite.first, k_lo=k1, k_hi=k1),
                    second=replace(suite.second, k_lo=k2, k_hi=k2))
    identity = m.weight is None and m.denominator is None and m.output is None and m.func is None

    def fn(f, g, _):
        out = _product(f, g) if identity else radial_bilinear_apply(m, f, g)
        return lebesgue_norm(out, r), lebesgue_norm(f, p) * lebesgue_norm(g, q)

    return _run(f"coifman-meyer[{m.name}]({k1},{k2})", suite, fn, {"p": p, "q": q, "r": r, "k1": k1, "k2": k2})


def coifman_meyer_sweep(m: BilinearSymbol, k2: int, offsets, p: float, q: float,
                        samples=None) -> tuple[list[EstimateReport], float]:
    """Reports over ``k1 = k2 + offset`` and the spread ``max C / min C`` of the constants."""
    reports = [verify_coifman_meyer(m, k2 + o, k2, p, q, samples) for o in offsets]
    cs = np.array([rep.max_ratio for rep in reports])
    spread = float(cs.max() / cs.min()) if np.all(cs > 0) else math.inf
    return reports, spread


def verify_embedding_chain(samples=None) -> list[EstimateReport]:
    """One report per link of ``H'^1 in B^{1/4+eps}_{q(eps)} in B^{1/4-eps}_{q(-eps)} in L^6``."""
    suite = _suite(samples, "E")
    eps = suite.eps
    b_plus = _plus(eps)
    b_minus = BesovSpec(0.25 - eps, q_of(-eps))
    links = [
        ("embedding-H1-B+", lambda u: besov_norm(u, b_plus), lambda u: homogeneous_sobolev_norm(u, 1.0)),
        ("embedding-B+-B-", lambda u: besov_norm(u, b_minus), lambda u: besov_norm(u, b_plus)),
        ("embedding-B--L6", lambda u: lebesgue_norm(u, 6), lambda u: besov_norm(u, b_minus)),
    ]
    return [_run(name, suite, lambda _, u, __, lo=lo, hi=hi: (lo(u), hi(u))) for name, lo, hi in links]


def verify_all(seed: int = 0, count: int = 50, eps: float = DEFAULT_EPS, alpha: float = 1.0,
               offsets=range(5, 11)) -> list[EstimateReport]:
    """Every report of the default verification run, in a fixed order."""
    suites = default_suites(seed, count, eps, alpha=alpha)
    reports = []
    reports += verify_bilinear_schrodinger(suites, suites)
    reports += verify_bilinear_wave(suites, suites)
    reports += verify_boundary(suites)
    reports += verify_omega_strichartz(suites)
    reports += verify_cubic(suites)
    syms = cm_symbols(alpha)
    reports.append(verify_coifman_meyer(syms["one"], 5, 0, 2.0, 2.0, suites["CM"]))
    for key in ("Omega*omega", "D<D>Omega"):
        sweep, spread = coifman_meyer_sweep(syms[key], 0, offsets, 2.0, np.inf, suites["CM"])
        for rep in sweep:
            rep.meta["sweep_spread"] = spread
        reports += sweep
    reports += verify_embedding_chain(suites)
    return reports
