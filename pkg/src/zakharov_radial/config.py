"""Run configuration: ``key = value`` sections parsed into frozen dataclasses.

Schema (every section and key is optional except ``[grid]``)::

    [grid]         R, N
    [physics]      alpha (1.0), eps (0.1)
    [time]         dt (0.01), T (1.0), sample_every (1), checkpoint_every (0),
                   nonlinearity (physical)
    [data]         family (gaussian), eps0 (0.01), width (1.0), shell (0), offset (8.0)
    [diagnostics]  x_norm (true), boundary (true), boundary_times (2, 20)
    [verify]       seed (0), count (50), cm_k2 (0), cm_offsets (5, 10)
    [resonance]    alphas (0.5, 1, 2)
    [output]       dir (out)

Unknown sections or keys, missing required keys and out-of-range values raise
:class:`~zakharov_radial.errors.ConfigError` carrying the key and line.
"""

from __future__ import annotations

import configparser
import re
from dataclasses import dataclass, field, fields, replace

from .errors import ConfigError
from .littlewood_paley import strichartz_exponents_ok
from .solver import FAMILIES, NONLINEARITIES


@dataclass(frozen=True)
class GridConfig:
    R: float
    N: int


@dataclass(frozen=True)
class PhysicsConfig:
    alpha: float = 1.0
    eps: float = 0.1


@dataclass(frozen=True)
class TimeConfig:
    dt: float = 0.01
    T: float = 1.0
    sample_every: int = 1
    checkpoint_every: int = 0
    nonlinearity: str = "physical"


@dataclass(frozen=True)
class DataConfig:
    family: str = "gaussian"
    eps0: float = 0.01
    width: float = 1.0
    shell: int = 0
    offset: float = 8.0


@dataclass(frozen=True)
class DiagnosticsConfig:
    x_norm: bool = True
    boundary: bool = True
    boundary_times: tuple = (2.0, 20.0)


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 0
    count: int = 50
    cm_k2: int = 0
    cm_offsets: tuple = (5, 10)


@dataclass(frozen=True)
class ResonanceConfig:
    alphas: tuple = (0.5, 1.0, 2.0)


@dataclass(frozen=True)
class OutputConfig:
    dir: str = "out"


@dataclass(frozen=True)
class RunConfig:
    grid: GridConfig
    physics: PhysicsConfig = field(default_factory=PhysicsConfig)
    time: TimeConfig = field(default_factory=TimeConfig)
    data: DataConfig = field(default_factory=DataConfig)
    diagnostics: DiagnosticsConfig = field(default_factory=DiagnosticsConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)
    resonance: ResonanceConfig = field(default_factory=ResonanceConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    def with_seed(self, seed: int) -> "RunConfig":
        return replace(self, verify=replace(self.verify, seed=int(seed)))

    def with_output(self, path: str) -> "RunConfig":
        return replace(self, output=OutputConfig(str(path)))


_SECTIONS = {f.name: f.type for f in fields(RunConfig)}
_CLASSES = {
    "grid": GridConfig, "physics": PhysicsConfig, "time": TimeConfig, "data": DataConfig,
    "diagnostics": DiagnosticsConfig, "verify": VerifyConfig, "resonance": ResonanceConfig,
    "output": OutputConfig,
}
_REQUIRED = {"grid": ("R", "N")}


def _line_index(text: str) -> dict:
    """Map ``(section, key)`` and ``(section, None)`` to 1-based line numbers."""
    out = {}
    section = None
    for no, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        m = re.match(r"^\[([^\]]+)\]$", s)
        if m:
            section = m.group(1).strip()
            out.setdefault((section, None), no)
            continue
        m = re.match(r"^([^=:#;\s][^=:]*?)\s*[=:]", s)
        if m and section is not None:
            out.setdefault((section, m.group(1).strip().lower()), no)
    return out


def _convert(raw: str, default, key: str, line):
    try:
        if isinstance(default, bool):
            v = raw.strip().lower()
            if v in ("1", "true", "yes", "on"):
                return True
            if v in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        if isinstance(default, tuple):
            kind = type(default[0]) if default else float
            return tuple(kind(x) for x in raw.replace(",", " ").split())
        if isinstance(default, int):
            return int(raw)
        if isinstance(default, float):
            return float(raw)
        return raw.strip()
    except ValueError:
        raise ConfigError(f"cannot parse {raw!r}", key=key, line=line) from None


def _check(cfg: RunConfig, lines: dict):
    def fail(section, key, msg):
        raise ConfigError(msg, key=f"{section}.{key}", line=lines.get((section, key.lower())))

    g, p, t, d, v = cfg.grid, cfg.physics, cfg.time, cfg.data, cfg.verify
    if not g.R > 0:
        fail("grid", "R", f"must be positive, got {g.R}")
    if g.N < 8:
        fail("grid", "N", f"must be at least 8, got {g.N}")
    if not p.alpha > 0:
        fail("physics", "alpha", f"must be positive, got {p.alpha}")
    if not strichartz_exponents_ok(p.eps):
        fail("physics", "eps", f"eps={p.eps} violates 10/3 < q(eps) < 4 < q(-eps) < inf")
    if not t.dt > 0:
        fail("time", "dt", f"must be positive, got {t.dt}")
    if not t.T >= 0:
        fail("time", "T", f"must be nonnegative, got {t.T}")
    if t.sample_every < 1:
        fail("time", "sample_every", f"must be >= 1, got {t.sample_every}")
    if t.checkpoint_every < 0:
        fail("time", "checkpoint_every", f"must be >= 0, got {t.checkpoint_every}")
    if t.nonlinearity not in NONLINEARITIES:
        fail("time", "nonlinearity", f"must be one of {NONLINEARITIES}, got {t.nonlinearity!r}")
    if d.family not in FAMILIES:
        fail("data", "family", f"must be one of {FAMILIES}, got {d.family!r}")
    if not d.eps0 > 0:
        fail("data", "eps0", f"must be positive, got {d.eps0}")
    if not d.width > 0:
        fail("data", "width", f"must be positive, got {d.width}")
    if v.count < 1:
        fail("verify", "count", f"must be >= 1, got {v.count}")
    if len(v.cm_offsets) != 2 or v.cm_offsets[0] < 5 or v.cm_offsets[1] < v.cm_offsets[0]:
        fail("verify", "cm_offsets", f"need 'lo, hi' with 5 <= lo <= hi, got {v.cm_offsets}")
    if not cfg.resonance.alphas or min(cfg.resonance.alphas) <= 0:
        fail("resonance", "alphas", f"need positive wave speeds, got {cfg.resonance.alphas}")


def parse_config(text: str) -> RunConfig:
    """Parse and validate configuration text."""
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc).splitlines()[0], line=getattr(exc, "lineno", None)) from None
    lines = _line_index(text)
    parts = {}
    for section in parser.sections():
        if section not in _CLASSES:
            raise ConfigError(f"unknown section [{section}]", line=lines.get((section, None)))
        cls = _CLASSES[section]
        known = {f.name: f for f in fields(cls)}
        kwargs = {}
        for key, raw in parser.items(section):
            line = lines.get((section, key.lower()))
            if key not in known:
                raise ConfigError("unknown key", key=f"{section}.{key}", line=line)
            default = known[key].default
            if section == "grid":
                default = 1.0 if key == "R" else 1
            kwargs[key] = _convert(raw, default, f"{section}.{key}", line)
        for key in _REQUIRED.get(section, ()):
            if key not in kwargs:
                raise ConfigError("missing required key", key=f"{section}.{key}", line=lines.get((section, None)))
        parts[section] = cls(**kwargs)
    if "grid" not in parts:
        raise ConfigError("missing required section [grid]", key="grid.R")
    cfg = RunConfig(**parts)
    _check(cfg, lines)
    return cfg


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
