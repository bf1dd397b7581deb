"""Binary checkpoints and plain-text time-series export.

Checkpoint layout (all little-endian)::

    offset  size  field
    0       4     magic b"ZKRD"
    4       4     format version (uint32)
    8       8     N (uint64)
    16      8     R (float64)
    24      8     alpha (float64)
    32      8     t (float64)
    40      4     endianness tag 0x01020304 (uint32)
    44      8N    Re u_hat
            8N    Im u_hat
            8N    Re N_hat
            8N    Im N_hat
"""

from __future__ import annotations

import csv
import json
import math
import os
import struct

import numpy as np

from .errors import BadMagicError, CheckpointError, InvalidParameterError, TruncatedFileError, VersionMismatchError
from .radial_spectral import RadialGrid, spectral
from .solver import SimState, TimeSeries, diagnostics

MAGIC = b"ZKRD"
VERSION = 1
ENDIAN_TAG = 0x01020304
_HEADER = struct.Struct("<4sIQdddI")


def save_checkpoint(state: SimState, path) -> None:
    """Write ``state`` to ``path`` (bit-exact, see module docstring for the layout)."""
    g = state.grid
    header = _HEADER.pack(MAGIC, VERSION, g.N, g.R, state.alpha, state.t, ENDIAN_TAG)
    u = np.asarray(state.u_hat.values, dtype=np.complex128)
    n = np.asarray(state.N_hat.values, dtype=np.complex128)
    body = np.concatenate([u.real, u.imag, n.real, n.imag]).astype("<f8")
    tmp = f"{path}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(header)
        fh.write(body.tobytes())
    os.replace(tmp, path)


def load_checkpoint(path) -> SimState:
    """Read a checkpoint written by :func:`save_checkpoint`."""
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagicError(f"{path}: not a checkpoint (bad magic {data[:4]!r})")
    if len(data) < _HEADER.size:
        raise TruncatedFileError(f"{path}: header truncated ({len(data)} bytes)")
    _, version, N, R, alpha, t, tag = _HEADER.unpack_from(data)
    if version != VERSION:
        raise VersionMismatchError(f"{path}: format version {version}, expected {VERSION}")
    if tag != ENDIAN_TAG:
        raise CheckpointError(f"{path}: bad endianness tag {tag:#x}")
    need = _HEADER.size + 4 * 8 * N
    if len(data) < need:
        raise TruncatedFileError(f"{path}: expected {need} bytes, found {len(data)}")
    arr = np.frombuffer(data, dtype="<f8", count=4 * N, offset=_HEADER.size).astype(np.float64)
    ur, ui, nr, ni = arr.reshape(4, N)
    grid = RadialGrid(R, int(N))
    return SimState(t, spectral(grid, ur + 1j * ui), spectral(grid, nr + 1j * ni), alpha)


def _fmt(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return f"{x:.17g}"


def timeseries_table(series: TimeSeries, norms: dict | None = None) -> dict:
    """Columns ``t, mass, energy, tail_mass`` plus one column per entry of ``norms``.

    ``norms`` maps a column name to a callable ``SimState -> float``.
    """
    if len(series) == 0:
        raise InvalidParameterError("cannot export an empty time series")
    diags = series.diagnostics
    if not all(k in diags for k in ("mass", "energy", "tail_mass")):
        rows = [diagnostics(s) for s in series.states()]
        diags = {k: np.array([r[k] for r in rows]) for k in rows[0]}
    table = {"t": np.asarray(series.times, dtype=float)}
    for key in ("mass", "energy", "tail_mass"):
        table[key] = np.asarray(diags[key], dtype=float)
    for name, fn in (norms or {}).items():
        table[name] = np.array([fn(s) for s in series.states()], dtype=float)
    return table


def export_timeseries(series: TimeSeries, fmt: str, path, norms: dict | None = None) -> None:
    """Write one row (csv) or record (jsonl) per sample at 17 significant digits."""
    if fmt not in ("csv", "jsonl"):
        raise InvalidParameterError(f"unknown export format {fmt!r}")
    table = timeseries_table(series, norms)
    cols = list(table)
    n = len(table["t"])
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            if fmt == "csv":
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(cols)
                for i in range(n):
                    w.writerow([_fmt(table[c][i]) for c in cols])
            else:
                for i in range(n):
                    fh.write("{" + ", ".join(f"{json.dumps(c)}: {_fmt(table[c][i])}" for c in cols) + "}\n")
    except OSError as exc:
        raise OSError(f"cannot write time series to {path}: {exc.strerror}") from exc


def read_timeseries_csv(path) -> dict:
    """Columns of a csv written by :func:`export_timeseries`."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    return {c: np.array([float(r[i]) for r in body]) for i, c in enumerate(header)}


def read_timeseries_jsonl(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        recs = [json.loads(line) for line in fh if line.strip()]
    return {c: np.array([r[c] for r in recs], dtype=float) for c in recs[0]}


def write_json(obj, path) -> None:
    """Deterministic JSON (sorted keys, fixed indentation, trailing newline)."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_plain(obj), fh, indent=2, sort_keys=True, allow_nan=True)
        fh.write("\n")


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj
