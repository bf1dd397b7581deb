"""Numerical companion for small-data scattering of the radial 3D Zakharov system.

Modules
-------
radial_spectral    radial grids, the sine-transform Fourier pair and linear propagators
littlewood_paley   dyadic cutoffs, projectors, Besov and Sobolev norms
interactions       frequency-interaction splits and the normal-form bilinear operators
solver             first-order reduction and the split-step integrator
diagnostics        scattering, Strichartz and Duhamel-residual diagnostics
estimates          randomized checks of the bilinear, boundary and cubic estimates
config, persistence, cli
                   run configuration, checkpoints, exports and the command line
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BadMagicError,
    CheckpointError,
    ConfigError,
    ContractError,
    DivergenceError,
    DomainError,
    InvalidParameterError,
    SingularMultiplierError,
    TruncatedFileError,
    VersionMismatchError,
)
from .radial_spectral import RadialField, RadialGrid, make_grid  # noqa: E402
