"""Effective spectral widths of synchrotron radiation polarization components."""

from .exact_spectrum import (
    BetaGamma,
    ChargeConfig,
    TruncationError,
    TruncationWarning,
    harmonic_power,
    harmonic_power_lower,
    harmonic_power_upper,
    harmonic_spectrum,
    partial_contribution,
    partial_contributions,
    total_fraction_exact,
)
from .numerics import (
    Bracket,
    BracketError,
    ConvergenceError,
    DomainError,
    NumericsError,
    Tolerance,
    bessel_j,
    find_root,
    integrate_adaptive,
    macdonald_k,
    maximize_unimodal,
)
from .ultra import Polarization, cumulative_power, spectral_density, total_fraction
from .widths import (
    SummaryRow,
    discrete_effective_width,
    effective_width,
    find_spectrum_maximum,
    half_width,
    harmonic_scaling,
    summary_row,
    summary_table,
)

__version__ = "0.1.0"

__all__ = [
    "BetaGamma",
    "Bracket",
    "BracketError",
    "ChargeConfig",
    "ConvergenceError",
    "DomainError",
    "NumericsError",
    "Polarization",
    "SummaryRow",
    "Tolerance",
    "TruncationError",
    "TruncationWarning",
    "bessel_j",
    "cumulative_power",
    "discrete_effective_width",
    "effective_width",
    "find_root",
    "find_spectrum_maximum",
    "half_width",
    "harmonic_power",
    "harmonic_power_lower",
    "harmonic_power_upper",
    "harmonic_scaling",
    "harmonic_spectrum",
    "integrate_adaptive",
    "macdonald_k",
    "maximize_unimodal",
    "partial_contribution",
    "partial_contributions",
    "spectral_density",
    "summary_row",
    "summary_table",
    "total_fraction",
    "total_fraction_exact",
]
