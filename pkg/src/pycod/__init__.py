"""Complex orthogonal decomposition of real spatio-temporal signals."""

__version__ = "0.1.0"

from .core import (AnalyticField, CodError, InvalidArgumentError, NumericError,  # noqa: E402
                   SignalField, SpatialGrid, TimeGrid, ValidationReport,
                   trapezoidal_weights, uniform_grid, validate_field)
from .analytic import analytic_field, analytic_series, hilbert_approx_error  # noqa: E402
from .decompose import (CodMode, CodResult, GramSummary, amplitude_estimate, cod,  # noqa: E402
                        modal_energy_fractions, psd_energy_check, reconstruct,
                        reconstruct_real, travelling_index)
from .spectrum import SpectrumSeries, coefficient_spectrum, point_spectrum  # noqa: E402


def decompose(field: SignalField) -> CodResult:
    """Analytic signal followed by :func:`cod`."""
    return cod(analytic_field(field))


__all__ = [
    "AnalyticField", "CodError", "CodMode", "CodResult", "GramSummary",
    "InvalidArgumentError", "NumericError", "SignalField", "SpatialGrid",
    "SpectrumSeries", "TimeGrid", "ValidationReport", "amplitude_estimate",
    "analytic_field", "analytic_series", "cod", "coefficient_spectrum", "decompose",
    "hilbert_approx_error", "modal_energy_fractions", "point_spectrum",
    "psd_energy_check", "reconstruct", "reconstruct_real", "trapezoidal_weights",
    "travelling_index", "uniform_grid", "validate_field",
]
