"""
gemdist: the generalized exponential model family and its relatives.

The density ``c z^m exp(-beta z^n)`` in four variants (symmetric or one-sided,
with or without location/scale), a catalog of named special cases, the
incomplete-gamma machinery behind its distribution function, quantiles and
sampling, change-of-variable transforms, and maximum-likelihood and regression
fitting.
"""

from . import catalog, cdf, errors, estimation, model, serialization, special, transforms
from .catalog import NamedDistribution, to_gem
from .cdf import QuantileRequest, ccdf, cdf as cdf_at, hazard, quantile, sample
from .errors import GemError
from .estimation import FitOptions, FitResult, Sample, fit_gem2_mle, fit_regression
from .model import GemModel, mean, mode, pdf, variance
from .transforms import TransformedDistribution

__version__ = "0.1.0"

__all__ = [
    "catalog", "cdf", "errors", "estimation", "model", "serialization", "special", "transforms",
    "GemModel", "NamedDistribution", "to_gem", "pdf", "cdf_at", "ccdf", "hazard",
    "quantile", "QuantileRequest", "sample", "mean", "variance", "mode",
    "TransformedDistribution", "Sample", "FitOptions", "FitResult",
    "fit_gem2_mle", "fit_regression", "GemError",
]
