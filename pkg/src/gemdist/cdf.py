"""
Distribution functions of the family: CDF, survival function, interval
probabilities, parameter gradients of the CDF, quantiles, hazard and
inverse-transform sampling.

With ``t = beta * |z|^n`` and ``z`` the standardized variable:

* II/IV  ``F = P(gamma, t)``,  ``1 - F = Q(gamma, t)``
* I/III  ``F = 1 - Q(gamma, t)/2`` for ``z >= 0`` and ``F = Q(gamma, t)/2`` for ``z < 0``

Both branches of the symmetric case only ever halve a regularized gamma ratio,
so neither tail suffers from cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist

import numpy as np

from .errors import DomainError, NonConvergenceError, UnsupportedVariant
from .model import GemModel, log_pdf, pdf
from .special import (
    DEFAULT_TOLERANCES,
    Tolerances,
    ln_gamma,
    log_reg_upper,
    reg_lower_d_order,
    _reg_pair,
)

__all__ = [
    "QuantileRequest",
    "CdfGradient",
    "cdf",
    "ccdf",
    "interval_cdf",
    "cdf_param_derivatives",
    "quantile",
    "median",
    "hazard",
    "sample",
]


def _t_of(model: GemModel, x: float) -> tuple[float, float]:
    """Return (z, t) for scalar ``x``; ``z`` is signed."""
    z = (x - model.a) / model.b
    return z, model.beta * abs(z) ** model.nf


def _vectorized(fn):
    def wrapper(model, x, *args, **kwargs):
        if np.ndim(x) == 0:
            return fn(model, float(x), *args, **kwargs)
        xs = np.asarray(x, dtype=float)
        out = np.empty(xs.shape)
        for idx, xi in np.ndenumerate(xs):
            out[idx] = fn(model, float(xi), *args, **kwargs)
        return out

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _cdf_pair(model: GemModel, x: float, tol: Tolerances) -> tuple[float, float]:
    """(F, 1 - F) computed without subtracting nearly equal numbers."""
    if math.isnan(x):
        return math.nan, math.nan
    z, t = _t_of(model, x)
    if model.symmetric:
        if math.isinf(x):
            return (1.0, 0.0) if x > 0 else (0.0, 1.0)
        _, q = _reg_pair(model.gamma_param, t, tol)
        half = 0.5 * q
        if z >= 0.0:
            return 1.0 - half, half
        return half, 1.0 - half
    if z <= 0.0:
        return 0.0, 1.0
    return _reg_pair(model.gamma_param, t, tol)


@_vectorized
def cdf(model: GemModel, x, tol: Tolerances = DEFAULT_TOLERANCES):
    """Cumulative distribution function ``P(X <= x)``."""
    return _cdf_pair(model, x, tol)[0]


@_vectorized
def ccdf(model: GemModel, x, tol: Tolerances = DEFAULT_TOLERANCES):
    """Survival (reliability) function ``P(X > x)``."""
    return _cdf_pair(model, x, tol)[1]


def interval_cdf(model: GemModel, u: float, v: float,
                 tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """``P(u < X <= v)`` for ``u <= v``."""
    u, v = float(u), float(v)
    if u > v:
        raise DomainError(f"interval needs u <= v, got ({u}, {v})")
    fu, su = _cdf_pair(model, u, tol)
    fv, sv = _cdf_pair(model, v, tol)
    # difference the smaller tail
    if su < fu:
        return max(su - sv, 0.0)
    return max(fv - fu, 0.0)


# ---------------------------------------------------------------------------
# gradients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CdfGradient:
    """Partial derivatives of ``F(x)`` with respect to the model parameters.

    ``d_a`` and ``d_b`` are ``None`` for variants without location/scale.
    ``d_gamma`` is filled under the ``fixed_gamma`` convention (n and beta move
    with gamma held fixed); ``d_m`` under ``fixed_m`` (gamma follows n).
    """

    d_beta: float
    d_n: float
    d_a: float | None = None
    d_b: float | None = None
    d_gamma: float | None = None
    d_m: float | None = None
    convention: str = "fixed_gamma"


def cdf_param_derivatives(model: GemModel, x: float, convention: str = "fixed_gamma",
                          tol: Tolerances = DEFAULT_TOLERANCES) -> CdfGradient:
    """Gradient of the CDF at ``x``.

    Parameters
    ----------
    convention : {"fixed_gamma", "fixed_m"}
        ``fixed_gamma`` treats ``gamma`` as an independent parameter, so the
        ``n`` derivative only acts through ``t = beta z^n``.  ``fixed_m`` holds
        ``m`` instead and adds ``dP/dgamma * dgamma/dn`` with
        ``dgamma/dn = -gamma/n``.
    """
    if convention not in ("fixed_gamma", "fixed_m"):
        raise ValueError(f"unknown convention {convention!r}")
    x = float(x)
    g, n, beta = model.gamma_param, model.nf, model.beta
    z, t = _t_of(model, x)
    if model.symmetric:
        side = 0.5 * math.copysign(1.0, z) if z != 0.0 else 0.0
    else:
        if z <= 0.0:
            raise DomainError("gradient requested outside the support interior")
        side = 1.0
    loc = model.variant in ("III", "IV")

    if t == 0.0:
        zero = 0.0
        return CdfGradient(zero, zero, -pdf(model, x) if loc else None,
                           zero if loc else None,
                           zero if convention == "fixed_gamma" else None,
                           zero if convention == "fixed_m" else None, convention)

    # dP/dt = t^(g-1) e^-t / G(g)
    dens_t = math.exp((g - 1.0) * math.log(t) - t - ln_gamma(g))
    d_beta = side * dens_t * t / beta
    d_n = side * dens_t * t * math.log(abs(z))
    d_gamma = d_m = None
    dp_dg = side * reg_lower_d_order(g, t, tol)
    if convention == "fixed_gamma":
        d_gamma = dp_dg
    else:
        d_n += dp_dg * (-g / n)
        d_m = dp_dg / n
    d_a = d_b = None
    if loc:
        f = pdf(model, x)
        d_a = -f
        d_b = -z * f
    return CdfGradient(d_beta, d_n, d_a, d_b, d_gamma, d_m, convention)


# ---------------------------------------------------------------------------
# quantiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuantileRequest:
    """Probability level with an optional starting bracket in x."""

    q: float
    bracket: tuple[float, float] | None = None

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise DomainError(f"quantile level must lie in (0, 1), got {self.q!r}")
        if self.bracket is not None:
            lo, hi = self.bracket
            if not lo < hi:
                raise DomainError("bracket must satisfy lo < hi")


def _initial_t(g: float, p: float, upper: bool) -> float:
    """Rough solution of P(g, t) = p (or Q(g, t) = p when ``upper``)."""
    lower_p = 1.0 - p if upper else p
    tail = p if upper else 1.0 - p
    if g > 1.0:
        # Wilson-Hilferty cube-root normal approximation
        zp = -NormalDist().inv_cdf(tail) if tail < 0.5 else NormalDist().inv_cdf(lower_p)
        w = 1.0 / (9.0 * g)
        t = g * (1.0 - w + zp * math.sqrt(w)) ** 3
        return t if t > 0.0 else g * 1e-3
    # small shape: leading term of whichever tail is small
    if 0.0 < lower_p < 0.9:
        return math.exp((math.log(lower_p) + ln_gamma(g + 1.0)) / g)
    return max(-math.log(tail) - ln_gamma(g), 1e-3)


def _solve_t(g: float, p: float, upper: bool, tol: Tolerances,
             lo: float = 0.0, hi: float | None = None) -> float:
    """Solve ``P(g, t) = p`` (``upper=False``) or ``Q(g, t) = p`` (``upper=True``) for t.

    Newton steps are taken in ``ln t`` so the iteration is scale free; a step
    that leaves the current bracket is replaced by bisection.
    """
    def resid(t):
        pp, qq = _reg_pair(g, t, tol)
        return (p - qq) if upper else (pp - p)

    if hi is None or resid(hi) < 0.0:
        hi = max(hi or 0.0, g + 1.0)
        for _ in range(64):
            if resid(hi) >= 0.0:
                break
            lo, hi = hi, hi * 2.0
        else:
            raise NonConvergenceError("could not bracket the quantile", operation="quantile")
    if lo > 0.0 and resid(lo) > 0.0:
        lo = 0.0

    t = _initial_t(g, p, upper)
    if not lo < t < hi:
        t = math.sqrt(lo * hi) if lo > 0.0 else 0.5 * hi
    lgg = ln_gamma(g)
    for _ in range(tol.root_max_iter):
        r = resid(t)
        if r == 0.0:
            return t
        if r > 0.0:
            hi = t
        else:
            lo = t
        # dP/d(ln t) = t^g e^-t / G(g)
        slope = math.exp(g * math.log(t) - t - lgg)
        step = r / slope if slope > 0.0 else math.inf
        if abs(step) < 700.0:
            t_new = t * math.exp(-step)
        else:
            t_new = math.nan
        if not (lo < t_new < hi):
            t_new = math.sqrt(lo * hi) if lo > 0.0 else 0.5 * hi
            step = math.log(t / t_new)
        if abs(step) <= tol.root_tol * 1e-2 or hi - lo <= 4e-16 * hi:
            return t_new
        t = t_new
    raise NonConvergenceError(
        f"quantile iteration did not converge in {tol.root_max_iter} steps (gamma={g}, p={p})",
        operation="quantile",
    )


def _bracket_in_t(model: GemModel, bracket, side: float):
    if bracket is None:
        return 0.0, None
    ts = []
    for xb in bracket:
        z = (float(xb) - model.a) / model.b
        if model.symmetric:
            z = max(side * z, 0.0)
        else:
            z = max(z, 0.0)
        ts.append(model.beta * z ** model.nf)
    lo, hi = sorted(ts)
    return lo, (hi if hi > 0.0 else None)


def quantile(model: GemModel, req, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Inverse CDF.

    ``req`` is a :class:`QuantileRequest` or a bare probability.  Models II/IV
    with ``gamma == 1`` use ``x = a + b (-ln(1-q)/beta)^(1/n)``; everything else
    is solved for ``t`` with a safeguarded Newton iteration (bisection whenever a
    step leaves the current bracket) and mapped back to ``x``.
    """
    if not isinstance(req, QuantileRequest):
        req = QuantileRequest(float(req))
    q = req.q
    g, n, beta = model.gamma_param, model.nf, model.beta
    inv_n = 1.0 / n
    if model.symmetric:
        if q == 0.5:
            return float(model.a)
        side = 1.0 if q > 0.5 else -1.0
        # both halves reduce to Q(g, t) = 2 * (smaller tail)
        tail = 2.0 * (1.0 - q) if q > 0.5 else 2.0 * q
        lo, hi = _bracket_in_t(model, req.bracket, side)
        t = _solve_t(g, tail, True, tol, lo, hi)
        return float(model.a) + side * model.b * (t / beta) ** inv_n
    if abs(g - 1.0) <= 1e-15:
        return float(model.a) + model.b * (-math.log1p(-q) / beta) ** inv_n
    lo, hi = _bracket_in_t(model, req.bracket, 1.0)
    if q <= 0.5:
        t = _solve_t(g, q, False, tol, lo, hi)
    else:
        t = _solve_t(g, 1.0 - q, True, tol, lo, hi)
    return float(model.a) + model.b * (t / beta) ** inv_n


def median(model: GemModel, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    return quantile(model, QuantileRequest(0.5), tol)


# ---------------------------------------------------------------------------
# hazard, sampling
# ---------------------------------------------------------------------------

@_vectorized
def hazard(model: GemModel, t, tol: Tolerances = DEFAULT_TOLERANCES):
    """Failure rate ``f(t) / (1 - F(t))``; one-sided variants only."""
    if model.symmetric:
        raise UnsupportedVariant("hazard is defined only for the one-sided variants II and IV")
    if t < model.a:
        raise DomainError(f"hazard needs t >= {model.a}, got {t}")
    lf = log_pdf(model, t)
    if math.isinf(lf):
        return math.inf if lf > 0 else 0.0
    _, tt = _t_of(model, t)
    if tt == 0.0:
        return math.exp(lf)
    return math.exp(lf - log_reg_upper(model.gamma_param, tt, tol))


def sample(model: GemModel, count: int, seed: int | None = None,
           tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Inverse-transform draws ``quantile(U)`` with ``U`` from ``numpy.random.default_rng(seed)``."""
    if count < 0:
        raise DomainError("count must be >= 0")
    rng = np.random.default_rng(seed)
    u = rng.random(int(count))
    out = np.empty(u.shape)
    for i, ui in enumerate(u):
        if ui == 0.0:
            out[i] = model.support[0] if not model.symmetric else -math.inf
            continue
        out[i] = quantile(model, QuantileRequest(float(ui)), tol)
    return out
