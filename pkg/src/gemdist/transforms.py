"""
Change-of-variable distributions built on the family.

Power-type transforms act on the non-negative standardized variable

* I:   ``Z = |X|``            II: ``Z = X``
* III: ``Z = |X - a| / b``    IV: ``Z = (X - a) / b``

which in every case is a one-sided member with the same ``(m, n, beta)``.
``Y = (k Z)^c`` then has density ``f_Z(y^(1/c)/k) / (|c| k) * y^(1/c - 1)``.

Log models are the laws of ``Y = exp(X)``: ``g(y) = f(ln y) / y`` and
``G(y) = F(ln y)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .cdf import cdf as model_cdf, ccdf as model_ccdf
from .errors import (
    DomainError,
    MomentDoesNotExist,
    NonConvergenceError,
    RangeViolation,
    UnsupportedCombination,
)
from .model import GemModel, log_pdf as model_log_pdf, raw_moment
from .special import ln_gamma, reg_lower, reg_upper

__all__ = [
    "Linear",
    "Power",
    "ScaledPower",
    "InverseScaledPower",
    "ExpLog",
    "ReverseLog",
    "TransformSpec",
    "spec_from_dict",
    "TransformedDistribution",
    "transform_pdf",
    "transform_cdf",
    "transform_moment",
    "log_model_pdf",
    "log_model_cdf",
    "LogMoment",
    "log_model_moment",
    "lognormal_mode",
    "reverse_log_density",
    "reverse_log_pdf",
    "log_gamma_consul_jain_pdf",
]


# ---------------------------------------------------------------------------
# transform descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Linear:
    """``Y = a + b X``."""

    a: float = 0.0
    b: float = 1.0
    kind = "linear"

    def __post_init__(self):
        if self.b == 0.0 or not math.isfinite(self.b) or not math.isfinite(self.a):
            raise RangeViolation("linear transform needs finite a and b != 0")

    def to_dict(self):
        return {"kind": self.kind, "a": self.a, "b": self.b}


@dataclass(frozen=True)
class ScaledPower:
    """``Y = (k Z)^c`` with ``Z`` the standardized non-negative variable."""

    k: float = 1.0
    c: float = 1.0
    kind = "scaled_power"

    def __post_init__(self):
        if self.c == 0.0 or not math.isfinite(self.c):
            raise RangeViolation("power exponent c must be finite and non-zero")
        if not self.k > 0.0 or not math.isfinite(self.k):
            # (kZ)^c with k < 0 is not real for fractional c
            raise RangeViolation("scale k must be positive")

    @property
    def exponent(self) -> float:
        return self.c

    def to_dict(self):
        return {"kind": self.kind, "k": self.k, "c": self.c}


@dataclass(frozen=True)
class Power(ScaledPower):
    """``Y = Z^c``."""

    kind = "power"

    def __init__(self, c: float):
        super().__init__(1.0, c)

    def to_dict(self):
        return {"kind": self.kind, "c": self.c}


@dataclass(frozen=True)
class InverseScaledPower(ScaledPower):
    """``Y = 1 / (k Z)^c``."""

    kind = "inverse_scaled_power"

    @property
    def exponent(self) -> float:
        return -self.c


@dataclass(frozen=True)
class ExpLog:
    """``Y = exp(X)``: the log model of the source."""

    kind = "exp_log"

    def to_dict(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class ReverseLog:
    """``Y = ln X`` for a one-sided source, optionally relocated.

    With ``u`` left as ``None`` the law is exactly that of ``ln X``.  Passing
    ``u`` replaces the location so that the density reads
    :func:`reverse_log_density` with ``(gamma, 1/n, u)``.
    """

    u: float | None = None
    kind = "reverse_log"

    def to_dict(self):
        out = {"kind": self.kind}
        if self.u is not None:
            out["u"] = self.u
        return out


TransformSpec = Union[Linear, Power, ScaledPower, InverseScaledPower, ExpLog, ReverseLog]

_KINDS = {
    "linear": (Linear, ("a", "b")),
    "power": (Power, ("c",)),
    "scaled_power": (ScaledPower, ("k", "c")),
    "inverse_scaled_power": (InverseScaledPower, ("k", "c")),
    "exp_log": (ExpLog, ()),
    "reverse_log": (ReverseLog, ("u",)),
}


def spec_from_dict(obj) -> TransformSpec:
    """Inverse of ``spec.to_dict()``; unknown keys are rejected."""
    obj = dict(obj)
    kind = obj.pop("kind", None)
    if kind not in _KINDS:
        raise DomainError(f"unknown transform kind {kind!r}")
    cls, fields = _KINDS[kind]
    extra = set(obj) - set(fields)
    if extra:
        raise DomainError(f"transform {kind}: unknown field(s) {sorted(extra)}")
    return cls(**{k: float(v) for k, v in obj.items()})


# ---------------------------------------------------------------------------
# transformed distributions
# ---------------------------------------------------------------------------

def _absorb_linear(model: GemModel, lin: Linear) -> tuple[GemModel, float]:
    """Fold ``a + b X`` into a location-scale member; returns (model, sign).

    ``sign = -1`` means the result is the reflection ``-W`` of the returned
    one-sided model (only possible for II/IV with ``b < 0``).
    """
    b = lin.b
    if model.symmetric or b > 0.0:
        # symmetric laws are invariant under reflection about their center
        new = GemModel("III" if model.symmetric else "IV", model.m, model.n, model.beta,
                       a=lin.a + b * model.a, b=abs(b) * model.b, abs_form=model.abs_form)
        return new, 1.0
    new = GemModel("IV", model.m, model.n, model.beta,
                   a=-(lin.a + b * model.a), b=abs(b) * model.b)
    return new, -1.0


def _one_sided(model: GemModel) -> GemModel:
    """Law of the standardized non-negative variable Z."""
    return GemModel("II", model.mf, model.nf, model.beta)


@dataclass(frozen=True)
class TransformedDistribution:
    """Law of ``spec(source)``; ``specs`` is a single transform or ``(Linear, other)``."""

    source: GemModel
    specs: tuple

    def __init__(self, source: GemModel, spec, *more):
        specs = tuple(spec) if isinstance(spec, (tuple, list)) else (spec,)
        specs = specs + tuple(more)
        if not specs or len(specs) > 2:
            raise UnsupportedCombination("one transform, or Linear followed by one transform")
        if len(specs) == 2 and not isinstance(specs[0], Linear):
            raise UnsupportedCombination("only a Linear transform may be composed with another")
        if len(specs) == 2 and isinstance(specs[1], Linear):
            raise UnsupportedCombination("compose linear maps into a single Linear instead")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "specs", specs)
        base, sign = source, 1.0
        if isinstance(specs[0], Linear):
            base, sign = _absorb_linear(source, specs[0])
        outer = specs[-1] if not (len(specs) == 1 and isinstance(specs[0], Linear)) else None
        if outer is not None and sign < 0.0:
            raise UnsupportedCombination("a reflected one-sided law cannot be transformed further")
        if isinstance(outer, ReverseLog) and base.variant != "II":
            raise UnsupportedCombination("the reverse-log form is defined for variant II sources")
        object.__setattr__(self, "_base", base)
        object.__setattr__(self, "_sign", sign)
        object.__setattr__(self, "_outer", outer)

    @property
    def base(self) -> GemModel:
        return self._base

    @property
    def support(self) -> tuple[float, float]:
        outer = self._outer
        base = self._base
        if outer is None:
            lo, hi = base.support
            return (lo, hi) if self._sign > 0 else (-hi, -lo)
        if isinstance(outer, ScaledPower):
            return (0.0, math.inf)
        if isinstance(outer, ExpLog):
            return (0.0, math.inf) if base.symmetric else (math.exp(base.a), math.inf)
        return (-math.inf, math.inf)

    # -- density -----------------------------------------------------------

    def log_pdf(self, y: float) -> float:
        outer, base = self._outer, self._base
        if outer is None:
            return model_log_pdf(base, self._sign * y)
        if isinstance(outer, ScaledPower):
            if y <= 0.0:
                return -math.inf
            c = outer.exponent
            z = y ** (1.0 / c) / outer.k
            return (model_log_pdf(_one_sided(base), z) - math.log(abs(c)) - math.log(outer.k)
                    + (1.0 / c - 1.0) * math.log(y))
        if isinstance(outer, ExpLog):
            if y <= 0.0:
                return -math.inf
            ly = math.log(y)
            return model_log_pdf(base, ly) - ly
        # reverse log
        g, n = base.gamma_param, base.nf
        u = -math.log(base.beta) if outer.u is None else outer.u
        w = n * y - u
        if w > 709.0:  # exp(w) overflows; the density underflows long before
            return -math.inf
        return w * g - math.exp(w) + math.log(n) - ln_gamma(g)

    def pdf(self, y: float) -> float:
        return math.exp(self.log_pdf(y))

    def cdf(self, y: float) -> float:
        outer, base = self._outer, self._base
        if outer is None:
            if self._sign > 0:
                return float(model_cdf(base, y))
            return float(model_ccdf(base, -y))
        if isinstance(outer, ScaledPower):
            if y <= 0.0:
                return 0.0
            c = outer.exponent
            t = base.beta * (y ** (1.0 / c) / outer.k) ** base.nf
            return reg_lower(base.gamma_param, t) if c > 0 else reg_upper(base.gamma_param, t)
        if isinstance(outer, ExpLog):
            if y <= 0.0:
                return 0.0
            return float(model_cdf(base, math.log(y)))
        g, n = base.gamma_param, base.nf
        u = -math.log(base.beta) if outer.u is None else outer.u
        w = n * y - u
        if w > 709.0:
            return 1.0
        return reg_lower(g, math.exp(w))

    def moment(self, j: int) -> float:
        if int(j) != j or j < 0:
            raise DomainError("moment order must be a non-negative integer")
        j = int(j)
        outer, base = self._outer, self._base
        if outer is None:
            return self._sign ** j * raw_moment(base, j)
        if isinstance(outer, ScaledPower):
            cj = outer.exponent * j
            arg = base.gamma_param + cj / base.nf
            if arg <= 0.0:
                raise MomentDoesNotExist(
                    f"E[Y^{j}] diverges: gamma argument {arg:g} <= 0")
            return math.exp(cj * math.log(outer.k) - cj / base.nf * math.log(base.beta)
                            + ln_gamma(arg) - ln_gamma(base.gamma_param))
        if isinstance(outer, ExpLog):
            return log_model_moment(base, j).value
        # reverse log: moments of ln X via quadrature
        from scipy import integrate
        val, _ = integrate.quad(lambda y: y ** j * self.pdf(y), -np.inf, np.inf, limit=200)
        return val


def _td_vectorize(method):
    def fn(td: TransformedDistribution, y):
        if np.ndim(y) == 0:
            return method(td, float(y))
        ys = np.asarray(y, dtype=float)
        return np.array([method(td, float(v)) for v in ys.ravel()]).reshape(ys.shape)
    return fn


transform_pdf = _td_vectorize(TransformedDistribution.pdf)
transform_pdf.__doc__ = "Density of the transformed variable (zero off support)."
transform_cdf = _td_vectorize(TransformedDistribution.cdf)
transform_cdf.__doc__ = "CDF of the transformed variable."


def transform_moment(td: TransformedDistribution, j: int) -> float:
    """``E[Y^j]``; raises :class:`MomentDoesNotExist` when it diverges."""
    return td.moment(j)


# ---------------------------------------------------------------------------
# log models
# ---------------------------------------------------------------------------

def _log_model_scalar_pdf(model, y):
    if y <= 0.0:
        return 0.0
    ly = math.log(y)
    return math.exp(model_log_pdf(model, ly) - ly)


def log_model_pdf(model: GemModel, y):
    """Density of ``Y = exp(X)``."""
    if np.ndim(y) == 0:
        return _log_model_scalar_pdf(model, float(y))
    ys = np.asarray(y, dtype=float)
    return np.array([_log_model_scalar_pdf(model, float(v)) for v in ys.ravel()]).reshape(ys.shape)


def log_model_cdf(model: GemModel, y):
    """CDF of ``Y = exp(X)``."""
    if np.ndim(y) == 0:
        y = float(y)
        return 0.0 if y <= 0.0 else float(model_cdf(model, math.log(y)))
    ys = np.asarray(y, dtype=float)
    with np.errstate(divide="ignore"):
        ly = np.where(ys > 0, np.log(np.where(ys > 0, ys, 1.0)), -np.inf)
    return np.asarray(model_cdf(model, ly))


@dataclass(frozen=True)
class LogMoment:
    """``E[exp(jX)]`` with a flag telling whether a closed form was used."""

    value: float
    closed_form: bool


def log_model_moment(model: GemModel, j: int) -> LogMoment:
    """``E[Y^j] = E[exp(jX)]`` for the log model of ``model``.

    Closed forms: ``n = 2, m = 0`` symmetric (lognormal) and ``n = 1`` (log
    gamma family).  Otherwise the integral is evaluated numerically.  The
    moment diverges when ``n < 1``, or ``n = 1`` with ``beta <= j b``.
    """
    if int(j) != j or j < 0:
        raise DomainError("moment order must be a non-negative integer")
    j = int(j)
    if j == 0:
        return LogMoment(1.0, True)
    a, b, beta, n, g = float(model.a), float(model.b), model.beta, model.nf, model.gamma_param
    if n < 1.0:
        raise MomentDoesNotExist(f"E[exp({j}X)] diverges for n = {n} < 1")
    if n == 1.0 and beta <= j * b:
        raise MomentDoesNotExist(f"E[exp({j}X)] needs beta > j b ({beta} <= {j * b})")
    if model.symmetric and model.mf == 0.0 and n == 2.0:
        s2 = b * b / (2.0 * beta)
        return LogMoment(math.exp(j * a + 0.5 * j * j * s2), True)
    if n == 1.0:
        up = g * (math.log(beta) - math.log(beta - j * b))
        if model.symmetric:
            down = g * (math.log(beta) - math.log(beta + j * b))
            return LogMoment(math.exp(j * a) * 0.5 * (math.exp(up) + math.exp(down)), True)
        return LogMoment(math.exp(j * a + up), True)
    return LogMoment(_log_moment_quadrature(model, j), False)


def _log_moment_quadrature(model, j):
    from scipy import integrate

    a, b = float(model.a), float(model.b)
    z_model = GemModel("II", model.mf, model.nf, model.beta)

    def integrand(w, sgn):
        lp = model_log_pdf(z_model, w)
        return math.exp(lp + sgn * j * b * w)

    total = 0.0
    err = 0.0
    signs = (1.0, -1.0) if model.symmetric else (1.0,)
    weight = 0.5 if model.symmetric else 1.0
    for sgn in signs:
        v, e = integrate.quad(integrand, 0.0, np.inf, args=(sgn,), limit=400,
                              epsabs=0.0, epsrel=1e-11)
        total += weight * v
        err += weight * e
    if not math.isfinite(total) or err > 1e-7 * max(abs(total), 1.0):
        raise NonConvergenceError("log-moment quadrature failed", operation="log_model_moment")
    return math.exp(j * a) * total


def lognormal_mode(mu: float, sigma: float) -> float:
    """Mode ``exp(mu - sigma^2)`` of the lognormal law."""
    if not sigma > 0.0:
        raise DomainError("sigma must be positive")
    return math.exp(mu - sigma * sigma)


# ---------------------------------------------------------------------------
# reverse-log and Consul-Jain forms
# ---------------------------------------------------------------------------

def reverse_log_density(y, gamma_param: float, n: float, u: float):
    """``exp[g (y - u n)/n - exp((y - u n)/n)] / (n G(g))`` on the real line."""
    if not gamma_param > 0.0 or not n > 0.0:
        raise DomainError("gamma and n must be positive")
    w = (np.asarray(y, dtype=float) - u * n) / n
    with np.errstate(over="ignore"):
        out = np.exp(gamma_param * w - np.exp(w) - math.log(n) - ln_gamma(gamma_param))
    return float(out) if np.ndim(y) == 0 else out


def reverse_log_pdf(model: GemModel, y):
    """Density of ``ln X`` for a variant II source.

    This is :func:`reverse_log_density` with shape ``gamma``, scale ``1/n`` and
    location ``u = -ln beta``.
    """
    if model.variant != "II":
        raise UnsupportedCombination("reverse-log density needs a variant II source")
    return reverse_log_density(y, model.gamma_param, 1.0 / model.nf, -math.log(model.beta))


def log_gamma_consul_jain_pdf(phi: float, gamma_param: float, y):
    """``phi^g / G(g) * y^(phi-1) * (-ln y)^(g-1)`` on ``0 < y < 1``."""
    if not phi > 0.0 or not gamma_param > 0.0:
        raise DomainError("phi and gamma must be positive")
    ys = np.asarray(y, dtype=float)
    if np.any((ys <= 0.0) | (ys >= 1.0)):
        raise DomainError("log-gamma density is defined on 0 < y < 1")
    out = np.exp(gamma_param * math.log(phi) - ln_gamma(gamma_param)
                 + (phi - 1.0) * np.log(ys) + (gamma_param - 1.0) * np.log(-np.log(ys)))
    return float(out) if np.ndim(y) == 0 else out
