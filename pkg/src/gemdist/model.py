"""
The four-variant generalized exponential family.

Every member has density ``c * g(z)`` with modeling function
``g(z) = z^m exp(-beta z^n)`` and shape ``gamma = (m + 1) / n``:

====  ===============  ======================  ==================
name  support          standardized variable   normalizing c
====  ===============  ======================  ==================
I     (-inf, inf)      z = |x|                 n b^g / (2 G(g))
II    [0, inf)         z = x                   n b^g / G(g)
III   (-inf, inf)      z = |x - a| / b         n b^g / (2 b G(g))
IV    [a, inf)         z = (x - a) / b         n b^g / (b G(g))
====  ===============  ======================  ==================

(``b^g`` is ``beta**gamma`` and ``G`` the gamma function.)  Symmetric
variants need exponents whose rational forms keep ``x^m`` and ``x^n`` even,
i.e. even numerator over odd denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Integral, Real
from typing import Union

import numpy as np

from .errors import (
    DomainError,
    EvenFunctionViolation,
    MomentDoesNotExist,
    RangeViolation,
)
from .special import ln_gamma, reg_upper, reg_lower

__all__ = [
    "Variant",
    "RationalExponent",
    "GemModel",
    "validate",
    "normalizing_constant",
    "log_normalizing_constant",
    "pdf",
    "log_pdf",
    "raw_moment",
    "central_moment",
    "mean",
    "variance",
    "mode",
    "mode_ordinate",
    "skewness",
    "kurtosis",
    "InverseModel",
    "inverse_model_pdf",
]

Exponent = Union[int, float, Fraction]
VARIANTS = ("I", "II", "III", "IV")
SYMMETRIC = ("I", "III")
LOCATION_SCALE = ("III", "IV")

Variant = str


@dataclass(frozen=True)
class RationalExponent:
    """An exponent ``p/q`` in lowest terms with ``q >= 1``."""

    p: int
    q: int = 1

    def __post_init__(self):
        if self.q < 1:
            raise RangeViolation("denominator must be a positive integer")
        if math.gcd(abs(self.p), self.q) != 1:
            raise RangeViolation(f"{self.p}/{self.q} is not in lowest terms")

    @property
    def value(self) -> float:
        return self.p / self.q

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.p, self.q)

    @classmethod
    def from_value(cls, value) -> "RationalExponent":
        """Exact rational form of an int, Fraction, ``"p/q"`` string or integral float."""
        if isinstance(value, RationalExponent):
            return value
        if isinstance(value, bool):
            raise TypeError("boolean is not an exponent")
        if isinstance(value, (Integral, Fraction)):
            f = Fraction(value)
        elif isinstance(value, str):
            f = Fraction(value.strip())
        elif isinstance(value, Real) and float(value).is_integer():
            f = Fraction(int(value))
        else:
            raise EvenFunctionViolation(
                f"exponent {value!r} has no exact rational form; pass an int, "
                "Fraction or 'p/q' string so that its parity can be decided"
            )
        return cls(f.numerator, f.denominator)

    def is_even_over_odd(self) -> bool:
        return self.p % 2 == 0 and self.q % 2 == 1

    def __str__(self):
        return str(self.p) if self.q == 1 else f"{self.p}/{self.q}"


def _as_float(v) -> float:
    if isinstance(v, RationalExponent):
        return v.value
    return float(v)


@dataclass(frozen=True)
class GemModel:
    """A validated member of the family.

    Parameters
    ----------
    variant : {"I", "II", "III", "IV"}
    m : int, Fraction or float
        Power exponent, ``m > -1``.  Must be rational for I/III.
    n : int, Fraction or float
        Exponential exponent, ``n > 0``.  Must be rational for I/III.
    beta : float
        Rate, ``beta > 0``.
    a, b : float
        Location and scale (III/IV only).  For IV, ``a`` is the lower support bound.
    abs_form : bool
        Symmetric variants only.  Declares that the modeling function is written
        with an explicit absolute value, ``|z|^m exp(-beta |z|^n)``, which is
        even for every real exponent; the rational parity rule is then skipped.
    """

    variant: Variant
    m: Exponent
    n: Exponent
    beta: float
    a: float = 0.0
    b: float = 1.0
    abs_form: bool = False
    gamma_param: float = field(init=False, repr=False, compare=False)
    m_rational: RationalExponent | None = field(init=False, repr=False, compare=False)
    n_rational: RationalExponent | None = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        variant = str(self.variant).upper()
        if variant not in VARIANTS:
            raise RangeViolation(f"unknown variant {self.variant!r}")
        object.__setattr__(self, "variant", variant)
        if variant not in LOCATION_SCALE and (self.a != 0.0 or self.b != 1.0):
            raise RangeViolation(f"variant {variant} takes no location/scale")

        m_rat = n_rat = None
        if variant in SYMMETRIC and not self.abs_form:
            m_rat = RationalExponent.from_value(self.m)
            n_rat = RationalExponent.from_value(self.n)
        else:
            for name in ("m", "n"):
                v = getattr(self, name)
                if isinstance(v, (Integral, Fraction)) and not isinstance(v, bool):
                    r = Fraction(v)
                    if name == "m":
                        m_rat = RationalExponent(r.numerator, r.denominator)
                    else:
                        n_rat = RationalExponent(r.numerator, r.denominator)
        object.__setattr__(self, "m_rational", m_rat)
        object.__setattr__(self, "n_rational", n_rat)

        mf, nf = self.mf, self.nf
        for name, v in (("m", mf), ("n", nf), ("beta", self.beta), ("a", self.a), ("b", self.b)):
            if not math.isfinite(float(v)):
                raise RangeViolation(f"{name} must be finite, got {v!r}")
        if not mf > -1.0:
            raise RangeViolation(f"m must exceed -1, got {mf}")
        if not nf > 0.0:
            raise RangeViolation(f"n must be positive, got {nf}")
        if not self.beta > 0.0:
            raise RangeViolation(f"beta must be positive, got {self.beta}")
        if not self.b > 0.0:
            raise RangeViolation(f"b must be positive, got {self.b}")

        if variant in SYMMETRIC and not self.abs_form:
            if not m_rat.is_even_over_odd():
                raise EvenFunctionViolation(
                    f"m = {m_rat} does not give an even function: numerator must be "
                    "even (0 allowed) and denominator odd"
                )
            if not n_rat.is_even_over_odd():
                raise EvenFunctionViolation(
                    f"n = {n_rat} does not give an even function: numerator must be "
                    "even and denominator odd"
                )
        object.__setattr__(self, "gamma_param", (mf + 1.0) / nf)

    # plain float views of the exponents
    @property
    def mf(self) -> float:
        return _as_float(self.m)

    @property
    def nf(self) -> float:
        return _as_float(self.n)

    @property
    def symmetric(self) -> bool:
        return self.variant in SYMMETRIC

    @property
    def center(self) -> float:
        """Point of symmetry (I/III) or lower support bound (II/IV)."""
        return float(self.a)

    @property
    def support(self) -> tuple[float, float]:
        if self.symmetric:
            return (-math.inf, math.inf)
        return (float(self.a), math.inf)

    def standardize(self, x):
        """Map ``x`` to ``(x - a) / b``."""
        return (np.asarray(x, dtype=float) - self.a) / self.b

    def replace(self, **changes) -> "GemModel":
        kw = dict(variant=self.variant, m=self.m, n=self.n, beta=self.beta,
                  a=self.a, b=self.b, abs_form=self.abs_form)
        kw.update(changes)
        return GemModel(**kw)


def validate(candidate) -> GemModel:
    """Return a validated model, re-running every check on ``candidate``.

    Accepts a :class:`GemModel` or a mapping of its constructor arguments.
    """
    if isinstance(candidate, GemModel):
        return candidate.replace()
    return GemModel(**dict(candidate))


# ---------------------------------------------------------------------------
# density
# ---------------------------------------------------------------------------

def log_normalizing_constant(model: GemModel) -> float:
    g = model.gamma_param
    out = math.log(model.nf) + g * math.log(model.beta) - ln_gamma(g) - math.log(model.b)
    if model.symmetric:
        out -= math.log(2.0)
    return out


def normalizing_constant(model: GemModel) -> float:
    """Constant ``c`` making ``c * g`` a density on the model's support."""
    return math.exp(log_normalizing_constant(model))


def _scalar_or_array(values, like):
    if np.ndim(like) == 0:
        return float(values)
    return values


def log_pdf(model: GemModel, x):
    """Natural log of the density; ``-inf`` off support, ``+inf`` at an integrable pole."""
    x_arr = np.asarray(x, dtype=float)
    z = model.standardize(x_arr)
    if model.symmetric:
        z = np.abs(z)
    m, n, beta = model.mf, model.nf, model.beta
    out = np.full(z.shape, -np.inf)
    inside = z > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        zi = z[inside]
        out[inside] = log_normalizing_constant(model) + m * np.log(zi) - beta * zi ** n
    at_edge = z == 0
    if np.any(at_edge):
        if m == 0.0:
            out[at_edge] = log_normalizing_constant(model)
        elif m < 0.0:
            out[at_edge] = np.inf
    out[np.isnan(x_arr)] = np.nan
    return _scalar_or_array(out, x)


def pdf(model: GemModel, x):
    """Density at ``x``.  Zero off support, ``+inf`` at the edge when ``m < 0``."""
    with np.errstate(over="ignore"):
        out = np.exp(np.asarray(log_pdf(model, x)))
    return _scalar_or_array(out, x)


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------

def _gamma_ratio(model: GemModel, k: float) -> float:
    """``E[Z^k]`` for the standardized one-sided variable: beta^(-k/n) G(g + k/n) / G(g)."""
    g, n = model.gamma_param, model.nf
    arg = g + k / n
    if arg <= 0.0:
        raise MomentDoesNotExist(f"gamma argument {arg} <= 0 for order {k}")
    return math.exp(-k / n * math.log(model.beta) + ln_gamma(arg) - ln_gamma(g))


def _standard_raw_moment(model: GemModel, j: int) -> float:
    """``E[Z^j]`` with ``Z = (X - a)/b`` (signed for symmetric variants)."""
    if j == 0:
        return 1.0
    if model.symmetric and j % 2 == 1:
        return 0.0
    return _gamma_ratio(model, j)


def _check_order(j):
    if isinstance(j, bool) or int(j) != j or j < 0:
        raise DomainError(f"moment order must be a non-negative integer, got {j!r}")
    return int(j)


def raw_moment(model: GemModel, j: int) -> float:
    """``E[X^j]`` about the origin."""
    j = _check_order(j)
    if model.variant == "I" and j % 2 == 1:
        return 0.0
    if model.variant in ("I", "II"):
        return _standard_raw_moment(model, j)
    a, b = float(model.a), float(model.b)
    total = 0.0
    for k in range(j + 1):
        ez = _standard_raw_moment(model, k)
        if ez == 0.0:
            continue
        total += math.comb(j, k) * a ** (j - k) * b ** k * ez
    return total


def mean(model: GemModel) -> float:
    if model.symmetric:
        return float(model.a)
    return float(model.a) + model.b * _gamma_ratio(model, 1)


def central_moment(model: GemModel, j: int) -> float:
    """``E[(X - mu)^j]``."""
    j = _check_order(j)
    if j == 0:
        return 1.0
    if j == 1:
        return 0.0
    scale = model.b ** j
    if model.symmetric:
        return scale * _standard_raw_moment(model, j)
    mu = _gamma_ratio(model, 1)
    total = 0.0
    for k in range(j + 1):
        total += math.comb(j, k) * (-mu) ** (j - k) * _standard_raw_moment(model, k)
    return scale * total


def variance(model: GemModel) -> float:
    b2 = model.b * model.b
    if model.symmetric:
        return b2 * _gamma_ratio(model, 2)
    r1 = _gamma_ratio(model, 1)
    r2 = _gamma_ratio(model, 2)
    return b2 * (r2 - r1 * r1)


def _mode_offset(model: GemModel) -> float:
    m = model.mf
    if m <= 0.0:
        return 0.0
    return (m / (model.nf * model.beta)) ** (1.0 / model.nf)


def mode(model: GemModel) -> tuple[float, ...]:
    """Mode(s), ascending.

    Symmetric variants with ``m > 0`` are bimodal and return both points.  When
    ``m <= 0`` the mode is the center / support edge (an infinite spike if ``m < 0``).
    """
    d = model.b * _mode_offset(model)
    a = float(model.a)
    if d == 0.0:
        return (a,)
    if model.symmetric:
        return (a - d, a + d)
    return (a + d,)


def mode_ordinate(model: GemModel) -> float:
    """Density height at the mode, ``c * z0^m * exp(-m/n)`` with ``z0`` the standardized mode."""
    m = model.mf
    if m < 0.0:
        return math.inf
    if m == 0.0:
        return normalizing_constant(model)
    z0 = _mode_offset(model)
    return math.exp(log_normalizing_constant(model) + m * math.log(z0) - m / model.nf)


def skewness(model: GemModel) -> float:
    """``E(X - mu)^3 / sigma^3``; exactly zero for symmetric variants."""
    if model.symmetric:
        return 0.0
    g, n = model.gamma_param, model.nf
    lg = ln_gamma(g)
    r1, r2, r3 = (math.exp(ln_gamma(g + k / n) - lg) for k in (1, 2, 3))
    var = r2 - r1 * r1
    return (r3 - 3.0 * r2 * r1 + 2.0 * r1 ** 3) / var ** 1.5


def kurtosis(model: GemModel) -> float:
    """``E(X - mu)^4 / sigma^4`` (not excess)."""
    g, n = model.gamma_param, model.nf
    lg = ln_gamma(g)
    if model.symmetric:
        return math.exp(lg + ln_gamma(g + 4.0 / n) - 2.0 * ln_gamma(g + 2.0 / n))
    r1, r2, r3, r4 = (math.exp(ln_gamma(g + k / n) - lg) for k in (1, 2, 3, 4))
    var = r2 - r1 * r1
    return (r4 - 4.0 * r3 * r1 + 6.0 * r2 * r1 * r1 - 3.0 * r1 ** 4) / (var * var)


# ---------------------------------------------------------------------------
# inverse models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InverseModel:
    """Density ``n beta^z / G(z) * x^-m * exp(-beta / x^n)`` on ``x > 0``, ``z = (m-1)/n``.

    This is the law of ``1/X`` for ``X`` a one-sided family member with power
    exponent ``m - 2`` (so ``z`` is that member's ``gamma``).
    """

    m: float
    n: float
    beta: float
    z: float = field(init=False, repr=False)

    def __post_init__(self):
        if not self.n > 0.0 or not self.beta > 0.0:
            raise RangeViolation("inverse model needs n > 0 and beta > 0")
        z = (float(self.m) - 1.0) / float(self.n)
        if not z > 0.0:
            raise DomainError(f"inverse model needs (m - 1)/n > 0, got {z}")
        object.__setattr__(self, "z", z)

    def log_pdf(self, x):
        x_arr = np.asarray(x, dtype=float)
        out = np.full(x_arr.shape, -np.inf)
        pos = x_arr > 0
        xp = x_arr[pos]
        out[pos] = (math.log(self.n) + self.z * math.log(self.beta) - ln_gamma(self.z)
                    - self.m * np.log(xp) - self.beta / xp ** self.n)
        return _scalar_or_array(out, x)

    def pdf(self, x):
        return _scalar_or_array(np.exp(np.asarray(self.log_pdf(x))), x)

    def cdf(self, x: float) -> float:
        x = float(x)
        if x <= 0.0:
            return 0.0
        return reg_upper(self.z, self.beta / x ** self.n)

    def ccdf(self, x: float) -> float:
        x = float(x)
        if x <= 0.0:
            return 1.0
        return reg_lower(self.z, self.beta / x ** self.n)

    def raw_moment(self, j: int) -> float:
        j = _check_order(j)
        arg = self.z - j / self.n
        if arg <= 0.0:
            raise MomentDoesNotExist(f"inverse-model moment of order {j} diverges")
        return math.exp(j / self.n * math.log(self.beta) + ln_gamma(arg) - ln_gamma(self.z))


def inverse_model_pdf(m: float, n: float, beta: float):
    """Return the inverse-model density as a callable of ``x``."""
    return InverseModel(m, n, beta).pdf
