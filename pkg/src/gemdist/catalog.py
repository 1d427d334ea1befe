"""
Catalog of classical distributions and their places in the family.

Each entry records the parameter names and ranges, the map into a
:class:`~gemdist.model.GemModel`, an independent closed-form density, and
(where one exists) closed-form raw moments.  The closed forms are written out
directly in the distribution's own parameters so that they can serve as an
oracle for the generic code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .errors import DomainError, RangeViolation, UnsupportedMapping
from .model import GemModel, pdf as gem_pdf

__all__ = [
    "NAMES",
    "NamedDistribution",
    "CatalogEntry",
    "CATALOG",
    "to_gem",
    "classical_pdf",
    "catalog_pdf",
    "analytic_moments",
    "analytic_mean",
    "analytic_variance",
    "has_moment_table",
    "ReductionReport",
    "reduction_check",
    "transformed_gamma_cdf_dlambda",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _pos(v):
    return v > 0.0


def _any(v):
    return math.isfinite(v)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: tuple[str, ...]
    ranges: Mapping[str, Callable[[float], bool]]
    variant: str
    in_moment_table: bool
    description: str = ""


_ENTRIES = [
    CatalogEntry("normal_std", (), {}, "I", True, "standard normal"),
    CatalogEntry("error_fn", ("h",), {"h": _pos}, "I", True, "h/sqrt(pi) exp(-h^2 x^2)"),
    CatalogEntry("exponential", ("lambda",), {"lambda": _pos}, "II", True),
    CatalogEntry("gamma", ("p", "lambda"), {"p": _pos, "lambda": _pos}, "II", True),
    CatalogEntry("weibull", ("a", "b"), {"a": _pos, "b": _pos}, "II", True,
                 "a b x^(b-1) exp(-a x^b)"),
    CatalogEntry("chi_square", ("nu",), {"nu": _pos}, "II", True),
    CatalogEntry("rayleigh", ("sigma",), {"sigma": _pos}, "II", True),
    CatalogEntry("maxwell", (), {}, "II", True, "sqrt(2/pi) x^2 exp(-x^2/2)"),
    CatalogEntry("nakagami", ("mu", "omega"), {"mu": _pos, "omega": _pos}, "II", False),
    CatalogEntry("generalized_gamma", ("a", "d", "p"),
                 {"a": _pos, "d": _pos, "p": _pos}, "II", False,
                 "x^(d-1) / (a^d G(d/p)) exp(-(x/a)^p), with leading factor p"),
    CatalogEntry("transformed_gamma", ("lambda", "alpha", "r"),
                 {"lambda": _pos, "alpha": _pos, "r": _pos}, "II", False),
    CatalogEntry("normal", ("mu", "sigma"), {"mu": _any, "sigma": _pos}, "III", True),
    CatalogEntry("lognormal", ("mu", "sigma"), {"mu": _any, "sigma": _pos}, "III", False,
                 "exp of a normal(mu, sigma) variable; no direct parameter map"),
    CatalogEntry("laplace", ("a", "b"), {"a": _any, "b": _pos}, "III", True),
    CatalogEntry("exponential_2p", ("lambda", "gamma"),
                 {"lambda": _pos, "gamma": _pos}, "IV", False),
    CatalogEntry("gamma_3p", ("lambda", "p", "gamma"),
                 {"lambda": _pos, "p": _pos, "gamma": _pos}, "IV", False),
    CatalogEntry("weibull_3p", ("a", "b", "gamma"),
                 {"a": _pos, "b": _pos, "gamma": _any}, "IV", False),
    CatalogEntry("pearson_iii", ("a", "b", "p"), {"a": _any, "b": _pos, "p": _pos}, "IV", True),
]

CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}
NAMES: tuple[str, ...] = tuple(CATALOG)


@dataclass(frozen=True)
class NamedDistribution:
    """A catalog name with its parameter values (checked against the entry's ranges)."""

    name: str
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in CATALOG:
            raise DomainError(f"unknown distribution {self.name!r}; known: {', '.join(NAMES)}")
        entry = CATALOG[self.name]
        given = dict(self.params)
        extra = set(given) - set(entry.params)
        missing = set(entry.params) - set(given)
        if extra:
            raise DomainError(f"{self.name}: unknown parameter(s) {sorted(extra)}")
        if missing:
            raise DomainError(f"{self.name}: missing parameter(s) {sorted(missing)}")
        clean = {}
        for k in entry.params:
            v = float(given[k])
            if not entry.ranges[k](v):
                raise RangeViolation(f"{self.name}: parameter {k}={v} out of range")
            clean[k] = v
        object.__setattr__(self, "params", clean)

    def __getitem__(self, key):
        return self.params[key]


def _coerce(dist, params=None) -> NamedDistribution:
    if isinstance(dist, NamedDistribution):
        return dist
    return NamedDistribution(dist, params or {})


def has_moment_table(dist) -> bool:
    name = dist.name if isinstance(dist, NamedDistribution) else dist
    return CATALOG[name].in_moment_table


# ---------------------------------------------------------------------------
# parameter maps
# ---------------------------------------------------------------------------

def to_gem(dist, params: Mapping[str, float] | None = None) -> GemModel:
    """Family member equal in law to the named distribution.

    ``lognormal`` raises :class:`UnsupportedMapping`: it is the exponential of
    a ``normal`` variable and is reached through
    :func:`gemdist.transforms.log_model_pdf` instead.
    """
    d = _coerce(dist, params)
    p = d.params
    name = d.name
    if name == "normal_std":
        return GemModel("I", 0, 2, 0.5)
    if name == "error_fn":
        return GemModel("I", 0, 2, p["h"] ** 2)
    if name == "exponential":
        return GemModel("II", 0.0, 1.0, p["lambda"])
    if name == "gamma":
        return GemModel("II", p["p"] - 1.0, 1.0, p["lambda"])
    if name == "weibull":
        return GemModel("II", p["b"] - 1.0, p["b"], p["a"])
    if name == "chi_square":
        return GemModel("II", p["nu"] / 2.0 - 1.0, 1.0, 0.5)
    if name == "rayleigh":
        return GemModel("II", 1.0, 2.0, 1.0 / (2.0 * p["sigma"] ** 2))
    if name == "maxwell":
        return GemModel("II", 2.0, 2.0, 0.5)
    if name == "nakagami":
        return GemModel("II", 2.0 * p["mu"] - 1.0, 2.0, p["mu"] / p["omega"])
    if name == "generalized_gamma":
        return GemModel("II", p["d"] - 1.0, p["p"], p["a"] ** (-p["p"]))
    if name == "transformed_gamma":
        return GemModel("II", p["alpha"] * p["r"] - 1.0, p["alpha"], p["lambda"] ** p["alpha"])
    if name == "normal":
        return GemModel("III", 0, 2, 0.5, a=p["mu"], b=p["sigma"])
    if name == "lognormal":
        raise UnsupportedMapping(
            "lognormal has no direct parameter map; it is the log-model of "
            "normal(mu, sigma), see gemdist.transforms.log_model_pdf"
        )
    if name == "laplace":
        # n = 1 is not an even/odd rational, but the kernel is |z|, which is even
        return GemModel("III", 0, 1, 1.0, a=p["a"], b=p["b"], abs_form=True)
    if name == "exponential_2p":
        return GemModel("IV", 0.0, 1.0, p["lambda"], a=p["gamma"], b=1.0)
    if name == "gamma_3p":
        return GemModel("IV", p["p"] - 1.0, 1.0, p["lambda"], a=p["gamma"], b=1.0)
    if name == "weibull_3p":
        return GemModel("IV", p["b"] - 1.0, p["b"], p["a"], a=p["gamma"], b=1.0)
    if name == "pearson_iii":
        return GemModel("IV", p["p"] - 1.0, 1.0, 1.0, a=p["a"], b=p["b"])
    raise AssertionError(name)  # pragma: no cover


def lognormal_source(mu: float, sigma: float) -> GemModel:
    """The normal member whose exponential is lognormal(mu, sigma)."""
    return to_gem("normal", {"mu": mu, "sigma": sigma})


# ---------------------------------------------------------------------------
# independent closed-form densities
# ---------------------------------------------------------------------------

def _classical_scalar(d: NamedDistribution, x: float) -> float:
    p = d.params
    name = d.name
    if name == "normal_std":
        return math.exp(-0.5 * x * x) / _SQRT_2PI
    if name == "error_fn":
        h = p["h"]
        return h / math.sqrt(math.pi) * math.exp(-h * h * x * x)
    if name == "normal":
        u = (x - p["mu"]) / p["sigma"]
        return math.exp(-0.5 * u * u) / (p["sigma"] * _SQRT_2PI)
    if name == "laplace":
        return math.exp(-abs(x - p["a"]) / p["b"]) / (2.0 * p["b"])

    # one-sided rows: shift to the origin first
    shift = {"exponential_2p": "gamma", "gamma_3p": "gamma", "weibull_3p": "gamma",
             "pearson_iii": "a"}.get(name)
    y = x - p[shift] if shift else x
    if name == "lognormal":
        if x <= 0.0:
            return 0.0
        u = (math.log(x) - p["mu"]) / p["sigma"]
        return math.exp(-0.5 * u * u) / (x * p["sigma"] * _SQRT_2PI)
    if y < 0.0:
        return 0.0
    if name in ("exponential", "exponential_2p"):
        lam = p["lambda"]
        return lam * math.exp(-lam * y)
    if name in ("gamma", "gamma_3p"):
        lam, sh = p["lambda"], p["p"]
        return lam ** sh / math.gamma(sh) * y ** (sh - 1.0) * math.exp(-lam * y)
    if name in ("weibull", "weibull_3p"):
        a, b = p["a"], p["b"]
        return a * b * y ** (b - 1.0) * math.exp(-a * y ** b)
    if name == "chi_square":
        nu = p["nu"]
        return y ** (nu / 2.0 - 1.0) / (math.gamma(nu / 2.0) * 2.0 ** (nu / 2.0)) * math.exp(-y / 2.0)
    if name == "rayleigh":
        s2 = p["sigma"] ** 2
        return y * math.exp(-y * y / (2.0 * s2)) / s2
    if name == "maxwell":
        return math.sqrt(2.0 / math.pi) * y * y * math.exp(-0.5 * y * y)
    if name == "nakagami":
        mu, om = p["mu"], p["omega"]
        return 2.0 * (mu / om) ** mu / math.gamma(mu) * y ** (2.0 * mu - 1.0) * math.exp(-mu / om * y * y)
    if name == "generalized_gamma":
        a, dd, pp = p["a"], p["d"], p["p"]
        return pp * y ** (dd - 1.0) / (a ** dd * math.gamma(dd / pp)) * math.exp(-((y / a) ** pp))
    if name == "transformed_gamma":
        lam, al, r = p["lambda"], p["alpha"], p["r"]
        return al * lam / math.gamma(r) * (lam * y) ** (al * r - 1.0) * math.exp(-((lam * y) ** al))
    if name == "pearson_iii":
        # exponential exponent is 1 (n = 1 member)
        b, sh = p["b"], p["p"]
        u = y / b
        return u ** (sh - 1.0) * math.exp(-u) / (b * math.gamma(sh))
    raise AssertionError(name)  # pragma: no cover


def classical_pdf(dist, x, params: Mapping[str, float] | None = None):
    """Textbook density of the named distribution, evaluated independently of the family code."""
    d = _coerce(dist, params)
    if np.ndim(x) == 0:
        return _classical_scalar(d, float(x))
    xs = np.asarray(x, dtype=float)
    return np.array([_classical_scalar(d, float(v)) for v in xs.ravel()]).reshape(xs.shape)


def catalog_pdf(dist, x, params: Mapping[str, float] | None = None):
    """Density computed by the family code (log-model route for lognormal)."""
    d = _coerce(dist, params)
    if d.name == "lognormal":
        from .transforms import log_model_pdf
        return log_model_pdf(lognormal_source(d["mu"], d["sigma"]), x)
    return gem_pdf(to_gem(d), x)


# ---------------------------------------------------------------------------
# closed-form moments
# ---------------------------------------------------------------------------

def _shifted(j, loc, raw):
    """E[(loc + Y)^j] from raw moments of Y."""
    return sum(math.comb(j, k) * loc ** (j - k) * raw(k) for k in range(j + 1))


def analytic_moments(dist, j: int, params: Mapping[str, float] | None = None) -> float:
    """Closed-form ``E[X^j]`` written in the distribution's own parameters."""
    d = _coerce(dist, params)
    if int(j) != j or j < 0:
        raise DomainError("moment order must be a non-negative integer")
    j = int(j)
    p = d.params
    name = d.name
    G = math.gamma
    if j == 0:
        return 1.0
    if name == "normal_std":
        return 0.0 if j % 2 else math.factorial(j) / (2.0 ** (j / 2) * math.factorial(j // 2))
    if name == "error_fn":
        if j % 2:
            return 0.0
        return p["h"] ** (-j) * math.factorial(j) / (2.0 ** j * math.factorial(j // 2))
    if name == "exponential":
        return j * p["lambda"] ** (-j) * G(j)
    if name == "gamma":
        return p["lambda"] ** (-j) * G(p["p"] + j) / G(p["p"])
    if name == "chi_square":
        return 2.0 ** j * G(p["nu"] / 2.0 + j) / G(p["nu"] / 2.0)
    if name == "rayleigh":
        return p["sigma"] ** j * 2.0 ** (j / 2.0) * G(1.0 + j / 2.0)
    if name == "weibull":
        b = p["b"]
        return (j / b) * p["a"] ** (-j / b) * G(j / b)
    if name == "maxwell":
        return 2.0 ** (j / 2.0) * G((j + 3) / 2.0) / (math.sqrt(math.pi) / 2.0)
    if name == "nakagami":
        mu, om = p["mu"], p["omega"]
        return G(mu + j / 2.0) / G(mu) * (om / mu) ** (j / 2.0)
    if name == "generalized_gamma":
        return p["a"] ** j * G((p["d"] + j) / p["p"]) / G(p["d"] / p["p"])
    if name == "transformed_gamma":
        return p["lambda"] ** (-j) * G(p["r"] + j / p["alpha"]) / G(p["r"])
    if name == "normal":
        mu, s2 = p["mu"], p["sigma"] ** 2
        return math.factorial(j) * sum(
            mu ** (j - 2 * k) * (s2 / 2.0) ** k / (math.factorial(k) * math.factorial(j - 2 * k))
            for k in range(j // 2 + 1)
        )
    if name == "lognormal":
        return math.exp(j * p["mu"] + 0.5 * j * j * p["sigma"] ** 2)
    if name == "laplace":
        a, b = p["a"], p["b"]
        return math.factorial(j) * sum(
            a ** (j - 2 * k) * b ** (2 * k) / math.factorial(j - 2 * k) for k in range(j // 2 + 1)
        )
    if name == "pearson_iii":
        a, b, sh = p["a"], p["b"], p["p"]
        return math.factorial(j) / G(sh) * sum(
            a ** (j - k) * b ** k * G(sh + k) / (math.factorial(k) * math.factorial(j - k))
            for k in range(j + 1)
        )
    if name == "exponential_2p":
        lam = p["lambda"]
        return _shifted(j, p["gamma"], lambda k: math.factorial(k) / lam ** k)
    if name == "gamma_3p":
        lam, sh = p["lambda"], p["p"]
        return _shifted(j, p["gamma"], lambda k: G(sh + k) / (G(sh) * lam ** k))
    if name == "weibull_3p":
        a, b = p["a"], p["b"]
        return _shifted(j, p["gamma"], lambda k: a ** (-k / b) * G(1.0 + k / b))
    raise AssertionError(name)  # pragma: no cover


def analytic_mean(dist, params: Mapping[str, float] | None = None) -> float:
    """Closed-form mean."""
    d = _coerce(dist, params)
    p = d.params
    G = math.gamma
    table = {
        "normal_std": lambda: 0.0,
        "error_fn": lambda: 0.0,
        "exponential": lambda: 1.0 / p["lambda"],
        "gamma": lambda: p["p"] / p["lambda"],
        "chi_square": lambda: p["nu"],
        "rayleigh": lambda: p["sigma"] * math.sqrt(math.pi / 2.0),
        "weibull": lambda: (1.0 / p["b"]) * p["a"] ** (-1.0 / p["b"]) * G(1.0 / p["b"]),
        "maxwell": lambda: 2.0 * math.sqrt(2.0 / math.pi),
        "normal": lambda: p["mu"],
        "laplace": lambda: p["a"],
        "pearson_iii": lambda: p["a"] + p["p"] * p["b"],
    }
    if d.name in table:
        return table[d.name]()
    return analytic_moments(d, 1)


def analytic_variance(dist, params: Mapping[str, float] | None = None) -> float:
    """Closed-form variance."""
    d = _coerce(dist, params)
    p = d.params
    G = math.gamma
    table = {
        "normal_std": lambda: 1.0,
        "error_fn": lambda: 1.0 / (2.0 * p["h"] ** 2),
        "exponential": lambda: 1.0 / p["lambda"] ** 2,
        "gamma": lambda: p["p"] / p["lambda"] ** 2,
        "chi_square": lambda: 2.0 * p["nu"],
        "rayleigh": lambda: (4.0 - math.pi) / 2.0 * p["sigma"] ** 2,
        "weibull": lambda: p["a"] ** (-2.0 / p["b"]) * (
            (2.0 / p["b"]) * G(2.0 / p["b"]) - ((1.0 / p["b"]) * G(1.0 / p["b"])) ** 2),
        "maxwell": lambda: (3.0 * math.pi - 8.0) / math.pi,
        "normal": lambda: p["sigma"] ** 2,
        "laplace": lambda: 2.0 * p["b"] ** 2,
        "pearson_iii": lambda: p["p"] * p["b"] ** 2,
    }
    if d.name in table:
        return table[d.name]()
    m1 = analytic_moments(d, 1)
    return analytic_moments(d, 2) - m1 * m1


# ---------------------------------------------------------------------------
# exponential-gamma reductions in (k, theta) notation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionReport:
    """Pointwise comparison of the scale-shape forms on a grid.

    ``values`` holds each form's density on ``grid``.  ``max_discrepancy`` is
    the largest absolute gap between any form and the exponential reference;
    it is only expected to vanish in the collapse case (k = 1 and unit shapes).
    ``model_discrepancy`` compares each form against the family density under
    its parameter map.
    """

    k: float
    theta: float
    grid: np.ndarray
    values: dict[str, np.ndarray]
    max_discrepancy: float
    model_discrepancy: dict[str, float]


def _form_values(x, k, theta, d, r, g):
    lg = math.lgamma
    with np.errstate(divide="ignore", invalid="ignore"):
        u = x / theta
        forms = {
            "exponential": np.exp(-u) / theta,
            "gamma": u ** k / (x * math.exp(lg(k))) * np.exp(-u),
            "weibull": k * u ** k / x * np.exp(-(u ** k)),
            "generalized_gamma": k * u ** d / (x * math.exp(lg(d / k))) * np.exp(-(u ** k)),
            "transformed_gamma": k * u ** (k * r) / (x * math.exp(lg(r))) * np.exp(-(u ** k)),
            # scale-shape form of a one-sided member with theta^(k-1) in the rate;
            # it is a normalized density only for k = 1 or theta = 1
            "gem_ii": k * (x / theta ** k) ** (k * g) / (x * math.exp(lg(g)))
                      * np.exp(-(theta ** (k - 1.0) * u ** k)),
        }
    return forms


def _form_models(k, theta, d, r, g):
    return {
        "exponential": GemModel("II", 0.0, 1.0, 1.0 / theta),
        "gamma": GemModel("II", k - 1.0, 1.0, 1.0 / theta),
        "weibull": GemModel("II", k - 1.0, k, theta ** (-k)),
        "generalized_gamma": GemModel("II", d - 1.0, k, theta ** (-k)),
        "transformed_gamma": GemModel("II", k * r - 1.0, k, theta ** (-k)),
        "gem_ii": GemModel("II", k * g - 1.0, k, theta ** (k - 1.0) / theta ** k),
    }


def reduction_check(k: float, theta: float = 1.0, d: float = 1.0, r: float = 1.0,
                    gamma_shape: float = 1.0, grid=None) -> ReductionReport:
    """Evaluate the exponential / gamma / Weibull / generalized gamma /
    transformed gamma / one-sided family densities in common ``(k, theta)``
    notation and compare them."""
    if not k > 0 or not theta > 0:
        raise DomainError("k and theta must be positive")
    if grid is None:
        grid = np.linspace(0.05, 10.0, 100)
    x = np.asarray(grid, dtype=float)
    values = _form_values(x, k, theta, d, r, gamma_shape)
    ref = values["exponential"]
    max_disc = max(float(np.max(np.abs(v - ref))) for v in values.values())
    model_disc = {}
    for name, model in _form_models(k, theta, d, r, gamma_shape).items():
        model_disc[name] = float(np.max(np.abs(values[name] - gem_pdf(model, x))))
    return ReductionReport(k, theta, x, values, max_disc, model_disc)


# ---------------------------------------------------------------------------
# worked derivative
# ---------------------------------------------------------------------------

def transformed_gamma_cdf_dlambda(lam: float, alpha: float, r: float, x: float) -> float:
    """``dF/dlambda`` for the transformed gamma with CDF ``P(r, (lambda x)^alpha)``.

    Chain rule through ``t = (lambda x)^alpha``:
    ``alpha x (lambda x)^(alpha r - 1) exp(-(lambda x)^alpha) / G(r)``.
    """
    if x <= 0.0:
        return 0.0
    lx = lam * x
    return math.exp(math.log(alpha * x) + (alpha * r - 1.0) * math.log(lx)
                    - lx ** alpha - math.lgamma(r))
