"""
Fitting: log-likelihood, the three-parameter one-sided maximum-likelihood fit
and least-squares curve fitting of the modeling function.

Maximum likelihood for variant II works in ``(gamma, n, beta)``.  The score
equation in ``beta`` gives ``beta = p gamma / S(n)`` and the one in ``n`` then
gives ``gamma`` in closed form, so everything reduces to one equation ``f(n) = 0``::

    f(n) = psi(gamma) - ln(gamma) - (n/p) sum(ln x) - ln p + ln S(n)
    S(n) = sum(x^n),   T(n) = sum(x^n ln x),   L = sum(ln x)
    gamma(n) = p S / (n (p T - S L))

Both ``f`` and ``gamma(n)`` are unchanged when the data are rescaled, so the
sums are formed on data divided by their geometric mean, which keeps
``x^n`` in range for large ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DegenerateSample, DomainError, NoFit, UnsupportedVariant
from .model import GemModel, log_pdf
from .special import DEFAULT_TOLERANCES, Tolerances, digamma, ln_gamma

__all__ = [
    "Sample",
    "FitOptions",
    "FitResult",
    "log_likelihood",
    "loglik_gnb",
    "score_equations",
    "beta_hat",
    "gamma_hat",
    "profile_f",
    "fit_gem2_mle",
    "profile_grid",
    "RegressionOptions",
    "fit_regression",
    "regression_objective",
    "fit_gem1_grid",
]


@dataclass(frozen=True)
class Sample:
    """Observed values in input order."""

    values: np.ndarray

    def __init__(self, values):
        arr = np.asarray(values, dtype=float).ravel()
        if not np.all(np.isfinite(arr)):
            raise DomainError("sample contains non-finite values")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def p(self) -> int:
        return int(self.values.size)

    def __len__(self):
        return self.p

    @classmethod
    def from_text(cls, text: str) -> "Sample":
        """Parse one value per line, or a single-column CSV with optional header."""
        vals = []
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        for i, ln in enumerate(lines):
            cell = ln.split(",")
            if len(cell) != 1 and any(c.strip() for c in cell[1:]):
                raise DomainError(f"line {i + 1}: expected a single column, got {ln!r}")
            try:
                vals.append(float(cell[0]))
            except ValueError:
                if i == 0:
                    continue  # header
                raise DomainError(f"line {i + 1}: cannot parse {ln!r} as a number") from None
        if not vals:
            raise DomainError("no numeric values found")
        return cls(vals)


def _values(sample) -> np.ndarray:
    if isinstance(sample, Sample):
        return sample.values
    return Sample(sample).values


def _positive(sample) -> np.ndarray:
    x = _values(sample)
    if x.size == 0:
        raise DomainError("empty sample")
    if np.any(x <= 0.0):
        raise DomainError("variant II fitting needs strictly positive data")
    return x


# ---------------------------------------------------------------------------
# likelihood and score
# ---------------------------------------------------------------------------

def log_likelihood(model: GemModel, sample) -> float:
    """``sum(log_pdf(model, x_i))``; ``-inf`` when any point is off support."""
    x = _values(sample)
    if x.size == 0:
        return 0.0
    lp = np.asarray(log_pdf(model, x))
    if np.any(np.isneginf(lp)):
        return -math.inf
    return float(math.fsum(lp))


def loglik_gnb(gamma_param: float, n: float, beta: float, sample) -> float:
    """Variant II log-likelihood in the ``(gamma, n, beta)`` parameterization."""
    x = _positive(sample)
    p = x.size
    lx = np.log(x)
    m = n * gamma_param - 1.0
    return (p * math.log(n) + p * gamma_param * math.log(beta) - p * ln_gamma(gamma_param)
            + m * math.fsum(lx) - beta * math.fsum(x ** n))


def score_equations(gamma_param: float, n: float, beta: float, sample) -> tuple[float, float, float]:
    """Partial derivatives of :func:`loglik_gnb` in gamma, n and beta."""
    x = _positive(sample)
    p = x.size
    lx = np.log(x)
    xn = x ** n
    sum_lx = math.fsum(lx)
    g_a = p * math.log(beta) - p * digamma(gamma_param) + n * sum_lx
    g_b = p / n + gamma_param * sum_lx - beta * math.fsum(xn * lx)
    g_c = p * gamma_param / beta - math.fsum(xn)
    return g_a, g_b, g_c


def _normalized_logs(x: np.ndarray) -> tuple[np.ndarray, float]:
    """``ln x`` centred on its mean, and that mean (log geometric mean)."""
    lx = np.log(x)
    center = math.fsum(lx) / lx.size
    return lx - center, center


def _weights(u: np.ndarray, n: float) -> tuple[np.ndarray, float]:
    """Weights ``exp(n u - M)`` and the shift ``M = max(n u)``."""
    nu = n * u
    shift = float(np.max(nu))
    return np.exp(nu - shift), shift


def gamma_hat(n: float, sample) -> float:
    """Closed-form ``gamma`` solving the ``n`` and ``beta`` score equations at fixed ``n``."""
    if not n > 0.0:
        raise DomainError("n must be positive")
    x = _positive(sample)
    u, _ = _normalized_logs(x)
    if float(np.max(np.abs(u))) <= 1e-13:
        raise DegenerateSample("all observations are equal; the shape is not identifiable")
    w, _ = _weights(u, n)
    num = math.fsum(w)
    den = n * math.fsum(w * u)
    # den >= 0 by Chebyshev's sum inequality since sum(u) = 0
    if not den > 0.0:
        raise DegenerateSample("p*sum(x^n ln x) - sum(x^n) sum(ln x) <= 0")
    return num / den


def beta_hat(gamma_param: float, n: float, sample) -> float:
    """``p gamma / sum(x^n)``."""
    x = _positive(sample)
    u, center = _normalized_logs(x)
    w, shift = _weights(u, n)
    log_s = math.log(math.fsum(w)) + shift + n * center
    return math.exp(math.log(x.size * gamma_param) - log_s)


def profile_f(n: float, sample) -> float:
    """One-variable equation in ``n`` whose root is the maximum-likelihood ``n``."""
    x = _positive(sample)
    p = x.size
    g = gamma_hat(n, x)
    u, _ = _normalized_logs(x)
    w, shift = _weights(u, n)
    log_s_norm = math.log(math.fsum(w)) + shift
    return digamma(g) - math.log(g) - math.log(p) + log_s_norm


# ---------------------------------------------------------------------------
# maximum likelihood fit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FitOptions:
    n0: float = 2.0
    n_max: float = 50.0
    fd_step_rel: float = 1e-5
    max_iter: int = 100
    scan_range: tuple[float, float] = (0.05, 20.0)
    scan_points: int = 400
    grid_gamma: tuple[float, float] = (0.2, 5.0)
    grid_n: tuple[float, float] = (0.2, 5.0)
    grid_size: int = 200
    tol: Tolerances = DEFAULT_TOLERANCES
    force: str | None = None  # "bisection" or "grid" to skip earlier stages


@dataclass(frozen=True)
class FitResult:
    """Outcome of a fit.

    ``trace`` holds ``(n_k, f(n_k))`` for likelihood fits and
    ``(n_k, objective_k)`` for regression.  ``log_likelihood`` is NaN for
    regression fits, which have no likelihood.
    """

    params: GemModel
    log_likelihood: float
    iterations: int
    converged: bool
    trace: tuple[tuple[float, float], ...]
    method: str
    message: str = ""
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        from .serialization import model_to_dict

        return {
            "params": model_to_dict(self.params),
            "gamma": self.params.gamma_param,
            "log_likelihood": self.log_likelihood,
            "iterations": self.iterations,
            "converged": self.converged,
            "method": self.method,
            "message": self.message,
            "trace": [list(t) for t in self.trace],
            **({"extra": self.extra} if self.extra else {}),
        }


def _model_from_profile(n, x):
    g = gamma_hat(n, x)
    b = beta_hat(g, n, x)
    return GemModel("II", n * g - 1.0, n, b)


def _newton(x, opts: FitOptions):
    n = opts.n0
    trace = []
    root_tol = opts.tol.root_tol
    for it in range(1, opts.max_iter + 1):
        fn = profile_f(n, x)
        trace.append((n, fn))
        if abs(fn) <= root_tol:
            return n, it, trace, True
        h = opts.fd_step_rel * n
        dfn = (profile_f(n + h, x) - profile_f(n - h, x)) / (2.0 * h)
        if not math.isfinite(dfn) or dfn == 0.0:
            return n, it, trace, False
        n_new = n - fn / dfn
        if not math.isfinite(n_new) or n_new <= 0.0 or n_new > opts.n_max:
            return n, it, trace, False
        if abs(n_new - n) <= 1e-15 * n:
            # stalled at machine precision
            fn = profile_f(n_new, x)
            trace.append((n_new, fn))
            return n_new, it, trace, abs(fn) <= root_tol
        n = n_new
    return n, opts.max_iter, trace, False


def _bisect(x, lo, hi, flo, opts, trace):
    it = 0
    for it in range(1, 200):
        mid = 0.5 * (lo + hi)
        fm = profile_f(mid, x)
        trace.append((mid, fm))
        if fm == 0.0 or hi - lo <= 4e-16 * mid:
            return mid, fm, it
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return mid, fm, it


def profile_grid(sample, gamma_range=(0.2, 5.0), n_range=(0.2, 5.0), size=200):
    """Profile log-likelihood on a ``size x size`` grid with beta at its optimum.

    Returns ``(gammas, ns, loglik)`` with ``loglik[i, j]`` at ``(gammas[i], ns[j])``.
    """
    x = _positive(sample)
    p = x.size
    lx = np.log(x)
    sum_lx = math.fsum(lx)
    gammas = np.linspace(*gamma_range, size)
    ns = np.linspace(*n_range, size)
    u, center = _normalized_logs(x)
    log_s = np.array([math.log(math.fsum(np.exp(n * u - np.max(n * u)))) + np.max(n * u) + n * center
                      for n in ns])
    lgam = np.array([ln_gamma(g) for g in gammas])
    G = gammas[:, None]
    N = ns[None, :]
    log_beta = np.log(p * G) - log_s[None, :]
    ll = (p * np.log(N) + p * G * log_beta - p * lgam[:, None]
          + (N * G - 1.0) * sum_lx - p * G)
    return gammas, ns, ll


def fit_gem2_mle(sample, options: FitOptions | None = None) -> FitResult:
    """Three-parameter maximum-likelihood fit of variant II.

    Newton's method on :func:`profile_f` from ``n0`` with a central-difference
    derivative.  If it fails (non-finite step, leaves ``(0, n_max]`` or runs out
    of iterations) the equation is bisected on the best sign change of a scan
    over ``scan_range``; if there is none the profile log-likelihood is
    maximized over a ``(gamma, n)`` grid.
    """
    opts = options or FitOptions()
    x = _positive(sample)
    if x.size < 3:
        raise DomainError(f"a three-parameter fit needs at least 3 observations, got {x.size}")
    gamma_hat(1.0, x)  # raises DegenerateSample for constant data

    trace: list = []
    iterations = 0
    if opts.force is None:
        n, iterations, trace, ok = _newton(x, opts)
        if ok:
            model = _model_from_profile(n, x)
            return FitResult(model, log_likelihood(model, x), iterations, True,
                             tuple(trace), "newton")

    if opts.force in (None, "bisection"):
        scan = np.geomspace(*opts.scan_range, opts.scan_points)
        fs = []
        for n in scan:
            try:
                fs.append(profile_f(float(n), x))
            except (DegenerateSample, OverflowError, ValueError):
                fs.append(math.nan)
        fs = np.array(fs)
        best = None
        for i in range(len(scan) - 1):
            f0, f1 = fs[i], fs[i + 1]
            if np.isfinite(f0) and np.isfinite(f1) and (f0 > 0.0) != (f1 > 0.0):
                root, froot, it = _bisect(x, float(scan[i]), float(scan[i + 1]), float(f0), opts, trace)
                iterations += it
                model = _model_from_profile(root, x)
                ll = log_likelihood(model, x)
                if best is None or ll > best[1]:
                    best = (model, ll, froot)
        if best is not None:
            model, ll, froot = best
            return FitResult(model, ll, iterations, abs(froot) <= opts.tol.root_tol,
                             tuple(trace), "bisection",
                             message="Newton iteration failed; bisected a sign change of f(n)")

    gammas, ns, ll = profile_grid(x, opts.grid_gamma, opts.grid_n, opts.grid_size)
    if not np.any(np.isfinite(ll)):
        raise NoFit("Newton, bisection and grid search all failed")
    # argmax returns the first (lowest flat index) maximum: deterministic ties
    k = int(np.nanargmax(ll))
    i, j = divmod(k, ll.shape[1])
    g, n = float(gammas[i]), float(ns[j])
    model = GemModel("II", n * g - 1.0, n, beta_hat(g, n, x))
    return FitResult(model, log_likelihood(model, x), iterations + 1, False, tuple(trace),
                     "grid_fallback", message="no sign change of f(n); grid maximum reported")


# ---------------------------------------------------------------------------
# model I over parity-legal exponents
# ---------------------------------------------------------------------------

def _legal_rationals(max_den: int, lo: float, hi: float, allow_zero: bool):
    out = set()
    for q in range(1, max_den + 1, 2):
        p_lo = math.ceil(lo * q)
        for p in range(p_lo, int(math.floor(hi * q)) + 1):
            if p % 2:
                continue
            if p == 0 and not allow_zero:
                continue
            fr = Fraction(p, q)
            if fr.numerator % 2 == 0 and fr.denominator % 2 == 1 and lo <= fr <= hi:
                out.add(fr)
    return sorted(out)


def fit_gem1_grid(sample, max_den: int = 9, m_range=(0.0, 6.0), n_range=(0.1, 8.0)) -> FitResult:
    """Symmetric variant I fit over exponents ``m, n`` of the form even/odd.

    ``beta`` is profiled out (``beta = p gamma / sum|x|^n``).  Ties go to the
    first candidate in ascending ``(m, n)`` order.
    """
    x = _values(sample)
    if x.size < 3:
        raise DomainError("need at least 3 observations")
    if not np.any(x != 0.0):
        raise DegenerateSample("all observations are zero")
    p = x.size
    ms = _legal_rationals(max_den, *m_range, allow_zero=True)
    ns = _legal_rationals(max_den, *n_range, allow_zero=False)
    best = None
    for m in ms:
        for n in ns:
            g = float((m + 1) / n)
            s = math.fsum(np.abs(x) ** float(n))
            if not s > 0.0:
                continue
            model = GemModel("I", m, n, p * g / s)
            ll = log_likelihood(model, x)
            if best is None or ll > best[1]:
                best = (model, ll)
    if best is None or not math.isfinite(best[1]):
        raise NoFit("no finite likelihood on the parity-legal grid")
    return FitResult(best[0], best[1], len(ms) * len(ns), True, (), "parity_grid")


# ---------------------------------------------------------------------------
# least-squares fit of the modeling function
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegressionOptions:
    """Derivative-free search settings.

    Initialization: ``n = n0``; for variant IV, ``a = min(x) - d0`` with
    ``d0 = 0.1 * (max(x) - min(x))`` (or 1 for a single distinct x).
    """

    n0: float = 1.0
    step0: float = 0.5
    min_step: float = 1e-10
    shrink: float = 0.5
    max_iter: int = 5000
    n_bounds: tuple[float, float] = (1e-3, 50.0)


def _ls_fit(z, ly, n):
    """Linear least squares for ``ln y = ln(alpha) + m ln z - beta z^n``."""
    A = np.column_stack([np.ones_like(z), np.log(z), -(z ** n)])
    coef, *_ = np.linalg.lstsq(A, ly, rcond=None)
    resid = ly - A @ coef
    return coef, float(resid @ resid)


def regression_objective(params: dict, x, y, variant: str = "II") -> float:
    """``sum (ln y - ln g(x))^2`` with ``g = alpha z^m exp(-beta z^n)``."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    z = x - params.get("a", 0.0) if variant == "IV" else x
    lg = math.log(params["alpha"]) + params["m"] * np.log(z) - params["beta"] * z ** params["n"]
    r = np.log(y) - lg
    return float(r @ r)


def fit_regression(pairs, variant: str = "II", options: RegressionOptions | None = None) -> FitResult:
    """Fit ``g(x) = alpha z^m exp(-beta z^n)`` to ``(x, y)`` pairs on the log scale.

    For fixed ``n`` (and ``a`` for IV) the problem is linear in
    ``(ln alpha, m, beta)`` and is solved exactly; the remaining one or two
    coordinates are searched by coordinate descent with shrinking steps
    (``n`` on a log scale, ``a`` through its gap to ``min(x)``).  Only
    improving moves are accepted, so the objective never increases.
    """
    opts = options or RegressionOptions()
    variant = str(variant).upper()
    if variant in ("I", "III"):
        raise UnsupportedVariant("regression fitting is provided for the one-sided variants II and IV")
    if variant not in ("II", "IV"):
        raise DomainError(f"unknown variant {variant!r}")
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DomainError("pairs must be an (N, 2) array of (x, y)")
    x, y = arr[:, 0], arr[:, 1]
    if x.size < 4:
        raise DomainError("need at least 4 pairs for a 4-parameter curve")
    if np.any(y <= 0.0):
        raise DomainError("regression on the log scale needs y > 0")
    ly = np.log(y)
    if variant == "II" and np.any(x <= 0.0):
        raise DomainError("variant II regression needs x > 0")

    xmin = float(np.min(x))
    spread = float(np.max(x) - xmin)
    coords = {"log_n": math.log(opts.n0)}
    steps = {"log_n": opts.step0}
    if variant == "IV":
        coords["log_d"] = math.log(0.1 * spread if spread > 0 else 1.0)
        steps["log_d"] = opts.step0

    lo_n, hi_n = (math.log(b) for b in opts.n_bounds)

    def evaluate(c):
        if not lo_n <= c["log_n"] <= hi_n:
            return math.inf, None
        a = xmin - math.exp(c["log_d"]) if variant == "IV" else 0.0
        z = x - a
        try:
            coef, obj = _ls_fit(z, ly, math.exp(c["log_n"]))
        except (np.linalg.LinAlgError, FloatingPointError, OverflowError):
            return math.inf, None
        if not math.isfinite(obj):
            return math.inf, None
        return obj, (coef, a)

    with np.errstate(over="ignore", invalid="ignore"):
        best_obj, best_aux = evaluate(coords)
        if best_aux is None:
            raise NoFit("objective is not finite at the initial point")
        trace = [(math.exp(coords["log_n"]), best_obj)]
        it = 0
        while it < opts.max_iter and max(steps.values()) > opts.min_step:
            it += 1
            improved = False
            for key in coords:
                for direction in (1.0, -1.0):
                    trial = dict(coords)
                    trial[key] += direction * steps[key]
                    obj, aux = evaluate(trial)
                    if obj < best_obj:
                        coords, best_obj, best_aux = trial, obj, aux
                        steps[key] *= 2.0
                        improved = True
                        break
                else:
                    steps[key] *= opts.shrink
            trace.append((math.exp(coords["log_n"]), best_obj))
            if best_obj == 0.0:
                break
            if not improved and max(steps.values()) <= opts.min_step:
                break
    converged = max(steps.values()) <= opts.min_step or best_obj == 0.0

    (ln_alpha, m, beta), a = (float(c) for c in best_aux[0]), float(best_aux[1])
    n = math.exp(coords["log_n"])
    z_max = float(np.max(x - a))
    if not beta > 0.0 or beta * z_max ** n < 1e-8:
        raise NoFit(f"degenerate fit: exponential factor vanishes (beta = {beta:.3g})")
    if not m > -1.0:
        raise NoFit(f"fitted power exponent m = {m:.3g} is not > -1")
    if variant == "II":
        model = GemModel("II", m, n, beta)
    else:
        model = GemModel("IV", m, n, beta, a=a, b=1.0)
    return FitResult(model, math.nan, it, converged, tuple(trace), "regression",
                     extra={"alpha": math.exp(ln_alpha), "objective": best_obj})
