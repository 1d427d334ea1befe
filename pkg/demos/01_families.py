"""
One density, many distributions
================================

Every law in the catalog is a member of the density

    f(x) = c z^m exp(-beta z^n),   z = |x|, x, |x - a|/b or (x - a)/b,

so one set of routines gives densities, distribution functions, quantiles and
moments for all of them.
"""

# %%
# A catalog name maps to family parameters.
import math

import numpy as np
from scipy import stats

import gemdist as gd
from gemdist.catalog import NAMES, analytic_mean

for name in ("gamma", "weibull", "maxwell", "normal"):
    print(name, "->", gd.to_gem(name, {"gamma": {"p": 3.0, "lambda": 2.0},
                                       "weibull": {"a": 1.0, "b": 2.5},
                                       "maxwell": {},
                                       "normal": {"mu": 1.0, "sigma": 2.0}}[name]))
print(len(NAMES), "catalog names")

# %%
# The family routines agree with scipy.stats to rounding.
mdl = gd.to_gem("gamma", {"p": 3.0, "lambda": 2.0})
x = np.linspace(0.1, 5.0, 6)
print("pdf  max rel diff:", np.max(np.abs(gd.pdf(mdl, x) / stats.gamma(3, scale=0.5).pdf(x) - 1)))
print("cdf  max rel diff:", np.max(np.abs(gd.cdf_at(mdl, x) / stats.gamma(3, scale=0.5).cdf(x) - 1)))

# %%
# Moments come from gamma-function ratios, so they are exact in closed form.
mx = gd.to_gem("maxwell")
print("Maxwell mean:", gd.mean(mx), "expected", analytic_mean("maxwell"), 2 * math.sqrt(2 / math.pi))
print("Maxwell variance:", gd.variance(mx), "expected", (3 * math.pi - 8) / math.pi)

# %%
# Symmetric members with m > 0 are bimodal; the mode finder returns both peaks.
bimodal = gd.GemModel("III", 2, 2, 0.5, a=5.0, b=10.0)
print("modes:", gd.mode(bimodal))

# %%
# Quantiles invert the distribution function; sampling uses them directly.
print("exponential(2) median:", gd.quantile(gd.to_gem("exponential", {"lambda": 2.0}), 0.5),
      "=", math.log(2) / 2)
draws = gd.sample(mdl, 5000, seed=1)
print("sample mean", draws.mean(), "vs", gd.mean(mdl))
