"""
Changing variables
==================

Linear maps stay inside the family.  Powers, reciprocals and logarithms of
the standardized variable give new laws whose densities and moments still
come in closed form.
"""

# %%
import numpy as np
from scipy import stats

import gemdist as gd
from gemdist.transforms import (ExpLog, InverseScaledPower, Linear, Power, ReverseLog,
                                TransformedDistribution)
from gemdist.catalog import lognormal_source

gauss = gd.GemModel("I", 0, 2, 0.5)

# %%
# A linear map of a symmetric member is a location-scale member.
td = TransformedDistribution(gauss, Linear(1.0, 2.0))
print(td.base)

# %%
# Squaring a standard normal gives chi-square with one degree of freedom.
sq = TransformedDistribution(gauss, Power(2.0))
y = np.array([0.5, 1.0, 3.0])
print([sq.pdf(v) for v in y], stats.chi2(1).pdf(y))

# %%
# Reciprocal powers give inverted laws with finitely many moments.
inv = TransformedDistribution(gd.GemModel("II", 1.5, 2.0, 0.8), InverseScaledPower(1.0, 1.0))
print("E[1/Z] =", inv.moment(1))
try:
    inv.moment(4)
except gd.GemError as exc:
    print("fourth moment:", exc)

# %%
# Exponentiating a normal gives the lognormal.
ln = TransformedDistribution(lognormal_source(0.3, 0.6), ExpLog())
print(ln.pdf(1.2), stats.lognorm(0.6, scale=np.exp(0.3)).pdf(1.2))

# %%
# The logarithm of a gamma variable is the log-gamma law.
lg = TransformedDistribution(gd.to_gem("gamma", {"p": 2.5, "lambda": 3.0}), ReverseLog())
print(lg.pdf(-1.0), stats.loggamma(2.5, loc=-np.log(3.0)).pdf(-1.0))
