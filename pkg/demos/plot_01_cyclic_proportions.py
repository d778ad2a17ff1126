"""
Cyclic proportions from generating functions
============================================

The coefficient of ``t**n`` in ``C_GL(t)`` is the proportion of cyclic
matrices in ``GL(n, q)``. Here we read those numbers off the series at
``q = 2`` and watch them settle towards the limit ``(1 - q**-5)/(1 + q**-3)``.
"""

from fractions import Fraction

from cyclicprop.genfun import c_gl_series, c_glr_coefficient, gl_limit

# %%
# Wall's series at q = 2
# ----------------------
# Coefficients are exact fractions.

series = c_gl_series(12, 2)
for n in range(1, 13):
    c = series.coefficient(n)
    print(f"n={n:2d}  {str(c):>24}  ~ {float(c):.10f}")

limit = gl_limit(0).evaluate(2)
print("limit", limit, "=", float(limit))

# %%
# Fixing a subspace
# -----------------
# Restricting to matrices that leave a line invariant lowers the
# proportion a little. The error against the limit falls off quickly.

lim1 = gl_limit(1).evaluate(2)
for n in range(2, 16, 2):
    c = c_glr_coefficient(1, n, 2)
    print(f"n={n:2d}  c={float(c):.12f}  error={float(abs(c - lim1)):.2e}")

assert abs(series.coefficient(12) - Fraction(31, 36)) < Fraction(1, 100)
