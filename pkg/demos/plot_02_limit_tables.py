"""
Limits as series in 1/q
=======================

The limiting proportions for matrices fixing an ``r``-dimensional subspace
are rational functions of ``q`` (times an Euler product for the full matrix
algebra). Expanding them at ``q = oo`` gives small integer tables.
"""

from cyclicprop.genfun import gl_limit, gl_limit_expansion, m_limit, m_limit_expansion

# %%
# The invertible case
# -------------------

print("GL limit for r=1 as a rational function:")
print("  ", gl_limit(1).rational_part)

for r in range(1, 8):
    print(f"r={r}  {gl_limit_expansion(r, 7)}")

# %%
# The full matrix algebra
# -----------------------
# The limit carries a finite product over ``i <= r`` and an infinite one.

print(m_limit(2).to_json())
for r in range(1, 8):
    print(f"r={r}  {m_limit_expansion(r, 7)}")

# %%
# Every row starts ``1 - q**-2``; the ``r`` dependence appears from ``q**-3``.
for r in range(1, 8):
    assert gl_limit_expansion(r, 2).as_list() == [1, 0, -1]
    assert m_limit_expansion(r, 2).as_list() == [1, 0, -1]
