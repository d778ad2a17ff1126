"""
Brute-force census against the series
=====================================

Over a small prime field we can list every matrix that maps the subspace
``U = <e_1, ..., e_r>`` into itself and test each for cyclicity. The count
must equal the size of the stabiliser times the predicted proportion,
with no rounding anywhere.
"""

from cyclicprop.ffcensus import census, conjugacy_census
from cyclicprop.genfun import c_glr_coefficient, c_mr_coefficient

# %%
# Counting
# --------

cases = [(2, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 1), (2, 4, 2), (3, 3, 1)]
for q, n, r in cases:
    for inv in (True, False):
        res = census(q, n, r, inv)
        pred = c_glr_coefficient(r, n, q) if inv else c_mr_coefficient(r, n, q)
        tag = "GL" if inv else "M "
        print(f"{tag} q={q} n={n} r={r}: {res.cyclic:5d}/{res.total:<5d} predicted {pred}")
        assert res.cyclic == res.total * pred

# %%
# Conjugacy classes
# -----------------
# Cyclic matrices in the stabiliser fall into one conjugacy class for each
# pair ``(f, h)`` with ``deg f = r``, ``deg h = n`` and ``f | h``.

for q, n, r in [(2, 2, 1), (2, 3, 1), (3, 2, 1)]:
    res = conjugacy_census(q, n, r)
    print(res.to_json())
