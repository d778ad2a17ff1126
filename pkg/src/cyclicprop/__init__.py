"""Exact cyclic-matrix proportions in subspace stabilisers over finite fields.

Submodules:

* :mod:`~cyclicprop.exact` -- rationals, polynomials and rational functions in q
* :mod:`~cyclicprop.tseries` -- truncated power series in t
* :mod:`~cyclicprop.arrays` -- multiplicity arrays and partition sums
* :mod:`~cyclicprop.genfun` -- generating functions, limits and expansions
* :mod:`~cyclicprop.ffcensus` -- brute-force counts over prime fields
* :mod:`~cyclicprop.cli` -- command-line interface
"""

from __future__ import annotations

__version__ = "0.1.0"
