"""Exact-arithmetic computation of torus-knot superpolynomials.

Four independent routes to (colored) HOMFLY homology characters of torus
knots -- a localization sum over standard Young tableaux, supercommutative
Koszul models, rational Cherednik graded characters, and planar-curve
Hilbert-scheme counts -- with structural verifiers and a CLI cross-check
driver that reconciles them.
"""

__version__ = "0.1.0"
