"""Exact arithmetic behind exotic smooth structures on Z/2 four-manifolds.

Modules: ``intlat`` (integer lattices, sphere configurations, walls),
``knotpoly`` (Laurent and Alexander polynomials), ``swcalc`` (Seiberg-Witten
bookkeeping), ``mfdcalc`` (manifold expressions and classification), and
``parser`` / ``scenarios`` / ``report`` / ``cli`` (the certificate tool).
"""

__version__ = "0.1.0"
