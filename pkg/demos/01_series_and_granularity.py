"""Closed-form Poincare series and what their poles say.

Run with ``python3 demos/01_series_and_granularity.py``.
"""

from bettilab.formulas import GringParams, det_poincare, golod_residue_series, gring_granularity, tate_series
from bettilab.series import betti_polynomials, expand, pole_orders

# k over a complete intersection of codimension 3
s = tate_series(0, 3)
print(s.pretty(), "->", [c.constant_term() for c in expand(s, 6)])
print("pole orders (cx, gn):", pole_orders(s))

# a Golod residue ring: S = Q/J with J from a 2 x (h+1) staircase plus cubes
c, d, e, a, h = 4, 4, 3, 0, 2
res = golod_residue_series(a, c, d, e, det_poincare(2, h, e))
qp = betti_polynomials(res)
ev, od = qp.format()
print(res.pretty())
print(f"beta_n = {ev} for even n, {od} for odd n (x = n, n >= {qp.valid_from})")
print("gn from the poles:", qp.gn, " closed form:", gring_granularity(GringParams(c, d, e, a, h)))
