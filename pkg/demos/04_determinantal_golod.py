"""Minor ideals of staircase matrices: closed forms against computed tables."""

from bettilab.algebra import RingSpec
from bettilab.constructions import golod_quotient_ideal, minors_ideal, staircase
from bettilab.formulas import adequate_ideal_series, det_power_series
from bettilab.resolution import ideal_betti_table, poincare_truncated

for h, e in [(1, 2), (2, 3), (3, 4)]:
    U = staircase(2, h, e)
    B = RingSpec.polynomial_ring(e)
    print(U.to_text())
    got = poincare_truncated(ideal_betti_table(B, minors_ideal(U), imax=e)).poly
    print("  I(U):        ", got.to_text(), "| formula agrees:", got == adequate_ideal_series(2, h, e))
    J = golod_quotient_ideal(U, e)
    z2p = poincare_truncated(ideal_betti_table(B, list(J.gens), imax=e)).poly.subs_y(1).shift_z(2)
    print("  I(U)+(x)^3:  ", z2p.to_text(), "| formula agrees:", z2p == det_power_series(2, h, e))
