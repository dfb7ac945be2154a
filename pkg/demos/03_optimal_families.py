"""Families realizing prescribed (edim, codim, quadratic codim, a) and their granularity."""

from bettilab.constructions import optimal_family
from bettilab.grids import totals_of
from bettilab.invariants import invariants
from bettilab.resolution import minimal_betti_table

for params in [(2, 2, 1, 1), (3, 3, 1, 0), (3, 2, 2, 2)]:
    fam = optimal_family(*params)
    rep = invariants(fam.R, fam.Stilde)
    print(params, "R:", ", ".join(g.to_text(fam.R.var_names) for g in fam.R.gens))
    print("   (d, c, q, r, e, m, a) =", rep.values(), " gn =", rep.gn, " predicted", fam.predicted_gn)
    table = minimal_betti_table(fam.R, list(fam.Stilde.gens), imax=8)
    print("   resolution:", table.totals())
    print("   series:    ", totals_of(rep.series, 8))
