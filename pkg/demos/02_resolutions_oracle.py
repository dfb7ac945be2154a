"""Betti tables from the linear-algebra resolution engine."""

from bettilab.resolution import is_golod_truncated, minimal_betti_table
from bettilab.ringfile import parse_ring_specs

rings = parse_ring_specs("""
ring CI { prime = 32003; vars = x, y, z; ideal = x^2, y^2, z^2; }
ring M2 { prime = 32003; vars = x, y;    ideal = x^2, x*y, y^2; }
ring X3 { prime = 32003; vars = x;       ideal = x^3; }
""")

for name, A in rings.items():
    t = minimal_betti_table(A, None, imax=5)
    print(f"k over {name}:")
    print(t.macaulay())
    print()

print("Golod identity holds for M2 through i = 6:", is_golod_truncated(rings["M2"], imax=6))
