"""A non-degenerate adjacency preserver that shrinks distance 2.

Adjoin a scalar xi lying outside the embedded base field and send the
three rows (x, y, z) to (x + xi z, y + xi z, 0).  The map preserves
adjacency and is non-degenerate, yet the pair below sits at distance 2
with images at distance 1: adjacency preservation alone does not control
longer distances.
"""

from bfgeo.fields import enumerate_homs, make_field
from bfgeo.homs import XiMapParams, is_degenerate, is_graph_hom, make_xi_map
from bfgeo.matrices import Mat, arithmetic_distance

F4 = make_field(2, 2)
F16 = make_field(2, 4)
emb = enumerate_homs(F4, F16)[0]
xi = next(e for e in range(16) if e not in set(emb.table.tolist()))
print(f"embedding GF(4) into GF(16); xi = index {xi} (outside the image)")

f = make_xi_map(XiMapParams(emb, xi, 2))
print(f"table {f}")
print(f"graph homomorphism: {is_graph_hom(f)[0]}")
print(f"degenerate:         {is_degenerate(f)[0]}")

A = Mat(F4, [[1, 0], [1, 0], [0, 1]])   # rows e1, e1, e2
Z = Mat.zeros(F4, 3, 2)
print(f"\nA = {A.to_text()}")
print(f"distance(A, 0)              = {arithmetic_distance(A, Z)}")
print(f"distance(f(A), f(0))        = {arithmetic_distance(f.apply(A), f.apply(Z))}")
print(f"f(A) = {f.apply(A).to_text()}  (equal first rows, zero last row)")
