"""Grassmann flats and the rigidity of graph-point neighborhoods.

Matrices embed isometrically into the Grassmann space as row spaces of
(I | X).  The rigidity sweep then verifies, exhaustively over a small
field, that a flat sitting at distance 1 from every unit perturbation of
a stratum center A must be the graph flat of A itself (up to the
documented extra branch on the top stratum).
"""

from bfgeo.fields import identity_hom, make_field
from bfgeo.grassmann import check_rigidity_top, embed_graph_point, flat_ad
from bfgeo.matrices import Mat, arithmetic_distance, space

F4 = make_field(2, 2)

# the embedding is an isometry
sp = space(F4, 2, 2)
A, B = sp.mat(37), sp.mat(201)
print(f"rank distance {arithmetic_distance(A, B)} = "
      f"flat distance {flat_ad(embed_graph_point(A), embed_graph_point(B))}")

report = check_rigidity_top(F4, identity_hom(F4), 2, 2, 2)
print(f"\nrigidity sweep over {report['params']}:")
print(f"  strata checked:   {report['strata_checked']}")
print(f"  survivors Y = XA: {report['branch_counts']['y_eq_xa']}"
      f"  (per stratum: the invertible X's)")
print(f"  survivors Y = 0:  {report['branch_counts']['y_zero']}"
      f"  (the extra branch, top stratum with k = 2 only)")
print(f"  counterexamples:  {len(report['counterexamples'])}")
