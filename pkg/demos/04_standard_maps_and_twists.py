"""Standard-form adjacency preservers and resolvent twists.

The standard form X -> P diag((I + X^tau L)^-1 X^tau, 0) Q is an
adjacency-preserving map whenever every denominator is invertible; the
package materializes it as an explicit table and verifies the claim by
scanning every edge of the source graph.
"""

import numpy as np

from bfgeo.fields import enumerate_homs, make_field
from bfgeo.homs import (Orientation, StandardHomParams, TwistSide,
                        is_degenerate, is_graph_hom, moebius_twist,
                        random_valid_params, standard_table, validate_params)
from bfgeo.matrices import Mat

F4 = make_field(2, 2)
F16 = make_field(2, 4)
rng = np.random.default_rng(2024)

params = random_valid_params(rng, F4, 2, 2, F16, 3, 3)
print(f"sampled parameters: orientation {params.orientation.value}, "
      f"tau generator -> {params.tau.generator_image}, "
      f"L = {params.L.to_text()}")
ok, _ = validate_params(params)
print(f"denominators invertible at every point: {ok}")

tbl = standard_table(params)
print(f"table {tbl} | graph hom: {is_graph_hom(tbl)[0]}, "
      f"degenerate: {is_degenerate(tbl)[0]}")

# twisting a table by a resolvent factor never changes image distances;
# for an embedded (proper subfield) image there are nonzero valid twists
emb = enumerate_homs(F4, F16)[0]
embed_params = StandardHomParams(Orientation.STRAIGHT, Mat.identity(F16, 2),
                                 Mat.identity(F16, 2), emb,
                                 Mat.zeros(F16, 2, 2), 2, 2)
f = standard_table(embed_params)
xi = next(e for e in range(16) if e not in set(emb.table.tolist()))
L = Mat.unit(F16, 2, 2, 0, 0, c=xi)
theta = moebius_twist(f, L, TwistSide.LEFT)
moved = sum(1 for c in range(f.count)
            if not np.array_equal(theta.images[c], f.images[c]))
print(f"\ntwist by L = {L.to_text()}: {moved} of {f.count} images moved, "
      f"still a graph hom: {is_graph_hom(theta)[0]}")
